//! Exact Burnside ring arithmetic for finite groups and the
//! Frobenius-Wielandt morphism `B(C) -> B(G)` from the Burnside ring of the
//! cyclic group of order `|G|`.
//!
//! Groups are explicit multiplication tables; every computation is exact over
//! the rationals.

pub mod arith;
pub mod bitset;
pub mod error;
pub mod fw;
pub mod group;
pub mod lattice;
pub mod recipe;
pub mod ring;

pub use arith::Rational;
pub use error::{Error, Result};
pub use fw::{
    check_commutes, check_def_necessary, check_integrality, check_m_equality, check_unique_central_prime_sufficient,
    diagnose_deflation, fw_apply, fw_transitive_image, r_constant, t_constant, transitive_marks_agree, BisetOp,
    Certificate, CommutativityReport, DeflationDiagnosis, FwContext, QuotientSetup, SubgroupSetup, TransitiveImage,
};
pub use group::{center, Group, QuotientMap, Subgroup};
pub use lattice::{
    double_cosets, enumerate_subgroups, is_generalized_quaternion, m_cyclic, GcdMethod, SubgroupLattice,
};
pub use recipe::{construct_group, parse_group_spec, Recipe, DEFAULT_ORDER_CAP};
pub use ring::{
    decompose_gset, deflate, deflate_by_orbits, deflate_idempotent, element_from_marks, fixed_points, idempotent,
    idempotent_of, induce, inflate, is_integral, marks_of, multiply, restrict, table_of_marks, tensor_induce,
    transport, BurnsideElement, BurnsideRing, Embedding, GSet, MarkVector, Projection,
};
