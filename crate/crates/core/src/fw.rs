//! The Frobenius-Wielandt morphism `alpha^G: QB(C) -> QB(G)`, `C` cyclic of
//! order `|G|`, and checks of its compatibility with biset operations.
//!
//! `alpha^G(x)` is defined through marks: its mark at `K <= G` is the mark of
//! `x` at the unique subgroup `C_{|K|}` of `C`. [`check_integrality`]
//! certifies that transitive `C`-sets land in `B(G)`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::{self, gcd, Rational};
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::lattice::{m_cyclic, GcdMethod};
use crate::ring::{
    deflate, element_from_marks, fixed_points, idempotent, induce, inflate, marks_of, restrict, tensor_induce,
    transport, BurnsideElement, BurnsideRing, Embedding, MarkVector, Projection,
};

/// A group `G` together with the cyclic group `C` of order `|G|`.
#[derive(Clone, Debug)]
pub struct FwContext {
    group: Arc<BurnsideRing>,
    cyclic: Arc<BurnsideRing>,
    /// `cyclic_class[d]` is the class of `C_d` for `d | |G|`.
    cyclic_class: Vec<Option<usize>>,
}

impl FwContext {
    pub fn new(group: &Arc<Group>) -> FwContext {
        FwContext::from_ring(BurnsideRing::new(group))
    }

    pub fn from_ring(group: Arc<BurnsideRing>) -> FwContext {
        let n = group.group().order();
        let cyclic = BurnsideRing::new(&Arc::new(Group::cyclic(n)));
        let mut cyclic_class = vec![None; n + 1];
        for c in 0..cyclic.rank() {
            cyclic_class[cyclic.class_rep(c).order()] = Some(c);
        }
        FwContext {
            group,
            cyclic,
            cyclic_class,
        }
    }

    pub fn group_ring(&self) -> &Arc<BurnsideRing> {
        &self.group
    }

    pub fn cyclic_ring(&self) -> &Arc<BurnsideRing> {
        &self.cyclic
    }

    pub fn order(&self) -> usize {
        self.group.group().order()
    }

    /// Class index in `C` of `C_d`.
    pub fn cyclic_class(&self, d: usize) -> Result<usize> {
        self.cyclic_class
            .get(d)
            .copied()
            .flatten()
            .ok_or_else(|| Error::InvalidParameter(format!("{d} does not divide {}", self.order())))
    }

    /// `C_d`, the unique subgroup of `C` of order `d`.
    pub fn cyclic_subgroup(&self, d: usize) -> Result<&Subgroup> {
        Ok(self.cyclic.class_rep(self.cyclic_class(d)?))
    }
}

/// `alpha^G(x)`: the element of `QB(G)` whose mark at `K` is the mark of `x` at `C_{|K|}`.
pub fn fw_apply(ctx: &FwContext, x: &BurnsideElement) -> Result<BurnsideElement> {
    if x.ring().group().as_ref() != ctx.cyclic.group().as_ref() {
        return Err(Error::GroupMismatch);
    }
    let source = marks_of(x);
    let marks = (0..ctx.group.rank())
        .map(|k| {
            let d = ctx.group.class_rep(k).order();
            Ok(source.mark(ctx.cyclic_class(d)?).clone())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(element_from_marks(&MarkVector::new(&ctx.group, marks)?))
}

#[derive(Clone, Debug)]
pub struct TransitiveImage {
    pub image: BurnsideElement,
    /// The class of `N` when `alpha^G([C/D]) = [G/N]`.
    pub transitive: Option<usize>,
}

/// `alpha^G([C/D])`, flagged transitive exactly when it equals some `[G/N]`.
///
/// That happens iff `G` has a subgroup of order `|D|` with the gcd property;
/// a disagreement is reported as an invariant violation.
pub fn fw_transitive_image(ctx: &FwContext, d: &Subgroup) -> Result<TransitiveImage> {
    let dc = ctx.cyclic.class_of(d)?;
    let image = fw_apply(ctx, &BurnsideElement::basis(&ctx.cyclic, dc))?;
    let transitive = image.as_transitive();
    let lat = ctx.group.lattice();
    let gcd_subgroup = lat
        .subgroups()
        .iter()
        .find(|n| n.order() == d.order() && lat.check_gcd_property(n, GcdMethod::Divisor));
    match (transitive, gcd_subgroup) {
        (Some(c), Some(n)) if ctx.group.class_of(n)? == c => {}
        (None, None) => {}
        _ => {
            return Err(Error::Invariant(format!(
                "alpha([C/C_{}]) = {image} disagrees with the gcd-property subgroups of {}",
                d.order(),
                ctx.group.group().label()
            )))
        }
    }
    Ok(TransitiveImage { image, transitive })
}

/// Whether `alpha^G([C/D])` has integer coefficients for every `D <= C`.
pub fn check_integrality(ctx: &FwContext) -> Result<bool> {
    for c in 0..ctx.cyclic.rank() {
        if !fw_apply(ctx, &BurnsideElement::basis(&ctx.cyclic, c))?.is_integral() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `|(C/C_N)^{C_{|K|}}| = |(G/N)^K|` for every `K <= G`.
pub fn transitive_marks_agree(ctx: &FwContext, n: &Subgroup) -> Result<bool> {
    let g_marks = marks_of(&BurnsideElement::basis(&ctx.group, ctx.group.class_of(n)?));
    let c_marks = marks_of(&BurnsideElement::basis(&ctx.cyclic, ctx.cyclic_class(n.order())?));
    for k in 0..ctx.group.rank() {
        let d = ctx.group.class_rep(k).order();
        if g_marks.mark(k) != c_marks.mark(ctx.cyclic_class(d)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `t_{H,N} = |N_G(HN)/HN| / |N_G(H)/H| * m_{H, H∩N}`.
pub fn t_constant(ctx: &FwContext, h: &Subgroup, n: &Subgroup) -> Result<Rational> {
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let lat = ctx.group.lattice();
    let hi = lat.locate(h)?;
    let hn = h.join(n);
    let hni = lat.locate(&hn)?;
    let ratio = arith::rational(
        (lat.subgroup(lat.normalizer_index(hni)).order() / hn.order()) as i64,
        (lat.subgroup(lat.normalizer_index(hi)).order() / h.order()) as i64,
    );
    Ok(ratio * lat.m_constant_index(hi, lat.locate(&h.intersection(n))?)?)
}

/// `r_{D,C_N} = |D| / |D C_N| * m_{D, D∩C_N}`, computed in `C`.
pub fn r_constant(ctx: &FwContext, d: &Subgroup, cn: &Subgroup) -> Result<Rational> {
    let lat = ctx.cyclic.lattice();
    let di = lat.locate(d)?;
    lat.locate(cn)?;
    let ratio = arith::rational(d.order() as i64, d.product_order(cn) as i64);
    Ok(ratio * lat.m_constant_index(di, lat.locate(&d.intersection(cn))?)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BisetOp {
    Res,
    Fix,
    Inf,
    Ind,
    Ten,
    Def,
}

impl BisetOp {
    pub const ALL: [BisetOp; 6] = [
        BisetOp::Res,
        BisetOp::Fix,
        BisetOp::Inf,
        BisetOp::Ind,
        BisetOp::Ten,
        BisetOp::Def,
    ];

    /// Whether the subgroup argument is a normal subgroup `N` (rather than a source `H`).
    pub fn takes_normal_subgroup(self) -> bool {
        matches!(self, BisetOp::Fix | BisetOp::Inf | BisetOp::Def)
    }
}

impl fmt::Display for BisetOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            BisetOp::Res => "res",
            BisetOp::Fix => "fix",
            BisetOp::Inf => "inf",
            BisetOp::Ind => "ind",
            BisetOp::Ten => "ten",
            BisetOp::Def => "def",
        };
        f.write_str(name)
    }
}

impl FromStr for BisetOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<BisetOp> {
        BisetOp::ALL
            .into_iter()
            .find(|op| op.to_string() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown operation {s:?}")))
    }
}

/// First basis element on which the two composites differ.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub element: BurnsideElement,
    /// The operation on `G` applied after the morphism.
    pub group_route: BurnsideElement,
    /// The morphism applied after the operation on `C`.
    pub cyclic_route: BurnsideElement,
}

#[derive(Clone, Debug)]
pub struct CommutativityReport {
    pub op: BisetOp,
    pub commutes: bool,
    /// Number of source elements compared.
    pub basis_size: usize,
    pub certificate: Option<Certificate>,
}

/// `H <= G` and `C_H <= C` as groups of their own, with their FW contexts.
pub struct SubgroupSetup {
    pub sub: FwContext,
    pub embedding: Embedding,
    pub cyclic_embedding: Embedding,
}

impl SubgroupSetup {
    pub fn new(ctx: &FwContext, h: &Subgroup) -> Result<SubgroupSetup> {
        let embedding = Embedding::of_subgroup(&ctx.group, h)?;
        let sub = FwContext::from_ring(Arc::clone(embedding.source()));
        let step = ctx.order() / h.order();
        let map = (0..h.order()).map(|i| i * step).collect();
        let cyclic_embedding = Embedding::new(&sub.cyclic, &ctx.cyclic, map)?;
        Ok(SubgroupSetup {
            sub,
            embedding,
            cyclic_embedding,
        })
    }
}

/// `G -> G/N` and `C -> C/C_N`, with `C/C_N` identified with the cyclic group
/// of order `|G/N|` by sending the coset of the generator to `generator`-th power
/// of the generator.
pub struct QuotientSetup {
    pub quotient: FwContext,
    pub projection: Projection,
    pub cyclic_projection: Projection,
    /// `C/C_N -> C_{|G/N|}`
    pub identification: Embedding,
    /// `C_{|G/N|} -> C/C_N`
    pub identification_inverse: Embedding,
}

impl QuotientSetup {
    pub fn new(ctx: &FwContext, n: &Subgroup) -> Result<QuotientSetup> {
        Self::with_generator(ctx, n, 1)
    }

    /// `generator` must be prime to `|G/N|`.
    pub fn with_generator(ctx: &FwContext, n: &Subgroup, generator: usize) -> Result<QuotientSetup> {
        if !n.is_normal() {
            return Err(Error::NotNormal);
        }
        let projection = Projection::new(&ctx.group, n)?;
        let quotient = FwContext::from_ring(Arc::clone(projection.target()));
        let cyclic_projection = Projection::new(&ctx.cyclic, ctx.cyclic_subgroup(n.order())?)?;
        let m = quotient.order();
        if gcd(generator, m) != 1 {
            return Err(Error::InvalidParameter(format!("{generator} does not generate C{m}")));
        }
        let qmap = cyclic_projection.quotient_map();
        let map: Vec<usize> = (0..m).map(|q| (qmap.lift(q) * generator) % m).collect();
        let mut inverse = vec![0; m];
        for (q, &k) in map.iter().enumerate() {
            inverse[k] = q;
        }
        let identification = Embedding::new(cyclic_projection.target(), &quotient.cyclic, map)?;
        let identification_inverse = Embedding::new(&quotient.cyclic, cyclic_projection.target(), inverse)?;
        Ok(QuotientSetup {
            quotient,
            projection,
            cyclic_projection,
            identification,
            identification_inverse,
        })
    }

    /// `Def^G_{G/N} alpha^G (x)`
    pub fn deflate_after_fw(&self, ctx: &FwContext, x: &BurnsideElement) -> Result<BurnsideElement> {
        deflate(&fw_apply(ctx, x)?, &self.projection)
    }

    /// `alpha^{G/N} Def^C_{C/C_N} (x)`
    pub fn fw_after_deflate(&self, x: &BurnsideElement) -> Result<BurnsideElement> {
        let deflated = transport(&deflate(x, &self.cyclic_projection)?, &self.identification)?;
        fw_apply(&self.quotient, &deflated)
    }

    /// `sum over H in [s_G], |H| = d of t_{H,N} e_{HN/N}`
    pub fn deflation_closed_form_group(&self, ctx: &FwContext, d: usize) -> Result<BurnsideElement> {
        let n = self.projection.kernel();
        let mut out = BurnsideElement::zero(self.projection.target());
        for c in ctx.group.lattice().classes_of_order(d) {
            let h = ctx.group.class_rep(c);
            let e = idempotent(self.projection.target(), self.projection.image_class(h));
            out = &out + &e.scale(&t_constant(ctx, h, n)?);
        }
        Ok(out)
    }

    /// `sum over K/N in [s_{G/N}], |K/N| = |D C_N / C_N| of r_{D,C_N} e_{K/N}`
    pub fn deflation_closed_form_cyclic(&self, ctx: &FwContext, d: usize) -> Result<BurnsideElement> {
        let dsub = ctx.cyclic_subgroup(d)?;
        let cn = self.cyclic_projection.kernel();
        let r = r_constant(ctx, dsub, cn)?;
        let target_order = dsub.product_order(cn) / cn.order();
        let q = self.projection.target();
        let mut out = BurnsideElement::zero(q);
        for c in q.lattice().classes_of_order(target_order) {
            out = &out + &idempotent(q, c).scale(&r);
        }
        Ok(out)
    }
}

fn compare(
    op: BisetOp,
    basis: Vec<BurnsideElement>,
    mut routes: impl FnMut(&BurnsideElement) -> Result<(BurnsideElement, BurnsideElement)>,
) -> Result<CommutativityReport> {
    let basis_size = basis.len();
    for element in basis {
        let (group_route, cyclic_route) = routes(&element)?;
        if group_route != cyclic_route {
            return Ok(CommutativityReport {
                op,
                commutes: false,
                basis_size,
                certificate: Some(Certificate {
                    element,
                    group_route,
                    cyclic_route,
                }),
            });
        }
    }
    Ok(CommutativityReport {
        op,
        commutes: true,
        basis_size,
        certificate: None,
    })
}

fn idempotent_basis(ring: &Arc<BurnsideRing>) -> Vec<BurnsideElement> {
    (0..ring.rank()).map(|c| idempotent(ring, c)).collect()
}

/// Compares `Op_G ∘ alpha` with `alpha ∘ Op_C` on the primitive idempotents of
/// the cyclic source ring. For `ten`, which is not additive, `2[C_H/C_H]` is
/// compared as well.
///
/// For `def`, both sides are also recomputed from the closed forms for
/// deflated idempotents; a disagreement there is an invariant violation.
pub fn check_commutes(ctx: &FwContext, op: BisetOp, sub: &Subgroup) -> Result<CommutativityReport> {
    ctx.group.lattice().locate(sub)?;
    match op {
        BisetOp::Res | BisetOp::Ind | BisetOp::Ten => {
            let setup = SubgroupSetup::new(ctx, sub)?;
            let (emb, cemb, sctx) = (&setup.embedding, &setup.cyclic_embedding, &setup.sub);
            match op {
                BisetOp::Res => compare(op, idempotent_basis(&ctx.cyclic), |x| {
                    Ok((restrict(&fw_apply(ctx, x)?, emb)?, fw_apply(sctx, &restrict(x, cemb)?)?))
                }),
                BisetOp::Ind => compare(op, idempotent_basis(&sctx.cyclic), |x| {
                    Ok((induce(&fw_apply(sctx, x)?, emb)?, fw_apply(ctx, &induce(x, cemb)?)?))
                }),
                _ => {
                    let mut basis = idempotent_basis(&sctx.cyclic);
                    basis.push(BurnsideElement::one(&sctx.cyclic).scale(&arith::int(2)));
                    compare(op, basis, |x| {
                        Ok((
                            tensor_induce(&fw_apply(sctx, x)?, emb)?,
                            fw_apply(ctx, &tensor_induce(x, cemb)?)?,
                        ))
                    })
                }
            }
        }
        BisetOp::Inf | BisetOp::Def | BisetOp::Fix => {
            let setup = QuotientSetup::new(ctx, sub)?;
            let qctx = &setup.quotient;
            match op {
                BisetOp::Inf => compare(op, idempotent_basis(&qctx.cyclic), |x| {
                    let pulled = transport(x, &setup.identification_inverse)?;
                    Ok((
                        inflate(&fw_apply(qctx, x)?, &setup.projection)?,
                        fw_apply(ctx, &inflate(&pulled, &setup.cyclic_projection)?)?,
                    ))
                }),
                BisetOp::Fix => compare(op, idempotent_basis(&ctx.cyclic), |x| {
                    let fixed = transport(&fixed_points(x, &setup.cyclic_projection)?, &setup.identification)?;
                    Ok((
                        fixed_points(&fw_apply(ctx, x)?, &setup.projection)?,
                        fw_apply(qctx, &fixed)?,
                    ))
                }),
                _ => {
                    let basis: Vec<(usize, BurnsideElement)> = (0..ctx.cyclic.rank())
                        .map(|c| (ctx.cyclic.class_rep(c).order(), idempotent(&ctx.cyclic, c)))
                        .collect();
                    for (d, e) in &basis {
                        let direct_group = setup.deflate_after_fw(ctx, e)?;
                        let direct_cyclic = setup.fw_after_deflate(e)?;
                        if setup.deflation_closed_form_group(ctx, *d)? != direct_group {
                            return Err(Error::Invariant(format!(
                                "closed form for Def alpha(e_D), |D| = {d}, disagrees with direct deflation"
                            )));
                        }
                        if setup.deflation_closed_form_cyclic(ctx, *d)? != direct_cyclic {
                            return Err(Error::Invariant(format!(
                                "closed form for alpha Def(e_D), |D| = {d}, disagrees with direct deflation"
                            )));
                        }
                    }
                    compare(op, basis.into_iter().map(|(_, e)| e).collect(), |x| {
                        Ok((setup.deflate_after_fw(ctx, x)?, setup.fw_after_deflate(x)?))
                    })
                }
            }
        }
    }
}

/// Whether `m_{T,N} = m_{C_T,C_N}` for every subgroup `T` containing `N`.
pub fn check_m_equality(ctx: &FwContext, n: &Subgroup) -> Result<bool> {
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let lat = ctx.group.lattice();
    let ni = lat.locate(n)?;
    for t in (0..lat.len()).filter(|&t| lat.is_below(ni, t)) {
        let order = lat.subgroup(t).order();
        if lat.m_constant_index(t, ni)? != m_cyclic(order, n.order())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The properties of `N` that deflation-commutativity forces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeflationDiagnosis {
    pub commutes: bool,
    pub gcd: bool,
    pub cyclic: bool,
    pub central: bool,
    pub m_equal: bool,
    pub in_max_cyclic_intersection: bool,
}

impl DeflationDiagnosis {
    /// `commutes => gcd ∧ cyclic ∧ central ∧ m_equal ∧ N <= M`.
    pub fn necessary_conditions_hold(&self) -> bool {
        !self.commutes || (self.gcd && self.cyclic && self.central && self.m_equal && self.in_max_cyclic_intersection)
    }
}

pub fn diagnose_deflation(ctx: &FwContext, n: &Subgroup) -> Result<DeflationDiagnosis> {
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let lat = ctx.group.lattice();
    Ok(DeflationDiagnosis {
        commutes: check_commutes(ctx, BisetOp::Def, n)?.commutes,
        gcd: lat.check_gcd_property(n, GcdMethod::Intersection),
        cyclic: n.is_cyclic(),
        central: n.is_central(),
        m_equal: check_m_equality(ctx, n)?,
        in_max_cyclic_intersection: n.is_subgroup_of(&lat.max_cyclic_intersection()),
    })
}

/// Whether deflation-commutativity implies gcd, cyclicity, centrality,
/// m-equality and containment in the maximal-cyclic intersection for `N`.
pub fn check_def_necessary(ctx: &FwContext, n: &Subgroup) -> Result<bool> {
    Ok(diagnose_deflation(ctx, n)?.necessary_conditions_hold())
}

/// For `N` the unique subgroup of prime order `p`, and central: whether
/// m-equality for all `T >= N` implies deflation-commutativity.
///
/// Hypothesis failures are returned as [`Error::Hypothesis`].
pub fn check_unique_central_prime_sufficient(ctx: &FwContext, n: &Subgroup, p: usize) -> Result<bool> {
    if !arith::is_prime(p) || n.order() != p {
        return Err(Error::Hypothesis(format!("N must have prime order {p}")));
    }
    let lat = ctx.group.lattice();
    if lat.subgroups().iter().filter(|h| h.order() == p).count() != 1 {
        return Err(Error::Hypothesis(format!("N is not the unique subgroup of order {p}")));
    }
    if !n.is_central() {
        return Err(Error::Hypothesis("N is not central".into()));
    }
    if !check_m_equality(ctx, n)? {
        return Ok(true);
    }
    Ok(check_commutes(ctx, BisetOp::Def, n)?.commutes)
}

/// Whether `x` is the unit `[G/G]`.
pub fn is_ring_identity(x: &BurnsideElement) -> bool {
    x.as_transitive() == Some(x.ring().rank() - 1) && x.coeff(x.ring().rank() - 1).is_one()
}

pub fn is_zero(x: &BurnsideElement) -> bool {
    x.coeffs().iter().all(Zero::is_zero)
}
