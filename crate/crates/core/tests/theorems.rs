use std::sync::Arc;

use burnside_core::arith;
use burnside_core::{
    center, check_commutes, check_def_necessary, check_m_equality, check_unique_central_prime_sufficient,
    construct_group, idempotent, induce, restrict, transitive_marks_agree, BisetOp, BurnsideElement, Embedding, Error,
    FwContext, GcdMethod, Group, QuotientSetup, Subgroup,
};

const SMALL: &[&str] = &[
    "C6", "C8", "C12", "C2xC2", "C2xC4", "C3xC3", "S3", "A4", "D8", "D10", "D12", "Q8", "Q16", "Dic12", "Dic20",
    "SL(2,3)", "S4", "C2xS3",
];

fn ctx(spec: &str) -> FwContext {
    FwContext::new(&Arc::new(construct_group(spec, 512).unwrap()))
}

fn normals(ctx: &FwContext) -> Vec<Subgroup> {
    ctx.group_ring()
        .lattice()
        .subgroups()
        .iter()
        .filter(|h| h.is_normal())
        .cloned()
        .collect()
}

#[test]
fn inflation_commutes_iff_gcd() {
    for spec in SMALL {
        let c = ctx(spec);
        let lat = c.group_ring().lattice();
        for n in normals(&c) {
            let commutes = check_commutes(&c, BisetOp::Inf, &n).unwrap().commutes;
            assert_eq!(
                commutes,
                lat.check_gcd_property(&n, GcdMethod::Intersection),
                "{spec} |N| = {}",
                n.order()
            );
        }
    }
}

#[test]
fn restriction_and_fixed_points_commute_everywhere() {
    for spec in SMALL {
        let c = ctx(spec);
        for h in c.group_ring().lattice().subgroups() {
            let r = check_commutes(&c, BisetOp::Res, h).unwrap();
            assert!(r.commutes && r.certificate.is_none(), "{spec} res |H| = {}", h.order());
        }
        for n in normals(&c) {
            assert!(
                check_commutes(&c, BisetOp::Fix, &n).unwrap().commutes,
                "{spec} fix |N| = {}",
                n.order()
            );
        }
    }
}

#[test]
fn gcd_property_is_read_off_transitive_marks() {
    for spec in SMALL {
        let c = ctx(spec);
        let lat = c.group_ring().lattice();
        for n in normals(&c) {
            assert_eq!(
                transitive_marks_agree(&c, &n).unwrap(),
                lat.check_gcd_property(&n, GcdMethod::Divisor),
                "{spec} |N| = {}",
                n.order()
            );
        }
    }
}

#[test]
fn deflation_commutativity_passes_to_overgroups() {
    for spec in SMALL {
        let c = ctx(spec);
        let lat = c.group_ring().lattice();
        for n in normals(&c) {
            if !check_commutes(&c, BisetOp::Def, &n).unwrap().commutes {
                continue;
            }
            for t in lat.subgroups().iter().filter(|t| n.is_subgroup_of(t)) {
                let (tg, embed) = t.as_group();
                let tg = Arc::new(tg);
                let members = n
                    .elements()
                    .map(|x| embed.iter().position(|&y| y == x).unwrap())
                    .collect::<Vec<_>>();
                let inner = Subgroup::generated(&tg, &members);
                let tctx = FwContext::new(&tg);
                assert!(
                    check_commutes(&tctx, BisetOp::Def, &inner).unwrap().commutes,
                    "{spec}: |T| = {}, |N| = {}",
                    t.order(),
                    n.order()
                );
            }
        }
    }
}

#[test]
fn necessary_conditions_hold_on_small_groups() {
    for spec in SMALL {
        let c = ctx(spec);
        for n in normals(&c) {
            assert!(check_def_necessary(&c, &n).unwrap(), "{spec} |N| = {}", n.order());
        }
    }
}

#[test]
fn unique_central_prime_subgroups_are_sufficient() {
    let mut applied = 0;
    for spec in SMALL.iter().chain(["SL(2,5)", "C2xC2xC2"].iter()) {
        let c = ctx(spec);
        for n in normals(&c) {
            let p = n.order();
            match check_unique_central_prime_sufficient(&c, &n, p) {
                Ok(holds) => {
                    assert!(holds, "{spec} |N| = {p}");
                    applied += 1;
                }
                Err(Error::Hypothesis(_)) => {}
                Err(other) => panic!("{spec}: {other}"),
            }
        }
    }
    assert!(applied >= 10);
}

#[test]
fn center_examples_satisfy_m_equality() {
    for spec in ["Q8", "Dic12", "Dic20", "Dic16", "SL(2,3)", "SL(2,5)"] {
        let c = ctx(spec);
        let z = center(c.group_ring().group());
        assert!(check_m_equality(&c, &z).unwrap(), "{spec}");
        assert!(check_commutes(&c, BisetOp::Def, &z).unwrap().commutes, "{spec}");
    }
    let s3 = ctx("S3");
    let c2 = s3.group_ring().class_rep(1).clone();
    assert_eq!(check_m_equality(&s3, &c2), Err(Error::NotNormal));
}

#[test]
fn failing_checks_carry_certificates() {
    let c = ctx("D8");
    let lat = c.group_ring().lattice();
    for n in normals(&c) {
        for op in [BisetOp::Inf, BisetOp::Def] {
            let r = check_commutes(&c, op, &n).unwrap();
            assert_eq!(r.commutes, r.certificate.is_none());
            let source_order = if op == BisetOp::Def {
                c.order()
            } else {
                c.order() / n.order()
            };
            assert_eq!(r.basis_size, arith::divisors(source_order).len());
            if let Some(cert) = r.certificate {
                assert_ne!(cert.group_route, cert.cyclic_route);
                assert!(!lat.check_gcd_property(&n, GcdMethod::Intersection) || op == BisetOp::Def);
            }
        }
    }
}

#[test]
fn quotient_identification_does_not_depend_on_the_generator() {
    for spec in ["Dic20", "SL(2,3)", "C12", "D12"] {
        let c = ctx(spec);
        for n in normals(&c) {
            let base = QuotientSetup::new(&c, &n).unwrap();
            let m = c.order() / n.order();
            for u in (1..m.max(2)).filter(|&u| arith::gcd(u, m) == 1) {
                let other = QuotientSetup::with_generator(&c, &n, u).unwrap();
                for k in 0..c.cyclic_ring().rank() {
                    let x = idempotent(c.cyclic_ring(), k);
                    assert_eq!(base.fw_after_deflate(&x).unwrap(), other.fw_after_deflate(&x).unwrap());
                }
            }
        }
    }
}

#[test]
fn restricting_an_induced_cyclic_element_scales_it() {
    for n in [6, 8, 12, 30] {
        let c = ctx(&format!("C{n}"));
        for d in arith::divisors(n) {
            let sub = c.cyclic_subgroup(d).unwrap().clone();
            let emb = Embedding::of_subgroup(c.cyclic_ring(), &sub).unwrap();
            let source = emb.source();
            for k in 0..source.rank() {
                let x = BurnsideElement::basis(source, k);
                let back = restrict(&induce(&x, &emb).unwrap(), &emb).unwrap();
                assert_eq!(back, x.scale(&arith::int((n / d) as i64)));
            }
        }
    }
}

#[test]
fn dicyclic_family_has_a_unique_involution() {
    for m in 2..=6 {
        let g = Arc::new(Group::dicyclic(4 * m).unwrap());
        let c = FwContext::new(&g);
        let lat = c.group_ring().lattice();
        assert_eq!(lat.subgroups().iter().filter(|h| h.order() == 2).count(), 1);
        let z = center(&g);
        assert_eq!(z.order(), 2);
        assert!(check_unique_central_prime_sufficient(&c, &z, 2).unwrap());
    }
}
