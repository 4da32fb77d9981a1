mod common;

use common::Schoolbook;
use proptest::prelude::*;
use shiftperm::family::{
    build_pair, census, check_conditions, delta_closed_form, delta_negated_closed_form, derive_params, extra_closure,
    family_roots, lemma_suite, verify_pair, CensusMode, ClosureScope,
};
use shiftperm::oracle::compositional_inverse;
use shiftperm::poly::{build_gmb_hmd, hmd_d, BlockKind};
use shiftperm::{FieldCtx, FieldElem, PolyFq};

/// Inverse parameters straight from their definitions, in schoolbook
/// arithmetic: `(gamma, epsilon, delta, d)`.
fn reference_params(sb: &Schoolbook, m: u32, b: u32, alpha: u32, beta: u32) -> Option<(u32, u32, u32, u32)> {
    let p = sb.p as u64;
    let sign = if m % 2 == 0 { 1 } else { sb.int(-1) };
    let d = sb.mul(sign, sb.pow(b, m as u64 * p));
    let norm = sb.sub(sb.pow(beta, p + 1), sb.pow(alpha, p + 1));
    let gamma = sb.div(sb.neg(alpha), norm)?;
    let epsilon = sb.div(sb.pow(beta, p), norm)?;
    let base = sb.sub(sb.pow(beta, p), sb.mul(alpha, d));
    let num = sb.neg(sb.add(sb.mul(gamma, d), epsilon));
    let delta = sb.div(num, sb.pow(base, m as u64))?;
    Some((gamma, epsilon, delta, d))
}

fn reference_inverse_holds(sb: &Schoolbook, m: u32, b: u32, alpha: u32, beta: u32) -> bool {
    let p = sb.p as u64;
    let Some((gamma, epsilon, delta, d)) = reference_params(sb, m, b, alpha, beta) else {
        return false;
    };
    let f = |x: u32| {
        let inner = sb.sub(sb.pow(x, p), sb.mul(b, x));
        sb.add(sb.pow(inner, m as u64), sb.add(sb.mul(alpha, sb.pow(x, p)), sb.mul(beta, x)))
    };
    let h = |y: u32| {
        let inner = sb.sub(sb.pow(y, p), sb.mul(d, y));
        let block = sb.mul(delta, sb.pow(inner, m as u64));
        sb.add(block, sb.add(sb.mul(gamma, sb.pow(y, p)), sb.mul(epsilon, y)))
    };
    (0..sb.q).all(|x| h(f(x)) == x && f(h(x)) == x)
}

#[test]
fn inverse_theorem_against_reference_arithmetic() {
    for p in [3u32, 5, 7] {
        let ctx = FieldCtx::new(p, 2).unwrap();
        let sb = Schoolbook::new(&ctx);
        let mut instances = 0;
        for m in 2..p {
            for b in family_roots(&ctx).unwrap() {
                for alpha in ctx.elements() {
                    for beta in ctx.elements() {
                        if !check_conditions(&ctx, m, b, alpha, beta).unwrap().constructible {
                            continue;
                        }
                        instances += 1;
                        let inst = derive_params(&ctx, m, b, alpha, beta).unwrap();
                        let (g, e, dl, d) = reference_params(&sb, m, b.index(), alpha.index(), beta.index()).unwrap();
                        assert_eq!((inst.gamma.index(), inst.epsilon.index(), inst.delta.index(), inst.d.index()), (g, e, dl, d));
                        // skip the pointwise check on the big field beyond a sample to keep this fast
                        if p < 7 || instances % 17 == 0 {
                            assert!(reference_inverse_holds(&sb, m, b.index(), alpha.index(), beta.index()), "p = {p} m = {m} b = {b} alpha = {alpha} beta = {beta}");
                        }
                    }
                }
            }
        }
        let per = (p * (p - 1) * (p - 1)) as usize;
        assert_eq!(instances, per * (p as usize - 2) * (p as usize + 1), "p = {p}");
    }
}

#[test]
fn worked_instance_over_f9() {
    let ctx = FieldCtx::new(3, 2).unwrap();
    let inst = derive_params(&ctx, 2, FieldElem::ONE, FieldElem::new(3), FieldElem::new(7)).unwrap();
    let (f, h) = build_pair(&ctx, &inst).unwrap();
    assert_eq!(compositional_inverse(&ctx, f.poly()).unwrap(), h.into_poly());
    assert!(verify_pair(&ctx, &inst).unwrap().all_hold());

    let trivial = derive_params(&ctx, 2, FieldElem::ONE, FieldElem::ZERO, FieldElem::ONE).unwrap();
    assert_eq!(trivial.delta, ctx.int(-1));
    assert_eq!(delta_closed_form(&ctx, &trivial).unwrap(), FieldElem::ONE);
    assert_eq!(delta_negated_closed_form(&ctx, &trivial).unwrap(), trivial.delta);
}

#[test]
fn counts_per_field() {
    for (p, m, conditioned, full) in [(3, 2, 12, 12), (5, 3, 80, 180), (7, 5, 252, 546)] {
        let ctx = FieldCtx::new(p, 2).unwrap();
        for b in family_roots(&ctx).unwrap() {
            let c = census(&ctx, m, b, CensusMode::FullShape, 2).unwrap();
            assert_eq!((c.conditioned, c.full), (conditioned, Some(full)), "p = {p} b = {b}");
        }
    }
    let f49 = FieldCtx::new(7, 2).unwrap();
    let c = census(&f49, 4, FieldElem::ONE, CensusMode::FullShape, 2).unwrap();
    assert!(c.full.unwrap() > 546);
}

#[test]
fn extra_closure_outcomes() {
    let ctx = FieldCtx::new(5, 2).unwrap();
    let scal = extra_closure(&ctx, 3, ClosureScope::Scalings).unwrap();
    assert_eq!(scal.extra_count, 600);
    assert!(scal.closed);
    let tr = extra_closure(&ctx, 3, ClosureScope::Translations).unwrap();
    assert!(!tr.closed);
    // only the untranslated PPs keep the whole set closed
    assert_eq!(tr.closing_shifts, vec![FieldElem::ZERO]);
    assert_eq!((tr.checked, tr.checked - tr.escaped), (15000, 3000));
}

#[test]
fn identity_suite_outcomes() {
    let failing = |p: u32| -> Vec<&'static str> {
        let r = lemma_suite(&FieldCtx::new(p, 2).unwrap()).unwrap();
        for c in r.companions() {
            assert_eq!(c.failed, 0, "companion {} at p = {p}", c.name);
        }
        r.checks.iter().filter(|c| !c.passed()).map(|c| c.name).collect()
    };
    assert_eq!(failing(3), vec!["delta-closed-form"]);
    assert_eq!(failing(5), vec!["delta-closed-form", "delta-twist", "hmd-power"]);
    assert_eq!(failing(7), vec!["delta-closed-form", "delta-twist", "hmd-power"]);
}

fn constructible(p: u32) -> Vec<(u32, FieldElem, FieldElem, FieldElem)> {
    let ctx = FieldCtx::new(p, 2).unwrap();
    let mut out = Vec::new();
    for m in 2..p {
        for b in family_roots(&ctx).unwrap() {
            for a in ctx.elements() {
                for be in ctx.elements() {
                    if check_conditions(&ctx, m, b, a, be).unwrap().constructible {
                        out.push((m, b, a, be));
                    }
                }
            }
        }
    }
    out
}

fn instance() -> impl Strategy<Value = (FieldCtx, u32, FieldElem, FieldElem, FieldElem)> {
    prop::sample::select(vec![3u32, 5, 7]).prop_flat_map(|p| {
        (Just(FieldCtx::new(p, 2).unwrap()), prop::sample::select(constructible(p)))
            .prop_map(|(ctx, (m, b, a, be))| (ctx, m, b, a, be))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn constructible_instances_invert((ctx, m, b, alpha, beta) in instance()) {
        let inst = derive_params(&ctx, m, b, alpha, beta).unwrap();
        prop_assert!(verify_pair(&ctx, &inst).unwrap().all_hold());
        // delta from its definition is the negated closed form
        prop_assert_eq!(inst.delta, delta_negated_closed_form(&ctx, &inst).unwrap());
        prop_assert_eq!(inst.delta, ctx.neg(delta_closed_form(&ctx, &inst).unwrap()));
        // b^(m^2) delta^p = b delta
        let p = ctx.p() as u64;
        let lhs = ctx.mul(ctx.pow(b, (m * m) as u64), ctx.pow(inst.delta, p));
        prop_assert_eq!(lhs, ctx.mul(b, inst.delta));
    }

    #[test]
    fn block_powers((ctx, m, b, _a, _be) in instance()) {
        let p = ctx.p() as u64;
        let g = build_gmb_hmd(&ctx, m, b, BlockKind::G).unwrap().into_poly();
        let sign = if m % 2 == 0 { FieldElem::ONE } else { ctx.int(-1) };
        prop_assert_eq!(g.pow(&ctx, p), g.scale(&ctx, ctx.mul(sign, ctx.pow(b, m as u64 * p))));
        let h = build_gmb_hmd(&ctx, m, b, BlockKind::H).unwrap().into_poly();
        prop_assert_eq!(h.pow(&ctx, p), h.scale(&ctx, ctx.pow(b, (m * m) as u64)));
        // d is again a (p+1)-th root of unity
        prop_assert_eq!(ctx.pow(hmd_d(&ctx, m, b), p + 1), FieldElem::ONE);
        prop_assert!(!PolyFq::is_zero(&g));
    }
}
