//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criterion 10 is a known failure: three of the stated identities are false
//! (see the decisions ledger). It is run as stated and must keep failing; the
//! binary exits nonzero if any other criterion fails or if criterion 10
//! starts passing.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use shiftperm::enumerate::{count_permutation_polynomials, degree_distribution, enumerate_pprs, Domain, EnumOptions};
use shiftperm::family::{self, CensusMode};
use shiftperm::oracle::compositional_inverse;
use shiftperm::report::{ClaimReport, ClaimStatus};
use shiftperm::reproduce::{hermite_agreement, v2_census};
use shiftperm::shift::{default_generators, intersection_space, predicted_basis, span_of, BasisStatement, KernelChain};
use shiftperm::{FieldCtx, ShiftOperator, VPoly};

const KNOWN_FAILURES: [u32; 1] = [10];

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn field(p: u32, n: u32) -> FieldCtx {
    FieldCtx::new(p, n).expect("roster fields build")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

const OPERATOR_FIELDS: [(u32, u32); 7] = [(2, 2), (5, 1), (2, 3), (3, 2), (5, 2), (3, 3), (7, 2)];

fn operator_order() -> Outcome {
    let mut total = 0;
    for (p, n) in OPERATOR_FIELDS {
        let ctx = field(p, n);
        for r in ctx.nonzero() {
            let a = ShiftOperator::new(&ctx, r);
            ensure(a.matrix().pow(&ctx, p).unwrap().is_identity(), || format!("F_{}: (A_{r})^p != I", ctx.q()))?;
            total += 1;
        }
    }
    Ok(format!("(A_r)^p = I for all {total} nonzero r over F_4, F_5, F_8, F_9, F_25, F_27, F_49"))
}

fn kernel_dimensions() -> Outcome {
    let mut notes = Vec::new();
    for (p, n) in OPERATOR_FIELDS {
        let ctx = field(p, n);
        let q = ctx.q() as usize;
        // k p^(n-1) for k < p and q - 2 at k = p; over F_p the space V[x]
        // has dimension p - 2, so the chain saturates there
        let expected: Vec<usize> = (1..=p as usize)
            .map(|k| if k == p as usize { q - 2 } else { (k * (p as usize).pow(n - 1)).min(q - 2) })
            .collect();
        for r in ctx.nonzero() {
            let dims = KernelChain::up_to(&ctx, r, p).unwrap().dims();
            ensure(dims == expected, || format!("F_{q} r = {r}: {dims:?}, expected {expected:?}"))?;
        }
        notes.push(format!("F_{q} {expected:?}"));
    }
    Ok(notes.join(", "))
}

fn basis_matches(ctx: &FieldCtx, stmt: BasisStatement) -> Result<(), String> {
    let (r, k) = stmt.target();
    let kernel = KernelChain::up_to(ctx, r, k).unwrap();
    let span = span_of(ctx, &predicted_basis(ctx, stmt).unwrap());
    ensure(&span == kernel.kernel(k), || format!("F_{} {stmt:?}: predicted dim {}, kernel dim {}", ctx.q(), span.dim(), kernel.kernel(k).dim()))
}

fn predicted_bases() -> Outcome {
    let mut checked = 0;
    for (p, n) in [(3, 2), (5, 2), (3, 3)] {
        basis_matches(&field(p, n), BasisStatement::Eigenvectors)?;
        checked += 1;
    }
    for (p, max_m) in [(3, 3), (5, 4)] {
        let ctx = field(p, 2);
        for m in 1..=max_m {
            basis_matches(&ctx, BasisStatement::Generalized { m })?;
            checked += 1;
        }
        for line in ctx.lines() {
            basis_matches(&ctx, BasisStatement::LineEigenvectors { r: line.representative })?;
            checked += 1;
        }
    }
    for p in [5, 7] {
        let ctx = field(p, 1);
        for m in 1..=p {
            basis_matches(&ctx, BasisStatement::PrimeField { m })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} predicted spans equal their kernels (RREF equality)"))
}

fn additivity_and_lines() -> Outcome {
    let mut pairs = 0;
    let mut kernels = 0;
    for (p, n) in [(3, 2), (5, 2)] {
        let ctx = field(p, n);
        let ops: Vec<ShiftOperator> = ctx.elements().map(|r| ShiftOperator::new(&ctx, r)).collect();
        for r in ctx.elements() {
            for s in ctx.elements() {
                let prod = ops[r.index() as usize].matrix().mul(&ctx, ops[s.index() as usize].matrix()).unwrap();
                ensure(&prod == ops[ctx.add(r, s).index() as usize].matrix(), || format!("F_{}: A_{r} A_{s} != A_(r+s)", ctx.q()))?;
                pairs += 1;
            }
        }
        let chains: Vec<KernelChain> = ctx.nonzero().map(|r| KernelChain::up_to(&ctx, r, p).unwrap()).collect();
        for r in ctx.nonzero() {
            for i in 2..p {
                let s = ctx.mul(ctx.int(i as i64), r);
                for k in 1..=p {
                    let (a, b) = (chains[r.index() as usize - 1].kernel(k), chains[s.index() as usize - 1].kernel(k));
                    ensure(a == b, || format!("F_{}: kernels of A_{r} and A_{s} differ at k = {k}", ctx.q()))?;
                    kernels += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} operator products and {kernels} same-line kernel pairs agree over F_9, F_25"))
}

fn v1_counts() -> Outcome {
    let mut notes = Vec::new();
    for ((p, n), expected) in [((3, 2), 6u64), ((3, 3), 432)] {
        let ctx = field(p, n);
        // independent count: (p^n - p)(p^n - p^2)...(p^n - p^(n-1))
        let formula: u64 = (1..n).map(|i| (ctx.q() - p.pow(i)) as u64).product();
        ensure(formula == expected, || format!("formula gives {formula}"))?;
        let v1 = intersection_space(&ctx, 1, &default_generators(&ctx)).unwrap();
        ensure(v1.dim() == n as usize, || format!("F_{}: dim V_1 = {}", ctx.q(), v1.dim()))?;
        let report = enumerate_pprs(&ctx, Domain::Subspace(&v1), &EnumOptions::default().unlimited_list()).unwrap();
        ensure(report.ppr_count == expected, || format!("F_{}: {} PPRs in V_1, expected {expected}", ctx.q(), report.ppr_count))?;
        for f in report.pprs(&ctx).unwrap() {
            let h = VPoly::new(&ctx, compositional_inverse(&ctx, f.poly()).unwrap()).unwrap();
            ensure(v1.contains_vector(&ctx, &h.coords(&ctx)).unwrap(), || format!("F_{}: inverse of {f} leaves V_1", ctx.q()))?;
        }
        notes.push(format!("F_{}: dim {n}, {expected} PPRs, inverses closed", ctx.q()));
    }
    Ok(notes.join("; "))
}

fn vk_dimensions() -> Outcome {
    let dims = |p: u32, n: u32, ks: std::ops::RangeInclusive<u32>| -> Vec<usize> {
        let ctx = field(p, n);
        ks.map(|k| intersection_space(&ctx, k, &default_generators(&ctx)).unwrap().dim()).collect()
    };
    let f9 = dims(3, 2, 1..=3);
    ensure(f9 == [2, 5, 7], || format!("F_9 {f9:?}"))?;
    let f25 = dims(5, 2, 1..=5);
    ensure(f25 == [2, 5, 10, 17, 23], || format!("F_25 {f25:?}"))?;
    let f27 = dims(3, 3, 1..=2);
    // k^n + n - 1
    let conj: Vec<usize> = (1..=2usize).map(|k| k.pow(3) + 2).collect();
    let status = ClaimReport::compare("intersection.vk-conjecture", "intersection", "F_27", format!("{conj:?}"), format!("{f27:?}"))
        .as_conjecture_instance()
        .status;
    ensure(status == ClaimStatus::VerifiedAsConjectureInstance, || format!("F_27 {f27:?} vs {conj:?}"))?;
    Ok(format!("F_9 {f9:?}, F_25 {f25:?}, F_27 {f27:?} ({status})"))
}

fn v2_count() -> Outcome {
    let ctx = field(3, 2);
    let c = v2_census(&ctx, &EnumOptions::default()).unwrap();
    let p = 3u64;
    let expected = p * (p + 1) * (p - 1) * (p - 1);
    ensure(c.searched == 59049, || format!("searched {}", c.searched))?;
    ensure(c.ppr_count - c.linearized == expected, || format!("{} non-linearized PPRs", c.ppr_count - c.linearized))?;
    ensure(c.shaped == expected && c.off_shape.is_empty(), || format!("off shape: {:?}", c.off_shape))?;
    Ok(format!("{} of 59049 candidates give {expected} non-linearized PPRs, all of shape (x^p - bx)^2 + ax^p + cx", c.searched))
}

fn inverse_theorem() -> Outcome {
    let mut notes = Vec::new();
    for p in [3u32, 5, 7] {
        let ctx = field(p, 2);
        let per = (p * (p - 1) * (p - 1)) as u64;
        let mut instances = 0;
        for m in 2..p {
            for b in family::family_roots(&ctx).unwrap() {
                let mut count = 0;
                for alpha in ctx.elements() {
                    for beta in ctx.elements() {
                        if !family::check_conditions(&ctx, m, b, alpha, beta).unwrap().constructible {
                            continue;
                        }
                        count += 1;
                        let inst = family::derive_params(&ctx, m, b, alpha, beta).unwrap();
                        let check = family::verify_pair(&ctx, &inst).unwrap();
                        ensure(check.f_is_ppr && check.h_matches_interpolated, || {
                            format!("F_{} m = {m} b = {b} alpha = {alpha} beta = {beta}: {check:?}", ctx.q())
                        })?;
                    }
                }
                ensure(count == per, || format!("F_{} m = {m} b = {b}: {count} constructible, expected {per}", ctx.q()))?;
                instances += count;
            }
        }
        notes.push(format!("F_{}: {instances} instances, {per} per (m, b)", ctx.q()));
    }
    Ok(notes.join("; "))
}

fn full_shape_counts() -> Outcome {
    let mut notes = Vec::new();
    for (p, m) in [(5u32, 3u32), (7, 5)] {
        let ctx = field(p, 2);
        let expected = (p * (p - 1) * (2 * p - 1)) as u64;
        for b in family::family_roots(&ctx).unwrap() {
            let c = family::census(&ctx, m, b, CensusMode::FullShape, 4).unwrap();
            ensure(c.full == Some(expected), || format!("(p, m) = ({p}, {m}) b = {b}: {:?}, expected {expected}", c.full))?;
        }
        notes.push(format!("({p}, {m}): {expected} per b"));
    }
    let ctx = field(7, 2);
    let mut half = Vec::new();
    for b in family::family_roots(&ctx).unwrap() {
        let c = family::census(&ctx, 4, b, CensusMode::FullShape, 4).unwrap().full.unwrap();
        ensure(c > 546, || format!("(7, 4) b = {b}: {c} <= 546"))?;
        half.push(c);
    }
    half.dedup();
    notes.push(format!("(7, 4): {half:?} > 546"));
    Ok(notes.join("; "))
}

fn identity_suite() -> Outcome {
    let mut failing = Vec::new();
    let mut companions = Vec::new();
    for p in [3u32, 5, 7] {
        let report = family::lemma_suite(&field(p, 2)).unwrap();
        for c in report.as_stated() {
            if !c.passed() {
                failing.push(format!("p = {p} {}: {} of {}", c.name, c.failed, c.instances));
            }
        }
        for c in report.companions() {
            companions.push((c.name, c.failed));
        }
    }
    let companions_clean = companions.iter().all(|&(_, f)| f == 0);
    if failing.is_empty() {
        Ok("all stated identities hold".into())
    } else {
        Err(format!(
            "stated identities fail: {}; sign-corrected companions {}",
            failing.join(", "),
            if companions_clean { "pass with 0 counterexamples" } else { "also fail" }
        ))
    }
}

fn hermite_agreement_suite() -> Outcome {
    let mut notes = Vec::new();
    for ((p, n), exhaustive_size) in [((5, 1), Some(125u64)), ((7, 1), Some(16807)), ((2, 3), None), ((3, 2), None), ((13, 1), None)] {
        let ctx = field(p, n);
        let a = hermite_agreement(&ctx, 10_000, 0).unwrap();
        ensure(a.disagreements.is_empty(), || format!("F_{}: {:?}", ctx.q(), a.disagreements))?;
        match exhaustive_size {
            Some(size) => ensure(a.exhaustive && a.checked == size, || format!("F_{}: checked {}", ctx.q(), a.checked))?,
            None => ensure(!a.exhaustive && a.checked >= 10_000, || format!("F_{}: checked {}", ctx.q(), a.checked))?,
        }
        notes.push(format!("F_{} {} {}", ctx.q(), if a.exhaustive { "exhaustive" } else { "sampled" }, a.checked));
    }
    Ok(format!("0 disagreements: {}", notes.join(", ")))
}

fn degree_census() -> Outcome {
    let mut notes = Vec::new();
    for (p, expected) in [(5u32, Some(BTreeMap::from([(1u32, 1u64), (2, 0), (3, 5)]))), (7, None)] {
        let ctx = field(p, 1);
        let c = degree_distribution(&ctx, 11, &EnumOptions::default()).unwrap();
        // orbit count: #PPR = p! / (p (p - 1))
        let total: u64 = (1..=p as u64 - 2).product();
        ensure(c.total == total, || format!("F_{p}: total {}, expected {total}", c.total))?;
        let pps = count_permutation_polynomials(&ctx, 10_000_000).unwrap();
        ensure(pps == total * (p * (p - 1)) as u64, || format!("F_{p}: {pps} PPs"))?;
        if let Some(e) = &expected {
            ensure(&c.by_degree == e, || format!("F_{p}: {:?}", c.by_degree))?;
        }
        for d in [2u32, 3] {
            ensure((p - 1) % d != 0 || c.by_degree[&d] == 0, || format!("F_{p}: degree {d} PPRs exist"))?;
        }
        ensure(c.stage_mismatches.is_empty(), || format!("F_{p}: {:?}", c.stage_mismatches))?;
        notes.push(format!("F_{p} {:?} total {}", c.by_degree, c.total));
    }
    Ok(format!("{}; first stage = degree for every PPR", notes.join("; ")))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, title: "operator order", limit: Some(Duration::from_secs(30)), run: operator_order },
        Criterion { id: 2, title: "kernel dimensions", limit: None, run: kernel_dimensions },
        Criterion { id: 3, title: "predicted bases span kernels", limit: None, run: predicted_bases },
        Criterion { id: 4, title: "A_r A_s = A_(r+s) and same-line kernels", limit: None, run: additivity_and_lines },
        Criterion { id: 5, title: "V_1 dimension, PPR counts, inverse closure", limit: None, run: v1_counts },
        Criterion { id: 6, title: "V_k dimensions", limit: None, run: vk_dimensions },
        Criterion { id: 7, title: "V_2 non-linearized PPRs over F_9", limit: Some(Duration::from_secs(10)), run: v2_count },
        Criterion { id: 8, title: "parametric inverse end to end", limit: Some(Duration::from_secs(120)), run: inverse_theorem },
        Criterion { id: 9, title: "full-shape counts", limit: Some(Duration::from_secs(120)), run: full_shape_counts },
        Criterion { id: 10, title: "identity suite as stated", limit: None, run: identity_suite },
        Criterion { id: 11, title: "Hermite agrees with direct test", limit: None, run: hermite_agreement_suite },
        Criterion { id: 12, title: "F_p degree distribution", limit: None, run: degree_census },
    ];
    let mut unexpected = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let mut outcome = (c.run)();
        let elapsed = start.elapsed();
        if let (Some(limit), Ok(_)) = (c.limit, &outcome) {
            if elapsed > limit {
                outcome = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        let known = KNOWN_FAILURES.contains(&c.id);
        let (verdict, detail) = match &outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        let tag = if known { " [known failure]" } else { "" };
        println!("criterion {:>2} {verdict}{tag} ({:.2?}) {}: {detail}", c.id, elapsed, c.title);
        if outcome.is_ok() == known {
            unexpected.push(c.id);
        }
    }
    let passed = criteria.len() - KNOWN_FAILURES.len();
    if unexpected.is_empty() {
        println!("acceptance: {passed} of {} criteria pass; criterion 10 fails as recorded", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
