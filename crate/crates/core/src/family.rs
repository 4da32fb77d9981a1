//! The permutation family `f = (x^p - b x)^m + α x^p + β x` over `F_{p^2}`
//! with its parametric compositional inverse
//! `h = δ (x^p - d x)^m + γ x^p + ε x`.
//!
//! Here `b^{p+1} = 1`, `2 <= m <= p - 1`, `d = (-1)^m b^{mp}`, and with
//! `N = β^{p+1} - α^{p+1}`:
//!
//! * `γ = -α / N`, `ε = β^p / N`,
//! * `δ = (-γ d - ε) / (β^p - α d)^m`.
//!
//! The pair is constructible when `N != 0` and `(β + b α)^{p-1} = (-1)^m b^{mp-1}`.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::oracle::{compositional_inverse, table_is_permutation};
use crate::poly::{binomial_block, hmd_d, interpolate, PolyFq, VPoly};

// At most this many counterexamples are kept per identity.
const MAX_COUNTEREXAMPLES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyInstance {
    pub m: u32,
    pub b: FieldElem,
    pub alpha: FieldElem,
    pub beta: FieldElem,
    pub gamma: FieldElem,
    pub epsilon: FieldElem,
    pub delta: FieldElem,
    pub d: FieldElem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionVerdict {
    /// `α^{p+1} != β^{p+1}`
    pub cond1: bool,
    /// `(β + b α)^{p-1} = (-1)^m b^{mp-1}`; false when `β + b α = 0`.
    pub cond2: bool,
    pub constructible: bool,
}

fn sign(ctx: &FieldCtx, m: u32, x: FieldElem) -> FieldElem {
    if m % 2 == 1 {
        ctx.neg(x)
    } else {
        x
    }
}

/// Checks `n = 2`, `2 <= m <= p - 1` and `b^{p+1} = 1`.
pub fn validate_family(ctx: &FieldCtx, m: u32, b: FieldElem) -> Result<()> {
    if ctx.n() != 2 {
        return Err(Error::WrongDegree { expected: 2, got: ctx.n() });
    }
    let p = ctx.p();
    if m < 2 || m + 1 > p {
        return Err(Error::BadExponent { m, max: p - 1 });
    }
    if b.is_zero() || ctx.pow(b, p as u64 + 1) != FieldElem::ONE {
        return Err(Error::NotRootOfUnity(b.index()));
    }
    Ok(())
}

/// All admissible `b`, i.e. the `(p+1)`-th roots of unity.
pub fn family_roots(ctx: &FieldCtx) -> Result<Vec<FieldElem>> {
    if ctx.n() != 2 {
        return Err(Error::WrongDegree { expected: 2, got: ctx.n() });
    }
    ctx.roots_of_unity(ctx.p() as u64 + 1)
}

/// `β^{p+1} - α^{p+1}`.
pub fn norm_difference(ctx: &FieldCtx, alpha: FieldElem, beta: FieldElem) -> FieldElem {
    let e = ctx.p() as u64 + 1;
    ctx.sub(ctx.pow(beta, e), ctx.pow(alpha, e))
}

pub fn check_conditions(
    ctx: &FieldCtx,
    m: u32,
    b: FieldElem,
    alpha: FieldElem,
    beta: FieldElem,
) -> Result<ConditionVerdict> {
    validate_family(ctx, m, b)?;
    Ok(conditions_unchecked(ctx, m, b, alpha, beta))
}

fn conditions_unchecked(ctx: &FieldCtx, m: u32, b: FieldElem, alpha: FieldElem, beta: FieldElem) -> ConditionVerdict {
    let p = ctx.p() as u64;
    let cond1 = !norm_difference(ctx, alpha, beta).is_zero();
    let s = ctx.add(beta, ctx.mul(b, alpha));
    let rhs = sign(ctx, m, ctx.pow(b, m as u64 * p - 1));
    let cond2 = !s.is_zero() && ctx.pow(s, p - 1) == rhs;
    ConditionVerdict { cond1, cond2, constructible: cond1 && cond2 }
}

/// The second condition in its ratio form `(b β^p + α^p) / (β + α b) = d`;
/// `None` when `β + α b = 0`.
pub fn condition_ratio_form(ctx: &FieldCtx, m: u32, b: FieldElem, alpha: FieldElem, beta: FieldElem) -> Option<bool> {
    let s = ctx.add(beta, ctx.mul(alpha, b));
    if s.is_zero() {
        return None;
    }
    let num = ctx.add(ctx.mul(b, ctx.frobenius(beta)), ctx.frobenius(alpha));
    Some(ctx.div(num, s).ok()? == hmd_d(ctx, m, b))
}

pub fn derive_params(
    ctx: &FieldCtx,
    m: u32,
    b: FieldElem,
    alpha: FieldElem,
    beta: FieldElem,
) -> Result<FamilyInstance> {
    validate_family(ctx, m, b)?;
    derive_unchecked(ctx, m, b, alpha, beta)
}

fn derive_unchecked(ctx: &FieldCtx, m: u32, b: FieldElem, alpha: FieldElem, beta: FieldElem) -> Result<FamilyInstance> {
    let norm = norm_difference(ctx, alpha, beta);
    if norm.is_zero() {
        return Err(Error::DegenerateParameters("alpha^(p+1) = beta^(p+1)"));
    }
    let beta_p = ctx.frobenius(beta);
    let gamma = ctx.neg(ctx.div(alpha, norm)?);
    let epsilon = ctx.div(beta_p, norm)?;
    let d = hmd_d(ctx, m, b);
    let den = ctx.sub(beta_p, ctx.mul(alpha, d));
    if den.is_zero() {
        return Err(Error::DegenerateParameters("beta^p - alpha d = 0"));
    }
    let num = ctx.neg(ctx.add(ctx.mul(gamma, d), epsilon));
    let delta = ctx.div(num, ctx.pow(den, m as u64))?;
    Ok(FamilyInstance { m, b, alpha, beta, gamma, epsilon, delta, d })
}

/// `(β + b α)^{m-1} / (β^{p+1} - α^{p+1})^m`, the closed form as usually
/// stated. It is the negative of the defining `δ` on every constructible
/// instance; see [`delta_negated_closed_form`].
pub fn delta_closed_form(ctx: &FieldCtx, inst: &FamilyInstance) -> Result<FieldElem> {
    let s = ctx.add(inst.beta, ctx.mul(inst.b, inst.alpha));
    let norm = norm_difference(ctx, inst.alpha, inst.beta);
    ctx.div(ctx.pow(s, inst.m as u64 - 1), ctx.pow(norm, inst.m as u64))
}

/// `-(β + b α)^{m-1} / (β^{p+1} - α^{p+1})^m`. Substituting
/// `γ d + ε = 1 / (β + b α)` and `β^p - α d = N / (β + b α)` into the
/// definition of `δ` gives this form, sign included.
pub fn delta_negated_closed_form(ctx: &FieldCtx, inst: &FamilyInstance) -> Result<FieldElem> {
    Ok(ctx.neg(delta_closed_form(ctx, inst)?))
}

fn linear_part(ctx: &FieldCtx, at_p: FieldElem, at_1: FieldElem) -> PolyFq {
    let mut coeffs = vec![FieldElem::ZERO; ctx.p() as usize + 1];
    coeffs[ctx.p() as usize] = at_p;
    coeffs[1] = ctx.add(coeffs[1], at_1);
    PolyFq::from_coeffs(coeffs)
}

/// `(x^p - b x)^m + α x^p + β x`, for any `(α, β)`.
pub fn shape_poly(ctx: &FieldCtx, m: u32, b: FieldElem, alpha: FieldElem, beta: FieldElem) -> PolyFq {
    binomial_block(ctx, b, m).add(ctx, &linear_part(ctx, alpha, beta))
}

/// The pair `(f, h)`; both conditions must hold.
pub fn build_pair(ctx: &FieldCtx, inst: &FamilyInstance) -> Result<(VPoly, VPoly)> {
    let v = check_conditions(ctx, inst.m, inst.b, inst.alpha, inst.beta)?;
    if !v.constructible {
        return Err(Error::NotConstructible);
    }
    let f = shape_poly(ctx, inst.m, inst.b, inst.alpha, inst.beta);
    let h = binomial_block(ctx, inst.d, inst.m)
        .scale(ctx, inst.delta)
        .add(ctx, &linear_part(ctx, inst.gamma, inst.epsilon));
    Ok((VPoly::new(ctx, f)?, VPoly::new(ctx, h)?))
}

/// End-to-end verification of one constructible instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub f_is_ppr: bool,
    /// `h` coincides with the interpolated inverse of `f`.
    pub h_matches_interpolated: bool,
    pub h_after_f_is_identity: bool,
    pub f_after_h_is_identity: bool,
    /// `h / δ = (x^p - d x)^m + (γ/δ) x^p + (ε/δ) x` satisfies both
    /// conditions for `(m, d)`.
    pub inverse_in_family: bool,
}

impl PairCheck {
    pub fn all_hold(&self) -> bool {
        self.f_is_ppr
            && self.h_matches_interpolated
            && self.h_after_f_is_identity
            && self.f_after_h_is_identity
            && self.inverse_in_family
    }
}

pub fn verify_pair(ctx: &FieldCtx, inst: &FamilyInstance) -> Result<PairCheck> {
    let (f, h) = build_pair(ctx, inst)?;
    let tf = f.evaluation_table(ctx);
    let th = h.evaluation_table(ctx);
    let f_is_ppr = table_is_permutation(&tf) && f.is_monic();
    let h_matches_interpolated = f_is_ppr && compositional_inverse(ctx, &f)? == *h.poly();
    let identity = |outer: &[FieldElem], inner: &[FieldElem]| {
        inner.iter().enumerate().all(|(x, y)| outer[y.index() as usize].index() as usize == x)
    };
    let inverse_in_family = !inst.delta.is_zero() && {
        let a = ctx.div(inst.gamma, inst.delta)?;
        let bb = ctx.div(inst.epsilon, inst.delta)?;
        validate_family(ctx, inst.m, inst.d).is_ok() && conditions_unchecked(ctx, inst.m, inst.d, a, bb).constructible
    };
    Ok(PairCheck {
        f_is_ppr,
        h_matches_interpolated,
        h_after_f_is_identity: identity(&th, &tf),
        f_after_h_is_identity: identity(&tf, &th),
        inverse_in_family,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusMode {
    Conditioned,
    FullShape,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub m: u32,
    pub b: FieldElem,
    /// `(α, β)` pairs satisfying both conditions.
    pub conditioned: u64,
    /// `(α, β)` pairs for which the shape permutes the field.
    pub full: Option<u64>,
    pub excess: Option<i64>,
}

/// Counts over all `(α, β) in F_q^2`, `α` outer and `β` inner.
pub fn census(ctx: &FieldCtx, m: u32, b: FieldElem, mode: CensusMode, workers: usize) -> Result<CensusReport> {
    validate_family(ctx, m, b)?;
    let rows = census_rows(ctx, m, b, mode == CensusMode::FullShape, workers)?;
    let conditioned = rows.iter().map(|r| r.0).sum::<u64>();
    let full = (mode == CensusMode::FullShape).then(|| rows.iter().map(|r| r.1).sum::<u64>());
    Ok(CensusReport {
        m,
        b,
        conditioned,
        full,
        excess: full.map(|f| f as i64 - conditioned as i64),
    })
}

// Per-α (conditioned, full) counts.
fn census_rows(ctx: &FieldCtx, m: u32, b: FieldElem, full: bool, workers: usize) -> Result<Vec<(u64, u64)>> {
    let g = binomial_block(ctx, b, m).evaluation_table(ctx);
    let xp = PolyFq::monomial(FieldElem::ONE, ctx.p() as usize).evaluation_table(ctx);
    let row = |alpha: FieldElem| -> (u64, u64) {
        let mut cond = 0;
        let mut perm = 0;
        let base: Vec<FieldElem> = g.iter().zip(&xp).map(|(&gv, &xv)| ctx.mul_add(alpha, xv, gv)).collect();
        let mut table = vec![FieldElem::ZERO; base.len()];
        for beta in ctx.elements() {
            if conditions_unchecked(ctx, m, b, alpha, beta).constructible {
                cond += 1;
            }
            if full {
                for (x, (slot, &v)) in table.iter_mut().zip(&base).enumerate() {
                    *slot = ctx.mul_add(beta, FieldElem::new(x as u32), v);
                }
                if table_is_permutation(&table) {
                    perm += 1;
                }
            }
        }
        (cond, perm)
    };
    let alphas: Vec<FieldElem> = ctx.elements().collect();
    if workers <= 1 {
        return Ok(alphas.into_iter().map(row).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::OutOfRange(format!("thread pool: {e}")))?;
    Ok(pool.install(|| alphas.par_iter().map(|&a| row(a)).collect()))
}

/// All `(α, β)` for which the shape permutes the field but the conditions
/// fail, for one `(m, b)`.
pub fn extra_pairs(ctx: &FieldCtx, m: u32, b: FieldElem) -> Result<Vec<(FieldElem, FieldElem)>> {
    validate_family(ctx, m, b)?;
    let mut out = Vec::new();
    for alpha in ctx.elements() {
        for beta in ctx.elements() {
            if conditions_unchecked(ctx, m, b, alpha, beta).constructible {
                continue;
            }
            if table_is_permutation(&shape_poly(ctx, m, b, alpha, beta).evaluation_table(ctx)) {
                out.push((alpha, beta));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub m: u32,
    pub scope: ClosureScope,
    /// Shape PPRs outside the conditioned family, summed over all `b`.
    pub extra_count: u64,
    /// Number of `(PPR, scaling, translation)` inverses examined.
    pub checked: u64,
    /// Inverses whose PPR left the extra set.
    pub escaped: u64,
    /// Translations `θ2` under which every inverse stayed in the extra set.
    pub closing_shifts: Vec<FieldElem>,
    pub closed: bool,
    pub failures: Vec<String>,
}

/// PPR of a permutation given by its table: subtract the value at zero and
/// divide by the leading coefficient.
fn ppr_of_table(ctx: &FieldCtx, table: &[FieldElem]) -> PolyFq {
    let shifted: Vec<FieldElem> = table.iter().map(|&y| ctx.sub(y, table[0])).collect();
    let f = interpolate(ctx, &shifted);
    let lead = f.leading().expect("a permutation is nonconstant");
    f.scale(ctx, ctx.inv(lead).expect("leading coefficient is nonzero"))
}

/// Which PPs `θ1 f + θ2` attached to a PPR `f` are inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureScope {
    /// `θ1 = 1, θ2 = 0` only.
    Representatives,
    /// All `θ1 != 0`, `θ2 = 0`.
    Scalings,
    /// `θ1 = 1` and all `θ2`.
    Translations,
    /// All `θ1 != 0` and all `θ2`.
    Affine,
}

/// Whether the PPs attached to the extra shape PPRs (fixed `m`, all `b`)
/// have inverses whose PPRs are again extra shape PPRs.
pub fn extra_closure(ctx: &FieldCtx, m: u32, scope: ClosureScope) -> Result<ClosureReport> {
    let roots = family_roots(ctx)?;
    let mut extra: Vec<PolyFq> = Vec::new();
    for &b in &roots {
        for (alpha, beta) in extra_pairs(ctx, m, b)? {
            extra.push(shape_poly(ctx, m, b, alpha, beta));
        }
    }
    let set: HashSet<PolyFq> = extra.iter().cloned().collect();
    let (scalings, shifts): (Vec<FieldElem>, Vec<FieldElem>) = match scope {
        ClosureScope::Representatives => (vec![FieldElem::ONE], vec![FieldElem::ZERO]),
        ClosureScope::Scalings => (ctx.nonzero().collect(), vec![FieldElem::ZERO]),
        ClosureScope::Translations => (vec![FieldElem::ONE], ctx.elements().collect()),
        ClosureScope::Affine => (ctx.nonzero().collect(), ctx.elements().collect()),
    };
    let mut report = ClosureReport {
        m,
        scope,
        extra_count: extra.len() as u64,
        checked: 0,
        escaped: 0,
        closing_shifts: Vec::new(),
        closed: true,
        failures: Vec::new(),
    };
    let mut shift_escaped = vec![false; shifts.len()];
    for f in &extra {
        let tf = f.evaluation_table(ctx);
        let mut inv = vec![FieldElem::ZERO; tf.len()];
        for (x, y) in tf.iter().enumerate() {
            inv[y.index() as usize] = FieldElem::new(x as u32);
        }
        for &t1 in &scalings {
            for (si, &t2) in shifts.iter().enumerate() {
                // (t1 f + t2)^{-1}(y) = f^{-1}((y - t2) / t1)
                let table: Vec<FieldElem> = ctx
                    .elements()
                    .map(|y| {
                        let arg = ctx.div(ctx.sub(y, t2), t1).expect("t1 is nonzero");
                        inv[arg.index() as usize]
                    })
                    .collect();
                report.checked += 1;
                let g = ppr_of_table(ctx, &table);
                if !set.contains(&g) {
                    report.closed = false;
                    report.escaped += 1;
                    shift_escaped[si] = true;
                    if report.failures.len() < MAX_COUNTEREXAMPLES {
                        report.failures.push(format!("f = {f}, theta1 = {t1}, theta2 = {t2}: inverse PPR {g}"));
                    }
                }
            }
        }
    }
    report.closing_shifts = shifts.iter().zip(&shift_escaped).filter(|(_, &e)| !e).map(|(&t, _)| t).collect();
    Ok(report)
}

/// One identity checked over its whole hypothesis range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub statement: &'static str,
    /// For a sign-corrected companion, the name of the identity it corrects.
    pub corrects: Option<&'static str>,
    pub instances: u64,
    /// Instances whose hypotheses fail.
    pub skipped: u64,
    pub failed: u64,
    /// The first few failing instances.
    pub counterexamples: Vec<String>,
}

impl IdentityCheck {
    fn new(name: &'static str, statement: &'static str) -> Self {
        IdentityCheck {
            name,
            statement,
            corrects: None,
            instances: 0,
            skipped: 0,
            failed: 0,
            counterexamples: Vec::new(),
        }
    }

    fn correcting(mut self, name: &'static str) -> Self {
        self.corrects = Some(name);
        self
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failed += 1;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(describe());
            }
        }
    }

    fn skip(&mut self) {
        self.skipped += 1;
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub p: u32,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }

    /// The identities in their usual statement, without the companions.
    pub fn as_stated(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| c.corrects.is_none())
    }

    pub fn companions(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| c.corrects.is_some())
    }

    pub fn check(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Exhaustive check of the supporting identities behind the family's
/// inverse formula, over all valid `m`, `b` and all `(α, β)` meeting each
/// identity's hypotheses.
///
/// Three of the identities are usually stated with a sign that does not
/// hold in general; each is paired with a companion carrying the sign that
/// the defining formulas actually produce.
pub fn lemma_suite(ctx: &FieldCtx) -> Result<IdentityReport> {
    let roots = family_roots(ctx)?;
    let p = ctx.p();
    let pu = p as u64;
    let mut g_power = IdentityCheck::new("gmb-power", "g_mb(x)^p = (-1)^m b^(mp) g_mb(x)");
    let mut cofactors = IdentityCheck::new(
        "norm-and-cofactors",
        "beta^(p+1) - alpha^(p+1) in F_p; gamma beta^p + alpha eps = 0; gamma alpha^p + beta eps = 1; \
         alpha eps^p + beta gamma = 0; alpha gamma^p + beta eps = 1",
    );
    let mut equivalence = IdentityCheck::new(
        "condition-equivalence",
        "(beta + b alpha)^(p-1) = (-1)^m b^(mp-1) <=> (b beta^p + alpha^p)/(beta + alpha b) = (-1)^m b^(mp)",
    );
    let mut delta_form = IdentityCheck::new(
        "delta-closed-form",
        "delta = (beta + b alpha)^(m-1) / (beta^(p+1) - alpha^(p+1))^m",
    );
    let mut delta_twist = IdentityCheck::new("delta-twist", "(-1)^m b^(m^2) delta^p = b delta");
    let mut h_power = IdentityCheck::new("hmd-power", "h_md(x)^p = (-1)^m b^(m^2) h_md(x)");
    let mut delta_form_signed = IdentityCheck::new(
        "delta-closed-form-negated",
        "delta = -(beta + b alpha)^(m-1) / (beta^(p+1) - alpha^(p+1))^m",
    )
    .correcting("delta-closed-form");
    let mut delta_twist_signed =
        IdentityCheck::new("delta-twist-unsigned", "b^(m^2) delta^p = b delta").correcting("delta-twist");
    let mut h_power_signed =
        IdentityCheck::new("hmd-power-unsigned", "h_md(x)^p = b^(m^2) h_md(x)").correcting("hmd-power");

    for alpha in ctx.elements() {
        for beta in ctx.elements() {
            let norm = norm_difference(ctx, alpha, beta);
            if norm.is_zero() {
                cofactors.skip();
                continue;
            }
            let gamma = ctx.neg(ctx.div(alpha, norm)?);
            let eps = ctx.div(ctx.frobenius(beta), norm)?;
            let (ap, bp) = (ctx.frobenius(alpha), ctx.frobenius(beta));
            let checks = [
                ctx.in_prime_subfield(norm),
                ctx.add(ctx.mul(gamma, bp), ctx.mul(alpha, eps)).is_zero(),
                ctx.add(ctx.mul(gamma, ap), ctx.mul(beta, eps)) == FieldElem::ONE,
                ctx.add(ctx.mul(alpha, ctx.frobenius(eps)), ctx.mul(beta, gamma)).is_zero(),
                ctx.add(ctx.mul(alpha, ctx.frobenius(gamma)), ctx.mul(beta, eps)) == FieldElem::ONE,
            ];
            cofactors.record(checks.iter().all(|&c| c), || {
                format!("alpha = {alpha}, beta = {beta}: parts {checks:?}")
            });
        }
    }

    for m in 2..p {
        for &b in &roots {
            let g = binomial_block(ctx, b, m);
            let lhs = g.pow(ctx, pu);
            let rhs = g.scale(ctx, sign(ctx, m, ctx.pow(b, m as u64 * pu)));
            g_power.record(lhs == rhs, || format!("m = {m}, b = {b}: g^p = {lhs}"));

            let bm2 = ctx.pow(b, (m * m) as u64);
            let h = binomial_block(ctx, hmd_d(ctx, m, b), m);
            let lhs = h.pow(ctx, pu);
            let stated = h.scale(ctx, sign(ctx, m, bm2));
            h_power.record(lhs == stated, || format!("m = {m}, b = {b}: h^p = {lhs}"));
            h_power_signed.record(lhs == h.scale(ctx, bm2), || format!("m = {m}, b = {b}: h^p = {lhs}"));

            for alpha in ctx.elements() {
                for beta in ctx.elements() {
                    let v = conditions_unchecked(ctx, m, b, alpha, beta);
                    let dependent = [
                        &mut delta_form,
                        &mut delta_form_signed,
                        &mut delta_twist,
                        &mut delta_twist_signed,
                    ];
                    if !v.cond1 {
                        equivalence.skip();
                        dependent.into_iter().for_each(IdentityCheck::skip);
                        continue;
                    }
                    match condition_ratio_form(ctx, m, b, alpha, beta) {
                        None => equivalence.skip(),
                        Some(ratio) => equivalence.record(ratio == v.cond2, || {
                            format!("m = {m}, b = {b}, alpha = {alpha}, beta = {beta}: direct {}, ratio {ratio}", v.cond2)
                        }),
                    }
                    if !v.cond2 {
                        dependent.into_iter().for_each(IdentityCheck::skip);
                        continue;
                    }
                    let inst = derive_unchecked(ctx, m, b, alpha, beta)?;
                    let describe = |lhs: FieldElem, rhs: FieldElem| {
                        move || format!("m = {m}, b = {b}, alpha = {alpha}, beta = {beta}: {lhs} vs {rhs}")
                    };
                    let closed = delta_closed_form(ctx, &inst)?;
                    delta_form.record(closed == inst.delta, describe(inst.delta, closed));
                    let negated = delta_negated_closed_form(ctx, &inst)?;
                    delta_form_signed.record(negated == inst.delta, describe(inst.delta, negated));
                    let twisted = ctx.mul(bm2, ctx.frobenius(inst.delta));
                    let rhs = ctx.mul(b, inst.delta);
                    let stated = sign(ctx, m, twisted);
                    delta_twist.record(stated == rhs, describe(stated, rhs));
                    delta_twist_signed.record(twisted == rhs, describe(twisted, rhs));
                }
            }
        }
    }

    Ok(IdentityReport {
        p,
        checks: vec![
            g_power,
            cofactors,
            equivalence,
            delta_form,
            delta_twist,
            h_power,
            delta_form_signed,
            delta_twist_signed,
            h_power_signed,
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn f9() -> FieldCtx {
        FieldCtx::new(3, 2).unwrap()
    }

    // t = 3, 1 + 2t = 7 in the base-3 encoding
    const T: FieldElem = FieldElem::new(3);
    const ONE_PLUS_2T: FieldElem = FieldElem::new(7);

    #[test]
    fn f9_worked_instance() {
        let ctx = f9();
        let inst = derive_params(&ctx, 2, FieldElem::ONE, T, ONE_PLUS_2T).unwrap();
        assert_eq!(inst.d, FieldElem::ONE);
        assert_eq!(inst.gamma, FieldElem::new(6)); // 2t
        assert_eq!(inst.epsilon, FieldElem::new(4)); // 1 + t
        assert_eq!(inst.delta, FieldElem::new(2));
        let v = check_conditions(&ctx, 2, FieldElem::ONE, T, ONE_PLUS_2T).unwrap();
        assert!(v.cond1 && v.cond2 && v.constructible);

        let (f, h) = build_pair(&ctx, &inst).unwrap();
        let expect_f = parse_poly(&ctx, "x^6 + x^4 + x^2 + 3*x^3 + 7*x").unwrap();
        let expect_h = parse_poly(&ctx, "2*x^6 + 2*x^4 + 2*x^2 + 6*x^3 + 4*x").unwrap();
        assert_eq!(f.poly(), &expect_f);
        assert_eq!(h.poly(), &expect_h);
        assert!(verify_pair(&ctx, &inst).unwrap().all_hold());
    }

    #[test]
    fn degenerate_and_scalar_cases() {
        let ctx = f9();
        let inst = derive_params(&ctx, 2, FieldElem::ONE, FieldElem::ZERO, FieldElem::ONE).unwrap();
        assert_eq!(inst.gamma, FieldElem::ZERO);
        assert_eq!(inst.epsilon, FieldElem::ONE);
        assert_eq!(inst.d, FieldElem::ONE);
        assert_eq!(inst.delta, ctx.int(-1));
        assert_eq!(delta_closed_form(&ctx, &inst).unwrap(), FieldElem::ONE);
        assert_eq!(delta_negated_closed_form(&ctx, &inst).unwrap(), inst.delta);
        assert!(matches!(
            derive_params(&ctx, 2, FieldElem::ONE, FieldElem::ONE, FieldElem::ONE),
            Err(Error::DegenerateParameters(_))
        ));
        for b in family_roots(&ctx).unwrap() {
            let v = check_conditions(&ctx, 2, b, FieldElem::ONE, FieldElem::ONE).unwrap();
            assert!(!v.cond1 && !v.constructible);
        }
        let f25 = FieldCtx::new(5, 2).unwrap();
        assert!(matches!(validate_family(&f25, 5, FieldElem::ONE), Err(Error::BadExponent { .. })));
        assert!(matches!(validate_family(&f25, 2, f25.primitive()), Err(Error::NotRootOfUnity(_))));
        let f27 = FieldCtx::new(3, 3).unwrap();
        assert!(matches!(validate_family(&f27, 2, FieldElem::ONE), Err(Error::WrongDegree { .. })));
    }

    #[test]
    fn not_constructible_pair() {
        let ctx = f9();
        let inst = derive_params(&ctx, 2, FieldElem::ONE, FieldElem::ZERO, FieldElem::ONE).unwrap();
        let cond = check_conditions(&ctx, 2, FieldElem::ONE, FieldElem::ZERO, FieldElem::ONE).unwrap();
        if !cond.constructible {
            assert_eq!(build_pair(&ctx, &inst), Err(Error::NotConstructible));
        }
    }

    #[test]
    fn ratio_form_undefined_on_zero_sum() {
        let ctx = f9();
        // beta = -b alpha with b = 1
        assert_eq!(condition_ratio_form(&ctx, 2, FieldElem::ONE, FieldElem::ONE, ctx.int(-1)), None);
        let v = check_conditions(&ctx, 2, FieldElem::ONE, FieldElem::ONE, ctx.int(-1)).unwrap();
        assert!(!v.cond2);
    }

    #[test]
    fn conjugate_cofactor_instance() {
        let ctx = f9();
        let inst = derive_params(&ctx, 2, FieldElem::ONE, T, ONE_PLUS_2T).unwrap();
        let lhs = ctx.add(
            ctx.mul(inst.alpha, ctx.frobenius(inst.epsilon)),
            ctx.mul(inst.beta, inst.gamma),
        );
        assert!(lhs.is_zero());
    }

    #[test]
    fn f9_census_and_identities() {
        let ctx = f9();
        for b in family_roots(&ctx).unwrap() {
            let c = census(&ctx, 2, b, CensusMode::Conditioned, 1).unwrap();
            assert_eq!(c.conditioned, 12);
            assert_eq!(c.full, None);
        }
        let report = lemma_suite(&ctx).unwrap();
        assert_eq!(report.as_stated().count(), 6);
        assert_eq!(report.companions().count(), 3);
        for c in &report.checks {
            assert!(c.instances > 0, "{}", c.name);
            if c.name == "delta-closed-form" {
                assert_eq!(c.failed, c.instances);
            } else {
                // with only m = 2 available, the odd-m sign never shows
                assert!(c.passed(), "{c:?}");
            }
        }
    }
}
