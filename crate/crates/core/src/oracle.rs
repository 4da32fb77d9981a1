//! Permutation tests: the direct evaluation-table check, Hermite's
//! criterion as an independent second opinion, and compositional inversion.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::{interpolate, PolyFq};

/// Default largest `q` for which [`hermite_test`] runs.
pub const DEFAULT_HERMITE_CAP: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermVerdict {
    pub is_pp: bool,
    /// Monic, `f(0) = 0`, and a permutation.
    pub is_ppr: bool,
    /// First colliding pair `(x1, x2)`, `x1 < x2`, for non-permutations.
    pub witness: Option<(FieldElem, FieldElem)>,
}

/// Returns the first collision in an evaluation table, if any.
pub fn table_collision(values: &[FieldElem]) -> Option<(FieldElem, FieldElem)> {
    let mut preimage: Vec<Option<u32>> = vec![None; values.len()];
    for (x, &y) in values.iter().enumerate() {
        let slot = &mut preimage[y.index() as usize];
        if let Some(first) = *slot {
            return Some((FieldElem::new(first), FieldElem::new(x as u32)));
        }
        *slot = Some(x as u32);
    }
    None
}

/// `true` iff the table is a bijection of `F_q`.
pub fn table_is_permutation(values: &[FieldElem]) -> bool {
    let mut seen = vec![false; values.len()];
    values.iter().all(|y| !std::mem::replace(&mut seen[y.index() as usize], true))
}

pub fn is_permutation(ctx: &FieldCtx, f: &PolyFq) -> PermVerdict {
    let witness = table_collision(&f.evaluation_table(ctx));
    let is_pp = witness.is_none();
    PermVerdict {
        is_pp,
        is_ppr: is_pp && f.is_monic() && f.coeff(0).is_zero(),
        witness,
    }
}

/// Hermite's criterion with the default field cap.
pub fn hermite_test(ctx: &FieldCtx, f: &PolyFq) -> Result<bool> {
    hermite_test_capped(ctx, f, DEFAULT_HERMITE_CAP)
}

/// `f` permutes `F_q` iff `f^{q-1} mod (x^q - x)` is monic of degree `q - 1`
/// and `f^t mod (x^q - x)` has degree at most `q - 2` for every
/// `1 <= t <= q - 2` with `p` not dividing `t`.
pub fn hermite_test_capped(ctx: &FieldCtx, f: &PolyFq, cap: u32) -> Result<bool> {
    let q = ctx.q();
    if q > cap {
        return Err(Error::TooLargeField { q, cap });
    }
    if q <= 2 {
        return Err(Error::OutOfRange("Hermite's criterion needs q > 2".into()));
    }
    let top = q as usize - 1;
    let mut power = PolyFq::constant(FieldElem::ONE);
    for t in 1..=top {
        power = power.mul(ctx, f);
        let deg = power.degree();
        if t == top {
            return Ok(deg == Some(top) && power.is_monic());
        }
        if t % ctx.p() as usize != 0 && deg.is_some_and(|d| d > top - 1) {
            return Ok(false);
        }
    }
    unreachable!()
}

/// The reduced `h` with `h(f(x)) = f(h(x)) = x`, by inverting the evaluation
/// permutation and interpolating through all `q` points.
pub fn compositional_inverse(ctx: &FieldCtx, f: &PolyFq) -> Result<PolyFq> {
    let table = f.evaluation_table(ctx);
    if !table_is_permutation(&table) {
        return Err(Error::NotAPermutation);
    }
    let mut inverse = vec![FieldElem::ZERO; table.len()];
    for (x, y) in table.into_iter().enumerate() {
        inverse[y.index() as usize] = FieldElem::new(x as u32);
    }
    Ok(interpolate(ctx, &inverse))
}
