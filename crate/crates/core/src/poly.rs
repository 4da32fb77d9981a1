//! Polynomials over `F_q` viewed as evaluation maps, i.e. reduced modulo
//! `x^q - x`, and the subspace `V[x]` of polynomials with `f(0) = 0` and
//! degree at most `q - 2`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};

/// A polynomial with coefficients indexed by degree. Trailing zero
/// coefficients are never stored, so the zero polynomial is the empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyFq {
    coeffs: Vec<FieldElem>,
}

impl PolyFq {
    pub fn zero() -> Self {
        PolyFq { coeffs: Vec::new() }
    }

    pub fn x() -> Self {
        Self::monomial(FieldElem::ONE, 1)
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: FieldElem, e: usize) -> Self {
        let mut coeffs = vec![FieldElem::ZERO; e + 1];
        coeffs[e] = c;
        Self::from_coeffs(coeffs)
    }

    /// Wraps a coefficient vector without folding exponents; the caller must
    /// already hold a reduced representative (length at most `q`).
    pub fn from_coeffs(mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyFq { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> FieldElem {
        self.coeffs.get(e).copied().unwrap_or(FieldElem::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<FieldElem> {
        self.coeffs.last().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(FieldElem::ONE)
    }

    pub fn add(&self, ctx: &FieldCtx, other: &PolyFq) -> PolyFq {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|e| ctx.add(self.coeff(e), other.coeff(e))).collect();
        PolyFq::from_coeffs(coeffs)
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &PolyFq) -> PolyFq {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|e| ctx.sub(self.coeff(e), other.coeff(e))).collect();
        PolyFq::from_coeffs(coeffs)
    }

    pub fn scale(&self, ctx: &FieldCtx, c: FieldElem) -> PolyFq {
        PolyFq::from_coeffs(self.coeffs.iter().map(|&a| ctx.mul(c, a)).collect())
    }

    /// Product reduced modulo `x^q - x`.
    pub fn mul(&self, ctx: &FieldCtx, other: &PolyFq) -> PolyFq {
        if self.is_zero() || other.is_zero() {
            return PolyFq::zero();
        }
        let q = ctx.q() as usize;
        let mut prod = vec![FieldElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] = ctx.mul_add(a, b, prod[i + j]);
            }
        }
        // Reduced inputs have degree < q, so one fold of x^e -> x^{e-(q-1)} suffices.
        if prod.len() > q {
            for e in q..prod.len() {
                let c = prod[e];
                prod[e - (q - 1)] = ctx.add(prod[e - (q - 1)], c);
            }
            prod.truncate(q);
        }
        PolyFq::from_coeffs(prod)
    }

    /// `f^t` modulo `x^q - x` by repeated squaring.
    pub fn pow(&self, ctx: &FieldCtx, mut t: u64) -> PolyFq {
        let mut acc = PolyFq::constant(FieldElem::ONE);
        let mut base = self.clone();
        while t > 0 {
            if t & 1 == 1 {
                acc = acc.mul(ctx, &base);
            }
            t >>= 1;
            if t > 0 {
                base = base.mul(ctx, &base);
            }
        }
        acc
    }

    pub fn eval(&self, ctx: &FieldCtx, x: FieldElem) -> FieldElem {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElem::ZERO, |acc, &c| ctx.mul_add(acc, x, c))
    }

    /// Values at every field element, in index order.
    pub fn evaluation_table(&self, ctx: &FieldCtx) -> Vec<FieldElem> {
        ctx.elements().map(|x| self.eval(ctx, x)).collect()
    }

    /// `f(g(x))` reduced, by Horner's rule in the quotient ring.
    pub fn compose(&self, ctx: &FieldCtx, g: &PolyFq) -> PolyFq {
        self.coeffs.iter().rev().fold(PolyFq::zero(), |acc, &c| {
            acc.mul(ctx, g).add(ctx, &PolyFq::constant(c))
        })
    }

    /// Same result as [`compose`](Self::compose), computed as the
    /// interpolant of the composed evaluation tables.
    pub fn compose_by_evaluation(&self, ctx: &FieldCtx, g: &PolyFq) -> PolyFq {
        let tf = self.evaluation_table(ctx);
        let values: Vec<FieldElem> = g
            .evaluation_table(ctx)
            .into_iter()
            .map(|y| tf[y.index() as usize])
            .collect();
        interpolate(ctx, &values)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PolyFq {
    /// `c*x^e` terms in descending degree, coefficients as element indices.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c}*x^{e}")?;
            first = false;
        }
        Ok(())
    }
}

/// Folds arbitrary exponents into `[0, q - 1]`: `e >= 1` becomes
/// `1 + (e - 1) mod (q - 1)`, while the constant term stays put.
pub fn fold_exponent(ctx: &FieldCtx, e: u64) -> usize {
    if e == 0 {
        0
    } else {
        (1 + (e - 1) % (ctx.q() as u64 - 1)) as usize
    }
}

/// Reduces a raw coefficient list (index = exponent) modulo `x^q - x`.
pub fn reduce(ctx: &FieldCtx, raw: &[FieldElem]) -> PolyFq {
    reduce_terms(ctx, raw.iter().enumerate().map(|(e, &c)| (e as u64, c)))
}

/// Reduces a sum of `(exponent, coefficient)` terms modulo `x^q - x`.
pub fn reduce_terms(ctx: &FieldCtx, terms: impl IntoIterator<Item = (u64, FieldElem)>) -> PolyFq {
    let mut coeffs = vec![FieldElem::ZERO; ctx.q() as usize];
    for (e, c) in terms {
        let slot = fold_exponent(ctx, e);
        coeffs[slot] = ctx.add(coeffs[slot], c);
    }
    PolyFq::from_coeffs(coeffs)
}

/// The unique reduced polynomial taking `values[i]` at element `i`:
/// `sum_c F(c) (1 - (x - c)^{q-1})`, expanded in closed form.
pub fn interpolate(ctx: &FieldCtx, values: &[FieldElem]) -> PolyFq {
    let q = ctx.q() as usize;
    assert_eq!(values.len(), q, "interpolation needs one value per field element");
    let order = (q - 1) as u64;
    let mut coeffs = vec![FieldElem::ZERO; q];
    coeffs[0] = values[0];
    // The c = 0 indicator 1 - x^{q-1}.
    coeffs[q - 1] = ctx.neg(values[0]);
    // For c != 0: 1 - (x - c)^{q-1} = -sum_{k=1}^{q-1} c^{q-1-k} x^k,
    // since binom(q-1, k) = (-1)^k in characteristic p.
    for (ci, &v) in values.iter().enumerate().skip(1) {
        if v.is_zero() {
            continue;
        }
        let log_c = ctx.log(FieldElem::new(ci as u32)).unwrap() as u64;
        let nv = ctx.neg(v);
        for (k, slot) in coeffs.iter_mut().enumerate().skip(1) {
            let term = ctx.exp(log_c * (order - k as u64));
            *slot = ctx.mul_add(nv, term, *slot);
        }
    }
    PolyFq::from_coeffs(coeffs)
}

/// Parses the textual format: `c*x^e` terms joined by `+` in any order,
/// with `c` an element index. `x`, `x^e`, `c*x` and bare `c` are accepted.
pub fn parse_poly(ctx: &FieldCtx, text: &str) -> Result<PolyFq> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    let mut terms = Vec::new();
    for raw in text.split('+') {
        let term: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in {text:?}")));
        }
        let (coef, mono) = match term.split_once('*') {
            Some((c, m)) => (Some(c), Some(m)),
            None if term.starts_with('x') => (None, Some(term.as_str())),
            None => (Some(term.as_str()), None),
        };
        let c = match coef {
            Some(c) => {
                let idx: u64 = c.parse().map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
                ctx.elem(idx)?
            }
            None => FieldElem::ONE,
        };
        let e = match mono {
            None => 0,
            Some("x") => 1,
            Some(m) => {
                let exp = m
                    .strip_prefix("x^")
                    .ok_or_else(|| Error::Parse(format!("bad monomial {m:?}")))?;
                exp.parse::<u64>().map_err(|_| Error::Parse(format!("bad exponent {exp:?}")))?
            }
        };
        terms.push((e, c));
    }
    Ok(reduce_terms(ctx, terms))
}

/// A polynomial in `V[x]`: zero constant term and degree at most `q - 2`.
/// Doubles as a coordinate vector over the basis `x, x^2, ..., x^{q-2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VPoly(PolyFq);

impl VPoly {
    pub fn new(ctx: &FieldCtx, f: PolyFq) -> Result<Self> {
        let in_v = f.coeff(0).is_zero() && f.degree().map_or(true, |d| d + 2 <= ctx.q() as usize);
        if in_v {
            Ok(VPoly(f))
        } else {
            Err(Error::NotInV)
        }
    }

    /// From coordinates over `(x, x^2, ..., x^{q-2})`.
    pub fn from_coords(ctx: &FieldCtx, coords: &[FieldElem]) -> Result<Self> {
        let dim = ctx.q() as usize - 2;
        if coords.len() != dim {
            return Err(Error::DimensionMismatch { left: coords.len(), right: dim });
        }
        let mut coeffs = Vec::with_capacity(dim + 1);
        coeffs.push(FieldElem::ZERO);
        coeffs.extend_from_slice(coords);
        Ok(VPoly(PolyFq::from_coeffs(coeffs)))
    }

    pub fn coords(&self, ctx: &FieldCtx) -> Vec<FieldElem> {
        (1..ctx.q() as usize - 1).map(|e| self.0.coeff(e)).collect()
    }

    pub fn poly(&self) -> &PolyFq {
        &self.0
    }

    pub fn into_poly(self) -> PolyFq {
        self.0
    }
}

impl Deref for VPoly {
    type Target = PolyFq;

    fn deref(&self) -> &PolyFq {
        &self.0
    }
}

impl fmt::Display for VPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Which building block [`build_gmb_hmd`] returns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    /// `(x^p - b x)^m`
    G,
    /// `(x^p - d x)^m` with `d = (-1)^m b^{mp}`
    H,
}

/// `d = (-1)^m b^{mp}`.
pub fn hmd_d(ctx: &FieldCtx, m: u32, b: FieldElem) -> FieldElem {
    let bp = ctx.pow(b, m as u64 * ctx.p() as u64);
    if m % 2 == 1 {
        ctx.neg(bp)
    } else {
        bp
    }
}

/// `(x^p - c x)^m`, reduced.
pub fn binomial_block(ctx: &FieldCtx, c: FieldElem, m: u32) -> PolyFq {
    let mut base = vec![FieldElem::ZERO; ctx.p() as usize + 1];
    base[ctx.p() as usize] = FieldElem::ONE;
    base[1] = ctx.add(base[1], ctx.neg(c));
    reduce(ctx, &base).pow(ctx, m as u64)
}

/// The `g_{mb}` / `h_{md}` building blocks.
pub fn build_gmb_hmd(ctx: &FieldCtx, m: u32, b: FieldElem, which: BlockKind) -> Result<VPoly> {
    let p = ctx.p();
    if m < 2 || m + 1 > p {
        return Err(Error::BadExponent { m, max: p - 1 });
    }
    if b.is_zero() || ctx.pow(b, ctx.line_count() as u64) != FieldElem::ONE {
        return Err(Error::NotRootOfUnity(b.index()));
    }
    let c = match which {
        BlockKind::G => b,
        BlockKind::H => hmd_d(ctx, m, b),
    };
    VPoly::new(ctx, binomial_block(ctx, c, m))
}

/// Sparse view of a polynomial as `exponent -> coefficient`.
pub fn support(f: &PolyFq) -> BTreeMap<usize, FieldElem> {
    f.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, &c)| (e, c))
        .collect()
}
