//! Linearized polynomials `L(x) = sum_j d_j x^{p^j}` and their matrices as
//! `F_p`-linear maps of `F_{p^n}`.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::linalg::MatFq;
use crate::poly::{reduce_terms, PolyFq};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearizedPoly {
    coeffs: Vec<FieldElem>,
}

impl LinearizedPoly {
    /// `coeffs[j]` multiplies `x^{p^j}`; exactly `n` entries.
    pub fn new(ctx: &FieldCtx, coeffs: Vec<FieldElem>) -> Result<Self> {
        if coeffs.len() != ctx.n() as usize {
            return Err(Error::DimensionMismatch { left: coeffs.len(), right: ctx.n() as usize });
        }
        Ok(LinearizedPoly { coeffs })
    }

    pub fn identity(ctx: &FieldCtx) -> Self {
        let mut coeffs = vec![FieldElem::ZERO; ctx.n() as usize];
        coeffs[0] = FieldElem::ONE;
        LinearizedPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// All `q^n` linearized polynomials, ordered by coefficient indices with
    /// `d_0` varying fastest.
    pub fn all(ctx: &FieldCtx) -> impl Iterator<Item = LinearizedPoly> + '_ {
        let n = ctx.n() as usize;
        let q = ctx.q() as u64;
        (0..q.pow(n as u32)).map(move |mut idx| {
            let coeffs = (0..n)
                .map(|_| {
                    let c = FieldElem::new((idx % q) as u32);
                    idx /= q;
                    c
                })
                .collect();
            LinearizedPoly { coeffs }
        })
    }

    pub fn to_poly(&self, ctx: &FieldCtx) -> PolyFq {
        let p = ctx.p() as u64;
        reduce_terms(ctx, self.coeffs.iter().enumerate().map(|(j, &d)| (p.pow(j as u32), d)))
    }

    /// Recovers the linearized form of a polynomial supported on `x^{p^j}`.
    pub fn from_poly(ctx: &FieldCtx, f: &PolyFq) -> Option<Self> {
        let p = ctx.p() as usize;
        let mut coeffs = vec![FieldElem::ZERO; ctx.n() as usize];
        for (e, &c) in f.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let j = (0..ctx.n() as usize).find(|&j| p.pow(j as u32) == e)?;
            coeffs[j] = c;
        }
        Some(LinearizedPoly { coeffs })
    }

    pub fn eval(&self, ctx: &FieldCtx, x: FieldElem) -> FieldElem {
        let mut pw = x;
        let mut acc = FieldElem::ZERO;
        for &d in &self.coeffs {
            acc = ctx.mul_add(d, pw, acc);
            pw = ctx.frobenius(pw);
        }
        acc
    }

    /// Matrix of `L` on `F_{p^n}` in the power basis `1, t, ..., t^{n-1}`:
    /// column `j` holds the coordinates of `L(t^j)`. Entries lie in `F_p`.
    pub fn to_matrix(&self, ctx: &FieldCtx) -> MatFq {
        let n = ctx.n() as usize;
        let columns: Vec<Vec<FieldElem>> = (0..n)
            .map(|j| {
                let basis = FieldElem::new(ctx.p().pow(j as u32));
                ctx.digits(self.eval(ctx, basis)).into_iter().map(FieldElem::new).collect()
            })
            .collect();
        MatFq::from_columns(&columns, n)
    }

    /// Inverse of [`to_matrix`](Self::to_matrix): solves the Moore system
    /// `sum_j d_j (t^i)^{p^j} = M(t^i)` for the coefficients `d_j`.
    pub fn from_matrix(ctx: &FieldCtx, m: &MatFq) -> Result<Self> {
        let n = ctx.n() as usize;
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch { left: m.rows(), right: n });
        }
        if (0..n).any(|r| (0..n).any(|c| !ctx.in_prime_subfield(m.get(r, c)))) {
            return Err(Error::NotPrimeSubfield);
        }
        let targets: Vec<FieldElem> = (0..n)
            .map(|j| {
                let digits: Vec<u32> = m.column(j).iter().map(|x| x.index()).collect();
                ctx.from_digits(&digits)
            })
            .collect();
        let mut moore = MatFq::zeros(n, n);
        for i in 0..n {
            let mut pw = FieldElem::new(ctx.p().pow(i as u32));
            for j in 0..n {
                moore.set(i, j, pw);
                pw = ctx.frobenius(pw);
            }
        }
        let inv = moore
            .inverse(ctx)
            .expect("Moore matrix of an F_p-basis is invertible");
        Ok(LinearizedPoly { coeffs: inv.mul_vec(ctx, &targets)? })
    }

    /// A linearized polynomial permutes the field iff its matrix is invertible.
    pub fn is_permutation(&self, ctx: &FieldCtx) -> bool {
        self.to_matrix(ctx).is_invertible(ctx)
    }

    /// Highest nonzero coefficient equals one.
    pub fn is_monic(&self) -> bool {
        self.coeffs.iter().rev().find(|c| !c.is_zero()) == Some(&FieldElem::ONE)
    }
}
