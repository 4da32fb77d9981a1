//! The shift operators `A_r : f(x) -> f(x + r) - f(r)` on `V[x]`, their
//! generalized eigenspaces `ker(A_r - I)^k`, and the intersections
//! `V_k = ∩_i ker(A_{a^i} - I)^k` over a set of generators.
//!
//! Coordinates follow [`VPoly::coords`]: index `e - 1` holds the coefficient
//! of `x^e`.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::linalg::{MatFq, SubspaceFq};
use crate::poly::{binomial_block, PolyFq, VPoly};

/// `A_r` together with its `(q-2) x (q-2)` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftOperator {
    r: FieldElem,
    matrix: MatFq,
}

impl ShiftOperator {
    /// Column `e - 1` holds the coordinates of `(x + r)^e - r^e`.
    pub fn new(ctx: &FieldCtx, r: FieldElem) -> Self {
        let dim = ctx.q() as usize - 2;
        let mut matrix = MatFq::zeros(dim, dim);
        // (x + r)^e, built up one factor at a time; degree stays below q.
        let mut power = vec![FieldElem::ONE];
        for e in 1..=dim {
            let mut next = vec![FieldElem::ZERO; e + 1];
            for (i, &c) in power.iter().enumerate() {
                next[i + 1] = ctx.add(next[i + 1], c);
                next[i] = ctx.mul_add(r, c, next[i]);
            }
            power = next;
            for j in 1..=e {
                matrix.set(j - 1, e - 1, power[j]);
            }
        }
        ShiftOperator { r, matrix }
    }

    pub fn r(&self) -> FieldElem {
        self.r
    }

    pub fn matrix(&self) -> &MatFq {
        &self.matrix
    }

    /// `A_r f` through the matrix.
    pub fn apply(&self, ctx: &FieldCtx, f: &VPoly) -> VPoly {
        let coords = self.matrix.mul_vec(ctx, &f.coords(ctx)).expect("square operator");
        VPoly::from_coords(ctx, &coords).expect("operator preserves V[x]")
    }

    /// Smallest `k >= 1` with `A_r^k = I`; `A_0` is the identity, order 1.
    pub fn order(&self, ctx: &FieldCtx) -> u32 {
        let mut acc = self.matrix.clone();
        let mut k = 1;
        while !acc.is_identity() {
            acc = acc.mul(ctx, &self.matrix).expect("square operator");
            k += 1;
        }
        k
    }
}

pub fn build_shift_operator(ctx: &FieldCtx, r: FieldElem) -> ShiftOperator {
    ShiftOperator::new(ctx, r)
}

pub fn operator_order(ctx: &FieldCtx, op: &ShiftOperator) -> u32 {
    op.order(ctx)
}

/// `f(x + r) - f(r)` computed directly on the polynomial (no matrix).
pub fn apply_shift(ctx: &FieldCtx, r: FieldElem, f: &VPoly) -> VPoly {
    let coeffs = f.coeffs();
    let mut acc: Vec<FieldElem> = Vec::new();
    // Horner: acc <- acc * (x + r) + c
    for &c in coeffs.iter().rev() {
        let mut next = vec![FieldElem::ZERO; acc.len() + 1];
        for (i, &a) in acc.iter().enumerate() {
            next[i + 1] = ctx.add(next[i + 1], a);
            next[i] = ctx.mul_add(r, a, next[i]);
        }
        next[0] = ctx.add(next[0], c);
        acc = next;
    }
    if let Some(c0) = acc.first_mut() {
        *c0 = FieldElem::ZERO;
    }
    VPoly::new(ctx, PolyFq::from_coeffs(acc)).expect("shift preserves degree and f(0) = 0")
}

/// The kernels `ker(A_r - I)^k` for `k = 1..=p`.
#[derive(Clone, Debug)]
pub struct KernelChain {
    r: FieldElem,
    kernels: Vec<SubspaceFq>,
}

impl KernelChain {
    pub fn new(ctx: &FieldCtx, r: FieldElem) -> Result<Self> {
        Self::up_to(ctx, r, ctx.p())
    }

    pub fn up_to(ctx: &FieldCtx, r: FieldElem, max_k: u32) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::ZeroShift);
        }
        let op = ShiftOperator::new(ctx, r);
        let step = op.matrix.sub_scalar_identity(ctx, FieldElem::ONE);
        let mut power = step.clone();
        let mut kernels = Vec::with_capacity(max_k as usize);
        for k in 1..=max_k {
            if k > 1 {
                power = power.mul(ctx, &step)?;
            }
            kernels.push(power.kernel(ctx));
        }
        Ok(KernelChain { r, kernels })
    }

    pub fn r(&self) -> FieldElem {
        self.r
    }

    /// `ker(A_r - I)^k`, `k >= 1`.
    pub fn kernel(&self, k: u32) -> &SubspaceFq {
        &self.kernels[k as usize - 1]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.kernels.iter().map(SubspaceFq::dim).collect()
    }

    /// Smallest `k` with `f` in `ker(A_r - I)^k`.
    pub fn first_appearance(&self, ctx: &FieldCtx, f: &VPoly) -> Option<u32> {
        let coords = f.coords(ctx);
        self.kernels
            .iter()
            .position(|k| k.contains_vector(ctx, &coords).unwrap_or(false))
            .map(|i| i as u32 + 1)
    }
}

/// `ker(A_r - I)^k` for `1 <= k <= p`, `r != 0`.
pub fn kernel_power(ctx: &FieldCtx, r: FieldElem, k: u32) -> Result<SubspaceFq> {
    if k == 0 || k > ctx.p() {
        return Err(Error::OutOfRange(format!("k = {k} must lie in [1, {}]", ctx.p())));
    }
    Ok(KernelChain::up_to(ctx, r, k)?.kernels.pop().unwrap())
}

/// Closed-form spanning sets for particular kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisStatement {
    /// `ker(A_1 - I)`: `x^{p^k}` and `(x^p - x)^m`, `2 <= m <= p^{n-1} - 1`,
    /// `m` not a power of `p`.
    Eigenvectors,
    /// `ker(A_1 - I)^m`: `x^j (x^p - x)^i` for `j < m`, `1 <= i < p^{n-1}`,
    /// together with `x, ..., x^m`.
    Generalized { m: u32 },
    /// `ker(A_r - I)`: as [`Eigenvectors`](Self::Eigenvectors) with
    /// `x^p - b x`, `b = r^{p-1}`.
    LineEigenvectors { r: FieldElem },
    /// Prime field only: `ker(A_1 - I)^m` is spanned by `x, ..., x^m`.
    PrimeField { m: u32 },
}

impl BasisStatement {
    /// The `(r, k)` whose kernel the statement describes.
    pub fn target(&self) -> (FieldElem, u32) {
        match *self {
            BasisStatement::Eigenvectors => (FieldElem::ONE, 1),
            BasisStatement::Generalized { m } | BasisStatement::PrimeField { m } => (FieldElem::ONE, m),
            BasisStatement::LineEigenvectors { r } => (r, 1),
        }
    }
}

/// The polynomial list a statement predicts. Generators whose degree
/// exceeds `q - 2` (possible only at `m = p`) are dropped since they do not
/// lie in `V[x]`.
pub fn predicted_basis(ctx: &FieldCtx, stmt: BasisStatement) -> Result<Vec<VPoly>> {
    let p = ctx.p();
    let n = ctx.n();
    let top = p.pow(n - 1);
    let mono = |e: usize| PolyFq::monomial(FieldElem::ONE, e);
    let mut polys: Vec<PolyFq> = Vec::new();
    let eigen = |polys: &mut Vec<PolyFq>, b: FieldElem| {
        for k in 0..n {
            polys.push(mono(p.pow(k) as usize));
        }
        for m in 2..top {
            if !is_power_of(m, p) {
                polys.push(binomial_block(ctx, b, m));
            }
        }
    };
    match stmt {
        BasisStatement::Eigenvectors => eigen(&mut polys, FieldElem::ONE),
        BasisStatement::LineEigenvectors { r } => {
            if r.is_zero() {
                return Err(Error::ZeroShift);
            }
            eigen(&mut polys, ctx.pow(r, p as u64 - 1));
        }
        BasisStatement::Generalized { m } => {
            if m == 0 || m > p {
                return Err(Error::OutOfRange(format!("m = {m} must lie in [1, {p}]")));
            }
            for i in 1..top {
                let block = binomial_block(ctx, FieldElem::ONE, i);
                for j in 0..m {
                    polys.push(mono(j as usize).mul(ctx, &block));
                }
            }
            for k in 1..=m {
                polys.push(mono(k as usize));
            }
        }
        BasisStatement::PrimeField { m } => {
            if n != 1 {
                return Err(Error::WrongDegree { expected: 1, got: n });
            }
            if m == 0 || m > p {
                return Err(Error::OutOfRange(format!("m = {m} must lie in [1, {p}]")));
            }
            for k in 1..=m {
                polys.push(mono(k as usize));
            }
        }
    }
    Ok(polys.into_iter().filter_map(|f| VPoly::new(ctx, f).ok()).collect())
}

fn is_power_of(m: u32, p: u32) -> bool {
    let mut x = 1;
    while x < m {
        x *= p;
    }
    x == m
}

/// Canonical subspace spanned by polynomials of `V[x]`.
pub fn span_of(ctx: &FieldCtx, polys: &[VPoly]) -> SubspaceFq {
    let dim = ctx.q() as usize - 2;
    SubspaceFq::span(ctx, dim, polys.iter().map(|f| f.coords(ctx)).collect())
        .expect("coordinates have length q - 2")
}

/// `1, a, ..., a^{n-1}` for the primitive element `a`.
pub fn default_generators(ctx: &FieldCtx) -> Vec<FieldElem> {
    (0..ctx.n() as u64).map(|i| ctx.exp(i)).collect()
}

/// `∩_{r in generators} ker(A_r - I)^k`, folded pairwise left to right.
pub fn intersection_space(ctx: &FieldCtx, k: u32, generators: &[FieldElem]) -> Result<SubspaceFq> {
    let mut acc: Option<SubspaceFq> = None;
    for &r in generators {
        let ker = kernel_power(ctx, r, k)?;
        acc = Some(match acc {
            None => ker,
            Some(a) => a.intersect(ctx, &ker)?,
        });
    }
    acc.ok_or_else(|| Error::OutOfRange("at least one generator is required".into()))
}
