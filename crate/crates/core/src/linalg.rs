//! Dense matrices over `F_q` and subspaces kept in canonical reduced
//! row-echelon form.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};

/// Dense row-major matrix of field elements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatFq {
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl fmt::Debug for MatFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatFq {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<u32> = self.row(r).iter().map(|x| x.index()).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl MatFq {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatFq { rows, cols, data: vec![FieldElem::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElem::ONE);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<FieldElem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { left: r.len(), right: cols });
            }
            data.extend_from_slice(r);
        }
        Ok(MatFq { rows: rows.len(), cols, data })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<FieldElem>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<FieldElem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| self.get(r, c) == if r == c { FieldElem::ONE } else { FieldElem::ZERO })
            })
    }

    pub fn transpose(&self) -> MatFq {
        let mut t = MatFq::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &MatFq) -> Result<MatFq> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { left: self.cols, right: other.rows });
        }
        let mut out = MatFq::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for (slot, &b) in out_row.iter_mut().zip(other.row(k)) {
                    *slot = ctx.mul_add(a, b, *slot);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, ctx: &FieldCtx, v: &[FieldElem]) -> Result<Vec<FieldElem>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { left: self.cols, right: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(FieldElem::ZERO, |acc, (&a, &b)| ctx.mul_add(a, b, acc))
            })
            .collect())
    }

    /// `self - lambda * I` for a square matrix.
    pub fn sub_scalar_identity(&self, ctx: &FieldCtx, lambda: FieldElem) -> MatFq {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m.set(i, i, ctx.sub(m.get(i, i), lambda));
        }
        m
    }

    /// Matrix power by iterated multiplication.
    pub fn pow(&self, ctx: &FieldCtx, k: u32) -> Result<MatFq> {
        let mut acc = MatFq::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(ctx, self)?;
        }
        Ok(acc)
    }

    /// Reduced row-echelon form, returning the pivot columns. The pivot in
    /// each column is the first nonzero entry found scanning downward.
    pub fn rref(&self, ctx: &FieldCtx) -> (MatFq, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pr, lead);
            let inv = ctx.inv(m.get(lead, col)).expect("pivot is nonzero");
            m.scale_row(ctx, lead, inv);
            for r in 0..m.rows {
                if r != lead {
                    let factor = m.get(r, col);
                    if !factor.is_zero() {
                        m.add_row_multiple(ctx, r, lead, ctx.neg(factor));
                    }
                }
            }
            pivots.push(col);
            lead += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        self.rref(ctx).1.len()
    }

    pub fn is_invertible(&self, ctx: &FieldCtx) -> bool {
        self.rows == self.cols && self.rank(ctx) == self.rows
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self, ctx: &FieldCtx) -> Option<MatFq> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = MatFq::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, FieldElem::ONE);
        }
        let (red, pivots) = aug.rref(ctx);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = MatFq::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c));
            }
        }
        Some(inv)
    }

    /// Basis of `{v : M v = 0}` as a canonical subspace of `F_q^cols`.
    pub fn kernel(&self, ctx: &FieldCtx) -> SubspaceFq {
        let (red, pivots) = self.rref(ctx);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![FieldElem::ZERO; self.cols];
            v[free] = FieldElem::ONE;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = ctx.neg(red.get(i, free));
            }
            basis.push(v);
        }
        SubspaceFq::span(ctx, self.cols, basis).expect("kernel vectors have the ambient length")
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn scale_row(&mut self, ctx: &FieldCtx, r: usize, s: FieldElem) {
        for v in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *v = ctx.mul(*v, s);
        }
    }

    // row[dst] += s * row[src]
    fn add_row_multiple(&mut self, ctx: &FieldCtx, dst: usize, src: usize, s: FieldElem) {
        for c in 0..self.cols {
            let v = self.data[src * self.cols + c];
            if !v.is_zero() {
                let d = &mut self.data[dst * self.cols + c];
                *d = ctx.mul_add(s, v, *d);
            }
        }
    }
}

/// A subspace of `F_q^ambient` stored as the nonzero rows of its canonical
/// RREF basis, so that subspace equality is plain matrix equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceFq {
    ambient: usize,
    basis: MatFq,
    pivots: Vec<usize>,
}

impl SubspaceFq {
    pub fn zero(ambient: usize) -> Self {
        SubspaceFq { ambient, basis: MatFq::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        SubspaceFq { ambient, basis: MatFq::identity(ambient), pivots: (0..ambient).collect() }
    }

    /// Span of arbitrary vectors of length `ambient`.
    pub fn span(ctx: &FieldCtx, ambient: usize, vectors: Vec<Vec<FieldElem>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch { left: v.len(), right: ambient });
        }
        if vectors.is_empty() {
            return Ok(Self::zero(ambient));
        }
        let m = MatFq::from_rows(&vectors)?;
        let (red, pivots) = m.rref(ctx);
        let mut basis = MatFq::zeros(pivots.len(), ambient);
        for r in 0..pivots.len() {
            for c in 0..ambient {
                basis.set(r, c, red.get(r, c));
            }
        }
        Ok(SubspaceFq { ambient, basis, pivots })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &MatFq {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<FieldElem>> {
        self.basis.row_vectors()
    }

    /// Residue of `v` after eliminating against the basis; zero iff `v` is in
    /// the subspace.
    fn residue(&self, ctx: &FieldCtx, v: &[FieldElem]) -> Vec<FieldElem> {
        let mut w = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = w[pc];
            if c.is_zero() {
                continue;
            }
            let nc = ctx.neg(c);
            for (slot, &b) in w.iter_mut().zip(self.basis.row(i)) {
                *slot = ctx.mul_add(nc, b, *slot);
            }
        }
        w
    }

    pub fn contains_vector(&self, ctx: &FieldCtx, v: &[FieldElem]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { left: v.len(), right: self.ambient });
        }
        Ok(self.residue(ctx, v).iter().all(|c| c.is_zero()))
    }

    /// `self` is a subspace of `other`.
    pub fn is_subspace_of(&self, ctx: &FieldCtx, other: &SubspaceFq) -> Result<bool> {
        self.check_ambient(other)?;
        for r in 0..self.dim() {
            if !other.contains_vector(ctx, self.basis.row(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &SubspaceFq) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self == other)
    }

    pub fn sum(&self, ctx: &FieldCtx, other: &SubspaceFq) -> Result<SubspaceFq> {
        self.check_ambient(other)?;
        let mut vectors = self.basis_vectors();
        vectors.extend(other.basis_vectors());
        SubspaceFq::span(ctx, self.ambient, vectors)
    }

    /// Intersection by solving `sum a_i u_i = sum b_j w_j` for the
    /// coefficient vectors `(a, b)` and mapping the solutions back.
    pub fn intersect(&self, ctx: &FieldCtx, other: &SubspaceFq) -> Result<SubspaceFq> {
        self.check_ambient(other)?;
        let (da, db) = (self.dim(), other.dim());
        if da == 0 || db == 0 {
            return Ok(SubspaceFq::zero(self.ambient));
        }
        let mut columns = Vec::with_capacity(da + db);
        for r in 0..da {
            columns.push(self.basis.row(r).to_vec());
        }
        for r in 0..db {
            columns.push(other.basis.row(r).iter().map(|&x| ctx.neg(x)).collect());
        }
        let system = MatFq::from_columns(&columns, self.ambient);
        let solutions = system.kernel(ctx);
        let vectors = solutions
            .basis_vectors()
            .into_iter()
            .map(|sol| {
                let mut v = vec![FieldElem::ZERO; self.ambient];
                for (r, &a) in sol[..da].iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (slot, &u) in v.iter_mut().zip(self.basis.row(r)) {
                        *slot = ctx.mul_add(a, u, *slot);
                    }
                }
                v
            })
            .collect();
        SubspaceFq::span(ctx, self.ambient, vectors)
    }

    fn check_ambient(&self, other: &SubspaceFq) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }
}
