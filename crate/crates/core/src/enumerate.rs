//! Budgeted exhaustive searches for permutation polynomial representatives
//! inside subspaces of `V[x]` or affine parametric shapes.
//!
//! The candidate index range is split into fixed chunks that workers process
//! independently; chunk results are merged in index order, so reports do not
//! depend on the number of workers.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::linalg::SubspaceFq;
use crate::poly::{PolyFq, VPoly};
use crate::shift::KernelChain;

pub const DEFAULT_BUDGET: u64 = 10_000_000;
pub const DEFAULT_LIST_THRESHOLD: usize = 10_000;
/// Largest prime accepted by [`degree_distribution`] by default.
pub const DEFAULT_DEGREE_CAP: u32 = 11;

#[derive(Clone, Debug)]
pub struct EnumOptions {
    /// Maximum number of candidates to examine.
    pub budget: u64,
    pub workers: usize,
    /// PPR lists are kept only when the count does not exceed this.
    pub list_threshold: usize,
    /// Search the first `budget` candidates instead of refusing an oversized
    /// domain; the report is then flagged `budget_exhausted`.
    pub streaming: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            budget: DEFAULT_BUDGET,
            workers: 1,
            list_threshold: DEFAULT_LIST_THRESHOLD,
            streaming: false,
        }
    }
}

impl EnumOptions {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn unlimited_list(mut self) -> Self {
        self.list_threshold = usize::MAX;
        self
    }
}

/// `offset + span(directions)` inside `V[x]`; candidates are
/// `offset + sum_i c_i directions[i]` for all `c in F_q^k`.
#[derive(Clone, Debug)]
pub struct AffineShape {
    pub offset: VPoly,
    pub directions: Vec<VPoly>,
}

impl AffineShape {
    pub fn new(offset: VPoly, directions: Vec<VPoly>) -> Self {
        AffineShape { offset, directions }
    }

    /// The subspace itself, parameterised by its RREF basis.
    pub fn from_subspace(ctx: &FieldCtx, space: &SubspaceFq) -> Result<Self> {
        let directions = space
            .basis_vectors()
            .iter()
            .map(|v| VPoly::from_coords(ctx, v))
            .collect::<Result<Vec<_>>>()?;
        Ok(AffineShape {
            offset: VPoly::new(ctx, PolyFq::zero())?,
            directions,
        })
    }
}

pub enum Domain<'a> {
    Subspace(&'a SubspaceFq),
    Shape(&'a AffineShape),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumReport {
    pub searched: u64,
    pub ppr_count: u64,
    /// Coordinate vectors over `(x, ..., x^{q-2})`, lexicographically sorted.
    pub ppr_list: Option<Vec<Vec<u32>>>,
    pub budget_exhausted: bool,
}

impl EnumReport {
    pub fn pprs(&self, ctx: &FieldCtx) -> Option<Vec<VPoly>> {
        self.ppr_list.as_ref().map(|list| {
            list.iter()
                .map(|c| {
                    let coords: Vec<FieldElem> = c.iter().map(|&i| FieldElem::new(i)).collect();
                    VPoly::from_coords(ctx, &coords).expect("stored coordinates have length q - 2")
                })
                .collect()
        })
    }
}

struct Prepared {
    q: usize,
    dim: usize,
    offset_coords: Vec<FieldElem>,
    offset_table: Vec<FieldElem>,
    dir_coords: Vec<Vec<FieldElem>>,
    dir_tables: Vec<Vec<FieldElem>>,
}

struct ChunkResult {
    searched: u64,
    count: u64,
    list: Option<Vec<Vec<u32>>>,
}

pub fn enumerate_pprs(ctx: &FieldCtx, domain: Domain<'_>, opts: &EnumOptions) -> Result<EnumReport> {
    let owned;
    let shape = match domain {
        Domain::Subspace(space) => {
            owned = AffineShape::from_subspace(ctx, space)?;
            &owned
        }
        Domain::Shape(s) => s,
    };
    let dim = shape.directions.len();
    let total = (ctx.q() as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    let (limit, exhausted) = if total > opts.budget as u128 {
        if !opts.streaming {
            return Err(Error::BudgetExceeded { needed: total, budget: opts.budget });
        }
        (opts.budget, true)
    } else {
        (total as u64, false)
    };

    let prep = Prepared {
        q: ctx.q() as usize,
        dim,
        offset_coords: shape.offset.coords(ctx),
        offset_table: shape.offset.evaluation_table(ctx),
        dir_coords: shape.directions.iter().map(|d| d.coords(ctx)).collect(),
        dir_tables: shape.directions.iter().map(|d| d.evaluation_table(ctx)).collect(),
    };

    let workers = opts.workers.max(1);
    let chunk = (limit / 64).clamp(1, 1 << 16);
    let ranges: Vec<(u64, u64)> = (0..limit)
        .step_by(chunk as usize)
        .map(|s| (s, (s + chunk).min(limit)))
        .collect();
    let threshold = opts.list_threshold;
    let run = || -> Vec<ChunkResult> {
        ranges
            .par_iter()
            .map(|&(s, e)| search_range(ctx, &prep, s, e, threshold))
            .collect()
    };
    let results = if workers == 1 {
        ranges
            .iter()
            .map(|&(s, e)| search_range(ctx, &prep, s, e, threshold))
            .collect()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::OutOfRange(format!("thread pool: {e}")))?
            .install(run)
    };

    let mut report = EnumReport {
        searched: 0,
        ppr_count: 0,
        ppr_list: Some(Vec::new()),
        budget_exhausted: exhausted,
    };
    for r in results {
        report.searched += r.searched;
        report.ppr_count += r.count;
        report.ppr_list = match (report.ppr_list, r.list) {
            (Some(mut a), Some(b)) => {
                a.extend(b);
                Some(a)
            }
            _ => None,
        };
    }
    if report.ppr_count as u128 > threshold as u128 {
        report.ppr_list = None;
    }
    if let Some(list) = report.ppr_list.as_mut() {
        list.sort_unstable();
    }
    Ok(report)
}

fn search_range(ctx: &FieldCtx, prep: &Prepared, start: u64, end: u64, threshold: usize) -> ChunkResult {
    let q = prep.q;
    let order = q - 1;
    let mut digits = vec![0usize; prep.dim];
    let mut rest = start;
    for d in digits.iter_mut() {
        *d = (rest % q as u64) as usize;
        rest /= q as u64;
    }
    let mut coords = prep.offset_coords.clone();
    let mut table = prep.offset_table.clone();
    for (i, &c) in digits.iter().enumerate() {
        if c != 0 {
            let c = FieldElem::new(c as u32);
            axpy(ctx, c, &prep.dir_coords[i], &mut coords);
            axpy(ctx, c, &prep.dir_tables[i], &mut table);
        }
    }

    let mut seen = vec![0u64; q];
    let mut stamp = 0u64;
    let mut count = 0u64;
    let mut list = Some(Vec::new());
    for idx in start..end {
        if idx > start {
            // Mixed-radix increment; apply each digit change as (new - old) * direction.
            for i in 0..prep.dim {
                let old = digits[i];
                let new = if old + 1 == q { 0 } else { old + 1 };
                digits[i] = new;
                let delta = ctx.sub(FieldElem::new(new as u32), FieldElem::new(old as u32));
                axpy(ctx, delta, &prep.dir_coords[i], &mut coords);
                axpy(ctx, delta, &prep.dir_tables[i], &mut table);
                if new != 0 {
                    break;
                }
            }
        }
        // Monic, and no PP of degree d > 1 with d | q - 1.
        let Some(top) = coords.iter().rposition(|c| !c.is_zero()) else {
            continue;
        };
        if coords[top] != FieldElem::ONE {
            continue;
        }
        let degree = top + 1;
        if degree > 1 && order % degree == 0 {
            continue;
        }
        stamp += 1;
        let bijective = table.iter().all(|y| {
            let slot = &mut seen[y.index() as usize];
            let fresh = *slot != stamp;
            *slot = stamp;
            fresh
        });
        if bijective {
            count += 1;
            if let Some(l) = list.as_mut() {
                if l.len() < threshold {
                    l.push(coords.iter().map(|c| c.index()).collect());
                } else {
                    list = None;
                }
            }
        }
    }
    ChunkResult { searched: end - start, count, list }
}

fn axpy(ctx: &FieldCtx, a: FieldElem, x: &[FieldElem], y: &mut [FieldElem]) {
    if a.is_zero() {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = ctx.mul_add(a, xi, *yi);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCensus {
    pub p: u32,
    /// PPR count for every degree `1..=p-2`, zeros included.
    pub by_degree: BTreeMap<u32, u64>,
    pub total: u64,
    /// PPRs whose first kernel stage differs from their degree.
    pub stage_mismatches: Vec<String>,
}

/// PPR census of a prime field by degree, with the first-appearance stage in
/// the kernel chain of `A_1` checked against the degree of every PPR.
pub fn degree_distribution(ctx: &FieldCtx, cap: u32, opts: &EnumOptions) -> Result<DegreeCensus> {
    if ctx.n() != 1 {
        return Err(Error::WrongDegree { expected: 1, got: ctx.n() });
    }
    let p = ctx.p();
    if p > cap {
        return Err(Error::CapExceeded { q: p as u64, cap: cap as u64 });
    }
    let chain = (p >= 3).then(|| KernelChain::new(ctx, FieldElem::ONE)).transpose()?;
    let mut census = DegreeCensus {
        p,
        by_degree: BTreeMap::new(),
        total: 0,
        stage_mismatches: Vec::new(),
    };
    let opts = opts.clone().unlimited_list();
    for d in 1..=(p as usize).saturating_sub(2) {
        let offset = VPoly::new(ctx, PolyFq::monomial(FieldElem::ONE, d))?;
        let directions = (1..d)
            .map(|e| VPoly::new(ctx, PolyFq::monomial(FieldElem::ONE, e)))
            .collect::<Result<Vec<_>>>()?;
        let shape = AffineShape::new(offset, directions);
        let report = enumerate_pprs(ctx, Domain::Shape(&shape), &opts)?;
        census.by_degree.insert(d as u32, report.ppr_count);
        census.total += report.ppr_count;
        let chain = chain.as_ref().expect("p >= 3 whenever V[x] is nonzero");
        for f in report.pprs(ctx).unwrap_or_default() {
            let stage = chain.first_appearance(ctx, &f);
            if stage != Some(d as u32) {
                census.stage_mismatches.push(format!("{f}: stage {stage:?}"));
            }
        }
    }
    Ok(census)
}

/// Number of permutation polynomials among all reduced polynomials of degree
/// at most `q - 2` (every permutation polynomial has such a representative).
pub fn count_permutation_polynomials(ctx: &FieldCtx, budget: u64) -> Result<u64> {
    let q = ctx.q() as usize;
    let total = (q as u128).checked_pow(q as u32 - 1).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    let monomials: Vec<Vec<FieldElem>> = (0..q - 1)
        .map(|e| PolyFq::monomial(FieldElem::ONE, e).evaluation_table(ctx))
        .collect();
    let mut digits = vec![0usize; q - 1];
    let mut table = vec![FieldElem::ZERO; q];
    let mut count = 0;
    for idx in 0..total as u64 {
        if idx > 0 {
            for i in 0..q - 1 {
                let old = digits[i];
                let new = (old + 1) % q;
                digits[i] = new;
                let delta = ctx.sub(FieldElem::new(new as u32), FieldElem::new(old as u32));
                axpy(ctx, delta, &monomials[i], &mut table);
                if new != 0 {
                    break;
                }
            }
        }
        if crate::oracle::table_is_permutation(&table) {
            count += 1;
        }
    }
    Ok(count)
}
