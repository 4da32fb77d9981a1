//! Finite fields `F_q`, `q = p^n`, with elements stored as base-`p` indices.
//!
//! An element `c_0 + c_1 t + ... + c_{n-1} t^{n-1}` (reduced modulo the monic
//! irreducible `modulus(t)`) is encoded by the integer `sum c_i p^i`. Index 0
//! is zero, index 1 is one, and indices below `p` are exactly the prime
//! subfield. Multiplication goes through discrete exp/log tables relative to a
//! fixed primitive element.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on `q`.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 16;

// Fields up to this size get a full addition table (q^2 u16 entries).
const ADD_TABLE_LIMIT: u32 = 1024;

/// A field element, identified by its base-`p` coefficient index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// Wraps a raw index without range checking; use [`FieldCtx::elem`] for
    /// untrusted input.
    #[inline]
    pub const fn new(index: u32) -> Self {
        FieldElem(index)
    }

    #[inline]
    pub const fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Construction options for [`FieldCtx`].
#[derive(Clone, Debug)]
pub struct FieldOptions {
    /// Coefficients of a monic irreducible modulus, low degree first
    /// (length `n + 1`). `None` selects the canonical modulus.
    pub modulus: Option<Vec<u32>>,
    /// Largest admissible `q`.
    pub cap: u64,
}

impl Default for FieldOptions {
    fn default() -> Self {
        FieldOptions {
            modulus: None,
            cap: DEFAULT_FIELD_CAP,
        }
    }
}

/// Immutable description of `F_{p^n}` together with its arithmetic tables.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: FieldElem,
    // exp has 2(q-1) entries so that exp[log a + log b] needs no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u16>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .field("primitive", &self.primitive)
            .finish()
    }
}

/// Builds `F_{p^n}` with the canonical modulus and primitive element.
pub fn build_field(p: u32, n: u32, modulus_override: Option<&[u32]>) -> Result<FieldCtx> {
    FieldCtx::with_options(
        p,
        n,
        &FieldOptions {
            modulus: modulus_override.map(<[u32]>::to_vec),
            ..FieldOptions::default()
        },
    )
}

impl FieldCtx {
    pub fn new(p: u32, n: u32) -> Result<Self> {
        build_field(p, n, None)
    }

    pub fn with_options(p: u32, n: u32, opts: &FieldOptions) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrime(p as u64));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u64).checked_pow(n).unwrap_or(u64::MAX);
        if q > opts.cap || q > u32::MAX as u64 {
            return Err(Error::CapExceeded { q, cap: opts.cap });
        }
        let q = q as u32;

        let modulus = match &opts.modulus {
            Some(m) => {
                let ok = m.len() == n as usize + 1
                    && m[n as usize] == 1
                    && m.iter().all(|&c| c < p)
                    && is_irreducible(m, p);
                if !ok {
                    return Err(Error::NotIrreducible(m.clone()));
                }
                m.clone()
            }
            None => canonical_modulus(p, n),
        };

        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let primitive = (1..q)
            .find(|&g| {
                let digits = to_digits(g, p, n);
                factors.iter().all(|&l| {
                    let r = digits_pow(&digits, order / l, &modulus, p);
                    from_digits(&r, p) != 1
                })
            })
            .expect("the multiplicative group of a finite field is cyclic");

        let g_digits = to_digits(primitive, p, n);
        let size = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * size.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut cur = to_digits(1, p, n);
        for i in 0..size {
            let idx = from_digits(&cur, p);
            exp[i] = idx;
            log[idx as usize] = i as u32;
            cur = digits_mul(&cur, &g_digits, &modulus, p);
        }
        for i in 0..size {
            exp[size + i] = exp[i];
        }

        let neg = (0..q)
            .map(|x| {
                let d: Vec<u32> = to_digits(x, p, n).iter().map(|&c| (p - c) % p).collect();
                from_digits(&d, p)
            })
            .collect();

        let mut ctx = FieldCtx {
            p,
            n,
            q,
            modulus,
            primitive: FieldElem(primitive),
            exp,
            log,
            neg,
            add_table: None,
        };
        if q <= ADD_TABLE_LIMIT {
            let mut table = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = ctx.add_digits(a, b) as u16;
                }
            }
            ctx.add_table = Some(table);
        }
        Ok(ctx)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Monic modulus coefficients, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive(&self) -> FieldElem {
        self.primitive
    }

    /// Number of lines `(q - 1) / (p - 1)`.
    pub fn line_count(&self) -> u32 {
        (self.q - 1) / (self.p - 1)
    }

    /// Checked conversion from a raw index.
    pub fn elem(&self, index: u64) -> Result<FieldElem> {
        if index < self.q as u64 {
            Ok(FieldElem(index as u32))
        } else {
            Err(Error::BadElement { index, q: self.q })
        }
    }

    /// The image of an integer in the prime subfield.
    #[inline]
    pub fn int(&self, i: i64) -> FieldElem {
        FieldElem(i.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn in_prime_subfield(&self, x: FieldElem) -> bool {
        x.0 < self.p
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (0..self.q).map(FieldElem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (1..self.q).map(FieldElem)
    }

    /// Coordinates over `F_p` in the power basis `1, t, ..., t^{n-1}`.
    pub fn digits(&self, x: FieldElem) -> Vec<u32> {
        to_digits(x.0, self.p, self.n)
    }

    pub fn from_digits(&self, digits: &[u32]) -> FieldElem {
        FieldElem(from_digits(digits, self.p))
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let p = self.p;
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match &self.add_table {
            Some(t) => FieldElem(t[(a.0 * self.q + b.0) as usize] as u32),
            None => FieldElem(self.add_digits(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        FieldElem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    /// `a * b + c`, the inner step of Horner evaluation and elimination.
    #[inline]
    pub fn mul_add(&self, a: FieldElem, b: FieldElem, c: FieldElem) -> FieldElem {
        self.add(self.mul(a, b), c)
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let size = self.q - 1;
        Ok(FieldElem(self.exp[((size - self.log[a.0 as usize]) % size) as usize]))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `x^e` by square-and-multiply; for nonzero `x` the exponent is first
    /// reduced modulo `q - 1`. `0^0 = 1`.
    pub fn pow(&self, x: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        if x.0 == 0 {
            return FieldElem::ZERO;
        }
        let mut e = e % (self.q as u64 - 1);
        let mut base = x;
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x^e` for a signed exponent (negative powers need `x != 0`).
    pub fn pow_signed(&self, x: FieldElem, e: i64) -> Result<FieldElem> {
        if e >= 0 {
            Ok(self.pow(x, e as u64))
        } else {
            Ok(self.pow(self.inv(x)?, e.unsigned_abs()))
        }
    }

    #[inline]
    pub fn frobenius(&self, x: FieldElem) -> FieldElem {
        self.pow(x, self.p as u64)
    }

    /// Discrete logarithm relative to the primitive element.
    pub fn log(&self, x: FieldElem) -> Option<u32> {
        (x.0 != 0).then(|| self.log[x.0 as usize])
    }

    /// `primitive^i`.
    pub fn exp(&self, i: u64) -> FieldElem {
        FieldElem(self.exp[(i % (self.q as u64 - 1)) as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, x: FieldElem) -> Option<u64> {
        let l = self.log(x)? as u64;
        let order = self.q as u64 - 1;
        Some(order / gcd(l, order))
    }

    /// All `x` with `x^d = 1`, sorted by index.
    pub fn roots_of_unity(&self, d: u64) -> Result<Vec<FieldElem>> {
        let order = self.q as u64 - 1;
        if d == 0 || order % d != 0 {
            return Err(Error::NotADivisor { d, order });
        }
        let step = order / d;
        let mut roots: Vec<FieldElem> = (0..d).map(|k| self.exp(k * step)).collect();
        roots.sort_unstable();
        Ok(roots)
    }

    /// Partition of `F_q^*` into lines `{i r : i in F_p^*}`, ordered by
    /// representative.
    pub fn lines(&self) -> Vec<Line> {
        let mut seen = vec![false; self.q as usize];
        let mut lines = Vec::with_capacity(self.line_count() as usize);
        for r in self.nonzero() {
            if seen[r.0 as usize] {
                continue;
            }
            let mut members: Vec<FieldElem> =
                (1..self.p as i64).map(|i| self.mul(self.int(i), r)).collect();
            members.sort_unstable();
            for m in &members {
                seen[m.0 as usize] = true;
            }
            lines.push(Line {
                representative: r,
                members,
                b: self.pow(r, self.p as u64 - 1),
            });
        }
        lines
    }

    /// The line containing a nonzero element.
    pub fn line_of(&self, r: FieldElem) -> Result<Line> {
        if r.is_zero() {
            return Err(Error::ZeroShift);
        }
        let mut members: Vec<FieldElem> =
            (1..self.p as i64).map(|i| self.mul(self.int(i), r)).collect();
        members.sort_unstable();
        Ok(Line {
            representative: members[0],
            members,
            b: self.pow(r, self.p as u64 - 1),
        })
    }

    /// Human-readable rendering of an element as a polynomial in `t`.
    pub fn render(&self, x: FieldElem) -> String {
        if self.n == 1 {
            return x.0.to_string();
        }
        let digits = self.digits(x);
        let mut terms = Vec::new();
        for (i, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// The `F_p^*`-multiples of a nonzero element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Line {
    pub representative: FieldElem,
    pub members: Vec<FieldElem>,
    /// `r^{p-1}` for any member `r`; an `l_q`-th root of unity.
    pub b: FieldElem,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in ascending order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn to_digits(mut x: u32, p: u32, n: u32) -> Vec<u32> {
    let mut d = vec![0; n as usize];
    for slot in d.iter_mut() {
        *slot = x % p;
        x /= p;
    }
    d
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

// Schoolbook product of two residues modulo the monic `modulus`.
fn digits_mul(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let n = a.len();
    let mut prod = vec![0u64; 2 * n - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for deg in (n..2 * n - 1).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for j in 0..n {
            let sub = c * modulus[j] as u64 % p as u64;
            prod[deg - n + j] = (prod[deg - n + j] + p as u64 - sub) % p as u64;
        }
        prod[deg] = 0;
    }
    prod[..n].iter().map(|&c| c as u32).collect()
}

fn digits_pow(base: &[u32], mut e: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let mut acc = vec![0; base.len()];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = digits_mul(&acc, &b, modulus, p);
        }
        b = digits_mul(&b, &b, modulus, p);
        e >>= 1;
    }
    acc
}

// Remainder of `a` modulo the monic `m` over F_p (coefficients low first).
fn fp_poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let dm = m.len() - 1;
    while r.len() > dm {
        let c = r.pop().unwrap();
        if c == 0 {
            continue;
        }
        let shift = r.len() - dm;
        for j in 0..dm {
            let sub = c * m[j] as u64 % p as u64;
            r[shift + j] = (r[shift + j] + p as u64 - sub) % p as u64;
        }
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Monic `f` (low degree first) irreducible over `F_p`, by trial division
/// with every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = to_digits(idx as u32, p, d as u32);
            g.push(1);
            if fp_poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `n`, comparing
/// coefficients from the constant term upward.
fn canonical_modulus(p: u32, n: u32) -> Vec<u32> {
    if n == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(n);
    for idx in 0..count {
        // c_0 is the most significant digit of idx.
        let mut f: Vec<u32> = (0..n)
            .map(|i| ((idx / (p as u64).pow(n - 1 - i)) % p as u64) as u32)
            .collect();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_uses_modulus_x() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(f5.modulus(), &[0, 1]);
        assert_eq!(f5.q(), 5);
        assert_eq!(f5.primitive(), FieldElem(2));
        assert_eq!(f5.mul(FieldElem(3), FieldElem(4)), FieldElem(2));
    }

    #[test]
    fn f9_canonical_choices() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        // t + 1 has index 1 + 3 = 4
        assert_eq!(f9.primitive(), FieldElem(4));
        let t = FieldElem(3);
        assert_eq!(f9.mul(t, t), FieldElem(2));
        assert_eq!(f9.frobenius(t), FieldElem(6));
        assert_eq!(f9.line_count(), 4);
    }

    #[test]
    fn modulus_search_brute_force() {
        // Independent check: a monic quadratic over F_p is irreducible iff it
        // has no root; scan in the same lexicographic order.
        for p in [3u32, 5, 7] {
            let mut expect = None;
            'outer: for c0 in 0..p {
                for c1 in 0..p {
                    if (0..p).all(|x| (x * x + c1 * x + c0) % p != 0) {
                        expect = Some(vec![c0, c1, 1]);
                        break 'outer;
                    }
                }
            }
            assert_eq!(FieldCtx::new(p, 2).unwrap().modulus(), expect.unwrap().as_slice());
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(FieldCtx::new(4, 2).unwrap_err(), Error::NonPrime(4));
        assert_eq!(FieldCtx::new(3, 0).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(FieldCtx::new(2, 17), Err(Error::CapExceeded { .. })));
        // t^2 + 2 = (t - 1)(t + 1) over F_3
        assert!(matches!(
            build_field(3, 2, Some(&[2, 0, 1])),
            Err(Error::NotIrreducible(_))
        ));
        assert!(matches!(
            build_field(3, 2, Some(&[1, 0, 2])),
            Err(Error::NotIrreducible(_))
        ));
    }

    #[test]
    fn override_modulus() {
        // t^2 + t + 2 is irreducible over F_3
        let f = build_field(3, 2, Some(&[2, 1, 1])).unwrap();
        assert_eq!(f.modulus(), &[2, 1, 1]);
        let t = FieldElem(3);
        // t^2 = -t - 2 = 2t + 1
        assert_eq!(f.mul(t, t), f.from_digits(&[1, 2]));
    }

    #[test]
    fn division_by_zero() {
        let f = FieldCtx::new(7, 1).unwrap();
        assert_eq!(f.inv(FieldElem::ZERO), Err(Error::DivisionByZero));
        assert_eq!(f.div(FieldElem(3), FieldElem::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn roots_of_unity_f9() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        let r = f9.roots_of_unity(4).unwrap();
        assert_eq!(r, vec![FieldElem(1), FieldElem(2), FieldElem(3), FieldElem(6)]);
        assert_eq!(f9.roots_of_unity(1).unwrap(), vec![FieldElem::ONE]);
        assert!(matches!(f9.roots_of_unity(3), Err(Error::NotADivisor { .. })));
    }

    #[test]
    fn line_counts() {
        assert_eq!(FieldCtx::new(3, 2).unwrap().lines().len(), 4);
        let f7 = FieldCtx::new(7, 1).unwrap();
        let lines = f7.lines();
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].members.len(), 6);
        let f8 = FieldCtx::new(2, 3).unwrap();
        let lines = f8.lines();
        assert_eq!(lines.len(), 7);
        assert!(lines.iter().all(|l| l.members.len() == 1));
    }

    #[test]
    fn render_elements() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f9.render(FieldElem(7)), "2t + 1");
        assert_eq!(f9.render(FieldElem(3)), "t");
        assert_eq!(f9.render(FieldElem(0)), "0");
    }
}
