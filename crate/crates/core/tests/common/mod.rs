//! Independent reference arithmetic for the integration tests: field
//! elements as digit vectors multiplied by schoolbook convolution and reduced
//! by the modulus, with no exp/log tables.

#![allow(dead_code)]

use shiftperm::field::is_irreducible;
use shiftperm::FieldCtx;

pub struct Schoolbook {
    pub p: u32,
    pub n: usize,
    pub q: u32,
    modulus: Vec<u32>,
}

impl Schoolbook {
    pub fn new(ctx: &FieldCtx) -> Self {
        Schoolbook { p: ctx.p(), n: ctx.n() as usize, q: ctx.q(), modulus: ctx.modulus().to_vec() }
    }

    pub fn digits(&self, mut x: u32) -> Vec<u32> {
        (0..self.n)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    pub fn index(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn int(&self, k: i64) -> u32 {
        k.rem_euclid(self.p as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        self.index(&da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect::<Vec<_>>())
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.index(&self.digits(a).iter().map(|&x| (self.p - x) % self.p).collect::<Vec<_>>())
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * self.n];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // t^n = -(m_0 + ... + m_{n-1} t^{n-1})
        for deg in (self.n..2 * self.n).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &m) in self.modulus[..self.n].iter().enumerate() {
                let k = deg - self.n + i;
                prod[k] = (prod[k] + p * p - c * m as u64) % p;
            }
        }
        self.index(&prod[..self.n].iter().map(|&x| x as u32).collect::<Vec<_>>())
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut acc, mut base) = (1, a);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// By search; the fields here are tiny.
    pub fn inv(&self, a: u32) -> Option<u32> {
        (1..self.q).find(|&b| self.mul(a, b) == 1)
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    /// Horner evaluation of a coefficient list (index = exponent).
    pub fn eval(&self, coeffs: &[u32], x: u32) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Product-form Lagrange interpolation `sum_c F(c) prod_{d != c} (x - d)/(c - d)`.
    pub fn lagrange(&self, values: &[u32]) -> Vec<u32> {
        let q = self.q as usize;
        let mut out = vec![0u32; q];
        for c in 0..self.q {
            let y = values[c as usize];
            if y == 0 {
                continue;
            }
            let mut basis = vec![1u32];
            let mut denom = 1u32;
            for d in (0..self.q).filter(|&d| d != c) {
                // basis *= (x - d)
                let mut next = vec![0u32; basis.len() + 1];
                for (i, &b) in basis.iter().enumerate() {
                    next[i + 1] = self.add(next[i + 1], b);
                    next[i] = self.sub(next[i], self.mul(b, d));
                }
                basis = next;
                denom = self.mul(denom, self.sub(c, d));
            }
            let scale = self.div(y, denom).expect("distinct points");
            for (slot, &b) in out.iter_mut().zip(&basis) {
                *slot = self.add(*slot, self.mul(scale, b));
            }
        }
        out
    }
}

/// `binom(n, k) mod p` from Pascal's triangle.
pub fn binomial_mod(n: usize, k: usize, p: u32) -> u32 {
    let mut row = vec![1u32];
    for _ in 0..n {
        let mut next = vec![1u32; row.len() + 1];
        for i in 1..row.len() {
            next[i] = (row[i - 1] + row[i]) % p;
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}

/// The lexicographically largest monic irreducible of degree `n` (constant
/// term compared first), so that it differs from the canonical choice
/// whenever there are at least two.
pub fn alternate_modulus(p: u32, n: u32) -> Vec<u32> {
    let count = (p as u64).pow(n);
    (0..count)
        .rev()
        .map(|mut i| {
            let mut c: Vec<u32> = (0..n)
                .map(|_| {
                    let d = (i % p as u64) as u32;
                    i /= p as u64;
                    d
                })
                .collect();
            c.push(1);
            c
        })
        .find(|c| is_irreducible(c, p))
        .expect("irreducibles exist in every degree")
}

pub const SMALL_FIELDS: [(u32, u32); 8] = [(2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (5, 2), (3, 3), (7, 2)];
