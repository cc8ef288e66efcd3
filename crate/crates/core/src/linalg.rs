//! Exact spans over `Q(ζ_N)`, computed by fraction-free elimination on the
//! rational coordinates of each coefficient.
//!
//! A vector over `K = Q(ζ_N)` with `m` entries is expanded to an integer row of
//! length `m·φ(N)`. The `K`-span of a set of vectors is the `Q`-span of all
//! their multiples by `ζ^a`, `a < φ(N)`, so `K`-ranks are `Q`-ranks over `φ(N)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cyclo::{cyclotomic_polynomial, euler_phi, CycloNumber};

/// Row echelon basis of a subspace of `Q^n`, rows stored with integer entries.
#[derive(Clone, Debug, Default)]
pub(crate) struct QSpan {
    rows: Vec<(usize, Vec<BigInt>)>,
}

fn remove_content(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

impl QSpan {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let g = v[*p].gcd(&row[*p]);
            let a = &row[*p] / &g;
            let b = &v[*p] / &g;
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x * &a - r * &b;
                } else if !a.is_one() {
                    *x *= &a;
                }
            }
            remove_content(&mut v);
        }
        v
    }

    pub fn contains(&self, v: Vec<BigInt>) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<BigInt>) -> bool {
        let mut r = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                if r[p].is_negative() {
                    for x in r.iter_mut() {
                        *x = -std::mem::take(x);
                    }
                }
                self.rows.push((p, r));
                true
            }
            None => false,
        }
    }
}

/// Subspace of `K^m` for `K = Q(ζ_N)`.
#[derive(Clone, Debug)]
pub(crate) struct KSpan {
    conductor: u64,
    phi: usize,
    modulus: Arc<Vec<BigInt>>,
    ncols: usize,
    span: QSpan,
}

impl KSpan {
    pub fn new(conductor: u64, ncols: usize) -> Self {
        KSpan {
            conductor,
            phi: euler_phi(conductor) as usize,
            modulus: cyclotomic_polynomial(conductor),
            ncols,
            span: QSpan::default(),
        }
    }

    pub fn rank(&self) -> usize {
        self.span.rank() / self.phi
    }

    /// Integer row proportional to the sparse vector `entries`; conductors
    /// must divide the span's conductor.
    fn expand<'a, I>(&self, entries: I) -> Vec<BigInt>
    where
        I: IntoIterator<Item = (usize, &'a CycloNumber)>,
    {
        let lifted: Vec<(usize, CycloNumber)> = entries
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.lift(self.conductor)))
            .collect();
        let den = lifted.iter().fold(BigInt::one(), |l, (_, c)| l.lcm(c.numerators().1));
        let mut row = vec![BigInt::zero(); self.ncols * self.phi];
        for (i, c) in &lifted {
            assert!(*i < self.ncols, "column {i} out of range");
            let (nums, d) = c.numerators();
            let f = &den / d;
            for (t, x) in nums.iter().enumerate() {
                row[i * self.phi + t] += x * &f;
            }
        }
        row
    }

    /// Multiplies every coordinate block of `row` by `ζ`.
    fn mul_zeta(&self, row: &[BigInt]) -> Vec<BigInt> {
        let phi = self.phi;
        let mut out = vec![BigInt::zero(); row.len()];
        for (blk, chunk) in row.chunks(phi).enumerate() {
            let top = &chunk[phi - 1];
            let o = &mut out[blk * phi..(blk + 1) * phi];
            for t in 0..phi {
                let mut x = if t > 0 { chunk[t - 1].clone() } else { BigInt::zero() };
                if !top.is_zero() {
                    x -= top * &self.modulus[t];
                }
                o[t] = x;
            }
        }
        out
    }

    pub fn contains<'a, I>(&self, entries: I) -> bool
    where
        I: IntoIterator<Item = (usize, &'a CycloNumber)>,
    {
        self.span.contains(self.expand(entries))
    }

    /// Adds a vector; returns whether the `K`-rank grew.
    pub fn insert<'a, I>(&mut self, entries: I) -> bool
    where
        I: IntoIterator<Item = (usize, &'a CycloNumber)>,
    {
        let mut row = self.expand(entries);
        if !self.span.insert(row.clone()) {
            return false;
        }
        for _ in 1..self.phi {
            row = self.mul_zeta(&row);
            let grew = self.span.insert(row.clone());
            debug_assert!(grew, "ζ-multiples of a new vector must be independent");
        }
        true
    }
}
