//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! Numbers are stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` modulo the
//! cyclotomic polynomial `Φ_N`, as integer numerators over one positive common
//! denominator. Mixed conductors are lifted to their lcm on demand.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::duality::Phase;

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn poly_cache() -> &'static RwLock<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `Φ_n`, coefficients from the constant term up; monic of degree `φ(n)`.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<BigInt>> {
    assert!(n > 0, "conductor must be positive");
    if let Some(p) = poly_cache().read().expect("cache poisoned").get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Φ_d with d | n, d < n
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let div = cyclotomic_polynomial(d);
        num = exact_div(&num, &div);
    }
    let p = Arc::new(num);
    poly_cache().write().expect("cache poisoned").insert(n, p.clone());
    p
}

/// Quotient of `a` by a monic `b`; the division must be exact.
fn exact_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    q
}

/// Reduces `p` modulo the monic `modulus`, in place, truncating to its degree.
fn reduce_mod(p: &mut Vec<BigInt>, modulus: &[BigInt]) {
    let d = modulus.len() - 1;
    for i in (d..p.len()).rev() {
        let c = std::mem::take(&mut p[i]);
        if c.is_zero() {
            continue;
        }
        for (j, mj) in modulus[..d].iter().enumerate() {
            if !mj.is_zero() {
                p[i - d + j] -= &c * mj;
            }
        }
    }
    p.truncate(d);
    p.resize(d, BigInt::zero());
}

#[derive(Clone)]
pub struct CycloNumber {
    conductor: u64,
    nums: Vec<BigInt>,
    den: BigInt,
}

impl CycloNumber {
    fn normalized(conductor: u64, mut nums: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for x in nums.iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        let g = nums.iter().fold(den.clone(), |g, x| g.gcd(x));
        if nums.iter().all(Zero::is_zero) {
            den = BigInt::one();
        } else if !g.is_one() {
            for x in nums.iter_mut() {
                *x /= &g;
            }
            den /= &g;
        }
        CycloNumber { conductor, nums, den }
    }

    pub fn zero(conductor: u64) -> Self {
        let d = euler_phi(conductor) as usize;
        CycloNumber { conductor, nums: vec![BigInt::zero(); d], den: BigInt::one() }
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_rational(&BigRational::one(), conductor)
    }

    pub fn from_rational(q: &BigRational, conductor: u64) -> Self {
        let mut x = Self::zero(conductor);
        x.nums[0] = q.numer().clone();
        Self::normalized(conductor, x.nums, q.denom().clone())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()), 1)
    }

    /// Power-basis coordinates; the length must be `φ(conductor)`.
    pub fn from_coefficients(conductor: u64, coeffs: &[BigRational]) -> Option<Self> {
        if conductor == 0 || coeffs.len() as u64 != euler_phi(conductor) {
            return None;
        }
        let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let nums = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Some(Self::normalized(conductor, nums, den))
    }

    /// `exp(2πi·q)` with conductor the denominator of `q`.
    pub fn root_of_unity(q: Phase) -> Self {
        Self::root_of_unity_in(q, q.denom())
    }

    /// `exp(2πi·q)` as an element of `Q(ζ_n)`; the denominator of `q` must divide `n`.
    pub fn root_of_unity_in(q: Phase, n: u64) -> Self {
        assert!(n % q.denom() == 0, "root of order {} is not in Q(zeta_{n})", q.denom());
        let exp = (q.numer() * (n / q.denom())) as usize;
        let mut p = vec![BigInt::zero(); exp.max(1) + 1];
        p[exp] = BigInt::one();
        reduce_mod(&mut p, &cyclotomic_polynomial(n));
        CycloNumber { conductor: n, nums: p, den: BigInt::one() }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coefficients(&self) -> Vec<BigRational> {
        self.nums
            .iter()
            .map(|x| BigRational::new(x.clone(), self.den.clone()))
            .collect()
    }

    /// Integer numerators and common denominator of the coordinates.
    pub fn numerators(&self) -> (&[BigInt], &BigInt) {
        (&self.nums, &self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.nums.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.nums[0].is_one() && self.nums[1..].iter().all(Zero::is_zero)
    }

    /// The same number viewed in `Q(ζ_n)`; `conductor` must divide `n`.
    pub fn lift(&self, n: u64) -> Self {
        assert!(n % self.conductor == 0, "cannot lift conductor {} to {n}", self.conductor);
        if n == self.conductor {
            return self.clone();
        }
        let step = (n / self.conductor) as usize;
        let mut p = vec![BigInt::zero(); n as usize];
        for (i, c) in self.nums.iter().enumerate() {
            p[(i * step) % n as usize] += c;
        }
        reduce_mod(&mut p, &cyclotomic_polynomial(n));
        Self::normalized(n, p, self.den.clone())
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.conductor == other.conductor {
            return (self.clone(), other.clone());
        }
        let n = self.conductor.lcm(&other.conductor);
        (self.lift(n), other.lift(n))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let nums = self.nums.iter().map(|x| x * q.numer()).collect();
        Self::normalized(self.conductor, nums, &self.den * q.denom())
    }

    fn add_same(&self, other: &Self) -> Self {
        let l = self.den.lcm(&other.den);
        let fa = &l / &self.den;
        let fb = &l / &other.den;
        let nums = self.nums.iter().zip(&other.nums).map(|(a, b)| a * &fa + b * &fb).collect();
        Self::normalized(self.conductor, nums, l)
    }

    fn mul_same(&self, other: &Self) -> Self {
        let d = self.nums.len();
        let mut p = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.nums.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.nums.iter().enumerate() {
                if !b.is_zero() {
                    p[i + j] += a * b;
                }
            }
        }
        reduce_mod(&mut p, &cyclotomic_polynomial(self.conductor));
        Self::normalized(self.conductor, p, &self.den * &other.den)
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.den == other.den && self.nums == other.nums;
        }
        let (a, b) = self.aligned(other);
        a.den == b.den && a.nums == b.nums
    }
}

impl Eq for CycloNumber {}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coefficients().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => format!("{c}"),
                1 => format!("({c})z{}", self.conductor),
                _ => format!("({c})z{}^{i}", self.conductor),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Add for &CycloNumber {
    type Output = CycloNumber;

    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        if self.conductor == rhs.conductor {
            return self.add_same(rhs);
        }
        let (a, b) = self.aligned(rhs);
        a.add_same(&b)
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;

    fn neg(self) -> CycloNumber {
        CycloNumber {
            conductor: self.conductor,
            nums: self.nums.iter().map(|x| -x).collect(),
            den: self.den.clone(),
        }
    }
}

impl Sub for &CycloNumber {
    type Output = CycloNumber;

    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        self + &(-rhs)
    }
}

impl Mul for &CycloNumber {
    type Output = CycloNumber;

    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        if self.conductor == rhs.conductor {
            return self.mul_same(rhs);
        }
        let (a, b) = self.aligned(rhs);
        a.mul_same(&b)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycloNumber {
            type Output = CycloNumber;

            fn $m(self, rhs: CycloNumber) -> CycloNumber {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
