//! Elements of the incidence algebra `I(X)` of a finite poset, with
//! cyclotomic coefficients and the convolution product.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use num_rational::BigRational;

use crate::cyclo::CycloNumber;
use crate::error::{Error, Result};
use crate::poset::Poset;

#[derive(Clone)]
pub struct IncidenceElement {
    poset: Arc<Poset>,
    coeffs: BTreeMap<(usize, usize), CycloNumber>,
}

impl fmt::Debug for IncidenceElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&(x, y), c)| format!("({c})e[{},{}]", self.poset.label(x), self.poset.label(y)))
            .collect();
        write!(f, "{}", if terms.is_empty() { "0".to_string() } else { terms.join(" + ") })
    }
}

impl PartialEq for IncidenceElement {
    fn eq(&self, other: &Self) -> bool {
        same_poset(&self.poset, &other.poset) && self.coeffs == other.coeffs
    }
}

fn same_poset(a: &Arc<Poset>, b: &Arc<Poset>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl IncidenceElement {
    pub fn zero(poset: &Arc<Poset>) -> Self {
        IncidenceElement { poset: poset.clone(), coeffs: BTreeMap::new() }
    }

    /// The matrix unit `e_{xy}`; requires `x ≤ y`.
    pub fn unit(poset: &Arc<Poset>, x: usize, y: usize) -> Result<Self> {
        Self::from_terms(poset, [((x, y), CycloNumber::from_integer(1))])
    }

    /// `Σ_x e_x`.
    pub fn identity(poset: &Arc<Poset>) -> Self {
        Self::from_terms(poset, (0..poset.len()).map(|x| ((x, x), CycloNumber::from_integer(1))))
            .expect("diagonal pairs are comparable")
    }

    /// Sum of `c · e_{xy}` over the given terms; repeated pairs accumulate.
    pub fn from_terms<I>(poset: &Arc<Poset>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), CycloNumber)>,
    {
        let mut out = Self::zero(poset);
        for ((x, y), c) in terms {
            if x >= poset.len() || y >= poset.len() || !poset.leq(x, y) {
                let name = |i: usize| poset.labels().get(i).cloned().unwrap_or_else(|| format!("#{i}"));
                return Err(Error::NotComparable(name(x), name(y)));
            }
            out.accumulate((x, y), &c);
        }
        Ok(out)
    }

    fn accumulate(&mut self, key: (usize, usize), c: &CycloNumber) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&key) {
            Some(old) => {
                let s = &*old + c;
                if s.is_zero() {
                    self.coeffs.remove(&key);
                } else {
                    *old = s;
                }
            }
            None => {
                self.coeffs.insert(key, c.clone());
            }
        }
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    /// Nonzero coefficients keyed by `(x, y)`.
    pub fn terms(&self) -> &BTreeMap<(usize, usize), CycloNumber> {
        &self.coeffs
    }

    pub fn get(&self, x: usize, y: usize) -> Option<&CycloNumber> {
        self.coeffs.get(&(x, y))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Replaces one coefficient (removing it when zero).
    pub fn set(&mut self, x: usize, y: usize, c: CycloNumber) -> Result<()> {
        if !self.poset.leq(x, y) {
            return Err(Error::NotComparable(self.poset.label(x).into(), self.poset.label(y).into()));
        }
        if c.is_zero() {
            self.coeffs.remove(&(x, y));
        } else {
            self.coeffs.insert((x, y), c);
        }
        Ok(())
    }

    pub fn scale(&self, c: &CycloNumber) -> Self {
        let mut out = Self::zero(&self.poset);
        for (&k, v) in &self.coeffs {
            out.accumulate(k, &(v * c));
        }
        out
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        let mut out = Self::zero(&self.poset);
        for (&k, v) in &self.coeffs {
            out.accumulate(k, &v.scale(q));
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if !same_poset(&self.poset, &other.poset) {
            return Err(Error::PosetMismatch);
        }
        let mut out = self.clone();
        for (&k, v) in &other.coeffs {
            out.accumulate(k, v);
        }
        Ok(out)
    }

    /// Convolution `(f·g)(x, y) = Σ_z f(x, z) g(z, y)`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if !same_poset(&self.poset, &other.poset) {
            return Err(Error::PosetMismatch);
        }
        let mut out = Self::zero(&self.poset);
        for (&(x, z), a) in &self.coeffs {
            for (&(_, y), b) in other.coeffs.range((z, 0)..(z + 1, 0)) {
                out.accumulate((x, y), &(a * b));
            }
        }
        Ok(out)
    }
}

impl Add for &IncidenceElement {
    type Output = IncidenceElement;

    fn add(self, rhs: &IncidenceElement) -> IncidenceElement {
        self.try_add(rhs).expect("incidence elements over different posets")
    }
}

impl Sub for &IncidenceElement {
    type Output = IncidenceElement;

    fn sub(self, rhs: &IncidenceElement) -> IncidenceElement {
        self + &rhs.scale(&CycloNumber::from_integer(-1))
    }
}

impl Mul for &IncidenceElement {
    type Output = IncidenceElement;

    fn mul(self, rhs: &IncidenceElement) -> IncidenceElement {
        self.try_mul(rhs).expect("incidence elements over different posets")
    }
}
