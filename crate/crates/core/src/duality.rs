//! Characters of finite abelian subgroups, valued in `Q/Z`.
//!
//! A character is stored by its values on the invariant-factor generators of
//! its domain: generator `i` of order `sᵢ` is sent to `aᵢ/sᵢ`. The field value
//! `exp(2πi·χ(h))` is only materialised by [`crate::cyclo`].

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_integer::Integer;

use crate::abelian::{mixed_radix, GroupElement, Subgroup};
use crate::error::{Error, Result};

/// An element of `Q/Z`, kept as a reduced fraction in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase {
    num: u64,
    den: u64,
}

impl Phase {
    pub const ZERO: Phase = Phase { num: 0, den: 1 };

    /// `num/den` reduced modulo one. `den` must be positive.
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "phase denominator must be positive");
        let n = num.rem_euclid(den as i64) as u64;
        let g = n.gcd(&den);
        Phase { num: n / g, den: den / g }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn add(self, other: Phase) -> Phase {
        let den = self.den.lcm(&other.den);
        let n = (self.num as u128 * (den / self.den) as u128 + other.num as u128 * (den / other.den) as u128)
            % den as u128;
        Phase::new(n as i64, den)
    }

    pub fn neg(self) -> Phase {
        Phase::new(-(self.num as i64), self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl std::str::FromStr for Phase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected a fraction \"p/q\", got {s:?}"));
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let p: i64 = p.parse().map_err(|_| bad())?;
        let q: u64 = q.parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        Ok(Phase::new(p, q))
    }
}

/// A homomorphism from a finite subgroup into `Q/Z`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Character {
    domain: Subgroup,
    /// Numerators over the generator orders of `domain`.
    values: Vec<u64>,
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ{self}")
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.values().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl PartialOrd for Character {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Character {
    fn cmp(&self, other: &Self) -> Ordering {
        self.domain
            .cmp(&other.domain)
            .then_with(|| self.values.cmp(&other.values))
    }
}

fn finite_orders(h: &Subgroup) -> Result<&[u64]> {
    if !h.is_finite() {
        return Err(Error::InfiniteSubgroup);
    }
    Ok(h.structure())
}

impl Character {
    pub fn trivial(domain: &Subgroup) -> Result<Self> {
        let n = finite_orders(domain)?.len();
        Ok(Character { domain: domain.clone(), values: vec![0; n] })
    }

    /// Character with the given values on the invariant-factor generators of
    /// `domain`.
    pub fn from_generator_values(domain: &Subgroup, values: &[Phase]) -> Result<Self> {
        let orders = finite_orders(domain)?;
        if values.len() != orders.len() {
            return Err(Error::InvalidCharacter(format!(
                "domain has {} generators, got {} values",
                orders.len(),
                values.len()
            )));
        }
        let mut nums = Vec::with_capacity(values.len());
        for (v, &s) in values.iter().zip(orders) {
            if s % v.den != 0 {
                return Err(Error::InvalidCharacter(format!(
                    "value {v} is not killed by the generator order {s}"
                )));
            }
            nums.push(v.num * (s / v.den));
        }
        Ok(Character { domain: domain.clone(), values: nums })
    }

    /// Character determined by its values on an arbitrary generating list of
    /// `domain`; fails if the assignment does not extend to a homomorphism.
    pub fn from_values_on(domain: &Subgroup, gens: &[GroupElement], values: &[Phase]) -> Result<Self> {
        finite_orders(domain)?;
        if gens.len() != values.len() {
            return Err(Error::InvalidCharacter(format!(
                "{} generators but {} values",
                gens.len(),
                values.len()
            )));
        }
        let amb = domain.ambient();
        for g in gens {
            if !domain.contains(g)? {
                return Err(Error::InvalidCharacter(format!("generator {g} lies outside the domain")));
            }
        }
        // Breadth-first walk of the Cayley graph, checking consistency.
        let mut seen: HashMap<GroupElement, Phase> = HashMap::new();
        let mut queue = VecDeque::from([amb.zero()]);
        seen.insert(amb.zero(), Phase::ZERO);
        while let Some(x) = queue.pop_front() {
            let vx = seen[&x];
            for (g, &v) in gens.iter().zip(values) {
                let y = amb.add(&x, g);
                let vy = vx.add(v);
                match seen.get(&y) {
                    Some(&old) if old != vy => {
                        return Err(Error::InvalidCharacter(format!(
                            "values are inconsistent at {y}: {old} vs {vy}"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        seen.insert(y.clone(), vy);
                        queue.push_back(y);
                    }
                }
            }
        }
        if seen.len() as u64 != domain.order().unwrap_or(0) {
            return Err(Error::InvalidCharacter("listed generators do not generate the domain".into()));
        }
        let vals: Vec<Phase> = domain.generators().iter().map(|g| seen[g]).collect();
        Self::from_generator_values(domain, &vals)
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    /// Values on the invariant-factor generators of the domain.
    pub fn values(&self) -> Vec<Phase> {
        self.values
            .iter()
            .zip(self.domain.structure())
            .map(|(&a, &s)| Phase::new(a as i64, s))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// `χ(h)` for `h` in the domain.
    pub fn eval(&self, h: &GroupElement) -> Result<Phase> {
        let coords = self.domain.coordinates(h)?;
        Ok(self.eval_coords(&coords))
    }

    pub(crate) fn eval_coords(&self, coords: &[i64]) -> Phase {
        let orders = self.domain.structure();
        let e = orders.last().copied().unwrap_or(1);
        let mut acc: u128 = 0;
        for ((&c, &a), &s) in coords.iter().zip(&self.values).zip(orders) {
            acc += (c.rem_euclid(s as i64) as u128) * (a as u128) * ((e / s) as u128);
            acc %= e as u128;
        }
        Phase::new(acc as i64, e)
    }

    /// Order of the character in the dual group.
    pub fn order(&self) -> u64 {
        self.values().iter().fold(1, |acc, v| acc.lcm(&v.den))
    }

    pub fn mul(&self, other: &Character) -> Result<Character> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .zip(self.domain.structure())
            .map(|((&a, &b), &s)| (a + b) % s)
            .collect();
        Ok(Character { domain: self.domain.clone(), values })
    }

    pub fn inv(&self) -> Character {
        let values = self
            .values
            .iter()
            .zip(self.domain.structure())
            .map(|(&a, &s)| (s - a) % s)
            .collect();
        Character { domain: self.domain.clone(), values }
    }

    /// Restriction along an inclusion `k ⊆ domain`.
    pub fn restrict(&self, k: &Subgroup) -> Result<Character> {
        if k.ambient() != self.domain.ambient() {
            return Err(Error::AmbientMismatch);
        }
        if k == &self.domain {
            return Ok(self.clone());
        }
        let orders = finite_orders(k)?.to_vec();
        let mut values = Vec::with_capacity(orders.len());
        for (g, &t) in k.generators().iter().zip(&orders) {
            let coords = self.domain.coordinates(g).map_err(|e| match e {
                Error::NotASubgroup => Error::NotASubgroup,
                other => other,
            })?;
            let v = self.eval_coords(&coords);
            values.push(v.num * (t / v.den));
        }
        Ok(Character { domain: k.clone(), values })
    }
}

/// All characters of a finite subgroup, trivial first, then in lexicographic
/// order of their generator values.
pub fn dual_group(h: &Subgroup) -> Result<Vec<Character>> {
    let orders = finite_orders(h)?;
    Ok(mixed_radix(orders)
        .map(|values| Character { domain: h.clone(), values })
        .collect())
}

/// All characters of `h` restricting to `chi` on its domain.
pub fn extension_fiber(chi: &Character, h: &Subgroup) -> Result<Vec<Character>> {
    if !chi.domain.is_subgroup_of(h)? {
        return Err(Error::NotASubgroup);
    }
    let mut out = Vec::new();
    for eta in dual_group(h)? {
        if &eta.restrict(&chi.domain)? == chi {
            out.push(eta);
        }
    }
    Ok(out)
}
