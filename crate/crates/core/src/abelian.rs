//! Finitely generated abelian groups `Z^r × Z/d₁ × … × Z/d_k` (written
//! additively), their elements and subgroups.
//!
//! A subgroup `H ⊆ G` is stored as the lattice `L ⊆ Z^{r+k}` of all lifts of
//! its elements, in Hermite normal form. Since `L` always contains the
//! relation lattice `0 ⊕ d₁Z ⊕ … ⊕ d_kZ`, equal subgroups have equal forms.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::normal_form::{hermite_rows, smith_form, solve_in_lattice, IntMatrix};

/// Above this order a finite subgroup does not build its element table and
/// falls back to solving in the lattice for coordinates.
const TABLE_LIMIT: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<i64>);

impl GroupElement {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl AbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Self> {
        if let Some(&d) = torsion.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidGroup(format!("torsion factor {d} is below 2")));
        }
        if torsion.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidGroup(format!(
                "torsion factors {torsion:?} are not divisibility-sorted"
            )));
        }
        Ok(Self { free_rank, torsion })
    }

    /// `Z/d₁ × … × Z/d_k`.
    pub fn finite(torsion: &[u64]) -> Result<Self> {
        Self::new(0, torsion.to_vec())
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn rank(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    /// Builds an element, reducing torsion coordinates into `[0, d)`.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::InvalidElement(format!(
                "expected {} coordinates, got {}",
                self.rank(),
                coords.len()
            )));
        }
        let mut c = coords.to_vec();
        self.reduce_in_place(&mut c);
        Ok(GroupElement(c))
    }

    /// Checks that `g` has the right length and reduced torsion coordinates.
    pub fn check(&self, g: &GroupElement) -> Result<()> {
        if g.0.len() != self.rank() {
            return Err(Error::InvalidElement(format!(
                "element {g} has {} coordinates, ambient rank is {}",
                g.0.len(),
                self.rank()
            )));
        }
        for (c, &d) in g.0[self.free_rank..].iter().zip(&self.torsion) {
            if *c < 0 || *c as u64 >= d {
                return Err(Error::InvalidElement(format!("coordinate {c} not reduced modulo {d}")));
            }
        }
        Ok(())
    }

    fn reduce_in_place(&self, c: &mut [i64]) {
        for (x, &d) in c[self.free_rank..].iter_mut().zip(&self.torsion) {
            *x = x.rem_euclid(d as i64);
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut c: Vec<i64> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
        self.reduce_in_place(&mut c);
        GroupElement(c)
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        let mut c: Vec<i64> = a.0.iter().map(|x| -x).collect();
        self.reduce_in_place(&mut c);
        GroupElement(c)
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &GroupElement) -> GroupElement {
        let mut c: Vec<i64> = a.0.iter().map(|x| x * k).collect();
        self.reduce_in_place(&mut c);
        GroupElement(c)
    }

    /// Order of an element, `None` when it has infinite order.
    pub fn element_order(&self, g: &GroupElement) -> Option<u64> {
        if g.0[..self.free_rank].iter().any(|&x| x != 0) {
            return None;
        }
        Some(
            g.0[self.free_rank..]
                .iter()
                .zip(&self.torsion)
                .map(|(&x, &d)| d / (x as u64).gcd(&d))
                .fold(1, |acc, o| acc.lcm(&o)),
        )
    }

    fn relation_rows(&self) -> IntMatrix {
        let n = self.rank();
        self.torsion
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let mut row = vec![BigInt::zero(); n];
                row[self.free_rank + i] = BigInt::from(d);
                row
            })
            .collect()
    }

    /// The whole group as a subgroup of itself.
    pub fn full(&self) -> Subgroup {
        let gens = (0..self.rank())
            .map(|i| {
                let mut c = vec![0; self.rank()];
                c[i] = 1;
                GroupElement(c)
            })
            .collect::<Vec<_>>();
        Subgroup::build(self.clone(), &gens)
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::build(self.clone(), &[])
    }
}

struct ElementTable {
    elements: Vec<GroupElement>,
    coords: HashMap<GroupElement, Vec<u64>>,
}

struct SubgroupInner {
    ambient: AbelianGroup,
    hnf: IntMatrix,
    /// Invariant-factor generators; orders `0` mark free generators.
    gens: Vec<GroupElement>,
    orders: Vec<u64>,
    /// Maps lattice coordinates (w.r.t. `hnf`) to invariant-factor coordinates.
    to_smith: IntMatrix,
    /// Positions of the kept (order ≠ 1) Smith generators.
    kept: Vec<usize>,
    table: OnceLock<ElementTable>,
}

/// A subgroup of an [`AbelianGroup`], stored canonically.
#[derive(Clone)]
pub struct Subgroup(Arc<SubgroupInner>);

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ambient == other.0.ambient && self.0.hnf == other.0.hnf)
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.ambient.hash(state);
        self.0.hnf.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.0.ambient, &self.0.hnf).cmp(&(&other.0.ambient, &other.0.hnf))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.0.gens.iter().map(ToString::to_string).collect();
        write!(f, "<{}> ~ {:?}", gens.join(", "), self.0.orders)
    }
}

fn to_big(c: &[i64]) -> Vec<BigInt> {
    c.iter().map(|&x| BigInt::from(x)).collect()
}

fn small(x: &BigInt) -> i64 {
    x.to_i64().expect("coordinate exceeds 64-bit range")
}

impl Subgroup {
    /// Canonical subgroup generated by `gens`.
    pub fn generated(ambient: &AbelianGroup, gens: &[GroupElement]) -> Result<Self> {
        for g in gens {
            if g.0.len() != ambient.rank() {
                return Err(Error::InvalidElement(format!(
                    "generator {g} has {} coordinates, ambient rank is {}",
                    g.0.len(),
                    ambient.rank()
                )));
            }
        }
        let reduced: Vec<GroupElement> =
            gens.iter().map(|g| ambient.element(&g.0)).collect::<Result<_>>()?;
        Ok(Self::build(ambient.clone(), &reduced))
    }

    fn build(ambient: AbelianGroup, gens: &[GroupElement]) -> Self {
        let n = ambient.rank();
        let mut rows: IntMatrix = gens.iter().map(|g| to_big(&g.0)).collect();
        rows.extend(ambient.relation_rows());
        let hnf = hermite_rows(rows, n);

        // Relations expressed in lattice coordinates, then Smith form.
        let rho = hnf.len();
        let relations: IntMatrix = ambient
            .relation_rows()
            .iter()
            .map(|r| solve_in_lattice(&hnf, r).expect("relation lattice lies in every subgroup lattice"))
            .collect();
        let smith = smith_form(&relations, rho);
        let mut diag: Vec<BigInt> = smith.diagonal.clone();
        diag.resize(rho, BigInt::zero());

        let mut out_gens = Vec::new();
        let mut orders = Vec::new();
        let mut kept = Vec::new();
        for (i, d) in diag.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            // generator i = (row i of V⁻¹) · hnf
            let mut c = vec![BigInt::zero(); n];
            for (coef, row) in smith.right_inverse[i].iter().zip(&hnf) {
                if coef.is_zero() {
                    continue;
                }
                for (x, y) in c.iter_mut().zip(row) {
                    *x += coef * y;
                }
            }
            for (x, &t) in c[ambient.free_rank..].iter_mut().zip(&ambient.torsion) {
                *x = x.mod_floor(&BigInt::from(t));
            }
            out_gens.push(GroupElement(c.iter().map(small).collect()));
            orders.push(d.to_u64().expect("invariant factor exceeds 64-bit range"));
            kept.push(i);
        }
        Subgroup(Arc::new(SubgroupInner {
            ambient,
            hnf,
            gens: out_gens,
            orders,
            to_smith: smith.right,
            kept,
            table: OnceLock::new(),
        }))
    }

    pub fn ambient(&self) -> &AbelianGroup {
        &self.0.ambient
    }

    /// Invariant-factor generators, in the order of [`Subgroup::structure`].
    pub fn generators(&self) -> &[GroupElement] {
        &self.0.gens
    }

    /// Invariant factors `s₁ | s₂ | …`; free generators are reported as `0`.
    pub fn structure(&self) -> &[u64] {
        &self.0.orders
    }

    pub fn is_finite(&self) -> bool {
        self.0.orders.iter().all(|&o| o != 0)
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.0.orders.iter().product())
    }

    pub fn exponent(&self) -> Result<u64> {
        if !self.is_finite() {
            return Err(Error::InfiniteSubgroup);
        }
        Ok(self.0.orders.last().copied().unwrap_or(1))
    }

    pub fn is_trivial(&self) -> bool {
        self.0.gens.is_empty()
    }

    fn lift(&self, g: &GroupElement) -> Vec<BigInt> {
        to_big(&g.0)
    }

    pub fn contains(&self, g: &GroupElement) -> Result<bool> {
        self.0.ambient.check(g)?;
        if let Some(t) = self.table() {
            return Ok(t.coords.contains_key(g));
        }
        Ok(solve_in_lattice(&self.0.hnf, &self.lift(g)).is_some())
    }

    /// `self ⊆ other`.
    pub fn is_subgroup_of(&self, other: &Subgroup) -> Result<bool> {
        if self.0.ambient != other.0.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(self.0.hnf.iter().all(|row| solve_in_lattice(&other.0.hnf, row).is_some()))
    }

    /// Coordinates of `g` with respect to the invariant-factor generators,
    /// reduced modulo the generator orders (free coordinates unreduced).
    pub fn coordinates(&self, g: &GroupElement) -> Result<Vec<i64>> {
        self.0.ambient.check(g)?;
        if let Some(t) = self.table() {
            return t
                .coords
                .get(g)
                .map(|c| c.iter().map(|&x| x as i64).collect())
                .ok_or(Error::NotASubgroup);
        }
        let a = solve_in_lattice(&self.0.hnf, &self.lift(g)).ok_or(Error::NotASubgroup)?;
        let mut out = Vec::with_capacity(self.0.kept.len());
        for (&col, &ord) in self.0.kept.iter().zip(&self.0.orders) {
            let mut x = BigInt::zero();
            for (ai, row) in a.iter().zip(&self.0.to_smith) {
                x += ai * &row[col];
            }
            if ord != 0 {
                x = x.mod_floor(&BigInt::from(ord));
            }
            out.push(small(&x));
        }
        Ok(out)
    }

    /// Element with the given invariant-factor coordinates.
    pub fn combine(&self, coords: &[i64]) -> GroupElement {
        let amb = &self.0.ambient;
        let mut acc = vec![0i64; amb.rank()];
        for (c, g) in coords.iter().zip(&self.0.gens) {
            for (x, y) in acc.iter_mut().zip(&g.0) {
                *x += c * y;
            }
            amb.reduce_in_place(&mut acc);
        }
        GroupElement(acc)
    }

    fn table(&self) -> Option<&ElementTable> {
        let order = self.order()?;
        if order > TABLE_LIMIT {
            return None;
        }
        Some(self.0.table.get_or_init(|| {
            let mut coords = HashMap::with_capacity(order as usize);
            let mut elements = Vec::with_capacity(order as usize);
            for c in mixed_radix(&self.0.orders) {
                let ci: Vec<i64> = c.iter().map(|&x| x as i64).collect();
                let g = self.combine(&ci);
                elements.push(g.clone());
                coords.insert(g, c);
            }
            elements.sort();
            ElementTable { elements, coords }
        }))
    }

    /// All elements, lexicographically ordered by coordinates.
    pub fn enumerate(&self) -> Result<Vec<GroupElement>> {
        let order = self.order().ok_or(Error::InfiniteSubgroup)?;
        if let Some(t) = self.table() {
            return Ok(t.elements.clone());
        }
        let mut out = Vec::with_capacity(order as usize);
        for c in mixed_radix(&self.0.orders) {
            let ci: Vec<i64> = c.iter().map(|&x| x as i64).collect();
            out.push(self.combine(&ci));
        }
        out.sort();
        Ok(out)
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.0.ambient != other.0.ambient {
            return Err(Error::AmbientMismatch);
        }
        if self == other {
            return Ok(self.clone());
        }
        // Zassenhaus: rows [A | A] over [B | 0]; rows with zero left half span A ∩ B.
        let n = self.0.ambient.rank();
        let mut rows: IntMatrix = Vec::new();
        for r in &self.0.hnf {
            let mut row = r.clone();
            row.extend(r.iter().cloned());
            rows.push(row);
        }
        for r in &other.0.hnf {
            let mut row = r.clone();
            row.extend(std::iter::repeat(BigInt::zero()).take(n));
            rows.push(row);
        }
        let h = hermite_rows(rows, 2 * n);
        let gens: Vec<GroupElement> = h
            .iter()
            .filter(|row| row[..n].iter().all(Zero::is_zero))
            .map(|row| {
                let c: Vec<i64> = row[n..].iter().map(small).collect();
                self.0.ambient.element(&c).expect("rank matches")
            })
            .collect();
        Ok(Self::build(self.0.ambient.clone(), &gens))
    }

    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.0.ambient != other.0.ambient {
            return Err(Error::AmbientMismatch);
        }
        let mut gens = self.0.gens.clone();
        gens.extend(other.0.gens.iter().cloned());
        Ok(Self::build(self.0.ambient.clone(), &gens))
    }

    /// Lexicographically least element of the coset `g + self` (free
    /// coordinates are untouched; requires a finite subgroup).
    pub fn coset_representative(&self, g: &GroupElement) -> Result<GroupElement> {
        self.0.ambient.check(g)?;
        let elems = self.enumerate()?;
        Ok(elems
            .iter()
            .map(|h| self.0.ambient.add(g, h))
            .min()
            .expect("subgroups are nonempty"))
    }
}

/// `g` and `g'` lie in the same double coset `H₁ g' H₂`, i.e. `g − g' ∈ H₁ + H₂`.
pub fn double_coset_eq(
    g: &GroupElement,
    g_prime: &GroupElement,
    h1: &Subgroup,
    h2: &Subgroup,
) -> Result<bool> {
    let s = h1.sum(h2)?;
    let amb = s.ambient();
    amb.check(g)?;
    amb.check(g_prime)?;
    s.contains(&amb.sub(g, g_prime))
}

/// Mixed-radix counter over `[0, r₀) × [0, r₁) × …`, first digit slowest.
pub(crate) fn mixed_radix(radices: &[u64]) -> impl Iterator<Item = Vec<u64>> + '_ {
    let total: u64 = radices.iter().product();
    (0..total).map(move |mut k| {
        let mut digits = vec![0u64; radices.len()];
        for (d, &r) in digits.iter_mut().zip(radices).rev() {
            *d = k % r;
            k /= r;
        }
        digits
    })
}
