//! Graded bimodule classes over pairs of group algebras, written as lists of
//! (character, degree) pairs.

use std::collections::BTreeMap;
use std::fmt;

use crate::abelian::{GroupElement, Subgroup};
use crate::duality::{extension_fiber, Character};
use crate::error::{Error, Result};

/// A graded `(FH₁, FH₂)`-bimodule up to graded isomorphism.
///
/// Each pair `(χ, g)` is an irreducible summand: `χ` is a character of
/// `H₁ ∩ H₂` and `g` its degree, stored as the lexicographically least
/// element of `g + (H₁ + H₂)`. Pairs are kept sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BimoduleClass {
    left: Subgroup,
    right: Subgroup,
    meet: Subgroup,
    join: Subgroup,
    pairs: Vec<(Character, GroupElement)>,
}

impl fmt::Debug for BimoduleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self.pairs.iter().map(|(c, g)| format!("({c}, {g})")).collect();
        write!(f, "[{}]", pairs.join(", "))
    }
}

impl BimoduleClass {
    pub fn new(left: &Subgroup, right: &Subgroup, pairs: Vec<(Character, GroupElement)>) -> Result<Self> {
        if !left.is_finite() || !right.is_finite() {
            return Err(Error::InfiniteSubgroup);
        }
        let meet = left.intersect(right)?;
        let join = left.sum(right)?;
        let mut canonical = Vec::with_capacity(pairs.len());
        for (chi, g) in pairs {
            if chi.domain() != &meet {
                return Err(Error::DomainMismatch);
            }
            let g = join.coset_representative(&g)?;
            canonical.push((chi, g));
        }
        canonical.sort();
        Ok(BimoduleClass { left: left.clone(), right: right.clone(), meet, join, pairs: canonical })
    }

    pub fn zero(left: &Subgroup, right: &Subgroup) -> Result<Self> {
        Self::new(left, right, Vec::new())
    }

    pub fn left(&self) -> &Subgroup {
        &self.left
    }

    pub fn right(&self) -> &Subgroup {
        &self.right
    }

    /// `H₁ ∩ H₂`, the domain of every character in the class.
    pub fn meet(&self) -> &Subgroup {
        &self.meet
    }

    /// `H₁ + H₂`; degrees are taken modulo this subgroup.
    pub fn join(&self) -> &Subgroup {
        &self.join
    }

    pub fn pairs(&self) -> &[(Character, GroupElement)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn characters(&self) -> impl Iterator<Item = &Character> {
        self.pairs.iter().map(|(c, _)| c)
    }

    /// Dimension over the base field: each summand contributes `|H₁ + H₂|`.
    pub fn dimension(&self) -> u64 {
        self.pairs.len() as u64 * self.join.order().expect("finite blocks")
    }
}

/// Whether `m ≅ n` as graded bimodules; the witness `σ` sends the index of a
/// pair of `m` to the index of its partner in `n`.
pub fn bimodule_iso(m: &BimoduleClass, n: &BimoduleClass) -> Result<Option<Vec<usize>>> {
    if m.left != n.left || m.right != n.right {
        return Err(Error::BlockMismatch);
    }
    if m.len() != n.len() {
        return Ok(None);
    }
    // Degrees are canonical coset representatives, so matching is exact.
    let mut used = vec![false; n.len()];
    let mut sigma = Vec::with_capacity(m.len());
    for p in &m.pairs {
        match (0..n.len()).find(|&j| !used[j] && &n.pairs[j] == p) {
            Some(j) => {
                used[j] = true;
                sigma.push(j);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(sigma))
}

/// `μ_left · M · μ_right`: every `(χ, g)` becomes
/// `(μ_left|·χ·μ_right|⁻¹, g)`, restrictions taken to `H₁ ∩ H₂`.
///
/// The right factor enters inverted so that twisting agrees with shifting the
/// vertices `η ↦ η·μ` of the realized poset on both sides.
pub fn twist(m: &BimoduleClass, mu_left: &Character, mu_right: &Character) -> Result<BimoduleClass> {
    if mu_left.domain() != &m.left || mu_right.domain() != &m.right {
        return Err(Error::DomainMismatch);
    }
    let shift = mu_left.restrict(&m.meet)?.mul(&mu_right.restrict(&m.meet)?.inv())?;
    let pairs = m
        .pairs
        .iter()
        .map(|(c, g)| Ok((shift.mul(c)?, g.clone())))
        .collect::<Result<Vec<_>>>()?;
    BimoduleClass::new(&m.left, &m.right, pairs)
}

/// A class can be realized inside an incidence algebra iff its characters are
/// pairwise distinct.
pub fn realizable(m: &BimoduleClass) -> bool {
    m.pairs.windows(2).all(|w| w[0].0 != w[1].0)
}

/// Characters occurring more than once.
pub fn repeated_characters(m: &BimoduleClass) -> Vec<Character> {
    let mut out: Vec<Character> = m
        .pairs
        .windows(2)
        .filter(|w| w[0].0 == w[1].0)
        .map(|w| w[0].0.clone())
        .collect();
    out.dedup();
    out
}

/// Character-level product of two pair lists over `(H₁,H₂)` and `(H₂,H₃)`.
/// Degrees add exactly; `same_degree` decides whether two degrees forced on
/// one output character agree. On disagreement the character and both
/// degrees are returned.
pub(crate) fn product_pairs<F>(
    h1: &Subgroup,
    h2: &Subgroup,
    h3: &Subgroup,
    p12: &[(Character, GroupElement)],
    p23: &[(Character, GroupElement)],
    same_degree: F,
) -> Result<std::result::Result<Vec<(Character, GroupElement)>, (Character, GroupElement, GroupElement)>>
where
    F: Fn(&GroupElement, &GroupElement) -> Result<bool>,
{
    let amb = h1.ambient();
    let h13 = h1.intersect(h3)?;
    let h123 = h13.intersect(h2)?;
    let mut out: BTreeMap<Character, GroupElement> = BTreeMap::new();
    let mut fibers: BTreeMap<Character, Vec<Character>> = BTreeMap::new();
    for (c12, g12) in p12 {
        let r12 = c12.restrict(&h123)?;
        for (c23, g23) in p23 {
            let target = r12.mul(&c23.restrict(&h123)?)?;
            let g = amb.add(g12, g23);
            if !fibers.contains_key(&target) {
                let f = extension_fiber(&target, &h13)?;
                fibers.insert(target.clone(), f);
            }
            for chi in &fibers[&target] {
                match out.get(chi) {
                    Some(prev) => {
                        if !same_degree(prev, &g)? {
                            return Ok(Err((chi.clone(), prev.clone(), g)));
                        }
                    }
                    None => {
                        out.insert(chi.clone(), g.clone());
                    }
                }
            }
        }
    }
    Ok(Ok(out.into_iter().collect()))
}

/// The class of `M₁₂ ⊗ M₂₃` landing in `M₁₃`: every character of `H₁ ∩ H₃`
/// whose restriction to `H₁ ∩ H₂ ∩ H₃` is a product of restrictions of input
/// characters, with degree `deg χ₁₂ + deg χ₂₃`.
pub fn bimodule_product(m12: &BimoduleClass, m23: &BimoduleClass) -> Result<BimoduleClass> {
    if m12.right != m23.left {
        return Err(Error::ChainMismatch);
    }
    if m12.left.ambient() != m23.right.ambient() {
        return Err(Error::AmbientMismatch);
    }
    let (h1, h2, h3) = (&m12.left, &m12.right, &m23.right);
    let join13 = h1.sum(h3)?;
    let same = |a: &GroupElement, b: &GroupElement| join13.contains(&h1.ambient().sub(a, b));
    match product_pairs(h1, h2, h3, &m12.pairs, &m23.pairs, same)? {
        Ok(pairs) => BimoduleClass::new(h1, h3, pairs),
        Err((chi, first, second)) => Err(Error::DegreeConflict {
            character: chi.to_string(),
            first: join13.coset_representative(&first)?.to_string(),
            second: join13.coset_representative(&second)?.to_string(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianGroup;
    use crate::duality::{dual_group, Phase};

    fn sub(g: &AbelianGroup, gens: &[&[i64]]) -> Subgroup {
        let gens: Vec<_> = gens.iter().map(|c| g.element(c).unwrap()).collect();
        Subgroup::generated(g, &gens).unwrap()
    }

    #[test]
    fn degrees_are_canonical() {
        let g = AbelianGroup::finite(&[4]).unwrap();
        let h = sub(&g, &[&[2]]);
        let chi = dual_group(&h).unwrap()[1].clone();
        let a = BimoduleClass::new(&h, &h, vec![(chi.clone(), g.element(&[1]).unwrap())]).unwrap();
        let b = BimoduleClass::new(&h, &h, vec![(chi.clone(), g.element(&[3]).unwrap())]).unwrap();
        assert_eq!(a, b);
        assert_eq!(bimodule_iso(&a, &b).unwrap(), Some(vec![0]));
        let one = Character::trivial(&h).unwrap();
        let c = BimoduleClass::new(&h, &h, vec![(one, g.element(&[1]).unwrap())]).unwrap();
        assert_eq!(bimodule_iso(&a, &c).unwrap(), None);
    }

    #[test]
    fn wrong_domain_is_rejected() {
        let g = AbelianGroup::finite(&[4]).unwrap();
        let h = sub(&g, &[&[2]]);
        let full = g.full();
        let chi = Character::trivial(&full).unwrap();
        assert!(matches!(
            BimoduleClass::new(&h, &full, vec![(chi, g.zero())]),
            Err(Error::DomainMismatch)
        ));
        let m = BimoduleClass::zero(&h, &h).unwrap();
        let n = BimoduleClass::zero(&h, &full).unwrap();
        assert!(matches!(bimodule_iso(&m, &n), Err(Error::BlockMismatch)));
    }

    #[test]
    fn twist_examples() {
        let g = AbelianGroup::finite(&[2]).unwrap();
        let h = g.full();
        let chars = dual_group(&h).unwrap();
        let m = BimoduleClass::new(&h, &h, vec![(chars[0].clone(), g.element(&[1]).unwrap())]).unwrap();
        let t = twist(&m, &chars[1], &chars[0]).unwrap();
        assert_eq!(t.pairs()[0].0, chars[1]);
        assert_eq!(twist(&m, &chars[0], &chars[0]).unwrap(), m);
        let back = twist(&t, &chars[1].inv(), &chars[0].inv()).unwrap();
        assert_eq!(back, m);
        assert!(matches!(twist(&m, &chars[0], &Character::trivial(&g.trivial()).unwrap()), Err(Error::DomainMismatch)));
    }

    #[test]
    fn realizability() {
        let g = AbelianGroup::finite(&[2]).unwrap();
        let h = g.full();
        let chars = dual_group(&h).unwrap();
        assert!(realizable(&BimoduleClass::zero(&h, &h).unwrap()));
        let rep = BimoduleClass::new(&h, &h, vec![(chars[1].clone(), g.zero()), (chars[1].clone(), g.zero())]).unwrap();
        assert!(!realizable(&rep));
        assert_eq!(repeated_characters(&rep), vec![chars[1].clone()]);
        let ok = BimoduleClass::new(&h, &h, vec![(chars[0].clone(), g.zero()), (chars[1].clone(), g.zero())]).unwrap();
        assert!(realizable(&ok));
    }

    #[test]
    fn product_examples() {
        let g = AbelianGroup::finite(&[2]).unwrap();
        let h = g.full();
        let chars = dual_group(&h).unwrap();
        let m12 = BimoduleClass::new(&h, &h, vec![(chars[1].clone(), g.zero())]).unwrap();
        let m23 = BimoduleClass::new(&h, &h, vec![(chars[0].clone(), g.element(&[1]).unwrap())]).unwrap();
        let p = bimodule_product(&m12, &m23).unwrap();
        // degree 1 is stored as the representative 0 of 1 + (H₁ + H₃)
        let expected = BimoduleClass::new(&h, &h, vec![(chars[1].clone(), g.element(&[1]).unwrap())]).unwrap();
        assert_eq!(p, expected);
        assert_eq!(p.pairs()[0].1, g.zero());
        let empty = BimoduleClass::zero(&h, &h).unwrap();
        assert!(bimodule_product(&m12, &empty).unwrap().is_empty());

        let z4 = AbelianGroup::finite(&[4]).unwrap();
        let (full, two) = (z4.full(), sub(&z4, &[&[2]]));
        let sigma = dual_group(&two).unwrap()[1].clone();
        let a = BimoduleClass::new(&full, &two, vec![(sigma, z4.zero())]).unwrap();
        let b = BimoduleClass::new(&two, &full, vec![(Character::trivial(&two).unwrap(), z4.element(&[1]).unwrap())])
            .unwrap();
        let p = bimodule_product(&a, &b).unwrap();
        let values: Vec<Phase> = p.characters().map(|c| c.values()[0]).collect();
        assert_eq!(values, vec![Phase::new(1, 4), Phase::new(3, 4)]);
        assert!(matches!(bimodule_product(&a, &a), Err(Error::ChainMismatch)));
    }

    #[test]
    fn conflicting_degrees() {
        let g = AbelianGroup::finite(&[2]).unwrap();
        let t = g.trivial();
        let one = Character::trivial(&t).unwrap();
        let m12 = BimoduleClass::new(&t, &t, vec![(one.clone(), g.zero())]).unwrap();
        let m23 = BimoduleClass::new(&t, &t, vec![(one.clone(), g.zero()), (one, g.element(&[1]).unwrap())]).unwrap();
        assert!(matches!(bimodule_product(&m12, &m23), Err(Error::DegreeConflict { .. })));
    }
}
