//! Grading data `((E, ≤), {Hᵢ}, {Mᵢⱼ}_{i⋖j})`: validation, realization as a
//! graded incidence algebra, and isomorphism testing.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_integer::Integer;

use crate::abelian::{AbelianGroup, GroupElement, Subgroup};
use crate::bimodule::{product_pairs, repeated_characters, twist, BimoduleClass};
use crate::cyclo::CycloNumber;
use crate::duality::{dual_group, Character, Phase};
use crate::error::{Error, Result};
use crate::incidence::IncidenceElement;
use crate::poset::{poset_isomorphisms, Poset};

type Pairs = Vec<(Character, GroupElement)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingDatum {
    ambient: AbelianGroup,
    skeleton: Arc<Poset>,
    blocks: Vec<Subgroup>,
    covers: BTreeMap<(usize, usize), BimoduleClass>,
}

impl GradingDatum {
    /// `blocks[i]` is the subgroup on skeleton element `i`; `covers` must have
    /// exactly one nonzero class per cover `i ⋖ j`, over `(Hᵢ, Hⱼ)`.
    pub fn new(
        ambient: AbelianGroup,
        skeleton: Poset,
        blocks: Vec<Subgroup>,
        covers: BTreeMap<(usize, usize), BimoduleClass>,
    ) -> Result<Self> {
        if blocks.len() != skeleton.len() {
            return Err(Error::InvalidDatum(format!(
                "{} blocks for {} skeleton elements",
                blocks.len(),
                skeleton.len()
            )));
        }
        if let Some(l) = skeleton.labels().iter().find(|l| l.contains(',')) {
            return Err(Error::InvalidDatum(format!("label {l:?} contains a comma")));
        }
        for (i, h) in blocks.iter().enumerate() {
            if h.ambient() != &ambient {
                return Err(Error::AmbientMismatch);
            }
            if !h.is_finite() {
                return Err(Error::InvalidDatum(format!("block {} is infinite", skeleton.label(i))));
            }
        }
        let expected: BTreeSet<(usize, usize)> = skeleton.covers().iter().copied().collect();
        for &(i, j) in covers.keys() {
            if !expected.contains(&(i, j)) {
                let name = |x: usize| skeleton.labels().get(x).cloned().unwrap_or_else(|| format!("#{x}"));
                return Err(Error::InvalidDatum(format!("{} ⋖ {} is not a cover", name(i), name(j))));
            }
        }
        for &(i, j) in &expected {
            let (li, lj) = (skeleton.label(i), skeleton.label(j));
            let m = covers
                .get(&(i, j))
                .ok_or_else(|| Error::InvalidDatum(format!("missing bimodule on cover {li} ⋖ {lj}")))?;
            if m.left() != &blocks[i] || m.right() != &blocks[j] {
                return Err(Error::InvalidDatum(format!("bimodule on {li} ⋖ {lj} acts on the wrong blocks")));
            }
            if m.is_empty() {
                return Err(Error::InvalidDatum(format!("bimodule on cover {li} ⋖ {lj} is zero")));
            }
        }
        Ok(GradingDatum { ambient, skeleton: Arc::new(skeleton), blocks, covers })
    }

    /// Same as [`GradingDatum::new`], with blocks and bimodules keyed by label.
    pub fn from_labels(
        ambient: AbelianGroup,
        skeleton: Poset,
        blocks: &BTreeMap<String, Subgroup>,
        bimodules: &BTreeMap<(String, String), BimoduleClass>,
    ) -> Result<Self> {
        let lookup = |l: &str| {
            skeleton
                .index_of(l)
                .ok_or_else(|| Error::InvalidDatum(format!("unknown skeleton element {l:?}")))
        };
        let mut bl: Vec<Option<Subgroup>> = vec![None; skeleton.len()];
        for (l, h) in blocks {
            bl[lookup(l)?] = Some(h.clone());
        }
        let bl = bl
            .into_iter()
            .enumerate()
            .map(|(i, h)| h.ok_or_else(|| Error::InvalidDatum(format!("no block for {}", skeleton.label(i)))))
            .collect::<Result<Vec<_>>>()?;
        let mut covers = BTreeMap::new();
        for ((a, b), m) in bimodules {
            covers.insert((lookup(a)?, lookup(b)?), m.clone());
        }
        Self::new(ambient, skeleton, bl, covers)
    }

    pub fn ambient(&self) -> &AbelianGroup {
        &self.ambient
    }

    pub fn skeleton(&self) -> &Arc<Poset> {
        &self.skeleton
    }

    pub fn blocks(&self) -> &[Subgroup] {
        &self.blocks
    }

    pub fn cover_bimodules(&self) -> &BTreeMap<(usize, usize), BimoduleClass> {
        &self.covers
    }

    /// Exponents of the blocks, in skeleton order.
    pub fn exponents(&self) -> Vec<u64> {
        self.blocks.iter().map(|h| h.exponent().expect("finite blocks")).collect()
    }

    /// `N = lcm(exp Hᵢ)`; `Q(ζ_N)` splits every block.
    pub fn conductor(&self) -> u64 {
        self.exponents().into_iter().fold(1, |a, e| a.lcm(&e))
    }

    pub fn realize(&self) -> Result<RealizedGrading> {
        realize(self)
    }

    fn label(&self, i: usize) -> String {
        self.skeleton.label(i).to_string()
    }
}

/// Exact-degree bimodules for every comparable pair, plus every derivation
/// failure met on the way.
pub(crate) struct Derivation {
    pub full: BTreeMap<(usize, usize), Pairs>,
    pub errors: Vec<((usize, usize), Error)>,
}

/// Non-cover bimodules are products along intermediate elements. Each cover
/// keeps its canonical degree as exact anchor; derived anchors are sums of
/// anchors and must agree exactly over every factorization and every
/// intermediate element.
pub(crate) fn derive_anchored(d: &GradingDatum) -> Result<Derivation> {
    let sk = &d.skeleton;
    let mut pairs: Vec<(usize, usize)> = (0..sk.len())
        .flat_map(|i| (0..sk.len()).filter(move |&k| sk.lt(i, k)).map(move |k| (i, k)))
        .collect();
    pairs.sort_by_key(|&(i, k)| (sk.between(i, k).len(), i, k));
    let mut full: BTreeMap<(usize, usize), Pairs> = BTreeMap::new();
    let mut errors = Vec::new();
    for (i, k) in pairs {
        if let Some(m) = d.covers.get(&(i, k)) {
            full.insert((i, k), m.pairs().to_vec());
            continue;
        }
        let mut chosen: Option<(usize, Pairs)> = None;
        for j in sk.between(i, k) {
            let exact = |a: &GroupElement, b: &GroupElement| Ok(a == b);
            let (hi, hj, hk) = (&d.blocks[i], &d.blocks[j], &d.blocks[k]);
            match product_pairs(hi, hj, hk, &full[&(i, j)], &full[&(j, k)], exact)? {
                Err((chi, first, second)) => errors.push((
                    (i, k),
                    Error::DegreeConflict {
                        character: chi.to_string(),
                        first: first.to_string(),
                        second: second.to_string(),
                    },
                )),
                Ok(p) => match &chosen {
                    None => chosen = Some((j, p)),
                    Some((j0, p0)) => {
                        if *p0 != p {
                            errors.push((
                                (i, k),
                                Error::ChainInconsistency {
                                    from: d.label(i),
                                    to: d.label(k),
                                    via_first: d.label(*j0),
                                    via_second: d.label(j),
                                },
                            ));
                        }
                    }
                },
            }
        }
        full.insert((i, k), chosen.map(|(_, p)| p).unwrap_or_default());
    }
    Ok(Derivation { full, errors })
}

/// Bimodule classes for every comparable pair `i < j`: stored classes on
/// covers, products along intermediate elements elsewhere.
pub fn derive_full_bimodules(d: &GradingDatum) -> Result<BTreeMap<(usize, usize), BimoduleClass>> {
    let der = derive_anchored(d)?;
    if let Some((_, e)) = der.errors.into_iter().next() {
        return Err(e);
    }
    der.full
        .into_iter()
        .map(|((i, k), p)| Ok(((i, k), BimoduleClass::new(&d.blocks[i], &d.blocks[k], p)?)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationViolation {
    /// Number of the realizability condition that fails (1, 2 or 3).
    pub condition: u8,
    pub kind: String,
    pub from: String,
    pub to: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// Conductor of the base field `Q(ζ_N)`, `N = lcm(exp Hᵢ)`.
    pub conductor: u64,
    /// `exp Hᵢ` per skeleton element label.
    pub exponents: Vec<(String, u64)>,
    pub violations: Vec<ValidationViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn condition_holds(&self, condition: u8) -> bool {
        self.violations.iter().all(|v| v.condition != condition)
    }
}

/// Checks the realizability conditions:
/// (1) the base field has a primitive `exp Hᵢ`-th root of unity and
/// characteristic prime to `|Hᵢ|`, which `Q(ζ_N)` always satisfies;
/// (2) every cover class has pairwise distinct characters;
/// (3) products along all chains agree, with consistent degrees.
pub fn validate_datum(d: &GradingDatum) -> ValidationReport {
    let mut violations = Vec::new();
    for (&(i, j), m) in &d.covers {
        for chi in repeated_characters(m) {
            violations.push(ValidationViolation {
                condition: 2,
                kind: "RepeatedCharacter".into(),
                from: d.label(i),
                to: d.label(j),
                message: format!("character {chi} occurs more than once"),
            });
        }
    }
    match derive_anchored(d) {
        Ok(der) => {
            for ((i, k), e) in der.errors {
                violations.push(ValidationViolation {
                    condition: 3,
                    kind: e.kind().into(),
                    from: d.label(i),
                    to: d.label(k),
                    message: e.to_string(),
                });
            }
        }
        Err(e) => violations.push(ValidationViolation {
            condition: 3,
            kind: e.kind().into(),
            from: String::new(),
            to: String::new(),
            message: e.to_string(),
        }),
    }
    ValidationReport {
        conductor: d.conductor(),
        exponents: (0..d.blocks.len()).map(|i| d.label(i)).zip(d.exponents()).collect(),
        violations,
    }
}

/// A homogeneous element of a realized grading.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousElement {
    pub element: IncidenceElement,
    pub degree: GroupElement,
}

/// The incidence algebra `I(X)` of the poset built from a datum, with a
/// homogeneous basis sorted by degree.
#[derive(Clone, Debug, PartialEq)]
pub struct RealizedGrading {
    ambient: AbelianGroup,
    skeleton: Arc<Poset>,
    blocks: Vec<Subgroup>,
    poset: Arc<Poset>,
    vertices: Vec<(usize, Character)>,
    conductor: u64,
    basis: Vec<HomogeneousElement>,
}

impl RealizedGrading {
    /// Assembles a realized grading from its parts; vertices are `(block,
    /// character of that block)` in poset order.
    pub fn from_parts(
        ambient: AbelianGroup,
        skeleton: Arc<Poset>,
        blocks: Vec<Subgroup>,
        poset: Arc<Poset>,
        vertices: Vec<(usize, Character)>,
        basis: Vec<HomogeneousElement>,
    ) -> Result<Self> {
        if vertices.len() != poset.len() || blocks.len() != skeleton.len() {
            return Err(Error::InvalidDatum("vertex or block count mismatch".into()));
        }
        for (b, chi) in &vertices {
            if *b >= blocks.len() || chi.domain() != &blocks[*b] {
                return Err(Error::InvalidDatum("vertex character is not over its block".into()));
            }
        }
        for e in &basis {
            ambient.check(&e.degree)?;
            if !Arc::ptr_eq(e.element.poset(), &poset) && **e.element.poset() != *poset {
                return Err(Error::PosetMismatch);
            }
        }
        let conductor = blocks.iter().map(|h| h.exponent()).try_fold(1u64, |a, e| e.map(|e| a.lcm(&e)))?;
        Ok(RealizedGrading { ambient, skeleton, blocks, poset, vertices, conductor, basis })
    }

    pub fn ambient(&self) -> &AbelianGroup {
        &self.ambient
    }

    pub fn skeleton(&self) -> &Arc<Poset> {
        &self.skeleton
    }

    pub fn blocks(&self) -> &[Subgroup] {
        &self.blocks
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    /// `(block, η)` for each vertex of the poset.
    pub fn vertices(&self) -> &[(usize, Character)] {
        &self.vertices
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn basis(&self) -> &[HomogeneousElement] {
        &self.basis
    }

    pub fn basis_mut(&mut self) -> &mut Vec<HomogeneousElement> {
        &mut self.basis
    }

    /// Vertex indices of each block.
    pub fn block_members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks.len()];
        for (x, (b, _)) in self.vertices.iter().enumerate() {
            out[*b].push(x);
        }
        out
    }

    /// Basis indices grouped by degree.
    pub fn components(&self) -> BTreeMap<GroupElement, Vec<usize>> {
        let mut out: BTreeMap<GroupElement, Vec<usize>> = BTreeMap::new();
        for (i, e) in self.basis.iter().enumerate() {
            out.entry(e.degree.clone()).or_default().push(i);
        }
        out
    }
}

/// Table of `ζ_N^a`, `0 ≤ a < N`.
pub(crate) struct Roots {
    n: u64,
    table: Vec<CycloNumber>,
}

impl Roots {
    pub fn new(n: u64) -> Self {
        let table = (0..n).map(|a| CycloNumber::root_of_unity_in(Phase::new(a as i64, n), n)).collect();
        Roots { n, table }
    }

    pub fn get(&self, p: Phase) -> &CycloNumber {
        &self.table[(p.numer() * (self.n / p.denom())) as usize]
    }
}

/// Builds the poset `X = ⊔ Ĥᵢ` and a homogeneous basis of `I(X)`.
///
/// `(i, η) ≤ (k, η')` for `i < k` iff `η|·η'|⁻¹` (restrictions to `Hᵢ ∩ Hₖ`) is a
/// character of `Mᵢₖ`. The diagonal block of `i` carries `ψ(h) = Σ η(h) e_η`
/// in degree `h`. For a summand `(χ, a)` of `Mᵢₖ` and `s ∈ Hᵢ + Hₖ`, written
/// `s = h + k` with `h` lexicographically least, the element
/// `Σ_{η ≾_χ η'} η(h) η'(k) e_{ηη'}` has degree `a + s`.
pub fn realize(d: &GradingDatum) -> Result<RealizedGrading> {
    let report = validate_datum(d);
    if !report.is_valid() {
        let msg: Vec<String> = report.violations.iter().map(|v| v.message.clone()).collect();
        return Err(Error::NotValid(msg.join("; ")));
    }
    let full = derive_anchored(d)?.full;
    let amb = &d.ambient;
    let n = d.conductor();
    let roots = Roots::new(n);

    let mut vertices = Vec::new();
    let mut labels = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (i, h) in d.blocks.iter().enumerate() {
        let mut mine = Vec::new();
        for eta in dual_group(h)? {
            mine.push(vertices.len());
            labels.push(format!("{}:{}", d.skeleton.label(i), eta));
            vertices.push((i, eta));
        }
        members.push(mine);
    }

    let nv = vertices.len();
    let mut leq = vec![vec![false; nv]; nv];
    for (x, row) in leq.iter_mut().enumerate() {
        row[x] = true;
    }
    // relation pairs per (i, k), tagged by the index of their character in Mᵢₖ
    let mut related: BTreeMap<(usize, usize), Vec<(usize, usize, usize)>> = BTreeMap::new();
    for (&(i, k), pairs) in &full {
        let meet = d.blocks[i].intersect(&d.blocks[k])?;
        let index: BTreeMap<&Character, usize> = pairs.iter().enumerate().map(|(t, (c, _))| (c, t)).collect();
        let right: Vec<Character> = members[k]
            .iter()
            .map(|&y| Ok(vertices[y].1.restrict(&meet)?.inv()))
            .collect::<Result<_>>()?;
        let mut rel = Vec::new();
        for &x in &members[i] {
            let left = vertices[x].1.restrict(&meet)?;
            for (&y, r) in members[k].iter().zip(&right) {
                if let Some(&t) = index.get(&left.mul(r)?) {
                    leq[x][y] = true;
                    rel.push((x, y, t));
                }
            }
        }
        related.insert((i, k), rel);
    }
    let poset = Arc::new(Poset::from_order(labels, leq).map_err(|e| match e {
        Error::InvalidPoset(_) | Error::CycleDetected(..) => Error::InternalTransitivityFailure,
        other => other,
    })?);

    let mut basis = Vec::new();
    for (i, h) in d.blocks.iter().enumerate() {
        for g in h.enumerate()? {
            let coords = h.coordinates(&g)?;
            let terms = members[i]
                .iter()
                .map(|&x| ((x, x), roots.get(vertices[x].1.eval_coords(&coords)).clone()));
            let element = IncidenceElement::from_terms(&poset, terms)?;
            basis.push(HomogeneousElement { element, degree: g });
        }
    }
    for (&(i, k), pairs) in &full {
        let (hi, hk) = (&d.blocks[i], &d.blocks[k]);
        let join = hi.sum(hk)?;
        let hi_elems = hi.enumerate()?;
        for s in join.enumerate()? {
            let h = hi_elems
                .iter()
                .find(|h| hk.contains(&amb.sub(&s, h)).unwrap_or(false))
                .expect("s lies in Hᵢ + Hₖ")
                .clone();
            let hc = hi.coordinates(&h)?;
            let kc = hk.coordinates(&amb.sub(&s, &h))?;
            for (t, (_, anchor)) in pairs.iter().enumerate() {
                let terms = related[&(i, k)].iter().filter(|r| r.2 == t).map(|&(x, y, _)| {
                    let p = vertices[x].1.eval_coords(&hc).add(vertices[y].1.eval_coords(&kc));
                    ((x, y), roots.get(p).clone())
                });
                let element = IncidenceElement::from_terms(&poset, terms)?;
                basis.push(HomogeneousElement { element, degree: amb.add(anchor, &s) });
            }
        }
    }
    basis.sort_by(|a, b| a.degree.cmp(&b.degree));
    Ok(RealizedGrading {
        ambient: d.ambient.clone(),
        skeleton: d.skeleton.clone(),
        blocks: d.blocks.clone(),
        poset,
        vertices,
        conductor: n,
        basis,
    })
}

/// Witness of a grading isomorphism `d ≅ d'`: the skeleton isomorphism `α`
/// (as indices of `d'`) and characters `μᵢ ∈ Ĥᵢ` with
/// `Mᵢⱼ ≅ twist(M'_{α(i)α(j)}, μᵢ, μⱼ)` on every cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingIsomorphism {
    pub alpha: Vec<usize>,
    pub mu: Vec<Character>,
}

pub fn grading_iso(d: &GradingDatum, d_prime: &GradingDatum) -> Result<Option<GradingIsomorphism>> {
    if d.ambient != d_prime.ambient {
        return Err(Error::AmbientMismatch);
    }
    let same_block = |x: usize, y: usize| d.blocks[x] == d_prime.blocks[y];
    let order = d.skeleton.linear_extension();
    let duals: Vec<Vec<Character>> = d.blocks.iter().map(dual_group).collect::<Result<_>>()?;
    for alpha in poset_isomorphisms(&d.skeleton, &d_prime.skeleton, Some(&same_block)) {
        let mut mu: Vec<Option<Character>> = vec![None; d.blocks.len()];
        if search_mu(d, d_prime, &alpha, &order, &duals, 0, &mut mu)? {
            return Ok(Some(GradingIsomorphism { alpha, mu: mu.into_iter().map(Option::unwrap).collect() }));
        }
    }
    Ok(None)
}

fn search_mu(
    d: &GradingDatum,
    dp: &GradingDatum,
    alpha: &[usize],
    order: &[usize],
    duals: &[Vec<Character>],
    depth: usize,
    mu: &mut Vec<Option<Character>>,
) -> Result<bool> {
    if depth == order.len() {
        return Ok(true);
    }
    let x = order[depth];
    for cand in &duals[x] {
        mu[x] = Some(cand.clone());
        let mut ok = true;
        for (&(a, b), m) in &d.covers {
            if a != x && b != x {
                continue;
            }
            if let (Some(ma), Some(mb)) = (&mu[a], &mu[b]) {
                let other = &dp.covers[&(alpha[a], alpha[b])];
                if twist(other, ma, mb)? != *m {
                    ok = false;
                    break;
                }
            }
        }
        if ok && search_mu(d, dp, alpha, order, duals, depth + 1, mu)? {
            return Ok(true);
        }
    }
    mu[x] = None;
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_datum(g: &AbelianGroup, blocks: Vec<Subgroup>, covers: Vec<Pairs>) -> Result<GradingDatum> {
        let n = blocks.len();
        let mut map = BTreeMap::new();
        for (i, p) in covers.into_iter().enumerate() {
            map.insert((i, i + 1), BimoduleClass::new(&blocks[i], &blocks[i + 1], p)?);
        }
        GradingDatum::new(g.clone(), Poset::chain(n), blocks, map)
    }

    #[test]
    fn structural_checks() {
        let g = AbelianGroup::finite(&[2]).unwrap();
        let t = g.trivial();
        let one = Character::trivial(&t).unwrap();
        assert!(matches!(chain_datum(&g, vec![t.clone(), t.clone()], vec![vec![]]), Err(Error::InvalidDatum(_))));
        let m = BimoduleClass::new(&t, &t, vec![(one, g.zero())]).unwrap();
        let missing = GradingDatum::new(g.clone(), Poset::chain(2), vec![t.clone(), t.clone()], BTreeMap::new());
        assert!(matches!(missing, Err(Error::InvalidDatum(_))));
        let mut extra = BTreeMap::new();
        extra.insert((0, 1), m.clone());
        extra.insert((1, 0), m);
        assert!(GradingDatum::new(g, Poset::chain(2), vec![t.clone(), t], extra).is_err());
    }

    #[test]
    fn single_block_is_valid() {
        let g = AbelianGroup::finite(&[2, 4]).unwrap();
        let d = GradingDatum::new(g.clone(), Poset::chain(1), vec![g.full()], BTreeMap::new()).unwrap();
        let r = validate_datum(&d);
        assert!(r.is_valid());
        assert_eq!(r.conductor, 4);
        let real = d.realize().unwrap();
        assert_eq!(real.poset().len(), 8);
        assert_eq!(real.basis().len(), 8);
    }

    #[test]
    fn chain_of_trivial_blocks() {
        let g = AbelianGroup::finite(&[3]).unwrap();
        let t = g.trivial();
        let one = Character::trivial(&t).unwrap();
        let d = chain_datum(
            &g,
            vec![t.clone(), t.clone(), t.clone()],
            vec![vec![(one.clone(), g.element(&[1]).unwrap())], vec![(one, g.element(&[1]).unwrap())]],
        )
        .unwrap();
        let full = derive_full_bimodules(&d).unwrap();
        assert_eq!(full[&(0, 2)].pairs()[0].1, g.element(&[2]).unwrap());
        let r = d.realize().unwrap();
        assert_eq!(r.poset().len(), 3);
        assert_eq!(r.basis().len(), 6);
        assert_eq!(r.components().len(), 3);
    }

    #[test]
    fn z4_over_z2_block_counts() {
        let g = AbelianGroup::finite(&[4]).unwrap();
        let two = Subgroup::generated(&g, &[g.element(&[2]).unwrap()]).unwrap();
        let sigma = dual_group(&two).unwrap()[1].clone();
        let d = chain_datum(&g, vec![g.full(), two], vec![vec![(sigma, g.element(&[1]).unwrap())]]).unwrap();
        let r = d.realize().unwrap();
        assert_eq!(r.poset().len(), 6);
        assert_eq!(r.poset().comparable_pairs().len(), 10);
        assert_eq!(r.basis().len(), 10);
    }

    #[test]
    fn repeated_character_fails_condition_two() {
        let g = AbelianGroup::finite(&[2]).unwrap();
        let h = g.full();
        let chi = dual_group(&h).unwrap()[1].clone();
        let d = chain_datum(&g, vec![h.clone(), h], vec![vec![(chi.clone(), g.zero()), (chi, g.zero())]]).unwrap();
        let r = validate_datum(&d);
        assert!(!r.is_valid());
        assert!(!r.condition_holds(2));
        assert!(r.condition_holds(3));
        assert!(matches!(d.realize(), Err(Error::NotValid(_))));
    }

    #[test]
    fn identity_witness() {
        let g = AbelianGroup::finite(&[2]).unwrap();
        let h = g.full();
        let chars = dual_group(&h).unwrap();
        let d = chain_datum(&g, vec![h.clone(), h.clone()], vec![vec![(chars[0].clone(), g.zero())]]).unwrap();
        let w = grading_iso(&d, &d).unwrap().unwrap();
        assert_eq!(w.alpha, vec![0, 1]);
        assert!(w.mu.iter().all(Character::is_trivial));
        // over H₁₂ = Z/2 every character is a twist of every other
        let e = chain_datum(&g, vec![h.clone(), h], vec![vec![(chars[1].clone(), g.zero())]]).unwrap();
        assert!(grading_iso(&d, &e).unwrap().is_some());
    }
}
