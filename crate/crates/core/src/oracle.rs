//! Brute-force checks inside the concrete algebra `I(X)`.
//!
//! Nothing here trusts how a [`RealizedGrading`] was built: degrees are read
//! off the basis, characters off the vertex labels, and every claim is
//! decided by exact rank computations over `Q(ζ_N)`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::abelian::GroupElement;
use crate::bimodule::BimoduleClass;
use crate::cyclo::CycloNumber;
use crate::datum::{HomogeneousElement, RealizedGrading, Roots};
use crate::duality::{dual_group, Character};
use crate::error::{Error, Result};
use crate::incidence::IncidenceElement;
use crate::linalg::KSpan;
use crate::poset::link_counts;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradingViolation {
    /// The basis does not have `dim I(X)` elements.
    BasisSize { expected: usize, found: usize },
    /// Basis element `index` lies in the span of the earlier ones.
    DependentBasisElement { index: usize },
    /// `b_left · b_right` is not in the component of degree `degree`.
    Product { left: usize, right: usize, degree: GroupElement },
    /// `Σ e_x` is not homogeneous of degree 0.
    IdentityNotHomogeneous,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub dimension: usize,
    pub basis_rank: usize,
    pub products_checked: usize,
    pub violations: Vec<GradingViolation>,
}

impl VerificationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

fn column_index(r: &RealizedGrading) -> HashMap<(usize, usize), usize> {
    r.poset().comparable_pairs().into_iter().enumerate().map(|(i, p)| (p, i)).collect()
}

fn entries<'a>(
    e: &'a IncidenceElement,
    cols: &'a HashMap<(usize, usize), usize>,
) -> impl Iterator<Item = (usize, &'a CycloNumber)> + 'a {
    e.terms().iter().map(move |(k, v)| (cols[k], v))
}

/// Checks that the basis is a basis of `I(X)`, that `A_g A_h ⊆ A_{g+h}` on
/// every ordered pair of basis elements, and that the unit has degree 0.
pub fn verify_grading(r: &RealizedGrading) -> VerificationReport {
    let cols = column_index(r);
    let dim = cols.len();
    let n = r.conductor();
    let amb = r.ambient();
    let basis = r.basis();
    let mut violations = Vec::new();
    if basis.len() != dim {
        violations.push(GradingViolation::BasisSize { expected: dim, found: basis.len() });
    }
    let mut all = KSpan::new(n, dim);
    let mut by_degree: BTreeMap<&GroupElement, KSpan> = BTreeMap::new();
    for (i, b) in basis.iter().enumerate() {
        if !all.insert(entries(&b.element, &cols)) {
            violations.push(GradingViolation::DependentBasisElement { index: i });
        }
        by_degree
            .entry(&b.degree)
            .or_insert_with(|| KSpan::new(n, dim))
            .insert(entries(&b.element, &cols));
    }
    let mut checked = 0;
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let p = match a.element.try_mul(&b.element) {
                Ok(p) => p,
                Err(_) => {
                    violations.push(GradingViolation::Product { left: i, right: j, degree: amb.add(&a.degree, &b.degree) });
                    continue;
                }
            };
            if p.is_zero() {
                continue;
            }
            checked += 1;
            let g = amb.add(&a.degree, &b.degree);
            let inside = by_degree.get(&g).is_some_and(|s| s.contains(entries(&p, &cols)));
            if !inside {
                violations.push(GradingViolation::Product { left: i, right: j, degree: g });
            }
        }
    }
    let one = IncidenceElement::identity(r.poset());
    let zero = amb.zero();
    if !by_degree.get(&zero).is_some_and(|s| s.contains(entries(&one, &cols))) {
        violations.push(GradingViolation::IdentityNotHomogeneous);
    }
    VerificationReport { dimension: dim, basis_rank: all.rank(), products_checked: checked, violations }
}

/// `ψᵢ(h) = Σ_{η ∈ Ĥᵢ} η(h) e_η`, read from the vertex characters of block `i`.
pub fn psi(r: &RealizedGrading, block: usize, h: &GroupElement) -> Result<IncidenceElement> {
    let roots = Roots::new(r.conductor());
    let mut terms = Vec::new();
    for (x, (b, eta)) in r.vertices().iter().enumerate() {
        if *b == block {
            terms.push(((x, x), roots.get(eta.eval(h)?).clone()));
        }
    }
    IncidenceElement::from_terms(r.poset(), terms)
}

/// Basis elements whose support lies in the block pair `(i, k)`.
pub fn block_elements(r: &RealizedGrading, i: usize, k: usize) -> Vec<HomogeneousElement> {
    let v = r.vertices();
    r.basis()
        .iter()
        .filter(|b| {
            !b.element.is_zero() && b.element.terms().keys().all(|&(x, y)| v[x].0 == i && v[y].0 == k)
        })
        .cloned()
        .collect()
}

/// Products `M_ij · M_jk` of homogeneous basis elements over every `j`
/// strictly between `i` and `k`.
pub fn radical_square_products(r: &RealizedGrading, i: usize, k: usize) -> Result<Vec<HomogeneousElement>> {
    let sk = r.skeleton();
    let mids = if sk.lt(i, k) { sk.between(i, k) } else { Vec::new() };
    if mids.is_empty() {
        return Err(Error::NoIntermediateBlock(sk.label(i).into(), sk.label(k).into()));
    }
    let amb = r.ambient();
    let mut out = Vec::new();
    for j in mids {
        let left = block_elements(r, i, j);
        let right = block_elements(r, j, k);
        for a in &left {
            for b in &right {
                let p = a.element.try_mul(&b.element)?;
                if !p.is_zero() {
                    out.push(HomogeneousElement { element: p, degree: amb.add(&a.degree, &b.degree) });
                }
            }
        }
    }
    Ok(out)
}

/// One isotypic piece of a subspace of the block pair `(i, k)` under the
/// twist action of `Hᵢ ∩ Hₖ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicPiece {
    pub character: Character,
    /// Rank of `π_χ` on the span.
    pub rank: usize,
    /// Rank of `π_χ` on the homogeneous elements of each degree.
    pub degree_ranks: BTreeMap<GroupElement, usize>,
}

/// `π_χ(e) = |H|⁻¹ Σ_h χ(h)⁻¹ ψᵢ(h) · e · ψₖ(-h)` for a character `χ` of
/// `H = Hᵢ ∩ Hₖ`.
pub fn project(r: &RealizedGrading, i: usize, k: usize, chi: &Character, e: &IncidenceElement) -> Result<IncidenceElement> {
    let amb = r.ambient();
    let meet = r.blocks()[i].intersect(&r.blocks()[k])?;
    if chi.domain() != &meet {
        return Err(Error::DomainMismatch);
    }
    let roots = Roots::new(r.conductor());
    let hs = meet.enumerate()?;
    let mut acc = IncidenceElement::zero(r.poset());
    for h in &hs {
        let t = psi(r, i, h)?.try_mul(e)?.try_mul(&psi(r, k, &amb.neg(h))?)?;
        acc = acc.try_add(&t.scale(roots.get(chi.eval(h)?.neg())))?;
    }
    Ok(acc.scale_rational(&BigRational::new(BigInt::from(1), BigInt::from(hs.len() as i64))))
}

/// Splits the span of `elements` (all inside block pair `(i, k)`) with the
/// projectors `π_χ = |H|⁻¹ Σ_h χ(h)⁻¹ L_{ψᵢ(h)} R_{ψₖ(-h)}`, `H = Hᵢ ∩ Hₖ`.
/// Every character of `H` gets a piece, possibly of rank 0.
pub fn isotypic_decomposition(
    r: &RealizedGrading,
    i: usize,
    k: usize,
    elements: &[HomogeneousElement],
) -> Result<Vec<IsotypicPiece>> {
    let cols = column_index(r);
    let dim = cols.len();
    let n = r.conductor();
    let roots = Roots::new(n);
    let amb = r.ambient();
    let meet = r.blocks()[i].intersect(&r.blocks()[k])?;
    let hs = meet.enumerate()?;
    let order = hs.len() as i64;
    let scale = BigRational::new(BigInt::from(1), BigInt::from(order));
    let sides: Vec<(IncidenceElement, IncidenceElement)> = hs
        .iter()
        .map(|h| Ok((psi(r, i, h)?, psi(r, k, &amb.neg(h))?)))
        .collect::<Result<_>>()?;
    // twisted copies ψᵢ(h) · e · ψₖ(-h) of every element, shared by all projectors
    let twisted: Vec<Vec<IncidenceElement>> = elements
        .iter()
        .map(|e| {
            sides
                .iter()
                .map(|(l, rr)| Ok(l.try_mul(&e.element)?.try_mul(rr)?))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for chi in dual_group(&meet)? {
        let weights: Vec<CycloNumber> =
            hs.iter().map(|h| Ok(roots.get(chi.eval(h)?.neg()).clone())).collect::<Result<_>>()?;
        let mut total = KSpan::new(n, dim);
        let mut per_degree: BTreeMap<GroupElement, KSpan> = BTreeMap::new();
        for (e, copies) in elements.iter().zip(&twisted) {
            let mut acc = IncidenceElement::zero(r.poset());
            for (w, c) in weights.iter().zip(copies) {
                acc = acc.try_add(&c.scale(w))?;
            }
            let q = acc.scale_rational(&scale);
            if q.is_zero() {
                continue;
            }
            total.insert(entries(&q, &cols));
            per_degree
                .entry(e.degree.clone())
                .or_insert_with(|| KSpan::new(n, dim))
                .insert(entries(&q, &cols));
        }
        out.push(IsotypicPiece {
            character: chi,
            rank: total.rank(),
            degree_ranks: per_degree.into_iter().map(|(g, s)| (g, s.rank())).collect(),
        });
    }
    Ok(out)
}

/// Rank of the span of the given elements.
pub fn span_rank(r: &RealizedGrading, elements: &[HomogeneousElement]) -> usize {
    let cols = column_index(r);
    let mut s = KSpan::new(r.conductor(), cols.len());
    for e in elements {
        s.insert(entries(&e.element, &cols));
    }
    s.rank()
}

/// Reads a bimodule class off isotypic pieces: a piece whose degrees fill
/// `m` cosets' worth of `Hᵢ + Hₖ` contributes `(χ, coset)` with the
/// corresponding multiplicity.
pub fn class_from_pieces(r: &RealizedGrading, i: usize, k: usize, pieces: &[IsotypicPiece]) -> Result<BimoduleClass> {
    let (hi, hk) = (&r.blocks()[i], &r.blocks()[k]);
    let join = hi.sum(hk)?;
    let size = join.order().ok_or(Error::InfiniteSubgroup)? as usize;
    let mut pairs = Vec::new();
    for piece in pieces {
        let mut cosets: BTreeMap<GroupElement, usize> = BTreeMap::new();
        for (g, &rk) in &piece.degree_ranks {
            *cosets.entry(join.coset_representative(g)?).or_default() += rk;
        }
        for (rep, rk) in cosets {
            if rk % size != 0 {
                return Err(Error::Oracle(format!(
                    "character {} has rank {rk} on the coset of {rep}, not a multiple of {size}",
                    piece.character
                )));
            }
            for _ in 0..rk / size {
                pairs.push((piece.character.clone(), rep.clone()));
            }
        }
    }
    BimoduleClass::new(hi, hk, pairs)
}

/// The `(i, k)` part of `J(I(X))²`, decomposed into a bimodule class.
pub fn radical_square_component(r: &RealizedGrading, i: usize, k: usize) -> Result<BimoduleClass> {
    let products = radical_square_products(r, i, k)?;
    let pieces = isotypic_decomposition(r, i, k, &products)?;
    class_from_pieces(r, i, k, &pieces)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkEntry {
    pub from: String,
    pub to: String,
    /// `ℓ(Ĥᵢ, Ĥₖ)`.
    pub total: usize,
    /// `|Hᵢ|·ℓ(ηᵢ, Ĥₖ)` for each vertex of block `i`.
    pub from_vertices: Vec<usize>,
    /// `|Hₖ|·ℓ(Ĥᵢ, ηₖ)` for each vertex of block `k`.
    pub to_vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkViolation {
    pub from: String,
    pub to: String,
    pub vertex: String,
    pub expected: usize,
    pub found: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinkReport {
    pub entries: Vec<LinkEntry>,
    pub violations: Vec<LinkViolation>,
}

impl LinkReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `ℓ(Ĥᵢ, Ĥₖ) = |Hᵢ| ℓ(ηᵢ, Ĥₖ) = |Hₖ| ℓ(Ĥᵢ, ηₖ)` for every comparable block pair
/// `i < k` and every vertex choice.
pub fn check_link_equation(r: &RealizedGrading) -> Result<LinkReport> {
    let members = r.block_members();
    let counts = link_counts(r.poset(), &members)?;
    let sk = r.skeleton();
    let p = r.poset();
    let mut report = LinkReport::default();
    for i in 0..sk.len() {
        for k in 0..sk.len() {
            if !sk.lt(i, k) {
                continue;
            }
            let total = counts.blocks[&(i, k)];
            let oi = r.blocks()[i].order().ok_or(Error::InfiniteSubgroup)? as usize;
            let ok = r.blocks()[k].order().ok_or(Error::InfiniteSubgroup)? as usize;
            let from_vertices: Vec<usize> = members[i].iter().map(|&x| oi * counts.element_to_block[&(x, k)]).collect();
            let to_vertices: Vec<usize> = members[k].iter().map(|&y| ok * counts.block_to_element[&(i, y)]).collect();
            for (&x, &v) in members[i].iter().zip(&from_vertices).chain(members[k].iter().zip(&to_vertices)) {
                if v != total {
                    report.violations.push(LinkViolation {
                        from: sk.label(i).into(),
                        to: sk.label(k).into(),
                        vertex: p.label(x).into(),
                        expected: total,
                        found: v,
                    });
                }
            }
            report.entries.push(LinkEntry {
                from: sk.label(i).into(),
                to: sk.label(k).into(),
                total,
                from_vertices,
                to_vertices,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{AbelianGroup, Subgroup};
    use crate::datum::GradingDatum;
    use crate::poset::Poset;

    fn two_block(g: &AbelianGroup, h1: Subgroup, h2: Subgroup, chi: Character, deg: GroupElement) -> RealizedGrading {
        let mut covers = BTreeMap::new();
        covers.insert((0, 1), BimoduleClass::new(&h1, &h2, vec![(chi, deg)]).unwrap());
        GradingDatum::new(g.clone(), Poset::chain(2), vec![h1, h2], covers).unwrap().realize().unwrap()
    }

    #[test]
    fn trivial_chain_is_clean() {
        let g = AbelianGroup::finite(&[2]).unwrap();
        let t = g.trivial();
        let r = two_block(&g, t.clone(), t.clone(), Character::trivial(&t).unwrap(), g.zero());
        let rep = verify_grading(&r);
        assert!(rep.is_clean(), "{rep:?}");
        assert_eq!(rep.dimension, 3);
        let links = check_link_equation(&r).unwrap();
        assert_eq!(links.entries[0].total, 1);
        assert!(links.is_clean());
    }

    #[test]
    fn degree_bump_is_caught() {
        let g = AbelianGroup::finite(&[4]).unwrap();
        let two = Subgroup::generated(&g, &[g.element(&[2]).unwrap()]).unwrap();
        let sigma = dual_group(&two).unwrap()[1].clone();
        let mut r = two_block(&g, g.full(), two, sigma, g.element(&[1]).unwrap());
        assert!(verify_grading(&r).is_clean());
        let last = r.basis().len() - 1;
        let bumped = g.add(&r.basis()[last].degree, &g.element(&[1]).unwrap());
        r.basis_mut()[last].degree = bumped;
        assert!(!verify_grading(&r).is_clean());
    }

    #[test]
    fn link_counts_on_z4_example() {
        let g = AbelianGroup::finite(&[4]).unwrap();
        let two = Subgroup::generated(&g, &[g.element(&[2]).unwrap()]).unwrap();
        let sigma = dual_group(&two).unwrap()[1].clone();
        let r = two_block(&g, g.full(), two, sigma, g.element(&[1]).unwrap());
        let links = check_link_equation(&r).unwrap();
        assert_eq!(links.entries.len(), 1);
        assert_eq!(links.entries[0].total, 4);
        assert!(links.entries[0].from_vertices.iter().all(|&v| v == 4));
        assert!(links.is_clean());
    }

    #[test]
    fn no_intermediate_block() {
        let g = AbelianGroup::finite(&[2]).unwrap();
        let t = g.trivial();
        let r = two_block(&g, t.clone(), t.clone(), Character::trivial(&t).unwrap(), g.zero());
        assert!(matches!(radical_square_component(&r, 0, 1), Err(Error::NoIntermediateBlock(..))));
    }
}
