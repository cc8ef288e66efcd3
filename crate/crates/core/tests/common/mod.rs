#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use incidence_grading::{
    dual_group, AbelianGroup, BimoduleClass, Character, GradingDatum, GroupElement, Poset, Subgroup,
};
use rand::seq::SliceRandom;
use rand::Rng;

/// The ambient groups of the soundness sweeps.
pub fn sweep_groups() -> Vec<AbelianGroup> {
    [&[2][..], &[3], &[4], &[2, 2], &[6], &[8], &[2, 4]]
        .iter()
        .map(|t| AbelianGroup::finite(t).unwrap())
        .collect()
}

pub fn group_name(g: &AbelianGroup) -> String {
    let parts: Vec<String> = g.torsion().iter().map(|d| format!("Z/{d}")).collect();
    parts.join("x")
}

/// Every element of a finite ambient group, by brute force over coordinates.
pub fn elements(g: &AbelianGroup) -> Vec<GroupElement> {
    let mut out = vec![vec![]];
    for &d in g.torsion() {
        out = out
            .into_iter()
            .flat_map(|c: Vec<i64>| (0..d as i64).map(move |x| [c.clone(), vec![x]].concat()))
            .collect();
    }
    out.iter().map(|c| g.element(c).unwrap()).collect()
}

/// Every subgroup of a group of rank ≤ 2 (each is generated by two elements).
pub fn all_subgroups(g: &AbelianGroup) -> Vec<Subgroup> {
    let els = elements(g);
    let mut seen = BTreeSet::new();
    for a in &els {
        for b in &els {
            seen.insert(Subgroup::generated(g, &[a.clone(), b.clone()]).unwrap());
        }
    }
    seen.into_iter().collect()
}

pub fn chain_datum(g: &AbelianGroup, blocks: &[Subgroup], covers: &[Vec<(Character, GroupElement)>]) -> GradingDatum {
    let mut map = BTreeMap::new();
    for (i, p) in covers.iter().enumerate() {
        map.insert((i, i + 1), BimoduleClass::new(&blocks[i], &blocks[i + 1], p.clone()).unwrap());
    }
    GradingDatum::new(g.clone(), Poset::chain(blocks.len()), blocks.to_vec(), map).unwrap()
}

/// A random poset on `n` elements labelled `a`, `b`, …
pub fn random_poset<R: Rng>(rng: &mut R, n: usize) -> Poset {
    let labels: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                pairs.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    // shuffle labels so that the index order is not always a linear extension
    let mut shuffled = labels.clone();
    shuffled.shuffle(rng);
    Poset::from_relation(&shuffled, &pairs).unwrap()
}

/// A random datum on a random skeleton, with cover classes of distinct
/// characters and random degrees. Not necessarily valid.
pub fn random_datum<R: Rng>(
    rng: &mut R,
    g: &AbelianGroup,
    subgroups: &[Subgroup],
    max_elements: usize,
    min_block_order: u64,
) -> GradingDatum {
    let els = elements(g);
    let pool: Vec<&Subgroup> = subgroups.iter().filter(|h| h.order().unwrap() >= min_block_order).collect();
    let n = rng.gen_range(1..=max_elements);
    let skeleton = random_poset(rng, n);
    let blocks: Vec<Subgroup> = (0..n).map(|_| (*pool.choose(rng).unwrap()).clone()).collect();
    let mut covers = BTreeMap::new();
    for &(i, j) in skeleton.covers() {
        let meet = blocks[i].intersect(&blocks[j]).unwrap();
        let mut chars = dual_group(&meet).unwrap();
        chars.shuffle(rng);
        let t = rng.gen_range(1..=chars.len().min(2));
        let pairs = chars[..t].iter().map(|c| (c.clone(), els.choose(rng).unwrap().clone())).collect();
        covers.insert((i, j), BimoduleClass::new(&blocks[i], &blocks[j], pairs).unwrap());
    }
    GradingDatum::new(g.clone(), skeleton, blocks, covers).unwrap()
}

/// Relabels a datum along a skeleton automorphism and twists every cover by
/// the given characters: block `i` moves to `alpha[i]`, and
/// `M'_{α(i)α(j)} = twist(Mᵢⱼ, μᵢ, μⱼ)`.
pub fn relabel_and_twist(d: &GradingDatum, alpha: &[usize], mu: &[Character]) -> GradingDatum {
    let mut blocks = d.blocks().to_vec();
    for (i, &a) in alpha.iter().enumerate() {
        blocks[a] = d.blocks()[i].clone();
    }
    let mut covers = BTreeMap::new();
    for (&(i, j), m) in d.cover_bimodules() {
        covers.insert((alpha[i], alpha[j]), incidence_grading::twist(m, &mu[i], &mu[j]).unwrap());
    }
    GradingDatum::new(d.ambient().clone(), (**d.skeleton()).clone(), blocks, covers).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Characters-and-cosets multiset of a class after twisting by `(μl, μr)`,
/// computed from restriction tables without the library's twist.
fn twisted_signature(m: &BimoduleClass, ml: &Character, mr: &Character) -> Vec<(Character, GroupElement)> {
    let meet = m.meet();
    let shift = ml.restrict(meet).unwrap().mul(&mr.restrict(meet).unwrap().inv()).unwrap();
    let join = m.left().sum(m.right()).unwrap();
    let mut out: Vec<_> = m
        .pairs()
        .iter()
        .map(|(c, g)| (shift.mul(c).unwrap(), join.coset_representative(g).unwrap()))
        .collect();
    out.sort();
    out
}

fn signature(m: &BimoduleClass) -> Vec<(Character, GroupElement)> {
    let join = m.left().sum(m.right()).unwrap();
    let mut out: Vec<_> = m.pairs().iter().map(|(c, g)| (c.clone(), join.coset_representative(g).unwrap())).collect();
    out.sort();
    out
}

/// Exhaustive isomorphism test: every permutation of the skeleton, every
/// tuple of characters.
pub fn brute_force_iso(d: &GradingDatum, e: &GradingDatum) -> bool {
    let (p, q) = (d.skeleton(), e.skeleton());
    if p.len() != q.len() {
        return false;
    }
    let n = p.len();
    let duals: Vec<Vec<Character>> = d.blocks().iter().map(|h| dual_group(h).unwrap()).collect();
    for perm in permutations(n) {
        let order_ok = (0..n).all(|i| (0..n).all(|j| p.leq(i, j) == q.leq(perm[i], perm[j])));
        if !order_ok || (0..n).any(|i| d.blocks()[i] != e.blocks()[perm[i]]) {
            continue;
        }
        let targets: Vec<((usize, usize), Vec<(Character, GroupElement)>)> =
            d.cover_bimodules().iter().map(|(&k, m)| (k, signature(m))).collect();
        let total: usize = duals.iter().map(Vec::len).product();
        for mut code in 0..total {
            let mut mu = Vec::with_capacity(n);
            for ds in &duals {
                mu.push(ds[code % ds.len()].clone());
                code /= ds.len();
            }
            let ok = targets.iter().all(|((i, j), sig)| {
                let other = &e.cover_bimodules()[&(perm[*i], perm[*j])];
                twisted_signature(other, &mu[*i], &mu[*j]) == *sig
            });
            if ok {
                return true;
            }
        }
    }
    false
}

pub fn random_element<R: Rng>(rng: &mut R, g: &AbelianGroup) -> GroupElement {
    let c: Vec<i64> = g.torsion().iter().map(|&d| rng.gen_range(0..d as i64)).collect();
    g.element(&c).unwrap()
}

/// Subgroup generated by up to three random elements.
pub fn random_subgroup<R: Rng>(rng: &mut R, g: &AbelianGroup) -> Subgroup {
    let n = rng.gen_range(0..=3);
    let gens: Vec<GroupElement> = (0..n).map(|_| random_element(rng, g)).collect();
    Subgroup::generated(g, &gens).unwrap()
}

/// Subgroup of `h` generated by up to two random elements of `h`.
pub fn random_subgroup_of<R: Rng>(rng: &mut R, h: &Subgroup) -> Subgroup {
    let els = h.enumerate().unwrap();
    let n = rng.gen_range(0..=2);
    let gens: Vec<GroupElement> = (0..n).map(|_| els.choose(rng).unwrap().clone()).collect();
    Subgroup::generated(h.ambient(), &gens).unwrap()
}

/// Finite groups of order at most 64, mixed ranks.
pub fn groups_up_to_64() -> Vec<AbelianGroup> {
    [&[64][..], &[60], &[8, 8], &[3, 9], &[2, 4, 8], &[2, 2, 2, 2], &[2, 2, 2, 6], &[4, 12], &[5, 10]]
        .iter()
        .map(|t| AbelianGroup::finite(t).unwrap())
        .collect()
}
