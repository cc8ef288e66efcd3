//! Finite posets with a dense order matrix, cover relations, order
//! isomorphism search and block link counts.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<Vec<bool>>,
    covers: Vec<(usize, usize)>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers
            .iter()
            .map(|&(a, b)| format!("{}<{}", self.labels[a], self.labels[b]))
            .collect();
        write!(f, "Poset{{{:?}; {}}}", self.labels, covers.join(", "))
    }
}

impl Poset {
    /// Reflexive-transitive closure of `pairs` (read as `x ≤ y`).
    pub fn from_relation<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let index = index_labels(&labels)?;
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in pairs {
            let lookup = |s: &str| {
                index
                    .get(s)
                    .copied()
                    .ok_or_else(|| Error::InvalidPoset(format!("unknown element {s:?}")))
            };
            let (i, j) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            leq[i][j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_order(labels, leq)
    }

    /// Builds a poset from a full order matrix, which must already be a
    /// partial order.
    pub fn from_order(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let index = index_labels(&labels)?;
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidPoset("order matrix has the wrong shape".into()));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(Error::InvalidPoset(format!("{} is not related to itself", labels[i])));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::CycleDetected(labels[i].clone(), labels[j].clone()));
                }
                if leq[i][j] && (0..n).any(|k| leq[j][k] && !leq[i][k]) {
                    return Err(Error::InvalidPoset("order matrix is not transitive".into()));
                }
            }
        }
        let mut covers = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && !(0..n).any(|k| k != i && k != j && leq[i][k] && leq[k][j]) {
                    covers.push((i, j));
                }
            }
        }
        Ok(Poset { labels, index, leq, covers })
    }

    /// The chain `0 < 1 < … < n-1` with labels `"1"…"n"`.
    pub fn chain(n: usize) -> Self {
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let leq = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
        Self::from_order(labels, leq).expect("chains are posets")
    }

    pub fn antichain(n: usize) -> Self {
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let leq = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        Self::from_order(labels, leq).expect("antichains are posets")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq[i][j]
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn is_cover(&self, i: usize, j: usize) -> bool {
        self.covers.contains(&(i, j))
    }

    /// All pairs `(x, y)` with `x ≤ y`, row-major.
    pub fn comparable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (0..n).filter(move |&j| self.leq[i][j]).map(move |j| (i, j)))
            .collect()
    }

    /// Elements strictly between `i` and `k`.
    pub fn between(&self, i: usize, k: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| self.lt(i, j) && self.lt(j, k))
            .collect()
    }

    fn down_size(&self, i: usize) -> usize {
        (0..self.len()).filter(|&k| self.leq[k][i]).count()
    }

    fn up_size(&self, i: usize) -> usize {
        (0..self.len()).filter(|&k| self.leq[i][k]).count()
    }

    /// A linear extension: elements sorted by the size of their down-set.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.down_size(i), i));
        order
    }
}

fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::InvalidPoset(format!("duplicate element {l:?}")));
        }
    }
    Ok(index)
}

/// Lazily enumerates the order isomorphisms `p → q`, as maps from indices of
/// `p` to indices of `q`, in a deterministic order.
pub struct Isomorphisms<'a> {
    p: &'a Poset,
    q: &'a Poset,
    constraint: Option<&'a dyn Fn(usize, usize) -> bool>,
    order: Vec<usize>,
    q_profile: Vec<(usize, usize)>,
    p_profile: Vec<(usize, usize)>,
    assignment: Vec<Option<usize>>,
    used: Vec<bool>,
    next_candidate: Vec<usize>,
    done: bool,
}

/// Order isomorphisms `p → q` accepted by `constraint(x, y)` for every mapped
/// pair `x ↦ y`.
pub fn poset_isomorphisms<'a>(
    p: &'a Poset,
    q: &'a Poset,
    constraint: Option<&'a dyn Fn(usize, usize) -> bool>,
) -> Isomorphisms<'a> {
    let done = p.len() != q.len();
    Isomorphisms {
        p,
        q,
        constraint,
        order: p.linear_extension(),
        p_profile: (0..p.len()).map(|i| (p.down_size(i), p.up_size(i))).collect(),
        q_profile: (0..q.len()).map(|i| (q.down_size(i), q.up_size(i))).collect(),
        assignment: vec![None; p.len()],
        used: vec![false; q.len()],
        next_candidate: vec![0],
        done,
    }
}

impl Isomorphisms<'_> {
    fn admissible(&self, x: usize, y: usize) -> bool {
        if self.used[y] || self.p_profile[x] != self.q_profile[y] {
            return false;
        }
        if let Some(c) = self.constraint {
            if !c(x, y) {
                return false;
            }
        }
        self.assignment.iter().enumerate().all(|(x2, a)| match *a {
            Some(y2) => self.p.leq(x2, x) == self.q.leq(y2, y) && self.p.leq(x, x2) == self.q.leq(y, y2),
            None => true,
        })
    }
}

impl Iterator for Isomorphisms<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let n = self.p.len();
        loop {
            let depth = self.next_candidate.len() - 1;
            if depth == n {
                let result: Vec<usize> = self.assignment.iter().map(|a| a.expect("complete")).collect();
                // backtrack one level so the next call continues the search
                self.next_candidate.pop();
                if let Some(prev) = depth.checked_sub(1) {
                    let x = self.order[prev];
                    let y = self.assignment[x].take().expect("assigned");
                    self.used[y] = false;
                } else {
                    self.done = true;
                }
                return Some(result);
            }
            let x = self.order[depth];
            let start = self.next_candidate[depth];
            let found = (start..self.q.len()).find(|&y| self.admissible(x, y));
            match found {
                Some(y) => {
                    self.next_candidate[depth] = y + 1;
                    self.assignment[x] = Some(y);
                    self.used[y] = true;
                    self.next_candidate.push(0);
                }
                None => {
                    self.next_candidate.pop();
                    if depth == 0 {
                        self.done = true;
                        return None;
                    }
                    let px = self.order[depth - 1];
                    let y = self.assignment[px].take().expect("assigned");
                    self.used[y] = false;
                }
            }
        }
    }
}

/// Link counts `ℓ` between distinct blocks of a partition.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinkCounts {
    /// `ℓ(Bᵢ, Bⱼ)` for `i ≠ j`: pairs `x ∈ Bᵢ, y ∈ Bⱼ` with `x ≤ y`.
    pub blocks: BTreeMap<(usize, usize), usize>,
    /// `ℓ(x, Bⱼ)` for `x` outside `Bⱼ`.
    pub element_to_block: BTreeMap<(usize, usize), usize>,
    /// `ℓ(Bᵢ, y)` for `y` outside `Bᵢ`.
    pub block_to_element: BTreeMap<(usize, usize), usize>,
}

pub fn link_counts(p: &Poset, blocks: &[Vec<usize>]) -> Result<LinkCounts> {
    let mut owner = vec![None; p.len()];
    for (b, members) in blocks.iter().enumerate() {
        for &x in members {
            if x >= p.len() {
                return Err(Error::InvalidPartition(format!("element index {x} out of range")));
            }
            if owner[x].replace(b).is_some() {
                return Err(Error::InvalidPartition(format!("{} lies in two blocks", p.label(x))));
            }
        }
    }
    if let Some(x) = owner.iter().position(Option::is_none) {
        return Err(Error::InvalidPartition(format!("{} lies in no block", p.label(x))));
    }
    let mut out = LinkCounts::default();
    for (i, bi) in blocks.iter().enumerate() {
        for (j, bj) in blocks.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut total = 0;
            for &x in bi {
                let c = bj.iter().filter(|&&y| p.leq(x, y)).count();
                out.element_to_block.insert((x, j), c);
                total += c;
            }
            for &y in bj {
                let c = bi.iter().filter(|&&x| p.leq(x, y)).count();
                out.block_to_element.insert((i, y), c);
            }
            out.blocks.insert((i, j), total);
        }
    }
    Ok(out)
}
