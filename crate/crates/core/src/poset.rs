//! Finite posets stored as a full closure matrix.
//!
//! Elements are opaque string identifiers. On construction they are sorted
//! lexicographically, so element indices (and everything enumerated from
//! them) are canonical and independent of declaration order.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// On-disk form of a poset: `[a, b]` in `covers` declares `a <= b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<Vec<bool>>,
}

impl Poset {
    /// Builds the poset whose order is the reflexive-transitive closure of
    /// `covers`.
    pub fn new<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Poset> {
        let mut names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        names.sort();
        for w in names.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateElement(w[0].clone()));
            }
        }
        let index: HashMap<String, usize> =
            names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in covers {
            let ia = *index
                .get(a.as_ref())
                .ok_or_else(|| Error::UnknownElement(a.as_ref().to_string()))?;
            let ib = *index
                .get(b.as_ref())
                .ok_or_else(|| Error::UnknownElement(b.as_ref().to_string()))?;
            leq[ia][ib] = true;
        }
        Self::close(names, index, leq)
    }

    /// Builds a poset from a relation given as a predicate on indices of
    /// `names` (taken in the given order); the relation is closed.
    pub fn from_relation<F>(names: Vec<String>, rel: F) -> Result<Poset>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = names.len();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && rel(i, j) {
                    pairs.push((names[i].clone(), names[j].clone()));
                }
            }
        }
        Poset::new(&names, &pairs)
    }

    fn close(names: Vec<String>, index: HashMap<String, usize>, mut leq: Vec<Vec<bool>>) -> Result<Poset> {
        let n = names.len();
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
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::OrderCycle(names[i].clone(), names[j].clone()));
                }
            }
        }
        Ok(Poset { names, index, leq })
    }

    pub fn from_file(file: &PosetFile) -> Result<Poset> {
        let covers: Vec<(String, String)> =
            file.covers.iter().map(|[a, b]| (a.clone(), b.clone())).collect();
        Poset::new(&file.elements, &covers)
    }

    /// Canonical file form: sorted elements and the Hasse diagram.
    pub fn to_file(&self) -> PosetFile {
        PosetFile {
            elements: self.names.clone(),
            covers: self
                .hasse()
                .into_iter()
                .map(|(a, b)| [self.names[a].clone(), self.names[b].clone()])
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    #[inline]
    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq[a][b] || self.leq[b][a]
    }

    /// `a` is covered by `b`: `a < b` with nothing strictly between.
    pub fn covered_by(&self, a: usize, b: usize) -> bool {
        self.lt(a, b) && (0..self.len()).all(|c| !(self.lt(a, c) && self.lt(c, b)))
    }

    /// Hasse diagram as `(lower, upper)` pairs in lexicographic order.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.covered_by(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// All strictly comparable pairs `(lower, upper)`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The opposite order on the same elements.
    pub fn dual(&self) -> Poset {
        let n = self.len();
        let mut leq = vec![vec![false; n]; n];
        for (a, row) in leq.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                *cell = self.leq[b][a];
            }
        }
        Poset { names: self.names.clone(), index: self.index.clone(), leq }
    }

    pub fn is_upward_directed(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| (0..n).any(|c| self.leq(a, c) && self.leq(b, c))))
    }

    pub fn is_downward_directed(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| (0..n).any(|c| self.leq(c, a) && self.leq(c, b))))
    }

    /// `V_a = { c : a <= c }`, the minimal open set containing `a` in the
    /// Alexandroff topology.
    pub fn up_set(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&c| self.leq(a, c)).collect()
    }

    pub fn down_set(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&c| self.leq(c, a)).collect()
    }

    /// The fundamental covering `a -> V_a`.
    pub fn fundamental_covering(&self) -> Vec<Vec<usize>> {
        (0..self.len()).map(|a| self.up_set(a)).collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| (0..self.len()).all(|b| !self.lt(b, a)))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| (0..self.len()).all(|b| !self.lt(a, b)))
            .collect()
    }

    /// Connected components of the comparability graph restricted to
    /// `subset`, each sorted, ordered by least member.
    pub fn components_of(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let members: BTreeSet<usize> = subset.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &s in &members {
            if seen.contains(&s) {
                continue;
            }
            let mut comp = vec![s];
            seen.insert(s);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &members {
                    if !seen.contains(&v) && self.comparable(u, v) {
                        seen.insert(v);
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.len()).collect();
        self.components_of(&all)
    }

    pub fn is_connected(&self) -> bool {
        !self.is_empty() && self.components().len() == 1
    }

    /// The induced subposet on `subset` (names kept).
    pub fn subposet(&self, subset: &[usize]) -> Poset {
        let names: Vec<String> = subset.iter().map(|&i| self.names[i].clone()).collect();
        let rel = |i: usize, j: usize| self.leq(subset[i], subset[j]);
        Poset::from_relation(names, rel).expect("restriction of a partial order is a partial order")
    }

    /// Whether `subset` is upward closed.
    pub fn is_up_set(&self, subset: &[usize]) -> bool {
        let s: BTreeSet<usize> = subset.iter().copied().collect();
        s.iter().all(|&a| (0..self.len()).all(|b| !self.leq(a, b) || s.contains(&b)))
    }

    /// Order automorphism check for a permutation of the elements.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let n = self.len();
        if perm.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &p in perm {
            if p >= n || hit[p] {
                return false;
            }
            hit[p] = true;
        }
        (0..n).all(|a| (0..n).all(|b| self.leq(a, b) == self.leq(perm[a], perm[b])))
    }
}

/// Cartesian product with componentwise order; element `(p, q)` is named
/// `"p|q"`.
#[derive(Clone, Debug)]
pub struct ProductPoset {
    pub poset: Arc<Poset>,
    pairs: Vec<(usize, usize)>,
    lookup: HashMap<(usize, usize), usize>,
}

impl ProductPoset {
    pub fn pair(&self, i: usize) -> (usize, usize) {
        self.pairs[i]
    }

    pub fn index(&self, left: usize, right: usize) -> usize {
        self.lookup[&(left, right)]
    }
}

pub fn product_poset(left: &Poset, right: &Poset) -> ProductPoset {
    let mut raw = Vec::new();
    for p in 0..left.len() {
        for q in 0..right.len() {
            raw.push((p, q));
        }
    }
    let names: Vec<String> = raw
        .iter()
        .map(|&(p, q)| format!("{}|{}", left.name(p), right.name(q)))
        .collect();
    let poset = Poset::from_relation(names.clone(), |i, j| {
        left.leq(raw[i].0, raw[j].0) && right.leq(raw[i].1, raw[j].1)
    })
    .expect("product of partial orders is a partial order");
    let mut pairs = vec![(0, 0); raw.len()];
    let mut lookup = HashMap::new();
    for (k, name) in names.iter().enumerate() {
        let i = poset.index_of(name).expect("name present");
        pairs[i] = raw[k];
        lookup.insert(raw[k], i);
    }
    ProductPoset { poset: Arc::new(poset), pairs, lookup }
}

/// An order-preserving map between posets.
#[derive(Clone, Debug)]
pub struct PosetMorphism {
    source: Arc<Poset>,
    target: Arc<Poset>,
    map: Vec<usize>,
}

impl PosetMorphism {
    pub fn new(source: Arc<Poset>, target: Arc<Poset>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::Parse(format!(
                "morphism has {} images for {} elements",
                map.len(),
                source.len()
            )));
        }
        for &m in &map {
            if m >= target.len() {
                return Err(Error::UnknownElement(format!("#{m}")));
            }
        }
        for a in 0..source.len() {
            for b in 0..source.len() {
                if source.leq(a, b) && !target.leq(map[a], map[b]) {
                    return Err(Error::NotOrderPreserving(
                        source.name(a).to_string(),
                        source.name(b).to_string(),
                    ));
                }
            }
        }
        Ok(PosetMorphism { source, target, map })
    }

    /// Builds a morphism from a name-to-name assignment.
    pub fn from_names(
        source: Arc<Poset>,
        target: Arc<Poset>,
        assignment: &[(&str, &str)],
    ) -> Result<Self> {
        let mut map = vec![usize::MAX; source.len()];
        for (s, t) in assignment {
            map[source.require(s)?] = target.require(t)?;
        }
        if let Some(i) = map.iter().position(|&m| m == usize::MAX) {
            return Err(Error::UnknownElement(source.name(i).to_string()));
        }
        PosetMorphism::new(source, target, map)
    }

    pub fn identity(poset: Arc<Poset>) -> Self {
        let map = (0..poset.len()).collect();
        PosetMorphism { source: poset.clone(), target: poset, map }
    }

    pub fn constant(source: Arc<Poset>, target: Arc<Poset>, value: usize) -> Self {
        let map = vec![value; source.len()];
        PosetMorphism { source, target, map }
    }

    pub fn source(&self) -> &Arc<Poset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Poset> {
        &self.target
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn compose(&self, after: &PosetMorphism) -> Result<PosetMorphism> {
        if *after.source != *self.target {
            return Err(Error::BaseMismatch);
        }
        let map = self.map.iter().map(|&m| after.map[m]).collect();
        Ok(PosetMorphism { source: self.source.clone(), target: after.target.clone(), map })
    }
}
