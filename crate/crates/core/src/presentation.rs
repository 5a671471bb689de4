//! Finite presentations of the fundamental group by the edge-path
//! construction, and their abelianization.
//!
//! Words are sequences of nonzero signed generator indices, 1-based: `k`
//! is generator `k - 1` and `-k` its inverse. Words are read in walking
//! order.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianQuotient, FGAbelianGroup};
use crate::error::{Error, Result};
use crate::homotopy::Path;
use crate::simplicial::Simplex1;
use crate::space::{SpanningTree, Space};

pub type Word = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<GroupPresentation> {
        let n = generators.len() as i32;
        for (i, r) in relators.iter().enumerate() {
            if r.iter().any(|&l| l == 0 || l.abs() > n) {
                return Err(Error::Parse(format!("relator {i} references an unknown generator")));
            }
        }
        Ok(GroupPresentation { generators, relators })
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    /// Exponent-sum vector of a word.
    pub fn exponents(&self, w: &[i32]) -> Vec<BigInt> {
        exponent_vector(self.ngens(), w)
    }

    pub fn abelian_quotient(&self) -> AbelianQuotient {
        let rows = self
            .relators
            .iter()
            .map(|r| {
                let mut v: BTreeMap<usize, i64> = BTreeMap::new();
                for &l in r {
                    *v.entry(l.unsigned_abs() as usize - 1).or_insert(0) += l.signum() as i64;
                }
                v.into_iter().filter(|e| e.1 != 0).collect()
            })
            .collect();
        AbelianQuotient::from_sparse(self.ngens(), rows)
    }
}

pub fn abelianize(g: &GroupPresentation) -> FGAbelianGroup {
    g.abelian_quotient().group().clone()
}

fn exponent_vector(n: usize, w: &[i32]) -> Vec<BigInt> {
    let mut v = vec![0i64; n];
    for &l in w {
        v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
    }
    v.into_iter().map(BigInt::from).collect()
}

pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|l| -l).collect()
}

pub fn product(a: &[i32], b: &[i32]) -> Word {
    let mut w = a.to_vec();
    w.extend_from_slice(b);
    free_reduce(&w)
}

/// The fundamental group at the basepoint of a [`Space`], with the data
/// needed to express loops as words.
#[derive(Clone, Debug)]
pub struct Pi1 {
    basepoint: usize,
    presentation: GroupPresentation,
    /// signed generator of each nondegenerate 1-simplex
    letter: HashMap<Simplex1, i32>,
    generator_simplex: Vec<Simplex1>,
    tree: SpanningTree,
    abelian: AbelianQuotient,
}

impl Pi1 {
    pub(crate) fn build(space: &Space) -> Result<Pi1> {
        let tree = space.tree()?.clone();
        let poset = space.poset();
        let mut letter = HashMap::new();
        let mut generator_simplex = Vec::new();
        let mut names = Vec::new();
        for s in space.edges() {
            if s.is_degenerate() || letter.contains_key(s) {
                continue;
            }
            generator_simplex.push(*s);
            names.push(s.label(poset));
            let g = generator_simplex.len() as i32;
            letter.insert(*s, g);
            if s.reverse() != *s {
                letter.insert(s.reverse(), -g);
            }
        }
        let trivial = |s: &Simplex1| s.is_degenerate() || tree.is_tree_edge(s) || tree.is_tree_edge(&s.reverse());
        let letters = |s: &Simplex1| -> Option<i32> {
            if trivial(s) {
                None
            } else {
                Some(letter[s])
            }
        };
        let mut relators = Vec::new();
        for v in 0..poset.len() {
            if let Some(e) = tree.parent_edge(v) {
                relators.push(vec![letter[&e].abs()]);
            }
        }
        let mut seen: HashSet<Word> = HashSet::new();
        for [f0, f1, f2] in space.triangles().all() {
            let mut w: Word = Vec::with_capacity(3);
            w.extend(letters(f2));
            w.extend(letters(f0));
            w.extend(letters(f1).map(|l| -l));
            let w = free_reduce(&w);
            if !w.is_empty() && seen.insert(w.clone()) {
                relators.push(w);
            }
        }
        let presentation = GroupPresentation { generators: names, relators };
        let abelian = presentation.abelian_quotient();
        Ok(Pi1 { basepoint: space.basepoint(), presentation, letter, generator_simplex, tree, abelian })
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    pub fn ngens(&self) -> usize {
        self.generator_simplex.len()
    }

    pub fn tree(&self) -> &SpanningTree {
        &self.tree
    }

    pub fn abelian(&self) -> &AbelianQuotient {
        &self.abelian
    }

    pub fn abelianization(&self) -> &FGAbelianGroup {
        self.abelian.group()
    }

    pub fn generator_simplex(&self, k: usize) -> Simplex1 {
        self.generator_simplex[k]
    }

    /// Whether generator `k` is killed outright (tree edge).
    pub fn is_tree_generator(&self, k: usize) -> bool {
        let s = self.generator_simplex[k];
        self.tree.is_tree_edge(&s) || self.tree.is_tree_edge(&s.reverse())
    }

    /// Signed generator of one step, `None` for degenerate and tree steps.
    pub fn step_letter(&self, s: &Simplex1) -> Option<i32> {
        if s.is_degenerate() || self.tree.is_tree_edge(s) || self.tree.is_tree_edge(&s.reverse()) {
            None
        } else {
            self.letter.get(s).copied()
        }
    }

    /// The word of the tree-closed path `tree(base, start) * p * tree(end, base)`.
    pub fn path_word(&self, p: &Path) -> Word {
        let w: Word = p.steps().iter().filter_map(|s| self.step_letter(s)).collect();
        free_reduce(&w)
    }

    pub fn class_in_pi1(&self, p: &Path) -> Result<Word> {
        if p.start() != self.basepoint || p.end() != self.basepoint {
            return Err(Error::EndpointMismatch);
        }
        Ok(self.path_word(p))
    }

    pub fn exponents(&self, w: &[i32]) -> Vec<BigInt> {
        self.presentation.exponents(w)
    }

    /// The loop `tree(base, ∂1 b) * b * tree(∂0 b, base)` for generator `k`.
    pub fn generator_loop(&self, k: usize) -> Path {
        let b = self.generator_simplex[k];
        let mut steps = self.tree.edges_to(b.d1);
        steps.push(b);
        steps.extend(self.tree.path_from(b.d0).steps().iter().filter(|s| !s.is_degenerate()));
        Path::new(steps).expect("tree loop composes")
    }

    /// A loop whose word is `w`.
    pub fn word_loop(&self, w: &[i32]) -> Path {
        let mut steps = Vec::new();
        for &l in w {
            let g = self.generator_loop(l.unsigned_abs() as usize - 1);
            let g = if l > 0 { g } else { g.reverse() };
            steps.extend_from_slice(g.steps());
        }
        if steps.is_empty() {
            return Path::constant(self.basepoint);
        }
        Path::new(steps).expect("loops at the basepoint compose")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn small_presentations() {
        let g = GroupPresentation::new(vec!["g".into()], vec![vec![1, 1, 1]]).unwrap();
        assert_eq!(abelianize(&g).torsion, vec![3]);
        let h = GroupPresentation::new(vec!["g".into(), "h".into()], vec![vec![1, 2, -1, -2]]).unwrap();
        assert_eq!(abelianize(&h), FGAbelianGroup::free(2));
        assert!(GroupPresentation::new(vec!["g".into()], vec![vec![2]]).is_err());
    }

    #[test]
    fn fixture_abelianizations() {
        assert!(fixtures::chain3().pi1().unwrap().abelianization().is_trivial());
        assert_eq!(fixtures::pseudocircle().pi1().unwrap().abelianization(), &FGAbelianGroup::free(1));
        assert!(fixtures::point().pi1().unwrap().abelianization().is_trivial());
    }

    #[test]
    fn gamma_word() {
        let space = fixtures::pseudocircle();
        let pi1 = space.pi1().unwrap();
        let gamma = fixtures::gamma(&space);
        let w = pi1.class_in_pi1(&gamma).unwrap();
        assert_eq!(w.len(), 1);
        let ww = pi1.class_in_pi1(&gamma.power(2)).unwrap();
        assert_eq!(ww, vec![w[0], w[0]]);
        assert_eq!(pi1.class_in_pi1(&gamma.reverse()).unwrap(), inverse(&w));
        assert!(pi1.class_in_pi1(&Path::constant(space.basepoint())).unwrap().is_empty());
    }

    #[test]
    fn word_helpers() {
        assert_eq!(free_reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(product(&[1, 2], &[-2, 3]), vec![1, 3]);
        assert_eq!(inverse(&[1, -2]), vec![2, -1]);
    }
}
