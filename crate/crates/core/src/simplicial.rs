//! The nerve and the symmetric simplicial set of a poset, up to degree 2.
//!
//! Orientation: for a 1-simplex `b`, `d0` is the target and `d1` the
//! source, so `b_{i+1}` follows `b_i` in a path when `b_i.d0 == b_{i+1}.d1`.
//! A symmetric 2-simplex is a functor from the nonempty subsets of
//! `{0, 1, 2}`; writing `v_i` for the image of `{i}` and `e_ij` for the
//! image of `{i, j}`, its faces are
//!
//! ```text
//! ∂0 c = (e12; v2, v1)    ∂1 c = (e02; v2, v0)    ∂2 c = (e01; v1, v0)
//! ```
//!
//! so that the path `∂0 c * ∂2 c` runs `v0 -> v1 -> v2` alongside `∂1 c`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homotopy::Path;
use crate::poset::{Poset, ProductPoset};

/// A symmetric 1-simplex `(support; d0, d1)` with `d0, d1 <= support`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex1 {
    pub support: usize,
    pub d0: usize,
    pub d1: usize,
}

impl Simplex1 {
    pub fn new(poset: &Poset, support: usize, d0: usize, d1: usize) -> Result<Simplex1> {
        let s = Simplex1 { support, d0, d1 };
        if support >= poset.len() || d0 >= poset.len() || d1 >= poset.len() {
            return Err(Error::InvalidSimplex(format!("{s:?}: element out of range")));
        }
        if !poset.leq(d0, support) || !poset.leq(d1, support) {
            return Err(Error::InvalidSimplex(format!(
                "({}; {}, {}): faces must lie below the support",
                poset.name(support),
                poset.name(d0),
                poset.name(d1)
            )));
        }
        Ok(s)
    }

    pub fn from_names(poset: &Poset, support: &str, d0: &str, d1: &str) -> Result<Simplex1> {
        Simplex1::new(poset, poset.require(support)?, poset.require(d0)?, poset.require(d1)?)
    }

    /// `σ0 a = (a; a, a)`.
    pub fn degenerate(a: usize) -> Simplex1 {
        Simplex1 { support: a, d0: a, d1: a }
    }

    pub fn is_degenerate(&self) -> bool {
        self.support == self.d0 && self.d0 == self.d1
    }

    /// `b̄ = (support; d1, d0)`.
    pub fn reverse(&self) -> Simplex1 {
        Simplex1 { support: self.support, d0: self.d1, d1: self.d0 }
    }

    pub fn is_valid(&self, poset: &Poset) -> bool {
        poset.leq(self.d0, self.support) && poset.leq(self.d1, self.support)
    }

    pub fn label(&self, poset: &Poset) -> String {
        format!("({}; {}, {})", poset.name(self.support), poset.name(self.d0), poset.name(self.d1))
    }

    pub fn to_file(&self, poset: &Poset) -> Simplex1File {
        Simplex1File {
            support: poset.name(self.support).to_string(),
            d0: poset.name(self.d0).to_string(),
            d1: poset.name(self.d1).to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Simplex1File {
    pub support: String,
    pub d0: String,
    pub d1: String,
}

impl Simplex1File {
    pub fn resolve(&self, poset: &Poset) -> Result<Simplex1> {
        Simplex1::from_names(poset, &self.support, &self.d0, &self.d1)
    }
}

/// A symmetric 2-simplex: a support and three compatible faces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex2 {
    pub support: usize,
    pub faces: [Simplex1; 3],
}

impl Simplex2 {
    /// Builds the simplex from vertex images `v` and edge supports
    /// `e01, e02, e12`.
    pub fn from_functor(support: usize, v: [usize; 3], e01: usize, e02: usize, e12: usize) -> Simplex2 {
        Simplex2 {
            support,
            faces: [
                Simplex1 { support: e12, d0: v[2], d1: v[1] },
                Simplex1 { support: e02, d0: v[2], d1: v[0] },
                Simplex1 { support: e01, d0: v[1], d1: v[0] },
            ],
        }
    }

    pub fn new(poset: &Poset, support: usize, faces: [Simplex1; 3]) -> Result<Simplex2> {
        let c = Simplex2 { support, faces };
        if !c.is_valid(poset) {
            return Err(Error::InvalidSimplex(format!("{c:?}")));
        }
        Ok(c)
    }

    pub fn faces(&self) -> (Simplex1, Simplex1, Simplex1) {
        (self.faces[0], self.faces[1], self.faces[2])
    }

    /// `[v0, v1, v2]`.
    pub fn vertices(&self) -> [usize; 3] {
        [self.faces[1].d1, self.faces[2].d0, self.faces[0].d0]
    }

    pub fn is_valid(&self, poset: &Poset) -> bool {
        let [f0, f1, f2] = self.faces;
        self.faces.iter().all(|f| f.is_valid(poset) && poset.leq(f.support, self.support))
            && f0.d0 == f1.d0
            && f0.d1 == f2.d0
            && f1.d1 == f2.d1
    }

    /// `σ0 σ0 a`.
    pub fn degenerate(a: usize) -> Simplex2 {
        Simplex2::from_functor(a, [a, a, a], a, a, a)
    }

    pub fn to_file(&self, poset: &Poset) -> Simplex2File {
        Simplex2File {
            support: poset.name(self.support).to_string(),
            f0: self.faces[0].to_file(poset),
            f1: self.faces[1].to_file(poset),
            f2: self.faces[2].to_file(poset),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Simplex2File {
    pub support: String,
    pub f0: Simplex1File,
    pub f1: Simplex1File,
    pub f2: Simplex1File,
}

/// A 1-simplex of the nerve: a comparable pair `d1 <= d0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NerveSimplex1 {
    pub d0: usize,
    pub d1: usize,
}

/// A 2-simplex of the nerve: a chain `v0 <= v1 <= v2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NerveSimplex2 {
    pub chain: [usize; 3],
}

impl NerveSimplex1 {
    /// The symmetric simplex `(d0; d0, d1)`.
    pub fn embed(&self) -> Simplex1 {
        Simplex1 { support: self.d0, d0: self.d0, d1: self.d1 }
    }
}

impl NerveSimplex2 {
    pub fn embed(&self) -> Simplex2 {
        let [v0, v1, v2] = self.chain;
        Simplex2::from_functor(v2, [v0, v1, v2], v1, v2, v2)
    }
}

/// One enumerated simplex of either simplicial set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Simplex {
    Vertex(usize),
    Edge(Simplex1),
    Triangle(Simplex2),
    NerveEdge(NerveSimplex1),
    NerveTriangle(NerveSimplex2),
}

pub fn symmetric_1_simplices(poset: &Poset) -> Vec<Simplex1> {
    let n = poset.len();
    let mut out = Vec::new();
    for o in 0..n {
        let down = poset.down_set(o);
        for &d0 in &down {
            for &d1 in &down {
                out.push(Simplex1 { support: o, d0, d1 });
            }
        }
    }
    out
}

/// Calls `f(e01, e02, e12, [v0, v1, v2])` for every compatible choice of
/// edge supports below `bound` (any common lower bound data when `bound` is
/// `None`) and vertices.
fn for_each_functor<F>(poset: &Poset, edges: &[usize], mut admissible: impl FnMut(usize, usize, usize) -> bool, mut f: F)
where
    F: FnMut(usize, usize, usize, [usize; 3]),
{
    let n = poset.len();
    for &e01 in edges {
        for &e02 in edges {
            for &e12 in edges {
                if !admissible(e01, e02, e12) {
                    continue;
                }
                let below = |x: usize, y: usize| -> Vec<usize> {
                    (0..n).filter(|&v| poset.leq(v, x) && poset.leq(v, y)).collect()
                };
                let c0 = below(e01, e02);
                let c1 = below(e01, e12);
                let c2 = below(e02, e12);
                for &v0 in &c0 {
                    for &v1 in &c1 {
                        for &v2 in &c2 {
                            f(e01, e02, e12, [v0, v1, v2]);
                        }
                    }
                }
            }
        }
    }
}

/// All symmetric 2-simplices, including degenerate ones, in canonical order.
pub fn symmetric_2_simplices(poset: &Poset) -> Vec<Simplex2> {
    let mut out = Vec::new();
    for t in 0..poset.len() {
        let down = poset.down_set(t);
        for_each_functor(poset, &down, |_, _, _| true, |e01, e02, e12, v| {
            out.push(Simplex2::from_functor(t, v, e01, e02, e12));
        });
    }
    out.sort();
    out
}

/// Face triples of symmetric 2-simplices, one per triple regardless of
/// support. Boundaries, relators and deformations only see the faces.
pub fn distinct_face_triples(poset: &Poset) -> Vec<[Simplex1; 3]> {
    let n = poset.len();
    let all: Vec<usize> = (0..n).collect();
    let has_bound = |x: usize, y: usize, z: usize| {
        (0..n).any(|t| poset.leq(x, t) && poset.leq(y, t) && poset.leq(z, t))
    };
    let mut out = Vec::new();
    for_each_functor(poset, &all, has_bound, |e01, e02, e12, v| {
        out.push(Simplex2::from_functor(0, v, e01, e02, e12).faces);
    });
    out.sort();
    out
}

pub fn nerve_1_simplices(poset: &Poset) -> Vec<NerveSimplex1> {
    let n = poset.len();
    let mut out = Vec::new();
    for d1 in 0..n {
        for d0 in 0..n {
            if poset.leq(d1, d0) {
                out.push(NerveSimplex1 { d0, d1 });
            }
        }
    }
    out.sort();
    out
}

pub fn nerve_2_simplices(poset: &Poset) -> Vec<NerveSimplex2> {
    let n = poset.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if poset.leq(a, b) && poset.leq(b, c) {
                    out.push(NerveSimplex2 { chain: [a, b, c] });
                }
            }
        }
    }
    out
}

/// Complete, duplicate-free enumeration of the `n`-simplices (`n <= 2`).
pub fn enumerate_simplices(poset: &Poset, n: usize, symmetric: bool) -> Result<Vec<Simplex>> {
    let out = match (n, symmetric) {
        (0, _) => (0..poset.len()).map(Simplex::Vertex).collect(),
        (1, true) => symmetric_1_simplices(poset).into_iter().map(Simplex::Edge).collect(),
        (2, true) => symmetric_2_simplices(poset).into_iter().map(Simplex::Triangle).collect(),
        (1, false) => nerve_1_simplices(poset).into_iter().map(Simplex::NerveEdge).collect(),
        (2, false) => nerve_2_simplices(poset).into_iter().map(Simplex::NerveTriangle).collect(),
        _ => return Err(Error::InvalidSimplex(format!("degree {n} is not supported"))),
    };
    Ok(out)
}

/// Pairs two paths into a path of the product, padding the shorter one at
/// its start with degenerate steps at its starting point.
pub fn align_paths(left: &Path, right: &Path, product: &ProductPoset) -> Path {
    let pad = |p: &Path, len: usize| -> Vec<Simplex1> {
        let mut steps = vec![Simplex1::degenerate(p.start()); len - p.len()];
        steps.extend_from_slice(p.steps());
        steps
    };
    let len = left.len().max(right.len());
    let l = pad(left, len);
    let r = pad(right, len);
    let steps = l
        .iter()
        .zip(&r)
        .map(|(a, b)| Simplex1 {
            support: product.index(a.support, b.support),
            d0: product.index(a.d0, b.d0),
            d1: product.index(a.d1, b.d1),
        })
        .collect();
    Path::new(steps).expect("componentwise composable")
}

/// Projects a product path onto one factor (`0` left, `1` right).
pub fn project_path(p: &Path, product: &ProductPoset, side: usize) -> Path {
    let pick = |i: usize| {
        let (l, r) = product.pair(i);
        if side == 0 {
            l
        } else {
            r
        }
    };
    let steps = p
        .steps()
        .iter()
        .map(|s| Simplex1 { support: pick(s.support), d0: pick(s.d0), d1: pick(s.d1) })
        .collect();
    Path::new(steps).expect("projection preserves composability")
}

/// Distinct supports of a set of simplices; used by reports.
pub fn supports<'a>(it: impl IntoIterator<Item = &'a Simplex1>) -> BTreeSet<usize> {
    it.into_iter().map(|s| s.support).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::product_poset;

    fn chain3() -> Poset {
        Poset::new(&["0", "1", "2"], &[("0", "1"), ("1", "2")]).unwrap()
    }

    fn pseudocircle() -> Poset {
        Poset::new(&["a", "b", "x", "y"], &[("a", "x"), ("a", "y"), ("b", "x"), ("b", "y")]).unwrap()
    }

    #[test]
    fn nerve_edges_of_chain() {
        // brute force: comparable ordered pairs including reflexive ones
        let p = chain3();
        let brute = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).filter(|&(a, b)| p.leq(a, b)).count();
        assert_eq!(brute, 6);
        assert_eq!(enumerate_simplices(&p, 1, false).unwrap().len(), brute);
    }

    #[test]
    fn symmetric_edges_of_pseudocircle() {
        let p = pseudocircle();
        // exhaustive triple scan
        let mut brute = 0;
        for o in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    if p.leq(c, o) && p.leq(d, o) {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(brute, 20);
        let edges = symmetric_1_simplices(&p);
        assert_eq!(edges.len(), 20);
        let per_support = |s| edges.iter().filter(|e| e.support == s).count();
        assert_eq!([per_support(0), per_support(1), per_support(2), per_support(3)], [1, 1, 9, 9]);
    }

    #[test]
    fn one_point_has_one_triangle() {
        let p = Poset::new(&["p"], &[]).unwrap();
        let t = symmetric_2_simplices(&p);
        assert_eq!(t, vec![Simplex2::degenerate(0)]);
    }

    #[test]
    fn reversal_and_degeneracy() {
        let p = pseudocircle();
        let b = Simplex1::from_names(&p, "x", "b", "a").unwrap();
        assert_eq!(b.reverse(), Simplex1::from_names(&p, "x", "a", "b").unwrap());
        assert_eq!(b.reverse().reverse(), b);
        let s = Simplex1::degenerate(0);
        assert_eq!((s.support, s.d0, s.d1), (0, 0, 0));
        for e in symmetric_1_simplices(&p) {
            assert_eq!(e.reverse().d0, e.d1);
            assert_eq!(e.reverse().d1, e.d0);
        }
    }

    #[test]
    fn triangles_satisfy_vertex_compatibility() {
        for p in [chain3(), pseudocircle()] {
            for c in symmetric_2_simplices(&p) {
                let [f0, f1, f2] = c.faces;
                assert_eq!(f0.d0, f1.d0);
                assert_eq!(f0.d1, f2.d0);
                assert_eq!(f1.d1, f2.d1);
                assert!(c.is_valid(&p));
            }
        }
    }

    #[test]
    fn nerve_embedding_is_injective_and_valid() {
        let p = chain3();
        let e: BTreeSet<Simplex1> = nerve_1_simplices(&p).iter().map(|s| s.embed()).collect();
        assert_eq!(e.len(), 6);
        let sym: BTreeSet<Simplex1> = symmetric_1_simplices(&p).into_iter().collect();
        assert!(e.is_subset(&sym));
        let t: BTreeSet<Simplex2> = nerve_2_simplices(&p).iter().map(|s| s.embed()).collect();
        assert_eq!(t.len(), nerve_2_simplices(&p).len());
        let sym2: BTreeSet<Simplex2> = symmetric_2_simplices(&p).into_iter().collect();
        assert!(t.is_subset(&sym2));
    }

    #[test]
    fn product_enumeration_factorizes() {
        let (p, q) = (pseudocircle(), chain3());
        let prod = product_poset(&p, &q);
        for n in 0..=2 {
            let lhs = enumerate_simplices(&prod.poset, n, true).unwrap().len();
            let rhs = enumerate_simplices(&p, n, true).unwrap().len() * enumerate_simplices(&q, n, true).unwrap().len();
            assert_eq!(lhs, rhs, "degree {n}");
        }
        // explicit pairing on edges
        let pe = symmetric_1_simplices(&p);
        let qe = symmetric_1_simplices(&q);
        let paired: BTreeSet<Simplex1> = pe
            .iter()
            .flat_map(|a| {
                qe.iter().map(|b| Simplex1 {
                    support: prod.index(a.support, b.support),
                    d0: prod.index(a.d0, b.d0),
                    d1: prod.index(a.d1, b.d1),
                })
            })
            .collect();
        let direct: BTreeSet<Simplex1> = symmetric_1_simplices(&prod.poset).into_iter().collect();
        assert_eq!(paired, direct);
    }

    #[test]
    fn distinct_triples_dedupe_supports() {
        let p = chain3();
        let all = symmetric_2_simplices(&p);
        let mut faces: Vec<[Simplex1; 3]> = all.iter().map(|c| c.faces).collect();
        faces.sort();
        faces.dedup();
        assert_eq!(faces, distinct_face_triples(&p));
    }
}
