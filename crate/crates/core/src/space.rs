//! A poset bundled with lazily computed combinatorial data: the symmetric
//! 1- and 2-simplices, a spanning tree, the fundamental group presentation
//! and first homology.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::homology::H1;
use crate::homotopy::Path;
use crate::poset::Poset;
use crate::presentation::Pi1;
use crate::simplicial::{distinct_face_triples, symmetric_1_simplices, Simplex1};

/// Face triples of the symmetric 2-simplices with lookup by the long face
/// `∂1 c` and by the composable pair `(∂2 c, ∂0 c)`.
#[derive(Debug)]
pub struct Triangles {
    list: Vec<[Simplex1; 3]>,
    by_long: HashMap<Simplex1, Vec<usize>>,
    by_short: HashMap<(Simplex1, Simplex1), Vec<usize>>,
}

impl Triangles {
    fn new(list: Vec<[Simplex1; 3]>) -> Triangles {
        let mut by_long: HashMap<Simplex1, Vec<usize>> = HashMap::new();
        let mut by_short: HashMap<(Simplex1, Simplex1), Vec<usize>> = HashMap::new();
        for (i, [f0, f1, f2]) in list.iter().enumerate() {
            by_long.entry(*f1).or_default().push(i);
            by_short.entry((*f2, *f0)).or_default().push(i);
        }
        Triangles { list, by_long, by_short }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn all(&self) -> &[[Simplex1; 3]] {
        &self.list
    }

    pub fn faces(&self, i: usize) -> [Simplex1; 3] {
        self.list[i]
    }

    pub fn with_long_face(&self, s: &Simplex1) -> &[usize] {
        self.by_long.get(s).map_or(&[], Vec::as_slice)
    }

    /// Triangles whose `∂2` is walked first and `∂0` second.
    pub fn with_short_faces(&self, first: &Simplex1, second: &Simplex1) -> &[usize] {
        self.by_short.get(&(*first, *second)).map_or(&[], Vec::as_slice)
    }
}

/// BFS spanning tree of the 1-skeleton rooted at the basepoint.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    root: usize,
    /// edge from the parent into each vertex, `None` at the root
    parent: Vec<Option<Simplex1>>,
}

impl SpanningTree {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent_edge(&self, v: usize) -> Option<Simplex1> {
        self.parent[v]
    }

    pub fn is_tree_edge(&self, s: &Simplex1) -> bool {
        self.parent[s.d0] == Some(*s)
    }

    /// Tree edges from the root to `v`, in walking order.
    pub fn edges_to(&self, v: usize) -> Vec<Simplex1> {
        let mut out = Vec::new();
        let mut cur = v;
        while let Some(e) = self.parent[cur] {
            out.push(e);
            cur = e.d1;
        }
        out.reverse();
        out
    }

    /// The tree path from the root to `v` (the constant path at the root
    /// when `v` is the root).
    pub fn path_to(&self, v: usize) -> Path {
        let steps = self.edges_to(v);
        if steps.is_empty() {
            Path::constant(self.root)
        } else {
            Path::new(steps).expect("tree edges compose")
        }
    }

    pub fn path_from(&self, v: usize) -> Path {
        self.path_to(v).reverse()
    }
}

#[derive(Debug)]
pub struct Space {
    poset: Arc<Poset>,
    basepoint: usize,
    edges: OnceLock<(Vec<Simplex1>, HashMap<Simplex1, usize>)>,
    triangles: OnceLock<Triangles>,
    tree: OnceLock<Result<SpanningTree>>,
    pi1: OnceLock<Result<Pi1>>,
    h1: OnceLock<Result<H1>>,
}

impl Space {
    pub fn new(poset: Poset) -> Arc<Space> {
        Space::from_arc(Arc::new(poset))
    }

    pub fn from_arc(poset: Arc<Poset>) -> Arc<Space> {
        Space::with_basepoint(poset, 0)
    }

    pub fn with_basepoint(poset: Arc<Poset>, basepoint: usize) -> Arc<Space> {
        Arc::new(Space {
            poset,
            basepoint,
            edges: OnceLock::new(),
            triangles: OnceLock::new(),
            tree: OnceLock::new(),
            pi1: OnceLock::new(),
            h1: OnceLock::new(),
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn poset_arc(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    fn edge_data(&self) -> &(Vec<Simplex1>, HashMap<Simplex1, usize>) {
        self.edges.get_or_init(|| {
            let e = symmetric_1_simplices(&self.poset);
            let idx = e.iter().enumerate().map(|(i, s)| (*s, i)).collect();
            (e, idx)
        })
    }

    /// All symmetric 1-simplices in canonical order.
    pub fn edges(&self) -> &[Simplex1] {
        &self.edge_data().0
    }

    pub fn edge_index(&self, s: &Simplex1) -> Option<usize> {
        self.edge_data().1.get(s).copied()
    }

    pub fn triangles(&self) -> &Triangles {
        self.triangles.get_or_init(|| Triangles::new(distinct_face_triples(&self.poset)))
    }

    pub fn tree(&self) -> Result<&SpanningTree> {
        self.tree.get_or_init(|| self.build_tree()).as_ref().map_err(Clone::clone)
    }

    pub fn pi1(&self) -> Result<&Pi1> {
        self.pi1.get_or_init(|| Pi1::build(self)).as_ref().map_err(Clone::clone)
    }

    pub fn h1(&self) -> Result<&H1> {
        self.h1.get_or_init(|| H1::build(self)).as_ref().map_err(Clone::clone)
    }

    fn build_tree(&self) -> Result<SpanningTree> {
        let n = self.poset.len();
        if n == 0 {
            return Err(Error::Disconnected { components: 0 });
        }
        let mut out: Vec<Vec<Simplex1>> = vec![Vec::new(); n];
        for s in self.edges() {
            if s.d0 != s.d1 {
                out[s.d1].push(*s);
            }
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[self.basepoint] = true;
        let mut queue = VecDeque::from([self.basepoint]);
        while let Some(u) = queue.pop_front() {
            for s in &out[u] {
                if !seen[s.d0] {
                    seen[s.d0] = true;
                    parent[s.d0] = Some(*s);
                    queue.push_back(s.d0);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::Disconnected { components: self.poset.components().len() });
        }
        Ok(SpanningTree { root: self.basepoint, parent })
    }
}
