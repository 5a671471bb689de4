//! Paths in the symmetric simplicial set, elementary deformations and a
//! budgeted homotopy search.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::simplicial::{Simplex1, Simplex1File};
use crate::space::Space;

/// A nonempty composable sequence of 1-simplices, stored in traversal
/// order: `steps[0]` is walked first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    steps: Vec<Simplex1>,
}

impl Path {
    pub fn new(steps: Vec<Simplex1>) -> Result<Path> {
        if steps.is_empty() {
            return Err(Error::EmptyPath);
        }
        for w in steps.windows(2) {
            if w[0].d0 != w[1].d1 {
                return Err(Error::NonComposable { end: w[0].d0.to_string(), start: w[1].d1.to_string() });
            }
        }
        Ok(Path { steps })
    }

    /// Like [`Path::new`], but also checks every step against the poset and
    /// reports names in errors.
    pub fn checked(poset: &Poset, steps: Vec<Simplex1>) -> Result<Path> {
        for s in &steps {
            if s.support >= poset.len() || s.d0 >= poset.len() || s.d1 >= poset.len() || !s.is_valid(poset) {
                return Err(Error::InvalidSimplex(format!("{s:?}")));
            }
        }
        Path::new(steps).map_err(|e| match e {
            Error::NonComposable { end, start } => Error::NonComposable {
                end: poset.name(end.parse().unwrap()).to_string(),
                start: poset.name(start.parse().unwrap()).to_string(),
            },
            e => e,
        })
    }

    pub fn single(step: Simplex1) -> Path {
        Path { steps: vec![step] }
    }

    /// The constant path `σ0 a`.
    pub fn constant(a: usize) -> Path {
        Path::single(Simplex1::degenerate(a))
    }

    pub fn steps(&self) -> &[Simplex1] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn start(&self) -> usize {
        self.steps[0].d1
    }

    pub fn end(&self) -> usize {
        self.steps[self.steps.len() - 1].d0
    }

    pub fn is_loop(&self) -> bool {
        self.start() == self.end()
    }

    /// `p * q`: walks `q`, then `p`.
    pub fn concat(p: &Path, q: &Path) -> Result<Path> {
        if q.end() != p.start() {
            return Err(Error::NonComposable { end: q.end().to_string(), start: p.start().to_string() });
        }
        let mut steps = q.steps.clone();
        steps.extend_from_slice(&p.steps);
        Ok(Path { steps })
    }

    /// Walks `self`, then `next`.
    pub fn then(&self, next: &Path) -> Result<Path> {
        Path::concat(next, self)
    }

    pub fn reverse(&self) -> Path {
        Path { steps: self.steps.iter().rev().map(Simplex1::reverse).collect() }
    }

    /// `p^k` for a loop.
    pub fn power(&self, k: usize) -> Path {
        let mut steps = Vec::with_capacity(self.len() * k.max(1));
        for _ in 0..k {
            steps.extend_from_slice(&self.steps);
        }
        if steps.is_empty() {
            return Path::constant(self.start());
        }
        Path { steps }
    }

    pub fn label(&self, poset: &Poset) -> String {
        self.steps.iter().map(|s| s.label(poset)).collect::<Vec<_>>().join(" ; ")
    }

    pub fn to_file(&self, poset: &Poset) -> Vec<Simplex1File> {
        self.steps.iter().map(|s| s.to_file(poset)).collect()
    }

    pub fn from_file(poset: &Poset, steps: &[Simplex1File]) -> Result<Path> {
        let steps = steps.iter().map(|s| s.resolve(poset)).collect::<Result<Vec<_>>>()?;
        Path::checked(poset, steps)
    }
}

/// `p * q` (walks `q` first).
pub fn concat(p: &Path, q: &Path) -> Result<Path> {
    Path::concat(p, q)
}

pub fn reverse_path(p: &Path) -> Path {
    p.reverse()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeformationKind {
    Ampliation,
    Contraction,
}

/// One elementary deformation: the result, what was done, where, and the
/// faces `[∂0 c, ∂1 c, ∂2 c]` of the 2-simplex used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deformation {
    pub path: Path,
    pub kind: DeformationKind,
    pub position: usize,
    pub faces: [Simplex1; 3],
}

/// Every single-step deformation of `p`, deduplicated by result and
/// 2-simplex faces.
pub fn elementary_deformations(space: &Space, p: &Path) -> Vec<Deformation> {
    let mut out = Vec::new();
    let tri = space.triangles();
    for (i, s) in p.steps.iter().enumerate() {
        for &t in tri.with_long_face(s) {
            let [f0, _, f2] = tri.faces(t);
            let mut steps = Vec::with_capacity(p.len() + 1);
            steps.extend_from_slice(&p.steps[..i]);
            steps.push(f2);
            steps.push(f0);
            steps.extend_from_slice(&p.steps[i + 1..]);
            out.push(Deformation {
                path: Path { steps },
                kind: DeformationKind::Ampliation,
                position: i,
                faces: tri.faces(t),
            });
        }
    }
    for i in 0..p.len().saturating_sub(1) {
        for &t in tri.with_short_faces(&p.steps[i], &p.steps[i + 1]) {
            let [_, f1, _] = tri.faces(t);
            let mut steps = Vec::with_capacity(p.len() - 1);
            steps.extend_from_slice(&p.steps[..i]);
            steps.push(f1);
            steps.extend_from_slice(&p.steps[i + 2..]);
            out.push(Deformation {
                path: Path { steps },
                kind: DeformationKind::Contraction,
                position: i,
                faces: tri.faces(t),
            });
        }
    }
    out
}

/// Something that can prove two paths are not homotopic.
pub trait PathInvariant {
    fn separates(&self, p: &Path, q: &Path) -> bool;
}

#[derive(Clone, Debug, PartialEq)]
pub enum Homotopic {
    /// A chain of paths from `p` to `q`, each an elementary deformation of
    /// the previous one. Empty when `p == q`.
    Yes(Vec<Path>),
    No(String),
    Unknown,
}

impl Homotopic {
    pub fn is_yes(&self) -> bool {
        matches!(self, Homotopic::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Homotopic::No(_))
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Homotopic::Yes(_) => "yes",
            Homotopic::No(_) => "no",
            Homotopic::Unknown => "unknown",
        }
    }
}

/// Search limits: `nodes` caps the number of expanded paths, `extra_length`
/// caps how much longer than the longer endpoint an intermediate path may
/// get.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub nodes: usize,
    pub extra_length: usize,
}

impl Budget {
    pub fn nodes(nodes: usize) -> Budget {
        Budget { nodes, extra_length: 4 }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::nodes(10_000)
    }
}

pub fn homotopic(space: &Space, p: &Path, q: &Path, budget: Budget) -> Result<Homotopic> {
    homotopic_with(space, p, q, budget, &[])
}

/// Semi-decides homotopy rel endpoints. Answers `No` only when the
/// abelianized fundamental-group classes or one of `invariants` separate
/// the paths.
pub fn homotopic_with(
    space: &Space,
    p: &Path,
    q: &Path,
    budget: Budget,
    invariants: &[&dyn PathInvariant],
) -> Result<Homotopic> {
    if p.start() != q.start() || p.end() != q.end() {
        return Err(Error::EndpointMismatch);
    }
    if p == q {
        return Ok(Homotopic::Yes(Vec::new()));
    }
    if let Ok(pi1) = space.pi1() {
        let w = pi1.path_word(&Path::concat(&q.reverse(), p)?);
        if !pi1.abelian().is_zero(&pi1.exponents(&w)) {
            return Ok(Homotopic::No("abelianized classes differ".into()));
        }
    }
    for inv in invariants {
        if inv.separates(p, q) {
            return Ok(Homotopic::No("holonomy differs".into()));
        }
    }
    let down_p = shorten(space, p);
    let down_q = shorten(space, q);
    let (p0, q0) = (down_p.last().unwrap_or(p), down_q.last().unwrap_or(q));
    let middle = if p0 == q0 {
        Vec::new()
    } else {
        match search(space, p0, q0, budget) {
            Some(chain) => chain,
            None => return Ok(Homotopic::Unknown),
        }
    };
    let mut chain = down_p.clone();
    chain.extend(middle);
    let mut back: Vec<Path> = std::iter::once(q.clone()).chain(down_q.iter().cloned()).collect();
    back.pop();
    chain.extend(back.into_iter().rev());
    Ok(Homotopic::Yes(chain))
}

/// Greedy contractions, leftmost first, until none applies. Returns the
/// successive paths after `p`.
fn shorten(space: &Space, p: &Path) -> Vec<Path> {
    let tri = space.triangles();
    let mut out: Vec<Path> = Vec::new();
    loop {
        let cur = out.last().unwrap_or(p);
        let hit = (0..cur.len().saturating_sub(1))
            .find_map(|i| tri.with_short_faces(&cur.steps[i], &cur.steps[i + 1]).first().map(|&t| (i, t)));
        let Some((i, t)) = hit else { return out };
        let mut steps = cur.steps[..i].to_vec();
        steps.push(tri.faces(t)[1]);
        steps.extend_from_slice(&cur.steps[i + 2..]);
        out.push(Path { steps });
    }
}

/// Bidirectional best-first search over the deformation graph, shortest
/// paths first.
fn search(space: &Space, p: &Path, q: &Path, budget: Budget) -> Option<Vec<Path>> {
    let cap = p.len().max(q.len()) + budget.extra_length;
    // parent maps per side; side 0 grows from p, side 1 from q
    let mut parent: [HashMap<Path, Option<Path>>; 2] = [HashMap::new(), HashMap::new()];
    let mut heap: BinaryHeap<Reverse<(usize, usize, u8, Path)>> = BinaryHeap::new();
    parent[0].insert(p.clone(), None);
    parent[1].insert(q.clone(), None);
    let mut tick = 0usize;
    heap.push(Reverse((p.len(), tick, 0, p.clone())));
    heap.push(Reverse((q.len(), tick, 1, q.clone())));
    let mut expanded = 0;
    while let Some(Reverse((_, _, side, node))) = heap.pop() {
        if expanded >= budget.nodes {
            break;
        }
        expanded += 1;
        let s = side as usize;
        for d in elementary_deformations(space, &node) {
            if d.path.len() > cap || parent[s].contains_key(&d.path) {
                continue;
            }
            // each move is followed by greedy contractions
            let mut prev = node.clone();
            let mut last = None;
            for x in std::iter::once(d.path.clone()).chain(shorten(space, &d.path)) {
                if parent[s].contains_key(&x) {
                    break;
                }
                parent[s].insert(x.clone(), Some(prev));
                if parent[1 - s].contains_key(&x) {
                    return Some(splice(&parent, &x));
                }
                prev = x.clone();
                last = Some(x);
            }
            if let Some(x) = last {
                tick += 1;
                heap.push(Reverse((x.len(), tick, side, x)));
            }
        }
    }
    None
}

fn splice(parent: &[HashMap<Path, Option<Path>>; 2], meet: &Path) -> Vec<Path> {
    let walk = |m: &HashMap<Path, Option<Path>>| {
        let mut out = vec![meet.clone()];
        let mut cur = meet.clone();
        while let Some(Some(prev)) = m.get(&cur) {
            out.push(prev.clone());
            cur = prev.clone();
        }
        out
    };
    let mut from_p = walk(&parent[0]);
    from_p.reverse();
    let to_q = walk(&parent[1]);
    from_p.extend(to_q.into_iter().skip(1));
    // the chain starts at p itself; drop it so the certificate lists steps
    from_p.remove(0);
    from_p
}
