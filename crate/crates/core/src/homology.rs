//! Net chains and cochains in degrees up to two, `H1(P; Z)`, the Hurewicz
//! map and `H^1(P; A)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianQuotient, FGAbelianGroup};
use crate::error::{Error, Result};
use crate::homotopy::Path;
use crate::intlinalg::{smith, IntMatrix, Lattice};
use crate::simplicial::{Simplex1, Simplex2};
use crate::space::Space;

/// A finitely supported integer combination of simplices.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Chain<S: Ord> {
    coeffs: BTreeMap<S, i64>,
}

pub type Chain0 = Chain<usize>;
pub type Chain1 = Chain<Simplex1>;
pub type Chain2 = Chain<Simplex2>;

impl<S: Ord + Clone> Chain<S> {
    pub fn zero() -> Self {
        Chain { coeffs: BTreeMap::new() }
    }

    pub fn single(s: S) -> Self {
        let mut c = Chain::zero();
        c.add(s, 1);
        c
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (S, i64)>) -> Self {
        let mut c = Chain::zero();
        for (s, k) in terms {
            c.add(s, k);
        }
        c
    }

    pub fn add(&mut self, s: S, k: i64) {
        if k == 0 {
            return;
        }
        let e = self.coeffs.entry(s.clone()).or_insert(0);
        *e += k;
        if *e == 0 {
            self.coeffs.remove(&s);
        }
    }

    pub fn add_chain(&mut self, other: &Chain<S>, k: i64) {
        for (s, c) in &other.coeffs {
            self.add(s.clone(), c * k);
        }
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut c = Chain::zero();
        c.add_chain(self, k);
        c
    }

    pub fn coefficient(&self, s: &S) -> i64 {
        self.coeffs.get(s).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&S, i64)> {
        self.coeffs.iter().map(|(s, k)| (s, *k))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<S: Ord + Clone> std::ops::Add for &Chain<S> {
    type Output = Chain<S>;
    fn add(self, rhs: &Chain<S>) -> Chain<S> {
        let mut c = self.clone();
        c.add_chain(rhs, 1);
        c
    }
}

impl<S: Ord + Clone> std::ops::Sub for &Chain<S> {
    type Output = Chain<S>;
    fn sub(self, rhs: &Chain<S>) -> Chain<S> {
        let mut c = self.clone();
        c.add_chain(rhs, -1);
        c
    }
}

/// `b b = ∂0 b - ∂1 b`.
pub fn boundary1(x: &Chain1) -> Chain0 {
    let mut out = Chain0::zero();
    for (s, k) in x.terms() {
        out.add(s.d0, k);
        out.add(s.d1, -k);
    }
    out
}

/// `b c = ∂0 c - ∂1 c + ∂2 c`.
pub fn boundary2(x: &Chain2) -> Chain1 {
    let mut out = Chain1::zero();
    for (c, k) in x.terms() {
        out.add(c.faces[0], k);
        out.add(c.faces[1], -k);
        out.add(c.faces[2], k);
    }
    out
}

/// The 1-chain `Σ b_i` of a path.
pub fn path_chain(p: &Path) -> Chain1 {
    Chain1::from_terms(p.steps().iter().map(|s| (*s, 1)))
}

/// A class in `H1(P; Z)`: coordinates on the invariant-factor summands
/// (torsion first), torsion entries reduced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyClass {
    pub ambient: FGAbelianGroup,
    pub coordinates: Vec<i64>,
}

impl HomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(|&c| c == 0)
    }
}

/// `H1(P; Z) = Z1 / B1`, using that `Z1` is free on the fundamental cycles
/// of the edges outside a spanning tree.
#[derive(Clone, Debug)]
pub struct H1 {
    nontree: Vec<Simplex1>,
    position: HashMap<Simplex1, usize>,
    quotient: AbelianQuotient,
    tree_chain: Vec<Chain1>,
}

impl H1 {
    pub(crate) fn build(space: &Space) -> Result<H1> {
        let tree = space.tree()?;
        let nontree: Vec<Simplex1> = space.edges().iter().copied().filter(|s| !tree.is_tree_edge(s)).collect();
        let position: HashMap<Simplex1, usize> = nontree.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let dim = nontree.len();
        let mut rows = Vec::new();
        for [f0, f1, f2] in space.triangles().all() {
            let mut v: BTreeMap<usize, i64> = BTreeMap::new();
            for (s, k) in [(f0, 1), (f1, -1), (f2, 1)] {
                if let Some(&i) = position.get(s) {
                    *v.entry(i).or_insert(0) += k;
                }
            }
            v.retain(|_, k| *k != 0);
            rows.push(v.into_iter().collect());
        }
        let tree_chain = (0..space.poset().len())
            .map(|v| Chain1::from_terms(tree.edges_to(v).into_iter().map(|e| (e, 1))))
            .collect();
        Ok(H1 { nontree, position, quotient: AbelianQuotient::from_sparse(dim, rows), tree_chain })
    }

    pub fn group(&self) -> &FGAbelianGroup {
        self.quotient.group()
    }

    pub fn quotient(&self) -> &AbelianQuotient {
        &self.quotient
    }

    /// The 1-simplices outside the spanning tree, indexing cycle vectors.
    pub fn nontree(&self) -> &[Simplex1] {
        &self.nontree
    }

    /// Coordinates of a 1-cycle in `Z1 ≅ Z^{non-tree}`.
    pub fn cycle_vector(&self, x: &Chain1) -> Result<Vec<BigInt>> {
        if !boundary1(x).is_zero() {
            return Err(Error::NotACycle);
        }
        let mut v = vec![BigInt::zero(); self.nontree.len()];
        for (s, k) in x.terms() {
            if let Some(&i) = self.position.get(s) {
                v[i] += k;
            }
        }
        Ok(v)
    }

    pub fn coordinates(&self, x: &Chain1) -> Result<Vec<BigInt>> {
        Ok(self.quotient.coordinates(&self.cycle_vector(x)?))
    }

    pub fn class(&self, x: &Chain1) -> Result<HomologyClass> {
        let c = self.coordinates(x)?;
        Ok(HomologyClass {
            ambient: self.group().clone(),
            coordinates: c.iter().map(|v| v.to_i64().expect("coordinate fits in i64")).collect(),
        })
    }

    /// The fundamental cycle `e + tree(∂1 e) - tree(∂0 e)` of a non-tree
    /// simplex.
    pub fn fundamental_cycle(&self, e: &Simplex1) -> Chain1 {
        let mut c = Chain1::single(*e);
        c.add_chain(&self.tree_chain[e.d1], 1);
        c.add_chain(&self.tree_chain[e.d0], -1);
        c
    }

    /// A cycle representing the class with the given coordinates.
    pub fn representative(&self, coordinates: &[i64]) -> Chain1 {
        let big: Vec<BigInt> = coordinates.iter().map(|&c| BigInt::from(c)).collect();
        let v = self.quotient.lift(&big);
        let mut out = Chain1::zero();
        for (i, k) in v.iter().enumerate() {
            if !k.is_zero() {
                let k = k.to_i64().expect("lift fits in i64");
                out.add_chain(&self.fundamental_cycle(&self.nontree[i]), k);
            }
        }
        out
    }

    /// A cycle representing the `k`-th summand generator.
    pub fn generator(&self, k: usize) -> Chain1 {
        let mut e = vec![0; self.group().ngens()];
        e[k] = 1;
        self.representative(&e)
    }
}

pub fn h1_integral(space: &Space) -> Result<FGAbelianGroup> {
    Ok(space.h1()?.group().clone())
}

/// `T p = Σ b_i` projected to `H1`.
pub fn hurewicz_t(space: &Space, p: &Path) -> Result<HomologyClass> {
    if !p.is_loop() {
        return Err(Error::NotALoop);
    }
    space.h1()?.class(&path_chain(p))
}

/// Result of comparing `π1(P, a)_ab` with `H1(P; Z)` through `T`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HurewiczReport {
    pub pi1_ab: FGAbelianGroup,
    pub h1: FGAbelianGroup,
    pub groups_equal: bool,
    pub t_is_isomorphism: bool,
}

pub fn hurewicz_check(space: &Space) -> Result<HurewiczReport> {
    let pi1 = space.pi1()?;
    let h1 = space.h1()?;
    let loops: Vec<Vec<BigInt>> = (0..pi1.ngens())
        .map(|k| h1.cycle_vector(&path_chain(&pi1.generator_loop(k))))
        .collect::<Result<_>>()?;
    let ab = pi1.abelian();
    let images: Vec<Vec<BigInt>> = (0..ab.group().ngens())
        .map(|k| {
            let g = ab.generator(k);
            let mut v = vec![BigInt::zero(); h1.nontree.len()];
            for (j, c) in g.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(&loops[j]) {
                    *x += c * y;
                }
            }
            h1.quotient.coordinates(&v)
        })
        .collect();
    let groups_equal = ab.group() == h1.group();
    Ok(HurewiczReport {
        pi1_ab: ab.group().clone(),
        h1: h1.group().clone(),
        groups_equal,
        t_is_isomorphism: crate::abelian::is_isomorphism(ab.group(), h1.group(), &images),
    })
}

/// Threads a 1-cycle into loops at `basepoint` whose `T`-images sum to the
/// class of `x`.
///
/// Negative coefficients are traded for reversed simplices, then closed
/// strings are built by repeatedly prepending a simplex whose target is the
/// current source; each closed string is conjugated to the basepoint by
/// tree paths.
pub fn cycle_to_loops(space: &Space, x: &Chain1, basepoint: usize) -> Result<Vec<Path>> {
    if !boundary1(x).is_zero() {
        return Err(Error::NotACycle);
    }
    let tree = if basepoint == space.basepoint() {
        space.tree()?.clone()
    } else {
        Space::with_basepoint(space.poset_arc().clone(), basepoint).tree()?.clone()
    };
    let mut pool: BTreeMap<Simplex1, i64> = BTreeMap::new();
    for (s, k) in x.terms() {
        let (s, k) = if k < 0 { (s.reverse(), -k) } else { (*s, k) };
        *pool.entry(s).or_insert(0) += k;
    }
    let take = |pool: &mut BTreeMap<Simplex1, i64>, s: Simplex1| {
        let e = pool.get_mut(&s).expect("present");
        *e -= 1;
        if *e == 0 {
            pool.remove(&s);
        }
    };
    let mut loops = Vec::new();
    while let Some((&first, _)) = pool.iter().next() {
        take(&mut pool, first);
        // segment in walking order, grown at the front
        let mut seg = std::collections::VecDeque::from([first]);
        while seg[0].d1 != first.d0 {
            let want = seg[0].d1;
            let next = *pool.keys().find(|s| s.d0 == want).ok_or(Error::NotACycle)?;
            take(&mut pool, next);
            seg.push_front(next);
        }
        let start = seg[0].d1;
        let mut steps: Vec<Simplex1> = tree.edges_to(start);
        steps.extend(seg);
        steps.extend(tree.edges_to(start).iter().rev().map(Simplex1::reverse));
        loops.push(Path::new(steps)?);
    }
    Ok(loops)
}

/// Concatenation of [`cycle_to_loops`], or the constant loop.
pub fn cycle_to_loop(space: &Space, x: &Chain1, basepoint: usize) -> Result<Path> {
    let loops = cycle_to_loops(space, x, basepoint)?;
    let mut steps = Vec::new();
    for l in &loops {
        steps.extend_from_slice(l.steps());
    }
    if steps.is_empty() {
        return Ok(Path::constant(basepoint));
    }
    Path::new(steps)
}

/// Abelian coefficient groups, written additively.
pub trait CoefficientGroup {
    type Elem: Clone + Debug;
    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn contains(&self, a: &Self::Elem) -> bool;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn times(&self, a: &Self::Elem, k: i64) -> Self::Elem {
        let base = if k < 0 { self.neg(a) } else { a.clone() };
        let mut out = self.zero();
        for _ in 0..k.unsigned_abs() {
            out = self.add(&out, &base);
        }
        out
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, b))
    }
}

/// Elements are coordinate vectors on the invariant-factor summands.
impl CoefficientGroup for FGAbelianGroup {
    type Elem = Vec<i64>;

    fn zero(&self) -> Vec<i64> {
        vec![0; self.ngens()]
    }

    fn add(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&s)
    }

    fn neg(&self, a: &Vec<i64>) -> Vec<i64> {
        let s: Vec<i64> = a.iter().map(|x| -x).collect();
        self.reduce(&s)
    }

    fn contains(&self, a: &Vec<i64>) -> bool {
        a.len() == self.ngens() && self.reduce(a) == *a
    }

    fn is_zero(&self, a: &Vec<i64>) -> bool {
        self.reduce(a).iter().all(|&x| x == 0)
    }

    fn times(&self, a: &Vec<i64>, k: i64) -> Vec<i64> {
        let s: Vec<i64> = a.iter().map(|x| x * k).collect();
        self.reduce(&s)
    }
}

/// The circle group of unit complex numbers; the group law is
/// multiplication.
#[derive(Clone, Copy, Debug)]
pub struct CircleGroup {
    pub tolerance: f64,
}

impl Default for CircleGroup {
    fn default() -> Self {
        CircleGroup { tolerance: 1e-9 }
    }
}

impl CoefficientGroup for CircleGroup {
    type Elem = Complex64;

    fn zero(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn add(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }

    fn neg(&self, a: &Complex64) -> Complex64 {
        a.conj()
    }

    fn contains(&self, a: &Complex64) -> bool {
        (a.norm() - 1.0).abs() <= self.tolerance
    }

    fn is_zero(&self, a: &Complex64) -> bool {
        (a - Complex64::new(1.0, 0.0)).norm() <= self.tolerance
    }

    fn times(&self, a: &Complex64, k: i64) -> Complex64 {
        a.powi(k as i32)
    }
}

/// A cochain of degree 0 (one value per element) or 1 (one value per
/// symmetric 1-simplex, in [`Space::edges`] order).
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<E> {
    pub degree: usize,
    pub values: Vec<E>,
}

impl<E: Clone> Cochain<E> {
    pub fn zeros<A: CoefficientGroup<Elem = E>>(space: &Space, a: &A, degree: usize) -> Self {
        let n = if degree == 0 { space.poset().len() } else { space.edges().len() };
        Cochain { degree, values: vec![a.zero(); n] }
    }

    pub fn from_fn<F: FnMut(&Simplex1) -> E>(space: &Space, mut f: F) -> Self {
        Cochain { degree: 1, values: space.edges().iter().map(&mut f).collect() }
    }

    pub fn at(&self, space: &Space, s: &Simplex1) -> E {
        self.values[space.edge_index(s).expect("simplex of this space")].clone()
    }
}

/// `dv(b) = v(∂0 b) - v(∂1 b)`.
pub fn coboundary<A: CoefficientGroup>(space: &Space, a: &A, v: &Cochain<A::Elem>) -> Cochain<A::Elem> {
    assert_eq!(v.degree, 0, "coboundary is taken on 0-cochains");
    Cochain::from_fn(space, |s| a.sub(&v.values[s.d0], &v.values[s.d1]))
}

/// `dw(c) = w(∂0 c) - w(∂1 c) + w(∂2 c)` on the face triple of `c`.
pub fn coboundary_at<A: CoefficientGroup>(space: &Space, a: &A, w: &Cochain<A::Elem>, faces: &[Simplex1; 3]) -> A::Elem {
    let [f0, f1, f2] = faces;
    a.add(&a.sub(&w.at(space, f0), &w.at(space, f1)), &w.at(space, f2))
}

pub fn check_cocycle<A: CoefficientGroup>(space: &Space, a: &A, w: &Cochain<A::Elem>) -> Result<()> {
    for faces in space.triangles().all() {
        if !a.is_zero(&coboundary_at(space, a, w, faces)) {
            let p = space.poset();
            return Err(Error::NotACocycle {
                witness: format!("[{}, {}, {}]", faces[0].label(p), faces[1].label(p), faces[2].label(p)),
            });
        }
    }
    Ok(())
}

/// `<w, x> = Σ k w(b)` for a 1-chain `x`.
pub fn evaluate<A: CoefficientGroup>(space: &Space, a: &A, w: &Cochain<A::Elem>, x: &Chain1) -> A::Elem {
    let mut out = a.zero();
    for (s, k) in x.terms() {
        out = a.add(&out, &a.times(&w.at(space, s), k));
    }
    out
}

/// The pairing `H^1 × H_1 -> A`, evaluated on a representing cycle.
pub fn pairing<A: CoefficientGroup>(space: &Space, a: &A, w: &Cochain<A::Elem>, x: &HomologyClass) -> Result<A::Elem> {
    check_cocycle(space, a, w)?;
    let rep = space.h1()?.representative(&x.coordinates);
    Ok(evaluate(space, a, w, &rep))
}

/// The cocycle `b ↦ φ_k[z_b]` with values in the `k`-th summand of `H1`
/// (`Z` or `Z/d`), where `z_b` is the fundamental cycle of `b` and `φ_k`
/// the `k`-th coordinate. It pairs to `δ_jk` with the summand generators.
pub fn dual_cocycle(space: &Space, k: usize) -> Result<(FGAbelianGroup, Cochain<Vec<i64>>)> {
    let h1 = space.h1()?;
    let group = FGAbelianGroup::cyclic(h1.group().order_of(k));
    let w = Cochain::from_fn(space, |s| {
        let c = h1.coordinates(&h1.fundamental_cycle(s)).expect("fundamental cycles are cycles");
        vec![c[k].to_i64().expect("fits")]
    });
    Ok((group, w))
}

/// `H^1(P; A) = Hom(H1(P; Z), A)`.
pub fn h1_cohomology(space: &Space, a: &FGAbelianGroup) -> Result<FGAbelianGroup> {
    Ok(space.h1()?.group().hom_into(a))
}

/// `H^1(P; A)` as cocycles modulo coboundaries, for `A` a direct sum of
/// cyclic groups, computed summand by summand.
pub fn h1_cohomology_direct(space: &Space, a: &FGAbelianGroup) -> Result<FGAbelianGroup> {
    space.tree()?;
    let data = CochainData::new(space);
    let mut out = FGAbelianGroup::trivial();
    for k in 0..a.ngens() {
        out = out.direct_sum(&data.h1_cyclic(a.order_of(k)));
    }
    Ok(out)
}

/// Smith data of the 2-coboundary matrix in full 1-simplex coordinates.
struct CochainData {
    ncols: usize,
    diagonal: Vec<BigInt>,
    v_inv: IntMatrix,
    /// `δ0` of each vertex indicator
    vertex_images: Vec<Vec<BigInt>>,
}

impl CochainData {
    fn new(space: &Space) -> CochainData {
        let ncols = space.edges().len();
        let mut lattice = Lattice::new(ncols);
        let mut seen = std::collections::HashSet::new();
        for [f0, f1, f2] in space.triangles().all() {
            let mut row = vec![0i64; ncols];
            row[space.edge_index(f0).unwrap()] += 1;
            row[space.edge_index(f1).unwrap()] -= 1;
            row[space.edge_index(f2).unwrap()] += 1;
            if row.iter().all(|&x| x == 0) || !seen.insert(row.clone()) {
                continue;
            }
            lattice.insert(row.into_iter().map(BigInt::from).collect());
        }
        let s = smith(&lattice.to_matrix(), false);
        let vertex_images = (0..space.poset().len())
            .map(|v| {
                space
                    .edges()
                    .iter()
                    .map(|s| BigInt::from((s.d0 == v) as i64 - (s.d1 == v) as i64))
                    .collect()
            })
            .collect();
        CochainData { ncols, diagonal: s.diagonal, v_inv: s.v_inv, vertex_images }
    }

    /// `H^1(P; Z/n)`, `n = 0` meaning `Z`.
    ///
    /// With `U M V = D` for the relation matrix `M`, cocycles are `w = V y`
    /// with `d_i y_i = 0` in `Z/n`; they are generated by `s_i e_i` with
    /// `s_i = n / gcd(d_i, n)` (or `e_i` past the rank), of order
    /// `gcd(d_i, n)` (or `n`).
    fn h1_cyclic(&self, n: u64) -> FGAbelianGroup {
        let r = self.diagonal.len();
        let nb = BigInt::from(n);
        let mut gens: Vec<usize> = Vec::new();
        let mut step: Vec<BigInt> = Vec::new();
        let mut order: Vec<BigInt> = Vec::new();
        for i in 0..self.ncols {
            if i < r {
                if n == 0 {
                    continue;
                }
                let g = self.diagonal[i].gcd(&nb);
                if g.is_one() {
                    continue;
                }
                gens.push(i);
                step.push(&nb / &g);
                order.push(g);
            } else {
                gens.push(i);
                step.push(BigInt::one());
                order.push(nb.clone());
            }
        }
        let k = gens.len();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for g in &self.vertex_images {
            let y = self.v_inv.apply(g);
            let c: Vec<BigInt> = gens.iter().zip(&step).map(|(&i, s)| &y[i] / s).collect();
            if c.iter().any(|x| !x.is_zero()) {
                rows.push(c);
            }
        }
        for (j, o) in order.iter().enumerate() {
            if !o.is_zero() {
                let mut e = vec![BigInt::zero(); k];
                e[j] = o.clone();
                rows.push(e);
            }
        }
        let m = IntMatrix::from_rows(&rows, k);
        let d = smith(&m, false).diagonal;
        let torsion: Vec<u64> = d.iter().filter(|x| !x.abs().is_one()).map(|x| x.to_u64().unwrap()).collect();
        FGAbelianGroup::from_cyclic(k - d.len(), &torsion)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::simplicial::symmetric_2_simplices;

    #[test]
    fn boundaries() {
        let space = fixtures::pseudocircle();
        let p = space.poset();
        let b = Simplex1::from_names(p, "x", "b", "a").unwrap();
        let db = boundary1(&Chain1::single(b));
        assert_eq!(db.coefficient(&p.require("b").unwrap()), 1);
        assert_eq!(db.coefficient(&p.require("a").unwrap()), -1);
        let a = p.require("a").unwrap();
        assert_eq!(boundary2(&Chain2::single(Simplex2::degenerate(a))), Chain1::single(Simplex1::degenerate(a)));
        for c in symmetric_2_simplices(p) {
            assert!(boundary1(&boundary2(&Chain2::single(c))).is_zero());
        }
    }

    #[test]
    fn fixture_h1() {
        assert!(h1_integral(&fixtures::chain3()).unwrap().is_trivial());
        let space = fixtures::pseudocircle();
        assert_eq!(h1_integral(&space).unwrap(), FGAbelianGroup::free(1));
        let class = hurewicz_t(&space, &fixtures::gamma(&space)).unwrap();
        assert_eq!(class.coordinates.len(), 1);
        assert_eq!(class.coordinates[0].abs(), 1);
    }

    #[test]
    fn degenerate_and_reversal_vanish() {
        let space = fixtures::pseudocircle();
        let h1 = space.h1().unwrap();
        let p = space.poset();
        for s in space.edges() {
            let c = &Chain1::single(*s) + &Chain1::single(s.reverse());
            assert!(h1.class(&c).unwrap().is_zero(), "{}", s.label(p));
        }
        let a = p.require("a").unwrap();
        assert!(h1.class(&Chain1::single(Simplex1::degenerate(a))).unwrap().is_zero());
    }

    #[test]
    fn threading_reproduces_class() {
        let space = fixtures::pseudocircle();
        let p = space.poset();
        let x = Chain1::from_terms([
            (Simplex1::from_names(p, "x", "b", "a").unwrap(), 2),
            (Simplex1::from_names(p, "y", "a", "b").unwrap(), 2),
        ]);
        let h1 = space.h1().unwrap();
        let lp = cycle_to_loop(&space, &x, space.basepoint()).unwrap();
        assert_eq!(hurewicz_t(&space, &lp).unwrap(), h1.class(&x).unwrap());
        assert!(cycle_to_loops(&space, &Chain1::zero(), 0).unwrap().is_empty());
        assert_eq!(
            cycle_to_loops(&space, &Chain1::single(Simplex1::from_names(p, "x", "b", "a").unwrap()), 0),
            Err(Error::NotACycle)
        );
    }

    #[test]
    fn cohomology_routes_agree() {
        for space in [fixtures::chain3(), fixtures::pseudocircle()] {
            for a in [FGAbelianGroup::free(1), FGAbelianGroup::cyclic(2), FGAbelianGroup::cyclic(6), FGAbelianGroup::free(2)] {
                assert_eq!(h1_cohomology(&space, &a).unwrap(), h1_cohomology_direct(&space, &a).unwrap());
            }
        }
        let space = fixtures::pseudocircle();
        assert_eq!(h1_cohomology(&space, &FGAbelianGroup::cyclic(2)).unwrap(), FGAbelianGroup::cyclic(2));
    }

    #[test]
    fn coboundary_on_chain() {
        let space = fixtures::chain3();
        let z2 = FGAbelianGroup::cyclic(2);
        let mut v = Cochain::zeros(&space, &z2, 0);
        v.values[0] = vec![1];
        let dv = coboundary(&space, &z2, &v);
        for s in space.edges() {
            let expect = ((s.d0 == 0) as i64 + (s.d1 == 0) as i64) % 2;
            assert_eq!(dv.at(&space, s), vec![expect]);
        }
        check_cocycle(&space, &z2, &dv).unwrap();
    }

    #[test]
    fn pairing_with_dual_cocycle() {
        let space = fixtures::pseudocircle();
        let (z, w) = dual_cocycle(&space, 0).unwrap();
        check_cocycle(&space, &z, &w).unwrap();
        let class = hurewicz_t(&space, &fixtures::gamma(&space)).unwrap();
        let value = pairing(&space, &z, &w, &class).unwrap();
        assert_eq!(value, vec![class.coordinates[0]]);
        // representative independence: γ itself versus the lifted cycle
        assert_eq!(evaluate(&space, &z, &w, &path_chain(&fixtures::gamma(&space))), value);
    }
}
