//! Finite-rank Hilbert net bundles: unitary matrices on the cover pairs of
//! a poset, extended to all comparable pairs by composition.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::homotopy::{Path, PathInvariant};
use crate::linalg::{self, CMatrix, CVector};
use crate::poset::{Poset, PosetMorphism};
use crate::simplicial::Simplex1;
use crate::space::Space;

/// Tolerance for stored matrices (unitarity, injectivity).
pub const CONSTRUCTION_TOL: f64 = 1e-9;
/// Tolerance for derived identities (cocycle, intertwining, projections).
pub const IDENTITY_TOL: f64 = 1e-8;
/// Singular values below this count as zero in null-space computations.
pub const NULL_TOL: f64 = 1e-7;

/// Outcome of validating (quasi)net data.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub is_quasinet: bool,
    pub is_net: bool,
    pub rank_function: BTreeMap<String, usize>,
    pub unitarity_residual: f64,
    pub cocycle_residual: f64,
}

fn pair_name(p: &Poset, sub: usize, sup: usize) -> String {
    format!("{}|{}", p.name(sub), p.name(sup))
}

/// Composition along the lexicographically least cover chain, for every
/// comparable pair.
pub(crate) fn compose_along_covers<T: Clone>(
    poset: &Poset,
    identity: impl Fn(usize) -> T,
    maps: &BTreeMap<(usize, usize), T>,
    compose: impl Fn(&T, &T) -> T,
) -> HashMap<(usize, usize), T> {
    let n = poset.len();
    let mut out: HashMap<(usize, usize), T> = HashMap::new();
    // process pairs by increasing interval length
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| poset.leq(a, b)).collect();
    let height = |a: usize, b: usize| (0..n).filter(|&c| poset.leq(a, c) && poset.leq(c, b)).count();
    pairs.sort_by_key(|&(a, b)| height(a, b));
    for (sub, sup) in pairs {
        let m = if sub == sup {
            identity(sub)
        } else {
            let c = (0..n).find(|&c| poset.covered_by(sub, c) && poset.leq(c, sup)).expect("a cover below sup");
            compose(&out[&(c, sup)], &maps[&(sub, c)])
        };
        out.insert((sub, sup), m);
    }
    out
}

fn transports(poset: &Poset, ranks: &[usize], maps: &BTreeMap<(usize, usize), CMatrix>) -> HashMap<(usize, usize), CMatrix> {
    compose_along_covers(poset, |a| linalg::identity(ranks[a]), maps, |outer, inner| outer * inner)
}

/// Validates quasinet data: injective isometries on every cover pair, with
/// composition independent of the cover chain.
pub fn validate(
    poset: &Poset,
    ranks: &[usize],
    maps: &BTreeMap<(usize, usize), CMatrix>,
    tol: f64,
) -> Result<ValidationReport> {
    let hasse = poset.hasse();
    for &(sub, sup) in &hasse {
        let Some(m) = maps.get(&(sub, sup)) else {
            return Err(Error::MissingCoverMatrix(poset.name(sub).into(), poset.name(sup).into()));
        };
        if m.shape() != (ranks[sup], ranks[sub]) {
            return Err(Error::BadShape(poset.name(sub).into(), poset.name(sup).into(), m.nrows(), m.ncols(), ranks[sup], ranks[sub]));
        }
    }
    for &(sub, sup) in maps.keys() {
        if !poset.covered_by(sub, sup) {
            return Err(Error::Parse(format!("`{}` is not a cover pair", pair_name(poset, sub, sup))));
        }
    }
    let mut unitarity = 0.0f64;
    for (&(sub, sup), m) in maps {
        if linalg::rank(m, tol) < m.ncols() {
            return Err(Error::NonInjective(poset.name(sub).into(), poset.name(sup).into()));
        }
        let r = linalg::isometry_residual(m);
        if r > tol {
            return Err(Error::NotUnitary { pair: pair_name(poset, sub, sup), residual: r });
        }
        unitarity = unitarity.max(r);
    }
    let t = transports(poset, ranks, maps);
    let mut worst = 0.0f64;
    for (&(sub, sup), m) in &t {
        if sub == sup {
            continue;
        }
        for &(s, c) in &hasse {
            if s != sub || !poset.leq(c, sup) {
                continue;
            }
            let r = linalg::distance(&(&t[&(c, sup)] * &maps[&(sub, c)]), m);
            if r > IDENTITY_TOL.max(tol) {
                return Err(Error::CocycleViolation {
                    witness: format!("{} < {} <= {}", poset.name(sub), poset.name(c), poset.name(sup)),
                    residual: r,
                });
            }
            worst = worst.max(r);
        }
    }
    let is_net = ranks.windows(2).all(|w| w[0] == w[1]);
    Ok(ValidationReport {
        is_quasinet: true,
        is_net,
        rank_function: (0..poset.len()).map(|i| (poset.name(i).to_string(), ranks[i])).collect(),
        unitarity_residual: unitarity,
        cocycle_residual: worst,
    })
}

#[derive(Debug)]
struct Inner {
    space: Arc<Space>,
    rank: usize,
    maps: BTreeMap<(usize, usize), CMatrix>,
    transport: HashMap<(usize, usize), CMatrix>,
}

/// A Hilbert net bundle of constant rank. Cheap to clone.
#[derive(Clone, Debug)]
pub struct NetBundle {
    inner: Arc<Inner>,
}

impl NetBundle {
    pub fn new(space: Arc<Space>, rank: usize, maps: BTreeMap<(usize, usize), CMatrix>) -> Result<NetBundle> {
        NetBundle::with_tolerance(space, rank, maps, CONSTRUCTION_TOL)
    }

    pub fn with_tolerance(space: Arc<Space>, rank: usize, maps: BTreeMap<(usize, usize), CMatrix>, tol: f64) -> Result<NetBundle> {
        let ranks = vec![rank; space.poset().len()];
        validate(space.poset(), &ranks, &maps, tol)?;
        for (&(sub, sup), m) in &maps {
            let r = linalg::unitarity_residual(m);
            if r > tol {
                return Err(Error::NotUnitary { pair: pair_name(space.poset(), sub, sup), residual: r });
            }
        }
        let transport = transports(space.poset(), &ranks, &maps);
        Ok(NetBundle { inner: Arc::new(Inner { space, rank, maps, transport }) })
    }

    /// Maps keyed by `"sub|sup"` element names.
    pub fn from_named(space: Arc<Space>, rank: usize, named: &BTreeMap<String, CMatrix>) -> Result<NetBundle> {
        let maps = resolve_pairs(space.poset(), named)?;
        NetBundle::new(space, rank, maps)
    }

    /// The trivial bundle `T_d`.
    pub fn trivial(space: Arc<Space>, d: usize) -> NetBundle {
        let maps = space.poset().hasse().into_iter().map(|p| (p, linalg::identity(d))).collect();
        NetBundle::new(space, d, maps).expect("identity maps form a net bundle")
    }

    /// A line bundle with the given values on some cover pairs, `1`
    /// elsewhere.
    pub fn line(space: Arc<Space>, values: &[(&str, &str, Complex64)]) -> Result<NetBundle> {
        let p = space.poset();
        let mut maps: BTreeMap<(usize, usize), CMatrix> =
            p.hasse().into_iter().map(|pr| (pr, linalg::identity(1))).collect();
        for (sub, sup, z) in values {
            let key = (p.require(sub)?, p.require(sup)?);
            maps.insert(key, linalg::scalar(*z));
        }
        NetBundle::new(space, 1, maps)
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.inner.space
    }

    pub fn poset(&self) -> &Poset {
        self.inner.space.poset()
    }

    pub fn rank(&self) -> usize {
        self.inner.rank
    }

    pub fn maps(&self) -> &BTreeMap<(usize, usize), CMatrix> {
        &self.inner.maps
    }

    pub fn map(&self, sub: usize, sup: usize) -> Option<&CMatrix> {
        self.inner.maps.get(&(sub, sup))
    }

    /// `J` along `sub <= sup`.
    pub fn transport(&self, sub: usize, sup: usize) -> &CMatrix {
        &self.inner.transport[&(sub, sup)]
    }

    /// Whether both handles share the same stored data.
    pub fn ptr_eq(&self, other: &NetBundle) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    pub fn same_base(&self, other: &NetBundle) -> bool {
        Arc::ptr_eq(&self.inner.space, &other.inner.space) || self.poset() == other.poset()
    }

    fn require_same_base(&self, other: &NetBundle) -> Result<()> {
        if self.same_base(other) {
            Ok(())
        } else {
            Err(Error::BaseMismatch)
        }
    }

    /// `z(o; c, d) = J(c, o)^-1 J(d, o)`.
    pub fn z(&self, s: &Simplex1) -> CMatrix {
        self.transport(s.d0, s.support).adjoint() * self.transport(s.d1, s.support)
    }

    pub fn evaluate_z(&self, s: &Simplex1) -> Result<CMatrix> {
        let n = self.poset().len();
        if s.support >= n || s.d0 >= n || s.d1 >= n || !s.is_valid(self.poset()) {
            return Err(Error::InvalidSimplex(format!("{s:?}")));
        }
        Ok(self.z(s))
    }

    /// `z(b_n) ... z(b_1)`.
    pub fn holonomy(&self, p: &Path) -> CMatrix {
        let mut h = linalg::identity(self.rank());
        for s in p.steps() {
            h = self.z(s) * h;
        }
        h
    }

    fn map_matrices<F: Fn(&CMatrix) -> CMatrix>(&self, rank: usize, f: F) -> NetBundle {
        let maps = self.inner.maps.iter().map(|(k, m)| (*k, f(m))).collect();
        NetBundle::with_tolerance(self.space().clone(), rank, maps, IDENTITY_TOL).expect("operation preserves net bundles")
    }

    fn zip_matrices<F: Fn(&CMatrix, &CMatrix) -> CMatrix>(&self, other: &NetBundle, rank: usize, f: F) -> Result<NetBundle> {
        self.require_same_base(other)?;
        let maps = self.inner.maps.iter().map(|(k, m)| (*k, f(m, &other.inner.maps[k]))).collect();
        NetBundle::with_tolerance(self.space().clone(), rank, maps, IDENTITY_TOL)
    }

    pub fn direct_sum(&self, other: &NetBundle) -> Result<NetBundle> {
        self.zip_matrices(other, self.rank() + other.rank(), linalg::block_diag)
    }

    pub fn tensor(&self, other: &NetBundle) -> Result<NetBundle> {
        self.zip_matrices(other, self.rank() * other.rank(), linalg::kron)
    }

    pub fn conjugate(&self) -> NetBundle {
        self.map_matrices(self.rank(), |m| m.map(|z| z.conj()))
    }

    /// `λ^k E`, of rank `C(d, k)`.
    pub fn exterior_power(&self, k: usize) -> Result<NetBundle> {
        if k > self.rank() {
            return Err(Error::BadExponent { k, rank: self.rank() });
        }
        let r = linalg::binomial(self.rank(), k) as usize;
        Ok(self.map_matrices(r, |m| linalg::compound(m, k)))
    }

    /// `B(E, Ê)` with `I_b(t) = Ĵ_b t J_b^-1`, on row-major vectorized
    /// `d̂ × d` matrices.
    pub fn morphism_bundle(&self, other: &NetBundle) -> Result<NetBundle> {
        self.zip_matrices(other, self.rank() * other.rank(), |j, jh| linalg::kron(jh, &j.map(|z| z.conj())))
    }

    /// The same fibres over the opposite poset, with inverted maps.
    pub fn dual_bundle(&self) -> NetBundle {
        let space = Space::new(self.poset().dual());
        let maps = self.inner.maps.iter().map(|(&(sub, sup), m)| ((sup, sub), m.adjoint())).collect();
        NetBundle::new(space, self.rank(), maps).expect("inverted maps form a net bundle")
    }

    /// `η* E` over the source of `η`.
    pub fn pullback(&self, eta: &PosetMorphism) -> Result<NetBundle> {
        if **eta.target() != *self.poset() {
            return Err(Error::BaseMismatch);
        }
        let space = Space::from_arc(eta.source().clone());
        let maps = space
            .poset()
            .hasse()
            .into_iter()
            .map(|(sub, sup)| ((sub, sup), self.transport(eta.apply(sub), eta.apply(sup)).clone()))
            .collect();
        NetBundle::new(space, self.rank(), maps)
    }

    /// Maps keyed by `"sub|sup"` names.
    pub fn named_maps(&self) -> BTreeMap<String, CMatrix> {
        let p = self.poset();
        self.inner.maps.iter().map(|(&(a, b), m)| (pair_name(p, a, b), m.clone())).collect()
    }
}

impl PathInvariant for NetBundle {
    fn separates(&self, p: &Path, q: &Path) -> bool {
        linalg::distance(&self.holonomy(p), &self.holonomy(q)) > IDENTITY_TOL
    }
}

pub fn resolve_pairs(p: &Poset, named: &BTreeMap<String, CMatrix>) -> Result<BTreeMap<(usize, usize), CMatrix>> {
    let mut maps = BTreeMap::new();
    for (key, m) in named {
        let (sub, sup) = key.split_once('|').ok_or_else(|| Error::Parse(format!("bad pair key `{key}`")))?;
        maps.insert((p.require(sub)?, p.require(sup)?), m.clone());
    }
    Ok(maps)
}

/// A family `T_a : E_a -> Ê_a`.
#[derive(Clone, Debug)]
pub struct BundleMorphism {
    source: NetBundle,
    target: NetBundle,
    maps: Vec<CMatrix>,
}

impl BundleMorphism {
    pub fn new(source: &NetBundle, target: &NetBundle, maps: Vec<CMatrix>) -> Result<BundleMorphism> {
        let t = BundleMorphism::unchecked(source, target, maps)?;
        let r = t.residual();
        if r > IDENTITY_TOL {
            return Err(Error::NotAMorphism(r));
        }
        Ok(t)
    }

    /// Shape-checked but not tested for intertwining.
    pub fn unchecked(source: &NetBundle, target: &NetBundle, maps: Vec<CMatrix>) -> Result<BundleMorphism> {
        source.require_same_base(target)?;
        if maps.len() != source.poset().len() {
            return Err(Error::Parse("one matrix per element expected".into()));
        }
        for m in &maps {
            if m.shape() != (target.rank(), source.rank()) {
                return Err(Error::RankMismatch(m.ncols(), source.rank()));
            }
        }
        Ok(BundleMorphism { source: source.clone(), target: target.clone(), maps })
    }

    pub fn constant(source: &NetBundle, target: &NetBundle, m: CMatrix) -> Result<BundleMorphism> {
        let n = source.poset().len();
        BundleMorphism::new(source, target, vec![m; n])
    }

    pub fn identity(e: &NetBundle) -> BundleMorphism {
        BundleMorphism::constant(e, e, linalg::identity(e.rank())).expect("identity intertwines")
    }

    pub fn zero(source: &NetBundle, target: &NetBundle) -> BundleMorphism {
        BundleMorphism::constant(source, target, CMatrix::zeros(target.rank(), source.rank())).expect("zero intertwines")
    }

    /// The flip `v ⊗ w ↦ w ⊗ v` from `E ⊗ Ê` to `Ê ⊗ E`.
    pub fn symmetry(e: &NetBundle, f: &NetBundle) -> Result<BundleMorphism> {
        BundleMorphism::constant(&e.tensor(f)?, &f.tensor(e)?, linalg::commutation(e.rank(), f.rank()))
    }

    pub fn source(&self) -> &NetBundle {
        &self.source
    }

    pub fn target(&self) -> &NetBundle {
        &self.target
    }

    pub fn maps(&self) -> &[CMatrix] {
        &self.maps
    }

    pub fn at(&self, a: usize) -> &CMatrix {
        &self.maps[a]
    }

    /// `max_b |T_{∂0 b} J_b - Ĵ_b T_{∂1 b}|` over cover pairs.
    pub fn residual(&self) -> f64 {
        self.source
            .maps()
            .iter()
            .map(|(&(sub, sup), j)| {
                let jh = self.target.map(sub, sup).expect("same base");
                linalg::distance(&(&self.maps[sup] * j), &(jh * &self.maps[sub]))
            })
            .fold(0.0, f64::max)
    }

    pub fn is_morphism(&self) -> (bool, f64) {
        let r = self.residual();
        (r <= IDENTITY_TOL, r)
    }

    pub fn adjoint(&self) -> BundleMorphism {
        BundleMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            maps: self.maps.iter().map(|m| m.adjoint()).collect(),
        }
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &BundleMorphism) -> Result<BundleMorphism> {
        if after.source.rank() != self.target.rank() || !after.source.same_base(&self.target) {
            return Err(Error::RankMismatch(after.source.rank(), self.target.rank()));
        }
        Ok(BundleMorphism {
            source: self.source.clone(),
            target: after.target.clone(),
            maps: self.maps.iter().zip(&after.maps).map(|(a, b)| b * a).collect(),
        })
    }

    /// Largest deviation from `T = T* = T^2`.
    pub fn projection_residual(&self) -> f64 {
        self.maps
            .iter()
            .map(|m| {
                if !m.is_square() {
                    return f64::INFINITY;
                }
                linalg::distance(m, &m.adjoint()).max(linalg::distance(m, &(m * m)))
            })
            .fold(0.0, f64::max)
    }

    /// Operator norm of each `T_a`.
    pub fn norms(&self) -> Vec<f64> {
        self.maps.iter().map(|m| linalg::singular_values(m).into_iter().fold(0.0, f64::max)).collect()
    }

    /// The corresponding global section of `B(source, target)`.
    pub fn as_section(&self) -> Section {
        let n = self.maps.len();
        Section { domain: (0..n).collect(), values: self.maps.iter().map(linalg::vec_rows).collect() }
    }
}

/// Values of a section on a subset of the base.
#[derive(Clone, Debug)]
pub struct Section {
    pub domain: Vec<usize>,
    pub values: Vec<CVector>,
}

impl Section {
    pub fn value(&self, a: usize) -> Option<&CVector> {
        self.domain.iter().position(|&x| x == a).map(|i| &self.values[i])
    }

    /// `max |J_b σ(∂1 b) - σ(∂0 b)|` over cover pairs inside the domain.
    pub fn residual(&self, e: &NetBundle) -> f64 {
        let mut worst = 0.0f64;
        for (&(sub, sup), j) in e.maps() {
            if let (Some(s), Some(t)) = (self.value(sub), self.value(sup)) {
                worst = worst.max((j * s - t).iter().fold(0.0, |acc, z| acc.max(z.norm())));
            }
        }
        worst
    }

    pub fn is_nowhere_zero(&self) -> bool {
        self.values.iter().all(|v| v.norm() > NULL_TOL)
    }
}

/// Orthonormal (at the basepoint) basis of the global sections.
pub fn global_sections(e: &NetBundle) -> Result<Vec<Section>> {
    let space = e.space();
    space.tree()?;
    let (n, d) = (e.poset().len(), e.rank());
    if d == 0 {
        return Ok(Vec::new());
    }
    let covers: Vec<_> = e.maps().iter().collect();
    let mut sys = CMatrix::zeros(covers.len() * d, n * d);
    for (row, (&(sub, sup), j)) in covers.iter().enumerate() {
        sys.view_mut((row * d, sub * d), (d, d)).copy_from(j);
        for i in 0..d {
            sys[(row * d + i, sup * d + i)] -= Complex64::new(1.0, 0.0);
        }
    }
    let null = linalg::null_space(&sys, NULL_TOL);
    let k = null.ncols();
    if k == 0 {
        return Ok(Vec::new());
    }
    let base = space.basepoint();
    let at_base = null.rows(base * d, d).clone_owned();
    let svd = at_base.svd(true, true);
    let v = svd.v_t.expect("requested").adjoint();
    let inv = CMatrix::from_diagonal(&svd.singular_values.map(|s| Complex64::new(1.0 / s, 0.0)));
    let basis = null * v * inv;
    Ok((0..k)
        .map(|j| Section {
            domain: (0..n).collect(),
            values: (0..n).map(|a| basis.view((a * d, j), (d, 1)).column(0).clone_owned()).collect(),
        })
        .collect())
}

pub fn trivial_summand_rank(e: &NetBundle) -> Result<usize> {
    Ok(global_sections(e)?.len())
}

/// The subbundle cut out by a projection morphism `E -> E`.
pub fn subobject(p: &BundleMorphism) -> Result<NetBundle> {
    let r = p.projection_residual();
    if r > IDENTITY_TOL {
        return Err(Error::NotAProjection(r));
    }
    let (ok, r) = p.is_morphism();
    if !ok {
        return Err(Error::NotAMorphism(r));
    }
    let e = p.source();
    let ranges: Vec<CMatrix> = p.maps().iter().map(linalg::projection_range).collect();
    let rank = ranges.first().map_or(0, |w| w.ncols());
    if ranges.iter().any(|w| w.ncols() != rank) {
        return Err(Error::Unsupported("projection of non-constant rank".into()));
    }
    let maps = e.maps().iter().map(|(&(sub, sup), j)| ((sub, sup), ranges[sup].adjoint() * j * &ranges[sub])).collect();
    NetBundle::with_tolerance(e.space().clone(), rank, maps, IDENTITY_TOL)
}
