//! Holonomy representations of net bundles, intertwiners, and the
//! equivalence between bundles and unitary representations of `π1`.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fixtures::SEED;
use crate::linalg::{self, CMatrix};
use crate::netbundle::{BundleMorphism, NetBundle, CONSTRUCTION_TOL, IDENTITY_TOL, NULL_TOL};
use crate::presentation::Word;
use crate::space::Space;

/// Eigenvalue clustering tolerance.
pub const CLUSTER_TOL: f64 = 1e-6;

/// A unitary representation of `π1(P, base)`, one matrix per generator of
/// the edge-path presentation.
#[derive(Clone, Debug)]
pub struct HolonomyRep {
    space: Arc<Space>,
    dim: usize,
    matrices: Vec<CMatrix>,
}

impl HolonomyRep {
    /// Checks unitarity and that every relator evaluates to the identity.
    pub fn new(space: Arc<Space>, dim: usize, matrices: Vec<CMatrix>) -> Result<HolonomyRep> {
        let pi1 = space.pi1()?;
        if matrices.len() != pi1.ngens() {
            return Err(Error::RankMismatch(matrices.len(), pi1.ngens()));
        }
        for (k, m) in matrices.iter().enumerate() {
            if m.shape() != (dim, dim) {
                return Err(Error::RankMismatch(m.nrows(), dim));
            }
            let r = linalg::unitarity_residual(m);
            if r > CONSTRUCTION_TOL {
                return Err(Error::NotUnitary { pair: pi1.presentation().generators[k].clone(), residual: r });
            }
        }
        let rep = HolonomyRep { space, dim, matrices };
        rep.check_relators()?;
        Ok(rep)
    }

    fn check_relators(&self) -> Result<()> {
        let pi1 = self.space.pi1()?;
        for (index, w) in pi1.presentation().relators.iter().enumerate() {
            let r = linalg::distance(&self.evaluate(w), &linalg::identity(self.dim));
            if r > IDENTITY_TOL {
                return Err(Error::RelatorViolation { index, residual: r });
            }
        }
        Ok(())
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    /// `ρ(l_k) ... ρ(l_1)` for a word `l_1 ... l_k` in walking order.
    pub fn evaluate(&self, w: &[i32]) -> CMatrix {
        let mut m = linalg::identity(self.dim);
        for &l in w {
            let g = &self.matrices[l.unsigned_abs() as usize - 1];
            m = if l > 0 { g * m } else { g.adjoint() * m };
        }
        m
    }

    /// Restriction to the subspace spanned by the orthonormal columns of
    /// `w`, which must be invariant.
    pub fn restrict(&self, w: &CMatrix) -> HolonomyRep {
        HolonomyRep {
            space: self.space.clone(),
            dim: w.ncols(),
            matrices: self.matrices.iter().map(|m| w.adjoint() * m * w).collect(),
        }
    }
}

/// Holonomy of `E` around the generator loops.
pub fn holonomy_rep(e: &NetBundle) -> Result<HolonomyRep> {
    let pi1 = e.space().pi1()?;
    let matrices = (0..pi1.ngens()).map(|k| e.holonomy(&pi1.generator_loop(k))).collect();
    HolonomyRep::new(e.space().clone(), e.rank(), matrices)
}

/// The bundle whose holonomy representation is `ρ`.
pub fn bundle_from_rep(rep: &HolonomyRep) -> Result<NetBundle> {
    let space = rep.space.clone();
    let pi1 = space.pi1()?;
    let maps = space
        .poset()
        .hasse()
        .into_iter()
        .map(|(sub, sup)| {
            let s = crate::simplicial::Simplex1 { support: sup, d0: sup, d1: sub };
            let w: Word = pi1.step_letter(&s).into_iter().collect();
            ((sub, sup), rep.evaluate(&w))
        })
        .collect();
    NetBundle::with_tolerance(space, rep.dim, maps, IDENTITY_TOL)
}

/// Basis of `{X : ρ̂(g) X = X ρ(g)}`, as `dim ρ̂ × dim ρ` matrices.
pub fn intertwiners(rho: &HolonomyRep, rho_hat: &HolonomyRep) -> Vec<CMatrix> {
    let (d, dh) = (rho.dim, rho_hat.dim);
    let n = d * dh;
    if n == 0 {
        return Vec::new();
    }
    let pi1 = rho.space.pi1().expect("checked at construction");
    let active: Vec<usize> = (0..rho.matrices.len()).filter(|&k| !pi1.is_tree_generator(k)).collect();
    let mut sys = CMatrix::zeros(active.len().max(1) * n, n);
    for (i, &k) in active.iter().enumerate() {
        let block = linalg::kron(&rho_hat.matrices[k], &linalg::identity(d)) - linalg::kron(&linalg::identity(dh), &rho.matrices[k].transpose());
        sys.view_mut((i * n, 0), (n, n)).copy_from(&block);
    }
    let ns = linalg::null_space(&sys, NULL_TOL);
    (0..ns.ncols()).map(|j| linalg::unvec_rows(ns.column(j).as_slice(), dh, d)).collect()
}

/// A unitary intertwiner, if the representations are isomorphic.
pub fn unitary_intertwiner(rho: &HolonomyRep, rho_hat: &HolonomyRep) -> Option<CMatrix> {
    if rho.dim != rho_hat.dim {
        return None;
    }
    if rho.dim == 0 {
        return Some(CMatrix::zeros(0, 0));
    }
    let basis = intertwiners(rho, rho_hat);
    if basis.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..4 {
        let mut x = CMatrix::zeros(rho.dim, rho.dim);
        for b in &basis {
            x += b * linalg::random_complex(&mut rng);
        }
        let smallest = linalg::singular_values(&x).into_iter().fold(f64::INFINITY, f64::min);
        if smallest > CLUSTER_TOL {
            return Some(linalg::polar_unitary(&x));
        }
    }
    None
}

/// Extends an intertwiner of holonomy representations at the basepoint to
/// a morphism of bundles by parallel transport along the spanning tree.
pub fn extend_intertwiner(e: &NetBundle, f: &NetBundle, x: &CMatrix) -> Result<BundleMorphism> {
    let tree = e.space().tree()?;
    let maps = (0..e.poset().len())
        .map(|a| {
            let p = tree.path_to(a);
            f.holonomy(&p) * x * e.holonomy(&p).adjoint()
        })
        .collect();
    BundleMorphism::new(e, f, maps)
}

/// A unitary isomorphism `E -> Ê`, if one exists.
pub fn are_isomorphic(e: &NetBundle, f: &NetBundle) -> Result<Option<BundleMorphism>> {
    if !e.same_base(f) {
        return Err(Error::BaseMismatch);
    }
    if e.rank() != f.rank() {
        return Ok(None);
    }
    match unitary_intertwiner(&holonomy_rep(e)?, &holonomy_rep(f)?) {
        Some(u) => Ok(Some(extend_intertwiner(e, f, &u)?)),
        None => Ok(None),
    }
}

/// Dimension of the space of bundle morphisms `E -> Ê`.
pub fn hom_dimension(e: &NetBundle, f: &NetBundle) -> Result<usize> {
    Ok(intertwiners(&holonomy_rep(e)?, &holonomy_rep(f)?).len())
}

pub fn is_irreducible(e: &NetBundle) -> Result<bool> {
    Ok(e.rank() > 0 && hom_dimension(e, e)? == 1)
}

/// One isotypic block of a decomposition.
#[derive(Clone, Debug)]
pub struct Isotype {
    /// an irreducible subbundle
    pub irreducible: NetBundle,
    pub multiplicity: usize,
    /// orthogonal projections onto each copy
    pub projections: Vec<BundleMorphism>,
}

/// Invariant subspaces from the eigenspaces of a random Hermitian element
/// of the commutant.
fn irreducible_subspaces(rho: &HolonomyRep) -> Vec<CMatrix> {
    let d = rho.dim;
    if d == 0 {
        return Vec::new();
    }
    let basis = intertwiners(rho, rho);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut h = CMatrix::zeros(d, d);
    for b in &basis {
        let z = linalg::random_complex(&mut rng);
        h += b * z + b.adjoint() * z.conj();
    }
    let (values, vectors) = linalg::hermitian_eigen(&h);
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=d {
        if i == d || values[i] - values[i - 1] > CLUSTER_TOL {
            out.push(vectors.columns(start, i - start).clone_owned());
            start = i;
        }
    }
    out
}

/// Decomposes `E` into irreducible subbundles, grouped by isomorphism
/// class.
pub fn decompose(e: &NetBundle) -> Result<Vec<Isotype>> {
    let rho = holonomy_rep(e)?;
    let mut out: Vec<(HolonomyRep, Isotype)> = Vec::new();
    for w in irreducible_subspaces(&rho) {
        let sub = rho.restrict(&w);
        let p = extend_intertwiner(e, e, &(&w * w.adjoint()))?;
        if let Some((_, iso)) = out.iter_mut().find(|(r, _)| unitary_intertwiner(r, &sub).is_some()) {
            iso.multiplicity += 1;
            iso.projections.push(p);
            continue;
        }
        let irreducible = crate::netbundle::subobject(&p)?;
        out.push((sub, Isotype { irreducible, multiplicity: 1, projections: vec![p] }));
    }
    Ok(out.into_iter().map(|(_, iso)| iso).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::c;

    #[test]
    fn line_bundle_round_trip() {
        let space = fixtures::pseudocircle();
        let l = fixtures::line_bundle(&space, c(0.0, 1.0));
        let rho = holonomy_rep(&l).unwrap();
        let back = bundle_from_rep(&rho).unwrap();
        assert!(are_isomorphic(&l, &back).unwrap().is_some());
        let gamma = fixtures::gamma(&space);
        assert!((back.holonomy(&gamma)[(0, 0)] - c(0.0, 1.0)).norm() < 1e-9);
    }

    #[test]
    fn relator_violation_detected() {
        let space = fixtures::chain3();
        let n = space.pi1().unwrap().ngens();
        let mut ms = vec![linalg::identity(1); n];
        ms[0] = linalg::scalar(c(-1.0, 0.0));
        assert!(matches!(HolonomyRep::new(space, 1, ms), Err(Error::RelatorViolation { .. })));
    }

    #[test]
    fn distinct_characters_are_not_isomorphic() {
        let space = fixtures::pseudocircle();
        let a = fixtures::line_bundle(&space, c(0.0, 1.0));
        let b = fixtures::line_bundle(&space, c(0.0, -1.0));
        assert!(are_isomorphic(&a, &b).unwrap().is_none());
        assert!(are_isomorphic(&a, &a.conjugate().conjugate()).unwrap().is_some());
        assert!(is_irreducible(&a).unwrap());
    }

    #[test]
    fn decomposition_of_sum() {
        let space = fixtures::pseudocircle();
        let a = fixtures::line_bundle(&space, c(0.0, 1.0));
        let b = fixtures::line_bundle(&space, c(-1.0, 0.0));
        let e = a.direct_sum(&b).unwrap().direct_sum(&a).unwrap();
        assert!(!is_irreducible(&e).unwrap());
        let parts = decompose(&e).unwrap();
        let mut mult: Vec<usize> = parts.iter().map(|p| p.multiplicity).collect();
        mult.sort();
        assert_eq!(mult, vec![1, 2]);
        for p in &parts {
            assert!(is_irreducible(&p.irreducible).unwrap());
        }
    }
}
