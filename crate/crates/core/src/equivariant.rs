//! Actions of finite abelian groups on net bundles by bundle
//! automorphisms, averaging, and the isotypic splitting.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ktheory::{virtual_equal, VirtualBundle};
use crate::linalg::{self, CMatrix};
use crate::netbundle::{subobject, BundleMorphism, NetBundle, IDENTITY_TOL};

/// `Z/n_1 × ... × Z/n_r` acting on `E` through commuting automorphisms,
/// trivially on the base.
#[derive(Clone, Debug)]
pub struct FiniteAbelianAction {
    bundle: NetBundle,
    orders: Vec<u64>,
    generators: Vec<BundleMorphism>,
}

impl FiniteAbelianAction {
    /// `generators[j][a]` is the unitary by which generator `j` acts on the
    /// fibre over `a`.
    pub fn new(bundle: &NetBundle, orders: Vec<u64>, generators: Vec<Vec<CMatrix>>) -> Result<FiniteAbelianAction> {
        if orders.len() != generators.len() || orders.contains(&0) {
            return Err(Error::NotAnAction("one positive order per generator expected".into()));
        }
        let mut gens = Vec::with_capacity(generators.len());
        for (j, maps) in generators.into_iter().enumerate() {
            let g = BundleMorphism::unchecked(bundle, bundle, maps).map_err(|e| Error::NotAnAction(e.to_string()))?;
            let (ok, r) = g.is_morphism();
            if !ok {
                return Err(Error::NotAnAction(format!("generator {j} does not commute with the net structure (residual {r:e})")));
            }
            for (a, m) in g.maps().iter().enumerate() {
                let u = linalg::unitarity_residual(m);
                if u > IDENTITY_TOL {
                    return Err(Error::NotAnAction(format!("generator {j} is not unitary at element {a}")));
                }
                let p = (0..orders[j]).fold(linalg::identity(m.nrows()), |acc, _| m * acc);
                if linalg::distance(&p, &linalg::identity(m.nrows())) > IDENTITY_TOL {
                    return Err(Error::NotAnAction(format!("generator {j} does not have order {}", orders[j])));
                }
            }
            gens.push(g);
        }
        for (i, g) in gens.iter().enumerate() {
            for h in &gens[i + 1..] {
                if g.maps().iter().zip(h.maps()).any(|(x, y)| linalg::distance(&(x * y), &(y * x)) > IDENTITY_TOL) {
                    return Err(Error::Unsupported("non-commuting generators".into()));
                }
            }
        }
        Ok(FiniteAbelianAction { bundle: bundle.clone(), orders, generators: gens })
    }

    /// The trivial action of the trivial group.
    pub fn trivial(bundle: &NetBundle) -> FiniteAbelianAction {
        FiniteAbelianAction { bundle: bundle.clone(), orders: Vec::new(), generators: Vec::new() }
    }

    pub fn bundle(&self) -> &NetBundle {
        &self.bundle
    }

    pub fn generators(&self) -> &[BundleMorphism] {
        &self.generators
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn group_order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Every group element as an exponent vector.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &n in &self.orders {
            out = out.into_iter().flat_map(|v| (0..n).map(move |k| [v.clone(), vec![k]].concat())).collect();
        }
        out
    }

    /// The automorphism of an element, fibre by fibre.
    pub fn element(&self, exponents: &[u64]) -> Vec<CMatrix> {
        let d = self.bundle.rank();
        (0..self.bundle.poset().len())
            .map(|a| {
                let mut m = linalg::identity(d);
                for (g, &k) in self.generators.iter().zip(exponents) {
                    for _ in 0..k {
                        m = g.at(a) * m;
                    }
                }
                m
            })
            .collect()
    }

    /// `α(g)` for the character with the given labels.
    pub fn character_value(&self, character: &[u64], exponents: &[u64]) -> Complex64 {
        let angle: f64 = self
            .orders
            .iter()
            .zip(character)
            .zip(exponents)
            .map(|((&n, &j), &k)| 2.0 * PI * (j * k % n) as f64 / n as f64)
            .sum();
        Complex64::from_polar(1.0, angle)
    }

    /// `|G|^-1 Σ_g conj(α(g)) g`.
    pub fn isotypic_projection(&self, character: &[u64]) -> Result<BundleMorphism> {
        let n = self.bundle.poset().len();
        let d = self.bundle.rank();
        let mut maps = vec![CMatrix::zeros(d, d); n];
        let elements = self.elements();
        let scale = 1.0 / elements.len() as f64;
        for g in &elements {
            let w = self.character_value(character, g).conj() * scale;
            for (acc, m) in maps.iter_mut().zip(self.element(g)) {
                *acc += m * w;
            }
        }
        BundleMorphism::new(&self.bundle, &self.bundle, maps)
    }

    /// The averaging projection `P_G` onto the invariant part.
    pub fn average(&self) -> Result<BundleMorphism> {
        self.isotypic_projection(&vec![0; self.orders.len()])
    }

    pub fn invariant_subbundle(&self) -> Result<NetBundle> {
        subobject(&self.average()?)
    }

    /// All characters of the group, as label vectors.
    pub fn characters(&self) -> Vec<Vec<u64>> {
        self.elements()
    }
}

/// One row of the isotypic table.
#[derive(Clone, Debug)]
pub struct IsotypicPart {
    pub character: Vec<u64>,
    pub bundle: NetBundle,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitSummary {
    pub characters: Vec<Vec<u64>>,
    pub ranks: Vec<usize>,
    pub reassembles: bool,
}

/// Splits `E` into isotypic summands and checks that their sum is `E` in
/// `K^0`.
pub fn equivariant_split_check(action: &FiniteAbelianAction) -> Result<(Vec<IsotypicPart>, SplitSummary)> {
    let mut parts = Vec::new();
    for ch in action.characters() {
        let b = subobject(&action.isotypic_projection(&ch)?)?;
        if b.rank() > 0 {
            parts.push(IsotypicPart { character: ch, bundle: b });
        }
    }
    let e = action.bundle();
    let total = parts.iter().fold(VirtualBundle::zero(e.space().clone()), |acc, p| {
        acc.add(&VirtualBundle::of(&p.bundle)).expect("same base")
    });
    let reassembles = virtual_equal(&total, &VirtualBundle::of(e))?;
    let summary = SplitSummary {
        characters: parts.iter().map(|p| p.character.clone()).collect(),
        ranks: parts.iter().map(|p| p.bundle.rank()).collect(),
        reassembles,
    };
    Ok((parts, summary))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::c;

    fn swap() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
    }

    #[test]
    fn swap_on_trivial_rank_two() {
        let space = fixtures::pseudocircle();
        let t2 = NetBundle::trivial(space.clone(), 2);
        let action = FiniteAbelianAction::new(&t2, vec![2], vec![vec![swap(); 4]]).unwrap();
        let p = action.average().unwrap();
        let half = (linalg::identity(2) + swap()).scale(0.5);
        assert!(p.maps().iter().all(|m| linalg::distance(m, &half) < 1e-12));
        let inv = action.invariant_subbundle().unwrap();
        assert_eq!(inv.rank(), 1);
        assert_eq!(crate::netbundle::trivial_summand_rank(&inv).unwrap(), 1);
        let (parts, summary) = equivariant_split_check(&action).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(summary.ranks, vec![1, 1]);
        assert!(summary.reassembles);
    }

    #[test]
    fn sign_action_on_line() {
        let space = fixtures::pseudocircle();
        let l = fixtures::line_bundle(&space, c(0.0, 1.0));
        let action = FiniteAbelianAction::new(&l, vec![2], vec![vec![linalg::scalar(c(-1.0, 0.0)); 4]]).unwrap();
        let (parts, summary) = equivariant_split_check(&action).unwrap();
        assert_eq!(summary.characters, vec![vec![1]]);
        assert!(crate::representation::are_isomorphic(&parts[0].bundle, &l).unwrap().is_some());
    }

    #[test]
    fn bad_actions_rejected() {
        let space = fixtures::pseudocircle();
        let t2 = NetBundle::trivial(space.clone(), 2);
        assert!(matches!(FiniteAbelianAction::new(&t2, vec![3], vec![vec![swap(); 4]]), Err(Error::NotAnAction(_))));
        let mut maps = vec![swap(); 4];
        maps[0] = linalg::identity(2);
        assert!(matches!(FiniteAbelianAction::new(&t2, vec![2], vec![maps]), Err(Error::NotAnAction(_))));
        let diag = linalg::diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        assert!(matches!(
            FiniteAbelianAction::new(&t2, vec![2, 2], vec![vec![swap(); 4], vec![diag; 4]]),
            Err(Error::Unsupported(_))
        ));
        let trivial = FiniteAbelianAction::trivial(&t2);
        assert!(trivial.average().unwrap().maps().iter().all(|m| linalg::distance(m, &linalg::identity(2)) < 1e-15));
    }
}
