//! The first Chern class, Chern functions, and the classification of
//! bundles up to stable equivalence over bases with cyclic `π1`.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::abelian::FGAbelianGroup;
use crate::error::{Error, Result};
use crate::homology::cycle_to_loop;
use crate::homotopy::Path;
use crate::linalg::{self, c, CMatrix};
use crate::netbundle::NetBundle;
use crate::presentation::Word;
use crate::representation::{bundle_from_rep, holonomy_rep, HolonomyRep, CLUSTER_TOL};
use crate::space::Space;

/// A `U(1)`-valued character, stored on generators.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Character {
    pub generators: Vec<String>,
    pub values: Vec<Complex64>,
}

impl Character {
    pub fn evaluate(&self, w: &[i32]) -> Complex64 {
        w.iter().fold(c(1.0, 0.0), |acc, &l| {
            let v = self.values[l.unsigned_abs() as usize - 1];
            if l > 0 {
                acc * v
            } else {
                acc * v.conj()
            }
        })
    }

    pub fn distance(&self, other: &Character) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// `c1(E)`: determinant of the holonomy on each `π1` generator.
pub fn c1(e: &NetBundle) -> Result<Character> {
    let rep = holonomy_rep(e)?;
    let pi1 = e.space().pi1()?;
    Ok(Character {
        generators: pi1.presentation().generators.clone(),
        values: rep.matrices().iter().map(linalg::det).collect(),
    })
}

/// `c1(E)` on a loop.
pub fn c1_at(e: &NetBundle, p: &Path) -> Complex64 {
    linalg::det(&e.holonomy(p))
}

/// `ĉ1(E)` on the summand generators of `H1(P, Z)`.
pub fn abelianized_c1(e: &NetBundle) -> Result<Character> {
    let space = e.space();
    let h1 = space.h1()?;
    let n = h1.group().ngens();
    let mut generators = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for k in 0..n {
        let p = cycle_to_loop(space, &h1.generator(k), space.basepoint())?;
        generators.push(format!("h{k}"));
        values.push(c1_at(e, &p));
    }
    Ok(Character { generators, values })
}

/// `χ^k(p) = Tr Λ^k z(p)`.
pub fn chi(e: &NetBundle, k: usize, p: &Path) -> Complex64 {
    linalg::trace(&linalg::compound(&e.holonomy(p), k))
}

fn chern_from_holonomy(h: &CMatrix, i: usize) -> Complex64 {
    let d = h.nrows();
    let mut sum = Complex64::zero();
    for k in 0..=i.min(d) {
        let b = linalg::binomial(d - k, i - k) as f64;
        if b == 0.0 {
            continue;
        }
        let t = linalg::trace(&linalg::compound(h, k)) * b;
        sum += if k % 2 == 0 { t } else { -t };
    }
    sum
}

/// The Chern function `𝔠_i E`.
#[derive(Clone, Debug)]
pub struct ChernFunction {
    bundle: NetBundle,
    index: usize,
}

impl ChernFunction {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn evaluate(&self, p: &Path) -> Complex64 {
        chern_from_holonomy(&self.bundle.holonomy(p), self.index)
    }

    /// Value on the loop with the given `π1` word.
    pub fn evaluate_word(&self, w: &[i32]) -> Result<Complex64> {
        let rep = holonomy_rep(&self.bundle)?;
        Ok(chern_from_holonomy(&rep.evaluate(w), self.index))
    }
}

pub fn chern_function(e: &NetBundle, i: usize) -> ChernFunction {
    ChernFunction { bundle: e.clone(), index: i }
}

/// `𝔠_1 E, ..., 𝔠_d E`.
pub fn chern_functions(e: &NetBundle) -> Vec<ChernFunction> {
    (1..=e.rank()).map(|i| chern_function(e, i)).collect()
}

/// `1 + Σ_i 𝔠_i E(p) h^i`.
pub fn total_chern_at(e: &NetBundle, h: Complex64, p: &Path) -> Complex64 {
    let hol = e.holonomy(p);
    let mut pow = c(1.0, 0.0);
    let mut sum = c(1.0, 0.0);
    for i in 1..=e.rank() {
        pow *= h;
        sum += chern_from_holonomy(&hol, i) * pow;
    }
    sum
}

/// Result of classifying a bundle over a base with cyclic `H1`.
#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    /// `Z` or `Z/n`
    pub group: String,
    /// set when `π1^ab` is finite cyclic rather than `Z`
    pub extension: bool,
    /// word of the generator loop
    pub generator: Word,
    pub eigenvalues: Vec<Complex64>,
    /// the characters `χ ≠ 1`, with multiplicity
    pub characters: Vec<Complex64>,
    /// zeros `(χ - 1)^-1` of the polynomial
    pub zeros: Vec<Complex64>,
    /// `Π (1 + (1 - χ) h)`, constant term first
    pub polynomial: Vec<Complex64>,
}

impl Classification {
    pub fn evaluate(&self, h: Complex64) -> Complex64 {
        self.polynomial.iter().rev().fold(Complex64::zero(), |acc, a| acc * h + a)
    }
}

fn cyclic_generator(space: &Space) -> Result<(FGAbelianGroup, Word, Vec<i64>)> {
    let pi1 = space.pi1()?;
    let ab = pi1.abelianization();
    if ab.ngens() != 1 {
        return Err(Error::WrongFundamentalGroup(ab.to_string()));
    }
    let n = ab.order_of(0) as i64;
    let reduce = |x: i64| if n == 0 { x } else { let r = x.rem_euclid(n); if 2 * r > n { r - n } else { r } };
    let mut coords: Vec<i64> = (0..pi1.ngens())
        .map(|k| {
            let v = pi1.exponents(&[k as i32 + 1]);
            reduce(pi1.abelian().coordinates(&v)[0].to_i64().expect("small coordinate"))
        })
        .collect();
    // orient so that the first generator with nonzero image counts positively
    let first = coords.iter().position(|&x| x != 0);
    let sign = if first.is_some_and(|k| coords[k] < 0) { -1 } else { 1 };
    for x in &mut coords {
        *x = reduce(sign * *x);
    }
    let w = match first {
        Some(k) if coords[k] == 1 => vec![k as i32 + 1],
        _ => {
            let lift = pi1.abelian().lift(&[sign.into()]);
            let mut w = Vec::new();
            for (k, e) in lift.iter().enumerate() {
                let e = e.to_i64().expect("small exponent");
                let letter = if e > 0 { k as i32 + 1 } else { -(k as i32 + 1) };
                w.extend(std::iter::repeat_n(letter, e.unsigned_abs() as usize));
            }
            w
        }
    };
    Ok((ab.clone(), w, coords))
}

/// Classifies `E` up to stable equivalence when `π1^ab` is cyclic.
///
/// For `π1 ≅ Z` the polynomial is a complete invariant; the `Z/n` case is
/// reported with `extension` set.
pub fn classify_cyclic(e: &NetBundle) -> Result<Classification> {
    let (group, generator, _) = cyclic_generator(e.space())?;
    let rep = holonomy_rep(e)?;
    let h = rep.evaluate(&generator);
    let mut eigenvalues = linalg::eigenvalues(&h);
    eigenvalues.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
    let characters: Vec<Complex64> = eigenvalues.iter().copied().filter(|z| (z - 1.0).norm() > CLUSTER_TOL).collect();
    let zeros = characters.iter().map(|z| (z - 1.0).inv()).collect();
    let mut polynomial = vec![c(1.0, 0.0)];
    for z in &characters {
        let a = c(1.0, 0.0) - z;
        let mut next = vec![Complex64::zero(); polynomial.len() + 1];
        for (i, p) in polynomial.iter().enumerate() {
            next[i] += p;
            next[i + 1] += p * a;
        }
        polynomial = next;
    }
    Ok(Classification {
        group: group.to_string(),
        extension: group.free_rank == 0,
        generator,
        eigenvalues,
        characters,
        zeros,
        polynomial,
    })
}

/// [`classify_cyclic`] restricted to `π1^ab ≅ Z`.
pub fn classify_pi1_z(e: &NetBundle) -> Result<Classification> {
    let g = e.space().pi1()?.abelianization().clone();
    if g != FGAbelianGroup::free(1) {
        return Err(Error::WrongFundamentalGroup(g.to_string()));
    }
    classify_cyclic(e)
}

/// A bundle with the given zeros (a sum of line bundles), the inverse of
/// [`classify_cyclic`] up to stable equivalence.
pub fn bundle_from_zeros(space: &std::sync::Arc<Space>, zeros: &[Complex64]) -> Result<NetBundle> {
    let (_, _, coords) = cyclic_generator(space)?;
    let chars: Vec<Complex64> = zeros.iter().map(|z| c(1.0, 0.0) + z.inv()).collect();
    let matrices = coords
        .iter()
        .map(|&n| linalg::diagonal(&chars.iter().map(|x| x.powi(n as i32)).collect::<Vec<_>>()))
        .collect();
    bundle_from_rep(&HolonomyRep::new(space.clone(), chars.len(), matrices)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn first_chern_class_of_lines() {
        let space = fixtures::pseudocircle();
        let chi_ = c(0.0, 1.0);
        let psi = c(-1.0, 0.0);
        let l = fixtures::line_bundle(&space, chi_);
        let m = fixtures::line_bundle(&space, psi);
        let gamma = fixtures::gamma(&space);
        assert!((c1_at(&l, &gamma) - chi_).norm() < 1e-12);
        assert!((c1_at(&l.direct_sum(&m).unwrap(), &gamma) - chi_ * psi).norm() < 1e-12);
        let ab = abelianized_c1(&l).unwrap();
        assert_eq!(ab.values.len(), 1);
        assert!((ab.values[0] - chi_).norm() < 1e-12 || (ab.values[0] - chi_.conj()).norm() < 1e-12);
    }

    #[test]
    fn chern_functions_of_lines() {
        let space = fixtures::pseudocircle();
        let (x, y) = (c(0.0, 1.0), c(-1.0, 0.0));
        let e = fixtures::line_bundle(&space, x).direct_sum(&fixtures::line_bundle(&space, y)).unwrap();
        let gamma = fixtures::gamma(&space);
        assert!((chern_function(&e, 2).evaluate(&gamma) - (1.0 - x) * (1.0 - y)).norm() < 1e-12);
        assert!((chern_function(&e, 3).evaluate(&gamma)).norm() < 1e-12);
        assert!((total_chern_at(&e, c(-1.0, 0.0), &gamma) - x * y).norm() < 1e-12);
    }

    #[test]
    fn classification_round_trip() {
        let space = fixtures::pseudocircle();
        let e = fixtures::line_bundle(&space, c(0.0, 1.0)).direct_sum(&fixtures::line_bundle(&space, c(-1.0, 0.0))).unwrap();
        let e = e.direct_sum(&NetBundle::trivial(space.clone(), 1)).unwrap();
        let cl = classify_pi1_z(&e).unwrap();
        assert_eq!(cl.zeros.len(), 2);
        assert_eq!(cl.polynomial.len(), 3);
        for z in &cl.zeros {
            assert!(cl.evaluate(*z).norm() < 1e-9);
        }
        let back = bundle_from_zeros(&space, &cl.zeros).unwrap();
        assert!(crate::ktheory::stably_equivalent(&e, &back).unwrap());
        assert!(matches!(classify_pi1_z(&NetBundle::trivial(fixtures::chain3(), 1)), Err(Error::WrongFundamentalGroup(_))));
    }
}
