//! Named example posets and bundles.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::equivariant::FiniteAbelianAction;
use crate::homotopy::Path;
use crate::linalg::{self, c, CMatrix};
use crate::netbundle::NetBundle;
use crate::poset::{product_poset, Poset};
use crate::presentation::{Pi1, Word};
use crate::realization::PosetNetBundle;
use crate::representation::{bundle_from_rep, HolonomyRep};
use crate::simplicial::Simplex1;
use crate::space::Space;

pub fn chain3_poset() -> Poset {
    Poset::new(&["0", "1", "2"], &[("0", "1"), ("1", "2")]).expect("valid")
}

pub fn pseudocircle_poset() -> Poset {
    Poset::new(&["a", "b", "x", "y"], &[("a", "x"), ("a", "y"), ("b", "x"), ("b", "y")]).expect("valid")
}

pub fn point_poset() -> Poset {
    Poset::new(&["p"], &[]).expect("valid")
}

/// Two points below a common top.
pub fn cone_poset() -> Poset {
    Poset::new(&["t", "u", "v"], &[("u", "t"), ("v", "t")]).expect("valid")
}

/// Two incomparable points.
pub fn pair_poset() -> Poset {
    Poset::new(&["u", "v"], &[]).expect("valid")
}

/// Face poset of the hemicube, a model of the projective plane.
pub fn rp2_poset() -> Poset {
    Poset::new(
        &["v1", "v2", "v3", "v4", "ex1", "ex2", "ey1", "ey2", "ez1", "ez2", "fx", "fy", "fz"],
        &[
            ("v1", "ex1"),
            ("v4", "ex1"),
            ("v2", "ex2"),
            ("v3", "ex2"),
            ("v1", "ey1"),
            ("v3", "ey1"),
            ("v2", "ey2"),
            ("v4", "ey2"),
            ("v1", "ez1"),
            ("v2", "ez1"),
            ("v3", "ez2"),
            ("v4", "ez2"),
            ("ey1", "fx"),
            ("ey2", "fx"),
            ("ez1", "fx"),
            ("ez2", "fx"),
            ("ex1", "fy"),
            ("ex2", "fy"),
            ("ez1", "fy"),
            ("ez2", "fy"),
            ("ex1", "fz"),
            ("ex2", "fz"),
            ("ey1", "fz"),
            ("ey2", "fz"),
        ],
    )
    .expect("valid")
}

pub fn product_of_fixtures() -> Poset {
    Arc::unwrap_or_clone(product_poset(&pseudocircle_poset(), &chain3_poset()).poset)
}

pub fn chain3() -> Arc<Space> {
    Space::new(chain3_poset())
}

pub fn pseudocircle() -> Arc<Space> {
    Space::new(pseudocircle_poset())
}

pub fn point() -> Arc<Space> {
    Space::new(point_poset())
}

pub fn product() -> Arc<Space> {
    Space::new(product_of_fixtures())
}

pub fn rp2() -> Arc<Space> {
    Space::new(rp2_poset())
}

/// The loop `(y; a, b) * (x; b, a)` at `a` of the pseudocircle.
pub fn gamma(space: &Space) -> Path {
    let p = space.poset();
    Path::new(vec![
        Simplex1::from_names(p, "x", "b", "a").expect("valid"),
        Simplex1::from_names(p, "y", "a", "b").expect("valid"),
    ])
    .expect("composable")
}

/// The line bundle `L_χ` on the pseudocircle: `χ` on `b|y`, `1` on the
/// other cover pairs, so that the holonomy of [`gamma`] is `χ`.
pub fn line_bundle(space: &Arc<Space>, chi: Complex64) -> NetBundle {
    NetBundle::line(space.clone(), &[("b", "y", chi)]).expect("unit modulus")
}

pub fn omega() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / 3.0)
}

/// Rank two with holonomy conjugate to `diag(i, -1)`, written in a
/// non-diagonal basis.
pub fn diagonalizable_bundle(space: &Arc<Space>) -> NetBundle {
    let s = 0.5f64.sqrt();
    let u = CMatrix::from_row_slice(2, 2, &[c(s, 0.0), c(0.0, s), c(0.0, s), c(s, 0.0)]);
    let h = &u * linalg::diagonal(&[c(0.0, 1.0), c(-1.0, 0.0)]) * u.adjoint();
    let p = space.poset();
    let mut maps: BTreeMap<(usize, usize), CMatrix> = p.hasse().into_iter().map(|k| (k, linalg::identity(2))).collect();
    maps.insert((p.require("b").expect("fixture"), p.require("y").expect("fixture")), h);
    NetBundle::new(space.clone(), 2, maps).expect("unitary")
}

fn swap2() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
}

/// `Z/2` acting on `T_2` over the pseudocircle by exchanging coordinates.
pub fn swap_action() -> FiniteAbelianAction {
    let t2 = NetBundle::trivial(pseudocircle(), 2);
    let n = t2.poset().len();
    FiniteAbelianAction::new(&t2, vec![2], vec![vec![swap2(); n]]).expect("swap is an action")
}

/// Two-point discrete fibre over the pseudocircle, exchanged along `b|y`.
pub fn twisted_pair() -> PosetNetBundle {
    PosetNetBundle::twisted(pseudocircle(), Arc::new(pair_poset()), &[("b", "y")], &[1, 0]).expect("valid")
}

/// Cone fibre with its two minimal points exchanged along `b|y`.
pub fn twisted_cone() -> PosetNetBundle {
    let f = cone_poset();
    let perm = ["t", "v", "u"].map(|n| f.require(n).expect("fixture"));
    PosetNetBundle::twisted(pseudocircle(), Arc::new(f), &[("b", "y")], &perm).expect("valid")
}

/// Pseudocircle fibre with `x` and `y` exchanged along `b|y`.
pub fn twisted_circle() -> PosetNetBundle {
    let f = pseudocircle_poset();
    let perm = ["a", "b", "y", "x"].map(|n| f.require(n).expect("fixture"));
    PosetNetBundle::twisted(pseudocircle(), Arc::new(f), &[("b", "y")], &perm).expect("valid")
}

pub fn trivial_chain_fibre() -> PosetNetBundle {
    PosetNetBundle::trivial(pseudocircle(), Arc::new(chain3_poset()))
}

pub fn trivial_circle_fibre() -> PosetNetBundle {
    PosetNetBundle::trivial(pseudocircle(), Arc::new(pseudocircle_poset()))
}

/// A fixture by name.
#[derive(Clone, Debug)]
pub enum Fixture {
    Poset(Poset),
    Bundle(NetBundle),
    PosetBundle(PosetNetBundle),
    Action(FiniteAbelianAction),
}

pub const POSETS: [&str; 7] = ["chain3", "pseudocircle", "product", "point", "cone", "pair", "rp2"];
pub const BUNDLES: [&str; 7] = ["t1", "t2", "t3", "l_i", "l_minus1", "l_omega", "diag"];
pub const POSET_BUNDLES: [&str; 5] = ["twisted_pair", "twisted_cone", "twisted_circle", "trivial_chain", "trivial_circle"];
pub const ACTIONS: [&str; 1] = ["swap_t2"];

pub fn names() -> Vec<&'static str> {
    POSETS.iter().chain(&BUNDLES).chain(&POSET_BUNDLES).chain(&ACTIONS).copied().collect()
}

pub fn poset(name: &str) -> Option<Poset> {
    Some(match name {
        "chain3" => chain3_poset(),
        "pseudocircle" => pseudocircle_poset(),
        "product" => product_of_fixtures(),
        "point" => point_poset(),
        "cone" => cone_poset(),
        "pair" => pair_poset(),
        "rp2" => rp2_poset(),
        _ => return None,
    })
}

pub fn bundle(name: &str) -> Option<NetBundle> {
    let s = pseudocircle();
    Some(match name {
        "t1" => NetBundle::trivial(s, 1),
        "t2" => NetBundle::trivial(s, 2),
        "t3" => NetBundle::trivial(s, 3),
        "l_i" => line_bundle(&s, c(0.0, 1.0)),
        "l_minus1" => line_bundle(&s, c(-1.0, 0.0)),
        "l_omega" => line_bundle(&s, omega()),
        "diag" => diagonalizable_bundle(&s),
        _ => return None,
    })
}

pub fn fixture(name: &str) -> Option<Fixture> {
    if let Some(p) = poset(name) {
        return Some(Fixture::Poset(p));
    }
    if let Some(b) = bundle(name) {
        return Some(Fixture::Bundle(b));
    }
    Some(match name {
        "twisted_pair" => Fixture::PosetBundle(twisted_pair()),
        "twisted_cone" => Fixture::PosetBundle(twisted_cone()),
        "twisted_circle" => Fixture::PosetBundle(twisted_circle()),
        "trivial_chain" => Fixture::PosetBundle(trivial_chain_fibre()),
        "trivial_circle" => Fixture::PosetBundle(trivial_circle_fibre()),
        "swap_t2" => Fixture::Action(swap_action()),
        _ => return None,
    })
}

/// Every bundle fixture.
pub fn all_bundles() -> Vec<(&'static str, NetBundle)> {
    BUNDLES.iter().map(|&n| (n, bundle(n).expect("listed"))).collect()
}

/// Seed for every randomized choice the library makes on its own.
pub const SEED: u64 = 0x5eed_0fc0de;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Applies a random unitary change of frame in every fibre.
pub fn random_gauge<R: Rng + ?Sized>(e: &NetBundle, rng: &mut R) -> NetBundle {
    let g: Vec<CMatrix> = (0..e.poset().len()).map(|_| linalg::random_unitary(e.rank(), rng)).collect();
    let maps = e.maps().iter().map(|(&(sub, sup), j)| ((sub, sup), &g[sup] * j * g[sub].adjoint())).collect();
    NetBundle::with_tolerance(e.space().clone(), e.rank(), maps, 1e-8).expect("gauge preserves net bundles")
}

/// A bundle whose holonomy factors through `π1^ab`: random characters
/// (of the right order on torsion summands), conjugated by a random
/// unitary and gauged randomly.
pub fn random_bundle<R: Rng + ?Sized>(space: &Arc<Space>, rank: usize, rng: &mut R) -> NetBundle {
    let pi1 = space.pi1().expect("connected fixture");
    let ab = pi1.abelianization().clone();
    let angles: Vec<Vec<f64>> = (0..rank)
        .map(|_| {
            (0..ab.ngens())
                .map(|j| match ab.order_of(j) {
                    0 => rng.random::<f64>() * 2.0 * PI,
                    n => 2.0 * PI * rng.random_range(0..n) as f64 / n as f64,
                })
                .collect()
        })
        .collect();
    let v = linalg::random_unitary(rank, rng);
    let matrices = (0..pi1.ngens())
        .map(|k| {
            let coords = pi1.abelian().coordinates_i64(&[vec![0i64; k], vec![1], vec![0; pi1.ngens() - k - 1]].concat());
            let diag: Vec<Complex64> =
                angles.iter().map(|th| Complex64::from_polar(1.0, th.iter().zip(&coords).map(|(t, &x)| t * x as f64).sum())).collect();
            &v * linalg::diagonal(&diag) * v.adjoint()
        })
        .collect();
    let rep = HolonomyRep::new(space.clone(), rank, matrices).expect("abelian characters satisfy the relators");
    random_gauge(&bundle_from_rep(&rep).expect("representation bundle"), rng)
}

/// A random word of length `len` in the non-tree generators of `π1`;
/// empty when there are none.
pub fn random_word<R: Rng + ?Sized>(pi1: &Pi1, len: usize, rng: &mut R) -> Word {
    let letters: Vec<i32> = (0..pi1.ngens()).filter(|&k| !pi1.is_tree_generator(k)).map(|k| k as i32 + 1).collect();
    if letters.is_empty() {
        return Vec::new();
    }
    (0..len)
        .map(|_| {
            let l = letters[rng.random_range(0..letters.len())];
            if rng.random::<bool>() { l } else { -l }
        })
        .collect()
}

/// A random connected poset on `n` elements (random upper-triangular
/// relation, resampled until connected).
pub fn random_connected_poset<R: Rng + ?Sized>(n: usize, density: f64, rng: &mut R) -> Poset {
    let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    loop {
        let covers: Vec<(String, String)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|_| rng.random::<f64>() < density)
            .map(|(i, j)| (names[i].clone(), names[j].clone()))
            .collect();
        let p = Poset::new(&names, &covers).expect("upper-triangular relations are acyclic");
        if p.is_connected() {
            return p;
        }
    }
}
