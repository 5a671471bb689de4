use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use posnet::fixtures::{self, random_connected_poset, rng};
use posnet::homology::{path_chain, Chain1};
use posnet::homotopy::{elementary_deformations, homotopic, Budget, DeformationKind, Path};
use posnet::poset::{product_poset, Poset};
use posnet::presentation::inverse;
use posnet::realization::alexandroff;
use posnet::simplicial::{enumerate_simplices, nerve_1_simplices, nerve_2_simplices, Simplex, Simplex1};
use posnet::space::Space;
use proptest::prelude::*;
use rand::Rng;

fn poset_strategy(max: usize) -> impl Strategy<Value = Poset> {
    (any::<u64>(), 1..=max, 0.2f64..0.8).prop_map(|(seed, n, density)| random_connected_poset(n, density, &mut rng(seed)))
}

fn with_top(p: &Poset) -> Poset {
    let mut names: Vec<String> = p.names().to_vec();
    names.push("top".into());
    let mut covers: Vec<(String, String)> = p.hasse().into_iter().map(|(a, b)| (names[a].clone(), names[b].clone())).collect();
    for m in p.maximal_elements() {
        covers.push((names[m].clone(), "top".into()));
    }
    Poset::new(&names, &covers).unwrap()
}

/// A random walk of `len` non-degenerate steps from the basepoint.
fn random_path(space: &Space, len: usize, seed: u64) -> Path {
    let mut r = rng(seed);
    let mut at = space.basepoint();
    let mut steps = Vec::new();
    for _ in 0..len {
        let out: Vec<Simplex1> = space.edges().iter().filter(|s| s.d1 == at && !s.is_degenerate()).copied().collect();
        if out.is_empty() {
            break;
        }
        let s = out[r.random_range(0..out.len())];
        at = s.d0;
        steps.push(s);
    }
    if steps.is_empty() {
        Path::constant(at)
    } else {
        Path::new(steps).unwrap()
    }
}

fn random_loop(space: &Space, len: usize, seed: u64) -> Path {
    let pi = space.pi1().unwrap();
    let w = fixtures::random_word(pi, len, &mut rng(seed));
    if w.is_empty() {
        Path::constant(space.basepoint())
    } else {
        pi.word_loop(&w)
    }
}

fn abelian_class(space: &Space, p: &Path) -> Vec<BigInt> {
    let pi = space.pi1().unwrap();
    pi.abelian().coordinates(&pi.exponents(&pi.path_word(p)))
}

fn chain_diff(a: &Chain1, b: &Chain1) -> Chain1 {
    let mut d = a.clone();
    d.add_chain(b, -1);
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dual_is_an_involution(p in poset_strategy(8)) {
        prop_assert_eq!(p.dual().dual(), p.clone());
        for (a, b) in p.strict_pairs() {
            prop_assert!(p.dual().lt(b, a));
        }
    }

    #[test]
    fn basic_opens_nest(p in poset_strategy(8)) {
        let p = Arc::new(p);
        let x = alexandroff(p.clone());
        for a in 0..p.len() {
            prop_assert!(x.is_open(&x.basis(a)));
            for b in 0..p.len() {
                if p.leq(b, a) {
                    let vb: BTreeSet<usize> = x.basis(b).into_iter().collect();
                    prop_assert!(x.basis(a).iter().all(|o| vb.contains(o)));
                }
            }
        }
    }

    #[test]
    fn enumerated_simplices_are_valid(p in poset_strategy(5)) {
        for s in enumerate_simplices(&p, 1, true).unwrap() {
            let Simplex::Edge(s) = s else { unreachable!() };
            prop_assert!(s.is_valid(&p));
            prop_assert_eq!(s.reverse().d0, s.d1);
            prop_assert_eq!(s.reverse().d1, s.d0);
            prop_assert_eq!(s.reverse().reverse(), s);
        }
        for s in enumerate_simplices(&p, 2, true).unwrap() {
            let Simplex::Triangle(t) = s else { unreachable!() };
            prop_assert!(t.is_valid(&p));
        }
        for n in nerve_1_simplices(&p) {
            prop_assert!(n.embed().is_valid(&p));
        }
        let embedded: BTreeSet<_> = nerve_2_simplices(&p).iter().map(|n| n.embed()).collect();
        prop_assert_eq!(embedded.len(), nerve_2_simplices(&p).len());
        prop_assert!(embedded.iter().all(|t| t.is_valid(&p)));
    }

    #[test]
    fn product_simplices_pair_up(p in poset_strategy(4), q in poset_strategy(3)) {
        let prod = product_poset(&p, &q);
        for n in 0..=2 {
            let count = |x: &Poset| enumerate_simplices(x, n, true).unwrap().len();
            prop_assert_eq!(count(&prod.poset), count(&p) * count(&q), "degree {}", n);
        }
    }

    #[test]
    fn upward_directed_posets_are_simply_connected(p in poset_strategy(5), seed in any::<u64>()) {
        let space = Space::new(with_top(&p));
        prop_assert!(space.poset().is_upward_directed());
        prop_assert!(space.pi1().unwrap().abelianization().is_trivial());
        let l = random_path(&space, 4, seed);
        if l.is_loop() {
            let c = Path::constant(space.basepoint());
            prop_assert!(homotopic(&space, &l, &c, Budget::nodes(20_000)).unwrap().is_yes());
        }
    }

    #[test]
    fn deformations_come_in_inverse_pairs(p in poset_strategy(5), seed in any::<u64>(), len in 1usize..4) {
        let space = Space::new(p);
        let path = random_path(&space, len, seed);
        for d in elementary_deformations(&space, &path) {
            let back = elementary_deformations(&space, &d.path);
            let undo = match d.kind {
                DeformationKind::Ampliation => DeformationKind::Contraction,
                DeformationKind::Contraction => DeformationKind::Ampliation,
            };
            prop_assert!(back.iter().any(|e| e.kind == undo && e.path == path && e.faces == d.faces));
        }
    }

    #[test]
    fn deformations_change_the_chain_by_a_boundary(p in poset_strategy(5), seed in any::<u64>(), len in 1usize..4) {
        let space = Space::new(p);
        let path = random_path(&space, len, seed);
        for d in elementary_deformations(&space, &path) {
            let [f0, f1, f2] = d.faces;
            let boundary = Chain1::from_terms([(f0, 1), (f1, -1), (f2, 1)]);
            let diff = chain_diff(&path_chain(&d.path), &path_chain(&path));
            let sign = if d.kind == DeformationKind::Ampliation { 1 } else { -1 };
            prop_assert_eq!(diff, boundary.scaled(sign));
        }
    }

    #[test]
    fn reversal_inverts_the_abelian_class(p in poset_strategy(6), seed in any::<u64>(), len in 0usize..6) {
        let space = Space::new(p);
        let l = random_loop(&space, len, seed);
        let pi = space.pi1().unwrap();
        let mut sum = pi.exponents(&pi.class_in_pi1(&l).unwrap());
        for (s, x) in sum.iter_mut().zip(pi.exponents(&pi.class_in_pi1(&l.reverse()).unwrap())) {
            *s += x;
        }
        prop_assert!(pi.abelian().is_zero(&sum));
    }

    #[test]
    fn abelian_class_ignores_rotation(p in poset_strategy(6), seed in any::<u64>(), len in 1usize..6) {
        let space = Space::new(p);
        let l = random_loop(&space, len, seed);
        let base = abelian_class(&space, &l);
        for i in 0..l.len() {
            let steps = [&l.steps()[i..], &l.steps()[..i]].concat();
            prop_assert_eq!(abelian_class(&space, &Path::new(steps).unwrap()), base.clone());
        }
    }

    #[test]
    fn retraced_paths_are_abelian_trivial(p in poset_strategy(6), seed in any::<u64>(), len in 1usize..6) {
        let space = Space::new(p);
        let q = random_path(&space, len, seed);
        let l = Path::concat(&q, &q.reverse()).unwrap();
        prop_assert!(abelian_class(&space, &l).iter().all(|x| *x == BigInt::from(0)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reversal_inverts_the_class(seed in any::<u64>(), len in 1usize..4) {
        let space = fixtures::pseudocircle();
        let pi = space.pi1().unwrap();
        let l = random_loop(&space, len, seed);
        let inv = pi.word_loop(&inverse(&pi.class_in_pi1(&l).unwrap()));
        prop_assert!(homotopic(&space, &l.reverse(), &inv, Budget::nodes(50_000)).unwrap().is_yes());
    }

    /// `T` is injective on the pseudocircle and on its product with a chain.
    #[test]
    fn abelian_trivial_loops_contract(which in 0usize..2, seed in any::<u64>(), len in 1usize..5) {
        let (space, len) = if which == 0 { (fixtures::pseudocircle(), len) } else { (fixtures::product(), len.min(3)) };
        let l = random_loop(&space, len, seed);
        if abelian_class(&space, &l).iter().all(|x| *x == BigInt::from(0)) {
            let c = Path::constant(space.basepoint());
            prop_assert!(homotopic(&space, &l, &c, Budget::nodes(50_000)).unwrap().is_yes());
        }
    }
}
