use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use posnet::abelian::{AbelianQuotient, FGAbelianGroup};
use posnet::intlinalg::{smith, IntMatrix};
use proptest::prelude::*;

fn relations() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..7).prop_flat_map(|n| (Just(n), prop::collection::vec(prop::collection::vec(-6i64..=6, n), 0..8)))
}

fn big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// The group read off a dense Smith normal form.
fn dense(n: usize, rows: &[Vec<BigInt>]) -> FGAbelianGroup {
    if rows.is_empty() {
        return FGAbelianGroup::free(n);
    }
    let s = smith(&IntMatrix::from_rows(rows, n), false);
    let torsion: Vec<u64> = s.diagonal.iter().map(|d| d.abs()).filter(|d| !d.is_one()).map(|d| d.try_into().unwrap()).collect();
    FGAbelianGroup::from_cyclic(n - s.rank(), &torsion)
}

fn reduced(q: &AbelianQuotient, x: Vec<BigInt>) -> Vec<BigInt> {
    let g = q.group();
    x.into_iter()
        .enumerate()
        .map(|(k, v)| match g.order_of(k) {
            0 => v,
            o => v.mod_floor(&BigInt::from(o)),
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sparse_elimination_matches_dense_smith((n, rows) in relations()) {
        let rows = big(&rows);
        let q = AbelianQuotient::from_relations(n, rows.clone());
        prop_assert_eq!(q.group(), &dense(n, &rows));
        for r in &rows {
            prop_assert!(q.is_zero(r));
        }
        for r in q.relation_rows() {
            prop_assert!(q.is_zero(&r));
        }
        prop_assert_eq!(&dense(n, &q.relation_rows()), q.group());
    }

    /// Adding a huge multiple of one relation to another leaves the
    /// lattice alone but pushes the row past `i64`.
    #[test]
    fn oversized_rows_are_handled((n, rows) in relations(), k in 0usize..8, j in 0usize..8) {
        let rows = big(&rows);
        prop_assume!(k < rows.len() && j < rows.len() && j != k);
        let scale = BigInt::from(10u8).pow(20);
        let mut wide = rows.clone();
        for (x, y) in wide[k].iter_mut().zip(&rows[j]) {
            *x += &scale * y;
        }
        let q = AbelianQuotient::from_relations(n, wide);
        prop_assert_eq!(q.group(), &dense(n, &rows));
        for r in &rows {
            prop_assert!(q.is_zero(r));
        }
    }

    #[test]
    fn coordinates_are_additive_and_lift((n, rows) in relations(), x in prop::collection::vec(-9i64..=9, 6), y in prop::collection::vec(-9i64..=9, 6)) {
        let q = AbelianQuotient::from_relations(n, big(&rows));
        let x: Vec<BigInt> = x[..n].iter().map(|&v| BigInt::from(v)).collect();
        let y: Vec<BigInt> = y[..n].iter().map(|&v| BigInt::from(v)).collect();
        let sum: Vec<BigInt> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let cx = q.coordinates(&x);
        let cy = q.coordinates(&y);
        let added = reduced(&q, cx.iter().zip(&cy).map(|(a, b)| a + b).collect());
        prop_assert_eq!(q.coordinates(&sum), added);
        prop_assert_eq!(q.coordinates(&q.lift(&cx)), cx.clone());
        for k in 0..q.group().ngens() {
            let mut e = vec![BigInt::zero(); q.group().ngens()];
            e[k] = BigInt::one();
            prop_assert_eq!(q.coordinates(&q.generator(k)), e);
        }
    }
}
