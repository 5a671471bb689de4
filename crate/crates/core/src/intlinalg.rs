//! Exact integer linear algebra: dense matrices over arbitrary-precision
//! integers, Smith normal form with unimodular transforms, and an
//! incrementally maintained echelon basis for sublattices of `Z^n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-major dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigInt>], cols: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row");
            for (j, x) in r.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>], cols: usize) -> IntMatrix {
        let big: Vec<Vec<BigInt>> =
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        IntMatrix::from_rows(&big, cols)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (j, xj) in x.iter().enumerate() {
                    if !xj.is_zero() {
                        acc += &self[(i, j)] * xj;
                    }
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let m = &self[(i, j)];
                if !m.is_zero() {
                    *o += xi * m;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let v = s * q;
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let v = s * q;
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// `U * M * V = D` with `D` diagonal, `d_0 | d_1 | ...`, all positive.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Nonzero diagonal entries, in order; `len() == rank`.
    pub diagonal: Vec<BigInt>,
    pub u: Option<IntMatrix>,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

/// Smith normal form by elimination, pivoting on the entry of least
/// absolute value. `U` is tracked only when `track_u` is set.
pub fn smith(m: &IntMatrix, track_u: bool) -> Smith {
    let (r, c) = (m.nrows(), m.ncols());
    let mut a = m.clone();
    let mut u = if track_u { Some(IntMatrix::identity(r)) } else { None };
    let mut v = IntMatrix::identity(c);
    let mut v_inv = IntMatrix::identity(c);
    let mut diagonal = Vec::new();

    // Column operation bookkeeping: A <- A E, V <- V E, V^-1 <- E^-1 V^-1.
    let col_add = |a: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, dst, src, q: &BigInt| {
        a.add_col(dst, src, q);
        v.add_col(dst, src, q);
        vi.add_row(src, dst, &-q);
    };

    let mut t = 0;
    while t < r.min(c) {
        // least nonzero absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = &a[(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        break;
                    }
                }
            }
            if let Some((bi, bj)) = best {
                if a[(bi, bj)].abs().is_one() {
                    break;
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        if let Some(u) = u.as_mut() {
            u.swap_rows(t, pi);
        }
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        v_inv.swap_rows(t, pj);

        loop {
            let mut dirty = false;
            // clear column t below the pivot
            for i in (t + 1)..r {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row(i, t, &-&q);
                if let Some(u) = u.as_mut() {
                    u.add_row(i, t, &-&q);
                }
                if !a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            // clear row t right of the pivot
            for j in (t + 1)..c {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                col_add(&mut a, &mut v, &mut v_inv, j, t, &-&q);
                if !a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // move the smallest remainder in row/column t to the pivot
                let mut bi = t;
                let mut bj = t;
                for i in (t + 1)..r {
                    if !a[(i, t)].is_zero() && a[(i, t)].abs() < a[(bi, bj)].abs() {
                        bi = i;
                        bj = t;
                    }
                }
                for j in (t + 1)..c {
                    if !a[(t, j)].is_zero() && a[(t, j)].abs() < a[(bi, bj)].abs() {
                        bi = t;
                        bj = j;
                    }
                }
                if bi != t {
                    a.swap_rows(t, bi);
                    if let Some(u) = u.as_mut() {
                        u.swap_rows(t, bi);
                    }
                }
                if bj != t {
                    a.swap_cols(t, bj);
                    v.swap_cols(t, bj);
                    v_inv.swap_rows(t, bj);
                }
                continue;
            }
            // divisibility of the trailing block by the pivot
            let piv = a[(t, t)].clone();
            let mut offender = None;
            'outer: for i in (t + 1)..r {
                for j in (t + 1)..c {
                    if !a[(i, j)].is_multiple_of(&piv) {
                        offender = Some(i);
                        break 'outer;
                    }
                }
            }
            match offender {
                Some(i) => {
                    a.add_row(t, i, &BigInt::one());
                    if let Some(u) = u.as_mut() {
                        u.add_row(t, i, &BigInt::one());
                    }
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            if let Some(u) = u.as_mut() {
                u.negate_row(t);
            }
        }
        diagonal.push(a[(t, t)].clone());
        t += 1;
    }
    Smith { diagonal, u, v, v_inv }
}

/// Echelon basis of a sublattice of `Z^n`, maintained under insertion.
///
/// Rows are kept sorted by pivot column; each pivot is positive. Entries
/// live in `i64` until an operation would overflow, after which the whole
/// basis switches to arbitrary precision.
#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    small: Option<Vec<(usize, Vec<i64>)>>,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Lattice {
    pub fn new(dim: usize) -> Lattice {
        Lattice { dim, small: Some(Vec::new()), rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        match &self.small {
            Some(rows) => rows.len(),
            None => self.rows.len(),
        }
    }

    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        match &self.small {
            Some(rows) => rows.iter().map(|(_, r)| to_big(r)).collect(),
            None => self.rows.iter().map(|(_, r)| r.clone()).collect(),
        }
    }

    fn promote(&mut self) {
        if let Some(rows) = self.small.take() {
            self.rows = rows.into_iter().map(|(p, r)| (p, to_big(&r))).collect();
        }
    }

    /// Adds `v` to the generating set.
    pub fn insert(&mut self, v: Vec<BigInt>) {
        assert_eq!(v.len(), self.dim);
        if let Some(rows) = self.small.as_mut() {
            let small: Option<Vec<i64>> = v.iter().map(|x| i64::try_from(x).ok()).collect();
            if let Some(sv) = small {
                if insert_small(rows, sv) {
                    return;
                }
            }
            self.promote();
        }
        self.insert_big(v);
    }

    fn insert_big(&mut self, mut v: Vec<BigInt>) {
        let mut from = 0;
        let mut k = 0;
        while let Some(p) = (from..v.len()).find(|&j| !v[j].is_zero()) {
            while k < self.rows.len() && self.rows[k].0 < p {
                k += 1;
            }
            if k == self.rows.len() || self.rows[k].0 != p {
                if v[p].is_negative() {
                    for x in v.iter_mut() {
                        *x = -std::mem::take(x);
                    }
                }
                self.rows.insert(k, (p, v));
                return;
            }
            let row = &mut self.rows[k].1;
            let a = row[p].clone();
            let b = v[p].clone();
            if b.is_multiple_of(&a) {
                let q = &b / &a;
                for j in p..self.dim {
                    if !row[j].is_zero() {
                        let d = &row[j] * &q;
                        v[j] -= d;
                    }
                }
            } else {
                // [row; v] <- [[s, t], [-b/g, a/g]] [row; v]
                let e = a.extended_gcd(&b);
                let (g, s, t) = (e.gcd, e.x, e.y);
                let ag = &a / &g;
                let bg = &b / &g;
                for j in p..self.dim {
                    let (x, y) = (row[j].clone(), v[j].clone());
                    if x.is_zero() && y.is_zero() {
                        continue;
                    }
                    row[j] = &s * &x + &t * &y;
                    v[j] = &ag * &y - &bg * &x;
                }
                if row[p].is_negative() {
                    for x in row.iter_mut() {
                        *x = -std::mem::take(x);
                    }
                }
            }
            from = p + 1;
            k += 1;
        }
    }

    /// Membership test by reduction against the echelon basis.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut v = v.to_vec();
        for (p, row) in self.basis().iter().enumerate().map(|(i, r)| (self.pivot(i), r)) {
            // entries left of this pivot must already vanish
            if (0..p).any(|j| !v[j].is_zero()) {
                return false;
            }
            if v[p].is_zero() {
                continue;
            }
            if !v[p].is_multiple_of(&row[p]) {
                return false;
            }
            let q = &v[p] / &row[p];
            for j in p..self.dim {
                if !row[j].is_zero() {
                    let d = &row[j] * &q;
                    v[j] -= d;
                }
            }
        }
        v.iter().all(Zero::is_zero)
    }

    fn pivot(&self, i: usize) -> usize {
        match &self.small {
            Some(rows) => rows[i].0,
            None => self.rows[i].0,
        }
    }

    pub fn to_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.basis(), self.dim)
    }
}

/// `i64` version of the echelon insertion. Returns `false`, leaving `rows`
/// untouched, if some intermediate value would overflow.
fn insert_small(rows: &mut Vec<(usize, Vec<i64>)>, mut v: Vec<i64>) -> bool {
    // Changes to existing rows are staged and committed only on success.
    let mut staged: Vec<(usize, Vec<i64>)> = Vec::new();
    let dim = v.len();
    let mut from = 0;
    let mut k = 0;
    let result = loop {
        let Some(p) = (from..dim).find(|&j| v[j] != 0) else { break None };
        while k < rows.len() && rows[k].0 < p {
            k += 1;
        }
        if k == rows.len() || rows[k].0 != p {
            if v[p] < 0 {
                for x in v.iter_mut() {
                    match x.checked_neg() {
                        Some(y) => *x = y,
                        None => return false,
                    }
                }
            }
            break Some((k, p));
        }
        let row: &Vec<i64> = match staged.iter().find(|(i, _)| *i == k) {
            Some((_, r)) => r,
            None => &rows[k].1,
        };
        let (a, b) = (row[p], v[p]);
        if b % a == 0 {
            let q = b / a;
            for j in p..dim {
                if row[j] != 0 {
                    let Some(d) = row[j].checked_mul(q).and_then(|d| v[j].checked_sub(d)) else { return false };
                    v[j] = d;
                }
            }
        } else {
            let (g, s, t) = ext_gcd(a, b);
            let (ag, bg) = (a / g, b / g);
            let mut new_row = row.clone();
            for j in p..dim {
                let (x, y) = (row[j], v[j]);
                if x == 0 && y == 0 {
                    continue;
                }
                let r = s.checked_mul(x).zip(t.checked_mul(y)).and_then(|(u, w)| u.checked_add(w));
                let w = ag.checked_mul(y).zip(bg.checked_mul(x)).and_then(|(u, w)| u.checked_sub(w));
                let (Some(r), Some(w)) = (r, w) else { return false };
                new_row[j] = r;
                v[j] = w;
            }
            if new_row[p] < 0 {
                for x in new_row.iter_mut() {
                    *x = -*x;
                }
            }
            staged.retain(|(i, _)| *i != k);
            staged.push((k, new_row));
        }
        from = p + 1;
        k += 1;
    };
    for (i, r) in staged {
        rows[i].1 = r;
    }
    if let Some((k, p)) = result {
        rows.insert(k, (p, v));
    }
    true
}

/// `(g, s, t)` with `g = gcd(a, b) > 0` and `s a + t b = g`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (r0, s0, t0) = (-r0, -s0, -t0);
    }
    (r0 as i64, s0 as i64, t0 as i64)
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Left kernel of `m`: a basis of `{ x : x m = 0 }` as rows.
pub fn left_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = smith(m, true);
    let r = s.rank();
    let u = s.u.expect("tracked");
    (r..m.nrows()).map(|i| u.row(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_of(rows: &[Vec<i64>], cols: usize) -> Vec<i64> {
        let m = IntMatrix::from_i64(rows, cols);
        let s = smith(&m, true);
        // U M V really is the reported diagonal
        let d = s.u.as_ref().unwrap().mul(&m).mul(&s.v);
        for i in 0..d.nrows() {
            for j in 0..d.ncols() {
                let expect = if i == j && i < s.rank() { s.diagonal[i].clone() } else { BigInt::zero() };
                assert_eq!(d[(i, j)], expect);
            }
        }
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(cols));
        s.diagonal.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn smith_of_small_matrices() {
        assert_eq!(diag_of(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3), vec![2, 6, 12]);
        assert_eq!(diag_of(&[vec![3]], 1), vec![3]);
        assert_eq!(diag_of(&[vec![0, 0]], 2), Vec::<i64>::new());
        assert_eq!(diag_of(&[vec![2, 0], vec![0, 3]], 2), vec![1, 6]);
        assert_eq!(diag_of(&[vec![1, -1, 1, -1]], 4), vec![1]);
    }

    #[test]
    fn lattice_insertion_and_membership() {
        let mut l = Lattice::new(3);
        l.insert(to_big(&[2, 0, 0]));
        l.insert(to_big(&[3, 0, 0]));
        l.insert(to_big(&[0, 4, 2]));
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&to_big(&[1, 0, 0])));
        assert!(l.contains(&to_big(&[5, -8, -4])));
        assert!(!l.contains(&to_big(&[0, 2, 1])));
        assert!(!l.contains(&to_big(&[0, 0, 1])));
    }

    #[test]
    fn overflow_switches_to_big_integers() {
        let big = i64::MAX / 2 + 1;
        let mut l = Lattice::new(2);
        l.insert(to_big(&[3, big]));
        l.insert(to_big(&[2, big]));
        assert_eq!(l.rank(), 2);
        let mut reference = Lattice::new(2);
        reference.promote();
        reference.insert(to_big(&[3, big]));
        reference.insert(to_big(&[2, big]));
        assert_eq!(l.basis(), reference.basis());
        assert!(l.contains(&to_big(&[1, 0])));
    }

    #[test]
    fn left_kernel_annihilates() {
        let m = IntMatrix::from_i64(&[vec![1, 2], vec![2, 4], vec![0, 1]], 2);
        let k = left_kernel(&m);
        assert_eq!(k.len(), 1);
        let prod = IntMatrix::from_rows(&k, 3).mul(&m);
        assert!(prod.row(0).iter().all(Zero::is_zero));
    }
}
