//! Finitely generated abelian groups and quotients `Z^n / L` in Smith
//! coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::intlinalg::{smith, IntMatrix, Lattice};

/// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `d_1 | d_2 | ... | d_k`, all
/// `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FGAbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl FGAbelianGroup {
    pub fn trivial() -> Self {
        FGAbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: u64) -> Self {
        if order == 0 {
            Self::free(1)
        } else {
            Self::from_cyclic(0, &[order])
        }
    }

    /// Normalizes an arbitrary direct sum of cyclic groups (orders `0` mean
    /// `Z`) into invariant factors.
    pub fn from_cyclic(free_rank: usize, orders: &[u64]) -> Self {
        let mut free = free_rank;
        let finite: Vec<u64> = orders
            .iter()
            .copied()
            .filter(|&o| {
                if o == 0 {
                    free += 1;
                }
                o > 1
            })
            .collect();
        let n = finite.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, &o) in finite.iter().enumerate() {
            m[(i, i)] = BigInt::from(o);
        }
        let torsion = smith(&m, false)
            .diagonal
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_u64().expect("invariant factor fits in u64"))
            .collect();
        FGAbelianGroup { free_rank: free, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of cyclic summands in the invariant-factor decomposition.
    pub fn ngens(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Order of the `k`-th cyclic summand, `0` for free summands. Torsion
    /// summands come first.
    pub fn order_of(&self, k: usize) -> u64 {
        if k < self.torsion.len() {
            self.torsion[k]
        } else {
            0
        }
    }

    pub fn direct_sum(&self, other: &FGAbelianGroup) -> FGAbelianGroup {
        let orders: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        FGAbelianGroup::from_cyclic(self.free_rank + other.free_rank, &orders)
    }

    /// Reduces an element given in summand coordinates.
    pub fn reduce(&self, x: &[i64]) -> Vec<i64> {
        x.iter()
            .enumerate()
            .map(|(k, &v)| match self.order_of(k) {
                0 => v,
                d => v.rem_euclid(d as i64),
            })
            .collect()
    }

    /// `Hom(self, A)` from invariant factors: `Hom(Z, A) = A`,
    /// `Hom(Z/d, A) = A[d]`.
    pub fn hom_into(&self, a: &FGAbelianGroup) -> FGAbelianGroup {
        let mut free = 0;
        let mut orders = Vec::new();
        for _ in 0..self.free_rank {
            free += a.free_rank;
            orders.extend_from_slice(&a.torsion);
        }
        for &d in &self.torsion {
            for &e in &a.torsion {
                orders.push(d.gcd(&e));
            }
        }
        FGAbelianGroup::from_cyclic(free, &orders)
    }
}

/// Parses sums like `Z`, `Z^2`, `Z/6`, `Z/2 + Z`, or `0`.
impl std::str::FromStr for FGAbelianGroup {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> crate::error::Result<Self> {
        let bad = || crate::error::Error::Parse(format!("bad group `{s}`"));
        let mut free = 0;
        let mut orders = Vec::new();
        for part in s.split('+').map(str::trim) {
            match part {
                "0" => {}
                "Z" => free += 1,
                _ => {
                    if let Some(r) = part.strip_prefix("Z^") {
                        free += r.parse::<usize>().map_err(|_| bad())?;
                    } else if let Some(n) = part.strip_prefix("Z/") {
                        orders.push(n.parse::<u64>().map_err(|_| bad())?);
                    } else {
                        return Err(bad());
                    }
                }
            }
        }
        Ok(FGAbelianGroup::from_cyclic(free, &orders))
    }
}

impl std::fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// A sparse integer row, sorted by column.
pub type SparseRow = Vec<(usize, i64)>;

/// The quotient `Z^n / L` of a free abelian group by a sublattice, with the
/// change of basis used to read off coordinates.
///
/// Generators hit by a relation with a unit coefficient are eliminated
/// first, sparsely. The remaining relations live on the surviving
/// generators; with `U M V = D` for their basis matrix `M`, a reduced
/// element `x` has coordinates `x V`, coordinates attached to unit
/// invariant factors are dropped and torsion coordinates are reduced.
#[derive(Clone, Debug)]
pub struct AbelianQuotient {
    ngens: usize,
    /// `(j, r)` with `r_j = ±1`, in elimination order
    steps: Vec<(usize, SparseRow)>,
    survivors: Vec<usize>,
    /// the remaining relations, on survivor indices
    lattice: Lattice,
    diagonal: Vec<BigInt>,
    v: IntMatrix,
    v_inv: IntMatrix,
    /// indices `i` of `x V` that survive, torsion ones first
    kept: Vec<usize>,
    group: FGAbelianGroup,
}

fn checked_axpy(row: &[(usize, i64)], c: i64, r: &[(usize, i64)]) -> Option<SparseRow> {
    // row - c r
    let mut out = Vec::with_capacity(row.len() + r.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < r.len() {
        let take_row = j == r.len() || (i < row.len() && row[i].0 < r[j].0);
        let take_r = i == row.len() || (j < r.len() && r[j].0 < row[i].0);
        if take_row {
            out.push(row[i]);
            i += 1;
        } else if take_r {
            out.push((r[j].0, c.checked_mul(r[j].1)?.checked_neg()?));
            j += 1;
        } else {
            let x = row[i].1.checked_sub(c.checked_mul(r[j].1)?)?;
            if x != 0 {
                out.push((row[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

fn coefficient(r: &[(usize, i64)], j: usize) -> i64 {
    r.binary_search_by_key(&j, |e| e.0).map_or(0, |k| r[k].1)
}

/// Unit-pivot elimination, shortest rows first. Returns the steps and the
/// rows left over.
fn eliminate(ngens: usize, rows: Vec<SparseRow>) -> (Vec<(usize, SparseRow)>, Vec<SparseRow>) {
    let mut rows: Vec<Option<SparseRow>> = rows.into_iter().map(Some).collect();
    let mut columns: Vec<Vec<usize>> = vec![Vec::new(); ngens];
    for (i, r) in rows.iter().enumerate() {
        for &(j, _) in r.as_ref().expect("fresh") {
            columns[j].push(i);
        }
    }
    let mut steps = Vec::new();
    loop {
        let mut order: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].is_some()).collect();
        order.sort_by_key(|&i| rows[i].as_ref().map_or(0, Vec::len));
        let mut progress = false;
        for i in order {
            let Some(r) = rows[i].as_ref() else { continue };
            if r.is_empty() {
                rows[i] = None;
                continue;
            }
            let mut units: Vec<usize> = r.iter().filter(|e| e.1.abs() == 1).map(|e| e.0).collect();
            units.sort_by_key(|&j| columns[j].len());
            for j in units {
                let r = rows[i].as_ref().expect("active");
                let rj = coefficient(r, j);
                let mut staged = Vec::new();
                let mut overflow = false;
                for &k in &columns[j] {
                    if k == i {
                        continue;
                    }
                    let Some(row) = rows[k].as_ref() else { continue };
                    let c = coefficient(row, j);
                    if c == 0 {
                        continue;
                    }
                    match checked_axpy(row, c * rj, r) {
                        Some(new) => staged.push((k, new)),
                        None => {
                            overflow = true;
                            break;
                        }
                    }
                }
                if overflow {
                    continue;
                }
                let r = rows[i].take().expect("active");
                for (k, new) in staged {
                    let old = rows[k].replace(new).expect("active");
                    for &(col, _) in rows[k].as_ref().expect("just set") {
                        if coefficient(&old, col) == 0 {
                            columns[col].push(k);
                        }
                    }
                }
                columns[j].clear();
                steps.push((j, r));
                progress = true;
                break;
            }
        }
        if !progress {
            break;
        }
    }
    (steps, rows.into_iter().flatten().filter(|r| !r.is_empty()).collect())
}

impl AbelianQuotient {
    /// `Z^ngens` modulo the span of the given sparse rows.
    pub fn from_sparse(ngens: usize, rows: Vec<SparseRow>) -> AbelianQuotient {
        let mut seen = std::collections::HashSet::new();
        let rows: Vec<SparseRow> = rows.into_iter().filter(|r| !r.is_empty() && seen.insert(r.clone())).collect();
        let (steps, rest) = eliminate(ngens, rows);
        let mut gone = vec![false; ngens];
        for (j, _) in &steps {
            gone[*j] = true;
        }
        let survivors: Vec<usize> = (0..ngens).filter(|&j| !gone[j]).collect();
        let mut position = vec![usize::MAX; ngens];
        for (k, &j) in survivors.iter().enumerate() {
            position[j] = k;
        }
        let mut lattice = Lattice::new(survivors.len());
        let mut seen = std::collections::HashSet::new();
        for r in rest {
            if seen.insert(r.clone()) {
                let mut row = vec![BigInt::zero(); survivors.len()];
                for (j, x) in r {
                    row[position[j]] = BigInt::from(x);
                }
                lattice.insert(row);
            }
        }
        Self::finish(ngens, steps, survivors, lattice)
    }

    fn finish(ngens: usize, steps: Vec<(usize, SparseRow)>, survivors: Vec<usize>, lattice: Lattice) -> AbelianQuotient {
        let s = smith(&lattice.to_matrix(), false);
        let mut kept = Vec::new();
        let mut torsion = Vec::new();
        for (i, d) in s.diagonal.iter().enumerate() {
            if !d.is_one() {
                kept.push(i);
                torsion.push(d.to_u64().expect("invariant factor fits in u64"));
            }
        }
        let rank = s.diagonal.len();
        let n = survivors.len();
        kept.extend(rank..n);
        let group = FGAbelianGroup { free_rank: n - rank, torsion };
        AbelianQuotient { ngens, steps, survivors, lattice, diagonal: s.diagonal, v: s.v, v_inv: s.v_inv, kept, group }
    }

    pub fn from_relations<I>(ngens: usize, relations: I) -> AbelianQuotient
    where
        I: IntoIterator<Item = Vec<BigInt>>,
    {
        let mut small = Vec::new();
        let mut big = Vec::new();
        for r in relations {
            let sparse: Option<SparseRow> =
                r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| x.to_i64().map(|v| (j, v))).collect();
            match sparse {
                Some(s) => small.push(s),
                None => big.push(r),
            }
        }
        if big.is_empty() {
            return Self::from_sparse(ngens, small);
        }
        // rows too large for the sparse pass are reduced afterwards
        let q = Self::from_sparse(ngens, small);
        let mut lattice = q.lattice.clone();
        for r in big {
            lattice.insert(q.reduce(&r));
        }
        Self::finish(ngens, q.steps, q.survivors, lattice)
    }

    pub fn group(&self) -> &FGAbelianGroup {
        &self.group
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    /// A generating set of the relation lattice in `Z^n`.
    pub fn relation_rows(&self) -> Vec<Vec<BigInt>> {
        let mut out: Vec<Vec<BigInt>> = self
            .steps
            .iter()
            .map(|(_, r)| {
                let mut v = vec![BigInt::zero(); self.ngens];
                for &(j, x) in r {
                    v[j] = BigInt::from(x);
                }
                v
            })
            .collect();
        for b in self.lattice.basis() {
            let mut v = vec![BigInt::zero(); self.ngens];
            for (k, x) in b.into_iter().enumerate() {
                v[self.survivors[k]] = x;
            }
            out.push(v);
        }
        out
    }

    /// `x` rewritten on the surviving generators.
    fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.ngens);
        let mut x = x.to_vec();
        for (j, r) in &self.steps {
            if x[*j].is_zero() {
                continue;
            }
            let c = &x[*j] * coefficient(r, *j);
            for &(k, v) in r {
                x[k] -= &c * v;
            }
        }
        self.survivors.iter().map(|&j| std::mem::take(&mut x[j])).collect()
    }

    /// Coordinates of `x` in the invariant-factor decomposition.
    pub fn coordinates(&self, x: &[BigInt]) -> Vec<BigInt> {
        let y = self.v.left_apply(&self.reduce(x));
        self.kept
            .iter()
            .map(|&i| {
                if i < self.diagonal.len() {
                    y[i].mod_floor(&self.diagonal[i])
                } else {
                    y[i].clone()
                }
            })
            .collect()
    }

    pub fn coordinates_i64(&self, x: &[i64]) -> Vec<i64> {
        let big: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        self.coordinates(&big)
            .iter()
            .map(|v| v.to_i64().expect("coordinate fits in i64"))
            .collect()
    }

    /// A vector of `Z^n` whose class is the `k`-th summand generator.
    pub fn generator(&self, k: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.ngens];
        for (i, x) in self.v_inv.row(self.kept[k]).into_iter().enumerate() {
            out[self.survivors[i]] = x;
        }
        out
    }

    /// A vector whose class has the given coordinates.
    pub fn lift(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.ngens];
        for (k, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, g) in out.iter_mut().zip(self.generator(k)) {
                *o += c * g;
            }
        }
        out
    }

    pub fn is_zero(&self, x: &[BigInt]) -> bool {
        self.coordinates(x).iter().all(Zero::is_zero)
    }
}

/// Whether the integer matrix `images` (rows: images of the generators of
/// `source` in the summand coordinates of `target`) defines an isomorphism
/// `source -> target`.
///
/// Finitely generated abelian groups are Hopfian, so a surjection between
/// isomorphic groups is an isomorphism.
pub fn is_isomorphism(source: &FGAbelianGroup, target: &FGAbelianGroup, images: &[Vec<BigInt>]) -> bool {
    if source != target {
        return false;
    }
    is_surjective(target, images)
}

/// Whether the given elements (in summand coordinates) generate `target`.
pub fn is_surjective(target: &FGAbelianGroup, images: &[Vec<BigInt>]) -> bool {
    let k = target.ngens();
    if k == 0 {
        return true;
    }
    let mut l = Lattice::new(k);
    for row in images {
        l.insert(row.clone());
    }
    for (i, &d) in target.torsion.iter().enumerate() {
        let mut e = vec![BigInt::zero(); k];
        e[i] = BigInt::from(d);
        l.insert(e);
    }
    if l.rank() < k {
        return false;
    }
    smith(&l.to_matrix(), false).diagonal.iter().all(|d| d.abs().is_one())
}
