//! Net K-theory: virtual bundles, their equality, stable equivalence and
//! the Chern K-classes.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg;
use crate::netbundle::{global_sections, subobject, BundleMorphism, NetBundle};
use crate::representation::{are_isomorphic, decompose, holonomy_rep, unitary_intertwiner, HolonomyRep};
use crate::space::Space;

/// A formal difference `Σ [plus] - Σ [minus]`; integer coefficients are
/// carried by repetition.
#[derive(Clone, Debug)]
pub struct VirtualBundle {
    space: Arc<Space>,
    pub plus: Vec<NetBundle>,
    pub minus: Vec<NetBundle>,
}

impl VirtualBundle {
    pub fn zero(space: Arc<Space>) -> VirtualBundle {
        VirtualBundle { space, plus: Vec::new(), minus: Vec::new() }
    }

    /// `[T_1]`.
    pub fn one(space: Arc<Space>) -> VirtualBundle {
        let t = NetBundle::trivial(space.clone(), 1);
        VirtualBundle { space, plus: vec![t], minus: Vec::new() }
    }

    pub fn of(e: &NetBundle) -> VirtualBundle {
        VirtualBundle { space: e.space().clone(), plus: vec![e.clone()], minus: Vec::new() }
    }

    pub fn new(space: Arc<Space>, plus: Vec<NetBundle>, minus: Vec<NetBundle>) -> Result<VirtualBundle> {
        if plus.iter().chain(&minus).any(|e| e.poset() != space.poset()) {
            return Err(Error::BaseMismatch);
        }
        Ok(VirtualBundle { space, plus, minus })
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    fn check_base(&self, other: &VirtualBundle) -> Result<()> {
        if self.space.poset() == other.space.poset() {
            Ok(())
        } else {
            Err(Error::BaseMismatch)
        }
    }

    pub fn rank(&self) -> i64 {
        let sum = |v: &[NetBundle]| v.iter().map(|e| e.rank() as i64).sum::<i64>();
        sum(&self.plus) - sum(&self.minus)
    }

    /// `(ρ(v), v - ρ(v) [T_1])`.
    pub fn reduce(&self) -> (i64, VirtualBundle) {
        let r = self.rank();
        (r, self.add(&VirtualBundle::one(self.space.clone()).scale(-r)).expect("same base"))
    }

    pub fn add(&self, other: &VirtualBundle) -> Result<VirtualBundle> {
        self.check_base(other)?;
        let mut out = self.clone();
        out.plus.extend(other.plus.iter().cloned());
        out.minus.extend(other.minus.iter().cloned());
        Ok(out)
    }

    pub fn neg(&self) -> VirtualBundle {
        VirtualBundle { space: self.space.clone(), plus: self.minus.clone(), minus: self.plus.clone() }
    }

    pub fn sub(&self, other: &VirtualBundle) -> Result<VirtualBundle> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> VirtualBundle {
        let base = if k < 0 { self.neg() } else { self.clone() };
        let mut out = VirtualBundle::zero(self.space.clone());
        for _ in 0..k.unsigned_abs() {
            out.plus.extend(base.plus.iter().cloned());
            out.minus.extend(base.minus.iter().cloned());
        }
        out
    }

    /// Bilinear extension of the tensor product.
    pub fn mul(&self, other: &VirtualBundle) -> Result<VirtualBundle> {
        self.check_base(other)?;
        let mut out = VirtualBundle::zero(self.space.clone());
        let terms = [(&self.plus, &other.plus, true), (&self.minus, &other.minus, true), (&self.plus, &other.minus, false), (&self.minus, &other.plus, false)];
        for (left, right, positive) in terms {
            for a in left.iter() {
                for b in right.iter() {
                    let t = a.tensor(b)?;
                    if positive {
                        out.plus.push(t);
                    } else {
                        out.minus.push(t);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Signed multiplicities of irreducible classes.
#[derive(Debug, Default)]
struct ClassCounts {
    classes: Vec<(HolonomyRep, i64)>,
}

impl ClassCounts {
    fn add(&mut self, e: &NetBundle, sign: i64) -> Result<()> {
        for iso in decompose(e)? {
            let rep = holonomy_rep(&iso.irreducible)?;
            let k = sign * iso.multiplicity as i64;
            match self.classes.iter_mut().find(|(r, _)| unitary_intertwiner(r, &rep).is_some()) {
                Some((_, n)) => *n += k,
                None => self.classes.push((rep, k)),
            }
        }
        Ok(())
    }

    fn is_zero(&self) -> bool {
        self.classes.iter().all(|(_, n)| *n == 0)
    }
}

/// Equality in `K^0`, decided by comparing signed multiplicities of
/// irreducible summands.
pub fn virtual_equal(v: &VirtualBundle, w: &VirtualBundle) -> Result<bool> {
    v.check_base(w)?;
    let d = v.sub(w)?;
    if d.rank() != 0 {
        return Ok(false);
    }
    let mut counts = ClassCounts::default();
    let mut seen: Vec<(NetBundle, i64)> = Vec::new();
    for (e, sign) in d.plus.iter().map(|e| (e, 1)).chain(d.minus.iter().map(|e| (e, -1))) {
        match seen.iter_mut().find(|(f, _)| f.ptr_eq(e)) {
            Some((_, n)) => *n += sign,
            None => seen.push((e.clone(), sign)),
        }
    }
    for (e, n) in &seen {
        if *n != 0 {
            counts.add(e, *n)?;
        }
    }
    Ok(counts.is_zero())
}

/// Splits off the maximal trivial summand: `(its rank, the complement)`.
pub fn strip_trivial(e: &NetBundle) -> Result<(usize, NetBundle)> {
    let sections = global_sections(e)?;
    let n = e.poset().len();
    let maps = (0..n)
        .map(|a| {
            let mut p = linalg::identity(e.rank());
            for s in &sections {
                let v = &s.values[a];
                p -= v * v.adjoint();
            }
            p
        })
        .collect();
    let p = BundleMorphism::new(e, e, maps)?;
    Ok((sections.len(), subobject(&p)?))
}

/// `E ⊕ T_j ≅ Ê ⊕ T_k` for some `j, k`.
pub fn stably_equivalent(e: &NetBundle, f: &NetBundle) -> Result<bool> {
    if !e.same_base(f) {
        return Err(Error::BaseMismatch);
    }
    let (_, a) = strip_trivial(e)?;
    let (_, b) = strip_trivial(f)?;
    if a.rank() != b.rank() {
        return Ok(false);
    }
    Ok(are_isomorphic(&a, &b)?.is_some())
}

/// `k_i(E) = Σ_{k<=i} (-1)^k C(d-k, i-k) [λ^k E]` for `i = 1..=d`.
pub fn chern_k_classes(e: &NetBundle) -> Result<Vec<VirtualBundle>> {
    let d = e.rank();
    let powers = (0..=d).map(|k| e.exterior_power(k)).collect::<Result<Vec<_>>>()?;
    Ok((1..=d)
        .map(|i| {
            let mut v = VirtualBundle::zero(e.space().clone());
            for (k, p) in powers.iter().enumerate().take(i + 1) {
                let c = linalg::binomial(d - k, i - k) as i64;
                let c = if k % 2 == 0 { c } else { -c };
                v = v.add(&VirtualBundle::of(p).scale(c)).expect("same base");
            }
            v
        })
        .collect())
}

/// The total Chern K-class `1 + Σ k_i h^i` as its coefficient list, the
/// constant term first.
pub fn total_chern_k_class(e: &NetBundle) -> Result<Vec<VirtualBundle>> {
    let mut out = vec![VirtualBundle::one(e.space().clone())];
    out.extend(chern_k_classes(e)?);
    Ok(out)
}
