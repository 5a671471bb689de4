//! JSON interchange formats.
//!
//! Complex numbers are `[re, im]` pairs and matrices are lists of rows.
//! Cover pairs are keyed `"sub|sup"`. A `base` or `fibre` is either an
//! inline poset object or a string naming a fixture or a file (relative to
//! the referring file).

use std::collections::BTreeMap;
use std::path::Path as FsPath;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::equivariant::FiniteAbelianAction;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::homotopy::Path;
use crate::linalg::CMatrix;
use crate::netbundle::{resolve_pairs, validate, NetBundle, ValidationReport, CONSTRUCTION_TOL};
use crate::poset::{Poset, PosetFile};
use crate::realization::PosetNetBundle;
use crate::simplicial::Simplex1File;
use crate::space::Space;

pub type MatrixFile = Vec<Vec<[f64; 2]>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PosetRef {
    Inline(PosetFile),
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BundleFile {
    pub base: PosetRef,
    pub rank: usize,
    /// per-element ranks of quasinet data; `rank` is then ignored
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranks: Option<BTreeMap<String, usize>>,
    pub maps: BTreeMap<String, MatrixFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PosetBundleFile {
    pub base: PosetRef,
    pub fibre: PosetRef,
    pub transitions: BTreeMap<String, BTreeMap<String, String>>,
}

/// A bundle with commuting automorphisms of the given orders, each given
/// fibrewise by element name.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ActionFile {
    pub bundle: BundleFile,
    pub orders: Vec<u64>,
    pub generators: Vec<BTreeMap<String, MatrixFile>>,
}

pub fn complex_to_file(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn matrix_to_file(m: &CMatrix) -> MatrixFile {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| complex_to_file(m[(i, j)])).collect()).collect()
}

pub fn matrix_from_file(rows: &MatrixFile, expected: usize) -> Result<CMatrix> {
    rect_from_file(rows, expected, expected)
}

pub fn rect_from_file(rows: &MatrixFile, nrows: usize, ncols: usize) -> Result<CMatrix> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::Parse(format!("expected a {nrows}x{ncols} matrix")));
    }
    Ok(CMatrix::from_fn(nrows, ncols, |i, j| Complex64::new(rows[i][j][0], rows[i][j][1])))
}

fn resolve_poset(r: &PosetRef, dir: Option<&FsPath>) -> Result<Poset> {
    match r {
        PosetRef::Inline(f) => Poset::from_file(f),
        PosetRef::Named(name) => {
            if let Some(p) = fixtures::poset(name) {
                return Ok(p);
            }
            let path = dir.map_or_else(|| FsPath::new(name).to_path_buf(), |d| d.join(name));
            read_poset(&path)
        }
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &FsPath) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn read_poset(path: &FsPath) -> Result<Poset> {
    Poset::from_file(&read_json::<PosetFile>(path)?)
}

pub fn poset_to_json(p: &Poset) -> String {
    to_json(&p.to_file())
}

pub fn bundle_from_file(file: &BundleFile, dir: Option<&FsPath>) -> Result<NetBundle> {
    bundle_from_file_with(file, dir, CONSTRUCTION_TOL)
}

pub fn bundle_from_file_with(file: &BundleFile, dir: Option<&FsPath>, tol: f64) -> Result<NetBundle> {
    if file.ranks.is_some() {
        return Err(Error::Unsupported("per-element ranks describe quasinet data; only validation applies".into()));
    }
    let space = Space::new(resolve_poset(&file.base, dir)?);
    let named = file
        .maps
        .iter()
        .map(|(k, m)| Ok((k.clone(), matrix_from_file(m, file.rank)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    NetBundle::with_tolerance(space.clone(), file.rank, resolve_pairs(space.poset(), &named)?, tol)
}

/// Validates (quasi)net data without requiring constant rank.
pub fn validate_file(file: &BundleFile, dir: Option<&FsPath>, tol: f64) -> Result<ValidationReport> {
    let poset = resolve_poset(&file.base, dir)?;
    let ranks: Vec<usize> = match &file.ranks {
        None => vec![file.rank; poset.len()],
        Some(r) => (0..poset.len())
            .map(|i| r.get(poset.name(i)).copied().ok_or_else(|| Error::Parse(format!("no rank for `{}`", poset.name(i)))))
            .collect::<Result<_>>()?,
    };
    let mut maps = BTreeMap::new();
    for (key, m) in &file.maps {
        let (sub, sup) = key.split_once('|').ok_or_else(|| Error::Parse(format!("bad pair key `{key}`")))?;
        let (a, b) = (poset.require(sub)?, poset.require(sup)?);
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        if rows != ranks[b] || cols != ranks[a] {
            return Err(Error::BadShape(sub.into(), sup.into(), rows, cols, ranks[b], ranks[a]));
        }
        maps.insert((a, b), rect_from_file(m, rows, cols)?);
    }
    validate(&poset, &ranks, &maps, tol)
}

pub fn bundle_to_file(e: &NetBundle) -> BundleFile {
    BundleFile {
        base: PosetRef::Inline(e.poset().to_file()),
        rank: e.rank(),
        ranks: None,
        maps: e.named_maps().iter().map(|(k, m)| (k.clone(), matrix_to_file(m))).collect(),
    }
}

pub fn read_bundle(path: &FsPath) -> Result<NetBundle> {
    bundle_from_file(&read_json(path)?, path.parent())
}

pub fn poset_bundle_from_file(file: &PosetBundleFile, dir: Option<&FsPath>) -> Result<PosetNetBundle> {
    let base = Space::new(resolve_poset(&file.base, dir)?);
    let fibre = Arc::new(resolve_poset(&file.fibre, dir)?);
    PosetNetBundle::from_named(base, fibre, &file.transitions)
}

pub fn poset_bundle_to_file(x: &PosetNetBundle) -> PosetBundleFile {
    PosetBundleFile {
        base: PosetRef::Inline(x.base().poset().to_file()),
        fibre: PosetRef::Inline(x.fibre().to_file()),
        transitions: x.named_maps(),
    }
}

pub fn read_poset_bundle(path: &FsPath) -> Result<PosetNetBundle> {
    poset_bundle_from_file(&read_json(path)?, path.parent())
}

pub fn action_from_file(file: &ActionFile, dir: Option<&FsPath>) -> Result<FiniteAbelianAction> {
    let e = bundle_from_file(&file.bundle, dir)?;
    let p = e.poset();
    let mut gens = Vec::with_capacity(file.generators.len());
    for g in &file.generators {
        let mut maps = vec![None; p.len()];
        for (name, m) in g {
            maps[p.require(name)?] = Some(matrix_from_file(m, e.rank())?);
        }
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(a, m)| m.ok_or_else(|| Error::NotAnAction(format!("no matrix over `{}`", p.name(a)))))
            .collect::<Result<Vec<_>>>()?;
        gens.push(maps);
    }
    FiniteAbelianAction::new(&e, file.orders.clone(), gens)
}

pub fn action_to_file(a: &FiniteAbelianAction) -> ActionFile {
    let e = a.bundle();
    let p = e.poset();
    let generators = a
        .generators()
        .iter()
        .map(|g| (0..p.len()).map(|i| (p.name(i).to_string(), matrix_to_file(g.at(i)))).collect())
        .collect();
    ActionFile { bundle: bundle_to_file(e), orders: a.orders().to_vec(), generators }
}

pub fn read_action(path: &FsPath) -> Result<FiniteAbelianAction> {
    action_from_file(&read_json(path)?, path.parent())
}

pub fn path_from_file(p: &Poset, steps: &[Simplex1File]) -> Result<Path> {
    Path::from_file(p, steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{self, c};

    #[test]
    fn bundle_round_trip_is_exact() {
        let space = fixtures::pseudocircle();
        let e = fixtures::line_bundle(&space, Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0));
        let text = to_json(&bundle_to_file(&e));
        let back = bundle_from_file(&serde_json::from_str(&text).unwrap(), None).unwrap();
        assert_eq!(back.maps(), e.maps());
        assert_eq!(to_json(&bundle_to_file(&back)), text);
    }

    #[test]
    fn named_base_resolves_fixture() {
        let file = BundleFile {
            base: PosetRef::Named("pseudocircle".into()),
            rank: 1,
            ranks: None,
            maps: fixtures::pseudocircle_poset()
                .hasse()
                .into_iter()
                .map(|(a, b)| {
                    let p = fixtures::pseudocircle_poset();
                    (format!("{}|{}", p.name(a), p.name(b)), matrix_to_file(&linalg::scalar(c(1.0, 0.0))))
                })
                .collect(),
        };
        assert_eq!(bundle_from_file(&file, None).unwrap().rank(), 1);
    }

    #[test]
    fn wrong_shape_rejected() {
        let mut f = bundle_to_file(&NetBundle::trivial(fixtures::pseudocircle(), 2));
        f.rank = 3;
        assert!(matches!(bundle_from_file(&f, None), Err(Error::Parse(_))));
    }
}
