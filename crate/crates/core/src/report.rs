//! JSON reports shared by the command line and the golden files.
//!
//! Every report is a `serde_json::Value` so that key order and number
//! formatting are fixed by `serde_json` alone.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::abelian::FGAbelianGroup;
use crate::chern::{self, c1_at, chern_function};
use crate::equivariant::{equivariant_split_check, FiniteAbelianAction};
use crate::error::Result;
use crate::homology::{cycle_to_loops, h1_cohomology, h1_cohomology_direct, hurewicz_check, path_chain, Chain1};
use crate::homotopy::{homotopic, Budget, Path};
use crate::fixtures::Fixture;
use crate::io::{action_to_file, bundle_to_file, complex_to_file, matrix_to_file, poset_bundle_to_file, to_json};
use crate::ktheory::{chern_k_classes, stably_equivalent, virtual_equal, VirtualBundle};
use crate::netbundle::{global_sections, trivial_summand_rank, NetBundle, ValidationReport};
use crate::poset::Poset;
use crate::realization::{alexandroff, cylinder_check, exactness_check, transition_functions, PosetNetBundle};
use crate::representation::{are_isomorphic, decompose, hom_dimension};
use crate::space::Space;

fn names(p: &Poset, idx: impl IntoIterator<Item = usize>) -> Vec<String> {
    idx.into_iter().map(|i| p.name(i).to_string()).collect()
}

fn complexes(zs: &[Complex64]) -> Vec<[f64; 2]> {
    zs.iter().map(|&z| complex_to_file(z)).collect()
}

pub fn poset_validate(space: &Space) -> Value {
    let p = space.poset();
    json!({
        "elements": p.len(),
        "covers": p.hasse().len(),
        "connected": p.is_connected(),
        "minimal": names(p, p.minimal_elements()),
        "maximal": names(p, p.maximal_elements()),
        "edges": space.edges().len(),
        "triangles": space.triangles().len(),
    })
}

pub fn h1(space: &Space) -> Result<Value> {
    Ok(serde_json::to_value(space.h1()?.group())?)
}

pub fn pi1(space: &Space) -> Result<Value> {
    let pi = space.pi1()?;
    let p = space.poset();
    let generators: Vec<String> = (0..pi.ngens()).map(|k| pi.generator_simplex(k).label(p)).collect();
    let tree: Vec<usize> = (0..pi.ngens()).filter(|&k| pi.is_tree_generator(k)).map(|k| k + 1).collect();
    Ok(json!({
        "basepoint": p.name(pi.basepoint()),
        "generators": generators,
        "tree_generators": tree,
        "relators": pi.presentation().relators,
        "abelianization": pi.abelianization(),
    }))
}

pub fn cohomology(space: &Space, coefficients: &FGAbelianGroup) -> Result<Value> {
    let hom = h1_cohomology(space, coefficients)?;
    let direct = h1_cohomology_direct(space, coefficients)?;
    Ok(json!({
        "coefficients": coefficients.to_string(),
        "hom": hom,
        "direct": direct,
        "agree": hom == direct,
    }))
}

/// The Hurewicz comparison plus a loop round trip for every `H1` generator.
pub fn hurewicz_roundtrip(space: &Space) -> Result<Value> {
    let report = hurewicz_check(space)?;
    let h1 = space.h1()?;
    let mut gens = Vec::new();
    for k in 0..h1.group().ngens() {
        let x = h1.generator(k);
        let target = h1.coordinates(&x)?;
        let loops = cycle_to_loops(space, &x, space.basepoint())?;
        let mut sum = Chain1::zero();
        for l in &loops {
            sum.add_chain(&path_chain(l), 1);
        }
        gens.push(json!({ "index": k, "loops": loops.len(), "matches": h1.coordinates(&sum)? == target }));
    }
    Ok(json!({
        "pi1_ab": report.pi1_ab,
        "h1": report.h1,
        "groups_equal": report.groups_equal,
        "t_is_isomorphism": report.t_is_isomorphism,
        "generators": gens,
    }))
}

pub fn homotopic_report(space: &Space, p: &Path, q: &Path, budget: usize) -> Result<Value> {
    let h = homotopic(space, p, q, Budget::nodes(budget))?;
    Ok(json!({ "result": h.tag() }))
}

pub fn validation(r: &ValidationReport) -> Value {
    json!({
        "is_quasinet": r.is_quasinet,
        "is_net": r.is_net,
        "rank_function": r.rank_function,
        "unitarity_residual": r.unitarity_residual,
        "cocycle_residual": r.cocycle_residual,
    })
}

pub fn c1(e: &NetBundle) -> Result<Value> {
    let ch = chern::c1(e)?;
    let ab = chern::abelianized_c1(e)?;
    Ok(json!({
        "generators": ch.generators,
        "values": complexes(&ch.values),
        "h1_generators": ab.generators,
        "h1_values": complexes(&ab.values),
    }))
}

/// `c1` and the Chern functions `𝔠_0..𝔠_d` on one loop.
pub fn chern_on_loop(e: &NetBundle, p: &Path) -> Value {
    let c: Vec<Complex64> = (0..=e.rank()).map(|i| chern_function(e, i).evaluate(p)).collect();
    json!({ "c1": complex_to_file(c1_at(e, p)), "c": complexes(&c) })
}

/// The same on every generator loop of `π1`.
pub fn chern_on_generators(e: &NetBundle) -> Result<Value> {
    let pi = e.space().pi1()?;
    let rows: Vec<Value> = (0..pi.ngens())
        .filter(|&k| !pi.is_tree_generator(k))
        .map(|k| {
            let mut v = chern_on_loop(e, &pi.generator_loop(k));
            v["word"] = json!([k as i32 + 1]);
            v
        })
        .collect();
    Ok(json!({ "loops": rows }))
}

pub fn kclasses(e: &NetBundle) -> Result<Value> {
    let zero = VirtualBundle::zero(e.space().clone());
    let mut rows = Vec::new();
    for (i, k) in chern_k_classes(e)?.iter().enumerate() {
        rows.push(json!({ "index": i + 1, "rank": k.rank(), "zero": virtual_equal(k, &zero)? }));
    }
    Ok(json!({ "rank": e.rank(), "classes": rows }))
}

pub fn classify(e: &NetBundle) -> Result<Value> {
    let c = chern::classify_cyclic(e)?;
    Ok(json!({
        "group": c.group,
        "extension": c.extension,
        "generator": c.generator,
        "eigenvalues": complexes(&c.eigenvalues),
        "characters": complexes(&c.characters),
        "zeros": complexes(&c.zeros),
        "polynomial": complexes(&c.polynomial),
    }))
}

pub fn decomposition(e: &NetBundle) -> Result<Value> {
    let mut rows = Vec::new();
    for iso in decompose(e)? {
        let b = &iso.irreducible;
        let dets = chern::c1(b)?;
        rows.push(json!({ "rank": b.rank(), "multiplicity": iso.multiplicity, "c1": complexes(&dets.values) }));
    }
    Ok(json!({ "rank": e.rank(), "isotypes": rows }))
}

pub fn iso(e: &NetBundle, f: &NetBundle) -> Result<Value> {
    let witness = are_isomorphic(e, f)?;
    Ok(json!({
        "isomorphic": witness.is_some(),
        "hom_dimension": hom_dimension(e, f)?,
        "stably_equivalent": stably_equivalent(e, f)?,
        "witness": witness.map(|m| matrix_to_file(m.at(e.space().basepoint()))),
    }))
}

pub fn sections(e: &NetBundle) -> Result<Value> {
    let s = global_sections(e)?;
    let b = e.space().basepoint();
    Ok(json!({
        "trivial_summand_rank": trivial_summand_rank(e)?,
        "basepoint": e.poset().name(b),
        "values": s.iter().map(|x| complexes(x.value(b).map_or(&[][..], |v| v.as_slice()))).collect::<Vec<_>>(),
    }))
}

pub fn opens(p: &std::sync::Arc<Poset>) -> Result<Value> {
    let x = alexandroff(p.clone());
    let all = x.opens()?;
    Ok(json!({
        "count": all.len(),
        "basis": (0..p.len()).map(|a| names(p, x.basis(a))).collect::<Vec<_>>(),
        "opens": all.into_iter().map(|u| names(p, u)).collect::<Vec<_>>(),
    }))
}

pub fn transitions(e: &NetBundle) -> Result<Value> {
    let r = transition_functions(e)?;
    let p = e.poset();
    let entries: Vec<Value> = r
        .entries
        .iter()
        .filter(|t| t.a != t.b)
        .map(|t| json!({ "a": p.name(t.a), "b": p.name(t.b), "component": names(p, t.component.iter().copied()), "value": matrix_to_file(&t.value) }))
        .collect();
    Ok(json!({
        "locally_constant": r.locally_constant,
        "constancy_residual": r.constancy_residual,
        "cocycle_residual": r.cocycle_residual,
        "entries": entries,
    }))
}

pub fn cylinders(x: &PosetNetBundle) -> Result<Value> {
    Ok(serde_json::to_value(cylinder_check(x)?)?)
}

pub fn exactness(x: &PosetNetBundle) -> Result<Value> {
    Ok(serde_json::to_value(exactness_check(x)?)?)
}

pub fn split(a: &FiniteAbelianAction) -> Result<Value> {
    let (_, summary) = equivariant_split_check(a)?;
    Ok(serde_json::to_value(summary)?)
}

fn or_error(r: Result<Value>) -> Value {
    r.unwrap_or_else(|e| json!({ "error": e.kind() }))
}

/// The stored invariant report of a fixture.
pub fn fixture_report(f: &Fixture) -> Result<Value> {
    Ok(match f {
        Fixture::Poset(p) => {
            let space = Space::new(p.clone());
            json!({
                "kind": "poset",
                "validate": poset_validate(&space),
                "h1": or_error(h1(&space)),
                "pi1": or_error(pi1(&space)),
                "hurewicz": or_error(hurewicz_roundtrip(&space)),
            })
        }
        Fixture::Bundle(e) => json!({
            "kind": "bundle",
            "rank": e.rank(),
            "c1": or_error(c1(e)),
            "chern": or_error(chern_on_generators(e)),
            "kclasses": or_error(kclasses(e)),
            "classify": or_error(classify(e)),
            "decompose": or_error(decomposition(e)),
            "sections": or_error(sections(e)),
        }),
        Fixture::PosetBundle(x) => json!({
            "kind": "poset_bundle",
            "total_elements": x.total_space().poset().len(),
            "cylinders": or_error(cylinders(x)),
            "exactness": or_error(exactness(x)),
        }),
        Fixture::Action(a) => json!({
            "kind": "action",
            "orders": a.orders(),
            "split": or_error(split(a)),
        }),
    })
}

/// The interchange file of a fixture.
pub fn fixture_file(f: &Fixture) -> String {
    match f {
        Fixture::Poset(p) => to_json(&p.to_file()),
        Fixture::Bundle(e) => to_json(&bundle_to_file(e)),
        Fixture::PosetBundle(x) => to_json(&poset_bundle_to_file(x)),
        Fixture::Action(a) => to_json(&action_to_file(a)),
    }
}
