//! Browser bindings: surface invariants, family construction with
//! verification, and exhaustive search on small permutation groups.
//!
//! Every function returns a JSON string; errors become thrown JS errors.

use beauville_core::constructions::FamilyRequest;
use beauville_core::format::StructureFile;
use beauville_core::search::{search_beauville, search_strongly_real};
use beauville_core::structure::{surface_invariants, Automorphism, StructureType};
use beauville_core::{Group, Permutation};
use num_bigint::BigUint;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest group the search accepts, to keep the page responsive.
pub const SEARCH_LIMIT: u64 = 2000;

pub fn invariants_json(order: &str, structure_type: &str) -> Result<String, String> {
    let n: BigUint = order.trim().parse().map_err(|_| format!("'{order}' is not a positive integer"))?;
    let t = StructureType::parse(structure_type)?;
    let s = surface_invariants(&n, &t);
    let divides = t.0.iter().flatten().all(|&o| &n % o == BigUint::from(0u32));
    Ok(json!({
        "g1": s.g1.to_string(),
        "g2": s.g2.to_string(),
        "e": s.euler.to_string(),
        "chi": s.chi.to_string(),
        "admissible": divides && s.genera_integral() && s.hyperbolic(),
    })
    .to_string())
}

pub fn construct_json(family: &str, params: &str) -> Result<String, String> {
    let req = FamilyRequest::parse(family, params).map_err(|e| e.to_string())?;
    let c = req.construct().map_err(|e| e.to_string())?;
    let e = c.emitted();
    let r = e.report.as_ref().expect("constructions are adjudicated");
    let file = StructureFile::new(&e.structure, Some(&e.witness), e.notes.clone());
    Ok(json!({
        "request": req.to_string(),
        "provenance": e.provenance.to_string(),
        "discrepancies": c.discrepancies,
        "notes": e.notes,
        "type": r.structure_type.to_string(),
        "coprime": r.coprime,
        "order": r.order.as_ref().map(|o| o.to_string()),
        "generation": [r.generation[0].to_string(), r.generation[1].to_string()],
        "dagger": r.dagger.to_string(),
        "witness": e.strong.as_ref().map(|s| s.verdict.to_string()),
        "verified": e.verified(),
        "structure": serde_json::to_value(&file).expect("structure files serialize"),
    })
    .to_string())
}

/// One permutation per nonempty line, in cycle notation.
pub fn search_json(generators: &str, strongly_real: bool) -> Result<String, String> {
    let lines: Vec<&str> = generators.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    if lines.is_empty() {
        return Err("enter at least one generator".into());
    }
    let degree = lines
        .iter()
        .flat_map(|l| l.split(|c: char| !c.is_ascii_digit()).filter_map(|s| s.parse::<usize>().ok()))
        .max()
        .unwrap_or(1);
    let perms: Vec<Permutation> = lines
        .iter()
        .enumerate()
        .map(|(i, l)| Permutation::parse(l, degree).map_err(|e| format!("line {}: {e}", i + 1)))
        .collect::<Result<_, _>>()?;
    let g = Group::from_permutations(&perms).map_err(|e| e.to_string())?;
    let order = g.order().map_err(|e| e.to_string())?;
    if order > BigUint::from(SEARCH_LIMIT) {
        return Err(format!("group order {order} exceeds the limit of {SEARCH_LIMIT}"));
    }
    let outcome = if strongly_real {
        let autos: Vec<Automorphism> = if g.is_abelian() { vec![Automorphism::AbelianInversion] } else { vec![] };
        search_strongly_real(&g, &autos)
    } else {
        search_beauville(&g)
    }
    .map_err(|e| e.to_string())?;
    let structure = outcome
        .structure
        .as_ref()
        .map(|s| serde_json::to_value(StructureFile::new(s, outcome.witness.as_ref(), vec![])).expect("serializes"));
    Ok(json!({
        "order": order.to_string(),
        "found": outcome.structure.is_some(),
        "summary": outcome.summary(),
        "structure": structure,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn invariants(order: &str, structure_type: &str) -> Result<String, JsError> {
    invariants_json(order, structure_type).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn construct(family: &str, params: &str) -> Result<String, JsError> {
    construct_json(family, params).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn search(generators: &str, strongly_real: bool) -> Result<String, JsError> {
    search_json(generators, strongly_real).map_err(|e| JsError::new(&e))
}
