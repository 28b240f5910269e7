//! Browser bindings: each export takes plain text and returns a JSON string,
//! with an `error` field on failure.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use qcoh::error::Result;
use qcoh::models_qcoh::{assemble_ledger, LedgerInput, LedgerVerdict, SphereInput, TorusFactor};
use qcoh::novikov::{format_exp, parse_exp, Exp};
use qcoh::potential::{
    build_toric_potential, critical_points, morse_count_check, parse_polytope, parse_potential_file, CritOptions,
    CriticalSet,
};

fn cutoff(text: &str) -> Result<Exp> {
    let e = parse_exp(text.trim())?;
    if e <= Exp::from_integer(0) {
        return Err(qcoh::error::Error::invalid("cutoff must be positive"));
    }
    Ok(e)
}

fn points(set: &CriticalSet) -> Value {
    let rows: Vec<Value> = set
        .points
        .iter()
        .map(|p| {
            json!({
                "valuation": p.valuation.iter().map(format_exp).collect::<Vec<_>>(),
                "value": p.value.to_string(),
                "det": p.hessian_det.to_string(),
                "morse": p.nondegenerate,
            })
        })
        .collect();
    json!({ "points": rows, "degenerate": set.degenerate.len(), "warnings": set.warnings })
}

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn crit_value(potential: &str, cutoff_text: &str) -> Result<Value> {
    let e = cutoff(cutoff_text)?;
    let w = parse_potential_file(potential, e)?;
    let set = critical_points(&w, &CritOptions::new(e))?;
    let mut v = points(&set);
    v["potential"] = json!(w.to_string());
    Ok(v)
}

fn toric_value(polytope: &str, cutoff_text: &str) -> Result<Value> {
    let e = cutoff(cutoff_text)?;
    let p = parse_polytope(polytope)?;
    let t = build_toric_potential(&p, e)?;
    let expected = p.vertices().len();
    let opts = CritOptions::new(e);
    let verdict = morse_count_check(&t.w, expected, &opts)?;
    let mut v = points(&critical_points(&t.w, &opts)?);
    v["potential"] = json!(t.w.to_string());
    v["vertices"] = json!(expected);
    v["matches"] = json!(verdict.matches);
    Ok(v)
}

fn ledger_value(potential: &str, spheres: usize, dim: usize) -> Result<Value> {
    let e = Exp::from_integer(4);
    let w = parse_potential_file(potential, e)?;
    let set = critical_points(&w, &CritOptions::new(e))?;
    let tori = set
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| TorusFactor { label: format!("b{}", i + 1), value: p.value.clone() })
        .collect();
    let sphere_inputs = (1..=spheres).map(|i| SphereInput { label: format!("S{i}"), beta: None, value: None }).collect();
    let cup_nonzero = (1..spheres).map(|i| (format!("S{i}"), format!("S{}", i + 1))).collect();
    let l = assemble_ledger(&LedgerInput { tori, spheres: sphere_inputs, cup_nonzero, sphere_dim: 2, expected_dim: dim })?;
    let verdict = match &l.verdict {
        LedgerVerdict::Semisimple { factors } => format!("semisimple with {factors} field factors"),
        LedgerVerdict::NotClosed { deficit, reason } => format!("not closed ({deficit} missing): {reason}"),
    };
    let factors: Vec<Value> = l
        .eigenvalue_table()
        .into_iter()
        .map(|(source, ev)| json!({ "source": source, "eigenvalue": ev.map(|v| v.to_string()) }))
        .collect();
    Ok(json!({ "verdict": verdict, "semisimple": l.is_semisimple(), "factors": factors, "notes": l.notes }))
}

/// Critical points of a potential (file syntax) at the given cutoff.
#[wasm_bindgen]
pub fn crit(potential: &str, cutoff: &str) -> String {
    respond(crit_value(potential, cutoff))
}

/// Toric potential of a polytope file and its Morse count.
#[wasm_bindgen]
pub fn toric(polytope: &str, cutoff: &str) -> String {
    respond(toric_value(polytope, cutoff))
}

/// Quantum cohomology ledger for a fiber potential and a chain of spheres.
#[wasm_bindgen]
pub fn ledger(potential: &str, spheres: usize, dim: usize) -> String {
    respond(ledger_value(potential, spheres, dim))
}
