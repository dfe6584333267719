//! Browser bindings for the static demo page in `www/`. Each export takes
//! plain strings and returns a JSON document; the same functions are plain
//! Rust underneath so they are tested natively.

use divcss::construction::{derive_t, pair_parameters, puncture_split, repeat_pair, CssPair, Provenance};
use divcss::csst::{
    classify_diagonal_action, corollary22_check, obstruction_check, search_signature, theorem3_check,
    ObstructionScope, SignatureSearch,
};
use divcss::gf2::Divisibility;
use divcss::textio::{self, Signatures};
use divcss::{catalog, BitVector, CssCode, LinearCode};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Candidate budget for the in-browser signature search.
pub const SEARCH_BUDGET: u64 = 1 << 14;

type Result<T> = std::result::Result<T, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// A catalog name, or matrix text pasted by the user.
fn source_code(source: &str) -> Result<(LinearCode, String)> {
    let source = source.trim();
    if catalog::names().contains(&source) {
        return Ok((catalog::entry(source).map_err(err)?.code, source.to_string()));
    }
    Ok((textio::read_code(source).map_err(err)?, "pasted".into()))
}

fn pair_from(text: &str) -> Result<(CssPair, Signatures)> {
    let text = text.trim();
    if catalog::names().contains(&text) {
        let entry = catalog::entry(text).map_err(err)?;
        return entry
            .pair
            .map(|p| (p, Signatures::default()))
            .ok_or_else(|| format!("{text} is a single code; construct a pair from it first"));
    }
    textio::read_pair(text).map_err(err)
}

fn signature(pair: &CssPair, s_z: &str, stored: Option<BitVector>) -> Result<BitVector> {
    let s = match s_z.trim() {
        "" => stored.unwrap_or_else(|| BitVector::zeros(pair.n())),
        v => v.parse().map_err(|_| format!("s_Z must be a 0/1 string, got {v:?}"))?,
    };
    if s.len() != pair.n() {
        return Err(format!("s_Z has length {}, the pair has n = {}", s.len(), pair.n()));
    }
    Ok(s)
}

/// Run the construction and report the code parameters and the pair file.
pub fn construct(source: &str, p: u32) -> Result<Value> {
    let (code, name) = source_code(source)?;
    let m = match code.divisibility().map_err(err)? {
        Divisibility::Exponent(m) => m,
        Divisibility::ZeroCode => 0,
    };
    if m < 2 {
        return Err(format!("the code is only 2^{m}-divisible; the construction needs m >= 2"));
    }
    let t = derive_t(&code).map_err(err)?;
    let base = puncture_split(&code, t).map_err(err)?;
    let provenance = Provenance {
        source: Some(name.clone()),
        divisibility: Some(m),
        ..base.provenance().cloned().unwrap_or_default()
    };
    let base = base.with_provenance(provenance);
    let b = pair_parameters(&base).map_err(err)?;
    let pair = repeat_pair(&base, p).map_err(err)?;
    let (d_x, exact) = match pair_parameters(&pair) {
        Ok(q) => (q.d_x, true),
        Err(_) => (b.d_x << p, false),
    };
    Ok(json!({
        "source": name,
        "n_source": code.n(),
        "k_source": code.dim(),
        "m": m,
        "t": t,
        "p": p,
        "n": pair.n(),
        "k": pair.k(),
        "d_x": d_x,
        "d_z": b.d_z,
        "d": d_x.min(b.d_z),
        "exact": exact,
        "pair_text": textio::write_pair(&pair, &Signatures::default()),
    }))
}

/// Phase table of transversal `R_Z(π/2^l)` on every logical basis state.
pub fn action_table(pair_text: &str, s_z: &str, l: u32) -> Result<Value> {
    let (pair, sig) = pair_from(pair_text)?;
    let s = signature(&pair, s_z, sig.s_z)?;
    let css = CssCode::new(pair, sig.s_x.unwrap_or_else(|| BitVector::zeros(s.len())), s).map_err(err)?;
    let action = classify_diagonal_action(&css, l).map_err(err)?;
    let k = css.k();
    let modulus = 2u64 << l;
    let rows: Vec<Value> = action
        .phases
        .iter()
        .enumerate()
        .map(|(a, c)| {
            json!({
                "a": BitVector::from_u64(k, a as u64).to_string(),
                "relative": c,
                "total": (action.global + c) % modulus,
            })
        })
        .collect();
    Ok(json!({
        "l": l,
        "modulus": modulus,
        "logical": action.logical,
        "class": action.class.map(|c| c.name()),
        "global": action.global,
        "witness": action.witness,
        "rows": rows,
    }))
}

/// CSS-T check for one signature, or `"search"` for a budgeted search plus
/// the obstruction scan.
pub fn csst_check(pair_text: &str, s_z: &str) -> Result<Value> {
    let (pair, sig) = pair_from(pair_text)?;
    let product = corollary22_check(&pair);
    if s_z.trim() == "search" {
        let certificate = obstruction_check(&pair, ObstructionScope::Basis).map_err(err)?;
        let search = search_signature(&pair, SEARCH_BUDGET, 0);
        let verdict = match (&search, &certificate) {
            (SignatureSearch::Found { .. }, _) => "found",
            (_, Some(_)) => "nonexistence certified",
            (SignatureSearch::Exhausted { .. }, None) => "no signature exists",
            (SignatureSearch::Inconclusive { .. }, None) => "inconclusive",
        };
        return Ok(json!({
            "product_condition": product,
            "verdict": verdict,
            "search": search,
            "certificate": certificate,
        }));
    }
    let s = signature(&pair, s_z, sig.s_z.clone())?;
    let css = CssCode::new(pair, sig.s_x.unwrap_or_else(|| BitVector::zeros(s.len())), s).map_err(err)?;
    let report = theorem3_check(&css).map_err(err)?;
    Ok(json!({
        "product_condition": product,
        "s_z": css.s_z().to_string(),
        "css_t": report.verdict,
        "witness": report.witness,
        "evaluated": report.evaluated,
    }))
}

fn to_js(r: Result<Value>) -> std::result::Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = catalogNames)]
pub fn catalog_names() -> String {
    json!(catalog::names()).to_string()
}

#[wasm_bindgen(js_name = construct)]
pub fn construct_js(source: &str, p: u32) -> std::result::Result<String, JsError> {
    to_js(construct(source, p))
}

#[wasm_bindgen(js_name = actionTable)]
pub fn action_table_js(pair_text: &str, s_z: &str, l: u32) -> std::result::Result<String, JsError> {
    to_js(action_table(pair_text, s_z, l))
}

#[wasm_bindgen(js_name = csstCheck)]
pub fn csst_check_js(pair_text: &str, s_z: &str) -> std::result::Result<String, JsError> {
    to_js(csst_check(pair_text, s_z))
}
