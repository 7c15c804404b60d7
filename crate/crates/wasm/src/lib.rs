//! Browser bindings: three JSON-returning entry points for the demo page.

use std::collections::BTreeMap;

use canyonlab::equivalence::{decide_cards, DecideOptions};
use canyonlab::germ::parse_germ;
use canyonlab::invariants::identity_card_with;
use canyonlab::numerics::{parse_rat, Rat};
use canyonlab::report;
use canyonlab::Error;
use wasm_bindgen::prelude::*;

/// Parses `t=1, s=1/2` into bindings.
fn bindings(text: &str) -> Result<BTreeMap<String, Rat>, String> {
    let mut out = BTreeMap::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| format!("binding `{part}` is not name=value"))?;
        let v = parse_rat(value).ok_or_else(|| format!("`{value}` is not a rational number"))?;
        out.insert(name.trim().to_string(), v);
    }
    Ok(out)
}

fn fail(e: &Error) -> String {
    report::error_json(e)
}

pub fn card(expr: &str, binds: &str) -> Result<String, String> {
    let b = bindings(binds)?;
    let germ = parse_germ(expr, &b).map_err(|e| fail(&e))?;
    let card = identity_card_with(&germ.poly, &Default::default()).map_err(|e| fail(&e))?;
    Ok(report::card_json(&card, true))
}

pub fn compare(f: &str, g: &str, binds: &str, certificate: bool) -> Result<String, String> {
    let b = bindings(binds)?;
    let opts = DecideOptions::default();
    let run = || -> canyonlab::Result<String> {
        let fc = identity_card_with(&parse_germ(f, &b)?.poly, &opts.card)?;
        let gc = identity_card_with(&parse_germ(g, &b)?.poly, &opts.card)?;
        let v = decide_cards(&fc, &gc, &opts)?;
        Ok(report::verdict_json(&v, certificate, true))
    };
    run().map_err(|e| fail(&e))
}

pub fn profiles(expr: &str, binds: &str) -> Result<String, String> {
    let b = bindings(binds)?;
    let germ = parse_germ(expr, &b).map_err(|e| fail(&e))?;
    let card = identity_card_with(&germ.poly, &Default::default()).map_err(|e| fail(&e))?;
    Ok(report::profiles_json(&card, false))
}

#[wasm_bindgen]
pub fn card_json(expr: &str, binds: &str) -> Result<String, JsValue> {
    card(expr, binds).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn compare_json(f: &str, g: &str, binds: &str, certificate: bool) -> Result<String, JsValue> {
    compare(f, g, binds, certificate).map_err(|e| JsValue::from_str(&e))
}

/// `λ(q)` breakpoints for every polar of the germ.
#[wasm_bindgen]
pub fn profile_json(expr: &str, binds: &str) -> Result<String, JsValue> {
    profiles(expr, binds).map_err(|e| JsValue::from_str(&e))
}
