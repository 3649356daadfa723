//! Browser bindings. Each export takes strings and returns a JSON string;
//! errors surface as JS exceptions carrying the positioned message.

use ccsf::operators::{dispatch, representative, Family};
use ccsf::semantics::bisim;
use ccsf::{sos, RuleSet, Term};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// A family name or a JSON rule set.
fn rules(spec: &str) -> Result<RuleSet, String> {
    match Family::from_name(spec.trim()) {
        Some(f) => Ok(representative(f)),
        None => RuleSet::from_json(spec).map_err(|e| e.to_string()),
    }
}

fn closed(src: &str) -> Result<Term, String> {
    let t = ccsf::parse_term(src).map_err(|e| e.to_string())?;
    if !t.is_closed() {
        return Err(format!("term is not closed: {t}"));
    }
    Ok(t)
}

pub fn parse_json(src: &str) -> Result<String, String> {
    let t = ccsf::parse_term(src).map_err(|e| e.to_string())?;
    let vars: Vec<String> = t.vars().iter().map(|v| v.to_string()).collect();
    Ok(json!({"term": t.to_string(), "canonical": t.canon().to_string(), "size": t.size(), "vars": vars}).to_string())
}

pub fn classify_json(spec: &str) -> Result<String, String> {
    let rs = rules(spec)?;
    let class = dispatch(&rs);
    let violations: Vec<String> = rs.violations().iter().map(|v| v.to_string()).collect();
    Ok(json!({
        "rules": rs.to_string(),
        "admissible": violations.is_empty(),
        "violations": violations,
        "tag": class.tag,
        "case": class.case.to_string(),
        "alpha": class.alpha,
    })
    .to_string())
}

/// Bisimilarity plus both transition systems, for display.
pub fn bisim_json(spec: &str, p: &str, q: &str) -> Result<String, String> {
    let rs = rules(spec)?;
    let (p, q) = (closed(p)?, closed(q)?);
    let r = bisim(&rs, &p, &q).map_err(|e| e.to_string())?;
    let show = |t: &Term| -> Result<Vec<String>, String> {
        let lts = sos::build_lts(&rs, t).map_err(|e| e.to_string())?;
        Ok(lts.transitions().map(|(s, a, u)| format!("{} --{a}--> {}", lts.states[s], lts.states[u])).collect())
    };
    Ok(json!({
        "equivalent": r.equivalent,
        "witness": r.witness.map(|h| h.to_string()),
        "states": r.states,
        "lts_p": show(&p)?,
        "lts_q": show(&q)?,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn parse(src: &str) -> Result<String, JsError> {
    parse_json(src).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn classify(rules: &str) -> Result<String, JsError> {
    classify_json(rules).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = bisim)]
pub fn bisim_js(rules: &str, p: &str, q: &str) -> Result<String, JsError> {
    bisim_json(rules, p, q).map_err(|e| JsError::new(&e))
}
