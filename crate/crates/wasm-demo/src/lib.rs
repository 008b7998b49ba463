//! Browser bindings for three interactive views: the C/B discriminant ratio
//! at a torus point, a table of Hilbert symbols at one place, and the fibers
//! of the class correspondence over an Sp class with their κ-characters.
//!
//! Each binding returns a JSON string; errors come back as strings.

use metastab::classparam::SpClassParam;
use metastab::endoscopy::{
    bijection_forward, bijection_inverse, enumerate_endo_data, fiber, is_equi_singular, kappa_of,
    t_value, BijectionMode,
};
use metastab::exactnum::Rational;
use metastab::localsym::{hilbert, PlaceQ};
use metastab::rootsys::{discriminant_ratio, weyl_discriminant, RootDatum};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest `|a|, |b|` shown in the Hilbert table.
const TABLE_BOUND: i64 = 16;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Parse a comma- or space-separated list of rationals such as `2, 1/3, -5`.
fn parse_point(text: &str) -> Result<Vec<Rational>, String> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<Rational>().map_err(|e| format!("{s:?}: {e}")))
        .collect()
}

pub fn discriminant_view(text: &str) -> Result<Value, String> {
    let t = parse_point(text)?;
    if t.is_empty() {
        return Err("enter at least one coordinate".into());
    }
    let ratio = discriminant_ratio(t.len(), &t).map_err(err)?;
    let b = weyl_discriminant(&RootDatum::b(t.len()).map_err(err)?, &t).ok();
    let c = weyl_discriminant(&RootDatum::c(t.len()).map_err(err)?, &t).ok();
    let quotient = match (&b, &c) {
        (Some(b), Some(c)) => Some(c / b),
        _ => None,
    };
    Ok(json!({
        "n": t.len(),
        "closed_form": ratio.value,
        "kind": ratio.kind,
        "discriminant_b": b,
        "discriminant_c": c,
        "quotient": quotient,
    }))
}

pub fn hilbert_view(place: &str, bound: i64) -> Result<Value, String> {
    let v: PlaceQ = serde_json::from_value(match place.trim().parse::<u64>() {
        Ok(p) => json!(p),
        Err(_) => json!(place.trim()),
    })
    .map_err(err)?;
    if !(1..=TABLE_BOUND).contains(&bound) {
        return Err(format!("bound must lie in 1..={TABLE_BOUND}"));
    }
    let values: Vec<i64> = (-bound..=bound).filter(|&x| x != 0).collect();
    let rows = values
        .iter()
        .map(|&a| {
            values
                .iter()
                .map(|&b| {
                    hilbert(&Rational::from_int(a), &Rational::from_int(b), v)
                        .map(i8::from)
                        .map_err(err)
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(json!({ "place": v, "values": values, "rows": rows }))
}

/// Every datum, every pair in its fiber, and for equi-singular pairs the
/// factor choice, κ and `t` recovered by the inverse map.
pub fn fiber_view(delta_json: &str) -> Result<Value, String> {
    let delta: SpClassParam = serde_json::from_str(delta_json).map_err(err)?;
    delta.check().map_err(err)?;
    let delta = delta.canonical().map_err(err)?;
    let mut data = Vec::new();
    for datum in enumerate_endo_data(delta.n) {
        let mut entries = Vec::new();
        for gamma in fiber(&delta, datum).map_err(err)? {
            let verdict = is_equi_singular(&gamma).map_err(err)?;
            let mut entry = json!({ "gamma": gamma, "verdict": verdict });
            if verdict.equi_singular {
                let inv = bijection_inverse(datum, &gamma).map_err(err)?;
                let pair = bijection_forward(
                    &inv.delta,
                    &inv.isecond,
                    &inv.gl_second,
                    BijectionMode::Relaxed,
                )
                .map_err(err)?;
                entry["split"] = json!(inv.split);
                entry["kappa"] = json!(kappa_of(&pair).map_err(err)?);
                entry["t"] = json!(t_value(&pair).map_err(err)?);
            }
            entries.push(entry);
        }
        data.push(json!({ "datum": datum, "fiber": entries }));
    }
    Ok(json!({ "delta": delta, "data": data }))
}

fn to_js(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn discriminant(text: &str) -> Result<String, JsValue> {
    to_js(discriminant_view(text))
}

#[wasm_bindgen]
pub fn hilbert_table(place: &str, bound: i32) -> Result<String, JsValue> {
    to_js(hilbert_view(place, bound.into()))
}

#[wasm_bindgen]
pub fn explore_fibers(delta_json: &str) -> Result<String, JsValue> {
    to_js(fiber_view(delta_json))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_matches_quotient() {
        let v = discriminant_view("2, 1/3").unwrap();
        assert_eq!(v["closed_form"], "24");
        assert_eq!(v["quotient"], "24");
        let limit = discriminant_view("1 1").unwrap();
        assert_eq!(limit["closed_form"], "16");
        assert!(limit["quotient"].is_null());
        assert!(discriminant_view("1/0").is_err());
    }

    #[test]
    fn hilbert_table_is_symmetric() {
        let v = hilbert_view("2", 5).unwrap();
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 10);
        for (i, r) in rows.iter().enumerate() {
            for (j, x) in r.as_array().unwrap().iter().enumerate() {
                assert_eq!(*x, rows[j][i]);
            }
        }
        assert!(hilbert_view("inf", 3).is_ok());
        assert!(hilbert_view("4", 3).is_err());
        assert!(hilbert_view("3", 40).is_err());
    }

    #[test]
    fn fibers_of_a_field_class() {
        let delta = r#"{"group":"Sp","n":2,"factors":[{"kind":"field","poly":[1,0,1],"rank":1}],"dim_plus":0,"dim_minus":2}"#;
        let v = fiber_view(delta).unwrap();
        let data = v["data"].as_array().unwrap();
        assert_eq!(data.len(), 3);
        let equi: usize = data
            .iter()
            .flat_map(|d| d["fiber"].as_array().unwrap())
            .filter(|e| e["verdict"]["equi_singular"] == true)
            .count();
        // One equi-singular pair per choice of side for the single field factor.
        assert_eq!(equi, 2);
    }

    #[test]
    fn page_presets_load() {
        for delta in [
            r#"{"group":"Sp","n":2,"factors":[{"kind":"field","poly":[1,0,1],"rank":1},{"kind":"field","poly":[1,1,1],"rank":1}],"dim_plus":0,"dim_minus":0}"#,
            r#"{"group":"Sp","n":2,"factors":[],"dim_plus":4,"dim_minus":0}"#,
            r#"{"group":"Sp","n":1,"factors":[{"kind":"split","poly":[-2,1],"rank":1}],"dim_plus":0,"dim_minus":0}"#,
        ] {
            fiber_view(delta).unwrap_or_else(|e| panic!("{delta}: {e}"));
        }
    }
}
