//! Browser bindings for the demo page in `www/`.
//!
//! Three operations are exported: a figure sweep, a point evaluation of all
//! capacity columns, and the numerical coherent-information maximisation.
//! The wrappers only convert errors; the work happens in plain functions so
//! it can be tested natively.

use chancap::capacity::{self, CapacityCurvePoint};
use chancap::export::{self, Meta};
use chancap::wiretap;
use serde_json::json;
use wasm_bindgen::prelude::*;

fn sweep_points(scenario: &str, points: usize) -> Result<(Vec<CapacityCurvePoint>, bool), String> {
    let points = points.clamp(2, 2000);
    let r = match scenario {
        "fig3" => (capacity::sweep_fig3(points), false),
        "fig4" => (capacity::sweep_fig4(points), false),
        "fig6" => (wiretap::sweep_fig6(points), true),
        other => return Err(format!("unknown scenario {other:?}")),
    };
    Ok((r.0.map_err(|e| e.to_string())?, r.1))
}

/// Same document as `chancap sweep --format json`.
pub fn sweep_json(scenario: &str, points: usize) -> Result<String, String> {
    let (rows, wiretap) = sweep_points(scenario, points)?;
    let mut meta = Meta::new();
    meta.push("scenario", scenario);
    Ok(export::sweep_table(&rows, wiretap).to_json(&meta))
}

pub fn capacities_json(lambda: f64, p: f64) -> Result<String, String> {
    let pt = capacity::capacity_point(lambda, lambda, p).map_err(|e| e.to_string())?;
    let degradable = lambda <= 0.5;
    let complement = if degradable {
        Some(capacity::complement_two_way_capacity(lambda, p).map_err(|e| e.to_string())?.two_way)
    } else {
        None
    };
    let secrecy = if degradable {
        Some(wiretap::one_way_secrecy_capacity(lambda, p).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let doc = json!({
        "lambda": lambda,
        "p": p,
        "one_way": pt.one_way,
        "two_way": pt.two_way,
        "lower_bound": pt.lower_bound,
        "upper_bound": pt.upper_bound,
        "epsilon": capacity::closeness_epsilon(lambda, p).map_err(|e| e.to_string())?,
        "complement_two_way": complement,
        "secrecy_one_way": secrecy,
        "secrecy_two_way": wiretap::two_way_secrecy_capacity(lambda).map_err(|e| e.to_string())?,
    });
    Ok(doc.to_string())
}

/// `[value, r_x, r_y, r_z]`
pub fn maximize_ic_values(lambda: f64, p: f64) -> Result<Vec<f64>, String> {
    let m = capacity::maximize_coherent_information(lambda, p, 1e-6).map_err(|e| e.to_string())?;
    Ok(vec![m.value, m.bloch[0], m.bloch[1], m.bloch[2]])
}

#[wasm_bindgen]
pub fn sweep(scenario: &str, points: usize) -> Result<String, JsValue> {
    sweep_json(scenario, points).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn capacities(lambda: f64, p: f64) -> Result<String, JsValue> {
    capacities_json(lambda, p).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn maximize_ic(lambda: f64, p: f64) -> Result<Vec<f64>, JsValue> {
    maximize_ic_values(lambda, p).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_document() {
        let doc: serde_json::Value = serde_json::from_str(&sweep_json("fig6", 10).unwrap()).unwrap();
        assert_eq!(doc["rows"].as_array().unwrap().len(), 10);
        assert!(doc["rows"][0].get("upper_bound").is_none());
        assert!(sweep_json("fig9", 10).is_err());
    }

    #[test]
    fn point_evaluation() {
        let doc: serde_json::Value = serde_json::from_str(&capacities_json(0.3, 0.1).unwrap()).unwrap();
        assert!((doc["one_way"].as_f64().unwrap() - 0.540_698_678_076_784_4).abs() < 1e-12);
        assert!((doc["secrecy_one_way"].as_f64().unwrap() - (1.0 - 0.3 * 1.468_995_593_589_281)).abs() < 1e-12);
        let doc: serde_json::Value = serde_json::from_str(&capacities_json(0.7, 0.1).unwrap()).unwrap();
        assert!(doc["one_way"].is_null());
        assert!(capacities_json(1.5, 0.1).is_err());
    }

    #[test]
    fn maximisation() {
        let v = maximize_ic_values(0.3, 0.1).unwrap();
        assert!((v[0] - 0.540_699).abs() < 1e-6);
        assert!(v[1..].iter().all(|r| r.abs() < 1e-3));
    }
}
