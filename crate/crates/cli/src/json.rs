//! JSON shapes. Coefficients are decimal strings so that consumers need
//! no particular integer width.

use serde_json::{json, Value};

use charkit::tensor::CGSeries;
use charkit::{MultiPoly, Weight};

pub fn character(m: &Weight, chi: &MultiPoly) -> Value {
    let terms: Vec<Value> = chi
        .terms()
        .map(|(n, c)| json!([c.to_string(), n.exps()]))
        .collect();
    json!({"weight": m.0, "polynomial": terms})
}

pub fn series_terms(s: &CGSeries) -> Vec<Value> {
    s.iter().map(|(w, n)| json!({"weight": w.0, "mult": n})).collect()
}

pub fn cg(factors: &[Weight], s: &CGSeries, dim_check: bool) -> Value {
    let factors: Vec<_> = factors.iter().map(|w| w.0).collect();
    json!({"factors": factors, "series": series_terms(s), "dim_check": dim_check})
}
