use std::collections::BTreeMap;

use serde::Serialize;

/// Experiment record written by `cluster` and `eval`. Absent values serialize as `null`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct EvalReport {
    pub ari: Option<f64>,
    pub ami: Option<f64>,
    pub n_noise_dbscan: Option<usize>,
    pub n_noise_pp: Option<usize>,
    pub noise_subset: Option<bool>,
    pub hausdorff: Option<f64>,
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl EvalReport {
    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    pub fn without_timings(mut self) -> Self {
        self.timings_ms = None;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_field_names() {
        let r = EvalReport {
            ari: Some(1.0),
            ami: Some(1.0),
            timings_ms: Some(BTreeMap::from([("total".to_string(), 2.5)])),
            ..Default::default()
        };
        let v: serde_json::Value = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(
            keys,
            ["ami", "ari", "hausdorff", "n_noise_dbscan", "n_noise_pp", "noise_subset", "timings_ms"]
        );
        assert!(v["hausdorff"].is_null());
        assert_eq!(v["timings_ms"]["total"], 2.5);
        assert!(r.without_timings().timings_ms.is_none());
    }
}
