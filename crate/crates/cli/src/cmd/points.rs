use std::path::Path;

use anyhow::Result;
use dinv_core::discretization::points;
use dinv_core::Scheme;
use serde_json::json;

use crate::input::{base_point, load_params, rational_arg};

pub fn run(scheme: Scheme, spec: &Path, z0: Option<&str>, h: Option<&str>, pretty: bool) -> Result<bool> {
    let t = load_params(spec)?;
    let z0 = base_point(z0, t.d())?;
    let pts = points(scheme, &t, &z0)?;
    let base: Vec<String> = z0.iter().map(ToString::to_string).collect();
    let value = match h {
        Some(h) => {
            let h = rational_arg(h)?;
            let numeric: Vec<Vec<String>> = pts
                .at(&h)
                .iter()
                .map(|p| p.iter().map(ToString::to_string).collect())
                .collect();
            json!({ "scheme": scheme, "base": base, "h": h.to_string(), "points": numeric })
        }
        None if pretty => json!({ "scheme": scheme, "base": base, "points": pts.pretty() }),
        None => serde_json::to_value(&pts)?,
    };
    print!("{}", super::to_json(&value)?);
    Ok(true)
}
