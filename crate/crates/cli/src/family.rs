use opinion_bias::{BiasFamily, FamilySpec};

use crate::Failure;

/// Builds a family from its name and a `k=v,k=v` parameter list.
pub fn parse(name: &str, params: &str) -> Result<BiasFamily, Failure> {
    let spec = parse_spec(name, params)?;
    BiasFamily::new(spec).map_err(|e| Failure::Config(format!("{name}: {e}")))
}

pub fn parse_spec(name: &str, params: &str) -> Result<FamilySpec, Failure> {
    let mut map = serde_json::Map::new();
    for pair in params.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = pair.split_once('=').ok_or_else(|| {
            Failure::Config(format!("parameter {pair:?} is not of the form name=value"))
        })?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| Failure::Config(format!("parameter {k}: {v:?} is not a number")))?;
        let num = serde_json::Number::from_f64(v)
            .ok_or_else(|| Failure::Config(format!("parameter {k} must be finite")))?;
        map.insert(k.trim().replace('-', "_"), num.into());
    }
    let doc = serde_json::json!({ "family": name, "params": map });
    serde_json::from_value(doc).map_err(|e| Failure::Config(format!("family {name:?}: {e}")))
}
