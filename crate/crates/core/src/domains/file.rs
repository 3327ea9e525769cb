//! TOML domain files.
//!
//! ```toml
//! name = "shifted_ball"
//! n = 2
//! expr = "abs2(z1 - 1) + abs2(z2) - $R"
//! guards = ["z2 != 0"]       # optional; also `EXPR > 0`
//! box = 1.0                  # optional locality box |z_j| < box
//! interior = "1,0;0,0"       # optional interior witness
//! diameter = 4.0             # optional bracket for tangential radii
//!
//! [params]
//! R = 1.0
//! ```
//!
//! A file may instead name a catalog family with `family = "worm"` and give
//! its parameters under `[params]`.

use std::path::Path;

use serde::Deserialize;

use super::{catalog_get, dsl_domain, Domain, Guard};
use crate::complex::ComplexPoint;
use crate::defexpr::{parse_any, type_of, Params, Ty};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DomainFile {
    pub name: Option<String>,
    pub family: Option<String>,
    pub n: Option<usize>,
    pub expr: Option<String>,
    #[serde(default)]
    pub guards: Vec<String>,
    #[serde(rename = "box")]
    pub locality: Option<f64>,
    pub interior: Option<String>,
    pub diameter: Option<f64>,
    #[serde(default)]
    pub params: Params,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::DomainFile(msg.into())
}

fn parse_guard(text: &str, n: usize) -> Result<Guard> {
    let t = text.trim();
    if let Some(lhs) = t.strip_suffix("!= 0").map(str::trim) {
        let j = lhs
            .strip_prefix('z')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|j| (1..=n).contains(j))
            .ok_or_else(|| bad(format!("guard `{t}`: expected zJ != 0 with 1 <= J <= {n}")))?;
        return Ok(Guard::NonZero(j));
    }
    if let Some(lhs) = t.strip_suffix("> 0") {
        let node = parse_any(lhs, n)?;
        if type_of(&node)? == Ty::Complex {
            return Err(bad(format!("guard `{t}` is not real-valued")));
        }
        return Ok(Guard::Positive(node));
    }
    Err(bad(format!("guard `{t}`: expected `zJ != 0` or `EXPR > 0`")))
}

pub fn parse_domain_file(text: &str) -> Result<Domain> {
    let f: DomainFile = toml::from_str(text).map_err(|e| bad(e.to_string()))?;
    if let Some(family) = &f.family {
        if f.expr.is_some() || !f.guards.is_empty() {
            return Err(bad("`family` files take only `name` and `[params]`"));
        }
        let mut d = catalog_get(family, &f.params)?;
        if let Some(name) = f.name {
            d.name = name;
        }
        return Ok(d);
    }
    let expr = f.expr.as_deref().ok_or_else(|| bad("missing `expr` (or `family`)"))?;
    let n = f.n.ok_or_else(|| bad("missing `n`"))?;
    let guards = f.guards.iter().map(|g| parse_guard(g, n)).collect::<Result<Vec<_>>>()?;
    let interior = match &f.interior {
        Some(s) => {
            let z: ComplexPoint = s.parse().map_err(|e: String| bad(format!("interior: {e}")))?;
            if z.dim() != n {
                return Err(bad(format!("interior has {} coordinates, expected {n}", z.dim())));
            }
            Some(z)
        }
        None => None,
    };
    if let Some(b) = f.locality {
        if !(b > 0.0) {
            return Err(bad("`box` must be positive"));
        }
    }
    let name = f.name.unwrap_or_else(|| "dsl".to_string());
    let mut d = dsl_domain(&name, expr, n, f.params, guards, f.locality, interior)?;
    if let Some(diam) = f.diameter {
        if !(diam > 0.0) {
            return Err(bad("`diameter` must be positive"));
        }
        d.diameter = diam;
    }
    Ok(d)
}

pub fn load_domain_file(path: &Path) -> Result<Domain> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| bad(format!("{}: {e}", path.display())))?;
    parse_domain_file(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::EvalError;

    #[test]
    fn expression_file() {
        let d = parse_domain_file(
            r#"
name = "shifted"
n = 2
expr = "abs2(z1 - 1) + abs2(z2) - $R"
guards = ["z2 != 0", "abs2(z1) - 0.01 > 0"]
interior = "1,0;0.5,0"
[params]
R = 1.0
"#,
        )
        .unwrap();
        assert_eq!(d.name, "shifted");
        assert!(d.r(&"1,0;0.5,0".parse().unwrap()).unwrap() < 0.0);
        assert_eq!(
            d.r(&"1,0;0,0".parse().unwrap()),
            Err(EvalError::Guard("z2 != 0".into()))
        );
        assert!(matches!(d.r(&"0,0;0.5,0".parse().unwrap()), Err(EvalError::Guard(_))));
    }

    #[test]
    fn family_file() {
        let d = parse_domain_file("family = \"worm\"\n[params]\nbeta = 2.5\n").unwrap();
        assert_eq!(d.params["beta"], 2.5);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_guards() {
        assert!(parse_domain_file("n = 2\nexpr = \"Re(z1)\"\ncolour = 1\n").is_err());
        assert!(parse_domain_file("n = 2\nexpr = \"Re(z1) + abs2(z2)\"\nguards = [\"z3 != 0\"]\n").is_err());
        assert!(parse_domain_file("n = 2\nexpr = \"Re(z1) + abs2(z2)\"\nguards = [\"z1 > 0\"]\n").is_err());
    }
}
