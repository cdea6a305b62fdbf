//! Literal parsing: field elements and code descriptors.

use std::sync::Arc;

use rankmetric::{make_d, make_gabidulin, make_twisted, Error, Fe, FieldTower, RankMetricCode, Result};

/// Parse an element literal: `auto`, `w`, `w^k` (k may be negative), a
/// raw integer code, optionally prefixed by `-` (negation) or `1/`
/// (inverse). Prefixes compose, e.g. `-1/w^3`.
pub fn parse_element(t: &FieldTower, s: &str) -> Result<Fe> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('-') {
        return Ok(t.neg(parse_element(t, rest)?));
    }
    if let Some(rest) = s.strip_prefix("1/") {
        let x = parse_element(t, rest)?;
        return t.inv(x).ok_or_else(|| Error::Invalid("cannot invert 0".into()));
    }
    match s {
        "auto" => t.find_gamma(),
        "w" => Ok(t.omega()),
        _ => {
            if let Some(exp) = s.strip_prefix("w^") {
                let k: i64 = exp.parse().map_err(|_| Error::Invalid(format!("bad exponent in '{s}'")))?;
                Ok(t.power_of_omega(k))
            } else {
                let code: u32 = s.parse().map_err(|_| Error::Invalid(format!("bad element literal '{s}'")))?;
                t.element(code)
            }
        }
    }
}

/// Human form of an element: `0`, `1` or `w^k`.
pub fn show(t: &FieldTower, x: Fe) -> String {
    match t.log(x) {
        None => "0".into(),
        Some(0) => "1".into(),
        Some(1) => "w".into(),
        Some(k) => format!("w^{k}"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeSpec {
    Gabidulin { k: u32, s: u32 },
    Twisted { k: u32, s: u32, eta: String, h: u32 },
    D { k: u32, s: u32, gamma: String },
}

impl std::str::FromStr for CodeSpec {
    type Err = String;

    /// `G:k:s`, `H:k:s:eta:h` or `D:k:s:gamma`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> std::result::Result<u32, String> {
            parts
                .get(i)
                .ok_or_else(|| format!("'{s}': missing field {i}"))?
                .parse()
                .map_err(|_| format!("'{s}': field {i} is not an integer"))
        };
        match (parts[0], parts.len()) {
            ("G", 3) => Ok(CodeSpec::Gabidulin { k: num(1)?, s: num(2)? }),
            ("H", 5) => Ok(CodeSpec::Twisted {
                k: num(1)?,
                s: num(2)?,
                eta: parts[3].into(),
                h: num(4)?,
            }),
            ("D", 4) => Ok(CodeSpec::D {
                k: num(1)?,
                s: num(2)?,
                gamma: parts[3].into(),
            }),
            _ => Err(format!("'{s}': expected G:k:s, H:k:s:eta:h or D:k:s:gamma")),
        }
    }
}

impl CodeSpec {
    pub fn build(&self, t: &Arc<FieldTower>) -> Result<RankMetricCode> {
        match self {
            CodeSpec::Gabidulin { k, s } => make_gabidulin(t, *k, *s),
            CodeSpec::Twisted { k, s, eta, h } => {
                let eta = if eta == "auto" { t.omega() } else { parse_element(t, eta)? };
                make_twisted(t, *k, *s, eta, *h)
            }
            CodeSpec::D { k, s, gamma } => make_d(t, *k, *s, parse_element(t, gamma)?),
        }
    }

    pub fn label(&self) -> String {
        match self {
            CodeSpec::Gabidulin { k, s } => format!("G:{k}:{s}"),
            CodeSpec::Twisted { k, s, eta, h } => format!("H:{k}:{s}:{eta}:{h}"),
            CodeSpec::D { k, s, gamma } => format!("D:{k}:{s}:{gamma}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rankmetric::build_tower;

    #[test]
    fn element_literals() {
        let t = build_tower(3, 1, 2, Some(&[2, 0, 0, 2, 1])).unwrap();
        let w = t.omega();
        assert_eq!(parse_element(&t, "w").unwrap(), w);
        assert_eq!(parse_element(&t, "auto").unwrap(), w);
        assert_eq!(parse_element(&t, "w^36").unwrap(), t.power_of_omega(36));
        assert_eq!(parse_element(&t, "w^-1").unwrap(), t.inv(w).unwrap());
        assert_eq!(parse_element(&t, "1/w").unwrap(), t.inv(w).unwrap());
        assert_eq!(parse_element(&t, "-w").unwrap(), t.neg(w));
        assert_eq!(parse_element(&t, "-1/w^2").unwrap(), t.neg(t.power_of_omega(-2)));
        assert_eq!(parse_element(&t, "3").unwrap(), w);
        assert_eq!(parse_element(&t, "1").unwrap(), Fe::ONE);
        assert!(parse_element(&t, "81").is_err());
        assert!(parse_element(&t, "1/0").is_err());
        assert!(parse_element(&t, "x").is_err());
        assert_eq!(show(&t, t.power_of_omega(54)), "w^54");
    }

    #[test]
    fn code_specs() {
        assert_eq!("D:2:1:w".parse::<CodeSpec>().unwrap(), CodeSpec::D { k: 2, s: 1, gamma: "w".into() });
        assert_eq!("G:2:1".parse::<CodeSpec>().unwrap(), CodeSpec::Gabidulin { k: 2, s: 1 });
        assert!(matches!("H:2:1:w^3:2".parse::<CodeSpec>().unwrap(), CodeSpec::Twisted { h: 2, .. }));
        assert!("D:2:1".parse::<CodeSpec>().is_err());
        assert!("Q:1:1".parse::<CodeSpec>().is_err());
        assert_eq!("H:2:1:w:2".parse::<CodeSpec>().unwrap().label(), "H:2:1:w:2");
    }
}
