//! Curve configs, points and small textual specs.

use std::path::Path;

use divlab::arith::{parse_rational, MultiQuadElement, Rational, Tower};
use divlab::descent::{tower_for_radicands, LegendreCurve};
use divlab::divpoly::Curve;
use divlab::example;
use serde::Deserialize;

use crate::CliError;

/// A curve either in short form or in Legendre form. Numbers are decimal
/// strings so no binary float ever touches a coefficient.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveConfig {
    pub b: Option<String>,
    pub c: Option<String>,
    pub alpha: Option<String>,
    pub beta: Option<String>,
    pub gamma: Option<String>,
    pub label: Option<String>,
}

#[derive(Clone, Debug)]
pub struct CurveInput {
    pub label: String,
    pub curve: Curve,
    pub legendre: Option<LegendreCurve>,
}

fn rational(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::usage(e.to_string()))
}

impl CurveConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::usage(format!("invalid config {}: {e}", path.display())))
    }

    pub fn resolve(self) -> Result<CurveInput, CliError> {
        let short = self.b.is_some() || self.c.is_some();
        let legendre = self.alpha.is_some() || self.beta.is_some() || self.gamma.is_some();
        let label = self.label.unwrap_or_else(|| "custom".into());
        match (short, legendre) {
            (true, false) => {
                let (Some(b), Some(c)) = (self.b, self.c) else {
                    return Err(CliError::usage("config needs both b and c"));
                };
                let curve = Curve::new(rational(&b)?, rational(&c)?)
                    .map_err(|e| CliError::usage(format!("invalid curve: {e}")))?;
                Ok(CurveInput { label, curve, legendre: None })
            }
            (false, true) => {
                let (Some(a), Some(b), Some(g)) = (self.alpha, self.beta, self.gamma) else {
                    return Err(CliError::usage("config needs alpha, beta and gamma"));
                };
                let l = LegendreCurve::new(rational(&a)?, rational(&b)?, rational(&g)?)
                    .map_err(|e| CliError::usage(format!("invalid Legendre curve: {e}")))?;
                Ok(CurveInput { label, curve: l.short(), legendre: Some(l) })
            }
            _ => Err(CliError::usage("config must give exactly one of {b, c} or {alpha, beta, gamma}")),
        }
    }
}

pub fn builtin(name: &str) -> Result<CurveInput, CliError> {
    let found = example::NAMED_CURVES.iter().find(|(n, _, _)| *n == name);
    let Some(&(label, b, c)) = found else {
        let names: Vec<&str> = example::NAMED_CURVES.iter().map(|c| c.0).collect();
        return Err(CliError::usage(format!("unknown curve {name:?}; built-in curves: {}", names.join(", "))));
    };
    let curve = Curve::from_ints(b, c).expect("built-in curves are nonsingular");
    let legendre = (label == "paper-sec6").then(|| {
        let (a, b, g) = example::LEGENDRE;
        LegendreCurve::from_ints(a, b, g).expect("distinct roots")
    });
    Ok(CurveInput { label: label.to_string(), curve, legendre })
}

/// `"x,y"` with exact rationals.
pub fn point(s: &str) -> Result<(Rational, Rational), CliError> {
    let (x, y) = s.split_once(',').ok_or_else(|| CliError::usage(format!("point must be X,Y: {s:?}")))?;
    Ok((rational(x)?, rational(y)?))
}

pub fn rationals(s: &str) -> Result<Vec<Rational>, CliError> {
    s.split(',').map(|t| rational(t.trim())).collect()
}

/// Splits at top-level `+`/`-`, keeping the sign with each term.
fn split_terms(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for ch in s.chars().filter(|c| !c.is_whitespace()) {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && !cur.is_empty() && !cur.ends_with('*') && !cur.ends_with('/') => {
                out.push(std::mem::take(&mut cur));
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Parses sums such as `27 + 6*sqrt(7)` or `3 - 3*sqrt(-6) + sqrt(2)*sqrt(3)`
/// into an element of the smallest tower containing every radical.
pub fn tower_expression(s: &str) -> Result<MultiQuadElement, CliError> {
    let bad = || CliError::usage(format!("cannot parse tower expression {s:?}"));
    let mut terms: Vec<(Rational, Vec<Rational>)> = Vec::new();
    for term in split_terms(s) {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest.to_string()),
            None => (1, term.trim_start_matches('+').to_string()),
        };
        let mut coeff = Rational::from_integer(sign.into());
        let mut radicals = Vec::new();
        for factor in body.split('*') {
            if let Some(inner) = factor.strip_prefix("sqrt(").and_then(|f| f.strip_suffix(')')) {
                radicals.push(parse_rational(inner).map_err(|_| bad())?);
            } else {
                coeff *= parse_rational(factor).map_err(|_| bad())?;
            }
        }
        terms.push((coeff, radicals));
    }
    if terms.is_empty() {
        return Err(bad());
    }
    let all: Vec<Rational> = terms.iter().flat_map(|t| t.1.iter().cloned()).collect();
    let tower = tower_for_radicands(&all).map_err(|e| CliError::domain(e.to_string()))?;
    build(&tower, &terms)
}

fn build(tower: &Tower, terms: &[(Rational, Vec<Rational>)]) -> Result<MultiQuadElement, CliError> {
    let mut acc = tower.zero();
    for (coeff, radicals) in terms {
        let mut t = tower.rational(coeff.clone());
        for r in radicals {
            t = &t * &tower.sqrt(r).map_err(|e| CliError::domain(e.to_string()))?;
        }
        acc = &acc + &t;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions() {
        let x = tower_expression("3+3*sqrt(-6)+6*sqrt(-3)-3*sqrt(2)").unwrap();
        assert_eq!(x.tower().radicands(), &[-1, 2, 3]);
        assert_eq!(tower_expression("27 + 6*sqrt(7)").unwrap().to_string(), "27 + 6*sqrt(7)");
        assert_eq!(tower_expression("-1/2").unwrap().to_string(), "-1/2");
        assert!(tower_expression("sqrt(").is_err());
    }

    #[test]
    fn configs() {
        let c: CurveConfig = serde_json::from_str(r#"{"b": "-171", "c": "810"}"#).unwrap();
        assert!(c.resolve().is_ok());
        let c: CurveConfig = serde_json::from_str(r#"{"alpha": "9", "beta": "6", "gamma": "-15"}"#).unwrap();
        assert_eq!(c.resolve().unwrap().curve.b().to_string(), "-171");
        let c: CurveConfig = serde_json::from_str(r#"{"b": "1", "c": "1", "alpha": "1"}"#).unwrap();
        assert!(c.resolve().is_err());
        let c: CurveConfig = serde_json::from_str(r#"{"alpha": "1", "beta": "1", "gamma": "-2"}"#).unwrap();
        assert!(c.resolve().is_err());
        let c: CurveConfig = serde_json::from_str(r#"{"b": "0", "c": "0"}"#).unwrap();
        assert!(c.resolve().is_err());
    }
}
