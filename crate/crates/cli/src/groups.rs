//! Group and cocycle specs.
//!
//! Groups: `paper-sec6`, `cyclic:eta:N`, `cyclic:omega:N`,
//! `stabilizer:KIND:P:R`, or `gens:N:a,b,c,d;a,b,c,d;...`.
//! Cocycles: `zero`, `coboundary:A1,A2`, `gens:v1,v2;...` (values on the
//! group's generators), or two linear forms in `x,y,z,w` such as `2w,0`,
//! evaluated on the parameters of the mod-4 family.

use divlab::arith::Mat2Mod;
use divlab::galois::{
    eta, example_group, group_closure, make_cocycle, omega, sigma_params, stabilizer_enumeration, Cocycle,
    MatrixGroup, StabilizerKind,
};

use crate::CliError;

fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, CliError> {
    s.trim().parse().map_err(|_| CliError::usage(format!("invalid {what}: {s:?}")))
}

pub fn parse_group(spec: &str, cap: u64) -> Result<MatrixGroup, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let group = match parts.as_slice() {
        ["paper-sec6"] => return Ok(example_group()),
        ["cyclic", "eta", n] => {
            let n: u64 = num(n, "modulus")?;
            check_modulus(n)?;
            group_closure(&[eta(n)], n, cap)
        }
        ["cyclic", "omega", n] => {
            let n: u64 = num(n, "modulus")?;
            check_modulus(n)?;
            group_closure(&[omega(n)], n, cap)
        }
        ["stabilizer", kind, p, r] => {
            let kind: StabilizerKind = kind.parse().map_err(|e: divlab::Error| CliError::usage(e.to_string()))?;
            stabilizer_enumeration(num(p, "prime")?, num(r, "exponent")?, kind, cap)
        }
        ["gens", n, list] => {
            let n: u64 = num(n, "modulus")?;
            check_modulus(n)?;
            let mut gens = Vec::new();
            for g in list.split(';').filter(|g| !g.trim().is_empty()) {
                let e: Vec<i64> = g.split(',').map(|v| num(v, "matrix entry")).collect::<Result<_, _>>()?;
                let e: [i64; 4] = e.try_into().map_err(|_| CliError::usage(format!("matrix needs 4 entries: {g:?}")))?;
                gens.push(Mat2Mod::new(n, e).map_err(|e| CliError::usage(e.to_string()))?);
            }
            group_closure(&gens, n, cap)
        }
        _ => return Err(CliError::usage(format!("unknown group spec {spec:?}"))),
    };
    group.map_err(CliError::from)
}

fn check_modulus(n: u64) -> Result<(), CliError> {
    if n < 2 {
        return Err(CliError::usage("modulus must be at least 2"));
    }
    Ok(())
}

/// `c0 + cx x + cy y + cz z + cw w`.
#[derive(Debug, Default, PartialEq)]
struct LinearForm([i64; 5]);

impl LinearForm {
    fn parse(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::usage(format!("invalid linear form {s:?}"));
        let mut form = LinearForm::default();
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let (term, tail) = body.split_at(end);
            rest = tail;
            let (digits, var) = match term.chars().last() {
                Some(v @ ('x' | 'y' | 'z' | 'w')) => (&term[..term.len() - 1], Some(v)),
                _ => (term, None),
            };
            let digits = digits.trim_end_matches('*');
            let k: i64 = if digits.is_empty() {
                if var.is_none() {
                    return Err(bad());
                }
                1
            } else {
                digits.parse().map_err(|_| bad())?
            };
            let slot = match var {
                None => 0,
                Some('x') => 1,
                Some('y') => 2,
                Some('z') => 3,
                _ => 4,
            };
            form.0[slot] += sign * k;
        }
        Ok(form)
    }

    fn eval(&self, p: [u64; 4], n: u64) -> u64 {
        let v = self.0[0] + (0..4).map(|i| self.0[i + 1] * p[i] as i64).sum::<i64>();
        v.rem_euclid(n as i64) as u64
    }
}

pub fn parse_cocycle(spec: &str, group: &MatrixGroup) -> Result<Cocycle, CliError> {
    let n = group.modulus();
    let pair = |s: &str| -> Result<[u64; 2], CliError> {
        let v: Vec<i64> = s.split(',').map(|t| num(t, "vector entry")).collect::<Result<_, _>>()?;
        match v.as_slice() {
            [a, b] => Ok([a.rem_euclid(n as i64) as u64, b.rem_euclid(n as i64) as u64]),
            _ => Err(CliError::usage(format!("vector needs 2 entries: {s:?}"))),
        }
    };
    if spec == "zero" {
        return make_cocycle(group, &vec![[0, 0]; group.generators().len()]).map_err(CliError::from);
    }
    if let Some(a) = spec.strip_prefix("coboundary:") {
        return Ok(Cocycle::coboundary(group, pair(a)?));
    }
    if let Some(list) = spec.strip_prefix("gens:") {
        let values: Vec<[u64; 2]> = list.split(';').map(pair).collect::<Result<_, _>>()?;
        return make_cocycle(group, &values).map_err(CliError::from);
    }
    let (a, b) = spec.split_once(',').ok_or_else(|| CliError::usage(format!("unknown cocycle spec {spec:?}")))?;
    let (fa, fb) = (LinearForm::parse(a)?, LinearForm::parse(b)?);
    if group.elements().iter().any(|s| sigma_params(s).is_none()) {
        return Err(CliError::usage("x,y,z,w cocycle forms need a subgroup of the mod-4 family"));
    }
    Cocycle::from_fn(group, |s| {
        let p = sigma_params(s).expect("checked above");
        [fa.eval(p, n), fb.eval(p, n)]
    })
    .map_err(CliError::from)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_forms() {
        assert_eq!(LinearForm::parse("2w").unwrap(), LinearForm([0, 0, 0, 0, 2]));
        assert_eq!(LinearForm::parse("x+y-3").unwrap(), LinearForm([-3, 1, 1, 0, 0]));
        assert_eq!(LinearForm::parse("2*x + 2 w").unwrap(), LinearForm([0, 2, 0, 0, 2]));
        assert!(LinearForm::parse("2q").is_err());
        assert!(LinearForm::parse("").is_err());
    }

    #[test]
    fn specs() {
        let g = parse_group("paper-sec6", 1000).unwrap();
        assert_eq!(g.order(), 16);
        assert_eq!(parse_group("cyclic:eta:25", 1000).unwrap().order(), 50);
        assert_eq!(parse_group("gens:4:-1,0,2,-1", 1000).unwrap().order(), 2);
        assert_eq!(parse_group("stabilizer:fix-P1-det1:5:1", 1000).unwrap().order(), 5);
        assert!(parse_group("cyclic:eta:25", 10).is_err());
        assert!(parse_group("nope", 10).is_err());
        let z = parse_cocycle("2w,0", &g).unwrap();
        assert_eq!(divlab::galois::local_condition_check(&z).len(), 4);
        assert!(parse_cocycle("zero", &g).is_ok());
        assert!(parse_cocycle("coboundary:1,2", &g).is_ok());
        assert!(parse_cocycle("x,0", &g).is_err());
    }
}
