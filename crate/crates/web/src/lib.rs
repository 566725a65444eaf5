//! wasm-bindgen bindings behind `www/index.html`.
//!
//! Each export takes plain strings and numbers and returns a JSON string.
//! The work happens in the `*_json` functions, which also run natively.

use divlab::arith::parse_rational;
use divlab::bounds::bound_pipeline;
use divlab::divpoly::Curve;
use divlab::galois::{example_group, local_condition_check, sigma_params, Cocycle};
use divlab::padic::{sweep, Mode};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest prime limit the page may request.
pub const MAX_SWEEP_LIMIT: u64 = 20_000;
pub const MAX_BOUND_M: u32 = 60;

fn curve(b: &str, c: &str) -> Result<Curve, String> {
    let b = parse_rational(b).map_err(|e| e.to_string())?;
    let c = parse_rational(c).map_err(|e| e.to_string())?;
    Curve::new(b, c).map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

#[derive(Serialize)]
struct BoundRow {
    m: u32,
    log10_b: f64,
    h_delta_bound: f64,
    log10_budget: f64,
    elegant_form: Option<f64>,
}

/// `B(m, b, c)` and the prime budget for `3 <= m <= m_max`, as base-10 logs.
pub fn bound_curve_json(b: &str, c: &str, m_max: u32) -> Result<String, String> {
    let e = curve(b, c)?;
    if !(3..=MAX_BOUND_M).contains(&m_max) {
        return Err(format!("m_max must lie in 3..={MAX_BOUND_M}"));
    }
    let mut rows = Vec::new();
    for m in 3..=m_max {
        let r = bound_pipeline(&e, m).map_err(|e| e.to_string())?;
        rows.push(BoundRow {
            m,
            log10_b: r.b_bound.log10(),
            h_delta_bound: r.h_delta_bound,
            log10_budget: r.prime_budget.log10(),
            elegant_form: r.elegant_form,
        });
    }
    Ok(to_json(&rows))
}

#[derive(Serialize)]
struct DensityCurve {
    solvable: usize,
    unsolvable: usize,
    threshold: Option<f64>,
    /// `[p, density of unsolvable primes up to p]` for every prime `p`.
    points: Vec<(u64, f64)>,
}

/// Running density of primes where `P` has no local `m`-th division point.
pub fn density_curve_json(
    b: &str,
    c: &str,
    x: &str,
    y: &str,
    m: u32,
    limit: u64,
    group_order: Option<u64>,
) -> Result<String, String> {
    let e = curve(b, c)?;
    if !(2..=MAX_SWEEP_LIMIT).contains(&limit) {
        return Err(format!("limit must lie in 2..={MAX_SWEEP_LIMIT}"));
    }
    if m < 2 {
        return Err("m must be at least 2".into());
    }
    let x = parse_rational(x).map_err(|e| e.to_string())?;
    let y = parse_rational(y).map_err(|e| e.to_string())?;
    let r = sweep("web", &e, (&x, &y), m, limit, Mode::Abscissa, group_order).map_err(|e| e.to_string())?;
    let mut primes: Vec<(u64, bool)> =
        r.solvable.iter().map(|&p| (p, false)).chain(r.unsolvable.iter().map(|&p| (p, true))).collect();
    primes.sort_unstable();
    let mut bad = 0usize;
    let points = primes
        .iter()
        .enumerate()
        .map(|(i, &(p, unsolvable))| {
            bad += unsolvable as usize;
            (p, bad as f64 / (i + 1) as f64)
        })
        .collect();
    Ok(to_json(&DensityCurve {
        solvable: r.solvable.len(),
        unsolvable: r.unsolvable.len(),
        threshold: r.threshold,
        points,
    }))
}

#[derive(Serialize)]
struct GridRow {
    params: [u64; 4],
    matrix: [u64; 4],
    z: [u64; 2],
    /// Image of `sigma - 1` on `(Z/4)^2`, sorted.
    image: Vec<[u64; 2]>,
    local: bool,
}

#[derive(Serialize)]
struct Grid {
    rows: Vec<GridRow>,
    failing: usize,
}

/// Local-condition table for the cocycle on the 16-element group mod 4 with
/// `Z_sigma(x,y,z,w) = (zx . (x,y,z,w), zy . (x,y,z,w)) mod 4`.
pub fn cocycle_grid_json(zx: &[i64], zy: &[i64]) -> Result<String, String> {
    let (Ok(zx), Ok(zy)) = (<[i64; 4]>::try_from(zx), <[i64; 4]>::try_from(zy)) else {
        return Err("each coordinate needs 4 coefficients for x, y, z, w".into());
    };
    let group = example_group();
    let form = |k: &[i64; 4], s: [u64; 4]| -> u64 {
        let v: i64 = k.iter().zip(s).map(|(a, b)| a * b as i64).sum();
        v.rem_euclid(4) as u64
    };
    let z = Cocycle::from_fn(&group, |s| {
        let p = sigma_params(s).expect("group lies in the family");
        [form(&zx, p), form(&zy, p)]
    })
    .map_err(|e| e.to_string())?;
    let failing = local_condition_check(&z);
    let mut rows: Vec<GridRow> = group
        .elements()
        .iter()
        .map(|s| {
            let [a, b, c, d] = s.entries;
            let mut image: Vec<[u64; 2]> = (0..16u64)
                .map(|i| {
                    let (u, v) = (i % 4, i / 4);
                    [((a + 3) * u + b * v) % 4, (c * u + (d + 3) * v) % 4]
                })
                .collect();
            image.sort_unstable();
            image.dedup();
            GridRow {
                params: sigma_params(s).expect("group lies in the family"),
                matrix: s.entries,
                z: z.value(s).expect("element of the group"),
                image,
                local: !failing.contains(s),
            }
        })
        .collect();
    rows.sort_by_key(|r| r.params);
    Ok(to_json(&Grid { rows, failing: failing.len() }))
}

#[wasm_bindgen]
pub fn bound_curve(b: &str, c: &str, m_max: u32) -> Result<String, JsValue> {
    bound_curve_json(b, c, m_max).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn density_curve(
    b: &str,
    c: &str,
    x: &str,
    y: &str,
    m: u32,
    limit: u32,
    group_order: Option<u32>,
) -> Result<String, JsValue> {
    density_curve_json(b, c, x, y, m, limit.into(), group_order.map(u64::from)).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn cocycle_grid(zx: Vec<i32>, zy: Vec<i32>) -> Result<String, JsValue> {
    let zx: Vec<i64> = zx.into_iter().map(i64::from).collect();
    let zy: Vec<i64> = zy.into_iter().map(i64::from).collect();
    cocycle_grid_json(&zx, &zy).map_err(|e| JsValue::from_str(&e))
}
