//! Root existence in `Z_p` and `Q_p`, local m-divisibility of rational
//! points and prime sweeps.
//!
//! Roots are searched on the squarefree primitive part `g` of the input. A
//! residue `a` with `g(a) = 0 mod p` and `g'(a)` a unit lifts by Hensel's
//! lemma; otherwise the search continues on `g(a + p x)` with its content
//! removed. Each root of `g` in `Z_p` ends in exactly one simple branch.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::poly::{IntPoly, UniPoly};
use crate::arith::rational::{valuation, Rational};
use crate::divpoly::{preimage_poly, Curve};
use crate::error::{Error, Result};
use crate::primes::primes_up_to;

/// Hard ceiling on the p-adic working precision.
pub const PRECISION_CAP: u32 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    SimpleRootHensel,
    RecursiveRefinement,
    ExhaustedNoRoot,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certificate::SimpleRootHensel => "simple-root-hensel",
            Certificate::RecursiveRefinement => "recursive-refinement",
            Certificate::ExhaustedNoRoot => "exhausted-no-root",
        })
    }
}

/// A root approximation `residue mod p^precision`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(serialize_with = "ser_decimal")]
    pub residue: BigInt,
    pub precision: u32,
    /// The witness is a root of the reversed polynomial (a root of
    /// negative valuation for the original).
    pub reversed: bool,
}

fn ser_decimal<S: serde::Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootReport {
    pub prime: u64,
    pub exists: bool,
    pub witness: Option<Witness>,
    pub certificate: Certificate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    Abscissa,
    Full,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Abscissa => "abscissa",
            Mode::Full => "full",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "abscissa" => Ok(Mode::Abscissa),
            "full" => Ok(Mode::Full),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

fn eval_mod(coeffs: &[u64], a: u64, p: u64) -> u64 {
    coeffs
        .iter()
        .rev()
        .fold(0u128, |acc, &c| (acc * a as u128 + c as u128) % p as u128) as u64
}

fn pow_big(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// Newton lift of a simple root `a` of `h` mod `p` to a root mod `p^k`.
fn hensel_lift(h: &IntPoly, a: u64, p: u64, k: u32) -> BigInt {
    let dh = h.derivative();
    let mut x = BigInt::from(a);
    let mut prec = 1u32;
    while prec < k {
        prec = (2 * prec).min(k);
        let modulus = pow_big(p, prec);
        let d = dh.eval(&x).mod_floor(&modulus);
        let g = d.extended_gcd(&modulus);
        debug_assert!(g.gcd.is_one(), "derivative must stay a unit");
        x = (&x - h.eval(&x) * g.x).mod_floor(&modulus);
    }
    x
}

/// One root of `g` in `Z_p`: `prefix + p^depth * r` with `r` the Hensel lift
/// of the simple root `a` of `h` mod `p`.
#[derive(Clone, Debug)]
struct Branch {
    prefix: BigInt,
    depth: u32,
    h: IntPoly,
    a: u64,
}

impl Branch {
    /// Approximation of the root modulo `p^(depth + k)`.
    fn refine(&self, p: u64, k: u32) -> (BigInt, u32) {
        let r = hensel_lift(&self.h, self.a, p, k);
        (&self.prefix + pow_big(p, self.depth) * r, self.depth + k)
    }
}

/// A polynomial prepared for repeated local root searches.
#[derive(Clone, Debug)]
pub struct LocalSolver {
    g: IntPoly,
    disc: Option<BigInt>,
}

impl LocalSolver {
    pub fn new(f: &UniPoly) -> Result<LocalSolver> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (_, g) = f.squarefree_part().content_primitive()?;
        let disc = match g.degree() {
            Some(d) if d >= 1 => Some(g.to_rational().discriminant()?.numer().clone()),
            _ => None,
        };
        Ok(LocalSolver { g, disc })
    }

    /// The squarefree primitive polynomial the search runs on.
    pub fn poly(&self) -> &IntPoly {
        &self.g
    }

    fn start_precision(&self, p: u64) -> u32 {
        let v = self.disc.as_ref().filter(|d| !d.is_zero()).map_or(0, |d| valuation(d, p));
        v + 3
    }

    fn depth_cap(&self, p: u64) -> u32 {
        self.start_precision(p) + self.g.degree().unwrap_or(0) as u32
    }

    fn branches(&self, p: u64, first_only: bool) -> Result<Vec<Branch>> {
        let mut out = Vec::new();
        if self.g.degree().unwrap_or(0) >= 1 {
            self.search(&self.g, p, BigInt::zero(), 0, first_only, &mut out)?;
        }
        Ok(out)
    }

    fn search(
        &self,
        h: &IntPoly,
        p: u64,
        prefix: BigInt,
        depth: u32,
        first_only: bool,
        out: &mut Vec<Branch>,
    ) -> Result<()> {
        let hm = h.reduce_mod(p);
        let dm = h.derivative().reduce_mod(p);
        for a in 0..p {
            if eval_mod(&hm, a, p) != 0 {
                continue;
            }
            if eval_mod(&dm, a, p) != 0 {
                out.push(Branch { prefix: prefix.clone(), depth, h: h.clone(), a });
            } else {
                if depth + 1 > self.depth_cap(p) || depth + 1 > PRECISION_CAP {
                    return Err(Error::PrecisionCap(PRECISION_CAP));
                }
                let shifted = h.shift_scale(&BigInt::from(a), &BigInt::from(p));
                let next = shifted.div_exact(&shifted.content());
                let prefix = &prefix + BigInt::from(a) * pow_big(p, depth);
                self.search(&next, p, prefix, depth + 1, first_only, out)?;
            }
            if first_only && !out.is_empty() {
                return Ok(());
            }
        }
        Ok(())
    }

    /// Refines a branch until `v(g(A)) > 2 v(g'(A))` holds at the witness.
    fn certify(&self, branch: &Branch, p: u64) -> Result<Witness> {
        let dg = self.g.derivative();
        let mut k = self.start_precision(p);
        loop {
            let (a, precision) = branch.refine(p, k);
            let ga = self.g.eval(&a);
            let da = dg.eval(&a);
            if !da.is_zero() && (ga.is_zero() || valuation(&ga, p) > 2 * valuation(&da, p)) {
                let modulus = pow_big(p, precision);
                return Ok(Witness { residue: a.mod_floor(&modulus), precision, reversed: false });
            }
            if k >= PRECISION_CAP {
                return Err(Error::PrecisionCap(PRECISION_CAP));
            }
            k = (2 * k).min(PRECISION_CAP);
        }
    }

    pub fn zp(&self, p: u64) -> Result<RootReport> {
        let found = self.branches(p, true)?;
        match found.first() {
            None => Ok(RootReport {
                prime: p,
                exists: false,
                witness: None,
                certificate: Certificate::ExhaustedNoRoot,
            }),
            Some(branch) => Ok(RootReport {
                prime: p,
                exists: true,
                witness: Some(self.certify(branch, p)?),
                certificate: if branch.depth == 0 {
                    Certificate::SimpleRootHensel
                } else {
                    Certificate::RecursiveRefinement
                },
            }),
        }
    }

    pub fn reversed(&self) -> LocalSolver {
        let rev = self.g.to_rational().reversal();
        LocalSolver::new(&rev).expect("reversal of a nonzero polynomial")
    }
}

pub fn zp_root_exists(f: &UniPoly, p: u64) -> Result<RootReport> {
    LocalSolver::new(f)?.zp(p)
}

/// Roots in `Q_p`: roots of `f` in `Z_p`, or roots of the reversal in `Z_p`
/// (which covers every root of negative valuation).
pub fn qp_root_exists(f: &UniPoly, p: u64) -> Result<RootReport> {
    let solver = LocalSolver::new(f)?;
    qp_with(&solver, &solver.reversed(), p)
}

fn qp_with(direct: &LocalSolver, reversed: &LocalSolver, p: u64) -> Result<RootReport> {
    let r = direct.zp(p)?;
    if r.exists {
        return Ok(r);
    }
    let mut r = reversed.zp(p)?;
    if let Some(w) = r.witness.as_mut() {
        w.reversed = true;
    }
    Ok(r)
}

/// Whether a nonzero `w` known modulo `p^precision` is a square in `Q_p`;
/// `None` when the precision does not settle it.
fn square_class(w: &BigInt, precision: u32, p: u64) -> Option<bool> {
    let need = if p == 2 { 3 } else { 1 };
    if w.is_zero() {
        return None;
    }
    let t = valuation(w, p);
    if t + need > precision {
        return None;
    }
    if t % 2 == 1 {
        return Some(false);
    }
    let unit = w / pow_big(p, t);
    if p == 2 {
        return Some(unit.mod_floor(&BigInt::from(8)) == BigInt::one());
    }
    let u = unit.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits");
    let e = BigInt::from((p - 1) / 2);
    Some(BigInt::from(u).modpow(&e, &BigInt::from(p)).is_one())
}

/// The test polynomial prepared once per (curve, point, m).
#[derive(Clone, Debug)]
pub struct DivisibilityTest {
    b: BigInt,
    c: BigInt,
    preimage: UniPoly,
    direct: LocalSolver,
    reversed: LocalSolver,
    /// Part of the preimage polynomial sharing roots with the cubic
    /// (2-torsion abscissas, where the ordinate is zero).
    cubic_part: Option<(LocalSolver, LocalSolver)>,
    rest: (LocalSolver, LocalSolver),
}

impl DivisibilityTest {
    pub fn new(curve: &Curve, point: (&Rational, &Rational), m: u32) -> Result<Self> {
        let (x, y) = point;
        if !curve.contains(x, y) {
            return Err(Error::NotOnCurve);
        }
        // Work on the integral model; x scales by u^2, which preserves the
        // fields of definition.
        let (b, c, u) = curve.integral_model();
        let model = Curve::new(Rational::from_integer(b.clone()), Rational::from_integer(c.clone()))?;
        let x_model = x * Rational::from_integer(&u * &u);
        let preimage = preimage_poly(&model, m, &x_model)?;
        let direct = LocalSolver::new(&preimage)?;
        let reversed = direct.reversed();
        let g = direct.poly().to_rational();
        let common = UniPoly::gcd(&g, &model.cubic());
        let (cubic_part, rest) = if common.degree().unwrap_or(0) >= 1 {
            let (rest, _) = g.div_rem(&common)?;
            let cp = LocalSolver::new(&common)?;
            let rs = LocalSolver::new(&rest)?;
            (Some((cp.reversed(), cp)), (rs.clone(), rs.reversed()))
        } else {
            (None, (direct.clone(), reversed.clone()))
        };
        let cubic_part = cubic_part.map(|(r, d)| (d, r));
        Ok(DivisibilityTest { b, c, preimage, direct, reversed, cubic_part, rest })
    }

    pub fn preimage(&self) -> &UniPoly {
        &self.preimage
    }

    pub fn abscissa(&self, p: u64) -> Result<RootReport> {
        qp_with(&self.direct, &self.reversed, p)
    }

    /// Some `Q_p` root `u` with `u^3 + bu + c` a square in `Q_p`.
    pub fn full(&self, p: u64) -> Result<RootReport> {
        if let Some((d, r)) = &self.cubic_part {
            let rep = qp_with(d, r, p)?;
            if rep.exists {
                return Ok(rep);
            }
        }
        let (direct, reversed) = &self.rest;
        let (b, c) = (&self.b, &self.c);
        for (solver, is_rev) in [(direct, false), (reversed, true)] {
            for branch in solver.branches(p, false)? {
                let mut k = solver.start_precision(p);
                loop {
                    let (a, precision) = branch.refine(p, k);
                    // For a root beta of the reversal, u = 1/beta and
                    // u^3 + bu + c = beta^-4 * beta (1 + b beta^2 + c beta^3).
                    let w = if is_rev {
                        &a * (BigInt::one() + b * &a * &a + c * &a * &a * &a)
                    } else {
                        &a * &a * &a + b * &a + c
                    };
                    if let Some(square) = square_class(&w, precision, p) {
                        if square {
                            let modulus = pow_big(p, precision);
                            return Ok(RootReport {
                                prime: p,
                                exists: true,
                                witness: Some(Witness {
                                    residue: a.mod_floor(&modulus),
                                    precision,
                                    reversed: is_rev,
                                }),
                                certificate: if branch.depth == 0 {
                                    Certificate::SimpleRootHensel
                                } else {
                                    Certificate::RecursiveRefinement
                                },
                            });
                        }
                        break;
                    }
                    if k >= PRECISION_CAP {
                        return Err(Error::PrecisionCap(PRECISION_CAP));
                    }
                    k = (2 * k).min(PRECISION_CAP);
                }
            }
        }
        Ok(RootReport { prime: p, exists: false, witness: None, certificate: Certificate::ExhaustedNoRoot })
    }

    pub fn run(&self, p: u64, mode: Mode) -> Result<RootReport> {
        match mode {
            Mode::Abscissa => self.abscissa(p),
            Mode::Full => self.full(p),
        }
    }
}

pub fn local_divisibility_test(
    curve: &Curve,
    point: (&Rational, &Rational),
    m: u32,
    p: u64,
    mode: Mode,
) -> Result<bool> {
    Ok(DivisibilityTest::new(curve, point, m)?.run(p, mode)?.exists)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub prime: u64,
    pub mode: Mode,
    pub solvable: bool,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub curve_id: String,
    pub m: u32,
    pub mode: Mode,
    pub limit: u64,
    pub solvable: Vec<u64>,
    pub unsolvable: Vec<u64>,
    /// `|unsolvable| / (|solvable| + |unsolvable|)` as `"k/n"`.
    pub density_fraction: String,
    pub density_unsolvable: f64,
    pub threshold: Option<f64>,
    #[serde(skip)]
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn summary_line(&self) -> String {
        let mut line = format!(
            "solvable={} unsolvable={} density={}",
            self.solvable.len(),
            self.unsolvable.len(),
            crate::bounds::format_float(self.density_unsolvable)
        );
        if let Some(t) = self.threshold {
            line.push_str(&format!(" threshold={}", crate::bounds::format_float(t)));
        }
        line
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("prime,mode,solvable,certificate\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{}\n", r.prime, r.mode, r.solvable as u8, r.certificate));
        }
        out
    }
}

/// Tests every prime up to `limit`. Primes may be handled concurrently; the
/// report is always in ascending prime order.
pub fn sweep(
    curve_id: &str,
    curve: &Curve,
    point: (&Rational, &Rational),
    m: u32,
    limit: u64,
    mode: Mode,
    group_order: Option<u64>,
) -> Result<SweepReport> {
    if limit < 2 {
        return Err(Error::invalid("limit >= 2 required"));
    }
    let test = DivisibilityTest::new(curve, point, m)?;
    let primes = primes_up_to(limit);
    let run = |&p: &u64| test.run(p, mode);
    #[cfg(feature = "parallel")]
    let results: Vec<Result<RootReport>> = {
        use rayon::prelude::*;
        primes.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<RootReport>> = primes.iter().map(run).collect();

    let mut rows = Vec::with_capacity(primes.len());
    let (mut solvable, mut unsolvable) = (Vec::new(), Vec::new());
    for r in results {
        let r = r?;
        if r.exists {
            solvable.push(r.prime);
        } else {
            unsolvable.push(r.prime);
        }
        rows.push(SweepRow { prime: r.prime, mode, solvable: r.exists, certificate: r.certificate });
    }
    let total = solvable.len() + unsolvable.len();
    Ok(SweepReport {
        curve_id: curve_id.to_string(),
        m,
        mode,
        limit,
        density_fraction: format!("{}/{}", unsolvable.len(), total),
        density_unsolvable: unsolvable.len() as f64 / total as f64,
        threshold: group_order.map(|g| 1.0 / g as f64),
        solvable,
        unsolvable,
        rows,
    })
}
