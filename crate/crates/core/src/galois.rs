//! Finite subgroups of `GL_2(Z/nZ)`, cocycles with values in `(Z/n)^2`,
//! local conditions and brute-force `H^1` / `H^1_loc`.
//!
//! A cocycle satisfies `Z(st) = Z(s) + s Z(t)`. It satisfies the local
//! conditions when every `Z(s)` lies in the image of `s - 1`; `H^1_loc` is
//! the group of such cocycles modulo coboundaries `s -> (s - 1) A`.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::arith::mat2::Mat2Mod;
use crate::error::{Error, Result};
use crate::example;

pub const DEFAULT_GROUP_CAP: u64 = 1_000_000;
/// Default limits for cohomology enumeration.
pub const DEFAULT_H1_MAX_ORDER: usize = 64;
pub const DEFAULT_H1_MAX_MODULUS: u64 = 8;
pub const DEFAULT_H1_MAX_CANDIDATES: u64 = 1 << 24;

/// A finite matrix group with a breadth-first spanning tree over its
/// generators: every non-identity element is `parent * generator`.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixGroup {
    modulus: u64,
    generators: Vec<Mat2Mod>,
    elements: Vec<Mat2Mod>,
    #[serde(skip)]
    index: HashMap<Mat2Mod, usize>,
    #[serde(skip)]
    parent: Vec<Option<(usize, usize)>>,
}

impl PartialEq for MatrixGroup {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.element_set() == other.element_set()
    }
}

pub fn group_closure(gens: &[Mat2Mod], n: u64, cap: u64) -> Result<MatrixGroup> {
    for g in gens {
        if g.modulus != n {
            return Err(Error::ModulusMismatch(n, g.modulus));
        }
        if !g.is_invertible() {
            return Err(Error::SingularElement);
        }
    }
    let id = Mat2Mod::identity(n);
    let mut elements = vec![id];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut parent = vec![None];
    let mut head = 0;
    while head < elements.len() {
        let e = elements[head];
        for (gi, g) in gens.iter().enumerate() {
            let next = e.mul_unchecked(g);
            if !index.contains_key(&next) {
                if elements.len() as u64 >= cap {
                    return Err(Error::CapExceeded { what: "group order", cap });
                }
                index.insert(next, elements.len());
                elements.push(next);
                parent.push(Some((head, gi)));
            }
        }
        head += 1;
    }
    Ok(MatrixGroup { modulus: n, generators: gens.to_vec(), elements, index, parent })
}

impl MatrixGroup {
    /// Builds the group on a set that is already closed, choosing
    /// generators greedily. Errors if the set is not a group.
    pub fn from_elements(n: u64, set: &[Mat2Mod], cap: u64) -> Result<MatrixGroup> {
        let mut gens: Vec<Mat2Mod> = Vec::new();
        let mut current = group_closure(&[], n, cap)?;
        let mut sorted = set.to_vec();
        sorted.sort();
        for &m in &sorted {
            if !current.contains(&m) {
                gens.push(m);
                current = group_closure(&gens, n, cap)?;
            }
        }
        if current.order() != sorted.len() || !sorted.iter().all(|m| current.contains(m)) {
            return Err(Error::invalid("element set is not closed under multiplication"));
        }
        Ok(current)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat2Mod] {
        &self.elements
    }

    pub fn generators(&self) -> &[Mat2Mod] {
        &self.generators
    }

    pub fn element_set(&self) -> HashSet<Mat2Mod> {
        self.elements.iter().copied().collect()
    }

    pub fn contains(&self, m: &Mat2Mod) -> bool {
        self.index.contains_key(m)
    }

    pub fn index_of(&self, m: &Mat2Mod) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|a| {
            self.generators.iter().all(|b| a.mul_unchecked(b) == b.mul_unchecked(a))
        })
    }

    /// Abelian with every non-identity element of the same prime order.
    pub fn is_elementary_abelian(&self) -> bool {
        if !self.is_abelian() {
            return false;
        }
        let orders: HashSet<u64> =
            self.elements.iter().filter(|e| !e.is_identity()).map(|e| e.order().expect("unit")).collect();
        orders.len() <= 1 && orders.iter().all(|&o| crate::primes::is_prime(o))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order() as u64;
        self.elements.iter().any(|e| e.order().expect("unit") == n)
    }

    /// `log_2 |G|` for an elementary abelian 2-group.
    pub fn rank_if_elementary_2(&self) -> Option<u32> {
        let n = self.order();
        (self.is_elementary_abelian() && n.is_power_of_two() && n > 1).then(|| n.trailing_zeros())
    }

    /// Elements congruent to the identity mod `k`.
    pub fn kernel_of_reduction(&self, k: u64, cap: u64) -> Result<MatrixGroup> {
        let id = Mat2Mod::identity(k);
        let mut kernel = Vec::new();
        for e in &self.elements {
            if e.reduce(k)? == id {
                kernel.push(*e);
            }
        }
        MatrixGroup::from_elements(self.modulus, &kernel, cap)
    }
}

/// `Id + 2 [[x + w, y], [x + y + z, x + y]]` mod 4.
pub fn sigma_family(x: u64, y: u64, z: u64, w: u64) -> Mat2Mod {
    let e = |v: u64| (2 * (v % 2)) as i64;
    Mat2Mod::new(4, [1 + e(x + w), e(y), e(x + y + z), 1 + e(x + y)]).expect("modulus 4")
}

/// Inverse of [`sigma_family`] on its image, parameters reduced mod 2.
pub fn sigma_params(m: &Mat2Mod) -> Option<[u64; 4]> {
    if m.modulus != 4 {
        return None;
    }
    let [a, b, c, d] = m.entries;
    if a % 2 == 0 || d % 2 == 0 || b % 2 == 1 || c % 2 == 1 {
        return None;
    }
    let y = (b / 2) % 2;
    let x = ((d - 1) / 2 + 2 - y) % 2;
    let w = ((a - 1) / 2 + 2 - x) % 2;
    let z = ((c / 2) + 4 - x - y) % 2;
    Some([x, y, z, w])
}

/// The example's Galois image from its four listed generators.
pub fn example_group() -> MatrixGroup {
    let gens: Vec<Mat2Mod> = example::GENERATORS
        .iter()
        .map(|&e| Mat2Mod::new(4, e).expect("modulus 4"))
        .collect();
    group_closure(&gens, 4, DEFAULT_GROUP_CAP).expect("small group")
}

/// The same group from the sixteen parameter values of the family.
pub fn example_group_from_family() -> MatrixGroup {
    let mut set = Vec::new();
    for bits in 0..16u64 {
        set.push(sigma_family(bits & 1, bits >> 1 & 1, bits >> 2 & 1, bits >> 3 & 1));
    }
    MatrixGroup::from_elements(4, &set, DEFAULT_GROUP_CAP).expect("family is a group")
}

/// `[[-1, 1], [0, -1]]` mod `n`.
pub fn eta(n: u64) -> Mat2Mod {
    Mat2Mod::new(n, [-1, 1, 0, -1]).expect("positive modulus")
}

/// `[[1, 1], [0, 1]]` mod `n`.
pub fn omega(n: u64) -> Mat2Mod {
    Mat2Mod::new(n, [1, 1, 0, 1]).expect("positive modulus")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Thm22Report {
    pub p: u64,
    pub r: u32,
    pub thm22_core: bool,
    pub checked: u64,
    pub witness: Option<Mat2Mod>,
}

fn prime_power(p: u64, r: u32, cap: u64) -> Result<u64> {
    if !crate::primes::is_prime(p) || r == 0 {
        return Err(Error::invalid("p prime and r >= 1 required"));
    }
    match p.checked_pow(r) {
        Some(n) if n <= cap => Ok(n),
        _ => Err(Error::CapExceeded { what: "p^r", cap }),
    }
}

/// Exhaustive check mod `p^r`:
/// (a) `[[e, a], [0, e + kp]]` with `e = ±1` squares to `Id` only if
/// `a = 0` and `kp = 0`; (b) `[[1, a], [0, 1 + kp]]` cubes to `Id` only if
/// it is `Id`. Returns the first counterexample as witness.
pub fn verify_thm22_core(p: u64, r: u32, cap: u64) -> Result<Thm22Report> {
    let n = prime_power(p, r, cap)?;
    let mut checked = 0u64;
    let report = |witness: Option<Mat2Mod>, checked| Thm22Report {
        p,
        r,
        thm22_core: witness.is_none(),
        checked,
        witness,
    };
    let id = Mat2Mod::identity(n);
    for kp in (0..n).step_by(p as usize) {
        for a in 0..n {
            for e in [1i64, -1] {
                let s = Mat2Mod::new(n, [e, a as i64, 0, e + kp as i64])?;
                checked += 1;
                if s.pow(2) == id && !(a == 0 && kp == 0) {
                    return Ok(report(Some(s), checked));
                }
            }
            let s = Mat2Mod::new(n, [1, a as i64, 0, 1 + kp as i64])?;
            checked += 1;
            if s.pow(3) == id && s != id {
                return Ok(report(Some(s), checked));
            }
        }
    }
    Ok(report(None, checked))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StabilizerKind {
    /// `s e1 = ±e1`, `det s = 1`.
    PlusMinusP1Det1,
    /// `s e1 = e1`, `det s = 1`.
    FixP1Det1,
    /// `s e1 = ±e1`, `det s = 1 mod p`.
    PlusMinusP1Det1ModP,
}

impl std::str::FromStr for StabilizerKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus-minus-P1-det1" => Ok(StabilizerKind::PlusMinusP1Det1),
            "fix-P1-det1" => Ok(StabilizerKind::FixP1Det1),
            "plus-minus-P1-det1-mod-p" => Ok(StabilizerKind::PlusMinusP1Det1ModP),
            _ => Err(Error::Parse(format!("unknown stabilizer kind {s:?}"))),
        }
    }
}

/// Enumerates the stabilizer subgroup of `GL_2(Z/p^r)` of the given kind.
/// Matrices with `s e1 = ±e1` are exactly `[[±1, b], [0, d]]`.
pub fn stabilizer_enumeration(p: u64, r: u32, kind: StabilizerKind, cap: u64) -> Result<MatrixGroup> {
    let n = prime_power(p, r, cap)?;
    if n.saturating_mul(n).saturating_mul(2) > cap.saturating_mul(cap) {
        return Err(Error::CapExceeded { what: "stabilizer scan", cap });
    }
    let signs: &[i64] = match kind {
        StabilizerKind::FixP1Det1 => &[1],
        _ => &[1, -1],
    };
    let mut set = Vec::new();
    for &e in signs {
        for b in 0..n {
            for d in 0..n {
                let s = Mat2Mod::new(n, [e, b as i64, 0, d as i64])?;
                let det = s.det();
                let ok = match kind {
                    StabilizerKind::PlusMinusP1Det1ModP => det % p == 1 % p,
                    _ => det == 1 % n,
                };
                if ok {
                    set.push(s);
                }
            }
        }
    }
    MatrixGroup::from_elements(n, &set, cap)
}

/// A cocycle `G -> (Z/n)^2`, values indexed like the group's elements.
#[derive(Clone, Debug)]
pub struct Cocycle {
    group: MatrixGroup,
    values: Vec<[u64; 2]>,
}

fn add_vec(u: [u64; 2], v: [u64; 2], n: u64) -> [u64; 2] {
    [(u[0] + v[0]) % n, (u[1] + v[1]) % n]
}

/// First pair `(s, t)` violating `Z(st) = Z(s) + s Z(t)`.
fn cocycle_violation(group: &MatrixGroup, values: &[[u64; 2]]) -> Option<(usize, usize)> {
    let n = group.modulus;
    for (i, s) in group.elements.iter().enumerate() {
        for (j, t) in group.elements.iter().enumerate() {
            let st = group.index[&s.mul_unchecked(t)];
            if values[st] != add_vec(values[i], s.apply(values[j]), n) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Extends generator values along the spanning tree.
fn extend(group: &MatrixGroup, gen_values: &[[u64; 2]]) -> Vec<[u64; 2]> {
    let n = group.modulus;
    let mut values = vec![[0u64; 2]; group.order()];
    for i in 1..group.order() {
        let (pi, gi) = group.parent[i].expect("non-root has a parent");
        values[i] = add_vec(values[pi], group.elements[pi].apply(gen_values[gi]), n);
    }
    values
}

impl Cocycle {
    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    pub fn value(&self, s: &Mat2Mod) -> Option<[u64; 2]> {
        self.group.index_of(s).map(|i| self.values[i])
    }

    pub fn values(&self) -> &[[u64; 2]] {
        &self.values
    }

    /// A cocycle given on every element; the identity is checked.
    pub fn from_fn(group: &MatrixGroup, f: impl Fn(&Mat2Mod) -> [u64; 2]) -> Result<Cocycle> {
        let n = group.modulus;
        let values: Vec<[u64; 2]> =
            group.elements.iter().map(f).map(|v| [v[0] % n, v[1] % n]).collect();
        if let Some((i, j)) = cocycle_violation(group, &values) {
            return Err(Error::NotACocycle(format!(
                "identity fails at ({}, {})",
                group.elements[i], group.elements[j]
            )));
        }
        Ok(Cocycle { group: group.clone(), values })
    }

    /// The coboundary `s -> (s - 1) A`.
    pub fn coboundary(group: &MatrixGroup, a: [u64; 2]) -> Cocycle {
        let values = group.elements.iter().map(|s| s.minus_identity().apply(a)).collect();
        Cocycle { group: group.clone(), values }
    }
}

/// Extends values given on the group's generators to a cocycle.
pub fn make_cocycle(group: &MatrixGroup, generator_values: &[[u64; 2]]) -> Result<Cocycle> {
    if generator_values.len() != group.generators.len() {
        return Err(Error::invalid(format!(
            "expected {} generator values, got {}",
            group.generators.len(),
            generator_values.len()
        )));
    }
    let n = group.modulus;
    let gv: Vec<[u64; 2]> = generator_values.iter().map(|v| [v[0] % n, v[1] % n]).collect();
    let values = extend(group, &gv);
    // Generators that repeat or reach an element by another path must agree.
    for (gi, g) in group.generators.iter().enumerate() {
        if values[group.index[g]] != gv[gi] {
            return Err(Error::NotACocycle(format!("inconsistent value at generator {g}")));
        }
    }
    if let Some((i, j)) = cocycle_violation(group, &values) {
        return Err(Error::NotACocycle(format!(
            "identity fails at ({}, {})",
            group.elements[i], group.elements[j]
        )));
    }
    Ok(Cocycle { group: group.clone(), values })
}

/// The example cocycle `Z(s(x, y, z, w)) = (2w, 0)`.
pub fn example_cocycle(group: &MatrixGroup) -> Result<Cocycle> {
    Cocycle::from_fn(group, |s| {
        let [_, _, _, w] = sigma_params(s).expect("element of the family");
        [2 * w, 0]
    })
}

/// Image of `s - 1` on `(Z/n)^2`.
fn image_of_minus_one(s: &Mat2Mod) -> HashSet<[u64; 2]> {
    let n = s.modulus;
    let t = s.minus_identity();
    (0..n).flat_map(|a| (0..n).map(move |b| [a, b])).map(|v| t.apply(v)).collect()
}

/// Elements `s` for which no `A` satisfies `Z(s) = (s - 1) A`.
pub fn local_condition_check(z: &Cocycle) -> Vec<Mat2Mod> {
    z.group
        .elements
        .iter()
        .zip(&z.values)
        .filter(|(s, v)| !image_of_minus_one(s).contains(*v))
        .map(|(s, _)| *s)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CohomologyReport {
    pub group_order: usize,
    pub modulus: u64,
    pub cocycle_count: u64,
    pub coboundary_count: u64,
    pub local_cocycle_count: u64,
    pub h1_order: u64,
    pub h1loc_order: u64,
    /// Elementary divisors (prime powers, ascending).
    pub h1: Vec<u64>,
    pub h1loc: Vec<u64>,
    pub failing_set: Option<Vec<Mat2Mod>>,
}

fn mul_vals(values: &[[u64; 2]], d: u64, n: u64) -> Vec<[u64; 2]> {
    values.iter().map(|v| [v[0] * d % n, v[1] * d % n]).collect()
}

/// Elementary divisors of a quotient `Z / B` of `(Z/n)`-modules from
/// counts of `|{z : d z in B}| / |B|` at prime powers `d | n`.
fn elementary_divisors(z: &[Vec<[u64; 2]>], b: &HashSet<Vec<[u64; 2]>>, n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while rest > 1 {
        if rest % p != 0 {
            p += 1;
            continue;
        }
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        // log_p |Q[p^k]|
        let mut logs = vec![0u32];
        for k in 1..=e {
            let d = p.pow(k);
            let count = z.iter().filter(|v| b.contains(&mul_vals(v, d, n))).count() as u64;
            let size = count / b.len() as u64;
            logs.push((size as f64).log(p as f64).round() as u32);
        }
        // number of cyclic factors of order >= p^k
        let at_least: Vec<u32> = (1..=e as usize).map(|k| logs[k] - logs[k - 1]).collect();
        for k in 1..=e as usize {
            let next = at_least.get(k).copied().unwrap_or(0);
            for _ in 0..(at_least[k - 1] - next) {
                out.push(p.pow(k as u32));
            }
        }
        p += 1;
    }
    out.sort_unstable();
    out
}

/// Enumerates all cocycles by their generator values.
pub fn h1_and_h1loc(group: &MatrixGroup, max_order: usize, max_modulus: u64) -> Result<CohomologyReport> {
    let n = group.modulus;
    if group.order() > max_order {
        return Err(Error::CapExceeded { what: "group order for H^1", cap: max_order as u64 });
    }
    if n > max_modulus {
        return Err(Error::CapExceeded { what: "modulus for H^1", cap: max_modulus });
    }
    let per_gen = n * n;
    let gens = group.generators.len() as u32;
    let candidates = per_gen
        .checked_pow(gens)
        .filter(|&c| c <= DEFAULT_H1_MAX_CANDIDATES)
        .ok_or(Error::CapExceeded { what: "cocycle candidates", cap: DEFAULT_H1_MAX_CANDIDATES })?;

    let decode = |mut idx: u64| -> Vec<[u64; 2]> {
        (0..gens)
            .map(|_| {
                let v = idx % per_gen;
                idx /= per_gen;
                [v / n, v % n]
            })
            .collect()
    };
    let check = |idx: u64| -> Option<Vec<[u64; 2]>> {
        let gv = decode(idx);
        let values = extend(group, &gv);
        let consistent = group
            .generators
            .iter()
            .enumerate()
            .all(|(gi, g)| values[group.index[g]] == gv[gi]);
        (consistent && cocycle_violation(group, &values).is_none()).then_some(values)
    };
    #[cfg(feature = "parallel")]
    let cocycles: Vec<Vec<[u64; 2]>> = {
        use rayon::prelude::*;
        (0..candidates).into_par_iter().filter_map(check).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let cocycles: Vec<Vec<[u64; 2]>> = (0..candidates).filter_map(check).collect();

    let coboundaries: HashSet<Vec<[u64; 2]>> = (0..n)
        .flat_map(|a| (0..n).map(move |b| [a, b]))
        .map(|a| Cocycle::coboundary(group, a).values)
        .collect();
    let images: Vec<HashSet<[u64; 2]>> = group.elements.iter().map(image_of_minus_one).collect();
    let local: Vec<Vec<[u64; 2]>> = cocycles
        .iter()
        .filter(|v| v.iter().zip(&images).all(|(x, im)| im.contains(x)))
        .cloned()
        .collect();
    let nb = coboundaries.len() as u64;
    Ok(CohomologyReport {
        group_order: group.order(),
        modulus: n,
        cocycle_count: cocycles.len() as u64,
        coboundary_count: nb,
        local_cocycle_count: local.len() as u64,
        h1_order: cocycles.len() as u64 / nb,
        h1loc_order: local.len() as u64 / nb,
        h1: elementary_divisors(&cocycles, &coboundaries, n),
        h1loc: elementary_divisors(&local, &coboundaries, n),
        failing_set: None,
    })
}

pub fn density_threshold(group: &MatrixGroup) -> f64 {
    1.0 / group.order() as f64
}

/// All invertible matrices mod `n`.
pub fn general_linear(n: u64) -> Vec<Mat2Mod> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let m = Mat2Mod { modulus: n, entries: [a, b, c, d] };
                    if m.is_invertible() {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// Every cyclic subgroup of `GL_2(Z/n)`, one per distinct element set.
pub fn cyclic_subgroups(n: u64) -> Result<Vec<MatrixGroup>> {
    let mut seen: BTreeMap<Vec<Mat2Mod>, MatrixGroup> = BTreeMap::new();
    for g in general_linear(n) {
        let group = group_closure(&[g], n, DEFAULT_GROUP_CAP)?;
        let mut key = group.elements.clone();
        key.sort();
        seen.entry(key).or_insert(group);
    }
    Ok(seen.into_values().collect())
}
