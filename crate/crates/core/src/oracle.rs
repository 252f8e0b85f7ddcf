//! Brute-force reference implementations used to cross-check the main path.
//!
//! Nothing here calls into `cf`, `pell` or `family`. Square roots come from
//! `BigUint::sqrt` (or `u128::isqrt`) rather than our own Newton
//! iteration, and the continued fraction is driven by a different state:
//! the complete quotient is kept as `(p + q*sqrt(d)) / r` in lowest terms and
//! floored by comparing against `floor(sqrt(q^2 d))`.
//!
//! A `None` from [`brute_pell`] only means "nothing with `y <= y_max`".
//! It says nothing about solvability.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pell::{PellSign, PellSolution};

fn exact_sqrt(n: &BigUint) -> Option<BigUint> {
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

fn reject_square(d: &BigUint) -> Result<()> {
    if let Some(root) = exact_sqrt(d) {
        return Err(Error::PerfectSquare { d: d.clone(), root });
    }
    Ok(())
}

/// `(p + q*sqrt(d)) / r`, `r > 0`, `gcd(p, q, r) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Alpha {
    p: BigInt,
    q: BigInt,
    r: BigInt,
}

impl Alpha {
    fn sqrt_of() -> Self {
        Alpha {
            p: BigInt::zero(),
            q: BigInt::one(),
            r: BigInt::one(),
        }
    }

    fn normalized(mut p: BigInt, mut q: BigInt, mut r: BigInt) -> Self {
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        if !g.is_one() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        Alpha { p, q, r }
    }

    fn floor(&self, d: &BigUint) -> BigInt {
        // floor((p + q*sqrt(d)) / r). q*sqrt(d) is irrational, so with
        // s = floor(sqrt(q^2 d)) it lies strictly between s and s + 1.
        let s = BigInt::from((self.q.magnitude() * self.q.magnitude() * d).sqrt());
        let numerator = match self.q.sign() {
            Sign::Minus => &self.p - s - 1,
            _ => &self.p + s,
        };
        numerator.div_floor(&self.r)
    }

    /// `1 / (alpha - a)`.
    fn next(&self, a: &BigInt, d: &BigUint) -> Self {
        let p = &self.p - a * &self.r;
        let denom = &p * &p - &self.q * &self.q * BigInt::from(d.clone());
        Alpha::normalized(&self.r * p, -(&self.r * &self.q), denom)
    }
}

/// The first `n_terms` partial quotients `a_0, a_1, ...` of `sqrt(d)`.
pub fn brute_cf_prefix(d: &BigUint, n_terms: usize) -> Result<Vec<BigUint>> {
    reject_square(d)?;
    let mut alpha = Alpha::sqrt_of();
    let mut out = Vec::with_capacity(n_terms);
    for _ in 0..n_terms {
        let a = alpha.floor(d);
        alpha = alpha.next(&a, d);
        out.push(a.to_biguint().expect("partial quotients are nonnegative"));
    }
    Ok(out)
}

/// Expansion found by state repetition, if the period is at most `max_period`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleExpansion {
    /// Partial quotients before the repeating block.
    pub preperiod: Vec<BigUint>,
    pub period: Vec<BigUint>,
}

/// Expands `sqrt(d)` until a complete quotient repeats, giving up once more
/// than `max_period + 1` quotients have been produced.
pub fn brute_expansion(d: &BigUint, max_period: usize) -> Result<Option<OracleExpansion>> {
    reject_square(d)?;
    let mut seen: HashMap<Alpha, usize> = HashMap::new();
    let mut alpha = Alpha::sqrt_of();
    let mut quotients: Vec<BigUint> = Vec::new();
    while quotients.len() <= max_period + 1 {
        if let Some(&start) = seen.get(&alpha) {
            let period = quotients.split_off(start);
            return Ok(Some(OracleExpansion {
                preperiod: quotients,
                period,
            }));
        }
        seen.insert(alpha.clone(), quotients.len());
        let a = alpha.floor(d);
        alpha = alpha.next(&a, d);
        quotients.push(a.to_biguint().expect("partial quotients are nonnegative"));
    }
    Ok(None)
}

/// `(j, k)` when `sqrt(d) = [e; k, ..., k, 2e]` with period `2 <= j <= max_j`.
pub fn uniform_shape(d: u64, max_j: usize) -> Option<(usize, u64)> {
    let d = BigUint::from(d);
    let exp = brute_expansion(&d, max_j).ok()??;
    let [e] = exp.preperiod.as_slice() else {
        return None;
    };
    let j = exp.period.len();
    if j < 2 || exp.period[j - 1] != e * 2u32 {
        return None;
    }
    let k = &exp.period[0];
    exp.period[..j - 1]
        .iter()
        .all(|a| a == k)
        .then(|| (j, k.to_u64().expect("k < 2e fits")))
}

fn is_square_u64(n: u64) -> bool {
    let s = n.isqrt();
    s * s == n
}

/// Every non-square `d <= d_max` of the shape `[e; k x (j-1), 2e]` with period `j`.
pub fn pattern_scan(d_max: u64, j: usize, k: u64) -> Vec<u64> {
    (2..=d_max)
        .into_par_iter()
        .filter(|&d| !is_square_u64(d) && uniform_shape(d, j) == Some((j, k)))
        .collect()
}

/// All uniform shapes with period at most `max_j` among `d <= d_max`, keyed by `(j, k)`.
/// Each list is sorted.
pub fn pattern_index(d_max: u64, max_j: usize) -> BTreeMap<(usize, u64), Vec<u64>> {
    let hits: Vec<(u64, (usize, u64))> = (2..=d_max)
        .into_par_iter()
        .filter(|&d| !is_square_u64(d))
        .filter_map(|d| uniform_shape(d, max_j).map(|jk| (d, jk)))
        .collect();
    let mut index: BTreeMap<(usize, u64), Vec<u64>> = BTreeMap::new();
    for (d, jk) in hits {
        index.entry(jk).or_default().push(d);
    }
    index
}

const SMALL_SIEVE: u64 = 8 * 9 * 5 * 7 * 11;
const LARGE_SIEVE: u64 = SMALL_SIEVE * 13;

fn squares_mod(m: u64) -> Vec<bool> {
    let mut t = vec![false; m as usize];
    for r in 0..m {
        t[(r * r % m) as usize] = true;
    }
    t
}

fn squares_mod_sieve(m: u64) -> &'static [bool] {
    static SMALL: OnceLock<Vec<bool>> = OnceLock::new();
    static LARGE: OnceLock<Vec<bool>> = OnceLock::new();
    match m {
        SMALL_SIEVE => SMALL.get_or_init(|| squares_mod(SMALL_SIEVE)),
        LARGE_SIEVE => LARGE.get_or_init(|| squares_mod(LARGE_SIEVE)),
        _ => unreachable!("unsupported sieve modulus {m}"),
    }
}

/// Residues `y mod M` for which `d*y^2 + sign` can still be a square mod M.
/// Skipping the others cannot lose a solution.
struct Sieve {
    modulus: u64,
    residues: Vec<u64>,
}

impl Sieve {
    fn new(d: u64, sign: PellSign, y_max: u64) -> Self {
        // The large table costs ~360k steps to build; only worth it for long scans.
        let m = if y_max > 100 * LARGE_SIEVE {
            LARGE_SIEVE
        } else {
            SMALL_SIEVE
        };
        let squares = squares_mod_sieve(m);
        let dm = d % m;
        let residues = (0..m)
            .filter(|&y| {
                let v = (dm * (y * y % m)) % m;
                let v = match sign {
                    PellSign::Plus => (v + 1) % m,
                    PellSign::Minus => (v + m - 1) % m,
                };
                squares[v as usize]
            })
            .collect();
        Sieve {
            modulus: m,
            residues,
        }
    }

    /// Calls `visit(y)` for each surviving `1 <= y <= y_max` in increasing
    /// order, stopping early when `visit` returns `false`.
    fn scan(&self, y_max: u64, mut visit: impl FnMut(u64) -> bool) {
        let mut base = 0u64;
        while base <= y_max {
            for &r in &self.residues {
                let y = base + r;
                if y > y_max {
                    return;
                }
                if y != 0 && !visit(y) {
                    return;
                }
            }
            base += self.modulus;
        }
    }
}

const fn squares_table<const P: usize>() -> [bool; P] {
    let mut t = [false; P];
    let mut r = 0;
    while r < P {
        t[(r * r) % P] = true;
        r += 1;
    }
    t
}

const SQ13: [bool; 13] = squares_table::<13>();
const SQ17: [bool; 17] = squares_table::<17>();
const SQ19: [bool; 19] = squares_table::<19>();
const SQ23: [bool; 23] = squares_table::<23>();
const SQ29: [bool; 29] = squares_table::<29>();
const SQ31: [bool; 31] = squares_table::<31>();

fn square_root_u64(v: u64) -> Option<u64> {
    // Squares mod 64 are 0, 1, 4, 9, 16, 17, 25, 33, 36, 41, 49, 57.
    const SQUARES_MOD_64: u64 = 0x0202_0212_0203_0213;
    if (SQUARES_MOD_64 >> (v & 63)) & 1 == 0
        || !SQ13[(v % 13) as usize]
        || !SQ17[(v % 17) as usize]
        || !SQ19[(v % 19) as usize]
        || !SQ23[(v % 23) as usize]
        || !SQ29[(v % 29) as usize]
        || !SQ31[(v % 31) as usize]
    {
        return None;
    }
    let s = v.isqrt();
    (s * s == v).then_some(s)
}

fn square_root_u128(v: u128) -> Option<u128> {
    if let Ok(small) = u64::try_from(v) {
        return square_root_u64(small).map(u128::from);
    }
    let s = v.isqrt();
    (s * s == v).then_some(s)
}

fn offset_u128(v: u128, sign: PellSign) -> Option<u128> {
    match sign {
        PellSign::Plus => Some(v + 1),
        PellSign::Minus => v.checked_sub(1),
    }
}

/// Smallest `y` in `1..=y_max` with `d*y^2 + sign` a perfect square.
pub fn brute_pell(d: &BigUint, sign: PellSign, y_max: u64) -> Result<Option<PellSolution>> {
    reject_square(d)?;
    let fits = d.to_u64().filter(|&dd| {
        (dd as u128)
            .checked_mul(y_max as u128 * y_max as u128)
            .is_some_and(|v| v < u128::MAX - 1)
    });
    let found = match fits {
        Some(dd) => {
            let mut hit = None;
            Sieve::new(dd, sign, y_max).scan(y_max, |y| {
                let v = dd as u128 * y as u128 * y as u128;
                match offset_u128(v, sign).and_then(square_root_u128) {
                    Some(x) => {
                        hit = Some((BigUint::from(x), BigUint::from(y)));
                        false
                    }
                    None => true,
                }
            });
            hit
        }
        None => (1..=y_max).find_map(|y| {
            let y = BigUint::from(y);
            let v = d * &y * &y;
            let v = match sign {
                PellSign::Plus => v + 1u32,
                PellSign::Minus => v - 1u32,
            };
            exact_sqrt(&v).map(|x| (x, y))
        }),
    };
    Ok(found.map(|(x, y)| PellSolution {
        x,
        y,
        sign,
        d: d.clone(),
    }))
}

/// Every positive solution of `x^2 - d*y^2 = +-1` with `x <= x_max`, by an
/// exhaustive scan over `y`. Sorted by `x`.
pub fn brute_solutions(d: u64, x_max: u64) -> Result<Vec<PellSolution>> {
    let big_d = BigUint::from(d);
    reject_square(&big_d)?;
    // x^2 = d*y^2 +- 1 <= x_max^2 bounds y.
    let x_max = x_max as u128;
    let y_max = ((x_max * x_max + 1) / d as u128).isqrt() as u64;
    let mut out = Vec::new();
    for sign in [PellSign::Minus, PellSign::Plus] {
        Sieve::new(d, sign, y_max).scan(y_max, |y| {
            let v = d as u128 * y as u128 * y as u128;
            if let Some(x) = offset_u128(v, sign).and_then(square_root_u128) {
                if x <= x_max && x > 0 {
                    out.push(PellSolution {
                        x: BigUint::from(x),
                        y: BigUint::from(y),
                        sign,
                        d: big_d.clone(),
                    });
                }
            }
            true
        });
    }
    out.sort_by(|a, b| a.x.cmp(&b.x));
    Ok(out)
}
