//! Verification sweeps comparing the closed forms and the generic algorithm
//! against the brute-force oracles.
//!
//! Every sweep reports the first counterexample in increasing order of its
//! natural key (`d`, or `(j, k, ell)`), independent of the thread count.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::cf::expand_sqrt;
use crate::family::{enumerate_family_up_to, make_entry, FamilyEntry};
use crate::oracle::{brute_pell, pattern_index};
use crate::pell::{is_solution, power_solution, solve_fundamental, PellSign, PellSolution};

/// Deliberate corruption of the checked values, to show a sweep can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Flip the sign claimed for each family entry.
    FlipSign,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub name: &'static str,
    pub checked: usize,
    pub failure: Option<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {} ({} checked)", self.name, self.checked),
            Some(why) => write!(f, "FAIL {}: {}", self.name, why),
        }
    }
}

fn report(
    name: &'static str,
    checked: usize,
    mut failures: Vec<(Vec<u64>, String)>,
) -> SweepReport {
    failures.sort();
    SweepReport {
        name,
        checked,
        failure: failures.into_iter().next().map(|(_, why)| why),
    }
}

fn small(v: &BigUint) -> u64 {
    v.to_u64().unwrap_or(u64::MAX)
}

fn is_nonsquare(d: u64) -> bool {
    let s = d.isqrt();
    s * s != d
}

/// Family entries for `2 <= j <= j_max`, `1 <= k <= k_max`, with `d <= d_max`
/// plus the first entry beyond `d_max` for each `(j, k)`.
pub fn family_entries(j_max: usize, k_max: u64, d_max: u64) -> Vec<FamilyEntry> {
    let bound = BigUint::from(d_max);
    let grid: Vec<(usize, u64)> = (2..=j_max)
        .flat_map(|j| (1..=k_max).map(move |k| (j, k)))
        .collect();
    grid.into_par_iter()
        .flat_map_iter(|(j, k)| {
            let k = BigUint::from(k);
            let fam = enumerate_family_up_to(j, &k, &bound).expect("j >= 2 and k >= 1");
            let mut entries = fam.entries;
            if fam.reason.is_none() {
                let next_ell = entries
                    .last()
                    .map(|e| &e.params.ell + 1u32)
                    .unwrap_or_else(|| {
                        BigUint::from(crate::family::case_of(j, &k).unwrap().min_ell())
                    });
                entries.push(make_entry(j, &k, &next_ell).expect("ell is admissible"));
            }
            entries
        })
        .collect()
}

/// Each family entry must expand to exactly `[e; k x (j-1), 2e]` and its
/// `(x, y)` must be the fundamental solution with sign `(-1)^j`.
pub fn soundness(j_max: usize, k_max: u64, d_max: u64, fault: Option<Fault>) -> SweepReport {
    let entries = family_entries(j_max, k_max, d_max);
    let failures: Vec<_> = entries
        .par_iter()
        .filter_map(|entry| {
            let j = entry.params.j;
            let key = vec![j as u64, small(&entry.params.k), small(&entry.params.ell)];
            let sign = match fault {
                Some(Fault::FlipSign) => entry.sign.negate(),
                None => entry.sign,
            };
            let tag = format!(
                "j={} k={} ell={} d={}",
                j, entry.params.k, entry.params.ell, entry.d
            );
            let cf = match expand_sqrt(&entry.d) {
                Ok(cf) => cf,
                Err(err) => return Some((key, format!("{tag}: {err}"))),
            };
            let mut expected = vec![entry.params.k.clone(); j - 1];
            expected.push(&entry.e << 1u32);
            if cf.e != entry.e || cf.period != expected {
                return Some((key, format!("{tag}: expansion is {cf}")));
            }
            if sign != PellSign::alternating(j as u64)
                || is_solution(&entry.d, &entry.x, &entry.y) != Some(sign)
            {
                return Some((
                    key,
                    format!(
                        "{tag}: x={} y={} do not give x^2 - d*y^2 = {sign}",
                        entry.x, entry.y
                    ),
                ));
            }
            match solve_fundamental(&entry.d) {
                Ok(f) if f.x == entry.x && f.y == entry.y && f.sign == sign => None,
                Ok(f) => Some((
                    key,
                    format!(
                        "{tag}: closed form ({}, {}) but generic ({}, {})",
                        entry.x, entry.y, f.x, f.y
                    ),
                )),
                Err(err) => Some((key, format!("{tag}: {err}"))),
            }
        })
        .collect();
    report("soundness", entries.len(), failures)
}

/// The oracle's uniform-shape scan over `d <= d_max` must equal the
/// closed-form enumeration, for every `2 <= j <= j_max`, `1 <= k <= k_max`.
pub fn completeness(d_max: u64, j_max: usize, k_max: u64) -> SweepReport {
    let index = pattern_index(d_max, j_max);
    let bound = BigUint::from(d_max);
    let mut failures = Vec::new();
    let mut checked = 0;
    for j in 2..=j_max {
        for k in 1..=k_max {
            checked += 1;
            let scanned = index.get(&(j, k)).cloned().unwrap_or_default();
            let fam =
                enumerate_family_up_to(j, &BigUint::from(k), &bound).expect("j >= 2 and k >= 1");
            let closed: Vec<u64> = fam.entries.iter().map(|e| small(&e.d)).collect();
            if scanned != closed {
                let missing: Vec<_> = scanned.iter().filter(|d| !closed.contains(d)).collect();
                let extra: Vec<_> = closed.iter().filter(|d| !scanned.contains(d)).collect();
                failures.push((
                    vec![j as u64, k],
                    format!("j={j} k={k}: scan-only {missing:?}, formula-only {extra:?}"),
                ));
            }
        }
    }
    report("completeness", checked, failures)
}

/// What `brute_pell(d, sign, y_max)` must return given the fundamental solution.
pub fn expected_brute(fund: &PellSolution, sign: PellSign, y_max: u64) -> Option<PellSolution> {
    let smallest = match (fund.sign, sign) {
        (a, b) if a == b => fund.clone(),
        (PellSign::Minus, PellSign::Plus) => power_solution(fund, 2),
        (PellSign::Plus, PellSign::Minus) => return None,
        _ => unreachable!(),
    };
    (smallest.y <= BigUint::from(y_max)).then_some(smallest)
}

/// `solve_fundamental` against `brute_pell` for every non-square `d <= d_max`,
/// both signs, with the scan cut off at `y_max`.
pub fn pell_agreement(d_max: u64, y_max: u64) -> SweepReport {
    let ds: Vec<u64> = (2..=d_max).filter(|&d| is_nonsquare(d)).collect();
    let failures: Vec<_> = ds
        .par_iter()
        .filter_map(|&d| {
            let big = BigUint::from(d);
            let fund = match solve_fundamental(&big) {
                Ok(f) => f,
                Err(err) => return Some((vec![d], format!("d={d}: {err}"))),
            };
            for sign in [PellSign::Minus, PellSign::Plus] {
                let want = expected_brute(&fund, sign, y_max);
                let got = brute_pell(&big, sign, y_max).expect("d is not a square");
                if want != got {
                    let show = |s: &Option<PellSolution>| match s {
                        Some(s) => format!("({}, {})", s.x, s.y),
                        None => "none".to_string(),
                    };
                    return Some((
                        vec![d],
                        format!(
                            "d={d} sign={sign}: expected {} but brute force found {}",
                            show(&want),
                            show(&got)
                        ),
                    ));
                }
            }
            None
        })
        .collect();
    report("pell-agreement", ds.len(), failures)
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub d_max: u64,
    pub j_max: usize,
    pub k_max: u64,
    pub y_max: u64,
    pub fault: Option<Fault>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            d_max: 10_000,
            j_max: 6,
            k_max: 6,
            y_max: 100_000,
            fault: None,
        }
    }
}

/// Runs soundness, completeness and pell-agreement on the current rayon pool.
pub fn verify(opts: &VerifyOptions) -> Vec<SweepReport> {
    vec![
        soundness(opts.j_max, opts.k_max, opts.d_max, opts.fault),
        completeness(opts.d_max, opts.j_max, opts.k_max),
        pell_agreement(opts.d_max, opts.y_max),
    ]
}
