//! Square roots of the uniform shape `sqrt(d) = [e; k, ..., k, 2e]`.
//!
//! With period `j = m + 1 >= 2`, such `d` exist exactly when `k` is even or
//! `m mod 3 != 2`. All of them are then given by one of three closed forms,
//! chosen by the parities of `k` and `f_m`:
//!
//! | case | condition              | `e`                      | `d`                         | `ell` |
//! |------|------------------------|--------------------------|-----------------------------|-------|
//! | 1    | `k` even, `f_m` odd    | `k/2 + ell*f_m`          | `e^2 + 2*ell*f_{m-1} + 1`   | >= 1  |
//! | 2    | `k` even, `f_m` even   | `k/2 + ell*f_m/2`        | `e^2 + ell*f_{m-1} + 1`     | >= 1  |
//! | 3    | `k` odd                | `(k+f_m)/2 + ell*f_m`    | `e^2 + (2ell+1)*f_{m-1} + 1`| >= 0  |
//!
//! and the smallest solution of `X^2 - d*Y^2 = (-1)^j` is
//! `(f_m*e + f_{m-1}, f_m)`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{CheckedSub, One, ToPrimitive, Zero};

use crate::cf::expand_sqrt;
use crate::error::{Error, Result};
use crate::kfib::{f_seq, parity_of_f, Parity};
use crate::pell::{is_solution, PellSign};

/// Why no `d` has the requested shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoFamilyReason {
    /// `k` is odd and `3 | j`: then `f_m` is even while `f_{m-2}` is odd, and
    /// the defining congruence for `e` has no solution.
    KOddAndThreeDividesJ,
}

impl NoFamilyReason {
    pub fn code(self) -> &'static str {
        match self {
            NoFamilyReason::KOddAndThreeDividesJ => "k-odd-3-divides-j",
        }
    }
}

impl fmt::Display for NoFamilyReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoFamilyReason::KOddAndThreeDividesJ => f.write_str("k odd and 3 | j"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyCase {
    Case1,
    Case2,
    Case3,
}

impl FamilyCase {
    /// Smallest admissible `ell`; smaller values would give `2e = k`.
    pub fn min_ell(self) -> u32 {
        match self {
            FamilyCase::Case1 | FamilyCase::Case2 => 1,
            FamilyCase::Case3 => 0,
        }
    }
}

impl fmt::Display for FamilyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyCase::Case1 => "Case1",
            FamilyCase::Case2 => "Case2",
            FamilyCase::Case3 => "Case3",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FamilyParams {
    pub j: usize,
    pub k: BigUint,
    pub m: usize,
    pub ell: BigUint,
}

/// One `d` of the family together with its smallest Pell solution.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FamilyEntry {
    pub params: FamilyParams,
    pub case: FamilyCase,
    pub e: BigUint,
    pub d: BigUint,
    pub x: BigUint,
    pub y: BigUint,
    pub sign: PellSign,
    pub f_m: BigUint,
    pub f_m_minus_1: BigUint,
}

fn check_jk(j: usize, k: &BigUint) -> Result<()> {
    if j < 2 {
        return Err(Error::Domain(format!(
            "period j must be at least 2, got {j}"
        )));
    }
    if k.is_zero() {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    Ok(())
}

fn non_existence(j: usize, k: &BigUint) -> Option<NoFamilyReason> {
    let m = j - 1;
    (k.is_odd() && m % 3 == 2).then_some(NoFamilyReason::KOddAndThreeDividesJ)
}

/// Whether some `d` has `sqrt(d) = [e; k, ..., k, 2e]` with period `j`.
pub fn exists_family(j: usize, k: &BigUint) -> Result<bool> {
    check_jk(j, k)?;
    Ok(non_existence(j, k).is_none())
}

/// Which closed form describes the family for `(j, k)`.
pub fn case_of(j: usize, k: &BigUint) -> Result<FamilyCase> {
    check_jk(j, k)?;
    if let Some(reason) = non_existence(j, k) {
        return Err(Error::NoFamily {
            j,
            k: k.clone(),
            reason,
        });
    }
    if k.is_odd() {
        return Ok(FamilyCase::Case3);
    }
    Ok(match parity_of_f(k, (j - 1) as i64)? {
        Parity::Odd => FamilyCase::Case1,
        Parity::Even => FamilyCase::Case2,
    })
}

/// Precomputed `f_m, f_{m-1}, f_{m-2}` for one `(j, k)`.
struct Generator {
    j: usize,
    k: BigUint,
    case: FamilyCase,
    f_m: BigUint,
    f_m1: BigUint,
    f_m2: BigUint,
}

impl Generator {
    fn new(j: usize, k: &BigUint) -> Result<Self> {
        let case = case_of(j, k)?;
        let m = (j - 1) as i64;
        let seq = f_seq(k, m)?;
        Ok(Generator {
            j,
            k: k.clone(),
            case,
            f_m: seq.get(m).clone(),
            f_m1: seq.get(m - 1).clone(),
            f_m2: seq.get(m - 2).clone(),
        })
    }

    fn entry(&self, ell: &BigUint) -> Result<FamilyEntry> {
        let min = self.case.min_ell();
        if *ell < BigUint::from(min) {
            return Err(Error::EllOutOfRange {
                ell: ell.clone(),
                min,
            });
        }
        let (k, f_m, f_m1) = (&self.k, &self.f_m, &self.f_m1);
        let (e, d_offset) = match self.case {
            FamilyCase::Case1 => (k / 2u32 + ell * f_m, (ell << 1u32) * f_m1 + 1u32),
            FamilyCase::Case2 => {
                if f_m.is_odd() {
                    return Err(Error::Invariant(format!("f_m = {f_m} is odd in Case 2")));
                }
                (k / 2u32 + ell * (f_m / 2u32), ell * f_m1 + 1u32)
            }
            FamilyCase::Case3 => {
                let half = k + f_m;
                if half.is_odd() {
                    return Err(Error::Invariant(format!(
                        "k + f_m = {half} is odd in Case 3"
                    )));
                }
                (
                    half / 2u32 + ell * f_m,
                    ((ell << 1u32) + 1u32) * f_m1 + 1u32,
                )
            }
        };
        let d = &e * &e + &d_offset;

        // d = e^2 + (2 f_{m-1} e + f_{m-2}) / f_m must hold with an exact quotient.
        let (quot, rem) = (((f_m1 * &e) << 1u32) + &self.f_m2).div_rem(f_m);
        if !rem.is_zero() || quot != d_offset {
            return Err(Error::Invariant(format!(
                "d formula for e = {e} leaves remainder {rem} (quotient {quot} vs {d_offset})"
            )));
        }
        if (&e << 1u32) == *k {
            return Err(Error::Invariant(format!(
                "2e = k = {k} collapses the period"
            )));
        }

        let x = f_m * &e + f_m1;
        let y = f_m.clone();
        let sign = PellSign::alternating(self.j as u64);
        if is_solution(&d, &x, &y) != Some(sign) {
            return Err(Error::Invariant(format!(
                "({x}, {y}) does not solve x^2 - {d}y^2 = {sign}"
            )));
        }
        Ok(FamilyEntry {
            params: FamilyParams {
                j: self.j,
                k: k.clone(),
                m: self.j - 1,
                ell: ell.clone(),
            },
            case: self.case,
            e,
            d,
            x,
            y,
            sign,
            f_m: f_m.clone(),
            f_m_minus_1: f_m1.clone(),
        })
    }
}

/// The family member with parameter `ell`.
pub fn make_entry(j: usize, k: &BigUint, ell: &BigUint) -> Result<FamilyEntry> {
    Generator::new(j, k)?.entry(ell)
}

/// Result of enumerating a family; `reason` is set when the family is empty
/// because no `d` of that shape exists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FamilyEnumeration {
    pub entries: Vec<FamilyEntry>,
    pub reason: Option<NoFamilyReason>,
}

impl FamilyEnumeration {
    fn empty(reason: NoFamilyReason) -> Self {
        FamilyEnumeration {
            entries: Vec::new(),
            reason: Some(reason),
        }
    }
}

/// All members with `min_ell <= ell <= ell_max`, in increasing `ell` (and `d`).
pub fn enumerate_family(j: usize, k: &BigUint, ell_max: u64) -> Result<FamilyEnumeration> {
    check_jk(j, k)?;
    if let Some(reason) = non_existence(j, k) {
        return Ok(FamilyEnumeration::empty(reason));
    }
    let generator = Generator::new(j, k)?;
    let entries = (u64::from(generator.case.min_ell())..=ell_max)
        .map(|ell| generator.entry(&BigUint::from(ell)))
        .collect::<Result<_>>()?;
    Ok(FamilyEnumeration {
        entries,
        reason: None,
    })
}

/// All members with `d <= d_max`.
pub fn enumerate_family_up_to(j: usize, k: &BigUint, d_max: &BigUint) -> Result<FamilyEnumeration> {
    check_jk(j, k)?;
    if let Some(reason) = non_existence(j, k) {
        return Ok(FamilyEnumeration::empty(reason));
    }
    let generator = Generator::new(j, k)?;
    let mut entries = Vec::new();
    let mut ell = BigUint::from(generator.case.min_ell());
    loop {
        let entry = generator.entry(&ell)?;
        if entry.d > *d_max {
            break;
        }
        entries.push(entry);
        ell += 1u32;
    }
    Ok(FamilyEnumeration {
        entries,
        reason: None,
    })
}

/// The period-one family `d = e^2 + 1`, `sqrt(d) = [e; 2e]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodOneEntry {
    pub e: BigUint,
    pub d: BigUint,
    pub x: BigUint,
    pub y: BigUint,
    pub sign: PellSign,
}

pub fn period_one_family(e: &BigUint) -> Result<PeriodOneEntry> {
    if e.is_zero() {
        return Err(Error::Domain("e must be at least 1".into()));
    }
    Ok(PeriodOneEntry {
        e: e.clone(),
        d: e * e + 1u32,
        x: e.clone(),
        y: BigUint::one(),
        sign: PellSign::Minus,
    })
}

/// Parameters of a `d` whose square root has the uniform shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub j: usize,
    pub k: BigUint,
    pub ell: BigUint,
    pub e: BigUint,
}

/// Recover `(j, k, ell, e)` for `d` if `sqrt(d) = [e; k, ..., k, 2e]` with `j >= 2`.
///
/// Period-one roots (`d = e^2 + 1`) have no repeated `k` and give `None`.
pub fn membership(d: &BigUint) -> Result<Option<Membership>> {
    let cf = expand_sqrt(d)?;
    let j = cf.j();
    if j < 2 {
        return Ok(None);
    }
    let block = cf.inner_block();
    let k = &block[0];
    if block.iter().any(|a| a != k) {
        return Ok(None);
    }
    let generator = Generator::new(j, k)
        .map_err(|err| Error::Invariant(format!("sqrt({d}) has the uniform shape but {err}")))?;
    let two_e = &cf.e << 1u32;
    let f_m = &generator.f_m;
    let (num, den) = match generator.case {
        FamilyCase::Case1 => (two_e.checked_sub(k), f_m << 1u32),
        FamilyCase::Case2 => (two_e.checked_sub(k), f_m.clone()),
        FamilyCase::Case3 => (two_e.checked_sub(&(k + f_m)), f_m << 1u32),
    };
    let ell = match num.map(|n| n.div_rem(&den)) {
        Some((ell, rem)) if rem.is_zero() => ell,
        _ => {
            return Err(Error::Invariant(format!(
                "cannot back-solve ell for d = {d} ({})",
                generator.case
            )))
        }
    };
    let entry = generator.entry(&ell)?;
    if entry.d != *d || entry.e != cf.e {
        return Err(Error::Invariant(format!(
            "back-solved ell = {ell} rebuilds d = {}, not {d}",
            entry.d
        )));
    }
    Ok(Some(Membership {
        j,
        k: k.clone(),
        ell,
        e: cf.e,
    }))
}

impl FamilyEntry {
    /// `ell` as a machine integer, when it fits.
    pub fn ell_u64(&self) -> Option<u64> {
        self.params.ell.to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn edxy(e: &FamilyEntry) -> (u64, u64, u64, u64) {
        (
            e.e.to_u64().unwrap(),
            e.d.to_u64().unwrap(),
            e.x.to_u64().unwrap(),
            e.y.to_u64().unwrap(),
        )
    }

    #[test]
    fn existence() {
        assert!(!exists_family(3, &big(1)).unwrap());
        assert!(exists_family(3, &big(2)).unwrap());
        assert!(!exists_family(6, &big(3)).unwrap());
        assert!(exists_family(4, &big(1)).unwrap());
        assert!(matches!(exists_family(1, &big(1)), Err(Error::Domain(_))));
        assert!(matches!(exists_family(2, &big(0)), Err(Error::Domain(_))));
    }

    #[test]
    fn cases() {
        assert_eq!(case_of(3, &big(2)).unwrap(), FamilyCase::Case1);
        assert_eq!(case_of(4, &big(2)).unwrap(), FamilyCase::Case2);
        assert_eq!(case_of(4, &big(1)).unwrap(), FamilyCase::Case3);
        assert_eq!(case_of(2, &big(6)).unwrap(), FamilyCase::Case2);
        assert!(matches!(
            case_of(3, &big(1)),
            Err(Error::NoFamily {
                reason: NoFamilyReason::KOddAndThreeDividesJ,
                ..
            })
        ));
    }

    #[test]
    fn entries() {
        let e = make_entry(3, &big(2), &big(1)).unwrap();
        assert_eq!(edxy(&e), (6, 41, 32, 5));
        assert_eq!(e.sign, PellSign::Minus);
        assert_eq!(
            edxy(&make_entry(4, &big(1), &big(0)).unwrap()),
            (2, 7, 8, 3)
        );
        assert_eq!(
            edxy(&make_entry(5, &big(2), &big(1)).unwrap()),
            (30, 925, 882, 29)
        );
        assert_eq!(
            edxy(&make_entry(7, &big(2), &big(1)).unwrap()),
            (170, 29041, 28800, 169)
        );
        assert_eq!(
            edxy(&make_entry(14, &big(1), &big(0)).unwrap()),
            (189, 35955, 71486, 377)
        );
    }

    #[test]
    fn entry_errors() {
        assert!(matches!(
            make_entry(3, &big(2), &big(0)),
            Err(Error::EllOutOfRange { min: 1, .. })
        ));
        assert!(matches!(
            make_entry(3, &big(1), &big(0)),
            Err(Error::NoFamily { .. })
        ));
    }

    #[test]
    fn enumeration() {
        let none = enumerate_family(3, &big(1), 10).unwrap();
        assert!(none.entries.is_empty());
        assert_eq!(none.reason, Some(NoFamilyReason::KOddAndThreeDividesJ));
        assert_eq!(none.reason.unwrap().to_string(), "k odd and 3 | j");

        let ds: Vec<_> = enumerate_family(3, &big(2), 3)
            .unwrap()
            .entries
            .iter()
            .map(|e| e.d.to_u64().unwrap())
            .collect();
        assert_eq!(ds, [41, 130, 269]);

        let two: Vec<_> = enumerate_family(2, &big(2), 2)
            .unwrap()
            .entries
            .iter()
            .map(|e| (e.e.to_u64().unwrap(), e.d.to_u64().unwrap()))
            .collect();
        assert_eq!(two, [(2, 6), (3, 12)]);

        let upto = enumerate_family_up_to(3, &big(2), &big(269)).unwrap();
        assert_eq!(upto.entries.len(), 3);
    }

    #[test]
    fn period_one() {
        for (e, d) in [(1u64, 2u64), (2, 5), (3, 10)] {
            let p = period_one_family(&big(e)).unwrap();
            assert_eq!((p.d, p.x.clone(), p.y.clone()), (big(d), big(e), big(1)));
            assert_eq!(is_solution(&big(d), &p.x, &p.y), Some(PellSign::Minus));
        }
        assert!(period_one_family(&big(0)).is_err());
    }

    #[test]
    fn membership_examples() {
        assert_eq!(
            membership(&big(41)).unwrap(),
            Some(Membership {
                j: 3,
                k: big(2),
                ell: big(1),
                e: big(6)
            })
        );
        assert_eq!(
            membership(&big(13)).unwrap(),
            Some(Membership {
                j: 5,
                k: big(1),
                ell: big(0),
                e: big(3)
            })
        );
        assert_eq!(membership(&big(19)).unwrap(), None);
        assert_eq!(membership(&big(2)).unwrap(), None);
        assert!(matches!(
            membership(&big(49)),
            Err(Error::PerfectSquare { .. })
        ));
    }

    #[test]
    fn period_two_matches_divisor_family() {
        // d = e^2 + 2e/k, (x, y) = (ke + 1, k), for k | 2e and k != 2e.
        for k in 1u64..=12 {
            let fam = enumerate_family(2, &big(k), 20).unwrap();
            for entry in &fam.entries {
                let e = entry.e.to_u64().unwrap();
                assert_eq!((2 * e) % k, 0);
                assert_ne!(2 * e, k);
                assert_eq!(entry.d, big(e * e + 2 * e / k));
                assert_eq!((entry.x.clone(), entry.y.clone()), (big(k * e + 1), big(k)));
            }
        }
    }
}
