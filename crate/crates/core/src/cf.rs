//! Periodic continued fraction of `sqrt(d)` and its convergents.
//!
//! The expansion is driven by the surd state `(P, Q)`, which represents the
//! complete quotient `(P + sqrt(d)) / Q`. The period is found as the first
//! repetition of that state; the fact that the period closes with `2e` is
//! checked afterwards rather than used to find it.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Floor square root by Newton iteration, with an exact final correction.
///
/// Returns `(root, is_exact)` where `root^2 <= n < (root + 1)^2`.
pub fn integer_sqrt(n: &BigUint) -> (BigUint, bool) {
    if n.is_zero() {
        return (BigUint::zero(), true);
    }
    // 2^ceil(bits/2) is always >= sqrt(n), so the iteration decreases
    // monotonically until it reaches the floor.
    let mut x = BigUint::one() << n.bits().div_ceil(2);
    loop {
        let next = (&x + n / &x) >> 1u32;
        if next >= x {
            break;
        }
        x = next;
    }
    while &x * &x > *n {
        x -= 1u32;
    }
    loop {
        let up = &x + 1u32;
        if &up * &up <= *n {
            x = up;
        } else {
            break;
        }
    }
    let exact = &x * &x == *n;
    (x, exact)
}

/// Complete quotient `(P + sqrt(d)) / Q` during the expansion of `sqrt(d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurdState {
    pub p: BigUint,
    pub q: BigUint,
    pub d: BigUint,
}

impl SurdState {
    /// The state of `sqrt(d)` itself: `P = 0`, `Q = 1`.
    pub fn initial(d: &BigUint) -> Self {
        SurdState {
            p: BigUint::zero(),
            q: BigUint::one(),
            d: d.clone(),
        }
    }

    /// Partial quotient `floor((P + sqrt(d)) / Q)`, given `e = floor(sqrt(d))`.
    pub fn quotient(&self, e: &BigUint) -> BigUint {
        (&self.p + e) / &self.q
    }

    /// Advance past the partial quotient `a`.
    pub fn step(&self, a: &BigUint) -> Self {
        let p = a * &self.q - &self.p;
        let num = &self.d - &p * &p;
        debug_assert!(num.is_multiple_of(&self.q), "Q must divide d - P^2");
        let q = num / &self.q;
        SurdState {
            p,
            q,
            d: self.d.clone(),
        }
    }
}

/// `sqrt(d) = [e; period...]` where the period ends in `2e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfExpansion {
    pub d: BigUint,
    pub e: BigUint,
    pub period: Vec<BigUint>,
}

impl CfExpansion {
    /// Period length `j`.
    pub fn j(&self) -> usize {
        self.period.len()
    }

    /// Partial quotient `a_n`, with `a_0 = e` and the period repeating after it.
    pub fn quotient(&self, n: usize) -> &BigUint {
        if n == 0 {
            &self.e
        } else {
            &self.period[(n - 1) % self.period.len()]
        }
    }

    /// Infinite stream `a_0, a_1, a_2, ...`.
    pub fn quotients(&self) -> impl Iterator<Item = &BigUint> + '_ {
        std::iter::once(&self.e).chain(self.period.iter().cycle())
    }

    /// `a_1 .. a_{j-1}`, the symmetric part of the period.
    pub fn inner_block(&self) -> &[BigUint] {
        &self.period[..self.period.len() - 1]
    }
}

impl fmt::Display for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sqrt({}) = [{}; (", self.d, self.e)?;
        for (i, a) in self.period.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")] period={}", self.period.len())
    }
}

/// Returns `Ok(e)` with `e = floor(sqrt(d))` when `d >= 2` is not a square.
pub(crate) fn check_nonsquare(d: &BigUint) -> Result<BigUint> {
    if *d < BigUint::from(2u32) {
        return Err(Error::Domain(format!("d must be at least 2, got {d}")));
    }
    let (root, exact) = integer_sqrt(d);
    if exact {
        return Err(Error::PerfectSquare { d: d.clone(), root });
    }
    Ok(root)
}

/// Expand `sqrt(d)` into its periodic continued fraction.
pub fn expand_sqrt(d: &BigUint) -> Result<CfExpansion> {
    let e = check_nonsquare(d)?;

    let mut state = SurdState::initial(d).step(&e);
    let mut seen: HashMap<(BigUint, BigUint), usize> = HashMap::new();
    let mut quotients = Vec::new();
    let start = loop {
        let key = (state.p.clone(), state.q.clone());
        if let Some(&first) = seen.get(&key) {
            break first;
        }
        seen.insert(key, quotients.len());
        let a = state.quotient(&e);
        state = state.step(&a);
        quotients.push(a);
    };
    if start != 0 {
        return Err(Error::Invariant(format!(
            "sqrt({d}) is not purely periodic after a_0 (repeat at offset {start})"
        )));
    }
    let two_e = &e << 1u32;
    if quotients.last() != Some(&two_e) {
        return Err(Error::Invariant(format!(
            "period of sqrt({d}) does not end with 2e = {two_e}"
        )));
    }
    Ok(CfExpansion {
        d: d.clone(),
        e,
        period: quotients,
    })
}

/// A convergent `num / den` of index `index >= -2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub num: BigUint,
    pub den: BigUint,
    pub index: i64,
}

/// Convergents of `cf` for indices `-2 ..= n`, seeded with `(0, 1)` and `(1, 0)`.
///
/// `num` is the sequence with `num_0 = e`; `den` has `den_0 = 1`.
pub fn convergents(cf: &CfExpansion, n: usize) -> Vec<Convergent> {
    let mut out = Vec::with_capacity(n + 3);
    out.push(Convergent {
        num: BigUint::zero(),
        den: BigUint::one(),
        index: -2,
    });
    out.push(Convergent {
        num: BigUint::one(),
        den: BigUint::zero(),
        index: -1,
    });
    for (i, a) in cf.quotients().take(n + 1).enumerate() {
        let (prev2, prev1) = (&out[i], &out[i + 1]);
        let num = a * &prev1.num + &prev2.num;
        let den = a * &prev1.den + &prev2.den;
        out.push(Convergent {
            num,
            den,
            index: i as i64,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn bigs(v: &[u64]) -> Vec<BigUint> {
        v.iter().copied().map(big).collect()
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(integer_sqrt(&big(41)), (big(6), false));
        assert_eq!(integer_sqrt(&big(9)), (big(3), true));
        assert_eq!(integer_sqrt(&big(0)), (big(0), true));
        assert_eq!(integer_sqrt(&big(1)), (big(1), true));
        assert_eq!(integer_sqrt(&big(3)), (big(1), false));
    }

    #[test]
    fn isqrt_large() {
        let r: BigUint = (BigUint::one() << 300u32) + 12345u32;
        let sq = &r * &r;
        assert_eq!(integer_sqrt(&sq), (r.clone(), true));
        assert_eq!(integer_sqrt(&(&sq - 1u32)), (&r - 1u32, false));
        assert_eq!(integer_sqrt(&(&sq + &r)), (r, false));
    }

    #[test]
    fn expand_examples() {
        let cf = expand_sqrt(&big(41)).unwrap();
        assert_eq!(cf.e, big(6));
        assert_eq!(cf.period, bigs(&[2, 2, 12]));
        assert_eq!(cf.j(), 3);

        let cf = expand_sqrt(&big(7)).unwrap();
        assert_eq!(cf.e, big(2));
        assert_eq!(cf.period, bigs(&[1, 1, 1, 4]));

        let cf = expand_sqrt(&big(2)).unwrap();
        assert_eq!(cf.e, big(1));
        assert_eq!(cf.period, bigs(&[2]));

        let cf = expand_sqrt(&big(19)).unwrap();
        assert_eq!(cf.period, bigs(&[2, 1, 3, 1, 2, 8]));
    }

    #[test]
    fn expand_errors() {
        assert_eq!(
            expand_sqrt(&big(9)),
            Err(Error::PerfectSquare {
                d: big(9),
                root: big(3)
            })
        );
        assert!(matches!(expand_sqrt(&big(1)), Err(Error::Domain(_))));
        assert!(matches!(expand_sqrt(&big(0)), Err(Error::Domain(_))));
    }

    #[test]
    fn display_format() {
        let cf = expand_sqrt(&big(41)).unwrap();
        assert_eq!(cf.to_string(), "sqrt(41) = [6; (2,2,12)] period=3");
    }

    #[test]
    fn convergent_examples() {
        let cf = expand_sqrt(&big(41)).unwrap();
        let c = convergents(&cf, 2);
        assert_eq!(c.len(), 5);
        assert_eq!(c[0].index, -2);
        let nums: Vec<_> = c[2..].iter().map(|c| c.num.clone()).collect();
        let dens: Vec<_> = c[2..].iter().map(|c| c.den.clone()).collect();
        assert_eq!(nums, bigs(&[6, 13, 32]));
        assert_eq!(dens, bigs(&[1, 2, 5]));

        let cf = expand_sqrt(&big(7)).unwrap();
        let last = convergents(&cf, 3).pop().unwrap();
        assert_eq!((last.num, last.den, last.index), (big(8), big(3), 3));

        for d in [2u64, 3, 13, 99] {
            let cf = expand_sqrt(&big(d)).unwrap();
            let c = convergents(&cf, 0);
            assert_eq!((c[2].num.clone(), c[2].den.clone()), (cf.e.clone(), big(1)));
        }
    }

    #[test]
    fn surd_state_invariants_hold_through_period() {
        for d in 2u64..400 {
            let Ok(e) = check_nonsquare(&big(d)) else {
                continue;
            };
            let four_d = big(4 * d);
            let mut s = SurdState::initial(&big(d));
            for n in 0..60 {
                let a = s.quotient(&e);
                let next = s.step(&a);
                assert!((big(d) - &next.p * &next.p).is_multiple_of(&next.q));
                if n > 0 {
                    assert!(next.p <= e);
                    assert!(!next.q.is_zero());
                    assert!(&next.q * &next.q <= four_d);
                }
                s = next;
            }
        }
    }
}
