//! The sequence `f_{-2} = 1, f_{-1} = 0, f_n = k*f_{n-1} + f_{n-2}`.
//!
//! `f_n` is the continuant of `n + 1` copies of `k`; `k = 1` gives the
//! Fibonacci numbers and `k = 2` the Pell numbers.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `f_{-2}, f_{-1}, ..., f_n` for a fixed `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KSequence {
    pub k: BigUint,
    /// `values[i]` is `f_{i-2}`.
    pub values: Vec<BigUint>,
}

impl KSequence {
    /// Largest index held.
    pub fn last_index(&self) -> i64 {
        self.values.len() as i64 - 3
    }

    /// `f_n`, for `-2 <= n <= last_index()`.
    pub fn get(&self, n: i64) -> &BigUint {
        assert!(
            n >= -2 && n <= self.last_index(),
            "f_{n} outside computed range -2..={}",
            self.last_index()
        );
        &self.values[(n + 2) as usize]
    }
}

fn check_k(k: &BigUint) -> Result<()> {
    if k.is_zero() {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    Ok(())
}

/// `f_{-2} ..= f_n`.
pub fn f_seq(k: &BigUint, n: i64) -> Result<KSequence> {
    check_k(k)?;
    if n < -2 {
        return Err(Error::Domain(format!("n must be at least -2, got {n}")));
    }
    let len = (n + 3) as usize;
    let mut values = Vec::with_capacity(len.max(2));
    values.push(BigUint::one());
    values.push(BigUint::zero());
    while values.len() < len {
        let i = values.len();
        let next = k * &values[i - 1] + &values[i - 2];
        values.push(next);
    }
    values.truncate(len);
    Ok(KSequence {
        k: k.clone(),
        values,
    })
}

/// Checks `f_{n-1}^2 + (-1)^n = f_n * f_{n-2}`.
pub fn cassini_check(k: &BigUint, n: i64) -> Result<bool> {
    if n < 1 {
        return Err(Error::Domain(format!("Cassini needs n >= 1, got {n}")));
    }
    let f = f_seq(k, n)?;
    let lhs = f.get(n - 1) * f.get(n - 1);
    let rhs = f.get(n) * f.get(n - 2);
    Ok(if n % 2 == 0 {
        lhs + 1u32 == rhs
    } else {
        lhs == rhs + 1u32
    })
}

/// Checks `(-1)^n * f_{n-2} * f_{n-1} = k (mod f_n)`.
pub fn congruence_check(k: &BigUint, n: i64) -> Result<bool> {
    if n < 2 {
        return Err(Error::Domain(format!("congruence needs n >= 2, got {n}")));
    }
    let f = f_seq(k, n)?;
    let modulus = f.get(n);
    let r = (f.get(n - 2) * f.get(n - 1)) % modulus;
    let lhs = if n % 2 == 0 || r.is_zero() {
        r
    } else {
        modulus - r
    };
    Ok(lhs == k % modulus)
}

/// `f_n` as a polynomial in `k`: `coeffs[i]` multiplies `k^(n - 2i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyCoeffs {
    pub n: usize,
    pub coeffs: Vec<BigUint>,
}

impl PolyCoeffs {
    /// Horner evaluation in `k^2`.
    pub fn evaluate(&self, k: &BigUint) -> BigUint {
        let k2 = k * k;
        let mut acc = BigUint::zero();
        for c in &self.coeffs {
            acc = acc * &k2 + c;
        }
        if self.n % 2 == 1 {
            acc * k
        } else {
            acc
        }
    }

    /// Renders the polynomial as `k^3+2k`, `k^2+1`, `k`, `1`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            let deg = self.n - 2 * i;
            if i > 0 {
                out.push('+');
            }
            let coef = if c.is_one() && deg > 0 {
                String::new()
            } else {
                c.to_string()
            };
            out.push_str(&coef);
            match deg {
                0 => {}
                1 => out.push('k'),
                _ => out.push_str(&format!("k^{deg}")),
            }
        }
        out
    }
}

fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Coefficients of `f_n` as a polynomial in `k`.
///
/// The coefficient of `k^(n-2i)` is `1 + sum_{s=1}^{n-2i} C(s+i-1, s)`;
/// the leading one (`i = 0`) is always 1.
pub fn f_poly_coeffs(n: usize) -> PolyCoeffs {
    let coeffs = (0..=n / 2)
        .map(|i| {
            if i == 0 {
                return BigUint::one();
            }
            let i = i as u64;
            let top = n as u64 - 2 * i;
            (1..=top).fold(BigUint::one(), |acc, s| acc + binomial(s + i - 1, s))
        })
        .collect();
    PolyCoeffs { n, coeffs }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Parity of `f_n` without computing it.
///
/// For odd `k` the parities repeat as odd, odd, even from `n = 0`; for even
/// `k`, `f_n` is odd exactly when `n` is even.
pub fn parity_of_f(k: &BigUint, n: i64) -> Result<Parity> {
    check_k(k)?;
    if n < -2 {
        return Err(Error::Domain(format!("n must be at least -2, got {n}")));
    }
    let odd = if k.is_odd() {
        n.rem_euclid(3) != 2
    } else {
        n % 2 == 0
    };
    Ok(if odd { Parity::Odd } else { Parity::Even })
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
    fn sequences() {
        assert_eq!(
            f_seq(&big(1), 7).unwrap().values,
            bigs(&[1, 0, 1, 1, 2, 3, 5, 8, 13, 21])
        );
        assert_eq!(
            f_seq(&big(2), 7).unwrap().values,
            bigs(&[1, 0, 1, 2, 5, 12, 29, 70, 169, 408])
        );
        let s = f_seq(&big(3), 3).unwrap();
        assert_eq!(*s.get(3), big(33));
        assert_eq!(s.last_index(), 3);
        assert_eq!(f_seq(&big(5), -2).unwrap().values, bigs(&[1]));
        assert_eq!(f_seq(&big(5), -1).unwrap().values, bigs(&[1, 0]));
        assert!(f_seq(&big(0), 3).is_err());
        assert!(f_seq(&big(1), -3).is_err());
    }

    #[test]
    fn cassini_examples() {
        assert!(cassini_check(&big(2), 3).unwrap());
        assert!(cassini_check(&big(1), 2).unwrap());
        // k = 5: f_2 = 26, f_3 = 135, f_4 = 701; 135^2 + 1 = 18226 = 701 * 26
        assert_eq!(big(135) * big(135) + big(1), big(701) * big(26));
        assert!(cassini_check(&big(5), 4).unwrap());
        assert!(cassini_check(&big(5), 0).is_err());
    }

    #[test]
    fn congruence_examples() {
        assert!(congruence_check(&big(2), 2).unwrap());
        assert!(congruence_check(&big(2), 3).unwrap());
        // k = 3: f_3 = 33, f_4 = 109, f_5 = 360; -(33 * 109) = -3597 = 3 (mod 360)
        assert_eq!((360 * 10 - 33 * 109i64).rem_euclid(360), 3);
        assert!(congruence_check(&big(3), 5).unwrap());
        assert!(congruence_check(&big(3), 1).is_err());
    }

    #[test]
    fn poly_coeffs_match_printed_table() {
        assert_eq!(f_poly_coeffs(11).coeffs, bigs(&[1, 10, 36, 56, 35, 6]));
        assert_eq!(f_poly_coeffs(8).coeffs, bigs(&[1, 7, 15, 10, 1]));
        assert_eq!(f_poly_coeffs(0).coeffs, bigs(&[1]));
        assert_eq!(f_poly_coeffs(10).coeffs, bigs(&[1, 9, 28, 35, 15, 1]));
        assert_eq!(f_poly_coeffs(3).render(), "k^3+2k");
        assert_eq!(f_poly_coeffs(2).render(), "k^2+1");
        assert_eq!(f_poly_coeffs(1).render(), "k");
        assert_eq!(f_poly_coeffs(0).render(), "1");
        assert_eq!(f_poly_coeffs(11).evaluate(&big(2)), big(13860));
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity_of_f(&big(1), 2).unwrap(), Parity::Even);
        assert_eq!(parity_of_f(&big(3), 4).unwrap(), Parity::Odd);
        assert_eq!(parity_of_f(&big(2), 3).unwrap(), Parity::Even);
        assert_eq!(parity_of_f(&big(3), -2).unwrap(), Parity::Odd);
        assert_eq!(parity_of_f(&big(3), -1).unwrap(), Parity::Even);
    }
}
