//! Fundamental solutions of `X^2 - d*Y^2 = +-1` and the group they generate.

use std::fmt;
use std::ops::Mul;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::cf::{convergents, expand_sqrt};
use crate::error::{Error, Result};

/// Right-hand side of the equation, `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PellSign {
    Minus,
    Plus,
}

impl PellSign {
    /// `(-1)^n`.
    pub fn alternating(n: u64) -> Self {
        if n.is_multiple_of(2) {
            PellSign::Plus
        } else {
            PellSign::Minus
        }
    }

    pub fn pow(self, n: u64) -> Self {
        match self {
            PellSign::Plus => PellSign::Plus,
            PellSign::Minus => PellSign::alternating(n),
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            PellSign::Plus => 1,
            PellSign::Minus => -1,
        }
    }

    pub fn negate(self) -> Self {
        match self {
            PellSign::Plus => PellSign::Minus,
            PellSign::Minus => PellSign::Plus,
        }
    }
}

impl fmt::Display for PellSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PellSign::Plus => "+1",
            PellSign::Minus => "-1",
        })
    }
}

/// A positive solution of `x^2 - d*y^2 = sign`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PellSolution {
    pub x: BigUint,
    pub y: BigUint,
    pub sign: PellSign,
    pub d: BigUint,
}

impl PellSolution {
    /// Recomputes `x^2 - d*y^2` and compares it with `sign`.
    pub fn is_valid(&self) -> bool {
        is_solution(&self.d, &self.x, &self.y) == Some(self.sign)
    }

    pub fn to_surd(&self) -> QuadraticSurdNumber {
        QuadraticSurdNumber::new(self.x.clone().into(), self.y.clone().into(), self.d.clone())
    }
}

/// `a + b*sqrt(d)` with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurdNumber {
    pub a: BigInt,
    pub b: BigInt,
    pub d: BigUint,
}

impl QuadraticSurdNumber {
    pub fn new(a: BigInt, b: BigInt, d: BigUint) -> Self {
        QuadraticSurdNumber { a, b, d }
    }

    pub fn one(d: &BigUint) -> Self {
        Self::new(BigInt::one(), BigInt::zero(), d.clone())
    }

    /// `a^2 - d*b^2`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - BigInt::from(self.d.clone()) * &self.b * &self.b
    }

    /// Square-and-multiply power.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = Self::one(&self.d);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Mul for &QuadraticSurdNumber {
    type Output = QuadraticSurdNumber;

    fn mul(self, rhs: &QuadraticSurdNumber) -> QuadraticSurdNumber {
        assert_eq!(self.d, rhs.d, "surd numbers over different radicands");
        let d = BigInt::from(self.d.clone());
        QuadraticSurdNumber {
            a: &self.a * &rhs.a + &self.b * &rhs.b * d,
            b: &self.a * &rhs.b + &rhs.a * &self.b,
            d: self.d.clone(),
        }
    }
}

impl Mul for QuadraticSurdNumber {
    type Output = QuadraticSurdNumber;

    fn mul(self, rhs: QuadraticSurdNumber) -> QuadraticSurdNumber {
        &self * &rhs
    }
}

impl fmt::Display for QuadraticSurdNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{} - {}*sqrt({})", self.a, -&self.b, self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

/// `Some(sign)` when `x^2 - d*y^2 = sign`, `None` otherwise.
pub fn is_solution(d: &BigUint, x: &BigUint, y: &BigUint) -> Option<PellSign> {
    let lhs = x * x;
    let rhs = d * y * y;
    if lhs == &rhs + 1u32 {
        Some(PellSign::Plus)
    } else if &lhs + 1u32 == rhs {
        Some(PellSign::Minus)
    } else {
        None
    }
}

/// Smallest positive solution of `X^2 - d*Y^2 = (-1)^j`, `j` the period of `sqrt(d)`.
///
/// Read off the convergent with index `j - 1`.
pub fn solve_fundamental(d: &BigUint) -> Result<PellSolution> {
    let cf = expand_sqrt(d)?;
    let j = cf.j();
    let last = convergents(&cf, j - 1)
        .pop()
        .expect("convergent list is never empty");
    let sol = PellSolution {
        x: last.num,
        y: last.den,
        sign: PellSign::alternating(j as u64),
        d: d.clone(),
    };
    if !sol.is_valid() {
        return Err(Error::Invariant(format!(
            "convergent ({}, {}) does not solve x^2 - {d}y^2 = {}",
            sol.x, sol.y, sol.sign
        )));
    }
    Ok(sol)
}

/// Smallest positive solution of `X^2 - d*Y^2 = 1`.
pub fn solve_pell_plus(d: &BigUint) -> Result<PellSolution> {
    let fund = solve_fundamental(d)?;
    Ok(match fund.sign {
        PellSign::Plus => fund,
        PellSign::Minus => power_solution(&fund, 2),
    })
}

/// Smallest positive solution of `X^2 - d*Y^2 = -1`, or `None` when the
/// period of `sqrt(d)` is even and no solution exists.
pub fn solve_pell_minus(d: &BigUint) -> Result<Option<PellSolution>> {
    let fund = solve_fundamental(d)?;
    Ok(match fund.sign {
        PellSign::Minus => Some(fund),
        PellSign::Plus => None,
    })
}

/// `x_n + y_n*sqrt(d) = (x + y*sqrt(d))^n` for `n >= 1`.
///
/// Only the positive quadrant is produced; `-(x + y*sqrt(d))^n` and the
/// negative exponents are the conjugate/negated mirrors of these.
pub fn power_solution(fund: &PellSolution, n: u64) -> PellSolution {
    assert!(n >= 1, "power_solution needs n >= 1");
    let p = fund.to_surd().pow(n);
    PellSolution {
        x: p.a.magnitude().clone(),
        y: p.b.magnitude().clone(),
        sign: fund.sign.pow(n),
        d: fund.d.clone(),
    }
}
