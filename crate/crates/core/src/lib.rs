//! Exact continued fractions of square roots and the Fermat-Pell equations
//! `X^2 - d*Y^2 = +-1`.
//!
//! Besides the generic algorithm (expand `sqrt(d)`, read the convergent at
//! the end of the first period), the crate implements the closed-form
//! description of every `d` whose expansion has the uniform shape
//! `[e; k, ..., k, 2e]`, together with brute-force oracles used to check
//! the two against each other.
//!
//! All arithmetic is done on [`BigUint`]/[`BigInt`]; nothing is ever
//! approximated with floating point on the main path.

pub mod cf;
pub mod error;
pub mod family;
pub mod kfib;
pub mod oracle;
pub mod pell;
pub mod sweep;

pub use num_bigint::{BigInt, BigUint};

pub use cf::{convergents, expand_sqrt, integer_sqrt, CfExpansion, Convergent, SurdState};
pub use error::{Error, Result};
pub use family::{
    case_of, enumerate_family, enumerate_family_up_to, exists_family, make_entry, membership,
    period_one_family, FamilyCase, FamilyEntry, FamilyEnumeration, FamilyParams, Membership,
    NoFamilyReason, PeriodOneEntry,
};
pub use kfib::{
    cassini_check, congruence_check, f_poly_coeffs, f_seq, parity_of_f, KSequence, Parity,
    PolyCoeffs,
};
pub use pell::{
    is_solution, power_solution, solve_fundamental, solve_pell_minus, solve_pell_plus, PellSign,
    PellSolution, QuadraticSurdNumber,
};
