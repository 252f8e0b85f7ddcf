//! Benchmark inputs.

use pellform::{make_entry, BigUint, FamilyEntry};

/// A family member with period `j`, used to race the closed form against
/// the generic solver on the same `d`.
pub fn family_member(j: usize, k: u64, ell: u64) -> FamilyEntry {
    make_entry(j, &BigUint::from(k), &BigUint::from(ell)).expect("admissible parameters")
}

/// `10^digits + offset`, a non-square radicand of roughly the given size.
pub fn large_radicand(digits: u32, offset: u64) -> BigUint {
    BigUint::from(10u32).pow(digits) + offset
}
