use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;

use pellform::cf::SurdState;
use pellform::oracle::{brute_cf_prefix, pattern_index};
use pellform::sweep::pell_agreement;
use pellform::{
    convergents, enumerate_family_up_to, expand_sqrt, f_poly_coeffs, f_seq, integer_sqrt,
    membership, parity_of_f, power_solution, solve_fundamental, Parity, PellSign,
};

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn nonsquares(limit: u64) -> impl Iterator<Item = u64> {
    (2..=limit).filter(|d| {
        let s = d.isqrt();
        s * s != *d
    })
}

#[test]
fn convergent_at_period_end_solves_pell() {
    for d in nonsquares(3000) {
        let cf = expand_sqrt(&big(d)).unwrap();
        let j = cf.j();
        let conv = convergents(&cf, 2 * j);
        for c in &conv[2..] {
            assert!(c.num.gcd(&c.den).is_one(), "d={d} index {}", c.index);
        }
        let c = &conv[j + 1];
        assert_eq!(c.index, j as i64 - 1);
        let lhs = &c.num * &c.num;
        let rhs = big(d) * &c.den * &c.den;
        match PellSign::alternating(j as u64) {
            PellSign::Plus => assert_eq!(lhs, rhs + 1u32, "d={d}"),
            PellSign::Minus => assert_eq!(lhs + 1u32, rhs, "d={d}"),
        }
    }
}

#[test]
fn period_block_is_palindromic() {
    for d in nonsquares(5000) {
        let cf = expand_sqrt(&big(d)).unwrap();
        let inner = cf.inner_block();
        assert!(inner.iter().eq(inner.iter().rev()), "d={d}");
        assert_eq!(*cf.period.last().unwrap(), &cf.e * 2u32);
    }
}

#[test]
fn period_detection_is_idempotent() {
    // Restarting from the state reached after one full period regenerates
    // the same block.
    for d in nonsquares(2000) {
        let cf = expand_sqrt(&big(d)).unwrap();
        let mut state = SurdState::initial(&big(d));
        for a in cf.quotients().take(cf.j() + 1) {
            state = state.step(a);
        }
        let mut again = Vec::new();
        for _ in 0..cf.j() {
            let a = state.quotient(&cf.e);
            state = state.step(&a);
            again.push(a);
        }
        assert_eq!(again, cf.period, "d={d}");
    }
}

#[test]
fn oracle_prefix_agrees_with_expansion() {
    for d in nonsquares(10_000) {
        let cf = expand_sqrt(&big(d)).unwrap();
        let stream: Vec<BigUint> = cf.quotients().take(50).cloned().collect();
        assert_eq!(brute_cf_prefix(&big(d), 50).unwrap(), stream, "d={d}");
    }
}

#[test]
fn fundamental_sign_follows_period_parity() {
    for d in nonsquares(5000) {
        let j = expand_sqrt(&big(d)).unwrap().j();
        let f = solve_fundamental(&big(d)).unwrap();
        assert_eq!(f.sign, PellSign::alternating(j as u64), "d={d}");
        assert!(f.is_valid());
    }
}

#[test]
fn pell_agreement_small_range() {
    let r = pell_agreement(500, 20_000);
    assert!(r.passed(), "{r}");
}

#[test]
fn completeness_wide_grid() {
    // j <= 12, k <= 20 over d <= 200000.
    let d_max = 200_000u64;
    let index = pattern_index(d_max, 12);
    for j in 2..=12usize {
        for k in 1..=20u64 {
            let scanned = index.get(&(j, k)).cloned().unwrap_or_default();
            let closed: Vec<u64> = enumerate_family_up_to(j, &big(k), &big(d_max))
                .unwrap()
                .entries
                .iter()
                .map(|e| e.d.to_u64().unwrap())
                .collect();
            assert_eq!(scanned, closed, "j={j} k={k}");
        }
    }
    // Non-existence: k odd with 3 | j never shows up in the scan.
    for (&(j, k), ds) in &index {
        if k % 2 == 1 && j % 3 == 0 {
            panic!("j={j} k={k} has members {ds:?}");
        }
    }
}

#[test]
fn membership_round_trips_family_entries() {
    for j in 2..=8usize {
        for k in 1..=6u64 {
            let fam = enumerate_family_up_to(j, &big(k), &big(50_000)).unwrap();
            for entry in fam.entries {
                let m = membership(&entry.d).unwrap().expect("family member");
                assert_eq!(
                    (m.j, m.k, m.ell, m.e),
                    (j, big(k), entry.params.ell, entry.e)
                );
            }
        }
    }
}

#[test]
fn parity_shortcut_matches_values() {
    for k in 1..=20u64 {
        let seq = f_seq(&big(k), 100).unwrap();
        for n in -2..=100i64 {
            let expected = if seq.get(n).is_odd() {
                Parity::Odd
            } else {
                Parity::Even
            };
            assert_eq!(parity_of_f(&big(k), n).unwrap(), expected, "k={k} n={n}");
        }
    }
}

#[test]
fn f_sequence_strictly_increasing() {
    for k in 1..=10u64 {
        let seq = f_seq(&big(k), 60).unwrap();
        for n in 2..=60 {
            assert!(seq.get(n) > seq.get(n - 1), "k={k} n={n}");
        }
    }
}

proptest! {
    #[test]
    fn isqrt_brackets(digits in proptest::collection::vec(any::<u32>(), 1..12)) {
        let n = BigUint::new(digits);
        let (r, exact) = integer_sqrt(&n);
        prop_assert!(&r * &r <= n);
        let up = &r + 1u32;
        prop_assert!(&up * &up > n);
        prop_assert_eq!(exact, &r * &r == n);
        prop_assert_eq!(r, n.sqrt());
    }

    #[test]
    fn power_is_a_homomorphism(d in 2u64..5000, m in 1u64..12, n in 1u64..12) {
        let s = d.isqrt();
        prop_assume!(s * s != d);
        let fund = solve_fundamental(&big(d)).unwrap();
        let lhs = power_solution(&fund, m + n);
        let rhs = &power_solution(&fund, m).to_surd() * &power_solution(&fund, n).to_surd();
        prop_assert_eq!(BigUint::try_from(rhs.a).unwrap(), lhs.x.clone());
        prop_assert_eq!(BigUint::try_from(rhs.b).unwrap(), lhs.y.clone());
        prop_assert!(lhs.is_valid());
    }

    #[test]
    fn poly_coeffs_evaluate_to_recurrence(n in 0usize..=40, k in 1u64..=10) {
        let seq = f_seq(&big(k), n as i64).unwrap();
        prop_assert_eq!(&f_poly_coeffs(n).evaluate(&big(k)), seq.get(n as i64));
    }
}
