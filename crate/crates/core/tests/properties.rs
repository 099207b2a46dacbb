use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;

use waring_sieve::bounds::{check_lemma31, check_zhu_wan};
use waring_sieve::combinatorics::{cycle_index_identity, factorial, falling_factorial, gen_binomial};
use waring_sieve::counters::{count_odlyzko_stanley, ValuedDomain};
use waring_sieve::field::{character_profile, monomial_exp_sum};
use waring_sieve::real::DEFAULT_BITS;
use waring_sieve::waring::gamma_ordinary;
use waring_sieve::PrimeModulus;

const PRIMES: [u64; 10] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

fn md(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-1000i64..1000, 1i64..50).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

/// A prime from the table and a divisor of `p - 1`.
fn prime_and_divisor() -> impl Strategy<Value = (u64, u64)> {
    prop::sample::select(PRIMES.to_vec()).prop_flat_map(|p| {
        let divs: Vec<u64> = (1..p).filter(|d| (p - 1) % d == 0).collect();
        (Just(p), prop::sample::select(divs))
    })
}

/// A nonempty subset of `F_p*` as a bitmask over `1..p`.
fn subset(p: u64) -> impl Strategy<Value = Vec<u64>> {
    (1u64..(1 << (p - 1))).prop_map(move |mask| (1..p).filter(|x| mask >> (x - 1) & 1 == 1).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn binomial_times_factorial_is_falling(x in rational(), k in 0usize..10) {
        let lhs = gen_binomial(&x, k) * BigRational::from_integer(BigInt::from(factorial(k)));
        prop_assert_eq!(lhs, falling_factorial(&x, k));
    }

    #[test]
    fn cycle_index_at_constant_is_rising(q in rational(), k in 1usize..9) {
        let (lhs, rhs) = cycle_index_identity(k, &q);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exp_sum_factors_through_gcd(p in prop::sample::select(PRIMES.to_vec()), m in 1u64..200, a in 1u64..31) {
        prop_assume!(a % p != 0);
        let d = gcd(m, p - 1);
        let direct = monomial_exp_sum(md(p), m, a).unwrap();
        let reduced = monomial_exp_sum(md(p), d, a).unwrap();
        prop_assert!((direct - reduced).abs() <= 2e-9 * p as f64, "{} vs {}", direct, reduced);
    }

    #[test]
    fn phi_is_at_most_domain_size(set in subset(13)) {
        let domain = ValuedDomain::from_set(md(13), &set).unwrap();
        let profile = character_profile(&domain).unwrap();
        prop_assert!(profile.phi() <= set.len() as f64 + profile.error_bound());
    }

    #[test]
    fn dilation_permutes_targets((p, m) in prime_and_divisor(), c in 1u64..31, k in 0usize..31) {
        prop_assume!(c % p != 0 && k < p as usize);
        let modulus = md(p);
        let t = count_odlyzko_stanley(modulus, m, k).unwrap();
        let cm = modulus.pow(c, m);
        for b in 0..p {
            prop_assert_eq!(t.get(modulus.mul(cm, b)), t.get(b));
        }
    }

    #[test]
    fn zhu_wan_holds((p, m) in prime_and_divisor(), k in 1usize..31) {
        prop_assume!(k < p as usize);
        for r in check_zhu_wan(md(p), m, k, DEFAULT_BITS).unwrap() {
            prop_assert!(r.holds(), "p={} m={} k={} b={:?}", p, m, k, r.b);
        }
    }

    #[test]
    fn lemma31_holds_on_random_sets(p in prop::sample::select(vec![11u64, 13]), seed_set in subset(13), k in 1usize..13) {
        let set: Vec<u64> = seed_set.into_iter().filter(|&x| x < p).collect();
        prop_assume!(!set.is_empty() && k <= set.len());
        let domain = ValuedDomain::from_set(md(p), &set).unwrap();
        for r in check_lemma31(&domain, k, DEFAULT_BITS).unwrap() {
            prop_assert!(r.holds(), "D={:?} k={} b={:?}", set, k, r.b);
        }
    }

    #[test]
    fn gamma_depends_on_gcd_and_obeys_cauchy((p, d) in prime_and_divisor(), t in 1u64..5) {
        // m = d * t with t coprime to (p-1)/d keeps gcd(m, p-1) = d
        prop_assume!(gcd(t, (p - 1) / d) == 1);
        let g = gamma_ordinary(md(p), d).unwrap().value.unwrap();
        prop_assert_eq!(gamma_ordinary(md(p), d * t).unwrap().value, Some(g));
        if d < p - 1 {
            prop_assert!(g as u64 <= d);
        }
    }
}

#[test]
fn total_counts_sum_to_two_power() {
    for p in PRIMES {
        for m in (1..p).filter(|d| (p - 1) % d == 0) {
            let totals = waring_sieve::counters::total_count(md(p), m).unwrap();
            let sum: BigUint = totals.iter().sum();
            assert_eq!(sum, BigUint::from(1u8) << (p - 1), "p={p} m={m}");
        }
    }
}
