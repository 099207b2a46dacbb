use num_bigint::BigUint;
use num_integer::binomial;
use proptest::prelude::*;

use super::*;

fn md(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

fn table_map(t: &CountTable) -> Vec<(u64, u64)> {
    t.support().map(|(b, c)| (b, u64::try_from(c).unwrap())).collect()
}

/// Enumerates every subset of the expanded multiset (each copy separately).
fn brute_force(domain: &ValuedDomain) -> Vec<Vec<u64>> {
    let p = domain.modulus().value();
    let copies: Vec<u64> = domain
        .items()
        .iter()
        .flat_map(|&(v, mu)| std::iter::repeat(v).take(mu as usize))
        .collect();
    let n = copies.len();
    let mut out = vec![vec![0u64; p as usize]; n + 1];
    for mask in 0u32..(1 << n) {
        let mut sum = 0;
        for (i, &v) in copies.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum = (sum + v) % p;
            }
        }
        out[mask.count_ones() as usize][sum as usize] += 1;
    }
    out
}

/// N*_m(k, b) straight from subsets of F_p*, never touching H.
fn brute_force_powers(p: u64, m: u64) -> Vec<Vec<u64>> {
    let modulus = md(p);
    let n = (p - 1) as usize;
    let mut out = vec![vec![0u64; p as usize]; n + 1];
    for mask in 0u32..(1 << n) {
        let mut sum = 0;
        for x in 1..p {
            if mask & (1 << (x - 1)) != 0 {
                sum = modulus.add(sum, modulus.pow(x, m));
            }
        }
        out[mask.count_ones() as usize][sum as usize] += 1;
    }
    out
}

fn as_u64(tables: &[CountTable]) -> Vec<Vec<u64>> {
    tables
        .iter()
        .map(|t| t.counts().iter().map(|c| u64::try_from(c).unwrap()).collect())
        .collect()
}

#[test]
fn dp_examples() {
    let t = count_dp(&ValuedDomain::units(md(5)), 2).unwrap();
    assert_eq!(t[2].get(0), &BigUint::from(2u32));
    assert_eq!(table_map(&t[0]), vec![(0, 1)]);
    let squares = ValuedDomain::new(md(5), [(1, 2), (4, 2)]).unwrap();
    let t = count_dp(&squares, 2).unwrap();
    assert_eq!(t[2].get(0), &BigUint::from(4u32));
}

#[test]
fn genfun_examples() {
    let t = count_genfun(&ValuedDomain::from_set(md(7), &[3]).unwrap(), 1).unwrap();
    assert_eq!(table_map(&t[1]), vec![(3, 1)]);
    let squares = ValuedDomain::new(md(5), [(1, 2), (4, 2)]).unwrap();
    let t = count_genfun(&squares, 2).unwrap();
    assert_eq!(table_map(&t[2]), vec![(0, 4), (2, 1), (3, 1)]);
    let t = count_genfun(&ValuedDomain::units(md(5)), 4).unwrap();
    assert_eq!(table_map(&t[4]), vec![(0, 1)]);
}

#[test]
fn newton_examples() {
    let units = ValuedDomain::units(md(5));
    assert_eq!(count_newton(&units, 2).unwrap(), count_dp(&units, 2).unwrap());
    let single = ValuedDomain::new(md(11), [(6, 1)]).unwrap();
    assert_eq!(table_map(&count_newton(&single, 1).unwrap()[1]), vec![(6, 1)]);
    let squares = ValuedDomain::new(md(5), [(1, 2), (4, 2)]).unwrap();
    let t = count_newton(&squares, 3).unwrap();
    assert_eq!(table_map(&t[3]), vec![(1, 2), (4, 2)]);
}

#[test]
fn odlyzko_stanley_examples() {
    let t = count_odlyzko_stanley(md(5), 2, 2).unwrap();
    assert_eq!(table_map(&t), vec![(0, 4), (2, 1), (3, 1)]);
    let t = count_odlyzko_stanley(md(5), 1, 2).unwrap();
    assert_eq!(table_map(&t), vec![(0, 2), (1, 1), (2, 1), (3, 1), (4, 1)]);
    let t = count_odlyzko_stanley(md(7), 6, 3).unwrap();
    assert_eq!(table_map(&t), vec![(3, 20)]);
    assert_eq!(
        count_odlyzko_stanley(md(5), 2, 5),
        Err(Error::KOutOfRange { k: 5, n: 4 })
    );
}

#[test]
fn k_beyond_domain_is_rejected() {
    let d = ValuedDomain::from_set(md(7), &[1, 2]).unwrap();
    for alg in Algorithm::ALL {
        assert_eq!(alg.run(&d, 3), Err(Error::KOutOfRange { k: 3, n: 2 }));
    }
}

#[test]
fn totals_examples() {
    let t = total_count(md(3), 1).unwrap();
    assert_eq!(t, [2u32, 1, 1].map(BigUint::from).to_vec());
    let t = total_count(md(5), 4).unwrap();
    // only the empty set sums to 0: C(4, 5) does not exist
    assert_eq!(t, [1u32, 4, 6, 4, 1].map(BigUint::from).to_vec());
    let t = total_count(md(5), 1).unwrap();
    assert_eq!(t, [4u32, 3, 3, 3, 3].map(BigUint::from).to_vec());
    for p in [3u64, 5, 7, 11, 13, 31] {
        for m in md(p).group_order_divisors() {
            let t = total_count(md(p), m).unwrap();
            assert_eq!(t.iter().sum::<BigUint>(), BigUint::from(1u32) << (p - 1));
            // totals are the k-sum of the per-k tables
            let per_k = count_odlyzko_stanley_upto(md(p), m, p as usize - 1).unwrap();
            for b in 0..p {
                let s: BigUint = per_k.iter().map(|tab| tab.get(b).clone()).sum();
                assert_eq!(&s, &t[b as usize]);
            }
        }
    }
}

#[test]
fn audit_examples() {
    let rows = decomposition_audit(md(5), 2, 2).unwrap();
    let r0 = &rows[0];
    assert_eq!((u64::try_from(&r0.claimed).unwrap(), u64::try_from(&r0.actual).unwrap()), (4, 4));
    assert_eq!(rows[2].claimed, BigUint::from(0u32));
    assert_eq!(rows[2].actual, BigUint::from(1u32));
    assert_eq!(rows[2].diff(), (-1).into());
    assert_eq!(rows[3].diff(), (-1).into());
    for row in decomposition_audit(md(5), 1, 2).unwrap() {
        assert_eq!(row.diff(), 0.into());
    }
    assert_eq!(
        decomposition_audit(md(7), 4, 2),
        Err(Error::ExponentNotDivisor { m: 4, p: 7, gcd: 2 })
    );
}

#[test]
fn audit_totals_match_binomial() {
    // the lifting expansion preserves the total even where residues shift
    for p in [5u64, 7, 11, 13] {
        for m in md(p).group_order_divisors() {
            for k in 0..p as usize {
                let rows = decomposition_audit(md(p), m, k).unwrap();
                let claimed: BigUint = rows.iter().map(|r| r.claimed.clone()).sum();
                assert_eq!(claimed, binomial(BigUint::from(p - 1), BigUint::from(k)));
            }
        }
    }
}

#[test]
fn three_algorithms_agree_with_enumeration() {
    for p in [3u64, 5, 7, 11, 13] {
        for m in md(p).group_order_divisors() {
            let expect = brute_force_powers(p, m);
            let domain = ValuedDomain::power_image(&PowerResidueStructure::new(md(p), m).unwrap());
            let k_max = p as usize - 1;
            for alg in Algorithm::ALL {
                let got = as_u64(&alg.run(&domain, k_max).unwrap());
                assert_eq!(got, expect, "p={p} m={m} {alg}");
            }
        }
    }
}

#[test]
fn symmetry_reduction_matches_plain_recurrence() {
    for p in [7u64, 13, 17, 31] {
        for m in md(p).group_order_divisors() {
            let domain = ValuedDomain::power_image(&PowerResidueStructure::new(md(p), m).unwrap());
            let sym = Symmetry::of(&domain);
            let s = (p - 1) / m;
            assert_eq!(sym.orbit_count() as u64, 1 + (p - 1) / sym.stabilizer_order());
            assert_eq!(sym.stabilizer_order() % s, 0);
            let k_max = 6.min(p as usize - 1);
            let reduced = count_newton(&domain, k_max).unwrap();
            let plain = count_newton_with(&domain, k_max, &Symmetry::trivial(md(p))).unwrap();
            assert_eq!(reduced, plain);
        }
    }
}

#[test]
fn complement_symmetry() {
    for p in [5u64, 7, 11, 13] {
        for m in 1..p {
            let t = power_sum_of_units(md(p), m);
            let tables = count_odlyzko_stanley_upto(md(p), m, p as usize - 1).unwrap();
            for k in 0..p as usize {
                for b in 0..p {
                    let other = md(p).sub(t, b);
                    assert_eq!(tables[k].get(b), tables[p as usize - 1 - k].get(other), "p={p} m={m} k={k} b={b}");
                }
            }
        }
    }
}

#[test]
fn dilation_symmetry() {
    for p in [7u64, 11, 13] {
        let modulus = md(p);
        for m in 1..p {
            let tables = count_odlyzko_stanley_upto(modulus, m, p as usize - 1).unwrap();
            for c in 2..p {
                let cm = modulus.pow(c, m);
                for t in &tables {
                    for b in 0..p {
                        assert_eq!(t.get(b), t.get(modulus.mul(cm, b)));
                    }
                }
            }
        }
    }
}

fn arb_domain() -> impl Strategy<Value = ValuedDomain> {
    prop::sample::select(vec![3u64, 5, 7, 11, 13, 17]).prop_flat_map(|p| {
        prop::collection::btree_map(0..p, 1u64..3, 1..7).prop_map(move |items| {
            ValuedDomain::new(md(p), items).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn algorithms_agree_on_multisets(domain in arb_domain()) {
        let n = domain.size();
        let expect = brute_force(&domain);
        let newton = count_newton(&domain, n).unwrap();
        prop_assert_eq!(as_u64(&newton), expect);
        prop_assert_eq!(&count_dp(&domain, n).unwrap(), &newton);
        prop_assert_eq!(&count_genfun(&domain, n).unwrap(), &newton);
    }

    #[test]
    fn conservation_and_edges(domain in arb_domain()) {
        let n = domain.size();
        let tables = count_newton(&domain, n).unwrap();
        let mut grand = BigUint::from(0u32);
        for t in &tables {
            prop_assert_eq!(t.total(), binomial(BigUint::from(n), BigUint::from(t.k())));
            grand += t.total();
        }
        prop_assert_eq!(grand, BigUint::from(1u32) << n);
        prop_assert_eq!(table_map(&tables[0]), vec![(0, 1)]);
        for b in 0..domain.modulus().value() {
            prop_assert_eq!(tables[1].get(b), &BigUint::from(domain.multiplicity(b)));
        }
    }
}

#[test]
fn domain_validation() {
    assert_eq!(
        ValuedDomain::from_set(md(7), &[1, 8]),
        Err(Error::DuplicateValue { value: 1 })
    );
    assert_eq!(
        ValuedDomain::new(md(7), [(2, 0)]),
        Err(Error::ZeroMultiplicity { value: 2 })
    );
    let d = ValuedDomain::new(md(7), [(5, 1), (0, 2), (3, 1)]).unwrap();
    assert_eq!(d.items(), &[(0, 2), (3, 1), (5, 1)]);
    assert_eq!(d.size(), 4);
    assert!(!d.is_subset_of_units());
    assert!(ValuedDomain::units(md(7)).is_subset_of_units());
    assert_eq!(d.to_string(), "0:2,3,5");
}
