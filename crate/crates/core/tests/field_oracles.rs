//! Field operations checked against exhaustive enumeration of the field.

use std::collections::HashSet;

use maximal_curves::{AdditiveKind, FieldElem, FieldTower};
use proptest::prelude::*;

fn brute_roots(t: &FieldTower, f: impl Fn(&FieldElem) -> bool) -> HashSet<FieldElem> {
    t.elements().filter(|e| f(e)).collect()
}

#[test]
fn quadratic_subfield_membership_counts() {
    let t = FieldTower::build(2, 1, 3).unwrap();
    assert_eq!(t.elements().filter(|e| t.in_subfield(e, 4).unwrap()).count(), 4);
    let t = FieldTower::build(3, 1, 3).unwrap();
    assert_eq!(t.elements().filter(|e| t.in_subfield(e, 9).unwrap()).count(), 9);
}

#[test]
fn enumerate_subfield_matches_fixed_point_scan() {
    let t = FieldTower::build(2, 1, 3).unwrap();
    let f2: HashSet<_> = t.enumerate_subfield(2).unwrap().into_iter().collect();
    assert_eq!(f2, HashSet::from([t.zero(), t.one()]));

    for s in [4u64, 8, 64] {
        let listed: Vec<_> = t.enumerate_subfield(s).unwrap();
        let set: HashSet<_> = listed.iter().cloned().collect();
        assert_eq!(listed.len() as u64, s);
        assert_eq!(set.len() as u64, s);
        let scanned = brute_roots(&t, |e| t.pow_u64(e, s) == *e);
        assert_eq!(set, scanned);
        // closed under + and *
        for a in &listed {
            for b in &listed {
                assert!(set.contains(&t.add(a, b)));
                assert!(set.contains(&t.mul(a, b)));
            }
        }
    }

    let t = FieldTower::build(3, 1, 3).unwrap();
    assert_eq!(t.enumerate_subfield(9).unwrap().len(), 9);
    assert_eq!(t.enumerate_subfield(27).unwrap().len(), 27);
}

#[test]
fn trace_zero_count_equals_q() {
    for (p, expected) in [(2u32, 2usize), (3, 3)] {
        let t = FieldTower::build(p, 1, 3).unwrap();
        let q2 = t.q() * t.q();
        let zeros = t
            .enumerate_subfield(q2)
            .unwrap()
            .iter()
            .filter(|a| t.trace_subfield(a).unwrap().is_zero())
            .count();
        assert_eq!(zeros, expected);
        for a in t.enumerate_subfield(q2).unwrap() {
            assert!(t.in_subfield(&t.trace_subfield(&a).unwrap(), t.q()).unwrap());
        }
    }
}

#[test]
fn additive_solutions_match_brute_force() {
    for (p, h, n) in [(2, 1, 3), (3, 1, 3)] {
        let t = FieldTower::build(p, h, n).unwrap();
        let q = t.q();
        let kernel_q = t.solve_additive(AdditiveKind::AsQ, &t.zero());
        assert_eq!(kernel_q.len() as u64, q);
        let kernel_q2: HashSet<_> = t.solve_additive(AdditiveKind::AsQ2, &t.zero()).into_iter().collect();
        assert_eq!(kernel_q2, t.enumerate_subfield(q * q).unwrap().into_iter().collect());

        // partition: every x lands in exactly one fiber
        let mut total = 0u64;
        for c in t.elements() {
            let sols: HashSet<_> = t.solve_additive(AdditiveKind::AsQ, &c).into_iter().collect();
            let brute = brute_roots(&t, |x| t.add(&t.pow_u64(x, q), x) == c);
            assert_eq!(sols, brute);
            assert_eq!(t.count_additive(AdditiveKind::AsQ, &c), sols.len() as u64);
            total += sols.len() as u64;
        }
        assert_eq!(total, t.size());
    }
}

#[test]
fn as_q_kernel_over_f64_is_prime_field() {
    let t = FieldTower::build(2, 1, 3).unwrap();
    let sols: HashSet<_> = t.solve_additive(AdditiveKind::AsQ, &t.zero()).into_iter().collect();
    assert_eq!(sols, HashSet::from([t.zero(), t.one()]));
}

#[test]
fn kummer_solutions_match_brute_force() {
    let t = FieldTower::build(2, 1, 3).unwrap();
    assert_eq!(t.solve_kummer(3, &t.zero()).unwrap(), vec![t.zero()]);
    let cube_roots: HashSet<_> = t.solve_kummer(3, &t.one()).unwrap().into_iter().collect();
    assert_eq!(cube_roots, brute_roots(&t, |z| t.pow_u64(z, 3) == t.one()));
    assert_eq!(cube_roots.len(), 3);
    for c in t.elements() {
        for m in [3u64, 7, 9, 21, 63] {
            let sols: HashSet<_> = t.solve_kummer(m, &c).unwrap().into_iter().collect();
            assert_eq!(sols, brute_roots(&t, |z| t.pow_u64(z, m) == c), "m={m}");
        }
    }

    let t = FieldTower::build(3, 1, 3).unwrap();
    let mut solvable = 0;
    for c in t.elements().filter(|c| !c.is_zero()) {
        let sols = t.solve_kummer(7, &c).unwrap();
        assert!(sols.is_empty() || sols.len() == 7);
        for z in &sols {
            assert_eq!(t.pow_u64(z, 7), c);
        }
        if !sols.is_empty() {
            solvable += 1;
        }
    }
    assert_eq!(solvable, 728 / 7);
}

#[test]
fn roots_of_unity_have_exact_order() {
    let t = FieldTower::build(2, 1, 3).unwrap();
    assert_eq!(t.multiplicative_order(&t.root_of_unity(9).unwrap()).unwrap(), 9);
    let t = FieldTower::build(3, 1, 3).unwrap();
    let z = t.root_of_unity(56).unwrap();
    // order check by powering
    let first_one = (1..=56).find(|&k| t.pow_u64(&z, k) == t.one());
    assert_eq!(first_one, Some(56));
}

#[test]
fn towers_are_deterministic() {
    for (p, h, n) in [(2, 1, 3), (3, 1, 3), (2, 1, 5), (2, 2, 3)] {
        let a = FieldTower::build(p, h, n).unwrap().description();
        let b = FieldTower::build(p, h, n).unwrap().description();
        assert_eq!(a, b);
    }
}

#[test]
fn tower_description_json_shape() {
    let t = FieldTower::build(2, 1, 3).unwrap();
    let v = serde_json::to_value(t.description()).unwrap();
    assert_eq!(v["p"], 2);
    assert_eq!(v["n"], 3);
    assert_eq!(v["modulus"].as_array().unwrap().len(), 7);
    assert_eq!(v["primitive"].as_array().unwrap().len(), 6);
    let e = serde_json::to_value(t.primitive()).unwrap();
    assert!(e.is_array());
}

proptest! {
    #[test]
    fn field_axioms_hold(a in 0u64..729, b in 0u64..729, c in 0u64..729) {
        let t = FieldTower::build(3, 1, 3).unwrap();
        let (a, b, c) = (t.element(a), t.element(b), t.element(c));
        prop_assert_eq!(t.mul(&a, &t.add(&b, &c)), t.add(&t.mul(&a, &b), &t.mul(&a, &c)));
        prop_assert_eq!(t.mul(&t.mul(&a, &b), &c), t.mul(&a, &t.mul(&b, &c)));
        prop_assert_eq!(t.add(&a, &t.neg(&a)), t.zero());
        if !a.is_zero() {
            prop_assert_eq!(t.mul(&a, &t.inv(&a).unwrap()), t.one());
        }
        prop_assert_eq!(t.pow_u64(&a, 729), a.clone());
    }

    #[test]
    fn frobenius_is_a_ring_homomorphism(a in 0u64..1024, b in 0u64..1024, k in 0usize..12) {
        let t = FieldTower::build(2, 1, 5).unwrap();
        let (a, b) = (t.element(a), t.element(b));
        prop_assert_eq!(t.frobenius(&t.add(&a, &b), k), t.add(&t.frobenius(&a, k), &t.frobenius(&b, k)));
        prop_assert_eq!(t.frobenius(&t.mul(&a, &b), k), t.mul(&t.frobenius(&a, k), &t.frobenius(&b, k)));
        prop_assert_eq!(t.frobenius(&a, 10), a);
    }
}
