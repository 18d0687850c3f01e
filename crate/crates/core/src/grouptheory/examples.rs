//! Small permutation groups used as fixtures for `verify_lbob` and `ti_check`.
//!
//! All constructions use fixed, valid data and panic only on internal bugs.

use super::{FiniteGroupTable, GroupAction, Permutation};

pub fn perm(len: usize, cycles: &[&[u32]]) -> Permutation {
    Permutation::from_cycles(len, cycles).expect("valid cycles")
}

pub fn group(gens: &[Permutation]) -> FiniteGroupTable {
    FiniteGroupTable::closure(gens, 10_000).expect("small group")
}

/// Affine maps on F_p^d, encoded as permutations of the p^d vectors
/// (vector (v_0, ..) has index sum v_i p^i).
pub fn vector_perm(p: u32, d: u32, f: impl Fn(&[u32]) -> Vec<u32>) -> Permutation {
    let size = p.pow(d);
    let images = (0..size)
        .map(|k| {
            let v: Vec<u32> = (0..d).map(|i| k / p.pow(i) % p).collect();
            f(&v).iter().enumerate().map(|(i, &c)| (c % p) * p.pow(i as u32)).sum()
        })
        .collect();
    Permutation::from_images(images).expect("affine maps are bijections")
}

/// The regular translation group of F_p^d.
pub fn translations(p: u32, d: u32) -> FiniteGroupTable {
    let gens: Vec<Permutation> = (0..d)
        .map(|j| {
            vector_perm(p, d, |v| {
                v.iter()
                    .enumerate()
                    .map(|(i, &c)| if i as u32 == j { c + 1 } else { c })
                    .collect()
            })
        })
        .collect();
    group(&gens)
}

pub fn klein_four() -> FiniteGroupTable {
    group(&[perm(4, &[&[0, 1], &[2, 3]]), perm(4, &[&[0, 2], &[1, 3]])])
}

/// (Z/2)^2 acting on (Z/3)^2 by sign changes of each coordinate.
pub fn sign_flip_instance() -> (FiniteGroupTable, FiniteGroupTable, GroupAction) {
    let r = translations(3, 2);
    let flip_a = vector_perm(3, 2, |v| vec![3 - v[0], v[1]]);
    let flip_b = vector_perm(3, 2, |v| vec![v[0], 3 - v[1]]);
    let q = group(&[flip_a, flip_b]);
    let action = GroupAction::by_conjugation(q.clone(), &r).expect("q normalizes r");
    (q, r, action)
}

/// (Z/2)^2 acting trivially on Z/5.
pub fn trivial_instance() -> (FiniteGroupTable, FiniteGroupTable, GroupAction) {
    let q = klein_four();
    let r = group(&[perm(5, &[&[0, 1, 2, 3, 4]])]);
    let action = GroupAction::trivial(q.clone(), r.order());
    (q, r, action)
}

/// (Z/3)^2 acting on F_4 × F_4 = (Z/2)^4, each factor by multiplication
/// with a cube root of unity: (a, b) -> (b, a + b) on F_4 = F_2^2.
pub fn cube_root_instance() -> (FiniteGroupTable, FiniteGroupTable, GroupAction) {
    let r = translations(2, 4);
    let w1 = vector_perm(2, 4, |v| vec![v[1], v[0] + v[1], v[2], v[3]]);
    let w2 = vector_perm(2, 4, |v| vec![v[0], v[1], v[3], v[2] + v[3]]);
    let q = group(&[w1, w2]);
    let action = GroupAction::by_conjugation(q.clone(), &r).expect("q normalizes r");
    (q, r, action)
}

pub fn a5_with_sylow2() -> (FiniteGroupTable, FiniteGroupTable) {
    let a5 = group(&[perm(5, &[&[0, 1, 2, 3, 4]]), perm(5, &[&[0, 1, 2]])]);
    let sylow = a5
        .subgroup(&[perm(5, &[&[0, 1], &[2, 3]]), perm(5, &[&[0, 2], &[1, 3]])])
        .expect("inside A5");
    (a5, sylow)
}

pub fn s4_with_d8() -> (FiniteGroupTable, FiniteGroupTable) {
    let s4 = group(&[perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 1]])]);
    let d8 = s4.subgroup(&[perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 2]])]).expect("inside S4");
    (s4, d8)
}
