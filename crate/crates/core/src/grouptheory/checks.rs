use std::collections::HashSet;

use super::{generate, FiniteGroupTable, GroupAction, GroupLaw, Permutation};
use crate::error::{Error, Result};

fn prime_power_base(n: usize) -> Option<usize> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

// A p-group that is neither cyclic nor generalized quaternion is exactly one
// with an elementary abelian subgroup of order p^2.
fn has_elementary_abelian_p2(group: &FiniteGroupTable, p: usize) -> bool {
    let law = group.law();
    let order_p: Vec<&Permutation> = group
        .elements()
        .iter()
        .filter(|g| super::element_order(&law, *g) == p as u64)
        .collect();
    order_p.iter().any(|a| {
        let cyclic: HashSet<Permutation> = (0..p as u64).map(|k| law.power(a, k)).collect();
        order_p
            .iter()
            .any(|b| !cyclic.contains(*b) && super::commutes(&law, a, b))
    })
}

/// Checks that the fixed-point subgroups `C_R(h)`, `h != 1` in `Q`,
/// together generate `R`.
///
/// `action` is the action of `q_group` on the elements of `r_group`
/// (domain index = element index of `r_group`). Returns
/// `HypothesisViolated` when `Q` is not a p-group with an elementary
/// abelian subgroup of order `p^2`, when `p` divides `|R|`, or when `Q`
/// does not act by automorphisms.
pub fn verify_lbob(q_group: &FiniteGroupTable, r_group: &FiniteGroupTable, action: &GroupAction) -> Result<bool> {
    let p = prime_power_base(q_group.order())
        .ok_or_else(|| Error::HypothesisViolated(format!("|Q| = {} is not a prime power", q_group.order())))?;
    if r_group.order().is_multiple_of(p) {
        return Err(Error::HypothesisViolated(format!("{p} divides |R| = {}", r_group.order())));
    }
    if !has_elementary_abelian_p2(q_group, p) {
        return Err(Error::HypothesisViolated("Q is cyclic or generalized quaternion".into()));
    }
    let acting = action.group();
    if acting.order() != q_group.order() || q_group.elements().iter().any(|g| !acting.contains(g)) {
        return Err(Error::HypothesisViolated("action is not an action of Q".into()));
    }
    if action.domain_size() != r_group.order() {
        return Err(Error::HypothesisViolated("action domain is not R".into()));
    }

    let r_elems = r_group.elements();
    for h in acting.generators() {
        let hi = acting.index_of(h).expect("generator in group");
        for (i, a) in r_elems.iter().enumerate() {
            for (j, b) in r_elems.iter().enumerate() {
                let ab = r_group.index_of(&a.compose(b)).expect("R closed");
                let lhs = action.apply_index(hi, ab);
                let rhs = r_group
                    .index_of(&r_elems[action.apply_index(hi, i)].compose(&r_elems[action.apply_index(hi, j)]))
                    .expect("R closed");
                if lhs != rhs {
                    return Err(Error::HypothesisViolated("Q does not act by automorphisms".into()));
                }
            }
        }
    }

    let id = acting.identity_index();
    let mut fixed: HashSet<usize> = HashSet::new();
    for g in (0..acting.order()).filter(|&g| g != id) {
        fixed.extend((0..r_group.order()).filter(|&x| action.apply_index(g, x) == x));
    }
    let gens: Vec<Permutation> = fixed.into_iter().map(|x| r_elems[x].clone()).collect();
    let span = generate(&r_group.law(), &gens, r_group.order() as u64)?;
    Ok(span.len() == r_group.order())
}

/// Whether `h` meets each of its conjugates `h^y`, `y` outside the
/// normalizer, only in the identity.
pub fn ti_check(a_group: &FiniteGroupTable, h: &FiniteGroupTable) -> Result<bool> {
    if let Some(g) = h.elements().iter().find(|g| !a_group.contains(g)) {
        return Err(Error::HypothesisViolated(format!("{g:?} is not in A")));
    }
    let law = a_group.law();
    let members: HashSet<&Permutation> = h.elements().iter().collect();
    let normalizer = a_group.normalizer(h);
    let id = law.identity();
    for y in a_group.elements().iter().filter(|y| !normalizer.contains(y)) {
        let meets = h
            .elements()
            .iter()
            .map(|x| law.conjugate(x, y))
            .any(|c| c != id && members.contains(&c));
        if meets {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fixed-point count of every non-identity element of `subgroup` (a
/// subgroup of the acting group), in the subgroup's element order.
pub fn unique_fixed_point_profile(action: &GroupAction, subgroup: &FiniteGroupTable) -> Result<Vec<(Permutation, usize)>> {
    let group = action.group();
    let id = subgroup.law().identity();
    subgroup
        .elements()
        .iter()
        .filter(|g| **g != id)
        .map(|g| {
            let gi = group
                .index_of(g)
                .ok_or_else(|| Error::HypothesisViolated(format!("{g:?} is not in the acting group")))?;
            Ok((g.clone(), action.fixed_points(gi)))
        })
        .collect()
}
