//! Brute-force machinery for small finite groups.
//!
//! Algorithms are written against [`GroupLaw`], so the same closure,
//! center, exponent and derived-subgroup code runs on permutation groups
//! ([`FiniteGroupTable`]) and on the semidirect product of the `autgroup`
//! module. Composition is function composition: `compose(a, b)` acts as
//! `a` after `b`.

mod checks;
pub mod examples;
mod perm;

use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::Hash;

use crate::error::{Error, Result};

pub use checks::{ti_check, unique_fixed_point_profile, verify_lbob};
pub use perm::{FiniteGroupTable, GroupAction, PermLaw, Permutation};

/// Default cap on group sizes produced by closure.
pub const DEFAULT_GROUP_BUDGET: u64 = 1_000_000;

pub trait GroupLaw {
    type Elem: Clone + Eq + Hash;

    fn identity(&self) -> Self::Elem;
    fn compose(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;

    /// `a^-1 b^-1 a b`
    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let ai = self.inverse(a);
        let bi = self.inverse(b);
        self.compose(&self.compose(&ai, &bi), &self.compose(a, b))
    }

    /// `y^-1 g y`
    fn conjugate(&self, g: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.compose(&self.compose(&self.inverse(y), g), y)
    }

    fn power(&self, g: &Self::Elem, mut k: u64) -> Self::Elem {
        let mut base = g.clone();
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.compose(&acc, &base);
            }
            base = self.compose(&base, &base);
            k >>= 1;
        }
        acc
    }
}

/// Subgroup generated by `gens`, by breadth-first search on right
/// multiplication. Identity first; order of the rest is deterministic.
pub fn generate<L: GroupLaw>(law: &L, gens: &[L::Elem], budget: u64) -> Result<Vec<L::Elem>> {
    let id = law.identity();
    let mut seen: HashSet<L::Elem> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = law.compose(&g, s);
            if seen.insert(h.clone()) {
                if seen.len() as u64 > budget {
                    return Err(Error::BudgetExceeded {
                        needed: seen.len() as u64,
                        budget,
                    });
                }
                out.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(out)
}

/// A small generating set, chosen greedily in the order of `elems`.
pub fn select_generators<L: GroupLaw>(law: &L, elems: &[L::Elem]) -> Vec<L::Elem> {
    let mut gens = Vec::new();
    let mut span: HashSet<L::Elem> = HashSet::from([law.identity()]);
    for g in elems {
        if span.contains(g) {
            continue;
        }
        gens.push(g.clone());
        span = generate(law, &gens, u64::MAX).expect("unbounded").into_iter().collect();
        if span.len() == elems.len() {
            break;
        }
    }
    gens
}

pub fn element_order<L: GroupLaw>(law: &L, g: &L::Elem) -> u64 {
    let id = law.identity();
    let mut acc = g.clone();
    let mut k = 1;
    while acc != id {
        acc = law.compose(&acc, g);
        k += 1;
    }
    k
}

/// Least common multiple of the element orders.
pub fn exponent<L: GroupLaw>(law: &L, elems: &[L::Elem]) -> u64 {
    elems
        .iter()
        .map(|g| element_order(law, g))
        .fold(1, num_integer::lcm)
}

pub fn commutes<L: GroupLaw>(law: &L, a: &L::Elem, b: &L::Elem) -> bool {
    law.compose(a, b) == law.compose(b, a)
}

pub fn is_abelian<L: GroupLaw>(law: &L, gens: &[L::Elem]) -> bool {
    gens.iter().all(|a| gens.iter().all(|b| commutes(law, a, b)))
}

/// Elements of `elems` commuting with every generator of the group.
pub fn center<L: GroupLaw>(law: &L, elems: &[L::Elem], gens: &[L::Elem]) -> Vec<L::Elem> {
    elems
        .iter()
        .filter(|g| gens.iter().all(|s| commutes(law, g, s)))
        .cloned()
        .collect()
}

pub fn centralizer<L: GroupLaw>(law: &L, elems: &[L::Elem], g: &L::Elem) -> Vec<L::Elem> {
    elems.iter().filter(|x| commutes(law, x, g)).cloned().collect()
}

/// `{y : y^-1 H y = H}`.
pub fn normalizer<L: GroupLaw>(law: &L, elems: &[L::Elem], subgroup: &[L::Elem]) -> Vec<L::Elem> {
    let set: HashSet<&L::Elem> = subgroup.iter().collect();
    elems
        .iter()
        .filter(|y| subgroup.iter().all(|h| set.contains(&law.conjugate(h, y))))
        .cloned()
        .collect()
}

/// Smallest subgroup containing `seeds` and normalized by `group_gens`.
pub fn normal_closure<L: GroupLaw>(
    law: &L,
    seeds: &[L::Elem],
    group_gens: &[L::Elem],
    budget: u64,
) -> Result<Vec<L::Elem>> {
    let mut gens: Vec<L::Elem> = seeds.to_vec();
    loop {
        let sub = generate(law, &gens, budget)?;
        let set: HashSet<&L::Elem> = sub.iter().collect();
        let missing: Vec<L::Elem> = gens
            .iter()
            .flat_map(|g| group_gens.iter().map(move |y| (g, y)))
            .map(|(g, y)| law.conjugate(g, y))
            .filter(|c| !set.contains(c))
            .collect();
        if missing.is_empty() {
            return Ok(sub);
        }
        gens.extend(missing);
    }
}

/// Commutator subgroup: normal closure of the generator commutators.
pub fn derived_subgroup<L: GroupLaw>(law: &L, gens: &[L::Elem], budget: u64) -> Result<Vec<L::Elem>> {
    let seeds: Vec<L::Elem> = gens
        .iter()
        .flat_map(|a| gens.iter().map(move |b| (a, b)))
        .map(|(a, b)| law.commutator(a, b))
        .collect();
    normal_closure(law, &seeds, gens, budget)
}

/// Cosets of a normal subgroup, as a multiplication table on coset indices.
#[derive(Clone, Debug)]
pub struct QuotientTable {
    pub coset_of: Vec<usize>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl QuotientTable {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order())
            .map(|a| {
                let mut acc = a;
                let mut k = 1u64;
                while acc != self.identity {
                    acc = self.table[acc][a];
                    k += 1;
                }
                k
            })
            .fold(1, num_integer::lcm)
    }
}

/// `G/N` for `N` normal in `G`; `elems` must list all of `G`.
pub fn quotient<L: GroupLaw>(law: &L, elems: &[L::Elem], normal: &[L::Elem]) -> Result<QuotientTable> {
    let index: HashMap<&L::Elem, usize> = elems.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut coset_of = vec![usize::MAX; elems.len()];
    let mut reps: Vec<usize> = Vec::new();
    for (i, g) in elems.iter().enumerate() {
        if coset_of[i] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(i);
        for nrm in normal {
            let j = index[&law.compose(g, nrm)];
            coset_of[j] = c;
        }
    }
    let table: Vec<Vec<usize>> = reps
        .iter()
        .map(|&a| {
            reps.iter()
                .map(|&b| coset_of[index[&law.compose(&elems[a], &elems[b])]])
                .collect()
        })
        .collect();
    // well-definedness on a sample of right factors
    for (i, g) in elems.iter().enumerate() {
        for (j, h) in elems.iter().enumerate().step_by((elems.len() / 64).max(1)) {
            let lhs = coset_of[index[&law.compose(g, h)]];
            if lhs != table[coset_of[i]][coset_of[j]] {
                return Err(Error::HypothesisViolated("subgroup is not normal".into()));
            }
        }
    }
    let identity = coset_of[index[&law.identity()]];
    Ok(QuotientTable {
        coset_of,
        table,
        identity,
    })
}
