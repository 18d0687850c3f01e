use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{generate, GroupLaw};
use crate::error::{Error, Result};

/// A bijection of `0..len`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(len: usize) -> Self {
        Permutation((0..len as u32).collect())
    }

    /// Checks that `images` is a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen
                .get_mut(i as usize)
                .ok_or_else(|| Error::HypothesisViolated(format!("image {i} out of range")))?;
            if std::mem::replace(slot, true) {
                return Err(Error::HypothesisViolated(format!("image {i} repeated")));
            }
        }
        Ok(Permutation(images))
    }

    /// Product of disjoint cycles on `0..len`.
    pub fn from_cycles(len: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..len as u32).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                *images
                    .get_mut(a as usize)
                    .ok_or_else(|| Error::HypothesisViolated(format!("point {a} out of range")))? = b;
            }
        }
        Self::from_images(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation(inv)
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|(i, &j)| *i as u32 == j).count()
    }
}

/// The symmetric group on `degree` points.
#[derive(Clone, Copy, Debug)]
pub struct PermLaw {
    pub degree: usize,
}

impl GroupLaw for PermLaw {
    type Elem = Permutation;

    fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn compose(&self, a: &Permutation, b: &Permutation) -> Permutation {
        a.compose(b)
    }

    fn inverse(&self, a: &Permutation) -> Permutation {
        a.inverse()
    }
}

/// An enumerated permutation group.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    generators: Vec<Permutation>,
}

impl FiniteGroupTable {
    /// Closure of the generators; all must act on the same number of points.
    pub fn closure(generators: &[Permutation], budget: u64) -> Result<Self> {
        let degree = generators.first().map_or(0, Permutation::len);
        if generators.iter().any(|g| g.len() != degree) {
            return Err(Error::HypothesisViolated("generators act on different sets".into()));
        }
        let law = PermLaw { degree };
        let elements = generate(&law, generators, budget)?;
        Ok(Self::from_elements(degree, elements, generators.to_vec()))
    }

    fn from_elements(degree: usize, elements: Vec<Permutation>, generators: Vec<Permutation>) -> Self {
        let index = elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        FiniteGroupTable {
            degree,
            elements,
            index,
            generators,
        }
    }

    pub fn law(&self) -> PermLaw {
        PermLaw { degree: self.degree }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.index.contains_key(g)
    }

    pub fn identity_index(&self) -> usize {
        self.index[&Permutation::identity(self.degree)]
    }

    /// Subgroup generated by some elements of this group.
    pub fn subgroup(&self, gens: &[Permutation]) -> Result<FiniteGroupTable> {
        if let Some(g) = gens.iter().find(|g| !self.contains(g)) {
            return Err(Error::HypothesisViolated(format!("{g:?} is not in the group")));
        }
        if gens.is_empty() {
            let id = Permutation::identity(self.degree);
            return Ok(Self::from_elements(self.degree, vec![id], Vec::new()));
        }
        Self::closure(gens, self.order() as u64)
    }

    fn subgroup_from_elements(&self, elements: Vec<Permutation>) -> FiniteGroupTable {
        let gens = super::select_generators(&self.law(), &elements);
        Self::from_elements(self.degree, elements, gens)
    }

    pub fn center(&self) -> FiniteGroupTable {
        let elems = super::center(&self.law(), &self.elements, &self.generators);
        self.subgroup_from_elements(elems)
    }

    pub fn derived_subgroup(&self) -> Result<FiniteGroupTable> {
        let elems = super::derived_subgroup(&self.law(), &self.generators, self.order() as u64)?;
        Ok(self.subgroup_from_elements(elems))
    }

    pub fn exponent(&self) -> u64 {
        super::exponent(&self.law(), &self.elements)
    }

    pub fn centralizer(&self, g: &Permutation) -> FiniteGroupTable {
        self.subgroup_from_elements(super::centralizer(&self.law(), &self.elements, g))
    }

    pub fn normalizer(&self, subgroup: &FiniteGroupTable) -> FiniteGroupTable {
        self.subgroup_from_elements(super::normalizer(&self.law(), &self.elements, subgroup.elements()))
    }

    pub fn is_abelian(&self) -> bool {
        super::is_abelian(&self.law(), &self.generators)
    }
}

/// A group acting on `0..domain_size`, with the action tabulated per element.
#[derive(Clone, Debug)]
pub struct GroupAction {
    group: FiniteGroupTable,
    domain_size: usize,
    // images[g][x] for g indexed as in group.elements()
    images: Vec<Vec<u32>>,
}

impl GroupAction {
    /// Tabulates `apply` and checks it is an action: the identity acts
    /// trivially and `(g h).x = g.(h.x)` for every generator `g`.
    pub fn new(
        group: FiniteGroupTable,
        domain_size: usize,
        apply: impl Fn(&Permutation, usize) -> usize,
    ) -> Result<Self> {
        let images: Vec<Vec<u32>> = group
            .elements()
            .iter()
            .map(|g| (0..domain_size).map(|x| apply(g, x) as u32).collect())
            .collect();
        let action = GroupAction {
            group,
            domain_size,
            images,
        };
        action.validate()?;
        Ok(action)
    }

    /// The permutation group acting on its own points.
    pub fn natural(group: FiniteGroupTable) -> Self {
        let domain_size = group.degree();
        let images = group.elements().iter().map(|g| g.images().to_vec()).collect();
        GroupAction {
            group,
            domain_size,
            images,
        }
    }

    pub fn trivial(group: FiniteGroupTable, domain_size: usize) -> Self {
        let images = vec![(0..domain_size as u32).collect(); group.order()];
        GroupAction {
            group,
            domain_size,
            images,
        }
    }

    /// `actor` acting on the elements of `target` by `h . r = h r h^-1`.
    /// Both are permutation groups on the same points and `actor`
    /// must normalize `target`.
    pub fn by_conjugation(actor: FiniteGroupTable, target: &FiniteGroupTable) -> Result<Self> {
        if actor.degree() != target.degree() {
            return Err(Error::HypothesisViolated("groups act on different sets".into()));
        }
        let mut images = Vec::with_capacity(actor.order());
        for h in actor.elements() {
            let hi = h.inverse();
            let row = target
                .elements()
                .iter()
                .map(|r| {
                    target
                        .index_of(&h.compose(r).compose(&hi))
                        .map(|i| i as u32)
                        .ok_or_else(|| Error::HypothesisViolated("actor does not normalize target".into()))
                })
                .collect::<Result<Vec<u32>>>()?;
            images.push(row);
        }
        Ok(GroupAction {
            group: actor,
            domain_size: target.order(),
            images,
        })
    }

    fn validate(&self) -> Result<()> {
        let id = self.group.identity_index();
        if self.images[id].iter().enumerate().any(|(x, &y)| x as u32 != y) {
            return Err(Error::HypothesisViolated("identity moves a point".into()));
        }
        for g in self.group.generators() {
            let gi = self.group.index_of(g).expect("generator in group");
            for (hi, h) in self.group.elements().iter().enumerate() {
                let gh = self.group.index_of(&g.compose(h)).expect("closed");
                for x in 0..self.domain_size {
                    let lhs = self.images[gh][x];
                    let rhs = self.images[gi][self.images[hi][x] as usize];
                    if lhs != rhs {
                        return Err(Error::HypothesisViolated("not compatible with composition".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteGroupTable {
        &self.group
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    /// Image of `x` under the element with index `g`.
    pub fn apply_index(&self, g: usize, x: usize) -> usize {
        self.images[g][x] as usize
    }

    pub fn apply(&self, g: &Permutation, x: usize) -> Option<usize> {
        self.group.index_of(g).map(|i| self.apply_index(i, x))
    }

    pub fn fixed_points(&self, g: usize) -> usize {
        self.images[g].iter().enumerate().filter(|(x, &y)| *x as u32 == y).count()
    }
}
