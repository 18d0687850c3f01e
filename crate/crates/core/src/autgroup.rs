//! The group `Γ = Q ⋊ Σ` acting on `C_n`.
//!
//! `Q` consists of the maps `Q_{a,b} : (x, y, z) ↦ (x + b^q y + a, y + b, z)`
//! with `a, b ∈ F_(q^2)` and `a^q + a = b^(q+1)`; `Σ` is the cyclic group
//! of maps `g_ζ : (x, y, z) ↦ (ζ^(q^n+1) x, ζ^m y, ζ z)` for `ζ` a
//! `(q^n+1)(q-1)`-th root of unity. A torus element is stored as the
//! exponent `k` of the fixed root `ζ_0 = root_of_unity((q^n+1)(q-1))`, so
//! `M` (order `m`) and `N` (order `q^n+1`) are the exponents divisible by
//! `q^2 - 1` and `q - 1` respectively.
//!
//! An element of `Γ` is a pair `(u, t)` acting as `t` first, then `u`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::curves::{enumerate_points, is_on_curve, CurveId, CurveParams, CurvePoint};
use crate::error::{Error, Result};
use crate::field::{AdditiveKind, FieldElem};
use crate::grouptheory::{self, GroupLaw, Permutation, DEFAULT_GROUP_BUDGET};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnitaryTranslation {
    pub a: FieldElem,
    pub b: FieldElem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusElement {
    pub k: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GammaElement {
    pub u: UnitaryTranslation,
    pub t: TorusElement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubgroupId {
    Q,
    Z,
    Sigma,
    M,
    N,
    Gamma,
    QxM,
    ZxN,
}

impl SubgroupId {
    pub const ALL: [SubgroupId; 8] = [
        SubgroupId::Q,
        SubgroupId::Z,
        SubgroupId::Sigma,
        SubgroupId::M,
        SubgroupId::N,
        SubgroupId::Gamma,
        SubgroupId::QxM,
        SubgroupId::ZxN,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SubgroupId::Q => "Q",
            SubgroupId::Z => "Z",
            SubgroupId::Sigma => "Sigma",
            SubgroupId::M => "M",
            SubgroupId::N => "N",
            SubgroupId::Gamma => "Gamma",
            SubgroupId::QxM => "QxM",
            SubgroupId::ZxN => "ZxN",
        }
    }

    /// Declared order.
    pub fn order(self, params: &CurveParams) -> u64 {
        let q = params.q();
        let torus = (params.qn() + 1) * (q - 1);
        match self {
            SubgroupId::Q => q.pow(3),
            SubgroupId::Z => q,
            SubgroupId::Sigma => torus,
            SubgroupId::M => params.m(),
            SubgroupId::N => params.qn() + 1,
            SubgroupId::Gamma => q.pow(3) * torus,
            SubgroupId::QxM => q.pow(3) * params.m(),
            SubgroupId::ZxN => q * (params.qn() + 1),
        }
    }
}

impl fmt::Display for SubgroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SubgroupId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SubgroupId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownSubgroup(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub subgroup: SubgroupId,
    pub order: u64,
    pub exponent: u64,
    pub center_order: u64,
    pub is_abelian: bool,
    pub is_elementary_abelian: bool,
    pub derived_subgroup_order: u64,
}

/// Structure of a quotient `G/H`, read off the coset table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub group: SubgroupId,
    pub normal: SubgroupId,
    pub order: u64,
    pub exponent: u64,
    pub is_abelian: bool,
    pub is_elementary_abelian: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub representative: CurvePoint,
    pub size: u64,
}

/// Orbits sorted by size; ties keep the order of first discovery.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDecomposition {
    pub subgroup: SubgroupId,
    pub orbits: Vec<Orbit>,
}

impl OrbitDecomposition {
    pub fn sizes(&self) -> Vec<u64> {
        self.orbits.iter().map(|o| o.size).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupReport {
    pub subgroup: SubgroupId,
    pub order: u64,
    pub exponent: u64,
    pub center_order: u64,
    pub orbit_sizes: Vec<u64>,
}

fn is_prime_u64(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `Γ` for one parameter set, with the torus root and its powers fixed.
#[derive(Clone, Debug)]
pub struct GammaGroup {
    params: CurveParams,
    torus_order: u64,
    zeta: FieldElem,
    // powers of zeta^(q^n+1) (order q-1) and of zeta^m (order q^2-1)
    x_scale: Vec<FieldElem>,
    y_scale: Vec<FieldElem>,
}

impl GammaGroup {
    pub fn new(params: &CurveParams) -> Result<Self> {
        let t = params.tower();
        let q = params.q();
        let torus_order = (params.qn() + 1) * (q - 1);
        let zeta = t.root_of_unity(torus_order)?;
        let zx = t.pow_u64(&zeta, params.qn() + 1);
        let zy = t.pow_u64(&zeta, params.m());
        let powers = |g: &FieldElem, len: u64| {
            let mut out = Vec::with_capacity(len as usize);
            let mut acc = t.one();
            for _ in 0..len {
                out.push(acc.clone());
                acc = t.mul(&acc, g);
            }
            out
        };
        Ok(GammaGroup {
            params: params.clone(),
            torus_order,
            x_scale: powers(&zx, q - 1),
            y_scale: powers(&zy, q * q - 1),
            zeta,
        })
    }

    pub fn params(&self) -> &CurveParams {
        &self.params
    }

    /// `(q^n+1)(q-1)`.
    pub fn torus_order(&self) -> u64 {
        self.torus_order
    }

    /// The root `ζ_0` whose powers make up `Σ`.
    pub fn zeta(&self) -> &FieldElem {
        &self.zeta
    }

    /// Field value `ζ_0^k` of a torus element.
    pub fn torus_value(&self, t: TorusElement) -> FieldElem {
        self.params.tower().pow_u64(&self.zeta, t.k)
    }

    pub fn torus(&self, k: i64) -> TorusElement {
        TorusElement {
            k: k.rem_euclid(self.torus_order as i64) as u64,
        }
    }

    pub fn satisfies_relation(&self, a: &FieldElem, b: &FieldElem) -> bool {
        let t = self.params.tower();
        let q2 = self.params.q() * self.params.q();
        t.in_subfield(a, q2).unwrap_or(false)
            && t.in_subfield(b, q2).unwrap_or(false)
            && t.add(&t.q_power(a, 1), a) == t.mul(&t.q_power(b, 1), b)
    }

    /// `Q_{a,b}`, checking `a^q + a = b^(q+1)` over `F_(q^2)`.
    pub fn unitary(&self, a: FieldElem, b: FieldElem) -> Result<UnitaryTranslation> {
        if !self.satisfies_relation(&a, &b) {
            return Err(Error::NotInQ);
        }
        Ok(UnitaryTranslation { a, b })
    }

    pub fn q_identity(&self) -> UnitaryTranslation {
        let t = self.params.tower();
        UnitaryTranslation { a: t.zero(), b: t.zero() }
    }

    /// `Q_{a,b} ∘ Q_{c,d} = Q_{a + c + b^q d, b + d}`.
    pub fn q_compose(&self, g1: &UnitaryTranslation, g2: &UnitaryTranslation) -> UnitaryTranslation {
        let t = self.params.tower();
        let cross = t.mul(&t.q_power(&g1.b, 1), &g2.b);
        UnitaryTranslation {
            a: t.add(&t.add(&g1.a, &g2.a), &cross),
            b: t.add(&g1.b, &g2.b),
        }
    }

    /// `Q_{a,b}^-1 = Q_{a^q, -b}`.
    pub fn q_inverse(&self, g: &UnitaryTranslation) -> UnitaryTranslation {
        let t = self.params.tower();
        UnitaryTranslation {
            a: t.q_power(&g.a, 1),
            b: t.neg(&g.b),
        }
    }

    /// `g_ζ Q_{a,b} g_ζ^-1 = Q_{ζ^(q^n+1) a, ζ^m b}`.
    pub fn torus_twist(&self, s: TorusElement, g: &UnitaryTranslation) -> UnitaryTranslation {
        let t = self.params.tower();
        let q = self.params.q();
        let cx = &self.x_scale[(s.k % (q - 1)) as usize];
        let cy = &self.y_scale[(s.k % (q * q - 1)) as usize];
        UnitaryTranslation {
            a: t.mul(cx, &g.a),
            b: t.mul(cy, &g.b),
        }
    }

    pub fn element(&self, u: UnitaryTranslation, t: TorusElement) -> GammaElement {
        GammaElement { u, t }
    }

    /// `(u1, t1)(u2, t2) = (u1 ∘ twist(t1, u2), t1 + t2)`.
    pub fn gamma_compose(&self, x: &GammaElement, y: &GammaElement) -> GammaElement {
        GammaElement {
            u: self.q_compose(&x.u, &self.torus_twist(x.t, &y.u)),
            t: TorusElement {
                k: (x.t.k + y.t.k) % self.torus_order,
            },
        }
    }

    pub fn gamma_inverse(&self, x: &GammaElement) -> GammaElement {
        let inv_t = TorusElement {
            k: (self.torus_order - x.t.k) % self.torus_order,
        };
        GammaElement {
            u: self.torus_twist(inv_t, &self.q_inverse(&x.u)),
            t: inv_t,
        }
    }

    /// Image of a point of `C_n`. Affine inputs are checked.
    pub fn act(&self, g: &GammaElement, point: &CurvePoint) -> Result<CurvePoint> {
        if !matches!(point, CurvePoint::Infinity | CurvePoint::Affine { .. })
            || !is_on_curve(CurveId::Cn, point, &self.params)
        {
            return Err(Error::PointNotOnCurve);
        }
        Ok(self.act_unchecked(g, point))
    }

    pub fn act_unchecked(&self, g: &GammaElement, point: &CurvePoint) -> CurvePoint {
        let CurvePoint::Affine { x, y, z } = point else {
            return point.clone();
        };
        let t = self.params.tower();
        let q = self.params.q();
        let k = g.t.k;
        let x1 = t.mul(&self.x_scale[(k % (q - 1)) as usize], x);
        let y1 = t.mul(&self.y_scale[(k % (q * q - 1)) as usize], y);
        let z1 = t.mul(&self.torus_value(g.t), z);
        let UnitaryTranslation { a, b } = &g.u;
        let x2 = t.add(&t.add(&x1, &t.mul(&t.q_power(b, 1), &y1)), a);
        let y2 = t.add(&y1, b);
        CurvePoint::affine(x2, y2, z1)
    }

    fn q_elements(&self, center_only: bool) -> Vec<UnitaryTranslation> {
        let t = self.params.tower();
        let q2 = self.params.q() * self.params.q();
        let bs = if center_only {
            vec![t.zero()]
        } else {
            t.enumerate_subfield(q2).expect("q^2 is a subfield order")
        };
        let mut out = Vec::new();
        for b in bs {
            let rhs = t.mul(&t.q_power(&b, 1), &b);
            for a in t.solve_additive(AdditiveKind::AsQ, &rhs) {
                out.push(UnitaryTranslation { a, b: b.clone() });
            }
        }
        out.sort();
        out
    }

    fn torus_step(&self, id: SubgroupId) -> u64 {
        let q = self.params.q();
        match id {
            SubgroupId::M | SubgroupId::QxM => q * q - 1,
            SubgroupId::N | SubgroupId::ZxN => q - 1,
            SubgroupId::Sigma | SubgroupId::Gamma => 1,
            SubgroupId::Q | SubgroupId::Z => self.torus_order,
        }
    }

    /// Every element of the subgroup, identity first.
    pub fn enumerate_subgroup(&self, id: SubgroupId, budget: u64) -> Result<Vec<GammaElement>> {
        let needed = id.order(&self.params);
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let us = match id {
            SubgroupId::Q | SubgroupId::Gamma | SubgroupId::QxM => self.q_elements(false),
            SubgroupId::Z | SubgroupId::ZxN => self.q_elements(true),
            SubgroupId::Sigma | SubgroupId::M | SubgroupId::N => vec![self.q_identity()],
        };
        let step = self.torus_step(id);
        let mut out = Vec::with_capacity(needed as usize);
        for k in (0..self.torus_order).step_by(step as usize) {
            for u in &us {
                out.push(GammaElement {
                    u: u.clone(),
                    t: TorusElement { k },
                });
            }
        }
        Ok(out)
    }

    /// A small generating set: a greedy basis of the unitary part plus the
    /// torus generator.
    pub fn generators(&self, id: SubgroupId) -> Vec<GammaElement> {
        let lift = |u: UnitaryTranslation| GammaElement {
            u,
            t: TorusElement { k: 0 },
        };
        let mut gens: Vec<GammaElement> = match id {
            SubgroupId::Q | SubgroupId::Gamma | SubgroupId::QxM => {
                let all: Vec<GammaElement> = self.q_elements(false).into_iter().map(lift).collect();
                grouptheory::select_generators(self, &all)
            }
            SubgroupId::Z | SubgroupId::ZxN => {
                let all: Vec<GammaElement> = self.q_elements(true).into_iter().map(lift).collect();
                grouptheory::select_generators(self, &all)
            }
            _ => Vec::new(),
        };
        let step = self.torus_step(id);
        if step < self.torus_order {
            gens.push(GammaElement {
                u: self.q_identity(),
                t: TorusElement { k: step },
            });
        }
        gens
    }

    pub fn structure_report(&self, id: SubgroupId, budget: u64) -> Result<StructureReport> {
        let elems = self.enumerate_subgroup(id, budget)?;
        let gens = self.generators(id);
        let exponent = grouptheory::exponent(self, &elems);
        let center_order = grouptheory::center(self, &elems, &gens).len() as u64;
        let is_abelian = grouptheory::is_abelian(self, &gens);
        let derived = grouptheory::derived_subgroup(self, &gens, budget)?;
        Ok(StructureReport {
            subgroup: id,
            order: elems.len() as u64,
            exponent,
            center_order,
            is_abelian,
            is_elementary_abelian: is_abelian && is_prime_u64(exponent),
            derived_subgroup_order: derived.len() as u64,
        })
    }

    /// `group / normal` via its coset table.
    pub fn quotient_report(&self, group: SubgroupId, normal: SubgroupId, budget: u64) -> Result<QuotientReport> {
        let elems = self.enumerate_subgroup(group, budget)?;
        let sub = self.enumerate_subgroup(normal, budget)?;
        let members: HashSet<&GammaElement> = elems.iter().collect();
        if sub.iter().any(|g| !members.contains(g)) {
            return Err(Error::HypothesisViolated(format!("{normal} is not contained in {group}")));
        }
        let table = grouptheory::quotient(self, &elems, &sub)?;
        let exponent = table.exponent();
        let is_abelian = table.is_abelian();
        Ok(QuotientReport {
            group,
            normal,
            order: table.order() as u64,
            exponent,
            is_abelian,
            is_elementary_abelian: is_abelian && is_prime_u64(exponent),
        })
    }

    /// Orbits of the subgroup on `C_n(F_(q^(2n)))`, found by breadth-first
    /// search along the generators.
    pub fn orbits(&self, id: SubgroupId, budget: u64) -> Result<OrbitDecomposition> {
        let points = enumerate_points(CurveId::Cn, &self.params, budget)?;
        let gens = self.generators(id);
        let index: HashMap<&CurvePoint, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut seen = vec![false; points.len()];
        let mut orbits = Vec::new();
        for start in 0..points.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut size = 1u64;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for g in &gens {
                    let j = index[&self.act_unchecked(g, &points[i])];
                    if !seen[j] {
                        seen[j] = true;
                        size += 1;
                        queue.push_back(j);
                    }
                }
            }
            orbits.push(Orbit {
                representative: points[start].clone(),
                size,
            });
        }
        orbits.sort_by_key(|o| o.size);
        Ok(OrbitDecomposition { subgroup: id, orbits })
    }

    /// Whether two affine points lie in one `Γ`-orbit: `z_2 = ζ z_1` for some
    /// `ζ` with `ζ^((q^n+1)(q-1)) = 1`.
    pub fn same_gamma_orbit(&self, p1: &CurvePoint, p2: &CurvePoint) -> Result<bool> {
        let (Some(z1), Some(z2)) = (p1.z(), p2.z()) else {
            return Err(Error::InfinityInput);
        };
        if !is_on_curve(CurveId::Cn, p1, &self.params) || !is_on_curve(CurveId::Cn, p2, &self.params) {
            return Err(Error::PointNotOnCurve);
        }
        let t = self.params.tower();
        if z1.is_zero() || z2.is_zero() {
            return Ok(z1.is_zero() && z2.is_zero());
        }
        let ratio = t.div(z2, z1)?;
        Ok(t.pow_u64(&ratio, self.torus_order) == t.one())
    }

    /// No non-identity element of `Q` fixes an affine point.
    pub fn semiregular_check(&self, budget: u64) -> Result<bool> {
        let points = enumerate_points(CurveId::Cn, &self.params, budget)?;
        let id = self.identity();
        let q = self.enumerate_subgroup(SubgroupId::Q, budget)?;
        Ok(q.iter().filter(|g| **g != id).all(|g| {
            points
                .iter()
                .filter(|p| !p.is_infinity())
                .all(|p| self.act_unchecked(g, p) != *p)
        }))
    }

    /// The elements as permutations of `points` (which must be a union of
    /// orbits).
    pub fn point_permutations(&self, elems: &[GammaElement], points: &[CurvePoint]) -> Result<Vec<Permutation>> {
        let index: HashMap<&CurvePoint, u32> = points.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
        elems
            .iter()
            .map(|g| {
                let images = points
                    .iter()
                    .map(|p| {
                        index
                            .get(&self.act_unchecked(g, p))
                            .copied()
                            .ok_or_else(|| Error::HypothesisViolated("point set is not invariant".into()))
                    })
                    .collect::<Result<Vec<u32>>>()?;
                Permutation::from_images(images)
            })
            .collect()
    }

    pub fn subgroup_report(&self, id: SubgroupId, budget: u64) -> Result<SubgroupReport> {
        let s = self.structure_report(id, budget.min(DEFAULT_GROUP_BUDGET))?;
        let orbits = self.orbits(id, budget)?;
        Ok(SubgroupReport {
            subgroup: id,
            order: s.order,
            exponent: s.exponent,
            center_order: s.center_order,
            orbit_sizes: orbits.sizes(),
        })
    }
}

impl GroupLaw for GammaGroup {
    type Elem = GammaElement;

    fn identity(&self) -> GammaElement {
        GammaElement {
            u: self.q_identity(),
            t: TorusElement { k: 0 },
        }
    }

    fn compose(&self, a: &GammaElement, b: &GammaElement) -> GammaElement {
        self.gamma_compose(a, b)
    }

    fn inverse(&self, a: &GammaElement) -> GammaElement {
        self.gamma_inverse(a)
    }
}
