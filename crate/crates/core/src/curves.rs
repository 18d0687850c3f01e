//! The curves `H_q : x^q + x = y^(q+1)`, `X_n : y^(q^2) - y = z^m` and their
//! fiber product `C_n` over the `y`-line, with `m = (q^n + 1)/(q + 1)`.
//!
//! Points are counted fiberwise over `y`: for each `y` the number of `x`
//! is the size of an additive fiber and the number of `z` the size of a
//! Kummer fiber, so a count costs one pass over the field instead of a
//! triple loop. Each curve has exactly one point over `y = ∞`, modelled by
//! [`CurvePoint::Infinity`].

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{AdditiveKind, FieldElem, FieldTower};

/// Default cap on the number of points `enumerate_points` will materialize.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug)]
pub struct CurveParams {
    tower: Arc<FieldTower>,
    q: u64,
    n: u32,
    m: u64,
}

impl CurveParams {
    pub fn new(p: u32, h: u32, n: u32) -> Result<Self> {
        Ok(Self::from_tower(Arc::new(FieldTower::build(p, h, n)?)))
    }

    pub fn from_tower(tower: Arc<FieldTower>) -> Self {
        let q = tower.q();
        let n = tower.n();
        let qn1 = q.pow(n) + 1;
        debug_assert_eq!(qn1 % (q + 1), 0, "n odd makes q+1 divide q^n+1");
        let m = qn1 / (q + 1);
        CurveParams { tower, q, n, m }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn shared_tower(&self) -> Arc<FieldTower> {
        Arc::clone(&self.tower)
    }

    pub fn p(&self) -> u32 {
        self.tower.p()
    }
    pub fn h(&self) -> u32 {
        self.tower.h()
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    /// `(q^n + 1)/(q + 1)`.
    pub fn m(&self) -> u64 {
        self.m
    }
    /// `q^n`.
    pub fn qn(&self) -> u64 {
        self.q.pow(self.n)
    }
    /// `q^(2n)`, the order of the field the curves are counted over.
    pub fn full_order(&self) -> u64 {
        self.tower.size()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CurveId {
    Hermitian,
    Xn,
    Cn,
    P1y,
    P1z,
    P1x,
    P1w,
    P1t,
    P1u,
}

impl CurveId {
    pub const ALL: [CurveId; 9] = [
        CurveId::Hermitian,
        CurveId::Xn,
        CurveId::Cn,
        CurveId::P1y,
        CurveId::P1z,
        CurveId::P1x,
        CurveId::P1w,
        CurveId::P1t,
        CurveId::P1u,
    ];

    pub fn is_line(self) -> bool {
        !matches!(self, CurveId::Hermitian | CurveId::Xn | CurveId::Cn)
    }

    pub fn name(self) -> &'static str {
        match self {
            CurveId::Hermitian => "Hq",
            CurveId::Xn => "Xn",
            CurveId::Cn => "Cn",
            CurveId::P1y => "P1y",
            CurveId::P1z => "P1z",
            CurveId::P1x => "P1x",
            CurveId::P1w => "P1w",
            CurveId::P1t => "P1t",
            CurveId::P1u => "P1u",
        }
    }
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A point of one of the curves.
///
/// Affine points of `H_q` keep `z = 0` and those of `X_n` keep `x = 0`; the
/// unused slot is ignored. Points of the projective lines in the cover
/// diagram carry their single coordinate in `Line`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CurvePoint {
    Infinity,
    Affine { x: FieldElem, y: FieldElem, z: FieldElem },
    Line(FieldElem),
}

impl CurvePoint {
    pub fn affine(x: FieldElem, y: FieldElem, z: FieldElem) -> Self {
        CurvePoint::Affine { x, y, z }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn z(&self) -> Option<&FieldElem> {
        match self {
            CurvePoint::Affine { z, .. } => Some(z),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveStats {
    pub curve: CurveId,
    pub p: u32,
    pub h: u32,
    pub n: u32,
    pub genus: u64,
    pub count: u64,
    pub bound: u64,
    pub maximal: bool,
}

/// Which field the points are taken over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// `F_(q^2n)`
    Full,
    /// `F_(q^2)`
    Quadratic,
}

/// Genus from the closed formulas; projective lines have genus 0.
pub fn genus(c: CurveId, params: &CurveParams) -> u64 {
    genus_formula(c, params.q(), params.n())
}

pub fn genus_formula(c: CurveId, q: u64, n: u32) -> u64 {
    let qn = q.pow(n);
    match c {
        CurveId::Hermitian => q * (q - 1) / 2,
        CurveId::Xn => (q - 1) * (qn - q) / 2,
        CurveId::Cn => (q - 1) * (qn * q + qn - q * q) / 2,
        _ => 0,
    }
}

/// `#X(F_(q^2n))` from the closed formulas (Hermitian: maximal over `F_(q^2n)`).
pub fn closed_count(c: CurveId, q: u64, n: u32) -> u64 {
    let qn = q.pow(n);
    match c {
        CurveId::Hermitian => hasse_weil_bound(genus_formula(c, q, n), qn),
        CurveId::Xn => q.pow(2 * n + 1) - q.pow(n + 2) + q.pow(n + 1) + 1,
        CurveId::Cn => q.pow(2 * n + 2) - q.pow(n + 3) + q.pow(n + 2) + 1,
        _ => qn * qn + 1,
    }
}

/// `q'^2 + 1 + 2 g q'`: the most points a genus `g` curve can have over `F_(q'^2)`.
pub fn hasse_weil_bound(g: u64, qprime: u64) -> u64 {
    qprime * qprime + 1 + 2 * g * qprime
}

fn kummer_fiber(params: &CurveParams, y: &FieldElem) -> FieldElem {
    let t = params.tower();
    t.sub(&t.q_power(y, 2), y)
}

fn hermitian_rhs(params: &CurveParams, y: &FieldElem) -> FieldElem {
    let t = params.tower();
    t.mul(&t.q_power(y, 1), y)
}

fn kummer_count(params: &CurveParams, c: &FieldElem) -> u64 {
    if c.is_zero() {
        1
    } else if params.tower().has_kummer_root(params.m(), c).expect("m divides Q-1") {
        params.m()
    } else {
        0
    }
}

/// Points over `F_(q^2n)`, including the point at infinity, counted fiber by fiber.
pub fn count_points(c: CurveId, params: &CurveParams) -> u64 {
    let t = params.tower();
    if c.is_line() {
        return t.size() + 1;
    }
    let affine: u64 = t
        .elements()
        .map(|y| {
            let xs = || t.count_additive(AdditiveKind::AsQ, &hermitian_rhs(params, &y));
            let zs = || kummer_count(params, &kummer_fiber(params, &y));
            match c {
                CurveId::Hermitian => xs(),
                CurveId::Xn => zs(),
                _ => {
                    let nx = xs();
                    if nx == 0 {
                        0
                    } else {
                        nx * zs()
                    }
                }
            }
        })
        .sum();
    affine + 1
}

/// Point count over the given scope; over `F_(q^2)` the points are enumerated
/// with every coordinate restricted to the subfield.
pub fn count_points_over(c: CurveId, params: &CurveParams, scope: Scope) -> Result<u64> {
    match scope {
        Scope::Full => Ok(count_points(c, params)),
        Scope::Quadratic => Ok(enumerate_points_over(c, params, scope, DEFAULT_BUDGET)?.len() as u64),
    }
}

pub fn enumerate_points(c: CurveId, params: &CurveParams, budget: u64) -> Result<Vec<CurvePoint>> {
    enumerate_points_over(c, params, Scope::Full, budget)
}

/// All points over the scope, `Infinity` last.
pub fn enumerate_points_over(
    c: CurveId,
    params: &CurveParams,
    scope: Scope,
    budget: u64,
) -> Result<Vec<CurvePoint>> {
    let t = params.tower();
    let q2 = params.q() * params.q();
    let ys: Vec<FieldElem> = match scope {
        Scope::Full => {
            let needed = count_points(c, params);
            if needed > budget {
                return Err(Error::BudgetExceeded { needed, budget });
            }
            t.elements().collect()
        }
        Scope::Quadratic => t.enumerate_subfield(q2)?,
    };
    let keep = |e: &FieldElem| scope == Scope::Full || t.in_subfield(e, q2).expect("q^2 is a subfield order");

    let mut out = Vec::new();
    if c.is_line() {
        out.extend(ys.into_iter().map(CurvePoint::Line));
        out.push(CurvePoint::Infinity);
        return Ok(out);
    }
    for y in ys {
        let xs: Vec<FieldElem> = match c {
            CurveId::Xn => vec![t.zero()],
            _ => t
                .solve_additive(AdditiveKind::AsQ, &hermitian_rhs(params, &y))
                .into_iter()
                .filter(|x| keep(x))
                .collect(),
        };
        if xs.is_empty() {
            continue;
        }
        let zs: Vec<FieldElem> = match c {
            CurveId::Hermitian => vec![t.zero()],
            _ => t
                .solve_kummer(params.m(), &kummer_fiber(params, &y))?
                .into_iter()
                .filter(|z| keep(z))
                .collect(),
        };
        for x in &xs {
            for z in &zs {
                out.push(CurvePoint::affine(x.clone(), y.clone(), z.clone()));
            }
        }
    }
    out.push(CurvePoint::Infinity);
    Ok(out)
}

/// Evaluates the defining equation(s). Lines accept every point of theirs.
pub fn is_on_curve(c: CurveId, point: &CurvePoint, params: &CurveParams) -> bool {
    let t = params.tower();
    match point {
        CurvePoint::Infinity => true,
        CurvePoint::Line(_) => c.is_line(),
        CurvePoint::Affine { x, y, z } => {
            let hermitian = || t.add(&t.q_power(x, 1), x) == hermitian_rhs(params, y);
            let kummer = || kummer_fiber(params, y) == t.pow_u64(z, params.m());
            match c {
                CurveId::Hermitian => hermitian(),
                CurveId::Xn => kummer(),
                CurveId::Cn => hermitian() && kummer(),
                _ => false,
            }
        }
    }
}

pub fn curve_stats(c: CurveId, params: &CurveParams) -> CurveStats {
    let g = genus(c, params);
    let count = count_points(c, params);
    let bound = hasse_weil_bound(g, params.qn());
    CurveStats {
        curve: c,
        p: params.p(),
        h: params.h(),
        n: params.n(),
        genus: g,
        count,
        bound,
        maximal: count == bound,
    }
}

/// `#X(F_(q^2n))` equals the Hasse–Weil bound for `q' = q^n`.
pub fn check_maximal(c: CurveId, params: &CurveParams) -> bool {
    curve_stats(c, params).maximal
}

// Direct arrows of the cover diagram with their degrees.
fn edges(params: &CurveParams) -> [(CurveId, CurveId, u64); 11] {
    use CurveId::*;
    let q = params.q();
    let m = params.m();
    [
        (Cn, Xn, q),
        (Cn, Hermitian, m),
        (Xn, P1z, q * q),
        (Xn, P1y, m),
        (Hermitian, P1y, q),
        (Hermitian, P1x, q + 1),
        (P1x, P1u, q - 1),
        (P1x, P1w, q),
        (P1y, P1w, q + 1),
        (P1y, P1t, q * q),
        (P1z, P1t, m),
    ]
}

/// Degree of the (possibly composite) cover `from -> to`.
pub fn cover_degree(from: CurveId, to: CurveId, params: &CurveParams) -> Result<u64> {
    fn walk(at: CurveId, to: CurveId, edges: &[(CurveId, CurveId, u64)]) -> Option<u64> {
        if at == to {
            return Some(1);
        }
        edges
            .iter()
            .filter(|(a, _, _)| *a == at)
            .find_map(|&(_, b, d)| walk(b, to, edges).map(|rest| d * rest))
    }
    if from == to {
        return Err(invalid_edge(from, to));
    }
    walk(from, to, &edges(params)).ok_or_else(|| invalid_edge(from, to))
}

fn invalid_edge(from: CurveId, to: CurveId) -> Error {
    Error::InvalidEdge {
        from: from.to_string(),
        to: to.to_string(),
    }
}

/// Image of `point` under the quotient map `from -> to`.
///
/// `C_n -> X_n` forgets `x`, `C_n -> H_q` forgets `z`, and the lines use
/// `w = y^(q+1)`, `t = z^m`, `u = x^(q-1)`.
pub fn project(from: CurveId, to: CurveId, point: &CurvePoint, params: &CurveParams) -> Result<CurvePoint> {
    cover_degree(from, to, params)?;
    let (x, y, z) = match point {
        CurvePoint::Infinity => return Ok(CurvePoint::Infinity),
        CurvePoint::Affine { x, y, z } => match from {
            CurveId::Cn => (Some(x), Some(y), Some(z)),
            CurveId::Hermitian => (Some(x), Some(y), None),
            CurveId::Xn => (None, Some(y), Some(z)),
            _ => return Err(Error::PointNotOnCurve),
        },
        CurvePoint::Line(v) => match from {
            CurveId::P1x => (Some(v), None, None),
            CurveId::P1y => (None, Some(v), None),
            CurveId::P1z => (None, None, Some(v)),
            _ => return Err(Error::PointNotOnCurve),
        },
    };
    let t = params.tower();
    let need = |v: Option<&FieldElem>| v.cloned().ok_or_else(|| invalid_edge(from, to));
    let image = match to {
        CurveId::Xn => CurvePoint::affine(t.zero(), need(y)?, need(z)?),
        CurveId::Hermitian => CurvePoint::affine(need(x)?, need(y)?, t.zero()),
        CurveId::P1x => CurvePoint::Line(need(x)?),
        CurveId::P1y => CurvePoint::Line(need(y)?),
        CurveId::P1z => CurvePoint::Line(need(z)?),
        CurveId::P1w => CurvePoint::Line(match (y, x) {
            (Some(y), _) => hermitian_rhs(params, y),
            (None, Some(x)) => t.add(&t.q_power(x, 1), x),
            _ => return Err(invalid_edge(from, to)),
        }),
        CurveId::P1t => CurvePoint::Line(match (z, y) {
            (Some(z), _) => t.pow_u64(z, params.m()),
            (None, Some(y)) => kummer_fiber(params, y),
            _ => return Err(invalid_edge(from, to)),
        }),
        CurveId::P1u => CurvePoint::Line(t.pow_u64(&need(x)?, params.q() - 1)),
        CurveId::Cn => return Err(invalid_edge(from, to)),
    };
    Ok(image)
}
