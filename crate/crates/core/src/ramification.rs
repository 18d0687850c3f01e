//! Ramification at `P_∞` for the covers `C_n → P^1_z`, `C_n → X_n`,
//! `X_n → P^1_z` and `H_q → P^1_y`, together with the numbering
//! conversions, Riemann–Hurwitz bookkeeping, valuations of `x, y, z` at
//! `P_0 = (0, 0, 0)` and `P_∞`, and power series of `x, y` in the
//! uniformizer `z` at `P_0`.
//!
//! Lower indices follow the usual convention: `G_i = {σ : v(σπ - π) ≥ i + 1}`,
//! and a filtration stores `|G_i|` as runs of constant order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize, Serializer};

use crate::autgroup::{GammaGroup, SubgroupId, UnitaryTranslation};
use crate::curves::{genus_formula, CurveId, CurveParams};
use crate::error::{Error, Result};
use crate::field::{check_params, FieldElem, FieldTower};
use crate::grouptheory::DEFAULT_GROUP_BUDGET;

pub type Rational = Ratio<i128>;

/// `"num/den"`, or just `"num"` for integers.
pub fn rational_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn serialize_rationals<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(rational_string))
}

fn serialize_rational<S: Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cover {
    #[serde(rename = "Cn/P1z")]
    CnP1z,
    #[serde(rename = "Cn/Xn")]
    CnXn,
    #[serde(rename = "Xn/P1z")]
    XnP1z,
    #[serde(rename = "Hq/P1y")]
    HqP1y,
    /// Tame, degree `m`; included for the Riemann–Hurwitz check only.
    #[serde(rename = "Cn/Hq")]
    CnHq,
}

impl Cover {
    /// The four covers with a wild point at infinity.
    pub const WILD: [Cover; 4] = [Cover::CnP1z, Cover::CnXn, Cover::XnP1z, Cover::HqP1y];

    pub fn name(self) -> &'static str {
        match self {
            Cover::CnP1z => "Cn/P1z",
            Cover::CnXn => "Cn/Xn",
            Cover::XnP1z => "Xn/P1z",
            Cover::HqP1y => "Hq/P1y",
            Cover::CnHq => "Cn/Hq",
        }
    }

    pub fn top(self) -> CurveId {
        match self {
            Cover::CnP1z | Cover::CnXn | Cover::CnHq => CurveId::Cn,
            Cover::XnP1z => CurveId::Xn,
            Cover::HqP1y => CurveId::Hermitian,
        }
    }

    pub fn bottom(self) -> CurveId {
        match self {
            Cover::CnP1z | Cover::XnP1z => CurveId::P1z,
            Cover::CnXn => CurveId::Xn,
            Cover::HqP1y => CurveId::P1y,
            Cover::CnHq => CurveId::Hermitian,
        }
    }

    pub fn degree(self, q: u64, n: u32) -> u64 {
        match self {
            Cover::CnP1z => q * q * q,
            Cover::CnXn | Cover::HqP1y => q,
            Cover::XnP1z => q * q,
            Cover::CnHq => m_of(q, n),
        }
    }
}

impl fmt::Display for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Cover {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Cover::CnP1z, Cover::CnXn, Cover::XnP1z, Cover::HqP1y, Cover::CnHq]
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownCover(s.to_string()))
    }
}

fn m_of(q: u64, n: u32) -> u64 {
    (q.pow(n) + 1) / (q + 1)
}

/// `|G_i|` as runs: `(end, order)` means `|G_i| = order` for every `i` up
/// to `end` after the previous run; `|G_i| = 1` past the last run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationFiltration {
    segments: Vec<(u64, u64)>,
    e0: u64,
}

impl RamificationFiltration {
    pub fn new(segments: Vec<(u64, u64)>) -> Result<Self> {
        let e0 = segments.first().map_or(1, |s| s.1);
        for w in segments.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidFiltration("segment ends must increase".into()));
            }
            if w[1].1 >= w[0].1 {
                return Err(Error::InvalidFiltration("group orders must decrease".into()));
            }
        }
        if let Some(s) = segments.iter().find(|s| s.1 < 2 || !e0.is_multiple_of(s.1)) {
            return Err(Error::InvalidFiltration(format!("order {} does not divide {e0} or is trivial", s.1)));
        }
        Ok(RamificationFiltration { segments, e0 })
    }

    pub fn trivial() -> Self {
        RamificationFiltration {
            segments: Vec::new(),
            e0: 1,
        }
    }

    /// The filtration with one run's order replaced, without validation.
    /// Meant for mutation tests of the Riemann–Hurwitz check.
    pub fn with_segment_order(&self, index: usize, order: u64) -> Self {
        let mut out = self.clone();
        out.segments[index].1 = order;
        if index == 0 {
            out.e0 = order;
        }
        out
    }

    pub fn segments(&self) -> &[(u64, u64)] {
        &self.segments
    }

    /// `|G_0|`.
    pub fn e0(&self) -> u64 {
        self.e0
    }

    pub fn order_at(&self, i: u64) -> u64 {
        self.segments.iter().find(|s| i <= s.0).map_or(1, |s| s.1)
    }

    /// Indices `i` with `G_i ≠ G_(i+1)`.
    pub fn lower_jumps(&self) -> Vec<u64> {
        self.segments.iter().map(|s| s.0).collect()
    }

    // (start, end, order) with the first run starting at -1 so that its
    // length counts index 0
    fn runs(&self) -> impl Iterator<Item = (i128, i128, u64)> + '_ {
        let starts = std::iter::once(-1).chain(self.segments.iter().map(|s| s.0 as i128));
        starts.zip(self.segments.iter()).map(|(a, &(b, o))| (a, b as i128, o))
    }

    /// `Σ_(i ≥ 0) (|G_i| - 1)`.
    pub fn different_exponent(&self) -> u64 {
        self.runs().map(|(a, b, o)| (b - a) as u64 * (o - 1)).sum()
    }

    /// `φ(u) = ∫_0^u |G_t| / |G_0| dt`, with `|G_t| = |G_⌈t⌉|`.
    pub fn phi(&self, u: Rational) -> Rational {
        let e0 = self.e0 as i128;
        let mut acc = Rational::from_integer(0);
        let mut prev = Rational::from_integer(0);
        for &(end, order) in &self.segments {
            let end = Rational::from_integer(end as i128);
            if u <= end {
                return acc + (u - prev) * Rational::new(order as i128, e0);
            }
            acc += (end - prev) * Rational::new(order as i128, e0);
            prev = end;
        }
        acc + (u - prev) * Rational::new(1, e0)
    }

    /// Inverse of [`phi`](Self::phi).
    pub fn psi(&self, v: Rational) -> Rational {
        let e0 = self.e0 as i128;
        let mut acc = Rational::from_integer(0);
        let mut prev = Rational::from_integer(0);
        for &(end, order) in &self.segments {
            let end = Rational::from_integer(end as i128);
            let slope = Rational::new(order as i128, e0);
            let top = acc + (end - prev) * slope;
            if v <= top {
                return prev + (v - acc) / slope;
            }
            acc = top;
            prev = end;
        }
        prev + (v - acc) * Rational::from_integer(e0)
    }

    /// Images of the lower jumps under `φ`.
    pub fn upper_jumps(&self) -> Vec<Rational> {
        self.lower_jumps()
            .into_iter()
            .map(|j| self.phi(Rational::from_integer(j as i128)))
            .collect()
    }

    /// `G^v` as runs `(end, order)` in the upper numbering.
    pub fn upper_segments(&self) -> Vec<(Rational, u64)> {
        self.upper_jumps().into_iter().zip(self.segments.iter().map(|s| s.1)).collect()
    }

    /// Lower filtration after a tame base change of index `e`: every lower
    /// jump is multiplied by `e`.
    pub fn pullback_tame(&self, e: u64) -> Self {
        RamificationFiltration {
            segments: self.segments.iter().map(|&(end, o)| (end * e, o)).collect(),
            e0: self.e0,
        }
    }

    fn from_upper(upper: &[(Rational, u64)]) -> Result<Self> {
        let Some(&(_, e0)) = upper.first() else {
            return Ok(Self::trivial());
        };
        let mut segments = Vec::new();
        let (mut u, mut v) = (Rational::from_integer(0), Rational::from_integer(0));
        for &(end, order) in upper {
            u += (end - v) * Rational::new(e0 as i128, order as i128);
            v = end;
            if !u.is_integer() {
                return Err(Error::IncompatibleSubgroup(format!(
                    "lower jump {} is not an integer",
                    rational_string(&u)
                )));
            }
            segments.push((*u.numer() as u64, order));
        }
        Self::new(segments)
    }
}

/// `G/H`, where `h` gives `|H_i| = |G_i ∩ H|`. The quotient is formed in
/// the upper numbering, `(G/H)^v = G^v H / H`, and converted back to lower
/// indices with the quotient's own `ψ`.
pub fn quotient_filtration(g: &RamificationFiltration, h: &RamificationFiltration) -> Result<RamificationFiltration> {
    if !g.e0.is_multiple_of(h.e0) {
        return Err(Error::IncompatibleSubgroup(format!("|H| = {} does not divide |G| = {}", h.e0, g.e0)));
    }
    let mut cuts: Vec<u64> = g.lower_jumps().into_iter().chain(h.lower_jumps()).collect();
    cuts.sort_unstable();
    cuts.dedup();
    let mut upper: Vec<(Rational, u64)> = Vec::new();
    for &b in &cuts {
        let (go, ho) = (g.order_at(b), h.order_at(b));
        if go % ho != 0 {
            return Err(Error::IncompatibleSubgroup(format!("|H_{b}| = {ho} does not divide |G_{b}| = {go}")));
        }
        let order = go / ho;
        let v = g.phi(Rational::from_integer(b as i128));
        match upper.last_mut() {
            Some(last) if last.1 == order => last.0 = v,
            Some(last) if last.1 < order => {
                return Err(Error::IncompatibleSubgroup("quotient orders increase".into()));
            }
            _ => upper.push((v, order)),
        }
    }
    while upper.last().is_some_and(|s| s.1 == 1) {
        upper.pop();
    }
    RamificationFiltration::from_upper(&upper)
}

/// The jump indices for each wild cover.
pub fn known_lower_jumps(cover: Cover, q: u64, n: u32) -> Result<Vec<u64>> {
    let qn1 = q.pow(n) + 1;
    let m = m_of(q, n);
    match cover {
        Cover::CnP1z => Ok(vec![m, qn1]),
        Cover::CnXn => Ok(vec![qn1]),
        Cover::XnP1z => Ok(vec![m]),
        Cover::HqP1y => Ok(vec![q + 1]),
        Cover::CnHq => Err(Error::UnknownCover(cover.name().into())),
    }
}

/// Lower filtration at `P_∞`. For `C_n → P^1_z` the middle run has the
/// order of `Z`, since `Z` is the subgroup fixing `X_n` and `H_i = G_i ∩ H`.
pub fn build_filtration(cover: Cover, q: u64, n: u32) -> Result<RamificationFiltration> {
    let qn1 = q.pow(n) + 1;
    let m = m_of(q, n);
    let segments = match cover {
        Cover::CnP1z => vec![(m, q * q * q), (qn1, q)],
        Cover::CnXn => vec![(qn1, q)],
        Cover::XnP1z => vec![(m, q * q)],
        Cover::HqP1y => vec![(q + 1, q)],
        Cover::CnHq => return Err(Error::UnknownCover(cover.name().into())),
    };
    RamificationFiltration::new(segments)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BranchPoint {
    /// `count` points, each with tame index `e`.
    Tame { count: u64, e: u64 },
    Wild(RamificationFiltration),
}

impl BranchPoint {
    pub fn contribution(&self) -> u64 {
        match self {
            BranchPoint::Tame { count, e } => count * (e - 1),
            BranchPoint::Wild(f) => f.different_exponent(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverDescription {
    pub name: String,
    pub degree: u64,
    pub genus_top: u64,
    pub genus_bottom: u64,
    pub branch_points: Vec<BranchPoint>,
}

/// Branch data of a cover. The wild covers ramify only over infinity; for
/// `C_n → H_q` the branch points are the `q^3 + 1` points of `H_q` over
/// `F_(q^2)`, each with index `m`.
pub fn cover_description(cover: Cover, q: u64, n: u32) -> Result<CoverDescription> {
    let branch_points = match cover {
        Cover::CnHq => vec![BranchPoint::Tame {
            count: q * q * q + 1,
            e: m_of(q, n),
        }],
        _ => vec![BranchPoint::Wild(build_filtration(cover, q, n)?)],
    };
    Ok(CoverDescription {
        name: cover.name().into(),
        degree: cover.degree(q, n),
        genus_top: genus_formula(cover.top(), q, n),
        genus_bottom: genus_formula(cover.bottom(), q, n),
        branch_points,
    })
}

/// `2g_top - 2 = deg (2g_bottom - 2) + Σ contributions`.
pub fn riemann_hurwitz_check(cover: &CoverDescription) -> bool {
    let lhs = 2 * cover.genus_top as i128 - 2;
    let branch: i128 = cover.branch_points.iter().map(|b| b.contribution() as i128).sum();
    lhs == cover.degree as i128 * (2 * cover.genus_bottom as i128 - 2) + branch
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    pub cover: Cover,
    pub lower_jumps: Vec<u64>,
    #[serde(serialize_with = "serialize_rationals")]
    pub upper_jumps: Vec<Rational>,
    pub different: u64,
    pub rh_ok: bool,
}

pub fn filtration_report(cover: Cover, q: u64, n: u32) -> Result<FiltrationReport> {
    let f = build_filtration(cover, q, n)?;
    Ok(FiltrationReport {
        cover,
        lower_jumps: f.lower_jumps(),
        upper_jumps: f.upper_jumps(),
        different: f.different_exponent(),
        rh_ok: riemann_hurwitz_check(&cover_description(cover, q, n)?),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Valuations {
    pub x: i64,
    pub y: i64,
    pub z: i64,
    /// `t = z^(q^(n-3)) / x`.
    pub t: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationTable {
    pub p0: Valuations,
    pub p_inf: Valuations,
}

/// Valuations derived from ramification indices and the two equations.
///
/// At `P_∞`: `C_n → P^1_y` has degree `qm` and is totally ramified, so
/// `v(y) = -qm`; then `x^q + x = y^(q+1)` gives `q v(x) = (q+1) v(y)` and
/// `y^(q^2) - y = z^m` gives `m v(z) = q^2 v(y)`. At `P_0`: `C_n → P^1_z`
/// is unramified over `z = 0`, so `v(z) = 1`, and the same equations give
/// `v(y) = m`, `v(x) = (q+1) m`.
pub fn valuation_table(q: u64, n: u32) -> ValuationTable {
    let (q, m) = (q as i64, m_of(q, n) as i64);
    let r = q.pow(n - 3);

    let y_inf = -q * m;
    debug_assert_eq!(((q + 1) * y_inf) % q, 0);
    let x_inf = (q + 1) * y_inf / q;
    debug_assert_eq!((q * q * y_inf) % m, 0);
    let z_inf = q * q * y_inf / m;

    let z0 = 1;
    let y0 = m * z0;
    let x0 = (q + 1) * y0;
    ValuationTable {
        p0: Valuations {
            x: x0,
            y: y0,
            z: z0,
            t: r * z0 - x0,
        },
        p_inf: Valuations {
            x: x_inf,
            y: y_inf,
            z: z_inf,
            t: r * z_inf - x_inf,
        },
    }
}

/// `v_∞(σ(t) - t)` for `σ = Q_{a,b}`; `None` for the identity.
///
/// `σ` fixes `z` and sends `x` to `x + b^q y + a`, so
/// `σ(t) - t = -t (b^q y + a) / σ(x)`. The middle factor has valuation
/// `v(y)` if `b ≠ 0` and `0` otherwise, and `v(σ(x)) = v(x)` since `x` has
/// the deepest pole.
pub fn lower_index_at_infinity(u: &UnitaryTranslation, table: &ValuationTable) -> Option<u64> {
    let v = &table.p_inf;
    let shift = if !u.b.is_zero() {
        v.y
    } else if !u.a.is_zero() {
        0
    } else {
        return None;
    };
    Some((v.t + shift - v.x) as u64)
}

/// `|G_i| = #{σ : i_G(σ) ≥ i + 1}`, from the index of every element
/// (`None` for the identity).
pub fn filtration_from_indices(indices: &[Option<u64>]) -> Result<RamificationFiltration> {
    let mut values: Vec<u64> = indices.iter().flatten().copied().collect();
    values.sort_unstable();
    values.dedup();
    let segments = values
        .iter()
        .map(|&d| {
            let order = 1 + indices.iter().flatten().filter(|&&i| i >= d).count() as u64;
            (d - 1, order)
        })
        .collect();
    RamificationFiltration::new(segments)
}

/// Filtration of `Q` or `Z` at `P_∞` computed element by element.
pub fn group_filtration(group: &GammaGroup, id: SubgroupId) -> Result<RamificationFiltration> {
    if !matches!(id, SubgroupId::Q | SubgroupId::Z) {
        return Err(Error::HypothesisViolated(format!("{id} is not a subgroup of Q")));
    }
    let params = group.params();
    let table = valuation_table(params.q(), params.n());
    let indices: Vec<Option<u64>> = group
        .enumerate_subgroup(id, DEFAULT_GROUP_BUDGET)?
        .iter()
        .map(|g| lower_index_at_infinity(&g.u, &table))
        .collect();
    filtration_from_indices(&indices)
}

/// A power series in `z` truncated below `z^precision`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalSeries {
    pub coefficients: BTreeMap<u64, FieldElem>,
    pub precision: u64,
}

impl LocalSeries {
    fn zero(precision: u64) -> Self {
        LocalSeries {
            coefficients: BTreeMap::new(),
            precision,
        }
    }

    fn monomial(c: FieldElem, e: u64, precision: u64) -> Self {
        let mut s = Self::zero(precision);
        if e < precision && !c.is_zero() {
            s.coefficients.insert(e, c);
        }
        s
    }

    pub fn leading_exponent(&self) -> Option<u64> {
        self.coefficients.keys().next().copied()
    }

    pub fn coefficient(&self, t: &FieldTower, e: u64) -> FieldElem {
        self.coefficients.get(&e).cloned().unwrap_or_else(|| t.zero())
    }

    fn insert_add(&mut self, t: &FieldTower, e: u64, c: &FieldElem) {
        if e >= self.precision {
            return;
        }
        let sum = t.add(&self.coefficient(t, e), c);
        if sum.is_zero() {
            self.coefficients.remove(&e);
        } else {
            self.coefficients.insert(e, sum);
        }
    }

    pub fn add(&self, t: &FieldTower, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.coefficients {
            out.insert_add(t, e, c);
        }
        out
    }

    pub fn sub(&self, t: &FieldTower, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.coefficients {
            out.insert_add(t, e, &t.neg(c));
        }
        out
    }

    pub fn mul(&self, t: &FieldTower, other: &Self) -> Self {
        let mut out = Self::zero(self.precision);
        for (&e1, c1) in &self.coefficients {
            for (&e2, c2) in &other.coefficients {
                out.insert_add(t, e1 + e2, &t.mul(c1, c2));
            }
        }
        out
    }

    /// `s^(q^j)`: Frobenius on coefficients, exponents times `q^j`.
    pub fn q_power(&self, t: &FieldTower, j: u32) -> Self {
        let scale = t.q().pow(j);
        let mut out = Self::zero(self.precision);
        for (&e, c) in &self.coefficients {
            out.insert_add(t, e * scale, &t.q_power(c, j as usize));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalExpansion {
    pub y: LocalSeries,
    pub x: LocalSeries,
}

/// `y` and `x` as series in `z` at `P_0`, by iterating
/// `y ← y^(q^2) - z^m` and `x ← y^(q+1) - x^q` to a fixed point mod `z^N`.
pub fn local_expand_p0(params: &CurveParams, precision: u64) -> Result<LocalExpansion> {
    let needed = params.qn() + 1;
    if precision <= needed {
        return Err(Error::PrecisionTooLow { given: precision, needed });
    }
    let t = params.tower();
    let zm = LocalSeries::monomial(t.one(), params.m(), precision);

    let mut y = LocalSeries::zero(precision);
    loop {
        let next = y.q_power(t, 2).sub(t, &zm);
        if next == y {
            break;
        }
        y = next;
    }
    let yq1 = y.q_power(t, 1).mul(t, &y);
    let mut x = LocalSeries::zero(precision);
    loop {
        let next = yq1.sub(t, &x.q_power(t, 1));
        if next == x {
            break;
        }
        x = next;
    }
    Ok(LocalExpansion { y, x })
}

/// Both curve equations hold modulo `z^N`.
pub fn expansion_satisfies_curve(params: &CurveParams, e: &LocalExpansion) -> bool {
    let t = params.tower();
    let n = e.y.precision;
    let zm = LocalSeries::monomial(t.one(), params.m(), n);
    let kummer = e.y.q_power(t, 2).sub(t, &e.y) == zm;
    let hermitian = e.x.q_power(t, 1).add(t, &e.x) == e.y.q_power(t, 1).mul(t, &e.y);
    kummer && hermitian
}

/// The valuation identities behind the non-lifting of `ω : x ↦ 1/x`.
///
/// With `r = q^(n-3)`, the identity at `P_∞` reads
/// `-q^3 = -q^n + r - 1 + v`, where `v` is the zero order of `f` at `P_0`.
/// `claimed_zero_order` is the value `(r - 1)(q^3 + 1)` substituted into
/// the identity at `P_0`, `1 = r^2 - (q^n + 1)(r - 1) + r v`, which then
/// leaves `residual = 2r(r - 1)`. Solving the identity at `P_∞` for `v`
/// gives `forced_zero_order = (r - 1)(q^3 - 1)` instead; with that value the
/// identity at `P_0` leaves `forced_residual`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftingObstruction {
    pub q: u64,
    pub n: u32,
    pub claimed_zero_order: i128,
    pub residual: i128,
    pub lifts_possible: bool,
    pub forced_zero_order: i128,
    pub forced_residual: i128,
    /// Whether the claimed zero order satisfies the identity at `P_∞`.
    pub claim_consistent: bool,
}

pub fn lifting_obstruction(p: u32, h: u32, n: u32) -> Result<LiftingObstruction> {
    check_params(p, h, n)?;
    let q = (p as i128).pow(h);
    let q3 = q.pow(3);
    let qn = q.pow(n);
    let r = q.pow(n - 3);

    let at_p0 = |v: i128| r * r - (qn + 1) * (r - 1) + r * v - 1;
    let claimed = (r - 1) * (q3 + 1);
    let forced = -q3 + qn - r + 1;
    debug_assert_eq!(forced, (r - 1) * (q3 - 1));
    let residual = at_p0(claimed);
    debug_assert_eq!(residual, 2 * r * (r - 1));
    Ok(LiftingObstruction {
        q: q as u64,
        n,
        claimed_zero_order: claimed,
        residual,
        lifts_possible: residual == 0,
        forced_zero_order: forced,
        forced_residual: at_p0(forced),
        claim_consistent: claimed == forced,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HurwitzRatio {
    pub group_order: u64,
    /// `84 (g - 1)`.
    pub hurwitz_bound: u64,
    #[serde(serialize_with = "serialize_rational")]
    pub ratio: Rational,
}

/// `|Γ| / (84 (g(C_n) - 1))`.
pub fn hurwitz_ratio(q: u64, n: u32) -> Result<HurwitzRatio> {
    let g = genus_formula(CurveId::Cn, q, n);
    if g < 2 {
        return Err(Error::GenusTooSmall(g as i128));
    }
    let group_order = q.pow(3) * (q.pow(n) + 1) * (q - 1);
    let hurwitz_bound = 84 * (g - 1);
    Ok(HurwitzRatio {
        group_order,
        hurwitz_bound,
        ratio: Rational::new(group_order as i128, hurwitz_bound as i128),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn validation() {
        assert!(RamificationFiltration::new(vec![(3, 4), (9, 4)]).is_err());
        assert!(RamificationFiltration::new(vec![(9, 4), (3, 2)]).is_err());
        assert!(RamificationFiltration::new(vec![(3, 8), (9, 3)]).is_err());
        assert!(RamificationFiltration::new(vec![(3, 8), (9, 1)]).is_err());
        assert_eq!(RamificationFiltration::new(vec![]).unwrap(), RamificationFiltration::trivial());
    }

    #[test]
    fn order_lookup() {
        let f = build_filtration(Cover::CnP1z, 2, 5).unwrap();
        assert_eq!(f.segments(), &[(11, 8), (33, 2)]);
        assert_eq!((f.order_at(0), f.order_at(11), f.order_at(12), f.order_at(33), f.order_at(34)), (8, 8, 2, 2, 1));
    }

    #[test]
    fn phi_and_psi() {
        let f = build_filtration(Cover::CnP1z, 2, 5).unwrap();
        assert_eq!(f.phi(r(5, 1)), r(5, 1));
        assert_eq!(f.phi(r(33, 1)), r(33, 2));
        assert_eq!(f.phi(r(35, 1)), r(33, 2) + r(2, 8));
        for k in 0..200 {
            let u = r(k, 3);
            assert_eq!(f.psi(f.phi(u)), u);
        }
        assert_eq!(RamificationFiltration::trivial().phi(r(7, 2)), r(7, 2));
    }

    #[test]
    fn different_of_runs() {
        let f = build_filtration(Cover::CnP1z, 2, 5).unwrap();
        assert_eq!(f.different_exponent(), 12 * 7 + 22);
        assert_eq!(f.with_segment_order(1, 4).different_exponent(), 12 * 7 + 22 * 3);
    }

    #[test]
    fn tame_cover_has_no_filtration() {
        assert!(matches!(build_filtration(Cover::CnHq, 2, 3), Err(Error::UnknownCover(_))));
        assert!(matches!("Cn/P1x".parse::<Cover>(), Err(Error::UnknownCover(_))));
        assert_eq!("cn/p1z".parse::<Cover>().unwrap(), Cover::CnP1z);
    }

    #[test]
    fn series_too_short() {
        let params = CurveParams::new(2, 1, 3).unwrap();
        assert_eq!(
            local_expand_p0(&params, 9),
            Err(Error::PrecisionTooLow { given: 9, needed: 9 })
        );
    }

    #[test]
    fn hurwitz_small_genus() {
        assert_eq!(hurwitz_ratio(2, 3).unwrap().ratio, r(72, 84 * 9));
        assert_eq!(hurwitz_ratio(1, 3), Err(Error::GenusTooSmall(0)));
    }
}
