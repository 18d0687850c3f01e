use std::collections::{BTreeSet, HashMap, HashSet};

use maximal_curves::autgroup::GammaGroup;
use maximal_curves::curves::{closed_count, curve_stats, enumerate_points};
use maximal_curves::field::AdditiveKind;
use maximal_curves::grouptheory::{
    self, examples, ti_check, unique_fixed_point_profile, verify_lbob, FiniteGroupTable, GroupAction, GroupLaw,
    DEFAULT_GROUP_BUDGET,
};
use maximal_curves::ramification::{
    build_filtration, cover_description, expansion_satisfies_curve, filtration_report, group_filtration,
    hurwitz_ratio, known_lower_jumps, lifting_obstruction, local_expand_p0, quotient_filtration, rational_string,
    riemann_hurwitz_check, valuation_table, BranchPoint, Cover, Valuations,
};
use maximal_curves::{CurveId, CurveParams, GammaElement, SubgroupId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::report::Section;

/// Permutation images of `Γ` are only built below this many entries.
const PERMUTATION_LIMIT: u64 = 20_000_000;
const AXIOM_SAMPLES: usize = 500;
const SAMPLE_SEED: u64 = 0x5eed;

pub struct Context {
    pub params: CurveParams,
    pub budget: u64,
    pub precision: u64,
    gamma: Option<GammaGroup>,
}

impl Context {
    pub fn new(params: CurveParams, budget: u64, precision: Option<u64>) -> Self {
        let precision = precision.unwrap_or(2 * (params.qn() + 1));
        Context {
            params,
            budget,
            precision,
            gamma: None,
        }
    }

    fn gamma(&mut self) -> anyhow::Result<&GammaGroup> {
        if self.gamma.is_none() {
            self.gamma = Some(GammaGroup::new(&self.params)?);
        }
        Ok(self.gamma.as_ref().expect("just built"))
    }

    fn group_budget(&self) -> u64 {
        self.budget.min(DEFAULT_GROUP_BUDGET)
    }
}

pub fn count(ctx: &mut Context) -> anyhow::Result<Section> {
    let mut s = Section::new("count");
    let params = &ctx.params;
    let mut stats = Vec::new();
    for c in [CurveId::Hermitian, CurveId::Xn, CurveId::Cn] {
        let st = curve_stats(c, params);
        let name = c.name();
        s.expect_eq(&format!("{name}.count"), st.count, closed_count(c, params.q(), params.n()));
        s.expect_eq(&format!("{name}.maximal"), st.count, st.bound);
        if c != CurveId::Hermitian {
            let listed = enumerate_points(c, params, ctx.budget)?.len() as u64;
            s.expect_eq(&format!("{name}.enumerated"), listed, st.count);
        }
        stats.push(st);
    }
    s.data = json!({ "curves": stats });
    Ok(s)
}

pub fn group(ctx: &mut Context) -> anyhow::Result<Section> {
    let budget = ctx.group_budget();
    let g = ctx.gamma()?;
    let params = g.params();
    let (p, q, m, qn) = (params.p() as u64, params.q(), params.m(), params.qn());
    let mut s = Section::new("group");

    let mut sets = HashMap::new();
    for id in SubgroupId::ALL {
        let elems = g.enumerate_subgroup(id, budget)?;
        s.expect_eq(&format!("{id}.order"), elems.len() as u64, id.order(params));
        sets.insert(id, elems);
    }

    let mut reports = Vec::new();
    for id in [
        SubgroupId::Q,
        SubgroupId::Z,
        SubgroupId::Sigma,
        SubgroupId::M,
        SubgroupId::N,
        SubgroupId::Gamma,
    ] {
        reports.push(g.structure_report(id, budget)?);
    }
    let [rq, rz, rsigma, _, _, rgamma] = &reports[..] else {
        unreachable!()
    };

    s.expect_eq("Q.abelian", rq.is_abelian, false);
    s.expect_eq("Q.exponent", rq.exponent, if p == 2 { 4 } else { p });
    s.expect_eq("Q.center_order", rq.center_order, q);
    let derived = rq.derived_subgroup_order;
    s.expect("Q.derived_in_Z", q % derived == 0, derived, format!("divisor of {q}"));

    let qs = &sets[&SubgroupId::Q];
    let z_of_q: HashSet<GammaElement> = grouptheory::center(g, qs, &g.generators(SubgroupId::Q)).into_iter().collect();
    let z: HashSet<GammaElement> = sets[&SubgroupId::Z].iter().cloned().collect();
    s.expect("Z.is_center_of_Q", z_of_q == z, z_of_q.len(), q);
    s.expect_eq("Z.elementary_abelian", rz.is_elementary_abelian, true);

    let quo = g.quotient_report(SubgroupId::Q, SubgroupId::Z, budget)?;
    s.expect_eq("Q/Z.order", quo.order, q * q);
    s.expect_eq("Q/Z.elementary_abelian", quo.is_elementary_abelian, true);

    s.expect_eq("Sigma.cyclic", rsigma.exponent, rsigma.order);

    // At q = 2 the torus never scales x, so Z is central as well.
    let all = &sets[&SubgroupId::Gamma];
    let center: HashSet<GammaElement> = grouptheory::center(g, all, &g.generators(SubgroupId::Gamma)).into_iter().collect();
    let (label, expected_order) = if q == 2 { ("Z x M", q * m) } else { ("M", m) };
    let expected: HashSet<GammaElement> = if q == 2 {
        let zs = &sets[&SubgroupId::Z];
        sets[&SubgroupId::M]
            .iter()
            .flat_map(|t| zs.iter().map(move |u| g.compose(u, t)))
            .collect()
    } else {
        sets[&SubgroupId::M].iter().cloned().collect()
    };
    s.expect("Gamma.center", center == expected, center.len(), format!("{label} of order {expected_order}"));
    s.expect_eq("Gamma.center_order", rgamma.center_order, expected_order);

    // Torus elements commuting with Q are exactly M; those fixing Z pointwise are exactly N.
    let torus = g.torus_order();
    let zs = &sets[&SubgroupId::Z];
    let commuting_q: Vec<u64> = (0..torus)
        .filter(|&k| qs.iter().all(|x| g.torus_twist(g.torus(k as i64), &x.u) == x.u))
        .collect();
    let m_exponents: Vec<u64> = (0..torus).step_by((q * q - 1) as usize).collect();
    s.expect("M.centralizes_Q", commuting_q == m_exponents, commuting_q.len(), m);
    let fixing_z: Vec<u64> = (0..torus)
        .filter(|&k| zs.iter().all(|x| g.torus_twist(g.torus(k as i64), &x.u) == x.u))
        .collect();
    let n_exponents: Vec<u64> = (0..torus).step_by((q - 1) as usize).collect();
    s.expect("N.centralizes_Z", fixing_z == n_exponents, fixing_z.len(), qn + 1);

    let mut bad = 0u64;
    for k in 0..torus {
        let sk = GammaElement {
            u: g.q_identity(),
            t: g.torus(k as i64),
        };
        for u in g.generators(SubgroupId::Q) {
            let conj = g.compose(&g.compose(&sk, &u), &g.inverse(&sk));
            let twisted = GammaElement {
                u: g.torus_twist(sk.t, &u.u),
                t: g.torus(0),
            };
            bad += (conj != twisted) as u64;
        }
    }
    s.expect_eq("conjugation_law.failures", bad, 0);

    s.data = json!({ "structure": reports, "quotient": quo });
    Ok(s)
}

pub fn orbits(ctx: &mut Context) -> anyhow::Result<Section> {
    let budget = ctx.budget;
    let g = ctx.gamma()?;
    let params = g.params();
    let (q, n) = (params.q(), params.n());
    let gamma_order = SubgroupId::Gamma.order(params);
    let mut s = Section::new("orbits");

    let decomposition = g.orbits(SubgroupId::Gamma, budget)?;
    let copies = (q.pow(n - 1) - 1) / (q - 1);
    let mut expected = vec![1, q.pow(3)];
    expected.extend(std::iter::repeat_n(gamma_order, copies as usize));
    s.expect_eq("Gamma.profile", decomposition.sizes(), expected);

    let total: u64 = decomposition.sizes().iter().sum();
    let q_orbits = g.orbits(SubgroupId::Q, budget)?;
    let mut expected_q = vec![1];
    expected_q.extend(std::iter::repeat_n(q.pow(3), ((total - 1) / q.pow(3)) as usize));
    s.expect_eq("Q.profile", q_orbits.sizes(), expected_q);
    s.expect_eq("Q.semiregular", g.semiregular_check(budget)?, true);

    s.data = json!({ "gamma": decomposition });
    Ok(s)
}

pub fn ramification(ctx: &mut Context) -> anyhow::Result<Section> {
    let (p, h, n) = (ctx.params.p(), ctx.params.h(), ctx.params.n());
    let (q, m, qn) = (ctx.params.q(), ctx.params.m(), ctx.params.qn());
    let mut s = Section::new("ramification");
    let mut reports = Vec::new();

    for cover in Cover::WILD {
        let r = filtration_report(cover, q, n)?;
        s.expect_eq(&format!("{cover}.lower_jumps"), r.lower_jumps.clone(), known_lower_jumps(cover, q, n)?);
        let upper: Vec<String> = r.upper_jumps.iter().map(rational_string).collect();
        s.expect(
            &format!("{cover}.upper_jumps"),
            upper.first() == r.lower_jumps.first().map(|j| j.to_string()).as_ref(),
            &upper,
            "first upper jump equals first lower jump",
        );
        s.expect_eq(&format!("{cover}.rh"), r.rh_ok, true);
        s.expect(&format!("{cover}.different"), r.rh_ok, r.different, "balances Riemann-Hurwitz");
        reports.push(r);
    }
    let tame = cover_description(Cover::CnHq, q, n)?;
    s.expect_eq(&format!("{}.rh", Cover::CnHq), riemann_hurwitz_check(&tame), true);

    let mut d = cover_description(Cover::CnP1z, q, n)?;
    if let BranchPoint::Wild(f) = d.branch_points[0].clone() {
        for order in [q * q, 1] {
            d.branch_points[0] = BranchPoint::Wild(f.with_segment_order(1, order));
            s.expect_eq(&format!("mutation.middle_order_{order}.rh"), riemann_hurwitz_check(&d), false);
        }
    }

    let g_filt = build_filtration(Cover::CnP1z, q, n)?;
    let z_filt = build_filtration(Cover::CnXn, q, n)?;
    s.expect_eq("quotient_by_Z.lower_jumps", quotient_filtration(&g_filt, &z_filt)?.lower_jumps(), vec![m]);
    s.expect_eq("pullback.identity", m * (q + 1), qn + 1);
    let pulled = build_filtration(Cover::HqP1y, q, n)?.pullback_tame(m);
    s.expect_eq("pullback.lower_jumps", pulled.lower_jumps(), vec![qn + 1]);

    let budget = ctx.group_budget();
    if SubgroupId::Q.order(&ctx.params) <= budget {
        let g = ctx.gamma()?;
        s.expect_eq("Cn/P1z.from_group", group_filtration(g, SubgroupId::Q)?, g_filt.clone());
        s.expect_eq("Cn/Xn.from_group", group_filtration(g, SubgroupId::Z)?, z_filt.clone());
    } else {
        s.skip("Cn/P1z.from_group", "Q exceeds the budget");
    }

    let v = valuation_table(q, n);
    let (mi, qi) = (m as i64, q as i64);
    s.expect_eq(
        "valuations.p0",
        v.p0,
        Valuations {
            x: (qi + 1) * mi,
            y: mi,
            z: 1,
            t: qi.pow(n - 3) - (qi + 1) * mi,
        },
    );
    s.expect_eq("valuations.p_inf.y", v.p_inf.y, -qi * mi);
    s.expect_eq("valuations.p_inf.t", v.p_inf.t, 1);

    let o = lifting_obstruction(p, h, n)?;
    let r = (q as i128).pow(n - 3);
    s.expect_eq("lifting.residual", o.residual, 2 * r * (r - 1));
    s.expect_eq("lifting.lifts_possible", o.lifts_possible, n == 3);
    s.expect_eq("lifting.forced_residual", o.forced_residual, 0);
    s.expect_eq("lifting.claim_consistent", o.claim_consistent, n == 3);

    let mut data = json!({ "filtrations": reports, "valuations": v, "lifting": o });
    if let Ok(hr) = hurwitz_ratio(q, n) {
        data["hurwitz"] = serde_json::to_value(hr)?;
    }
    s.data = data;
    Ok(s)
}

pub fn expand(ctx: &mut Context) -> anyhow::Result<Section> {
    let params = &ctx.params;
    let mut s = Section::new("expand");
    let e = local_expand_p0(params, ctx.precision)?;
    s.expect_eq("y.leading_exponent", e.y.leading_exponent(), Some(params.m()));
    s.expect_eq("x.leading_exponent", e.x.leading_exponent(), Some(params.qn() + 1));
    s.expect_eq("equations_mod_z^N", expansion_satisfies_curve(params, &e), true);
    s.data = json!({ "precision": ctx.precision, "series": e });
    Ok(s)
}

pub fn field(ctx: &mut Context) -> anyhow::Result<Section> {
    let t = ctx.params.tower();
    let (q, m, n) = (ctx.params.q(), ctx.params.m(), ctx.params.n());
    let size = t.size();
    let mut s = Section::new("field");

    s.expect_eq("size", size, q.pow(2 * n));
    s.expect_eq("primitive.order", t.multiplicative_order(t.primitive())?, size - 1);
    s.expect_eq("frobenius.full_cycle", t.frobenius(t.primitive(), t.degree()), t.primitive().clone());

    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let mut failures = 0u64;
    for _ in 0..AXIOM_SAMPLES {
        let [a, b, c] = [(); 3].map(|_| t.element(rng.gen_range(0..size)));
        let assoc = t.mul(&t.mul(&a, &b), &c) == t.mul(&a, &t.mul(&b, &c));
        let distrib = t.mul(&a, &t.add(&b, &c)) == t.add(&t.mul(&a, &b), &t.mul(&a, &c));
        let inverse = a.is_zero() || t.mul(&a, &t.inv(&a)?) == t.one();
        let frob = t.frobenius(&t.add(&a, &b), 1) == t.add(&t.frobenius(&a, 1), &t.frobenius(&b, 1))
            && t.frobenius(&t.mul(&a, &b), 1) == t.mul(&t.frobenius(&a, 1), &t.frobenius(&b, 1));
        failures += !(assoc && distrib && inverse && frob) as u64;
    }
    s.expect_eq("axioms.sample_failures", failures, 0);

    let orders: BTreeSet<u64> = [ctx.params.p() as u64, q, q * q, q.pow(n)].into();
    for sub in orders {
        let elems = t.enumerate_subfield(sub)?;
        let members = elems.iter().map(|e| t.in_subfield(e, sub)).collect::<Result<Vec<_>, _>>()?;
        s.expect(
            &format!("subfield_{sub}.size"),
            elems.len() as u64 == sub && members.iter().all(|x| *x),
            elems.len(),
            sub,
        );
    }

    let fq2 = t.enumerate_subfield(q * q)?;
    let mut trace_zero = 0u64;
    for a in &fq2 {
        trace_zero += t.trace_subfield(a)?.is_zero() as u64;
    }
    s.expect_eq("trace.zero_count", trace_zero, q);

    s.expect_eq("additive.AsQ.kernel", t.count_additive(AdditiveKind::AsQ, &t.zero()), q);
    s.expect_eq("additive.AsQ2.kernel", t.count_additive(AdditiveKind::AsQ2, &t.zero()), q * q);
    let total: u64 = t.elements().map(|c| t.count_additive(AdditiveKind::AsQ, &c)).sum();
    s.expect_eq("additive.AsQ.partition", total, size);

    let mut solvable = 0u64;
    for c in t.elements().filter(|c| !c.is_zero()) {
        solvable += t.has_kummer_root(m, &c)? as u64;
    }
    s.expect_eq("kummer.solvable_values", solvable, (size - 1) / m);

    let k = (q.pow(n) + 1) * (q - 1);
    s.expect_eq("root_of_unity.order", t.multiplicative_order(&t.root_of_unity(k)?)?, k);
    s.data = json!({ "tower": t.description() });
    Ok(s)
}

pub fn group_theory(ctx: &mut Context) -> anyhow::Result<Section> {
    let mut s = Section::new("grouptheory");
    for (name, (q, r, action)) in [
        ("sign_flip", examples::sign_flip_instance()),
        ("trivial", examples::trivial_instance()),
        ("cube_root", examples::cube_root_instance()),
    ] {
        s.expect_eq(&format!("lbob.{name}"), verify_lbob(&q, &r, &action)?, true);
    }
    let (a5, sylow) = examples::a5_with_sylow2();
    s.expect_eq("ti.A5_sylow2", ti_check(&a5, &sylow)?, true);
    let (s4, d8) = examples::s4_with_d8();
    s.expect_eq("ti.S4_sylow2", ti_check(&s4, &d8)?, false);

    let budget = ctx.budget;
    let g = ctx.gamma()?;
    let gamma_order = SubgroupId::Gamma.order(g.params());
    let points = enumerate_points(CurveId::Cn, g.params(), budget)?;
    if gamma_order * points.len() as u64 > PERMUTATION_LIMIT {
        s.skip("gamma_image", "permutation image too large");
        return Ok(s);
    }
    let image = |id| -> anyhow::Result<FiniteGroupTable> {
        let perms = g.point_permutations(&g.generators(id), &points)?;
        Ok(FiniteGroupTable::closure(&perms, gamma_order)?)
    };
    let gamma_image = image(SubgroupId::Gamma)?;
    let q_image = image(SubgroupId::Q)?;
    s.expect_eq("gamma_image.order", gamma_image.order() as u64, gamma_order);
    s.expect_eq("gamma_image.Q_normal", gamma_image.normalizer(&q_image).order(), gamma_image.order());
    s.expect_eq("gamma_image.Q_is_TI", ti_check(&gamma_image, &q_image)?, true);
    let profile = unique_fixed_point_profile(&GroupAction::natural(gamma_image), &q_image)?;
    let off = profile.iter().filter(|(_, fixed)| *fixed != 1).count();
    s.expect_eq("gamma_image.Q_unique_fixed_point", off, 0);
    Ok(s)
}
