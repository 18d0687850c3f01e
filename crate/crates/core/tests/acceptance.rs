//! Acceptance suite: one test per criterion, each printing a single
//! `criterion N ... PASS|FAIL` line with its wall time. Run with
//! `cargo test --test acceptance -- --nocapture --test-threads 1` to see
//! the lines in order.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use maximal_curves::autgroup::GammaGroup;
use maximal_curves::curves::{
    closed_count, count_points, enumerate_points, genus, hasse_weil_bound, DEFAULT_BUDGET,
};
use maximal_curves::grouptheory::{self, examples, ti_check, verify_lbob, GroupLaw, DEFAULT_GROUP_BUDGET};
use maximal_curves::ramification::{
    build_filtration, cover_description, expansion_satisfies_curve, lifting_obstruction, local_expand_p0,
    quotient_filtration, riemann_hurwitz_check, valuation_table, BranchPoint, Cover, Rational,
};
use maximal_curves::{CurveId, CurveParams, CurvePoint, GammaElement, SubgroupId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CORPUS: [(u32, u32, u32); 4] = [(2, 1, 3), (2, 1, 5), (3, 1, 3), (2, 2, 3)];

/// Runs one criterion, prints its line and fails the test on any failure
/// or when the time limit is exceeded.
fn criterion(number: u32, title: &str, limit: Duration, body: impl FnOnce() -> Vec<String>) {
    let start = Instant::now();
    let failures = body();
    let elapsed = start.elapsed();
    let mut failures = failures;
    if elapsed > limit {
        failures.push(format!("took {elapsed:.2?}, limit {limit:?}"));
    }
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {number:>2} {title} ... {status} ({:.2} s)", elapsed.as_secs_f64());
    for f in &failures {
        println!("    {f}");
    }
    assert!(failures.is_empty(), "criterion {number} failed: {failures:?}");
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        failures.push(what());
    }
}

fn gamma(p: u32, h: u32, n: u32) -> GammaGroup {
    GammaGroup::new(&CurveParams::new(p, h, n).unwrap()).unwrap()
}

#[test]
fn criterion_01_point_counts() {
    criterion(1, "point counts", Duration::from_secs(15), || {
        let mut failures = Vec::new();
        for ((p, h, n), cn_expected) in [((2, 1, 3), 225u64), ((2, 1, 5), 3969), ((3, 1, 3), 6076)] {
            let start = Instant::now();
            let params = CurveParams::new(p, h, n).unwrap();
            let q = params.q();
            let cn = enumerate_points(CurveId::Cn, &params, DEFAULT_BUDGET).unwrap().len() as u64;
            let formula = q.pow(2 * n + 2) - q.pow(n + 3) + q.pow(n + 2) + 1;
            check(&mut failures, cn == formula && cn == cn_expected, || {
                format!("C_n at ({p},{h},{n}): {cn} points, formula {formula}")
            });
            let xn = enumerate_points(CurveId::Xn, &params, DEFAULT_BUDGET).unwrap().len() as u64;
            let formula = closed_count(CurveId::Xn, q, n);
            check(&mut failures, xn == formula, || format!("X_n at ({p},{h},{n}): {xn} points, formula {formula}"));
            let took = start.elapsed();
            check(&mut failures, took < Duration::from_secs(5), || {
                format!("({p},{h},{n}) took {took:.2?}")
            });
        }
        failures
    });
}

#[test]
fn criterion_02_maximality() {
    criterion(2, "maximality", Duration::from_secs(5), || {
        let mut failures = Vec::new();
        for (p, h, n) in CORPUS {
            let params = CurveParams::new(p, h, n).unwrap();
            for c in [CurveId::Cn, CurveId::Xn] {
                let count = count_points(c, &params);
                let bound = hasse_weil_bound(genus(c, &params), params.qn());
                check(&mut failures, count == bound, || {
                    format!("{c} at ({p},{h},{n}): {count} points, bound {bound}")
                });
            }
        }
        failures
    });
}

#[test]
fn criterion_03_group_structure() {
    criterion(3, "group structure", Duration::from_secs(30), || {
        let mut failures = Vec::new();
        for (p, h, n) in [(2, 1, 3), (3, 1, 3)] {
            let g = gamma(p, h, n);
            let params = g.params();
            let (q, m) = (params.q(), params.m());
            let at = format!("({p},{h},{n})");

            let qs = g.enumerate_subgroup(SubgroupId::Q, DEFAULT_GROUP_BUDGET).unwrap();
            let q_report = g.structure_report(SubgroupId::Q, DEFAULT_GROUP_BUDGET).unwrap();
            let expected_exp = if p == 2 { 4 } else { p as u64 };
            check(&mut failures, qs.len() as u64 == q.pow(3), || format!("|Q| = {} at {at}", qs.len()));
            check(&mut failures, !q_report.is_abelian, || format!("Q abelian at {at}"));
            check(&mut failures, q_report.exponent == expected_exp, || {
                format!("exp(Q) = {} at {at}", q_report.exponent)
            });

            let z_of_q: HashSet<GammaElement> = grouptheory::center(&g, &qs, &g.generators(SubgroupId::Q))
                .into_iter()
                .collect();
            let z: HashSet<GammaElement> = g
                .enumerate_subgroup(SubgroupId::Z, DEFAULT_GROUP_BUDGET)
                .unwrap()
                .into_iter()
                .collect();
            check(&mut failures, z_of_q == z && z.len() as u64 == q, || {
                format!("|Z(Q)| = {} at {at}", z_of_q.len())
            });
            let z_report = g.structure_report(SubgroupId::Z, DEFAULT_GROUP_BUDGET).unwrap();
            check(&mut failures, z_report.is_elementary_abelian, || format!("Z not elementary abelian at {at}"));
            let quo = g.quotient_report(SubgroupId::Q, SubgroupId::Z, DEFAULT_GROUP_BUDGET).unwrap();
            check(&mut failures, quo.order == q * q && quo.is_elementary_abelian, || {
                format!("Q/Z of order {} (elementary abelian: {}) at {at}", quo.order, quo.is_elementary_abelian)
            });

            let all = g.enumerate_subgroup(SubgroupId::Gamma, DEFAULT_GROUP_BUDGET).unwrap();
            let order = q.pow(3) * (params.qn() + 1) * (q - 1);
            check(&mut failures, all.len() as u64 == order, || format!("|Γ| = {} at {at}", all.len()));
            let center: HashSet<GammaElement> = grouptheory::center(&g, &all, &g.generators(SubgroupId::Gamma))
                .into_iter()
                .collect();
            let m_set: HashSet<GammaElement> = g
                .enumerate_subgroup(SubgroupId::M, DEFAULT_GROUP_BUDGET)
                .unwrap()
                .into_iter()
                .collect();
            check(&mut failures, center == m_set && center.len() as u64 == m, || {
                format!(
                    "Z(Γ) has order {} at {at}, M has order {m}; Z(Γ) = M is {}",
                    center.len(),
                    center == m_set
                )
            });
        }
        failures
    });
}

#[test]
fn criterion_04_conjugation_law() {
    criterion(4, "conjugation law", Duration::from_secs(30), || {
        let mut failures = Vec::new();
        let conj_holds = |g: &GammaGroup, k: u64, u: &GammaElement, pt: &CurvePoint| {
            let s = GammaElement {
                u: g.q_identity(),
                t: g.torus(k as i64),
            };
            let twisted = GammaElement {
                u: g.torus_twist(s.t, &u.u),
                t: g.torus(0),
            };
            let conj = g.compose(&g.compose(&s, u), &g.inverse(&s));
            g.act_unchecked(&s, &g.act_unchecked(u, &g.act_unchecked(&g.inverse(&s), pt))) == g.act_unchecked(&twisted, pt)
                && conj == twisted
        };

        let g = gamma(2, 1, 3);
        let pts = enumerate_points(CurveId::Cn, g.params(), DEFAULT_BUDGET).unwrap();
        let qs = g.enumerate_subgroup(SubgroupId::Q, DEFAULT_GROUP_BUDGET).unwrap();
        let mut bad = 0;
        for k in 0..g.torus_order() {
            for u in &qs {
                bad += pts.iter().filter(|pt| !conj_holds(&g, k, u, pt)).count();
            }
        }
        check(&mut failures, bad == 0, || format!("{bad} failures at (2,1,3)"));

        let g = gamma(3, 1, 3);
        let pts = enumerate_points(CurveId::Cn, g.params(), DEFAULT_BUDGET).unwrap();
        let qs = g.enumerate_subgroup(SubgroupId::Q, DEFAULT_GROUP_BUDGET).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let bad = (0..10_000)
            .filter(|_| {
                let k = rng.gen_range(0..g.torus_order());
                let u = &qs[rng.gen_range(0..qs.len())];
                let pt = &pts[rng.gen_range(0..pts.len())];
                !conj_holds(&g, k, u, pt)
            })
            .count();
        check(&mut failures, bad == 0, || format!("{bad} of 10^4 samples fail at (3,1,3)"));
        failures
    });
}

#[test]
fn criterion_05_orbit_profile() {
    criterion(5, "orbit profile", Duration::from_secs(90), || {
        let mut failures = Vec::new();
        for (p, h, n) in [(2, 1, 3), (2, 1, 5), (3, 1, 3)] {
            let start = Instant::now();
            let g = gamma(p, h, n);
            let q = g.params().q();
            let big = q.pow(3) * (g.params().qn() + 1) * (q - 1);
            let copies = (q.pow(n - 1) - 1) / (q - 1);
            let mut expected = vec![1, q.pow(3)];
            expected.extend(std::iter::repeat_n(big, copies as usize));
            let sizes = g.orbits(SubgroupId::Gamma, DEFAULT_BUDGET).unwrap().sizes();
            check(&mut failures, sizes == expected, || format!("({p},{h},{n}): {sizes:?}"));
            let took = start.elapsed();
            check(&mut failures, took < Duration::from_secs(60), || format!("({p},{h},{n}) took {took:.2?}"));
        }

        let g = gamma(2, 1, 3);
        let decomposition = g.orbits(SubgroupId::Gamma, DEFAULT_BUDGET).unwrap();
        let all = g.enumerate_subgroup(SubgroupId::Gamma, DEFAULT_GROUP_BUDGET).unwrap();
        let mut label: HashMap<CurvePoint, usize> = HashMap::new();
        for (i, o) in decomposition.orbits.iter().enumerate() {
            for x in &all {
                label.insert(g.act_unchecked(x, &o.representative), i);
            }
        }
        let affine: Vec<CurvePoint> = label.keys().filter(|p| !p.is_infinity()).cloned().collect();
        let disagreements = affine
            .iter()
            .flat_map(|a| affine.iter().map(move |b| (a, b)))
            .filter(|(a, b)| g.same_gamma_orbit(a, b).unwrap() != (label[*a] == label[*b]))
            .count();
        check(&mut failures, disagreements == 0, || {
            format!("z-criterion disagrees with the search on {disagreements} pairs")
        });
        failures
    });
}

#[test]
fn criterion_06_semiregularity() {
    criterion(6, "semiregularity", Duration::from_secs(30), || {
        let mut failures = Vec::new();
        for (p, h, n) in [(2, 1, 3), (2, 1, 5), (3, 1, 3)] {
            let g = gamma(p, h, n);
            let pts = enumerate_points(CurveId::Cn, g.params(), DEFAULT_BUDGET).unwrap();
            let id = g.identity();
            let qs = g.enumerate_subgroup(SubgroupId::Q, DEFAULT_GROUP_BUDGET).unwrap();
            for x in qs.iter().filter(|x| **x != id) {
                let fixed: Vec<&CurvePoint> = pts.iter().filter(|pt| g.act_unchecked(x, pt) == **pt).collect();
                check(&mut failures, fixed == [&CurvePoint::Infinity], || {
                    format!("({p},{h},{n}): an element fixes {} points", fixed.len())
                });
            }
            check(&mut failures, g.semiregular_check(DEFAULT_BUDGET).unwrap(), || {
                format!("semiregular_check false at ({p},{h},{n})")
            });
        }
        failures
    });
}

#[test]
fn criterion_07_riemann_hurwitz() {
    criterion(7, "Riemann-Hurwitz", Duration::from_secs(1), || {
        let mut failures = Vec::new();
        for (p, h, _) in CORPUS {
            let q = (p as u64).pow(h);
            for n in [3u32, 5] {
                for cover in Cover::WILD {
                    let d = cover_description(cover, q, n).unwrap();
                    check(&mut failures, riemann_hurwitz_check(&d), || format!("{cover} at q={q}, n={n}"));
                }
                let mut d = cover_description(Cover::CnP1z, q, n).unwrap();
                let BranchPoint::Wild(f) = d.branch_points[0].clone() else {
                    unreachable!()
                };
                for order in [q * q, 1] {
                    d.branch_points[0] = BranchPoint::Wild(f.with_segment_order(1, order));
                    check(&mut failures, !riemann_hurwitz_check(&d), || {
                        format!("mutated middle order {order} passes at q={q}, n={n}")
                    });
                }
            }
        }
        failures
    });
}

#[test]
fn criterion_08_numbering() {
    criterion(8, "numbering conversion", Duration::from_secs(1), || {
        let mut failures = Vec::new();
        for (p, h, n) in CORPUS {
            let q = (p as u64).pow(h);
            let m = (q.pow(n) + 1) / (q + 1);
            for cover in Cover::WILD {
                let f = build_filtration(cover, q, n).unwrap();
                let first = f.lower_jumps()[0];
                check(&mut failures, f.upper_jumps()[0] == Rational::from_integer(first as i128), || {
                    format!("{cover}: first jump differs in the upper numbering")
                });
            }
            let g = build_filtration(Cover::CnP1z, q, n).unwrap();
            let z = build_filtration(Cover::CnXn, q, n).unwrap();
            let quotient = quotient_filtration(&g, &z).unwrap();
            check(&mut failures, quotient.lower_jumps() == [m], || {
                format!("quotient by Z has jumps {:?}, expected [{m}]", quotient.lower_jumps())
            });
            check(&mut failures, m * (q + 1) == q.pow(n) + 1, || format!("m(q+1) ≠ q^n+1 at q={q}"));
            let pulled = build_filtration(Cover::HqP1y, q, n).unwrap().pullback_tame(m);
            check(&mut failures, pulled.lower_jumps() == [q.pow(n) + 1], || "pullback jump".into());
        }
        failures
    });
}

#[test]
fn criterion_09_series() {
    criterion(9, "valuations and series", Duration::from_secs(5), || {
        let mut failures = Vec::new();
        for (p, h, n) in [(2, 1, 3), (3, 1, 3)] {
            let params = CurveParams::new(p, h, n).unwrap();
            let qn1 = params.qn() + 1;
            let e = local_expand_p0(&params, 2 * qn1).unwrap();
            let leading = (e.y.leading_exponent(), e.x.leading_exponent());
            check(&mut failures, leading == (Some(params.m()), Some(qn1)), || {
                format!("({p},{h},{n}): leading exponents {leading:?}")
            });
            let v = valuation_table(params.q(), n);
            check(&mut failures, (v.p0.y as u64, v.p0.x as u64) == (params.m(), qn1), || "valuation table".into());
            check(&mut failures, expansion_satisfies_curve(&params, &e), || {
                format!("({p},{h},{n}): series fail the curve equations")
            });
        }
        failures
    });
}

#[test]
fn criterion_10_lifting_obstruction() {
    criterion(10, "lifting obstruction", Duration::from_secs(1), || {
        let mut failures = Vec::new();
        for p in [2u32, 3, 5] {
            for n in [3u32, 5, 7, 9] {
                let o = lifting_obstruction(p, 1, n).unwrap();
                let r = (p as i128).pow(n - 3);
                check(&mut failures, o.residual == 2 * r * (r - 1), || format!("residual at p={p}, n={n}"));
                check(&mut failures, (o.residual == 0) == (n == 3) && o.lifts_possible == (n == 3), || {
                    format!("p={p}, n={n}: residual {} lifts {}", o.residual, o.lifts_possible)
                });
            }
        }
        failures
    });
}

#[test]
fn criterion_11_group_theory_oracle() {
    criterion(11, "group-theory oracle", Duration::from_secs(5), || {
        let mut failures = Vec::new();
        for (name, (q, r, action)) in [
            ("sign flips", examples::sign_flip_instance()),
            ("trivial", examples::trivial_instance()),
            ("cube roots", examples::cube_root_instance()),
        ] {
            check(&mut failures, verify_lbob(&q, &r, &action) == Ok(true), || format!("lbob {name}"));
        }
        let (a5, sylow) = examples::a5_with_sylow2();
        check(&mut failures, ti_check(&a5, &sylow) == Ok(true), || "A5 / Sylow-2".into());
        let (s4, d8) = examples::s4_with_d8();
        check(&mut failures, ti_check(&s4, &d8) == Ok(false), || "S4 / Sylow-2".into());
        failures
    });
}
