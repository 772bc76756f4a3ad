//! Seeded property suites over generated polynomial data. Each suite
//! returns one report line per law, aggregated over all instances.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Duration;

use rayon::prelude::*;

use crate::algebra::{int, rat, Rational};
use crate::atiyah::SymplecticModel;
use crate::cocycle::{
    verify_transition_equivariance, verify_triv_3form, BoxCover, LocalData2, Mode, OpenBox, SectionPair,
};
use crate::courant::{
    lie2_of_courant, lie2_of_preserving, GeneralizedSection, Preservation, SplitCourantModel, SplittingShift,
};
use crate::extension::{bu1_witness, centrality_check, ev_morphism, verify_coboundary_relation, verify_jx_cocycle};
use crate::exterior::{Chart, DifferentialForm, VectorField};
use crate::lie2::{
    check_l2a_axioms, check_morphism, iso_roundtrip, main_morphism, AbelianClosedLie2, HamFieldsAtPoint, Lie2Algebra,
    Lie2Element, TrivialHamLie2,
};
use crate::plectic::PlecticStructure;
use crate::random::Gen;
use crate::report::{Check, Report, Status};

pub const NAMES: &[&str] = &[
    "exterior",
    "prop35",
    "lemmas",
    "courant",
    "curvature",
    "lie2",
    "morphism",
    "iso",
    "atiyah",
    "extension",
    "cocycle",
];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub count: usize,
    pub max_degree: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            count: 200,
            max_degree: 3,
        }
    }
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Option<Report> {
    Some(match name {
        "exterior" => exterior(cfg),
        "prop35" => semi_bracket(cfg),
        "lemmas" => lemmas(cfg),
        "courant" => courant(cfg),
        "curvature" => curvature(cfg),
        "lie2" => lie2(cfg),
        "morphism" => morphism(cfg),
        "iso" => iso(cfg),
        "atiyah" => atiyah(cfg),
        "extension" => extension(cfg),
        "cocycle" => cocycle(),
        _ => return None,
    })
}

/// Folds per-instance reports into one check per id; a FAIL keeps the
/// first failing instance and its residual.
pub fn tally(instances: Vec<Report>) -> Report {
    let mut order: Vec<String> = Vec::new();
    let mut agg: BTreeMap<String, (Check, usize, Duration)> = BTreeMap::new();
    for (i, r) in instances.into_iter().enumerate() {
        for c in r.checks {
            match agg.get_mut(&c.id) {
                None => {
                    order.push(c.id.clone());
                    let mut first = c.clone();
                    if !c.passed() {
                        first.residual = format!("instance {i}: {}", c.residual);
                    }
                    agg.insert(c.id.clone(), (first, 1, c.elapsed));
                }
                Some((acc, n, t)) => {
                    *n += 1;
                    *t += c.elapsed;
                    if acc.passed() && !c.passed() {
                        acc.status = Status::Fail;
                        acc.residual = format!("instance {i}: {}", c.residual);
                    }
                }
            }
        }
    }
    let mut out = Report::new();
    for id in order {
        let (mut c, n, t) = agg.remove(&id).expect("present");
        c.anchor = format!("{} [{n} instances]", c.anchor);
        c.elapsed = t;
        out.push(c);
    }
    out
}

/// Generates inputs sequentially (deterministic) and checks them in parallel.
fn sample<T, G, F>(cfg: &SuiteConfig, salt: u64, mut gen: G, check: F) -> Report
where
    T: Send + Sync,
    G: FnMut(&mut Gen, usize) -> T,
    F: Fn(&T) -> Report + Send + Sync,
{
    let mut g = Gen::new(cfg.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15), cfg.max_degree);
    let inputs: Vec<T> = (0..cfg.count).map(|i| gen(&mut g, i)).collect();
    tally(inputs.par_iter().map(check).collect())
}

fn err_report(id: &str, e: impl std::fmt::Display) -> Report {
    let mut r = Report::new();
    r.push(Check::failed(id, "instance", e));
    r
}

pub fn standard_r3() -> Arc<PlecticStructure> {
    Arc::new(PlecticStructure::new(DifferentialForm::basis(&Chart::r3(), &[0, 1, 2])).expect("standard form"))
}

pub fn standard_r2() -> SymplecticModel {
    SymplecticModel::new(DifferentialForm::basis(&Chart::r2_qp(), &[0, 1])).expect("standard form")
}

/// `x dy`, `y dz`, `z dx` and friends.
fn structured_forms(c: &Chart) -> Vec<DifferentialForm> {
    let f = |coef: usize, b: usize| DifferentialForm::basis(c, &[b]).mul_fn(&c.coord(coef));
    vec![
        f(0, 1),
        f(1, 2),
        f(2, 0),
        f(0, 0),
        f(1, 0),
        DifferentialForm::basis(c, &[2]),
    ]
}

/// Rotation generators `xᵢ∂ⱼ − xⱼ∂ᵢ` and translations.
pub fn structured_fields(c: &Chart) -> Vec<VectorField> {
    let rot = |i: usize, j: usize| {
        &VectorField::basis(c, j).mul_fn(&c.coord(i)) - &VectorField::basis(c, i).mul_fn(&c.coord(j))
    };
    vec![
        rot(0, 1),
        rot(1, 2),
        rot(2, 0),
        VectorField::basis(c, 0),
        VectorField::basis(c, 1),
    ]
}

fn pick<T: Clone>(g: &mut Gen, xs: &[T]) -> T {
    xs[g.below(xs.len())].clone()
}

pub fn exterior(cfg: &SuiteConfig) -> Report {
    let c = Chart::r3();
    sample(
        cfg,
        1,
        |g, _| {
            let k = 1 + g.below(2);
            let l = 1 + g.below(3 - k);
            (g.form(&c, k), g.form(&c, l), g.field(&c), g.field(&c))
        },
        |(a, b, v, w)| {
            let mut r = Report::new();
            r.check("d-squared", "d d a = 0", &a.d().d());
            r.push(Check::timed("cartan", "L_v a = d i_v a + i_v d a", || {
                let mut rhs = a.d().iota(v)?;
                if a.degree() > 0 {
                    rhs = &rhs + &a.iota(v)?.d();
                }
                Ok::<_, crate::exterior::ExteriorError>(&a.lie_derivative(v)? - &rhs)
            }));
            r.push(Check::timed(
                "iota-derivation",
                "i_v(a^b) = i_v a ^ b + (-1)^k a ^ i_v b",
                || {
                    let lhs = a.wedge(b)?.iota(v)?;
                    let sign = if a.degree() % 2 == 0 { int(1) } else { int(-1) };
                    let rhs = &a.iota(v)?.wedge(b)? + &a.wedge(&b.iota(v)?)?.scale(&sign);
                    Ok::<_, crate::exterior::ExteriorError>(&lhs - &rhs)
                },
            ));
            r.push(Check::timed("iota-bracket", "i_[v,w] = L_v i_w - i_w L_v", || {
                let lhs = a.iota(&v.bracket(w)?)?;
                let rhs = &a.iota(w)?.lie_derivative(v)? - &a.lie_derivative(v)?.iota(w)?;
                Ok::<_, crate::exterior::ExteriorError>(&lhs - &rhs)
            }));
            r.push(Check::timed("d-derivation", "d(a^b) = da ^ b + (-1)^k a ^ db", || {
                let sign = if a.degree() % 2 == 0 { int(1) } else { int(-1) };
                let rhs = &a.d().wedge(b)? + &a.wedge(&b.d())?.scale(&sign);
                Ok::<_, crate::exterior::ExteriorError>(&a.wedge(b)?.d() - &rhs)
            }));
            r
        },
    )
}

fn ham_triple(g: &mut Gen, p: &PlecticStructure, i: usize) -> [DifferentialForm; 3] {
    let s = structured_forms(p.chart());
    if i < 12 {
        [pick(g, &s), pick(g, &s), pick(g, &s)]
    } else {
        [g.hamiltonian_form(p), g.hamiltonian_form(p), g.hamiltonian_form(p)]
    }
}

pub fn semi_bracket(cfg: &SuiteConfig) -> Report {
    let p = standard_r3();
    sample(
        cfg,
        2,
        |g, i| ham_triple(g, &p, i),
        |[a, b, c]| {
            p.verify_semi_bracket_laws(a, b, c)
                .unwrap_or_else(|e| err_report("instance", e))
        },
    )
}

pub fn lemmas(cfg: &SuiteConfig) -> Report {
    let p = standard_r3();
    sample(
        cfg,
        2,
        |g, i| ham_triple(g, &p, i),
        |[a, b, c]| {
            p.verify_calculus_identities(a, b, c)
                .unwrap_or_else(|e| err_report("instance", e))
        },
    )
}

pub fn courant(cfg: &SuiteConfig) -> Report {
    let c = Chart::r3();
    let twisted = SplitCourantModel::new(DifferentialForm::basis(&c, &[0, 1, 2])).expect("closed");
    let flat = SplitCourantModel::standard(&c);
    let section = |g: &mut Gen| GeneralizedSection::new(g.field(&c), g.form(&c, 1)).expect("same chart");
    sample(
        cfg,
        3,
        |g, _| ([section(g), section(g), section(g)], g.polynomial(&c), g.polynomial(&c)),
        |([e1, e2, e3], f, h)| {
            let mut r = twisted.verify_axioms(e1, e2, e3, f, h).prefixed("twisted");
            r.extend(flat.verify_axioms(e1, e2, e3, f, h).prefixed("untwisted"));
            r
        },
    )
}

pub fn curvature(cfg: &SuiteConfig) -> Report {
    let c = Chart::r3();
    let model = SplitCourantModel::new(DifferentialForm::basis(&c, &[0, 1, 2])).expect("closed");
    sample(
        cfg,
        4,
        |g, _| ([g.field(&c), g.field(&c), g.field(&c)], g.form(&c, 2)),
        |([v1, v2, v3], b)| {
            let mut r = Report::new();
            r.push(Check::timed("twist", "<[s v1, s v2], s v3> = -w(v1,v2,v3)", || {
                let k = model.curvature(v1, v2, v3)?;
                let w = model.twist().eval(&[v1.clone(), v2.clone(), v3.clone()])?;
                Ok::<_, crate::courant::CourantError>(&k + &w)
            }));
            r.push(Check::timed(
                "shifted",
                "curvature of s + B = curvature of s + dB(v1,v2,v3)",
                || {
                    let shift = SplittingShift::new(b.clone())?;
                    let new = model.curvature_of_shift(&shift, v1, v2, v3)?;
                    let old = model.curvature(v1, v2, v3)?;
                    let db = b.d().eval(&[v1.clone(), v2.clone(), v3.clone()])?;
                    Ok::<_, crate::courant::CourantError>(&(&new - &old) - &db)
                },
            ));
            r.push(Check::timed(
                "shifted-twist",
                "curvature of s + B = -(shifted twist)(v1,v2,v3)",
                || {
                    let shift = SplittingShift::new(b.clone())?;
                    let new = model.curvature_of_shift(&shift, v1, v2, v3)?;
                    let t = model
                        .shifted_twist(&shift)
                        .eval(&[v1.clone(), v2.clone(), v3.clone()])?;
                    Ok::<_, crate::courant::CourantError>(&new + &t)
                },
            ));
            r
        },
    )
}

/// The six Lie 2-algebras on structured and random quadruples.
pub fn lie2(cfg: &SuiteConfig) -> Report {
    let p = standard_r3();
    let c = p.chart().clone();
    let model = Arc::new(SplitCourantModel::new(p.omega().clone()).expect("closed"));
    let algebras: Vec<(&str, Arc<dyn Lie2Algebra>)> = vec![
        ("plectic", p.lie2().expect("2-plectic")),
        ("courant", lie2_of_courant(&model)),
        ("courant-preserving", lie2_of_preserving(&model)),
        ("ham-fields", Arc::new(TrivialHamLie2::new(p.clone()))),
        ("abelian-closed", Arc::new(AbelianClosedLie2::new(&c))),
        (
            "ham-fields-at-point",
            Arc::new(HamFieldsAtPoint::new(p.clone(), vec![int(1), rat(-1, 2), int(2)])),
        ),
    ];
    let m = main_morphism(&p, &model).expect("same form");
    let per = cfg.count.div_ceil(algebras.len()).max(1);
    let sub = SuiteConfig {
        count: per,
        ..cfg.clone()
    };
    let mut out = Report::new();
    for (k, (name, l)) in algebras.iter().enumerate() {
        let r = sample(
            &sub,
            10 + k as u64,
            |g, i| {
                let forms: Vec<DifferentialForm> = if i < 4 {
                    (0..4).map(|_| pick(g, &structured_forms(&c))).collect()
                } else {
                    (0..4).map(|_| g.hamiltonian_form(&p)).collect()
                };
                let (f1, f2) = (g.polynomial(&c), g.polynomial(&c));
                let xs: Vec<Lie2Element> = match *name {
                    "plectic" => forms.iter().map(|a| Lie2Element::form(0, a.clone())).collect(),
                    "courant" => forms
                        .iter()
                        .map(|_| Lie2Element::section(GeneralizedSection::new(g.field(&c), g.form(&c, 1)).unwrap()))
                        .collect(),
                    "courant-preserving" => forms
                        .iter()
                        .map(|a| Lie2Element::section(m.embed(a).unwrap()))
                        .collect(),
                    "abelian-closed" => (0..4).map(|_| Lie2Element::form(0, g.exact_form(&c))).collect(),
                    _ => forms
                        .iter()
                        .map(|a| Lie2Element::field(p.hamiltonian_vf(a).unwrap()))
                        .collect(),
                };
                let fs = match *name {
                    "ham-fields" => [Lie2Element::zero(1), Lie2Element::zero(1)],
                    "ham-fields-at-point" => [Lie2Element::real(g.scalar()), Lie2Element::real(g.scalar())],
                    _ => [Lie2Element::function(f1), Lie2Element::function(f2)],
                };
                (xs, fs)
            },
            |(xs, [f, h])| {
                check_l2a_axioms(l.as_ref(), [&xs[0], &xs[1], &xs[2], &xs[3]], [f, h])
                    .unwrap_or_else(|e| err_report("instance", e))
            },
        );
        out.extend(r.prefixed(name));
    }
    out
}

pub fn morphism(cfg: &SuiteConfig) -> Report {
    let p = standard_r3();
    let c = p.chart().clone();
    let model = Arc::new(SplitCourantModel::new(p.omega().clone()).expect("closed"));
    let m = main_morphism(&p, &model).expect("same form");
    let src = p.lie2().expect("2-plectic");
    let tgt = lie2_of_courant(&model);
    let mut out = sample(
        cfg,
        5,
        |g, i| (ham_triple(g, &p, i), g.polynomial(&c)),
        |([a, b, e], f)| {
            let xs: Vec<Lie2Element> = [a, b, e].iter().map(|a| Lie2Element::form(0, (*a).clone())).collect();
            check_morphism(
                &m,
                src.as_ref(),
                tgt.as_ref(),
                [&xs[0], &xs[1], &xs[2]],
                &Lie2Element::function(f.clone()),
            )
            .unwrap_or_else(|e| err_report("instance", e))
        },
    );
    // The worked instance.
    let s = structured_forms(&c);
    let (xdy, ydz, zdx) = (
        Lie2Element::form(0, s[0].clone()),
        Lie2Element::form(0, s[1].clone()),
        Lie2Element::form(0, s[2].clone()),
    );
    out.push(Check::timed("worked.phi", "Phi(x dy, y dz) = y/2", || {
        use crate::lie2::Lie2Morphism;
        m.big_phi(&xdy, &ydz)?
            .sub(&Lie2Element::function(c.coord(1).scale(&rat(1, 2))))
    }));
    out.push(Check::timed("worked.jacobiator", "J(x dy, y dz, z dx) = 1", || {
        src.jac(&xdy, &ydz, &zdx)?.sub(&Lie2Element::function(c.one_fn()))
    }));
    let worked = check_morphism(
        &m,
        src.as_ref(),
        tgt.as_ref(),
        [&xdy, &ydz, &zdx],
        &Lie2Element::function(c.coord(0)),
    )
    .unwrap_or_else(|e| err_report("instance", e));
    out.extend(worked.prefixed("worked"));
    out
}

/// Membership criterion: a section preserves the splitting iff it is
/// the image of its 1-form part.
pub fn iso(cfg: &SuiteConfig) -> Report {
    let p = standard_r3();
    let c = p.chart().clone();
    let model = Arc::new(SplitCourantModel::new(p.omega().clone()).expect("closed"));
    let m = main_morphism(&p, &model).expect("same form");
    sample(
        cfg,
        6,
        |g, _| {
            let a = g.hamiltonian_form(&p);
            let mut bump = g.field(&c);
            if bump.is_zero() {
                bump = VectorField::basis(&c, g.below(3));
            }
            (a, bump)
        },
        |(a, bump)| {
            let mut r = Report::new();
            let e = match m.embed(a) {
                Ok(e) => e,
                Err(err) => return err_report("embed", err),
            };
            r.extend(iso_roundtrip(&m, &e).unwrap_or_else(|err| err_report("roundtrip", err)));
            let other = GeneralizedSection::new(&e.v + bump, e.alpha.clone()).expect("same chart");
            r.push(Check::timed(
                "non-image-rejected",
                "(v_a + u, a) with u != 0 does not preserve",
                || {
                    Ok::<_, crate::courant::CourantError>(matches!(
                        model.preserves_splitting(&other)?,
                        Preservation::No(_)
                    ))
                },
            ));
            r.push(Check::timed(
                "criterion-agrees",
                "i_u(da + i_v w) = 0 for all u iff e = phi0(a)",
                || {
                    let cert = &other.alpha.d() + &model.twist().iota(&other.v)?;
                    let all_zero = (0..3).all(|i| {
                        cert.iota(&VectorField::basis(&c, i))
                            .map(|x| x.is_zero())
                            .unwrap_or(false)
                    });
                    Ok::<_, crate::courant::CourantError>(all_zero == (other == e))
                },
            ));
            r
        },
    )
}

pub fn atiyah(cfg: &SuiteConfig) -> Report {
    let m = standard_r2();
    let c = m.structure().chart().clone();
    let mut out = sample(
        cfg,
        7,
        |g, _| (g.polynomial(&c), g.polynomial(&c), g.point(&c)),
        |(f, h, x)| {
            let mut r = m.verify(f, h).unwrap_or_else(|e| err_report("instance", e));
            let fields = m
                .hamiltonian_vf(f)
                .and_then(|a| Ok((a, m.hamiltonian_vf(h)?, m.hamiltonian_vf(&(f * h))?)));
            match fields {
                Ok((a, b, e)) => r.extend(
                    m.ks_delta_check(x, [&a, &b, &e])
                        .unwrap_or_else(|e| err_report("ks", e)),
                ),
                Err(e) => r.extend(err_report("ks", e)),
            }
            r
        },
    );
    out.push(Check::timed("poisson-qp", "{q,p} = 1", || {
        Ok::<_, crate::atiyah::AtiyahError>(&m.poisson(&c.coord(0), &c.coord(1))? - &c.one_fn())
    }));
    out
}

pub fn extension(cfg: &SuiteConfig) -> Report {
    let p = standard_r3();
    let c = p.chart().clone();
    let rots = structured_fields(&c);
    let mut out = sample(
        cfg,
        8,
        |g, i| {
            let fields: Vec<VectorField> = (0..4)
                .map(|_| {
                    if i % 2 == 0 {
                        pick(g, &rots)
                    } else {
                        g.hamiltonian_field(&p)
                    }
                })
                .collect();
            let (x, y) = (g.point(&c), g.point(&c));
            let closed = g.exact_form(&c);
            let beta = g.hamiltonian_form(&p);
            (fields, x, y, closed, beta)
        },
        |(vs, x, y, closed, beta)| {
            let mut r =
                verify_jx_cocycle(&p, x, [&vs[0], &vs[1], &vs[2], &vs[3]]).unwrap_or_else(|e| err_report("jx", e));
            r.extend(
                verify_coboundary_relation(&p, x, y, [&vs[0], &vs[1], &vs[2]]).unwrap_or_else(|e| err_report("cob", e)),
            );
            r.extend(centrality_check(&p, closed, beta).unwrap_or_else(|e| err_report("central", e)));
            r.extend(
                bu1_witness(&p, closed)
                    .map(|(r, _)| r)
                    .unwrap_or_else(|e| err_report("bu1", e)),
            );
            r.push(Check::timed(
                "surjective",
                "every sampled v = v_a for a = hamiltonian_form_of(v)",
                || {
                    let a = p.hamiltonian_form_of(&vs[0])?;
                    Ok::<_, crate::plectic::PlecticError>(&p.hamiltonian_vf(&a)? - &vs[0])
                },
            ));
            r
        },
    );
    let s = structured_forms(&c);
    let origin = vec![int(0); 3];
    let ev = ev_morphism(&p, &origin).expect("point");
    let src = p.lie2().expect("2-plectic");
    let tgt = HamFieldsAtPoint::new(p.clone(), origin.clone());
    let xs: Vec<Lie2Element> = s[..3].iter().map(|a| Lie2Element::form(0, a.clone())).collect();
    let f = Lie2Element::function(&c.coord(0) * &c.coord(1));
    let r =
        check_morphism(&ev, src.as_ref(), &tgt, [&xs[0], &xs[1], &xs[2]], &f).unwrap_or_else(|e| err_report("ev", e));
    out.extend(r.prefixed("ev-morphism"));
    let mut g = Gen::new(cfg.seed, cfg.max_degree);
    let evs: Vec<Report> = (0..cfg.count.min(50))
        .map(|_| {
            let xs: Vec<Lie2Element> = (0..3).map(|_| Lie2Element::form(0, g.hamiltonian_form(&p))).collect();
            let f = Lie2Element::function(g.polynomial(&c));
            (xs, f)
        })
        .collect::<Vec<_>>()
        .par_iter()
        .map(|(xs, f)| {
            check_morphism(&ev, src.as_ref(), &tgt, [&xs[0], &xs[1], &xs[2]], f).unwrap_or_else(|e| err_report("ev", e))
        })
        .collect();
    out.extend(tally(evs).prefixed("ev-morphism-random"));
    out
}

/// The two-box gerbe fixture on ℝ³: `B₁ = x dy∧dz`, `A₁₂ = x dy + y dz`,
/// `B₂ = B₁ + dA₁₂`.
pub fn gerbe_fixture() -> (BoxCover, DifferentialForm, LocalData2) {
    let c = Chart::r3();
    let unit = |s: Rational| OpenBox::new(vec![s.clone(), int(0), int(0)], vec![&s + &int(1), int(1), int(1)]);
    let cover = BoxCover::new(&c, vec![unit(int(0)), unit(rat(1, 2))], Mode::Circle).expect("boxes");
    let omega = DifferentialForm::basis(&c, &[0, 1, 2]);
    let b1 = DifferentialForm::basis(&c, &[1, 2]).mul_fn(&c.coord(0));
    let a12 =
        &DifferentialForm::basis(&c, &[1]).mul_fn(&c.coord(0)) + &DifferentialForm::basis(&c, &[2]).mul_fn(&c.coord(1));
    let b2 = &b1 + &a12.d();
    let data = LocalData2 {
        b: vec![b1, b2],
        a: BTreeMap::from([((0, 1), a12)]),
        h: BTreeMap::new(),
    };
    (cover, omega, data)
}

/// A three-box fixture with a triple overlap, exercising the gerbe cocycle.
pub fn gerbe_fixture3() -> (BoxCover, DifferentialForm, LocalData2) {
    let c = Chart::r3();
    let bx = |x0: Rational, y0: Rational| {
        OpenBox::new(
            vec![x0.clone(), y0.clone(), int(0)],
            vec![&x0 + &int(1), &y0 + &int(1), int(1)],
        )
    };
    let cover = BoxCover::new(
        &c,
        vec![bx(int(0), int(0)), bx(rat(1, 2), int(0)), bx(rat(1, 4), rat(1, 2))],
        Mode::Circle,
    )
    .expect("boxes");
    let omega = DifferentialForm::basis(&c, &[0, 1, 2]);
    let (x, y, z) = (c.coord(0), c.coord(1), c.coord(2));
    let dxi = |i: usize| DifferentialForm::basis(&c, &[i]);
    let b1 = DifferentialForm::basis(&c, &[1, 2]).mul_fn(&x);
    let a12 = dxi(1).mul_fn(&x);
    let a13 = dxi(2).mul_fn(&y);
    let h = &(&x * &z) + &c.one_fn();
    // A₂₃ = A₁₃ − A₁₂ + dh keeps the triple identity exact.
    let a23 = &(&a13 - &a12) + &DifferentialForm::function(&c, h.clone()).d();
    let data = LocalData2 {
        b: vec![b1.clone(), &b1 + &a12.d(), &b1 + &a13.d()],
        a: BTreeMap::from([((0, 1), a12), ((0, 2), a13), ((1, 2), a23)]),
        h: BTreeMap::from([((0, 1, 2), h)]),
    };
    (cover, omega, data)
}

/// Valid fixtures pass; each single-term perturbation fails exactly the
/// expected identity.
pub fn cocycle() -> Report {
    let mut out = Report::new();
    let c = Chart::r3();
    let (cover, omega, data) = gerbe_fixture();
    let run =
        |cv: &BoxCover, d: &LocalData2| verify_triv_3form(cv, &omega, d).unwrap_or_else(|e| err_report("cocycle", e));
    let valid = run(&cover, &data);
    out.push(Check::from_residual(
        "two-box.valid",
        "all identities hold",
        &valid.passed(),
    ));
    let (cover3, _, data3) = gerbe_fixture3();
    let valid3 = run(&cover3, &data3);
    out.push(Check::from_residual(
        "three-box.valid",
        "all identities hold",
        &valid3.passed(),
    ));

    let expect_only = |id: &str, r: &Report, want: &str| {
        let fails: Vec<&Check> = r.failures().collect();
        let ok = fails.len() == 1 && fails[0].id == want && fails[0].residual != "0";
        let why = fails
            .iter()
            .map(|f| format!("{}: {}", f.id, f.residual))
            .collect::<Vec<_>>()
            .join("; ");
        if ok {
            Check::from_residual(id, format!("fails exactly {want}"), &true)
        } else {
            Check::failed(
                id,
                format!("fails exactly {want}"),
                if why.is_empty() { "no failure".into() } else { why },
            )
        }
    };

    let y = c.coord(1);
    let mut bad = data.clone();
    bad.a
        .insert((0, 1), &bad.a[&(0, 1)] + &DifferentialForm::basis(&c, &[2]).mul_fn(&y));
    out.push(expect_only("perturb.A", &run(&cover, &bad), "connection[1,2]"));

    let mut bad = data.clone();
    bad.b[0] = &bad.b[0] + &DifferentialForm::basis(&c, &[0, 1]);
    out.push(expect_only("perturb.B-closed", &run(&cover, &bad), "connection[1,2]"));

    let mut bad = data.clone();
    bad.b[1] = &bad.b[1] + &DifferentialForm::basis(&c, &[0, 1]).mul_fn(&c.coord(2));
    let r = run(&cover, &bad);
    let fails: Vec<String> = r.failures().map(|f| f.id.clone()).collect();
    out.push(Check::from_residual(
        "perturb.B-curving",
        "non-closed change of B_2 fails curving[2], connection and curvature agreement",
        &(fails == ["curving[2]", "connection[1,2]", "curvature-agree[1,2]"]),
    ));

    let mut bad = data3.clone();
    bad.h.insert((0, 1, 2), &bad.h[&(0, 1, 2)] + &c.coord(1));
    out.push(expect_only("perturb.h", &run(&cover3, &bad), "gerbe-cocycle[1,2,3]"));

    let pair = SectionPair::Courant(
        GeneralizedSection::new(
            VectorField::basis(&c, 0).mul_fn(&y),
            DifferentialForm::basis(&c, &[2]).mul_fn(&c.coord(0)),
        )
        .expect("chart"),
        GeneralizedSection::new(VectorField::basis(&c, 2), DifferentialForm::basis(&c, &[1]).mul_fn(&y))
            .expect("chart"),
    );
    let shear = data.transition(0, 1).expect("declared");
    let eq = verify_transition_equivariance(&cover, (0, 1), &shear, &pair).unwrap_or_else(|e| err_report("eq", e));
    out.push(Check::from_residual(
        "equivariance.valid",
        "closed shear commutes with the bracket",
        &eq.passed(),
    ));
    let open = crate::cocycle::Shear::TwoForm(DifferentialForm::basis(&c, &[0, 1]).mul_fn(&c.coord(2)));
    let eq = verify_transition_equivariance(&cover, (0, 1), &open, &pair).unwrap_or_else(|e| err_report("eq", e));
    out.push(Check::from_residual(
        "equivariance.invalid",
        "non-closed shear is detected",
        &!eq.passed(),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            seed: 3,
            count: 6,
            max_degree: 2,
        }
    }

    #[test]
    fn all_suites_pass_small() {
        for name in NAMES {
            let r = run_suite(name, &small()).unwrap();
            assert!(r.passed(), "{name}\n{}", r.machine_text());
        }
    }

    #[test]
    fn tally_keeps_first_failure() {
        let mut a = Report::new();
        a.check("x", "law", &true);
        let mut b = Report::new();
        b.check("x", "law", &false);
        let t = tally(vec![a, b]);
        assert_eq!(t.len(), 1);
        assert!(!t.passed());
        assert!(t.checks[0].residual.starts_with("instance 1"));
    }
}
