use std::sync::Arc;

use proptest::prelude::*;

use plectic_core::algebra::{int, rat, solve_linear, Polynomial, RFMatrix, RationalFunction, Vars};
use plectic_core::atiyah::{AtiyahPreservation, AtiyahSection};
use plectic_core::cli::parse;
use plectic_core::courant::{GeneralizedSection, Preservation, SplitCourantModel, SplittingShift};
use plectic_core::extension::{ce_delta, path_cochain, Jx, PathSegment};
use plectic_core::exterior::{Chart, DifferentialForm, VectorField};
use plectic_core::lie2::{check_l2a_axioms, check_morphism, main_morphism, Lie2Element};
use plectic_core::random::Gen;
use plectic_core::suites::{standard_r2, standard_r3, structured_fields};

fn r3() -> Chart {
    Chart::r3()
}

fn poly_strategy(vars: Vars) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-4i64..=4, 1i64..=3, 0u32..=2, 0u32..=2, 0u32..=2), 0..4).prop_map(move |terms| {
        terms.into_iter().fold(Polynomial::zero(&vars), |acc, (n, d, a, b, c)| {
            &acc + &Polynomial::monomial(&vars, &[a, b, c], rat(n, d))
        })
    })
}

fn nonzero_poly() -> impl Strategy<Value = Polynomial> {
    poly_strategy(r3().vars().clone()).prop_filter("nonzero", |p| !p.is_zero())
}

fn seeded() -> impl Strategy<Value = Gen> {
    any::<u64>().prop_map(|s| Gen::new(s, 3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polynomial_ring_laws(a in poly_strategy(r3().vars().clone()), b in poly_strategy(r3().vars().clone()), c in poly_strategy(r3().vars().clone())) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &Polynomial::zero(a.vars()), a.clone());
        prop_assert_eq!(&a * &Polynomial::one(a.vars()), a.clone());
    }

    #[test]
    fn rational_function_field_laws(a in nonzero_poly(), b in nonzero_poly(), c in nonzero_poly(), e in nonzero_poly()) {
        let x = RationalFunction::new(a.clone(), b.clone()).unwrap();
        let y = RationalFunction::new(c.clone(), e.clone()).unwrap();
        let one = RationalFunction::one(x.vars());
        prop_assert_eq!(&x * &x.recip().unwrap(), one.clone());
        prop_assert_eq!(&(&x + &y) * &x, &(&x * &x) + &(&y * &x));
        prop_assert_eq!((&x * &y).checked_div(&y).unwrap(), x.clone());
        prop_assert_eq!(&(&x - &y) + &y, x);
    }

    #[test]
    fn partial_derivatives_commute(p in poly_strategy(r3().vars().clone())) {
        prop_assert_eq!(p.diff(0).diff(1), p.diff(1).diff(0));
        prop_assert_eq!(p.diff(1).diff(2), p.diff(2).diff(1));
    }

    #[test]
    fn linear_solutions_and_kernels_are_exact(entries in prop::collection::vec(-3i64..=3, 12), rhs in prop::collection::vec(-3i64..=3, 3)) {
        let vars = r3().vars().clone();
        let x = RationalFunction::var(&vars, 0);
        let rows: Vec<Vec<RationalFunction>> = entries
            .chunks(4)
            .map(|r| r.iter().enumerate().map(|(j, &k)| {
                let c = RationalFunction::constant(&vars, int(k));
                if j == 0 { &c * &x } else { c }
            }).collect())
            .collect();
        let m = RFMatrix::from_rows(&vars, rows).unwrap();
        let b: Vec<RationalFunction> = rhs.iter().map(|&k| RationalFunction::constant(&vars, int(k))).collect();
        let s = solve_linear(&m, &b).unwrap();
        if let Some(sol) = s.particular() {
            prop_assert_eq!(m.mul_vec(sol).unwrap(), b);
        }
        for k in s.kernel() {
            prop_assert!(m.mul_vec(k).unwrap().iter().all(RationalFunction::is_zero));
        }
    }

    #[test]
    fn exterior_kernel(mut g in seeded(), k in 0usize..=3) {
        let c = r3();
        let a = g.form(&c, k);
        let b = g.form(&c, 1);
        let (v, w) = (g.field(&c), g.field(&c));
        prop_assert!(a.d().d().is_zero());
        if k > 0 {
            prop_assert!(a.iota(&v).unwrap().iota(&v).unwrap().is_zero());
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            let lhs = a.wedge(&b).unwrap().iota(&v).unwrap();
            let rhs = &a.iota(&v).unwrap().wedge(&b).unwrap() + &a.wedge(&b.iota(&v).unwrap()).unwrap().scale(&sign);
            prop_assert_eq!(lhs, rhs);
            let lhs = a.iota(&v.bracket(&w).unwrap()).unwrap();
            let rhs = &a.iota(&w).unwrap().lie_derivative(&v).unwrap() - &a.lie_derivative(&v).unwrap().iota(&w).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
        prop_assert_eq!(a.lie_derivative(&v).unwrap().d(), a.d().lie_derivative(&v).unwrap());
    }

    #[test]
    fn poincare_potential_inverts_d(mut g in seeded(), k in 0usize..=2) {
        let c = r3();
        let closed = g.form(&c, k).d();
        prop_assert_eq!(closed.poincare_potential().unwrap().d(), closed);
    }

    #[test]
    fn iterated_contraction_reverses_arguments(mut g in seeded()) {
        let c = r3();
        let w = g.form(&c, 3);
        let vs = [g.field(&c), g.field(&c), g.field(&c)];
        let lhs = w.iota(&vs[2]).unwrap().iota(&vs[1]).unwrap().iota(&vs[0]).unwrap();
        let rhs = w.eval(&[vs[2].clone(), vs[1].clone(), vs[0].clone()]).unwrap();
        prop_assert_eq!(lhs, DifferentialForm::function(&c, rhs));
    }

    #[test]
    fn hamiltonian_pairs_and_semi_bracket(mut g in seeded()) {
        let p = standard_r3();
        let (a, b, e) = (g.hamiltonian_form(&p), g.hamiltonian_form(&p), g.hamiltonian_form(&p));
        let v = p.hamiltonian_vf(&a).unwrap();
        prop_assert!((&a.d() + &p.omega().iota(&v).unwrap()).is_zero());
        prop_assert!(p.verify_semi_bracket_laws(&a, &b, &e).unwrap().passed());
        prop_assert!(p.verify_calculus_identities(&a, &b, &e).unwrap().passed());
        let closed = g.exact_form(p.chart());
        prop_assert!(p.semi_bracket(&closed, &a).unwrap().is_zero());
        prop_assert!(p.semi_bracket(&a, &closed).unwrap().is_zero());
    }

    #[test]
    fn courant_identities(mut g in seeded()) {
        let c = r3();
        let model = SplitCourantModel::new(DifferentialForm::basis(&c, &[0, 1, 2])).unwrap();
        let mut section = || GeneralizedSection::new(g.field(&c), g.form(&c, 1)).unwrap();
        let (e1, e2, e3) = (section(), section(), section());
        let (f, h) = (g.polynomial(&c), g.polynomial(&c));
        prop_assert!(model.verify_axioms(&e1, &e2, &e3, &f, &h).passed());
        let half_d = model.d_func(&model.pairing_plus(&e1, &e2).unwrap()).scale(&rat(1, 2));
        prop_assert_eq!(model.dorfman(&e1, &e2).unwrap(), &model.courant(&e1, &e2).unwrap() + &half_d);
        let (s1, s2) = (GeneralizedSection::lift(&e1.v), GeneralizedSection::lift(&e2.v));
        prop_assert_eq!(model.dorfman(&s1, &s2).unwrap(), model.courant(&s1, &s2).unwrap());
        let (v1, v2, v3) = (&e1.v, &e2.v, &e3.v);
        let vs = [v1.clone(), v2.clone(), v3.clone()];
        prop_assert!((&model.curvature(v1, v2, v3).unwrap() + &model.twist().eval(&vs).unwrap()).is_zero());
        let shift = SplittingShift::new(g.form(&c, 2)).unwrap();
        let shifted = model.curvature_of_shift(&shift, v1, v2, v3).unwrap();
        prop_assert!((&shifted + &model.shifted_twist(&shift).eval(&vs).unwrap()).is_zero());
    }

    #[test]
    fn image_of_embedding_is_the_preserving_sections(mut g in seeded()) {
        let p = standard_r3();
        let model = Arc::new(SplitCourantModel::new(p.omega().clone()).unwrap());
        let m = main_morphism(&p, &model).unwrap();
        let a = g.hamiltonian_form(&p);
        let e = m.embed(&a).unwrap();
        prop_assert!(matches!(model.preserves_splitting(&e).unwrap(), Preservation::Yes));
        let other = GeneralizedSection::new(g.field(p.chart()), g.form(p.chart(), 1)).unwrap();
        let preserved = matches!(model.preserves_splitting(&other).unwrap(), Preservation::Yes);
        let in_image = p.hamiltonian_vf(&other.alpha).map(|v| v == other.v).unwrap_or(false);
        prop_assert_eq!(preserved, in_image);
    }

    #[test]
    fn lie2_axioms_and_main_morphism(mut g in seeded()) {
        let p = standard_r3();
        let model = Arc::new(SplitCourantModel::new(p.omega().clone()).unwrap());
        let l = p.lie2().unwrap();
        let xs: Vec<Lie2Element> = (0..4).map(|_| Lie2Element::form(0, g.hamiltonian_form(&p))).collect();
        let (f, h) = (Lie2Element::function(g.polynomial(p.chart())), Lie2Element::function(g.polynomial(p.chart())));
        prop_assert!(check_l2a_axioms(l.as_ref(), [&xs[0], &xs[1], &xs[2], &xs[3]], [&f, &h]).unwrap().passed());
        let m = main_morphism(&p, &model).unwrap();
        let tgt = model.lie2();
        prop_assert!(check_morphism(&m, l.as_ref(), tgt.as_ref(), [&xs[0], &xs[1], &xs[2]], &f).unwrap().passed());
    }

    #[test]
    fn atiyah_mirror(mut g in seeded()) {
        let m = standard_r2();
        let c = m.structure().chart().clone();
        let (f, h) = (g.polynomial(&c), g.polynomial(&c));
        prop_assert!(m.verify(&f, &h).unwrap().passed());
        let other = AtiyahSection::new(g.field(&c), g.polynomial(&c));
        let preserved = matches!(m.preserves(&other).unwrap(), AtiyahPreservation::Yes);
        let in_image = m.phi(&other.f).map(|a| a == other).unwrap_or(false);
        prop_assert_eq!(preserved, in_image);
        let (vf, vh) = (m.hamiltonian_vf(&f).unwrap(), m.hamiltonian_vf(&h).unwrap());
        let vfh = m.hamiltonian_vf(&(&f * &h)).unwrap();
        prop_assert!(m.ks_delta_check(&g.point(&c), [&vf, &vh, &vfh]).unwrap().passed());
    }

    #[test]
    fn extension_cocycle_and_coboundary(mut g in seeded(), rot in prop::collection::vec(0usize..5, 4)) {
        let p = standard_r3();
        let c = p.chart().clone();
        let structured = structured_fields(&c);
        let vs: Vec<VectorField> = rot.iter().enumerate()
            .map(|(i, &k)| if i % 2 == 0 { structured[k].clone() } else { g.hamiltonian_field(&p) })
            .collect();
        let (x, y) = (g.point(&c), g.point(&c));
        let jx = Jx(&p, &x).unwrap();
        prop_assert_eq!(ce_delta(&p, &jx, &vs).unwrap(), int(0));
        let jy = Jx(&p, &y).unwrap();
        let cxy = path_cochain(&p, &PathSegment::new(x.clone(), y.clone())).unwrap();
        let three = &vs[..3];
        let lhs = jy.eval(three).unwrap() - jx.eval(three).unwrap();
        prop_assert_eq!(lhs, ce_delta(&p, &cxy, three).unwrap());
    }

    #[test]
    fn document_round_trip(mut g in seeded()) {
        let c = r3();
        let a = g.form(&c, 1);
        let b = g.form(&c, 2);
        let v = g.field(&c);
        let src = format!(
            "chart R3 (x, y, z)\nform w = dx^dy^dz\nstructure w\nform a = {}\nform b = {}\nfield v = {}\n",
            plectic_core::cli::form_source(&a),
            plectic_core::cli::form_source(&b),
            plectic_core::cli::field_source(&v)
        );
        let doc = parse(&src).unwrap();
        prop_assert_eq!(parse(&doc.to_source()).unwrap(), doc);
    }
}
