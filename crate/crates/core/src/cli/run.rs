//! Executes document commands; every error becomes a FAIL entry.

use std::sync::Arc;

use rayon::prelude::*;

use super::document::{Command, Document, LocalKind, Object};
use crate::algebra::{int, Rational, RationalFunction};
use crate::atiyah::SymplecticModel;
use crate::cocycle::{
    verify_transition_equivariance, verify_triv_2form, verify_triv_3form, BoxCover, LocalData1, LocalData2, SectionPair,
};
use crate::courant::{lie2_of_courant, GeneralizedSection, Preservation, SplitCourantModel};
use crate::extension::{verify_coboundary_relation, verify_jx_cocycle};
use crate::exterior::{DifferentialForm, VectorField};
use crate::lie2::{check_morphism, iso_roundtrip, main_morphism, Lie2Element};
use crate::plectic::{Nondegeneracy, PlecticError, PlecticStructure};
use crate::report::{Check, Report};

type Outcome = Result<Report, String>;

/// Shared state for one run.
struct Context<'a> {
    doc: &'a Document,
    plectic: Option<Result<Arc<PlecticStructure>, String>>,
}

impl<'a> Context<'a> {
    fn new(doc: &'a Document) -> Self {
        let plectic = doc.structure_name().map(|n| {
            let w = doc_form(doc, n).map_err(|e| e.to_string())?;
            PlecticStructure::new(w).map(Arc::new).map_err(|e| e.to_string())
        });
        Context { doc, plectic }
    }

    fn plectic(&self) -> Result<&Arc<PlecticStructure>, String> {
        match &self.plectic {
            Some(Ok(p)) => Ok(p),
            Some(Err(e)) => Err(format!("structure: {e}")),
            None => Err("no `structure` declared".into()),
        }
    }

    fn two_plectic(&self) -> Result<&Arc<PlecticStructure>, String> {
        let p = self.plectic()?;
        if p.n() != 2 {
            return Err(format!("needs a 3-form structure, found degree {}", p.omega().degree()));
        }
        Ok(p)
    }

    fn model(&self) -> Result<Arc<SplitCourantModel>, String> {
        let p = self.two_plectic()?;
        SplitCourantModel::new(p.omega().clone())
            .map(Arc::new)
            .map_err(|e| e.to_string())
    }

    fn form(&self, n: &str) -> Result<DifferentialForm, String> {
        doc_form(self.doc, n)
    }

    fn func(&self, n: &str) -> Result<RationalFunction, String> {
        Ok(self.form(n)?.as_function().expect("parser checked degree"))
    }

    fn field(&self, n: &str) -> Result<VectorField, String> {
        match self.doc.object(n) {
            Some(Object::Field(v)) => Ok(v.clone()),
            _ => Err(format!("`{n}` is not a vector field")),
        }
    }

    fn point(&self, n: &str) -> Result<Vec<Rational>, String> {
        match self.doc.object(n) {
            Some(Object::Point(p)) => Ok(p.clone()),
            _ => Err(format!("`{n}` is not a point")),
        }
    }

    fn section(&self, n: &str) -> Result<GeneralizedSection, String> {
        match self.doc.object(n) {
            Some(Object::Section(e)) => Ok(e.clone()),
            Some(Object::Field(v)) => Ok(GeneralizedSection::lift(v)),
            Some(Object::Form(a)) if a.degree() == 1 => Ok(GeneralizedSection::cotangent(a)),
            _ => Err(format!("`{n}` is not a section")),
        }
    }
}

fn doc_form(doc: &Document, n: &str) -> Result<DifferentialForm, String> {
    match doc.object(n) {
        Some(Object::Form(a)) => Ok(a.clone()),
        _ => Err(format!("`{n}` is not a form")),
    }
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Runs every command in document order; `jobs` bounds the worker threads
/// (0 means the rayon default).
pub fn run(doc: &Document, jobs: usize) -> Report {
    let ctx = Context::new(doc);
    let cmds: Vec<&Command> = doc.commands().collect();
    let exec = || -> Vec<Report> { cmds.par_iter().map(|c| run_command(&ctx, c)).collect() };
    let reports = if jobs == 0 {
        exec()
    } else {
        match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(exec),
            Err(_) => exec(),
        }
    };
    let mut all = Report::new();
    for r in reports {
        all.extend(r);
    }
    all
}

fn run_command(ctx: &Context, cmd: &Command) -> Report {
    let tag = cmd.tag();
    match execute(ctx, cmd) {
        Ok(r) => r.prefixed(&tag),
        Err(e) => {
            let mut r = Report::new();
            r.push(Check::failed(tag, "command", e));
            r
        }
    }
}

fn execute(ctx: &Context, cmd: &Command) -> Outcome {
    match cmd {
        Command::CheckNplectic(n) => check_nplectic(ctx, n),
        Command::Hamiltonian(n) => hamiltonian(ctx, n),
        Command::Bracket(a, b) => {
            let p = ctx.two_plectic()?;
            let (a, b) = (ctx.form(a)?, ctx.form(b)?);
            let ab = p.semi_bracket(&a, &b).map_err(s)?;
            let (va, vb) = (p.hamiltonian_vf(&a).map_err(s)?, p.hamiltonian_vf(&b).map_err(s)?);
            let mut r = Report::new();
            r.push(Check::timed(
                "hamiltonian",
                &format!("{{a,b}} = {ab}; d{{a,b}} = -i_[va,vb] w"),
                || Ok::<_, PlecticError>(&ab.d() + &p.omega().iota(&va.bracket(&vb)?)?),
            ));
            Ok(r)
        }
        Command::Jacobiator(a, b, c) => {
            let p = ctx.two_plectic()?;
            let (a, b, c) = (ctx.form(a)?, ctx.form(b)?, ctx.form(c)?);
            let j = p.jacobiator(&a, &b, &c).map_err(s)?;
            let laws = p.verify_semi_bracket_laws(&a, &b, &c).map_err(s)?;
            let mut r = Report::new();
            let mut jac = laws.get("bracket-jacobi").expect("present").clone();
            jac.id = "jacobi".into();
            jac.anchor = format!("J(a,b,c) = {j}; {}", jac.anchor);
            r.push(jac);
            Ok(r)
        }
        Command::SemiBracketLaws(a, b, c) => {
            let p = ctx.two_plectic()?;
            p.verify_semi_bracket_laws(&ctx.form(a)?, &ctx.form(b)?, &ctx.form(c)?)
                .map_err(s)
        }
        Command::Lemmas(a, b, c) => {
            let p = ctx.two_plectic()?;
            p.verify_calculus_identities(&ctx.form(a)?, &ctx.form(b)?, &ctx.form(c)?)
                .map_err(s)
        }
        Command::CourantAxioms([a, b, c], f, g) => {
            let m = ctx.model()?;
            Ok(m.verify_axioms(
                &ctx.section(a)?,
                &ctx.section(b)?,
                &ctx.section(c)?,
                &ctx.func(f)?,
                &ctx.func(g)?,
            ))
        }
        Command::Curvature([a, b, c]) => {
            let m = ctx.model()?;
            let (v1, v2, v3) = (ctx.field(a)?, ctx.field(b)?, ctx.field(c)?);
            let k = m.curvature(&v1, &v2, &v3).map_err(s)?;
            let w = m.twist().eval(&[v1, v2, v3]).map_err(s)?;
            let mut r = Report::new();
            r.check(
                "curvature",
                &format!("<[s v1, s v2], s v3> = {k}; equals -w(v1,v2,v3)"),
                &(&k + &w),
            );
            Ok(r)
        }
        Command::Preserves(e) => {
            let m = ctx.model()?;
            let e = ctx.section(e)?;
            let mut r = Report::new();
            match m.preserves_splitting(&e).map_err(s)? {
                Preservation::Yes => r.check("preserves", "da + i_v w = 0", &true),
                Preservation::No(cert) => r.check("preserves", "da + i_v w = 0", &cert),
            }
            Ok(r)
        }
        Command::MorphismMain(a, b, c) => morphism_main(ctx, [a, b, c]),
        Command::Extension(x, y, [a, b, c]) => {
            let p = ctx.two_plectic()?;
            let (x, y) = (ctx.point(x)?, ctx.point(y)?);
            let (v1, v2, v3) = (ctx.field(a)?, ctx.field(b)?, ctx.field(c)?);
            let v4 = v1.bracket(&v2).map_err(s)?;
            let mut r = verify_coboundary_relation(p, &x, &y, [&v1, &v2, &v3]).map_err(s)?;
            r.extend(verify_jx_cocycle(p, &x, [&v1, &v2, &v3, &v4]).map_err(s)?);
            Ok(r)
        }
        Command::Cocycle2(u) => cocycle(ctx, u, 2),
        Command::Cocycle3(u) => cocycle(ctx, u, 3),
        Command::Atiyah(f, g) => {
            let p = ctx.plectic()?;
            let m = SymplecticModel::from_plectic(p).map_err(s)?;
            let (f, g) = (ctx.func(f)?, ctx.func(g)?);
            let mut r = m.verify(&f, &g).map_err(s)?;
            let (vf, vg) = (m.hamiltonian_vf(&f).map_err(s)?, m.hamiltonian_vf(&g).map_err(s)?);
            let vfg = m.hamiltonian_vf(&(&f * &g)).map_err(s)?;
            let origin = vec![int(0); p.chart().dimension()];
            r.extend(m.ks_delta_check(&origin, [&vf, &vg, &vfg]).map_err(s)?);
            Ok(r)
        }
    }
}

fn check_nplectic(ctx: &Context, n: &str) -> Outcome {
    let w = ctx.form(n)?;
    let mut r = Report::new();
    r.check("closed", "dw = 0", &w.d());
    if !w.is_closed() || w.degree() < 2 {
        if w.degree() < 2 {
            r.push(Check::failed("nondegenerate", "v -> i_v w injective", "degree below 2"));
        }
        return Ok(r);
    }
    let p = PlecticStructure::new(w).map_err(s)?;
    let anchor = "v -> i_v w injective";
    match p.check_nondegenerate() {
        Nondegeneracy::CertifiedEverywhere { .. } => r.check("nondegenerate", anchor, &true),
        Nondegeneracy::GenericOnly { minor, .. } => {
            r.check("nondegenerate", &format!("{anchor} where {minor} != 0"), &true)
        }
        Nondegeneracy::DegenerateAt { point, kernel } => {
            let show = |v: &[Rational]| {
                let parts: Vec<String> = v.iter().map(crate::algebra::fmt_rational).collect();
                format!("({})", parts.join(", "))
            };
            r.push(Check::failed(
                "nondegenerate",
                anchor,
                format!("kernel {} at {}", show(kernel), show(point)),
            ));
        }
    }
    Ok(r)
}

fn hamiltonian(ctx: &Context, n: &str) -> Outcome {
    let p = ctx.plectic()?;
    let a = ctx.form(n)?;
    let mut r = Report::new();
    let anchor = "da = -i_v w";
    match p.hamiltonian_vf(&a) {
        Ok(v) => {
            let res = &a.d() + &p.omega().iota(&v).map_err(s)?;
            r.check("vector-field", &format!("{anchor}; v = {v}"), &res);
        }
        Err(PlecticError::NotHamiltonian { residual }) => r.check("vector-field", anchor, &residual),
        Err(e) => return Err(e.to_string()),
    }
    Ok(r)
}

fn morphism_main(ctx: &Context, names: [&String; 3]) -> Outcome {
    let p = ctx.two_plectic()?;
    let model = ctx.model()?;
    let forms: Vec<DifferentialForm> = names.iter().map(|n| ctx.form(n)).collect::<Result<_, _>>()?;
    let m = main_morphism(p, &model).map_err(s)?;
    let src = p.lie2().map_err(s)?;
    let tgt = lie2_of_courant(&model);
    let xs: Vec<Lie2Element> = forms.iter().map(|a| Lie2Element::form(0, a.clone())).collect();
    let jf = p.jacobiator(&forms[0], &forms[1], &forms[2]).map_err(s)?;
    let f = Lie2Element::function(&jf.as_function().expect("0-form") + &p.chart().coord(0));
    let mut r = check_morphism(&m, src.as_ref(), tgt.as_ref(), [&xs[0], &xs[1], &xs[2]], &f).map_err(s)?;
    let e = m.embed(&forms[0]).map_err(s)?;
    r.extend(iso_roundtrip(&m, &e).map_err(s)?);
    Ok(r)
}

fn cocycle(ctx: &Context, name: &str, degree: usize) -> Outcome {
    let decl = ctx.doc.cover(name).ok_or_else(|| format!("unknown cover `{name}`"))?;
    let omega = ctx.form(&decl.form)?;
    if omega.degree() != degree {
        return Err(format!(
            "cover form `{}` has degree {}, expected {degree}",
            decl.form,
            omega.degree()
        ));
    }
    let chart = &ctx.doc.chart;
    let cover = BoxCover::new(chart, decl.boxes.clone(), decl.mode).map_err(s)?;
    let n = cover.len();
    let fn_of = |a: &DifferentialForm| a.as_function().expect("0-form");
    if degree == 2 {
        let mut theta = vec![None; n];
        let mut data = LocalData1::default();
        for l in ctx.doc.locals(name) {
            match l.kind {
                LocalKind::Theta(i) => theta[i] = Some(l.value.clone()),
                LocalKind::H(i, j) => {
                    data.h.insert((i, j), fn_of(&l.value));
                }
                _ => return Err(format!("`{}` is not 2-form trivialization data", l.kind.kind_word())),
            }
        }
        data.theta = collect(theta, "theta")?;
        let mut r = verify_triv_2form(&cover, &omega, &data).map_err(s)?;
        for ij in cover.overlaps(2) {
            if let Some(shear) = data.transition(ij[0], ij[1]) {
                let pair = atiyah_probe(chart);
                r.extend(verify_transition_equivariance(&cover, (ij[0], ij[1]), &shear, &pair).map_err(s)?);
            }
        }
        Ok(r)
    } else {
        let mut b = vec![None; n];
        let mut data = LocalData2::default();
        for l in ctx.doc.locals(name) {
            match l.kind {
                LocalKind::B(i) => b[i] = Some(l.value.clone()),
                LocalKind::A(i, j) => {
                    data.a.insert((i, j), l.value.clone());
                }
                LocalKind::HH(i, j, k) => {
                    data.h.insert((i, j, k), fn_of(&l.value));
                }
                _ => return Err(format!("`{}` is not 3-form trivialization data", l.kind.kind_word())),
            }
        }
        data.b = collect(b, "B")?;
        let mut r = verify_triv_3form(&cover, &omega, &data).map_err(s)?;
        for ij in cover.overlaps(2) {
            if let Some(shear) = data.transition(ij[0], ij[1]) {
                let pair = courant_probe(chart);
                r.extend(verify_transition_equivariance(&cover, (ij[0], ij[1]), &shear, &pair).map_err(s)?);
            }
        }
        Ok(r)
    }
}

fn collect(v: Vec<Option<DifferentialForm>>, what: &str) -> Result<Vec<DifferentialForm>, String> {
    v.into_iter()
        .enumerate()
        .map(|(i, x)| x.ok_or_else(|| format!("missing {what} {}", i + 1)))
        .collect()
}

/// Fixed non-trivial sections used to test transition equivariance.
fn courant_probe(chart: &crate::exterior::Chart) -> SectionPair {
    let n = chart.dimension();
    let x = |i: usize| chart.coord(i % n);
    let e1 = GeneralizedSection::new(
        VectorField::basis(chart, 0).mul_fn(&x(1)),
        DifferentialForm::basis(chart, &[n - 1]).mul_fn(&x(0)),
    )
    .expect("same chart");
    let e2 = GeneralizedSection::new(
        VectorField::basis(chart, n - 1).mul_fn(&(&x(0) * &x(n - 1))),
        DifferentialForm::basis(chart, &[1 % n]).mul_fn(&x(1)),
    )
    .expect("same chart");
    SectionPair::Courant(e1, e2)
}

fn atiyah_probe(chart: &crate::exterior::Chart) -> SectionPair {
    use crate::atiyah::AtiyahSection;
    let n = chart.dimension();
    let x = |i: usize| chart.coord(i % n);
    let a = AtiyahSection::new(VectorField::basis(chart, 0).mul_fn(&x(1)), x(0));
    let b = AtiyahSection::new(VectorField::basis(chart, n - 1).mul_fn(&x(0)), &x(0) * &x(n - 1));
    SectionPair::Atiyah(a, b)
}

impl LocalKind {
    fn kind_word(&self) -> &'static str {
        match self {
            LocalKind::Theta(_) => "theta",
            LocalKind::H(..) => "h (pair)",
            LocalKind::B(_) => "B",
            LocalKind::A(..) => "A",
            LocalKind::HH(..) => "h (triple)",
        }
    }
}
