//! Lie 2-algebra morphisms `(φ₀, φ₁, Φ)` and their checker.

use std::sync::Arc;

use crate::algebra::{rat, Rational};
use crate::courant::{GeneralizedSection, Preservation, SplitCourantModel};
use crate::exterior::DifferentialForm;
use crate::plectic::PlecticStructure;
use crate::report::{Check, Report};

use super::{expect_degree, sum, Lie2Algebra, Lie2Element, Lie2Error, Payload};

pub trait Lie2Morphism: Send + Sync {
    fn name(&self) -> String;
    fn phi0(&self, x: &Lie2Element) -> Result<Lie2Element, Lie2Error>;
    fn phi1(&self, f: &Lie2Element) -> Result<Lie2Element, Lie2Error>;
    /// `Φ: L₀ × L₀ → L′₁`.
    fn big_phi(&self, x: &Lie2Element, y: &Lie2Element) -> Result<Lie2Element, Lie2Error>;

    /// The underlying chain map in either degree.
    fn apply(&self, x: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        match x.degree() {
            0 => self.phi0(x),
            1 => self.phi1(x),
            d => Ok(Lie2Element::zero(d)),
        }
    }
}

pub struct IdentityMorphism;

impl Lie2Morphism for IdentityMorphism {
    fn name(&self) -> String {
        "identity".into()
    }
    fn phi0(&self, x: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        Ok(x.clone())
    }
    fn phi1(&self, f: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        Ok(f.clone())
    }
    fn big_phi(&self, _x: &Lie2Element, _y: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        Ok(Lie2Element::zero(1))
    }
}

fn one_form(x: &Lie2Element, p: &PlecticStructure) -> Result<DifferentialForm, Lie2Error> {
    match x.payload() {
        Payload::Zero => Ok(DifferentialForm::zero(p.chart(), 1)),
        Payload::Form(a) if a.degree() == 1 => Ok(a.clone()),
        _ => Err(Lie2Error::PayloadMismatch("expected a Hamiltonian 1-form".into())),
    }
}

/// `φ₀(α) = s(v_α) + α`, `φ₁ = id`, `Φ(α,β) = −½⟨v_α+α, v_β+β⟩₋`.
pub struct MainMorphism {
    p: Arc<PlecticStructure>,
    model: Arc<SplitCourantModel>,
}

impl MainMorphism {
    pub fn plectic(&self) -> &Arc<PlecticStructure> {
        &self.p
    }

    pub fn model(&self) -> &Arc<SplitCourantModel> {
        &self.model
    }

    pub fn embed(&self, alpha: &DifferentialForm) -> Result<GeneralizedSection, Lie2Error> {
        let v = self.p.hamiltonian_vf(alpha)?;
        Ok(GeneralizedSection::new(v, alpha.clone())?)
    }
}

pub fn main_morphism(p: &Arc<PlecticStructure>, model: &Arc<SplitCourantModel>) -> Result<MainMorphism, Lie2Error> {
    if p.omega() != model.twist() {
        return Err(Lie2Error::TwistMismatch);
    }
    Ok(MainMorphism {
        p: p.clone(),
        model: model.clone(),
    })
}

impl Lie2Morphism for MainMorphism {
    fn name(&self) -> String {
        "main".into()
    }

    fn phi0(&self, x: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        Ok(Lie2Element::section(self.embed(&one_form(x, &self.p)?)?))
    }

    fn phi1(&self, f: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        Ok(f.clone())
    }

    fn big_phi(&self, x: &Lie2Element, y: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        let (e1, e2) = (self.phi0(x)?, self.phi0(y)?);
        let (e1, e2) = (e1.as_section().expect("section"), e2.as_section().expect("section"));
        let pm = self.model.pairing_minus(e1, e2)?;
        Ok(Lie2Element::function(pm.scale(&rat(-1, 2))))
    }
}

/// `φ₀(α) = v_α`, `φ₁(f) = f(x)`, `Φ = 0`.
pub struct EvMorphism {
    p: Arc<PlecticStructure>,
    point: Vec<Rational>,
}

impl EvMorphism {
    pub fn new(p: &Arc<PlecticStructure>, point: Vec<Rational>) -> Self {
        EvMorphism { p: p.clone(), point }
    }
}

impl Lie2Morphism for EvMorphism {
    fn name(&self) -> String {
        "ev".into()
    }

    fn phi0(&self, x: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        Ok(Lie2Element::field(self.p.hamiltonian_vf(&one_form(x, &self.p)?)?))
    }

    fn phi1(&self, f: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        match f.payload() {
            Payload::Zero => Ok(Lie2Element::real(rat(0, 1))),
            Payload::Function(g) => Ok(Lie2Element::real(
                g.eval(&self.point).map_err(crate::exterior::ExteriorError::from)?,
            )),
            _ => Err(Lie2Error::PayloadMismatch("expected a function".into())),
        }
    }

    fn big_phi(&self, _x: &Lie2Element, _y: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        Ok(Lie2Element::real(rat(0, 1)))
    }
}

/// Morphism laws on degree-0 `xs = [x, y, z]` and degree-1 `f`.
pub fn check_morphism(
    m: &dyn Lie2Morphism,
    source: &dyn Lie2Algebra,
    target: &dyn Lie2Algebra,
    xs: [&Lie2Element; 3],
    f: &Lie2Element,
) -> Result<Report, Lie2Error> {
    for x in xs {
        expect_degree(x, 0)?;
        source.validate(x)?;
    }
    expect_degree(f, 1)?;
    source.validate(f)?;
    let [x, y, z] = xs;
    let b = |a: &Lie2Element, c: &Lie2Element| source.bracket(a, c);
    let bt = |a: &Lie2Element, c: &Lie2Element| target.bracket(a, c);
    let mut r = Report::new();

    r.push(Check::timed("chain-map", "phi0(df) = d' phi1(f)", || {
        m.phi0(&source.d(f)?)?.sub(&target.d(&m.phi1(f)?)?)
    }));
    r.push(Check::timed("image-valid", "phi0(x) lies in the target", || {
        for a in xs {
            target.validate(&m.phi0(a)?)?;
        }
        target.validate(&m.phi1(f)?)?;
        Ok::<_, Lie2Error>(true)
    }));
    r.push(Check::timed(
        "homotopy",
        "phi0[x,y] - [phi0 x, phi0 y]' = d' Phi(x,y)",
        || {
            let lhs = m.phi0(&b(x, y)?)?.sub(&bt(&m.phi0(x)?, &m.phi0(y)?)?)?;
            lhs.sub(&target.d(&m.big_phi(x, y)?)?)
        },
    ));
    r.push(Check::timed(
        "homotopy-mixed",
        "phi1[x,f] - [phi0 x, phi1 f]' = Phi(x,df)",
        || {
            let lhs = m.phi1(&b(x, f)?)?.sub(&bt(&m.phi0(x)?, &m.phi1(f)?)?)?;
            lhs.sub(&m.big_phi(x, &source.d(f)?)?)
        },
    ));
    r.push(Check::timed(
        "homotopy-mixed-left",
        "phi1[f,x] - [phi1 f, phi0 x]' = Phi(df,x)",
        || {
            let lhs = m.phi1(&b(f, x)?)?.sub(&bt(&m.phi1(f)?, &m.phi0(x)?)?)?;
            lhs.sub(&m.big_phi(&source.d(f)?, x)?)
        },
    ));
    r.push(Check::timed(
        "coherence",
        "phi1 J(x,y,z) - J'(phi0 x, phi0 y, phi0 z) = Phi(x,[y,z]) - Phi([x,y],z) - Phi(y,[x,z]) - [Phi(x,y), phi0 z]' + [phi0 x, Phi(y,z)]' - [phi0 y, Phi(x,z)]'",
        || {
            let (px, py, pz) = (m.phi0(x)?, m.phi0(y)?, m.phi0(z)?);
            let lhs = m.phi1(&source.jac(x, y, z)?)?.sub(&target.jac(&px, &py, &pz)?)?;
            let rhs = sum(&[
                m.big_phi(x, &b(y, z)?)?,
                m.big_phi(&b(x, y)?, z)?.neg(),
                m.big_phi(y, &b(x, z)?)?.neg(),
                bt(&m.big_phi(x, y)?, &pz)?.neg(),
                bt(&px, &m.big_phi(y, z)?)?,
                bt(&py, &m.big_phi(x, z)?)?.neg(),
            ])?;
            lhs.sub(&rhs)
        },
    ));
    Ok(r)
}

/// Round trip between Hamiltonian forms and splitting-preserving sections.
pub fn iso_roundtrip(m: &MainMorphism, e: &GeneralizedSection) -> Result<Report, Lie2Error> {
    let model = m.model();
    if let Preservation::No(cert) = model.preserves_splitting(e)? {
        return Err(Lie2Error::NotPreserving(cert));
    }
    let alpha = e.alpha.clone();
    let mut r = Report::new();
    r.push(Check::timed(
        "form-hamiltonian",
        "v_a = rho(e) for a = form part of e",
        || Ok::<_, Lie2Error>(&m.plectic().hamiltonian_vf(&alpha)? - &e.v),
    ));
    r.push(Check::timed("phi0-recovers", "phi0(a) = e", || {
        Ok::<_, Lie2Error>(&m.embed(&alpha)? - e)
    }));
    r.push(Check::timed(
        "image-preserves",
        "phi0(a) preserves the splitting",
        || {
            let img = m.embed(&alpha)?;
            Ok::<_, Lie2Error>(model.preserves_splitting(&img)? == Preservation::Yes)
        },
    ));
    Ok(r)
}
