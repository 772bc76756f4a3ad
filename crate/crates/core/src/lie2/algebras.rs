//! The six concrete Lie 2-algebras.

use std::sync::Arc;

use crate::algebra::{rat, Rational, RationalFunction};
use crate::courant::{GeneralizedSection, Preservation, SplitCourantModel};
use crate::exterior::{Chart, DifferentialForm, VectorField};
use crate::plectic::PlecticStructure;

use super::element::kind;
use super::{Lie2Algebra, Lie2Element, Lie2Error, Payload};

fn mismatch(what: &str, x: &Lie2Element) -> Lie2Error {
    Lie2Error::PayloadMismatch(format!(
        "expected {what}, found {} in degree {}",
        kind(x.payload()),
        x.degree()
    ))
}

fn func_of(x: &Lie2Element, chart: &Chart) -> Result<RationalFunction, Lie2Error> {
    match x.payload() {
        Payload::Zero => Ok(chart.zero_fn()),
        Payload::Function(f) => Ok(f.clone()),
        _ => Err(mismatch("a function", x)),
    }
}

fn form_of(x: &Lie2Element, chart: &Chart, degree: usize) -> Result<DifferentialForm, Lie2Error> {
    match x.payload() {
        Payload::Zero => Ok(DifferentialForm::zero(chart, degree)),
        Payload::Form(a) if a.degree() == degree => Ok(a.clone()),
        _ => Err(mismatch("a 1-form", x)),
    }
}

fn section_of(x: &Lie2Element, chart: &Chart) -> Result<GeneralizedSection, Lie2Error> {
    match x.payload() {
        Payload::Zero => Ok(GeneralizedSection::zero(chart)),
        Payload::Section(e) => Ok(e.clone()),
        _ => Err(mismatch("a section", x)),
    }
}

fn field_of(x: &Lie2Element, chart: &Chart) -> Result<VectorField, Lie2Error> {
    match x.payload() {
        Payload::Zero => Ok(VectorField::zero(chart)),
        Payload::Field(v) => Ok(v.clone()),
        _ => Err(mismatch("a vector field", x)),
    }
}

fn real_of(x: &Lie2Element) -> Result<Rational, Lie2Error> {
    match x.payload() {
        Payload::Zero => Ok(rat(0, 1)),
        Payload::Real(c) => Ok(c.clone()),
        _ => Err(mismatch("a real number", x)),
    }
}

fn d_fn(chart: &Chart, f: RationalFunction) -> DifferentialForm {
    DifferentialForm::function(chart, f).d()
}

fn is_hamiltonian_field(p: &PlecticStructure, v: &VectorField) -> Result<bool, Lie2Error> {
    Ok(p.omega().iota(v)?.d().is_zero())
}

/// Hamiltonian 1-forms and functions with the semi-bracket and `J = ι ι ι ω`.
pub struct PlecticLie2 {
    p: Arc<PlecticStructure>,
}

impl PlecticLie2 {
    pub fn new(p: Arc<PlecticStructure>) -> Self {
        PlecticLie2 { p }
    }
}

impl Lie2Algebra for PlecticLie2 {
    fn name(&self) -> String {
        "hamiltonian-forms".into()
    }

    fn validate(&self, x: &Lie2Element) -> Result<(), Lie2Error> {
        match x.degree() {
            0 => {
                let a = form_of(x, self.p.chart(), 1)?;
                self.p.hamiltonian_vf(&a)?;
                Ok(())
            }
            1 => func_of(x, self.p.chart()).map(|_| ()),
            d => Err(Lie2Error::DegreeMismatch { expected: 1, found: d }),
        }
    }

    fn differential(&self, f: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        Ok(Lie2Element::form(0, d_fn(self.p.chart(), func_of(f, self.p.chart())?)))
    }

    fn bracket_00(&self, x: &Lie2Element, y: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        let c = self.p.chart();
        let b = self.p.semi_bracket(&form_of(x, c, 1)?, &form_of(y, c, 1)?)?;
        Ok(Lie2Element::form(0, b))
    }

    fn bracket_01(&self, x: &Lie2Element, f: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        form_of(x, self.p.chart(), 1)?;
        func_of(f, self.p.chart())?;
        Ok(Lie2Element::zero(1))
    }

    fn jacobiator(&self, x: &Lie2Element, y: &Lie2Element, z: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        let c = self.p.chart();
        let j = self
            .p
            .jacobiator(&form_of(x, c, 1)?, &form_of(y, c, 1)?, &form_of(z, c, 1)?)?;
        Ok(Lie2Element::function(j.as_function().expect("0-form")))
    }
}

/// Sections of the Courant algebroid and functions; optionally restricted
/// to splitting-preserving sections.
pub struct CourantLie2 {
    model: Arc<SplitCourantModel>,
    preserving: bool,
}

impl CourantLie2 {
    pub fn new(model: Arc<SplitCourantModel>, preserving: bool) -> Self {
        CourantLie2 { model, preserving }
    }

    fn member(&self, e: &GeneralizedSection) -> Result<(), Lie2Error> {
        if !self.preserving {
            return Ok(());
        }
        match self.model.preserves_splitting(e)? {
            Preservation::Yes => Ok(()),
            Preservation::No(cert) => Err(Lie2Error::MembershipViolation(format!("{e}: d a + i_v w = {cert}"))),
        }
    }

    fn sec(&self, x: &Lie2Element) -> Result<GeneralizedSection, Lie2Error> {
        let e = section_of(x, self.model.chart())?;
        self.member(&e)?;
        Ok(e)
    }
}

impl Lie2Algebra for CourantLie2 {
    fn name(&self) -> String {
        if self.preserving {
            "courant-preserving"
        } else {
            "courant"
        }
        .into()
    }

    fn validate(&self, x: &Lie2Element) -> Result<(), Lie2Error> {
        match x.degree() {
            0 => self.sec(x).map(|_| ()),
            1 => func_of(x, self.model.chart()).map(|_| ()),
            d => Err(Lie2Error::DegreeMismatch { expected: 1, found: d }),
        }
    }

    fn differential(&self, f: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        Ok(Lie2Element::section(
            self.model.d_func(&func_of(f, self.model.chart())?),
        ))
    }

    fn bracket_00(&self, x: &Lie2Element, y: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        let b = self.model.courant(&self.sec(x)?, &self.sec(y)?)?;
        if self.preserving {
            self.member(&b)
                .map_err(|e| Lie2Error::MembershipViolation(format!("bracket is not closed: {e}")))?;
        }
        Ok(Lie2Element::section(b))
    }

    /// `[e, f] = ½⟨e, Df⟩₊`.
    fn bracket_01(&self, x: &Lie2Element, f: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        let e = self.sec(x)?;
        let df = self.model.d_func(&func_of(f, self.model.chart())?);
        Ok(Lie2Element::function(
            self.model.pairing_plus(&e, &df)?.scale(&rat(1, 2)),
        ))
    }

    /// `J = −T`.
    fn jacobiator(&self, x: &Lie2Element, y: &Lie2Element, z: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        let t = self.model.t_tri(&self.sec(x)?, &self.sec(y)?, &self.sec(z)?)?;
        Ok(Lie2Element::function(-t))
    }
}

/// Hamiltonian vector fields as a Lie algebra, with zero degree-1 space.
pub struct TrivialHamLie2 {
    p: Arc<PlecticStructure>,
}

impl TrivialHamLie2 {
    pub fn new(p: Arc<PlecticStructure>) -> Self {
        TrivialHamLie2 { p }
    }

    fn field(&self, x: &Lie2Element) -> Result<VectorField, Lie2Error> {
        field_of(x, self.p.chart())
    }
}

impl Lie2Algebra for TrivialHamLie2 {
    fn name(&self) -> String {
        "hamiltonian-fields".into()
    }

    fn validate(&self, x: &Lie2Element) -> Result<(), Lie2Error> {
        match x.degree() {
            0 => {
                let v = self.field(x)?;
                if is_hamiltonian_field(&self.p, &v)? {
                    Ok(())
                } else {
                    Err(Lie2Error::PayloadMismatch(format!("{v} is not Hamiltonian")))
                }
            }
            1 if matches!(x.payload(), Payload::Zero) => Ok(()),
            1 => Err(mismatch("zero", x)),
            d => Err(Lie2Error::DegreeMismatch { expected: 1, found: d }),
        }
    }

    fn differential(&self, _f: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        Ok(Lie2Element::zero(0))
    }

    fn bracket_00(&self, x: &Lie2Element, y: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        Ok(Lie2Element::field(self.field(x)?.bracket(&self.field(y)?)?))
    }

    fn bracket_01(&self, _x: &Lie2Element, _f: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        Ok(Lie2Element::zero(1))
    }

    fn jacobiator(&self, _x: &Lie2Element, _y: &Lie2Element, _z: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        Ok(Lie2Element::zero(1))
    }
}

/// `C∞ → Ω¹_closed` with all brackets and the Jacobiator zero.
pub struct AbelianClosedLie2 {
    chart: Chart,
}

impl AbelianClosedLie2 {
    pub fn new(chart: &Chart) -> Self {
        AbelianClosedLie2 { chart: chart.clone() }
    }
}

impl Lie2Algebra for AbelianClosedLie2 {
    fn name(&self) -> String {
        "abelian-closed".into()
    }

    fn validate(&self, x: &Lie2Element) -> Result<(), Lie2Error> {
        match x.degree() {
            0 => {
                let a = form_of(x, &self.chart, 1)?;
                if a.d().is_zero() {
                    Ok(())
                } else {
                    Err(Lie2Error::PayloadMismatch(format!("{a} is not closed")))
                }
            }
            1 => func_of(x, &self.chart).map(|_| ()),
            d => Err(Lie2Error::DegreeMismatch { expected: 1, found: d }),
        }
    }

    fn differential(&self, f: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        Ok(Lie2Element::form(0, d_fn(&self.chart, func_of(f, &self.chart)?)))
    }

    fn bracket_00(&self, _x: &Lie2Element, _y: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        Ok(Lie2Element::zero(0))
    }

    fn bracket_01(&self, _x: &Lie2Element, _f: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        Ok(Lie2Element::zero(1))
    }

    fn jacobiator(&self, _x: &Lie2Element, _y: &Lie2Element, _z: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        Ok(Lie2Element::zero(1))
    }
}

/// `ℝ → 𝔛_Ham` with zero differential and Jacobiator `J_x = ι ι ι ω |_x`.
pub struct HamFieldsAtPoint {
    p: Arc<PlecticStructure>,
    point: Vec<Rational>,
}

impl HamFieldsAtPoint {
    pub fn new(p: Arc<PlecticStructure>, point: Vec<Rational>) -> Self {
        HamFieldsAtPoint { p, point }
    }

    pub fn point(&self) -> &[Rational] {
        &self.point
    }

    fn field(&self, x: &Lie2Element) -> Result<VectorField, Lie2Error> {
        field_of(x, self.p.chart())
    }
}

impl Lie2Algebra for HamFieldsAtPoint {
    fn name(&self) -> String {
        "hamiltonian-fields-at-point".into()
    }

    fn validate(&self, x: &Lie2Element) -> Result<(), Lie2Error> {
        match x.degree() {
            0 => {
                let v = self.field(x)?;
                if is_hamiltonian_field(&self.p, &v)? {
                    Ok(())
                } else {
                    Err(Lie2Error::PayloadMismatch(format!("{v} is not Hamiltonian")))
                }
            }
            1 => real_of(x).map(|_| ()),
            d => Err(Lie2Error::DegreeMismatch { expected: 1, found: d }),
        }
    }

    fn differential(&self, f: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        real_of(f)?;
        Ok(Lie2Element::zero(0))
    }

    fn bracket_00(&self, x: &Lie2Element, y: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        Ok(Lie2Element::field(self.field(x)?.bracket(&self.field(y)?)?))
    }

    fn bracket_01(&self, x: &Lie2Element, f: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        self.field(x)?;
        real_of(f)?;
        Ok(Lie2Element::zero(1))
    }

    fn jacobiator(&self, x: &Lie2Element, y: &Lie2Element, z: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        let (v1, v2, v3) = (self.field(x)?, self.field(y)?, self.field(z)?);
        let j = self.p.omega().iota(&v3)?.iota(&v2)?.iota(&v1)?;
        let val = j
            .as_function()
            .expect("0-form")
            .eval(&self.point)
            .map_err(crate::exterior::ExteriorError::from)?;
        Ok(Lie2Element::real(val))
    }
}
