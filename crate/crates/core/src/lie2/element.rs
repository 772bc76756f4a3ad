use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{fmt_rational, Rational, RationalFunction};
use crate::courant::GeneralizedSection;
use crate::exterior::{DifferentialForm, VectorField};
use crate::report::Residual;

use super::Lie2Error;

/// The carrier of an element; which variant is used depends on the algebra.
#[derive(Clone, PartialEq, Eq)]
pub enum Payload {
    /// The zero element of any space.
    Zero,
    Form(DifferentialForm),
    Section(GeneralizedSection),
    Field(VectorField),
    Function(RationalFunction),
    Real(Rational),
}

/// A degree-tagged element of a Lie 2-algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct Lie2Element {
    degree: u8,
    payload: Payload,
}

impl Lie2Element {
    pub fn new(degree: u8, payload: Payload) -> Self {
        Lie2Element { degree, payload }
    }

    pub fn zero(degree: u8) -> Self {
        Self::new(degree, Payload::Zero)
    }

    pub fn form(degree: u8, a: DifferentialForm) -> Self {
        Self::new(degree, Payload::Form(a))
    }

    pub fn section(e: GeneralizedSection) -> Self {
        Self::new(0, Payload::Section(e))
    }

    pub fn field(v: VectorField) -> Self {
        Self::new(0, Payload::Field(v))
    }

    pub fn function(f: RationalFunction) -> Self {
        Self::new(1, Payload::Function(f))
    }

    pub fn real(c: Rational) -> Self {
        Self::new(1, Payload::Real(c))
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn is_zero(&self) -> bool {
        match &self.payload {
            Payload::Zero => true,
            Payload::Form(a) => a.is_zero(),
            Payload::Section(e) => e.is_zero(),
            Payload::Field(v) => v.is_zero(),
            Payload::Function(f) => f.is_zero(),
            Payload::Real(c) => c.is_zero(),
        }
    }

    pub fn as_form(&self) -> Option<&DifferentialForm> {
        match &self.payload {
            Payload::Form(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_section(&self) -> Option<&GeneralizedSection> {
        match &self.payload {
            Payload::Section(e) => Some(e),
            _ => None,
        }
    }

    pub fn as_field(&self) -> Option<&VectorField> {
        match &self.payload {
            Payload::Field(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_function(&self) -> Option<&RationalFunction> {
        match &self.payload {
            Payload::Function(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_real(&self) -> Option<&Rational> {
        match &self.payload {
            Payload::Real(c) => Some(c),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let payload = match &self.payload {
            Payload::Zero => Payload::Zero,
            Payload::Form(a) => Payload::Form(a.scale(c)),
            Payload::Section(e) => Payload::Section(e.scale(c)),
            Payload::Field(v) => Payload::Field(v.scale(c)),
            Payload::Function(f) => Payload::Function(f.scale(c)),
            Payload::Real(r) => Payload::Real(r * c),
        };
        Self::new(self.degree, payload)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    fn combine(&self, other: &Self, negate: bool) -> Result<Self, Lie2Error> {
        if self.degree != other.degree {
            return Err(Lie2Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let rhs = if negate { other.neg() } else { other.clone() };
        let payload = match (&self.payload, rhs.payload) {
            (Payload::Zero, p) => p,
            (p, Payload::Zero) => p.clone(),
            (Payload::Form(a), Payload::Form(b)) => Payload::Form(a.try_add(&b)?),
            (Payload::Section(a), Payload::Section(b)) => {
                a.chart().ensure_same(b.chart())?;
                Payload::Section(a + &b)
            }
            (Payload::Field(a), Payload::Field(b)) => {
                a.chart().ensure_same(b.chart())?;
                Payload::Field(a + &b)
            }
            (Payload::Function(a), Payload::Function(b)) => Payload::Function(a + &b),
            (Payload::Real(a), Payload::Real(b)) => Payload::Real(a + b),
            (a, b) => {
                return Err(Lie2Error::PayloadMismatch(format!(
                    "cannot combine {} with {}",
                    kind(a),
                    kind(&b)
                )))
            }
        };
        Ok(Self::new(self.degree, payload))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &Self) -> Result<Self, Lie2Error> {
        self.combine(other, false)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, other: &Self) -> Result<Self, Lie2Error> {
        self.combine(other, true)
    }

    /// Exact equality of normalized payloads, treating `Zero` as any zero.
    pub fn equals(&self, other: &Self) -> bool {
        self.sub(other).is_ok_and(|d| d.is_zero())
    }
}

pub(crate) fn kind(p: &Payload) -> &'static str {
    match p {
        Payload::Zero => "zero",
        Payload::Form(_) => "form",
        Payload::Section(_) => "section",
        Payload::Field(_) => "vector field",
        Payload::Function(_) => "function",
        Payload::Real(_) => "real",
    }
}

impl fmt::Display for Lie2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.payload {
            Payload::Zero => write!(f, "0"),
            Payload::Form(a) => write!(f, "{a}"),
            Payload::Section(e) => write!(f, "{e}"),
            Payload::Field(v) => write!(f, "{v}"),
            Payload::Function(g) => write!(f, "{g}"),
            Payload::Real(c) => write!(f, "{}", fmt_rational(c)),
        }
    }
}

impl fmt::Debug for Lie2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lie2Element[deg {}: {}]", self.degree, self)
    }
}

impl Residual for Lie2Element {
    fn is_zero_residual(&self) -> bool {
        self.is_zero()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}
