//! Exterior calculus on a single global coordinate chart.
//!
//! Interior products contract the first slot:
//! `(ι_v a)(u₁,…,u_{k−1}) = a(v, u₁,…,u_{k−1})`. Consequently
//! `ι_{v₁} ι_{v₂} ι_{v₃} ω = ω(v₃, v₂, v₁)`.

mod chart;
mod field;
mod form;

pub use chart::Chart;
pub use field::VectorField;
pub use form::{DifferentialForm, IndexSet};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("objects live on different charts")]
    ChartMismatch,
    #[error("expected {expected} arguments, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("expected a form of degree {expected}, found degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("form is not closed; d of it is {residual}")]
    NotClosed { residual: String },
    #[error("potential requires polynomial coefficients")]
    RationalCoefficientUnsupported,
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `dx^{i}` on `chart`.
pub fn dx(chart: &Chart, i: usize) -> DifferentialForm {
    DifferentialForm::basis(chart, &[i])
}

/// Coordinate field `∂/∂x^i` on `chart`.
pub fn partial(chart: &Chart, i: usize) -> VectorField {
    VectorField::basis(chart, i)
}

pub fn wedge(a: &DifferentialForm, b: &DifferentialForm) -> Result<DifferentialForm, ExteriorError> {
    a.wedge(b)
}

pub fn d(a: &DifferentialForm) -> DifferentialForm {
    a.d()
}

pub fn iota(v: &VectorField, a: &DifferentialForm) -> Result<DifferentialForm, ExteriorError> {
    a.iota(v)
}

pub fn lie_derivative(v: &VectorField, a: &DifferentialForm) -> Result<DifferentialForm, ExteriorError> {
    a.lie_derivative(v)
}

pub fn vf_bracket(v: &VectorField, w: &VectorField) -> Result<VectorField, ExteriorError> {
    v.bracket(w)
}

pub fn form_eval(a: &DifferentialForm, vs: &[VectorField]) -> Result<crate::algebra::RationalFunction, ExteriorError> {
    a.eval(vs)
}

pub fn poincare_potential(a: &DifferentialForm) -> Result<DifferentialForm, ExteriorError> {
    a.poincare_potential()
}
