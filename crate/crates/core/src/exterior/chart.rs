use std::fmt;
use std::sync::Arc;

use crate::algebra::{Polynomial, RationalFunction, Vars};

use super::ExteriorError;

/// A global coordinate chart `ℝⁿ` with named coordinates.
#[derive(Clone)]
pub struct Chart {
    label: Arc<str>,
    vars: Vars,
}

impl Chart {
    pub fn new<S: AsRef<str>>(label: &str, coords: &[S]) -> Result<Self, ExteriorError> {
        if coords.is_empty() {
            return Err(ExteriorError::InvalidChart(
                "a chart needs at least one coordinate".into(),
            ));
        }
        let names: Vec<String> = coords.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !n.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(ExteriorError::InvalidChart(format!("bad coordinate name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(ExteriorError::InvalidChart(format!("duplicate coordinate `{n}`")));
            }
        }
        Ok(Chart {
            label: Arc::from(label),
            vars: Arc::from(names),
        })
    }

    /// `ℝ³` with coordinates `x, y, z`.
    pub fn r3() -> Self {
        Self::new("R3", &["x", "y", "z"]).expect("valid chart")
    }

    /// `ℝ²` with coordinates `q, p`.
    pub fn r2_qp() -> Self {
        Self::new("R2", &["q", "p"]).expect("valid chart")
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dimension(&self) -> usize {
        self.vars.len()
    }

    pub fn coordinates(&self) -> &[String] {
        &self.vars
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Coordinate function `x_i` as a rational function.
    pub fn coord(&self, i: usize) -> RationalFunction {
        RationalFunction::var(&self.vars, i)
    }

    pub fn coord_poly(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.vars, i)
    }

    pub fn zero_fn(&self) -> RationalFunction {
        RationalFunction::zero(&self.vars)
    }

    pub fn one_fn(&self) -> RationalFunction {
        RationalFunction::one(&self.vars)
    }

    pub fn ensure_same(&self, other: &Chart) -> Result<(), ExteriorError> {
        if self == other {
            Ok(())
        } else {
            Err(ExteriorError::ChartMismatch)
        }
    }
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }
}

impl Eq for Chart {}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chart({} ({}))", self.label, self.vars.join(", "))
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chart {} ({})", self.label, self.vars.join(", "))
    }
}
