use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::algebra::{Rational, RationalFunction};

use super::form::fmt_summand;
use super::{Chart, ExteriorError};

/// A vector field `Σ vⁱ ∂ᵢ` with rational-function components.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    chart: Chart,
    comps: Vec<RationalFunction>,
}

impl VectorField {
    pub fn zero(chart: &Chart) -> Self {
        VectorField {
            chart: chart.clone(),
            comps: vec![chart.zero_fn(); chart.dimension()],
        }
    }

    pub fn basis(chart: &Chart, i: usize) -> Self {
        let mut v = Self::zero(chart);
        v.comps[i] = chart.one_fn();
        v
    }

    /// Euler field `Σ xⁱ ∂ᵢ`.
    pub fn euler(chart: &Chart) -> Self {
        VectorField {
            chart: chart.clone(),
            comps: (0..chart.dimension()).map(|i| chart.coord(i)).collect(),
        }
    }

    pub fn from_components(chart: &Chart, comps: Vec<RationalFunction>) -> Result<Self, ExteriorError> {
        if comps.len() != chart.dimension() {
            return Err(ExteriorError::ArityMismatch {
                expected: chart.dimension(),
                found: comps.len(),
            });
        }
        Ok(VectorField {
            chart: chart.clone(),
            comps,
        })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn components(&self) -> &[RationalFunction] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &RationalFunction {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RationalFunction::is_zero)
    }

    pub fn is_polynomial(&self) -> bool {
        self.comps.iter().all(RationalFunction::is_polynomial)
    }

    /// Directional derivative `v(f)`.
    pub fn apply(&self, f: &RationalFunction) -> RationalFunction {
        let mut total = self.chart.zero_fn();
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let df = f.diff(i);
            if !df.is_zero() {
                total = &total + &(c * &df);
            }
        }
        total
    }

    /// `[v, w]ⁱ = v(wⁱ) − w(vⁱ)`.
    pub fn bracket(&self, w: &VectorField) -> Result<VectorField, ExteriorError> {
        self.chart.ensure_same(&w.chart)?;
        let comps = (0..self.comps.len())
            .map(|i| &self.apply(&w.comps[i]) - &w.apply(&self.comps[i]))
            .collect();
        Ok(VectorField {
            chart: self.chart.clone(),
            comps,
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn mul_fn(&self, f: &RationalFunction) -> Self {
        self.map(|x| x * f)
    }

    fn map<F: Fn(&RationalFunction) -> RationalFunction>(&self, f: F) -> Self {
        VectorField {
            chart: self.chart.clone(),
            comps: self.comps.iter().map(f).collect(),
        }
    }

    fn zip<F>(&self, other: &Self, f: F) -> Self
    where
        F: Fn(&RationalFunction, &RationalFunction) -> RationalFunction,
    {
        assert_eq!(self.chart, other.chart, "chart mismatch");
        VectorField {
            chart: self.chart.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn eval_at(&self, point: &[Rational]) -> Result<Vec<Rational>, ExteriorError> {
        self.comps
            .iter()
            .map(|c| c.eval(point).map_err(ExteriorError::from))
            .collect()
    }
}

impl<'a> Add<&'a VectorField> for &'a VectorField {
    type Output = VectorField;
    fn add(self, rhs: &'a VectorField) -> VectorField {
        self.zip(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a VectorField> for &'a VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &'a VectorField) -> VectorField {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        self.map(|x| -x)
    }
}

impl Add for VectorField {
    type Output = VectorField;
    fn add(self, rhs: VectorField) -> VectorField {
        &self + &rhs
    }
}

impl Sub for VectorField {
    type Output = VectorField;
    fn sub(self, rhs: VectorField) -> VectorField {
        &self - &rhs
    }
}

impl Neg for VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        -&self
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.chart.coordinates();
        let mut first = true;
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            f.write_str(&fmt_summand(c, &format!("@{}", names[i]), first))?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::partial;

    #[test]
    fn bracket_examples() {
        let c = Chart::r3();
        let (x, y, z) = (c.coord(0), c.coord(1), c.coord(2));
        assert!(partial(&c, 0).bracket(&partial(&c, 1)).unwrap().is_zero());
        let xdy = partial(&c, 1).mul_fn(&x);
        assert_eq!(xdy.bracket(&partial(&c, 0)).unwrap(), -partial(&c, 1));
        let rz = &partial(&c, 1).mul_fn(&x) - &partial(&c, 0).mul_fn(&y);
        let rx = &partial(&c, 2).mul_fn(&y) - &partial(&c, 1).mul_fn(&z);
        let expect = &partial(&c, 2).mul_fn(&x) - &partial(&c, 0).mul_fn(&z);
        let got = rz.bracket(&rx).unwrap();
        assert!(got == expect || got == -expect.clone(), "{got}");
    }

    #[test]
    fn display() {
        let c = Chart::r3();
        let v = &partial(&c, 1).mul_fn(&c.coord(0)) - &partial(&c, 0).mul_fn(&c.coord(1));
        assert_eq!(v.to_string(), "-y*@x + x*@y");
        assert_eq!(VectorField::zero(&c).to_string(), "0");
    }
}
