use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::algebra::{Polynomial, Rational, RationalFunction};

use super::{Chart, ExteriorError, VectorField};

/// Strictly increasing coordinate indices of a basis form `dx^{i₁}∧…∧dx^{i_k}`.
pub type IndexSet = SmallVec<[u8; 4]>;

/// A differential `k`-form with rational-function coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct DifferentialForm {
    chart: Chart,
    degree: usize,
    terms: BTreeMap<IndexSet, RationalFunction>,
}

/// Sorts `idx` in place and returns the permutation sign, or `None` on a repeat.
fn sort_with_sign(idx: &mut [u8]) -> Option<bool> {
    let mut negative = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(negative)
    }
}

impl DifferentialForm {
    pub fn zero(chart: &Chart, degree: usize) -> Self {
        DifferentialForm {
            chart: chart.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The 0-form `f`.
    pub fn function(chart: &Chart, f: RationalFunction) -> Self {
        let mut out = Self::zero(chart, 0);
        out.add_term(IndexSet::new(), f);
        out
    }

    pub fn from_poly(chart: &Chart, p: Polynomial) -> Self {
        Self::function(chart, p.into())
    }

    pub fn constant(chart: &Chart, c: Rational) -> Self {
        Self::function(chart, RationalFunction::constant(chart.vars(), c))
    }

    /// `dx^{i₁}∧…∧dx^{i_k}` for arbitrary (unsorted, possibly repeated) indices.
    pub fn basis(chart: &Chart, indices: &[usize]) -> Self {
        Self::term(chart, indices, chart.one_fn())
    }

    /// `c · dx^{i₁}∧…∧dx^{i_k}` for arbitrary indices.
    pub fn term(chart: &Chart, indices: &[usize], c: RationalFunction) -> Self {
        assert!(indices.iter().all(|&i| i < chart.dimension()), "index out of range");
        let mut idx: IndexSet = indices.iter().map(|&i| i as u8).collect();
        let mut out = Self::zero(chart, indices.len());
        if let Some(neg) = sort_with_sign(&mut idx) {
            out.add_term(idx, if neg { -c } else { c });
        }
        out
    }

    pub fn from_terms<I>(chart: &Chart, degree: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<usize>, RationalFunction)>,
    {
        let mut out = Self::zero(chart, degree);
        for (idx, c) in terms {
            assert_eq!(idx.len(), degree, "term degree mismatch");
            out = &out + &Self::term(chart, &idx, c);
        }
        out
    }

    fn add_term(&mut self, idx: IndexSet, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexSet, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, indices: &[usize]) -> RationalFunction {
        let single = Self::basis(&self.chart, indices);
        match single.terms.iter().next() {
            None => self.chart.zero_fn(),
            Some((idx, sign)) => match self.terms.get(idx) {
                None => self.chart.zero_fn(),
                Some(c) => c * sign,
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of a 0-form.
    pub fn as_function(&self) -> Option<RationalFunction> {
        (self.degree == 0).then(|| self.coefficient(&[]))
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.values().all(RationalFunction::is_polynomial)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(&self.chart, self.degree);
        for (idx, f) in &self.terms {
            out.add_term(idx.clone(), f.scale(c));
        }
        out
    }

    /// Multiplication by a function.
    pub fn mul_fn(&self, f: &RationalFunction) -> Self {
        let mut out = Self::zero(&self.chart, self.degree);
        for (idx, c) in &self.terms {
            out.add_term(idx.clone(), c * f);
        }
        out
    }

    fn same_chart(&self, other: &Chart) -> Result<(), ExteriorError> {
        self.chart.ensure_same(other)
    }

    pub fn wedge(&self, other: &Self) -> Result<Self, ExteriorError> {
        self.same_chart(&other.chart)?;
        let mut out = Self::zero(&self.chart, self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.iter().any(|i| b.contains(i)) {
                    continue;
                }
                let inversions: usize = a.iter().map(|i| b.iter().filter(|j| *j < i).count()).sum();
                let mut idx: IndexSet = a.iter().chain(b.iter()).copied().collect();
                idx.sort_unstable();
                let c = ca * cb;
                out.add_term(idx, if inversions % 2 == 1 { -c } else { c });
            }
        }
        Ok(out)
    }

    /// Exterior derivative.
    pub fn d(&self) -> Self {
        let mut out = Self::zero(&self.chart, self.degree + 1);
        for (idx, c) in &self.terms {
            for j in 0..self.chart.dimension() {
                let jj = j as u8;
                if idx.contains(&jj) {
                    continue;
                }
                let dc = c.diff(j);
                if dc.is_zero() {
                    continue;
                }
                let pos = idx.iter().filter(|&&i| i < jj).count();
                let mut new_idx = idx.clone();
                new_idx.insert(pos, jj);
                out.add_term(new_idx, if pos % 2 == 1 { -dc } else { dc });
            }
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.d().is_zero()
    }

    /// Interior product contracting the first slot.
    pub fn iota(&self, v: &VectorField) -> Result<Self, ExteriorError> {
        self.same_chart(v.chart())?;
        if self.degree == 0 {
            return Ok(Self::zero(&self.chart, 0));
        }
        let mut out = Self::zero(&self.chart, self.degree - 1);
        for (idx, c) in &self.terms {
            for (m, &i) in idx.iter().enumerate() {
                let vi = v.component(i as usize);
                if vi.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(m);
                let t = c * vi;
                out.add_term(rest, if m % 2 == 1 { -t } else { t });
            }
        }
        Ok(out)
    }

    /// `L_v = ι_v d + d ι_v`.
    pub fn lie_derivative(&self, v: &VectorField) -> Result<Self, ExteriorError> {
        let a = self.d().iota(v)?;
        if self.degree == 0 {
            return Ok(a);
        }
        let b = self.iota(v)?.d();
        Ok(&a + &b)
    }

    /// Full evaluation `a(v₁,…,v_k) = Σ_I c_I det[v_j^{i_m}]`.
    pub fn eval(&self, vs: &[VectorField]) -> Result<RationalFunction, ExteriorError> {
        if vs.len() != self.degree {
            return Err(ExteriorError::ArityMismatch {
                expected: self.degree,
                found: vs.len(),
            });
        }
        for v in vs {
            self.same_chart(v.chart())?;
        }
        let vars = self.chart.vars();
        let mut total = RationalFunction::zero(vars);
        for (idx, c) in &self.terms {
            let m: Vec<Vec<RationalFunction>> = idx
                .iter()
                .map(|&i| vs.iter().map(|v| v.component(i as usize).clone()).collect())
                .collect();
            let det = laplace_det(&m, vars);
            if !det.is_zero() {
                total = &total + &(c * &det);
            }
        }
        Ok(total)
    }

    /// Fills the leading slots: `a(v₁,…,v_m, ·)`.
    pub fn contract(&self, vs: &[VectorField]) -> Result<Self, ExteriorError> {
        if vs.len() > self.degree {
            return Err(ExteriorError::ArityMismatch {
                expected: self.degree,
                found: vs.len(),
            });
        }
        let mut out = self.clone();
        for v in vs {
            out = out.iota(v)?;
        }
        Ok(out)
    }

    /// Radial homotopy operator: returns `b` with `d b = a` for closed `a` of degree ≥ 1.
    pub fn poincare_potential(&self) -> Result<Self, ExteriorError> {
        if self.degree == 0 {
            return Err(ExteriorError::DegreeMismatch { expected: 1, found: 0 });
        }
        if !self.is_polynomial() {
            return Err(ExteriorError::RationalCoefficientUnsupported);
        }
        let da = self.d();
        if !da.is_zero() {
            return Err(ExteriorError::NotClosed {
                residual: da.to_string(),
            });
        }
        let euler = VectorField::euler(&self.chart);
        let k = self.degree as i64;
        let ie = self.iota(&euler)?;
        let mut out = Self::zero(&self.chart, self.degree - 1);
        for (idx, c) in &ie.terms {
            let p = c.as_polynomial().expect("polynomial coefficients");
            let scaled = p.map_terms(|m, coef| coef / Rational::from_integer((k - 1 + m.degree() as i64).into()));
            out.add_term(idx.clone(), scaled.into());
        }
        Ok(out)
    }

    /// Coefficients evaluated at a point.
    pub fn eval_at(&self, point: &[Rational]) -> Result<Vec<(IndexSet, Rational)>, ExteriorError> {
        let mut out = Vec::new();
        for (idx, c) in &self.terms {
            let v = c.eval(point)?;
            if !v.is_zero() {
                out.push((idx.clone(), v));
            }
        }
        Ok(out)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        assert_eq!(self.chart, other.chart, "chart mismatch");
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(idx.clone(), if negate { -c } else { c.clone() });
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExteriorError> {
        self.same_chart(&other.chart)?;
        if self.degree != other.degree {
            return Err(ExteriorError::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(self.combine(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExteriorError> {
        self.try_add(&-other)
    }
}

fn laplace_det(m: &[Vec<RationalFunction>], vars: &crate::algebra::Vars) -> RationalFunction {
    match m.len() {
        0 => RationalFunction::one(vars),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        n => {
            let mut total = RationalFunction::zero(vars);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<RationalFunction>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let t = &m[0][j] * &laplace_det(&minor, vars);
                total = if j % 2 == 0 { &total + &t } else { &total - &t };
            }
            total
        }
    }
}

impl<'a> Add<&'a DifferentialForm> for &'a DifferentialForm {
    type Output = DifferentialForm;
    fn add(self, rhs: &'a DifferentialForm) -> DifferentialForm {
        self.combine(rhs, false)
    }
}

impl<'a> Sub<&'a DifferentialForm> for &'a DifferentialForm {
    type Output = DifferentialForm;
    fn sub(self, rhs: &'a DifferentialForm) -> DifferentialForm {
        self.combine(rhs, true)
    }
}

impl Neg for &DifferentialForm {
    type Output = DifferentialForm;
    fn neg(self) -> DifferentialForm {
        self.scale(&-Rational::one())
    }
}

impl Add for DifferentialForm {
    type Output = DifferentialForm;
    fn add(self, rhs: DifferentialForm) -> DifferentialForm {
        &self + &rhs
    }
}

impl Sub for DifferentialForm {
    type Output = DifferentialForm;
    fn sub(self, rhs: DifferentialForm) -> DifferentialForm {
        &self - &rhs
    }
}

impl Neg for DifferentialForm {
    type Output = DifferentialForm;
    fn neg(self) -> DifferentialForm {
        -&self
    }
}

/// Writes `c·basis` as one summand of a sum, with the sign pulled out when
/// `c` is a single signed monomial. Returns whether the term was negative.
pub(crate) fn fmt_summand(c: &RationalFunction, basis: &str, first: bool) -> String {
    let single_neg = c
        .as_polynomial()
        .filter(|p| p.num_terms() == 1)
        .and_then(|p| p.leading_coefficient().map(|lc| lc < &Rational::zero()))
        .unwrap_or(false);
    let (neg, mag) = if single_neg { (true, -c) } else { (false, c.clone()) };
    let body = if basis.is_empty() {
        if mag.as_polynomial().is_some_and(|p| p.num_terms() == 1) {
            mag.to_string()
        } else {
            format!("({mag})")
        }
    } else if mag.is_one() {
        basis.to_string()
    } else if mag.as_polynomial().is_some_and(|p| p.num_terms() == 1) {
        format!("{mag}*{basis}")
    } else {
        format!("({mag})*{basis}")
    };
    match (first, neg) {
        (true, false) => body,
        (true, true) => format!("-{body}"),
        (false, false) => format!(" + {body}"),
        (false, true) => format!(" - {body}"),
    }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        if self.degree == 0 {
            return write!(f, "{}", self.coefficient(&[]));
        }
        let names = self.chart.coordinates();
        for (k, (idx, c)) in self.terms.iter().enumerate() {
            let basis: Vec<String> = idx.iter().map(|&i| format!("d{}", names[i as usize])).collect();
            f.write_str(&fmt_summand(c, &basis.join("^"), k == 0))?;
        }
        Ok(())
    }
}

impl fmt::Debug for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-form[{}]", self.degree, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::exterior::{dx, partial};

    fn r3() -> Chart {
        Chart::r3()
    }

    #[test]
    fn wedge_examples() {
        let c = r3();
        assert_eq!(
            dx(&c, 0).wedge(&dx(&c, 1)).unwrap(),
            DifferentialForm::basis(&c, &[0, 1])
        );
        assert!(dx(&c, 0).wedge(&dx(&c, 0)).unwrap().is_zero());
        let a = dx(&c, 1).mul_fn(&c.coord(0));
        let b = dx(&c, 2).mul_fn(&c.coord(1));
        let expect = DifferentialForm::basis(&c, &[1, 2]).mul_fn(&(&c.coord(0) * &c.coord(1)));
        assert_eq!(a.wedge(&b).unwrap(), expect);
    }

    #[test]
    fn d_examples() {
        let c = r3();
        let xdy = dx(&c, 1).mul_fn(&c.coord(0));
        assert_eq!(xdy.d(), DifferentialForm::basis(&c, &[0, 1]));
        assert!(DifferentialForm::basis(&c, &[0, 1, 2]).d().is_zero());
        let a = &DifferentialForm::basis(&c, &[1, 2]).mul_fn(&c.coord(0))
            + &DifferentialForm::basis(&c, &[2, 0]).mul_fn(&c.coord(1));
        assert_eq!(a.d(), DifferentialForm::basis(&c, &[0, 1, 2]).scale(&rat(2, 1)));
    }

    #[test]
    fn iota_examples() {
        let c = r3();
        let vol = DifferentialForm::basis(&c, &[0, 1, 2]);
        assert_eq!(vol.iota(&partial(&c, 2)).unwrap(), DifferentialForm::basis(&c, &[0, 1]));
        assert_eq!(
            vol.iota(&partial(&c, 1)).unwrap(),
            -DifferentialForm::basis(&c, &[0, 2])
        );
        let f = DifferentialForm::function(&c, c.coord(0));
        assert!(f.iota(&partial(&c, 0)).unwrap().is_zero());
    }

    #[test]
    fn eval_and_contract() {
        let c = r3();
        let vol = DifferentialForm::basis(&c, &[0, 1, 2]);
        let ps: Vec<_> = (0..3).map(|i| partial(&c, i)).collect();
        assert!(vol.eval(&ps).unwrap().is_one());
        assert_eq!(vol.contract(&[ps[1].clone(), ps[2].clone()]).unwrap(), dx(&c, 0));
        assert!(vol
            .eval(&[ps[0].clone(), ps[1].clone(), ps[0].clone()])
            .unwrap()
            .is_zero());
        assert!(matches!(vol.eval(&ps[..2]), Err(ExteriorError::ArityMismatch { .. })));
    }

    #[test]
    fn lie_derivative_examples() {
        let c = r3();
        let xdy = dx(&c, 1).mul_fn(&c.coord(0));
        assert_eq!(xdy.lie_derivative(&partial(&c, 0)).unwrap(), dx(&c, 1));
        let zero = DifferentialForm::zero(&c, 1);
        assert!(zero.lie_derivative(&partial(&c, 0)).unwrap().is_zero());
        let dxdy = DifferentialForm::basis(&c, &[0, 1]);
        assert!(dxdy.lie_derivative(&partial(&c, 2)).unwrap().is_zero());
    }

    #[test]
    fn potential_examples() {
        let c = r3();
        let (x, y) = (c.coord(0), c.coord(1));
        let a = &dx(&c, 0).mul_fn(&y) + &dx(&c, 1).mul_fn(&x);
        let pot = a.poincare_potential().unwrap();
        assert_eq!(pot, DifferentialForm::function(&c, &x * &y));
        assert_eq!(
            dx(&c, 0).poincare_potential().unwrap(),
            DifferentialForm::function(&c, x.clone())
        );
        let xdy = dx(&c, 1).mul_fn(&x);
        assert!(matches!(xdy.poincare_potential(), Err(ExteriorError::NotClosed { .. })));
        let inv = dx(&c, 0).mul_fn(&y.recip().unwrap());
        assert!(matches!(
            inv.poincare_potential(),
            Err(ExteriorError::RationalCoefficientUnsupported)
        ));
    }

    #[test]
    fn display() {
        let c = r3();
        let (x, y) = (c.coord(0), c.coord(1));
        let a = &dx(&c, 1).mul_fn(&(&x + &y)) - &dx(&c, 0).mul_fn(&x);
        assert_eq!(a.to_string(), "-x*dx + (x + y)*dy");
        let b = DifferentialForm::basis(&c, &[2, 1]).mul_fn(&y);
        assert_eq!(b.to_string(), "-y*dy^dz");
        assert_eq!(DifferentialForm::zero(&c, 2).to_string(), "0");
    }
}
