use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::{AlgebraError, Rational};

/// Ordered coordinate names shared by every polynomial on a chart.
pub type Vars = Arc<[String]>;

/// Exponent multi-index, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a map keyed by graded-lex monomials; zero coefficients
/// are never stored.
#[derive(Clone)]
pub struct Polynomial {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(vars: &Vars) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        assert!(i < vars.len(), "variable index out of range");
        let mut p = Self::zero(vars);
        p.terms.insert(Monomial::var(vars.len(), i), Rational::one());
        p
    }

    /// Variable by coordinate name.
    pub fn var_named(vars: &Vars, name: &str) -> Result<Self, AlgebraError> {
        let i = index_of(vars, name)?;
        Ok(Self::var(vars, i))
    }

    pub fn monomial(vars: &Vars, exps: &[u32], c: Rational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent length mismatch");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::from_exponents(exps), c);
        }
        p
    }

    pub fn from_terms<I>(vars: &Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len(), "exponent length mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.leading_term().map(|(_, c)| c)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Polynomial) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials over different coordinate lists"
        );
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational, AlgebraError> {
        if point.len() != self.nvars() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.nvars(),
                found: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn diff(&self, i: usize) -> Polynomial {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut n = m.clone();
            n.0[i] = e - 1;
            out.add_term(n, c * Rational::from_integer(e.into()));
        }
        out
    }

    pub fn diff_by(&self, name: &str) -> Result<Polynomial, AlgebraError> {
        let i = index_of(&self.vars, name)?;
        Ok(self.diff(i))
    }

    /// Exact quotient `self / divisor` if the division leaves no remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        self.check_vars(divisor);
        let (lm, lc) = divisor.leading_term()?;
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return None;
            }
            let qm = m.div(lm);
            let qc = c / lc;
            rem = &rem - &divisor.mul_term(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.nvars()),
            Some(first) => it.fold(first.clone(), |g, m| g.gcd(m)),
        }
    }

    /// Divides by a monomial that is known to divide every term.
    pub fn div_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(n, c)| {
                    assert!(m.divides(n), "monomial does not divide term");
                    (n.div(m), c.clone())
                })
                .collect(),
        }
    }

    /// Coefficients in `t` of `self(from + t·(to − from))`, lowest degree first.
    pub fn restrict_to_segment(&self, from: &[Rational], to: &[Rational]) -> Result<Vec<Rational>, AlgebraError> {
        for p in [from, to] {
            if p.len() != self.nvars() {
                return Err(AlgebraError::DimensionMismatch {
                    expected: self.nvars(),
                    found: p.len(),
                });
            }
        }
        let lines: Vec<[Rational; 2]> = from.iter().zip(to).map(|(a, b)| [a.clone(), b - a]).collect();
        let mut total = vec![Rational::zero(); self.total_degree() as usize + 1];
        for (m, c) in &self.terms {
            let mut acc = vec![c.clone()];
            for (line, &e) in lines.iter().zip(m.exponents()) {
                for _ in 0..e {
                    acc = univariate_mul(&acc, line);
                }
            }
            for (k, a) in acc.into_iter().enumerate() {
                total[k] += a;
            }
        }
        while total.len() > 1 && total.last().is_some_and(Zero::is_zero) {
            total.pop();
        }
        Ok(total)
    }

    /// Applies `f` to each (monomial, coefficient) pair, rebuilding the sum.
    pub fn map_terms<F>(&self, mut f: F) -> Polynomial
    where
        F: FnMut(&Monomial, &Rational) -> Rational,
    {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(m, c));
        }
        out
    }
}

fn univariate_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub(crate) fn index_of(vars: &Vars, name: &str) -> Result<usize, AlgebraError> {
    vars.iter()
        .position(|v| v == name)
        .ok_or_else(|| AlgebraError::UnknownCoordinate(name.to_string()))
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.check_vars(rhs);
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.check_vars(rhs);
        let mut out = Polynomial::zero(&self.vars);
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident, $ty:ty) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add, Polynomial);
forward_owned!(Sub, sub, Polynomial);
forward_owned!(Mul, mul, Polynomial);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_monomial(vars: &[String], m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (v, &e) in vars.iter().zip(m.exponents()) {
        match e {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

/// Canonical printing: terms in descending graded-lex order, e.g. `x^2*y - 1/2`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", fmt_monomial(&self.vars, m))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), fmt_monomial(&self.vars, m))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn xyz() -> Vars {
        Arc::from(vec!["x".to_string(), "y".to_string(), "z".to_string()])
    }

    #[test]
    fn eval_examples() {
        let v = xyz();
        let x = Polynomial::var(&v, 0);
        let y = Polynomial::var(&v, 1);
        let p = &x.pow(2) + &y;
        assert_eq!(p.eval(&[rat(2, 1), rat(3, 1), rat(0, 1)]).unwrap(), rat(7, 1));
        assert_eq!(
            Polynomial::zero(&v).eval(&[rat(5, 1), rat(1, 3), rat(0, 1)]).unwrap(),
            rat(0, 1)
        );
        let q = &(&x * &y) - &Polynomial::constant(&v, rat(1, 2));
        assert_eq!(q.eval(&[rat(1, 2), rat(1, 3), rat(9, 1)]).unwrap(), rat(-1, 3));
        assert!(matches!(
            q.eval(&[rat(1, 1)]),
            Err(AlgebraError::DimensionMismatch { expected: 3, found: 1 })
        ));
    }

    #[test]
    fn diff_examples() {
        let v = xyz();
        let x = Polynomial::var(&v, 0);
        let y = Polynomial::var(&v, 1);
        let x2y = &x.pow(2) * &y;
        assert_eq!(x2y.diff_by("x").unwrap(), (&x * &y).scale(&rat(2, 1)));
        assert!(x2y.diff_by("z").unwrap().is_zero());
        let p = &x.pow(3).scale(&rat(1, 3)) + &(&x * &y.pow(2));
        assert_eq!(p.diff_by("x").unwrap(), &x.pow(2) + &y.pow(2));
        assert!(matches!(
            p.diff_by("w"),
            Err(AlgebraError::UnknownCoordinate(name)) if name == "w"
        ));
    }

    #[test]
    fn exact_division() {
        let v = xyz();
        let x = Polynomial::var(&v, 0);
        let y = Polynomial::var(&v, 1);
        let a = &x + &y;
        let b = &x - &y.scale(&rat(2, 1));
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(prod.div_exact(&(&x + &Polynomial::one(&v))).is_none());
    }

    #[test]
    fn segment_restriction() {
        let v = xyz();
        let x = Polynomial::var(&v, 0);
        let y = Polynomial::var(&v, 1);
        // x*y on (0,1,0) -> (2,3,0): x = 2t, y = 1 + 2t, product 2t + 4t^2
        let c = (&x * &y)
            .restrict_to_segment(&[rat(0, 1), rat(1, 1), rat(0, 1)], &[rat(2, 1), rat(3, 1), rat(0, 1)])
            .unwrap();
        assert_eq!(c, vec![rat(0, 1), rat(2, 1), rat(4, 1)]);
    }

    #[test]
    fn display_is_graded_lex_descending() {
        let v = xyz();
        let x = Polynomial::var(&v, 0);
        let y = Polynomial::var(&v, 1);
        let z = Polynomial::var(&v, 2);
        let p = &(&(&x.pow(2) * &y) - &Polynomial::constant(&v, rat(1, 2))) + &z.scale(&rat(-3, 4));
        assert_eq!(p.to_string(), "x^2*y - 3/4*z - 1/2");
    }
}
