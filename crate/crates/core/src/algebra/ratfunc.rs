use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{Polynomial, Vars};
use super::{AlgebraError, Rational};

/// Quotient of polynomials over the rationals.
///
/// Canonical form: constant denominators are absorbed into the numerator,
/// common monomial factors and exact polynomial divisors are cancelled, and
/// the denominator is monic under the graded-lex order. Equality is decided by
/// cross-multiplication, so representatives that still share a non-monomial
/// factor compare correctly.
#[derive(Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn zero(vars: &Vars) -> Self {
        Polynomial::zero(vars).into()
    }

    pub fn one(vars: &Vars) -> Self {
        Polynomial::one(vars).into()
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        Polynomial::constant(vars, c).into()
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        Polynomial::var(vars, i).into()
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        let vars = num.vars().clone();
        if num.is_zero() {
            return Self::zero(&vars);
        }
        if let Some(c) = den.as_constant() {
            return RationalFunction {
                num: num.scale(&c.recip()),
                den: Polynomial::one(&vars),
            };
        }
        let (mut num, mut den) = (num, den);
        let g = {
            let a = num.monomial_content();
            let b = den.monomial_content();
            let e: Vec<u32> = a
                .exponents()
                .iter()
                .zip(b.exponents())
                .map(|(x, y)| *x.min(y))
                .collect();
            super::poly::Monomial::from_exponents(&e)
        };
        if !g.is_one() {
            num = num.div_monomial(&g);
            den = den.div_monomial(&g);
        }
        if let Some(q) = num.div_exact(&den) {
            return q.into();
        }
        if !num.is_constant() {
            if let Some(q) = den.div_exact(&num) {
                // num/den = 1/q
                return Self::normalized(Polynomial::one(&vars), q);
            }
        }
        let lc = den.leading_coefficient().cloned().expect("nonzero denominator");
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den }
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn total_degree(&self) -> u32 {
        self.num.total_degree().max(self.den.total_degree())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
        .renormalize_if_zero()
    }

    fn renormalize_if_zero(self) -> Self {
        if self.num.is_zero() {
            Self::zero(self.num.vars())
        } else {
            self
        }
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::normalized(self.num.pow(e), self.den.pow(e))
    }

    pub fn diff(&self, i: usize) -> Self {
        if self.is_polynomial() {
            return self.num.diff(i).into();
        }
        let top = &(&self.num.diff(i) * &self.den) - &(&self.num * &self.den.diff(i));
        Self::normalized(top, &self.den * &self.den)
    }

    pub fn diff_by(&self, name: &str) -> Result<Self, AlgebraError> {
        let i = super::poly::index_of(self.vars(), name)?;
        Ok(self.diff(i))
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational, AlgebraError> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self.num.eval(point)? / d)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        let den = Polynomial::one(p.vars());
        RationalFunction { num: p, den }
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        if self.vars() != other.vars() {
            return false;
        }
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFunction {}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &'a RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            if self.is_polynomial() {
                return (&self.num + &rhs.num).into();
            }
            return RationalFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let top = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::normalized(top, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &'a RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &'a RationalFunction) -> RationalFunction {
        if self.is_polynomial() && rhs.is_polynomial() {
            return (&self.num * &rhs.num).into();
        }
        RationalFunction::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

impl RationalFunction {
    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn sum<'a, I>(vars: &Vars, it: I) -> Self
    where
        I: IntoIterator<Item = &'a RationalFunction>,
    {
        it.into_iter().fold(Self::zero(vars), |acc, x| &acc + x)
    }
}
