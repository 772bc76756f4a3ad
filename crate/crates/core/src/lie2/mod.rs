//! Lie 2-algebras as 2-term chain complexes `L₁ → L₀`, represented
//! behaviorally, with checkers for the axioms and for morphisms.

mod algebras;
mod element;
mod morphism;

pub use algebras::{AbelianClosedLie2, CourantLie2, HamFieldsAtPoint, PlecticLie2, TrivialHamLie2};
pub use element::{Lie2Element, Payload};
pub use morphism::{
    check_morphism, iso_roundtrip, main_morphism, EvMorphism, IdentityMorphism, Lie2Morphism, MainMorphism,
};

use thiserror::Error;

use crate::courant::CourantError;
use crate::exterior::{DifferentialForm, ExteriorError};
use crate::plectic::PlecticError;
use crate::report::{Check, Report};

#[derive(Debug, Clone, Error)]
pub enum Lie2Error {
    #[error("expected an element of degree {expected}, found degree {found}")]
    DegreeMismatch { expected: u8, found: u8 },
    #[error("element payload does not belong to this algebra: {0}")]
    PayloadMismatch(String),
    #[error("section does not preserve the splitting: {0}")]
    MembershipViolation(String),
    #[error("Courant twist differs from the plectic form")]
    TwistMismatch,
    #[error("section does not preserve the splitting; certificate {0}")]
    NotPreserving(DifferentialForm),
    #[error(transparent)]
    Plectic(#[from] PlecticError),
    #[error(transparent)]
    Courant(#[from] CourantError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

/// A 2-term Lie 2-algebra with bracket and Jacobiator evaluated on demand.
pub trait Lie2Algebra: Send + Sync {
    fn name(&self) -> String;

    /// Checks that `x` belongs to the graded space of its degree.
    fn validate(&self, x: &Lie2Element) -> Result<(), Lie2Error>;

    /// `d: L₁ → L₀`.
    fn differential(&self, f: &Lie2Element) -> Result<Lie2Element, Lie2Error>;

    /// Bracket of two degree-0 elements.
    fn bracket_00(&self, x: &Lie2Element, y: &Lie2Element) -> Result<Lie2Element, Lie2Error>;

    /// Bracket of a degree-0 and a degree-1 element.
    fn bracket_01(&self, x: &Lie2Element, f: &Lie2Element) -> Result<Lie2Element, Lie2Error>;

    /// `[f, x] = −[x, f]`.
    fn bracket_10(&self, f: &Lie2Element, x: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        Ok(self.bracket_01(x, f)?.neg())
    }

    /// Jacobiator on three degree-0 elements; lands in degree 1.
    fn jacobiator(&self, x: &Lie2Element, y: &Lie2Element, z: &Lie2Element) -> Result<Lie2Element, Lie2Error>;

    /// Graded bracket; two degree-1 inputs land in the zero degree-2 space.
    fn bracket(&self, a: &Lie2Element, b: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        match (a.degree(), b.degree()) {
            (0, 0) => self.bracket_00(a, b),
            (0, 1) => self.bracket_01(a, b),
            (1, 0) => self.bracket_10(a, b),
            (1, 1) => Ok(Lie2Element::zero(2)),
            (d, _) if d > 1 => Err(Lie2Error::DegreeMismatch { expected: 1, found: d }),
            (_, d) => Err(Lie2Error::DegreeMismatch { expected: 1, found: d }),
        }
    }

    /// Jacobiator with degree checks.
    fn jac(&self, x: &Lie2Element, y: &Lie2Element, z: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        for e in [x, y, z] {
            expect_degree(e, 0)?;
        }
        self.jacobiator(x, y, z)
    }

    fn d(&self, f: &Lie2Element) -> Result<Lie2Element, Lie2Error> {
        expect_degree(f, 1)?;
        self.differential(f)
    }
}

pub(crate) fn expect_degree(x: &Lie2Element, d: u8) -> Result<(), Lie2Error> {
    if x.degree() == d {
        Ok(())
    } else {
        Err(Lie2Error::DegreeMismatch {
            expected: d,
            found: x.degree(),
        })
    }
}

/// Checks the Lie 2-algebra axioms on degree-0 elements `xs = [x, y, z, w]`
/// and degree-1 elements `fs = [f, g]`.
pub fn check_l2a_axioms(
    l: &dyn Lie2Algebra,
    xs: [&Lie2Element; 4],
    fs: [&Lie2Element; 2],
) -> Result<Report, Lie2Error> {
    for x in xs {
        expect_degree(x, 0)?;
        l.validate(x)?;
    }
    for f in fs {
        expect_degree(f, 1)?;
        l.validate(f)?;
    }
    let [x, y, z, w] = xs;
    let [f, g] = fs;
    let b = |a: &Lie2Element, c: &Lie2Element| l.bracket(a, c);
    let j = |a: &Lie2Element, c: &Lie2Element, e: &Lie2Element| l.jac(a, c, e);
    let mut r = Report::new();

    r.push(Check::timed("bracket-skew", "[x,y] + [y,x] = 0", || {
        b(x, y)?.add(&b(y, x)?)
    }));
    r.push(Check::timed("bracket-skew-mixed", "[x,f] + [f,x] = 0", || {
        b(x, f)?.add(&b(f, x)?)
    }));
    r.push(Check::timed(
        "jacobiator-skew",
        "J(x,y,z) + J(y,x,z) = 0 and J(x,y,z) + J(x,z,y) = 0",
        || {
            let t1 = j(x, y, z)?.add(&j(y, x, z)?)?;
            let t2 = j(x, y, z)?.add(&j(x, z, y)?)?;
            Ok::<_, Lie2Error>(Pair(t1, t2))
        },
    ));
    r.push(Check::timed("chain-map-mixed", "d[x,f] = [x,df]", || {
        l.d(&b(x, f)?)?.sub(&b(x, &l.d(f)?)?)
    }));
    r.push(Check::timed("chain-map-top", "[df,g] = [f,dg]", || {
        b(&l.d(f)?, g)?.sub(&b(f, &l.d(g)?)?)
    }));
    r.push(Check::timed(
        "homotopy-jacobi",
        "d J(x,y,z) = [x,[y,z]] - [[x,y],z] - [y,[x,z]]",
        || {
            let rhs = b(x, &b(y, z)?)?.sub(&b(&b(x, y)?, z)?)?.sub(&b(y, &b(x, z)?)?)?;
            l.d(&j(x, y, z)?)?.sub(&rhs)
        },
    ));
    r.push(Check::timed(
        "homotopy-jacobi-mixed",
        "J(x,y,df) = [x,[y,f]] - [[x,y],f] - [y,[x,f]]",
        || {
            let rhs = b(x, &b(y, f)?)?.sub(&b(&b(x, y)?, f)?)?.sub(&b(y, &b(x, f)?)?)?;
            let t1 = j(x, y, &l.d(f)?)?.sub(&rhs)?;
            let lhs2 = j(&l.d(f)?, y, z)?;
            let rhs2 = b(f, &b(y, z)?)?.sub(&b(&b(f, y)?, z)?)?.sub(&b(y, &b(f, z)?)?)?;
            Ok::<_, Lie2Error>(Pair(t1, lhs2.sub(&rhs2)?))
        },
    ));
    r.push(Check::timed(
        "coherence",
        "[x,J(y,z,w)] + J(x,[y,z],w) + J(x,z,[y,w]) + [J(x,y,z),w] + [z,J(x,y,w)] = J(x,y,[z,w]) + J([x,y],z,w) + [y,J(x,z,w)] + J(y,[x,z],w) + J(y,z,[x,w])",
        || {
            let lhs = sum(&[
                b(x, &j(y, z, w)?)?,
                j(x, &b(y, z)?, w)?,
                j(x, z, &b(y, w)?)?,
                b(&j(x, y, z)?, w)?,
                b(z, &j(x, y, w)?)?,
            ])?;
            let rhs = sum(&[
                j(x, y, &b(z, w)?)?,
                j(&b(x, y)?, z, w)?,
                b(y, &j(x, z, w)?)?,
                j(y, &b(x, z)?, w)?,
                j(y, z, &b(x, w)?)?,
            ])?;
            lhs.sub(&rhs)
        },
    ));
    Ok(r)
}

pub(crate) fn sum(items: &[Lie2Element]) -> Result<Lie2Element, Lie2Error> {
    let mut acc = items[0].clone();
    for x in &items[1..] {
        acc = acc.add(x)?;
    }
    Ok(acc)
}

/// Two residuals reported together.
pub(crate) struct Pair(pub Lie2Element, pub Lie2Element);

impl crate::report::Residual for Pair {
    fn is_zero_residual(&self) -> bool {
        self.0.is_zero() && self.1.is_zero()
    }
    fn render(&self) -> String {
        format!("({}, {})", self.0, self.1)
    }
}
