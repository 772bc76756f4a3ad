//! The split exact Courant algebroid `TM ⊕ T*M` twisted by a closed 3-form.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{rat, RationalFunction};
use crate::exterior::{Chart, DifferentialForm, ExteriorError, VectorField};
use crate::lie2::{CourantLie2, Lie2Algebra};
use crate::report::{Check, Report, Residual};

#[derive(Debug, Clone, Error)]
pub enum CourantError {
    #[error("twist must be a closed 3-form: {0}")]
    BadTwist(String),
    #[error("expected a 1-form, found degree {0}")]
    NotOneForm(usize),
    #[error("expected a 2-form, found degree {0}")]
    NotTwoForm(usize),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

/// A section `s(v) + α` in the split frame.
#[derive(Clone, PartialEq, Eq)]
pub struct GeneralizedSection {
    pub v: VectorField,
    pub alpha: DifferentialForm,
}

impl GeneralizedSection {
    pub fn new(v: VectorField, alpha: DifferentialForm) -> Result<Self, CourantError> {
        if alpha.degree() != 1 {
            return Err(CourantError::NotOneForm(alpha.degree()));
        }
        v.chart().ensure_same(alpha.chart())?;
        Ok(GeneralizedSection { v, alpha })
    }

    pub fn zero(chart: &Chart) -> Self {
        GeneralizedSection {
            v: VectorField::zero(chart),
            alpha: DifferentialForm::zero(chart, 1),
        }
    }

    /// `s(v)`.
    pub fn lift(v: &VectorField) -> Self {
        GeneralizedSection {
            v: v.clone(),
            alpha: DifferentialForm::zero(v.chart(), 1),
        }
    }

    /// `ρ*(α)`.
    pub fn cotangent(alpha: &DifferentialForm) -> Self {
        GeneralizedSection {
            v: VectorField::zero(alpha.chart()),
            alpha: alpha.clone(),
        }
    }

    pub fn chart(&self) -> &Chart {
        self.v.chart()
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero() && self.alpha.is_zero()
    }

    pub fn mul_fn(&self, f: &RationalFunction) -> Self {
        GeneralizedSection {
            v: self.v.mul_fn(f),
            alpha: self.alpha.mul_fn(f),
        }
    }

    pub fn scale(&self, c: &crate::algebra::Rational) -> Self {
        GeneralizedSection {
            v: self.v.scale(c),
            alpha: self.alpha.scale(c),
        }
    }
}

impl<'a> Add<&'a GeneralizedSection> for &'a GeneralizedSection {
    type Output = GeneralizedSection;
    fn add(self, rhs: &'a GeneralizedSection) -> GeneralizedSection {
        GeneralizedSection {
            v: &self.v + &rhs.v,
            alpha: &self.alpha + &rhs.alpha,
        }
    }
}

impl<'a> Sub<&'a GeneralizedSection> for &'a GeneralizedSection {
    type Output = GeneralizedSection;
    fn sub(self, rhs: &'a GeneralizedSection) -> GeneralizedSection {
        GeneralizedSection {
            v: &self.v - &rhs.v,
            alpha: &self.alpha - &rhs.alpha,
        }
    }
}

impl Neg for &GeneralizedSection {
    type Output = GeneralizedSection;
    fn neg(self) -> GeneralizedSection {
        GeneralizedSection {
            v: -&self.v,
            alpha: -&self.alpha,
        }
    }
}

impl fmt::Display for GeneralizedSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.v, self.alpha)
    }
}

impl fmt::Debug for GeneralizedSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Section{self}")
    }
}

impl Residual for GeneralizedSection {
    fn is_zero_residual(&self) -> bool {
        self.is_zero()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

/// A change of splitting `s ↦ s + B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingShift {
    pub b: DifferentialForm,
}

impl SplittingShift {
    pub fn new(b: DifferentialForm) -> Result<Self, CourantError> {
        if b.degree() != 2 {
            return Err(CourantError::NotTwoForm(b.degree()));
        }
        Ok(SplittingShift { b })
    }
}

/// Whether a section preserves the splitting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preservation {
    Yes,
    /// Certificate `dα + ι_v ω ≠ 0`.
    No(DifferentialForm),
}

/// `TM ⊕ T*M` with twisted brackets.
#[derive(Clone, Debug)]
pub struct SplitCourantModel {
    chart: Chart,
    twist: DifferentialForm,
}

impl SplitCourantModel {
    pub fn new(twist: DifferentialForm) -> Result<Self, CourantError> {
        if twist.degree() != 3 {
            return Err(CourantError::BadTwist(format!("degree {}", twist.degree())));
        }
        let dw = twist.d();
        if !dw.is_zero() {
            return Err(CourantError::BadTwist(format!("d of twist is {dw}")));
        }
        Ok(SplitCourantModel {
            chart: twist.chart().clone(),
            twist,
        })
    }

    /// The untwisted standard algebroid.
    pub fn standard(chart: &Chart) -> Self {
        SplitCourantModel {
            chart: chart.clone(),
            twist: DifferentialForm::zero(chart, 3),
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn twist(&self) -> &DifferentialForm {
        &self.twist
    }

    /// `⟨e₁,e₂⟩₊ = ι_{v₁}α₂ + ι_{v₂}α₁`.
    pub fn pairing_plus(
        &self,
        e1: &GeneralizedSection,
        e2: &GeneralizedSection,
    ) -> Result<RationalFunction, CourantError> {
        let a = e2.alpha.iota(&e1.v)?;
        let b = e1.alpha.iota(&e2.v)?;
        Ok(&fn_of(&a) + &fn_of(&b))
    }

    /// `⟨e₁,e₂⟩₋ = ι_{v₁}α₂ − ι_{v₂}α₁`.
    pub fn pairing_minus(
        &self,
        e1: &GeneralizedSection,
        e2: &GeneralizedSection,
    ) -> Result<RationalFunction, CourantError> {
        let a = e2.alpha.iota(&e1.v)?;
        let b = e1.alpha.iota(&e2.v)?;
        Ok(&fn_of(&a) - &fn_of(&b))
    }

    pub fn anchor(&self, e: &GeneralizedSection) -> VectorField {
        e.v.clone()
    }

    /// `Df = (0, df)`.
    pub fn d_func(&self, f: &RationalFunction) -> GeneralizedSection {
        GeneralizedSection::cotangent(&DifferentialForm::function(&self.chart, f.clone()).d())
    }

    fn twist_term(&self, v1: &VectorField, v2: &VectorField) -> Result<DifferentialForm, CourantError> {
        Ok(self.twist.iota(v1)?.iota(v2)?)
    }

    /// `([v₁,v₂], L_{v₁}α₂ − L_{v₂}α₁ − ½ d⟨e₁,e₂⟩₋ − ι_{v₂}ι_{v₁}ω)`.
    pub fn courant(
        &self,
        e1: &GeneralizedSection,
        e2: &GeneralizedSection,
    ) -> Result<GeneralizedSection, CourantError> {
        let v = e1.v.bracket(&e2.v)?;
        let pm = self.pairing_minus(e1, e2)?;
        let half_d = DifferentialForm::function(&self.chart, pm.scale(&rat(1, 2))).d();
        let alpha = &(&(&e2.alpha.lie_derivative(&e1.v)? - &e1.alpha.lie_derivative(&e2.v)?) - &half_d)
            - &self.twist_term(&e1.v, &e2.v)?;
        Ok(GeneralizedSection { v, alpha })
    }

    /// `([v₁,v₂], L_{v₁}α₂ − ι_{v₂}dα₁ − ι_{v₂}ι_{v₁}ω)`.
    pub fn dorfman(
        &self,
        e1: &GeneralizedSection,
        e2: &GeneralizedSection,
    ) -> Result<GeneralizedSection, CourantError> {
        let v = e1.v.bracket(&e2.v)?;
        let alpha =
            &(&e2.alpha.lie_derivative(&e1.v)? - &e1.alpha.d().iota(&e2.v)?) - &self.twist_term(&e1.v, &e2.v)?;
        Ok(GeneralizedSection { v, alpha })
    }

    /// `T = ⅙(⟨⟦e₁,e₂⟧,e₃⟩ + ⟨⟦e₃,e₁⟧,e₂⟩ + ⟨⟦e₂,e₃⟧,e₁⟩)`.
    pub fn t_tri(
        &self,
        e1: &GeneralizedSection,
        e2: &GeneralizedSection,
        e3: &GeneralizedSection,
    ) -> Result<RationalFunction, CourantError> {
        let a = self.pairing_plus(&self.courant(e1, e2)?, e3)?;
        let b = self.pairing_plus(&self.courant(e3, e1)?, e2)?;
        let c = self.pairing_plus(&self.courant(e2, e3)?, e1)?;
        Ok((&(&a + &b) + &c).scale(&rat(1, 6)))
    }

    /// `⟨⟦s v₁, s v₂⟧, s v₃⟩₊`.
    pub fn curvature(
        &self,
        v1: &VectorField,
        v2: &VectorField,
        v3: &VectorField,
    ) -> Result<RationalFunction, CourantError> {
        let (s1, s2, s3) = (
            GeneralizedSection::lift(v1),
            GeneralizedSection::lift(v2),
            GeneralizedSection::lift(v3),
        );
        self.pairing_plus(&self.courant(&s1, &s2)?, &s3)
    }

    /// Curvature of the shifted splitting `s + B`, bracket and pairing unchanged.
    pub fn curvature_of_shift(
        &self,
        shift: &SplittingShift,
        v1: &VectorField,
        v2: &VectorField,
        v3: &VectorField,
    ) -> Result<RationalFunction, CourantError> {
        let lift = |v: &VectorField| -> Result<GeneralizedSection, CourantError> {
            Ok(GeneralizedSection {
                v: v.clone(),
                alpha: shift.b.iota(v)?,
            })
        };
        let (s1, s2, s3) = (lift(v1)?, lift(v2)?, lift(v3)?);
        self.pairing_plus(&self.courant(&s1, &s2)?, &s3)
    }

    /// Coordinates of `e` in the frame of `s + B`: `(v, α − ι_v B)`.
    pub fn change_splitting(
        &self,
        shift: &SplittingShift,
        e: &GeneralizedSection,
    ) -> Result<GeneralizedSection, CourantError> {
        Ok(GeneralizedSection {
            v: e.v.clone(),
            alpha: &e.alpha - &shift.b.iota(&e.v)?,
        })
    }

    /// Twist of the shifted frame, normalized so its curvature is `−(ω − dB)`.
    pub fn shifted_twist(&self, shift: &SplittingShift) -> DifferentialForm {
        &self.twist - &shift.b.d()
    }

    /// `Yes` iff `dα + ι_v ω = 0`.
    pub fn preserves_splitting(&self, e: &GeneralizedSection) -> Result<Preservation, CourantError> {
        let cert = &e.alpha.d() + &self.twist.iota(&e.v)?;
        Ok(if cert.is_zero() {
            Preservation::Yes
        } else {
            Preservation::No(cert)
        })
    }

    /// The five skew-bracket axioms, the five Dorfman axioms and the interchange relation.
    pub fn verify_axioms(
        &self,
        e1: &GeneralizedSection,
        e2: &GeneralizedSection,
        e3: &GeneralizedSection,
        f: &RationalFunction,
        g: &RationalFunction,
    ) -> Report {
        type R<T> = Result<T, CourantError>;
        let c = |a: &GeneralizedSection, b: &GeneralizedSection| self.courant(a, b);
        let dm = |a: &GeneralizedSection, b: &GeneralizedSection| self.dorfman(a, b);
        let pp = |a: &GeneralizedSection, b: &GeneralizedSection| self.pairing_plus(a, b);
        let half = rat(1, 2);
        let mut r = Report::new();

        r.push(Check::timed(
            "skew.jacobi",
            "[e1,[e2,e3]] - [[e1,e2],e3] - [e2,[e1,e3]] = -D T",
            || -> R<_> {
                let lhs = &(&c(e1, &c(e2, e3)?)? - &c(&c(e1, e2)?, e3)?) - &c(e2, &c(e1, e3)?)?;
                let t = self.t_tri(e1, e2, e3)?;
                Ok(&lhs + &self.d_func(&t))
            },
        ));
        r.push(Check::timed(
            "skew.anchor",
            "rho[e1,e2] = [rho e1, rho e2]",
            || -> R<_> { Ok(&c(e1, e2)?.v - &e1.v.bracket(&e2.v)?) },
        ));
        r.push(Check::timed(
            "skew.leibniz",
            "[e1,f e2] = f[e1,e2] + rho(e1)(f) e2 - 1/2 <e1,e2> Df",
            || -> R<_> {
                let lhs = c(e1, &e2.mul_fn(f))?;
                let rhs = &(&c(e1, e2)?.mul_fn(f) + &e2.mul_fn(&e1.v.apply(f)))
                    - &self.d_func(f).mul_fn(&pp(e1, e2)?.scale(&half));
                Ok(&lhs - &rhs)
            },
        ));
        r.push(Check::timed("skew.d-isotropic", "<Df,Dg> = 0", || -> R<_> {
            pp(&self.d_func(f), &self.d_func(g))
        }));
        r.push(Check::timed(
            "skew.invariance",
            "rho(e1)<e2,e3> = <[e1,e2] + 1/2 D<e1,e2>, e3> + <e2, [e1,e3] + 1/2 D<e1,e3>>",
            || -> R<_> {
                let lhs = e1.v.apply(&pp(e2, e3)?);
                let x = &c(e1, e2)? + &self.d_func(&pp(e1, e2)?.scale(&half));
                let y = &c(e1, e3)? + &self.d_func(&pp(e1, e3)?.scale(&half));
                Ok(&lhs - &(&pp(&x, e3)? + &pp(e2, &y)?))
            },
        ));

        r.push(Check::timed(
            "dorfman.jacobi",
            "[[e1,[e2,e3]]] = [[[e1,e2]],e3]] + [[e2,[[e1,e3]]]]",
            || -> R<_> {
                let lhs = dm(e1, &dm(e2, e3)?)?;
                let rhs = &dm(&dm(e1, e2)?, e3)? + &dm(e2, &dm(e1, e3)?)?;
                Ok(&lhs - &rhs)
            },
        ));
        r.push(Check::timed(
            "dorfman.anchor",
            "rho[[e1,e2]] = [rho e1, rho e2]",
            || -> R<_> { Ok(&dm(e1, e2)?.v - &e1.v.bracket(&e2.v)?) },
        ));
        r.push(Check::timed(
            "dorfman.leibniz",
            "[[e1,f e2]] = f[[e1,e2]] + rho(e1)(f) e2",
            || -> R<_> {
                let lhs = dm(e1, &e2.mul_fn(f))?;
                let rhs = &dm(e1, e2)?.mul_fn(f) + &e2.mul_fn(&e1.v.apply(f));
                Ok(&lhs - &rhs)
            },
        ));
        r.push(Check::timed("dorfman.self", "[[e1,e1]] = 1/2 D<e1,e1>", || -> R<_> {
            Ok(&dm(e1, e1)? - &self.d_func(&pp(e1, e1)?.scale(&half)))
        }));
        r.push(Check::timed(
            "dorfman.invariance",
            "rho(e1)<e2,e3> = <[[e1,e2]],e3> + <e2,[[e1,e3]]>",
            || -> R<_> {
                let lhs = e1.v.apply(&pp(e2, e3)?);
                Ok(&lhs - &(&pp(&dm(e1, e2)?, e3)? + &pp(e2, &dm(e1, e3)?)?))
            },
        ));
        r.push(Check::timed(
            "dorfman.interchange",
            "[[e1,e2]] = [e1,e2] + 1/2 D<e1,e2>",
            || -> R<_> {
                let rhs = &c(e1, e2)? + &self.d_func(&pp(e1, e2)?.scale(&half));
                Ok(&dm(e1, e2)? - &rhs)
            },
        ));
        r
    }

    /// The Lie 2-algebra on sections and functions.
    pub fn lie2(self: &Arc<Self>) -> Arc<dyn Lie2Algebra> {
        lie2_of_courant(self)
    }
}

pub fn lie2_of_courant(model: &Arc<SplitCourantModel>) -> Arc<dyn Lie2Algebra> {
    Arc::new(CourantLie2::new(model.clone(), false))
}

/// The sub-Lie 2-algebra of splitting-preserving sections.
pub fn lie2_of_preserving(model: &Arc<SplitCourantModel>) -> Arc<dyn Lie2Algebra> {
    Arc::new(CourantLie2::new(model.clone(), true))
}

fn fn_of(zero_form: &DifferentialForm) -> RationalFunction {
    zero_form.as_function().unwrap_or_else(|| zero_form.chart().zero_fn())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::exterior::{dx, partial};

    fn model() -> SplitCourantModel {
        SplitCourantModel::new(DifferentialForm::basis(&Chart::r3(), &[0, 1, 2])).unwrap()
    }

    fn sec(v: VectorField, a: DifferentialForm) -> GeneralizedSection {
        GeneralizedSection::new(v, a).unwrap()
    }

    #[test]
    fn pairings() {
        let m = model();
        let c = m.chart().clone();
        let e1 = sec(partial(&c, 0), dx(&c, 2).mul_fn(&c.coord(1)));
        let e2 = sec(partial(&c, 2), dx(&c, 0).mul_fn(&c.coord(0)));
        assert_eq!(m.pairing_plus(&e1, &e2).unwrap(), &c.coord(0) + &c.coord(1));
        assert_eq!(m.pairing_minus(&e1, &e2).unwrap(), &c.coord(0) - &c.coord(1));
        assert!(m.pairing_minus(&e1, &e1).unwrap().is_zero());
        let f = &c.coord(0) * &c.coord(1);
        assert_eq!(m.pairing_plus(&m.d_func(&f), &e1).unwrap(), e1.v.apply(&f));
    }

    #[test]
    fn brackets() {
        let m = model();
        let c = m.chart().clone();
        let (sx, sy) = (
            GeneralizedSection::lift(&partial(&c, 0)),
            GeneralizedSection::lift(&partial(&c, 1)),
        );
        let expect = GeneralizedSection::cotangent(&-dx(&c, 2));
        assert_eq!(m.courant(&sx, &sy).unwrap(), expect);
        assert_eq!(m.dorfman(&sx, &sy).unwrap(), expect);
        let std = SplitCourantModel::standard(&c);
        let e2 = GeneralizedSection::cotangent(&dx(&c, 1).mul_fn(&c.coord(0)));
        // the skew pairing of s(∂x) and x dy vanishes, so no correction term
        assert_eq!(
            std.courant(&sx, &e2).unwrap(),
            GeneralizedSection::cotangent(&dx(&c, 1))
        );
        let e3 = GeneralizedSection::cotangent(&dx(&c, 0).mul_fn(&c.coord(0)));
        assert_eq!(
            std.courant(&sx, &e3).unwrap(),
            GeneralizedSection::cotangent(&dx(&c, 0).scale(&rat(1, 2)))
        );
    }

    #[test]
    fn t_and_curvature() {
        let m = model();
        let c = m.chart().clone();
        let s: Vec<_> = (0..3).map(|i| GeneralizedSection::lift(&partial(&c, i))).collect();
        assert_eq!(
            m.t_tri(&s[0], &s[1], &s[2]).unwrap(),
            RationalFunction::constant(c.vars(), rat(-1, 2))
        );
        let p: Vec<_> = (0..3).map(|i| partial(&c, i)).collect();
        assert_eq!(
            m.curvature(&p[0], &p[1], &p[2]).unwrap(),
            RationalFunction::constant(c.vars(), rat(-1, 1))
        );
        assert!(m.curvature(&p[0], &p[0], &p[2]).unwrap().is_zero());
    }

    #[test]
    fn shift_changes_curvature_by_db() {
        let c = Chart::r3();
        let m = SplitCourantModel::standard(&c);
        let b = SplittingShift::new(DifferentialForm::basis(&c, &[1, 2]).mul_fn(&c.coord(0))).unwrap();
        let p: Vec<_> = (0..3).map(|i| partial(&c, i)).collect();
        let k = m.curvature_of_shift(&b, &p[0], &p[1], &p[2]).unwrap();
        assert_eq!(k, RationalFunction::constant(c.vars(), rat(1, 1)));
        assert_eq!(m.shifted_twist(&b), -DifferentialForm::basis(&c, &[0, 1, 2]));
    }

    #[test]
    fn preservation() {
        let m = model();
        let c = m.chart().clone();
        let xdy = dx(&c, 1).mul_fn(&c.coord(0));
        assert_eq!(
            m.preserves_splitting(&sec(-partial(&c, 2), xdy.clone())).unwrap(),
            Preservation::Yes
        );
        assert_eq!(
            m.preserves_splitting(&GeneralizedSection::cotangent(&xdy)).unwrap(),
            Preservation::No(DifferentialForm::basis(&c, &[0, 1]))
        );
    }

    #[test]
    fn axioms_on_coordinate_lifts() {
        let m = model();
        let c = m.chart().clone();
        let s: Vec<_> = (0..3).map(|i| GeneralizedSection::lift(&partial(&c, i))).collect();
        let r = m.verify_axioms(&s[0], &s[1], &s[2], &c.coord(0), &c.coord(1));
        assert_eq!(r.len(), 11);
        assert!(r.passed(), "{}", r.human_text());
    }
}
