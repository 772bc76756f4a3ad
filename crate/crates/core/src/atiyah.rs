//! The transitive Lie algebroid `TM ⊕ ℝ` over a symplectic chart, its
//! bracket, splitting-preserving sections and the Kostant–Souriau cocycle.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Rational, RationalFunction};
use crate::extension::{ce_delta, require_hamiltonian, CECochain, ExtensionError};
use crate::exterior::{DifferentialForm, ExteriorError, VectorField};
use crate::plectic::{PlecticError, PlecticStructure};
use crate::report::{Check, Report, Residual};

#[derive(Debug, Clone, Error)]
pub enum AtiyahError {
    #[error("expected a 2-form structure, found degree {0}")]
    NotSymplectic(usize),
    #[error(transparent)]
    Plectic(#[from] PlecticError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

/// `s(v) + f` in the split frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtiyahSection {
    pub v: VectorField,
    pub f: RationalFunction,
}

impl AtiyahSection {
    pub fn new(v: VectorField, f: RationalFunction) -> Self {
        AtiyahSection { v, f }
    }

    pub fn lift(v: &VectorField) -> Self {
        AtiyahSection::new(v.clone(), v.chart().zero_fn())
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero() && self.f.is_zero()
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ExteriorError> {
        self.v.chart().ensure_same(other.v.chart())?;
        Ok(AtiyahSection::new(&self.v - &other.v, &self.f - &other.f))
    }
}

impl fmt::Display for AtiyahSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.v, self.f)
    }
}

impl Residual for AtiyahSection {
    fn is_zero_residual(&self) -> bool {
        self.is_zero()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtiyahPreservation {
    Yes,
    /// `df + ι_v ω`.
    No(DifferentialForm),
}

/// A closed nondegenerate 2-form.
#[derive(Clone, Debug)]
pub struct SymplecticModel {
    p: Arc<PlecticStructure>,
}

impl SymplecticModel {
    pub fn new(omega: DifferentialForm) -> Result<Self, AtiyahError> {
        if omega.degree() != 2 {
            return Err(AtiyahError::NotSymplectic(omega.degree()));
        }
        Ok(SymplecticModel {
            p: Arc::new(PlecticStructure::new(omega)?),
        })
    }

    pub fn from_plectic(p: &Arc<PlecticStructure>) -> Result<Self, AtiyahError> {
        if p.n() != 1 {
            return Err(AtiyahError::NotSymplectic(p.omega().degree()));
        }
        Ok(SymplecticModel { p: p.clone() })
    }

    pub fn structure(&self) -> &Arc<PlecticStructure> {
        &self.p
    }

    pub fn omega(&self) -> &DifferentialForm {
        self.p.omega()
    }

    /// The unique `v_f` with `df = −ι_{v_f} ω`.
    pub fn hamiltonian_vf(&self, f: &RationalFunction) -> Result<VectorField, AtiyahError> {
        let f = DifferentialForm::function(self.p.chart(), f.clone());
        Ok(self.p.hamiltonian_vf(&f)?)
    }

    /// `{f, g} = ω(v_f, v_g)`.
    pub fn poisson(&self, f: &RationalFunction, g: &RationalFunction) -> Result<RationalFunction, AtiyahError> {
        let (vf, vg) = (self.hamiltonian_vf(f)?, self.hamiltonian_vf(g)?);
        Ok(self.omega().eval(&[vf, vg])?)
    }

    /// `φ(f) = s(v_f) + f`.
    pub fn phi(&self, f: &RationalFunction) -> Result<AtiyahSection, AtiyahError> {
        Ok(AtiyahSection::new(self.hamiltonian_vf(f)?, f.clone()))
    }

    /// `[s v₁ + f₁, s v₂ + f₂] = s[v₁,v₂] + v₁(f₂) − v₂(f₁) − ω(v₁,v₂)`.
    pub fn bracket(&self, a1: &AtiyahSection, a2: &AtiyahSection) -> Result<AtiyahSection, AtiyahError> {
        let v = a1.v.bracket(&a2.v)?;
        let w = self.omega().eval(&[a1.v.clone(), a2.v.clone()])?;
        let f = &(&a1.v.apply(&a2.f) - &a2.v.apply(&a1.f)) - &w;
        Ok(AtiyahSection::new(v, f))
    }

    /// Yes iff `df + ι_v ω = 0`.
    pub fn preserves(&self, a: &AtiyahSection) -> Result<AtiyahPreservation, AtiyahError> {
        let df = DifferentialForm::function(self.p.chart(), a.f.clone()).d();
        let res = &df + &self.omega().iota(&a.v)?;
        Ok(if res.is_zero() {
            AtiyahPreservation::Yes
        } else {
            AtiyahPreservation::No(res)
        })
    }

    /// `c(v, w) = −ω(v, w)` at `x`.
    pub fn ks_cocycle(&self, x: &[Rational]) -> CECochain {
        let p = self.p.clone();
        let x = x.to_vec();
        CECochain::new(2, move |vs| {
            for v in vs {
                require_hamiltonian(&p, v)?;
            }
            let w = p.omega().eval(vs)?;
            Ok(-w.eval(&x)?)
        })
    }

    /// `δc = 0` on a Hamiltonian triple.
    pub fn ks_delta_check(&self, x: &[Rational], vs: [&VectorField; 3]) -> Result<Report, AtiyahError> {
        let c = self.ks_cocycle(x);
        let vs: Vec<VectorField> = vs.iter().map(|v| (*v).clone()).collect();
        for v in &vs {
            require_hamiltonian(&self.p, v)?;
        }
        let mut r = Report::new();
        r.push(Check::timed("ks-cocycle", "delta c = 0, c(v,w) = -w(v,w)|x", || {
            ce_delta(&self.p, &c, &vs)
        }));
        Ok(r)
    }

    /// Bracket preservation and the membership criterion for `f`, `g`.
    pub fn verify(&self, f: &RationalFunction, g: &RationalFunction) -> Result<Report, AtiyahError> {
        let (pf, pg) = (self.phi(f)?, self.phi(g)?);
        let mut r = Report::new();
        r.push(Check::timed("atiyah-morphism", "[phi f, phi g]_A = phi({f,g})", || {
            let lhs = self.bracket(&pf, &pg)?;
            let rhs = self.phi(&self.poisson(f, g)?)?;
            Ok::<_, AtiyahError>(lhs.sub(&rhs)?)
        }));
        r.push(Check::timed(
            "atiyah-preserves",
            "phi f and phi g preserve the splitting",
            || {
                let ok =
                    self.preserves(&pf)? == AtiyahPreservation::Yes && self.preserves(&pg)? == AtiyahPreservation::Yes;
                Ok::<_, AtiyahError>(ok)
            },
        ));
        r.push(Check::timed("poisson-skew", "{f,g} + {g,f} = 0", || {
            Ok::<_, AtiyahError>(&self.poisson(f, g)? + &self.poisson(g, f)?)
        }));
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::exterior::{dx, partial, Chart};

    fn model() -> SymplecticModel {
        SymplecticModel::new(DifferentialForm::basis(&Chart::r2_qp(), &[0, 1])).unwrap()
    }

    #[test]
    fn hamiltonian_fields() {
        let m = model();
        let c = m.structure().chart().clone();
        assert_eq!(m.hamiltonian_vf(&c.coord(0)).unwrap(), partial(&c, 1));
        assert_eq!(m.hamiltonian_vf(&c.coord(1)).unwrap(), partial(&c, 0).scale(&int(-1)));
        assert!(m.hamiltonian_vf(&c.one_fn()).unwrap().is_zero());
    }

    #[test]
    fn poisson_examples() {
        let m = model();
        let c = m.structure().chart().clone();
        let (q, p) = (c.coord(0), c.coord(1));
        assert_eq!(m.poisson(&q, &p).unwrap(), c.one_fn());
        assert!(m.poisson(&q, &q).unwrap().is_zero());
        assert_eq!(m.poisson(&q.pow(2), &p).unwrap(), q.scale(&int(2)));
    }

    #[test]
    fn bracket_examples() {
        let m = model();
        let c = m.structure().chart().clone();
        let (q, p) = (c.coord(0), c.coord(1));
        let b = m
            .bracket(
                &AtiyahSection::lift(&partial(&c, 0)),
                &AtiyahSection::lift(&partial(&c, 1)),
            )
            .unwrap();
        assert!(b.v.is_zero());
        assert_eq!(b.f, c.one_fn().scale(&int(-1)));
        let b = m.bracket(&m.phi(&q).unwrap(), &m.phi(&p).unwrap()).unwrap();
        assert!(b.v.is_zero());
        assert_eq!(b.f, c.one_fn());
        let a = m.phi(&(&q * &p)).unwrap();
        assert!(m.bracket(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn preservation_examples() {
        let m = model();
        let c = m.structure().chart().clone();
        assert_eq!(
            m.preserves(&m.phi(&c.coord(0)).unwrap()).unwrap(),
            AtiyahPreservation::Yes
        );
        assert_eq!(
            m.preserves(&AtiyahSection::lift(&partial(&c, 0))).unwrap(),
            AtiyahPreservation::No(dx(&c, 1))
        );
        let a = AtiyahSection::new(VectorField::zero(&c), c.one_fn().scale(&int(3)));
        assert_eq!(m.preserves(&a).unwrap(), AtiyahPreservation::Yes);
    }

    #[test]
    fn ks_examples() {
        let m = model();
        let c = m.structure().chart().clone();
        let (q, p) = (c.coord(0), c.coord(1));
        let (vq, vp, vqp) = (
            m.hamiltonian_vf(&q).unwrap(),
            m.hamiltonian_vf(&p).unwrap(),
            m.hamiltonian_vf(&(&q * &p)).unwrap(),
        );
        let x = [int(2), int(-1)];
        let k = m.ks_cocycle(&x);
        assert_eq!(k.eval(&[vq.clone(), vp.clone()]).unwrap(), int(-1));
        assert_eq!(k.eval(&[vq.clone(), vq.clone()]).unwrap(), int(0));
        assert!(m.ks_delta_check(&x, [&vq, &vp, &vqp]).unwrap().passed());
    }

    #[test]
    fn verify_report_passes() {
        let m = model();
        let c = m.structure().chart().clone();
        let (q, p) = (c.coord(0), c.coord(1));
        let r = m.verify(&(&q.pow(2) * &p), &(&p.pow(3) + &q)).unwrap();
        assert!(r.passed(), "{}", r.machine_text());
    }
}
