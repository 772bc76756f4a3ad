//! Chevalley–Eilenberg cochains on Hamiltonian vector fields, the pointwise
//! Jacobiator 3-cocycle, the path 2-cochain and the bu(1) witnesses.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{AlgebraError, Rational};
use crate::exterior::{DifferentialForm, ExteriorError, VectorField};
use crate::lie2::EvMorphism;
use crate::plectic::{PlecticError, PlecticStructure};
use crate::report::{Check, Report};

#[derive(Debug, Clone, Error)]
pub enum ExtensionError {
    #[error("vector field is not Hamiltonian; d(i_v omega) = {residual}")]
    NotHamiltonian { residual: DifferentialForm },
    #[error("cochain of arity {arity} needs {expected} arguments, found {found}")]
    ArityMismatch {
        arity: usize,
        expected: usize,
        found: usize,
    },
    #[error("form is not closed; d of it is {residual}")]
    NotClosed { residual: DifferentialForm },
    #[error("point has {found} coordinates, chart has {expected}")]
    PointMismatch { expected: usize, found: usize },
    #[error("line integral requires polynomial coefficients")]
    NonPolynomial,
    #[error(transparent)]
    Plectic(#[from] PlecticError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

type Evaluator = dyn Fn(&[VectorField]) -> Result<Rational, ExtensionError> + Send + Sync;

/// A real-valued alternating `k`-cochain on Hamiltonian vector fields.
#[derive(Clone)]
pub struct CECochain {
    arity: usize,
    eval: Arc<Evaluator>,
}

impl CECochain {
    pub fn new<F>(arity: usize, f: F) -> Self
    where
        F: Fn(&[VectorField]) -> Result<Rational, ExtensionError> + Send + Sync + 'static,
    {
        CECochain {
            arity,
            eval: Arc::new(f),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn eval(&self, vs: &[VectorField]) -> Result<Rational, ExtensionError> {
        if vs.len() != self.arity {
            return Err(ExtensionError::ArityMismatch {
                arity: self.arity,
                expected: self.arity,
                found: vs.len(),
            });
        }
        (self.eval)(vs)
    }

    /// Sum of `c(σv) + c(v)` over adjacent transpositions `σ`; zero for an
    /// alternating cochain.
    pub fn antisymmetry_defect(&self, vs: &[VectorField]) -> Result<Rational, ExtensionError> {
        let base = self.eval(vs)?;
        let mut total = Rational::zero();
        for i in 0..vs.len().saturating_sub(1) {
            let mut sw = vs.to_vec();
            sw.swap(i, i + 1);
            let s = &self.eval(&sw)? + &base;
            total += if s.is_zero() { s } else { abs(s) };
        }
        Ok(total)
    }
}

fn abs(r: Rational) -> Rational {
    if r < Rational::zero() {
        -r
    } else {
        r
    }
}

impl fmt::Debug for CECochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CECochain[arity {}]", self.arity)
    }
}

/// A straight segment from `start` to `end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSegment {
    pub start: Vec<Rational>,
    pub end: Vec<Rational>,
}

impl PathSegment {
    pub fn new(start: Vec<Rational>, end: Vec<Rational>) -> Self {
        PathSegment { start, end }
    }
}

fn check_point(p: &PlecticStructure, x: &[Rational]) -> Result<(), ExtensionError> {
    let n = p.chart().dimension();
    if x.len() != n {
        return Err(ExtensionError::PointMismatch {
            expected: n,
            found: x.len(),
        });
    }
    Ok(())
}

/// Errors unless `ι_v ω` is closed, i.e. `v` is locally Hamiltonian; on
/// ℝⁿ this is the same as Hamiltonian.
pub fn require_hamiltonian(p: &PlecticStructure, v: &VectorField) -> Result<(), ExtensionError> {
    p.chart().ensure_same(v.chart())?;
    let residual = p.omega().iota(v)?.d();
    if residual.is_zero() {
        Ok(())
    } else {
        Err(ExtensionError::NotHamiltonian { residual })
    }
}

/// `J_x(v₁,v₂,v₃) = ι_{v₁}ι_{v₂}ι_{v₃}ω` at `x`.
#[allow(non_snake_case)]
pub fn Jx(p: &Arc<PlecticStructure>, x: &[Rational]) -> Result<CECochain, ExtensionError> {
    check_point(p, x)?;
    let p = p.clone();
    let x = x.to_vec();
    Ok(CECochain::new(3, move |vs| {
        let f = p.omega().iota(&vs[2])?.iota(&vs[1])?.iota(&vs[0])?;
        let f = f.as_function().expect("0-form");
        Ok(f.eval(&x)?)
    }))
}

/// `(δc)(v₁,…,v_{k+1}) = Σ_{i<j} (−1)^{i+j} c([vᵢ,vⱼ], v₁,…,v̂ᵢ,…,v̂ⱼ,…)`.
pub fn ce_delta(p: &PlecticStructure, c: &CECochain, vs: &[VectorField]) -> Result<Rational, ExtensionError> {
    let k = c.arity();
    if vs.len() != k + 1 {
        return Err(ExtensionError::ArityMismatch {
            arity: k,
            expected: k + 1,
            found: vs.len(),
        });
    }
    for v in vs {
        require_hamiltonian(p, v)?;
    }
    let mut total = Rational::zero();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let mut args = Vec::with_capacity(k);
            args.push(vs[i].bracket(&vs[j])?);
            args.extend(
                vs.iter()
                    .enumerate()
                    .filter(|&(l, _)| l != i && l != j)
                    .map(|(_, v)| v.clone()),
            );
            let term = c.eval(&args)?;
            // 1-based indices give (−1)^{(i+1)+(j+1)} = (−1)^{i+j}.
            if (i + j) % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    Ok(total)
}

/// Exact `∫_Γ β` for a polynomial 1-form `β` along a straight segment.
pub fn line_integral(beta: &DifferentialForm, seg: &PathSegment) -> Result<Rational, ExtensionError> {
    if beta.degree() != 1 {
        return Err(ExteriorError::DegreeMismatch {
            expected: 1,
            found: beta.degree(),
        }
        .into());
    }
    let n = beta.chart().dimension();
    for pt in [&seg.start, &seg.end] {
        if pt.len() != n {
            return Err(ExtensionError::PointMismatch {
                expected: n,
                found: pt.len(),
            });
        }
    }
    let mut total = Rational::zero();
    for i in 0..n {
        let delta = &seg.end[i] - &seg.start[i];
        if delta.is_zero() {
            continue;
        }
        let coef = beta.coefficient(&[i]);
        let poly = coef.as_polynomial().ok_or(ExtensionError::NonPolynomial)?;
        let ts = poly.restrict_to_segment(&seg.start, &seg.end)?;
        let integral: Rational = ts
            .iter()
            .enumerate()
            .map(|(e, c)| c / Rational::from_integer((e as i64 + 1).into()))
            .sum();
        total += integral * delta;
    }
    Ok(total)
}

/// `c(v, w) = ∫_Γ ω(v, w, ·)` along the segment.
pub fn path_cochain(p: &Arc<PlecticStructure>, seg: &PathSegment) -> Result<CECochain, ExtensionError> {
    check_point(p, &seg.start)?;
    check_point(p, &seg.end)?;
    let p = p.clone();
    let seg = seg.clone();
    Ok(CECochain::new(2, move |vs| {
        let beta = p.omega().iota(&vs[0])?.iota(&vs[1])?;
        line_integral(&beta, &seg)
    }))
}

/// Checks `J_y − J_x = δc` with `c` the path cochain from `x` to `y`.
pub fn verify_coboundary_relation(
    p: &Arc<PlecticStructure>,
    x: &[Rational],
    y: &[Rational],
    vs: [&VectorField; 3],
) -> Result<Report, ExtensionError> {
    let vs: Vec<VectorField> = vs.iter().map(|v| (*v).clone()).collect();
    for v in &vs {
        require_hamiltonian(p, v)?;
    }
    let jx = Jx(p, x)?;
    let jy = Jx(p, y)?;
    let c = path_cochain(p, &PathSegment::new(x.to_vec(), y.to_vec()))?;
    let mut r = Report::new();
    r.push(Check::timed(
        "coboundary",
        "J_y - J_x = delta c, c = integral of w(v,w,.) from x to y",
        || Ok::<_, ExtensionError>(&(&jy.eval(&vs)? - &jx.eval(&vs)?) - &ce_delta(p, &c, &vs)?),
    ));
    Ok(r)
}

/// Checks `δJ_x = 0` on four Hamiltonian fields.
pub fn verify_jx_cocycle(
    p: &Arc<PlecticStructure>,
    x: &[Rational],
    vs: [&VectorField; 4],
) -> Result<Report, ExtensionError> {
    let vs: Vec<VectorField> = vs.iter().map(|v| (*v).clone()).collect();
    let jx = Jx(p, x)?;
    let mut r = Report::new();
    r.push(Check::timed("jx-cocycle", "delta J_x = 0", || ce_delta(p, &jx, &vs)));
    r.push(Check::timed(
        "jx-alternating",
        "J_x changes sign under transpositions",
        || jx.antisymmetry_defect(&vs[..3]),
    ));
    Ok(r)
}

/// `(φ₀ = p, φ₁ = ev_x, Φ = 0)`.
pub fn ev_morphism(p: &Arc<PlecticStructure>, x: &[Rational]) -> Result<EvMorphism, ExtensionError> {
    check_point(p, x)?;
    Ok(EvMorphism::new(p, x.to_vec()))
}

/// `{α, β} = 0` whenever `α` is closed.
pub fn centrality_check(
    p: &PlecticStructure,
    alpha: &DifferentialForm,
    beta: &DifferentialForm,
) -> Result<Report, ExtensionError> {
    let da = alpha.d();
    if !da.is_zero() {
        return Err(ExtensionError::NotClosed { residual: da });
    }
    let mut r = Report::new();
    r.push(Check::timed("central-left", "{a,b} = 0 for closed a", || {
        p.semi_bracket(alpha, beta)
    }));
    r.push(Check::timed("central-right", "{b,a} = 0 for closed a", || {
        p.semi_bracket(beta, alpha)
    }));
    Ok(r)
}

/// A closed 1-form lies in `ker p` and is exact; returns the report and
/// the potential `f` with `df = α`.
pub fn bu1_witness(
    p: &PlecticStructure,
    alpha: &DifferentialForm,
) -> Result<(Report, DifferentialForm), ExtensionError> {
    let da = alpha.d();
    if !da.is_zero() {
        return Err(ExtensionError::NotClosed { residual: da });
    }
    let f = if alpha.is_zero() {
        DifferentialForm::zero(alpha.chart(), 0)
    } else {
        alpha.poincare_potential()?
    };
    let mut r = Report::new();
    r.push(Check::timed("bu1-kernel", "v_a = 0 for closed a", || {
        p.hamiltonian_vf(alpha)
    }));
    r.push(Check::timed("bu1-exact", "a = df", || {
        Ok::<_, ExtensionError>(alpha - &f.d())
    }));
    Ok((r, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use crate::exterior::{dx, partial, Chart};

    fn std3() -> Arc<PlecticStructure> {
        Arc::new(PlecticStructure::new(DifferentialForm::basis(&Chart::r3(), &[0, 1, 2])).unwrap())
    }

    fn origin() -> Vec<Rational> {
        vec![int(0); 3]
    }

    fn rot(c: &Chart, i: usize, j: usize) -> VectorField {
        // x_i ∂_j − x_j ∂_i
        &partial(c, j).mul_fn(&c.coord(i)) - &partial(c, i).mul_fn(&c.coord(j))
    }

    #[test]
    fn jx_examples() {
        let p = std3();
        let c = p.chart().clone();
        let j = Jx(&p, &origin()).unwrap();
        let neg = |i| partial(&c, i).scale(&int(-1));
        assert_eq!(j.eval(&[neg(2), neg(0), neg(1)]).unwrap(), int(1));
        assert_eq!(
            j.eval(&[partial(&c, 0), partial(&c, 1), partial(&c, 2)]).unwrap(),
            int(-1)
        );
        assert_eq!(
            j.eval(&[partial(&c, 0), partial(&c, 0), partial(&c, 2)]).unwrap(),
            int(0)
        );
    }

    #[test]
    fn delta_of_two_cochain_expands() {
        let p = std3();
        let c = p.chart().clone();
        let seg = PathSegment::new(origin(), vec![int(1), int(2), int(-1)]);
        let pc = path_cochain(&p, &seg).unwrap();
        let vs = [rot(&c, 0, 1), rot(&c, 1, 2), partial(&c, 0)];
        let b = |a: &VectorField, b: &VectorField| a.bracket(b).unwrap();
        let expect = -pc.eval(&[b(&vs[0], &vs[1]), vs[2].clone()]).unwrap()
            + pc.eval(&[b(&vs[0], &vs[2]), vs[1].clone()]).unwrap()
            - pc.eval(&[b(&vs[1], &vs[2]), vs[0].clone()]).unwrap();
        assert_eq!(ce_delta(&p, &pc, &vs).unwrap(), expect);
    }

    #[test]
    fn jx_is_cocycle_on_rotations() {
        let p = std3();
        let c = p.chart().clone();
        let (a, b, e, t) = (rot(&c, 0, 1), rot(&c, 1, 2), rot(&c, 2, 0), partial(&c, 1));
        let r = verify_jx_cocycle(&p, &[int(1), int(-2), rat(1, 3)], [&a, &b, &e, &t]).unwrap();
        assert!(r.passed(), "{}", r.machine_text());
    }

    #[test]
    fn path_cochain_examples() {
        let p = std3();
        let c = p.chart().clone();
        let seg = PathSegment::new(origin(), vec![int(1), int(0), int(0)]);
        let pc = path_cochain(&p, &seg).unwrap();
        assert_eq!(pc.eval(&[partial(&c, 1), partial(&c, 2)]).unwrap(), int(1));
        assert_eq!(pc.eval(&[partial(&c, 1), partial(&c, 1)]).unwrap(), int(0));
        let zero = path_cochain(&p, &PathSegment::new(origin(), origin())).unwrap();
        assert_eq!(zero.eval(&[rot(&c, 0, 1), partial(&c, 2)]).unwrap(), int(0));
    }

    #[test]
    fn coboundary_relation_rotations() {
        let p = std3();
        let c = p.chart().clone();
        let (a, b, e) = (rot(&c, 0, 1), rot(&c, 1, 2), rot(&c, 2, 0));
        for y in [vec![int(1), int(0), int(0)], vec![rat(1, 2), int(-3), int(2)]] {
            let r = verify_coboundary_relation(&p, &origin(), &y, [&a, &b, &e]).unwrap();
            assert!(r.passed(), "{}", r.machine_text());
        }
        let r = verify_coboundary_relation(&p, &origin(), &origin(), [&a, &b, &e]).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn non_hamiltonian_rejected() {
        let p = std3();
        let c = p.chart().clone();
        let v = partial(&c, 0).mul_fn(&c.coord(0));
        let j = Jx(&p, &origin()).unwrap();
        let err = ce_delta(&p, &j, &[v.clone(), v.clone(), v.clone(), v]).unwrap_err();
        assert!(matches!(err, ExtensionError::NotHamiltonian { .. }));
    }

    #[test]
    fn centrality_and_bu1() {
        let p = std3();
        let c = p.chart().clone();
        let (x, y) = (c.coord(0), c.coord(1));
        let alpha = &dx(&c, 0).mul_fn(&y) + &dx(&c, 1).mul_fn(&x);
        let beta = dx(&c, 1).mul_fn(&x);
        assert!(centrality_check(&p, &alpha, &beta).unwrap().passed());
        let (r, f) = bu1_witness(&p, &alpha).unwrap();
        assert!(r.passed());
        assert_eq!(f.as_function().unwrap(), &x * &y);
        assert!(matches!(bu1_witness(&p, &beta), Err(ExtensionError::NotClosed { .. })));
    }
}
