//! n-plectic structures, Hamiltonian forms, the semi-bracket and its Jacobiator.

use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{int, solve_linear, AlgebraError, RFMatrix, Rational, RationalFunction, SolveResult};
use crate::exterior::{Chart, DifferentialForm, ExteriorError, IndexSet, VectorField};
use crate::lie2::{Lie2Algebra, PlecticLie2};
use crate::report::{Check, Report};

#[derive(Debug, Clone, Error)]
pub enum PlecticError {
    #[error("structure form is not closed; d omega = {residual}")]
    NotClosed { residual: String },
    #[error("structure form must have degree at least 2, found {0}")]
    BadDegree(usize),
    #[error("structure is degenerate")]
    DegenerateStructure,
    #[error("form is not Hamiltonian; residual {residual}")]
    NotHamiltonian { residual: DifferentialForm },
    #[error("field has no Hamiltonian form; d(i_v omega) = {residual}")]
    NoPrimitive { residual: DifferentialForm },
    #[error("expected a form of degree {expected}, found degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Outcome of the nondegeneracy test for `v ↦ ι_v ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nondegeneracy {
    /// Some maximal minor (rows listed) is a nonzero constant.
    CertifiedEverywhere { rows: Vec<usize> },
    /// Full column rank over the function field; `minor` is a nonzero
    /// non-constant maximal minor on the listed rows.
    GenericOnly { rows: Vec<usize>, minor: RationalFunction },
    /// A point with a nonzero kernel vector.
    DegenerateAt {
        point: Vec<Rational>,
        kernel: Vec<Rational>,
    },
}

impl Nondegeneracy {
    pub fn is_degenerate(&self) -> bool {
        matches!(self, Nondegeneracy::DegenerateAt { .. })
    }
}

/// A closed `(n+1)`-form together with its nondegeneracy verdict.
#[derive(Clone, Debug)]
pub struct PlecticStructure {
    omega: DifferentialForm,
    n: usize,
    rows: Vec<IndexSet>,
    matrix: RFMatrix,
    verdict: Nondegeneracy,
}

/// `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Deterministic small rational sample points, origin first.
pub fn sample_points(dim: usize) -> Vec<Vec<Rational>> {
    let mut pts = vec![vec![Rational::zero(); dim]];
    for i in 0..dim {
        let mut p = vec![Rational::zero(); dim];
        p[i] = int(1);
        pts.push(p.clone());
        p[i] = int(-1);
        pts.push(p);
    }
    pts.push(vec![int(1); dim]);
    pts.push((0..dim).map(|i| int(i as i64 + 2)).collect());
    pts.push((0..dim).map(|i| int(if i % 2 == 0 { 3 } else { -2 })).collect());
    pts
}

const MINOR_SEARCH_LIMIT: usize = 5000;

impl PlecticStructure {
    pub fn new(omega: DifferentialForm) -> Result<Self, PlecticError> {
        if omega.degree() < 2 {
            return Err(PlecticError::BadDegree(omega.degree()));
        }
        let dw = omega.d();
        if !dw.is_zero() {
            return Err(PlecticError::NotClosed {
                residual: dw.to_string(),
            });
        }
        let n = omega.degree() - 1;
        let chart = omega.chart().clone();
        let dim = chart.dimension();
        let rows: Vec<IndexSet> = combinations(dim, n)
            .into_iter()
            .map(|c| c.into_iter().map(|i| i as u8).collect())
            .collect();
        let mut matrix = RFMatrix::zeros(chart.vars(), rows.len(), dim);
        for j in 0..dim {
            let col = omega.iota(&VectorField::basis(&chart, j))?;
            for (r, idx) in rows.iter().enumerate() {
                let ix: Vec<usize> = idx.iter().map(|&i| i as usize).collect();
                matrix.set(r, j, col.coefficient(&ix));
            }
        }
        let verdict = Self::classify(&chart, &matrix)?;
        Ok(PlecticStructure {
            omega,
            n,
            rows,
            matrix,
            verdict,
        })
    }

    fn classify(chart: &Chart, m: &RFMatrix) -> Result<Nondegeneracy, PlecticError> {
        let dim = chart.dimension();
        let zeros = vec![chart.zero_fn(); m.rows()];
        let generic = solve_linear(m, &zeros)?;
        if let Some(k) = generic.kernel().first() {
            for p in sample_points(dim) {
                let Ok(kv) = k.iter().map(|c| c.eval(&p)).collect::<Result<Vec<_>, _>>() else {
                    continue;
                };
                if kv.iter().any(|c| !c.is_zero()) {
                    return Ok(Nondegeneracy::DegenerateAt { point: p, kernel: kv });
                }
            }
        }
        let live: Vec<usize> = (0..m.rows())
            .filter(|&r| m.row(r).iter().any(|e| !e.is_zero()))
            .collect();
        let mut witness = None;
        for (count, subset) in combinations(live.len(), dim).into_iter().enumerate() {
            if count >= MINOR_SEARCH_LIMIT {
                break;
            }
            let rows: Vec<usize> = subset.iter().map(|&i| live[i]).collect();
            let det = m.select_rows(&rows).determinant()?;
            if det.is_zero() {
                continue;
            }
            if det.is_constant() {
                return Ok(Nondegeneracy::CertifiedEverywhere { rows });
            }
            if witness.is_none() {
                witness = Some((rows, det));
            }
        }
        for p in sample_points(dim) {
            let Ok(mp) = m.eval(&p) else { continue };
            let z = vec![chart.zero_fn(); m.rows()];
            if let Some(k) = solve_linear(&mp, &z)?.kernel().first() {
                let kv = k.iter().map(|c| c.eval(&p)).collect::<Result<Vec<_>, _>>()?;
                return Ok(Nondegeneracy::DegenerateAt { point: p, kernel: kv });
            }
        }
        match witness {
            Some((rows, minor)) => Ok(Nondegeneracy::GenericOnly { rows, minor }),
            // unreachable when the generic kernel is trivial; report the origin
            None => Ok(Nondegeneracy::DegenerateAt {
                point: vec![Rational::zero(); dim],
                kernel: vec![Rational::zero(); dim],
            }),
        }
    }

    pub fn chart(&self) -> &Chart {
        self.omega.chart()
    }

    pub fn omega(&self) -> &DifferentialForm {
        &self.omega
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn check_nondegenerate(&self) -> &Nondegeneracy {
        &self.verdict
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.verdict.is_degenerate()
    }

    /// Matrix of `v ↦ ι_v ω`: rows are increasing `n`-tuples, columns `∂ⱼ`.
    pub fn contraction_matrix(&self) -> &RFMatrix {
        &self.matrix
    }

    fn require_nondegenerate(&self) -> Result<(), PlecticError> {
        if self.verdict.is_degenerate() {
            Err(PlecticError::DegenerateStructure)
        } else {
            Ok(())
        }
    }

    fn column_of(&self, form: &DifferentialForm) -> Vec<RationalFunction> {
        self.rows
            .iter()
            .map(|idx| {
                let ix: Vec<usize> = idx.iter().map(|&i| i as usize).collect();
                form.coefficient(&ix)
            })
            .collect()
    }

    fn field_from(&self, comps: &[RationalFunction]) -> Result<VectorField, PlecticError> {
        Ok(VectorField::from_components(self.chart(), comps.to_vec())?)
    }

    /// The unique `v` with `dα = −ι_v ω`.
    pub fn hamiltonian_vf(&self, alpha: &DifferentialForm) -> Result<VectorField, PlecticError> {
        self.require_nondegenerate()?;
        if alpha.degree() + 1 != self.n {
            return Err(PlecticError::DegreeMismatch {
                expected: self.n - 1,
                found: alpha.degree(),
            });
        }
        self.chart().ensure_same(alpha.chart())?;
        let da = alpha.d();
        if da.is_zero() {
            return Ok(VectorField::zero(self.chart()));
        }
        let b: Vec<RationalFunction> = self.column_of(&da).iter().map(|c| -c).collect();
        match solve_linear(&self.matrix, &b)? {
            SolveResult::Unique(x) => self.field_from(&x),
            SolveResult::Affine { particular, .. } => self.field_from(&particular),
            SolveResult::Inconsistent { independent_rows } => {
                let sub = self.matrix.select_rows(&independent_rows);
                let sb: Vec<RationalFunction> = independent_rows.iter().map(|&r| b[r].clone()).collect();
                let guess = match solve_linear(&sub, &sb)?.particular() {
                    Some(x) => self.field_from(x)?,
                    None => VectorField::zero(self.chart()),
                };
                let residual = &da + &self.omega.iota(&guess)?;
                Err(PlecticError::NotHamiltonian { residual })
            }
        }
    }

    pub fn is_hamiltonian(&self, alpha: &DifferentialForm) -> bool {
        self.hamiltonian_vf(alpha).is_ok()
    }

    pub fn hamiltonian_pair(&self, alpha: &DifferentialForm) -> Result<HamiltonianPair, PlecticError> {
        let v = self.hamiltonian_vf(alpha)?;
        Ok(HamiltonianPair {
            alpha: alpha.clone(),
            v,
        })
    }

    /// Some `α` with `dα = −ι_v ω`, via the radial homotopy operator.
    pub fn hamiltonian_form_of(&self, v: &VectorField) -> Result<DifferentialForm, PlecticError> {
        let target = -self.omega.iota(v)?;
        let dt = target.d();
        if !dt.is_zero() {
            return Err(PlecticError::NoPrimitive { residual: -dt });
        }
        if target.is_zero() {
            return Ok(DifferentialForm::zero(self.chart(), self.n - 1));
        }
        Ok(target.poincare_potential()?)
    }

    /// `{α, β} = ι_{v_β} ι_{v_α} ω`.
    pub fn semi_bracket(&self, a: &DifferentialForm, b: &DifferentialForm) -> Result<DifferentialForm, PlecticError> {
        let va = self.hamiltonian_vf(a)?;
        let vb = self.hamiltonian_vf(b)?;
        Ok(self.omega.iota(&va)?.iota(&vb)?)
    }

    /// `J(α, β, γ) = ι_{v_α} ι_{v_β} ι_{v_γ} ω = ω(v_γ, v_β, v_α)`.
    pub fn jacobiator(
        &self,
        a: &DifferentialForm,
        b: &DifferentialForm,
        c: &DifferentialForm,
    ) -> Result<DifferentialForm, PlecticError> {
        let (va, vb, vc) = (
            self.hamiltonian_vf(a)?,
            self.hamiltonian_vf(b)?,
            self.hamiltonian_vf(c)?,
        );
        Ok(self.omega.iota(&vc)?.iota(&vb)?.iota(&va)?)
    }

    /// The three semi-bracket laws: Hamiltonian closure, skew-symmetry, and
    /// Jacobi up to the exact term `d J`.
    pub fn verify_semi_bracket_laws(
        &self,
        a: &DifferentialForm,
        b: &DifferentialForm,
        c: &DifferentialForm,
    ) -> Result<Report, PlecticError> {
        let va = self.hamiltonian_vf(a)?;
        let vb = self.hamiltonian_vf(b)?;
        let mut r = Report::new();
        r.push(Check::timed("bracket-hamiltonian", "d{a,b} = -i_[va,vb] w", || {
            let ab = self.semi_bracket(a, b)?;
            Ok::<_, PlecticError>(&ab.d() + &self.omega.iota(&va.bracket(&vb)?)?)
        }));
        r.push(Check::timed("bracket-skew", "{a,b} = -{b,a}", || {
            Ok::<_, PlecticError>(&self.semi_bracket(a, b)? + &self.semi_bracket(b, a)?)
        }));
        r.push(Check::timed(
            "bracket-jacobi",
            "{a,{b,c}} - {{a,b},c} - {b,{a,c}} = d J(a,b,c)",
            || {
                let bc = self.semi_bracket(b, c)?;
                let ab = self.semi_bracket(a, b)?;
                let ac = self.semi_bracket(a, c)?;
                let lhs = &(&self.semi_bracket(a, &bc)? - &self.semi_bracket(&ab, c)?) - &self.semi_bracket(b, &ac)?;
                Ok::<_, PlecticError>(&lhs - &self.jacobiator(a, b, c)?.d())
            },
        ));
        Ok(r)
    }

    /// The three calculus identities behind the embedding into the Courant Lie 2-algebra.
    pub fn verify_calculus_identities(
        &self,
        a: &DifferentialForm,
        b: &DifferentialForm,
        c: &DifferentialForm,
    ) -> Result<Report, PlecticError> {
        let pa = self.hamiltonian_pair(a)?;
        let pb = self.hamiltonian_pair(b)?;
        let pc = self.hamiltonian_pair(c)?;
        let w = &self.omega;
        let mut r = Report::new();
        r.push(Check::timed("lie-derivative", "L_va b = {a,b} + d i_va b", || {
            let lhs = b.lie_derivative(&pa.v)?;
            let rhs = &self.semi_bracket(a, b)? + &b.iota(&pa.v)?.d();
            Ok::<_, PlecticError>(&lhs - &rhs)
        }));
        r.push(Check::timed(
            "cyclic-contraction",
            "i_[va,vb] c + cyc = -3 i_va i_vb i_vc w + i_va d<b,c>_- + i_vc d<a,b>_- + i_vb d<c,a>_-",
            || {
                let lhs = &(&c.iota(&pa.v.bracket(&pb.v)?)? + &a.iota(&pb.v.bracket(&pc.v)?)?)
                    + &b.iota(&pc.v.bracket(&pa.v)?)?;
                let j = w.iota(&pc.v)?.iota(&pb.v)?.iota(&pa.v)?;
                let t1 = pb.pairing_minus(&pc)?.d().iota(&pa.v)?;
                let t2 = pa.pairing_minus(&pb)?.d().iota(&pc.v)?;
                let t3 = pc.pairing_minus(&pa)?.d().iota(&pb.v)?;
                let rhs = &(&(&j.scale(&int(-3)) + &t1) + &t2) + &t3;
                Ok::<_, PlecticError>(&lhs - &rhs)
            },
        ));
        r.push(Check::timed(
            "lie-derivative-skew",
            "L_va b - L_vb a = 2{a,b} + d<a,b>_-",
            || {
                let lhs = &b.lie_derivative(&pa.v)? - &a.lie_derivative(&pb.v)?;
                let rhs = &self.semi_bracket(a, b)?.scale(&int(2)) + &pa.pairing_minus(&pb)?.d();
                Ok::<_, PlecticError>(&lhs - &rhs)
            },
        ));
        Ok(r)
    }

    /// The Lie 2-algebra of Hamiltonian 1-forms and functions.
    pub fn lie2(self: &Arc<Self>) -> Result<Arc<dyn Lie2Algebra>, PlecticError> {
        lie2_of_plectic(self)
    }
}

pub fn lie2_of_plectic(p: &Arc<PlecticStructure>) -> Result<Arc<dyn Lie2Algebra>, PlecticError> {
    if p.n != 2 {
        return Err(PlecticError::BadDegree(p.omega.degree()));
    }
    p.require_nondegenerate()?;
    Ok(Arc::new(PlecticLie2::new(p.clone())))
}

/// A Hamiltonian form with its Hamiltonian vector field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonianPair {
    pub alpha: DifferentialForm,
    pub v: VectorField,
}

impl HamiltonianPair {
    /// `⟨v₁+α₁, v₂+α₂⟩₋ = ι_{v₁}α₂ − ι_{v₂}α₁`.
    pub fn pairing_minus(&self, other: &HamiltonianPair) -> Result<DifferentialForm, ExteriorError> {
        Ok(&other.alpha.iota(&self.v)? - &self.alpha.iota(&other.v)?)
    }

    /// Residual `dα + ι_v ω`, zero for a genuine pair.
    pub fn defect(&self, p: &PlecticStructure) -> Result<DifferentialForm, ExteriorError> {
        Ok(&self.alpha.d() + &p.omega.iota(&self.v)?)
    }
}
