//! Trivialization and Deligne-cocycle data on axis-aligned box covers.
//!
//! Circle-valued transition functions are stored as polynomial exponents
//! `h` with `g = exp(2πi h)`, so `g⁻¹dg` becomes `dh` up to the common
//! factor. Residuals are printed as `rhs − lhs` of each identity.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{fmt_rational, Rational, RationalFunction};
use crate::atiyah::AtiyahSection;
use crate::courant::{CourantError, GeneralizedSection, SplitCourantModel, SplittingShift};
use crate::exterior::{Chart, DifferentialForm, ExteriorError};
use crate::report::{Check, Report, Residual};

#[derive(Debug, Clone, Error)]
pub enum CocycleError {
    #[error("box {0} is empty or has the wrong dimension")]
    BadBox(usize),
    #[error("boxes {0:?} have no common open overlap")]
    EmptyOverlap(Vec<usize>),
    #[error("box index {0} out of range")]
    UnknownBox(usize),
    #[error("expected {expected} local forms, found {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("transition data and sections are of different kinds")]
    KindMismatch,
    #[error(transparent)]
    Courant(#[from] CourantError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

/// How transition exponents combine on triple overlaps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    /// ℝ-valued: the alternating sum vanishes.
    #[default]
    Real,
    /// U(1)-valued: the alternating sum is a constant integer.
    Circle,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Real => "real",
            Mode::Circle => "circle",
        })
    }
}

/// An open box `∏ (loₖ, hiₖ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenBox {
    pub lo: Vec<Rational>,
    pub hi: Vec<Rational>,
}

impl OpenBox {
    pub fn new(lo: Vec<Rational>, hi: Vec<Rational>) -> Self {
        OpenBox { lo, hi }
    }

    fn is_valid(&self, dim: usize) -> bool {
        self.lo.len() == dim && self.hi.len() == dim && self.lo.iter().zip(&self.hi).all(|(a, b)| a < b)
    }
}

impl fmt::Display for OpenBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (a, b)) in self.lo.iter().zip(&self.hi).enumerate() {
            if k > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "({}, {})", fmt_rational(a), fmt_rational(b))?;
        }
        Ok(())
    }
}

/// A cover of a region of the chart by open boxes, with every nonempty
/// overlap of two to four boxes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxCover {
    chart: Chart,
    boxes: Vec<OpenBox>,
    mode: Mode,
}

impl BoxCover {
    pub fn new(chart: &Chart, boxes: Vec<OpenBox>, mode: Mode) -> Result<Self, CocycleError> {
        for (i, b) in boxes.iter().enumerate() {
            if !b.is_valid(chart.dimension()) {
                return Err(CocycleError::BadBox(i));
            }
        }
        Ok(BoxCover {
            chart: chart.clone(),
            boxes,
            mode,
        })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn boxes(&self) -> &[OpenBox] {
        &self.boxes
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    /// The common open overlap of the given boxes, if nonempty.
    pub fn overlap(&self, idx: &[usize]) -> Option<OpenBox> {
        if idx.is_empty() || idx.iter().any(|&i| i >= self.boxes.len()) {
            return None;
        }
        let dim = self.chart.dimension();
        let mut lo = Vec::with_capacity(dim);
        let mut hi = Vec::with_capacity(dim);
        for k in 0..dim {
            let l = idx.iter().map(|&i| &self.boxes[i].lo[k]).max()?;
            let h = idx.iter().map(|&i| &self.boxes[i].hi[k]).min()?;
            if l >= h {
                return None;
            }
            lo.push(l.clone());
            hi.push(h.clone());
        }
        Some(OpenBox::new(lo, hi))
    }

    /// Increasing index tuples of length `k` with a nonempty overlap.
    pub fn overlaps(&self, k: usize) -> Vec<Vec<usize>> {
        crate::plectic::combinations(self.boxes.len(), k)
            .into_iter()
            .filter(|t| self.overlap(t).is_some())
            .collect()
    }

    fn require_overlap(&self, idx: &[usize]) -> Result<(), CocycleError> {
        if let Some(&i) = idx.iter().find(|&&i| i >= self.boxes.len()) {
            return Err(CocycleError::UnknownBox(i));
        }
        if self.overlap(idx).is_none() {
            return Err(CocycleError::EmptyOverlap(idx.to_vec()));
        }
        Ok(())
    }
}

/// `θᵢ` per box and exponents `hᵢⱼ` (`i < j`) per overlap.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalData1 {
    pub theta: Vec<DifferentialForm>,
    pub h: BTreeMap<(usize, usize), RationalFunction>,
}

/// `Bᵢ` per box, `Aᵢⱼ` per overlap and exponents `hᵢⱼₖ` per triple overlap.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalData2 {
    pub b: Vec<DifferentialForm>,
    pub a: BTreeMap<(usize, usize), DifferentialForm>,
    pub h: BTreeMap<(usize, usize, usize), RationalFunction>,
}

fn tag(idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Residual of an integrality condition: the non-constant function, or
/// the fractional part of a constant.
struct Integrality(RationalFunction);

impl Residual for Integrality {
    fn is_zero_residual(&self) -> bool {
        self.0.as_constant().is_some_and(|c| c.is_integer())
    }
    fn render(&self) -> String {
        match self.0.as_constant() {
            Some(c) => format!("frac {}", fmt_rational(&(&c - c.floor()))),
            None => self.0.to_string(),
        }
    }
}

fn missing(what: &str, idx: &[usize]) -> String {
    format!("missing {what}{}", tag(idx))
}

fn fn_form(chart: &Chart, f: &RationalFunction) -> DifferentialForm {
    DifferentialForm::function(chart, f.clone())
}

/// Pushes the alternating-sum check `δh` on the given tuple.
fn push_delta(r: &mut Report, id: String, anchor: &str, mode: Mode, delta: RationalFunction) {
    match mode {
        Mode::Real => r.push(Check::from_residual(id, anchor, &delta)),
        Mode::Circle => r.push(Check::from_residual(id, format!("{anchor} in Z"), &Integrality(delta))),
    }
}

fn check_count(cover: &BoxCover, found: usize) -> Result<(), CocycleError> {
    if found != cover.len() {
        return Err(CocycleError::WrongCount {
            expected: cover.len(),
            found,
        });
    }
    Ok(())
}

fn check_keys<'a, I>(cover: &BoxCover, keys: I) -> Result<(), CocycleError>
where
    I: Iterator<Item = Vec<usize>> + 'a,
{
    for k in keys {
        cover.require_overlap(&k)?;
    }
    Ok(())
}

/// `ω = dθᵢ`, `θⱼ − θᵢ = dhᵢⱼ`, and the triple-overlap condition on `h`.
pub fn verify_triv_2form(
    cover: &BoxCover,
    omega: &DifferentialForm,
    data: &LocalData1,
) -> Result<Report, CocycleError> {
    check_count(cover, data.theta.len())?;
    check_keys(cover, data.h.keys().map(|&(i, j)| vec![i, j]))?;
    let chart = cover.chart();
    let mut r = Report::new();
    for (i, t) in data.theta.iter().enumerate() {
        r.push(Check::timed(
            &format!("potential{}", tag(&[i])),
            "w = d theta_i",
            || t.d().try_sub(omega),
        ));
    }
    for ij in cover.overlaps(2) {
        let (i, j) = (ij[0], ij[1]);
        let id = format!("transition{}", tag(&ij));
        let anchor = "theta_j - theta_i = dh_ij";
        match data.h.get(&(i, j)) {
            Some(h) => r.push(Check::timed(&id, anchor, || {
                fn_form(chart, h).d().try_sub(&data.theta[j].try_sub(&data.theta[i])?)
            })),
            None => r.push(Check::failed(id, anchor, missing("h", &ij))),
        }
    }
    for ijk in cover.overlaps(3) {
        let (i, j, k) = (ijk[0], ijk[1], ijk[2]);
        let id = format!("cocycle{}", tag(&ijk));
        let anchor = "h_jk - h_ik + h_ij";
        match (data.h.get(&(j, k)), data.h.get(&(i, k)), data.h.get(&(i, j))) {
            (Some(a), Some(b), Some(c)) => push_delta(&mut r, id, anchor, cover.mode(), &(a - b) + c),
            _ => r.push(Check::failed(id, anchor, missing("h on a face of ", &ijk))),
        }
    }
    Ok(r)
}

/// `ω = dBᵢ`, `Bⱼ − Bᵢ = dAᵢⱼ`, `Aⱼₖ − Aᵢₖ + Aᵢⱼ = dhᵢⱼₖ`, the
/// quadruple-overlap condition on `h`, and agreement of the curvature of
/// the splittings shifted by `Bᵢ` and `Bⱼ`.
pub fn verify_triv_3form(
    cover: &BoxCover,
    omega: &DifferentialForm,
    data: &LocalData2,
) -> Result<Report, CocycleError> {
    check_count(cover, data.b.len())?;
    check_keys(cover, data.a.keys().map(|&(i, j)| vec![i, j]))?;
    check_keys(cover, data.h.keys().map(|&(i, j, k)| vec![i, j, k]))?;
    let chart = cover.chart();
    let flat = SplitCourantModel::standard(chart);
    let mut r = Report::new();
    for (i, b) in data.b.iter().enumerate() {
        r.push(Check::timed(&format!("curving{}", tag(&[i])), "w = dB_i", || {
            b.d().try_sub(omega)
        }));
    }
    for ij in cover.overlaps(2) {
        let (i, j) = (ij[0], ij[1]);
        let id = format!("connection{}", tag(&ij));
        let anchor = "B_j - B_i = dA_ij";
        match data.a.get(&(i, j)) {
            Some(a) => r.push(Check::timed(&id, anchor, || {
                a.d().try_sub(&data.b[j].try_sub(&data.b[i])?)
            })),
            None => r.push(Check::failed(id, anchor, missing("A", &ij))),
        }
        r.push(Check::timed(
            &format!("curvature-agree{}", tag(&ij)),
            "curvature of s + B_i equals curvature of s + B_j",
            || {
                let si = flat.shifted_twist(&SplittingShift::new(data.b[i].clone())?);
                let sj = flat.shifted_twist(&SplittingShift::new(data.b[j].clone())?);
                Ok::<_, CocycleError>(sj.try_sub(&si)?)
            },
        ));
    }
    for ijk in cover.overlaps(3) {
        let (i, j, k) = (ijk[0], ijk[1], ijk[2]);
        let id = format!("gerbe-cocycle{}", tag(&ijk));
        let anchor = "A_jk - A_ik + A_ij = dh_ijk";
        match (
            data.a.get(&(j, k)),
            data.a.get(&(i, k)),
            data.a.get(&(i, j)),
            data.h.get(&(i, j, k)),
        ) {
            (Some(a), Some(b), Some(c), Some(h)) => r.push(Check::timed(&id, anchor, || {
                fn_form(chart, h).d().try_sub(&a.try_sub(b)?.try_add(c)?)
            })),
            _ => r.push(Check::failed(id, anchor, missing("A or h on ", &ijk))),
        }
    }
    for q in cover.overlaps(4) {
        let (i, j, k, l) = (q[0], q[1], q[2], q[3]);
        let id = format!("gerbe-integrality{}", tag(&q));
        let anchor = "h_jkl - h_ikl + h_ijl - h_ijk";
        let faces = [(j, k, l), (i, k, l), (i, j, l), (i, j, k)];
        let hs: Option<Vec<&RationalFunction>> = faces.iter().map(|f| data.h.get(f)).collect();
        match hs {
            Some(hs) => push_delta(&mut r, id, anchor, cover.mode(), &(&(hs[0] - hs[1]) + hs[2]) - hs[3]),
            None => r.push(Check::failed(id, anchor, missing("h on a face of ", &q))),
        }
    }
    Ok(r)
}

/// A transition shear on an overlap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shear {
    /// `s v + f ↦ s v + f + ι_v σ`; `σ = dhᵢⱼ` for genuine data.
    OneForm(DifferentialForm),
    /// `v + α ↦ v + α + ι_v F`; `F = dAᵢⱼ` for genuine data.
    TwoForm(DifferentialForm),
}

impl LocalData1 {
    pub fn transition(&self, i: usize, j: usize) -> Option<Shear> {
        let h = self.h.get(&(i, j))?;
        Some(Shear::OneForm(fn_form(self.theta.first()?.chart(), h).d()))
    }
}

impl LocalData2 {
    pub fn transition(&self, i: usize, j: usize) -> Option<Shear> {
        Some(Shear::TwoForm(self.a.get(&(i, j))?.d()))
    }
}

/// Two local sections on an overlap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionPair {
    Atiyah(AtiyahSection, AtiyahSection),
    Courant(GeneralizedSection, GeneralizedSection),
}

fn flat_atiyah(a: &AtiyahSection, b: &AtiyahSection) -> Result<AtiyahSection, ExteriorError> {
    Ok(AtiyahSection::new(
        a.v.bracket(&b.v)?,
        &a.v.apply(&b.f) - &b.v.apply(&a.f),
    ))
}

/// `[G e₁, G e₂] = G [e₁, e₂]` for the local untwisted bracket.
pub fn verify_transition_equivariance(
    cover: &BoxCover,
    overlap: (usize, usize),
    shear: &Shear,
    sections: &SectionPair,
) -> Result<Report, CocycleError> {
    cover.require_overlap(&[overlap.0, overlap.1])?;
    let id = format!("equivariance{}", tag(&[overlap.0, overlap.1]));
    let anchor = "[G e1, G e2]_i = G [e1, e2]_i";
    let mut r = Report::new();
    match (shear, sections) {
        (Shear::OneForm(s), SectionPair::Atiyah(a, b)) => {
            let g = |e: &AtiyahSection| -> Result<AtiyahSection, ExteriorError> {
                let f = s.iota(&e.v)?.as_function().expect("0-form");
                Ok(AtiyahSection::new(e.v.clone(), &e.f + &f))
            };
            r.push(Check::timed(&id, anchor, || {
                let lhs = flat_atiyah(&g(a)?, &g(b)?)?;
                let rhs = g(&flat_atiyah(a, b)?)?;
                rhs.sub(&lhs)
            }));
        }
        (Shear::TwoForm(f), SectionPair::Courant(a, b)) => {
            let model = SplitCourantModel::standard(cover.chart());
            let g = |e: &GeneralizedSection| -> Result<GeneralizedSection, CocycleError> {
                Ok(GeneralizedSection::new(e.v.clone(), e.alpha.try_add(&f.iota(&e.v)?)?)?)
            };
            r.push(Check::timed(&id, anchor, || {
                let lhs = model.courant(&g(a)?, &g(b)?)?;
                let rhs = g(&model.courant(a, b)?)?;
                Ok::<_, CocycleError>(&rhs - &lhs)
            }));
        }
        _ => return Err(CocycleError::KindMismatch),
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use crate::exterior::{dx, partial, VectorField};

    fn unit_box(dim: usize, shift: Rational) -> OpenBox {
        let mut lo = vec![int(0); dim];
        let mut hi = vec![int(1); dim];
        lo[0] = &lo[0] + &shift;
        hi[0] = &hi[0] + &shift;
        OpenBox::new(lo, hi)
    }

    fn two_boxes(c: &Chart) -> BoxCover {
        let d = c.dimension();
        BoxCover::new(c, vec![unit_box(d, int(0)), unit_box(d, rat(1, 2))], Mode::Real).unwrap()
    }

    #[test]
    fn overlaps_by_corners() {
        let c = Chart::r3();
        let cov = BoxCover::new(
            &c,
            vec![unit_box(3, int(0)), unit_box(3, rat(1, 2)), unit_box(3, int(1))],
            Mode::Real,
        )
        .unwrap();
        assert_eq!(cov.overlaps(2), vec![vec![0, 1], vec![1, 2]]);
        assert!(cov.overlaps(3).is_empty());
        assert!(BoxCover::new(&c, vec![OpenBox::new(vec![int(0); 3], vec![int(0); 3])], Mode::Real).is_err());
    }

    #[test]
    fn triv_2form_examples() {
        let c = Chart::r2_qp();
        let (q, p) = (c.coord(0), c.coord(1));
        let omega = DifferentialForm::basis(&c, &[0, 1]);
        let t1 = dx(&c, 1).mul_fn(&q);
        let one = BoxCover::new(&c, vec![unit_box(2, int(0))], Mode::Real).unwrap();
        let data = LocalData1 {
            theta: vec![t1.clone()],
            h: BTreeMap::new(),
        };
        assert!(verify_triv_2form(&one, &omega, &data).unwrap().passed());

        let qp = &q * &p;
        let t2 = &t1 + &fn_form(&c, &qp).d();
        let mut data = LocalData1 {
            theta: vec![t1, t2],
            h: BTreeMap::from([((0, 1), qp.clone())]),
        };
        let cov = two_boxes(&c);
        assert!(verify_triv_2form(&cov, &omega, &data).unwrap().passed());

        data.h.insert((0, 1), &qp + &q);
        let r = verify_triv_2form(&cov, &omega, &data).unwrap();
        let fails: Vec<_> = r.failures().collect();
        assert_eq!(fails.len(), 1);
        assert_eq!(fails[0].id, "transition[1,2]");
        assert_eq!(fails[0].residual, dx(&c, 0).to_string());
    }

    #[test]
    fn circle_mode_integrality() {
        let c = Chart::r2_qp();
        let omega = DifferentialForm::zero(&c, 2);
        let cov = BoxCover::new(&c, vec![unit_box(2, int(0)); 3], Mode::Circle).unwrap();
        let z = DifferentialForm::zero(&c, 1);
        let k = |n: i64| c.one_fn().scale(&rat(n, 2));
        let mut data = LocalData1 {
            theta: vec![z.clone(), z.clone(), z],
            h: BTreeMap::from([((0, 1), k(2)), ((0, 2), k(0)), ((1, 2), k(4))]),
        };
        assert!(verify_triv_2form(&cov, &omega, &data).unwrap().passed());
        data.h.insert((1, 2), k(3));
        let r = verify_triv_2form(&cov, &omega, &data).unwrap();
        assert_eq!(r.failures().next().unwrap().residual, "frac 1/2");
        let real = BoxCover::new(&c, cov.boxes().to_vec(), Mode::Real).unwrap();
        assert!(!verify_triv_2form(&real, &omega, &data).unwrap().passed());
    }

    fn gerbe_fixture() -> (Chart, DifferentialForm, LocalData2) {
        let c = Chart::r3();
        let (x, y) = (c.coord(0), c.coord(1));
        let omega = DifferentialForm::basis(&c, &[0, 1, 2]);
        let b1 = DifferentialForm::basis(&c, &[1, 2]).mul_fn(&x);
        let a12 = dx(&c, 1).mul_fn(&x);
        let b2 = &b1 + &a12.d();
        let _ = y;
        let data = LocalData2 {
            b: vec![b1, b2],
            a: BTreeMap::from([((0, 1), a12)]),
            h: BTreeMap::new(),
        };
        (c, omega, data)
    }

    #[test]
    fn triv_3form_examples() {
        let (c, omega, data) = gerbe_fixture();
        let one = BoxCover::new(&c, vec![unit_box(3, int(0))], Mode::Real).unwrap();
        let single = LocalData2 {
            b: vec![data.b[0].clone()],
            ..Default::default()
        };
        assert!(verify_triv_3form(&one, &omega, &single).unwrap().passed());

        let cov = two_boxes(&c);
        let r = verify_triv_3form(&cov, &omega, &data).unwrap();
        assert!(r.passed(), "{}", r.machine_text());

        let mut bad = data.clone();
        let y = c.coord(1);
        let a = &bad.a[&(0, 1)] + &dx(&c, 2).mul_fn(&y);
        bad.a.insert((0, 1), a);
        let r = verify_triv_3form(&cov, &omega, &bad).unwrap();
        let fails: Vec<_> = r.failures().collect();
        assert_eq!(fails.len(), 1);
        assert_eq!(fails[0].id, "connection[1,2]");
        assert_eq!(fails[0].residual, DifferentialForm::basis(&c, &[1, 2]).to_string());
    }

    #[test]
    fn equivariance() {
        let (c, _, data) = gerbe_fixture();
        let cov = two_boxes(&c);
        let (x, y, z) = (c.coord(0), c.coord(1), c.coord(2));
        let e1 = GeneralizedSection::new(partial(&c, 0).mul_fn(&y), dx(&c, 2).mul_fn(&x)).unwrap();
        let e2 = GeneralizedSection::new(partial(&c, 2).mul_fn(&(&x * &z)), dx(&c, 1).mul_fn(&y)).unwrap();
        let pair = SectionPair::Courant(e1, e2);
        let shear = data.transition(0, 1).unwrap();
        assert!(verify_transition_equivariance(&cov, (0, 1), &shear, &pair)
            .unwrap()
            .passed());
        let zero = Shear::TwoForm(DifferentialForm::zero(&c, 2));
        assert!(verify_transition_equivariance(&cov, (0, 1), &zero, &pair)
            .unwrap()
            .passed());
        let open = Shear::TwoForm(DifferentialForm::basis(&c, &[0, 1]).mul_fn(&z));
        assert!(!verify_transition_equivariance(&cov, (0, 1), &open, &pair)
            .unwrap()
            .passed());

        let c2 = Chart::r2_qp();
        let (q, p) = (c2.coord(0), c2.coord(1));
        let a = AtiyahSection::new(partial(&c2, 0).mul_fn(&p), q.clone());
        let b = AtiyahSection::new(VectorField::basis(&c2, 1), &q * &p);
        let cov2 = two_boxes(&c2);
        let pair = SectionPair::Atiyah(a, b);
        let exact = Shear::OneForm(fn_form(&c2, &(&q * &q)).d());
        assert!(verify_transition_equivariance(&cov2, (0, 1), &exact, &pair)
            .unwrap()
            .passed());
        let open = Shear::OneForm(dx(&c2, 1).mul_fn(&q));
        assert!(!verify_transition_equivariance(&cov2, (0, 1), &open, &pair)
            .unwrap()
            .passed());
    }
}
