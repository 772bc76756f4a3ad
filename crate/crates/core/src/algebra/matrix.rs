use std::fmt;

use super::poly::{Polynomial, Vars};
use super::ratfunc::RationalFunction;
use super::{AlgebraError, Rational};

/// Dense matrix over the rational-function field.
#[derive(Clone, PartialEq, Eq)]
pub struct RFMatrix {
    vars: Vars,
    rows: usize,
    cols: usize,
    entries: Vec<RationalFunction>,
}

impl RFMatrix {
    pub fn zeros(vars: &Vars, rows: usize, cols: usize) -> Self {
        RFMatrix {
            vars: vars.clone(),
            rows,
            cols,
            entries: vec![RationalFunction::zero(vars); rows * cols],
        }
    }

    pub fn identity(vars: &Vars, n: usize) -> Self {
        let mut m = Self::zeros(vars, n, n);
        for i in 0..n {
            m.set(i, i, RationalFunction::one(vars));
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have equal length.
    pub fn from_rows(vars: &Vars, rows: Vec<Vec<RationalFunction>>) -> Result<Self, AlgebraError> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(AlgebraError::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(RFMatrix {
            vars: vars.clone(),
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn get(&self, r: usize, c: usize) -> &RationalFunction {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: RationalFunction) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[RationalFunction] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn select_rows(&self, rows: &[usize]) -> RFMatrix {
        RFMatrix {
            vars: self.vars.clone(),
            rows: rows.len(),
            cols: self.cols,
            entries: rows.iter().flat_map(|&r| self.row(r).iter().cloned()).collect(),
        }
    }

    pub fn mul_vec(&self, x: &[RationalFunction]) -> Result<Vec<RationalFunction>, AlgebraError> {
        if x.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(RationalFunction::zero(&self.vars), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    /// Evaluates every entry at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<RFMatrix, AlgebraError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.eval(point).map(|c| RationalFunction::constant(&self.vars, c)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RFMatrix {
            vars: self.vars.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(RationalFunction::is_constant)
    }

    pub fn determinant(&self) -> Result<RationalFunction, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(RationalFunction::one(&self.vars));
        }
        let (poly_rows, scales) = self.clear_denominators(None);
        let elim = Bareiss::run(poly_rows, self.cols);
        if elim.rank < self.rows {
            return Ok(RationalFunction::zero(&self.vars));
        }
        let mut det = RationalFunction::from(elim.rows[self.rows - 1][self.cols - 1].clone());
        if elim.odd_permutation {
            det = -det;
        }
        let scale = scales.into_iter().fold(Polynomial::one(&self.vars), |acc, s| &acc * &s);
        det = det.checked_div(&scale.into())?;
        Ok(det)
    }

    /// Multiplies each row (and its rhs entry) by the product of its distinct
    /// denominators, returning polynomial rows and the multipliers used.
    fn clear_denominators(&self, rhs: Option<&[RationalFunction]>) -> (Vec<Vec<Polynomial>>, Vec<Polynomial>) {
        let mut out = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut row: Vec<&RationalFunction> = self.row(r).iter().collect();
            if let Some(b) = rhs {
                row.push(&b[r]);
            }
            let mut dens: Vec<&Polynomial> = Vec::new();
            for e in &row {
                let d = e.denom();
                if !d.is_constant() && !dens.contains(&d) {
                    dens.push(d);
                }
            }
            let l = dens.iter().fold(Polynomial::one(&self.vars), |acc, d| &acc * d);
            let prow = row
                .iter()
                .map(|e| {
                    if e.is_polynomial() {
                        e.numer() * &l
                    } else {
                        let q = l.div_exact(e.denom()).expect("denominator divides row multiplier");
                        e.numer() * &q
                    }
                })
                .collect();
            out.push(prow);
            scales.push(l);
        }
        (out, scales)
    }
}

impl fmt::Debug for RFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RFMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Outcome of an exact linear solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveResult {
    Unique(Vec<RationalFunction>),
    Affine {
        particular: Vec<RationalFunction>,
        kernel: Vec<Vec<RationalFunction>>,
    },
    /// No solution. `independent_rows` lists original row indices of a
    /// maximal independent subsystem, which is itself consistent.
    Inconsistent {
        independent_rows: Vec<usize>,
    },
}

impl SolveResult {
    pub fn particular(&self) -> Option<&[RationalFunction]> {
        match self {
            SolveResult::Unique(x) => Some(x),
            SolveResult::Affine { particular, .. } => Some(particular),
            SolveResult::Inconsistent { .. } => None,
        }
    }

    pub fn kernel(&self) -> &[Vec<RationalFunction>] {
        match self {
            SolveResult::Affine { kernel, .. } => kernel,
            _ => &[],
        }
    }
}

struct Bareiss {
    rows: Vec<Vec<Polynomial>>,
    /// original row index of each current row
    row_perm: Vec<usize>,
    /// original column index of each current column
    col_perm: Vec<usize>,
    rank: usize,
    odd_permutation: bool,
}

impl Bareiss {
    /// Fraction-free elimination on the first `ncols` columns; any trailing
    /// columns (the right-hand side) are carried along.
    fn run(mut rows: Vec<Vec<Polynomial>>, ncols: usize) -> Bareiss {
        let nrows = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        let vars = rows.first().and_then(|r| r.first()).map(|p| p.vars().clone());
        let mut row_perm: Vec<usize> = (0..nrows).collect();
        let mut col_perm: Vec<usize> = (0..ncols).collect();
        let mut odd = false;
        let mut rank = 0;
        let Some(vars) = vars else {
            return Bareiss {
                rows,
                row_perm,
                col_perm,
                rank,
                odd_permutation: odd,
            };
        };
        let mut prev = Polynomial::one(&vars);
        for k in 0..nrows.min(ncols) {
            // least total degree pivot, ties by row then column
            let mut best: Option<(u32, usize, usize)> = None;
            for (r, row) in rows.iter().enumerate().skip(k) {
                for (c, entry) in row.iter().enumerate().take(ncols).skip(k) {
                    if entry.is_zero() {
                        continue;
                    }
                    let key = (entry.total_degree(), r, c);
                    if best.is_none_or(|b| key < b) {
                        best = Some(key);
                    }
                }
            }
            let Some((_, pr, pc)) = best else { break };
            if pr != k {
                rows.swap(pr, k);
                row_perm.swap(pr, k);
                odd = !odd;
            }
            if pc != k {
                for row in rows.iter_mut() {
                    row.swap(pc, k);
                }
                col_perm.swap(pc, k);
                odd = !odd;
            }
            let pivot = rows[k][k].clone();
            let pivot_row = rows[k].clone();
            for row in rows.iter_mut().skip(k + 1) {
                let lead = row[k].clone();
                for j in (k + 1)..width {
                    let t = &(&pivot * &row[j]) - &(&lead * &pivot_row[j]);
                    row[j] = t.div_exact(&prev).expect("Bareiss step divides exactly");
                }
                row[k] = Polynomial::zero(&vars);
            }
            prev = pivot;
            rank = k + 1;
        }
        Bareiss {
            rows,
            row_perm,
            col_perm,
            rank,
            odd_permutation: odd,
        }
    }
}

/// Solves `m · x = b` exactly over the rational-function field.
pub fn solve_linear(m: &RFMatrix, b: &[RationalFunction]) -> Result<SolveResult, AlgebraError> {
    if b.len() != m.rows {
        return Err(AlgebraError::DimensionMismatch {
            expected: m.rows,
            found: b.len(),
        });
    }
    let vars = m.vars.clone();
    let n = m.cols;
    if m.rows == 0 {
        let zero = vec![RationalFunction::zero(&vars); n];
        if n == 0 {
            return Ok(SolveResult::Unique(zero));
        }
        let kernel = (0..n)
            .map(|j| {
                let mut k = zero.clone();
                k[j] = RationalFunction::one(&vars);
                k
            })
            .collect();
        return Ok(SolveResult::Affine {
            particular: zero,
            kernel,
        });
    }
    let (rows, _) = m.clear_denominators(Some(b));
    let elim = Bareiss::run(rows, n);
    let rank = elim.rank;
    if elim.rows[rank..].iter().any(|r| !r[n].is_zero()) {
        let mut independent_rows: Vec<usize> = elim.row_perm[..rank].to_vec();
        independent_rows.sort_unstable();
        return Ok(SolveResult::Inconsistent { independent_rows });
    }

    let back_substitute = |rhs: &dyn Fn(usize) -> RationalFunction, free: &[RationalFunction]| {
        // y holds unknowns in permuted column order
        let mut y: Vec<RationalFunction> = vec![RationalFunction::zero(&vars); n];
        for (j, f) in free.iter().enumerate() {
            y[rank + j] = f.clone();
        }
        for k in (0..rank).rev() {
            let mut acc = rhs(k);
            for (a, yj) in elim.rows[k][k + 1..n].iter().zip(&y[k + 1..n]) {
                if !a.is_zero() && !yj.is_zero() {
                    acc = &acc - &(&RationalFunction::from(a.clone()) * yj);
                }
            }
            y[k] = acc
                .checked_div(&elim.rows[k][k].clone().into())
                .expect("pivot is nonzero");
        }
        let mut x = vec![RationalFunction::zero(&vars); n];
        for (j, v) in y.into_iter().enumerate() {
            x[elim.col_perm[j]] = v;
        }
        x
    };

    let nfree = n - rank;
    let zeros = vec![RationalFunction::zero(&vars); nfree];
    let particular = back_substitute(&|k| elim.rows[k][n].clone().into(), &zeros);
    if nfree == 0 {
        return Ok(SolveResult::Unique(particular));
    }
    let kernel = (0..nfree)
        .map(|f| {
            let mut free = zeros.clone();
            free[f] = RationalFunction::one(&vars);
            back_substitute(&|_| RationalFunction::zero(&vars), &free)
        })
        .collect();
    Ok(SolveResult::Affine { particular, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use std::sync::Arc;

    fn xy() -> Vars {
        Arc::from(vec!["x".to_string(), "y".to_string()])
    }

    fn c(v: &Vars, n: i64) -> RationalFunction {
        RationalFunction::constant(v, rat(n, 1))
    }

    #[test]
    fn identity_system() {
        let v = xy();
        let x = RationalFunction::var(&v, 0);
        let y = RationalFunction::var(&v, 1);
        let m = RFMatrix::identity(&v, 2);
        let r = solve_linear(&m, &[x.clone(), y.clone()]).unwrap();
        assert_eq!(r, SolveResult::Unique(vec![x, y]));
    }

    #[test]
    fn rank_deficient_inconsistent() {
        let v = xy();
        let m = RFMatrix::from_rows(&v, vec![vec![c(&v, 1), c(&v, 1)], vec![c(&v, 1), c(&v, 1)]]).unwrap();
        let r = solve_linear(&m, &[c(&v, 0), c(&v, 1)]).unwrap();
        assert!(matches!(r, SolveResult::Inconsistent { ref independent_rows } if independent_rows.len() == 1));
    }

    #[test]
    fn diagonal_with_variable_entry() {
        // [[x,0],[0,1]] * (a, b) = (1, y)  =>  (1/x, y)
        let v = xy();
        let x = RationalFunction::var(&v, 0);
        let y = RationalFunction::var(&v, 1);
        let m = RFMatrix::from_rows(&v, vec![vec![x.clone(), c(&v, 0)], vec![c(&v, 0), c(&v, 1)]]).unwrap();
        let r = solve_linear(&m, &[c(&v, 1), y.clone()]).unwrap();
        assert_eq!(r, SolveResult::Unique(vec![x.recip().unwrap(), y]));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let v = xy();
        let x = RationalFunction::var(&v, 0);
        let y = RationalFunction::var(&v, 1);
        let m = RFMatrix::from_rows(
            &v,
            vec![vec![x.clone(), y.clone(), c(&v, 1)], vec![&x * &x, &x * &y, x.clone()]],
        )
        .unwrap();
        let b = vec![c(&v, 2), &x * &c(&v, 2)];
        let r = solve_linear(&m, &b).unwrap();
        let SolveResult::Affine { particular, kernel } = r else {
            panic!("expected affine solution set")
        };
        assert_eq!(kernel.len(), 2);
        assert_eq!(m.mul_vec(&particular).unwrap(), b);
        for k in &kernel {
            assert!(m.mul_vec(k).unwrap().iter().all(RationalFunction::is_zero));
        }
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let v = xy();
        let x = RationalFunction::var(&v, 0);
        let y = RationalFunction::var(&v, 1);
        let m = RFMatrix::from_rows(&v, vec![vec![x.clone(), y.clone()], vec![c(&v, 1), x.recip().unwrap()]]).unwrap();
        // x * (1/x) - y * 1
        assert_eq!(m.determinant().unwrap(), &c(&v, 1) - &y);
    }

    #[test]
    fn dimension_mismatch() {
        let v = xy();
        let m = RFMatrix::identity(&v, 2);
        assert!(matches!(
            solve_linear(&m, &[c(&v, 1)]),
            Err(AlgebraError::DimensionMismatch { expected: 2, found: 1 })
        ));
    }
}
