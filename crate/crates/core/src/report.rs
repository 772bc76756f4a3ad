//! Verification reports: one line per exact check.

use std::fmt;
use std::time::{Duration, Instant};

use num_traits::Zero;

use crate::algebra::{fmt_rational, Rational, RationalFunction};
use crate::exterior::{DifferentialForm, VectorField};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// Anything that can be printed as a residual certificate and tested for zero.
pub trait Residual {
    fn is_zero_residual(&self) -> bool;
    fn render(&self) -> String;
}

impl Residual for DifferentialForm {
    fn is_zero_residual(&self) -> bool {
        self.is_zero()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Residual for VectorField {
    fn is_zero_residual(&self) -> bool {
        self.is_zero()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Residual for RationalFunction {
    fn is_zero_residual(&self) -> bool {
        self.is_zero()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Residual for Rational {
    fn is_zero_residual(&self) -> bool {
        self.is_zero()
    }
    fn render(&self) -> String {
        fmt_rational(self)
    }
}

impl Residual for bool {
    /// `true` means the property holds.
    fn is_zero_residual(&self) -> bool {
        *self
    }
    fn render(&self) -> String {
        if *self { "0" } else { "violated" }.to_string()
    }
}

impl<A: Residual, B: Residual> Residual for (A, B) {
    fn is_zero_residual(&self) -> bool {
        self.0.is_zero_residual() && self.1.is_zero_residual()
    }
    fn render(&self) -> String {
        format!("({}, {})", self.0.render(), self.1.render())
    }
}

/// One exact check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    /// `"0"` on PASS; a printed nonzero certificate on FAIL.
    pub residual: String,
    pub elapsed: Duration,
}

impl Check {
    /// PASS iff `r` is zero.
    pub fn from_residual<R: Residual + ?Sized>(id: impl Into<String>, anchor: impl Into<String>, r: &R) -> Self {
        let ok = r.is_zero_residual();
        Check {
            id: id.into(),
            anchor: anchor.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual: if ok { "0".into() } else { nonempty(r.render()) },
            elapsed: Duration::ZERO,
        }
    }

    /// A FAIL entry produced by an error instead of a residual.
    pub fn failed(id: impl Into<String>, anchor: impl Into<String>, why: impl fmt::Display) -> Self {
        Check {
            id: id.into(),
            anchor: anchor.into(),
            status: Status::Fail,
            residual: nonempty(format!("error: {why}")),
            elapsed: Duration::ZERO,
        }
    }

    /// Runs `f`, timing it; errors become FAIL entries.
    pub fn timed<R, E, F>(id: &str, anchor: &str, f: F) -> Self
    where
        R: Residual,
        E: fmt::Display,
        F: FnOnce() -> Result<R, E>,
    {
        let start = Instant::now();
        let mut c = match f() {
            Ok(r) => Check::from_residual(id, anchor, &r),
            Err(e) => Check::failed(id, anchor, e),
        };
        c.elapsed = start.elapsed();
        c
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn machine_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}",
            self.status,
            self.id,
            self.anchor,
            self.residual.replace(['\t', '\n'], " ")
        )
    }
}

fn nonempty(s: String) -> String {
    if s.is_empty() || s == "0" {
        "nonzero".into()
    } else {
        s
    }
}

/// Ordered list of checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Adds a residual check.
    pub fn check<R: Residual + ?Sized>(&mut self, id: &str, anchor: &str, r: &R) {
        self.push(Check::from_residual(id, anchor, r));
    }

    /// Prefixes every check id with `prefix.`.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        for c in &mut self.checks {
            c.id = format!("{prefix}.{}", c.id);
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Tab-separated `status, check-id, anchor, residual`, one line per check.
    pub fn machine_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&c.machine_line());
            s.push('\n');
        }
        s
    }

    pub fn human_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!(
                "[{}] {:<44} {:>9.3} ms  {}\n",
                c.status,
                c.id,
                c.elapsed.as_secs_f64() * 1e3,
                c.anchor
            ));
            if !c.passed() {
                s.push_str(&format!("       residual: {}\n", c.residual));
            }
        }
        let fails = self.failures().count();
        s.push_str(&format!(
            "{} checks, {} passed, {} failed\n",
            self.len(),
            self.len() - fails,
            fails
        ));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn fail_always_has_nonzero_residual() {
        let c = Check::from_residual("x", "a", &false);
        assert_eq!(c.status, Status::Fail);
        assert_ne!(c.residual, "0");
        let c = Check::failed("x", "a", "");
        assert_ne!(c.residual, "0");
        let ok = Check::from_residual("y", "b", &rat(0, 1));
        assert!(ok.passed());
        assert_eq!(ok.machine_line(), "PASS\ty\tb\t0");
    }
}
