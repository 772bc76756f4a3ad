//! Seeded generators of polynomial test data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{rat, Polynomial, Rational, RationalFunction};
use crate::exterior::{Chart, DifferentialForm, VectorField};
use crate::plectic::{combinations, PlecticStructure};

/// Deterministic generator for a given seed.
#[derive(Clone, Debug)]
pub struct Gen {
    rng: ChaCha8Rng,
    max_degree: u32,
}

impl Gen {
    pub fn new(seed: u64, max_degree: u32) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_degree,
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    /// Small nonzero rational: numerator in ±1..=4, denominator 1 or 2.
    pub fn coefficient(&mut self) -> Rational {
        let n = self.rng.gen_range(1..=4) * if self.rng.gen_bool(0.5) { 1 } else { -1 };
        let d = if self.rng.gen_bool(0.25) { 2 } else { 1 };
        rat(n, d)
    }

    /// Small rational in `[-3, 3]` with denominator at most 3.
    pub fn scalar(&mut self) -> Rational {
        rat(self.rng.gen_range(-9..=9), self.rng.gen_range(1..=3))
    }

    pub fn point(&mut self, chart: &Chart) -> Vec<Rational> {
        (0..chart.dimension()).map(|_| self.scalar()).collect()
    }

    fn exponents(&mut self, n: usize, degree: u32) -> Vec<u32> {
        let mut e = vec![0; n];
        for _ in 0..degree {
            e[self.rng.gen_range(0..n)] += 1;
        }
        e
    }

    /// Polynomial with one to three terms of total degree at most `max_degree`.
    pub fn polynomial(&mut self, chart: &Chart) -> RationalFunction {
        let vars = chart.vars();
        let mut p = Polynomial::zero(vars);
        for _ in 0..self.rng.gen_range(1..=3) {
            let deg = self.rng.gen_range(0..=self.max_degree);
            let e = self.exponents(chart.dimension(), deg);
            p = &p + &Polynomial::monomial(vars, &e, self.coefficient());
        }
        p.into()
    }

    /// Random `k`-form; each basis element appears with probability one half.
    pub fn form(&mut self, chart: &Chart, k: usize) -> DifferentialForm {
        let mut a = DifferentialForm::zero(chart, k);
        for idx in combinations(chart.dimension(), k) {
            if self.coin(0.5) {
                a = &a + &DifferentialForm::term(chart, &idx, self.polynomial(chart));
            }
        }
        a
    }

    pub fn field(&mut self, chart: &Chart) -> VectorField {
        let comps = (0..chart.dimension())
            .map(|_| {
                if self.coin(0.7) {
                    self.polynomial(chart)
                } else {
                    chart.zero_fn()
                }
            })
            .collect();
        VectorField::from_components(chart, comps).expect("component count")
    }

    /// `df` for a random polynomial `f`.
    pub fn exact_form(&mut self, chart: &Chart) -> DifferentialForm {
        DifferentialForm::function(chart, self.polynomial(chart)).d()
    }

    /// A Hamiltonian `(n−1)`-form: retried until the linear system is
    /// consistent, falling back to an exact form.
    pub fn hamiltonian_form(&mut self, p: &PlecticStructure) -> DifferentialForm {
        for _ in 0..8 {
            let a = self.form(p.chart(), p.n() - 1);
            if p.is_hamiltonian(&a) {
                return a;
            }
        }
        if p.n() == 1 {
            DifferentialForm::function(p.chart(), self.polynomial(p.chart()))
        } else {
            self.form(p.chart(), p.n() - 2).d()
        }
    }

    pub fn hamiltonian_field(&mut self, p: &PlecticStructure) -> VectorField {
        let a = self.hamiltonian_form(p);
        p.hamiltonian_vf(&a).expect("Hamiltonian by construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let c = Chart::r3();
        let a = Gen::new(7, 3).form(&c, 2);
        let b = Gen::new(7, 3).form(&c, 2);
        assert_eq!(a, b);
    }

    #[test]
    fn degree_bound() {
        let c = Chart::r3();
        let mut g = Gen::new(1, 2);
        for _ in 0..50 {
            assert!(g.polynomial(&c).total_degree() <= 2);
        }
    }
}
