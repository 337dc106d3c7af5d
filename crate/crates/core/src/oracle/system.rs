//! Square polynomial systems over the complex numbers.

use super::poly::{to_f64, ExactPoly};
use nalgebra::{DMatrix, DVector};
use num::complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoly {
    nvars: usize,
    terms: Vec<(Vec<u32>, Complex64)>,
}

impl ComplexPoly {
    pub fn new(nvars: usize, terms: Vec<(Vec<u32>, Complex64)>) -> Self {
        assert!(
            terms.iter().all(|(e, _)| e.len() == nvars),
            "exponent vector length"
        );
        ComplexPoly { nvars, terms }
    }

    /// Float image of an exact polynomial, divided by `scale`.
    pub fn from_exact(p: &ExactPoly, scale: f64) -> Self {
        let terms = p
            .terms()
            .map(|(e, c)| (e.clone(), Complex64::new(to_f64(c) / scale, 0.0)))
            .collect();
        ComplexPoly::new(p.nvars(), terms)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Vec<u32>, Complex64)] {
        &self.terms
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        self.terms.iter().map(|(e, c)| c * monomial(e, x)).sum()
    }

    /// `sum |c_a| |x^a|`, the natural scale for the residual at `x`.
    pub fn magnitude(&self, x: &[Complex64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c.norm() * monomial(e, x).norm())
            .sum()
    }

    pub fn gradient(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut g = vec![Complex64::new(0.0, 0.0); self.nvars];
        for (e, c) in &self.terms {
            for (i, gi) in g.iter_mut().enumerate() {
                if e[i] == 0 {
                    continue;
                }
                let mut f = e.clone();
                f[i] -= 1;
                *gi += c * f64::from(e[i]) * monomial(&f, x);
            }
        }
        g
    }
}

fn monomial(e: &[u32], x: &[Complex64]) -> Complex64 {
    e.iter()
        .zip(x)
        .fold(Complex64::new(1.0, 0.0), |acc, (&k, xi)| acc * xi.powu(k))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolySystem {
    nvars: usize,
    equations: Vec<ComplexPoly>,
}

impl PolySystem {
    pub fn new(nvars: usize, equations: Vec<ComplexPoly>) -> Self {
        assert!(
            equations.iter().all(|f| f.nvars() == nvars),
            "variable count"
        );
        PolySystem { nvars, equations }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn equations(&self) -> &[ComplexPoly] {
        &self.equations
    }

    pub fn is_square(&self) -> bool {
        self.nvars == self.equations.len()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.equations.iter().map(ComplexPoly::degree).collect()
    }

    pub fn bezout_number(&self) -> u64 {
        self.degrees().iter().map(|&d| u64::from(d)).product()
    }

    pub fn eval(&self, x: &[Complex64]) -> DVector<Complex64> {
        DVector::from_iterator(
            self.equations.len(),
            self.equations.iter().map(|f| f.eval(x)),
        )
    }

    pub fn jacobian(&self, x: &[Complex64]) -> DMatrix<Complex64> {
        let mut j = DMatrix::zeros(self.equations.len(), self.nvars);
        for (r, f) in self.equations.iter().enumerate() {
            for (c, v) in f.gradient(x).into_iter().enumerate() {
                j[(r, c)] = v;
            }
        }
        j
    }

    /// `max_i |f_i(x)| / sum_a |c_a| |x^a|`.
    pub fn backward_error(&self, x: &[Complex64]) -> f64 {
        self.equations
            .iter()
            .map(|f| relative_residual(f, x))
            .fold(0.0, f64::max)
    }
}

pub fn relative_residual(f: &ComplexPoly, x: &[Complex64]) -> f64 {
    let r = f.eval(x).norm();
    let m = f.magnitude(x);
    if m == 0.0 {
        r
    } else {
        r / m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn circle_line() -> PolySystem {
        // x^2 + y^2 - 1, x - y
        PolySystem::new(
            2,
            vec![
                ComplexPoly::new(
                    2,
                    vec![
                        (vec![2, 0], c(1.0)),
                        (vec![0, 2], c(1.0)),
                        (vec![0, 0], c(-1.0)),
                    ],
                ),
                ComplexPoly::new(2, vec![(vec![1, 0], c(1.0)), (vec![0, 1], c(-1.0))]),
            ],
        )
    }

    #[test]
    fn evaluation_and_jacobian() {
        let s = circle_line();
        assert_eq!(s.degrees(), vec![2, 1]);
        assert_eq!(s.bezout_number(), 2);
        let x = [c(2.0), c(3.0)];
        let f = s.eval(&x);
        assert_eq!(f[0], c(12.0));
        assert_eq!(f[1], c(-1.0));
        let j = s.jacobian(&x);
        assert_eq!(j[(0, 0)], c(4.0));
        assert_eq!(j[(0, 1)], c(6.0));
        assert_eq!(j[(1, 1)], c(-1.0));
    }

    #[test]
    fn backward_error_vanishes_on_solutions() {
        let s = circle_line();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(s.backward_error(&[c(h), c(h)]) < 1e-15);
        // |f1| = 12 over 4 + 9 + 1
        let x = [c(2.0), c(3.0)];
        assert!((relative_residual(&s.equations()[0], &x) - 12.0 / 14.0).abs() < 1e-15);
    }
}
