//! Sparse multivariate polynomials over exact rationals, and homogeneous
//! forms built on them.

use crate::chow::Rational;
use num::complex::Complex64;
use num::{One, Signed, ToPrimitive, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl ExactPoly {
    pub fn zero(nvars: usize) -> Self {
        ExactPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_terms(nvars, [(vec![0; nvars], c)])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(nvars, [(e, Rational::one())])
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = ExactPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.accumulate(e, c);
        }
        p
    }

    fn accumulate(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add(&self, other: &ExactPoly) -> ExactPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> ExactPoly {
        let mut out = ExactPoly::zero(self.nvars);
        for (e, v) in &self.terms {
            out.accumulate(e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &ExactPoly) -> ExactPoly {
        let mut out = ExactPoly::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.accumulate(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> ExactPoly {
        (0..k).fold(
            ExactPoly::constant(self.nvars, Rational::one()),
            |acc, _| acc.mul(self),
        )
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().zip(x).fold(c.clone(), |acc, (&k, xi)| {
                    acc * num::pow(xi.clone(), k as usize)
                })
            })
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn eval_complex(&self, x: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(x)
                    .fold(Complex64::new(to_f64(c), 0.0), |acc, (&k, xi)| {
                        acc * xi.powu(k)
                    })
            })
            .sum()
    }

    pub fn partial(&self, i: usize) -> ExactPoly {
        let mut out = ExactPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.accumulate(f, c * Rational::from_integer(e[i].into()));
            }
        }
        out
    }

    /// Replace variable `i` by `subs[i]`; all substitutes share one variable
    /// count, which becomes that of the result.
    pub fn substitute(&self, subs: &[ExactPoly]) -> ExactPoly {
        assert_eq!(subs.len(), self.nvars, "one substitute per variable");
        let target = subs.first().map(|s| s.nvars).unwrap_or(0);
        let mut powers: Vec<Vec<ExactPoly>> = subs
            .iter()
            .map(|s| vec![ExactPoly::constant(target, Rational::one()), s.clone()])
            .collect();
        let mut out = ExactPoly::zero(target);
        for (e, c) in &self.terms {
            let mut term = ExactPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().expect("non-empty").mul(&subs[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][k as usize]);
            }
            out = out.add(&term);
        }
        out
    }

    /// Largest absolute coefficient, as a float.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms
            .values()
            .map(|c| to_f64(&c.abs()))
            .fold(0.0, f64::max)
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Exponent vectors of all monomials of total degree `d` in `n` variables,
/// in lexicographic order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(n, d - k, prefix, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("form is not homogeneous of degree {degree}")]
pub struct NotHomogeneous {
    pub degree: u32,
}

/// Homogeneous form with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseForm {
    poly: ExactPoly,
    degree: u32,
}

impl DenseForm {
    pub fn new(poly: ExactPoly, degree: u32) -> Result<Self, NotHomogeneous> {
        if poly.terms().any(|(e, _)| e.iter().sum::<u32>() != degree) {
            return Err(NotHomogeneous { degree });
        }
        Ok(DenseForm { poly, degree })
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn poly(&self) -> &ExactPoly {
        &self.poly
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.poly.coefficient(e)
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.poly.eval(x)
    }

    pub fn eval_complex(&self, x: &[Complex64]) -> Complex64 {
        self.poly.eval_complex(x)
    }

    pub fn gradient(&self, x: &[Rational]) -> Vec<Rational> {
        (0..self.nvars())
            .map(|i| self.poly.partial(i).eval(x))
            .collect()
    }
}
