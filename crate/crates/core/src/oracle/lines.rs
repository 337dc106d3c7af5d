//! Conics through two points of a cubic threefold, counted as lines through
//! the residual point of the secant.
//!
//! A conic through `p` and `q` spans a plane containing the secant `pq`; that
//! plane cuts the threefold in the conic plus a line through the third point
//! `r` of `pq`. Lines through `r` are solved in an affine chart of the
//! directions at `r`.

use super::poly::{monomials_of_degree, DenseForm, ExactPoly};
use super::system::{ComplexPoly, PolySystem};
use super::tracker::{self, solve_total_degree, PathStatus, SolutionSet, TrackerConfig};
use super::OracleError;
use crate::chow::{integer, Rational};
use num::complex::Complex64;
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Ambient coordinates on `P^4`.
pub const NVARS: usize = 5;
pub const COEFFICIENT_BOUND: i64 = 9;
const CHART_ENTRY_BOUND: i64 = 3;

pub fn coordinate_point(i: usize) -> Vec<Rational> {
    (0..NVARS).map(|j| integer(i64::from(i == j))).collect()
}

/// The fixed points `p = [1:0:0:0:0]` and `q = [0:1:0:0:0]`.
pub fn base_points() -> (Vec<Rational>, Vec<Rational>) {
    (coordinate_point(0), coordinate_point(1))
}

/// Random form of degree `d` with integer coefficients in
/// `[-COEFFICIENT_BOUND, COEFFICIENT_BOUND]`, vanishing at the coordinate
/// points listed in `through`.
pub fn random_form<R: Rng + ?Sized>(rng: &mut R, degree: u32, through: &[usize]) -> DenseForm {
    let terms = monomials_of_degree(NVARS, degree).into_iter().map(|e| {
        let c = rng.random_range(-COEFFICIENT_BOUND..=COEFFICIENT_BOUND);
        let pure = through.iter().any(|&i| e[i] == degree);
        (e, integer(if pure { 0 } else { c }))
    });
    DenseForm::new(ExactPoly::from_terms(NVARS, terms), degree).expect("built homogeneous")
}

/// Random cubic through `p` and `q`.
pub fn random_cubic_through(seed: u64) -> DenseForm {
    random_form(&mut ChaCha8Rng::seed_from_u64(seed), 3, &[0, 1])
}

fn exps(pairs: &[(usize, u32)]) -> Vec<u32> {
    let mut e = vec![0; NVARS];
    for &(i, k) in pairs {
        e[i] = k;
    }
    e
}

/// Third intersection of the secant `pq` with the cubic.
///
/// On the secant the cubic restricts to `s t (a s + b t)` with `a` the
/// coefficient of `x0^2 x1` and `b` that of `x0 x1^2`, so `r = [-b : a]`.
pub fn residual_point(form: &DenseForm) -> Result<Vec<Rational>, OracleError> {
    if form.degree() != 3 || form.nvars() != NVARS {
        return Err(OracleError::DimensionMismatch);
    }
    let (p, q) = base_points();
    if !form.eval(&p).is_zero() || !form.eval(&q).is_zero() {
        return Err(OracleError::NotOnForm);
    }
    let a = form.coefficient(&exps(&[(0, 2), (1, 1)]));
    let b = form.coefficient(&exps(&[(0, 1), (1, 2)]));
    match (a.is_zero(), b.is_zero()) {
        (true, true) => Err(OracleError::LineContained),
        (true, false) | (false, true) => Err(OracleError::Tangent),
        (false, false) => {
            let mut r = vec![Rational::zero(); NVARS];
            r[0] = -b;
            r[1] = a;
            Ok(r)
        }
    }
}

/// Determinant by fraction-exact elimination.
pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col].clone();
        for r in col + 1..n {
            let f = &m[r][col] / &m[col][col];
            if f.is_zero() {
                continue;
            }
            let pivot = m[col].clone();
            for (dst, src) in m[r].iter_mut().zip(&pivot).skip(col) {
                *dst -= &f * src;
            }
        }
    }
    det
}

/// Polynomial system for the lines through `r` on a form in `P^4`.
#[derive(Clone, Debug)]
pub struct LineSystem {
    pub point: Vec<Rational>,
    /// `v0, v1, v2, v3`: directions are `v0 + sum_k x_k v_k`.
    pub chart: Vec<Vec<Rational>>,
    /// Coefficients of `tau^1 .. tau^d` in `F(r + tau v)`, exact.
    pub taylor: Vec<ExactPoly>,
    /// The first three Taylor coefficients, rescaled.
    pub system: PolySystem,
    /// The remaining Taylor coefficients, rescaled.
    pub extra: Vec<ComplexPoly>,
}

impl LineSystem {
    /// Direction vector in `C^5` for a chart point.
    pub fn direction(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..NVARS)
            .map(|i| {
                let mut v = Complex64::new(super::poly::to_f64(&self.chart[0][i]), 0.0);
                for (k, xk) in x.iter().enumerate() {
                    v += xk * super::poly::to_f64(&self.chart[k + 1][i]);
                }
                v
            })
            .collect()
    }
}

fn random_vector<R: Rng + ?Sized>(rng: &mut R) -> Vec<Rational> {
    (0..NVARS)
        .map(|_| integer(rng.random_range(-CHART_ENTRY_BOUND..=CHART_ENTRY_BOUND)))
        .collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .map(|(x, y)| x * y)
        .fold(Rational::zero(), |s, t| s + t)
}

/// Exact Gram-Schmidt of `vs` against `r` and each other, each output
/// rescaled to roughly unit length by a dyadic factor.
fn orthogonalize(r: &[Rational], vs: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let mut basis = vec![r.to_vec()];
    for v in vs {
        let mut w = v;
        for b in &basis {
            let f = dot(&w, b) / dot(b, b);
            w = w.iter().zip(b).map(|(x, y)| x - &f * y).collect();
        }
        basis.push(w);
    }
    basis
        .split_off(1)
        .into_iter()
        .map(|w| {
            let len = super::poly::to_f64(&dot(&w, &w)).sqrt();
            let k = (1024.0 / len).round().max(1.0) as i64;
            let f = Rational::new(k.into(), 1024.into());
            w.iter().map(|x| x * &f).collect()
        })
        .collect()
}

/// Build the chart and expand `F(r + tau v)`. Fails with `DegenerateChart`
/// when a Taylor coefficient drops degree on this chart.
pub fn lines_through_point_system<R: Rng + ?Sized>(
    form: &DenseForm,
    point: &[Rational],
    rng: &mut R,
) -> Result<LineSystem, OracleError> {
    if form.nvars() != NVARS || point.len() != NVARS {
        return Err(OracleError::DimensionMismatch);
    }
    if !form.eval(point).is_zero() {
        return Err(OracleError::NotOnForm);
    }
    if form.gradient(point).iter().all(Zero::is_zero) {
        return Err(OracleError::SingularPoint);
    }
    let unknowns = NVARS - 2;
    if form.degree() < unknowns as u32 {
        return Err(OracleError::DimensionMismatch);
    }
    let chart: Vec<Vec<Rational>> = loop {
        let c: Vec<Vec<Rational>> = (0..=unknowns).map(|_| random_vector(rng)).collect();
        let mut rows = vec![point.to_vec()];
        rows.extend(c.iter().cloned());
        if !determinant(rows).is_zero() {
            break orthogonalize(point, c);
        }
    };

    // variables x1, x2, x3, tau
    let nv = unknowns + 1;
    let tau = ExactPoly::var(nv, unknowns);
    let subs: Vec<ExactPoly> = (0..NVARS)
        .map(|i| {
            let mut dir = ExactPoly::constant(nv, chart[0][i].clone());
            for k in 0..unknowns {
                dir = dir.add(&ExactPoly::var(nv, k).scale(&chart[k + 1][i]));
            }
            ExactPoly::constant(nv, point[i].clone()).add(&tau.mul(&dir))
        })
        .collect();
    let expanded = form.poly().substitute(&subs);
    let mut taylor: Vec<ExactPoly> = (0..=form.degree())
        .map(|_| ExactPoly::zero(unknowns))
        .collect();
    for (e, c) in expanded.terms() {
        let mono = ExactPoly::from_terms(unknowns, [(e[..unknowns].to_vec(), c.clone())]);
        let k = e[unknowns] as usize;
        taylor[k] = taylor[k].add(&mono);
    }
    debug_assert!(taylor[0].is_zero());
    let taylor: Vec<ExactPoly> = taylor.into_iter().skip(1).collect();

    for (k, t) in taylor.iter().take(unknowns).enumerate() {
        if t.total_degree() != Some(k as u32 + 1) {
            return Err(OracleError::DegenerateChart);
        }
    }
    let scaled: Vec<ComplexPoly> = taylor
        .iter()
        .map(|t| ComplexPoly::from_exact(t, t.max_abs_coefficient().max(f64::MIN_POSITIVE)))
        .collect();
    let (square, extra) = scaled.split_at(unknowns);
    Ok(LineSystem {
        point: point.to_vec(),
        chart,
        taylor,
        system: PolySystem::new(unknowns, square.to_vec()),
        extra: extra.to_vec(),
    })
}

/// Largest Taylor coefficient of `tau -> F(r + tau v)` with `r`, `v` and the
/// coefficients of `F` each normalized to unit size, recovered by sampling on
/// roots of unity.
pub fn line_taylor_residual(form: &DenseForm, point: &[Complex64], direction: &[Complex64]) -> f64 {
    let unit = |x: &[Complex64]| {
        let n = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        x.iter().map(|v| v / n).collect::<Vec<_>>()
    };
    let (r, v) = (unit(point), unit(direction));
    let scale = form.poly().max_abs_coefficient();
    let n = form.degree() as usize + 1;
    let samples: Vec<Complex64> = (0..n)
        .map(|j| {
            let w = Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / n as f64);
            let x: Vec<Complex64> = r.iter().zip(&v).map(|(a, b)| a + w * b).collect();
            form.eval_complex(&x) / scale
        })
        .collect();
    (0..n)
        .map(|k| {
            let c: Complex64 = samples
                .iter()
                .enumerate()
                .map(|(j, s)| {
                    s * Complex64::from_polar(
                        1.0,
                        -std::f64::consts::TAU * (j * k) as f64 / n as f64,
                    )
                })
                .sum();
            c.norm() / n as f64
        })
        .fold(0.0, f64::max)
}

pub fn to_complex(x: &[Rational]) -> Vec<Complex64> {
    x.iter()
        .map(|v| Complex64::new(super::poly::to_f64(v), 0.0))
        .collect()
}

#[derive(Clone, Debug)]
pub struct OracleOptions {
    pub tracker: TrackerConfig,
    pub max_resamples: usize,
    pub max_recharts: usize,
    /// Taylor residual below which a candidate counts as a line.
    pub line_tolerance: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            tracker: TrackerConfig::default(),
            max_resamples: 10,
            max_recharts: 5,
            line_tolerance: 1e-6,
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub seed: u64,
    /// Cubics discarded before one was usable.
    pub retries: usize,
    /// Charts discarded on the accepted cubic.
    pub recharts: usize,
    pub count: usize,
    pub bezout: u64,
    pub converged: usize,
    pub diverged: usize,
    pub failed: usize,
    pub statuses: Vec<PathStatus>,
    pub max_backward_error: f64,
    pub max_line_residual: f64,
    pub form: DenseForm,
    pub lines: LineSystem,
    pub solutions: SolutionSet,
}

impl OracleReport {
    pub fn directions(&self) -> Vec<Vec<Complex64>> {
        self.solutions
            .solutions
            .iter()
            .map(|x| self.lines.direction(x))
            .collect()
    }
}

struct Attempt {
    lines: LineSystem,
    solutions: SolutionSet,
    count: usize,
    max_line_residual: f64,
    recharts: usize,
}

impl Attempt {
    fn is_complete(&self) -> bool {
        self.solutions.all_converged()
            && self.solutions.len() as u64 == self.lines.system.bezout_number()
    }
}

/// Solve on fresh charts until every path converges to its own solution, or
/// the budget is spent.
fn solve_lines(
    form: &DenseForm,
    point: &[Rational],
    rng: &mut ChaCha8Rng,
    opts: &OracleOptions,
) -> Result<Attempt, OracleError> {
    let mut recharts = 0;
    loop {
        let attempt = match lines_through_point_system(form, point, rng) {
            Ok(lines) => {
                let cfg = TrackerConfig {
                    gamma: tracker::random_unit(rng),
                    ..opts.tracker.clone()
                };
                let solutions = solve_total_degree(&lines.system, &cfg)?;
                let r = to_complex(point);
                let residuals: Vec<f64> = solutions
                    .solutions
                    .iter()
                    .map(|x| line_taylor_residual(form, &r, &lines.direction(x)))
                    .collect();
                let count = residuals
                    .iter()
                    .filter(|&&e| e <= opts.line_tolerance)
                    .count();
                let max_line_residual = residuals
                    .iter()
                    .copied()
                    .filter(|&e| e <= opts.line_tolerance)
                    .fold(0.0, f64::max);
                Some(Attempt {
                    count,
                    max_line_residual,
                    recharts,
                    lines,
                    solutions,
                })
            }
            Err(OracleError::DegenerateChart) => None,
            Err(e) => return Err(e),
        };
        match attempt {
            Some(a) if a.is_complete() => return Ok(a),
            Some(a) if recharts >= opts.max_recharts => return Ok(a),
            None if recharts >= opts.max_recharts => return Err(OracleError::DegenerateChart),
            _ => recharts += 1,
        }
    }
}

/// Count conics through `p`, `q` on random cubic threefolds drawn from `seed`.
pub fn count_conics_cubic_threefold(seed: u64) -> Result<OracleReport, OracleError> {
    count_conics_with(seed, &OracleOptions::default(), None)
}

/// As [`count_conics_cubic_threefold`]; `first_draw` replaces the first
/// random cubic.
pub fn count_conics_with(
    seed: u64,
    opts: &OracleOptions,
    first_draw: Option<DenseForm>,
) -> Result<OracleReport, OracleError> {
    opts.tracker.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pending = first_draw;
    for retries in 0..=opts.max_resamples {
        let form = pending
            .take()
            .unwrap_or_else(|| random_form(&mut rng, 3, &[0, 1]));
        let point = match residual_point(&form) {
            Ok(r) => r,
            Err(e) if e.is_resample() => continue,
            Err(e) => return Err(e),
        };
        let attempt = match solve_lines(&form, &point, &mut rng, opts) {
            Ok(a) => a,
            Err(e) if e.is_resample() => continue,
            Err(e) => return Err(e),
        };
        let s = &attempt.solutions;
        return Ok(OracleReport {
            seed,
            retries,
            recharts: attempt.recharts,
            count: attempt.count,
            bezout: attempt.lines.system.bezout_number(),
            converged: s.count(PathStatus::Converged),
            diverged: s.count(PathStatus::Diverged),
            failed: s.paths.iter().filter(|p| p.status.is_failure()).count(),
            statuses: s.paths.iter().map(|p| p.status).collect(),
            max_backward_error: s.max_backward_error(),
            max_line_residual: attempt.max_line_residual,
            form,
            lines: attempt.lines,
            solutions: attempt.solutions,
        });
    }
    Err(OracleError::ResamplesExhausted {
        attempts: opts.max_resamples + 1,
    })
}

#[derive(Clone, Debug)]
pub struct NegativeControl {
    pub seed: u64,
    /// Solutions of the first three Taylor equations.
    pub candidates: usize,
    /// Candidates that also kill the higher Taylor coefficients.
    pub lines: usize,
}

/// Lines through `p` on a random quartic threefold through `p`; generically
/// there are none.
pub fn quartic_negative_control(seed: u64) -> Result<NegativeControl, OracleError> {
    let opts = OracleOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..=opts.max_resamples {
        let form = random_form(&mut rng, 4, &[0]);
        let (p, _) = base_points();
        match solve_lines(&form, &p, &mut rng, &opts) {
            Ok(a) => {
                return Ok(NegativeControl {
                    seed,
                    candidates: a.solutions.len(),
                    lines: a.count,
                })
            }
            Err(e) if e.is_resample() => continue,
            Err(e) => return Err(e),
        }
    }
    Err(OracleError::ResamplesExhausted {
        attempts: opts.max_resamples + 1,
    })
}
