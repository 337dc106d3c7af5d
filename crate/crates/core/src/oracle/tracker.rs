//! Total-degree homotopy continuation.
//!
//! Paths run from the roots of `x_i^{d_i} - 1` along
//! `H(x, t) = (1 - t) gamma G(x) + t S(x)` with an Euler predictor and a
//! Newton corrector, then get polished against `S` at `t = 1`.

use super::system::PolySystem;
use super::OracleError;
use nalgebra::DVector;
use num::complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq)]
pub struct TrackerConfig {
    pub initial_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    pub corrector_tolerance: f64,
    pub max_corrector_iterations: usize,
    /// Backward error a polished endpoint must reach to count as a solution.
    pub success_residual: f64,
    pub dedup_distance: f64,
    pub divergence_bound: f64,
    pub max_steps: usize,
    pub polish_iterations: usize,
    pub gamma: Complex64,
}

impl Default for TrackerConfig {
    fn default() -> Self {
        TrackerConfig {
            initial_step: 0.05,
            min_step: 1e-10,
            max_step: 0.1,
            corrector_tolerance: 1e-10,
            max_corrector_iterations: 5,
            success_residual: 1e-8,
            dedup_distance: 1e-6,
            divergence_bound: 1e8,
            max_steps: 200_000,
            polish_iterations: 20,
            gamma: Complex64::new(0.6, 0.8),
        }
    }
}

impl TrackerConfig {
    /// Default settings with a random unit `gamma`.
    pub fn with_random_gamma<R: Rng + ?Sized>(rng: &mut R) -> Self {
        TrackerConfig {
            gamma: random_unit(rng),
            ..TrackerConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        let positive = [
            self.initial_step,
            self.min_step,
            self.max_step,
            self.corrector_tolerance,
            self.success_residual,
            self.dedup_distance,
            self.divergence_bound,
        ];
        if positive.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(OracleError::InvalidConfig(
                "tolerances and step sizes must be positive",
            ));
        }
        if self.min_step > self.initial_step || self.initial_step > self.max_step {
            return Err(OracleError::InvalidConfig(
                "need min_step <= initial_step <= max_step",
            ));
        }
        if self.max_corrector_iterations == 0 {
            return Err(OracleError::InvalidConfig(
                "corrector needs at least one iteration",
            ));
        }
        let norm = self.gamma.norm();
        if !norm.is_finite() || norm <= 0.0 {
            return Err(OracleError::InvalidConfig(
                "gamma must be a nonzero complex number",
            ));
        }
        Ok(())
    }
}

pub fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let theta = rng.random_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(1.0, theta)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PathStatus {
    Converged,
    Diverged,
    /// The step size fell below `min_step`.
    StepUnderflow,
    /// Reached `t = 1` without meeting `success_residual`.
    ResidualTooLarge,
}

impl PathStatus {
    pub fn name(self) -> &'static str {
        match self {
            PathStatus::Converged => "converged",
            PathStatus::Diverged => "diverged",
            PathStatus::StepUnderflow => "step_underflow",
            PathStatus::ResidualTooLarge => "residual_too_large",
        }
    }

    pub fn is_failure(self) -> bool {
        matches!(
            self,
            PathStatus::StepUnderflow | PathStatus::ResidualTooLarge
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathResult {
    pub start: Vec<Complex64>,
    pub end: Vec<Complex64>,
    pub status: PathStatus,
    pub backward_error: f64,
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionSet {
    /// Distinct converged endpoints in a canonical order.
    pub solutions: Vec<Vec<Complex64>>,
    pub paths: Vec<PathResult>,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn count(&self, status: PathStatus) -> usize {
        self.paths.iter().filter(|p| p.status == status).count()
    }

    pub fn all_converged(&self) -> bool {
        self.paths.iter().all(|p| p.status == PathStatus::Converged)
    }

    pub fn max_backward_error(&self) -> f64 {
        self.paths
            .iter()
            .filter(|p| p.status == PathStatus::Converged)
            .map(|p| p.backward_error)
            .fold(0.0, f64::max)
    }
}

struct Homotopy<'a> {
    target: &'a PolySystem,
    degrees: Vec<u32>,
    gamma: Complex64,
}

impl Homotopy<'_> {
    fn start_value(&self, x: &[Complex64]) -> DVector<Complex64> {
        DVector::from_iterator(
            x.len(),
            x.iter().zip(&self.degrees).map(|(xi, &d)| xi.powu(d) - 1.0),
        )
    }

    fn value(&self, x: &[Complex64], t: f64) -> DVector<Complex64> {
        self.start_value(x) * (self.gamma * (1.0 - t))
            + self.target.eval(x) * Complex64::new(t, 0.0)
    }

    fn jacobian_x(&self, x: &[Complex64], t: f64) -> nalgebra::DMatrix<Complex64> {
        let mut j = self.target.jacobian(x) * Complex64::new(t, 0.0);
        let g = self.gamma * (1.0 - t);
        for (i, (xi, &d)) in x.iter().zip(&self.degrees).enumerate() {
            j[(i, i)] += g * f64::from(d) * xi.powu(d - 1);
        }
        j
    }

    fn derivative_t(&self, x: &[Complex64]) -> DVector<Complex64> {
        self.target.eval(x) - self.start_value(x) * self.gamma
    }
}

fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

fn newton_step(
    j: nalgebra::DMatrix<Complex64>,
    r: DVector<Complex64>,
) -> Option<DVector<Complex64>> {
    let dx = j.lu().solve(&(-r))?;
    dx.iter()
        .all(|v| v.re.is_finite() && v.im.is_finite())
        .then_some(dx)
}

fn add(x: &[Complex64], dx: &DVector<Complex64>, h: f64) -> Vec<Complex64> {
    x.iter().zip(dx.iter()).map(|(a, b)| a + b * h).collect()
}

/// Corrector at fixed `t`; `None` when Newton does not settle.
fn correct(
    hom: &Homotopy,
    mut x: Vec<Complex64>,
    t: f64,
    cfg: &TrackerConfig,
) -> Option<Vec<Complex64>> {
    let mut previous = f64::INFINITY;
    for _ in 0..cfg.max_corrector_iterations {
        let dx = newton_step(hom.jacobian_x(&x, t), hom.value(&x, t))?;
        x = add(&x, &dx, 1.0);
        let size = dx.norm();
        if size <= cfg.corrector_tolerance * (1.0 + norm(&x)) {
            return Some(x);
        }
        if size > 0.5 * previous {
            return None;
        }
        previous = size;
    }
    None
}

fn track(hom: &Homotopy, start: Vec<Complex64>, cfg: &TrackerConfig) -> PathResult {
    let mut x = start.clone();
    let mut t = 0.0;
    let mut h = cfg.initial_step;
    let mut streak = 0;
    let mut steps = 0;
    let finish = |end: Vec<Complex64>, status, steps| PathResult {
        backward_error: hom.target.backward_error(&end),
        start: start.clone(),
        end,
        status,
        steps,
    };

    while t < 1.0 {
        steps += 1;
        if steps > cfg.max_steps {
            return finish(x, PathStatus::StepUnderflow, steps);
        }
        let dt = h.min(1.0 - t);
        let t1 = if dt == 1.0 - t { 1.0 } else { t + dt };
        let accepted = newton_step(hom.jacobian_x(&x, t), hom.derivative_t(&x))
            .map(|v| add(&x, &v, dt))
            .and_then(|guess| correct(hom, guess, t1, cfg));
        match accepted {
            Some(next) => {
                x = next;
                t = t1;
                if norm(&x) > cfg.divergence_bound {
                    return finish(x, PathStatus::Diverged, steps);
                }
                streak += 1;
                if streak >= 3 {
                    h = (2.0 * h).min(cfg.max_step);
                    streak = 0;
                }
            }
            None => {
                h /= 2.0;
                streak = 0;
                if h < cfg.min_step {
                    return finish(x, PathStatus::StepUnderflow, steps);
                }
            }
        }
    }

    for _ in 0..cfg.polish_iterations {
        let Some(dx) = newton_step(hom.target.jacobian(&x), hom.target.eval(&x)) else {
            break;
        };
        x = add(&x, &dx, 1.0);
        if dx.norm() <= f64::EPSILON * (1.0 + norm(&x)) {
            break;
        }
    }
    let status = if norm(&x) > cfg.divergence_bound {
        PathStatus::Diverged
    } else if hom.target.backward_error(&x) <= cfg.success_residual {
        PathStatus::Converged
    } else {
        PathStatus::ResidualTooLarge
    };
    finish(x, status, steps)
}

/// All tuples of `d_i`-th roots of unity, lexicographic in the root indices.
pub fn start_solutions(degrees: &[u32]) -> Vec<Vec<Complex64>> {
    let mut out = vec![Vec::new()];
    for &d in degrees {
        let roots: Vec<Complex64> = (0..d)
            .map(|k| {
                Complex64::from_polar(1.0, std::f64::consts::TAU * f64::from(k) / f64::from(d))
            })
            .collect();
        out = out
            .into_iter()
            .flat_map(|prefix| {
                roots.iter().map(move |r| {
                    let mut p = prefix.clone();
                    p.push(*r);
                    p
                })
            })
            .collect();
    }
    out
}

fn lex(a: &[Complex64], b: &[Complex64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Distinct points up to `tol`, in lexicographic order. The result does not
/// depend on the order of `points`.
pub fn dedup_points(mut points: Vec<Vec<Complex64>>, tol: f64) -> Vec<Vec<Complex64>> {
    points.sort_by(|a, b| lex(a, b));
    let mut kept: Vec<Vec<Complex64>> = Vec::new();
    for p in points {
        if kept.iter().all(|k| distance(k, &p) > tol) {
            kept.push(p);
        }
    }
    kept
}

pub fn solve_total_degree(
    system: &PolySystem,
    cfg: &TrackerConfig,
) -> Result<SolutionSet, OracleError> {
    cfg.validate()?;
    if !system.is_square() {
        return Err(OracleError::NotSquare {
            equations: system.equations().len(),
            variables: system.nvars(),
        });
    }
    let degrees = system.degrees();
    if degrees.contains(&0) {
        return Err(OracleError::InvalidConfig(
            "every equation needs positive degree",
        ));
    }
    let hom = Homotopy {
        target: system,
        degrees: degrees.clone(),
        gamma: cfg.gamma,
    };
    let paths: Vec<PathResult> = start_solutions(&degrees)
        .into_par_iter()
        .map(|s| track(&hom, s, cfg))
        .collect();
    if paths.iter().all(|p| p.status.is_failure()) {
        return Err(OracleError::AllPathsFailed { paths: paths.len() });
    }
    let finite = paths
        .iter()
        .filter(|p| p.status == PathStatus::Converged)
        .map(|p| p.end.clone())
        .collect();
    Ok(SolutionSet {
        solutions: dedup_points(finite, cfg.dedup_distance),
        paths,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::system::ComplexPoly;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn start_solution_count() {
        let s = start_solutions(&[1, 2, 3]);
        assert_eq!(s.len(), 6);
        assert!(s.iter().all(|p| (p[2].powu(3) - 1.0).norm() < 1e-14));
    }

    #[test]
    fn start_system_as_target() {
        let f = ComplexPoly::new(1, vec![(vec![2], c(1.0)), (vec![0], c(-1.0))]);
        let sol =
            solve_total_degree(&PolySystem::new(1, vec![f]), &TrackerConfig::default()).unwrap();
        assert_eq!(sol.len(), 2);
        assert!((sol.solutions[0][0] - c(-1.0)).norm() < 1e-12);
        assert!((sol.solutions[1][0] - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn circle_of_radius_two_meets_diagonal() {
        let s = PolySystem::new(
            2,
            vec![
                ComplexPoly::new(
                    2,
                    vec![
                        (vec![2, 0], c(1.0)),
                        (vec![0, 2], c(1.0)),
                        (vec![0, 0], c(-2.0)),
                    ],
                ),
                ComplexPoly::new(2, vec![(vec![1, 0], c(1.0)), (vec![0, 1], c(-1.0))]),
            ],
        );
        let sol = solve_total_degree(&s, &TrackerConfig::default()).unwrap();
        assert_eq!(sol.len(), 2);
        for (got, want) in sol.solutions.iter().zip([-1.0, 1.0]) {
            assert!((got[0] - c(want)).norm() < 1e-10);
            assert!((got[1] - c(want)).norm() < 1e-10);
        }
    }

    #[test]
    fn univariate_roots() {
        // (x - 1)(x - 2)(x + 3) = x^3 - 7x + 6
        let f = ComplexPoly::new(
            1,
            vec![(vec![3], c(1.0)), (vec![1], c(-7.0)), (vec![0], c(6.0))],
        );
        let sol =
            solve_total_degree(&PolySystem::new(1, vec![f]), &TrackerConfig::default()).unwrap();
        assert_eq!(sol.len(), 3);
        let mut re: Vec<f64> = sol.solutions.iter().map(|p| p[0].re).collect();
        re.sort_by(f64::total_cmp);
        for (got, want) in re.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-9);
        }
    }

    #[test]
    fn circle_meets_line_twice() {
        let s = PolySystem::new(
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
        );
        let sol = solve_total_degree(&s, &TrackerConfig::default()).unwrap();
        assert_eq!(sol.len(), 2);
        assert!(sol.max_backward_error() <= 1e-8);
    }

    #[test]
    fn paths_to_infinity_diverge() {
        // xy - 1, x - 2: Bezout bound 2, one finite solution
        let s = PolySystem::new(
            2,
            vec![
                ComplexPoly::new(2, vec![(vec![1, 1], c(1.0)), (vec![0, 0], c(-1.0))]),
                ComplexPoly::new(2, vec![(vec![1, 0], c(1.0)), (vec![0, 0], c(-2.0))]),
            ],
        );
        let sol = solve_total_degree(&s, &TrackerConfig::default()).unwrap();
        assert_eq!(sol.len(), 1);
        assert!((sol.solutions[0][1] - c(0.5)).norm() < 1e-9);
        assert_eq!(sol.count(PathStatus::Converged), 1);
    }

    #[test]
    fn rejects_bad_input() {
        let f = ComplexPoly::new(2, vec![(vec![1, 0], c(1.0))]);
        assert!(matches!(
            solve_total_degree(&PolySystem::new(2, vec![f]), &TrackerConfig::default()),
            Err(OracleError::NotSquare {
                equations: 1,
                variables: 2
            })
        ));
        let bad = TrackerConfig {
            min_step: 0.0,
            ..TrackerConfig::default()
        };
        assert!(matches!(bad.validate(), Err(OracleError::InvalidConfig(_))));
    }

    #[test]
    fn dedup_is_order_independent() {
        let a = vec![c(1.0), c(2.0)];
        let b = vec![c(1.0 + 1e-9), c(2.0)];
        let d = vec![c(-1.0), c(0.0)];
        let one = dedup_points(vec![a.clone(), b.clone(), d.clone()], 1e-6);
        let two = dedup_points(vec![d, b, a], 1e-6);
        assert_eq!(one, two);
        assert_eq!(one.len(), 2);
    }
}
