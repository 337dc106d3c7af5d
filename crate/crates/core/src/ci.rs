//! Complete-intersection types and the derived description of the fiber
//! `F` of conics through two general points.

use num::{BigInt, BigRational, BigUint, One};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CiError {
    #[error("a complete-intersection type needs at least one degree")]
    EmptyDegrees,
    #[error("hypersurface degrees must be >= 1")]
    DegreeZero,
    #[error("ambient dimension must be >= 1")]
    AmbientZero,
    #[error("{codim} equations cannot cut a variety out of P^{ambient}")]
    TooManyEquations { codim: usize, ambient: u32 },
    #[error("hypothesis violated: {0}")]
    Hypothesis(&'static str),
    #[error("canonical class routes disagree: adjunction {adjunction}, closed form {closed_form}")]
    Inconsistent { adjunction: i64, closed_form: i64 },
}

/// Multidegree of a complete intersection together with its ambient
/// projective dimension. Degrees are kept sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CIType {
    degrees: Vec<u32>,
    ambient: u32,
}

impl CIType {
    pub fn new(mut degrees: Vec<u32>, ambient: u32) -> Result<Self, CiError> {
        if degrees.is_empty() {
            return Err(CiError::EmptyDegrees);
        }
        if degrees.contains(&0) {
            return Err(CiError::DegreeZero);
        }
        if ambient == 0 {
            return Err(CiError::AmbientZero);
        }
        if degrees.len() > ambient as usize {
            return Err(CiError::TooManyEquations {
                codim: degrees.len(),
                ambient,
            });
        }
        degrees.sort_unstable();
        Ok(CIType { degrees, ambient })
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn ambient(&self) -> u32 {
        self.ambient
    }

    pub fn codim(&self) -> usize {
        self.degrees.len()
    }

    pub fn dimension(&self) -> u32 {
        self.ambient - self.degrees.len() as u32
    }
}

impl fmt::Display for CIType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in P^{}", render_degrees(&self.degrees), self.ambient)
    }
}

pub fn render_degrees(degrees: &[u32]) -> String {
    let inner: Vec<String> = degrees.iter().map(u32::to_string).collect();
    format!("({})", inner.join(","))
}

fn degree_sum(degrees: &[u32]) -> i64 {
    degrees.iter().map(|&d| d as i64).sum()
}

fn square_sum(degrees: &[u32]) -> i64 {
    degrees.iter().map(|&d| (d as i64) * (d as i64)).sum()
}

/// `2*sum(d) - c + 1`, the ambient bound of the main theorem.
pub fn main_theorem_bound(degrees: &[u32]) -> i64 {
    2 * degree_sum(degrees) - degrees.len() as i64 + 1
}

/// `2*sum(d) - c - 1`: the looser bound of the setup, equivalently the
/// ambient at which the fiber becomes zero-dimensional.
pub fn setup_bound(degrees: &[u32]) -> i64 {
    2 * degree_sum(degrees) - degrees.len() as i64 - 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HypothesisFlags {
    /// Every degree is at least 2.
    pub degrees_ok: bool,
    pub not_quadric_hypersurface: bool,
    /// `N >= 2*sum(d) - c + 1`.
    pub main_thm_bound: bool,
    /// `N + 3 - sum(d^2) > 0`.
    pub fano_bound: bool,
    /// `N >= 2*sum(d) - c - 1` (informational; fiber dimension >= 0).
    pub setup_bound: bool,
}

impl HypothesisFlags {
    /// Conditions under which fiber data is defined.
    pub fn admissible(&self) -> bool {
        self.degrees_ok && self.not_quadric_hypersurface && self.setup_bound
    }

    /// Hypotheses of the main theorem.
    pub fn main_theorem(&self) -> bool {
        self.degrees_ok && self.not_quadric_hypersurface && self.main_thm_bound
    }
}

pub fn validate(t: &CIType) -> HypothesisFlags {
    let n = t.ambient as i64;
    let d = &t.degrees;
    HypothesisFlags {
        degrees_ok: d.iter().all(|&x| x >= 2),
        not_quadric_hypersurface: d.as_slice() != [2],
        main_thm_bound: n >= main_theorem_bound(d),
        fano_bound: n + 3 - square_sum(d) > 0,
        setup_bound: n >= setup_bound(d),
    }
}

fn require_admissible(t: &CIType) -> Result<(), CiError> {
    let flags = validate(t);
    if !flags.degrees_ok {
        return Err(CiError::Hypothesis("all degrees must be >= 2"));
    }
    if !flags.not_quadric_hypersurface {
        return Err(CiError::Hypothesis("X must not be a quadric hypersurface"));
    }
    if !flags.setup_bound {
        return Err(CiError::Hypothesis(
            "ambient too small: fiber would be empty",
        ));
    }
    Ok(())
}

/// `N + 1 - 2*sum(d) + c`.
pub fn fiber_dimension(t: &CIType) -> Result<u32, CiError> {
    require_admissible(t)?;
    let dim = t.ambient as i64 + 1 - 2 * degree_sum(&t.degrees) + t.codim() as i64;
    Ok(dim as u32)
}

/// Concatenation over `d` of `(1,1,2,2,...,d-1,d-1,d)`, sorted.
pub fn boundary_tuple(degrees: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = degrees
        .iter()
        .flat_map(|&d| (1..d).flat_map(|k| [k, k]).chain(std::iter::once(d)))
        .collect();
    out.sort_unstable();
    out
}

fn remove_one(v: &mut Vec<u32>, x: u32) -> bool {
    match v.iter().position(|&y| y == x) {
        Some(i) => {
            v.remove(i);
            true
        }
        None => false,
    }
}

/// The boundary tuple with one occurrence each of 1, 1 and 2 removed; no
/// ambient or hypothesis checks.
pub fn fiber_degrees(degrees: &[u32]) -> Result<Vec<u32>, CiError> {
    let mut v = boundary_tuple(degrees);
    for x in [1, 1, 2] {
        if !remove_one(&mut v, x) {
            return Err(CiError::Hypothesis("tuple has no (1,1,2) to remove"));
        }
    }
    if v.is_empty() {
        return Err(CiError::Hypothesis("X must not be a quadric hypersurface"));
    }
    Ok(v)
}

/// Type of `F` in `P^(N-2)`.
pub fn fiber_type(t: &CIType) -> Result<CIType, CiError> {
    require_admissible(t)?;
    CIType::new(fiber_degrees(&t.degrees)?, t.ambient - 2)
}

/// Type of the boundary divisor in `P^(N-2)`: the boundary tuple minus two
/// 1's. Fails when `F` is zero-dimensional (empty boundary).
pub fn boundary_type(t: &CIType) -> Result<CIType, CiError> {
    require_admissible(t)?;
    let mut v = boundary_tuple(&t.degrees);
    remove_one(&mut v, 1);
    remove_one(&mut v, 1);
    if v.len() > (t.ambient - 2) as usize {
        return Err(CiError::Hypothesis(
            "fiber is zero-dimensional: boundary is empty",
        ));
    }
    CIType::new(v, t.ambient - 2)
}

/// Bezout degree: product of the degrees.
pub fn degree(t: &CIType) -> BigUint {
    t.degrees.iter().map(|&d| BigUint::from(d)).product()
}

/// Coefficient `k` with `K_F = k * O(1)`, computed by adjunction on the
/// fiber type and by the closed form `-(N + 3 - sum(d^2))`.
pub fn canonical_coefficient(t: &CIType) -> Result<i64, CiError> {
    let ft = fiber_type(t)?;
    let adjunction = degree_sum(ft.degrees()) - ft.ambient() as i64 - 1;
    let closed_form = -(t.ambient as i64 + 3 - square_sum(&t.degrees));
    if adjunction != closed_form {
        return Err(CiError::Inconsistent {
            adjunction,
            closed_form,
        });
    }
    Ok(adjunction)
}

fn factorial(n: u32) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `prod((d!)^2)`.
pub fn factorial_square_product(degrees: &[u32]) -> BigUint {
    degrees
        .iter()
        .map(|&d| {
            let f = factorial(d);
            &f * &f
        })
        .product()
}

/// Number of conics through two general points on the zero-dimensional
/// slice: `prod((d!)^2) / (2 * prod(d))`.
pub fn conic_count(degrees: &[u32]) -> Result<BigRational, CiError> {
    if degrees.is_empty() {
        return Err(CiError::EmptyDegrees);
    }
    if degrees.iter().any(|&d| d < 2) {
        return Err(CiError::Hypothesis("all degrees must be >= 2"));
    }
    let bezout: BigUint = degrees.iter().map(|&d| BigUint::from(d)).product();
    let numer = BigInt::from(factorial_square_product(degrees));
    let denom = BigInt::from(bezout) * 2;
    Ok(BigRational::new(numer, denom))
}

/// Ambient `2*sum(d) - c - 1` at which `F` is a finite set of points.
pub fn slice_to_points(degrees: &[u32]) -> Result<CIType, CiError> {
    if degrees.iter().any(|&d| d < 2) {
        return Err(CiError::Hypothesis("all degrees must be >= 2"));
    }
    let n = setup_bound(degrees);
    CIType::new(degrees.to_vec(), n as u32)
}

/// `2 * prod(d) * deg(fiber) == prod((d!)^2)`.
pub fn degree_identity_holds(degrees: &[u32]) -> bool {
    let Ok(fiber) = fiber_degrees(degrees) else {
        return false;
    };
    let fiber_deg: BigUint = fiber.iter().map(|&d| BigUint::from(d)).product();
    let bezout: BigUint = degrees.iter().map(|&d| BigUint::from(d)).product();
    bezout * fiber_deg * 2u32 == factorial_square_product(degrees)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiberReport {
    pub input: CIType,
    pub flags: HypothesisFlags,
    pub fiber_dim: Option<u32>,
    pub fiber_type: Option<CIType>,
    pub boundary_type: Option<CIType>,
    pub fiber_degree: Option<BigUint>,
    pub canonical_coeff: Option<i64>,
    pub conic_count: Option<BigRational>,
    pub count_is_integer: bool,
    pub notes: Vec<String>,
}

pub fn fiber_report(t: &CIType) -> Result<FiberReport, CiError> {
    let flags = validate(t);
    let mut notes = Vec::new();
    let (fiber_dim, fiber_ty, boundary_ty, fiber_degree, canonical) = if flags.admissible() {
        let ft = fiber_type(t)?;
        let deg = degree(&ft);
        (
            Some(fiber_dimension(t)?),
            Some(ft),
            boundary_type(t).ok(),
            Some(deg),
            Some(canonical_coefficient(t)?),
        )
    } else {
        (None, None, None, None, None)
    };
    if flags.admissible() && !flags.main_thm_bound {
        notes.push(format!(
            "ambient below the main-theorem bound {}; fiber data extrapolated by slicing",
            main_theorem_bound(&t.degrees)
        ));
    }
    let count = conic_count(&t.degrees).ok();
    if count.is_some() {
        let slice = slice_to_points(&t.degrees)?;
        notes.push(format!("conic count obtained via slicing to {slice}"));
    }
    let count_is_integer = count.as_ref().is_some_and(|c| c.denom().is_one());
    Ok(FiberReport {
        input: t.clone(),
        flags,
        fiber_dim,
        fiber_type: fiber_ty,
        boundary_type: boundary_ty,
        fiber_degree,
        canonical_coeff: canonical,
        conic_count: count,
        count_is_integer,
        notes,
    })
}

/// All sorted degree tuples with `1 <= c <= max_codim` and
/// `2 <= d <= max_degree`, in lexicographic order by codimension first.
pub fn enumerate_types(max_codim: usize, max_degree: u32) -> Vec<Vec<u32>> {
    fn extend(prefix: &mut Vec<u32>, len: usize, lo: u32, hi: u32, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for d in lo..=hi {
            prefix.push(d);
            extend(prefix, len, d, hi, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for c in 1..=max_codim {
        extend(&mut Vec::new(), c, 2, max_degree, &mut out);
    }
    out
}
