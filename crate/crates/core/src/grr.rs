//! Characteristic-class series on the universal conic family and the
//! Riemann-Roch comparison that determines the class of the boundary
//! divisor.
//!
//! The computation runs twice: once in the family ring, where
//! `c1(omega) = pi^*lambda - H` is expanded through the relations, and once
//! in a relation-free presentation ring with formal symbols `c1w` and `z`,
//! which yields the degree-two term in the familiar shape
//! `(1/12)z + (1/12)c1w^2 - z`. Pushing forward the latter requires only
//! `pi_*(z)` and `pi_*(c1w^2)`, so the two routes are independent checks of
//! each other.

use crate::chow::{
    integer, ratio, solve_linear_unknown, ChowClass, ChowError, GeneratorKind, Monomial, Rational,
    Ring, RingBuilder, UniversalFamily,
};
use thiserror::Error;

/// Highest degree carried by a series.
pub const SERIES_DEGREE: usize = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrrError {
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error("series is not invertible: degree-0 part is {0}")]
    NotInvertible(String),
    #[error("series component {degree} is not homogeneous of that degree")]
    Inhomogeneous { degree: usize },
}

/// Components of degrees `0..=2` of a multiplicative or additive
/// characteristic class.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterSeries {
    components: [ChowClass; SERIES_DEGREE + 1],
}

impl CharacterSeries {
    pub fn new(components: [ChowClass; SERIES_DEGREE + 1]) -> Result<Self, GrrError> {
        let ring = components[0].ring().clone();
        for (k, c) in components.iter().enumerate() {
            if !c.ring().same(&ring) {
                return Err(ChowError::RingMismatch.into());
            }
            if c.homogeneous_part(k as u32) != *c {
                return Err(GrrError::Inhomogeneous { degree: k });
            }
        }
        Ok(CharacterSeries { components })
    }

    /// Split a class into its homogeneous components of degree `<= 2`.
    pub fn from_class(x: &ChowClass) -> Self {
        CharacterSeries {
            components: [0, 1, 2].map(|k| x.homogeneous_part(k)),
        }
    }

    pub fn ring(&self) -> &Ring {
        self.components[0].ring()
    }

    pub fn degree(&self, k: usize) -> &ChowClass {
        &self.components[k]
    }

    pub fn total(&self) -> Result<ChowClass, ChowError> {
        self.components[1..]
            .iter()
            .try_fold(self.components[0].clone(), |acc, c| acc.add(c))
    }

    /// `(s*t)_k = sum_{i+j=k} s_i t_j`.
    pub fn mul(&self, other: &CharacterSeries) -> Result<CharacterSeries, GrrError> {
        let mut out = [0, 1, 2].map(|_| ChowClass::zero(self.ring()));
        for (i, a) in self.components.iter().enumerate() {
            for (j, b) in other.components.iter().enumerate() {
                if i + j <= SERIES_DEGREE {
                    out[i + j] = out[i + j].add(&a.mul(b)?)?;
                }
            }
        }
        CharacterSeries::new(out)
    }

    /// Truncated multiplicative inverse; needs degree-0 part equal to 1.
    pub fn invert(&self) -> Result<CharacterSeries, GrrError> {
        let unit = ChowClass::one(self.ring()).normalize()?;
        if self.components[0] != unit {
            return Err(GrrError::NotInvertible(self.components[0].to_string()));
        }
        let a1 = &self.components[1];
        let a2 = &self.components[2];
        let b1 = a1.neg();
        let b2 = a1.mul(a1)?.sub(a2)?;
        CharacterSeries::new([unit, b1, b2])
    }

    /// Multiply the degree-`i` component by `(-1)^i`: series of the dual.
    pub fn dual(&self) -> CharacterSeries {
        let mut out = self.components.clone();
        out[1] = out[1].neg();
        CharacterSeries { components: out }
    }

    /// Sum of `s_i * t_j` over `i + j = 2`, one entry per nonzero product,
    /// in order of decreasing `i`.
    pub fn degree_two_contributions(
        &self,
        other: &CharacterSeries,
    ) -> Result<Vec<ChowClass>, GrrError> {
        let mut out = Vec::new();
        for i in (0..=SERIES_DEGREE).rev() {
            let p = self.components[i].mul(&other.components[SERIES_DEGREE - i])?;
            if !p.is_zero() {
                out.push(p);
            }
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.to_string())
            .collect();
        crate::chow::join_signed(&parts)
    }
}

/// Todd series of a rank-one-like sheaf from its Chern classes:
/// `1 + c1/2 + (c1^2 + c2)/12`.
pub fn todd_from_chern(c1: &ChowClass, c2: &ChowClass) -> Result<CharacterSeries, GrrError> {
    let ring = c1.ring();
    let td2 = c1.mul(c1)?.add(c2)?.scale(&ratio(1, 12));
    CharacterSeries::new([
        ChowClass::one(ring).normalize()?,
        c1.scale(&ratio(1, 2)),
        td2,
    ])
}

/// Chern character of a rank-one sheaf from its Chern classes:
/// `1 + c1 + (c1^2 - 2 c2)/2`.
pub fn character_from_chern(c: &CharacterSeries) -> Result<CharacterSeries, GrrError> {
    let c1 = c.degree(1);
    let c2 = c.degree(2);
    let ch2 = c1.mul(c1)?.sub(&c2.scale(&integer(2)))?.scale(&ratio(1, 2));
    CharacterSeries::new([c.degree(0).clone(), c1.clone(), ch2])
}

/// `exp(d) = 1 + d + d^2/2` truncated at degree 2: Chern character of `O(d)`.
pub fn exponential(d: &ChowClass) -> Result<CharacterSeries, GrrError> {
    let ring = d.ring();
    CharacterSeries::new([
        ChowClass::one(ring).normalize()?,
        d.clone(),
        d.mul(d)?.scale(&ratio(1, 2)),
    ])
}

/// `td(T_pi)`: the Todd series of `Omega_{U/F}` (with `c1 = c1(omega)` and
/// `c2 = [Z]`) with odd components negated.
pub fn todd_relative_tangent(u: &UniversalFamily) -> Result<CharacterSeries, GrrError> {
    Ok(todd_from_chern(&u.c1_omega()?, &u.nodal_class().normalize()?)?.dual())
}

/// `ch(I_Z) = 1 + 0 - [Z]`.
pub fn chern_character_nodal_ideal(u: &UniversalFamily) -> Result<CharacterSeries, GrrError> {
    let ring = &u.family;
    CharacterSeries::new([
        ChowClass::one(ring).normalize()?,
        ChowClass::zero(ring),
        u.nodal_class().neg().normalize()?,
    ])
}

/// `c(I_Z)` from the Whitney formula `c(I_Z) c(O_Z) = 1` with
/// `c(O_Z) = 1 - [Z]` up to degree 2.
pub fn whitney_ideal_chern(u: &UniversalFamily) -> Result<CharacterSeries, GrrError> {
    let ring = &u.family;
    let structure_sheaf = CharacterSeries::new([
        ChowClass::one(ring).normalize()?,
        ChowClass::zero(ring),
        u.nodal_class().neg().normalize()?,
    ])?;
    structure_sheaf.invert()
}

/// Relation-free ring with symbols `c1w` (degree 1) and `z` (degree 2).
#[derive(Clone, Debug)]
pub struct Presentation {
    pub ring: Ring,
    pub c1w: ChowClass,
    pub z: ChowClass,
}

impl Presentation {
    pub fn new() -> Self {
        let mut b = RingBuilder::new(2);
        b.generator("c1w", 1, GeneratorKind::Symbol)
            .expect("fresh name");
        b.generator("z", 2, GeneratorKind::Symbol)
            .expect("fresh name");
        let ring = b.build().expect("no relations to validate");
        let c1w = ring.class("c1w").expect("declared");
        let z = ring.class("z").expect("declared");
        Presentation { ring, c1w, z }
    }

    pub fn todd(&self) -> Result<CharacterSeries, GrrError> {
        Ok(todd_from_chern(&self.c1w, &self.z)?.dual())
    }

    pub fn nodal_ideal_character(&self) -> Result<CharacterSeries, GrrError> {
        CharacterSeries::new([
            ChowClass::one(&self.ring),
            ChowClass::zero(&self.ring),
            self.z.neg(),
        ])
    }

    /// `(td(T_pi) * ch(I_Z))_2` written as its separate contributions.
    pub fn degree_two_rendered(&self) -> Result<String, GrrError> {
        let parts: Vec<String> = self
            .todd()?
            .degree_two_contributions(&self.nodal_ideal_character()?)?
            .iter()
            .map(|c| c.to_string())
            .collect();
        Ok(crate::chow::join_signed(&parts))
    }
}

impl Default for Presentation {
    fn default() -> Self {
        Self::new()
    }
}

/// Every stage of the boundary-divisor computation.
#[derive(Clone, Debug)]
pub struct GrrTranscript {
    pub todd: CharacterSeries,
    pub nodal_character: CharacterSeries,
    pub whitney: CharacterSeries,
    pub degree_two: ChowClass,
    pub degree_two_presented: String,
    pub lhs: ChowClass,
    pub rhs: ChowClass,
    /// `Delta = k * lambda`.
    pub k: Rational,
}

/// Degree-1 part of `ch(pi_! I_Z) = ch(O_F) - ch(O_Delta) = ch(O_F(-Delta))`.
fn riemann_roch_rhs(u: &UniversalFamily) -> Result<ChowClass, GrrError> {
    Ok(exponential(&u.delta_class().neg())?.degree(1).clone())
}

pub fn grr_transcript(u: &UniversalFamily) -> Result<GrrTranscript, GrrError> {
    let todd = todd_relative_tangent(u)?;
    let nodal_character = chern_character_nodal_ideal(u)?;
    let whitney = whitney_ideal_chern(u)?;
    let degree_two = todd.mul(&nodal_character)?.degree(2).clone();
    let lhs = degree_two.pushforward()?;
    let rhs = riemann_roch_rhs(u)?;
    let k = solve_linear_unknown(&lhs, &rhs, u.delta, u.lambda)?;
    Ok(GrrTranscript {
        todd,
        nodal_character,
        whitney,
        degree_two,
        degree_two_presented: Presentation::new().degree_two_rendered()?,
        lhs,
        rhs,
        k,
    })
}

/// Coefficient `k` with `Delta = k * lambda`.
pub fn derive_boundary_divisor(u: &UniversalFamily) -> Result<Rational, GrrError> {
    Ok(grr_transcript(u)?.k)
}

/// Same comparison through the presentation ring, with `pi_*(c1w^2)` supplied
/// by the caller and `pi_*(z)` taken from the family's pushforward rules.
pub fn boundary_coefficient_given(
    u: &UniversalFamily,
    pushed_c1w_squared: &ChowClass,
) -> Result<Rational, GrrError> {
    let p = Presentation::new();
    let degree_two = p
        .todd()?
        .mul(&p.nodal_ideal_character()?)?
        .degree(2)
        .clone();
    let z_id = p.ring.generator("z")?;
    let w_id = p.ring.generator("c1w")?;
    let pushed_z = u.nodal_class().pushforward()?;
    let mut lhs = ChowClass::zero(&u.base);
    for (m, c) in degree_two.terms() {
        let image = if *m == Monomial::var(z_id) {
            &pushed_z
        } else if *m == Monomial::power(w_id, 2) {
            pushed_c1w_squared
        } else {
            return Err(ChowError::MissingPushforwardRule(p.ring.render_monomial(m)).into());
        };
        lhs = lhs.add(&image.scale(c))?;
    }
    let rhs = riemann_roch_rhs(u)?;
    Ok(solve_linear_unknown(&lhs, &rhs, u.delta, u.lambda)?)
}

/// True iff `pi_*(c1(omega)^2) = -2 lambda` exactly.
pub fn verify_cycle_corollary(u: &UniversalFamily) -> bool {
    let pushed = u
        .c1_omega()
        .and_then(|w| w.mul(&w))
        .and_then(|w2| w2.pushforward());
    match pushed {
        Ok(p) => p == u.lambda_class().scale(&integer(-2)),
        Err(_) => false,
    }
}

/// `pi_*(c1(omega)^2)` in the base ring.
pub fn pushed_c1_omega_squared(u: &UniversalFamily) -> Result<ChowClass, ChowError> {
    let w = u.c1_omega()?;
    w.mul(&w)?.pushforward()
}
