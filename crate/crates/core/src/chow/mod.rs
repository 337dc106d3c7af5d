//! Truncated, graded commutative algebra of cycle classes with exact
//! rational coefficients.
//!
//! A [`Ring`] is a set of named generators together with a [`RelationSet`]:
//! monomial rewrite rules applied to a fixed point, and (optionally) the
//! pushforward rules of a family `U -> F` into a base ring. Elements are
//! [`ChowClass`] values; every stored monomial has total degree at most the
//! ring's truncation.

mod class;
mod family;

pub use class::{solve_linear_unknown, ChowClass};
pub use family::{make_universal_family_ring, FamilyOptions, UniversalFamily};

use num::{BigInt, BigRational, One, Zero};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

pub type Rational = BigRational;

/// Maximum number of rewrite passes before normalization gives up.
pub const MAX_REWRITE_PASSES: usize = 100;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChowError {
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("generator `{0}` must have degree >= 1")]
    ZeroDegree(String),
    #[error("no generator named `{0}`")]
    UnknownGenerator(String),
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("rewriting did not reach a fixed point within {0} passes")]
    RewriteLimit(usize),
    #[error("rule `{0}` is not homogeneous")]
    InhomogeneousRule(String),
    #[error("rule `{0}` does not decrease the termination measure")]
    NonTerminatingRule(String),
    #[error("rules are not confluent on the critical pair `{0}`")]
    NonConfluent(String),
    #[error("ring has no pushforward structure")]
    NoPushforward,
    #[error("no pushforward rule applies to `{0}`")]
    MissingPushforwardRule(String),
    #[error("generator `{0}` has no base class to pull back from")]
    UnmappedPullback(String),
    #[error("unknown `{0}` does not occur linearly in the equation")]
    DegenerateUnknown(String),
    #[error("residual `{0}` lies outside the span of the basis class")]
    OutsideSpan(String),
}

/// Role of a generator in the universal-family model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// Pullback of a class from the base, e.g. `pi^* lambda`.
    BasePullback,
    /// Class of a marked-point section.
    Section,
    /// Codimension-two class of the nodal locus.
    NodalCycle,
    /// Divisor on the base whose class is being solved for.
    UnknownDivisor,
    /// Pullback of the ambient hyperplane class; eliminated by rewriting.
    AmbientHyperplane,
    /// Ordinary class living on the base itself.
    Base,
    /// Formal symbol with no relations, used to present formulas.
    Symbol,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub kind: GeneratorKind,
}

/// Index of a generator inside its ring, in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId(usize);

impl GenId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Sparse monomial: sorted `(generator, exponent)` pairs with positive
/// exponents. The empty monomial is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(GenId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(g: GenId) -> Self {
        Monomial(vec![(g, 1)])
    }

    pub fn power(g: GenId, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(g, exp)])
        }
    }

    pub fn from_factors<I: IntoIterator<Item = (GenId, u32)>>(factors: I) -> Self {
        factors.into_iter().fold(Monomial::one(), |acc, (g, e)| {
            acc.mul(&Monomial::power(g, e))
        })
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(GenId, u32)] {
        &self.0
    }

    pub fn exponent(&self, g: GenId) -> u32 {
        self.0
            .iter()
            .find(|(h, _)| *h == g)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// Number of generator factors counted with multiplicity.
    pub fn factor_count(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, ea) = self.0[i];
            let (b, eb) = other.0[j];
            match a.cmp(&b) {
                std::cmp::Ordering::Less => {
                    out.push((a, ea));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b, eb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(g, e)| other.exponent(g) >= e)
    }

    /// `self / divisor`, or `None` when `divisor` does not divide `self`.
    pub fn quotient(&self, divisor: &Monomial) -> Option<Monomial> {
        if !divisor.divides(self) {
            return None;
        }
        let out = self
            .0
            .iter()
            .filter_map(|&(g, e)| {
                let rest = e - divisor.exponent(g);
                (rest > 0).then_some((g, rest))
            })
            .collect();
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let out = self
            .0
            .iter()
            .filter_map(|&(g, e)| {
                let m = e.min(other.exponent(g));
                (m > 0).then_some((g, m))
            })
            .collect();
        Monomial(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let g = self.gcd(other);
        self.mul(other)
            .quotient(&g)
            .expect("gcd divides the product")
    }
}

/// `pattern -> replacement`, applied to any monomial divisible by `pattern`.
#[derive(Clone, Debug)]
pub struct Rewrite {
    pub pattern: Monomial,
    pub replacement: Vec<(Rational, Monomial)>,
}

/// Pushforward along `U -> F`. A monomial is split into its fiber part
/// (non-pullback factors) and its base part; the rule whose `fiber`
/// matches exactly supplies the image, which is then multiplied by the base
/// part (projection formula).
#[derive(Clone, Debug)]
pub struct PushforwardRule {
    pub fiber: Monomial,
    pub image: ChowClass,
}

#[derive(Clone, Debug)]
pub struct PushforwardRules {
    pub base: Ring,
    pub pullbacks: Vec<(GenId, GenId)>,
    pub rules: Vec<PushforwardRule>,
}

#[derive(Clone, Debug, Default)]
pub struct RelationSet {
    pub rewrites: Vec<Rewrite>,
    pub pushforward: Option<PushforwardRules>,
    pub check_confluence: bool,
}

struct RingData {
    generators: Vec<Generator>,
    truncation: u32,
    relations: RelationSet,
}

/// Shared handle to an immutable ring description. Two handles denote the
/// same ring only if they point at the same allocation.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.generators.iter().map(|g| g.name.as_str()).collect();
        f.debug_struct("Ring")
            .field("generators", &names)
            .field("truncation", &self.0.truncation)
            .field("rewrites", &self.0.relations.rewrites.len())
            .finish()
    }
}

impl Ring {
    pub fn generators(&self) -> &[Generator] {
        &self.0.generators
    }

    pub fn generator(&self, name: &str) -> Result<GenId, ChowError> {
        self.0
            .generators
            .iter()
            .position(|g| g.name == name)
            .map(GenId)
            .ok_or_else(|| ChowError::UnknownGenerator(name.to_string()))
    }

    pub fn info(&self, id: GenId) -> &Generator {
        &self.0.generators[id.0]
    }

    pub fn truncation(&self) -> u32 {
        self.0.truncation
    }

    pub fn relations(&self) -> &RelationSet {
        &self.0.relations
    }

    pub fn degree(&self, m: &Monomial) -> u32 {
        m.factors()
            .iter()
            .map(|&(g, e)| self.info(g).degree * e)
            .sum()
    }

    pub fn same(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Class of a single generator, looked up by name.
    pub fn class(&self, name: &str) -> Result<ChowClass, ChowError> {
        let id = self.generator(name)?;
        Ok(ChowClass::from_monomial(
            self,
            Monomial::var(id),
            Rational::one(),
        ))
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        m.factors()
            .iter()
            .map(|&(g, e)| {
                let name = &self.info(g).name;
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Well-founded measure that every rewrite must strictly decrease:
    /// eliminated-generator factors, then section factors, then degree.
    fn measure(&self, m: &Monomial) -> (u32, u32, u32) {
        let count = |kind: GeneratorKind| -> u32 {
            m.factors()
                .iter()
                .filter(|(g, _)| self.info(*g).kind == kind)
                .map(|(_, e)| e)
                .sum()
        };
        (
            count(GeneratorKind::AmbientHyperplane),
            count(GeneratorKind::Section),
            self.degree(m),
        )
    }
}

/// Incremental construction of a [`Ring`]. Rules are validated by
/// [`RingBuilder::build`].
pub struct RingBuilder {
    generators: Vec<Generator>,
    truncation: u32,
    relations: RelationSet,
}

impl RingBuilder {
    pub fn new(truncation: u32) -> Self {
        RingBuilder {
            generators: Vec::new(),
            truncation,
            relations: RelationSet::default(),
        }
    }

    pub fn generator(
        &mut self,
        name: &str,
        degree: u32,
        kind: GeneratorKind,
    ) -> Result<GenId, ChowError> {
        if self.generators.iter().any(|g| g.name == name) {
            return Err(ChowError::DuplicateGenerator(name.to_string()));
        }
        if degree == 0 {
            return Err(ChowError::ZeroDegree(name.to_string()));
        }
        self.generators.push(Generator {
            name: name.to_string(),
            degree,
            kind,
        });
        Ok(GenId(self.generators.len() - 1))
    }

    pub fn rewrite(
        &mut self,
        pattern: Monomial,
        replacement: Vec<(Rational, Monomial)>,
    ) -> &mut Self {
        self.relations.rewrites.push(Rewrite {
            pattern,
            replacement,
        });
        self
    }

    /// Declare `base` as the target of pushforward.
    pub fn pushforward_to(&mut self, base: &Ring) -> &mut Self {
        self.relations.pushforward = Some(PushforwardRules {
            base: base.clone(),
            pullbacks: Vec::new(),
            rules: Vec::new(),
        });
        self
    }

    /// Record that `family_gen` is the pullback of `base_gen`.
    pub fn pullback(&mut self, family_gen: GenId, base_gen: GenId) -> &mut Self {
        if let Some(pf) = self.relations.pushforward.as_mut() {
            pf.pullbacks.push((family_gen, base_gen));
        }
        self
    }

    pub fn pushforward_rule(&mut self, fiber: Monomial, image: ChowClass) -> &mut Self {
        if let Some(pf) = self.relations.pushforward.as_mut() {
            pf.rules.push(PushforwardRule { fiber, image });
        }
        self
    }

    pub fn check_confluence(&mut self, on: bool) -> &mut Self {
        self.relations.check_confluence = on;
        self
    }

    pub fn build(self) -> Result<Ring, ChowError> {
        let ring = Ring(Arc::new(RingData {
            generators: self.generators,
            truncation: self.truncation,
            relations: self.relations,
        }));
        for rule in &ring.relations().rewrites {
            let label = ring.render_monomial(&rule.pattern);
            if rule.pattern.is_one() {
                return Err(ChowError::NonTerminatingRule(label));
            }
            let deg = ring.degree(&rule.pattern);
            let measure = ring.measure(&rule.pattern);
            for (_, m) in &rule.replacement {
                if ring.degree(m) != deg {
                    return Err(ChowError::InhomogeneousRule(label));
                }
                if ring.measure(m) >= measure {
                    return Err(ChowError::NonTerminatingRule(label));
                }
            }
        }
        if let Some(pf) = &ring.relations().pushforward {
            for rule in &pf.rules {
                if !rule.image.ring().same(&pf.base) {
                    return Err(ChowError::RingMismatch);
                }
            }
        }
        if ring.relations().check_confluence {
            check_critical_pairs(&ring)?;
        }
        Ok(ring)
    }
}

/// Local confluence on overlaps: for two rules whose patterns share a
/// factor, rewriting their lcm first by either rule must give the same
/// normal form.
fn check_critical_pairs(ring: &Ring) -> Result<(), ChowError> {
    let rules = &ring.relations().rewrites;
    for (i, a) in rules.iter().enumerate() {
        for b in &rules[i + 1..] {
            if a.pattern.gcd(&b.pattern).is_one() {
                continue;
            }
            let overlap = a.pattern.lcm(&b.pattern);
            let via = |rule: &Rewrite| -> Result<ChowClass, ChowError> {
                let rest = overlap
                    .quotient(&rule.pattern)
                    .expect("pattern divides lcm");
                let terms = rule
                    .replacement
                    .iter()
                    .map(|(c, m)| (rest.mul(m), c.clone()));
                ChowClass::from_terms(ring, terms).normalize()
            };
            if via(a)? != via(b)? {
                return Err(ChowError::NonConfluent(ring.render_monomial(&overlap)));
            }
        }
    }
    Ok(())
}

pub(crate) fn render_coefficient_term(coeff: &Rational, body: &str) -> String {
    let negative = coeff < &Rational::zero();
    let magnitude = if negative {
        -coeff.clone()
    } else {
        coeff.clone()
    };
    let sign = if negative { "-" } else { "" };
    if body == "1" {
        return format!("{sign}{magnitude}");
    }
    if magnitude.is_one() {
        format!("{sign}{body}")
    } else if magnitude.is_integer() {
        format!("{sign}{magnitude}*{body}")
    } else {
        format!("{sign}({magnitude}){body}")
    }
}

/// Join rendered terms with ` + ` / ` - `, folding a leading minus of each
/// later term into the separator.
pub(crate) fn join_signed(parts: &[String]) -> String {
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        match p.strip_prefix('-') {
            Some(rest) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            None => {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
    }
    out
}
