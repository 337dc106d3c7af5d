use super::{
    join_signed, render_coefficient_term, ChowError, GenId, GeneratorKind, Monomial, Rational,
    Ring, MAX_REWRITE_PASSES,
};
use num::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

/// Formal sum of monomials with exact rational coefficients.
///
/// Zero coefficients are never stored and every monomial has degree at most
/// the ring's truncation. Values built with [`ChowClass::from_terms`] are not
/// necessarily in normal form; arithmetic results always are.
#[derive(Clone)]
pub struct ChowClass {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

fn accumulate(terms: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
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

impl ChowClass {
    pub fn zero(ring: &Ring) -> Self {
        ChowClass {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        Self::from_monomial(ring, Monomial::one(), c)
    }

    pub fn from_monomial(ring: &Ring, m: Monomial, c: Rational) -> Self {
        Self::from_terms(ring, [(m, c)])
    }

    /// Raw (unnormalized) class; terms above the truncation are dropped.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            if ring.degree(&m) <= ring.truncation() {
                accumulate(&mut out, m, c);
            }
        }
        ChowClass {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn check_ring(&self, other: &ChowClass) -> Result<(), ChowError> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(ChowError::RingMismatch)
        }
    }

    /// Apply the ring's rewrite rules, in declaration order, until no rule
    /// matches.
    pub fn normalize(&self) -> Result<ChowClass, ChowError> {
        let rules = &self.ring.relations().rewrites;
        let truncation = self.ring.truncation();
        let mut current = self.terms.clone();
        for _ in 0..MAX_REWRITE_PASSES {
            let mut next = BTreeMap::new();
            let mut changed = false;
            for (m, c) in current {
                match rules.iter().find(|r| r.pattern.divides(&m)) {
                    Some(rule) => {
                        changed = true;
                        let rest = m.quotient(&rule.pattern).expect("pattern divides");
                        for (rc, rm) in &rule.replacement {
                            let nm = rest.mul(rm);
                            if self.ring.degree(&nm) <= truncation {
                                accumulate(&mut next, nm, &c * rc);
                            }
                        }
                    }
                    None => accumulate(&mut next, m, c),
                }
            }
            current = next;
            if !changed {
                return Ok(ChowClass {
                    ring: self.ring.clone(),
                    terms: current,
                });
            }
        }
        Err(ChowError::RewriteLimit(MAX_REWRITE_PASSES))
    }

    pub fn add(&self, other: &ChowClass) -> Result<ChowClass, ChowError> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        ChowClass {
            ring: self.ring.clone(),
            terms,
        }
        .normalize()
    }

    pub fn sub(&self, other: &ChowClass) -> Result<ChowClass, ChowError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ChowClass {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> ChowClass {
        if c.is_zero() {
            return ChowClass::zero(&self.ring);
        }
        ChowClass {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &ChowClass) -> Result<ChowClass, ChowError> {
        self.check_ring(other)?;
        let truncation = self.ring.truncation();
        let mut terms = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let m = a.mul(b);
                if self.ring.degree(&m) <= truncation {
                    accumulate(&mut terms, m, ca * cb);
                }
            }
        }
        ChowClass {
            ring: self.ring.clone(),
            terms,
        }
        .normalize()
    }

    pub fn pow(&self, exp: u32) -> Result<ChowClass, ChowError> {
        (0..exp).try_fold(ChowClass::one(&self.ring).normalize()?, |acc, _| {
            acc.mul(self)
        })
    }

    /// Keep only terms of total degree `<= max_degree`.
    pub fn truncated(&self, max_degree: u32) -> ChowClass {
        ChowClass {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.ring.degree(m) <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, degree: u32) -> ChowClass {
        ChowClass {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.ring.degree(m) == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Push the class forward to the base ring, term by term.
    pub fn pushforward(&self) -> Result<ChowClass, ChowError> {
        let pf = self
            .ring
            .relations()
            .pushforward
            .as_ref()
            .ok_or(ChowError::NoPushforward)?;
        let normal = self.normalize()?;
        let mut out = ChowClass::zero(&pf.base);
        for (m, c) in &normal.terms {
            let mut fiber = Vec::new();
            let mut base = Vec::new();
            for &(g, e) in m.factors() {
                if self.ring.info(g).kind == GeneratorKind::BasePullback {
                    let target = pf
                        .pullbacks
                        .iter()
                        .find(|(from, _)| *from == g)
                        .map(|(_, to)| *to)
                        .ok_or_else(|| {
                            ChowError::UnmappedPullback(self.ring.info(g).name.clone())
                        })?;
                    base.push((target, e));
                } else {
                    fiber.push((g, e));
                }
            }
            let fiber = Monomial::from_factors(fiber);
            let rule =
                pf.rules.iter().find(|r| r.fiber == fiber).ok_or_else(|| {
                    ChowError::MissingPushforwardRule(self.ring.render_monomial(m))
                })?;
            let base_part =
                ChowClass::from_monomial(&pf.base, Monomial::from_factors(base), c.clone());
            out = out.add(&rule.image.mul(&base_part)?)?;
        }
        Ok(out)
    }

    fn display_order(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_cached_key(|(m, _)| {
            (
                self.ring.degree(m),
                m.factor_count(),
                self.ring.render_monomial(m),
            )
        });
        v
    }
}

impl PartialEq for ChowClass {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.terms == other.terms
    }
}

impl fmt::Debug for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChowClass({self})")
    }
}

/// Terms in increasing degree; within a degree, single generators before
/// products.
impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .display_order()
            .into_iter()
            .map(|(m, c)| render_coefficient_term(c, &self.ring.render_monomial(m)))
            .collect();
        f.write_str(&join_signed(&parts))
    }
}

/// Solve `lhs = rhs` for `unknown = k * basis`, where `lhs - rhs` must be of
/// the form `a*unknown + b*basis` with `a != 0`. Returns `k = -b/a`.
pub fn solve_linear_unknown(
    lhs: &ChowClass,
    rhs: &ChowClass,
    unknown: GenId,
    basis: GenId,
) -> Result<Rational, ChowError> {
    let diff = lhs.sub(rhs)?;
    let ring = diff.ring().clone();
    let unknown_m = Monomial::var(unknown);
    let basis_m = Monomial::var(basis);
    let a = diff.coefficient(&unknown_m);
    if a.is_zero() {
        return Err(ChowError::DegenerateUnknown(
            ring.info(unknown).name.clone(),
        ));
    }
    let mut b = Rational::zero();
    for (m, c) in diff.terms() {
        if *m == unknown_m {
            continue;
        }
        if *m == basis_m {
            b = c.clone();
        } else {
            return Err(ChowError::OutsideSpan(render_coefficient_term(
                c,
                &ring.render_monomial(m),
            )));
        }
    }
    Ok(-b / a)
}
