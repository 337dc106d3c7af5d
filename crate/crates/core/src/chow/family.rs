use super::{
    integer, ChowClass, ChowError, GenId, GeneratorKind, Monomial, Rational, Ring, RingBuilder,
};
use num::One;

/// Knobs on the bundled relation set. The defaults describe the universal
/// conic family; the other settings exist so that tests can check the
/// downstream computations actually depend on each relation.
#[derive(Clone, Debug)]
pub struct FamilyOptions {
    /// Emit `sigma0*sigma1 -> 0` (the sections hit distinct points).
    pub sections_disjoint: bool,
    /// `c` in `sigma_i^2 -> c * sigma_i * lambda`; the true value is `-1`.
    pub section_square: Rational,
    /// `m` in `pi_*(z) = m * Delta`; the true value is `1`.
    pub nodal_pushforward: Rational,
    pub truncation: u32,
}

impl Default for FamilyOptions {
    fn default() -> Self {
        FamilyOptions {
            sections_disjoint: true,
            section_square: integer(-1),
            nodal_pushforward: integer(1),
            truncation: 2,
        }
    }
}

/// The family ring on `U` (generators `H`, `lambda` = pullback of lambda,
/// `sigma0`, `sigma1`, `z`) and the base ring on `F` (`Delta`, `lambda`).
#[derive(Clone, Debug)]
pub struct UniversalFamily {
    pub family: Ring,
    pub base: Ring,
    pub hyperplane: GenId,
    pub pullback_lambda: GenId,
    pub sections: [GenId; 2],
    pub nodal: GenId,
    pub delta: GenId,
    pub lambda: GenId,
}

impl UniversalFamily {
    pub fn new(opts: &FamilyOptions) -> Result<Self, ChowError> {
        let mut b = RingBuilder::new(opts.truncation);
        let delta = b.generator("Delta", 1, GeneratorKind::UnknownDivisor)?;
        let lambda = b.generator("lambda", 1, GeneratorKind::Base)?;
        let base = b.build()?;

        // declared in name order so the derived monomial order is lex on names
        let mut b = RingBuilder::new(opts.truncation);
        let h = b.generator("H", 1, GeneratorKind::AmbientHyperplane)?;
        let lam = b.generator("lambda", 1, GeneratorKind::BasePullback)?;
        let s0 = b.generator("sigma0", 1, GeneratorKind::Section)?;
        let s1 = b.generator("sigma1", 1, GeneratorKind::Section)?;
        let z = b.generator("z", 2, GeneratorKind::NodalCycle)?;

        let one = Rational::one();
        b.rewrite(
            Monomial::var(h),
            vec![
                (one.clone(), Monomial::var(s0)),
                (one.clone(), Monomial::var(s1)),
                (one.clone(), Monomial::var(lam)),
            ],
        );
        for s in [s0, s1] {
            b.rewrite(
                Monomial::power(s, 2),
                vec![(
                    opts.section_square.clone(),
                    Monomial::from_factors([(s, 1), (lam, 1)]),
                )],
            );
        }
        if opts.sections_disjoint {
            b.rewrite(Monomial::var(s0).mul(&Monomial::var(s1)), Vec::new());
        }

        b.pushforward_to(&base);
        b.pullback(lam, lambda);
        // fiber-degree zero classes push forward to zero
        b.pushforward_rule(Monomial::one(), ChowClass::zero(&base));
        for s in [s0, s1] {
            b.pushforward_rule(Monomial::var(s), ChowClass::one(&base));
        }
        b.pushforward_rule(
            Monomial::var(z),
            ChowClass::from_monomial(&base, Monomial::var(delta), opts.nodal_pushforward.clone()),
        );
        b.check_confluence(true);
        let family = b.build()?;

        Ok(UniversalFamily {
            family,
            base,
            hyperplane: h,
            pullback_lambda: lam,
            sections: [s0, s1],
            nodal: z,
            delta,
            lambda,
        })
    }

    fn family_gen(&self, g: GenId) -> ChowClass {
        ChowClass::from_monomial(&self.family, Monomial::var(g), Rational::one())
    }

    /// `f^* c_1(O(1))`, unnormalized.
    pub fn hyperplane_class(&self) -> ChowClass {
        self.family_gen(self.hyperplane)
    }

    pub fn pullback_lambda_class(&self) -> ChowClass {
        self.family_gen(self.pullback_lambda)
    }

    pub fn section_class(&self, i: usize) -> ChowClass {
        self.family_gen(self.sections[i])
    }

    pub fn nodal_class(&self) -> ChowClass {
        self.family_gen(self.nodal)
    }

    /// `c_1(omega_{U/F}) = pi^* lambda - f^* c_1(O(1))`, normalized.
    pub fn c1_omega(&self) -> Result<ChowClass, ChowError> {
        self.pullback_lambda_class().sub(&self.hyperplane_class())
    }

    pub fn delta_class(&self) -> ChowClass {
        ChowClass::from_monomial(&self.base, Monomial::var(self.delta), Rational::one())
    }

    pub fn lambda_class(&self) -> ChowClass {
        ChowClass::from_monomial(&self.base, Monomial::var(self.lambda), Rational::one())
    }
}

pub fn make_universal_family_ring() -> UniversalFamily {
    UniversalFamily::new(&FamilyOptions::default()).expect("bundled relation set is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum(a: &ChowClass, b: &ChowClass) -> ChowClass {
        a.add(b).unwrap()
    }

    #[test]
    fn section_square_rewrites() {
        let u = make_universal_family_ring();
        let s0 = u.section_class(0);
        let sq = ChowClass::from_monomial(&u.family, Monomial::power(u.sections[0], 2), integer(1));
        let expected = s0.mul(&u.pullback_lambda_class()).unwrap().neg();
        assert_eq!(sq.normalize().unwrap(), expected);
        assert_eq!(expected.to_string(), "-lambda*sigma0");
    }

    #[test]
    fn hyperplane_is_eliminated() {
        let u = make_universal_family_ring();
        let h = u.hyperplane_class().normalize().unwrap();
        let expected = sum(
            &sum(&u.section_class(0), &u.section_class(1)),
            &u.pullback_lambda_class(),
        );
        assert_eq!(h, expected);
        assert_eq!(h.to_string(), "lambda + sigma0 + sigma1");
    }

    #[test]
    fn sections_are_disjoint() {
        let u = make_universal_family_ring();
        assert!(u
            .section_class(0)
            .mul(&u.section_class(1))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn sum_of_sections_squared() {
        let u = make_universal_family_ring();
        let s = sum(&u.section_class(0), &u.section_class(1));
        let lhs = s.mul(&s).unwrap();
        let rhs = s.mul(&u.pullback_lambda_class()).unwrap().neg();
        assert_eq!(lhs, rhs);
        assert_eq!(
            lhs.pushforward().unwrap(),
            u.lambda_class().scale(&integer(-2))
        );
    }

    #[test]
    fn pushforward_examples() {
        let u = make_universal_family_ring();
        let s0l = u.section_class(0).mul(&u.pullback_lambda_class()).unwrap();
        assert_eq!(s0l.pushforward().unwrap(), u.lambda_class());

        let h = u.hyperplane_class();
        let h2 = h.mul(&h).unwrap();
        assert_eq!(
            h2.pushforward().unwrap(),
            u.lambda_class().scale(&integer(2))
        );

        let w = u.c1_omega().unwrap();
        let w2 = w.mul(&w).unwrap();
        assert_eq!(
            w2.pushforward().unwrap(),
            u.lambda_class().scale(&integer(-2))
        );

        assert_eq!(u.nodal_class().pushforward().unwrap(), u.delta_class());
        let l2 = u.pullback_lambda_class().pow(2).unwrap();
        assert!(l2.pushforward().unwrap().is_zero());
        assert!(ChowClass::one(&u.family).pushforward().unwrap().is_zero());
    }

    #[test]
    fn c1_omega_squared_matches_displayed_identity() {
        // c1(w)^2 = -(pi^*l)^2 + H^2 - 2 pi^*l (s0 + s1)
        let u = make_universal_family_ring();
        let w = u.c1_omega().unwrap();
        let l = u.pullback_lambda_class();
        let h = u.hyperplane_class();
        let s = sum(&u.section_class(0), &u.section_class(1));
        let rhs = l
            .pow(2)
            .unwrap()
            .neg()
            .add(&h.pow(2).unwrap())
            .unwrap()
            .sub(&l.mul(&s).unwrap().scale(&integer(2)))
            .unwrap();
        assert_eq!(w.pow(2).unwrap(), rhs);
    }

    #[test]
    fn without_disjointness_the_cross_term_has_no_pushforward() {
        let u = UniversalFamily::new(&FamilyOptions {
            sections_disjoint: false,
            ..FamilyOptions::default()
        })
        .unwrap();
        let w = u.c1_omega().unwrap();
        let w2 = w.mul(&w).unwrap();
        // 2*sigma0*sigma1 survives normalization
        let cross = Monomial::var(u.sections[0]).mul(&Monomial::var(u.sections[1]));
        assert_eq!(w2.coefficient(&cross), integer(2));
        assert!(matches!(
            w2.pushforward(),
            Err(ChowError::MissingPushforwardRule(_))
        ));
    }
}
