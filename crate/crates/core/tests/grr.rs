use conics_core::chow::{
    integer, make_universal_family_ring, ratio, FamilyOptions, UniversalFamily,
};
use conics_core::grr::{
    derive_boundary_divisor, grr_transcript, pushed_c1_omega_squared, verify_cycle_corollary,
};

fn family(opts: FamilyOptions) -> UniversalFamily {
    UniversalFamily::new(&opts).unwrap()
}

#[test]
fn boundary_divisor_is_twice_lambda() {
    let u = make_universal_family_ring();
    let t = grr_transcript(&u).unwrap();
    assert_eq!(t.k, integer(2));
    assert_eq!(t.lhs.to_string(), "-(11/12)Delta - (1/6)lambda");
    assert_eq!(t.rhs.to_string(), "-Delta");
    assert_eq!(t.degree_two_presented, "(1/12)z + (1/12)c1w^2 - z");
}

#[test]
fn cycle_identities() {
    let u = make_universal_family_ring();
    assert!(verify_cycle_corollary(&u));
    assert_eq!(
        pushed_c1_omega_squared(&u).unwrap(),
        u.lambda_class().scale(&integer(-2))
    );
    let h = u.hyperplane_class();
    assert_eq!(
        h.mul(&h).unwrap().pushforward().unwrap(),
        u.lambda_class().scale(&integer(2))
    );
}

#[test]
fn every_relation_matters() {
    let doubled = family(FamilyOptions {
        nodal_pushforward: integer(2),
        ..FamilyOptions::default()
    });
    assert_eq!(derive_boundary_divisor(&doubled).unwrap(), ratio(-1, 5));

    let flipped = family(FamilyOptions {
        section_square: integer(1),
        ..FamilyOptions::default()
    });
    assert_ne!(derive_boundary_divisor(&flipped).unwrap(), integer(2));
    assert!(!verify_cycle_corollary(&flipped));

    let overlapping = family(FamilyOptions {
        sections_disjoint: false,
        ..FamilyOptions::default()
    });
    assert!(derive_boundary_divisor(&overlapping).is_err());
    assert!(!verify_cycle_corollary(&overlapping));
}
