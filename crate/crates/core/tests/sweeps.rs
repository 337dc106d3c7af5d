use conics_core::ci::{
    canonical_coefficient, conic_count, degree, fiber_dimension, fiber_type, main_theorem_bound,
    slice_to_points, CIType,
};
use num::{BigInt, BigRational, BigUint, One};
use std::time::Instant;

const MAX_CODIM: usize = 4;
const MAX_DEGREE: u32 = 7;

/// Every ordered tuple with entries in `2..=MAX_DEGREE`, lengths 1 to 4.
fn ordered_tuples() -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = vec![vec![]];
    let mut all = Vec::new();
    for _ in 0..MAX_CODIM {
        out = out
            .into_iter()
            .flat_map(|p| {
                (2..=MAX_DEGREE).map(move |d| {
                    let mut q = p.clone();
                    q.push(d);
                    q
                })
            })
            .collect();
        all.extend(out.iter().cloned());
    }
    all
}

fn factorial(n: u32) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

fn main_type(d: &[u32]) -> CIType {
    CIType::new(d.to_vec(), main_theorem_bound(d) as u32).unwrap()
}

fn non_quadric(d: &[u32]) -> bool {
    d != [2]
}

#[test]
fn sweep_covers_enough_types() {
    assert_eq!(ordered_tuples().len(), 6 + 36 + 216 + 1296);
}

#[test]
fn degree_identity_sweep() {
    let start = Instant::now();
    let mut checked = 0;
    for d in ordered_tuples().iter().filter(|d| non_quadric(d)) {
        let ft = fiber_type(&main_type(d)).unwrap();
        let lhs = BigUint::from(2u32)
            * d.iter().map(|&x| BigUint::from(x)).product::<BigUint>()
            * degree(&ft);
        let rhs: BigUint = d.iter().map(|&x| factorial(x) * factorial(x)).product();
        assert_eq!(lhs, rhs, "{d:?}");
        // product of (1,1,...,d-1,d-1,d) over d, halved by dropping (1,1,2)
        let direct: BigUint = d
            .iter()
            .map(|&x| factorial(x) * factorial(x - 1))
            .product::<BigUint>()
            / 2u32;
        assert_eq!(degree(&ft), direct, "{d:?}");
        checked += 1;
    }
    assert!(checked > 330);
    assert!(start.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn canonical_identity_sweep() {
    for d in ordered_tuples().iter().filter(|d| non_quadric(d)) {
        let lo = main_theorem_bound(d) as u32;
        for n in lo..=lo + 5 {
            let t = CIType::new(d.clone(), n).unwrap();
            let squares: i64 = d.iter().map(|&x| i64::from(x * x)).sum();
            assert_eq!(
                canonical_coefficient(&t).unwrap(),
                -(i64::from(n) + 3 - squares),
                "{t}"
            );
        }
    }
}

#[test]
fn dimension_identity_sweep() {
    for d in ordered_tuples().iter().filter(|d| non_quadric(d)) {
        let lo = main_theorem_bound(d) as u32;
        for n in lo..=lo + 5 {
            let t = CIType::new(d.clone(), n).unwrap();
            let ft = fiber_type(&t).unwrap();
            assert_eq!(ft.ambient(), n - 2);
            assert_eq!(
                fiber_dimension(&t).unwrap() as usize,
                (n - 2) as usize - ft.codim(),
                "{t}"
            );
        }
    }
}

#[test]
fn count_sweep() {
    let int = |n: i64| BigRational::from_integer(BigInt::from(n));
    assert_eq!(conic_count(&[3]).unwrap(), int(6));
    assert_eq!(conic_count(&[2, 2]).unwrap(), int(2));
    assert_eq!(conic_count(&[2, 3]).unwrap(), int(12));
    for d in ordered_tuples().iter().filter(|d| non_quadric(d)) {
        let count = conic_count(d).unwrap();
        assert!(count.denom().is_one(), "{d:?}");
        let slice = slice_to_points(d).unwrap();
        assert_eq!(fiber_dimension(&slice).unwrap(), 0, "{d:?}");
        let points = degree(&fiber_type(&slice).unwrap());
        assert_eq!(count.numer(), &BigInt::from(points), "{d:?}");
    }
}

#[test]
fn results_ignore_degree_order() {
    for d in ordered_tuples().iter().filter(|d| non_quadric(d)) {
        let mut sorted = d.clone();
        sorted.sort_unstable();
        assert_eq!(
            fiber_type(&main_type(d)).unwrap(),
            fiber_type(&main_type(&sorted)).unwrap()
        );
        assert_eq!(conic_count(d).unwrap(), conic_count(&sorted).unwrap());
    }
}
