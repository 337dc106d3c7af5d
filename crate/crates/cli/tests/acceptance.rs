//! Acceptance suite: one PASS/FAIL line per criterion.

use conics_core::chow::{
    integer, make_universal_family_ring, ratio, ChowClass, FamilyOptions, Monomial, UniversalFamily,
};
use conics_core::ci::{
    canonical_coefficient, conic_count, degree, enumerate_types, fiber_dimension, fiber_type,
    main_theorem_bound, slice_to_points, CIType,
};
use conics_core::grr::{derive_boundary_divisor, pushed_c1_omega_squared, verify_cycle_corollary};
use conics_core::oracle::tracker::dedup_points;
use conics_core::oracle::{
    count_conics_cubic_threefold, solve_total_degree, ComplexPoly, PolySystem, TrackerConfig,
};
use num::complex::Complex64;
use num::{BigInt, BigUint, One};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: f64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit, || {
        format!("took {:.3}s, limit {limit}s", elapsed.as_secs_f64())
    })
}

fn mutated(opts: FamilyOptions) -> UniversalFamily {
    UniversalFamily::new(&opts).expect("mutated relation set builds")
}

fn grr_derivation() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_conics"))
        .arg("grr")
        .output()
        .map_err(|e| e.to_string())?;
    let k = derive_boundary_divisor(&make_universal_family_ring()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.success(), || {
        format!("grr exited with {:?}", out.status.code())
    })?;
    ensure(text.lines().last() == Some("Delta = 2*lambda"), || {
        format!("last line {:?}", text.lines().last())
    })?;
    ensure(k == integer(2), || format!("k = {k}"))?;
    within(elapsed, 1.0)?;

    let doubled = mutated(FamilyOptions {
        nodal_pushforward: integer(2),
        ..FamilyOptions::default()
    });
    let k_doubled = derive_boundary_divisor(&doubled).map_err(|e| e.to_string())?;
    ensure(k_doubled != integer(2), || {
        "doubled pi_*(z) still gives 2".into()
    })?;
    let flipped = mutated(FamilyOptions {
        section_square: integer(1),
        ..FamilyOptions::default()
    });
    let k_flipped = derive_boundary_divisor(&flipped).map_err(|e| e.to_string())?;
    ensure(k_flipped != integer(2), || {
        "flipped sigma^2 sign still gives 2".into()
    })?;
    let overlapping = mutated(FamilyOptions {
        sections_disjoint: false,
        ..FamilyOptions::default()
    });
    let k_overlap = derive_boundary_divisor(&overlapping);
    ensure(!matches!(&k_overlap, Ok(k) if *k == integer(2)), || {
        "dropping sigma0*sigma1 still gives 2".into()
    })?;
    Ok(format!(
        "k = 2 in {:.3}s; mutants: pi_*(z)=2Delta -> {k_doubled}, sigma^2 sign -> {k_flipped}, no sigma0*sigma1 -> {}",
        elapsed.as_secs_f64(),
        match k_overlap {
            Ok(k) => k.to_string(),
            Err(e) => format!("error ({e})"),
        }
    ))
}

fn cycle_corollary() -> Outcome {
    let u = make_universal_family_ring();
    let w2 = pushed_c1_omega_squared(&u).map_err(|e| e.to_string())?;
    ensure(w2 == u.lambda_class().scale(&integer(-2)), || {
        format!("pi_*(c1w^2) = {w2}")
    })?;
    ensure(verify_cycle_corollary(&u), || {
        "corollary check failed".into()
    })?;
    let h = u.hyperplane_class();
    let h2 = h
        .mul(&h)
        .and_then(|x| x.pushforward())
        .map_err(|e| e.to_string())?;
    ensure(h2 == u.lambda_class().scale(&integer(2)), || {
        format!("pi_*(H^2) = {h2}")
    })?;
    Ok(format!("pi_*(c1w^2) = {w2}, pi_*(H^2) = {h2}"))
}

fn fiber_type_reproduction() -> Outcome {
    for n in 4..=30 {
        let t = CIType::new(vec![3], n).map_err(|e| e.to_string())?;
        let ft = fiber_type(&t).map_err(|e| e.to_string())?;
        let want = CIType::new(vec![2, 3], n - 2).map_err(|e| e.to_string())?;
        ensure(ft == want, || format!("N = {n}: got {ft}"))?;
    }
    Ok("fiber_type((3), N) = (2,3) in P^(N-2) for N = 4..30".into())
}

/// Every ordered tuple with `c <= 4` and `2 <= d <= 7`.
fn sweep_tuples() -> Vec<Vec<u32>> {
    let mut all = Vec::new();
    let mut layer: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..4 {
        layer = layer
            .iter()
            .flat_map(|p| {
                (2..=7).map(move |d| {
                    let mut q = p.clone();
                    q.push(d);
                    q
                })
            })
            .collect();
        all.extend(layer.iter().filter(|d| d.as_slice() != [2]).cloned());
    }
    all
}

fn factorial(n: u32) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

fn degree_identity_sweep() -> Outcome {
    let start = Instant::now();
    let tuples = sweep_tuples();
    for d in &tuples {
        let t = CIType::new(d.clone(), main_theorem_bound(d) as u32).map_err(|e| e.to_string())?;
        let ft = fiber_type(&t).map_err(|e| e.to_string())?;
        let bezout: BigUint = d.iter().map(|&x| BigUint::from(x)).product();
        let lhs = bezout * degree(&ft) * 2u32;
        let rhs: BigUint = d.iter().map(|&x| factorial(x) * factorial(x)).product();
        ensure(lhs == rhs, || format!("{d:?}: {lhs} != {rhs}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, 5.0)?;
    ensure(tuples.len() > 330, || {
        format!("only {} types", tuples.len())
    })?;
    Ok(format!(
        "{} ordered tuples ({} sorted types) in {:.3}s",
        tuples.len(),
        enumerate_types(4, 7).len() - 1,
        elapsed.as_secs_f64()
    ))
}

fn canonical_identity_sweep() -> Outcome {
    let mut cases = 0;
    for d in sweep_tuples() {
        let lo = main_theorem_bound(&d) as u32;
        for n in lo..=lo + 5 {
            let t = CIType::new(d.clone(), n).map_err(|e| e.to_string())?;
            let k = canonical_coefficient(&t).map_err(|e| format!("{t}: {e}"))?;
            let squares: i64 = d.iter().map(|&x| i64::from(x * x)).sum();
            ensure(k == -(i64::from(n) + 3 - squares), || format!("{t}: {k}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases"))
}

fn dimension_identity_sweep() -> Outcome {
    let mut cases = 0;
    for d in sweep_tuples() {
        let lo = main_theorem_bound(&d) as u32;
        for n in lo..=lo + 5 {
            let t = CIType::new(d.clone(), n).map_err(|e| e.to_string())?;
            let ft = fiber_type(&t).map_err(|e| e.to_string())?;
            let dim = fiber_dimension(&t).map_err(|e| e.to_string())? as usize;
            ensure(dim == (n as usize - 2) - ft.codim(), || {
                format!("{t}: dim {dim}, fiber {ft}")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases"))
}

fn enumerative_counts() -> Outcome {
    for (d, want) in [(vec![3], 6), (vec![2, 2], 2), (vec![2, 3], 12)] {
        let c = conic_count(&d).map_err(|e| e.to_string())?;
        ensure(c == integer(want), || format!("{d:?}: {c}"))?;
    }
    let tuples = sweep_tuples();
    for d in &tuples {
        let c = conic_count(d).map_err(|e| e.to_string())?;
        ensure(c.denom().is_one(), || format!("{d:?}: {c} not an integer"))?;
        let slice = slice_to_points(d).map_err(|e| e.to_string())?;
        ensure(fiber_dimension(&slice) == Ok(0), || {
            format!("{slice} is not a point slice")
        })?;
        let points = degree(&fiber_type(&slice).map_err(|e| e.to_string())?);
        ensure(c.numer() == &BigInt::from(points), || {
            format!("{d:?}: count {c} vs slice degree")
        })?;
    }
    Ok(format!(
        "(3) -> 6, (2,2) -> 2, (2,3) -> 12; {} integral counts",
        tuples.len()
    ))
}

fn numeric_oracle() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut retries = 0;
    for seed in 0..20 {
        let r = count_conics_cubic_threefold(seed).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(r.count == 6 && r.solutions.len() == 6, || {
            format!("seed {seed}: count {}", r.count)
        })?;
        ensure(r.max_backward_error <= 1e-8, || {
            format!("seed {seed}: backward error {:e}", r.max_backward_error)
        })?;
        let s = &r.solutions.solutions;
        for (i, x) in s.iter().enumerate() {
            for y in &s[i + 1..] {
                let dist: f64 = x
                    .iter()
                    .zip(y)
                    .map(|(a, b)| (a - b).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                ensure(dist > 1e-6, || format!("seed {seed}: duplicate solutions"))?;
            }
        }
        worst = worst.max(r.max_backward_error);
        retries += r.retries;
    }
    let elapsed = start.elapsed();
    within(elapsed, 30.0)?;
    Ok(format!(
        "20/20 seeds give 6; max backward error {worst:.2e}; {retries} resamples; {:.2}s",
        elapsed.as_secs_f64()
    ))
}

const FAMILY_GENS: [&str; 5] = ["H", "lambda", "sigma0", "sigma1", "z"];

fn random_class(u: &UniversalFamily, rng: &mut ChaCha8Rng) -> ChowClass {
    let ids: Vec<_> = FAMILY_GENS
        .iter()
        .map(|n| u.family.generator(n).unwrap())
        .collect();
    let n = rng.random_range(0..6);
    let terms = (0..n).map(|_| {
        let m = Monomial::from_factors(ids.iter().map(|&g| (g, rng.random_range(0..=2))));
        (m, ratio(rng.random_range(-6..=6), rng.random_range(1..=4)))
    });
    let terms: Vec<_> = terms.collect();
    ChowClass::from_terms(&u.family, terms).normalize().unwrap()
}

fn random_system(rng: &mut ChaCha8Rng) -> PolySystem {
    let mut eq = |exps: &[[u32; 2]]| {
        let terms = exps
            .iter()
            .map(|e| {
                (
                    e.to_vec(),
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
                )
            })
            .collect();
        ComplexPoly::new(2, terms)
    };
    let quad = [[2, 0], [1, 1], [0, 2], [1, 0], [0, 1], [0, 0]];
    PolySystem::new(2, vec![eq(&quad), eq(&quad)])
}

fn property_suite() -> Outcome {
    let u = make_universal_family_ring();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let one = ChowClass::one(&u.family).normalize().unwrap();
    let cases = 1000;
    for i in 0..cases {
        let (x, y, z) = (
            random_class(&u, &mut rng),
            random_class(&u, &mut rng),
            random_class(&u, &mut rng),
        );
        let fail = |what: &str| format!("case {i}: {what}");
        ensure(x.add(&y).unwrap() == y.add(&x).unwrap(), || {
            fail("additive commutativity")
        })?;
        ensure(x.mul(&y).unwrap() == y.mul(&x).unwrap(), || {
            fail("commutativity")
        })?;
        ensure(
            x.mul(&y).unwrap().mul(&z).unwrap() == x.mul(&y.mul(&z).unwrap()).unwrap(),
            || fail("associativity"),
        )?;
        ensure(
            x.mul(&y.add(&z).unwrap()).unwrap()
                == x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap(),
            || fail("distributivity"),
        )?;
        ensure(x.mul(&one).unwrap() == x, || fail("unit"))?;
        ensure(x.normalize().unwrap() == x, || {
            fail("normalization idempotence")
        })?;
        let k = rng.random_range(0..=2);
        ensure(
            x.mul(&y).unwrap().truncated(k)
                == x.truncated(k).mul(&y.truncated(k)).unwrap().truncated(k),
            || fail("truncation soundness"),
        )?;
    }
    let systems = 50;
    for i in 0..systems {
        let s = random_system(&mut rng);
        let cfg = TrackerConfig::with_random_gamma(&mut rng);
        let a = solve_total_degree(&s, &cfg).map_err(|e| e.to_string())?;
        let b = solve_total_degree(&s, &cfg).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("system {i}: tracker not deterministic"))?;
        let mut ends: Vec<Vec<Complex64>> = a.paths.iter().map(|p| p.end.clone()).collect();
        let reference = dedup_points(ends.clone(), cfg.dedup_distance);
        for _ in 0..4 {
            ends.shuffle(&mut rng);
            ensure(
                dedup_points(ends.clone(), cfg.dedup_distance) == reference,
                || format!("system {i}: dedup depends on order"),
            )?;
        }
    }
    Ok(format!("{cases} algebra cases, {systems} tracker systems"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("GRR derivation", grr_derivation),
        ("cycle corollary", cycle_corollary),
        ("fiber type reproduction", fiber_type_reproduction),
        ("degree identity sweep", degree_identity_sweep),
        ("canonical identity sweep", canonical_identity_sweep),
        ("dimension identity sweep", dimension_identity_sweep),
        ("enumerative counts", enumerative_counts),
        ("numeric oracle", numeric_oracle),
        ("algebra property suite", property_suite),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
