//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//! Every comparison is exact; the only tolerances are the time limits below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use genus_cli::examples;
use genus_cli::oracle::{self, OracleConfig, OracleReport, Section};
use genus_core::kummer::kummer_character;
use genus_core::signs::{norm_sign_compat, sig_size, InfinityLocalElem};
use genus_core::{
    residue_symbol, sign_infty, Error, FqElem, FqField, LocalKummerElem, LocalKummerShape, Poly,
    PolyRing, Qz, RationalFn,
};

const QUADRATIC_LIMIT: Duration = Duration::from_secs(1);
const QUARTIC_LIMIT: Duration = Duration::from_secs(5);
const SWEEP_LIMIT: Duration = Duration::from_secs(600);

const SWEEP_MAX_PHI: u64 = 200;
const SWEEP_QS: [u64; 3] = [2, 3, 5];
const SWEEP_RANDOM: usize = 100;

const SIGN_PAIRS: usize = 10_000;
const SIGN_SEED: u64 = 0x51_6e5;
const RESIDUE_DEGREE: usize = 4;

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

fn example_outcome(
    report: genus_cli::CliResult<genus_cli::report::ExampleReport>,
    elapsed: Duration,
    limit: Duration,
) -> Outcome {
    match report {
        Ok(r) => {
            let failed: Vec<String> = r
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| format!("{} ({})", c.name, c.detail))
                .collect();
            let in_time = elapsed < limit;
            let detail = if failed.is_empty() {
                format!("{} checks, {elapsed:.2?} (limit {limit:?})", r.checks.len())
            } else {
                format!("failed: {}", failed.join("; "))
            };
            Outcome::new(failed.is_empty() && in_time, detail)
        }
        Err(e) => Outcome::new(false, e.to_string()),
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let r = examples::quadratic(None);
    example_outcome(r, start.elapsed(), QUADRATIC_LIMIT)
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let r = examples::quartic();
    example_outcome(r, start.elapsed(), QUARTIC_LIMIT)
}

fn sections_outcome(report: &OracleReport, sections: &[Section]) -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for &s in sections {
        let r = report.section(s);
        ok &= r.failed == 0 && r.checked > 0;
        parts.push(format!("{} {}/{}", r.name, r.checked - r.failed, r.checked));
        if let Some(c) = r.counterexamples.first() {
            parts.push(format!("first failure: {c}"));
        }
    }
    (ok, parts.join(", "))
}

fn criterion_3(sweep: &(OracleReport, Duration)) -> Outcome {
    let (report, elapsed) = sweep;
    let (ok, detail) = sections_outcome(report, &[Section::Maximality]);
    let enough_random = report.random_groups >= SWEEP_RANDOM as u64;
    Outcome::new(
        ok && enough_random && *elapsed < SWEEP_LIMIT,
        format!(
            "{detail}; {} cyclic and {} random groups over {:?}; {elapsed:.1?} (limit {SWEEP_LIMIT:?})",
            report.cyclic_groups, report.random_groups, report.moduli
        ),
    )
}

fn criterion_4(sweep: &(OracleReport, Duration)) -> Outcome {
    let (ok, detail) = sections_outcome(
        &sweep.0,
        &[
            Section::UnitStructure,
            Section::EncodeRoundtrip,
            Section::EncodeHomomorphism,
        ],
    );
    Outcome::new(ok, detail)
}

fn criterion_5(sweep: &(OracleReport, Duration)) -> Outcome {
    let (ok, detail) = sections_outcome(&sweep.0, &[Section::ComponentIdentity]);
    Outcome::new(ok, detail)
}

fn criterion_8(sweep: &(OracleReport, Duration)) -> Outcome {
    let (ok, detail) = sections_outcome(
        &sweep.0,
        &[
            Section::Idempotence,
            Section::Containment,
            Section::InfinityRamification,
        ],
    );
    Outcome::new(ok, detail)
}

/// Radicands `c D` for every constant and a few shapes of `D`, at every
/// exponent `m > 1` dividing `q - 1`. Non-cyclotomic radicals are skipped.
fn criterion_6() -> Outcome {
    let mut built = 0;
    let mut evaluations = 0u64;
    let mut failures = Vec::new();
    for q in [3u64, 4, 5, 7, 9] {
        let ring = PolyRing::new(FqField::new(q, None).expect("prime power"));
        let f = ring.field();
        let quad = ring.monic_irreducibles_of_degree(2).next().expect("exists");
        let shapes = [
            ring.parse("T").unwrap(),
            ring.parse("T+1").unwrap(),
            ring.parse("T^2+T").unwrap(),
            ring.parse("T^2").unwrap(),
            quad.clone(),
            ring.mul(&quad, &ring.parse("T").unwrap()),
        ];
        let primes: Vec<Poly> = ring.irreducibles_up_to(RESIDUE_DEGREE).collect();
        for m in (2..q).filter(|m| (q - 1) % m == 0) {
            for d in &shapes {
                for c in f.nonzero_elements() {
                    let a = RationalFn::from_poly(ring.scale(d, c));
                    let chi = match kummer_character(&ring, &a, m) {
                        Ok(chi) => chi,
                        Err(Error::NotCyclotomic(_)) => continue,
                        Err(e) => {
                            failures.push(format!("q={q} m={m} A={}: {e}", a.format(&ring)));
                            continue;
                        }
                    };
                    built += 1;
                    for p in primes.iter().filter(|p| chi.unit_group().is_unit(p)) {
                        evaluations += 1;
                        let symbol =
                            residue_symbol(&ring, &a, p, m).expect("coprime monic irreducible");
                        let value = chi.evaluate(p).expect("unit");
                        if value != Qz::new(symbol as i128, m) {
                            failures.push(format!(
                                "q={q} m={m} A={} Q={}: chi = {value}, symbol = {symbol}/{m}",
                                a.format(&ring),
                                ring.format(p)
                            ));
                        }
                    }
                }
            }
        }
    }
    Outcome::new(
        failures.is_empty() && built > 0,
        match failures.first() {
            None => format!("{built} characters, {evaluations} evaluations"),
            Some(first) => format!("{} mismatches, first: {first}", failures.len()),
        },
    )
}

fn random_poly(ring: &PolyRing, rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let q = ring.q() as u32;
    loop {
        let deg = rng.random_range(0..=max_deg);
        let coeffs = (0..=deg)
            .map(|_| {
                ring.field()
                    .from_raw(rng.random_range(0..q))
                    .expect("in range")
            })
            .collect();
        let p = Poly::from_coeffs(coeffs);
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_rational(ring: &PolyRing, rng: &mut ChaCha8Rng) -> RationalFn {
    let num = random_poly(ring, rng, 5);
    let den = random_poly(ring, rng, 5);
    RationalFn::new(ring, &num, &den).expect("nonzero denominator")
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();

    // multiplicativity of the sign and of the expansion at infinity
    let mut rng = ChaCha8Rng::seed_from_u64(SIGN_SEED);
    let rings: Vec<PolyRing> = [3u64, 4, 5, 7, 9]
        .iter()
        .map(|&q| PolyRing::new(FqField::new(q, None).unwrap()))
        .collect();
    for i in 0..SIGN_PAIRS {
        let ring = &rings[i % rings.len()];
        let f = ring.field();
        let (x, y) = (
            random_rational(ring, &mut rng),
            random_rational(ring, &mut rng),
        );
        let xy = x.mul(ring, &y).unwrap();
        let lhs = sign_infty(&xy).unwrap();
        let rhs = f.mul(sign_infty(&x).unwrap(), sign_infty(&y).unwrap());
        let ex = InfinityLocalElem::expand(ring, &x, 8).unwrap();
        let ey = InfinityLocalElem::expand(ring, &y, 8).unwrap();
        let exy = InfinityLocalElem::expand(ring, &xy, 8).unwrap();
        if lhs != rhs || ex.mul(f, &ey) != exy || ex.sign != sign_infty(&x).unwrap() {
            failures.push(format!(
                "q={} x={} y={}",
                ring.q(),
                x.format(ring),
                y.format(ring)
            ));
        }
    }

    // the local radical extension over F_5 with l = 2, every delta
    let f = FqField::new(5, None).unwrap();
    let ell = 2;
    let period = (f.order() - 1) as i64 * ell as i64;
    let window: Vec<LocalKummerElem> = (-period..=period)
        .flat_map(|m| {
            f.nonzero_elements()
                .map(move |xi| LocalKummerElem { m, xi })
        })
        .collect();
    let mut image_orders = Vec::new();
    let mut homomorphism_checks = 0u64;
    let mut compat_checks = 0u64;
    for delta in f.nonzero_elements() {
        let shape = LocalKummerShape::new(&f, ell, delta).unwrap();
        for &x in &window {
            let sx = shape.sign(&f, x).unwrap();
            for &y in &window {
                homomorphism_checks += 1;
                let sxy = shape.sign(&f, x.mul(&f, y)).unwrap();
                if sxy != f.mul(sx, shape.sign(&f, y).unwrap()) {
                    failures.push(format!(
                        "delta={} x={x:?} y={y:?}: sign not multiplicative",
                        f.format_elem(delta)
                    ));
                }
            }
            compat_checks += 1;
            if !norm_sign_compat(&f, &shape, x).unwrap() {
                failures.push(format!(
                    "delta={} x={x:?}: sign differs from sign of norm",
                    f.format_elem(delta)
                ));
            }
        }
        let image: std::collections::HashSet<FqElem> =
            window.iter().map(|&x| shape.sign(&f, x).unwrap()).collect();
        let claimed = shape.image_order(&f).unwrap();
        if image.len() as u64 != claimed {
            failures.push(format!(
                "delta={}: image has {} signs, claimed {claimed}",
                f.format_elem(delta),
                image.len()
            ));
        }
        image_orders.push(claimed);
    }

    // every sig_size call over one and two places
    let mut sig_calls = 0u64;
    let mut violations = 0u64;
    for (i, &a) in image_orders.iter().enumerate() {
        let mut calls = vec![vec![a]];
        calls.extend(image_orders[i..].iter().map(|&b| vec![a, b]));
        for images in calls {
            sig_calls += 1;
            match sig_size(f.order(), &images) {
                Ok(size) if size == images.iter().map(|&o| o as u128).product::<u128>() => {}
                _ => violations += 1,
            }
        }
    }
    if violations > 0 {
        failures.push(format!("{violations} sig_size divisibility violations"));
    }
    Outcome::new(
        failures.is_empty(),
        match failures.first() {
            None => format!(
                "{SIGN_PAIRS} random pairs, {homomorphism_checks} local pairs, {compat_checks} norm checks, {sig_calls} sig_size calls"
            ),
            Some(first) => format!("{} failures, first: {first}", failures.len()),
        },
    )
}

fn main() -> ExitCode {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let config = OracleConfig {
        max_phi: SWEEP_MAX_PHI,
        qs: SWEEP_QS.to_vec(),
        random: SWEEP_RANDOM,
        ..OracleConfig::default()
    };
    let start = Instant::now();
    let sweep = match oracle::run_with_jobs(&config, jobs) {
        Ok(report) => (report, start.elapsed()),
        Err(e) => {
            println!("sweep aborted: {e}");
            return ExitCode::FAILURE;
        }
    };

    let results = [
        ("1", "quadratic instance", criterion_1()),
        ("2", "quartic instance", criterion_2()),
        ("3", "extended genus maximality", criterion_3(&sweep)),
        ("4", "unit group structure", criterion_4(&sweep)),
        ("5", "character components", criterion_5(&sweep)),
        ("6", "power residue symbols", criterion_6()),
        ("7", "signs at infinity", criterion_7()),
        ("8", "idempotence and containment", criterion_8(&sweep)),
    ];
    let mut all = true;
    for (id, name, outcome) in &results {
        all &= outcome.passed;
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        println!("criterion {id} {name}: {verdict} ({})", outcome.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
