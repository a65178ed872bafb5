use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use genus_core::kummer::kummer_character;
use genus_core::signs::{norm_sign_compat, sig_size};
use genus_core::{
    genus_pipeline, AbelianGenusInput, CharacterGroup, CyclotomicFieldDesc, DirichletCharacter,
    ExactnessRule, KummerExtensionDesc, LocalKummerElem, LocalKummerShape, Poly, PolyRing,
    RationalFn, ResidueUnitGroup,
};

use crate::args::{Cli, Command};
use crate::oracle::{self, OracleConfig};
use crate::report::*;
use crate::{build_ring, examples, CliError, CliResult};

/// Runs the command and returns its report with timing filled in.
pub fn execute(cli: &Cli) -> CliResult<Report> {
    let start = Instant::now();
    let g = &cli.global;
    let mut report = match &cli.command {
        Command::Unitgroup { n } => unitgroup(&build_ring(g.q, g.field_modulus.as_deref())?, n)?,
        Command::Char { n, gens, at } => {
            characters(&build_ring(g.q, g.field_modulus.as_deref())?, n, gens, at)?
        }
        Command::Extgenus { n, gens } => {
            extgenus(&build_ring(g.q, g.field_modulus.as_deref())?, n, gens)?
        }
        Command::Kummer { m, gamma, d } => {
            kummer(&build_ring(g.q, g.field_modulus.as_deref())?, *m, gamma, d)?
        }
        Command::Oracle {
            max_phi,
            qs,
            random,
            max_degree,
            corrupt,
        } => {
            let config = OracleConfig {
                max_phi: *max_phi,
                qs: qs.clone(),
                random: *random,
                max_degree: *max_degree,
                seed: g.seed,
                corrupt: *corrupt,
            };
            oracle_report(&config, g.jobs)?
        }
        Command::WorkedExamples { gamma } => worked_examples(gamma.as_deref())?,
    };
    report.timing_us = start.elapsed().as_micros() as u64;
    Ok(report)
}

/// 0 on success, 2 when the answer is only an interval, 3 on a failed check.
pub fn exit_code(report: &Report) -> i32 {
    if report.failed_checks().next().is_some() {
        return 3;
    }
    match &report.result {
        Payload::Kummer(k) if k.genus.rule == ExactnessRule::IntervalOnly.tag() => 2,
        _ => 0,
    }
}

fn parse_modulus(ring: &PolyRing, text: &str) -> CliResult<Poly> {
    let n = ring.parse(text)?;
    if !n.is_monic() {
        return Err(CliError::Input(format!(
            "modulus {} is not monic",
            ring.format(&n)
        )));
    }
    Ok(n)
}

fn unit_group(ring: &PolyRing, text: &str) -> CliResult<Arc<ResidueUnitGroup>> {
    Ok(Arc::new(ResidueUnitGroup::new(
        ring,
        &parse_modulus(ring, text)?,
    )?))
}

fn input(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

pub fn unitgroup(ring: &PolyRing, n: &str) -> CliResult<Report> {
    let units = unit_group(ring, n)?;
    let payload = Payload::UnitGroup(UnitGroupReport::of(&units));
    let mut report = Report::new(
        "unitgroup",
        Some(ring.field()),
        input(&[("N", ring.format(units.modulus()))]),
        payload,
    );
    let roundtrip = units
        .invariant_generators()
        .iter()
        .all(|u| units.decode(&units.encode(u).unwrap()) == *u);
    report
        .checks
        .push(Check::new("generators-roundtrip", roundtrip));
    Ok(report)
}

/// `full`, `dual:c1,c2,...` or `kummer:m:A`.
pub fn parse_generators(
    ring: &PolyRing,
    units: &Arc<ResidueUnitGroup>,
    specs: &[String],
) -> CliResult<Vec<DirichletCharacter>> {
    let mut out = Vec::new();
    for spec in specs {
        let spec = spec.trim();
        if spec == "full" {
            out.extend(CharacterGroup::full(units.clone()).generators());
        } else if let Some(rest) = spec.strip_prefix("dual:") {
            let dual = rest
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<u64>()
                        .map_err(|_| CliError::Input(format!("bad dual coordinate in '{spec}'")))
                })
                .collect::<CliResult<Vec<u64>>>()?;
            if dual.len() != units.group().rank() {
                return Err(CliError::Input(format!(
                    "'{spec}' has {} coordinates, the unit group has {}",
                    dual.len(),
                    units.group().rank()
                )));
            }
            out.push(DirichletCharacter::new(units.clone(), dual)?);
        } else if let Some(rest) = spec.strip_prefix("kummer:") {
            let (m, a) = rest
                .split_once(':')
                .ok_or_else(|| CliError::Input(format!("expected kummer:m:A, got '{spec}'")))?;
            let m: u64 = m
                .parse()
                .map_err(|_| CliError::Input(format!("bad exponent in '{spec}'")))?;
            let a = RationalFn::parse(ring, a)?;
            out.push(kummer_character(ring, &a, m)?.to_modulus(units)?);
        } else {
            return Err(CliError::Input(format!("unknown character spec '{spec}'")));
        }
    }
    Ok(out)
}

fn character_info(chi: &DirichletCharacter) -> CharacterInfo {
    let units = chi.unit_group();
    let ring = units.ring();
    CharacterInfo {
        dual: chi.dual().to_vec(),
        order: chi.order(),
        conductor: ring.format(&chi.conductor_poly()),
        on_constants: chi.restrict_to_constants().to_string(),
        components: units
            .locals()
            .iter()
            .map(|l| {
                (
                    ring.format(l.prime()),
                    chi.component(l.prime()).expect("prime of N").order(),
                )
            })
            .collect(),
    }
}

pub fn characters(ring: &PolyRing, n: &str, specs: &[String], at: &[String]) -> CliResult<Report> {
    let units = unit_group(ring, n)?;
    let gens = parse_generators(ring, &units, specs)?;
    let x = CharacterGroup::generated_by(units.clone(), &gens)?;
    let mut evaluations = Vec::new();
    for text in at {
        let b = ring.parse(text)?;
        let values = gens
            .iter()
            .map(|chi| chi.evaluate(&b).map(|v| v.to_string()))
            .collect::<genus_core::Result<Vec<_>>>()?;
        evaluations.push(Evaluation {
            at: ring.format(&b),
            values,
        });
    }
    let e = CyclotomicFieldDesc::new(x.clone());
    let mut report = Report::new(
        "char",
        Some(ring.field()),
        input(&[
            ("N", ring.format(units.modulus())),
            ("gen", specs.join(" ")),
        ]),
        Payload::Characters(CharReport {
            units: UnitGroupReport::of(&units),
            order: x.order(),
            generators: gens.iter().map(character_info).collect(),
            evaluations,
            field: CycloField::of(&e),
        }),
    );
    let units_all = units.units();
    let components_ok = gens.iter().all(|chi| {
        units_all.iter().all(|u| {
            let whole = chi.evaluate(u).expect("unit");
            let parts = units
                .locals()
                .iter()
                .map(|l| {
                    chi.component(l.prime())
                        .and_then(|c| c.evaluate(u))
                        .expect("unit")
                })
                .fold(genus_core::Qz::new(0, 1), |acc, v| acc + v);
            whole == parts
        })
    });
    report
        .checks
        .push(Check::new("components-multiply-back", components_ok));
    Ok(report)
}

fn genus_checks(
    e: &CyclotomicFieldDesc,
    g_e: &CyclotomicFieldDesc,
    ge_e: &CyclotomicFieldDesc,
) -> CliResult<Vec<Check>> {
    let primes = 0..e.unit_group().num_primes();
    Ok(vec![
        Check::new("E in gE", e.is_subfield_of(g_e)?),
        Check::new("gE in geE", g_e.is_subfield_of(ge_e)?),
        Check::new("ge(geE) = geE", ge_e.extended_genus().same_field(ge_e)?),
        Check::new("e_inf(gE) = e_inf(E)", g_e.e_inf() == e.e_inf()),
        Check::new(
            "e_P(geE) = e_P(E)",
            primes.into_iter().all(|i| ge_e.e_at(i) == e.e_at(i)),
        ),
    ])
}

pub fn extgenus(ring: &PolyRing, n: &str, specs: &[String]) -> CliResult<Report> {
    let units = unit_group(ring, n)?;
    let gens = parse_generators(ring, &units, specs)?;
    let e = CyclotomicFieldDesc::new(CharacterGroup::generated_by(units.clone(), &gens)?);
    let (g_e, ge_e) = (e.genus(), e.extended_genus());
    let mut report = Report::new(
        "extgenus",
        Some(ring.field()),
        input(&[
            ("N", ring.format(units.modulus())),
            ("gen", specs.join(" ")),
        ]),
        Payload::ExtGenus(ExtGenusReport {
            e: CycloField::of(&e),
            g_e: CycloField::of(&g_e),
            ge_e: CycloField::of(&ge_e),
            index: ge_e.degree() / g_e.degree(),
        }),
    );
    report.checks = genus_checks(&e, &g_e, &ge_e)?;
    Ok(report)
}

pub fn kummer_report(kd: &KummerExtensionDesc) -> CliResult<(KummerReport, Vec<Check>)> {
    let ring = kd.ring();
    let field = ring.field();
    let k = kd.field()?;
    let (_, constants_index) = kd.associated_cyclotomic()?;
    let inf = kd.infinity_data();
    let square_violations = kd.square_exponent_violations();
    let radical_form = if square_violations.is_empty() {
        let qc = kd.q_coefficients()?;
        Some(RadicalForm {
            genus: format_radicals(ring, &qc.genus_radicals()),
            fixed: format_radicals(ring, &qc.fixed_radicals()),
        })
    } else {
        None
    };
    let mut checks = Vec::new();
    let signs = match inf.local {
        Some(local) => {
            let shape = LocalKummerShape::new(field, kd.ell(), local.delta)?;
            let image_order = shape.image_order(field)?;
            let compat = (-(kd.ell() as i64)..=kd.ell() as i64).all(|m| {
                field.nonzero_elements().all(|xi| {
                    norm_sign_compat(field, &shape, LocalKummerElem { m, xi }).unwrap_or(false)
                })
            });
            checks.push(Check::new("sign of x = sign of its norm", compat));
            Some(SignReport {
                delta: field.format_elem(local.delta),
                min_positive_degree: shape.min_positive_degree(field),
                image_order,
                sig_size: sig_size(field.order(), &[image_order])?,
            })
        }
        None => None,
    };
    let res = genus_pipeline(&AbelianGenusInput::Kummer(kd.clone()))?;
    checks.extend(genus_checks(&res.e, &res.g_e, &res.ge_e)?);
    checks.push(Check::new(
        "lower in upper",
        res.lower.is_subfield_of(&res.upper)?,
    ));
    checks.push(Check::new(
        "K in gK",
        match &res.g_k {
            Some(g_k) => k.is_subfield_of(g_k)?,
            None => true,
        },
    ));
    checks.push(Check::new(
        "gK in geK",
        match (&res.g_k, &res.ge_k) {
            (Some(g), Some(ge)) => g.is_subfield_of(ge)?,
            _ => true,
        },
    ));
    let report = KummerReport {
        radicand: kd.radicand().format(ring),
        m: kd.m(),
        ell: kd.ell(),
        d_factored: kd
            .d_factored()
            .factors
            .iter()
            .map(|(p, a)| (ring.format(p), *a))
            .collect(),
        k: AbelianField::of(&k),
        constants_index,
        infinity: InfinityReport {
            e: inf.e,
            f: inf.f,
            delta: inf.local.map(|l| field.format_elem(l.delta)),
            r: inf.local.map(|l| l.r),
        },
        prime_exponent_violations: kd.prime_exponent_violations(),
        square_exponent_violations: square_violations,
        radical_form,
        signs,
        genus: GenusReport::of(&res),
    };
    Ok((report, checks))
}

pub fn kummer(ring: &PolyRing, m: u64, gamma: &str, d: &str) -> CliResult<Report> {
    let gamma = ring.field().parse_elem(gamma)?;
    let d = ring.parse(d)?;
    let kd = KummerExtensionDesc::new(ring, m, gamma, &d)?;
    let (payload, checks) = kummer_report(&kd)?;
    let mut report = Report::new(
        "kummer",
        Some(ring.field()),
        input(&[
            ("m", m.to_string()),
            ("gamma", ring.field().format_elem(gamma)),
            ("D", ring.format(&d)),
        ]),
        Payload::Kummer(Box::new(payload)),
    );
    report.checks = checks;
    Ok(report)
}

pub fn oracle_report(config: &OracleConfig, jobs: usize) -> CliResult<Report> {
    let result = oracle::run_with_jobs(config, jobs)?;
    let checks = result
        .sections
        .iter()
        .map(|s| Check::new(&s.name, s.failed == 0))
        .collect();
    let mut report = Report::new(
        "oracle",
        None,
        input(&[
            ("max_phi", config.max_phi.to_string()),
            (
                "qs",
                config
                    .qs
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
            ),
            ("random", config.random.to_string()),
            ("seed", config.seed.to_string()),
            ("corrupt", config.corrupt.to_string()),
        ]),
        Payload::Oracle(result),
    );
    report.checks = checks;
    Ok(report)
}

pub fn worked_examples(gamma: Option<&str>) -> CliResult<Report> {
    let ring = examples::ring();
    let gamma = gamma.map(|g| ring.field().parse_elem(g)).transpose()?;
    let runs = examples::run_all(gamma)?;
    let checks = runs
        .iter()
        .flat_map(|r| {
            r.checks.iter().map(move |c| {
                Check::with_detail(
                    &format!("{}: {}", r.name, c.name),
                    c.passed,
                    c.detail.clone(),
                )
            })
        })
        .collect();
    let mut report = Report::new(
        "worked-examples",
        Some(ring.field()),
        input(&[(
            "gamma",
            gamma.map_or("default".into(), |g| ring.field().format_elem(g)),
        )]),
        Payload::WorkedExamples(WorkedExamplesReport { examples: runs }),
    );
    report.checks = checks;
    Ok(report)
}
