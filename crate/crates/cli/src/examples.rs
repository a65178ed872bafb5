//! The two reference instances over `F_5`, run end to end and compared
//! with their known fields.

use std::time::Instant;

use genus_core::abelian::AbelianFieldDesc;
use genus_core::kummer::kummer_character;
use genus_core::{
    genus_pipeline, AbelianGenusInput, CharacterGroup, CyclotomicFieldDesc, Error, ExactnessRule,
    FqElem, FqField, KummerExtensionDesc, LocalKummerShape, PolyRing, RationalFn,
};

use crate::report::{Check, ExampleReport};
use crate::CliResult;

pub const QUADRATIC_LIMIT_US: u64 = 1_000_000;
pub const QUARTIC_LIMIT_US: u64 = 5_000_000;

pub fn ring() -> PolyRing {
    PolyRing::new(FqField::new(5, None).expect("F_5"))
}

fn rf(ring: &PolyRing, text: &str) -> RationalFn {
    RationalFn::parse(ring, text).expect("embedded literal")
}

fn radicals(ring: &PolyRing, rads: &[(&str, u64)]) -> genus_core::Result<AbelianFieldDesc> {
    let rads: Vec<(RationalFn, u64)> = rads.iter().map(|(a, n)| (rf(ring, a), *n)).collect();
    AbelianFieldDesc::from_radicals(ring, &rads)
}

fn check(name: &str, ok: bool, detail: impl Into<String>) -> Check {
    Check::with_detail(name, ok, detail)
}

fn finish(
    name: &str,
    input: String,
    rule: ExactnessRule,
    checks: Vec<Check>,
    start: Instant,
    limit: u64,
) -> ExampleReport {
    let elapsed_us = start.elapsed().as_micros() as u64;
    let mut checks = checks;
    checks.push(check(
        "runtime",
        elapsed_us < limit,
        format!("{elapsed_us} us, limit {limit} us"),
    ));
    ExampleReport {
        name: name.into(),
        input,
        rule: rule.tag().into(),
        checks,
        elapsed_us,
        time_limit_us: limit,
    }
}

/// `k(sqrt(gamma T))`, `gamma = 2` unless overridden. Expected:
/// `gK = K`, `geK = k(sqrt T, sqrt 2)` with constants `F_25`, the
/// constants-pattern rule, and minimal positive degree 2.
pub fn quadratic(gamma: Option<FqElem>) -> CliResult<ExampleReport> {
    let start = Instant::now();
    let ring = ring();
    let f = ring.field();
    let gamma = gamma.unwrap_or_else(|| f.from_int(2));
    let kd = KummerExtensionDesc::new(&ring, 2, gamma, &ring.parse("T")?)?;
    let violations = kd.prime_exponent_violations();
    if !violations.is_empty() {
        return Err(Error::Precondition(violations.join("; ")).into());
    }
    let res = genus_pipeline(&AbelianGenusInput::Kummer(kd.clone()))?;
    let k = res.k.as_ref().expect("Kummer input keeps K");
    let g_k = res.g_k.as_ref().expect("Kummer input has gK");
    let expected_ge_k = radicals(&ring, &[("T", 2), ("2", 2)])?;
    let mut checks = vec![
        check(
            "gK = K",
            g_k.same_field(k)?,
            format!("[gK:k] = {}", g_k.degree()),
        ),
        match &res.ge_k {
            Some(ge_k) => check(
                "geK = k(sqrt(T), sqrt(2))",
                ge_k.same_field(&expected_ge_k)?,
                format!("[geK:k] = {}", ge_k.degree()),
            ),
            None => check("geK = k(sqrt(T), sqrt(2))", false, "geK not determined"),
        },
        check(
            "constants of geK have degree 2",
            res.ge_k_constants_degree() == Some(2),
            format!("{:?}", res.ge_k_constants_degree()),
        ),
        check(
            "constants-pattern rule",
            res.rule == ExactnessRule::ConstantsPattern,
            res.rule.tag(),
        ),
    ];
    let local = kd.infinity_data().local;
    let min_degree = local
        .map(|l| LocalKummerShape::new(f, 2, l.delta).map(|s| s.min_positive_degree(f)))
        .transpose()?;
    checks.push(check(
        "min_positive_degree = 2",
        min_degree == Some(2),
        format!("{min_degree:?}"),
    ));
    Ok(finish(
        "quadratic",
        kd.format(),
        res.rule,
        checks,
        start,
        QUADRATIC_LIMIT_US,
    ))
}

/// `k(4th root of 2(T^2+T))`. Expected: degrees `(4, 8, 16)` for
/// `(E, gE, geE)`, `[geE:gE] = 2 = e_inf(geE/gE)`, `|H| = 2`,
/// `E^H = k(sqrt(T^2+T))`, the bounds coincide, `geK = geE K` and
/// `gE = k(sqrt(4T), 4th root of ((T+1)/T))`.
pub fn quartic() -> CliResult<ExampleReport> {
    let start = Instant::now();
    let ring = ring();
    let kd = KummerExtensionDesc::new(&ring, 4, ring.field().from_int(2), &ring.parse("T^2+T")?)?;
    let violations = kd.square_exponent_violations();
    if !violations.is_empty() {
        return Err(Error::Precondition(violations.join("; ")).into());
    }
    let res = genus_pipeline(&AbelianGenusInput::Kummer(kd.clone()))?;
    let k = res.k.as_ref().expect("Kummer input keeps K");
    let degrees = (res.e.degree(), res.g_e.degree(), res.ge_e.degree());
    let index = res.ge_e.degree() / res.g_e.degree();
    let e_inf_ratio = res.ge_e.e_inf() / res.g_e.e_inf();
    let sqrt_d = CyclotomicFieldDesc::new(CharacterGroup::generated_by(
        res.e.unit_group().clone(),
        &[kummer_character(&ring, &rf(&ring, "T^2+T"), 2)?.to_modulus(res.e.unit_group())?],
    )?);
    let ge_e_k = AbelianFieldDesc::from_cyclotomic(&res.ge_e, kd.m()).compositum(k)?;
    let expected_g_e = radicals(&ring, &[("4*T", 2), ("(T+1)/T", 4)])?;
    let g_e = AbelianFieldDesc::from_cyclotomic(&res.g_e, 1);
    let recipe = kd.q_coefficients()?;
    let from_recipe = AbelianFieldDesc::from_radicals(&ring, &recipe.genus_radicals())?;
    let checks = vec![
        check(
            "degrees (4, 8, 16)",
            degrees == (4, 8, 16),
            format!("{degrees:?}"),
        ),
        check(
            "[geE:gE] = 2 = e_inf(geE/gE)",
            index == 2 && e_inf_ratio == 2,
            format!("{index}, {e_inf_ratio}"),
        ),
        check("|H| = 2", res.h_order == 2, res.h_order.to_string()),
        check(
            "E^H = k(sqrt(T^2+T))",
            res.e_h.same_field(&sqrt_d)?,
            format!("[E^H:k] = {}", res.e_h.degree()),
        ),
        check(
            "ge(g(E^H)) = geE",
            res.lower.same_field(&res.upper)?,
            format!("[lower:k] = {}", res.lower.degree()),
        ),
        check(
            "bounds-coincide rule",
            res.rule == ExactnessRule::BoundsCoincide,
            res.rule.tag(),
        ),
        match &res.ge_k {
            Some(ge_k) => check(
                "geK = geE K",
                ge_k.same_field(&ge_e_k)?,
                format!("[geK:k] = {}", ge_k.degree()),
            ),
            None => check("geK = geE K", false, "geK not determined"),
        },
        check(
            "gE = k(sqrt(4T), 4th root of ((T+1)/T))",
            g_e.same_field(&expected_g_e)?,
            "",
        ),
        check(
            "Q_i radicals give gE",
            from_recipe.same_field(&g_e)?,
            format!("{} radicals", recipe.genus_radicals().len()),
        ),
    ];
    Ok(finish(
        "quartic",
        kd.format(),
        res.rule,
        checks,
        start,
        QUARTIC_LIMIT_US,
    ))
}

pub fn run_all(gamma: Option<FqElem>) -> CliResult<Vec<ExampleReport>> {
    Ok(vec![quadratic(gamma)?, quartic()?])
}
