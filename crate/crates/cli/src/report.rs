//! JSON reports. The layout is versioned by [`SCHEMA_VERSION`]; the schema
//! itself is in `docs/report-schema.json`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use genus_core::abelian::AbelianFieldDesc;
use genus_core::{CyclotomicFieldDesc, FqField, GenusResult, PolyRing, ResidueUnitGroup};

use crate::CliResult;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    /// Absent for sweeps over several fields.
    pub field: Option<FieldEcho>,
    /// Inputs in normal form.
    pub input: BTreeMap<String, String>,
    pub result: Payload,
    pub checks: Vec<Check>,
    pub timing_us: u64,
}

impl Report {
    pub fn new(
        command: &str,
        field: Option<&FqField>,
        input: BTreeMap<String, String>,
        result: Payload,
    ) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            field: field.map(FieldEcho::of),
            input,
            result,
            checks: Vec::new(),
            timing_us: 0,
        }
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldEcho {
    pub q: u64,
    pub p: u64,
    pub s: u32,
    /// Coefficients of the defining polynomial of `F_q` over `F_p`, low to
    /// high; empty for prime fields.
    pub modulus: Vec<u32>,
}

impl FieldEcho {
    pub fn of(f: &FqField) -> Self {
        FieldEcho {
            q: f.order(),
            p: f.characteristic(),
            s: f.degree(),
            modulus: if f.is_prime_field() {
                Vec::new()
            } else {
                f.modulus().to_vec()
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: String::new(),
        }
    }

    pub fn with_detail(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Payload {
    UnitGroup(UnitGroupReport),
    Characters(CharReport),
    ExtGenus(ExtGenusReport),
    Kummer(Box<KummerReport>),
    Oracle(crate::oracle::OracleReport),
    WorkedExamples(WorkedExamplesReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalFactor {
    pub prime: String,
    pub alpha: u32,
    /// Cyclic orders of this factor's coordinates.
    pub orders: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitGroupReport {
    pub modulus: String,
    pub order: u128,
    pub invariant_factors: Vec<u64>,
    /// Units generating the invariant factors, in order.
    pub generators: Vec<String>,
    /// Coordinates used by encodings and character duals.
    pub coordinates: Vec<LocalFactor>,
}

impl UnitGroupReport {
    pub fn of(g: &ResidueUnitGroup) -> Self {
        let ring = g.ring();
        UnitGroupReport {
            modulus: ring.format(g.modulus()),
            order: g.order(),
            invariant_factors: g.invariant_factors(),
            generators: g
                .invariant_generators()
                .iter()
                .map(|u| ring.format(u))
                .collect(),
            coordinates: g
                .locals()
                .iter()
                .map(|l| LocalFactor {
                    prime: ring.format(l.prime()),
                    alpha: l.alpha(),
                    orders: l.group().orders().to_vec(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterInfo {
    pub dual: Vec<u64>,
    pub order: u64,
    pub conductor: String,
    /// Value at a generator of `F_q^*`, as `a/b` in `Q/Z`.
    pub on_constants: String,
    /// `(P, |chi_P|)` for each prime of the modulus.
    pub components: Vec<(String, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evaluation {
    pub at: String,
    /// One value per generator.
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharReport {
    pub units: UnitGroupReport,
    pub order: u128,
    pub generators: Vec<CharacterInfo>,
    pub evaluations: Vec<Evaluation>,
    pub field: CycloField,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRow {
    pub prime: String,
    pub alpha: u32,
    pub e: u128,
    pub f: u64,
    pub g: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloField {
    /// Modulus the characters are written at.
    pub modulus: String,
    pub conductor: String,
    pub degree: u128,
    pub generators: Vec<Vec<u64>>,
    pub ramification: Vec<PrimeRow>,
    pub e_inf: u64,
    pub f_inf: u64,
    pub g_inf: u128,
}

impl CycloField {
    pub fn of(e: &CyclotomicFieldDesc) -> Self {
        let ring = e.unit_group().ring();
        let report = e.ramification_report();
        CycloField {
            modulus: ring.format(e.modulus()),
            conductor: ring.format(&e.characters().conductor()),
            degree: e.degree(),
            generators: e.characters().subgroup().generators(),
            ramification: report
                .primes
                .iter()
                .map(|s| PrimeRow {
                    prime: ring.format(&s.prime),
                    alpha: s.alpha,
                    e: s.e,
                    f: s.f,
                    g: s.g,
                })
                .collect(),
            e_inf: report.e_inf,
            f_inf: report.f_inf,
            g_inf: report.g_inf,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianField {
    pub modulus: String,
    /// Degree of the constant field extension in the ambient.
    pub m: u64,
    pub degree: u128,
    /// Duals in `G_N x Z/m`, constants coordinate last.
    pub generators: Vec<Vec<u64>>,
    /// `(P, e_P)` for each prime of the modulus.
    pub ramification: Vec<(String, u128)>,
    pub e_inf: u128,
    pub f_inf: u128,
    pub constants_degree: u128,
}

impl AbelianField {
    pub fn of(k: &AbelianFieldDesc) -> Self {
        let ring = k.unit_group().ring();
        AbelianField {
            modulus: ring.format(k.modulus()),
            m: k.m(),
            degree: k.degree(),
            generators: k.characters().generators(),
            ramification: k
                .unit_group()
                .locals()
                .iter()
                .enumerate()
                .map(|(i, l)| (ring.format(l.prime()), k.e_at(i)))
                .collect(),
            e_inf: k.e_inf(),
            f_inf: k.f_inf(),
            constants_degree: k.constants_degree(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtGenusReport {
    pub e: CycloField,
    pub g_e: CycloField,
    pub ge_e: CycloField,
    /// `[geE : gE]`.
    pub index: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfinityReport {
    pub e: u64,
    pub f: u64,
    /// Local radicand `delta` and shift `r`, when the completion is a tame
    /// prime-degree radical extension.
    pub delta: Option<String>,
    pub r: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignReport {
    pub delta: String,
    pub min_positive_degree: u64,
    pub image_order: u64,
    pub sig_size: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalForm {
    pub genus: Vec<(String, u64)>,
    pub fixed: Vec<(String, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusReport {
    pub e: CycloField,
    pub h_order: u128,
    pub h_generators: Vec<Vec<u64>>,
    pub e_h: CycloField,
    pub g_e: CycloField,
    pub ge_e: CycloField,
    pub g_e_h: CycloField,
    pub lower: CycloField,
    pub upper: CycloField,
    pub d: Option<CycloField>,
    pub g_k: Option<AbelianField>,
    pub ge_k: Option<AbelianField>,
    pub ge_k_lower: Option<AbelianField>,
    pub ge_k_upper: Option<AbelianField>,
    pub rule: String,
    pub exact: bool,
}

impl GenusReport {
    pub fn of(r: &GenusResult) -> Self {
        let opt = |f: &Option<AbelianFieldDesc>| f.as_ref().map(AbelianField::of);
        GenusReport {
            e: CycloField::of(&r.e),
            h_order: r.h_order,
            h_generators: r.h.generators(),
            e_h: CycloField::of(&r.e_h),
            g_e: CycloField::of(&r.g_e),
            ge_e: CycloField::of(&r.ge_e),
            g_e_h: CycloField::of(&r.g_e_h),
            lower: CycloField::of(&r.lower),
            upper: CycloField::of(&r.upper),
            d: r.d.as_ref().map(CycloField::of),
            g_k: opt(&r.g_k),
            ge_k: opt(&r.ge_k),
            ge_k_lower: opt(&r.ge_k_lower),
            ge_k_upper: opt(&r.ge_k_upper),
            rule: r.rule.tag().into(),
            exact: r.is_exact(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KummerReport {
    pub radicand: String,
    pub m: u64,
    pub ell: u64,
    pub d_factored: Vec<(String, u32)>,
    pub k: AbelianField,
    /// `[EK : K]`.
    pub constants_index: u128,
    pub infinity: InfinityReport,
    pub prime_exponent_violations: Vec<String>,
    pub square_exponent_violations: Vec<String>,
    pub radical_form: Option<RadicalForm>,
    pub signs: Option<SignReport>,
    pub genus: GenusReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkedExamplesReport {
    pub examples: Vec<ExampleReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleReport {
    pub name: String,
    pub input: String,
    pub rule: String,
    pub checks: Vec<Check>,
    pub elapsed_us: u64,
    pub time_limit_us: u64,
}

pub fn format_radicals(
    ring: &PolyRing,
    rads: &[(genus_core::RationalFn, u64)],
) -> Vec<(String, u64)> {
    rads.iter().map(|(a, n)| (a.format(ring), *n)).collect()
}

pub fn write_report(report: &Report, path: &std::path::Path) -> CliResult<()> {
    std::fs::write(path, report.to_json()).map_err(|source| crate::CliError::Io {
        path: path.display().to_string(),
        source,
    })
}
