//! Brute-force sweep over every modulus `N` with `Phi(N)` below a bound.
//!
//! Structure comes from multiplication tables, `e_P` from counting the
//! distinct restrictions of a character group to each local factor, and
//! `e_inf` from counting values on a generator of `F_q^*`. The library's
//! answers are compared with these counts.

use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use genus_core::arith::{factor_u64, gcd, lcm};
use genus_core::{
    CharacterGroup, CyclotomicFieldDesc, FqField, GroupElem, Poly, PolyRing, Qz, ResidueUnitGroup,
};

use crate::{CliError, CliResult};

/// Counterexamples kept per section.
const MAX_COUNTEREXAMPLES: usize = 5;

/// Unramified primes checked per character group, by increasing degree.
const SPLITTING_PRIMES: usize = 6;

/// Draws per random non-cyclic group before falling back to the full dual.
const RANDOM_ATTEMPTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_phi: u64,
    pub qs: Vec<u64>,
    /// Random non-cyclic character groups over the whole sweep.
    pub random: usize,
    pub max_degree: Option<usize>,
    pub seed: u64,
    /// Perturb one character component so the component identity fails.
    pub corrupt: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_phi: 200,
            qs: vec![2, 3, 5],
            random: 100,
            max_degree: None,
            seed: crate::DEFAULT_SEED,
            corrupt: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Section {
    UnitStructure,
    EncodeRoundtrip,
    EncodeHomomorphism,
    ComponentIdentity,
    Maximality,
    Idempotence,
    Containment,
    InfinityRamification,
    Splitting,
}

impl Section {
    pub const ALL: [Section; 9] = [
        Section::UnitStructure,
        Section::EncodeRoundtrip,
        Section::EncodeHomomorphism,
        Section::ComponentIdentity,
        Section::Maximality,
        Section::Idempotence,
        Section::Containment,
        Section::InfinityRamification,
        Section::Splitting,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Section::UnitStructure => "unit-structure",
            Section::EncodeRoundtrip => "encode-roundtrip",
            Section::EncodeHomomorphism => "encode-homomorphism",
            Section::ComponentIdentity => "component-identity",
            Section::Maximality => "maximality",
            Section::Idempotence => "idempotence",
            Section::Containment => "containment",
            Section::InfinityRamification => "infinity-ramification",
            Section::Splitting => "splitting",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionResult {
    pub name: String,
    pub checked: u64,
    pub failed: u64,
    pub counterexamples: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    /// `(q, number of moduli)`.
    pub moduli: Vec<(u64, u64)>,
    pub cyclic_groups: u64,
    pub random_groups: u64,
    pub sections: Vec<SectionResult>,
    pub passed: bool,
}

impl OracleReport {
    pub fn section(&self, s: Section) -> &SectionResult {
        self.sections
            .iter()
            .find(|r| r.name == s.name())
            .expect("every section is reported")
    }
}

#[derive(Debug, Clone)]
struct Tally {
    sections: Vec<SectionResult>,
    cyclic: u64,
    random: u64,
}

impl Tally {
    fn new() -> Self {
        Tally {
            sections: Section::ALL
                .iter()
                .map(|s| SectionResult {
                    name: s.name().into(),
                    checked: 0,
                    failed: 0,
                    counterexamples: Vec::new(),
                })
                .collect(),
            cyclic: 0,
            random: 0,
        }
    }

    fn record(&mut self, s: Section, ok: bool, witness: impl FnOnce() -> String) {
        let r = &mut self.sections[s as usize];
        r.checked += 1;
        if !ok {
            r.failed += 1;
            if r.counterexamples.len() < MAX_COUNTEREXAMPLES {
                r.counterexamples.push(witness());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.sections.iter_mut().zip(other.sections) {
            a.checked += b.checked;
            a.failed += b.failed;
            let room = MAX_COUNTEREXAMPLES.saturating_sub(a.counterexamples.len());
            a.counterexamples
                .extend(b.counterexamples.into_iter().take(room));
        }
        self.cyclic += other.cyclic;
        self.random += other.random;
        self
    }
}

/// Number of monic irreducibles of degree `k` over `F_q`.
fn irreducible_count(q: u64, k: u32) -> f64 {
    let mut sum = 0f64;
    for j in 1..=k {
        if !k.is_multiple_of(j) {
            continue;
        }
        let fac = factor_u64(j as u64);
        if fac.iter().any(|&(_, e)| e > 1) {
            continue;
        }
        let mu = if fac.len().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        sum += mu * (q as f64).powi((k / j) as i32);
    }
    sum / k as f64
}

/// `q^d prod_{deg P <= d} (1 - q^-deg P)`, a lower bound for `Phi(N)` over
/// all `N` of degree `d`.
fn phi_lower_bound(q: u64, d: u32) -> f64 {
    let mut bound = (q as f64).powi(d as i32);
    for k in 1..=d {
        bound *= (1.0 - (q as f64).powi(-(k as i32))).powf(irreducible_count(q, k));
    }
    bound
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub ring: PolyRing,
    pub n: Poly,
}

impl Instance {
    fn label(&self) -> String {
        format!("q={} N={}", self.ring.q(), self.ring.format(&self.n))
    }
}

/// Every monic `N` with `Phi(N) <= max_phi`, by `q` then degree.
pub fn moduli(config: &OracleConfig) -> CliResult<Vec<Instance>> {
    let mut out = Vec::new();
    for &q in &config.qs {
        let ring = PolyRing::new(FqField::new(q, None)?);
        for d in 0u32.. {
            if config.max_degree.is_some_and(|m| d as usize > m) {
                break;
            }
            // tiny slack so rounding never cuts off a real modulus
            if phi_lower_bound(q, d) > config.max_phi as f64 * (1.0 + 1e-9) {
                break;
            }
            for n in ring.monic_of_degree(d as usize) {
                let phi = ring.factor(&n)?.euler_phi(&ring);
                if phi <= config.max_phi.into() {
                    out.push(Instance {
                        ring: ring.clone(),
                        n,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// All residues of degree below `deg N` prime to `N`, by enumeration.
fn brute_units(ring: &PolyRing, n: &Poly) -> Vec<Poly> {
    if n.deg() == 0 {
        return vec![Poly::one()];
    }
    let elems: Vec<_> = ring.field().elements().collect();
    let d = n.deg();
    let mut idx = vec![0usize; d];
    let mut out = Vec::new();
    loop {
        let p = Poly::from_coeffs(idx.iter().map(|&i| elems[i]).collect());
        if !p.is_zero() && ring.gcd(&p, n).is_one() {
            out.push(p);
        }
        let mut k = 0;
        while k < d {
            idx[k] += 1;
            if idx[k] < elems.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == d {
            return out;
        }
    }
}

fn brute_order(ring: &PolyRing, u: &Poly, n: &Poly) -> u64 {
    if n.deg() == 0 {
        return 1;
    }
    let mut x = u.clone();
    let mut k = 1;
    while !x.is_one() {
        x = ring.mulmod(&x, u, n);
        k += 1;
    }
    k
}

/// Invariant factors, ascending and without 1s, from the counts
/// `|G[p^k]|` of a group given by its element orders.
fn invariant_factors_from_orders(orders: &[u64]) -> Vec<u64> {
    let size = orders.len() as u64;
    let mut columns: Vec<Vec<u64>> = Vec::new();
    for (p, _) in factor_u64(size) {
        // r[k-1] = number of cyclic p-factors of order >= p^k
        let mut r = Vec::new();
        let mut prev = 1u64;
        let mut pk = p;
        loop {
            let count = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
            if count == prev {
                break;
            }
            let mut ratio = count / prev;
            let mut rank = 0;
            while ratio > 1 {
                ratio /= p;
                rank += 1;
            }
            r.push(rank);
            prev = count;
            pk *= p;
        }
        // exponents a_i = #{k : r_k >= i}, largest first
        let factors = r.first().copied().unwrap_or(0);
        let col: Vec<u64> = (1..=factors)
            .map(|i| p.pow(r.iter().filter(|&&rk| rk >= i).count() as u32))
            .collect();
        columns.push(col);
    }
    let width = columns.iter().map(Vec::len).max().unwrap_or(0);
    let mut out: Vec<u64> = (0..width)
        .map(|i| {
            columns
                .iter()
                .map(|c| c.get(i).copied().unwrap_or(1))
                .product()
        })
        .collect();
    out.retain(|&d| d > 1);
    out.sort_unstable();
    out
}

struct Context<'a> {
    inst: &'a Instance,
    units: &'a Arc<ResidueUnitGroup>,
    locals: Vec<Arc<ResidueUnitGroup>>,
    duals: Vec<GroupElem>,
    beta: GroupElem,
    unramified: Vec<(Poly, GroupElem)>,
}

impl Context<'_> {
    fn local_parts(&self, c: &[u64]) -> Vec<GroupElem> {
        (0..self.locals.len())
            .map(|i| self.units.local_part(c, i))
            .collect()
    }
}

fn check_structure(ctx: &Context, corrupt: bool, tally: &mut Tally) -> CliResult<()> {
    let (inst, units) = (ctx.inst, ctx.units);
    let ring = &inst.ring;
    let all = brute_units(ring, &inst.n);
    let orders: Vec<u64> = all.iter().map(|u| brute_order(ring, u, &inst.n)).collect();
    let brute = invariant_factors_from_orders(&orders);
    let mut claimed = units.invariant_factors();
    claimed.retain(|&d| d > 1);
    claimed.sort_unstable();
    let ok = brute == claimed && units.order() == all.len() as u128;
    tally.record(Section::UnitStructure, ok, || {
        format!(
            "{}: brute {brute:?} ({} units), library {claimed:?} (order {})",
            inst.label(),
            all.len(),
            units.order()
        )
    });

    let mut codes = Vec::with_capacity(all.len());
    for u in &all {
        let code = units.encode(u)?;
        let back = units.decode(&code);
        tally.record(Section::EncodeRoundtrip, back == *u, || {
            format!(
                "{}: {} -> {code:?} -> {}",
                inst.label(),
                ring.format(u),
                ring.format(&back)
            )
        });
        codes.push(code);
    }
    for i in 0..all.len() {
        let j = (7 * i + 3) % all.len();
        let prod = if inst.n.deg() == 0 {
            Poly::one()
        } else {
            ring.mulmod(&all[i], &all[j], &inst.n)
        };
        let lhs = units.encode(&prod)?;
        let rhs = units.group().add(&codes[i], &codes[j]);
        tally.record(Section::EncodeHomomorphism, lhs == rhs, || {
            format!(
                "{}: encode({} * {}) = {lhs:?}, sum {rhs:?}",
                inst.label(),
                ring.format(&all[i]),
                ring.format(&all[j])
            )
        });
    }

    // local encodings of every unit, one per prime of N
    let local_codes: Vec<Vec<GroupElem>> = all
        .iter()
        .map(|u| {
            ctx.locals
                .iter()
                .map(|l| l.encode(u))
                .collect::<genus_core::Result<Vec<_>>>()
        })
        .collect::<genus_core::Result<_>>()?;
    for (ci, chi) in ctx.duals.iter().enumerate() {
        let mut comps = ctx.local_parts(chi);
        if corrupt && ci == 1 {
            let orders = ctx.locals[0].group().orders();
            comps[0][0] = (comps[0][0] + 1) % orders[0];
        }
        for (u, (code, local)) in all.iter().zip(codes.iter().zip(&local_codes)) {
            let whole = units.group().pairing(chi, code);
            let parts = comps
                .iter()
                .zip(local)
                .zip(&ctx.locals)
                .fold(Qz::new(0, 1), |acc, ((c, x), l)| {
                    acc + l.group().pairing(c, x)
                });
            tally.record(Section::ComponentIdentity, whole == parts, || {
                format!(
                    "{}: chi={chi:?} u={}: prod chi_P(u) = {}, chi(u) = {}",
                    inst.label(),
                    ring.format(u),
                    parts,
                    whole
                )
            });
        }
    }
    Ok(())
}

/// `|X_P|` for each prime and `e_inf`, by counting distinct restrictions.
fn brute_ramification(ctx: &Context, elements: &[GroupElem]) -> (Vec<HashSet<GroupElem>>, usize) {
    let mut locals = vec![HashSet::new(); ctx.locals.len()];
    let mut at_inf = HashSet::new();
    for c in elements {
        for (set, part) in locals.iter_mut().zip(ctx.local_parts(c)) {
            set.insert(part);
        }
        at_inf.insert(ctx.units.group().pairing(c, &ctx.beta));
    }
    (locals, at_inf.len())
}

fn check_group(ctx: &Context, x: &CharacterGroup, tally: &mut Tally) -> CliResult<()> {
    let inst = ctx.inst;
    let label = || format!("{} X=<{:?}>", inst.label(), x.subgroup().generators());
    let e = CyclotomicFieldDesc::new(x.clone());
    let y = e.extended_genus();
    let g_e = e.genus();

    let x_elems = x.subgroup().elements();
    let y_elems = y.characters().subgroup().elements();
    let (x_local, x_inf) = brute_ramification(ctx, &x_elems);
    let (y_local, _) = brute_ramification(ctx, &y_elems);
    let same_e = x_local
        .iter()
        .zip(&y_local)
        .all(|(a, b)| a.len() == b.len());
    let contains = y.characters().subgroup().contains_subgroup(x.subgroup())?;
    tally.record(Section::Maximality, same_e && contains, || {
        let ex: Vec<usize> = x_local.iter().map(HashSet::len).collect();
        let ey: Vec<usize> = y_local.iter().map(HashSet::len).collect();
        format!(
            "{}: e_P(X) = {ex:?}, e_P(Y) = {ey:?}, X in Y: {contains}",
            label()
        )
    });
    // adjoining psi outside Y enlarges the restriction to some I_P exactly
    // when some local part of psi is new
    let in_y: HashSet<&GroupElem> = y_elems.iter().collect();
    let stuck = ctx
        .duals
        .iter()
        .filter(|psi| !in_y.contains(psi))
        .find(|psi| {
            ctx.local_parts(psi)
                .iter()
                .zip(&y_local)
                .all(|(part, set)| set.contains(part))
        });
    tally.record(Section::Maximality, stuck.is_none(), || {
        format!(
            "{}: adjoining {:?} keeps every e_P",
            label(),
            stuck.expect("failure has a witness")
        )
    });

    tally.record(
        Section::Idempotence,
        y.extended_genus().same_field(&y)?,
        || format!("{}: ge(geE) != geE", label()),
    );
    let e_in = e.is_subfield_of(&y)?;
    let g_in = g_e.is_subfield_of(&y)?;
    let eg_in = e.is_subfield_of(&g_e)?;
    tally.record(Section::Containment, e_in && g_in && eg_in, || {
        format!(
            "{}: E in geE {e_in}, gE in geE {g_in}, E in gE {eg_in}",
            label()
        )
    });
    let (_, g_inf) = brute_ramification(ctx, &g_e.characters().subgroup().elements());
    let lib_inf = (e.e_inf() as usize, g_e.e_inf() as usize);
    tally.record(
        Section::InfinityRamification,
        g_inf == x_inf && lib_inf == (x_inf, g_inf),
        || {
            format!(
                "{}: brute e_inf(E) = {x_inf}, e_inf(gE) = {g_inf}, library {lib_inf:?}",
                label()
            )
        },
    );

    let report = e.ramification_report();
    let ramified_ok = report
        .primes
        .iter()
        .zip(&x_local)
        .all(|(s, set)| s.e == set.len() as u128 && s.e * s.f as u128 * s.g == report.degree);
    tally.record(Section::Splitting, ramified_ok, || {
        format!("{}: e f g at ramified primes", label())
    });
    for (p, frob) in &ctx.unramified {
        let brute_f = x_elems.iter().fold(1, |acc, c| {
            lcm(acc, ctx.units.group().pairing(c, frob).order())
        });
        let (_, f, g) = e.splitting_unramified(p)?;
        tally.record(
            Section::Splitting,
            f == brute_f && f as u128 * g == e.degree(),
            || {
                format!(
                    "{}: at {} library f = {f}, brute f = {brute_f}",
                    label(),
                    inst.ring.format(p)
                )
            },
        );
    }
    Ok(())
}

fn is_cyclic(x: &CharacterGroup) -> bool {
    let exponent = x.generators().iter().fold(1, |acc, c| lcm(acc, c.order()));
    exponent as u128 == x.order()
}

fn random_noncyclic(ctx: &Context, rng: &mut ChaCha8Rng) -> CliResult<CharacterGroup> {
    let units = ctx.units.clone();
    for _ in 0..RANDOM_ATTEMPTS {
        let k = rng.random_range(2..=3);
        let picks: Vec<GroupElem> = (0..k)
            .map(|_| ctx.duals[rng.random_range(0..ctx.duals.len())].clone())
            .collect();
        let x = CharacterGroup::from_duals(units.clone(), &picks)?;
        if !is_cyclic(&x) {
            return Ok(x);
        }
    }
    Ok(CharacterGroup::full(units))
}

fn check_instance(
    inst: &Instance,
    units: &Arc<ResidueUnitGroup>,
    index: usize,
    random: usize,
    config: &OracleConfig,
    corrupt: bool,
) -> CliResult<Tally> {
    let ring = &inst.ring;
    let locals = (0..units.num_primes())
        .map(|i| Arc::new(units.local_group(i)))
        .collect();
    let beta = units.encode_const(ring.field().primitive_root())?;
    let unramified = (1..=2)
        .flat_map(|d| ring.monic_irreducibles_of_degree(d))
        .filter(|p| units.is_unit(p))
        .take(SPLITTING_PRIMES)
        .map(|p| {
            let frob = units.frobenius_class(&p)?;
            Ok((p, frob))
        })
        .collect::<genus_core::Result<Vec<_>>>()?;
    let ctx = Context {
        inst,
        units,
        locals,
        duals: units.group().elements().collect(),
        beta,
        unramified,
    };
    let mut tally = Tally::new();
    check_structure(&ctx, corrupt, &mut tally)?;

    let mut seen: HashSet<GroupElem> = HashSet::new();
    for chi in &ctx.duals {
        if seen.contains(chi) {
            continue;
        }
        let ord = units.group().element_order(chi);
        for k in (1..=ord).filter(|&k| gcd(k, ord) == 1) {
            seen.insert(units.group().scale(chi, k as i128));
        }
        let x = CharacterGroup::from_duals(units.clone(), std::slice::from_ref(chi))?;
        check_group(&ctx, &x, &mut tally)?;
        tally.cyclic += 1;
    }
    let mut rng =
        ChaCha8Rng::seed_from_u64(config.seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    for _ in 0..random {
        let x = random_noncyclic(&ctx, &mut rng)?;
        check_group(&ctx, &x, &mut tally)?;
        tally.random += 1;
    }
    Ok(tally)
}

pub fn run(config: &OracleConfig) -> CliResult<OracleReport> {
    let instances = moduli(config)?;
    let groups = instances
        .par_iter()
        .map(|inst| Ok(Arc::new(ResidueUnitGroup::new(&inst.ring, &inst.n)?)))
        .collect::<CliResult<Vec<_>>>()?;

    // spread the random groups evenly over the moduli with non-cyclic duals
    let noncyclic: Vec<usize> = (0..groups.len())
        .filter(|&i| groups[i].invariant_factors().len() >= 2)
        .collect();
    let mut random = vec![0usize; groups.len()];
    if !noncyclic.is_empty() {
        for j in 0..config.random {
            random[noncyclic[j * noncyclic.len() / config.random]] += 1;
        }
    }
    let corrupt_at = config
        .corrupt
        .then(|| {
            (0..groups.len()).find(|&i| {
                groups[i].num_primes() > 0 && groups[i].locals()[0].group().orders()[0] > 1
            })
        })
        .flatten();

    let tally = instances
        .par_iter()
        .zip(groups.par_iter())
        .enumerate()
        .map(|(i, (inst, units))| {
            check_instance(inst, units, i, random[i], config, corrupt_at == Some(i))
        })
        .try_reduce(Tally::new, |a, b| Ok(a.merge(b)))?;

    let mut moduli: Vec<(u64, u64)> = config.qs.iter().map(|&q| (q, 0)).collect();
    for inst in &instances {
        if let Some(entry) = moduli.iter_mut().find(|(q, _)| *q == inst.ring.q()) {
            entry.1 += 1;
        }
    }
    let passed = tally.sections.iter().all(|s| s.failed == 0);
    Ok(OracleReport {
        moduli,
        cyclic_groups: tally.cyclic,
        random_groups: tally.random,
        sections: tally.sections,
        passed,
    })
}

/// [`run`] on a pool of `jobs` threads.
pub fn run_with_jobs(config: &OracleConfig, jobs: usize) -> CliResult<OracleReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Input(format!("cannot start {jobs} workers: {e}")))?;
    pool.install(|| run(config))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factors_of_small_groups() {
        // Z/2 x Z/4
        let orders = [1, 2, 2, 2, 4, 4, 4, 4];
        assert_eq!(invariant_factors_from_orders(&orders), vec![2, 4]);
        // Z/6
        let orders = [1, 2, 3, 3, 6, 6];
        assert_eq!(invariant_factors_from_orders(&orders), vec![6]);
        assert_eq!(invariant_factors_from_orders(&[1]), Vec::<u64>::new());
    }

    #[test]
    fn phi_bound_is_a_lower_bound() {
        let ring = PolyRing::new(FqField::new(2, None).unwrap());
        for d in 0..8u32 {
            let bound = phi_lower_bound(2, d);
            for n in ring.monic_of_degree(d as usize) {
                let phi: u64 = ring
                    .factor(&n)
                    .unwrap()
                    .euler_phi(&ring)
                    .try_into()
                    .unwrap();
                assert!(
                    phi as f64 >= bound * (1.0 - 1e-9),
                    "degree {d}: {phi} < {bound}"
                );
            }
        }
    }
}
