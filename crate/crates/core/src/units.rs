//! The unit group `G_N = (F_q[T]/N)^*`.
//!
//! By CRT `G_N` is the product of the local groups `(F_q[T]/P^a)^*`. Each
//! local group is a cyclic part of order `q^d - 1` (generated by a
//! Teichmueller lift of a primitive root mod `P`) times the one-units
//! `(1 + P)/(1 + P^a)`, a `p`-group presented by the generators
//! `1 + b P^j` and their `p`-th power relations.
//!
//! Coordinates: an element of `G_N` is the concatenation of its local
//! coordinates `[cyclic exponent (if q^d > 2), one-unit invariant
//! coordinates...]`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{factor_u64, lcm};
use crate::error::{Error, Result};
use crate::factor::FactoredPoly;
use crate::field::FqElem;
use crate::group::{group_from_relations, AbGroup, GroupElem, Presentation, Subgroup};
use crate::poly::{Poly, PolyRing};

/// Largest residue-field unit group handled by baby-step giant-step.
pub const MAX_CYCLIC_PART: u64 = 1 << 24;

/// `(F_q[T]/P^a)^*` with its discrete-logarithm data.
#[derive(Clone, Debug)]
pub struct LocalUnits {
    prime: Poly,
    alpha: u32,
    modulus: Poly,
    cyclic_order: u64,
    teich: Poly,
    teich_inv: Poly,
    bsgs: Arc<Bsgs>,
    /// One-unit generators `1 + b P^j`, ordered by level `j`.
    one_gens: Vec<Poly>,
    one_gens_inv: Vec<Poly>,
    one_levels: Vec<u32>,
    one_pres: Presentation,
    group: AbGroup,
    /// `levels[j]` is the image of `1 + P^j` for `j = 0..=a`; `levels[0]` is
    /// the whole group.
    levels: Vec<Subgroup>,
}

#[derive(Debug)]
struct Bsgs {
    prime: Poly,
    order: u64,
    step: u64,
    baby: BTreeMap<Poly, u64>,
    /// `base^(-step)` mod `P`.
    giant: Poly,
}

impl Bsgs {
    fn new(ring: &PolyRing, prime: &Poly, base: &Poly, order: u64) -> Self {
        let mut step = 1u64;
        while step * step < order {
            step += 1;
        }
        let mut baby = BTreeMap::new();
        let mut acc = Poly::one();
        for i in 0..step {
            baby.entry(acc.clone()).or_insert(i);
            acc = ring.mulmod(&acc, base, prime);
        }
        let giant = ring
            .inv_mod(&ring.pow_mod(base, step, prime), prime)
            .expect("unit");
        Bsgs {
            prime: prime.clone(),
            order,
            step,
            baby,
            giant,
        }
    }

    fn log(&self, ring: &PolyRing, x: &Poly) -> Option<u64> {
        let mut gamma = ring.rem(x, &self.prime).ok()?;
        for k in 0..=self.step {
            if let Some(&i) = self.baby.get(&gamma) {
                return Some((k * self.step + i) % self.order);
            }
            gamma = ring.mulmod(&gamma, &self.giant, &self.prime);
        }
        None
    }
}

impl LocalUnits {
    fn new(ring: &PolyRing, prime: &Poly, alpha: u32) -> Result<Self> {
        let d = prime.deg();
        let q = ring.q();
        let p = ring.field().characteristic();
        let residue_size = crate::arith::checked_pow(q, d as u32)
            .filter(|&n| n - 1 <= MAX_CYCLIC_PART)
            .ok_or_else(|| {
                Error::Unsupported(format!("residue field of {} too large", ring.format(prime)))
            })?;
        let cyclic_order = residue_size - 1;
        let modulus = ring.pow(prime, alpha as u64);

        let w = primitive_root_mod(ring, prime, cyclic_order);
        // Teichmueller lift: w^(p^e) with p^e >= a has order exactly q^d - 1 mod P^a
        let mut pe = 1u64;
        while pe < alpha as u64 {
            pe *= p;
        }
        let teich = ring.pow_mod(&w, pe, &modulus);
        let teich_inv = ring.inv_mod(&teich, &modulus)?;
        let base = ring.rem(&teich, prime)?;
        let bsgs = Arc::new(Bsgs::new(ring, prime, &base, cyclic_order));

        // one-unit generators 1 + g^t T^i P^j over an F_p-basis of F_q[T]/P
        let field = ring.field();
        let s = field.degree() as usize;
        let mut one_gens = Vec::new();
        let mut one_levels = Vec::new();
        for j in 1..alpha {
            let pj = ring.pow(prime, j as u64);
            for i in 0..d {
                for t in 0..s {
                    let mut digits = vec![0u32; s];
                    digits[t] = 1;
                    let b = Poly::monomial(field.from_digits(&digits), i);
                    one_gens.push(ring.add(&Poly::one(), &ring.mul(&b, &pj)));
                    one_levels.push(j);
                }
            }
        }
        let one_gens_inv = one_gens
            .iter()
            .map(|g| ring.inv_mod(g, &modulus))
            .collect::<Result<Vec<_>>>()?;
        let mut local = LocalUnits {
            prime: prime.clone(),
            alpha,
            modulus,
            cyclic_order,
            teich,
            teich_inv,
            bsgs,
            one_gens,
            one_gens_inv,
            one_levels,
            one_pres: group_from_relations(0, &[])?,
            group: AbGroup::trivial(),
            levels: Vec::new(),
        };
        // relations p e_g - descent(g^p); triangular with p on the diagonal, so
        // they span the full kernel
        let n = local.one_gens.len();
        let mut relations = Vec::with_capacity(n);
        for (idx, g) in local.one_gens.iter().enumerate() {
            let gp = ring.pow_mod(g, p, &local.modulus);
            let desc = local.descent(ring, &gp)?;
            let mut row: Vec<i128> = desc.iter().map(|&c| -(c as i128)).collect();
            row[idx] += p as i128;
            relations.push(row);
        }
        local.one_pres = group_from_relations(n, &relations)?;
        let mut orders = Vec::new();
        if cyclic_order > 1 {
            orders.push(cyclic_order);
        }
        orders.extend_from_slice(local.one_pres.group().orders());
        local.group = AbGroup::new(orders)?;

        let mut levels = vec![Subgroup::whole(&local.group)];
        for j in 1..=alpha {
            let gens: Vec<GroupElem> = (0..n)
                .filter(|&k| local.one_levels[k] >= j)
                .map(|k| {
                    let mut e = vec![0i128; n];
                    e[k] = 1;
                    local.embed_one_unit(&local.one_pres.to_invariant(&e))
                })
                .collect();
            levels.push(Subgroup::generated_by(&local.group, &gens)?);
        }
        local.levels = levels;
        Ok(local)
    }

    fn has_cyclic(&self) -> bool {
        self.cyclic_order > 1
    }

    fn embed_one_unit(&self, y: &[u64]) -> GroupElem {
        let mut out = Vec::with_capacity(self.group.rank());
        if self.has_cyclic() {
            out.push(0);
        }
        out.extend_from_slice(y);
        out
    }

    /// Exponents `c_g in [0, p)` with `u = prod g^(c_g)` for a one-unit `u`.
    fn descent(&self, ring: &PolyRing, u: &Poly) -> Result<Vec<u64>> {
        let field = ring.field();
        let s = field.degree() as usize;
        let d = self.prime.deg();
        let mut out = vec![0u64; self.one_gens.len()];
        let mut cur = ring.rem(u, &self.modulus)?;
        let mut base = 0usize;
        for j in 1..self.alpha {
            let pj = ring.pow(&self.prime, j as u64);
            let diff = ring.sub(&cur, &Poly::one());
            let (quot, rem) = ring.divrem(&diff, &pj)?;
            if !rem.is_zero() {
                return Err(Error::Invariant("one-unit descent left its level".into()));
            }
            let a = ring.rem(&quot, &self.prime)?;
            for i in 0..d {
                let digits = field.digits(a.coeff(i));
                for (t, &c) in digits.iter().enumerate().take(s) {
                    if c == 0 {
                        continue;
                    }
                    let idx = base + i * s + t;
                    out[idx] = c as u64;
                    let inv = ring.pow_mod(&self.one_gens_inv[idx], c as u64, &self.modulus);
                    cur = ring.mulmod(&cur, &inv, &self.modulus);
                }
            }
            base += d * s;
        }
        if !cur.is_one() {
            return Err(Error::Invariant(
                "one-unit descent did not terminate at 1".into(),
            ));
        }
        Ok(out)
    }

    fn encode(&self, ring: &PolyRing, u: &Poly) -> Result<GroupElem> {
        let red = ring.rem(u, &self.modulus)?;
        let c = self.bsgs.log(ring, &red).ok_or(Error::NotCoprime)?;
        let one = ring.mulmod(
            &red,
            &ring.pow_mod(&self.teich_inv, c, &self.modulus),
            &self.modulus,
        );
        let desc = self.descent(ring, &one)?;
        let desc: Vec<i128> = desc.iter().map(|&x| x as i128).collect();
        let y = self.one_pres.to_invariant(&desc);
        let mut out = Vec::with_capacity(self.group.rank());
        if self.has_cyclic() {
            out.push(c);
        }
        out.extend(y);
        Ok(out)
    }

    fn decode(&self, ring: &PolyRing, x: &[u64]) -> Poly {
        let (c, y) = if self.has_cyclic() {
            (x[0], &x[1..])
        } else {
            (0, x)
        };
        let mut acc = ring.pow_mod(&self.teich, c, &self.modulus);
        let e = self.one_pres.from_invariant(y);
        for (g, &k) in self.one_gens.iter().zip(&e) {
            if k != 0 {
                acc = ring.mulmod(
                    &acc,
                    &ring.pow_mod(g, k as u64, &self.modulus),
                    &self.modulus,
                );
            }
        }
        acc
    }

    pub fn prime(&self) -> &Poly {
        &self.prime
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// The local coordinate group.
    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    /// `q^d - 1`.
    pub fn cyclic_order(&self) -> u64 {
        self.cyclic_order
    }

    /// Image of the congruence subgroup `1 + P^j`; `j = 0` gives the whole
    /// group and `j = a` the trivial one.
    pub fn level(&self, j: u32) -> &Subgroup {
        &self.levels[j.min(self.alpha) as usize]
    }
}

/// Smallest residue (in counter order over degree `< d`) generating
/// `(F_q[T]/P)^*`.
fn primitive_root_mod(ring: &PolyRing, prime: &Poly, order: u64) -> Poly {
    let primes: Vec<u64> = factor_u64(order).into_iter().map(|(r, _)| r).collect();
    residues(ring, prime.deg())
        .skip(1)
        .find(|w| {
            primes
                .iter()
                .all(|&r| !ring.pow_mod(w, order / r, prime).is_one())
        })
        .expect("residue fields have primitive roots")
}

/// All polynomials of degree `< n`, in counter order starting at zero.
fn residues(ring: &PolyRing, n: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = ring.q();
    let total = crate::arith::checked_pow(q, n as u32).unwrap_or(u64::MAX);
    let field = ring.field();
    (0..total).map(move |mut k| {
        let coeffs = (0..n)
            .map(|_| {
                let c = field.from_raw((k % q) as u32).expect("in range");
                k /= q;
                c
            })
            .collect();
        Poly::from_coeffs(coeffs)
    })
}

/// `(F_q[T]/N)^*` with encode/decode between residues and coordinates.
#[derive(Clone, Debug)]
pub struct ResidueUnitGroup {
    ring: PolyRing,
    modulus: Poly,
    factored: FactoredPoly,
    locals: Vec<LocalUnits>,
    offsets: Vec<usize>,
    group: AbGroup,
    /// `idempotents[i] = 1 mod P_i^a_i`, `0` mod the other factors.
    idempotents: Vec<Poly>,
    invariant: Presentation,
}

impl PartialEq for ResidueUnitGroup {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.modulus == other.modulus
    }
}

impl Eq for ResidueUnitGroup {}

impl ResidueUnitGroup {
    pub fn new(ring: &PolyRing, n: &Poly) -> Result<Self> {
        let factored = ring.factor(n)?;
        Self::from_factored(ring, &factored)
    }

    pub fn from_factored(ring: &PolyRing, factored: &FactoredPoly) -> Result<Self> {
        let locals = factored
            .factors
            .iter()
            .map(|(p, a)| LocalUnits::new(ring, p, *a))
            .collect::<Result<Vec<_>>>()?;
        Self::assemble(ring, locals)
    }

    fn assemble(ring: &PolyRing, locals: Vec<LocalUnits>) -> Result<Self> {
        let modulus = ring.product(locals.iter().map(|l| &l.modulus));
        let factored = FactoredPoly {
            unit: FqElem::ONE,
            factors: locals.iter().map(|l| (l.prime.clone(), l.alpha)).collect(),
        };
        let mut offsets = Vec::with_capacity(locals.len());
        let mut acc = 0;
        for l in &locals {
            offsets.push(acc);
            acc += l.group.rank();
        }
        let group = AbGroup::product(&locals.iter().map(|l| l.group.clone()).collect::<Vec<_>>());
        let idempotents = locals
            .iter()
            .map(|l| {
                let rest = ring.div_exact(&modulus, &l.modulus)?;
                let inv = ring.inv_mod(&rest, &l.modulus)?;
                ring.rem(&ring.mul(&rest, &inv), &modulus)
            })
            .collect::<Result<Vec<_>>>()?;
        let relations: Vec<Vec<i128>> = (0..group.rank())
            .map(|j| {
                let mut r = vec![0i128; group.rank()];
                r[j] = group.orders()[j] as i128;
                r
            })
            .collect();
        let invariant = group_from_relations(group.rank(), &relations)?;
        Ok(ResidueUnitGroup {
            ring: ring.clone(),
            modulus,
            factored,
            locals,
            offsets,
            group,
            idempotents,
            invariant,
        })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    /// The monic modulus `N`.
    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn factored(&self) -> &FactoredPoly {
        &self.factored
    }

    /// The coordinate group (product of the local groups).
    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn invariant_factors(&self) -> Vec<u64> {
        self.invariant.group().orders().to_vec()
    }

    /// Generators of the invariant-factor decomposition, as residues.
    pub fn invariant_generators(&self) -> Vec<Poly> {
        let inv = self.invariant.group();
        (0..inv.rank())
            .map(|i| {
                let x = self.invariant.from_invariant(&inv.basis(i));
                self.decode(&self.group.reduce(&x))
            })
            .collect()
    }

    /// Coordinates of an element in the invariant-factor basis.
    pub fn to_invariant(&self, x: &[u64]) -> Vec<u64> {
        let v: Vec<i128> = x.iter().map(|&a| a as i128).collect();
        self.invariant.to_invariant(&v)
    }

    pub fn locals(&self) -> &[LocalUnits] {
        &self.locals
    }

    pub fn num_primes(&self) -> usize {
        self.locals.len()
    }

    /// Index of the local factor at `P`.
    pub fn prime_index(&self, p: &Poly) -> Result<usize> {
        let p = self.ring.monic(p);
        self.locals
            .iter()
            .position(|l| l.prime == p)
            .ok_or_else(|| Error::NotAFactor(self.ring.format(&p)))
    }

    /// Coordinate range of the local factor `i`.
    pub fn local_range(&self, i: usize) -> core::ops::Range<usize> {
        self.offsets[i]..self.offsets[i] + self.locals[i].group.rank()
    }

    /// The unit group of `P_i^a_i` alone.
    pub fn local_group(&self, i: usize) -> ResidueUnitGroup {
        Self::assemble(&self.ring, vec![self.locals[i].clone()]).expect("local factor")
    }

    pub fn is_unit(&self, u: &Poly) -> bool {
        self.ring.gcd(u, &self.modulus).is_one()
    }

    pub fn encode(&self, u: &Poly) -> Result<GroupElem> {
        if !self.is_unit(u) {
            return Err(Error::NotCoprime);
        }
        let mut out = Vec::with_capacity(self.group.rank());
        for l in &self.locals {
            out.extend(l.encode(&self.ring, u)?);
        }
        Ok(out)
    }

    pub fn encode_const(&self, c: FqElem) -> Result<GroupElem> {
        self.encode(&Poly::constant(c))
    }

    pub fn decode(&self, x: &[u64]) -> Poly {
        let mut acc = Poly::zero();
        for (i, l) in self.locals.iter().enumerate() {
            let part = l.decode(&self.ring, &x[self.local_range(i)]);
            acc = self
                .ring
                .add(&acc, &self.ring.mul(&part, &self.idempotents[i]));
        }
        if self.modulus.is_one() {
            return Poly::one();
        }
        self.ring.rem(&acc, &self.modulus).expect("nonzero modulus")
    }

    /// The residue mod `N` congruent to `parts[i]` modulo `P_i^a_i`.
    pub fn crt_combine(&self, parts: &[Poly]) -> Poly {
        if self.modulus.is_one() {
            return Poly::one();
        }
        let mut acc = Poly::zero();
        for (part, e) in parts.iter().zip(&self.idempotents) {
            acc = self.ring.add(&acc, &self.ring.mul(part, e));
        }
        self.ring.rem(&acc, &self.modulus).expect("nonzero modulus")
    }

    /// Projection of `g` onto the coordinates of the factor at `P`, embedded
    /// back with identity elsewhere.
    pub fn crt_component(&self, g: &[u64], p: &Poly) -> Result<GroupElem> {
        let i = self.prime_index(p)?;
        let mut out = self.group.identity();
        let r = self.local_range(i);
        out[r.clone()].copy_from_slice(&g[r]);
        Ok(out)
    }

    /// The local coordinates of `g` at factor `i`.
    pub fn local_part(&self, g: &[u64], i: usize) -> GroupElem {
        g[self.local_range(i)].to_vec()
    }

    /// Embeds local coordinates at factor `i` (identity elsewhere).
    pub fn embed_local(&self, i: usize, y: &[u64]) -> GroupElem {
        let mut out = self.group.identity();
        out[self.local_range(i)].copy_from_slice(y);
        out
    }

    /// The subgroup generated by the classes of all constants.
    pub fn fq_image(&self) -> Subgroup {
        let beta = self.ring.field().primitive_root();
        let g = self.encode_const(beta).expect("constants are units");
        Subgroup::generated_by(&self.group, &[g]).expect("same ambient")
    }

    /// Class of a monic irreducible `Q` prime to `N`.
    pub fn frobenius_class(&self, q: &Poly) -> Result<GroupElem> {
        if !self.is_unit(q) {
            return Err(Error::Precondition(format!(
                "{} divides the modulus {}",
                self.ring.format(q),
                self.ring.format(&self.modulus)
            )));
        }
        self.encode(q)
    }

    /// Units `= 1 mod P_i^j` and `= 1` modulo the other factors.
    pub fn level_subgroup(&self, i: usize, j: u32) -> Subgroup {
        let local = self.locals[i].level(j);
        let gens: Vec<GroupElem> = local
            .generators()
            .iter()
            .map(|y| self.embed_local(i, y))
            .collect();
        Subgroup::generated_by(&self.group, &gens).expect("same ambient")
    }

    /// The inertia group at `P_i`: all units `= 1` modulo `N / P_i^a_i`.
    pub fn inertia_subgroup(&self, i: usize) -> Subgroup {
        self.level_subgroup(i, 0)
    }

    /// Every unit residue, in counter order.
    pub fn units(&self) -> Vec<Poly> {
        if self.modulus.is_one() {
            return vec![Poly::one()];
        }
        residues(&self.ring, self.modulus.deg())
            .filter(|u| self.is_unit(u))
            .collect()
    }

    /// Exponent of the group.
    pub fn exponent(&self) -> u64 {
        self.locals
            .iter()
            .fold(1, |acc, l| lcm(acc, l.group.exponent()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FqField;
    use alloc::collections::BTreeSet;

    fn ring(q: u64) -> PolyRing {
        PolyRing::new(FqField::new(q, None).unwrap())
    }

    #[test]
    fn spec_examples() {
        let r3 = ring(3);
        let g = ResidueUnitGroup::new(&r3, &Poly::x()).unwrap();
        assert_eq!(g.invariant_factors(), vec![2]);
        assert_eq!(g.invariant_generators(), vec![r3.from_ints(&[2])]);
        let g = ResidueUnitGroup::new(&r3, &r3.from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(g.invariant_factors(), vec![6]);
        assert_eq!(g.fq_image().order(), 2);
        let r2 = ring(2);
        let g = ResidueUnitGroup::new(&r2, &r2.from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(g.invariant_factors(), vec![2]);
        assert_eq!(g.invariant_generators(), vec![r2.from_ints(&[1, 1])]);
        assert!(g.fq_image().is_trivial());
        let r5 = ring(5);
        let g = ResidueUnitGroup::new(&r5, &Poly::x()).unwrap();
        assert!(g.fq_image().is_whole());
        let two = g.frobenius_class(&r5.from_ints(&[2, 1])).unwrap();
        assert_eq!(g.group().element_order(&two), 4);
        assert!(g
            .group()
            .is_identity(&g.frobenius_class(&r5.from_ints(&[1, 1])).unwrap()));
        assert!(g.frobenius_class(&Poly::x()).is_err());
    }

    #[test]
    fn crt_components_example() {
        let r5 = ring(5);
        let g = ResidueUnitGroup::new(&r5, &r5.from_ints(&[0, 1, 1])).unwrap();
        let u = r5.from_ints(&[3, 1]);
        let x = g.encode(&u).unwrap();
        let at_t = g.crt_component(&x, &Poly::x()).unwrap();
        let at_t1 = g.crt_component(&x, &r5.from_ints(&[1, 1])).unwrap();
        assert_eq!(g.group().add(&at_t, &at_t1), x);
        assert_eq!(
            r5.rem(&g.decode(&at_t), &Poly::x()).unwrap(),
            r5.from_ints(&[3])
        );
        assert_eq!(
            r5.rem(&g.decode(&at_t1), &r5.from_ints(&[1, 1])).unwrap(),
            r5.from_ints(&[2])
        );
        assert!(g.crt_component(&x, &r5.from_ints(&[2, 1])).is_err());
    }

    #[test]
    fn trivial_modulus() {
        let r = ring(5);
        let g = ResidueUnitGroup::new(&r, &Poly::one()).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.encode(&r.from_ints(&[3, 1])).unwrap(), Vec::<u64>::new());
        assert_eq!(g.units(), vec![Poly::one()]);
    }

    #[test]
    fn encode_is_isomorphism_exhaustive() {
        for (q, ns) in [
            (
                2u64,
                vec![vec![0, 0, 0, 1], vec![1, 1, 0, 0, 1], vec![0, 0, 1, 1, 1]],
            ),
            (3, vec![vec![0, 0, 1], vec![1, 0, 0, 1], vec![0, 0, 0, 1]]),
            (4, vec![vec![0, 0, 1], vec![0, 1, 1]]),
            (5, vec![vec![0, 1, 1], vec![0, 0, 1]]),
        ] {
            let r = ring(q);
            for coeffs in ns {
                let n = r.from_ints(&coeffs);
                let g = ResidueUnitGroup::new(&r, &n).unwrap();
                let units = g.units();
                assert_eq!(units.len() as u128, g.order());
                assert_eq!(
                    num_bigint::BigUint::from(g.order()),
                    r.factor(&n).unwrap().euler_phi(&r)
                );
                let codes: Vec<_> = units.iter().map(|u| g.encode(u).unwrap()).collect();
                let distinct: BTreeSet<_> = codes.iter().cloned().collect();
                assert_eq!(distinct.len(), units.len());
                for (u, x) in units.iter().zip(&codes) {
                    assert_eq!(&g.decode(x), u);
                }
                for (i, u) in units.iter().enumerate().step_by(3) {
                    for (j, v) in units.iter().enumerate() {
                        let uv = r.mulmod(u, v, &n);
                        assert_eq!(g.encode(&uv).unwrap(), g.group().add(&codes[i], &codes[j]));
                    }
                }
            }
        }
    }
}
