//! Subfields of the cyclotomic function field `Lambda_N`, described by their
//! character groups.
//!
//! `Gal(Lambda_N / k) = G_N`. A subfield `E` corresponds to a group `X` of
//! characters mod `N`; `[E : k] = |X|`. The inertia group of `P | N` is the
//! local factor `(F_q[T]/P^a)^*` and the inertia (= decomposition) group of
//! the infinite prime is the image of `F_q^*`.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::arith::lcm;
use crate::chars::CharacterGroup;
use crate::error::{Error, Result};
use crate::group::{GroupElem, Subgroup};
use crate::poly::Poly;
use crate::units::ResidueUnitGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicFieldDesc {
    x: CharacterGroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeSplitting {
    pub prime: Poly,
    pub alpha: u32,
    pub e: u128,
    pub f: u64,
    pub g: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationReport {
    pub degree: u128,
    pub primes: Vec<PrimeSplitting>,
    pub e_inf: u64,
    pub f_inf: u64,
    /// Number of infinite primes.
    pub g_inf: u128,
    pub constant_degree: u64,
}

impl RamificationReport {
    pub fn e_at(&self, p: &Poly) -> u128 {
        self.primes
            .iter()
            .find(|s| &s.prime == p)
            .map_or(1, |s| s.e)
    }

    /// `prod_P e_P`.
    pub fn ramification_product(&self) -> u128 {
        self.primes.iter().map(|s| s.e).product()
    }
}

impl CyclotomicFieldDesc {
    pub fn new(x: CharacterGroup) -> Self {
        CyclotomicFieldDesc { x }
    }

    /// The base field `k`.
    pub fn rational(group: Arc<ResidueUnitGroup>) -> Self {
        Self::new(CharacterGroup::trivial(group))
    }

    /// `Lambda_N` itself.
    pub fn full(group: Arc<ResidueUnitGroup>) -> Self {
        Self::new(CharacterGroup::full(group))
    }

    pub fn characters(&self) -> &CharacterGroup {
        &self.x
    }

    pub fn unit_group(&self) -> &Arc<ResidueUnitGroup> {
        self.x.unit_group()
    }

    pub fn modulus(&self) -> &Poly {
        self.x.unit_group().modulus()
    }

    pub fn degree(&self) -> u128 {
        self.x.order()
    }

    fn with(&self, x: CharacterGroup) -> Self {
        CyclotomicFieldDesc { x }
    }

    /// `e_P` for the factor `i` of `N`.
    pub fn e_at(&self, i: usize) -> u128 {
        self.x.component_group_at(i).order()
    }

    /// `e_inf`: order of the group of restrictions to `F_q^*`.
    pub fn e_inf(&self) -> u64 {
        self.x.restriction_order()
    }

    /// Frobenius of the factor `P_i` in the part of `G_N` prime to `P_i`:
    /// coordinates 0 at `P_i`, the class of `P_i` elsewhere.
    pub fn frobenius_away(&self, i: usize) -> GroupElem {
        let g = self.unit_group();
        let ring = g.ring();
        let p = g.locals()[i].prime();
        let parts: Vec<Poly> = g
            .locals()
            .iter()
            .enumerate()
            .map(|(j, l)| {
                if j == i {
                    Poly::one()
                } else {
                    ring.rem(p, l.modulus()).expect("nonzero")
                }
            })
            .collect();
        g.encode(&g.crt_combine(&parts))
            .expect("unit by construction")
    }

    /// `f_P` for the factor `i`: the order of Frobenius acting on the part of
    /// `E` fixed by the inertia group at `P_i`.
    pub fn f_at(&self, i: usize) -> u64 {
        let g = self.unit_group();
        let inertia = g.inertia_subgroup(i);
        let unramified = self.x.fixed_by(&inertia).expect("same ambient");
        let frob = self.frobenius_away(i);
        unramified
            .generators()
            .iter()
            .fold(1, |acc, c| lcm(acc, c.eval_elem(&frob).order()))
    }

    /// `(e, f, g)` at a prime `P` not dividing `N`.
    pub fn splitting_unramified(&self, p: &Poly) -> Result<(u128, u64, u128)> {
        let g = self.unit_group();
        let frob = g.frobenius_class(p)?;
        let f = self
            .x
            .generators()
            .iter()
            .fold(1, |acc, c| lcm(acc, c.eval_elem(&frob).order()));
        Ok((1, f, self.degree() / f as u128))
    }

    pub fn ramification_report(&self) -> RamificationReport {
        let g = self.unit_group();
        let degree = self.degree();
        let primes = g
            .locals()
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let e = self.e_at(i);
                let f = self.f_at(i);
                PrimeSplitting {
                    prime: l.prime().clone(),
                    alpha: l.alpha(),
                    e,
                    f,
                    g: degree / (e * f as u128),
                }
            })
            .collect();
        let e_inf = self.e_inf();
        RamificationReport {
            degree,
            primes,
            e_inf,
            f_inf: 1,
            g_inf: degree / e_inf as u128,
            constant_degree: 1,
        }
    }

    /// The field of `Y = prod_P X_P`.
    pub fn extended_genus(&self) -> Self {
        self.with(self.x.component_product())
    }

    /// Characters of `Y` whose restriction to `F_q^*` lies in that of `X`:
    /// the largest subfield of the extended genus field in which the
    /// infinite primes of `E` do not ramify.
    pub fn genus(&self) -> Self {
        let y = self.x.component_product();
        let g = self.unit_group();
        let beta = g
            .encode_const(g.ring().field().primitive_root())
            .expect("unit");
        let s = Subgroup::generated_by(g.group(), &[g.group().scale(&beta, self.e_inf() as i128)])
            .expect("same ambient");
        self.with(y.fixed_by(&s).expect("same ambient"))
    }

    /// Fixed field of `S` (a subgroup of `G_N`, acting through
    /// `Gal(E/k) = G_N / H`).
    pub fn fixed_field(&self, s: &Subgroup) -> Result<Self> {
        Ok(self.with(self.x.fixed_by(s)?))
    }

    /// The Galois group `Gal(E/k)` as the quotient `G_N / H` with
    /// `H = cap ker chi`; returned as `H`.
    pub fn kernel(&self) -> Subgroup {
        self.x.kernel()
    }

    /// Both fields realized at the lcm of their moduli.
    pub fn align(&self, other: &Self) -> Result<(Self, Self)> {
        if self.unit_group() == other.unit_group() {
            return Ok((self.clone(), other.clone()));
        }
        let ring = self.unit_group().ring();
        if ring != other.unit_group().ring() {
            return Err(Error::AmbientMismatch);
        }
        let (a, b) = (self.modulus(), other.modulus());
        let m = ring.div_exact(&ring.mul(a, b), &ring.gcd(a, b))?;
        let target = Arc::new(ResidueUnitGroup::new(ring, &m)?);
        Ok((self.at_modulus(&target)?, other.at_modulus(&target)?))
    }

    /// The same field realized modulo `target` (the conductor must divide it).
    pub fn at_modulus(&self, target: &Arc<ResidueUnitGroup>) -> Result<Self> {
        if self.unit_group() == target {
            return Ok(self.clone());
        }
        Ok(self.with(self.x.to_modulus(target)?))
    }

    /// The field at its conductor; equal fields have equal canonical forms.
    pub fn canonical(&self) -> Result<Self> {
        let ring = self.unit_group().ring();
        let f = self.x.conductor();
        let target = Arc::new(ResidueUnitGroup::new(ring, &f)?);
        self.at_modulus(&target)
    }

    pub fn same_field(&self, other: &Self) -> Result<bool> {
        let (a, b) = self.align(other)?;
        Ok(a.x == b.x)
    }

    pub fn compositum(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        Ok(a.with(a.x.product_with(&b.x)?))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        Ok(a.with(a.x.intersection(&b.x)?))
    }

    pub fn is_subfield_of(&self, other: &Self) -> Result<bool> {
        let (a, b) = self.align(other)?;
        a.x.is_subgroup_of(&b.x)
    }
}
