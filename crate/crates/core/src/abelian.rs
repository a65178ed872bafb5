//! Abelian extensions of `k` inside `Lambda_N * k_m`, where `k_m` is the
//! constant field extension of degree `m`.
//!
//! `Gal(Lambda_N k_m / k) = G_N x Z/m`; the `Z/m` factor is generated by the
//! Frobenius of the constants. A monic irreducible `Q` prime to `N` has
//! Frobenius `(class of Q, deg Q)`. At the infinite prime the inertia group
//! is the image of `F_q^*` and the decomposition group is
//! `F_q^* x Z/m`, since a uniformizer at infinity acts as the constant
//! Frobenius.
//!
//! Characters live in the same coordinates (see [`crate::group`]): the last
//! coordinate is the constants part.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::arith::lcm;
use crate::chars::{CharacterGroup, DirichletCharacter};
use crate::cyclo::CyclotomicFieldDesc;
use crate::error::{Error, Result};
use crate::group::{AbGroup, DualElem, GroupElem, Subgroup};
use crate::kummer::{kummer_dual, radical_modulus};
use crate::poly::{Poly, PolyRing};
use crate::rational::RationalFn;
use crate::units::ResidueUnitGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianFieldDesc {
    units: Arc<ResidueUnitGroup>,
    m: u64,
    chars: Subgroup,
}

/// `G_N x Z/m`.
pub fn extended_ambient(units: &ResidueUnitGroup, m: u64) -> AbGroup {
    let mut orders = units.group().orders().to_vec();
    orders.push(m);
    AbGroup::new(orders).expect("orders already validated")
}

impl AbelianFieldDesc {
    pub fn new(units: Arc<ResidueUnitGroup>, m: u64, chars: Subgroup) -> Result<Self> {
        if m == 0 || chars.ambient() != &extended_ambient(&units, m) {
            return Err(Error::AmbientMismatch);
        }
        Ok(AbelianFieldDesc { units, m, chars })
    }

    pub fn generated_by(units: Arc<ResidueUnitGroup>, m: u64, duals: &[DualElem]) -> Result<Self> {
        let sub = Subgroup::generated_by(&extended_ambient(&units, m), duals)?;
        Self::new(units, m, sub)
    }

    pub fn rational(units: Arc<ResidueUnitGroup>, m: u64) -> Self {
        let sub = Subgroup::trivial(&extended_ambient(&units, m));
        AbelianFieldDesc {
            units,
            m,
            chars: sub,
        }
    }

    /// A cyclotomic field, seen inside `Lambda_N k_m`.
    pub fn from_cyclotomic(e: &CyclotomicFieldDesc, m: u64) -> Self {
        let gens: Vec<DualElem> = e
            .characters()
            .subgroup()
            .generators()
            .into_iter()
            .map(|mut c| {
                c.push(0);
                c
            })
            .collect();
        Self::generated_by(e.unit_group().clone(), m, &gens).expect("same ambient")
    }

    /// The constant field extension `k_f`, `f | m`.
    pub fn constants(units: Arc<ResidueUnitGroup>, m: u64, f: u64) -> Result<Self> {
        if f == 0 || !m.is_multiple_of(f) {
            return Err(Error::Precondition(alloc::format!(
                "{f} does not divide {m}"
            )));
        }
        let mut c = units.group().identity();
        c.push(m / f);
        Self::generated_by(units, m, &[c])
    }

    /// `k(n-th root of A)` for one radicand.
    pub fn radical(ring: &PolyRing, a: &RationalFn, n: u64) -> Result<Self> {
        Self::from_radicals(ring, &[(a.clone(), n)])
    }

    /// `k(n_1-th root of A_1, ...)`, at modulus the radical of all radicands
    /// and `m = lcm n_i`.
    pub fn from_radicals(ring: &PolyRing, radicands: &[(RationalFn, u64)]) -> Result<Self> {
        let n = radical_modulus(ring, radicands.iter().map(|(a, _)| a))?;
        let units = Arc::new(ResidueUnitGroup::new(ring, &n)?);
        let m = radicands.iter().fold(1, |acc, &(_, e)| lcm(acc, e));
        let duals = radicands
            .iter()
            .map(|(a, e)| kummer_dual(&units, m, a, *e))
            .collect::<Result<Vec<_>>>()?;
        Self::generated_by(units, m, &duals)
    }

    pub fn unit_group(&self) -> &Arc<ResidueUnitGroup> {
        &self.units
    }

    pub fn modulus(&self) -> &Poly {
        self.units.modulus()
    }

    /// Degree of the constants factor of the ambient.
    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn ambient(&self) -> &AbGroup {
        self.chars.ambient()
    }

    pub fn characters(&self) -> &Subgroup {
        &self.chars
    }

    pub fn degree(&self) -> u128 {
        self.chars.order()
    }

    fn with(&self, chars: Subgroup) -> Self {
        AbelianFieldDesc {
            units: self.units.clone(),
            m: self.m,
            chars,
        }
    }

    fn lift(&self, g: GroupElem, constants: u64) -> GroupElem {
        let mut g = g;
        g.push(constants % self.m);
        g
    }

    /// Frobenius of a monic irreducible prime to `N`.
    pub fn frobenius(&self, q: &Poly) -> Result<GroupElem> {
        let g = self.units.frobenius_class(q)?;
        Ok(self.lift(g, q.deg() as u64 % self.m))
    }

    /// Order of the restriction of the characters to `s`.
    pub fn restriction_order(&self, s: &Subgroup) -> u128 {
        self.chars.order()
            / self
                .chars
                .intersection(&s.annihilator())
                .expect("same ambient")
                .order()
    }

    fn subgroup(&self, gens: &[GroupElem]) -> Subgroup {
        Subgroup::generated_by(self.ambient(), gens).expect("same ambient")
    }

    pub fn inertia_at(&self, i: usize) -> Subgroup {
        let gens: Vec<GroupElem> = self
            .units
            .inertia_subgroup(i)
            .generators()
            .into_iter()
            .map(|g| self.lift(g, 0))
            .collect();
        self.subgroup(&gens)
    }

    fn beta(&self) -> GroupElem {
        let beta = self.units.ring().field().primitive_root();
        self.lift(self.units.encode_const(beta).expect("unit"), 0)
    }

    pub fn inertia_inf(&self) -> Subgroup {
        self.subgroup(&[self.beta()])
    }

    pub fn decomposition_inf(&self) -> Subgroup {
        let frob = self.lift(self.units.group().identity(), 1);
        self.subgroup(&[self.beta(), frob])
    }

    /// The constant field extension part `Gal(.. / Lambda_N)`, element side.
    pub fn constants_subgroup(&self) -> Subgroup {
        self.subgroup(&[self.lift(self.units.group().identity(), 1)])
    }

    pub fn e_at(&self, i: usize) -> u128 {
        self.restriction_order(&self.inertia_at(i))
    }

    pub fn e_inf(&self) -> u128 {
        self.restriction_order(&self.inertia_inf())
    }

    pub fn f_inf(&self) -> u128 {
        self.restriction_order(&self.decomposition_inf()) / self.e_inf()
    }

    /// Degree of the field of constants over `F_q`.
    pub fn constants_degree(&self) -> u128 {
        // read as characters, the constants subgroup is the set of characters
        // trivial on G_N x 0
        self.chars
            .intersection(&self.constants_subgroup())
            .expect("same ambient")
            .order()
    }

    /// `F cap Lambda_N`.
    pub fn cyclotomic_part(&self) -> CyclotomicFieldDesc {
        let constants = self.constants_subgroup();
        let sub = self
            .chars
            .intersection(&constants.annihilator())
            .expect("same ambient");
        self.project(&sub)
    }

    /// `F k_m cap Lambda_N`: drop the constants coordinate.
    pub fn cyclotomic_projection(&self) -> CyclotomicFieldDesc {
        self.project(&self.chars)
    }

    fn project(&self, sub: &Subgroup) -> CyclotomicFieldDesc {
        let r = self.units.group().rank();
        let gens: Vec<DualElem> = sub
            .generators()
            .into_iter()
            .map(|c| c[..r].to_vec())
            .collect();
        let x = CharacterGroup::from_duals(self.units.clone(), &gens).expect("same ambient");
        CyclotomicFieldDesc::new(x)
    }

    pub fn fixed_field(&self, s: &Subgroup) -> Result<Self> {
        if s.ambient() != self.ambient() {
            return Err(Error::AmbientMismatch);
        }
        Ok(self.with(self.chars.intersection(&s.annihilator())?))
    }

    /// Element-side `cap ker`.
    pub fn kernel(&self) -> Subgroup {
        self.chars.annihilator()
    }

    /// Realized at modulus `target` and constants degree `m` (a multiple of
    /// the current one).
    pub fn realize(&self, target: &Arc<ResidueUnitGroup>, m: u64) -> Result<Self> {
        if target == &self.units && m == self.m {
            return Ok(self.clone());
        }
        if !m.is_multiple_of(self.m) {
            return Err(Error::Precondition(alloc::format!(
                "{} does not divide {m}",
                self.m
            )));
        }
        let r = self.units.group().rank();
        let gens = self
            .chars
            .generators()
            .into_iter()
            .map(|c| {
                let chi = DirichletCharacter::new(self.units.clone(), c[..r].to_vec())?;
                let mut d = chi.to_modulus(target)?.dual().to_vec();
                d.push(c[r] * (m / self.m));
                Ok(d)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::generated_by(target.clone(), m, &gens)
    }

    /// Both fields in a common ambient.
    pub fn align(&self, other: &Self) -> Result<(Self, Self)> {
        let ring = self.units.ring();
        if ring != other.units.ring() {
            return Err(Error::AmbientMismatch);
        }
        let m = lcm(self.m, other.m);
        let target = if self.units == other.units {
            self.units.clone()
        } else {
            let (a, b) = (self.modulus(), other.modulus());
            let n = ring.div_exact(&ring.mul(a, b), &ring.gcd(a, b))?;
            Arc::new(ResidueUnitGroup::new(ring, &n)?)
        };
        Ok((self.realize(&target, m)?, other.realize(&target, m)?))
    }

    pub fn same_field(&self, other: &Self) -> Result<bool> {
        let (a, b) = self.align(other)?;
        Ok(a.chars == b.chars)
    }

    pub fn compositum(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        Ok(a.with(a.chars.sum(&b.chars)?))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        Ok(a.with(a.chars.intersection(&b.chars)?))
    }

    pub fn is_subfield_of(&self, other: &Self) -> Result<bool> {
        let (a, b) = self.align(other)?;
        b.chars.contains_subgroup(&a.chars)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FqField;

    fn ring(q: u64) -> PolyRing {
        PolyRing::new(FqField::new(q, None).unwrap())
    }

    #[test]
    fn constants_and_radicals() {
        let r = ring(5);
        let two = RationalFn::from_poly(r.from_ints(&[2]));
        let f = AbelianFieldDesc::radical(&r, &two, 2).unwrap();
        assert_eq!(
            (f.degree(), f.constants_degree(), f.e_inf(), f.f_inf()),
            (2, 2, 1, 2)
        );
        let four = RationalFn::from_poly(r.from_ints(&[4]));
        assert_eq!(AbelianFieldDesc::radical(&r, &four, 2).unwrap().degree(), 1);
        // sqrt(T) and sqrt(4T) agree since 4 is a square
        let t = RationalFn::from_poly(Poly::x());
        let t4 = RationalFn::from_poly(r.from_ints(&[0, 4]));
        let a = AbelianFieldDesc::radical(&r, &t, 2).unwrap();
        let b = AbelianFieldDesc::radical(&r, &t4, 2).unwrap();
        assert!(a.same_field(&b).unwrap());
        assert_eq!(
            (a.e_at(0), a.e_inf(), a.f_inf(), a.constants_degree()),
            (2, 2, 1, 1)
        );
        assert!(a
            .cyclotomic_part()
            .same_field(&a.cyclotomic_projection())
            .unwrap());
        // sqrt(2T) is not cyclotomic: its projection is sqrt(T)
        let t2 = RationalFn::from_poly(r.from_ints(&[0, 2]));
        let c = AbelianFieldDesc::radical(&r, &t2, 2).unwrap();
        assert_eq!(c.cyclotomic_part().degree(), 1);
        assert!(c
            .cyclotomic_projection()
            .same_field(&a.cyclotomic_projection())
            .unwrap());
        let both = a.compositum(&f).unwrap();
        assert!(c.is_subfield_of(&both).unwrap());
        assert_eq!(both.degree(), 4);
    }
}
