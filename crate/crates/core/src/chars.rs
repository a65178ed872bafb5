//! Dirichlet characters of `F_q[T]` and groups of them.
//!
//! A character mod `N` is a dual vector over the coordinate group of
//! `G_N`; its values are elements of `Q/Z` (`a/m` stands for `exp(2 pi i a/m)`).

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::arith::lcm;
use crate::error::{Error, Result};
use crate::factor::FactoredPoly;
use crate::field::FqElem;
use crate::group::{DualElem, GroupElem, Qz, Subgroup};
use crate::poly::Poly;
use crate::units::ResidueUnitGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletCharacter {
    group: Arc<ResidueUnitGroup>,
    dual: DualElem,
}

impl DirichletCharacter {
    pub fn new(group: Arc<ResidueUnitGroup>, dual: DualElem) -> Result<Self> {
        if !group.group().is_valid(&dual) {
            return Err(Error::Precondition(format!(
                "dual vector {:?} does not fit coordinate orders {:?}",
                dual,
                group.group().orders()
            )));
        }
        Ok(DirichletCharacter { group, dual })
    }

    pub fn trivial(group: Arc<ResidueUnitGroup>) -> Self {
        let dual = group.group().identity();
        DirichletCharacter { group, dual }
    }

    pub fn unit_group(&self) -> &Arc<ResidueUnitGroup> {
        &self.group
    }

    pub fn modulus(&self) -> &Poly {
        self.group.modulus()
    }

    pub fn dual(&self) -> &[u64] {
        &self.dual
    }

    pub fn is_trivial(&self) -> bool {
        self.dual.iter().all(|&c| c == 0)
    }

    pub fn order(&self) -> u64 {
        self.group.group().element_order(&self.dual)
    }

    pub fn eval_elem(&self, x: &[u64]) -> Qz {
        self.group.group().pairing(&self.dual, x)
    }

    /// `chi(B)` for `B` prime to `N`.
    pub fn evaluate(&self, b: &Poly) -> Result<Qz> {
        Ok(self.eval_elem(&self.group.encode(b)?))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(DirichletCharacter {
            group: self.group.clone(),
            dual: self.group.group().add(&self.dual, &other.dual),
        })
    }

    pub fn pow(&self, k: i128) -> Self {
        DirichletCharacter {
            group: self.group.clone(),
            dual: self.group.group().scale(&self.dual, k),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    /// `chi_P` as a character mod `P^a`.
    pub fn component(&self, p: &Poly) -> Result<DirichletCharacter> {
        let i = self.group.prime_index(p)?;
        Ok(DirichletCharacter {
            group: Arc::new(self.group.local_group(i)),
            dual: self.group.local_part(&self.dual, i),
        })
    }

    /// `chi_P` inflated back to modulus `N`.
    pub fn component_inflated(&self, p: &Poly) -> Result<DirichletCharacter> {
        let i = self.group.prime_index(p)?;
        Ok(self.component_at(i))
    }

    pub(crate) fn component_at(&self, i: usize) -> DirichletCharacter {
        DirichletCharacter {
            group: self.group.clone(),
            dual: self
                .group
                .embed_local(i, &self.group.local_part(&self.dual, i)),
        }
    }

    /// Smallest `j` with `chi_P` trivial on `1 + P^j`, for the factor `i`.
    pub fn conductor_exponent(&self, i: usize) -> u32 {
        let local = &self.group.locals()[i];
        let chi = self.group.local_part(&self.dual, i);
        (0..=local.alpha())
            .find(|&j| {
                local
                    .level(j)
                    .generators()
                    .iter()
                    .all(|g| local.group().pairing(&chi, g).is_zero())
            })
            .expect("trivial on the top level")
    }

    pub fn conductor(&self) -> FactoredPoly {
        let factors = self
            .group
            .locals()
            .iter()
            .enumerate()
            .filter_map(|(i, l)| {
                let e = self.conductor_exponent(i);
                (e > 0).then(|| (l.prime().clone(), e))
            })
            .collect();
        FactoredPoly {
            unit: FqElem::ONE,
            factors,
        }
    }

    pub fn conductor_poly(&self) -> Poly {
        self.conductor().expand(self.group.ring())
    }

    /// `chi(beta)` for the canonical generator `beta` of `F_q^*`; this
    /// determines the restriction to constants.
    pub fn restrict_to_constants(&self) -> Qz {
        let beta = self.group.ring().field().primitive_root();
        self.eval_elem(&self.group.encode_const(beta).expect("constants are units"))
    }

    /// The same primitive character, realized modulo `target`. The conductor
    /// must divide the target modulus.
    pub fn to_modulus(&self, target: &Arc<ResidueUnitGroup>) -> Result<DirichletCharacter> {
        let ring = self.group.ring();
        if ring != target.ring() {
            return Err(Error::AmbientMismatch);
        }
        let cond = self.conductor();
        let cond_poly = cond.expand(ring);
        if !ring.divides(&cond_poly, target.modulus()) {
            return Err(Error::Precondition(format!(
                "conductor {} does not divide {}",
                ring.format(&cond_poly),
                ring.format(target.modulus())
            )));
        }
        let tg = target.group();
        let mut dual = Vec::with_capacity(tg.rank());
        for j in 0..tg.rank() {
            let u = target.decode(&tg.basis(j));
            // lift u to a unit mod N agreeing with it at the conductor primes
            let parts: Vec<Poly> = self
                .group
                .locals()
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    let part = if self.conductor_exponent(i) > 0 {
                        u.clone()
                    } else {
                        Poly::one()
                    };
                    ring.rem(&part, l.modulus()).expect("nonzero modulus")
                })
                .collect();
            let lift = self.group.crt_combine(&parts);
            let v = self.evaluate(&lift)?;
            let n = tg.orders()[j];
            let c = v.index_mod(n).ok_or_else(|| {
                Error::Invariant(format!("character value {v} is not of order dividing {n}"))
            })?;
            dual.push(c);
        }
        DirichletCharacter::new(target.clone(), dual)
    }
}

/// A subgroup of the characters mod `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterGroup {
    group: Arc<ResidueUnitGroup>,
    sub: Subgroup,
}

impl CharacterGroup {
    pub fn from_subgroup(group: Arc<ResidueUnitGroup>, sub: Subgroup) -> Result<Self> {
        if sub.ambient() != group.group() {
            return Err(Error::AmbientMismatch);
        }
        Ok(CharacterGroup { group, sub })
    }

    pub fn generated_by(
        group: Arc<ResidueUnitGroup>,
        chars: &[DirichletCharacter],
    ) -> Result<Self> {
        if chars.iter().any(|c| c.group != group) {
            return Err(Error::AmbientMismatch);
        }
        let gens: Vec<DualElem> = chars.iter().map(|c| c.dual.clone()).collect();
        let sub = Subgroup::generated_by(group.group(), &gens)?;
        Ok(CharacterGroup { group, sub })
    }

    pub fn from_duals(group: Arc<ResidueUnitGroup>, duals: &[DualElem]) -> Result<Self> {
        let sub = Subgroup::generated_by(group.group(), duals)?;
        Ok(CharacterGroup { group, sub })
    }

    pub fn full(group: Arc<ResidueUnitGroup>) -> Self {
        let sub = Subgroup::whole(group.group());
        CharacterGroup { group, sub }
    }

    pub fn trivial(group: Arc<ResidueUnitGroup>) -> Self {
        let sub = Subgroup::trivial(group.group());
        CharacterGroup { group, sub }
    }

    pub fn unit_group(&self) -> &Arc<ResidueUnitGroup> {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.sub
    }

    pub fn order(&self) -> u128 {
        self.sub.order()
    }

    pub fn generators(&self) -> Vec<DirichletCharacter> {
        self.sub
            .generators()
            .into_iter()
            .map(|dual| DirichletCharacter {
                group: self.group.clone(),
                dual,
            })
            .collect()
    }

    pub fn elements(&self) -> Vec<DirichletCharacter> {
        self.sub
            .elements()
            .into_iter()
            .map(|dual| DirichletCharacter {
                group: self.group.clone(),
                dual,
            })
            .collect()
    }

    pub fn contains(&self, chi: &DirichletCharacter) -> bool {
        chi.group == self.group && self.sub.contains(&chi.dual)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    pub fn is_subgroup_of(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        other.sub.contains_subgroup(&self.sub)
    }

    pub fn product_with(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(CharacterGroup {
            group: self.group.clone(),
            sub: self.sub.sum(&other.sub)?,
        })
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(CharacterGroup {
            group: self.group.clone(),
            sub: self.sub.intersection(&other.sub)?,
        })
    }

    pub fn with_character(&self, chi: &DirichletCharacter) -> Result<Self> {
        if chi.group != self.group {
            return Err(Error::AmbientMismatch);
        }
        Ok(CharacterGroup {
            group: self.group.clone(),
            sub: self.sub.with_element(&chi.dual)?,
        })
    }

    /// `X_P = {chi_P}` for the factor `i`, inflated to modulus `N`.
    pub fn component_group_at(&self, i: usize) -> CharacterGroup {
        let gens: Vec<DualElem> = self
            .sub
            .generators()
            .iter()
            .map(|c| self.group.embed_local(i, &self.group.local_part(c, i)))
            .collect();
        let sub = Subgroup::generated_by(self.group.group(), &gens).expect("same ambient");
        CharacterGroup {
            group: self.group.clone(),
            sub,
        }
    }

    pub fn component_group(&self, p: &Poly) -> Result<CharacterGroup> {
        Ok(self.component_group_at(self.group.prime_index(p)?))
    }

    /// `|X_P|` for each factor of `N`.
    pub fn component_orders(&self) -> Vec<u128> {
        (0..self.group.num_primes())
            .map(|i| self.component_group_at(i).order())
            .collect()
    }

    /// `Y = prod_P X_P`.
    pub fn component_product(&self) -> CharacterGroup {
        let mut gens = Vec::new();
        for i in 0..self.group.num_primes() {
            gens.extend(self.component_group_at(i).sub.generators());
        }
        let sub = Subgroup::generated_by(self.group.group(), &gens).expect("same ambient");
        CharacterGroup {
            group: self.group.clone(),
            sub,
        }
    }

    /// Order of the group of restrictions to `F_q^*`.
    pub fn restriction_order(&self) -> u64 {
        self.generators()
            .iter()
            .fold(1, |acc, c| lcm(acc, c.restrict_to_constants().order()))
    }

    /// `X` restricted to the subgroup of characters killing `S` (element
    /// side): `X cap Ann(S)`.
    pub fn fixed_by(&self, s: &Subgroup) -> Result<CharacterGroup> {
        if s.ambient() != self.group.group() {
            return Err(Error::AmbientMismatch);
        }
        let ann = s.annihilator();
        Ok(CharacterGroup {
            group: self.group.clone(),
            sub: self.sub.intersection(&ann)?,
        })
    }

    /// `H = cap ker chi` on the element side.
    pub fn kernel(&self) -> Subgroup {
        self.sub.annihilator()
    }

    /// Largest conductor, i.e. the lcm of the conductors of the generators.
    pub fn conductor(&self) -> Poly {
        let ring = self.group.ring();
        self.generators().iter().fold(Poly::one(), |acc, c| {
            let f = c.conductor_poly();
            let g = ring.gcd(&acc, &f);
            ring.div_exact(&ring.mul(&acc, &f), &g)
                .expect("gcd divides")
        })
    }

    /// The same characters realized modulo `target`.
    pub fn to_modulus(&self, target: &Arc<ResidueUnitGroup>) -> Result<CharacterGroup> {
        let gens = self
            .generators()
            .iter()
            .map(|c| c.to_modulus(target))
            .collect::<Result<Vec<_>>>()?;
        CharacterGroup::generated_by(target.clone(), &gens)
    }

    /// Applies the element-side check `chi(g) = 0` for all generators.
    pub fn kills(&self, g: &GroupElem) -> bool {
        self.sub
            .generators()
            .iter()
            .all(|c| self.group.group().pairing(c, g).is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FqField;
    use crate::poly::PolyRing;

    fn setup(q: u64, n: &[i64]) -> (PolyRing, Arc<ResidueUnitGroup>) {
        let r = PolyRing::new(FqField::new(q, None).unwrap());
        let g = Arc::new(ResidueUnitGroup::new(&r, &r.from_ints(n)).unwrap());
        (r, g)
    }

    #[test]
    fn components_multiply_back() {
        let (_, g) = setup(5, &[0, 1, 1]);
        let x = CharacterGroup::full(g.clone());
        let t = Poly::x();
        let t1 = g.ring().from_ints(&[1, 1]);
        for chi in x.elements() {
            let a = chi.component(&t).unwrap();
            let b = chi.component(&t1).unwrap();
            for u in g.units() {
                let lhs = chi.evaluate(&u).unwrap();
                assert_eq!(lhs, a.evaluate(&u).unwrap() + b.evaluate(&u).unwrap());
            }
            assert_eq!(chi.order(), lcm(a.order(), b.order()));
        }
        assert_eq!(x.component_group(&t).unwrap().order(), 4);
    }

    #[test]
    fn conductors() {
        let (r, g) = setup(3, &[0, 0, 1]);
        let x = CharacterGroup::full(g.clone());
        let mut quad = None;
        for chi in x.elements() {
            let one_units_trivial = chi.evaluate(&r.from_ints(&[1, 1])).unwrap().is_zero();
            let expected = if chi.is_trivial() {
                Poly::one()
            } else if one_units_trivial {
                Poly::x()
            } else {
                r.from_ints(&[0, 0, 1])
            };
            assert_eq!(chi.conductor_poly(), expected);
            if chi.order() == 2 {
                quad = Some(chi);
            }
        }
        let quad = quad.unwrap();
        let small = Arc::new(ResidueUnitGroup::new(&r, &Poly::x()).unwrap());
        let down = quad.to_modulus(&small).unwrap();
        for u in g.units() {
            assert_eq!(quad.evaluate(&u).unwrap(), down.evaluate(&u).unwrap());
        }
        let back = down.to_modulus(&g).unwrap();
        assert_eq!(back, quad);
    }

    #[test]
    fn restriction_to_constants() {
        let (r, g) = setup(5, &[0, 1]);
        let x = CharacterGroup::full(g.clone());
        assert_eq!(x.restriction_order(), 4);
        let (_, g2) = setup(5, &[0, 1, 1]);
        // psi_T * psi_{T+1}^{-1} with equal local exponents kills constants
        let chi = DirichletCharacter::new(g2.clone(), alloc::vec![1, 3]).unwrap();
        for c in r.field().nonzero_elements() {
            assert!(chi.evaluate(&Poly::constant(c)).unwrap().is_zero());
        }
        assert!(chi.restrict_to_constants().is_zero());
    }
}
