//! Subgroups in canonical Hermite form.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;

use super::{AbGroup, GroupElem};
use crate::arith::egcd;
use crate::error::{Error, Result};

/// A subgroup `S` of `G = prod Z/n_j`, stored as the row Hermite basis of
/// the lattice `L = S + prod n_j Z` in `Z^k`.
///
/// Row `j` is `(0, .., 0, h_j, a_{j,j+1}, .., a_{j,k-1})` with `h_j | n_j`
/// and `0 <= a_{j,i} < h_i`; this basis is unique, so equal subgroups have
/// equal data.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    ambient: AbGroup,
    hnf: Vec<Vec<u64>>,
}

impl Subgroup {
    pub fn generated_by(ambient: &AbGroup, gens: &[GroupElem]) -> Result<Self> {
        if gens.iter().any(|g| g.len() != ambient.rank()) {
            return Err(Error::AmbientMismatch);
        }
        let k = ambient.rank();
        let n: Vec<i128> = ambient.orders().iter().map(|&x| x as i128).collect();
        let mut pool: Vec<Vec<i128>> = gens
            .iter()
            .map(|g| {
                g.iter()
                    .zip(&n)
                    .map(|(&a, &m)| (a as i128).rem_euclid(m))
                    .collect()
            })
            .collect();
        let mut hnf: Vec<Vec<i128>> = Vec::with_capacity(k);
        for j in 0..k {
            let mut pivot = vec![0i128; k];
            pivot[j] = n[j];
            for row in pool.iter_mut() {
                let a = row[j];
                if a == 0 {
                    continue;
                }
                // combine so that pivot[j] becomes gcd(pivot[j], a) and row[j] becomes 0
                let b = pivot[j];
                let (g, x, y) = egcd(b, a);
                let (ub, ua) = (b / g, a / g);
                for c in j..k {
                    let (p, r) = (pivot[c], row[c]);
                    pivot[c] = (x * p + y * r).rem_euclid(n[c]);
                    row[c] = (ua * p - ub * r).rem_euclid(n[c]);
                }
                // the gcd equals n[j] when a is a multiple of it; keep the pivot nonzero
                if pivot[j] == 0 {
                    pivot[j] = n[j];
                }
                debug_assert_eq!(row[j], 0);
            }
            pool.retain(|r| r.iter().any(|&x| x != 0));
            hnf.push(pivot);
        }
        // reduce entries above each pivot
        for i in 0..k {
            let h = hnf[i][i];
            for r in 0..i {
                let t = hnf[r][i].div_euclid(h);
                if t != 0 {
                    let pivot_row = hnf[i].clone();
                    for (x, y) in hnf[r][i..].iter_mut().zip(&pivot_row[i..]) {
                        *x -= t * y;
                    }
                    for c in i + 1..k {
                        hnf[r][c] = hnf[r][c].rem_euclid(n[c]);
                    }
                }
            }
        }
        let hnf = hnf
            .into_iter()
            .map(|r| r.into_iter().map(|x| x as u64).collect())
            .collect();
        Ok(Subgroup {
            ambient: ambient.clone(),
            hnf,
        })
    }

    pub fn trivial(ambient: &AbGroup) -> Self {
        Self::generated_by(ambient, &[]).expect("no generators")
    }

    pub fn whole(ambient: &AbGroup) -> Self {
        let gens: Vec<_> = (0..ambient.rank()).map(|j| ambient.basis(j)).collect();
        Self::generated_by(ambient, &gens).expect("basis vectors")
    }

    pub fn ambient(&self) -> &AbGroup {
        &self.ambient
    }

    /// Pivots `h_j`; `|S| = prod n_j / h_j`.
    pub fn pivots(&self) -> Vec<u64> {
        (0..self.hnf.len()).map(|j| self.hnf[j][j]).collect()
    }

    pub fn order(&self) -> u128 {
        self.ambient
            .orders()
            .iter()
            .zip(self.pivots())
            .map(|(&n, h)| (n / h) as u128)
            .product()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.pivots().iter().all(|&h| h == 1)
    }

    /// Generators: the Hermite rows reduced into the group, identity rows
    /// dropped.
    pub fn generators(&self) -> Vec<GroupElem> {
        self.hnf
            .iter()
            .map(|r| {
                r.iter()
                    .zip(self.ambient.orders())
                    .map(|(&a, &n)| a % n)
                    .collect::<Vec<_>>()
            })
            .filter(|g: &GroupElem| g.iter().any(|&x| x != 0))
            .collect()
    }

    /// The Hermite rows as relations, for quotient presentations.
    pub(crate) fn relation_rows(&self) -> Vec<Vec<i128>> {
        self.hnf
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect()
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        if x.len() != self.ambient.rank() {
            return false;
        }
        let n = self.ambient.orders();
        let k = n.len();
        let mut v: Vec<i128> = x.iter().zip(n).map(|(&a, &m)| (a % m) as i128).collect();
        for j in 0..k {
            let h = self.hnf[j][j] as i128;
            let a = v[j].rem_euclid(n[j] as i128);
            if a % h != 0 {
                return false;
            }
            let t = a / h;
            for c in j..k {
                v[c] = (v[c] - t * self.hnf[j][c] as i128).rem_euclid(n[c] as i128);
            }
        }
        v.iter().all(|&a| a == 0)
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.generators().iter().all(|g| self.contains(g)))
    }

    fn check_ambient(&self, other: &Subgroup) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_ambient(other)?;
        let mut gens = self.generators();
        gens.extend(other.generators());
        Self::generated_by(&self.ambient, &gens)
    }

    pub fn with_element(&self, x: &[u64]) -> Result<Subgroup> {
        let mut gens = self.generators();
        gens.push(x.to_vec());
        Self::generated_by(&self.ambient, &gens)
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_ambient(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// `{c : <c, s> = 0 for all s in S}` in dual coordinates.
    pub fn annihilator(&self) -> Subgroup {
        let n = self.ambient.orders();
        let k = n.len();
        // columns of H^{-1}, scaled row-wise by n
        let mut gens = Vec::with_capacity(k);
        for i in 0..k {
            // solve H y = e_i (H upper triangular)
            let mut y = vec![Ratio::from_integer(0i128); k];
            for r in (0..k).rev() {
                let mut acc = Ratio::from_integer(if r == i { 1 } else { 0 });
                for (yc, &h) in y.iter().zip(&self.hnf[r]).skip(r + 1) {
                    acc -= yc * Ratio::from_integer(h as i128);
                }
                y[r] = acc / Ratio::from_integer(self.hnf[r][r] as i128);
            }
            let g: Vec<i128> = y
                .iter()
                .zip(n)
                .map(|(v, &m)| {
                    let s = v * Ratio::from_integer(m as i128);
                    debug_assert!(s.is_integer());
                    s.to_integer()
                })
                .collect();
            gens.push(self.ambient.reduce(&g));
        }
        let ann = Self::generated_by(&self.ambient, &gens).expect("same ambient");
        debug_assert_eq!(ann.order() * self.order(), self.ambient.order());
        ann
    }

    /// All elements, by enumerating the ambient group.
    pub fn elements(&self) -> Vec<GroupElem> {
        self.ambient
            .elements()
            .filter(|x| self.contains(x))
            .collect()
    }

    /// Image under a homomorphism given by the images of the ambient basis.
    pub fn image(&self, target: &AbGroup, basis_images: &[GroupElem]) -> Result<Subgroup> {
        let imgs: Vec<GroupElem> = self
            .generators()
            .iter()
            .map(|g| {
                let mut acc = target.identity();
                for (&c, img) in g.iter().zip(basis_images) {
                    acc = target.add(&acc, &target.scale(img, c as i128));
                }
                acc
            })
            .collect();
        Self::generated_by(target, &imgs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn span_brute(g: &AbGroup, gens: &[GroupElem]) -> BTreeSet<GroupElem> {
        let mut set: BTreeSet<GroupElem> = [g.identity()].into_iter().collect();
        loop {
            let mut next = set.clone();
            for x in &set {
                for s in gens {
                    next.insert(g.add(x, s));
                }
            }
            if next.len() == set.len() {
                return set;
            }
            set = next;
        }
    }

    #[test]
    fn basics() {
        let c4 = AbGroup::cyclic(4);
        let two = Subgroup::generated_by(&c4, &[vec![2]]).unwrap();
        let all = Subgroup::generated_by(&c4, &[vec![1]]).unwrap();
        assert_eq!(two.intersection(&all).unwrap(), two);
        assert_eq!(two.annihilator().order(), 2);
        assert_eq!(Subgroup::whole(&c4).annihilator(), Subgroup::trivial(&c4));
        assert_eq!(Subgroup::trivial(&c4).annihilator(), Subgroup::whole(&c4));
        let v4 = AbGroup::new(vec![2, 2]).unwrap();
        let a = Subgroup::generated_by(&v4, &[vec![1, 0]]).unwrap();
        let b = Subgroup::generated_by(&v4, &[vec![0, 1]]).unwrap();
        assert!(a.sum(&b).unwrap().is_whole());
        assert_eq!(a.sum(&Subgroup::trivial(&v4)).unwrap(), a);
        assert!(a.sum(&Subgroup::trivial(&c4)).is_err());
    }

    #[test]
    fn quotient_of_c4_c2() {
        let g = AbGroup::new(vec![4, 2]).unwrap();
        let s = Subgroup::generated_by(&g, &[vec![2, 0]]).unwrap();
        let p = g.quotient(&s).unwrap();
        assert_eq!(p.group().orders(), &[2, 2]);
        assert_eq!(p.group().order() * s.order(), g.order());
    }

    #[test]
    fn exhaustive_small_groups() {
        for orders in [
            vec![4],
            vec![2, 2],
            vec![6, 4],
            vec![2, 4, 2],
            vec![3, 9],
            vec![1, 8],
            vec![12],
        ] {
            let g = AbGroup::new(orders).unwrap();
            let els: Vec<_> = g.elements().collect();
            let mut seen = BTreeSet::new();
            for x in &els {
                for y in els.iter().step_by(3) {
                    let s = Subgroup::generated_by(&g, &[x.clone(), y.clone()]).unwrap();
                    let brute = span_brute(&g, &[x.clone(), y.clone()]);
                    assert_eq!(s.order(), brute.len() as u128);
                    for z in &els {
                        assert_eq!(s.contains(z), brute.contains(z));
                    }
                    // canonical form: equal subgroups have equal data
                    let alt: Vec<GroupElem> = brute.iter().cloned().collect();
                    assert_eq!(Subgroup::generated_by(&g, &alt).unwrap(), s);
                    seen.insert(s);
                }
            }
            for s in &seen {
                let ann = s.annihilator();
                assert_eq!(ann.order() * s.order(), g.order());
                assert_eq!(&ann.annihilator(), s);
                for c in ann.generators() {
                    for x in s.generators() {
                        assert!(g.pairing(&c, &x).is_zero());
                    }
                }
                for t in seen.iter().step_by(2) {
                    let inter = s.intersection(t).unwrap();
                    let brute: Vec<_> = els
                        .iter()
                        .filter(|z| s.contains(z) && t.contains(z))
                        .cloned()
                        .collect();
                    assert_eq!(inter.order(), brute.len() as u128);
                    assert!(brute.iter().all(|z| inter.contains(z)));
                }
            }
        }
    }
}
