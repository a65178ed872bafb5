//! Factorization in `F_q[T]`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::arith::factor_u64;
use crate::error::{Error, Result};
use crate::field::FqElem;
use crate::poly::{Poly, PolyRing};

const SPLIT_SEED: u64 = 0x005e_ed0f_f4c7;

/// `unit * prod P_i^a_i` with distinct monic irreducible `P_i` in increasing
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredPoly {
    pub unit: FqElem,
    pub factors: Vec<(Poly, u32)>,
}

impl FactoredPoly {
    pub fn primes(&self) -> impl Iterator<Item = &Poly> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn expand(&self, ring: &PolyRing) -> Poly {
        let mut acc = Poly::constant(self.unit);
        for (p, e) in &self.factors {
            acc = ring.mul(&acc, &ring.pow(p, *e as u64));
        }
        acc
    }

    /// Product of the distinct primes.
    pub fn radical(&self, ring: &PolyRing) -> Poly {
        ring.product(self.primes())
    }

    /// `|(F_q[T]/N)^*| = prod q^((a-1)d) (q^d - 1)`.
    pub fn euler_phi(&self, ring: &PolyRing) -> BigUint {
        let mut acc = BigUint::one();
        for (p, e) in &self.factors {
            let d = p.deg();
            acc *= ring.q_pow((*e as usize - 1) * d) * (ring.q_pow(d) - 1u32);
        }
        acc
    }
}

impl PolyRing {
    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self, f: &Poly) -> bool {
        let n = match f.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let f = self.monic(f);
        let x = Poly::x();
        let q = self.q();
        // frob[k] = T^(q^k) mod f
        let mut frob = vec![self.rem(&x, &f).expect("nonzero")];
        for _ in 0..n {
            let next = self.pow_mod(frob.last().expect("nonempty"), q, &f);
            frob.push(next);
        }
        if frob[n] != self.rem(&x, &f).expect("nonzero") {
            return false;
        }
        factor_u64(n as u64).iter().all(|&(r, _)| {
            let k = n / r as usize;
            self.gcd(&self.sub(&frob[k], &x), &f).is_one()
        })
    }

    /// Full factorization of a nonzero polynomial.
    pub fn factor(&self, f: &Poly) -> Result<FactoredPoly> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial("cannot factor zero"));
        }
        let unit = f.leading();
        let mut factors = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
        for (part, mult) in self.squarefree_decomposition(&self.monic(f)) {
            for (g, d) in self.distinct_degree(&part) {
                for p in self.equal_degree(&g, d, &mut rng) {
                    factors.push((p, mult));
                }
            }
        }
        factors.sort();
        Ok(FactoredPoly { unit, factors })
    }

    /// Monic square-free `g_i` with `f = prod g_i^i`.
    pub fn squarefree_decomposition(&self, f: &Poly) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        self.sqf_rec(&self.monic(f), 1, &mut out);
        out.sort_by_key(|a| a.1);
        out
    }

    fn sqf_rec(&self, f: &Poly, scale: u32, out: &mut Vec<(Poly, u32)>) {
        if f.deg() == 0 {
            return;
        }
        let p = self.field().characteristic() as u32;
        let df = self.derivative(f);
        let mut c = self.gcd(f, &df);
        let mut w = self.div_exact(f, &c).expect("gcd divides");
        let mut i = 1u32;
        while !w.is_one() {
            let y = self.gcd(&w, &c);
            let z = self.div_exact(&w, &y).expect("gcd divides");
            if !z.is_one() {
                out.push((z, i * scale));
            }
            i += 1;
            w = y;
            c = self.div_exact(&c, &w).expect("gcd divides");
        }
        if !c.is_one() {
            let root = self.pth_root(&c);
            self.sqf_rec(&root, scale * p, out);
        }
    }

    /// `h` with `h^p = c`, for `c` a polynomial in `T^p`.
    fn pth_root(&self, c: &Poly) -> Poly {
        let field = self.field();
        let p = field.characteristic() as usize;
        let e = field.order() / p as u64;
        Poly::from_coeffs(
            c.coeffs()
                .iter()
                .step_by(p)
                .map(|&a| field.pow_u64(a, e))
                .collect(),
        )
    }

    /// Splits a square-free monic `f` into products of irreducibles of equal
    /// degree.
    fn distinct_degree(&self, f: &Poly) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        let mut rest = f.clone();
        let x = Poly::x();
        let mut h = x.clone();
        let mut d = 0usize;
        while rest.deg() >= 2 * (d + 1) {
            d += 1;
            h = self.pow_mod(&h, self.q(), &rest);
            let g = self.gcd(&self.sub(&h, &x), &rest);
            if !g.is_one() {
                rest = self.div_exact(&rest, &g).expect("gcd divides");
                h = self.rem(&h, &rest).expect("nonzero");
                out.push((g, d));
            }
        }
        if rest.deg() > 0 {
            let deg = rest.deg();
            out.push((rest, deg));
        }
        out
    }

    fn equal_degree(&self, f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
        let n = f.deg();
        if n == d {
            return vec![f.clone()];
        }
        let field = self.field();
        let q = self.q();
        let odd = q % 2 == 1;
        let exp = (self.q_pow(d) - 1u32) / 2u32;
        loop {
            let a = Poly::from_coeffs(
                (0..n)
                    .map(|_| {
                        field
                            .from_raw((rng.next_u64() % q) as u32)
                            .expect("in range")
                    })
                    .collect(),
            );
            if a.deg() == 0 {
                continue;
            }
            let b = if odd {
                self.sub(&self.pow_mod_big(&a, &exp, f), &Poly::one())
            } else {
                // absolute trace to F_2
                let bits = d * field.degree() as usize;
                let mut t = self.rem(&a, f).expect("nonzero");
                let mut acc = t.clone();
                for _ in 1..bits {
                    t = self.mulmod(&t, &t, f);
                    acc = self.add(&acc, &t);
                }
                acc
            };
            let g = self.gcd(&b, f);
            if g.deg() > 0 && g.deg() < n {
                let h = self.div_exact(f, &g).expect("gcd divides");
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&h, d, rng));
                return out;
            }
        }
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
    fn factor_reconstructs_exhaustive_small() {
        for q in [2u64, 3, 4, 5] {
            let r = ring(q);
            for d in 1..=5usize {
                if q.pow(d as u32) > 4096 {
                    break;
                }
                for f in r.monic_of_degree(d) {
                    let fac = r.factor(&f).unwrap();
                    assert_eq!(fac.expand(&r), f);
                    for (p, _) in &fac.factors {
                        assert!(p.is_monic() && r.is_irreducible(p));
                    }
                    let mut primes: Vec<_> = fac.primes().cloned().collect();
                    primes.dedup();
                    assert_eq!(primes.len(), fac.factors.len());
                }
            }
        }
    }

    #[test]
    fn pth_powers() {
        let r = ring(3);
        // (T+1)^3 (T^2+1)^6 T
        let a = r.from_ints(&[1, 1]);
        let b = r.from_ints(&[1, 0, 1]);
        let f = r.mul(&r.mul(&r.pow(&a, 3), &r.pow(&b, 6)), &Poly::x());
        let fac = r.factor(&f).unwrap();
        assert_eq!(fac.factors, vec![(Poly::x(), 1), (a, 3), (b, 6)]);
    }

    #[test]
    fn euler_phi_brute_force() {
        let r = ring(3);
        for d in 1..=4usize {
            for n in r.monic_of_degree(d) {
                let fac = r.factor(&n).unwrap();
                let count = (0..3u64.pow(d as u32))
                    .filter(|&k| {
                        let mut k = k;
                        let coeffs: Vec<i64> = (0..d)
                            .map(|_| {
                                let c = k % 3;
                                k /= 3;
                                c as i64
                            })
                            .collect();
                        r.gcd(&r.from_ints(&coeffs), &n).is_one()
                    })
                    .count();
                assert_eq!(fac.euler_phi(&r), BigUint::from(count));
            }
        }
    }

    #[test]
    fn zero_is_rejected() {
        assert!(ring(5).factor(&Poly::zero()).is_err());
    }
}
