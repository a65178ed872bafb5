//! Signs at the infinite prime.
//!
//! Every `x` in `k_inf^*` is `pi^n lambda epsilon` with `pi = 1/T`,
//! `lambda` in `F_q^*` and `epsilon` a one-unit; the sign is `lambda`. In
//! the tame extension `k_inf(l-th root of (delta/T))` the uniformizer is
//! `Pi` with `Pi^l = delta pi`, every element is `Pi^m xi w`, and the norm
//! down to `k_inf` is `((-1)^(l-1) delta pi)^m xi^l (one-unit)`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FqElem, FqField};
use crate::poly::{Poly, PolyRing};
use crate::rational::RationalFn;

/// `pi^n lambda epsilon`, with the one-unit kept as its first `precision`
/// coefficients in `pi` (constant term 1 first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinityLocalElem {
    pub valuation: i64,
    pub sign: FqElem,
    pub one_unit: Vec<FqElem>,
}

impl InfinityLocalElem {
    /// Laurent expansion of a rational function in `1/T`.
    pub fn expand(ring: &PolyRing, x: &RationalFn, precision: usize) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::ZeroPolynomial("sign of zero"));
        }
        let f = ring.field();
        let (num, den) = (x.num(), x.den());
        // num = T^a lead_a (1 + ...), den = T^b (1 + ...)
        let u = reversed_unit(f, num);
        let v = reversed_unit(f, den);
        let v_inv = series_inverse(f, &v, precision)?;
        let one_unit = series_mul(f, &u, &v_inv, precision);
        Ok(InfinityLocalElem {
            valuation: -x.degree(),
            sign: num.leading(),
            one_unit,
        })
    }

    pub fn mul(&self, f: &FqField, other: &Self) -> Self {
        let precision = self.one_unit.len().min(other.one_unit.len());
        InfinityLocalElem {
            valuation: self.valuation + other.valuation,
            sign: f.mul(self.sign, other.sign),
            one_unit: series_mul(f, &self.one_unit, &other.one_unit, precision),
        }
    }
}

/// Coefficients of `a / (lead T^deg)` as a series in `1/T`.
fn reversed_unit(f: &FqField, a: &Poly) -> Vec<FqElem> {
    let inv = f.inv(a.leading()).expect("nonzero leading coefficient");
    a.coeffs().iter().rev().map(|&c| f.mul(c, inv)).collect()
}

fn series_mul(f: &FqField, a: &[FqElem], b: &[FqElem], precision: usize) -> Vec<FqElem> {
    let mut out = alloc::vec![FqElem::ZERO; precision];
    for (i, &x) in a.iter().enumerate().take(precision) {
        for (j, &y) in b.iter().enumerate().take(precision - i) {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

fn series_inverse(f: &FqField, a: &[FqElem], precision: usize) -> Result<Vec<FqElem>> {
    let a0_inv = f.inv(*a.first().ok_or(Error::DivisionByZero)?)?;
    let mut out: Vec<FqElem> = Vec::with_capacity(precision);
    for n in 0..precision {
        let mut acc = if n == 0 { FqElem::ONE } else { FqElem::ZERO };
        for k in 1..=n {
            let ak = a.get(k).copied().unwrap_or(FqElem::ZERO);
            acc = f.sub(acc, f.mul(ak, out[n - k]));
        }
        out.push(f.mul(acc, a0_inv));
    }
    Ok(out)
}

/// `phi_inf(x) = sgn(num) / sgn(den)`; the denominator is kept monic, so
/// this is the leading coefficient of the numerator.
pub fn sign_infty(x: &RationalFn) -> Result<FqElem> {
    if x.is_zero() {
        return Err(Error::ZeroPolynomial("sign of zero"));
    }
    Ok(x.sign())
}

pub fn is_totally_positive(x: &RationalFn) -> Result<bool> {
    Ok(sign_infty(x)?.is_one())
}

/// The tame local extension `k_inf(l-th root of (delta/T))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalKummerShape {
    pub ell: u64,
    pub delta: FqElem,
}

/// `Pi^m xi w` in that extension; `w` is a one-unit and does not affect
/// signs, so it is not stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalKummerElem {
    pub m: i64,
    pub xi: FqElem,
}

impl LocalKummerElem {
    pub fn mul(self, f: &FqField, other: Self) -> Self {
        LocalKummerElem {
            m: self.m + other.m,
            xi: f.mul(self.xi, other.xi),
        }
    }
}

impl LocalKummerShape {
    pub fn new(f: &FqField, ell: u64, delta: FqElem) -> Result<Self> {
        if delta.is_zero() {
            return Err(Error::Precondition("delta must be nonzero".into()));
        }
        if ell < 2 || !(f.order() - 1).is_multiple_of(ell) {
            return Err(Error::Unsupported(alloc::format!(
                "{ell} does not divide q - 1"
            )));
        }
        Ok(LocalKummerShape { ell, delta })
    }

    /// `(-1)^(l-1) delta`.
    pub fn norm_sign_of_pi(&self, f: &FqField) -> FqElem {
        f.mul(f.sign_power(self.ell as i64 - 1), self.delta)
    }

    /// `((-1)^(l-1) delta)^m xi^l`.
    pub fn sign(&self, f: &FqField, x: LocalKummerElem) -> Result<FqElem> {
        if x.xi.is_zero() {
            return Err(Error::ZeroPolynomial("sign of zero"));
        }
        let base = f.pow(self.norm_sign_of_pi(f), x.m)?;
        Ok(f.mul(base, f.pow_u64(x.xi, self.ell)))
    }

    /// The norm to `k_inf` as the product of the `l` conjugates
    /// `(zeta^i Pi)^m xi`, using `Pi^l = delta pi`.
    pub fn norm(&self, f: &FqField, x: LocalKummerElem) -> Result<InfinityLocalElem> {
        let zeta = f.root_of_unity(self.ell)?;
        let mut sign = f.pow(self.delta, x.m)?;
        for i in 0..self.ell {
            let conj = f.pow(f.pow_u64(zeta, i), x.m)?;
            sign = f.mul(sign, f.mul(conj, x.xi));
        }
        Ok(InfinityLocalElem {
            valuation: x.m,
            sign,
            one_unit: alloc::vec![FqElem::ONE],
        })
    }

    /// Smallest `m >= 1` with some `xi` making `Pi^m xi` totally positive.
    pub fn min_positive_degree(&self, f: &FqField) -> u64 {
        (1..=self.ell)
            .find(|&m| {
                f.nonzero_elements().any(|xi| {
                    self.sign(f, LocalKummerElem { m: m as i64, xi })
                        .expect("nonzero")
                        .is_one()
                })
            })
            .expect("m = l always works with xi = delta^-1")
    }

    /// Order of the sign image `phi(K_inf^*)` in `F_q^*`, generated by
    /// `(-1)^(l-1) delta` and the `l`-th powers.
    pub fn image_order(&self, f: &FqField) -> Result<u64> {
        let a = f.multiplicative_order(self.norm_sign_of_pi(f))?;
        let units = f.order() - 1;
        Ok(crate::arith::lcm(
            a,
            units / crate::arith::gcd(self.ell, units),
        ))
    }
}

/// `phi_L = phi_E o N`: the sign of `x` equals the sign of its norm.
pub fn norm_sign_compat(f: &FqField, shape: &LocalKummerShape, x: LocalKummerElem) -> Result<bool> {
    Ok(shape.sign(f, x)? == shape.norm(f, x)?.sign)
}

/// `|Sig|` as the product of the per-place image orders; each order must
/// divide `q - 1`, and the product must divide `(q - 1)^places`.
pub fn sig_size(q: u64, images: &[u64]) -> Result<u128> {
    let unit = q as u128 - 1;
    let mut total: u128 = 1;
    for &o in images {
        if o == 0 || !unit.is_multiple_of(o as u128) {
            return Err(Error::Invariant(alloc::format!(
                "image order {o} does not divide q - 1 = {unit}"
            )));
        }
        total *= o as u128;
    }
    let bound = unit
        .checked_pow(images.len() as u32)
        .ok_or_else(|| Error::Unsupported("too many places".into()))?;
    if bound % total != 0 {
        return Err(Error::Invariant(alloc::format!(
            "|Sig| = {total} does not divide {bound}"
        )));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(q: u64) -> PolyRing {
        PolyRing::new(FqField::new(q, None).unwrap())
    }

    #[test]
    fn signs_of_rational_functions() {
        let r = ring(5);
        let one_over_t = RationalFn::new(&r, &Poly::one(), &Poly::x()).unwrap();
        assert!(sign_infty(&one_over_t).unwrap().is_one());
        let x = RationalFn::from_poly(r.from_ints(&[1, 3]));
        assert_eq!(sign_infty(&x).unwrap(), r.field().from_int(3));
        let y = RationalFn::new(&r, &r.from_ints(&[1, 0, 3]), &r.from_ints(&[2, 1])).unwrap();
        assert_eq!(sign_infty(&y).unwrap(), r.field().from_int(3));
        let e = InfinityLocalElem::expand(&r, &y, 3).unwrap();
        assert_eq!((e.valuation, e.sign), (-1, r.field().from_int(3)));
        assert!(!is_totally_positive(&RationalFn::from_poly(r.from_ints(&[0, 2]))).unwrap());
        let z = RationalFn::new(&r, &r.from_ints(&[1, 2]), &r.from_ints(&[0, 2])).unwrap();
        assert!(is_totally_positive(&z).unwrap());
    }

    #[test]
    fn expansion_multiplies() {
        let r = ring(3);
        let f = r.field();
        let a = RationalFn::new(&r, &r.from_ints(&[1, 2, 1]), &r.from_ints(&[2, 1])).unwrap();
        let b = RationalFn::new(&r, &r.from_ints(&[2, 0, 0, 2]), &r.from_ints(&[1, 1, 1])).unwrap();
        let ea = InfinityLocalElem::expand(&r, &a, 6).unwrap();
        let eb = InfinityLocalElem::expand(&r, &b, 6).unwrap();
        let eab = InfinityLocalElem::expand(&r, &a.mul(&r, &b).unwrap(), 6).unwrap();
        assert_eq!(ea.mul(f, &eb), eab);
    }

    #[test]
    fn local_kummer_signs() {
        let f = FqField::new(5, None).unwrap();
        let two = f.from_int(2);
        let shape = LocalKummerShape::new(&f, 2, two).unwrap();
        let delta_inv = f.inv(two).unwrap();
        let x = LocalKummerElem {
            m: 2,
            xi: delta_inv,
        };
        assert!(shape.sign(&f, x).unwrap().is_one());
        assert_eq!(
            shape
                .sign(
                    &f,
                    LocalKummerElem {
                        m: 1,
                        xi: FqElem::ONE
                    }
                )
                .unwrap(),
            f.from_int(3)
        );
        assert_eq!(shape.min_positive_degree(&f), 2);
        assert_eq!(shape.image_order(&f).unwrap(), 4);
        let f3 = FqField::new(3, None).unwrap();
        let s3 = LocalKummerShape::new(&f3, 2, f3.from_int(2)).unwrap();
        assert_eq!(s3.min_positive_degree(&f3), 1);
        assert!(norm_sign_compat(
            &f,
            &shape,
            LocalKummerElem {
                m: 1,
                xi: FqElem::ONE
            }
        )
        .unwrap());
    }

    #[test]
    fn sig_sizes() {
        assert_eq!(sig_size(5, &[4]).unwrap(), 4);
        assert_eq!(sig_size(5, &[2, 4]).unwrap(), 8);
        assert!(sig_size(5, &[3]).is_err());
    }
}
