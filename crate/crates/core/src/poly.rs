//! Polynomials over `F_q`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{format_monomial, parse_monomial, FqElem, FqField};

/// A polynomial with coefficients stored low degree first and no trailing
/// zeros. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<FqElem>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly {
            coeffs: vec![FqElem::ONE],
        }
    }

    /// `T`.
    pub fn x() -> Self {
        Poly {
            coeffs: vec![FqElem::ZERO, FqElem::ONE],
        }
    }

    pub fn constant(c: FqElem) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: FqElem, k: usize) -> Self {
        let mut coeffs = vec![FqElem::ZERO; k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = 0`, for places where zero is excluded upstream.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }
}

impl Ord for Poly {
    /// Degree first, then coefficients from the top down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arithmetic context for `F_q[T]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: FqField,
}

impl PolyRing {
    pub fn new(field: FqField) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.order()
    }

    pub fn from_ints(&self, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| self.field.from_int(c)).collect())
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::from_coeffs(
            (0..n)
                .map(|i| self.field.add(a.coeff(i), b.coeff(i)))
                .collect(),
        )
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        Poly::from_coeffs(a.coeffs.iter().map(|&c| self.field.neg(c)).collect())
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::from_coeffs(
            (0..n)
                .map(|i| self.field.sub(a.coeff(i), b.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, a: &Poly, c: FqElem) -> Poly {
        Poly::from_coeffs(a.coeffs.iter().map(|&x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FqElem::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.field.add(out[i + j], self.field.mul(x, y));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn product<'a>(&self, polys: impl IntoIterator<Item = &'a Poly>) -> Poly {
        polys
            .into_iter()
            .fold(Poly::one(), |acc, p| self.mul(&acc, p))
    }

    pub fn pow(&self, a: &Poly, e: u64) -> Poly {
        let mut acc = Poly::one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Quotient and remainder.
    pub fn divrem(&self, a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = self.field.inv(b.leading())?;
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(), a.clone()));
        }
        let mut quot = vec![FqElem::ZERO; rem.len() - db];
        for k in (db..rem.len()).rev() {
            let c = rem[k];
            if c.is_zero() {
                continue;
            }
            let f = self.field.mul(c, inv_lead);
            quot[k - db] = f;
            for (i, &bc) in b.coeffs.iter().enumerate() {
                let idx = k - db + i;
                rem[idx] = self.field.sub(rem[idx], self.field.mul(f, bc));
            }
        }
        rem.truncate(db);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        Ok(self.divrem(a, b)?.1)
    }

    /// Exact division; errors when `b` does not divide `a`.
    pub fn div_exact(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(a, b)?;
        if !r.is_zero() {
            return Err(Error::NotAFactor(format!(
                "{} does not divide {}",
                self.format(b),
                self.format(a)
            )));
        }
        Ok(q)
    }

    pub fn divides(&self, b: &Poly, a: &Poly) -> bool {
        self.rem(a, b).is_ok_and(|r| r.is_zero())
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self, a: &Poly) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        let inv = self
            .field
            .inv(a.leading())
            .expect("nonzero leading coefficient");
        self.scale(a, inv)
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// `(g, s, t)` with `g = s a + t b` monic.
    pub fn egcd(&self, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1).expect("nonzero divisor");
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
            t0 = core::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = self.field.inv(r0.leading()).expect("nonzero");
        (
            self.scale(&r0, inv),
            self.scale(&s0, inv),
            self.scale(&t0, inv),
        )
    }

    pub fn mulmod(&self, a: &Poly, b: &Poly, m: &Poly) -> Poly {
        self.rem(&self.mul(a, b), m).expect("nonzero modulus")
    }

    /// Inverse of `a` modulo `m`.
    pub fn inv_mod(&self, a: &Poly, m: &Poly) -> Result<Poly> {
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = self.egcd(&self.rem(a, m)?, m);
        if !g.is_one() {
            return Err(Error::NotCoprime);
        }
        self.rem(&s, m)
    }

    pub fn pow_mod(&self, a: &Poly, e: u64, m: &Poly) -> Poly {
        let mut acc = self.rem(&Poly::one(), m).expect("nonzero modulus");
        let mut base = self.rem(a, m).expect("nonzero modulus");
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(&acc, &base, m);
            }
            e >>= 1;
            if e > 0 {
                base = self.mulmod(&base, &base, m);
            }
        }
        acc
    }

    pub fn pow_mod_big(&self, a: &Poly, e: &BigUint, m: &Poly) -> Poly {
        let mut acc = self.rem(&Poly::one(), m).expect("nonzero modulus");
        let base = self.rem(a, m).expect("nonzero modulus");
        for i in (0..e.bits()).rev() {
            acc = self.mulmod(&acc, &acc, m);
            if e.bit(i) {
                acc = self.mulmod(&acc, &base, m);
            }
        }
        acc
    }

    /// `q^k` as a big integer.
    pub fn q_pow(&self, k: usize) -> BigUint {
        let mut acc = BigUint::one();
        for _ in 0..k {
            acc *= self.q();
        }
        acc
    }

    pub fn derivative(&self, a: &Poly) -> Poly {
        Poly::from_coeffs(
            a.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.field.mul(c, self.field.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, a: &Poly, x: FqElem) -> FqElem {
        a.coeffs.iter().rev().fold(FqElem::ZERO, |acc, &c| {
            self.field.add(self.field.mul(acc, x), c)
        })
    }

    /// `a(b(T))`.
    pub fn compose(&self, a: &Poly, b: &Poly) -> Poly {
        a.coeffs.iter().rev().fold(Poly::zero(), |acc, &c| {
            self.add(&self.mul(&acc, b), &Poly::constant(c))
        })
    }

    /// Every monic polynomial of degree `d`, in increasing order.
    pub fn monic_of_degree(&self, d: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = self.q();
        let total = q.checked_pow(d as u32).unwrap_or(u64::MAX);
        (0..total).map(move |mut n| {
            let mut coeffs = Vec::with_capacity(d + 1);
            for _ in 0..d {
                coeffs.push(self.field.from_raw((n % q) as u32).expect("in range"));
                n /= q;
            }
            coeffs.push(FqElem::ONE);
            Poly { coeffs }
        })
    }

    /// Monic irreducibles of degree `d`, in increasing order.
    pub fn monic_irreducibles_of_degree(&self, d: usize) -> impl Iterator<Item = Poly> + '_ {
        self.monic_of_degree(d)
            .filter(move |p| self.is_irreducible(p))
    }

    /// Monic irreducibles of degree `1..=max_deg`, in increasing order.
    pub fn irreducibles_up_to(&self, max_deg: usize) -> impl Iterator<Item = Poly> + '_ {
        (1..=max_deg).flat_map(move |d| self.monic_irreducibles_of_degree(d))
    }

    /// Parses `c*T^k + ...`. Coefficients are field literals; over a
    /// non-prime field a coefficient with several terms is parenthesized,
    /// as in `(g+1)*T^2 + g`.
    pub fn parse(&self, text: &str) -> Result<Poly> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut acc = Poly::zero();
        for term in split_top_level(&t)? {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, term),
            };
            let mono = self.parse_term(body)?;
            acc = if sign {
                self.sub(&acc, &mono)
            } else {
                self.add(&acc, &mono)
            };
        }
        Ok(acc)
    }

    fn parse_term(&self, term: &str) -> Result<Poly> {
        let bad = || Error::Parse(format!("bad polynomial term '{term}'"));
        if term.is_empty() {
            return Err(bad());
        }
        if let Some(rest) = term.strip_prefix('(') {
            let close = rest.find(')').ok_or_else(bad)?;
            let coef = self.field.parse_elem(&rest[..close])?;
            let tail = &rest[close + 1..];
            let power = if tail.is_empty() {
                0
            } else {
                let tail = tail.strip_prefix('*').ok_or_else(bad)?;
                let (c, k) = parse_monomial(tail, 'T').ok_or_else(bad)?;
                if c != 1 || !tail.contains('T') {
                    return Err(bad());
                }
                k
            };
            return Ok(Poly::monomial(coef, power as usize));
        }
        if self.field.is_prime_field() {
            let (c, k) = parse_monomial(term, 'T').ok_or_else(bad)?;
            let c = (c % self.field.characteristic()) as i64;
            return Ok(Poly::monomial(self.field.from_int(c), k as usize));
        }
        // non-prime field: single-term coefficient such as `g`, `2*g^2`, `3`
        let (coef_text, power) = match term.find('T') {
            None => (term, 0),
            Some(pos) => {
                let (_, k) = parse_monomial(&term[pos..], 'T').ok_or_else(bad)?;
                let head = &term[..pos];
                let coef = if head.is_empty() {
                    "1"
                } else {
                    head.strip_suffix('*').ok_or_else(bad)?
                };
                (coef, k)
            }
        };
        let coef = self.field.parse_elem(coef_text)?;
        Ok(Poly::monomial(coef, power as usize))
    }

    pub fn format(&self, a: &Poly) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (k, &c) in a.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if self.field.is_prime_field() {
                terms.push(format_monomial(c.raw() as u64, k as u64, "T"));
            } else {
                let lit = self.field.format_elem(c);
                let lit = if self.field.is_compound(c) {
                    format!("({lit})")
                } else {
                    lit
                };
                terms.push(match (c.is_one(), k) {
                    (_, 0) => lit,
                    (true, 1) => "T".into(),
                    (true, k) => format!("T^{k}"),
                    (false, 1) => format!("{lit}*T"),
                    (false, k) => format!("{lit}*T^{k}"),
                });
            }
        }
        terms.join("+")
    }

    /// Leading coefficient.
    pub fn sgn(&self, a: &Poly) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::ZeroPolynomial("sgn"));
        }
        Ok(a.leading())
    }

    /// `D* = (-1)^deg D * D`.
    pub fn star_twist(&self, d: &Poly) -> Result<Poly> {
        if d.is_zero() {
            return Err(Error::ZeroPolynomial("star twist"));
        }
        Ok(self.scale(d, self.field.sign_power(d.deg() as i64)))
    }

    /// `q^deg`; the number of residues modulo `a`.
    pub fn norm(&self, a: &Poly) -> BigUint {
        if a.is_zero() {
            return BigUint::zero();
        }
        self.q_pow(a.deg())
    }
}

/// Splits on `+`/`-` outside parentheses, keeping a leading `-` on its term.
fn split_top_level(t: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    for (i, ch) in t.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse("unbalanced parentheses".into()));
                }
            }
            '+' | '-' if depth == 0 && i > start => {
                out.push(&t[start..i]);
                start = if ch == '+' { i + 1 } else { i };
            }
            '+' if depth == 0 => start = i + 1,
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse("unbalanced parentheses".into()));
    }
    out.push(&t[start..]);
    if out.iter().any(|s| s.is_empty() || *s == "-") {
        return Err(Error::Parse(format!("bad polynomial '{t}'")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(q: u64) -> PolyRing {
        PolyRing::new(FqField::new(q, None).unwrap())
    }

    #[test]
    fn parse_and_format() {
        let r = ring(5);
        let p = r.parse("T^2 + 3*T + 4").unwrap();
        assert_eq!(p, r.from_ints(&[4, 3, 1]));
        assert_eq!(r.format(&p), "T^2+3*T+4");
        assert_eq!(r.parse("T - 1").unwrap(), r.from_ints(&[4, 1]));
        assert_eq!(r.parse("-T").unwrap(), r.from_ints(&[0, 4]));
        assert!(r.parse("T^").is_err());
        assert!(r.parse("").is_err());
        let r9 = ring(9);
        let p = r9.parse("(g+1)*T^2 + g").unwrap();
        assert_eq!(r9.parse(&r9.format(&p)).unwrap(), p);
        assert_eq!(r9.format(&p), "(g+1)*T^2+g");
    }

    #[test]
    fn sign_and_star() {
        let r = ring(5);
        assert_eq!(r.sgn(&r.from_ints(&[1, 3])).unwrap(), r.field().from_int(3));
        assert!(r.sgn(&Poly::zero()).is_err());
        assert_eq!(r.star_twist(&Poly::x()).unwrap(), r.from_ints(&[0, 4]));
        let d = r.from_ints(&[0, 1, 1]);
        assert_eq!(r.star_twist(&d).unwrap(), d);
        let r2 = ring(2);
        assert_eq!(r2.star_twist(&Poly::x()).unwrap(), Poly::x());
    }

    #[test]
    fn ordering_is_degree_then_top_coefficients() {
        let r = ring(3);
        let mut v: Vec<Poly> = (0..3)
            .flat_map(|d| r.monic_of_degree(d).collect::<Vec<_>>())
            .collect();
        let sorted = {
            let mut s = v.clone();
            s.sort();
            s
        };
        assert_eq!(v, sorted);
        v.dedup();
        assert_eq!(v.len(), 1 + 3 + 9);
        assert!(r.from_ints(&[2, 1]) < r.from_ints(&[0, 2]));
    }

    #[test]
    fn division_and_gcd() {
        let r = ring(7);
        let a = r.from_ints(&[1, 2, 3, 4, 5]);
        let b = r.from_ints(&[3, 0, 1]);
        let (q, rem) = r.divrem(&a, &b).unwrap();
        assert_eq!(r.add(&r.mul(&q, &b), &rem), a);
        assert!(rem.deg() < 2);
        let (g, s, t) = r.egcd(&a, &b);
        assert_eq!(r.add(&r.mul(&s, &a), &r.mul(&t, &b)), g);
        assert_eq!(g, r.gcd(&a, &b));
        assert!(r.divrem(&a, &Poly::zero()).is_err());
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // number of monic irreducibles of degree d is (1/d) sum mu(d/k) q^k
        fn mobius(n: u64) -> i64 {
            let f = crate::arith::factor_u64(n);
            if f.iter().any(|&(_, e)| e > 1) {
                0
            } else if f.len().is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
        for q in [2u64, 3, 4, 5] {
            let r = ring(q);
            for d in 1..=4usize {
                let expected: i64 = (1..=d as u64)
                    .filter(|k| (d as u64).is_multiple_of(*k))
                    .map(|k| mobius(d as u64 / k) * (q as i64).pow(k as u32))
                    .sum::<i64>()
                    / d as i64;
                assert_eq!(
                    r.monic_irreducibles_of_degree(d).count() as i64,
                    expected,
                    "q={q} d={d}"
                );
            }
        }
    }
}
