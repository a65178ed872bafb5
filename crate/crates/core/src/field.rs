//! The constant field `F_q`, `q = p^s`.
//!
//! Elements are packed as base-`p` integers: the element
//! `c_0 + c_1 g + ... + c_{s-1} g^{s-1}` (with `g` a root of the field
//! modulus) is stored as `c_0 + c_1 p + ... + c_{s-1} p^{s-1}`. For `s = 1`
//! this is the ordinary residue. Non-prime fields carry exp/log tables.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{factor_u64, is_prime, prime_power};
use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};

/// Largest supported field size.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqElem(u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    /// The packed base-`p` representation.
    pub fn raw(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1
    }
}

#[derive(Debug)]
struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct FqField {
    p: u32,
    s: u32,
    q: u32,
    /// Monic modulus over `F_p`, low degree first. `[0, 1]` for prime fields.
    modulus: Vec<u32>,
    tables: Option<Arc<LogTables>>,
    generator: FqElem,
    /// Distinct primes dividing `q - 1`.
    unit_primes: Vec<u64>,
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.s == other.s && self.modulus == other.modulus
    }
}

impl Eq for FqField {}

impl FqField {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Unsupported(format!("{p} is not prime")));
        }
        if p > MAX_FIELD_ORDER {
            return Err(Error::Unsupported(format!(
                "field order {p} exceeds {MAX_FIELD_ORDER}"
            )));
        }
        let p32 = p as u32;
        let mut field = FqField {
            p: p32,
            s: 1,
            q: p32,
            modulus: vec![0, 1],
            tables: None,
            generator: FqElem::ONE,
            unit_primes: factor_u64(p - 1).into_iter().map(|(r, _)| r).collect(),
        };
        field.generator = field.search_primitive_root();
        Ok(field)
    }

    /// `F_q` for a prime power `q`. For `q = p^s` with `s > 1` the modulus is
    /// either the given monic irreducible polynomial of degree `s` over `F_p`
    /// (coefficients low degree first) or, when `None`, the smallest monic
    /// irreducible of degree `s` in the polynomial ordering.
    pub fn new(q: u64, modulus: Option<&[u32]>) -> Result<Self> {
        let (p, s) = prime_power(q)
            .ok_or_else(|| Error::Unsupported(format!("{q} is not a prime power")))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::Unsupported(format!(
                "field order {q} exceeds {MAX_FIELD_ORDER}"
            )));
        }
        if s == 1 {
            if let Some(m) = modulus {
                if m != [0, 1] {
                    return Err(Error::Unsupported("prime fields take no modulus".into()));
                }
            }
            return Self::prime(p);
        }
        let base = PolyRing::new(Self::prime(p)?);
        let modulus_poly = match modulus {
            Some(m) => {
                if m.len() != s as usize + 1
                    || m[s as usize] != 1
                    || m.iter().any(|&c| c as u64 >= p)
                {
                    return Err(Error::Unsupported(format!(
                        "field modulus must be monic of degree {s} with coefficients below {p}"
                    )));
                }
                let poly = Poly::from_coeffs(m.iter().map(|&c| FqElem(c)).collect());
                if !base.is_irreducible(&poly) {
                    return Err(Error::Unsupported("field modulus is reducible".into()));
                }
                poly
            }
            None => base
                .monic_irreducibles_of_degree(s as usize)
                .next()
                .expect("irreducible polynomials exist in every degree"),
        };
        let modulus: Vec<u32> = modulus_poly.coeffs().iter().map(|c| c.0).collect();
        let mut field = FqField {
            p: p as u32,
            s,
            q: q as u32,
            modulus,
            tables: None,
            generator: FqElem::ONE,
            unit_primes: factor_u64(q - 1).into_iter().map(|(r, _)| r).collect(),
        };
        field.generator = field.search_primitive_root();
        let g = field.generator;
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut acc = FqElem::ONE;
        for i in 0..(q - 1) as u32 {
            exp.push(acc.0);
            log[acc.0 as usize] = i;
            acc = field.mul_slow(acc, g);
        }
        field.tables = Some(Arc::new(LogTables { exp, log }));
        Ok(field)
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.s
    }

    pub fn order(&self) -> u64 {
        self.q as u64
    }

    pub fn is_prime_field(&self) -> bool {
        self.s == 1
    }

    /// Modulus coefficients over `F_p`, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem::ZERO
    }

    pub fn one(&self) -> FqElem {
        FqElem::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.p as i64) as u32)
    }

    /// Element from base-`p` digits (low first); digits are reduced mod `p`.
    pub fn from_digits(&self, digits: &[u32]) -> FqElem {
        let mut acc = 0u32;
        for &d in digits.iter().take(self.s as usize).rev() {
            acc = acc * self.p + d % self.p;
        }
        FqElem(acc)
    }

    pub fn digits(&self, a: FqElem) -> Vec<u32> {
        let mut v = a.0;
        let mut out = Vec::with_capacity(self.s as usize);
        for _ in 0..self.s {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    /// Element with the given packed representation, if it is in range.
    pub fn from_raw(&self, raw: u32) -> Option<FqElem> {
        (raw < self.q).then_some(FqElem(raw))
    }

    /// All elements in representation order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.q).map(FqElem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (1..self.q).map(FqElem)
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.s == 1 {
            let r = a.0 + b.0;
            return FqElem(if r >= self.p { r - self.p } else { r });
        }
        if self.p == 2 {
            return FqElem(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut acc = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.s {
            let d = (x % self.p + y % self.p) % self.p;
            acc += d * scale;
            scale *= self.p;
            x /= self.p;
            y /= self.p;
        }
        FqElem(acc)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        if self.s == 1 {
            return FqElem(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        if self.p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut acc = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.s {
            let d = (self.p - x % self.p) % self.p;
            acc += d * scale;
            scale *= self.p;
            x /= self.p;
        }
        FqElem(acc)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.0 == 0 || b.0 == 0 {
            return FqElem::ZERO;
        }
        match &self.tables {
            None => FqElem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32),
            Some(t) => {
                let e =
                    (t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64) % (self.q as u64 - 1);
                FqElem(t.exp[e as usize])
            }
        }
    }

    /// Multiplication through the polynomial representation; used before
    /// the tables exist.
    fn mul_slow(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.s == 1 {
            return FqElem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let p = self.p as u64;
        let s = self.s as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * s - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for k in (s..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &m) in self.modulus.iter().take(s).enumerate() {
                let idx = k - s + i;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        let digits: Vec<u32> = prod.iter().take(s).map(|&d| d as u32).collect();
        self.from_digits(&digits)
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow_u64(a, self.q as u64 - 2))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow_u64(&self, a: FqElem, mut e: u64) -> FqElem {
        if let (Some(t), false) = (&self.tables, a.is_zero()) {
            let l = t.log[a.0 as usize] as u128 * e as u128 % (self.q as u128 - 1);
            return FqElem(t.exp[l as usize]);
        }
        let mut base = a;
        let mut acc = FqElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^e` for any integer `e`; negative exponents need `a != 0`.
    pub fn pow(&self, a: FqElem, e: i64) -> Result<FqElem> {
        if e >= 0 {
            return Ok(self.pow_u64(a, e as u64));
        }
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let r = e.rem_euclid(self.q as i64 - 1) as u64;
        Ok(self.pow_u64(a, r))
    }

    /// `(-1)^e`.
    pub fn sign_power(&self, e: i64) -> FqElem {
        if e.rem_euclid(2) == 0 {
            FqElem::ONE
        } else {
            self.neg(FqElem::ONE)
        }
    }

    pub fn multiplicative_order(&self, a: FqElem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut order = self.q as u64 - 1;
        for &r in &self.unit_primes {
            while order.is_multiple_of(r) && self.pow_u64(a, order / r).is_one() {
                order /= r;
            }
        }
        Ok(order)
    }

    fn search_primitive_root(&self) -> FqElem {
        let n = self.q as u64 - 1;
        (1..self.q)
            .map(FqElem)
            .find(|&g| {
                self.unit_primes
                    .iter()
                    .all(|&r| !self.pow_u64(g, n / r).is_one())
            })
            .expect("the multiplicative group of a finite field is cyclic")
    }

    /// The canonical generator of `F_q^*`: the smallest element (in packed
    /// order) of multiplicative order `q - 1`.
    pub fn primitive_root(&self) -> FqElem {
        self.generator
    }

    fn check_divides_units(&self, l: u64) -> Result<()> {
        if l == 0 || !(self.q as u64 - 1).is_multiple_of(l) {
            return Err(Error::Unsupported(format!(
                "{l} does not divide q - 1 = {}",
                self.q - 1
            )));
        }
        Ok(())
    }

    /// The canonical generator `zeta_l = beta^((q-1)/l)` of `mu_l`.
    pub fn root_of_unity(&self, l: u64) -> Result<FqElem> {
        self.check_divides_units(l)?;
        Ok(self.pow_u64(self.generator, (self.q as u64 - 1) / l))
    }

    /// The index `j` with `z = zeta_l^j`.
    pub fn mu_index(&self, z: FqElem, l: u64) -> Result<u64> {
        let zeta = self.root_of_unity(l)?;
        let mut acc = FqElem::ONE;
        for j in 0..l {
            if acc == z {
                return Ok(j);
            }
            acc = self.mul(acc, zeta);
        }
        Err(Error::NotRootOfUnity(l))
    }

    /// The class `t` of `x` in `F_q^* / (F_q^*)^l`, i.e. `x = beta^t * y^l`.
    pub fn lth_power_class(&self, x: FqElem, l: u64) -> Result<u64> {
        self.check_divides_units(l)?;
        if x.is_zero() {
            return Err(Error::Precondition("power class of zero".into()));
        }
        self.mu_index(self.pow_u64(x, (self.q as u64 - 1) / l), l)
    }

    pub fn is_lth_power(&self, x: FqElem, l: u64) -> Result<bool> {
        Ok(self.lth_power_class(x, l)? == 0)
    }

    /// Order of the class of `x` in `F_q^* / (F_q^*)^l`; this is the degree
    /// `[F_q(x^(1/l)) : F_q]`.
    pub fn power_class_order(&self, x: FqElem, l: u64) -> Result<u64> {
        let t = self.lth_power_class(x, l)?;
        Ok(l / crate::arith::gcd(t, l))
    }

    /// Parses a field literal: a decimal residue for prime fields, a
    /// polynomial in `g` (e.g. `g^3+2`) otherwise.
    pub fn parse_elem(&self, text: &str) -> Result<FqElem> {
        let t = text.trim();
        if t.is_empty() {
            return Err(Error::Parse("empty field literal".into()));
        }
        if self.s == 1 {
            let n: u64 = t
                .parse()
                .map_err(|_| Error::Parse(format!("bad field literal '{t}'")))?;
            if n >= self.p as u64 {
                return Err(Error::Parse(format!(
                    "literal {n} out of range for F_{}",
                    self.p
                )));
            }
            return Ok(FqElem(n as u32));
        }
        let mut digits = vec![0u32; self.s as usize];
        for term in t.split('+') {
            let term = term.trim();
            let (coef, power) = parse_monomial(term, 'g')
                .ok_or_else(|| Error::Parse(format!("bad field term '{term}'")))?;
            if power >= self.s as u64 {
                return Err(Error::Parse(format!(
                    "power g^{power} exceeds field degree"
                )));
            }
            digits[power as usize] =
                (digits[power as usize] as u64 + coef % self.p as u64) as u32 % self.p;
        }
        Ok(self.from_digits(&digits))
    }

    pub fn format_elem(&self, a: FqElem) -> String {
        if self.s == 1 {
            return a.0.to_string();
        }
        let digits = self.digits(a);
        let mut terms = Vec::new();
        for (k, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            terms.push(format_monomial(c as u64, k as u64, "g"));
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    /// True when a formatted literal needs parentheses as a coefficient.
    pub(crate) fn is_compound(&self, a: FqElem) -> bool {
        self.digits(a).iter().filter(|&&d| d != 0).count() > 1
    }

    pub fn display(&self, a: FqElem) -> impl fmt::Display + '_ {
        DisplayElem {
            field: self,
            elem: a,
        }
    }
}

struct DisplayElem<'a> {
    field: &'a FqField,
    elem: FqElem,
}

impl fmt::Display for DisplayElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_elem(self.elem))
    }
}

/// `c*x^k` with `c` omitted when 1 and `^k` omitted when 1; a constant is
/// its plain literal.
pub(crate) fn format_monomial(c: u64, k: u64, var: &str) -> String {
    match (c, k) {
        (c, 0) => c.to_string(),
        (1, 1) => var.to_string(),
        (1, k) => format!("{var}^{k}"),
        (c, 1) => format!("{c}*{var}"),
        (c, k) => format!("{c}*{var}^{k}"),
    }
}

/// Parses `c`, `var`, `var^k`, `c*var`, `c*var^k` with integer `c`.
pub(crate) fn parse_monomial(term: &str, var: char) -> Option<(u64, u64)> {
    let term = term.trim();
    if term.is_empty() {
        return None;
    }
    let (coef_part, var_part) = match term.find(var) {
        None => return term.parse::<u64>().ok().map(|c| (c, 0)),
        Some(pos) => (&term[..pos], &term[pos..]),
    };
    let coef = if coef_part.is_empty() {
        1
    } else {
        coef_part.strip_suffix('*')?.trim().parse::<u64>().ok()?
    };
    let rest = var_part[var.len_utf8()..].trim();
    let power = if rest.is_empty() {
        1
    } else {
        rest.strip_prefix('^')?.trim().parse::<u64>().ok()?
    };
    Some((coef, power))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> FqField {
        FqField::new(q, None).unwrap()
    }

    #[test]
    fn prime_field_arithmetic() {
        let f5 = f(5);
        assert_eq!(f5.mul(FqElem(2), FqElem(3)), FqElem(1));
        assert_eq!(f5.inv(FqElem(4)).unwrap(), FqElem(4));
        assert_eq!(f5.inv(FqElem::ZERO), Err(Error::DivisionByZero));
        assert_eq!(f5.pow(FqElem(2), -1).unwrap(), FqElem(3));
        assert_eq!(f5.pow(FqElem::ZERO, -2), Err(Error::DivisionByZero));
    }

    #[test]
    fn f9_with_explicit_modulus() {
        // F_9 = F_3[x]/(x^2+1)
        let f9 = FqField::new(9, Some(&[1, 0, 1])).unwrap();
        let x = f9.parse_elem("g").unwrap();
        assert_eq!(f9.mul(x, x), f9.from_int(2));
        assert_eq!(f9.format_elem(f9.add(x, f9.from_int(2))), "g+2");
        assert!(
            FqField::new(9, Some(&[2, 0, 1])).is_err(),
            "x^2+2 = (x+1)(x+2) over F_3"
        );
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(f(2).primitive_root(), FqElem(1));
        assert_eq!(f(3).primitive_root(), FqElem(2));
        assert_eq!(f(5).primitive_root(), FqElem(2));
        // brute-force order check on F_5
        let f5 = f(5);
        let orders: Vec<u64> = (1..5)
            .map(|x| f5.multiplicative_order(FqElem(x)).unwrap())
            .collect();
        assert_eq!(orders, vec![1, 4, 4, 2]);
    }

    #[test]
    fn power_classes_and_mu() {
        let f5 = f(5);
        assert_eq!(f5.lth_power_class(FqElem(4), 2).unwrap(), 0);
        assert_eq!(f5.lth_power_class(FqElem(2), 2).unwrap(), 1);
        assert_eq!(f5.lth_power_class(FqElem(1), 4).unwrap(), 0);
        assert!(matches!(
            f5.lth_power_class(FqElem(2), 3),
            Err(Error::Unsupported(_))
        ));
        assert_eq!(f5.mu_index(FqElem(1), 4).unwrap(), 0);
        assert_eq!(f5.mu_index(FqElem(4), 2).unwrap(), 1);
        assert_eq!(f5.mu_index(FqElem(2), 4).unwrap(), 1);
        assert_eq!(f5.mu_index(FqElem(2), 2), Err(Error::NotRootOfUnity(2)));
    }

    #[test]
    fn exhaustive_group_laws() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49] {
            let fq = f(q);
            for x in fq.nonzero_elements() {
                assert!(fq.pow_u64(x, q - 1).is_one(), "q={q}");
            }
            for l in crate::arith::factor_u64(q - 1)
                .iter()
                .map(|&(r, _)| r)
                .chain([q - 1])
            {
                if q == 2 {
                    continue;
                }
                // class map is a homomorphism with kernel the l-th powers
                let powers: alloc::collections::BTreeSet<_> =
                    fq.nonzero_elements().map(|y| fq.pow_u64(y, l)).collect();
                for x in fq.nonzero_elements() {
                    let cx = fq.lth_power_class(x, l).unwrap();
                    assert_eq!(cx == 0, powers.contains(&x));
                    for y in fq.nonzero_elements().step_by(3) {
                        let cy = fq.lth_power_class(y, l).unwrap();
                        assert_eq!(fq.lth_power_class(fq.mul(x, y), l).unwrap(), (cx + cy) % l);
                    }
                }
                let zeta = fq.root_of_unity(l).unwrap();
                for a in 0..l {
                    for b in 0..l {
                        let z = fq.mul(fq.pow_u64(zeta, a), fq.pow_u64(zeta, b));
                        assert_eq!(fq.mu_index(z, l).unwrap(), (a + b) % l);
                    }
                }
            }
        }
    }

    #[test]
    fn field_axioms_small_extension() {
        let f8 = f(8);
        for a in f8.elements() {
            for b in f8.elements() {
                assert_eq!(f8.mul(a, b), f8.mul_slow(a, b));
                for c in f8.elements() {
                    let lhs = f8.mul(a, f8.add(b, c));
                    let rhs = f8.add(f8.mul(a, b), f8.mul(a, c));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn literals_roundtrip() {
        let f27 = f(27);
        for a in f27.elements() {
            assert_eq!(f27.parse_elem(&f27.format_elem(a)).unwrap(), a);
        }
        assert!(f(5).parse_elem("7").is_err());
    }
}
