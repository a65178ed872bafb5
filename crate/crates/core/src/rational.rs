//! Rational functions in `F_q(T)`.

use alloc::format;
use alloc::string::String;

use crate::error::{Error, Result};
use crate::field::FqElem;
use crate::poly::{Poly, PolyRing};

/// `num / den` in lowest terms with `den` monic and `num` nonzero unless the
/// value is zero (then `den = 1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    pub fn from_poly(p: Poly) -> Self {
        RationalFn {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn new(ring: &PolyRing, num: &Poly, den: &Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(Poly::zero()));
        }
        let g = ring.gcd(num, den);
        let num = ring.div_exact(num, &g)?;
        let den = ring.div_exact(den, &g)?;
        let lead = ring.field().inv(den.leading())?;
        Ok(RationalFn {
            num: ring.scale(&num, lead),
            den: ring.scale(&den, lead),
        })
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The leading coefficient of the numerator.
    pub fn sign(&self) -> FqElem {
        self.num.leading()
    }

    /// `deg num - deg den`; minus the valuation at infinity.
    pub fn degree(&self) -> i64 {
        self.num.deg() as i64 - self.den.deg() as i64
    }

    pub fn mul(&self, ring: &PolyRing, other: &Self) -> Result<Self> {
        Self::new(
            ring,
            &ring.mul(&self.num, &other.num),
            &ring.mul(&self.den, &other.den),
        )
    }

    pub fn inv(&self, ring: &PolyRing) -> Result<Self> {
        Self::new(ring, &self.den, &self.num)
    }

    pub fn parse(ring: &PolyRing, text: &str) -> Result<Self> {
        match split_fraction(text)? {
            (num, None) => Ok(Self::from_poly(ring.parse(num)?)),
            (num, Some(den)) => Self::new(ring, &ring.parse(num)?, &ring.parse(den)?),
        }
    }

    pub fn format(&self, ring: &PolyRing) -> String {
        if self.den.is_one() {
            ring.format(&self.num)
        } else {
            let wrap = |p: &Poly| {
                let s = ring.format(p);
                if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                    format!("({s})")
                } else {
                    s
                }
            };
            format!("{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

/// Splits `a/b` on a top-level slash, stripping one pair of outer
/// parentheses from each side when they enclose it fully.
fn split_fraction(text: &str) -> Result<(&str, Option<&str>)> {
    let t = text.trim();
    let mut depth = 0i32;
    let mut slash = None;
    for (i, ch) in t.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => {
                if slash.is_some() {
                    return Err(Error::Parse(format!("more than one '/' in '{t}'")));
                }
                slash = Some(i);
            }
            _ => {}
        }
    }
    Ok(match slash {
        None => (strip_parens(t), None),
        Some(i) => (strip_parens(&t[..i]), Some(strip_parens(&t[i + 1..]))),
    })
}

fn strip_parens(t: &str) -> &str {
    let t = t.trim();
    if let Some(inner) = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        let mut depth = 0i32;
        for ch in inner.chars() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth < 0 {
                        return t;
                    }
                }
                _ => {}
            }
        }
        if depth == 0 {
            return inner.trim();
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FqField;

    #[test]
    fn lowest_terms() {
        let r = PolyRing::new(FqField::new(5, None).unwrap());
        let f = RationalFn::parse(&r, "(T^2+T)/(2*T)").unwrap();
        assert_eq!(f.num(), &r.from_ints(&[3, 3]));
        assert_eq!(f.den(), &Poly::one());
        let g = RationalFn::parse(&r, "(T+1)/T").unwrap();
        assert_eq!(g.format(&r), "(T+1)/T");
        assert_eq!(RationalFn::parse(&r, &g.format(&r)).unwrap(), g);
        assert!(RationalFn::parse(&r, "T/0").is_err());
    }
}
