//! Kummer radicals `k(m-th root of A)` with `m | q - 1`.
//!
//! The field `k(m-th root of A)` is located inside `Lambda_N k_m` through its
//! Frobenius fingerprint: `Frob_Q` moves the radical by `zeta_m^s` with `s`
//! the power residue symbol `(A/Q)_m`. Sampling irreducibles until their
//! Frobenius classes generate `G_N x Z/m` and solving for the character
//! gives the field exactly; twenty further irreducibles re-check the answer.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use crate::abelian::{extended_ambient, AbelianFieldDesc};
use crate::arith::{egcd, gcd, lcm, mod_inverse, prime_or_prime_square};
use crate::chars::DirichletCharacter;
use crate::cyclo::CyclotomicFieldDesc;
use crate::error::{Error, Result};
use crate::factor::FactoredPoly;
use crate::field::FqElem;
use crate::group::{solve_mod, DualElem, GroupElem, Qz, Subgroup};
use crate::poly::{Poly, PolyRing};
use crate::rational::RationalFn;
use crate::units::ResidueUnitGroup;

/// Fresh irreducibles checked after interpolation.
pub const VERIFY_SAMPLES: usize = 20;

/// Sampling gives up beyond `deg N` plus this many degrees.
const EXTRA_SAMPLE_DEGREES: usize = 12;

fn check_exponent(ring: &PolyRing, m: u64) -> Result<()> {
    if m == 0 || !(ring.q() - 1).is_multiple_of(m) {
        return Err(Error::Unsupported(format!(
            "{m} does not divide q - 1 = {}",
            ring.q() - 1
        )));
    }
    Ok(())
}

fn symbol_of_poly(ring: &PolyRing, a: &Poly, q: &Poly, e: &BigUint, m: u64) -> Result<u64> {
    let r = ring.rem(a, q)?;
    if r.is_zero() {
        return Err(Error::NotCoprime);
    }
    let z = ring.pow_mod_big(&r, e, q);
    if !z.is_constant() {
        return Err(Error::Invariant(format!(
            "power residue of {} is not constant",
            ring.format(a)
        )));
    }
    ring.field().mu_index(z.coeff(0), m)
}

/// `(A/Q)_m`: the index `s` with `A^((q^d - 1)/m) = zeta_m^s (mod Q)`.
pub fn residue_symbol(ring: &PolyRing, a: &RationalFn, q: &Poly, m: u64) -> Result<u64> {
    check_exponent(ring, m)?;
    if !q.is_monic() || !ring.is_irreducible(q) {
        return Err(Error::Precondition(format!(
            "{} is not a monic irreducible",
            ring.format(q)
        )));
    }
    if a.is_zero() {
        return Err(Error::NotCoprime);
    }
    let e = (ring.norm(q) - BigUint::one()) / BigUint::from(m);
    let s = symbol_of_poly(ring, a.num(), q, &e, m)?;
    let t = symbol_of_poly(ring, a.den(), q, &e, m)?;
    Ok((s + m - t) % m)
}

/// Product of the distinct monic primes dividing the numerators and
/// denominators.
pub fn radical_modulus<'a>(
    ring: &PolyRing,
    radicands: impl IntoIterator<Item = &'a RationalFn>,
) -> Result<Poly> {
    let mut primes: Vec<Poly> = Vec::new();
    for a in radicands {
        if a.is_zero() {
            return Err(Error::ZeroPolynomial("radicand"));
        }
        for part in [a.num(), a.den()] {
            for p in ring.factor(part)?.primes() {
                if !primes.contains(p) {
                    primes.push(p.clone());
                }
            }
        }
    }
    Ok(ring.product(&primes))
}

/// Character (in `G_N x Z/m_amb` coordinates) of `k(n-th root of A)`.
/// `N` must be divisible by every prime of `A`, and `n | m_amb`.
pub fn kummer_dual(
    units: &Arc<ResidueUnitGroup>,
    m_amb: u64,
    a: &RationalFn,
    n: u64,
) -> Result<DualElem> {
    let ring = units.ring();
    check_exponent(ring, n)?;
    if !m_amb.is_multiple_of(n) {
        return Err(Error::Precondition(format!("{n} does not divide {m_amb}")));
    }
    let radical = radical_modulus(ring, [a])?;
    if !ring.divides(&radical, units.modulus()) {
        return Err(Error::Precondition(format!(
            "primes of {} do not all divide {}",
            a.format(ring),
            ring.format(units.modulus())
        )));
    }
    let amb = extended_ambient(units, m_amb);
    let mut span = Subgroup::trivial(&amb);
    let mut samples: Vec<(GroupElem, u64)> = Vec::new();
    let mut fresh: Vec<(GroupElem, u64)> = Vec::new();
    let max_deg = units.modulus().deg() + EXTRA_SAMPLE_DEGREES;
    'sampling: for d in 1..=max_deg {
        for q in ring.monic_irreducibles_of_degree(d) {
            if !units.is_unit(&q) {
                continue;
            }
            let mut class = units.frobenius_class(&q)?;
            class.push(d as u64 % m_amb);
            let s = residue_symbol(ring, a, &q, n)?;
            if span.is_whole() {
                fresh.push((class, s));
                if fresh.len() == VERIFY_SAMPLES {
                    break 'sampling;
                }
            } else {
                span = span.with_element(&class)?;
                samples.push((class, s));
            }
        }
    }
    if fresh.len() < VERIFY_SAMPLES {
        return Err(Error::Invariant(format!(
            "irreducibles up to degree {max_deg} did not generate the Frobenius group"
        )));
    }
    let big = lcm(amb.exponent(), n);
    let orders = amb.orders();
    let rows: Vec<Vec<i128>> = samples
        .iter()
        .map(|(x, _)| {
            x.iter()
                .zip(orders)
                .map(|(&xi, &nj)| (xi * (big / nj)) as i128)
                .collect()
        })
        .collect();
    let rhs: Vec<i128> = samples
        .iter()
        .map(|&(_, s)| (s * (big / n)) as i128)
        .collect();
    let not_found = || {
        Error::NotCyclotomic(format!(
            "no character mod {} x Z/{m_amb} matches {}",
            ring.format(units.modulus()),
            a.format(ring)
        ))
    };
    let c = if samples.is_empty() {
        amb.identity()
    } else {
        amb.reduce(&solve_mod(&rows, &rhs, amb.rank(), big).ok_or_else(not_found)?)
    };
    for (x, s) in samples.iter().chain(&fresh) {
        if amb.pairing(&c, x) != Qz::new(*s as i128, n) {
            return Err(not_found());
        }
    }
    Ok(c)
}

/// The Dirichlet character of `k(m-th root of A)` modulo the radical of
/// `A`; fails unless the field is cyclotomic.
pub fn kummer_character(ring: &PolyRing, a: &RationalFn, m: u64) -> Result<DirichletCharacter> {
    let n = radical_modulus(ring, [a])?;
    let units = Arc::new(ResidueUnitGroup::new(ring, &n)?);
    let c = kummer_dual(&units, m, a, m)?;
    let r = units.group().rank();
    if c[r] != 0 {
        return Err(Error::NotCyclotomic(format!(
            "k({m}-th root of {}) has a nontrivial constants part",
            a.format(ring)
        )));
    }
    DirichletCharacter::new(units, c[..r].to_vec())
}

/// `k(m-th root of (gamma D))`, `D` monic, `m` a prime `l` or `l^2`
/// dividing `q - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerExtensionDesc {
    ring: PolyRing,
    m: u64,
    ell: u64,
    gamma: FqElem,
    d: FactoredPoly,
    d_poly: Poly,
}

/// Local data at the infinite prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InfinityData {
    pub e: u64,
    pub f: u64,
    /// For `m = l` prime and `l` not dividing `deg D`: the completion is
    /// `k_inf(l-th root of (delta/T))`, reached from `gamma T^(-r)` with
    /// `deg D = l s - r`.
    pub local: Option<LocalShape>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalShape {
    pub delta: FqElem,
    pub r: u64,
}

impl KummerExtensionDesc {
    pub fn new(ring: &PolyRing, m: u64, gamma: FqElem, d: &Poly) -> Result<Self> {
        let ell = prime_or_prime_square(m).ok_or_else(|| {
            Error::Unsupported(format!(
                "radical exponent {m} is neither a prime nor a prime square"
            ))
        })?;
        check_exponent(ring, m)?;
        if gamma.is_zero() {
            return Err(Error::Precondition("gamma must be nonzero".into()));
        }
        if !d.is_monic() || d.deg() == 0 {
            return Err(Error::Precondition(format!(
                "D = {} must be monic of positive degree",
                ring.format(d)
            )));
        }
        Ok(KummerExtensionDesc {
            ring: ring.clone(),
            m,
            ell,
            gamma,
            d: ring.factor(d)?,
            d_poly: d.clone(),
        })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn gamma(&self) -> FqElem {
        self.gamma
    }

    pub fn d(&self) -> &Poly {
        &self.d_poly
    }

    pub fn d_factored(&self) -> &FactoredPoly {
        &self.d
    }

    pub fn deg_d(&self) -> u64 {
        self.d_poly.deg() as u64
    }

    /// `epsilon = (-1)^deg D gamma`, so that `gamma D = epsilon D*`.
    pub fn epsilon(&self) -> FqElem {
        let f = self.ring.field();
        f.mul(f.sign_power(self.deg_d() as i64), self.gamma)
    }

    pub fn d_star(&self) -> Poly {
        self.ring.star_twist(&self.d_poly).expect("nonzero")
    }

    pub fn radicand(&self) -> RationalFn {
        RationalFn::from_poly(self.ring.scale(&self.d_poly, self.gamma))
    }

    pub fn format(&self) -> String {
        format!(
            "k({}-th root of {})",
            self.m,
            self.radicand().format(&self.ring)
        )
    }

    /// `K` as a field in `Lambda_N k_m`, `N = rad D`.
    pub fn field(&self) -> Result<AbelianFieldDesc> {
        AbelianFieldDesc::radical(&self.ring, &self.radicand(), self.m)
    }

    /// `E = K k_m cap Lambda_N` and `[EK : K]`.
    pub fn associated_cyclotomic(&self) -> Result<(CyclotomicFieldDesc, u128)> {
        let k = self.field()?;
        let e = k.cyclotomic_projection();
        let ek = AbelianFieldDesc::from_cyclotomic(&e, self.m).compositum(&k)?;
        Ok((e, ek.degree() / k.degree()))
    }

    /// Ramification and residue degree at infinity, from the class of
    /// `gamma D = pi^(-deg D) gamma (one-unit)` in `k_inf^* / (k_inf^*)^m`.
    pub fn infinity_data(&self) -> InfinityData {
        let field = self.ring.field();
        let n = self.deg_d();
        let e = self.m / gcd(self.m, n);
        let gamma_order = field
            .power_class_order(self.gamma, self.m)
            .expect("m divides q - 1");
        let f = lcm(e, gamma_order) / e;
        let local = (self.m == self.ell && !n.is_multiple_of(self.ell)).then(|| {
            let r = (self.ell - n % self.ell) % self.ell;
            let j = mod_inverse(r as i128, self.ell as i128).expect("r is prime to l") as i64;
            LocalShape {
                delta: field.pow(self.gamma, j).expect("nonzero"),
                r,
            }
        });
        InfinityData { e, f, local }
    }

    fn is_lth_power(&self, x: FqElem) -> bool {
        self.ring
            .field()
            .is_lth_power(x, self.ell)
            .expect("l divides q - 1")
    }

    /// Conditions under which `geK = geE K` with constants of degree `l`:
    /// `m = l` prime, `l` not dividing `deg D`, `gamma` not congruent to
    /// `(-1)^deg D` modulo `l`-th powers. Returns the violated ones.
    pub fn prime_exponent_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.m != self.ell {
            out.push(format!("m = {} is not prime", self.m));
        }
        if self.deg_d().is_multiple_of(self.ell) {
            out.push(format!("l = {} divides deg D = {}", self.ell, self.deg_d()));
        }
        if self.is_lth_power(self.epsilon()) {
            out.push(format!(
                "gamma is congruent to (-1)^deg D modulo l-th powers (l = {})",
                self.ell
            ));
        }
        out
    }

    /// Conditions of the two-level shape `m = l^2`: at least two primes,
    /// exponents in `1..l^2`, `deg D = l d` with `l` not dividing `d`, some
    /// prime of degree prime to `l` with exponent prime to `l`, and
    /// `epsilon` not an `l`-th power.
    pub fn square_exponent_violations(&self) -> Vec<String> {
        let l = self.ell;
        let mut out = Vec::new();
        if self.m != l * l {
            out.push(format!("m = {} is not a prime square", self.m));
        }
        if self.d.factors.len() < 2 {
            out.push("D has fewer than two prime factors".into());
        }
        if self.d.factors.iter().any(|&(_, a)| a as u64 >= l * l) {
            out.push(format!("some exponent of D is at least l^2 = {}", l * l));
        }
        let n = self.deg_d();
        if !n.is_multiple_of(l) || (n / l).is_multiple_of(l) {
            out.push(format!("deg D = {n} is not l d with l not dividing d"));
        }
        if self.first_prime().is_none() {
            out.push("no prime of D has degree and exponent prime to l".into());
        }
        if self.is_lth_power(self.epsilon()) {
            out.push(format!("(-1)^deg D gamma is an l-th power (l = {l})"));
        }
        out
    }

    fn first_prime(&self) -> Option<usize> {
        let l = self.ell;
        self.d.factors.iter().position(|(p, a)| {
            !(p.deg() as u64).is_multiple_of(l) && !(*a as u64).is_multiple_of(l)
        })
    }

    /// Radical generators of `gE`, `geE` and `(gE)^H` in the two-level shape.
    pub fn q_coefficients(&self) -> Result<QCoefficients> {
        q_coefficients_helper(&self.ring, &self.d, self.ell)
    }
}

/// One twisted prime `Q_i = P_i P_1^(z_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedPrime {
    pub prime: Poly,
    pub alpha: u32,
    pub z: i64,
    pub q: RationalFn,
    /// `l^2` when `alpha` is prime to `l`, else `l`.
    pub root: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QCoefficients {
    pub ell: u64,
    pub p1: Poly,
    /// `a deg P_1 + b l^2 = 1`.
    pub a: i64,
    pub b: i64,
    pub twisted: Vec<TwistedPrime>,
    /// `P_1*` and its root.
    pub p1_star: (RationalFn, u64),
    /// The star twists of all primes with their roots.
    pub star_radicals: Vec<(RationalFn, u64)>,
}

impl QCoefficients {
    /// `(P_1*)^(1/l)` together with the `Q_i` radicals.
    pub fn genus_radicals(&self) -> Vec<(RationalFn, u64)> {
        let mut out = alloc::vec![(self.p1_star.0.clone(), self.ell)];
        out.extend(self.fixed_radicals());
        out
    }

    /// The `Q_i` radicals alone.
    pub fn fixed_radicals(&self) -> Vec<(RationalFn, u64)> {
        self.twisted.iter().map(|t| (t.q.clone(), t.root)).collect()
    }
}

/// `Q_i = P_i P_1^(z_i)` with `z_i = -a deg P_i`, where `P_1` is the first
/// prime whose degree and exponent are prime to `l`.
pub fn q_coefficients_helper(ring: &PolyRing, d: &FactoredPoly, ell: u64) -> Result<QCoefficients> {
    let l2 = (ell * ell) as i128;
    let i1 = d
        .factors
        .iter()
        .position(|(p, a)| {
            !(p.deg() as u64).is_multiple_of(ell) && !(*a as u64).is_multiple_of(ell)
        })
        .ok_or_else(|| {
            Error::Precondition(format!(
                "every prime of D has degree or exponent divisible by {ell}"
            ))
        })?;
    let p1 = d.factors[i1].0.clone();
    let d1 = p1.deg() as i128;
    let (_, x, _) = egcd(d1, l2);
    let a = x.rem_euclid(l2);
    let b = (1 - a * d1) / l2;
    let root_for = |alpha: u32| {
        if (alpha as u64).is_multiple_of(ell) {
            ell
        } else {
            ell * ell
        }
    };
    let star = |p: &Poly| RationalFn::from_poly(ring.star_twist(p).expect("nonzero"));
    let mut twisted = Vec::new();
    for (i, (p, alpha)) in d.factors.iter().enumerate() {
        if i == i1 {
            continue;
        }
        let z = -(a * p.deg() as i128) as i64;
        let pz = ring.pow(&p1, z.unsigned_abs());
        let q = if z >= 0 {
            RationalFn::from_poly(ring.mul(p, &pz))
        } else {
            RationalFn::new(ring, p, &pz)?
        };
        twisted.push(TwistedPrime {
            prime: p.clone(),
            alpha: *alpha,
            z,
            q,
            root: root_for(*alpha),
        });
    }
    let star_radicals = d
        .factors
        .iter()
        .map(|(p, alpha)| (star(p), root_for(*alpha)))
        .collect();
    Ok(QCoefficients {
        ell,
        p1: p1.clone(),
        a: a as i64,
        b: b as i64,
        twisted,
        p1_star: (star(&p1), root_for(d.factors[i1].1)),
        star_radicals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FqField;

    fn ring(q: u64) -> PolyRing {
        PolyRing::new(FqField::new(q, None).unwrap())
    }

    fn rf(r: &PolyRing, c: &[i64]) -> RationalFn {
        RationalFn::from_poly(r.from_ints(c))
    }

    #[test]
    fn residue_symbols() {
        let r = ring(5);
        let t = Poly::x();
        assert_eq!(residue_symbol(&r, &rf(&r, &[1]), &t, 2).unwrap(), 0);
        assert_eq!(residue_symbol(&r, &rf(&r, &[2]), &t, 2).unwrap(), 1);
        assert_eq!(residue_symbol(&r, &rf(&r, &[4]), &t, 2).unwrap(), 0);
        assert_eq!(
            residue_symbol(&r, &rf(&r, &[0, 1]), &t, 2),
            Err(Error::NotCoprime)
        );
        assert!(residue_symbol(&r, &rf(&r, &[2]), &t, 3).is_err());
    }

    #[test]
    fn quadratic_character_of_minus_t() {
        let r = ring(5);
        let a = rf(&r, &[0, 4]);
        let chi = kummer_character(&r, &a, 2).unwrap();
        assert_eq!(chi.order(), 2);
        for c in 1..4 {
            let q = r.from_ints(&[c, 1]);
            let s = residue_symbol(&r, &a, &q, 2).unwrap();
            assert_eq!(chi.evaluate(&q).unwrap(), Qz::new(s as i128, 2));
        }
        // 2T is not cyclotomic
        assert!(matches!(
            kummer_character(&r, &rf(&r, &[0, 2]), 2),
            Err(Error::NotCyclotomic(_))
        ));
        // an m-th power gives the trivial character
        assert!(kummer_character(&r, &rf(&r, &[0, 0, 1]), 2)
            .unwrap()
            .is_trivial());
    }

    #[test]
    fn fourth_root_of_t2_plus_t() {
        let r = ring(5);
        let chi = kummer_character(&r, &rf(&r, &[0, 1, 1]), 4).unwrap();
        assert_eq!(chi.order(), 4);
        assert_eq!(chi.component(&Poly::x()).unwrap().order(), 4);
        assert_eq!(chi.component(&r.from_ints(&[1, 1])).unwrap().order(), 4);
    }

    #[test]
    fn infinity_data_shapes() {
        let r = ring(5);
        let two = r.field().from_int(2);
        let k = KummerExtensionDesc::new(&r, 2, two, &Poly::x()).unwrap();
        let inf = k.infinity_data();
        assert_eq!((inf.e, inf.f), (2, 1));
        assert_eq!(inf.local, Some(LocalShape { delta: two, r: 1 }));
        let k = KummerExtensionDesc::new(&r, 4, two, &r.from_ints(&[0, 1, 1])).unwrap();
        let inf = k.infinity_data();
        assert_eq!((inf.e, inf.f, inf.local), (2, 2, None));
        let f = k.field().unwrap();
        assert_eq!((f.e_inf(), f.f_inf()), (2, 2));
        let one = r.field().one();
        let k = KummerExtensionDesc::new(&r, 2, one, &r.from_ints(&[0, 1, 1])).unwrap();
        assert_eq!((k.infinity_data().e, k.infinity_data().f), (1, 1));
        assert!(KummerExtensionDesc::new(&r, 3, two, &Poly::x()).is_err());
        assert!(KummerExtensionDesc::new(&ring(7), 6, two, &Poly::x()).is_err());
    }

    #[test]
    fn associated_cyclotomic_fields() {
        let r = ring(5);
        let two = r.field().from_int(2);
        let k = KummerExtensionDesc::new(&r, 2, two, &Poly::x()).unwrap();
        let (e, c) = k.associated_cyclotomic().unwrap();
        assert_eq!((e.degree(), c), (2, 2));
        let k = KummerExtensionDesc::new(&r, 4, two, &r.from_ints(&[0, 1, 1])).unwrap();
        let (e, c) = k.associated_cyclotomic().unwrap();
        assert_eq!((e.degree(), c), (4, 4));
        let direct = kummer_character(&r, &RationalFn::from_poly(k.d_star()), 4).unwrap();
        assert_eq!(direct.order(), 4);
        assert!(!k.prime_exponent_violations().is_empty());
        assert!(k.square_exponent_violations().is_empty());
    }

    #[test]
    fn q_coefficients_for_t_and_t_plus_one() {
        let r = ring(5);
        let d = r.factor(&r.from_ints(&[0, 1, 1])).unwrap();
        let qc = q_coefficients_helper(&r, &d, 2).unwrap();
        assert_eq!((qc.a, qc.b), (1, 0));
        assert_eq!(qc.p1, Poly::x());
        assert_eq!(qc.twisted[0].z, -1);
        assert_eq!(qc.twisted[0].q.format(&r), "(T+1)/T");
        assert_eq!(qc.twisted[0].root, 4);
        assert_eq!(qc.p1_star.0.format(&r), "4*T");
    }
}
