//! Genus and extended genus fields of a finite abelian `K / k`.
//!
//! With `E = K k_m cap Lambda_N` and `H` the decomposition group of the
//! infinite primes of `K` in the constants extension `EK / K`, one has
//! `gK = (gE)^H K` and `geK = D K` for some cyclotomic `D` between
//! `ge((gE)^H)` and `geE`. `D` is pinned down when `H` is trivial, when the
//! two bounds agree, or in the prime-exponent constants pattern; otherwise
//! both bounds are reported.

use crate::abelian::AbelianFieldDesc;
use crate::cyclo::CyclotomicFieldDesc;
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::kummer::KummerExtensionDesc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbelianGenusInput {
    Kummer(KummerExtensionDesc),
    Cyclotomic(CyclotomicFieldDesc),
    /// `E`, the subgroup of `G_N` acting as `H`, and whether `EK / K` is
    /// known to be a constants extension.
    Abstract {
        e: CyclotomicFieldDesc,
        h: Subgroup,
        constants_extension: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExactnessRule {
    HTrivial,
    BoundsCoincide,
    ConstantsPattern,
    IntervalOnly,
}

impl ExactnessRule {
    pub fn tag(self) -> &'static str {
        match self {
            ExactnessRule::HTrivial => "h-trivial",
            ExactnessRule::BoundsCoincide => "bounds-coincide",
            ExactnessRule::ConstantsPattern => "constants-pattern",
            ExactnessRule::IntervalOnly => "interval-only",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        [
            Self::HTrivial,
            Self::BoundsCoincide,
            Self::ConstantsPattern,
            Self::IntervalOnly,
        ]
        .into_iter()
        .find(|r| r.tag() == tag)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusResult {
    /// `K` itself; absent in abstract mode.
    pub k: Option<AbelianFieldDesc>,
    pub e: CyclotomicFieldDesc,
    /// `H` as a subgroup of `G_N`, acting on `E` through `G_N / ker`.
    pub h: Subgroup,
    pub h_order: u128,
    pub e_h: CyclotomicFieldDesc,
    pub g_e: CyclotomicFieldDesc,
    pub ge_e: CyclotomicFieldDesc,
    /// `(gE)^H`, the cyclotomic part of `gK`.
    pub g_e_h: CyclotomicFieldDesc,
    /// `ge((gE)^H)`.
    pub lower: CyclotomicFieldDesc,
    /// `geE`.
    pub upper: CyclotomicFieldDesc,
    /// `D` with `geK = D K`, when determined.
    pub d: Option<CyclotomicFieldDesc>,
    pub g_k: Option<AbelianFieldDesc>,
    pub ge_k: Option<AbelianFieldDesc>,
    pub ge_k_lower: Option<AbelianFieldDesc>,
    pub ge_k_upper: Option<AbelianFieldDesc>,
    pub rule: ExactnessRule,
}

impl GenusResult {
    pub fn is_exact(&self) -> bool {
        self.d.is_some()
    }

    pub fn g_k_constants_degree(&self) -> Option<u128> {
        self.g_k.as_ref().map(|f| f.constants_degree())
    }

    pub fn ge_k_constants_degree(&self) -> Option<u128> {
        self.ge_k.as_ref().map(|f| f.constants_degree())
    }
}

/// `|image of S in Gal(F/k)| = [F : F^S]`.
fn acting_order(f: &CyclotomicFieldDesc, s: &Subgroup) -> Result<u128> {
    Ok(f.degree() / f.fixed_field(s)?.degree())
}

/// The decomposition group of the infinite primes of `K` in `EK / K`,
/// projected to `G_N`.
pub fn decomposition_h(k: &AbelianFieldDesc) -> Result<Subgroup> {
    let dec = k.decomposition_inf();
    let inside = dec.intersection(&k.kernel())?;
    let units = k.unit_group();
    let r = units.group().rank();
    let gens: alloc::vec::Vec<_> = inside
        .generators()
        .into_iter()
        .map(|g| g[..r].to_vec())
        .collect();
    Subgroup::generated_by(units.group(), &gens)
}

fn invariant(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Invariant(what.into()))
    }
}

pub fn genus_pipeline(input: &AbelianGenusInput) -> Result<GenusResult> {
    let (k, e, h, pattern) = match input {
        AbelianGenusInput::Kummer(kd) => {
            let k = kd.field()?;
            let (e, _) = kd.associated_cyclotomic()?;
            let h = decomposition_h(&k)?;
            let pattern = kd.prime_exponent_violations().is_empty()
                && k.e_inf() == kd.ell() as u128
                && k.f_inf() == 1;
            (Some(k), e, h, pattern.then_some(kd.ell()))
        }
        AbelianGenusInput::Cyclotomic(e) => {
            let k = AbelianFieldDesc::from_cyclotomic(e, 1);
            let h = Subgroup::trivial(e.unit_group().group());
            (Some(k), e.clone(), h, None)
        }
        AbelianGenusInput::Abstract {
            e,
            h,
            constants_extension,
        } => {
            if !constants_extension {
                return Err(Error::Precondition(
                    "EK/K must be an extension of constants".into(),
                ));
            }
            if h.ambient() != e.unit_group().group() {
                return Err(Error::AmbientMismatch);
            }
            (None, e.clone(), h.clone(), None)
        }
    };
    let h_order = acting_order(&e, &h)?;
    let e_h = e.fixed_field(&h)?;
    let g_e = e.genus();
    let ge_e = e.extended_genus();
    invariant(
        acting_order(&g_e, &h)? == h_order,
        "H acts differently on E and on gE",
    )?;
    if let Some(k) = &k {
        let ek = AbelianFieldDesc::from_cyclotomic(&e, k.m()).compositum(k)?;
        invariant(
            ek.f_inf() / k.f_inf() == h_order,
            "|H| differs from f_inf(EK/K)",
        )?;
    }
    let g_e_h = g_e.fixed_field(&h)?;
    let lower = g_e_h.extended_genus();
    let upper = ge_e.clone();
    invariant(
        lower.is_subfield_of(&upper)?,
        "lower bound is not inside geE",
    )?;

    let (rule, d) = if h_order == 1 {
        (ExactnessRule::HTrivial, Some(upper.clone()))
    } else if lower.same_field(&upper)? {
        (ExactnessRule::BoundsCoincide, Some(upper.clone()))
    } else if pattern.is_some() {
        (ExactnessRule::ConstantsPattern, Some(upper.clone()))
    } else {
        (ExactnessRule::IntervalOnly, None)
    };

    let with_k = |f: &CyclotomicFieldDesc| -> Result<Option<AbelianFieldDesc>> {
        k.as_ref()
            .map(|k| AbelianFieldDesc::from_cyclotomic(f, k.m()).compositum(k))
            .transpose()
    };
    let g_k = with_k(&g_e_h)?;
    let ge_k_lower = with_k(&lower)?;
    let ge_k_upper = with_k(&upper)?;
    let ge_k = match &d {
        Some(d) => with_k(d)?,
        None => None,
    };
    if let (Some(l), Some(ge_k)) = (pattern, &ge_k) {
        if rule == ExactnessRule::ConstantsPattern {
            invariant(
                ge_k.constants_degree() == l as u128,
                "constants of geK do not have degree l",
            )?;
        }
    }
    if let (Some(g_k), Some(k)) = (&g_k, &k) {
        // constants of gK split the infinite primes of K
        invariant(
            k.f_inf() % g_k.constants_degree() == 0,
            "constants of gK exceed f_inf(K)",
        )?;
    }
    Ok(GenusResult {
        k,
        e,
        h,
        h_order,
        e_h,
        g_e,
        ge_e,
        g_e_h,
        lower,
        upper,
        d,
        g_k,
        ge_k,
        ge_k_lower,
        ge_k_upper,
        rule,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FqField;
    use crate::poly::{Poly, PolyRing};
    use crate::rational::RationalFn;

    fn ring(q: u64) -> PolyRing {
        PolyRing::new(FqField::new(q, None).unwrap())
    }

    fn rf(r: &PolyRing, c: &[i64]) -> RationalFn {
        RationalFn::from_poly(r.from_ints(c))
    }

    #[test]
    fn square_root_of_two_t() {
        let r = ring(5);
        let kd = KummerExtensionDesc::new(&r, 2, r.field().from_int(2), &Poly::x()).unwrap();
        let res = genus_pipeline(&AbelianGenusInput::Kummer(kd)).unwrap();
        assert_eq!(res.rule, ExactnessRule::ConstantsPattern);
        assert_eq!(res.h_order, 2);
        let k = res.k.as_ref().unwrap();
        assert!(res.g_k.as_ref().unwrap().same_field(k).unwrap());
        let expect =
            AbelianFieldDesc::from_radicals(&r, &[(rf(&r, &[0, 1]), 2), (rf(&r, &[2]), 2)])
                .unwrap();
        assert!(res.ge_k.as_ref().unwrap().same_field(&expect).unwrap());
        assert_eq!(res.ge_k_constants_degree(), Some(2));
    }

    #[test]
    fn fourth_root_of_two_t2_plus_2t() {
        let r = ring(5);
        let kd = KummerExtensionDesc::new(&r, 4, r.field().from_int(2), &r.from_ints(&[0, 1, 1]))
            .unwrap();
        let res = genus_pipeline(&AbelianGenusInput::Kummer(kd.clone())).unwrap();
        assert_eq!(
            (res.e.degree(), res.g_e.degree(), res.ge_e.degree()),
            (4, 8, 16)
        );
        assert_eq!(res.h_order, 2);
        assert_eq!(res.rule, ExactnessRule::BoundsCoincide);
        let sqrt_d = CyclotomicFieldDesc::new(
            crate::chars::CharacterGroup::generated_by(
                res.e.unit_group().clone(),
                &[crate::kummer::kummer_character(&r, &rf(&r, &[0, 1, 1]), 2).unwrap()],
            )
            .unwrap(),
        );
        assert!(res.e_h.same_field(&sqrt_d).unwrap());
        let qc = kd.q_coefficients().unwrap();
        let g_e = AbelianFieldDesc::from_radicals(&r, &qc.genus_radicals()).unwrap();
        assert!(g_e
            .same_field(&AbelianFieldDesc::from_cyclotomic(&res.g_e, 1))
            .unwrap());
        let fixed = AbelianFieldDesc::from_radicals(&r, &qc.fixed_radicals()).unwrap();
        assert!(fixed
            .same_field(&AbelianFieldDesc::from_cyclotomic(&res.g_e_h, 1))
            .unwrap());
        assert_eq!(res.ge_k_constants_degree(), Some(4));
    }

    #[test]
    fn cyclotomic_input_is_its_own_answer() {
        let r = ring(3);
        let g = alloc::sync::Arc::new(
            crate::units::ResidueUnitGroup::new(&r, &r.from_ints(&[0, 0, 1])).unwrap(),
        );
        let e = CyclotomicFieldDesc::full(g);
        let res = genus_pipeline(&AbelianGenusInput::Cyclotomic(e.clone())).unwrap();
        assert_eq!(res.rule, ExactnessRule::HTrivial);
        assert!(res.ge_e.same_field(&e).unwrap() && res.g_e.same_field(&e).unwrap());
    }
}
