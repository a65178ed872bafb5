//! Finite abelian groups given as products of cyclic groups.
//!
//! A group is `Z/n_1 x ... x Z/n_k` for arbitrary `n_j >= 1`; elements are
//! exponent vectors. The dual is identified with the group itself through
//! the pairing `<c, x> = sum c_j x_j / n_j` in `Q/Z`, so characters and
//! elements share one coordinate system.

mod snf;
mod subgroup;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

pub use snf::{group_from_relations, smith_normal_form, solve_mod, IntMatrix, Presentation, Smith};
pub use subgroup::Subgroup;

use crate::arith::{gcd, lcm};
use crate::error::{Error, Result};

/// Largest cyclic factor the engine accepts; keeps products of two reduced
/// entries comfortably inside `i128`.
pub const MAX_CYCLIC_ORDER: u64 = 1 << 48;

/// Exponent vector of a group element (or of a character, in dual
/// coordinates).
pub type GroupElem = Vec<u64>;

/// A character of an [`AbGroup`], in the same coordinates as its elements.
pub type DualElem = Vec<u64>;

/// An element `num/den` of `Q/Z` in lowest terms with `0 <= num < den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Qz {
    num: u64,
    den: u64,
}

impl Qz {
    pub const ZERO: Qz = Qz { num: 0, den: 1 };

    pub fn new(num: i128, den: u64) -> Self {
        assert!(den > 0, "denominator must be positive");
        let n = num.rem_euclid(den as i128) as u64;
        let g = gcd(n, den);
        Qz {
            num: n / g,
            den: den / g,
        }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// Order in `Q/Z`.
    pub fn order(self) -> u64 {
        self.den
    }

    pub fn mul_int(self, k: i128) -> Qz {
        Qz::new(
            (self.num as i128 * k.rem_euclid(self.den as i128)) % self.den as i128,
            self.den,
        )
    }

    /// The index `j` with `self = j/m`, if `m * self = 0`.
    pub fn index_mod(self, m: u64) -> Option<u64> {
        m.is_multiple_of(self.den)
            .then(|| self.num * (m / self.den))
    }
}

impl Add for Qz {
    type Output = Qz;

    fn add(self, o: Qz) -> Qz {
        let d = lcm(self.den, o.den);
        Qz::new(
            self.num as i128 * (d / self.den) as i128 + o.num as i128 * (d / o.den) as i128,
            d,
        )
    }
}

impl Neg for Qz {
    type Output = Qz;

    fn neg(self) -> Qz {
        Qz::new(-(self.num as i128), self.den)
    }
}

impl Sub for Qz {
    type Output = Qz;

    fn sub(self, o: Qz) -> Qz {
        self + -o
    }
}

impl fmt::Display for Qz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            return f.write_str("0");
        }
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AbGroup {
    orders: Vec<u64>,
}

impl AbGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.iter().any(|&n| n == 0 || n > MAX_CYCLIC_ORDER) {
            return Err(Error::Unsupported(
                "cyclic factor orders must lie in 1..=2^48".into(),
            ));
        }
        Ok(AbGroup { orders })
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(vec![n]).expect("valid order")
    }

    pub fn trivial() -> Self {
        AbGroup { orders: Vec::new() }
    }

    pub fn product(parts: &[AbGroup]) -> Self {
        AbGroup {
            orders: parts
                .iter()
                .flat_map(|g| g.orders.iter().copied())
                .collect(),
        }
    }

    /// Orders of the cyclic coordinate factors.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u128 {
        self.orders.iter().map(|&n| n as u128).product()
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &n| lcm(acc, n))
    }

    /// Invariant factors `d_1 | d_2 | ...`, all at least 2.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let m = IntMatrix::diagonal(&self.orders);
        let smith = smith_normal_form(&m);
        smith
            .diagonal_u64()
            .into_iter()
            .filter(|&d| d > 1)
            .collect()
    }

    pub fn identity(&self) -> GroupElem {
        vec![0; self.orders.len()]
    }

    /// Unit vector of coordinate `j`.
    pub fn basis(&self, j: usize) -> GroupElem {
        let mut e = self.identity();
        e[j] = 1 % self.orders[j];
        e
    }

    pub fn is_valid(&self, x: &[u64]) -> bool {
        x.len() == self.orders.len() && x.iter().zip(&self.orders).all(|(&a, &n)| a < n)
    }

    pub fn reduce(&self, x: &[i128]) -> GroupElem {
        x.iter()
            .zip(&self.orders)
            .map(|(&a, &n)| a.rem_euclid(n as i128) as u64)
            .collect()
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> GroupElem {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((&a, &b), &n)| ((a as u128 + b as u128) % n as u128) as u64)
            .collect()
    }

    pub fn neg(&self, x: &[u64]) -> GroupElem {
        x.iter()
            .zip(&self.orders)
            .map(|(&a, &n)| (n - a % n) % n)
            .collect()
    }

    pub fn sub(&self, x: &[u64], y: &[u64]) -> GroupElem {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, x: &[u64], k: i128) -> GroupElem {
        x.iter()
            .zip(&self.orders)
            .map(|(&a, &n)| (a as i128 * k.rem_euclid(n as i128)).rem_euclid(n as i128) as u64)
            .collect()
    }

    pub fn is_identity(&self, x: &[u64]) -> bool {
        x.iter().all(|&a| a == 0)
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.orders)
            .fold(1, |acc, (&a, &n)| lcm(acc, n / gcd(a, n)))
    }

    /// `<c, x>` in `Q/Z`.
    pub fn pairing(&self, c: &[u64], x: &[u64]) -> Qz {
        let m = self.exponent().max(1);
        let mut acc: u128 = 0;
        for ((&a, &b), &n) in c.iter().zip(x).zip(&self.orders) {
            let term = (a as u128 * b as u128) % n as u128 * (m / n) as u128;
            acc = (acc + term) % m as u128;
        }
        Qz::new(acc as i128, m)
    }

    /// All elements in mixed-radix order (first coordinate fastest).
    pub fn elements(&self) -> impl Iterator<Item = GroupElem> + '_ {
        let total = self.order();
        let orders = &self.orders;
        (0..total).map(move |mut idx| {
            orders
                .iter()
                .map(|&n| {
                    let d = (idx % n as u128) as u64;
                    idx /= n as u128;
                    d
                })
                .collect()
        })
    }

    /// Quotient by a subgroup, with its presentation maps.
    pub fn quotient(&self, s: &Subgroup) -> Result<Presentation> {
        if s.ambient() != self {
            return Err(Error::AmbientMismatch);
        }
        group_from_relations(self.rank(), &s.relation_rows())
    }
}
