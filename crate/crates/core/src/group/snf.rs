//! Smith normal form over `Z` and finite quotients `Z^k / L`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AbGroup;
use crate::arith::mod_inverse;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn diagonal(d: &[u64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m.data[i][i] = BigInt::from(x);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<i128>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &x) in r.iter().enumerate() {
                m.data[i][j] = BigInt::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += &self.data[i][k] * &other.data[k][j];
                }
            }
        }
        out
    }

    /// Determinant by fraction-free elimination (square matrices only).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * &a[n - 1][n - 1]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.data.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in &mut self.data {
            r.swap(i, j);
        }
    }

    /// `row_dst += f * row_src`.
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src][j] * f;
            self.data[dst][j] += v;
        }
    }

    /// `col_dst += f * col_src`.
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for r in &mut self.data {
            let v = &r[src] * f;
            r[dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.data[i] {
            *x = -core::mem::take(x);
        }
    }
}

/// `U M V = S` with `S` diagonal, `s_i | s_{i+1}`, `s_i >= 0`, and `U`, `V`
/// unimodular. `v_inv` is `V^{-1}`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s.data[i][i].clone())
            .collect()
    }

    pub fn diagonal_u64(&self) -> Vec<u64> {
        self.diagonal()
            .iter()
            .map(|d| d.to_u64().expect("diagonal entry fits in u64"))
            .collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    let col_swap =
        |s: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, a: usize, b: usize| {
            s.swap_cols(a, b);
            v.swap_cols(a, b);
            vi.swap_rows(a, b);
        };
    // col_dst += f * col_src on S and V; the inverse is row_src -= f * row_dst on V^{-1}
    let col_add = |s: &mut IntMatrix,
                   v: &mut IntMatrix,
                   vi: &mut IntMatrix,
                   dst: usize,
                   src: usize,
                   f: &BigInt| {
        s.add_col(dst, src, f);
        v.add_col(dst, src, f);
        vi.add_row(src, dst, &-f);
    };

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if s.data[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| s.data[i][j].abs() < s.data[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(u, s, v, v_inv);
            };
            if pi != t {
                s.swap_rows(pi, t);
                u.swap_rows(pi, t);
            }
            if pj != t {
                col_swap(&mut s, &mut v, &mut v_inv, pj, t);
            }
            let mut clean = true;
            for i in t + 1..rows {
                if s.data[i][t].is_zero() {
                    continue;
                }
                let f = -s.data[i][t].div_floor(&s.data[t][t]);
                s.add_row(i, t, &f);
                u.add_row(i, t, &f);
                if !s.data[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if s.data[t][j].is_zero() {
                    continue;
                }
                let f = -s.data[t][j].div_floor(&s.data[t][t]);
                col_add(&mut s, &mut v, &mut v_inv, j, t, &f);
                if !s.data[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold any offending row into row t and retry
            let piv = s.data[t][t].clone();
            let bad =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s.data[i][j].is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if s.data[t][t].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(u, s, v, v_inv)
}

fn finish(u: IntMatrix, s: IntMatrix, v: IntMatrix, v_inv: IntMatrix) -> Smith {
    let out = Smith { u, s, v, v_inv };
    #[cfg(any(test, debug_assertions))]
    check_smith(&out);
    out
}

#[cfg(any(test, debug_assertions))]
fn check_smith(sm: &Smith) {
    let n = sm.v.rows;
    assert_eq!(sm.v.mul(&sm.v_inv), IntMatrix::identity(n), "V * V^-1 != I");
    assert!(sm.u.determinant().abs().is_one(), "U not unimodular");
    assert!(sm.v.determinant().abs().is_one(), "V not unimodular");
    let d = sm.diagonal();
    for w in d.windows(2) {
        if !w[0].is_zero() {
            assert!(w[1].is_multiple_of(&w[0]), "diagonal not a divisor chain");
        } else {
            assert!(w[1].is_zero(), "zero before nonzero on the diagonal");
        }
    }
    for i in 0..sm.s.rows {
        for j in 0..sm.s.cols {
            if i != j {
                assert!(sm.s.data[i][j].is_zero(), "S not diagonal");
            }
        }
    }
}

/// The quotient `Z^k / L` for a full-rank relation lattice `L`, with maps
/// between generator coordinates and invariant-factor coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    group: AbGroup,
    /// `to_inv[j][i]`: coordinate `i` of generator `j`.
    to_inv: Vec<Vec<u64>>,
    /// `from_inv[i]`: generator-coordinate vector of invariant basis element `i`.
    from_inv: Vec<Vec<i128>>,
}

impl Presentation {
    /// The quotient in invariant-factor form.
    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    pub fn to_invariant(&self, x: &[i128]) -> Vec<u64> {
        let orders = self.group.orders();
        (0..orders.len())
            .map(|i| {
                let n = orders[i] as i128;
                x.iter().zip(&self.to_inv).fold(0i128, |acc, (&a, row)| {
                    (acc + a.rem_euclid(n) * row[i] as i128) % n
                }) as u64
            })
            .collect()
    }

    /// A generator-coordinate representative of an invariant-coordinate
    /// element.
    pub fn from_invariant(&self, y: &[u64]) -> Vec<i128> {
        let k = self.to_inv.len();
        let modulus = self.group.exponent().max(1) as i128;
        let mut out = vec![0i128; k];
        for (&c, row) in y.iter().zip(&self.from_inv) {
            for j in 0..k {
                out[j] = (out[j] + c as i128 * row[j]).rem_euclid(modulus);
            }
        }
        out
    }
}

/// Presentation of `Z^ngens / <relations>`; errors when the quotient is
/// infinite.
pub fn group_from_relations(ngens: usize, relations: &[Vec<i128>]) -> Result<Presentation> {
    let m = IntMatrix::from_rows(ngens, relations);
    let sm = smith_normal_form(&m);
    let d = sm.diagonal();
    if d.len() < ngens || d.iter().any(|x| x.is_zero()) {
        return Err(Error::InfiniteQuotient);
    }
    let kept: Vec<usize> = (0..ngens).filter(|&i| !d[i].is_one()).collect();
    let orders: Vec<u64> = kept
        .iter()
        .map(|&i| {
            d[i].to_u64()
                .ok_or_else(|| Error::Unsupported("invariant factor exceeds u64".into()))
        })
        .collect::<Result<_>>()?;
    let exponent = orders.last().copied().unwrap_or(1);
    let to_inv = (0..ngens)
        .map(|j| {
            kept.iter()
                .zip(&orders)
                .map(|(&i, &n)| {
                    sm.v.get(j, i)
                        .mod_floor(&BigInt::from(n))
                        .to_u64()
                        .expect("reduced")
                })
                .collect()
        })
        .collect();
    let from_inv = kept
        .iter()
        .map(|&i| {
            (0..ngens)
                .map(|j| {
                    sm.v_inv
                        .get(i, j)
                        .mod_floor(&BigInt::from(exponent))
                        .to_i128()
                        .expect("reduced")
                })
                .collect()
        })
        .collect();
    Ok(Presentation {
        group: AbGroup::new(orders)?,
        to_inv,
        from_inv,
    })
}

/// Some `x` with `A x = b (mod modulus)`, or `None` when unsolvable.
pub fn solve_mod(a: &[Vec<i128>], b: &[i128], cols: usize, modulus: u64) -> Option<Vec<i128>> {
    let l = modulus as i128;
    let m = IntMatrix::from_rows(cols, a);
    let sm = smith_normal_form(&m);
    let lb = BigInt::from(l);
    let ub: Vec<BigInt> = (0..a.len())
        .map(|i| {
            let mut acc = BigInt::zero();
            for (k, &bk) in b.iter().enumerate() {
                acc += sm.u.get(i, k) * BigInt::from(bk);
            }
            acc.mod_floor(&lb)
        })
        .collect();
    let d = sm.diagonal();
    let mut y = vec![0i128; cols];
    for (i, ubi) in ub.iter().enumerate() {
        let rhs = ubi.to_i128().expect("reduced");
        let si = d
            .get(i)
            .map(|x| x.mod_floor(&lb).to_i128().expect("reduced"))
            .unwrap_or(0);
        if i >= cols {
            if rhs != 0 {
                return None;
            }
            continue;
        }
        let g = crate::arith::egcd(si, l).0;
        if rhs % g != 0 {
            return None;
        }
        let lg = l / g;
        y[i] = if lg == 1 {
            0
        } else {
            let inv = mod_inverse(si / g, lg).expect("coprime after dividing by gcd");
            (rhs / g % lg) * inv % lg
        };
    }
    let x = (0..cols)
        .map(|j| {
            let mut acc = BigInt::zero();
            for (i, &yi) in y.iter().enumerate() {
                acc += sm.v.get(j, i) * BigInt::from(yi);
            }
            acc.mod_floor(&lb).to_i128().expect("reduced")
        })
        .collect();
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf_diag(rows: &[Vec<i128>], cols: usize) -> Vec<u64> {
        let m = IntMatrix::from_rows(cols, rows);
        let sm = smith_normal_form(&m);
        assert_eq!(sm.u.mul(&m).mul(&sm.v), sm.s);
        sm.diagonal_u64()
    }

    #[test]
    fn small_examples() {
        assert_eq!(snf_diag(&[vec![2, 0], vec![0, 3]], 2), vec![1, 6]);
        assert_eq!(snf_diag(&[vec![1, 0], vec![0, 1]], 2), vec![1, 1]);
        // content 2 and determinant 4 force diag(2, 2)
        assert_eq!(snf_diag(&[vec![2, 4], vec![0, 2]], 2), vec![2, 2]);
        assert_eq!(snf_diag(&[vec![0, 0], vec![0, 0]], 2), vec![0, 0]);
        assert_eq!(snf_diag(&[vec![6, 4, 2]], 3), vec![2]);
    }

    #[test]
    fn two_by_two_matches_gcd_and_determinant() {
        for a in -6i128..=6 {
            for b in [-4i128, 0, 3, 6] {
                for c in [-5i128, 0, 2] {
                    for d in -6i128..=6 {
                        let diag = snf_diag(&[vec![a, b], vec![c, d]], 2);
                        let content = [a, b, c, d]
                            .iter()
                            .fold(0i128, |g, &x| crate::arith::egcd(g, x).0);
                        let det = (a * d - b * c).abs();
                        assert_eq!(diag[0] as i128, content);
                        assert_eq!(diag[0] as i128 * diag[1] as i128, det);
                    }
                }
            }
        }
    }

    #[test]
    fn relations_to_groups() {
        let p = group_from_relations(1, &[vec![6]]).unwrap();
        assert_eq!(p.group().orders(), &[6]);
        let p = group_from_relations(2, &[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(p.group().orders(), &[6]);
        // explicit isomorphism: generators map to elements of orders 2 and 3
        let g0 = p.to_invariant(&[1, 0]);
        let g1 = p.to_invariant(&[0, 1]);
        assert_eq!(p.group().element_order(&g0), 2);
        assert_eq!(p.group().element_order(&g1), 3);
        let back = p.from_invariant(&p.group().add(&g0, &g1));
        assert_eq!(p.to_invariant(&back), p.group().add(&g0, &g1));
        let p = group_from_relations(2, &[vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(p.group().orders(), &[2, 2]);
        assert_eq!(
            group_from_relations(2, &[vec![2, 0]]),
            Err(Error::InfiniteQuotient)
        );
    }

    #[test]
    fn congruence_solver() {
        // 2x + 3y = 1 mod 6 and x = 2 mod 6
        let a = vec![vec![2, 3], vec![1, 0]];
        let x = solve_mod(&a, &[1, 2], 2, 6).unwrap();
        assert_eq!((2 * x[0] + 3 * x[1]).rem_euclid(6), 1);
        assert_eq!(x[0].rem_euclid(6), 2);
        assert!(solve_mod(&[vec![2]], &[1], 1, 4).is_none());
    }
}
