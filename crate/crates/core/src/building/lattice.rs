//! Lattices in `Q_p^n` and their homothety classes.
//!
//! A lattice is stored through its column Hermite form over `Z_p`: an upper
//! triangular basis with diagonal `p^{k_i}` and entry `(i, j)` reduced into
//! `[0, p^{k_i})`. Arithmetic happens modulo `p^P` (the context precision),
//! which is exact as long as the lattice contains `p^P·Z_p^n`. Every
//! normal-form computation checks that through the elementary divisors and
//! fails with [`Error::Precision`] otherwise.

use serde::{Deserialize, Serialize};

use super::PrimeContext;
use crate::{Error, Result};

/// p-adic valuation of `x` modulo `p^P`; zero maps to `P`.
pub(crate) fn val(x: i128, ctx: &PrimeContext) -> u32 {
    let x = x.rem_euclid(ctx.modulus);
    if x == 0 {
        return ctx.precision;
    }
    let p = ctx.p as i128;
    let mut v = 0;
    let mut y = x;
    while y % p == 0 {
        y /= p;
        v += 1;
    }
    v
}

/// Inverse of a p-adic unit modulo `p^P`.
pub(crate) fn unit_inverse(u: i128, ctx: &PrimeContext) -> i128 {
    let m = ctx.modulus;
    let (mut r0, mut r1) = (u.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "not a unit");
    s0.rem_euclid(m)
}

fn mulmod(a: i128, b: i128, m: i128) -> i128 {
    (a.rem_euclid(m) * b.rem_euclid(m)).rem_euclid(m)
}

/// Exponents `e_1 ≤ … ≤ e_n` of the elementary divisors of a full-rank
/// integer matrix (columns or rows, it does not matter), computed mod `p^P`.
pub(crate) fn elementary_divisors(rows: &[Vec<i128>], ctx: &PrimeContext) -> Vec<u32> {
    let m = ctx.modulus;
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(m)).collect())
        .collect();
    let nr = a.len();
    let nc = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for k in 0..nr.min(nc) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, &x) in row.iter().enumerate().skip(k) {
                let v = val(x, ctx);
                if best.is_none_or(|(b, _, _)| v < b) {
                    best = Some((v, i, j));
                }
            }
        }
        let (v, bi, bj) = best.expect("nonempty submatrix");
        out.push(v);
        if v >= ctx.precision {
            out.extend(std::iter::repeat_n(ctx.precision, nr.min(nc) - k - 1));
            break;
        }
        a.swap(k, bi);
        for row in a.iter_mut() {
            row.swap(k, bj);
        }
        let pv = ctx.pow(v);
        let unit_inv = unit_inverse(a[k][k] / pv, ctx);
        for i in k + 1..nr {
            if a[i][k] != 0 {
                let f = mulmod(a[i][k] / pv, unit_inv, m);
                for j in k..nc {
                    a[i][j] = (a[i][j] - mulmod(f, a[k][j], m)).rem_euclid(m);
                }
            }
        }
        for j in k + 1..nc {
            if a[k][j] != 0 {
                let f = mulmod(a[k][j] / pv, unit_inv, m);
                for row in a.iter_mut().skip(k) {
                    row[j] = (row[j] - mulmod(f, row[k], m)).rem_euclid(m);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// A lattice in `Q_p^n` contained in `Z_p^n`, in Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Lattice {
    n: usize,
    /// Row-major upper-triangular basis; columns generate the lattice.
    entries: Vec<i128>,
}

impl Lattice {
    /// The lattice spanned by integer `columns` (each of length `n`).
    pub(crate) fn from_columns(columns: &[Vec<i128>], ctx: &PrimeContext) -> Result<Self> {
        let n = ctx.n;
        let m = ctx.modulus;
        let mut pool: Vec<Vec<i128>> = columns
            .iter()
            .map(|c| c.iter().map(|x| x.rem_euclid(m)).collect())
            .collect();
        let mut basis: Vec<Vec<i128>> = vec![Vec::new(); n];
        for r in (0..n).rev() {
            let (pos, v) = pool
                .iter()
                .enumerate()
                .map(|(i, c)| (i, val(c[r], ctx)))
                .min_by_key(|&(i, v)| (v, i))
                .ok_or(Error::Singular)?;
            if v >= ctx.precision {
                return Err(Error::Precision(ctx.precision));
            }
            let mut pivot = pool.swap_remove(pos);
            let pv = ctx.pow(v);
            let inv = unit_inverse(pivot[r] / pv, ctx);
            for x in pivot.iter_mut() {
                *x = mulmod(*x, inv, m);
            }
            debug_assert_eq!(pivot[r], pv);
            for col in pool.iter_mut() {
                if col[r] != 0 {
                    let f = col[r] / pv;
                    for (x, y) in col.iter_mut().zip(&pivot) {
                        *x = (*x - mulmod(f, *y, m)).rem_euclid(m);
                    }
                }
            }
            basis[r] = pivot;
        }
        // Reduce row i of column j modulo the pivot p^{k_i}, bottom rows first
        // so later steps only touch rows above.
        for j in 0..n {
            for i in (0..j).rev() {
                let d = basis[i][i];
                let q = basis[j][i].div_euclid(d);
                if q != 0 {
                    let (lo, hi) = basis.split_at_mut(j);
                    for (x, y) in hi[0].iter_mut().zip(&lo[i]) {
                        *x = (*x - mulmod(q, *y, m)).rem_euclid(m);
                    }
                }
            }
        }
        let mut entries = vec![0i128; n * n];
        for (j, col) in basis.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                entries[i * n + j] = x;
            }
        }
        let lattice = Lattice { n, entries };
        let e = elementary_divisors(&lattice.rows(), ctx);
        if e.last().is_some_and(|&top| top >= ctx.precision) {
            return Err(Error::Precision(ctx.precision));
        }
        Ok(lattice)
    }

    pub(crate) fn get(&self, i: usize, j: usize) -> i128 {
        self.entries[i * self.n + j]
    }

    pub(crate) fn rows(&self) -> Vec<Vec<i128>> {
        self.entries.chunks(self.n).map(<[i128]>::to_vec).collect()
    }

    pub(crate) fn columns(&self) -> Vec<Vec<i128>> {
        (0..self.n).map(|j| (0..self.n).map(|i| self.get(i, j)).collect()).collect()
    }

    /// `v_p(det)`, the log of the index `[Z_p^n : L]`.
    pub(crate) fn det_valuation(&self, ctx: &PrimeContext) -> u32 {
        (0..self.n).map(|i| val(self.get(i, i), ctx)).sum()
    }

    /// `p^t·L`.
    pub(crate) fn scaled(&self, t: u32, ctx: &PrimeContext) -> Result<Self> {
        let f = ctx.pow(t);
        let cols: Vec<Vec<i128>> = self
            .columns()
            .into_iter()
            .map(|c| c.into_iter().map(|x| x * f).collect())
            .collect();
        Lattice::from_columns(&cols, ctx)
    }

    pub(crate) fn contains(&self, other: &Lattice, ctx: &PrimeContext) -> Result<bool> {
        let mut cols = self.columns();
        cols.extend(other.columns());
        Ok(Lattice::from_columns(&cols, ctx)? == *self)
    }

    /// `L + Z_p·v`.
    pub(crate) fn with_vector(&self, v: &[i128], ctx: &PrimeContext) -> Result<Self> {
        let mut cols = self.columns();
        cols.push(v.to_vec());
        Lattice::from_columns(&cols, ctx)
    }

    /// The representative of the homothety class lying in `Z_p^n` but not in
    /// `p·Z_p^n`.
    pub(crate) fn normalized(&self, ctx: &PrimeContext) -> LatticeClass {
        let shift = self.entries.iter().map(|&x| val(x, ctx)).min().unwrap_or(0);
        let f = ctx.pow(shift);
        LatticeClass {
            n: self.n,
            hnf: self.entries.iter().map(|&x| (x / f) as i64).collect(),
        }
    }
}

/// Homothety class of lattices, i.e. a vertex of the building.
///
/// The stored representative `L` satisfies `L ⊆ Z_p^n`, `L ⊄ p·Z_p^n`; its
/// Hermite form is the canonical form, so equal classes compare equal.
/// Ordering is lexicographic on the row-major Hermite form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeClass {
    n: usize,
    hnf: Vec<i64>,
}

impl LatticeClass {
    /// The class of the lattice spanned by the given integer columns.
    pub fn from_columns(columns: &[Vec<i128>], ctx: &PrimeContext) -> Result<Self> {
        Ok(Lattice::from_columns(columns, ctx)?.normalized(ctx))
    }

    /// Class of the diagonal lattice `⊕ p^{a_i} Z_p e_i`.
    pub fn diagonal(exponents: &[u32], ctx: &PrimeContext) -> Result<Self> {
        if exponents.len() != ctx.n {
            return Err(Error::UnsupportedDimension(exponents.len()));
        }
        let cols: Vec<Vec<i128>> = exponents
            .iter()
            .enumerate()
            .map(|(j, &a)| {
                let mut c = vec![0i128; ctx.n];
                c[j] = ctx.pow(a);
                c
            })
            .collect();
        LatticeClass::from_columns(&cols, ctx)
    }

    pub fn standard(ctx: &PrimeContext) -> Self {
        LatticeClass::diagonal(&vec![0; ctx.n], ctx).expect("standard lattice")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Row-major Hermite form of the canonical representative.
    pub fn hnf(&self) -> &[i64] {
        &self.hnf
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.hnf.chunks(self.n).map(<[i64]>::to_vec).collect()
    }

    pub(crate) fn lattice(&self) -> Lattice {
        Lattice {
            n: self.n,
            entries: self.hnf.iter().map(|&x| x as i128).collect(),
        }
    }

    /// Exponents of the diagonal of the Hermite form.
    pub fn diagonal_exponents(&self, ctx: &PrimeContext) -> Vec<u32> {
        let l = self.lattice();
        (0..self.n).map(|i| val(l.get(i, i), ctx)).collect()
    }

    /// Elementary divisor exponents of `L ⊆ Z_p^n` for the canonical
    /// representative.
    pub fn elementary_divisors(&self, ctx: &PrimeContext) -> Vec<u32> {
        elementary_divisors(&self.lattice().rows(), ctx)
    }
}

/// Type of a vertex: the sum of the elementary divisor exponents of
/// `Z_p^n / L` (for a representative `L ⊆ Z_p^n`), reduced mod `n`.
pub fn vertex_label(class: &LatticeClass, ctx: &PrimeContext) -> usize {
    let total: u32 = class.elementary_divisors(ctx).iter().sum();
    total as usize % ctx.n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, n: usize) -> PrimeContext {
        PrimeContext::new(p, n, 8).unwrap()
    }

    #[test]
    fn standard_forms() {
        let c = ctx(2, 2);
        assert_eq!(LatticeClass::standard(&c).hnf(), &[1, 0, 0, 1]);
        assert_eq!(LatticeClass::diagonal(&[0, 1], &c).unwrap().hnf(), &[1, 0, 0, 2]);
        // homothety: p·L_0 is L_0
        assert_eq!(LatticeClass::diagonal(&[1, 1], &c).unwrap(), LatticeClass::standard(&c));
        assert_eq!(
            LatticeClass::diagonal(&[3, 4], &c).unwrap(),
            LatticeClass::diagonal(&[0, 1], &c).unwrap()
        );
    }

    #[test]
    fn hnf_is_canonical() {
        let c = ctx(3, 2);
        // the same lattice from different generators
        let a = LatticeClass::from_columns(&[vec![1, 2], vec![0, 3]], &c).unwrap();
        let b = LatticeClass::from_columns(&[vec![4, 5], vec![0, 9], vec![2, 1]], &c).unwrap();
        let d = LatticeClass::from_columns(&[vec![-2, -1], vec![3, 0]], &c).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, d);
        let rows = a.rows();
        assert_eq!(rows[1][0], 0);
        assert!(rows[0][1] >= 0 && rows[0][1] < rows[0][0]);
    }

    #[test]
    fn entries_are_reduced() {
        let c = ctx(2, 3);
        let l = LatticeClass::from_columns(&[vec![7, 3, 4], vec![5, 6, 2], vec![1, 1, 8]], &c).unwrap();
        let rows = l.rows();
        for i in 0..3 {
            let d = rows[i][i];
            assert!(d > 0 && (d as u64).is_power_of_two());
            for j in 0..3 {
                if j < i {
                    assert_eq!(rows[i][j], 0);
                } else if j > i {
                    assert!(rows[i][j] >= 0 && rows[i][j] < d);
                }
            }
        }
    }

    #[test]
    fn elementary_divisors_of_diagonal() {
        let c = ctx(2, 3);
        let l = LatticeClass::diagonal(&[2, 0, 1], &c).unwrap();
        assert_eq!(l.elementary_divisors(&c), vec![0, 1, 2]);
        // non-diagonal with cyclic quotient of order 4
        let m = LatticeClass::from_columns(&[vec![2, 0], vec![1, 2]], &ctx(2, 2)).unwrap();
        assert_eq!(m.elementary_divisors(&ctx(2, 2)), vec![0, 2]);
    }

    #[test]
    fn labels() {
        let c = ctx(2, 2);
        assert_eq!(vertex_label(&LatticeClass::standard(&c), &c), 0);
        assert_eq!(vertex_label(&LatticeClass::diagonal(&[1, 1], &c).unwrap(), &c), 0);
        assert_eq!(vertex_label(&LatticeClass::diagonal(&[0, 1], &c).unwrap(), &c), 1);
        let c3 = ctx(2, 3);
        assert_eq!(vertex_label(&LatticeClass::diagonal(&[0, 1, 1], &c3).unwrap(), &c3), 2);
    }

    #[test]
    fn precision_is_enforced() {
        let c = PrimeContext::new(2, 2, 4).unwrap();
        assert!(LatticeClass::diagonal(&[0, 3], &c).is_ok());
        assert_eq!(LatticeClass::diagonal(&[0, 4], &c), Err(Error::Precision(4)));
        // all triangular exponents small but one elementary divisor too large
        assert_eq!(
            LatticeClass::from_columns(&[vec![2, 0], vec![1, 8]], &c),
            Err(Error::Precision(4))
        );
    }

    #[test]
    fn containment() {
        let c = ctx(2, 2);
        let big = LatticeClass::standard(&c).lattice();
        let small = LatticeClass::diagonal(&[0, 1], &c).unwrap().lattice();
        assert!(big.contains(&small, &c).unwrap());
        assert!(!small.contains(&big, &c).unwrap());
        assert_eq!(small.det_valuation(&c), 1);
    }
}
