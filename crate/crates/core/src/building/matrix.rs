use num_traits::{One, Zero};

use crate::exact::{self, Rational};
use crate::{Error, Result};

/// Square matrix over Q acting on `Q_p^n` through column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GlMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl GlMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Singular);
        }
        Ok(GlMatrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        GlMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| exact::int(x)).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = GlMatrix { n, entries: vec![Rational::zero(); n * n] };
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        let mut m = GlMatrix::identity(n);
        for i in 0..n {
            m.entries[i * n + i] = c.clone();
        }
        m
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let mut m = GlMatrix::identity(d.len());
        for (i, x) in d.iter().enumerate() {
            m.entries[i * d.len() + i] = x.clone();
        }
        m
    }

    /// Permutation matrix sending `e_j` to `e_{perm[j]}`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = GlMatrix { n, entries: vec![Rational::zero(); n * n] };
        for (j, &i) in perm.iter().enumerate() {
            m.entries[i * n + j] = Rational::one();
        }
        m
    }

    /// `1 + c·E_{ij}`.
    pub fn elementary(n: usize, i: usize, j: usize, c: Rational) -> Self {
        let mut m = GlMatrix::identity(n);
        m.entries[i * n + j] += c;
        m
    }

    /// `Π` with `Π e_1 = p e_n` and `Π e_j = e_{j−1}`; it rotates the
    /// standard chamber, `Π·[L_i] = [L_{i+1}]`.
    pub fn pi(n: usize, p: u64) -> Self {
        let mut m = GlMatrix { n, entries: vec![Rational::zero(); n * n] };
        for j in 1..n {
            m.entries[(j - 1) * n + j] = Rational::one();
        }
        m.entries[(n - 1) * n] = exact::int(p as i64);
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.n).map(<[Rational]>::to_vec).collect()
    }

    pub fn mul(&self, other: &GlMatrix) -> GlMatrix {
        let n = self.n;
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * &other.entries[k * n + j];
                }
            }
        }
        GlMatrix { n, entries }
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| &self.entries[i * self.n + j] * &v[j]).sum())
            .collect()
    }

    pub fn det(&self) -> Rational {
        let (_, det) = self.eliminate();
        det
    }

    pub fn inverse(&self) -> Result<GlMatrix> {
        let (inv, det) = self.eliminate();
        if det.is_zero() {
            Err(Error::Singular)
        } else {
            Ok(inv)
        }
    }

    /// Gauss–Jordan; returns the inverse (garbage when singular) and the
    /// determinant.
    fn eliminate(&self) -> (GlMatrix, Rational) {
        let n = self.n;
        let mut a = self.rows();
        let mut inv = GlMatrix::identity(n).rows();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return (GlMatrix::identity(n), Rational::zero());
            };
            if piv != col {
                a.swap(piv, col);
                inv.swap(piv, col);
                det = -det;
            }
            let d = a[col][col].clone();
            det *= &d;
            for j in 0..n {
                a[col][j] /= &d;
                inv[col][j] /= &d;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..n {
                        let (x, y) = (a[col][j].clone(), inv[col][j].clone());
                        a[r][j] -= &f * x;
                        inv[r][j] -= &f * y;
                    }
                }
            }
        }
        (GlMatrix { n, entries: inv.into_iter().flatten().collect() }, det)
    }
}
