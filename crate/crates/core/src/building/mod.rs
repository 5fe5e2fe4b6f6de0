//! The Bruhat–Tits building of `GL(n, Q_p)`, `n ∈ {2, 3}`, as lattice flags.
//!
//! Vertices are homothety classes of lattices, chambers are cyclic flags of
//! `n` classes. The standard chamber is the flag of
//! `L_k = Z_p e_1 + … + Z_p e_{n−k} + p Z_p e_{n−k+1} + … + p Z_p e_n`.

mod ball;
mod chamber;
mod lattice;
mod matrix;

use num_traits::Zero;
use serde::Serialize;

pub use ball::{BallGraph, BallJson, FaceEntry};
pub use chamber::{chambers_containing, face_type_of_label, label_of_face_type, Face, FlagChamber};
pub use lattice::{vertex_label, LatticeClass};
pub use matrix::GlMatrix;

use crate::exact::{self, Rational};
use crate::{Error, Result};

/// Prime, dimension and working precision `p^P` for lattice arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeContext {
    pub p: u64,
    pub n: usize,
    pub precision: u32,
    #[serde(skip)]
    modulus: i128,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl PrimeContext {
    pub fn new(p: u64, n: usize, precision: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !(2..=3).contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        if precision == 0 {
            return Err(Error::Precision(0));
        }
        let mut modulus: i128 = 1;
        for _ in 0..precision {
            modulus = modulus
                .checked_mul(p as i128)
                .filter(|m| *m < 1 << 62)
                .ok_or(Error::Precision(precision))?;
        }
        Ok(PrimeContext { p, n, precision, modulus })
    }

    /// Context whose precision covers every lattice met while building a
    /// ball of the given radius around the standard chamber.
    pub fn for_radius(p: u64, n: usize, radius: usize) -> Result<Self> {
        PrimeContext::new(p, n, (radius + n + 3) as u32)
    }

    pub(crate) fn pow(&self, k: u32) -> i128 {
        (self.p as i128).pow(k)
    }
}

/// The standard chamber `{[L_0], …, [L_{n−1}]}`.
pub fn standard_chamber(ctx: &PrimeContext) -> FlagChamber {
    let n = ctx.n;
    let vertices = (0..n)
        .map(|k| {
            let exps: Vec<u32> = (0..n).map(|i| u32::from(i >= n - k)).collect();
            LatticeClass::diagonal(&exps, ctx).expect("standard lattice")
        })
        .collect();
    FlagChamber::from_vertices(vertices, ctx).expect("standard flag")
}

/// Image of a lattice class under `g ∈ GL(n, Q)`.
pub fn act_on_class(g: &GlMatrix, class: &LatticeClass, ctx: &PrimeContext) -> Result<LatticeClass> {
    if g.dim() != ctx.n || class.dim() != ctx.n {
        return Err(Error::UnsupportedDimension(g.dim()));
    }
    if g.det().is_zero() {
        return Err(Error::Singular);
    }
    let columns: Vec<Vec<Rational>> = (0..ctx.n)
        .map(|j| {
            let col: Vec<Rational> = class.rows().iter().map(|r| exact::int(r[j])).collect();
            g.apply(&col)
        })
        .collect();
    let shift = columns
        .iter()
        .flatten()
        .filter_map(|x| exact::valuation(x, ctx.p))
        .min()
        .ok_or(Error::Singular)?;
    let scale = exact::powi(&exact::int(ctx.p as i64), -shift);
    let m = num_bigint::BigInt::from(ctx.modulus);
    let to_int = |x: &Rational| -> i128 {
        let y = x * &scale;
        let num: i128 = ((y.numer() % &m + &m) % &m).try_into().expect("reduced");
        let den: i128 = ((y.denom() % &m + &m) % &m).try_into().expect("reduced");
        (num * lattice::unit_inverse(den, ctx)).rem_euclid(ctx.modulus)
    };
    let int_cols: Vec<Vec<i128>> = columns.iter().map(|c| c.iter().map(to_int).collect()).collect();
    LatticeClass::from_columns(&int_cols, ctx)
}

/// Image of a chamber under `g`.
pub fn act_on_chamber(g: &GlMatrix, chamber: &FlagChamber, ctx: &PrimeContext) -> Result<FlagChamber> {
    let vertices = chamber
        .vertices()
        .iter()
        .map(|v| act_on_class(g, v, ctx))
        .collect::<Result<Vec<_>>>()?;
    FlagChamber::from_vertices(vertices, ctx)
}

/// The sign character `ε(g)`, computed from the labelling and from the
/// determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Epsilon {
    /// Signature of the permutation `g` induces on vertex types.
    pub from_labels: i8,
    /// `(−1)^{(n−1)·v_p(det g)}`.
    pub from_determinant: i8,
}

fn permutation_sign(perm: &[usize]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1i8;
    for start in 0..perm.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

pub fn epsilon(g: &GlMatrix, ctx: &PrimeContext) -> Result<Epsilon> {
    let c0 = standard_chamber(ctx);
    let perm = c0
        .vertices()
        .iter()
        .map(|v| act_on_class(g, v, ctx).map(|w| vertex_label(&w, ctx)))
        .collect::<Result<Vec<usize>>>()?;
    let v = exact::valuation(&g.det(), ctx.p).ok_or(Error::Singular)?;
    let exponent = (ctx.n as i64 - 1) * v;
    Ok(Epsilon {
        from_labels: permutation_sign(&perm),
        from_determinant: if exponent.rem_euclid(2) == 0 { 1 } else { -1 },
    })
}

/// Monomial matrix realizing the generator `s_i` of `Ã_{n−1}`: the
/// transposition of `e_i, e_{i+1}` for `i ≥ 1`, and `s_0 = Π s_1 Π^{−1}`.
pub fn affine_generator_matrix(s: usize, ctx: &PrimeContext) -> Result<GlMatrix> {
    let n = ctx.n;
    let swap = |i: usize| {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i - 1, i);
        GlMatrix::permutation(&perm)
    };
    match s {
        0 => {
            let pi = GlMatrix::pi(n, ctx.p);
            Ok(pi.mul(&swap(1)).mul(&pi.inverse()?))
        }
        s if s < n => Ok(swap(s)),
        s => Err(Error::UnknownGenerator(s)),
    }
}

/// Matrix of a word in the affine generators, multiplied left to right.
pub fn word_matrix(word: &[usize], ctx: &PrimeContext) -> Result<GlMatrix> {
    word.iter().try_fold(GlMatrix::identity(ctx.n), |acc, &s| {
        Ok(acc.mul(&affine_generator_matrix(s, ctx)?))
    })
}

/// `w·C_0` for a word `w` in the generators of `Ã_{n−1}`.
pub fn weyl_to_chamber(word: &[usize], ctx: &PrimeContext) -> Result<FlagChamber> {
    act_on_chamber(&word_matrix(word, ctx)?, &standard_chamber(ctx), ctx)
}

/// Neighbors of a vertex of the tree (`n = 2`).
pub fn tree_neighbors(v: &LatticeClass, ctx: &PrimeContext) -> Result<Vec<LatticeClass>> {
    if ctx.n != 2 {
        return Err(Error::UnsupportedDimension(ctx.n));
    }
    let face = Face::from_vertices(vec![v.clone()], ctx)?;
    let missing = face.missing_label();
    Ok(chambers_containing(&face, ctx)?
        .into_iter()
        .map(|c| c.vertex(missing).clone())
        .collect())
}

/// Whether two vertices of the tree span an edge.
pub fn tree_adjacent(a: &LatticeClass, b: &LatticeClass, ctx: &PrimeContext) -> Result<bool> {
    if ctx.n != 2 {
        return Err(Error::UnsupportedDimension(ctx.n));
    }
    if vertex_label(a, ctx) == vertex_label(b, ctx) {
        return Ok(false);
    }
    match FlagChamber::from_vertices(vec![a.clone(), b.clone()], ctx) {
        Ok(_) => Ok(true),
        Err(Error::InvalidChamber(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// `true` if `g` lies in the standard Iwahori subgroup: integral, invertible
/// over `Z_p`, upper triangular mod `p`.
pub fn in_standard_iwahori(g: &GlMatrix, ctx: &PrimeContext) -> bool {
    let integral = |x: &Rational| x.is_zero() || exact::valuation(x, ctx.p).is_some_and(|v| v >= 0);
    let n = ctx.n;
    (0..n).all(|i| (0..n).all(|j| integral(g.get(i, j))))
        && (0..n).all(|i| (0..i).all(|j| g.get(i, j).is_zero() || exact::valuation(g.get(i, j), ctx.p).is_some_and(|v| v >= 1)))
        && exact::valuation(&g.det(), ctx.p) == Some(0)
}

#[cfg(test)]
mod tests;
