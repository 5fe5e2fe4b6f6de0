//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use steinberg::building::{act_on_chamber, affine_generator_matrix, standard_chamber, BallGraph, FlagChamber, GlMatrix, PrimeContext};
use steinberg::exact::{int, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Exponents of the finite Weyl groups, written out by hand.
pub fn exponents(label: &str) -> &'static [u64] {
    match label {
        "A1~" => &[1],
        "A2~" => &[1, 2],
        "A3~" => &[1, 2, 3],
        "C2~" => &[1, 3],
        "G2~" => &[1, 5],
        _ => panic!("no exponents for {label}"),
    }
}

/// `Π_i (1 + X + … + X^{m_i}) · Σ_j X^{j m_i}` truncated at degree `K`,
/// in plain integer arithmetic.
pub fn bott_series(label: &str, cutoff: usize) -> Vec<u64> {
    let mut series = vec![0u64; cutoff + 1];
    series[0] = 1;
    for &m in exponents(label) {
        let m = m as usize;
        let mut next = vec![0u64; cutoff + 1];
        for (i, &c) in series.iter().enumerate() {
            for j in 0..=m {
                if i + j <= cutoff {
                    next[i + j] += c;
                }
            }
        }
        for k in m..=cutoff {
            next[k] += next[k - m];
        }
        series = next;
    }
    series
}

/// `Π_i (1 − x^{m_i+1}) / ((1 − x)(1 − x^{m_i}))` at a rational point.
pub fn bott_value(label: &str, x: &Rational) -> Rational {
    let one = int(1);
    exponents(label).iter().fold(int(1), |acc, &m| {
        let pw = |k: u64| num_traits::pow(x.clone(), k as usize);
        acc * (&one - pw(m + 1)) / ((&one - x) * (&one - pw(m)))
    })
}

/// Rank of a 0/1 matrix modulo a large prime; full rank there implies full
/// rank over Q.
pub fn rank_mod_prime(mut rows: Vec<Vec<u64>>, cols: usize) -> usize {
    const P: u64 = 1_000_000_007;
    let inv = |a: u64| {
        let (mut b, mut e, mut r) = (a % P, P - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| !rows[i][c].is_multiple_of(P)) else {
            continue;
        };
        rows.swap(rank, piv);
        let iv = inv(rows[rank][c]);
        let pivot: Vec<u64> = rows[rank].iter().map(|x| x * iv % P).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[c];
            if f != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + P - f * y % P) % P;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// `u_s(a)`: the root-group element with `I s I = ⊔_a u_s(a)·ŝ·I`.
pub fn root_element(s: usize, a: i64, ctx: &PrimeContext) -> GlMatrix {
    let n = ctx.n;
    if s == 0 {
        let pi = GlMatrix::pi(n, ctx.p);
        pi.mul(&GlMatrix::elementary(n, 0, 1, int(a))).mul(&pi.inverse().unwrap())
    } else {
        GlMatrix::elementary(n, s - 1, s, int(a))
    }
}

/// For every chamber of the ball, a matrix `g` with `g·C_0` equal to it,
/// found by walking galleries `g ↦ g·u_s(a)·ŝ`.
pub fn chamber_matrices(ball: &BallGraph) -> HashMap<FlagChamber, GlMatrix> {
    let ctx = *ball.context();
    let c0 = standard_chamber(&ctx);
    let mut out = HashMap::from([(c0.clone(), GlMatrix::identity(ctx.n))]);
    let mut layer = vec![c0];
    for _ in 0..ball.radius() {
        let mut next = Vec::new();
        for c in &layer {
            let g = out[c].clone();
            for s in 0..ctx.n {
                let hat = affine_generator_matrix(s, &ctx).unwrap();
                for a in 0..ctx.p as i64 {
                    let h = g.mul(&root_element(s, a, &ctx)).mul(&hat);
                    let d = act_on_chamber(&h, &standard_chamber(&ctx), &ctx).unwrap();
                    if !out.contains_key(&d) {
                        out.insert(d.clone(), h);
                        next.push(d);
                    }
                }
            }
        }
        layer = next;
    }
    out
}

/// The chambers in relative position `s` to `g·C_0`, from the coset
/// decomposition rather than from faces.
pub fn s_neighbors(g: &GlMatrix, s: usize, ctx: &PrimeContext) -> Vec<FlagChamber> {
    let hat = affine_generator_matrix(s, ctx).unwrap();
    (0..ctx.p as i64)
        .map(|a| {
            let h = g.mul(&root_element(s, a, ctx)).mul(&hat);
            act_on_chamber(&h, &standard_chamber(ctx), ctx).unwrap()
        })
        .collect()
}
