//! Closed form of the Poincaré series of an affine Weyl group.
//!
//! `P(X) = Σ_w X^{l(w)} = Π_i (1 − X^{m_i+1}) / ((1 − X)(1 − X^{m_i}))`, the
//! product running over the exponents `m_i` of the spherical Weyl group.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coxeter::{AffineTypeLabel, Family};
use crate::exact::{self, Rational, RationalJson};
use crate::{Error, Result};

/// Dense univariate polynomial with integer coefficients, lowest degree
/// first, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Poly::from_i64(&[1])
    }

    /// `1 − X^k`.
    pub fn one_minus_power(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[0] = BigInt::one();
        c[k] -= 1;
        Poly::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::new(vec![]);
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    }
}

type QPoly = Vec<Rational>;

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn to_q(p: &Poly) -> QPoly {
    p.coeffs.iter().cloned().map(Rational::from_integer).collect()
}

/// Remainder of `a` by nonzero `b` over Q.
fn q_rem(mut a: QPoly, b: &QPoly) -> QPoly {
    let lead = b.last().expect("nonzero divisor").clone();
    while a.len() >= b.len() && !a.is_empty() {
        let shift = a.len() - b.len();
        let f = a.last().unwrap().clone() / &lead;
        for (i, c) in b.iter().enumerate() {
            a[shift + i] -= &f * c;
        }
        trim(&mut a);
    }
    a
}

/// Exact quotient of `a` by nonzero `b` over Q (remainder discarded).
fn q_div(mut a: QPoly, b: &QPoly) -> QPoly {
    let lead = b.last().expect("nonzero divisor").clone();
    if a.len() < b.len() {
        return vec![];
    }
    let mut q = vec![Rational::zero(); a.len() - b.len() + 1];
    while a.len() >= b.len() && !a.is_empty() {
        let shift = a.len() - b.len();
        let f = a.last().unwrap().clone() / &lead;
        for (i, c) in b.iter().enumerate() {
            a[shift + i] -= &f * c;
        }
        q[shift] = f;
        trim(&mut a);
    }
    q
}

fn q_gcd(mut a: QPoly, mut b: QPoly) -> QPoly {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = q_rem(a, &b);
        a = b;
        b = r;
    }
    a
}

/// Ratio of two integer polynomials in lowest terms.
///
/// Canonical form: no common polynomial factor, the coefficients of numerator
/// and denominator together have gcd 1, and the lowest nonzero coefficient
/// of the denominator is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    numerator: Poly,
    denominator: Poly,
}

impl RationalFunction {
    pub fn new(numerator: Poly, denominator: Poly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::Pole("identically zero denominator".into()));
        }
        let (n, d) = (to_q(&numerator), to_q(&denominator));
        let g = q_gcd(n.clone(), d.clone());
        let (n, d) = (q_div(n, &g), q_div(d, &g));

        let lcm = n
            .iter()
            .chain(&d)
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled = |p: &QPoly| -> Vec<BigInt> {
            p.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect()
        };
        let (mut n, mut d) = (scaled(&n), scaled(&d));
        let content = n.iter().chain(&d).fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let lowest = d.iter().find(|c| !c.is_zero()).expect("nonzero denominator");
        let unit = if lowest.is_negative() { -content } else { content };
        for c in n.iter_mut().chain(d.iter_mut()) {
            *c /= &unit;
        }
        Ok(RationalFunction {
            numerator: Poly::new(n),
            denominator: Poly::new(d),
        })
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denominator(&self) -> &Poly {
        &self.denominator
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            self.numerator.mul(&other.numerator),
            self.denominator.mul(&other.denominator),
        )
        .expect("product of nonzero denominators")
    }
}

/// Exponents `m_1 ≤ … ≤ m_r` of the spherical Weyl group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentTable {
    pub label: AffineTypeLabel,
    pub exponents: Vec<u32>,
}

pub fn exponents_for(label: AffineTypeLabel) -> Result<ExponentTable> {
    let label = AffineTypeLabel::new(label.family, label.rank)?;
    let l = label.rank as u32;
    let mut exponents: Vec<u32> = match label.family {
        Family::A => (1..=l).collect(),
        Family::B | Family::C => (1..=l).map(|i| 2 * i - 1).collect(),
        Family::D => (1..l).map(|i| 2 * i - 1).chain([l - 1]).collect(),
        Family::E => match l {
            6 => vec![1, 4, 5, 7, 8, 11],
            7 => vec![1, 5, 7, 9, 11, 13, 17],
            _ => vec![1, 7, 11, 13, 17, 19, 23, 29],
        },
        Family::F => vec![1, 5, 7, 11],
        Family::G => vec![1, 5],
    };
    exponents.sort_unstable();
    Ok(ExponentTable { label, exponents })
}

/// `Π_i (1 − X^{m_i+1}) / ((1 − X)(1 − X^{m_i}))` in lowest terms.
pub fn bott_rational(table: &ExponentTable) -> Result<RationalFunction> {
    if table.exponents.is_empty() {
        return Err(Error::EmptyExponents);
    }
    let mut num = Poly::one();
    let mut den = Poly::one();
    for &m in &table.exponents {
        let m = m as usize;
        num = num.mul(&Poly::one_minus_power(m + 1));
        den = den.mul(&Poly::one_minus_power(1)).mul(&Poly::one_minus_power(m));
    }
    RationalFunction::new(num, den)
}

/// Coefficients `c_0..=c_K` of a power-series expansion at 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesTruncation {
    pub coefficients: Vec<Rational>,
}

impl SeriesTruncation {
    /// The coefficients as integers, if they all are.
    pub fn as_integers(&self) -> Option<Vec<BigInt>> {
        self.coefficients
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

pub fn expand(rf: &RationalFunction, cutoff: usize) -> Result<SeriesTruncation> {
    let d0 = rf.denominator.coeff(0);
    if d0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let d0 = Rational::from_integer(d0);
    let mut c: Vec<Rational> = Vec::with_capacity(cutoff + 1);
    for k in 0..=cutoff {
        let mut acc = Rational::from_integer(rf.numerator.coeff(k));
        for j in 1..=k.min(rf.denominator.degree().unwrap_or(0)) {
            acc -= Rational::from_integer(rf.denominator.coeff(j)) * &c[k - j];
        }
        c.push(acc / &d0);
    }
    Ok(SeriesTruncation { coefficients: c })
}

pub fn evaluate(rf: &RationalFunction, x: &Rational) -> Result<Rational> {
    let d = rf.denominator.eval(x);
    if d.is_zero() {
        return Err(Error::Pole(exact::to_text(x)));
    }
    Ok(rf.numerator.eval(x) / d)
}

/// `P(1/q) − Σ_{k≤K} N(k) q^{−k}`: what the absolute series still owes
/// after `K` terms.
pub fn absolute_tail(table: &ExponentTable, q: u64, cutoff: usize) -> Result<Rational> {
    if q < 2 {
        return Err(Error::InvalidQ(q.to_string()));
    }
    let rf = bott_rational(table)?;
    let x = exact::rat(1, q as i64);
    let total = evaluate(&rf, &x)?;
    let series = expand(&rf, cutoff)?;
    let partial = series
        .coefficients
        .iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (k, c)| acc + c * exact::powi(&x, k as i64));
    Ok(total - partial)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFunctionJson {
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
}

impl From<&RationalFunction> for RationalFunctionJson {
    fn from(rf: &RationalFunction) -> Self {
        let strs = |p: &Poly| p.coeffs.iter().map(ToString::to_string).collect();
        RationalFunctionJson {
            numerator: strs(&rf.numerator),
            denominator: strs(&rf.denominator),
        }
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RationalFunctionJson::from(self).serialize(s)
    }
}

impl Serialize for SeriesTruncation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<RationalJson> = self.coefficients.iter().map(RationalJson::from).collect();
        v.serialize(s)
    }
}
