//! The linear form `Λ(f) = Σ_C f(C)` on the Iwahori-fixed vector.
//!
//! Over the unramified quadratic extension the vector is
//! `f(C) = (−1/q_E)^{d(C_0, C)}` with `q_E = q²`, and the sum runs over the
//! chambers of the building over the base field. There are `N(k)·q^k` of
//! them at distance `k`, so the partial sums are those of `P(−1/q)`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::building::{standard_chamber, BallGraph, PrimeContext};
use crate::coxeter::{affine_diagram, bfs_growth_with, AffineTypeLabel};
use crate::exact::{self, Rational, RationalJson};
use crate::poincare::{absolute_tail, bott_rational, evaluate, exponents_for};
use crate::{Error, Exec, Result};

fn check_q(q: u64) -> Result<()> {
    if q < 2 {
        return Err(Error::InvalidQ(q.to_string()));
    }
    Ok(())
}

/// `S_k = Σ_{j≤k} counts[j]·x^j` for `k = 0..counts.len()`.
pub fn partial_sums(counts: &[u64], x: &Rational) -> Vec<Rational> {
    let mut acc = Rational::zero();
    let mut power = Rational::one();
    counts
        .iter()
        .map(|&c| {
            acc += &power * exact::int(c as i64);
            power *= x;
            acc.clone()
        })
        .collect()
}

/// `S_0, …, S_K` with `S_k = Σ_{j≤k} N(j)(−1/q)^j`, `N` from the Cayley
/// graph.
pub fn lambda_partial(label: AffineTypeLabel, q: u64, cutoff: usize) -> Result<Vec<Rational>> {
    lambda_partial_with(label, q, cutoff, Exec::default())
}

pub fn lambda_partial_with(label: AffineTypeLabel, q: u64, cutoff: usize, exec: Exec) -> Result<Vec<Rational>> {
    check_q(q)?;
    let growth = bfs_growth_with(&affine_diagram(label)?, cutoff, exec)?;
    Ok(partial_sums(&growth.counts, &exact::rat(-1, q as i64)))
}

/// `P(−1/q)`.
pub fn lambda_closed(label: AffineTypeLabel, q: u64) -> Result<Rational> {
    check_q(q)?;
    evaluate(&bott_rational(&exponents_for(label)?)?, &exact::rat(-1, q as i64))
}

/// `P(1/q)`, which bounds `Σ |f(C)|`.
pub fn absolute_majorant(label: AffineTypeLabel, q: u64) -> Result<Rational> {
    check_q(q)?;
    evaluate(&bott_rational(&exponents_for(label)?)?, &exact::rat(1, q as i64))
}

/// `P(1/q) − Σ_{k≤K} N(k) q^{−k}`, a bound for `|S_K − P(−1/q)|`.
pub fn tail_bound(label: AffineTypeLabel, q: u64, cutoff: usize) -> Result<Rational> {
    check_q(q)?;
    absolute_tail(&exponents_for(label)?, q, cutoff)
}

/// `Λ` summed over an enumerated ball, shell by shell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricLambda {
    pub shells: Vec<u64>,
    pub partial_sums: Vec<Rational>,
}

impl GeometricLambda {
    pub fn value(&self) -> &Rational {
        self.partial_sums.last().expect("radius ≥ 0")
    }
}

/// `Σ_{C ∈ ball} (−1/p²)^{d(C_0, C)}` around the standard chamber.
pub fn geometric_lambda(ctx: &PrimeContext, radius: usize) -> Result<GeometricLambda> {
    let ball = BallGraph::build(&standard_chamber(ctx), radius, ctx)?;
    Ok(geometric_lambda_on(&ball))
}

pub fn geometric_lambda_on(ball: &BallGraph) -> GeometricLambda {
    let p = ball.context().p as i64;
    let shells = ball.shell_counts();
    let partial_sums = partial_sums(&shells, &exact::rat(-1, p * p));
    GeometricLambda { shells, partial_sums }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodReport {
    pub label: AffineTypeLabel,
    pub q_f: u64,
    pub q_e: u64,
    pub truncation: usize,
    pub partial_sums: Vec<Rational>,
    pub closed_form: Rational,
    pub tail_bound: Rational,
    pub majorant: Rational,
}

impl PeriodReport {
    pub fn new(label: AffineTypeLabel, q: u64, cutoff: usize) -> Result<Self> {
        PeriodReport::new_with(label, q, cutoff, Exec::default())
    }

    pub fn new_with(label: AffineTypeLabel, q: u64, cutoff: usize, exec: Exec) -> Result<Self> {
        Ok(PeriodReport {
            label,
            q_f: q,
            q_e: q.checked_mul(q).ok_or(Error::InvalidQ(q.to_string()))?,
            truncation: cutoff,
            partial_sums: lambda_partial_with(label, q, cutoff, exec)?,
            closed_form: lambda_closed(label, q)?,
            tail_bound: tail_bound(label, q, cutoff)?,
            majorant: absolute_majorant(label, q)?,
        })
    }

    /// `|S_K − P(−1/q)| ≤ tail bound`.
    pub fn certified(&self) -> bool {
        let last = self.partial_sums.last().expect("K ≥ 0");
        (last - &self.closed_form).abs() <= self.tail_bound
    }

    pub fn to_json(&self) -> PeriodReportJson {
        PeriodReportJson {
            label: self.label,
            q_f: self.q_f,
            q_e: self.q_e,
            truncation: self.truncation,
            partial_sums: self.partial_sums.iter().map(RationalJson::from).collect(),
            closed_form: (&self.closed_form).into(),
            tail_bound: (&self.tail_bound).into(),
            majorant: (&self.majorant).into(),
            certified: self.certified(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PeriodReportJson {
    pub label: AffineTypeLabel,
    pub q_f: u64,
    pub q_e: u64,
    pub truncation: usize,
    pub partial_sums: Vec<RationalJson>,
    pub closed_form: RationalJson,
    pub tail_bound: RationalJson,
    pub majorant: RationalJson,
    pub certified: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn label(s: &str) -> AffineTypeLabel {
        s.parse().unwrap()
    }

    #[test]
    fn partial_sums_a1() {
        let s = lambda_partial(label("A1~"), 2, 4).unwrap();
        assert_eq!(s, vec![int(1), int(0), rat(1, 2), rat(1, 4), rat(3, 8)]);
        assert_eq!(lambda_partial(label("A2~"), 2, 1).unwrap()[1], rat(-1, 2));
        assert_eq!(lambda_partial(label("A2~"), 2, 0).unwrap(), vec![int(1)]);
    }

    #[test]
    fn closed_forms() {
        assert_eq!(lambda_closed(label("A1~"), 2).unwrap(), rat(1, 3));
        assert_eq!(lambda_closed(label("A2~"), 2).unwrap(), rat(1, 3));
        assert_eq!(lambda_closed(label("A1~"), 3).unwrap(), rat(1, 2));
        assert_eq!(lambda_closed(label("A1~"), 1), Err(Error::InvalidQ("1".into())));
    }

    #[test]
    fn majorants() {
        assert_eq!(absolute_majorant(label("A1~"), 2).unwrap(), int(3));
        assert_eq!(absolute_majorant(label("A1~"), 3).unwrap(), int(2));
    }

    #[test]
    fn geometric_examples() {
        let ctx = PrimeContext::for_radius(2, 2, 3).unwrap();
        assert_eq!(geometric_lambda(&ctx, 3).unwrap().value(), &rat(1, 4));
        assert_eq!(geometric_lambda(&ctx, 0).unwrap().value(), &int(1));
        let ctx = PrimeContext::for_radius(2, 3, 2).unwrap();
        assert_eq!(geometric_lambda(&ctx, 2).unwrap().value(), &int(1));
    }

    #[test]
    fn report_is_certified() {
        let r = PeriodReport::new(label("A2~"), 3, 12).unwrap();
        assert_eq!(r.q_e, 9);
        assert!(r.certified());
        let json = r.to_json();
        assert_eq!(json.closed_form, (&r.closed_form).into());
        assert_eq!(json.partial_sums.len(), 13);
    }
}
