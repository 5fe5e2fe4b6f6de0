//! Harmonic cochains on the chambers of a building ball.
//!
//! A cochain is harmonic when its values over the chambers through any
//! codimension-one face sum to zero. The Iwahori-fixed vector
//! `f(C) = (−1/q)^{d(C_0, C)}` is kept as a rule rather than a table.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::building::{BallGraph, Face, FlagChamber};
use crate::exact::{self, Rational, RationalJson};
use crate::{Error, Exec, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cochain {
    /// Finitely many nonzero values.
    Map(BTreeMap<FlagChamber, Rational>),
    /// `C ↦ (−1/q)^{d(base, C)}`.
    Iwahori { base: FlagChamber, q: u64 },
}

impl Cochain {
    pub fn zero() -> Self {
        Cochain::Map(BTreeMap::new())
    }

    /// Drops zero values; repeated chambers are summed.
    pub fn from_values(values: impl IntoIterator<Item = (FlagChamber, Rational)>) -> Self {
        let mut map: BTreeMap<FlagChamber, Rational> = BTreeMap::new();
        for (c, v) in values {
            *map.entry(c).or_insert_with(Rational::zero) += v;
        }
        map.retain(|_, v| !v.is_zero());
        Cochain::Map(map)
    }

    pub fn indicator(c: &FlagChamber) -> Self {
        Cochain::from_values([(c.clone(), Rational::one())])
    }

    /// `g_D`: 1 on every chamber through the face, which must be interior.
    pub fn face_indicator(face: &Face, ball: &BallGraph) -> Result<Self> {
        let entry = interior_entry(face, ball)?;
        Ok(Cochain::from_values(
            entry.chambers.iter().map(|&i| (ball.chamber(i).clone(), Rational::one())),
        ))
    }

    pub fn value(&self, c: &FlagChamber, ball: &BallGraph) -> Result<Rational> {
        match self {
            Cochain::Map(m) => Ok(m.get(c).cloned().unwrap_or_else(Rational::zero)),
            Cochain::Iwahori { .. } => {
                let i = ball.index_of(c).ok_or(Error::ChamberOutsideBall)?;
                self.value_at(i, ball)
            }
        }
    }

    /// Value at the chamber with index `i` in `ball`.
    pub fn value_at(&self, i: usize, ball: &BallGraph) -> Result<Rational> {
        match self {
            Cochain::Map(m) => Ok(m.get(ball.chamber(i)).cloned().unwrap_or_else(Rational::zero)),
            Cochain::Iwahori { base, q } => {
                if base != ball.base() {
                    return Err(Error::BaseMismatch);
                }
                Ok(exact::powi(&exact::rat(-1, *q as i64), ball.distance(i) as i64))
            }
        }
    }

    /// `(chamber, value)` pairs: the stored entries, or every chamber of the
    /// ball for a rule.
    pub fn to_json(&self, ball: &BallGraph) -> Result<Vec<CochainEntryJson>> {
        let entry = |c: &FlagChamber, v: &Rational| CochainEntryJson {
            chamber: c.vertices().iter().map(|x| x.rows()).collect(),
            value: v.into(),
        };
        match self {
            Cochain::Map(m) => Ok(m.iter().map(|(c, v)| entry(c, v)).collect()),
            Cochain::Iwahori { .. } => (0..ball.len())
                .map(|i| Ok(entry(ball.chamber(i), &self.value_at(i, ball)?)))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainEntryJson {
    pub chamber: Vec<Vec<Vec<i64>>>,
    pub value: RationalJson,
}

/// The Iwahori-fixed harmonic cochain normalized by `f(base) = 1`.
pub fn iwahori_vector(base: &FlagChamber, q: u64) -> Result<Cochain> {
    if q < 2 {
        return Err(Error::InvalidQ(q.to_string()));
    }
    Ok(Cochain::Iwahori { base: base.clone(), q })
}

fn interior_entry<'a>(face: &Face, ball: &'a BallGraph) -> Result<&'a crate::building::FaceEntry> {
    ball.face_entry(face)
        .filter(|e| e.interior)
        .ok_or(Error::FaceNotInterior)
}

/// `Σ_{C ⊃ D} f(C)` over all chambers through an interior face `D`.
pub fn harmonicity_defect(f: &Cochain, face: &Face, ball: &BallGraph) -> Result<Rational> {
    let entry = interior_entry(face, ball)?;
    entry.chambers.iter().try_fold(Rational::zero(), |acc, &i| Ok(acc + f.value_at(i, ball)?))
}

/// Outcome of checking harmonicity at every interior face of a ball.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefectScan {
    pub faces: usize,
    pub nonzero: usize,
}

pub fn defect_scan(f: &Cochain, ball: &BallGraph, exec: Exec) -> Result<DefectScan> {
    let faces: Vec<&Face> = ball.interior_faces().map(|e| &e.face).collect();
    let defects = exec.try_map(&faces, |face| harmonicity_defect(f, face, ball))?;
    Ok(DefectScan {
        faces: faces.len(),
        nonzero: defects.iter().filter(|d| !d.is_zero()).count(),
    })
}

/// The chamber through an interior face closest to the base, and its
/// distance `δ`. Every other chamber through the face must be at `δ + 1`.
pub fn min_distance_chamber(face: &Face, ball: &BallGraph) -> Result<(FlagChamber, usize)> {
    let entry = interior_entry(face, ball)?;
    let dists: Vec<usize> = entry.chambers.iter().map(|&i| ball.distance(i)).collect();
    let delta = *dists.iter().min().ok_or(Error::FaceNotInterior)?;
    let at_min: Vec<usize> = entry
        .chambers
        .iter()
        .copied()
        .filter(|&i| ball.distance(i) == delta)
        .collect();
    if at_min.len() != 1 || dists.iter().any(|&d| d != delta && d != delta + 1) {
        return Err(Error::NonUniqueMinimum(dists));
    }
    Ok((ball.chamber(at_min[0]).clone(), delta))
}

/// `max |f|` over the chambers of each distance shell `0..=R`.
pub fn decay_profile(f: &Cochain, ball: &BallGraph) -> Result<Vec<(usize, Rational)>> {
    let mut maxima = vec![Rational::zero(); ball.radius() + 1];
    for i in 0..ball.len() {
        let v = f.value_at(i, ball)?.abs();
        let slot = &mut maxima[ball.distance(i)];
        if v > *slot {
            *slot = v;
        }
    }
    Ok(maxima.into_iter().enumerate().collect())
}

/// Size of the harmonic system with support on chambers at distance
/// `≤ R − 1`, one equation per interior face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
}

impl RigidityReport {
    pub fn kernel_is_trivial(&self) -> bool {
        self.rank == self.unknowns
    }
}

pub fn rigidity_report(ball: &BallGraph) -> RigidityReport {
    let inner: Vec<usize> = (0..ball.len())
        .filter(|&i| ball.distance(i) < ball.radius())
        .collect();
    let column: BTreeMap<usize, usize> = inner.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let rows: Vec<Vec<Rational>> = ball
        .interior_faces()
        .filter_map(|e| {
            let mut row = vec![Rational::zero(); inner.len()];
            let mut any = false;
            for i in &e.chambers {
                if let Some(&k) = column.get(i) {
                    row[k] = Rational::one();
                    any = true;
                }
            }
            any.then_some(row)
        })
        .collect();
    RigidityReport {
        unknowns: inner.len(),
        equations: rows.len(),
        rank: rank(rows, inner.len()),
    }
}

/// Whether the only harmonic cochain supported strictly inside the ball
/// is zero.
pub fn finite_support_rigidity(ball: &BallGraph) -> bool {
    rigidity_report(ball).kernel_is_trivial()
}

fn rank(mut rows: Vec<Vec<Rational>>, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let pivot = rows[r][c].clone();
        let pivot_row: Vec<Rational> = rows[r].iter().map(|x| x / &pivot).collect();
        for row in rows.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x -= &factor * y;
            }
        }
        rows[r] = pivot_row;
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::{standard_chamber, PrimeContext};
    use crate::exact::{int, rat};

    fn tree(p: u64, r: usize) -> BallGraph {
        let ctx = PrimeContext::for_radius(p, 2, r).unwrap();
        BallGraph::build(&standard_chamber(&ctx), r, &ctx).unwrap()
    }

    #[test]
    fn iwahori_values() {
        let b = tree(2, 3);
        let f = iwahori_vector(b.base(), 2).unwrap();
        assert_eq!(f.value(b.base(), &b).unwrap(), int(1));
        for i in 0..b.len() {
            let expected = [int(1), rat(-1, 2), rat(1, 4), rat(-1, 8)][b.distance(i)].clone();
            assert_eq!(f.value_at(i, &b).unwrap(), expected);
        }
        assert_eq!(iwahori_vector(b.base(), 1), Err(Error::InvalidQ("1".into())));
    }

    #[test]
    fn defects() {
        let b = tree(2, 3);
        let f = iwahori_vector(b.base(), 2).unwrap();
        let face = b.base().face(0);
        assert_eq!(harmonicity_defect(&f, &face, &b).unwrap(), int(0));
        let ind = Cochain::indicator(b.base());
        assert_eq!(harmonicity_defect(&ind, &face, &b).unwrap(), int(1));
        let g = Cochain::face_indicator(&face, &b).unwrap();
        assert_eq!(harmonicity_defect(&g, &face, &b).unwrap(), int(3));
        let scan = defect_scan(&f, &b, Exec::default()).unwrap();
        assert_eq!(scan.nonzero, 0);
        assert!(scan.faces > 0);
    }

    #[test]
    fn boundary_faces_are_rejected() {
        let b = tree(2, 1);
        let outer = b.faces().iter().find(|e| !e.interior).unwrap();
        let f = iwahori_vector(b.base(), 2).unwrap();
        assert_eq!(harmonicity_defect(&f, &outer.face, &b), Err(Error::FaceNotInterior));
    }

    #[test]
    fn minimal_chambers() {
        let b = tree(2, 4);
        assert_eq!(min_distance_chamber(&b.base().face(1), &b).unwrap(), (b.base().clone(), 0));
        for e in b.interior_faces() {
            let (c, d) = min_distance_chamber(&e.face, &b).unwrap();
            assert_eq!(b.distance(b.index_of(&c).unwrap()), d);
        }
    }

    #[test]
    fn decay() {
        let b = tree(2, 4);
        let f = iwahori_vector(b.base(), 2).unwrap();
        let profile = decay_profile(&f, &b).unwrap();
        assert_eq!(profile[4], (4, rat(1, 16)));
        assert!(profile.windows(2).all(|w| w[0].1 >= w[1].1));
        let z = decay_profile(&Cochain::zero(), &b).unwrap();
        assert!(z.iter().all(|(_, v)| v.is_zero()));
    }

    #[test]
    fn rigidity_on_small_balls() {
        assert!(finite_support_rigidity(&tree(2, 3)));
        assert!(finite_support_rigidity(&tree(3, 3)));
        let ctx = PrimeContext::for_radius(2, 3, 2).unwrap();
        let b = BallGraph::build(&standard_chamber(&ctx), 2, &ctx).unwrap();
        let report = rigidity_report(&b);
        assert_eq!(report.unknowns, 7);
        assert!(report.kernel_is_trivial());
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![
            vec![int(1), int(1), int(0)],
            vec![int(0), int(1), int(1)],
            vec![int(1), int(2), int(1)],
        ];
        assert_eq!(rank(rows, 3), 2);
    }

    #[test]
    fn rule_needs_matching_base() {
        let b = tree(2, 2);
        let other = b.chamber(1).clone();
        let f = iwahori_vector(&other, 2).unwrap();
        assert_eq!(f.value_at(0, &b), Err(Error::BaseMismatch));
    }
}
