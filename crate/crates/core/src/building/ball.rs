use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::chamber::{chambers_containing, Face, FlagChamber};
use super::PrimeContext;
use crate::{Error, Exec, Result};

/// A codimension-one face met while building a ball.
#[derive(Debug, Clone)]
pub struct FaceEntry {
    pub face: Face,
    /// Indices of the chambers through this face that lie in the ball.
    pub chambers: Vec<usize>,
    /// All `p + 1` chambers through the face lie in the ball.
    pub interior: bool,
}

/// All chambers within gallery distance `R` of a base chamber.
///
/// Chambers are ordered by distance, then lexicographically by canonical
/// form; the base has index 0.
#[derive(Debug, Clone)]
pub struct BallGraph {
    ctx: PrimeContext,
    radius: usize,
    chambers: Vec<FlagChamber>,
    index: HashMap<FlagChamber, usize>,
    dist: Vec<usize>,
    adjacency: Vec<Vec<(usize, usize)>>,
    faces: Vec<FaceEntry>,
    face_index: HashMap<Face, usize>,
    /// `chamber_faces[c][s]` is the face of generator type `s` of chamber `c`.
    chamber_faces: Vec<Vec<usize>>,
}

impl BallGraph {
    pub fn build(base: &FlagChamber, radius: usize, ctx: &PrimeContext) -> Result<Self> {
        BallGraph::build_with(base, radius, ctx, Exec::default())
    }

    pub fn build_with(base: &FlagChamber, radius: usize, ctx: &PrimeContext, exec: Exec) -> Result<Self> {
        let n = ctx.n;
        if (ctx.precision as usize) < radius + n + 1 {
            return Err(Error::Precision(ctx.precision));
        }
        let mut dist: HashMap<FlagChamber, usize> = HashMap::from([(base.clone(), 0)]);
        let mut through: HashMap<Face, Vec<FlagChamber>> = HashMap::new();
        let mut layer = vec![base.clone()];
        for k in 0..=radius {
            let mut pending: Vec<Face> = layer
                .iter()
                .flat_map(|c| (0..n).map(move |l| c.face(l)))
                .filter(|f| !through.contains_key(f))
                .collect();
            pending.sort();
            pending.dedup();
            let found = exec.try_map(&pending, |f| chambers_containing(f, ctx))?;
            through.extend(pending.into_iter().zip(found));
            if k == radius {
                break;
            }
            let mut next = Vec::new();
            for c in &layer {
                for l in 0..n {
                    for d in &through[&c.face(l)] {
                        if !dist.contains_key(d) {
                            dist.insert(d.clone(), k + 1);
                            next.push(d.clone());
                        }
                    }
                }
            }
            next.sort();
            layer = next;
        }

        let mut order: Vec<(usize, FlagChamber)> = dist.into_iter().map(|(c, d)| (d, c)).collect();
        order.sort();
        let (dist, chambers): (Vec<usize>, Vec<FlagChamber>) = order.into_iter().unzip();
        let index: HashMap<FlagChamber, usize> =
            chambers.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();

        let sorted_faces: BTreeMap<Face, Vec<FlagChamber>> = through.into_iter().collect();
        let mut faces = Vec::with_capacity(sorted_faces.len());
        let mut face_index = HashMap::with_capacity(sorted_faces.len());
        let mut adjacency = vec![Vec::new(); chambers.len()];
        let mut chamber_faces = vec![vec![usize::MAX; n]; chambers.len()];
        for (face, all) in sorted_faces {
            let members: Vec<usize> = all.iter().filter_map(|c| index.get(c).copied()).collect();
            let s = face.face_type();
            for &a in &members {
                chamber_faces[a][s] = faces.len();
                for &b in &members {
                    if a != b {
                        adjacency[a].push((s, b));
                    }
                }
            }
            face_index.insert(face.clone(), faces.len());
            faces.push(FaceEntry {
                interior: members.len() == all.len(),
                face,
                chambers: members,
            });
        }
        for adj in adjacency.iter_mut() {
            adj.sort();
        }
        debug_assert!(chamber_faces.iter().flatten().all(|&f| f != usize::MAX));
        Ok(BallGraph {
            ctx: *ctx,
            radius,
            chambers,
            index,
            dist,
            adjacency,
            faces,
            face_index,
            chamber_faces,
        })
    }

    pub fn context(&self) -> &PrimeContext {
        &self.ctx
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn base(&self) -> &FlagChamber {
        &self.chambers[0]
    }

    pub fn len(&self) -> usize {
        self.chambers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chambers.is_empty()
    }

    pub fn chambers(&self) -> &[FlagChamber] {
        &self.chambers
    }

    pub fn chamber(&self, i: usize) -> &FlagChamber {
        &self.chambers[i]
    }

    pub fn index_of(&self, c: &FlagChamber) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn distance(&self, i: usize) -> usize {
        self.dist[i]
    }

    /// `(generator type, neighbor index)` pairs, sorted.
    pub fn neighbors(&self, i: usize) -> &[(usize, usize)] {
        &self.adjacency[i]
    }

    pub fn faces(&self) -> &[FaceEntry] {
        &self.faces
    }

    pub fn face_entry(&self, face: &Face) -> Option<&FaceEntry> {
        self.face_index.get(face).map(|&i| &self.faces[i])
    }

    /// Index into [`BallGraph::faces`] of the type-`s` face of chamber `i`.
    pub fn face_of(&self, i: usize, s: usize) -> usize {
        self.chamber_faces[i][s]
    }

    pub fn interior_faces(&self) -> impl Iterator<Item = &FaceEntry> {
        self.faces.iter().filter(|f| f.interior)
    }

    /// Number of chambers at each distance `0..=R`.
    pub fn shell_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.radius + 1];
        for &d in &self.dist {
            counts[d] += 1;
        }
        counts
    }

    pub fn to_json(&self) -> BallJson {
        BallJson {
            p: self.ctx.p,
            n: self.ctx.n,
            radius: self.radius,
            shell_counts: self.shell_counts(),
            chambers: self
                .chambers
                .iter()
                .enumerate()
                .map(|(i, c)| ChamberJson {
                    vertices: c.vertices().iter().map(|v| v.rows()).collect(),
                    distance: self.dist[i],
                    adjacency: self.adjacency[i]
                        .iter()
                        .map(|&(face_type, neighbor)| AdjacencyJson { face_type, neighbor })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallJson {
    pub p: u64,
    pub n: usize,
    pub radius: usize,
    pub shell_counts: Vec<u64>,
    pub chambers: Vec<ChamberJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberJson {
    /// Hermite forms of the vertices, indexed by vertex type.
    pub vertices: Vec<Vec<Vec<i64>>>,
    pub distance: usize,
    pub adjacency: Vec<AdjacencyJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyJson {
    pub face_type: usize,
    pub neighbor: usize,
}
