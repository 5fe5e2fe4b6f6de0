use serde::{Deserialize, Serialize};

use super::lattice::{Lattice, LatticeClass};
use super::PrimeContext;
use crate::{Error, Result};

/// A chamber: `n` vertex classes admitting representatives
/// `L_0 ⊋ L_1 ⊋ … ⊋ L_{n−1} ⊋ p·L_0`, each step of index `p`.
///
/// Vertices are stored by label: index `i` holds the vertex of type `i`. The
/// labels of a chamber are consecutive along the flag, so this is one of its
/// cyclic rotations and it is canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FlagChamber {
    vertices: Vec<LatticeClass>,
}

/// Codimension-one face: a chamber with the vertex of type `missing`
/// removed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    missing: usize,
    /// Remaining vertices in label order.
    vertices: Vec<LatticeClass>,
}

/// Generator of `Ã_{n−1}` attached to the face missing the vertex of type
/// `label`: `s_i` (`i ≥ 1`) moves the vertex of type `n − i` of the standard
/// chamber and `s_0` moves the vertex of type 0.
pub fn face_type_of_label(n: usize, label: usize) -> usize {
    (n - label % n) % n
}

/// Inverse of [`face_type_of_label`] (the map is an involution).
pub fn label_of_face_type(n: usize, generator: usize) -> usize {
    face_type_of_label(n, generator)
}

/// Representatives `M_0 ⊋ M_1 ⊋ …` of consecutive classes with index `p` at
/// every step, or `None` if the classes do not form such a chain.
pub(crate) fn chain_representatives(
    classes: &[&LatticeClass],
    ctx: &PrimeContext,
) -> Result<Option<Vec<Lattice>>> {
    let n = ctx.n as i64;
    let mut reps: Vec<Lattice> = Vec::with_capacity(classes.len());
    for class in classes {
        let h = class.lattice();
        let Some(prev) = reps.last() else {
            reps.push(h);
            continue;
        };
        let gap = prev.det_valuation(ctx) as i64 + 1 - h.det_valuation(ctx) as i64;
        if gap < 0 || gap % n != 0 {
            return Ok(None);
        }
        let candidate = h.scaled((gap / n) as u32, ctx)?;
        if !prev.contains(&candidate, ctx)? {
            return Ok(None);
        }
        reps.push(candidate);
    }
    Ok(Some(reps))
}

impl FlagChamber {
    /// Builds a chamber from its vertices in any order, verifying the flag
    /// condition.
    pub fn from_vertices(vertices: Vec<LatticeClass>, ctx: &PrimeContext) -> Result<Self> {
        let n = ctx.n;
        if vertices.len() != n || vertices.iter().any(|v| v.dim() != n) {
            return Err(Error::InvalidChamber("wrong number of vertices"));
        }
        let mut slots: Vec<Option<LatticeClass>> = vec![None; n];
        for v in vertices {
            let label = super::vertex_label(&v, ctx);
            if slots[label].replace(v).is_some() {
                return Err(Error::InvalidChamber("repeated vertex type"));
            }
        }
        let vertices: Vec<LatticeClass> = slots.into_iter().map(Option::unwrap).collect();
        let chamber = FlagChamber { vertices };
        chamber.verify(ctx)?;
        Ok(chamber)
    }

    fn verify(&self, ctx: &PrimeContext) -> Result<()> {
        let refs: Vec<&LatticeClass> = self.vertices.iter().collect();
        let reps = chain_representatives(&refs, ctx)?
            .ok_or(Error::InvalidChamber("vertices do not form a flag"))?;
        let closing = reps[0].scaled(1, ctx)?;
        if !reps[ctx.n - 1].contains(&closing, ctx)? {
            return Err(Error::InvalidChamber("flag does not close up at p·L_0"));
        }
        Ok(())
    }

    /// The vertices indexed by type.
    pub fn vertices(&self) -> &[LatticeClass] {
        &self.vertices
    }

    pub fn vertex(&self, label: usize) -> &LatticeClass {
        &self.vertices[label]
    }

    pub fn dim(&self) -> usize {
        self.vertices.len()
    }

    /// The face obtained by dropping the vertex of type `missing`.
    pub fn face(&self, missing: usize) -> Face {
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != missing)
            .map(|(_, v)| v.clone())
            .collect();
        Face { missing, vertices }
    }

    /// The face of generator type `s`.
    pub fn face_of_type(&self, s: usize) -> Face {
        self.face(label_of_face_type(self.dim(), s))
    }
}

impl Face {
    /// Builds a face from `n − 1` vertices, verifying they come from a flag.
    pub fn from_vertices(vertices: Vec<LatticeClass>, ctx: &PrimeContext) -> Result<Self> {
        let n = ctx.n;
        if vertices.len() != n - 1 {
            return Err(Error::InvalidFace("a face has n − 1 vertices"));
        }
        let mut labeled: Vec<(usize, LatticeClass)> = vertices
            .into_iter()
            .map(|v| (super::vertex_label(&v, ctx), v))
            .collect();
        labeled.sort();
        let labels: Vec<usize> = labeled.iter().map(|(l, _)| *l).collect();
        let missing = (0..n)
            .find(|l| !labels.contains(l))
            .ok_or(Error::InvalidFace("repeated vertex type"))?;
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidFace("repeated vertex type"));
        }
        let face = Face {
            missing,
            vertices: labeled.into_iter().map(|(_, v)| v).collect(),
        };
        face.quotient_bounds(ctx)?;
        Ok(face)
    }

    /// Type of the vertex a chamber needs to complete this face.
    pub fn missing_label(&self) -> usize {
        self.missing
    }

    /// Generator id of this face in `Ã_{n−1}`.
    pub fn face_type(&self) -> usize {
        face_type_of_label(self.vertices.len() + 1, self.missing)
    }

    pub fn vertices(&self) -> &[LatticeClass] {
        &self.vertices
    }

    /// Lattices `A ⊋ B` with `A/B ≅ F_p²` such that the chambers through
    /// this face correspond to the lattices strictly between them.
    fn quotient_bounds(&self, ctx: &PrimeContext) -> Result<(Lattice, Lattice)> {
        let n = ctx.n;
        // vertices in cyclic order starting right after the missing type
        let order: Vec<&LatticeClass> = (1..n)
            .map(|k| {
                let label = (self.missing + k) % n;
                let pos = if label < self.missing { label } else { label - 1 };
                &self.vertices[pos]
            })
            .collect();
        let reps = chain_representatives(&order, ctx)?
            .ok_or(Error::InvalidFace("vertices do not form a partial flag"))?;
        let upper = reps[n - 2].clone();
        let lower = reps[0].scaled(1, ctx)?;
        if !upper.contains(&lower, ctx)? {
            return Err(Error::InvalidFace("partial flag does not close up"));
        }
        Ok((upper, lower))
    }
}

/// The `p + 1` chambers through a face, sorted.
///
/// They correspond to the lines of the two-dimensional `F_p`-space `A/B`
/// between the neighbors of the missing vertex in the flag.
pub fn chambers_containing(face: &Face, ctx: &PrimeContext) -> Result<Vec<FlagChamber>> {
    let (upper, lower) = face.quotient_bounds(ctx)?;
    let mut first: Option<(Vec<i128>, Lattice)> = None;
    let mut second: Option<Vec<i128>> = None;
    for a in upper.columns() {
        let m = lower.with_vector(&a, ctx)?;
        if m == lower {
            continue;
        }
        match &first {
            None => first = Some((a, m)),
            Some((_, m1)) if *m1 != m => {
                second = Some(a);
                break;
            }
            Some(_) => {}
        }
    }
    let (Some((a1, _)), Some(a2)) = (first, second) else {
        return Err(Error::InvalidFace("quotient is not two-dimensional"));
    };
    let p = ctx.p as i128;
    let lines = std::iter::once(a1.clone()).chain((0..p).map(|t| {
        a2.iter().zip(&a1).map(|(x, y)| x + t * y).collect::<Vec<i128>>()
    }));
    let mut out = Vec::with_capacity(ctx.p as usize + 1);
    for v in lines {
        let class = lower.with_vector(&v, ctx)?.normalized(ctx);
        debug_assert_eq!(super::vertex_label(&class, ctx), face.missing);
        let mut vertices = face.vertices.clone();
        vertices.insert(face.missing, class);
        out.push(FlagChamber { vertices });
    }
    out.sort();
    out.dedup();
    debug_assert_eq!(out.len(), ctx.p as usize + 1);
    Ok(out)
}
