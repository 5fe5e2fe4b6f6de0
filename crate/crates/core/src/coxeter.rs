//! Crystallographic Coxeter systems of affine type.
//!
//! Group elements are represented by their integer matrices in the
//! reflection representation on the root lattice attached to a generalized
//! Cartan matrix. That representation is faithful, so matrix equality decides
//! equality in the group, and the sign of `w(α_s)` decides whether `s` is a
//! right descent of `w`.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Exec, Result};

/// Cartan–Killing family of the spherical root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// An affine type such as `Ã_2` (written `A2~`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineTypeLabel {
    pub family: Family,
    pub rank: usize,
}

impl AffineTypeLabel {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 3,
            Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(AffineTypeLabel { family, rank })
        } else {
            Err(Error::InvalidLabel(format!("{family:?}{rank}~")))
        }
    }

    /// Number of generators of the affine Coxeter group.
    pub fn generator_count(self) -> usize {
        self.rank + 1
    }
}

impl fmt::Display for AffineTypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}~", self.family, self.rank)
    }
}

impl FromStr for AffineTypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidLabel(s.to_string());
        let body = s.trim().strip_suffix('~').ok_or_else(bad)?;
        let mut chars = body.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let rank = digits.parse().map_err(|_| bad())?;
        AffineTypeLabel::new(family, rank).map_err(|_| bad())
    }
}

impl Serialize for AffineTypeLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AffineTypeLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Order `m_st` of a product of two generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    /// Cartan integers `(a_st, a_ts)` for `s < t`.
    fn cartan_pair(self) -> Result<(i64, i64)> {
        match self {
            Order::Finite(2) => Ok((0, 0)),
            Order::Finite(3) => Ok((-1, -1)),
            Order::Finite(4) => Ok((-2, -1)),
            Order::Finite(6) => Ok((-3, -1)),
            Order::Infinite => Ok((-2, -2)),
            Order::Finite(m) => Err(Error::NonCrystallographic(m)),
        }
    }
}

/// Coxeter matrix on generators `0..rank`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterDiagram {
    orders: Vec<Vec<Order>>,
}

impl CoxeterDiagram {
    /// Validates symmetry, the unit diagonal and crystallographic orders.
    pub fn new(orders: Vec<Vec<Order>>) -> Result<Self> {
        let n = orders.len();
        if n == 0 {
            return Err(Error::InvalidDiagram("no generators".into()));
        }
        for (s, row) in orders.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidDiagram("order matrix is not square".into()));
            }
            for (t, &m) in row.iter().enumerate() {
                if m != orders[t][s] {
                    return Err(Error::InvalidDiagram(format!("m({s},{t}) is not symmetric")));
                }
                match (s == t, m) {
                    (true, Order::Finite(1)) => {}
                    (true, _) => {
                        return Err(Error::InvalidDiagram(format!("m({s},{s}) must be 1")))
                    }
                    (false, Order::Finite(m)) if m < 2 => {
                        return Err(Error::InvalidDiagram(format!("m({s},{t}) = {m} < 2")))
                    }
                    (false, m) => {
                        m.cartan_pair()?;
                    }
                }
            }
        }
        Ok(CoxeterDiagram { orders })
    }

    /// Diagram with all pairs commuting except the listed edges.
    fn from_edges(n: usize, edges: &[(usize, usize, Order)]) -> Self {
        let mut orders = vec![vec![Order::Finite(2); n]; n];
        for (i, row) in orders.iter_mut().enumerate() {
            row[i] = Order::Finite(1);
        }
        for &(s, t, m) in edges {
            orders[s][t] = m;
            orders[t][s] = m;
        }
        CoxeterDiagram { orders }
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self, s: usize, t: usize) -> Order {
        self.orders[s][t]
    }

    /// Relabels generators: new generator `i` is old generator `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.rank();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::InvalidDiagram("not a permutation".into()));
        }
        let orders = (0..n)
            .map(|i| (0..n).map(|j| self.orders[perm[i]][perm[j]]).collect())
            .collect();
        CoxeterDiagram::new(orders)
    }

    /// Generalized Cartan matrix; `a[s][t]` is the coefficient in
    /// `s(α_t) = α_t − a[s][t]·α_s`.
    pub fn cartan_matrix(&self) -> Result<Vec<Vec<i64>>> {
        let n = self.rank();
        let mut a = vec![vec![0i64; n]; n];
        for s in 0..n {
            a[s][s] = 2;
            for t in s + 1..n {
                let (lo, hi) = self.orders[s][t].cartan_pair()?;
                a[s][t] = lo;
                a[t][s] = hi;
            }
        }
        Ok(a)
    }
}

/// Standard affine Coxeter diagram of the given type.
pub fn affine_diagram(label: AffineTypeLabel) -> Result<CoxeterDiagram> {
    use Order::{Finite, Infinite};
    let label = AffineTypeLabel::new(label.family, label.rank)?;
    let l = label.rank;
    let n = l + 1;
    let chain = |from: usize, to: usize| (from..to).map(|i| (i, i + 1, Finite(3)));
    let edges: Vec<(usize, usize, Order)> = match label.family {
        Family::A if l == 1 => vec![(0, 1, Infinite)],
        Family::A => chain(0, l).chain([(l, 0, Finite(3))]).collect(),
        Family::B => chain(1, l - 1)
            .chain([(l - 1, l, Finite(4)), (0, 2, Finite(3))])
            .collect(),
        Family::C => [(0, 1, Finite(4))]
            .into_iter()
            .chain(chain(1, l - 1))
            .chain([(l - 1, l, Finite(4))])
            .collect(),
        Family::D => chain(1, l - 1)
            .chain([(0, 2, Finite(3)), (l - 2, l, Finite(3))])
            .collect(),
        Family::E => match l {
            6 => vec![
                (1, 3, Finite(3)),
                (3, 4, Finite(3)),
                (4, 5, Finite(3)),
                (5, 6, Finite(3)),
                (2, 4, Finite(3)),
                (0, 2, Finite(3)),
            ],
            7 => vec![
                (0, 1, Finite(3)),
                (1, 3, Finite(3)),
                (3, 4, Finite(3)),
                (4, 5, Finite(3)),
                (5, 6, Finite(3)),
                (6, 7, Finite(3)),
                (2, 4, Finite(3)),
            ],
            _ => vec![
                (1, 3, Finite(3)),
                (3, 4, Finite(3)),
                (4, 5, Finite(3)),
                (5, 6, Finite(3)),
                (6, 7, Finite(3)),
                (7, 8, Finite(3)),
                (8, 0, Finite(3)),
                (2, 4, Finite(3)),
            ],
        },
        Family::F => vec![
            (0, 1, Finite(3)),
            (1, 2, Finite(3)),
            (2, 3, Finite(4)),
            (3, 4, Finite(3)),
        ],
        Family::G => vec![(0, 1, Finite(3)), (1, 2, Finite(6))],
    };
    Ok(CoxeterDiagram::from_edges(n, &edges))
}

/// Square integer matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        IntMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.dim;
        debug_assert_eq!(n, other.dim);
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        IntMatrix { dim: n, entries }
    }
}

/// Reflection matrices of the generators, in the simple-root basis.
pub fn generator_matrices(diagram: &CoxeterDiagram) -> Result<Vec<IntMatrix>> {
    let a = diagram.cartan_matrix()?;
    let n = diagram.rank();
    Ok((0..n)
        .map(|s| {
            let mut m = IntMatrix::identity(n);
            // column t holds s(α_t) = α_t − a[s][t]·α_s
            for t in 0..n {
                m.entries[s * n + t] -= a[s][t];
            }
            m
        })
        .collect())
}

/// Element of a Coxeter group, identified by its reflection matrix.
///
/// Equality, ordering and hashing ignore the cached length.
#[derive(Debug, Clone)]
pub struct GroupElement {
    matrix: IntMatrix,
    length: Option<usize>,
}

impl GroupElement {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn cached_length(&self) -> Option<usize> {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == IntMatrix::identity(self.matrix.dim)
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.matrix.cmp(&other.matrix)
    }
}

/// Descent loops give up after this many steps.
const LENGTH_CUTOFF: usize = 1 << 16;

/// A diagram together with its generator matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterSystem {
    diagram: CoxeterDiagram,
    generators: Vec<IntMatrix>,
}

impl CoxeterSystem {
    pub fn new(diagram: CoxeterDiagram) -> Result<Self> {
        let generators = generator_matrices(&diagram)?;
        Ok(CoxeterSystem { diagram, generators })
    }

    pub fn affine(label: AffineTypeLabel) -> Result<Self> {
        CoxeterSystem::new(affine_diagram(label)?)
    }

    pub fn diagram(&self) -> &CoxeterDiagram {
        &self.diagram
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            matrix: IntMatrix::identity(self.rank()),
            length: Some(0),
        }
    }

    pub fn generator(&self, s: usize) -> Result<GroupElement> {
        let matrix = self.generators.get(s).ok_or(Error::UnknownGenerator(s))?.clone();
        Ok(GroupElement { matrix, length: Some(1) })
    }

    /// Product of the generators in `word`, left to right.
    pub fn element_from_word(&self, word: &[usize]) -> Result<GroupElement> {
        let mut m = IntMatrix::identity(self.rank());
        for &s in word {
            let g = self.generators.get(s).ok_or(Error::UnknownGenerator(s))?;
            m = m.mul(g);
        }
        Ok(GroupElement { matrix: m, length: None })
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            matrix: a.matrix.mul(&b.matrix),
            length: None,
        }
    }

    /// `w·s`, with the length updated when known.
    pub fn mul_generator(&self, w: &GroupElement, s: usize) -> GroupElement {
        let length = w
            .length
            .map(|l| if self.is_right_descent(w, s) { l - 1 } else { l + 1 });
        GroupElement {
            matrix: w.matrix.mul(&self.generators[s]),
            length,
        }
    }

    /// `l(ws) < l(w)` iff `w(α_s)` is a negative root.
    pub fn is_right_descent(&self, w: &GroupElement, s: usize) -> bool {
        let n = self.rank();
        (0..n).all(|i| w.matrix.get(i, s) <= 0)
    }

    /// A reduced word for `w`, obtained by stripping right descents.
    pub fn reduced_word(&self, w: &GroupElement) -> Result<Vec<usize>> {
        let mut cur = w.matrix.clone();
        let id = IntMatrix::identity(self.rank());
        let mut stripped = Vec::new();
        while cur != id {
            if stripped.len() >= LENGTH_CUTOFF {
                return Err(Error::LengthCutoff(LENGTH_CUTOFF));
            }
            let probe = GroupElement { matrix: cur, length: None };
            let s = (0..self.rank())
                .find(|&s| self.is_right_descent(&probe, s))
                .ok_or(Error::LengthCutoff(stripped.len()))?;
            cur = probe.matrix.mul(&self.generators[s]);
            stripped.push(s);
        }
        stripped.reverse();
        Ok(stripped)
    }

    pub fn length(&self, w: &GroupElement) -> Result<usize> {
        match w.length {
            Some(l) => Ok(l),
            None => self.reduced_word(w).map(|word| word.len()),
        }
    }

    /// Returns `w` with its length cached.
    pub fn with_length(&self, w: GroupElement) -> Result<GroupElement> {
        let l = self.length(&w)?;
        Ok(GroupElement { length: Some(l), ..w })
    }

    /// All elements of length exactly `k`, sorted.
    pub fn sphere(&self, k: usize) -> Vec<GroupElement> {
        growth_levels(self, k, Exec::default()).pop().unwrap_or_default()
    }

    /// All elements of length at most `k`, by increasing length.
    pub fn ball(&self, k: usize) -> Vec<GroupElement> {
        growth_levels(self, k, Exec::default()).into_iter().flatten().collect()
    }
}

/// Chamber counts `N(0..=K)` by distance from the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthTable {
    pub counts: Vec<u64>,
}

impl GrowthTable {
    pub fn cutoff(&self) -> usize {
        self.counts.len() - 1
    }
}

pub fn bfs_growth(diagram: &CoxeterDiagram, cutoff: usize) -> Result<GrowthTable> {
    bfs_growth_with(diagram, cutoff, Exec::default())
}

pub fn bfs_growth_with(diagram: &CoxeterDiagram, cutoff: usize, exec: Exec) -> Result<GrowthTable> {
    let sys = CoxeterSystem::new(diagram.clone())?;
    let counts = growth_levels(&sys, cutoff, exec)
        .iter()
        .map(|level| level.len() as u64)
        .collect();
    Ok(GrowthTable { counts })
}

/// Breadth-first layers of the Cayley graph. Right multiplication by a
/// generator changes the length by exactly one, so a new layer is the set of
/// neighbors of the current layer minus the previous layer.
fn growth_levels(sys: &CoxeterSystem, cutoff: usize, exec: Exec) -> Vec<Vec<GroupElement>> {
    let mut levels = vec![vec![sys.identity()]];
    let mut prev: HashSet<IntMatrix> = HashSet::new();
    for k in 1..=cutoff {
        let cur = &levels[k - 1];
        let candidates: Vec<Vec<IntMatrix>> = exec.map(cur, |w| {
            sys.generators.iter().map(|g| w.matrix.mul(g)).collect()
        });
        let mut next: HashSet<IntMatrix> = HashSet::new();
        for m in candidates.into_iter().flatten() {
            if !prev.contains(&m) {
                next.insert(m);
            }
        }
        let mut layer: Vec<GroupElement> = next
            .into_iter()
            .map(|matrix| GroupElement { matrix, length: Some(k) })
            .collect();
        layer.sort();
        prev = cur.iter().map(|w| w.matrix.clone()).collect();
        levels.push(layer);
    }
    levels
}
