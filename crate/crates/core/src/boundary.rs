//! Cochains on the Bruhat–Tits tree of `GL(2, Q_p)` and their values on the
//! ends of the tree.
//!
//! A compactly supported 1-cochain `ω` has an ultimate value on every end:
//! the integral of `ω` along the geodesic ray from a base vertex `o`. At
//! depth `r` the ends are grouped by the last edge `(t, s)` of the ray inside
//! the ball `S(o, r)`; for the standard vertex these groups are the balls of
//! radius `p^{−r}` in `P¹(Q_p)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::building::{tree_adjacent, tree_neighbors, LatticeClass, PrimeContext};
use crate::exact::{Rational, RationalJson};
use crate::{Error, Result};

/// Finitely supported function on vertices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZeroCochain {
    values: BTreeMap<LatticeClass, Rational>,
}

impl ZeroCochain {
    pub fn new(values: impl IntoIterator<Item = (LatticeClass, Rational)>) -> Self {
        let mut map: BTreeMap<LatticeClass, Rational> = BTreeMap::new();
        for (v, x) in values {
            *map.entry(v).or_insert_with(Rational::zero) += x;
        }
        map.retain(|_, x| !x.is_zero());
        ZeroCochain { values: map }
    }

    pub fn get(&self, v: &LatticeClass) -> Rational {
        self.values.get(v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (&LatticeClass, &Rational)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn add(&self, other: &ZeroCochain) -> ZeroCochain {
        ZeroCochain::new(self.values.iter().chain(&other.values).map(|(v, x)| (v.clone(), x.clone())))
    }
}

/// Finitely supported antisymmetric function on oriented edges.
///
/// Each edge is stored once, oriented from the smaller to the larger
/// vertex.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OneCochain {
    values: BTreeMap<(LatticeClass, LatticeClass), Rational>,
}

impl OneCochain {
    /// Builds `ω` from values `ω(s, t)`; `ω(t, s)` is implied.
    pub fn new(values: impl IntoIterator<Item = ((LatticeClass, LatticeClass), Rational)>) -> Self {
        let mut out = OneCochain::default();
        for ((s, t), x) in values {
            out.add_value(s, t, x);
        }
        out
    }

    fn add_value(&mut self, s: LatticeClass, t: LatticeClass, x: Rational) {
        let (key, x) = if s <= t { ((s, t), x) } else { ((t, s), -x) };
        let slot = self.values.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += x;
        if slot.is_zero() {
            self.values.remove(&key);
        }
    }

    /// `ω(s, t)`.
    pub fn get(&self, s: &LatticeClass, t: &LatticeClass) -> Rational {
        if s <= t {
            self.values.get(&(s.clone(), t.clone())).cloned().unwrap_or_else(Rational::zero)
        } else {
            -self.get(t, s)
        }
    }

    /// Stored edges with their value along the stored orientation.
    pub fn support(&self) -> impl Iterator<Item = (&(LatticeClass, LatticeClass), &Rational)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn add(&self, other: &OneCochain) -> OneCochain {
        let mut out = self.clone();
        for ((s, t), x) in &other.values {
            out.add_value(s.clone(), t.clone(), x.clone());
        }
        out
    }
}

/// `df(s, t) = f(s) − f(t)` on every edge meeting the support of `f`.
pub fn coboundary(f: &ZeroCochain, ctx: &PrimeContext) -> Result<OneCochain> {
    let mut edges = BTreeSet::new();
    for (v, _) in f.support() {
        for u in tree_neighbors(v, ctx)? {
            edges.insert(if *v <= u { (v.clone(), u) } else { (u, v.clone()) });
        }
    }
    Ok(OneCochain::new(edges.into_iter().map(|(s, t)| {
        let x = f.get(&s) - f.get(&t);
        ((s, t), x)
    })))
}

/// `Σ ω(s_i, s_{i+1})` along a path of adjacent vertices.
pub fn integrate(omega: &OneCochain, path: &[LatticeClass], ctx: &PrimeContext) -> Result<Rational> {
    let mut total = Rational::zero();
    for w in path.windows(2) {
        if !tree_adjacent(&w[0], &w[1], ctx)? {
            return Err(Error::NotAdjacent);
        }
        total += omega.get(&w[0], &w[1]);
    }
    Ok(total)
}

/// Number of vertices at distance `≤ r` from a vertex.
pub fn sphere_vertex_count(p: u64, r: u32) -> u64 {
    1 + (p + 1) * (p.pow(r) - 1) / (p - 1)
}

/// Number of edges leaving the ball of radius `r − 1`, i.e. of end groups
/// at depth `r ≥ 1`.
pub fn end_count(p: u64, r: u32) -> u64 {
    (p + 1) * p.pow(r - 1)
}

/// The vertices at distance `≤ r` from a root, with BFS parents.
#[derive(Debug, Clone)]
pub struct TreeBall {
    root: LatticeClass,
    radius: usize,
    vertices: Vec<LatticeClass>,
    depth: HashMap<LatticeClass, usize>,
    parent: HashMap<LatticeClass, LatticeClass>,
}

impl TreeBall {
    pub fn build(root: &LatticeClass, radius: usize, ctx: &PrimeContext) -> Result<Self> {
        if ctx.n != 2 {
            return Err(Error::UnsupportedDimension(ctx.n));
        }
        let mut vertices = vec![root.clone()];
        let mut depth = HashMap::from([(root.clone(), 0)]);
        let mut parent = HashMap::new();
        let mut layer = vec![root.clone()];
        for d in 1..=radius {
            let mut next = Vec::new();
            for v in &layer {
                for u in tree_neighbors(v, ctx)? {
                    if !depth.contains_key(&u) {
                        depth.insert(u.clone(), d);
                        parent.insert(u.clone(), v.clone());
                        next.push(u);
                    }
                }
            }
            next.sort();
            vertices.extend(next.iter().cloned());
            layer = next;
        }
        Ok(TreeBall { root: root.clone(), radius, vertices, depth, parent })
    }

    pub fn root(&self) -> &LatticeClass {
        &self.root
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Vertices by depth, sorted within each depth.
    pub fn vertices(&self) -> &[LatticeClass] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn depth(&self, v: &LatticeClass) -> Option<usize> {
        self.depth.get(v).copied()
    }

    pub fn parent(&self, v: &LatticeClass) -> Option<&LatticeClass> {
        self.parent.get(v)
    }

    /// Geodesic from the root to `v`.
    pub fn path_to(&self, v: &LatticeClass) -> Option<Vec<LatticeClass>> {
        self.depth(v)?;
        let mut path = vec![v.clone()];
        while let Some(u) = self.parent.get(path.last()?) {
            path.push(u.clone());
        }
        path.reverse();
        Some(path)
    }

    /// Edges `(t, s)` with `s` at depth `r` and `t` its parent.
    pub fn end_edges(&self) -> Vec<(LatticeClass, LatticeClass)> {
        self.vertices
            .iter()
            .filter(|v| self.depth[*v] == self.radius && self.radius > 0)
            .map(|s| (self.parent[s].clone(), s.clone()))
            .collect()
    }
}

/// Ball `{[x' : y'] ≡ [x : y] mod p^depth}` in `P¹(Q_p)`.
///
/// Normalized as `[x : 1]` when `y` is a unit, else `[1 : y]` with
/// `p | y`; coordinates are reduced modulo `p^depth`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChartBall {
    pub x: u64,
    pub y: u64,
    pub depth: u32,
}

impl ChartBall {
    /// Whether the two balls intersect (one then contains the other).
    pub fn meets(&self, other: &ChartBall, p: u64) -> bool {
        let m = p.pow(self.depth.min(other.depth));
        (self.y == 1) == (other.y == 1) && self.x % m == other.x % m && self.y % m == other.y % m
    }
}

fn inverse_mod(a: i128, m: i128) -> i128 {
    let (mut r0, mut r1, mut s0, mut s1) = (m, a.rem_euclid(m), 0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(m)
}

/// The ball of `P¹(Q_p)` of the ends through the edge `(t, s)`, where `s`
/// is at distance `r ≥ 1` from the standard vertex and `t` at `r − 1`.
pub fn end_chart(t: &LatticeClass, s: &LatticeClass, ctx: &PrimeContext) -> Result<ChartBall> {
    if ctx.n != 2 {
        return Err(Error::UnsupportedDimension(ctx.n));
    }
    let dist = |v: &LatticeClass| v.elementary_divisors(ctx)[1];
    let r = dist(s);
    if r == 0 || dist(t) + 1 != r || !tree_adjacent(t, s, ctx)? {
        return Err(Error::NotEndDirection);
    }
    let p = ctx.p as i128;
    let m = p.pow(r);
    // s = [Z_p v + p^r Z_p²] with v the primitive column of its Hermite form
    let rows = s.rows();
    let (vx, vy) = if rows[0][0] == 1 { (1, 0) } else { (rows[0][1] as i128, rows[1][1] as i128) };
    let ball = if vy.rem_euclid(p) != 0 {
        let x = (vx * inverse_mod(vy, m)).rem_euclid(m);
        ChartBall { x: x as u64, y: 1, depth: r }
    } else {
        let y = (vy * inverse_mod(vx, m)).rem_euclid(m);
        ChartBall { x: 1, y: y as u64, depth: r }
    };
    Ok(ball)
}

/// One end group: the edge `(t, s)` and the value there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryPart {
    pub tail: LatticeClass,
    pub head: LatticeClass,
    pub value: Rational,
    pub chart: Option<ChartBall>,
}

/// A locally constant function on the ends, constant on each end group at
/// depth `r` around `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryFunction {
    pub depth: usize,
    pub base: LatticeClass,
    pub parts: Vec<BoundaryPart>,
}

impl BoundaryFunction {
    /// Assigns `values[i]` to the `i`-th end edge of `S(base, depth)`.
    pub fn from_values(base: &LatticeClass, depth: usize, values: &[Rational], ctx: &PrimeContext) -> Result<Self> {
        if depth == 0 {
            return Err(Error::MalformedBoundary("depth must be at least 1"));
        }
        let ball = TreeBall::build(base, depth, ctx)?;
        let edges = ball.end_edges();
        if edges.len() != values.len() {
            return Err(Error::MalformedBoundary("one value per end edge"));
        }
        edges
            .into_iter()
            .zip(values)
            .map(|((t, s), v)| part(t, s, v.clone(), base, ctx))
            .collect::<Result<Vec<_>>>()
            .map(|parts| BoundaryFunction { depth, base: base.clone(), parts })
    }

    pub fn values(&self) -> Vec<Rational> {
        self.parts.iter().map(|p| p.value.clone()).collect()
    }

    /// The common value, if constant.
    pub fn constant_value(&self) -> Option<Rational> {
        let first = self.parts.first()?.value.clone();
        self.parts.iter().all(|p| p.value == first).then_some(first)
    }

    /// Equality modulo constants, over the same end groups.
    pub fn differs_by_constant(&self, other: &BoundaryFunction) -> bool {
        if self.base != other.base || self.depth != other.depth || self.parts.len() != other.parts.len() {
            return false;
        }
        let same_edges = self
            .parts
            .iter()
            .zip(&other.parts)
            .all(|(a, b)| a.tail == b.tail && a.head == b.head);
        let diffs: BTreeSet<Rational> = self
            .parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| &a.value - &b.value)
            .collect();
        same_edges && diffs.len() <= 1
    }

    pub fn to_json(&self) -> Vec<BoundaryPartJson> {
        self.parts
            .iter()
            .map(|p| BoundaryPartJson {
                edge: [p.tail.rows(), p.head.rows()],
                value: (&p.value).into(),
                chart: p.chart.map(|c| [c.x, c.y]),
            })
            .collect()
    }
}

fn part(tail: LatticeClass, head: LatticeClass, value: Rational, base: &LatticeClass, ctx: &PrimeContext) -> Result<BoundaryPart> {
    let chart = if *base == LatticeClass::standard(ctx) {
        Some(end_chart(&tail, &head, ctx)?)
    } else {
        None
    };
    Ok(BoundaryPart { tail, head, value, chart })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryPartJson {
    pub edge: [Vec<Vec<i64>>; 2],
    pub value: RationalJson,
    pub chart: Option<[u64; 2]>,
}

/// Ultimate values of `ω` seen from `o`, grouped at depth `r`: the part at
/// `(t, s)` carries `∫_{o→s} ω`.
pub fn boundary_value(omega: &OneCochain, o: &LatticeClass, r: usize, ctx: &PrimeContext) -> Result<BoundaryFunction> {
    if r == 0 {
        return Err(Error::MalformedBoundary("depth must be at least 1"));
    }
    let ball = TreeBall::build(o, r, ctx)?;
    for ((s, t), _) in omega.support() {
        if ball.depth(s).is_none() || ball.depth(t).is_none() {
            return Err(Error::SupportEscapes(r));
        }
    }
    let parts = ball
        .end_edges()
        .into_iter()
        .map(|(t, s)| {
            let path = ball.path_to(&s).ok_or(Error::SupportEscapes(r))?;
            let value = integrate(omega, &path, ctx)?;
            part(t, s, value, o, ctx)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundaryFunction { depth: r, base: o.clone(), parts })
}

/// A 1-cochain supported in `S(o, r)` whose boundary value is `g`: the
/// coboundary-like cochain `ω(t_i, s_i) = g(t_i, s_i)` on the end edges,
/// zero elsewhere.
pub fn lift(g: &BoundaryFunction, ctx: &PrimeContext) -> Result<OneCochain> {
    if g.depth == 0 {
        return Err(Error::MalformedBoundary("depth must be at least 1"));
    }
    let ball = TreeBall::build(&g.base, g.depth, ctx)?;
    let expected: BTreeSet<(LatticeClass, LatticeClass)> = ball.end_edges().into_iter().collect();
    let given: BTreeSet<(LatticeClass, LatticeClass)> =
        g.parts.iter().map(|p| (p.tail.clone(), p.head.clone())).collect();
    if given.len() != g.parts.len() || given != expected {
        return Err(Error::MalformedBoundary("parts must enumerate every end edge once"));
    }
    Ok(OneCochain::new(
        g.parts.iter().map(|p| ((p.tail.clone(), p.head.clone()), p.value.clone())),
    ))
}

/// For `ω` with constant boundary value `c`, the finitely supported `f`
/// with `df = ω`: `f(s) = c − ∫_{o→s} ω` on `S(o, r)`, zero outside.
pub fn kernel_preimage(omega: &OneCochain, o: &LatticeClass, r: usize, ctx: &PrimeContext) -> Result<ZeroCochain> {
    let bv = boundary_value(omega, o, r, ctx)?;
    let c = bv.constant_value().ok_or(Error::NotConstant)?;
    let ball = TreeBall::build(o, r, ctx)?;
    let values = ball
        .vertices()
        .iter()
        .map(|v| {
            let path = ball.path_to(v).ok_or(Error::SupportEscapes(r))?;
            Ok((v.clone(), &c - integrate(omega, &path, ctx)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ZeroCochain::new(values))
}
