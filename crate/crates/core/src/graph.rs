//! Cartesian products of paths, cycles and small explicit graphs.
//!
//! A [`ProductGraph`] is never materialized. Vertices are coordinate tuples,
//! one coordinate per factor, and the metric is the sum of the per-factor
//! distances. Enumeration order is lexicographic with the last factor varying
//! fastest, which is also the order of [`ProductGraph::index_of`].

use std::collections::VecDeque;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex cap for [`ProductGraph::explicit_expand`] and the search oracle.
pub const DEFAULT_EXPANSION_CAP: usize = 100_000;

/// A vertex of a product graph: 0-based coordinates, one per factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vertex(pub Vec<usize>);

impl Vertex {
    pub fn new(coords: impl Into<Vec<usize>>) -> Self {
        Vertex(coords.into())
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<usize>> for Vertex {
    fn from(coords: Vec<usize>) -> Self {
        Vertex(coords)
    }
}

impl<const N: usize> From<[usize; N]> for Vertex {
    fn from(coords: [usize; N]) -> Self {
        Vertex(coords.to_vec())
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A small connected simple graph with its all-pairs distance table.
#[derive(Debug, PartialEq, Eq)]
pub struct ExplicitGraph {
    order: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    distances: Vec<u32>,
    source: Option<String>,
}

#[derive(Deserialize)]
struct ExplicitGraphFile {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl ExplicitGraph {
    /// Validates the edge list and computes the distance table by repeated BFS.
    pub fn new(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut neighbors = vec![Vec::new(); order];
        let mut normalized = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= order || b >= order {
                return Err(Error::InvalidExplicit(format!(
                    "edge ({a},{b}) references a vertex outside 0..{order}"
                )));
            }
            if a == b {
                return Err(Error::InvalidExplicit(format!("loop at vertex {a}")));
            }
            let edge = (a.min(b), a.max(b));
            if normalized.contains(&edge) {
                return Err(Error::InvalidExplicit(format!("parallel edge ({a},{b})")));
            }
            normalized.push(edge);
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        normalized.sort_unstable();

        let mut distances = vec![u32::MAX; order * order];
        let mut queue = VecDeque::new();
        for source in 0..order {
            let row = &mut distances[source * order..(source + 1) * order];
            row[source] = 0;
            queue.push_back(source);
            while let Some(u) = queue.pop_front() {
                for &w in &neighbors[u] {
                    if row[w] == u32::MAX {
                        row[w] = row[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            if row.contains(&u32::MAX) {
                return Err(Error::InvalidExplicit("graph is disconnected".into()));
            }
        }

        Ok(ExplicitGraph {
            order,
            edges: normalized,
            neighbors,
            distances,
            source: None,
        })
    }

    /// Reads `{"n": .., "edges": [[a, b], ..]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ExplicitGraphFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidExplicit(e.to_string()))?;
        Self::new(file.n, &file.edges)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut graph = Self::from_json(&text)?;
        graph.source = Some(path.display().to_string());
        Ok(graph)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    /// File the graph was loaded from, if any.
    pub fn source(&self) -> Option<&str> {
        self.source.as_deref()
    }

    pub fn distance(&self, a: usize, b: usize) -> u32 {
        self.distances[a * self.order + b]
    }

    pub fn to_json(&self) -> String {
        let edges: Vec<[usize; 2]> = self.edges.iter().map(|&(a, b)| [a, b]).collect();
        serde_json::json!({ "n": self.order, "edges": edges }).to_string()
    }
}

/// One factor of a Cartesian product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorSpec {
    Path(usize),
    /// `Cycle(1)` is a single vertex and `Cycle(2)` a single edge.
    Cycle(usize),
    Explicit(Arc<ExplicitGraph>),
}

impl FactorSpec {
    pub fn path(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(FactorSpec::Path(order))
    }

    pub fn cycle(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(FactorSpec::Cycle(order))
    }

    pub fn explicit(graph: ExplicitGraph) -> Self {
        FactorSpec::Explicit(Arc::new(graph))
    }

    pub fn order(&self) -> usize {
        match self {
            FactorSpec::Path(n) | FactorSpec::Cycle(n) => *n,
            FactorSpec::Explicit(g) => g.order(),
        }
    }

    pub fn is_cycle(&self) -> bool {
        matches!(self, FactorSpec::Cycle(_))
    }

    pub fn diameter(&self) -> u32 {
        match self {
            FactorSpec::Path(n) => (*n - 1) as u32,
            FactorSpec::Cycle(n) => (*n / 2) as u32,
            FactorSpec::Explicit(g) => g.distances.iter().copied().max().unwrap_or(0),
        }
    }

    /// Distance between two in-range coordinates.
    #[inline]
    pub(crate) fn dist(&self, a: usize, b: usize) -> u32 {
        match self {
            FactorSpec::Path(_) => a.abs_diff(b) as u32,
            FactorSpec::Cycle(n) => {
                let d = a.abs_diff(b);
                d.min(n - d) as u32
            }
            FactorSpec::Explicit(g) => g.distance(a, b),
        }
    }

    pub fn distance(&self, a: usize, b: usize) -> Result<u32> {
        let order = self.order();
        for c in [a, b] {
            if c >= order {
                return Err(Error::CoordinateOutOfRange {
                    axis: 0,
                    value: c as i64,
                    order,
                });
            }
        }
        Ok(self.dist(a, b))
    }

    pub fn neighbors(&self, a: usize) -> Vec<usize> {
        match self {
            FactorSpec::Path(n) => {
                let mut out = Vec::with_capacity(2);
                if a > 0 {
                    out.push(a - 1);
                }
                if a + 1 < *n {
                    out.push(a + 1);
                }
                out
            }
            FactorSpec::Cycle(n) => {
                let n = *n;
                let mut out = Vec::with_capacity(2);
                if n == 1 {
                    return out;
                }
                out.push((a + n - 1) % n);
                let next = (a + 1) % n;
                if !out.contains(&next) {
                    out.push(next);
                }
                out.sort_unstable();
                out
            }
            FactorSpec::Explicit(g) => g.neighbors(a).to_vec(),
        }
    }

    /// Coordinates within distance `r` of `a`, in ascending order.
    fn reach(&self, a: usize, r: u32) -> Vec<(usize, u32)> {
        match self {
            FactorSpec::Path(n) => {
                let lo = a.saturating_sub(r as usize);
                let hi = (a + r as usize).min(n - 1);
                (lo..=hi).map(|c| (c, a.abs_diff(c) as u32)).collect()
            }
            _ => (0..self.order())
                .filter_map(|c| {
                    let d = self.dist(a, c);
                    (d <= r).then_some((c, d))
                })
                .collect(),
        }
    }
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorSpec::Path(n) => write!(f, "P{n}"),
            FactorSpec::Cycle(n) => write!(f, "C{n}"),
            FactorSpec::Explicit(g) => match g.source() {
                Some(path) => write!(f, "@{path}"),
                None => write!(f, "@<inline:{}>", g.order()),
            },
        }
    }
}

/// An ordered sequence of factors with the product (sum) metric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductGraph {
    factors: Vec<FactorSpec>,
    strides: Vec<usize>,
    vertex_count: usize,
}

impl ProductGraph {
    pub fn new(factors: Vec<FactorSpec>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Syntax {
                spec: String::new(),
                reason: "a product needs at least one factor".into(),
            });
        }
        let mut strides = vec![1usize; factors.len()];
        let mut vertex_count = 1usize;
        for (i, f) in factors.iter().enumerate().rev() {
            if f.order() == 0 {
                return Err(Error::ZeroOrder);
            }
            strides[i] = vertex_count;
            vertex_count = vertex_count
                .checked_mul(f.order())
                .ok_or_else(|| Error::Syntax {
                    spec: String::new(),
                    reason: "vertex count overflows".into(),
                })?;
        }
        Ok(ProductGraph {
            factors,
            strides,
            vertex_count,
        })
    }

    /// Parses `factor ("x" factor)*` where a factor is `C<n>`, `P<n>` or
    /// `@<path>` naming an explicit graph file.
    pub fn parse(text: &str) -> Result<Self> {
        let syntax = |reason: String| Error::Syntax {
            spec: text.to_string(),
            reason,
        };
        let text_trim = text.trim();
        if text_trim.is_empty() {
            return Err(syntax("empty spec".into()));
        }
        let bytes = text_trim.as_bytes();
        let mut factors = Vec::new();
        let mut pos = 0;
        loop {
            let kind = bytes[pos];
            pos += 1;
            match kind {
                b'C' | b'P' => {
                    let start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if start == pos {
                        return Err(syntax(format!("missing order after `{}`", kind as char)));
                    }
                    let order: usize = text_trim[start..pos]
                        .parse()
                        .map_err(|e| syntax(format!("bad order: {e}")))?;
                    factors.push(if kind == b'C' {
                        FactorSpec::cycle(order)?
                    } else {
                        FactorSpec::path(order)?
                    });
                }
                b'@' => {
                    // the path runs up to the next `x` that starts another factor
                    let start = pos;
                    while pos < bytes.len() && !starts_factor(&bytes[pos..]) {
                        pos += 1;
                    }
                    if start == pos {
                        return Err(syntax("missing path after `@`".into()));
                    }
                    let graph = ExplicitGraph::load(Path::new(&text_trim[start..pos]))?;
                    factors.push(FactorSpec::explicit(graph));
                }
                other => {
                    return Err(syntax(format!(
                        "unexpected `{}` at offset {}",
                        other as char,
                        pos - 1
                    )))
                }
            }
            if pos == bytes.len() {
                break;
            }
            if bytes[pos] != b'x' || pos + 1 == bytes.len() {
                return Err(syntax(format!("expected `x` at offset {pos}")));
            }
            pos += 1;
        }
        Self::new(factors)
    }

    pub fn factors(&self) -> &[FactorSpec] {
        &self.factors
    }

    pub fn factor(&self, axis: usize) -> &FactorSpec {
        &self.factors[axis]
    }

    pub fn dimension(&self) -> usize {
        self.factors.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn orders(&self) -> Vec<usize> {
        self.factors.iter().map(FactorSpec::order).collect()
    }

    pub fn is_all_cycles(&self) -> bool {
        self.factors.iter().all(FactorSpec::is_cycle)
    }

    /// Sum of factor diameters, the largest distance in the graph.
    pub fn diameter(&self) -> u32 {
        self.factors.iter().map(FactorSpec::diameter).sum()
    }

    pub fn check_vertex(&self, v: &Vertex) -> Result<()> {
        self.check_coords(v.coords())
    }

    fn check_coords(&self, coords: &[usize]) -> Result<()> {
        if coords.len() != self.factors.len() {
            return Err(Error::DimensionMismatch {
                expected: self.factors.len(),
                found: coords.len(),
            });
        }
        for (axis, (&c, f)) in coords.iter().zip(&self.factors).enumerate() {
            if c >= f.order() {
                return Err(Error::CoordinateOutOfRange {
                    axis,
                    value: c as i64,
                    order: f.order(),
                });
            }
        }
        Ok(())
    }

    /// Lexicographic rank of a valid vertex.
    pub fn index_of(&self, v: &Vertex) -> usize {
        self.index_of_coords(v.coords())
    }

    pub(crate) fn index_of_coords(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    pub fn vertex_at(&self, index: usize) -> Vertex {
        Vertex(self.coords_at(index))
    }

    pub(crate) fn coords_at(&self, mut index: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|s| {
                let c = index / s;
                index %= s;
                c
            })
            .collect()
    }

    #[inline]
    pub(crate) fn dist_coords(&self, a: &[usize], b: &[usize]) -> u32 {
        self.factors
            .iter()
            .zip(a.iter().zip(b))
            .map(|(f, (&x, &y))| f.dist(x, y))
            .sum()
    }

    /// Shortest-path distance: the sum of the per-factor distances.
    pub fn distance(&self, u: &Vertex, v: &Vertex) -> Result<u32> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.dist_coords(u.coords(), v.coords()))
    }

    /// All vertices within distance `r` of `x`, in lexicographic order.
    pub fn ball(&self, x: &Vertex, r: u32) -> Result<Vec<Vertex>> {
        self.check_vertex(x)?;
        let mut out = Vec::new();
        self.enumerate_around(x.coords(), r, false, |coords| {
            out.push(Vertex(coords.to_vec()))
        });
        Ok(out)
    }

    /// All vertices at distance exactly `r` from `x`, in lexicographic order.
    pub fn sphere(&self, x: &Vertex, r: u32) -> Result<Vec<Vertex>> {
        self.check_vertex(x)?;
        let mut out = Vec::new();
        self.enumerate_around(x.coords(), r, true, |coords| {
            out.push(Vertex(coords.to_vec()))
        });
        Ok(out)
    }

    /// Lexicographic ranks of the ball around a vertex given by rank.
    pub(crate) fn ball_indices(&self, center: usize, r: u32) -> Vec<usize> {
        let coords = self.coords_at(center);
        let mut out = Vec::new();
        self.enumerate_around(&coords, r, false, |c| out.push(self.index_of_coords(c)));
        out
    }

    /// Splits the radius across factors; visits points in lexicographic order.
    fn enumerate_around(
        &self,
        center: &[usize],
        r: u32,
        exact: bool,
        mut visit: impl FnMut(&[usize]),
    ) {
        let reach: Vec<Vec<(usize, u32)>> = self
            .factors
            .iter()
            .zip(center)
            .map(|(f, &c)| f.reach(c, r))
            .collect();
        // suffix_diam[i]: largest distance still reachable on factors i..
        let mut suffix_diam = vec![0u32; self.factors.len() + 1];
        for i in (0..self.factors.len()).rev() {
            suffix_diam[i] = suffix_diam[i + 1] + self.factors[i].diameter();
        }
        let mut current = vec![0usize; self.factors.len()];
        fn walk(
            axis: usize,
            left: u32,
            exact: bool,
            reach: &[Vec<(usize, u32)>],
            suffix_diam: &[u32],
            current: &mut [usize],
            visit: &mut dyn FnMut(&[usize]),
        ) {
            if axis == reach.len() {
                if !exact || left == 0 {
                    visit(current);
                }
                return;
            }
            for &(c, d) in &reach[axis] {
                if d > left {
                    continue;
                }
                if exact && left - d > suffix_diam[axis + 1] {
                    continue;
                }
                current[axis] = c;
                walk(
                    axis + 1,
                    left - d,
                    exact,
                    reach,
                    suffix_diam,
                    current,
                    visit,
                );
            }
        }
        walk(0, r, exact, &reach, &suffix_diam, &mut current, &mut visit);
    }

    /// `offset + set`, coordinate-wise. Cycle offsets may be any integer and
    /// wrap; path offsets are allowed while every result stays in range;
    /// explicit factors only accept a zero offset.
    pub fn translate(&self, offset: &[i64], set: &[Vertex]) -> Result<Vec<Vertex>> {
        if offset.len() != self.factors.len() {
            return Err(Error::DimensionMismatch {
                expected: self.factors.len(),
                found: offset.len(),
            });
        }
        for (axis, (f, &o)) in self.factors.iter().zip(offset).enumerate() {
            if o != 0 && matches!(f, FactorSpec::Explicit(_)) {
                return Err(Error::OffsetOnExplicitFactor { axis });
            }
        }
        set.iter()
            .map(|v| {
                self.check_vertex(v)?;
                let coords = v
                    .coords()
                    .iter()
                    .zip(offset)
                    .zip(&self.factors)
                    .enumerate()
                    .map(|(axis, ((&c, &o), f))| {
                        let order = f.order() as i64;
                        let moved = c as i64 + o;
                        match f {
                            FactorSpec::Cycle(_) => Ok(moved.rem_euclid(order) as usize),
                            _ if (0..order).contains(&moved) => Ok(moved as usize),
                            _ => Err(Error::TranslateOutOfRange {
                                axis,
                                value: moved,
                                order: order as usize,
                            }),
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Vertex(coords))
            })
            .collect()
    }

    /// The product with one more factor appended.
    pub fn extend(&self, factor: FactorSpec) -> Result<ProductGraph> {
        let mut factors = self.factors.clone();
        factors.push(factor);
        ProductGraph::new(factors)
    }

    /// `set ⊕ levels`: every vertex of `set` paired with every level of the
    /// appended factor. Returns the extended graph and the new set.
    pub fn direct_sum(
        &self,
        set: &[Vertex],
        levels: &[usize],
        factor: FactorSpec,
    ) -> Result<(ProductGraph, Vec<Vertex>)> {
        for &level in levels {
            if level >= factor.order() {
                return Err(Error::LevelOutOfRange {
                    level,
                    order: factor.order(),
                });
            }
        }
        for v in set {
            self.check_vertex(v)?;
        }
        let graph = self.extend(factor)?;
        Ok((graph, lift(set, levels)))
    }

    /// Lexicographic stream of all vertices.
    pub fn vertices(&self) -> Vertices<'_> {
        Vertices {
            graph: self,
            next: Some(vec![0; self.factors.len()]),
        }
    }

    pub fn neighbors(&self, v: &Vertex) -> Result<Vec<Vertex>> {
        self.check_vertex(v)?;
        let mut out = Vec::new();
        for axis in 0..self.factors.len() {
            for c in self.factors[axis].neighbors(v.0[axis]) {
                let mut w = v.0.clone();
                w[axis] = c;
                out.push(Vertex(w));
            }
        }
        out.sort();
        Ok(out)
    }

    pub(crate) fn neighbor_indices(&self, index: usize, coords: &[usize], out: &mut Vec<usize>) {
        out.clear();
        for (axis, f) in self.factors.iter().enumerate() {
            let base = index - coords[axis] * self.strides[axis];
            for c in f.neighbors(coords[axis]) {
                out.push(base + c * self.strides[axis]);
            }
        }
    }

    /// Materializes the product as an explicit graph; vertex `i` is the
    /// vertex of lexicographic rank `i`.
    pub fn explicit_expand(&self, cap: usize) -> Result<ExplicitGraph> {
        if self.vertex_count > cap {
            return Err(Error::CapExceeded {
                vertices: self.vertex_count,
                cap,
            });
        }
        let mut edges = Vec::new();
        let mut scratch = Vec::new();
        for (i, v) in self.vertices().enumerate() {
            self.neighbor_indices(i, v.coords(), &mut scratch);
            edges.extend(scratch.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        ExplicitGraph::new(self.vertex_count, &edges)
    }
}

fn starts_factor(rest: &[u8]) -> bool {
    rest.len() >= 2
        && rest[0] == b'x'
        && (rest[1] == b'@'
            || ((rest[1] == b'C' || rest[1] == b'P')
                && rest.get(2).is_some_and(u8::is_ascii_digit)))
}

pub(crate) fn lift(set: &[Vertex], levels: &[usize]) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(set.len() * levels.len());
    for v in set {
        for &level in levels {
            let mut coords = v.0.clone();
            coords.push(level);
            out.push(Vertex(coords));
        }
    }
    out
}

impl FromStr for ProductGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProductGraph::parse(s)
    }
}

impl fmt::Display for ProductGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

pub struct Vertices<'a> {
    graph: &'a ProductGraph,
    next: Option<Vec<usize>>,
}

impl Iterator for Vertices<'_> {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for axis in (0..succ.len()).rev() {
            succ[axis] += 1;
            if succ[axis] < self.graph.factors[axis].order() {
                self.next = Some(succ);
                break;
            }
            succ[axis] = 0;
        }
        Some(Vertex(current))
    }
}
