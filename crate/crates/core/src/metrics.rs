//! Exact classification of codes: minimum distance, covering radius and the
//! perfect / quasi-perfect label.
//!
//! With `r` the covering radius and `d` the minimum pairwise distance, a code
//! is labelled `perfect(r)` when `d >= 2r + 1`, otherwise `quasi_perfect(r - 1)`
//! when `r >= 1` and `d >= 2r - 1`, otherwise `neither`. A single codeword has
//! no pairwise constraint and is always `perfect(r)`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{ProductGraph, Vertex};

/// A set of codewords in a specific product graph, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    graph: ProductGraph,
    codewords: Vec<Vertex>,
}

impl Code {
    /// Validates every codeword and rejects duplicates. The empty code is
    /// representable but every metric on it fails with [`Error::EmptyCode`].
    pub fn new(graph: ProductGraph, mut codewords: Vec<Vertex>) -> Result<Self> {
        for c in &codewords {
            graph.check_vertex(c)?;
        }
        codewords.sort();
        if let Some(w) = codewords.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateCodeword(w[0].clone()));
        }
        Ok(Code { graph, codewords })
    }

    pub fn graph(&self) -> &ProductGraph {
        &self.graph
    }

    pub fn codewords(&self) -> &[Vertex] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.codewords.binary_search(v).is_ok()
    }

    fn require_nonempty(&self) -> Result<()> {
        if self.codewords.is_empty() {
            Err(Error::EmptyCode)
        } else {
            Ok(())
        }
    }
}

/// Minimum pairwise distance; `Infinite` for a single codeword.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MinDistance {
    Finite(u32),
    Infinite,
}

impl MinDistance {
    pub fn at_least(self, bound: u32) -> bool {
        match self {
            MinDistance::Finite(d) => d >= bound,
            MinDistance::Infinite => true,
        }
    }
}

impl fmt::Display for MinDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinDistance::Finite(d) => write!(f, "{d}"),
            MinDistance::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for MinDistance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MinDistance::Finite(d) => s.serialize_u32(*d),
            MinDistance::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for MinDistance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(n) => Ok(MinDistance::Finite(n)),
            Raw::Str(s) if s == "inf" => Ok(MinDistance::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected \"inf\", got {s:?}"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodeKind {
    Perfect,
    QuasiPerfect,
}

impl fmt::Display for CodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeKind::Perfect => "perfect",
            CodeKind::QuasiPerfect => "quasi_perfect",
        })
    }
}

impl FromStr for CodeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "perfect" => Ok(CodeKind::Perfect),
            "quasi_perfect" | "quasi" | "quasi-perfect" => Ok(CodeKind::QuasiPerfect),
            other => Err(Error::Format(format!("unknown code kind `{other}`"))),
        }
    }
}

/// A statement "this code is a (quasi-)perfect e-error-correcting code".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Claim {
    pub kind: CodeKind,
    pub e: u32,
}

impl Claim {
    pub fn perfect(e: u32) -> Self {
        Claim {
            kind: CodeKind::Perfect,
            e,
        }
    }

    pub fn quasi_perfect(e: u32) -> Self {
        Claim {
            kind: CodeKind::QuasiPerfect,
            e,
        }
    }

    pub fn label(self) -> Label {
        match self.kind {
            CodeKind::Perfect => Label::Perfect(self.e),
            CodeKind::QuasiPerfect => Label::QuasiPerfect(self.e),
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.label().fmt(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Perfect(u32),
    QuasiPerfect(u32),
    Neither,
}

impl Label {
    /// The labelling rule applied to a minimum distance and covering radius.
    pub fn from_parameters(min_distance: MinDistance, covering_radius: u32) -> Label {
        let r = covering_radius;
        if min_distance.at_least(2 * r + 1) {
            Label::Perfect(r)
        } else if r >= 1 && min_distance.at_least(2 * r - 1) {
            Label::QuasiPerfect(r - 1)
        } else {
            Label::Neither
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Perfect(e) => write!(f, "perfect({e})"),
            Label::QuasiPerfect(e) => write!(f, "quasi_perfect({e})"),
            Label::Neither => f.write_str("neither"),
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "neither" {
            return Ok(Label::Neither);
        }
        let bad = || Error::Format(format!("bad label `{s}`"));
        let (kind, rest) = s.split_once('(').ok_or_else(bad)?;
        let e = rest
            .strip_suffix(')')
            .and_then(|n| n.parse().ok())
            .ok_or_else(bad)?;
        match kind {
            "perfect" => Ok(Label::Perfect(e)),
            "quasi_perfect" => Ok(Label::QuasiPerfect(e)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub min_distance: MinDistance,
    pub covering_radius: u32,
    pub label: Label,
    /// Lexicographically first pair realizing the minimum distance.
    pub closest_pair: Option<(Vertex, Vertex)>,
    /// Lexicographically first vertex realizing the covering radius.
    pub farthest_vertex: Vertex,
    /// `histogram[k]` counts vertices at distance exactly `k` from the code.
    pub histogram: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub claim: Claim,
    pub holds: bool,
    pub report: CodeReport,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingCensus {
    pub sum_ball_sizes: u64,
    pub vertex_count: u64,
    pub overlap_count: u64,
}

/// How the distance-to-code map is computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CoverStrategy {
    /// Minimum of the analytic distance to every codeword, for every vertex.
    #[default]
    Sweep,
    /// Multi-source breadth-first expansion over implicit neighbours.
    Frontier,
}

pub fn min_pairwise_distance(code: &Code) -> Result<MinDistance> {
    Ok(closest_pair(code)?.0)
}

fn closest_pair(code: &Code) -> Result<(MinDistance, Option<(Vertex, Vertex)>)> {
    code.require_nonempty()?;
    let g = code.graph();
    let words = code.codewords();
    let best = (0..words.len())
        .into_par_iter()
        .filter_map(|i| {
            ((i + 1)..words.len())
                .map(|j| (g.dist_coords(words[i].coords(), words[j].coords()), i, j))
                .min()
        })
        .min();
    Ok(match best {
        Some((d, i, j)) => (
            MinDistance::Finite(d),
            Some((words[i].clone(), words[j].clone())),
        ),
        None => (MinDistance::Infinite, None),
    })
}

pub fn distance_to_code(code: &Code, v: &Vertex) -> Result<u32> {
    code.require_nonempty()?;
    code.graph().check_vertex(v)?;
    Ok(code
        .codewords()
        .iter()
        .map(|c| code.graph().dist_coords(v.coords(), c.coords()))
        .min()
        .expect("nonempty"))
}

/// Distance from every vertex (by lexicographic rank) to the code.
pub fn distance_map(code: &Code, strategy: CoverStrategy) -> Result<Vec<u32>> {
    code.require_nonempty()?;
    Ok(match strategy {
        CoverStrategy::Sweep => sweep(code),
        CoverStrategy::Frontier => frontier(code),
    })
}

const SWEEP_CHUNK: usize = 1024;

fn sweep(code: &Code) -> Vec<u32> {
    let g = code.graph();
    let words: Vec<&[usize]> = code.codewords().iter().map(Vertex::coords).collect();
    let mut map = vec![0u32; g.vertex_count()];
    map.par_chunks_mut(SWEEP_CHUNK)
        .enumerate()
        .for_each(|(chunk, out)| {
            let mut coords = g.coords_at(chunk * SWEEP_CHUNK);
            for slot in out.iter_mut() {
                *slot = words
                    .iter()
                    .map(|c| g.dist_coords(&coords, c))
                    .min()
                    .expect("nonempty");
                advance(g, &mut coords);
            }
        });
    map
}

fn advance(g: &ProductGraph, coords: &mut [usize]) {
    for axis in (0..coords.len()).rev() {
        coords[axis] += 1;
        if coords[axis] < g.factor(axis).order() {
            return;
        }
        coords[axis] = 0;
    }
}

fn frontier(code: &Code) -> Vec<u32> {
    let g = code.graph();
    let mut map = vec![u32::MAX; g.vertex_count()];
    let mut queue = VecDeque::new();
    for c in code.codewords() {
        let i = g.index_of(c);
        map[i] = 0;
        queue.push_back(i);
    }
    let mut scratch = Vec::new();
    while let Some(u) = queue.pop_front() {
        let coords = g.coords_at(u);
        g.neighbor_indices(u, &coords, &mut scratch);
        for &w in &scratch {
            if map[w] == u32::MAX {
                map[w] = map[u] + 1;
                queue.push_back(w);
            }
        }
    }
    map
}

pub fn covering_radius(code: &Code) -> Result<u32> {
    covering_radius_with(code, CoverStrategy::Sweep)
}

pub fn covering_radius_with(code: &Code, strategy: CoverStrategy) -> Result<u32> {
    Ok(distance_map(code, strategy)?
        .into_iter()
        .max()
        .expect("graphs have a vertex"))
}

fn histogram_of(map: &[u32]) -> Vec<u64> {
    let radius = map.iter().copied().max().unwrap_or(0) as usize;
    let mut counts = vec![0u64; radius + 1];
    for &d in map {
        counts[d as usize] += 1;
    }
    counts
}

pub fn distance_histogram(code: &Code) -> Result<Vec<u64>> {
    Ok(histogram_of(&distance_map(code, CoverStrategy::Sweep)?))
}

pub fn classify(code: &Code) -> Result<CodeReport> {
    let (min_distance, pair) = closest_pair(code)?;
    let map = distance_map(code, CoverStrategy::Sweep)?;
    let covering_radius = map.iter().copied().max().expect("graphs have a vertex");
    let farthest = map
        .iter()
        .position(|&d| d == covering_radius)
        .expect("max is attained");
    Ok(CodeReport {
        min_distance,
        covering_radius,
        label: Label::from_parameters(min_distance, covering_radius),
        closest_pair: pair,
        farthest_vertex: code.graph().vertex_at(farthest),
        histogram: histogram_of(&map),
    })
}

/// Holds exactly when the classifier's label equals the claim.
pub fn check_claim(code: &Code, claim: Claim) -> Result<Verdict> {
    let report = classify(code)?;
    Ok(Verdict {
        claim,
        holds: report.label == claim.label(),
        report,
    })
}

pub fn sphere_packing_census(code: &Code, e: u32) -> Result<PackingCensus> {
    code.require_nonempty()?;
    let g = code.graph();
    let mut seen = vec![false; g.vertex_count()];
    let mut sum = 0u64;
    let mut union = 0u64;
    for c in code.codewords() {
        for i in g.ball_indices(g.index_of(c), e) {
            sum += 1;
            if !seen[i] {
                seen[i] = true;
                union += 1;
            }
        }
    }
    Ok(PackingCensus {
        sum_ball_sizes: sum,
        vertex_count: g.vertex_count() as u64,
        overlap_count: sum - union,
    })
}
