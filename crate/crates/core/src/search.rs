//! Exhaustive backtracking search for perfect and quasi-perfect codes.
//!
//! Codes of a fixed size are enumerated as increasing sequences of vertex
//! ranks, so the first code found is the lexicographically smallest one.
//! Three prunings keep this tractable:
//!
//! 1. a candidate within distance `2e` of a chosen codeword is skipped;
//! 2. the lowest-ranked uncovered vertex `u` must be covered by a later
//!    codeword, so the next codeword can be no larger than the largest
//!    compatible vertex of the ball of radius `R` around `u` (`R = e` for
//!    perfect codes, `e + 1` for quasi-perfect ones);
//! 3. the uncovered vertices must fit into the remaining codewords' balls,
//!    and the remaining codewords' disjoint radius-`e` balls must fit into
//!    the vertices that are still free.
//!
//! On a product of cycles, `symmetry_break` fixes the first codeword at the
//! all-zero vertex; every code has a translate through it.
//!
//! Branches below the first decision are explored in parallel and merged in
//! branch order, so the outcome (witness and node count) does not depend on
//! the number of worker threads.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ProductGraph, DEFAULT_EXPANSION_CAP};
use crate::metrics::{Claim, Code, CodeKind, Label, MinDistance};

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub graph: ProductGraph,
    pub kind: CodeKind,
    pub e: u32,
    pub size_min: usize,
    pub size_max: usize,
    /// Lexicographic enumeration; a failed exhaustive search proves absence.
    /// Otherwise the search branches on the neighbourhood of the first
    /// uncovered vertex, which finds witnesses faster but proves nothing.
    pub exhaustive: bool,
    pub symmetry_break: bool,
    pub node_budget: Option<u64>,
    pub cap: usize,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl SearchSpec {
    /// Exhaustive search over every size, with symmetry breaking on tori.
    pub fn new(graph: ProductGraph, kind: CodeKind, e: u32) -> Self {
        let size_max = graph.vertex_count();
        let symmetry_break = graph.is_all_cycles();
        SearchSpec {
            graph,
            kind,
            e,
            size_min: 1,
            size_max,
            exhaustive: true,
            symmetry_break,
            node_budget: None,
            cap: DEFAULT_EXPANSION_CAP,
            threads: None,
        }
    }

    pub fn sizes(mut self, min: usize, max: usize) -> Self {
        self.size_min = min;
        self.size_max = max;
        self
    }

    pub fn claim(&self) -> Claim {
        Claim {
            kind: self.kind,
            e: self.e,
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.graph.vertex_count();
        if n > self.cap {
            return Err(Error::CapExceeded {
                vertices: n,
                cap: self.cap,
            });
        }
        if self.size_min == 0 || self.size_min > self.size_max || self.size_max > n {
            return Err(Error::InvalidSearch(format!(
                "sizes must satisfy 1 <= size_min <= size_max <= {n}, got {}..{}",
                self.size_min, self.size_max
            )));
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidSearch("threads must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Found,
    None,
    Inconclusive,
}

/// Parameters echoed back with every outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub graph: String,
    pub claim: Claim,
    pub size_min: usize,
    pub size_max: usize,
    pub exhaustive: bool,
    pub symmetry_break: bool,
    pub node_budget: Option<u64>,
    /// Sizes for which the search completed without a witness.
    pub sizes_refuted: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub witness: Option<Code>,
    pub nodes_explored: u64,
    pub certificate: Certificate,
}

/// Serialized as the size itself, `"none"` or `"inconclusive"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MinSize {
    Size(usize),
    #[serde(with = "tag_none")]
    None,
    #[serde(with = "tag_inconclusive")]
    Inconclusive,
}

macro_rules! unit_tag {
    ($module:ident, $text:literal) => {
        mod $module {
            use serde::{de::Error, Deserialize, Deserializer, Serializer};

            pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str($text)
            }

            pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
                let s = String::deserialize(d)?;
                if s == $text {
                    Ok(())
                } else {
                    Err(D::Error::custom(concat!("expected ", $text)))
                }
            }
        }
    };
}

unit_tag!(tag_none, "none");
unit_tag!(tag_inconclusive, "inconclusive");

pub fn search_code(spec: &SearchSpec) -> Result<SearchOutcome> {
    spec.validate()?;
    match spec.threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::InvalidSearch(e.to_string()))?;
            pool.install(|| run(spec))
        }
        None => run(spec),
    }
}

/// Smallest code size admitting a witness, by an exhaustive ascending sweep.
pub fn min_code_size(graph: &ProductGraph, kind: CodeKind, e: u32) -> Result<MinSize> {
    Ok(min_code_size_with(&SearchSpec::new(graph.clone(), kind, e))?.0)
}

/// As [`min_code_size`] with the budget, cap and symmetry settings of `spec`;
/// its size range is ignored.
pub fn min_code_size_with(spec: &SearchSpec) -> Result<(MinSize, SearchOutcome)> {
    let mut spec = spec.clone();
    spec.exhaustive = true;
    spec.size_min = 1;
    spec.size_max = spec.graph.vertex_count();
    let outcome = search_code(&spec)?;
    let size = match outcome.status {
        SearchStatus::Found => MinSize::Size(outcome.witness.as_ref().map_or(0, Code::len)),
        SearchStatus::None => MinSize::None,
        SearchStatus::Inconclusive => MinSize::Inconclusive,
    };
    Ok((size, outcome))
}

/// Read-only data shared by every branch.
struct Tables {
    n: usize,
    dim: usize,
    coords: Vec<usize>,
    cover: u32,
    separation: u32,
    claim: Claim,
    /// `cover_balls[u]`: ranks within the covering radius of `u`, ascending.
    cover_balls: Vec<Vec<usize>>,
    /// `suffix_max_cover[i]`: largest covering ball among ranks `>= i`.
    suffix_max_cover: Vec<u64>,
    /// Smallest radius-`e` ball; these balls are disjoint in any valid code.
    min_packing_ball: u64,
}

impl Tables {
    fn new(spec: &SearchSpec) -> Self {
        let g = &spec.graph;
        let n = g.vertex_count();
        let dim = g.dimension();
        let cover = match spec.kind {
            CodeKind::Perfect => spec.e,
            CodeKind::QuasiPerfect => spec.e + 1,
        };
        let mut coords = Vec::with_capacity(n * dim);
        for v in g.vertices() {
            coords.extend_from_slice(v.coords());
        }
        let cover_balls: Vec<Vec<usize>> = (0..n).map(|u| g.ball_indices(u, cover)).collect();
        let mut suffix_max_cover = vec![0u64; n + 1];
        for i in (0..n).rev() {
            suffix_max_cover[i] = suffix_max_cover[i + 1].max(cover_balls[i].len() as u64);
        }
        let min_packing_ball = (0..n)
            .map(|u| g.ball_indices(u, spec.e).len() as u64)
            .min()
            .unwrap_or(1);
        Tables {
            n,
            dim,
            coords,
            cover,
            separation: 2 * spec.e + 1,
            claim: spec.claim(),
            cover_balls,
            suffix_max_cover,
            min_packing_ball,
        }
    }

    fn point(&self, i: usize) -> &[usize] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }
}

/// Mutable per-branch state with an undo log.
struct State<'a> {
    graph: &'a ProductGraph,
    t: &'a Tables,
    dist: Vec<u32>,
    chosen: Vec<usize>,
    min_pair: u32,
    uncovered: usize,
    free: usize,
    log: Vec<(usize, u32)>,
    marks: Vec<(usize, u32, usize, usize)>,
}

impl<'a> State<'a> {
    fn new(graph: &'a ProductGraph, t: &'a Tables) -> Self {
        State {
            graph,
            t,
            dist: vec![u32::MAX; t.n],
            chosen: Vec::new(),
            min_pair: u32::MAX,
            uncovered: t.n,
            free: t.n,
            log: Vec::new(),
            marks: Vec::new(),
        }
    }

    fn compatible(&self, c: usize) -> bool {
        self.dist[c] >= self.t.separation
    }

    fn push(&mut self, c: usize) {
        self.marks
            .push((self.log.len(), self.min_pair, self.uncovered, self.free));
        self.min_pair = self.min_pair.min(self.dist[c]);
        let cover = self.t.cover;
        let pack = self.t.separation / 2;
        let center = self.t.point(c);
        for v in 0..self.t.n {
            let d = self.graph.dist_coords(center, self.t.point(v));
            let old = self.dist[v];
            if d < old {
                self.log.push((v, old));
                self.dist[v] = d;
                if old > cover && d <= cover {
                    self.uncovered -= 1;
                }
                if old > pack && d <= pack {
                    self.free -= 1;
                }
            }
        }
        self.chosen.push(c);
    }

    fn pop(&mut self) {
        let (len, min_pair, uncovered, free) = self.marks.pop().expect("balanced push/pop");
        while self.log.len() > len {
            let (v, old) = self.log.pop().expect("nonempty");
            self.dist[v] = old;
        }
        self.min_pair = min_pair;
        self.uncovered = uncovered;
        self.free = free;
        self.chosen.pop();
    }

    fn first_uncovered(&self) -> Option<usize> {
        self.dist.iter().position(|&d| d > self.t.cover)
    }

    /// The full state is a code of the target size; check the exact label.
    fn accepts(&self) -> bool {
        if self.uncovered > 0 {
            return false;
        }
        let radius = self.dist.iter().copied().max().unwrap_or(0);
        let min = if self.chosen.len() < 2 {
            MinDistance::Infinite
        } else {
            MinDistance::Finite(self.min_pair)
        };
        Label::from_parameters(min, radius) == self.t.claim.label()
    }

    /// Whether `remaining` more codewords, all ranked `>= start`, could still
    /// complete the code.
    fn bounds_hold(&self, remaining: usize, start: usize) -> bool {
        let reach = remaining as u64 * self.t.suffix_max_cover[start.min(self.t.n)];
        if (self.uncovered as u64) > reach {
            return false;
        }
        remaining as u64 * self.t.min_packing_ball <= self.free as u64
    }
}

enum Stop {
    Budget,
    Cancelled,
}

struct Explorer<'a, 's> {
    state: State<'a>,
    size: usize,
    exhaustive: bool,
    nodes: u64,
    budget: Option<u64>,
    cancel: Option<(&'s AtomicUsize, usize)>,
}

impl Explorer<'_, '_> {
    /// Depth-first search from the current state. `Ok(true)` when the state
    /// now holds a witness.
    fn dfs(&mut self, start: usize) -> std::result::Result<bool, Stop> {
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            return Err(Stop::Budget);
        }
        if self.nodes.is_multiple_of(4096) {
            if let Some((flag, me)) = self.cancel {
                if flag.load(Ordering::Relaxed) < me {
                    return Err(Stop::Cancelled);
                }
            }
        }
        let depth = self.state.chosen.len();
        if depth == self.size {
            return Ok(self.state.accepts());
        }
        let remaining = self.size - depth;
        if !self.state.bounds_hold(remaining, start) {
            return Ok(false);
        }
        let n = self.state.t.n;
        let last = n - remaining;
        if self.exhaustive {
            let hi = match self.state.first_uncovered() {
                Some(u) => match self.state.t.cover_balls[u]
                    .iter()
                    .rev()
                    .find(|&&c| c >= start && self.state.compatible(c))
                {
                    Some(&c) => c,
                    None => return Ok(false),
                },
                None => n - 1,
            };
            for c in start..=hi.min(last) {
                if !self.state.compatible(c) {
                    continue;
                }
                self.state.push(c);
                if self.dfs(c + 1)? {
                    return Ok(true);
                }
                self.state.pop();
            }
            Ok(false)
        } else {
            match self.state.first_uncovered() {
                Some(u) => {
                    let ball = self.state.t.cover_balls[u].clone();
                    for c in ball {
                        if !self.state.compatible(c) || self.state.chosen.contains(&c) {
                            continue;
                        }
                        self.state.push(c);
                        if self.dfs(0)? {
                            return Ok(true);
                        }
                        self.state.pop();
                    }
                    Ok(false)
                }
                None => {
                    // covered already: pad with compatible vertices in rank order
                    for c in start..n {
                        if !self.state.compatible(c) {
                            continue;
                        }
                        self.state.push(c);
                        if self.dfs(c + 1)? {
                            return Ok(true);
                        }
                        self.state.pop();
                    }
                    Ok(false)
                }
            }
        }
    }
}

struct Branch {
    witness: Option<Vec<usize>>,
    nodes: u64,
    budget_hit: bool,
}

enum SizeResult {
    Found(Vec<usize>, u64),
    Refuted(u64),
    OutOfBudget(u64),
}

fn run(spec: &SearchSpec) -> Result<SearchOutcome> {
    let tables = Tables::new(spec);
    let symmetry = spec.symmetry_break && spec.graph.is_all_cycles();
    let mut certificate = Certificate {
        graph: spec.graph.to_string(),
        claim: spec.claim(),
        size_min: spec.size_min,
        size_max: spec.size_max,
        exhaustive: spec.exhaustive,
        symmetry_break: symmetry,
        node_budget: spec.node_budget,
        sizes_refuted: Vec::new(),
    };
    let mut nodes = 0u64;
    for size in spec.size_min..=spec.size_max {
        let left = spec.node_budget.map(|b| b.saturating_sub(nodes));
        match search_size(spec, &tables, size, symmetry, left) {
            SizeResult::Found(ranks, used) => {
                nodes += used;
                let words = ranks.iter().map(|&r| spec.graph.vertex_at(r)).collect();
                return Ok(SearchOutcome {
                    status: SearchStatus::Found,
                    witness: Some(Code::new(spec.graph.clone(), words)?),
                    nodes_explored: nodes,
                    certificate,
                });
            }
            SizeResult::Refuted(used) => {
                nodes += used;
                certificate.sizes_refuted.push(size);
            }
            SizeResult::OutOfBudget(used) => {
                nodes += used;
                return Ok(SearchOutcome {
                    status: SearchStatus::Inconclusive,
                    witness: None,
                    nodes_explored: nodes,
                    certificate,
                });
            }
        }
    }
    let status = if spec.exhaustive {
        SearchStatus::None
    } else {
        SearchStatus::Inconclusive
    };
    Ok(SearchOutcome {
        status,
        witness: None,
        nodes_explored: nodes,
        certificate,
    })
}

fn search_size(
    spec: &SearchSpec,
    t: &Tables,
    size: usize,
    symmetry: bool,
    budget: Option<u64>,
) -> SizeResult {
    let g = &spec.graph;
    // the root (and the fixed first codeword) count as explored nodes
    let mut prefix = Vec::new();
    let mut root_nodes = 1u64;
    if symmetry {
        prefix.push(0usize);
        root_nodes += 1;
    }
    if budget.is_some_and(|b| root_nodes > b) {
        return SizeResult::OutOfBudget(budget.unwrap_or(0));
    }
    let mut root = State::new(g, t);
    for &c in &prefix {
        root.push(c);
    }
    if prefix.len() == size {
        return if root.accepts() {
            SizeResult::Found(prefix, root_nodes)
        } else {
            SizeResult::Refuted(root_nodes)
        };
    }

    // first free decision: candidate list in rank order, each explored as an
    // independent branch
    let start = prefix.last().map_or(0, |&c| c + 1);
    let remaining = size - prefix.len();
    if !root.bounds_hold(remaining, start) {
        return SizeResult::Refuted(root_nodes);
    }
    let last = t.n - remaining;
    let candidates: Vec<usize> = if spec.exhaustive {
        let hi = match root.first_uncovered() {
            Some(u) => t.cover_balls[u]
                .iter()
                .rev()
                .find(|&&c| c >= start && root.compatible(c))
                .copied(),
            None => Some(t.n - 1),
        };
        match hi {
            Some(hi) => (start..=hi.min(last))
                .filter(|&c| root.compatible(c))
                .collect(),
            None => Vec::new(),
        }
    } else {
        match root.first_uncovered() {
            Some(u) => t.cover_balls[u]
                .iter()
                .copied()
                .filter(|&c| root.compatible(c) && !prefix.contains(&c))
                .collect(),
            None => (start..t.n).filter(|&c| root.compatible(c)).collect(),
        }
    };

    let stop_at = AtomicUsize::new(usize::MAX);
    let branches: Vec<Option<Branch>> = candidates
        .par_iter()
        .enumerate()
        .map(|(idx, &c)| {
            if stop_at.load(Ordering::Relaxed) < idx {
                return None;
            }
            let mut explorer = Explorer {
                state: State::new(g, t),
                size,
                exhaustive: spec.exhaustive,
                nodes: 0,
                budget: budget.map(|b| b.saturating_sub(root_nodes)),
                cancel: Some((&stop_at, idx)),
            };
            for &p in &prefix {
                explorer.state.push(p);
            }
            explorer.state.push(c);
            let next = if spec.exhaustive { c + 1 } else { start };
            let outcome = explorer.dfs(next);
            let branch = match outcome {
                Ok(true) => Branch {
                    witness: Some(explorer.state.chosen.clone()),
                    nodes: explorer.nodes,
                    budget_hit: false,
                },
                Ok(false) => Branch {
                    witness: None,
                    nodes: explorer.nodes,
                    budget_hit: false,
                },
                Err(Stop::Budget) => Branch {
                    witness: None,
                    nodes: explorer.nodes,
                    budget_hit: true,
                },
                Err(Stop::Cancelled) => return None,
            };
            if branch.witness.is_some() || branch.budget_hit {
                stop_at.fetch_min(idx, Ordering::Relaxed);
            }
            Some(branch)
        })
        .collect();

    // deterministic merge in branch order
    let mut used = root_nodes;
    for branch in branches {
        let branch = branch.expect("branches before the stopping point always complete");
        used += branch.nodes;
        let over = budget.is_some_and(|b| used > b);
        if branch.budget_hit || over {
            return SizeResult::OutOfBudget(budget.unwrap_or(used).min(used));
        }
        if let Some(mut w) = branch.witness {
            w.sort_unstable();
            return SizeResult::Found(w, used);
        }
    }
    SizeResult::Refuted(used)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Vertex;
    use crate::metrics::check_claim;

    fn spec(g: &str, kind: CodeKind, e: u32) -> SearchSpec {
        SearchSpec::new(ProductGraph::parse(g).unwrap(), kind, e)
    }

    #[test]
    fn finds_perfect_code_in_block_torus() {
        let s = spec("C3xC6xC2", CodeKind::Perfect, 1).sizes(6, 6);
        let out = search_code(&s).unwrap();
        assert_eq!(out.status, SearchStatus::Found);
        let w = out.witness.unwrap();
        assert_eq!(w.len(), 6);
        assert!(check_claim(&w, Claim::perfect(1)).unwrap().holds);
        assert_eq!(w.codewords()[0], Vertex::from([0, 0, 0]));
    }

    #[test]
    fn proves_no_perfect_code_in_c4xc4() {
        let out = search_code(&spec("C4xC4", CodeKind::Perfect, 1)).unwrap();
        assert_eq!(out.status, SearchStatus::None);
        assert_eq!(out.certificate.sizes_refuted, (1..=16).collect::<Vec<_>>());
    }

    #[test]
    fn quasi_code_in_c3_cubed() {
        let out = search_code(&spec("C3xC3xC3", CodeKind::QuasiPerfect, 1).sizes(1, 3)).unwrap();
        assert_eq!(out.status, SearchStatus::Found);
        let w = out.witness.unwrap();
        assert_eq!(w.len(), 3);
        assert!(check_claim(&w, Claim::quasi_perfect(1)).unwrap().holds);
    }

    #[test]
    fn min_sizes() {
        let g = |s: &str| ProductGraph::parse(s).unwrap();
        assert_eq!(
            min_code_size(&g("C3xC6xC2"), CodeKind::Perfect, 1).unwrap(),
            MinSize::Size(6)
        );
        assert_eq!(
            min_code_size(&g("P2xP2xP2"), CodeKind::Perfect, 1).unwrap(),
            MinSize::Size(2)
        );
        assert_eq!(
            min_code_size(&g("C3xC3xC3"), CodeKind::QuasiPerfect, 1).unwrap(),
            MinSize::Size(3)
        );
        assert_eq!(
            min_code_size(&g("C4xC4"), CodeKind::Perfect, 1).unwrap(),
            MinSize::None
        );
    }

    #[test]
    fn budget_makes_search_inconclusive() {
        let mut s = spec("C4xC4", CodeKind::Perfect, 1);
        s.node_budget = Some(5);
        let out = search_code(&s).unwrap();
        assert_eq!(out.status, SearchStatus::Inconclusive);
        assert!(out.nodes_explored <= 5);
        let (size, _) = min_code_size_with(&s).unwrap();
        assert_eq!(size, MinSize::Inconclusive);
    }

    #[test]
    fn non_exhaustive_never_claims_absence() {
        let mut s = spec("C4xC4", CodeKind::Perfect, 1);
        s.exhaustive = false;
        assert_eq!(search_code(&s).unwrap().status, SearchStatus::Inconclusive);
        let mut s = spec("C3xC6xC2", CodeKind::Perfect, 1).sizes(6, 6);
        s.exhaustive = false;
        let out = search_code(&s).unwrap();
        assert_eq!(out.status, SearchStatus::Found);
        assert!(
            check_claim(&out.witness.unwrap(), Claim::perfect(1))
                .unwrap()
                .holds
        );
    }

    #[test]
    fn perfect_two_code_of_size_two_in_c4xc6() {
        let out = search_code(&spec("C4xC6", CodeKind::Perfect, 2).sizes(1, 2)).unwrap();
        assert_eq!(out.status, SearchStatus::Found);
        let w = out.witness.unwrap();
        assert_eq!(w.codewords(), &[Vertex::from([0, 0]), Vertex::from([2, 3])]);
    }

    #[test]
    fn quasi_code_in_c4_cubed() {
        let out = search_code(&spec("C4xC4xC4", CodeKind::QuasiPerfect, 1)).unwrap();
        assert_eq!(out.status, SearchStatus::Found);
        assert!(
            check_claim(&out.witness.unwrap(), Claim::quasi_perfect(1))
                .unwrap()
                .holds
        );
    }

    #[test]
    fn symmetry_break_keeps_min_size() {
        for (g, kind, e) in [
            ("C3xC3xC3", CodeKind::QuasiPerfect, 1),
            ("C4xC4", CodeKind::Perfect, 1),
            ("C5xC5", CodeKind::Perfect, 1),
            ("C4xC6", CodeKind::Perfect, 2),
        ] {
            let mut s = spec(g, kind, e);
            let with = min_code_size_with(&s).unwrap().0;
            s.symmetry_break = false;
            assert_eq!(min_code_size_with(&s).unwrap().0, with, "{g}");
        }
    }

    #[test]
    fn outcome_independent_of_thread_count() {
        let mut s = spec("C4xC4xC4", CodeKind::QuasiPerfect, 1);
        s.threads = Some(1);
        let one = search_code(&s).unwrap();
        s.threads = Some(4);
        assert_eq!(search_code(&s).unwrap(), one);
        let mut s = spec("C4xC4", CodeKind::Perfect, 1);
        s.node_budget = Some(40);
        s.threads = Some(1);
        let one = search_code(&s).unwrap();
        s.threads = Some(3);
        assert_eq!(search_code(&s).unwrap(), one);
    }

    #[test]
    fn min_size_serialization() {
        for (m, text) in [
            (MinSize::Size(3), "3"),
            (MinSize::None, "\"none\""),
            (MinSize::Inconclusive, "\"inconclusive\""),
        ] {
            assert_eq!(serde_json::to_string(&m).unwrap(), text);
            assert_eq!(serde_json::from_str::<MinSize>(text).unwrap(), m);
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(
            search_code(&spec("C3", CodeKind::Perfect, 1).sizes(0, 2)),
            Err(Error::InvalidSearch(_))
        ));
        assert!(matches!(
            search_code(&spec("C3", CodeKind::Perfect, 1).sizes(2, 4)),
            Err(Error::InvalidSearch(_))
        ));
        let mut s = spec("C3xC3", CodeKind::Perfect, 1);
        s.cap = 8;
        assert!(matches!(search_code(&s), Err(Error::CapExceeded { .. })));
    }
}
