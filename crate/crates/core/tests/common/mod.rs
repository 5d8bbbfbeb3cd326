//! Reference implementations used as oracles. Nothing here calls the
//! library's metric: the product is rebuilt from its factor descriptions and
//! every distance comes from a plain breadth-first search.

#![allow(dead_code)]

use std::collections::VecDeque;
use std::sync::Arc;

use qpcode::{ExplicitGraph, FactorSpec, ProductGraph, Vertex};
use rand::rngs::StdRng;
use rand::Rng;

/// A factor as the oracle sees it: an order and an adjacency list.
#[derive(Clone, Debug)]
pub struct NaiveFactor {
    pub order: usize,
    pub adj: Vec<Vec<usize>>,
}

impl NaiveFactor {
    pub fn path(n: usize) -> Self {
        let adj = (0..n)
            .map(|i| {
                let mut v = Vec::new();
                if i > 0 {
                    v.push(i - 1);
                }
                if i + 1 < n {
                    v.push(i + 1);
                }
                v
            })
            .collect();
        NaiveFactor { order: n, adj }
    }

    pub fn cycle(n: usize) -> Self {
        let adj = (0..n)
            .map(|i| {
                let mut v = Vec::new();
                if n > 1 {
                    v.push((i + 1) % n);
                    v.push((i + n - 1) % n);
                }
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        NaiveFactor { order: n, adj }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        NaiveFactor { order: n, adj }
    }
}

/// The expanded product: vertices in mixed radix (last coordinate fastest),
/// edges changing exactly one coordinate along a factor edge.
pub struct NaiveProduct {
    pub orders: Vec<usize>,
    pub adj: Vec<Vec<usize>>,
}

impl NaiveProduct {
    pub fn new(factors: &[NaiveFactor]) -> Self {
        let orders: Vec<usize> = factors.iter().map(|f| f.order).collect();
        let n: usize = orders.iter().product();
        let mut adj = vec![Vec::new(); n];
        for (v, list) in adj.iter_mut().enumerate() {
            let coords = decode(&orders, v);
            for (axis, f) in factors.iter().enumerate() {
                for &w in &f.adj[coords[axis]] {
                    let mut c = coords.clone();
                    c[axis] = w;
                    list.push(encode(&orders, &c));
                }
            }
        }
        NaiveProduct { orders, adj }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn bfs(&self, sources: &[usize]) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            dist[s] = 0;
            queue.push_back(s);
        }
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn all_pairs(&self) -> Vec<Vec<u32>> {
        (0..self.len()).map(|s| self.bfs(&[s])).collect()
    }
}

pub fn decode(orders: &[usize], mut index: usize) -> Vec<usize> {
    let mut c = vec![0; orders.len()];
    for axis in (0..orders.len()).rev() {
        c[axis] = index % orders[axis];
        index /= orders[axis];
    }
    c
}

pub fn encode(orders: &[usize], coords: &[usize]) -> usize {
    coords
        .iter()
        .zip(orders)
        .fold(0, |acc, (&c, &n)| acc * n + c)
}

/// What the oracle reports about a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaiveReport {
    /// `None` for a single codeword.
    pub min_distance: Option<u32>,
    pub covering_radius: u32,
    pub histogram: Vec<u64>,
    pub label: String,
}

/// Labels a code directly from the definitions: t-error-correcting means
/// pairwise distance at least 2t + 1; perfect means additionally covering
/// radius t; quasi-perfect means covering radius t + 1.
pub fn naive_label(min_distance: Option<u32>, radius: u32) -> String {
    let corrects = |t: u32| min_distance.is_none_or(|d| d > 2 * t);
    if corrects(radius) {
        format!("perfect({radius})")
    } else if radius >= 1 && corrects(radius - 1) {
        format!("quasi_perfect({})", radius - 1)
    } else {
        "neither".to_string()
    }
}

pub fn naive_classify(product: &NaiveProduct, code: &[usize]) -> NaiveReport {
    let mut min_distance: Option<u32> = None;
    for (i, &a) in code.iter().enumerate() {
        let from_a = product.bfs(&[a]);
        for &b in &code[i + 1..] {
            let d = from_a[b];
            min_distance = Some(min_distance.map_or(d, |m| m.min(d)));
        }
    }
    let dist = product.bfs(code);
    let radius = *dist.iter().max().unwrap();
    let mut histogram = vec![0u64; radius as usize + 1];
    for &d in &dist {
        histogram[d as usize] += 1;
    }
    NaiveReport {
        min_distance,
        covering_radius: radius,
        histogram,
        label: naive_label(min_distance, radius),
    }
}

/// Every subset of `size` ranks, in lexicographic order.
pub fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, size, 0, &mut Vec::new(), &mut out);
    out
}

/// A factor described twice: for the library and for the oracle.
#[derive(Clone, Debug)]
pub struct FactorPair {
    pub spec: FactorSpec,
    pub naive: NaiveFactor,
}

pub fn path_pair(n: usize) -> FactorPair {
    FactorPair {
        spec: FactorSpec::path(n).unwrap(),
        naive: NaiveFactor::path(n),
    }
}

pub fn cycle_pair(n: usize) -> FactorPair {
    FactorPair {
        spec: FactorSpec::cycle(n).unwrap(),
        naive: NaiveFactor::cycle(n),
    }
}

/// A connected simple graph: a random spanning tree (`parents[i - 1] % i` is
/// the parent of `i`) plus the extra pairs selected by the bits of `extra`.
pub fn explicit_pair(n: usize, parents: &[usize], extra: u64) -> FactorPair {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (parents[i - 1] % i, i)).collect();
    let mut bit = 0;
    for a in 0..n {
        for b in a + 1..n {
            if extra >> (bit % 64) & 1 == 1 && !edges.contains(&(a, b)) {
                edges.push((a, b));
            }
            bit += 1;
        }
    }
    let g = ExplicitGraph::new(n, &edges).unwrap();
    FactorPair {
        spec: FactorSpec::Explicit(Arc::new(g)),
        naive: NaiveFactor::from_edges(n, &edges),
    }
}

pub fn build(pairs: &[FactorPair]) -> (ProductGraph, NaiveProduct) {
    let g = ProductGraph::new(pairs.iter().map(|p| p.spec.clone()).collect()).unwrap();
    let naive: Vec<NaiveFactor> = pairs.iter().map(|p| p.naive.clone()).collect();
    (g, NaiveProduct::new(&naive))
}

/// A random product of 1 to 3 mixed factors with at most `max_vertices`
/// vertices.
pub fn random_product(rng: &mut StdRng, max_vertices: usize) -> Vec<FactorPair> {
    loop {
        let dim = rng.gen_range(1..=3);
        let mut pairs = Vec::new();
        let mut total = 1usize;
        for _ in 0..dim {
            let n = rng.gen_range(1..=8);
            let pair = match rng.gen_range(0..3) {
                0 => path_pair(n),
                1 => cycle_pair(n),
                _ => {
                    let n = n.clamp(1, 6);
                    let parents: Vec<usize> = (0..n).map(|_| rng.gen_range(0..64)).collect();
                    explicit_pair(n, &parents, rng.gen())
                }
            };
            total *= pair.naive.order;
            pairs.push(pair);
        }
        if total <= max_vertices {
            return pairs;
        }
    }
}

/// `size` distinct random ranks, sorted.
pub fn random_code(rng: &mut StdRng, n: usize, size: usize) -> Vec<usize> {
    let mut picked = rand::seq::index::sample(rng, n, size.min(n)).into_vec();
    picked.sort_unstable();
    picked
}

pub fn vertices(g: &ProductGraph, ranks: &[usize]) -> Vec<Vertex> {
    ranks.iter().map(|&r| g.vertex_at(r)).collect()
}
