//! Uniform hypergraphs, their text/JSON file format, and generators.
//!
//! Vertices are stored as 0-based indices; the file format and all
//! user-facing output use 1-based labels. Vertex index 0 (label 1) is the
//! coordinate pinned by the projective normalization downstream.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_traits::{One, Zero};
use rand::seq::index::sample;
use rand::Rng;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    m: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds a hypergraph from 0-based edges. Edge order is kept; vertices
    /// inside each edge are sorted.
    pub fn new(n: usize, m: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let labelled: Vec<Vec<i64>> = edges
            .iter()
            .map(|e| e.iter().map(|&v| v as i64 + 1).collect())
            .collect();
        Self::from_labels(n, m, &labelled)
    }

    /// Builds a hypergraph from 1-based vertex labels, validating every edge.
    pub fn from_labels(n: usize, m: usize, edges: &[Vec<i64>]) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidHypergraph(format!("uniformity {m} is below 2")));
        }
        if n == 0 {
            return Err(Error::InvalidHypergraph("no vertices".into()));
        }
        if edges.is_empty() {
            return Err(Error::InvalidHypergraph("no edges".into()));
        }
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::with_capacity(edges.len());
        let mut out = Vec::with_capacity(edges.len());
        for (idx, labels) in edges.iter().enumerate() {
            let edge = idx + 1;
            if labels.len() != m {
                return Err(Error::EdgeSize {
                    edge,
                    found: labels.len(),
                    expected: m,
                });
            }
            if let Some(&label) = labels.iter().find(|&&l| l < 1 || l as u64 > n as u64) {
                return Err(Error::VertexOutOfRange { edge, label, n });
            }
            let mut vs: Vec<usize> = labels.iter().map(|&l| (l - 1) as usize).collect();
            vs.sort_unstable();
            if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateVertex {
                    edge,
                    vertex: w[0] as i64 + 1,
                });
            }
            if let Some(&first) = seen.get(&vs) {
                return Err(Error::DuplicateEdge { edge, first });
            }
            seen.insert(vs.clone(), edge);
            out.push(vs);
        }
        Ok(Hypergraph { n, m, edges: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let mut entries = vec![0u8; self.k() * self.n];
        for (row, e) in self.edges.iter().enumerate() {
            for &v in e {
                entries[row * self.n + v] = 1;
            }
        }
        IncidenceMatrix {
            rows: self.k(),
            cols: self.n,
            entries,
        }
    }

    /// Same hypergraph with edges listed in the given order.
    pub fn reorder_edges(&self, order: &[usize]) -> Result<Self> {
        let mut check: Vec<usize> = order.to_vec();
        check.sort_unstable();
        if check != (0..self.k()).collect::<Vec<_>>() {
            return Err(Error::InvalidHypergraph("edge order is not a permutation".into()));
        }
        Ok(Hypergraph {
            n: self.n,
            m: self.m,
            edges: order.iter().map(|&i| self.edges[i].clone()).collect(),
        })
    }

    pub fn connected_components(&self) -> Vec<Component> {
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                incident[v].push(i);
            }
        }
        let mut comp_of = vec![usize::MAX; self.n];
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.n {
            if comp_of[start] != usize::MAX {
                continue;
            }
            let id = groups.len();
            let mut members = vec![start];
            comp_of[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &e in &incident[v] {
                    for &w in &self.edges[e] {
                        if comp_of[w] == usize::MAX {
                            comp_of[w] = id;
                            members.push(w);
                            queue.push_back(w);
                        }
                    }
                }
            }
            members.sort_unstable();
            groups.push(members);
        }

        let mut comp_edges: Vec<Vec<Vec<usize>>> = vec![Vec::new(); groups.len()];
        for e in &self.edges {
            comp_edges[comp_of[e[0]]].push(e.clone());
        }
        groups
            .into_iter()
            .zip(comp_edges)
            .map(|(vertices, edges)| {
                let hypergraph = if edges.is_empty() {
                    None
                } else {
                    let local: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
                    let edges = edges.iter().map(|e| e.iter().map(|v| local[v]).collect()).collect();
                    Some(Hypergraph {
                        n: vertices.len(),
                        m: self.m,
                        edges,
                    })
                };
                Component { vertices, hypergraph }
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    pub fn component_count(&self) -> usize {
        self.connected_components().len()
    }

    pub fn to_json(&self) -> String {
        let edges: Vec<Vec<usize>> = self.edges.iter().map(|e| e.iter().map(|v| v + 1).collect()).collect();
        serde_json::json!({ "m": self.m, "n": self.n, "edges": edges }).to_string()
    }
}

impl fmt::Display for Hypergraph {
    /// Writes the text file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.m, self.n, self.k())?;
        for e in &self.edges {
            let labels: Vec<String> = e.iter().map(|v| (v + 1).to_string()).collect();
            writeln!(f, "{}", labels.join(" "))?;
        }
        Ok(())
    }
}

/// A connected component. `vertices` holds the original 0-based indices in
/// increasing order; local vertex `i` of `hypergraph` is `vertices[i]`.
/// Isolated vertices form components without a hypergraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub hypergraph: Option<Hypergraph>,
}

/// 0/1 edge-by-vertex incidence matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u8>,
}

impl IncidenceMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, edge: usize, vertex: usize) -> u8 {
        self.entries[edge * self.cols + vertex]
    }

    pub fn row(&self, edge: usize) -> &[u8] {
        &self.entries[edge * self.cols..(edge + 1) * self.cols]
    }

    pub fn to_matrix<T: Clone + Zero + One>(&self) -> Matrix<T> {
        let rows = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|&b| if b == 1 { T::one() } else { T::zero() })
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows).expect("rows have equal length")
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonHypergraph {
    m: usize,
    n: usize,
    edges: Vec<Vec<i64>>,
}

/// Parses the text format (`m n k` header, then `k` edge lines of 1-based
/// labels, `#` comment lines) or its JSON equivalent.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    if text.trim_start().starts_with('{') {
        let raw: JsonHypergraph = serde_json::from_str(text)?;
        return Hypergraph::from_labels(raw.n, raw.m, &raw.edges);
    }

    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::MalformedHeader("empty input".into()))?;
    let fields: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::MalformedHeader(format!("expected \"m n k\", got {header:?}")))?;
    let [m, n, k] = fields[..] else {
        return Err(Error::MalformedHeader(format!(
            "expected three integers \"m n k\", got {header:?}"
        )));
    };

    let mut edges = Vec::with_capacity(k);
    for line in lines {
        let labels: Vec<i64> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Malformed(format!("edge line {line:?} is not a list of integers")))?;
        edges.push(labels);
    }
    if edges.len() != k {
        return Err(Error::Malformed(format!(
            "header announces {k} edges, found {}",
            edges.len()
        )));
    }
    Hypergraph::from_labels(n, m, &edges)
}

/// All `m`-subsets of `n` vertices.
pub fn gen_complete(n: usize, m: usize) -> Result<Hypergraph> {
    if m < 2 || n <= m {
        return Err(Error::InvalidGenerator(format!(
            "complete hypergraph needs m >= 2 and n > m, got n={n} m={m}"
        )));
    }
    let mut edges = Vec::new();
    let mut comb: Vec<usize> = (0..m).collect();
    loop {
        edges.push(comb.clone());
        // advance to the next m-subset in lexicographic order
        let Some(i) = (0..m).rev().find(|&i| comb[i] != i + n - m) else {
            break;
        };
        comb[i] += 1;
        for j in i + 1..m {
            comb[j] = comb[j - 1] + 1;
        }
    }
    Hypergraph::new(n, m, edges)
}

/// Hyperstar: `t` edges sharing vertex 1, every other vertex of degree one.
pub fn gen_cored_star(t: usize, m: usize) -> Result<Hypergraph> {
    if t == 0 || m < 2 {
        return Err(Error::InvalidGenerator(format!(
            "star needs t >= 1 and m >= 2, got t={t} m={m}"
        )));
    }
    let edges = (0..t)
        .map(|i| {
            std::iter::once(0)
                .chain(1 + i * (m - 1)..1 + (i + 1) * (m - 1))
                .collect()
        })
        .collect();
    Hypergraph::new(1 + t * (m - 1), m, edges)
}

/// Generalized power hypergraph: every vertex of the simple graph `graph`
/// becomes a block of `m/2` vertices and every edge the union of two blocks.
pub fn gen_power(graph: &Hypergraph, m: usize) -> Result<Hypergraph> {
    if graph.m() != 2 {
        return Err(Error::InvalidGenerator(format!(
            "power construction expects a simple graph, got uniformity {}",
            graph.m()
        )));
    }
    if m < 2 || m % 2 == 1 {
        return Err(Error::InvalidGenerator(format!(
            "power construction needs even m >= 2, got {m}"
        )));
    }
    let half = m / 2;
    let edges = graph
        .edges()
        .iter()
        .map(|e| {
            let (u, v) = (e[0], e[1]);
            (u * half..(u + 1) * half).chain(v * half..(v + 1) * half).collect()
        })
        .collect();
    Hypergraph::new(graph.n() * half, m, edges)
}

/// Random connected `m`-uniform hypergraph on `n` vertices: a spanning chain
/// of edges, each touching the covered set and at least one new vertex, then
/// up to `extra_edges` further distinct random edges.
pub fn gen_random_connected<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    extra_edges: usize,
    rng: &mut R,
) -> Result<Hypergraph> {
    if m < 2 || n < m {
        return Err(Error::InvalidGenerator(format!(
            "random hypergraph needs m >= 2 and n >= m, got n={n} m={m}"
        )));
    }
    let mut covered = vec![false; n];
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut present: HashSet<Vec<usize>> = HashSet::new();

    let mut first: Vec<usize> = sample(rng, n, m).into_vec();
    first.sort_unstable();
    for &v in &first {
        covered[v] = true;
    }
    present.insert(first.clone());
    edges.push(first);

    loop {
        let inside: Vec<usize> = (0..n).filter(|&v| covered[v]).collect();
        let outside: Vec<usize> = (0..n).filter(|&v| !covered[v]).collect();
        if outside.is_empty() {
            break;
        }
        let anchor = inside[rng.gen_range(0..inside.len())];
        let min_new = (m - 1).saturating_sub(inside.len() - 1).max(1);
        let max_new = (m - 1).min(outside.len());
        let fresh_count = rng.gen_range(min_new..=max_new);
        let mut edge = vec![anchor];
        edge.extend(sample(rng, outside.len(), fresh_count).iter().map(|i| outside[i]));
        let others: Vec<usize> = inside.iter().copied().filter(|&v| v != anchor).collect();
        edge.extend(sample(rng, others.len(), m - 1 - fresh_count).iter().map(|i| others[i]));
        edge.sort_unstable();
        for &v in &edge {
            covered[v] = true;
        }
        present.insert(edge.clone());
        edges.push(edge);
    }

    let mut attempts = extra_edges * 8;
    let mut added = 0;
    while added < extra_edges && attempts > 0 {
        attempts -= 1;
        let mut edge = sample(rng, n, m).into_vec();
        edge.sort_unstable();
        if present.insert(edge.clone()) {
            edges.push(edge);
            added += 1;
        }
    }
    Hypergraph::new(n, m, edges)
}
