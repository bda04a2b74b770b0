//! Oriented hypergraphs: signed hyperedges, validation, duals and structural
//! predicates.
//!
//! A hypergraph on `n` vertices carries an ordered multiset of hyperedges.
//! Each hyperedge splits its vertices into *inputs* (incidence sign `+1`) and
//! *outputs* (incidence sign `-1`); no vertex may carry both signs for the
//! same hyperedge. Duplicate hyperedges are allowed and counted with
//! multiplicity everywhere.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A signed hyperedge: disjoint sets of input and output vertex indices.
///
/// The disjointness and non-emptiness invariants are enforced by
/// [`OrientedHypergraph::validate`], not at construction, so that validation
/// can report every violation at once.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Hyperedge {
    pub inputs: BTreeSet<usize>,
    pub outputs: BTreeSet<usize>,
}

impl Hyperedge {
    pub fn new<I, O>(inputs: I, outputs: O) -> Self
    where
        I: IntoIterator<Item = usize>,
        O: IntoIterator<Item = usize>,
    {
        Hyperedge {
            inputs: inputs.into_iter().collect(),
            outputs: outputs.into_iter().collect(),
        }
    }

    /// Hyperedge whose incidences are all `+1`.
    pub fn all_inputs<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        Hyperedge::new(vertices, [])
    }

    /// Ordinary graph edge: one input, one output.
    pub fn edge(from: usize, to: usize) -> Self {
        Hyperedge::new([from], [to])
    }

    /// Number of vertices contained in the hyperedge.
    pub fn cardinality(&self) -> usize {
        self.inputs.len() + self.outputs.len()
    }

    pub fn contains(&self, vertex: usize) -> bool {
        self.inputs.contains(&vertex) || self.outputs.contains(&vertex)
    }

    /// Incidence sign of `vertex`: `+1` input, `-1` output, `0` not contained.
    pub fn sign(&self, vertex: usize) -> i8 {
        if self.inputs.contains(&vertex) {
            1
        } else if self.outputs.contains(&vertex) {
            -1
        } else {
            0
        }
    }

    /// All contained vertices in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        // inputs and outputs are disjoint in a valid hyperedge; union keeps order
        self.inputs.union(&self.outputs).copied()
    }

    fn max_vertex(&self) -> Option<usize> {
        self.inputs
            .iter()
            .next_back()
            .max(self.outputs.iter().next_back())
            .copied()
    }
}

/// A single invariant violation found by [`OrientedHypergraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("hyperedge {hyperedge}: vertex {vertex} out of range for n = {n}")]
    IndexOutOfRange {
        hyperedge: usize,
        vertex: usize,
        n: usize,
    },
    #[error("hyperedge {hyperedge}: vertex {vertex} is both input and output")]
    CatalystVertex { hyperedge: usize, vertex: usize },
    #[error("hyperedge {hyperedge} has no vertices")]
    EmptyHyperedge { hyperedge: usize },
    #[error("vertex {vertex} has degree zero")]
    IsolatedVertex { vertex: usize },
}

/// Every violation found during validation, in deterministic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "invalid hypergraph ({} violations):", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

/// An oriented hypergraph: `n` vertices indexed `0..n` plus an ordered
/// multiset of hyperedges.
///
/// Values are immutable once validated and safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientedHypergraph {
    n: usize,
    hyperedges: Vec<Hyperedge>,
}

impl OrientedHypergraph {
    pub fn new(n: usize, hyperedges: Vec<Hyperedge>) -> Self {
        OrientedHypergraph { n, hyperedges }
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn n_hyperedges(&self) -> usize {
        self.hyperedges.len()
    }

    pub fn hyperedges(&self) -> &[Hyperedge] {
        &self.hyperedges
    }

    /// Checks all invariants: indices in range, no catalyst vertices, no empty
    /// hyperedges, no vertices of degree zero. Reports every violation.
    pub fn validate(&self) -> Result<(), ValidationReport> {
        let mut violations = Vec::new();
        for (h_idx, h) in self.hyperedges.iter().enumerate() {
            if h.cardinality() == 0 {
                violations.push(Violation::EmptyHyperedge { hyperedge: h_idx });
                continue;
            }
            if let Some(max) = h.max_vertex() {
                if max >= self.n {
                    for &v in h.inputs.iter().chain(h.outputs.iter()) {
                        if v >= self.n {
                            violations.push(Violation::IndexOutOfRange {
                                hyperedge: h_idx,
                                vertex: v,
                                n: self.n,
                            });
                        }
                    }
                }
            }
            for &v in h.inputs.intersection(&h.outputs) {
                violations.push(Violation::CatalystVertex {
                    hyperedge: h_idx,
                    vertex: v,
                });
            }
        }
        let degrees = self.degrees();
        for (v, &d) in degrees.iter().enumerate() {
            if d == 0 {
                violations.push(Violation::IsolatedVertex { vertex: v });
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(ValidationReport { violations })
        }
    }

    /// Number of hyperedges containing `vertex`, counted with multiplicity.
    ///
    /// Panics if `vertex >= n_vertices()`.
    pub fn degree(&self, vertex: usize) -> usize {
        assert!(vertex < self.n, "vertex index {vertex} out of bounds");
        self.hyperedges.iter().filter(|h| h.contains(vertex)).count()
    }

    /// Degrees of all vertices in one pass.
    pub fn degrees(&self) -> Vec<usize> {
        let mut degrees = vec![0usize; self.n];
        for h in &self.hyperedges {
            for v in h.vertices() {
                if v < self.n {
                    degrees[v] += 1;
                }
            }
        }
        degrees
    }

    /// Returns `p` if every vertex has degree `p`.
    pub fn regular_degree(&self) -> Option<usize> {
        let degrees = self.degrees();
        let first = *degrees.first()?;
        degrees.iter().all(|&d| d == first).then_some(first)
    }

    /// Witness bipartition `(V1, V2)` if one exists.
    ///
    /// A partition is admissible when every hyperedge has all inputs on one
    /// side and all outputs on the other. Either side may be empty: the
    /// definition constrains hyperedges only, so e.g. an all-inputs hypergraph
    /// admits `V2 = {}`. Constraints are 2-colored by breadth-first traversal,
    /// so the witness is deterministic; any consistent coloring is acceptable.
    pub fn bipartition(&self) -> Option<(BTreeSet<usize>, BTreeSet<usize>)> {
        // Parity constraints: co-oriented vertices share a side, anti-oriented
        // vertices take opposite sides. Chaining within a sign class encodes
        // the same constraint set as all pairs.
        let mut adjacency: Vec<Vec<(usize, bool)>> = vec![Vec::new(); self.n];
        let mut add = |a: usize, b: usize, opposite: bool| {
            adjacency[a].push((b, opposite));
            adjacency[b].push((a, opposite));
        };
        for h in &self.hyperedges {
            let inputs: Vec<usize> = h.inputs.iter().copied().collect();
            let outputs: Vec<usize> = h.outputs.iter().copied().collect();
            for w in inputs.windows(2) {
                add(w[0], w[1], false);
            }
            for w in outputs.windows(2) {
                add(w[0], w[1], false);
            }
            if let (Some(&i), Some(&o)) = (inputs.first(), outputs.first()) {
                add(i, o, true);
            }
        }

        let mut color = vec![None::<bool>; self.n];
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let cv = color[v].unwrap();
                for &(w, opposite) in &adjacency[v] {
                    let expected = cv ^ opposite;
                    match color[w] {
                        None => {
                            color[w] = Some(expected);
                            queue.push_back(w);
                        }
                        Some(cw) if cw != expected => return None,
                        Some(_) => {}
                    }
                }
            }
        }

        let mut v1 = BTreeSet::new();
        let mut v2 = BTreeSet::new();
        for (v, c) in color.into_iter().enumerate() {
            if c == Some(false) {
                v1.insert(v);
            } else {
                v2.insert(v);
            }
        }
        Some((v1, v2))
    }

    /// Dual hypergraph: roles of vertices and hyperedges swap, incidence signs
    /// transpose. The dual has `m` vertices and `n` hyperedges, and taking the
    /// dual twice restores the original exactly.
    pub fn dual(&self) -> OrientedHypergraph {
        let m = self.hyperedges.len();
        let mut duals: Vec<Hyperedge> = (0..self.n)
            .map(|_| Hyperedge::new([], []))
            .collect();
        for (h_idx, h) in self.hyperedges.iter().enumerate() {
            for &v in &h.inputs {
                duals[v].inputs.insert(h_idx);
            }
            for &v in &h.outputs {
                duals[v].outputs.insert(h_idx);
            }
        }
        OrientedHypergraph::new(m, duals)
    }

    /// Same vertex and hyperedge sets with every incidence turned into an
    /// input.
    pub fn all_inputs_variant(&self) -> OrientedHypergraph {
        let hyperedges = self
            .hyperedges
            .iter()
            .map(|h| Hyperedge::all_inputs(h.vertices()))
            .collect();
        OrientedHypergraph::new(self.n, hyperedges)
    }

    /// Canonical JSON form: `{"n": ..., "hyperedges": [{"inputs": [...],
    /// "outputs": [...]}, ...]}` with index lists sorted ascending.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("hypergraph serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Deterministic random hypergraph for property tests and experiments.
///
/// Each of the `m` hyperedges draws a cardinality uniformly from
/// `1..=max_card`, a uniform vertex subset of that size, and a uniform sign
/// per vertex. Vertices left isolated are repaired by appending singleton
/// all-input hyperedges, so the returned hypergraph always validates; repairs
/// are visible as trailing singleton hyperedges and may raise the hyperedge
/// count above `m`.
pub fn random_hypergraph(
    n: usize,
    m: usize,
    max_card: usize,
    seed: u64,
) -> Result<OrientedHypergraph, GeneratorError> {
    if n == 0 || m == 0 || max_card == 0 || max_card > n {
        return Err(GeneratorError::InvalidParameters(format!(
            "need n >= 1, m >= 1, 1 <= max_card <= n; got n={n}, m={m}, max_card={max_card}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hyperedges = Vec::with_capacity(m);
    for _ in 0..m {
        let card = rng.gen_range(1..=max_card);
        let chosen = rand::seq::index::sample(&mut rng, n, card);
        let mut inputs = BTreeSet::new();
        let mut outputs = BTreeSet::new();
        for v in chosen {
            if rng.gen_bool(0.5) {
                inputs.insert(v);
            } else {
                outputs.insert(v);
            }
        }
        hyperedges.push(Hyperedge { inputs, outputs });
    }
    let g = OrientedHypergraph::new(n, hyperedges);
    let mut hyperedges = g.hyperedges.clone();
    for (v, &d) in g.degrees().iter().enumerate() {
        if d == 0 {
            hyperedges.push(Hyperedge::all_inputs([v]));
        }
    }
    let g = OrientedHypergraph::new(n, hyperedges);
    debug_assert!(g.validate().is_ok());
    Ok(g)
}
