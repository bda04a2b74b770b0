//! The matrices attached to an oriented hypergraph: degree, incidence,
//! adjacency, normalized Laplacian, hyperedge normalized Laplacian, Kirchhoff
//! Laplacian and hyperedge Kirchhoff Laplacian.
//!
//! Degree, adjacency and both Kirchhoff Laplacians are integer matrices and
//! are built in exact integer arithmetic ([`IntMatrix`]); they convert to
//! floating point only for eigensolves. Storage is dense row-major
//! throughout: the intended scale stays far below the point where sparsity
//! would pay off, and dense kernels keep results deterministic.

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::OrientedHypergraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("entry ({row},{col}) breaks symmetry: {a} vs {b}")]
    NonSymmetricInput { row: usize, col: usize, a: String, b: String },
    #[error("expected {expected} entries for order {order}, got {got}")]
    WrongLength { order: usize, expected: usize, got: usize },
    #[error("entry ({row},{col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("matrix orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
}

/// Dense real symmetric matrix, row-major.
///
/// Symmetry is exact by construction: entries are computed once per unordered
/// index pair and mirrored, never symmetrized after the fact.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetricMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(order: usize) -> Self {
        SymmetricMatrix { order, entries: vec![0.0; order * order] }
    }

    pub fn identity(order: usize) -> Self {
        Self::diagonal_of(&vec![1.0; order])
    }

    pub fn diagonal_of(values: &[f64]) -> Self {
        let order = values.len();
        let mut m = Self::zeros(order);
        for (i, &v) in values.iter().enumerate() {
            m.entries[i * order + i] = v;
        }
        m
    }

    /// Builds from `f`, evaluated once per pair `i <= j` and mirrored.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            for j in i..order {
                let v = f(i, j);
                debug_assert!(v.is_finite());
                m.entries[i * order + j] = v;
                m.entries[j * order + i] = v;
            }
        }
        m
    }

    /// Validates a full row-major entry list: length, finiteness and exact
    /// symmetry.
    pub fn from_entries(order: usize, entries: Vec<f64>) -> Result<Self, MatrixError> {
        if entries.len() != order * order {
            return Err(MatrixError::WrongLength {
                order,
                expected: order * order,
                got: entries.len(),
            });
        }
        for i in 0..order {
            for j in 0..order {
                let v = entries[i * order + j];
                if !v.is_finite() {
                    return Err(MatrixError::NonFiniteEntry { row: i, col: j });
                }
                if j > i {
                    let w = entries[j * order + i];
                    if v.to_bits() != w.to_bits() {
                        return Err(MatrixError::NonSymmetricInput {
                            row: i,
                            col: j,
                            a: format!("{v:?}"),
                            b: format!("{w:?}"),
                        });
                    }
                }
            }
        }
        Ok(SymmetricMatrix { order, entries })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().fold(0.0, |acc, e| acc.max(e.abs()))
    }

    pub fn sub(&self, other: &SymmetricMatrix) -> Result<SymmetricMatrix, MatrixError> {
        if self.order != other.order {
            return Err(MatrixError::OrderMismatch(self.order, other.order));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(SymmetricMatrix { order: self.order, entries })
    }

    /// Principal submatrix on the given (sorted, deduplicated) index set.
    pub fn principal_submatrix(&self, keep: &[usize]) -> SymmetricMatrix {
        SymmetricMatrix::from_fn(keep.len(), |i, j| self.get(keep[i], keep[j]))
    }

    /// Indices of rows that differ from `other` by exact entry comparison.
    pub fn differing_rows(&self, other: &SymmetricMatrix) -> Result<Vec<usize>, MatrixError> {
        if self.order != other.order {
            return Err(MatrixError::OrderMismatch(self.order, other.order));
        }
        let n = self.order;
        Ok((0..n)
            .filter(|&i| (0..n).any(|j| self.get(i, j) != other.get(i, j)))
            .collect())
    }

    /// Full row-major CSV, one row per line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|j| self.get(i, j).to_string()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Coordinate-format text (1-based indices, nonzero entries, row-major).
    pub fn to_matrix_market(&self) -> String {
        matrix_market(self.order, self.order, |i, j| self.get(i, j))
    }
}

/// Dense symmetric matrix with exact integer entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    order: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(order: usize) -> Self {
        IntMatrix { order, entries: vec![0; order * order] }
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            for j in i..order {
                let v = f(i, j);
                m.entries[i * order + j] = v;
                m.entries[j * order + i] = v;
            }
        }
        m
    }

    pub fn diagonal_of(values: &[i64]) -> Self {
        let order = values.len();
        let mut m = Self::zeros(order);
        for (i, &v) in values.iter().enumerate() {
            m.entries[i * order + i] = v;
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.order + j]
    }

    pub fn trace(&self) -> i64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.order != other.order {
            return Err(MatrixError::OrderMismatch(self.order, other.order));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(IntMatrix { order: self.order, entries })
    }

    /// Exact conversion: every entry must stay within 2^53 in magnitude.
    pub fn to_symmetric(&self) -> SymmetricMatrix {
        const EXACT: i64 = 1 << 53;
        let entries = self
            .entries
            .iter()
            .map(|&v| {
                assert!(v.abs() < EXACT, "integer entry {v} not exactly representable");
                v as f64
            })
            .collect();
        SymmetricMatrix { order: self.order, entries }
    }
}

/// The signed vertex-by-hyperedge incidence matrix, entries in `{-1, 0, +1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    n: usize,
    m: usize,
    entries: Vec<i8>,
}

impl IncidenceMatrix {
    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn n_hyperedges(&self) -> usize {
        self.m
    }

    pub fn sign(&self, vertex: usize, hyperedge: usize) -> i8 {
        self.entries[vertex * self.m + hyperedge]
    }

    /// Vertex-side Gram matrix (n x n), exact.
    pub fn vertex_gram(&self) -> IntMatrix {
        IntMatrix::from_fn(self.n, |i, j| {
            (0..self.m)
                .map(|h| self.sign(i, h) as i64 * self.sign(j, h) as i64)
                .sum()
        })
    }

    /// Hyperedge-side Gram matrix (m x m), exact.
    pub fn hyperedge_gram(&self) -> IntMatrix {
        IntMatrix::from_fn(self.m, |g, h| {
            (0..self.n)
                .map(|i| self.sign(i, g) as i64 * self.sign(i, h) as i64)
                .sum()
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            let row: Vec<String> = (0..self.m).map(|h| self.sign(i, h).to_string()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_matrix_market(&self) -> String {
        matrix_market(self.n, self.m, |i, j| self.sign(i, j) as f64)
    }
}

fn matrix_market(rows: usize, cols: usize, get: impl Fn(usize, usize) -> f64) -> String {
    let mut coords = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            let v = get(i, j);
            if v != 0.0 {
                coords.push((i + 1, j + 1, v));
            }
        }
    }
    let mut out = String::from("%%MatrixMarket matrix coordinate real general\n");
    out.push_str(&format!("{rows} {cols} {}\n", coords.len()));
    for (i, j, v) in coords {
        out.push_str(&format!("{i} {j} {v}\n"));
    }
    out
}

/// Diagonal matrix of vertex degrees.
pub fn degree_matrix(g: &OrientedHypergraph) -> IntMatrix {
    IntMatrix::diagonal_of(&g.degrees().iter().map(|&d| d as i64).collect::<Vec<_>>())
}

/// Incidence matrix with entry `(i, h)` equal to the incidence sign of vertex
/// `i` in hyperedge `h`.
pub fn incidence_matrix(g: &OrientedHypergraph) -> IncidenceMatrix {
    let (n, m) = (g.n_vertices(), g.n_hyperedges());
    let mut entries = vec![0i8; n * m];
    for (h_idx, h) in g.hyperedges().iter().enumerate() {
        for &v in &h.inputs {
            entries[v * m + h_idx] = 1;
        }
        for &v in &h.outputs {
            entries[v * m + h_idx] = -1;
        }
    }
    IncidenceMatrix { n, m, entries }
}

/// Adjacency matrix: zero diagonal, off-diagonal entry equal to the number of
/// hyperedges in which the two vertices are anti-oriented minus the number in
/// which they are co-oriented, over the hyperedge multiset.
pub fn adjacency_matrix(g: &OrientedHypergraph) -> IntMatrix {
    let n = g.n_vertices();
    let mut m = IntMatrix::zeros(n);
    for h in g.hyperedges() {
        let signed: Vec<(usize, i64)> = h
            .inputs
            .iter()
            .map(|&v| (v, 1i64))
            .chain(h.outputs.iter().map(|&v| (v, -1i64)))
            .collect();
        for (a, &(u, su)) in signed.iter().enumerate() {
            for &(v, sv) in signed.iter().skip(a + 1) {
                // anti-oriented contributes +1, co-oriented -1
                m.entries[u * n + v] -= su * sv;
                m.entries[v * n + u] -= su * sv;
            }
        }
    }
    m
}

/// Kirchhoff Laplacian `D - A`, cross-checked entrywise against the incidence
/// Gram product on every call.
pub fn kirchhoff_laplacian(g: &OrientedHypergraph) -> IntMatrix {
    let k = degree_matrix(g)
        .sub(&adjacency_matrix(g))
        .expect("degree and adjacency share the vertex set");
    let gram = incidence_matrix(g).vertex_gram();
    assert_eq!(k, gram, "D - A must equal the vertex incidence Gram matrix");
    k
}

/// Hyperedge Kirchhoff Laplacian (m x m): the hyperedge-side incidence Gram
/// matrix. Shares its nonzero spectrum with the Kirchhoff Laplacian and equals
/// the Kirchhoff Laplacian of the dual hypergraph.
pub fn hyperedge_kirchhoff_laplacian(g: &OrientedHypergraph) -> IntMatrix {
    incidence_matrix(g).hyperedge_gram()
}

/// Normalized Laplacian: identity minus the degree-normalized adjacency. The
/// diagonal is exactly one; validation guarantees positive degrees.
pub fn normalized_laplacian(g: &OrientedHypergraph) -> SymmetricMatrix {
    let a = adjacency_matrix(g);
    let degrees = g.degrees();
    SymmetricMatrix::from_fn(g.n_vertices(), |i, j| {
        if i == j {
            1.0
        } else {
            let scale = (degrees[i] as f64 * degrees[j] as f64).sqrt();
            -(a.get(i, j) as f64) / scale
        }
    })
}

/// Hyperedge normalized Laplacian (m x m): incidence Gram weighted by inverse
/// degrees. Shares its nonzero spectrum with the normalized Laplacian.
pub fn hyperedge_normalized_laplacian(g: &OrientedHypergraph) -> SymmetricMatrix {
    let inc = incidence_matrix(g);
    let degrees = g.degrees();
    SymmetricMatrix::from_fn(g.n_hyperedges(), |a, b| {
        (0..g.n_vertices())
            .map(|i| inc.sign(i, a) as f64 * inc.sign(i, b) as f64 / degrees[i] as f64)
            .sum()
    })
}

/// Selector for the operator zoo, as exposed on experiment surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum OperatorKind {
    Degree,
    Adjacency,
    NormalizedLaplacian,
    Kirchhoff,
    HyperedgeNormalizedLaplacian,
    HyperedgeKirchhoff,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 6] = [
        OperatorKind::Degree,
        OperatorKind::Adjacency,
        OperatorKind::NormalizedLaplacian,
        OperatorKind::Kirchhoff,
        OperatorKind::HyperedgeNormalizedLaplacian,
        OperatorKind::HyperedgeKirchhoff,
    ];

    /// The four vertex-side operators used in convergence experiments.
    pub const VERTEX: [OperatorKind; 4] = [
        OperatorKind::Degree,
        OperatorKind::Adjacency,
        OperatorKind::NormalizedLaplacian,
        OperatorKind::Kirchhoff,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            OperatorKind::Degree => "D",
            OperatorKind::Adjacency => "A",
            OperatorKind::NormalizedLaplacian => "L",
            OperatorKind::Kirchhoff => "K",
            OperatorKind::HyperedgeNormalizedLaplacian => "LH",
            OperatorKind::HyperedgeKirchhoff => "KH",
        }
    }

    pub fn parse(text: &str) -> Option<OperatorKind> {
        match text.to_ascii_uppercase().as_str() {
            "D" => Some(OperatorKind::Degree),
            "A" => Some(OperatorKind::Adjacency),
            "L" => Some(OperatorKind::NormalizedLaplacian),
            "K" => Some(OperatorKind::Kirchhoff),
            "LH" | "L^H" => Some(OperatorKind::HyperedgeNormalizedLaplacian),
            "KH" | "K^H" => Some(OperatorKind::HyperedgeKirchhoff),
            _ => None,
        }
    }

    /// Builds the selected matrix for `g` (floating-point form).
    pub fn build(self, g: &OrientedHypergraph) -> SymmetricMatrix {
        match self {
            OperatorKind::Degree => degree_matrix(g).to_symmetric(),
            OperatorKind::Adjacency => adjacency_matrix(g).to_symmetric(),
            OperatorKind::NormalizedLaplacian => normalized_laplacian(g),
            OperatorKind::Kirchhoff => kirchhoff_laplacian(g).to_symmetric(),
            OperatorKind::HyperedgeNormalizedLaplacian => hyperedge_normalized_laplacian(g),
            OperatorKind::HyperedgeKirchhoff => hyperedge_kirchhoff_laplacian(g).to_symmetric(),
        }
    }
}

impl std::fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.symbol())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{random_hypergraph, Hyperedge};

    fn single(n: usize) -> OrientedHypergraph {
        OrientedHypergraph::new(n, vec![Hyperedge::all_inputs(0..n)])
    }

    fn edge01() -> OrientedHypergraph {
        OrientedHypergraph::new(2, vec![Hyperedge::edge(0, 1)])
    }

    #[test]
    fn degree_matrix_examples() {
        let d = degree_matrix(&single(3));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d.get(i, j), if i == j { 1 } else { 0 });
            }
        }
    }

    #[test]
    fn incidence_columns() {
        let inc = incidence_matrix(&edge01());
        assert_eq!((inc.sign(0, 0), inc.sign(1, 0)), (1, -1));

        let g = OrientedHypergraph::new(2, vec![Hyperedge::all_inputs([0, 1])]);
        let inc = incidence_matrix(&g);
        assert_eq!((inc.sign(0, 0), inc.sign(1, 0)), (1, 1));

        let fig1 = OrientedHypergraph::new(
            6,
            vec![
                Hyperedge::new([0, 1], [3, 4]),
                Hyperedge::new([1, 2], [4, 5]),
            ],
        );
        let inc = incidence_matrix(&fig1);
        let col0: Vec<i8> = (0..6).map(|i| inc.sign(i, 0)).collect();
        assert_eq!(col0, vec![1, 1, 0, -1, -1, 0]);
    }

    #[test]
    fn adjacency_signs_and_multiplicity() {
        assert_eq!(adjacency_matrix(&edge01()).get(0, 1), 1);

        let co = OrientedHypergraph::new(2, vec![Hyperedge::all_inputs([0, 1])]);
        assert_eq!(adjacency_matrix(&co).get(0, 1), -1);

        let dup = OrientedHypergraph::new(
            2,
            vec![Hyperedge::all_inputs([0, 1]), Hyperedge::all_inputs([0, 1])],
        );
        assert_eq!(adjacency_matrix(&dup).get(0, 1), -2);
    }

    #[test]
    fn kirchhoff_small_example() {
        let k = kirchhoff_laplacian(&edge01());
        assert_eq!(
            (k.get(0, 0), k.get(0, 1), k.get(1, 0), k.get(1, 1)),
            (1, -1, -1, 1)
        );
    }

    #[test]
    fn kirchhoff_agrees_with_incidence_gram_on_random_inputs() {
        for seed in 0..20 {
            // kirchhoff_laplacian asserts D - A == I I^T internally
            let g = random_hypergraph(8, 6, 4, seed).unwrap();
            kirchhoff_laplacian(&g);
        }
    }

    #[test]
    fn hyperedge_kirchhoff_matches_dual_kirchhoff() {
        for seed in 0..20 {
            let g = random_hypergraph(7, 5, 4, seed).unwrap();
            assert_eq!(hyperedge_kirchhoff_laplacian(&g), kirchhoff_laplacian(&g.dual()));
        }
    }

    #[test]
    fn hyperedge_kirchhoff_single_hyperedge_is_cardinality() {
        let kh = hyperedge_kirchhoff_laplacian(&OrientedHypergraph::new(
            3,
            vec![Hyperedge::new([0, 1], [2])],
        ));
        assert_eq!(kh.order(), 1);
        assert_eq!(kh.get(0, 0), 3);
    }

    #[test]
    fn normalized_laplacian_unit_diagonal() {
        for seed in 0..10 {
            let g = random_hypergraph(9, 7, 4, seed).unwrap();
            let l = normalized_laplacian(&g);
            for i in 0..l.order() {
                assert_eq!(l.get(i, i), 1.0);
            }
            assert_eq!(l.trace(), g.n_vertices() as f64);
        }
    }

    #[test]
    fn hyperedge_normalized_laplacian_single_hyperedge() {
        let lh = hyperedge_normalized_laplacian(&single(3));
        assert_eq!(lh.order(), 1);
        assert_eq!(lh.get(0, 0), 3.0);
    }

    #[test]
    fn integer_trace_identities() {
        for seed in 0..20 {
            let g = random_hypergraph(8, 6, 4, seed).unwrap();
            let degree_sum: i64 = g.degrees().iter().map(|&d| d as i64).sum();
            assert_eq!(adjacency_matrix(&g).trace(), 0);
            assert_eq!(degree_matrix(&g).trace(), degree_sum);
            assert_eq!(kirchhoff_laplacian(&g).trace(), degree_sum);
            assert_eq!(hyperedge_kirchhoff_laplacian(&g).trace(), degree_sum);
        }
    }

    #[test]
    fn from_entries_rejects_asymmetry_and_nan() {
        let err = SymmetricMatrix::from_entries(2, vec![1.0, 2.0, 3.0, 4.0]).unwrap_err();
        assert!(matches!(err, MatrixError::NonSymmetricInput { .. }));
        let err = SymmetricMatrix::from_entries(1, vec![f64::NAN]).unwrap_err();
        assert!(matches!(err, MatrixError::NonFiniteEntry { .. }));
        assert!(SymmetricMatrix::from_entries(2, vec![1.0, 2.0, 2.0, 1.0]).is_ok());
    }

    #[test]
    fn csv_and_matrix_market_shapes() {
        let k = kirchhoff_laplacian(&edge01()).to_symmetric();
        assert_eq!(k.to_csv(), "1,-1\n-1,1\n");
        let mm = k.to_matrix_market();
        let mut lines = mm.lines();
        assert_eq!(lines.next().unwrap(), "%%MatrixMarket matrix coordinate real general");
        assert_eq!(lines.next().unwrap(), "2 2 4");

        let inc = incidence_matrix(&edge01());
        assert_eq!(inc.to_csv(), "1\n-1\n");
    }

    #[test]
    fn operator_kind_parsing() {
        assert_eq!(OperatorKind::parse("L"), Some(OperatorKind::NormalizedLaplacian));
        assert_eq!(OperatorKind::parse("kh"), Some(OperatorKind::HyperedgeKirchhoff));
        assert_eq!(OperatorKind::parse("L^H"), Some(OperatorKind::HyperedgeNormalizedLaplacian));
        assert_eq!(OperatorKind::parse("Q"), None);
    }
}
