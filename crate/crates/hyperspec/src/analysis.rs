//! Measure comparison and perturbation machinery: Schatten and Frobenius
//! norms, eigenvalue-shift and operator-difference bounds, interlacing and
//! multiplicity-stability checks, total-variation distance and weak-star
//! diagnostics, and the convergence experiment runners.

use serde::Serialize;
use thiserror::Error;

use crate::families::{FamilyError, FamilyPairSpec, FamilySpec, SpectralClassLimit};
use crate::hypergraph::{Hyperedge, OrientedHypergraph};
use crate::operators::{
    adjacency_matrix, degree_matrix, kirchhoff_laplacian, normalized_laplacian, OperatorKind,
    SymmetricMatrix,
};
use crate::spectra::{
    spectral_measure, symmetric_eigenvalues, Cluster, SpectralMeasure, TestFunction,
};

/// Slack below which a bound is considered violated.
pub const BOUND_SLACK_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("hypergraphs live on different vertex sets: {0} vs {1}")]
    VertexSetMismatch(usize, usize),
    #[error("matrix orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("test function {0} has no compact support")]
    UnboundedTestFunction(String),
    #[error("keep set is empty")]
    EmptyKeepSet,
    #[error("keep index {0} out of range for order {1}")]
    InvalidKeepSet(usize, usize),
    #[error("matrices differ in {found} rows, more than the declared {declared}")]
    RowDifferenceExceedsC { found: usize, declared: usize },
    #[error("generation failed: {0}")]
    GenerationFailure(FamilyError),
}

/// Sum of absolute eigenvalues.
pub fn schatten1_norm(q: &SymmetricMatrix) -> f64 {
    symmetric_eigenvalues(q)
        .eigenvalues()
        .iter()
        .map(|x| x.abs())
        .sum()
}

/// Entrywise 2-norm.
pub fn frobenius_norm(q: &SymmetricMatrix) -> f64 {
    q.entries().iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// A measured quantity against its proven bound.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub quantity: String,
    pub measured: f64,
    pub bound: f64,
}

impl BoundReport {
    pub fn slack(&self) -> f64 {
        self.bound - self.measured
    }

    pub fn holds(&self) -> bool {
        self.slack() >= -BOUND_SLACK_TOL
    }
}

/// Sorted-spectrum distance against the Schatten-1 norm of the difference:
/// the eigenvalue shift can never exceed it.
pub fn wielandt_hoffman_check(
    q1: &SymmetricMatrix,
    q2: &SymmetricMatrix,
) -> Result<BoundReport, AnalysisError> {
    let delta = q1
        .sub(q2)
        .map_err(|_| AnalysisError::OrderMismatch(q1.order(), q2.order()))?;
    let e1 = symmetric_eigenvalues(q1);
    let e2 = symmetric_eigenvalues(q2);
    let measured = e1
        .eigenvalues()
        .iter()
        .zip(e2.eigenvalues())
        .map(|(a, b)| (a - b).abs())
        .sum();
    Ok(BoundReport {
        quantity: "eigenvalue_shift".into(),
        measured,
        bound: schatten1_norm(&delta),
    })
}

/// Decomposition of two hyperedge multisets over a common vertex set into a
/// maximal shared part and the leftovers on each side.
#[derive(Debug, Clone)]
pub struct HyperedgeDifference {
    pub shared: Vec<Hyperedge>,
    pub only_first: Vec<Hyperedge>,
    pub only_second: Vec<Hyperedge>,
}

impl HyperedgeDifference {
    /// Number of hyperedges the two hypergraphs differ by.
    pub fn c1(&self) -> usize {
        self.only_first.len() + self.only_second.len()
    }

    /// Largest cardinality among the differing hyperedges (zero when equal).
    pub fn c2(&self) -> usize {
        self.only_first
            .iter()
            .chain(&self.only_second)
            .map(Hyperedge::cardinality)
            .max()
            .unwrap_or(0)
    }

    /// Distinct vertices met by the differing hyperedges; the associated
    /// operators can only differ in these rows.
    pub fn touched_vertices(&self) -> Vec<usize> {
        let set: std::collections::BTreeSet<usize> = self
            .only_first
            .iter()
            .chain(&self.only_second)
            .flat_map(|h| h.vertices().collect::<Vec<_>>())
            .collect();
        set.into_iter().collect()
    }
}

/// Greedy multiplicity-aware matching of identical signed hyperedges; the
/// matched part is maximal, so the leftovers are disjoint multisets.
pub fn hyperedge_difference(
    g1: &OrientedHypergraph,
    g2: &OrientedHypergraph,
) -> Result<HyperedgeDifference, AnalysisError> {
    if g1.n_vertices() != g2.n_vertices() {
        return Err(AnalysisError::VertexSetMismatch(g1.n_vertices(), g2.n_vertices()));
    }
    let mut remaining: std::collections::HashMap<&Hyperedge, usize> =
        std::collections::HashMap::new();
    for h in g2.hyperedges() {
        *remaining.entry(h).or_insert(0) += 1;
    }
    let mut shared = Vec::new();
    let mut only_first = Vec::new();
    for h in g1.hyperedges() {
        match remaining.get_mut(h) {
            Some(count) if *count > 0 => {
                *count -= 1;
                shared.push(h.clone());
            }
            _ => only_first.push(h.clone()),
        }
    }
    let mut only_second = Vec::new();
    for h in g2.hyperedges() {
        match remaining.get_mut(h) {
            Some(count) if *count > 0 => {
                *count -= 1;
                only_second.push(h.clone());
            }
            _ => {}
        }
    }
    Ok(HyperedgeDifference { shared, only_first, only_second })
}

/// Schatten-1 norms of the four operator differences against the proven
/// bounds: `3 c1^2 c2` for the adjacency, degree and Kirchhoff differences
/// and `2 sqrt(2n) c1 c2` for the normalized-Laplacian difference.
pub fn operator_difference_bounds(
    g1: &OrientedHypergraph,
    g2: &OrientedHypergraph,
) -> Result<Vec<BoundReport>, AnalysisError> {
    let diff = hyperedge_difference(g1, g2)?;
    let (c1, c2) = (diff.c1() as f64, diff.c2() as f64);
    let n = g1.n_vertices() as f64;
    let rank_bound = 3.0 * c1 * c1 * c2;
    let laplacian_bound = 2.0 * (2.0 * n).sqrt() * c1 * c2;

    let report = |quantity: &str, a: &SymmetricMatrix, b: &SymmetricMatrix, bound: f64| {
        BoundReport {
            quantity: quantity.into(),
            measured: schatten1_norm(&a.sub(b).expect("same vertex count")),
            bound,
        }
    };
    Ok(vec![
        report(
            "delta_A",
            &adjacency_matrix(g1).to_symmetric(),
            &adjacency_matrix(g2).to_symmetric(),
            rank_bound,
        ),
        report(
            "delta_D",
            &degree_matrix(g1).to_symmetric(),
            &degree_matrix(g2).to_symmetric(),
            rank_bound,
        ),
        report(
            "delta_K",
            &kirchhoff_laplacian(g1).to_symmetric(),
            &kirchhoff_laplacian(g2).to_symmetric(),
            rank_bound,
        ),
        report(
            "delta_L",
            &normalized_laplacian(g1),
            &normalized_laplacian(g2),
            laplacian_bound,
        ),
    ])
}

/// Total-variation distance between finite atomic measures: half the L1
/// distance of weights after identifying atoms within `match_tol`.
///
/// Exact for atomic measures; the matching tolerance absorbs eigensolver
/// noise when both measures come from numeric spectra.
pub fn tv_distance(mu1: &SpectralMeasure, mu2: &SpectralMeasure, match_tol: f64) -> f64 {
    let (a1, w1) = (mu1.atoms(), mu1.weights());
    let (a2, w2) = (mu2.atoms(), mu2.weights());
    let mut total = 0.0;
    let (mut i, mut j) = (0, 0);
    while i < a1.len() && j < a2.len() {
        if (a1[i] - a2[j]).abs() <= match_tol {
            total += (w1[i] - w2[j]).abs();
            i += 1;
            j += 1;
        } else if a1[i] < a2[j] {
            total += w1[i];
            i += 1;
        } else {
            total += w2[j];
            j += 1;
        }
    }
    total += w1[i..].iter().sum::<f64>() + w2[j..].iter().sum::<f64>();
    total / 2.0
}

/// Matching tolerance for measures produced by numeric eigensolves: ten times
/// the coarser clustering tolerance, floored at 1e-7 for analytic measures.
pub fn measure_match_tol(mu1: &SpectralMeasure, mu2: &SpectralMeasure) -> f64 {
    (10.0 * mu1.tol().max(mu2.tol())).max(1e-7)
}

/// Width-one hat function peaking at `center`.
pub fn hat(center: f64) -> TestFunction {
    TestFunction::new(
        format!("hat@{center}"),
        Some((center - 1.0, center + 1.0)),
        move |x| (1.0 - (x - center).abs()).max(0.0),
    )
}

/// Smooth bump supported on `[center-1, center+1]`, peaking at one.
pub fn bump(center: f64) -> TestFunction {
    TestFunction::new(
        format!("bump@{center}"),
        Some((center - 1.0, center + 1.0)),
        move |x| {
            let u = x - center;
            if u.abs() < 1.0 {
                (1.0 - 1.0 / (1.0 - u * u)).exp()
            } else {
                0.0
            }
        },
    )
}

/// Hats at the integer grid points covering `[lo, hi]` plus smooth bumps at
/// the half-integer points; all members peak at one.
pub fn standard_battery(lo: f64, hi: f64) -> Vec<TestFunction> {
    let start = lo.floor() as i64;
    let end = hi.ceil() as i64;
    let mut battery = Vec::new();
    for c in start..=end {
        battery.push(hat(c as f64));
        if c < end {
            battery.push(bump(c as f64 + 0.5));
        }
    }
    battery
}

/// Battery spanning the supports of both measures.
pub fn battery_for(mu1: &SpectralMeasure, mu2: &SpectralMeasure) -> Vec<TestFunction> {
    let (lo1, hi1) = mu1.support_bounds().unwrap_or((0.0, 0.0));
    let (lo2, hi2) = mu2.support_bounds().unwrap_or((0.0, 0.0));
    standard_battery(lo1.min(lo2), hi1.max(hi2))
}

/// Largest integration gap over a battery of compactly supported test
/// functions.
pub fn weak_star_gap(
    mu1: &SpectralMeasure,
    mu2: &SpectralMeasure,
    battery: &[TestFunction],
) -> Result<f64, AnalysisError> {
    let mut gap = 0.0_f64;
    for f in battery {
        if f.compact_support().is_none() {
            return Err(AnalysisError::UnboundedTestFunction(f.name().to_string()));
        }
        gap = gap.max((mu1.integrate(f) - mu2.integrate(f)).abs());
    }
    Ok(gap)
}

/// Outcome of the principal-submatrix eigenvalue checks.
#[derive(Debug, Clone, Serialize)]
pub struct InterlacingReport {
    pub order: usize,
    pub removed: usize,
    pub max_interlacing_violation: f64,
    pub interlacing_holds: bool,
    pub multiplicity_holds: bool,
}

impl InterlacingReport {
    pub fn holds(&self) -> bool {
        self.interlacing_holds && self.multiplicity_holds
    }
}

fn cluster_multiplicity_near(clusters: &[Cluster], value: f64, tol: f64) -> usize {
    clusters
        .iter()
        .filter(|c| (c.value - value).abs() <= tol)
        .map(|c| c.multiplicity)
        .sum()
}

/// Checks Cauchy interlacing `lambda_k(Q) <= lambda_k(P) <= lambda_{k+c}(Q)`
/// for the principal submatrix `P` on `keep`, plus the two-sided multiplicity
/// inequalities `M(P) >= M(Q) - c` and `M(Q) >= M(P) - c` for every clustered
/// eigenvalue of either matrix.
pub fn interlacing_check(
    q: &SymmetricMatrix,
    keep: &[usize],
) -> Result<InterlacingReport, AnalysisError> {
    if keep.is_empty() {
        return Err(AnalysisError::EmptyKeepSet);
    }
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if let Some(&bad) = keep.iter().find(|&&i| i >= q.order()) {
        return Err(AnalysisError::InvalidKeepSet(bad, q.order()));
    }
    let p = q.principal_submatrix(&keep);
    let c = q.order() - keep.len();
    let sq = symmetric_eigenvalues(q);
    let sp = symmetric_eigenvalues(&p);
    let (lq, lp) = (sq.eigenvalues(), sp.eigenvalues());

    let mut violation = 0.0_f64;
    for k in 0..lp.len() {
        violation = violation.max(lq[k] - lp[k]);
        violation = violation.max(lp[k] - lq[k + c]);
    }

    let match_tol = 10.0 * sq.tol().max(sp.tol());
    let mut multiplicity_holds = true;
    for cl in sq.clusters() {
        let in_p = cluster_multiplicity_near(sp.clusters(), cl.value, match_tol);
        if in_p + c < cl.multiplicity {
            multiplicity_holds = false;
        }
    }
    for cl in sp.clusters() {
        let in_q = cluster_multiplicity_near(sq.clusters(), cl.value, match_tol);
        if in_q + c < cl.multiplicity {
            multiplicity_holds = false;
        }
    }

    Ok(InterlacingReport {
        order: q.order(),
        removed: c,
        max_interlacing_violation: violation,
        interlacing_holds: violation <= BOUND_SLACK_TOL,
        multiplicity_holds,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MultiplicityStabilityReport {
    /// Smallest number of row/column deletions found that leaves a common
    /// principal submatrix.
    pub differing_rows: usize,
    pub declared: usize,
    pub holds: bool,
}

/// Exact decision whether the difference pattern can be covered by at most
/// `budget` indices (deleting those rows and columns equalizes the matrices).
/// Classic bounded-depth branching on an uncovered entry.
fn has_row_cover(edges: &[(usize, usize)], budget: usize) -> bool {
    let Some(&(u, v)) = edges.first() else { return true };
    if budget == 0 {
        return false;
    }
    for pick in [u, v] {
        let rest: Vec<(usize, usize)> = edges
            .iter()
            .copied()
            .filter(|&(a, b)| a != pick && b != pick)
            .collect();
        if has_row_cover(&rest, budget - 1) {
            return true;
        }
        if u == v {
            break;
        }
    }
    false
}

fn difference_pattern(q1: &SymmetricMatrix, q2: &SymmetricMatrix) -> Vec<(usize, usize)> {
    let n = q1.order();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i..n {
            if q1.get(i, j) != q2.get(i, j) {
                edges.push((i, j));
            }
        }
    }
    edges
}

fn smallest_row_cover(edges: &[(usize, usize)], cap: usize) -> Option<usize> {
    (0..=cap).find(|&k| has_row_cover(edges, k))
}

/// Fast upper bound on the cover size, for error reporting.
fn greedy_row_cover(mut edges: Vec<(usize, usize)>) -> usize {
    let mut count = 0;
    while let Some(&(u, v)) = edges.first() {
        let tally = |x: usize| edges.iter().filter(|&&(a, b)| a == x || b == x).count();
        let pick = if tally(u) >= tally(v) { u } else { v };
        edges.retain(|&(a, b)| a != pick && b != pick);
        count += 1;
    }
    count
}

/// For matrices that differ in at most `c` rows (and the symmetric columns),
/// every clustered eigenvalue of `q2` must survive in `q1` with multiplicity
/// reduced by at most `2c`.
///
/// "Differ in at most `c` rows" is established by exact entrywise comparison:
/// the difference pattern must be erasable by deleting `c` rows together with
/// their columns, leaving a common principal submatrix.
pub fn multiplicity_stability_check(
    q1: &SymmetricMatrix,
    q2: &SymmetricMatrix,
    c: usize,
) -> Result<MultiplicityStabilityReport, AnalysisError> {
    if q1.order() != q2.order() {
        return Err(AnalysisError::OrderMismatch(q1.order(), q2.order()));
    }
    let edges = difference_pattern(q1, q2);
    let Some(cover) = smallest_row_cover(&edges, c) else {
        return Err(AnalysisError::RowDifferenceExceedsC {
            found: greedy_row_cover(edges),
            declared: c,
        });
    };
    let s1 = symmetric_eigenvalues(q1);
    let s2 = symmetric_eigenvalues(q2);
    let match_tol = 10.0 * s1.tol().max(s2.tol());
    let mut holds = true;
    for cl in s2.clusters() {
        let in_first = cluster_multiplicity_near(s1.clusters(), cl.value, match_tol);
        if in_first + 2 * c < cl.multiplicity {
            holds = false;
        }
    }
    Ok(MultiplicityStabilityReport { differing_rows: cover, declared: c, holds })
}

/// Modulus-of-continuity parameters for the optional weak-star rate bound
/// `epsilon + 2 sup|f| c / (delta n)`; the battery members all peak at one.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ContinuityRate {
    pub epsilon: f64,
    pub delta: f64,
}

/// One size of a convergence experiment.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRow {
    pub size: usize,
    pub value: f64,
    pub bound: Option<f64>,
    pub slack: Option<f64>,
    pub measure_first: SpectralMeasure,
    pub measure_second: Option<SpectralMeasure>,
}

/// Size-ordered diagnostics for one convergence run.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub label: String,
    pub operator: String,
    pub mode: String,
    pub rows: Vec<ConvergenceRow>,
}

impl ExperimentReport {
    /// CSV with the fixed `size,value,bound,slack` columns.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("size,value,bound,slack\n");
        for row in &self.rows {
            let bound = row.bound.map(|b| b.to_string()).unwrap_or_default();
            let slack = row.slack.map(|s| s.to_string()).unwrap_or_default();
            out.push_str(&format!("{},{},{},{}\n", row.size, row.value, bound, slack));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn values(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.value).collect()
    }

    /// True when every row with a bound satisfies it.
    pub fn bounds_hold(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.slack.map_or(true, |s| s >= -BOUND_SLACK_TOL))
    }
}

fn generate_pair(
    pair: &FamilyPairSpec,
    n: usize,
) -> Result<(OrientedHypergraph, OrientedHypergraph), AnalysisError> {
    pair.generate(n).map_err(AnalysisError::GenerationFailure)
}

/// Total-variation distance between the spectral measures of a family pair
/// across sizes, with the `(k + 2cs)/n` bound where the pair provides one.
pub fn tv_convergence_run(
    pair: &FamilyPairSpec,
    sizes: &[usize],
    operator: OperatorKind,
) -> Result<ExperimentReport, AnalysisError> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let (g1, g2) = generate_pair(pair, n)?;
        let mu1 = spectral_measure(&operator.build(&g1));
        let mu2 = spectral_measure(&operator.build(&g2));
        let value = tv_distance(&mu1, &mu2, measure_match_tol(&mu1, &mu2));
        let bound = pair.tv_bound(n, operator);
        rows.push(ConvergenceRow {
            size: n,
            value,
            bound,
            slack: bound.map(|b| b - value),
            measure_first: mu1,
            measure_second: Some(mu2),
        });
    }
    Ok(ExperimentReport {
        label: pair.describe(),
        operator: operator.symbol().into(),
        mode: "tv".into(),
        rows,
    })
}

/// Largest battery gap between the spectral measures of a family pair across
/// sizes. When `rate` supplies modulus-of-continuity parameters, the row
/// bound instantiates `epsilon + 2 sup|f| c / (delta n)` with the proven
/// Schatten-norm bound as `c`.
pub fn weak_star_run(
    pair: &FamilyPairSpec,
    sizes: &[usize],
    operator: OperatorKind,
    rate: Option<ContinuityRate>,
) -> Result<ExperimentReport, AnalysisError> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let (g1, g2) = generate_pair(pair, n)?;
        let mu1 = spectral_measure(&operator.build(&g1));
        let mu2 = spectral_measure(&operator.build(&g2));
        let battery = battery_for(&mu1, &mu2);
        let value = weak_star_gap(&mu1, &mu2, &battery)?;
        let bound = rate.map(|rate| {
            let diff = hyperedge_difference(&g1, &g2).expect("pair shares its vertex set");
            let (c1, c2) = (diff.c1() as f64, diff.c2() as f64);
            let schatten_bound = match operator {
                OperatorKind::NormalizedLaplacian => 2.0 * (2.0 * n as f64).sqrt() * c1 * c2,
                _ => 3.0 * c1 * c1 * c2,
            };
            rate.epsilon + 2.0 * schatten_bound / (rate.delta * n as f64)
        });
        rows.push(ConvergenceRow {
            size: n,
            value,
            bound,
            slack: bound.map(|b| b - value),
            measure_first: mu1,
            measure_second: Some(mu2),
        });
    }
    Ok(ExperimentReport {
        label: pair.describe(),
        operator: operator.symbol().into(),
        mode: "weak_star".into(),
        rows,
    })
}

/// Distance of a growing family to its stated spectral-class limit. For
/// families whose limit is an atomic measure the value is the battery gap;
/// for divergent families it is the largest atom magnitude (expected to
/// grow); for non-atomic limits it is the largest cluster weight (expected to
/// vanish).
pub fn class_convergence_run(
    family: &FamilySpec,
    sizes: &[usize],
    operator: OperatorKind,
) -> Result<ExperimentReport, AnalysisError> {
    let limit = crate::families::spectral_class_limit(family, operator)
        .map_err(AnalysisError::GenerationFailure)?;
    let mode = match limit {
        SpectralClassLimit::Measure(_) => "class_gap",
        SpectralClassLimit::NoLimit => "class_divergence",
        SpectralClassLimit::NonAtomic => "class_max_atom_weight",
    };
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let g = family.generate(n).map_err(AnalysisError::GenerationFailure)?;
        let mu = spectral_measure(&operator.build(&g));
        let (value, second) = match &limit {
            SpectralClassLimit::Measure(rho) => {
                let battery = battery_for(&mu, rho);
                (weak_star_gap(&mu, rho, &battery)?, Some(rho.clone()))
            }
            SpectralClassLimit::NoLimit => (mu.max_abs_atom(), None),
            SpectralClassLimit::NonAtomic => (mu.max_weight(), None),
        };
        rows.push(ConvergenceRow {
            size: n,
            value,
            bound: None,
            slack: None,
            measure_first: mu,
            measure_second: second,
        });
    }
    Ok(ExperimentReport {
        label: family.describe(),
        operator: operator.symbol().into(),
        mode: mode.into(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn diag(values: &[f64]) -> SymmetricMatrix {
        SymmetricMatrix::diagonal_of(values)
    }

    #[test]
    fn schatten_and_frobenius_examples() {
        assert!((schatten1_norm(&diag(&[3.0, -4.0])) - 7.0).abs() < 1e-12);

        let edge = families::path_graph(2).unwrap();
        let k = kirchhoff_laplacian(&edge).to_symmetric();
        assert!((schatten1_norm(&k) - 2.0).abs() < 1e-12);

        let q = SymmetricMatrix::from_entries(2, vec![1.0, 2.0, 2.0, 1.0]).unwrap();
        assert!((frobenius_norm(&q) - 10.0_f64.sqrt()).abs() < 1e-12);
        assert!((frobenius_norm(&SymmetricMatrix::identity(9)) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn schatten_dominates_trace() {
        let q = diag(&[2.0, -1.5, 0.25]);
        assert!(schatten1_norm(&q) >= q.trace().abs() - 1e-12);
    }

    #[test]
    fn wielandt_hoffman_examples() {
        let r = wielandt_hoffman_check(&diag(&[1.0, 2.0]), &diag(&[2.0, 1.0])).unwrap();
        assert!(r.measured.abs() < 1e-12);
        assert!((r.bound - 2.0).abs() < 1e-12);
        assert!(r.holds());

        let q = diag(&[1.0, 2.0, 3.0]);
        let r = wielandt_hoffman_check(&q, &q).unwrap();
        assert!(r.measured.abs() < 1e-12 && r.bound.abs() < 1e-12);

        assert!(wielandt_hoffman_check(&q, &diag(&[1.0])).is_err());
    }

    #[test]
    fn hyperedge_difference_examples() {
        let g = families::r_complete(4, 2).unwrap();
        let same = hyperedge_difference(&g, &g).unwrap();
        assert_eq!(same.c1(), 0);
        assert_eq!(same.c2(), 0);

        let bigger = families::perturb(&g, &[Hyperedge::all_inputs([0, 1, 2])], &[]).unwrap();
        let diff = hyperedge_difference(&g, &bigger).unwrap();
        assert_eq!((diff.c1(), diff.c2()), (1, 3));
        assert_eq!(diff.touched_vertices(), vec![0, 1, 2]);

        // flipping one sign makes the hyperedge count on both sides
        let g1 = OrientedHypergraph::new(3, vec![Hyperedge::new([0, 1], [2])]);
        let g2 = OrientedHypergraph::new(3, vec![Hyperedge::new([0, 1, 2], [])]);
        let diff = hyperedge_difference(&g1, &g2).unwrap();
        assert_eq!(diff.c1(), 2);
        assert_eq!(diff.shared.len(), 0);

        let g3 = OrientedHypergraph::new(2, vec![Hyperedge::edge(0, 1)]);
        assert!(hyperedge_difference(&g1, &g3).is_err());
    }

    #[test]
    fn duplicate_hyperedges_match_with_multiplicity() {
        let h = Hyperedge::all_inputs([0, 1]);
        let g1 = OrientedHypergraph::new(2, vec![h.clone(), h.clone()]);
        let g2 = OrientedHypergraph::new(2, vec![h.clone(), h.clone(), h]);
        let diff = hyperedge_difference(&g1, &g2).unwrap();
        assert_eq!(diff.shared.len(), 2);
        assert_eq!(diff.c1(), 1);
    }

    #[test]
    fn operator_difference_bounds_one_extra_edge() {
        let g1 = families::r_complete(6, 2).unwrap();
        let g2 = families::perturb(&g1, &[Hyperedge::all_inputs([0, 1])], &[]).unwrap();
        let reports = operator_difference_bounds(&g1, &g2).unwrap();
        assert_eq!(reports.len(), 4);
        for r in &reports {
            assert!(r.holds(), "{} measured {} bound {}", r.quantity, r.measured, r.bound);
        }
        // the Kirchhoff difference is the 2x2 edge Laplacian block
        let delta_k = &reports[2];
        assert_eq!(delta_k.quantity, "delta_K");
        assert!((delta_k.measured - 2.0).abs() < 1e-9);
        assert!((delta_k.bound - 6.0).abs() < 1e-12);
    }

    #[test]
    fn tv_distance_examples() {
        let d0 = SpectralMeasure::dirac(0.0);
        let d1 = SpectralMeasure::dirac(1.0);
        assert!((tv_distance(&d0, &d1, 1e-7) - 1.0).abs() < 1e-12);
        assert_eq!(tv_distance(&d0, &d0, 1e-7), 0.0);

        let mu1 = SpectralMeasure::new(vec![0.0, 2.0], vec![0.75, 0.25]).unwrap();
        let mu2 = SpectralMeasure::new(vec![0.0, 2.0], vec![0.5, 0.5]).unwrap();
        assert!((tv_distance(&mu1, &mu2, 1e-7) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn weak_star_gap_examples() {
        let d0 = SpectralMeasure::dirac(0.0);
        let d3 = SpectralMeasure::dirac(3.0);
        let battery = standard_battery(0.0, 3.0);
        let gap = weak_star_gap(&d0, &d3, &battery).unwrap();
        assert!((gap - 1.0).abs() < 1e-12);
        assert_eq!(weak_star_gap(&d0, &d0, &battery).unwrap(), 0.0);

        let unbounded = TestFunction::new("id", None, |x| x);
        assert!(matches!(
            weak_star_gap(&d0, &d3, &[unbounded]),
            Err(AnalysisError::UnboundedTestFunction(_))
        ));
    }

    #[test]
    fn weak_star_gap_bounded_by_tv() {
        // equal-support measures: the gap never exceeds 2 sup|f| d_tv
        let mu1 = SpectralMeasure::new(vec![0.0, 1.0, 2.5], vec![0.2, 0.5, 0.3]).unwrap();
        let mu2 = SpectralMeasure::new(vec![0.0, 1.0, 2.5], vec![0.4, 0.4, 0.2]).unwrap();
        let battery = standard_battery(0.0, 3.0);
        let gap = weak_star_gap(&mu1, &mu2, &battery).unwrap();
        let tv = tv_distance(&mu1, &mu2, 1e-9);
        assert!(gap <= 2.0 * tv + 1e-12);
    }

    #[test]
    fn battery_covers_and_peaks_at_one() {
        let battery = standard_battery(-1.2, 4.3);
        assert!(battery.len() > 5);
        for f in &battery {
            let (lo, hi) = f.compact_support().unwrap();
            let center = (lo + hi) / 2.0;
            assert!((f.evaluate(center) - 1.0).abs() < 1e-12);
            assert_eq!(f.evaluate(lo - 0.5), 0.0);
            assert_eq!(f.evaluate(hi + 0.5), 0.0);
        }
    }

    #[test]
    fn interlacing_identity_example() {
        let report = interlacing_check(&SymmetricMatrix::identity(3), &[0, 2]).unwrap();
        assert!(report.holds());
        assert_eq!(report.removed, 1);

        assert!(matches!(
            interlacing_check(&SymmetricMatrix::identity(3), &[]),
            Err(AnalysisError::EmptyKeepSet)
        ));
        assert!(matches!(
            interlacing_check(&SymmetricMatrix::identity(3), &[5]),
            Err(AnalysisError::InvalidKeepSet(5, 3))
        ));
    }

    #[test]
    fn interlacing_on_complete_laplacian() {
        let l = normalized_laplacian(&families::r_complete(6, 2).unwrap());
        let report = interlacing_check(&l, &[0, 1, 2, 3, 4]).unwrap();
        assert!(report.holds());
    }

    #[test]
    fn multiplicity_stability_examples() {
        let q = normalized_laplacian(&families::hyperflower(4, 2, 3).unwrap());
        let report = multiplicity_stability_check(&q, &q, 1).unwrap();
        assert!(report.holds);
        assert_eq!(report.differing_rows, 0);

        let g1 = families::hyperflower(4, 2, 3).unwrap();
        let g2 = families::perturb(&g1, &[Hyperedge::all_inputs([0, 1])], &[]).unwrap();
        let (l1, l2) = (normalized_laplacian(&g1), normalized_laplacian(&g2));
        let report = multiplicity_stability_check(&l1, &l2, 2).unwrap();
        assert!(report.holds);
        assert!(matches!(
            multiplicity_stability_check(&l1, &l2, 1),
            Err(AnalysisError::RowDifferenceExceedsC { found: 2, declared: 1 })
        ));
    }

    #[test]
    fn tv_run_identical_family_is_zero() {
        let pair = FamilyPairSpec::Identical { base: FamilySpec::StarGraph };
        let report =
            tv_convergence_run(&pair, &[10, 20], OperatorKind::NormalizedLaplacian).unwrap();
        assert_eq!(report.values(), vec![0.0, 0.0]);
        assert!(report.bounds_hold());
        let csv = report.to_csv();
        assert!(csv.starts_with("size,value,bound,slack\n10,0,0,0\n"));
    }

    #[test]
    fn class_run_star_graph_decreases() {
        let report = class_convergence_run(
            &FamilySpec::StarGraph,
            &[10, 40, 160],
            OperatorKind::NormalizedLaplacian,
        )
        .unwrap();
        let values = report.values();
        assert!(values[2] < values[0]);
        assert!(values[2] < 0.05);
    }
}
