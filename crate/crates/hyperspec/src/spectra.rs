//! Dense symmetric eigensolver, multiplicity clustering and spectral
//! measures.
//!
//! The solver reduces the matrix to tridiagonal form with Householder
//! reflections and then applies QL iteration with implicit shifts, following
//! the classic EISPACK/Jama route. Eigenvectors are never accumulated; nothing
//! downstream needs them. The computation is sequential and allocation-stable,
//! so identical input bits always produce identical output bits.

use std::sync::Arc;

use serde::Serialize;

use crate::operators::SymmetricMatrix;

/// Eigenvalues in ascending order together with tolerance-clustered
/// multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    clusters: Vec<Cluster>,
    tol: f64,
}

/// One group of numerically equal eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cluster {
    pub value: f64,
    pub multiplicity: usize,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn order(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Number of eigenvalues within `tol` of `value`.
    pub fn multiplicity_near(&self, value: f64, tol: f64) -> usize {
        self.eigenvalues
            .iter()
            .filter(|&&x| (x - value).abs() <= tol)
            .count()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({
            "eigenvalues": self.eigenvalues,
            "clusters": self.clusters,
            "n": self.order(),
            "tol": self.tol,
        })
        .to_string()
    }
}

/// Scale-aware default clustering tolerance.
pub fn default_cluster_tol(q: &SymmetricMatrix) -> f64 {
    (1e-12 * q.order() as f64 * q.max_abs_entry()).max(1e-8)
}

/// All eigenvalues of a symmetric matrix, ascending, clustered with the
/// default tolerance.
pub fn symmetric_eigenvalues(q: &SymmetricMatrix) -> Spectrum {
    symmetric_eigenvalues_with_tol(q, default_cluster_tol(q))
}

pub fn symmetric_eigenvalues_with_tol(q: &SymmetricMatrix, tol: f64) -> Spectrum {
    let n = q.order();
    let mut work = q.entries().to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    householder_tridiagonalize(&mut work, n, &mut d, &mut e);
    ql_implicit_shift(&mut d, &mut e);
    d.sort_by(f64::total_cmp);
    let clusters = cluster_multiplicities(&d, tol);
    Spectrum { eigenvalues: d, clusters, tol }
}

/// Greedy left-to-right clustering of a sorted eigenvalue list: a new cluster
/// starts whenever the gap to the previous eigenvalue exceeds `tol`; the
/// representative is the cluster mean.
pub fn cluster_multiplicities(sorted: &[f64], tol: f64) -> Vec<Cluster> {
    let mut clusters = Vec::new();
    let mut start = 0;
    for i in 1..=sorted.len() {
        if i == sorted.len() || sorted[i] - sorted[i - 1] > tol {
            let group = &sorted[start..i];
            clusters.push(Cluster {
                value: group.iter().sum::<f64>() / group.len() as f64,
                multiplicity: group.len(),
            });
            start = i;
        }
    }
    clusters
}

/// Reduces symmetric `z` (row-major, order `n`) to tridiagonal form without
/// accumulating transformations: `d` receives the diagonal, `e[1..]` the
/// subdiagonal.
fn householder_tridiagonalize(z: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64]) {
    if n == 0 {
        return;
    }
    for i in (1..n).rev() {
        let l = i - 1;
        if l > 0 {
            let mut scale = 0.0;
            for k in 0..i {
                scale += z[i * n + k].abs();
            }
            if scale == 0.0 {
                e[i] = z[i * n + l];
            } else {
                let mut h = 0.0;
                for k in 0..i {
                    z[i * n + k] /= scale;
                    h += z[i * n + k] * z[i * n + k];
                }
                let f = z[i * n + l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                z[i * n + l] = f - g;
                let mut f_acc = 0.0;
                for j in 0..i {
                    let mut g_acc = 0.0;
                    for k in 0..=j {
                        g_acc += z[j * n + k] * z[i * n + k];
                    }
                    for k in (j + 1)..i {
                        g_acc += z[k * n + j] * z[i * n + k];
                    }
                    e[j] = g_acc / h;
                    f_acc += e[j] * z[i * n + j];
                }
                let hh = f_acc / (h + h);
                for j in 0..i {
                    let fj = z[i * n + j];
                    let gj = e[j] - hh * fj;
                    e[j] = gj;
                    for k in 0..=j {
                        z[j * n + k] -= fj * e[k] + gj * z[i * n + k];
                    }
                }
            }
        } else {
            e[i] = z[i * n + l];
        }
    }
    e[0] = 0.0;
    for i in 0..n {
        d[i] = z[i * n + i];
    }
}

fn sign_like(magnitude: f64, sign_of: f64) -> f64 {
    if sign_of >= 0.0 {
        magnitude.abs()
    } else {
        -magnitude.abs()
    }
}

/// QL iteration with implicit shifts on a symmetric tridiagonal matrix. On
/// return `d` holds the (unsorted) eigenvalues.
fn ql_implicit_shift(d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    if n == 0 {
        return;
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iterations = 0;
        'sweep: loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            assert!(
                iterations <= 60,
                "QL iteration failed to converge at index {l} of {n}"
            );
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + sign_like(r, g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    continue 'sweep;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MeasureError {
    #[error("atoms must be strictly increasing")]
    NonIncreasingAtoms,
    #[error("weight {0} is not positive")]
    NonPositiveWeight(f64),
    #[error("weights sum to {0}, expected 1")]
    MassNotOne(f64),
    #[error("atom and weight counts differ")]
    LengthMismatch,
}

/// Finite atomic probability measure: strictly increasing atoms with positive
/// weights summing to one.
///
/// `n` and `tol` record how the measure was produced (eigenvalue count and
/// clustering tolerance); analytic measures carry `n = 0`, `tol = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralMeasure {
    atoms: Vec<f64>,
    weights: Vec<f64>,
    n: usize,
    tol: f64,
}

const MASS_TOL: f64 = 1e-12;

impl SpectralMeasure {
    /// Validating constructor for analytic measures.
    pub fn new(atoms: Vec<f64>, weights: Vec<f64>) -> Result<Self, MeasureError> {
        if atoms.len() != weights.len() {
            return Err(MeasureError::LengthMismatch);
        }
        if atoms.windows(2).any(|w| w[0] >= w[1]) {
            return Err(MeasureError::NonIncreasingAtoms);
        }
        if let Some(&w) = weights.iter().find(|&&w| w <= 0.0) {
            return Err(MeasureError::NonPositiveWeight(w));
        }
        let mass: f64 = weights.iter().sum();
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(MeasureError::MassNotOne(mass));
        }
        Ok(SpectralMeasure { atoms, weights, n: 0, tol: 0.0 })
    }

    /// Builds from unsorted `(atom, weight)` pairs, merging exactly equal
    /// atoms and dropping zero weights.
    pub fn from_atom_weights(pairs: &[(f64, f64)]) -> Result<Self, MeasureError> {
        let mut pairs: Vec<(f64, f64)> = pairs.iter().copied().filter(|&(_, w)| w != 0.0).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut atoms: Vec<f64> = Vec::new();
        let mut weights: Vec<f64> = Vec::new();
        for (a, w) in pairs {
            if atoms.last() == Some(&a) {
                *weights.last_mut().unwrap() += w;
            } else {
                atoms.push(a);
                weights.push(w);
            }
        }
        Self::new(atoms, weights)
    }

    /// Point mass at `x`.
    pub fn dirac(x: f64) -> Self {
        SpectralMeasure { atoms: vec![x], weights: vec![1.0], n: 0, tol: 0.0 }
    }

    pub fn from_spectrum(spectrum: &Spectrum) -> Self {
        let n = spectrum.order();
        let atoms = spectrum.clusters().iter().map(|c| c.value).collect();
        let weights = spectrum
            .clusters()
            .iter()
            .map(|c| c.multiplicity as f64 / n as f64)
            .collect();
        SpectralMeasure { atoms, weights, n, tol: spectrum.tol() }
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Clustering tolerance the measure was produced with (0 for analytic
    /// measures).
    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Smallest and largest atom.
    pub fn support_bounds(&self) -> Option<(f64, f64)> {
        Some((*self.atoms.first()?, *self.atoms.last()?))
    }

    /// Largest single atom weight; tends to zero along families whose limit
    /// has no atoms.
    pub fn max_weight(&self) -> f64 {
        self.weights.iter().fold(0.0, |acc, &w| acc.max(w))
    }

    /// Largest atom magnitude; diverges along families without a limit.
    pub fn max_abs_atom(&self) -> f64 {
        self.atoms.iter().fold(0.0, |acc, &a| acc.max(a.abs()))
    }

    /// Integral of a test function against the measure.
    pub fn integrate(&self, f: &TestFunction) -> f64 {
        self.integrate_fn(|x| f.evaluate(x))
    }

    pub fn integrate_fn(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.atoms
            .iter()
            .zip(&self.weights)
            .map(|(&a, &w)| w * f(a))
            .sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("measure serialization cannot fail")
    }
}

/// Uniform atomic measure on the eigenvalues of `q` (default clustering
/// tolerance).
pub fn spectral_measure(q: &SymmetricMatrix) -> SpectralMeasure {
    SpectralMeasure::from_spectrum(&symmetric_eigenvalues(q))
}

pub fn spectral_measure_with_tol(q: &SymmetricMatrix, tol: f64) -> SpectralMeasure {
    SpectralMeasure::from_spectrum(&symmetric_eigenvalues_with_tol(q, tol))
}

/// A real test function with a declared support: compactly supported
/// functions drive weak-star comparisons, unbounded ones are only admissible
/// for plain integration.
#[derive(Clone)]
pub struct TestFunction {
    name: String,
    support: Option<(f64, f64)>,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl TestFunction {
    pub fn new(
        name: impl Into<String>,
        support: Option<(f64, f64)>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        TestFunction { name: name.into(), support, f: Arc::new(f) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Declared compact support, or `None` for unbounded functions.
    pub fn compact_support(&self) -> Option<(f64, f64)> {
        self.support
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        (self.f)(x)
    }
}

impl std::fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TestFunction")
            .field("name", &self.name)
            .field("support", &self.support)
            .finish()
    }
}
