//! Spectral toolkit for oriented hypergraphs.
//!
//! An oriented hypergraph assigns a sign to every vertex-hyperedge incidence:
//! `+1` for inputs, `-1` for outputs. This crate builds the associated
//! operator zoo (degree, incidence, adjacency, normalized Laplacian,
//! hyperedge normalized Laplacian, Kirchhoff Laplacian and its hyperedge
//! counterpart), computes spectra and spectral measures with a deterministic
//! dense eigensolver, and runs the perturbation-bound and convergence
//! experiments that compare growing families of hypergraphs.
//!
//! Modules:
//! - [`hypergraph`]: the combinatorial data model, validation, duals and
//!   structural predicates;
//! - [`operators`]: exact integer and floating-point matrix construction;
//! - [`spectra`]: eigensolver, multiplicity clustering, spectral measures and
//!   test functions;
//! - [`families`]: named hypergraph families, closed-form spectra and
//!   spectral-class limits;
//! - [`analysis`]: norms, perturbation bounds, interlacing checks,
//!   total-variation and weak-star comparisons, experiment runners.

pub mod analysis;
pub mod families;
pub mod hypergraph;
pub mod operators;
pub mod spectra;

pub use analysis::{
    frobenius_norm, hyperedge_difference, operator_difference_bounds, schatten1_norm,
    tv_distance, weak_star_gap, BoundReport, ExperimentReport, HyperedgeDifference,
};
pub use families::{ClosedFormSpectrum, FamilyPairSpec, FamilySpec, SpectralClassLimit};
pub use hypergraph::{random_hypergraph, Hyperedge, OrientedHypergraph, ValidationReport};
pub use operators::{IncidenceMatrix, IntMatrix, OperatorKind, SymmetricMatrix};
pub use spectra::{
    spectral_measure, symmetric_eigenvalues, SpectralMeasure, Spectrum, TestFunction,
};
