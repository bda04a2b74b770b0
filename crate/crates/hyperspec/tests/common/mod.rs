//! Shared test oracles and generators, independent of the library's
//! eigensolver path.

#![allow(dead_code)]

use hyperspec::hypergraph::{Hyperedge, OrientedHypergraph};
use hyperspec::operators::SymmetricMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Integer polynomials, ascending coefficients, used for exact
/// characteristic-polynomial work on small integer matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct IntPoly(pub Vec<i128>);

impl IntPoly {
    fn trim(mut self) -> IntPoly {
        while self.0.len() > 1 && *self.0.last().unwrap() == 0 {
            self.0.pop();
        }
        self
    }

    fn degree(&self) -> usize {
        self.0.len() - 1
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out = vec![0i128; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly(out).trim()
    }

    fn sub(&self, other: &IntPoly) -> IntPoly {
        let len = self.0.len().max(other.0.len());
        let coeff = |p: &IntPoly, i: usize| p.0.get(i).copied().unwrap_or(0);
        IntPoly((0..len).map(|i| coeff(self, i) - coeff(other, i)).collect()).trim()
    }

    fn scale(&self, s: i128) -> IntPoly {
        IntPoly(self.0.iter().map(|&c| c * s).collect()).trim()
    }

    fn derivative(&self) -> IntPoly {
        if self.0.len() == 1 {
            return IntPoly(vec![0]);
        }
        IntPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as i128)
                .collect(),
        )
    }

    /// Primitive part with positive leading coefficient.
    fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut content = 0i128;
        for &c in &self.0 {
            content = gcd_i128(content, c.abs());
        }
        let sign = if *self.0.last().unwrap() < 0 { -1 } else { 1 };
        IntPoly(self.0.iter().map(|&c| c / (content * sign)).collect()).trim()
    }

    /// Pseudo-remainder of `self` by `other` (integer Euclid step).
    fn pseudo_rem(&self, other: &IntPoly) -> IntPoly {
        let mut rem = self.clone();
        let d = other.degree();
        let lead = *other.0.last().unwrap();
        while !rem.is_zero() && rem.degree() >= d {
            let shift = rem.degree() - d;
            let coeff = *rem.0.last().unwrap();
            let mut shifted = vec![0i128; shift];
            shifted.extend(other.0.iter().map(|&c| c * coeff));
            rem = rem.scale(lead).sub(&IntPoly(shifted));
            rem = rem.trim();
            if rem.degree() < d || rem.is_zero() {
                break;
            }
        }
        rem
    }

    /// Exact division; panics on a nonzero remainder.
    fn div_exact(&self, other: &IntPoly) -> IntPoly {
        let mut rem: Vec<i128> = self.0.clone();
        let d = other.degree();
        let lead = *other.0.last().unwrap();
        let mut quot = vec![0i128; self.0.len() - d];
        for q_idx in (0..quot.len()).rev() {
            let c = rem[q_idx + d];
            assert_eq!(c % lead, 0, "inexact polynomial division");
            let q = c / lead;
            quot[q_idx] = q;
            for (k, &oc) in other.0.iter().enumerate() {
                rem[q_idx + k] -= q * oc;
            }
        }
        assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
        IntPoly(quot).trim()
    }

    fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64)
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd_i128(b, a % b)
    }
}

fn poly_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut a = a.primitive();
    let mut b = b.primitive();
    while !b.is_zero() {
        let r = a.pseudo_rem(&b).primitive();
        a = b;
        b = r;
    }
    a
}

/// Characteristic polynomial `det(xI - A)` of a small integer matrix, exact.
pub fn char_poly(order: usize, entries: &[i64]) -> IntPoly {
    // cofactor expansion over polynomial entries; fine for order <= 5
    fn det(cells: &[Vec<IntPoly>]) -> IntPoly {
        let n = cells.len();
        if n == 1 {
            return cells[0][0].clone();
        }
        let mut total = IntPoly(vec![0]);
        for (col, cell) in cells[0].iter().enumerate() {
            if cell.is_zero() {
                continue;
            }
            let minor: Vec<Vec<IntPoly>> = cells[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != col)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect();
            let term = cell.mul(&det(&minor));
            total = if col % 2 == 0 { total.sub(&term.scale(-1)) } else { total.sub(&term) };
        }
        total
    }
    let cells: Vec<Vec<IntPoly>> = (0..order)
        .map(|i| {
            (0..order)
                .map(|j| {
                    let a = entries[i * order + j] as i128;
                    if i == j {
                        IntPoly(vec![-a, 1])
                    } else {
                        IntPoly(vec![-a])
                    }
                })
                .collect()
        })
        .collect();
    det(&cells)
}

/// All real roots of a polynomial known to have only real simple roots,
/// located by recursive critical-point bracketing and bisection.
fn simple_real_roots(p: &IntPoly) -> Vec<f64> {
    let d = p.degree();
    if d == 0 {
        return Vec::new();
    }
    if d == 1 {
        return vec![-(p.0[0] as f64) / (p.0[1] as f64)];
    }
    let crit = simple_real_roots(&p.derivative().primitive());
    let lead = (*p.0.last().unwrap() as f64).abs();
    let bound = 1.0 + p.0.iter().map(|&c| (c as f64).abs()).fold(0.0, f64::max) / lead;
    let mut cuts = vec![-bound];
    cuts.extend(crit.iter().copied().filter(|c| c.abs() < bound));
    cuts.push(bound);
    let mut roots = Vec::new();
    for w in cuts.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (p.eval(lo), p.eval(hi));
        if flo == 0.0 {
            roots.push(lo);
            continue;
        }
        if flo.signum() == fhi.signum() {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if p.eval(mid).signum() == flo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup();
    roots
}

/// Root multiset (with multiplicity) of a polynomial with all real roots:
/// splits off the square-free part via an exact integer gcd with the
/// derivative and recurses on the repeated part.
pub fn real_root_multiset(p: &IntPoly) -> Vec<f64> {
    let p = p.primitive();
    if p.degree() == 0 {
        return Vec::new();
    }
    let g = poly_gcd(&p, &p.derivative());
    let square_free = if g.degree() == 0 { p.clone() } else { p.div_exact(&g) };
    let mut roots = simple_real_roots(&square_free);
    if g.degree() > 0 {
        roots.extend(real_root_multiset(&g));
    }
    roots.sort_by(f64::total_cmp);
    roots
}

/// Eigenvalues of a small symmetric integer matrix through the exact
/// characteristic polynomial, fully independent of the library solver.
pub fn char_poly_eigenvalues(order: usize, entries: &[i64]) -> Vec<f64> {
    let roots = real_root_multiset(&char_poly(order, entries));
    assert_eq!(roots.len(), order, "characteristic polynomial lost a root");
    roots
}

pub fn assert_sorted_close(got: &[f64], want: &[f64], tol: f64, context: &str) {
    assert_eq!(got.len(), want.len(), "{context}: lengths differ");
    for (g, w) in got.iter().zip(want) {
        assert!(
            (g - w).abs() <= tol,
            "{context}: {g} vs {w} (|diff| = {:.3e} > {tol:.1e})",
            (g - w).abs()
        );
    }
}

pub fn eigenvalues(q: &SymmetricMatrix) -> Vec<f64> {
    hyperspec::spectra::symmetric_eigenvalues(q).eigenvalues().to_vec()
}

/// Symmetric matrix with integer entries drawn uniformly from
/// `-range..=range`.
pub fn random_int_symmetric(order: usize, range: i64, rng: &mut ChaCha8Rng) -> (Vec<i64>, SymmetricMatrix) {
    let mut entries = vec![0i64; order * order];
    for i in 0..order {
        for j in i..order {
            let v = rng.gen_range(-range..=range);
            entries[i * order + j] = v;
            entries[j * order + i] = v;
        }
    }
    let m = SymmetricMatrix::from_fn(order, |i, j| entries[i * order + j] as f64);
    (entries, m)
}

/// Symmetric matrix with uniform real entries in `[-scale, scale]`.
pub fn random_real_symmetric(order: usize, scale: f64, rng: &mut ChaCha8Rng) -> SymmetricMatrix {
    let mut entries = vec![0.0; order * order];
    for i in 0..order {
        for j in i..order {
            let v = rng.gen_range(-scale..=scale);
            entries[i * order + j] = v;
            entries[j * order + i] = v;
        }
    }
    SymmetricMatrix::from_fn(order, |i, j| entries[i * order + j])
}

/// Random simple graph as an oriented hypergraph (one input, one output per
/// edge); isolated vertices are repaired with a path edge.
pub fn random_simple_graph(n: usize, edge_prob: f64, rng: &mut ChaCha8Rng) -> OrientedHypergraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(edge_prob) {
                if rng.gen_bool(0.5) {
                    edges.push(Hyperedge::edge(u, v));
                } else {
                    edges.push(Hyperedge::edge(v, u));
                }
            }
        }
    }
    let g = OrientedHypergraph::new(n, edges);
    let degrees = g.degrees();
    let mut edges = g.hyperedges().to_vec();
    for v in 0..n {
        if degrees[v] == 0 {
            edges.push(Hyperedge::edge(v, (v + 1) % n));
        }
    }
    let g = OrientedHypergraph::new(n, edges);
    assert!(g.validate().is_ok());
    g
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
