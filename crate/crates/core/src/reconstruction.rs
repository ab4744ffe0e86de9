//! Candidate reconstructions for one cell.
//!
//! Every cell carries two candidates: the original degree-`K` interpolant
//! and a stable reconstruction built from the three-cell stencil. Both
//! have the same cell average.

use serde::{Deserialize, Serialize};

use crate::basis::{dot, lagrange_basis, CellBasis};
use crate::scalar::Real;
use crate::solver::Field;

/// Linear weights of the simple WENO stencil (left, centre, right).
pub const SWENO_LINEAR_WEIGHTS: [f64; 3] = [0.001, 0.998, 0.001];
/// Linear weights of the two-stencil WENO (left, right).
pub const WENO_LINEAR_WEIGHTS: [f64; 2] = [0.5, 0.5];
/// Regularisation in the nonlinear weights.
pub const WENO_EPSILON: f64 = 1e-6;

/// Which stable reconstruction fills the second candidate slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CandidateKind {
    Weno,
    Sweno,
}

impl CandidateKind {
    pub fn name(self) -> &'static str {
        match self {
            CandidateKind::Weno => "weno",
            CandidateKind::Sweno => "sweno",
        }
    }
}

/// Nodal values of a reconstruction plus its boundary values at `xi = -1, +1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate<T> {
    pub values: Vec<T>,
    pub left: T,
    pub right: T,
}

impl<T: Real> Candidate<T> {
    pub fn from_values(basis: &CellBasis<T>, values: Vec<T>) -> Self {
        let left = basis.left_value(&values);
        let right = basis.right_value(&values);
        Self {
            values,
            left,
            right,
        }
    }

    fn scaled(&self, c: T) -> Self {
        Self {
            values: self.values.iter().map(|&v| v * c).collect(),
            left: self.left * c,
            right: self.right * c,
        }
    }
}

/// The two candidates of one cell together with the cell average they share.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidatePair<T> {
    pub high: Candidate<T>,
    pub stable: Candidate<T>,
    pub average: T,
}

impl<T: Real> CandidatePair<T> {
    /// A pair whose stable slot repeats the high-order polynomial, used for
    /// cells pinned to the original interpolant.
    pub fn pinned(high: Candidate<T>, average: T) -> Self {
        Self {
            stable: high.clone(),
            high,
            average,
        }
    }

    /// Multiplies every value in the pair by `c`.
    pub fn scaled(&self, c: T) -> Self {
        Self {
            high: self.high.scaled(c),
            stable: self.stable.scaled(c),
            average: self.average * c,
        }
    }
}

/// Nodal values of cell `i` and its two neighbours, with their averages.
#[derive(Debug, Clone, Copy)]
pub struct StencilView<'a, T> {
    pub left: &'a [T],
    pub center: &'a [T],
    pub right: &'a [T],
    pub averages: [T; 3],
}

impl<'a, T: Real> StencilView<'a, T> {
    pub fn new(basis: &CellBasis<T>, left: &'a [T], center: &'a [T], right: &'a [T]) -> Self {
        let averages = [
            basis.average(left),
            basis.average(center),
            basis.average(right),
        ];
        Self {
            left,
            center,
            right,
            averages,
        }
    }

    /// Stencil around `cell` with periodic wrap at the domain ends.
    pub fn periodic(basis: &CellBasis<T>, field: &'a Field<T>, cell: usize) -> Self {
        let n = field.n_cells();
        let l = (cell + n - 1) % n;
        let r = (cell + 1) % n;
        Self::new(basis, field.cell(l), field.cell(cell), field.cell(r))
    }
}

/// Sum over derivative orders `1..=K` of the integral of the squared
/// derivative over the standard cell.
pub fn smoothness_indicator<T: Real>(basis: &CellBasis<T>, values: &[T]) -> T {
    let mut beta = T::zero();
    let mut current = values.to_vec();
    let mut next = vec![T::zero(); values.len()];
    for _ in 0..basis.degree {
        basis.diff_matrix.apply_into(&current, &mut next);
        beta = beta + basis.integrate_square(&next);
        std::mem::swap(&mut current, &mut next);
    }
    beta
}

fn normalized_weights<T: Real, const N: usize>(linear: [f64; N], betas: [T; N]) -> [T; N] {
    let eps = T::lit(WENO_EPSILON);
    let mut alpha = [T::zero(); N];
    for ((a, &g), &b) in alpha.iter_mut().zip(&linear).zip(&betas) {
        let d = eps + b;
        *a = T::lit(g) / (d * d);
    }
    let total = alpha.iter().fold(T::zero(), |acc, &a| acc + a);
    alpha.map(|a| a / total)
}

/// Neighbour polynomial continued into cell `i` and shifted to carry the
/// average of cell `i`. `offset` is the neighbour coordinate of the cell `i`
/// centre: `+2` for the left neighbour, `-2` for the right one.
fn extended_neighbor<T: Real>(basis: &CellBasis<T>, neighbor: &[T], offset: T, target: T) -> Vec<T> {
    let mut values: Vec<T> = basis
        .nodes
        .iter()
        .map(|&xi| dot(&lagrange_basis(&basis.nodes, xi + offset), neighbor))
        .collect();
    let shift = target - basis.average(&values);
    for v in &mut values {
        *v = *v + shift;
    }
    values
}

fn sweno_polynomials<T: Real>(stencil: &StencilView<'_, T>, basis: &CellBasis<T>) -> [Vec<T>; 3] {
    let two = T::lit(2.0);
    let target = stencil.averages[1];
    [
        extended_neighbor(basis, stencil.left, two, target),
        stencil.center.to_vec(),
        extended_neighbor(basis, stencil.right, -two, target),
    ]
}

/// Nonlinear weights of the simple WENO combination.
pub fn simple_weno_weights<T: Real>(stencil: &StencilView<'_, T>, basis: &CellBasis<T>) -> [T; 3] {
    let polys = sweno_polynomials(stencil, basis);
    let betas = [0, 1, 2].map(|m| smoothness_indicator(basis, &polys[m]));
    normalized_weights(SWENO_LINEAR_WEIGHTS, betas)
}

/// Simple WENO reconstruction: convex combination of the cell polynomial
/// and the two average-corrected neighbour polynomials.
pub fn simple_weno<T: Real>(stencil: &StencilView<'_, T>, basis: &CellBasis<T>) -> Candidate<T> {
    let polys = sweno_polynomials(stencil, basis);
    let betas = [0, 1, 2].map(|m| smoothness_indicator(basis, &polys[m]));
    let w = normalized_weights(SWENO_LINEAR_WEIGHTS, betas);
    let values = (0..basis.n_points())
        .map(|j| w[0] * polys[0][j] + w[1] * polys[1][j] + w[2] * polys[2][j])
        .collect();
    Candidate::from_values(basis, values)
}

fn weno_slopes<T: Real>(stencil: &StencilView<'_, T>) -> [T; 2] {
    let [l, c, r] = stencil.averages;
    let half = T::lit(0.5);
    [(c - l) * half, (r - c) * half]
}

/// Nonlinear weights of the two linear WENO stencils (left, right).
pub fn weno_weights<T: Real>(stencil: &StencilView<'_, T>) -> [T; 2] {
    let s = weno_slopes(stencil);
    normalized_weights(WENO_LINEAR_WEIGHTS, s.map(|v| v * v))
}

/// Cell-average WENO reconstruction of degree one.
///
/// The left (right) stencil is the line `avg_i + s * xi` whose mean over the
/// left (right) neighbour equals that neighbour's average.
pub fn weno<T: Real>(stencil: &StencilView<'_, T>, basis: &CellBasis<T>) -> Candidate<T> {
    let s = weno_slopes(stencil);
    let w = normalized_weights(WENO_LINEAR_WEIGHTS, s.map(|v| v * v));
    let slope = w[0] * s[0] + w[1] * s[1];
    let mean = stencil.averages[1];
    let values = basis.nodes.iter().map(|&xi| mean + slope * xi).collect();
    Candidate {
        values,
        left: mean - slope,
        right: mean + slope,
    }
}

pub fn reconstruct<T: Real>(
    kind: CandidateKind,
    stencil: &StencilView<'_, T>,
    basis: &CellBasis<T>,
) -> Candidate<T> {
    match kind {
        CandidateKind::Weno => weno(stencil, basis),
        CandidateKind::Sweno => simple_weno(stencil, basis),
    }
}

/// Builds both candidates for `cell` of `field`.
pub fn build_candidates<T: Real>(
    field: &Field<T>,
    cell: usize,
    kind: CandidateKind,
    basis: &CellBasis<T>,
) -> CandidatePair<T> {
    let stencil = StencilView::periodic(basis, field, cell);
    CandidatePair {
        high: Candidate::from_values(basis, stencil.center.to_vec()),
        stable: reconstruct(kind, &stencil, basis),
        average: stencil.averages[1],
    }
}

/// Candidate pairs for every cell.
pub fn build_all_candidates<T: Real>(
    field: &Field<T>,
    kind: CandidateKind,
    basis: &CellBasis<T>,
) -> Vec<CandidatePair<T>> {
    (0..field.n_cells())
        .map(|i| build_candidates(field, i, kind, basis))
        .collect()
}
