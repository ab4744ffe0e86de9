//! Reference-cell machinery on the standard cell `[-1, 1]`.
//!
//! Solution points are the Gauss–Legendre nodes of degree `K + 1`. Each
//! [`CellBasis`] holds everything the update needs that depends only on
//! the polynomial degree: quadrature weights, the nodal differentiation
//! matrix, the boundary evaluation rows and the derivatives of the Radau
//! correction functions at the solution points.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest supported polynomial degree.
pub const MAX_DEGREE: usize = 10;

const NEWTON_MAX_ITER: usize = 100;

fn check_degree(degree: usize) -> Result<()> {
    if (1..=MAX_DEGREE).contains(&degree) {
        Ok(())
    } else {
        Err(Error::UnsupportedDegree(degree))
    }
}

/// Legendre polynomial `P_n` and its derivative at `x`, from the three-term
/// recurrence and its derivative.
pub fn legendre<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p_prev = T::one();
    let mut dp_prev = T::zero();
    if n == 0 {
        return (p_prev, dp_prev);
    }
    let mut p = x;
    let mut dp = T::one();
    for k in 1..n {
        let kf = T::from_usize_lossy(k);
        let two_k_plus_one = kf + kf + T::one();
        let k_plus_one = kf + T::one();
        let p_next = (two_k_plus_one * x * p - kf * p_prev) / k_plus_one;
        let dp_next = (two_k_plus_one * (p + x * dp) - kf * dp_prev) / k_plus_one;
        p_prev = p;
        dp_prev = dp;
        p = p_next;
        dp = dp_next;
    }
    (p, dp)
}

/// Gauss–Legendre nodes and weights for a degree-`degree` nodal basis, i.e.
/// the `degree + 1` roots of `P_{degree+1}`, sorted ascending.
pub fn gauss_legendre<T: Real>(degree: usize) -> Result<(Vec<T>, Vec<T>)> {
    check_degree(degree)?;
    let n = degree + 1;
    let tol = T::epsilon() * T::lit(4.0);
    let half = T::lit(0.5);
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    for i in 0..n {
        // Chebyshev-type seed, descending in i.
        let seed = T::PI() * (T::from_usize_lossy(i) + T::lit(0.75))
            / (T::from_usize_lossy(n) + half);
        let mut x = seed.cos();
        for _ in 0..NEWTON_MAX_ITER {
            let (p, dp) = legendre(n, x);
            let step = p / dp;
            x = x - step;
            if step.abs() <= tol {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        let w = T::lit(2.0) / ((T::one() - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    // Symmetrize so mirrored nodes are bitwise negatives of each other.
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let x = (nodes[j] - nodes[i]) * half;
        let w = (weights[i] + weights[j]) * half;
        nodes[i] = -x;
        nodes[j] = x;
        weights[i] = w;
        weights[j] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = T::zero();
    }
    Ok((nodes, weights))
}

/// Values of every Lagrange basis polynomial `phi_j` at `xi`.
///
/// `xi` may lie outside the standard cell; the neighbour extension used by
/// the simple WENO candidate relies on that.
pub fn lagrange_basis<T: Real>(nodes: &[T], xi: T) -> Vec<T> {
    (0..nodes.len())
        .map(|j| {
            nodes
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .fold(T::one(), |acc, (_, &xk)| acc * (xi - xk) / (nodes[j] - xk))
        })
        .collect()
}

/// Evaluates the interpolant through `(nodes[j], values[j])` at `xi`.
pub fn lagrange_eval<T: Real>(nodes: &[T], values: &[T], xi: T) -> T {
    debug_assert_eq!(nodes.len(), values.len());
    lagrange_basis(nodes, xi)
        .into_iter()
        .zip(values)
        .fold(T::zero(), |acc, (phi, &v)| acc + phi * v)
}

/// Square nodal differentiation matrix, row-major: `get(m, j)` is the
/// derivative of `phi_j` at node `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> DiffMatrix<T> {
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> T {
        self.data[row * self.n + col]
    }

    /// `out = D * values`.
    pub fn apply_into(&self, values: &[T], out: &mut [T]) {
        for (row, o) in self.data.chunks_exact(self.n).zip(out.iter_mut()) {
            *o = row
                .iter()
                .zip(values)
                .fold(T::zero(), |acc, (&d, &v)| acc + d * v);
        }
    }

    pub fn apply(&self, values: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.n];
        self.apply_into(values, &mut out);
        out
    }
}

/// Barycentric differentiation matrix on arbitrary distinct nodes.
pub fn build_diff_matrix<T: Real>(nodes: &[T]) -> Result<DiffMatrix<T>> {
    let n = nodes.len();
    for i in 0..n {
        for j in i + 1..n {
            if nodes[i] == nodes[j] {
                return Err(Error::DuplicateNodes(i, j));
            }
        }
    }
    let bary: Vec<T> = (0..n)
        .map(|j| {
            let prod = (0..n)
                .filter(|&k| k != j)
                .fold(T::one(), |acc, k| acc * (nodes[j] - nodes[k]));
            T::one() / prod
        })
        .collect();
    let mut data = vec![T::zero(); n * n];
    for m in 0..n {
        let mut diag = T::zero();
        for j in (0..n).filter(|&j| j != m) {
            let d = (bary[j] / bary[m]) / (nodes[m] - nodes[j]);
            data[m * n + j] = d;
            diag = diag - d;
        }
        data[m * n + m] = diag;
    }
    Ok(DiffMatrix { n, data })
}

fn sign_pow<T: Real>(n: usize) -> T {
    if n.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    }
}

/// Left correction function `g_-` of the nodal DG family: the right Radau
/// polynomial of degree `degree + 1`, equal to 1 at `xi = -1` and 0 at `+1`.
pub fn correction_left<T: Real>(degree: usize, xi: T) -> T {
    let (p_hi, _) = legendre(degree + 1, xi);
    let (p_lo, _) = legendre(degree, xi);
    sign_pow::<T>(degree + 1) * (p_hi - p_lo) * T::lit(0.5)
}

/// Right correction function, `g_+(xi) = g_-(-xi)`.
pub fn correction_right<T: Real>(degree: usize, xi: T) -> T {
    correction_left(degree, -xi)
}

fn correction_left_deriv<T: Real>(degree: usize, xi: T) -> T {
    let (_, dp_hi) = legendre(degree + 1, xi);
    let (_, dp_lo) = legendre(degree, xi);
    sign_pow::<T>(degree + 1) * (dp_hi - dp_lo) * T::lit(0.5)
}

/// Derivatives of `g_-` and `g_+` at the Gauss–Legendre solution points.
pub fn radau_correction_derivs<T: Real>(degree: usize) -> Result<(Vec<T>, Vec<T>)> {
    let (nodes, _) = gauss_legendre::<T>(degree)?;
    let left = nodes
        .iter()
        .map(|&x| correction_left_deriv(degree, x))
        .collect();
    let right = nodes
        .iter()
        .map(|&x| -correction_left_deriv(degree, -x))
        .collect();
    Ok((left, right))
}

/// Precomputed degree-dependent data for the standard cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellBasis<T> {
    pub degree: usize,
    pub nodes: Vec<T>,
    pub quad_weights: Vec<T>,
    pub diff_matrix: DiffMatrix<T>,
    pub trace_left: Vec<T>,
    pub trace_right: Vec<T>,
    pub corr_deriv_left: Vec<T>,
    pub corr_deriv_right: Vec<T>,
}

impl<T: Real> CellBasis<T> {
    pub fn new(degree: usize) -> Result<Self> {
        let (nodes, quad_weights) = gauss_legendre::<T>(degree)?;
        let diff_matrix = build_diff_matrix(&nodes)?;
        let trace_left = lagrange_basis(&nodes, -T::one());
        let trace_right = lagrange_basis(&nodes, T::one());
        let (corr_deriv_left, corr_deriv_right) = radau_correction_derivs(degree)?;
        Ok(Self {
            degree,
            nodes,
            quad_weights,
            diff_matrix,
            trace_left,
            trace_right,
            corr_deriv_left,
            corr_deriv_right,
        })
    }

    /// Number of solution points, `degree + 1`.
    #[inline]
    pub fn n_points(&self) -> usize {
        self.nodes.len()
    }

    pub fn eval(&self, values: &[T], xi: T) -> T {
        lagrange_eval(&self.nodes, values, xi)
    }

    #[inline]
    pub fn left_value(&self, values: &[T]) -> T {
        dot(&self.trace_left, values)
    }

    #[inline]
    pub fn right_value(&self, values: &[T]) -> T {
        dot(&self.trace_right, values)
    }

    /// Cell mean `(1/2) * integral over [-1, 1]`, by the nodal Gauss rule.
    #[inline]
    pub fn average(&self, values: &[T]) -> T {
        dot(&self.quad_weights, values) * T::lit(0.5)
    }

    /// Integral over the standard cell of the square of the interpolant.
    #[inline]
    pub fn integrate_square(&self, values: &[T]) -> T {
        self.quad_weights
            .iter()
            .zip(values)
            .fold(T::zero(), |acc, (&w, &v)| acc + w * v * v)
    }
}

/// Volume-integrated average of a nodal polynomial.
pub fn cell_average<T: Real>(basis: &CellBasis<T>, values: &[T]) -> T {
    basis.average(values)
}

#[inline]
pub(crate) fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}
