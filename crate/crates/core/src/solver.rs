//! Flux reconstruction update for linear advection on a periodic uniform
//! mesh, and the three-stage SSP Runge–Kutta driver.

use serde::{Deserialize, Serialize};

use crate::basis::CellBasis;
use crate::error::{Error, Result};
use crate::limiting::{apply_selection, bvd_select, tvb_indicator, tvb_select, SelectionTrace, TvbParams};
use crate::reconstruction::{build_all_candidates, build_candidates, CandidateKind, CandidatePair};
use crate::scalar::Real;

/// Nodal solution on a uniform periodic mesh, stored cell-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Field<T> {
    n_cells: usize,
    degree: usize,
    x_min: T,
    x_max: T,
    values: Vec<T>,
}

impl<T: Real> Field<T> {
    pub fn zeros(n_cells: usize, degree: usize, x_min: T, x_max: T) -> Result<Self> {
        Self::from_values(n_cells, degree, x_min, x_max, vec![T::zero(); n_cells * (degree + 1)])
    }

    pub fn from_values(n_cells: usize, degree: usize, x_min: T, x_max: T, values: Vec<T>) -> Result<Self> {
        if n_cells < 3 {
            return Err(Error::TooFewCells(n_cells));
        }
        let expected = n_cells * (degree + 1);
        if values.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: values.len(),
            });
        }
        if !(x_max > x_min) {
            return Err(Error::Config(format!("empty domain [{x_min}, {x_max}]")));
        }
        Ok(Self {
            n_cells,
            degree,
            x_min,
            x_max,
            values,
        })
    }

    /// Samples `f` at the physical images of the solution points.
    pub fn from_fn(n_cells: usize, basis: &CellBasis<T>, x_min: T, x_max: T, f: impl Fn(T) -> T) -> Result<Self> {
        let mut field = Self::zeros(n_cells, basis.degree, x_min, x_max)?;
        for i in 0..n_cells {
            for j in 0..basis.n_points() {
                let x = field.node_x(i, basis.nodes[j]);
                field.cell_mut(i)[j] = f(x);
            }
        }
        Ok(field)
    }

    #[inline]
    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn n_points(&self) -> usize {
        self.degree + 1
    }

    pub fn domain(&self) -> (T, T) {
        (self.x_min, self.x_max)
    }

    pub fn length(&self) -> T {
        self.x_max - self.x_min
    }

    #[inline]
    pub fn dx(&self) -> T {
        self.length() / T::from_usize_lossy(self.n_cells)
    }

    /// Left edge of `cell`.
    pub fn cell_left(&self, cell: usize) -> T {
        self.x_min + self.dx() * T::from_usize_lossy(cell)
    }

    /// Physical coordinate of standard-cell coordinate `xi` in `cell`.
    pub fn node_x(&self, cell: usize, xi: T) -> T {
        let half = self.dx() * T::lit(0.5);
        self.cell_left(cell) + half * (xi + T::one())
    }

    #[inline]
    pub fn cell(&self, i: usize) -> &[T] {
        let p = self.n_points();
        &self.values[i * p..(i + 1) * p]
    }

    #[inline]
    pub fn cell_mut(&mut self, i: usize) -> &mut [T] {
        let p = self.n_points();
        &mut self.values[i * p..(i + 1) * p]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [T] {
        &mut self.values
    }

    pub fn averages(&self, basis: &CellBasis<T>) -> Vec<T> {
        (0..self.n_cells).map(|i| basis.average(self.cell(i))).collect()
    }

    /// Domain integral, `sum_i avg_i * dx`.
    pub fn total(&self, basis: &CellBasis<T>) -> T {
        self.averages(basis)
            .into_iter()
            .fold(T::zero(), |acc, a| acc + a)
            * self.dx()
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}

/// Linear flux `f = a u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxSpec<T> {
    pub speed: T,
}

impl<T: Real> Default for FluxSpec<T> {
    fn default() -> Self {
        Self { speed: T::one() }
    }
}

/// Upwind interface flux for a positive advection speed.
#[inline]
pub fn common_flux_upwind<T: Real>(speed: T, left_trace: T, _right_trace: T) -> T {
    speed * left_trace
}

/// Semidiscrete right-hand side `du/dt` at every solution point.
pub fn residual<T: Real>(field: &Field<T>, basis: &CellBasis<T>, flux: &FluxSpec<T>) -> Result<Vec<T>> {
    let mut out = vec![T::zero(); field.values.len()];
    residual_into(field, basis, flux, &mut out)?;
    Ok(out)
}

pub fn residual_into<T: Real>(field: &Field<T>, basis: &CellBasis<T>, flux: &FluxSpec<T>, out: &mut [T]) -> Result<()> {
    if !field.is_finite() {
        return Err(Error::NonFinite { step: 0, time: f64::NAN });
    }
    let n = field.n_cells;
    let p = field.n_points();
    let a = flux.speed;
    // interface i sits between cells i and i+1
    let common: Vec<T> = (0..n)
        .map(|i| {
            let ul = basis.right_value(field.cell(i));
            let ur = basis.left_value(field.cell((i + 1) % n));
            common_flux_upwind(a, ul, ur)
        })
        .collect();
    let jacobian = T::lit(2.0) / field.dx();
    let mut f = vec![T::zero(); p];
    let mut df = vec![T::zero(); p];
    for i in 0..n {
        for (fj, &u) in f.iter_mut().zip(field.cell(i)) {
            *fj = a * u;
        }
        basis.diff_matrix.apply_into(&f, &mut df);
        let jump_left = common[(i + n - 1) % n] - basis.left_value(&f);
        let jump_right = common[i] - basis.right_value(&f);
        for (j, o) in out[i * p..(i + 1) * p].iter_mut().enumerate() {
            let r = df[j] + jump_left * basis.corr_deriv_left[j] + jump_right * basis.corr_deriv_right[j];
            *o = -jacobian * r;
        }
    }
    Ok(())
}

/// One Shu–Osher SSP-RK3 step. `post` runs on every stage result before the
/// next right-hand side evaluation, and on the final state.
pub fn rk3_step<T, R, P>(state: &[T], dt: T, mut rhs: R, mut post: P) -> Result<Vec<T>>
where
    T: Real,
    R: FnMut(&[T]) -> Result<Vec<T>>,
    P: FnMut(&mut [T]),
{
    let three_quarters = T::lit(0.75);
    let quarter = T::lit(0.25);
    let third = T::one() / T::lit(3.0);
    let two_thirds = T::lit(2.0) / T::lit(3.0);

    let l0 = rhs(state)?;
    let mut u1: Vec<T> = state.iter().zip(&l0).map(|(&u, &l)| u + dt * l).collect();
    post(&mut u1);

    let l1 = rhs(&u1)?;
    let mut u2: Vec<T> = state
        .iter()
        .zip(&u1)
        .zip(&l1)
        .map(|((&u, &v), &l)| three_quarters * u + quarter * (v + dt * l))
        .collect();
    post(&mut u2);

    let l2 = rhs(&u2)?;
    let mut u3: Vec<T> = state
        .iter()
        .zip(&u2)
        .zip(&l2)
        .map(|((&u, &v), &l)| third * u + two_thirds * (v + dt * l))
        .collect();
    post(&mut u3);
    Ok(u3)
}

/// Troubled-cell treatment applied after every stage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "indicator", rename_all = "lowercase")]
pub enum Limiter<T> {
    /// Unlimited update.
    None,
    Tvb { m: T },
    Bvd,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scheme<T> {
    pub limiter: Limiter<T>,
    pub candidate: CandidateKind,
}

impl<T: Real> Scheme<T> {
    pub fn unlimited() -> Self {
        Self {
            limiter: Limiter::None,
            candidate: CandidateKind::Weno,
        }
    }
}

/// Applies the scheme's selection to `field` in place and returns the trace.
pub fn limit<T: Real>(field: &mut Field<T>, basis: &CellBasis<T>, scheme: &Scheme<T>) -> Option<SelectionTrace<T>> {
    match scheme.limiter {
        Limiter::None => None,
        Limiter::Tvb { m } => {
            let params = TvbParams::new(m, field.dx());
            let troubled = tvb_indicator(field, basis, &params);
            let trace = tvb_select(&troubled);
            let replacements: Vec<(usize, CandidatePair<T>)> = troubled
                .iter()
                .enumerate()
                .filter(|(_, &t)| t)
                .map(|(i, _)| (i, build_candidates(field, i, scheme.candidate, basis)))
                .collect();
            for (i, pair) in replacements {
                field.cell_mut(i).copy_from_slice(&pair.stable.values);
            }
            Some(trace)
        }
        Limiter::Bvd => {
            let pairs = build_all_candidates(field, scheme.candidate, basis);
            let trace = bvd_select(&pairs);
            apply_selection(field, &pairs, &trace);
            Some(trace)
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunSettings<T> {
    pub cfl: T,
    pub t_end: T,
    /// Times at which a snapshot is kept; clipped to `[0, t_end]`.
    pub snapshot_times: Vec<T>,
}

#[derive(Debug, Clone)]
pub struct Snapshot<T> {
    pub time: T,
    pub field: Field<T>,
    /// Selection made on the last stage before this snapshot, if any.
    pub selection: Option<SelectionTrace<T>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SelectionCounts {
    pub min: usize,
    pub mean: f64,
    pub max: usize,
}

#[derive(Debug, Clone)]
pub struct RunOutput<T> {
    pub final_field: Field<T>,
    pub final_selection: Option<SelectionTrace<T>>,
    pub snapshots: Vec<Snapshot<T>>,
    /// Stable-candidate count of the final stage of every step.
    pub stable_counts: Vec<usize>,
    pub steps: usize,
    pub initial_total: T,
    /// Largest `|total(t) - total(0)|` seen over the run.
    pub max_drift: T,
}

impl<T: Real> RunOutput<T> {
    pub fn stable_count_stats(&self) -> SelectionCounts {
        if self.stable_counts.is_empty() {
            return SelectionCounts::default();
        }
        let sum: usize = self.stable_counts.iter().sum();
        SelectionCounts {
            min: *self.stable_counts.iter().min().unwrap(),
            mean: sum as f64 / self.stable_counts.len() as f64,
            max: *self.stable_counts.iter().max().unwrap(),
        }
    }
}

/// Advances `initial` to `settings.t_end` with `dt = cfl * dx / a`, shortening
/// the step that lands on each snapshot time and on the end time.
pub fn run<T: Real>(
    initial: Field<T>,
    basis: &CellBasis<T>,
    scheme: &Scheme<T>,
    flux: &FluxSpec<T>,
    settings: &RunSettings<T>,
) -> Result<RunOutput<T>> {
    if initial.degree() != basis.degree {
        return Err(Error::Config(format!(
            "field degree {} does not match basis degree {}",
            initial.degree(),
            basis.degree
        )));
    }
    if !(settings.cfl > T::zero()) || !(flux.speed > T::zero()) {
        return Err(Error::Config("CFL number and advection speed must be positive".into()));
    }
    if settings.t_end < T::zero() {
        return Err(Error::Config("end time must be nonnegative".into()));
    }

    let dt_nominal = settings.cfl * initial.dx() / flux.speed;
    let mut targets: Vec<T> = settings
        .snapshot_times
        .iter()
        .copied()
        .filter(|&t| t >= T::zero() && t <= settings.t_end)
        .collect();
    targets.sort_by(|a, b| a.partial_cmp(b).expect("finite snapshot times"));
    targets.dedup();

    let initial_total = initial.total(basis);
    let mut field = initial;
    let mut time = T::zero();
    let mut steps = 0usize;
    let mut snapshots = Vec::new();
    let mut stable_counts = Vec::new();
    let mut last_selection: Option<SelectionTrace<T>> = None;
    let mut max_drift = T::zero();
    let snap_tol = dt_nominal * T::lit(1e-9);

    let mut pending = targets.iter().copied().peekable();
    while let Some(&t) = pending.peek() {
        if t <= time + snap_tol {
            snapshots.push(Snapshot {
                time,
                field: field.clone(),
                selection: last_selection.clone(),
            });
            pending.next();
        } else {
            break;
        }
    }

    while time < settings.t_end - snap_tol {
        let next_stop = pending.peek().copied().unwrap_or(settings.t_end).min(settings.t_end);
        let mut dt = dt_nominal;
        if time + dt > next_stop - snap_tol {
            dt = next_stop - time;
        }

        let template = field.clone();
        let mut trace: Option<SelectionTrace<T>> = None;
        let rhs = |u: &[T]| {
            let mut f = template.clone();
            f.values_mut().copy_from_slice(u);
            residual(&f, basis, flux)
        };
        let post = |u: &mut [T]| {
            let mut f = template.clone();
            f.values_mut().copy_from_slice(u);
            trace = limit(&mut f, basis, scheme);
            u.copy_from_slice(f.values());
        };
        let next = rk3_step(field.values(), dt, rhs, post).map_err(|e| match e {
            Error::NonFinite { .. } => Error::NonFinite {
                step: steps,
                time: time.to_f64().unwrap_or(f64::NAN),
            },
            other => other,
        })?;
        field.values_mut().copy_from_slice(&next);
        steps += 1;
        time = if (next_stop - (time + dt)).abs() <= snap_tol {
            next_stop
        } else {
            time + dt
        };

        if !field.is_finite() {
            return Err(Error::NonFinite {
                step: steps,
                time: time.to_f64().unwrap_or(f64::NAN),
            });
        }
        let drift = (field.total(basis) - initial_total).abs();
        if drift > max_drift {
            max_drift = drift;
        }
        if let Some(t) = &trace {
            stable_counts.push(t.stable_count());
        }
        last_selection = trace;

        while let Some(&t) = pending.peek() {
            if t <= time + snap_tol {
                snapshots.push(Snapshot {
                    time,
                    field: field.clone(),
                    selection: last_selection.clone(),
                });
                pending.next();
            } else {
                break;
            }
        }
    }

    Ok(RunOutput {
        final_field: field,
        final_selection: last_selection,
        snapshots,
        stable_counts,
        steps,
        initial_total,
        max_drift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn upwind_examples() {
        assert_eq!(common_flux_upwind(1.0, 1.0, 0.0), 1.0);
        assert_eq!(common_flux_upwind(1.0, 0.3, 0.3), 0.3);
        assert_eq!(common_flux_upwind(1.0, -2.0, 5.0), -2.0);
    }

    #[test]
    fn field_rejects_small_meshes() {
        assert!(matches!(
            Field::<f64>::zeros(2, 2, 0.0, 1.0),
            Err(Error::TooFewCells(2))
        ));
        assert!(matches!(
            Field::<f64>::from_values(3, 1, 0.0, 1.0, vec![0.0; 5]),
            Err(Error::LengthMismatch { expected: 6, actual: 5 })
        ));
    }

    #[test]
    fn constant_residual_vanishes() {
        let b = CellBasis::<f64>::new(2).unwrap();
        let f = Field::from_fn(7, &b, 0.0, 10.0, |_| 0.37).unwrap();
        for r in residual(&f, &b, &FluxSpec::default()).unwrap() {
            assert!(r.abs() < 1e-13);
        }
    }

    #[test]
    fn residual_rejects_nan() {
        let b = CellBasis::<f64>::new(1).unwrap();
        let mut f = Field::zeros(3, 1, 0.0, 1.0).unwrap();
        f.values_mut()[2] = f64::NAN;
        assert!(matches!(
            residual(&f, &b, &FluxSpec::default()),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn rk3_scalar_decay() {
        let dt = 0.1;
        let out = rk3_step(&[1.0], dt, |u: &[f64]| Ok(vec![-u[0]]), |_: &mut [f64]| {}).unwrap();
        let taylor = 1.0 - dt + dt * dt / 2.0 - dt * dt * dt / 6.0;
        assert_abs_diff_eq!(out[0], taylor, epsilon = 1e-15);
        // third-order accurate: local error is dt^4 / 24 up to higher terms
        assert!((out[0] - (-dt).exp()).abs() < dt.powi(4) / 24.0 * 1.01);
    }

    #[test]
    fn rk3_zero_rhs_is_identity() {
        let u = [0.1, -0.4, 2.0];
        let out = rk3_step(&u, 0.5, |x: &[f64]| Ok(vec![0.0; x.len()]), |_: &mut [f64]| {}).unwrap();
        assert_eq!(out, u);
    }

    #[test]
    fn zero_end_time_returns_initial() {
        let b = CellBasis::<f64>::new(2).unwrap();
        let f = Field::from_fn(5, &b, 0.0, 10.0, |x| x.sin()).unwrap();
        let out = run(
            f.clone(),
            &b,
            &Scheme::unlimited(),
            &FluxSpec::default(),
            &RunSettings {
                cfl: 0.01,
                t_end: 0.0,
                snapshot_times: vec![0.0],
            },
        )
        .unwrap();
        assert_eq!(out.steps, 0);
        assert_eq!(out.final_field, f);
        assert_eq!(out.snapshots.len(), 1);
    }

    #[test]
    fn run_lands_on_snapshot_times() {
        let b = CellBasis::<f64>::new(1).unwrap();
        let f = Field::from_fn(10, &b, 0.0, 10.0, |x| (x * 0.2 * std::f64::consts::TAU).sin()).unwrap();
        let out = run(
            f,
            &b,
            &Scheme::unlimited(),
            &FluxSpec::default(),
            &RunSettings {
                cfl: 0.3,
                t_end: 1.0,
                snapshot_times: vec![0.35, 1.0],
            },
        )
        .unwrap();
        let times: Vec<f64> = out.snapshots.iter().map(|s| s.time).collect();
        assert_eq!(times, vec![0.35, 1.0]);
    }
}
