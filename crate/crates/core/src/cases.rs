//! Analytic test profiles on `[0, 10]`, their exact advected solutions and
//! error norms.

use serde::{Deserialize, Serialize};

use crate::basis::CellBasis;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::solver::Field;

pub const X_MIN: f64 = 0.0;
pub const X_MAX: f64 = 10.0;

/// Sine amplitude shared by every profile.
pub const AMPLITUDE: f64 = 0.20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Case {
    /// `A sin(2 pi w x)`, `w = 0.25`.
    Smooth,
    /// Unit step down at `x = 5`.
    Step,
    /// Sine riding on a unit step down at `x = 5`.
    SmoothStep,
    /// Sine with a unit plateau on `(3.5, 5]`.
    SmoothPlateau,
    /// Unit step down at `x = 1`.
    AdvectedStep,
    /// Sine with a unit plateau on `(1.5, 3]`, `w = 0.20`.
    AdvectedPlateau,
    /// `amplitude sin(2 pi frequency x)`; periodic on the domain when
    /// `10 * frequency` is an integer.
    Sine { amplitude: f64, frequency: f64 },
}

impl Case {
    /// Case numbered `1..=6`.
    pub fn from_id(id: u32) -> Result<Self> {
        Ok(match id {
            1 => Case::Smooth,
            2 => Case::Step,
            3 => Case::SmoothStep,
            4 => Case::SmoothPlateau,
            5 => Case::AdvectedStep,
            6 => Case::AdvectedPlateau,
            _ => return Err(Error::UnknownCase(id)),
        })
    }

    pub fn id(&self) -> Option<u32> {
        match self {
            Case::Smooth => Some(1),
            Case::Step => Some(2),
            Case::SmoothStep => Some(3),
            Case::SmoothPlateau => Some(4),
            Case::AdvectedStep => Some(5),
            Case::AdvectedPlateau => Some(6),
            Case::Sine { .. } => None,
        }
    }

    fn frequency(&self) -> f64 {
        match self {
            Case::Smooth | Case::Step | Case::SmoothStep | Case::SmoothPlateau | Case::AdvectedStep => 0.25,
            Case::AdvectedPlateau => 0.20,
            Case::Sine { frequency, .. } => *frequency,
        }
    }

    fn sine<T: Real>(&self, x: T) -> T {
        let amplitude = match self {
            Case::Sine { amplitude, .. } => *amplitude,
            _ => AMPLITUDE,
        };
        T::lit(amplitude) * (T::lit(2.0) * T::PI() * T::lit(self.frequency()) * x).sin()
    }

    /// Initial profile `u0(x)`.
    pub fn profile<T: Real>(&self, x: T) -> T {
        let step = |edge: f64| if x <= T::lit(edge) { T::one() } else { T::zero() };
        let plateau = |a: f64, b: f64| {
            if x > T::lit(a) && x <= T::lit(b) {
                T::one()
            } else {
                T::zero()
            }
        };
        match self {
            Case::Smooth | Case::Sine { .. } => self.sine(x),
            Case::Step => step(5.0),
            Case::SmoothStep => step(5.0) + self.sine(x),
            Case::SmoothPlateau => plateau(3.5, 5.0) + self.sine(x),
            Case::AdvectedStep => step(1.0),
            Case::AdvectedPlateau => plateau(1.5, 3.0) + self.sine(x),
        }
    }

    /// `(inf, sup)` of the initial profile over the domain.
    pub fn range(&self) -> (f64, f64) {
        let a = AMPLITUDE;
        match self {
            Case::Smooth => (-a, a),
            Case::Step | Case::AdvectedStep => (0.0, 1.0),
            Case::SmoothStep | Case::SmoothPlateau => (-a, 1.0 + a),
            // the plateau ends before the sine peaks again; its sup sits at x -> 1.5+
            Case::AdvectedPlateau => (-a, 1.0 + a * (2.0 * std::f64::consts::PI * 0.2 * 1.5).sin()),
            Case::Sine { amplitude, .. } => (-amplitude.abs(), amplitude.abs()),
        }
    }
}

/// Exact solution of `u_t + u_x = 0` with periodic wrap on `[0, 10]`.
pub fn exact<T: Real>(case: &Case, x: T, t: T) -> T {
    let lo = T::lit(X_MIN);
    let hi = T::lit(X_MAX);
    let mut s = x - t;
    if s < lo || s > hi {
        let len = hi - lo;
        s = lo + (s - lo - len * ((s - lo) / len).floor());
    }
    case.profile(s)
}

/// Collocated initial field on `[0, 10]`.
pub fn initial<T: Real>(case: &Case, n_cells: usize, basis: &CellBasis<T>) -> Result<Field<T>> {
    Field::from_fn(n_cells, basis, T::lit(X_MIN), T::lit(X_MAX), |x| case.profile(x))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorNorms {
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
    /// `max(u_h) - sup(u0)`.
    pub overshoot: f64,
    /// `inf(u0) - min(u_h)`.
    pub undershoot: f64,
}

/// Domain-normalised error norms from the nodal Gauss rule of each cell.
/// Extremes of `u_h` include the boundary values of every cell.
pub fn error_norms<T: Real>(field: &Field<T>, case: &Case, t: T, basis: &CellBasis<T>) -> ErrorNorms {
    let half_dx = field.dx() * T::lit(0.5);
    let mut l1 = T::zero();
    let mut l2 = T::zero();
    let mut linf = T::zero();
    let mut u_max = T::neg_infinity();
    let mut u_min = T::infinity();
    for i in 0..field.n_cells() {
        let values = field.cell(i);
        for (j, (&u, &w)) in values.iter().zip(&basis.quad_weights).enumerate() {
            let e = (u - exact(case, field.node_x(i, basis.nodes[j]), t)).abs();
            l1 = l1 + w * half_dx * e;
            l2 = l2 + w * half_dx * e * e;
            linf = linf.max(e);
        }
        for v in values
            .iter()
            .copied()
            .chain([basis.left_value(values), basis.right_value(values)])
        {
            u_max = u_max.max(v);
            u_min = u_min.min(v);
        }
    }
    let len = field.length();
    let (lo, hi) = case.range();
    let f = |v: T| v.to_f64().unwrap_or(f64::NAN);
    ErrorNorms {
        l1: f(l1 / len),
        l2: f((l2 / len).sqrt()),
        linf: f(linf),
        overshoot: f(u_max) - hi,
        undershoot: lo - f(u_min),
    }
}
