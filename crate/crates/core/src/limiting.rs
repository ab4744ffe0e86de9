//! Troubled-cell treatment.
//!
//! Two mechanisms decide, cell by cell, whether the original polynomial or
//! the stable candidate is kept:
//!
//! * the TVB indicator compares the boundary deviations from the cell
//!   average against a modified minmod of the neighbouring average jumps;
//! * the boundary variation diminishing (BVD) selection picks, at every
//!   interface, the candidate pair with the smallest jump and reconciles the
//!   two votes each cell receives.

use serde::{Deserialize, Serialize};

use crate::basis::CellBasis;
use crate::reconstruction::CandidatePair;
use crate::scalar::Real;
use crate::solver::Field;

/// Relative tolerance for deciding that the modified minmod returned its
/// first argument.
pub const TVB_PASS_TOLERANCE: f64 = 1e-14;

/// Plain minmod: the smallest magnitude if all signs agree, else zero.
pub fn minmod<T: Real>(args: &[T]) -> T {
    let Some(&first) = args.first() else {
        return T::zero();
    };
    let positive = first > T::zero();
    let negative = first < T::zero();
    if !positive && !negative {
        return T::zero();
    }
    let mut smallest = first.abs();
    for &a in &args[1..] {
        let agrees = if positive { a > T::zero() } else { a < T::zero() };
        if !agrees {
            return T::zero();
        }
        smallest = smallest.min(a.abs());
    }
    if positive {
        smallest
    } else {
        -smallest
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TvbParams<T> {
    /// TVB parameter `M`.
    pub m: T,
    /// Largest cell width.
    pub h: T,
}

impl<T: Real> TvbParams<T> {
    pub fn new(m: T, h: T) -> Self {
        Self { m, h }
    }

    #[inline]
    pub fn threshold(&self) -> T {
        self.m * self.h * self.h
    }
}

/// TVB modified minmod: returns `a1` unchanged when `|a1| <= M h^2`.
pub fn tvb_minmod<T: Real>(a1: T, a2: T, a3: T, params: &TvbParams<T>) -> T {
    if a1.abs() <= params.threshold() {
        a1
    } else {
        minmod(&[a1, a2, a3])
    }
}

fn modified<T: Real>(original: T, limited: T) -> bool {
    (limited - original).abs() > T::lit(TVB_PASS_TOLERANCE) * T::one().max(original.abs())
}

/// Marks cells whose boundary deviations are altered by the modified minmod.
pub fn tvb_indicator<T: Real>(field: &Field<T>, basis: &CellBasis<T>, params: &TvbParams<T>) -> Vec<bool> {
    let n = field.n_cells();
    let averages: Vec<T> = (0..n).map(|i| basis.average(field.cell(i))).collect();
    (0..n)
        .map(|i| {
            let values = field.cell(i);
            let mean = averages[i];
            let up = averages[(i + 1) % n] - mean;
            let down = mean - averages[(i + n - 1) % n];
            let dev_right = basis.right_value(values) - mean;
            let dev_left = mean - basis.left_value(values);
            modified(dev_right, tvb_minmod(dev_right, up, down, params))
                || modified(dev_left, tvb_minmod(dev_left, up, down, params))
        })
        .collect()
}

/// Which candidate a cell ends up with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Choice {
    High,
    Stable,
}

impl Choice {
    pub fn name(self) -> &'static str {
        match self {
            Choice::High => "high",
            Choice::Stable => "stable",
        }
    }

    /// Candidate index as written in the literature, 1 or 2.
    pub fn index(self) -> u8 {
        match self {
            Choice::High => 1,
            Choice::Stable => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mechanism {
    TvbPass,
    TvbTroubled,
    BvdConsistent,
    BvdTiebreak,
}

impl Mechanism {
    pub fn name(self) -> &'static str {
        match self {
            Mechanism::TvbPass => "tvb-pass",
            Mechanism::TvbTroubled => "tvb-troubled",
            Mechanism::BvdConsistent => "bvd-consistent",
            Mechanism::BvdTiebreak => "bvd-tiebreak-eq14",
        }
    }
}

/// Result of the argmin at interface `i + 1/2`: `pair.0` is the vote for
/// cell `i`, `pair.1` the vote for cell `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterfaceVote<T> {
    pub pair: (Choice, Choice),
    pub bv: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionTrace<T> {
    pub chosen: Vec<Choice>,
    pub mechanism: Vec<Mechanism>,
    /// Interface `i` sits between cells `i` and `i + 1` (periodic); empty
    /// for the TVB indicator.
    pub interfaces: Vec<InterfaceVote<T>>,
}

impl<T> SelectionTrace<T> {
    pub fn stable_count(&self) -> usize {
        self.chosen.iter().filter(|&&c| c == Choice::Stable).count()
    }
}

/// Turns TVB troubled flags into a trace.
pub fn tvb_select<T>(troubled: &[bool]) -> SelectionTrace<T> {
    let (chosen, mechanism) = troubled
        .iter()
        .map(|&t| {
            if t {
                (Choice::Stable, Mechanism::TvbTroubled)
            } else {
                (Choice::High, Mechanism::TvbPass)
            }
        })
        .unzip();
    SelectionTrace {
        chosen,
        mechanism,
        interfaces: Vec::new(),
    }
}

/// Enumeration order of the four candidate pairs; the first minimal pair
/// wins ties, favouring the high-order candidate on the left, then right.
const PAIR_ORDER: [(Choice, Choice); 4] = [
    (Choice::High, Choice::High),
    (Choice::High, Choice::Stable),
    (Choice::Stable, Choice::High),
    (Choice::Stable, Choice::Stable),
];

fn right_trace<T: Real>(pair: &CandidatePair<T>, c: Choice) -> T {
    match c {
        Choice::High => pair.high.right,
        Choice::Stable => pair.stable.right,
    }
}

fn left_trace<T: Real>(pair: &CandidatePair<T>, c: Choice) -> T {
    match c {
        Choice::High => pair.high.left,
        Choice::Stable => pair.stable.left,
    }
}

/// Minimum boundary variation between the right boundary of `left` and the
/// left boundary of `right`.
pub fn bvd_interface_argmin<T: Real>(left: &CandidatePair<T>, right: &CandidatePair<T>) -> InterfaceVote<T> {
    let mut best = InterfaceVote {
        pair: PAIR_ORDER[0],
        bv: T::infinity(),
    };
    for pair in PAIR_ORDER {
        let bv = (right_trace(left, pair.0) - left_trace(right, pair.1)).abs();
        if bv < best.bv {
            best = InterfaceVote { pair, bv };
        }
    }
    best
}

/// Reconciles the two interface votes of a cell with disagreeing votes:
/// keep the high-order candidate only at a local extremum of the averages.
fn tiebreak<T: Real>(prev: T, mean: T, next: T) -> Choice {
    if (mean - next) * (prev - mean) < T::zero() {
        Choice::High
    } else {
        Choice::Stable
    }
}

/// BVD selection over a periodic row of candidate pairs.
pub fn bvd_select<T: Real>(pairs: &[CandidatePair<T>]) -> SelectionTrace<T> {
    let n = pairs.len();
    let interfaces: Vec<InterfaceVote<T>> = (0..n)
        .map(|i| bvd_interface_argmin(&pairs[i], &pairs[(i + 1) % n]))
        .collect();
    let (chosen, mechanism) = (0..n)
        .map(|i| {
            let prev = (i + n - 1) % n;
            let from_right = interfaces[i].pair.0;
            let from_left = interfaces[prev].pair.1;
            if from_right == from_left {
                (from_right, Mechanism::BvdConsistent)
            } else {
                let c = tiebreak(
                    pairs[prev].average,
                    pairs[i].average,
                    pairs[(i + 1) % n].average,
                );
                (c, Mechanism::BvdTiebreak)
            }
        })
        .unzip();
    SelectionTrace {
        chosen,
        mechanism,
        interfaces,
    }
}

/// Overwrites each cell with its chosen candidate.
pub fn apply_selection<T: Real>(field: &mut Field<T>, pairs: &[CandidatePair<T>], trace: &SelectionTrace<T>) {
    for (i, (pair, choice)) in pairs.iter().zip(&trace.chosen).enumerate() {
        if *choice == Choice::Stable {
            field.cell_mut(i).copy_from_slice(&pair.stable.values);
        }
    }
}
