use std::path::Path;

use serde::Serialize;

use super::config::{Indicator, Mode, RunConfig};
use super::output::{dense_rows, write_csv, write_json, SampleRow};
use crate::basis::CellBasis;
use crate::cases::initial;
use crate::error::{Error, Result};
use crate::limiting::{bvd_select, tvb_indicator, Choice, InterfaceVote, Mechanism, TvbParams};
use crate::reconstruction::{build_candidates, Candidate, CandidatePair};
use crate::solver::Field;

const MIDDLE: usize = 1;

/// Outcome of a static selection on three cells whose outer cells are
/// pinned to the original polynomial.
#[derive(Debug, Clone, Serialize)]
pub struct SelectionReport {
    pub config: RunConfig,
    pub middle_choice: Choice,
    pub middle_mechanism: Option<Mechanism>,
    pub averages: [f64; 3],
    /// Boundary values `(left, right)` of the middle cell's candidates.
    pub high_trace: (f64, f64),
    pub stable_trace: (f64, f64),
    /// Votes at the middle cell's left and right interfaces (BVD only).
    pub interface_votes: Option<[InterfaceVote<f64>; 2]>,
    /// Middle cell flagged by the TVB indicator (TVB only).
    pub troubled: Option<bool>,
    #[serde(skip)]
    pub high: Vec<SampleRow>,
    #[serde(skip)]
    pub stable: Vec<SampleRow>,
    #[serde(skip)]
    pub chosen: Vec<SampleRow>,
}

pub fn run_select(config: &RunConfig) -> Result<SelectionReport> {
    if config.mode != Mode::Select {
        return Err(Error::Config("run_select needs select mode".into()));
    }
    let case = config.case_spec()?;
    let basis = CellBasis::<f64>::new(config.k)?;
    let field = initial(&case, config.cells, &basis)?;

    let pairs: Vec<CandidatePair<f64>> = (0..field.n_cells())
        .map(|i| {
            if i == MIDDLE {
                build_candidates(&field, i, config.candidate, &basis)
            } else {
                let high = Candidate::from_values(&basis, field.cell(i).to_vec());
                CandidatePair::pinned(high, basis.average(field.cell(i)))
            }
        })
        .collect();

    let mut choices = vec![Choice::High; field.n_cells()];
    let mut mechanism = None;
    let mut interface_votes = None;
    let mut troubled = None;
    match config.indicator {
        Indicator::Tvb => {
            let params = TvbParams::new(config.mval.unwrap_or(0.0), field.dx());
            let flag = tvb_indicator(&field, &basis, &params)[MIDDLE];
            troubled = Some(flag);
            if flag {
                choices[MIDDLE] = Choice::Stable;
                mechanism = Some(Mechanism::TvbTroubled);
            } else {
                mechanism = Some(Mechanism::TvbPass);
            }
        }
        Indicator::Bvd => {
            let trace = bvd_select(&pairs);
            choices[MIDDLE] = trace.chosen[MIDDLE];
            mechanism = Some(trace.mechanism[MIDDLE]);
            interface_votes = Some([trace.interfaces[MIDDLE - 1], trace.interfaces[MIDDLE]]);
        }
        Indicator::None => {}
    }

    let build = |pick: &dyn Fn(usize) -> Choice| -> Result<Field<f64>> {
        let mut f = field.clone();
        for (i, pair) in pairs.iter().enumerate() {
            let c = match pick(i) {
                Choice::High => &pair.high,
                Choice::Stable => &pair.stable,
            };
            f.cell_mut(i).copy_from_slice(&c.values);
        }
        Ok(f)
    };
    let stable_field = build(&|_| Choice::Stable)?;
    let chosen_field = build(&|i| choices[i])?;
    let samples = config.samples_per_cell;
    let all_stable = vec![Choice::Stable; field.n_cells()];
    let mid = &pairs[MIDDLE];

    Ok(SelectionReport {
        config: config.clone(),
        middle_choice: choices[MIDDLE],
        middle_mechanism: mechanism,
        averages: [pairs[0].average, pairs[1].average, pairs[2].average],
        high_trace: (mid.high.left, mid.high.right),
        stable_trace: (mid.stable.left, mid.stable.right),
        interface_votes,
        troubled,
        high: dense_rows(&field, &basis, &case, 0.0, samples, None),
        stable: dense_rows(&stable_field, &basis, &case, 0.0, samples, Some(&all_stable)),
        chosen: dense_rows(&chosen_field, &basis, &case, 0.0, samples, Some(&choices)),
    })
}

/// Writes `high.csv`, `stable.csv`, `chosen.csv` and `summary.json`.
pub fn write_select(report: &SelectionReport, dir: &Path) -> Result<()> {
    write_csv(&dir.join("high.csv"), &report.high)?;
    write_csv(&dir.join("stable.csv"), &report.stable)?;
    write_csv(&dir.join("chosen.csv"), &report.chosen)?;
    write_json(&dir.join("summary.json"), report)
}
