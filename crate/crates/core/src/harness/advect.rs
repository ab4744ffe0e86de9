use serde::Serialize;

use super::config::{Mode, RunConfig};
use super::output::{dense_rows, write_csv, write_json};
use crate::basis::CellBasis;
use crate::cases::{error_norms, initial, ErrorNorms};
use crate::error::{Error, Result};
use crate::solver::{run, FluxSpec, RunOutput, RunSettings, SelectionCounts};

#[derive(Debug, Clone, Serialize)]
pub struct SnapshotSummary {
    pub time: f64,
    pub file: String,
    pub norms: ErrorNorms,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConservationSummary {
    pub initial_total: f64,
    pub final_total: f64,
    pub final_drift: f64,
    pub max_drift: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdvectSummary {
    pub config: RunConfig,
    pub dt: f64,
    pub steps: usize,
    pub snapshots: Vec<SnapshotSummary>,
    pub conservation: ConservationSummary,
    /// Cells given the stable candidate on the last stage of each step.
    pub stable_selection: SelectionCounts,
}

pub struct AdvectReport {
    pub summary: AdvectSummary,
    pub output: RunOutput<f64>,
}

/// Runs the advection problem and writes one CSV per snapshot plus
/// `summary.json` into the configured output directory.
pub fn run_advect(config: &RunConfig) -> Result<AdvectReport> {
    if config.mode != Mode::Advect {
        return Err(Error::Config("run_advect needs advect mode".into()));
    }
    let case = config.case_spec()?;
    let basis = CellBasis::<f64>::new(config.k)?;
    let field = initial(&case, config.cells, &basis)?;
    let dt = config.cfl * field.dx();
    let settings = RunSettings {
        cfl: config.cfl,
        t_end: config.t_end,
        snapshot_times: config.snapshots.clone(),
    };
    let output = run(field, &basis, &config.scheme(), &FluxSpec::default(), &settings)?;

    let mut snapshots = Vec::with_capacity(output.snapshots.len());
    for snap in &output.snapshots {
        let file = format!("snapshot_t{:.4}.csv", snap.time);
        let choices = snap.selection.as_ref().map(|s| s.chosen.as_slice());
        let rows = dense_rows(&snap.field, &basis, &case, snap.time, config.samples_per_cell, choices);
        write_csv(&config.out.join(&file), &rows)?;
        snapshots.push(SnapshotSummary {
            time: snap.time,
            file,
            norms: error_norms(&snap.field, &case, snap.time, &basis),
        });
    }

    let final_total = output.final_field.total(&basis);
    let summary = AdvectSummary {
        config: config.clone(),
        dt,
        steps: output.steps,
        snapshots,
        conservation: ConservationSummary {
            initial_total: output.initial_total,
            final_total,
            final_drift: final_total - output.initial_total,
            max_drift: output.max_drift,
        },
        stable_selection: output.stable_count_stats(),
    };
    write_json(&config.out.join("summary.json"), &summary)?;
    Ok(AdvectReport { summary, output })
}
