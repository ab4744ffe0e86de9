//! Command line front end: static selection on three cells and advection
//! runs, with CSV and JSON output.

mod advect;
mod config;
mod output;
mod select;

pub use advect::{run_advect, AdvectReport, AdvectSummary, ConservationSummary, SnapshotSummary};
pub use config::{
    parse_config, Indicator, Mode, RunConfig, DEFAULT_CFL, DEFAULT_DOF, DEFAULT_SAMPLES, DEFAULT_T_END, SELECT_CELLS,
};
pub use output::{dense_rows, write_csv, write_json, SampleRow, CSV_HEADER};
pub use select::{run_select, write_select, SelectionReport};

use std::ffi::OsString;

use crate::error::Result;

/// Runs one invocation and returns the process exit code.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    match parse_config(args).and_then(|c| execute(&c)) {
        Ok(()) => 0,
        Err(crate::Error::Cli(e)) => {
            let _ = e.print();
            e.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(config: &RunConfig) -> Result<()> {
    match config.mode {
        Mode::Select => {
            let report = run_select(config)?;
            write_select(&report, &config.out)?;
            println!(
                "case {} K={} {}: middle cell -> {} ({})",
                config.case,
                config.k,
                config.scheme_label(),
                report.middle_choice.name(),
                report.middle_mechanism.map(|m| m.name()).unwrap_or("unlimited"),
            );
        }
        Mode::Advect => {
            let report = run_advect(config)?;
            let s = &report.summary;
            println!(
                "case {} K={} N={} {}: {} steps, drift {:.3e}",
                config.case,
                config.k,
                config.cells,
                config.scheme_label(),
                s.steps,
                s.conservation.max_drift
            );
            for snap in &s.snapshots {
                println!(
                    "  t={:<8} L1={:.4e} L2={:.4e} Linf={:.4e} over={:.4e} under={:.4e}",
                    snap.time, snap.norms.l1, snap.norms.l2, snap.norms.linf, snap.norms.overshoot, snap.norms.undershoot
                );
            }
        }
    }
    Ok(())
}
