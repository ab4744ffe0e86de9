use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::cases::Case;
use crate::error::{Error, Result};
use crate::reconstruction::CandidateKind;
use crate::solver::{Limiter, Scheme};

pub const DEFAULT_CFL: f64 = 0.01;
pub const DEFAULT_SAMPLES: usize = 20;
pub const DEFAULT_T_END: f64 = 8.0;
/// Advection runs without `--cells` keep `cells * (k + 1)` at this value.
pub const DEFAULT_DOF: usize = 240;
pub const SELECT_CELLS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Select,
    Advect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Indicator {
    Bvd,
    Tvb,
    /// No troubled-cell treatment.
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CandidateArg {
    Weno,
    Sweno,
}

#[derive(Debug, Parser)]
#[command(
    name = "fr-bvd",
    about = "Flux reconstruction advection with TVB or BVD candidate selection"
)]
struct Cli {
    #[arg(long, value_enum)]
    mode: Mode,
    /// Initial profile, 1..=6.
    #[arg(long = "case")]
    case_id: u32,
    /// Polynomial degree, 1..=3.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Number of cells; select mode always uses 3.
    #[arg(long)]
    cells: Option<usize>,
    #[arg(long, value_enum, default_value = "bvd")]
    indicator: Indicator,
    #[arg(long, value_enum, default_value = "weno")]
    candidate: CandidateArg,
    /// TVB parameter M (tvb only).
    #[arg(long)]
    mval: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_CFL)]
    cfl: f64,
    #[arg(long)]
    tend: Option<f64>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Comma-separated snapshot times.
    #[arg(long, value_delimiter = ',')]
    snap: Option<Vec<f64>>,
    /// Dense sample points per cell in the CSV output.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
}

/// Everything a single invocation needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub mode: Mode,
    pub case: u32,
    pub k: usize,
    pub cells: usize,
    pub indicator: Indicator,
    pub candidate: CandidateKind,
    pub mval: Option<f64>,
    pub cfl: f64,
    pub t_end: f64,
    pub snapshots: Vec<f64>,
    pub samples_per_cell: usize,
    pub out: PathBuf,
}

impl RunConfig {
    pub fn case_spec(&self) -> Result<Case> {
        Case::from_id(self.case)
    }

    pub fn scheme(&self) -> Scheme<f64> {
        let limiter = match self.indicator {
            Indicator::Bvd => Limiter::Bvd,
            Indicator::Tvb => Limiter::Tvb {
                m: self.mval.unwrap_or(0.0),
            },
            Indicator::None => Limiter::None,
        };
        Scheme {
            limiter,
            candidate: self.candidate,
        }
    }

    /// Short label such as `bvd-sweno` or `tvb-weno-m200`.
    pub fn scheme_label(&self) -> String {
        match (self.indicator, self.mval) {
            (Indicator::Tvb, Some(m)) => format!("tvb-{}-m{m}", self.candidate.name()),
            (Indicator::Bvd, _) => format!("bvd-{}", self.candidate.name()),
            _ => "unlimited".to_string(),
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

/// Parses a full argument list (program name first) into a validated config.
pub fn parse_config<I, S>(args: I) -> Result<RunConfig>
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    Case::from_id(cli.case_id)?;
    if !(1..=3).contains(&cli.k) {
        return Err(invalid(format!("--k must be 1, 2 or 3, got {}", cli.k)));
    }
    match (cli.indicator, cli.mval) {
        (Indicator::Tvb, None) => return Err(invalid("--indicator tvb requires --mval")),
        (Indicator::Tvb, Some(m)) if !(m >= 0.0 && m.is_finite()) => {
            return Err(invalid(format!("--mval must be a finite nonnegative number, got {m}")))
        }
        (Indicator::Bvd | Indicator::None, Some(_)) => {
            return Err(invalid("--mval only applies to --indicator tvb"))
        }
        _ => {}
    }
    if !(cli.cfl > 0.0 && cli.cfl.is_finite()) {
        return Err(invalid(format!("--cfl must be positive, got {}", cli.cfl)));
    }
    if cli.samples == 0 {
        return Err(invalid("--samples must be at least 1"));
    }

    let (cells, t_end, snapshots) = match cli.mode {
        Mode::Select => {
            if cli.cells.is_some_and(|n| n != SELECT_CELLS) {
                return Err(invalid("select mode always uses --cells 3"));
            }
            if cli.tend.is_some_and(|t| t != 0.0) {
                return Err(invalid("select mode does not advance in time"));
            }
            if cli.snap.is_some() {
                return Err(invalid("--snap only applies to advect mode"));
            }
            (SELECT_CELLS, 0.0, vec![0.0])
        }
        Mode::Advect => {
            let cells = cli.cells.unwrap_or(DEFAULT_DOF / (cli.k + 1));
            if cells < 3 {
                return Err(invalid(format!("--cells must be at least 3, got {cells}")));
            }
            let t_end = cli.tend.unwrap_or(DEFAULT_T_END);
            if !(t_end >= 0.0 && t_end.is_finite()) {
                return Err(invalid(format!("--tend must be nonnegative, got {t_end}")));
            }
            let mut snaps = cli.snap.unwrap_or_else(|| vec![t_end]);
            if let Some(bad) = snaps.iter().find(|&&t| !(t >= 0.0 && t <= t_end)) {
                return Err(invalid(format!("snapshot time {bad} outside [0, {t_end}]")));
            }
            snaps.sort_by(f64::total_cmp);
            snaps.dedup();
            (cells, t_end, snaps)
        }
    };

    Ok(RunConfig {
        mode: cli.mode,
        case: cli.case_id,
        k: cli.k,
        cells,
        indicator: cli.indicator,
        candidate: match cli.candidate {
            CandidateArg::Weno => CandidateKind::Weno,
            CandidateArg::Sweno => CandidateKind::Sweno,
        },
        mval: cli.mval,
        cfl: cli.cfl,
        t_end,
        snapshots,
        samples_per_cell: cli.samples,
        out: cli.out,
    })
}
