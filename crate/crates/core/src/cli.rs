//! Command-line front end. Every subcommand builds a table through the
//! library and prints it as CSV (default) or JSON.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::cmath::c;
use crate::em::Slab;
use crate::io::config::load_config;
use crate::io::table::{write_csv, write_json};
use crate::io::touchstone::parse_touchstone;
use crate::mapping::{extracted_samples, EquivalenceMode, MappingConfig};
use crate::nrw::{extract, ExtractOptions};
use crate::qm::QmBarrier;
use crate::report::{em_slab_table, nrw_table, qm_barrier_table};
use crate::sweep::{
    linspace, mapping_table, run_sweep, sweep_delta, sweep_frequency, sweep_mapping, sweep_table1, SweepTable,
};
use crate::units::{ELECTRON_MASS, ELECTRON_VOLT};
use crate::wire::WireArray;
use crate::Error;

#[derive(Debug, Parser)]
#[command(
    name = "analog-bench",
    version,
    about = "Quantum barrier / electromagnetic slab scattering toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Emit a JSON document with metadata instead of CSV.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Brown,
    S2p,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Formal,
    Physical,
}

impl From<Mode> for EquivalenceMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Formal => EquivalenceMode::Formal,
            Mode::Physical => EquivalenceMode::Physical,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reflection and transmission of a rectangular barrier.
    #[command(allow_negative_numbers = true)]
    QmBarrier {
        #[arg(long)]
        vb_ev: f64,
        #[arg(long)]
        width_mm: f64,
        #[arg(long)]
        energy_ev: f64,
        #[arg(long, default_value_t = ELECTRON_MASS)]
        mass_kg: f64,
    },
    /// S-parameters of a homogeneous slab.
    #[command(allow_negative_numbers = true)]
    EmSlab {
        #[arg(long)]
        n_re: f64,
        #[arg(long, default_value_t = 0.0)]
        n_im: f64,
        #[arg(long)]
        z_re: f64,
        #[arg(long, default_value_t = 0.0)]
        z_im: f64,
        #[arg(long)]
        thickness_mm: f64,
        #[arg(long)]
        f_ghz: f64,
    },
    /// Wire-array medium and slab response over a frequency band.
    WireArray {
        #[arg(long)]
        r_mm: f64,
        #[arg(long)]
        a_mm: f64,
        #[arg(long)]
        b_mm: f64,
        #[arg(long)]
        rows: u32,
        #[arg(long, default_value_t = 1.0)]
        f_min_ghz: f64,
        #[arg(long, default_value_t = 10.0)]
        f_max_ghz: f64,
        #[arg(long, default_value_t = 300)]
        points: usize,
    },
    /// Impedance, index, permittivity and permeability from a Touchstone file.
    #[command(allow_negative_numbers = true)]
    Nrw {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        thickness_mm: f64,
        #[arg(long)]
        initial_branch: Option<i64>,
    },
    /// Map a medium onto a quantum barrier and compare coefficients.
    Map {
        #[arg(long, value_enum)]
        source: Source,
        #[arg(long)]
        r_mm: Option<f64>,
        #[arg(long)]
        a_mm: Option<f64>,
        #[arg(long)]
        b_mm: Option<f64>,
        #[arg(long)]
        rows: Option<u32>,
        #[arg(long, default_value_t = 1.0)]
        f_min_ghz: f64,
        #[arg(long, default_value_t = 10.0)]
        f_max_ghz: f64,
        #[arg(long, default_value_t = 300)]
        points: usize,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        thickness_mm: Option<f64>,
        #[arg(long, default_value_t = 1e9)]
        k_min: f64,
        #[arg(long, default_value_t = 1e10)]
        k_max: f64,
        #[arg(long, default_value_t = ELECTRON_MASS)]
        mass_kg: f64,
        #[arg(long, value_enum, default_value_t = Mode::Formal)]
        mode: Mode,
    },
    /// Run a sweep described by a JSON configuration file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
    /// Rectangular barriers approaching a delta barrier at constant area.
    DeltaLimit {
        #[arg(long)]
        energy_ev: f64,
        /// Barrier area `V_b·L` in eV·nm.
        #[arg(long, alias = "area")]
        area_ev_nm: f64,
        /// Barrier heights in eV (comma separated); default 10 to 10⁴ times the energy.
        #[arg(long, value_delimiter = ',')]
        heights_ev: Vec<f64>,
        #[arg(long, default_value_t = ELECTRON_MASS)]
        mass_kg: f64,
    },
    /// Lattice pitches holding `V_b·b` constant (the reference delta-limit lattice).
    Table1,
}

fn usage(msg: &str) -> clap::Error {
    use clap::CommandFactory;
    Cli::command().error(clap::error::ErrorKind::MissingRequiredArgument, msg)
}

fn wire_from(
    r: Option<f64>,
    a: Option<f64>,
    b: Option<f64>,
    rows: Option<u32>,
) -> Result<Result<WireArray, Error>, clap::Error> {
    match (r, a, b, rows) {
        (Some(r), Some(a), Some(b), Some(rows)) => Ok(WireArray::from_mm(r, a, b, rows).map_err(Error::from)),
        _ => Err(usage("--source brown needs --r-mm, --a-mm, --b-mm and --rows")),
    }
}

/// Default delta-limit heights: 10^(j/4) times the energy, j = 4 … 16.
pub fn default_delta_heights(energy_ev: f64) -> Vec<f64> {
    (4..=16).map(|j| energy_ev * 10f64.powf(j as f64 / 4.0)).collect()
}

enum Outcome {
    Table(SweepTable),
    Usage(clap::Error),
}

fn build(cli: &Cli) -> Result<Outcome, Error> {
    let table = match &cli.command {
        Command::QmBarrier {
            vb_ev,
            width_mm,
            energy_ev,
            mass_kg,
        } => {
            let barrier = QmBarrier::new(vb_ev * ELECTRON_VOLT, width_mm * 1e-3, *mass_kg)?;
            qm_barrier_table(&barrier, energy_ev * ELECTRON_VOLT)?
        }
        Command::EmSlab {
            n_re,
            n_im,
            z_re,
            z_im,
            thickness_mm,
            f_ghz,
        } => {
            let slab = Slab::new(c(*n_re, *n_im), c(*z_re, *z_im), thickness_mm * 1e-3)?;
            em_slab_table(&slab, f_ghz * 1e9)?
        }
        Command::WireArray {
            r_mm,
            a_mm,
            b_mm,
            rows,
            f_min_ghz,
            f_max_ghz,
            points,
        } => {
            let spec = WireArray::from_mm(*r_mm, *a_mm, *b_mm, *rows)?;
            sweep_frequency(&spec, &linspace(f_min_ghz * 1e9, f_max_ghz * 1e9, *points))?
        }
        Command::Nrw {
            input,
            thickness_mm,
            initial_branch,
        } => {
            let doc = parse_touchstone(&std::fs::read_to_string(input)?)?;
            let d = thickness_mm * 1e-3;
            let opts = ExtractOptions {
                initial_branch: *initial_branch,
                ..Default::default()
            };
            nrw_table(&extract(&doc.to_series(d)?, &opts)?, d)
        }
        Command::Map {
            source,
            r_mm,
            a_mm,
            b_mm,
            rows,
            f_min_ghz,
            f_max_ghz,
            points,
            input,
            thickness_mm,
            k_min,
            k_max,
            mass_kg,
            mode,
        } => {
            let cfg = MappingConfig {
                k_min: *k_min,
                k_max: *k_max,
                mass: *mass_kg,
            };
            match source {
                Source::Brown => {
                    let spec = match wire_from(*r_mm, *a_mm, *b_mm, *rows) {
                        Ok(spec) => spec?,
                        Err(e) => return Ok(Outcome::Usage(e)),
                    };
                    let freqs = linspace(f_min_ghz * 1e9, f_max_ghz * 1e9, *points);
                    sweep_mapping(&spec, &freqs, &cfg, (*mode).into())?
                }
                Source::S2p => {
                    let (Some(input), Some(t)) = (input, thickness_mm) else {
                        return Ok(Outcome::Usage(usage("--source s2p needs --input and --thickness-mm")));
                    };
                    let doc = parse_touchstone(&std::fs::read_to_string(input)?)?;
                    let d = t * 1e-3;
                    let params = extract(&doc.to_series(d)?, &ExtractOptions::default())?;
                    mapping_table(&extracted_samples(&params), d, &cfg, (*mode).into())?
                }
            }
        }
        Command::Sweep { config } => run_sweep(&load_config(config)?.sweep)?,
        Command::DeltaLimit {
            energy_ev,
            area_ev_nm,
            heights_ev,
            mass_kg,
        } => {
            let heights = if heights_ev.is_empty() {
                default_delta_heights(*energy_ev)
            } else {
                heights_ev.clone()
            };
            let heights: Vec<f64> = heights.iter().map(|h| h * ELECTRON_VOLT).collect();
            sweep_delta(
                energy_ev * ELECTRON_VOLT,
                area_ev_nm * ELECTRON_VOLT * 1e-9,
                &heights,
                *mass_kg,
            )?
        }
        Command::Table1 => sweep_table1()?,
    };
    Ok(Outcome::Table(table))
}

/// Render a table the way the command line does.
pub fn render(table: &SweepTable, json: bool) -> Result<String, Error> {
    Ok(if json { write_json(table)? } else { write_csv(table)? })
}

/// Parse `argv` (including the program name), run, and return the exit code:
/// 0 on success, 1 on a computation error, 2 on a usage error.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = build(&cli).and_then(|outcome| match outcome {
        Outcome::Usage(e) => Ok(Err(e)),
        Outcome::Table(t) => render(&t, cli.json).map(Ok),
    });
    match result {
        Ok(Ok(text)) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, text),
                None => {
                    use std::io::Write;
                    std::io::stdout().write_all(text.as_bytes())
                }
            };
            match written {
                Ok(()) => 0,
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
                Err(e) => {
                    eprintln!("error: {}", Error::from(e));
                    1
                }
            }
        }
        Ok(Err(usage)) => {
            let _ = usage.print();
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
