//! Transfer-matrix scattering for quantum barriers and electromagnetic slabs,
//! the wire-array medium that links them, S-parameter inversion, and the
//! sweeps and file formats around them.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod cmath;
pub mod em;
pub mod io;
pub mod mapping;
pub mod matrix;
pub mod nrw;
pub mod qm;
pub mod report;
pub mod scatter;
pub mod sweep;
pub mod units;
pub mod wire;

pub use scatter::ScatterResult;

use thiserror::Error;

/// Any error from the library, tagged with the module it came from.
#[derive(Debug, Error)]
pub enum Error {
    #[error("units: {0}")]
    Units(#[from] units::UnitError),
    #[error("qm_scatter: {0}")]
    Qm(#[from] qm::QmError),
    #[error("em_scatter: {0}")]
    Em(#[from] em::EmError),
    #[error("wire_medium: {0}")]
    Wire(#[from] wire::WireError),
    #[error("nrw_extract: {0}")]
    Nrw(#[from] nrw::NrwError),
    #[error("qm_em_map: {0}")]
    Map(#[from] mapping::MapError),
    #[error("sweep_engine: {0}")]
    Sweep(#[from] sweep::SweepError),
    #[error("touchstone: {0}")]
    Touchstone(#[from] io::touchstone::TouchstoneError),
    #[error("table: {0}")]
    Table(#[from] io::table::TableError),
    #[error("config: {0}")]
    Config(#[from] io::config::ConfigError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
