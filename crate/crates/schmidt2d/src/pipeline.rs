//! One complete run: configuration in, decomposition plus written files out.
//!
//! The steps are always the same -- build and normalize the state, build
//! the radial grid, project the angular channels, solve each channel, and
//! assemble the occupancy report -- so they live here once and both the
//! command line tool and library callers drive them through `run_pipeline`.
//!
//! Every output file is deterministic byte for byte for a given
//! configuration: orderings are fixed by the spectrum sort and numbers are
//! printed with explicit formats, never via hash-ordered containers.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::analysis::{Decomposition, EntanglementReport};
use crate::angular::angular_kernel_all;
use crate::config::{Config, ModelConfig};
use crate::error::Result;
use crate::grid::build_radial_grid;
use crate::models::{GaussianPairState, PairState, ProductState, TabulatedPairState};

/// What a finished run hands back to the caller.
pub struct RunOutcome {
    pub decomposition: Decomposition,
    pub report: EntanglementReport,
    /// Files written, in the order they were produced.
    pub written: Vec<PathBuf>,
}

impl RunOutcome {
    /// True when the run finished but flagged its own quality: truncation
    /// lost visible weight or a tabulated profile ran off its table.
    pub fn degraded(&self) -> bool {
        !self.report.warnings.is_empty()
    }
}

/// Build the configured state and normalize it on the run's grid scale.
///
/// The concrete type is kept alongside the erased handle because tabulated
/// states carry a post-run diagnostic (tail truncation) the pipeline wants
/// to read back.
enum BuiltState {
    Gaussian(Arc<GaussianPairState>),
    Tabulated(Arc<TabulatedPairState>),
}

impl BuiltState {
    fn build(model: &ModelConfig, grid: &crate::grid::RadialGrid) -> Result<Self> {
        match model {
            ModelConfig::Gaussian {
                sigma_rel,
                sigma_cm,
            } => {
                let mut s = GaussianPairState::new(*sigma_rel, *sigma_cm)?;
                s.normalize(grid)?;
                Ok(BuiltState::Gaussian(Arc::new(s)))
            }
            ModelConfig::Tabulated {
                rel_path,
                cm_path,
                interpolation_order,
            } => {
                let mut s =
                    TabulatedPairState::from_files(rel_path, cm_path, *interpolation_order)?;
                s.normalize(grid)?;
                s.clear_truncated_tail();
                Ok(BuiltState::Tabulated(Arc::new(s)))
            }
        }
    }

    fn as_dyn(&self) -> Arc<dyn PairState> {
        match self {
            BuiltState::Gaussian(s) => s.clone(),
            BuiltState::Tabulated(s) => s.clone(),
        }
    }
}

/// Build and normalize the configured state, erased to the trait handle.
/// For callers outside the pipeline (the oracle command, examples) that
/// need the state without a full run.
pub fn build_state(
    model: &ModelConfig,
    grid: &crate::grid::RadialGrid,
) -> Result<Arc<dyn PairState>> {
    Ok(BuiltState::build(model, grid)?.as_dyn())
}

/// Run the full decomposition described by `config` and write whatever the
/// `[output]` section asks for.
pub fn run_pipeline(config: &Config) -> Result<RunOutcome> {
    let grid = build_radial_grid(config.grid.n, config.grid.rho_max, config.grid.rule)?;
    let built = BuiltState::build(&config.model, &grid)?;
    let state = built.as_dyn();
    let n_phi = config.truncation.resolved_n_phi();

    let kernels = angular_kernel_all(state.as_ref(), &grid, config.truncation.m_max, n_phi)?;
    let mut written = Vec::new();
    if let Some(dir) = &config.output.kernels_dir {
        std::fs::create_dir_all(dir)?;
        for kernel in &kernels {
            let path = dir.join(format!("kernel_m{}.dat", kernel.m()));
            let mut w = BufWriter::new(File::create(&path)?);
            kernel.write_to(&mut w)?;
            written.push(path);
        }
    }

    let decomposition = Decomposition::from_kernels(state, &kernels, config.truncation.s_max)?;
    let mut report = decomposition.report(config.tolerances.norm_deficit);
    let n_ang = (4 * config.truncation.m_max as usize + 16).max(96);
    report.reconstruction_residual = Some(decomposition.reconstruction_residual(
        config.truncation.m_max,
        config.truncation.s_max,
        n_ang,
    )?);
    if let BuiltState::Tabulated(s) = &built {
        if s.truncated_tail() {
            report.warnings.push(
                "tabulated profiles were evaluated beyond their last node and read as zero; \
                 extend the tables or reduce grid.rho_max"
                    .to_string(),
            );
        }
    }

    if let Some(path) = &config.output.report {
        write_report(path, &report)?;
        written.push(path.clone());
    }
    if let Some(path) = &config.output.spectrum {
        write_spectrum(path, &report)?;
        written.push(path.clone());
    }
    if let Some(dir) = &config.output.orbitals_dir {
        std::fs::create_dir_all(dir)?;
        for channel in decomposition.channels() {
            let path = dir.join(format!("orbitals_m{}.dat", channel.m()));
            let mut w = BufWriter::new(File::create(&path)?);
            channel.write_orbitals(&mut w)?;
            written.push(path);
        }
    }

    Ok(RunOutcome {
        decomposition,
        report,
        written,
    })
}

/// Occupancies and measures as a JSON document.
pub fn write_report(path: &Path, report: &EntanglementReport) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    let text = serde_json::to_string_pretty(report).expect("report serialization cannot fail");
    writeln!(w, "{text}")?;
    Ok(())
}

/// The occupancy spectrum as `s,m,lambda` CSV, strongest mode first.
pub fn write_spectrum(path: &Path, report: &EntanglementReport) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "s,m,lambda")?;
    for o in &report.occupancies {
        writeln!(w, "{},{},{:.16e}", o.s, o.m, o.lambda)?;
    }
    Ok(())
}
