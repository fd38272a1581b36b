//! JSON run manifests, one document shape per subcommand. Schemas for these
//! live in `docs/manifests.md`.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use dtwpa::io::DesignDoc;
use dtwpa::Real;

/// Frequency grid request, inclusive endpoints.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GridSpec {
    pub f_start_hz: Real,
    pub f_stop_hz: Real,
    pub points: usize,
}

impl GridSpec {
    pub fn validate(&self) -> anyhow::Result<()> {
        anyhow::ensure!(self.points >= 2, "grid needs at least two points");
        anyhow::ensure!(
            self.f_start_hz > 0.0 && self.f_stop_hz > self.f_start_hz,
            "grid frequencies must be positive and increasing"
        );
        Ok(())
    }

    pub fn freqs(&self) -> Vec<Real> {
        let n = self.points;
        (0..n)
            .map(|i| {
                self.f_start_hz
                    + (self.f_stop_hz - self.f_start_hz) * i as Real / (n - 1) as Real
            })
            .collect()
    }
}

/// `synth-diplexer` manifest.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SynthManifest {
    pub design: DesignDoc,
    /// Grid for the verification S-parameter sweep. Default: 1000 points
    /// over 0.25x .. 1.75x the crossover.
    pub grid: Option<GridSpec>,
}

/// Device description for `gain`: either the built-in default design,
/// possibly resized, or an explicit netlist document on disk.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeviceSpec {
    /// Path to a netlist JSON document (four-port assembled device). When
    /// absent the default design is built and wrapped in diplexers.
    pub netlist_path: Option<PathBuf>,
    /// Override the default design's cell count.
    pub n_cells: Option<usize>,
    /// Diplexer design for assembly; defaults to the 8 GHz paper values.
    pub diplexer: Option<DesignDoc>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PumpSpec {
    pub enabled: bool,
    pub freq_hz: Option<Real>,
    pub power_dbm: Option<Real>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SignalSpec {
    pub f_start_hz: Real,
    pub f_stop_hz: Real,
    pub points: usize,
    pub power_dbm: Real,
}

/// Transient solver knobs; all optional with library defaults.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct SimSpec {
    pub dt_s: Option<Real>,
    pub settle_time_s: Option<Real>,
    pub record_time_s: Option<Real>,
    pub ramp_time_s: Option<Real>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompressionSpec {
    pub f_signal_hz: Real,
    pub powers_dbm: Vec<Real>,
}

/// `gain` manifest.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GainManifest {
    pub device: DeviceSpec,
    pub pump: PumpSpec,
    pub signal: SignalSpec,
    #[serde(default)]
    pub sim: SimSpec,
    pub compression: Option<CompressionSpec>,
    /// Dump raw port-voltage traces of the first gain point to a binary
    /// time-series file.
    #[serde(default)]
    pub dump_time_series: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExclusionChoice {
    None,
    AboveMinimum,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MonteCarloSpec {
    pub resamples: usize,
    /// Multiplicative 1-sigma noise applied to N_out per resample.
    pub noise_fraction: Real,
}

/// `noise-fit` manifest. `chain_csv` columns: f_hz, n_in_quanta, n_out.
/// `decomposition_csv` columns: g_twpa_db, n_add_quanta, n_add_err.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NoiseFitManifest {
    pub chain_csv: Option<PathBuf>,
    pub decomposition_csv: Option<PathBuf>,
    #[serde(default = "default_exclusion")]
    pub exclusion: ExclusionChoice,
    pub monte_carlo: Option<MonteCarloSpec>,
}

fn default_exclusion() -> ExclusionChoice {
    ExclusionChoice::AboveMinimum
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PumpPowerSpec {
    pub source_dbm: Real,
    pub attenuation_db: Real,
}

/// `calibrate` manifest. `table_csv` columns: f_hz, p_vna_w, p_out_w,
/// s_in, s_out.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CalibrateManifest {
    pub table_csv: Option<PathBuf>,
    pub pump: Option<PumpPowerSpec>,
}
