//! `paper-repro`: chain the four workflows on built-in paper-style inputs.
//! Synthetic noise and calibration datasets are generated deterministically
//! into the output directory so the whole run is reproducible from nothing.

use std::path::PathBuf;

use dtwpa::io::{self, DesignDoc};
use dtwpa::noisecal::{sntj_input_noise, SntjParams};
use dtwpa::Real;

use crate::manifest::{
    CalibrateManifest, DeviceSpec, ExclusionChoice, GainManifest, GridSpec, MonteCarloSpec,
    NoiseFitManifest, PumpPowerSpec, PumpSpec, SignalSpec, SimSpec, SynthManifest,
};
use crate::{calibrate, gain, noise, synth, Common};

/// Default pump operating point near the RPM dispersion feature.
pub const DEFAULT_PUMP_FREQ_HZ: Real = 8.5e9;
pub const DEFAULT_PUMP_POWER_DBM: Real = -74.0;

fn sub_common(c: &Common, dir: &str) -> anyhow::Result<Common> {
    let out = c.out.join(dir);
    std::fs::create_dir_all(&out)?;
    Ok(Common { manifest: None, out, seed: c.seed, threads: None, verbose: c.verbose })
}

/// SNTJ forward-model chain sweep at 7.74 GHz: 14 mK electron temperature,
/// bias out to 500 uV, read out through a chain with G = 61 dB and
/// N_add = 12 quanta.
fn write_chain_csv(path: &PathBuf) -> anyhow::Result<()> {
    let params = SntjParams { temperature_k: 0.014, v_bias: vec![], freq_hz: 7.74e9 };
    let g = 10f64.powf(6.1);
    let n_add = 12.0;
    let rows: Vec<Vec<Real>> = (0..41)
        .map(|i| {
            let v = -500e-6 + i as Real * 25e-6;
            let n_in = sntj_input_noise(&params, v);
            vec![7.74e9, n_in, g * (n_in + n_add)]
        })
        .collect();
    io::write_csv(path, &["f_hz", "n_in_quanta", "n_out"], &rows)?;
    Ok(())
}

/// Fig. 3b-style gain sweep at 7.74 GHz: N_add = N_TWPA + N_rem / G along
/// the sweep, with two compressed high-gain points that the exclusion rule
/// should mask.
fn write_decomposition_csv(path: &PathBuf) -> anyhow::Result<()> {
    let n_twpa = 1.17;
    let n_rem = 9.0;
    let sigma = 0.14 / 0.6273949662234212;
    let gains: [Real; 7] = [8.0, 12.0, 18.0, 27.0, 40.0, 60.0, 90.0];
    let mut rows: Vec<Vec<Real>> = gains
        .iter()
        .map(|&g| vec![10.0 * g.log10(), n_twpa + n_rem / g, sigma])
        .collect();
    rows.push(vec![10.0 * 120f64.log10(), 1.75, sigma]);
    rows.push(vec![10.0 * 160f64.log10(), 2.1, sigma]);
    io::write_csv(path, &["g_twpa_db", "n_add_quanta", "n_add_err"], &rows)?;
    Ok(())
}

/// Forward-model VNA calibration table: a gently sloped input attenuation
/// read back through Eq. (6) with the chain gain cancelling.
fn write_calibration_csv(path: &PathBuf) -> anyhow::Result<()> {
    let chain_gain = 10f64.powf(6.1);
    let rows: Vec<Vec<Real>> = (0..21)
        .map(|i| {
            let f = 6e9 + i as Real * 0.1e9;
            let a_db = 61.0 + 1.5 * (f - 6e9) / 2e9;
            let a = 10f64.powf(-a_db / 10.0);
            let p_vna = 1e-5;
            let s_in = 1e-21;
            vec![f, p_vna, p_vna * a * chain_gain, s_in, s_in * chain_gain]
        })
        .collect();
    io::write_csv(path, &["f_hz", "p_vna_w", "p_out_w", "s_in", "s_out"], &rows)?;
    Ok(())
}

pub fn run(c: &Common) -> anyhow::Result<Vec<PathBuf>> {
    let mut written = Vec::new();

    // 1. Design synthesis on the published spec.
    let synth_manifest = SynthManifest {
        design: DesignDoc { n: 5, ripple_db: 0.1, crossover_hz: 8e9, z0_ohm: 50.0 },
        grid: Some(GridSpec { f_start_hz: 2e9, f_stop_hz: 14e9, points: 1000 }),
    };
    written.extend(synth::run(synth_manifest, &sub_common(c, "synth")?)?);

    // 2. Scattering and gain. A coarse signal grid keeps the transient
    // budget reasonable on a laptop; the full profile is a manifest away.
    let gain_manifest = GainManifest {
        device: DeviceSpec { netlist_path: None, n_cells: None, diplexer: None },
        pump: PumpSpec {
            enabled: true,
            freq_hz: Some(DEFAULT_PUMP_FREQ_HZ),
            power_dbm: Some(DEFAULT_PUMP_POWER_DBM),
        },
        signal: SignalSpec { f_start_hz: 6.0e9, f_stop_hz: 8.0e9, points: 5, power_dbm: -100.0 },
        // A shorter window than the library default: every tone here is a
        // multiple of 0.1 GHz, so 10 ns stays commensurate at half the cost.
        sim: SimSpec {
            dt_s: Some(1e-12),
            settle_time_s: Some(10e-9),
            record_time_s: Some(10e-9),
            ramp_time_s: Some(4e-9),
        },
        compression: None,
        dump_time_series: false,
    };
    written.extend(gain::run(gain_manifest, &sub_common(c, "gain")?)?);

    // 3. Noise fits on synthetic forward-model data.
    let noise_dir = sub_common(c, "noise")?;
    let chain_csv = noise_dir.out.join("chain_sweep.csv");
    write_chain_csv(&chain_csv)?;
    let dec_csv = noise_dir.out.join("gain_sweep.csv");
    write_decomposition_csv(&dec_csv)?;
    written.push(chain_csv.clone());
    written.push(dec_csv.clone());
    let noise_manifest = NoiseFitManifest {
        chain_csv: Some(chain_csv),
        decomposition_csv: Some(dec_csv),
        exclusion: ExclusionChoice::AboveMinimum,
        monte_carlo: Some(MonteCarloSpec { resamples: 1000, noise_fraction: 0.01 }),
    };
    written.extend(noise::run(noise_manifest, &noise_dir)?);

    // 4. Line calibration and the pump-power report.
    let cal_dir = sub_common(c, "calibrate")?;
    let table_csv = cal_dir.out.join("vna_sweeps.csv");
    write_calibration_csv(&table_csv)?;
    written.push(table_csv.clone());
    let cal_manifest = CalibrateManifest {
        table_csv: Some(table_csv),
        pump: Some(PumpPowerSpec { source_dbm: -15.8, attenuation_db: 61.0 }),
    };
    written.extend(calibrate::run(cal_manifest, &cal_dir)?);

    Ok(written)
}
