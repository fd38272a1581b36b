//! `gain`: pump-off linear response and pump-on parametric gain profile of
//! the assembled four-port device, plus optional compression sweep.

use std::path::PathBuf;

use serde::Serialize;

use dtwpa::filtsynth::{
    chebyshev_prototype, diplexer_netlist, synthesize_highpass, synthesize_lowpass, FilterKind,
    FilterSpec, Termination,
};
use dtwpa::io::{self, DesignDoc, NetlistDoc};
use dtwpa::rfnet::{nport_sparams, AcOptions, Netlist};
use dtwpa::transim::{compression_sweep, pumped_gain_profile, simulate_transient, DriveConfig, SimConfig, Tone};
use dtwpa::twpa::{assemble_device, build_twpa_netlist, NonlinearNetlist, TwpaDesign};
use dtwpa::Real;

use crate::manifest::GainManifest;
use crate::Common;

fn paper_diplexer_design() -> DesignDoc {
    DesignDoc { n: 5, ripple_db: 0.1, crossover_hz: 8e9, z0_ohm: 50.0 }
}

fn build_diplexer(d: &DesignDoc) -> anyhow::Result<Netlist<Real>> {
    let spec = FilterSpec {
        n: d.n,
        ripple_db: d.ripple_db,
        crossover_hz: d.crossover_hz,
        z0: d.z0_ohm,
        kind: FilterKind::Lowpass,
        termination: Termination::Singly,
    };
    let proto = chebyshev_prototype(d.n, d.ripple_db, Termination::Singly)?;
    let lp = synthesize_lowpass(&spec, &proto)?;
    let hp = synthesize_highpass(&FilterSpec { kind: FilterKind::Highpass, ..spec }, &proto)?;
    Ok(diplexer_netlist(&lp, &hp, d.z0_ohm)?)
}

/// Build (or load) the four-port device described by the manifest, returning
/// it with the diplexer crossover used for band routing.
pub fn build_device(m: &GainManifest) -> anyhow::Result<(NonlinearNetlist<Real>, Real)> {
    let dip_design = m.device.diplexer.clone().unwrap_or_else(paper_diplexer_design);
    if let Some(path) = &m.device.netlist_path {
        let doc: NetlistDoc = io::read_json(path)?;
        let net = doc.to_nonlinear()?;
        anyhow::ensure!(
            net.linear.ports.len() == 4,
            "device netlist must expose four ports, got {}",
            net.linear.ports.len()
        );
        return Ok((net, dip_design.crossover_hz));
    }
    let mut design: TwpaDesign<Real> = TwpaDesign::default_design();
    if let Some(n) = m.device.n_cells {
        design.n_cells = n;
    }
    design.validate()?;
    let line = build_twpa_netlist(&design)?;
    let dip = build_diplexer(&dip_design)?;
    let dev = assemble_device(&line, &dip, &dip)?;
    Ok((dev, dip_design.crossover_hz))
}

pub fn sim_config(m: &GainManifest) -> anyhow::Result<SimConfig<Real>> {
    let mut cfg = SimConfig::default_transient();
    if let Some(v) = m.sim.dt_s {
        cfg.dt = v;
    }
    if let Some(v) = m.sim.settle_time_s {
        cfg.settle_time = v;
    }
    if let Some(v) = m.sim.record_time_s {
        cfg.record_time = v;
    }
    if let Some(v) = m.sim.ramp_time_s {
        cfg.ramp_time = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

#[derive(Serialize)]
struct GainSummary {
    pump_enabled: bool,
    pump_freq_hz: Option<Real>,
    pump_power_dbm: Option<Real>,
    signal_power_dbm: Real,
    max_gain_db: Option<Real>,
    max_manley_rowe_residual: Option<Real>,
    /// Widest contiguous stretch of the signal grid with gain >= 10 dB.
    band_above_10db_hz: Option<Real>,
    p_1db_dbm: Option<Real>,
}

fn widest_band(freqs: &[Real], gains: &[Real], threshold: Real) -> Real {
    let mut best = 0.0f64;
    let mut start: Option<usize> = None;
    for i in 0..freqs.len() {
        if gains[i] >= threshold {
            if start.is_none() {
                start = Some(i);
            }
            if let Some(s) = start {
                best = best.max(freqs[i] - freqs[s]);
            }
        } else {
            start = None;
        }
    }
    best
}

pub fn run(m: GainManifest, c: &Common) -> anyhow::Result<Vec<PathBuf>> {
    // Validate everything up front, before any matrix is assembled.
    anyhow::ensure!(m.signal.points >= 1, "signal grid needs at least one point");
    anyhow::ensure!(
        m.signal.f_start_hz > 0.0
            && (m.signal.points == 1 || m.signal.f_stop_hz > m.signal.f_start_hz),
        "signal frequencies must be positive and increasing"
    );
    let pump = if m.pump.enabled {
        let (Some(f), Some(p)) = (m.pump.freq_hz, m.pump.power_dbm) else {
            anyhow::bail!("pump-on mode requires pump.freq_hz and pump.power_dbm");
        };
        anyhow::ensure!(f > 0.0, "pump frequency must be positive");
        Some(Tone { freq_hz: f, power_dbm: p, port: 2 })
    } else {
        None
    };
    let cfg = sim_config(&m)?;
    let (dev, crossover_hz) = build_device(&m)?;

    let mut written = Vec::new();
    let out = &c.out;

    // Pump-off linear response over both bands, from the junction-linearized
    // network: f_hz, s21_db, s43_db.
    let lin = dev.linearize();
    let span = m.signal.f_stop_hz.max(1.5 * crossover_hz);
    let off_freqs: Vec<Real> = (0..601)
        .map(|i| 1e9 + (span - 1e9) * i as Real / 600.0)
        .collect();
    let sweep = nport_sparams(&lin, &off_freqs, &AcOptions::default())?;
    let rows: Vec<Vec<Real>> = (0..off_freqs.len())
        .map(|fi| {
            vec![
                off_freqs[fi],
                20.0 * sweep.s_at(fi, 1, 0).norm().log10(),
                20.0 * sweep.s_at(fi, 3, 2).norm().log10(),
            ]
        })
        .collect();
    let pump_off = out.join("pump_off.csv");
    io::write_csv(&pump_off, &["f_hz", "s21_db", "s43_db"], &rows)?;
    written.push(pump_off);

    let mut summary = GainSummary {
        pump_enabled: pump.is_some(),
        pump_freq_hz: pump.map(|t| t.freq_hz),
        pump_power_dbm: pump.map(|t| t.power_dbm),
        signal_power_dbm: m.signal.power_dbm,
        max_gain_db: None,
        max_manley_rowe_residual: None,
        band_above_10db_hz: None,
        p_1db_dbm: None,
    };

    if let Some(pump) = pump {
        let n = m.signal.points;
        let freqs: Vec<Real> = (0..n)
            .map(|i| {
                if n == 1 {
                    m.signal.f_start_hz
                } else {
                    m.signal.f_start_hz
                        + (m.signal.f_stop_hz - m.signal.f_start_hz) * i as Real
                            / (n - 1) as Real
                }
            })
            .collect();
        let profile =
            pumped_gain_profile(&dev, pump, &freqs, m.signal.power_dbm, crossover_hz, &cfg)?;
        let rows: Vec<Vec<Real>> = profile
            .iter()
            .map(|g| {
                vec![
                    g.f_signal_hz,
                    g.gain_db,
                    g.f_idler_hz,
                    g.idler_power_dbm,
                    g.manley_rowe_residual,
                ]
            })
            .collect();
        let path = out.join("gain_profile.csv");
        io::write_csv(
            &path,
            &["f_hz", "gain_db", "f_idler_hz", "idler_power_dbm", "manley_rowe_residual"],
            &rows,
        )?;
        written.push(path);
        let gains: Vec<Real> = profile.iter().map(|g| g.gain_db).collect();
        summary.max_gain_db = gains.iter().cloned().reduce(Real::max);
        summary.max_manley_rowe_residual = profile
            .iter()
            .map(|g| g.manley_rowe_residual)
            .reduce(Real::max);
        summary.band_above_10db_hz = Some(widest_band(&freqs, &gains, 10.0));
        if c.verbose {
            for g in &profile {
                eprintln!(
                    "{:.3} GHz: {:+.2} dB (MR {:.3})",
                    g.f_signal_hz / 1e9,
                    g.gain_db,
                    g.manley_rowe_residual
                );
            }
        }

        if let Some(comp) = &m.compression {
            let res = compression_sweep(
                &dev,
                pump,
                comp.f_signal_hz,
                &comp.powers_dbm,
                crossover_hz,
                &cfg,
            )?;
            let rows: Vec<Vec<Real>> = res
                .powers_dbm
                .iter()
                .zip(&res.gain_db)
                .map(|(&p, &g)| vec![p, g])
                .collect();
            let path = out.join("compression.csv");
            io::write_csv(&path, &["p_in_dbm", "gain_db"], &rows)?;
            written.push(path);
            summary.p_1db_dbm = res.p_1db_dbm;
        }

        if m.dump_time_series {
            let drive = DriveConfig {
                tones: vec![
                    pump,
                    Tone {
                        freq_hz: freqs[0],
                        power_dbm: m.signal.power_dbm,
                        port: if freqs[0] < crossover_hz { 0 } else { 2 },
                    },
                ],
            };
            let res = simulate_transient(&dev, &drive, &cfg)?;
            let path = out.join("time_series.bin");
            io::write_time_series(&path, res.dt, &res.port_voltages)?;
            written.push(path);
        }
    }

    let path = out.join("summary.json");
    io::write_json(&path, &summary)?;
    written.push(path);
    Ok(written)
}
