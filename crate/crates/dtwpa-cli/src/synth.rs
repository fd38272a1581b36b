//! `synth-diplexer`: Table-I-style component report, netlist document, and
//! verification S-parameter sweep with crossover/match summary.

use std::path::PathBuf;

use serde::Serialize;

use dtwpa::filtsynth::{
    chebyshev_prototype, diplexer_netlist, synthesize_highpass, synthesize_lowpass, FilterKind,
    FilterSpec, Termination,
};
use dtwpa::io::{self, NetlistDoc};
use dtwpa::rfnet::{crossover_frequency, nport_sparams, AcOptions};
use dtwpa::Real;

use crate::manifest::{GridSpec, SynthManifest};
use crate::Common;

#[derive(Serialize)]
struct SynthSummary {
    requested_crossover_hz: Real,
    crossover_hz: Real,
    crossover_error_rel: Real,
    unitarity_defect: Real,
    common_return_db_at_crossover: Real,
    low_arm_match_db_at_crossover: Real,
    high_arm_match_db_at_crossover: Real,
    insertion_db_at_crossover: Real,
}

pub fn run(m: SynthManifest, c: &Common) -> anyhow::Result<Vec<PathBuf>> {
    let d = &m.design;
    let spec = FilterSpec {
        n: d.n,
        ripple_db: d.ripple_db,
        crossover_hz: d.crossover_hz,
        z0: d.z0_ohm,
        kind: FilterKind::Lowpass,
        termination: Termination::Singly,
    };
    spec.validate()?;
    let grid = m.grid.unwrap_or(GridSpec {
        f_start_hz: 0.25 * d.crossover_hz,
        f_stop_hz: 1.75 * d.crossover_hz,
        points: 1000,
    });
    grid.validate()?;

    let proto = chebyshev_prototype(d.n, d.ripple_db, Termination::Singly)?;
    let lp = synthesize_lowpass(&spec, &proto)?;
    let hp_spec = FilterSpec { kind: FilterKind::Highpass, ..spec };
    let hp = synthesize_highpass(&hp_spec, &proto)?;
    let net = diplexer_netlist(&lp, &hp, d.z0_ohm)?;

    let sweep = nport_sparams(&net, &grid.freqs(), &AcOptions::default())?;
    let fx = crossover_frequency(&sweep, 0, 1, 2)?;
    let at_fx = nport_sparams(&net, &[fx], &AcOptions::default())?;
    let db = |i: usize, j: usize| 20.0 * at_fx.s_at(0, i, j).norm().log10();
    let summary = SynthSummary {
        requested_crossover_hz: d.crossover_hz,
        crossover_hz: fx,
        crossover_error_rel: (fx - d.crossover_hz).abs() / d.crossover_hz,
        unitarity_defect: sweep.max_unitarity_defect(),
        common_return_db_at_crossover: db(0, 0),
        low_arm_match_db_at_crossover: db(1, 1),
        high_arm_match_db_at_crossover: db(2, 2),
        insertion_db_at_crossover: db(1, 0),
    };
    if c.verbose {
        eprintln!(
            "crossover {:.6} GHz, arm match {:.2} dB, unitarity {:.2e}",
            fx / 1e9,
            summary.low_arm_match_db_at_crossover,
            summary.unitarity_defect
        );
    }

    let out = &c.out;
    let components = out.join("components.csv");
    io::write_component_report(&components, &[("low", &lp), ("high", &hp)])?;
    let netlist = out.join("diplexer_netlist.json");
    io::write_json(&netlist, &NetlistDoc::from_netlist(&net))?;
    let sparams = out.join("diplexer_sparams.csv");
    io::write_sparam_csv(&sparams, &sweep)?;
    let touchstone = out.join("diplexer.s3p");
    io::write_touchstone(&touchstone, &sweep, d.z0_ohm)?;
    let summary_path = out.join("summary.json");
    io::write_json(&summary_path, &summary)?;
    Ok(vec![components, netlist, sparams, touchstone, summary_path])
}
