//! Scratch exploration (deleted before finishing): diplexer values, device
//! linear response, pump operating-point scan.

use dtwpa::filtsynth::*;
use dtwpa::rfnet::*;
use dtwpa::transim::*;
use dtwpa::twpa::*;

fn diplexer() -> (LadderElements<f64>, LadderElements<f64>) {
    let proto = chebyshev_prototype(5, 0.1, Termination::Singly).unwrap();
    let base = FilterSpec {
        n: 5,
        ripple_db: 0.1,
        crossover_hz: 8e9,
        z0: 50.0,
        kind: FilterKind::Lowpass,
        termination: Termination::Singly,
    };
    let lp = synthesize_lowpass(&base, &proto).unwrap();
    let hp_spec = FilterSpec { kind: FilterKind::Highpass, ..base };
    let hp = synthesize_highpass(&hp_spec, &proto).unwrap();
    (lp, hp)
}

#[test]
#[ignore]
fn table_and_crossover() {
    let (lp, hp) = diplexer();
    for e in lp.elements.iter().chain(hp.elements.iter()) {
        println!("{:?} {} {:?} {:.6e}", e.orientation, e.index, e.component, e.value);
    }
    let net = diplexer_netlist(&lp, &hp, 50.0).unwrap();
    let freqs: Vec<f64> = (0..1000).map(|i| 2e9 + i as f64 * 12e9 / 999.0).collect();
    let sweep = nport_sparams(&net, &freqs, &AcOptions::default()).unwrap();
    let fx = crossover_frequency(&sweep, 0, 1, 2).unwrap();
    println!("crossover = {fx}");
    println!("unitarity defect = {:.3e}", sweep.max_unitarity_defect());
    let sx = nport_sparams(&net, &[fx], &AcOptions::default()).unwrap();
    for (i, j, lbl) in [(0, 0, "S11"), (1, 1, "S22"), (2, 2, "S33"), (1, 0, "S21"), (2, 0, "S31")] {
        println!("{lbl} at fx = {:.3} dB", 20.0 * sx.s_at(0, i, j).norm().log10());
    }
}

fn device(n_cells: usize) -> (NonlinearNetlist<f64>, TwpaDesign<f64>) {
    let (lp, hp) = diplexer();
    let dip = diplexer_netlist(&lp, &hp, 50.0).unwrap();
    let mut design = TwpaDesign::default_design();
    design.n_cells = n_cells;
    let line = build_twpa_netlist(&design).unwrap();
    (assemble_device(&line, &dip, &dip).unwrap(), design)
}

#[test]
#[ignore]
fn linear_device_response() {
    let (dev, design) = device(800);
    let lin = dev.linearize();
    println!("nodes={} bw={}", lin.num_nodes, lin.bandwidth());
    let freqs: Vec<f64> = (0..81).map(|i| 4e9 + i as f64 * 0.1e9).collect();
    let sweep = nport_sparams(&lin, &freqs, &AcOptions::default()).unwrap();
    for (fi, f) in freqs.iter().enumerate() {
        let s21 = 20.0 * sweep.s_at(fi, 1, 0).norm().log10();
        let s43 = 20.0 * sweep.s_at(fi, 3, 2).norm().log10();
        let k = dispersion_phase(&design, *f);
        println!("{:.2} GHz: S21={s21:.2} dB S43={s43:.2} dB k={:.4}+{:.4}i", f / 1e9, k.re, k.im);
    }
}

#[test]
#[ignore]
fn kerr_shift() {
    // Bare 200-cell line, single strong tone: transmission phase vs power
    // isolates the Kerr coefficient. Theory: dphi = -k N r^2 / 8 extra
    // phase delay at current ratio r = I_p / I_c.
    let mut design: TwpaDesign<f64> = TwpaDesign::default_design();
    design.n_cells = 200;
    design.rpm = None;
    let net = build_twpa_netlist(&design).unwrap();
    let cfg = SimConfig {
        dt: 0.5e-12,
        settle_time: 10e-9,
        record_time: 10e-9,
        ramp_time: 4e-9,
        ..SimConfig::default_transient()
    };
    let f = 8.0e9;
    let mut ref_phase = 0.0;
    for p in [-100.0, -72.0, -69.0, -66.0] {
        let tone = Tone { freq_hz: f, power_dbm: p, port: 0 };
        let col = transient_sparam_column(&net, tone, &cfg).unwrap();
        let s21 = col[1];
        let ph = s21.arg();
        if p == -100.0 {
            ref_phase = ph;
        }
        let r = (2.0 * dbm_to_watts(p) / 50.0).sqrt() / design.i_c;
        let k = dispersion_phase(&design, f).re;
        println!(
            "P={p} dBm r={r:.3}: |S21|={:.3} dB phase shift={:+.5} rad (theory {:+.5})",
            20.0 * s21.norm().log10(),
            ph - ref_phase,
            -k * design.n_cells as f64 * r * r / 8.0
        );
    }
}

#[test]
#[ignore]
fn mismatch_scan() {
    let design = TwpaDesign::default_design();
    let f_s = 7.0e9;
    for i in 0..17 {
        let f_p = 8.05e9 + i as f64 * 0.05e9;
        let f_i = 2.0 * f_p - f_s;
        let kp = dispersion_phase(&design, f_p);
        let ks = dispersion_phase(&design, f_s);
        let ki = dispersion_phase(&design, f_i);
        println!(
            "fp={:.2} kp={:.4}{:+.4}i ki={:.4}{:+.4}i dk={:+.5}",
            f_p / 1e9,
            kp.re,
            kp.im,
            ki.re,
            ki.im,
            2.0 * kp.re - ks.re - ki.re
        );
    }
}

#[test]
#[ignore]
fn flux_spectrum() {
    // One pumped run; extract the photon flux at every mixing product
    // m f_p + n f_s below 25 GHz, summed over all four ports, to see where
    // the Manley-Rowe deficit goes.
    let (dev, _) = device(800);
    let cfg = SimConfig {
        dt: 1e-12,
        settle_time: 10e-9,
        record_time: 10e-9,
        ramp_time: 4e-9,
        ..SimConfig::default_transient()
    };
    let f_p = 8.5e9;
    let f_s = 7.0e9;
    let p_s = -100.0;
    let drive = DriveConfig {
        tones: vec![
            Tone { freq_hz: f_p, power_dbm: -72.5, port: 2 },
            Tone { freq_hz: f_s, power_dbm: p_s, port: 0 },
        ],
    };
    let res = simulate_transient(&dev, &drive, &cfg).unwrap();
    let h = 6.62607015e-34;
    let flux_in = dbm_to_watts(p_s) / (h * f_s);
    println!("signal input flux = {flux_in:.4e} /s (all fluxes below in input units)");
    for m in -4i32..=4 {
        for n in -4i32..=4 {
            if n == 0 && m <= 0 {
                continue;
            }
            let f = m as f64 * f_p + n as f64 * f_s;
            if f <= 0.0 || f > 25e9 || (m == 1 && n == 0) {
                continue;
            }
            let mut flux = 0.0;
            for (k, p) in dev.linear.ports.iter().enumerate() {
                let v = res.tone(k, f).unwrap();
                flux += v.norm_sqr() / (2.0 * p.z0 * h * f);
            }
            if flux / flux_in > 1e-3 {
                println!(
                    "m={m:+} n={n:+} f={:.2} GHz: flux = {:.3} x input",
                    f / 1e9,
                    flux / flux_in
                );
            }
        }
    }
}

#[test]
#[ignore]
fn band_profile() {
    let (dev, _) = device(800);
    let cfg = SimConfig {
        dt: 1e-12,
        settle_time: 10e-9,
        record_time: 10e-9,
        ramp_time: 4e-9,
        ..SimConfig::default_transient()
    };
    let pump = Tone { freq_hz: 8.5e9, power_dbm: -74.0, port: 2 };
    for i in 0..11 {
        let f_s = 6.0e9 + i as f64 * 0.2e9;
        match pumped_gain_point(&dev, pump, f_s, -100.0, 8e9, &cfg) {
            Ok(g) => println!(
                "fs={:.2} GHz: G={:.2} dB idler={:.1} dBm MR={:.3}",
                f_s / 1e9,
                g.gain_db,
                g.idler_power_dbm,
                g.manley_rowe_residual
            ),
            Err(e) => println!("fs={:.2} GHz: {e}", f_s / 1e9),
        }
    }
}

#[test]
#[ignore]
fn pump_scan() {
    let (dev, _) = device(800);
    let cfg = SimConfig {
        dt: 1e-12,
        settle_time: 10e-9,
        record_time: 10e-9,
        ramp_time: 4e-9,
        ..SimConfig::default_transient()
    };
    let f_s = 7.0e9;
    for f_p in [8.4e9, 8.5e9] {
        for p_p in [-74.5, -74.0, -73.5] {
            let pump = Tone { freq_hz: f_p, power_dbm: p_p, port: 2 };
            match pumped_gain_point(&dev, pump, f_s, -100.0, 8e9, &cfg) {
                Ok(g) => println!(
                    "fp={:.2} GHz Pp={p_p} dBm: G={:.2} dB idler={:.1} dBm MR={:.3}",
                    f_p / 1e9,
                    g.gain_db,
                    g.idler_power_dbm,
                    g.manley_rowe_residual
                ),
                Err(e) => println!("fp={:.2} GHz Pp={p_p} dBm: {e}", f_p / 1e9),
            }
        }
    }
}
