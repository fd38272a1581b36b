//! Property-test invariant suites: passivity/unitarity, reciprocity,
//! frequency scaling, noise-kernel structure, fit reorder invariance, and
//! solver determinism.

use proptest::prelude::*;

use dtwpa::filtsynth::{
    chebyshev_prototype, diplexer_netlist, synthesize_highpass, synthesize_lowpass, FilterKind,
    FilterSpec, Termination,
};
use dtwpa::noisecal::{fit_chain_noise, sntj_input_noise, NoiseSweep, SntjParams};
use dtwpa::rfnet::{crossover_frequency, nport_sparams, AcOptions, ElementKind, Netlist, Node};
use dtwpa::transim::{simulate_transient, DriveConfig, SimConfig, Tone};
use dtwpa::twpa::{build_twpa_netlist, TwpaDesign};

/// Random lossless LC ladder: alternating series-L / shunt-C with values in
/// RF-plausible ranges, two 50-ohm ports.
fn random_lc_ladder(ls: &[f64], cs: &[f64]) -> Netlist<f64> {
    let mut net = Netlist::new();
    let mut cur = net.add_node("in");
    let first = cur;
    for (i, (&l, &c)) in ls.iter().zip(cs).enumerate() {
        let next = net.add_node(format!("n{i}"));
        net.add_element(ElementKind::Inductor, l, Node::N(cur), Node::N(next));
        net.add_element(ElementKind::Capacitor, c, Node::N(next), Node::Ground);
        cur = next;
    }
    net.add_port(first, 50.0);
    net.add_port(cur, 50.0);
    net
}

fn nh() -> impl Strategy<Value = f64> {
    // 0.05 .. 5 nH
    0.05e-9..5e-9f64
}

fn pf() -> impl Strategy<Value = f64> {
    // 0.01 .. 2 pF
    0.01e-12..2e-12f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Lossless networks scatter unitarily: ||S^H S - I|| below 1e-9 on every
    /// evaluated frequency.
    #[test]
    fn lossless_ladder_is_unitary(
        ls in proptest::collection::vec(nh(), 1..6),
        cs in proptest::collection::vec(pf(), 6),
        f0 in 1e9..4e9f64,
    ) {
        let n = ls.len();
        let net = random_lc_ladder(&ls, &cs[..n]);
        let freqs: Vec<f64> = (0..24).map(|i| f0 + i as f64 * 0.5e9).collect();
        let sweep = nport_sparams(&net, &freqs, &AcOptions::default()).unwrap();
        prop_assert!(sweep.max_unitarity_defect() <= 1e-9,
            "unitarity defect {}", sweep.max_unitarity_defect());
    }

    /// All RLC networks are reciprocal, lossy or not: S = S^T.
    #[test]
    fn rlc_network_is_reciprocal(
        ls in proptest::collection::vec(nh(), 2..5),
        cs in proptest::collection::vec(pf(), 5),
        rs in proptest::collection::vec(1.0..500.0f64, 5),
    ) {
        let n = ls.len();
        let mut net = random_lc_ladder(&ls, &cs[..n]);
        // Sprinkle resistors across the existing nodes to make it lossy.
        for (i, &r) in rs[..n].iter().enumerate() {
            net.add_element(ElementKind::Resistor, r, Node::N(i), Node::Ground);
        }
        let freqs: Vec<f64> = (1..20).map(|i| i as f64 * 0.7e9).collect();
        let sweep = nport_sparams(&net, &freqs, &AcOptions::default()).unwrap();
        prop_assert!(sweep.max_reciprocity_defect() <= 1e-12,
            "reciprocity defect {}", sweep.max_reciprocity_defect());
    }

    /// Scaling every L and C by 1/a and the frequency grid by a leaves the
    /// scattering matrix unchanged: the network only sees w*L and w*C.
    #[test]
    fn impedance_frequency_scaling_invariance(
        ls in proptest::collection::vec(nh(), 2..5),
        cs in proptest::collection::vec(pf(), 5),
        alpha in 0.25..8.0f64,
    ) {
        let n = ls.len();
        let base = random_lc_ladder(&ls, &cs[..n]);
        let scaled_ls: Vec<f64> = ls.iter().map(|l| l / alpha).collect();
        let scaled_cs: Vec<f64> = cs[..n].iter().map(|c| c / alpha).collect();
        let scaled = random_lc_ladder(&scaled_ls, &scaled_cs);
        let freqs: Vec<f64> = (1..16).map(|i| i as f64 * 0.8e9).collect();
        let freqs_scaled: Vec<f64> = freqs.iter().map(|f| f * alpha).collect();
        let a = nport_sparams(&base, &freqs, &AcOptions::default()).unwrap();
        let b = nport_sparams(&scaled, &freqs_scaled, &AcOptions::default()).unwrap();
        for fi in 0..freqs.len() {
            for p in 0..2 {
                for q in 0..2 {
                    let d = (a.s_at(fi, p, q) - b.s_at(fi, p, q)).norm();
                    prop_assert!(d < 1e-9, "S[{p}][{q}] differs by {d}");
                }
            }
        }
    }

    /// The synthesized diplexer's power crossover lands on the requested
    /// crossover frequency for any order and ripple, which is exactly what
    /// the k_n cutoff scaling is for.
    #[test]
    fn crossover_tracks_spec_across_order_and_ripple(
        n in 1usize..8,
        ripple_db in 0.02..1.0f64,
        fx in 2e9..20e9f64,
    ) {
        let proto = chebyshev_prototype(n, ripple_db, Termination::Singly).unwrap();
        let spec = FilterSpec {
            n,
            ripple_db,
            crossover_hz: fx,
            z0: 50.0,
            kind: FilterKind::Lowpass,
            termination: Termination::Singly,
        };
        let lp = synthesize_lowpass(&spec, &proto).unwrap();
        let hp_spec = FilterSpec { kind: FilterKind::Highpass, ..spec };
        let hp = synthesize_highpass(&hp_spec, &proto).unwrap();
        let net = diplexer_netlist(&lp, &hp, 50.0).unwrap();
        let freqs: Vec<f64> = (0..401)
            .map(|i| fx * (0.5 + i as f64 * 1.0 / 400.0))
            .collect();
        let sweep = nport_sparams(&net, &freqs, &AcOptions::default()).unwrap();
        let found = crossover_frequency(&sweep, 0, 1, 2).unwrap();
        prop_assert!((found - fx).abs() / fx < 0.01,
            "crossover {found} vs requested {fx}");
        prop_assert!(sweep.max_unitarity_defect() <= 1e-9);
    }

    /// Shot-noise junction input noise is even in bias voltage, monotone in
    /// |V|, and never below the half-quantum vacuum floor.
    #[test]
    fn sntj_noise_structure(
        t in 0.001..0.5f64,
        f in 1e9..12e9f64,
        v in 0.0..500e-6f64,
    ) {
        let params = SntjParams { temperature_k: t, v_bias: vec![], freq_hz: f };
        let at = |v_bias: f64| sntj_input_noise(&params, v_bias);
        let n = at(v);
        prop_assert!((n - at(-v)).abs() <= 1e-12 * n.max(1.0), "not even in V");
        prop_assert!(n >= 0.5 - 1e-12, "below vacuum floor: {n}");
        // Monotone non-decreasing in |V|.
        let dv = 5e-6;
        prop_assert!(at(v + dv) >= n - 1e-12 * n.max(1.0), "not monotone at {v}");
    }

    /// The linear chain-noise fit is invariant under reordering of the
    /// (N_in, N_out) sample pairs.
    #[test]
    fn chain_fit_reorder_invariance(
        pts in proptest::collection::vec((0.5..30.0f64, 0.0..1e-3f64), 4..24),
        g in 10.0..5000.0f64,
        n_add in 0.6..20.0f64,
        seed in 0u64..1000,
    ) {
        let samples: Vec<(f64, f64)> = pts
            .iter()
            .map(|&(n_in, jitter)| (n_in, g * (n_in + n_add) * (1.0 + jitter)))
            .collect();
        let fit = fit_chain_noise(&NoiseSweep { freq_hz: 7e9, samples: samples.clone() }).unwrap();
        // Deterministic pseudo-shuffle from the seed.
        let mut shuffled = samples.clone();
        let mut s = seed.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
        for i in (1..shuffled.len()).rev() {
            s = s.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
            shuffled.swap(i, (s >> 33) as usize % (i + 1));
        }
        let fit2 = fit_chain_noise(&NoiseSweep { freq_hz: 7e9, samples: shuffled }).unwrap();
        prop_assert!((fit.g_tot - fit2.g_tot).abs() <= 1e-9 * fit.g_tot.abs());
        prop_assert!((fit.n_add - fit2.n_add).abs() <= 1e-9 * fit.n_add.abs().max(1.0));
    }
}

/// Transient solves are bit-for-bit deterministic run to run, including the
/// Newton iteration count on a driven Josephson line.
#[test]
fn transient_rerun_is_bit_identical() {
    let mut design: TwpaDesign<f64> = TwpaDesign::default_design();
    design.n_cells = 8;
    design.rpm = None;
    let net = build_twpa_netlist(&design).unwrap();
    let drive = DriveConfig {
        tones: vec![Tone { freq_hz: 5e9, power_dbm: -80.0, port: 0 }],
    };
    let cfg = SimConfig {
        dt: 1e-12,
        settle_time: 2e-9,
        record_time: 2e-9,
        ramp_time: 0.5e-9,
        ..SimConfig::default_transient()
    };
    let a = simulate_transient(&net, &drive, &cfg).unwrap();
    let b = simulate_transient(&net, &drive, &cfg).unwrap();
    assert_eq!(a.newton_iters_total, b.newton_iters_total);
    assert_eq!(a.max_phase_seen.to_bits(), b.max_phase_seen.to_bits());
    for (ta, tb) in a.port_voltages.iter().zip(&b.port_voltages) {
        assert_eq!(ta.len(), tb.len());
        for (x, y) in ta.iter().zip(tb) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }
}
