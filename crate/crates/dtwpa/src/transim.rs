//! Fixed-step transient simulation of the junction-loaded network.
//!
//! Trapezoidal companion models turn capacitors and inductors into
//! conductance + history-current stamps; each Josephson junction keeps its
//! phase as state, phi advancing by (pi dt / Phi0)(v_new + v_old) per step,
//! and contributes I_c sin(phi) through a per-step Newton iteration. Ports
//! are terminated in their reference impedance, with drive tones applied as
//! Norton equivalents of a matched Thevenin source, so tone amplitudes read
//! straight off the port nodes.
//!
//! Steady-state amplitudes come from a rectangular-window DFT; every drive
//! tone must be commensurate with the record window so the extraction is
//! leakage-free.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::consts::{flux_quantum, planck};
use crate::linalg::BandMatrix;
use crate::rfnet::ElementKind;
use crate::twpa::{idler_frequency, NonlinearNetlist};
use crate::{Error, Result, Scalar};

/// One sinusoidal drive: `power_dbm` is the available power of a matched
/// source on `port`, i.e. the incident-wave power.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Tone<T> {
    pub freq_hz: T,
    pub power_dbm: T,
    pub port: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DriveConfig<T> {
    pub tones: Vec<Tone<T>>,
}

/// Time-stepping controls.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SimConfig<T> {
    pub dt: T,
    /// Discarded start-up interval; includes the source ramp.
    pub settle_time: T,
    /// Recorded interval used for tone extraction.
    pub record_time: T,
    /// Raised-cosine source turn-on, must fit inside the settle interval.
    pub ramp_time: T,
    /// Relative Newton displacement tolerance.
    pub newton_tol: T,
    pub max_newton_iters: usize,
    /// Junction phase magnitude treated as a runaway solution, rad.
    pub max_phase: T,
}

impl<T: Scalar> SimConfig<T> {
    pub fn default_transient() -> Self {
        Self {
            dt: T::of(1e-12),
            settle_time: T::of(20e-9),
            record_time: T::of(20e-9),
            ramp_time: T::of(5e-9),
            newton_tol: T::of(1e-9),
            max_newton_iters: 50,
            max_phase: T::of(50.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let pos = [self.dt, self.settle_time, self.record_time, self.newton_tol, self.max_phase];
        if pos.iter().any(|x| !(*x > T::zero()) || !x.is_finite()) {
            return Err(Error::InvalidSpec(
                "transient config fields must be positive and finite".into(),
            ));
        }
        if self.ramp_time < T::zero() || self.ramp_time > self.settle_time {
            return Err(Error::InvalidSpec(
                "ramp_time must lie within the settle interval".into(),
            ));
        }
        if self.max_newton_iters == 0 {
            return Err(Error::InvalidSpec("max_newton_iters must be >= 1".into()));
        }
        Ok(())
    }
}

/// Recorded port-node voltage traces.
#[derive(Debug, Clone)]
pub struct TransientResult<T> {
    pub dt: T,
    /// One trace per port, record interval only.
    pub port_voltages: Vec<Vec<T>>,
    pub max_phase_seen: T,
    pub newton_iters_total: u64,
}

impl<T: Scalar> TransientResult<T> {
    /// Complex amplitude of a commensurate tone on one recorded port.
    pub fn tone(&self, port: usize, freq_hz: T) -> Result<Complex<T>> {
        extract_tone(&self.port_voltages[port], self.dt, freq_hz)
    }
}

/// Rectangular-window DFT amplitude, A = (2/N) sum x_k exp(-j w t_k).
/// Errors unless `freq_hz` fits a whole number of cycles in the window.
pub fn extract_tone<T: Scalar>(samples: &[T], dt: T, freq_hz: T) -> Result<Complex<T>> {
    if samples.is_empty() {
        return Err(Error::InsufficientData("empty sample record".into()));
    }
    let n = T::from_usize_(samples.len());
    let window = n * dt;
    let cycles = freq_hz * window;
    if (cycles - cycles.round()).abs() > T::of(1e-6) * cycles.max(T::one()) {
        return Err(Error::NonCommensurate {
            freq_hz: freq_hz.as_f64(),
            window_s: window.as_f64(),
        });
    }
    let w = T::TAU() * freq_hz * dt;
    let step = Complex::new(w.cos(), -w.sin());
    let mut rot = Complex::new(T::one(), T::zero());
    let mut acc = Complex::new(T::zero(), T::zero());
    for &x in samples {
        acc = acc + rot * Complex::new(x, T::zero());
        rot = rot * step;
    }
    Ok(acc * Complex::new(T::of(2.0) / n, T::zero()))
}

pub fn dbm_to_watts<T: Scalar>(dbm: T) -> T {
    T::of(1e-3) * T::of(10.0).powf(dbm / T::of(10.0))
}

pub fn watts_to_dbm<T: Scalar>(w: T) -> T {
    T::of(10.0) * (w / T::of(1e-3)).log10()
}

struct Branch<T> {
    ia: Option<usize>,
    ib: Option<usize>,
    /// Companion conductance (constant over the run).
    g: T,
    /// Capacitor flag: history update differs between C and L.
    is_cap: bool,
    /// Branch current state, a -> b.
    current: T,
}

#[inline]
fn v_ab<T: Scalar>(v: &[T], ia: Option<usize>, ib: Option<usize>) -> T {
    let va = ia.map_or(T::zero(), |i| v[i]);
    let vb = ib.map_or(T::zero(), |i| v[i]);
    va - vb
}

#[inline]
fn add_pair<T: Scalar>(rhs: &mut [T], ia: Option<usize>, ib: Option<usize>, i: T) {
    if let Some(k) = ia {
        rhs[k] = rhs[k] - i;
    }
    if let Some(k) = ib {
        rhs[k] = rhs[k] + i;
    }
}

fn stamp_g<T: Scalar>(m: &mut BandMatrix<T>, ia: Option<usize>, ib: Option<usize>, g: T) {
    if let Some(i) = ia {
        m.add_at(i, i, g);
    }
    if let Some(j) = ib {
        m.add_at(j, j, g);
    }
    if let (Some(i), Some(j)) = (ia, ib) {
        m.add_at(i, j, -g);
        m.add_at(j, i, -g);
    }
}

/// Run the transient and return the recorded port-voltage traces.
pub fn simulate_transient<T: Scalar>(
    net: &NonlinearNetlist<T>,
    drive: &DriveConfig<T>,
    cfg: &SimConfig<T>,
) -> Result<TransientResult<T>> {
    cfg.validate()?;
    // Junction branches count toward connectivity, so validate the
    // linearized network.
    net.linearize().validate()?;
    for t in &drive.tones {
        if t.port >= net.linear.ports.len() {
            return Err(Error::InvalidSpec(format!("drive port {} out of range", t.port)));
        }
        if !(t.freq_hz > T::zero()) {
            return Err(Error::InvalidSpec("drive frequency must be positive".into()));
        }
    }
    let n = net.linear.num_nodes;
    let dt = cfg.dt;
    let half_dt = T::of(0.5) * dt;
    let phase_k = T::PI() * dt / flux_quantum::<T>();

    // Bandwidth covers linear elements, junctions and nothing else.
    let mut bw = net.linear.bandwidth();
    for j in &net.junctions {
        if let (Some(a), Some(b)) = (j.a.index(), j.b.index()) {
            bw = bw.max(a.abs_diff(b));
        }
    }

    // Constant conductance part: resistors, companion conductances, port
    // terminations.
    let mut base = BandMatrix::zeros(n, bw, bw);
    let mut branches: Vec<Branch<T>> = Vec::new();
    for e in &net.linear.elements {
        let (ia, ib) = (e.a.index(), e.b.index());
        match e.kind {
            ElementKind::Resistor => stamp_g(&mut base, ia, ib, e.value.recip()),
            ElementKind::Capacitor => {
                let g = T::of(2.0) * e.value / dt;
                stamp_g(&mut base, ia, ib, g);
                branches.push(Branch { ia, ib, g, is_cap: true, current: T::zero() });
            }
            ElementKind::Inductor => {
                let g = half_dt / e.value;
                stamp_g(&mut base, ia, ib, g);
                branches.push(Branch { ia, ib, g, is_cap: false, current: T::zero() });
            }
        }
    }
    for p in &net.linear.ports {
        base.add_at(p.node, p.node, p.z0.recip());
    }

    // Thevenin amplitude sqrt(8 Z0 P_av) behind Z0 becomes a Norton current
    // of amplitude V_s / Z0 at the port node.
    struct Src<T> {
        node: usize,
        i_amp: T,
        w: T,
    }
    let sources: Vec<Src<T>> = drive
        .tones
        .iter()
        .map(|t| {
            let p = &net.linear.ports[t.port];
            let v_s = (T::of(8.0) * p.z0 * dbm_to_watts(t.power_dbm)).sqrt();
            Src { node: p.node, i_amp: v_s / p.z0, w: T::TAU() * t.freq_hz }
        })
        .collect();

    let n_settle = (cfg.settle_time / dt).round().as_f64() as usize;
    let n_record = (cfg.record_time / dt).round().as_f64() as usize;
    if n_record == 0 {
        return Err(Error::InvalidSpec("record window shorter than one step".into()));
    }

    let junc: Vec<(Option<usize>, Option<usize>, T)> = net
        .junctions
        .iter()
        .map(|j| (j.a.index(), j.b.index(), j.i_c))
        .collect();
    let mut phases = vec![T::zero(); junc.len()];

    // Without junctions the matrix never changes; factor it once.
    let fixed_lu = if junc.is_empty() {
        Some(base.clone().lu_factor().map_err(|_| Error::SingularAtFrequency { freq_hz: 0.0 })?)
    } else {
        None
    };

    let mut v = vec![T::zero(); n];
    let mut record: Vec<Vec<T>> =
        vec![Vec::with_capacity(n_record); net.linear.ports.len()];
    let mut hist = vec![T::zero(); n];
    let mut guess = vec![T::zero(); n];
    let mut max_phase_seen = T::zero();
    let mut newton_iters_total = 0u64;

    for step in 0..n_settle + n_record {
        let t_new = T::from_usize_(step + 1) * dt;

        // History currents at the new time from the committed state.
        for h in hist.iter_mut() {
            *h = T::zero();
        }
        for b in &branches {
            // Companion source I_eq flowing a -> b: cap -(G v_n + i_n),
            // inductor +(i_n + G v_n). `hist` holds its KCL contribution
            // with the same orientation convention as the Newton residual,
            // and the final right-hand side is -hist.
            let vab = v_ab(&v, b.ia, b.ib);
            let i_eq = if b.is_cap {
                -(b.g * vab + b.current)
            } else {
                b.current + b.g * vab
            };
            add_pair(&mut hist, b.ia, b.ib, -i_eq);
        }
        let env = if t_new < cfg.ramp_time {
            T::of(0.5) * (T::one() - (T::PI() * t_new / cfg.ramp_time).cos())
        } else {
            T::one()
        };
        for s in &sources {
            // Norton source current into the node; rhs below is -hist.
            let i = env * s.i_amp * (s.w * t_new).sin();
            hist[s.node] = hist[s.node] - i;
        }

        guess.copy_from_slice(&v);
        let mut converged = false;
        let mut iters = 0usize;
        loop {
            iters += 1;
            // Assemble RHS = -hist + junction linearization terms.
            let mut rhs: Vec<T> = hist.iter().map(|&h| -h).collect();
            let lu;
            let solver = if let Some(f) = &fixed_lu {
                f
            } else {
                let mut m = base.clone();
                for ((ia, ib, i_c), &phi0) in junc.iter().zip(phases.iter()) {
                    let vab = v_ab(&guess, *ia, *ib);
                    let vab_old = v_ab(&v, *ia, *ib);
                    let phi = phi0 + phase_k * (vab + vab_old);
                    let g = *i_c * phi.cos() * phase_k;
                    stamp_g(&mut m, *ia, *ib, g);
                    // Residual current beyond the linearization point.
                    let i_res = *i_c * phi.sin() - g * vab;
                    add_pair(&mut rhs, *ia, *ib, i_res);
                }
                lu = m.lu_factor().map_err(|_| Error::NewtonDiverged {
                    step,
                    residual: f64::INFINITY,
                })?;
                &lu
            };
            solver.solve(&mut rhs);
            let mut dv_max = T::zero();
            let mut v_max = T::zero();
            for (g, &vn) in guess.iter_mut().zip(rhs.iter()) {
                dv_max = dv_max.max((vn - *g).abs());
                v_max = v_max.max(vn.abs());
                *g = vn;
            }
            if junc.is_empty() {
                converged = true;
            } else if dv_max <= cfg.newton_tol * (v_max + T::of(1e-9)) {
                converged = true;
            }
            if converged {
                break;
            }
            if iters >= cfg.max_newton_iters {
                return Err(Error::NewtonDiverged {
                    step,
                    residual: dv_max.as_f64(),
                });
            }
        }
        newton_iters_total += iters as u64;

        // Commit: phases, branch currents, node voltages.
        for ((ia, ib, _), phi) in junc.iter().zip(phases.iter_mut()) {
            let vab = v_ab(&guess, *ia, *ib);
            let vab_old = v_ab(&v, *ia, *ib);
            *phi = *phi + phase_k * (vab + vab_old);
            max_phase_seen = max_phase_seen.max(phi.abs());
        }
        if max_phase_seen > cfg.max_phase {
            return Err(Error::JunctionRunaway {
                step,
                rate: (max_phase_seen / t_new).as_f64(),
            });
        }
        for b in branches.iter_mut() {
            let vab_new = v_ab(&guess, b.ia, b.ib);
            let vab_old = v_ab(&v, b.ia, b.ib);
            b.current = if b.is_cap {
                b.g * (vab_new - vab_old) - b.current
            } else {
                b.current + b.g * (vab_new + vab_old)
            };
        }
        v.copy_from_slice(&guess);
        if step >= n_settle {
            for (trace, p) in record.iter_mut().zip(net.linear.ports.iter()) {
                trace.push(v[p.node]);
            }
        }
    }

    Ok(TransientResult {
        dt,
        port_voltages: record,
        max_phase_seen,
        newton_iters_total,
    })
}

/// Complex S-parameter column extracted from a single-tone transient run:
/// S_kj for all k with port j driven at `tone`.
pub fn transient_sparam_column<T: Scalar>(
    net: &NonlinearNetlist<T>,
    tone: Tone<T>,
    cfg: &SimConfig<T>,
) -> Result<Vec<Complex<T>>> {
    let res = simulate_transient(net, &DriveConfig { tones: vec![tone] }, cfg)?;
    let pj = &net.linear.ports[tone.port];
    let v_s = (T::of(8.0) * pj.z0 * dbm_to_watts(tone.power_dbm)).sqrt();
    // Incident phasor of V_s sin(w t) under the extraction convention.
    let a_inc = Complex::new(T::zero(), -T::of(0.5) * v_s);
    let mut col = Vec::with_capacity(net.linear.ports.len());
    for (k, pk) in net.linear.ports.iter().enumerate() {
        let vk = res.tone(k, tone.freq_hz)?;
        let mut s = vk / a_inc * Complex::new((pj.z0 / pk.z0).sqrt(), T::zero());
        if k == tone.port {
            s = s - Complex::new(T::one(), T::zero());
        }
        col.push(s);
    }
    Ok(col)
}

/// One point of a pumped gain profile.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GainPoint<T> {
    pub f_signal_hz: T,
    pub f_idler_hz: T,
    pub gain_db: T,
    pub idler_power_dbm: T,
    /// |idler flux - signal flux growth| / max flux; small when photon
    /// bookkeeping closes.
    pub manley_rowe_residual: T,
}

fn band_ports<T: Scalar>(f: T, crossover_hz: T) -> (usize, usize) {
    if f < crossover_hz {
        (0, 1)
    } else {
        (2, 3)
    }
}

/// Pumped response at one signal frequency on the assembled four-port device
/// (ports: 0 low in, 1 low out, 2 high in, 3 high out).
pub fn pumped_gain_point<T: Scalar>(
    device: &NonlinearNetlist<T>,
    pump: Tone<T>,
    f_signal: T,
    signal_power_dbm: T,
    crossover_hz: T,
    cfg: &SimConfig<T>,
) -> Result<GainPoint<T>> {
    let f_idler = idler_frequency(pump.freq_hz, f_signal)?;
    let (sig_in, sig_out) = band_ports(f_signal, crossover_hz);
    let (_, idl_out) = band_ports(f_idler, crossover_hz);
    let drive = DriveConfig {
        tones: vec![pump, Tone { freq_hz: f_signal, power_dbm: signal_power_dbm, port: sig_in }],
    };
    let res = simulate_transient(device, &drive, cfg)?;
    let z_out = device.linear.ports[sig_out].z0;
    let z_idl = device.linear.ports[idl_out].z0;
    let p_sig_out = res.tone(sig_out, f_signal)?.norm_sqr() / (T::of(2.0) * z_out);
    let p_idl_out = res.tone(idl_out, f_idler)?.norm_sqr() / (T::of(2.0) * z_idl);
    let p_in = dbm_to_watts(signal_power_dbm);
    let gain = p_sig_out / p_in;
    if !gain.is_finite() {
        return Err(Error::UnphysicalGain(gain.as_f64()));
    }
    // Photon bookkeeping over every port: the diplexers reflect a few dB of
    // idler back and forth, so per-pair flux conservation only closes when
    // the outgoing wave at all four ports is summed at each frequency. At
    // the driven port the outgoing wave is the node voltage minus the
    // incident phasor of V_s sin(w t).
    let h = planck::<T>();
    let z_sig_in = device.linear.ports[sig_in].z0;
    let v_s = (T::of(8.0) * z_sig_in * p_in).sqrt();
    let a_inc = Complex::new(T::zero(), -T::of(0.5) * v_s);
    let mut flux_s_total = T::zero();
    let mut flux_i_total = T::zero();
    for (k, pk) in device.linear.ports.iter().enumerate() {
        let mut b_s = res.tone(k, f_signal)?;
        if k == sig_in {
            b_s = b_s - a_inc;
        }
        flux_s_total = flux_s_total + b_s.norm_sqr() / (T::of(2.0) * pk.z0 * h * f_signal);
        let b_i = res.tone(k, f_idler)?;
        flux_i_total = flux_i_total + b_i.norm_sqr() / (T::of(2.0) * pk.z0 * h * f_idler);
    }
    let flux_in = p_in / (h * f_signal);
    let mr = (flux_i_total - (flux_s_total - flux_in)).abs() / flux_s_total.max(flux_i_total);
    Ok(GainPoint {
        f_signal_hz: f_signal,
        f_idler_hz: f_idler,
        gain_db: T::of(10.0) * gain.log10(),
        idler_power_dbm: watts_to_dbm(p_idl_out),
        manley_rowe_residual: mr,
    })
}

/// Gain profile over a signal-frequency grid, one transient per point, in
/// parallel.
pub fn pumped_gain_profile<T: Scalar>(
    device: &NonlinearNetlist<T>,
    pump: Tone<T>,
    signal_freqs: &[T],
    signal_power_dbm: T,
    crossover_hz: T,
    cfg: &SimConfig<T>,
) -> Result<Vec<GainPoint<T>>> {
    signal_freqs
        .par_iter()
        .map(|&f| pumped_gain_point(device, pump, f, signal_power_dbm, crossover_hz, cfg))
        .collect()
}

/// Gain versus signal power at a fixed signal frequency.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompressionResult<T> {
    pub f_signal_hz: T,
    pub powers_dbm: Vec<T>,
    pub gain_db: Vec<T>,
    pub small_signal_gain_db: T,
    /// Input power where gain is 1 dB below small-signal, if reached.
    pub p_1db_dbm: Option<T>,
}

/// First crossing of (reference - 1 dB), linearly interpolated in dBm. The
/// reference is the first (smallest-power) gain.
pub fn find_p1db<T: Scalar>(powers_dbm: &[T], gains_db: &[T]) -> Option<T> {
    let target = *gains_db.first()? - T::one();
    for i in 1..gains_db.len() {
        if gains_db[i] <= target {
            let (g0, g1) = (gains_db[i - 1], gains_db[i]);
            let t = (g0 - target) / (g0 - g1);
            return Some(powers_dbm[i - 1] + t * (powers_dbm[i] - powers_dbm[i - 1]));
        }
    }
    None
}

pub fn compression_sweep<T: Scalar>(
    device: &NonlinearNetlist<T>,
    pump: Tone<T>,
    f_signal: T,
    powers_dbm: &[T],
    crossover_hz: T,
    cfg: &SimConfig<T>,
) -> Result<CompressionResult<T>> {
    if powers_dbm.len() < 2 {
        return Err(Error::InsufficientData(
            "compression sweep needs at least two power points".into(),
        ));
    }
    let gains: Result<Vec<T>> = powers_dbm
        .par_iter()
        .map(|&p| {
            pumped_gain_point(device, pump, f_signal, p, crossover_hz, cfg).map(|g| g.gain_db)
        })
        .collect();
    let gain_db = gains?;
    Ok(CompressionResult {
        f_signal_hz: f_signal,
        powers_dbm: powers_dbm.to_vec(),
        small_signal_gain_db: gain_db[0],
        p_1db_dbm: find_p1db(powers_dbm, &gain_db),
        gain_db,
    })
}
