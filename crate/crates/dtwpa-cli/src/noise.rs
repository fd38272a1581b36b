//! `noise-fit`: Eq. (1) chain fit from an (N_in, N_out) sweep and Eq. (3)
//! amplifier/chain decomposition from a gain sweep, with optional
//! Monte-Carlo calibration of the Eq. (1) parameter errors.

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use dtwpa::io::{self, column};
use dtwpa::noisecal::{
    db_to_linear, decompose_twpa_noise, fit_chain_noise, ChainDecomposition, ChainFit,
    ExclusionRule, NoiseSweep,
};
use dtwpa::Real;

use crate::manifest::{ExclusionChoice, NoiseFitManifest};
use crate::Common;

#[derive(Serialize)]
struct McSummary {
    resamples: usize,
    noise_fraction: Real,
    g_tot_mean: Real,
    g_tot_std: Real,
    n_add_mean: Real,
    n_add_std: Real,
    /// Fraction of resamples whose reported 3-sigma interval covers the
    /// baseline fit.
    coverage_3sigma_g: Real,
    coverage_3sigma_n: Real,
}

#[derive(Serialize)]
struct NoiseReport {
    chain_fit: Option<ChainFit<Real>>,
    monte_carlo: Option<McSummary>,
    decomposition: Option<ChainDecomposition<Real>>,
}

fn normal(rng: &mut ChaCha8Rng) -> Real {
    let u1: Real = rng.gen_range(Real::MIN_POSITIVE..1.0);
    let u2: Real = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn monte_carlo(
    samples: &[(Real, Real)],
    base: &ChainFit<Real>,
    resamples: usize,
    noise_fraction: Real,
    seed: u64,
) -> anyhow::Result<McSummary> {
    anyhow::ensure!(resamples >= 2, "monte_carlo.resamples must be >= 2");
    anyhow::ensure!(
        noise_fraction > 0.0 && noise_fraction < 1.0,
        "monte_carlo.noise_fraction must be in (0, 1)"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gs = Vec::with_capacity(resamples);
    let mut ns = Vec::with_capacity(resamples);
    let mut cover_g = 0usize;
    let mut cover_n = 0usize;
    for _ in 0..resamples {
        let jittered: Vec<(Real, Real)> = samples
            .iter()
            .map(|&(x, y)| (x, y * (1.0 + noise_fraction * normal(&mut rng))))
            .collect();
        let fit = fit_chain_noise(&NoiseSweep { freq_hz: 0.0, samples: jittered })?;
        if (fit.g_tot - base.g_tot).abs() <= 3.0 * fit.g_tot_err {
            cover_g += 1;
        }
        if (fit.n_add - base.n_add).abs() <= 3.0 * fit.n_add_err {
            cover_n += 1;
        }
        gs.push(fit.g_tot);
        ns.push(fit.n_add);
    }
    let mean = |v: &[Real]| v.iter().sum::<Real>() / v.len() as Real;
    let std = |v: &[Real], m: Real| {
        (v.iter().map(|x| (x - m) * (x - m)).sum::<Real>() / (v.len() - 1) as Real).sqrt()
    };
    let (gm, nm) = (mean(&gs), mean(&ns));
    Ok(McSummary {
        resamples,
        noise_fraction,
        g_tot_mean: gm,
        g_tot_std: std(&gs, gm),
        n_add_mean: nm,
        n_add_std: std(&ns, nm),
        coverage_3sigma_g: cover_g as Real / resamples as Real,
        coverage_3sigma_n: cover_n as Real / resamples as Real,
    })
}

pub fn run(m: NoiseFitManifest, c: &Common) -> anyhow::Result<Vec<PathBuf>> {
    anyhow::ensure!(
        m.chain_csv.is_some() || m.decomposition_csv.is_some(),
        "manifest must reference chain_csv and/or decomposition_csv"
    );
    let mut written = Vec::new();
    let mut report = NoiseReport { chain_fit: None, monte_carlo: None, decomposition: None };

    if let Some(path) = &m.chain_csv {
        let (header, rows) = io::read_csv(path)?;
        let ci = column(&header, "n_in_quanta")?;
        let co = column(&header, "n_out")?;
        let cf = column(&header, "f_hz")?;
        anyhow::ensure!(!rows.is_empty(), "chain CSV has no data rows");
        let samples: Vec<(Real, Real)> = rows.iter().map(|r| (r[ci], r[co])).collect();
        let fit = fit_chain_noise(&NoiseSweep { freq_hz: rows[0][cf], samples: samples.clone() })?;
        if let Some(mc) = &m.monte_carlo {
            report.monte_carlo =
                Some(monte_carlo(&samples, &fit, mc.resamples, mc.noise_fraction, c.seed)?);
        }
        report.chain_fit = Some(fit);
    }

    if let Some(path) = &m.decomposition_csv {
        let (header, rows) = io::read_csv(path)?;
        let cg = column(&header, "g_twpa_db")?;
        let cn = column(&header, "n_add_quanta")?;
        let ce = column(&header, "n_add_err").ok();
        let points: Vec<(Real, Real)> =
            rows.iter().map(|r| (db_to_linear(r[cg]), r[cn])).collect();
        let sigmas: Option<Vec<Real>> = ce.map(|i| rows.iter().map(|r| r[i]).collect());
        let rule = match m.exclusion {
            ExclusionChoice::None => ExclusionRule::None,
            ExclusionChoice::AboveMinimum => ExclusionRule::AboveMinimum,
        };
        let dec = decompose_twpa_noise(&points, sigmas.as_deref(), &rule)?;
        let mask_rows: Vec<Vec<Real>> = rows
            .iter()
            .zip(&dec.excluded)
            .map(|(r, &ex)| vec![r[cg], r[cn], if ex { 1.0 } else { 0.0 }])
            .collect();
        let mask_path = c.out.join("decomposition_mask.csv");
        io::write_csv(&mask_path, &["g_twpa_db", "n_add_quanta", "excluded"], &mask_rows)?;
        written.push(mask_path);
        report.decomposition = Some(dec);
    }

    if c.verbose {
        if let Some(f) = &report.chain_fit {
            eprintln!("G_tot = {:.4e} +/- {:.1e}, N_add = {:.4} +/- {:.4}",
                f.g_tot, f.g_tot_err, f.n_add, f.n_add_err);
        }
        if let Some(d) = &report.decomposition {
            eprintln!("N_TWPA = {:.3} +/- {:.3}", d.n_twpa, d.n_twpa_err);
        }
    }
    let path = c.out.join("noise_fit.json");
    io::write_json(&path, &report)?;
    written.push(path);
    Ok(written)
}
