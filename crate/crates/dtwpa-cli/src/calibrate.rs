//! `calibrate`: Eq. (6) input-line attenuation over frequency and the
//! pump-power-at-device report.

use std::path::PathBuf;

use serde::Serialize;

use dtwpa::io::{self, column};
use dtwpa::noisecal::{calibrate_attenuation, linear_to_db, power_at_device};
use dtwpa::Real;

use crate::manifest::CalibrateManifest;
use crate::Common;

#[derive(Serialize)]
struct PumpReport {
    source_dbm: Real,
    attenuation_db: Real,
    at_device_dbm: Real,
}

#[derive(Serialize)]
struct CalSummary {
    points: Option<usize>,
    inconsistent_points: Option<usize>,
    mean_attenuation_db: Option<Real>,
    pump: Option<PumpReport>,
    warnings: Vec<String>,
}

pub fn run(m: CalibrateManifest, c: &Common) -> anyhow::Result<Vec<PathBuf>> {
    anyhow::ensure!(
        m.table_csv.is_some() || m.pump.is_some(),
        "manifest must reference table_csv and/or pump"
    );
    let mut written = Vec::new();
    let mut summary = CalSummary {
        points: None,
        inconsistent_points: None,
        mean_attenuation_db: None,
        pump: None,
        warnings: Vec::new(),
    };

    if let Some(path) = &m.table_csv {
        let (header, rows) = io::read_csv(path)?;
        let take = |name: &str| -> anyhow::Result<Vec<Real>> {
            let i = column(&header, name)?;
            Ok(rows.iter().map(|r| r[i]).collect())
        };
        let freqs = take("f_hz")?;
        let cal = calibrate_attenuation(
            &freqs,
            &take("p_vna_w")?,
            &take("p_out_w")?,
            &take("s_in")?,
            &take("s_out")?,
        )?;
        let out_rows: Vec<Vec<Real>> = (0..cal.a.len())
            .map(|i| {
                vec![
                    cal.freqs_hz[i],
                    cal.a[i],
                    linear_to_db(cal.a[i]),
                    if cal.inconsistent[i] { 1.0 } else { 0.0 },
                ]
            })
            .collect();
        let path = c.out.join("attenuation.csv");
        io::write_csv(&path, &["f_hz", "a_linear", "a_db", "inconsistent"], &out_rows)?;
        written.push(path);
        let bad = cal.inconsistent.iter().filter(|&&b| b).count();
        if bad > 0 {
            summary
                .warnings
                .push(format!("{bad} calibration point(s) have A > 1 (unphysical)"));
        }
        summary.points = Some(cal.a.len());
        summary.inconsistent_points = Some(bad);
        summary.mean_attenuation_db =
            Some(cal.a.iter().map(|&a| linear_to_db(a)).sum::<Real>() / cal.a.len() as Real);
    }

    if let Some(p) = &m.pump {
        let at_device = power_at_device(p.source_dbm, p.attenuation_db)?;
        if c.verbose {
            eprintln!(
                "pump at device: {} dBm - {} dB = {} dBm",
                p.source_dbm, p.attenuation_db, at_device
            );
        }
        summary.pump = Some(PumpReport {
            source_dbm: p.source_dbm,
            attenuation_db: p.attenuation_db,
            at_device_dbm: at_device,
        });
    }

    let path = c.out.join("calibration.json");
    io::write_json(&path, &summary)?;
    written.push(path);
    Ok(written)
}
