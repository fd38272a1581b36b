//! Document formats: JSON netlists and design documents, CSV tables,
//! Touchstone output and the raw time-series dump.
//!
//! Everything here is at the working precision [`crate::Real`]. Numeric text
//! output uses shortest round-trip formatting, so files are bit-identical
//! across runs for identical inputs.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read as _, Write as _};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::filtsynth::LadderElements;
use crate::rfnet::{ElementKind, Netlist, Node, Orientation, SParamSweep};
use crate::twpa::{Junction, NonlinearNetlist};
use crate::{Error, Real, Result};

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let f = File::open(path)?;
    Ok(serde_json::from_reader(BufReader::new(f))?)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let f = File::create(path)?;
    let mut w = BufWriter::new(f);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    Ok(())
}

/// Node reference in the document format: a node index or the string "gnd".
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NodeRef {
    Index(usize),
    Gnd(GndTag),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GndTag {
    #[serde(rename = "gnd")]
    Gnd,
}

impl NodeRef {
    pub fn from_node(n: Node) -> Self {
        match n {
            Node::Ground => NodeRef::Gnd(GndTag::Gnd),
            Node::N(i) => NodeRef::Index(i),
        }
    }

    pub fn to_node(self, num_nodes: usize) -> Result<Node> {
        match self {
            NodeRef::Gnd(_) => Ok(Node::Ground),
            NodeRef::Index(i) if i < num_nodes => Ok(Node::N(i)),
            NodeRef::Index(i) => Err(Error::InvalidNetlist(format!("node {i} out of range"))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementDoc {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Real>,
    /// Critical current of a "josephson" element, ampere.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ic_amp: Option<Real>,
    pub n1: NodeRef,
    pub n2: NodeRef,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PortDoc {
    pub node: usize,
    pub z0: Real,
}

/// The netlist document: linear R/L/C elements plus the "josephson"
/// extension kind carrying `ic_amp` instead of `value`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NetlistDoc {
    pub nodes: Vec<String>,
    pub elements: Vec<ElementDoc>,
    pub ports: Vec<PortDoc>,
}

fn kind_name(kind: ElementKind) -> &'static str {
    match kind {
        ElementKind::Resistor => "resistor",
        ElementKind::Inductor => "inductor",
        ElementKind::Capacitor => "capacitor",
    }
}

impl NetlistDoc {
    pub fn from_nonlinear(net: &NonlinearNetlist<Real>) -> Self {
        let mut elements: Vec<ElementDoc> = net
            .linear
            .elements
            .iter()
            .map(|e| ElementDoc {
                kind: kind_name(e.kind).to_string(),
                value: Some(e.value),
                ic_amp: None,
                n1: NodeRef::from_node(e.a),
                n2: NodeRef::from_node(e.b),
            })
            .collect();
        elements.extend(net.junctions.iter().map(|j| ElementDoc {
            kind: "josephson".to_string(),
            value: None,
            ic_amp: Some(j.i_c),
            n1: NodeRef::from_node(j.a),
            n2: NodeRef::from_node(j.b),
        }));
        NetlistDoc {
            nodes: net.linear.names.clone(),
            elements,
            ports: net
                .linear
                .ports
                .iter()
                .map(|p| PortDoc { node: p.node, z0: p.z0 })
                .collect(),
        }
    }

    pub fn from_netlist(net: &Netlist<Real>) -> Self {
        Self::from_nonlinear(&NonlinearNetlist {
            linear: net.clone(),
            junctions: Vec::new(),
        })
    }

    pub fn to_nonlinear(&self) -> Result<NonlinearNetlist<Real>> {
        let mut linear = Netlist::new();
        for name in &self.nodes {
            linear.add_node(name.clone());
        }
        let mut junctions = Vec::new();
        for e in &self.elements {
            let a = e.n1.to_node(linear.num_nodes)?;
            let b = e.n2.to_node(linear.num_nodes)?;
            let need_value = || {
                e.value.ok_or_else(|| {
                    Error::InvalidNetlist(format!("element kind {:?} requires a value", e.kind))
                })
            };
            match e.kind.as_str() {
                "resistor" => linear.add_element(ElementKind::Resistor, need_value()?, a, b),
                "inductor" => linear.add_element(ElementKind::Inductor, need_value()?, a, b),
                "capacitor" => linear.add_element(ElementKind::Capacitor, need_value()?, a, b),
                "josephson" => {
                    let i_c = e.ic_amp.ok_or_else(|| {
                        Error::InvalidNetlist("josephson element requires ic_amp".into())
                    })?;
                    junctions.push(Junction { a, b, i_c });
                }
                other => {
                    return Err(Error::InvalidNetlist(format!(
                        "unknown element kind {other:?}"
                    )))
                }
            }
        }
        for p in &self.ports {
            if p.node >= linear.num_nodes {
                return Err(Error::InvalidNetlist(format!(
                    "port node {} out of range",
                    p.node
                )));
            }
            linear.add_port(p.node, p.z0);
        }
        Ok(NonlinearNetlist { linear, junctions })
    }

    pub fn to_netlist(&self) -> Result<Netlist<Real>> {
        let nl = self.to_nonlinear()?;
        if !nl.junctions.is_empty() {
            return Err(Error::InvalidNetlist(
                "linear netlist document contains josephson elements".into(),
            ));
        }
        Ok(nl.linear)
    }
}

/// Diplexer design description.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DesignDoc {
    pub n: usize,
    pub ripple_db: Real,
    pub crossover_hz: Real,
    pub z0_ohm: Real,
}

/// Generic numeric CSV writer: a header row, then shortest round-trip
/// formatted values.
pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<Real>]) -> Result<()> {
    let f = File::create(path)?;
    let mut w = BufWriter::new(f);
    writeln!(w, "{}", header.join(","))?;
    for row in rows {
        if row.len() != header.len() {
            return Err(Error::MalformedTable(format!(
                "row width {} != header width {}",
                row.len(),
                header.len()
            )));
        }
        let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}

/// Generic numeric CSV reader; returns the header and data rows. Blank lines
/// and `#` comments are skipped.
pub fn read_csv(path: &Path) -> Result<(Vec<String>, Vec<Vec<Real>>)> {
    let mut text = String::new();
    File::open(path)?.read_to_string(&mut text)?;
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header: Vec<String> = lines
        .next()
        .ok_or_else(|| Error::MalformedTable("empty table".into()))?
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let row: std::result::Result<Vec<Real>, _> =
            line.split(',').map(|c| c.trim().parse::<Real>()).collect();
        let row = row.map_err(|e| {
            Error::MalformedTable(format!("line {}: {e}", i + 2))
        })?;
        if row.len() != header.len() {
            return Err(Error::MalformedTable(format!(
                "line {}: {} columns, expected {}",
                i + 2,
                row.len(),
                header.len()
            )));
        }
        rows.push(row);
    }
    Ok((header, rows))
}

/// Column index lookup with a diagnostic on absence.
pub fn column(header: &[String], name: &str) -> Result<usize> {
    header
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| Error::MalformedTable(format!("missing column {name:?}")))
}

/// S-parameter CSV: f_hz then Re/Im per entry, row-major S[i][j], 1-based
/// names (s11_re, s11_im, s12_re, ...).
pub fn write_sparam_csv(path: &Path, sweep: &SParamSweep<Real>) -> Result<()> {
    let p = sweep.num_ports;
    let mut header = vec!["f_hz".to_string()];
    for i in 1..=p {
        for j in 1..=p {
            header.push(format!("s{i}{j}_re"));
            header.push(format!("s{i}{j}_im"));
        }
    }
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut rows = Vec::with_capacity(sweep.freqs.len());
    for (fi, &f) in sweep.freqs.iter().enumerate() {
        let mut row = Vec::with_capacity(1 + 2 * p * p);
        row.push(f);
        for i in 0..p {
            for j in 0..p {
                let s = sweep.s_at(fi, i, j);
                row.push(s.re);
                row.push(s.im);
            }
        }
        rows.push(row);
    }
    write_csv(path, &header_refs, &rows)
}

/// Touchstone v1 text (# Hz S RI R z0). Two-port data uses the historical
/// S11 S21 S12 S22 column order; larger networks are row-major with at most
/// four S entries per line.
pub fn write_touchstone(path: &Path, sweep: &SParamSweep<Real>, z0: Real) -> Result<()> {
    let f = File::create(path)?;
    let mut w = BufWriter::new(f);
    writeln!(w, "# Hz S RI R {z0}")?;
    let p = sweep.num_ports;
    for (fi, &freq) in sweep.freqs.iter().enumerate() {
        if p == 2 {
            let order = [(0, 0), (1, 0), (0, 1), (1, 1)];
            write!(w, "{freq}")?;
            for (i, j) in order {
                let s = sweep.s_at(fi, i, j);
                write!(w, " {} {}", s.re, s.im)?;
            }
            writeln!(w)?;
        } else {
            for i in 0..p {
                for (col, j) in (0..p).enumerate() {
                    if i == 0 && col == 0 {
                        write!(w, "{freq}")?;
                    } else if col % 4 == 0 {
                        writeln!(w)?;
                    }
                    let s = sweep.s_at(fi, i, j);
                    write!(w, " {} {}", s.re, s.im)?;
                }
                writeln!(w)?;
            }
        }
    }
    Ok(())
}

/// Component-value report for synthesized diplexer arms:
/// index, arm, orientation, element, value_si.
pub fn write_component_report(path: &Path, arms: &[(&str, &LadderElements<Real>)]) -> Result<()> {
    let f = File::create(path)?;
    let mut w = BufWriter::new(f);
    writeln!(w, "index,arm,orientation,element,value_si")?;
    for (arm, ladder) in arms {
        for e in &ladder.elements {
            let orientation = match e.orientation {
                Orientation::Series => "series",
                Orientation::Shunt => "shunt",
            };
            writeln!(
                w,
                "{},{},{},{},{}",
                e.index,
                arm,
                orientation,
                kind_name(e.component),
                e.value
            )?;
        }
    }
    Ok(())
}

/// Raw time-series dump. Layout, all little-endian:
/// magic "DTTS", u32 version (1), u32 trace count, u64 samples per trace,
/// f64 dt, then each trace's f64 samples in sequence.
pub fn write_time_series(path: &Path, dt: Real, traces: &[Vec<Real>]) -> Result<()> {
    let n_samples = traces.first().map_or(0, Vec::len);
    if traces.iter().any(|t| t.len() != n_samples) {
        return Err(Error::MalformedTable("trace lengths differ".into()));
    }
    let f = File::create(path)?;
    let mut w = BufWriter::new(f);
    w.write_all(b"DTTS")?;
    w.write_all(&1u32.to_le_bytes())?;
    w.write_all(&(traces.len() as u32).to_le_bytes())?;
    w.write_all(&(n_samples as u64).to_le_bytes())?;
    w.write_all(&dt.to_le_bytes())?;
    for t in traces {
        for &x in t {
            w.write_all(&x.to_le_bytes())?;
        }
    }
    Ok(())
}

pub fn read_time_series(path: &Path) -> Result<(Real, Vec<Vec<Real>>)> {
    let mut bytes = Vec::new();
    File::open(path)?.read_to_end(&mut bytes)?;
    let fail = |m: &str| Error::MalformedTable(format!("time-series dump: {m}"));
    if bytes.len() < 28 || &bytes[0..4] != b"DTTS" {
        return Err(fail("bad magic or truncated header"));
    }
    let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
    if u32_at(4) != 1 {
        return Err(fail("unsupported version"));
    }
    let n_traces = u32_at(8) as usize;
    let n_samples = u64::from_le_bytes(bytes[12..20].try_into().unwrap()) as usize;
    let dt = Real::from_le_bytes(bytes[20..28].try_into().unwrap());
    let need = 28 + 8 * n_traces * n_samples;
    if bytes.len() != need {
        return Err(fail("payload size mismatch"));
    }
    let mut traces = Vec::with_capacity(n_traces);
    let mut o = 28;
    for _ in 0..n_traces {
        let mut t = Vec::with_capacity(n_samples);
        for _ in 0..n_samples {
            t.push(Real::from_le_bytes(bytes[o..o + 8].try_into().unwrap()));
            o += 8;
        }
        traces.push(t);
    }
    Ok((dt, traces))
}
