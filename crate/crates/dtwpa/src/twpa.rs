//! Nonlinear Josephson transmission-line construction.
//!
//! The artificial line is a chain of series Josephson junctions shunted to
//! ground through capacitors. Phase matching for four-wave mixing comes from
//! an LC resonator periodically inserted in the shunt branch: the regular
//! shunt capacitor stays in place and a coupling capacitor connects the cell
//! node to a parallel-LC resonator, which opens a narrow stopband and bends
//! the dispersion just below it.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::consts::flux_quantum;
use crate::rfnet::{
    bloch_phase_per_cell, element_abcd, Abcd, ElementKind, Netlist, Node, Orientation,
};
use crate::{Error, Result, Scalar};

/// Periodic phase-matching resonator parameters.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RpmSpec<T> {
    /// Resonance of the inserted LC pair, Hz.
    pub f_r: T,
    /// Mode impedance sqrt(L_r/C_r), ohm.
    pub z_rpm: T,
    /// One resonator every this many cells.
    pub period_cells: usize,
    /// Coupling capacitor as a fraction of C_r.
    pub coupling_fraction: T,
}

/// Complete line design.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwpaDesign<T> {
    pub n_cells: usize,
    /// Junction critical current, A.
    pub i_c: T,
    /// Target characteristic impedance, ohm.
    pub z_line: T,
    pub rpm: Option<RpmSpec<T>>,
    /// Dielectric loss tangent of the shunt capacitors, if loss studies are
    /// wanted; the golden path is lossless.
    pub tan_delta: Option<T>,
}

impl<T: Scalar> TwpaDesign<T> {
    /// The design instance used throughout: 2 uA junctions on a 50 ohm line
    /// with a lightly coupled 9 GHz, 15 ohm resonator every third cell. The
    /// weak coupling keeps the phase mismatch 2k_p - k_s - k_i within reach
    /// of the Kerr shift for pumps between the diplexer crossover and the
    /// stopband, and the small critical current gives enough per-cell phase
    /// (k = wL_J/Z) that 800 cells reach double-digit gain at pump ratios
    /// I_p / I_c ~ 0.5, low enough that cascaded mixing products stay an
    /// order of magnitude below the idler.
    pub fn default_design() -> Self {
        Self {
            n_cells: 800,
            i_c: T::of(2e-6),
            z_line: T::of(50.0),
            rpm: Some(RpmSpec {
                f_r: T::of(9.0e9),
                z_rpm: T::of(15.0),
                period_cells: 3,
                coupling_fraction: T::of(0.02),
            }),
            tan_delta: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_cells < 1 {
            return Err(Error::InvalidSpec("n_cells must be >= 1".into()));
        }
        if !(self.i_c > T::zero()) || !(self.z_line > T::zero()) {
            return Err(Error::InvalidSpec(
                "critical current and line impedance must be positive".into(),
            ));
        }
        if let Some(rpm) = &self.rpm {
            if !(rpm.f_r > T::zero()) || !(rpm.z_rpm > T::zero()) {
                return Err(Error::InvalidSpec("RPM resonance and impedance must be positive".into()));
            }
            if rpm.period_cells < 1 || rpm.period_cells > self.n_cells {
                return Err(Error::InvalidSpec(
                    "RPM period must satisfy 1 <= period_cells <= n_cells".into(),
                ));
            }
            if !(rpm.coupling_fraction > T::zero()) {
                return Err(Error::InvalidSpec("coupling fraction must be positive".into()));
            }
        }
        Ok(())
    }
}

/// A Josephson junction branch: I = I_c sin(phi), V = (Phi0 / 2 pi) dphi/dt.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Junction<T> {
    pub a: Node,
    pub b: Node,
    pub i_c: T,
}

/// Linear netlist plus junction branches.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NonlinearNetlist<T> {
    pub linear: Netlist<T>,
    pub junctions: Vec<Junction<T>>,
}

impl<T: Scalar> NonlinearNetlist<T> {
    /// Ideal through: both ports on one shared node, no elements.
    pub fn thru(z0: T) -> Self {
        let mut linear = Netlist::new();
        let n = linear.add_node("thru");
        linear.add_port(n, z0);
        linear.add_port(n, z0);
        Self {
            linear,
            junctions: Vec::new(),
        }
    }

    /// Replace every junction by its small-signal inductance Phi0/(2 pi I_c).
    pub fn linearize(&self) -> Netlist<T> {
        let mut net = self.linear.clone();
        for j in &self.junctions {
            net.add_element(
                ElementKind::Inductor,
                junction_linear_inductance(j.i_c),
                j.a,
                j.b,
            );
        }
        net
    }
}

/// Small-signal junction inductance L_J0 = Phi0 / (2 pi I_c).
pub fn junction_linear_inductance<T: Scalar>(i_c: T) -> T {
    flux_quantum::<T>() / (T::TAU() * i_c)
}

/// Shunt capacitance giving the target characteristic impedance:
/// C = L_J0 / Z^2.
pub fn cell_shunt_capacitance<T: Scalar>(l_j0: T, z_line: T) -> T {
    l_j0 / (z_line * z_line)
}

/// Resonator element values from resonance and mode impedance:
/// L_r = Z/(2 pi f_r), C_r = 1/(Z 2 pi f_r).
pub fn rpm_resonator_values<T: Scalar>(f_r: T, z_rpm: T) -> (T, T) {
    let w = T::TAU() * f_r;
    (z_rpm / w, (z_rpm * w).recip())
}

/// Idler frequency of the four-wave-mixing process, f_i = 2 f_p - f_s.
pub fn idler_frequency<T: Scalar>(f_p: T, f_s: T) -> Result<T> {
    if !(f_p > T::zero()) || !(f_s > T::zero()) {
        return Err(Error::InvalidSpec("frequencies must be positive".into()));
    }
    let f_i = T::of(2.0) * f_p - f_s;
    if !(f_i > T::zero()) {
        return Err(Error::InvalidSpec(format!(
            "idler frequency {f_i} is not physical"
        )));
    }
    Ok(f_i)
}

/// Build the junction-loaded line. Node numbering follows the chain, with
/// each resonator's internal node inserted inline, so the nodal matrix stays
/// narrowly banded.
pub fn build_twpa_netlist<T: Scalar>(design: &TwpaDesign<T>) -> Result<NonlinearNetlist<T>> {
    design.validate()?;
    let l_j0 = junction_linear_inductance(design.i_c);
    let c_sh = cell_shunt_capacitance(l_j0, design.z_line);
    let mut linear = Netlist::new();
    let mut junctions = Vec::with_capacity(design.n_cells);
    let input = linear.add_node("in");
    let mut prev = input;
    for cell in 1..=design.n_cells {
        let node = linear.add_node(format!("c{cell}"));
        junctions.push(Junction {
            a: Node::N(prev),
            b: Node::N(node),
            i_c: design.i_c,
        });
        if cell < design.n_cells {
            linear.add_element(ElementKind::Capacitor, c_sh, Node::N(node), Node::Ground);
            if let Some(rpm) = &design.rpm {
                if cell % rpm.period_cells == 0 {
                    let (l_r, c_r) = rpm_resonator_values(rpm.f_r, rpm.z_rpm);
                    let c_c = rpm.coupling_fraction * c_r;
                    let res = linear.add_node(format!("r{cell}"));
                    linear.add_element(ElementKind::Capacitor, c_c, Node::N(node), Node::N(res));
                    linear.add_element(ElementKind::Inductor, l_r, Node::N(res), Node::Ground);
                    linear.add_element(ElementKind::Capacitor, c_r, Node::N(res), Node::Ground);
                }
            }
        }
        prev = node;
    }
    linear.add_port(input, design.z_line);
    linear.add_port(prev, design.z_line);
    Ok(NonlinearNetlist { linear, junctions })
}

/// Compose the line with a diplexer at each end into the four-port device:
/// port 0 = low-frequency input, port 1 = low-frequency output,
/// port 2 = high-frequency input, port 3 = high-frequency output.
/// Diplexer ports are expected as [common, low, high].
pub fn assemble_device<T: Scalar>(
    twpa: &NonlinearNetlist<T>,
    diplexer_in: &Netlist<T>,
    diplexer_out: &Netlist<T>,
) -> Result<NonlinearNetlist<T>> {
    if diplexer_in.ports.len() != 3 || diplexer_out.ports.len() != 3 {
        return Err(Error::InconsistentDesign(format!(
            "diplexers must be three-port (got {} and {})",
            diplexer_in.ports.len(),
            diplexer_out.ports.len()
        )));
    }
    if twpa.linear.ports.len() != 2 {
        return Err(Error::InconsistentDesign(
            "line netlist must be two-port".into(),
        ));
    }
    let mut net = diplexer_in.clone();
    let in_ports = std::mem::take(&mut net.ports);
    let map_line = net.absorb(&twpa.linear, &[(in_ports[0].node, twpa.linear.ports[0].node)]);
    let line_out = map_line[twpa.linear.ports[1].node];
    let map_out = net.absorb(&diplexer_out, &[(line_out, diplexer_out.ports[0].node)]);
    net.add_port(in_ports[1].node, in_ports[1].z0);
    net.add_port(map_out[diplexer_out.ports[1].node], diplexer_out.ports[1].z0);
    net.add_port(in_ports[2].node, in_ports[2].z0);
    net.add_port(map_out[diplexer_out.ports[2].node], diplexer_out.ports[2].z0);
    let junctions = twpa
        .junctions
        .iter()
        .map(|j| Junction {
            a: remap(j.a, &map_line),
            b: remap(j.b, &map_line),
            i_c: j.i_c,
        })
        .collect();
    Ok(NonlinearNetlist {
        linear: net,
        junctions,
    })
}

fn remap(n: Node, map: &[usize]) -> Node {
    match n {
        Node::Ground => Node::Ground,
        Node::N(i) => Node::N(map[i]),
    }
}

/// ABCD matrix of one linearized RPM period (period_cells junction cells with
/// the resonator branch on the last one), or of a single cell when no RPM is
/// configured.
pub fn linearized_supercell_abcd<T: Scalar>(design: &TwpaDesign<T>, f: T) -> Abcd<T> {
    let l_j0 = junction_linear_inductance(design.i_c);
    let c_sh = cell_shunt_capacitance(l_j0, design.z_line);
    let series = element_abcd(ElementKind::Inductor, l_j0, Orientation::Series, f);
    let shunt = element_abcd(ElementKind::Capacitor, c_sh, Orientation::Shunt, f);
    match &design.rpm {
        None => series.mul(&shunt),
        Some(rpm) => {
            let (l_r, c_r) = rpm_resonator_values(rpm.f_r, rpm.z_rpm);
            let c_c = rpm.coupling_fraction * c_r;
            let w = T::TAU() * f;
            // Coupling capacitor in series with the parallel-LC resonator.
            let one = T::one();
            let z_par_num = Complex::new(T::zero(), w * l_r);
            let z_par_den = Complex::new(one - w * w * l_r * c_r, T::zero());
            let z_branch = z_par_num / z_par_den + Complex::new(T::zero(), -(w * c_c).recip());
            let rpm_shunt = Abcd::shunt_y(z_branch.inv());
            let mut cell = Abcd::identity();
            for k in 1..=rpm.period_cells {
                cell = cell.mul(&series).mul(&shunt);
                if k == rpm.period_cells {
                    cell = cell.mul(&rpm_shunt);
                }
            }
            cell
        }
    }
}

/// Per-cell Bloch phase of the linearized loaded line at frequency `f`.
pub fn dispersion_phase<T: Scalar>(design: &TwpaDesign<T>, f: T) -> Complex<T> {
    let period = design.rpm.as_ref().map_or(1, |r| r.period_cells);
    let k = bloch_phase_per_cell(&linearized_supercell_abcd(design, f));
    k / Complex::new(T::from_usize_(period), T::zero())
}
