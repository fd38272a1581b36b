//! n-port S-parameters by nodal admittance analysis.

use num_complex::Complex;
use rayon::prelude::*;

use super::{ElementKind, Netlist, Node};
use crate::linalg::{BandMatrix, DenseMatrix, Singular};
use crate::{Error, Result, Scalar};

/// Evaluation options for the AC analysis.
#[derive(Debug, Clone, Copy, Default)]
pub struct AcOptions<T> {
    /// Dielectric loss tangent applied to every capacitor as a shunt
    /// conductance G = w C tan(delta). `None` evaluates lossless.
    pub cap_tan_delta: Option<T>,
}

/// Complex scattering matrices over a frequency grid. `s[fi]` is the P x P
/// matrix at `freqs[fi]` in row-major order, S[to][from].
#[derive(Debug, Clone)]
pub struct SParamSweep<T> {
    pub freqs: Vec<T>,
    pub num_ports: usize,
    pub s: Vec<Vec<Complex<T>>>,
}

impl<T: Scalar> SParamSweep<T> {
    #[inline]
    pub fn s_at(&self, fi: usize, to: usize, from: usize) -> Complex<T> {
        self.s[fi][to * self.num_ports + from]
    }

    pub fn mag_db(&self, to: usize, from: usize) -> Vec<T> {
        (0..self.freqs.len())
            .map(|fi| T::of(20.0) * self.s_at(fi, to, from).norm().log10())
            .collect()
    }

    /// max over frequencies of || S^H S - I ||_max; zero for lossless netlists.
    pub fn max_unitarity_defect(&self) -> T {
        let p = self.num_ports;
        let mut worst = T::zero();
        for fi in 0..self.freqs.len() {
            for i in 0..p {
                for j in 0..p {
                    let mut acc = Complex::new(T::zero(), T::zero());
                    for k in 0..p {
                        acc = acc + self.s_at(fi, k, i).conj() * self.s_at(fi, k, j);
                    }
                    if i == j {
                        acc = acc - Complex::new(T::one(), T::zero());
                    }
                    worst = worst.max(acc.norm());
                }
            }
        }
        worst
    }

    /// max over frequencies of || S - S^T ||_max; zero for reciprocal netlists.
    pub fn max_reciprocity_defect(&self) -> T {
        let p = self.num_ports;
        let mut worst = T::zero();
        for fi in 0..self.freqs.len() {
            for i in 0..p {
                for j in i + 1..p {
                    worst = worst.max((self.s_at(fi, i, j) - self.s_at(fi, j, i)).norm());
                }
            }
        }
        worst
    }
}

enum YMat<T> {
    Dense(DenseMatrix<Complex<T>>),
    Band(BandMatrix<Complex<T>>),
}

enum YFactored<T> {
    Dense(crate::linalg::DenseLu<Complex<T>>),
    Band(crate::linalg::BandLu<Complex<T>>),
}

impl<T: Scalar> YMat<T> {
    fn zeros(n: usize, bandwidth: usize) -> Self {
        // Banded storage pays off once 3*bw + 1 is below n.
        if 3 * bandwidth + 1 < n {
            YMat::Band(BandMatrix::zeros(n, bandwidth, bandwidth))
        } else {
            YMat::Dense(DenseMatrix::zeros(n))
        }
    }

    fn add_at(&mut self, i: usize, j: usize, v: Complex<T>) {
        match self {
            YMat::Dense(m) => m.add_at(i, j, v),
            YMat::Band(m) => m.add_at(i, j, v),
        }
    }

    fn factor(self) -> std::result::Result<YFactored<T>, Singular> {
        Ok(match self {
            YMat::Dense(m) => YFactored::Dense(m.lu_factor()?),
            YMat::Band(m) => YFactored::Band(m.lu_factor()?),
        })
    }
}

impl<T: Scalar> YFactored<T> {
    fn solve(&self, rhs: &mut [Complex<T>]) {
        match self {
            YFactored::Dense(lu) => lu.solve(rhs),
            YFactored::Band(lu) => lu.solve(rhs),
        }
    }
}

fn stamp<T: Scalar>(y: &mut YMat<T>, a: Node, b: Node, adm: Complex<T>) {
    if let Some(i) = a.index() {
        y.add_at(i, i, adm);
    }
    if let Some(j) = b.index() {
        y.add_at(j, j, adm);
    }
    if let (Some(i), Some(j)) = (a.index(), b.index()) {
        y.add_at(i, j, -adm);
        y.add_at(j, i, -adm);
    }
}

fn sparams_at<T: Scalar>(
    netlist: &Netlist<T>,
    f: T,
    opts: &AcOptions<T>,
    bandwidth: usize,
) -> Result<Vec<Complex<T>>> {
    let w = T::TAU() * f;
    let n = netlist.num_nodes;
    let mut y = YMat::zeros(n, bandwidth);
    for e in &netlist.elements {
        let adm = match e.kind {
            ElementKind::Resistor => Complex::new(e.value.recip(), T::zero()),
            ElementKind::Inductor => Complex::new(T::zero(), -(w * e.value).recip()),
            ElementKind::Capacitor => {
                let g = match opts.cap_tan_delta {
                    Some(td) => w * e.value * td,
                    None => T::zero(),
                };
                Complex::new(g, w * e.value)
            }
        };
        stamp(&mut y, e.a, e.b, adm);
    }
    for p in &netlist.ports {
        y.add_at(p.node, p.node, Complex::new(p.z0.recip(), T::zero()));
    }
    let lu = y.factor().map_err(|Singular| Error::SingularAtFrequency {
        freq_hz: f.as_f64(),
    })?;
    let np = netlist.ports.len();
    let mut s = vec![Complex::new(T::zero(), T::zero()); np * np];
    let two = T::of(2.0);
    for (j, pj) in netlist.ports.iter().enumerate() {
        let mut rhs = vec![Complex::new(T::zero(), T::zero()); n];
        rhs[pj.node] = Complex::new(two / pj.z0.sqrt(), T::zero());
        lu.solve(&mut rhs);
        for (k, pk) in netlist.ports.iter().enumerate() {
            let mut skj = rhs[pk.node] / Complex::new(pk.z0.sqrt(), T::zero());
            if k == j {
                skj = skj - Complex::new(T::one(), T::zero());
            }
            s[k * np + j] = skj;
        }
    }
    Ok(s)
}

/// Evaluate the S-parameters of `netlist` on a frequency grid.
///
/// Frequency points are independent and evaluated in parallel; results are
/// returned in frequency order.
pub fn nport_sparams<T: Scalar>(
    netlist: &Netlist<T>,
    freqs: &[T],
    opts: &AcOptions<T>,
) -> Result<SParamSweep<T>> {
    netlist.validate()?;
    if freqs.is_empty() {
        return Err(Error::InvalidSpec("empty frequency grid".into()));
    }
    for w in freqs.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::InvalidSpec(
                "frequencies must be strictly increasing".into(),
            ));
        }
    }
    if !(freqs[0] > T::zero()) {
        return Err(Error::InvalidSpec("frequencies must be positive".into()));
    }
    let bandwidth = netlist.bandwidth();
    let s: Result<Vec<Vec<Complex<T>>>> = freqs
        .par_iter()
        .map(|&f| sparams_at(netlist, f, opts, bandwidth))
        .collect();
    Ok(SParamSweep {
        freqs: freqs.to_vec(),
        num_ports: netlist.ports.len(),
        s: s?,
    })
}

/// Locate the |S(low,common)| = |S(high,common)| crossover by linear
/// interpolation between the bracketing grid points of the sweep.
pub fn crossover_frequency<T: Scalar>(
    sweep: &SParamSweep<T>,
    common: usize,
    port_low: usize,
    port_high: usize,
) -> Result<T> {
    let d: Vec<T> = (0..sweep.freqs.len())
        .map(|fi| sweep.s_at(fi, port_low, common).norm() - sweep.s_at(fi, port_high, common).norm())
        .collect();
    for i in 0..d.len().saturating_sub(1) {
        if d[i] == T::zero() {
            return Ok(sweep.freqs[i]);
        }
        if (d[i] > T::zero()) != (d[i + 1] > T::zero()) {
            let t = d[i] / (d[i] - d[i + 1]);
            return Ok(sweep.freqs[i] + t * (sweep.freqs[i + 1] - sweep.freqs[i]));
        }
    }
    Err(Error::NoCrossover)
}
