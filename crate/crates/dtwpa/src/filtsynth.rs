//! Chebyshev ladder filter synthesis and contiguous-band diplexer assembly.
//!
//! Singly-terminated prototypes are synthesized numerically: the type-I
//! Chebyshev denominator polynomial is built from its left-half-plane poles,
//! split into even and odd parts, and continued-fraction expanded into the
//! ladder element values. This keeps the filter order and ripple free design
//! knobs instead of shipping a handbook table. Doubly-terminated prototypes
//! use the standard closed-form recurrence.
//!
//! Prototype index convention: g_1 is the element adjacent to the load
//! (the filter's external port); g_n sits at the driven end, which in a
//! diplexer is the common node. Ladders alternate series/shunt with the
//! odd-indexed elements in series, so both the low-pass arm
//! (L1, C2, L3, C4, L5) and the high-pass arm (C1, L2, C3, L4, C5) place a
//! series element next to the common node for odd order.

use serde::{Deserialize, Serialize};

use crate::rfnet::{ElementKind, Netlist, Node, Orientation};
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FilterKind {
    Lowpass,
    Highpass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Termination {
    Singly,
    Doubly,
}

/// Design parameters of one diplexer arm.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FilterSpec<T> {
    pub n: usize,
    pub ripple_db: T,
    pub crossover_hz: T,
    pub z0: T,
    pub kind: FilterKind,
    pub termination: Termination,
}

impl<T: Scalar> FilterSpec<T> {
    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::InvalidSpec("filter order must be >= 1".into()));
        }
        for (name, v) in [
            ("ripple_db", self.ripple_db),
            ("crossover_hz", self.crossover_hz),
            ("z0", self.z0),
        ] {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(Error::InvalidSpec(format!("{name} must be positive")));
            }
        }
        Ok(())
    }
}

/// Dimensionless prototype values g_1..g_n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrototypeCoefficients<T> {
    pub g: Vec<T>,
}

/// One ladder element, indexed 1-based from the load end.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LadderElement<T> {
    pub index: usize,
    pub orientation: Orientation,
    pub component: ElementKind,
    pub value: T,
}

/// A synthesized filter arm: ordered elements plus the scaling it was built
/// with, kept so that diplexer assembly can check design consistency.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LadderElements<T> {
    pub kind: FilterKind,
    pub z0: T,
    pub crossover_hz: T,
    /// Ripple-bandedge cutoff after k_n scaling.
    pub cutoff_hz: T,
    pub elements: Vec<LadderElement<T>>,
}

/// Ripple factor epsilon^2 = 10^(L_ar/10) - 1.
fn eps_sq<T: Scalar>(ripple_db: T) -> T {
    T::of(10.0).powf(ripple_db / T::of(10.0)) - T::one()
}

/// Cutoff scale factor k_n = cosh(acosh(sqrt(1/eps)) / n) mapping the
/// crossover (3 dB) frequency to the Chebyshev ripple-bandedge cutoff.
pub fn cutoff_scale_factor<T: Scalar>(n: usize, ripple_db: T) -> Result<T> {
    if n < 1 || !(ripple_db > T::zero()) {
        return Err(Error::InvalidSpec(
            "cutoff scale factor needs n >= 1 and positive ripple".into(),
        ));
    }
    let e2 = eps_sq(ripple_db);
    let arg = e2.recip().sqrt();
    if arg < T::one() {
        // Ripple above 3.0103 dB: the 3 dB point is inside the ripple band.
        return Ok(T::one());
    }
    Ok((arg.acosh() / T::from_usize_(n)).cosh())
}

/// Multiply polynomial `p` (descending coefficients) by `q` in place.
fn poly_mul<T: Scalar>(p: &[T], q: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); p.len() + q.len() - 1];
    for (i, &a) in p.iter().enumerate() {
        for (j, &b) in q.iter().enumerate() {
            out[i + j] = out[i + j] + a * b;
        }
    }
    out
}

/// Monic type-I Chebyshev denominator polynomial of degree n built from its
/// left-half-plane poles, combined in conjugate pairs so arithmetic stays real.
fn chebyshev_denominator<T: Scalar>(n: usize, ripple_db: T) -> Vec<T> {
    let eps = eps_sq(ripple_db).sqrt();
    let a = (eps.recip().asinh()) / T::from_usize_(n);
    let (sinh_a, cosh_a) = (a.sinh(), a.cosh());
    let mut p = vec![T::one()];
    for k in 1..=n / 2 {
        let theta = T::PI() * (T::from_usize_(2 * k - 1)) / (T::from_usize_(2 * n));
        let sigma = -theta.sin() * sinh_a;
        let omega = theta.cos() * cosh_a;
        // (s - p)(s - conj p) = s^2 - 2 sigma s + |p|^2
        p = poly_mul(&p, &[T::one(), -(sigma + sigma), sigma * sigma + omega * omega]);
    }
    if n % 2 == 1 {
        p = poly_mul(&p, &[T::one(), sinh_a]);
    }
    p
}

/// Split descending-coefficient polynomial into its even and odd parts in s.
fn even_odd_parts<T: Scalar>(p: &[T]) -> (Vec<T>, Vec<T>) {
    let deg = p.len() - 1;
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (i, &c) in p.iter().enumerate() {
        let d = deg - i;
        if d % 2 == 0 {
            even.push(c);
            odd.push(T::zero());
        } else {
            even.push(T::zero());
            odd.push(c);
        }
    }
    (trim_leading(even), trim_leading(odd))
}

fn trim_leading<T: Scalar>(mut p: Vec<T>) -> Vec<T> {
    let scale = p.iter().fold(T::zero(), |m, c| m.max(c.abs()));
    let tol = scale * T::of(1e-12);
    let mut start = 0;
    while start + 1 < p.len() && p[start].abs() <= tol {
        start += 1;
    }
    p.drain(..start);
    p
}

/// Continued-fraction (Cauer I) expansion of num/den about s = infinity; the
/// successive quotients alpha_k s are the ladder element values, starting at
/// the load end of the ladder.
fn continued_fraction_ladder<T: Scalar>(mut num: Vec<T>, mut den: Vec<T>, n: usize) -> Result<Vec<T>> {
    let mut g = Vec::with_capacity(n);
    for _ in 0..n {
        if num.len() != den.len() + 1 {
            return Err(Error::PrototypeUnavailable(
                "continued-fraction expansion degenerated".into(),
            ));
        }
        let alpha = num[0] / den[0];
        if !(alpha > T::zero()) || !alpha.is_finite() {
            return Err(Error::PrototypeUnavailable(format!(
                "non-positive ladder element {alpha}"
            )));
        }
        g.push(alpha);
        // remainder = num - alpha * s * den; the leading term cancels exactly.
        let mut rem = num.clone();
        for (i, &d) in den.iter().enumerate() {
            rem[i] = rem[i] - alpha * d;
        }
        rem.remove(0);
        let rem = trim_leading(rem);
        num = den;
        den = rem;
    }
    Ok(g)
}

/// Singly- or doubly-terminated type-I Chebyshev low-pass prototype values.
///
/// For the singly-terminated case g_1 is adjacent to the load; for
/// (n = 5, 0.1 dB) this reproduces the classic handbook row
/// [0.573, 1.249, 1.556, 1.592, 1.376].
pub fn chebyshev_prototype<T: Scalar>(
    n: usize,
    ripple_db: T,
    termination: Termination,
) -> Result<PrototypeCoefficients<T>> {
    if n < 1 {
        return Err(Error::InvalidSpec("prototype order must be >= 1".into()));
    }
    if !(ripple_db > T::zero()) || !ripple_db.is_finite() {
        return Err(Error::InvalidSpec("ripple must be positive".into()));
    }
    if n > 30 {
        return Err(Error::PrototypeUnavailable(
            "orders above 30 are numerically unreliable in double precision".into(),
        ));
    }
    match termination {
        Termination::Singly => {
            // Voltage-driven ladder into a unit load: H = 1/(A + B) where A
            // and B are the even and odd parts of the normalized denominator.
            let p = chebyshev_denominator(n, ripple_db);
            let (even, odd) = even_odd_parts(&p);
            let (num, den) = if odd.len() > even.len() {
                (odd, even)
            } else {
                (even, odd)
            };
            let g = continued_fraction_ladder(num, den, n)?;
            Ok(PrototypeCoefficients { g })
        }
        Termination::Doubly => {
            let lar = ripple_db;
            let beta = (lar / T::of(17.37)).tanh().recip().ln();
            let gamma = (beta / T::from_usize_(2 * n)).sinh();
            let mut g = Vec::with_capacity(n);
            let a = |k: usize| {
                (T::PI() * T::from_usize_(2 * k - 1) / T::from_usize_(2 * n)).sin()
            };
            let b = |k: usize| {
                gamma * gamma + (T::PI() * T::from_usize_(k) / T::from_usize_(n)).sin().powi(2)
            };
            g.push(T::of(2.0) * a(1) / gamma);
            for k in 2..=n {
                let prev = g[k - 2];
                g.push(T::of(4.0) * a(k - 1) * a(k) / (b(k - 1) * prev));
            }
            Ok(PrototypeCoefficients { g })
        }
    }
}

/// Low-pass element values: L_k = g_k Z0 / (2 pi f_c,low) for odd (series)
/// indices, C_k = g_k / (Z0 2 pi f_c,low) for even (shunt) indices, with
/// f_c,low = f_cx / k_n.
pub fn synthesize_lowpass<T: Scalar>(
    spec: &FilterSpec<T>,
    proto: &PrototypeCoefficients<T>,
) -> Result<LadderElements<T>> {
    spec.validate()?;
    if spec.kind != FilterKind::Lowpass {
        return Err(Error::InvalidSpec("spec is not a low-pass filter".into()));
    }
    if proto.g.len() != spec.n {
        return Err(Error::InvalidSpec("prototype length != order".into()));
    }
    let kn = cutoff_scale_factor(spec.n, spec.ripple_db)?;
    let fc = spec.crossover_hz / kn;
    let wc = T::TAU() * fc;
    let elements = proto
        .g
        .iter()
        .enumerate()
        .map(|(i, &gk)| {
            let k = i + 1;
            if k % 2 == 1 {
                LadderElement {
                    index: k,
                    orientation: Orientation::Series,
                    component: ElementKind::Inductor,
                    value: gk * spec.z0 / wc,
                }
            } else {
                LadderElement {
                    index: k,
                    orientation: Orientation::Shunt,
                    component: ElementKind::Capacitor,
                    value: gk / (spec.z0 * wc),
                }
            }
        })
        .collect();
    Ok(LadderElements {
        kind: FilterKind::Lowpass,
        z0: spec.z0,
        crossover_hz: spec.crossover_hz,
        cutoff_hz: fc,
        elements,
    })
}

/// High-pass element values: C_k = 1/(g_k Z0 2 pi f_c,high) for odd (series)
/// indices, L_k = Z0 / (g_k 2 pi f_c,high) for even (shunt) indices, with
/// f_c,high = f_cx * k_n.
pub fn synthesize_highpass<T: Scalar>(
    spec: &FilterSpec<T>,
    proto: &PrototypeCoefficients<T>,
) -> Result<LadderElements<T>> {
    spec.validate()?;
    if spec.kind != FilterKind::Highpass {
        return Err(Error::InvalidSpec("spec is not a high-pass filter".into()));
    }
    if proto.g.len() != spec.n {
        return Err(Error::InvalidSpec("prototype length != order".into()));
    }
    let kn = cutoff_scale_factor(spec.n, spec.ripple_db)?;
    let fc = spec.crossover_hz * kn;
    let wc = T::TAU() * fc;
    let elements = proto
        .g
        .iter()
        .enumerate()
        .map(|(i, &gk)| {
            let k = i + 1;
            if k % 2 == 1 {
                LadderElement {
                    index: k,
                    orientation: Orientation::Series,
                    component: ElementKind::Capacitor,
                    value: (gk * spec.z0 * wc).recip(),
                }
            } else {
                LadderElement {
                    index: k,
                    orientation: Orientation::Shunt,
                    component: ElementKind::Inductor,
                    value: spec.z0 / (gk * wc),
                }
            }
        })
        .collect();
    Ok(LadderElements {
        kind: FilterKind::Highpass,
        z0: spec.z0,
        crossover_hz: spec.crossover_hz,
        cutoff_hz: fc,
        elements,
    })
}

impl<T: Scalar> LadderElements<T> {
    /// Invert the scaling formulas to recover the prototype values.
    pub fn prototype(&self) -> Vec<T> {
        let wc = T::TAU() * self.cutoff_hz;
        self.elements
            .iter()
            .map(|e| match (self.kind, e.component) {
                (FilterKind::Lowpass, ElementKind::Inductor) => e.value * wc / self.z0,
                (FilterKind::Lowpass, ElementKind::Capacitor) => e.value * wc * self.z0,
                (FilterKind::Highpass, ElementKind::Capacitor) => {
                    (e.value * self.z0 * wc).recip()
                }
                (FilterKind::Highpass, ElementKind::Inductor) => self.z0 / (e.value * wc),
                _ => T::nan(),
            })
            .collect()
    }

    /// Two-port netlist of the arm alone. Port 0 is the driven (common-node)
    /// end, adjacent to element index n; port 1 is the load end.
    pub fn to_two_port_netlist(&self) -> Netlist<T> {
        let mut net = Netlist::new();
        let common = net.add_node("common");
        let mut current = common;
        for e in self.elements.iter().rev() {
            match e.orientation {
                Orientation::Series => {
                    let next = net.add_node(format!("n{}", e.index));
                    net.add_element(e.component, e.value, Node::N(current), Node::N(next));
                    current = next;
                }
                Orientation::Shunt => {
                    net.add_element(e.component, e.value, Node::N(current), Node::Ground);
                }
            }
        }
        net.add_port(common, self.z0);
        net.add_port(current, self.z0);
        net
    }
}

/// Join two synthesized arms at a shared common node into a three-port
/// diplexer netlist: port 0 = common, port 1 = low-pass output,
/// port 2 = high-pass output. An empty high-pass arm degenerates to the
/// two-port low-pass filter alone.
pub fn diplexer_netlist<T: Scalar>(
    lpf: &LadderElements<T>,
    hpf: &LadderElements<T>,
    z0: T,
) -> Result<Netlist<T>> {
    if !hpf.elements.is_empty() && (lpf.z0 != hpf.z0 || lpf.z0 != z0) {
        return Err(Error::InconsistentDesign(
            "arms were synthesized for different reference impedances".into(),
        ));
    }
    if !hpf.elements.is_empty() && lpf.crossover_hz != hpf.crossover_hz {
        return Err(Error::InconsistentDesign(
            "arms were synthesized for different crossover frequencies".into(),
        ));
    }
    let mut net = Netlist::new();
    let common = net.add_node("common");
    let low_out = attach_arm(&mut net, common, lpf, "lp");
    net.add_port(common, z0);
    net.add_port(low_out, z0);
    if !hpf.elements.is_empty() {
        let high_out = attach_arm(&mut net, common, hpf, "hp");
        net.add_port(high_out, z0);
    }
    Ok(net)
}

/// Attach one arm to `common`, element index n first, returning the node at
/// the arm's external end.
fn attach_arm<T: Scalar>(
    net: &mut Netlist<T>,
    common: usize,
    arm: &LadderElements<T>,
    label: &str,
) -> usize {
    let mut current = common;
    for e in arm.elements.iter().rev() {
        match e.orientation {
            Orientation::Series => {
                let next = net.add_node(format!("{label}{}", e.index));
                net.add_element(e.component, e.value, Node::N(current), Node::N(next));
                current = next;
            }
            Orientation::Shunt => {
                net.add_element(e.component, e.value, Node::N(current), Node::Ground);
            }
        }
    }
    current
}
