//! Two-port ABCD (chain) matrix algebra and periodic-line dispersion.

use num_complex::Complex;

use super::ElementKind;
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Series,
    Shunt,
}

/// 2x2 complex chain matrix [[A, B], [C, D]].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abcd<T>(pub [[Complex<T>; 2]; 2]);

impl<T: Scalar> Abcd<T> {
    pub fn identity() -> Self {
        let one = Complex::new(T::one(), T::zero());
        let zero = Complex::new(T::zero(), T::zero());
        Abcd([[one, zero], [zero, one]])
    }

    pub fn series_z(z: Complex<T>) -> Self {
        let mut m = Self::identity();
        m.0[0][1] = z;
        m
    }

    pub fn shunt_y(y: Complex<T>) -> Self {
        let mut m = Self::identity();
        m.0[1][0] = y;
        m
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let a = &self.0;
        let b = &rhs.0;
        let mut out = [[Complex::new(T::zero(), T::zero()); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Abcd(out)
    }

    pub fn det(&self) -> Complex<T> {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn inverse(&self) -> Self {
        let d = self.det();
        Abcd([
            [self.0[1][1] / d, -self.0[0][1] / d],
            [-self.0[1][0] / d, self.0[0][0] / d],
        ])
    }

    /// Convert to S-parameters with equal reference impedance z0 at both ports.
    pub fn to_sparams(&self, z0: T) -> [[Complex<T>; 2]; 2] {
        let z0c = Complex::new(z0, T::zero());
        let [[a, b], [c, d]] = self.0;
        let den = a + b / z0c + c * z0c + d;
        let two = Complex::new(T::of(2.0), T::zero());
        [
            [(a + b / z0c - c * z0c - d) / den, two * self.det() / den],
            [two / den, (-a + b / z0c - c * z0c + d) / den],
        ]
    }
}

/// ABCD matrix of a single series or shunt R/L/C element at frequency `f`.
pub fn element_abcd<T: Scalar>(
    kind: ElementKind,
    value: T,
    orientation: Orientation,
    f: T,
) -> Abcd<T> {
    let w = T::TAU() * f;
    let z = match kind {
        ElementKind::Resistor => Complex::new(value, T::zero()),
        ElementKind::Inductor => Complex::new(T::zero(), w * value),
        ElementKind::Capacitor => Complex::new(T::zero(), -(w * value).recip()),
    };
    match orientation {
        Orientation::Series => Abcd::series_z(z),
        Orientation::Shunt => Abcd::shunt_y(z.inv()),
    }
}

/// Ordered matrix product of a cascade, first element nearest port 1.
pub fn cascade<T: Scalar>(chain: &[Abcd<T>]) -> Abcd<T> {
    debug_assert!(!chain.is_empty());
    chain
        .iter()
        .fold(Abcd::identity(), |acc, m| acc.mul(m))
}

/// Per-cell Bloch propagation phase of a periodic line built from reciprocal
/// cells: cos(k) = (A + D)/2. The branch is chosen with Im(k) >= 0, so a
/// stopband shows up as a positive imaginary part (decaying forward wave
/// under the exp(+jk n) propagation convention).
pub fn bloch_phase_per_cell<T: Scalar>(cell: &Abcd<T>) -> Complex<T> {
    let half = Complex::new(T::of(0.5), T::zero());
    let cos_k = (cell.0[0][0] + cell.0[1][1]) * half;
    let k = cos_k.acos();
    if k.im < T::zero() {
        -k
    } else {
        k
    }
}
