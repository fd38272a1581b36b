//! Physical constants (2019 SI exact values where defined).

use crate::Scalar;

/// Planck constant, J s.
pub fn planck<T: Scalar>() -> T {
    T::of(6.626_070_15e-34)
}

/// Boltzmann constant, J/K.
pub fn boltzmann<T: Scalar>() -> T {
    T::of(1.380_649e-23)
}

/// Elementary charge, C.
pub fn elementary_charge<T: Scalar>() -> T {
    T::of(1.602_176_634e-19)
}

/// Magnetic flux quantum h/2e, Wb.
pub fn flux_quantum<T: Scalar>() -> T {
    T::of(2.067_833_848e-15)
}
