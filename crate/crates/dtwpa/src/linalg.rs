//! Dense and banded LU factorization with partial pivoting.
//!
//! One implementation serves both the complex nodal admittance solves of the
//! AC analysis and the real Newton solves of the transient engine. The banded
//! path is what makes long transmission-line chains cheap: node numbering
//! along the chain keeps the half-bandwidth small, and factorization cost is
//! O(n * kl * (kl + ku)).

use num_complex::Complex;
use num_traits::Zero;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::Scalar;

/// Matrix entry: a real scalar or a complex number over one.
pub trait Entry<T: Scalar>:
    Copy
    + PartialEq
    + Zero
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn magnitude(self) -> T;
}

impl<T: Scalar> Entry<T> for T {
    fn magnitude(self) -> T {
        self.abs()
    }
}

impl<T: Scalar> Entry<T> for Complex<T> {
    fn magnitude(self) -> T {
        self.norm_sqr().sqrt()
    }
}

/// Factorization hit a pivot below the singularity threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Singular;

/// Relative pivot threshold below which a matrix is declared singular.
pub const SINGULAR_TOL: f64 = 1e-12;

/// Dense square matrix in row-major order.
#[derive(Debug, Clone)]
pub struct DenseMatrix<E> {
    pub n: usize,
    pub data: Vec<E>,
}

impl<E: Copy + Zero> DenseMatrix<E> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![E::zero(); n * n],
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> E {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.n + j] = v;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: E) {
        let n = self.n;
        let e = &mut self.data[i * n + j];
        *e = *e + v;
    }

    fn max_magnitude<T: Scalar>(&self) -> T
    where
        E: Entry<T>,
    {
        self.data
            .iter()
            .map(|e| e.magnitude())
            .fold(T::zero(), T::max)
    }

    /// In-place LU with partial pivoting.
    pub fn lu_factor<T: Scalar>(mut self) -> Result<DenseLu<E>, Singular>
    where
        E: Entry<T>,
    {
        let n = self.n;
        let tol = T::of(SINGULAR_TOL) * self.max_magnitude();
        let mut pivots = vec![0usize; n];
        for j in 0..n {
            let mut p = j;
            let mut best = self.get(j, j).magnitude();
            for i in j + 1..n {
                let m = self.get(i, j).magnitude();
                if m > best {
                    best = m;
                    p = i;
                }
            }
            if best <= tol {
                return Err(Singular);
            }
            pivots[j] = p;
            if p != j {
                for k in 0..n {
                    let a = self.get(j, k);
                    let b = self.get(p, k);
                    self.set(j, k, b);
                    self.set(p, k, a);
                }
            }
            let d = self.get(j, j);
            for i in j + 1..n {
                let l = self.get(i, j) / d;
                self.set(i, j, l);
                if l != E::zero() {
                    for k in j + 1..n {
                        let v = self.get(i, k) - l * self.get(j, k);
                        self.set(i, k, v);
                    }
                }
            }
        }
        Ok(DenseLu { lu: self, pivots })
    }
}

/// Factored dense matrix.
#[derive(Debug, Clone)]
pub struct DenseLu<E> {
    lu: DenseMatrix<E>,
    pivots: Vec<usize>,
}

impl<E> DenseLu<E> {
    pub fn solve<T: Scalar>(&self, rhs: &mut [E])
    where
        E: Entry<T>,
    {
        let n = self.lu.n;
        debug_assert_eq!(rhs.len(), n);
        // The factor swaps whole rows (prior L columns included), so all row
        // interchanges must be applied before the triangular solves.
        for j in 0..n {
            rhs.swap(j, self.pivots[j]);
        }
        for j in 0..n {
            let xj = rhs[j];
            for i in j + 1..n {
                rhs[i] = rhs[i] - self.lu.get(i, j) * xj;
            }
        }
        for j in (0..n).rev() {
            rhs[j] = rhs[j] / self.lu.get(j, j);
            let xj = rhs[j];
            for i in 0..j {
                rhs[i] = rhs[i] - self.lu.get(i, j) * xj;
            }
        }
    }
}

/// Banded matrix in LAPACK-style band storage with `kl` extra rows for
/// pivoting fill-in. Entry (i, j) with -ku <= i - j <= kl lives at storage
/// row kl + ku + i - j of column j.
#[derive(Debug, Clone)]
pub struct BandMatrix<E> {
    pub n: usize,
    pub kl: usize,
    pub ku: usize,
    rows: usize,
    data: Vec<E>,
}

impl<E: Copy + Zero> BandMatrix<E> {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let rows = 2 * kl + ku + 1;
        Self {
            n,
            kl,
            ku,
            rows,
            data: vec![E::zero(); rows * n],
        }
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(i + self.ku + self.kl >= j && j + self.kl >= i);
        j * self.rows + (self.kl + self.ku + i - j)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> E {
        self.data[self.idx(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        let k = self.idx(i, j);
        self.data[k] = v;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: E) {
        let k = self.idx(i, j);
        self.data[k] = self.data[k] + v;
    }

    pub fn clear(&mut self) {
        self.data.fill(E::zero());
    }

    fn max_magnitude<T: Scalar>(&self) -> T
    where
        E: Entry<T>,
    {
        self.data
            .iter()
            .map(|e| e.magnitude())
            .fold(T::zero(), T::max)
    }

    /// In-place banded LU with row partial pivoting (gbtrf-style). Fill-in is
    /// confined to the kl extra superdiagonals reserved in storage.
    pub fn lu_factor<T: Scalar>(mut self) -> Result<BandLu<E>, Singular>
    where
        E: Entry<T>,
    {
        let n = self.n;
        let (kl, ku) = (self.kl, self.ku);
        let tol = T::of(SINGULAR_TOL) * self.max_magnitude();
        let mut pivots = vec![0usize; n];
        for j in 0..n {
            let imax = (j + kl).min(n - 1);
            let mut p = j;
            let mut best = self.get(j, j).magnitude();
            for i in j + 1..=imax {
                let m = self.get(i, j).magnitude();
                if m > best {
                    best = m;
                    p = i;
                }
            }
            if best <= tol {
                return Err(Singular);
            }
            pivots[j] = p;
            let kmax = (j + kl + ku).min(n - 1);
            if p != j {
                for k in j..=kmax {
                    let a = self.get(j, k);
                    let b = self.get(p, k);
                    self.set(j, k, b);
                    self.set(p, k, a);
                }
            }
            let d = self.get(j, j);
            for i in j + 1..=imax {
                let l = self.get(i, j) / d;
                self.set(i, j, l);
                if l != E::zero() {
                    for k in j + 1..=kmax {
                        let v = self.get(i, k) - l * self.get(j, k);
                        self.set(i, k, v);
                    }
                }
            }
        }
        Ok(BandLu { lu: self, pivots })
    }
}

/// Factored banded matrix.
#[derive(Debug, Clone)]
pub struct BandLu<E> {
    lu: BandMatrix<E>,
    pivots: Vec<usize>,
}

impl<E> BandLu<E> {
    pub fn solve<T: Scalar>(&self, rhs: &mut [E])
    where
        E: Entry<T>,
    {
        let n = self.lu.n;
        let (kl, ku) = (self.lu.kl, self.lu.ku);
        debug_assert_eq!(rhs.len(), n);
        for j in 0..n {
            rhs.swap(j, self.pivots[j]);
            let xj = rhs[j];
            if xj != E::zero() {
                for i in j + 1..=(j + kl).min(n - 1) {
                    rhs[i] = rhs[i] - self.lu.get(i, j) * xj;
                }
            }
        }
        for j in (0..n).rev() {
            rhs[j] = rhs[j] / self.lu.get(j, j);
            let xj = rhs[j];
            if xj != E::zero() {
                let lo = j.saturating_sub(kl + ku);
                for i in lo..j {
                    rhs[i] = rhs[i] - self.lu.get(i, j) * xj;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn dense_solves_known_system() {
        // [[2, 1], [1, 3]] x = [5, 10] -> x = [1, 3]
        let mut a = DenseMatrix::<f64>::zeros(2);
        a.set(0, 0, 2.0);
        a.set(0, 1, 1.0);
        a.set(1, 0, 1.0);
        a.set(1, 1, 3.0);
        let lu = a.lu_factor().unwrap();
        let mut b = vec![5.0, 10.0];
        lu.solve(&mut b);
        assert!((b[0] - 1.0).abs() < 1e-14);
        assert!((b[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn dense_pivots_on_zero_diagonal() {
        let mut a = DenseMatrix::<f64>::zeros(2);
        a.set(0, 1, 1.0);
        a.set(1, 0, 1.0);
        let lu = a.lu_factor().unwrap();
        let mut b = vec![3.0, 7.0];
        lu.solve(&mut b);
        assert_eq!(b, vec![7.0, 3.0]);
    }

    #[test]
    fn dense_detects_singular() {
        let mut a = DenseMatrix::<f64>::zeros(2);
        a.set(0, 0, 1.0);
        a.set(0, 1, 2.0);
        a.set(1, 0, 2.0);
        a.set(1, 1, 4.0);
        assert!(a.lu_factor().is_err());
    }

    #[test]
    fn band_matches_dense_on_random_systems() {
        // Deterministic LCG so the test needs no RNG dependency here.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64) / ((1u64 << 53) as f64) - 0.5
        };
        for trial in 0..50 {
            let n = 3 + trial % 12;
            let kl = 1 + trial % 3;
            let ku = 1 + (trial / 3) % 3;
            let mut band = BandMatrix::<f64>::zeros(n, kl, ku);
            let mut dense = DenseMatrix::<f64>::zeros(n);
            for i in 0..n {
                for j in 0..n {
                    if i + ku >= j && j + kl >= i {
                        let v = next() + if i == j { 2.0 } else { 0.0 };
                        band.set(i, j, v);
                        dense.set(i, j, v);
                    }
                }
            }
            let mut rhs: Vec<f64> = (0..n).map(|_| next()).collect();
            let mut rhs2 = rhs.clone();
            band.lu_factor().unwrap().solve(&mut rhs);
            dense.lu_factor().unwrap().solve(&mut rhs2);
            for (a, b) in rhs.iter().zip(&rhs2) {
                assert!((a - b).abs() < 1e-10, "band {a} vs dense {b}");
            }
        }
    }

    #[test]
    fn band_complex_with_pivoting() {
        // Tridiagonal with a small diagonal so every column pivots on the
        // subdiagonal.
        let n = 5;
        let mut band = BandMatrix::<Complex64>::zeros(n, 1, 1);
        let mut dense = DenseMatrix::<Complex64>::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if i.abs_diff(j) <= 1 {
                    let v = if i == j {
                        Complex64::new(1e-3, 0.0)
                    } else {
                        Complex64::new(1.0, (i as f64) - (j as f64))
                    };
                    band.set(i, j, v);
                    dense.set(i, j, v);
                }
            }
        }
        let rhs: Vec<Complex64> = (0..n).map(|i| Complex64::new(i as f64, 1.0)).collect();
        let mut b1 = rhs.clone();
        let mut b2 = rhs;
        band.lu_factor().unwrap().solve(&mut b1);
        dense.lu_factor().unwrap().solve(&mut b2);
        for (a, b) in b1.iter().zip(&b2) {
            assert!((a - b).norm() < 1e-9, "band {a} dense {b}");
        }
    }
}
