//! Numeric boundary and structural reconstructions: root finding, atomic
//! measures and their moments, Hankel factorizations, binary-form Waring
//! decompositions and rational generating functions.
//!
//! Simplicity and multiplicity are always decided on exact polynomials; the
//! numeric code here only locates roots that are already known to be simple
//! factors of an exact squarefree decomposition.

mod factor;
mod genfun;
mod measure;
mod roots;
mod waring;

pub use factor::{
    gramian_factor, gramian_factor_with, vandermonde_factor, vandermonde_factor_with, GramianFactor, ScalarMatrix,
    VandermondeFactor,
};
pub use genfun::{genfun, genfun_with, RationalGenFun};
pub use measure::{moments, numeric_moments, recover_measure, recover_measure_with, AtomicMeasure, Convention};
pub use roots::{characteristic_roots, find_roots};
pub(crate) use roots::near_positive_integer;
pub use waring::{waring_build, waring_decompose, waring_expand, waring_verify, waring_verify_with, WaringForm};

use num_complex::Complex64;
use num_traits::Zero;

use crate::Error;

/// Environment variable overriding [`Tolerances::residual`].
pub const TOLERANCE_ENV: &str = "SEQRANK_TOL";

/// Numeric thresholds used wherever floats enter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Relative root certificate `|p(z)| ≤ root · ∑|a_k||z|^k`.
    pub root: f64,
    /// Relative residual accepted when re-verifying numeric reconstructions.
    pub residual: f64,
    /// Distance to the nearest integer accepted for numeric masses.
    pub integer_mass: f64,
    pub max_iterations: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            root: 1e-12,
            residual: 1e-9,
            integer_mass: 1e-6,
            max_iterations: 200,
        }
    }
}

impl Tolerances {
    /// Defaults, with `residual` taken from `SEQRANK_TOL` when it holds a
    /// positive decimal.
    pub fn from_env() -> Result<Self, Error> {
        let mut tol = Self::default();
        if let Ok(raw) = std::env::var(TOLERANCE_ENV) {
            tol.residual = parse_tolerance(&raw)?;
        }
        Ok(tol)
    }
}

pub fn parse_tolerance(raw: &str) -> Result<f64, Error> {
    match raw.trim().parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(Error::Parse(format!("{TOLERANCE_ENV} must be a positive decimal, got {raw:?}"))),
    }
}

/// Gaussian elimination with partial pivoting on a dense complex system.
pub(crate) fn complex_solve(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Result<Vec<Complex64>, Error> {
    let n = b.len();
    if a.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::Shape("complex system must be square".into()));
    }
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .unwrap();
        if a[piv][col].norm() == 0.0 {
            return Err(Error::SingularMatrix);
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f.is_zero() {
                continue;
            }
            for k in col..n {
                let v = a[col][k];
                a[row][k] -= f * v;
            }
            let v = b[col];
            b[row] -= f * v;
        }
    }
    let mut x = vec![Complex64::zero(); n];
    for row in (0..n).rev() {
        let s: Complex64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularMatrix);
    }
    Ok(x)
}

/// `max_n |got_n - want_n| / max(1, |want_n|)`.
pub(crate) fn relative_residual<'a>(got: impl IntoIterator<Item = Complex64>, want: impl IntoIterator<Item = &'a Complex64>) -> f64 {
    got.into_iter()
        .zip(want)
        .map(|(g, w)| (g - w).norm() / w.norm().max(1.0))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_solve_small_system() {
        let a = vec![
            vec![Complex64::new(0.0, 0.0), Complex64::new(2.0, 0.0)],
            vec![Complex64::new(1.0, 1.0), Complex64::new(1.0, 0.0)],
        ];
        let x = complex_solve(a, vec![Complex64::new(4.0, 0.0), Complex64::new(3.0, 1.0)]).unwrap();
        assert!((x[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((x[1] - Complex64::new(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn singular_complex_system() {
        let a = vec![vec![Complex64::new(1.0, 0.0); 2]; 2];
        assert_eq!(complex_solve(a, vec![Complex64::zero(); 2]), Err(Error::SingularMatrix));
    }

    #[test]
    fn tolerance_parsing() {
        assert_eq!(parse_tolerance("1e-6").unwrap(), 1e-6);
        assert!(parse_tolerance("-1").is_err());
        assert!(parse_tolerance("abc").is_err());
    }
}
