use num_complex::Complex64;
use serde::Serialize;

use super::Tolerances;
use crate::exactnum::{GaussianRational, Scalar};
use crate::linalg::{hankel_window, psd_window_check, ExactMatrix, SequenceWindow};
use crate::ranks::{mrank_with, urank_with, RankCertificate, RankStatus};
use crate::Error;

/// Dense matrix of exact-or-numeric entries, row-major.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self, Error> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(Scalar::is_exact)
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn matmul(&self, rhs: &ScalarMatrix) -> Result<Self, Error> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                entries.push(
                    (0..self.cols).fold(Scalar::zero(), |acc, k| &acc + &(self.get(i, k) * rhs.get(k, j))),
                );
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: rhs.cols,
            entries,
        })
    }

    /// Row `i` scaled by `d_i`.
    fn scale_rows(&self, d: &[Scalar]) -> Self {
        let entries = (0..self.rows)
            .flat_map(|i| self.row(i).iter().map(move |v| v * &d[i]))
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn equals_exact(&self, m: &ExactMatrix) -> bool {
        self.rows == m.rows()
            && self.cols == m.cols()
            && self
                .entries
                .iter()
                .zip(m.entries())
                .all(|(a, b)| a.as_exact() == Some(b))
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, m: &ExactMatrix) -> f64 {
        self.entries
            .iter()
            .zip(m.entries())
            .map(|(a, b)| a.distance(&Scalar::Exact(b.clone())))
            .fold(0.0, f64::max)
    }
}

fn vandermonde_rows(atoms: &[Scalar], cols: usize) -> ScalarMatrix {
    let entries = atoms
        .iter()
        .flat_map(|b| (0..cols).map(move |j| b.pow(j as u32)))
        .collect();
    ScalarMatrix {
        rows: atoms.len(),
        cols,
        entries,
    }
}

fn certified(cert: RankCertificate) -> Result<RankCertificate, Error> {
    match cert.status {
        RankStatus::Certified => Ok(cert),
        status => Err(Error::RankFailed(status)),
    }
}

fn check_residual(recon: &ScalarMatrix, hankel: &ExactMatrix, tol: &Tolerances) -> Result<f64, Error> {
    if recon.equals_exact(hankel) {
        return Ok(0.0);
    }
    let residual = recon.max_abs_diff(hankel);
    let scale = hankel
        .entries()
        .iter()
        .map(|v| v.to_complex64().norm())
        .fold(1.0, f64::max);
    if recon.is_exact() || !(residual <= tol.residual * scale) {
        return Err(Error::RootFindingFailed(format!(
            "factorization residual {residual:e} exceeds tolerance"
        )));
    }
    Ok(residual)
}

/// `H_{w-1,0} = Vᵀ D V`, `V_{ij} = β_i^{j}`, `D = diag(α_i β_i)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VandermondeFactor {
    pub v: ScalarMatrix,
    pub d: Vec<Scalar>,
    pub hankel: ExactMatrix,
    /// Max-entry error of the reconstruction; `0.0` when exact.
    pub residual: f64,
}

impl VandermondeFactor {
    pub fn reconstruct(&self) -> ScalarMatrix {
        self.v
            .transpose()
            .matmul(&self.v.scale_rows(&self.d))
            .expect("shapes agree by construction")
    }
}

pub fn vandermonde_factor(seq: &SequenceWindow, window: usize) -> Result<VandermondeFactor, Error> {
    vandermonde_factor_with(seq, window, &Tolerances::default())
}

pub fn vandermonde_factor_with(seq: &SequenceWindow, window: usize, tol: &Tolerances) -> Result<VandermondeFactor, Error> {
    if window == 0 {
        return Err(Error::Shape("window must be at least 1".into()));
    }
    let hankel = hankel_window(seq, window - 1, 0)?;
    let cert = certified(mrank_with(seq, tol)?)?;
    if window < cert.rank {
        return Err(Error::Shape(format!("window {window} below rank {}", cert.rank)));
    }
    let v = vandermonde_rows(&cert.atoms, window);
    let d: Vec<Scalar> = cert.atoms.iter().zip(&cert.masses).map(|(b, a)| a * b).collect();
    let mut f = VandermondeFactor {
        v,
        d,
        hankel,
        residual: 0.0,
    };
    f.residual = check_residual(&f.reconstruct(), &f.hankel, tol)?;
    Ok(f)
}

/// `H′ = Vᵀ V` on the window augmented by `c′_0 = r`, with one row of `V`
/// per atom repetition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GramianFactor {
    pub v: ScalarMatrix,
    pub augmented: ExactMatrix,
    pub residual: f64,
}

impl GramianFactor {
    pub fn reconstruct(&self) -> ScalarMatrix {
        self.v.transpose().matmul(&self.v).expect("shapes agree by construction")
    }
}

/// Numeric atoms this close to the real axis are treated as real.
const REAL_AXIS: f64 = 1e-8;

pub fn gramian_factor(seq: &SequenceWindow) -> Result<GramianFactor, Error> {
    gramian_factor_with(seq, &Tolerances::default())
}

pub fn gramian_factor_with(seq: &SequenceWindow, tol: &Tolerances) -> Result<GramianFactor, Error> {
    seq.require_start(1)?;
    if !seq.is_real() {
        return Err(Error::NotGramian("sequence has non-real terms".into()));
    }
    let cert = certified(urank_with(seq, tol)?)?;
    let mut rows = Vec::with_capacity(cert.rank);
    for (b, m) in cert.atoms.iter().zip(&cert.masses) {
        let real = match b {
            Scalar::Exact(v) if v.is_real() => b.clone(),
            Scalar::Numeric(z) if z.im.abs() <= REAL_AXIS * z.norm().max(1.0) => {
                Scalar::Numeric(Complex64::new(z.re, 0.0))
            }
            _ => return Err(Error::NotGramian(format!("non-real atom {b}"))),
        };
        let mult = m.to_complex().re.round() as usize;
        rows.extend(std::iter::repeat_n(real, mult));
    }

    let mut terms = vec![GaussianRational::from_int(cert.rank as i64)];
    terms.extend_from_slice(seq.terms());
    let aug = SequenceWindow::new(0, terms)?;
    let w = seq.len() / 2 + 1;
    let augmented = hankel_window(&aug, w - 1, 0)?;
    if !psd_window_check(&augmented)? {
        return Err(Error::NotGramian("augmented Hankel window is not positive semidefinite".into()));
    }
    let mut f = GramianFactor {
        v: vandermonde_rows(&rows, w),
        augmented,
        residual: 0.0,
    };
    f.residual = check_residual(&f.reconstruct(), &f.augmented, tol)?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact_rows(m: &ScalarMatrix) -> Vec<Vec<GaussianRational>> {
        (0..m.rows())
            .map(|i| m.row(i).iter().map(|v| v.as_exact().unwrap().clone()).collect())
            .collect()
    }

    fn ints(rows: &[&[i64]]) -> Vec<Vec<GaussianRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| GaussianRational::from_int(x)).collect())
            .collect()
    }

    #[test]
    fn geometric_factor() {
        let s = SequenceWindow::from_ints(0, &[6, 18, 54, 162, 486]).unwrap();
        let f = vandermonde_factor(&s, 3).unwrap();
        assert_eq!(exact_rows(&f.v), ints(&[&[1, 3, 9]]));
        assert_eq!(f.d, vec![Scalar::from_int(6)]);
        assert_eq!(
            exact_rows(&f.reconstruct()),
            ints(&[&[6, 18, 54], &[18, 54, 162], &[54, 162, 486]])
        );
        assert_eq!(f.residual, 0.0);
    }

    #[test]
    fn constant_factor() {
        let s = SequenceWindow::from_ints(0, &[1, 1, 1, 1, 1]).unwrap();
        let f = vandermonde_factor(&s, 2).unwrap();
        assert_eq!(exact_rows(&f.v), ints(&[&[1, 1]]));
        assert_eq!(f.d, vec![Scalar::one()]);
    }

    #[test]
    fn fibonacci_factor_is_numeric() {
        let s = SequenceWindow::from_ints(0, &[1, 1, 2, 3, 5, 8, 13]).unwrap();
        let f = vandermonde_factor(&s, 3).unwrap();
        assert_eq!(f.v.rows(), 2);
        assert!(f.residual < 1e-9);
    }

    #[test]
    fn window_checks() {
        let s = SequenceWindow::from_ints(0, &[1, 1, 2, 3, 5, 8, 13]).unwrap();
        assert!(matches!(vandermonde_factor(&s, 1), Err(Error::Shape(_))));
        assert!(matches!(vandermonde_factor(&s, 5), Err(Error::PrefixTooShort { .. })));
    }

    #[test]
    fn gramian_examples() {
        let f = gramian_factor(&SequenceWindow::from_ints(1, &[5, 13, 35, 97]).unwrap()).unwrap();
        assert_eq!(f.augmented.row(0)[..2], ints(&[&[2, 5]])[0][..]);
        assert_eq!(f.augmented.row(1)[..2], ints(&[&[5, 13]])[0][..]);
        assert_eq!(exact_rows(&f.v), ints(&[&[1, 2, 4], &[1, 3, 9]]));

        let f = gramian_factor(&SequenceWindow::from_ints(1, &[2, 2, 2, 2]).unwrap()).unwrap();
        assert_eq!(exact_rows(&f.v), ints(&[&[1, 1, 1], &[1, 1, 1]]));
        assert_eq!(f.augmented.rank(), 1);

        let f = gramian_factor(&SequenceWindow::from_ints(1, &[0, 2, 0, 2]).unwrap()).unwrap();
        assert_eq!(exact_rows(&f.v), ints(&[&[1, 1, 1], &[1, -1, 1]]));
        assert_eq!(f.residual, 0.0);
    }

    #[test]
    fn complex_sequences_are_not_gramian() {
        let s = SequenceWindow::new(
            1,
            (1..=4).map(|k| GaussianRational::i().pow(k)).collect(),
        )
        .unwrap();
        assert!(matches!(gramian_factor(&s), Err(Error::NotGramian(_))));
        // real power sums of a conjugate pair
        let s = SequenceWindow::from_ints(1, &[0, -2, 0, 2, 0]).unwrap();
        assert!(matches!(gramian_factor(&s), Err(Error::NotGramian(_))));
    }
}
