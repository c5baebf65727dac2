use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{complex_solve, relative_residual, AtomicMeasure, Tolerances};
use crate::exactnum::{GaussianRational, Scalar};
use crate::linalg::{solve, ExactMatrix, SequenceWindow};
use crate::Error;

/// The binary form `∑_j C(2r′,j) c_{j+t} x^{2r′-j} y^j`, optionally with a
/// decomposition into `∑ λ_j (β_j/α_j)^t (α_j x + β_j y)^{2r′}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WaringForm {
    pub r_prime: usize,
    pub t: usize,
    pub coeff: Vec<GaussianRational>,
    /// `(λ_j, α_j, β_j)`, with `α_j = 1` for decompositions built here.
    pub decomposition: Vec<(Scalar, Scalar, Scalar)>,
}

impl WaringForm {
    pub fn is_zero(&self) -> bool {
        self.coeff.iter().all(Zero::is_zero)
    }
}

fn binomial(n: usize, k: usize) -> GaussianRational {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    GaussianRational::from_bigint(acc)
}

/// `t` is an absolute sequence index.
pub fn waring_build(seq: &SequenceWindow, r_prime: usize, t: usize) -> Result<WaringForm, Error> {
    let deg = 2 * r_prime;
    let short = || Error::PrefixTooShort {
        needed: (t + deg + 1).saturating_sub(seq.start_index().min(t)),
        have: seq.len(),
    };
    if t < seq.start_index() {
        return Err(short());
    }
    let coeff = (0..=deg)
        .map(|j| seq.term(t + j).map(|c| &binomial(deg, j) * c).ok_or_else(short))
        .collect::<Result<_, _>>()?;
    Ok(WaringForm {
        r_prime,
        t,
        coeff,
        decomposition: Vec::new(),
    })
}

/// Solves `∑_j λ_j β_j^{t+k} = c_{t+k}` for `k < len(atoms)` and stores the
/// decomposition with `α_j = 1`.
pub fn waring_decompose(form: &WaringForm, atoms: &[Scalar]) -> Result<WaringForm, Error> {
    let deg = 2 * form.r_prime;
    let r = atoms.len();
    if r > deg + 1 {
        return Err(Error::Shape(format!("{r} atoms for a form of degree {deg}")));
    }
    let rhs: Vec<GaussianRational> = (0..r).map(|k| &form.coeff[k] / &binomial(deg, k)).collect();
    let power = |b: &Scalar, k: usize| b.pow((form.t + k) as u32);

    let exact: Option<Vec<&GaussianRational>> = atoms.iter().map(Scalar::as_exact).collect();
    let lambdas: Vec<Scalar> = match exact {
        Some(betas) => {
            let entries = (0..r)
                .flat_map(|k| betas.iter().map(move |b| b.pow((form.t + k) as u32)))
                .collect();
            solve(&ExactMatrix::new(r, r, entries)?, &rhs)?
                .into_iter()
                .map(Scalar::Exact)
                .collect()
        }
        None => {
            let a = (0..r)
                .map(|k| atoms.iter().map(|b| power(b, k).to_complex()).collect())
                .collect();
            let b = rhs.iter().map(GaussianRational::to_complex64).collect();
            complex_solve(a, b)?.into_iter().map(Scalar::Numeric).collect()
        }
    };
    Ok(WaringForm {
        decomposition: lambdas
            .into_iter()
            .zip(atoms)
            .map(|(l, b)| (l, Scalar::one(), b.clone()))
            .collect(),
        ..form.clone()
    })
}

/// Coefficients of `∑ λ_j (β_j/α_j)^t (α_j x + β_j y)^{2r′}` in the basis
/// `x^{2r′-k} y^k`.
pub fn waring_expand(decomposition: &[(Scalar, Scalar, Scalar)], r_prime: usize, t: usize) -> Vec<Scalar> {
    let deg = 2 * r_prime;
    (0..=deg)
        .map(|k| {
            let c = Scalar::Exact(binomial(deg, k));
            let s = decomposition.iter().fold(Scalar::zero(), |acc, (l, a, b)| {
                let w = &(b / a).pow(t as u32) * &(&a.pow((deg - k) as u32) * &b.pow(k as u32));
                &acc + &(l * &w)
            });
            &c * &s
        })
        .collect()
}

pub fn waring_verify(form: &WaringForm, mu: &AtomicMeasure) -> bool {
    waring_verify_with(form, mu, &Tolerances::default())
}

/// Fits `λ` on the measure's atoms, then requires the expansion to match
/// every stored coefficient and `λ_j = mass_j · β_j`, the normalization that
/// ties the form to `c_n = ∑ mass_j β_j^{n+1}`.
pub fn waring_verify_with(form: &WaringForm, mu: &AtomicMeasure, tol: &Tolerances) -> bool {
    if mu.is_empty() {
        return form.is_zero();
    }
    let Ok(fit) = waring_decompose(form, mu.support()) else {
        return false;
    };
    let expanded = waring_expand(&fit.decomposition, form.r_prime, form.t);
    let coupled: Vec<Scalar> = mu.support().iter().zip(mu.masses()).map(|(b, m)| m * b).collect();
    let lambdas: Vec<Scalar> = fit.decomposition.iter().map(|(l, _, _)| l.clone()).collect();
    if expanded.iter().chain(&lambdas).chain(&coupled).all(Scalar::is_exact) {
        let form_ok = expanded
            .iter()
            .zip(&form.coeff)
            .all(|(e, c)| e.as_exact() == Some(c));
        return form_ok && lambdas == coupled;
    }
    let want: Vec<Complex64> = form.coeff.iter().map(GaussianRational::to_complex64).collect();
    let lam_want: Vec<Complex64> = coupled.iter().map(Scalar::to_complex).collect();
    relative_residual(expanded.iter().map(Scalar::to_complex), &want) <= tol.residual
        && relative_residual(lambdas.iter().map(Scalar::to_complex), &lam_want) <= tol.residual
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::recover_measure;

    fn ints(v: &[i64]) -> Vec<GaussianRational> {
        v.iter().map(|&x| GaussianRational::from_int(x)).collect()
    }

    #[test]
    fn build_examples() {
        let s = SequenceWindow::from_ints(0, &[6, 18, 54, 162]).unwrap();
        assert_eq!(waring_build(&s, 1, 0).unwrap().coeff, ints(&[6, 36, 54]));
        assert_eq!(waring_build(&s, 1, 1).unwrap().coeff, ints(&[18, 108, 162]));
        assert!(waring_build(&SequenceWindow::from_ints(0, &[0, 0, 0]).unwrap(), 1, 0)
            .unwrap()
            .is_zero());
        assert!(matches!(waring_build(&s, 2, 0), Err(Error::PrefixTooShort { .. })));
    }

    #[test]
    fn geometric_decomposition() {
        let s = SequenceWindow::from_ints(0, &[6, 18, 54, 162, 486]).unwrap();
        let mu = recover_measure(&s).unwrap();
        let form = waring_build(&s, 1, 0).unwrap();
        assert!(waring_verify(&form, &mu));
        let fit = waring_decompose(&form, mu.support()).unwrap();
        // 6 (x + 3y)^2
        assert_eq!(fit.decomposition, vec![(Scalar::from_int(6), Scalar::one(), Scalar::from_int(3))]);
        for t in 1..=2 {
            let built = waring_build(&s, 1, t).unwrap();
            let expanded = waring_expand(&fit.decomposition, 1, t);
            assert!(expanded.iter().zip(&built.coeff).all(|(e, c)| e.as_exact() == Some(c)));
        }
    }

    #[test]
    fn zero_form_and_mismatch() {
        let z = waring_build(&SequenceWindow::from_ints(0, &[0, 0, 0]).unwrap(), 1, 0).unwrap();
        assert!(waring_verify(&z, &AtomicMeasure::empty()));
        let s = SequenceWindow::from_ints(0, &[6, 18, 54]).unwrap();
        let wrong = AtomicMeasure::from_exact(ints(&[2]), ints(&[2])).unwrap();
        assert!(!waring_verify(&waring_build(&s, 1, 0).unwrap(), &wrong));
    }

    #[test]
    fn fibonacci_numeric_decomposition() {
        let s = SequenceWindow::from_ints(0, &[1, 1, 2, 3, 5, 8, 13, 21]).unwrap();
        let mu = recover_measure(&s).unwrap();
        for t in 0..=2 {
            assert!(waring_verify(&waring_build(&s, 2, t).unwrap(), &mu));
        }
    }
}
