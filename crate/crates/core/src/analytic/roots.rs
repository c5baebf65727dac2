use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::Tolerances;
use crate::exactnum::{squarefree_decomposition, ExactPoly, GaussianRational, Scalar};
use crate::Error;

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    // value and derivative
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn magnitude_scale(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// All complex roots of `p` by Aberth–Ehrlich simultaneous iteration.
///
/// Each returned root satisfies `|p(z)| ≤ tol · ∑|a_k||z|^k`. Multiplicities
/// are not decided here; callers pass squarefree polynomials when they need
/// well-conditioned roots.
pub fn find_roots(p: &ExactPoly, tol: f64) -> Result<Vec<Complex64>, Error> {
    find_roots_with(p, tol, Tolerances::default().max_iterations)
}

pub(crate) fn find_roots_with(p: &ExactPoly, tol: f64, max_iter: usize) -> Result<Vec<Complex64>, Error> {
    let n = match p.degree() {
        None | Some(0) => {
            return Err(Error::DegenerateInput("root finding needs degree at least 1".into()))
        }
        Some(n) => n,
    };
    let raw = p.to_complex();
    let lead = raw[n];
    let coeffs: Vec<Complex64> = raw.iter().map(|c| c / lead).collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::RootFindingFailed("coefficients overflow f64".into()));
    }
    if n == 1 {
        return Ok(vec![-coeffs[0]]);
    }

    // Zero roots are exact: strip them before iterating.
    let zeros = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let core = &coeffs[zeros..];
    let m = core.len() - 1;
    let mut roots = vec![Complex64::zero(); zeros];
    if m == 0 {
        return Ok(roots);
    }

    let radius = core[0].norm().powf(1.0 / m as f64).max(f64::MIN_POSITIVE);
    for attempt in 0..4 {
        let offset = 0.4 + 0.7 * attempt as f64;
        let r = radius * (1.0 + 0.25 * attempt as f64);
        let mut z: Vec<Complex64> = (0..m)
            .map(|k| Complex64::from_polar(r, TAU * k as f64 / m as f64 + offset))
            .collect();
        if let Some(found) = aberth_iterate(core, &mut z, tol, max_iter) {
            roots.extend(found);
            return Ok(roots);
        }
    }
    Err(Error::RootFindingFailed(format!(
        "no convergence after {max_iter} iterations on a degree-{n} polynomial"
    )))
}

fn aberth_iterate(coeffs: &[Complex64], z: &mut [Complex64], tol: f64, max_iter: usize) -> Option<Vec<Complex64>> {
    let m = z.len();
    for _ in 0..max_iter {
        let mut max_step: f64 = 0.0;
        for k in 0..m {
            let (pv, dp) = horner(coeffs, z[k]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = if dp.norm() == 0.0 {
                Complex64::new(tol.max(1e-8), tol.max(1e-8))
            } else {
                pv / dp
            };
            let repulsion: Complex64 = (0..m)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::zero()
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                return None;
            }
            z[k] -= step;
            max_step = max_step.max(step.norm() / z[k].norm().max(1.0));
        }
        if max_step <= tol * 1e-2 || z.iter().all(|&zk| certified(coeffs, zk, tol)) {
            polish(coeffs, z);
            if z.iter().all(|&zk| certified(coeffs, zk, tol)) {
                return Some(z.to_vec());
            }
        }
    }
    None
}

fn certified(coeffs: &[Complex64], z: Complex64, tol: f64) -> bool {
    let (pv, _) = horner(coeffs, z);
    pv.norm() <= tol * magnitude_scale(coeffs, z)
}

/// A few Newton steps per root, kept only while they shrink `|p|`.
fn polish(coeffs: &[Complex64], z: &mut [Complex64]) {
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (pv, dp) = horner(coeffs, *zk);
            if dp.norm() == 0.0 || pv.norm() == 0.0 {
                break;
            }
            let cand = *zk - pv / dp;
            if horner(coeffs, cand).0.norm() < pv.norm() {
                *zk = cand;
            } else {
                break;
            }
        }
    }
}

/// Continued-fraction convergents of `x` that lie within a relative
/// distance of `1e-6`, smallest denominator first.
fn rational_candidates(x: f64) -> Vec<BigRational> {
    const MAX_DEN: i128 = 10_000_000;
    if !x.is_finite() {
        return Vec::new();
    }
    let window = 1e-6 * x.abs().max(1.0);
    let mut out = Vec::new();
    if x.abs() <= window {
        out.push(BigRational::zero());
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut rem = x;
    for _ in 0..40 {
        let a = rem.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > MAX_DEN {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let approx = h1 as f64 / k1 as f64;
        if (approx - x).abs() <= window && h1 != 0 {
            out.push(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = rem - a;
        if frac.abs() < 1e-15 {
            break;
        }
        rem = 1.0 / frac;
    }
    out.dedup();
    out
}

/// Gaussian rationals near `z` that are exact roots of `p`.
fn exact_root_near(p: &ExactPoly, z: Complex64) -> Option<GaussianRational> {
    let res = rational_candidates(z.re);
    let ims = rational_candidates(z.im);
    for re in res.iter().take(6) {
        for im in ims.iter().take(6) {
            let cand = GaussianRational::new(re.clone(), im.clone());
            if p.eval(&cand).is_zero() {
                return Some(cand);
            }
        }
    }
    None
}

/// Roots of `p` with exact multiplicities from the squarefree decomposition.
///
/// Roots that are Gaussian rationals are returned as exact values, verified
/// by exact evaluation and deflation; the rest come back numeric. The result
/// is sorted by [`Scalar::display_order`].
pub fn characteristic_roots(p: &ExactPoly, tol: &Tolerances) -> Result<Vec<(Scalar, usize)>, Error> {
    let mut out = Vec::new();
    for (factor, mult) in squarefree_decomposition(p)? {
        for root in squarefree_roots(&factor, tol)? {
            out.push((root, mult));
        }
    }
    out.sort_by(|a, b| a.0.display_order(&b.0));
    Ok(out)
}

fn squarefree_roots(f: &ExactPoly, tol: &Tolerances) -> Result<Vec<Scalar>, Error> {
    if f.degree() == Some(1) {
        let root = &(-&f.coeff(0)) / &f.coeff(1);
        return Ok(vec![Scalar::Exact(root)]);
    }
    let mut approx = find_roots_with(f, tol.root, tol.max_iterations)?;
    if f.is_real() {
        snap_real(&mut approx);
    }
    let mut remaining = f.clone();
    let mut out = Vec::with_capacity(approx.len());
    for z in approx {
        let exact = (remaining.degree() > Some(0))
            .then(|| exact_root_near(&remaining, z))
            .flatten();
        match exact {
            Some(root) => {
                remaining = remaining.div_exact(&ExactPoly::linear_factor(&root))?;
                out.push(Scalar::Exact(root));
            }
            None => out.push(Scalar::Numeric(z)),
        }
    }
    Ok(out)
}

/// Roots of a real squarefree polynomial come in conjugate pairs, so a root
/// near the axis with no partner near its conjugate is real.
fn snap_real(roots: &mut [Complex64]) {
    let snapped: Vec<Complex64> = roots
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let scale = z.norm().max(1.0);
            let lonely = !roots
                .iter()
                .enumerate()
                .any(|(j, w)| j != i && (w - z.conj()).norm() <= 1e-6 * scale);
            if z.im != 0.0 && z.im.abs() <= 1e-8 * scale && lonely {
                Complex64::new(z.re, 0.0)
            } else {
                *z
            }
        })
        .collect();
    roots.copy_from_slice(&snapped);
}

/// `true` when `x` is within `tol` of a positive integer; returns it.
pub(crate) fn near_positive_integer(x: Complex64, tol: f64) -> Option<u64> {
    let r = x.re.round();
    (r >= 1.0 && (x - Complex64::new(r, 0.0)).norm() < tol).then(|| r.to_u64()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close_set(mut got: Vec<Complex64>, mut want: Vec<Complex64>, eps: f64) {
        let key = |z: &Complex64| (z.re, z.im);
        got.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        want.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).norm() < eps, "{g} vs {w}");
        }
    }

    #[test]
    fn golden_ratio_roots() {
        let r = find_roots(&ExactPoly::from_ints(&[-1, -1, 1]), 1e-12).unwrap();
        let s5 = 5f64.sqrt();
        close_set(
            r,
            vec![Complex64::new((1.0 + s5) / 2.0, 0.0), Complex64::new((1.0 - s5) / 2.0, 0.0)],
            1e-12,
        );
    }

    #[test]
    fn real_roots_lose_imaginary_noise() {
        let roots = characteristic_roots(&ExactPoly::from_ints(&[-1, -1, 1]), &Tolerances::default()).unwrap();
        assert!(roots.iter().all(|(z, _)| z.to_complex().im == 0.0), "{roots:?}");
        // a genuine conjugate pair close to the axis is kept
        let mut pair = [Complex64::new(1.0, 1e-9), Complex64::new(1.0, -1e-9)];
        snap_real(&mut pair);
        assert_eq!(pair[0].im, 1e-9);
    }

    #[test]
    fn imaginary_unit_roots() {
        let r = find_roots(&ExactPoly::from_ints(&[1, 0, 1]), 1e-12).unwrap();
        close_set(r, vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)], 1e-12);
    }

    #[test]
    fn cubic_with_integer_roots() {
        let r = find_roots(&ExactPoly::from_ints(&[-6, 11, -6, 1]), 1e-12).unwrap();
        close_set(
            r,
            vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0)],
            1e-10,
        );
    }

    #[test]
    fn zero_roots_are_stripped() {
        let r = find_roots(&ExactPoly::from_ints(&[0, 0, -4, 1]), 1e-12).unwrap();
        close_set(
            r,
            vec![Complex64::zero(), Complex64::zero(), Complex64::new(4.0, 0.0)],
            1e-12,
        );
    }

    #[test]
    fn reconstruction_matches_coefficients() {
        let p = ExactPoly::from_ints(&[7, -3, 0, 5, 2, 1]);
        let roots = find_roots(&p, 1e-12).unwrap();
        let mut prod = vec![Complex64::new(1.0, 0.0)];
        for z in &roots {
            let mut next = vec![Complex64::zero(); prod.len() + 1];
            for (k, c) in prod.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * z;
            }
            prod = next;
        }
        for (got, want) in prod.iter().zip(p.to_complex()) {
            assert!((got - want).norm() < 1e-9 * 7.0, "{got} vs {want}");
        }
    }

    #[test]
    fn exact_roots_with_multiplicity() {
        let half = GaussianRational::ratio(1, 2);
        let gi = GaussianRational::from_parts(-3, 4, 2, 5);
        let p = ExactPoly::from_roots(&[half.clone(), half.clone(), gi.clone(), GaussianRational::from_int(7)]);
        let roots = characteristic_roots(&p, &Tolerances::default()).unwrap();
        assert_eq!(
            roots,
            vec![
                (Scalar::Exact(half), 2),
                (Scalar::Exact(gi), 1),
                (Scalar::Exact(GaussianRational::from_int(7)), 1),
            ]
        );
    }

    #[test]
    fn irrational_roots_stay_numeric() {
        let roots = characteristic_roots(&ExactPoly::from_ints(&[-2, 0, 1]), &Tolerances::default()).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|(r, m)| !r.is_exact() && *m == 1));
        assert!((roots[0].0.abs() - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn candidates_find_small_fractions() {
        let c = rational_candidates(-7.0 / 19.0 + 1e-13);
        assert!(c.contains(&BigRational::new(BigInt::from(-7), BigInt::from(19))));
        assert_eq!(rational_candidates(1e-14), vec![BigRational::zero()]);
    }
}
