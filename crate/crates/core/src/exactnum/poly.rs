use std::fmt::{self, Write as _};
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::GaussianRational;
use crate::Error;

/// Univariate polynomial over the Gaussian rationals, lowest degree first.
///
/// Trailing zeros are trimmed on construction, so the zero polynomial is the
/// empty coefficient list and `degree()` is `None` for it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExactPoly {
    coeffs: Vec<GaussianRational>,
}

impl ExactPoly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    /// `x - root`.
    pub fn linear_factor(root: &GaussianRational) -> Self {
        Self::new(vec![-root, GaussianRational::one()])
    }

    /// `∏ (x - r)` over the given roots (with repetition).
    pub fn from_roots<'a, I: IntoIterator<Item = &'a GaussianRational>>(roots: I) -> Self {
        roots
            .into_iter()
            .fold(Self::one(), |acc, r| &acc * &Self::linear_factor(r))
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<GaussianRational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k`; zero beyond the degree.
    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Result<Self, Error> {
        let lc = self
            .leading()
            .ok_or_else(|| Error::DegenerateInput("monic of the zero polynomial".into()))?;
        let inv = lc.inv().expect("leading coefficient is nonzero");
        Ok(self.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GaussianRational::from_int(k as i64))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, z: &GaussianRational) -> GaussianRational {
        self.coeffs
            .iter()
            .rev()
            .fold(GaussianRational::zero(), |acc, c| &(&acc * z) + c)
    }

    /// `x^d · p(1/x)` for the formal degree `d ≥ deg p`: coefficient list reversed.
    pub fn reversed(&self, formal_degree: usize) -> Self {
        let mut c: Vec<_> = (0..=formal_degree).map(|k| self.coeff(k)).collect();
        c.reverse();
        Self::new(c)
    }

    /// `p(x) · x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![GaussianRational::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self::new(c)
    }

    /// Keep only terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n).cloned().collect())
    }

    /// Euclidean division over the field. Errors on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), Error> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::DegenerateInput("division by the zero polynomial".into()))?;
        let lc_inv = divisor.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut quot = vec![GaussianRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = &rem[k + dd] * &lc_inv;
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &(&q * d);
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, Error> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::DegenerateInput("polynomial division is not exact".into()));
        }
        Ok(q)
    }

    /// Pseudo-remainder `prem(self, divisor)`: remainder of `lc(divisor)^(m-n+1) · self`.
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let (m, n) = (self.degree().unwrap(), divisor.degree().unwrap());
        let lc = divisor.leading().unwrap();
        let factor = lc.pow((m - n + 1) as u32);
        self.scale(&factor).div_rem(divisor).unwrap().1
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(GaussianRational::to_complex64).collect()
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(GaussianRational::is_real)
    }

    /// Human-readable form, lowest degree first: `1 - z - z^2`.
    pub fn display_ascending(&self, var: &str) -> String {
        self.render((0..self.coeffs.len()).collect(), var)
    }

    /// Human-readable form, highest degree first: `x^2 - x - 1`.
    pub fn display_descending(&self, var: &str) -> String {
        self.render((0..self.coeffs.len()).rev().collect(), var)
    }

    fn render(&self, order: Vec<usize>, var: &str) -> String {
        let mut out = String::new();
        for k in order {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let neg_real = c.is_real() && c.re() < &num_rational::BigRational::zero();
            let mag = if neg_real { -c } else { c.clone() };
            if out.is_empty() {
                if neg_real {
                    out.push('-');
                }
            } else {
                out.push_str(if neg_real { " - " } else { " + " });
            }
            let body = if mag.is_real() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            match k {
                0 => out.push_str(&body),
                _ => {
                    if !mag.is_one() {
                        out.push_str(&body);
                    }
                    out.push_str(var);
                    if k > 1 {
                        let _ = write!(out, "^{k}");
                    }
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_descending("x"))
    }
}

impl<'a> Add<&'a ExactPoly> for &'a ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPoly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a ExactPoly> for &'a ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPoly::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a ExactPoly> for &'a ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: &ExactPoly) -> ExactPoly {
        if self.is_zero() || rhs.is_zero() {
            return ExactPoly::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        ExactPoly::new(out)
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        ExactPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Monic gcd by the subresultant remainder sequence.
pub fn poly_gcd(p: &ExactPoly, q: &ExactPoly) -> Result<ExactPoly, Error> {
    match (p.is_zero(), q.is_zero()) {
        (true, true) => return Err(Error::DegenerateInput("gcd of two zero polynomials".into())),
        (true, false) => return q.monic(),
        (false, true) => return p.monic(),
        _ => {}
    }
    let (mut a, mut b) = if p.degree() >= q.degree() {
        (p.clone(), q.clone())
    } else {
        (q.clone(), p.clone())
    };
    let mut g = GaussianRational::one();
    let mut h = GaussianRational::one();
    loop {
        if b.degree() == Some(0) {
            return Ok(ExactPoly::one());
        }
        let delta = (a.degree().unwrap() - b.degree().unwrap()) as u32;
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return b.monic();
        }
        a = b;
        b = r.scale(&(&g * &h.pow(delta)).inv().unwrap());
        g = a.leading().unwrap().clone();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 {
            h
        } else {
            &g.pow(delta) / &h.pow(delta - 1)
        };
    }
}

/// Resultant by the Euclidean remainder sequence over the field.
pub fn resultant(p: &ExactPoly, q: &ExactPoly) -> Result<GaussianRational, Error> {
    let (Some(m), Some(n)) = (p.degree(), q.degree()) else {
        return Err(Error::DegenerateInput("resultant with the zero polynomial".into()));
    };
    if n == 0 {
        return Ok(q.coeff(0).pow(m as u32));
    }
    if m < n {
        let r = resultant(q, p)?;
        return Ok(if (m * n) % 2 == 1 { -r } else { r });
    }
    let (_, rem) = p.div_rem(q)?;
    let Some(k) = rem.degree() else {
        return Ok(GaussianRational::zero());
    };
    let sign = if (m * n) % 2 == 1 { -GaussianRational::one() } else { GaussianRational::one() };
    let scale = q.leading().unwrap().pow((m - k) as u32);
    Ok(&(&sign * &scale) * &resultant(q, &rem)?)
}

/// `true` iff `gcd(p, p')` is constant.
pub fn is_squarefree(p: &ExactPoly) -> Result<bool, Error> {
    match p.degree() {
        None => Err(Error::DegenerateInput("squarefree test of the zero polynomial".into())),
        Some(0) => Err(Error::DegenerateInput("squarefree test of a constant".into())),
        Some(1) => Ok(true),
        Some(_) => Ok(poly_gcd(p, &p.derivative())?.degree() == Some(0)),
    }
}

/// `(-1)^(n(n-1)/2) · Res(p, p') / lc(p)`.
pub fn discriminant(p: &ExactPoly) -> Result<GaussianRational, Error> {
    let n = p
        .degree()
        .filter(|&n| n >= 2)
        .ok_or_else(|| Error::DegenerateInput("discriminant needs degree at least 2".into()))?;
    let res = resultant(p, &p.derivative())?;
    let d = &res / p.leading().unwrap();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}

pub fn eval_poly(p: &ExactPoly, z: &GaussianRational) -> GaussianRational {
    p.eval(z)
}

/// Yun's squarefree factorization: monic, pairwise coprime squarefree factors
/// with their multiplicities, so that `p = lc(p) · ∏ f_k^k`.
pub fn squarefree_decomposition(p: &ExactPoly) -> Result<Vec<(ExactPoly, usize)>, Error> {
    let deg = p
        .degree()
        .ok_or_else(|| Error::DegenerateInput("factorization of the zero polynomial".into()))?;
    if deg == 0 {
        return Ok(Vec::new());
    }
    let a = p.monic()?;
    let b = a.derivative();
    let c = poly_gcd(&a, &b)?;
    let mut w = a.div_exact(&c)?;
    let mut y = b.div_exact(&c)?;
    let mut z = &y - &w.derivative();
    let mut out = Vec::new();
    let mut mult = 1;
    while w.degree() != Some(0) {
        let g = if z.is_zero() { w.monic()? } else { poly_gcd(&w, &z)? };
        if g.degree() != Some(0) {
            out.push((g.clone(), mult));
        }
        w = w.div_exact(&g)?;
        y = z.div_exact(&g)?;
        z = &y - &w.derivative();
        mult += 1;
    }
    Ok(out)
}
