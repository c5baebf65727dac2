use num_traits::{One, Zero};
use serde::Serialize;

use super::{characteristic_roots, Tolerances};
use crate::exactnum::{is_squarefree, poly_gcd, squarefree_decomposition, ExactPoly, GaussianRational, Scalar};
use crate::linalg::SequenceWindow;
use crate::ranks::{rrank, RankStatus};
use crate::Error;

/// `Φ(z) = ∑ c_n z^n = numerator / denominator` in lowest terms with
/// `denominator(0) = 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RationalGenFun {
    pub numerator: ExactPoly,
    pub denominator: ExactPoly,
    /// Roots of the denominator with multiplicity.
    pub poles: Vec<(Scalar, usize)>,
    /// Squarefree verdict on the characteristic polynomial.
    pub simple: bool,
}

impl RationalGenFun {
    pub fn pole_count(&self) -> usize {
        self.poles.iter().map(|(_, m)| m).sum()
    }

    /// First `n` power-series coefficients of `numerator / denominator`.
    pub fn expand_series(&self, n: usize) -> Vec<GaussianRational> {
        let d0 = self.denominator.coeff(0);
        let mut q: Vec<GaussianRational> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.numerator.coeff(k);
            for i in 1..=k {
                let di = self.denominator.coeff(i);
                if !di.is_zero() {
                    acc -= &(&di * &q[k - i]);
                }
            }
            q.push(&acc / &d0);
        }
        q
    }

    /// The series reproduces the window at its absolute indices, with zeros
    /// below the start index.
    pub fn reproduces(&self, seq: &SequenceWindow) -> bool {
        let s = seq.start_index();
        let series = self.expand_series(s + seq.len());
        series[..s].iter().all(Zero::is_zero) && &series[s..] == seq.terms()
    }

    /// `numerator / (f_1)^{k_1} (f_2)^{k_2} ...` with each factor scaled to
    /// constant term 1.
    pub fn display(&self) -> String {
        let num = if self.numerator.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
            format!("({})", self.numerator.display_ascending("z"))
        } else {
            self.numerator.display_ascending("z")
        };
        if self.denominator.degree().unwrap_or(0) == 0 {
            return num;
        }
        let mut den = String::new();
        for (f, k) in squarefree_decomposition(&self.denominator).unwrap_or_default() {
            // factors of a denominator with D(0) = 1 never vanish at 0
            let f = f.scale(&(&GaussianRational::one() / &f.coeff(0)));
            den.push_str(&format!("({})", f.display_ascending("z")));
            if k > 1 {
                den.push_str(&format!("^{k}"));
            }
        }
        format!("{num} / {den}")
    }
}

/// Rational generating function of a sequence with a certified recurrence.
pub fn genfun(seq: &SequenceWindow) -> Result<RationalGenFun, Error> {
    genfun_with(seq, &Tolerances::default())
}

pub fn genfun_with(seq: &SequenceWindow, tol: &Tolerances) -> Result<RationalGenFun, Error> {
    let cert = rrank(seq)?;
    if cert.status != RankStatus::Certified {
        return Err(Error::RankFailed(cert.status));
    }
    if cert.zero_sequence {
        return Ok(RationalGenFun {
            numerator: ExactPoly::zero(),
            denominator: ExactPoly::one(),
            poles: Vec::new(),
            simple: true,
        });
    }
    let p = &cert.char_poly;
    let r = cert.rank;
    let s = seq.start_index();
    let mut den = p.reversed(r);
    let prefix = ExactPoly::new(seq.terms().to_vec()).shift_up(s);
    let mut num = (&prefix * &den).truncate(r + s);

    let g = poly_gcd(&num, &den)?;
    if g.degree() > Some(0) {
        num = num.div_exact(&g)?;
        den = den.div_exact(&g)?;
    }
    let d0 = den.coeff(0);
    if !d0.is_one() {
        let inv = &GaussianRational::one() / &d0;
        num = num.scale(&inv);
        den = den.scale(&inv);
    }
    let poles = if den.degree() > Some(0) {
        characteristic_roots(&den, tol)?
    } else {
        Vec::new()
    };
    Ok(RationalGenFun {
        numerator: num,
        denominator: den,
        poles,
        simple: is_squarefree(p)?,
    })
}
