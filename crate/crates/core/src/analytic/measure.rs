use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{relative_residual, Tolerances};
use crate::exactnum::{GaussianRational, Scalar};
use crate::linalg::SequenceWindow;
use crate::ranks::{mrank_with, urank_with, RankStatus};
use crate::Error;

/// Indexing convention tying a measure to a sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// `c_n = ∑ α_i β_i^{n+1}` for `n ≥ 0`.
    MomentRank,
    /// `c_n = ∑ m_i β_i^n` for `n ≥ 1`.
    UnitaryRank,
}

impl Convention {
    pub fn start_index(self) -> usize {
        match self {
            Convention::MomentRank => 0,
            Convention::UnitaryRank => 1,
        }
    }

    fn exponent(self, n: usize) -> u32 {
        match self {
            Convention::MomentRank => n as u32 + 1,
            Convention::UnitaryRank => n as u32,
        }
    }
}

/// `∑ mass_i δ_{atom_i}` with distinct nonzero atoms and nonzero masses.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomicMeasure {
    support: Vec<Scalar>,
    masses: Vec<Scalar>,
}

impl AtomicMeasure {
    pub fn new(support: Vec<Scalar>, masses: Vec<Scalar>) -> Result<Self, Error> {
        if support.len() != masses.len() {
            return Err(Error::Shape(format!(
                "{} atoms but {} masses",
                support.len(),
                masses.len()
            )));
        }
        if support.iter().any(Scalar::is_zero) {
            return Err(Error::DegenerateInput("zero atom".into()));
        }
        if masses.iter().any(Scalar::is_zero) {
            return Err(Error::DegenerateInput("zero mass".into()));
        }
        for (i, a) in support.iter().enumerate() {
            for b in &support[i + 1..] {
                let same = match (a, b) {
                    (Scalar::Exact(x), Scalar::Exact(y)) => x == y,
                    _ => a.distance(b) == 0.0,
                };
                if same {
                    return Err(Error::DegenerateInput(format!("repeated atom {a}")));
                }
            }
        }
        Ok(Self { support, masses })
    }

    pub fn from_exact(support: Vec<GaussianRational>, masses: Vec<GaussianRational>) -> Result<Self, Error> {
        Self::new(
            support.into_iter().map(Scalar::Exact).collect(),
            masses.into_iter().map(Scalar::Exact).collect(),
        )
    }

    pub fn empty() -> Self {
        Self {
            support: Vec::new(),
            masses: Vec::new(),
        }
    }

    pub fn support(&self) -> &[Scalar] {
        &self.support
    }

    pub fn masses(&self) -> &[Scalar] {
        &self.masses
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.support.iter().chain(&self.masses).all(Scalar::is_exact)
    }

    /// `∑ mass_i atom_i^k`.
    pub fn moment(&self, k: u32) -> Scalar {
        self.support
            .iter()
            .zip(&self.masses)
            .fold(Scalar::zero(), |acc, (b, m)| &acc + &(m * &b.pow(k)))
    }

    /// Relative residual of the forward moments against `seq`, read under the
    /// convention implied by its start index; `0.0` means an exact match on
    /// exact data.
    pub fn residual(&self, seq: &SequenceWindow) -> Result<f64, Error> {
        let conv = convention_of(seq)?;
        if self.is_exact() {
            let m = moments(self, seq.len(), conv)?;
            if m.terms() == seq.terms() {
                return Ok(0.0);
            }
        }
        let want: Vec<Complex64> = seq.terms().iter().map(GaussianRational::to_complex64).collect();
        let got = numeric_moments(self, seq.len(), conv).into_iter().map(|s| s.to_complex());
        Ok(relative_residual(got, &want))
    }
}

fn convention_of(seq: &SequenceWindow) -> Result<Convention, Error> {
    match seq.start_index() {
        0 => Ok(Convention::MomentRank),
        1 => Ok(Convention::UnitaryRank),
        got => Err(Error::IndexConvention { expected: 0, got }),
    }
}

/// Exact forward moments under `convention`.
pub fn moments(mu: &AtomicMeasure, count: usize, convention: Convention) -> Result<SequenceWindow, Error> {
    let mut terms = Vec::with_capacity(count);
    for n in 0..count {
        let k = convention.exponent(convention.start_index() + n);
        let mut acc = GaussianRational::zero();
        for (b, m) in mu.support.iter().zip(&mu.masses) {
            match (b, m) {
                (Scalar::Exact(b), Scalar::Exact(m)) => acc += &(m * &b.pow(k)),
                _ => return Err(Error::DegenerateInput("exact moments need an exact measure".into())),
            }
        }
        terms.push(acc);
    }
    SequenceWindow::new(convention.start_index(), terms)
}

/// Forward moments in whichever arithmetic the measure supports.
pub fn numeric_moments(mu: &AtomicMeasure, count: usize, convention: Convention) -> Vec<Scalar> {
    (0..count)
        .map(|n| mu.moment(convention.exponent(convention.start_index() + n)))
        .collect()
}

/// The measure behind a certified moment-rank sequence.
///
/// A window starting at index 1 is read under the unitary convention
/// `c_n = ∑ m_i β_i^n`: `mrank` runs on its shift, and when the prefix is too
/// short for that, a certified unitary rank supplies the atoms with their
/// multiplicities as masses.
pub fn recover_measure(seq: &SequenceWindow) -> Result<AtomicMeasure, Error> {
    recover_measure_with(seq, &Tolerances::default())
}

pub fn recover_measure_with(seq: &SequenceWindow, tol: &Tolerances) -> Result<AtomicMeasure, Error> {
    let cert = match convention_of(seq)? {
        Convention::MomentRank => mrank_with(seq, tol)?,
        Convention::UnitaryRank => {
            let shifted = mrank_with(&seq.shift()?, tol)?;
            if shifted.status == RankStatus::NoFiniteRankWithinPrefix {
                match urank_with(seq, tol) {
                    Ok(u) if u.is_certified() => u,
                    _ => shifted,
                }
            } else {
                shifted
            }
        }
    };
    match cert.status {
        RankStatus::Certified if cert.zero_sequence => Ok(AtomicMeasure::empty()),
        RankStatus::Certified => AtomicMeasure::new(cert.atoms, cert.masses),
        status => Err(Error::RankFailed(status)),
    }
}
