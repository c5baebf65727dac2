//! Recurrence rank, moment rank and unitary rank with certificates.
//!
//! Every certificate records how many shifts of the prefix were checked.
//! Ranks are certified on the prefix only: a recurrence is accepted when it
//! holds on every shift the prefix can test.

mod tfae;
mod vandermonde;

pub use tfae::{tfae_crosscheck, Classification, TfaeReport, Verdict};
pub use vandermonde::ModifiedVandermonde;

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::analytic::{characteristic_roots, near_positive_integer, relative_residual, Tolerances};
use crate::exactnum::{is_squarefree, ExactPoly, GaussianRational, Scalar};
use crate::linalg::{hankel_window, SequenceWindow};
use crate::recurrence::{minimal_recurrence, newton_tail_check, power_sums_to_newton, RecurrenceSearch};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankKind {
    Recurrence,
    Moment,
    Unitary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RankStatus {
    Certified,
    ErrorNotSimple,
    NoFiniteRankWithinPrefix,
    NonIntegerMasses,
}

impl std::fmt::Display for RankStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

/// Outcome of a rank computation.
///
/// For moment ranks `atoms[i]` and `masses[i]` satisfy
/// `c_n = ∑ masses[i] · atoms[i]^{n+1}`. For unitary ranks the atoms are
/// distinct and `masses` holds their multiplicities. Recurrence ranks carry
/// no atoms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankCertificate {
    pub kind: RankKind,
    pub rank: usize,
    pub char_poly: ExactPoly,
    pub atoms: Vec<Scalar>,
    pub masses: Vec<Scalar>,
    pub verified_shifts: usize,
    pub status: RankStatus,
    pub zero_sequence: bool,
    /// Atoms and masses are exact and the reconstruction was compared term
    /// by term.
    pub exact: bool,
    /// Relative residual of the reconstruction; `0.0` on the exact path.
    pub residual: f64,
}

impl RankCertificate {
    fn bare(kind: RankKind, status: RankStatus) -> Self {
        Self {
            kind,
            rank: 0,
            char_poly: ExactPoly::zero(),
            atoms: Vec::new(),
            masses: Vec::new(),
            verified_shifts: 0,
            status,
            zero_sequence: false,
            exact: true,
            residual: 0.0,
        }
    }

    fn zero(kind: RankKind, n: usize) -> Self {
        Self {
            char_poly: ExactPoly::one(),
            verified_shifts: n,
            zero_sequence: true,
            ..Self::bare(kind, RankStatus::Certified)
        }
    }

    pub fn is_certified(&self) -> bool {
        self.status == RankStatus::Certified
    }

    /// Unitary atoms repeated by multiplicity.
    pub fn atom_multiset(&self) -> Vec<Scalar> {
        self.atoms
            .iter()
            .zip(&self.masses)
            .flat_map(|(b, m)| std::iter::repeat_n(b.clone(), m.to_complex().re.round().max(0.0) as usize))
            .collect()
    }

    /// Recomputes the certificate on `seq` and checks that it matches this
    /// one, then replays the claimed atoms and masses against every term.
    pub fn reverify(&self, seq: &SequenceWindow, tol: &Tolerances) -> bool {
        let fresh = match self.kind {
            RankKind::Recurrence => rrank(seq),
            RankKind::Moment => mrank_with(seq, tol),
            RankKind::Unitary => urank_with(seq, tol),
        };
        let Ok(fresh) = fresh else { return false };
        let same = fresh.status == self.status
            && fresh.rank == self.rank
            && fresh.char_poly == self.char_poly
            && fresh.zero_sequence == self.zero_sequence
            && fresh.atoms.len() == self.atoms.len()
            && fresh
                .atoms
                .iter()
                .chain(&fresh.masses)
                .zip(self.atoms.iter().chain(&self.masses))
                .all(|(a, b)| scalars_match(a, b, tol.residual));
        if !same {
            return false;
        }
        if self.status != RankStatus::Certified || self.kind == RankKind::Recurrence {
            return true;
        }
        replay_residual(self, seq).is_some_and(|r| r <= tol.residual)
    }
}

fn scalars_match(a: &Scalar, b: &Scalar, tol: f64) -> bool {
    match (a, b) {
        (Scalar::Exact(x), Scalar::Exact(y)) => x == y,
        _ => a.distance(b) <= tol * b.abs().max(1.0),
    }
}

/// Forward reconstruction of the sequence from a certificate's atoms and
/// masses. Returns `Some(0.0)` on an exact match.
fn replay_residual(cert: &RankCertificate, seq: &SequenceWindow) -> Option<f64> {
    let offset: u32 = match cert.kind {
        RankKind::Moment => 1,
        RankKind::Unitary => 0,
        RankKind::Recurrence => return None,
    };
    let s = seq.start_index() as u32;
    let recon: Vec<Scalar> = (0..seq.len() as u32)
        .map(|n| {
            cert.atoms
                .iter()
                .zip(&cert.masses)
                .fold(Scalar::zero(), |acc, (b, m)| &acc + &(m * &b.pow(s + n + offset)))
        })
        .collect();
    if recon.iter().all(Scalar::is_exact) {
        let ok = recon.iter().zip(seq.terms()).all(|(a, b)| a.as_exact() == Some(b));
        return ok.then_some(0.0);
    }
    let want: Vec<Complex64> = seq.terms().iter().map(GaussianRational::to_complex64).collect();
    Some(relative_residual(recon.iter().map(Scalar::to_complex), &want))
}

/// `max(0, m - r + 1)`.
pub fn expected_nullity(rank: usize, m: usize) -> usize {
    (m + 1).saturating_sub(rank)
}

/// Recurrence rank. Repeated characteristic roots are allowed.
pub fn rrank(seq: &SequenceWindow) -> Result<RankCertificate, Error> {
    let n = seq.len();
    Ok(match minimal_recurrence(seq)? {
        RecurrenceSearch::ZeroSequence => RankCertificate::zero(RankKind::Recurrence, n),
        RecurrenceSearch::NoneFound => RankCertificate::bare(RankKind::Recurrence, RankStatus::NoFiniteRankWithinPrefix),
        RecurrenceSearch::Found(rec) => RankCertificate {
            rank: rec.order(),
            char_poly: rec.char_poly(),
            verified_shifts: n - rec.order(),
            ..RankCertificate::bare(RankKind::Recurrence, RankStatus::Certified)
        },
    })
}

pub fn mrank(seq: &SequenceWindow) -> Result<RankCertificate, Error> {
    mrank_with(seq, &Tolerances::default())
}

/// Moment rank: `c_n = ∑ α_i β_i^{n+1}` with distinct nonzero `β_i`.
///
/// The minimal recurrence is found exactly; its characteristic polynomial
/// must be squarefree with `p(0) ≠ 0`, otherwise the certificate reports
/// `ErrorNotSimple`. Atoms that are Gaussian rationals are recovered exactly
/// and the reconstruction is compared term by term; otherwise the residual
/// must fall below `tol.residual`.
pub fn mrank_with(seq: &SequenceWindow, tol: &Tolerances) -> Result<RankCertificate, Error> {
    seq.require_start(0)?;
    let n = seq.len();
    let rec = match minimal_recurrence(seq)? {
        RecurrenceSearch::ZeroSequence => return Ok(RankCertificate::zero(RankKind::Moment, n)),
        RecurrenceSearch::NoneFound => {
            return Ok(RankCertificate::bare(RankKind::Moment, RankStatus::NoFiniteRankWithinPrefix))
        }
        RecurrenceSearch::Found(rec) => rec,
    };
    let r = rec.order();
    let p = rec.char_poly();
    let base = RankCertificate {
        rank: r,
        char_poly: p.clone(),
        verified_shifts: n - r,
        ..RankCertificate::bare(RankKind::Moment, RankStatus::Certified)
    };
    if p.coeff(0).is_zero() || !is_squarefree(&p)? {
        return Ok(RankCertificate {
            status: RankStatus::ErrorNotSimple,
            ..base
        });
    }
    let atoms: Vec<Scalar> = characteristic_roots(&p, tol)?.into_iter().map(|(b, _)| b).collect();
    let masses = ModifiedVandermonde::new(atoms.clone()).solve_masses(&seq.terms()[..r])?;
    let mut cert = RankCertificate {
        exact: atoms.iter().chain(&masses).all(Scalar::is_exact),
        atoms,
        masses,
        ..base
    };
    cert.residual = checked_replay(&cert, seq, tol)?;
    Ok(cert)
}

fn checked_replay(cert: &RankCertificate, seq: &SequenceWindow, tol: &Tolerances) -> Result<f64, Error> {
    match replay_residual(cert, seq) {
        Some(r) if cert.exact && r == 0.0 => Ok(0.0),
        Some(r) if !cert.exact && r <= tol.residual => Ok(r),
        other => Err(Error::VerificationFailed(format!(
            "reconstruction residual {:?} on {} path",
            other,
            if cert.exact { "exact" } else { "numeric" }
        ))),
    }
}

pub fn urank(seq: &SequenceWindow) -> Result<RankCertificate, Error> {
    urank_with(seq, &Tolerances::default())
}

/// Positive integer masses of a certified shifted moment-rank certificate.
fn integer_masses(cert: &RankCertificate, tol: &Tolerances) -> Option<Vec<u64>> {
    cert.masses
        .iter()
        .map(|m| match m {
            Scalar::Exact(v) if v.is_integer() && v.re().is_positive() => v.to_integer().and_then(|k| u64::try_from(k).ok()),
            Scalar::Exact(_) => None,
            Scalar::Numeric(z) => near_positive_integer(*z, tol.integer_mass),
        })
        .collect()
}

/// Unitary rank: `c_n = ∑ β_i^n` over a multiset of nonzero atoms, `n ≥ 1`.
///
/// The exact path runs Newton's identities over the whole prefix; the
/// cross-check runs `mrank` on the shifted sequence. The exact path decides
/// the rank. A cross-check that certifies with integer masses must agree
/// with it; a cross-check with non-integer masses is reported as
/// `NonIntegerMasses` when the exact path fails, and as a defect when it
/// succeeds.
pub fn urank_with(seq: &SequenceWindow, tol: &Tolerances) -> Result<RankCertificate, Error> {
    seq.require_start(1)?;
    let n = seq.len();
    if n < 2 {
        return Err(Error::PrefixTooShort { needed: 2, have: n });
    }
    if seq.is_zero() {
        return Ok(RankCertificate::zero(RankKind::Unitary, n));
    }
    let np = power_sums_to_newton(seq)?;
    let r = np.degree();
    let newton_ok = r >= 1 && r < n && newton_tail_check(&np, seq, r);

    let cross = if n >= 3 { Some(mrank_with(&seq.shift()?, tol)) } else { None };
    let cross_cert = cross.as_ref().and_then(|c| c.as_ref().ok());

    let failure = |status: RankStatus, char_poly: ExactPoly| RankCertificate {
        char_poly,
        ..RankCertificate::bare(RankKind::Unitary, status)
    };

    if !newton_ok {
        return Ok(match cross_cert {
            Some(c) if c.is_certified() && integer_masses(c, tol).is_none() => {
                failure(RankStatus::NonIntegerMasses, c.char_poly.clone())
            }
            Some(c) if c.status == RankStatus::ErrorNotSimple => failure(RankStatus::ErrorNotSimple, c.char_poly.clone()),
            _ => failure(RankStatus::NoFiniteRankWithinPrefix, ExactPoly::zero()),
        });
    }

    let p = np.char_poly(r);
    let roots = characteristic_roots(&p, tol)?;
    let mut cert = RankCertificate {
        rank: r,
        char_poly: p,
        exact: roots.iter().all(|(b, _)| b.is_exact()),
        atoms: roots.iter().map(|(b, _)| b.clone()).collect(),
        masses: roots.iter().map(|&(_, m)| Scalar::from_int(m as i64)).collect(),
        verified_shifts: n - r,
        ..RankCertificate::bare(RankKind::Unitary, RankStatus::Certified)
    };
    cert.residual = checked_replay(&cert, seq, tol)?;

    if let Some(c) = cross_cert {
        match c.status {
            RankStatus::Certified => match integer_masses(c, tol) {
                Some(ms) => paths_agree(&cert, c, &ms, tol)?,
                None => {
                    return Err(Error::UnitaryPathsDisagree(format!(
                        "Newton path certifies rank {r} but shifted moment rank has non-integer masses"
                    )))
                }
            },
            RankStatus::ErrorNotSimple => {
                return Err(Error::UnitaryPathsDisagree(format!(
                    "Newton path certifies rank {r} but the shifted sequence is not simple"
                )))
            }
            _ => {}
        }
    }
    Ok(cert)
}

fn paths_agree(newton: &RankCertificate, cross: &RankCertificate, masses: &[u64], tol: &Tolerances) -> Result<(), Error> {
    let total: u64 = masses.iter().sum();
    let mismatch = |what: String| Err(Error::UnitaryPathsDisagree(what));
    if total as usize != newton.rank || cross.atoms.len() != newton.atoms.len() {
        return mismatch(format!(
            "Newton rank {} over {} atoms, shifted moment rank masses sum to {total} over {} atoms",
            newton.rank,
            newton.atoms.len(),
            cross.atoms.len()
        ));
    }
    let close = |a: &Scalar, b: &Scalar| match (a, b) {
        (Scalar::Exact(x), Scalar::Exact(y)) => x == y,
        _ => a.distance(b) <= tol.integer_mass * b.abs().max(1.0),
    };
    for (b, m) in newton.atoms.iter().zip(&newton.masses) {
        let k = m.to_complex().re.round() as u64;
        let hit = cross.atoms.iter().zip(masses).find(|(c, _)| close(c, b));
        match hit {
            Some((_, &mk)) if mk == k => {}
            _ => return mismatch(format!("atom {b} with multiplicity {k} not matched")),
        }
    }
    Ok(())
}

/// Exact nullities of `H_{m,t}` at the window's first index, `m = 0..=m_max`.
pub fn nullity_profile(seq: &SequenceWindow, m_max: usize) -> Result<Vec<usize>, Error> {
    nullity_profile_at(seq, m_max, seq.start_index())
}

pub fn nullity_profile_at(seq: &SequenceWindow, m_max: usize, t: usize) -> Result<Vec<usize>, Error> {
    (0..=m_max)
        .map(|m| Ok(m + 1 - hankel_window(seq, m, t)?.rank()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[i64]) -> SequenceWindow {
        SequenceWindow::from_ints(0, v).unwrap()
    }

    fn useq(v: &[i64]) -> SequenceWindow {
        SequenceWindow::from_ints(1, v).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn rrank_examples() {
        let c = rrank(&seq(&[0, 2, 8, 24, 64, 160])).unwrap();
        assert_eq!((c.rank, c.status), (2, RankStatus::Certified));
        assert_eq!(c.char_poly, ExactPoly::from_ints(&[4, -4, 1]));
        assert!(c.atoms.is_empty());
        assert_eq!(rrank(&seq(&[1, 1, 2, 3, 5, 8, 13])).unwrap().rank, 2);
        assert_eq!(rrank(&seq(&[1, 1, 1, 1])).unwrap().rank, 1);
        assert_eq!(rrank(&seq(&[1, 1, 2])).unwrap().status, RankStatus::NoFiniteRankWithinPrefix);
    }

    #[test]
    fn mrank_examples() {
        let c = mrank(&seq(&[6, 18, 54, 162])).unwrap();
        assert_eq!((c.rank, c.status, c.exact), (1, RankStatus::Certified, true));
        assert_eq!((c.atoms.clone(), c.masses.clone()), (ints(&[3]), ints(&[2])));
        assert_eq!(c.verified_shifts, 3);

        let c = mrank(&seq(&[1, 1, 1, 1])).unwrap();
        assert_eq!((c.atoms, c.masses), (ints(&[1]), ints(&[1])));

        let c = mrank(&seq(&[0, 2, 8, 24, 64, 160])).unwrap();
        assert_eq!(c.status, RankStatus::ErrorNotSimple);
        assert_eq!(c.char_poly, ExactPoly::from_ints(&[4, -4, 1]));
    }

    #[test]
    fn mrank_fibonacci_binet() {
        let c = mrank(&seq(&[1, 1, 2, 3, 5, 8, 13])).unwrap();
        assert_eq!((c.rank, c.status, c.exact), (2, RankStatus::Certified, false));
        let s5 = 5f64.sqrt();
        let (phi, psi) = ((1.0 + s5) / 2.0, (1.0 - s5) / 2.0);
        // magnitude order puts ψ first
        let want_atoms = [psi, phi];
        // c_n = (φ^{n+1} - ψ^{n+1}) / √5
        let want_masses = [-1.0 / s5, 1.0 / s5];
        for i in 0..2 {
            assert!((c.atoms[i].to_complex() - Complex64::new(want_atoms[i], 0.0)).norm() < 1e-12);
            assert!((c.masses[i].to_complex() - Complex64::new(want_masses[i], 0.0)).norm() < 1e-12);
        }
        assert!(c.residual < 1e-12);
    }

    #[test]
    fn mrank_zero_root_is_not_simple() {
        assert_eq!(mrank(&seq(&[1, 0, 0, 0, 0])).unwrap().status, RankStatus::ErrorNotSimple);
    }

    #[test]
    fn zero_sequence_conventions() {
        for c in [rrank(&seq(&[0, 0, 0])).unwrap(), mrank(&seq(&[0, 0, 0])).unwrap(), urank(&useq(&[0, 0])).unwrap()] {
            assert!(c.zero_sequence && c.is_certified() && c.rank == 0);
        }
    }

    #[test]
    fn urank_examples() {
        let c = urank(&useq(&[5, 13, 35, 97, 275])).unwrap();
        assert_eq!((c.rank, c.status), (2, RankStatus::Certified));
        assert_eq!((c.atoms, c.masses), (ints(&[2, 3]), ints(&[1, 1])));

        let c = urank(&useq(&[2, 2, 2, 2])).unwrap();
        assert_eq!(c.rank, 2);
        assert_eq!(c.atom_multiset(), ints(&[1, 1]));

        assert_eq!(urank(&useq(&[3, 6, 12, 24, 48])).unwrap().status, RankStatus::NonIntegerMasses);

        let c = urank(&useq(&[6, 12, 24, 48])).unwrap();
        assert_eq!(c.rank, 3);
        assert_eq!(c.atom_multiset(), ints(&[2, 2, 2]));
    }

    #[test]
    fn urank_needs_one_based_input() {
        assert_eq!(urank(&seq(&[1, 2, 3])), Err(Error::IndexConvention { expected: 1, got: 0 }));
        assert!(matches!(urank(&useq(&[1])), Err(Error::PrefixTooShort { .. })));
    }

    #[test]
    fn nullity_examples() {
        assert_eq!(nullity_profile(&seq(&[1, 1, 2, 3, 5, 8, 13]), 3).unwrap(), vec![0, 0, 1, 2]);
        assert_eq!(nullity_profile(&seq(&[6, 18, 54, 162, 486]), 2).unwrap(), vec![0, 1, 2]);
        assert_eq!(expected_nullity(3, 2), 0);
        assert!(matches!(nullity_profile(&seq(&[1, 1, 2]), 2), Err(Error::PrefixTooShort { .. })));
    }

    #[test]
    fn certificates_reverify_after_json_round_trip() {
        let tol = Tolerances::default();
        for (s, kind) in [
            (seq(&[1, 1, 2, 3, 5, 8, 13]), RankKind::Moment),
            (seq(&[0, 2, 8, 24, 64, 160]), RankKind::Moment),
            (seq(&[6, 18, 54, 162]), RankKind::Recurrence),
            (useq(&[5, 13, 35, 97, 275]), RankKind::Unitary),
        ] {
            let c = match kind {
                RankKind::Moment => mrank(&s),
                RankKind::Recurrence => rrank(&s),
                RankKind::Unitary => urank(&s),
            }
            .unwrap();
            let back: RankCertificate = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
            assert!(back.reverify(&s, &tol), "{kind:?}");
        }
        let mut forged = mrank(&seq(&[6, 18, 54, 162])).unwrap();
        forged.masses = ints(&[3]);
        assert!(!forged.reverify(&seq(&[6, 18, 54, 162]), &tol));
    }
}
