//! Minimal linear recurrences, the recurrence-ideal generator, and the
//! Newton's-identities transform between power sums and elementary
//! symmetric functions.
//!
//! Everything here works on a finite prefix. A recurrence is "found" when it
//! holds on every shift the prefix can test, and the search never accepts an
//! order above `⌊(N-1)/2⌋` so at least one shift is checked beyond the ones
//! used to solve for the coefficients.

mod newton;

pub use newton::{newton_tail_check, power_sums_to_newton, NewtonPoly};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exactnum::{is_squarefree, ExactPoly, GaussianRational};
use crate::linalg::{exact_det, hankel_window, solve, SequenceWindow};
use crate::Error;

/// A monic constant-coefficient recurrence `∑_{i=0}^{r} a_i c_{i+t} = 0`, `a_r = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recurrence {
    coeffs: Vec<GaussianRational>,
}

impl Recurrence {
    /// Normalizes `coeffs` to monic. Errors if the order would be zero.
    pub fn new(coeffs: Vec<GaussianRational>) -> Result<Self, Error> {
        let poly = ExactPoly::new(coeffs);
        match poly.degree() {
            Some(d) if d >= 1 => Ok(Self {
                coeffs: poly.monic()?.into_coeffs(),
            }),
            _ => Err(Error::DegenerateInput("recurrence of order zero".into())),
        }
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self, Error> {
        Self::new(coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    /// `∑ a_j x^j`.
    pub fn char_poly(&self) -> ExactPoly {
        ExactPoly::new(self.coeffs.clone())
    }

    /// `∑ a_i c_{i+t}` on the window-relative shift `t`.
    fn residual_at(&self, terms: &[GaussianRational], t: usize) -> GaussianRational {
        self.coeffs
            .iter()
            .zip(&terms[t..])
            .map(|(a, c)| a * c)
            .sum()
    }
}

/// Outcome of [`minimal_recurrence`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecurrenceSearch {
    Found(Recurrence),
    /// Every term is zero; the sequence is given rank 0 by convention.
    ZeroSequence,
    /// No order up to `⌊(N-1)/2⌋` passed.
    NoneFound,
}

/// Largest candidate order tested on a prefix of `n` terms.
pub fn max_testable_order(n: usize) -> usize {
    n.saturating_sub(1) / 2
}

/// Determinant-then-solve search for the smallest order `r` whose solved
/// recurrence holds on every shift `t` with `t + r ≤ N - 1`.
pub fn minimal_recurrence(seq: &SequenceWindow) -> Result<RecurrenceSearch, Error> {
    let n = seq.len();
    if n < 3 {
        return Err(Error::PrefixTooShort { needed: 3, have: n });
    }
    if seq.is_zero() {
        return Ok(RecurrenceSearch::ZeroSequence);
    }
    let s = seq.start_index();
    let terms = seq.terms();
    for r in 1..=max_testable_order(n) {
        let c = hankel_window(seq, r - 1, s)?;
        if exact_det(&c)?.is_zero() {
            continue;
        }
        let rhs: Vec<GaussianRational> = terms[r..2 * r].iter().map(|v| -v).collect();
        let mut coeffs = solve(&c, &rhs)?;
        coeffs.push(GaussianRational::one());
        let rec = Recurrence { coeffs };
        if verify_recurrence(seq, &rec) == n - r {
            return Ok(RecurrenceSearch::Found(rec));
        }
    }
    Ok(RecurrenceSearch::NoneFound)
}

/// Number of consecutive shifts, from the first term, on which `rec` holds.
pub fn verify_recurrence(seq: &SequenceWindow, rec: &Recurrence) -> usize {
    let n = seq.len();
    let r = rec.order();
    if r >= n {
        return 0;
    }
    (0..n - r)
        .take_while(|&t| rec.residual_at(seq.terms(), t).is_zero())
        .count()
}

/// Generator of the recurrence ideal as certified on the prefix: the
/// characteristic polynomial of the minimal recurrence, or `1` for the zero
/// sequence.
pub fn ideal_generator(seq: &SequenceWindow) -> Result<ExactPoly, Error> {
    match minimal_recurrence(seq)? {
        RecurrenceSearch::Found(rec) => Ok(rec.char_poly()),
        RecurrenceSearch::ZeroSequence => Ok(ExactPoly::one()),
        RecurrenceSearch::NoneFound => Err(Error::NoGeneratorWithinPrefix),
    }
}

/// The recurrence ideal is radical iff its generator is squarefree.
pub fn is_radical(seq: &SequenceWindow) -> Result<bool, Error> {
    let g = ideal_generator(seq)?;
    if g.degree() == Some(0) {
        return Ok(true);
    }
    is_squarefree(&g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kernel_basis;
    use proptest::prelude::*;

    fn seq(v: &[i64]) -> SequenceWindow {
        SequenceWindow::from_ints(0, v).unwrap()
    }

    fn found(s: &SequenceWindow) -> Recurrence {
        match minimal_recurrence(s).unwrap() {
            RecurrenceSearch::Found(r) => r,
            other => panic!("expected a recurrence, got {other:?}"),
        }
    }

    #[test]
    fn minimal_recurrence_examples() {
        assert_eq!(found(&seq(&[1, 1, 2, 3, 5, 8, 13])), Recurrence::from_ints(&[-1, -1, 1]).unwrap());
        assert_eq!(found(&seq(&[6, 18, 54, 162])), Recurrence::from_ints(&[-3, 1]).unwrap());
        assert_eq!(found(&seq(&[0, 2, 8, 24, 64, 160])), Recurrence::from_ints(&[4, -4, 1]).unwrap());
        assert_eq!(minimal_recurrence(&seq(&[0, 0, 0, 0])).unwrap(), RecurrenceSearch::ZeroSequence);
        assert_eq!(minimal_recurrence(&seq(&[1, 1, 2])).unwrap(), RecurrenceSearch::NoneFound);
        assert!(minimal_recurrence(&seq(&[1, 2])).is_err());
    }

    #[test]
    fn one_based_windows_search_from_their_first_term() {
        let s = SequenceWindow::from_ints(1, &[5, 13, 35, 97, 275]).unwrap();
        assert_eq!(found(&s), Recurrence::from_ints(&[6, -5, 1]).unwrap());
    }

    #[test]
    fn verify_examples() {
        let fib = Recurrence::from_ints(&[-1, -1, 1]).unwrap();
        assert_eq!(verify_recurrence(&seq(&[1, 1, 2, 3, 5, 8, 13]), &fib), 5);
        assert_eq!(verify_recurrence(&seq(&[1, 2, 4, 9]), &Recurrence::from_ints(&[-2, 1]).unwrap()), 2);
        assert_eq!(verify_recurrence(&seq(&[1, 2]), &fib), 0);
    }

    #[test]
    fn generator_and_radical_examples() {
        assert_eq!(ideal_generator(&seq(&[1, 1, 2, 3, 5, 8, 13])).unwrap(), ExactPoly::from_ints(&[-1, -1, 1]));
        assert_eq!(ideal_generator(&seq(&[6, 18, 54, 162])).unwrap(), ExactPoly::from_ints(&[-3, 1]));
        assert_eq!(ideal_generator(&seq(&[0, 2, 8, 24, 64, 160])).unwrap(), ExactPoly::from_ints(&[4, -4, 1]));
        assert_eq!(ideal_generator(&seq(&[1, 1, 2])), Err(Error::NoGeneratorWithinPrefix));
        assert!(is_radical(&seq(&[1, 1, 2, 3, 5, 8, 13])).unwrap());
        assert!(!is_radical(&seq(&[0, 2, 8, 24, 64, 160])).unwrap());
        assert!(is_radical(&seq(&[6, 18, 54, 162])).unwrap());
        assert!(is_radical(&seq(&[0, 0, 0])).unwrap());
    }

    /// Sequences `c_n = ∑ α_i β_i^{n+1}` with small integer data.
    fn arb_moment_seq() -> impl Strategy<Value = (Vec<i64>, SequenceWindow)> {
        (1usize..=3)
            .prop_flat_map(|r| {
                (
                    prop::collection::btree_set(prop_oneof![-5i64..=-1, 1i64..=5], r),
                    prop::collection::vec(prop_oneof![-4i64..=-1, 1i64..=4], r),
                )
            })
            .prop_map(|(atoms, masses)| {
                let atoms: Vec<i64> = atoms.into_iter().collect();
                let r = atoms.len();
                let terms = (0..2 * r + 4)
                    .map(|n| {
                        atoms
                            .iter()
                            .zip(&masses)
                            .map(|(&b, &a)| GaussianRational::from_int(a * b.pow(n as u32 + 1)))
                            .sum()
                    })
                    .collect();
                (atoms, SequenceWindow::new(0, terms).unwrap())
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn recovers_product_of_linear_factors((atoms, s) in arb_moment_seq()) {
            let roots: Vec<_> = atoms.iter().map(|&b| GaussianRational::from_int(b)).collect();
            prop_assert_eq!(found(&s).char_poly(), ExactPoly::from_roots(&roots));
        }

        #[test]
        fn hankel_kernel_is_the_recurrence_line((_, s) in arb_moment_seq()) {
            let rec = found(&s);
            let r = rec.order();
            for t in 0..=s.len() - 1 - 2 * r {
                let k = kernel_basis(&hankel_window(&s, r, t).unwrap());
                prop_assert_eq!(k.len(), 1);
                prop_assert_eq!(&k[0][..], rec.coeffs());
            }
        }
    }
}
