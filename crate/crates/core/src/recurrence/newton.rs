use num_traits::{One, Zero};

use crate::exactnum::{ExactPoly, GaussianRational};
use crate::linalg::SequenceWindow;
use crate::Error;

/// Elementary symmetric values `e_0 = 1, e_1, …, e_N` produced from power
/// sums `p_1, …, p_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPoly {
    elementary: Vec<GaussianRational>,
    source_length: usize,
}

impl NewtonPoly {
    pub fn elementary(&self) -> &[GaussianRational] {
        &self.elementary
    }

    pub fn source_length(&self) -> usize {
        self.source_length
    }

    /// Largest `r` with `e_r ≠ 0`; every `e_k` beyond it is zero.
    pub fn degree(&self) -> usize {
        self.elementary
            .iter()
            .rposition(|e| !e.is_zero())
            .unwrap_or(0)
    }

    /// `∏ (1 - β_i x) = ∑ (-1)^k e_k x^k`.
    pub fn reciprocal_poly(&self) -> ExactPoly {
        ExactPoly::new(
            self.elementary
                .iter()
                .enumerate()
                .map(|(k, e)| if k % 2 == 1 { -e } else { e.clone() })
                .collect(),
        )
    }

    /// `∏ (x - β_i)` for the first `r` elementary values: the reversal of
    /// the truncated reciprocal polynomial at formal degree `r`.
    pub fn char_poly(&self, r: usize) -> ExactPoly {
        self.reciprocal_poly().truncate(r + 1).reversed(r)
    }
}

/// Newton's identities, `k e_k = ∑_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i`, on a
/// window of power sums indexed from 1.
pub fn power_sums_to_newton(seq: &SequenceWindow) -> Result<NewtonPoly, Error> {
    seq.require_start(1)?;
    let p = seq.terms();
    let n = p.len();
    let mut e = Vec::with_capacity(n + 1);
    e.push(GaussianRational::one());
    for k in 1..=n {
        let mut acc = GaussianRational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i - 1];
            if i % 2 == 1 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        e.push(&acc / &GaussianRational::from_int(k as i64));
    }
    Ok(NewtonPoly {
        elementary: e,
        source_length: n,
    })
}

/// `p_k = ∑_{i=1}^{r} (-1)^{i-1} e_i p_{k-i}` for every available `k > r`.
pub fn newton_tail_check(np: &NewtonPoly, seq: &SequenceWindow, r: usize) -> bool {
    let p = seq.terms();
    let e = np.elementary();
    if r >= e.len() || e[r].is_zero() {
        return false;
    }
    (r + 1..=p.len()).all(|k| {
        let mut acc = GaussianRational::zero();
        for i in 1..=r {
            let term = &e[i] * &p[k - i - 1];
            if i % 2 == 1 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        acc == p[k - 1]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn one_based(v: &[i64]) -> SequenceWindow {
        SequenceWindow::from_ints(1, v).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<GaussianRational> {
        v.iter().map(|&x| GaussianRational::from_int(x)).collect()
    }

    #[test]
    fn newton_examples() {
        let np = power_sums_to_newton(&one_based(&[5, 13, 35, 97])).unwrap();
        assert_eq!(np.elementary(), &ints(&[1, 5, 6, 0, 0])[..]);
        assert_eq!(np.degree(), 2);
        assert_eq!(np.reciprocal_poly(), ExactPoly::from_ints(&[1, -5, 6]));
        assert_eq!(np.char_poly(2), ExactPoly::from_ints(&[6, -5, 1]));

        let np = power_sums_to_newton(&one_based(&[2, 2, 2, 2])).unwrap();
        assert_eq!(np.elementary(), &ints(&[1, 2, 1, 0, 0])[..]);

        let np = power_sums_to_newton(&one_based(&[0, 2, 0, 2])).unwrap();
        assert_eq!(np.elementary(), &ints(&[1, 0, -1, 0, 0])[..]);
    }

    #[test]
    fn rejects_zero_based_windows() {
        let s = SequenceWindow::from_ints(0, &[1, 2, 3]).unwrap();
        assert_eq!(
            power_sums_to_newton(&s),
            Err(Error::IndexConvention { expected: 1, got: 0 })
        );
    }

    #[test]
    fn tail_check_examples() {
        let s = one_based(&[5, 13, 35, 97, 275]);
        let np = power_sums_to_newton(&s).unwrap();
        assert!(newton_tail_check(&np, &s, 2));

        let s = one_based(&[5, 13, 35, 98]);
        let np = power_sums_to_newton(&s).unwrap();
        assert!(!newton_tail_check(&np, &s, 2));

        let s = one_based(&[7, 1]);
        let np = power_sums_to_newton(&s).unwrap();
        assert!(newton_tail_check(&np, &s, 2));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn power_sums_round_trip(atoms in prop::collection::vec(
            (prop_oneof![-9i64..=-1, 1i64..=9], 1i64..=5, -3i64..=3), 1..=6)
        ) {
            let atoms: Vec<GaussianRational> = atoms
                .into_iter()
                .map(|(a, b, c)| GaussianRational::from_parts(a, b, c, 1))
                .collect();
            let n = atoms.len() + 3;
            let sums = (1..=n as u32).map(|k| atoms.iter().map(|b| b.pow(k)).sum()).collect();
            let np = power_sums_to_newton(&SequenceWindow::new(1, sums).unwrap()).unwrap();
            let expected = atoms.iter().fold(ExactPoly::one(), |acc, b| {
                &acc * &ExactPoly::new(vec![GaussianRational::one(), -b])
            });
            prop_assert_eq!(np.reciprocal_poly(), expected);
            prop_assert_eq!(np.degree(), atoms.len());
        }
    }
}
