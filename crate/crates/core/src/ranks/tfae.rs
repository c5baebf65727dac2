//! Independent checkers for the equivalent characterizations of finite
//! moment rank (windows starting at 0) and of finite unitary rank (windows
//! starting at 1), and a report of whether they agree.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::{mrank, urank, RankCertificate, RankStatus};
use crate::analytic::{genfun, Tolerances};
use crate::exactnum::{discriminant, is_squarefree, ExactPoly, GaussianRational};
use crate::linalg::{exact_det, hankel_window, kernel_basis, ExactMatrix, SequenceWindow};
use crate::recurrence::{
    ideal_generator, max_testable_order, minimal_recurrence, newton_tail_check, power_sums_to_newton,
    RecurrenceSearch,
};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    ZeroSequence,
    Rank(usize),
    NotSimple,
    NoneWithinPrefix,
    NonIntegerMasses,
    /// The checker itself could not run.
    Failed(String),
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::ZeroSequence => write!(f, "zero sequence (rank 0)"),
            Classification::Rank(r) => write!(f, "rank {r}"),
            Classification::NotSimple => write!(f, "not simple"),
            Classification::NoneWithinPrefix => write!(f, "no finite rank within prefix"),
            Classification::NonIntegerMasses => write!(f, "non-integer masses"),
            Classification::Failed(e) => write!(f, "failed: {e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub condition: &'static str,
    pub class: Classification,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TfaeReport {
    pub start_index: usize,
    pub verdicts: Vec<Verdict>,
    pub agree: bool,
    /// Indices into `verdicts` of the first conflicting pair.
    pub first_disagreement: Option<(usize, usize)>,
}

impl TfaeReport {
    /// The shared classification when every checker agrees.
    pub fn consensus(&self) -> Option<&Classification> {
        if !self.agree {
            return None;
        }
        let ranked = self.verdicts.iter().find(|v| matches!(v.class, Classification::Rank(_)));
        ranked.or(self.verdicts.first()).map(|v| &v.class)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let marks = |i: usize| match self.first_disagreement {
            Some((a, _)) if a == i => "-",
            Some((_, b)) if b == i => "+",
            _ => " ",
        };
        for (i, v) in self.verdicts.iter().enumerate() {
            out.push_str(&format!("{} {:<34} {}", marks(i), v.condition, v.class));
            if !v.detail.is_empty() {
                out.push_str(&format!("  [{}]", v.detail));
            }
            out.push('\n');
        }
        match self.first_disagreement {
            None => out.push_str("all conditions agree\n"),
            Some((a, b)) => out.push_str(&format!(
                "disagreement: {} vs {}\n",
                self.verdicts[a].condition, self.verdicts[b].condition
            )),
        }
        out
    }
}

/// Runs every checker that applies to the window's indexing convention.
pub fn tfae_crosscheck(seq: &SequenceWindow) -> Result<TfaeReport, Error> {
    let (verdicts, agree_fn): (Vec<Verdict>, fn(&Classification, &Classification) -> bool) =
        match seq.start_index() {
            0 => {
                if seq.len() < 3 {
                    return Err(Error::PrefixTooShort { needed: 3, have: seq.len() });
                }
                (
                    vec![
                        simple_recurrence(seq),
                        hankel_conditions(seq),
                        generating_function(seq),
                        radical_ideal(seq),
                        algorithm_output(seq),
                    ],
                    |a, b| a == b,
                )
            }
            1 => {
                if seq.len() < 2 {
                    return Err(Error::PrefixTooShort { needed: 2, have: seq.len() });
                }
                (vec![multiset_definition(seq), shifted_moment_rank(seq), newton_polynomial(seq)], unitary_agree)
            }
            got => return Err(Error::IndexConvention { expected: 0, got }),
        };
    let mut first_disagreement = None;
    'outer: for i in 0..verdicts.len() {
        for j in i + 1..verdicts.len() {
            if !agree_fn(&verdicts[i].class, &verdicts[j].class) {
                first_disagreement = Some((i, j));
                break 'outer;
            }
        }
    }
    Ok(TfaeReport {
        start_index: seq.start_index(),
        agree: first_disagreement.is_none(),
        verdicts,
        first_disagreement,
    })
}

/// Unitary checkers see different amounts of the prefix: Newton certifies
/// ranks below `N`, the shifted moment rank only orders up to `⌊(N-2)/2⌋`.
/// "No rank within prefix" is therefore compatible with a rank found by
/// another checker, while contradictory verdicts are not.
fn unitary_agree(a: &Classification, b: &Classification) -> bool {
    use Classification::*;
    match (a, b) {
        (Failed(_), _) | (_, Failed(_)) => false,
        (Rank(x), Rank(y)) => x == y,
        (Rank(_), NoneWithinPrefix) | (NoneWithinPrefix, Rank(_)) => true,
        (Rank(_), _) | (_, Rank(_)) => false,
        (ZeroSequence, ZeroSequence) => true,
        (ZeroSequence, _) | (_, ZeroSequence) => false,
        _ => true,
    }
}

fn verdict(condition: &'static str, class: Classification, detail: impl Into<String>) -> Verdict {
    Verdict {
        condition,
        class,
        detail: detail.into(),
    }
}

fn failed(condition: &'static str, e: Error) -> Verdict {
    verdict(condition, Classification::Failed(e.to_string()), "")
}

fn simple_poly(p: &ExactPoly) -> Result<bool, Error> {
    Ok(!p.coeff(0).is_zero() && is_squarefree(p)?)
}

fn status_class(cert: &RankCertificate) -> Classification {
    match cert.status {
        RankStatus::Certified if cert.zero_sequence => Classification::ZeroSequence,
        RankStatus::Certified => Classification::Rank(cert.rank),
        RankStatus::ErrorNotSimple => Classification::NotSimple,
        RankStatus::NoFiniteRankWithinPrefix => Classification::NoneWithinPrefix,
        RankStatus::NonIntegerMasses => Classification::NonIntegerMasses,
    }
}

const SIMPLE_RECURRENCE: &str = "(2) minimal simple recurrence";
const HANKEL: &str = "(3) Hankel determinants and kernels";
const GENFUN: &str = "(5) generating function poles";
const RADICAL: &str = "(7) radical recurrence ideal";
const ALGORITHM: &str = "(9) moment-rank algorithm";

fn simple_recurrence(seq: &SequenceWindow) -> Verdict {
    let run = || -> Result<Verdict, Error> {
        Ok(match minimal_recurrence(seq)? {
            RecurrenceSearch::ZeroSequence => verdict(SIMPLE_RECURRENCE, Classification::ZeroSequence, ""),
            RecurrenceSearch::NoneFound => verdict(SIMPLE_RECURRENCE, Classification::NoneWithinPrefix, ""),
            RecurrenceSearch::Found(rec) => {
                let p = rec.char_poly();
                let class = if simple_poly(&p)? {
                    Classification::Rank(rec.order())
                } else {
                    Classification::NotSimple
                };
                verdict(SIMPLE_RECURRENCE, class, format!("p = {p}"))
            }
        })
    };
    run().unwrap_or_else(|e| failed(SIMPLE_RECURRENCE, e))
}

fn annihilates(h: &ExactMatrix, a: &[GaussianRational]) -> Result<bool, Error> {
    Ok(h.mul_vec(a)?.iter().all(Zero::is_zero))
}

/// Smallest `r` with `det H_{r-1,0} ≠ 0` whose one-dimensional kernel of
/// `H_{r,0}` annihilates every admissible `H_{r,t}`; then simplicity means
/// nonsingular `H_{r-1,t}` and a common kernel for every `t`, and a kernel
/// polynomial off the discriminant variety.
fn hankel_conditions(seq: &SequenceWindow) -> Verdict {
    let run = || -> Result<Verdict, Error> {
        let n = seq.len();
        if (0..n).all(|t| hankel_window(seq, 0, t).map(|h| h.get(0, 0).is_zero()).unwrap_or(true)) {
            return Ok(verdict(HANKEL, Classification::ZeroSequence, ""));
        }
        for r in 1..=max_testable_order(n) {
            if exact_det(&hankel_window(seq, r - 1, 0)?)?.is_zero() {
                continue;
            }
            let kernel = kernel_basis(&hankel_window(seq, r, 0)?);
            if kernel.len() != 1 {
                continue;
            }
            let a = &kernel[0];
            let last_t = n - 1 - 2 * r;
            let mut holds = true;
            for t in 0..=last_t {
                if !annihilates(&hankel_window(seq, r, t)?, a)? {
                    holds = false;
                    break;
                }
            }
            if !holds {
                continue;
            }
            let mut nonsingular = true;
            for t in 0..=(n + 1 - 2 * r) {
                if exact_det(&hankel_window(seq, r - 1, t)?)?.is_zero() {
                    nonsingular = false;
                    break;
                }
            }
            let mut same_kernel = true;
            for t in 0..=last_t {
                if kernel_basis(&hankel_window(seq, r, t)?) != kernel {
                    same_kernel = false;
                    break;
                }
            }
            let p = ExactPoly::new(a.clone());
            let off_variety = r < 2 || !discriminant(&p)?.is_zero();
            let class = if nonsingular && same_kernel && off_variety {
                Classification::Rank(r)
            } else {
                Classification::NotSimple
            };
            return Ok(verdict(
                HANKEL,
                class,
                format!("kernel {p}; det H_(r-1,t) != 0: {nonsingular}; kernel constant: {same_kernel}; disc != 0: {off_variety}"),
            ));
        }
        Ok(verdict(HANKEL, Classification::NoneWithinPrefix, ""))
    };
    run().unwrap_or_else(|e| failed(HANKEL, e))
}

fn generating_function(seq: &SequenceWindow) -> Verdict {
    let f = match genfun(seq) {
        Ok(f) => f,
        Err(Error::RankFailed(RankStatus::NoFiniteRankWithinPrefix)) => {
            return verdict(GENFUN, Classification::NoneWithinPrefix, "")
        }
        Err(e) => return failed(GENFUN, e),
    };
    if f.numerator.is_zero() {
        return verdict(GENFUN, Classification::ZeroSequence, "");
    }
    let d = f.denominator.degree().unwrap_or(0);
    let proper = f.numerator.degree().unwrap_or(0) < d;
    let all_simple = f.simple && f.poles.iter().all(|&(_, m)| m == 1);
    let class = if d >= 1 && proper && all_simple {
        Classification::Rank(f.pole_count())
    } else {
        Classification::NotSimple
    };
    verdict(GENFUN, class, f.display())
}

fn radical_ideal(seq: &SequenceWindow) -> Verdict {
    let g = match ideal_generator(seq) {
        Ok(g) => g,
        Err(Error::NoGeneratorWithinPrefix) => return verdict(RADICAL, Classification::NoneWithinPrefix, ""),
        Err(e) => return failed(RADICAL, e),
    };
    let d = g.degree().unwrap_or(0);
    if d == 0 {
        return verdict(RADICAL, Classification::ZeroSequence, "generator 1");
    }
    match simple_poly(&g) {
        Ok(true) => verdict(RADICAL, Classification::Rank(d), format!("generator {g}")),
        Ok(false) => verdict(RADICAL, Classification::NotSimple, format!("generator {g}")),
        Err(e) => failed(RADICAL, e),
    }
}

fn algorithm_output(seq: &SequenceWindow) -> Verdict {
    match mrank(seq) {
        Ok(c) => verdict(ALGORITHM, status_class(&c), format!("verified shifts {}", c.verified_shifts)),
        Err(e) => failed(ALGORITHM, e),
    }
}

const DEFINITION: &str = "(1) multiset of nonzero atoms";
const SHIFTED: &str = "(2) moment rank of the shift";
const NEWTON: &str = "(6) Newton polynomial";

fn multiset_definition(seq: &SequenceWindow) -> Verdict {
    let c = match urank(seq) {
        Ok(c) => c,
        Err(e) => return failed(DEFINITION, e),
    };
    if c.is_certified() && !c.zero_sequence && !c.reverify(seq, &Tolerances::default()) {
        return verdict(DEFINITION, Classification::Failed("multiset does not reproduce the prefix".into()), "");
    }
    let atoms: Vec<String> = c.atom_multiset().iter().map(ToString::to_string).collect();
    verdict(DEFINITION, status_class(&c), format!("{{{}}}", atoms.join(", ")))
}

fn shifted_moment_rank(seq: &SequenceWindow) -> Verdict {
    if seq.len() < 3 {
        return verdict(SHIFTED, Classification::NoneWithinPrefix, "prefix too short");
    }
    let c = match seq.shift().and_then(|s| mrank(&s)) {
        Ok(c) => c,
        Err(e) => return failed(SHIFTED, e),
    };
    if !c.is_certified() || c.zero_sequence {
        return verdict(SHIFTED, status_class(&c), "");
    }
    let tol = Tolerances::default();
    let masses: Option<Vec<u64>> = super::integer_masses(&c, &tol);
    match masses {
        Some(ms) => {
            let total: u64 = ms.iter().sum();
            verdict(SHIFTED, Classification::Rank(total as usize), format!("{} distinct atoms", c.rank))
        }
        None => verdict(SHIFTED, Classification::NonIntegerMasses, ""),
    }
}

fn newton_polynomial(seq: &SequenceWindow) -> Verdict {
    if seq.is_zero() {
        return verdict(NEWTON, Classification::ZeroSequence, "");
    }
    let np = match power_sums_to_newton(seq) {
        Ok(np) => np,
        Err(e) => return failed(NEWTON, e),
    };
    let r = np.degree();
    let class = if r >= 1 && r < seq.len() && newton_tail_check(&np, seq, r) {
        Classification::Rank(r)
    } else {
        Classification::NoneWithinPrefix
    };
    verdict(NEWTON, class, format!("degree {r}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(start: usize, v: &[i64]) -> TfaeReport {
        tfae_crosscheck(&SequenceWindow::from_ints(start, v).unwrap()).unwrap()
    }

    fn all(r: &TfaeReport, class: Classification) {
        assert!(r.agree, "{}", r.render());
        assert!(r.verdicts.iter().all(|v| v.class == class), "{}", r.render());
    }

    #[test]
    fn moment_rank_examples() {
        all(&report(0, &[1, 1, 2, 3, 5, 8, 13]), Classification::Rank(2));
        all(&report(0, &[0, 2, 8, 24, 64, 160]), Classification::NotSimple);
        all(&report(0, &[0, 0, 0, 0]), Classification::ZeroSequence);
        all(&report(0, &[1, 1, 2]), Classification::NoneWithinPrefix);
        all(&report(0, &[1, 0, 0, 0, 0]), Classification::NotSimple);
        all(&report(0, &[5, 1, 1, 1, 1, 1]), Classification::NotSimple);
    }

    #[test]
    fn unitary_examples() {
        all(&report(1, &[5, 13, 35, 97, 275]), Classification::Rank(2));
        let r = report(1, &[3, 6, 12, 24, 48]);
        assert!(r.agree, "{}", r.render());
        assert_eq!(r.verdicts[1].class, Classification::NonIntegerMasses);
        let r = report(1, &[1, 5, 13, 35]);
        assert!(r.agree, "{}", r.render());
    }

    #[test]
    fn disagreement_is_rendered() {
        let r = TfaeReport {
            start_index: 0,
            verdicts: vec![
                verdict(SIMPLE_RECURRENCE, Classification::Rank(2), ""),
                verdict(HANKEL, Classification::NotSimple, ""),
            ],
            agree: false,
            first_disagreement: Some((0, 1)),
        };
        let text = r.render();
        assert!(text.contains("- (2)") && text.contains("+ (3)"), "{text}");
        assert!(r.consensus().is_none());
    }
}
