//! Closed-walk counts of a matrix as power sums of its eigenvalues.

use std::fmt::Write as _;

use serde::Serialize;

use seqrank::analytic::Tolerances;
use seqrank::ranks::urank_with;
use seqrank::{ExactMatrix, GaussianRational, RankStatus, SequenceWindow};

use crate::commands::Outcome;
use crate::input::parse_matrix;
use crate::{exit_code, CliError, EXIT_DISAGREE, EXIT_OK};

/// `tr(A^n)` for `n = 1..=count`.
pub fn walk_traces(a: &ExactMatrix, count: usize) -> Result<Vec<GaussianRational>, CliError> {
    let mut power = a.clone();
    let mut out = Vec::with_capacity(count);
    for n in 1..=count {
        out.push(power.trace()?);
        if n < count {
            power = power.matmul(a)?;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WalkReport {
    pub size: usize,
    pub traces: Vec<GaussianRational>,
    pub status: RankStatus,
    /// Nonzero eigenvalues counted with algebraic multiplicity.
    pub nonzero_eigenvalues: usize,
    /// Algebraic multiplicity of the eigenvalue 0.
    pub zero_multiplicity: usize,
    pub elimination_rank: usize,
    pub symmetric: bool,
    /// For Hermitian input the two counts must coincide.
    pub agrees_with_rank: Option<bool>,
}

pub fn walk_report(a: &ExactMatrix, tol: &Tolerances) -> Result<WalkReport, CliError> {
    if !a.is_square() {
        return Err(CliError::Parse(format!("matrix is {}x{}, not square", a.rows(), a.cols())));
    }
    let n = a.rows();
    let traces = walk_traces(a, 2 * n)?;
    let cert = urank_with(&SequenceWindow::new(1, traces.clone())?, tol)?;
    let symmetric = a.is_hermitian();
    let elimination_rank = a.rank();
    Ok(WalkReport {
        size: n,
        traces,
        status: cert.status,
        nonzero_eigenvalues: cert.rank,
        zero_multiplicity: n - cert.rank.min(n),
        elimination_rank,
        symmetric,
        agrees_with_rank: symmetric.then_some(cert.rank == elimination_rank),
    })
}

pub fn cmd_walks(text: &str, as_json: bool, tol: &Tolerances) -> Outcome {
    let run = || -> Result<Outcome, CliError> {
        let a = parse_matrix(text)?;
        let r = walk_report(&a, tol)?;
        let code = match (r.status, r.agrees_with_rank) {
            (RankStatus::Certified, Some(false)) => EXIT_DISAGREE,
            (RankStatus::Certified, _) => EXIT_OK,
            (s, _) => exit_code(s),
        };
        if as_json {
            let mut s = serde_json::to_string_pretty(&r).map_err(|e| CliError::Io(e.to_string()))?;
            s.push('\n');
            return Ok(Outcome {
                code,
                stdout: s,
                stderr: String::new(),
            });
        }
        let mut out = String::new();
        let traces: Vec<String> = r.traces.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "traces tr(A^n), n = 1..{}: {}", 2 * r.size, traces.join(" "));
        let _ = writeln!(out, "status: {}", r.status);
        let _ = writeln!(out, "unitary rank (nonzero eigenvalues, algebraic multiplicity): {}", r.nonzero_eigenvalues);
        let _ = writeln!(out, "zero eigenvalue multiplicity: {}", r.zero_multiplicity);
        match r.agrees_with_rank {
            Some(ok) => {
                let _ = writeln!(
                    out,
                    "matrix rank by elimination: {} ({})",
                    r.elimination_rank,
                    if ok { "agrees" } else { "DISAGREES" }
                );
            }
            None => {
                let _ = writeln!(
                    out,
                    "matrix rank by elimination: {} (not symmetric; may differ from the eigenvalue count)",
                    r.elimination_rank
                );
            }
        }
        Ok(Outcome {
            code,
            stdout: out,
            stderr: String::new(),
        })
    };
    run().unwrap_or_else(Outcome::from_error)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(rows: &[&[i64]]) -> WalkReport {
        walk_report(&ExactMatrix::from_int_rows(rows).unwrap(), &Tolerances::default()).unwrap()
    }

    #[test]
    fn path_graph() {
        let r = report(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]]);
        let t: Vec<GaussianRational> = [0, 4, 0, 8, 0, 16].iter().map(|&x| GaussianRational::from_int(x)).collect();
        assert_eq!(r.traces, t);
        assert_eq!((r.nonzero_eigenvalues, r.zero_multiplicity), (2, 1));
        assert_eq!(r.agrees_with_rank, Some(true));
    }

    #[test]
    fn identity_and_exchange() {
        let r = report(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!((r.nonzero_eigenvalues, r.zero_multiplicity), (3, 0));
        let r = report(&[&[0, 1], &[1, 0]]);
        assert_eq!(r.nonzero_eigenvalues, 2);
    }

    #[test]
    fn nilpotent_input_is_labelled() {
        // rank 1, but every eigenvalue is 0
        let r = report(&[&[0, 1], &[0, 0]]);
        assert_eq!((r.nonzero_eigenvalues, r.zero_multiplicity, r.elimination_rank), (0, 2, 1));
        assert_eq!(r.agrees_with_rank, None);
    }

    #[test]
    fn non_square_is_an_input_error() {
        assert_eq!(cmd_walks("1 2\n", false, &Tolerances::default()).code, 1);
    }
}
