use std::fmt::Write as _;

use serde::Serialize;

use seqrank::analytic::{genfun_with, recover_measure_with, Tolerances};
use seqrank::exactnum::fmt_decimal;
use seqrank::ranks::{mrank_with, rrank, tfae_crosscheck, urank_with};
use seqrank::{RankCertificate, RankKind, Scalar};

use crate::input::parse_sequence;
use crate::{exit_code, CliError, EXIT_DISAGREE, EXIT_OK};

/// What a command prints and the status it exits with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    pub fn from_error(e: CliError) -> Self {
        Self {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

fn run(f: impl FnOnce() -> Result<Outcome, CliError>) -> Outcome {
    f().unwrap_or_else(Outcome::from_error)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankKindArg {
    Rrank,
    Mrank,
    Urank,
}

fn json<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn kind_name(k: RankKind) -> &'static str {
    match k {
        RankKind::Recurrence => "recurrence",
        RankKind::Moment => "moment",
        RankKind::Unitary => "unitary",
    }
}

pub fn render_certificate(c: &RankCertificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "kind: {}", kind_name(c.kind));
    let _ = writeln!(out, "status: {}", c.status);
    let _ = writeln!(out, "rank: {}", c.rank);
    if c.zero_sequence {
        let _ = writeln!(out, "zero_sequence: true");
    }
    if !c.char_poly.is_zero() {
        let _ = writeln!(out, "char_poly: {}", c.char_poly);
    }
    let _ = writeln!(out, "verified_shifts: {}", c.verified_shifts);
    if !c.atoms.is_empty() {
        let _ = writeln!(out, "exact: {}", c.exact);
        let _ = writeln!(out, "residual: {}", fmt_decimal(c.residual));
        let label = if c.kind == RankKind::Unitary { "multiplicity" } else { "mass" };
        let _ = writeln!(out, "atoms:");
        for (b, m) in c.atoms.iter().zip(&c.masses) {
            let _ = writeln!(out, "  {b}  {label} {m}");
        }
    }
    out
}

pub fn cmd_rank(text: &str, kind: Option<RankKindArg>, as_json: bool, tol: &Tolerances) -> Outcome {
    run(|| {
        let seq = parse_sequence(text)?;
        let kind = kind.unwrap_or(if seq.start_index() == 1 {
            RankKindArg::Urank
        } else {
            RankKindArg::Mrank
        });
        let cert = match kind {
            RankKindArg::Rrank => rrank(&seq)?,
            RankKindArg::Mrank => mrank_with(&seq, tol)?,
            RankKindArg::Urank => urank_with(&seq, tol)?,
        };
        let stdout = if as_json { json(&cert)? } else { render_certificate(&cert) };
        Ok(Outcome::ok(exit_code(cert.status), stdout))
    })
}

#[derive(Serialize)]
struct RecoverReport<'a> {
    convention: &'static str,
    support: &'a [Scalar],
    masses: &'a [Scalar],
    residual: String,
}

pub fn cmd_recover(text: &str, as_json: bool, tol: &Tolerances) -> Outcome {
    run(|| {
        let seq = parse_sequence(text)?;
        let mu = recover_measure_with(&seq, tol)?;
        let residual = mu.residual(&seq)?;
        let convention = if seq.start_index() == 1 { "unitary-rank" } else { "moment-rank" };
        if as_json {
            let report = RecoverReport {
                convention,
                support: mu.support(),
                masses: mu.masses(),
                residual: fmt_decimal(residual),
            };
            return Ok(Outcome::ok(EXIT_OK, json(&report)?));
        }
        let mut out = String::new();
        let _ = writeln!(out, "convention: {convention}");
        let _ = writeln!(out, "atoms: {}", mu.len());
        for (b, m) in mu.support().iter().zip(mu.masses()) {
            let _ = writeln!(out, "  atom {b}  mass {m}");
        }
        let _ = writeln!(out, "residual: {}", fmt_decimal(residual));
        Ok(Outcome::ok(EXIT_OK, out))
    })
}

pub fn cmd_genfun(text: &str, tol: &Tolerances) -> Outcome {
    run(|| {
        let seq = parse_sequence(text)?;
        let f = genfun_with(&seq, tol)?;
        let mut out = String::new();
        let _ = writeln!(out, "{}", f.display());
        let _ = writeln!(out, "numerator: {}", f.numerator.display_ascending("z"));
        let _ = writeln!(out, "denominator: {}", f.denominator.display_ascending("z"));
        let _ = writeln!(out, "poles: {}", f.pole_count());
        for (z, m) in &f.poles {
            let _ = writeln!(out, "  {z}  multiplicity {m}");
        }
        let mut stderr = String::new();
        if !f.simple {
            stderr.push_str("warning: poles are not simple\n");
        }
        Ok(Outcome {
            code: EXIT_OK,
            stdout: out,
            stderr,
        })
    })
}

pub fn cmd_verify(text: &str) -> Outcome {
    run(|| {
        let seq = parse_sequence(text)?;
        let report = tfae_crosscheck(&seq)?;
        let code = if report.agree { EXIT_OK } else { EXIT_DISAGREE };
        Ok(Outcome::ok(code, report.render()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn rank_exit_codes() {
        assert_eq!(cmd_rank("1\n1\n2\n3\n5\n8\n13\n", Some(RankKindArg::Mrank), false, &tol()).code, 0);
        assert_eq!(cmd_rank("0\n2\n8\n24\n64\n160\n", None, false, &tol()).code, 2);
        assert_eq!(cmd_rank("1\n1\n2\n", None, false, &tol()).code, 3);
        assert_eq!(cmd_rank("@index 1\n3\n6\n12\n24\n48\n", None, false, &tol()).code, 4);
        assert_eq!(cmd_rank("1\nfoo\n", None, false, &tol()).code, 1);
        assert_eq!(cmd_rank("@index 1\n1\n2\n3\n", Some(RankKindArg::Mrank), false, &tol()).code, 1);
    }

    #[test]
    fn zero_sequence_report() {
        let o = cmd_rank("0\n0\n0\n0\n", None, false, &tol());
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("rank: 0") && o.stdout.contains("zero_sequence: true"), "{}", o.stdout);
    }

    #[test]
    fn genfun_warns_on_repeated_poles() {
        let o = cmd_genfun("0\n2\n8\n24\n64\n160\n", &tol());
        assert!(o.stdout.starts_with("2z / (1 - 2z)^2\n"));
        assert!(o.stderr.contains("not simple"));
    }

    #[test]
    fn recover_reports_unitary_masses() {
        let o = cmd_recover("@index 1\n5\n13\n35\n97\n", false, &tol());
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("atom 2  mass 1") && o.stdout.contains("atom 3  mass 1"), "{}", o.stdout);
    }

    #[test]
    fn json_is_deterministic() {
        let text = "1\n1\n2\n3\n5\n8\n13\n";
        let a = cmd_rank(text, None, true, &tol());
        let b = cmd_rank(text, None, true, &tol());
        assert_eq!(a, b);
        let c: RankCertificate = serde_json::from_str(&a.stdout).unwrap();
        assert_eq!(c.rank, 2);
    }
}
