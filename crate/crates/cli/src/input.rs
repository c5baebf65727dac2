//! Sequence and matrix files.
//!
//! Sequences hold one scalar literal per line; a header `@index 0` or
//! `@index 1` picks the first index (default 0). Matrices hold one row per
//! line with whitespace-separated literals. In both, blank lines and lines
//! starting with `#` are skipped.

use std::path::Path;

use seqrank::{ExactMatrix, GaussianRational, SequenceWindow};

use crate::CliError;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn literal(lineno: usize, s: &str) -> Result<GaussianRational, CliError> {
    s.parse()
        .map_err(|e| CliError::Parse(format!("line {lineno}: {e}")))
}

pub fn parse_sequence(text: &str) -> Result<SequenceWindow, CliError> {
    let mut start = None;
    let mut terms = Vec::new();
    for (lineno, line) in content_lines(text) {
        if let Some(rest) = line.strip_prefix("@index") {
            if start.is_some() || !terms.is_empty() {
                return Err(CliError::Parse(format!(
                    "line {lineno}: @index must come once, before any value"
                )));
            }
            start = Some(match rest.trim() {
                "0" => 0,
                "1" => 1,
                other => {
                    return Err(CliError::Parse(format!(
                        "line {lineno}: @index must be 0 or 1, got {other:?}"
                    )))
                }
            });
            continue;
        }
        terms.push(literal(lineno, line)?);
    }
    if terms.is_empty() {
        return Err(CliError::Parse("sequence file holds no values".into()));
    }
    Ok(SequenceWindow::new(start.unwrap_or(0), terms)?)
}

pub fn parse_matrix(text: &str) -> Result<ExactMatrix, CliError> {
    let mut rows = Vec::new();
    for (lineno, line) in content_lines(text) {
        let row = line
            .split_whitespace()
            .map(|tok| literal(lineno, tok))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first().map(Vec::len) {
            if row.len() != first {
                return Err(CliError::Parse(format!(
                    "line {lineno}: row has {} entries, expected {first}",
                    row.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::Parse("matrix file holds no rows".into()));
    }
    Ok(ExactMatrix::from_rows(rows)?)
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_with_header_and_comments() {
        let s = parse_sequence("# power sums\n@index 1\n5\n\n13\n# mid\n 35 \n1/2+i\n").unwrap();
        assert_eq!(s.start_index(), 1);
        assert_eq!(s.len(), 4);
        assert_eq!(s.terms()[3], GaussianRational::from_parts(1, 2, 1, 1));
    }

    #[test]
    fn sequence_errors() {
        assert!(parse_sequence("").is_err());
        assert!(parse_sequence("# only\n").is_err());
        assert!(parse_sequence("1\n@index 1\n").is_err());
        assert!(parse_sequence("@index 2\n1\n").is_err());
        let e = parse_sequence("1\n2\nx\n").unwrap_err().to_string();
        assert!(e.contains("line 3"), "{e}");
    }

    #[test]
    fn matrix_rows() {
        let m = parse_matrix("0 1 0\n1 0 1\n# c\n0 1 0\n").unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 3));
        assert!(parse_matrix("1 2\n3\n").is_err());
        assert_eq!(parse_matrix("1 2 3\n").unwrap().rows(), 1);
    }
}
