//! Plain-text input formats: bivector files, structure-constant files, and
//! candidate-family files for the dimension-4 scaling search.
//!
//! All formats share the same line discipline: one assignment per line,
//! `#` starts a comment, blank lines are ignored.  A bivector file is
//!
//! ```text
//! d = 3
//! a12 = 1
//! a13 = x1        # omitted entries default to 0
//! ```
//!
//! a structure-constant file replaces the `aij` lines with `c[i,j,k] = p/q`,
//! and a family file is a sequence of bivector blocks, each ending with a
//! `phi = <poly>` line, separated by blank lines.

use starq_core::{parse_poly, Bivector, LieStructure, Polynomial, Rat};
use thiserror::Error;

/// A parse failure, annotated with the 1-based source line.
#[derive(Debug, Error)]
pub enum FormatError {
    /// Problem tied to one input line.
    #[error("line {line}: {msg}")]
    Line {
        /// 1-based line number.
        line: usize,
        /// What went wrong.
        msg: String,
    },
    /// Problem with the file as a whole.
    #[error("{0}")]
    File(String),
}

/// Either accepted input of the `check` subcommand.
#[derive(Debug, Clone)]
pub enum CheckInput {
    /// An explicit bivector.
    Bivector(Bivector<Polynomial>),
    /// Structure constants (checked, then turned into a linear bivector).
    Lie(LieStructure),
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

/// Splits `line` at `=` into trimmed key and value.
fn assignment(line: &str, lineno: usize) -> Result<(&str, &str), FormatError> {
    let (key, value) = line.split_once('=').ok_or_else(|| FormatError::Line {
        line: lineno,
        msg: "expected an assignment `key = value`".into(),
    })?;
    Ok((key.trim(), value.trim()))
}

/// Parses `a12` or `a[1,2]` into the index pair.
fn bivector_key(key: &str, lineno: usize) -> Result<(u32, u32), FormatError> {
    let body = key.strip_prefix('a').ok_or_else(|| FormatError::Line {
        line: lineno,
        msg: format!("unknown key `{key}` (expected `d`, `aij`, or `phi`)"),
    })?;
    let digits: Vec<u32> = if let Some(inner) = body.strip_prefix('[') {
        let inner = inner.strip_suffix(']').ok_or_else(|| FormatError::Line {
            line: lineno,
            msg: format!("unterminated bracket in `{key}`"),
        })?;
        inner
            .split(',')
            .map(|t| {
                t.trim().parse().map_err(|_| FormatError::Line {
                    line: lineno,
                    msg: format!("invalid index `{t}` in `{key}`"),
                })
            })
            .collect::<Result<_, _>>()?
    } else {
        body.chars()
            .map(|c| {
                c.to_digit(10).ok_or_else(|| FormatError::Line {
                    line: lineno,
                    msg: format!("invalid index digit `{c}` in `{key}`"),
                })
            })
            .collect::<Result<_, _>>()?
    };
    match digits[..] {
        [i, j] => Ok((i, j)),
        _ => Err(FormatError::Line {
            line: lineno,
            msg: format!("`{key}` must carry exactly two indices"),
        }),
    }
}

/// Parses `c[i,j,k]` into the index triple.
fn lie_key(key: &str, lineno: usize) -> Result<(u32, u32, u32), FormatError> {
    let body = key
        .strip_prefix("c[")
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| FormatError::Line {
            line: lineno,
            msg: format!("unknown key `{key}` (expected `d` or `c[i,j,k]`)"),
        })?;
    let parts: Vec<u32> = body
        .split(',')
        .map(|t| {
            t.trim().parse().map_err(|_| FormatError::Line {
                line: lineno,
                msg: format!("invalid index `{t}` in `{key}`"),
            })
        })
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [i, j, k] => Ok((i, j, k)),
        _ => Err(FormatError::Line {
            line: lineno,
            msg: format!("`{key}` must carry exactly three indices"),
        }),
    }
}

/// Numbered, comment-stripped, nonblank lines.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(n, l)| (n + 1, strip_comment(l).trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// Reads the mandatory leading `d = <dim>` line.
fn take_dimension<'a, I>(lines: &mut I) -> Result<usize, FormatError>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let (lineno, line) = lines
        .next()
        .ok_or_else(|| FormatError::File("empty input".into()))?;
    let (key, value) = assignment(line, lineno)?;
    if key != "d" {
        return Err(FormatError::Line {
            line: lineno,
            msg: format!("the first assignment must be `d = <dim>`, found `{key}`"),
        });
    }
    let dim: usize = value.parse().map_err(|_| FormatError::Line {
        line: lineno,
        msg: format!("invalid dimension `{value}`"),
    })?;
    if dim == 0 {
        return Err(FormatError::Line { line: lineno, msg: "dimension must be positive".into() });
    }
    Ok(dim)
}

fn parse_entry_poly(value: &str, dim: usize, lineno: usize) -> Result<Polynomial, FormatError> {
    parse_poly(value, dim).map_err(|e| FormatError::Line { line: lineno, msg: e.to_string() })
}

/// Parses a bivector block; `phi_slot`, when given, receives the value of a
/// trailing `phi = <poly>` assignment (family-file records).
fn parse_bivector_lines<'a, I>(
    lines: I,
    phi_slot: Option<&mut Option<Polynomial>>,
) -> Result<Bivector<Polynomial>, FormatError>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let mut lines = lines.peekable();
    let dim = take_dimension(&mut lines)?;
    let mut out = Bivector::new(dim);
    let mut phi_out = None;
    for (lineno, line) in lines {
        let (key, value) = assignment(line, lineno)?;
        if key == "phi" {
            if phi_out.is_some() {
                return Err(FormatError::Line {
                    line: lineno,
                    msg: "duplicate `phi` assignment".into(),
                });
            }
            phi_out = Some(parse_entry_poly(value, dim, lineno)?);
            continue;
        }
        let (i, j) = bivector_key(key, lineno)?;
        let poly = parse_entry_poly(value, dim, lineno)?;
        out.set(i, j, poly)
            .map_err(|e| FormatError::Line { line: lineno, msg: e.to_string() })?;
    }
    match (phi_slot, phi_out) {
        (Some(slot), phi) => *slot = phi,
        (None, Some(_)) => {
            return Err(FormatError::File(
                "`phi` assignments belong in family files only".into(),
            ))
        }
        (None, None) => {}
    }
    Ok(out)
}

/// Parses a bivector file (`d = …` followed by `aij = <poly>` lines).
pub fn parse_bivector_file(text: &str) -> Result<Bivector<Polynomial>, FormatError> {
    parse_bivector_lines(content_lines(text), None)
}

/// Parses a structure-constant file (`d = …` followed by `c[i,j,k] = p/q`).
pub fn parse_lie_file(text: &str) -> Result<LieStructure, FormatError> {
    let mut lines = content_lines(text);
    let dim = take_dimension(&mut lines)?;
    let mut out = LieStructure::new(dim);
    for (lineno, line) in lines {
        let (key, value) = assignment(line, lineno)?;
        let (i, j, k) = lie_key(key, lineno)?;
        let c: Rat = value.parse().map_err(|_| FormatError::Line {
            line: lineno,
            msg: format!("invalid rational `{value}`"),
        })?;
        out.set(i, j, k, c)
            .map_err(|e| FormatError::Line { line: lineno, msg: e.to_string() })?;
    }
    Ok(out)
}

/// Parses either check-input format, deciding by the first non-`d` key:
/// `c[…` selects structure constants, `a…` selects a plain bivector.
pub fn parse_check_file(text: &str) -> Result<CheckInput, FormatError> {
    let is_lie = content_lines(text)
        .map(|(_, l)| l)
        .find(|l| !l.starts_with('d') || l.split_once('=').is_none())
        .map_or(false, |l| l.starts_with("c["));
    if is_lie {
        Ok(CheckInput::Lie(parse_lie_file(text)?))
    } else {
        Ok(CheckInput::Bivector(parse_bivector_file(text)?))
    }
}

/// Parses a family file: bivector blocks, each with a `phi = <poly>` line,
/// separated by blank lines.
pub fn parse_family_file(
    text: &str,
) -> Result<Vec<(Bivector<Polynomial>, Polynomial)>, FormatError> {
    let mut out = Vec::new();
    let mut block: Vec<(usize, &str)> = Vec::new();
    let mut flush = |block: &mut Vec<(usize, &str)>| -> Result<(), FormatError> {
        if block.is_empty() {
            return Ok(());
        }
        let first_line = block[0].0;
        let mut phi = None;
        let b = parse_bivector_lines(block.drain(..), Some(&mut phi))?;
        let phi = phi.ok_or_else(|| FormatError::Line {
            line: first_line,
            msg: "family record is missing its `phi = <poly>` line".into(),
        })?;
        out.push((b, phi));
        Ok(())
    };
    for (n, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            flush(&mut block)?;
        } else {
            block.push((n + 1, line));
        }
    }
    flush(&mut block)?;
    if out.is_empty() {
        return Err(FormatError::File("family file contains no records".into()));
    }
    Ok(out)
}
