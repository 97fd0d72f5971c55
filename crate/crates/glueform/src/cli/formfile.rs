//! Form files: one entry per line,
//! `coeff = "<poly>" frame = <var> <var> ...`, with an empty frame for
//! 0-forms.  All entries must have the same frame length, which is the
//! degree of the form; frame variables must be strictly increasing in the
//! domain's variable order.  `#` comments and blank lines are ignored.

use crate::exterior::DifferentialForm;
use crate::ratpoly::{parse_poly, Polynomial, VarContext};

use super::presentation::FileError;

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, FileError> {
    Err(FileError {
        line,
        message: message.into(),
    })
}

fn parse_entry(line_no: usize, line: &str, ctx: &VarContext) -> Result<(Vec<usize>, Polynomial), FileError> {
    let rest = match line.strip_prefix("coeff") {
        Some(rest) => rest.trim_start(),
        None => return err(line_no, "entry must start with `coeff`"),
    };
    let rest = match rest.strip_prefix('=') {
        Some(rest) => rest.trim_start(),
        None => return err(line_no, "expected `=` after `coeff`"),
    };
    let rest = match rest.strip_prefix('"') {
        Some(rest) => rest,
        None => return err(line_no, "coefficient must be a quoted polynomial"),
    };
    let Some(close) = rest.find('"') else {
        return err(line_no, "unterminated quoted coefficient");
    };
    let poly_text = &rest[..close];
    let rest = rest[close + 1..].trim_start();
    let rest = match rest.strip_prefix("frame") {
        Some(rest) => rest.trim_start(),
        None => return err(line_no, "expected `frame` after the coefficient"),
    };
    let rest = match rest.strip_prefix('=') {
        Some(rest) => rest.trim(),
        None => return err(line_no, "expected `=` after `frame`"),
    };

    let coeff = parse_poly(poly_text, ctx).map_err(|e| FileError {
        line: line_no,
        message: format!("coefficient: {e}"),
    })?;
    let mut frame = Vec::new();
    for word in rest.split_whitespace() {
        let Some(index) = ctx.index_of(word) else {
            return err(line_no, format!("unknown frame variable `{word}`"));
        };
        if let Some(&last) = frame.last() {
            if index <= last {
                return err(
                    line_no,
                    format!("frame variables must be strictly increasing in the order [{ctx}]"),
                );
            }
        }
        frame.push(index);
    }
    Ok((frame, coeff))
}

/// Parses a form file over the given domain context.
pub fn parse_form_file(text: &str, ctx: &VarContext) -> Result<DifferentialForm, FileError> {
    let mut entries: Vec<(usize, Vec<usize>, Polynomial)> = Vec::new();
    for (index, raw_line) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (frame, coeff) = parse_entry(line_no, line, ctx)?;
        entries.push((line_no, frame, coeff));
    }
    let Some((_, first_frame, _)) = entries.first() else {
        return err(0, "form file has no entries");
    };
    let degree = first_frame.len();
    for (line_no, frame, _) in &entries {
        if frame.len() != degree {
            return err(
                *line_no,
                format!(
                    "mixed degrees: this entry has frame length {}, the first entry has {degree}",
                    frame.len()
                ),
            );
        }
    }
    Ok(DifferentialForm::new(
        ctx.clone(),
        degree,
        entries.into_iter().map(|(_, frame, coeff)| (frame, coeff)),
    ))
}
