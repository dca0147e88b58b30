//! Textual DNF format.
//!
//! Grammar: a DNF is a sequence of terms separated by `|`, `+`, or
//! newlines; a term is a sequence of variables separated by whitespace,
//! `*`, or `&`; a variable matches `[A-Za-z_][A-Za-z0-9_]*`; `#` starts a
//! comment running to the end of the line. The constant `1` is accepted
//! inside terms and normalized away (a term of only `1`s makes the whole
//! DNF the constant TRUE); the constant `0` is rejected, as are negations.
//!
//! Rendering is the `Display` impl of [`PositiveDnf`]; `parse_dnf` is its
//! inverse on canonical formulas.

use std::fmt;

use thiserror::Error;

use crate::dnf::{PositiveDnf, Term};
use crate::variable::Variable;

/// Parse failure with 1-based line/column positions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("input contains no terms")]
    EmptyInput,
    #[error("line {line}, column {column}: negation is not allowed in a positive DNF")]
    NegationRejected { line: usize, column: usize },
    #[error("line {line}, column {column}: constant 0 is not allowed in a positive DNF")]
    ConstantZero { line: usize, column: usize },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}

fn syntax(line: usize, column: usize, message: impl fmt::Display) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.to_string(),
    }
}

/// Parses the textual format into a canonical in-memory DNF; duplicate
/// variables and terms merge by set semantics.
pub fn parse_dnf(input: &str) -> Result<PositiveDnf, ParseError> {
    let mut terms: Vec<Term> = Vec::new();
    let mut saw_constant_term = false;

    for (line_idx, raw_line) in input.lines().enumerate() {
        let line_no = line_idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };

        // Current term accumulator: variables seen, whether a lone `1`
        // occurred, and whether a `*`/`&` is waiting for its right operand.
        let mut vars: Vec<Variable> = Vec::new();
        let mut ones = false;
        let mut pending_conj: Option<usize> = None;

        let mut chars = line.char_indices().peekable();
        while let Some((byte_pos, ch)) = chars.next() {
            let column = byte_pos + 1;
            match ch {
                c if c.is_whitespace() => {}
                '|' | '+' => {
                    if let Some(col) = pending_conj {
                        return Err(syntax(line_no, col, "dangling conjunction operator"));
                    }
                    flush_term(&mut terms, &mut vars, &mut ones, &mut saw_constant_term);
                }
                '*' | '&' => {
                    if vars.is_empty() && !ones {
                        return Err(syntax(
                            line_no,
                            column,
                            "conjunction operator without a left operand",
                        ));
                    }
                    if pending_conj.is_some() {
                        return Err(syntax(line_no, column, "repeated conjunction operator"));
                    }
                    pending_conj = Some(column);
                }
                '!' | '~' => {
                    return Err(ParseError::NegationRejected {
                        line: line_no,
                        column,
                    });
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let mut name = String::from(c);
                    while let Some(&(_, next)) = chars.peek() {
                        if next.is_ascii_alphanumeric() || next == '_' {
                            name.push(next);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    vars.push(Variable::intern(&name));
                    pending_conj = None;
                }
                c if c.is_ascii_digit() => {
                    let mut digits = String::from(c);
                    while let Some(&(_, next)) = chars.peek() {
                        if next.is_ascii_alphanumeric() || next == '_' {
                            digits.push(next);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    match digits.as_str() {
                        "1" => {
                            ones = true;
                            pending_conj = None;
                        }
                        "0" => {
                            return Err(ParseError::ConstantZero {
                                line: line_no,
                                column,
                            });
                        }
                        other => {
                            return Err(syntax(
                                line_no,
                                column,
                                format!("invalid token {other:?}"),
                            ));
                        }
                    }
                }
                other => {
                    return Err(syntax(
                        line_no,
                        column,
                        format!("unexpected character {other:?}"),
                    ));
                }
            }
        }
        if let Some(col) = pending_conj {
            return Err(syntax(line_no, col, "dangling conjunction operator"));
        }
        // Newline separates terms.
        flush_term(&mut terms, &mut vars, &mut ones, &mut saw_constant_term);
    }

    if saw_constant_term {
        // Some term was the constant 1, so the whole disjunction is TRUE.
        return Ok(PositiveDnf::True);
    }
    if terms.is_empty() {
        return Err(ParseError::EmptyInput);
    }
    Ok(PositiveDnf::from_terms(terms))
}

fn flush_term(
    terms: &mut Vec<Term>,
    vars: &mut Vec<Variable>,
    ones: &mut bool,
    saw_constant_term: &mut bool,
) {
    if !vars.is_empty() {
        terms.push(Term::new(vars.drain(..)));
    } else if *ones {
        *saw_constant_term = true;
    }
    *ones = false;
}
