// SPDX-License-Identifier: Apache-2.0

// Shared reader for the nested text forms `name(arg,...)`.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("unexpected character {found:?} at position {pos}")]
    Unexpected { pos: usize, found: char },
    #[error("unexpected end of input at position {pos}")]
    UnexpectedEnd { pos: usize },
    #[error("{head} takes {expected} arguments, got {found} (at position {pos})")]
    Arity {
        pos: usize,
        head: char,
        expected: &'static str,
        found: usize,
    },
    #[error("unknown constructor {found:?} at position {pos}")]
    UnknownHead { pos: usize, found: char },
}

impl TermError {
    pub fn position(&self) -> usize {
        match self {
            TermError::Unexpected { pos, .. }
            | TermError::UnexpectedEnd { pos }
            | TermError::Arity { pos, .. }
            | TermError::UnknownHead { pos, .. } => *pos,
        }
    }
}

/// A parsed term: a one-character head and its arguments.
pub(crate) struct Term {
    pub pos: usize,
    pub head: char,
    pub args: Vec<Term>,
}

pub(crate) fn parse_term(text: &str) -> Result<Term, TermError> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let t = term(&chars, &mut pos)?;
    skip_ws(&chars, &mut pos);
    if pos < chars.len() {
        return Err(TermError::Unexpected { pos, found: chars[pos] });
    }
    Ok(t)
}

fn skip_ws(chars: &[char], pos: &mut usize) {
    while *pos < chars.len() && chars[*pos].is_whitespace() {
        *pos += 1;
    }
}

fn term(chars: &[char], pos: &mut usize) -> Result<Term, TermError> {
    skip_ws(chars, pos);
    let start = *pos;
    let head = match chars.get(start) {
        Some(&c) if c.is_ascii_alphabetic() => c,
        Some(&c) => return Err(TermError::Unexpected { pos: start, found: c }),
        None => return Err(TermError::UnexpectedEnd { pos: start }),
    };
    *pos += 1;
    let mut args = Vec::new();
    skip_ws(chars, pos);
    if chars.get(*pos) == Some(&'(') {
        *pos += 1;
        loop {
            args.push(term(chars, pos)?);
            skip_ws(chars, pos);
            match chars.get(*pos) {
                Some(',') => *pos += 1,
                Some(')') => {
                    *pos += 1;
                    break;
                }
                Some(&c) => return Err(TermError::Unexpected { pos: *pos, found: c }),
                None => return Err(TermError::UnexpectedEnd { pos: *pos }),
            }
        }
    }
    Ok(Term { pos: start, head, args })
}
