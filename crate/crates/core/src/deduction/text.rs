//! S-expression proof format:
//!
//! ```text
//! (hyp "F" [mark]) | (intro "F" mark SUB) | (elim "F" MINOR MAJOR)
//! ```

use thiserror::Error;

use super::Derivation;
use crate::formula::{self, Formula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofTextError {
    #[error("proof syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("bad formula at offset {offset}: {source}")]
    Formula {
        offset: usize,
        #[source]
        source: formula::ParseError,
    },
}

fn syntax(offset: usize, message: impl Into<String>) -> ProofTextError {
    ProofTextError::Syntax {
        offset,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok<'a> {
    Open,
    Close,
    Word(&'a str),
    Str(&'a str),
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn next(&mut self) -> Result<Option<(usize, Tok<'a>)>, ProofTextError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let Some(c) = rest.chars().next() else {
            return Ok(None);
        };
        let tok = match c {
            '(' => {
                self.pos += 1;
                Tok::Open
            }
            ')' => {
                self.pos += 1;
                Tok::Close
            }
            '"' => {
                let Some(end) = rest[1..].find('"') else {
                    return Err(syntax(start, "unterminated string"));
                };
                self.pos += end + 2;
                Tok::Str(&rest[1..end + 1])
            }
            _ => {
                let len = rest
                    .find(|c: char| c.is_whitespace() || c == '(' || c == ')' || c == '"')
                    .unwrap_or(rest.len());
                self.pos += len;
                Tok::Word(&rest[..len])
            }
        };
        Ok(Some((start, tok)))
    }

    fn expect_next(&mut self) -> Result<(usize, Tok<'a>), ProofTextError> {
        let at = self.pos;
        self.next()?
            .ok_or_else(|| syntax(at.max(self.text.len()), "unexpected end of input"))
    }

    fn peek(&mut self) -> Result<Option<(usize, Tok<'a>)>, ProofTextError> {
        let save = self.pos;
        let t = self.next();
        self.pos = save;
        t
    }
}

fn parse_node(lx: &mut Lexer<'_>) -> Result<Derivation, ProofTextError> {
    let (at, tok) = lx.expect_next()?;
    if tok != Tok::Open {
        return Err(syntax(at, "expected '('"));
    }
    let (at, head) = lx.expect_next()?;
    let Tok::Word(head) = head else {
        return Err(syntax(at, "expected hyp, intro or elim"));
    };
    let formula = parse_formula(lx)?;
    let node = match head {
        "hyp" => {
            let mark = match lx.peek()? {
                Some((_, Tok::Word(_))) => Some(parse_mark(lx)?),
                _ => None,
            };
            Derivation::Hypothesis { formula, mark }
        }
        "intro" => {
            let mark = parse_mark(lx)?;
            let premise = parse_node(lx)?;
            Derivation::intro(formula, mark, premise)
        }
        "elim" => {
            let minor = parse_node(lx)?;
            let major = parse_node(lx)?;
            Derivation::elim(formula, minor, major)
        }
        other => return Err(syntax(at, format!("unknown rule {other:?}"))),
    };
    let (at, tok) = lx.expect_next()?;
    if tok != Tok::Close {
        return Err(syntax(at, "expected ')'"));
    }
    Ok(node)
}

fn parse_formula(lx: &mut Lexer<'_>) -> Result<Formula, ProofTextError> {
    let (at, tok) = lx.expect_next()?;
    let Tok::Str(s) = tok else {
        return Err(syntax(at, "expected a quoted formula"));
    };
    formula::parse(s).map_err(|source| ProofTextError::Formula {
        offset: at + 1 + source.offset,
        source,
    })
}

fn parse_mark(lx: &mut Lexer<'_>) -> Result<u32, ProofTextError> {
    let (at, tok) = lx.expect_next()?;
    match tok {
        Tok::Word(w) => match w.parse::<u32>() {
            Ok(m) if m > 0 => Ok(m),
            _ => Err(syntax(at, format!("expected a positive mark, found {w:?}"))),
        },
        _ => Err(syntax(at, "expected a mark")),
    }
}

pub fn parse_proof(text: &str) -> Result<Derivation, ProofTextError> {
    let mut lx = Lexer { text, pos: 0 };
    let d = parse_node(&mut lx)?;
    if let Some((at, _)) = lx.next()? {
        return Err(syntax(at, "trailing input"));
    }
    Ok(d)
}

/// Renders a derivation on a single line.
pub fn render_proof(d: &Derivation) -> String {
    fn go(d: &Derivation, out: &mut String) {
        match d {
            Derivation::Hypothesis { formula, mark } => {
                out.push_str(&format!("(hyp \"{formula}\""));
                if let Some(m) = mark {
                    out.push_str(&format!(" {m}"));
                }
                out.push(')');
            }
            Derivation::Intro {
                conclusion,
                mark,
                premise,
            } => {
                out.push_str(&format!("(intro \"{conclusion}\" {mark} "));
                go(premise, out);
                out.push(')');
            }
            Derivation::Elim {
                conclusion,
                minor,
                major,
            } => {
                out.push_str(&format!("(elim \"{conclusion}\" "));
                go(minor, out);
                out.push(' ');
                go(major, out);
                out.push(')');
            }
        }
    }
    let mut s = String::new();
    go(d, &mut s);
    s
}
