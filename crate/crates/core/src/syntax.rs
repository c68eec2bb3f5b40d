//! Text syntax for terms.
//!
//! ```text
//! term    := factor { "x" factor }
//! factor  := primary { tail }
//! tail    := "wr[" INT "]" "Z"        -- A wr[m] Z
//!          | "wr" "Z_" INT            -- A wr Z_m
//! primary := "1" | "Z" | "Z_" INT | "(" term ")"
//! ```
//!
//! Whitespace is insignificant and wreath tails associate to the left, so
//! `Z wr[2] Z wr[3] Z` is `(Z wr[2] Z) wr[3] Z`. Printing uses the fewest
//! parentheses that parse back to the same tree; the printed form is also
//! the sort key for product factors.

use std::fmt;

use thiserror::Error;

use crate::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Z,
    Underscore,
    Times,
    Wr,
    LBracket,
    RBracket,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::Z => f.write_str("`Z`"),
            Tok::Underscore => f.write_str("`_`"),
            Tok::Times => f.write_str("`x`"),
            Tok::Wr => f.write_str("`wr`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = src[start..i]
                    .parse::<u64>()
                    .map_err(|_| ParseError::new(start, "integer out of range"))?;
                out.push((start, Tok::Int(n)));
                continue;
            }
            b'Z' => Tok::Z,
            b'_' => Tok::Underscore,
            b'x' => Tok::Times,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'w' if bytes.get(i + 1) == Some(&b'r') => {
                i += 1;
                Tok::Wr
            }
            _ => {
                let ch = src[i..].chars().next().unwrap();
                return Err(ParseError::new(i, format!("unexpected character {ch:?}")));
            }
        };
        i += 1;
        out.push((start, tok));
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Tok {
        self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.peek();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        let at = self.offset();
        let got = self.bump();
        if got == want {
            Ok(())
        } else {
            Err(ParseError::new(at, format!("expected {want}, found {got}")))
        }
    }

    fn modulus(&mut self) -> Result<u64, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(0) => Err(ParseError::new(at, "cyclic order must be at least 1")),
            Tok::Int(n) => Ok(n),
            other => Err(ParseError::new(
                at,
                format!("expected integer, found {other}"),
            )),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut factors = vec![self.factor()?];
        while self.peek() == Tok::Times {
            self.bump();
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Term::Prod(factors)
        })
    }

    fn factor(&mut self) -> Result<Term, ParseError> {
        let mut t = self.primary()?;
        while self.peek() == Tok::Wr {
            self.bump();
            let at = self.offset();
            match self.bump() {
                Tok::LBracket => {
                    let m = self.modulus()?;
                    self.expect(Tok::RBracket)?;
                    self.expect(Tok::Z)?;
                    t = Term::wr_z(t, m);
                }
                Tok::Z => {
                    self.expect(Tok::Underscore)?;
                    let m = self.modulus()?;
                    t = Term::wr_zm(t, m);
                }
                other => {
                    return Err(ParseError::new(
                        at,
                        format!("expected `[` or `Z_` after `wr`, found {other}"),
                    ))
                }
            }
        }
        Ok(t)
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(1) => Ok(Term::Unit),
            Tok::Z => {
                if self.peek() == Tok::Underscore {
                    self.bump();
                    Ok(Term::Cyc(self.modulus()?))
                } else {
                    Ok(Term::Z)
                }
            }
            Tok::LParen => {
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Int(n) => Err(ParseError::new(
                at,
                format!("integer {n} is not a group; only `1` is allowed here"),
            )),
            other => Err(ParseError::new(
                at,
                format!("expected a term, found {other}"),
            )),
        }
    }
}

/// Parses a term. No normalization is applied.
pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
    };
    let t = p.term()?;
    if p.peek() != Tok::End {
        let at = p.offset();
        return Err(ParseError::new(at, format!("unexpected {}", p.peek())));
    }
    Ok(t)
}

/// Canonical text of a term.
pub fn print_term(t: &Term) -> String {
    t.to_string()
}

impl std::str::FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_term(s)
    }
}

// A product nested in a product or used as a wreath base needs parentheses;
// nothing else does.
fn write_operand(t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        Term::Prod(fs) if fs.len() >= 2 => write!(f, "({t})"),
        _ => write!(f, "{t}"),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Unit => f.write_str("1"),
            Term::Z => f.write_str("Z"),
            Term::Cyc(m) => write!(f, "Z_{m}"),
            // Lossy: these shapes have no text of their own.
            Term::Prod(fs) if fs.is_empty() => f.write_str("1"),
            Term::Prod(fs) if fs.len() == 1 => write!(f, "{}", fs[0]),
            Term::Prod(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    write_operand(x, f)?;
                }
                Ok(())
            }
            Term::WrZ(b, m) => {
                write_operand(b, f)?;
                write!(f, " wr[{m}] Z")
            }
            Term::WrZm(b, m) => {
                write_operand(b, f)?;
                write!(f, " wr Z_{m}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        assert_eq!(parse_term("1").unwrap(), Term::Unit);
        assert_eq!(
            parse_term("(Z wr[3] Z) x Z_2").unwrap(),
            Term::prod([Term::wr_z(Term::Z, 3), Term::Cyc(2)])
        );
        assert_eq!(parse_term("Z wr Z_4").unwrap(), Term::wr_zm(Term::Z, 4));
    }

    #[test]
    fn tails_associate_left() {
        assert_eq!(
            parse_term("Z wr[2] Z wr Z_3").unwrap(),
            Term::wr_zm(Term::wr_z(Term::Z, 2), 3)
        );
        assert_eq!(
            parse_term("Z x Z_2 wr Z_3").unwrap(),
            Term::prod([Term::Z, Term::wr_zm(Term::Cyc(2), 3)])
        );
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(
            parse_term(" ( Z wr [ 3 ] Z )x Z _ 2 ").unwrap(),
            parse_term("(Zwr[3]Z)xZ_2").unwrap()
        );
    }

    #[test]
    fn print_examples() {
        assert_eq!(Term::prod([Term::Z, Term::Z]).to_string(), "Z x Z");
        assert_eq!(
            Term::wr_z(Term::prod([Term::Z, Term::Z]), 2).to_string(),
            "(Z x Z) wr[2] Z"
        );
        assert_eq!(Term::Cyc(3).to_string(), "Z_3");
        assert_eq!(
            Term::prod([Term::prod([Term::Z, Term::Unit]), Term::Z]).to_string(),
            "(Z x 1) x Z"
        );
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse_term("Z x ").unwrap_err();
        assert_eq!(e.offset, 4);
        let e = parse_term("Z_0").unwrap_err();
        assert_eq!(e.offset, 2);
        let e = parse_term("Z wr[0] Z").unwrap_err();
        assert_eq!(e.offset, 5);
        let e = parse_term("(Z x Z").unwrap_err();
        assert_eq!(e.offset, 6);
        let e = parse_term("Z ? Z").unwrap_err();
        assert_eq!(e.offset, 2);
        let e = parse_term("2").unwrap_err();
        assert_eq!(e.offset, 0);
        let e = parse_term("Z wr Z").unwrap_err();
        assert_eq!(e.offset, 6);
        let e = parse_term("Z Z").unwrap_err();
        assert_eq!(e.offset, 2);
        assert!(parse_term("Z_99999999999999999999999").is_err());
        assert!(parse_term("").is_err());
    }
}
