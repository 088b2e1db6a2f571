//! Recursive-descent parser for the formula syntax:
//!
//! ```text
//! formula := atom | "!" formula | "(" formula ("&"|"|") formula ")" | ("E"|"A") zvar "." formula
//! atom    := term ("<"|"=") term
//! term    := var | const | "(" term ("+"|"*") term ")"
//! ```
//!
//! A leading `(` is ambiguous between a compound formula and a compound
//! term, so the parser backtracks and reports the failure that got furthest.

use super::{Const, Formula, LogicError, Term, Var};

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

#[derive(Debug)]
struct Fail {
    pos: usize,
    msg: String,
}

type PResult<T> = Result<T, Fail>;

fn furthest(a: Fail, b: Fail) -> Fail {
    if b.pos > a.pos {
        b
    } else {
        a
    }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() {
            let c = self.bytes[self.pos];
            if c == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn fail<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(Fail { pos: self.pos, msg: msg.into() })
    }

    fn expect(&mut self, c: u8) -> PResult<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected '{}'", c as char))
        }
    }

    fn number(&mut self) -> PResult<usize> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail("expected an index");
        }
        self.src[start..self.pos].parse().or_else(|_| self.fail("index too large"))
    }

    fn formula(&mut self) -> PResult<Formula> {
        match self.peek() {
            Some(b'!') => {
                self.pos += 1;
                Ok(Formula::not(self.formula()?))
            }
            Some(q @ (b'E' | b'A')) => {
                self.pos += 1;
                if self.peek() != Some(b'z') {
                    return self.fail("expected a bound variable z<index>");
                }
                self.pos += 1;
                let z = self.index()?;
                self.expect(b'.')?;
                let body = self.formula()?;
                Ok(if q == b'E' { Formula::exists(z, body) } else { Formula::forall(z, body) })
            }
            Some(b'(') => {
                let save = self.pos;
                let compound = self.compound();
                match compound {
                    Ok(f) => Ok(f),
                    Err(e1) => {
                        self.pos = save;
                        self.atom().map_err(|e2| furthest(e1, e2))
                    }
                }
            }
            Some(_) => self.atom(),
            None => self.fail("unexpected end of input"),
        }
    }

    fn compound(&mut self) -> PResult<Formula> {
        self.expect(b'(')?;
        let a = self.formula()?;
        let op = self.peek();
        if !matches!(op, Some(b'&' | b'|')) {
            return self.fail("expected '&' or '|'");
        }
        self.pos += 1;
        let b = self.formula()?;
        self.expect(b')')?;
        Ok(if op == Some(b'&') { Formula::and(a, b) } else { Formula::or(a, b) })
    }

    fn atom(&mut self) -> PResult<Formula> {
        let a = self.term()?;
        match self.peek() {
            Some(b'<') => {
                self.pos += 1;
                Ok(Formula::Lt(a, self.term()?))
            }
            Some(b'=') => {
                self.pos += 1;
                Ok(Formula::Eq(a, self.term()?))
            }
            _ => self.fail("expected '<' or '='"),
        }
    }

    fn index(&mut self) -> PResult<usize> {
        let i = self.number()?;
        if i == 0 {
            return self.fail("variable indices start at 1");
        }
        Ok(i)
    }

    fn term(&mut self) -> PResult<Term> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let a = self.term()?;
                let op = self.peek();
                if !matches!(op, Some(b'+' | b'*')) {
                    return self.fail("expected '+' or '*'");
                }
                self.pos += 1;
                let b = self.term()?;
                self.expect(b')')?;
                Ok(if op == Some(b'+') { Term::add(a, b) } else { Term::mul(a, b) })
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(Term::Var(Var::X(self.index()?)))
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(Term::Var(Var::Y(self.index()?)))
            }
            Some(b'z') => {
                self.pos += 1;
                Ok(Term::Var(Var::Z(self.index()?)))
            }
            Some(b'c') => {
                let rest = &self.src[self.pos..];
                let c = if rest.starts_with("c0") {
                    Const::C0
                } else if rest.starts_with("c1") {
                    Const::C1
                } else if rest.starts_with("cm") {
                    Const::Cm
                } else {
                    return self.fail("expected c0, c1 or cm");
                };
                self.pos += 2;
                if self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_alphanumeric()) {
                    return self.fail("expected c0, c1 or cm");
                }
                Ok(Term::Const(c))
            }
            _ => self.fail("expected a term"),
        }
    }
}

fn line_col(src: &str, pos: usize) -> (usize, usize) {
    let before = &src[..pos.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.len(), |i| before.len() - i - 1) + 1;
    (line, col)
}

/// Parse a formula; `#` starts a comment that runs to the end of the line.
pub fn parse_formula(src: &str) -> Result<Formula, LogicError> {
    let mut p = Parser { src, bytes: src.as_bytes(), pos: 0 };
    let to_err = |f: Fail| {
        let (line, col) = line_col(src, f.pos);
        LogicError::Parse { line, col, msg: f.msg }
    };
    let f = p.formula().map_err(to_err)?;
    if p.peek().is_some() {
        return Err(to_err(Fail { pos: p.pos, msg: "trailing input".into() }));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_interval_formula() {
        let f = parse_formula("!(x2 < y1 | y2 < x1)").unwrap();
        assert_eq!(f, super::super::interval_formula());
    }

    #[test]
    fn compound_terms_and_formulas() {
        let f = parse_formula("((x1 + y2) * x2) < (x2 + y1)").unwrap();
        assert!(f.is_atom());
        let g = parse_formula("(x1 < y1 & (x2 = y2 | !x1 = c0))").unwrap();
        assert!(matches!(g, Formula::And(..)));
    }

    #[test]
    fn reports_positions() {
        match parse_formula("x1 <\n  (y1 ^ y2)") {
            Err(LogicError::Parse { line, col, .. }) => assert_eq!((line, col), (2, 7)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_formula("x0 < y1").is_err());
        assert!(parse_formula("x1 < y1 y2").is_err());
        assert!(parse_formula("x1 < cmx").is_err());
    }

    #[test]
    fn comments_are_skipped() {
        let f = parse_formula("# interval\nx1 < y1 # trailing").unwrap();
        assert_eq!(f, Formula::lt(Term::x(1), Term::y(1)));
    }
}
