//! Text form of field elements: a small expression grammar for parsing and
//! the matching canonical printer.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' integer)?
//! atom  := integer | symbol | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::{Field, FieldElem};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Sym(String),
    Op(char),
}

fn tokenize(s: &str) -> std::result::Result<Vec<Token>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token::Int(digits.parse().map_err(|_| "bad integer".to_string())?));
        } else if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_alphanumeric() {
                i += 1;
            }
            out.push(Token::Sym(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    field: &'a Field,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> std::result::Result<FieldElem, String> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> std::result::Result<FieldElem, String> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == '*' {
                &acc * &rhs
            } else {
                acc.try_div(&rhs).map_err(|e| e.to_string())?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> std::result::Result<FieldElem, String> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> std::result::Result<FieldElem, String> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Token::Int(n)) => {
                    let e: u64 = n.try_into().map_err(|_| "exponent too large".to_string())?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err("expected integer exponent".into()),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> std::result::Result<FieldElem, String> {
        let tok = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Token::Int(n)) => Ok(self.field.from_bigint(&n)),
            Some(Token::Sym(s)) => resolve_symbol(self.field, &s),
            Some(Token::Op('(')) => {
                let inner = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err("missing ')'".into());
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of input".into()),
        }
    }
}

fn resolve_symbol(top: &Field, sym: &str) -> std::result::Result<FieldElem, String> {
    let mut level = Some(top);
    while let Some(f) = level {
        if f.is_extension() && f.generator_symbol() == sym {
            let g = f.generator().map_err(|e| e.to_string())?;
            return top.embed(&g).map_err(|e| e.to_string());
        }
        level = f.base();
    }
    Err(format!("unknown symbol {sym:?} in {top}"))
}

pub(super) fn parse(field: &Field, s: &str) -> Result<FieldElem> {
    let err = |reason: String| Error::Parse {
        input: s.to_string(),
        reason,
    };
    let tokens = tokenize(s).map_err(err)?;
    if tokens.is_empty() {
        return Err(err("empty input".into()));
    }
    let mut p = Parser {
        field,
        tokens,
        pos: 0,
    };
    let v = p.expr().map_err(err)?;
    if p.pos != p.tokens.len() {
        return Err(err("trailing input".into()));
    }
    Ok(v)
}

pub(super) fn format_term(c: &FieldElem, k: usize, sym: &str, paren: bool) -> String {
    let cs = c.to_string();
    let cs = if paren { format!("({cs})") } else { cs };
    if k == 0 {
        return cs;
    }
    let mono = if k == 1 {
        sym.to_string()
    } else {
        format!("{sym}^{k}")
    };
    if c.is_one() {
        mono
    } else if !paren && cs == "-1" {
        format!("-{mono}")
    } else {
        format!("{cs}*{mono}")
    }
}

pub(super) fn format_poly(field: &Field, coeffs: &[FieldElem]) -> String {
    let sym = field.generator_symbol();
    let paren = field.base().is_some_and(Field::is_extension);
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let term = format_term(c, k, sym, paren);
        if !out.is_empty() && !term.starts_with('-') {
            out.push('+');
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
