use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::error::PolyError;
use super::poly::MPoly;
use super::rat::Rat;
use super::sym::Sym;

/// The vocabulary a parser accepts. With `auto_register` set, unknown
/// identifiers are interned on the fly instead of rejected.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    declared: BTreeSet<Sym>,
    pub auto_register: bool,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn auto() -> Self {
        Registry {
            declared: BTreeSet::new(),
            auto_register: true,
        }
    }

    pub fn with_names<'a>(names: impl IntoIterator<Item = &'a str>) -> Self {
        let mut r = Self::new();
        for n in names {
            r.declare(n);
        }
        r
    }

    pub fn declare(&mut self, name: &str) -> Sym {
        let s = Sym::new(name);
        self.declared.insert(s);
        s
    }

    pub fn resolve(&self, name: &str) -> Option<Sym> {
        if self.auto_register {
            return Some(Sym::new(name));
        }
        Sym::lookup(name).filter(|s| self.declared.contains(s))
    }

    pub fn symbols(&self) -> impl Iterator<Item = Sym> + '_ {
        self.declared.iter().copied()
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let num: BigInt = text[start..i].parse().expect("digits");
            let mut value = Rat::from_integer(num);
            if i < bytes.len() && bytes[i] == b'/' {
                let dstart = i + 1;
                let mut j = dstart;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j == dstart {
                    return Err(PolyError::Syntax {
                        pos: i,
                        msg: "expected denominator after '/'".into(),
                    });
                }
                let den: BigInt = text[dstart..j].parse().expect("digits");
                if den == BigInt::from(0) {
                    return Err(PolyError::Syntax {
                        pos: dstart,
                        msg: "zero denominator".into(),
                    });
                }
                value /= Rat::from_integer(den);
                i = j;
            }
            out.push((Tok::Num(value), start));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_owned()), start));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(PolyError::Syntax {
                    pos: start,
                    msg: format!("unexpected character '{c}'"),
                })
            }
        };
        out.push((tok, start));
        i += c.len_utf8();
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    registry: &'a Registry,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<MPoly, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc += &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, PolyError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly, PolyError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MPoly, PolyError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.peek().clone() {
            Tok::Num(n) if n.is_integer() => {
                let e: u32 = match n.to_integer().try_into() {
                    Ok(e) if e <= u16::MAX as u32 => e,
                    _ => return self.err("exponent too large"),
                };
                self.bump();
                Ok(base.pow(e))
            }
            _ => self.err("exponent must be a nonnegative integer literal"),
        }
    }

    fn atom(&mut self) -> Result<MPoly, PolyError> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(n) => Ok(MPoly::constant(n)),
            Tok::Ident(name) => match self.registry.resolve(&name) {
                Some(s) => Ok(MPoly::var(s)),
                None => Err(PolyError::UnknownSymbol { name, pos: at }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.err("expected ')'");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => Err(PolyError::Syntax {
                pos: at,
                msg: "unexpected end of input".into(),
            }),
            other => Err(PolyError::Syntax {
                pos: at,
                msg: format!("unexpected token {other:?}"),
            }),
        }
    }
}

/// Parses integers, `p/q` literals, identifiers, `+ - * ^` and parentheses.
pub fn parse_poly(text: &str, registry: &Registry) -> Result<MPoly, PolyError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, registry };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat::rat;

    #[test]
    fn parses_basic_forms() {
        let r = Registry::with_names(["x", "y"]);
        let p = parse_poly("3/2*x^2 - (y + 1)*x", &r).unwrap();
        assert_eq!(p.to_string(), "3/2*x^2 - x*y - x");
        let q = parse_poly("-x^2", &r).unwrap();
        assert_eq!(q.to_string(), "-x^2");
        assert_eq!(parse_poly("6/4", &r).unwrap(), MPoly::constant(rat(3, 2)));
    }

    #[test]
    fn rejects_bad_input() {
        let r = Registry::with_names(["x"]);
        assert!(matches!(
            parse_poly("x^(-1)", &r),
            Err(PolyError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse_poly("x + q", &r),
            Err(PolyError::UnknownSymbol { pos: 4, .. })
        ));
        assert!(matches!(parse_poly("2x", &r), Err(PolyError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("1/0", &r), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_poly("(x", &r), Err(PolyError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("x $ 1", &r), Err(PolyError::Syntax { pos: 2, .. })));
    }

    #[test]
    fn auto_registry_interns() {
        let p = parse_poly("brand_new_sym + 1", &Registry::auto()).unwrap();
        assert!(p.contains(Sym::new("brand_new_sym")));
    }
}
