//! Group-expression mini-language: `E(d,j)`, `H(n,d)`, `A(n1,...,nk)`,
//! `DP(x,y,...)` and `CP(x,y)`.

use std::fmt;

use crate::error::{NawError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupExpr {
    E(u32, u32),
    H(u32, u32),
    A(Vec<u32>),
    DP(Vec<GroupExpr>),
    CP(Box<GroupExpr>, Box<GroupExpr>),
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::E(d, j) => write!(f, "E({d},{j})"),
            GroupExpr::H(n, d) => write!(f, "H({n},{d})"),
            GroupExpr::A(ns) => {
                let v: Vec<String> = ns.iter().map(u32::to_string).collect();
                write!(f, "A({})", v.join(","))
            }
            GroupExpr::DP(xs) => {
                let v: Vec<String> = xs.iter().map(ToString::to_string).collect();
                write!(f, "DP({})", v.join(","))
            }
            GroupExpr::CP(a, b) => write!(f, "CP({a},{b})"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(NawError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a group constructor");
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a nonnegative integer");
        }
        match std::str::from_utf8(&self.src[start..self.pos]).ok().and_then(|s| s.parse().ok()) {
            Some(v) => Ok(v),
            None => self.err("integer out of range"),
        }
    }

    fn numbers(&mut self) -> Result<Vec<u32>> {
        self.eat(b'(')?;
        let mut out = vec![self.number()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            out.push(self.number()?);
        }
        self.eat(b')')?;
        Ok(out)
    }

    fn exprs(&mut self) -> Result<Vec<GroupExpr>> {
        self.eat(b'(')?;
        let mut out = vec![self.expr()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            out.push(self.expr()?);
        }
        self.eat(b')')?;
        Ok(out)
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        let at = self.pos;
        let name = self.ident()?;
        let pair = |p: &Parser, v: Vec<u32>| -> Result<(u32, u32)> {
            if v.len() == 2 {
                Ok((v[0], v[1]))
            } else {
                Err(NawError::Parse { pos: p.pos, msg: format!("{name} takes two integers") })
            }
        };
        match name.as_str() {
            "E" => {
                let v = self.numbers()?;
                let (d, j) = pair(self, v)?;
                Ok(GroupExpr::E(d, j))
            }
            "H" => {
                let v = self.numbers()?;
                let (n, d) = pair(self, v)?;
                Ok(GroupExpr::H(n, d))
            }
            "A" => Ok(GroupExpr::A(self.numbers()?)),
            "DP" => {
                let xs = self.exprs()?;
                if xs.len() < 2 {
                    return self.err("DP takes at least two groups");
                }
                Ok(GroupExpr::DP(xs))
            }
            "CP" => {
                let mut xs = self.exprs()?;
                if xs.len() != 2 {
                    return self.err("CP takes exactly two groups");
                }
                let b = xs.pop().unwrap();
                let a = xs.pop().unwrap();
                Ok(GroupExpr::CP(Box::new(a), Box::new(b)))
            }
            _ => Err(NawError::Parse { pos: at, msg: format!("unknown constructor '{name}'") }),
        }
    }
}

pub fn parse(src: &str) -> Result<GroupExpr> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["E(2,0)", "H(2,3)", "A(2,4,8)", "DP(A(2),A(2),A(2))", "CP(E(2,0),CP(E(2,1),A(4)))"] {
            assert_eq!(parse(s).unwrap().to_string(), s);
        }
        assert_eq!(parse(" CP( E(2, 0) , E(2,0) ) ").unwrap().to_string(), "CP(E(2,0),E(2,0))");
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse("E(2)"), Err(NawError::Parse { .. })));
        assert!(matches!(parse("X(1)"), Err(NawError::Parse { pos: 0, .. })));
        assert!(matches!(parse("A(2))"), Err(NawError::Parse { pos: 4, .. })));
        assert!(matches!(parse("DP(A(2))"), Err(NawError::Parse { .. })));
        assert!(matches!(parse(""), Err(NawError::Parse { .. })));
    }
}
