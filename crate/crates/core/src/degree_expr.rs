//! Parser for degree expressions such as `3c - 2x1 + 2*x2`.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := [integer]['*']symbol | integer
//! symbol := 'c' | 'x' digits
//! ```
//!
//! Whitespace is ignored. A bare integer term must be `0`.

use crate::error::{Error, Result};
use crate::picard::{PicElt, WplData};

/// Integer combination `c_coeff * c + sum x_coeffs[i] * x_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeExpr {
    pub c_coeff: i64,
    pub x_coeffs: Vec<i64>,
}

impl DegreeExpr {
    pub fn eval(&self, w: &WplData) -> PicElt {
        w.nf(self.c_coeff, &self.x_coeffs)
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn digits(&mut self) -> Option<(usize, &str)> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| {
            (
                start,
                std::str::from_utf8(&self.src[start..self.pos]).unwrap(),
            )
        })
    }

    fn number(&mut self) -> Result<Option<i64>> {
        self.skip_ws();
        match self.digits() {
            None => Ok(None),
            Some((start, s)) => s.parse().map(Some).map_err(|_| Error::Parse {
                offset: start,
                message: "integer out of range".into(),
            }),
        }
    }
}

pub fn parse_degree(src: &str, n: usize) -> Result<DegreeExpr> {
    let mut cur = Cursor {
        src: src.as_bytes(),
        pos: 0,
    };
    let mut expr = DegreeExpr {
        c_coeff: 0,
        x_coeffs: vec![0; n],
    };
    let mut first = true;
    loop {
        let sign = match cur.peek() {
            Some(b'+') => {
                cur.pos += 1;
                1
            }
            Some(b'-') => {
                cur.pos += 1;
                -1
            }
            None if !first => break,
            _ if first => 1,
            _ => return Err(cur.error("expected '+' or '-'")),
        };
        first = false;
        term(&mut cur, sign, n, &mut expr)?;
    }
    Ok(expr)
}

fn term(cur: &mut Cursor<'_>, sign: i64, n: usize, expr: &mut DegreeExpr) -> Result<()> {
    let coeff = cur.number()?;
    let mut star = false;
    if cur.peek() == Some(b'*') {
        if coeff.is_none() {
            return Err(cur.error("'*' needs a coefficient"));
        }
        cur.pos += 1;
        star = true;
    }
    let value = sign * coeff.unwrap_or(1);
    match cur.peek() {
        Some(b'c') => {
            cur.pos += 1;
            expr.c_coeff += value;
        }
        Some(b'x') => {
            cur.pos += 1;
            let at = cur.pos;
            let Some((_, digits)) = cur.digits() else {
                return Err(cur.error("expected an index after 'x'"));
            };
            let index: usize = digits.parse().map_err(|_| Error::Parse {
                offset: at,
                message: "index out of range".into(),
            })?;
            if index == 0 || index > n {
                return Err(Error::Index { index, n });
            }
            expr.x_coeffs[index - 1] += value;
        }
        _ if coeff.is_some() && !star => {
            if value != 0 {
                return Err(cur.error("a constant term must be 0"));
            }
        }
        _ => return Err(cur.error("expected 'c' or 'x<index>'")),
    }
    Ok(())
}
