//! Recursive-descent parser for the polynomial text grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? digits)?
//! atom   := digits | ident | '(' expr ')'
//! ```
//!
//! Division is only accepted by units (nonzero constants or unit monomials).

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::laurent::{Coeff, LaurentPoly};
use crate::poly::var::Var;

pub fn parse(input: &str) -> Result<LaurentPoly> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::parse(p.pos, "unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, ch: u8) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc += &self.term()?;
            } else if self.eat(b'-') {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.unary()?;
                let inv = d
                    .inverse()
                    .map_err(|_| Error::parse(at, format!("cannot divide by `{d}`")))?;
                acc = &acc * &inv;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentPoly> {
        if self.eat(b'-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<LaurentPoly> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let negative = self.eat(b'-');
        self.skip_ws();
        let digits = self.digits();
        if digits.is_empty() {
            return Err(Error::parse(self.pos, "expected exponent"));
        }
        let k: i32 = digits
            .parse()
            .map_err(|_| Error::parse(at, "exponent out of range"))?;
        let k = if negative { -k } else { k };
        base.pow(k)
            .map_err(|_| Error::parse(at, format!("negative power of non-unit `{base}`")))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        let at = match self.peek() {
            None => return Err(Error::parse(self.pos, "unexpected end of input")),
            Some(_) => self.pos,
        };
        let ch = self.src[at];
        if ch == b'(' {
            self.pos += 1;
            let inner = self.expr()?;
            if !self.eat(b')') {
                return Err(Error::parse(self.pos, "expected `)`"));
            }
            return Ok(inner);
        }
        if ch.is_ascii_digit() {
            let n: BigInt = self.digits().parse().expect("ascii digits");
            return Ok(LaurentPoly::constant(Coeff::from_integer(n)));
        }
        if ch.is_ascii_alphabetic() {
            while self
                .src
                .get(self.pos)
                .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
            {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[at..self.pos]).expect("ascii");
            return Var::new(name)
                .map(LaurentPoly::var)
                .map_err(|_| Error::parse(at, format!("unknown variable `{name}`")));
        }
        Err(Error::parse(at, format!("unexpected `{}`", ch as char)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::laurent::rational;
    use crate::poly::var::var;

    #[test]
    fn grammar_basics() {
        let a = parse("2*x1^2 - x1*x4 + 1/2").unwrap();
        assert_eq!(a.to_string(), "2*x1^2 - x1*x4 + 1/2");
        assert_eq!(parse("alpha^-1*alpha").unwrap(), LaurentPoly::one());
        assert_eq!(parse("-(x1 - 3)").unwrap(), parse("3 - x1").unwrap());
        assert_eq!(
            parse("(p^2 - q)/2").unwrap().coefficient_of(var("q"), 1),
            LaurentPoly::constant(rational(-1, 2))
        );
        assert_eq!(parse("x1/alpha").unwrap(), parse("alpha^-1*x1").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse("x1 + delta"),
            Err(Error::Parse {
                pos: 5,
                msg: "unknown variable `delta`".into()
            })
        );
        assert!(matches!(parse("x1^-1"), Err(Error::Parse { .. })));
        assert!(matches!(parse("1/x2"), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse("1/0"), Err(Error::Parse { .. })));
        assert!(matches!(parse("(x1"), Err(Error::Parse { .. })));
        assert!(matches!(parse("x1 x2"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse(""), Err(Error::Parse { pos: 0, .. })));
    }
}
