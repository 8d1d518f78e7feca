//! Parser for the class-expression grammar.
//!
//! ```text
//!   expr    ::= ['-' | '+'] term (('+' | '-') term)*
//!   term    ::= factor ('*' factor)*
//!   factor  ::= primary ['^' nat]
//!   primary ::= rational | name '(' nat (',' nat)* ')'
//!   rational ::= int ['/' nat]
//!   name    ::= "psi" | "psih" | "D" | "Delta"
//! ```
//!
//! Whitespace is insignificant. Errors carry 1-based byte positions.
//! Diagonal sets need at least two distinct indices; index ranges are
//! checked against the optional bounds.

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::taut::{Monomial, TautExpr};

/// Optional index bounds: heavy markings `1..=m`, light markings `1..=d`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExprBounds {
    pub m: Option<u32>,
    pub d: Option<u32>,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    bounds: ExprBounds,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos: pos + 1,
        msg: msg.into(),
    }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
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

    fn expect(&mut self, ch: u8, what: &str) -> Result<()> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(err(self.pos, format!("expected {what}")))
        }
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(start, "expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("digits are utf8")
            .parse::<u64>()
            .map_err(|_| err(start, "number out of range"))
    }

    fn name(&mut self) -> Result<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(start, "expected a class name or a number"));
        }
        Ok((
            start,
            String::from_utf8_lossy(&self.src[start..self.pos]).into_owned(),
        ))
    }

    fn args(&mut self) -> Result<(usize, Vec<u32>)> {
        self.skip_ws();
        let at = self.pos;
        self.expect(b'(', "'('")?;
        let mut out = Vec::new();
        loop {
            let n = self.nat()?;
            let n = u32::try_from(n).map_err(|_| err(self.pos, "index out of range"))?;
            out.push(n);
            if self.eat(b',') {
                continue;
            }
            self.expect(b')', "',' or ')'")?;
            return Ok((at, out));
        }
    }

    fn check_light(&self, pos: usize, j: u32) -> Result<()> {
        if j == 0 {
            return Err(err(pos, "indices are 1-based"));
        }
        if let Some(d) = self.bounds.d {
            if j > d {
                return Err(err(pos, format!("light index {j} out of range 1..={d}")));
            }
        }
        Ok(())
    }

    /// primary ['^' nat], as an expression
    fn factor(&mut self) -> Result<TautExpr> {
        let base = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.nat()? as i64;
                let val = if self.eat(b'/') {
                    let den_pos = self.pos;
                    let den = self.nat()? as i64;
                    Rational::new(num, den).map_err(|_| err(den_pos, "zero denominator"))?
                } else {
                    Rational::from_int(num)
                };
                TautExpr::from_monomial(Monomial::one(), val)
            }
            _ => {
                let (at, name) = self.name()?;
                let (args_at, args) = self.args()?;
                let mono = match name.as_str() {
                    "psi" => {
                        if args.len() != 1 {
                            return Err(err(args_at, "psi takes exactly one index"));
                        }
                        let i = args[0];
                        if i == 0 {
                            return Err(err(args_at, "indices are 1-based"));
                        }
                        if let Some(m) = self.bounds.m {
                            if i > m {
                                return Err(err(
                                    args_at,
                                    format!("heavy index {i} out of range 1..={m}"),
                                ));
                            }
                        }
                        Monomial::psi(i)
                    }
                    "psih" => {
                        if args.len() != 1 {
                            return Err(err(args_at, "psih takes exactly one index"));
                        }
                        self.check_light(args_at, args[0])?;
                        Monomial::psih(args[0])
                    }
                    "D" | "Delta" => {
                        if args.len() < 2 {
                            return Err(err(args_at, format!("{name} needs at least two indices")));
                        }
                        for &j in &args {
                            self.check_light(args_at, j)?;
                        }
                        let mono = if name == "D" {
                            Monomial::dset(&args)
                        } else {
                            Monomial::delta(&args)
                        };
                        mono.map_err(|e| match e {
                            Error::InvalidArgument(msg) => err(args_at, msg),
                            other => other,
                        })?
                    }
                    _ => {
                        return Err(err(
                            at,
                            format!("unknown class {name:?}; expected psi, psih, D, or Delta"),
                        ))
                    }
                };
                TautExpr::from_monomial(mono, Rational::one())
            }
        };
        if self.eat(b'^') {
            let e = self.nat()?;
            let e = u32::try_from(e).map_err(|_| err(self.pos, "exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn term(&mut self) -> Result<TautExpr> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn expr(&mut self) -> Result<TautExpr> {
        let mut acc = TautExpr::zero();
        let mut sign = Rational::one();
        if self.eat(b'-') {
            sign = -sign;
        } else {
            self.eat(b'+');
        }
        loop {
            let t = self.term()?;
            acc = acc.add(&t.scale(&sign));
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = Rational::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -Rational::one();
                }
                Some(_) => {
                    return Err(err(self.pos, "expected '+', '-', '*', or end of input"));
                }
                None => return Ok(acc),
            }
        }
    }
}

/// Parse an expression in the class grammar, checking index ranges
/// against `bounds` where supplied.
pub fn parse_expr(src: &str, bounds: ExprBounds) -> Result<TautExpr> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        bounds,
    };
    let e = p.expr()?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::taut::canonical_form;

    fn parse(s: &str) -> TautExpr {
        parse_expr(s, ExprBounds::default()).unwrap()
    }

    #[test]
    fn parses_the_documented_shape() {
        let e = parse("3/2 * psi(1)^2 * psih(3) * D(1,2,4)");
        assert_eq!(e.terms.len(), 1);
        let (m, c) = e.terms.iter().next().unwrap();
        assert_eq!(c, &Rational::new(3, 2).unwrap());
        assert_eq!(m.psi.get(&1), Some(&2));
        assert_eq!(m.psih.get(&3), Some(&1));
        assert!(m.dsets.contains_key(&vec![1, 2, 4]));
    }

    #[test]
    fn whitespace_insensitive_sums() {
        let a = parse("psih(1)+  2*D(1,2) -psi(2)");
        let b = parse("psih(1) + 2 * D(1 , 2) - psi(2)");
        assert_eq!(a, b);
        assert_eq!(a.terms.len(), 3);
    }

    #[test]
    fn round_trips_through_display() {
        let e = canonical_form(&parse("D(1,2)*D(1,2) + 5/3*psi(1)"), None);
        let printed = e.to_string();
        let back = canonical_form(&parse(&printed), None);
        assert_eq!(e, back);
    }

    #[test]
    fn rejects_small_sets_with_position() {
        let e = parse_expr("psih(1) * D(3)", ExprBounds::default()).unwrap_err();
        match e {
            Error::Parse { pos, msg } => {
                assert_eq!(pos, 12);
                assert!(msg.contains("at least two"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_out_of_range_indices() {
        let bounds = ExprBounds {
            m: Some(2),
            d: Some(3),
        };
        assert!(parse_expr("psi(3)", bounds).is_err());
        assert!(parse_expr("psih(4)", bounds).is_err());
        assert!(parse_expr("D(1,4)", bounds).is_err());
        assert!(parse_expr("psi(2) * psih(3) * D(1,2,3)", bounds).is_ok());
    }

    #[test]
    fn rejects_duplicates_and_garbage() {
        assert!(parse_expr("D(1,1)", ExprBounds::default()).is_err());
        assert!(parse_expr("psi(0)", ExprBounds::default()).is_err());
        assert!(parse_expr("foo(1,2)", ExprBounds::default()).is_err());
        assert!(parse_expr("psi(1) psi(2)", ExprBounds::default()).is_err());
        assert!(parse_expr("1/0 * psi(1)", ExprBounds::default()).is_err());
    }
}
