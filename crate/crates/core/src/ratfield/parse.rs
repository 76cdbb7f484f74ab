//! Recursive-descent parser for the textual rational-function grammar.
//!
//! Grammar (whitespace allowed between tokens):
//!
//! ```text
//! ratfunc := poly | poly "/" poly
//! poly    := term (("+"|"-") term)*
//! term    := coeff | coeff "*" mono | mono
//! mono    := "l" | "l^" uint
//! coeff   := gauss | "(" gauss ")"
//! gauss   := frac | frac ("+"|"-") frac "i" | frac "i"
//! frac    := int | int "/" uint
//! ```
//!
//! Two input conveniences beyond the grammar: a bare `i` (optionally signed)
//! stands for `1i`, and a poly may start with `-term`. Printed literals never
//! use either form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::gauss::GaussianRational;
use super::poly::Poly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

const MAX_EXPONENT: usize = 4096;

pub fn parse_ratfunc(s: &str) -> Result<RatFunc> {
    let mut p = Parser::new(s);
    let f = p.ratfunc()?;
    p.expect_eof()?;
    Ok(f)
}

/// Parses a constant under the same grammar (used for lambda0 and vectors).
pub fn parse_gauss(s: &str) -> Result<GaussianRational> {
    let f = parse_ratfunc(s)?;
    f.as_constant().ok_or_else(|| Error::ParseError {
        pos: 0,
        msg: format!("expected a constant, got `{}`", f.to_literal()),
    })
}

/// Parses a comma-separated vector of constants.
pub fn parse_gauss_vector(s: &str) -> Result<Vec<GaussianRational>> {
    s.split(',').map(|part| parse_gauss(part.trim())).collect()
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Self { s: s.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::ParseError { pos: self.pos, msg: msg.into() })
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_eof(&mut self) -> Result<()> {
        if self.peek().is_some() {
            self.err("unexpected trailing input")
        } else {
            Ok(())
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).ok()?;
        text.parse().ok()
    }

    fn integer(&mut self) -> Option<BigInt> {
        let save = self.pos;
        let neg = self.eat(b'-');
        match self.digits() {
            Some(n) => Some(if neg { -n } else { n }),
            None => {
                self.pos = save;
                None
            }
        }
    }

    /// `int ["/" uint]`; backtracks over the slash when no digits follow it.
    fn frac(&mut self) -> Option<BigRational> {
        let n = self.integer()?;
        let save = self.pos;
        if self.eat(b'/') {
            if let Some(d) = self.digits() {
                if !d.is_zero() {
                    return Some(BigRational::new(n, d));
                }
            }
            self.pos = save;
        }
        Some(BigRational::from_integer(n))
    }

    fn gauss(&mut self) -> Option<GaussianRational> {
        let save = self.pos;
        if let Some(f1) = self.frac() {
            if self.eat(b'i') {
                return Some(GaussianRational::new(BigRational::zero(), f1));
            }
            let mid = self.pos;
            let sign = match self.peek() {
                Some(b'+') => Some(false),
                Some(b'-') => Some(true),
                _ => None,
            };
            if let Some(neg) = sign {
                self.pos += 1;
                if let Some(f2) = self.frac() {
                    if self.eat(b'i') {
                        let im = if neg { -f2 } else { f2 };
                        return Some(GaussianRational::new(f1, im));
                    }
                }
                self.pos = mid;
            }
            return Some(GaussianRational::new(f1, BigRational::zero()));
        }
        self.pos = save;
        // bare `i` / `-i` shorthand
        let neg = self.eat(b'-');
        if self.eat(b'i') {
            let one = BigRational::from_integer(BigInt::from(if neg { -1 } else { 1 }));
            return Some(GaussianRational::new(BigRational::zero(), one));
        }
        self.pos = save;
        None
    }

    fn coeff(&mut self) -> Result<Option<GaussianRational>> {
        if self.eat(b'(') {
            let g = match self.gauss() {
                Some(g) => g,
                None => return self.err("expected a gaussian literal after `(`"),
            };
            if !self.eat(b')') {
                return self.err("expected `)`");
            }
            return Ok(Some(g));
        }
        Ok(self.gauss())
    }

    fn mono(&mut self) -> Result<Option<usize>> {
        if !self.eat(b'l') {
            return Ok(None);
        }
        if !self.eat(b'^') {
            return Ok(Some(1));
        }
        let d = match self.digits() {
            Some(d) => d,
            None => return self.err("expected an exponent after `^`"),
        };
        let k: usize = d
            .to_string()
            .parse()
            .map_err(|_| Error::ParseError { pos: self.pos, msg: "exponent too large".into() })?;
        if k > MAX_EXPONENT {
            return self.err("exponent too large");
        }
        Ok(Some(k))
    }

    fn term(&mut self) -> Result<Option<Poly>> {
        if let Some(k) = self.mono()? {
            return Ok(Some(Poly::monomial(GaussianRational::one(), k)));
        }
        let c = match self.coeff()? {
            Some(c) => c,
            None => return Ok(None),
        };
        if self.eat(b'*') {
            match self.mono()? {
                Some(k) => Ok(Some(Poly::monomial(c, k))),
                None => self.err("expected `l` or `l^k` after `*`"),
            }
        } else {
            Ok(Some(Poly::constant(c)))
        }
    }

    fn poly(&mut self) -> Result<Poly> {
        let lead_neg = {
            // a leading minus not consumed by a frac (e.g. `-l^2`)
            let save = self.pos;
            if self.eat(b'-') {
                match self.peek() {
                    Some(b'l') | Some(b'(') => true,
                    _ => {
                        self.pos = save;
                        false
                    }
                }
            } else {
                false
            }
        };
        let first = match self.term()? {
            Some(t) => t,
            None => return self.err("expected a term"),
        };
        let mut acc = if lead_neg { -&first } else { first };
        loop {
            let save = self.pos;
            let neg = if self.eat(b'+') {
                false
            } else if self.eat(b'-') {
                true
            } else {
                break;
            };
            match self.term()? {
                Some(t) => acc = if neg { &acc - &t } else { &acc + &t },
                None => {
                    self.pos = save;
                    break;
                }
            }
        }
        Ok(acc)
    }

    fn ratfunc(&mut self) -> Result<RatFunc> {
        let num = self.poly()?;
        if self.eat(b'/') {
            let den = self.poly()?;
            if den.is_zero() {
                return self.err("zero denominator");
            }
            RatFunc::new(num, den)
        } else {
            Ok(RatFunc::from_poly(num))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(rf("-2/l").to_literal(), "-2/l");
        assert_eq!(rf("1/l^2").to_literal(), "1/l^2");
        assert_eq!(rf("(1/2+3/4i)*l + 1").to_literal(), "(1/2+3/4i)*l+1");
    }

    #[test]
    fn frac_vs_quotient_ambiguity() {
        // `1/2` binds as a coefficient fraction; both readings agree in value
        assert_eq!(rf("1/2"), RatFunc::constant(GaussianRational::from_parts(1, 2, 0, 1)));
        // `l+1/2` keeps the fraction inside the numerator polynomial
        assert_eq!(rf("l+1/2").den(), &Poly::one());
        // `l^2+1/l` splits at the quotient slash
        let f = rf("l^2+1/l");
        assert_eq!(f.num().to_literal(), "l^2+1");
        assert_eq!(f.den().to_literal(), "l");
    }

    #[test]
    fn gauss_shorthand() {
        assert_eq!(parse_gauss("i").unwrap(), GaussianRational::i());
        assert_eq!(parse_gauss("-i").unwrap(), -GaussianRational::i());
        assert_eq!(
            parse_gauss("1/2-3/4i").unwrap(),
            GaussianRational::from_parts(1, 2, -3, 4)
        );
        assert_eq!(parse_gauss("-2").unwrap(), GaussianRational::from_int(-2));
    }

    #[test]
    fn vector_parsing() {
        let v = parse_gauss_vector("i, -1, -i, 1").unwrap();
        assert_eq!(v.len(), 4);
        assert_eq!(v[0], GaussianRational::i());
        assert_eq!(v[3], GaussianRational::one());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_ratfunc("").is_err());
        assert!(parse_ratfunc("l +").is_err());
        assert!(parse_ratfunc("2*").is_err());
        assert!(parse_ratfunc("1/0").is_err());
        assert!(parse_ratfunc("(1+2i").is_err());
        assert!(parse_gauss("l").is_err());
    }

    #[test]
    fn leading_minus_superset() {
        assert_eq!(rf("-l^2"), rf("-1*l^2"));
        assert_eq!(rf("-(1+2i)*l"), rf("(-1-2i)*l"));
    }
}
