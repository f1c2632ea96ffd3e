//! Parser for the textual scalar grammar produced by `Display`:
//! integer-coefficient Laurent sums like `1*w^-4 + (-1)*w^2 + 3`, and
//! fractions `(num) / (den)`.

use super::{Scalar, ScalarContext, ScalarError};
use num::BigInt;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    W,
    Caret,
    Star,
    Plus,
    Minus,
    Slash,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, ScalarError> {
    let mut toks = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let n: BigInt = digits
                    .parse()
                    .map_err(|_| ScalarError::Parse(format!("bad integer: {digits}")))?;
                toks.push(Tok::Num(n));
            }
            'w' => {
                chars.next();
                toks.push(Tok::W);
            }
            '^' => {
                chars.next();
                toks.push(Tok::Caret);
            }
            '*' => {
                chars.next();
                toks.push(Tok::Star);
            }
            '+' => {
                chars.next();
                toks.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                toks.push(Tok::Minus);
            }
            '/' => {
                chars.next();
                toks.push(Tok::Slash);
            }
            '(' => {
                chars.next();
                toks.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                toks.push(Tok::RParen);
            }
            other => {
                return Err(ScalarError::Parse(format!("unexpected character: {other}")));
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    ctx: &'a ScalarContext,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), ScalarError> {
        match self.next() {
            Some(got) if got == t => Ok(()),
            got => Err(ScalarError::Parse(format!("expected {t:?}, got {got:?}"))),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ScalarError> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(n),
            Some(Tok::Minus) => match self.next() {
                Some(Tok::Num(n)) => Ok(-n),
                got => Err(ScalarError::Parse(format!("expected digits, got {got:?}"))),
            },
            got => Err(ScalarError::Parse(format!("expected integer, got {got:?}"))),
        }
    }

    /// `int` or `( int )`
    fn coeff(&mut self) -> Result<BigInt, ScalarError> {
        if self.peek() == Some(&Tok::LParen) {
            self.next();
            let n = self.integer()?;
            self.expect(Tok::RParen)?;
            Ok(n)
        } else {
            self.integer()
        }
    }

    fn exponent(&mut self) -> Result<i64, ScalarError> {
        let n = self.integer()?;
        i64::try_from(&n).map_err(|_| ScalarError::Parse(format!("exponent too large: {n}")))
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        if self.peek() == Some(&Tok::W) {
            self.next();
            let k = if self.peek() == Some(&Tok::Caret) {
                self.next();
                self.exponent()?
            } else {
                1
            };
            return Ok(Scalar::omega_pow(self.ctx, k));
        }
        let c = self.coeff()?;
        let c = Scalar::rational(self.ctx, num::BigRational::from_integer(c));
        if self.peek() == Some(&Tok::Star) {
            self.next();
            self.expect(Tok::W)?;
            let k = if self.peek() == Some(&Tok::Caret) {
                self.next();
                self.exponent()?
            } else {
                1
            };
            Ok(c.mul(&Scalar::omega_pow(self.ctx, k)))
        } else {
            Ok(c)
        }
    }

    fn sum(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.term()?;
        while self.peek() == Some(&Tok::Plus) {
            self.next();
            acc = acc.add(&self.term()?);
        }
        Ok(acc)
    }

    /// Top level: `(sum) / (sum)` or a bare sum.
    fn scalar(&mut self) -> Result<Scalar, ScalarError> {
        // detect the fraction form by scanning for a top-level slash
        let mut depth = 0usize;
        let mut has_slash = false;
        for t in self.toks {
            match t {
                Tok::LParen => depth += 1,
                Tok::RParen => depth = depth.saturating_sub(1),
                Tok::Slash if depth == 0 => has_slash = true,
                _ => {}
            }
        }
        if has_slash {
            self.expect(Tok::LParen)?;
            let num = self.sum()?;
            self.expect(Tok::RParen)?;
            self.expect(Tok::Slash)?;
            self.expect(Tok::LParen)?;
            let den = self.sum()?;
            self.expect(Tok::RParen)?;
            num.div(&den)
        } else {
            self.sum()
        }
    }
}

pub fn parse_scalar(ctx: &ScalarContext, s: &str) -> Result<Scalar, ScalarError> {
    let toks = tokenize(s)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        ctx,
    };
    let val = p.scalar()?;
    if p.pos != toks.len() {
        return Err(ScalarError::Parse(format!(
            "trailing input at token {}",
            p.pos
        )));
    }
    Ok(val)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for ctx in [ScalarContext::generic(), ScalarContext::root_of_unity(12)] {
            for _ in 0..60 {
                let mut x = Scalar::zero(&ctx);
                for _ in 0..rng.gen_range(1..4) {
                    let k = rng.gen_range(-8..9);
                    let c = rng.gen_range(-9i64..10);
                    x = x.add(
                        &Scalar::integer(&ctx, c).mul(&Scalar::omega_pow(&ctx, k)),
                    );
                }
                if rng.gen_bool(0.3) {
                    let mut d = Scalar::zero(&ctx);
                    while d.is_zero() {
                        d = Scalar::integer(&ctx, rng.gen_range(-4i64..5))
                            .add(&Scalar::omega_pow(&ctx, rng.gen_range(0..5)));
                    }
                    x = x.div(&d).unwrap();
                }
                let s = x.to_string();
                let y = parse_scalar(&ctx, &s).unwrap_or_else(|e| {
                    panic!("failed to parse {s:?}: {e}");
                });
                assert_eq!(x, y, "round trip failed for {s}");
            }
        }
    }

    #[test]
    fn parse_examples() {
        let ctx = ScalarContext::generic();
        assert_eq!(
            parse_scalar(&ctx, "(-1)*w^-5").unwrap(),
            Scalar::integer(&ctx, -1).mul(&Scalar::omega_pow(&ctx, -5))
        );
        assert_eq!(parse_scalar(&ctx, "0").unwrap(), Scalar::zero(&ctx));
        assert!(parse_scalar(&ctx, "w^").is_err());
    }
}
