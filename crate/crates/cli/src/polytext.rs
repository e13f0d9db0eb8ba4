//! Text form of polynomials over ℤ[ω]: `X^2 + (3-2*w)*X - w - 1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse polynomial at {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

fn monomial(k: usize) -> String {
    match k {
        0 => String::new(),
        1 => "X".to_string(),
        _ => format!("X^{k}"),
    }
}

/// Renders `b*w`, dropping a unit factor.
fn w_term(b: &BigInt) -> String {
    if b.is_one() {
        "w".to_string()
    } else {
        format!("{b}*w")
    }
}

/// Signed terms (negative, body) for coefficient a + bω of X^k.
fn terms(a: &BigInt, b: &BigInt, k: usize) -> Vec<(bool, String)> {
    let with = |c: String| if k == 0 { c } else { format!("{c}*{}", monomial(k)) };
    match (a.is_zero(), b.is_zero()) {
        (true, true) => vec![],
        (false, true) if a.abs().is_one() && k > 0 => vec![(a.is_negative(), monomial(k))],
        (false, true) => vec![(a.is_negative(), with(a.abs().to_string()))],
        (true, false) => vec![(b.is_negative(), with(w_term(&b.abs())))],
        (false, false) if k == 0 => vec![(b.is_negative(), w_term(&b.abs())), (a.is_negative(), a.abs().to_string())],
        (false, false) => {
            let sign = if b.is_negative() { "-" } else { "+" };
            vec![(false, format!("({a}{sign}{})*{}", w_term(&b.abs()), monomial(k)))]
        }
    }
}

/// Coefficients constant term first.
pub fn render(coeffs: &[(BigInt, BigInt)]) -> String {
    let mut out = String::new();
    for (k, (a, b)) in coeffs.iter().enumerate().rev() {
        for (neg, body) in terms(a, b, k) {
            match (out.is_empty(), neg) {
                (true, false) => out.push_str(&body),
                (true, true) => out.push_str(&format!("-{body}")),
                (false, false) => out.push_str(&format!(" + {body}")),
                (false, true) => out.push_str(&format!(" - {body}")),
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos] == b' ' {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let t = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(t.parse().expect("digits parse"))
    }

    /// `n`, `w`, `n*w`; returns a + bω.
    fn atom(&mut self) -> Result<(BigInt, BigInt), ParseError> {
        if self.eat(b'w') {
            return Ok((BigInt::zero(), BigInt::one()));
        }
        let n = self.integer()?;
        let save = self.pos;
        if self.eat(b'*') {
            if self.eat(b'w') {
                return Ok((BigInt::zero(), n));
            }
            self.pos = save;
        }
        Ok((n, BigInt::zero()))
    }

    /// `(a±b*w)`
    fn paren(&mut self) -> Result<(BigInt, BigInt), ParseError> {
        let mut neg = self.eat(b'-');
        let (mut a, mut b) = (BigInt::zero(), BigInt::zero());
        loop {
            let (x, y) = self.atom()?;
            if neg {
                a -= x;
                b -= y;
            } else {
                a += x;
                b += y;
            }
            if self.eat(b')') {
                return Ok((a, b));
            }
            neg = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => return self.err("expected '+', '-' or ')'"),
            };
            self.pos += 1;
        }
    }

    /// Exponent of X, or 0 if no X follows.
    fn power(&mut self) -> Result<usize, ParseError> {
        if !self.eat(b'X') {
            return Ok(0);
        }
        if !self.eat(b'^') {
            return Ok(1);
        }
        let k = self.integer()?;
        usize::try_from(k).or_else(|_| self.err("exponent too large"))
    }

    fn term(&mut self) -> Result<((BigInt, BigInt), usize), ParseError> {
        if self.peek() == Some(b'X') {
            return Ok(((BigInt::one(), BigInt::zero()), self.power()?));
        }
        let c = if self.eat(b'(') { self.paren()? } else { self.atom()? };
        if self.eat(b'*') {
            let k = self.power()?;
            if k == 0 {
                return self.err("expected X");
            }
            return Ok((c, k));
        }
        Ok((c, 0))
    }
}

/// Parses the output of [`render`].
pub fn parse(s: &str) -> Result<Vec<(BigInt, BigInt)>, ParseError> {
    let mut lx = Lexer { s: s.as_bytes(), pos: 0 };
    let mut out: Vec<(BigInt, BigInt)> = Vec::new();
    let mut neg = lx.eat(b'-');
    loop {
        let ((a, b), k) = lx.term()?;
        if out.len() <= k {
            out.resize(k + 1, (BigInt::zero(), BigInt::zero()));
        }
        let (x, y) = &mut out[k];
        if neg {
            *x -= a;
            *y -= b;
        } else {
            *x += a;
            *y += b;
        }
        match lx.peek() {
            None => break,
            Some(b'+') => neg = false,
            Some(b'-') => neg = true,
            _ => return lx.err("expected '+' or '-'"),
        }
        lx.pos += 1;
    }
    while out.len() > 1 && out.last().is_some_and(|(a, b)| a.is_zero() && b.is_zero()) {
        out.pop();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[(i64, i64)]) -> Vec<(BigInt, BigInt)> {
        v.iter().map(|&(a, b)| (a.into(), b.into())).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(render(&c(&[(-1, -1), (1, 0)])), "X - w - 1");
        assert_eq!(render(&c(&[(576, 0), (720, 0), (1, 0)])), "X^2 + 720*X + 576");
        assert_eq!(render(&c(&[(-27, 0), (6, -12), (1, 0)])), "X^2 + (6-12*w)*X - 27");
        assert_eq!(render(&c(&[(0, -1), (1, 0)])), "X - w");
        assert_eq!(render(&c(&[(-4, 0), (8, -4), (0, 6), (-4, -2), (1, 0)])), "X^4 + (-4-2*w)*X^3 + 6*w*X^2 + (8-4*w)*X - 4");
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse("X - w - 1").unwrap(), c(&[(-1, -1), (1, 0)]));
        assert_eq!(parse("X^2 + (6-12*w)*X - 27").unwrap(), c(&[(-27, 0), (6, -12), (1, 0)]));
        assert!(parse("X +").is_err());
        assert!(parse("(1+w").is_err());
    }
}
