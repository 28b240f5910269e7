//! Parser for coefficient and Novikov literals.
//!
//! Accepts the canonical printed form as well as looser hand-written input
//! such as `3*T^(1/3) - T + 2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{parse_exp, Coeff, Exp, Novikov, NovikovError, Rational};

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { s: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
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

    fn expect(&mut self, c: u8) -> Result<(), NovikovError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn err(&self, msg: &str) -> NovikovError {
        NovikovError::Parse(format!("{msg} at offset {} in `{}`", self.pos, String::from_utf8_lossy(self.s)))
    }

    fn done(&mut self) -> bool {
        self.peek().is_none()
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && f(self.s[self.pos]) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("")
    }

    /// Unsigned decimal literal, possibly with a fractional part, exactly.
    fn number(&mut self) -> Result<Rational, NovikovError> {
        let digits = self.take_while(|c| c.is_ascii_digit() || c == b'.');
        if digits.is_empty() {
            return Err(self.err("expected a number"));
        }
        let mut r = parse_decimal(digits).ok_or_else(|| self.err("bad number"))?;
        // `a/b` directly after a number is a fraction
        let save = self.pos;
        if self.eat(b'/') {
            let den = self.take_while(|c| c.is_ascii_digit() || c == b'.');
            match parse_decimal(den) {
                Some(d) if !d.is_zero() => r /= d,
                _ => self.pos = save,
            }
        }
        Ok(r)
    }

    fn signed_int(&mut self) -> Result<i64, NovikovError> {
        let neg = self.eat(b'-');
        let digits = self.take_while(|c| c.is_ascii_digit());
        let n: i64 = digits.parse().map_err(|_| self.err("expected an integer"))?;
        Ok(if neg { -n } else { n })
    }

    fn float(&mut self) -> Result<f64, NovikovError> {
        let text = self.take_while(|c| c.is_ascii_digit() || matches!(c, b'.' | b'-' | b'+' | b'e' | b'E'));
        text.parse::<f64>().map_err(|_| self.err("expected a float"))
    }
}

fn parse_decimal(s: &str) -> Option<Rational> {
    if s.is_empty() {
        return None;
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.contains('.') {
        return None;
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = if digits.is_empty() { return None } else { digits.parse().ok()? };
    let d = num_traits::pow(BigInt::from(10), frac.len());
    Some(BigRational::new(n, d))
}

/// One additive piece of a coefficient: number, radical, product, or float.
fn coeff_atom(cur: &mut Cursor) -> Result<Coeff, NovikovError> {
    match cur.peek() {
        Some(b'f') => {
            cur.pos += 1;
            cur.expect(b'(')?;
            let re = cur.float()?;
            cur.expect(b',')?;
            let im = cur.float()?;
            cur.expect(b')')?;
            Ok(Coeff::float(re, im, 1e-9))
        }
        Some(b's') => {
            cur.pos += 1;
            let d = if cur.eat(b'(') {
                let d = cur.signed_int()?;
                cur.expect(b')')?;
                d
            } else {
                cur.signed_int()?
            };
            if super::squarefree_part(d) != d || d == 0 || d == 1 {
                return Err(cur.err("radicand must be square-free and not 0 or 1"));
            }
            Ok(Coeff::sqrt_of(d))
        }
        Some(b'(') => {
            cur.pos += 1;
            let c = coeff_sum(cur)?;
            cur.expect(b')')?;
            Ok(c)
        }
        Some(c) if c.is_ascii_digit() || c == b'.' => Ok(Coeff::Rational(cur.number()?)),
        _ => Err(cur.err("expected a coefficient")),
    }
}

fn coeff_product(cur: &mut Cursor) -> Result<Coeff, NovikovError> {
    let mut acc = coeff_atom(cur)?;
    loop {
        let save = cur.pos;
        if cur.eat(b'*') {
            match cur.peek() {
                Some(b'T') | Some(b'O') => {
                    cur.pos = save;
                    return Ok(acc);
                }
                _ => acc = acc.checked_mul(&coeff_atom(cur)?)?,
            }
        } else if cur.eat(b'/') {
            acc = acc.checked_div(&coeff_atom(cur)?)?;
        } else {
            return Ok(acc);
        }
    }
}

fn coeff_sum(cur: &mut Cursor) -> Result<Coeff, NovikovError> {
    let mut acc = Coeff::zero();
    let mut first = true;
    loop {
        let neg = if cur.eat(b'-') {
            true
        } else if cur.eat(b'+') || first {
            false
        } else {
            return Ok(acc);
        };
        first = false;
        let t = coeff_product(cur)?;
        acc = acc.checked_add(&if neg { -t } else { t })?;
        match cur.peek() {
            Some(b'+') | Some(b'-') => {}
            _ => return Ok(acc),
        }
    }
}

/// Parses a coefficient literal such as `5/2 + 5/2*s5`, `s(-3)` or `f(0.5,1)`.
pub fn parse_coeff(s: &str) -> Result<Coeff, NovikovError> {
    let mut cur = Cursor::new(s);
    let c = coeff_sum(&mut cur)?;
    if !cur.done() {
        return Err(cur.err("trailing input"));
    }
    Ok(c)
}

fn t_power(cur: &mut Cursor) -> Result<Exp, NovikovError> {
    cur.expect(b'T')?;
    if !cur.eat(b'^') {
        return Ok(Exp::one());
    }
    let text = if cur.eat(b'(') {
        let t = cur.take_while(|c| c != b')');
        cur.expect(b')')?;
        t.to_string()
    } else {
        let neg = cur.eat(b'-');
        let mut t = cur.take_while(|c| c.is_ascii_digit()).to_string();
        let save = cur.pos;
        if cur.eat(b'/') {
            let d = cur.take_while(|c| c.is_ascii_digit());
            if d.is_empty() {
                cur.pos = save;
            } else {
                t = format!("{t}/{d}");
            }
        }
        if neg {
            format!("-{t}")
        } else {
            t
        }
    };
    parse_exp(&text)
}

/// Parses a Novikov literal with the given cutoff. Accepts the canonical
/// form `(c)*T^e + ... [+ O(T^p)]` and shorthand like `2 - T^(1/3)`.
pub fn parse_novikov(s: &str, cutoff: Exp) -> Result<Novikov, NovikovError> {
    let mut cur = Cursor::new(s);
    let mut terms = Vec::new();
    let mut precision: Option<Exp> = None;
    let mut first = true;
    if cur.done() {
        return Err(cur.err("empty literal"));
    }
    while !cur.done() {
        let neg = if cur.eat(b'-') {
            true
        } else if cur.eat(b'+') || first {
            false
        } else {
            return Err(cur.err("expected `+` or `-`"));
        };
        first = false;
        if cur.peek() == Some(b'O') {
            cur.pos += 1;
            cur.expect(b'(')?;
            let p = t_power(&mut cur)?;
            cur.expect(b')')?;
            precision = Some(precision.map_or(p, |q: Exp| q.min(p)));
            continue;
        }
        let (c, e) = if cur.peek() == Some(b'T') {
            (Coeff::one(), t_power(&mut cur)?)
        } else {
            let c = coeff_product(&mut cur)?;
            let e = if cur.eat(b'*') { t_power(&mut cur)? } else { Exp::zero() };
            (c, e)
        };
        terms.push((e, if neg { -c } else { c }));
    }
    let mut merged: Vec<(Exp, Coeff)> = Vec::new();
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    for (e, c) in terms {
        match merged.last_mut() {
            Some((le, lc)) if *le == e => *lc = lc.checked_add(&c)?,
            _ => merged.push((e, c)),
        }
    }
    Ok(Novikov::from_terms(merged, cutoff).with_precision(precision))
}

#[cfg(test)]
mod tests {
    use super::super::{exp, rat};
    use super::*;

    #[test]
    fn roundtrip_canonical() {
        let e = Exp::from_integer(4);
        for text in ["(-3)*T^1", "(5/2 + 5/2*s5)*T^1", "(-1/2 - 1/2*s(-3))*T^1/3 + (2)*T^3", "0"] {
            let v = parse_novikov(text, e).unwrap();
            assert_eq!(v.to_string(), text);
        }
    }

    #[test]
    fn loose_input() {
        let e = Exp::from_integer(4);
        let v = parse_novikov("2 - T^(1/3) + 3/4*T + T - T", e).unwrap();
        assert_eq!(v.coeff_of(Exp::zero()), Coeff::int(2));
        assert_eq!(v.coeff_of(exp(1, 3)), Coeff::int(-1));
        assert_eq!(v.coeff_of(Exp::one()), Coeff::frac(3, 4));
        let w = parse_novikov("0.25*T^2 + O(T^3)", e).unwrap();
        assert_eq!(w.precision(), Some(Exp::from_integer(3)));
        assert_eq!(w.coeff_of(Exp::from_integer(2)), Coeff::frac(1, 4));
    }

    #[test]
    fn coefficient_literals() {
        assert_eq!(parse_coeff("5/2 + 5/2*s5").unwrap(), Coeff::quadratic(rat(5, 2), rat(5, 2), 5));
        assert_eq!(parse_coeff("(1 + s5)/2").unwrap(), Coeff::quadratic(rat(1, 2), rat(1, 2), 5));
        assert!(parse_coeff("s4").is_err());
        assert!(parse_coeff("s5 * s(-3)").is_err());
        let f = parse_coeff("f(0.5,-1.25)").unwrap();
        assert_eq!(f.to_complex(), (0.5, -1.25));
    }

    #[test]
    fn rejects_garbage() {
        let e = Exp::from_integer(4);
        assert!(parse_novikov("", e).is_err());
        assert!(parse_novikov("2 T", e).is_err());
        assert!(parse_novikov("(1 + ", e).is_err());
    }

    #[test]
    fn t_power_one_default() {
        let v = parse_novikov("T", Exp::from_integer(2)).unwrap();
        assert_eq!(v.leading().unwrap().0, Exp::one());
        assert_eq!(v.to_string(), "(1)*T^1");
    }
}
