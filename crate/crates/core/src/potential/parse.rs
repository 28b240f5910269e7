//! Text syntax for Laurent potentials.
//!
//! Expressions use `+ - * /`, parentheses, integer powers of any factor,
//! rational powers of `T`, integer or fractional constants and the
//! square-root literals `s5`, `s(-3)` of the scalar syntax. Division is
//! only allowed by a monomial. A potential file holds `#` comments, an
//! optional `vars: y1 y2` line and an expression, optionally prefixed by
//! `W =`.

use num_traits::{One, Zero};

use super::LaurentPolynomial;
use crate::error::{Error, Result};
use crate::novikov::{parse_exp, rat_int, Coeff, Exp, Novikov, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Sqrt(i64),
    Op(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn tokenize(text: &str, first_line: usize) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, column) = (first_line + ln, i + 1);
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n: num_bigint::BigInt = s.parse().map_err(|_| err(line, column, "bad integer"))?;
                out.push(Token { tok: Tok::Num(Rational::from_integer(n)), line, column });
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                if s == "s" && chars.get(i) == Some(&'(') {
                    let close = chars[i..].iter().position(|&x| x == ')').ok_or_else(|| err(line, column, "unclosed `s(`"))?;
                    let inner: String = chars[i + 1..i + close].iter().collect();
                    let d: i64 = inner.trim().parse().map_err(|_| err(line, column, format!("bad radicand `{inner}`")))?;
                    out.push(Token { tok: Tok::Sqrt(d), line, column });
                    i += close + 1;
                } else if s.len() > 1 && s.starts_with('s') && s[1..].chars().all(|x| x.is_ascii_digit()) {
                    out.push(Token { tok: Tok::Sqrt(s[1..].parse().expect("digits")), line, column });
                } else {
                    out.push(Token { tok: Tok::Ident(s), line, column });
                }
            } else if "+-*/^()".contains(c) {
                out.push(Token { tok: Tok::Op(c), line, column });
                i += 1;
            } else {
                return Err(err(line, column, format!("unexpected character `{c}`")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    vars: Vec<String>,
    cutoff: Exp,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos).or(self.toks.last()) {
            Some(t) => (t.line, t.column),
            None => (1, 1),
        }
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        Err(err(l, c, message))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn constant(&self, c: Coeff) -> LaurentPolynomial {
        LaurentPolynomial::constant(self.vars.clone(), Novikov::constant(c, self.cutoff))
    }

    fn expr(&mut self) -> Result<LaurentPolynomial> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.plus(&self.term()?);
            } else if self.eat('-') {
                acc = acc.minus(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPolynomial> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?)?;
            } else if self.eat('/') {
                let (l, c) = self.here();
                let d = self.power()?;
                let inv = d.monomial_inverse().map_err(|_| err(l, c, "division by a non-monomial"))?;
                acc = acc.mul(&inv)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn int_exponent(&mut self) -> Result<i64> {
        let paren = self.eat('(');
        let neg = self.eat('-');
        let n = match self.peek() {
            Some(Tok::Num(n)) if n.is_integer() => {
                let n = n.to_integer();
                self.pos += 1;
                i64::try_from(n).or_else(|_| self.fail("exponent too large"))?
            }
            _ => return self.fail("expected an integer exponent"),
        };
        if paren && !self.eat(')') {
            return self.fail("expected `)`");
        }
        Ok(if neg { -n } else { n })
    }

    fn t_exponent(&mut self) -> Result<Exp> {
        if self.eat('(') {
            let mut text = String::new();
            while let Some(t) = self.peek() {
                match t {
                    Tok::Op(')') => break,
                    Tok::Op(c) => text.push(*c),
                    Tok::Num(n) => text.push_str(&n.to_string()),
                    _ => return self.fail("bad exponent of T"),
                }
                self.pos += 1;
            }
            if !self.eat(')') {
                return self.fail("expected `)`");
            }
            parse_exp(&text).or_else(|e| self.fail(e.to_string()))
        } else {
            Ok(Exp::from_integer(self.int_exponent()?))
        }
    }

    fn power(&mut self) -> Result<LaurentPolynomial> {
        if self.peek() == Some(&Tok::Ident("T".into())) {
            self.pos += 1;
            let e = if self.eat('^') { self.t_exponent()? } else { Exp::one() };
            let n = self.vars.len();
            return Ok(LaurentPolynomial::monomial(self.vars.clone(), vec![0; n], Coeff::one(), e, self.cutoff));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let (l, c) = self.here();
            let k = self.int_exponent()?;
            return base.pow(k).map_err(|_| err(l, c, "negative power of a non-monomial"));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<LaurentPolynomial> {
        let Some(tok) = self.peek().cloned() else { return self.fail("unexpected end of input") };
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(self.constant(Coeff::Rational(n))),
            Tok::Sqrt(d) => {
                let c = Coeff::Rational(rat_int(d)).sqrt().ok_or_else(|| {
                    let (l, c) = self.here();
                    err(l, c, format!("no square root of {d}"))
                })?;
                Ok(self.constant(c))
            }
            Tok::Ident(name) => {
                let i = self.vars.iter().position(|v| *v == name).expect("collected variable");
                let mut a = vec![0; self.vars.len()];
                a[i] = 1;
                Ok(LaurentPolynomial::monomial(self.vars.clone(), a, Coeff::one(), Exp::zero(), self.cutoff))
            }
            Tok::Op('(') => {
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.fail("expected `)`");
                }
                Ok(inner)
            }
            Tok::Op(c) => {
                self.pos -= 1;
                self.fail(format!("unexpected `{c}`"))
            }
        }
    }
}

/// Orders `y, y1, y2, .., y10` by their numeric suffix, then by name.
fn var_key(v: &str) -> (String, u64) {
    let digits = v.len() - v.chars().rev().take_while(|c| c.is_ascii_digit()).count();
    (v[..digits].to_string(), v[digits..].parse().unwrap_or(0))
}

fn parse_tokens(toks: &[Token], vars: Option<Vec<String>>, cutoff: Exp) -> Result<LaurentPolynomial> {
    let mut found: Vec<String> = Vec::new();
    for t in toks {
        if let Tok::Ident(s) = &t.tok {
            if s != "T" && !found.contains(s) {
                if let Some(vs) = &vars {
                    if !vs.contains(s) {
                        return Err(err(t.line, t.column, format!("undeclared variable `{s}`")));
                    }
                }
                found.push(s.clone());
            }
        }
    }
    let vars = vars.unwrap_or_else(|| {
        found.sort_by_key(|v| var_key(v));
        found
    });
    let mut p = Parser { toks, pos: 0, vars, cutoff };
    if toks.is_empty() {
        return Err(err(1, 1, "empty potential"));
    }
    let out = p.expr()?;
    if p.pos != toks.len() {
        return p.fail("trailing input");
    }
    out.check_energies().map_err(|e| err(1, 1, e.to_string()))?;
    Ok(out)
}

/// Parses an expression; variables are collected and ordered by suffix.
pub fn parse_potential(text: &str, cutoff: Exp) -> Result<LaurentPolynomial> {
    parse_tokens(&tokenize(text, 1)?, None, cutoff)
}

/// Parses an expression in the given variables.
pub fn parse_potential_in(text: &str, vars: &[&str], cutoff: Exp) -> Result<LaurentPolynomial> {
    parse_tokens(&tokenize(text, 1)?, Some(vars.iter().map(|s| s.to_string()).collect()), cutoff)
}

/// Parses a potential file.
pub fn parse_potential_file(text: &str, cutoff: Exp) -> Result<LaurentPolynomial> {
    let mut vars = None;
    let mut toks = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("vars:") {
            vars = Some(rest.split_whitespace().map(String::from).collect());
            continue;
        }
        let offset = line.len() - line.trim_start().len();
        let body = match trimmed.strip_prefix("W") {
            Some(rest) if toks.is_empty() && rest.trim_start().starts_with('=') => {
                let eq = line.find('=').expect("checked");
                format!("{}{}", " ".repeat(eq + 1), &line[eq + 1..])
            }
            _ => format!("{}{}", " ".repeat(offset), trimmed),
        };
        toks.extend(tokenize(&body, i + 1)?);
    }
    parse_tokens(&toks, vars, cutoff)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e() -> Exp {
        Exp::from_integer(4)
    }

    #[test]
    fn parses_products_and_quotients() {
        let w = parse_potential("y + T/y", e()).unwrap();
        assert_eq!(w.vars(), &["y".to_string()]);
        assert_eq!(w.coeff(&[-1]), Novikov::monomial(Coeff::one(), Exp::one(), e()));
        let b = parse_potential("((1+y1+y2)*(1+1/y1)*(1+1/y2) - 3)*T", e()).unwrap();
        assert_eq!(b.vars().len(), 2);
        assert!(b.coeff(&[0, 0]).is_zero());
        assert_eq!(b.coeff(&[-1, 0]), Novikov::monomial(Coeff::int(2), Exp::one(), e()));
        assert_eq!(b.coeff(&[-1, -1]), Novikov::monomial(Coeff::one(), Exp::one(), e()));
    }

    #[test]
    fn fractional_energies_and_radicals() {
        let w = parse_potential("5/2*T^(1/3)*y^2 + s5*y^-1", e()).unwrap();
        assert_eq!(w.coeff(&[2]), Novikov::monomial(Coeff::frac(5, 2), Exp::new(1, 3), e()));
        assert_eq!(w.coeff(&[-1]), Novikov::constant(Coeff::sqrt_of(5), e()));
    }

    #[test]
    fn reports_positions() {
        match parse_potential("y +\n  ) ", e()) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(parse_potential("1/(1+y)", e()).is_err());
        assert!(parse_potential("T^(-1)*y", e()).is_err());
    }

    #[test]
    fn file_format() {
        let text = "# circle\nvars: y\nW = y\n  + T/y\n";
        let w = parse_potential_file(text, e()).unwrap();
        assert_eq!(w, parse_potential("y + T/y", e()).unwrap());
        assert!(parse_potential_file("vars: y\nW = x", e()).is_err());
    }
}
