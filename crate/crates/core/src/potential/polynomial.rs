use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::novikov::{format_exp, Coeff, Exp, Novikov};

/// Laurent polynomial in `y_1 .. y_n` with coefficients in `Λ`; the
/// coefficient of `y^a` collects every energy carried by that exponent.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPolynomial {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, Novikov>,
    cutoff: Exp,
}

impl LaurentPolynomial {
    pub fn zero(vars: Vec<String>, cutoff: Exp) -> LaurentPolynomial {
        LaurentPolynomial { vars, terms: BTreeMap::new(), cutoff }
    }

    pub fn constant(vars: Vec<String>, c: Novikov) -> LaurentPolynomial {
        let cutoff = c.cutoff();
        let mut p = LaurentPolynomial::zero(vars, cutoff);
        let n = p.nvars();
        p.add_term(vec![0; n], &c);
        p
    }

    /// `c T^energy y^a`.
    pub fn monomial(vars: Vec<String>, a: Vec<i64>, c: Coeff, energy: Exp, cutoff: Exp) -> LaurentPolynomial {
        let mut p = LaurentPolynomial::zero(vars, cutoff);
        p.add_term(a, &Novikov::monomial(c, energy, cutoff));
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; rejects negative energies.
    pub fn from_terms(vars: Vec<String>, terms: Vec<(Vec<i64>, Novikov)>, cutoff: Exp) -> Result<LaurentPolynomial> {
        let mut p = LaurentPolynomial::zero(vars, cutoff);
        for (a, c) in terms {
            if a.len() != p.nvars() {
                return Err(Error::invalid(format!("exponent {a:?} has the wrong number of variables")));
            }
            p.add_term(a, &c.with_cutoff(cutoff));
        }
        p.check_energies()?;
        Ok(p)
    }

    pub fn check_energies(&self) -> Result<()> {
        for (a, c) in &self.terms {
            if let Some(v) = c.valuation() {
                if v.is_negative() {
                    return Err(Error::invalid(format!("term y^{a:?} has negative energy {}", format_exp(&v))));
                }
            }
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn cutoff(&self) -> Exp {
        self.cutoff
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&Vec<i64>, &Novikov)> {
        self.terms.iter()
    }

    /// Flattened terms `(a, energy, coefficient)`.
    pub fn terms(&self) -> Vec<(Vec<i64>, Exp, Coeff)> {
        let mut out = Vec::new();
        for (a, c) in &self.terms {
            for (e, x) in c.terms() {
                out.push((a.clone(), *e, x.clone()));
            }
        }
        out
    }

    pub fn coeff(&self, a: &[i64]) -> Novikov {
        self.terms.get(a).cloned().unwrap_or_else(|| Novikov::zero(self.cutoff))
    }

    pub fn add_term(&mut self, a: Vec<i64>, c: &Novikov) {
        if c.is_zero() {
            return;
        }
        let next = match self.terms.remove(&a) {
            Some(x) => &x + c,
            None => c.clone(),
        };
        if !next.is_zero() {
            self.terms.insert(a, next);
        }
    }

    pub fn with_cutoff(&self, cutoff: Exp) -> LaurentPolynomial {
        let mut p = LaurentPolynomial::zero(self.vars.clone(), cutoff);
        for (a, c) in &self.terms {
            p.add_term(a.clone(), &c.with_cutoff(cutoff));
        }
        p
    }

    pub fn plus(&self, other: &LaurentPolynomial) -> LaurentPolynomial {
        let mut p = self.clone();
        for (a, c) in &other.terms {
            p.add_term(a.clone(), c);
        }
        p
    }

    pub fn neg(&self) -> LaurentPolynomial {
        let mut p = LaurentPolynomial::zero(self.vars.clone(), self.cutoff);
        for (a, c) in &self.terms {
            p.add_term(a.clone(), &-c);
        }
        p
    }

    pub fn minus(&self, other: &LaurentPolynomial) -> LaurentPolynomial {
        self.plus(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPolynomial) -> Result<LaurentPolynomial> {
        let mut p = LaurentPolynomial::zero(self.vars.clone(), self.cutoff.min(other.cutoff));
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let ab = a.iter().zip(b).map(|(x, y)| x + y).collect();
                p.add_term(ab, &c.checked_mul(d)?);
            }
        }
        Ok(p)
    }

    pub fn scale(&self, c: &Novikov) -> Result<LaurentPolynomial> {
        let mut p = LaurentPolynomial::zero(self.vars.clone(), self.cutoff);
        for (a, x) in &self.terms {
            p.add_term(a.clone(), &x.checked_mul(c)?);
        }
        Ok(p)
    }

    /// The single term `(a, c)` of a monomial.
    pub fn as_monomial(&self) -> Option<(&Vec<i64>, &Novikov)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Inverse of a monomial `c T^e y^a` with `c` a nonzero scalar.
    pub fn monomial_inverse(&self) -> Result<LaurentPolynomial> {
        let (a, c) = self.as_monomial().ok_or_else(|| Error::invalid("only monomials can be inverted"))?;
        if c.terms().len() != 1 {
            return Err(Error::invalid("only monomials can be inverted"));
        }
        let mut p = LaurentPolynomial::zero(self.vars.clone(), self.cutoff);
        p.add_term(a.iter().map(|x| -x).collect(), &c.inv()?);
        Ok(p)
    }

    pub fn pow(&self, n: i64) -> Result<LaurentPolynomial> {
        let base = if n < 0 { self.monomial_inverse()? } else { self.clone() };
        let mut acc = LaurentPolynomial::constant(self.vars.clone(), Novikov::one(self.cutoff));
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// `y_i ∂W/∂y_i`.
    pub fn log_derivative(&self, i: usize) -> LaurentPolynomial {
        let mut p = LaurentPolynomial::zero(self.vars.clone(), self.cutoff);
        for (a, c) in &self.terms {
            if a[i] != 0 {
                p.add_term(a.clone(), &c.scale(&Coeff::int(a[i])).expect("integer scaling"));
            }
        }
        p
    }

    /// `y_i y_j ∂²W/∂y_i∂y_j`.
    pub fn second_derivative(&self, i: usize, j: usize) -> LaurentPolynomial {
        let mut p = LaurentPolynomial::zero(self.vars.clone(), self.cutoff);
        for (a, c) in &self.terms {
            let k = if i == j { a[i] * (a[i] - 1) } else { a[i] * a[j] };
            if k != 0 {
                p.add_term(a.clone(), &c.scale(&Coeff::int(k)).expect("integer scaling"));
            }
        }
        p
    }

    /// Value at a point of `(Λ \ 0)^n`.
    pub fn eval(&self, y: &[Novikov]) -> Result<Novikov> {
        if y.len() != self.nvars() {
            return Err(Error::invalid(format!("expected {} coordinates, got {}", self.nvars(), y.len())));
        }
        let inverses: Vec<Option<Novikov>> = y
            .iter()
            .enumerate()
            .map(|(i, c)| if self.terms.keys().any(|a| a[i] < 0) { c.inv().map(Some) } else { Ok(None) })
            .collect::<std::result::Result<_, _>>()?;
        let mut acc = Novikov::zero(self.cutoff);
        for (a, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in a.iter().enumerate() {
                if k > 0 {
                    t = t.checked_mul(&y[i].pow(k)?)?;
                } else if k < 0 {
                    t = t.checked_mul(&inverses[i].as_ref().expect("inverse").pow(-k)?)?;
                }
            }
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }

    /// `W(T^{t_1} y_1, .., T^{t_n} y_n)`.
    pub fn rescale(&self, t: &[Exp]) -> LaurentPolynomial {
        let mut p = LaurentPolynomial::zero(self.vars.clone(), self.cutoff);
        for (a, c) in &self.terms {
            let shift: Exp = a.iter().zip(t).map(|(k, x)| x * Exp::from_integer(*k)).sum();
            p.add_term(a.clone(), &c.shift(shift));
        }
        p
    }

    /// Multiplies every coefficient by `T^e`.
    pub fn shift(&self, e: Exp) -> LaurentPolynomial {
        let mut p = LaurentPolynomial::zero(self.vars.clone(), self.cutoff);
        for (a, c) in &self.terms {
            p.add_term(a.clone(), &c.shift(e));
        }
        p
    }

    /// Monomial change of variables `y^a ↦ y^{M a}` for `M ∈ GL(n, Z)`.
    pub fn change_variables(&self, m: &[Vec<i64>]) -> LaurentPolynomial {
        let mut p = LaurentPolynomial::zero(self.vars.clone(), self.cutoff);
        for (a, c) in &self.terms {
            let b = m.iter().map(|row| row.iter().zip(a).map(|(x, y)| x * y).sum()).collect();
            p.add_term(b, c);
        }
        p
    }

    /// Least energy of `T^{e_a} y^a` after `y = T^v z`, and the terms attaining it.
    pub fn initial_form(&self, v: &[Exp]) -> Option<(Exp, Vec<(Vec<i64>, Coeff)>)> {
        let shifted = self.rescale(v);
        let low = shifted.terms.values().filter_map(|c| c.valuation()).min()?;
        let face = shifted
            .terms
            .iter()
            .filter(|(_, c)| c.valuation() == Some(low))
            .map(|(a, c)| (a.clone(), c.coeff_of(low)))
            .collect();
        Some((low, face))
    }
}

fn fmt_monomial(vars: &[String], a: &[i64]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(a)
        .filter(|(_, k)| **k != 0)
        .map(|(v, k)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
        .collect();
    parts.join("*")
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (a, energy, c) in self.terms() {
            let t = if energy.is_zero() { String::new() } else { format!("*T^({})", format_exp(&energy)) };
            let m = fmt_monomial(&self.vars, &a);
            let m = if m.is_empty() { m } else { format!("*{m}") };
            parts.push(format!("({c}){t}{m}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}
