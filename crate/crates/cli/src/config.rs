use qcoh::error::{Error, Result};
use qcoh::linalg::Certification;
use qcoh::novikov::{parse_exp, CoefficientField, Exp};
use qcoh::potential::{CritOptions, FieldPolicy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Machine,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    /// `None` keeps the cutoff declared by a fixture.
    pub cutoff: Option<Exp>,
    pub length: usize,
    pub arity: Option<usize>,
    pub slack: Exp,
    pub field: FieldPolicy,
    pub assert_identities: bool,
    pub format: Format,
}

pub const DEFAULT_CUTOFF: i64 = 4;

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let e = self.cutoff();
        if e <= Exp::from_integer(0) {
            return Err(Error::invalid("cutoff must be positive"));
        }
        if self.length < 2 {
            return Err(Error::invalid("length bound must be at least 2"));
        }
        if self.slack < Exp::from_integer(0) || self.slack >= e {
            return Err(Error::invalid("slack must lie in [0, cutoff)"));
        }
        Ok(())
    }

    pub fn cutoff(&self) -> Exp {
        self.cutoff.unwrap_or_else(|| Exp::from_integer(DEFAULT_CUTOFF))
    }

    pub fn certification(&self, cutoff: Exp) -> Certification {
        Certification::new(cutoff, self.slack)
    }

    pub fn crit_options(&self) -> CritOptions {
        CritOptions { cutoff: self.cutoff(), slack: self.slack, field: self.field }
    }
}

pub fn parse_cutoff(s: &str) -> std::result::Result<Exp, String> {
    parse_exp(s).map_err(|e| e.to_string())
}

/// `auto`, `q`, `q-sqrt:d` or `float:eps`.
pub fn parse_field(s: &str) -> std::result::Result<FieldPolicy, String> {
    match s {
        "auto" => return Ok(FieldPolicy::Auto),
        "q" => return Ok(FieldPolicy::Exact(CoefficientField::Rational)),
        _ => {}
    }
    if let Some(d) = s.strip_prefix("q-sqrt:") {
        let d: i64 = d.parse().map_err(|_| format!("bad radicand `{d}`"))?;
        if d == 0 || d == 1 {
            return Err(format!("q-sqrt:{d} is not a quadratic field"));
        }
        return Ok(FieldPolicy::Exact(CoefficientField::Quadratic(d)));
    }
    if let Some(eps) = s.strip_prefix("float:") {
        let eps: f64 = eps.parse().map_err(|_| format!("bad tolerance `{eps}`"))?;
        if !(eps > 0.0) {
            return Err("tolerance must be positive".into());
        }
        return Ok(FieldPolicy::Float(eps));
    }
    Err(format!("unknown field `{s}`; expected auto, q, q-sqrt:d or float:eps"))
}
