//! JSON fixture format for categories and energy-graded algebras.
//!
//! A category fixture:
//!
//! ```json
//! {
//!   "kind": "category",
//!   "cutoff": "4",
//!   "objects": ["L"],
//!   "basis": [
//!     {"label": "1", "src": "L", "tgt": "L", "parity": "even", "degree": 0},
//!     {"label": "p", "src": "L", "tgt": "L", "parity": "odd"}
//!   ],
//!   "ops": [
//!     {"inputs": ["1", "p"], "output": {"p": "1"}},
//!     {"inputs": ["p", "p"], "output": {"1": "-2*T"}}
//!   ],
//!   "curvature": {"L": {"1": "T^2"}},
//!   "units": {"L": {"1": "1"}},
//!   "pairing": {"degree": 1, "entries": [{"left": "1", "right": "p", "value": "1"}]}
//! }
//! ```
//!
//! Scalars use the Novikov literal syntax (`(5/2 + 1/2*s5)*T^1/3 + O(T^2)`).
//! A `floer` fixture describes an energy-graded algebra instead: either
//! `"torus": n` or an explicit `basis`/`classical`, disk `classes` each with
//! an `energy`, `maslov`, `boundary` and either `divisor` (the number `n_β`)
//! or an `ops` table (an empty `inputs` list gives `m_{0,β}`), and an optional
//! bounding cochain `rho`/`b_plus`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::floer::{BoundingCochain, ClassOps, DiskClass, EnergyGradedAlgebra};
use super::{AInfCategory, CategoryBuilder};
use crate::error::{Error, Result};
use crate::graded::{GradedSpace, Parity, Vector};
use crate::novikov::{format_exp, parse_coeff, parse_exp, parse_novikov, Exp, Novikov};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Fixture {
    Category(CategoryFixture),
    Floer(FloerFixture),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisRecord {
    pub label: String,
    pub src: String,
    pub tgt: String,
    pub parity: Parity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpRecord {
    pub inputs: Vec<String>,
    pub output: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingEntry {
    pub left: String,
    pub right: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingRecord {
    pub degree: i64,
    pub entries: Vec<PairingEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFixture {
    pub cutoff: String,
    pub objects: Vec<String>,
    pub basis: Vec<BasisRecord>,
    #[serde(default)]
    pub ops: Vec<OpRecord>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub curvature: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub units: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<PairingRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arity_bound: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FloerBasisRecord {
    pub label: String,
    pub parity: Parity,
    pub degree: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassRecord {
    pub name: String,
    pub energy: String,
    pub maslov: i64,
    pub boundary: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisor: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ops: Vec<OpRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FloerFixture {
    pub cutoff: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<FloerBasisRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub h1: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub classical: Vec<OpRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<PairingRecord>,
    #[serde(default)]
    pub classes: Vec<ClassRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rho: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub b_plus: BTreeMap<String, String>,
}

/// Parses fixture text; JSON syntax errors carry line and column.
pub fn parse_fixture(text: &str) -> Result<Fixture> {
    serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })
}

pub fn load_category(text: &str) -> Result<AInfCategory> {
    match parse_fixture(text)? {
        Fixture::Category(c) => c.build(),
        Fixture::Floer(_) => Err(Error::invalid("expected a category fixture, found a floer fixture")),
    }
}

fn scalar(text: &str, cutoff: Exp) -> Result<Novikov> {
    parse_novikov(text, cutoff).map_err(|e| Error::invalid(format!("bad scalar `{text}`: {e}")))
}

fn vector(map: &BTreeMap<String, String>, space: &GradedSpace, cutoff: Exp) -> Result<Vector> {
    let mut v = Vector::zero();
    for (label, value) in map {
        let i = space.index_of(label).ok_or_else(|| Error::invalid(format!("unknown basis element `{label}`")))?;
        v.add_term(i, &scalar(value, cutoff)?);
    }
    Ok(v)
}

fn ids(labels: &[String], space: &GradedSpace) -> Result<Vec<usize>> {
    labels
        .iter()
        .map(|l| space.index_of(l).ok_or_else(|| Error::invalid(format!("unknown basis element `{l}`"))))
        .collect()
}

fn pairing_entries(p: &PairingRecord, space: &GradedSpace, cutoff: Exp) -> Result<BTreeMap<(usize, usize), Novikov>> {
    let mut out = BTreeMap::new();
    for e in &p.entries {
        let (l, r) = (ids(&[e.left.clone()], space)?[0], ids(&[e.right.clone()], space)?[0]);
        if out.insert((l, r), scalar(&e.value, cutoff)?).is_some() {
            return Err(Error::invalid(format!("duplicate pairing entry <{}, {}>", e.left, e.right)));
        }
    }
    Ok(out)
}

fn cutoff_of(text: &str) -> Result<Exp> {
    let e = parse_exp(text).map_err(|e| Error::invalid(format!("bad cutoff: {e}")))?;
    if e <= Exp::from_integer(0) {
        return Err(Error::invalid("cutoff must be positive"));
    }
    Ok(e)
}

impl CategoryFixture {
    pub fn build(&self) -> Result<AInfCategory> {
        self.build_with_cutoff(None)
    }

    /// Builds with the fixture cutoff, or `cutoff` if given.
    pub fn build_with_cutoff(&self, cutoff: Option<Exp>) -> Result<AInfCategory> {
        let cutoff = match cutoff {
            Some(e) => e,
            None => cutoff_of(&self.cutoff)?,
        };
        let mut b = CategoryBuilder::new(cutoff);
        let mut objects = BTreeMap::new();
        for o in &self.objects {
            if objects.insert(o.clone(), b.add_object(o)).is_some() {
                return Err(Error::invalid(format!("duplicate object `{o}`")));
            }
        }
        let obj = |name: &str| objects.get(name).copied().ok_or_else(|| Error::UnknownObject(name.to_string()));
        for r in &self.basis {
            let id = b.add_basis(&r.label, obj(&r.src)?, obj(&r.tgt)?, r.parity)?;
            if let Some(d) = r.degree {
                if Parity::of(d) != r.parity {
                    return Err(Error::invalid(format!("degree of `{}` disagrees with its parity", r.label)));
                }
                b.set_degree(id, d);
            }
        }
        let space = GradedSpace::new(self.basis.iter().map(|r| (r.label.clone(), r.parity)).collect())?;
        for op in &self.ops {
            if op.inputs.is_empty() {
                return Err(Error::invalid("op records need at least one input; use `curvature` for m0"));
            }
            b.add_op(ids(&op.inputs, &space)?, &vector(&op.output, &space, cutoff)?)?;
        }
        for (o, v) in &self.curvature {
            b.set_curvature(obj(o)?, vector(v, &space, cutoff)?);
        }
        for (o, v) in &self.units {
            b.set_unit(obj(o)?, vector(v, &space, cutoff)?);
        }
        if let Some(p) = &self.pairing {
            b.set_pairing(p.degree, pairing_entries(p, &space, cutoff)?);
        }
        b.set_arity_bound(self.arity_bound);
        b.build()
    }
}

fn vector_map(cat: &AInfCategory, v: &Vector) -> BTreeMap<String, String> {
    v.iter().map(|(i, c)| (cat.label(i).to_string(), c.to_string())).collect()
}

/// Serializes a category in the fixture format; `load_category` inverts it.
pub fn to_fixture(cat: &AInfCategory) -> CategoryFixture {
    let obj = |o: usize| cat.objects()[o].clone();
    let mut ops = Vec::new();
    for f in cat.ops().values() {
        for (key, val) in f.entries() {
            ops.push(OpRecord { inputs: key.iter().map(|&x| cat.label(x).to_string()).collect(), output: vector_map(cat, val) });
        }
    }
    CategoryFixture {
        cutoff: format_exp(&cat.cutoff()),
        objects: cat.objects().to_vec(),
        basis: cat
            .basis()
            .iter()
            .map(|e| BasisRecord { label: e.label.clone(), src: obj(e.src), tgt: obj(e.tgt), parity: e.parity, degree: e.degree })
            .collect(),
        ops,
        curvature: (0..cat.objects().len())
            .filter(|&o| !cat.curvature(o).is_zero())
            .map(|o| (obj(o), vector_map(cat, &cat.curvature(o))))
            .collect(),
        units: (0..cat.objects().len()).filter_map(|o| cat.unit(o).map(|u| (obj(o), vector_map(cat, u)))).collect(),
        pairing: cat.pairing().map(|p| PairingRecord {
            degree: p.degree,
            entries: p
                .entries
                .iter()
                .map(|((x, y), c)| PairingEntry { left: cat.label(*x).into(), right: cat.label(*y).into(), value: c.to_string() })
                .collect(),
        }),
        arity_bound: cat.arity_bound(),
    }
}

pub fn to_fixture_json(cat: &AInfCategory) -> String {
    serde_json::to_string_pretty(&Fixture::Category(to_fixture(cat))).expect("fixture serializes")
}

impl FloerFixture {
    pub fn build(&self) -> Result<(EnergyGradedAlgebra, Option<BoundingCochain>)> {
        let cutoff = cutoff_of(&self.cutoff)?;
        let mut f = match self.torus {
            Some(n) => {
                if !self.basis.is_empty() || !self.classical.is_empty() {
                    return Err(Error::invalid("give either `torus` or an explicit basis, not both"));
                }
                EnergyGradedAlgebra::torus(n, cutoff)
            }
            None => {
                let space = GradedSpace::new(self.basis.iter().map(|r| (r.label.clone(), r.parity)).collect())?;
                for r in &self.basis {
                    if Parity::of(r.degree) != r.parity {
                        return Err(Error::invalid(format!("degree of `{}` disagrees with its parity", r.label)));
                    }
                }
                let unit = self.unit.as_ref().ok_or_else(|| Error::invalid("floer fixture needs a `unit`"))?;
                let unit = ids(&[unit.clone()], &space)?[0];
                let mut classical = BTreeMap::new();
                for op in &self.classical {
                    classical.insert(ids(&op.inputs, &space)?, vector(&op.output, &space, cutoff)?);
                }
                let pairing = match &self.pairing {
                    Some(p) => pairing_entries(p, &space, cutoff)?,
                    None => BTreeMap::new(),
                };
                EnergyGradedAlgebra {
                    cutoff,
                    degrees: self.basis.iter().map(|r| r.degree).collect(),
                    unit,
                    h1: ids(&self.h1, &space)?,
                    classical,
                    classes: Vec::new(),
                    pairing_degree: self.pairing.as_ref().map_or(0, |p| p.degree),
                    pairing,
                    space,
                }
            }
        };
        for c in &self.classes {
            let energy = parse_exp(&c.energy).map_err(|e| Error::invalid(format!("bad energy: {e}")))?;
            if energy < Exp::from_integer(0) {
                return Err(Error::invalid(format!("class `{}` has negative energy", c.name)));
            }
            if c.maslov % 2 != 0 {
                return Err(Error::invalid(format!("class `{}` has odd Maslov index", c.name)));
            }
            let ops = match (&c.divisor, c.ops.is_empty()) {
                (Some(n), true) => ClassOps::Divisor { n_beta: parse_coeff(n)? },
                (None, _) => {
                    let mut t = BTreeMap::new();
                    for op in &c.ops {
                        t.insert(ids(&op.inputs, &f.space)?, vector(&op.output, &f.space, cutoff)?);
                    }
                    ClassOps::Table(t)
                }
                (Some(_), false) => return Err(Error::invalid(format!("class `{}` has both `divisor` and `ops`", c.name))),
            };
            f.classes.push(DiskClass { name: c.name.clone(), energy, maslov: c.maslov, boundary: c.boundary.clone(), ops });
        }
        let bc = if self.rho.is_empty() && self.b_plus.is_empty() {
            None
        } else {
            let rho = self.rho.iter().map(|r| scalar(r, cutoff)).collect::<Result<Vec<_>>>()?;
            Some(BoundingCochain { rho, b_plus: vector(&self.b_plus, &f.space, cutoff)? })
        };
        Ok((f, bc))
    }
}
