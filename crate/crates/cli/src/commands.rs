use std::path::Path;

use serde_json::{json, Value};

use qcoh::ainfinity::fixture::{parse_fixture, Fixture};
use qcoh::ainfinity::{check_ainf, check_cyclic, check_unital, cohomology_category, AInfCategory, CheckReport};
use qcoh::error::{Error, Result};
use qcoh::hochschild::{b, chain_homology, cochain_homology, Chain, Homology};
use qcoh::models_qcoh::{assemble_ledger, torus_fiber_model, LedgerInput, LedgerVerdict, SphereInput, TorusFactor};
use qcoh::mukai_splitgen::{mukai, mukai_gram, split_generation_check, z_x, DualBasisTable, Verdict};
use qcoh::novikov::{format_exp, parse_novikov, CoefficientField, Exp, Novikov};
use qcoh::potential::{
    build_toric_potential, critical_points, morse_count_check, parse_polytope, parse_potential_file, residual_valuation,
    zeta_symmetry_check, CriticalPoint, CriticalSet, FieldPolicy, LaurentPolynomial,
};

use crate::config::RunConfig;
use crate::report::{Report, Status, Table};

pub const BLOW_UP_POTENTIAL: &str = "((1+y1+y2)*(1+1/y1)*(1+1/y2) - 3)*T";

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))
}

fn load(cfg: &RunConfig, path: &Path) -> Result<AInfCategory> {
    match parse_fixture(&read(path)?)? {
        Fixture::Category(f) => f.build_with_cutoff(cfg.cutoff),
        Fixture::Floer(_) => Err(Error::invalid("expected a category fixture; floer fixtures are accepted by `check`")),
    }
}

fn exp_list(v: &[Exp]) -> String {
    let parts: Vec<String> = v.iter().map(format_exp).collect();
    format!("({})", parts.join(", "))
}

fn homology_fields(r: &mut Report, h: &Homology) {
    r.field("length", h.length);
    r.field("dims", json!({ "even": h.dims[0], "odd": h.dims[1] }));
    r.field("previous", h.previous.map_or(Value::Null, |p| json!({ "even": p[0], "odd": p[1] })));
    r.field("stabilized", h.stabilized);
    if !h.stabilized {
        r.status = Status::NotStabilized;
    }
}

fn check_row(t: &mut Table, rep: &CheckReport) {
    t.row(vec![rep.name.clone(), rep.checked.to_string(), rep.failures.to_string()]);
}

fn run_checks(cfg: &RunConfig, cat: &AInfCategory, r: &mut Report) -> Result<()> {
    let len = cfg.arity.unwrap_or(cat.max_arity() + 2);
    let cert = cfg.certification(cat.cutoff());
    let mut reports = vec![check_ainf(cat, len, &cert)?];
    if cat.is_unital() {
        reports.push(check_unital(cat, len, &cert)?);
    }
    if cat.pairing().is_some() {
        reports.push(check_cyclic(cat, len, true, &cert)?);
    }
    r.field("arity", len);
    r.field("cutoff", format_exp(&cat.cutoff()));
    let mut t = Table::new("checks", &["check", "tuples", "failures"]);
    let mut failed = Table::new("violations", &["check", "kind", "word", "residual"]);
    for rep in &reports {
        check_row(&mut t, rep);
        for v in &rep.violations {
            failed.row(vec![rep.name.clone(), v.kind.clone(), v.word.join(" "), v.residual.clone()]);
        }
        if !rep.passed() {
            r.fail();
        }
    }
    r.tables.push(t);
    if !failed.rows.is_empty() {
        r.tables.push(failed);
    }
    r.summary = if r.status == Status::Ok { "all checks passed".into() } else { "checks failed".into() };
    Ok(())
}

pub fn check(cfg: &RunConfig, path: &Path) -> Result<Report> {
    let mut r = Report::new("check");
    match parse_fixture(&read(path)?)? {
        Fixture::Category(f) => {
            let cat = f.build_with_cutoff(cfg.cutoff)?;
            run_checks(cfg, &cat, &mut r)?;
        }
        Fixture::Floer(f) => {
            let (alg, bc) = f.build()?;
            let bc = bc.ok_or_else(|| Error::invalid("floer fixture needs `rho` or `b_plus` to deform"))?;
            let arity = cfg.arity.unwrap_or(3);
            let d = alg.deform_by_mc(&bc, arity)?;
            r.field("potential", d.potential.to_string());
            run_checks(cfg, &d.category, &mut r)?;
        }
    }
    Ok(r)
}

pub fn hh(cfg: &RunConfig, path: &Path, cohomology: bool) -> Result<Report> {
    let cat = load(cfg, path)?;
    let cert = cfg.certification(cat.cutoff());
    let mut r = Report::new("hh");
    let mut t = Table::new("representatives", &["#", "parity", "class"]);
    if cohomology {
        let h = cochain_homology(&cat, cfg.length, &cert)?;
        r.field("complex", "cochains");
        homology_fields(&mut r, &h.homology);
        for i in 0..h.dim() {
            let mut unit = qcoh::graded::Vector::zero();
            unit.add_term(i, &cat.one());
            let phi = h.cochain(&unit, h.parities[i]);
            t.row(vec![(i + 1).to_string(), format!("{:?}", h.parities[i]).to_lowercase(), phi.show(&cat)]);
        }
        r.summary = format!("HH^• has dimension {}", h.homology.total());
    } else {
        let h = chain_homology(&cat, cfg.length, &cert)?;
        r.field("complex", "chains");
        homology_fields(&mut r, &h.homology);
        for (i, rep) in h.reps.iter().enumerate() {
            if cfg.assert_identities && !b(&cat, rep).is_zero() {
                r.fail();
                r.notes.push(format!("representative {} is not a b-cycle", i + 1));
            }
            t.row(vec![(i + 1).to_string(), format!("{:?}", h.parities[i]).to_lowercase(), rep.show(&cat)]);
        }
        r.summary = format!("HH_• has dimension {}", h.homology.total());
    }
    if r.status == Status::NotStabilized {
        r.summary = format!("not stabilized ({})", r.summary);
    }
    r.tables.push(t);
    Ok(r)
}

pub fn mukai_cmd(cfg: &RunConfig, path: &Path) -> Result<Report> {
    let cat = load(cfg, path)?;
    let cert = cfg.certification(cat.cutoff());
    let h = chain_homology(&cat, cfg.length, &cert)?;
    let mut r = Report::new("mukai");
    homology_fields(&mut r, &h.homology);
    let gram = mukai_gram(&cat, &h.reps);
    let names: Vec<String> = (1..=h.dim()).map(|i| format!("X{i}")).collect();
    let mut cols = vec!["".to_string()];
    cols.extend(names.iter().cloned());
    let mut t = Table { title: "Mukai pairing on HH_•".into(), columns: cols, rows: Vec::new() };
    for (i, row) in gram.iter().enumerate() {
        let mut cells = vec![names[i].clone()];
        cells.extend(row.iter().map(|x| x.to_string()));
        t.row(cells);
    }
    let mut reps = Table::new("representatives", &["class", "chain"]);
    for (i, rep) in h.reps.iter().enumerate() {
        reps.row(vec![names[i].clone(), rep.show(&cat)]);
    }
    let table = DualBasisTable::new(&cat)?;
    let mut z = Table::new("Z_X", &["class", "object", "Z_X(class)"]);
    for (i, rep) in h.reps.iter().enumerate() {
        for (k, obj) in cat.objects().iter().enumerate() {
            z.row(vec![names[i].clone(), obj.clone(), cat.show(&z_x(&cat, rep, k, &table)?)]);
        }
    }
    if cfg.assert_identities {
        // a cycle pairs to zero with every boundary
        for rep in &h.reps {
            for s in 0..=1 {
                for w in cat.cyclic_words(s, None) {
                    let bw = b(&cat, &Chain::word(w, cat.one()));
                    if !mukai(&cat, &bw, rep).is_zero() {
                        r.fail();
                        r.notes.push("Mukai pairing is not well defined on homology".into());
                    }
                }
            }
        }
    }
    r.tables.extend([reps, t, z]);
    r.summary = format!("{} classes", h.dim());
    if r.status == Status::NotStabilized {
        r.summary = format!("not stabilized ({})", r.summary);
    }
    Ok(r)
}

fn witness_json(cat: &AInfCategory, x: &Chain) -> Value {
    let terms: Vec<Value> = x
        .iter()
        .map(|(w, c)| json!({ "word": w.iter().map(|&i| cat.label(i)).collect::<Vec<_>>(), "coeff": c.to_string() }))
        .collect();
    Value::Array(terms)
}

fn witness_from_json(cat: &AInfCategory, v: &Value) -> Result<Chain> {
    let terms = v.as_array().ok_or_else(|| Error::invalid("`witness` must be a list"))?;
    let mut out = Chain::zero();
    for t in terms {
        let word = t["word"].as_array().ok_or_else(|| Error::invalid("witness term needs a `word` list"))?;
        let ids = word
            .iter()
            .map(|l| cat.basis_id(l.as_str().unwrap_or_default()))
            .collect::<Result<Vec<_>>>()?;
        let c = t["coeff"].as_str().ok_or_else(|| Error::invalid("witness term needs a `coeff` string"))?;
        let c = parse_novikov(c, cat.cutoff()).map_err(|e| Error::invalid(format!("bad witness scalar: {e}")))?;
        out.add_term(ids, &c);
    }
    Ok(out)
}

/// Coordinates in the cohomology basis `h1, h2, ..`.
fn coords(v: &qcoh::graded::Vector) -> String {
    let terms: Vec<String> = v.iter().map(|(j, x)| format!("{x}·h{}", j + 1)).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn objects(cat: &AInfCategory, names: &[String]) -> Result<Vec<usize>> {
    names.iter().map(|n| cat.object_id(n)).collect()
}

pub fn splitgen(cfg: &RunConfig, path: &Path, sub: &[String], target: &str, replay: Option<&Path>) -> Result<Report> {
    let cat = load(cfg, path)?;
    let cert = cfg.certification(cat.cutoff());
    let k = cat.object_id(target)?;
    let mut r = Report::new("splitgen");
    r.field("target", target);
    if let Some(file) = replay {
        let v: Value = serde_json::from_str(&read(file)?)
            .map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
        let x = witness_from_json(&cat, &v["witness"])?;
        let table = DualBasisTable::new(&cat)?;
        let coh = cohomology_category(&cat, &cert)?;
        let end_k = coh.hom_a(k, k);
        let unit = cat.unit(k).ok_or_else(|| Error::invalid(format!("object `{target}` has no unit")))?;
        let got = end_k.class_of(&z_x(&cat, &x, k, &table)?)?;
        let want = end_k.class_of(unit)?;
        let ok = !x.is_zero() && b(&cat, &x).is_zero() && got == want;
        r.field("witness", witness_json(&cat, &x));
        r.summary = if ok { "witness replays: [Z_K(x)] = [1_K]".into() } else { "witness does not replay".into() };
        if !ok {
            r.fail();
        }
        return Ok(r);
    }
    let sub_ids = objects(&cat, sub)?;
    let c = split_generation_check(&cat, &sub_ids, k, cfg.length, &cert)?;
    r.field("subcategory", json!(sub));
    r.field("length", c.length);
    r.field("verdict", c.verdict.to_string());
    r.field("witness", witness_json(&cat, &c.witness));
    r.field("residual", coords(&c.residual));
    let mut t = Table::new("images of HH_•(B) in H(End K)", &["class", "[Z_K c_B X]"]);
    for (i, v) in c.images.iter().enumerate() {
        t.row(vec![format!("X{}", i + 1), coords(v)]);
    }
    r.tables.push(t);
    if c.verdict == Verdict::Generated {
        r.summary = format!("{target} is split-generated by {}", sub.join(","));
    } else {
        r.summary = format!("{target} is not split-generated by {}: [1_K] is not in the image", sub.join(","));
        r.fail();
    }
    Ok(r)
}

fn point_rows(set: &CriticalSet, t: &mut Table) {
    for (i, p) in set.points.iter().enumerate() {
        t.row(vec![
            (i + 1).to_string(),
            exp_list(&p.valuation),
            p.value.to_string(),
            p.hessian_det.to_string(),
            if p.nondegenerate { "morse".into() } else { "degenerate".into() },
        ]);
    }
    for d in &set.degenerate {
        let lead: Vec<String> = d.leading.iter().map(|(re, im)| format!("{re:.6}{im:+.6}i")).collect();
        t.row(vec!["-".into(), exp_list(&d.valuation), format!("leading {}", lead.join(", ")), "-".into(), "degenerate lead".into()]);
    }
}

fn float_sort_key(p: &CriticalPoint) -> (bool, f64) {
    let rational = p.value.terms().iter().all(|(_, c)| c.field() == CoefficientField::Rational);
    let lead = p.value.leading().map_or(0.0, |(_, c)| c.to_complex().0);
    (rational, -lead)
}

/// Critical points with irrational values first, then by decreasing leading coefficient.
fn sorted(mut set: CriticalSet) -> CriticalSet {
    set.points.sort_by(|a, b| {
        let (ka, kb) = (float_sort_key(a), float_sort_key(b));
        ka.0.cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
    });
    set
}

fn verify_points(w: &LaurentPolynomial, set: &CriticalSet, r: &mut Report) -> Result<()> {
    for (i, p) in set.points.iter().enumerate() {
        if let Some(v) = residual_valuation(w, &p.coords)? {
            r.fail();
            r.notes.push(format!("point {} leaves a residual of valuation {}", i + 1, format_exp(&v)));
        }
        let value = w.eval(&p.coords)?.with_cutoff(p.value.cutoff());
        if value != p.value {
            r.fail();
            r.notes.push(format!("point {} re-evaluates to {value}", i + 1));
        }
    }
    Ok(())
}

fn crit_table() -> Table {
    Table::new("critical points", &["#", "valuation", "value", "det H", "flag"])
}

pub fn crit(cfg: &RunConfig, path: &Path) -> Result<Report> {
    let w = parse_potential_file(&read(path)?, cfg.cutoff())?;
    let set = sorted(critical_points(&w, &cfg.crit_options())?);
    let mut r = Report::new("crit");
    r.field("potential", w.to_string());
    r.field("cutoff", format_exp(&cfg.cutoff()));
    let mut t = crit_table();
    point_rows(&set, &mut t);
    r.tables.push(t);
    r.notes.extend(set.warnings.iter().cloned());
    if cfg.assert_identities {
        verify_points(&w, &set, &mut r)?;
    }
    if !set.all_nondegenerate() {
        r.fail();
    }
    let n = set.points.len();
    r.summary = if set.all_nondegenerate() {
        format!("{n} nondegenerate critical points")
    } else {
        format!("{n} critical points, {} degenerate", set.points.iter().filter(|p| !p.nondegenerate).count() + set.degenerate.len())
    };
    Ok(r)
}

/// `r:k1,k2,..`.
pub fn parse_zeta(s: &str) -> std::result::Result<(u32, Vec<i64>), String> {
    let (r, k) = s.split_once(':').ok_or("expected r:k1,k2,..")?;
    let r: u32 = r.parse().map_err(|_| format!("bad order `{r}`"))?;
    let k = k.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| format!("bad exponent `{x}`"))).collect::<std::result::Result<_, _>>()?;
    Ok((r, k))
}

pub fn toric(cfg: &RunConfig, path: &Path, zeta: Option<&(u32, Vec<i64>)>) -> Result<Report> {
    let p = parse_polytope(&read(path)?)?;
    let t = build_toric_potential(&p, cfg.cutoff())?;
    let expected = p.vertices().len();
    let opts = cfg.crit_options();
    let verdict = morse_count_check(&t.w, expected, &opts)?;
    let mut r = Report::new("toric");
    r.field("potential", t.w.to_string());
    r.field("omegas", exp_list(&t.omegas));
    r.field("vertices", expected);
    r.field("critical points", verdict.count);
    r.field("nondegenerate", verdict.all_nondegenerate);
    let set = sorted(critical_points(&t.w, &opts)?);
    let mut table = crit_table();
    point_rows(&set, &mut table);
    r.tables.push(table);
    r.notes.extend(set.warnings.iter().cloned());
    if cfg.assert_identities {
        verify_points(&t.w, &set, &mut r)?;
    }
    r.summary = format!("{} Morse critical points, dim H•(X) = {expected}", verdict.count);
    if !verdict.matches {
        r.fail();
    }
    if let Some((order, k)) = zeta {
        let eps = match cfg.field {
            FieldPolicy::Float(e) => Some(e),
            _ => None,
        };
        let z = zeta_symmetry_check(&t.w, *order, k, eps)?;
        r.field("zeta symmetry", z.holds);
        if let Some(a) = z.violation {
            r.notes.push(format!("W(ζ^k y) ≠ ζ W(y) at the monomial with exponent {a:?}"));
        }
        if !z.holds {
            r.fail();
        }
    }
    Ok(r)
}

pub fn blowup(cfg: &RunConfig, path: Option<&Path>, spheres: usize, dim: usize) -> Result<Report> {
    let text = match path {
        Some(p) => read(p)?,
        None => BLOW_UP_POTENTIAL.to_string(),
    };
    let w = parse_potential_file(&text, cfg.cutoff())?;
    let set = sorted(critical_points(&w, &cfg.crit_options())?);
    let mut r = Report::new("blowup");
    r.field("potential", w.to_string());
    let mut t = crit_table();
    point_rows(&set, &mut t);
    r.tables.push(t);
    r.notes.extend(set.warnings.iter().cloned());
    if !set.all_nondegenerate() {
        return Err(Error::Hypothesis("the fiber potential has degenerate critical points".into()));
    }
    let cert = cfg.certification(cfg.cutoff());
    let mut models = Table::new("torus fiber models", &["point", "A∞", "unital", "cyclic", "Mukai = ±det H"]);
    for (i, c) in set.points.iter().enumerate() {
        let cat = torus_fiber_model(&w, c)?;
        if cfg.assert_identities {
            let n = w.nvars();
            let top = Chain::word(vec![cat.dim() - 1], cat.one());
            let sign = (n * (n + 1) / 2) % 2 == 1;
            let m = mukai(&cat, &top, &top).neg_sign(sign);
            let checks = [
                check_ainf(&cat, 4, &cert)?.passed(),
                check_unital(&cat, 3, &cert)?.passed(),
                check_cyclic(&cat, 3, true, &cert)?.passed(),
                m == c.hessian_det.with_cutoff(m.cutoff()),
            ];
            if checks.iter().any(|ok| !ok) {
                r.fail();
            }
            let mut row = vec![format!("b{}", i + 1)];
            row.extend(checks.iter().map(|ok| if *ok { "pass".to_string() } else { "FAIL".to_string() }));
            models.row(row);
        }
    }
    if cfg.assert_identities {
        r.tables.push(models);
    }
    let tori = set
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| TorusFactor { label: format!("b{}", i + 1), value: p.value.clone() })
        .collect();
    let spheres_in = (1..=spheres).map(|i| SphereInput { label: format!("S{i}"), beta: None, value: None }).collect();
    let cup_nonzero = (1..spheres).map(|i| (format!("S{i}"), format!("S{}", i + 1))).collect();
    let ledger = assemble_ledger(&LedgerInput { tori, spheres: spheres_in, cup_nonzero, sphere_dim: 2, expected_dim: dim })?;
    let mut factors = Table::new("field factors of QH•(X)", &["#", "source", "eigenvalue of c1*"]);
    for (i, (name, ev)) in ledger.eigenvalue_table().into_iter().enumerate() {
        factors.row(vec![(i + 1).to_string(), name, ev.map_or("?".into(), |v: Novikov| v.to_string())]);
    }
    r.tables.push(factors);
    for b in &ledger.blocks {
        let src = b.value_source.as_ref().map_or(String::new(), |s| format!(", forced by {s}"));
        let value = b.value.as_ref().map_or("?".into(), |v| v.to_string());
        r.field(&format!("spheres {}", b.spheres.join(",")), format!("β ≠ 0, W = {value}{src}"));
    }
    for (label, _) in &ledger.absorbed {
        r.notes.push(format!("the idempotent of {label} lies in the sphere block"));
    }
    r.notes.extend(ledger.notes.iter().cloned());
    match &ledger.verdict {
        LedgerVerdict::Semisimple { factors } => r.summary = format!("semisimple with {factors} field factors"),
        LedgerVerdict::NotClosed { deficit, reason } => {
            r.summary = format!("not closed, {deficit} classes missing: {reason}");
            r.fail();
        }
    }
    Ok(r)
}
