use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use num_traits::Zero;

use super::homotopy::{torus_solutions, CPoly};
use super::recognize::{common_field, recognize};
use super::tropical::{affine_dimension, lower_facets, prevariety_vertices};
use super::LaurentPolynomial;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::novikov::{format_exp, Coeff, CoefficientField, Exp, Novikov};

/// Leading roots with `1 / ‖J⁻¹‖` below this are degenerate; a polished
/// double root is only accurate to about `√ε`.
const DEGENERATE: f64 = 1e-6;

/// Which coefficient field critical points are expressed in.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FieldPolicy {
    /// `Q` or some `Q(√d)` when the leading coefficients are recognized, else floats.
    Auto,
    /// Exactly this field; points outside it are an error.
    Exact(CoefficientField),
    Float(f64),
}

#[derive(Clone, Copy, Debug)]
pub struct CritOptions {
    pub cutoff: Exp,
    pub slack: Exp,
    pub field: FieldPolicy,
}

impl CritOptions {
    pub fn new(cutoff: Exp) -> CritOptions {
        CritOptions { cutoff, slack: Exp::zero(), field: FieldPolicy::Auto }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HessianReport {
    /// `[y_i y_j ∂²W/∂y_i∂y_j](c)`.
    pub matrix: Matrix,
    pub det: Novikov,
    pub nondegenerate: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalPoint {
    pub coords: Vec<Novikov>,
    pub value: Novikov,
    pub hessian: Matrix,
    pub hessian_det: Novikov,
    pub nondegenerate: bool,
    pub valuation: Vec<Exp>,
    pub field: CoefficientField,
}

impl CriticalPoint {
    /// `T^{-val c_i} c_i`.
    pub fn reduced_coords(&self) -> Vec<Novikov> {
        self.coords.iter().zip(&self.valuation).map(|(c, v)| c.shift(-*v)).collect()
    }
}

/// A leading-order solution with singular Jacobian; never lifted.
#[derive(Clone, Debug, PartialEq)]
pub struct DegenerateLead {
    pub valuation: Vec<Exp>,
    pub leading: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalSet {
    pub points: Vec<CriticalPoint>,
    pub degenerate: Vec<DegenerateLead>,
    pub warnings: Vec<String>,
}

impl CriticalSet {
    pub fn all_nondegenerate(&self) -> bool {
        self.degenerate.is_empty() && self.points.iter().all(|p| p.nondegenerate)
    }
}

/// The logarithmic Hessian at `c` with its determinant.
pub fn hessian(w: &LaurentPolynomial, c: &[Novikov]) -> Result<HessianReport> {
    let n = w.nvars();
    let mut rows = vec![Vec::with_capacity(n); n];
    for (i, row) in rows.iter_mut().enumerate() {
        for j in 0..n {
            row.push(w.second_derivative(i, j).eval(c)?);
        }
    }
    let matrix = Matrix::new(rows);
    let det = if n == 0 { Novikov::one(w.cutoff()) } else { matrix.det()? };
    if det.is_zero() && !det.is_exact() {
        return Err(Error::InsufficientCutoff { needed: det.known_below() });
    }
    let nondegenerate = !det.is_zero();
    Ok(HessianReport { matrix, det, nondegenerate })
}

fn truncate(h: HessianReport, cutoff: Exp) -> Result<HessianReport> {
    let n = h.matrix.nrows();
    let matrix = Matrix::new((0..n).map(|i| (0..n).map(|j| h.matrix.get(i, j).with_cutoff(cutoff)).collect()).collect());
    let det = h.det.with_cutoff(cutoff);
    if det.is_zero() && !det.is_exact() {
        return Err(Error::InsufficientCutoff { needed: det.known_below() });
    }
    Ok(HessianReport { matrix, nondegenerate: !det.is_zero(), det })
}

/// Least valuation of `y_i ∂W/∂y_i(c)`, `None` when all vanish to precision.
pub fn residual_valuation(w: &LaurentPolynomial, c: &[Novikov]) -> Result<Option<Exp>> {
    let mut low: Option<Exp> = None;
    for i in 0..w.nvars() {
        if let Some(v) = w.log_derivative(i).eval(c)?.valuation() {
            low = Some(low.map_or(v, |l: Exp| l.min(v)));
        }
    }
    Ok(low)
}

fn to_c(c: &Coeff) -> Complex64 {
    let (re, im) = c.to_complex();
    Complex64::new(re, im)
}

fn coeff_monomial(u: &[Coeff], a: &[i64]) -> Result<Coeff> {
    let mut m = Coeff::one();
    for (x, &k) in u.iter().zip(a) {
        if k != 0 {
            m = m.checked_mul(&x.pow(k)?)?;
        }
    }
    Ok(m)
}

/// Whether `u` solves the leading system `in_v(y_i ∂_i W)(u) = 0` exactly.
fn solves_exactly(faces: &[Vec<(Vec<i64>, Coeff)>], u: &[Coeff]) -> Result<bool> {
    for face in faces {
        let mut acc = Coeff::zero();
        for (a, w) in face {
            acc = acc.checked_add(&w.checked_mul(&coeff_monomial(u, a)?)?)?;
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

enum Leading {
    Exact(Vec<Coeff>, CoefficientField),
    Float(Vec<Coeff>, f64),
}

fn leading_coefficients(
    faces: &[Vec<(Vec<i64>, Coeff)>],
    x: &[Complex64],
    others: &[Vec<Complex64>],
    policy: FieldPolicy,
    warnings: &mut Vec<String>,
) -> Result<Leading> {
    let floats = |eps: f64| x.iter().map(|z| Coeff::float(z.re, z.im, eps)).collect::<Vec<_>>();
    if let FieldPolicy::Float(eps) = policy {
        return Ok(Leading::Float(floats(eps), eps));
    }
    let exact: Option<Vec<Coeff>> = (0..x.len())
        .map(|i| {
            let conj: Vec<Complex64> = others.iter().map(|o| o[i]).collect();
            recognize(x[i], &conj)
        })
        .collect();
    let verified = match exact {
        Some(u) => match common_field(&u) {
            Some(f) if solves_exactly(faces, &u)? => Some((u, f)),
            _ => None,
        },
        None => None,
    };
    let shown = || format!("{:?}", x.iter().map(|z| (z.re, z.im)).collect::<Vec<_>>());
    match (verified, policy) {
        (Some((u, f)), FieldPolicy::Exact(want)) => {
            if f == CoefficientField::Rational || f == want {
                Ok(Leading::Exact(u, want))
            } else {
                Err(Error::Unsupported(format!("critical point with leading term {} lies in {f}, not {want}", shown())))
            }
        }
        (Some((u, f)), _) => Ok(Leading::Exact(u, f)),
        (None, FieldPolicy::Exact(want)) => {
            Err(Error::Unsupported(format!("leading term {} not recognized in {want}", shown())))
        }
        (None, _) => {
            warnings.push(format!("leading term {} not recognized exactly; lifted in floats", shown()));
            Ok(Leading::Float(floats(1e-9), 1e-9))
        }
    }
}

type Face = Vec<(Vec<i64>, Coeff)>;

/// A k-linear relation `Σ λ_i L_i = 0` among leading forms, with `λ_i = 1`
/// for the returned index.
fn leading_relation(faces: &[Face]) -> Result<Option<(usize, Vec<Coeff>)>> {
    let n = faces.len();
    let mut basis: Vec<(Vec<i64>, BTreeMap<Vec<i64>, Coeff>, Vec<Coeff>)> = Vec::new();
    for (i, face) in faces.iter().enumerate() {
        let mut vec: BTreeMap<Vec<i64>, Coeff> = face.iter().cloned().collect();
        let mut combo = vec![Coeff::zero(); n];
        combo[i] = Coeff::one();
        for (pivot, row, rc) in &basis {
            let Some(f) = vec.get(pivot).cloned() else { continue };
            for (a, c) in row {
                let e = vec.entry(a.clone()).or_insert_with(Coeff::zero);
                *e = e.checked_sub(&f.checked_mul(c)?)?;
            }
            for (x, y) in combo.iter_mut().zip(rc) {
                *x = x.checked_sub(&f.checked_mul(y)?)?;
            }
            vec.retain(|_, c| !c.is_zero());
        }
        match vec.iter().next().map(|(a, c)| (a.clone(), c.clone())) {
            None => return Ok(Some((i, combo))),
            Some((pivot, c)) => {
                let inv = c.inv()?;
                let row = vec.into_iter().map(|(a, x)| Ok((a, x.checked_mul(&inv)?))).collect::<Result<_>>()?;
                let rc = combo.iter().map(|x| Ok(x.checked_mul(&inv)?)).collect::<Result<_>>()?;
                basis.push((pivot, row, rc));
            }
        }
    }
    Ok(None)
}

/// The critical equations after `y = T^v z`, each shifted to order 0 and
/// recombined until their leading forms are linearly independent. The
/// recombination is unitriangular, so the zero set is unchanged.
fn reduce_at(grads: &[LaurentPolynomial], v: &[Exp], inner: Exp) -> Result<Option<(Vec<LaurentPolynomial>, Vec<Face>)>> {
    let n = grads.len();
    let zero = vec![Exp::zero(); n];
    let mut rows: Vec<LaurentPolynomial> = grads.iter().map(|g| g.with_cutoff(inner).rescale(v)).collect();
    for _ in 0..64 {
        let mut faces = Vec::with_capacity(n);
        for r in rows.iter_mut() {
            let Some((m, face)) = r.initial_form(&zero) else { return Ok(None) };
            *r = r.shift(-m);
            faces.push(face);
        }
        let Some((i, lambda)) = leading_relation(&faces)? else { return Ok(Some((rows, faces))) };
        let mut combined = LaurentPolynomial::zero(rows[i].vars().to_vec(), inner);
        for (r, l) in rows.iter().zip(&lambda) {
            if !l.is_zero() {
                combined = combined.plus(&r.scale(&Novikov::constant(l.clone(), inner))?);
            }
        }
        rows[i] = combined;
    }
    Ok(None)
}

/// T-adic Newton iteration in log coordinates on the normalized equations
/// `eqs` (leading parts at energy 0) from `u`.
fn newton_lift(eqs: &[LaurentPolynomial], u: Vec<Novikov>) -> Result<Vec<Novikov>> {
    let n = eqs.len();
    let jac: Vec<Vec<LaurentPolynomial>> = eqs.iter().map(|e| (0..n).map(|j| e.log_derivative(j)).collect()).collect();
    let mut z = u;
    let mut last: Option<Exp> = None;
    for _ in 0..64 {
        let g: Vec<Novikov> = eqs.iter().map(|p| p.eval(&z)).collect::<Result<_>>()?;
        let r = g.iter().filter_map(|x| x.valuation()).min();
        let Some(r) = r else { return Ok(z) };
        if let Some(prev) = last {
            if r < prev + prev {
                return Err(Error::Hypothesis(format!(
                    "Newton residual valuation {} after {}; expected at least double",
                    format_exp(&r),
                    format_exp(&prev)
                )));
            }
        } else if r <= Exp::zero() {
            return Err(Error::Hypothesis("leading solution does not solve the leading system".into()));
        }
        last = Some(r);
        let rows = jac.iter().map(|row| row.iter().map(|p| p.eval(&z)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        let rhs: Vec<Novikov> = g.iter().map(|x| -x).collect();
        let delta = Matrix::new(rows).solve(&rhs)?;
        for (zi, d) in z.iter_mut().zip(&delta) {
            *zi = zi.checked_add(&zi.checked_mul(d)?)?;
        }
    }
    Err(Error::Hypothesis("Newton iteration did not converge".into()))
}

fn order(a: &CriticalPoint, b: &CriticalPoint) -> Ordering {
    let lead = |p: &CriticalPoint| p.value.leading().map(|(e, c)| (e, to_c(c))).unwrap_or((Exp::zero(), Complex64::zero()));
    let (ea, ca) = lead(a);
    let (eb, cb) = lead(b);
    a.valuation
        .cmp(&b.valuation)
        .then(ea.cmp(&eb))
        .then(cb.re.total_cmp(&ca.re))
        .then(cb.im.total_cmp(&ca.im))
}

/// Critical points of `W` in `(Λ \ 0)^n`: tropical candidates, leading-order
/// solves, exact recognition and T-adic Newton lifting.
pub fn critical_points(w: &LaurentPolynomial, opts: &CritOptions) -> Result<CriticalSet> {
    let n = w.nvars();
    let cutoff = opts.cutoff;
    let input = w;
    let w = w.with_cutoff(cutoff);
    let support: Vec<(Vec<i64>, Exp)> =
        w.coeffs().filter_map(|(a, c)| c.valuation().map(|v| (a.clone(), v))).collect();
    let exps: Vec<Vec<i64>> = support.iter().map(|s| s.0.clone()).collect();
    if n == 0 || affine_dimension(&exps) < n {
        return Err(Error::Hypothesis("positive-dimensional leading system: the support is not full-dimensional".into()));
    }
    let grads: Vec<LaurentPolynomial> = (0..n).map(|i| input.log_derivative(i)).collect();
    let lifted = |p: &LaurentPolynomial| -> Vec<(Vec<i64>, Exp)> {
        p.coeffs().filter_map(|(a, c)| c.valuation().map(|v| (a.clone(), v))).collect()
    };
    let mut candidates: BTreeSet<Vec<Exp>> = prevariety_vertices(&grads.iter().map(lifted).collect::<Vec<_>>()).into_iter().collect();
    candidates.extend(lower_facets(&support));
    let mut out = CriticalSet { points: Vec::new(), degenerate: Vec::new(), warnings: Vec::new() };
    for v in candidates {
        let low = v.iter().copied().fold(Exp::zero(), Exp::min);
        let high = grads
            .iter()
            .filter_map(|g| g.initial_form(&v).map(|(m, _)| m))
            .chain(v.iter().copied())
            .fold(Exp::zero(), Exp::max);
        let inner = cutoff - low + high + high;
        let Some((normalized, faces)) = reduce_at(&grads, &v, inner)? else { continue };
        if faces.iter().any(|f| f.len() < 2) {
            continue;
        }
        let eqs: Vec<CPoly> = faces.iter().map(|f| CPoly { terms: f.iter().map(|(a, c)| (a.clone(), to_c(c))).collect() }).collect();
        let roots = torus_solutions(eqs);
        let all: Vec<Vec<Complex64>> = roots.iter().map(|r| r.x.clone()).collect();
        for (k, root) in roots.iter().enumerate() {
            if root.conditioning < DEGENERATE {
                out.degenerate.push(DegenerateLead { valuation: v.clone(), leading: root.x.iter().map(|z| (z.re, z.im)).collect() });
                continue;
            }
            let others: Vec<Vec<Complex64>> = all.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, x)| x.clone()).collect();
            let (u, field) = match leading_coefficients(&faces, &root.x, &others, opts.field, &mut out.warnings)? {
                Leading::Exact(u, f) => (u, f),
                Leading::Float(u, eps) => (u, CoefficientField::Float(eps)),
            };
            let z0: Vec<Novikov> = u.into_iter().map(|c| Novikov::constant(c, inner)).collect();
            let z = newton_lift(&normalized, z0)?;
            let wide: Vec<Novikov> = z.iter().zip(&v).map(|(zi, vi)| zi.shift(*vi)).collect();
            let w_inner = input.with_cutoff(inner);
            let needed = cutoff - opts.slack;
            for g in &grads {
                let r = g.with_cutoff(inner).eval(&wide)?;
                if !r.is_zero() || r.known_below() < needed {
                    return Err(Error::InsufficientCutoff { needed });
                }
            }
            let coords: Vec<Novikov> = wide.iter().map(|c| c.with_cutoff(cutoff)).collect();
            let value = w_inner.eval(&wide)?.with_cutoff(cutoff);
            let h = truncate(hessian(&w_inner, &wide)?, cutoff)?;
            out.points.push(CriticalPoint {
                coords,
                value,
                hessian: h.matrix,
                hessian_det: h.det,
                nondegenerate: h.nondegenerate,
                valuation: v.clone(),
                field,
            });
        }
    }
    out.points.sort_by(order);
    Ok(out)
}

