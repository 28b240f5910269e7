use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::critical::{critical_points, CritOptions};
use super::tropical::solve_rational;
use super::LaurentPolynomial;
use crate::error::{Error, Result};
use crate::novikov::{format_exp, parse_exp, rat, Coeff, Exp, Novikov};

/// `P = {u | <v_i, u> + λ_i >= 0}` with designated basis rays.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentPolytope {
    pub rays: Vec<Vec<i64>>,
    pub offsets: Vec<Exp>,
    pub basis: Vec<usize>,
}

fn det_int(m: &[Vec<i64>]) -> Exp {
    let n = m.len();
    let mut a: Vec<Vec<Exp>> = m.iter().map(|r| r.iter().map(|&x| Exp::from_integer(x)).collect()).collect();
    let mut det = Exp::from_integer(1);
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else { return Exp::zero() };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                let t = f * a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det
}

/// Whether `{u | <v_i, u> + λ_i > 0}` is nonempty, by Fourier–Motzkin elimination.
fn interior_nonempty(rows: Vec<(Vec<Exp>, Exp)>) -> bool {
    let mut rows = rows;
    let n = rows.first().map_or(0, |r| r.0.len());
    for k in 0..n {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r.0[k].is_positive() {
                pos.push(r);
            } else if r.0[k].is_negative() {
                neg.push(r);
            } else {
                rest.push(r);
            }
        }
        for (p, pc) in &pos {
            for (q, qc) in &neg {
                let (a, b) = (p[k], -q[k]);
                let v: Vec<Exp> = p.iter().zip(q).map(|(x, y)| *x * b + *y * a).collect();
                rest.push((v, *pc * b + *qc * a));
            }
        }
        rows = rest;
    }
    rows.iter().all(|(_, c)| c.is_positive())
}

impl MomentPolytope {
    pub fn new(rays: Vec<Vec<i64>>, offsets: Vec<Exp>, basis: Vec<usize>) -> Result<MomentPolytope> {
        let n = basis.len();
        if rays.len() != offsets.len() {
            return Err(Error::invalid("one offset per ray is required"));
        }
        if rays.iter().any(|r| r.len() != n) {
            return Err(Error::invalid(format!("rays must have {n} coordinates")));
        }
        for r in &rays {
            let g = r.iter().fold(0i64, |g, x| g.gcd(x));
            if g != 1 {
                return Err(Error::invalid(format!("ray {r:?} is not primitive")));
            }
        }
        let mut sorted = basis.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != n || sorted.iter().any(|&i| i >= rays.len()) {
            return Err(Error::invalid("basis indices must be distinct rays"));
        }
        let m: Vec<Vec<i64>> = basis.iter().map(|&i| rays[i].clone()).collect();
        if det_int(&m).abs() != Exp::from_integer(1) {
            return Err(Error::invalid("basis rays are not unimodular"));
        }
        let p = MomentPolytope { rays, offsets, basis };
        let rows = p.rays.iter().zip(&p.offsets).map(|(r, l)| (r.iter().map(|&x| Exp::from_integer(x)).collect(), *l)).collect();
        if !interior_nonempty(rows) {
            return Err(Error::invalid("polytope has empty interior"));
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `a_i` with `v_i = Σ_j a_ij v_{basis j}`.
    pub fn expansion(&self, i: usize) -> Vec<i64> {
        let n = self.dim();
        let a: Vec<Vec<Exp>> = (0..n).map(|r| self.basis.iter().map(|&j| Exp::from_integer(self.rays[j][r])).collect()).collect();
        let b: Vec<Exp> = self.rays[i].iter().map(|&x| Exp::from_integer(x)).collect();
        let sol = solve_rational(a, b).expect("unimodular basis");
        sol.iter().map(|x| x.to_integer()).collect()
    }

    /// `ω_i = λ_i − Σ_j a_ij λ_{basis j}`.
    pub fn omega(&self, i: usize) -> Exp {
        let a = self.expansion(i);
        self.offsets[i] - a.iter().zip(&self.basis).map(|(k, &j)| Exp::from_integer(*k) * self.offsets[j]).sum::<Exp>()
    }

    /// `ℓ_i(u) = <v_i, u> + λ_i`.
    pub fn ell(&self, i: usize, u: &[Exp]) -> Exp {
        self.rays[i].iter().zip(u).map(|(x, y)| Exp::from_integer(*x) * y).sum::<Exp>() + self.offsets[i]
    }

    pub fn is_interior(&self, u: &[Exp]) -> bool {
        (0..self.rays.len()).all(|i| self.ell(i, u).is_positive())
    }

    /// Vertices in lexicographic order; their number is `dim H•(X)`.
    pub fn vertices(&self) -> Vec<Vec<Exp>> {
        let n = self.dim();
        let mut out: Vec<Vec<Exp>> = Vec::new();
        let mut pick = Vec::with_capacity(n);
        self.vertices_from(0, &mut pick, &mut out);
        out.sort();
        out.dedup();
        out
    }

    fn vertices_from(&self, start: usize, pick: &mut Vec<usize>, out: &mut Vec<Vec<Exp>>) {
        if pick.len() == self.dim() {
            let a = pick.iter().map(|&i| self.rays[i].iter().map(|&x| Exp::from_integer(x)).collect()).collect();
            let b = pick.iter().map(|&i| -self.offsets[i]).collect();
            if let Some(u) = solve_rational(a, b) {
                if (0..self.rays.len()).all(|i| !self.ell(i, &u).is_negative()) {
                    out.push(u);
                }
            }
            return;
        }
        for i in start..self.rays.len() {
            pick.push(i);
            self.vertices_from(i + 1, pick, out);
            pick.pop();
        }
    }
}

/// Polytope file: `ray <v_1> .. <v_n> <λ>` lines and one `basis <i_1> ..` line
/// (0-based ray indices); `#` starts a comment.
pub fn parse_polytope(text: &str) -> Result<MomentPolytope> {
    let (mut rays, mut offsets, mut basis) = (Vec::new(), Vec::new(), None);
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |column: usize, message: String| Error::Parse { line: ln + 1, column, message };
        let col = |word: &str| raw.find(word).map_or(1, |c| c + 1);
        let mut words = line.split_whitespace();
        match words.next() {
            Some("ray") => {
                let rest: Vec<&str> = words.collect();
                let (last, coords) = rest.split_last().ok_or_else(|| bad(1, "ray needs coordinates and an offset".into()))?;
                let v = coords
                    .iter()
                    .map(|w| w.parse::<i64>().map_err(|_| bad(col(w), format!("bad ray coordinate `{w}`"))))
                    .collect::<Result<Vec<_>>>()?;
                let l = parse_exp(last).map_err(|e| bad(col(last), e.to_string()))?;
                rays.push(v);
                offsets.push(l);
            }
            Some("basis") => {
                let v = words
                    .map(|w| w.parse::<usize>().map_err(|_| bad(col(w), format!("bad basis index `{w}`"))))
                    .collect::<Result<Vec<_>>>()?;
                basis = Some(v);
            }
            Some(w) => return Err(bad(col(w), format!("unknown record `{w}`"))),
            None => {}
        }
    }
    let n = rays.first().map_or(0, |r: &Vec<i64>| r.len());
    MomentPolytope::new(rays, offsets, basis.unwrap_or_else(|| (0..n).collect()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ToricPotential {
    pub w: LaurentPolynomial,
    pub omegas: Vec<Exp>,
    pub expansions: Vec<Vec<i64>>,
}

fn toric_vars(n: usize) -> Vec<String> {
    if n == 1 {
        vec!["y".into()]
    } else {
        (1..=n).map(|i| format!("y{i}")).collect()
    }
}

/// `W_X = Σ_i T^{ω_i} y^{a_i}`.
pub fn build_toric_potential(p: &MomentPolytope, cutoff: Exp) -> Result<ToricPotential> {
    let vars = toric_vars(p.dim());
    let mut w = LaurentPolynomial::zero(vars, cutoff);
    let (mut omegas, mut expansions) = (Vec::new(), Vec::new());
    for i in 0..p.rays.len() {
        let a = p.expansion(i);
        let om = p.omega(i);
        if om.is_negative() {
            return Err(Error::invalid(format!("ray {i} has negative energy {}", format_exp(&om))));
        }
        w.add_term(a.clone(), &Novikov::monomial(Coeff::one(), om, cutoff));
        omegas.push(om);
        expansions.push(a);
    }
    Ok(ToricPotential { w, omegas, expansions })
}

/// `W_{L_u}(y) = W_X(T^{ℓ_1(u)} y_1, .., T^{ℓ_n(u)} y_n)` over the basis rays.
pub fn fiber_potential(p: &MomentPolytope, w_x: &LaurentPolynomial, u: &[Exp]) -> Result<LaurentPolynomial> {
    if u.len() != p.dim() {
        return Err(Error::invalid("moment point has the wrong dimension"));
    }
    if !p.is_interior(u) {
        return Err(Error::invalid("moment point is not in the interior of P"));
    }
    let shifts: Vec<Exp> = p.basis.iter().map(|&j| p.ell(j, u)).collect();
    Ok(w_x.rescale(&shifts))
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentPoint {
    pub u: Vec<Exp>,
    /// `b_i = T^{-val c_i} c_i`.
    pub b: Vec<Novikov>,
}

/// The moment point with `ℓ_i(u) = val(c_i)` over the basis rays.
pub fn u_of_c(p: &MomentPolytope, c: &[Novikov]) -> Result<MomentPoint> {
    let n = p.dim();
    if c.len() != n {
        return Err(Error::invalid("point has the wrong dimension"));
    }
    let vals = c
        .iter()
        .map(|x| x.valuation().ok_or_else(|| Error::invalid("coordinate vanishes, so it has no valuation")))
        .collect::<Result<Vec<_>>>()?;
    let a: Vec<Vec<Exp>> = p.basis.iter().map(|&j| p.rays[j].iter().map(|&x| Exp::from_integer(x)).collect()).collect();
    let rhs: Vec<Exp> = p.basis.iter().zip(&vals).map(|(&j, v)| *v - p.offsets[j]).collect();
    let u = solve_rational(a, rhs).expect("unimodular basis");
    if !p.is_interior(&u) {
        let shown: Vec<String> = u.iter().map(format_exp).collect();
        return Err(Error::Hypothesis(format!("u(c) = ({}) is not in the interior of P", shown.join(", "))));
    }
    let b = c.iter().zip(&vals).map(|(x, v)| x.shift(-*v)).collect();
    Ok(MomentPoint { u, b })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MorseVerdict {
    pub count: usize,
    pub expected: usize,
    pub all_nondegenerate: bool,
    pub matches: bool,
}

pub fn morse_count_check(w_x: &LaurentPolynomial, expected_dim: usize, opts: &CritOptions) -> Result<MorseVerdict> {
    let set = critical_points(w_x, opts)?;
    let all_nondegenerate = set.all_nondegenerate();
    let count = set.points.len();
    Ok(MorseVerdict { count, expected: expected_dim, all_nondegenerate, matches: all_nondegenerate && count == expected_dim })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZetaVerdict {
    pub holds: bool,
    /// First term `y^a` with `W(ζ^k y)` and `ζ W(y)` disagreeing.
    pub violation: Option<Vec<i64>>,
}

/// A primitive `r`-th root of unity in `Q(√-1)` or `Q(√-3)`, or as a float.
pub fn root_of_unity(r: u32, eps: Option<f64>) -> Result<Coeff> {
    Ok(match r {
        1 => Coeff::one(),
        2 => Coeff::int(-1),
        3 => Coeff::quadratic(rat(-1, 2), rat(1, 2), -3),
        4 => Coeff::sqrt_of(-1),
        6 => Coeff::quadratic(rat(1, 2), rat(1, 2), -3),
        _ => match eps {
            Some(eps) => {
                let t = 2.0 * std::f64::consts::PI / r as f64;
                Coeff::float(t.cos(), t.sin(), eps)
            }
            None => return Err(Error::Unsupported(format!("ζ of order {r} is not exact; enable a float field"))),
        },
    })
}

/// `W(ζ^{k_1} y_1, .., ζ^{k_m} y_m) = ζ W(y)`, checked termwise.
pub fn zeta_symmetry_check(w: &LaurentPolynomial, r: u32, k: &[i64], eps: Option<f64>) -> Result<ZetaVerdict> {
    if r == 0 {
        return Err(Error::invalid("order of ζ must be positive"));
    }
    if k.len() != w.nvars() {
        return Err(Error::invalid("one weight per variable is required"));
    }
    let zeta = root_of_unity(r, eps)?;
    for (a, _) in w.coeffs() {
        let e: i64 = a.iter().zip(k).map(|(x, y)| x * y).sum();
        // w_a ζ^{k·a} = ζ w_a with w_a ≠ 0
        if zeta.pow(e.rem_euclid(r as i64))? != zeta {
            return Ok(ZetaVerdict { holds: false, violation: Some(a.clone()) });
        }
    }
    Ok(ZetaVerdict { holds: true, violation: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Exp {
        Exp::from_integer(n)
    }

    #[test]
    fn projective_line_potential() {
        let p = MomentPolytope::new(vec![vec![1], vec![-1]], vec![q(0), q(1)], vec![0]).unwrap();
        let t = build_toric_potential(&p, q(4)).unwrap();
        assert_eq!(t.omegas, vec![q(0), q(1)]);
        assert_eq!(t.w.coeff(&[-1]), Novikov::monomial(Coeff::one(), q(1), q(4)));
    }

    #[test]
    fn vertex_counts() {
        let cp2 = parse_polytope("ray 1 0 0\nray 0 1 0\nray -1 -1 1\n").unwrap();
        assert_eq!(cp2.vertices(), vec![vec![q(0), q(0)], vec![q(0), q(1)], vec![q(1), q(0)]]);
        let hexagon = "ray 1 0 1\nray 0 1 1\nray -1 0 1\nray 0 -1 1\nray 1 1 1\nray -1 -1 1\n";
        assert_eq!(parse_polytope(hexagon).unwrap().vertices().len(), 6);
    }

    #[test]
    fn rejects_bad_polytopes() {
        assert!(MomentPolytope::new(vec![vec![2], vec![-1]], vec![q(0), q(1)], vec![0]).is_err());
        assert!(MomentPolytope::new(vec![vec![1], vec![-1]], vec![q(0), q(0)], vec![0]).is_err());
        assert!(MomentPolytope::new(vec![vec![1, 1], vec![1, -1], vec![-1, 0]], vec![q(0), q(0), q(1)], vec![0, 1]).is_err());
    }

    #[test]
    fn polytope_file() {
        let text = "# CP2\nray 1 0 0\nray 0 1 0\nray -1 -1 1\nbasis 0 1\n";
        let p = parse_polytope(text).unwrap();
        assert_eq!(p.expansion(2), vec![-1, -1]);
        assert_eq!(p.omega(2), q(1));
        match parse_polytope("ray 1 x 0") {
            Err(Error::Parse { line: 1, column: 7, .. }) => {}
            other => panic!("{other:?}"),
        }
    }
}
