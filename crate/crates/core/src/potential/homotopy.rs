//! Complex solutions in the torus of a square Laurent system, by
//! total-degree homotopy continuation.

use num_complex::Complex64;

type C = Complex64;

/// A Laurent polynomial with complex coefficients.
#[derive(Clone, Debug)]
pub(crate) struct CPoly {
    pub terms: Vec<(Vec<i64>, C)>,
}

impl CPoly {
    fn shifted_to_polynomial(&self) -> CPoly {
        let n = self.terms.first().map_or(0, |t| t.0.len());
        let low: Vec<i64> = (0..n).map(|i| self.terms.iter().map(|t| t.0[i]).min().unwrap_or(0)).collect();
        CPoly {
            terms: self.terms.iter().map(|(a, c)| (a.iter().zip(&low).map(|(x, l)| x - l).collect(), *c)).collect(),
        }
    }

    fn degree(&self) -> i64 {
        self.terms.iter().map(|(a, _)| a.iter().sum::<i64>()).max().unwrap_or(0)
    }

    fn eval(&self, x: &[C]) -> C {
        self.terms.iter().map(|(a, c)| c * monomial(x, a)).sum()
    }

    fn gradient(&self, x: &[C]) -> Vec<C> {
        let n = x.len();
        let mut g = vec![C::new(0.0, 0.0); n];
        for (a, c) in &self.terms {
            for i in 0..n {
                if a[i] != 0 {
                    let mut b = a.clone();
                    b[i] -= 1;
                    g[i] += c * a[i] as f64 * monomial(x, &b);
                }
            }
        }
        g
    }
}

fn monomial(x: &[C], a: &[i64]) -> C {
    let mut m = C::new(1.0, 0.0);
    for (xi, &k) in x.iter().zip(a) {
        if k != 0 {
            m *= xi.powi(k as i32);
        }
    }
    m
}

fn norm(v: &[C]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Solves `A x = b` by partial pivoting; `None` if numerically singular.
pub(crate) fn solve(a: &[Vec<C>], b: &[C]) -> Option<Vec<C>> {
    let n = b.len();
    let mut m: Vec<Vec<C>> = a.iter().zip(b).map(|(r, x)| r.iter().copied().chain([*x]).collect()).collect();
    let scale = a.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| m[i][col].norm().total_cmp(&m[j][col].norm()))?;
        if m[p][col].norm() <= 1e-14 * scale {
            return None;
        }
        m.swap(p, col);
        for r in 0..n {
            if r != col {
                let f = m[r][col] / m[col][col];
                for c in col..=n {
                    let t = f * m[col][c];
                    m[r][c] -= t;
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

/// Smallest singular value proxy: `1 / ‖J⁻¹‖_∞`, from solves against unit vectors.
pub(crate) fn conditioning(j: &[Vec<C>]) -> f64 {
    let n = j.len();
    let mut worst: f64 = 0.0;
    for k in 0..n {
        let mut e = vec![C::new(0.0, 0.0); n];
        e[k] = C::new(1.0, 0.0);
        match solve(j, &e) {
            Some(x) => worst = worst.max(norm(&x)),
            None => return 0.0,
        }
    }
    1.0 / worst
}

pub(crate) struct System {
    pub eqs: Vec<CPoly>,
}

impl System {
    pub fn eval(&self, x: &[C]) -> Vec<C> {
        self.eqs.iter().map(|p| p.eval(x)).collect()
    }

    pub fn jacobian(&self, x: &[C]) -> Vec<Vec<C>> {
        self.eqs.iter().map(|p| p.gradient(x)).collect()
    }

    /// Newton's method; returns the point and whether it converged.
    pub fn newton(&self, x0: &[C], iters: usize, tol: f64) -> (Vec<C>, bool) {
        let mut x = x0.to_vec();
        for _ in 0..iters {
            let f = self.eval(&x);
            let Some(dx) = solve(&self.jacobian(&x), &f) else { return (x, false) };
            for (xi, d) in x.iter_mut().zip(&dx) {
                *xi -= d;
            }
            if norm(&dx) <= tol * (1.0 + norm(&x)) {
                return (x, true);
            }
        }
        let ok = norm(&self.eval(&x)) <= tol.sqrt();
        (x, ok)
    }
}

/// `H(x, t) = (1 - t) γ G(x) + t F(x)` with `G_i = x_i^{d_i} - 1`.
struct Homotopy<'a> {
    target: &'a System,
    degrees: Vec<i64>,
    gamma: C,
}

impl Homotopy<'_> {
    fn start(&self, i: usize, x: &[C]) -> (C, Vec<C>) {
        let d = self.degrees[i];
        let n = x.len();
        let mut g = vec![C::new(0.0, 0.0); n];
        g[i] = x[i].powi(d as i32 - 1) * d as f64;
        (x[i].powi(d as i32) - 1.0, g)
    }

    fn eval(&self, x: &[C], t: f64) -> Vec<C> {
        (0..x.len())
            .map(|i| (1.0 - t) * self.gamma * self.start(i, x).0 + t * self.target.eqs[i].eval(x))
            .collect()
    }

    fn jac(&self, x: &[C], t: f64) -> Vec<Vec<C>> {
        (0..x.len())
            .map(|i| {
                let gs = self.start(i, x).1;
                let fs = self.target.eqs[i].gradient(x);
                gs.iter().zip(&fs).map(|(g, f)| (1.0 - t) * self.gamma * g + t * f).collect()
            })
            .collect()
    }

    fn dt(&self, x: &[C]) -> Vec<C> {
        (0..x.len()).map(|i| self.target.eqs[i].eval(x) - self.gamma * self.start(i, x).0).collect()
    }

    fn tangent(&self, x: &[C], t: f64) -> Option<Vec<C>> {
        let rhs: Vec<C> = self.dt(x).iter().map(|z| -z).collect();
        solve(&self.jac(x, t), &rhs)
    }

    /// Newton at fixed `t`; rejects the step unless corrections contract fast.
    fn correct(&self, x: &mut Vec<C>, t: f64) -> bool {
        let mut prev = f64::INFINITY;
        for k in 0..6 {
            let f = self.eval(x, t);
            let Some(dx) = solve(&self.jac(x, t), &f) else { return false };
            let size = norm(&dx);
            let scale = 1.0 + norm(x);
            if (k == 0 && size > 1e-3 * scale) || size > 0.25 * prev {
                return false;
            }
            for (xi, d) in x.iter_mut().zip(&dx) {
                *xi -= d;
            }
            if size <= 1e-11 * scale {
                return true;
            }
            prev = size;
        }
        false
    }

    fn track(&self, mut x: Vec<C>) -> Option<Vec<C>> {
        let mut t: f64 = 0.0;
        let mut h: f64 = 0.02;
        let mut steps = 0;
        while t < 1.0 {
            steps += 1;
            if norm(&x) > 1e9 {
                return None;
            }
            if steps > 20000 || h < 1e-13 {
                // paths into singular roots stall just short of t = 1
                return (1.0 - t < 1e-3).then_some(x);
            }
            let step = h.min(1.0 - t);
            // fourth-order Runge-Kutta predictor along dx/dt
            let k1 = self.tangent(&x, t);
            let pred = k1.and_then(|k1| {
                let mid = |k: &[C], s: f64| x.iter().zip(k).map(|(a, b)| a + b * s).collect::<Vec<_>>();
                let k2 = self.tangent(&mid(&k1, step / 2.0), t + step / 2.0)?;
                let k3 = self.tangent(&mid(&k2, step / 2.0), t + step / 2.0)?;
                let k4 = self.tangent(&mid(&k3, step), t + step)?;
                Some(
                    (0..x.len())
                        .map(|i| x[i] + (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (step / 6.0))
                        .collect::<Vec<_>>(),
                )
            });
            let accepted = pred.and_then(|mut y| {
                let close = self.correct(&mut y, t + step)
                    && norm(&y.iter().zip(&x).map(|(a, b)| a - b).collect::<Vec<_>>()) < 0.5 * (1.0 + norm(&x));
                close.then_some(y)
            });
            match accepted {
                Some(y) => {
                    x = y;
                    t += step;
                    h = (h * 1.6).min(0.05);
                }
                None => h /= 2.0,
            }
        }
        Some(x)
    }
}

/// Endpoint of a homotopy path at `t = 1`.
#[derive(Clone, Debug)]
pub(crate) struct Root {
    pub x: Vec<C>,
    /// Reciprocal norm of the inverse Jacobian; near 0 for singular roots.
    pub conditioning: f64,
}

/// All isolated solutions in `(C^*)^n` found by tracking the `Π d_i` paths.
pub(crate) fn torus_solutions(eqs: Vec<CPoly>) -> Vec<Root> {
    let n = eqs.len();
    let target = System { eqs: eqs.iter().map(|p| p.shifted_to_polynomial()).collect() };
    let degrees: Vec<i64> = target.eqs.iter().map(|p| p.degree().max(1)).collect();
    let h = Homotopy { target: &target, degrees: degrees.clone(), gamma: C::from_polar(1.0, 2.0943951 * 0.618034 + 0.3) };
    let mut starts: Vec<Vec<C>> = vec![vec![]];
    for &d in &degrees {
        let roots: Vec<C> = (0..d).map(|k| C::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / d as f64)).collect();
        starts = starts.into_iter().flat_map(|s| roots.iter().map(move |r| [s.clone(), vec![*r]].concat())).collect();
    }
    let original = System { eqs };
    let mut out: Vec<Root> = Vec::new();
    for s in starts {
        let Some(end) = h.track(s) else { continue };
        let (x, ok) = original.newton(&end, 60, 1e-14);
        if !ok || x.iter().any(|z| z.norm() < 1e-7 || !z.re.is_finite() || !z.im.is_finite()) {
            continue;
        }
        let cond = conditioning(&original.jacobian(&x));
        let scale = 1e-6 * (1.0 + norm(&x));
        if out.iter().any(|r| norm(&r.x.iter().zip(&x).map(|(a, b)| a - b).collect::<Vec<_>>()) < scale) {
            continue;
        }
        debug_assert_eq!(x.len(), n);
        out.push(Root { x, conditioning: cond });
    }
    out
}
