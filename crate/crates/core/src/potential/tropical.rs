use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::novikov::Exp;

/// Solves a square rational system exactly; `None` if singular.
pub(crate) fn solve_rational(mut a: Vec<Vec<Exp>>, mut b: Vec<Exp>) -> Option<Vec<Exp>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        b.swap(p, col);
        let inv = Exp::from_integer(1) / a[col][col];
        for c in col..n {
            a[col][c] *= inv;
        }
        b[col] *= inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in col..n {
                    let t = f * a[col][c];
                    a[r][c] -= t;
                }
                let t = f * b[col];
                b[r] -= t;
            }
        }
    }
    Some(b)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Valuation vectors `v` whose initial face of the lifted support
/// `{(a, e_a)}` is full-dimensional, i.e. the lower facets.
pub fn lower_facets(points: &[(Vec<i64>, Exp)]) -> Vec<Vec<Exp>> {
    let Some(n) = points.first().map(|p| p.0.len()) else { return Vec::new() };
    let mut found = BTreeSet::new();
    for s in subsets(points.len(), n + 1) {
        // e_a + a·v = m on the chosen points
        let a: Vec<Vec<Exp>> = s
            .iter()
            .map(|&i| points[i].0.iter().map(|&x| Exp::from_integer(x)).chain([Exp::from_integer(-1)]).collect())
            .collect();
        let b: Vec<Exp> = s.iter().map(|&i| -points[i].1).collect();
        let Some(sol) = solve_rational(a, b) else { continue };
        let (v, m) = (&sol[..n], sol[n]);
        let lower = points.iter().all(|(a, e)| {
            let h: Exp = *e + a.iter().zip(v).map(|(x, y)| Exp::from_integer(*x) * y).sum::<Exp>();
            !(h - m).is_negative()
        });
        if lower {
            found.insert(v.to_vec());
        }
    }
    found.into_iter().collect()
}

fn attains_min_twice(points: &[(Vec<i64>, Exp)], v: &[Exp]) -> bool {
    let heights: Vec<Exp> =
        points.iter().map(|(a, e)| *e + a.iter().zip(v).map(|(x, y)| Exp::from_integer(*x) * y).sum::<Exp>()).collect();
    let Some(m) = heights.iter().min() else { return false };
    heights.iter().filter(|h| *h == m).count() >= 2
}

/// Vertices of the intersection of the tropical hypersurfaces of `n`
/// Laurent polynomials in `n` variables, given by their lifted supports:
/// points `v` where each minimum of `e_a + <a, v>` is attained twice and one
/// chosen pair per equation pins `v` down.
pub fn prevariety_vertices(eqs: &[Vec<(Vec<i64>, Exp)>]) -> Vec<Vec<Exp>> {
    let n = eqs.len();
    let pairs: Vec<Vec<Vec<usize>>> = eqs.iter().map(|e| subsets(e.len(), 2)).collect();
    let mut found = BTreeSet::new();
    let mut choice = vec![0usize; n];
    if pairs.iter().any(|p| p.is_empty()) {
        return Vec::new();
    }
    loop {
        // e_a + <a, v> = e_b + <b, v>
        let (a, b): (Vec<Vec<Exp>>, Vec<Exp>) = (0..n)
            .map(|i| {
                let (p, q) = (&eqs[i][pairs[i][choice[i]][0]], &eqs[i][pairs[i][choice[i]][1]]);
                (p.0.iter().zip(&q.0).map(|(x, y)| Exp::from_integer(x - y)).collect(), q.1 - p.1)
            })
            .unzip();
        if let Some(v) = solve_rational(a, b) {
            if eqs.iter().all(|e| attains_min_twice(e, &v)) {
                found.insert(v);
            }
        }
        let mut k = 0;
        loop {
            if k == n {
                return found.into_iter().collect();
            }
            choice[k] += 1;
            if choice[k] < pairs[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Dimension of the affine span of integer points.
pub fn affine_dimension(points: &[Vec<i64>]) -> usize {
    let Some(base) = points.first() else { return 0 };
    let mut rows: Vec<Vec<Exp>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(x, y)| Exp::from_integer(x - y)).collect())
        .collect();
    let mut rank = 0;
    let ncols = base.len();
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(p, rank);
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col] / rows[rank][col];
                for c in col..ncols {
                    let t = f * rows[rank][c];
                    rows[r][c] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}
