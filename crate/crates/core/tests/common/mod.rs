// Independent oracles shared by the integration tests. They use only the
// definitions, never the library's fast paths.
#![allow(dead_code, clippy::neg_cmp_op_on_partial_ord)]

use std::collections::BTreeSet;

/// Twice the signed area of (o, a, b).
pub fn orient(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn in_closed_triangle(p: (f64, f64), a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> bool {
    let (d1, d2, d3) = (orient(a, b, p), orient(b, c, p), orient(c, a, p));
    let neg = d1 < 0.0 || d2 < 0.0 || d3 < 0.0;
    let pos = d1 > 0.0 || d2 > 0.0 || d3 > 0.0;
    !(neg && pos)
}

/// Vertices of the hull of points in general position: a point is a vertex
/// iff no triangle of three other points contains it.
pub fn brute_force_vertices(pts: &[(f64, f64)]) -> BTreeSet<usize> {
    let n = pts.len();
    (0..n)
        .filter(|&i| {
            let others: Vec<usize> = (0..n).filter(|&k| k != i).collect();
            for (a, &ja) in others.iter().enumerate() {
                for (b, &jb) in others.iter().enumerate().skip(a + 1) {
                    for &jc in others.iter().skip(b + 1) {
                        if in_closed_triangle(pts[i], pts[ja], pts[jb], pts[jc]) {
                            return false;
                        }
                    }
                }
            }
            true
        })
        .collect()
}

/// The two-point event for the ordered pair (i, j) by orientation tests:
/// `P_i` up-left of `P_j` and every other point strictly right of the
/// directed segment `P_i -> P_j`.
pub fn pair_event(pts: &[(f64, f64)], i: usize, j: usize) -> bool {
    let (pi, pj) = (pts[i], pts[j]);
    pi.0 < pj.0
        && pi.1 > pj.1
        && (0..pts.len())
            .filter(|&k| k != i && k != j)
            .all(|k| orient(pi, pj, pts[k]) < 0.0)
}

/// Number of ordered pairs satisfying [`pair_event`]; equals the number of
/// positive-normal hull edges for points in general position.
pub fn positive_edge_count(pts: &[(f64, f64)]) -> usize {
    let n = pts.len();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && pair_event(pts, i, j))
        .count()
}

fn det2(m: &[[f64; 2]; 2]) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Equalizer `p` with `M p = v 1`, `sum p = 1`, by Cramer's rule applied to
/// `M x = 1` (then `p = x / sum x`). `None` when singular.
pub fn equalizer(m: &[Vec<f64>]) -> Option<Vec<f64>> {
    let l = m.len();
    let x: Vec<f64> = match l {
        1 => vec![1.0],
        2 => {
            let a = [[m[0][0], m[0][1]], [m[1][0], m[1][1]]];
            let d = det2(&a);
            if d == 0.0 {
                return None;
            }
            (0..2)
                .map(|c| {
                    let mut t = a;
                    t[0][c] = 1.0;
                    t[1][c] = 1.0;
                    det2(&t) / d
                })
                .collect()
        }
        3 => {
            let mut a = [[0.0; 3]; 3];
            for r in 0..3 {
                for c in 0..3 {
                    a[r][c] = m[r][c];
                }
            }
            let d = det3(&a);
            if d == 0.0 {
                return None;
            }
            (0..3)
                .map(|c| {
                    let mut t = a;
                    for row in t.iter_mut() {
                        row[c] = 1.0;
                    }
                    det3(&t) / d
                })
                .collect()
        }
        _ => unimplemented!("oracle covers supports up to 3"),
    };
    let s: f64 = x.iter().sum();
    if s == 0.0 || !s.is_finite() {
        return None;
    }
    Some(x.iter().map(|v| v / s).collect())
}

/// Barycentric grid on the simplex of dimension `l - 1`, `res` steps per
/// edge (l = 2 gives `res + 1` points).
pub fn simplex_grid(l: usize, res: usize) -> Vec<Vec<f64>> {
    let r = res as f64;
    match l {
        2 => (0..=res).map(|a| vec![a as f64 / r, 1.0 - a as f64 / r]).collect(),
        3 => (0..=res)
            .flat_map(|a| (0..=res - a).map(move |b| (a, b)))
            .map(|(a, b)| vec![a as f64 / r, b as f64 / r, (res - a - b) as f64 / r])
            .collect(),
        _ => unimplemented!("oracle covers supports up to 3"),
    }
}

fn bilinear(m: &[Vec<f64>], p: &[f64], q: &[f64]) -> f64 {
    let mut s = 0.0;
    for (i, pi) in p.iter().enumerate() {
        for (j, qj) in q.iter().enumerate() {
            s += pi * qj * m[i][j];
        }
    }
    s
}

/// Definition-level ESS test for the mix supported on `support` of the full
/// matrix `r` (row = reply, column = context). Best-reply condition against
/// every pure invader, then stability against a grid of invaders on the
/// support simplex.
pub fn oracle_certifies(r: &[Vec<f64>], support: &[usize], grid_res: usize) -> bool {
    let n = r.len();
    let l = support.len();
    let m: Vec<Vec<f64>> = support
        .iter()
        .map(|&i| support.iter().map(|&j| r[i][j]).collect())
        .collect();
    if l == 1 {
        let i = support[0];
        return (0..n).all(|k| k == i || r[k][i] < r[i][i]);
    }
    let Some(p) = equalizer(&m) else {
        return false;
    };
    if p.iter().any(|&w| !(w > 0.0)) {
        return false;
    }
    // payoff of each pure reply against p
    let reply = |k: usize| support.iter().zip(&p).map(|(&j, w)| w * r[k][j]).sum::<f64>();
    let v = bilinear(&m, &p, &p);
    if (0..n).any(|k| !support.contains(&k) && reply(k) >= v) {
        return false;
    }
    simplex_grid(l, grid_res).into_iter().all(|q| {
        let dist: f64 = q.iter().zip(&p).map(|(a, b)| (a - b).abs()).sum();
        dist < 1e-9 || bilinear(&m, &q, &q) < bilinear(&m, &p, &q)
    })
}

/// Every support of size up to 3 the oracle certifies.
pub fn oracle_supports(r: &[Vec<f64>], grid_res: usize) -> BTreeSet<Vec<usize>> {
    let n = r.len();
    let mut out = BTreeSet::new();
    for i in 0..n {
        if oracle_certifies(r, &[i], grid_res) {
            out.insert(vec![i]);
        }
        for j in i + 1..n {
            if oracle_certifies(r, &[i, j], grid_res) {
                out.insert(vec![i, j]);
            }
            for k in j + 1..n {
                if oracle_certifies(r, &[i, j, k], grid_res) {
                    out.insert(vec![i, j, k]);
                }
            }
        }
    }
    out
}

/// Analytic means of the laws that have one.
pub fn analytic_mean(token: &str) -> Option<f64> {
    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
    Some(match token {
        "exp" => 1.0,
        "normal" | "logistic" | "sym(exp)" | "sym(weibull:2)" => 0.0,
        "uniform" => 0.5,
        "lognormal" => 0.5f64.exp(),
        "expexp" => -EULER_GAMMA,
        "weibull:2" => std::f64::consts::PI.sqrt() / 2.0,
        "weibull:0.5" => 2.0,
        "pareto:3" => 1.5,
        _ => return None,
    })
}
