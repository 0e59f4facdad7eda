//! Convex hulls of planar point samples and the two-point event.
//!
//! For a game matrix, columns `i` and `j` give `n` points
//! `P_k = (R(k,i), R(k,j))`; strategies `i`, `j` carry a two-point ESS iff
//! `P_i P_j` is a hull edge with an outward normal that is strictly
//! positive in both coordinates. This module works with point clouds
//! directly.

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::rng::Stream;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Self { x, y }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointSample {
    points: Vec<Point>,
}

impl PointSample {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "need at least 2 points, got {}",
                points.len()
            )));
        }
        if points.iter().any(|p| !(p.x.is_finite() && p.y.is_finite())) {
            return Err(Error::InvalidParameter("non-finite coordinate".into()));
        }
        Ok(Self { points })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().copied().map(Point::from).collect())
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Applies `fx` to every x and `fy` to every y.
    pub fn map(&self, fx: impl Fn(f64) -> f64, fy: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(
            self.points
                .iter()
                .map(|p| Point::new(fx(p.x), fy(p.y)))
                .collect(),
        )
    }

    /// Indices of the points not dominated (weakly in both coordinates,
    /// strictly in one) by any other point.
    pub fn pareto_maximal(&self) -> Vec<usize> {
        let pts = &self.points;
        (0..pts.len())
            .filter(|&i| {
                !pts.iter().enumerate().any(|(k, q)| {
                    k != i
                        && q.x >= pts[i].x
                        && q.y >= pts[i].y
                        && (q.x > pts[i].x || q.y > pts[i].y)
                })
            })
            .collect()
    }
}

/// Hull of a sample: counterclockwise vertex cycle plus its counts.
#[derive(Debug, Clone, PartialEq)]
pub struct HullStats {
    /// Vertex indices into the sample, counterclockwise, starting from the
    /// lexicographically smallest point.
    pub hull: Vec<usize>,
    pub v: usize,
    /// Edges with outward normal strictly positive in both coordinates;
    /// `None` until counted.
    pub v0: Option<usize>,
}

impl HullStats {
    /// Hull plus positive-normal edge count.
    pub fn compute(sample: &PointSample) -> Self {
        let mut h = convex_hull(sample);
        h.v0 = Some(count_positive_normal_edges(&h, sample));
        h
    }
}

#[inline]
fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// `n` points, drawing x then y for each point.
pub fn sample_points(n: usize, spec: &DistributionSpec, stream: &mut Stream) -> Result<PointSample> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    let points = (0..n)
        .map(|_| {
            let x = spec.sample(stream);
            let y = spec.sample(stream);
            Point::new(x, y)
        })
        .collect();
    Ok(PointSample { points })
}

/// Andrew's monotone chain. Duplicate points collapse to their first index;
/// points in the interior of an edge are dropped. If every point coincides
/// the hull is that single point.
pub fn convex_hull(sample: &PointSample) -> HullStats {
    let pts = &sample.points;
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| {
        pts[a]
            .x
            .total_cmp(&pts[b].x)
            .then(pts[a].y.total_cmp(&pts[b].y))
            .then(a.cmp(&b))
    });
    order.dedup_by(|b, a| pts[*a] == pts[*b]);

    if order.len() == 1 {
        return HullStats {
            hull: order,
            v: 1,
            v0: None,
        };
    }

    let mut chain: Vec<usize> = Vec::with_capacity(2 * order.len());
    for pass in [&order[..], &order.iter().rev().copied().collect::<Vec<_>>()[..]] {
        let base = chain.len();
        for &i in pass {
            while chain.len() >= base + 2
                && cross(pts[chain[chain.len() - 2]], pts[chain[chain.len() - 1]], pts[i]) <= 0.0
            {
                chain.pop();
            }
            chain.push(i);
        }
        chain.pop();
    }
    let v = chain.len();
    HullStats {
        hull: chain,
        v,
        v0: None,
    }
}

/// Counts counterclockwise hull edges whose direction `(dx, dy)` has
/// `dx < 0` and `dy > 0`, i.e. whose outward normal `(dy, -dx)` is strictly
/// positive. Axis-parallel edges never count.
pub fn count_positive_normal_edges(hull: &HullStats, sample: &PointSample) -> usize {
    let h = &hull.hull;
    if h.len() < 2 {
        return 0;
    }
    let pts = &sample.points;
    (0..h.len())
        .filter(|&k| {
            let a = pts[h[k]];
            let b = pts[h[(k + 1) % h.len()]];
            b.x - a.x < 0.0 && b.y - a.y > 0.0
        })
        .count()
}

/// Coefficients of `A x + B y = C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl LineCoeffs {
    #[inline]
    pub fn eval(&self, p: Point) -> f64 {
        self.a * p.x + self.b * p.y
    }
}

/// `A = y1 - y2`, `B = x2 - x1`, `C = x2 y1 - x1 y2`.
pub fn line_through_pair(p1: Point, p2: Point) -> Result<LineCoeffs> {
    if p1 == p2 {
        return Err(Error::InvalidParameter(format!(
            "line through coincident points {p1:?}"
        )));
    }
    Ok(line_unchecked(p1, p2))
}

#[inline]
fn line_unchecked(p1: Point, p2: Point) -> LineCoeffs {
    LineCoeffs {
        a: p1.y - p2.y,
        b: p2.x - p1.x,
        c: p2.x * p1.y - p1.x * p2.y,
    }
}

/// Points 0 and 1 satisfy `x0 < x1`, `y0 > y1`, and every other point lies
/// strictly below the line through them.
pub fn gamma_indicator(sample: &PointSample) -> bool {
    let pts = &sample.points;
    let (p1, p2) = (pts[0], pts[1]);
    if !(p1.x < p2.x && p1.y > p2.y) {
        return false;
    }
    let line = line_unchecked(p1, p2);
    pts[2..].iter().all(|&p| line.eval(p) < line.c)
}

/// Gauss-Legendre rule on `[0, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// `points`-node rule, nodes found by Newton iteration on `P_n`.
    pub fn new(points: usize) -> Self {
        let n = points;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            // map [-1, 1] to [0, 1]
            nodes[i] = 0.5 * (1.0 - x);
            nodes[n - 1 - i] = 0.5 * (1.0 + x);
            weights[i] = 0.5 * w;
            weights[n - 1 - i] = 0.5 * w;
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integral of `f` over `[lo, hi]`.
    pub fn integrate(&self, lo: f64, hi: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let w = hi - lo;
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&s, &ws)| ws * f(lo + w * s))
            .sum::<f64>()
            * w
    }
}

pub const DEFAULT_QUAD_POINTS: usize = 256;
pub const MIN_QUAD_POINTS: usize = 8;

/// Evaluator for the probability that a fresh point lies strictly above the
/// line through two points, with quantiles at the quadrature nodes cached
/// for one law.
///
/// `U = int_0^1 survival((C - B Q(s)) / A) ds`, split at `s = 1 - 1/N` so the
/// last panel, where heavy-tailed quantiles blow up, gets its own `N` nodes.
#[derive(Debug, Clone)]
pub struct UStatistic {
    spec: DistributionSpec,
    /// (quantile at node, weight including panel width)
    table: Vec<(f64, f64)>,
}

impl UStatistic {
    pub fn new(spec: DistributionSpec, quad_points: usize) -> Result<Self> {
        if quad_points < MIN_QUAD_POINTS {
            return Err(Error::InvalidParameter(format!(
                "quad_points must be >= {MIN_QUAD_POINTS}, got {quad_points}"
            )));
        }
        let rule = GaussLegendre::new(quad_points);
        let split = 1.0 - 1.0 / quad_points as f64;
        let mut table = Vec::with_capacity(2 * quad_points);
        for (lo, hi) in [(0.0, split), (split, 1.0)] {
            for (&s, &w) in rule.nodes().iter().zip(rule.weights()) {
                let u = lo + (hi - lo) * s;
                table.push((spec.quantile_unchecked(u), w * (hi - lo)));
            }
        }
        Ok(Self { spec, table })
    }

    pub fn spec(&self) -> &DistributionSpec {
        &self.spec
    }

    /// `U` for the pair; 1 unless `x1 < x2` and `y1 > y2`.
    pub fn eval(&self, p1: Point, p2: Point) -> f64 {
        if !(p1.x < p2.x && p1.y > p2.y) {
            return 1.0;
        }
        let line = line_unchecked(p1, p2);
        let u: f64 = self
            .table
            .iter()
            .map(|&(q, w)| w * self.spec.survival((line.c - line.b * q) / line.a))
            .sum();
        u.clamp(0.0, 1.0)
    }
}

/// One-shot form of [`UStatistic::eval`].
pub fn u_statistic(p1: Point, p2: Point, spec: &DistributionSpec, quad_points: usize) -> Result<f64> {
    Ok(UStatistic::new(*spec, quad_points)?.eval(p1, p2))
}
