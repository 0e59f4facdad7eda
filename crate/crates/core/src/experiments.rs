//! Seeded, trial-parallel Monte Carlo estimators.
//!
//! Trial `t` of a plan draws from `Stream::for_trial(master_seed, t)`.
//! Per-trial outcomes are collected in trial order and reduced
//! sequentially, so every aggregate is bit-identical for any worker count.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::game::{census, generate_game, GameMatrix};
use crate::hull::{sample_points, HullStats, Point, UStatistic, DEFAULT_QUAD_POINTS};
use crate::rng::Stream;
use crate::stats::{
    binomial_pmf, chi_square, empirical_pmf, poisson_fit, ChiSquare, PoissonFit, SummaryStats,
};

/// One experiment cell: a law, a size, and how many seeded trials to run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialPlan {
    pub spec: DistributionSpec,
    pub n: usize,
    pub trials: usize,
    pub master_seed: u64,
    /// Largest ESS support size counted (1..=3); ignored by non-ESS runs.
    pub max_support: usize,
}

impl TrialPlan {
    pub fn new(spec: DistributionSpec, n: usize, trials: usize, master_seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be >= 1".into()));
        }
        if trials == 0 {
            return Err(Error::InvalidParameter("trials must be >= 1".into()));
        }
        Ok(Self {
            spec,
            n,
            trials,
            master_seed,
            max_support: 2,
        })
    }

    pub fn with_max_support(mut self, max_support: usize) -> Result<Self> {
        if !(1..=3).contains(&max_support) {
            return Err(Error::InvalidParameter(format!(
                "max_support must be 1, 2 or 3, got {max_support}"
            )));
        }
        self.max_support = max_support;
        Ok(self)
    }

    fn require_n(&self, min: usize, what: &str) -> Result<()> {
        if self.n < min {
            return Err(Error::InvalidParameter(format!(
                "{what} needs n >= {min}, got {}",
                self.n
            )));
        }
        Ok(())
    }

    /// Number of trials on which `f` holds. Integer counting keeps the
    /// result independent of scheduling without storing per-trial values.
    fn count_trials(&self, f: impl Fn(&mut Stream) -> bool + Sync) -> SummaryStats {
        let seed = self.master_seed;
        let hits = (0..self.trials as u64)
            .into_par_iter()
            .filter(|&t| f(&mut Stream::for_trial(seed, t)))
            .count();
        SummaryStats::from_successes(hits as u64, self.trials as u64)
    }

    /// Runs `f` once per trial on its own stream; results in trial order.
    fn map_trials<T: Send>(&self, f: impl Fn(&mut Stream) -> T + Sync) -> Vec<T> {
        let seed = self.master_seed;
        (0..self.trials as u64)
            .into_par_iter()
            .map(|t| f(&mut Stream::for_trial(seed, t)))
            .collect()
    }
}

/// Runs `f` on a dedicated pool of `threads` workers.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// ESS counts of one random game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssTrial {
    pub s1: u32,
    pub s2: u32,
    pub s3: u32,
    /// Ordered pairs of distinct two-point ESS sharing a strategy:
    /// `sum_i d_i (d_i - 1)` with `d_i` the two-point ESS containing `i`.
    pub shared_pairs: u64,
}

/// Per-trial ESS counts for one plan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EssRun {
    pub plan: TrialPlan,
    pub trials: Vec<EssTrial>,
}

fn ess_trial(plan: &TrialPlan, stream: &mut Stream) -> EssTrial {
    let r = if plan.n == 1 {
        GameMatrix::from_row_major(1, &[plan.spec.sample(stream)])
    } else {
        generate_game(plan.n, &plan.spec, stream)
    }
    .expect("plan validated");
    let c = census(&r, plan.max_support).expect("plan validated");
    let mut degree = vec![0u64; plan.n];
    for rec in c.records.iter().filter(|r| r.support().len() == 2) {
        for &i in rec.support() {
            degree[i] += 1;
        }
    }
    EssTrial {
        s1: c.count(1) as u32,
        s2: c.count(2) as u32,
        s3: c.count(3) as u32,
        shared_pairs: degree.iter().map(|d| d * d.saturating_sub(1)).sum(),
    }
}

impl EssRun {
    /// Generates `plan.trials` games and counts their ESS.
    pub fn run(plan: &TrialPlan) -> Result<Self> {
        let trials = plan.map_trials(|s| ess_trial(plan, s));
        Ok(Self {
            plan: *plan,
            trials,
        })
    }

    /// Mean of `S_l`.
    pub fn mean_s(&self, support_size: usize) -> SummaryStats {
        SummaryStats::from_counts(self.trials.iter().map(|t| match support_size {
            1 => t.s1,
            2 => t.s2,
            3 => t.s3,
            _ => 0,
        }))
    }

    /// `mu_n`, the mean number of two-point ESS.
    pub fn mu(&self) -> SummaryStats {
        self.mean_s(2)
    }

    pub fn s1_pmf(&self) -> BTreeMap<usize, f64> {
        empirical_pmf(&self.trials.iter().map(|t| t.s1).collect::<Vec<_>>())
    }

    pub fn s2_pmf(&self) -> BTreeMap<usize, f64> {
        empirical_pmf(&self.trials.iter().map(|t| t.s2).collect::<Vec<_>>())
    }

    pub fn existence(&self) -> ExistenceReport {
        let t = &self.trials;
        ExistenceReport {
            p_pure: SummaryStats::from_bools(t.iter().map(|t| t.s1 > 0)),
            p_two_point: SummaryStats::from_bools(t.iter().map(|t| t.s2 > 0)),
            p_le2: SummaryStats::from_bools(t.iter().map(|t| t.s1 + t.s2 > 0)),
        }
    }

    /// Empirical `S_2` law against `Poisson(lambda)`.
    pub fn s2_poisson_fit(&self, lambda: f64) -> Result<PoissonFit> {
        poisson_fit(&self.s2_pmf(), lambda)
    }
}

/// Mean number of two-point ESS.
pub fn estimate_mu(plan: &TrialPlan) -> Result<SummaryStats> {
    plan.require_n(2, "estimate_mu")?;
    let plan = TrialPlan {
        max_support: plan.max_support.max(2),
        ..*plan
    };
    Ok(EssRun::run(&plan)?.mu())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExistenceReport {
    /// P(S_1 > 0)
    pub p_pure: SummaryStats,
    /// P(S_2 > 0)
    pub p_two_point: SummaryStats,
    /// P(S_1 + S_2 > 0)
    pub p_le2: SummaryStats,
}

pub fn existence_experiment(plan: &TrialPlan) -> Result<ExistenceReport> {
    plan.require_n(2, "existence_experiment")?;
    let plan = TrialPlan {
        max_support: plan.max_support.max(2),
        ..*plan
    };
    Ok(EssRun::run(&plan)?.existence())
}

/// Empirical law of the pure-ESS count against `Binomial(n, 1/n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct S1Report {
    pub mean: SummaryStats,
    pub empirical_pmf: BTreeMap<usize, f64>,
    pub binomial_pmf: Vec<f64>,
    pub l1_distance: f64,
    /// `None` when too few categories have enough expected mass (n = 1).
    pub chi_square: Option<ChiSquare>,
}

pub fn s1_distribution(plan: &TrialPlan) -> Result<S1Report> {
    let plan = TrialPlan {
        max_support: 1,
        ..*plan
    };
    let run = EssRun::run(&plan)?;
    let n = plan.n as u64;
    let expected = binomial_pmf(n, 1.0 / n as f64)?;
    let pmf = run.s1_pmf();
    let l1 = expected
        .iter()
        .enumerate()
        .map(|(k, q)| (pmf.get(&k).copied().unwrap_or(0.0) - q).abs())
        .sum::<f64>()
        + pmf
            .iter()
            .filter(|(&k, _)| k as u64 > n)
            .map(|(_, p)| p)
            .sum::<f64>();
    let mut observed = vec![0u64; plan.n + 1];
    for t in &run.trials {
        observed[t.s1 as usize] += 1;
    }
    Ok(S1Report {
        mean: run.mean_s(1),
        empirical_pmf: pmf,
        binomial_pmf: expected.clone(),
        l1_distance: l1,
        chi_square: chi_square(&observed, &expected).ok(),
    })
}

/// Lazily checks the two-point event for points 0 and 1 among `n`.
/// Points are drawn one at a time (x then y) and drawing stops at the
/// first point that settles the outcome.
fn gamma_trial(spec: &DistributionSpec, n: usize, s: &mut Stream) -> bool {
    let (x1, y1, x2, y2) = (spec.sample(s), spec.sample(s), spec.sample(s), spec.sample(s));
    if !(x1 < x2 && y1 > y2) {
        return false;
    }
    let (a, b, c) = (y1 - y2, x2 - x1, x2 * y1 - x1 * y2);
    for _ in 2..n {
        let (x, y) = (spec.sample(s), spec.sample(s));
        if !(a * x + b * y < c) {
            return false;
        }
    }
    true
}

/// Joint event for columns (X, Y) with points 0, 1 and (X, Z) with
/// points 0, 2, sharing the X column. Each point draws (x, y, z).
fn joint_gamma_trial(spec: &DistributionSpec, n: usize, s: &mut Stream) -> bool {
    let draw = |s: &mut Stream| (spec.sample(s), spec.sample(s), spec.sample(s));
    let (x1, y1, z1) = draw(s);
    let (x2, y2, z2) = draw(s);
    let (x3, y3, z3) = draw(s);
    if !(x1 < x2 && y1 > y2 && x1 < x3 && z1 > z3) {
        return false;
    }
    let (a, b, c) = (y1 - y2, x2 - x1, x2 * y1 - x1 * y2);
    let (a2, b2, c2) = (z1 - z3, x3 - x1, x3 * z1 - x1 * z3);
    if !(a * x3 + b * y3 < c && a2 * x2 + b2 * z2 < c2) {
        return false;
    }
    for _ in 3..n {
        let (x, y, z) = draw(s);
        if !(a * x + b * y < c && a2 * x + b2 * z < c2) {
            return false;
        }
    }
    true
}

/// Frequency of the two-point event for strategies {0, 1}.
pub fn estimate_gamma_prob(plan: &TrialPlan) -> Result<SummaryStats> {
    plan.require_n(2, "estimate_gamma_prob")?;
    let spec = plan.spec;
    Ok(plan.count_trials(|s| gamma_trial(&spec, plan.n, s)))
}

/// Frequency of two-point ESS on both {0, 1} and {0, 2}.
pub fn estimate_joint_gamma(plan: &TrialPlan) -> Result<SummaryStats> {
    plan.require_n(3, "estimate_joint_gamma")?;
    let spec = plan.spec;
    Ok(plan.count_trials(|s| joint_gamma_trial(&spec, plan.n, s)))
}

/// Poisson-approximation bound for `S_2` with its neighbourhood terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChenSteinReport {
    pub lambda: f64,
    pub b1: f64,
    pub b2: f64,
    /// `2 (b1 + b2) (1 - e^-lambda) / lambda`, or 0 when `lambda = 0`.
    pub bound: f64,
    pub empirical_l1: f64,
}

fn chen_stein_bound(lambda: f64, b1: f64, b2: f64) -> f64 {
    if lambda == 0.0 {
        0.0
    } else {
        2.0 * (b1 + b2) * (-(-lambda).exp_m1()) / lambda
    }
}

/// Bound for `S_2` over the `m = n(n-1)/2` pair indicators. Each pair's
/// dependence neighbourhood is the `2n - 3` pairs sharing an index with it
/// (itself included), so `b1 = m (2n-3) p^2` and `b2 = m (2n-4) p_joint`.
pub fn chen_stein_report(
    n: usize,
    p_gamma: f64,
    p_joint: f64,
    empirical_pmf: &BTreeMap<usize, f64>,
) -> Result<ChenSteinReport> {
    for (name, p) in [("p_gamma", p_gamma), ("p_joint", p_joint)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("{name} = {p} is not a probability")));
        }
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    let nf = n as f64;
    let m = nf * (nf - 1.0) / 2.0;
    let lambda = m * p_gamma;
    let b1 = m * (2.0 * nf - 3.0) * p_gamma * p_gamma;
    let b2 = m * (2.0 * nf - 4.0) * p_joint;
    let bound = chen_stein_bound(lambda, b1, b2);
    Ok(ChenSteinReport {
        lambda,
        b1,
        b2,
        bound,
        empirical_l1: poisson_fit(empirical_pmf, lambda)?.l1_distance,
    })
}

/// Chen-Stein report estimated from a census run, with the Monte Carlo
/// error of the comparison `empirical_l1 <= bound`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChenSteinEstimate {
    pub report: ChenSteinReport,
    pub p_gamma: SummaryStats,
    pub p_joint: SummaryStats,
    /// Sampling error of `bound` (from the errors of `lambda` and `b2`)
    /// plus `sum_k sqrt(p_k (1 - p_k) / N)`, which bounds the expected
    /// sampling contribution to the empirical l1 distance.
    pub mc_error: f64,
}

/// Uses `E S_2 = m p_gamma` and `E sum_i d_i (d_i - 1) = m (2n-4) p_joint`,
/// both read off the same censuses that produce the empirical law.
pub fn chen_stein_from_run(run: &EssRun) -> Result<ChenSteinEstimate> {
    let n = run.plan.n;
    if n < 3 {
        return Err(Error::InvalidParameter(format!("need n >= 3, got {n}")));
    }
    let nf = n as f64;
    let m = nf * (nf - 1.0) / 2.0;
    let p_gamma = run.mu().scaled(1.0 / m);
    let p_joint = SummaryStats::from_counts(run.trials.iter().map(|t| t.shared_pairs as f64))
        .scaled(1.0 / (m * (2.0 * nf - 4.0)));
    let pmf = run.s2_pmf();
    let report = chen_stein_report(n, p_gamma.mean, p_joint.mean, &pmf)?;

    let at = |pg: f64, pj: f64| {
        let lambda = m * pg;
        chen_stein_bound(
            lambda,
            m * (2.0 * nf - 3.0) * pg * pg,
            m * (2.0 * nf - 4.0) * pj,
        )
    };
    let d_gamma = at(p_gamma.mean + p_gamma.stderr, p_joint.mean) - report.bound;
    let d_joint = at(p_gamma.mean, p_joint.mean + p_joint.stderr) - report.bound;
    let trials = run.trials.len() as f64;
    let pmf_noise: f64 = pmf.values().map(|p| (p * (1.0 - p) / trials).sqrt()).sum();
    Ok(ChenSteinEstimate {
        report,
        p_gamma,
        p_joint,
        mc_error: d_gamma.hypot(d_joint) + pmf_noise,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HullReport {
    pub e_v: SummaryStats,
    pub e_v0: SummaryStats,
    pub p_v0_zero: SummaryStats,
    pub p_v_eq_4: SummaryStats,
}

/// Hull vertex statistics over independent point samples.
pub fn hull_experiment(plan: &TrialPlan) -> Result<HullReport> {
    plan.require_n(2, "hull_experiment")?;
    let spec = plan.spec;
    let counts: Vec<(usize, usize)> = plan.map_trials(|s| {
        let sample = sample_points(plan.n, &spec, s).expect("plan validated");
        let h = HullStats::compute(&sample);
        (h.v, h.v0.unwrap_or(0))
    });
    Ok(HullReport {
        e_v: SummaryStats::from_counts(counts.iter().map(|&(v, _)| v as f64)),
        e_v0: SummaryStats::from_counts(counts.iter().map(|&(_, v0)| v0 as f64)),
        p_v0_zero: SummaryStats::from_bools(counts.iter().map(|&(_, v0)| v0 == 0)),
        p_v_eq_4: SummaryStats::from_bools(counts.iter().map(|&(v, _)| v == 4)),
    })
}

/// Empirical distribution of `U` over random point pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuCurve {
    pub grid: Vec<f64>,
    /// `P(U <= u)` at each grid value (the atom at 1 included).
    pub cdf: Vec<f64>,
    /// `F_U(1-) = P(U < 1)`: the pair is in the required quadrant.
    pub below_one: SummaryStats,
    /// `(n-2) int_0^1 (1-u)^(n-3) F_U(u) du` by the trapezoid rule on the
    /// grid (atom at 1 excluded), an estimate of the two-point event
    /// probability for `n` strategies.
    pub lemma5_check: f64,
    pub n: usize,
}

/// Draws `pairs` point pairs (pair `t` on substream `t` of `seed`) and
/// tabulates the distribution of `U` on `grid`.
pub fn fu_curve(
    spec: &DistributionSpec,
    pairs: usize,
    grid: &[f64],
    seed: u64,
    n: usize,
) -> Result<FuCurve> {
    if pairs < 1000 {
        return Err(Error::InvalidParameter(format!(
            "fu_curve needs at least 1000 pairs, got {pairs}"
        )));
    }
    if n < 3 {
        return Err(Error::InvalidParameter(format!("need n >= 3, got {n}")));
    }
    if grid.iter().any(|u| !(0.0..=1.0).contains(u)) || grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameter(
            "grid must be nondecreasing values in [0, 1]".into(),
        ));
    }
    let ustat = UStatistic::new(*spec, DEFAULT_QUAD_POINTS)?;
    let plan = TrialPlan::new(*spec, 2, pairs, seed)?;
    let mut us: Vec<Option<f64>> = plan.map_trials(|s| {
        let p1 = Point::new(spec.sample(s), spec.sample(s));
        let p2 = Point::new(spec.sample(s), spec.sample(s));
        (p1.x < p2.x && p1.y > p2.y).then(|| ustat.eval(p1, p2))
    });
    let below_one = SummaryStats::from_bools(us.iter().map(Option::is_some));
    let mut inside: Vec<f64> = us.drain(..).flatten().collect();
    inside.sort_by(f64::total_cmp);
    let total = pairs as f64;
    // F_U without the atom at 1
    let f_open = |u: f64| inside.partition_point(|&x| x <= u) as f64 / total;
    let cdf = grid
        .iter()
        .map(|&u| if u >= 1.0 { 1.0 } else { f_open(u) })
        .collect();

    let weight = |u: f64| (n as f64 - 2.0) * (1.0 - u).powi(n as i32 - 3) * f_open(u);
    let lemma5_check = grid
        .windows(2)
        .map(|w| 0.5 * (w[1] - w[0]) * (weight(w[0]) + weight(w[1])))
        .sum();
    Ok(FuCurve {
        grid: grid.to_vec(),
        cdf,
        below_one,
        lemma5_check,
        n,
    })
}

/// Exploratory three-point counts; the limits are conjectural so nothing
/// here gates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct S3Report {
    pub mean_s3: SummaryStats,
    /// P(S_1 + S_2 + S_3 > 0)
    pub p_le3: SummaryStats,
    /// Conjectured limit of `E S_3` for slower-than-exponential tails.
    pub conjectured_mean_s3: f64,
    /// Conjectured limit of `P(S_1 + S_2 + S_3 > 0)` for the same class.
    pub conjectured_p_le3: f64,
}

pub fn s3_exploration(plan: &TrialPlan) -> Result<S3Report> {
    plan.require_n(3, "s3_exploration")?;
    let run = EssRun::run(&plan.with_max_support(3)?)?;
    Ok(S3Report {
        mean_s3: run.mean_s(3),
        p_le3: SummaryStats::from_bools(run.trials.iter().map(|t| t.s1 + t.s2 + t.s3 > 0)),
        conjectured_mean_s3: 1.0 / 3.0,
        conjectured_p_le3: 1.0 - (-11.0_f64 / 6.0).exp(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plan(spec: DistributionSpec, n: usize, trials: usize) -> TrialPlan {
        TrialPlan::new(spec, n, trials, 42).unwrap()
    }

    #[test]
    fn plan_validation() {
        let u = DistributionSpec::uniform();
        assert!(TrialPlan::new(u, 0, 10, 1).is_err());
        assert!(TrialPlan::new(u, 5, 0, 1).is_err());
        assert!(plan(u, 5, 1).with_max_support(4).is_err());
        assert!(estimate_joint_gamma(&plan(u, 2, 10)).is_err());
    }

    #[test]
    fn chen_stein_degenerate_and_small() {
        let pmf: BTreeMap<usize, f64> = [(0, 1.0)].into_iter().collect();
        let r = chen_stein_report(10, 0.0, 0.0, &pmf).unwrap();
        assert_eq!((r.lambda, r.bound), (0.0, 0.0));
        assert_eq!(r.empirical_l1, 0.0);

        // n = 3: three pairs, every pair neighbours every other
        let (p, pj) = (0.1, 0.02);
        let r = chen_stein_report(3, p, pj, &pmf).unwrap();
        assert!((r.lambda - 3.0 * p).abs() < 1e-15);
        assert!((r.b1 - 9.0 * p * p).abs() < 1e-15);
        assert!((r.b2 - 6.0 * pj).abs() < 1e-15);
        assert!(r.bound <= 2.0 * (r.b1 + r.b2) + 1e-12);
        assert!(chen_stein_report(3, 1.5, 0.0, &pmf).is_err());
    }

    /// Brute-force neighbourhood enumeration for small n agrees with the
    /// closed-form sizes used in the report.
    #[test]
    fn neighbourhood_sizes_by_enumeration() {
        for n in 3..9usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            let mut b1_terms = 0usize;
            let mut b2_terms = 0usize;
            for &(i, j) in &pairs {
                for &(k, l) in &pairs {
                    if i == k || i == l || j == k || j == l {
                        b1_terms += 1;
                        if (i, j) != (k, l) {
                            b2_terms += 1;
                        }
                    }
                }
            }
            let m = pairs.len();
            assert_eq!(b1_terms, m * (2 * n - 3));
            assert_eq!(b2_terms, m * (2 * n - 4));
        }
    }

    #[test]
    fn single_strategy_is_always_pure_ess() {
        let r = s1_distribution(&plan(DistributionSpec::normal(), 1, 200)).unwrap();
        assert_eq!(r.mean.mean, 1.0);
        assert_eq!(r.empirical_pmf.get(&1), Some(&1.0));
        assert!(r.l1_distance.abs() < 1e-15);
    }

    #[test]
    fn n2_mu_is_base_event() {
        let p = plan(DistributionSpec::uniform(), 2, 40_000);
        let mu = estimate_mu(&p).unwrap();
        assert!((mu.mean - 0.25).abs() < 3.0 * mu.stderr, "{mu:?}");
        let g = estimate_gamma_prob(&p).unwrap();
        assert!((g.mean - 0.25).abs() < 3.0 * g.stderr, "{g:?}");
    }

    #[test]
    fn joint_event_is_rarer_than_single() {
        let p = plan(DistributionSpec::uniform(), 6, 100_000);
        let g = estimate_gamma_prob(&p).unwrap();
        let j = estimate_joint_gamma(&p).unwrap();
        assert!(j.mean <= g.mean + 4.0 * g.stderr.hypot(j.stderr));
    }

    #[test]
    fn fu_curve_degenerate_grid() {
        let c = fu_curve(&DistributionSpec::uniform(), 1000, &[1.0], 3, 10).unwrap();
        assert!(c.cdf[0] <= 1.0);
        assert!(fu_curve(&DistributionSpec::uniform(), 999, &[1.0], 3, 10).is_err());
        assert!(fu_curve(&DistributionSpec::uniform(), 1000, &[0.5, 0.2], 3, 10).is_err());
    }

    #[test]
    fn existence_at_n100_matches_pure_formula() {
        let r = existence_experiment(&plan(DistributionSpec::exponential(), 100, 2000)).unwrap();
        let want = 1.0 - 0.99f64.powi(100);
        assert!((r.p_pure.mean - want).abs() < 3.0 * r.p_pure.stderr, "{:?}", r.p_pure);
        assert!(r.p_le2.mean >= r.p_pure.mean && r.p_le2.mean >= r.p_two_point.mean);
    }
}
