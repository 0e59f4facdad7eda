//! Random symmetric games and ESS certification.
//!
//! Indices are 0-based. `R(i, j)` is the payoff to a player using strategy
//! `i` against an opponent using `j`: row = reply, column = context.
//!
//! Comparisons are exact floating-point strict inequalities. Ties have
//! probability zero for continuous payoffs; a tied synthetic input fails
//! strictness and so yields no ESS.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::rng::Stream;

/// Relative threshold for the conditional negative-definiteness check.
pub const DEFINITENESS_EPS: f64 = 1e-10;

/// Square payoff matrix, stored column-major so that the column scans done
/// by the census are contiguous.
#[derive(Debug, Clone, PartialEq)]
pub struct GameMatrix {
    n: usize,
    cols: Vec<f64>,
}

impl GameMatrix {
    /// From `n * n` entries listed row by row.
    pub fn from_row_major(n: usize, entries: &[f64]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("matrix must be nonempty".into()));
        }
        if entries.len() != n * n {
            return Err(Error::Dimension {
                expected: n * n,
                got: entries.len(),
            });
        }
        if let Some(x) = entries.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite payoff {x}")));
        }
        let mut cols = vec![0.0; n * n];
        for (t, &x) in entries.iter().enumerate() {
            let (i, j) = (t / n, t % n);
            cols[j * n + i] = x;
        }
        Ok(Self { n, cols })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut flat = Vec::with_capacity(n * n);
        for r in rows {
            let r = r.as_ref();
            if r.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: r.len(),
                });
            }
            flat.extend_from_slice(r);
        }
        Self::from_row_major(n, &flat)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.cols[j * self.n + i]
    }

    /// Column `j`: the payoffs of every reply against context `j`.
    #[inline]
    pub fn column(&self, j: usize) -> &[f64] {
        &self.cols[j * self.n..(j + 1) * self.n]
    }

    /// Entries row by row.
    pub fn row_major(&self) -> Vec<f64> {
        let n = self.n;
        (0..n * n).map(|t| self.get(t / n, t % n)).collect()
    }

    /// Entry-wise `scale * R + shift`.
    pub fn affine(&self, scale: f64, shift: f64) -> Self {
        Self {
            n: self.n,
            cols: self.cols.iter().map(|x| scale * x + shift).collect(),
        }
    }

    fn max_abs_on(&self, support: &[usize]) -> f64 {
        support
            .iter()
            .flat_map(|&i| support.iter().map(move |&j| (i, j)))
            .fold(0.0_f64, |m, (i, j)| m.max(self.get(i, j).abs()))
    }
}

/// A mixed strategy kept in sparse form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixedStrategy {
    n: usize,
    support: Vec<usize>,
    weights: Vec<f64>,
}

impl MixedStrategy {
    /// `support` must be strictly increasing, weights positive and summing
    /// to one within 1e-12.
    pub fn new(n: usize, support: Vec<usize>, weights: Vec<f64>) -> Result<Self> {
        if support.is_empty() || support.len() != weights.len() {
            return Err(Error::InvalidParameter(
                "support and weights must be nonempty and of equal length".into(),
            ));
        }
        if support.windows(2).any(|w| w[0] >= w[1]) || support[support.len() - 1] >= n {
            return Err(Error::InvalidParameter(format!(
                "support {support:?} is not a sorted subset of 0..{n}"
            )));
        }
        if weights.iter().any(|&w| !(w > 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "weights must be positive: {weights:?}"
            )));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "weights sum to {total}, not 1"
            )));
        }
        Ok(Self {
            n,
            support,
            weights,
        })
    }

    pub fn pure(n: usize, i: usize) -> Result<Self> {
        Self::new(n, vec![i], vec![1.0])
    }

    /// From a dense probability vector; zero entries leave the support.
    pub fn from_dense(p: &[f64]) -> Result<Self> {
        let (support, weights): (Vec<usize>, Vec<f64>) = p
            .iter()
            .enumerate()
            .filter(|(_, &w)| w != 0.0)
            .map(|(i, &w)| (i, w))
            .unzip();
        Self::new(p.len(), support, weights)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.support
            .binary_search(&i)
            .map_or(0.0, |k| self.weights[k])
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut p = vec![0.0; self.n];
        for (&i, &w) in self.support.iter().zip(&self.weights) {
            p[i] = w;
        }
        p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EssKind {
    Pure,
    TwoPoint,
    General,
}

/// One certified ESS.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EssRecord {
    pub strategy: MixedStrategy,
    /// The equalized payoff `R(p, p)`.
    pub payoff_v: f64,
    pub kind: EssKind,
}

impl EssRecord {
    pub fn support(&self) -> &[usize] {
        self.strategy.support()
    }
}

/// All ESS of one matrix with support size up to the requested bound.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EssCensus {
    /// Support size -> number of ESS with that support size.
    pub counts: BTreeMap<usize, usize>,
    pub records: Vec<EssRecord>,
}

impl EssCensus {
    pub fn count(&self, support_size: usize) -> usize {
        self.counts.get(&support_size).copied().unwrap_or(0)
    }

    /// Checks count consistency, support uniqueness and non-nesting.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        for (&size, &c) in &self.counts {
            let seen = self.records.iter().filter(|r| r.support().len() == size).count();
            if seen != c {
                return Err(format!("count[{size}] = {c} but {seen} records"));
            }
        }
        for (a, ra) in self.records.iter().enumerate() {
            for rb in &self.records[a + 1..] {
                let (sa, sb) = (ra.support(), rb.support());
                if sa == sb {
                    return Err(format!("two ESS share support {sa:?}"));
                }
                if is_subset(sa, sb) || is_subset(sb, sa) {
                    return Err(format!("nested supports {sa:?} and {sb:?}"));
                }
            }
        }
        Ok(())
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|i| big.binary_search(i).is_ok())
}

/// Fills an `n x n` matrix row by row with draws from `spec`.
pub fn generate_game(n: usize, spec: &DistributionSpec, stream: &mut Stream) -> Result<GameMatrix> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("game size must be >= 2, got {n}")));
    }
    let mut cols = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            cols[j * n + i] = spec.sample(stream);
        }
    }
    Ok(GameMatrix { n, cols })
}

/// Bilinear payoff `R(p, q) = sum_i sum_j p_i q_j R(i, j)`.
pub fn payoff(r: &GameMatrix, p: &MixedStrategy, q: &MixedStrategy) -> Result<f64> {
    for s in [p, q] {
        if s.n() != r.n() {
            return Err(Error::Dimension {
                expected: r.n(),
                got: s.n(),
            });
        }
    }
    let mut total = 0.0;
    for (&j, &qj) in q.support().iter().zip(q.weights()) {
        let col = r.column(j);
        let inner: f64 = p.support().iter().zip(p.weights()).map(|(&i, &pi)| pi * col[i]).sum();
        total += qj * inner;
    }
    Ok(total)
}

/// Strategy `i` is a pure ESS iff `R(i, i)` strictly beats every other entry
/// of column `i`.
pub fn is_pure_ess(r: &GameMatrix, i: usize) -> bool {
    let col = r.column(i);
    let d = col[i];
    col.iter().enumerate().all(|(k, &x)| k == i || x < d)
}

/// Two-point test on columns `i`, `j` without building the record.
///
/// With `a = R(j,i) - R(i,i)` and `b = R(i,j) - R(j,j)` both positive the
/// equalizer is `(b, a) / (a + b)`; the off-support rows are compared after
/// scaling by `a + b`.
#[inline]
fn two_point_holds(col_i: &[f64], col_j: &[f64], i: usize, j: usize) -> Option<(f64, f64)> {
    let a = col_i[j] - col_i[i];
    let b = col_j[i] - col_j[j];
    if !(a > 0.0 && b > 0.0) {
        return None;
    }
    let threshold = b * col_i[i] + a * col_j[i];
    for (k, (&x, &y)) in col_i.iter().zip(col_j).enumerate() {
        if k != i && k != j && b * x + a * y >= threshold {
            return None;
        }
    }
    Some((a, b))
}

/// The two-point ESS supported on `{i, j}`, if there is one.
pub fn two_point_ess(r: &GameMatrix, i: usize, j: usize) -> Option<EssRecord> {
    assert_ne!(i, j, "two-point support needs distinct indices");
    let (lo, hi) = (i.min(j), i.max(j));
    let (a, b) = two_point_holds(r.column(lo), r.column(hi), lo, hi)?;
    let p_lo = b / (a + b);
    let p_hi = a / (a + b);
    let v = p_lo * r.get(lo, lo) + p_hi * r.get(lo, hi);
    Some(EssRecord {
        strategy: MixedStrategy {
            n: r.n(),
            support: vec![lo, hi],
            weights: vec![p_lo, p_hi],
        },
        payoff_v: v,
        kind: EssKind::TwoPoint,
    })
}

/// Orthonormal basis of `{x : sum x = 0}` in R^l (Helmert), as columns.
fn sum_zero_basis(l: usize) -> DMatrix<f64> {
    let mut b = DMatrix::zeros(l, l - 1);
    for c in 0..l - 1 {
        let k = (c + 1) as f64;
        let norm = (k * (k + 1.0)).sqrt();
        for row in 0..=c {
            b[(row, c)] = 1.0 / norm;
        }
        b[(c + 1, c)] = -k / norm;
    }
    b
}

/// ESS with support exactly `support` (any size from 2 to n).
///
/// Solves the equalizer system `M p = v 1, sum p = 1` on the support, then
/// requires every weight positive, every off-support row strictly below
/// `v`, and `x' M x < 0` on the sum-zero subspace (all eigenvalues of the
/// projected symmetric part below `-DEFINITENESS_EPS * max|M|`).
pub fn support_ess(r: &GameMatrix, support: &[usize]) -> Result<Option<EssRecord>> {
    let l = support.len();
    if l < 2 || l > r.n() {
        return Err(Error::InvalidParameter(format!(
            "support size must be in 2..={}, got {l}",
            r.n()
        )));
    }
    if support.windows(2).any(|w| w[0] >= w[1]) || support[l - 1] >= r.n() {
        return Err(Error::InvalidParameter(format!(
            "support {support:?} is not a sorted subset of 0..{}",
            r.n()
        )));
    }
    let m = DMatrix::from_fn(l, l, |a, b| r.get(support[a], support[b]));

    let mut system = DMatrix::zeros(l + 1, l + 1);
    system.view_mut((0, 0), (l, l)).copy_from(&m);
    for a in 0..l {
        system[(a, l)] = -1.0;
        system[(l, a)] = 1.0;
    }
    let mut rhs = DVector::zeros(l + 1);
    rhs[l] = 1.0;
    let Some(sol) = system.lu().solve(&rhs) else {
        return Ok(None);
    };
    if sol.iter().any(|x| !x.is_finite()) {
        return Ok(None);
    }
    let weights: Vec<f64> = sol.rows(0, l).iter().copied().collect();
    let v = sol[l];
    if weights.iter().any(|&w| !(w > 0.0)) {
        return Ok(None);
    }

    for k in 0..r.n() {
        if support.binary_search(&k).is_ok() {
            continue;
        }
        let row: f64 = support.iter().zip(&weights).map(|(&j, &w)| w * r.get(k, j)).sum();
        if !(row < v) {
            return Ok(None);
        }
    }

    let sym = (&m + m.transpose()) * 0.5;
    let basis = sum_zero_basis(l);
    let projected = basis.transpose() * sym * &basis;
    let eps = DEFINITENESS_EPS * r.max_abs_on(support);
    let eig = SymmetricEigen::new(projected);
    if eig.eigenvalues.iter().any(|&e| !(e < -eps)) {
        return Ok(None);
    }

    // The solver's weights sum to 1 up to rounding; renormalize so the
    // strategy invariant holds exactly enough.
    let total: f64 = weights.iter().sum();
    let weights: Vec<f64> = weights.iter().map(|w| w / total).collect();
    let kind = if l == 2 {
        EssKind::TwoPoint
    } else {
        EssKind::General
    };
    Ok(Some(EssRecord {
        strategy: MixedStrategy::new(r.n(), support.to_vec(), weights)?,
        payoff_v: v,
        kind,
    }))
}

/// Necessary for an ESS with this support: no member is a strict best
/// reply to itself inside the support. Otherwise that pure strategy would be
/// an ESS of the restricted game alongside an interior one, which cannot
/// happen.
fn each_beaten_within(r: &GameMatrix, support: &[usize]) -> bool {
    support.iter().all(|&i| {
        let d = r.get(i, i);
        support.iter().any(|&k| k != i && r.get(k, i) >= d)
    })
}

/// Counts every ESS with support size `1..=max_support` (at most 3).
pub fn census(r: &GameMatrix, max_support: usize) -> Result<EssCensus> {
    if !(1..=3).contains(&max_support) {
        return Err(Error::InvalidParameter(format!(
            "max_support must be 1, 2 or 3, got {max_support}"
        )));
    }
    let n = r.n();
    let mut out = EssCensus::default();

    let mut pure = 0;
    for i in 0..n {
        if is_pure_ess(r, i) {
            pure += 1;
            out.records.push(EssRecord {
                strategy: MixedStrategy {
                    n,
                    support: vec![i],
                    weights: vec![1.0],
                },
                payoff_v: r.get(i, i),
                kind: EssKind::Pure,
            });
        }
    }
    out.counts.insert(1, pure);

    if max_support >= 2 {
        let mut pairs = 0;
        let diag: Vec<f64> = (0..n).map(|i| r.get(i, i)).collect();
        let mut row_i = vec![0.0; n];
        for i in 0..n {
            let col_i = r.column(i);
            for (j, x) in row_i.iter_mut().enumerate().skip(i + 1) {
                *x = r.get(i, j);
            }
            for j in i + 1..n {
                // cheap sign screen on contiguous data before the column scan
                if !(col_i[j] > diag[i] && row_i[j] > diag[j]) {
                    continue;
                }
                if two_point_holds(col_i, r.column(j), i, j).is_some() {
                    pairs += 1;
                    out.records.extend(two_point_ess(r, i, j));
                }
            }
        }
        out.counts.insert(2, pairs);
    }

    if max_support >= 3 {
        let mut triples = 0;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if !each_beaten_within(r, &[i, j, k]) {
                        continue;
                    }
                    if let Some(rec) = support_ess(r, &[i, j, k])? {
                        triples += 1;
                        out.records.push(rec);
                    }
                }
            }
        }
        out.counts.insert(3, triples);
    }

    debug_assert_eq!(out.check_invariants(), Ok(()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> GameMatrix {
        GameMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn payoff_examples() {
        let r = m(&[&[1.0, 3.0], &[2.0, 4.0]]);
        let e = |i| MixedStrategy::pure(2, i).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(payoff(&r, &e(i), &e(j)).unwrap(), r.get(i, j));
            }
        }
        let half = MixedStrategy::new(2, vec![0, 1], vec![0.5, 0.5]).unwrap();
        assert_eq!(payoff(&r, &half, &half).unwrap(), 2.5);
        let bad = MixedStrategy::pure(3, 0).unwrap();
        assert!(matches!(payoff(&r, &bad, &half), Err(Error::Dimension { .. })));
    }

    #[test]
    fn payoff_matches_double_sum() {
        let spec = DistributionSpec::normal();
        let mut s = Stream::new(11);
        for _ in 0..50 {
            let r = generate_game(5, &spec, &mut s).unwrap();
            let raw = |s: &mut Stream| -> Vec<f64> {
                let w: Vec<f64> = (0..5).map(|_| s.open01()).collect();
                let t: f64 = w.iter().sum();
                w.iter().map(|x| x / t).collect()
            };
            let (p, q) = (raw(&mut s), raw(&mut s));
            let mut brute = 0.0;
            for i in 0..5 {
                for j in 0..5 {
                    brute += p[i] * q[j] * r.get(i, j);
                }
            }
            let ps = MixedStrategy::from_dense(&p).unwrap();
            let qs = MixedStrategy::from_dense(&q).unwrap();
            let got = payoff(&r, &ps, &qs).unwrap();
            assert!((got - brute).abs() < 1e-12, "{got} vs {brute}");
        }
    }

    #[test]
    fn pure_ess_is_strict() {
        assert!(is_pure_ess(&m(&[&[2.0, 0.0], &[1.0, 0.0]]), 0));
        assert!(!is_pure_ess(&m(&[&[2.0, 0.0], &[2.0, 0.0]]), 0));
    }

    #[test]
    fn anti_coordination_has_half_half_ess() {
        let rec = two_point_ess(&m(&[&[0.0, 1.0], &[1.0, 0.0]]), 0, 1).unwrap();
        assert_eq!(rec.strategy.weights(), &[0.5, 0.5]);
        assert_eq!(rec.payoff_v, 0.5);
        assert_eq!(rec.kind, EssKind::TwoPoint);
    }

    /// Equalizer for [[0,3,.],[2,0,.],[1,1,.]] solved by hand: a = 2, b = 3,
    /// p = (3/5, 2/5), v = 6/5. The invader grid over q in the support
    /// simplex confirms R(q,q) < R(p,q) for q != p.
    #[test]
    fn three_row_example_against_invader_grid() {
        for third in [-5.0, 0.0, 7.0] {
            let r = m(&[&[0.0, 3.0, third], &[2.0, 0.0, third], &[1.0, 1.0, third]]);
            let rec = two_point_ess(&r, 0, 1).unwrap();
            let w = rec.strategy.weights();
            assert!((w[0] - 0.6).abs() < 1e-15 && (w[1] - 0.4).abs() < 1e-15);
            assert!((rec.payoff_v - 1.2).abs() < 1e-15);
            let p = &rec.strategy;
            for t in 0..=200 {
                let x = t as f64 / 200.0;
                if (x - 0.6).abs() < 1e-9 {
                    continue;
                }
                let q = MixedStrategy::from_dense(&[x, 1.0 - x, 0.0]).unwrap();
                assert!(payoff(&r, &q, &q).unwrap() < payoff(&r, p, &q).unwrap());
            }
        }
    }

    #[test]
    fn tied_off_support_row_fails() {
        // row 3 earns exactly v = 1.2 against p
        let r = m(&[&[0.0, 3.0, 0.0], &[2.0, 0.0, 0.0], &[0.0, 3.0, 0.0]]);
        assert!(two_point_ess(&r, 0, 1).is_none());
    }

    #[test]
    fn rock_scissors_paper_has_no_interior_ess() {
        let r = m(&[&[0.0, -1.0, 1.0], &[1.0, 0.0, -1.0], &[-1.0, 1.0, 0.0]]);
        assert_eq!(support_ess(&r, &[0, 1, 2]).unwrap(), None);
        let c = census(&r, 3).unwrap();
        assert!(c.records.is_empty());
    }

    #[test]
    fn negative_identity_is_interior_ess() {
        let r = m(&[&[-1.0, 0.0, 0.0], &[0.0, -1.0, 0.0], &[0.0, 0.0, -1.0]]);
        let rec = support_ess(&r, &[0, 1, 2]).unwrap().unwrap();
        for &w in rec.strategy.weights() {
            assert!((w - 1.0 / 3.0).abs() < 1e-14);
        }
        assert!((rec.payoff_v + 1.0 / 3.0).abs() < 1e-14);
        assert_eq!(rec.kind, EssKind::General);
    }

    #[test]
    fn support_ess_rejects_bad_supports() {
        let r = m(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert!(support_ess(&r, &[0]).is_err());
        assert!(support_ess(&r, &[1, 0]).is_err());
        assert!(support_ess(&r, &[0, 2]).is_err());
    }

    #[test]
    fn census_examples() {
        let c = census(&m(&[&[0.0, 1.0], &[1.0, 0.0]]), 2).unwrap();
        assert_eq!((c.count(1), c.count(2)), (0, 1));
        let c = census(&m(&[&[1.0, 0.0], &[0.0, 1.0]]), 2).unwrap();
        assert_eq!((c.count(1), c.count(2)), (2, 0));
        assert!(census(&m(&[&[1.0]]), 0).is_err());
        assert!(census(&m(&[&[1.0]]), 4).is_err());
    }

    #[test]
    fn generate_rejects_small_and_is_reproducible() {
        let u = DistributionSpec::uniform();
        assert!(generate_game(1, &u, &mut Stream::new(1)).is_err());
        let a = generate_game(2, &u, &mut Stream::new(1)).unwrap();
        let b = generate_game(2, &u, &mut Stream::new(1)).unwrap();
        assert_eq!(a.row_major(), b.row_major());
        // row-major fill order
        let mut s = Stream::new(1);
        let first: Vec<f64> = (0..4).map(|_| u.sample(&mut s)).collect();
        assert_eq!(a.row_major(), first);
        let c = generate_game(3, &DistributionSpec::cauchy(), &mut Stream::new(2)).unwrap();
        assert!(c.row_major().iter().all(|x| x.is_finite()));
    }

    #[test]
    fn helmert_basis_is_orthonormal_and_sum_zero() {
        for l in 2..6 {
            let b = sum_zero_basis(l);
            let gram = b.transpose() * &b;
            assert!((gram - DMatrix::<f64>::identity(l - 1, l - 1)).norm() < 1e-14);
            for c in 0..l - 1 {
                assert!(b.column(c).sum().abs() < 1e-14);
            }
        }
    }

    #[test]
    fn strategy_validation() {
        assert!(MixedStrategy::new(3, vec![0, 1], vec![0.5, 0.6]).is_err());
        assert!(MixedStrategy::new(3, vec![1, 0], vec![0.5, 0.5]).is_err());
        assert!(MixedStrategy::new(3, vec![0, 3], vec![0.5, 0.5]).is_err());
        assert!(MixedStrategy::new(3, vec![], vec![]).is_err());
        assert!(MixedStrategy::new(3, vec![0, 1], vec![1.0, 0.0]).is_err());
        let p = MixedStrategy::new(3, vec![0, 2], vec![0.25, 0.75]).unwrap();
        assert_eq!(p.to_dense(), vec![0.25, 0.0, 0.75]);
        assert_eq!(p.weight(2), 0.75);
        assert_eq!(p.weight(1), 0.0);
    }
}
