//! Continuous laws used to fill payoff matrices and point clouds.
//!
//! Every law is in its standard normalization (no location or scale). The
//! ESS census and hull statistics are invariant under common increasing
//! affine maps, so the normalization loses nothing.
//!
//! All sampling goes through [`DistributionSpec::quantile`] applied to one
//! uniform variate, so every family consumes exactly one draw per value.

use std::f64::consts::{FRAC_1_SQRT_2, LN_2, PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use statrs::function::erf::{erfc, erfc_inv};

use crate::error::{Error, Result};
use crate::rng::Stream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Exponential,
    Normal,
    Uniform,
    Weibull,
    Pareto,
    Cauchy,
    Lognormal,
    Logistic,
    /// Survival `exp(-exp(x))` on the whole line.
    ExpExp,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Exponential,
        Family::Normal,
        Family::Uniform,
        Family::Weibull,
        Family::Pareto,
        Family::Cauchy,
        Family::Lognormal,
        Family::Logistic,
        Family::ExpExp,
    ];

    fn token(self) -> &'static str {
        match self {
            Family::Exponential => "exp",
            Family::Normal => "normal",
            Family::Uniform => "uniform",
            Family::Weibull => "weibull",
            Family::Pareto => "pareto",
            Family::Cauchy => "cauchy",
            Family::Lognormal => "lognormal",
            Family::Logistic => "logistic",
            Family::ExpExp => "expexp",
        }
    }

    fn has_shape(self) -> bool {
        matches!(self, Family::Weibull | Family::Pareto)
    }

    fn two_sided(self) -> bool {
        matches!(
            self,
            Family::Normal | Family::Cauchy | Family::Logistic | Family::ExpExp
        )
    }
}

/// Tail class of a law: exponential-or-faster (log-concave survival) or
/// slower-than-exponential (subexponential).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TailClass {
    EF,
    SE,
}

/// A named continuous law, optionally mirrored about 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistributionSpec {
    family: Family,
    shape: Option<f64>,
    symmetrized: bool,
}

impl DistributionSpec {
    /// Builds a law. `shape` must be given (positive, finite) exactly for
    /// weibull and pareto.
    pub fn new(family: Family, shape: Option<f64>) -> Result<Self> {
        match (family.has_shape(), shape) {
            (true, Some(a)) if a.is_finite() && a > 0.0 => {}
            (true, Some(a)) => {
                return Err(Error::InvalidParameter(format!(
                    "{} shape must be positive and finite, got {a}",
                    family.token()
                )))
            }
            (true, None) => {
                return Err(Error::InvalidParameter(format!(
                    "{} requires a shape parameter",
                    family.token()
                )))
            }
            (false, Some(_)) => {
                return Err(Error::InvalidParameter(format!(
                    "{} takes no shape parameter",
                    family.token()
                )))
            }
            (false, None) => {}
        }
        Ok(Self {
            family,
            shape,
            symmetrized: false,
        })
    }

    pub fn exponential() -> Self {
        Self::plain(Family::Exponential)
    }

    pub fn normal() -> Self {
        Self::plain(Family::Normal)
    }

    pub fn uniform() -> Self {
        Self::plain(Family::Uniform)
    }

    pub fn cauchy() -> Self {
        Self::plain(Family::Cauchy)
    }

    pub fn lognormal() -> Self {
        Self::plain(Family::Lognormal)
    }

    pub fn logistic() -> Self {
        Self::plain(Family::Logistic)
    }

    pub fn expexp() -> Self {
        Self::plain(Family::ExpExp)
    }

    pub fn weibull(alpha: f64) -> Result<Self> {
        Self::new(Family::Weibull, Some(alpha))
    }

    pub fn pareto(alpha: f64) -> Result<Self> {
        Self::new(Family::Pareto, Some(alpha))
    }

    fn plain(family: Family) -> Self {
        Self {
            family,
            shape: None,
            symmetrized: false,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn shape(&self) -> Option<f64> {
        self.shape
    }

    pub fn is_symmetrized(&self) -> bool {
        self.symmetrized
    }

    /// True when `F(x0 - x) = 1 - F(x0 + x)` for some `x0`.
    pub fn is_symmetric(&self) -> bool {
        self.symmetrized
            || matches!(
                self.family,
                Family::Normal | Family::Cauchy | Family::Logistic | Family::Uniform
            )
    }

    pub fn tail_class(&self) -> TailClass {
        match self.family {
            Family::Exponential
            | Family::Normal
            | Family::Uniform
            | Family::Logistic
            | Family::ExpExp => TailClass::EF,
            Family::Pareto | Family::Cauchy | Family::Lognormal => TailClass::SE,
            Family::Weibull => {
                if self.alpha() >= 1.0 {
                    TailClass::EF
                } else {
                    TailClass::SE
                }
            }
        }
    }

    /// Open support `(lo, hi)`; for a mirrored pareto the interval `[-1, 1]`
    /// carries no mass.
    pub fn support(&self) -> (f64, f64) {
        let (lo, hi) = self.base_support();
        if self.symmetrized {
            (-hi, hi)
        } else {
            (lo, hi)
        }
    }

    /// Mirror a law supported on `(0, inf)` about the origin: the result is
    /// a random sign times a base draw.
    pub fn symmetrize(&self) -> Result<Self> {
        if self.symmetrized || self.family.two_sided() {
            return Err(Error::InvalidParameter(format!(
                "{self} is already two-sided and cannot be symmetrized"
            )));
        }
        Ok(Self {
            symmetrized: true,
            ..*self
        })
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if self.symmetrized {
            if x >= 0.0 {
                1.0 - 0.5 * self.base_sf(x)
            } else {
                0.5 * self.base_sf(-x)
            }
        } else {
            self.base_cdf(x)
        }
    }

    pub fn survival(&self, x: f64) -> f64 {
        if self.symmetrized {
            if x >= 0.0 {
                0.5 * self.base_sf(x)
            } else {
                1.0 - 0.5 * self.base_sf(-x)
            }
        } else {
            self.base_sf(x)
        }
    }

    /// Inverse of [`cdf`](Self::cdf) on `(0, 1)`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!(
                "quantile requires p in (0, 1), got {p}"
            )));
        }
        Ok(self.quantile_unchecked(p))
    }

    /// `-ln survival(x)`; rejects points where the survival vanishes.
    pub fn cumulative_hazard(&self, x: f64) -> Result<f64> {
        let g = if x >= self.support().1 || x.is_nan() {
            f64::INFINITY
        } else if self.symmetrized {
            if x >= 0.0 {
                LN_2 + self.base_hazard(x)
            } else {
                -(-0.5 * self.base_sf(-x)).ln_1p()
            }
        } else {
            self.base_hazard(x)
        };
        if g.is_finite() {
            Ok(g)
        } else {
            Err(Error::Domain(format!(
                "cumulative hazard undefined at {x}: survival is 0"
            )))
        }
    }

    /// One inverse-transform draw.
    #[inline]
    pub fn sample(&self, stream: &mut Stream) -> f64 {
        self.quantile_unchecked(stream.open01())
    }

    #[inline]
    pub(crate) fn quantile_unchecked(&self, p: f64) -> f64 {
        if self.symmetrized {
            if p < 0.5 {
                -self.base_isf(2.0 * p)
            } else {
                self.base_isf(2.0 * (1.0 - p))
            }
        } else {
            self.base_quantile(p)
        }
    }

    fn alpha(&self) -> f64 {
        self.shape.unwrap_or(1.0)
    }

    fn base_support(&self) -> (f64, f64) {
        const INF: f64 = f64::INFINITY;
        const NINF: f64 = f64::NEG_INFINITY;
        match self.family {
            Family::Exponential | Family::Weibull | Family::Lognormal => (0.0, INF),
            Family::Uniform => (0.0, 1.0),
            Family::Pareto => (1.0, INF),
            Family::Normal | Family::Cauchy | Family::Logistic | Family::ExpExp => (NINF, INF),
        }
    }

    fn base_cdf(&self, x: f64) -> f64 {
        let a = self.alpha();
        match self.family {
            Family::Exponential => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-x).exp_m1()
                }
            }
            Family::Weibull => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-x.powf(a)).exp_m1()
                }
            }
            Family::Pareto => {
                if x <= 1.0 {
                    0.0
                } else {
                    -(-a * x.ln()).exp_m1()
                }
            }
            Family::Uniform => x.clamp(0.0, 1.0),
            Family::Normal => 0.5 * erfc(-x * FRAC_1_SQRT_2),
            Family::Lognormal => {
                if x <= 0.0 {
                    0.0
                } else {
                    0.5 * erfc(-x.ln() * FRAC_1_SQRT_2)
                }
            }
            Family::Cauchy => 1.0f64.atan2(-x) / PI,
            Family::Logistic => 1.0 / (1.0 + (-x).exp()),
            Family::ExpExp => -(-x.exp()).exp_m1(),
        }
    }

    fn base_sf(&self, x: f64) -> f64 {
        let a = self.alpha();
        match self.family {
            Family::Exponential => {
                if x <= 0.0 {
                    1.0
                } else {
                    (-x).exp()
                }
            }
            Family::Weibull => {
                if x <= 0.0 {
                    1.0
                } else {
                    (-x.powf(a)).exp()
                }
            }
            Family::Pareto => {
                if x <= 1.0 {
                    1.0
                } else {
                    x.powf(-a)
                }
            }
            Family::Uniform => (1.0 - x).clamp(0.0, 1.0),
            Family::Normal => 0.5 * erfc(x * FRAC_1_SQRT_2),
            Family::Lognormal => {
                if x <= 0.0 {
                    1.0
                } else {
                    0.5 * erfc(x.ln() * FRAC_1_SQRT_2)
                }
            }
            Family::Cauchy => 1.0f64.atan2(x) / PI,
            Family::Logistic => 1.0 / (1.0 + x.exp()),
            Family::ExpExp => (-x.exp()).exp(),
        }
    }

    fn base_hazard(&self, x: f64) -> f64 {
        let a = self.alpha();
        match self.family {
            Family::Exponential => x.max(0.0),
            Family::Weibull => {
                if x <= 0.0 {
                    0.0
                } else {
                    x.powf(a)
                }
            }
            Family::Pareto => {
                if x <= 1.0 {
                    0.0
                } else {
                    a * x.ln()
                }
            }
            Family::Uniform => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-x).ln_1p()
                }
            }
            Family::Logistic => {
                if x > 0.0 {
                    x + (-x).exp().ln_1p()
                } else {
                    x.exp().ln_1p()
                }
            }
            Family::ExpExp => x.exp(),
            Family::Normal | Family::Lognormal | Family::Cauchy => -self.base_sf(x).ln(),
        }
    }

    fn base_quantile(&self, p: f64) -> f64 {
        let a = self.alpha();
        match self.family {
            Family::Exponential => -(-p).ln_1p(),
            Family::Weibull => (-(-p).ln_1p()).powf(1.0 / a),
            Family::Pareto => (-(-p).ln_1p() / a).exp(),
            Family::Uniform => p,
            Family::Normal => -SQRT_2 * erfc_inv(2.0 * p),
            Family::Lognormal => (-SQRT_2 * erfc_inv(2.0 * p)).exp(),
            Family::Cauchy => {
                if p < 0.5 {
                    -1.0 / (PI * p).tan()
                } else {
                    1.0 / (PI * (1.0 - p)).tan()
                }
            }
            Family::Logistic => (p / (1.0 - p)).ln(),
            Family::ExpExp => (-(-p).ln_1p()).ln(),
        }
    }

    /// Inverse survival: the `x` with `survival(x) = q`, `q` in `(0, 1]`.
    fn base_isf(&self, q: f64) -> f64 {
        let a = self.alpha();
        match self.family {
            Family::Exponential => -q.ln(),
            Family::Weibull => (-q.ln()).powf(1.0 / a),
            Family::Pareto => q.powf(-1.0 / a),
            Family::Uniform => 1.0 - q,
            Family::Lognormal => (SQRT_2 * erfc_inv(2.0 * q)).exp(),
            // Only reachable for one-sided families; two-sided ones are never
            // mirrored.
            _ => self.base_quantile(1.0 - q),
        }
    }
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = self.family.token().to_string();
        if let Some(a) = self.shape {
            s = format!("{s}:{a}");
        }
        if self.symmetrized {
            s = format!("sym({s})");
        }
        f.pad(&s)
    }
}

impl FromStr for DistributionSpec {
    type Err = Error;

    /// Grammar: `exp | normal | uniform | weibull:<a> | pareto:<a> | cauchy
    /// | lognormal | logistic | expexp | sym(<base>)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("sym(") {
            let inner = rest.strip_suffix(')').ok_or_else(|| Error::Parse {
                token: s.to_string(),
            })?;
            let base: DistributionSpec = inner.parse()?;
            return base.symmetrize().map_err(|_| Error::Parse {
                token: inner.trim().to_string(),
            });
        }
        let (name, shape) = match s.split_once(':') {
            Some((name, a)) => (name, Some(a)),
            None => (s, None),
        };
        let family = Family::ALL
            .into_iter()
            .find(|f| f.token() == name)
            .ok_or_else(|| Error::Parse {
                token: name.to_string(),
            })?;
        let shape = match (family.has_shape(), shape) {
            (true, Some(a)) => {
                let v: f64 = a.parse().map_err(|_| Error::Parse {
                    token: a.to_string(),
                })?;
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::Parse {
                        token: a.to_string(),
                    });
                }
                Some(v)
            }
            (true, None) => {
                return Err(Error::Parse {
                    token: s.to_string(),
                })
            }
            (false, Some(a)) => {
                return Err(Error::Parse {
                    token: format!(":{a}"),
                })
            }
            (false, None) => None,
        };
        DistributionSpec::new(family, shape)
    }
}
