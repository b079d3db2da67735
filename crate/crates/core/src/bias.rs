//! Influence-weight functions.
//!
//! A confirmation-bias weight `c(x_i, x_j)` is evaluated at an individual's
//! own opinion and a neighbor's opinion. A negativity-bias weight
//! `c̄(x̄_i, x_j)` is evaluated at her sensed expectation instead. Both are
//! modelled by [`BiasFamily`]; [`CompositeBias`] mixes the two.
//!
//! Most families are of the decomposed form `g(|f(a) - f(b)|)` with `f`
//! strictly increasing. The asymmetry comes from `f`: a nonlinear `f`
//! stretches distances differently on the two sides of the spectrum.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::opinion::Opinion;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BiasError {
    #[error("parameter {name} = {value} must be finite")]
    NonFinite { name: &'static str, value: f64 },
    #[error("invalid parameters: {0}")]
    Constraint(String),
    #[error("family can take the negative value {min} on [-1, 1]^2")]
    Negative { min: f64 },
    #[error("mixing weight {0} is outside [0, 1]")]
    MixingWeight(f64),
    #[error("zero denominator in biased-assimilation update")]
    ZeroDenominator,
    #[error("opinion {0} is outside [0, 1]")]
    UnitInterval(f64),
}

/// Serializable description of a closed-form family.
///
/// In JSON a family reads `{"family": "tanh-quadratic", "params": {"chi": 0.6, "gamma": 0.011}}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "kebab-case")]
pub enum FamilySpec {
    /// `chi - gamma * (tanh a - tanh b)^2`
    #[serde(rename_all = "snake_case")]
    TanhQuadratic { chi: f64, gamma: f64 },
    /// `chi - gamma * |a^3 - b^3|`
    #[serde(rename_all = "snake_case")]
    CubicAbs { chi: f64, gamma: f64 },
    /// `beta - gamma * |a - b|`, the classical symmetric weight.
    #[serde(rename_all = "snake_case")]
    LinearSymmetric { beta: f64, gamma: f64 },
    /// Bounded-confidence indicator: `a` when `eps_lo <= x_i - x_j < eps_hi`, else 0.
    #[serde(rename_all = "snake_case")]
    HkIndicator { eps_lo: f64, eps_hi: f64, a: f64 },
    /// `chi + gamma * (tanh a - tanh b)^2`, increasing in transformed distance.
    #[serde(rename_all = "snake_case")]
    NegTanhQuadratic { chi: f64, gamma: f64 },
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::TanhQuadratic { .. } => "tanh-quadratic",
            FamilySpec::CubicAbs { .. } => "cubic-abs",
            FamilySpec::LinearSymmetric { .. } => "linear-symmetric",
            FamilySpec::HkIndicator { .. } => "hk-indicator",
            FamilySpec::NegTanhQuadratic { .. } => "neg-tanh-quadratic",
        }
    }

    fn params(&self) -> Vec<(&'static str, f64)> {
        match *self {
            FamilySpec::TanhQuadratic { chi, gamma }
            | FamilySpec::CubicAbs { chi, gamma }
            | FamilySpec::NegTanhQuadratic { chi, gamma } => vec![("chi", chi), ("gamma", gamma)],
            FamilySpec::LinearSymmetric { beta, gamma } => vec![("beta", beta), ("gamma", gamma)],
            FamilySpec::HkIndicator { eps_lo, eps_hi, a } => {
                vec![("eps_lo", eps_lo), ("eps_hi", eps_hi), ("a", a)]
            }
        }
    }

    fn validate(&self) -> Result<(), BiasError> {
        for (name, value) in self.params() {
            if !value.is_finite() {
                return Err(BiasError::NonFinite { name, value });
            }
        }
        let fail = |msg: &str| Err(BiasError::Constraint(msg.to_string()));
        match *self {
            FamilySpec::TanhQuadratic { chi, gamma } | FamilySpec::CubicAbs { chi, gamma } => {
                if chi <= 0.0 || gamma < 0.0 {
                    return fail("need chi > 0 and gamma >= 0");
                }
            }
            FamilySpec::LinearSymmetric { beta, gamma } => {
                if !(beta >= gamma && gamma >= 0.0) {
                    return fail("need beta >= gamma >= 0");
                }
            }
            FamilySpec::HkIndicator { eps_lo, eps_hi, a } => {
                if !(eps_lo < 0.0 && eps_hi > 0.0 && a > 0.0) {
                    return fail("need eps_lo < 0 < eps_hi and a > 0");
                }
            }
            FamilySpec::NegTanhQuadratic { chi, gamma } => {
                if chi < 0.0 || gamma < 0.0 {
                    return fail("need chi >= 0 and gamma >= 0");
                }
            }
        }
        Ok(())
    }

    #[inline]
    fn eval(&self, a: f64, b: f64) -> f64 {
        match *self {
            FamilySpec::TanhQuadratic { chi, gamma } => {
                let d = a.tanh() - b.tanh();
                chi - gamma * d * d
            }
            FamilySpec::CubicAbs { chi, gamma } => chi - gamma * (a * a * a - b * b * b).abs(),
            FamilySpec::LinearSymmetric { beta, gamma } => beta - gamma * (a - b).abs(),
            FamilySpec::HkIndicator {
                eps_lo,
                eps_hi,
                a: level,
            } => {
                let diff = a - b;
                if eps_lo <= diff && diff < eps_hi {
                    level
                } else {
                    0.0
                }
            }
            FamilySpec::NegTanhQuadratic { chi, gamma } => {
                let d = a.tanh() - b.tanh();
                chi + gamma * d * d
            }
        }
    }

    /// Exact minimum over `[-1, 1]^2`. Every closed form here is monotone in
    /// `|f(a) - f(b)|` with `f` increasing, so the extremes sit at the corners.
    fn min_on_domain(&self) -> f64 {
        match *self {
            FamilySpec::TanhQuadratic { chi, gamma } => {
                let span = 2.0 * 1f64.tanh();
                chi - gamma * span * span
            }
            FamilySpec::CubicAbs { chi, gamma } => chi - 2.0 * gamma,
            FamilySpec::LinearSymmetric { beta, gamma } => beta - 2.0 * gamma,
            FamilySpec::HkIndicator { .. } => 0.0,
            FamilySpec::NegTanhQuadratic { chi, .. } => chi,
        }
    }

    fn decomposition(&self) -> Option<Decomposition> {
        match *self {
            FamilySpec::TanhQuadratic { chi, gamma } => {
                Some(Decomposition::new("tanh", f64::tanh, move |d| {
                    chi - gamma * d * d
                }))
            }
            FamilySpec::CubicAbs { chi, gamma } => Some(Decomposition::new(
                "cube",
                |x: f64| x * x * x,
                move |d| chi - gamma * d,
            )),
            FamilySpec::LinearSymmetric { beta, gamma } => Some(Decomposition::new(
                "identity",
                |x| x,
                move |d| beta - gamma * d,
            )),
            FamilySpec::HkIndicator { .. } => None,
            FamilySpec::NegTanhQuadratic { chi, gamma } => {
                Some(Decomposition::new("tanh", f64::tanh, move |d| {
                    chi + gamma * d * d
                }))
            }
        }
    }
}

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A weight of the form `g(|f(a) - f(b)|)`.
#[derive(Clone)]
pub struct Decomposition {
    label: String,
    f: ScalarFn,
    g: ScalarFn,
}

impl Decomposition {
    pub fn new(
        label: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        g: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Decomposition {
            label: label.into(),
            f: Arc::new(f),
            g: Arc::new(g),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn f(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    #[inline]
    pub fn g(&self, d: f64) -> f64 {
        (self.g)(d)
    }

    #[inline]
    pub fn eval(&self, a: f64, b: f64) -> f64 {
        self.g((self.f(a) - self.f(b)).abs())
    }
}

impl fmt::Debug for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Decomposition")
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}

/// Resolution of the sampled minimum check for user-supplied decompositions.
const DECOMPOSED_SAMPLES: usize = 201;

#[derive(Debug, Clone)]
enum Kind {
    Closed(FamilySpec),
    Decomposed(Decomposition),
}

/// A validated influence-weight function on `[-1, 1]^2`.
#[derive(Debug, Clone)]
pub struct BiasFamily {
    kind: Kind,
    min: f64,
}

impl BiasFamily {
    /// Validates a closed-form family.
    ///
    /// Families meant to encode confirmation bias (`tanh-quadratic`,
    /// `cubic-abs`) must be nonnegative on the whole domain. The
    /// `linear-symmetric` baseline is only held to `beta >= gamma >= 0` and
    /// may dip below zero for far-apart opinions; [`BiasFamily::min_on_domain`]
    /// exposes this and the dynamics refuse such a family.
    pub fn new(spec: FamilySpec) -> Result<Self, BiasError> {
        spec.validate()?;
        let min = spec.min_on_domain();
        let must_be_nonnegative = matches!(
            spec,
            FamilySpec::TanhQuadratic { .. } | FamilySpec::CubicAbs { .. }
        );
        if must_be_nonnegative && min < 0.0 {
            return Err(BiasError::Negative { min });
        }
        Ok(BiasFamily {
            kind: Kind::Closed(spec),
            min,
        })
    }

    pub fn tanh_quadratic(chi: f64, gamma: f64) -> Result<Self, BiasError> {
        Self::new(FamilySpec::TanhQuadratic { chi, gamma })
    }

    pub fn cubic_abs(chi: f64, gamma: f64) -> Result<Self, BiasError> {
        Self::new(FamilySpec::CubicAbs { chi, gamma })
    }

    pub fn linear_symmetric(beta: f64, gamma: f64) -> Result<Self, BiasError> {
        Self::new(FamilySpec::LinearSymmetric { beta, gamma })
    }

    pub fn hk_indicator(eps_lo: f64, eps_hi: f64, a: f64) -> Result<Self, BiasError> {
        Self::new(FamilySpec::HkIndicator { eps_lo, eps_hi, a })
    }

    pub fn neg_tanh_quadratic(chi: f64, gamma: f64) -> Result<Self, BiasError> {
        Self::new(FamilySpec::NegTanhQuadratic { chi, gamma })
    }

    /// Wraps a user-supplied `(f, g)` pair.
    ///
    /// The minimum is estimated on a 201-point-per-axis grid and must be
    /// nonnegative and finite; whether the pair actually encodes a bias is
    /// for the verifier to decide.
    pub fn decomposed(dec: Decomposition) -> Result<Self, BiasError> {
        let m = (DECOMPOSED_SAMPLES - 1) as f64;
        let pts: Vec<f64> = (0..DECOMPOSED_SAMPLES)
            .map(|k| (2.0 * k as f64 - m) / m)
            .collect();
        let mut min = f64::INFINITY;
        for &a in &pts {
            for &b in &pts {
                let v = dec.eval(a, b);
                if !v.is_finite() {
                    return Err(BiasError::NonFinite {
                        name: "g(|f(a) - f(b)|)",
                        value: v,
                    });
                }
                min = min.min(v);
            }
        }
        if min < 0.0 {
            return Err(BiasError::Negative { min });
        }
        Ok(BiasFamily {
            kind: Kind::Decomposed(dec),
            min,
        })
    }

    /// The closed-form description, if this is not a user decomposition.
    pub fn spec(&self) -> Option<&FamilySpec> {
        match &self.kind {
            Kind::Closed(s) => Some(s),
            Kind::Decomposed(_) => None,
        }
    }

    pub fn name(&self) -> &str {
        match &self.kind {
            Kind::Closed(s) => s.name(),
            Kind::Decomposed(_) => "decomposed",
        }
    }

    /// Minimum value over `[-1, 1]^2` (sampled for user decompositions).
    pub fn min_on_domain(&self) -> f64 {
        self.min
    }

    /// The `(f, g)` pair behind this family, when it has one.
    pub fn decomposition(&self) -> Option<Decomposition> {
        match &self.kind {
            Kind::Closed(s) => s.decomposition(),
            Kind::Decomposed(d) => Some(d.clone()),
        }
    }

    /// Raw evaluation, also used by the grid checkers.
    #[inline]
    pub fn value(&self, a: f64, b: f64) -> f64 {
        match &self.kind {
            Kind::Closed(s) => s.eval(a, b),
            Kind::Decomposed(d) => d.eval(a, b),
        }
    }
}

impl TryFrom<FamilySpec> for BiasFamily {
    type Error = BiasError;

    fn try_from(spec: FamilySpec) -> Result<Self, Self::Error> {
        BiasFamily::new(spec)
    }
}

/// Confirmation weight `c(x_i, x_j)`.
#[inline]
pub fn eval_conf(fam: &BiasFamily, x_i: Opinion, x_j: Opinion) -> f64 {
    fam.value(x_i.get(), x_j.get())
}

/// Negativity weight `c̄(x̄_i, x_j)`.
#[inline]
pub fn eval_neg(fam: &BiasFamily, xbar_i: Opinion, x_j: Opinion) -> f64 {
    fam.value(xbar_i.get(), x_j.get())
}

/// `(1 - beta) * negativity + beta * confirmation`.
#[derive(Debug, Clone)]
pub struct CompositeBias {
    beta: f64,
    conf: BiasFamily,
    neg: BiasFamily,
}

impl CompositeBias {
    pub fn new(beta: f64, conf: BiasFamily, neg: BiasFamily) -> Result<Self, BiasError> {
        if !(0.0..=1.0).contains(&beta) {
            return Err(BiasError::MixingWeight(beta));
        }
        Ok(CompositeBias { beta, conf, neg })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn conf(&self) -> &BiasFamily {
        &self.conf
    }

    pub fn neg(&self) -> &BiasFamily {
        &self.neg
    }
}

/// Combined weight individual `i` puts on `x_j`, given her own opinion and
/// her sensed expectation.
#[inline]
pub fn composite_weight(cb: &CompositeBias, x_i: Opinion, xbar_i: Opinion, x_j: Opinion) -> f64 {
    mix(
        cb.beta,
        &cb.conf,
        &cb.neg,
        x_i.get(),
        xbar_i.get(),
        x_j.get(),
    )
}

// The two end points skip the unused family so that `beta = 1` (resp. 0)
// reproduces the confirmation (resp. negativity) weight bit for bit.
#[inline]
pub(crate) fn mix(
    beta: f64,
    conf: &BiasFamily,
    neg: &BiasFamily,
    x_i: f64,
    xbar_i: f64,
    x_j: f64,
) -> f64 {
    if beta == 1.0 {
        conf.value(x_i, x_j)
    } else if beta == 0.0 {
        neg.value(xbar_i, x_j)
    } else {
        (1.0 - beta) * neg.value(xbar_i, x_j) + beta * conf.value(x_i, x_j)
    }
}

/// Weights of one two-agent biased-assimilation update on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssimilationStep {
    /// Updated opinion of individual `i`.
    pub next: f64,
    /// Effective multiplier applied to `x_j` in the numerator.
    pub neighbor_coefficient: f64,
}

/// One step of the two-agent biased-assimilation model:
///
/// ```text
/// (w_ii x_i + x_i^b w_ij x_j) / (w_ii + x_i^b w_ij x_j + (1 - x_i)^b w_ij (1 - x_j))
/// ```
///
/// Opinions live on `[0, 1]` here, not `[-1, 1]`.
pub fn eval_dandekar_step(
    w_ii: f64,
    w_ij: f64,
    b_i: f64,
    x_i: f64,
    x_j: f64,
) -> Result<AssimilationStep, BiasError> {
    for (name, value) in [("w_ii", w_ii), ("w_ij", w_ij), ("b_i", b_i)] {
        if !value.is_finite() {
            return Err(BiasError::NonFinite { name, value });
        }
    }
    if !(w_ii > 0.0 && w_ij >= 0.0 && b_i >= 0.0) {
        return Err(BiasError::Constraint(
            "need w_ii > 0, w_ij >= 0 and b_i >= 0".into(),
        ));
    }
    for x in [x_i, x_j] {
        if !(0.0..=1.0).contains(&x) {
            return Err(BiasError::UnitInterval(x));
        }
    }
    let agree = x_i.powf(b_i) * w_ij;
    let disagree = (1.0 - x_i).powf(b_i) * w_ij;
    let denom = w_ii + agree * x_j + disagree * (1.0 - x_j);
    if denom == 0.0 {
        return Err(BiasError::ZeroDenominator);
    }
    Ok(AssimilationStep {
        next: (w_ii * x_i + agree * x_j) / denom,
        neighbor_coefficient: agree / denom,
    })
}
