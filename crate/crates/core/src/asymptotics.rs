//! Limit estimates for `b(n)/n`: the two-point `c0 + c1/n` fit, the
//! harmonic-product route to `exp(-gamma)`, and quadrature of the limit shape.

use crate::error::{Error, Result};
use crate::frac_dp::{b_series_float, BnSeries, FxSample};

/// Reference constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaConstants {
    pub euler_gamma: f64,
    pub exp_neg_gamma: f64,
    pub exp_e_minus_1: f64,
}

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
#[allow(clippy::excessive_precision)]
pub const EXP_NEG_GAMMA: f64 = 0.561_459_483_566_885_169_8;
pub const EXP_E_MINUS_1: f64 = 5.574_941_524_760_881;

pub const CONSTANTS: GammaConstants = GammaConstants {
    euler_gamma: EULER_GAMMA,
    exp_neg_gamma: EXP_NEG_GAMMA,
    exp_e_minus_1: EXP_E_MINUS_1,
};

/// Solution of `c0 + c1/n = r` at two indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnsatzFit {
    pub n1: usize,
    pub n2: usize,
    pub c0: f64,
    pub c1: f64,
}

impl AnsatzFit {
    pub fn eval(&self, n: usize) -> f64 {
        self.c0 + self.c1 / n as f64
    }
}

/// Exact 2x2 solve of `c0 + c1/n_i = r_i`.
pub fn ansatz_fit(p1: (usize, f64), p2: (usize, f64)) -> Result<AnsatzFit> {
    let ((n1, r1), (n2, r2)) = (p1, p2);
    if n1 == n2 || n1 == 0 || n2 == 0 {
        return Err(Error::SingularFit);
    }
    if !r1.is_finite() || !r2.is_finite() {
        return Err(Error::Argument("ansatz fit needs finite ratios"));
    }
    let (x1, x2) = (1.0 / n1 as f64, 1.0 / n2 as f64);
    let c1 = (r1 - r2) / (x1 - x2);
    let c0 = r1 - c1 * x1;
    Ok(AnsatzFit { n1, n2, c0, c1 })
}

/// `exp(log m - H_m)`, harmonic sum taken in increasing order.
pub fn gamma_product_partial(m: usize) -> f64 {
    assert!(m >= 1, "m must be positive");
    let h: f64 = (1..=m).map(|k| 1.0 / k as f64).sum();
    libm::exp(libm::log(m as f64) - h)
}

/// Raw ratio and two-point fit at the top of a float `b(n)` series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CEstimate {
    pub n: usize,
    pub ratio: f64,
    pub fit: AnsatzFit,
    pub raw_gap: f64,
    pub ansatz_gap: f64,
}

/// Estimate from an existing series, fitting at `(N-1, N)`.
pub fn estimate_c_from(bn: &BnSeries<f64>) -> Result<CEstimate> {
    let n = bn.order();
    if n < 2 {
        return Err(Error::Argument("estimate needs N >= 2"));
    }
    let r = |i: usize| bn.get(i) / i as f64;
    let ratio = r(n);
    let fit = ansatz_fit((n - 1, r(n - 1)), (n, ratio))?;
    Ok(CEstimate {
        n,
        ratio,
        fit,
        raw_gap: libm::fabs(ratio - EXP_NEG_GAMMA),
        ansatz_gap: libm::fabs(fit.c0 - EXP_NEG_GAMMA),
    })
}

/// Runs the float sweep to `N` and estimates the limit.
pub fn estimate_c(n: usize) -> Result<CEstimate> {
    if n < 2 {
        return Err(Error::Argument("estimate needs N >= 2"));
    }
    estimate_c_from(&b_series_float(n))
}

/// Minimum grid size accepted by [`integrate_f`].
pub const MIN_QUADRATURE_POINTS: usize = 10;

/// Composite trapezoid over `[0, 1]`. The leftmost sample is extended
/// constantly over `[0, h]`.
pub fn integrate_f(sample: &FxSample) -> Result<f64> {
    let pts = &sample.points;
    if pts.len() < MIN_QUADRATURE_POINTS {
        return Err(Error::TooFewSamples {
            got: pts.len(),
            need: MIN_QUADRATURE_POINTS,
        });
    }
    let h = sample.resolution.step();
    let mut total = h * pts[0].value;
    for w in pts.windows(2) {
        total += 0.5 * h * (w[0].value + w[1].value);
    }
    Ok(total)
}
