//! The reciprocally weighted counts `b(n, k)` (largest part `k`) and `b(n)`.
//!
//! Both routes use
//!
//! ```text
//! b(n, k) = ((k - 1) / k) b(n - 1, k - 1) + (1 / k) b(n - k, k),
//! b(n, 1) = 1,   b(n, k) = 0 for k > n.
//! ```
//!
//! The exact route stores the whole triangle. The float route sweeps one
//! column at a time: column `k` reads column `k - 1` at offset one and itself
//! at offset `k`, so two length-`N` buffers suffice.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::Scalar;

/// Largest `N` accepted by the exact routes unless a cap is passed explicitly.
pub const DEFAULT_EXACT_CAP: usize = 400;

/// Exact `b(n, k)` for `1 <= k <= n <= N`.
#[derive(Debug, Clone, PartialEq)]
pub struct FracTriangle {
    rows: Vec<Vec<BigRational>>,
}

impl FracTriangle {
    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    /// `b(n, k)`, zero outside `1 <= k <= n`.
    pub fn get(&self, n: usize, k: usize) -> BigRational {
        if k == 0 || k > n || n > self.order() {
            return BigRational::zero();
        }
        self.rows[n][k - 1].clone()
    }

    /// Row `n`: `b(n, 1), ..., b(n, n)`.
    pub fn row(&self, n: usize) -> &[BigRational] {
        &self.rows[n]
    }

    /// `b(n)`, with `b(0) = 1`.
    pub fn row_sum(&self, n: usize) -> BigRational {
        if n == 0 {
            return BigRational::one();
        }
        sum_rationals(&self.rows[n])
    }

    /// Column `k` as `b(0, k), ..., b(N, k)`.
    pub fn column(&self, k: usize) -> Vec<BigRational> {
        (0..=self.order()).map(|n| self.get(n, k)).collect()
    }
}

// Entries of one row share denominators dividing lcm(1..n); summing over a
// common denominator avoids a gcd per addition.
fn sum_rationals(values: &[BigRational]) -> BigRational {
    let mut den = BigInt::one();
    for v in values {
        den = den.lcm(v.denom());
    }
    let num: BigInt = values.iter().map(|v| v.numer() * (&den / v.denom())).sum();
    BigRational::new(num, den)
}

/// Exact triangle under [`DEFAULT_EXACT_CAP`].
pub fn bnk_exact(order: usize) -> Result<FracTriangle> {
    bnk_exact_capped(order, DEFAULT_EXACT_CAP)
}

pub fn bnk_exact_capped(order: usize, cap: usize) -> Result<FracTriangle> {
    if order == 0 {
        return Err(Error::Argument("b(n,k) table needs N >= 1"));
    }
    if order > cap {
        return Err(Error::ExactCap { n: order, cap });
    }
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(order + 1);
    rows.push(Vec::new());
    for n in 1..=order {
        let mut row = Vec::with_capacity(n);
        row.push(BigRational::one());
        for k in 2..=n {
            let kk = BigInt::from(k);
            let mut acc = rows[n - 1].get(k - 2).map_or_else(BigRational::zero, |v| {
                v * BigRational::new(BigInt::from(k - 1), kk.clone())
            });
            if n - k >= k {
                acc += &rows[n - k][k - 1] / BigRational::from_integer(kk);
            }
            row.push(acc);
        }
        rows.push(row);
    }
    Ok(FracTriangle { rows })
}

/// `b(0), ..., b(N)` in either exact or float arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct BnSeries<T> {
    values: Vec<T>,
}

impl<T: Scalar> BnSeries<T> {
    pub fn from_values(values: Vec<T>) -> Self {
        assert!(!values.is_empty(), "series must hold at least b(0)");
        BnSeries { values }
    }

    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> &T {
        &self.values[n]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// `(n, b(n)/n)` for `1 <= n <= N`.
    pub fn ratios(&self) -> Vec<(usize, T)> {
        ratio_series(self)
    }
}

/// Elementwise `b(n) / n` for `1 <= n <= N`.
pub fn ratio_series<T: Scalar>(bn: &BnSeries<T>) -> Vec<(usize, T)> {
    (1..=bn.order())
        .map(|n| (n, bn.values[n].clone() / T::from_usize(n)))
        .collect()
}

/// Exact `b(n)` as row sums of [`bnk_exact`].
pub fn b_series_exact(order: usize) -> Result<BnSeries<BigRational>> {
    b_series_exact_capped(order, DEFAULT_EXACT_CAP)
}

pub fn b_series_exact_capped(order: usize, cap: usize) -> Result<BnSeries<BigRational>> {
    let t = bnk_exact_capped(order, cap)?;
    Ok(BnSeries {
        values: (0..=order).map(|n| t.row_sum(n)).collect(),
    })
}

/// Options for the float sweep.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FloatOptions {
    /// Kahan-compensated accumulation of `b(n)` across columns.
    pub compensated: bool,
}

/// Column-by-column float evaluation of `b(n, k)` for `n <= N`.
///
/// Each call to [`ColumnSweep::next_column`] yields column `k` as a slice
/// indexed by `n`; entries with `n < k` are not meaningful and must be read
/// as zero.
#[derive(Debug, Clone)]
pub struct ColumnSweep {
    order: usize,
    k: usize,
    prev: Vec<f64>,
    cur: Vec<f64>,
}

impl ColumnSweep {
    pub fn new(order: usize) -> Self {
        ColumnSweep {
            order,
            k: 0,
            prev: vec![0.0; order + 1],
            cur: vec![0.0; order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Advances to the next column and returns `(k, column)`.
    pub fn next_column(&mut self) -> Option<(usize, &[f64])> {
        if self.k >= self.order {
            return None;
        }
        self.k += 1;
        let k = self.k;
        core::mem::swap(&mut self.prev, &mut self.cur);
        let cur = &mut self.cur;
        if k == 1 {
            cur[1..].fill(1.0);
        } else {
            let km1 = (k - 1) as f64;
            let kf = k as f64;
            for n in k..=self.order {
                let own = if n - k >= k { cur[n - k] } else { 0.0 };
                cur[n] = (km1 * self.prev[n - 1] + own) / kf;
            }
        }
        Some((k, &self.cur[..]))
    }
}

/// Float `b(n)` via the column sweep. O(N) memory and O(N^2) time.
pub fn b_series_float(order: usize) -> BnSeries<f64> {
    b_series_float_with(order, FloatOptions::default())
}

pub fn b_series_float_with(order: usize, opts: FloatOptions) -> BnSeries<f64> {
    let mut total = vec![0.0f64; order + 1];
    let mut carry = if opts.compensated {
        vec![0.0f64; order + 1]
    } else {
        Vec::new()
    };
    total[0] = 1.0;
    let mut sweep = ColumnSweep::new(order);
    while let Some((k, col)) = sweep.next_column() {
        if opts.compensated {
            for n in k..=order {
                let y = col[n] - carry[n];
                let t = total[n] + y;
                carry[n] = (t - total[n]) - y;
                total[n] = t;
            }
        } else {
            for n in k..=order {
                total[n] += col[n];
            }
        }
    }
    BnSeries { values: total }
}

/// Fully stored float triangle, for tabulation and residual checks at modest `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatTriangle {
    rows: Vec<Vec<f64>>,
}

impl FloatTriangle {
    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> f64 {
        if k == 0 || k > n || n > self.order() {
            return 0.0;
        }
        self.rows[n][k - 1]
    }

    pub fn row(&self, n: usize) -> &[f64] {
        &self.rows[n]
    }
}

/// The float sweep with every column retained, transposed into rows.
pub fn bnk_float(order: usize) -> Result<FloatTriangle> {
    if order == 0 {
        return Err(Error::Argument("b(n,k) table needs N >= 1"));
    }
    let mut rows: Vec<Vec<f64>> = (0..=order).map(Vec::with_capacity).collect();
    let mut sweep = ColumnSweep::new(order);
    while let Some((k, col)) = sweep.next_column() {
        for n in k..=order {
            rows[n].push(col[n]);
        }
    }
    Ok(FloatTriangle { rows })
}

/// Grid step `1/m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Resolution {
    steps: usize,
}

impl Resolution {
    /// Step `1/steps`.
    pub fn unit(steps: usize) -> Result<Self> {
        if steps == 0 {
            return Err(Error::Resolution);
        }
        Ok(Resolution { steps })
    }

    /// Step `num/den`, accepted only when it reduces to a unit fraction.
    pub fn from_ratio(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::Resolution);
        }
        let g = num.gcd(&den);
        if num / g != 1 {
            return Err(Error::Resolution);
        }
        Resolution::unit(usize::try_from(den / g).map_err(|_| Error::Resolution)?)
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn step(&self) -> f64 {
        1.0 / self.steps as f64
    }
}

/// One grid sample `x = j/m`, `k = floor(n x)`, `value = b(n, k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FxPoint {
    pub j: usize,
    pub x: f64,
    pub k: usize,
    pub value: f64,
}

/// Samples of `x -> b(n, floor(n x))` on `x = h, 2h, ..., 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FxSample {
    pub n: usize,
    pub resolution: Resolution,
    pub points: Vec<FxPoint>,
}

impl FxSample {
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.value)
    }

    /// Indices `j` where the profile increases (`value(j) > value(j-1)`).
    pub fn monotonicity_violations(&self) -> Vec<usize> {
        self.points
            .windows(2)
            .filter(|w| w[1].value > w[0].value)
            .map(|w| w[1].j)
            .collect()
    }
}

/// Row `n` of the float triangle at `floor(n j / m)`, `j = 1..=m`.
///
/// The floor is taken in integer arithmetic, so `x = 1` maps to `k = n` exactly.
pub fn sample_f(n: usize, resolution: Resolution) -> Result<FxSample> {
    let m = resolution.steps();
    if n < m {
        return Err(Error::GridTooFine { n, steps: m });
    }
    let wanted: Vec<usize> = (1..=m).map(|j| n * j / m).collect();
    let mut row = vec![0.0f64; n + 1];
    let mut sweep = ColumnSweep::new(n);
    while let Some((k, col)) = sweep.next_column() {
        row[k] = col[n];
    }
    let points = wanted
        .iter()
        .enumerate()
        .map(|(i, &k)| FxPoint {
            j: i + 1,
            x: (i + 1) as f64 / m as f64,
            k,
            value: row[k],
        })
        .collect();
    Ok(FxSample {
        n,
        resolution,
        points,
    })
}
