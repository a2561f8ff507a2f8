//! Generating functions built on [`PowerSeries`].
//!
//! Infinite products are cut at factor `N`: factor `j` first touches
//! coefficient `j`, so factors above the truncation order are the identity.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::frac_dp::{b_series_exact_capped, BnSeries, DEFAULT_EXACT_CAP};
use crate::series::{ExactSeries, PowerSeries, Scalar};

/// `prod_{j=1..N} 1 / (1 - q^j / j)`, whose coefficient `n` is `b(n)`.
pub fn euler_product_b<T: Scalar>(order: usize) -> Result<PowerSeries<T>> {
    if order == 0 {
        return Err(Error::Argument("euler product needs N >= 1"));
    }
    let mut s = PowerSeries::one(order);
    for j in 1..=order {
        s.div_one_minus_monomial(&(T::one() / T::from_usize(j)), j);
    }
    Ok(s)
}

/// `(q^k / k) / prod_{j=1..k} (1 - q^j / j)`, whose coefficient `n` is `b(n, k)`.
pub fn gf_bnk<T: Scalar>(order: usize, k: usize) -> Result<PowerSeries<T>> {
    if k == 0 || k > order {
        return Err(Error::ColumnOutOfRange { k, order });
    }
    let mut s = PowerSeries::monomial(order, T::one() / T::from_usize(k), k);
    for j in 1..=k {
        s.div_one_minus_monomial(&(T::one() / T::from_usize(j)), j);
    }
    Ok(s)
}

/// `sum_{i=1..N} q^i / i`, i.e. `-log(1 - q)` truncated.
pub fn neg_log_one_minus_q<T: Scalar>(order: usize) -> PowerSeries<T> {
    PowerSeries::from_fn(order, |i| {
        if i == 0 {
            T::zero()
        } else {
            T::one() / T::from_usize(i)
        }
    })
}

/// `exp(sum q^i / i)`; every coefficient is the cycle-index count, which is 1.
pub fn cycle_identity_series(order: usize) -> Result<ExactSeries> {
    if order == 0 {
        return Err(Error::Argument("cycle identity needs N >= 1"));
    }
    neg_log_one_minus_q(order).exp()
}

/// `exp(exp(q) - 1)`; coefficient `n` is `Bell(n) / n!`.
pub fn bell_series(order: usize) -> Result<ExactSeries> {
    if order == 0 {
        return Err(Error::Argument("bell series needs N >= 1"));
    }
    let mut fact = BigUint::from(1u32);
    let mut inner = Vec::with_capacity(order + 1);
    inner.push(BigRational::zero());
    for i in 1..=order {
        fact *= BigUint::from(i);
        inner.push(BigRational::new(1.into(), fact.clone().into()));
    }
    PowerSeries::truncated(order, inner).exp()
}

/// `Bell(0), ..., Bell(N)` from the Bell triangle.
pub fn bell_triangle(order: usize) -> Vec<BigUint> {
    let mut bells = Vec::with_capacity(order + 1);
    let mut row = vec![BigUint::from(1u32)];
    bells.push(BigUint::from(1u32));
    for _ in 1..=order {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().cloned().unwrap_or_default());
        for v in &row {
            let s = next.last().cloned().unwrap_or_default() + v;
            next.push(s);
        }
        bells.push(next[0].clone());
        row = next;
    }
    bells
}

/// Twisted coefficients `c_S(n)` of `(1 - q)^2 prod 1 / (1 - q^j / j)`.
pub fn sawin_coeffs<T: Scalar>(order: usize) -> Result<PowerSeries<T>> {
    if order < 2 {
        return Err(Error::Argument("twisted coefficients need N >= 2"));
    }
    let one_minus_q = PowerSeries::truncated(order, [T::one(), -T::one()]);
    let square = one_minus_q.mul(&one_minus_q)?;
    euler_product_b(order)?.mul(&square)
}

/// Partial sum `S_m` of the twisted coefficients, in both forms.
#[derive(Debug, Clone, PartialEq)]
pub struct SawinTail {
    pub m: usize,
    /// `c_S(0) + ... + c_S(m)`.
    pub partial_sum: BigRational,
    /// `b(m) - b(m-1)` with `b(-1) = 0`.
    pub telescoped: BigRational,
    /// `|c_S(0)| + ... + |c_S(m)|`.
    pub abs_partial_sum: BigRational,
}

/// `S_m` for `0 <= m <= N`, summed directly from [`sawin_coeffs`] and
/// checked against `b(m) - b(m-1)` from the exact recurrence.
pub fn sawin_partial_sums(order: usize) -> Result<Vec<SawinTail>> {
    sawin_partial_sums_capped(order, DEFAULT_EXACT_CAP)
}

pub fn sawin_partial_sums_capped(order: usize, cap: usize) -> Result<Vec<SawinTail>> {
    let c = sawin_coeffs::<BigRational>(order)?;
    let b = b_series_exact_capped(order, cap)?;
    let mut out = Vec::with_capacity(order + 1);
    let mut s = BigRational::zero();
    let mut abs = BigRational::zero();
    for m in 0..=order {
        s += c.coeff(m);
        abs += c.coeff(m).abs();
        let telescoped = if m == 0 {
            b.get(0).clone()
        } else {
            b.get(m) - b.get(m - 1)
        };
        if telescoped != s {
            return Err(Error::TelescopeMismatch { m });
        }
        out.push(SawinTail {
            m,
            partial_sum: s.clone(),
            telescoped,
            abs_partial_sum: abs.clone(),
        });
    }
    Ok(out)
}

/// `b(m) - b(m-1)` for `1 <= m <= N`, the float continuation of `S_m`.
pub fn telescoped_tail_float(bn: &BnSeries<f64>) -> Vec<(usize, f64)> {
    (1..=bn.order())
        .map(|m| (m, bn.get(m) - bn.get(m - 1)))
        .collect()
}
