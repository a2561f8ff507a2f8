//! Truncated formal power series over exact rationals or `f64`.
//!
//! A series of order `N` carries exactly the coefficients of `q^0 .. q^N`.
//! Binary operations demand equal orders; nothing is ever silently resized.

use alloc::vec::Vec;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient field shared by the series engine and the recurrences.
pub trait Scalar:
    Clone
    + PartialEq
    + core::fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_usize(n: usize) -> Self;
    fn abs_value(&self) -> Self;
    fn to_f64(&self) -> f64;
}

impl Scalar for BigRational {
    fn from_usize(n: usize) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn abs_value(&self) -> Self {
        self.abs()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn from_usize(n: usize) -> Self {
        n as f64
    }

    fn abs_value(&self) -> Self {
        libm::fabs(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<T> {
    coeffs: Vec<T>,
}

pub type ExactSeries = PowerSeries<BigRational>;

impl<T: Scalar> PowerSeries<T> {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: (0..=order).map(|_| T::zero()).collect(),
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, T::one(), 0)
    }

    /// `c q^j`, or the zero series when `j > order`.
    pub fn monomial(order: usize, c: T, j: usize) -> Self {
        let mut s = Self::zero(order);
        if j <= order {
            s.coeffs[j] = c;
        }
        s
    }

    /// Keeps the first `order + 1` coefficients of `coeffs`, padding with zeros.
    pub fn truncated<I: IntoIterator<Item = T>>(order: usize, coeffs: I) -> Self {
        let mut v: Vec<T> = coeffs.into_iter().take(order + 1).collect();
        v.resize(order + 1, T::zero());
        PowerSeries { coeffs: v }
    }

    /// Series whose coefficient `i` is `f(i)` for `i = 0..=order`.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> T) -> Self {
        PowerSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &T {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self::from_fn(self.order(), |i| {
            self.coeffs[i].clone() + other.coeffs[i].clone()
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self::from_fn(self.order(), |i| {
            self.coeffs[i].clone() - other.coeffs[i].clone()
        }))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.order(), |i| -self.coeffs[i].clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_fn(self.order(), |i| self.coeffs[i].clone() * c.clone())
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let acc = core::mem::replace(&mut out.coeffs[i + j], T::zero());
                out.coeffs[i + j] = acc + a.clone() * b.clone();
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inv(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.order();
        let inv0 = T::one() / a0.clone();
        let mut out: Vec<T> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for m in 1..=n {
            let mut acc = T::zero();
            for k in 1..=m {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc = acc + a.clone() * out[m - k].clone();
                }
            }
            out.push(-(acc * inv0.clone()));
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// Formal derivative, keeping the same order (top coefficient becomes 0).
    pub fn derivative(&self) -> Self {
        let n = self.order();
        Self::from_fn(n, |i| {
            if i < n {
                self.coeffs[i + 1].clone() * T::from_usize(i + 1)
            } else {
                T::zero()
            }
        })
    }

    /// Formal antiderivative with zero constant term; the `q^(N+1)` term is dropped.
    pub fn integral(&self) -> Self {
        Self::from_fn(self.order(), |i| {
            if i == 0 {
                T::zero()
            } else {
                self.coeffs[i - 1].clone() / T::from_usize(i)
            }
        })
    }

    /// `exp(a)` for `a(0) = 0`, from `y' = a' y`: `n y_n = sum_k k a_k y_(n-k)`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ExpConstantTerm);
        }
        let n = self.order();
        let weighted: Vec<T> = (0..=n)
            .map(|k| self.coeffs[k].clone() * T::from_usize(k))
            .collect();
        let mut y: Vec<T> = Vec::with_capacity(n + 1);
        y.push(T::one());
        for m in 1..=n {
            let mut acc = T::zero();
            for k in 1..=m {
                if !weighted[k].is_zero() {
                    acc = acc + weighted[k].clone() * y[m - k].clone();
                }
            }
            y.push(acc / T::from_usize(m));
        }
        Ok(PowerSeries { coeffs: y })
    }

    /// `log(a)` for `a(0) = 1`, from `a l' = a'`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::LogConstantTerm);
        }
        let n = self.order();
        // l_m = a_m - (1/m) sum_{k=1}^{m-1} k l_k a_(m-k)
        let mut l: Vec<T> = Vec::with_capacity(n + 1);
        l.push(T::zero());
        for m in 1..=n {
            let mut acc = T::zero();
            for (k, lk) in l.iter().enumerate().skip(1) {
                let a = &self.coeffs[m - k];
                if !a.is_zero() && !lk.is_zero() {
                    acc = acc + T::from_usize(k) * lk.clone() * a.clone();
                }
            }
            l.push(self.coeffs[m].clone() - acc / T::from_usize(m));
        }
        Ok(PowerSeries { coeffs: l })
    }

    /// In-place division by `1 - c q^j` (`j >= 1`), an O(N) sweep.
    pub fn div_one_minus_monomial(&mut self, c: &T, j: usize) {
        assert!(j >= 1, "divisor must be 1 - c q^j with j >= 1");
        for i in j..self.coeffs.len() {
            let prev = self.coeffs[i - j].clone();
            if !prev.is_zero() {
                let acc = core::mem::replace(&mut self.coeffs[i], T::zero());
                self.coeffs[i] = acc + c.clone() * prev;
            }
        }
    }

    /// In-place multiplication by `1 - c q^j` (`j >= 1`).
    pub fn mul_one_minus_monomial(&mut self, c: &T, j: usize) {
        assert!(j >= 1, "factor must be 1 - c q^j with j >= 1");
        for i in (j..self.coeffs.len()).rev() {
            let prev = self.coeffs[i - j].clone();
            if !prev.is_zero() {
                let acc = core::mem::replace(&mut self.coeffs[i], T::zero());
                self.coeffs[i] = acc - c.clone() * prev;
            }
        }
    }

    /// Sum of the retained coefficients (evaluation at `q = 1` of the truncation).
    pub fn coefficient_sum(&self) -> T {
        self.coeffs.iter().cloned().fold(T::zero(), |a, b| a + b)
    }
}
