//! Integer partitions, the three per-partition credits, and the brute-force
//! weighted sums that serve as the ground truth for every faster route.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`brute_force_sum`].
pub const DEFAULT_ENUMERATION_CAP: usize = 45;

/// A weakly decreasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// The partition of zero.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Validates that `parts` is weakly decreasing and free of zeros.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Argument("partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Argument("partition parts must be weakly decreasing"));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest_part(&self) -> Option<usize> {
        self.parts.first().copied()
    }

    pub fn frequencies(&self) -> FrequencyVector {
        let mut mult = BTreeMap::new();
        for &p in &self.parts {
            *mult.entry(p).or_insert(0usize) += 1;
        }
        FrequencyVector { mult }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

/// Frequency notation `1^a1 2^a2 ...`; only parts that occur are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FrequencyVector {
    mult: BTreeMap<usize, usize>,
}

impl FrequencyVector {
    /// Multiplicity of part size `i` (zero when absent).
    pub fn multiplicity(&self, i: usize) -> usize {
        self.mult.get(&i).copied().unwrap_or(0)
    }

    /// `(part, multiplicity)` pairs in increasing part order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mult.iter().map(|(&i, &a)| (i, a))
    }

    pub fn n(&self) -> usize {
        self.mult.iter().map(|(i, a)| i * a).sum()
    }

    /// Back to the weakly decreasing list of parts.
    pub fn to_partition(&self) -> Partition {
        let mut parts = Vec::with_capacity(self.mult.values().sum());
        for (&i, &a) in self.mult.iter().rev() {
            parts.extend(core::iter::repeat_n(i, a));
        }
        Partition { parts }
    }
}

/// Per-partition credit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightScheme {
    /// `1 / (p1 p2 ... pk)`; sums to `b(n)`.
    ReciprocalProduct,
    /// `1 / prod(i^a_i a_i!)`, the inverse centralizer order; sums to 1.
    CycleIndex,
    /// `1 / prod(i!^a_i a_i!)`; sums to `Bell(n) / n!`.
    FactorialCycle,
}

impl WeightScheme {
    pub const ALL: [WeightScheme; 3] = [
        WeightScheme::ReciprocalProduct,
        WeightScheme::CycleIndex,
        WeightScheme::FactorialCycle,
    ];
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Denominator of the credit; the credit itself is always `1 / denominator`.
pub fn weight_denominator(p: &Partition, scheme: WeightScheme) -> BigUint {
    match scheme {
        WeightScheme::ReciprocalProduct => p
            .parts
            .iter()
            .fold(BigUint::one(), |acc, &x| acc * BigUint::from(x)),
        WeightScheme::CycleIndex => p.frequencies().iter().fold(BigUint::one(), |acc, (i, a)| {
            acc * BigUint::from(i).pow(a as u32) * factorial(a)
        }),
        WeightScheme::FactorialCycle => {
            p.frequencies().iter().fold(BigUint::one(), |acc, (i, a)| {
                acc * factorial(i).pow(a as u32) * factorial(a)
            })
        }
    }
}

/// Credit of `p` under `scheme`. The empty partition gets 1 under every scheme.
pub fn weight(p: &Partition, scheme: WeightScheme) -> BigRational {
    BigRational::new(One::one(), weight_denominator(p, scheme).into())
}

/// Every partition of `n` exactly once, in reverse-lexicographic order.
///
/// `n = 0` yields the single empty partition.
pub fn enumerate_partitions(n: usize) -> Partitions {
    Partitions {
        current: if n == 0 { Vec::new() } else { vec![n] },
        done: false,
    }
}

/// Iterator returned by [`enumerate_partitions`].
#[derive(Debug, Clone)]
pub struct Partitions {
    current: Vec<usize>,
    done: bool,
}

impl Partitions {
    fn advance(&mut self) {
        let parts = &mut self.current;
        let mut freed = 0usize;
        while parts.last() == Some(&1) {
            parts.pop();
            freed += 1;
        }
        let Some(last) = parts.last_mut() else {
            self.done = true;
            return;
        };
        *last -= 1;
        let cap = *last;
        freed += 1;
        while freed > 0 {
            let take = freed.min(cap);
            parts.push(take);
            freed -= take;
        }
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let out = Partition {
            parts: self.current.clone(),
        };
        self.advance();
        Some(out)
    }
}

impl core::iter::FusedIterator for Partitions {}

/// Sum of `weight(p, scheme)` over all partitions of `n`, capped at
/// [`DEFAULT_ENUMERATION_CAP`].
pub fn brute_force_sum(n: usize, scheme: WeightScheme) -> Result<BigRational> {
    brute_force_sum_capped(n, scheme, DEFAULT_ENUMERATION_CAP)
}

pub fn brute_force_sum_capped(n: usize, scheme: WeightScheme, cap: usize) -> Result<BigRational> {
    if n > cap {
        return Err(Error::EnumerationCap { n, cap });
    }
    // Credits are unit fractions; summing over a running common denominator
    // keeps the big-integer work to one gcd at the end.
    let mut num = BigUint::zero();
    let mut den = BigUint::one();
    for p in enumerate_partitions(n) {
        let d = weight_denominator(&p, scheme);
        let g = num_integer::Integer::gcd(&den, &d);
        let scale_acc = &d / &g;
        num = num * &scale_acc + &den / &g;
        den *= scale_acc;
    }
    Ok(BigRational::new(num.into(), den.into()))
}

/// Exact partition counts `p(n, k)` by largest part, `1 <= k <= n <= N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTriangle {
    rows: Vec<Vec<BigUint>>,
}

impl CountTriangle {
    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    /// `p(n, k)`; zero outside `1 <= k <= n`.
    pub fn get(&self, n: usize, k: usize) -> BigUint {
        if k == 0 || k > n || n > self.order() {
            return BigUint::zero();
        }
        self.rows[n][k - 1].clone()
    }

    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n]
    }

    /// `p(n)`, with `p(0) = 1`.
    pub fn row_sum(&self, n: usize) -> BigUint {
        if n == 0 {
            return BigUint::one();
        }
        self.rows[n].iter().sum()
    }
}

/// Builds `p(n, k)` from `p(n, k) = p(n-1, k-1) + p(n-k, k)` with `p(n, 1) = 1`.
pub fn p_table(order: usize) -> Result<CountTriangle> {
    if order == 0 {
        return Err(Error::Argument("p_table needs N >= 1"));
    }
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(order + 1);
    rows.push(Vec::new());
    for n in 1..=order {
        let mut row = Vec::with_capacity(n);
        row.push(BigUint::one());
        for k in 2..=n {
            let mut v = rows[n - 1].get(k - 2).cloned().unwrap_or_default();
            if n - k >= k {
                v += &rows[n - k][k - 1];
            }
            row.push(v);
        }
        rows.push(row);
    }
    Ok(CountTriangle { rows })
}
