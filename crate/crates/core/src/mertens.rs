//! Signed counting of `{1, ..., n}`: the Moebius function and its prefix sums.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// `mu(i)` and `M(i) = mu(1) + ... + mu(i)` for `1 <= i <= N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MertensTable {
    mu: Vec<i8>,
    prefix: Vec<i64>,
    primes: Vec<usize>,
}

impl MertensTable {
    pub fn order(&self) -> usize {
        self.mu.len() - 1
    }

    pub fn mu(&self, i: usize) -> i8 {
        self.mu[i]
    }

    /// `M(n)`; `M(0) = 0`.
    pub fn m(&self, n: usize) -> i64 {
        self.prefix[n]
    }

    /// `M(1), ..., M(N)`.
    pub fn values(&self) -> &[i64] {
        &self.prefix[1..]
    }

    pub fn primes(&self) -> &[usize] {
        &self.primes
    }
}

/// Linear sieve for `mu` over `1..=order`, then prefix sums.
pub fn mertens(order: usize) -> Result<MertensTable> {
    if order == 0 {
        return Err(Error::Argument("mertens needs N >= 1"));
    }
    let mut mu = vec![0i8; order + 1];
    let mut composite = vec![false; order + 1];
    let mut primes = Vec::new();
    mu[1] = 1;
    for i in 2..=order {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let Some(ip) = i.checked_mul(p).filter(|&ip| ip <= order) else {
                break;
            };
            composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    let mut prefix = vec![0i64; order + 1];
    for i in 1..=order {
        prefix[i] = prefix[i - 1] + i64::from(mu[i]);
    }
    Ok(MertensTable { mu, prefix, primes })
}
