//! Prime generation: a cached sieve of Eratosthenes, prime windows,
//! prime counting and the nth prime.

use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest bound any sweep may request from the sieve.
pub const SWEEP_CEILING: u64 = 10_000_000;

/// A closed range of primes `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeWindow {
    pub lo: u64,
    pub hi: u64,
}

impl PrimeWindow {
    pub fn new(lo: u64, hi: u64) -> Result<Self> {
        if lo < 2 {
            // [1, hi] is accepted but starts at the first prime anyway
            return Ok(PrimeWindow { lo: lo.max(1), hi });
        }
        if hi < lo {
            return Err(Error::Domain(format!("window [{lo}, {hi}] is empty-reversed")));
        }
        Ok(PrimeWindow { lo, hi })
    }
}

struct Sieve {
    limit: u64,
    is_prime: Vec<bool>,
    primes: Vec<u64>,
}

impl Sieve {
    fn build(limit: u64) -> Sieve {
        let n = limit as usize;
        let mut is_prime = vec![true; n + 1];
        is_prime[0] = false;
        if n >= 1 {
            is_prime[1] = false;
        }
        let mut i = 2usize;
        while i * i <= n {
            if is_prime[i] {
                let mut j = i * i;
                while j <= n {
                    is_prime[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        let primes = (2..=n).filter(|&k| is_prime[k]).map(|k| k as u64).collect();
        Sieve { limit, is_prime, primes }
    }
}

static CACHE: RwLock<Option<Arc<Sieve>>> = RwLock::new(None);

fn sieve_up_to(limit: u64) -> Result<Arc<Sieve>> {
    if limit > SWEEP_CEILING {
        return Err(Error::Capacity(format!(
            "requested sieve bound {limit} exceeds ceiling {SWEEP_CEILING}"
        )));
    }
    if let Some(s) = CACHE.read().unwrap().as_ref() {
        if s.limit >= limit {
            return Ok(Arc::clone(s));
        }
    }
    let mut guard = CACHE.write().unwrap();
    if let Some(s) = guard.as_ref() {
        if s.limit >= limit {
            return Ok(Arc::clone(s));
        }
    }
    // Grow geometrically so repeated slightly-larger requests don't rebuild.
    let target = limit.max(guard.as_ref().map_or(0, |s| s.limit * 2)).max(1 << 16);
    let target = target.min(SWEEP_CEILING).max(limit);
    let s = Arc::new(Sieve::build(target));
    *guard = Some(Arc::clone(&s));
    Ok(s)
}

/// The primes in `w`, ascending.
pub fn primes_in(w: PrimeWindow) -> Result<Vec<u64>> {
    let s = sieve_up_to(w.hi)?;
    let start = s.primes.partition_point(|&p| p < w.lo);
    let end = s.primes.partition_point(|&p| p <= w.hi);
    Ok(s.primes[start..end].to_vec())
}

/// Primality test within the sieve range.
pub fn is_prime(n: u64) -> Result<bool> {
    if n < 2 {
        return Ok(false);
    }
    let s = sieve_up_to(n)?;
    Ok(s.is_prime[n as usize])
}

/// pi(x): the number of primes not exceeding `x`.
pub fn prime_count(x: u64) -> Result<u64> {
    if x < 2 {
        return Ok(0);
    }
    let s = sieve_up_to(x)?;
    Ok(s.primes.partition_point(|&p| p <= x) as u64)
}

/// The nth prime, 1-indexed: `nth_prime(1) == 2`.
pub fn nth_prime(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("nth_prime is 1-indexed".into()));
    }
    // The nth prime is below n (ln n + ln ln n) for n >= 6.
    let mut bound = 64u64;
    loop {
        let s = sieve_up_to(bound)?;
        if let Some(&p) = s.primes.get(n as usize - 1) {
            return Ok(p);
        }
        if bound >= SWEEP_CEILING {
            return Err(Error::Capacity(format!("nth_prime({n}) exceeds the sieve ceiling")));
        }
        bound = (bound * 4).min(SWEEP_CEILING);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_primes(lo: u64, hi: u64) -> Vec<u64> {
        (lo.max(2)..=hi)
            .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .collect()
    }

    #[test]
    fn small_windows() {
        let w = PrimeWindow::new(2, 10).unwrap();
        assert_eq!(primes_in(w).unwrap(), vec![2, 3, 5, 7]);
        let w = PrimeWindow::new(14, 16).unwrap();
        assert!(primes_in(w).unwrap().is_empty());
        let w = PrimeWindow::new(1, 100).unwrap();
        assert_eq!(primes_in(w).unwrap().len(), 25);
    }

    #[test]
    fn matches_naive_sieve() {
        let w = PrimeWindow::new(2, 2000).unwrap();
        assert_eq!(primes_in(w).unwrap(), naive_primes(2, 2000));
        let w = PrimeWindow::new(1234, 1500).unwrap();
        assert_eq!(primes_in(w).unwrap(), naive_primes(1234, 1500));
    }

    #[test]
    fn counting() {
        assert_eq!(prime_count(10).unwrap(), 4);
        assert_eq!(prime_count(100).unwrap(), 25);
        assert_eq!(nth_prime(1).unwrap(), 2);
        // mutual inverse on a stretch of the range
        for n in 1..500 {
            let p = nth_prime(n).unwrap();
            assert_eq!(prime_count(p).unwrap(), n);
            assert_eq!(prime_count(p - 1).unwrap(), n - 1);
        }
    }

    #[test]
    fn ceiling_is_enforced() {
        assert!(matches!(
            primes_in(PrimeWindow { lo: 2, hi: SWEEP_CEILING + 1 }),
            Err(Error::Capacity(_))
        ));
    }
}
