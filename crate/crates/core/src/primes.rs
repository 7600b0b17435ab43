//! Primality testing and an incremental prime sieve.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

const WITNESSES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller–Rabin with the first twelve prime bases.
///
/// Deterministic below 3.3·10^24, which covers every 64-bit input. Above that
/// bound a `true` means "strong probable prime to all twelve bases".
pub fn is_prime(n: &BigUint) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &w in &WITNESSES {
        let w = BigUint::from(w);
        if n == &w {
            return true;
        }
        if (n % &w).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let twos = n_minus_one.trailing_zeros().unwrap_or(0);
    let odd = &n_minus_one >> twos;
    'witness: for &w in &WITNESSES {
        let mut x = BigUint::from(w).modpow(&odd, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..twos {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_prime_u64(n: u64) -> bool {
    is_prime(&BigUint::from(n))
}

/// Primes discovered so far, grown one segment at a time up to `cap`.
#[derive(Clone, Debug)]
pub struct PrimeSieve {
    primes: Vec<u64>,
    /// every prime `<= sieved` is in `primes`
    sieved: u64,
    cap: u64,
}

impl PrimeSieve {
    const SEGMENT: u64 = 1 << 15;

    pub fn new(cap: u64) -> Self {
        PrimeSieve {
            primes: Vec::new(),
            sieved: 1,
            cap,
        }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    /// Smallest prime strictly greater than `after`.
    pub fn next_prime(&mut self, after: u64) -> Result<u64> {
        loop {
            let idx = self.primes.partition_point(|&q| q <= after);
            if let Some(&q) = self.primes.get(idx) {
                return Ok(q);
            }
            if self.sieved >= self.cap {
                return Err(Error::Resource(format!(
                    "no prime above {after} within sieve cap {}",
                    self.cap
                )));
            }
            self.extend();
        }
    }

    fn extend(&mut self) {
        let lo = self.sieved + 1;
        let hi = self.sieved.saturating_add(Self::SEGMENT).min(self.cap);
        let base_limit = hi.isqrt();
        // base primes up to sqrt(hi) are already known once sieved >= sqrt(hi)
        if self.sieved < base_limit {
            // first segments: sieve the base range directly
            let small = simple_sieve(base_limit);
            for q in small {
                if q > self.sieved {
                    self.primes.push(q);
                }
            }
            self.sieved = base_limit;
            return;
        }
        let mut composite = vec![false; (hi - lo + 1) as usize];
        for &q in self.primes.iter().take_while(|&&q| q <= base_limit) {
            let start = (q * q).max(lo.div_ceil(q) * q);
            let mut m = start;
            while m <= hi {
                composite[(m - lo) as usize] = true;
                m += q;
            }
        }
        self.primes.extend(
            composite
                .iter()
                .enumerate()
                .filter(|(_, &c)| !c)
                .map(|(i, _)| lo + i as u64)
                .filter(|&v| v >= 2),
        );
        self.sieved = hi;
    }
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut is_p = vec![true; limit + 1];
    is_p[0] = false;
    if limit >= 1 {
        is_p[1] = false;
    }
    let mut i = 2;
    while i * i <= limit {
        if is_p[i] {
            let mut j = i * i;
            while j <= limit {
                is_p[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    is_p.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect()
}

/// Smallest prime strictly greater than `after`, sieving no further than `cap`.
pub fn next_prime(after: u64, cap: u64) -> Result<u64> {
    PrimeSieve::new(cap).next_prime(after)
}

pub(crate) fn is_odd(p: &BigUint) -> bool {
    p.is_odd()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn next_prime_examples() {
        assert_eq!(next_prime(1, 1000).unwrap(), 2);
        assert_eq!(next_prime(13, 1000).unwrap(), 17);
        assert_eq!(next_prime(199, 1000).unwrap(), 211);
        assert_eq!(next_prime(0, 1000).unwrap(), 2);
        assert_eq!(next_prime(2, 1000).unwrap(), 3);
    }

    #[test]
    fn cap_is_a_resource_error() {
        assert!(matches!(next_prime(100, 100), Err(Error::Resource(_))));
        assert!(matches!(next_prime(113, 126), Err(Error::Resource(_))));
        assert_eq!(next_prime(113, 127).unwrap(), 127);
    }

    #[test]
    fn sieve_agrees_with_trial_division() {
        let mut sieve = PrimeSieve::new(200_000);
        let mut p = 0;
        let mut count = 0;
        while let Ok(q) = sieve.next_prime(p) {
            assert!(trial_division(q), "{q}");
            for gap in p + 1..q {
                assert!(!trial_division(gap), "missed {gap}");
            }
            p = q;
            count += 1;
        }
        // pi(200000)
        assert_eq!(count, 17984);
    }

    #[test]
    fn miller_rabin() {
        for n in 0..5000u64 {
            assert_eq!(is_prime_u64(n), trial_division(n), "{n}");
        }
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        let m127 = (BigUint::one() << 127u32) - BigUint::one();
        assert!(is_prime(&m127));
        assert!(!is_prime(&(&m127 * BigUint::from(3u32))));
    }
}
