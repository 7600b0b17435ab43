//! Constructive density: build a finite abelian group whose β lies within a
//! tolerance of any target `x >= 0`.
//!
//! Targets `x >= 1` are reached by products of `Z_p^4` factors over distinct
//! primes. The terms `ln β(Z_p^4)` are positive, tend to zero and have a
//! divergent sum, so a greedy walk over the primes (take a term whenever it
//! fits the remaining log-budget) drives the residual to zero. Targets in
//! `(0, 1)` first fix an anchor factor `Z_q` with `2/q <= x` and then solve
//! for `(q/2)·x >= 1` on the remaining primes; `x = 0` is a single `Z_q` with
//! `2/q <= eps`.
//!
//! Floating point only decides which term to try. Every returned witness is
//! checked with exact rational arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::beta::{beta, Rational};
use crate::error::{domain, Error, Result};
use crate::group::{AbelianGroupSpec, PGroupType};
use crate::partition::Partition;
use crate::primes::{is_prime_u64, PrimeSieve};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxLimits {
    /// cap on the number of prime components in the witness
    pub max_primes: usize,
    /// sieve bound; no prime above this is considered
    pub max_prime: u64,
}

impl Default for ApproxLimits {
    fn default() -> Self {
        ApproxLimits {
            max_primes: 10_000,
            max_prime: 10_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxResult {
    pub group: AbelianGroupSpec,
    /// exact β of `group`
    pub achieved: Rational,
    /// `|achieved - x|`
    pub error: Rational,
    pub primes_used: usize,
    /// 0 for the trivial group
    pub largest_prime: u64,
}

/// `β(Z_p^4) = (p^4 + 3p^3 + 4p^2 + 3p + 5) / p^4`.
pub fn beta_z_p4(p: u64) -> Result<Rational> {
    if !is_prime_u64(p) {
        return domain(format!("{p} is not prime"));
    }
    let q = BigInt::from(p);
    let num = q.pow(4) + 3 * q.pow(3) + 4 * q.pow(2) + 3 * &q + 5;
    Ok(Rational::new(num, q.pow(4)))
}

/// `ln β(Z_p^4)` in floating point, accurate for large `p`.
pub fn log_term(p: u64) -> f64 {
    let x = p as f64;
    ((3.0 * x.powi(3) + 4.0 * x.powi(2) + 3.0 * x + 5.0) / x.powi(4)).ln_1p()
}

fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    (n >> shift).to_f64().unwrap_or(f64::INFINITY).ln() + shift as f64 * std::f64::consts::LN_2
}

fn ln_rational(r: &Rational) -> f64 {
    ln_bigint(r.numer()) - ln_bigint(r.denom())
}

/// Spacing between `x` and the next float away from zero.
fn ulp(x: f64) -> f64 {
    let a = x.abs();
    a.next_up() - a
}

fn ceil(r: &Rational) -> BigInt {
    r.numer().div_ceil(r.denom())
}

/// Smallest prime `q` with `2/q <= bound`.
fn first_prime_with_two_over_at_most(
    bound: &Rational,
    sieve: &mut PrimeSieve,
) -> std::result::Result<u64, Error> {
    let need = ceil(&(Rational::from_integer(BigInt::from(2)) / bound));
    let need = need.to_u64().filter(|&v| v <= sieve.cap()).ok_or_else(|| {
        Error::Resource(format!(
            "a prime >= {need} is needed but the sieve cap is {}",
            sieve.cap()
        ))
    })?;
    sieve.next_prime(need.saturating_sub(1))
}

struct Witness {
    anchor: Option<u64>,
    factors: Vec<u64>,
}

impl Witness {
    fn group(&self) -> AbelianGroupSpec {
        let anchor = self.anchor.map(|q| {
            PGroupType::new(q, Partition::from_sorted(vec![1])).expect("sieve yields primes")
        });
        let tail = self.factors.iter().map(|&q| {
            PGroupType::new(q, Partition::from_sorted(vec![1; 4])).expect("sieve yields primes")
        });
        AbelianGroupSpec::new(anchor.into_iter().chain(tail).collect())
            .expect("anchor and tail primes are distinct")
    }

    fn result(&self, x: &Rational) -> ApproxResult {
        let group = self.group();
        let achieved = beta(&group);
        let error = (&achieved - x).abs();
        ApproxResult {
            primes_used: group.components().len(),
            largest_prime: self
                .anchor
                .into_iter()
                .chain(self.factors.iter().copied())
                .max()
                .unwrap_or(0),
            group,
            achieved,
            error,
        }
    }

    fn exhausted(&self, x: &Rational, reason: impl Into<String>) -> Error {
        Error::Exhausted {
            reason: reason.into(),
            best: Box::new(self.result(x)),
        }
    }
}

/// Builds an abelian group `G` with `|β(G) - x| <= eps`.
///
/// Fails with a domain error for `x < 0` or `eps <= 0`, and with
/// [`Error::Exhausted`] (carrying the best witness so far) when the limits
/// run out first.
pub fn approximate(x: &Rational, eps: &Rational, limits: &ApproxLimits) -> Result<ApproxResult> {
    if x.is_negative() {
        return domain(format!("target must be non-negative, got {x}"));
    }
    if !eps.is_positive() {
        return domain(format!("tolerance must be positive, got {eps}"));
    }
    if limits.max_primes == 0 || limits.max_prime == 0 {
        return domain("approximation limits must be positive");
    }
    let mut sieve = PrimeSieve::new(limits.max_prime);
    let mut witness = Witness {
        anchor: None,
        factors: Vec::new(),
    };

    if x.is_zero() {
        let q = first_prime_with_two_over_at_most(eps, &mut sieve)
            .map_err(|e| witness.exhausted(x, e.to_string()))?;
        witness.anchor = Some(q);
        return finish(&witness, x, eps);
    }

    let one = Rational::one();
    let (target, tolerance) = if *x < one {
        let q = first_prime_with_two_over_at_most(x, &mut sieve)
            .map_err(|e| witness.exhausted(x, e.to_string()))?;
        witness.anchor = Some(q);
        let scale = Rational::new(BigInt::from(q), BigInt::from(2));
        (x * &scale, eps * &scale)
    } else {
        (x.clone(), eps.clone())
    };

    let mut product = Rational::one();
    let mut remaining = ln_rational(&target);
    let mut p = 1u64;
    while (&product - &target).abs() > tolerance {
        p = sieve
            .next_prime(p)
            .map_err(|e| witness.exhausted(x, e.to_string()))?;
        if witness.anchor == Some(p) {
            continue;
        }
        let term = log_term(p);
        // a term within one ulp of the budget counts as overshoot
        if term + ulp(remaining) > remaining {
            continue;
        }
        let used = witness.factors.len() + usize::from(witness.anchor.is_some());
        if used >= limits.max_primes {
            return Err(witness.exhausted(
                x,
                format!("tolerance not met with {} prime factors", limits.max_primes),
            ));
        }
        witness.factors.push(p);
        product *= beta_z_p4(p)?;
        remaining -= term;
    }
    finish(&witness, x, eps)
}

fn finish(witness: &Witness, x: &Rational, eps: &Rational) -> Result<ApproxResult> {
    let result = witness.result(x);
    if result.error > *eps {
        return Err(Error::Internal(format!(
            "witness {} misses the target by {} > {eps}",
            result.group, result.error
        )));
    }
    Ok(result)
}
