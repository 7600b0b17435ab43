//! Gaussian binomial coefficients as polynomials in `q`.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use crate::poly::IntPolynomial;

static MEMO: LazyLock<RwLock<HashMap<(u32, u32), IntPolynomial>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// `[n k]_q` via the q-Pascal rule `[n k] = [n-1 k-1] + q^k [n-1 k]`.
///
/// Zero when `k > n`. The result has degree `k(n-k)` and non-negative
/// coefficients.
pub fn gauss_binomial(n: u32, k: u32) -> IntPolynomial {
    if k > n {
        return IntPolynomial::zero();
    }
    if k == 0 || k == n {
        return IntPolynomial::one();
    }
    // symmetric, so only cache k <= n/2
    let k = k.min(n - k);
    if let Some(hit) = MEMO.read().expect("gauss memo poisoned").get(&(n, k)) {
        return hit.clone();
    }
    let value = &gauss_binomial(n - 1, k - 1) + &gauss_binomial(n - 1, k).shift(k as usize);
    MEMO.write()
        .expect("gauss memo poisoned")
        .entry((n, k))
        .or_insert(value)
        .clone()
}
