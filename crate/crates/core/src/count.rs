//! Subgroup counts of finite abelian p-groups.
//!
//! The primary route sums Hall's product formula over bounded partitions and
//! keeps every count as a polynomial in `p`. The rank-2 and rank-3 closed
//! forms and the non-abelian family counts are independent implementations
//! kept for cross-validation.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::gauss::gauss_binomial;
use crate::group::PGroupType;
use crate::partition::{partitions_of, Partition};
use crate::poly::IntPolynomial;
use crate::primes::is_prime_u64;

type HallMemo = HashMap<(Partition, Partition), IntPolynomial>;
type LayerMemo = HashMap<Partition, Arc<Vec<IntPolynomial>>>;

static HALL_MEMO: LazyLock<RwLock<HallMemo>> = LazyLock::new(Default::default);
static LAYER_MEMO: LazyLock<RwLock<LayerMemo>> = LazyLock::new(Default::default);

/// Number of subgroups of type `l` in a group of type `d`, as a polynomial in `p`:
///
/// `∏_{i≥1} p^{l'_{i+1}(d'_i - l'_i)} [d'_i - l'_{i+1}, l'_i - l'_{i+1}]_p`
///
/// where `d'`, `l'` are the conjugate partitions.
pub fn count_subgroups_of_type(d: &Partition, l: &Partition) -> Result<IntPolynomial> {
    if !l.contained_in(d) {
        return domain(format!("{l} is not contained in {d}"));
    }
    let key = (d.clone(), l.clone());
    if let Some(hit) = HALL_MEMO.read().expect("hall memo poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let dc = d.conjugate();
    let lc = l.conjugate();
    let mut acc = IntPolynomial::one();
    for i in 0..dc.len() {
        let (d_i, l_i, l_next) = (dc.part(i), lc.part(i), lc.part(i + 1));
        let exponent = l_next * (d_i - l_i);
        let factor = gauss_binomial(d_i - l_next, l_i - l_next).shift(exponent as usize);
        acc = &acc * &factor;
    }
    HALL_MEMO
        .write()
        .expect("hall memo poisoned")
        .insert(key, acc.clone());
    Ok(acc)
}

/// `s_0 .. s_n` as polynomials in `p` for a group of type `d`.
pub fn layer_polynomials(d: &Partition) -> Arc<Vec<IntPolynomial>> {
    if let Some(hit) = LAYER_MEMO.read().expect("layer memo poisoned").get(d) {
        return Arc::clone(hit);
    }
    let layers: Vec<IntPolynomial> = (0..=d.weight())
        .map(|k| {
            partitions_of(k, Some(d))
                .iter()
                .map(|l| count_subgroups_of_type(d, l).expect("bounded partitions are contained"))
                .sum()
        })
        .collect();
    let layers = Arc::new(layers);
    LAYER_MEMO
        .write()
        .expect("layer memo poisoned")
        .insert(d.clone(), Arc::clone(&layers));
    layers
}

/// `|L(G)|` as a polynomial in `p`.
pub fn lattice_polynomial(d: &Partition) -> IntPolynomial {
    layer_polynomials(d).iter().cloned().sum()
}

/// Number of subgroups of order `p^k`.
pub fn s_k(t: &PGroupType, k: u32) -> Result<BigInt> {
    if k > t.n() {
        return domain(format!("k = {k} exceeds n = {}", t.n()));
    }
    Ok(layer_polynomials(t.partition())[k as usize].eval(&t.p_int()))
}

/// `|L(G)|`.
pub fn lattice_size(t: &PGroupType) -> BigInt {
    lattice_polynomial(t.partition()).eval(&t.p_int())
}

/// Per-order subgroup counts of one p-group, both evaluated and as polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub group: PGroupType,
    pub s: Vec<BigInt>,
    pub s_poly: Vec<IntPolynomial>,
    pub total: BigInt,
}

pub fn count_report(t: &PGroupType) -> CountReport {
    let s_poly = layer_polynomials(t.partition()).as_ref().clone();
    let p = t.p_int();
    let s: Vec<BigInt> = s_poly.iter().map(|f| f.eval(&p)).collect();
    let total = s.iter().sum();
    CountReport {
        group: t.clone(),
        s,
        s_poly,
        total,
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        domain(format!("{p} is not prime"))
    }
}

fn exact_div(num: BigInt, den: BigInt, what: &str) -> Result<BigInt> {
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "{what}: remainder {r} dividing by {den}"
        )));
    }
    Ok(q)
}

/// Closed form for `|L(Z_{p^{d1}} × Z_{p^{d2}})|`, `1 <= d1 <= d2`.
pub fn lattice_size_rank2(p: u64, d1: u32, d2: u32) -> Result<BigInt> {
    require_prime(p)?;
    if !(1 <= d1 && d1 <= d2) {
        return domain(format!(
            "rank-2 closed form needs 1 <= d1 <= d2, got ({d1},{d2})"
        ));
    }
    let pb = BigInt::from(p);
    let (a, b) = (i64::from(d1), i64::from(d2));
    let num = BigInt::from(b - a + 1) * pb.pow(d1 + 2)
        - BigInt::from(b - a - 1) * pb.pow(d1 + 1)
        - BigInt::from(a + b + 3) * &pb
        + BigInt::from(a + b + 1);
    let den = (&pb - 1) * (&pb - 1);
    exact_div(num, den, "rank-2 closed form")
}

/// Closed form for `|L(Z_{p^{d1}} × Z_{p^{d2}} × Z_{p^{d3}})|`, `1 <= d1 <= d2 <= d3`.
pub fn lattice_size_rank3(p: u64, d1: u32, d2: u32, d3: u32) -> Result<BigInt> {
    require_prime(p)?;
    if !(1 <= d1 && d1 <= d2 && d2 <= d3) {
        return domain(format!(
            "rank-3 closed form needs 1 <= d1 <= d2 <= d3, got ({d1},{d2},{d3})"
        ));
    }
    let pb = BigInt::from(p);
    let pw = |e: u32| pb.pow(e);
    let (a, b, c) = (i64::from(d1), i64::from(d2), i64::from(d3));
    let int = BigInt::from;
    let s12 = d1 + d2;
    let numerator = int((a + 1) * (c - b + 1)) * pw(s12 + 5) + int(2 * (a + 1)) * pw(s12 + 4)
        - int(2 * (a + 1) * (c - b)) * pw(s12 + 3)
        - int(2 * (a + 1)) * pw(s12 + 2)
        + int((a + 1) * (c - b - 1)) * pw(s12 + 1)
        - int(c + b - a + 3) * pw(2 * d1 + 4)
        - int(2) * pw(2 * d1 + 3)
        + int(c + b - a - 1) * pw(2 * d1 + 2)
        + int(a + b + c + 5) * pw(2)
        + int(2) * &pb
        - int(a + b + c + 1);
    let p2m1 = pw(2) - 1;
    let den = &p2m1 * &p2m1 * (&pb - 1);
    exact_div(numerator, den, "rank-3 closed form")
}

/// `|L(Q_{2^n})| = 2^{n-1} + n - 1` for the generalized quaternion group.
pub fn lattice_size_quaternion(n: u32) -> Result<BigInt> {
    if n < 3 {
        return domain(format!("Q_(2^n) needs n >= 3, got {n}"));
    }
    Ok(BigInt::from(2).pow(n - 1) + n - 1)
}

/// `|L(M(p^n))| = 2 + (n-1)(p+1)` for the modular p-group.
pub fn lattice_size_modular(p: u64, n: u32) -> Result<BigInt> {
    require_prime(p)?;
    let min_n = if p == 2 { 4 } else { 3 };
    if n < min_n {
        return domain(format!("M(p^n) needs n >= {min_n} for p = {p}, got {n}"));
    }
    Ok(BigInt::from(2) + BigInt::from(n - 1) * (BigInt::from(p) + 1))
}

fn layer_counts(t: &PGroupType) -> Vec<BigInt> {
    let p = t.p_int();
    layer_polynomials(t.partition())
        .iter()
        .map(|f| f.eval(&p))
        .collect()
}

/// Rebuilds `|L(G)|` from the first half of a symmetric coefficient list:
/// `[2(c_1+…+c_{h}) (+ c_{n/2} when n is even)] * unit + tail`.
fn fold_symmetric(coeffs: &[BigInt], n: u32, unit: &BigInt, tail: BigInt) -> BigInt {
    let half = ((n - 1) / 2) as usize;
    let mut sum: BigInt = coeffs[..half].iter().sum::<BigInt>() * 2;
    if n % 2 == 0 {
        sum += &coeffs[(n / 2 - 1) as usize];
    }
    sum * unit + tail
}

/// `M_k` with `s_k = M_k p + 1` for `1 <= k <= n-1`.
pub fn mk_decomposition(t: &PGroupType) -> Result<Vec<BigInt>> {
    if t.is_cyclic() {
        return domain("M_k decomposition needs a non-cyclic group");
    }
    let p = t.p_int();
    let n = t.n();
    let s = layer_counts(t);
    let m = s[1..n as usize]
        .iter()
        .enumerate()
        .map(|(i, sk)| exact_div(sk - 1, p.clone(), &format!("M_{}", i + 1)))
        .collect::<Result<Vec<_>>>()?;
    let rebuilt = fold_symmetric(&m, n, &p, BigInt::from(n + 1));
    let total: BigInt = s.iter().sum();
    if rebuilt != total {
        return Err(Error::Internal(format!(
            "M_k reconstruction gives {rebuilt}, expected {total}"
        )));
    }
    Ok(m)
}

/// `N_k` with `s_k = N_k p^2 + p + 1` for `1 <= k <= n-1`, `p` odd.
pub fn nk_decomposition(t: &PGroupType) -> Result<Vec<BigInt>> {
    if !crate::primes::is_odd(t.p()) {
        return domain("N_k decomposition needs an odd prime");
    }
    if t.is_cyclic() {
        return domain("N_k decomposition needs a non-cyclic group");
    }
    let p = t.p_int();
    let n = t.n();
    let s = layer_counts(t);
    let p2 = &p * &p;
    let nks = s[1..n as usize]
        .iter()
        .enumerate()
        .map(|(i, sk)| exact_div(sk - 1 - &p, p2.clone(), &format!("N_{}", i + 1)))
        .collect::<Result<Vec<_>>>()?;
    let tail = BigInt::from(n - 1) * (&p + 1) + 2;
    let rebuilt = fold_symmetric(&nks, n, &p2, tail);
    let total: BigInt = s.iter().sum();
    if rebuilt != total {
        return Err(Error::Internal(format!(
            "N_k reconstruction gives {rebuilt}, expected {total}"
        )));
    }
    Ok(nks)
}

/// `|L_1(G)|`: the trivial subgroup plus subgroups of every single-part type.
pub fn count_cyclic_subgroups(t: &PGroupType) -> BigInt {
    let d = t.partition();
    let p = t.p_int();
    (1..=d.largest())
        .map(|k| {
            let l = Partition::from_sorted(vec![k]);
            count_subgroups_of_type(d, &l)
                .expect("(k) is contained in d for k <= d_max")
                .eval(&p)
        })
        .fold(BigInt::one(), |acc, x| acc + x)
}
