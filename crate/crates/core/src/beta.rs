//! The ratios `β(G) = |L(G)|/|G|` and `α(G) = |L_1(G)|/|G|`.
//!
//! Both are multiplicative over coprime direct factors, so values for a
//! general finite abelian group are products over its Sylow components.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;

use crate::count::{count_cyclic_subgroups, lattice_polynomial};
use crate::error::Result;
use crate::group::{AbelianGroupSpec, PGroupType};
use crate::partition::{partitions_of, Partition};

/// Exact rational, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn beta_of_type(t: &PGroupType) -> Rational {
    beta_at(&t.p_int(), t.partition())
}

/// β of the type-`d` group at prime `p`.
pub(crate) fn beta_at(p: &BigInt, d: &Partition) -> Rational {
    Rational::new(lattice_polynomial(d).eval(p), p.pow(d.weight()))
}

pub fn beta(g: &AbelianGroupSpec) -> Rational {
    g.components()
        .iter()
        .map(beta_of_type)
        .fold(Rational::one(), |acc, b| acc * b)
}

pub fn alpha_of_type(t: &PGroupType) -> Rational {
    Rational::new(count_cyclic_subgroups(t), t.p_int().pow(t.n()))
}

pub fn alpha(g: &AbelianGroupSpec) -> Rational {
    g.components()
        .iter()
        .map(alpha_of_type)
        .fold(Rational::one(), |acc, a| acc * a)
}

/// Whether `β(H) <= 1` for every subgroup `H`.
///
/// Subgroups of equal type share β, so this sweeps every partition contained
/// in the type, the empty one (trivial subgroup, β = 1) included.
pub fn hereditary_beta_le_one(t: &PGroupType) -> bool {
    let p = t.p_int();
    let one = Rational::one();
    t.partition()
        .subpartitions()
        .iter()
        .all(|l| beta_at(&p, l) <= one)
}

/// The set `{β(H) : H ≤ G}`, computed over subgroup types.
pub fn beta_image(t: &PGroupType) -> BTreeSet<Rational> {
    let p = t.p_int();
    t.partition()
        .subpartitions()
        .iter()
        .map(|l| beta_at(&p, l))
        .collect()
}

pub fn beta_image_size(t: &PGroupType) -> usize {
    beta_image(t).len()
}

/// Whether `rank > 2√n`, which forces `β > 1` (such a group contains
/// `Z_p^rank`, whose lattice alone exceeds `p^{rank²/4}` subgroups).
pub fn rank_forces_beta_above_one(d: &Partition) -> bool {
    let k = d.len() as u64;
    k * k > 4 * u64::from(d.weight())
}

/// All types of order `p^n`, `1 <= n <= n_max`, with `β = 1`. Types with
/// rank above `2√n` are pruned before any counting.
pub fn scan_beta_equal_one(p: u64, n_max: u32) -> Result<Vec<PGroupType>> {
    let base = PGroupType::new(p, Partition::empty())?;
    let prime = base.p_int();
    let one = Rational::one();
    Ok((1..=n_max)
        .flat_map(|n| partitions_of(n, None))
        .filter(|d| !rank_forces_beta_above_one(d))
        .filter(|d| beta_at(&prime, d) == one)
        .map(|d| base.with_partition(d))
        .collect())
}

/// Whether `t` is one of the groups all of whose subgroups have `β <= 1`:
/// cyclic, rank 2 with odd `p`, or rank 3 with `p >= 5`.
pub fn hereditary_classification(t: &PGroupType) -> bool {
    let p = t.p_int();
    match t.rank() {
        0 | 1 => true,
        2 => p >= BigInt::from(3),
        3 => p >= BigInt::from(5),
        _ => false,
    }
}

/// Predicted `|{β(H) : H ≤ G}|` when it is 1 or 2, `None` when it is larger.
/// Size 1 only for `Z_2`; size 2 for `Z_p` with `p` odd, `Z_4`, `Z_2^2` and
/// `Z_3^2`.
pub fn image_size_classification(t: &PGroupType) -> Option<usize> {
    let p = t.p_int();
    let two = BigInt::from(2);
    match t.partition().parts() {
        [] => Some(1),
        [1] if p == two => Some(1),
        [1] => Some(2),
        [2] | [1, 1] if p == two => Some(2),
        [1, 1] if p == BigInt::from(3) => Some(2),
        _ => None,
    }
}

/// Parses an exact rational from `a/b`, an integer, or a decimal with an
/// optional exponent (`0.001`, `-2.5e3`).
pub fn parse_rational(text: &str) -> Result<Rational> {
    use crate::error::Error;
    use num_traits::Zero;

    let bad = || Error::Parse(format!("not a number: {text:?}"));
    let s = text.trim();
    if let Some((a, b)) = s.split_once('/') {
        let num: BigInt = parse_int(a.trim()).ok_or_else(bad)?;
        let den: BigInt = parse_int(b.trim()).ok_or_else(bad)?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all: BigInt = format!("0{int}{frac}").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rational::from_integer(all * ten.pow(scale as u32))
    } else {
        Rational::new(all, ten.pow(scale.unsigned_abs()))
    };
    Ok(value * BigInt::from(sign))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Renders `r` in decimal, rounded half-away-from-zero to `sig` significant
/// digits, trailing zeros trimmed. Plain notation for exponents in
/// `-6..=15`, scientific otherwise.
pub fn format_decimal(r: &Rational, sig: usize) -> String {
    use num_integer::Integer;
    use num_traits::{Signed, Zero};

    if r.is_zero() {
        return "0".to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let num = r.numer().abs();
    let den = r.denom().clone();
    let ten = BigInt::from(10);

    // exponent e with 10^e <= |r| < 10^{e+1}
    let mut e: i64 = num.to_string().len() as i64 - den.to_string().len() as i64;
    let pow10 = |k: i64| ten.pow(k.unsigned_abs() as u32);
    let ge = |e: i64| {
        if e >= 0 {
            num >= &den * pow10(e)
        } else {
            &num * pow10(e) >= den
        }
    };
    while !ge(e) {
        e -= 1;
    }
    while ge(e + 1) {
        e += 1;
    }

    // digits = round(|r| * 10^{sig-1-e})
    let shift = sig as i64 - 1 - e;
    let (n2, d2) = if shift >= 0 {
        (&num * pow10(shift), den.clone())
    } else {
        (num.clone(), &den * pow10(-shift))
    };
    let (q, rem) = n2.div_rem(&d2);
    let mut digits = if rem * 2 >= d2 { q + 1 } else { q };
    if digits.to_string().len() > sig {
        // rounding carried into a new leading digit
        digits /= &ten;
        e += 1;
    }
    let digits = digits.to_string();
    let plain = (-6..=15).contains(&e);

    let body = if !plain {
        let (lead, rest) = digits.split_at(1);
        let rest = rest.trim_end_matches('0');
        if rest.is_empty() {
            format!("{lead}e{e}")
        } else {
            format!("{lead}.{rest}e{e}")
        }
    } else if e >= 0 {
        let int_len = (e + 1) as usize;
        if digits.len() <= int_len {
            format!("{digits}{}", "0".repeat(int_len - digits.len()))
        } else {
            let (a, b) = digits.split_at(int_len);
            let b = b.trim_end_matches('0');
            if b.is_empty() {
                a.to_string()
            } else {
                format!("{a}.{b}")
            }
        }
    } else {
        let zeros = "0".repeat((-e - 1) as usize);
        format!("0.{zeros}{}", digits.trim_end_matches('0'))
    };
    format!("{sign}{body}")
}
