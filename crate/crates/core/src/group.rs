//! Abelian p-group types and finite abelian groups as products of them.
//!
//! Text form: one component is `p:[d1,d2,...]`, components are joined by `;`,
//! e.g. `2:[1,3];3:[2]`. Parts may be given in any order. The empty string is
//! the trivial group.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::error::{domain, Error, Result};
use crate::partition::Partition;
use crate::primes::is_prime;

/// A prime together with a partition: the group `∏ Z_{p^{d_i}}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PGroupType {
    p: BigUint,
    d: Partition,
}

impl PGroupType {
    pub fn new(p: impl Into<BigUint>, d: Partition) -> Result<Self> {
        let p = p.into();
        if !is_prime(&p) {
            return domain(format!("{p} is not prime"));
        }
        Ok(PGroupType { p, d })
    }

    /// Convenience constructor from raw parts (any order).
    pub fn from_parts(p: u64, parts: &[u32]) -> Result<Self> {
        Self::new(p, Partition::new(parts.to_vec())?)
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn p_int(&self) -> BigInt {
        BigInt::from(self.p.clone())
    }

    pub fn partition(&self) -> &Partition {
        &self.d
    }

    /// Exponent of the order: `|G| = p^n`.
    pub fn n(&self) -> u32 {
        self.d.weight()
    }

    /// Minimal number of generators.
    pub fn rank(&self) -> usize {
        self.d.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.rank() <= 1
    }

    pub fn order(&self) -> BigUint {
        self.p.pow(self.n())
    }

    /// Same prime, another partition.
    pub fn with_partition(&self, d: Partition) -> PGroupType {
        PGroupType {
            p: self.p.clone(),
            d,
        }
    }
}

impl fmt::Display for PGroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:[", self.p)?;
        for (i, x) in self.d.parts().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

/// A finite abelian group as the product of its Sylow subgroups.
///
/// Components have pairwise distinct primes and are kept sorted by prime.
/// Components of weight zero are dropped, so no components = trivial group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbelianGroupSpec {
    components: Vec<PGroupType>,
}

impl AbelianGroupSpec {
    pub fn new(components: Vec<PGroupType>) -> Result<Self> {
        let mut components: Vec<_> = components.into_iter().filter(|c| c.n() > 0).collect();
        components.sort_by(|a, b| a.p.cmp(&b.p));
        if let Some(w) = components.windows(2).find(|w| w[0].p == w[1].p) {
            return domain(format!(
                "prime {} appears in more than one component",
                w[0].p
            ));
        }
        Ok(AbelianGroupSpec { components })
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn single(t: PGroupType) -> Self {
        Self::new(vec![t]).expect("one component cannot clash")
    }

    pub fn components(&self) -> &[PGroupType] {
        &self.components
    }

    pub fn order(&self) -> BigUint {
        self.components
            .iter()
            .fold(BigUint::one(), |acc, c| acc * c.order())
    }

    pub fn is_cyclic(&self) -> bool {
        self.components.iter().all(PGroupType::is_cyclic)
    }
}

impl fmt::Display for AbelianGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for AbelianGroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::trivial());
        }
        let components = s
            .split(';')
            .map(parse_component)
            .collect::<Result<Vec<_>>>()?;
        let mut seen: Vec<&BigUint> = components.iter().map(|c| &c.p).collect();
        seen.sort();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse(format!("repeated prime in {s:?}")));
        }
        Self::new(components)
    }
}

fn parse_component(text: &str) -> Result<PGroupType> {
    let bad = |why: &str| Error::Parse(format!("{why} in component {text:?}"));
    let text = text.trim();
    let (prime, rest) = text.split_once(':').ok_or_else(|| bad("missing ':'"))?;
    let rest = rest.trim();
    let inner = rest
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| bad("expected [d1,d2,...]"))?;
    let prime = prime.trim();
    if prime.is_empty() || !prime.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad("prime must be a decimal integer"));
    }
    let p: BigUint = prime.parse().map_err(|_| bad("bad prime"))?;
    if !is_prime(&p) {
        return Err(bad("not a prime"));
    }
    if inner.trim().is_empty() {
        return Err(bad("empty partition"));
    }
    let parts = inner
        .split(',')
        .map(|x| {
            let x = x.trim();
            if x.is_empty() || !x.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("parts must be positive integers"));
            }
            match x.parse::<u32>() {
                Ok(0) | Err(_) => Err(bad("parts must be positive integers")),
                Ok(v) => Ok(v),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PGroupType {
        p,
        d: Partition::new(parts)?,
    })
}

impl FromStr for PGroupType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_component(s)
    }
}
