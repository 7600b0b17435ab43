//! Brute-force subgroup enumeration for small explicit abelian groups.
//!
//! Two independent enumerators live here. [`all_subgroups`] materializes every
//! subgroup as an element list by join-closure over the cyclic subgroups; it is
//! exact but its cost grows with (number of subgroups) × (number of cyclics) ×
//! |H|, so it is meant for small orders. [`counts_by_order`] walks the
//! subgroups as lattices `K ⊆ L ⊆ Z^r` (where `Z^r / K` is the group) in
//! Hermite normal form, visiting each subgroup exactly once without building
//! it. Neither uses any counting formula.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use crate::count::{count_cyclic_subgroups, count_report};
use crate::error::{domain, Error, Result};
use crate::group::{AbelianGroupSpec, PGroupType};
use crate::verify::{CheckRecord, VerificationReport};

pub const DEFAULT_CAP: u64 = 512;

pub const ORACLE_LAYERS: &str = "oracle_layers";
pub const ORACLE_TOTAL: &str = "oracle_total";
pub const ORACLE_CYCLIC: &str = "oracle_cyclic";

/// `Z_{m_1} × … × Z_{m_r}`. Elements are mixed-radix codes with the first
/// coordinate most significant, so code order is tuple order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitGroup {
    cyclic_orders: Vec<u64>,
    order: u64,
}

impl ExplicitGroup {
    pub fn new(cyclic_orders: Vec<u64>) -> Result<Self> {
        if let Some(m) = cyclic_orders.iter().find(|&&m| m < 2) {
            return domain(format!("cyclic orders must be >= 2, got {m}"));
        }
        let order = cyclic_orders
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m))
            .ok_or_else(|| Error::Resource("group order does not fit in 64 bits".into()))?;
        Ok(ExplicitGroup {
            cyclic_orders,
            order,
        })
    }

    pub fn from_type(t: &PGroupType) -> Result<Self> {
        Self::from_spec(&AbelianGroupSpec::single(t.clone()))
    }

    pub fn from_spec(g: &AbelianGroupSpec) -> Result<Self> {
        let mut orders = Vec::new();
        for t in g.components() {
            for &e in t.partition().parts() {
                let m = t.p().pow(e);
                orders.push(m.to_u64().ok_or_else(|| {
                    Error::Resource(format!(
                        "cyclic factor of order {m} does not fit in 64 bits"
                    ))
                })?);
            }
        }
        Self::new(orders)
    }

    pub fn cyclic_orders(&self) -> &[u64] {
        &self.cyclic_orders
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    fn check_cap(&self, cap: u64) -> Result<()> {
        if self.order > cap {
            return Err(Error::Resource(format!(
                "group order {} exceeds the cap {cap}",
                self.order
            )));
        }
        Ok(())
    }

    pub fn decode(&self, mut code: u64) -> Vec<u64> {
        let mut out = vec![0; self.cyclic_orders.len()];
        for (slot, &m) in out.iter_mut().zip(&self.cyclic_orders).rev() {
            *slot = code % m;
            code /= m;
        }
        out
    }

    pub fn encode(&self, tuple: &[u64]) -> u64 {
        tuple
            .iter()
            .zip(&self.cyclic_orders)
            .fold(0, |acc, (&x, &m)| acc * m + x % m)
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        let (mut a, mut b, mut out, mut scale) = (a, b, 0, 1);
        for &m in self.cyclic_orders.iter().rev() {
            out += ((a % m + b % m) % m) * scale;
            a /= m;
            b /= m;
            scale *= m;
        }
        out
    }

    fn neg(&self, a: u64) -> u64 {
        let t: Vec<u64> = self
            .decode(a)
            .iter()
            .zip(&self.cyclic_orders)
            .map(|(&x, &m)| (m - x) % m)
            .collect();
        self.encode(&t)
    }

    fn generated_by(&self, a: u64) -> SubgroupSet {
        let mut codes = vec![0];
        let mut x = a;
        while x != 0 {
            codes.push(x);
            x = self.add(x, a);
        }
        codes.sort_unstable();
        SubgroupSet { codes }
    }

    /// `H + ⟨a⟩`, as the union of the cosets `H + i·a`.
    fn join_element(&self, h: &SubgroupSet, a: u64) -> SubgroupSet {
        let mut codes = h.codes.clone();
        let mut x = a;
        while h.codes.binary_search(&x).is_err() {
            codes.extend(h.codes.iter().map(|&y| self.add(y, x)));
            x = self.add(x, a);
        }
        codes.sort_unstable();
        SubgroupSet { codes }
    }

    /// `H + K`, the join of two subgroups.
    fn join(&self, h: &SubgroupSet, k: &SubgroupSet) -> SubgroupSet {
        let mut codes: Vec<u64> = h
            .codes
            .iter()
            .flat_map(|&a| k.codes.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.add(a, b))
            .collect();
        codes.sort_unstable();
        codes.dedup();
        SubgroupSet { codes }
    }
}

impl fmt::Display for ExplicitGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cyclic_orders.is_empty() {
            return write!(f, "1");
        }
        let names: Vec<String> = self
            .cyclic_orders
            .iter()
            .map(|m| format!("Z_{m}"))
            .collect();
        write!(f, "{}", names.join("×"))
    }
}

/// A subgroup, stored as its sorted element codes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubgroupSet {
    codes: Vec<u64>,
}

impl SubgroupSet {
    /// Builds a subgroup from element tuples, rejecting anything that is not
    /// closed under addition and negation or lacks the identity.
    pub fn new(g: &ExplicitGroup, elements: &[Vec<u64>]) -> Result<Self> {
        if let Some(t) = elements.iter().find(|t| {
            t.len() != g.cyclic_orders.len()
                || t.iter().zip(&g.cyclic_orders).any(|(&x, &m)| x >= m)
        }) {
            return domain(format!("{t:?} is not a reduced element of {g}"));
        }
        let mut codes: Vec<u64> = elements.iter().map(|t| g.encode(t)).collect();
        codes.sort_unstable();
        codes.dedup();
        let set = SubgroupSet { codes };
        if !set.is_subgroup_of(g) {
            return domain("element set is not a subgroup");
        }
        Ok(set)
    }

    pub fn is_subgroup_of(&self, g: &ExplicitGroup) -> bool {
        let has = |c: u64| self.codes.binary_search(&c).is_ok();
        if !has(0) || self.codes.iter().any(|&c| c >= g.order) {
            return false;
        }
        self.codes
            .iter()
            .all(|&a| has(g.neg(a)) && self.codes.iter().all(|&b| has(g.add(a, b))))
    }

    pub fn order(&self) -> u64 {
        self.codes.len() as u64
    }

    pub fn codes(&self) -> &[u64] {
        &self.codes
    }

    pub fn elements(&self, g: &ExplicitGroup) -> Vec<Vec<u64>> {
        self.codes.iter().map(|&c| g.decode(c)).collect()
    }
}

/// All `⟨a⟩`, trivial subgroup included.
pub fn cyclic_subgroups(g: &ExplicitGroup, cap: u64) -> Result<BTreeSet<SubgroupSet>> {
    g.check_cap(cap)?;
    let mut seen = vec![false; g.order as usize];
    let mut out = BTreeSet::new();
    for a in 0..g.order {
        if seen[a as usize] {
            continue;
        }
        let h = g.generated_by(a);
        // every generator of ⟨a⟩ yields the same subgroup
        let n = h.order();
        let mut x = a;
        for k in 1..=n {
            if gcd(k, n) == 1 {
                seen[x as usize] = true;
            }
            x = g.add(x, a);
        }
        out.insert(h);
    }
    Ok(out)
}

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::Integer::gcd(&a, &b)
}

/// Join-closure: start from the cyclic subgroups and keep adding joins with
/// cyclic subgroups until nothing new appears.
pub fn all_subgroups(g: &ExplicitGroup, cap: u64) -> Result<BTreeSet<SubgroupSet>> {
    let cyclics: Vec<SubgroupSet> = cyclic_subgroups(g, cap)?.into_iter().collect();
    let gens: Vec<u64> = cyclics
        .iter()
        .map(|c| {
            let n = c.order();
            *c.codes
                .iter()
                .find(|&&a| g.generated_by(a).order() == n)
                .expect("a cyclic group has a generator")
        })
        .collect();
    let mut all: BTreeSet<SubgroupSet> = cyclics.iter().cloned().collect();
    let mut frontier = cyclics;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for &a in &gens {
                if h.codes.binary_search(&a).is_ok() {
                    continue;
                }
                let j = g.join_element(h, a);
                if !all.contains(&j) {
                    all.insert(j.clone());
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    Ok(all)
}

/// Joins of all pairs of members that are missing from `set`.
pub fn missing_joins(g: &ExplicitGroup, set: &BTreeSet<SubgroupSet>) -> Vec<SubgroupSet> {
    let members: Vec<&SubgroupSet> = set.iter().collect();
    let mut out = BTreeSet::new();
    for (i, h) in members.iter().enumerate() {
        for k in &members[i..] {
            let j = g.join(h, k);
            if !set.contains(&j) {
                out.insert(j);
            }
        }
    }
    out.into_iter().collect()
}

/// Histogram of subgroup orders, by Hermite-normal-form enumeration.
///
/// With `G = Z^r / K`, `K = ⊕ m_i Z`, subgroups correspond to lattices
/// `K ⊆ L ⊆ Z^r`. Each such `L` has a unique upper-triangular basis with
/// diagonal `d_i | m_i` and entries above the diagonal reduced into
/// `[0, d_j)`; `K ⊆ L` holds iff `(m_i/d_i)` times the off-diagonal part of
/// row `i` lies in the span of the rows below it.
pub fn counts_by_order(g: &ExplicitGroup, cap: u64) -> Result<BTreeMap<u64, u64>> {
    g.check_cap(cap)?;
    let r = g.cyclic_orders.len();
    let m: Vec<i64> = g.cyclic_orders.iter().map(|&x| x as i64).collect();
    let mut walk = HnfWalk {
        m,
        rows: vec![vec![0; r]; r],
        counts: BTreeMap::new(),
        order: g.order,
    };
    walk.row(r, 1);
    Ok(walk.counts)
}

struct HnfWalk {
    m: Vec<i64>,
    rows: Vec<Vec<i64>>,
    counts: BTreeMap<u64, u64>,
    order: u64,
}

impl HnfWalk {
    /// Chooses row `i - 1`; rows `i..` are fixed. `index` is `∏ d_j` so far.
    fn row(&mut self, i: usize, index: u64) {
        if i == 0 {
            *self.counts.entry(self.order / index).or_insert(0) += 1;
            return;
        }
        let i = i - 1;
        let r = self.m.len();
        let mi = self.m[i];
        for d in (1..=mi).filter(|d| mi % d == 0) {
            let radices: Vec<i64> = (i + 1..r).map(|j| self.rows[j][j]).collect();
            let mut tail = vec![0i64; r - i - 1];
            loop {
                let scaled: Vec<i64> = tail.iter().map(|&b| b * (mi / d)).collect();
                if self.in_span_below(i + 1, scaled) {
                    let row = &mut self.rows[i];
                    row.iter_mut().for_each(|x| *x = 0);
                    row[i] = d;
                    row[i + 1..].copy_from_slice(&tail);
                    self.row(i, index * d as u64);
                }
                if !advance(&mut tail, &radices) {
                    break;
                }
            }
        }
    }

    /// Whether `v` (coordinates `start..`) lies in the span of rows `start..`.
    fn in_span_below(&self, start: usize, mut v: Vec<i64>) -> bool {
        for (off, j) in (start..self.m.len()).enumerate() {
            let d = self.rows[j][j];
            if v[off] % d != 0 {
                return false;
            }
            let c = v[off] / d;
            if c != 0 {
                for (k, x) in v.iter_mut().enumerate().skip(off) {
                    *x -= c * self.rows[j][start + k];
                }
            }
        }
        true
    }
}

/// Odometer step over `0 <= t[k] < radix[k]`; false once it wraps around.
fn advance(t: &mut [i64], radix: &[i64]) -> bool {
    for pos in (0..t.len()).rev() {
        t[pos] += 1;
        if t[pos] < radix[pos] {
            return true;
        }
        t[pos] = 0;
    }
    false
}

/// Realizes `t` explicitly and compares the enumerated per-order counts with
/// `s_k`, the total with `|L(G)|` and the number of cyclic subgroups with
/// the cyclic count.
pub fn oracle_check(t: &PGroupType, cap: u64) -> Result<VerificationReport> {
    let g = ExplicitGroup::from_type(t)?;
    let counts = counts_by_order(&g, cap)?;
    let report = count_report(t);
    let p = t.p();
    let mut out = VerificationReport::new();

    let mut mismatches = Vec::new();
    for (k, want) in report.s.iter().enumerate() {
        let order = p.pow(k as u32);
        let got = order
            .to_u64()
            .and_then(|o| counts.get(&o))
            .copied()
            .unwrap_or(0);
        if BigInt::from(got) != *want {
            mismatches.push(format!("k={k}: enumerated {got}, formula {want}"));
        }
    }
    let stray: Vec<u64> = counts
        .keys()
        .copied()
        .filter(|&o| !is_power_of(o, p))
        .collect();
    if !stray.is_empty() {
        mismatches.push(format!("subgroup orders {stray:?} are not powers of {p}"));
    }
    out.push(if mismatches.is_empty() {
        CheckRecord::pass(ORACLE_LAYERS, t)
    } else {
        CheckRecord::fail(ORACLE_LAYERS, t, mismatches.join("; "))
    });

    let total: u64 = counts.values().sum();
    out.push(if BigInt::from(total) == report.total {
        CheckRecord::pass(ORACLE_TOTAL, t)
    } else {
        CheckRecord::fail(
            ORACLE_TOTAL,
            t,
            format!("enumerated {total}, formula {}", report.total),
        )
    });

    let cyclic = cyclic_subgroups(&g, cap)?.len();
    let want = count_cyclic_subgroups(t);
    out.push(if BigInt::from(cyclic) == want {
        CheckRecord::pass(ORACLE_CYCLIC, t)
    } else {
        CheckRecord::fail(
            ORACLE_CYCLIC,
            t,
            format!("enumerated {cyclic}, formula {want}"),
        )
    });
    Ok(out)
}

fn is_power_of(mut n: u64, p: &BigUint) -> bool {
    let Some(p) = p.to_u64() else {
        return n == 1;
    };
    while n % p == 0 && n > 1 {
        n /= p;
    }
    n == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;

    fn grp(orders: &[u64]) -> ExplicitGroup {
        ExplicitGroup::new(orders.to_vec()).unwrap()
    }

    fn hist(orders: &[u64]) -> Vec<(u64, u64)> {
        counts_by_order(&grp(orders), DEFAULT_CAP)
            .unwrap()
            .into_iter()
            .collect()
    }

    fn closure_hist(orders: &[u64]) -> BTreeMap<u64, u64> {
        let mut h = BTreeMap::new();
        for s in all_subgroups(&grp(orders), DEFAULT_CAP).unwrap() {
            *h.entry(s.order()).or_insert(0) += 1;
        }
        h
    }

    #[test]
    fn cyclic_counts() {
        let n = |o: &[u64]| cyclic_subgroups(&grp(o), DEFAULT_CAP).unwrap().len();
        assert_eq!(n(&[2, 2]), 4);
        assert_eq!(n(&[8]), 4);
        assert_eq!(n(&[6]), 4);
        assert_eq!(n(&[2, 4]), 6);
        assert_eq!(n(&[]), 1);
    }

    #[test]
    fn subgroup_totals() {
        let n = |o: &[u64]| all_subgroups(&grp(o), DEFAULT_CAP).unwrap().len();
        assert_eq!(n(&[2, 2]), 5);
        assert_eq!(n(&[2, 4]), 8);
        assert_eq!(n(&[2, 2, 2]), 16);
        assert_eq!(n(&[]), 1);
    }

    #[test]
    fn histograms() {
        assert_eq!(hist(&[2, 4]), [(1, 1), (2, 3), (4, 3), (8, 1)]);
        assert_eq!(hist(&[9]), [(1, 1), (3, 1), (9, 1)]);
        assert_eq!(hist(&[3, 3]), [(1, 1), (3, 4), (9, 1)]);
        assert_eq!(hist(&[]), [(1, 1)]);
    }

    #[test]
    fn hnf_matches_join_closure() {
        // every factorization of every order up to 64 into cyclic factors
        fn factorizations(n: u64, min: u64, out: &mut Vec<Vec<u64>>, cur: &mut Vec<u64>) {
            if n == 1 {
                out.push(cur.clone());
                return;
            }
            for m in (min..=n).filter(|m| n % m == 0) {
                cur.push(m);
                factorizations(n / m, m, out, cur);
                cur.pop();
            }
        }
        for order in 1..=64u64 {
            let mut all = Vec::new();
            factorizations(order, 2, &mut all, &mut Vec::new());
            for orders in all {
                let g = grp(&orders);
                assert_eq!(
                    counts_by_order(&g, DEFAULT_CAP).unwrap(),
                    closure_hist(&orders),
                    "{g}"
                );
            }
        }
    }

    #[test]
    fn members_are_subgroups_and_lagrange_holds() {
        for orders in [&[2, 4][..], &[3, 3], &[2, 2, 2], &[4, 4], &[6, 2], &[12]] {
            let g = grp(orders);
            for h in all_subgroups(&g, DEFAULT_CAP).unwrap() {
                assert!(h.is_subgroup_of(&g), "{g}");
                assert_eq!(g.order() % h.order(), 0);
            }
        }
    }

    #[test]
    fn closure_is_idempotent() {
        for orders in [&[2, 2][..], &[2, 4], &[3, 3], &[2, 2, 2], &[4, 4], &[2, 6]] {
            let g = grp(orders);
            let set = all_subgroups(&g, DEFAULT_CAP).unwrap();
            assert!(missing_joins(&g, &set).is_empty(), "{g}");
        }
    }

    #[test]
    fn multiplicative_over_coprime_factors() {
        let total = |o: &[u64]| -> u64 {
            counts_by_order(&grp(o), DEFAULT_CAP)
                .unwrap()
                .values()
                .sum()
        };
        assert_eq!(total(&[6]), total(&[2]) * total(&[3]));
        assert_eq!(total(&[2, 3]), 4);
        assert_eq!(total(&[30]), total(&[2]) * total(&[3]) * total(&[5]));
        assert_eq!(total(&[2, 3, 5]), 8);
        assert_eq!(all_subgroups(&grp(&[30]), DEFAULT_CAP).unwrap().len(), 8);
    }

    #[test]
    fn subgroup_set_validation() {
        let g = grp(&[2, 2]);
        assert!(SubgroupSet::new(&g, &[vec![0, 0], vec![1, 0]]).is_ok());
        assert!(SubgroupSet::new(&g, &[vec![1, 0]]).is_err());
        assert!(SubgroupSet::new(&g, &[vec![0, 0], vec![1, 0], vec![0, 1]]).is_err());
        assert!(SubgroupSet::new(&g, &[vec![0, 0], vec![2, 0]]).is_err());
        let h = SubgroupSet::new(&g, &[vec![1, 1], vec![0, 0]]).unwrap();
        assert_eq!(h.elements(&g), [vec![0, 0], vec![1, 1]]);
    }

    #[test]
    fn codes_round_trip() {
        let g = grp(&[4, 3, 5]);
        for c in 0..g.order() {
            assert_eq!(g.encode(&g.decode(c)), c);
        }
        assert_eq!(g.decode(1), [0, 0, 1]);
        assert_eq!(g.decode(5), [0, 1, 0]);
    }

    #[test]
    fn cap_enforced() {
        let g = grp(&[2; 10]);
        assert!(matches!(
            counts_by_order(&g, DEFAULT_CAP),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            all_subgroups(&g, DEFAULT_CAP),
            Err(Error::Resource(_))
        ));
        assert_eq!(counts_by_order(&grp(&[1024]), 1024).unwrap().len(), 11);
        assert!(ExplicitGroup::new(vec![1]).is_err());
    }

    #[test]
    fn oracle_examples() {
        let t = PGroupType::from_parts(2, &[3, 1]).unwrap();
        let r = oracle_check(&t, DEFAULT_CAP).unwrap();
        assert!(r.passed(), "{r:?}");
        let total: u64 = counts_by_order(&ExplicitGroup::from_type(&t).unwrap(), 512)
            .unwrap()
            .values()
            .sum();
        assert_eq!(total, 11);

        let t = PGroupType::from_parts(3, &[1, 1, 1]).unwrap();
        assert!(oracle_check(&t, DEFAULT_CAP).unwrap().passed());
        let h = counts_by_order(&ExplicitGroup::from_type(&t).unwrap(), 512).unwrap();
        assert_eq!((h[&3], h[&9]), (13, 13));

        let t = PGroupType::from_parts(3, &[4, 2]).unwrap();
        assert!(matches!(
            oracle_check(&t, DEFAULT_CAP),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn oracle_small_sweep() {
        for p in [2u64, 3, 5, 7] {
            let mut n = 0;
            while p.pow(n + 1) <= 256 {
                n += 1;
                for d in partitions_of(n, None) {
                    let t = PGroupType::from_parts(p, d.parts()).unwrap();
                    let r = oracle_check(&t, 256).unwrap();
                    assert!(r.passed(), "{t}: {:?}", r.failures().collect::<Vec<_>>());
                }
            }
        }
    }

    #[test]
    fn from_spec_mixes_primes() {
        let g = ExplicitGroup::from_spec(&"2:[1];3:[1];5:[1]".parse().unwrap()).unwrap();
        assert_eq!(g.cyclic_orders(), [2, 3, 5]);
        assert_eq!(g.order(), 30);
        assert_eq!(g.to_string(), "Z_2×Z_3×Z_5");
    }
}
