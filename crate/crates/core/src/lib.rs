//! Exact subgroup-lattice statistics for finite abelian p-groups.
//!
//! A group of order `p^n` is named by a prime and a partition of `n`
//! ([`PGroupType`]); general finite abelian groups are products of such
//! components over distinct primes ([`AbelianGroupSpec`]). Counts are exact
//! integer polynomials in `p`, ratios are exact rationals.

pub mod beta;
pub mod classify;
pub mod count;
pub mod density;
pub mod error;
pub mod gauss;
pub mod group;
pub mod oracle;
pub mod partition;
pub mod poly;
pub mod primes;
pub mod verify;

pub use beta::{alpha, alpha_of_type, beta, beta_image, beta_of_type, format_decimal, Rational};
pub use count::{count_report, count_subgroups_of_type, lattice_size, s_k, CountReport};
pub use density::{approximate, ApproxLimits, ApproxResult};
pub use error::{Error, Result};
pub use gauss::gauss_binomial;
pub use group::{AbelianGroupSpec, PGroupType};
pub use oracle::{counts_by_order, oracle_check, ExplicitGroup, SubgroupSet};
pub use partition::{compare_preceq, partitions_of, Partition};
pub use poly::IntPolynomial;
pub use verify::{verify_theorems, CheckRecord, CheckStatus, VerificationReport};
