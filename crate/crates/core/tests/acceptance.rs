// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails or overruns its time budget.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use betalattice::beta::{beta_image_size, hereditary_beta_le_one, scan_beta_equal_one};
use betalattice::classify::{
    is_monotone, rank2_monotone_scan, second_min_check, third_min_check, Candidate,
};
use betalattice::count::{lattice_size_modular, lattice_size_quaternion, lattice_size_rank3};
use betalattice::density::{approximate, ApproxLimits};
use betalattice::oracle::{oracle_check, DEFAULT_CAP};
use betalattice::verify::{CONGRUENCE, CONGRUENCE2, DUALITY, UNIMODAL};
use betalattice::{
    beta, lattice_size, partitions_of, verify_theorems, AbelianGroupSpec, CheckStatus, PGroupType,
    Partition, Rational,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn ty(p: u64, parts: &[u32]) -> PGroupType {
    PGroupType::from_parts(p, parts).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixtures_322_354_258() -> Outcome {
    let cases = [
        ([4u32, 4, 1], (1, 4, 4), 322),
        ([5, 2, 2], (2, 2, 5), 354),
        ([5, 3, 1], (1, 3, 5), 258),
    ];
    for (parts, (d1, d2, d3), want) in cases {
        let hall = lattice_size(&ty(2, &parts));
        let closed = lattice_size_rank3(2, d1, d2, d3).map_err(|e| e.to_string())?;
        ensure(
            hall == BigInt::from(want) && closed == BigInt::from(want),
            || format!("{parts:?}: Hall sum {hall}, closed form {closed}, expected {want}"),
        )?;
    }
    // (4,4,1) ⪯ (5,2,2) ⪯ (5,3,1) but 322 < 354 > 258
    let chain: Vec<Partition> = cases
        .iter()
        .map(|c| Partition::new(c.0.to_vec()).unwrap())
        .collect();
    ensure(!is_monotone(2, &chain).unwrap(), || {
        "β is monotone along the chain".into()
    })
}

fn eleven_sixteenths() -> Outcome {
    let z2z8 = beta(&"2:[1,3]".parse::<AbelianGroupSpec>().unwrap());
    let q16 = Rational::new(lattice_size_quaternion(4).unwrap(), 16.into());
    let m16 = Rational::new(lattice_size_modular(2, 4).unwrap(), 16.into());
    let q8 = Rational::new(lattice_size_quaternion(3).unwrap(), 8.into());
    ensure(
        z2z8 == q(11, 16) && q16 == q(11, 16) && m16 == q(11, 16) && q8 == q(3, 4),
        || format!("Z_2×Z_8 {z2z8}, Q_16 {q16}, M(16) {m16}, Q_8 {q8}"),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut types = 0;
    for p in [2u64, 3, 5] {
        let mut n = 0u32;
        while p.pow(n) <= DEFAULT_CAP {
            for d in partitions_of(n, None) {
                let t = ty(p, d.parts());
                let r = oracle_check(&t, DEFAULT_CAP).map_err(|e| e.to_string())?;
                if let Some(f) = r.failures().next() {
                    return Err(format!("{t}: {f:?}"));
                }
                types += 1;
            }
            n += 1;
        }
    }
    // 97 partitions of n <= 9, 19 of n <= 5, 7 of n <= 3
    ensure(types == 97 + 19 + 7, || format!("swept {types} types"))
}

fn congruences() -> Outcome {
    for p in [2u64, 3, 5, 7] {
        for n in 1..=8 {
            for d in partitions_of(n, None) {
                let t = ty(p, d.parts());
                let r = verify_theorems(&t);
                ensure(r.status_of(CONGRUENCE) == Some(&CheckStatus::Pass), || {
                    format!("{t}: {:?}", r.status_of(CONGRUENCE))
                })?;
                if p != 2 && !t.is_cyclic() {
                    ensure(r.status_of(CONGRUENCE2) == Some(&CheckStatus::Pass), || {
                        format!("{t}: {:?}", r.status_of(CONGRUENCE2))
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn duality_unimodality() -> Outcome {
    // both checks run on the polynomials in p, so one prime covers them all
    for n in 0..=10 {
        for d in partitions_of(n, None) {
            let t = ty(2, d.parts());
            let r = verify_theorems(&t);
            for name in [DUALITY, UNIMODAL] {
                ensure(r.status_of(name) == Some(&CheckStatus::Pass), || {
                    format!("{t} {name}: {:?}", r.status_of(name))
                })?;
            }
        }
    }
    Ok(())
}

fn extremal_classifications() -> Outcome {
    for p in [2u64, 3, 5] {
        for n in 3..=8 {
            let r = second_min_check(p, n).map_err(|e| e.to_string())?;
            ensure(r.passed(), || {
                format!("second minimum p={p} n={n}: {:?}", r.checks)
            })?;
        }
    }
    let tie = second_min_check(2, 4).unwrap().extremal;
    let want = vec![
        Candidate::Abelian(Partition::new(vec![3, 1]).unwrap()),
        Candidate::Quaternion(4),
        Candidate::Modular(2, 4),
    ];
    ensure(tie == want, || format!("p=2 n=4 tie {tie:?}"))?;
    for p in [3u64, 5] {
        for n in 4..=8 {
            let r = third_min_check(p, n).map_err(|e| e.to_string())?;
            ensure(r.passed(), || {
                format!("third minimum p={p} n={n}: {:?}", r.checks)
            })?;
        }
    }
    for p in [2u64, 3, 5] {
        for n in 4..=12 {
            let r = rank2_monotone_scan(p, n).map_err(|e| e.to_string())?;
            ensure(r.passed(), || {
                format!(
                    "rank-2 scan p={p} n={n}: {:?}",
                    r.failures().collect::<Vec<_>>()
                )
            })?;
        }
    }
    Ok(())
}

fn hereditary_and_image() -> Outcome {
    for p in [2u64, 3, 5, 7, 11] {
        for n in 1..=10 {
            for d in partitions_of(n, None) {
                let t = ty(p, d.parts());
                let rank = d.len();
                let predicate = rank == 1 || (rank == 2 && p >= 3) || (rank == 3 && p >= 5);
                ensure(hereditary_beta_le_one(&t) == predicate, || {
                    format!("{t}: hereditary {} predicate {predicate}", !predicate)
                })?;
            }
        }
    }
    let mut size1 = BTreeSet::new();
    let mut size2 = BTreeSet::new();
    for p in [2u64, 3, 5, 7] {
        for n in 1..=6 {
            for d in partitions_of(n, None) {
                match beta_image_size(&ty(p, d.parts())) {
                    1 => size1.insert((p, d.parts().to_vec())),
                    2 => size2.insert((p, d.parts().to_vec())),
                    _ => false,
                };
            }
        }
    }
    let want1 = BTreeSet::from([(2, vec![1])]);
    let want2 = BTreeSet::from([
        (2, vec![2]),
        (2, vec![1, 1]),
        (3, vec![1]),
        (3, vec![1, 1]),
        (5, vec![1]),
        (7, vec![1]),
    ]);
    ensure(size1 == want1 && size2 == want2, || {
        format!("image size 1: {size1:?}; size 2: {size2:?}")
    })
}

/// β of a density witness from first principles: `Z_p` contributes `2/p`,
/// `Z_p^4` contributes `(p^4 + 3p^3 + 4p^2 + 3p + 5)/p^4`.
fn witness_beta(g: &AbelianGroupSpec) -> Result<Rational, String> {
    let mut acc = Rational::one();
    for c in g.components() {
        let p = c.p_int();
        match c.partition().parts() {
            [1] => acc *= Rational::new(BigInt::from(2), p),
            [1, 1, 1, 1] => {
                let num = p.pow(4) + 3 * p.pow(3) + 4 * p.pow(2) + 3 * &p + 5;
                acc *= Rational::new(num, p.pow(4));
            }
            other => return Err(format!("unexpected component {other:?}")),
        }
    }
    Ok(acc)
}

fn density() -> Outcome {
    let limits = ApproxLimits::default();
    let eps = q(1, 1000);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0bad_cafe);
    for i in 0..200 {
        let den: i64 = rng.gen_range(1..=1000);
        let num: i64 = rng.gen_range(0..=10 * den);
        let x = q(num, den);
        let r = approximate(&x, &eps, &limits).map_err(|e| format!("target {x}: {e}"))?;
        let b = witness_beta(&r.group)?;
        ensure(b == r.achieved && (&b - &x).abs() <= eps, || {
            format!("target #{i} {x}: witness {} has β {b}", r.group)
        })?;
    }
    let one = approximate(&q(1, 1), &eps, &limits).map_err(|e| e.to_string())?;
    ensure(one.error.is_zero(), || format!("x=1 error {}", one.error))?;
    let zero = approximate(&Rational::zero(), &q(1, 100), &limits).map_err(|e| e.to_string())?;
    ensure(zero.group.to_string() == "211:[1]", || {
        format!("x=0 witness {}", zero.group)
    })
}

fn beta_one_scan() -> Outcome {
    let names: Vec<String> = scan_beta_equal_one(2, 10)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|t| t.to_string())
        .collect();
    ensure(names == ["2:[1]", "2:[2,1]"], || format!("p=2: {names:?}"))?;
    for p in [3u64, 5, 7] {
        let found = scan_beta_equal_one(p, 8).map_err(|e| e.to_string())?;
        ensure(found.is_empty(), || format!("p={p}: {found:?}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            1,
            "lattice sizes 322/354/258 by Hall sum and closed form",
            Duration::from_secs(1),
            fixtures_322_354_258,
        ),
        (
            2,
            "β = 11/16 for Z_2×Z_8, Q_16, M(16); β(Q_8) = 3/4",
            Duration::from_secs(1),
            eleven_sixteenths,
        ),
        (
            3,
            "brute-force enumeration matches layer counts, order <= 512",
            Duration::from_secs(120),
            oracle_equivalence,
        ),
        (
            4,
            "congruences mod p and mod p^2",
            Duration::from_secs(30),
            congruences,
        ),
        (
            5,
            "duality and coefficient unimodality, n <= 10",
            Duration::from_secs(60),
            duality_unimodality,
        ),
        (
            6,
            "second/third minimum and rank-2 monotonicity",
            Duration::from_secs(60),
            extremal_classifications,
        ),
        (
            7,
            "hereditary β <= 1 and image-size classifications",
            Duration::from_secs(60),
            hereditary_and_image,
        ),
        (
            8,
            "density witnesses for 200 targets, eps = 1/1000",
            Duration::from_secs(120),
            density,
        ),
        (9, "β = 1 scan", Duration::from_secs(60), beta_one_scan),
    ];
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let verdict = match (&outcome, elapsed <= budget) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over budget of {budget:?})"),
            (Err(e), _) => format!("FAIL: {e}"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!(
            "criterion {id}: {verdict} [{name}; {:.3}s]",
            elapsed.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
