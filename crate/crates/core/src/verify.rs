//! Verification suites run by the `verify` command.

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{
    check_defining_relations, gram_rows, mul_basis, AlgebraElement, AlgebraParams, Preset,
};
use crate::center::{center, twisted_center};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::partitions::{center_dim_formula, expected_class_count, partitions};
use crate::perm::{check_n, factorial, Permutation};
use crate::quotients::{class_census, commutator_span, mobius_classes, twisted_commutator_span};

/// Basis pairs are checked exhaustively up to this many strands.
pub const EXHAUSTIVE_PAIRS_MAX_N: usize = 4;
/// Number of random basis pairs checked above the exhaustive range.
pub const RANDOM_PAIRS: usize = 10_000;
const PAIR_SEED: u64 = 0x6e69_6c68_6563_6b65;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Relations,
    Frobenius,
    Duality,
    Census,
    All,
}

impl Suite {
    pub const SINGLE: [Suite; 4] = [
        Suite::Relations,
        Suite::Frobenius,
        Suite::Duality,
        Suite::Census,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Frobenius => "frobenius",
            Suite::Duality => "duality",
            Suite::Census => "census",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::All]
            .into_iter()
            .chain(Suite::SINGLE)
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub n: usize,
    pub algebra: AlgebraParams,
    pub suite: String,
    pub checks: Vec<Check>,
    pub all_hold: bool,
}

fn check(suite: Suite, name: impl Into<String>, holds: bool, detail: impl Into<String>) -> Check {
    Check {
        suite: suite.name(),
        name: name.into(),
        holds,
        detail: detail.into(),
    }
}

pub fn run_suite(suite: Suite, n: usize, params: &AlgebraParams) -> Result<SuiteReport> {
    check_n(n)?;
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::SINGLE.to_vec(),
        s => vec![s],
    };
    let mut checks = Vec::new();
    for s in suites {
        match s {
            Suite::Relations => checks.extend(relations(n, params)?),
            Suite::Frobenius => checks.extend(frobenius(n, params)?),
            Suite::Duality => checks.extend(duality(n, params)?),
            Suite::Census => checks.extend(census(n, params)?),
            Suite::All => unreachable!(),
        }
    }
    Ok(SuiteReport {
        n,
        algebra: params.clone(),
        suite: suite.name().to_string(),
        all_hold: checks.iter().all(|c| c.holds),
        checks,
    })
}

fn relations(n: usize, params: &AlgebraParams) -> Result<Vec<Check>> {
    let report = check_defining_relations(n, params)?;
    Ok(report
        .checks
        .into_iter()
        .map(|c| check(Suite::Relations, c.family, c.holds, c.relation))
        .collect())
}

/// Pairs `(u, v)` with `trace(T_u T_v) != trace(T_v f(T_u))`, together with
/// the number of pairs examined.
pub fn trace_twist_failures(
    n: usize,
    params: &AlgebraParams,
) -> Result<(usize, Vec<(Permutation, Permutation)>)> {
    let all = Permutation::all(n)?;
    let pairs: Vec<(Permutation, Permutation)> = if n <= EXHAUSTIVE_PAIRS_MAX_N {
        all.iter()
            .flat_map(|u| all.iter().map(move |v| (u.clone(), v.clone())))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(PAIR_SEED);
        (0..RANDOM_PAIRS)
            .map(|_| {
                (
                    all[rng.gen_range(0..all.len())].clone(),
                    all[rng.gen_range(0..all.len())].clone(),
                )
            })
            .collect()
    };
    let mut failures = Vec::new();
    for (u, v) in &pairs {
        let lhs = mul_basis(params, u, v)?.trace();
        let fu = AlgebraElement::basis(params, u).involve();
        let rhs = AlgebraElement::basis(params, v).mul(&fu)?.trace();
        if lhs != rhs {
            failures.push((u.clone(), v.clone()));
        }
    }
    Ok((pairs.len(), failures))
}

fn frobenius(n: usize, params: &AlgebraParams) -> Result<Vec<Check>> {
    let dim = factorial(n);
    let r = rank(&gram_rows(n, params)?)?;
    let (examined, failures) = trace_twist_failures(n, params)?;
    let mode = if n <= EXHAUSTIVE_PAIRS_MAX_N {
        "exhaustive"
    } else {
        "random"
    };
    Ok(vec![
        check(
            Suite::Frobenius,
            "gram rank",
            r == dim,
            format!("rank {r} of {dim}"),
        ),
        check(
            Suite::Frobenius,
            "trace(xy) = trace(y f(x))",
            failures.is_empty(),
            format!("{examined} {mode} pairs, {} failures", failures.len()),
        ),
    ])
}

fn duality(n: usize, params: &AlgebraParams) -> Result<Vec<Check>> {
    let dim = factorial(n);
    let z = center(n, params)?.dim();
    let tq = dim - twisted_commutator_span(n, params)?.dim();
    let tz = twisted_center(n, params)?.dim();
    let q = dim - commutator_span(n, params)?.dim();
    Ok(vec![
        check(
            Suite::Duality,
            "dim Z = dim A/[A,A]_t",
            z == tq,
            format!("{z} vs {tq}"),
        ),
        check(
            Suite::Duality,
            "dim TZ = dim A/[A,A]",
            tz == q,
            format!("{tz} vs {q}"),
        ),
    ])
}

fn census(n: usize, params: &AlgebraParams) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    match params.preset() {
        Some(Preset::Nilcoxeter) => {
            let census = class_census(n, params)?;
            for lambda in partitions(n) {
                let got = census.get(&lambda.parts).copied().unwrap_or(0);
                let expected = expected_class_count(&lambda);
                checks.push(check(
                    Suite::Census,
                    format!("classes of cycle type {:?}", lambda.parts),
                    expected.to_usize() == Some(got),
                    format!("{got} vs {expected}"),
                ));
            }
            let classes = mobius_classes(n, params)?;
            let prime: Vec<usize> = (0..classes.len())
                .filter(|&idx| classes.class_cycle_type(idx) == Some(vec![n]))
                .collect();
            let lengths: Vec<Option<usize>> =
                prime.iter().map(|&idx| classes.class_length(idx)).collect();
            let target = (n - 1) / 2;
            checks.push(check(
                Suite::Census,
                "prime class crossing number",
                lengths == [Some(target)],
                format!("lengths {lengths:?}, expected [{target}]"),
            ));
            checks.push(class_count_check(n, params)?);
        }
        Some(Preset::ZeroHecke) => checks.push(class_count_check(n, params)?),
        Some(Preset::GroupAlgebra) => {
            let z = center(n, params)?.dim();
            let p = partitions(n).len();
            checks.push(check(
                Suite::Census,
                "dim Z = number of partitions",
                z == p,
                format!("{z} vs {p}"),
            ));
        }
        None => {}
    }
    Ok(checks)
}

fn class_count_check(n: usize, params: &AlgebraParams) -> Result<Check> {
    let count = mobius_classes(n, params)?.len();
    let formula = center_dim_formula(n);
    Ok(check(
        Suite::Census,
        "class count = dimension formula",
        formula.to_usize() == Some(count),
        format!("{count} vs {formula}"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rational;

    #[test]
    fn suite_names_roundtrip() {
        for s in [Suite::All].into_iter().chain(Suite::SINGLE) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn all_suites_pass_for_presets() {
        for preset in Preset::ALL {
            for n in 1..=4 {
                let report = run_suite(Suite::All, n, &preset.params()).unwrap();
                assert!(report.all_hold, "{preset:?} n={n}: {:?}", report.checks);
                assert!(!report.checks.is_empty());
            }
        }
    }

    #[test]
    fn random_pairs_above_exhaustive_range() {
        let (examined, failures) = trace_twist_failures(5, &AlgebraParams::zero_hecke()).unwrap();
        assert_eq!(examined, RANDOM_PAIRS);
        assert!(failures.is_empty());
    }

    #[test]
    fn census_covers_every_partition() {
        let report = run_suite(Suite::Census, 6, &AlgebraParams::nilcoxeter()).unwrap();
        assert_eq!(report.checks.len(), partitions(6).len() + 2);
        assert!(report.all_hold);
    }

    #[test]
    fn generic_params_skip_census() {
        let params = AlgebraParams::new(
            Rational::from_integer(2.into()),
            Rational::from_integer(3.into()),
        );
        let report = run_suite(Suite::Census, 3, &params).unwrap();
        assert!(report.checks.is_empty());
    }
}
