use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use funceq_core::alien::{alien_summary, equivalence_summary, lemma_l_check, z2_remark_check};
use funceq_core::brute::{brute_force_solutions, BRUTE_FORCE_MAX_P};
use funceq_core::family::{same_function_kernel, verify_family_exhausts_kernel};
use funceq_core::inequality::input::{evaluate, InequalityJob};
use funceq_core::linear::{build_star_system, kernel};
use funceq_core::table::check_proof_identities;
use funceq_core::{FnTable, PrimeField, SolutionSpace};

use crate::verdict::{check, Verdict};
use crate::Failure;

const SCOPE_SMALL: &str = "theorem scope: brute force only";

fn in_theorem_scope(field: PrimeField) -> bool {
    field.uniquely_divisible_by(2) && field.uniquely_divisible_by(3)
}

pub fn solve(field: PrimeField) -> SolutionSpace {
    kernel(&build_star_system(field))
}

fn oracle_details(field: PrimeField, space: &SolutionSpace) -> Result<(bool, Value), Failure> {
    let found = brute_force_solutions(field).map_err(|e| Failure::Usage(e.to_string()))?;
    let from_search: BTreeSet<_> = found.iter().cloned().collect();
    let from_kernel: BTreeSet<_> = space.solutions().into_iter().collect();
    let matches = from_search == from_kernel;
    Ok((
        matches,
        json!({ "solutions": found.len(), "matches_kernel": matches }),
    ))
}

fn identity_details(space: &SolutionSpace) -> (bool, Value) {
    let solutions = space.solutions();
    let all_hold = solutions.par_iter().all(|(f, g)| {
        check_proof_identities(f, g)
            .map(|r| r.all_hold())
            .unwrap_or(false)
    });
    (
        all_hold,
        json!({ "solutions_checked": solutions.len(), "all_hold": all_hold }),
    )
}

pub fn verify(field: PrimeField, oracle: bool) -> Result<Verdict, Failure> {
    let p = field.p();
    if oracle && p > BRUTE_FORCE_MAX_P {
        return Err(Failure::Usage(format!(
            "--oracle needs p <= {BRUTE_FORCE_MAX_P}; exhaustive search is out of reach at p = {p}"
        )));
    }
    let space = solve(field);
    let (identities_ok, identities) = identity_details(&space);
    let lemma = lemma_l_check(field);

    if !in_theorem_scope(field) {
        // the closed form does not apply; compare against the search instead
        let (oracle_ok, oracle) = oracle_details(field, &space)?;
        let mut checks = vec![
            check("brute_force_matches_kernel", oracle_ok),
            check("proof_identities", identities_ok),
            check("lemma_L", lemma),
        ];
        if p == 2 {
            checks.push(check("z2_remark", z2_remark_check()));
        }
        let alien = equivalence_summary(field).map_err(|e| Failure::Internal(e.to_string()))?;
        let same = same_function_kernel(field);
        let details = json!({
            "kernel_dimension": space.dimension(),
            "oracle": oracle,
            "proof_identities": identities,
            "alien_criteria": alien,
            "same_function_solutions": same.functions().len(),
        });
        let mut verdict = Verdict::new("verify", checks, details).with_prime(p);
        verdict.scope = Some(SCOPE_SMALL);
        return Ok(verdict);
    }

    let family =
        verify_family_exhausts_kernel(field).map_err(|e| Failure::Internal(e.to_string()))?;
    let alien = equivalence_summary(field).map_err(|e| Failure::Internal(e.to_string()))?;
    let same = same_function_kernel(field).functions();
    let only_zero = same.len() == 1 && same[0] == FnTable::zero(field);

    let mut checks = vec![
        check("kernel_dimension_is_3", space.dimension() == 3),
        check("family_exhausts_kernel", family.exhaustive),
        check("proof_identities", identities_ok),
        check("alien_criteria_equivalent", alien.equivalent()),
        check("lemma_L", lemma),
        check("same_function_only_zero", only_zero),
    ];
    let mut details = json!({
        "kernel_dimension": space.dimension(),
        "family": family,
        "proof_identities": identities,
        "alien_criteria": alien,
        "same_function_solutions": same.len(),
    });
    if oracle {
        let (oracle_ok, oracle) = oracle_details(field, &space)?;
        checks.push(check("brute_force_matches_kernel", oracle_ok));
        details["oracle"] = oracle;
    }
    Ok(Verdict::new("verify", checks, details).with_prime(p))
}

pub fn alien(field: PrimeField) -> Result<Verdict, Failure> {
    let summary = alien_summary(field).map_err(|e| Failure::Internal(e.to_string()))?;
    let mut checks = vec![check("lemma_L", summary.lemma_l)];
    if summary.in_scope {
        checks.push(check("alien_criteria_equivalent", summary.equivalence));
    }
    if field.p() == 2 {
        checks.push(check("z2_remark", z2_remark_check()));
    }
    let details = serde_json::to_value(&summary).expect("serializable");
    let mut verdict = Verdict::new("alien", checks, details).with_prime(field.p());
    if !summary.in_scope {
        verdict.scope = Some(SCOPE_SMALL);
    }
    Ok(verdict)
}

pub fn brute(field: PrimeField) -> Result<Verdict, Failure> {
    let found = brute_force_solutions(field).map_err(|e| Failure::Usage(e.to_string()))?;
    let space = solve(field);
    let from_kernel: BTreeSet<_> = space.solutions().into_iter().collect();
    let from_search: BTreeSet<_> = found.iter().cloned().collect();
    let matches = from_kernel == from_search;
    let listed: Vec<Value> = found
        .iter()
        .map(|(f, g)| json!({ "f": f, "g": g }))
        .collect();
    let details = json!({
        "count": found.len(),
        "kernel_dimension": space.dimension(),
        "matches_kernel": matches,
        "solutions": listed,
    });
    Ok(Verdict::new(
        "brute",
        vec![check("brute_force_matches_kernel", matches)],
        details,
    )
    .with_prime(field.p()))
}

pub fn cocycle(field: PrimeField, seed: u64, samples: usize) -> Verdict {
    let p = field.p();
    let exhaustive = p <= 5;
    let tables: Vec<FnTable> = if exhaustive {
        let count = (p as usize).pow(p);
        (0..count)
            .map(|mut index| {
                let values = (0..p)
                    .map(|_| {
                        let digit = (index % p as usize) as u32;
                        index /= p as usize;
                        digit
                    })
                    .collect();
                FnTable::new(field, values).expect("digits are residues")
            })
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples)
            .map(|_| FnTable::random(field, &mut rng))
            .collect()
    };
    let failures = tables
        .par_iter()
        .filter(|g| !g.cauchy_difference().check_cocycle_and_symmetry())
        .count();
    let mut details = json!({
        "mode": if exhaustive { "exhaustive" } else { "random" },
        "functions_checked": tables.len(),
        "failures": failures,
    });
    if !exhaustive {
        details["seed"] = json!(seed);
    }
    Verdict::new(
        "cocycle",
        vec![check("cocycle_and_symmetry", failures == 0)],
        details,
    )
    .with_prime(p)
}

pub fn ineq(source: &str) -> Result<Verdict, Failure> {
    let job = source
        .parse::<InequalityJob>()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let outcome = evaluate(&job);
    let checks = outcome
        .checks
        .iter()
        .map(|c| check(c.name, c.pass))
        .collect();
    let details = serde_json::to_value(&outcome).expect("serializable");
    let mut verdict = Verdict::new("ineq", checks, details);
    verdict.grid = Some(json!({ "m": job.grid.m, "K": job.grid.half_width }));
    Ok(verdict)
}
