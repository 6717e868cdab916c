//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use funceq_core::alien::{
    d1_solutions, lemma_l_check, verify_equivalence_over_kernel, z2_remark_check,
};
use funceq_core::brute::brute_force_solutions;
use funceq_core::family::{
    family_member, same_function_solutions, verify_family_exhausts_kernel, FamilyParams,
};
use funceq_core::inequality::{
    alienation_failure_check, check_phi_hypotheses, check_star_star, construct_solution,
    extract_remainder, parse_rational, slack, DyadicGrid, GridFunction, Rational,
};
use funceq_core::linear::{build_star_system, kernel};
use funceq_core::table::{check_proof_identities, check_star};
use funceq_core::{FnTable, PrimeField};

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, Duration, fn() -> Outcome);

fn z(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn kernel_dimension() -> Outcome {
    for p in [5, 7, 11, 13] {
        let started = Instant::now();
        let dim = kernel(&build_star_system(z(p))).dimension();
        ensure(dim == 3, || format!("p = {p}: dimension {dim}"))?;
        ensure(started.elapsed() < Duration::from_secs(1), || {
            format!("p = {p}: took {:?}", started.elapsed())
        })?;
    }
    Ok("dimension 3 at p = 5, 7, 11, 13".into())
}

fn oracle_equivalence() -> Outcome {
    let mut counts = Vec::new();
    for p in [2, 3, 5] {
        let space = kernel(&build_star_system(z(p)));
        let from_kernel: BTreeSet<_> = space.solutions().into_iter().collect();
        let from_search: BTreeSet<_> = brute_force_solutions(z(p))
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        ensure(from_kernel == from_search, || {
            format!("p = {p}: sets differ")
        })?;
        counts.push(format!("p={p}: {}", from_search.len()));
    }
    ensure(counts[2] == "p=5: 125", || {
        format!("expected 125 at p = 5, got {}", counts[2])
    })?;
    Ok(counts.join(", "))
}

fn family_exhaustiveness() -> Outcome {
    for p in [5, 7, 11, 13] {
        let field = z(p);
        let report = verify_family_exhausts_kernel(field).map_err(|e| e.to_string())?;
        ensure(report.exhaustive, || format!("p = {p}: {report:?}"))?;
        let params: Vec<_> = FamilyParams::all(field).collect();
        let clean = params.par_iter().all(|params| {
            let (f, g) = family_member(params).unwrap();
            check_star(&f, &g).unwrap().is_empty()
        });
        ensure(clean, || format!("p = {p}: a member violates the equation"))?;
    }
    Ok("family = kernel at p = 5, 7, 11, 13".into())
}

fn proof_identities() -> Outcome {
    let mut checked = 0;
    for p in [5, 7] {
        let solutions = kernel(&build_star_system(z(p))).solutions();
        for (f, g) in &solutions {
            let report = check_proof_identities(f, g).map_err(|e| e.to_string())?;
            ensure(report.core_identities_hold(), || {
                format!(
                    "p = {p}: f = {:?}, g = {:?}: {report:?}",
                    f.values(),
                    g.values()
                )
            })?;
        }
        checked += solutions.len();
    }
    Ok(format!("{checked} kernel solutions checked"))
}

fn lemma_l() -> Outcome {
    for p in [2, 3, 5, 7, 11, 13] {
        ensure(lemma_l_check(z(p)), || format!("p = {p}"))?;
    }
    for p in [3, 5, 7, 11, 13] {
        ensure(d1_solutions(z(p)) == vec![FnTable::zero(z(p))], || {
            format!("p = {p}: d1 kernel is not {{0}}")
        })?;
    }
    let at_two: BTreeSet<_> = d1_solutions(z(2)).into_iter().collect();
    let expected: BTreeSet<_> = [FnTable::zero(z(2)), FnTable::identity(z(2))].into();
    ensure(at_two == expected, || {
        "p = 2: d1 kernel is not {0, id}".into()
    })?;
    ensure(z2_remark_check(), || "p = 2 remark".into())?;
    Ok("holds for p <= 13; p = 2 kernel {0, id}".into())
}

fn alien_equivalence() -> Outcome {
    for p in [5, 7, 11, 13] {
        let ok = verify_equivalence_over_kernel(z(p)).map_err(|e| e.to_string())?;
        ensure(ok, || format!("p = {p}: criteria disagree"))?;
    }
    Ok("three criteria agree at p = 5, 7, 11, 13".into())
}

fn same_function() -> Outcome {
    for p in [5, 7, 11] {
        let found = same_function_solutions(z(p)).map_err(|e| e.to_string())?;
        ensure(found == vec![FnTable::zero(z(p))], || {
            format!("p = {p}: {} solutions", found.len())
        })?;
    }
    Ok("only f = 0 at p = 5, 7, 11".into())
}

fn cocycle() -> Outcome {
    let five = z(5);
    let all: Vec<FnTable> = (0..5usize.pow(5))
        .map(|mut index| {
            let values = (0..5)
                .map(|_| {
                    let digit = (index % 5) as u32;
                    index /= 5;
                    digit
                })
                .collect();
            FnTable::new(five, values).unwrap()
        })
        .collect();
    let bad = all
        .par_iter()
        .filter(|g| !g.cauchy_difference().check_cocycle_and_symmetry())
        .count();
    ensure(bad == 0, || format!("p = 5: {bad} failures"))?;
    for p in [7, 11] {
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        for _ in 0..1000 {
            let g = FnTable::random(z(p), &mut rng);
            ensure(g.cauchy_difference().check_cocycle_and_symmetry(), || {
                format!("p = {p}: g = {:?}", g.values())
            })?;
        }
    }
    Ok(format!(
        "{} exhaustive at p = 5, 1000 seeded at p = 7, 11",
        all.len()
    ))
}

fn representation_battery() -> Outcome {
    let grid = DyadicGrid::new(4, 8).map_err(|e| e.to_string())?;
    let slopes = ["0", "1", "-3/2", "5/16"];
    let remainders: Vec<(&str, GridFunction)> = vec![
        ("0", GridFunction::zero(grid)),
        ("|x|", GridFunction::abs(grid, &q("1"))),
        ("7/3|x|", GridFunction::abs(grid, &q("7/3"))),
        (
            "|x| - 2x",
            GridFunction::abs(grid, &q("1"))
                .add(&GridFunction::linear(grid, &q("-2")))
                .unwrap(),
        ),
    ];
    let mut pairs = 0;
    for slope in slopes {
        let f = GridFunction::linear(grid, &q(slope));
        for (label, a) in &remainders {
            let context = || format!("f = {slope}x, A = {label}");
            let g = construct_solution(&f, a).map_err(|e| format!("{}: {e}", context()))?;
            let violations = check_star_star(&f, &g).map_err(|e| e.to_string())?;
            ensure(violations.is_empty(), || {
                format!("{}: {} violations", context(), violations.len())
            })?;
            let back = extract_remainder(&f, &g).map_err(|e| format!("{}: {e}", context()))?;
            ensure(back == *a, || format!("{}: round trip differs", context()))?;
            let defect_ok = grid
                .core_pairs()
                .all(|(x, y)| slack(&f, &g, x, y) == a.subadditivity_defect(x, y));
            ensure(defect_ok, || format!("{}: slack != defect", context()))?;
            pairs += 1;
        }
    }
    Ok(format!(
        "{pairs} (f, A) pairs on m = 4, K = 8 ({} core pairs)",
        grid.core_size()
    ))
}

fn phi_hypotheses() -> Outcome {
    let grid = DyadicGrid::new(3, 4).map_err(|e| e.to_string())?;
    for slope in ["0", "1", "-2", "3/8"] {
        let report = check_phi_hypotheses(&GridFunction::linear(grid, &q(slope)));
        ensure(
            report.odd
                && report.doubling
                && report.np
                && report.sign_symmetric
                && report.diagonal_growth,
            || format!("f = {slope}x: {report:?}"),
        )?;
    }
    let cube = check_phi_hypotheses(&GridFunction::from_fn(grid, |x| x * x * x));
    ensure(cube.odd && !cube.doubling, || format!("f = x^3: {cube:?}"))?;
    Ok("additive f satisfy every condition; x^3 fails doubling".into())
}

fn alienation_failure() -> Outcome {
    // m = 1, K = 2: nine points, four of them positive
    let grid = DyadicGrid::new(1, 2).map_err(|e| e.to_string())?;
    let candidates: Vec<Rational> = ["-2", "-1", "-1/2", "0", "1/2", "1", "2"]
        .iter()
        .map(|s| q(s))
        .collect();
    let positives = 4;
    let total = candidates.len().pow(positives);
    let mut premise_holders = 0;
    for mut index in 0..total {
        let mut chosen = Vec::with_capacity(positives as usize);
        for _ in 0..positives {
            chosen.push(candidates[index % candidates.len()].clone());
            index /= candidates.len();
        }
        // grid values 1/2, 1, 3/2, 2 map to chosen[0..4]; extend oddly
        let f = GridFunction::from_fn(grid, |x| {
            let k = (x * Rational::from_integer(2.into())).to_integer();
            let k: i64 = k.try_into().unwrap();
            match k.signum() {
                0 => Rational::from_integer(0.into()),
                1 => chosen[(k - 1) as usize].clone(),
                _ => -chosen[(-k - 1) as usize].clone(),
            }
        });
        let implication = alienation_failure_check(&f).map_err(|e| e.to_string())?;
        ensure(implication, || format!("counterexample {:?}", f.values()))?;
        let premise = grid.pairs().all(|(x, y)| {
            grid.value(x) * f.at(y) + grid.value(y) * f.at(x) <= Rational::from_integer(0.into())
        });
        if premise {
            premise_holders += 1;
            ensure(
                f.values()
                    .iter()
                    .all(|v| *v == Rational::from_integer(0.into())),
                || format!("nonzero f satisfies the premise: {:?}", f.values()),
            )?;
        }
    }
    ensure(premise_holders == 1, || {
        format!("{premise_holders} functions satisfy the premise")
    })?;
    Ok(format!("{total} odd functions; only f = 0 has phi <= 0"))
}

fn determinism() -> Outcome {
    let run = |threads: &str| -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_funceq"))
            .args(["verify", "--prime", "7", "--threads", threads])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || {
            format!("--threads {threads}: {}", out.status)
        })?;
        Ok(out.stdout)
    };
    let reference = run("1")?;
    for threads in ["1", "8", "8"] {
        ensure(run(threads)? == reference, || {
            format!("--threads {threads} differs")
        })?;
    }
    Ok(format!("{} identical bytes across 4 runs", reference.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (
            "AC1",
            "kernel dimension",
            Duration::from_secs(4),
            kernel_dimension,
        ),
        (
            "AC2",
            "oracle equivalence",
            Duration::from_secs(300),
            oracle_equivalence,
        ),
        (
            "AC3",
            "family exhaustiveness",
            Duration::from_secs(10),
            family_exhaustiveness,
        ),
        (
            "AC4",
            "proof identities",
            Duration::from_secs(5),
            proof_identities,
        ),
        ("AC5", "d1 lemma", Duration::from_secs(1), lemma_l),
        (
            "AC6",
            "alien criteria",
            Duration::from_secs(10),
            alien_equivalence,
        ),
        (
            "AC7",
            "same-function solutions",
            Duration::from_secs(1),
            same_function,
        ),
        (
            "AC8",
            "cocycle and symmetry",
            Duration::from_secs(30),
            cocycle,
        ),
        (
            "AC9",
            "subadditive representation",
            Duration::from_secs(5),
            representation_battery,
        ),
        (
            "AC10",
            "phi hypotheses",
            Duration::from_secs(1),
            phi_hypotheses,
        ),
        (
            "AC11",
            "alienation failure",
            Duration::from_secs(10),
            alienation_failure,
        ),
        ("AC12", "determinism", Duration::from_secs(60), determinism),
    ];
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        let started = Instant::now();
        let outcome = run();
        let elapsed = started.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > budget => Err(format!("{msg}; over budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("[PASS] {id} {name}: {msg} ({} ms)", elapsed.as_millis()),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {id} {name}: {msg} ({} ms)", elapsed.as_millis());
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
