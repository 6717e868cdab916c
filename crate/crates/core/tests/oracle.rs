//! Cross-checks between the linear solver and the exhaustive search.

use std::collections::BTreeSet;

use funceq_core::alien::d1_solutions;
use funceq_core::brute::{brute_force_d1_solutions, brute_force_solutions};
use funceq_core::family::same_function_kernel;
use funceq_core::linear::{build_star_system, kernel};
use funceq_core::table::check_star;
use funceq_core::{FnTable, PrimeField};

fn z(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn assert_kernel_matches_brute_force(p: u64) -> usize {
    let field = z(p);
    let space = kernel(&build_star_system(field));
    let from_kernel: BTreeSet<_> = space.solutions().into_iter().collect();
    let from_search: BTreeSet<_> = brute_force_solutions(field).unwrap().into_iter().collect();
    assert_eq!(from_kernel, from_search, "p = {p}");
    assert_eq!(
        Some(from_search.len() as u128),
        space.cardinality(),
        "p = {p}"
    );
    space.dimension()
}

#[test]
fn kernel_equals_search_at_p2() {
    // Recorded from the search: 4 solutions.
    assert_eq!(assert_kernel_matches_brute_force(2), 2);
}

#[test]
fn kernel_equals_search_at_p3() {
    // Recorded from the search: 9 solutions.
    assert_eq!(assert_kernel_matches_brute_force(3), 2);
}

#[test]
fn kernel_equals_search_at_p5() {
    assert_eq!(assert_kernel_matches_brute_force(5), 3);
    assert_eq!(brute_force_solutions(z(5)).unwrap().len(), 125);
}

#[test]
fn d1_kernel_equals_search() {
    for p in [2, 3, 5] {
        assert_eq!(
            d1_solutions(z(p)),
            brute_force_d1_solutions(z(p)).unwrap(),
            "p = {p}"
        );
    }
    assert_eq!(
        brute_force_d1_solutions(z(5)).unwrap(),
        vec![FnTable::zero(z(5))]
    );
}

#[test]
fn same_function_kernel_equals_diagonal_of_search() {
    for p in [2, 3, 5] {
        let diagonal: Vec<FnTable> = brute_force_solutions(z(p))
            .unwrap()
            .into_iter()
            .filter(|(f, g)| f == g)
            .map(|(f, _)| f)
            .collect();
        assert_eq!(same_function_kernel(z(p)).functions(), diagonal, "p = {p}");
    }
}

#[test]
fn every_basis_vector_solves_the_equation() {
    for p in [2, 3, 5, 7, 11, 13] {
        let space = kernel(&build_star_system(z(p)));
        for v in space.basis() {
            let (f, g) = space.split(v);
            assert!(check_star(&f, &g).unwrap().is_empty(), "p = {p}");
        }
    }
}

#[test]
fn kernel_is_deterministic_across_thread_counts() {
    let reference = serde_json::to_string(&kernel(&build_star_system(z(13)))).unwrap();
    for threads in [1, 4] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        let (json, brute) = pool.install(|| {
            (
                serde_json::to_string(&kernel(&build_star_system(z(13)))).unwrap(),
                brute_force_solutions(z(3)).unwrap(),
            )
        });
        assert_eq!(json, reference);
        assert_eq!(brute, brute_force_solutions(z(3)).unwrap());
    }
}
