use proptest::prelude::*;

use funceq_core::alien::alien_report;
use funceq_core::family::{family_member, recover_params, FamilyParams};
use funceq_core::inequality::{
    check_star_star, construct_solution, extract_remainder, phi_is_biadditive_and_symmetric, slack,
    DyadicGrid, GridFunction, Rational,
};
use funceq_core::table::{check_proof_identities, check_star};
use funceq_core::{FnTable, PrimeField};

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn any_field() -> impl Strategy<Value = PrimeField> {
    prop::sample::select(PRIMES.to_vec()).prop_map(|p| PrimeField::new(p).unwrap())
}

fn field_of_char_at_least_5() -> impl Strategy<Value = PrimeField> {
    prop::sample::select(vec![5u64, 7, 11, 13]).prop_map(|p| PrimeField::new(p).unwrap())
}

fn any_table() -> impl Strategy<Value = FnTable> {
    any_field().prop_flat_map(|field| {
        prop::collection::vec(0..field.p(), field.order())
            .prop_map(move |values| FnTable::new(field, values).unwrap())
    })
}

fn family_params() -> impl Strategy<Value = FamilyParams> {
    field_of_char_at_least_5().prop_flat_map(|field| {
        let p = u64::from(field.p());
        (0..p, 0..p, 0..p).prop_map(move |(a, b, c)| FamilyParams::from_raw(field, a, b, c))
    })
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

proptest! {
    #[test]
    fn ring_axioms(field in any_field(), a in 0u64..13, b in 0u64..13, c in 0u64..13) {
        let (a, b, c) = (field.elem(a), field.elem(b), field.elem(c));
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!((a + b) + c, a + (b + c));
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a + (-a), field.zero());
        if !a.is_zero() {
            prop_assert_eq!(a * a.inv().unwrap(), field.one());
        }
    }

    #[test]
    fn parity_round_trip(f in any_table()) {
        let field = f.field();
        let (odd, even) = f.parity_decompose();
        prop_assert!(odd.is_odd());
        prop_assert!(even.is_even());
        for x in 0..field.p() {
            prop_assert_eq!(
                field.add_raw(odd.at(x), even.at(x)),
                field.mul_raw(2 % field.p(), f.at(x))
            );
        }
    }

    #[test]
    fn cauchy_differences_are_symmetric_cocycles(g in any_table()) {
        prop_assert!(g.cauchy_difference().check_cocycle_and_symmetry());
    }

    #[test]
    fn family_members_solve_and_satisfy_every_identity(params in family_params()) {
        let (f, g) = family_member(&params).unwrap();
        prop_assert!(check_star(&f, &g).unwrap().is_empty());
        let report = check_proof_identities(&f, &g).unwrap();
        prop_assert!(report.all_hold(), "{:?}", report);
        prop_assert_eq!(recover_params(&f, &g).unwrap(), params);
        let alien = alien_report(&f, &g).unwrap();
        prop_assert!(alien.equivalent);
        prop_assert_eq!(alien.is_alien, params.a().is_zero() && params.c().is_zero());
    }

    #[test]
    fn alien_flavoured_members(field in field_of_char_at_least_5(), b in 0u64..13) {
        let (f, g) = family_member(&FamilyParams::from_raw(field, 0, b, 0)).unwrap();
        prop_assert!(f.is_zero());
        prop_assert!(g.is_additive());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// For additive `f`, `A = x f(x) - g(x)` is subadditive exactly when
    /// `(f, g)` satisfies the inequality, for arbitrary `g`.
    #[test]
    fn remainder_subadditive_iff_inequality(
        slope in small_rational(),
        values in prop::collection::vec(small_rational(), 17),
    ) {
        let grid = DyadicGrid::new(1, 4).unwrap();
        let f = GridFunction::linear(grid, &slope);
        let g = GridFunction::from_values(grid, values).unwrap();
        let a = GridFunction::from_fn(grid, |x| x * f.eval(x).unwrap() - g.eval(x).unwrap());
        let inequality = check_star_star(&f, &g).unwrap().is_empty();
        prop_assert_eq!(a.is_subadditive_on_core(), inequality);
        prop_assert_eq!(extract_remainder(&f, &g).is_ok(), inequality);
        for (x, y) in grid.core_pairs() {
            prop_assert_eq!(slack(&f, &g, x, y), a.subadditivity_defect(x, y));
        }
    }

    #[test]
    fn construct_then_extract_is_identity(
        slope in small_rational(),
        weight in small_rational().prop_map(|q| if q < Rational::from_integer(0.into()) { -q } else { q }),
        drift in small_rational(),
    ) {
        let grid = DyadicGrid::new(2, 3).unwrap();
        let f = GridFunction::linear(grid, &slope);
        let a = GridFunction::abs(grid, &weight).add(&GridFunction::linear(grid, &drift)).unwrap();
        let g = construct_solution(&f, &a).unwrap();
        prop_assert!(check_star_star(&f, &g).unwrap().is_empty());
        prop_assert_eq!(extract_remainder(&f, &g).unwrap(), a.clone());
        for (x, y) in grid.core_pairs() {
            let s = slack(&f, &g, x, y).unwrap();
            prop_assert!(s >= Rational::from_integer(0.into()));
            prop_assert_eq!(Some(s), a.subadditivity_defect(x, y));
        }
    }

    #[test]
    fn phi_of_additive_f_is_biadditive(slope in small_rational()) {
        let grid = DyadicGrid::new(1, 2).unwrap();
        prop_assert!(phi_is_biadditive_and_symmetric(&GridFunction::linear(grid, &slope)));
    }
}
