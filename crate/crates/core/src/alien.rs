//! Alien solutions: pairs that solve the equation because `g` is additive and
//! `x f(y) + y f(x)` vanishes identically.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linear::{build_d1_system, build_star_system, kernel};
use crate::table::{check_star, FnTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AlienReport {
    /// `f = 0` and `g` additive.
    pub is_alien: bool,
    /// `f` even and `f(1) = 0`.
    pub crit_ii: bool,
    /// `g` odd and `g(2) = 2 g(1)`.
    pub crit_iii: bool,
    pub equivalent: bool,
    /// False for `p < 5`, where 2 or 3 is not invertible and the criteria
    /// are not claimed to agree.
    pub in_scope: bool,
}

fn in_scope(field: PrimeField) -> bool {
    field.uniquely_divisible_by(2) && field.uniquely_divisible_by(3)
}

/// Evaluates the three alien criteria on a solution.
pub fn alien_report(f: &FnTable, g: &FnTable) -> Result<AlienReport> {
    let violations = check_star(f, g)?;
    if !violations.is_empty() {
        return Err(Error::NotASolution {
            violations: violations.len(),
        });
    }
    let field = f.field();
    let one = 1 % field.p();
    let two = 2 % field.p();
    let is_alien = f.is_zero() && g.is_additive();
    let crit_ii = f.is_even() && f.at(one) == 0;
    let crit_iii = g.is_odd() && g.at(two) == field.mul_raw(two, g.at(one));
    Ok(AlienReport {
        is_alien,
        crit_ii,
        crit_iii,
        equivalent: is_alien == crit_ii && crit_ii == crit_iii,
        in_scope: in_scope(field),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceSummary {
    pub p: u32,
    pub solutions: usize,
    pub alien_count: usize,
    /// Solutions at which the three criteria disagree.
    pub disagreements: usize,
    pub in_scope: bool,
}

impl EquivalenceSummary {
    pub fn equivalent(&self) -> bool {
        self.disagreements == 0
    }
}

/// Alien reports over the whole kernel, for any prime. Out-of-scope primes
/// yield data only.
pub fn equivalence_summary(field: PrimeField) -> Result<EquivalenceSummary> {
    let space = kernel(&build_star_system(field));
    let reports = space
        .solutions()
        .par_iter()
        .map(|(f, g)| alien_report(f, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(EquivalenceSummary {
        p: field.p(),
        solutions: reports.len(),
        alien_count: reports.iter().filter(|r| r.is_alien).count(),
        disagreements: reports.iter().filter(|r| !r.equivalent).count(),
        in_scope: in_scope(field),
    })
}

/// The three criteria agree on every kernel solution; `p >= 5`.
pub fn verify_equivalence_over_kernel(field: PrimeField) -> Result<bool> {
    if !in_scope(field) {
        return Err(Error::OutOfScope {
            p: field.p(),
            reason: "the alien criteria are only claimed when 2 and 3 are invertible",
        });
    }
    Ok(equivalence_summary(field)?.equivalent())
}

/// All `f` with `x f(y) + y f(x) = 0`, from the kernel of the linearized system.
pub fn d1_solutions(field: PrimeField) -> Vec<FnTable> {
    kernel(&build_d1_system(field)).functions()
}

/// Every solution of `x f(y) + y f(x) = 0` satisfies `2f = 0`.
pub fn lemma_l_check(field: PrimeField) -> bool {
    d1_solutions(field)
        .iter()
        .all(|f| f.scaled(2 % field.p()).is_zero())
}

/// Over `Z_2`: the identity solves `x f(y) + y f(x) = 0`; the constant 1 and
/// `x + 1` do not.
pub fn z2_remark_check() -> bool {
    let z2 = PrimeField::new(2).expect("2 is prime");
    let solves = |f: &FnTable| {
        (0..2u32).all(|x| (0..2u32).all(|y| (x * f.at(y) + y * f.at(x)).is_multiple_of(2)))
    };
    let identity = FnTable::identity(z2);
    let constant = FnTable::new(z2, vec![1, 1]).expect("residues");
    let shifted = FnTable::new(z2, vec![1, 0]).expect("residues");
    solves(&identity) && !solves(&constant) && !solves(&shifted)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlienSummary {
    pub p: u32,
    #[serde(rename = "lemma_L")]
    pub lemma_l: bool,
    pub equivalence: bool,
    pub alien_count: usize,
    pub in_scope: bool,
}

/// The per-prime alienation report.
pub fn alien_summary(field: PrimeField) -> Result<AlienSummary> {
    let summary = equivalence_summary(field)?;
    Ok(AlienSummary {
        p: field.p(),
        lemma_l: lemma_l_check(field),
        equivalence: summary.equivalent(),
        alien_count: summary.alien_count,
        in_scope: summary.in_scope,
    })
}
