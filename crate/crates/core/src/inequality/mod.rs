//! Exact-rational checks for the inequality
//! `g(x+y) - g(x) - g(y) >= x f(y) + y f(x)` on finite dyadic grids.
//!
//! A grid is not closed under addition, so every universally quantified
//! statement involving `x + y` is checked on the additive core: the pairs
//! whose sum is again a grid point. No floating point is used anywhere.

mod grid;
pub mod input;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

pub use grid::{
    format_rational, parse_rational, DyadicGrid, GridFunction, Point, Rational, MAX_EXPONENT,
    MAX_POINTS,
};

use crate::error::{Error, Result};
use grid::same_grid;

fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `x f(y) + y f(x)` at grid points.
pub fn phi_at(f: &GridFunction, x: Point, y: Point) -> Rational {
    // (k f(y) + l f(x)) / 2^m with x = k/2^m, y = l/2^m: one normalisation instead of three
    let grid = f.grid();
    let sum = f.at(y) * BigInt::from(x.numerator()) + f.at(x) * BigInt::from(y.numerator());
    sum / BigInt::from(grid.scale())
}

/// `x f(y) + y f(x)`; both arguments must be grid points.
pub fn phi(f: &GridFunction, x: &Rational, y: &Rational) -> Result<Rational> {
    let grid = f.grid();
    Ok(phi_at(f, grid.point(x)?, grid.point(y)?))
}

/// A core pair where the inequality fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityViolation {
    pub x: String,
    pub y: String,
    pub lhs: String,
    pub rhs: String,
}

/// `g(x+y) - g(x) - g(y) - (x f(y) + y f(x))` at a core pair.
pub fn slack(f: &GridFunction, g: &GridFunction, x: Point, y: Point) -> Option<Rational> {
    let s = g.grid().sum(x, y)?;
    if let Some((num, den)) = scaled_slack(f, g, s, x, y) {
        return Some(Rational::new(num.into(), den.into()));
    }
    Some(g.at(s) - g.at(x) - g.at(y) - phi_at(f, x, y))
}

/// The slack at `(x, y)` with `s = x + y` as `num / den`, `den > 0`, when the
/// common-denominator forms of `f` and `g` keep everything inside `i128`.
fn scaled_slack(
    f: &GridFunction,
    g: &GridFunction,
    s: Point,
    x: Point,
    y: Point,
) -> Option<(i128, i128)> {
    let (fs, gs) = (f.scaled()?, g.scaled()?);
    let grid = g.grid();
    let ff = |p: Point| fs.nums[grid.index(p)];
    let gg = |p: Point| gs.nums[grid.index(p)];
    let scale = i128::from(grid.scale());
    let lhs = gg(s)
        .checked_sub(gg(x))?
        .checked_sub(gg(y))?
        .checked_mul(fs.den)?
        .checked_mul(scale)?;
    let rhs = i128::from(x.numerator())
        .checked_mul(ff(y))?
        .checked_add(i128::from(y.numerator()).checked_mul(ff(x))?)?
        .checked_mul(gs.den)?;
    Some((
        lhs.checked_sub(rhs)?,
        gs.den.checked_mul(fs.den)?.checked_mul(scale)?,
    ))
}

/// Every core pair violating the inequality; empty iff it holds on the core.
pub fn check_star_star(f: &GridFunction, g: &GridFunction) -> Result<Vec<InequalityViolation>> {
    let grid = same_grid(f, g)?;
    Ok(grid
        .core_pairs()
        .filter_map(|(x, y)| {
            let s = grid.sum(x, y).expect("core pair");
            if let Some((num, _)) = scaled_slack(f, g, s, x, y) {
                if num >= 0 {
                    return None;
                }
            }
            let lhs = g.at(s) - g.at(x) - g.at(y);
            let rhs = phi_at(f, x, y);
            (lhs < rhs).then(|| InequalityViolation {
                x: format_rational(&grid.value(x)),
                y: format_rational(&grid.value(y)),
                lhs: format_rational(&lhs),
                rhs: format_rational(&rhs),
            })
        })
        .collect())
}

/// Which hypotheses on `f` and `phi(x, y) = x f(y) + y f(x)` hold on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PhiHypothesisReport {
    /// `f(-x) = -f(x)`.
    pub odd: bool,
    /// `f(2x) = 2 f(x)` wherever `2x` is a grid point.
    pub doubling: bool,
    /// `phi(x, -y) >= -phi(x, y)` at every pair.
    pub np: bool,
    /// `phi(-x, -y) = phi(x, y)` at every pair.
    pub sign_symmetric: bool,
    /// `phi(2x, 2x) <= 4 phi(x, x)` wherever `2x` is a grid point.
    pub diagonal_growth: bool,
    /// `phi(2x, 2y) = 4 phi(x, y)` wherever both doublings are grid points.
    pub homogeneous: bool,
    /// `4^{-n} phi(2^n x, 2^n y) >= phi(x, y)` for every representable `n >= 1`.
    /// A finite truncation of the liminf condition, not a proof of it.
    pub growth_truncated: bool,
    pub additive_on_core: bool,
    /// Largest `n` for which some nonzero `2^n x` is still on the grid.
    pub max_doublings: u32,
}

impl PhiHypothesisReport {
    /// The conditions under which the subadditive representation applies.
    pub fn representation_hypotheses(&self) -> bool {
        self.odd && self.doubling && self.np && self.sign_symmetric && self.diagonal_growth
    }
}

pub fn check_phi_hypotheses(f: &GridFunction) -> PhiHypothesisReport {
    let grid = f.grid();
    let two = rational(2);
    let four = rational(4);
    let odd = f.is_odd();
    let doubling = grid
        .points()
        .all(|x| grid.double(x).is_none_or(|d| *f.at(d) == &two * f.at(x)));
    let np = grid
        .pairs()
        .all(|(x, y)| phi_at(f, x, grid.neg(y)) >= -phi_at(f, x, y));
    let sign_symmetric = grid
        .pairs()
        .all(|(x, y)| phi_at(f, grid.neg(x), grid.neg(y)) == phi_at(f, x, y));
    let diagonal_growth = grid.points().all(|x| {
        grid.double(x)
            .is_none_or(|d| phi_at(f, d, d) <= &four * phi_at(f, x, x))
    });
    let homogeneous = grid
        .pairs()
        .all(|(x, y)| match (grid.double(x), grid.double(y)) {
            (Some(dx), Some(dy)) => phi_at(f, dx, dy) == &four * phi_at(f, x, y),
            _ => true,
        });
    let growth_truncated = grid.pairs().all(|(x, y)| {
        let base = phi_at(f, x, y);
        let (mut dx, mut dy) = (x, y);
        let mut weight = Rational::one();
        loop {
            match (grid.double(dx), grid.double(dy)) {
                (Some(nx), Some(ny)) if (nx, ny) != (dx, dy) => {
                    dx = nx;
                    dy = ny;
                    weight /= &four;
                    if &weight * phi_at(f, dx, dy) < base {
                        return false;
                    }
                }
                _ => return true,
            }
        }
    });
    let max_doublings = grid.bound().ilog2();
    PhiHypothesisReport {
        odd,
        doubling,
        np,
        sign_symmetric,
        diagonal_growth,
        homogeneous,
        growth_truncated,
        additive_on_core: f.is_additive_on_core(),
        max_doublings,
    }
}

/// `phi(x, y+z) = phi(x, y) + phi(x, z)` whenever `y + z` is a grid point,
/// and `phi` symmetric. Cubic in the grid size.
pub fn phi_is_biadditive_and_symmetric(f: &GridFunction) -> bool {
    let grid = f.grid();
    let symmetric = grid
        .pairs()
        .all(|(x, y)| phi_at(f, x, y) == phi_at(f, y, x));
    symmetric
        && grid.points().all(|x| {
            grid.core_pairs().all(|(y, z)| {
                let s = grid.sum(y, z).expect("core pair");
                phi_at(f, x, s) == phi_at(f, x, y) + phi_at(f, x, z)
            })
        })
}

fn require_additive(f: &GridFunction) -> Result<()> {
    if f.is_additive_on_core() {
        Ok(())
    } else {
        Err(Error::Hypothesis(
            "f is not additive on the additive core".into(),
        ))
    }
}

/// `g(x) = x f(x) - A(x)` for additive `f` and subadditive `A`.
pub fn construct_solution(f: &GridFunction, a: &GridFunction) -> Result<GridFunction> {
    let grid = same_grid(f, a)?;
    require_additive(f)?;
    if let Some((x, y)) = a.subadditivity_violations().next() {
        return Err(Error::Hypothesis(format!(
            "A is not subadditive on the additive core: fails at ({}, {})",
            grid.value(x),
            grid.value(y)
        )));
    }
    Ok(GridFunction::from_values(
        grid,
        grid.points()
            .map(|x| grid.value(x) * f.at(x) - a.at(x))
            .collect(),
    )
    .expect("one value per point"))
}

/// `A(x) = x f(x) - g(x)`, certified subadditive on the core.
pub fn extract_remainder(f: &GridFunction, g: &GridFunction) -> Result<GridFunction> {
    let grid = same_grid(f, g)?;
    require_additive(f)?;
    let violations = check_star_star(f, g)?;
    if !violations.is_empty() {
        return Err(Error::Hypothesis(format!(
            "(f, g) violates the inequality at {} core pairs",
            violations.len()
        )));
    }
    let a = GridFunction::from_values(
        grid,
        grid.points()
            .map(|x| grid.value(x) * f.at(x) - g.at(x))
            .collect(),
    )
    .expect("one value per point");
    if !a.is_subadditive_on_core() {
        return Err(Error::Hypothesis(
            "remainder is not subadditive although the inequality holds".into(),
        ));
    }
    Ok(a)
}

/// Outcome of the halving condition `g(x/2^k) + g(-x/2^k) >= 0` for all large `k`,
/// truncated at the deepest representable `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalvingReport {
    pub x: String,
    pub holds: bool,
    /// Smallest `k0` such that the inequality holds for every `k0 <= k <= depth`.
    pub k0: Option<u32>,
    /// Deepest `k` with `x / 2^k` on the grid.
    pub depth: u32,
}

pub fn halving_report(g: &GridFunction, x: &Rational) -> Result<HalvingReport> {
    let grid = g.grid();
    let start = grid.point(x)?;
    let mut holds_at = Vec::new();
    let mut t = Some(start);
    for _ in 0..=grid.m {
        let Some(point) = t else { break };
        holds_at.push(g.at(point) + g.at(grid.neg(point)) >= Rational::zero());
        t = grid.halve(point);
    }
    let depth = (holds_at.len() - 1) as u32;
    let k0 = (0..=depth).find(|&k0| holds_at[k0 as usize..].iter().all(|&b| b));
    Ok(HalvingReport {
        x: format_rational(x),
        holds: k0.is_some(),
        k0,
        depth,
    })
}

/// Whether `g(x/2^k) + g(-x/2^k) >= 0` for all representable `k` past some `k0`.
pub fn check_c2_condition(g: &GridFunction, x: &Rational) -> Result<bool> {
    halving_report(g, x).map(|r| r.holds)
}

/// The chain showing that `phi <= 0` everywhere forces `f = 0` for odd `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AlienationFailureReport {
    /// `x f(y) + y f(x) <= 0` at every grid pair.
    pub premise: bool,
    /// `f(x) <= -f(1) x` for every `x` (from `y = 1`).
    pub upper_bound: bool,
    /// `f(x) >= -f(1) x` for every `x` (upper bound at `-x` plus oddness).
    pub lower_bound: bool,
    /// `f(1) = 0`.
    pub vanishes_at_one: bool,
    pub f_is_zero: bool,
    /// `premise => f = 0`.
    pub implication: bool,
}

pub fn alienation_failure_report(f: &GridFunction) -> Result<AlienationFailureReport> {
    if !f.is_odd() {
        return Err(Error::Hypothesis("f is not odd on the grid".into()));
    }
    let grid = f.grid();
    let premise = grid
        .pairs()
        .all(|(x, y)| phi_at(f, x, y) <= Rational::zero());
    let f1 = f.at(grid.one()).clone();
    let line = |x: Point| -(&f1 * grid.value(x));
    let upper_bound = grid.points().all(|x| *f.at(x) <= line(x));
    let lower_bound = grid.points().all(|x| *f.at(x) >= line(x));
    let vanishes_at_one = f1.is_zero();
    let f_is_zero = f.values().iter().all(Zero::is_zero);
    Ok(AlienationFailureReport {
        premise,
        upper_bound,
        lower_bound,
        vanishes_at_one,
        f_is_zero,
        implication: !premise || f_is_zero,
    })
}

/// For odd `f`: if `phi <= 0` at every grid pair then `f = 0`.
pub fn alienation_failure_check(f: &GridFunction) -> Result<bool> {
    alienation_failure_report(f).map(|r| r.implication)
}
