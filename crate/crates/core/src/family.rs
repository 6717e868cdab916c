//! The closed-form solution family and the proof that it exhausts the kernel.
//!
//! Additive self-maps of `Z_p` are exactly `x -> a x`, so the two additive
//! maps of the family collapse to slopes and the family is indexed by a
//! triple `(a, b, c)`:
//!
//! ```text
//! f(x) = a x + c x^2
//! g(x) = b x + a x^2 + c x^3 / 3
//! ```
//!
//! The division by 3 needs `p >= 5`. In characteristics 2 and 3 the general
//! form `4f = 2A_1 + 2cx^2`, `6g = A_2 + 3xA_1 + cx^3` degenerates and the
//! solution set is only available from the exhaustive search.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, PrimeField};
use crate::linear::{build_same_function_system, build_star_system, kernel, SolutionSpace};
use crate::table::{is_solution, FnTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilyParams {
    a: Elem,
    b: Elem,
    c: Elem,
}

impl FamilyParams {
    pub fn new(a: Elem, b: Elem, c: Elem) -> Result<Self> {
        for other in [b, c] {
            if other.field() != a.field() {
                return Err(Error::FieldMismatch {
                    left: a.field().p(),
                    right: other.field().p(),
                });
            }
        }
        Ok(Self { a, b, c })
    }

    pub fn from_raw(field: PrimeField, a: u64, b: u64, c: u64) -> Self {
        Self {
            a: field.elem(a),
            b: field.elem(b),
            c: field.elem(c),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.a.field()
    }

    /// Slope of `A_1`.
    pub fn a(&self) -> Elem {
        self.a
    }

    /// Slope of `A_2`.
    pub fn b(&self) -> Elem {
        self.b
    }

    pub fn c(&self) -> Elem {
        self.c
    }

    /// All `p^3` triples, `a`-major.
    pub fn all(field: PrimeField) -> impl Iterator<Item = FamilyParams> {
        let p = u64::from(field.p());
        (0..p).flat_map(move |a| {
            (0..p).flat_map(move |b| (0..p).map(move |c| FamilyParams::from_raw(field, a, b, c)))
        })
    }
}

impl Serialize for FamilyParams {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw {
            a: u32,
            b: u32,
            c: u32,
        }
        Raw {
            a: self.a.value(),
            b: self.b.value(),
            c: self.c.value(),
        }
        .serialize(s)
    }
}

fn require_divisible_by_six(field: PrimeField) -> Result<()> {
    if field.uniquely_divisible_by(2) && field.uniquely_divisible_by(3) {
        Ok(())
    } else {
        Err(Error::OutOfScope {
            p: field.p(),
            reason: "the closed form needs 2 and 3 to be invertible (p >= 5)",
        })
    }
}

/// `f(x) = ax + cx^2`, `g(x) = bx + ax^2 + 3^{-1} c x^3`.
pub fn family_member(params: &FamilyParams) -> Result<(FnTable, FnTable)> {
    let field = params.field();
    require_divisible_by_six(field)?;
    let third = field.elem(3).inv()?;
    let (a, b, c) = (params.a, params.b, params.c);
    let f = FnTable::from_fn(field, |x| a * x + c * x * x);
    let g = FnTable::from_fn(field, |x| b * x + a * x * x + third * c * x * x * x);
    Ok((f, g))
}

/// Inverse of [`family_member`]: reads `(a, b, c)` off `f(1), f(2), g(1)`.
///
/// Only meaningful for members of the family; `p >= 5`.
pub fn recover_params(f: &FnTable, g: &FnTable) -> Result<FamilyParams> {
    let field = f.field();
    require_divisible_by_six(field)?;
    let f1 = f.get(field.elem(1));
    let f2 = f.get(field.elem(2));
    let g1 = g.get(field.elem(1));
    let two = field.elem(2);
    // f(1) = a + c, f(2) = 2a + 4c  =>  2c = f(2) - 2 f(1)
    let c = (f2 - two * f1) * two.inv()?;
    let a = f1 - c;
    let b = g1 - a - c * field.elem(3).inv()?;
    FamilyParams::new(a, b, c)
}

/// What the unreduced closed form `4f = 2A_1 + 2cx^2`, `6g = A_2 + 3xA_1 + cx^3`
/// says about `(f, g)` for given slopes of `A_1`, `A_2` and constant `c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "regime", rename_all = "snake_case")]
pub enum GeneralFamily {
    /// `p >= 5`: both equations can be solved for `f` and `g`.
    Determined { f: FnTable, g: FnTable },
    /// `p = 2`: `4 = 6 = 0`, so neither equation constrains anything.
    Vacuous,
    /// `p = 3`: the first equation reads `f = 2(A_1 + cx^2)`; the second has
    /// `6g = 0` on the left and only asks that `A_2(x) = -cx^3`.
    CharacteristicThree {
        f: FnTable,
        /// Whether `A_2(x) + c x^3 = 0` for every `x`.
        consistent: bool,
    },
}

pub fn family_member_general(params: &FamilyParams) -> GeneralFamily {
    let field = params.field();
    let (a, b, c) = (params.a, params.b, params.c);
    match field.p() {
        2 => GeneralFamily::Vacuous,
        3 => {
            let two = field.elem(2);
            let f = FnTable::from_fn(field, |x| two * (a * x + c * x * x));
            let consistent = field.elements().all(|x| (b * x + c * x * x * x).is_zero());
            GeneralFamily::CharacteristicThree { f, consistent }
        }
        _ => {
            let quarter = field.elem(4).inv().expect("p >= 5");
            let sixth = field.elem(6).inv().expect("p >= 5");
            let (two, three) = (field.elem(2), field.elem(3));
            let f = FnTable::from_fn(field, |x| quarter * (two * a * x + two * c * x * x));
            let g = FnTable::from_fn(field, |x| {
                sixth * (b * x + three * x * (a * x) + c * x * x * x)
            });
            GeneralFamily::Determined { f, g }
        }
    }
}

/// Maps unreduced parameters `(a, b, c)` to the reduced triple `(a/2, b/6, c/2)`
/// describing the same solution.
pub fn reduced_params(general: &FamilyParams) -> Result<FamilyParams> {
    let field = general.field();
    require_divisible_by_six(field)?;
    let half = field.elem(2).inv()?;
    let sixth = field.elem(6).inv()?;
    FamilyParams::new(general.a * half, general.b * sixth, general.c * half)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExhaustivenessReport {
    pub p: u32,
    pub family_size: u64,
    pub kernel_dim: usize,
    /// Every member solves the equation at all `p^2` pairs.
    pub all_members_solve: bool,
    /// Every member lies in the computed kernel.
    pub contained: bool,
    /// Distinct parameters give distinct pairs, and `recover_params` inverts.
    pub injective: bool,
    pub exhaustive: bool,
}

/// Family and kernel coincide: containment, injectivity and `p^3 = p^dim`.
pub fn verify_family_exhausts_kernel(field: PrimeField) -> Result<ExhaustivenessReport> {
    require_divisible_by_six(field)?;
    let space = kernel(&build_star_system(field));
    verify_against(field, &space)
}

fn verify_against(field: PrimeField, space: &SolutionSpace) -> Result<ExhaustivenessReport> {
    let params: Vec<FamilyParams> = FamilyParams::all(field).collect();
    let checked: Vec<(bool, bool, bool, (FnTable, FnTable))> = params
        .par_iter()
        .map(|params| {
            let (f, g) = family_member(params)?;
            let solves = is_solution(&f, &g)?;
            let contained = space.contains(&f, &g)?;
            let recovered = recover_params(&f, &g)? == *params;
            Ok((solves, contained, recovered, (f, g)))
        })
        .collect::<Result<_>>()?;

    let all_members_solve = checked.iter().all(|c| c.0);
    let contained = checked.iter().all(|c| c.1);
    let distinct: HashSet<&(FnTable, FnTable)> = checked.iter().map(|c| &c.3).collect();
    let injective = checked.iter().all(|c| c.2) && distinct.len() == params.len();
    let family_size = params.len() as u64;
    let cardinality_match = space.cardinality() == Some(u128::from(family_size));

    Ok(ExhaustivenessReport {
        p: field.p(),
        family_size,
        kernel_dim: space.dimension(),
        all_members_solve,
        contained,
        injective,
        exhaustive: all_members_solve && contained && injective && cardinality_match,
    })
}

/// Kernel of the equation with `g = f`, for any prime.
pub fn same_function_kernel(field: PrimeField) -> SolutionSpace {
    kernel(&build_same_function_system(field))
}

/// All `f` with `f(x+y) - f(x) - f(y) = x f(y) + y f(x)`; `p >= 5`.
pub fn same_function_solutions(field: PrimeField) -> Result<Vec<FnTable>> {
    require_divisible_by_six(field)?;
    Ok(same_function_kernel(field).functions())
}
