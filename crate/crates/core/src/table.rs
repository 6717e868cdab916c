//! Total functions `Z_p -> Z_p` stored as tables, and the pointwise checks
//! built on them.
//!
//! Parity parts use the unhalved convention `f_o(x) = f(x) - f(-x)`,
//! `f_e(x) = f(x) + f(-x)`, so every identity below holds verbatim in
//! characteristic 2.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, PrimeField};

/// A function `Z_p -> Z_p`; `values[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u32>")]
pub struct FnTable {
    field: PrimeField,
    values: Vec<u32>,
}

impl FnTable {
    pub fn new(field: PrimeField, values: Vec<u32>) -> Result<Self> {
        if values.len() != field.order() {
            return Err(Error::TableLength {
                len: values.len(),
                p: field.p(),
            });
        }
        if let Some(&bad) = values.iter().find(|&&v| v >= field.p()) {
            return Err(Error::NotCanonical {
                value: u64::from(bad),
                p: field.p(),
            });
        }
        Ok(Self { field, values })
    }

    /// Tabulates `f` over the whole field.
    pub fn from_fn(field: PrimeField, mut f: impl FnMut(Elem) -> Elem) -> Self {
        let values = field
            .elements()
            .map(|x| {
                let y = f(x);
                assert_eq!(y.field(), field, "image lies outside {field}");
                y.value()
            })
            .collect();
        Self { field, values }
    }

    /// Tabulates a function given on raw residues; results are reduced mod p.
    pub fn from_raw_fn(field: PrimeField, mut f: impl FnMut(u32) -> i64) -> Self {
        let values = (0..field.p()).map(|x| field.reduce(f(x))).collect();
        Self { field, values }
    }

    pub fn zero(field: PrimeField) -> Self {
        Self {
            field,
            values: vec![0; field.order()],
        }
    }

    pub fn identity(field: PrimeField) -> Self {
        Self {
            field,
            values: (0..field.p()).collect(),
        }
    }

    /// Uniformly random table.
    pub fn random<R: Rng + ?Sized>(field: PrimeField, rng: &mut R) -> Self {
        let values = (0..field.p())
            .map(|_| rng.gen_range(0..field.p()))
            .collect();
        Self { field, values }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    #[inline]
    pub fn at(&self, x: u32) -> u32 {
        self.values[x as usize]
    }

    pub fn get(&self, x: Elem) -> Elem {
        assert_eq!(
            x.field(),
            self.field,
            "argument lies outside {}",
            self.field
        );
        self.field.elem(u64::from(self.at(x.value())))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Pointwise `k * f`.
    pub fn scaled(&self, k: u32) -> Self {
        let field = self.field;
        Self {
            field,
            values: self.values.iter().map(|&v| field.mul_raw(k, v)).collect(),
        }
    }

    /// `(f_odd, f_even)` with `f_odd(x) = f(x) - f(-x)` and `f_even(x) = f(x) + f(-x)`.
    pub fn parity_decompose(&self) -> (FnTable, FnTable) {
        let field = self.field;
        let mut odd = Vec::with_capacity(field.order());
        let mut even = Vec::with_capacity(field.order());
        for x in 0..field.p() {
            let fx = self.at(x);
            let fnx = self.at(field.neg_raw(x));
            odd.push(field.sub_raw(fx, fnx));
            even.push(field.add_raw(fx, fnx));
        }
        (
            Self { field, values: odd },
            Self {
                field,
                values: even,
            },
        )
    }

    /// `F(x, y) = g(x + y) - g(x) - g(y)`.
    pub fn cauchy_difference(&self) -> PairTable {
        let field = self.field;
        PairTable::from_raw_fn(field, |x, y| {
            let s = self.at(field.add_raw(x, y));
            field.sub_raw(field.sub_raw(s, self.at(x)), self.at(y))
        })
    }

    pub fn is_additive(&self) -> bool {
        let field = self.field;
        (0..field.p()).all(|x| {
            (0..field.p())
                .all(|y| self.at(field.add_raw(x, y)) == field.add_raw(self.at(x), self.at(y)))
        })
    }

    pub fn is_odd(&self) -> bool {
        let field = self.field;
        (0..field.p()).all(|x| self.at(field.neg_raw(x)) == field.neg_raw(self.at(x)))
    }

    pub fn is_even(&self) -> bool {
        let field = self.field;
        (0..field.p()).all(|x| self.at(field.neg_raw(x)) == self.at(x))
    }
}

impl TryFrom<Vec<u64>> for FnTable {
    type Error = Error;

    /// The modulus is the table length.
    fn try_from(values: Vec<u64>) -> Result<Self> {
        let field = PrimeField::new(values.len() as u64)?;
        let values = values
            .into_iter()
            .map(|v| {
                u32::try_from(v)
                    .ok()
                    .filter(|&v| v < field.p())
                    .ok_or(Error::NotCanonical {
                        value: v,
                        p: field.p(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, values)
    }
}

impl From<FnTable> for Vec<u32> {
    fn from(table: FnTable) -> Vec<u32> {
        table.values
    }
}

/// A function `Z_p x Z_p -> Z_p`; serialized as `p` rows of `p` integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u64>>", into = "Vec<Vec<u32>>")]
pub struct PairTable {
    field: PrimeField,
    values: Vec<u32>,
}

impl PairTable {
    pub fn from_raw_fn(field: PrimeField, mut f: impl FnMut(u32, u32) -> u32) -> Self {
        let p = field.p();
        let mut values = Vec::with_capacity(field.order() * field.order());
        for x in 0..p {
            for y in 0..p {
                values.push(f(x, y) % p);
            }
        }
        Self { field, values }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn at(&self, x: u32, y: u32) -> u32 {
        self.values[x as usize * self.field.order() + y as usize]
    }

    pub fn is_symmetric(&self) -> bool {
        let p = self.field.p();
        (0..p).all(|x| (x + 1..p).all(|y| self.at(x, y) == self.at(y, x)))
    }

    /// `F(x+y, z) + F(x, y) = F(x, y+z) + F(y, z)` at every triple.
    pub fn is_cocycle(&self) -> bool {
        let field = self.field;
        let p = field.p();
        (0..p).all(|x| {
            (0..p).all(|y| {
                (0..p).all(|z| {
                    let lhs = field.add_raw(self.at(field.add_raw(x, y), z), self.at(x, y));
                    let rhs = field.add_raw(self.at(x, field.add_raw(y, z)), self.at(y, z));
                    lhs == rhs
                })
            })
        })
    }

    pub fn check_cocycle_and_symmetry(&self) -> bool {
        self.is_symmetric() && self.is_cocycle()
    }
}

impl TryFrom<Vec<Vec<u64>>> for PairTable {
    type Error = Error;

    fn try_from(rows: Vec<Vec<u64>>) -> Result<Self> {
        let field = PrimeField::new(rows.len() as u64)?;
        let mut values = Vec::with_capacity(field.order() * field.order());
        for row in rows {
            if row.len() != field.order() {
                return Err(Error::TableLength {
                    len: row.len(),
                    p: field.p(),
                });
            }
            for v in row {
                if v >= u64::from(field.p()) {
                    return Err(Error::NotCanonical {
                        value: v,
                        p: field.p(),
                    });
                }
                values.push(v as u32);
            }
        }
        Ok(Self { field, values })
    }
}

impl From<PairTable> for Vec<Vec<u32>> {
    fn from(table: PairTable) -> Self {
        table
            .values
            .chunks(table.field.order())
            .map(<[u32]>::to_vec)
            .collect()
    }
}

/// A pair `(x, y)` at which `g(x+y) - g(x) - g(y) = x f(y) + y f(x)` fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarViolation {
    pub x: u32,
    pub y: u32,
    pub lhs: u32,
    pub rhs: u32,
}

fn same_field(f: &FnTable, g: &FnTable) -> Result<PrimeField> {
    if f.field != g.field {
        return Err(Error::FieldMismatch {
            left: f.field.p(),
            right: g.field.p(),
        });
    }
    Ok(f.field)
}

/// Every pair at which `(f, g)` fails the equation; empty iff `(f, g)` is a solution.
pub fn check_star(f: &FnTable, g: &FnTable) -> Result<Vec<StarViolation>> {
    let field = same_field(f, g)?;
    let mut violations = Vec::new();
    for x in 0..field.p() {
        for y in 0..field.p() {
            let lhs = field.sub_raw(field.sub_raw(g.at(field.add_raw(x, y)), g.at(x)), g.at(y));
            let rhs = field.add_raw(field.mul_raw(x, f.at(y)), field.mul_raw(y, f.at(x)));
            if lhs != rhs {
                violations.push(StarViolation { x, y, lhs, rhs });
            }
        }
    }
    Ok(violations)
}

pub fn is_solution(f: &FnTable, g: &FnTable) -> Result<bool> {
    check_star(f, g).map(|v| v.is_empty())
}

/// Pointwise status of the intermediate identities satisfied by every solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofIdentityReport {
    /// `f(0) = g(0) = 0`.
    pub vanish_at_zero: bool,
    /// `g(2x) - 2g(x) = 2x f(x)`.
    pub diagonal: bool,
    /// `g_e(x) = x f_o(x)`.
    pub even_g_from_odd_f: bool,
    /// `f(2x) = 3f(x) + f(-x)`.
    pub f_doubling: bool,
    /// `f_o(2x) = 2 f_o(x)`.
    pub odd_f_doubling: bool,
    /// `f_e(2x) = 4 f_e(x)`.
    pub even_f_doubling: bool,
    /// `g_e(x+y) - g_e(x) - g_e(y) = x f_o(y) + y f_o(x)`.
    pub even_g_equation: bool,
    /// `g_o(x+y) - g_o(x) - g_o(y) = x f_e(y) + y f_e(x)`.
    pub odd_g_equation: bool,
    /// `f_o` is additive.
    pub odd_f_additive: bool,
    /// `2 f_e(x) = 2c x^2` with `c = f_e(1)`.
    pub even_f_quadratic: bool,
    /// `2[g_o(x+y) - g_o(x) - g_o(y)] = 2c xy(x+y)` with `c = f_e(1)`.
    pub odd_g_cubic: bool,
}

impl ProofIdentityReport {
    /// The five pointwise identities on the diagonal and under doubling.
    pub fn core_identities_hold(&self) -> bool {
        self.diagonal
            && self.even_g_from_odd_f
            && self.f_doubling
            && self.odd_f_doubling
            && self.even_f_doubling
    }

    pub fn all_hold(&self) -> bool {
        self.vanish_at_zero
            && self.core_identities_hold()
            && self.even_g_equation
            && self.odd_g_equation
            && self.odd_f_additive
            && self.even_f_quadratic
            && self.odd_g_cubic
    }
}

/// Evaluates every identity derived along the way from a solution to its
/// closed form. Rejects pairs that do not solve the equation.
pub fn check_proof_identities(f: &FnTable, g: &FnTable) -> Result<ProofIdentityReport> {
    let violations = check_star(f, g)?;
    if !violations.is_empty() {
        return Err(Error::NotASolution {
            violations: violations.len(),
        });
    }
    let field = f.field;
    let p = field.p();
    let (f_o, f_e) = f.parity_decompose();
    let (g_o, g_e) = g.parity_decompose();
    let two = 2 % p;
    let double = |x: u32| field.add_raw(x, x);
    let all_x = |pred: &dyn Fn(u32) -> bool| (0..p).all(pred);
    let all_xy = |pred: &dyn Fn(u32, u32) -> bool| (0..p).all(|x| (0..p).all(|y| pred(x, y)));
    let cauchy = |h: &FnTable, x: u32, y: u32| {
        field.sub_raw(field.sub_raw(h.at(field.add_raw(x, y)), h.at(x)), h.at(y))
    };
    let symmetric_form = |h: &FnTable, x: u32, y: u32| {
        field.add_raw(field.mul_raw(x, h.at(y)), field.mul_raw(y, h.at(x)))
    };
    let c = f_e.at(1 % p);

    Ok(ProofIdentityReport {
        vanish_at_zero: f.at(0) == 0 && g.at(0) == 0,
        diagonal: all_x(&|x| {
            field.sub_raw(g.at(double(x)), field.mul_raw(two, g.at(x)))
                == field.mul_raw(field.mul_raw(two, x), f.at(x))
        }),
        even_g_from_odd_f: all_x(&|x| g_e.at(x) == field.mul_raw(x, f_o.at(x))),
        f_doubling: all_x(&|x| {
            f.at(double(x)) == field.add_raw(field.mul_raw(3 % p, f.at(x)), f.at(field.neg_raw(x)))
        }),
        odd_f_doubling: all_x(&|x| f_o.at(double(x)) == field.mul_raw(two, f_o.at(x))),
        even_f_doubling: all_x(&|x| f_e.at(double(x)) == field.mul_raw(4 % p, f_e.at(x))),
        even_g_equation: all_xy(&|x, y| cauchy(&g_e, x, y) == symmetric_form(&f_o, x, y)),
        odd_g_equation: all_xy(&|x, y| cauchy(&g_o, x, y) == symmetric_form(&f_e, x, y)),
        odd_f_additive: f_o.is_additive(),
        even_f_quadratic: all_x(&|x| {
            field.mul_raw(two, f_e.at(x))
                == field.mul_raw(field.mul_raw(two, c), field.mul_raw(x, x))
        }),
        odd_g_cubic: all_xy(&|x, y| {
            let xy = field.mul_raw(x, y);
            let rhs = field.mul_raw(
                field.mul_raw(two, c),
                field.mul_raw(xy, field.add_raw(x, y)),
            );
            field.mul_raw(two, cauchy(&g_o, x, y)) == rhs
        }),
    })
}
