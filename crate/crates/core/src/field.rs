//! Arithmetic in the prime field `Z_p`.
//!
//! Every finite integral domain is a field, so the prime fields are the
//! finite stand-ins for the ambient domain `X` of the functional equation.
//! Extension fields are deliberately not supported: residues stay canonical
//! integers in `[0, p)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted by [`PrimeField::new`].
pub const DEFAULT_MAX_P: u64 = 1 << 16;

/// The prime field `Z_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        Self::with_cap(p, DEFAULT_MAX_P)
    }

    /// Like [`PrimeField::new`] with an explicit upper bound on `p`.
    pub fn with_cap(p: u64, cap: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > cap || p > u64::from(u32::MAX) {
            return Err(Error::PrimeTooLarge { p, cap });
        }
        Ok(Self { p: p as u32 })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    /// Number of elements, as a `usize` for indexing.
    #[inline]
    pub fn order(self) -> usize {
        self.p as usize
    }

    pub fn elem(self, value: u64) -> Elem {
        Elem {
            value: self.reduce_u64(value),
            field: self,
        }
    }

    pub fn from_i64(self, value: i64) -> Elem {
        Elem {
            value: self.reduce(value),
            field: self,
        }
    }

    pub fn zero(self) -> Elem {
        self.elem(0)
    }

    pub fn one(self) -> Elem {
        self.elem(1)
    }

    /// All elements `0, 1, …, p−1` in order.
    pub fn elements(self) -> impl Iterator<Item = Elem> {
        (0..self.p).map(move |value| Elem { value, field: self })
    }

    pub fn add(self, a: Elem, b: Elem) -> Result<Elem> {
        self.check(a)?;
        self.check(b)?;
        Ok(Elem {
            value: self.add_raw(a.value, b.value),
            field: self,
        })
    }

    pub fn mul(self, a: Elem, b: Elem) -> Result<Elem> {
        self.check(a)?;
        self.check(b)?;
        Ok(Elem {
            value: self.mul_raw(a.value, b.value),
            field: self,
        })
    }

    pub fn neg(self, a: Elem) -> Result<Elem> {
        self.check(a)?;
        Ok(Elem {
            value: self.neg_raw(a.value),
            field: self,
        })
    }

    pub fn inv(self, a: Elem) -> Result<Elem> {
        self.check(a)?;
        self.inv_raw(a.value)
            .map(|value| Elem { value, field: self })
    }

    /// Whether multiplication by `n` is a bijection of `Z_p`, i.e. `gcd(n, p) = 1`.
    pub fn uniquely_divisible_by(self, n: u64) -> bool {
        assert!(n >= 1, "divisibility is defined for positive n");
        !n.is_multiple_of(u64::from(self.p))
    }

    fn check(self, a: Elem) -> Result<()> {
        if a.field != self {
            return Err(Error::FieldMismatch {
                left: self.p,
                right: a.field.p,
            });
        }
        Ok(())
    }

    // Raw residue arithmetic. Callers guarantee inputs lie in [0, p).

    #[inline]
    pub fn reduce(self, value: i64) -> u32 {
        value.rem_euclid(i64::from(self.p)) as u32
    }

    #[inline]
    pub fn reduce_u64(self, value: u64) -> u32 {
        (value % u64::from(self.p)) as u32
    }

    #[inline]
    pub fn add_raw(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) + u64::from(b)) % u64::from(self.p)) as u32
    }

    #[inline]
    pub fn sub_raw(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) + u64::from(self.p) - u64::from(b)) % u64::from(self.p)) as u32
    }

    #[inline]
    pub fn mul_raw(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.p)) as u32
    }

    #[inline]
    pub fn neg_raw(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow_raw(self, base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        let mut base = base % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse via Fermat: `a^(p-2)`.
    pub fn inv_raw(self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow_raw(a, u64::from(self.p) - 2))
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}", self.p)
    }
}

impl TryFrom<u64> for PrimeField {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        Self::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(field: PrimeField) -> u32 {
        field.p
    }
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of a [`PrimeField`].
///
/// The operator impls panic when the operands live in different fields; use
/// the fallible methods on [`PrimeField`] when that can happen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Elem {
    value: u32,
    field: PrimeField,
}

impl Elem {
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn field(self) -> PrimeField {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Result<Elem> {
        self.field.inv(self)
    }

    pub fn pow(self, exp: u64) -> Elem {
        Elem {
            value: self.field.pow_raw(self.value, exp),
            field: self.field,
        }
    }

    fn expect_same(self, other: Elem) -> PrimeField {
        assert_eq!(
            self.field, other.field,
            "field mismatch: {} vs {}",
            self.field, other.field
        );
        self.field
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Elem {
    type Output = Elem;

    fn add(self, rhs: Elem) -> Elem {
        let field = self.expect_same(rhs);
        Elem {
            value: field.add_raw(self.value, rhs.value),
            field,
        }
    }
}

impl Sub for Elem {
    type Output = Elem;

    fn sub(self, rhs: Elem) -> Elem {
        let field = self.expect_same(rhs);
        Elem {
            value: field.sub_raw(self.value, rhs.value),
            field,
        }
    }
}

impl Mul for Elem {
    type Output = Elem;

    fn mul(self, rhs: Elem) -> Elem {
        let field = self.expect_same(rhs);
        Elem {
            value: field.mul_raw(self.value, rhs.value),
            field,
        }
    }
}

impl Neg for Elem {
    type Output = Elem;

    fn neg(self) -> Elem {
        Elem {
            value: self.field.neg_raw(self.value),
            field: self.field,
        }
    }
}
