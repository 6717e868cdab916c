use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Largest denominator exponent accepted by [`DyadicGrid::new`].
pub const MAX_EXPONENT: u32 = 20;
/// Largest number of points accepted by [`DyadicGrid::new`].
pub const MAX_POINTS: u64 = 1 << 16;

/// The points `k / 2^m` for integers `k` in `[-K 2^m, K 2^m]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DyadicGrid {
    pub m: u32,
    #[serde(rename = "K")]
    pub half_width: u32,
}

/// A grid point, identified by its numerator over `2^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(i64);

impl Point {
    pub fn numerator(self) -> i64 {
        self.0
    }
}

impl DyadicGrid {
    pub fn new(m: u32, half_width: u32) -> Result<Self> {
        if half_width == 0 {
            return Err(Error::Parse("grid half-width K must be at least 1".into()));
        }
        if m > MAX_EXPONENT {
            return Err(Error::Parse(format!(
                "grid exponent m = {m} exceeds {MAX_EXPONENT}"
            )));
        }
        let grid = Self { m, half_width };
        if grid.len() as u64 > MAX_POINTS {
            return Err(Error::Parse(format!(
                "grid has {} points, more than {MAX_POINTS}",
                grid.len()
            )));
        }
        Ok(grid)
    }

    /// `2^m`.
    pub fn scale(&self) -> i64 {
        1i64 << self.m
    }

    /// Largest numerator, `K 2^m`.
    pub fn bound(&self) -> i64 {
        i64::from(self.half_width) * self.scale()
    }

    pub fn len(&self) -> usize {
        (2 * self.bound() + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(self) -> impl Iterator<Item = Point> + Clone {
        (-self.bound()..=self.bound()).map(Point)
    }

    pub fn zero(&self) -> Point {
        Point(0)
    }

    pub fn one(&self) -> Point {
        Point(self.scale())
    }

    fn at_numerator(&self, k: i64) -> Option<Point> {
        (k.abs() <= self.bound()).then_some(Point(k))
    }

    pub fn index(&self, x: Point) -> usize {
        (x.0 + self.bound()) as usize
    }

    pub fn value(&self, x: Point) -> Rational {
        Rational::new(BigInt::from(x.0), BigInt::from(self.scale()))
    }

    /// The grid point equal to `q`, if any.
    pub fn point(&self, q: &Rational) -> Result<Point> {
        let scaled = q * Rational::from_integer(BigInt::from(self.scale()));
        if !scaled.is_integer() {
            return Err(Error::OffGrid(q.to_string()));
        }
        i64::try_from(scaled.to_integer())
            .ok()
            .and_then(|k| self.at_numerator(k))
            .ok_or_else(|| Error::OffGrid(q.to_string()))
    }

    pub fn neg(&self, x: Point) -> Point {
        Point(-x.0)
    }

    pub fn sum(&self, x: Point, y: Point) -> Option<Point> {
        self.at_numerator(x.0 + y.0)
    }

    pub fn double(&self, x: Point) -> Option<Point> {
        self.at_numerator(2 * x.0)
    }

    /// `x / 2`, when representable at exponent `m`.
    pub fn halve(&self, x: Point) -> Option<Point> {
        (x.0 % 2 == 0).then_some(Point(x.0 / 2))
    }

    /// All ordered pairs of grid points.
    pub fn pairs(self) -> impl Iterator<Item = (Point, Point)> + Clone {
        self.points()
            .flat_map(move |x| self.points().map(move |y| (x, y)))
    }

    /// Ordered pairs whose sum stays on the grid.
    pub fn core_pairs(self) -> impl Iterator<Item = (Point, Point)> + Clone {
        self.pairs().filter(move |&(x, y)| self.sum(x, y).is_some())
    }

    pub fn core_size(&self) -> usize {
        // |x + y| <= B over x, y in [-B, B]: (2B+1)^2 - B(B+1)
        let b = self.bound() as usize;
        (2 * b + 1) * (2 * b + 1) - b * (b + 1)
    }
}

impl fmt::Display for DyadicGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dyadic grid (m = {}, K = {})", self.m, self.half_width)
    }
}

/// The values of a grid function over one common positive denominator,
/// when everything fits in `i128`. Pair scans use it with checked
/// arithmetic and fall back to exact rationals on overflow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Scaled {
    pub den: i128,
    pub nums: Vec<i128>,
}

impl Scaled {
    fn of(values: &[Rational]) -> Option<Self> {
        let den = values
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let nums = values
            .iter()
            .map(|v| (v.numer() * (&den / v.denom())).to_i128())
            .collect::<Option<_>>()?;
        Some(Self {
            den: den.to_i128()?,
            nums,
        })
    }
}

/// Exact rational values at every point of a grid.
#[derive(Clone, PartialEq, Eq)]
pub struct GridFunction {
    grid: DyadicGrid,
    values: Vec<Rational>,
    // derived from `values`; never compared independently
    scaled: Option<Scaled>,
}

impl fmt::Debug for GridFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GridFunction")
            .field("grid", &self.grid)
            .field("values", &self.values)
            .finish()
    }
}

impl GridFunction {
    fn build(grid: DyadicGrid, values: Vec<Rational>) -> Self {
        let scaled = Scaled::of(&values);
        Self {
            grid,
            values,
            scaled,
        }
    }

    pub fn from_fn(grid: DyadicGrid, mut f: impl FnMut(&Rational) -> Rational) -> Self {
        let values = grid.points().map(|x| f(&grid.value(x))).collect();
        Self::build(grid, values)
    }

    /// Values listed in increasing order of the points.
    pub fn from_values(grid: DyadicGrid, values: Vec<Rational>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Parse(format!(
                "table has {} values but the grid has {} points",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self::build(grid, values))
    }

    pub fn zero(grid: DyadicGrid) -> Self {
        Self::from_fn(grid, |_| Rational::zero())
    }

    /// `x -> q x`.
    pub fn linear(grid: DyadicGrid, q: &Rational) -> Self {
        Self::from_fn(grid, |x| q * x)
    }

    /// `x -> q |x|`.
    pub fn abs(grid: DyadicGrid, q: &Rational) -> Self {
        Self::from_fn(grid, |x| q * x.abs())
    }

    pub fn grid(&self) -> DyadicGrid {
        self.grid
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn at(&self, x: Point) -> &Rational {
        &self.values[self.grid.index(x)]
    }

    /// Value at the rational `q`, which must be a grid point.
    pub fn eval(&self, q: &Rational) -> Result<&Rational> {
        Ok(self.at(self.grid.point(q)?))
    }

    pub fn add(&self, other: &GridFunction) -> Result<GridFunction> {
        same_grid(self, other)?;
        Ok(Self::build(
            self.grid,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    /// `h(x+y) = h(x) + h(y)` at every core pair.
    pub fn is_additive_on_core(&self) -> bool {
        let grid = self.grid;
        grid.core_pairs().all(|(x, y)| {
            let s = grid.sum(x, y).expect("core pair");
            self.compare_sum(s, x, y).is_eq()
        })
    }

    pub(crate) fn scaled(&self) -> Option<&Scaled> {
        self.scaled.as_ref()
    }

    /// Orders `h(s)` against `h(x) + h(y)`.
    fn compare_sum(&self, s: Point, x: Point, y: Point) -> std::cmp::Ordering {
        if let Some(scaled) = &self.scaled {
            let n = |p: Point| scaled.nums[self.grid.index(p)];
            if let Some(sum) = n(x).checked_add(n(y)) {
                return n(s).cmp(&sum);
            }
        }
        self.at(s).cmp(&(self.at(x) + self.at(y)))
    }

    /// `h(x+y) <= h(x) + h(y)` at every core pair.
    pub fn is_subadditive_on_core(&self) -> bool {
        self.subadditivity_violations().next().is_none()
    }

    pub(crate) fn subadditivity_violations(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let grid = self.grid;
        grid.core_pairs().filter(move |&(x, y)| {
            let s = grid.sum(x, y).expect("core pair");
            self.compare_sum(s, x, y).is_gt()
        })
    }

    /// `h(x) + h(y) - h(x+y)` for a core pair.
    pub fn subadditivity_defect(&self, x: Point, y: Point) -> Option<Rational> {
        let s = self.grid.sum(x, y)?;
        if let Some(scaled) = &self.scaled {
            let n = |p: Point| scaled.nums[self.grid.index(p)];
            if let Some(d) = n(x).checked_add(n(y)).and_then(|t| t.checked_sub(n(s))) {
                return Some(Rational::new(d.into(), scaled.den.into()));
            }
        }
        Some(self.at(x) + self.at(y) - self.at(s))
    }

    pub fn is_odd(&self) -> bool {
        let grid = self.grid;
        grid.points().all(|x| *self.at(grid.neg(x)) == -self.at(x))
    }

    pub fn is_even(&self) -> bool {
        let grid = self.grid;
        grid.points().all(|x| self.at(grid.neg(x)) == self.at(x))
    }
}

pub(crate) fn same_grid(a: &GridFunction, b: &GridFunction) -> Result<DyadicGrid> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch {
            left: a.grid.to_string(),
            right: b.grid.to_string(),
        });
    }
    Ok(a.grid)
}

/// `num/den`, or just `num` for integers.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn grid_geometry() {
        let grid = DyadicGrid::new(1, 2).unwrap();
        assert_eq!(grid.len(), 9);
        let values: Vec<String> = grid.points().map(|x| grid.value(x).to_string()).collect();
        assert_eq!(
            values,
            ["-2", "-3/2", "-1", "-1/2", "0", "1/2", "1", "3/2", "2"]
        );
        assert!(grid
            .points()
            .all(|x| grid.value(grid.neg(x)) == -grid.value(x)));
        assert_eq!(grid.value(grid.one()), q("1"));
        assert_eq!(grid.core_pairs().count(), grid.core_size());
        assert!(grid.point(&q("1/4")).is_err());
        assert!(grid.point(&q("5/2")).is_err());
        assert_eq!(grid.value(grid.point(&q("-3/2")).unwrap()), q("-3/2"));
        assert!(DyadicGrid::new(0, 0).is_err());
    }

    #[test]
    fn core_size_formula() {
        for (m, k) in [(0, 1), (0, 3), (2, 1), (3, 4)] {
            let grid = DyadicGrid::new(m, k).unwrap();
            assert_eq!(grid.core_pairs().count(), grid.core_size(), "m={m} K={k}");
        }
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(q("3/6"), q("1/2"));
        assert_eq!(q(" -4 "), Rational::from_integer(BigInt::from(-4)));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&q("6/4")), "3/2");
    }

    #[test]
    fn function_predicates() {
        let grid = DyadicGrid::new(2, 2).unwrap();
        let lin = GridFunction::linear(grid, &q("3/2"));
        assert!(lin.is_additive_on_core() && lin.is_odd());
        let abs = GridFunction::abs(grid, &q("1"));
        assert!(abs.is_subadditive_on_core() && abs.is_even() && !abs.is_additive_on_core());
        let sq = GridFunction::from_fn(grid, |x| x * x);
        assert!(!sq.is_subadditive_on_core());
    }
}
