//! The equation `g(x+y) - g(x) - g(y) = x f(y) + y f(x)` is linear in the
//! pair `(f, g)`. Over `Z_p` it is a homogeneous system of `p^2` equations in
//! the `2p` unknowns `f(0..p), g(0..p)`, and its kernel is the complete
//! solution set.
//!
//! Column layout: `0..p` hold `f(0..p)`, `p..2p` hold `g(0..p)`.

use serde::{Deserialize, Serialize};

use crate::echelon::Echelon;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::table::FnTable;

/// Which functional equation a [`LinearSystem`] encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemKind {
    /// `g(x+y) - g(x) - g(y) - x f(y) - y f(x) = 0` in `2p` unknowns.
    Star,
    /// `x f(y) + y f(x) = 0` in `p` unknowns.
    Alienation,
    /// The star equation with `g = f`, in `p` unknowns.
    SameFunction,
}

/// Sparse coefficient row: `(column, coefficient)` with distinct columns and nonzero coefficients.
pub type SparseRow = Vec<(usize, u32)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    field: PrimeField,
    kind: SystemKind,
    unknowns: usize,
    rows: Vec<SparseRow>,
}

impl LinearSystem {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    /// Row for the pair `(x, y)`; rows are ordered `x`-major.
    pub fn row(&self, x: u32, y: u32) -> &SparseRow {
        &self.rows[x as usize * self.field.order() + y as usize]
    }

    pub fn dense_row(&self, index: usize) -> Vec<u32> {
        let mut dense = vec![0; self.unknowns];
        for &(col, coeff) in &self.rows[index] {
            dense[col] = coeff;
        }
        dense
    }

    /// Coefficient of `column` in the `(x, y)` row.
    pub fn coefficient(&self, x: u32, y: u32, column: usize) -> u32 {
        self.row(x, y)
            .iter()
            .find(|&&(c, _)| c == column)
            .map_or(0, |&(_, v)| v)
    }

    /// Whether `v` satisfies every equation.
    pub fn is_satisfied_by(&self, v: &[u32]) -> bool {
        let field = self.field;
        v.len() == self.unknowns
            && self.rows.iter().all(|row| {
                row.iter()
                    .fold(0, |acc, &(c, k)| field.add_raw(acc, field.mul_raw(k, v[c])))
                    == 0
            })
    }
}

/// Accumulates signed coefficients into a sparse row, merging repeated columns.
fn accumulate(field: PrimeField, terms: impl IntoIterator<Item = (usize, i64)>) -> SparseRow {
    let mut row: SparseRow = Vec::with_capacity(5);
    for (col, coeff) in terms {
        let coeff = field.reduce(coeff);
        match row.iter_mut().find(|(c, _)| *c == col) {
            Some((_, v)) => *v = field.add_raw(*v, coeff),
            None => row.push((col, coeff)),
        }
    }
    row.retain(|&(_, v)| v != 0);
    row.sort_unstable_by_key(|&(c, _)| c);
    row
}

fn pair_rows(
    field: PrimeField,
    mut terms: impl FnMut(u32, u32) -> Vec<(usize, i64)>,
) -> Vec<SparseRow> {
    let p = field.p();
    let mut rows = Vec::with_capacity(field.order() * field.order());
    for x in 0..p {
        for y in 0..p {
            rows.push(accumulate(field, terms(x, y)));
        }
    }
    rows
}

/// One row per ordered pair `(x, y)`: `+1` at `g(x+y)`, `-1` at `g(x)` and
/// `g(y)`, `-x` at `f(y)`, `-y` at `f(x)`.
pub fn build_star_system(field: PrimeField) -> LinearSystem {
    let p = field.order();
    let rows = pair_rows(field, |x, y| {
        let (xi, yi) = (x as usize, y as usize);
        vec![
            (p + field.add_raw(x, y) as usize, 1),
            (p + xi, -1),
            (p + yi, -1),
            (yi, -i64::from(x)),
            (xi, -i64::from(y)),
        ]
    });
    LinearSystem {
        field,
        kind: SystemKind::Star,
        unknowns: 2 * p,
        rows,
    }
}

/// One row per ordered pair `(x, y)`: `+x` at `f(y)`, `+y` at `f(x)`.
pub fn build_d1_system(field: PrimeField) -> LinearSystem {
    let rows = pair_rows(field, |x, y| {
        vec![(y as usize, i64::from(x)), (x as usize, i64::from(y))]
    });
    LinearSystem {
        field,
        kind: SystemKind::Alienation,
        unknowns: field.order(),
        rows,
    }
}

/// The star system restricted to the diagonal `f = g`.
pub fn build_same_function_system(field: PrimeField) -> LinearSystem {
    let rows = pair_rows(field, |x, y| {
        let (xi, yi) = (x as usize, y as usize);
        vec![
            (field.add_raw(x, y) as usize, 1),
            (xi, -1),
            (yi, -1),
            (yi, -i64::from(x)),
            (xi, -i64::from(y)),
        ]
    });
    LinearSystem {
        field,
        kind: SystemKind::SameFunction,
        unknowns: field.order(),
        rows,
    }
}

/// Kernel of a [`LinearSystem`] with a canonical reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpaceRepr", into = "SpaceRepr")]
pub struct SolutionSpace {
    field: PrimeField,
    unknowns: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SpaceRepr {
    p: u32,
    dimension: usize,
    basis: Vec<Vec<u32>>,
}

impl From<SolutionSpace> for SpaceRepr {
    fn from(space: SolutionSpace) -> Self {
        Self {
            p: space.field.p(),
            dimension: space.basis.len(),
            basis: space.basis,
        }
    }
}

impl TryFrom<SpaceRepr> for SolutionSpace {
    type Error = Error;

    /// An empty basis is read as a star-system kernel (`2p` unknowns).
    fn try_from(repr: SpaceRepr) -> Result<Self> {
        let field = PrimeField::new(u64::from(repr.p))?;
        if repr.dimension != repr.basis.len() {
            return Err(Error::Parse(format!(
                "dimension {} but {} basis vectors",
                repr.dimension,
                repr.basis.len()
            )));
        }
        let unknowns = repr.basis.first().map_or(2 * field.order(), Vec::len);
        for v in &repr.basis {
            if v.len() != unknowns {
                return Err(Error::Parse("basis vectors differ in length".into()));
            }
            if let Some(&bad) = v.iter().find(|&&x| x >= field.p()) {
                return Err(Error::NotCanonical {
                    value: u64::from(bad),
                    p: field.p(),
                });
            }
        }
        let space = SolutionSpace::from_spanning_set(field, unknowns, repr.basis.clone());
        if space.basis != repr.basis {
            return Err(Error::Parse(
                "basis is not linearly independent in reduced row-echelon form".into(),
            ));
        }
        Ok(space)
    }
}

impl SolutionSpace {
    fn from_spanning_set(field: PrimeField, unknowns: usize, vectors: Vec<Vec<u32>>) -> Self {
        let mut echelon = Echelon::new(field, unknowns);
        for v in vectors {
            echelon.insert(v);
        }
        let pivots = echelon.pivots().to_vec();
        Self {
            field,
            unknowns,
            basis: echelon.into_rows(),
            pivots,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// Number of vectors in the span, `p^dimension`, if it fits in a `u128`.
    pub fn cardinality(&self) -> Option<u128> {
        u128::from(self.field.p()).checked_pow(self.dimension() as u32)
    }

    pub fn contains_vector(&self, v: &[u32]) -> Result<bool> {
        if v.len() != self.unknowns {
            return Err(Error::Parse(format!(
                "vector of length {} against a space in {} unknowns",
                v.len(),
                self.unknowns
            )));
        }
        let field = self.field;
        let mut residual = v.to_vec();
        for (row, &pivot) in self.basis.iter().zip(&self.pivots) {
            let factor = residual[pivot];
            if factor == 0 {
                continue;
            }
            let neg = field.neg_raw(factor);
            for (dst, &src) in residual.iter_mut().zip(row) {
                *dst = field.add_raw(*dst, field.mul_raw(neg, src));
            }
        }
        Ok(residual.iter().all(|&x| x == 0))
    }

    /// Membership of the pair `(f, g)` in a star-system kernel.
    pub fn contains(&self, f: &FnTable, g: &FnTable) -> Result<bool> {
        for t in [f, g] {
            if t.field() != self.field {
                return Err(Error::FieldMismatch {
                    left: self.field.p(),
                    right: t.field().p(),
                });
            }
        }
        let v: Vec<u32> = f.values().iter().chain(g.values()).copied().collect();
        self.contains_vector(&v)
    }

    /// Every vector of the span, ordered by coefficient tuple.
    ///
    /// Panics if the span has more than `2^32` elements.
    pub fn enumerate(&self) -> Vec<Vec<u32>> {
        let count = self
            .cardinality()
            .filter(|&n| n <= u128::from(u32::MAX))
            .expect("span too large to enumerate") as usize;
        let field = self.field;
        let mut out = Vec::with_capacity(count);
        let mut coeffs = vec![0u32; self.dimension()];
        for _ in 0..count {
            let mut v = vec![0u32; self.unknowns];
            for (&k, row) in coeffs.iter().zip(&self.basis) {
                if k == 0 {
                    continue;
                }
                for (dst, &src) in v.iter_mut().zip(row) {
                    *dst = field.add_raw(*dst, field.mul_raw(k, src));
                }
            }
            out.push(v);
            // odometer, last coordinate fastest
            for k in coeffs.iter_mut().rev() {
                *k += 1;
                if *k < field.p() {
                    break;
                }
                *k = 0;
            }
        }
        out
    }

    /// Decodes a star-system vector into `(f, g)`.
    pub fn split(&self, v: &[u32]) -> (FnTable, FnTable) {
        let p = self.field.order();
        assert_eq!(v.len(), 2 * p, "not a star-system vector");
        (
            FnTable::new(self.field, v[..p].to_vec()).expect("residues are canonical"),
            FnTable::new(self.field, v[p..].to_vec()).expect("residues are canonical"),
        )
    }

    /// All `(f, g)` pairs in a star-system kernel, sorted.
    pub fn solutions(&self) -> Vec<(FnTable, FnTable)> {
        let mut all: Vec<_> = self.enumerate().iter().map(|v| self.split(v)).collect();
        all.sort();
        all
    }

    /// All single functions in a kernel over `p` unknowns, sorted.
    pub fn functions(&self) -> Vec<FnTable> {
        assert_eq!(
            self.unknowns,
            self.field.order(),
            "not a single-function space"
        );
        let mut all: Vec<_> = self
            .enumerate()
            .into_iter()
            .map(|v| FnTable::new(self.field, v).expect("residues are canonical"))
            .collect();
        all.sort();
        all
    }
}

/// Exact nullspace by streaming the rows through an incremental RREF.
pub fn kernel(system: &LinearSystem) -> SolutionSpace {
    let field = system.field;
    let mut echelon = Echelon::new(field, system.unknowns);
    for index in 0..system.rows.len() {
        if echelon.is_full() {
            break;
        }
        echelon.insert(system.dense_row(index));
    }
    SolutionSpace::from_spanning_set(field, system.unknowns, echelon.nullspace())
}
