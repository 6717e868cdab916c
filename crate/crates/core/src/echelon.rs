//! Incremental reduced row-echelon form over `Z_p`.

use crate::field::PrimeField;

/// A set of fully reduced pivot rows, kept sorted by pivot column.
#[derive(Debug, Clone)]
pub(crate) struct Echelon {
    field: PrimeField,
    width: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub(crate) fn new(field: PrimeField, width: usize) -> Self {
        Self {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn is_full(&self) -> bool {
        self.rank() == self.width
    }

    pub(crate) fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    #[cfg(test)]
    pub(crate) fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub(crate) fn into_rows(self) -> Vec<Vec<u32>> {
        self.rows
    }

    /// Subtracts multiples of the pivot rows until `v` vanishes on every pivot column.
    pub(crate) fn reduce(&self, v: &mut [u32]) {
        debug_assert_eq!(v.len(), self.width);
        let field = self.field;
        for (row, &pivot) in self.rows.iter().zip(&self.pivots) {
            let factor = v[pivot];
            if factor == 0 {
                continue;
            }
            let neg = field.neg_raw(factor);
            for (dst, &src) in v[pivot..].iter_mut().zip(&row[pivot..]) {
                if src != 0 {
                    *dst = field.add_raw(*dst, field.mul_raw(neg, src));
                }
            }
        }
    }

    /// Adds `v` to the row space. Returns whether the rank grew.
    pub(crate) fn insert(&mut self, mut v: Vec<u32>) -> bool {
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let field = self.field;
        let scale = field.inv_raw(v[pivot]).expect("pivot entry is nonzero");
        for x in &mut v[pivot..] {
            *x = field.mul_raw(*x, scale);
        }
        // clear the new pivot column from the existing rows
        for row in &mut self.rows {
            let factor = row[pivot];
            if factor == 0 {
                continue;
            }
            let neg = field.neg_raw(factor);
            for (dst, &src) in row[pivot..].iter_mut().zip(&v[pivot..]) {
                if src != 0 {
                    *dst = field.add_raw(*dst, field.mul_raw(neg, src));
                }
            }
        }
        let at = self.pivots.partition_point(|&c| c < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, v);
        true
    }

    /// Basis of `{v : row · v = 0 for every row}`, one vector per free column.
    pub(crate) fn nullspace(&self) -> Vec<Vec<u32>> {
        let field = self.field;
        let mut is_pivot = vec![false; self.width];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.width)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = vec![0u32; self.width];
                v[free] = 1 % field.p();
                for (row, &pivot) in self.rows.iter().zip(&self.pivots) {
                    v[pivot] = field.neg_raw(row[free]);
                }
                v
            })
            .collect()
    }
}
