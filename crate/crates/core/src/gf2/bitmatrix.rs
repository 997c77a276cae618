use std::fmt;

use super::BitVector;

/// A dense matrix over GF(2), stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

/// Reduced row-echelon form together with the row operations that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: BitMatrix,
    pub rank: usize,
    /// Invertible `rows × rows` matrix with `transform · input = reduced`.
    pub transform: BitMatrix,
    pub pivot_columns: Vec<usize>,
}

/// Solution set of `M·x = b`: an affine space `x0 + span(nullspace)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: BitVector,
    pub nullspace: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from rows of equal length. `cols` must be given for the
    /// zero-row case.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length {} != cols {cols}", r.len());
        }
        Self { cols, rows }
    }

    /// Parses rows written as `0`/`1` strings, e.g. `["1100", "0110"]`.
    ///
    /// # Panics
    /// Panics on ragged or non-binary input; intended for literals in code.
    pub fn from_strs(rows: &[&str]) -> Self {
        let parsed: Vec<BitVector> = rows
            .iter()
            .map(|s| BitVector::parse(s).expect("binary row literal"))
            .collect();
        let cols = parsed.first().map_or(0, |r| r.len());
        Self::from_rows(cols, parsed)
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut BitVector {
        &mut self.rows[i]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &BitVector> {
        self.rows.iter()
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_bools(&self.rows.iter().map(|r| r.get(c)).collect::<Vec<_>>())
    }

    pub fn push_row(&mut self, row: BitVector) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && self.transpose() == *self
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols,
            other.rows.len(),
            "matrix product dimension mismatch"
        );
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BitVector::zeros(other.cols);
                for k in row.iter_ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        Self {
            cols: other.cols,
            rows,
        }
    }

    /// `M·x` for a column vector `x`.
    pub fn mul_vec(&self, x: &BitVector) -> BitVector {
        assert_eq!(x.len(), self.cols, "matrix-vector dimension mismatch");
        BitVector::from_bools(&self.rows.iter().map(|r| r.dot(x)).collect::<Vec<_>>())
    }

    /// `x·M` for a row vector `x`.
    pub fn vec_mul(&self, x: &BitVector) -> BitVector {
        assert_eq!(x.len(), self.rows.len(), "vector-matrix dimension mismatch");
        let mut acc = BitVector::zeros(self.cols);
        for k in x.iter_ones() {
            acc.xor_assign(&self.rows[k]);
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rows.len(), other.rows.len());
        assert_eq!(self.cols, other.cols);
        Self {
            cols: self.cols,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a ^ b).collect(),
        }
    }

    /// Sub-matrix with the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self {
            cols: cols.len(),
            rows: rows.iter().map(|&r| self.rows[r].select(cols)).collect(),
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows.len(), other.rows.len());
        Self {
            cols: self.cols + other.cols,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.concat(b))
                .collect(),
        }
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Self {
            cols: self.cols,
            rows,
        }
    }

    /// Reduced row-echelon form. Pivots are chosen at the leftmost remaining
    /// column, taking the topmost available row.
    pub fn rref(&self) -> Rref {
        let m = self.rows.len();
        let mut reduced = self.clone();
        let mut transform = Self::identity(m);
        let mut pivot_columns = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == m {
                break;
            }
            let Some(p) = (next..m).find(|&r| reduced.rows[r].get(c)) else {
                continue;
            };
            reduced.rows.swap(next, p);
            transform.rows.swap(next, p);
            let pivot_row = reduced.rows[next].clone();
            let pivot_tf = transform.rows[next].clone();
            for r in 0..m {
                if r != next && reduced.rows[r].get(c) {
                    reduced.rows[r].xor_assign(&pivot_row);
                    transform.rows[r].xor_assign(&pivot_tf);
                }
            }
            pivot_columns.push(c);
            next += 1;
        }
        Rref {
            reduced,
            rank: next,
            transform,
            pivot_columns,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Row space basis in canonical (reduced echelon) form; two matrices span
    /// the same space iff their canonical forms are equal.
    pub fn row_space_canonical(&self) -> Self {
        let r = self.rref();
        Self {
            cols: self.cols,
            rows: r.reduced.rows.into_iter().take(r.rank).collect(),
        }
    }

    /// Basis of `{x : M·x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<BitVector> {
        let r = self.rref();
        nullspace_from_rref(&r, self.cols)
    }

    /// Solves `M·x = b`. Free variables of the particular solution are zero.
    ///
    /// # Panics
    /// Panics if `b.len() != self.rows()`.
    pub fn solve(&self, b: &BitVector) -> Option<Solution> {
        assert_eq!(
            b.len(),
            self.rows.len(),
            "right-hand side length {} != rows {}",
            b.len(),
            self.rows.len()
        );
        let r = self.rref();
        let c = r.transform.mul_vec(b);
        if (r.rank..self.rows.len()).any(|i| c.get(i)) {
            return None;
        }
        let mut particular = BitVector::zeros(self.cols);
        for (i, &pc) in r.pivot_columns.iter().enumerate() {
            if c.get(i) {
                particular.set(pc, true);
            }
        }
        Some(Solution {
            particular,
            nullspace: nullspace_from_rref(&r, self.cols),
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.cols
    }
}

fn nullspace_from_rref(r: &Rref, cols: usize) -> Vec<BitVector> {
    let mut is_pivot = vec![false; cols];
    for &p in &r.pivot_columns {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = BitVector::unit(cols, f);
            for (i, &pc) in r.pivot_columns.iter().enumerate() {
                if r.reduced.rows[i].get(f) {
                    v.set(pc, true);
                }
            }
            v
        })
        .collect()
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{} [", self.rows.len(), self.cols)?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("]")
    }
}
