use std::fmt;

use super::vector::{words_for, BitVector, WORD};
use super::Gf2Error;

/// Dense GF(2) matrix, rows packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from 0/1 rows. All rows must share one length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x & 1 == 1);
            }
        }
        m
    }

    /// Square `n x n` matrix from row words; bit `j` of `rows[i]` is entry (i, j).
    pub fn from_row_words(n_cols: usize, rows: &[u64]) -> Self {
        assert!(n_cols <= WORD);
        let mut m = Self::zeros(rows.len(), n_cols);
        let mask = if n_cols == WORD { u64::MAX } else { (1u64 << n_cols) - 1 };
        for (i, &r) in rows.iter().enumerate() {
            if m.stride > 0 {
                m.words[i * m.stride] = r & mask;
            }
        }
        m
    }

    /// Row `i` as a word; only valid for matrices with at most 64 columns.
    pub fn row_word(&self, i: usize) -> u64 {
        assert!(self.cols <= WORD);
        if self.stride == 0 {
            0
        } else {
            self.words[i * self.stride]
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        (self.words[i * self.stride + j / WORD] >> (j % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        let w = &mut self.words[i * self.stride + j / WORD];
        let mask = 1u64 << (j % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn row(&self, i: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row_slice(i).to_vec())
    }

    fn row_slice(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        for w in 0..self.stride {
            let v = self.words[src * self.stride + w];
            self.words[dst * self.stride + w] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for w in 0..self.stride {
                self.words.swap(a * self.stride + w, b * self.stride + w);
            }
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    pub fn mul(&self, rhs: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.cols != rhs.rows {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    for w in 0..out.stride {
                        out.words[i * out.stride + w] ^= rhs.words[k * rhs.stride + w];
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector, Gf2Error> {
        if self.cols != v.len() {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            let parity = self
                .row_slice(i)
                .iter()
                .zip(v.words())
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>();
            if parity % 2 == 1 {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Reduces `self` to reduced row echelon form in place and returns the
    /// pivot column of each pivot row, top to bottom.
    ///
    /// Pivots are chosen column by column, taking the topmost unused row with a
    /// 1 in that column.
    fn reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(p, next);
            for r in 0..self.rows {
                if r != next && self.get(r, col) {
                    self.xor_row_into(next, r);
                }
            }
            pivots.push(col);
            next += 1;
        }
        pivots
    }

    /// Reduced row echelon form `R`, an invertible `P` with `P * self = R`,
    /// and the rank.
    pub fn reduce_with_transform(&self) -> (BitMatrix, BitMatrix, usize) {
        let (r, c) = (self.rows, self.cols);
        let mut aug = BitMatrix::zeros(r, c + r);
        for i in 0..r {
            for j in 0..c {
                if self.get(i, j) {
                    aug.set(i, j, true);
                }
            }
            aug.set(i, c + i, true);
        }
        // pivots past column c only shuffle rows whose left block is zero
        let rank = aug.reduce().iter().filter(|&&p| p < c).count();
        let mut reduced = BitMatrix::zeros(r, c);
        let mut transform = BitMatrix::zeros(r, r);
        for i in 0..r {
            for j in 0..c {
                if aug.get(i, j) {
                    reduced.set(i, j, true);
                }
            }
            for j in 0..r {
                if aug.get(i, c + j) {
                    transform.set(i, j, true);
                }
            }
        }
        (reduced, transform, rank)
    }

    pub fn rank(&self) -> usize {
        self.clone().reduce().len()
    }

    pub fn invert(&self) -> Result<BitMatrix, Gf2Error> {
        if !self.is_square() {
            return Err(Gf2Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = BitMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                if self.get(i, j) {
                    aug.set(i, j, true);
                }
            }
            aug.set(i, n + i, true);
        }
        let pivots = aug.reduce();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return Err(Gf2Error::Singular);
        }
        let mut inv = BitMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if aug.get(i, n + j) {
                    inv.set(i, j, true);
                }
            }
        }
        Ok(inv)
    }

    /// Solves `self * x = b`, or returns `None` when the system is inconsistent.
    ///
    /// Free variables are set to zero, so the returned solution is the one
    /// supported on pivot columns only.
    pub fn solve_linear(&self, b: &BitVector) -> Result<Option<BitVector>, Gf2Error> {
        if b.len() != self.rows {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let n = self.cols;
        let mut aug = BitMatrix::zeros(self.rows, n + 1);
        for i in 0..self.rows {
            for j in 0..n {
                if self.get(i, j) {
                    aug.set(i, j, true);
                }
            }
            if b.get(i) {
                aug.set(i, n, true);
            }
        }
        let pivots = aug.reduce();
        if pivots.last() == Some(&n) {
            return Ok(None);
        }
        let mut x = BitVector::zeros(n);
        for (row, &col) in pivots.iter().enumerate() {
            if aug.get(row, n) {
                x.set(col, true);
            }
        }
        Ok(Some(x))
    }

    /// Basis of the right null space `{x : self * x = 0}`, one vector per free
    /// column in increasing column order.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let mut r = self.clone();
        let pivots = r.reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVector::unit(self.cols, free);
                for (row, &p) in pivots.iter().enumerate() {
                    if r.get(row, free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Elementary shear: the identity plus a single 1 at `(i, j)`.
///
/// Acting on a tensor index as `t'(.., k') = sum_k chi(k, k') t(.., k)`, the
/// shear `shear(m, k0, k1)` replaces slice `k1` by `k1 xor k0`.
pub fn shear(m: usize, i: usize, j: usize) -> Result<BitMatrix, Gf2Error> {
    if i == j {
        return Err(Gf2Error::DiagonalShear(i));
    }
    if i >= m || j >= m {
        return Err(Gf2Error::IndexOutOfRange { index: i.max(j), bound: m });
    }
    let mut s = BitMatrix::identity(m);
    s.set(i, j, true);
    Ok(s)
}

/// Order of GL(m, 2): the product over `i < m` of `2^m - 2^i`.
pub fn gl_order(m: usize) -> u64 {
    (0..m).map(|i| (1u64 << m) - (1u64 << i)).product()
}

pub const MAX_GL_ORDER_M: usize = 4;

/// Every invertible `m x m` matrix over GF(2), exactly once, in lexicographic
/// order of the packed row words.
pub fn enumerate_gl(m: usize) -> Result<Vec<BitMatrix>, Gf2Error> {
    if m == 0 || m > MAX_GL_ORDER_M {
        return Err(Gf2Error::UnsupportedSize { m, max: MAX_GL_ORDER_M });
    }
    let mut out = Vec::with_capacity(gl_order(m) as usize);
    let mut rows = Vec::with_capacity(m);
    extend_gl(m, &mut rows, &mut out);
    Ok(out)
}

fn extend_gl(m: usize, rows: &mut Vec<u64>, out: &mut Vec<BitMatrix>) {
    if rows.len() == m {
        out.push(BitMatrix::from_row_words(m, rows));
        return;
    }
    // Span of the rows chosen so far, as a membership table over all 2^m words.
    let mut span = vec![false; 1 << m];
    span[0] = true;
    for &r in rows.iter() {
        for w in 0..(1usize << m) {
            if span[w] {
                span[w ^ r as usize] = true;
            }
        }
    }
    for candidate in 1..(1u64 << m) {
        if !span[candidate as usize] {
            rows.push(candidate);
            extend_gl(m, rows, out);
            rows.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(BitMatrix::from_rows(&[[1, 1], [1, 1]]).rank(), 1);
        assert_eq!(BitMatrix::zeros(2, 3).rank(), 0);
    }

    #[test]
    fn invert_examples() {
        let id = BitMatrix::identity(3);
        assert_eq!(id.invert().unwrap(), id);
        let s = BitMatrix::from_rows(&[[1, 1], [0, 1]]);
        assert_eq!(s.invert().unwrap(), s);
        let singular = BitMatrix::from_rows(&[[1, 1], [1, 1]]);
        assert_eq!(singular.invert(), Err(Gf2Error::Singular));
        assert!(matches!(
            BitMatrix::zeros(2, 3).invert(),
            Err(Gf2Error::NotSquare { .. })
        ));
    }

    #[test]
    fn gl_counts() {
        assert_eq!(enumerate_gl(1).unwrap().len(), 1);
        assert_eq!(enumerate_gl(2).unwrap().len(), 6);
        assert_eq!(enumerate_gl(3).unwrap().len(), 168);
        assert_eq!(enumerate_gl(4).unwrap().len() as u64, gl_order(4));
        assert!(enumerate_gl(0).is_err());
        assert!(enumerate_gl(5).is_err());
    }

    #[test]
    fn gl_is_sorted_distinct_and_invertible() {
        for m in 1..=3 {
            let all = enumerate_gl(m).unwrap();
            let keys: Vec<Vec<u64>> = all
                .iter()
                .map(|a| (0..m).map(|i| a.row_word(i)).collect())
                .collect();
            assert!(keys.windows(2).all(|w| w[0] < w[1]));
            for a in &all {
                assert_eq!(a.rank(), m);
                let inv = a.invert().unwrap();
                assert_eq!(a.mul(&inv).unwrap(), BitMatrix::identity(m));
            }
        }
    }

    #[test]
    fn shear_examples() {
        assert_eq!(shear(2, 0, 1).unwrap(), BitMatrix::from_rows(&[[1, 1], [0, 1]]));
        let s = shear(3, 2, 0).unwrap();
        let mut expect = BitMatrix::identity(3);
        expect.set(2, 0, true);
        assert_eq!(s, expect);
        assert_eq!(shear(2, 0, 0), Err(Gf2Error::DiagonalShear(0)));
        assert!(shear(2, 0, 2).is_err());
    }

    #[test]
    fn shear_squares_to_identity() {
        for m in 2..=4 {
            for i in 0..m {
                for j in 0..m {
                    if i != j {
                        let s = shear(m, i, j).unwrap();
                        assert_eq!(s.mul(&s).unwrap(), BitMatrix::identity(m));
                    }
                }
            }
        }
    }

    #[test]
    fn solve_examples() {
        let b = BitVector::from_bits(&[true, false, true]);
        assert_eq!(
            BitMatrix::identity(3).solve_linear(&b).unwrap(),
            Some(b.clone())
        );
        let a = BitMatrix::from_rows(&[[1, 1]]);
        assert_eq!(
            a.solve_linear(&BitVector::from_bits(&[true])).unwrap(),
            Some(BitVector::from_bits(&[true, false]))
        );
        let a = BitMatrix::from_rows(&[[1], [1]]);
        assert_eq!(
            a.solve_linear(&BitVector::from_bits(&[true, false])).unwrap(),
            None
        );
        assert!(a.solve_linear(&BitVector::zeros(3)).is_err());
    }

    #[test]
    fn transform_reproduces_echelon_form() {
        let a = BitMatrix::from_rows(&[[0, 1, 1], [0, 1, 1], [1, 0, 1], [1, 1, 0]]);
        let (r, p, rank) = a.reduce_with_transform();
        assert_eq!(rank, 2);
        assert_eq!(p.mul(&a).unwrap(), r);
        assert_eq!(p.rank(), 4);
    }

    #[test]
    fn kernel_spans_null_space() {
        let a = BitMatrix::from_rows(&[[1, 1, 0, 1], [0, 1, 1, 0]]);
        let ker = a.kernel_basis();
        assert_eq!(ker.len(), 4 - a.rank());
        for v in &ker {
            assert!(a.mul_vec(v).unwrap().is_zero());
        }
    }

    #[test]
    fn wide_matrices_cross_word_boundaries() {
        let mut a = BitMatrix::zeros(3, 130);
        a.set(0, 0, true);
        a.set(0, 129, true);
        a.set(1, 64, true);
        a.set(2, 129, true);
        assert_eq!(a.rank(), 3);
        assert_eq!(a.transpose().rank(), 3);
        let x = a
            .solve_linear(&BitVector::from_bits(&[false, true, true]))
            .unwrap()
            .unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), BitVector::from_bits(&[false, true, true]));
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = BitMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(any::<bool>(), r * c).prop_map(move |bits| {
                let mut m = BitMatrix::zeros(r, c);
                for (idx, b) in bits.into_iter().enumerate() {
                    m.set(idx / c, idx % c, b);
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(a in arb_matrix(6)) {
            prop_assert_eq!(a.rank(), a.transpose().rank());
            prop_assert!(a.rank() <= a.rows().min(a.cols()));
        }

        #[test]
        fn solutions_satisfy_the_system(a in arb_matrix(6), seed in any::<u64>()) {
            let b = BitVector::from_u64(a.rows(), seed);
            if let Some(x) = a.solve_linear(&b).unwrap() {
                prop_assert_eq!(a.mul_vec(&x).unwrap(), b);
            } else {
                // inconsistent systems must have b outside the column space
                let mut aug = BitMatrix::zeros(a.rows(), a.cols() + 1);
                for i in 0..a.rows() {
                    for j in 0..a.cols() {
                        aug.set(i, j, a.get(i, j));
                    }
                    aug.set(i, a.cols(), b.get(i));
                }
                prop_assert_eq!(aug.rank(), a.rank() + 1);
            }
        }
    }
}
