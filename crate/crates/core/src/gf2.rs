//! Exact linear algebra over the two-element field.
//!
//! Every quotient, solver and isomorphism test in this crate reduces to
//! row operations on dense bit matrices. Matrices here are tiny (at most a
//! few thousand rows), so rows are packed into `u64` words and all
//! algorithms are the plain cubic ones with a deterministic pivot choice:
//! the lowest column index wins, which makes reduced forms canonical.

use std::fmt;

const WORD_BITS: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A vector over GF(2), bit-packed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vec {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vec {
    pub fn zeros(len: usize) -> Self {
        Gf2Vec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Gf2Vec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Basis vector e_i.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Gf2Vec::zeros(len);
        v.set(i, true);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range (len {})", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range (len {})", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        let cur = self.get(i);
        self.set(i, !cur);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Addition in GF(2).
    pub fn xor_assign(&mut self, other: &Gf2Vec) {
        assert_eq!(self.len, other.len, "length mismatch in xor_assign");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Gf2Vec) -> Gf2Vec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

impl fmt::Debug for Gf2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

/// A dense matrix over GF(2) with bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    /// Row-major storage, `words_per_row` words per row.
    data: Vec<u64>,
    words_per_row: usize,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = words_for(cols).max(1);
        Gf2Matrix {
            rows,
            cols,
            data: vec![0; rows * words_per_row],
            words_per_row,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Gf2Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Gf2Matrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "jagged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v % 2 == 1);
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Gf2Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "({i},{j}) out of range");
        (self.data[i * self.words_per_row + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "({i},{j}) out of range");
        let idx = i * self.words_per_row + j / WORD_BITS;
        let mask = 1u64 << (j % WORD_BITS);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn row(&self, i: usize) -> Gf2Vec {
        let mut v = Gf2Vec::zeros(self.cols);
        let base = i * self.words_per_row;
        v.words.copy_from_slice(&self.data[base..base + self.words_per_row]);
        v
    }

    pub fn column(&self, j: usize) -> Gf2Vec {
        Gf2Vec::from_bits(&(0..self.rows).map(|i| self.get(i, j)).collect::<Vec<_>>())
    }

    pub fn set_row(&mut self, i: usize, v: &Gf2Vec) {
        assert_eq!(v.len, self.cols);
        let base = i * self.words_per_row;
        self.data[base..base + self.words_per_row].copy_from_slice(&v.words);
    }

    pub fn set_column(&mut self, j: usize, v: &Gf2Vec) {
        assert_eq!(v.len, self.rows);
        for i in 0..self.rows {
            self.set(i, j, v.get(i));
        }
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let (a, b) = (src * self.words_per_row, dst * self.words_per_row);
        for k in 0..self.words_per_row {
            let w = self.data[a + k];
            self.data[b + k] ^= w;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.words_per_row {
            self.data.swap(a * self.words_per_row + k, b * self.words_per_row + k);
        }
    }

    /// Matrix sum (XOR).
    pub fn add(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
        out
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let base_out = i * out.words_per_row;
            for k in 0..self.cols {
                if self.get(i, k) {
                    let base_other = k * other.words_per_row;
                    for w in 0..other.words_per_row {
                        out.data[base_out + w] ^= other.data[base_other + w];
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product over GF(2).
    pub fn mul_vec(&self, v: &Gf2Vec) -> Gf2Vec {
        assert_eq!(self.cols, v.len, "dimension mismatch");
        let mut out = Gf2Vec::zeros(self.rows);
        for i in 0..self.rows {
            let base = i * self.words_per_row;
            let mut acc = 0u64;
            for w in 0..self.words_per_row {
                acc ^= self.data[base + w] & v.words[w];
            }
            out.set(i, acc.count_ones() % 2 == 1);
        }
        out
    }

    pub fn transpose(&self) -> Gf2Matrix {
        Gf2Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Kronecker product; index `(i1, i2)` maps to `i1 * other.rows + i2`.
    pub fn kron(&self, other: &Gf2Matrix) -> Gf2Matrix {
        let mut out = Gf2Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                if !self.get(i1, j1) {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        if other.get(i2, j2) {
                            out.set(i1 * other.rows + i2, j1 * other.cols + j2, true);
                        }
                    }
                }
            }
        }
        out
    }

    /// Reduced row-echelon form with the lowest-column pivot rule.
    ///
    /// Returns `(rref, rank, pivot_columns)`.
    pub fn rref(&self) -> (Gf2Matrix, usize, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let hit = (pivot_row..m.rows).find(|&r| m.get(r, col));
            let Some(r) = hit else { continue };
            m.swap_rows(pivot_row, r);
            for other in 0..m.rows {
                if other != pivot_row && m.get(other, col) {
                    m.xor_row_into(pivot_row, other);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        let rank = pivots.len();
        (m, rank, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Solves `A x = b`. Returns one solution if consistent, `None` otherwise.
    pub fn solve(&self, b: &Gf2Vec) -> Option<Gf2Vec> {
        assert_eq!(b.len, self.rows, "rhs length mismatch");
        // Augment with b as an extra column and reduce.
        let mut aug = Gf2Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    aug.set(i, j, true);
                }
            }
            if b.get(i) {
                aug.set(i, self.cols, true);
            }
        }
        let (r, _, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the b column: inconsistent
        }
        let mut x = Gf2Vec::zeros(self.cols);
        for (row, &col) in pivots.iter().enumerate() {
            if r.get(row, self.cols) {
                x.set(col, true);
            }
        }
        Some(x)
    }

    /// Basis of the kernel `{x : A x = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Gf2Vec> {
        let (r, _, pivots) = self.rref();
        let pivot_set: Vec<usize> = pivots.clone();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = Gf2Vec::zeros(self.cols);
            v.set(free, true);
            for (row, &pc) in pivot_set.iter().enumerate() {
                if r.get(row, free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn invert(&self) -> Option<Gf2Matrix> {
        assert_eq!(self.rows, self.cols, "invert requires a square matrix");
        let n = self.rows;
        let mut aug = Gf2Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                if self.get(i, j) {
                    aug.set(i, j, true);
                }
            }
            aug.set(i, n + i, true);
        }
        let (r, _, pivots) = aug.rref();
        if pivots.iter().filter(|&&c| c < n).count() < n {
            return None;
        }
        Some(Gf2Matrix::from_fn(n, n, |i, j| r.get(i, n + j)))
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}:", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{}", u8::from(self.get(i, j)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> Gf2Matrix {
        Gf2Matrix::from_fn(rows, cols, |_, _| rng.gen_bool(0.5))
    }

    #[test]
    fn rref_equal_rows() {
        let m = Gf2Matrix::from_rows(&[vec![1, 1], vec![1, 1]]);
        let (_, rank, pivots) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn rref_identity() {
        let (r, rank, pivots) = Gf2Matrix::identity(3).rref();
        assert_eq!(rank, 3);
        assert_eq!(pivots, vec![0, 1, 2]);
        assert_eq!(r, Gf2Matrix::identity(3));
    }

    #[test]
    fn rref_zero_matrix() {
        let (_, rank, pivots) = Gf2Matrix::zeros(2, 5).rref();
        assert_eq!(rank, 0);
        assert!(pivots.is_empty());
    }

    #[test]
    fn rref_idempotent_random() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let rows = rng.gen_range(0..=12);
            let cols = rng.gen_range(0..=12);
            let m = random_matrix(&mut rng, rows, cols);
            let (r1, rank1, p1) = m.rref();
            let (r2, rank2, p2) = r1.rref();
            assert_eq!(r1, r2);
            assert_eq!(rank1, rank2);
            assert_eq!(p1, p2);
            assert!(rank1 <= rows.min(cols));
        }
    }

    #[test]
    fn solve_identity_system() {
        let a = Gf2Matrix::identity(2);
        let b = Gf2Vec::from_bits(&[true, false]);
        let x = a.solve(&b).unwrap();
        assert_eq!(x, b);
        assert!(a.kernel_basis().is_empty());
    }

    #[test]
    fn solve_parity_equation() {
        let a = Gf2Matrix::from_rows(&[vec![1, 1]]);
        let b = Gf2Vec::from_bits(&[false]);
        let x = a.solve(&b).unwrap();
        assert!(x.is_zero());
        let kernel = a.kernel_basis();
        assert_eq!(kernel.len(), 1);
        assert_eq!(kernel[0], Gf2Vec::from_bits(&[true, true]));
    }

    #[test]
    fn solve_inconsistent() {
        let a = Gf2Matrix::zeros(1, 1);
        let b = Gf2Vec::from_bits(&[true]);
        assert!(a.solve(&b).is_none());
    }

    #[test]
    fn solve_random_verification() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..300 {
            let rows = rng.gen_range(1..=12);
            let cols = rng.gen_range(1..=12);
            let a = random_matrix(&mut rng, rows, cols);
            let b = Gf2Vec::from_bits(&(0..rows).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>());
            if let Some(x) = a.solve(&b) {
                assert_eq!(a.mul_vec(&x), b);
            }
            for k in a.kernel_basis() {
                assert!(a.mul_vec(&k).is_zero());
            }
        }
    }

    #[test]
    fn invert_identity_and_swap() {
        assert_eq!(Gf2Matrix::identity(4).invert().unwrap(), Gf2Matrix::identity(4));
        let swap = Gf2Matrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(swap.invert().unwrap(), swap);
    }

    #[test]
    fn invert_singular() {
        let m = Gf2Matrix::from_rows(&[vec![1, 1], vec![1, 1]]);
        assert!(m.invert().is_none());
    }

    #[test]
    fn invert_random_verification() {
        let mut rng = StdRng::seed_from_u64(13);
        let mut found = 0;
        for _ in 0..200 {
            let n = rng.gen_range(1..=10);
            let a = random_matrix(&mut rng, n, n);
            if let Some(inv) = a.invert() {
                found += 1;
                assert_eq!(a.mul(&inv), Gf2Matrix::identity(n));
                assert_eq!(inv.mul(&a), Gf2Matrix::identity(n));
            }
        }
        assert!(found > 0, "no invertible samples drawn");
    }

    #[test]
    fn kron_mixed_product() {
        // (A kron B)(C kron D) = AC kron BD
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..50 {
            let (m, n, p) = (rng.gen_range(1..=4), rng.gen_range(1..=4), rng.gen_range(1..=4));
            let (q, r, s) = (rng.gen_range(1..=4), rng.gen_range(1..=4), rng.gen_range(1..=4));
            let a = random_matrix(&mut rng, m, n);
            let c = random_matrix(&mut rng, n, p);
            let b = random_matrix(&mut rng, q, r);
            let d = random_matrix(&mut rng, r, s);
            let lhs = a.kron(&b).mul(&c.kron(&d));
            let rhs = a.mul(&c).kron(&b.mul(&d));
            assert_eq!(lhs, rhs);
        }
    }
}
