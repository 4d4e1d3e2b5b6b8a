//! Bit-packed linear algebra over GF(2).
//!
//! Vectors and matrix rows are stored 64 entries per `u64` word. Elimination
//! goes through the [`EliminationKernel`] trait so that a faster kernel can be
//! dropped in without touching callers; [`GaussKernel`] is plain Gaussian
//! elimination.

use std::fmt;

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; words_for(len)] }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_support(len: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in support {
            v.flip(i);
        }
        v
    }

    /// Low `len` bits of `bits`, bit `i` of the integer becoming entry `i`.
    pub fn from_u64(len: usize, bits: u64) -> Self {
        assert!(len <= WORD);
        let mut v = Self::zeros(len);
        if len > 0 {
            let mask = if len == WORD { u64::MAX } else { (1u64 << len) - 1 };
            v.words[0] = bits & mask;
        }
        v
    }

    /// Inverse of [`BitVector::from_u64`].
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= WORD);
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "length mismatch in GF(2) addition");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the number of set entries.
    pub fn parity(&self) -> bool {
        self.count_ones() % 2 == 1
    }

    /// GF(2) inner product.
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// Indices of the set entries, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD + b)
                }
            })
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A dense matrix over GF(2), stored row-major with bit-packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BitVector::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from row vectors; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row width mismatch");
        }
        Self { rows: rows.len(), cols, data: rows }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[BitVector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value)
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r].flip(c)
    }

    pub fn row(&self, r: usize) -> &BitVector {
        &self.data[r]
    }

    pub fn row_vectors(&self) -> &[BitVector] {
        &self.data
    }

    pub fn column(&self, c: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.cols);
        let mut out = BitVector::zeros(self.rows);
        for (r, row) in self.data.iter().enumerate() {
            if row.dot(v) {
                out.set(r, true);
            }
        }
        out
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in GF(2) product");
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for k in row.ones() {
                out.data[r].xor_assign(&other.data[k]);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVector::is_zero)
    }

    pub fn rank(&self) -> usize {
        GaussKernel.row_reduce(&mut self.clone()).len()
    }

    /// A basis of `{x : A x = 0}`, one vector per free column of the reduced
    /// row echelon form. Each basis vector has a single 1 among the free
    /// columns, so a kernel vector's coordinates are its free-column entries.
    pub fn nullspace(&self) -> Nullspace {
        self.nullspace_with(&GaussKernel)
    }

    pub fn nullspace_with<K: EliminationKernel>(&self, kernel: &K) -> Nullspace {
        let mut reduced = self.clone();
        let pivots = kernel.row_reduce(&mut reduced);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let basis: Vec<BitVector> = free
            .iter()
            .map(|&f| {
                let mut v = BitVector::unit(self.cols, f);
                for (row, &p) in pivots.iter().enumerate() {
                    if reduced.get(row, f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        assert_eq!(
            pivots.len() + basis.len(),
            self.cols,
            "rank-nullity violated by elimination kernel"
        );
        Nullspace { basis, free_columns: free, rank: pivots.len() }
    }

    /// Some `x` with `self · x = b`, or `None` if `b` is outside the column span.
    pub fn solve(&self, b: &BitVector) -> Option<BitVector> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut echelon = TaggedEchelon::new(self.rows, self.cols);
        for c in 0..self.cols {
            echelon.insert(&self.column(c), BitVector::unit(self.cols, c));
        }
        let (residue, x) = echelon.reduce(b);
        residue.is_zero().then_some(x)
    }

    /// Renders the matrix as a grid of `0`/`1` characters, one row per line.
    pub fn to_text_grid(&self) -> String {
        let mut s = String::with_capacity(self.rows * (self.cols + 1));
        for row in &self.data {
            s.push_str(&format!("{row:?}"));
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        f.write_str(&self.to_text_grid())
    }
}

/// Output of [`Gf2Matrix::nullspace`].
#[derive(Clone, Debug)]
pub struct Nullspace {
    pub basis: Vec<BitVector>,
    pub free_columns: Vec<usize>,
    pub rank: usize,
}

impl Nullspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a kernel vector in [`Nullspace::basis`].
    pub fn coordinates(&self, v: &BitVector) -> BitVector {
        BitVector::from_bools(&self.free_columns.iter().map(|&c| v.get(c)).collect::<Vec<_>>())
    }

    /// The kernel vector with the given basis coordinates.
    pub fn combine(&self, coords: &BitVector) -> BitVector {
        let len = self.basis.first().map_or(0, BitVector::len);
        let mut v = BitVector::zeros(len);
        for i in coords.ones() {
            v.xor_assign(&self.basis[i]);
        }
        v
    }
}

/// Row reduction strategy used by the matrix routines.
pub trait EliminationKernel {
    /// Brings `m` into reduced row echelon form in place and returns the pivot
    /// column of each nonzero row, in row order. Pivots are the leftmost
    /// available columns.
    fn row_reduce(&self, m: &mut Gf2Matrix) -> Vec<usize>;
}

/// Plain Gauss-Jordan elimination on packed rows.
#[derive(Clone, Copy, Debug, Default)]
pub struct GaussKernel;

impl EliminationKernel for GaussKernel {
    fn row_reduce(&self, m: &mut Gf2Matrix) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..m.cols {
            if next == m.rows {
                break;
            }
            let Some(found) = (next..m.rows).find(|&r| m.data[r].get(col)) else {
                continue;
            };
            m.data.swap(next, found);
            let pivot_row = m.data[next].clone();
            for r in 0..m.rows {
                if r != next && m.data[r].get(col) {
                    m.data[r].xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
        }
        pivots
    }
}

/// An incrementally built echelon basis whose rows carry a tag recording how
/// they were formed. Used to express vectors in a chosen basis of a quotient
/// space: rows inserted with a zero tag span the subspace being quotiented out.
#[derive(Clone, Debug)]
pub struct TaggedEchelon {
    len: usize,
    tag_len: usize,
    rows: Vec<(usize, BitVector, BitVector)>,
}

impl TaggedEchelon {
    pub fn new(len: usize, tag_len: usize) -> Self {
        Self { len, tag_len, rows: Vec::new() }
    }

    /// Reduces `v` against the stored rows; returns the residue and the
    /// accumulated tag.
    pub fn reduce(&self, v: &BitVector) -> (BitVector, BitVector) {
        assert_eq!(v.len(), self.len);
        let mut residue = v.clone();
        let mut tag = BitVector::zeros(self.tag_len);
        for (pivot, row, row_tag) in &self.rows {
            if residue.get(*pivot) {
                residue.xor_assign(row);
                tag.xor_assign(row_tag);
            }
        }
        (residue, tag)
    }

    /// Inserts `v` with `tag`. Returns `false` (and stores nothing) when `v`
    /// already lies in the span.
    pub fn insert(&mut self, v: &BitVector, tag: BitVector) -> bool {
        let (residue, acc) = self.reduce(v);
        let Some(pivot) = residue.first_one() else {
            return false;
        };
        let tag = tag.xor(&acc);
        // Keep the basis fully reduced at the new pivot so that later
        // reductions can run in a single pass.
        for (_, row, row_tag) in self.rows.iter_mut() {
            if row.get(pivot) {
                row.xor_assign(&residue);
                row_tag.xor_assign(&tag);
            }
        }
        let at = self.rows.partition_point(|(p, _, _)| *p < pivot);
        self.rows.insert(at, (pivot, residue, tag));
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitvector_ops() {
        let mut v = BitVector::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(v.count_ones(), 3);
        assert_eq!(v.first_one(), Some(0));
        v.flip(0);
        assert_eq!(v.first_one(), Some(64));
        let w = BitVector::from_support(130, [64, 100]);
        assert!(v.dot(&w));
        assert_eq!(v.xor(&w).ones().collect::<Vec<_>>(), vec![100, 129]);
    }

    #[test]
    fn u64_roundtrip() {
        let v = BitVector::from_u64(5, 0b10110);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![1, 2, 4]);
        assert_eq!(v.to_u64(), 0b10110);
    }

    #[test]
    fn rank_and_nullspace_of_circle_boundary() {
        // Boundary of the 3-cycle: rows vertices, columns edges 01, 02, 12.
        let m = Gf2Matrix::from_rows(
            3,
            vec![
                BitVector::from_support(3, [0, 1]),
                BitVector::from_support(3, [0, 2]),
                BitVector::from_support(3, [1, 2]),
            ],
        );
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.dim(), 1);
        assert!(m.mul_vec(&ns.basis[0]).is_zero());
        assert_eq!(ns.basis[0].count_ones(), 3);
    }

    #[test]
    fn tagged_echelon_quotient_coordinates() {
        let mut e = TaggedEchelon::new(4, 1);
        assert!(e.insert(&BitVector::from_support(4, [0, 1]), BitVector::zeros(1)));
        assert!(e.insert(&BitVector::from_support(4, [2]), BitVector::unit(1, 0)));
        assert!(!e.insert(&BitVector::from_support(4, [0, 1, 2]), BitVector::zeros(1)));
        let (res, tag) = e.reduce(&BitVector::from_support(4, [0, 1, 2]));
        assert!(res.is_zero());
        assert!(tag.get(0));
        let (res, tag) = e.reduce(&BitVector::from_support(4, [0, 1]));
        assert!(res.is_zero());
        assert!(!tag.get(0));
    }

    #[test]
    fn transpose_and_product() {
        let a = Gf2Matrix::from_rows(
            2,
            vec![BitVector::from_support(2, [0, 1]), BitVector::from_support(2, [1])],
        );
        let at = a.transpose();
        assert!(at.get(1, 0) && at.get(1, 1) && at.get(0, 0) && !at.get(0, 1));
        let p = a.mul(&a);
        // [[1,1],[0,1]]^2 = [[1,0],[0,1]] over GF(2)
        assert_eq!(p, Gf2Matrix::identity(2));
    }
}
