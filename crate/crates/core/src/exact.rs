//! Exact nullity over Q of sparse integer matrices.
//!
//! The matrix is split into blocks along the connected components of its
//! nonzero pattern. Each block is row reduced modulo a large prime, which
//! bounds the rational nullity from above. The modular kernel is then lifted
//! by rational reconstruction and checked exactly against the integer matrix;
//! a successful check bounds the nullity from below, so the two agree.

use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{Error, Result};

const PRIMES: [u64; 4] = [2_147_483_647, 2_147_483_629, 2_147_483_587, 2_147_483_579];

/// Blocks above this size are rejected rather than eliminated densely.
pub const MAX_DENSE_BLOCK: usize = 4096;

/// A square integer matrix stored by rows as `(column, value)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    n: usize,
    rows: Vec<Vec<(usize, i64)>>,
}

impl SparseIntMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, rows: vec![Vec::new(); n] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Adds `value` to entry `(r, c)`.
    pub fn add(&mut self, r: usize, c: usize, value: i64) {
        let row = &mut self.rows[r];
        match row.iter_mut().find(|(col, _)| *col == c) {
            Some(entry) => entry.1 += value,
            None => row.push((c, value)),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.rows[r].iter().filter(|(col, _)| *col == c).map(|(_, v)| v).sum()
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.rows[r].iter().copied().filter(|&(_, v)| v != 0)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|r| self.row(r).all(|(c, v)| self.get(c, r) == v))
    }

    /// Index sets of the connected components of the symmetrized nonzero pattern.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for r in 0..self.n {
            for (c, _) in self.row(r) {
                let (a, b) = (find(&mut parent, r), find(&mut parent, c));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 0..self.n {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().push(i);
        }
        groups.into_values().collect()
    }
}

/// Exact nullity over Q.
pub fn nullity(m: &SparseIntMatrix) -> Result<usize> {
    let blocks = m.blocks();
    if let Some(big) = blocks.iter().find(|b| b.len() > MAX_DENSE_BLOCK) {
        return Err(Error::TooLarge(format!(
            "connected block of {} states exceeds the dense limit of {MAX_DENSE_BLOCK}",
            big.len()
        )));
    }
    let per_block: Vec<Result<usize>> = blocks.par_iter().map(|b| block_nullity(m, b)).collect();
    per_block.into_iter().sum()
}

fn block_nullity(m: &SparseIntMatrix, block: &[usize]) -> Result<usize> {
    let mut local = vec![usize::MAX; m.n];
    for (i, &g) in block.iter().enumerate() {
        local[g] = i;
    }
    let rows: Vec<Vec<(usize, i64)>> =
        block.iter().map(|&g| m.row(g).map(|(c, v)| (local[c], v)).collect()).collect();
    for &p in &PRIMES {
        if let Some(k) = certified_nullity(&rows, p) {
            return Ok(k);
        }
    }
    Err(Error::InconclusiveNullity(format!(
        "block of {} states could not be certified with {} primes",
        block.len(),
        PRIMES.len()
    )))
}

fn to_mod(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut result, mut base, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Reduced row echelon form mod `p`; returns pivot columns.
fn rref_mod(a: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let n_rows = a.len();
    let n_cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n_cols {
        if r == n_rows {
            break;
        }
        let Some(sel) = (r..n_rows).find(|&i| a[i][col] != 0) else { continue };
        a.swap(r, sel);
        let inv = inv_mod(a[r][col], p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        let (head, tail) = a.split_at_mut(r);
        let (pivot_row, below) = tail.split_first_mut().unwrap();
        let nonzero: Vec<usize> = (col..n_cols).filter(|&j| pivot_row[j] != 0).collect();
        for other in head.iter_mut().chain(below.iter_mut()) {
            let f = other[col];
            if f == 0 {
                continue;
            }
            let neg = p - f;
            for &j in &nonzero {
                other[j] = (other[j] + neg * pivot_row[j]) % p;
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// `a/b` with `|a|, |b| ≤ sqrt(p/2)` and `a ≡ b·x mod p`.
fn rational_reconstruct(x: u64, p: u64) -> Option<(i128, i128)> {
    let bound = ((p / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (p as i128, x as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (num, den) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    Some((num, den))
}

fn certified_nullity(rows: &[Vec<(usize, i64)>], p: u64) -> Option<usize> {
    let n = rows.len();
    let mut dense = vec![vec![0u64; n]; n];
    for (i, row) in rows.iter().enumerate() {
        for &(c, v) in row {
            dense[i][c] = (dense[i][c] + to_mod(v, p)) % p;
        }
    }
    let pivots = rref_mod(&mut dense, p);
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        // Kernel vector: 1 at `free`, minus the pivot rows' entries elsewhere.
        let mut entries: Vec<(usize, i128, i128)> = vec![(free, 1, 1)];
        for (r, &pc) in pivots.iter().enumerate() {
            let v = dense[r][free];
            if v != 0 {
                let (num, den) = rational_reconstruct((p - v) % p, p)?;
                entries.push((pc, num, den));
            }
        }
        let lcm = entries.iter().fold(1i128, |acc, &(_, _, d)| acc.lcm(&d));
        let mut x = vec![0i128; n];
        for (idx, num, den) in entries {
            x[idx] = num * (lcm / den);
        }
        let in_kernel = rows
            .iter()
            .all(|row| row.iter().map(|&(c, v)| v as i128 * x[c]).sum::<i128>() == 0);
        if !in_kernel {
            return None;
        }
    }
    Some(n - pivots.len())
}
