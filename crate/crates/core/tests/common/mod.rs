//! Brute-force reference computations shared by the integration tests.
//! Nothing here goes through the engine's linear algebra.

#![allow(dead_code)]

use std::collections::BTreeSet;

use gds_core::catalog::parse_manifold;
use gds_core::SimplicialComplex;

pub const BUILTINS: [&str; 9] =
    ["circle(3)", "circle(5)", "sphere(2)", "sphere(3)", "rp2_6", "torus_7", "klein_8", "rp3_11", "cp2_9"];

pub fn complex(name: &str) -> SimplicialComplex {
    parse_manifold(name).unwrap().complex
}

pub fn facet_lists(k: &SimplicialComplex) -> Vec<Vec<usize>> {
    k.facets().iter().map(|s| s.vertices().to_vec()).collect()
}

/// Sorted list of all `k`-faces of the given facets.
pub fn faces(facets: &[Vec<usize>], k: usize) -> Vec<Vec<usize>> {
    let mut out = BTreeSet::new();
    for f in facets {
        let n = f.len();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize == k + 1 {
                out.insert((0..n).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect::<Vec<_>>());
            }
        }
    }
    out.into_iter().collect()
}

pub fn f_vector(facets: &[Vec<usize>]) -> Vec<usize> {
    let d = facets.iter().map(Vec::len).max().unwrap_or(1) - 1;
    (0..=d).map(|k| faces(facets, k).len()).collect()
}

pub fn rank_mod2(mut rows: Vec<Vec<u8>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        if let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] == 1) {
            rows.swap(rank, p);
            for r in 0..rows.len() {
                if r != rank && rows[r][c] == 1 {
                    for j in 0..cols {
                        rows[r][j] ^= rows[rank][j];
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Rank of the boundary map from `k`-faces to `(k-1)`-faces.
pub fn boundary_rank(facets: &[Vec<usize>], k: usize) -> usize {
    let lower = faces(facets, k - 1);
    let rows = faces(facets, k)
        .iter()
        .map(|s| {
            let mut row = vec![0u8; lower.len()];
            for skip in 0..s.len() {
                let face: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                row[lower.binary_search(&face).unwrap()] = 1;
            }
            row
        })
        .collect();
    rank_mod2(rows)
}

pub fn betti(facets: &[Vec<usize>]) -> Vec<usize> {
    let f = f_vector(facets);
    let d = f.len() - 1;
    let r: Vec<usize> = (0..=d + 1).map(|k| if k == 0 || k > d { 0 } else { boundary_rank(facets, k) }).collect();
    (0..=d).map(|k| f[k] - r[k] - r[k + 1]).collect()
}

pub fn betti_of(name: &str) -> Vec<usize> {
    betti(&facet_lists(&complex(name)))
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

/// Number of vertex permutations that map the facet set onto itself.
pub fn automorphism_count(facets: &[Vec<usize>], n: usize) -> usize {
    let target: BTreeSet<Vec<usize>> = facets.iter().cloned().collect();
    permutations(n)
        .into_iter()
        .filter(|p| {
            facets.iter().all(|f| {
                let mut g: Vec<usize> = f.iter().map(|&v| p[v]).collect();
                g.sort_unstable();
                target.contains(&g)
            })
        })
        .count()
}
