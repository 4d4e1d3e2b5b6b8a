//! Finite abstract simplicial complexes with a global vertex order.
//!
//! Vertex ids are `0..V`. The integer order of the ids is the total order used
//! by every ordered construction downstream (Alexander-Whitney faces, cup-i
//! products, staircase products), so relabeling a complex changes cochain
//! representatives but not cohomology-level answers.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// A simplex, stored as its strictly increasing vertex tuple.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Sorts `vertices`; fails if a vertex repeats.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertexInFacet(vertices));
        }
        Ok(Simplex(vertices))
    }

    /// Wraps an already strictly increasing tuple.
    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Codimension-one faces, the `i`-th omitting vertex `i`.
    pub fn boundary_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.0.len()).map(move |skip| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (1u64..(1u64 << n)).map(move |mask| {
            Simplex((0..n).filter(|&i| mask >> i & 1 == 1).map(|i| self.0[i]).collect())
        })
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A pure simplicial complex, closed under faces, with simplices of every
/// dimension sorted lexicographically and addressable by index.
#[derive(Clone)]
pub struct SimplicialComplex {
    num_vertices: usize,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.num_vertices == other.num_vertices && self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("dim", &self.dim())
            .field("f_vector", &self.f_vector())
            .finish()
    }
}

/// Result of [`SimplicialComplex::check_closed_manifold`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldCheck {
    pub is_closed_manifold: bool,
    pub diagnostic: Option<String>,
}

impl SimplicialComplex {
    /// Face closure of `facets`. Vertex ids must be exactly `0..V`.
    pub fn from_facets<F: AsRef<[usize]>>(facets: &[F]) -> Result<Self> {
        let first = facets.first().ok_or(Error::EmptyInput)?;
        let dim_plus_one = first.as_ref().len();
        if dim_plus_one == 0 {
            return Err(Error::EmptyInput);
        }
        let mut tops = Vec::with_capacity(facets.len());
        for f in facets {
            let f = f.as_ref();
            if f.len() != dim_plus_one {
                return Err(Error::MixedDimension {
                    facet: f.to_vec(),
                    expected: dim_plus_one - 1,
                    found: f.len().saturating_sub(1),
                });
            }
            tops.push(Simplex::new(f.to_vec())?);
        }
        let max_vertex = tops.iter().flat_map(|s| s.0.iter().copied()).max().unwrap_or(0);
        let num_vertices = max_vertex + 1;
        let mut used = vec![false; num_vertices];
        for s in &tops {
            for &v in &s.0 {
                used[v] = true;
            }
        }
        if let Some(missing) = used.iter().position(|&u| !u) {
            return Err(Error::SparseVertexIds { expected: num_vertices, missing });
        }

        let dim = dim_plus_one - 1;
        let mut sets: Vec<HashSet<Simplex>> = vec![HashSet::new(); dim + 1];
        for top in &tops {
            if sets[dim].contains(top) {
                continue;
            }
            for face in top.faces() {
                sets[face.dim()].insert(face);
            }
        }
        let simplices: Vec<Vec<Simplex>> = sets
            .into_iter()
            .map(|set| {
                let mut v: Vec<Simplex> = set.into_iter().collect();
                v.sort();
                v
            })
            .collect();
        Ok(Self::from_sorted_levels(num_vertices, simplices))
    }

    fn from_sorted_levels(num_vertices: usize, simplices: Vec<Vec<Simplex>>) -> Self {
        let index = simplices
            .iter()
            .map(|level| level.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        Self { num_vertices, simplices, index }
    }

    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// The `k`-simplices in lexicographic order (empty for `k > dim`).
    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn facets(&self) -> &[Simplex] {
        self.simplices(self.dim())
    }

    /// Index of the simplex with the given (sorted) vertices.
    pub fn index_of(&self, vertices: &[usize]) -> Option<usize> {
        let k = vertices.len().checked_sub(1)?;
        self.index.get(k)?.get(&Simplex::from_sorted(vertices.to_vec())).copied()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, level)| if k % 2 == 0 { level.len() as i64 } else { -(level.len() as i64) })
            .sum()
    }

    /// Edge indices of the 1-simplices of `s`.
    pub fn edges_of(&self, s: &Simplex) -> Vec<usize> {
        let v = s.vertices();
        let mut out = Vec::with_capacity(v.len() * (v.len().saturating_sub(1)) / 2);
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                out.push(self.index_of(&[v[i], v[j]]).expect("complex is closed under faces"));
            }
        }
        out
    }

    /// Connected component label of every vertex; labels are numbered in
    /// order of each component's smallest vertex.
    pub fn vertex_components(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.num_vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in self.simplices(1) {
            let (a, b) = (find(&mut parent, e.0[0]), find(&mut parent, e.0[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut label = vec![usize::MAX; self.num_vertices];
        let mut next = 0;
        let mut out = vec![0; self.num_vertices];
        for v in 0..self.num_vertices {
            let r = find(&mut parent, v);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            out[v] = label[r];
        }
        out
    }

    pub fn num_components(&self) -> usize {
        self.vertex_components().into_iter().max().map_or(0, |m| m + 1)
    }

    /// Closed pseudomanifold test: every codimension-one simplex lies in
    /// exactly two facets, and for `dim >= 2` every vertex link is connected.
    /// In dimension one the vertex links are two points, so only the facet
    /// condition applies.
    pub fn check_closed_manifold(&self) -> ManifoldCheck {
        let d = self.dim();
        if d == 0 {
            return ManifoldCheck { is_closed_manifold: true, diagnostic: None };
        }
        let mut cofaces = vec![0usize; self.count(d - 1)];
        for f in self.facets() {
            for face in f.boundary_faces() {
                cofaces[self.index_of(face.vertices()).unwrap()] += 1;
            }
        }
        if let Some((i, &n)) = cofaces.iter().enumerate().find(|(_, &n)| n != 2) {
            return ManifoldCheck {
                is_closed_manifold: false,
                diagnostic: Some(format!(
                    "{:?} lies in {n} facets, expected 2",
                    self.simplices(d - 1)[i]
                )),
            };
        }
        if d >= 2 {
            for v in 0..self.num_vertices {
                if !self.link_is_connected(v) {
                    return ManifoldCheck {
                        is_closed_manifold: false,
                        diagnostic: Some(format!("link of vertex {v} is disconnected")),
                    };
                }
            }
        }
        ManifoldCheck { is_closed_manifold: true, diagnostic: None }
    }

    pub fn is_closed_manifold(&self) -> bool {
        self.check_closed_manifold().is_closed_manifold
    }

    fn link_is_connected(&self, v: usize) -> bool {
        let link_vertices: Vec<usize> = self
            .simplices(1)
            .iter()
            .filter(|e| e.contains(v))
            .map(|e| if e.0[0] == v { e.0[1] } else { e.0[0] })
            .collect();
        if link_vertices.is_empty() {
            return false;
        }
        let pos: HashMap<usize, usize> =
            link_vertices.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        let mut adj = vec![Vec::new(); link_vertices.len()];
        for t in self.simplices(2).iter().filter(|t| t.contains(v)) {
            let others: Vec<usize> = t.0.iter().copied().filter(|&w| w != v).collect();
            let (a, b) = (pos[&others[0]], pos[&others[1]]);
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; link_vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// All simplices of dimension at least one that contain `v`, in
    /// dimension-then-lexicographic order.
    pub fn incident_simplices(&self, v: usize) -> Result<Vec<Simplex>> {
        if v >= self.num_vertices {
            return Err(Error::UnknownVertex(v));
        }
        Ok(self.simplices[1..]
            .iter()
            .flat_map(|level| level.iter().filter(|s| s.contains(v)).cloned())
            .collect())
    }

    /// Ordered (staircase) product. The vertex `(i, j)` of the product gets
    /// id `i * |V(other)| + j`, so the product order is lexicographic in the
    /// factor orders.
    pub fn product(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let (p, q) = (self.dim(), other.dim());
        let width = other.num_vertices;
        let mut facets = Vec::new();
        for a in self.facets() {
            for b in other.facets() {
                // Each monotone lattice path from (0,0) to (p,q) is a facet;
                // a path is the set of steps (out of p+q) that advance `a`.
                for mask in 0u64..(1u64 << (p + q)) {
                    if mask.count_ones() as usize != p {
                        continue;
                    }
                    let (mut i, mut j) = (0, 0);
                    let mut verts = Vec::with_capacity(p + q + 1);
                    verts.push(a.0[i] * width + b.0[j]);
                    for step in 0..p + q {
                        if mask >> step & 1 == 1 {
                            i += 1;
                        } else {
                            j += 1;
                        }
                        verts.push(a.0[i] * width + b.0[j]);
                    }
                    facets.push(verts);
                }
            }
        }
        SimplicialComplex::from_facets(&facets).expect("product of pure complexes is pure")
    }

    /// Disjoint union; the vertices of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        if self.dim() != other.dim() {
            return Err(Error::MixedDimension {
                facet: other.facets()[0].0.clone(),
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let shift = self.num_vertices;
        let facets: Vec<Vec<usize>> = self
            .facets()
            .iter()
            .map(|f| f.0.clone())
            .chain(other.facets().iter().map(|f| f.0.iter().map(|v| v + shift).collect()))
            .collect();
        SimplicialComplex::from_facets(&facets)
    }

    /// Barycentric subdivision. Vertex ids of the subdivision are the
    /// simplices of `self` in dimension-then-lexicographic order; facets are
    /// the maximal flags.
    pub fn barycentric_subdivision(&self) -> SimplicialComplex {
        let mut offset = vec![0; self.dim() + 2];
        for k in 0..=self.dim() {
            offset[k + 1] = offset[k] + self.count(k);
        }
        let id = |s: &[usize]| offset[s.len() - 1] + self.index_of(s).unwrap();
        let mut facets = Vec::new();
        for f in self.facets() {
            for perm in permutations(f.0.len()) {
                let mut chain = Vec::with_capacity(f.0.len());
                let mut prefix: Vec<usize> = Vec::with_capacity(f.0.len());
                for &i in &perm {
                    prefix.push(f.0[i]);
                    let mut sorted = prefix.clone();
                    sorted.sort_unstable();
                    chain.push(id(&sorted));
                }
                facets.push(chain);
            }
        }
        SimplicialComplex::from_facets(&facets).expect("flags of a pure complex")
    }

    /// The complex with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<SimplicialComplex> {
        check_permutation(perm, self.num_vertices)?;
        let facets: Vec<Vec<usize>> = self
            .facets()
            .iter()
            .map(|f| f.0.iter().map(|&v| perm[v]).collect())
            .collect();
        SimplicialComplex::from_facets(&facets)
    }

    /// Whether `perm` maps every facet onto a facet.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        if check_permutation(perm, self.num_vertices).is_err() {
            return false;
        }
        self.facets().iter().all(|f| {
            let mut image: Vec<usize> = f.0.iter().map(|&v| perm[v]).collect();
            image.sort_unstable();
            self.index_of(&image).is_some()
        })
    }

    /// All simplicial automorphisms, found by backtracking over vertex
    /// images. Refuses complexes with more than `max_vertices` vertices.
    pub fn automorphisms(&self, max_vertices: usize) -> Result<Vec<Vec<usize>>> {
        let n = self.num_vertices;
        if n > max_vertices {
            return Err(Error::TooLarge(format!(
                "automorphism search limited to {max_vertices} vertices, complex has {n}"
            )));
        }
        // Simplices grouped by their largest vertex: once that vertex has an
        // image, the whole simplex can be checked.
        let mut closing: Vec<Vec<&Simplex>> = vec![Vec::new(); n];
        for level in &self.simplices[1..] {
            for s in level {
                closing[*s.0.last().unwrap()].push(s);
            }
        }
        let degree: Vec<usize> = (0..n)
            .map(|v| self.facets().iter().filter(|f| f.contains(v)).count())
            .collect();
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut out = Vec::new();
        self.extend_automorphism(0, &closing, &degree, &mut image, &mut used, &mut out);
        Ok(out)
    }

    fn extend_automorphism(
        &self,
        v: usize,
        closing: &[Vec<&Simplex>],
        degree: &[usize],
        image: &mut [usize],
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = self.num_vertices;
        if v == n {
            out.push(image.to_vec());
            return;
        }
        for target in 0..n {
            if used[target] || degree[target] != degree[v] {
                continue;
            }
            image[v] = target;
            let ok = closing[v].iter().all(|s| {
                let mut img: Vec<usize> = s.0.iter().map(|&u| image[u]).collect();
                img.sort_unstable();
                self.index_of(&img).is_some()
            });
            if ok {
                used[target] = true;
                self.extend_automorphism(v + 1, closing, degree, image, used, out);
                used[target] = false;
            }
        }
        image[v] = usize::MAX;
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::NotAutomorphism(format!(
            "permutation has length {}, expected {n}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::NotAutomorphism(format!("{perm:?} is not a permutation")));
        }
        seen[p] = true;
    }
    Ok(())
}

/// All permutations of `0..n` (Heap's algorithm).
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Facets of the `m`-cycle.
pub fn circle_facets(m: usize) -> Vec<Vec<usize>> {
    (0..m).map(|i| vec![i, (i + 1) % m]).collect()
}

/// Facets of the boundary of the `(d+1)`-simplex.
pub fn sphere_facets(d: usize) -> Vec<Vec<usize>> {
    let n = d + 2;
    (0..n).map(|skip| (0..n).filter(|&v| v != skip).collect()).collect()
}
