//! The toric code and generalized double semion (GDS) lattice models on a
//! triangulated closed manifold.
//!
//! A basis state is a spin configuration, one Z/2 label per edge. The vertex
//! operator at `v` toggles every edge at `v`; in the GDS model it also
//! carries a sign computed by counting the simplices around `v` that touch a
//! spin-1 edge.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cohomology::{cohomology_basis, coboundary_matrix, CohomologyBasis, Cochain};
use crate::error::{Error, Result};
use crate::exact::{nullity, SparseIntMatrix};
use crate::gf2::{BitVector, Nullspace, TaggedEchelon};
use crate::simplicial::SimplicialComplex;

/// Default cap on `log2` of the number of cocycles the flat oracle enumerates.
pub const DEFAULT_MAX_FLAT_BITS: usize = 20;
/// Default cap on the number of edges the full oracle accepts.
pub const DEFAULT_MAX_EDGES: usize = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    #[serde(rename = "tc")]
    ToricCode,
    Gds,
}

impl std::str::FromStr for Model {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "tc" => Ok(Model::ToricCode),
            "gds" => Ok(Model::Gds),
            other => Err(format!("unknown model {other:?}; expected tc or gds")),
        }
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Model::ToricCode => "tc",
            Model::Gds => "gds",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Fast,
    FlatOracle,
    FullOracle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroundStateReport {
    pub manifold: String,
    pub model: Model,
    pub dim: usize,
    /// Indices of the permitted flat classes; empty for the oracles, which
    /// never see classes.
    pub permitted: Vec<u64>,
    pub method: Method,
    pub elapsed_ms: f64,
}

/// One spin per edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpinConfiguration(pub BitVector);

impl SpinConfiguration {
    pub fn zeros(edges: usize) -> Self {
        Self(BitVector::zeros(edges))
    }

    pub fn bits(&self) -> &BitVector {
        &self.0
    }

    pub fn spin(&self, edge: usize) -> bool {
        self.0.get(edge)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Incidence data of a complex, precomputed for the model operators.
#[derive(Clone, Debug)]
pub struct Lattice<'k> {
    complex: &'k SimplicialComplex,
    vertex_edges: Vec<Vec<usize>>,
    /// For each vertex `v` and each simplex of `N_v`, the edges of that
    /// simplex which contain `v`.
    neighborhoods: Vec<Vec<Vec<usize>>>,
    triangle_edges: Vec<[usize; 3]>,
    component_vertices: Vec<Vec<usize>>,
}

impl<'k> Lattice<'k> {
    pub fn new(complex: &'k SimplicialComplex) -> Self {
        let nv = complex.num_vertices();
        let mut vertex_edges = vec![Vec::new(); nv];
        for (i, e) in complex.simplices(1).iter().enumerate() {
            for &v in e.vertices() {
                vertex_edges[v].push(i);
            }
        }
        let mut neighborhoods = vec![Vec::new(); nv];
        for k in 1..=complex.dim() {
            for s in complex.simplices(k) {
                let verts = s.vertices();
                for &v in verts {
                    let at_v = verts
                        .iter()
                        .filter(|&&u| u != v)
                        .map(|&u| complex.index_of(&[u.min(v), u.max(v)]).expect("closed under faces"))
                        .collect();
                    neighborhoods[v].push(at_v);
                }
            }
        }
        let triangle_edges = if complex.dim() >= 2 {
            complex
                .simplices(2)
                .iter()
                .map(|t| {
                    let e = complex.edges_of(t);
                    [e[0], e[1], e[2]]
                })
                .collect()
        } else {
            Vec::new()
        };
        let labels = complex.vertex_components();
        let count = labels.iter().max().map_or(0, |m| m + 1);
        let mut component_vertices = vec![Vec::new(); count];
        for (v, &c) in labels.iter().enumerate() {
            component_vertices[c].push(v);
        }
        Self { complex, vertex_edges, neighborhoods, triangle_edges, component_vertices }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        self.complex
    }

    pub fn num_edges(&self) -> usize {
        self.complex.count(1)
    }

    pub fn num_vertices(&self) -> usize {
        self.complex.num_vertices()
    }

    pub fn component_vertices(&self) -> &[Vec<usize>] {
        &self.component_vertices
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.num_vertices() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Sum of the spins of the three edges of triangle `f`.
    pub fn holonomy(&self, s: &SpinConfiguration, f: usize) -> bool {
        let [a, b, c] = self.triangle_edges[f];
        s.spin(a) ^ s.spin(b) ^ s.spin(c)
    }

    /// First triangle with nonzero holonomy.
    pub fn first_nonflat_triangle(&self, s: &SpinConfiguration) -> Option<usize> {
        (0..self.triangle_edges.len()).find(|&f| self.holonomy(s, f))
    }

    pub fn is_flat(&self, s: &SpinConfiguration) -> bool {
        self.first_nonflat_triangle(s).is_none()
    }

    fn require_flat(&self, s: &SpinConfiguration) -> Result<()> {
        match self.first_nonflat_triangle(s) {
            None => Ok(()),
            Some(f) => Err(Error::NotFlat(self.complex.simplices(2)[f].vertices().to_vec())),
        }
    }

    /// `s + δ(1_v)`: toggles every edge at `v`.
    pub fn vertex_flip(&self, s: &SpinConfiguration, v: usize) -> SpinConfiguration {
        let mut out = s.clone();
        for &e in &self.vertex_edges[v] {
            out.0.flip(e);
        }
        out
    }

    /// `δ(1_v)` as a spin configuration.
    pub fn gauge_generator(&self, v: usize) -> SpinConfiguration {
        self.vertex_flip(&SpinConfiguration::zeros(self.num_edges()), v)
    }

    /// The GDS sign `(-1)^{1 + #Z_v}`, where `Z_v` collects the simplices
    /// containing `v` that have a spin-1 edge at `v`. The complementary count
    /// of simplices whose edges at `v` all carry spin 0 must give the same
    /// sign.
    ///
    /// Only edges at `v` enter, as they are the edges in the 0-clopen star
    /// of `v`. On flat configurations this is the same as testing every edge
    /// of the simplex, since the spin of the opposite edge is determined by
    /// the two at `v`.
    pub fn gds_sign(&self, s: &SpinConfiguration, v: usize) -> Result<i8> {
        self.check_vertex(v)?;
        let mut z = 0usize;
        let mut w = 0usize;
        for edges in &self.neighborhoods[v] {
            if edges.iter().any(|&e| s.spin(e)) {
                z += 1;
            } else {
                w += 1;
            }
        }
        if z % 2 != w % 2 {
            return Err(Error::InternalSignMismatch { vertex: v });
        }
        Ok(if z % 2 == 0 { -1 } else { 1 })
    }

    fn model_sign(&self, model: Model, s: &SpinConfiguration, v: usize) -> Result<i8> {
        match model {
            Model::ToricCode => Ok(1),
            Model::Gds => self.gds_sign(s, v),
        }
    }

    /// `Π_i σ(v_i, s_{i-1})` with `s_i` the result of flipping `v_1..v_i`.
    pub fn sigma_loop(&self, s: &SpinConfiguration, vertices: &[usize]) -> Result<i8> {
        self.require_flat(s)?;
        let mut state = s.clone();
        let mut sign = 1i8;
        for &v in vertices {
            sign *= self.gds_sign(&state, v)?;
            state = self.vertex_flip(&state, v);
        }
        Ok(sign)
    }

    /// One sign per connected component: the loop over that component's
    /// vertices in increasing order.
    pub fn character(&self, s: &SpinConfiguration) -> Result<Vec<i8>> {
        self.require_flat(s)?;
        self.component_vertices.iter().map(|vs| self.sigma_loop(s, vs)).collect()
    }

    /// Same as [`Lattice::character`] for an arbitrary model.
    pub fn model_character(&self, model: Model, s: &SpinConfiguration) -> Result<Vec<i8>> {
        match model {
            Model::ToricCode => {
                self.require_flat(s)?;
                Ok(vec![1; self.component_vertices.len()])
            }
            Model::Gds => self.character(s),
        }
    }

    /// Image of `s` under a vertex permutation: the spin of `perm(e)` is the spin of `e`.
    pub fn push_forward(&self, perm: &[usize], s: &SpinConfiguration) -> Result<SpinConfiguration> {
        if !self.complex.is_automorphism(perm) {
            return Err(Error::NotAutomorphism(format!("{perm:?}")));
        }
        let mut out = SpinConfiguration::zeros(self.num_edges());
        for (i, e) in self.complex.simplices(1).iter().enumerate() {
            if s.spin(i) {
                let v = e.vertices();
                let (a, b) = (perm[v[0]], perm[v[1]]);
                let j = self.complex.index_of(&[a.min(b), a.max(b)]).expect("automorphism maps edges to edges");
                out.0.set(j, true);
            }
        }
        Ok(out)
    }
}

/// One flat representative per class of `H^1`, with the gauge group data.
#[derive(Clone, Debug)]
pub struct FlatClassSet {
    basis: CohomologyBasis,
    gauge: TaggedEchelon,
    coboundary_basis: Vec<SpinConfiguration>,
    representatives: Vec<SpinConfiguration>,
}

/// Largest `b_1` for which classes are enumerated.
pub const MAX_CLASS_BITS: usize = 24;

impl FlatClassSet {
    /// Representatives are the lexicographically least cocycles (edge 0
    /// most significant, 0 before 1) of their classes. Class `i` is the one
    /// whose coordinates in the `H^1` basis are the bits of `i`.
    pub fn new(complex: &SimplicialComplex) -> Result<Self> {
        let basis = cohomology_basis(complex, 1)?;
        if basis.rank() > MAX_CLASS_BITS {
            return Err(Error::TooLarge(format!("b1 = {} exceeds {MAX_CLASS_BITS}", basis.rank())));
        }
        let lattice = Lattice::new(complex);
        let coboundary_basis: Vec<SpinConfiguration> =
            (0..complex.num_vertices()).map(|v| lattice.gauge_generator(v)).collect();
        let mut gauge = TaggedEchelon::new(complex.count(1), 0);
        for g in &coboundary_basis {
            gauge.insert(&g.0, BitVector::zeros(0));
        }
        let mut set = Self { basis, gauge, coboundary_basis, representatives: Vec::new() };
        set.representatives = (0..1u64 << set.basis.rank())
            .map(|i| {
                let coords = BitVector::from_u64(set.basis.rank(), i);
                let z = set.basis.combine(complex, &coords);
                set.canonical(&SpinConfiguration(z.into_values()))
            })
            .collect();
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn b1(&self) -> usize {
        self.basis.rank()
    }

    pub fn representatives(&self) -> &[SpinConfiguration] {
        &self.representatives
    }

    pub fn representative(&self, index: u64) -> &SpinConfiguration {
        &self.representatives[index as usize]
    }

    /// The vertex-flip generators `δ(1_v)`, one per vertex.
    pub fn coboundary_basis(&self) -> &[SpinConfiguration] {
        &self.coboundary_basis
    }

    pub fn h1_basis(&self) -> &CohomologyBasis {
        &self.basis
    }

    /// Least element of the gauge orbit of `s`.
    pub fn canonical(&self, s: &SpinConfiguration) -> SpinConfiguration {
        SpinConfiguration(self.gauge.reduce(&s.0).0)
    }

    /// Index of the class of a flat configuration.
    pub fn class_index(&self, s: &SpinConfiguration) -> Result<u64> {
        let coords = self.basis.coordinates(&Cochain::from_values(1, s.0.clone()))?;
        Ok(coords.to_u64())
    }
}

pub fn flat_classes(complex: &SimplicialComplex) -> Result<FlatClassSet> {
    FlatClassSet::new(complex)
}

/// Characters of every flat class, in class-index order.
pub fn character_table(complex: &SimplicialComplex, model: Model) -> Result<Vec<Vec<i8>>> {
    let classes = FlatClassSet::new(complex)?;
    let lattice = Lattice::new(complex);
    classes
        .representatives()
        .par_iter()
        .map(|rep| lattice.model_character(model, rep))
        .collect()
}

/// Ground-state dimension from the flat classes and their characters.
pub fn ground_dim(name: &str, complex: &SimplicialComplex, model: Model) -> Result<GroundStateReport> {
    let start = Instant::now();
    let table = character_table(complex, model)?;
    let permitted: Vec<u64> = table
        .iter()
        .enumerate()
        .filter(|(_, chi)| chi.iter().all(|&x| x == 1))
        .map(|(i, _)| i as u64)
        .collect();
    Ok(GroundStateReport {
        manifold: name.to_string(),
        model,
        dim: permitted.len(),
        permitted,
        method: Method::Fast,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// A signed permutation operator: `(Uψ)(s) = sign[s] · ψ(target[s])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    pub target: Vec<usize>,
    pub sign: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        Self { target: (0..n).collect(), sign: vec![1; n] }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        let target = self.target.iter().map(|&t| other.target[t]).collect();
        let sign = (0..self.target.len())
            .map(|s| self.sign[s] * other.sign[self.target[s]])
            .collect();
        SignedPermutation { target, sign }
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self) == Self::identity(self.target.len())
    }

    pub fn commutes_with(&self, other: &SignedPermutation) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// Adds `scale · self` into `m`.
    fn accumulate(&self, m: &mut SparseIntMatrix, scale: i64) {
        for (s, (&t, &sg)) in self.target.iter().zip(&self.sign).enumerate() {
            m.add(s, t, scale * sg as i64);
        }
    }
}

/// The space of all cocycles, indexed by their coordinates in a kernel basis.
pub struct FlatSpace<'a, 'k> {
    lattice: &'a Lattice<'k>,
    cocycles: Nullspace,
}

impl<'a, 'k> FlatSpace<'a, 'k> {
    pub fn new(lattice: &'a Lattice<'k>, max_bits: usize) -> Result<Self> {
        let cocycles = coboundary_matrix(lattice.complex(), 1).nullspace();
        if cocycles.dim() > max_bits {
            return Err(Error::TooLarge(format!(
                "2^{} cocycles exceeds the flat-oracle limit 2^{max_bits}",
                cocycles.dim()
            )));
        }
        Ok(Self { lattice, cocycles })
    }

    pub fn len(&self) -> usize {
        1 << self.cocycles.dim()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn state(&self, index: usize) -> SpinConfiguration {
        SpinConfiguration(self.cocycles.combine(&BitVector::from_u64(self.cocycles.dim(), index as u64)))
    }

    pub fn index(&self, s: &SpinConfiguration) -> usize {
        self.cocycles.coordinates(&s.0).to_u64() as usize
    }

    /// `U_v` (or `A_v` for the toric code) restricted to flat configurations.
    pub fn vertex_operator(&self, model: Model, v: usize) -> Result<SignedPermutation> {
        let n = self.len();
        let mut op = SignedPermutation { target: vec![0; n], sign: vec![1; n] };
        for i in 0..n {
            let s = self.state(i);
            op.target[i] = self.index(&self.lattice.vertex_flip(&s, v));
            op.sign[i] = self.lattice.model_sign(model, &s, v)?;
        }
        Ok(op)
    }
}

/// The space of all spin configurations, state `i` having the bits of `i`.
pub struct FullSpace<'a, 'k> {
    lattice: &'a Lattice<'k>,
}

impl<'a, 'k> FullSpace<'a, 'k> {
    pub fn new(lattice: &'a Lattice<'k>, max_edges: usize) -> Result<Self> {
        if lattice.num_edges() > max_edges {
            return Err(Error::TooLarge(format!(
                "{} edges exceeds the full-oracle limit {max_edges}",
                lattice.num_edges()
            )));
        }
        Ok(Self { lattice })
    }

    pub fn len(&self) -> usize {
        1 << self.lattice.num_edges()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn state(&self, index: usize) -> SpinConfiguration {
        SpinConfiguration(BitVector::from_u64(self.lattice.num_edges(), index as u64))
    }

    pub fn vertex_operator(&self, model: Model, v: usize) -> Result<SignedPermutation> {
        let n = self.len();
        let mask = self.lattice.gauge_generator(v).0.to_u64() as usize;
        let mut op = SignedPermutation { target: vec![0; n], sign: vec![1; n] };
        for i in 0..n {
            op.target[i] = i ^ mask;
            op.sign[i] = self.lattice.model_sign(model, &self.state(i), v)?;
        }
        Ok(op)
    }

    /// `B_f`, diagonal with entries `(-1)^{hol_f}`.
    pub fn face_operator(&self, f: usize) -> SignedPermutation {
        let n = self.len();
        let sign = (0..n).map(|i| if self.lattice.holonomy(&self.state(i), f) { -1 } else { 1 }).collect();
        SignedPermutation { target: (0..n).collect(), sign }
    }
}

fn report(name: &str, model: Model, dim: usize, method: Method, start: Instant) -> GroundStateReport {
    GroundStateReport {
        manifold: name.to_string(),
        model,
        dim,
        permitted: Vec::new(),
        method,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Nullity of `Σ_v (1 - U_v)` on the function space of all cocycles.
pub fn flat_oracle_ground_dim(
    name: &str,
    complex: &SimplicialComplex,
    model: Model,
    max_bits: usize,
) -> Result<GroundStateReport> {
    let start = Instant::now();
    let lattice = Lattice::new(complex);
    let space = FlatSpace::new(&lattice, max_bits)?;
    let mut m = SparseIntMatrix::zeros(space.len());
    for v in 0..lattice.num_vertices() {
        for i in 0..space.len() {
            m.add(i, i, 1);
        }
        space.vertex_operator(model, v)?.accumulate(&mut m, -1);
    }
    let dim = nullity(&m)?;
    Ok(report(name, model, dim, Method::FlatOracle, start))
}

/// Nullity of `2H = Σ_v (1 - U_v) + Σ_f (1 - B_f)` on all spin configurations.
pub fn full_oracle_ground_dim(
    name: &str,
    complex: &SimplicialComplex,
    model: Model,
    max_edges: usize,
) -> Result<GroundStateReport> {
    let start = Instant::now();
    let lattice = Lattice::new(complex);
    let space = FullSpace::new(&lattice, max_edges)?;
    let n = space.len();
    let mut m = SparseIntMatrix::zeros(n);
    for v in 0..lattice.num_vertices() {
        for i in 0..n {
            m.add(i, i, 1);
        }
        space.vertex_operator(model, v)?.accumulate(&mut m, -1);
    }
    let faces = if complex.dim() >= 2 { complex.count(2) } else { 0 };
    for f in 0..faces {
        for i in 0..n {
            m.add(i, i, 1);
        }
        space.face_operator(f).accumulate(&mut m, -1);
    }
    let dim = nullity(&m)?;
    Ok(report(name, model, dim, Method::FullOracle, start))
}

/// Index of the class of `perm · rep`.
pub fn automorphism_action(
    complex: &SimplicialComplex,
    classes: &FlatClassSet,
    perm: &[usize],
    rep: &SpinConfiguration,
) -> Result<u64> {
    let lattice = Lattice::new(complex);
    lattice.require_flat(rep)?;
    let image = lattice.push_forward(perm, rep)?;
    classes.class_index(&image)
}
