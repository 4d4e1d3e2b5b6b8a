//! Simplicial cochains with Z/2 coefficients, their cohomology, and the
//! cohomology ring of a closed manifold together with its Steenrod squares.
//!
//! Cup products use the Alexander-Whitney front/back faces with respect to
//! the global vertex order. Steenrod squares use Steenrod's cup-i products,
//! `Sq^i x = x ⌣_{k-i} x` for `x` of degree `k`.

use crate::error::{Error, Result};
use crate::gf2::{BitVector, Gf2Matrix, TaggedEchelon};
use crate::simplicial::SimplicialComplex;

/// A simplicial `k`-cochain with Z/2 coefficients, stored as the indicator
/// of its support among the `k`-simplices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    values: BitVector,
}

impl Cochain {
    pub fn zero(k: &SimplicialComplex, degree: usize) -> Self {
        Self { degree, values: BitVector::zeros(k.count(degree)) }
    }

    /// The constant function 1 on vertices.
    pub fn unit(k: &SimplicialComplex) -> Self {
        let mut values = BitVector::zeros(k.num_vertices());
        for v in 0..k.num_vertices() {
            values.set(v, true);
        }
        Self { degree: 0, values }
    }

    pub fn from_values(degree: usize, values: BitVector) -> Self {
        Self { degree, values }
    }

    pub fn from_support(
        k: &SimplicialComplex,
        degree: usize,
        support: impl IntoIterator<Item = usize>,
    ) -> Self {
        Self { degree, values: BitVector::from_support(k.count(degree), support) }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &BitVector {
        &self.values
    }

    pub fn into_values(self) -> BitVector {
        self.values
    }

    pub fn get(&self, simplex: usize) -> bool {
        self.values.get(simplex)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.ones()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_zero()
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree, "adding cochains of different degree");
        Cochain { degree: self.degree, values: self.values.xor(&other.values) }
    }
}

/// `∂_k`, with rows indexed by `(k-1)`-simplices and columns by `k`-simplices.
pub fn boundary_matrix(k: &SimplicialComplex, degree: usize) -> Result<Gf2Matrix> {
    if degree == 0 || degree > k.dim() {
        return Err(Error::BadDegree { degree, allowed: format!("1..={}", k.dim()) });
    }
    let mut m = Gf2Matrix::zeros(k.count(degree - 1), k.count(degree));
    for (j, s) in k.simplices(degree).iter().enumerate() {
        for face in s.boundary_faces() {
            m.set(k.index_of(face.vertices()).unwrap(), j, true);
        }
    }
    Ok(m)
}

/// `δ_k : C^k → C^{k+1}`; the zero map with no rows in the top degree.
pub fn coboundary_matrix(k: &SimplicialComplex, degree: usize) -> Gf2Matrix {
    if degree >= k.dim() {
        return Gf2Matrix::zeros(0, k.count(degree));
    }
    boundary_matrix(k, degree + 1).expect("degree checked").transpose()
}

pub fn coboundary(k: &SimplicialComplex, x: &Cochain) -> Cochain {
    let d = x.degree;
    let mut out = BitVector::zeros(k.count(d + 1));
    for (j, s) in k.simplices(d + 1).iter().enumerate() {
        let hits = s
            .boundary_faces()
            .filter(|f| x.values.get(k.index_of(f.vertices()).unwrap()))
            .count();
        if hits % 2 == 1 {
            out.set(j, true);
        }
    }
    Cochain { degree: d + 1, values: out }
}

pub fn is_cocycle(k: &SimplicialComplex, x: &Cochain) -> bool {
    x.degree >= k.dim() || coboundary(k, x).is_zero()
}

/// Alexander-Whitney cup product. Degrees above `dim K` give the zero cochain
/// in that degree.
pub fn cup(k: &SimplicialComplex, x: &Cochain, y: &Cochain) -> Cochain {
    cup_i(k, 0, x, y)
}

/// Steenrod's cup-i product. On an `n`-simplex `(s_0..s_n)` with
/// `n = p + q - i`, it sums over `u_0 < … < u_i` the product of `x` on the
/// even-numbered intervals of `[0,u_0],[u_0,u_1],…,[u_i,n]` and `y` on the
/// odd-numbered ones.
pub fn cup_i(k: &SimplicialComplex, i: usize, x: &Cochain, y: &Cochain) -> Cochain {
    let (p, q) = (x.degree, y.degree);
    let Some(n) = (p + q).checked_sub(i) else {
        return Cochain { degree: 0, values: BitVector::zeros(k.count(0)) };
    };
    let mut out = BitVector::zeros(k.count(n));
    if n > k.dim() || i > n {
        return Cochain { degree: n, values: out };
    }
    let splits = interval_splits(n, i, p, q);
    let mut front = Vec::with_capacity(p + 1);
    let mut back = Vec::with_capacity(q + 1);
    for (idx, s) in k.simplices(n).iter().enumerate() {
        let verts = s.vertices();
        let mut acc = false;
        for (f_pos, b_pos) in &splits {
            front.clear();
            back.clear();
            front.extend(f_pos.iter().map(|&t| verts[t]));
            back.extend(b_pos.iter().map(|&t| verts[t]));
            let fx = x.values.get(k.index_of(&front).unwrap());
            if fx && y.values.get(k.index_of(&back).unwrap()) {
                acc = !acc;
            }
        }
        if acc {
            out.set(idx, true);
        }
    }
    Cochain { degree: n, values: out }
}

/// Position lists (front, back) for every admissible cut `u_0 < … < u_i` of
/// `[0, n]` whose front has `p + 1` and back has `q + 1` vertices.
fn interval_splits(n: usize, i: usize, p: usize, q: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    let mut cut = Vec::with_capacity(i + 1);
    fn rec(
        start: usize,
        n: usize,
        need: usize,
        cut: &mut Vec<usize>,
        p: usize,
        q: usize,
        out: &mut Vec<(Vec<usize>, Vec<usize>)>,
    ) {
        if cut.len() == need {
            let mut bounds = Vec::with_capacity(need + 2);
            bounds.push(0);
            bounds.extend(cut.iter().copied());
            bounds.push(n);
            let (mut front, mut back) = (Vec::new(), Vec::new());
            for (j, w) in bounds.windows(2).enumerate() {
                let target = if j % 2 == 0 { &mut front } else { &mut back };
                for t in w[0]..=w[1] {
                    if target.last() != Some(&t) {
                        target.push(t);
                    }
                }
            }
            if front.len() == p + 1 && back.len() == q + 1 {
                out.push((front, back));
            }
            return;
        }
        for u in start..=n {
            cut.push(u);
            rec(u + 1, n, need, cut, p, q, out);
            cut.pop();
        }
    }
    rec(0, n, i + 1, &mut cut, p, q, &mut out);
    out
}

/// `Sq^i x` for a cocycle `x`.
pub fn steenrod_square(k: &SimplicialComplex, i: usize, x: &Cochain) -> Result<Cochain> {
    if !is_cocycle(k, x) {
        return Err(Error::NotACocycle(x.degree));
    }
    let deg = x.degree;
    if i > deg {
        return Ok(Cochain { degree: deg + i, values: BitVector::zeros(k.count(deg + i)) });
    }
    Ok(cup_i(k, deg - i, x, x))
}

/// Evaluation of a top-degree cochain on the mod 2 fundamental class (the
/// sum of all facets).
pub fn fundamental_pairing(k: &SimplicialComplex, x: &Cochain) -> Result<bool> {
    if x.degree != k.dim() {
        return Err(Error::BadDegree { degree: x.degree, allowed: format!("{{{}}}", k.dim()) });
    }
    Ok(x.values.parity())
}

/// A basis of `H^k(K; Z/2)` by cocycle representatives, together with the
/// projection of cocycles onto coordinates in that basis.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    degree: usize,
    representatives: Vec<Cochain>,
    echelon: TaggedEchelon,
}

impl CohomologyBasis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Cochain] {
        &self.representatives
    }

    /// Coordinates of the class of the cocycle `x`; coboundaries map to zero.
    pub fn coordinates(&self, x: &Cochain) -> Result<BitVector> {
        if x.degree != self.degree {
            return Err(Error::BadDegree { degree: x.degree, allowed: format!("{{{}}}", self.degree) });
        }
        let (residue, tag) = self.echelon.reduce(&x.values);
        if !residue.is_zero() {
            return Err(Error::NotACocycle(x.degree));
        }
        Ok(tag)
    }

    /// The cocycle `Σ c_i rep_i`.
    pub fn combine(&self, k: &SimplicialComplex, coords: &BitVector) -> Cochain {
        let mut out = Cochain::zero(k, self.degree);
        for i in coords.ones() {
            out = out.add(&self.representatives[i]);
        }
        out
    }
}

/// Basis of `H^k`. In degree zero the representatives are the component
/// indicators in order of each component's smallest vertex; otherwise they
/// are cocycles from the reduced kernel basis of `δ_k`, earliest pivot
/// columns first, skipping those already in the span of coboundaries.
pub fn cohomology_basis(k: &SimplicialComplex, degree: usize) -> Result<CohomologyBasis> {
    if degree > k.dim() {
        return Err(Error::BadDegree { degree, allowed: format!("0..={}", k.dim()) });
    }
    let n = k.count(degree);
    if degree == 0 {
        let comp = k.vertex_components();
        let count = comp.iter().max().map_or(0, |m| m + 1);
        let mut echelon = TaggedEchelon::new(n, count);
        let mut reps = Vec::with_capacity(count);
        for c in 0..count {
            let ind = BitVector::from_support(n, (0..n).filter(|&v| comp[v] == c));
            echelon.insert(&ind, BitVector::unit(count, c));
            reps.push(Cochain { degree: 0, values: ind });
        }
        return Ok(CohomologyBasis { degree, representatives: reps, echelon });
    }
    let cocycles = coboundary_matrix(k, degree).nullspace();
    let d_prev = boundary_matrix(k, degree)?;
    let rank_b = d_prev.rank();
    let betti = cocycles.dim() - rank_b;
    let mut echelon = TaggedEchelon::new(n, betti);
    for row in d_prev.row_vectors() {
        echelon.insert(row, BitVector::zeros(betti));
    }
    let mut reps = Vec::with_capacity(betti);
    for z in &cocycles.basis {
        if reps.len() == betti {
            break;
        }
        if echelon.insert(z, BitVector::unit(betti, reps.len())) {
            reps.push(Cochain { degree, values: z.clone() });
        }
    }
    assert_eq!(reps.len(), betti, "cocycles must span H^{degree}");
    Ok(CohomologyBasis { degree, representatives: reps, echelon })
}

/// Z/2 Betti numbers `b_0..b_dim`.
pub fn betti_numbers(k: &SimplicialComplex) -> Vec<usize> {
    let ranks: Vec<usize> =
        (1..=k.dim()).map(|d| boundary_matrix(k, d).expect("in range").rank()).collect();
    (0..=k.dim())
        .map(|d| {
            let incoming = if d == 0 { 0 } else { ranks[d - 1] };
            let outgoing = if d == k.dim() { 0 } else { ranks[d] };
            k.count(d) - incoming - outgoing
        })
        .collect()
}

/// An element of `H^*(K; Z/2)`, one coordinate vector per degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohomologyClass {
    parts: Vec<BitVector>,
}

impl CohomologyClass {
    pub fn part(&self, degree: usize) -> &BitVector {
        &self.parts[degree]
    }

    pub fn parts(&self) -> &[BitVector] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(BitVector::is_zero)
    }

    /// Whether all nonzero parts sit in `degree`.
    pub fn is_homogeneous_of(&self, degree: usize) -> bool {
        self.parts.iter().enumerate().all(|(d, p)| d == degree || p.is_zero())
    }

    pub fn add(&self, other: &CohomologyClass) -> CohomologyClass {
        CohomologyClass {
            parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a.xor(b)).collect(),
        }
    }
}

/// The cohomology ring of a closed manifold: per-degree bases, cup structure
/// constants, Steenrod square matrices and the fundamental-class pairing.
#[derive(Clone, Debug)]
pub struct CohomologyRing {
    dim: usize,
    bases: Vec<CohomologyBasis>,
    /// `cup[p][q][a][b]` = coordinates of `e_a ⌣ e_b` in `H^{p+q}`.
    cup: Vec<Vec<Vec<Vec<BitVector>>>>,
    /// `sq[k][i]`: matrix of `Sq^i : H^k → H^{k+i}` acting on coordinate columns.
    sq: Vec<Vec<Gf2Matrix>>,
    pairing: BitVector,
    euler_characteristic: i64,
}

impl CohomologyRing {
    /// Assembles the ring and checks its structural invariants: Poincaré
    /// duality, graded commutativity and associativity on basis elements, and
    /// the Steenrod square axioms that hold at the level of classes.
    pub fn new(k: &SimplicialComplex) -> Result<Self> {
        let d = k.dim();
        let bases: Vec<CohomologyBasis> =
            (0..=d).map(|deg| cohomology_basis(k, deg)).collect::<Result<_>>()?;

        let mut cup = vec![Vec::new(); d + 1];
        for p in 0..=d {
            for q in 0..=d - p {
                let table: Vec<Vec<BitVector>> = bases[p]
                    .representatives
                    .iter()
                    .map(|x| {
                        bases[q]
                            .representatives
                            .iter()
                            .map(|y| bases[p + q].coordinates(&cup_i(k, 0, x, y)))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<_>>()?;
                cup[p].push(table);
            }
        }

        let mut sq = Vec::with_capacity(d + 1);
        for deg in 0..=d {
            let mut per_i = Vec::new();
            for i in 0..=d - deg {
                let cols: Vec<BitVector> = bases[deg]
                    .representatives
                    .iter()
                    .map(|x| bases[deg + i].coordinates(&steenrod_square(k, i, x)?))
                    .collect::<Result<_>>()?;
                per_i.push(Gf2Matrix::from_columns(bases[deg + i].rank(), &cols));
            }
            sq.push(per_i);
        }

        let pairing = BitVector::from_bools(
            &bases[d]
                .representatives
                .iter()
                .map(|x| x.values.parity())
                .collect::<Vec<_>>(),
        );

        let ring = Self { dim: d, bases, cup, sq, pairing, euler_characteristic: k.euler_characteristic() };
        ring.verify()?;
        Ok(ring)
    }

    fn verify(&self) -> Result<()> {
        let d = self.dim;
        for deg in 0..=d {
            if self.poincare_matrix(deg).rank() != self.rank(deg)
                || self.rank(deg) != self.rank(d - deg)
            {
                return Err(Error::PairingDegenerate { degree: deg, complement: d - deg });
            }
        }
        for p in 0..=d {
            for q in 0..=d - p {
                for a in 0..self.rank(p) {
                    for b in 0..self.rank(q) {
                        assert_eq!(
                            self.cup[p][q][a][b], self.cup[q][p][b][a],
                            "cup product is not commutative on H^{p} x H^{q}"
                        );
                    }
                }
            }
        }
        for p in 0..=d {
            for q in 0..=d - p {
                for r in 0..=d - p - q {
                    for a in 0..self.rank(p) {
                        for b in 0..self.rank(q) {
                            for c in 0..self.rank(r) {
                                let (x, y, z) =
                                    (self.basis_class(p, a), self.basis_class(q, b), self.basis_class(r, c));
                                assert_eq!(
                                    self.mul(&self.mul(&x, &y), &z),
                                    self.mul(&x, &self.mul(&y, &z)),
                                    "cup product is not associative"
                                );
                            }
                        }
                    }
                }
            }
        }
        for deg in 0..=d {
            assert_eq!(self.sq[deg][0], Gf2Matrix::identity(self.rank(deg)), "Sq^0 != id on H^{deg}");
            if 2 * deg <= d {
                for a in 0..self.rank(deg) {
                    let x = self.basis_class(deg, a);
                    assert_eq!(self.sq(deg, &x), self.mul(&x, &x), "Sq^{deg} != cup square");
                }
            }
        }
        Ok(())
    }

    fn poincare_matrix(&self, deg: usize) -> Gf2Matrix {
        let d = self.dim;
        let mut m = Gf2Matrix::zeros(self.rank(deg), self.rank(d - deg));
        for a in 0..self.rank(deg) {
            for b in 0..self.rank(d - deg) {
                m.set(a, b, self.cup[deg][d - deg][a][b].dot(&self.pairing));
            }
        }
        m
    }

    /// Matrix of `⟨e_a ⌣ f_b, [M]⟩` for bases of `H^deg` and `H^{dim-deg}`.
    pub fn pairing_matrix(&self, deg: usize) -> Gf2Matrix {
        self.poincare_matrix(deg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self, degree: usize) -> usize {
        self.bases.get(degree).map_or(0, CohomologyBasis::rank)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        (0..=self.dim).map(|k| self.rank(k)).collect()
    }

    pub fn basis(&self, degree: usize) -> &CohomologyBasis {
        &self.bases[degree]
    }

    pub fn num_components(&self) -> usize {
        self.rank(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.euler_characteristic
    }

    pub fn pairing_vector(&self) -> &BitVector {
        &self.pairing
    }

    pub fn zero(&self) -> CohomologyClass {
        CohomologyClass { parts: (0..=self.dim).map(|k| BitVector::zeros(self.rank(k))).collect() }
    }

    pub fn one(&self) -> CohomologyClass {
        let mut c = self.zero();
        for i in 0..self.rank(0) {
            c.parts[0].set(i, true);
        }
        c
    }

    /// The homogeneous class with the given coordinates in degree `degree`.
    pub fn class(&self, degree: usize, coords: BitVector) -> CohomologyClass {
        assert_eq!(coords.len(), self.rank(degree), "coordinate length mismatch");
        let mut c = self.zero();
        c.parts[degree] = coords;
        c
    }

    pub fn basis_class(&self, degree: usize, index: usize) -> CohomologyClass {
        self.class(degree, BitVector::unit(self.rank(degree), index))
    }

    /// All classes of `H^degree`, the `i`-th having coordinate bits of `i`.
    pub fn enumerate(&self, degree: usize) -> Vec<CohomologyClass> {
        let r = self.rank(degree);
        assert!(r < 32, "H^{degree} too large to enumerate");
        (0..1u64 << r).map(|bits| self.class(degree, BitVector::from_u64(r, bits))).collect()
    }

    /// Class of a cocycle, via the coordinate map of its degree.
    pub fn class_of(&self, x: &Cochain) -> Result<CohomologyClass> {
        let coords = self.bases[x.degree].coordinates(x)?;
        Ok(self.class(x.degree, coords))
    }

    pub fn mul(&self, x: &CohomologyClass, y: &CohomologyClass) -> CohomologyClass {
        let mut out = self.zero();
        for p in 0..=self.dim {
            if x.parts[p].is_zero() {
                continue;
            }
            for q in 0..=self.dim - p {
                for a in x.parts[p].ones() {
                    for b in y.parts[q].ones() {
                        out.parts[p + q].xor_assign(&self.cup[p][q][a][b]);
                    }
                }
            }
        }
        out
    }

    /// `Sq^i` applied to every homogeneous part.
    pub fn sq(&self, i: usize, x: &CohomologyClass) -> CohomologyClass {
        let mut out = self.zero();
        for deg in 0..=self.dim {
            if deg + i > self.dim || x.parts[deg].is_zero() {
                continue;
            }
            out.parts[deg + i].xor_assign(&self.sq[deg][i].mul_vec(&x.parts[deg]));
        }
        out
    }

    /// Total square `Sq = Σ_i Sq^i`.
    pub fn sq_total(&self, x: &CohomologyClass) -> CohomologyClass {
        (0..=self.dim).fold(self.zero(), |acc, i| acc.add(&self.sq(i, x)))
    }

    /// `⟨x, [M]⟩`, reading only the top-degree part.
    pub fn pair(&self, x: &CohomologyClass) -> bool {
        x.parts[self.dim].dot(&self.pairing)
    }

    /// Whether an `H^0` class is idempotent. Every `H^0` class is a union of
    /// component indicators, so this only rejects classes with nonzero
    /// higher-degree parts.
    pub fn is_idempotent(&self, t: &CohomologyClass) -> bool {
        self.mul(t, t) == *t
    }

    /// Component indicator classes in `H^0`.
    pub fn component_generators(&self) -> Vec<CohomologyClass> {
        (0..self.rank(0)).map(|i| self.basis_class(0, i)).collect()
    }
}
