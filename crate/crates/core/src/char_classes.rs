//! Wu and Stiefel-Whitney classes, Lagrangians in `H^n(BO_n × BZ/2; Z/2)`,
//! and their evaluation on manifolds and on mapping tori `S¹ × M`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cohomology::{CohomologyClass, CohomologyRing};
use crate::error::{Error, Result};

/// Largest Stiefel-Whitney index available as a Lagrangian symbol.
pub const MAX_W: usize = 9;

/// Wu classes `v_0..v_d`, each homogeneous in its own degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WuProfile {
    pub classes: Vec<CohomologyClass>,
}

/// Stiefel-Whitney classes `w_0..w_d`, each homogeneous in its own degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SWProfile {
    pub classes: Vec<CohomologyClass>,
}

impl WuProfile {
    pub fn total(&self, ring: &CohomologyRing) -> CohomologyClass {
        self.classes.iter().fold(ring.zero(), |acc, c| acc.add(c))
    }
}

impl SWProfile {
    pub fn total(&self, ring: &CohomologyRing) -> CohomologyClass {
        self.classes.iter().fold(ring.zero(), |acc, c| acc.add(c))
    }

    /// `w_i`, zero above the manifold dimension.
    pub fn w(&self, ring: &CohomologyRing, i: usize) -> CohomologyClass {
        self.classes.get(i).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn is_orientable(&self) -> bool {
        self.classes.get(1).map_or(true, CohomologyClass::is_zero)
    }
}

/// Solves `⟨v_k ⌣ x, [M]⟩ = ⟨Sq^k x, [M]⟩` for every `x ∈ H^{d-k}`.
pub fn wu_classes(ring: &CohomologyRing) -> Result<WuProfile> {
    let d = ring.dim();
    let mut classes = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let complement = d - k;
        let rhs: Vec<bool> = (0..ring.rank(complement))
            .map(|j| ring.pair(&ring.sq(k, &ring.basis_class(complement, j))))
            .collect();
        let rhs = crate::gf2::BitVector::from_bools(&rhs);
        let v = ring
            .pairing_matrix(k)
            .transpose()
            .solve(&rhs)
            .ok_or(Error::PairingDegenerate { degree: k, complement })?;
        classes.push(ring.class(k, v));
    }
    Ok(WuProfile { classes })
}

/// `w = Sq(v)`.
pub fn stiefel_whitney(ring: &CohomologyRing) -> Result<SWProfile> {
    let wu = wu_classes(ring)?;
    Ok(sw_from_wu(ring, &wu))
}

pub fn sw_from_wu(ring: &CohomologyRing, wu: &WuProfile) -> SWProfile {
    let total = ring.sq_total(&wu.total(ring));
    let classes = (0..=ring.dim())
        .map(|k| ring.class(k, total.part(k).clone()))
        .collect();
    SWProfile { classes }
}

/// `w_1^{e_1} ⋯ w_9^{e_9} α^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub w: [u32; MAX_W],
    pub alpha: u32,
}

impl Monomial {
    pub fn alpha_power(j: u32) -> Self {
        Self { w: [0; MAX_W], alpha: j }
    }

    /// `w_i α^j`, with `w_0 = 1`.
    pub fn w_alpha(i: usize, j: u32) -> Self {
        let mut m = Self::alpha_power(j);
        if i > 0 {
            m.w[i - 1] = 1;
        }
        m
    }

    pub fn degree(&self) -> usize {
        self.w.iter().enumerate().map(|(i, &e)| (i + 1) * e as usize).sum::<usize>()
            + self.alpha as usize
    }

    fn display_key(&self) -> (std::cmp::Reverse<u32>, std::cmp::Reverse<[u32; MAX_W]>) {
        (std::cmp::Reverse(self.alpha), std::cmp::Reverse(self.w))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        for (i, &e) in self.w.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("w{}", i + 1)),
                _ => factors.push(format!("w{}^{}", i + 1, e)),
            }
        }
        match self.alpha {
            0 => {}
            1 => factors.push("a".to_string()),
            j => factors.push(format!("a^{j}")),
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

/// A homogeneous GF(2) polynomial of degree `n` in `w_1..w_9` and `α`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "LagrangianRepr", try_from = "LagrangianRepr")]
pub struct Lagrangian {
    degree: usize,
    terms: BTreeSet<Monomial>,
}

#[derive(Serialize, Deserialize)]
struct LagrangianRepr {
    degree: usize,
    expression: String,
}

impl From<Lagrangian> for LagrangianRepr {
    fn from(l: Lagrangian) -> Self {
        Self { degree: l.degree, expression: l.to_string() }
    }
}

impl TryFrom<LagrangianRepr> for Lagrangian {
    type Error = Error;
    fn try_from(r: LagrangianRepr) -> Result<Self> {
        Lagrangian::parse(&r.expression, r.degree)
    }
}

impl Lagrangian {
    pub fn zero(degree: usize) -> Self {
        Self { degree, terms: BTreeSet::new() }
    }

    /// Builds from monomials, cancelling repeated ones in pairs.
    pub fn from_monomials(degree: usize, monomials: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let monomials: Vec<Monomial> = monomials.into_iter().collect();
        if let Some(first) = monomials.first() {
            if monomials.iter().any(|m| m.degree() != first.degree()) {
                return Err(Error::NotHomogeneous);
            }
            if first.degree() != degree {
                return Err(Error::DegreeMismatch { lagrangian: first.degree(), required: degree });
            }
        }
        let mut out = Self::zero(degree);
        for m in monomials {
            out.toggle(m);
        }
        Ok(out)
    }

    fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Lagrangian) -> Result<Lagrangian> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { lagrangian: other.degree, required: self.degree });
        }
        let mut out = self.clone();
        for m in &other.terms {
            out.toggle(*m);
        }
        Ok(out)
    }

    /// Whether any monomial involves `w_1`.
    pub fn mentions_w1(&self) -> bool {
        self.terms.iter().any(|m| m.w[0] > 0)
    }

    /// Parses the text form, e.g. `"a^3 + w1*a^2 + w2*a"`. Whitespace is
    /// ignored, `0` is the empty sum, and repeated monomials cancel.
    pub fn parse(text: &str, degree: usize) -> Result<Lagrangian> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::LagrangianSyntax("empty expression".into()));
        }
        if compact == "0" {
            return Ok(Self::zero(degree));
        }
        let monomials = compact.split('+').map(parse_monomial).collect::<Result<Vec<_>>>()?;
        Self::from_monomials(degree, monomials)
    }

    /// Parses and infers the degree from the monomials.
    pub fn parse_homogeneous(text: &str) -> Result<Lagrangian> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let first = compact.split('+').next().unwrap_or("");
        if compact == "0" {
            return Err(Error::LagrangianSyntax("the zero Lagrangian needs an explicit degree".into()));
        }
        let degree = parse_monomial(first)?.degree();
        Self::parse(text, degree)
    }
}

fn parse_monomial(term: &str) -> Result<Monomial> {
    if term.is_empty() {
        return Err(Error::LagrangianSyntax("empty term".into()));
    }
    let mut m = Monomial::default();
    if term == "1" {
        return Ok(m);
    }
    for factor in term.split('*') {
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => {
                let e: u32 = e
                    .parse()
                    .map_err(|_| Error::LagrangianSyntax(format!("bad exponent in {factor:?}")))?;
                (b, e)
            }
            None => (factor, 1),
        };
        if base == "a" {
            m.alpha += exp;
        } else if let Some(idx) = base.strip_prefix('w') {
            let i: usize = idx
                .parse()
                .ok()
                .filter(|i| (1..=MAX_W).contains(i) && idx.len() == 1)
                .ok_or_else(|| Error::LagrangianSyntax(format!("unknown symbol {base:?}; expected w1..w9 or a")))?;
            m.w[i - 1] += exp;
        } else {
            return Err(Error::LagrangianSyntax(format!(
                "unknown symbol {base:?}; expected w1..w9 or a"
            )));
        }
    }
    Ok(m)
}

impl fmt::Display for Lagrangian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<&Monomial> = self.terms.iter().collect();
        terms.sort_by_key(|m| m.display_key());
        let parts: Vec<String> = terms.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromStr for Lagrangian {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_homogeneous(s)
    }
}

fn check_w_range(n: usize) {
    assert!(n >= 1, "Lagrangian degree must be positive");
    assert!(n <= MAX_W + 1, "Stiefel-Whitney symbols stop at w{MAX_W}");
}

/// Degree-`n` part of `wα/(1+α)`: `Σ_{j=1..n} w_{n-j} α^j`.
pub fn gds_lagrangian(n: usize) -> Lagrangian {
    check_w_range(n);
    Lagrangian::from_monomials(n, (1..=n).map(|j| Monomial::w_alpha(n - j, j as u32)))
        .expect("homogeneous by construction")
}

/// `α^n`.
pub fn dw_lagrangian(n: usize) -> Lagrangian {
    Lagrangian::from_monomials(n, [Monomial::alpha_power(n as u32)]).expect("homogeneous")
}

pub fn zero_lagrangian(n: usize) -> Lagrangian {
    Lagrangian::zero(n)
}

/// Degree-`n` part of `wα/(1+α²)`: `Σ_{j odd} w_{n-j} α^j`.
pub fn beta2_lagrangian(n: usize) -> Lagrangian {
    check_w_range(n);
    Lagrangian::from_monomials(
        n,
        (1..=n).filter(|j| j % 2 == 1).map(|j| Monomial::w_alpha(n - j, j as u32)),
    )
    .expect("homogeneous by construction")
}

/// Substitutes `α ↦ α + w_1` in every monomial.
pub fn orientation_twist(beta: &Lagrangian) -> Lagrangian {
    let mut out = Lagrangian::zero(beta.degree);
    for m in &beta.terms {
        let j = m.alpha;
        for k in 0..=j {
            // C(j, k) is odd iff the bits of k are a subset of those of j.
            if k & j == k {
                let mut t = *m;
                t.alpha = k;
                t.w[0] += j - k;
                out.toggle(t);
            }
        }
    }
    out
}

/// The operations a ring needs for Lagrangians to be evaluated in it.
pub trait Algebra {
    type Elem: Clone + PartialEq;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    fn pow(&self, x: &Self::Elem, e: u32) -> Self::Elem {
        let mut out = self.one();
        for _ in 0..e {
            out = self.mul(&out, x);
        }
        out
    }
}

impl Algebra for CohomologyRing {
    type Elem = CohomologyClass;
    fn zero(&self) -> CohomologyClass {
        CohomologyRing::zero(self)
    }
    fn one(&self) -> CohomologyClass {
        CohomologyRing::one(self)
    }
    fn add(&self, x: &CohomologyClass, y: &CohomologyClass) -> CohomologyClass {
        x.add(y)
    }
    fn mul(&self, x: &CohomologyClass, y: &CohomologyClass) -> CohomologyClass {
        CohomologyRing::mul(self, x, y)
    }
}

/// Substitutes `w_i ↦ w[i]` (index 0 unused) and `α ↦ alpha`, then sums.
pub fn substitute<A: Algebra>(algebra: &A, beta: &Lagrangian, w: &[A::Elem], alpha: &A::Elem) -> A::Elem {
    let max_alpha = beta.terms.iter().map(|m| m.alpha).max().unwrap_or(0);
    let mut alpha_pows = vec![algebra.one()];
    for _ in 0..max_alpha {
        let next = algebra.mul(alpha_pows.last().unwrap(), alpha);
        alpha_pows.push(next);
    }
    let mut out = algebra.zero();
    for m in &beta.terms {
        let mut term = alpha_pows[m.alpha as usize].clone();
        for (i, &e) in m.w.iter().enumerate() {
            if e > 0 {
                let wi = w.get(i + 1).cloned().unwrap_or_else(|| algebra.zero());
                term = algebra.mul(&term, &algebra.pow(&wi, e));
            }
        }
        out = algebra.add(&out, &term);
    }
    out
}

/// `H^*(M)[x]/(x²)` with `x` of degree one, the cohomology of `S¹ × M`.
/// An element `(u, u')` stands for `u + x·u'`.
pub struct MappingTorusRing<'r> {
    ring: &'r CohomologyRing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingTorusClass {
    pub base: CohomologyClass,
    pub fiber: CohomologyClass,
}

impl<'r> MappingTorusRing<'r> {
    pub fn new(ring: &'r CohomologyRing) -> Self {
        Self { ring }
    }

    /// `u + x·u'`.
    pub fn element(&self, base: CohomologyClass, fiber: CohomologyClass) -> MappingTorusClass {
        MappingTorusClass { base, fiber }
    }

    /// Pullback of a class of `M` along the projection `S¹ × M → M`.
    pub fn pullback(&self, u: &CohomologyClass) -> MappingTorusClass {
        MappingTorusClass { base: u.clone(), fiber: self.ring.zero() }
    }

    /// `⟨(u, u'), [S¹ × M]⟩ = ⟨u', [M]⟩`.
    pub fn pair(&self, x: &MappingTorusClass) -> bool {
        self.ring.pair(&x.fiber)
    }
}

impl Algebra for MappingTorusRing<'_> {
    type Elem = MappingTorusClass;
    fn zero(&self) -> MappingTorusClass {
        MappingTorusClass { base: self.ring.zero(), fiber: self.ring.zero() }
    }
    fn one(&self) -> MappingTorusClass {
        MappingTorusClass { base: self.ring.one(), fiber: self.ring.zero() }
    }
    fn add(&self, x: &MappingTorusClass, y: &MappingTorusClass) -> MappingTorusClass {
        MappingTorusClass { base: x.base.add(&y.base), fiber: x.fiber.add(&y.fiber) }
    }
    fn mul(&self, x: &MappingTorusClass, y: &MappingTorusClass) -> MappingTorusClass {
        MappingTorusClass {
            base: self.ring.mul(&x.base, &y.base),
            fiber: self.ring.mul(&x.base, &y.fiber).add(&self.ring.mul(&x.fiber, &y.base)),
        }
    }
}

/// A cohomology ring together with its characteristic classes, ready for
/// repeated Lagrangian evaluations.
#[derive(Clone, Debug)]
pub struct ManifoldClasses {
    pub ring: CohomologyRing,
    pub wu: WuProfile,
    pub sw: SWProfile,
}

impl ManifoldClasses {
    pub fn new(ring: CohomologyRing) -> Result<Self> {
        let wu = wu_classes(&ring)?;
        let sw = sw_from_wu(&ring, &wu);
        Ok(Self { ring, wu, sw })
    }

    fn w_list(&self) -> Vec<CohomologyClass> {
        (0..=MAX_W).map(|i| self.sw.w(&self.ring, i)).collect()
    }

    fn check_h1(&self, a: &CohomologyClass) -> Result<()> {
        if a.is_homogeneous_of(1) {
            Ok(())
        } else {
            Err(Error::BadDegree { degree: first_nonzero_degree(a), allowed: "{1}".into() })
        }
    }

    /// `⟨β(w(N), a), [N]⟩` for `a ∈ H^1(N)`.
    pub fn lagrangian_value(&self, beta: &Lagrangian, a: &CohomologyClass) -> Result<bool> {
        if beta.degree() != self.ring.dim() {
            return Err(Error::DegreeMismatch { lagrangian: beta.degree(), required: self.ring.dim() });
        }
        self.check_h1(a)?;
        let value = substitute(&self.ring, beta, &self.w_list(), a);
        Ok(self.ring.pair(&value))
    }

    fn check_torus_inputs(&self, degree: usize, a: &CohomologyClass, t: &CohomologyClass) -> Result<()> {
        if degree != self.ring.dim() + 1 {
            return Err(Error::DegreeMismatch { lagrangian: degree, required: self.ring.dim() + 1 });
        }
        self.check_h1(a)?;
        if !t.is_homogeneous_of(0) || !self.ring.is_idempotent(t) {
            return Err(Error::NotIdempotent);
        }
        Ok(())
    }

    /// Pairing of `β(w(S¹×M), a + x·t)` against `[S¹ × M]`: the value on
    /// the mapping torus of the automorphism `t ∈ H^0(M)` of the bundle `a`.
    pub fn mapping_torus_character(
        &self,
        beta: &Lagrangian,
        a: &CohomologyClass,
        t: &CohomologyClass,
    ) -> Result<bool> {
        self.check_torus_inputs(beta.degree(), a, t)?;
        let mt = MappingTorusRing::new(&self.ring);
        let w: Vec<MappingTorusClass> = self.w_list().iter().map(|c| mt.pullback(c)).collect();
        let alpha = mt.element(a.clone(), t.clone());
        Ok(mt.pair(&substitute(&mt, beta, &w, &alpha)))
    }

    /// The GDS character through the closed form `⟨w·A/(1+A), [S¹×M]⟩`
    /// with `A = a + x·t`, inverting `1 + A` by its finite geometric series.
    pub fn gds_series_character(&self, a: &CohomologyClass, t: &CohomologyClass) -> Result<bool> {
        self.check_torus_inputs(self.ring.dim() + 1, a, t)?;
        let mt = MappingTorusRing::new(&self.ring);
        let big_a = mt.element(a.clone(), t.clone());
        let mut series = mt.zero();
        let mut power = big_a.clone();
        for _ in 0..=self.ring.dim() + 1 {
            series = mt.add(&series, &power);
            power = mt.mul(&power, &big_a);
        }
        let w = mt.pullback(&self.sw.total(&self.ring));
        Ok(mt.pair(&mt.mul(&w, &series)))
    }
}

fn first_nonzero_degree(c: &CohomologyClass) -> usize {
    c.parts().iter().position(|p| !p.is_zero()).unwrap_or(0)
}

pub fn lagrangian_value(beta: &Lagrangian, ring: &CohomologyRing, a: &CohomologyClass) -> Result<bool> {
    ManifoldClasses::new(ring.clone())?.lagrangian_value(beta, a)
}

pub fn mapping_torus_character(
    beta: &Lagrangian,
    ring: &CohomologyRing,
    a: &CohomologyClass,
    t: &CohomologyClass,
) -> Result<bool> {
    ManifoldClasses::new(ring.clone())?.mapping_torus_character(beta, a, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gds_expansions() {
        assert_eq!(gds_lagrangian(1).to_string(), "a");
        assert_eq!(gds_lagrangian(2).to_string(), "a^2 + w1*a");
        assert_eq!(gds_lagrangian(3).to_string(), "a^3 + w1*a^2 + w2*a");
    }

    #[test]
    fn other_constructors() {
        assert_eq!(dw_lagrangian(3).to_string(), "a^3");
        assert_eq!(beta2_lagrangian(2).to_string(), "w1*a");
        assert_eq!(beta2_lagrangian(4).to_string(), "w1*a^3 + w3*a");
        assert!(zero_lagrangian(4).is_zero());
        assert_eq!(zero_lagrangian(4).to_string(), "0");
    }

    #[test]
    fn twist_expansions() {
        assert_eq!(orientation_twist(&dw_lagrangian(2)).to_string(), "a^2 + w1^2");
        assert_eq!(
            orientation_twist(&dw_lagrangian(3)).to_string(),
            "a^3 + w1*a^2 + w1^2*a + w1^3"
        );
        assert!(orientation_twist(&zero_lagrangian(3)).is_zero());
    }

    #[test]
    fn parse_roundtrip_and_cancellation() {
        let l = Lagrangian::parse(" a^3 +w1 * a^2+ w2*a ", 3).unwrap();
        assert_eq!(l, gds_lagrangian(3));
        assert_eq!(l.to_string().parse::<Lagrangian>().unwrap(), l);
        assert!(Lagrangian::parse("a^2 + a^2", 2).unwrap().is_zero());
        assert_eq!(Lagrangian::parse("w1*w1*a", 3).unwrap().to_string(), "w1^2*a");
    }

    #[test]
    fn parse_errors() {
        assert_eq!(Lagrangian::parse("a^2 + a", 2), Err(Error::NotHomogeneous));
        assert_eq!(
            Lagrangian::parse("a^2", 3),
            Err(Error::DegreeMismatch { lagrangian: 2, required: 3 })
        );
        assert!(matches!(Lagrangian::parse("b^2", 2), Err(Error::LagrangianSyntax(_))));
        assert!(matches!(Lagrangian::parse("w10*a", 11), Err(Error::LagrangianSyntax(_))));
        assert!(matches!(Lagrangian::parse("a^", 1), Err(Error::LagrangianSyntax(_))));
        assert!(matches!(Lagrangian::parse("a +", 1), Err(Error::LagrangianSyntax(_))));
        assert!(matches!(Lagrangian::parse("", 1), Err(Error::LagrangianSyntax(_))));
    }

    #[test]
    fn serde_roundtrip() {
        let l = gds_lagrangian(4);
        let json = serde_json::to_string(&l).unwrap();
        assert_eq!(json, r#"{"degree":4,"expression":"a^4 + w1*a^3 + w2*a^2 + w3*a"}"#);
        assert_eq!(serde_json::from_str::<Lagrangian>(&json).unwrap(), l);
    }
}
