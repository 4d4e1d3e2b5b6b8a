//! Gauge-gravity TQFTs: classical and quantum partition functions on closed
//! `n`-manifolds, state spaces on closed `(n-1)`-manifolds, and comparisons
//! between theories.

use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::ManifoldRecord;
use crate::char_classes::{
    beta2_lagrangian, dw_lagrangian, gds_lagrangian, orientation_twist, zero_lagrangian, Lagrangian,
    ManifoldClasses,
};
use crate::cohomology::{CohomologyClass, CohomologyRing};
use crate::error::{Error, Result};
use crate::simplicial::{circle_facets, SimplicialComplex};

/// Default cap on the number of facets of a product triangulation built for
/// the trace identity.
pub const DEFAULT_MAX_PRODUCT_FACETS: usize = 200_000;

/// A named Lagrangian of ambient degree `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoryHandle {
    pub name: String,
    pub lagrangian: Lagrangian,
}

impl TheoryHandle {
    pub fn new(name: impl Into<String>, lagrangian: Lagrangian) -> Self {
        Self { name: name.into(), lagrangian }
    }

    pub fn n(&self) -> usize {
        self.lagrangian.degree()
    }

    pub fn gds(n: usize) -> Self {
        Self::new("gds", gds_lagrangian(n))
    }

    /// The untwisted theory, whose ground states the toric code realizes.
    pub fn dw0(n: usize) -> Self {
        Self::new("dw0", zero_lagrangian(n))
    }

    pub fn dw(n: usize) -> Self {
        Self::new(format!("dw^{n}"), dw_lagrangian(n))
    }

    pub fn beta2(n: usize) -> Self {
        Self::new("beta2", beta2_lagrangian(n))
    }

    /// Parses `tc`, `gds`, `dw0`, `dw^k` (with `k = n`), `beta2`, or an
    /// explicit Lagrangian such as `a^3 + w1*a^2`.
    pub fn parse(spec: &str, n: usize) -> Result<Self> {
        let spec = spec.trim();
        match spec {
            "tc" => return Ok(Self::new("tc", zero_lagrangian(n))),
            "gds" => return Ok(Self::gds(n)),
            "dw0" => return Ok(Self::dw0(n)),
            "beta2" => return Ok(Self::beta2(n)),
            _ => {}
        }
        if let Some(k) = spec.strip_prefix("dw^") {
            let k: usize = k
                .parse()
                .map_err(|_| Error::LagrangianSyntax(format!("bad exponent in theory {spec:?}")))?;
            if k != n {
                return Err(Error::DegreeMismatch { lagrangian: k, required: n });
            }
            return Ok(Self::dw(n));
        }
        let l = Lagrangian::parse(spec, n)?;
        Ok(Self::new(l.to_string(), l))
    }

    /// The same theory with `α` replaced by `α + w_1`.
    pub fn twisted(&self) -> Self {
        Self::new(format!("twist({})", self.name), orientation_twist(&self.lagrangian))
    }
}

/// A manifold with its cohomology ring and characteristic classes.
#[derive(Clone, Debug)]
pub struct PreparedManifold {
    pub name: String,
    pub complex: SimplicialComplex,
    pub classes: ManifoldClasses,
}

impl PreparedManifold {
    pub fn new(name: impl Into<String>, complex: SimplicialComplex) -> Result<Self> {
        let ring = CohomologyRing::new(&complex)?;
        Ok(Self { name: name.into(), complex, classes: ManifoldClasses::new(ring)? })
    }

    pub fn from_record(record: &ManifoldRecord) -> Result<Self> {
        Self::new(record.name.clone(), record.complex.clone())
    }

    pub fn ring(&self) -> &CohomologyRing {
        &self.classes.ring
    }

    pub fn dim(&self) -> usize {
        self.complex.dim()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionResult {
    pub manifold: String,
    pub theory: String,
    pub lagrangian: Lagrangian,
    pub numerator: i64,
    pub denominator: i64,
}

impl PartitionResult {
    pub fn value(&self) -> Rational64 {
        Rational64::new(self.numerator, self.denominator)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateSpaceResult {
    pub manifold: String,
    pub theory: String,
    pub lagrangian: Lagrangian,
    pub dim: usize,
    pub permitted: Vec<u64>,
    /// `characters[i][c]` is the ±1 value of class `i` on the generator of
    /// component `c`.
    pub characters: Vec<Vec<i8>>,
}

/// `(-1)^{⟨β(N, a), [N]⟩}`.
pub fn classical_partition(theory: &TheoryHandle, n: &PreparedManifold, a: &CohomologyClass) -> Result<i8> {
    let v = n.classes.lagrangian_value(&theory.lagrangian, a)?;
    Ok(if v { -1 } else { 1 })
}

fn check_degree(theory: &TheoryHandle, required: usize) -> Result<()> {
    if theory.n() == required {
        Ok(())
    } else {
        Err(Error::DegreeMismatch { lagrangian: theory.n(), required })
    }
}

/// `Σ_{a ∈ H^1(N)} (-1)^{⟨β(a), [N]⟩} / |H^0(N)|`.
pub fn quantum_partition(theory: &TheoryHandle, n: &PreparedManifold) -> Result<PartitionResult> {
    check_degree(theory, n.dim())?;
    let ring = n.ring();
    let signs: Vec<i8> = ring
        .enumerate(1)
        .par_iter()
        .map(|a| classical_partition(theory, n, a))
        .collect::<Result<_>>()?;
    let total: i64 = signs.iter().map(|&s| s as i64).sum();
    let value = Rational64::new(total, 1i64 << ring.num_components());
    Ok(PartitionResult {
        manifold: n.name.clone(),
        theory: theory.name.clone(),
        lagrangian: theory.lagrangian.clone(),
        numerator: *value.numer(),
        denominator: *value.denom(),
    })
}

/// Characters of every class of `H^1(M)` on the component generators.
pub fn character_table(theory: &TheoryHandle, m: &PreparedManifold) -> Result<Vec<Vec<i8>>> {
    check_degree(theory, m.dim() + 1)?;
    let ring = m.ring();
    let generators = ring.component_generators();
    ring.enumerate(1)
        .par_iter()
        .map(|a| {
            generators
                .iter()
                .map(|t| {
                    let v = m.classes.mapping_torus_character(&theory.lagrangian, a, t)?;
                    Ok(if v { -1 } else { 1 })
                })
                .collect()
        })
        .collect()
}

/// Number of classes with trivial character.
pub fn state_dim(theory: &TheoryHandle, m: &PreparedManifold) -> Result<StateSpaceResult> {
    let characters = character_table(theory, m)?;
    let permitted: Vec<u64> = characters
        .iter()
        .enumerate()
        .filter(|(_, chi)| chi.iter().all(|&x| x == 1))
        .map(|(i, _)| i as u64)
        .collect();
    Ok(StateSpaceResult {
        manifold: m.name.clone(),
        theory: theory.name.clone(),
        lagrangian: theory.lagrangian.clone(),
        dim: permitted.len(),
        permitted,
        characters,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonEntry {
    pub dim: usize,
    pub characters: Vec<Vec<i8>>,
}

/// State spaces of several theories on several manifolds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub theories: Vec<String>,
    pub manifolds: Vec<String>,
    /// `entries[m][t]` for manifold `m` and theory `t`.
    pub entries: Vec<Vec<ComparisonEntry>>,
    /// Theories grouped by identical dimension columns.
    pub equal_dims: Vec<Vec<String>>,
    /// Theories grouped by identical dimension and character columns.
    pub equal_characters: Vec<Vec<String>>,
    /// Theories grouped by character columns that agree either class by
    /// class or after relabeling every class `a` as `a + w_1(M)`, the
    /// correspondence induced by tensoring with the orientation bundle.
    pub equal_characters_up_to_w1: Vec<Vec<String>>,
}

fn group_by<K: PartialEq>(names: &[String], keys: &[K]) -> Vec<Vec<String>> {
    let mut groups: Vec<(usize, Vec<String>)> = Vec::new();
    for (i, name) in names.iter().enumerate() {
        match groups.iter_mut().find(|(rep, _)| keys[*rep] == keys[i]) {
            Some((_, g)) => g.push(name.clone()),
            None => groups.push((i, vec![name.clone()])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}

pub fn compare_theories(theories: &[TheoryHandle], manifolds: &[PreparedManifold]) -> Result<ComparisonTable> {
    let mut entries = Vec::with_capacity(manifolds.len());
    for m in manifolds {
        let row = theories
            .iter()
            .map(|t| {
                let r = state_dim(t, m)?;
                Ok(ComparisonEntry { dim: r.dim, characters: r.characters })
            })
            .collect::<Result<Vec<_>>>()?;
        entries.push(row);
    }
    let names: Vec<String> = theories.iter().map(|t| t.name.clone()).collect();
    let dim_cols: Vec<Vec<usize>> =
        (0..theories.len()).map(|t| entries.iter().map(|row: &Vec<ComparisonEntry>| row[t].dim).collect()).collect();
    let full_cols: Vec<Vec<&ComparisonEntry>> =
        (0..theories.len()).map(|t| entries.iter().map(|row| &row[t]).collect()).collect();
    let w1_index: Vec<usize> = manifolds.iter().map(w1_class_index).collect();
    let orbit_keys: Vec<Vec<Vec<Vec<i8>>>> = (0..theories.len())
        .map(|t| {
            let plain: Vec<Vec<Vec<i8>>> = entries.iter().map(|row| row[t].characters.clone()).collect();
            let shifted: Vec<Vec<Vec<i8>>> = entries
                .iter()
                .zip(&w1_index)
                .map(|(row, &w)| (0..row[t].characters.len()).map(|a| row[t].characters[a ^ w].clone()).collect())
                .collect();
            let mut key = vec![plain.concat(), shifted.concat()];
            key.sort();
            key
        })
        .collect();
    Ok(ComparisonTable {
        equal_dims: group_by(&names, &dim_cols),
        equal_characters: group_by(&names, &full_cols),
        equal_characters_up_to_w1: group_by(&names, &orbit_keys),
        theories: names,
        manifolds: manifolds.iter().map(|m| m.name.clone()).collect(),
        entries,
    })
}

/// Index of the class `w_1(M)` in the class enumeration of `H^1(M)`.
pub fn w1_class_index(m: &PreparedManifold) -> usize {
    m.classes.sw.w(m.ring(), 1).part(1).to_u64() as usize
}

fn format_characters(chars: &[Vec<i8>]) -> String {
    chars
        .iter()
        .map(|c| c.iter().map(|&x| if x == 1 { '+' } else { '-' }).collect::<String>())
        .collect::<Vec<_>>()
        .join(",")
}

impl ComparisonTable {
    /// Aligned columns of `dim [characters]`, one row per manifold.
    pub fn to_text(&self) -> String {
        let mut rows: Vec<Vec<String>> = vec![std::iter::once("manifold".to_string())
            .chain(self.theories.iter().cloned())
            .collect()];
        for (m, name) in self.manifolds.iter().enumerate() {
            let mut row = vec![name.clone()];
            for e in &self.entries[m] {
                row.push(format!("{} [{}]", e.dim, format_characters(&e.characters)));
            }
            rows.push(row);
        }
        let widths: Vec<usize> =
            (0..rows[0].len()).map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for r in &rows {
            let cells: Vec<String> = r.iter().zip(&widths).map(|(s, &w)| format!("{s:<w$}")).collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        let fmt_groups = |g: &Vec<Vec<String>>| g.iter().map(|x| x.join(" = ")).collect::<Vec<_>>().join(" | ");
        out.push_str(&format!("equal dimensions: {}\n", fmt_groups(&self.equal_dims)));
        out.push_str(&format!("equal characters: {}\n", fmt_groups(&self.equal_characters)));
        out.push_str(&format!("equal characters up to a -> a + w1: {}\n", fmt_groups(&self.equal_characters_up_to_w1)));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceCheck {
    pub partition: PartitionResult,
    pub state: StateSpaceResult,
    pub holds: bool,
}

/// Compares `Z(S¹ × M)`, computed on the triangulation `circle(3) × M`, with
/// `dim Z(M)`, computed from characters.
pub fn trace_identity_check(theory: &TheoryHandle, m: &PreparedManifold, max_facets: usize) -> Result<TraceCheck> {
    check_degree(theory, m.dim() + 1)?;
    let circle = SimplicialComplex::from_facets(&circle_facets(3))?;
    let facets = 3 * m.complex.count(m.dim()) * (m.dim() + 1);
    if facets > max_facets {
        return Err(Error::TooLarge(format!(
            "circle(3) x {} has {facets} facets, over the limit {max_facets}",
            m.name
        )));
    }
    let product = PreparedManifold::new(format!("product(circle(3),{})", m.name), circle.product(&m.complex))?;
    let partition = quantum_partition(theory, &product)?;
    let state = state_dim(theory, m)?;
    let holds = partition.value() == Rational64::from_integer(state.dim as i64);
    Ok(TraceCheck { partition, state, holds })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistRow {
    pub manifold: String,
    /// `"state_dim"` on `(n-1)`-manifolds, `"partition"` on `n`-manifolds.
    pub quantity: String,
    pub original: String,
    pub twisted: String,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistCheck {
    pub theory: String,
    pub twisted: String,
    pub rows: Vec<TwistRow>,
    pub holds: bool,
}

/// Compares a theory with its orientation twist: state dimensions on
/// `(n-1)`-manifolds and partition functions on `n`-manifolds.
pub fn w1_twist_check(theory: &TheoryHandle, manifolds: &[PreparedManifold]) -> Result<TwistCheck> {
    let twisted = theory.twisted();
    let n = theory.n();
    let mut rows = Vec::new();
    for m in manifolds {
        let (quantity, original, other) = if m.dim() + 1 == n {
            let (a, b) = (state_dim(theory, m)?, state_dim(&twisted, m)?);
            ("state_dim", a.dim.to_string(), b.dim.to_string())
        } else if m.dim() == n {
            let (a, b) = (quantum_partition(theory, m)?, quantum_partition(&twisted, m)?);
            ("partition", a.value().to_string(), b.value().to_string())
        } else {
            return Err(Error::DegreeMismatch { lagrangian: n, required: m.dim() + 1 });
        };
        rows.push(TwistRow {
            manifold: m.name.clone(),
            quantity: quantity.into(),
            equal: original == other,
            original,
            twisted: other,
        });
    }
    Ok(TwistCheck {
        theory: theory.name.clone(),
        twisted: twisted.name,
        holds: rows.iter().all(|r| r.equal),
        rows,
    })
}
