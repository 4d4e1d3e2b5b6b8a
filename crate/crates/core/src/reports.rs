//! Serializable summaries of a manifold's homology and characteristic
//! classes, as printed by the command-line front end.

use serde::{Deserialize, Serialize};

use crate::catalog::ManifoldRecord;
use crate::cohomology::CohomologyClass;
use crate::error::Result;
use crate::tqft::PreparedManifold;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldSummary {
    pub name: String,
    pub dim: usize,
    pub f_vector: Vec<usize>,
    pub betti: Vec<usize>,
    pub euler_characteristic: i64,
    pub components: usize,
}

impl ManifoldSummary {
    pub fn new(record: &ManifoldRecord) -> Self {
        let k = &record.complex;
        Self {
            name: record.name.clone(),
            dim: k.dim(),
            f_vector: k.f_vector(),
            betti: crate::cohomology::betti_numbers(k),
            euler_characteristic: k.euler_characteristic(),
            components: k.num_components(),
        }
    }
}

/// Wu and Stiefel-Whitney classes in the cohomology basis of each degree:
/// `wu[k]` and `sw[k]` are coordinate bits in `H^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharClassReport {
    pub manifold: String,
    pub dim: usize,
    pub betti: Vec<usize>,
    pub wu: Vec<Vec<u8>>,
    pub sw: Vec<Vec<u8>>,
    pub orientable: bool,
    /// `⟨w_d, [M]⟩`, which equals the Euler characteristic mod 2.
    pub top_sw_number: bool,
}

fn coordinates(c: &CohomologyClass, degree: usize) -> Vec<u8> {
    let part = c.part(degree);
    (0..part.len()).map(|i| u8::from(part.get(i))).collect()
}

impl CharClassReport {
    pub fn new(m: &PreparedManifold) -> Result<Self> {
        let ring = m.ring();
        let d = m.dim();
        Ok(Self {
            manifold: m.name.clone(),
            dim: d,
            betti: ring.betti_numbers(),
            wu: m.classes.wu.classes.iter().enumerate().map(|(k, c)| coordinates(c, k)).collect(),
            sw: (0..=d).map(|k| coordinates(&m.classes.sw.w(ring, k), k)).collect(),
            orientable: m.classes.sw.is_orientable(),
            top_sw_number: ring.pair(&m.classes.sw.w(ring, d)),
        })
    }
}
