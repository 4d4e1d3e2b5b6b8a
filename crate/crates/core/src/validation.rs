//! The cross-validation suite: each criterion compares two independently
//! computed sides (lattice vs. TQFT, fast path vs. oracle, engine vs. known
//! values) and records what it saw.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::parse_manifold;
use crate::char_classes::{dw_lagrangian, orientation_twist, Lagrangian};
use crate::cohomology::{coboundary_matrix, cup, is_cocycle, steenrod_square, Cochain};
use crate::error::Result;
use crate::gf2::BitVector;
use crate::lattice::{
    flat_oracle_ground_dim, full_oracle_ground_dim, ground_dim, FlatClassSet, FlatSpace, FullSpace, Lattice, Model,
    SpinConfiguration,
};
use crate::tqft::{
    classical_partition, compare_theories, quantum_partition, state_dim, trace_identity_check, w1_class_index,
    PreparedManifold, TheoryHandle, DEFAULT_MAX_PRODUCT_FACETS,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationOptions {
    pub seed: u64,
    /// Random vertex orderings per manifold for the order-independence check.
    pub orderings: usize,
    /// Random cocycles per manifold and degree for the Steenrod axioms.
    pub cocycles: usize,
    pub max_edges: usize,
    pub max_flat_bits: usize,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self {
            seed: 0x05ee_d6d5,
            orderings: 100,
            cocycles: 50,
            max_edges: crate::lattice::DEFAULT_MAX_EDGES,
            max_flat_bits: crate::lattice::DEFAULT_MAX_FLAT_BITS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub title: String,
    pub passed: bool,
    /// One line per individual comparison, mismatches first marked `FAIL`.
    pub details: Vec<String>,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub seed: u64,
    pub passed: bool,
    pub criteria: Vec<CriterionOutcome>,
}

impl ValidationReport {
    /// One `AC<n> PASS|FAIL <title>` line per criterion.
    pub fn summary_lines(&self) -> Vec<String> {
        self.criteria
            .iter()
            .map(|c| format!("AC{:<2} {} {}", c.id, if c.passed { "PASS" } else { "FAIL" }, c.title))
            .collect()
    }
}

/// Collects comparisons for one criterion.
struct Log {
    passed: bool,
    details: Vec<String>,
}

impl Log {
    fn new() -> Self {
        Self { passed: true, details: Vec::new() }
    }

    fn check<T: PartialEq + std::fmt::Debug>(&mut self, what: impl AsRef<str>, found: T, expected: T) {
        let ok = found == expected;
        self.passed &= ok;
        let mark = if ok { "ok" } else { "FAIL" };
        self.details.push(format!("{mark} {}: found {found:?}, expected {expected:?}", what.as_ref()));
    }

    fn claim(&mut self, what: impl AsRef<str>, ok: bool) {
        self.passed &= ok;
        self.details.push(format!("{} {}", if ok { "ok" } else { "FAIL" }, what.as_ref()));
    }

    fn error(&mut self, what: impl AsRef<str>, err: crate::error::Error) {
        self.passed = false;
        self.details.push(format!("FAIL {}: {err}", what.as_ref()));
    }
}

fn prepare(name: &str) -> Result<PreparedManifold> {
    PreparedManifold::from_record(&parse_manifold(name)?)
}

type Criterion = fn(&ValidationOptions, &mut Log) -> Result<()>;

const CRITERIA: [(u32, &str, Criterion); 12] = [
    (1, "toric code ground dimension equals 2^b1", ac1),
    (2, "lattice characters equal mapping-torus characters", ac2),
    (3, "GDS state dimensions of the worked examples", ac3),
    (4, "dimension 3: GDS is isomorphic to alpha^3", ac4),
    (5, "even n: GDS state dimension equals 2^b1", ac5),
    (6, "n = 5 on cp2_9: (GDS, DW0, alpha^5) = (0, 1, 1)", ac6),
    (7, "partition functions Z_GDS(rp2_6) = 1, Z_beta2(rp2_6) = 0", ac7),
    (8, "trace identity Z(S1 x M) = dim Z(M)", ac8),
    (9, "oracles agree with the fast ground dimension", ac9),
    (10, "operator algebra, order independence, gauge invariance", ac10),
    (11, "Steenrod axioms and characteristic-class identities", ac11),
    (12, "orientation twisting of alpha^2", ac12),
];

pub fn criterion_ids() -> Vec<u32> {
    CRITERIA.iter().map(|c| c.0).collect()
}

/// Runs one criterion; engine errors count as failures.
pub fn run_criterion(id: u32, options: &ValidationOptions) -> Option<CriterionOutcome> {
    let &(id, title, f) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let mut log = Log::new();
    if let Err(e) = f(options, &mut log) {
        log.error("engine error", e);
    }
    Some(CriterionOutcome {
        id,
        title: title.to_string(),
        passed: log.passed,
        details: log.details,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

pub fn run_all(options: &ValidationOptions) -> ValidationReport {
    let criteria: Vec<CriterionOutcome> =
        criterion_ids().into_iter().filter_map(|id| run_criterion(id, options)).collect();
    ValidationReport { seed: options.seed, passed: criteria.iter().all(|c| c.passed), criteria }
}

const AC1_MANIFOLDS: [(&str, usize); 8] = [
    ("circle(3)", 2),
    ("circle(5)", 2),
    ("sphere(2)", 1),
    ("sphere(3)", 1),
    ("rp2_6", 2),
    ("torus_7", 4),
    ("klein_8", 4),
    ("rp3_11", 2),
];

fn ac1(_: &ValidationOptions, log: &mut Log) -> Result<()> {
    for (name, expected) in AC1_MANIFOLDS {
        let m = prepare(name)?;
        let r = ground_dim(name, &m.complex, Model::ToricCode)?;
        log.check(format!("{name} TC ground dim"), r.dim, expected);
        log.check(format!("{name} 2^b1"), 1usize << m.ring().rank(1), expected);
    }
    Ok(())
}

fn ac2(_: &ValidationOptions, log: &mut Log) -> Result<()> {
    for (name, _) in AC1_MANIFOLDS {
        let m = prepare(name)?;
        let classes = FlatClassSet::new(&m.complex)?;
        let lattice = Lattice::new(&m.complex);
        let theory = TheoryHandle::gds(m.dim() + 1);
        let tqft = state_dim(&theory, &m)?;
        let mut lattice_chars = Vec::new();
        for rep in classes.representatives() {
            lattice_chars.push(lattice.character(rep)?);
        }
        log.check(format!("{name} per-class characters (lattice vs TQFT)"), &lattice_chars, &tqft.characters);
        let ring = m.ring();
        let mut series = Vec::new();
        for a in ring.enumerate(1) {
            let row: Vec<i8> = ring
                .component_generators()
                .iter()
                .map(|t| m.classes.gds_series_character(&a, t).map(|v| if v { -1 } else { 1 }))
                .collect::<Result<_>>()?;
            series.push(row);
        }
        log.check(format!("{name} closed-form series characters"), &series, &tqft.characters);
        let ground = ground_dim(name, &m.complex, Model::Gds)?;
        log.check(format!("{name} GDS permitted classes"), &ground.permitted, &tqft.permitted);
        log.check(format!("{name} GDS ground dim vs state dim"), ground.dim, tqft.dim);
    }
    Ok(())
}

fn ac3(_: &ValidationOptions, log: &mut Log) -> Result<()> {
    for (name, expected) in
        [("rp2_6", 1), ("rp3_11", 2), ("sphere(2)", 1), ("cp2_9", 0), ("product(sphere(2),rp2_6)", 2)]
    {
        let m = prepare(name)?;
        let r = state_dim(&TheoryHandle::gds(m.dim() + 1), &m)?;
        log.check(format!("{name} Z_GDS state dim"), r.dim, expected);
    }
    Ok(())
}

fn ac4(_: &ValidationOptions, log: &mut Log) -> Result<()> {
    let surfaces: Vec<PreparedManifold> =
        ["sphere(2)", "torus_7", "rp2_6", "klein_8"].iter().map(|n| prepare(n)).collect::<Result<_>>()?;
    let gds = TheoryHandle::gds(3);
    let cubic = TheoryHandle::dw(3);
    let twisted = cubic.twisted();
    let table = compare_theories(&[gds.clone(), cubic.clone()], &surfaces)?;
    log.claim(
        format!("dimension columns identical: {:?}", table.equal_dims),
        table.equal_dims.len() == 1,
    );
    log.claim(
        format!("character columns identical up to a -> a + w1: {:?}", table.equal_characters_up_to_w1),
        table.equal_characters_up_to_w1.len() == 1,
    );
    for m in &surfaces {
        let g = state_dim(&gds, m)?;
        let c = state_dim(&cubic, m)?;
        let t = state_dim(&twisted, m)?;
        let w = w1_class_index(m);
        let relabeled: Vec<Vec<i8>> = (0..c.characters.len()).map(|a| c.characters[a ^ w].clone()).collect();
        log.check(format!("{} state dims GDS vs alpha^3", m.name), g.dim, c.dim);
        log.check(format!("{} GDS(a) vs alpha^3(a + w1)", m.name), &g.characters, &relabeled);
        log.check(format!("{} GDS(a) vs twist(alpha^3)(a)", m.name), &g.characters, &t.characters);
    }
    Ok(())
}

fn ac5(_: &ValidationOptions, log: &mut Log) -> Result<()> {
    let by_n: [(usize, &[&str]); 2] = [
        (2, &["circle(3)", "circle(4)", "circle(5)", "union(circle(3),circle(4))"]),
        (
            4,
            &[
                "sphere(3)",
                "rp3_11",
                "product(circle(3),sphere(2))",
                "product(circle(3),rp2_6)",
                "product(circle(3),torus_7)",
                "product(circle(3),klein_8)",
            ],
        ),
    ];
    for (n, names) in by_n {
        for name in names {
            let m = prepare(name)?;
            let r = state_dim(&TheoryHandle::gds(n), &m)?;
            log.check(format!("n={n} {name} GDS state dim"), r.dim, 1usize << m.ring().rank(1));
        }
    }
    Ok(())
}

fn ac6(_: &ValidationOptions, log: &mut Log) -> Result<()> {
    let m = prepare("cp2_9")?;
    let dims: Vec<usize> = [TheoryHandle::gds(5), TheoryHandle::dw0(5), TheoryHandle::dw(5)]
        .iter()
        .map(|t| state_dim(t, &m).map(|r| r.dim))
        .collect::<Result<_>>()?;
    log.check("cp2_9 (GDS, DW0, alpha^5) state dims", dims, vec![0, 1, 1]);
    Ok(())
}

fn ac7(_: &ValidationOptions, log: &mut Log) -> Result<()> {
    use num_rational::Rational64;
    let m = prepare("rp2_6")?;
    let gds = quantum_partition(&TheoryHandle::gds(2), &m)?;
    let b2 = quantum_partition(&TheoryHandle::beta2(2), &m)?;
    log.check("Z_GDS(rp2_6)", gds.value().to_string(), Rational64::from_integer(1).to_string());
    log.check("Z_beta2(rp2_6)", b2.value().to_string(), Rational64::from_integer(0).to_string());
    Ok(())
}

fn ac8(_: &ValidationOptions, log: &mut Log) -> Result<()> {
    let cases = [
        (TheoryHandle::dw0(2), "circle(3)"),
        (TheoryHandle::gds(2), "circle(3)"),
        (TheoryHandle::dw0(3), "rp2_6"),
        (TheoryHandle::gds(3), "rp2_6"),
        (TheoryHandle::dw0(3), "torus_7"),
        (TheoryHandle::gds(3), "torus_7"),
    ];
    for (theory, name) in cases {
        let m = prepare(name)?;
        let c = trace_identity_check(&theory, &m, DEFAULT_MAX_PRODUCT_FACETS)?;
        log.check(
            format!("{} n={} on {name}: Z(S1 x M) vs dim Z(M)", theory.name, theory.n()),
            c.partition.value().to_string(),
            num_rational::Rational64::from_integer(c.state.dim as i64).to_string(),
        );
    }
    Ok(())
}

fn ac9(options: &ValidationOptions, log: &mut Log) -> Result<()> {
    for name in ["circle(3)", "circle(4)", "sphere(2)"] {
        let m = prepare(name)?;
        for model in [Model::ToricCode, Model::Gds] {
            let fast = ground_dim(name, &m.complex, model)?;
            let full = full_oracle_ground_dim(name, &m.complex, model, options.max_edges)?;
            log.check(format!("{name} {model} full oracle vs fast"), full.dim, fast.dim);
        }
    }
    for name in ["rp2_6", "torus_7", "rp3_11"] {
        let m = prepare(name)?;
        for model in [Model::ToricCode, Model::Gds] {
            let fast = ground_dim(name, &m.complex, model)?;
            let flat = flat_oracle_ground_dim(name, &m.complex, model, options.max_flat_bits)?;
            log.check(format!("{name} {model} flat oracle vs fast"), flat.dim, fast.dim);
        }
    }
    Ok(())
}

fn random_cocycle(rng: &mut ChaCha8Rng, basis: &[BitVector], len: usize) -> BitVector {
    let mut out = BitVector::zeros(len);
    for b in basis {
        if rng.gen::<bool>() {
            out.xor_assign(b);
        }
    }
    out
}

fn ac10(options: &ValidationOptions, log: &mut Log) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    for (name, _) in AC1_MANIFOLDS {
        let m = prepare(name)?;
        let lattice = Lattice::new(&m.complex);
        let space = FlatSpace::new(&lattice, 12)?;
        let ops: Vec<_> =
            (0..lattice.num_vertices()).map(|v| space.vertex_operator(Model::Gds, v)).collect::<Result<_>>()?;
        log.claim(format!("{name} U_v^2 = 1 on the flat space"), ops.iter().all(|u| u.is_involution()));
        let commuting = ops.iter().enumerate().all(|(i, u)| ops[i + 1..].iter().all(|w| u.commutes_with(w)));
        log.claim(format!("{name} [U_v, U_w] = 0 on the flat space"), commuting);
        let faces_trivial = (0..space.len()).all(|i| lattice.is_flat(&space.state(i)));
        log.claim(format!("{name} H_f vanishes on the flat space, so [H_f, U_v] = 0 there"), faces_trivial);
        if lattice.num_edges() <= options.max_edges {
            let full = FullSpace::new(&lattice, options.max_edges)?;
            let us: Vec<_> =
                (0..lattice.num_vertices()).map(|v| full.vertex_operator(Model::Gds, v)).collect::<Result<_>>()?;
            let faces: Vec<_> = (0..m.complex.count(2)).map(|f| full.face_operator(f)).collect();
            let ok = us.iter().all(|u| u.is_involution() && faces.iter().all(|b| b.commutes_with(u)));
            log.claim(format!("{name} U_v^2 = 1 and [B_f, U_v] = 0 on all configurations"), ok);
        }

        let cocycles = coboundary_matrix(&m.complex, 1).nullspace();
        let edges = m.complex.count(1);
        let mut disagreements = 0;
        for _ in 0..options.orderings {
            let s = SpinConfiguration(random_cocycle(&mut rng, &cocycles.basis, edges));
            let mut vertices: Vec<usize> =
                (0..lattice.num_vertices()).filter(|_| rng.gen_bool(0.7)).collect();
            let reference = lattice.sigma_loop(&s, &vertices)?;
            vertices.shuffle(&mut rng);
            if lattice.sigma_loop(&s, &vertices)? != reference {
                disagreements += 1;
            }
        }
        log.check(format!("{name} sigma_loop order disagreements over {} orderings", options.orderings), disagreements, 0);

        let classes = FlatClassSet::new(&m.complex)?;
        let mut gauge_ok = true;
        for rep in classes.representatives() {
            let chi = lattice.character(rep)?;
            for g in classes.coboundary_basis() {
                let moved = SpinConfiguration(rep.bits().xor(g.bits()));
                gauge_ok &= lattice.character(&moved)? == chi;
            }
        }
        log.claim(format!("{name} characters invariant under every vertex flip"), gauge_ok);
    }
    Ok(())
}

const AC11_MANIFOLDS: [&str; 11] = [
    "circle(4)",
    "sphere(2)",
    "sphere(3)",
    "sphere(4)",
    "rp2_6",
    "torus_7",
    "klein_8",
    "rp3_11",
    "cp2_9",
    "product(circle(3),rp2_6)",
    "product(circle(3),klein_8)",
];

fn ac11(options: &ValidationOptions, log: &mut Log) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed ^ 0x11);
    for name in AC11_MANIFOLDS {
        let m = prepare(name)?;
        let k = &m.complex;
        let ring = m.ring();
        let d = m.dim();

        let mut axioms_ok = true;
        let mut tested = 0;
        for deg in 1..=d {
            let basis = coboundary_matrix(k, deg).nullspace().basis;
            for _ in 0..options.cocycles {
                let x = Cochain::from_values(deg, random_cocycle(&mut rng, &basis, k.count(deg)));
                let class = ring.class_of(&x)?;
                axioms_ok &= ring.class_of(&steenrod_square(k, 0, &x)?)? == class;
                if 2 * deg <= d {
                    let top = steenrod_square(k, deg, &x)?;
                    axioms_ok &= ring.class_of(&top)? == ring.class_of(&cup(k, &x, &x))?;
                }
                for i in 1..=d - deg {
                    let y = steenrod_square(k, i, &x)?;
                    axioms_ok &= is_cocycle(k, &y);
                    axioms_ok &= ring.class_of(&y)? == ring.sq(i, &class);
                    if i > deg {
                        axioms_ok &= y.is_zero();
                    }
                }
                tested += 1;
            }
        }
        log.claim(format!("{name} Sq^0 = id, Sq^k = square, Sq^i = 0 above degree on {tested} random cocycles"), axioms_ok);

        let h1 = ring.enumerate(1);
        let cartan = h1.iter().all(|x| {
            h1.iter().all(|y| ring.sq_total(&ring.mul(x, y)) == ring.mul(&ring.sq_total(x), &ring.sq_total(y)))
        });
        log.claim(format!("{name} Cartan formula on products of H^1 classes"), cartan);

        let nondegenerate = (0..=d).all(|deg| ring.pairing_matrix(deg).rank() == ring.rank(deg));
        log.claim(format!("{name} Poincare pairing nondegenerate in every degree"), nondegenerate);

        let w_top = ring.pair(&m.classes.sw.w(ring, d));
        log.check(format!("{name} <w_top, [M]> vs chi mod 2"), w_top, ring.euler_characteristic().rem_euclid(2) == 1);

        if d % 2 == 1 {
            let w1 = m.classes.sw.w(ring, 1);
            let ccl1 = h1.iter().all(|y| {
                let mut p = w1.clone();
                for _ in 0..d - 1 {
                    p = ring.mul(&p, y);
                }
                !ring.pair(&p)
            });
            log.claim(format!("{name} <w1 y^{}, [M]> = 0 for every y in H^1", d - 1), ccl1);
        }
    }

    let m = prepare("rp2_6")?;
    let ring = m.ring();
    let z = ring.basis_class(1, 0);
    let expected = ring.one().add(&z).add(&ring.mul(&z, &z));
    log.check("w(rp2_6) = 1 + z + z^2", m.classes.sw.total(ring), expected);
    Ok(())
}

fn ac12(_: &ValidationOptions, log: &mut Log) -> Result<()> {
    let square = TheoryHandle::new("alpha^2", dw_lagrangian(2));
    let twisted = TheoryHandle::new("alpha^2 + w1^2", orientation_twist(&dw_lagrangian(2)));
    log.check(
        "twist(alpha^2)",
        twisted.lagrangian.clone(),
        Lagrangian::parse("a^2 + w1^2", 2)?,
    );
    for mm in 3..=7 {
        let m = prepare(&format!("circle({mm})"))?;
        log.check(
            format!("circle({mm}) state dims alpha^2 vs alpha^2 + w1^2"),
            state_dim(&square, &m)?.dim,
            state_dim(&twisted, &m)?.dim,
        );
    }
    let rp2 = prepare("rp2_6")?;
    let zero = rp2.ring().class(1, BitVector::zeros(1));
    log.check("classical alpha^2 on rp2_6, trivial class", classical_partition(&square, &rp2, &zero)?, 1);
    log.check("classical alpha^2 + w1^2 on rp2_6, trivial class", classical_partition(&twisted, &rp2, &zero)?, -1);
    Ok(())
}
