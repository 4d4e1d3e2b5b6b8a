mod common;

use common::complex;
use gds_core::char_classes::{orientation_twist, stiefel_whitney, Lagrangian, Monomial};
use gds_core::cohomology::{coboundary_matrix, cup};
use gds_core::lattice::{ground_dim, FlatClassSet, Lattice, Model, SpinConfiguration};
use gds_core::{BitVector, Cochain, CohomologyRing, Gf2Matrix};
use proptest::prelude::*;

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Gf2Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(any::<bool>(), c), r).prop_map(move |rows| {
            Gf2Matrix::from_rows(c, rows.iter().map(|b| BitVector::from_bools(b)).collect())
        })
    })
}

fn bits(len: usize) -> impl Strategy<Value = BitVector> {
    prop::collection::vec(any::<bool>(), len).prop_map(|b| BitVector::from_bools(&b))
}

fn monomial(degree: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(1usize..=4, 0..4).prop_map(move |ws| {
        let mut m = Monomial::alpha_power(0);
        let mut used = 0u32;
        for i in ws {
            if used + i as u32 <= degree {
                m.w[i - 1] += 1;
                used += i as u32;
            }
        }
        m.alpha = degree - used;
        m
    })
}

fn lagrangian() -> impl Strategy<Value = Lagrangian> {
    (1u32..=6).prop_flat_map(|n| {
        prop::collection::vec(monomial(n), 0..6)
            .prop_map(move |ms| Lagrangian::from_monomials(n as usize, ms).unwrap())
    })
}

fn flat_combination(k: &gds_core::SimplicialComplex, mask: u64) -> SpinConfiguration {
    let mut v = BitVector::zeros(k.count(1));
    for (i, b) in coboundary_matrix(k, 1).nullspace().basis.iter().enumerate() {
        if mask >> (i % 64) & 1 == 1 {
            v.xor_assign(b);
        }
    }
    SpinConfiguration(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity(a in matrix(12, 70)) {
        let ns = a.nullspace();
        prop_assert_eq!(a.rank() + ns.dim(), a.cols());
        for v in &ns.basis {
            prop_assert!(a.mul_vec(v).is_zero());
        }
        prop_assert_eq!(a.transpose().rank(), a.rank());
    }

    #[test]
    fn solve_recovers_consistent_systems(a in matrix(10, 80), seed in any::<u64>()) {
        let x0 = BitVector::from_u64(a.cols().min(64), seed);
        let mut x = BitVector::zeros(a.cols());
        for i in x0.ones() {
            x.set(i, true);
        }
        let b = a.mul_vec(&x);
        let sol = a.solve(&b).expect("b is in the column span");
        prop_assert_eq!(a.mul_vec(&sol), b);
    }

    #[test]
    fn nullspace_coordinates_round_trip(a in matrix(8, 40), seed in any::<u64>()) {
        let ns = a.nullspace();
        let coords = BitVector::from_u64(ns.dim(), seed & ((1u64 << ns.dim().min(63)) - 1));
        let v = ns.combine(&coords);
        prop_assert_eq!(ns.coordinates(&v), coords);
    }

    #[test]
    fn bitvector_round_trip(v in bits(150)) {
        let ones: Vec<usize> = v.ones().collect();
        prop_assert_eq!(BitVector::from_support(150, ones.iter().copied()), v.clone());
        prop_assert_eq!(v.count_ones(), ones.len());
        prop_assert_eq!(v.xor(&v).is_zero(), true);
    }

    #[test]
    fn lagrangian_text_round_trip(l in lagrangian()) {
        let text = l.to_string();
        prop_assert_eq!(Lagrangian::parse(&text, l.degree()).unwrap(), l.clone());
        prop_assert_eq!(orientation_twist(&orientation_twist(&l)), l);
    }

    #[test]
    fn cup_commutes_on_cohomology(mx in any::<u64>(), my in any::<u64>()) {
        let k = complex("torus_7");
        let ring = CohomologyRing::new(&k).unwrap();
        let x = Cochain::from_values(1, flat_combination(&k, mx).0);
        let y = Cochain::from_values(1, flat_combination(&k, my).0);
        prop_assert_eq!(ring.class_of(&cup(&k, &x, &y)).unwrap(), ring.class_of(&cup(&k, &y, &x)).unwrap());
    }

    #[test]
    fn sigma_loop_ignores_order(mask in any::<u64>(), order in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle()) {
        let k = complex("klein_8");
        let l = Lattice::new(&k);
        let s = flat_combination(&k, mask);
        let sorted: Vec<usize> = (0..8).collect();
        prop_assert_eq!(l.sigma_loop(&s, &order).unwrap(), l.sigma_loop(&s, &sorted).unwrap());
    }

    #[test]
    fn character_is_gauge_invariant(mask in any::<u64>(), flips in prop::collection::vec(0usize..6, 0..10)) {
        let k = complex("rp2_6");
        let l = Lattice::new(&k);
        let s = flat_combination(&k, mask);
        let moved = flips.iter().fold(s.clone(), |acc, &v| l.vertex_flip(&acc, v));
        prop_assert_eq!(l.character(&moved).unwrap(), l.character(&s).unwrap());
        let classes = FlatClassSet::new(&k).unwrap();
        prop_assert_eq!(classes.canonical(&moved), classes.canonical(&s));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn relabeling_preserves_invariants(
        which in 0usize..3,
        perm in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let name = ["rp2_6", "torus_7", "klein_8"][which];
        let k = complex(name);
        let n = k.num_vertices();
        // Restrict the shuffle of 0..8 to a permutation of 0..n.
        let p: Vec<usize> = perm.into_iter().filter(|&v| v < n).collect();
        let r = k.relabel(&p).unwrap();
        let (ra, rb) = (CohomologyRing::new(&k).unwrap(), CohomologyRing::new(&r).unwrap());
        prop_assert_eq!(ra.betti_numbers(), rb.betti_numbers());
        let (sa, sb) = (stiefel_whitney(&ra).unwrap(), stiefel_whitney(&rb).unwrap());
        prop_assert_eq!(ra.pair(&sa.w(&ra, 2)), rb.pair(&sb.w(&rb, 2)));
        prop_assert_eq!(sa.is_orientable(), sb.is_orientable());
        for model in [Model::ToricCode, Model::Gds] {
            prop_assert_eq!(ground_dim(name, &k, model).unwrap().dim, ground_dim(name, &r, model).unwrap().dim);
        }
    }
}
