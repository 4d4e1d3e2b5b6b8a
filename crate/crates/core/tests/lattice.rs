mod common;

use common::complex;
use gds_core::cohomology::coboundary_matrix;
use gds_core::lattice::{
    automorphism_action, flat_classes, flat_oracle_ground_dim, full_oracle_ground_dim, ground_dim, FlatClassSet,
    FlatSpace, FullSpace, GroundStateReport, Lattice, Method, Model, SpinConfiguration,
};
use gds_core::{BitVector, CohomologyRing, Cochain, Error, SimplicialComplex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn with_spins(k: &SimplicialComplex, edges: &[[usize; 2]]) -> SpinConfiguration {
    let mut s = SpinConfiguration::zeros(k.count(1));
    for e in edges {
        s.0.set(k.index_of(e).unwrap(), true);
    }
    s
}

fn random_flat(rng: &mut ChaCha8Rng, k: &SimplicialComplex) -> SpinConfiguration {
    let mut v = BitVector::zeros(k.count(1));
    for b in coboundary_matrix(k, 1).nullspace().basis {
        if rng.gen() {
            v.xor_assign(&b);
        }
    }
    SpinConfiguration(v)
}

/// The counting formula read literally: a simplex at `v` counts when any of
/// its edges, including those away from `v`, carries spin 1.
fn literal_sign(k: &SimplicialComplex, s: &SpinConfiguration, v: usize) -> i8 {
    let mut count = 0;
    for deg in 1..=k.dim() {
        for simplex in k.simplices(deg).iter().filter(|c| c.contains(v)) {
            if k.edges_of(simplex).iter().any(|&e| s.spin(e)) {
                count += 1;
            }
        }
    }
    if count % 2 == 0 {
        -1
    } else {
        1
    }
}

#[test]
fn holonomy_examples() {
    let k = complex("sphere(2)");
    let l = Lattice::new(&k);
    let zero = SpinConfiguration::zeros(6);
    assert!((0..4).all(|f| !l.holonomy(&zero, f)));
    let s = with_spins(&k, &[[0, 1]]);
    let f = k.index_of(&[0, 1, 2]).unwrap();
    assert!(l.holonomy(&s, f));
    for name in ["rp2_6", "torus_7", "klein_8", "rp3_11"] {
        let k = complex(name);
        let l = Lattice::new(&k);
        let classes = flat_classes(&k).unwrap();
        for rep in classes.representatives() {
            assert!((0..k.count(2)).all(|f| !l.holonomy(rep, f)), "{name}");
        }
    }
}

#[test]
fn flat_class_counts() {
    for (name, count) in [("sphere(2)", 1), ("rp2_6", 2), ("torus_7", 4), ("klein_8", 4), ("cp2_9", 1)] {
        let classes = flat_classes(&complex(name)).unwrap();
        assert_eq!(classes.len(), count, "{name}");
    }
    let s2 = flat_classes(&complex("sphere(2)")).unwrap();
    assert!(s2.representative(0).bits().is_zero());
}

#[test]
fn representatives_are_least_in_their_gauge_orbits() {
    for name in ["circle(4)", "sphere(2)", "rp2_6", "torus_7", "klein_8"] {
        let k = complex(name);
        let l = Lattice::new(&k);
        let classes = flat_classes(&k).unwrap();
        let n = k.num_vertices();
        for rep in classes.representatives() {
            let mut best: Option<Vec<bool>> = None;
            for mask in 0u32..(1 << n) {
                let mut s = rep.clone();
                for v in (0..n).filter(|v| mask >> v & 1 == 1) {
                    s = l.vertex_flip(&s, v);
                }
                let bits: Vec<bool> = (0..s.len()).map(|e| s.spin(e)).collect();
                if best.as_ref().map_or(true, |b| bits < *b) {
                    best = Some(bits);
                }
            }
            let rep_bits: Vec<bool> = (0..rep.len()).map(|e| rep.spin(e)).collect();
            assert_eq!(rep_bits, best.unwrap(), "{name}");
        }
    }
}

#[test]
fn class_indices_agree_with_ring_enumeration() {
    for name in ["rp2_6", "torus_7", "klein_8", "product(circle(3),rp2_6)"] {
        let k = complex(name);
        let ring = CohomologyRing::new(&k).unwrap();
        let classes = flat_classes(&k).unwrap();
        for (i, class) in ring.enumerate(1).iter().enumerate() {
            let rep = classes.representative(i as u64);
            assert_eq!(&ring.class_of(&Cochain::from_values(1, rep.bits().clone())).unwrap(), class);
            assert_eq!(classes.class_index(rep).unwrap(), i as u64);
        }
    }
}

#[test]
fn gds_sign_examples() {
    let k = complex("circle(3)");
    let l = Lattice::new(&k);
    assert_eq!(l.gds_sign(&SpinConfiguration::zeros(3), 0).unwrap(), -1);
    assert_eq!(l.gds_sign(&with_spins(&k, &[[0, 1]]), 0).unwrap(), 1);
    assert!(matches!(l.gds_sign(&SpinConfiguration::zeros(3), 7), Err(Error::UnknownVertex(7))));
}

#[test]
fn sign_is_consistent_on_random_configurations() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in common::BUILTINS {
        let k = complex(name);
        let l = Lattice::new(&k);
        for _ in 0..50 {
            let bits: Vec<bool> = (0..k.count(1)).map(|_| rng.gen()).collect();
            let s = SpinConfiguration(BitVector::from_bools(&bits));
            for v in 0..k.num_vertices() {
                assert!(l.gds_sign(&s, v).is_ok(), "{name}");
            }
        }
    }
}

#[test]
fn sign_agrees_with_literal_reading_on_flat_configurations() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for name in ["sphere(2)", "rp2_6", "torus_7", "klein_8", "sphere(3)", "rp3_11", "cp2_9"] {
        let k = complex(name);
        let l = Lattice::new(&k);
        for _ in 0..30 {
            let s = random_flat(&mut rng, &k);
            for v in 0..k.num_vertices() {
                assert_eq!(l.gds_sign(&s, v).unwrap(), literal_sign(&k, &s, v), "{name} vertex {v}");
            }
        }
    }
}

#[test]
fn vertex_flip_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for name in ["rp2_6", "torus_7", "rp3_11"] {
        let k = complex(name);
        let l = Lattice::new(&k);
        let s = random_flat(&mut rng, &k);
        for v in 0..k.num_vertices() {
            assert_eq!(l.vertex_flip(&l.vertex_flip(&s, v), v), s);
            assert!(l.is_flat(&l.vertex_flip(&s, v)));
        }
        let all = (0..k.num_vertices()).fold(s.clone(), |acc, v| l.vertex_flip(&acc, v));
        assert_eq!(all, s);
    }
}

#[test]
fn sigma_loop_examples() {
    let s2 = complex("sphere(2)");
    let l = Lattice::new(&s2);
    let zero = SpinConfiguration::zeros(6);
    assert_eq!(l.sigma_loop(&zero, &[]).unwrap(), 1);
    assert_eq!(l.sigma_loop(&zero, &[0, 1, 2, 3]).unwrap(), 1);
    assert!(matches!(l.sigma_loop(&with_spins(&s2, &[[0, 1]]), &[0]), Err(Error::NotFlat(_))));

    let rp2 = complex("rp2_6");
    let l = Lattice::new(&rp2);
    assert_eq!(l.sigma_loop(&SpinConfiguration::zeros(15), &[0, 1, 2, 3, 4, 5]).unwrap(), -1);
}

#[test]
fn character_examples() {
    let rp2 = complex("rp2_6");
    let l = Lattice::new(&rp2);
    let classes = flat_classes(&rp2).unwrap();
    assert_eq!(l.character(classes.representative(0)).unwrap(), vec![-1]);
    assert_eq!(l.character(classes.representative(1)).unwrap(), vec![1]);
    for rep in classes.representatives() {
        assert_eq!(l.model_character(Model::ToricCode, rep).unwrap(), vec![1]);
    }

    let two = complex("union(sphere(2),sphere(2))");
    let l = Lattice::new(&two);
    assert_eq!(l.character(&SpinConfiguration::zeros(two.count(1))).unwrap(), vec![1, 1]);

    let mixed = complex("union(rp2_6,sphere(2))");
    let l = Lattice::new(&mixed);
    let classes = flat_classes(&mixed).unwrap();
    let chars: Vec<Vec<i8>> = classes.representatives().iter().map(|r| l.character(r).unwrap()).collect();
    assert_eq!(chars, vec![vec![-1, 1], vec![1, 1]]);
}

#[test]
fn ground_dim_examples() {
    assert_eq!(ground_dim("torus_7", &complex("torus_7"), Model::ToricCode).unwrap().dim, 4);
    assert_eq!(ground_dim("rp3_11", &complex("rp3_11"), Model::Gds).unwrap().dim, 2);
    assert_eq!(ground_dim("cp2_9", &complex("cp2_9"), Model::Gds).unwrap().dim, 0);
    let r = ground_dim("rp2_6", &complex("rp2_6"), Model::Gds).unwrap();
    assert_eq!((r.dim, r.permitted.clone(), r.method), (1, vec![1], Method::Fast));
    assert_eq!(r.permitted.len(), r.dim);
}

#[test]
fn report_json_shape() {
    let r = ground_dim("rp2_6", &complex("rp2_6"), Model::Gds).unwrap();
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["dim", "elapsed_ms", "manifold", "method", "model", "permitted"]);
    assert_eq!(v["model"], "gds");
    assert_eq!(v["method"], "fast");
    let back: GroundStateReport = serde_json::from_value(v).unwrap();
    assert_eq!(back, r);
}

#[test]
fn flat_oracle_agrees_with_fast_path() {
    for name in ["sphere(2)", "rp2_6", "torus_7", "circle(3)", "circle(4)", "circle(5)", "circle(6)"] {
        let k = complex(name);
        for model in [Model::ToricCode, Model::Gds] {
            let fast = ground_dim(name, &k, model).unwrap();
            let flat = flat_oracle_ground_dim(name, &k, model, 20).unwrap();
            assert_eq!(flat.dim, fast.dim, "{name} {model}");
            assert_eq!(flat.method, Method::FlatOracle);
        }
    }
    let torus = complex("torus_7");
    assert!(matches!(flat_oracle_ground_dim("torus_7", &torus, Model::Gds, 4), Err(Error::TooLarge(_))));
}

#[test]
fn full_oracle_examples() {
    assert_eq!(full_oracle_ground_dim("c3", &complex("circle(3)"), Model::ToricCode, 13).unwrap().dim, 2);
    let c4 = complex("circle(4)");
    assert_eq!(
        full_oracle_ground_dim("c4", &c4, Model::Gds, 13).unwrap().dim,
        ground_dim("c4", &c4, Model::Gds).unwrap().dim
    );
    assert_eq!(full_oracle_ground_dim("s2", &complex("sphere(2)"), Model::Gds, 13).unwrap().dim, 1);
    assert!(matches!(
        full_oracle_ground_dim("t", &complex("torus_7"), Model::Gds, 13),
        Err(Error::TooLarge(_))
    ));
}

#[test]
fn operators_on_flat_and_full_spaces() {
    for name in ["sphere(2)", "rp2_6", "circle(4)"] {
        let k = complex(name);
        let l = Lattice::new(&k);
        let flat = FlatSpace::new(&l, 12).unwrap();
        for model in [Model::ToricCode, Model::Gds] {
            let ops: Vec<_> = (0..k.num_vertices()).map(|v| flat.vertex_operator(model, v).unwrap()).collect();
            for (i, u) in ops.iter().enumerate() {
                assert!(u.is_involution());
                assert!(ops[i + 1..].iter().all(|w| u.commutes_with(w)));
                if model == Model::ToricCode {
                    assert!(u.sign.iter().all(|&x| x == 1));
                }
            }
        }
        for i in 0..flat.len() {
            assert_eq!(flat.index(&flat.state(i)), i);
        }
        let full = FullSpace::new(&l, 15).unwrap();
        let faces: Vec<_> = (0..k.count(2)).map(|f| full.face_operator(f)).collect();
        for v in 0..k.num_vertices() {
            let u = full.vertex_operator(Model::Gds, v).unwrap();
            assert!(u.is_involution());
            assert!(faces.iter().all(|b| b.commutes_with(&u)));
        }
    }
}

#[test]
fn automorphisms_act_on_classes() {
    for name in ["sphere(2)", "circle(5)", "rp2_6", "torus_7", "klein_8"] {
        let k = complex(name);
        let l = Lattice::new(&k);
        let classes = FlatClassSet::new(&k).unwrap();
        let chars: Vec<Vec<i8>> = classes.representatives().iter().map(|r| l.character(r).unwrap()).collect();
        let permitted: Vec<bool> = chars.iter().map(|c| c.iter().all(|&x| x == 1)).collect();
        let autos = k.automorphisms(10).unwrap();
        let identity: Vec<usize> = (0..k.num_vertices()).collect();
        assert!(autos.contains(&identity));
        for perm in &autos {
            let mut image = Vec::new();
            for (i, rep) in classes.representatives().iter().enumerate() {
                let j = automorphism_action(&k, &classes, perm, rep).unwrap() as usize;
                let moved = l.push_forward(perm, rep).unwrap();
                assert_eq!(l.character(&moved).unwrap(), chars[i], "{name}");
                assert_eq!(permitted[j], permitted[i], "{name}");
                image.push(j);
            }
            assert_eq!(image[0], 0);
            let mut sorted = image.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), classes.len(), "{name}: action is not a bijection");
        }
    }
    let k = complex("torus_7");
    let classes = FlatClassSet::new(&k).unwrap();
    let swap = [1, 0, 2, 3, 4, 5, 6];
    if !k.is_automorphism(&swap) {
        assert!(matches!(
            automorphism_action(&k, &classes, &swap, classes.representative(0)),
            Err(Error::NotAutomorphism(_))
        ));
    }
}

#[test]
fn torus_automorphisms_move_nontrivial_classes() {
    let k = complex("torus_7");
    let classes = FlatClassSet::new(&k).unwrap();
    let mut orbit = std::collections::BTreeSet::new();
    for perm in k.automorphisms(10).unwrap() {
        orbit.insert(automorphism_action(&k, &classes, &perm, classes.representative(1)).unwrap());
    }
    assert_eq!(orbit.into_iter().collect::<Vec<_>>(), vec![1, 2, 3]);
}
