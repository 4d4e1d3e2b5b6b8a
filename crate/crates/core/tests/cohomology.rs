mod common;

use common::{betti_of, complex, BUILTINS};
use gds_core::cohomology::{
    betti_numbers, boundary_matrix, coboundary, coboundary_matrix, cohomology_basis, cup, fundamental_pairing,
    is_cocycle, steenrod_square,
};
use gds_core::{BitVector, Cochain, CohomologyRing, Error, SimplicialComplex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_cochain(rng: &mut ChaCha8Rng, k: &SimplicialComplex, deg: usize) -> Cochain {
    let bits: Vec<bool> = (0..k.count(deg)).map(|_| rng.gen()).collect();
    Cochain::from_values(deg, BitVector::from_bools(&bits))
}

fn random_cocycle(rng: &mut ChaCha8Rng, k: &SimplicialComplex, deg: usize) -> Cochain {
    let mut v = BitVector::zeros(k.count(deg));
    for b in coboundary_matrix(k, deg).nullspace().basis {
        if rng.gen() {
            v.xor_assign(&b);
        }
    }
    Cochain::from_values(deg, v)
}

/// Front-face/back-face product evaluated simplex by simplex.
fn cup_oracle(k: &SimplicialComplex, x: &Cochain, y: &Cochain) -> Vec<bool> {
    let (p, q) = (x.degree(), y.degree());
    k.simplices(p + q)
        .iter()
        .map(|s| {
            let v = s.vertices();
            x.get(k.index_of(&v[..=p]).unwrap()) && y.get(k.index_of(&v[p..]).unwrap())
        })
        .collect()
}

fn values(x: &Cochain) -> Vec<bool> {
    (0..x.values().len()).map(|i| x.get(i)).collect()
}

#[test]
fn betti_numbers_match_independent_ranks() {
    for name in BUILTINS.iter().chain(["klein_8", "product(circle(3),rp2_6)", "union(sphere(2),sphere(2))"].iter()) {
        assert_eq!(betti_numbers(&complex(name)), betti_of(name), "{name}");
    }
}

#[test]
fn coboundary_squares_to_zero() {
    for name in BUILTINS {
        let k = complex(name);
        for deg in 1..k.dim() {
            let d = boundary_matrix(&k, deg).unwrap().mul(&boundary_matrix(&k, deg + 1).unwrap());
            assert!(d.is_zero(), "{name} boundary {deg}");
            let delta = coboundary_matrix(&k, deg).mul(&coboundary_matrix(&k, deg - 1));
            assert!(delta.is_zero(), "{name} coboundary {deg}");
        }
    }
}

#[test]
fn boundary_matrix_ranks() {
    let c3 = complex("circle(3)");
    let d = boundary_matrix(&c3, 1).unwrap();
    assert_eq!((d.rows(), d.cols(), d.rank()), (3, 3, 2));
    assert_eq!(boundary_matrix(&complex("sphere(2)"), 2).unwrap().rank(), 3);
}

#[test]
fn cohomology_ranks() {
    assert_eq!(cohomology_basis(&complex("rp2_6"), 1).unwrap().rank(), 1);
    assert_eq!(cohomology_basis(&complex("torus_7"), 1).unwrap().rank(), 2);
    for d in 1..=4 {
        let k = complex(&format!("sphere({d})"));
        for deg in 0..=d {
            let expected = usize::from(deg == 0 || deg == d);
            assert_eq!(cohomology_basis(&k, deg).unwrap().rank(), expected, "sphere({d}) H^{deg}");
        }
    }
}

#[test]
fn coordinates_kill_coboundaries_and_reject_non_cocycles() {
    let k = complex("torus_7");
    let basis = cohomology_basis(&k, 1).unwrap();
    for (i, rep) in basis.representatives().iter().enumerate() {
        assert_eq!(basis.coordinates(rep).unwrap(), BitVector::unit(2, i));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let f = random_cochain(&mut rng, &k, 0);
        assert!(basis.coordinates(&coboundary(&k, &f)).unwrap().is_zero());
    }
    let edge = Cochain::from_values(1, BitVector::unit(k.count(1), 0));
    assert!(matches!(basis.coordinates(&edge), Err(Error::NotACocycle(1))));
}

#[test]
fn cup_matches_front_back_formula_and_leibniz() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in ["sphere(2)", "rp2_6", "torus_7", "rp3_11", "cp2_9"] {
        let k = complex(name);
        for _ in 0..10 {
            let p = rng.gen_range(0..=k.dim());
            let q = rng.gen_range(0..=k.dim() - p);
            let x = random_cochain(&mut rng, &k, p);
            let y = random_cochain(&mut rng, &k, q);
            let xy = cup(&k, &x, &y);
            assert_eq!(values(&xy), cup_oracle(&k, &x, &y), "{name}");
            if p + q < k.dim() {
                let lhs = coboundary(&k, &xy);
                let rhs = cup(&k, &coboundary(&k, &x), &y).add(&cup(&k, &x, &coboundary(&k, &y)));
                assert_eq!(lhs, rhs, "{name} Leibniz in degrees {p}, {q}");
            }
        }
    }
}

#[test]
fn cup_with_unit_and_above_top_degree() {
    let k = complex("rp2_6");
    let x = random_cocycle(&mut ChaCha8Rng::seed_from_u64(1), &k, 1);
    assert_eq!(cup(&k, &Cochain::unit(&k), &x), x);
    let top = Cochain::from_values(2, BitVector::unit(k.count(2), 0));
    assert!(cup(&k, &x, &top).is_zero());
}

#[test]
fn square_of_generator_on_rp2_pairs_to_one() {
    let k = complex("rp2_6");
    let z = cohomology_basis(&k, 1).unwrap().representatives()[0].clone();
    let zz = cup_oracle(&k, &z, &z);
    assert!(zz.iter().filter(|&&b| b).count() % 2 == 1);
    assert!(fundamental_pairing(&k, &cup(&k, &z, &z)).unwrap());
}

#[test]
fn squares_vanish_on_torus() {
    let k = complex("torus_7");
    let ring = CohomologyRing::new(&k).unwrap();
    for a in ring.enumerate(1) {
        assert!(ring.mul(&a, &a).is_zero());
    }
    let (a, b) = (ring.basis_class(1, 0), ring.basis_class(1, 1));
    assert!(ring.pair(&ring.mul(&a, &b)));
}

#[test]
fn rp2_ring_is_truncated_polynomial() {
    let ring = CohomologyRing::new(&complex("rp2_6")).unwrap();
    let z = ring.basis_class(1, 0);
    let z2 = ring.mul(&z, &z);
    assert!(!z2.is_zero() && z2.is_homogeneous_of(2));
    assert!(ring.mul(&z2, &z).is_zero());
}

#[test]
fn sphere3_middle_products_vanish() {
    let ring = CohomologyRing::new(&complex("sphere(3)")).unwrap();
    assert_eq!(ring.betti_numbers(), vec![1, 0, 0, 1]);
    let top = ring.basis_class(3, 0);
    assert!(ring.pair(&top));
    assert!(ring.mul(&top, &top).is_zero());
}

#[test]
fn steenrod_square_examples() {
    let k = complex("rp3_11");
    let z = cohomology_basis(&k, 1).unwrap().representatives()[0].clone();
    let ring = CohomologyRing::new(&k).unwrap();
    let sq1 = ring.class_of(&steenrod_square(&k, 1, &z).unwrap()).unwrap();
    let zz = ring.class_of(&cup(&k, &z, &z)).unwrap();
    assert_eq!(sq1, zz);
    assert!(!zz.is_zero());
    assert!(steenrod_square(&k, 2, &z).unwrap().is_zero());

    let not_cocycle = Cochain::from_values(1, BitVector::unit(k.count(1), 0));
    assert!(matches!(steenrod_square(&k, 1, &not_cocycle), Err(Error::NotACocycle(1))));
}

#[test]
fn steenrod_axioms_on_random_cocycles() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for name in BUILTINS {
        let k = complex(name);
        let ring = CohomologyRing::new(&k).unwrap();
        for deg in 1..=k.dim() {
            for _ in 0..10 {
                let x = random_cocycle(&mut rng, &k, deg);
                let cx = ring.class_of(&x).unwrap();
                assert_eq!(ring.class_of(&steenrod_square(&k, 0, &x).unwrap()).unwrap(), cx);
                if 2 * deg <= k.dim() {
                    let sq = steenrod_square(&k, deg, &x).unwrap();
                    assert_eq!(ring.class_of(&sq).unwrap(), ring.class_of(&cup(&k, &x, &x)).unwrap());
                }
                for i in deg + 1..=k.dim() - deg {
                    assert!(steenrod_square(&k, i, &x).unwrap().is_zero());
                }
                for i in 1..=k.dim() - deg {
                    assert!(is_cocycle(&k, &steenrod_square(&k, i, &x).unwrap()));
                }
            }
        }
    }
}

#[test]
fn fundamental_pairing_values() {
    for name in BUILTINS {
        let k = complex(name);
        let d = k.dim();
        assert!(!fundamental_pairing(&k, &Cochain::zero(&k, d)).unwrap());
        let top = cohomology_basis(&k, d).unwrap().representatives()[0].clone();
        let brute = (0..k.count(d)).filter(|&i| top.get(i)).count() % 2 == 1;
        assert_eq!(fundamental_pairing(&k, &top).unwrap(), brute);
        assert!(brute, "{name} top generator pairs to 1");
        assert!(matches!(fundamental_pairing(&k, &Cochain::zero(&k, 0)), Err(Error::BadDegree { .. })));
    }
}

#[test]
fn pairing_is_nondegenerate() {
    for name in BUILTINS {
        let ring = CohomologyRing::new(&complex(name)).unwrap();
        for deg in 0..=ring.dim() {
            assert_eq!(ring.pairing_matrix(deg).rank(), ring.rank(deg), "{name} degree {deg}");
        }
    }
}

/// Betti numbers, the number of classes with `<a^2, [M]> = 1` (surfaces) and
/// the Stiefel-Whitney numbers `<w_i w_{d-i}>`.
fn invariants(k: &SimplicialComplex) -> (Vec<usize>, usize, Vec<bool>) {
    let ring = CohomologyRing::new(k).unwrap();
    let squares = if k.dim() == 2 {
        ring.enumerate(1).iter().filter(|a| ring.pair(&ring.mul(a, a))).count()
    } else {
        0
    };
    let sw = gds_core::char_classes::stiefel_whitney(&ring).unwrap();
    let d = ring.dim();
    let numbers = (0..=d).map(|i| ring.pair(&ring.mul(&sw.w(&ring, i), &sw.w(&ring, d - i)))).collect();
    (ring.betti_numbers(), squares, numbers)
}

#[test]
fn invariants_survive_relabeling_and_subdivision() {
    for name in ["rp2_6", "torus_7", "klein_8", "rp3_11"] {
        let k = complex(name);
        let n = k.num_vertices();
        let perm: Vec<usize> = (0..n).map(|v| (n - 1 - v + 3) % n).collect();
        let base = invariants(&k);
        assert_eq!(invariants(&k.relabel(&perm).unwrap()), base, "{name} relabeled");
        if k.dim() == 2 {
            assert_eq!(invariants(&k.barycentric_subdivision()), base, "{name} subdivided");
        }
    }
}
