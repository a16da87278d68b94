use dessin_core::permgroup::{Constellation, MonodromyOrder, Permutation, DEFAULT_MONODROMY_CAP};
use dessin_core::quiver::{check_surface_axioms, medial_quiver, nonzero_cycle_lengths};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn perm(degree: usize, seed: u64) -> Permutation {
    Permutation::random(degree, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn constellation(half_degree: usize, seed: u64) -> Constellation {
    Constellation::random(2 * half_degree, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

proptest! {
    #[test]
    fn compose_is_associative(n in 1usize..10, a: u64, b: u64, c: u64) {
        let (p, q, r) = (perm(n, a), perm(n, b), perm(n, c));
        let left = p.compose(&q).unwrap().compose(&r).unwrap();
        let right = p.compose(&q.compose(&r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        prop_assert!(p.inverse().compose(&p).unwrap().is_identity());
    }

    #[test]
    fn cycle_type_is_conjugation_invariant(n in 1usize..10, a: u64, b: u64) {
        let (p, g) = (perm(n, a), perm(n, b));
        let conj = g.compose(&p).unwrap().compose(&g.inverse()).unwrap();
        prop_assert_eq!(conj.cycle_type(), p.cycle_type());
    }

    #[test]
    fn involutions_have_half_as_many_cycles(half in 1usize..7, seed: u64) {
        let a = Permutation::random_fpf_involution(2 * half, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(a.is_fixed_point_free_involution());
        prop_assert_eq!(a.cycles().len(), half);
        prop_assert!(a.cycles().iter().all(|c| c.len() == 2));
    }

    #[test]
    fn surfaces_are_orientable(half in 1usize..7, seed: u64) {
        let c = constellation(half, seed);
        prop_assert!(c.validate().valid);
        let s = c.surface_data().unwrap();
        prop_assert_eq!(s.euler_characteristic % 2, 0);
        prop_assert!(s.euler_characteristic <= 2);
        prop_assert_eq!(s.edges, half);
        prop_assert_eq!(s.vertices as i64 - s.edges as i64 + s.faces as i64, s.euler_characteristic);
    }

    #[test]
    fn monodromy_order_divides_factorial(half in 1usize..5, seed: u64) {
        let c = constellation(half, seed);
        let d = c.degree();
        match c.monodromy_order(DEFAULT_MONODROMY_CAP).unwrap() {
            MonodromyOrder::Order(k) => {
                prop_assert!(k >= d);
                prop_assert_eq!(factorial(d) % k as u128, 0);
            }
            MonodromyOrder::Overflow => prop_assert!(factorial(d) > DEFAULT_MONODROMY_CAP as u128),
        }
    }

    #[test]
    fn medial_quivers_are_gentle(half in 1usize..7, seed: u64) {
        let c = constellation(half, seed);
        let (q, ideal) = medial_quiver(&c).unwrap();
        prop_assert!(check_surface_axioms(&q, &ideal).all);
        prop_assert_eq!(q.arrows.len(), c.degree());
        prop_assert_eq!(q.vertices.len(), half);
        let lengths = nonzero_cycle_lengths(&q, &ideal).unwrap();
        prop_assert_eq!(lengths.values().sum::<usize>(), q.arrows.len());
        let mut sigma_lengths = c.sigma().cycle_type();
        sigma_lengths.sort_unstable();
        let mut from_quiver: Vec<usize> = lengths.values().copied().collect();
        from_quiver.sort_unstable();
        prop_assert_eq!(from_quiver, sigma_lengths);
    }

    #[test]
    fn json_round_trip(half in 1usize..6, seed: u64) {
        let c = constellation(half, seed);
        let j = serde_json::to_string(&c).unwrap();
        prop_assert_eq!(serde_json::from_str::<Constellation>(&j).unwrap(), c);
    }
}
