mod common;

use common::{hermite_equal, random_gl_r, random_laurent_matrix, rng};
use dessin_core::grassmann::{contains, lattice_equal, validate_flag, LatticeBasis, LatticeError, LatticeFlag};
use dessin_core::laurent::LaurentMatrix;
use proptest::prelude::*;
use rand::Rng;

const P: i64 = 16;

fn basis(seed: u64, n: usize) -> LatticeBasis {
    let mut r = rng(seed);
    loop {
        if let Ok(b) = LatticeBasis::new(random_laurent_matrix(&mut r, n, -1, 2, P)) {
            return b;
        }
    }
}

/// A second basis of the same lattice, or of a lattice one step smaller.
fn rebased(l: &LatticeBasis, seed: u64, shrink: bool) -> LatticeBasis {
    let mut r = rng(seed);
    let mut g = random_gl_r(&mut r, l.n(), P);
    if shrink {
        let c = r.gen_range(0..l.n());
        for row in 0..l.n() {
            let e = g.get(row, c).shift(1);
            g.set(row, c, e);
        }
    }
    LatticeBasis::new(l.matrix().mul(&g).unwrap()).unwrap()
}

proptest! {
    #[test]
    fn equality_is_an_equivalence(seed: u64, n in 1usize..4) {
        let a = basis(seed, n);
        let b = rebased(&a, seed ^ 1, false);
        let c = rebased(&b, seed ^ 2, false);
        prop_assert_eq!(lattice_equal(&a, &a), Ok(true));
        prop_assert_eq!(lattice_equal(&a, &b), Ok(true));
        prop_assert_eq!(lattice_equal(&b, &a), Ok(true));
        prop_assert_eq!(lattice_equal(&a, &c), Ok(true));
    }

    #[test]
    fn containment_is_a_partial_order(seed: u64, n in 1usize..4) {
        let a = basis(seed, n);
        let b = rebased(&a, seed ^ 3, true);
        let c = rebased(&b, seed ^ 4, true);
        prop_assert_eq!(contains(&a, &b), Ok(true));
        prop_assert_eq!(contains(&b, &a), Ok(false));
        prop_assert_eq!(contains(&a, &c), Ok(true));
        prop_assert_eq!(lattice_equal(&a, &b), Ok(false));
        prop_assert_eq!(b.component_index().unwrap(), a.component_index().unwrap() + 1);
    }

    #[test]
    fn component_index_is_additive(seed: u64, n in 1usize..4) {
        let a = basis(seed, n);
        let mut r = rng(seed ^ 5);
        let g = random_laurent_matrix(&mut r, n, -1, 2, P);
        if let (Ok(dg), Ok(moved)) = (g.det_ord(), a.act(&g)) {
            prop_assert_eq!(moved.component_index().unwrap(), dg + a.component_index().unwrap());
        }
    }

    #[test]
    fn agrees_with_hermite_oracle(seed: u64, n in 1usize..4, same: bool) {
        let a = basis(seed, n);
        let b = if same { rebased(&a, seed ^ 6, false) } else { basis(seed ^ 7, n) };
        let ours = lattice_equal(&a, &b);
        let oracle = hermite_equal(a.matrix(), b.matrix());
        match (ours, oracle) {
            (Ok(x), Some(y)) => prop_assert_eq!(x, y),
            (Err(LatticeError::Undecidable(_)), _) => {}
            (Ok(_), None) => {}
            (Err(e), _) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn json_round_trip(seed: u64, n in 1usize..4) {
        let a = basis(seed, n);
        let j = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<LatticeBasis>(&j).unwrap(), a);
    }
}

#[test]
fn shifted_standard_flags_stay_valid() {
    for n in 1..5 {
        let f = dessin_core::grassmann::standard_flag(n, P);
        let g = random_gl_r(&mut rng(n as u64), n, P);
        let moved = LatticeFlag { chain: f.chain.iter().map(|l| l.act(&g).unwrap()).collect() };
        assert!(validate_flag(&moved).unwrap().valid);
        let scaled = LatticeFlag { chain: f.chain.iter().map(|l| l.act(&LaurentMatrix::identity(n, P).shift(2)).unwrap()).collect() };
        assert!(validate_flag(&scaled).unwrap().valid);
    }
}
