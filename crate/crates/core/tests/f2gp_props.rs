use std::cmp::Ordering;
use std::collections::HashSet;

use dessin_core::f2gp::{compare, decode, encode, sym_rep, Direction, Letter, ReducedWord, StringModule};
use proptest::prelude::*;

fn word(right: bool, bits: &[bool]) -> ReducedWord {
    let (one, zero) = if right { (Letter::X, Letter::YInv) } else { (Letter::XInv, Letter::Y) };
    let letters: Vec<Letter> = bits.iter().map(|&b| if b { one } else { zero }).collect();
    ReducedWord::new(&letters).unwrap()
}

fn any_word() -> impl Strategy<Value = ReducedWord> {
    (any::<bool>(), prop::collection::vec(any::<bool>(), 0..=12)).prop_map(|(r, b)| word(r, &b))
}

proptest! {
    #[test]
    fn compare_is_a_strict_total_order(a in any_word(), b in any_word(), c in any_word()) {
        prop_assert_eq!(compare(&a, &b), compare(&b, &a).reverse());
        prop_assert_eq!(compare(&a, &b) == Ordering::Equal, a == b);
        if compare(&a, &b) == Ordering::Less && compare(&b, &c) == Ordering::Less {
            prop_assert_eq!(compare(&a, &c), Ordering::Less);
        }
    }

    #[test]
    fn encoding_round_trips(w in any_word()) {
        prop_assert_eq!(decode(&encode(&w)).unwrap(), w.clone());
        prop_assert_eq!(w.to_string().parse::<ReducedWord>().unwrap(), w.clone());
        let j = serde_json::to_string(&w).unwrap();
        prop_assert_eq!(serde_json::from_str::<ReducedWord>(&j).unwrap(), w);
    }

    #[test]
    fn extending_moves_outward(right: bool, bits in prop::collection::vec(any::<bool>(), 1..=10)) {
        let w = word(right, &bits);
        let (down, up) = if right { (Letter::X, Letter::YInv) } else { (Letter::Y, Letter::XInv) };
        prop_assert_eq!(compare(&w.extend(down).unwrap(), &w), Ordering::Less);
        prop_assert_eq!(compare(&w.extend(up).unwrap(), &w), Ordering::Greater);
    }

    #[test]
    fn string_modules_are_gp_modules(w in any_word()) {
        let m = StringModule::from_word(&w);
        prop_assert!(m.x.try_mul(&m.y).unwrap().is_zero());
        prop_assert!(m.y.try_mul(&m.x).unwrap().is_zero());
        prop_assert!(m.x.pow(m.dim).unwrap().is_zero());
        prop_assert!(m.y.pow(m.dim).unwrap().is_zero());
        prop_assert_eq!(m.dim, w.len() + 1);
    }
}

#[test]
fn encoding_is_injective_per_class() {
    for right in [true, false] {
        for len in 0..=10 {
            let codes: HashSet<String> = (0u32..1 << len)
                .map(|mask| {
                    let bits: Vec<bool> = (0..len).map(|i| mask >> i & 1 == 1).collect();
                    encode(&word(right, &bits)).bits
                })
                .collect();
            assert_eq!(codes.len(), 1 << len);
        }
    }
    assert_eq!(word(true, &[]).direction(), Direction::Empty);
}

#[test]
fn sym_weights_are_symmetric() {
    for n in 0..=8 {
        let s = sym_rep(n);
        assert!(s.commutators_hold());
        let w = s.weights();
        let mut rev = w.clone();
        rev.reverse();
        assert_eq!(w.iter().map(|v| -v).collect::<Vec<_>>(), rev);
        assert_eq!(w.iter().collect::<HashSet<_>>().len(), n + 1);
    }
}
