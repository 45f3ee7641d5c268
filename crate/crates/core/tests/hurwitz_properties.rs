use std::collections::BTreeSet;

use hf_core::hurwitz::{
    convolution_oracle, count_simple_monodromy, enumerate_simple_monodromy, tuple_genus, Permutation,
};
use hf_core::stable_map::riemann_hurwitz_genus;

#[test]
fn enumeration_matches_oracle() {
    for d in 2..=5 {
        for n in 0..=8 {
            let count = count_simple_monodromy(d, n).unwrap();
            let oracle = convolution_oracle(d, n).unwrap();
            assert_eq!(count, oracle.transitive, "d={d} n={n}");
            if n % 2 == 1 {
                assert_eq!(count, 0);
            }
        }
    }
}

#[test]
fn conjugation_permutes_tuples() {
    for d in 2..=4 {
        for n in [2, 4, 6] {
            let tuples: BTreeSet<_> = enumerate_simple_monodromy(d, n).unwrap().into_iter().collect();
            for sigma in Permutation::all(d) {
                let image: BTreeSet<_> = tuples.iter().map(|t| t.conjugate(&sigma)).collect();
                assert_eq!(image, tuples, "d={d} n={n}");
            }
        }
    }
}

#[test]
fn genus_of_every_tuple() {
    for d in 2..=4 {
        for n in [2, 4, 6] {
            let expected = riemann_hurwitz_genus(d as i64, 0, n as i64).ok();
            for t in enumerate_simple_monodromy(d, n).unwrap() {
                let g = tuple_genus(&t).unwrap();
                assert!(g >= 0);
                assert_eq!(Some(g), expected);
            }
        }
    }
    assert_eq!(riemann_hurwitz_genus(2, 0, 4), Ok(1));
}
