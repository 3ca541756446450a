use proptest::prelude::*;

use spinab::catalog::Catalog;
use spinab::clifford::{CliffElt, Factor, Word};
use spinab::codes::{self, BinCode};
use spinab::fingrp::{closure, Ambient, GrpElt, DEFAULT_CAP};
use spinab::CycloElt;

fn cyclo() -> impl Strategy<Value = CycloElt> {
    prop::collection::vec((-4i128..=4, 1i128..=4), 16).prop_map(|c| CycloElt::from_coeffs(&c))
}

/// A few nonzero terms: inverses of dense elements can have coefficients past i128.
fn sparse_cyclo() -> impl Strategy<Value = CycloElt> {
    prop::collection::vec((0usize..16, -3i128..=3, 1i128..=3), 1..7).prop_map(|t| {
        let mut c = vec![(0i128, 1i128); 16];
        for (i, n, d) in t {
            c[i] = (n, d);
        }
        CycloElt::from_coeffs(&c)
    })
}

fn cliff(n: u32) -> impl Strategy<Value = CliffElt> {
    prop::collection::vec((0..1u32 << n, -3i64..=3), 1..5).prop_map(move |t| CliffElt::from_terms(n, t.into_iter().map(|(m, c)| (m, CycloElt::from_int(c)))))
}

/// Even words in the `r`, `rot` and `e_i e_j` generators of `Spin(n)`.
fn spin_word(n: u32) -> impl Strategy<Value = Word> {
    let pair = (1..=n, 1..n).prop_map(move |(i, d)| (i, (i - 1 + d) % n + 1));
    let factor = (pair, 0..3u8, 0i64..16).prop_map(|((i, j), kind, k)| match kind {
        0 => vec![Factor::R(i, j)],
        1 => vec![Factor::Rot(i, j, k)],
        _ => vec![Factor::E(i), Factor::E(j)],
    });
    prop::collection::vec(factor, 0..6).prop_map(|fs| Word(fs.concat()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in cyclo(), b in cyclo(), c in cyclo()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, CycloElt::zero());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn inverses(a in sparse_cyclo()) {
        if !a.is_zero() {
            let ai = a.inv().unwrap();
            prop_assert!((&a * &ai).is_one());
            prop_assert_eq!(ai.inv().unwrap(), a);
        }
    }

    #[test]
    fn cyclo_text_round_trip(a in cyclo()) {
        prop_assert_eq!(a.to_string().parse::<CycloElt>().unwrap(), a);
    }

    #[test]
    fn clifford_associative(a in cliff(6), b in cliff(6), c in cliff(6)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn reversion_is_antiautomorphism(a in cliff(7), b in cliff(7)) {
        prop_assert_eq!((&a * &b).reverse(), &b.reverse() * &a.reverse());
        prop_assert_eq!(a.reverse().reverse(), a);
    }

    #[test]
    fn vector_rep_is_homomorphism(w1 in spin_word(6), w2 in spin_word(6)) {
        let (g, h) = (w1.eval(6).unwrap(), w2.eval(6).unwrap());
        let gh = (&g * &h).vector_rep().unwrap();
        prop_assert_eq!(gh, g.vector_rep().unwrap().mul(&h.vector_rep().unwrap()));
        let minus = CliffElt::scalar(6, CycloElt::from_int(-1));
        prop_assert_eq!((&minus * &g).vector_rep().unwrap(), g.vector_rep().unwrap());
    }

    #[test]
    fn word_text_round_trip(w in spin_word(8)) {
        let back: Word = w.to_string().parse().unwrap();
        prop_assert_eq!(back.eval(8).unwrap(), w.eval(8).unwrap());
    }

    #[test]
    fn profile_is_conjugation_invariant(w in spin_word(7)) {
        let entry = Catalog::shipped().get("spin.F7").unwrap().clone();
        let f = entry.group(DEFAULT_CAP).unwrap();
        let h = GrpElt::Cliff(w.eval(7).unwrap());
        let gens: Vec<GrpElt> = entry.generators().unwrap().iter().map(|x| x.conj_by(&h).unwrap()).collect();
        let g = closure(&Ambient::Spin(7), &gens, &[], DEFAULT_CAP).unwrap();
        prop_assert_eq!(g.profile(), f.profile());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn canonical_form_is_permutation_invariant(p in Just((0..12).collect::<Vec<usize>>()).prop_shuffle()) {
        let c12 = Catalog::shipped().get("spin.F12").unwrap().code().unwrap();
        prop_assert_eq!(codes::canonical_form(&c12.permute(&p)), codes::canonical_form(&c12));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_separates_and_merges(rows in prop::collection::vec(0u32..1 << 10, 1..5), p in Just((0..10).collect::<Vec<usize>>()).prop_shuffle()) {
        let even: Vec<u32> = rows.into_iter().map(|r| if r.count_ones() % 2 == 1 { r ^ 1 } else { r }).collect();
        let mut basis: Vec<u32> = Vec::new();
        for r in even {
            let mut cand = basis.clone();
            cand.push(r);
            if BinCode::new(10, cand.clone()).is_ok() {
                basis = cand;
            }
        }
        let c = BinCode::new(10, basis).unwrap();
        let pc = c.permute(&p);
        prop_assert_eq!(codes::canonical_form(&pc), codes::canonical_form(&c));
        prop_assert_eq!(pc.weight_distribution(), c.weight_distribution());
    }
}
