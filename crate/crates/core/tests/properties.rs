use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qwick::diagrams::{collect_diagrams, validate};
use qwick::oracle::fold_letters;
use qwick::sweep::{engine_sweep, words_of_length, words_up_to};
use qwick::wick::{assemble_rook, normal_order_diagrams_with};
use qwick::{
    count_by_degree, count_diagrams, diagram_stats, enumerate_by_degree, enumerate_diagrams,
    normal_order_diagrams, normal_order_rewrite, parse_word, q_bracket, rook_coefficients,
    Execution, FeynmanDiagram, LetterType, Limits, NormalForm, QPolynomial, Word,
};

fn word_from_bits(bits: &[bool]) -> Word {
    bits.iter()
        .map(|&b| {
            if b {
                LetterType::Creator
            } else {
                LetterType::Annihilator
            }
        })
        .collect()
}

fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(any::<bool>(), 0..=max_len).prop_map(|b| word_from_bits(&b))
}

fn arb_poly() -> impl Strategy<Value = QPolynomial> {
    prop::collection::vec((0u64..12, 0u64..1000), 0..6).prop_map(QPolynomial::from_terms)
}

fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-20i64..20, 1i64..10).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// Every diagram by brute force: all subsets of admissible (annihilator, creator)
/// pairs that are pairwise disjoint.
fn brute_force_diagrams(w: &Word) -> Vec<Vec<(usize, usize)>> {
    let mut pairs = Vec::new();
    for i in 1..=w.len() {
        for j in i + 1..=w.len() {
            if w.at(i) == Some(LetterType::Annihilator) && w.at(j) == Some(LetterType::Creator) {
                pairs.push((i, j));
            }
        }
    }
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let chosen: Vec<(usize, usize)> = (0..pairs.len())
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| pairs[b])
            .collect();
        let mut ends: Vec<usize> = chosen.iter().flat_map(|&(i, j)| [i, j]).collect();
        ends.sort_unstable();
        ends.dedup();
        if ends.len() == 2 * chosen.len() {
            out.push(chosen);
        }
    }
    out
}

/// Weight exponent read literally off the definitions, by triple loops.
fn definitional_exponent(w: &Word, edges: &[(usize, usize)]) -> u64 {
    let paired = |p: usize| edges.iter().any(|&(i, j)| i == p || j == p);
    let mut c = 0;
    for &(ik, jk) in edges {
        for &(im, jm) in edges {
            if ik < im && im < jk && jk < jm {
                c += 1;
            }
        }
    }
    let mut d = 0;
    for &(i, j) in edges {
        for k in i + 1..j {
            if !paired(k) {
                d += 1;
            }
        }
    }
    let mut l = 0;
    for s in 1..=w.len() {
        if paired(s) || w.at(s) != Some(LetterType::Annihilator) {
            continue;
        }
        for t in s + 1..=w.len() {
            if !paired(t) && w.at(t) == Some(LetterType::Creator) {
                l += 1;
            }
        }
    }
    c + d + l
}

#[test]
fn enumeration_matches_brute_force() {
    for len in 0..=8 {
        for w in words_of_length(len) {
            let mut brute = brute_force_diagrams(&w);
            brute.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
            let ours: Vec<Vec<(usize, usize)>> =
                enumerate_diagrams(&w).map(|g| g.edges().to_vec()).collect();
            assert_eq!(ours, brute, "{w}");
        }
    }
}

#[test]
fn statistics_match_definitions() {
    for len in 0..=9 {
        for w in words_of_length(len) {
            for g in enumerate_diagrams(&w) {
                let s = diagram_stats(&w, &g).expect("enumerated diagrams are valid");
                assert_eq!(
                    s.weight_exponent,
                    definitional_exponent(&w, g.edges()),
                    "{w} / {g}"
                );
                assert_eq!(s.total_crossings, s.crossings + s.degenerate);
                assert_eq!(s.weight_exponent, s.total_crossings + s.length);
                assert_eq!(
                    s.singleton_creators + s.singleton_annihilators + 2 * g.degree(),
                    w.len()
                );
            }
        }
    }
}

#[test]
fn degree_counts_sum_to_total() {
    for len in 0..=12 {
        for w in words_of_length(len) {
            let per_degree: usize = (0..=len / 2 + 1)
                .map(|p| enumerate_by_degree(&w, p).count())
                .sum();
            assert_eq!(BigUint::from(per_degree), count_diagrams(&w), "{w}");
            let dp: BigUint = count_by_degree(&w).iter().sum();
            assert_eq!(dp, count_diagrams(&w));
        }
    }
}

#[test]
fn degree_beyond_half_length_is_empty() {
    for w in words_up_to(7) {
        assert_eq!(enumerate_by_degree(&w, w.len() / 2 + 1).count(), 0);
    }
}

#[test]
fn prepend_creator_covariance() {
    for w in words_up_to(9) {
        let base = normal_order_diagrams(&w).unwrap();
        let shifted = normal_order_diagrams(&w.prepended(LetterType::Creator)).unwrap();
        assert_eq!(shifted.len(), base.len());
        for ((k, l), p) in base.iter() {
            assert_eq!(shifted.get((k + 1, l)), Some(p), "{w}");
        }
    }
}

#[test]
fn diagonal_normal_form_for_number_operator_powers() {
    for n in 1..=7 {
        let nf = normal_order_diagrams(&Word::number_power(n)).unwrap();
        assert!(nf.shapes().all(|(k, l)| k == l), "n = {n}");
        assert_eq!(nf.len(), n);
    }
}

#[test]
fn random_words_of_length_11_to_14_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);
    let words: Vec<Word> = (0..500)
        .map(|_| {
            let len = rng.gen_range(11..=14);
            (0..len)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        LetterType::Creator
                    } else {
                        LetterType::Annihilator
                    }
                })
                .collect()
        })
        .collect();
    let report = engine_sweep(&words, Limits::default(), Execution::default()).unwrap();
    assert_eq!(report.words_checked, 500);
    assert!(
        report.all_agree(),
        "first mismatch: {:?}",
        report.mismatches.first()
    );
}

#[test]
fn parallel_and_sequential_paths_agree() {
    let w = parse_word("(c c c+ c+ c c+)^3").unwrap();
    let seq = collect_diagrams(&w, Limits::default(), Execution::Sequential).unwrap();
    let par = collect_diagrams(&w, Limits::default(), Execution::Parallel).unwrap();
    assert_eq!(seq, par);
    assert_eq!(seq, enumerate_diagrams(&w).collect::<Vec<_>>());
    assert_eq!(
        rook_coefficients(&w).unwrap(),
        qwick::wick::rook_coefficients_with(&w, Limits::default(), Execution::Sequential).unwrap()
    );
    assert_eq!(
        normal_order_diagrams_with(&w, Limits::default(), Execution::Sequential).unwrap(),
        normal_order_rewrite(&w)
    );
}

#[test]
fn q_bracket_at_one_is_its_argument() {
    for a in 0..=100u64 {
        assert_eq!(q_bracket(a).eval_at_one(), BigUint::from(a));
    }
}

#[test]
fn figure_one_diagram_text_round_trip() {
    let g = FeynmanDiagram::parse("1-3,2-6,4-9,5-7,8-12").unwrap();
    assert_eq!(g.to_string(), "1-3,2-6,4-9,5-7,8-12");
}

proptest! {
    #[test]
    fn word_text_round_trip(w in arb_word(40)) {
        prop_assert_eq!(parse_word(&w.render_text()).unwrap(), w);
    }

    #[test]
    fn group_power_length(g in arb_word(6).prop_filter("nonempty", |w| !w.is_empty()), k in 1usize..20) {
        let text = format!("({})^{k}", g.render_text());
        let w = parse_word(&text).unwrap();
        prop_assert_eq!(w.len(), k * g.len());
        prop_assert_eq!(w, g.repeat(k));
    }

    #[test]
    fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in arb_poly(), b in arb_poly(), q in arb_rational()) {
        prop_assert_eq!((&a * &b).eval(&q), a.eval(&q) * b.eval(&q));
        prop_assert_eq!((&a + &b).eval(&q), a.eval(&q) + b.eval(&q));
    }

    #[test]
    fn enumerated_diagrams_are_valid_and_unique(w in arb_word(12)) {
        let all: Vec<FeynmanDiagram> = enumerate_diagrams(&w).collect();
        for g in &all {
            prop_assert!(validate(&w, g).is_ok());
        }
        let mut sorted = all.clone();
        sorted.sort_by(|a, b| a.degree().cmp(&b.degree()).then(a.edges().cmp(b.edges())));
        sorted.dedup();
        prop_assert_eq!(sorted, all);
    }

    #[test]
    fn empty_diagram_exponent_counts_inversions(w in arb_word(30)) {
        let s = diagram_stats(&w, &FeynmanDiagram::empty()).unwrap();
        let mut expected = 0u64;
        for i in 1..=w.len() {
            if w.at(i) == Some(LetterType::Annihilator) {
                expected += (i + 1..=w.len()).filter(|&j| w.at(j) == Some(LetterType::Creator)).count() as u64;
            }
        }
        prop_assert_eq!(s.weight_exponent, expected);
        prop_assert_eq!((s.crossings, s.degenerate), (0, 0));
    }

    #[test]
    fn prepending_a_creator_preserves_weights(w in arb_word(11)) {
        let longer = w.prepended(LetterType::Creator);
        let before: Vec<_> = enumerate_diagrams(&w).collect();
        let after: Vec<_> = enumerate_diagrams(&longer).collect();
        prop_assert_eq!(before.len(), after.len());
        for (g, h) in before.iter().zip(&after) {
            let shifted: Vec<_> = g.edges().iter().map(|&(i, j)| (i + 1, j + 1)).collect();
            prop_assert_eq!(h.edges(), &shifted[..]);
            prop_assert_eq!(
                diagram_stats(&w, g).unwrap().weight_exponent,
                diagram_stats(&longer, h).unwrap().weight_exponent
            );
        }
    }

    #[test]
    fn rewrite_matches_sparse_fold(w in arb_word(40)) {
        prop_assert_eq!(normal_order_rewrite(&w), fold_letters(w.letters(), &NormalForm::unit()));
    }

    #[test]
    fn rewrite_composes_over_splits(w in arb_word(40), cut in any::<prop::sample::Index>()) {
        let at = cut.index(w.len() + 1);
        let (u, v) = w.letters().split_at(at);
        let folded = fold_letters(u, &normal_order_rewrite(&Word::new(v.to_vec())));
        prop_assert_eq!(normal_order_rewrite(&w), folded);
    }

    #[test]
    fn normal_form_keys_are_degree_graded(w in arb_word(60)) {
        let (m, n) = w.counts();
        let nf = normal_order_rewrite(&w);
        for ((k, l), p) in nf.iter() {
            prop_assert!(k <= m && l <= n && m - k == n - l);
            prop_assert!(!p.is_zero());
        }
    }

    #[test]
    fn rook_reassembly(w in arb_word(12)) {
        let (m, n) = w.counts();
        let rook = rook_coefficients(&w).unwrap();
        prop_assert_eq!(rook.len(), m.min(n) + 1);
        prop_assert_eq!(assemble_rook(&rook, m, n), normal_order_diagrams(&w).unwrap());
        let at_one: Vec<BigUint> = rook.iter().map(QPolynomial::eval_at_one).collect();
        prop_assert_eq!(at_one, count_by_degree(&w));
    }
}
