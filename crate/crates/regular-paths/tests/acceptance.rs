//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Run with `cargo test -p regular-paths --test acceptance -- --nocapture`
//! to see the per-criterion lines.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use regular_paths::oracle::{
    automaton_accepts, enumerate_signatures, enumerate_wiring_diagrams,
    irreducible_equal_count_signatures, six_tangent_upper_envelope, verify_ck3,
    verify_envelope_theorems, verify_pach_toth_construction, EnumerationBudget,
    SIX_TANGENT_SIGNATURE,
};
use regular_paths::signature::Signature;
use regular_paths::sweep::{envelopes, has_valid_matching, is_geometric, local_sequences};
use regular_paths::tableau::{phi_sequence, phi_tableau, word_of_regular_tableau, Tableau};
use regular_paths::word::{
    factor_blocks, parse_word, LetterPair, Orientation, PairBlock, Word, ABCD, XYZ,
};

fn pass(criterion: usize, message: &str) {
    println!("PASS criterion {criterion}: {message}");
}

fn abcd(text: &str) -> Word<char> {
    parse_word(text, &ABCD).unwrap()
}

fn sig(text: &str) -> Signature {
    Signature::parse(text).unwrap()
}

fn word_of_blocks(blocks: &[PairBlock]) -> Word<char> {
    let mut letters = Vec::new();
    for b in blocks {
        letters.extend(b.letters());
    }
    Word::new(letters, ABCD.to_vec()).unwrap()
}

/// Criterion 1: the worked reference examples reproduce byte-exactly.
#[test]
fn criterion_1_paper_example_fidelity() {
    // normal form
    assert_eq!(
        Word::from_letters(vec![4u32, 2, 6, 6, 7]).normalize(),
        vec![2, 1, 3, 3, 4]
    );
    // block sizes
    assert_eq!(
        factor_blocks(&abcd("(a^2b^2)(ba)(ab)"), ('a', 'b'))
            .unwrap()
            .sizes(),
        vec![2, 1, 1]
    );
    // exponent sequence
    assert_eq!(
        abcd("a^2bac^3a^5").exponent_sequence('a'),
        vec![2, 1, 5]
    );
    // restriction of the signature example
    let s = sig("xy^3zx^2z^2");
    let (xy, xz, yz) = s.restrictions();
    assert_eq!(xy.letters().iter().collect::<String>(), "xyyyxx");
    assert_eq!(xz.letters().iter().collect::<String>(), "xzxxzz");
    assert_eq!(yz.letters().iter().collect::<String>(), "yyyzzz");

    // the canonical sequence on [3]
    assert_eq!(
        phi_sequence(&abcd("(ab)(a^2b^2)(ba)"), 3).unwrap().letters(),
        &[1, 2, 3, 1, 1, 2, 2, 3, 3, 3, 2, 1]
    );

    // the canonical tableau of (ab)(d^2c^2)(ba) on [4]
    let t = phi_tableau(&abcd("(ab)(d^2c^2)(ba)"), 4).unwrap();
    assert_eq!(t.row(0).letters(), &[4, 4, 3, 3, 2, 2]);
    assert_eq!(t.row(1).letters(), &[1, 4, 4, 3, 3, 1]);
    assert_eq!(t.row(2).letters(), &[1, 2, 4, 4, 2, 1]);
    assert_eq!(t.row(3).letters(), &[1, 2, 3, 3, 2, 1]);

    // the sweep walkthrough permutation sequence
    let walkthrough = Tableau::new(
        vec![1, 2, 3],
        vec![vec![2, 3, 3, 2], vec![1, 1, 3, 3], vec![1, 1, 2, 2]],
    )
    .unwrap();
    let diagram = is_geometric(&walkthrough).expect("walkthrough is realizable");
    assert_eq!(
        diagram.snapshots(),
        vec![
            vec![1, 2, 3],
            vec![2, 1, 3],
            vec![2, 3, 1],
            vec![2, 1, 3],
            vec![1, 2, 3],
            vec![1, 3, 2],
            vec![1, 2, 3],
        ]
    );

    // the three associated-word examples
    assert_eq!(
        sig("xy^4x^3z^4x^2zy^2z").associated_word().unwrap(),
        abcd("(a^4b^4)(cd)(d^3c^3)(ba)(ab)(c^2d^2)")
    );
    assert_eq!(
        sig("xy^2x^2yzx^4z^3y^4z^3").associated_word().unwrap(),
        abcd("(a^3b^3)(cd)(ba)(a^3b^3)(dc)(cd)(c^4d^4)")
    );
    assert_eq!(
        sig("xy^2x^4yz^4y^2z").associated_word().unwrap(),
        abcd("(a^3b^3)(ba)(ab)(cd)(dc)(c^3d^3)")
    );

    // the certificate of the first example and of xyz
    let cert = sig("xy^4x^3z^4x^2zy^2z").condition2().unwrap().unwrap();
    assert_eq!((cert.p, cert.q), (4, 2));
    let cert = sig("xyz").condition2().unwrap().unwrap();
    assert_eq!((cert.p, cert.q), (1, 0));

    // one non-extendable and one extendable reference signature
    assert!(!sig("xy^2x^4yz^4y^2z").is_extendable().unwrap());
    assert!(sig("xy^2x^3z^2xyz^2y^2z").is_extendable().unwrap());

    // the three envelope outcomes on [4]
    let odd = envelopes(&phi_tableau(&abcd("(ab)(cd)"), 4).unwrap());
    assert_eq!(odd.upper.iter().copied().collect::<Vec<_>>(), vec![1, 4]);
    assert!(odd.lower_convex);
    let even = envelopes(&phi_tableau(&abcd("(a^2b^2)(cd)(dc)"), 4).unwrap());
    assert!(even.upper_convex);
    assert_eq!(even.lower.iter().copied().collect::<Vec<_>>(), vec![1, 2]);
    let mixed = envelopes(&phi_tableau(&abcd("(a^2b^2)(ba)(ab)(cd)(dc)(c^2d^2)"), 4).unwrap());
    assert!(mixed.upper_convex && mixed.lower_convex);

    pass(1, "worked reference examples reproduce byte-exactly");
}

/// Criterion 2: parity-rule validity equals automaton realizability for
/// every word over {x,y,z} of length <= 9.
#[test]
fn criterion_2_signature_characterization_oracle() {
    let total: u64 = (1..=9u32).map(|len| 3u64.pow(len)).sum();
    let mismatches: u64 = (1..=9usize)
        .into_par_iter()
        .map(|len| {
            let mut bad = 0u64;
            for code in 0..3u64.pow(len as u32) {
                let mut letters = vec!['x'; len];
                let mut c = code;
                for slot in letters.iter_mut().rev() {
                    *slot = XYZ[(c % 3) as usize];
                    c /= 3;
                }
                let by_rules = Signature::new(Word::new(letters.clone(), XYZ.to_vec()).unwrap())
                    .unwrap()
                    .is_valid();
                if by_rules != automaton_accepts(&letters) {
                    bad += 1;
                }
            }
            bad
        })
        .sum();
    assert_eq!(mismatches, 0);
    pass(
        2,
        &format!("validity rules match the 3-path automaton on all {total} words of length <= 9"),
    );
}

/// Criterion 3: the two-condition extendability test equals realizability of
/// the size-4 tableau, exhaustively for equal counts r <= 3.
#[test]
fn criterion_3_extendability_oracle() {
    let budget = EnumerationBudget::default();
    let candidates = irreducible_equal_count_signatures(3, &budget).unwrap();
    assert!(!candidates.is_empty());
    let failures: Vec<String> = candidates
        .par_iter()
        .filter_map(|sigma| {
            let fast = sigma.is_extendable().unwrap();
            let truth = match sigma.associated_word() {
                Ok(omega) => is_geometric(&phi_tableau(&omega, 4).unwrap()).is_some(),
                Err(_) => false,
            };
            (fast != truth).then(|| sigma.to_string())
        })
        .collect();
    assert!(failures.is_empty(), "disagreements: {failures:?}");
    let extendable = candidates
        .iter()
        .filter(|s| s.is_extendable().unwrap())
        .count();
    pass(
        3,
        &format!(
            "extendability agrees with the size-4 realizability oracle on all {} irreducible signatures ({} extendable)",
            candidates.len(),
            extendable
        ),
    );
}

fn all_bstar_words(max_len: usize) -> Vec<Vec<PairBlock>> {
    let mut out = Vec::new();
    let mut stack: Vec<PairBlock> = Vec::new();
    fn go(remaining: usize, stack: &mut Vec<PairBlock>, out: &mut Vec<Vec<PairBlock>>) {
        if !stack.is_empty() {
            out.push(stack.clone());
        }
        for pair in [LetterPair::Ab, LetterPair::Cd] {
            for orientation in [Orientation::Ascending, Orientation::Descending] {
                for size in 1..=remaining / 2 {
                    stack.push(PairBlock {
                        pair,
                        orientation,
                        size,
                    });
                    go(remaining - 2 * size, stack, out);
                    stack.pop();
                }
            }
        }
    }
    go(max_len, &mut stack, &mut out);
    out
}

/// Criterion 4: the word-to-tableau bijection on all words of length <= 14
/// and n in {4,5,6}.
#[test]
fn criterion_4_bijection_suite() {
    let corpus = all_bstar_words(14);
    let words: Vec<Word<char>> = corpus.iter().map(|b| word_of_blocks(b)).collect();
    // words of length 2m over four block shapes: 4 * 5^(m-1); summed to m = 7
    assert_eq!(words.len(), 78_124);

    let results: Vec<(usize, Vec<Tableau>)> = words
        .par_iter()
        .enumerate()
        .map(|(idx, omega)| {
            let in_w = {
                let has_ab = omega.letters().contains(&'a');
                let has_cd = omega.letters().contains(&'c');
                has_ab && has_cd
            };
            let reference = phi_tableau(omega, 3).unwrap();
            let mut tableaux = Vec::with_capacity(3);
            for n in 4..=6usize {
                let t = phi_tableau(omega, n).unwrap();
                assert!(t.is_regular(), "phi_{n} of {omega} is not regular");
                assert_eq!(
                    t.is_pangrammatic(),
                    in_w,
                    "pangrammatic mismatch for {omega} at n={n}"
                );
                // every 3-subset restriction is order equivalent to the
                // 3-path tableau (regularity gives pairwise equivalence, so
                // checking the smallest subset suffices)
                let smallest = t.restrict(&t.ground()[..3]).unwrap();
                assert!(
                    smallest.order_equivalent(&reference),
                    "restriction of phi_{n}({omega}) differs from the 3-path tableau"
                );
                if in_w {
                    let recovered = word_of_regular_tableau(&t).unwrap();
                    assert_eq!(&recovered, omega, "round trip failed at n={n}");
                }
                tableaux.push(t);
            }

            // the three-bullet conditions on the 3-restriction
            let u = &reference;
            let gamma = factor_blocks(u.row(0), (2u32, 3u32)).unwrap();
            let alpha = factor_blocks(u.row(2), (1u32, 2u32)).unwrap();
            assert!(regular_paths::word::is_refinement(
                &gamma.sizes(),
                &u.row(1).exponent_sequence(3)
            ));
            assert!(regular_paths::word::is_refinement(
                &alpha.sizes(),
                &u.row(1).exponent_sequence(1)
            ));
            (idx, tableaux)
        })
        .collect();

    // injectivity and uniqueness-from-restriction, per n
    for n_idx in 0..3usize {
        let mut seen: HashSet<&Tableau> = HashSet::with_capacity(words.len());
        let mut by_restriction: HashMap<Tableau, usize> = HashMap::with_capacity(words.len());
        for (idx, tableaux) in &results {
            let t = &tableaux[n_idx];
            assert!(seen.insert(t), "phi is not injective at n={}", n_idx + 4);
            let restriction = t.restrict(&t.ground()[..3]).unwrap().normalize();
            if let Some(other) = by_restriction.insert(restriction, *idx) {
                panic!(
                    "distinct words {} and {} share a 3-restriction",
                    words[other], words[*idx]
                );
            }
        }
    }
    pass(
        4,
        &format!(
            "bijection checks hold for all {} words of length <= 14 at n in 4..=6",
            words.len()
        ),
    );
}

/// Criterion 5: sweep-based realizability round-trips on every enumerated
/// diagram with n <= 4 and pair crossings <= 2, and the valid-matching
/// equivalence survives 200 seeded mutations.
#[test]
fn criterion_5_geometric_equivalence_suite() {
    let budget = EnumerationBudget::default();
    let mut harvested: Vec<Tableau> = Vec::new();
    let mut seen: HashSet<Tableau> = HashSet::new();
    for n in 3..=4usize {
        for diagram in enumerate_wiring_diagrams(n, 2, &budget).unwrap() {
            let t = local_sequences(&diagram);
            if seen.insert(t.clone()) {
                harvested.push(t);
            }
        }
    }
    assert!(harvested.len() > 1000);

    harvested.par_iter().for_each(|t| {
        let diagram = is_geometric(t).expect("harvested tableau must be realizable");
        assert_eq!(&local_sequences(&diagram), t, "round trip failed");
        assert!(has_valid_matching(t));
        for triple in three_subsets(t.ground()) {
            assert!(is_geometric(&t.restrict(&triple).unwrap()).is_some());
        }
    });

    // Prop-4.5-style equivalence on mutated tableaux
    let pool: Vec<&Tableau> = harvested.iter().filter(|t| t.size() == 4).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut mutants = Vec::with_capacity(200);
    for _ in 0..200 {
        let base = pool[rng.gen_range(0..pool.len())];
        let mut rows: Vec<Vec<u32>> = base.rows().iter().map(|r| r.letters().to_vec()).collect();
        for _ in 0..rng.gen_range(1..=3usize) {
            let row = rng.gen_range(0..rows.len());
            if rows[row].is_empty() {
                continue;
            }
            let pos = rng.gen_range(0..rows[row].len());
            let own = base.ground()[row];
            let replacement = loop {
                let candidate = base.ground()[rng.gen_range(0..base.ground().len())];
                if candidate != own {
                    break candidate;
                }
            };
            rows[row][pos] = replacement;
        }
        mutants.push(Tableau::new(base.ground().to_vec(), rows).unwrap());
    }
    mutants.par_iter().for_each(|t| {
        let direct = is_geometric(t).is_some();
        let via_matching = has_valid_matching(t)
            && three_subsets(t.ground())
                .into_iter()
                .all(|triple| is_geometric(&t.restrict(&triple).unwrap()).is_some());
        assert_eq!(direct, via_matching, "equivalence failed on a mutant");
    });

    pass(
        5,
        &format!(
            "sweep round-trips on {} harvested tableaux; matching equivalence holds on 200 mutants",
            harvested.len()
        ),
    );
}

fn three_subsets(ground: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let n = ground.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push(vec![ground[i], ground[j], ground[k]]);
            }
        }
    }
    out
}

/// Criterion 6: both envelope theorems on 1000 seeded grammar samples plus
/// the exhaustive r <= 3 signatures, for n up to 8.
#[test]
fn criterion_6_envelope_theorems() {
    let report =
        verify_envelope_theorems(3, 8, 1000, 7, &EnumerationBudget::default()).unwrap();
    assert!(report.passed, "{:?}", report.counterexample);
    pass(
        6,
        &format!(
            "envelope theorems hold on {} exhaustive and {} sampled cases (seed 7)",
            report.counts["exhaustive_cases"], report.counts["sampled_cases"]
        ),
    );
}

/// Criterion 7: the six-tangent construction checks out at n = 6.
#[test]
fn criterion_7_six_tangent_construction() {
    let report = verify_pach_toth_construction().unwrap();
    assert!(report.passed, "{:?}", report.counterexample);
    assert_eq!(report.counts["factors"], 4);
    assert_eq!(report.counts["four_subsets"], 15);
    assert_eq!(report.counts["five_subsets"], 6);
    assert_eq!(six_tangent_upper_envelope().unwrap(), vec![1, 2, 5, 6]);
    pass(
        7,
        &format!(
            "{SIX_TANGENT_SIGNATURE}: 6 crossings per pair, all 4-subsets upper convex, no 5-subset, upper envelope {{1,2,5,6}}"
        ),
    );
}

/// Criterion 8: the small constants.
#[test]
fn criterion_8_small_constants() {
    let census = enumerate_signatures(1, &EnumerationBudget::default()).unwrap();
    assert_eq!(census.count, 2);
    assert_eq!(census.signatures, vec![sig("xyz"), sig("zyx")]);

    let report = verify_ck3(&EnumerationBudget::default()).unwrap();
    assert!(report.passed, "{:?}", report.counterexample);
    assert_eq!(report.counts["diagrams_k1"], 2);

    pass(
        8,
        &format!(
            "M1 = 2 and every 3-path diagram is upper or lower convex (k=1: {}, k=2: {})",
            report.counts["diagrams_k1"], report.counts["diagrams_k2"]
        ),
    );
}
