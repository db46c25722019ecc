use std::collections::{BTreeMap, BTreeSet};

use redword::characterizations::{lower_predicate_from_words, upper_predicate, Analysis, LowerTemplates};
use redword::classes::{closure, partition};
use redword::moves::MoveKind;
use redword::reduced_words::{count_by_descents, enumerate, evaluate, WordSet};
use redword::weak_order::{interval, interval_by_closure};
use redword::Permutation;

/// One-line window after applying the letters left to right, starting
/// from the identity, each letter swapping two adjacent positions.
fn naive_eval(word: &[u8], n: usize) -> Vec<usize> {
    let mut w: Vec<usize> = (1..=n).collect();
    for &a in word {
        w.swap(a as usize - 1, a as usize);
    }
    w
}

fn naive_length(w: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                count += 1;
            }
        }
    }
    count
}

/// Every reduced word of every element of `S_n`, from all letter
/// sequences of each length.
fn brute_force_words(n: usize) -> BTreeMap<Vec<usize>, BTreeSet<Vec<u8>>> {
    let max_len = n * (n - 1) / 2;
    let mut out: BTreeMap<Vec<usize>, BTreeSet<Vec<u8>>> = BTreeMap::new();
    out.entry((1..=n).collect()).or_default().insert(Vec::new());
    let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
    for len in 1..=max_len {
        let mut next = Vec::new();
        for word in &layer {
            for a in 1..n as u8 {
                let mut longer = word.clone();
                longer.push(a);
                let w = naive_eval(&longer, n);
                // extending only reduced prefixes still reaches every reduced word
                if naive_length(&w) == len {
                    out.entry(w).or_default().insert(longer.clone());
                    next.push(longer);
                }
            }
        }
        layer = next;
    }
    out
}

#[test]
fn enumeration_matches_brute_force() {
    for n in 1..=5 {
        let expected = brute_force_words(n);
        assert_eq!(expected.len(), (1..=n).product::<usize>());
        for (window, words) in expected {
            let w = Permutation::from_window(&window).unwrap();
            let got = enumerate(&w, None).unwrap();
            let got: BTreeSet<Vec<u8>> = got.iter().map(<[u8]>::to_vec).collect();
            assert_eq!(got, words, "{w}");
            assert_eq!(count_by_descents(&w), words.len() as u128);
        }
    }
}

#[test]
fn all_letter_sequences_for_small_n() {
    // every sequence in {1..n-1}^len, not only reduced prefixes
    for n in 2..=4 {
        let max_len = n * (n - 1) / 2;
        let mut expected: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
        for len in 0..=max_len {
            for word in &layer {
                let w = naive_eval(word, n);
                if naive_length(&w) == len {
                    *expected.entry(w).or_default() += 1;
                }
            }
            layer = layer
                .iter()
                .flat_map(|w| (1..n as u8).map(move |a| [w.as_slice(), &[a]].concat()))
                .collect();
        }
        for (window, count) in expected {
            let w = Permutation::from_window(&window).unwrap();
            assert_eq!(enumerate(&w, None).unwrap().len(), count, "{w}");
        }
    }
}

#[test]
fn evaluate_agrees_with_naive() {
    for w in Permutation::all(5).unwrap() {
        for word in enumerate(&w, None).unwrap().iter() {
            assert_eq!(evaluate(word, 5).unwrap().values(), naive_eval(word, 5));
        }
    }
}

fn has_321(w: &[usize]) -> bool {
    let n = w.len();
    (0..n).any(|i| (i + 1..n).any(|j| (j + 1..n).any(|k| w[i] > w[j] && w[j] > w[k])))
}

#[test]
fn pattern_predicates_brute_force() {
    for n in 1..=6 {
        for w in Permutation::all(n).unwrap() {
            assert_eq!(w.is_321_avoiding(), !has_321(&w.values()), "{w}");
        }
    }
}

#[test]
fn single_class_characterizations() {
    for n in 1..=5 {
        for w in Permutation::all(n).unwrap() {
            let a = Analysis::new(&w, None).unwrap();
            assert_eq!(a.commutation.len() == 1, w.is_321_avoiding(), "{w}");
            assert_eq!(a.braid.len() == 1, w.inversions_pairwise_share_letter(), "{w}");
        }
    }
}

#[test]
fn symmetries_preserve_counts() {
    for n in 1..=5 {
        let templates = LowerTemplates::new(n).unwrap();
        for w in Permutation::all(n).unwrap() {
            let a = Analysis::new(&w, None).unwrap();
            let counts = (a.words.len(), a.braid.len(), a.commutation.len());
            for image in [w.reverse(), w.conjugate_longest(), w.reverse().conjugate_longest()] {
                let b = Analysis::new(&image, None).unwrap();
                assert_eq!(
                    (b.words.len(), b.braid.len(), b.commutation.len()),
                    counts,
                    "{w} -> {image}"
                );
                assert_eq!(upper_predicate(&image), upper_predicate(&w));
                assert_eq!(templates.lower_predicate(&image), templates.lower_predicate(&w));
            }
            assert_eq!(w.reverse().reverse(), w);
            assert_eq!(w.conjugate_longest().conjugate_longest(), w);
            assert_eq!(w.reverse().conjugate_longest(), w.conjugate_longest().reverse());
        }
    }
}

#[test]
fn lower_routes_agree() {
    for n in 1..=5 {
        let templates = LowerTemplates::new(n).unwrap();
        for w in Permutation::all(n).unwrap() {
            let a = Analysis::new(&w, None).unwrap();
            let tree = a.is_circuit_free().unwrap();
            assert_eq!(lower_predicate_from_words(&a.words), tree, "{w}");
            assert_eq!(templates.lower_predicate(&w), tree, "{w}");
        }
    }
}

#[test]
fn prefix_interval_equals_closure() {
    for n in 1..=5 {
        for w in Permutation::all(n).unwrap() {
            let iv = interval(&w, None).unwrap();
            assert_eq!(iv, interval_by_closure(&w), "{w}");
            for (k, rank) in iv.ranks.iter().enumerate() {
                assert!(rank.iter().all(|u| u.length() == k));
            }
        }
    }
}

#[test]
fn maximal_chains_hit_each_rank_once() {
    let w: Permutation = "[35421]".parse().unwrap();
    let iv = interval(&w, None).unwrap();
    for word in enumerate(&w, None).unwrap().iter() {
        for k in 0..=word.len() {
            let u = evaluate(&word[..k], w.n()).unwrap();
            assert_eq!(iv.ranks[k].iter().filter(|v| **v == u).count(), 1);
        }
    }
}

#[test]
fn classes_match_move_closure() {
    for w in ["[25314]", "[4321]", "[35421]", "[152463]"] {
        let w: Permutation = w.parse().unwrap();
        let words = enumerate(&w, None).unwrap();
        for kind in [MoveKind::Braid, MoveKind::Commutation] {
            let p = partition(&words, kind).unwrap();
            for class in p.classes() {
                let expected = closure(words.get(class[0]), kind);
                let got: Vec<Vec<u8>> = class.iter().map(|&k| words.get(k).to_vec()).collect();
                assert_eq!(got, expected);
            }
        }
    }
}

#[test]
fn partition_ignores_input_order() {
    let w = Permutation::longest(5).unwrap();
    let words = enumerate(&w, None).unwrap();
    let mut shuffled: Vec<Vec<u8>> = words.iter().map(<[u8]>::to_vec).collect();
    shuffled.reverse();
    let mid = shuffled.len() / 3;
    shuffled.rotate_left(mid);
    let rebuilt = WordSet::from_words(w, shuffled).unwrap();
    assert_eq!(rebuilt, words);
    for kind in [MoveKind::Braid, MoveKind::Commutation] {
        assert_eq!(partition(&rebuilt, kind).unwrap(), partition(&words, kind).unwrap());
    }
}
