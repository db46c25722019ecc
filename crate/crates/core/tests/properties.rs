use proptest::prelude::*;

use redword::characterizations::BoundStatus;
use redword::moves::{apply, neighbors, supported_moves, MoveKind};
use redword::reduced_words::{enumerate, evaluate, is_reduced};
use redword::Permutation;

fn permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|w| Permutation::from_window(&w).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn words_are_reduced_and_evaluate_to_target(w in permutation(6)) {
        let words = enumerate(&w, None).unwrap();
        prop_assert!(!words.is_empty());
        for word in words.iter().take(500) {
            prop_assert_eq!(word.len(), w.length());
            prop_assert!(is_reduced(word, w.n()).unwrap());
            prop_assert_eq!(&evaluate(word, w.n()).unwrap(), &w);
        }
    }

    #[test]
    fn moves_stay_inside_r_of_w(w in permutation(6)) {
        let words = enumerate(&w, None).unwrap();
        for word in words.iter().take(200) {
            for (mv, v) in neighbors(word) {
                prop_assert!(words.index_of(&v).is_some());
                prop_assert_eq!(&apply(&v, mv), &word.to_vec(), "{} is not an involution", mv);
            }
            let mut sorted = supported_moves(word);
            sorted.sort_by_key(|m| (m.kind != MoveKind::Commutation, m.position));
            prop_assert_eq!(sorted, supported_moves(word));
        }
    }

    #[test]
    fn bounds_hold(w in permutation(6)) {
        let words = enumerate(&w, None).unwrap();
        let b = redword::partition(&words, MoveKind::Braid).unwrap().len() as u64;
        let c = redword::partition(&words, MoveKind::Commutation).unwrap().len() as u64;
        let s = BoundStatus::from_counts(words.len() as u64, b, c).unwrap();
        prop_assert!(!s.achieves_upper || s.achieves_lower);
    }

    #[test]
    fn descents_shorten(w in permutation(8)) {
        for i in w.right_descents() {
            prop_assert_eq!(w.multiply_right(i).unwrap().length() + 1, w.length());
        }
        for i in (1..w.n()).filter(|&i| !w.has_right_descent(i)) {
            prop_assert_eq!(w.multiply_right(i).unwrap().length(), w.length() + 1);
        }
    }

    #[test]
    fn window_round_trips(w in permutation(12)) {
        let text = w.to_string();
        prop_assert_eq!(text.parse::<Permutation>().unwrap(), w.clone());
        let json = serde_json::to_string(&w).unwrap();
        prop_assert_eq!(serde_json::from_str::<Permutation>(&json).unwrap(), w);
    }
}
