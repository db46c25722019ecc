//! Reduced words and exhaustive enumeration of `R(w)`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::permutation::Permutation;

/// Default bound on `|R(w)|` before enumeration is refused.
pub const DEFAULT_WORD_CAP: u64 = 2_000_000;

/// A reduced word in the generators `s_1 .. s_{n-1}` of `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord {
    letters: Vec<u8>,
    n: usize,
}

impl ReducedWord {
    pub fn new(letters: Vec<u8>, n: usize) -> Result<Self> {
        if !is_reduced(&letters, n)? {
            return Err(Error::NotReduced {
                word: format_word(&letters, n),
            });
        }
        Ok(ReducedWord { letters, n })
    }

    pub fn parse(text: &str, n: usize) -> Result<Self> {
        Self::new(parse_letters(text)?, n)
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn permutation(&self) -> Permutation {
        evaluate(&self.letters, self.n).expect("letters validated on construction")
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(&self.letters, self.n))
    }
}

/// Digit string for `n <= 10`, comma-separated integers otherwise.
pub fn format_word(letters: &[u8], n: usize) -> String {
    if n <= 10 {
        letters.iter().map(|&a| char::from(b'0' + a)).collect()
    } else {
        letters.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Inverse of [`format_word`]; range checking is left to the caller.
pub fn parse_letters(text: &str) -> Result<Vec<u8>> {
    let text = text.trim();
    let bad = |reason: &str| Error::Parse {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    if text.contains(',') {
        text.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u8>()
                    .map_err(|_| bad("expected comma-separated letters"))
            })
            .collect()
    } else {
        text.chars()
            .map(|c| match c.to_digit(10) {
                Some(d) if d > 0 => Ok(d as u8),
                _ => Err(bad("expected letters 1..9")),
            })
            .collect()
    }
}

fn check_letters(letters: &[u8], n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    match letters.iter().find(|&&a| a == 0 || a as usize >= n) {
        Some(&a) => Err(Error::GeneratorOutOfRange { index: a as usize, n }),
        None => Ok(()),
    }
}

/// The product `s_{i_1} s_{i_2} ... s_{i_k}`, multiplied left to right.
pub fn evaluate(letters: &[u8], n: usize) -> Result<Permutation> {
    check_letters(letters, n)?;
    let mut w = Permutation::identity(n)?;
    for &a in letters {
        w.swap_in_place(a as usize);
    }
    Ok(w)
}

pub fn is_reduced(letters: &[u8], n: usize) -> Result<bool> {
    check_letters(letters, n)?;
    let mut w = Permutation::identity(n)?;
    for &a in letters {
        // Each step must create an inversion.
        if w.has_right_descent(a as usize) {
            return Ok(false);
        }
        w.swap_in_place(a as usize);
    }
    Ok(true)
}

/// `R(w)` stored as fixed-width rows of `length(w)` letters, sorted
/// lexicographically with no duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordSet {
    target: Permutation,
    width: usize,
    count: usize,
    letters: Vec<u8>,
}

impl WordSet {
    pub fn target(&self) -> &Permutation {
        &self.target
    }

    pub fn n(&self) -> usize {
        self.target.n()
    }

    /// Common length of every word.
    pub fn word_length(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn get(&self, index: usize) -> &[u8] {
        &self.letters[index * self.width..(index + 1) * self.width]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[u8]> + '_ {
        (0..self.count).map(move |k| self.get(k))
    }

    /// Position of `word` in the sorted list.
    pub fn index_of(&self, word: &[u8]) -> Option<usize> {
        if word.len() != self.width {
            return None;
        }
        let (mut lo, mut hi) = (0, self.count);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(word) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn format(&self, index: usize) -> String {
        format_word(self.get(index), self.n())
    }

    pub fn to_strings(&self) -> Vec<String> {
        (0..self.count).map(|k| self.format(k)).collect()
    }

    pub fn word(&self, index: usize) -> ReducedWord {
        ReducedWord {
            letters: self.get(index).to_vec(),
            n: self.n(),
        }
    }

    /// Assembles a word set from arbitrary rows, sorting and rejecting
    /// duplicates, wrong lengths, or words for another permutation.
    pub fn from_words(target: Permutation, words: Vec<Vec<u8>>) -> Result<Self> {
        let width = target.length();
        let mut words = words;
        words.sort_unstable();
        for pair in words.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::Invariant(format!(
                    "duplicate word {}",
                    format_word(&pair[0], target.n())
                )));
            }
        }
        for word in &words {
            if word.len() != width || evaluate(word, target.n())? != target {
                return Err(Error::Invariant(format!(
                    "{} is not a reduced word for {}",
                    format_word(word, target.n()),
                    target
                )));
            }
        }
        Ok(WordSet {
            count: words.len(),
            letters: words.concat(),
            width,
            target,
        })
    }
}

/// `|R(w)|` by the descent recursion `|R(w)| = sum over right descents i of
/// |R(w s_i)|`, memoized on permutations. Never lists words.
pub fn count_by_descents(w: &Permutation) -> u128 {
    fn go(w: &mut Permutation, memo: &mut HashMap<Permutation, u128>) -> u128 {
        if w.is_identity() {
            return 1;
        }
        if let Some(&c) = memo.get(w) {
            return c;
        }
        let mut total: u128 = 0;
        for i in w.right_descents() {
            w.swap_in_place(i);
            total = total.saturating_add(go(w, memo));
            w.swap_in_place(i);
        }
        memo.insert(w.clone(), total);
        total
    }
    go(&mut w.clone(), &mut HashMap::new())
}

/// All reduced words of `w`, sorted. With `cap = Some(k)`, permutations with
/// more than `k` reduced words are refused with [`Error::TooLarge`].
pub fn enumerate(w: &Permutation, cap: Option<u64>) -> Result<WordSet> {
    if let Some(cap) = cap {
        let count = count_by_descents(w);
        if count > cap as u128 {
            return Err(Error::TooLarge { count, cap });
        }
    }
    let width = w.length();
    let mut letters = Vec::new();
    let mut suffix = vec![0u8; width];
    let mut scratch = w.clone();
    descend(&mut scratch, width, &mut suffix, &mut letters);

    let count = letters.len().checked_div(width).unwrap_or(1);
    let mut order: Vec<usize> = (0..count).collect();
    let row = |k: usize| &letters[k * width..(k + 1) * width];
    order.sort_unstable_by(|&a, &b| row(a).cmp(row(b)));
    let mut sorted = Vec::with_capacity(letters.len());
    for &k in &order {
        sorted.extend_from_slice(row(k));
    }
    debug_assert!(order.windows(2).all(|p| row(p[0]) != row(p[1])));

    Ok(WordSet {
        target: w.clone(),
        width,
        count,
        letters: sorted,
    })
}

// Fills `suffix[..remaining]` right to left: the last letter of a reduced
// word of `w` is a right descent `i`, preceded by a reduced word of `w s_i`.
fn descend(w: &mut Permutation, remaining: usize, suffix: &mut [u8], out: &mut Vec<u8>) {
    if remaining == 0 {
        out.extend_from_slice(suffix);
        return;
    }
    for i in 1..w.n() {
        if w.has_right_descent(i) {
            w.swap_in_place(i);
            suffix[remaining - 1] = i as u8;
            descend(w, remaining - 1, suffix, out);
            w.swap_in_place(i);
        }
    }
}

/// `|R(w)|` by enumeration.
pub fn count(w: &Permutation, cap: Option<u64>) -> Result<usize> {
    Ok(enumerate(w, cap)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn letters(s: &str) -> Vec<u8> {
        parse_letters(s).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(evaluate(&letters("12432"), 5).unwrap(), p("[25314]"));
        assert!(evaluate(&[], 4).unwrap().is_identity());
        assert_eq!(evaluate(&letters("345"), 6).unwrap(), p("[124563]"));
        assert!(matches!(
            evaluate(&[5], 5),
            Err(Error::GeneratorOutOfRange { index: 5, n: 5 })
        ));
    }

    #[test]
    fn reducedness() {
        assert!(is_reduced(&letters("121"), 3).unwrap());
        assert!(!is_reduced(&letters("11"), 3).unwrap());
        assert!(is_reduced(&letters("12432"), 5).unwrap());
        assert!(is_reduced(&letters("1213"), 3).is_err());
        assert!(ReducedWord::parse("11", 3).is_err());
    }

    #[test]
    fn word_text_forms() {
        assert_eq!(format_word(&[1, 2, 4, 3, 2], 5), "12432");
        assert_eq!(format_word(&[9, 10, 1], 11), "9,10,1");
        assert_eq!(parse_letters("9,10,1").unwrap(), vec![9, 10, 1]);
        assert!(parse_letters("").unwrap().is_empty());
        assert!(parse_letters("102").is_err());
        let w = ReducedWord::parse("12432", 5).unwrap();
        assert_eq!(w.to_string(), "12432");
        assert_eq!(w.permutation(), p("[25314]"));
    }

    #[test]
    fn enumerate_25314() {
        let words = enumerate(&p("[25314]"), None).unwrap();
        assert_eq!(
            words.to_strings(),
            ["12432", "14232", "14323", "41232", "41323", "43123"]
        );
        assert_eq!(words.index_of(&letters("14323")), Some(2));
        assert_eq!(words.index_of(&letters("14324")), None);
    }

    #[test]
    fn enumerate_small_cases() {
        // the eight words 13245 ... 34152 plus 34512
        assert_eq!(count(&p("[241563]"), None).unwrap(), 9);
        assert_eq!(count(&p("[3421]"), None).unwrap(), 5);
        assert_eq!(count(&Permutation::longest(4).unwrap(), None).unwrap(), 16);
        let e = enumerate(&Permutation::identity(3).unwrap(), None).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.get(0), &[] as &[u8]);
    }

    #[test]
    fn cap_is_distinguishable() {
        let w0 = Permutation::longest(5).unwrap();
        assert_eq!(count_by_descents(&w0), 768);
        match enumerate(&w0, Some(100)) {
            Err(Error::TooLarge { count, cap }) => assert_eq!((count, cap), (768, 100)),
            other => panic!("expected TooLarge, got {other:?}"),
        }
        assert_eq!(enumerate(&w0, Some(768)).unwrap().len(), 768);
    }

    #[test]
    fn longest_element_of_s7_is_out_of_scale() {
        assert_eq!(count_by_descents(&Permutation::longest(7).unwrap()), 1_100_742_656);
    }

    #[test]
    fn from_words_rejects_foreign_words() {
        let w = p("[25314]");
        assert!(WordSet::from_words(w.clone(), vec![letters("12432"), letters("14232")]).is_ok());
        assert!(WordSet::from_words(w.clone(), vec![letters("12432"), letters("12432")]).is_err());
        assert!(WordSet::from_words(w, vec![letters("12342")]).is_err());
    }
}
