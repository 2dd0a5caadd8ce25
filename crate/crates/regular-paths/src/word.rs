//! Words over totally ordered alphabets.
//!
//! A [`Word`] carries its alphabet explicitly; the alphabet may contain
//! symbols that never occur in the letters. On top of plain words this
//! module implements balanced-block factorization over a two-symbol pair,
//! the order-equivalence normal form, exponent sequences, refinements of
//! integer sequences, and the classification of words over `{a,b,c,d}` into
//! the block languages used by the rest of the crate.

use std::fmt;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};

/// Anything usable as a letter: totally ordered, copyable, printable.
pub trait Symbol: Copy + Ord + Eq + Hash + fmt::Debug + fmt::Display {}

impl<T: Copy + Ord + Eq + Hash + fmt::Debug + fmt::Display> Symbol for T {}

/// A finite sequence of letters over a fixed, totally ordered alphabet.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word<S: Symbol> {
    letters: Vec<S>,
    alphabet: Vec<S>,
}

impl<S: Symbol> Word<S> {
    /// Creates a word, checking that every letter belongs to `alphabet`.
    /// The alphabet is sorted and deduplicated.
    pub fn new(letters: Vec<S>, alphabet: Vec<S>) -> Result<Self> {
        let mut alphabet = alphabet;
        alphabet.sort_unstable();
        alphabet.dedup();
        for &l in &letters {
            if alphabet.binary_search(&l).is_err() {
                return Err(Error::SymbolNotInAlphabet {
                    symbol: l.to_string(),
                });
            }
        }
        Ok(Word { letters, alphabet })
    }

    /// Creates a word whose alphabet is exactly the set of occurring letters.
    pub fn from_letters(letters: Vec<S>) -> Self {
        let mut alphabet = letters.clone();
        alphabet.sort_unstable();
        alphabet.dedup();
        Word { letters, alphabet }
    }

    pub fn empty(alphabet: Vec<S>) -> Self {
        let mut alphabet = alphabet;
        alphabet.sort_unstable();
        alphabet.dedup();
        Word {
            letters: Vec::new(),
            alphabet,
        }
    }

    pub fn letters(&self) -> &[S] {
        &self.letters
    }

    pub fn alphabet(&self) -> &[S] {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of occurrences of `s`.
    pub fn count(&self, s: S) -> usize {
        self.letters.iter().filter(|&&l| l == s).count()
    }

    /// Concatenation; the alphabet is the union of both alphabets.
    pub fn concat(&self, other: &Word<S>) -> Word<S> {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        let mut alphabet = self.alphabet.clone();
        alphabet.extend_from_slice(&other.alphabet);
        alphabet.sort_unstable();
        alphabet.dedup();
        Word { letters, alphabet }
    }

    /// The subword consisting of the letters in `keep`, with the alphabet
    /// restricted to `keep`. Every member of `keep` must belong to the
    /// current alphabet.
    pub fn restrict(&self, keep: &[S]) -> Result<Word<S>> {
        let mut kept_alphabet: Vec<S> = keep.to_vec();
        kept_alphabet.sort_unstable();
        kept_alphabet.dedup();
        for &s in &kept_alphabet {
            if self.alphabet.binary_search(&s).is_err() {
                return Err(Error::SymbolNotInAlphabet {
                    symbol: s.to_string(),
                });
            }
        }
        let letters = self
            .letters
            .iter()
            .copied()
            .filter(|l| kept_alphabet.binary_search(l).is_ok())
            .collect();
        Ok(Word {
            letters,
            alphabet: kept_alphabet,
        })
    }

    /// The normal form: the i-th smallest occurring symbol maps to `i`
    /// (1-based). Two words are order equivalent iff their normal forms are
    /// equal.
    pub fn normalize(&self) -> Vec<usize> {
        let mut occurring: Vec<S> = self.letters.clone();
        occurring.sort_unstable();
        occurring.dedup();
        self.letters
            .iter()
            .map(|l| occurring.binary_search(l).unwrap() + 1)
            .collect()
    }

    /// Order equivalence across possibly different alphabets.
    pub fn order_equivalent<S2: Symbol>(&self, other: &Word<S2>) -> bool {
        self.normalize() == other.normalize()
    }

    /// Run lengths of the maximal blocks of consecutive `s` in the word.
    pub fn exponent_sequence(&self, s: S) -> Vec<usize> {
        let mut runs = Vec::new();
        let mut current = 0usize;
        for &l in &self.letters {
            if l == s {
                current += 1;
            } else if current > 0 {
                runs.push(current);
                current = 0;
            }
        }
        if current > 0 {
            runs.push(current);
        }
        runs
    }

    /// Maximal runs as (symbol, length) pairs.
    pub fn runs(&self) -> Vec<(S, usize)> {
        let mut out: Vec<(S, usize)> = Vec::new();
        for &l in &self.letters {
            match out.last_mut() {
                Some((s, n)) if *s == l => *n += 1,
                _ => out.push((l, 1)),
            }
        }
        out
    }

    /// Applies an order-preserving letter map.
    pub fn map<T: Symbol>(&self, f: impl Fn(S) -> T) -> Word<T> {
        let letters = self.letters.iter().map(|&l| f(l)).collect();
        let alphabet = self.alphabet.iter().map(|&l| f(l)).collect();
        Word::new(letters, alphabet).expect("letter map must stay inside the mapped alphabet")
    }
}

impl<S: Symbol> fmt::Debug for Word<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word[")?;
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Word<char> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Orientation of a balanced block over a pair `u ≺ v`: ascending is
/// `u^r v^r`, descending is `v^r u^r`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Ascending,
    Descending,
}

/// One balanced block: orientation plus half-length `r`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Block {
    pub orientation: Orientation,
    pub size: usize,
}

impl Block {
    pub fn is_odd(&self) -> bool {
        self.size % 2 == 1
    }
}

/// The unique factorization of a balanced word into balanced blocks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockFactorization<S: Symbol> {
    /// The ordered pair `(u, v)` with `u ≺ v`.
    pub pair: (S, S),
    pub blocks: Vec<Block>,
}

impl<S: Symbol> BlockFactorization<S> {
    /// The sequence of block half-lengths.
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.size).collect()
    }

    /// Expands the factorization back into a word over the pair.
    pub fn expand(&self) -> Word<S> {
        let (lo, hi) = self.pair;
        let mut letters = Vec::new();
        for b in &self.blocks {
            let (first, second) = match b.orientation {
                Orientation::Ascending => (lo, hi),
                Orientation::Descending => (hi, lo),
            };
            letters.extend(std::iter::repeat_n(first, b.size));
            letters.extend(std::iter::repeat_n(second, b.size));
        }
        Word::new(letters, vec![lo, hi]).expect("blocks expand over the pair alphabet")
    }
}

/// Factors a word over the two symbols of `pair` into balanced blocks,
/// greedily from the left: each block consumes the entire leading run
/// (length `r`) of one symbol followed by exactly `r` of the other.
///
/// Fails with the 0-based position where the pattern breaks (the position
/// of the offending letter, or the word length when the input runs out).
pub fn factor_blocks<S: Symbol>(w: &Word<S>, pair: (S, S)) -> Result<BlockFactorization<S>> {
    let (lo, hi) = if pair.0 < pair.1 {
        (pair.0, pair.1)
    } else {
        (pair.1, pair.0)
    };
    let ls = w.letters();
    if ls.iter().any(|&l| l != lo && l != hi) {
        return Err(Error::Precondition("word uses letters outside the pair"));
    }
    let mut blocks = Vec::new();
    let mut pos = 0;
    while pos < ls.len() {
        let first = ls[pos];
        let other = if first == lo { hi } else { lo };
        let mut r = 1;
        while pos + r < ls.len() && ls[pos + r] == first {
            r += 1;
        }
        for t in 0..r {
            let idx = pos + r + t;
            if idx >= ls.len() {
                return Err(Error::Unbalanced { position: ls.len() });
            }
            if ls[idx] != other {
                return Err(Error::Unbalanced { position: idx });
            }
        }
        blocks.push(Block {
            orientation: if first == lo {
                Orientation::Ascending
            } else {
                Orientation::Descending
            },
            size: r,
        });
        pos += 2 * r;
    }
    Ok(BlockFactorization {
        pair: (lo, hi),
        blocks,
    })
}

/// Whether a word over the pair is balanced.
pub fn is_balanced<S: Symbol>(w: &Word<S>, pair: (S, S)) -> bool {
    factor_blocks(w, pair).is_ok()
}

/// True iff `t` is obtained from `s` by summing consecutive groups covering
/// all of `s` in order. All entries are assumed positive, which makes the
/// greedy grouping unique.
pub fn is_refinement(s: &[usize], t: &[usize]) -> bool {
    let mut acc = 0usize;
    let mut j = 0usize;
    for &v in s {
        if j >= t.len() {
            return false;
        }
        acc += v;
        if acc == t[j] {
            acc = 0;
            j += 1;
        } else if acc > t[j] {
            return false;
        }
    }
    acc == 0 && j == t.len()
}

/// The fixed four-letter alphabet `a ≺ b ≺ c ≺ d`.
pub const ABCD: [char; 4] = ['a', 'b', 'c', 'd'];
/// The fixed three-letter alphabet `x ≺ y ≺ z`.
pub const XYZ: [char; 3] = ['x', 'y', 'z'];
pub const AB: (char, char) = ('a', 'b');
pub const CD: (char, char) = ('c', 'd');

/// Which two-letter pair a block lives on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LetterPair {
    Ab,
    Cd,
}

impl LetterPair {
    pub fn symbols(self) -> (char, char) {
        match self {
            LetterPair::Ab => AB,
            LetterPair::Cd => CD,
        }
    }
}

/// One block of a word over `{a,b,c,d}`, tagged with its pair.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct PairBlock {
    pub pair: LetterPair,
    pub orientation: Orientation,
    pub size: usize,
}

impl PairBlock {
    pub fn is_odd(&self) -> bool {
        self.size % 2 == 1
    }

    /// The block's letters, e.g. `(d^3c^3)` expands to `dddccc`.
    pub fn letters(&self) -> Vec<char> {
        let (lo, hi) = self.pair.symbols();
        let (first, second) = match self.orientation {
            Orientation::Ascending => (lo, hi),
            Orientation::Descending => (hi, lo),
        };
        let mut out = Vec::with_capacity(2 * self.size);
        out.extend(std::iter::repeat_n(first, self.size));
        out.extend(std::iter::repeat_n(second, self.size));
        out
    }
}

/// Membership class of a word over `{a,b,c,d}` within the block language.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BStarClass {
    /// Both an `{a,b}` and a `{c,d}` block occur.
    W,
    /// Only `{a,b}` blocks occur.
    AbOnly,
    /// Only `{c,d}` blocks occur.
    CdOnly,
    /// The empty word.
    Empty,
}

/// Result of factoring a word over `{a,b,c,d}` into balanced blocks of its
/// maximal `{a,b}`- and `{c,d}`-segments.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WordClassification {
    pub blocks: Vec<PairBlock>,
    pub class: BStarClass,
    /// Every block has odd half-length.
    pub all_blocks_odd: bool,
}

impl WordClassification {
    pub fn in_w(&self) -> bool {
        self.class == BStarClass::W
    }

    /// Member of the odd-block sublanguage.
    pub fn in_u(&self) -> bool {
        self.all_blocks_odd
    }
}

/// Splits a word over `{a,b,c,d}` into maximal `{a,b}`- and `{c,d}`-segments,
/// factors each segment into balanced blocks, and reports the language class.
/// An unbalanced segment fails with its position in the whole word.
pub fn classify_language(w: &Word<char>) -> Result<WordClassification> {
    let ls = w.letters();
    if ls.iter().any(|&l| !ABCD.contains(&l)) {
        return Err(Error::Precondition("word uses letters outside {a,b,c,d}"));
    }
    let pair_of = |l: char| {
        if l == 'a' || l == 'b' {
            LetterPair::Ab
        } else {
            LetterPair::Cd
        }
    };
    let mut blocks = Vec::new();
    let mut has_ab = false;
    let mut has_cd = false;
    let mut start = 0usize;
    while start < ls.len() {
        let pair = pair_of(ls[start]);
        let mut end = start + 1;
        while end < ls.len() && pair_of(ls[end]) == pair {
            end += 1;
        }
        let segment = Word::new(ls[start..end].to_vec(), vec!['a', 'b', 'c', 'd'])
            .expect("segment letters checked above");
        let factored = factor_blocks(&segment, pair.symbols()).map_err(|e| match e {
            Error::Unbalanced { position } => Error::Unbalanced {
                position: start + position,
            },
            other => other,
        })?;
        match pair {
            LetterPair::Ab => has_ab = true,
            LetterPair::Cd => has_cd = true,
        }
        blocks.extend(factored.blocks.into_iter().map(|b| PairBlock {
            pair,
            orientation: b.orientation,
            size: b.size,
        }));
        start = end;
    }
    let class = match (has_ab, has_cd) {
        (true, true) => BStarClass::W,
        (true, false) => BStarClass::AbOnly,
        (false, true) => BStarClass::CdOnly,
        (false, false) => BStarClass::Empty,
    };
    let all_blocks_odd = blocks.iter().all(PairBlock::is_odd);
    Ok(WordClassification {
        blocks,
        class,
        all_blocks_odd,
    })
}

/// Witness prefix lengths for the well-balanced property: both end at block
/// boundaries of the canonical factorization.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct WellBalancedWitness {
    /// Length of a prefix with an even number of a's and an odd number of c's.
    pub even_a_odd_c_end: usize,
    /// Length of a prefix with an odd number of a's and an even number of c's.
    pub odd_a_even_c_end: usize,
}

/// Tests the well-balanced property of a word in the two-pair block
/// language: scan the prefixes that end at block boundaries and look for one
/// with (even a-count, odd c-count) and one with (odd a-count, even
/// c-count). Returns the two witness boundary positions when both exist.
pub fn is_well_balanced(w: &Word<char>) -> Result<Option<WellBalancedWitness>> {
    let classification = classify_language(w)?;
    if !classification.in_w() {
        return Err(Error::Precondition(
            "well-balanced is defined for words using both letter pairs",
        ));
    }
    let mut even_a_odd_c = None;
    let mut odd_a_even_c = None;
    let mut a_count = 0usize;
    let mut c_count = 0usize;
    let mut position = 0usize;
    for block in &classification.blocks {
        match block.pair {
            LetterPair::Ab => a_count += block.size,
            LetterPair::Cd => c_count += block.size,
        }
        position += 2 * block.size;
        if a_count.is_multiple_of(2) && c_count % 2 == 1 && even_a_odd_c.is_none() {
            even_a_odd_c = Some(position);
        }
        if a_count % 2 == 1 && c_count.is_multiple_of(2) && odd_a_even_c.is_none() {
            odd_a_even_c = Some(position);
        }
    }
    Ok(match (even_a_odd_c, odd_a_even_c) {
        (Some(e), Some(o)) => Some(WellBalancedWitness {
            even_a_odd_c_end: e,
            odd_a_even_c_end: o,
        }),
        _ => None,
    })
}

/// Parses the text syntax for words: ASCII lowercase letters, optional caret
/// run-length groups `l^k` with decimal `k ≥ 1`, parentheses and whitespace
/// ignored. Every letter must belong to `alphabet`.
pub fn parse_word(text: &str, alphabet: &[char]) -> Result<Word<char>> {
    let mut letters = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0usize;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        match ch {
            '(' | ')' => i += 1,
            c if c.is_ascii_whitespace() => i += 1,
            c if c.is_ascii_lowercase() => {
                if !alphabet.contains(&c) {
                    return Err(Error::Parse {
                        position: i,
                        message: format!("letter '{c}' is not in the alphabet"),
                    });
                }
                i += 1;
                let mut repeat = 1usize;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let digits_start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if digits_start == i {
                        return Err(Error::Parse {
                            position: digits_start,
                            message: "expected a decimal exponent after '^'".into(),
                        });
                    }
                    repeat = text[digits_start..i].parse().map_err(|_| Error::Parse {
                        position: digits_start,
                        message: "exponent does not fit in usize".into(),
                    })?;
                    if repeat == 0 {
                        return Err(Error::Parse {
                            position: digits_start,
                            message: "exponent must be at least 1".into(),
                        });
                    }
                }
                letters.extend(std::iter::repeat_n(c, repeat));
            }
            other => {
                return Err(Error::Parse {
                    position: i,
                    message: format!("unexpected character '{other}'"),
                });
            }
        }
    }
    Word::new(letters, alphabet.to_vec())
}

/// Run-length rendering, e.g. `xy^3zx^2z^2`.
pub fn caret_string(w: &Word<char>) -> String {
    let mut out = String::new();
    for (s, n) in w.runs() {
        out.push(s);
        if n > 1 {
            out.push_str(&format!("^{n}"));
        }
    }
    out
}

/// Block rendering, e.g. `(a^4b^4)(cd)(d^3c^3)`.
pub fn block_string(blocks: &[PairBlock]) -> String {
    let mut out = String::new();
    for b in blocks {
        let (lo, hi) = b.pair.symbols();
        let (first, second) = match b.orientation {
            Orientation::Ascending => (lo, hi),
            Orientation::Descending => (hi, lo),
        };
        if b.size == 1 {
            out.push_str(&format!("({first}{second})"));
        } else {
            out.push_str(&format!("({first}^{r}{second}^{r})", r = b.size));
        }
    }
    out
}
