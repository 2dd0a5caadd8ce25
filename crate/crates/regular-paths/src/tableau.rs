//! Tableaux on ordered ground sets of integer labels.
//!
//! A tableau has one row per label; the row for label `a` is a word over the
//! remaining labels. Row 1 (the smallest label) is the bottom path. The
//! module provides restriction, order equivalence, the regularity and
//! pangrammatic predicates, the canonical construction of regular tableaux
//! from words over `{a,b,c,d}`, rowwise concatenation, and the inverse map
//! recovering the word from a regular pangrammatic tableau.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{
    classify_language, factor_blocks, is_refinement, Block, LetterPair, Orientation, PairBlock,
    Word, AB, ABCD,
};

/// A tableau: sorted distinct positive labels plus one row per label.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tableau {
    ground: Vec<u32>,
    rows: Vec<Word<u32>>,
}

#[derive(Serialize, Deserialize)]
struct TableauRepr {
    ground: Vec<u32>,
    rows: Vec<Vec<u32>>,
}

impl Serialize for Tableau {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        TableauRepr {
            ground: self.ground.clone(),
            rows: self.rows.iter().map(|r| r.letters().to_vec()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = TableauRepr::deserialize(deserializer)?;
        Tableau::new(repr.ground, repr.rows).map_err(serde::de::Error::custom)
    }
}

impl Tableau {
    /// Builds a tableau from its ground set and rows (given bottom-up, i.e.
    /// in increasing label order). Every row entry must be a ground label
    /// distinct from the row's own label.
    pub fn new(ground: Vec<u32>, rows: Vec<Vec<u32>>) -> Result<Self> {
        let mut sorted = ground.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != ground.len() || sorted != ground {
            return Err(Error::Precondition(
                "ground set must be sorted and free of duplicates",
            ));
        }
        if ground.contains(&0) {
            return Err(Error::Precondition("labels must be positive"));
        }
        if rows.len() != ground.len() {
            return Err(Error::Precondition("one row per ground label required"));
        }
        let mut words = Vec::with_capacity(rows.len());
        for (i, row) in rows.into_iter().enumerate() {
            let label = ground[i];
            for &entry in &row {
                if entry == label {
                    return Err(Error::RowMentionsOwnLabel { label });
                }
                if ground.binary_search(&entry).is_err() {
                    return Err(Error::LabelNotInGround { label: entry });
                }
            }
            let alphabet: Vec<u32> = ground.iter().copied().filter(|&g| g != label).collect();
            words.push(Word::new(row, alphabet)?);
        }
        Ok(Tableau {
            ground,
            rows: words,
        })
    }

    /// The empty-rows tableau on the given ground set.
    pub fn empty(ground: Vec<u32>) -> Result<Self> {
        let n = ground.len();
        Tableau::new(ground, vec![Vec::new(); n])
    }

    pub fn ground(&self) -> &[u32] {
        &self.ground
    }

    pub fn size(&self) -> usize {
        self.ground.len()
    }

    /// Row by 0-based position (position 0 = smallest label = bottom path).
    pub fn row(&self, index: usize) -> &Word<u32> {
        &self.rows[index]
    }

    pub fn rows(&self) -> &[Word<u32>] {
        &self.rows
    }

    pub fn row_of_label(&self, label: u32) -> Result<&Word<u32>> {
        let idx = self
            .ground
            .binary_search(&label)
            .map_err(|_| Error::LabelNotInGround { label })?;
        Ok(&self.rows[idx])
    }

    /// Restriction to a label subset of size at least 2: keeps the rows of
    /// the subset, each restricted to the subset.
    pub fn restrict(&self, labels: &[u32]) -> Result<Tableau> {
        let mut keep = labels.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if keep.len() < 2 {
            return Err(Error::Precondition(
                "restriction needs at least two labels",
            ));
        }
        for &l in &keep {
            if self.ground.binary_search(&l).is_err() {
                return Err(Error::LabelNotInGround { label: l });
            }
        }
        let mut rows = Vec::with_capacity(keep.len());
        for &l in &keep {
            let others: Vec<u32> = keep.iter().copied().filter(|&k| k != l).collect();
            let row = self.row_of_label(l)?.restrict(&others)?;
            rows.push(row.letters().to_vec());
        }
        Tableau::new(keep, rows)
    }

    /// Relabels the ground set by rank onto `1..=n`.
    pub fn normalize(&self) -> Tableau {
        let rank = |label: u32| (self.ground.binary_search(&label).unwrap() + 1) as u32;
        let ground: Vec<u32> = (1..=self.ground.len() as u32).collect();
        let rows: Vec<Vec<u32>> = self
            .rows
            .iter()
            .map(|r| r.letters().iter().map(|&l| rank(l)).collect())
            .collect();
        Tableau::new(ground, rows).expect("rank relabeling preserves validity")
    }

    /// Order equivalence: equal after relabeling each ground set by rank.
    /// Tableaux of different sizes are simply not equivalent.
    pub fn order_equivalent(&self, other: &Tableau) -> bool {
        if self.size() != other.size() {
            return false;
        }
        self.normalize() == other.normalize()
    }

    /// A tableau is regular when it has at least 4 labels and all 3-subset
    /// restrictions are pairwise order equivalent. Each restriction is
    /// compared against the restriction to the three smallest labels.
    pub fn is_regular(&self) -> bool {
        let n = self.size();
        if n < 4 {
            return false;
        }
        let reference = self
            .restrict(&self.ground[..3])
            .expect("3-subset restriction of a valid tableau")
            .normalize();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let subset = [self.ground[i], self.ground[j], self.ground[k]];
                    let restricted = self
                        .restrict(&subset)
                        .expect("3-subset restriction of a valid tableau")
                        .normalize();
                    if restricted != reference {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every ground label occurs in some row.
    pub fn is_pangrammatic(&self) -> bool {
        self.ground.iter().all(|&label| {
            self.rows
                .iter()
                .any(|row| row.letters().contains(&label))
        })
    }

    /// Rowwise concatenation; both tableaux must share the ground set.
    pub fn concat(&self, other: &Tableau) -> Result<Tableau> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch);
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.concat(b).letters().to_vec())
            .collect();
        Tableau::new(self.ground.clone(), rows)
    }

    /// Plain-text rendering: one line per row, top row first so the bottom
    /// path ends up on the bottom line.
    pub fn render_text(&self) -> String {
        let label_width = self
            .ground
            .iter()
            .map(|g| g.to_string().len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for idx in (0..self.size()).rev() {
            let label = self.ground[idx];
            out.push_str(&format!("{label:>label_width$} |"));
            for entry in self.rows[idx].letters() {
                out.push_str(&format!(" {entry}"));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::Precondition("n must be at least 3"));
    }
    Ok(())
}

/// The canonical regular sequence on `[n]` for a balanced word over `{a,b}`:
/// an ascending block of half-length `r` maps to `1×r, …, n×r`, a descending
/// block to the reverse; blocks concatenate.
pub fn phi_sequence(omega: &Word<char>, n: usize) -> Result<Word<u32>> {
    check_n(n)?;
    let factored = factor_blocks(omega, AB)?;
    let mut letters = Vec::new();
    for block in &factored.blocks {
        push_ramp(&mut letters, 1, n as u32, block.orientation, block.size);
    }
    Word::new(letters, (1..=n as u32).collect())
}

fn push_ramp(out: &mut Vec<u32>, from: u32, to: u32, orientation: Orientation, r: usize) {
    match orientation {
        Orientation::Ascending => {
            for v in from..=to {
                out.extend(std::iter::repeat_n(v, r));
            }
        }
        Orientation::Descending => {
            for v in (from..=to).rev() {
                out.extend(std::iter::repeat_n(v, r));
            }
        }
    }
}

/// Row `i` of the canonical tableau for one block.
fn phi_row_block(out: &mut Vec<u32>, block: &PairBlock, i: usize, n: usize) {
    match block.pair {
        LetterPair::Ab => {
            if i > 1 {
                push_ramp(out, 1, (i - 1) as u32, block.orientation, block.size);
            }
        }
        LetterPair::Cd => {
            if i < n {
                push_ramp(out, (i + 1) as u32, n as u32, block.orientation, block.size);
            }
        }
    }
}

/// The canonical tableau on `[n]` for a word in the two-pair block language:
/// `{a,b}`-blocks sweep the labels below row `i`, `{c,d}`-blocks the labels
/// above. The result is regular for every `n ≥ 4`.
pub fn phi_tableau(omega: &Word<char>, n: usize) -> Result<Tableau> {
    check_n(n)?;
    let classification = classify_language(omega)?;
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n {
        let mut row = Vec::new();
        for block in &classification.blocks {
            phi_row_block(&mut row, block, i, n);
        }
        rows.push(row);
    }
    Tableau::new((1..=n as u32).collect(), rows)
}

/// Pops blocks from the front of `queue` whose half-lengths sum to exactly
/// `target`. Returns None when the sizes cannot meet the target.
fn take_blocks(queue: &mut std::collections::VecDeque<Block>, target: usize) -> Option<Vec<Block>> {
    let mut taken = Vec::new();
    let mut sum = 0usize;
    while sum < target {
        let block = queue.pop_front()?;
        sum += block.size;
        taken.push(block);
    }
    (sum == target).then_some(taken)
}

/// Interlaces `{a,b}`- and `{c,d}`-block queues along a spine of
/// (side, run-length) entries. Each run consumes blocks of its side whose
/// half-lengths sum to the run length. Fails when a run cannot be covered or
/// blocks are left over.
pub(crate) fn interlace_blocks(
    ab_blocks: &[Block],
    cd_blocks: &[Block],
    spine: &[(LetterPair, usize)],
) -> Option<Vec<PairBlock>> {
    let mut ab: std::collections::VecDeque<Block> = ab_blocks.iter().copied().collect();
    let mut cd: std::collections::VecDeque<Block> = cd_blocks.iter().copied().collect();
    let mut out = Vec::new();
    for &(side, run) in spine {
        let queue = match side {
            LetterPair::Ab => &mut ab,
            LetterPair::Cd => &mut cd,
        };
        for block in take_blocks(queue, run)? {
            out.push(PairBlock {
                pair: side,
                orientation: block.orientation,
                size: block.size,
            });
        }
    }
    (ab.is_empty() && cd.is_empty()).then_some(out)
}

pub(crate) fn word_from_pair_blocks(blocks: &[PairBlock]) -> Word<char> {
    let mut letters = Vec::new();
    for b in blocks {
        letters.extend(b.letters());
    }
    Word::new(letters, ABCD.to_vec()).expect("pair blocks expand over {a,b,c,d}")
}

/// Recovers the unique word whose canonical tableau equals `N(T)`. Reads the
/// restriction to the three smallest labels: its top row gives the
/// `{a,b}`-blocks, its bottom row the `{c,d}`-blocks, and the middle row's
/// run structure dictates the interlacing. The reconstruction is verified by
/// rebuilding the tableau.
pub fn word_of_regular_tableau(t: &Tableau) -> Result<Word<char>> {
    if !t.is_regular() {
        return Err(Error::NotRegularConstructible {
            reason: "tableau is not regular".into(),
        });
    }
    if !t.is_pangrammatic() {
        return Err(Error::NotRegularConstructible {
            reason: "tableau is not pangrammatic".into(),
        });
    }
    let u = t.restrict(&t.ground()[..3])?.normalize();
    let alpha = u.row(2).map(|l| if l == 1 { 'a' } else { 'b' });
    let gamma = u.row(0).map(|l| if l == 2 { 'c' } else { 'd' });
    let ab_blocks = factor_blocks(&alpha, ('a', 'b'))
        .map_err(|_| Error::NotRegularConstructible {
            reason: "top row of the 3-restriction is not balanced".into(),
        })?
        .blocks;
    let cd_blocks = factor_blocks(&gamma, ('c', 'd'))
        .map_err(|_| Error::NotRegularConstructible {
            reason: "bottom row of the 3-restriction is not balanced".into(),
        })?
        .blocks;
    let spine: Vec<(LetterPair, usize)> = u
        .row(1)
        .runs()
        .into_iter()
        .map(|(l, len)| {
            (
                if l == 1 { LetterPair::Ab } else { LetterPair::Cd },
                len,
            )
        })
        .collect();

    let ab_sizes: Vec<usize> = ab_blocks.iter().map(|b| b.size).collect();
    let cd_sizes: Vec<usize> = cd_blocks.iter().map(|b| b.size).collect();
    let exp_ab: Vec<usize> = spine
        .iter()
        .filter(|(s, _)| *s == LetterPair::Ab)
        .map(|&(_, len)| len)
        .collect();
    let exp_cd: Vec<usize> = spine
        .iter()
        .filter(|(s, _)| *s == LetterPair::Cd)
        .map(|&(_, len)| len)
        .collect();
    if !is_refinement(&ab_sizes, &exp_ab) || !is_refinement(&cd_sizes, &exp_cd) {
        return Err(Error::NotRegularConstructible {
            reason: "block sizes do not refine the middle row's runs".into(),
        });
    }

    let blocks =
        interlace_blocks(&ab_blocks, &cd_blocks, &spine).ok_or(Error::NotRegularConstructible {
            reason: "interlacing the blocks along the middle row failed".into(),
        })?;
    let omega = word_from_pair_blocks(&blocks);
    let rebuilt = phi_tableau(&omega, t.size())?;
    if rebuilt != t.normalize() {
        return Err(Error::NotRegularConstructible {
            reason: "reconstructed word does not reproduce the tableau".into(),
        });
    }
    Ok(omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;
    use proptest::prelude::*;

    fn abcd(text: &str) -> Word<char> {
        parse_word(text, &ABCD).unwrap()
    }

    fn tableau(ground: &[u32], rows: &[&[u32]]) -> Tableau {
        Tableau::new(ground.to_vec(), rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    /// The regular tableau on [4] displayed with top row (1,2,3).
    fn regular_on_four() -> Tableau {
        tableau(
            &[1, 2, 3, 4],
            &[
                &[4, 4, 3, 3, 2, 2],
                &[4, 4, 3, 3, 1],
                &[4, 4, 1, 2],
                &[1, 2, 3],
            ],
        )
    }

    #[test]
    fn construction_rejects_malformed_rows() {
        assert!(matches!(
            Tableau::new(vec![1, 2], vec![vec![1], vec![1]]),
            Err(Error::RowMentionsOwnLabel { label: 1 })
        ));
        assert!(matches!(
            Tableau::new(vec![1, 2], vec![vec![5], vec![1]]),
            Err(Error::LabelNotInGround { label: 5 })
        ));
        assert!(Tableau::new(vec![2, 1], vec![vec![], vec![]]).is_err());
    }

    #[test]
    fn restriction_examples() {
        let t = regular_on_four();
        let r = t.restrict(&[1, 2, 3]).unwrap();
        assert_eq!(
            r,
            tableau(&[1, 2, 3], &[&[3, 3, 2, 2], &[3, 3, 1], &[1, 2]])
        );

        assert_eq!(t.restrict(&[1, 2, 3, 4]).unwrap(), t);

        let phi4 = phi_tableau(&abcd("(ab)(cd)"), 4).unwrap();
        let phi3 = phi_tableau(&abcd("(ab)(cd)"), 3).unwrap();
        assert!(phi4.restrict(&[1, 2, 4]).unwrap().order_equivalent(&phi3));
    }

    #[test]
    fn order_equivalence_via_rank_relabeling() {
        let t = tableau(
            &[4, 7, 9],
            &[&[7, 9, 7, 9, 9, 7], &[9, 9, 4, 4], &[4, 7, 7, 4, 7]],
        );
        let n = tableau(
            &[1, 2, 3],
            &[&[2, 3, 2, 3, 3, 2], &[3, 3, 1, 1], &[1, 2, 2, 1, 2]],
        );
        assert!(t.order_equivalent(&n));
        assert!(t.order_equivalent(&t));

        let u = phi_tableau(&abcd("(ab)(cd)"), 4).unwrap();
        let v = phi_tableau(&abcd("(ba)(cd)"), 4).unwrap();
        assert!(!u.order_equivalent(&v));
    }

    #[test]
    fn regularity() {
        assert!(regular_on_four().is_regular());

        let irregular = tableau(
            &[1, 2, 3, 4],
            &[&[2, 3, 2, 4, 3], &[1, 3, 1, 4], &[1, 2, 4, 1], &[2, 1, 3]],
        );
        assert!(!irregular.is_regular());

        let three = tableau(&[1, 2, 3], &[&[2, 3], &[1, 3], &[1, 2]]);
        assert!(!three.is_regular());
    }

    #[test]
    fn pangrammatic() {
        assert!(phi_tableau(&abcd("(ab)(cd)"), 4).unwrap().is_pangrammatic());
        // a pure {a,b} word never mentions the top label
        assert!(!phi_tableau(&abcd("(ab)"), 4).unwrap().is_pangrammatic());
        assert!(!Tableau::empty(vec![1, 2, 3]).unwrap().is_pangrammatic());
    }

    #[test]
    fn phi_sequence_examples() {
        let nu = phi_sequence(&abcd("(ab)(a^2b^2)(ba)"), 3).unwrap();
        assert_eq!(nu.letters(), &[1, 2, 3, 1, 1, 2, 2, 3, 3, 3, 2, 1]);

        let simple = phi_sequence(&abcd("ab"), 3).unwrap();
        assert_eq!(simple.letters(), &[1, 2, 3]);

        let nu4 = phi_sequence(&abcd("(ab)(ba)"), 4).unwrap();
        let restricted = nu4.restrict(&[2, 4]).unwrap();
        assert!(restricted.order_equivalent(&abcd("abba")));

        assert!(phi_sequence(&abcd("aab"), 3).is_err());
    }

    #[test]
    fn phi_tableau_examples() {
        let t = phi_tableau(&abcd("(ab)(d^2c^2)(ba)"), 4).unwrap();
        assert_eq!(
            t,
            tableau(
                &[1, 2, 3, 4],
                &[
                    &[4, 4, 3, 3, 2, 2],
                    &[1, 4, 4, 3, 3, 1],
                    &[1, 2, 4, 4, 2, 1],
                    &[1, 2, 3, 3, 2, 1],
                ],
            )
        );

        let s1 = phi_tableau(&abcd("(ab)(cd)"), 4).unwrap();
        assert_eq!(
            s1,
            tableau(
                &[1, 2, 3, 4],
                &[&[2, 3, 4], &[1, 3, 4], &[1, 2, 4], &[1, 2, 3]],
            )
        );

        let long = phi_tableau(&abcd("(ab)(cd)(cd)(dc)(a^2b^2)"), 4).unwrap();
        assert_eq!(long.row(0).letters(), &[2, 3, 4, 2, 3, 4, 4, 3, 2]);

        // the middle row of the 5-path tableau is order equivalent to the word
        let t5 = phi_tableau(&abcd("(ab)(d^2c^2)(ba)"), 5).unwrap();
        assert!(t5.row(2).order_equivalent(&abcd("(ab)(d^2c^2)(ba)")));
    }

    #[test]
    fn concatenation() {
        let left = phi_tableau(&abcd("(ab)(cd)"), 4).unwrap();
        let right = phi_tableau(&abcd("(cd)(dc)(b^2a^2)"), 4).unwrap();
        let whole = phi_tableau(&abcd("(ab)(cd)(cd)(dc)(b^2a^2)"), 4).unwrap();
        assert_eq!(left.concat(&right).unwrap(), whole);

        let empty = Tableau::empty(vec![1, 2, 3, 4]).unwrap();
        assert_eq!(left.concat(&empty).unwrap(), left);

        let other_ground = Tableau::empty(vec![1, 2, 3]).unwrap();
        assert!(matches!(
            left.concat(&other_ground),
            Err(Error::GroundMismatch)
        ));
    }

    #[test]
    fn word_recovery_examples() {
        let t = regular_on_four();
        let omega = word_of_regular_tableau(&t).unwrap();
        assert_eq!(omega, abcd("(d^2c^2)(ab)"));
        assert_eq!(phi_tableau(&omega, 4).unwrap(), t);

        let big = abcd("(a^4b^4)(cd)(d^3c^3)(ba)(ab)(c^2d^2)");
        let t5 = phi_tableau(&big, 5).unwrap();
        assert_eq!(word_of_regular_tableau(&t5).unwrap(), big);

        let not_pangrammatic = phi_tableau(&abcd("(ab)"), 4).unwrap();
        assert!(matches!(
            word_of_regular_tableau(&not_pangrammatic),
            Err(Error::NotRegularConstructible { .. })
        ));
    }

    /// Strategy producing words in the two-pair block language.
    fn b_star_word() -> impl Strategy<Value = Word<char>> {
        proptest::collection::vec((0..2usize, 0..2usize, 1..4usize), 1..5).prop_map(|specs| {
            let blocks: Vec<PairBlock> = specs
                .into_iter()
                .map(|(pair, orient, size)| PairBlock {
                    pair: if pair == 0 { LetterPair::Ab } else { LetterPair::Cd },
                    orientation: if orient == 0 {
                        Orientation::Ascending
                    } else {
                        Orientation::Descending
                    },
                    size,
                })
                .collect();
            word_from_pair_blocks(&blocks)
        })
    }

    proptest! {
        #[test]
        fn concat_commutes_with_phi(w1 in b_star_word(), w2 in b_star_word()) {
            let t1 = phi_tableau(&w1, 4).unwrap();
            let t2 = phi_tableau(&w2, 4).unwrap();
            let joined = phi_tableau(&w1.concat(&w2), 4).unwrap();
            prop_assert_eq!(t1.concat(&t2).unwrap(), joined);
        }

        #[test]
        fn phi_is_regular_and_invertible(w1 in b_star_word()) {
            let t = phi_tableau(&w1, 5).unwrap();
            prop_assert!(t.is_regular());
            if classify_language(&w1).unwrap().in_w() {
                prop_assert_eq!(word_of_regular_tableau(&t).unwrap(), w1);
            } else {
                prop_assert!(!t.is_pangrammatic());
            }
        }
    }
}
