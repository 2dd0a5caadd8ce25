//! Crossing signatures of 3-path systems: words over `x ≺ y ≺ z` where `x`
//! records a crossing of the two lowest paths, `y` of the outer pair and `z`
//! of the two highest.
//!
//! Validity is a pair of parity rules on runs. An irreducible signature is
//! extendable (realized by arbitrarily large regular systems) exactly when
//! it has an associated word over `{a,b,c,d}` and admits a three-part
//! factorization with a prescribed letter-count matrix; both checks live
//! here, together with the odd/even/mixed classification and the predicted
//! upper envelope of the systems built from a signature.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sweep;
use crate::tableau::{interlace_blocks, phi_tableau, word_from_pair_blocks, Tableau};
use crate::word::{
    caret_string, classify_language, factor_blocks, is_refinement, is_well_balanced, parse_word,
    LetterPair, Orientation, PairBlock, Word, XYZ,
};

/// A nonempty word over `{x,y,z}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Signature(Word<char>);

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Signature({})", caret_string(&self.0))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Signature {
    pub fn new(word: Word<char>) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::EmptySignature);
        }
        if word.letters().iter().any(|l| !XYZ.contains(l)) {
            return Err(Error::Precondition("signature letters must be x, y or z"));
        }
        Ok(Signature(word))
    }

    /// Parses the caret syntax, e.g. `xy^3zx^2z^2`.
    pub fn parse(text: &str) -> Result<Self> {
        Signature::new(parse_word(text, &XYZ)?)
    }

    pub fn word(&self) -> &Word<char> {
        &self.0
    }

    pub fn letters(&self) -> &[char] {
        self.0.letters()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Occurrence counts `(X, Y, Z)`.
    pub fn counts(&self) -> (usize, usize, usize) {
        let mut c = (0usize, 0usize, 0usize);
        for &l in self.0.letters() {
            match l {
                'x' => c.0 += 1,
                'y' => c.1 += 1,
                _ => c.2 += 1,
            }
        }
        c
    }

    pub fn count_x(&self) -> usize {
        self.counts().0
    }

    /// The reversed signature (horizontal reflection of the system).
    pub fn reversed(&self) -> Signature {
        let letters: Vec<char> = self.0.letters().iter().rev().copied().collect();
        Signature(Word::new(letters, XYZ.to_vec()).expect("same alphabet"))
    }

    /// Interchanges x and z (vertical reflection of the system).
    pub fn xz_swapped(&self) -> Signature {
        let letters: Vec<char> = self
            .0
            .letters()
            .iter()
            .map(|&l| match l {
                'x' => 'z',
                'z' => 'x',
                other => other,
            })
            .collect();
        Signature(Word::new(letters, XYZ.to_vec()).expect("same alphabet"))
    }

    /// Checks the two parity rules characterizing signatures: the word must
    /// start with `x` or `z`; after the leading run of length `p` the next
    /// letter is `y` iff `p` is odd; and an internal run `u v^p w` has
    /// `u = w` iff `p` is even. Reports the position of the first violating
    /// letter.
    pub fn validate(&self) -> Result<()> {
        let runs = self.0.runs();
        let first = runs[0].0;
        if first == 'y' {
            return Err(Error::InvalidSignature { position: 0 });
        }
        if runs.len() >= 2 {
            let (v, _) = runs[1];
            let p = runs[0].1;
            if (v == 'y') != (p % 2 == 1) {
                return Err(Error::InvalidSignature { position: p });
            }
        }
        let mut position = runs[0].1;
        for t in 1..runs.len().saturating_sub(1) {
            let (u, _) = runs[t - 1];
            let (_, p) = runs[t];
            let (w, _) = runs[t + 1];
            if (u == w) != (p % 2 == 0) {
                return Err(Error::InvalidSignature {
                    position: position + p,
                });
            }
            position += p;
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// The three two-letter restrictions `(σ_xy, σ_xz, σ_yz)`.
    pub fn restrictions(&self) -> (Word<char>, Word<char>, Word<char>) {
        let xy = self.0.restrict(&['x', 'y']).expect("x,y in alphabet");
        let xz = self.0.restrict(&['x', 'z']).expect("x,z in alphabet");
        let yz = self.0.restrict(&['y', 'z']).expect("y,z in alphabet");
        (xy, xz, yz)
    }

    /// The local sequences of the 3-path system with this signature: row 1
    /// is `σ_xy` with `x↦2, y↦3`, row 2 is `σ_xz` with `x↦1, z↦3`, row 3 is
    /// `σ_yz` with `y↦1, z↦2`.
    pub fn to_tableau3(&self) -> Result<Tableau> {
        self.validate()?;
        let (xy, xz, yz) = self.restrictions();
        let row1: Vec<u32> = xy
            .letters()
            .iter()
            .map(|&l| if l == 'x' { 2 } else { 3 })
            .collect();
        let row2: Vec<u32> = xz
            .letters()
            .iter()
            .map(|&l| if l == 'x' { 1 } else { 3 })
            .collect();
        let row3: Vec<u32> = yz
            .letters()
            .iter()
            .map(|&l| if l == 'y' { 1 } else { 2 })
            .collect();
        Tableau::new(vec![1, 2, 3], vec![row1, row2, row3])
    }

    /// No proper nonempty prefix has equal x, y and z counts.
    pub fn is_irreducible(&self) -> bool {
        let mut c = (0usize, 0usize, 0usize);
        for &l in &self.0.letters()[..self.0.len() - 1] {
            match l {
                'x' => c.0 += 1,
                'y' => c.1 += 1,
                _ => c.2 += 1,
            }
            if c.0 == c.1 && c.1 == c.2 && c.0 > 0 {
                return false;
            }
        }
        true
    }

    /// Greedy factorization into irreducible parts: cut at every position
    /// where the running x, y and z counts agree. Requires equal totals.
    pub fn irreducible_factorization(&self) -> Result<Vec<Signature>> {
        let (x, y, z) = self.counts();
        if x != y || y != z || x == 0 {
            return Err(Error::UnequalLetterCounts { x, y, z });
        }
        let mut factors = Vec::new();
        let mut c = (0usize, 0usize, 0usize);
        let mut start = 0usize;
        for (idx, &l) in self.0.letters().iter().enumerate() {
            match l {
                'x' => c.0 += 1,
                'y' => c.1 += 1,
                _ => c.2 += 1,
            }
            if c.0 == c.1 && c.1 == c.2 {
                let letters = self.0.letters()[start..=idx].to_vec();
                factors.push(Signature(
                    Word::new(letters, XYZ.to_vec()).expect("same alphabet"),
                ));
                start = idx + 1;
                c = (0, 0, 0);
            }
        }
        debug_assert_eq!(start, self.0.len());
        Ok(factors)
    }

    /// The unique word over `{a,b,c,d}` whose 3-path tableau realizes this
    /// signature, when it exists: `σ_xy` and `σ_yz` must factor into
    /// balanced blocks whose sizes refine the z- and x-exponent sequences of
    /// `σ_xz`; the blocks are then interlaced along the runs of `σ_xz`.
    ///
    /// The construction is prefix-local, so it is not restricted to
    /// irreducible input; on a concatenation it returns the concatenation of
    /// the factors' words.
    pub fn associated_word(&self) -> Result<Word<char>> {
        self.validate()?;
        let (xy, xz, yz) = self.restrictions();
        let cd_blocks = factor_blocks(&xy, ('x', 'y'))
            .map_err(|e| match e {
                Error::Unbalanced { position } => Error::Condition1Unbalanced {
                    restriction: "x,y",
                    position,
                },
                other => other,
            })?
            .blocks;
        let ab_blocks = factor_blocks(&yz, ('y', 'z'))
            .map_err(|e| match e {
                Error::Unbalanced { position } => Error::Condition1Unbalanced {
                    restriction: "y,z",
                    position,
                },
                other => other,
            })?
            .blocks;

        let exp_z = xz.exponent_sequence('z');
        let exp_x = xz.exponent_sequence('x');
        let cd_sizes: Vec<usize> = cd_blocks.iter().map(|b| b.size).collect();
        let ab_sizes: Vec<usize> = ab_blocks.iter().map(|b| b.size).collect();
        if !is_refinement(&cd_sizes, &exp_z) {
            return Err(Error::Condition1Refinement { restriction: "x,y" });
        }
        if !is_refinement(&ab_sizes, &exp_x) {
            return Err(Error::Condition1Refinement { restriction: "y,z" });
        }

        let spine: Vec<(LetterPair, usize)> = xz
            .runs()
            .into_iter()
            .map(|(l, len)| {
                (
                    if l == 'x' { LetterPair::Ab } else { LetterPair::Cd },
                    len,
                )
            })
            .collect();
        let blocks = interlace_blocks(&ab_blocks, &cd_blocks, &spine).ok_or(
            Error::Condition1Refinement {
                restriction: "x,z",
            },
        )?;
        let omega = word_from_pair_blocks(&blocks);
        debug_assert_eq!(omega.count('a'), omega.count('b'));
        debug_assert_eq!(omega.count('a'), omega.count('c'));
        debug_assert_eq!(omega.count('a'), omega.count('d'));
        Ok(omega)
    }
}

/// Which of the two factorization shapes a certificate matches.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateForm {
    AlphaBetaGamma,
    GammaBetaAlpha,
}

/// Witness for the three-part factorization: the word splits at
/// `splits = (i, j)` into parts whose letter-count matrix is
/// `(p,p,0) / (q,0,p) / (0,q,q)` (in the order given by `form`).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct KaraCertificate {
    pub form: CertificateForm,
    pub p: usize,
    pub q: usize,
    pub splits: (usize, usize),
}

fn prefix_counts(letters: &[char]) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity(letters.len() + 1);
    let mut c = (0usize, 0usize, 0usize);
    out.push(c);
    for &l in letters {
        match l {
            'x' => c.0 += 1,
            'y' => c.1 += 1,
            _ => c.2 += 1,
        }
        out.push(c);
    }
    out
}

impl Signature {
    /// Searches for a three-part factorization witness. The scan prefers the
    /// `α·β·γ` form and, within a form, the longest first part with the
    /// earliest second split; any witness is sufficient, none is canonical.
    pub fn condition2(&self) -> Result<Option<KaraCertificate>> {
        self.validate()?;
        let prefix = prefix_counts(self.0.letters());
        let len = self.0.len();
        let part = |from: usize, to: usize| {
            (
                prefix[to].0 - prefix[from].0,
                prefix[to].1 - prefix[from].1,
                prefix[to].2 - prefix[from].2,
            )
        };
        // α·β·γ with counts (p,p,0), (q,0,p), (0,q,q)
        for i in (0..=len).rev() {
            let alpha = part(0, i);
            if alpha.0 != alpha.1 || alpha.2 != 0 {
                continue;
            }
            let p = alpha.0;
            for j in i..=len {
                let beta = part(i, j);
                if beta.1 != 0 || beta.2 != p {
                    continue;
                }
                let q = beta.0;
                if part(j, len) != (0, q, q) || p + q == 0 {
                    continue;
                }
                return Ok(Some(KaraCertificate {
                    form: CertificateForm::AlphaBetaGamma,
                    p,
                    q,
                    splits: (i, j),
                }));
            }
        }
        // γ·β·α with counts (0,q,q), (q,0,p), (p,p,0)
        for i in (0..=len).rev() {
            let gamma = part(0, i);
            if gamma.0 != 0 || gamma.1 != gamma.2 {
                continue;
            }
            let q = gamma.1;
            for j in i..=len {
                let beta = part(i, j);
                if beta.0 != q || beta.1 != 0 {
                    continue;
                }
                let p = beta.2;
                if part(j, len) != (p, p, 0) || p + q == 0 {
                    continue;
                }
                return Ok(Some(KaraCertificate {
                    form: CertificateForm::GammaBetaAlpha,
                    p,
                    q,
                    splits: (i, j),
                }));
            }
        }
        Ok(None)
    }

    /// An irreducible signature is extendable iff it has an associated word
    /// and a three-part factorization witness.
    pub fn is_extendable(&self) -> Result<bool> {
        self.validate()?;
        if !self.is_irreducible() {
            return Err(Error::ReducibleSignature);
        }
        if self.associated_word().is_err() {
            return Ok(false);
        }
        Ok(self.condition2()?.is_some())
    }

    /// Odd/even/mixed classification of an extendable irreducible signature.
    pub fn classify(&self) -> Result<SignatureClass> {
        self.associated_word().map_err(|_| Error::NotExtendable {
            reason: "condition 1",
        })?;
        let certificate = self.condition2()?.ok_or(Error::NotExtendable {
            reason: "condition 2",
        })?;
        let r = self.count_x();
        debug_assert_eq!(r, certificate.p + certificate.q);
        let kind = if certificate.p > 0 && certificate.q > 0 {
            SignatureKind::Mixed
        } else if r % 2 == 1 {
            SignatureKind::Odd
        } else {
            SignatureKind::Even
        };
        Ok(SignatureClass {
            kind,
            r,
            p: certificate.p,
            q: certificate.q,
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignatureKind {
    Odd,
    Even,
    Mixed,
}

/// Classification data: `r` is the per-pair crossing count `X(σ)`, which
/// equals `p + q` whenever a certificate exists.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct SignatureClass {
    pub kind: SignatureKind,
    pub r: usize,
    pub p: usize,
    pub q: usize,
}

/// Result of checking the normal form of an associated word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OmegaFormCheck {
    pub ok: bool,
    pub reason: Option<String>,
}

fn reverse_word(w: &Word<char>) -> Word<char> {
    let letters: Vec<char> = w.letters().iter().rev().copied().collect();
    Word::new(letters, w.alphabet().to_vec()).expect("same alphabet")
}

/// Vertical flip in word space: reverses the four-letter alphabet.
fn vflip_word(w: &Word<char>) -> Word<char> {
    w.map(|l| match l {
        'a' => 'd',
        'b' => 'c',
        'c' => 'b',
        _ => 'a',
    })
}

/// Checks that the associated word of an extendable irreducible signature
/// has the shape dictated by its certificate, after normalizing by the two
/// reflection symmetries: `(a^p b^p)·δ` with all δ-blocks odd `{c,d}`-blocks
/// when `q = 0`, and `(a^p b^p)·δ·(c^q d^q)` with `δ` made of odd blocks and
/// the whole word well-balanced when `p, q > 0`.
pub fn check_omega_form(sigma: &Signature, omega: &Word<char>) -> Result<OmegaFormCheck> {
    let expected = sigma.associated_word()?;
    if *omega != expected {
        return Err(Error::Precondition(
            "omega must be the signature's associated word",
        ));
    }
    let certificate = sigma.condition2()?.ok_or(Error::NotExtendable {
        reason: "condition 2",
    })?;

    let mut word = omega.clone();
    let (mut p, mut q) = (certificate.p, certificate.q);
    if certificate.form == CertificateForm::GammaBetaAlpha {
        word = reverse_word(&word);
    }
    if p == 0 {
        word = reverse_word(&vflip_word(&word));
        (p, q) = (q, 0);
    }

    let fail = |reason: &str| OmegaFormCheck {
        ok: false,
        reason: Some(reason.to_string()),
    };

    let blocks = classify_language(&word)?.blocks;
    let first = match blocks.first() {
        Some(b) => *b,
        None => return Ok(fail("word is empty")),
    };
    let head = PairBlock {
        pair: LetterPair::Ab,
        orientation: Orientation::Ascending,
        size: p,
    };
    if first != head {
        return Ok(fail("word does not start with the ascending (a^p b^p) block"));
    }
    if q == 0 {
        let tail_ok = blocks[1..]
            .iter()
            .all(|b| b.pair == LetterPair::Cd && b.is_odd());
        if !tail_ok {
            return Ok(fail("tail is not a product of odd {c,d}-blocks"));
        }
        return Ok(OmegaFormCheck {
            ok: true,
            reason: None,
        });
    }
    let last = *blocks.last().expect("word has at least one block");
    let tail = PairBlock {
        pair: LetterPair::Cd,
        orientation: Orientation::Ascending,
        size: q,
    };
    if last != tail {
        return Ok(fail("word does not end with the ascending (c^q d^q) block"));
    }
    let middle_ok = blocks[1..blocks.len() - 1].iter().all(PairBlock::is_odd);
    if !middle_ok {
        return Ok(fail("middle is not a product of odd blocks"));
    }
    if is_well_balanced(&word)?.is_none() {
        return Ok(fail("word is not well-balanced"));
    }
    Ok(OmegaFormCheck {
        ok: true,
        reason: None,
    })
}

/// Predicts the upper envelope of the size-`n` regular system with signature
/// `σ` by composing per-factor envelopes: a factor preceded by an even total
/// crossing count contributes its own upper envelope, one preceded by an odd
/// total contributes its lower envelope (the arrangement is upside down
/// there), and the union over factors is the upper envelope of the whole.
pub fn predicted_upper_envelope(sigma: &Signature, n: usize) -> Result<BTreeSet<u32>> {
    if n < 4 {
        return Err(Error::Precondition("envelope prediction needs n >= 4"));
    }
    sigma.validate()?;
    let factors = sigma.irreducible_factorization()?;
    let mut upper = BTreeSet::new();
    let mut preceding_crossings = 0usize;
    for factor in &factors {
        if !factor.is_extendable()? {
            return Err(Error::NotExtendable {
                reason: "factor is not extendable",
            });
        }
        let omega = factor.associated_word()?;
        let tableau = phi_tableau(&omega, n)?;
        let report = sweep::envelopes(&tableau);
        let contribution = if preceding_crossings.is_multiple_of(2) {
            report.upper
        } else {
            report.lower
        };
        upper.extend(contribution);
        if upper.len() == n {
            break;
        }
        preceding_crossings += factor.count_x();
    }
    Ok(upper)
}

/// Recovers the signature realized by the 3-path tableau of a word in the
/// two-pair block language, when that tableau is geometric: the sweep's
/// crossing events, read as label pairs, spell the signature.
pub fn signature_of_word(omega: &Word<char>) -> Result<Option<Signature>> {
    let t3 = phi_tableau(omega, 3)?;
    let Some(diagram) = sweep::is_geometric(&t3) else {
        return Ok(None);
    };
    let mut letters = Vec::with_capacity(diagram.events().len());
    let mut pi: Vec<u32> = vec![1, 2, 3];
    for &h in diagram.events() {
        let (a, b) = (pi[h - 1], pi[h]);
        let pair = (a.min(b), a.max(b));
        letters.push(match pair {
            (1, 2) => 'x',
            (1, 3) => 'y',
            _ => 'z',
        });
        pi.swap(h - 1, h);
    }
    Ok(Some(Signature::new(Word::new(letters, XYZ.to_vec())?)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::block_string;

    fn sig(text: &str) -> Signature {
        Signature::parse(text).unwrap()
    }

    fn abcd(text: &str) -> Word<char> {
        parse_word(text, &['a', 'b', 'c', 'd']).unwrap()
    }

    #[test]
    fn validity_rules() {
        assert!(sig("xy^3zx^2z^2").is_valid());
        assert_eq!(
            sig("y").validate(),
            Err(Error::InvalidSignature { position: 0 })
        );
        assert_eq!(
            sig("xz").validate(),
            Err(Error::InvalidSignature { position: 1 })
        );
        // single-letter runs of x or z are always realizable
        assert!(sig("x").is_valid());
        assert!(sig("x^4").is_valid());
        assert!(sig("z^3").is_valid());
        assert!(!sig("y^2").is_valid());
        assert!(sig("xyz").is_valid());
        assert!(sig("zyx").is_valid());
        assert!(sig("xy^2x^4yz^4y^2z").is_valid());
        assert!(sig("xyzxy^2xz^3yxzy^2zx^2").is_valid());
    }

    #[test]
    fn restrictions_examples() {
        let s = sig("xy^3zx^2z^2");
        let (xy, xz, yz) = s.restrictions();
        assert_eq!(caret_string(&xy), "xy^3x^2");
        assert_eq!(caret_string(&xz), "xzx^2z^2");
        assert_eq!(caret_string(&yz), "y^3z^3");

        let (_, xz2, _) = sig("xy^4x^3z^4x^2zy^2z").restrictions();
        assert_eq!(caret_string(&xz2), "x^4z^4x^2z^2");

        let (xy3, xz3, yz3) = sig("x").restrictions();
        assert_eq!(xy3.letters(), &['x']);
        assert_eq!(xz3.letters(), &['x']);
        assert!(yz3.is_empty());
    }

    #[test]
    fn tableau3_examples() {
        let t = sig("xy^3zx^2z^2").to_tableau3().unwrap();
        assert_eq!(t.row(0).letters(), &[2, 3, 3, 3, 2, 2]);
        assert_eq!(t.row(1).letters(), &[1, 3, 1, 1, 3, 3]);
        assert_eq!(t.row(2).letters(), &[1, 1, 1, 2, 2, 2]);

        let t2 = sig("xyz").to_tableau3().unwrap();
        assert_eq!(t2.row(0).letters(), &[2, 3]);
        assert_eq!(t2.row(1).letters(), &[1, 3]);
        assert_eq!(t2.row(2).letters(), &[1, 2]);

        let t3 = sig("x").to_tableau3().unwrap();
        assert_eq!(t3.row(0).letters(), &[2]);
        assert_eq!(t3.row(1).letters(), &[1]);
        assert!(t3.row(2).is_empty());
    }

    #[test]
    fn irreducible_factorization_examples() {
        let f = sig("xyz^3xy^2x").irreducible_factorization().unwrap();
        assert_eq!(f, vec![sig("xyz"), sig("z^2xy^2x")]);

        let g = sig("xyzxy^2xz^3yxzy^2zx^2")
            .irreducible_factorization()
            .unwrap();
        assert_eq!(
            g,
            vec![sig("xyz"), sig("xy^2xz^2"), sig("zyx"), sig("zy^2zx^2")]
        );

        assert_eq!(
            sig("xyz").irreducible_factorization().unwrap(),
            vec![sig("xyz")]
        );

        assert!(sig("xy").irreducible_factorization().is_err());
    }

    #[test]
    fn associated_word_examples() {
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
        assert_eq!(sig("xyz").associated_word().unwrap(), abcd("(ab)(cd)"));
    }

    #[test]
    fn associated_word_failure_reports_restriction() {
        // x^2 z^2: σ_xy = x^2 is unbalanced
        assert!(matches!(
            sig("x^2z^2").associated_word(),
            Err(Error::Condition1Unbalanced {
                restriction: "x,y",
                ..
            })
        ));
    }

    #[test]
    fn condition2_examples() {
        let c = sig("xy^4x^3z^4x^2zy^2z").condition2().unwrap().unwrap();
        assert_eq!(c.form, CertificateForm::AlphaBetaGamma);
        assert_eq!((c.p, c.q), (4, 2));
        assert_eq!(c.splits, (8, 14));

        let c2 = sig("xyz").condition2().unwrap().unwrap();
        assert_eq!(c2.form, CertificateForm::AlphaBetaGamma);
        assert_eq!((c2.p, c2.q), (1, 0));
        assert_eq!(c2.splits, (2, 3));

        assert_eq!(sig("xy^2x^4yz^4y^2z").condition2().unwrap(), None);
    }

    #[test]
    fn extendability_examples() {
        assert!(sig("xy^2x^3z^2xyz^2y^2z").is_extendable().unwrap());
        assert!(!sig("xy^2x^4yz^4y^2z").is_extendable().unwrap());
        assert!(sig("xyz").is_extendable().unwrap());
        assert!(matches!(
            sig("xyzxyz").is_extendable(),
            Err(Error::ReducibleSignature)
        ));
    }

    #[test]
    fn classification_examples() {
        let odd = sig("xyz").classify().unwrap();
        assert_eq!(odd.kind, SignatureKind::Odd);
        assert_eq!((odd.r, odd.p, odd.q), (1, 1, 0));

        let even = sig("xy^2xz^2").classify().unwrap();
        assert_eq!(even.kind, SignatureKind::Even);
        assert_eq!((even.r, even.p, even.q), (2, 2, 0));

        let mixed = sig("xy^2x^3z^3y^2z").classify().unwrap();
        assert_eq!(mixed.kind, SignatureKind::Mixed);
        assert_eq!((mixed.p, mixed.q), (2, 2));
        assert_eq!(mixed.r, 4);
    }

    #[test]
    fn omega_form_covers_both_reflections() {
        // reversal and x/z interchange move the certificate through the
        // γ·β·α and p=0 branches; the shape check must normalize them all
        let mixed = sig("xy^2x^3z^3y^2z");
        let even = sig("xy^2xz^2");
        let odd = sig("xyz");
        for base in [odd, even, mixed] {
            for sigma in [
                base.clone(),
                base.reversed(),
                base.xz_swapped(),
                base.reversed().xz_swapped(),
            ] {
                let omega = sigma.associated_word().unwrap();
                let check = check_omega_form(&sigma, &omega).unwrap();
                assert!(check.ok, "{sigma}: {:?}", check.reason);
            }
        }
    }

    #[test]
    fn omega_form_examples() {
        let s1 = sig("xyz");
        let w1 = s1.associated_word().unwrap();
        assert!(check_omega_form(&s1, &w1).unwrap().ok);

        let s2 = sig("xy^2x^3z^3y^2z");
        let w2 = s2.associated_word().unwrap();
        assert_eq!(w2, abcd("(a^2b^2)(ba)(ab)(cd)(dc)(c^2d^2)"));
        assert!(check_omega_form(&s2, &w2).unwrap().ok);

        let s3 = sig("xy^4x^3z^4x^2zy^2z");
        let w3 = s3.associated_word().unwrap();
        assert!(check_omega_form(&s3, &w3).unwrap().ok);

        // mismatched word is a precondition violation
        assert!(check_omega_form(&s1, &w2).is_err());
    }

    #[test]
    fn predicted_envelope_examples() {
        let odd = predicted_upper_envelope(&sig("xyz"), 4).unwrap();
        assert_eq!(odd.into_iter().collect::<Vec<_>>(), vec![1, 4]);

        let two = predicted_upper_envelope(&sig("xyz^3xy^2x"), 4).unwrap();
        assert_eq!(two.into_iter().collect::<Vec<_>>(), vec![1, 2, 4]);

        let four = predicted_upper_envelope(&sig("xyzxy^2xz^3yxzy^2zx^2"), 5).unwrap();
        assert_eq!(four.into_iter().collect::<Vec<_>>(), vec![1, 2, 4, 5]);

        assert!(matches!(
            predicted_upper_envelope(&sig("xy^2x^4yz^4y^2z"), 4),
            Err(Error::NotExtendable { .. })
        ));
    }

    #[test]
    fn signature_recovery_round_trips() {
        for text in ["xyz", "xy^2xz^2", "xy^2x^3z^3y^2z", "xy^4x^3z^4x^2zy^2z"] {
            let s = sig(text);
            let omega = s.associated_word().unwrap();
            let recovered = signature_of_word(&omega).unwrap().unwrap();
            assert_eq!(recovered, s, "word {}", block_string(&classify_language(&omega).unwrap().blocks));
        }
    }

    #[test]
    fn associated_word_tableau_equals_the_signature_tableau() {
        // the 3-path tableau built from the word equals the one read off
        // the signature's restrictions
        for text in [
            "xyz",
            "zyx",
            "xy^2xz^2",
            "xy^2x^3z^3y^2z",
            "xy^4x^3z^4x^2zy^2z",
            "xy^2x^2yzx^4z^3y^4z^3",
            "xy^2x^3z^2xyz^2y^2z",
        ] {
            let s = sig(text);
            let omega = s.associated_word().unwrap();
            assert_eq!(
                phi_tableau(&omega, 3).unwrap(),
                s.to_tableau3().unwrap(),
                "{text}"
            );
        }
    }
}
