//! Brute-force enumerators and cross-validation suites.
//!
//! Everything here exists to check the fast implementations at desk scale:
//! a 3-path permutation automaton independent of the parity rules, exhaustive
//! signature and wiring-diagram enumeration, an exhaustive realizability
//! search independent of the greedy sweep, and the headline verification
//! runs (the six-tangent construction, the envelope theorems, and the
//! 3-path convexity constant). Enumerators are deterministic: repeated runs
//! produce identical ordered output, also under the `parallel` feature.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::signature::{predicted_upper_envelope, Signature};
use crate::sweep::{
    envelopes, geometric_envelopes, is_geometric, local_sequences, subsystem_envelope_scan,
    WiringDiagram,
};
use crate::tableau::{phi_tableau, Tableau};
use crate::word::{Word, XYZ};

/// Caps for the exhaustive enumerators. Exceeding `max_candidates` is an
/// explicit error, never silent truncation.
#[derive(Clone, Copy, Debug)]
pub struct EnumerationBudget {
    pub max_paths: usize,
    pub max_pair_crossings: usize,
    pub max_events: usize,
    pub max_candidates: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_paths: 8,
            max_pair_crossings: 8,
            max_events: 64,
            max_candidates: 10_000_000,
        }
    }
}

impl EnumerationBudget {
    pub fn with_max_candidates(max_candidates: u64) -> Self {
        EnumerationBudget {
            max_candidates,
            ..EnumerationBudget::default()
        }
    }
}

/// Simulates three paths as a permutation of `{1,2,3}` (bottom to top):
/// a crossing is possible only for the two paths currently adjacent. This is
/// the ground truth the parity-rule validity check is measured against.
pub fn automaton_accepts(letters: &[char]) -> bool {
    let mut order = [1u8, 2, 3];
    for &l in letters {
        let (a, b) = match l {
            'x' => (1, 2),
            'y' => (1, 3),
            _ => (2, 3),
        };
        let pa = order.iter().position(|&v| v == a).unwrap();
        let pb = order.iter().position(|&v| v == b).unwrap();
        if pa.abs_diff(pb) != 1 {
            return false;
        }
        order.swap(pa, pb);
    }
    true
}

/// All signatures of systems of size 3 in which every pair crosses between
/// 1 and `k` times.
#[derive(Clone, Debug)]
pub struct SignatureCensus {
    pub k: usize,
    pub signatures: Vec<Signature>,
    pub count: usize,
}

fn decode_word(mut code: u64, len: usize) -> Vec<char> {
    // most significant digit first, so code order is lexicographic order
    let mut letters = vec!['x'; len];
    for slot in letters.iter_mut().rev() {
        *slot = XYZ[(code % 3) as usize];
        code /= 3;
    }
    letters
}

fn census_candidate(code: u64, len: usize, k: usize) -> Option<Signature> {
    let letters = decode_word(code, len);
    let mut counts = [0usize; 3];
    for &l in &letters {
        counts[match l {
            'x' => 0,
            'y' => 1,
            _ => 2,
        }] += 1;
    }
    if counts.iter().any(|&c| c == 0 || c > k) {
        return None;
    }
    // the parity rules must agree with the automaton; the census only admits
    // words accepted by both
    if !automaton_accepts(&letters) {
        return None;
    }
    let signature = Signature::new(Word::new(letters, XYZ.to_vec()).ok()?).ok()?;
    signature.is_valid().then_some(signature)
}

fn census_budget(k: usize, budget: &EnumerationBudget) -> Result<()> {
    if k == 0 {
        return Err(Error::Precondition("census needs k >= 1"));
    }
    if k > budget.max_pair_crossings {
        return Err(Error::Precondition("k exceeds the pair-crossing budget"));
    }
    let mut total: u64 = 0;
    for len in 3..=3 * k {
        total = total.saturating_add(3u64.saturating_pow(len as u32));
    }
    if total > budget.max_candidates {
        return Err(Error::BudgetExceeded {
            limit: budget.max_candidates,
        });
    }
    Ok(())
}

/// Enumerates the signature census for `k` by filtering every word over
/// `{x,y,z}` of length `3..=3k` whose letter counts lie in `[1,k]`.
pub fn enumerate_signatures(k: usize, budget: &EnumerationBudget) -> Result<SignatureCensus> {
    census_budget(k, budget)?;
    let mut signatures = Vec::new();
    for len in 3..=3 * k {
        let total = 3u64.pow(len as u32);
        #[cfg(feature = "parallel")]
        let mut found: Vec<Signature> = (0..total)
            .into_par_iter()
            .filter_map(|code| census_candidate(code, len, k))
            .collect();
        #[cfg(not(feature = "parallel"))]
        let mut found: Vec<Signature> =
            (0..total).filter_map(|code| census_candidate(code, len, k)).collect();
        signatures.append(&mut found);
    }
    Ok(SignatureCensus {
        k,
        count: signatures.len(),
        signatures,
    })
}

/// Sequential variant of [`enumerate_signatures`]; the bench suite compares
/// the two.
pub fn enumerate_signatures_seq(k: usize, budget: &EnumerationBudget) -> Result<SignatureCensus> {
    census_budget(k, budget)?;
    let mut signatures = Vec::new();
    for len in 3..=3 * k {
        let total = 3u64.pow(len as u32);
        signatures.extend((0..total).filter_map(|code| census_candidate(code, len, k)));
    }
    Ok(SignatureCensus {
        k,
        count: signatures.len(),
        signatures,
    })
}

fn pair_index(a: usize, b: usize, n: usize) -> usize {
    // upper-triangle index for 0 <= a < b < n
    a * n + b - (a + 1) * (a + 2) / 2
}

struct DiagramSearch {
    n: usize,
    k: usize,
    max_events: usize,
    limit: u64,
}

#[derive(Clone)]
struct DiagramState {
    pi: Vec<u32>,
    counts: Vec<usize>,
    events: Vec<usize>,
    missing: usize,
}

impl DiagramState {
    fn initial(n: usize) -> Self {
        DiagramState {
            pi: (1..=n as u32).collect(),
            counts: vec![0; n * (n - 1) / 2],
            events: Vec::new(),
            missing: n * (n - 1) / 2,
        }
    }
}

impl DiagramSearch {
    /// Depth-first over event sequences; every state in which each pair has
    /// crossed at least once is emitted. `stop_depth` hands states off to
    /// the caller instead of recursing past it.
    fn run(
        &self,
        state: &mut DiagramState,
        nodes: &AtomicU64,
        out: &mut Vec<WiringDiagram>,
        stop_depth: Option<usize>,
        frontier: Option<&mut Vec<DiagramState>>,
    ) -> Result<()> {
        if nodes.fetch_add(1, Ordering::Relaxed) >= self.limit {
            return Err(Error::BudgetExceeded { limit: self.limit });
        }
        if state.missing == 0 {
            out.push(WiringDiagram::new(self.n, state.events.clone()).expect("heights in range"));
        }
        if let (Some(depth), Some(frontier)) = (stop_depth, frontier) {
            if state.events.len() == depth {
                frontier.push(state.clone());
                return Ok(());
            }
            return self.expand(state, nodes, out, Some(depth), Some(frontier));
        }
        self.expand(state, nodes, out, None, None)
    }

    fn expand(
        &self,
        state: &mut DiagramState,
        nodes: &AtomicU64,
        out: &mut Vec<WiringDiagram>,
        stop_depth: Option<usize>,
        mut frontier: Option<&mut Vec<DiagramState>>,
    ) -> Result<()> {
        if state.events.len() >= self.max_events {
            return Ok(());
        }
        for h in 1..self.n {
            let (a, b) = (state.pi[h - 1], state.pi[h]);
            let (lo, hi) = ((a.min(b) - 1) as usize, (a.max(b) - 1) as usize);
            let idx = pair_index(lo, hi, self.n);
            if state.counts[idx] == self.k {
                continue;
            }
            state.counts[idx] += 1;
            let newly_covered = state.counts[idx] == 1;
            if newly_covered {
                state.missing -= 1;
            }
            state.pi.swap(h - 1, h);
            state.events.push(h);
            let result = self.run(state, nodes, out, stop_depth, frontier.as_deref_mut());
            state.events.pop();
            state.pi.swap(h - 1, h);
            if newly_covered {
                state.missing += 1;
            }
            state.counts[idx] -= 1;
            result?;
        }
        Ok(())
    }
}

fn diagram_budget(n: usize, k: usize, budget: &EnumerationBudget) -> Result<()> {
    if n < 3 {
        return Err(Error::Precondition("wiring diagrams need n >= 3"));
    }
    if n > budget.max_paths {
        return Err(Error::Precondition("n exceeds the path budget"));
    }
    if k > budget.max_pair_crossings {
        return Err(Error::Precondition("k exceeds the pair-crossing budget"));
    }
    Ok(())
}

/// Enumerates every wiring diagram on `n` paths in which each pair crosses
/// at least once and at most `k` times, ordered lexicographically by event
/// sequence.
pub fn enumerate_wiring_diagrams(
    n: usize,
    k: usize,
    budget: &EnumerationBudget,
) -> Result<Vec<WiringDiagram>> {
    diagram_budget(n, k, budget)?;
    if k == 0 {
        return Ok(Vec::new());
    }
    let search = DiagramSearch {
        n,
        k,
        max_events: (k * n * (n - 1) / 2).min(budget.max_events),
        limit: budget.max_candidates,
    };
    let nodes = AtomicU64::new(0);

    #[cfg(feature = "parallel")]
    let mut diagrams = {
        let split_depth = 3usize;
        let mut early = Vec::new();
        let mut frontier = Vec::new();
        search.run(
            &mut DiagramState::initial(n),
            &nodes,
            &mut early,
            Some(split_depth),
            Some(&mut frontier),
        )?;
        let chunks: Vec<Vec<WiringDiagram>> = frontier
            .into_par_iter()
            .map(|mut state| {
                let mut out = Vec::new();
                // frontier states were already emitted by the prefix pass
                search.expand(&mut state, &nodes, &mut out, None, None)?;
                Ok::<_, Error>(out)
            })
            .collect::<Result<_>>()?;
        let mut all = early;
        all.extend(chunks.into_iter().flatten());
        all
    };
    #[cfg(not(feature = "parallel"))]
    let mut diagrams = {
        let mut out = Vec::new();
        search.run(&mut DiagramState::initial(n), &nodes, &mut out, None, None)?;
        out
    };

    diagrams.sort_unstable_by(|a, b| a.events().cmp(b.events()));
    Ok(diagrams)
}

/// Sequential variant of [`enumerate_wiring_diagrams`]; the bench suite
/// compares the two.
pub fn enumerate_wiring_diagrams_seq(
    n: usize,
    k: usize,
    budget: &EnumerationBudget,
) -> Result<Vec<WiringDiagram>> {
    diagram_budget(n, k, budget)?;
    if k == 0 {
        return Ok(Vec::new());
    }
    let search = DiagramSearch {
        n,
        k,
        max_events: (k * n * (n - 1) / 2).min(budget.max_events),
        limit: budget.max_candidates,
    };
    let nodes = AtomicU64::new(0);
    let mut out = Vec::new();
    search.run(&mut DiagramState::initial(n), &nodes, &mut out, None, None)?;
    out.sort_unstable_by(|a, b| a.events().cmp(b.events()));
    Ok(out)
}

struct RealizationSearch<'a> {
    n: usize,
    rows: Vec<&'a [u32]>,
    nodes: AtomicU64,
    limit: u64,
}

struct RealizationState {
    pi: Vec<u32>,
    heads: Vec<usize>,
    events: Vec<usize>,
    remaining: usize,
}

impl RealizationSearch<'_> {
    fn go(&self, state: &mut RealizationState) -> Result<Option<WiringDiagram>> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.limit {
            return Err(Error::BudgetExceeded { limit: self.limit });
        }
        if state.remaining == 0 {
            return Ok(Some(
                WiringDiagram::new(self.n, state.events.clone()).expect("heights in range"),
            ));
        }
        for h in 1..self.n {
            let j = (state.pi[h - 1] - 1) as usize;
            let k = (state.pi[h] - 1) as usize;
            let j_head = state.heads[j] < self.rows[j].len()
                && (self.rows[j][state.heads[j]] - 1) as usize == k;
            let k_head = state.heads[k] < self.rows[k].len()
                && (self.rows[k][state.heads[k]] - 1) as usize == j;
            if !j_head || !k_head {
                continue;
            }
            state.pi.swap(h - 1, h);
            state.heads[j] += 1;
            state.heads[k] += 1;
            state.events.push(h);
            state.remaining -= 2;
            let found = self.go(state);
            state.remaining += 2;
            state.events.pop();
            state.heads[j] -= 1;
            state.heads[k] -= 1;
            state.pi.swap(h - 1, h);
            if let Some(diagram) = found? {
                return Ok(Some(diagram));
            }
        }
        Ok(None)
    }
}

/// Exhaustive realizability search, independent of the greedy sweep: tries
/// every order of crossing events compatible with the rows and reports the
/// first realization found.
pub fn realizes_by_search(t: &Tableau, budget: &EnumerationBudget) -> Result<Option<WiringDiagram>> {
    let t = t.normalize();
    let n = t.size();
    let rows: Vec<&[u32]> = (0..n).map(|i| t.row(i).letters()).collect();
    let remaining: usize = rows.iter().map(|r| r.len()).sum();
    if !remaining.is_multiple_of(2) {
        return Ok(None);
    }
    let search = RealizationSearch {
        n,
        rows,
        nodes: AtomicU64::new(0),
        limit: budget.max_candidates,
    };
    let mut state = RealizationState {
        pi: (1..=n as u32).collect(),
        heads: vec![0usize; n],
        events: Vec::new(),
        remaining,
    };
    search.go(&mut state)
}

/// Ground truth for extendability: the associated word exists and its
/// tableau is realizable at every requested size.
pub fn extendability_ground_truth(sigma: &Signature, sizes: &[usize]) -> Result<bool> {
    let omega = match sigma.associated_word() {
        Ok(w) => w,
        Err(Error::Condition1Unbalanced { .. }) | Err(Error::Condition1Refinement { .. }) => {
            return Ok(false)
        }
        Err(e) => return Err(e),
    };
    for &n in sizes {
        let tableau = phi_tableau(&omega, n)?;
        if is_geometric(&tableau).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All irreducible signatures with equal letter counts `X = Y = Z <= r_max`,
/// enumerated exhaustively.
pub fn irreducible_equal_count_signatures(
    r_max: usize,
    budget: &EnumerationBudget,
) -> Result<Vec<Signature>> {
    let census = enumerate_signatures(r_max, budget)?;
    Ok(census
        .signatures
        .into_iter()
        .filter(|s| {
            let (x, y, z) = s.counts();
            x == y && y == z && x <= r_max && s.is_irreducible()
        })
        .collect())
}

/// One verification run's outcome, rendered as JSON by the CLI.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check: String,
    pub passed: bool,
    pub counts: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Report {
    fn new(check: &str) -> Self {
        Report {
            check: check.to_string(),
            passed: true,
            counts: BTreeMap::new(),
            counterexample: None,
            seed: None,
        }
    }

    fn fail(&mut self, counterexample: String) {
        self.passed = false;
        if self.counterexample.is_none() {
            self.counterexample = Some(counterexample);
        }
    }

    fn bump(&mut self, key: &str, by: u64) {
        *self.counts.entry(key.to_string()).or_insert(0) += by;
    }
}

/// The signature of the six-tangent construction.
pub const SIX_TANGENT_SIGNATURE: &str = "xyzxy^2xz^3yxzy^2zx^2";

/// Verifies the six-tangent construction: its dual system on six paths has
/// every pair crossing exactly six times, is realizable, every 4-subset is
/// upper convex and no 5-subset is.
pub fn verify_pach_toth_construction() -> Result<Report> {
    let mut report = Report::new("pach-toth-construction");
    let sigma = Signature::parse(SIX_TANGENT_SIGNATURE)?;
    let factors = sigma.irreducible_factorization()?;
    report.bump("factors", factors.len() as u64);

    let mut omega = Word::empty(vec!['a', 'b', 'c', 'd']);
    for factor in &factors {
        omega = omega.concat(&factor.associated_word()?);
    }
    let n = 6usize;
    let tableau = phi_tableau(&omega, n)?;

    for i in 1..=n as u32 {
        for j in 1..=n as u32 {
            if i == j {
                continue;
            }
            let crossings = tableau.row_of_label(i)?.count(j);
            if crossings != 6 {
                report.fail(format!("pair ({i},{j}) crosses {crossings} times, expected 6"));
            }
        }
    }
    report.bump("pairs", (n * (n - 1) / 2) as u64);

    match is_geometric(&tableau) {
        Some(diagram) => {
            report.bump("events", diagram.events().len() as u64);
        }
        None => report.fail("tableau of the construction is not realizable".into()),
    }

    for scan in subsystem_envelope_scan(&tableau, 4)? {
        report.bump("four_subsets", 1);
        if !scan.report.upper_convex {
            report.fail(format!("4-subset {:?} is not upper convex", scan.labels));
        }
    }
    for scan in subsystem_envelope_scan(&tableau, 5)? {
        report.bump("five_subsets", 1);
        if scan.report.upper_convex {
            report.fail(format!("5-subset {:?} is upper convex", scan.labels));
        }
    }

    let full = envelopes(&tableau);
    report.bump("upper_envelope_size", full.upper.len() as u64);
    Ok(report)
}

/// The full upper envelope of the six-tangent construction's dual system.
pub fn six_tangent_upper_envelope() -> Result<Vec<u32>> {
    let sigma = Signature::parse(SIX_TANGENT_SIGNATURE)?;
    let factors = sigma.irreducible_factorization()?;
    let mut omega = Word::empty(vec!['a', 'b', 'c', 'd']);
    for factor in &factors {
        omega = omega.concat(&factor.associated_word()?);
    }
    let tableau = phi_tableau(&omega, 6)?;
    Ok(envelopes(&tableau).upper.into_iter().collect())
}

/// Verifies that every 3-path system with at most `k ∈ {1,2}` crossings per
/// pair is upper convex or lower convex.
pub fn verify_ck3(budget: &EnumerationBudget) -> Result<Report> {
    let mut report = Report::new("ck3");
    for k in 1..=2usize {
        let diagrams = enumerate_wiring_diagrams(3, k, budget)?;
        report.bump(&format!("diagrams_k{k}"), diagrams.len() as u64);
        for diagram in &diagrams {
            let t = local_sequences(diagram);
            let env = envelopes(&t);
            if !env.upper_convex && !env.lower_convex {
                report.fail(format!(
                    "diagram with events {:?} is neither upper nor lower convex",
                    diagram.events()
                ));
            }
        }
    }
    Ok(report)
}

/// Random composition of `total` into odd parts. The count of odd parts is
/// congruent to `total` mod 2, so an even `total` always yields evenly many
/// parts (what the mixed-factor construction needs).
fn random_odd_partition(rng: &mut ChaCha8Rng, total: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut rest = total;
    while rest > 0 {
        let max_odd = if rest % 2 == 1 { rest } else { rest - 1 };
        let choices = max_odd.div_ceil(2);
        let part = 2 * rng.gen_range(0..choices) + 1;
        parts.push(part);
        rest -= part;
    }
    parts
}

fn alternating_blocks(parts: &[usize], lo: char, hi: char, start_ascending: bool) -> Vec<char> {
    let mut out = Vec::new();
    for (i, &p) in parts.iter().enumerate() {
        let ascending = (i % 2 == 0) == start_ascending;
        let (first, second) = if ascending { (lo, hi) } else { (hi, lo) };
        out.extend(std::iter::repeat_n(first, p));
        out.extend(std::iter::repeat_n(second, p));
    }
    out
}

/// Samples an irreducible extendable signature of the pure form
/// `α · z^p` (odd or even class, depending on the parity of `p`).
fn sample_pure_factor(rng: &mut ChaCha8Rng) -> Signature {
    let p = rng.gen_range(1..=4usize);
    let parts = random_odd_partition(rng, p);
    let mut letters = alternating_blocks(&parts, 'x', 'y', true);
    letters.extend(std::iter::repeat_n('z', p));
    Signature::new(Word::new(letters, XYZ.to_vec()).expect("xyz letters"))
        .expect("nonempty by construction")
}

/// Samples an irreducible extendable mixed signature of the form
/// `α · x^q z^p · γ` with `p`, `q` even.
fn sample_mixed_factor(rng: &mut ChaCha8Rng) -> Signature {
    let p = 2 * rng.gen_range(1..=2usize);
    let q = 2 * rng.gen_range(1..=2usize);
    let alpha_parts = random_odd_partition(rng, p);
    let gamma_parts = random_odd_partition(rng, q);
    let mut letters = alternating_blocks(&alpha_parts, 'x', 'y', true);
    letters.extend(std::iter::repeat_n('x', q));
    letters.extend(std::iter::repeat_n('z', p));
    // the z-run of the first γ-block merges with the z^p tail of β, keeping
    // the run parities legal; even part counts make the alternation close
    let mut gamma = alternating_blocks(&gamma_parts, 'y', 'z', false);
    letters.append(&mut gamma);
    Signature::new(Word::new(letters, XYZ.to_vec()).expect("xyz letters"))
        .expect("nonempty by construction")
}

/// Samples a valid signature whose irreducible factors are all extendable:
/// a concatenation of 1..=3 canonical factors, each optionally reflected,
/// with the vertical flip applied whenever the preceding crossing total is
/// odd so that the concatenation stays realizable.
pub fn sample_regular_signature(rng: &mut ChaCha8Rng) -> Signature {
    let m = rng.gen_range(1..=3usize);
    let mut letters = Vec::new();
    let mut preceding = 0usize;
    for _ in 0..m {
        let mut factor = if rng.gen_bool(0.3) {
            sample_mixed_factor(rng)
        } else {
            sample_pure_factor(rng)
        };
        if rng.gen_bool(0.5) {
            factor = factor.reversed();
        }
        if rng.gen_bool(0.5) {
            factor = factor.xz_swapped();
        }
        if preceding % 2 == 1 {
            factor = factor.xz_swapped();
        }
        preceding += factor.count_x();
        letters.extend_from_slice(factor.letters());
    }
    let sigma = Signature::new(Word::new(letters, XYZ.to_vec()).expect("xyz letters"))
        .expect("nonempty by construction");
    debug_assert!(sigma.is_valid(), "sampled signature {sigma} must be valid");
    sigma
}

struct EnvelopeCase {
    sigma: Signature,
    n: usize,
}

fn check_envelope_case(case: &EnvelopeCase) -> Result<Option<String>> {
    let EnvelopeCase { sigma, n } = case;
    let n = *n;
    if !sigma.is_valid() {
        return Ok(Some(format!("{sigma} is not a valid signature")));
    }
    let factors = sigma.irreducible_factorization()?;
    let mut omega = Word::empty(vec!['a', 'b', 'c', 'd']);
    let mut crossings = 0usize;
    for factor in &factors {
        if !factor.is_extendable()? {
            return Ok(Some(format!("factor {factor} of {sigma} is not extendable")));
        }
        omega = omega.concat(&factor.associated_word()?);
        crossings += factor.count_x();
    }
    let tableau = phi_tableau(&omega, n)?;
    let env = envelopes(&tableau);

    if !env.upper_convex && !env.lower_convex {
        return Ok(Some(format!(
            "{sigma} at n={n}: neither upper nor lower convex"
        )));
    }
    if !env.upper_convex {
        let limit = match crossings {
            0..=2 => 2,
            3..=4 => 3,
            _ => 4,
        };
        if env.upper.len() > limit {
            return Ok(Some(format!(
                "{sigma} at n={n}: upper envelope has {} paths, limit {limit} for {crossings} crossings",
                env.upper.len()
            )));
        }
        if crossings <= 2 && env.upper.len() != 2 {
            return Ok(Some(format!(
                "{sigma} at n={n}: 2-crossing upper envelope has {} paths, expected exactly 2",
                env.upper.len()
            )));
        }
    }

    let Some(diagram) = is_geometric(&tableau) else {
        return Ok(Some(format!("{sigma} at n={n}: tableau not realizable")));
    };
    if geometric_envelopes(&diagram) != env {
        return Ok(Some(format!(
            "{sigma} at n={n}: parity envelopes disagree with the drawing"
        )));
    }

    let predicted = predicted_upper_envelope(sigma, n)?;
    if predicted != env.upper {
        return Ok(Some(format!(
            "{sigma} at n={n}: predicted upper envelope {predicted:?} != computed {:?}",
            env.upper
        )));
    }
    Ok(None)
}

/// Checks the two envelope theorems on (a) every extendable irreducible
/// signature with equal counts up to `min(r_max, 3)` and (b) `samples`
/// seeded draws from the factor grammar, at every size `4..=n_max`.
pub fn verify_envelope_theorems(
    r_max: usize,
    n_max: usize,
    samples: usize,
    seed: u64,
    budget: &EnumerationBudget,
) -> Result<Report> {
    let mut report = Report::new("envelope-theorems");
    report.seed = Some(seed);
    if n_max < 4 {
        return Err(Error::Precondition("n_max must be at least 4"));
    }

    let mut cases = Vec::new();
    let exhaustive_r = r_max.min(3);
    for sigma in irreducible_equal_count_signatures(exhaustive_r, budget)? {
        if sigma.is_extendable()? {
            for n in 4..=n_max {
                cases.push(EnvelopeCase {
                    sigma: sigma.clone(),
                    n,
                });
            }
        }
    }
    report.bump("exhaustive_cases", cases.len() as u64);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let sigma = sample_regular_signature(&mut rng);
        let n = rng.gen_range(4..=n_max);
        cases.push(EnvelopeCase { sigma, n });
    }
    report.bump("sampled_cases", samples as u64);

    #[cfg(feature = "parallel")]
    let outcomes: Vec<Option<String>> = cases
        .par_iter()
        .map(check_envelope_case)
        .collect::<Result<_>>()?;
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<Option<String>> = cases
        .iter()
        .map(check_envelope_case)
        .collect::<Result<_>>()?;

    for outcome in outcomes.into_iter().flatten() {
        report.fail(outcome);
    }
    Ok(report)
}

/// Census cross-check: the parity-rule census equals the set of signatures
/// realized by enumerated 3-path diagrams, for every `k <= k_max`.
pub fn verify_census_vs_diagrams(k_max: usize, budget: &EnumerationBudget) -> Result<Report> {
    let mut report = Report::new("census-vs-diagrams");
    for k in 1..=k_max {
        let census = enumerate_signatures(k, budget)?;
        report.bump(&format!("census_k{k}"), census.count as u64);
        let mut realized: Vec<Signature> = Vec::new();
        for diagram in enumerate_wiring_diagrams(3, k, budget)? {
            let letters: Vec<char> = diagram
                .event_pairs()
                .iter()
                .map(|&(a, b)| match (a, b) {
                    (1, 2) => 'x',
                    (1, 3) => 'y',
                    _ => 'z',
                })
                .collect();
            realized.push(Signature::new(
                Word::new(letters, XYZ.to_vec()).expect("xyz letters"),
            )?);
        }
        realized.sort_by(|a, b| a.letters().cmp(b.letters()));
        realized.dedup();
        report.bump(&format!("realized_k{k}"), realized.len() as u64);

        let mut census_sorted = census.signatures.clone();
        census_sorted.sort_by(|a, b| a.letters().cmp(b.letters()));
        if census_sorted != realized {
            report.fail(format!("census and realized signatures differ for k={k}"));
        }
    }
    Ok(report)
}
