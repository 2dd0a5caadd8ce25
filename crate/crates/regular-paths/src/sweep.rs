//! Deciding whether a tableau is realizable as a system of paths.
//!
//! The sweep maintains a vertical permutation and the residual rows; at each
//! step the lexicographically smallest pair of mutually-leading, vertically
//! adjacent paths crosses. The recorded crossing heights form a wiring
//! diagram: a standalone drawing instruction from which the local sequences,
//! the envelopes and an SVG rendering can all be recovered. The relaxed
//! variant drops the adjacency requirement and tests for a valid matching
//! only.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::tableau::Tableau;

/// A drawing of `n` paths as a sequence of adjacent transpositions. Event
/// `h` swaps the paths currently at heights `h` and `h+1` (heights are
/// 1-based from the bottom).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct WiringDiagram {
    n: usize,
    events: Vec<usize>,
}

impl<'de> Deserialize<'de> for WiringDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            events: Vec<usize>,
        }
        let repr = Repr::deserialize(deserializer)?;
        WiringDiagram::new(repr.n, repr.events).map_err(serde::de::Error::custom)
    }
}

impl WiringDiagram {
    pub fn new(n: usize, events: Vec<usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition("a wiring diagram needs n >= 2"));
        }
        if events.iter().any(|&h| h == 0 || h >= n) {
            return Err(Error::Precondition("event heights must lie in 1..n"));
        }
        Ok(WiringDiagram { n, events })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn events(&self) -> &[usize] {
        &self.events
    }

    /// The permutations `π_0, …, π_m` (bottom-to-top labels), starting from
    /// the identity.
    pub fn snapshots(&self) -> Vec<Vec<u32>> {
        let mut pi: Vec<u32> = (1..=self.n as u32).collect();
        let mut out = Vec::with_capacity(self.events.len() + 1);
        out.push(pi.clone());
        for &h in &self.events {
            pi.swap(h - 1, h);
            out.push(pi.clone());
        }
        out
    }

    /// The label pairs crossing at each event, in order.
    pub fn event_pairs(&self) -> Vec<(u32, u32)> {
        let mut pi: Vec<u32> = (1..=self.n as u32).collect();
        let mut out = Vec::with_capacity(self.events.len());
        for &h in &self.events {
            let (a, b) = (pi[h - 1], pi[h]);
            out.push((a.min(b), a.max(b)));
            pi.swap(h - 1, h);
        }
        out
    }

    /// Symmetric matrix of pairwise crossing counts, indexed by label - 1.
    pub fn crossing_counts(&self) -> Vec<Vec<usize>> {
        let mut counts = vec![vec![0usize; self.n]; self.n];
        for (a, b) in self.event_pairs() {
            counts[(a - 1) as usize][(b - 1) as usize] += 1;
            counts[(b - 1) as usize][(a - 1) as usize] += 1;
        }
        counts
    }
}

/// Runs the sweep on (the rank-normalized form of) a tableau. Returns the
/// wiring diagram realizing it, or `None` when the sweep stalls, which
/// happens exactly when the tableau is not the local-sequence table of any
/// system of paths.
pub fn is_geometric(t: &Tableau) -> Option<WiringDiagram> {
    let t = t.normalize();
    let n = t.size();
    let rows: Vec<&[u32]> = (0..n).map(|i| t.row(i).letters()).collect();
    let mut heads = vec![0usize; n];
    let mut remaining: usize = rows.iter().map(|r| r.len()).sum();
    // position of each label (0-based) and label at each position
    let mut pos: Vec<usize> = (0..n).collect();
    let mut pi: Vec<u32> = (1..=n as u32).collect();
    let mut events = Vec::with_capacity(remaining / 2);
    while remaining > 0 {
        let mut found = None;
        for j in 0..n {
            if heads[j] >= rows[j].len() {
                continue;
            }
            let k = (rows[j][heads[j]] - 1) as usize;
            if k <= j {
                continue;
            }
            if heads[k] >= rows[k].len() || (rows[k][heads[k]] - 1) as usize != j {
                continue;
            }
            if pos[j].abs_diff(pos[k]) != 1 {
                continue;
            }
            found = Some((j, k));
            break;
        }
        let (j, k) = found?;
        let low = pos[j].min(pos[k]);
        events.push(low + 1);
        pi.swap(low, low + 1);
        pos.swap(j, k);
        heads[j] += 1;
        heads[k] += 1;
        remaining -= 2;
    }
    Some(WiringDiagram { n, events })
}

/// The relaxed sweep: repeatedly deletes the lexicographically smallest
/// mutually-leading pair, ignoring vertical adjacency.
pub fn has_valid_matching(t: &Tableau) -> bool {
    let t = t.normalize();
    let n = t.size();
    let rows: Vec<&[u32]> = (0..n).map(|i| t.row(i).letters()).collect();
    let mut heads = vec![0usize; n];
    let mut remaining: usize = rows.iter().map(|r| r.len()).sum();
    while remaining > 0 {
        let mut found = None;
        for j in 0..n {
            if heads[j] >= rows[j].len() {
                continue;
            }
            let k = (rows[j][heads[j]] - 1) as usize;
            if k <= j {
                continue;
            }
            if heads[k] >= rows[k].len() || (rows[k][heads[k]] - 1) as usize != j {
                continue;
            }
            found = Some((j, k));
            break;
        }
        match found {
            Some((j, k)) => {
                heads[j] += 1;
                heads[k] += 1;
                remaining -= 2;
            }
            None => return false,
        }
    }
    true
}

/// Replays a wiring diagram into the local sequences of its paths: every
/// crossing appends each participant to the other's row.
pub fn local_sequences(w: &WiringDiagram) -> Tableau {
    let n = w.n();
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (a, b) in w.event_pairs() {
        rows[(a - 1) as usize].push(b);
        rows[(b - 1) as usize].push(a);
    }
    Tableau::new((1..=n as u32).collect(), rows).expect("crossings never mention the path itself")
}

/// Which paths reach the upper and lower envelopes.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct EnvelopeReport {
    pub upper: BTreeSet<u32>,
    pub lower: BTreeSet<u32>,
    pub upper_convex: bool,
    pub lower_convex: bool,
}

/// Envelope membership by the prefix-parity rule: path `i` reaches the upper
/// envelope iff some prefix of its row contains every larger label an odd
/// number of times and every smaller label an even number of times (the
/// empty prefix qualifies for the top path); the lower envelope is
/// symmetric. The rule is purely combinatorial and is meaningful for
/// geometric tableaux.
pub fn envelopes(t: &Tableau) -> EnvelopeReport {
    let ground = t.ground();
    let n = ground.len();
    let rank_of = |label: u32| ground.binary_search(&label).unwrap();
    let mut upper = BTreeSet::new();
    let mut lower = BTreeSet::new();
    for (idx, &label) in ground.iter().enumerate() {
        let above = n - idx - 1;
        let below = idx;
        let row = t.row(idx).letters();
        let mut odd = vec![false; n];
        let mut odd_above = 0usize;
        let mut odd_below = 0usize;
        let mut on_upper = above == 0;
        let mut on_lower = below == 0;
        for &entry in row {
            let r = rank_of(entry);
            let delta: isize = if odd[r] { -1 } else { 1 };
            odd[r] = !odd[r];
            if r > idx {
                odd_above = odd_above.checked_add_signed(delta).unwrap();
            } else {
                odd_below = odd_below.checked_add_signed(delta).unwrap();
            }
            if odd_above == above && odd_below == 0 {
                on_upper = true;
            }
            if odd_below == below && odd_above == 0 {
                on_lower = true;
            }
            if on_upper && on_lower {
                break;
            }
        }
        if on_upper {
            upper.insert(label);
        }
        if on_lower {
            lower.insert(label);
        }
    }
    EnvelopeReport {
        upper_convex: upper.len() == n,
        lower_convex: lower.len() == n,
        upper,
        lower,
    }
}

/// Envelopes read directly off the drawing: a path is on the upper envelope
/// iff it occupies the top height in some snapshot (including before the
/// first and after the last event). Used to cross-check the parity rule.
pub fn geometric_envelopes(w: &WiringDiagram) -> EnvelopeReport {
    let n = w.n();
    let mut upper = BTreeSet::new();
    let mut lower = BTreeSet::new();
    for snapshot in w.snapshots() {
        upper.insert(snapshot[n - 1]);
        lower.insert(snapshot[0]);
    }
    EnvelopeReport {
        upper_convex: upper.len() == n,
        lower_convex: lower.len() == n,
        upper,
        lower,
    }
}

/// Envelope report of one subset restriction.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SubsetEnvelope {
    pub labels: Vec<u32>,
    pub report: EnvelopeReport,
}

fn combinations(items: &[u32], m: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    fn go(items: &[u32], m: usize, start: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == m {
            out.push(current.clone());
            return;
        }
        let needed = m - current.len();
        for i in start..=items.len().saturating_sub(needed) {
            current.push(items[i]);
            go(items, m, i + 1, current, out);
            current.pop();
        }
    }
    go(items, m, 0, &mut current, &mut out);
    out
}

fn scan_one(t: &Tableau, labels: Vec<u32>) -> SubsetEnvelope {
    let report = envelopes(&t.restrict(&labels).expect("subset of the ground set"));
    SubsetEnvelope { labels, report }
}

/// Envelope reports for every `m`-subset restriction, in lexicographic
/// subset order. Runs on rayon when the `parallel` feature is enabled.
pub fn subsystem_envelope_scan(t: &Tableau, m: usize) -> Result<Vec<SubsetEnvelope>> {
    check_scan_size(t, m)?;
    let subsets = combinations(t.ground(), m);
    #[cfg(feature = "parallel")]
    {
        Ok(subsets
            .into_par_iter()
            .map(|labels| scan_one(t, labels))
            .collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok(subsets
            .into_iter()
            .map(|labels| scan_one(t, labels))
            .collect())
    }
}

/// Sequential variant of [`subsystem_envelope_scan`]; the bench suite
/// compares the two.
pub fn subsystem_envelope_scan_seq(t: &Tableau, m: usize) -> Result<Vec<SubsetEnvelope>> {
    check_scan_size(t, m)?;
    Ok(combinations(t.ground(), m)
        .into_iter()
        .map(|labels| scan_one(t, labels))
        .collect())
}

fn check_scan_size(t: &Tableau, m: usize) -> Result<()> {
    if m < 3 || m > t.size() {
        return Err(Error::Precondition(
            "subset size must satisfy 3 <= m <= ground size",
        ));
    }
    Ok(())
}

/// Rendering options for [`render_svg`]. Unit spacing per event column and
/// per height; output is deterministic for fixed input and options.
#[derive(Clone, Debug)]
pub struct RenderOptions {
    pub cell: f64,
    pub margin: f64,
    pub stroke_width: f64,
    pub show_snapshots: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            cell: 40.0,
            margin: 30.0,
            stroke_width: 2.0,
            show_snapshots: false,
        }
    }
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

/// Draws the wiring diagram as one polyline per path: path `i` runs through
/// the vertices `(t, height of i in π_t)`, so crossing segments slope over
/// one cell and everything else stays horizontal.
pub fn render_svg(w: &WiringDiagram, options: &RenderOptions) -> String {
    let n = w.n();
    let snapshots = w.snapshots();
    let m = snapshots.len() - 1;
    let cell = options.cell;
    let margin = options.margin;
    // columns 0..=m for the snapshots plus a flat tail column
    let width = margin * 2.0 + cell * (m + 1) as f64;
    let label_gutter = snapshots_gutter(options);
    let height = margin * 2.0 + cell * (n - 1) as f64 + label_gutter;
    let x = |t: usize| margin + cell * t as f64;
    let y = |h: usize| margin + cell * (n - h) as f64;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    );
    // heights of label i at each time step
    for label in 1..=n as u32 {
        let mut points = String::new();
        for t in 0..=m + 1 {
            let snapshot = &snapshots[t.min(m)];
            let h = snapshot.iter().position(|&l| l == label).unwrap() + 1;
            let _ = write!(points, "{:.1},{:.1} ", x(t), y(h));
        }
        let color = PALETTE[((label - 1) as usize) % PALETTE.len()];
        let _ = writeln!(
            svg,
            r#"  <polyline fill="none" stroke="{color}" stroke-width="{sw:.1}" points="{points}"/>"#,
            sw = options.stroke_width,
            points = points.trim_end()
        );
        let h0 = snapshots[0].iter().position(|&l| l == label).unwrap() + 1;
        let _ = writeln!(
            svg,
            r#"  <text x="{tx:.1}" y="{ty:.1}" font-size="{fs:.1}" text-anchor="end" fill="{color}">{label}</text>"#,
            tx = x(0) - 6.0,
            ty = y(h0) + 4.0,
            fs = cell * 0.35,
        );
    }
    if options.show_snapshots {
        for (t, snapshot) in snapshots.iter().enumerate() {
            let text: String = snapshot
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(",");
            let _ = writeln!(
                svg,
                r##"  <text x="{tx:.1}" y="{ty:.1}" font-size="{fs:.1}" text-anchor="middle" fill="#555555">({text})</text>"##,
                tx = x(t),
                ty = margin + cell * (n - 1) as f64 + label_gutter,
                fs = cell * 0.3,
            );
        }
    }
    svg.push_str("</svg>\n");
    svg
}

fn snapshots_gutter(options: &RenderOptions) -> f64 {
    if options.show_snapshots {
        options.cell * 0.8
    } else {
        0.0
    }
}
