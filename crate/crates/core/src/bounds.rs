//! Lower bounds on regularity and on single Betti numbers from induced
//! subgraphs: every Betti number of an induced subgraph is a lower bound
//! for the same Betti number of the graph, so each induced line, cycle,
//! T3 or G3 contributes its closed-form table.
//!
//! Up to [`DEFAULT_SEARCH_CAP`] vertices every vertex subset is examined.
//! Above it a seeded random search grows connected subsets; anything it
//! reports is a checked induced subgraph, it may just miss the largest.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::IteratorRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::closedforms::closed_betti;
use crate::graphs::{FamilySpec, Graph, VertexSet};
use crate::table::BettiTable;

pub const DEFAULT_SEARCH_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest `n` searched exhaustively.
    pub cap: usize,
    /// Number of random growths above the cap.
    pub trials: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            cap: DEFAULT_SEARCH_CAP,
            trials: 4000,
            seed: 0,
        }
    }
}

/// An induced subgraph recognised as a family member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub spec: FamilySpec,
    pub vertices: VertexSet,
}

impl Witness {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    /// Regularity this witness forces: `ℓ - 1` for a line on `ℓ`
    /// vertices, `k - 2` for the other families.
    pub fn reg_bound(&self) -> usize {
        match self.spec {
            FamilySpec::Line { n } => n - 1,
            _ => self.size() - 2,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "family": self.spec.to_string(),
            "vertices": self.vertices.to_vec(),
            "regBound": self.reg_bound(),
        })
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "induced {} on vertices {}", self.spec, self.vertices)
    }
}

/// Best induced family members found in `g`.
#[derive(Debug, Clone, Default)]
pub struct InducedSearch {
    pub line: Option<Witness>,
    /// Largest-found cycle of each length.
    pub cycles: BTreeMap<usize, Witness>,
    pub t3: Option<Witness>,
    pub g3: Option<Witness>,
    /// True when every subset was examined.
    pub exhaustive: bool,
}

impl InducedSearch {
    pub fn longest_line(&self) -> usize {
        self.line.map_or(0, |w| w.size())
    }

    pub fn largest_cycle(&self) -> usize {
        self.cycles.keys().next_back().copied().unwrap_or(0)
    }

    pub fn largest_t3g3(&self) -> usize {
        self.t3g3().map_or(0, |w| w.size())
    }

    /// The larger of the T3 and G3 witnesses (T3 on ties).
    pub fn t3g3(&self) -> Option<Witness> {
        match (self.t3, self.g3) {
            (Some(a), Some(b)) => Some(if b.size() > a.size() { b } else { a }),
            (a, b) => a.or(b),
        }
    }

    fn offer(&mut self, w: Witness) {
        let slot = match w.spec {
            FamilySpec::Line { .. } => &mut self.line,
            FamilySpec::T3 { .. } => &mut self.t3,
            FamilySpec::G3 { .. } => &mut self.g3,
            FamilySpec::Cycle { n } => {
                self.cycles.entry(n).or_insert(w);
                if n == 3 {
                    // a triangle is also G3(1,1,1)
                    self.offer(Witness {
                        spec: FamilySpec::G3 { r: 1, s: 1, t: 1 },
                        ..w
                    });
                }
                return;
            }
            FamilySpec::Complete { .. } => return,
        };
        if slot.is_none_or(|old| w.size() > old.size()) {
            *slot = Some(w);
        }
    }
}

fn bit(v: usize) -> u64 {
    1u64 << (v - 1)
}

fn mask_vertices(mask: u64) -> impl Iterator<Item = usize> {
    VertexSet(mask).iter()
}

/// Lengths of the paths hanging off `start` (excluding `core`) inside `w`.
fn leg_length(adj: &[u64], w: u64, core: u64, start: usize) -> usize {
    let mut prev = core;
    let mut cur = start;
    let mut len = 1;
    loop {
        let next = adj[cur] & w & !prev & !bit(cur);
        if next == 0 {
            return len;
        }
        prev = bit(cur);
        cur = next.trailing_zeros() as usize + 1;
        len += 1;
    }
}

/// Recognises the induced subgraph on `w` as a line, cycle, T3 or G3.
fn classify(adj: &[u64], w: u64) -> Option<FamilySpec> {
    let k = w.count_ones() as usize;
    let deg = |v: usize| (adj[v] & w).count_ones() as usize;
    // connectivity
    let start = w.trailing_zeros() as usize + 1;
    let mut seen = bit(start);
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in mask_vertices(frontier) {
            next |= adj[v];
        }
        frontier = next & w & !seen;
        seen |= frontier;
    }
    if seen != w {
        return None;
    }
    let degrees: Vec<(usize, usize)> = mask_vertices(w).map(|v| (v, deg(v))).collect();
    let edges: usize = degrees.iter().map(|d| d.1).sum::<usize>() / 2;
    let max_deg = degrees.iter().map(|d| d.1).max().unwrap_or(0);
    let threes: Vec<usize> = degrees.iter().filter(|d| d.1 == 3).map(|d| d.0).collect();
    if max_deg > 3 {
        return None;
    }
    if edges + 1 == k {
        if max_deg <= 2 {
            return Some(FamilySpec::Line { n: k });
        }
        if threes.len() == 1 {
            let c = threes[0];
            let mut legs: Vec<usize> = mask_vertices(adj[c] & w).map(|s| leg_length(adj, w, bit(c), s)).collect();
            legs.sort_unstable_by(|a, b| b.cmp(a));
            return Some(FamilySpec::T3 {
                r: legs[0] + 1,
                s: legs[1],
                t: legs[2],
            });
        }
        return None;
    }
    if edges == k {
        if max_deg == 2 {
            return (k >= 3).then_some(FamilySpec::Cycle { n: k });
        }
        // strip leaves to expose the unique cycle
        let mut core = w;
        loop {
            let leaves: u64 = mask_vertices(core)
                .filter(|&v| (adj[v] & core).count_ones() <= 1)
                .fold(0, |m, v| m | bit(v));
            if leaves == 0 {
                break;
            }
            core &= !leaves;
        }
        if core.count_ones() != 3 || threes.iter().any(|&v| core & bit(v) == 0) {
            return None;
        }
        let mut legs: Vec<usize> = mask_vertices(core)
            .map(|c| {
                let out = adj[c] & w & !core;
                if out == 0 {
                    0
                } else {
                    leg_length(adj, w, core, out.trailing_zeros() as usize + 1)
                }
            })
            .collect();
        legs.sort_unstable_by(|a, b| b.cmp(a));
        return Some(FamilySpec::G3 {
            r: legs[0] + 1,
            s: legs[1] + 1,
            t: legs[2] + 1,
        });
    }
    None
}

fn adjacency(g: &Graph) -> Vec<u64> {
    // indexed by vertex; slot 0 is unused
    (0..=g.n()).map(|v| if v == 0 { 0 } else { g.neighbors(v).0 }).collect()
}

pub fn search_induced(g: &Graph, opts: &SearchOptions) -> InducedSearch {
    let adj = adjacency(g);
    let n = g.n();
    let mut out = InducedSearch::default();
    let offer = |out: &mut InducedSearch, w: u64| {
        if let Some(spec) = classify(&adj, w) {
            out.offer(Witness {
                spec,
                vertices: VertexSet(w),
            });
        }
    };
    if n <= opts.cap {
        out.exhaustive = true;
        for w in 1..1u64 << n {
            offer(&mut out, w);
        }
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.trials {
        let start = (1..=n).choose(&mut rng).expect("graph has vertices");
        let mut w = bit(start);
        offer(&mut out, w);
        loop {
            let boundary: u64 = mask_vertices(w).fold(0, |m, v| m | adj[v]) & !w;
            let Some(v) = mask_vertices(boundary).choose(&mut rng) else {
                break;
            };
            w |= bit(v);
            // connected induced subgraphs of family members are family
            // members, so no superset of an unrecognised set is one
            if classify(&adj, w).is_none() {
                break;
            }
            offer(&mut out, w);
        }
    }
    out
}

/// The family `g` belongs to, if any: complete graphs, then lines,
/// cycles, T3 and G3. The triangle is reported as `cycle(3)`, which
/// has both a closed Betti table and a closed Hilbert series.
pub fn recognize(g: &Graph) -> Option<FamilySpec> {
    let n = g.n();
    if n >= 1 && n != 3 && g.edge_count() == n * (n - 1) / 2 {
        return Some(FamilySpec::Complete { n });
    }
    classify(&adjacency(g), g.vertices().0)
}

pub fn longest_induced_line(g: &Graph) -> usize {
    search_induced(g, &SearchOptions::default()).longest_line()
}

pub fn largest_induced_cycle(g: &Graph) -> usize {
    search_induced(g, &SearchOptions::default()).largest_cycle()
}

pub fn largest_induced_t3g3(g: &Graph) -> usize {
    search_induced(g, &SearchOptions::default()).largest_t3g3()
}

#[derive(Debug, Clone)]
pub struct RegBounds {
    pub lower: usize,
    pub upper: usize,
    /// Witnesses attaining `lower`, in the order line, cycle, T3/G3.
    pub witnesses: Vec<Witness>,
    pub search: InducedSearch,
}

impl RegBounds {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "lower": self.lower,
            "upper": self.upper,
            "witnesses": self.witnesses.iter().map(Witness::to_json).collect::<Vec<_>>(),
            "longestInducedLine": self.search.longest_line(),
            "largestInducedCycle": self.search.largest_cycle(),
            "largestInducedT3G3": self.search.largest_t3g3(),
            "exhaustive": self.search.exhaustive,
        })
    }
}

impl fmt::Display for RegBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lower={}", self.lower)?;
        for (k, w) in self.witnesses.iter().enumerate() {
            write!(f, "{} {w}", if k == 0 { " via" } else { ", " })?;
        }
        writeln!(f)?;
        writeln!(f, "upper={}", self.upper)?;
        if !self.search.exhaustive {
            writeln!(f, "(randomised search; the lower bound may be weaker than the exhaustive one)")?;
        }
        Ok(())
    }
}

pub fn reg_bounds(g: &Graph) -> RegBounds {
    reg_bounds_with(g, &SearchOptions::default())
}

pub fn reg_bounds_with(g: &Graph, opts: &SearchOptions) -> RegBounds {
    let search = search_induced(g, opts);
    let candidates: Vec<Witness> = search
        .line
        .into_iter()
        .chain(search.cycles.values().next_back().copied())
        .chain(search.t3g3())
        .collect();
    let lower = candidates.iter().map(Witness::reg_bound).max().unwrap_or(0);
    let witnesses = candidates.into_iter().filter(|w| w.reg_bound() == lower).collect();
    RegBounds {
        lower,
        upper: g.n() - 1,
        witnesses,
        search,
    }
}

/// Entrywise maximum of the closed-form tables of the induced family
/// members found (the longest line, every cycle length, the largest T3
/// and the largest G3).
pub fn betti_lower_bounds(g: &Graph) -> BettiTable {
    betti_lower_bounds_with(g, &SearchOptions::default())
}

pub fn betti_lower_bounds_with(g: &Graph, opts: &SearchOptions) -> BettiTable {
    let search = search_induced(g, opts);
    let mut out = BettiTable::from_entries(2 * g.n(), [(0, 0, 1)]);
    let witnesses = search.line.iter().chain(search.cycles.values()).chain(search.t3.iter()).chain(search.g3.iter());
    for w in witnesses {
        let t = closed_betti(&w.spec).expect("witness specs are valid");
        out = out.max_with(&t);
    }
    out
}
