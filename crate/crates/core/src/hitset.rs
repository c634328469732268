//! (m − k)-Hitting Set: is there a hitting set of size at most m − k?
//!
//! Such a set exists iff the hypergraph has a k-mini-hitting set, a set S of
//! at most k vertices meeting at least |S| + k edges. Mini-hitting sets are
//! found by color coding: edges get random colors from p + k colors and a
//! dynamic program over color subsets finds the smallest vertex set meeting
//! every color. An exact enumeration certifies absence.

use std::fmt::Write as _;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

/// Vertex index, 1-based.
pub type Vertex = u32;

/// Vertex count accepted by [`brute_min_hitting_set`].
pub const BRUTE_FORCE_MAX_VERTICES: u32 = 20;
/// Widest color set the DP accepts (subsets are machine words).
pub const MAX_COLORS: usize = 62;
/// Default ceiling on color-coding trials per mini-set size.
pub const DEFAULT_TRIAL_CAP: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HitError {
    #[error("edge {0} is empty")]
    EmptyEdge(usize),
    #[error("edge {edge} mentions vertex {vertex}, hypergraph has {num_vertices}")]
    VertexOutOfRange {
        edge: usize,
        vertex: Vertex,
        num_vertices: u32,
    },
    #[error("{colors} colors exceed the limit of {MAX_COLORS}")]
    TooManyColors { colors: usize },
    #[error("color table for {colors} colors does not fit in memory")]
    TableTooLarge { colors: usize },
    #[error("coloring has {colors} entries for {edges} edges")]
    ColoringSize { colors: usize, edges: usize },
    #[error("edge {edge} has color {color}, outside 0..{q}")]
    ColorOutOfRange { edge: usize, color: usize, q: usize },
    #[error("brute force limited to {limit} vertices, got {vertices}")]
    TooLarge { vertices: u32, limit: u32 },
    #[error("not a {k}-mini-hitting set")]
    InvalidMini { k: i64 },
    #[error("parameter must be at least 1, got {0}")]
    NonPositiveK(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphParseError {
    #[error("missing `h <vertices> <edges>` header")]
    MissingHeader,
    #[error("line {line}: malformed header `{text}`")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: unexpected token `{token}`")]
    BadToken { line: usize, token: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: HitError },
    #[error("header declares {declared} edges, found {found}")]
    EdgeCount { declared: usize, found: usize },
}

/// Vertices `1..=num_vertices` and a multiset of nonempty edges.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Hypergraph {
    num_vertices: u32,
    edges: Vec<Vec<Vertex>>,
}

impl Hypergraph {
    /// Edges are stored sorted and deduplicated.
    pub fn new(num_vertices: u32, edges: Vec<Vec<Vertex>>) -> Result<Self, HitError> {
        let mut out = Vec::with_capacity(edges.len());
        for (i, mut e) in edges.into_iter().enumerate() {
            e.sort_unstable();
            e.dedup();
            if e.is_empty() {
                return Err(HitError::EmptyEdge(i));
            }
            if let Some(&v) = e.iter().find(|&&v| v == 0 || v > num_vertices) {
                return Err(HitError::VertexOutOfRange {
                    edge: i,
                    vertex: v,
                    num_vertices,
                });
            }
            out.push(e);
        }
        Ok(Hypergraph {
            num_vertices,
            edges: out,
        })
    }

    pub fn num_vertices(&self) -> u32 {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges
            .iter()
            .filter(|e| e.binary_search(&v).is_ok())
            .count()
    }

    /// |F[S]|: number of edges meeting `set`.
    pub fn edges_hit(&self, set: &[Vertex]) -> usize {
        self.edges
            .iter()
            .filter(|e| set.iter().any(|v| e.binary_search(v).is_ok()))
            .count()
    }

    pub fn is_hitting_set(&self, set: &[Vertex]) -> bool {
        self.edges_hit(set) == self.edges.len()
    }

    /// Edge indices containing each vertex, indexed by vertex (0 unused).
    fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.num_vertices as usize + 1];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v as usize].push(i);
            }
        }
        inc
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("h {} {}\n", self.num_vertices, self.edges.len());
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

/// Reads `h <n> <m>` followed by one edge per line. Blank lines and lines
/// starting with `c` are skipped.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, HypergraphParseError> {
    let mut header: Option<(u32, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('c') {
            continue;
        }
        let Some((n, _)) = header else {
            let mut parts = t.split_whitespace();
            let malformed = || HypergraphParseError::MalformedHeader {
                line,
                text: t.to_string(),
            };
            if parts.next() != Some("h") {
                return Err(HypergraphParseError::MissingHeader);
            }
            let n = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(malformed)?;
            let m = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(malformed)?;
            if parts.next().is_some() {
                return Err(malformed());
            }
            header = Some((n, m));
            continue;
        };
        let edge = t
            .split_whitespace()
            .map(|tok| {
                tok.parse::<Vertex>()
                    .map_err(|_| HypergraphParseError::BadToken {
                        line,
                        token: tok.to_string(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        // validate per line so errors carry the line number
        Hypergraph::new(n, vec![edge.clone()]).map_err(|e| HypergraphParseError::Invalid {
            line,
            source: match e {
                HitError::EmptyEdge(_) => HitError::EmptyEdge(edges.len()),
                HitError::VertexOutOfRange {
                    vertex,
                    num_vertices,
                    ..
                } => HitError::VertexOutOfRange {
                    edge: edges.len(),
                    vertex,
                    num_vertices,
                },
                other => other,
            },
        })?;
        edges.push(edge);
    }
    let (n, m) = header.ok_or(HypergraphParseError::MissingHeader)?;
    if edges.len() != m {
        return Err(HypergraphParseError::EdgeCount {
            declared: m,
            found: edges.len(),
        });
    }
    Ok(Hypergraph::new(n, edges).expect("edges validated line by line"))
}

/// Minimum hitting set by exhaustive search.
pub fn brute_min_hitting_set(h: &Hypergraph) -> Result<Vec<Vertex>, HitError> {
    if h.num_vertices > BRUTE_FORCE_MAX_VERTICES {
        return Err(HitError::TooLarge {
            vertices: h.num_vertices,
            limit: BRUTE_FORCE_MAX_VERTICES,
        });
    }
    let masks: Vec<u32> = h
        .edges
        .iter()
        .map(|e| e.iter().fold(0u32, |m, &v| m | 1 << (v - 1)))
        .collect();
    let mut best: Option<u32> = None;
    for set in 0u32..(1u32 << h.num_vertices) {
        if best.is_some_and(|b| set.count_ones() >= b.count_ones()) {
            continue;
        }
        if masks.iter().all(|&m| m & set != 0) {
            best = Some(set);
        }
    }
    let best = best.unwrap_or(0);
    Ok((1..=h.num_vertices)
        .filter(|&v| best >> (v - 1) & 1 == 1)
        .collect())
}

/// χ: one color in `0..q` per edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    edge_colors: Vec<usize>,
    q: usize,
}

impl Coloring {
    pub fn new(edge_colors: Vec<usize>, q: usize) -> Result<Self, HitError> {
        if let Some((edge, &color)) = edge_colors.iter().enumerate().find(|(_, &c)| c >= q) {
            return Err(HitError::ColorOutOfRange { edge, color, q });
        }
        Ok(Coloring { edge_colors, q })
    }

    pub fn random<R: Rng>(edges: usize, q: usize, rng: &mut R) -> Self {
        Coloring {
            edge_colors: (0..edges).map(|_| rng.gen_range(0..q)).collect(),
            q,
        }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn colors(&self) -> &[usize] {
        &self.edge_colors
    }
}

/// γ[X] for every color subset X: the size of a smallest vertex set whose
/// edges show every color in X.
#[derive(Clone, Debug)]
pub struct ColorfulDpTable {
    q: usize,
    gamma: Vec<u32>,
    /// χ({v}) per vertex, index 0 unused.
    vertex_colors: Vec<u64>,
}

const UNREACHABLE: u32 = u32::MAX;

impl ColorfulDpTable {
    pub fn q(&self) -> usize {
        self.q
    }

    /// `None` means no vertex set covers `colors`.
    pub fn get(&self, colors: u64) -> Option<u32> {
        let g = self.gamma[colors as usize];
        (g != UNREACHABLE).then_some(g)
    }

    fn full(&self) -> u64 {
        if self.q == 64 {
            u64::MAX
        } else {
            (1u64 << self.q) - 1
        }
    }

    /// Rebuilds a minimum set for `colors` by re-evaluating the recurrence.
    fn backtrack(&self, mut colors: u64) -> Option<Vec<Vertex>> {
        self.get(colors)?;
        let mut picked = Vec::new();
        while colors != 0 {
            let target = self.gamma[colors as usize];
            let (v, rest) = self
                .vertex_colors
                .iter()
                .enumerate()
                .skip(1)
                .filter(|(_, &c)| c & colors != 0)
                .map(|(v, &c)| (v as Vertex, colors & !c))
                .find(|&(_, rest)| {
                    let g = self.gamma[rest as usize];
                    g != UNREACHABLE && g + 1 == target
                })
                .expect("table entry has a witness");
            picked.push(v);
            colors = rest;
        }
        picked.sort_unstable();
        Some(picked)
    }
}

fn check_coloring(h: &Hypergraph, chi: &Coloring) -> Result<(), HitError> {
    if chi.edge_colors.len() != h.num_edges() {
        return Err(HitError::ColoringSize {
            colors: chi.edge_colors.len(),
            edges: h.num_edges(),
        });
    }
    if chi.q > MAX_COLORS {
        return Err(HitError::TooManyColors { colors: chi.q });
    }
    Ok(())
}

/// Fills γ in order of increasing subset index; every X \ χ({v}) precedes X.
pub fn colorful_dp_table(h: &Hypergraph, chi: &Coloring) -> Result<ColorfulDpTable, HitError> {
    check_coloring(h, chi)?;
    let size = 1usize
        .checked_shl(chi.q as u32)
        .ok_or(HitError::TableTooLarge { colors: chi.q })?;
    let mut gamma: Vec<u32> = Vec::new();
    gamma
        .try_reserve_exact(size)
        .map_err(|_| HitError::TableTooLarge { colors: chi.q })?;
    gamma.resize(size, UNREACHABLE);

    let mut vertex_colors = vec![0u64; h.num_vertices as usize + 1];
    for (e, &c) in h.edges.iter().zip(&chi.edge_colors) {
        for &v in e {
            vertex_colors[v as usize] |= 1 << c;
        }
    }
    let useful: Vec<u64> = {
        let mut m: Vec<u64> = vertex_colors.iter().copied().filter(|&c| c != 0).collect();
        m.sort_unstable();
        m.dedup();
        m
    };

    gamma[0] = 0;
    for x in 1..size as u64 {
        let mut best = UNREACHABLE;
        for &c in &useful {
            if c & x == 0 {
                continue;
            }
            let g = gamma[(x & !c) as usize];
            if g != UNREACHABLE && g + 1 < best {
                best = g + 1;
            }
        }
        gamma[x as usize] = best;
    }
    Ok(ColorfulDpTable {
        q: chi.q,
        gamma,
        vertex_colors,
    })
}

/// A minimum vertex set meeting every color class, or `None` when some color
/// has no edge.
pub fn dp_colorful_hitting_set(
    h: &Hypergraph,
    chi: &Coloring,
) -> Result<Option<Vec<Vertex>>, HitError> {
    check_coloring(h, chi)?;
    let mut present = vec![false; chi.q];
    for &c in &chi.edge_colors {
        present[c] = true;
    }
    if present.iter().any(|p| !p) {
        return Ok(None);
    }
    let table = colorful_dp_table(h, chi)?;
    Ok(table.backtrack(table.full()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HitMode {
    /// Color coding; a miss is confirmed by the exact search.
    #[default]
    Randomized,
    /// Exhaustive enumeration of candidate mini-hitting sets.
    Exact,
}

impl FromStr for HitMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "randomized" => Ok(HitMode::Randomized),
            "exact" => Ok(HitMode::Exact),
            other => Err(format!(
                "unknown mode `{other}` (expected randomized|exact)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HitConfig {
    pub mode: HitMode,
    pub seed: u64,
    pub trial_cap: u64,
}

impl Default for HitConfig {
    fn default() -> Self {
        HitConfig {
            mode: HitMode::Randomized,
            seed: 0,
            trial_cap: DEFAULT_TRIAL_CAP,
        }
    }
}

/// S with |S| ≤ k and |F[S]| ≥ |S| + k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MiniHittingSet {
    pub vertices: Vec<Vertex>,
}

impl MiniHittingSet {
    pub fn is_valid(&self, h: &Hypergraph, k: i64) -> bool {
        let s = self.vertices.len() as i64;
        s <= k && h.edges_hit(&self.vertices) as i64 >= s + k
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MiniOutcome {
    Found(MiniHittingSet),
    /// Exact search proved there is none.
    Absent,
    /// Randomized search ran its full trial count without a hit.
    NotFound,
    /// Randomized search stopped at the trial cap before its full count.
    Inconclusive,
}

/// ⌈e^{2k}⌉, saturating.
pub fn color_coding_trials(k: i64) -> u64 {
    let t = (2.0 * k as f64).exp().ceil();
    if t >= u64::MAX as f64 {
        u64::MAX
    } else {
        t as u64
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Sub-seed for trial `trial` at mini-set size `p`.
pub fn trial_seed(seed: u64, p: u64, trial: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ p) ^ trial)
}

pub fn find_mini_hitting_set(
    h: &Hypergraph,
    k: i64,
    cfg: &HitConfig,
) -> Result<MiniOutcome, HitError> {
    if k < 1 {
        return Err(HitError::NonPositiveK(k));
    }
    Ok(match cfg.mode {
        HitMode::Randomized => color_coding_search(h, k, cfg.seed, cfg.trial_cap),
        HitMode::Exact => match exact_mini_search(h, k) {
            Some(m) => MiniOutcome::Found(m),
            None => MiniOutcome::Absent,
        },
    })
}

/// For each p in 1..=k, colors the edges with p + k colors up to ⌈e^{2k}⌉
/// times (bounded by `trial_cap`) and asks the DP for a colorful set of at
/// most p vertices.
pub fn color_coding_search(h: &Hypergraph, k: i64, seed: u64, trial_cap: u64) -> MiniOutcome {
    let wanted = color_coding_trials(k);
    let trials = wanted.min(trial_cap);
    let m = h.num_edges();
    for p in 1..=k {
        let q = (p + k) as usize;
        if q > m || q > MAX_COLORS {
            continue;
        }
        for t in 0..trials {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, p as u64, t));
            let chi = Coloring::random(m, q, &mut rng);
            let Ok(Some(w)) = dp_colorful_hitting_set(h, &chi) else {
                continue;
            };
            let candidate = MiniHittingSet { vertices: w };
            if candidate.vertices.len() as i64 <= p && candidate.is_valid(h, k) {
                return MiniOutcome::Found(candidate);
            }
        }
    }
    if trials < wanted {
        MiniOutcome::Inconclusive
    } else {
        MiniOutcome::NotFound
    }
}

/// Depth-first enumeration of vertex sets of size ≤ k in decreasing-degree
/// order, cut off when even the largest remaining degrees cannot lift the
/// number of hit edges to |S| + k.
pub fn exact_mini_search(h: &Hypergraph, k: i64) -> Option<MiniHittingSet> {
    if k < 1 {
        return None;
    }
    let inc = h.incidence();
    let mut order: Vec<Vertex> = (1..=h.num_vertices)
        .filter(|&v| !inc[v as usize].is_empty())
        .collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(inc[v as usize].len()), v));
    let degrees: Vec<usize> = order.iter().map(|&v| inc[v as usize].len()).collect();
    let mut search = ExactSearch {
        inc: &inc,
        order: &order,
        degrees: &degrees,
        k: k as usize,
        hits: vec![0u32; h.num_edges()],
        covered: 0,
        chosen: Vec::new(),
    };
    if search.dfs(0) {
        let mut vertices = search.chosen;
        vertices.sort_unstable();
        Some(MiniHittingSet { vertices })
    } else {
        None
    }
}

struct ExactSearch<'a> {
    inc: &'a [Vec<usize>],
    order: &'a [Vertex],
    degrees: &'a [usize],
    k: usize,
    hits: Vec<u32>,
    covered: usize,
    chosen: Vec<Vertex>,
}

impl ExactSearch<'_> {
    fn dfs(&mut self, start: usize) -> bool {
        let s = self.chosen.len();
        if s > 0 && self.covered >= s + self.k {
            return true;
        }
        if s == self.k {
            return false;
        }
        // degrees are sorted descending, so the next r candidates bound
        // what r more picks could add
        let room = self.k - s;
        let mut gain = 0;
        let reachable = (1..=room).any(|r| {
            let i = start + r - 1;
            if i >= self.degrees.len() {
                return false;
            }
            gain += self.degrees[i];
            self.covered + gain >= s + r + self.k
        });
        if !reachable {
            return false;
        }
        for i in start..self.order.len() {
            let v = self.order[i];
            self.add(v, 1);
            self.chosen.push(v);
            if self.dfs(i + 1) {
                return true;
            }
            self.chosen.pop();
            self.add(v, -1);
        }
        false
    }

    fn add(&mut self, v: Vertex, delta: i32) {
        for &e in &self.inc[v as usize] {
            if delta > 0 {
                if self.hits[e] == 0 {
                    self.covered += 1;
                }
                self.hits[e] += 1;
            } else {
                self.hits[e] -= 1;
                if self.hits[e] == 0 {
                    self.covered -= 1;
                }
            }
        }
    }
}

/// Grows a k-mini-hitting set into a hitting set of size at most m − k by
/// adding one vertex for each edge still missed.
pub fn extend_to_hitting_set(
    h: &Hypergraph,
    mini: &MiniHittingSet,
    k: i64,
) -> Result<Vec<Vertex>, HitError> {
    if !mini.is_valid(h, k) {
        return Err(HitError::InvalidMini { k });
    }
    Ok(cover_remaining(h, mini.vertices.clone()))
}

fn cover_remaining(h: &Hypergraph, mut set: Vec<Vertex>) -> Vec<Vertex> {
    set.sort_unstable();
    for e in &h.edges {
        if !e.iter().any(|v| set.binary_search(v).is_ok()) {
            let pos = set.binary_search(&e[0]).unwrap_err();
            set.insert(pos, e[0]);
        }
    }
    set
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HitAnswer {
    pub exists: bool,
    pub mini: Option<MiniHittingSet>,
    /// A hitting set of size at most m − k when one exists.
    pub hitting_set: Option<Vec<Vertex>>,
    /// The exact search had to settle the question.
    pub exact_fallback: bool,
}

/// Decides whether a hitting set of size at most m − k exists.
pub fn solve_m_minus_k(h: &Hypergraph, k: i64, cfg: &HitConfig) -> HitAnswer {
    let m = h.num_edges() as i64;
    if k <= 0 {
        return HitAnswer {
            exists: true,
            mini: None,
            hitting_set: Some(cover_remaining(h, Vec::new())),
            exact_fallback: false,
        };
    }
    if k > m {
        return HitAnswer {
            exists: false,
            mini: None,
            hitting_set: None,
            exact_fallback: false,
        };
    }
    let (found, exact_fallback) = match cfg.mode {
        HitMode::Exact => (exact_mini_search(h, k), true),
        HitMode::Randomized => match color_coding_search(h, k, cfg.seed, cfg.trial_cap) {
            MiniOutcome::Found(mini) => (Some(mini), false),
            _ => (exact_mini_search(h, k), true),
        },
    };
    match found {
        Some(mini) => {
            let hs = cover_remaining(h, mini.vertices.clone());
            debug_assert!(hs.len() as i64 <= m - k);
            HitAnswer {
                exists: true,
                mini: Some(mini),
                hitting_set: Some(hs),
                exact_fallback,
            }
        }
        None => HitAnswer {
            exists: false,
            mini: None,
            hitting_set: None,
            exact_fallback,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(n: u32, edges: &[&[Vertex]]) -> Hypergraph {
        Hypergraph::new(n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Hypergraph::new(2, vec![vec![]]),
            Err(HitError::EmptyEdge(0))
        );
        assert!(matches!(
            Hypergraph::new(2, vec![vec![3]]),
            Err(HitError::VertexOutOfRange { vertex: 3, .. })
        ));
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(
            brute_min_hitting_set(&hg(2, &[&[1], &[1, 2]])).unwrap(),
            vec![1]
        );
        assert_eq!(
            brute_min_hitting_set(&hg(2, &[&[1], &[2]])).unwrap(),
            vec![1, 2]
        );
        assert_eq!(
            brute_min_hitting_set(&hg(3, &[&[1, 2], &[2, 3], &[1, 3]]))
                .unwrap()
                .len(),
            2
        );
        assert!(brute_min_hitting_set(&hg(21, &[])).is_err());
    }

    #[test]
    fn dp_examples() {
        let h = hg(2, &[&[1], &[1, 2]]);
        let chi = Coloring::new(vec![0, 1], 2).unwrap();
        assert_eq!(dp_colorful_hitting_set(&h, &chi).unwrap(), Some(vec![1]));

        let h = hg(2, &[&[1], &[2]]);
        let chi = Coloring::new(vec![0, 0], 2).unwrap();
        assert_eq!(dp_colorful_hitting_set(&h, &chi).unwrap(), None);

        let chi = Coloring::new(vec![0, 1], 2).unwrap();
        assert_eq!(dp_colorful_hitting_set(&h, &chi).unwrap(), Some(vec![1, 2]));
    }

    #[test]
    fn dp_guards() {
        let h = hg(1, &[&[1]]);
        assert!(matches!(
            dp_colorful_hitting_set(&h, &Coloring::new(vec![0], 63).unwrap()),
            Err(HitError::TooManyColors { .. })
        ));
        assert!(matches!(
            dp_colorful_hitting_set(&h, &Coloring::new(vec![0, 0], 1).unwrap()),
            Err(HitError::ColoringSize { .. })
        ));
        assert!(Coloring::new(vec![2], 2).is_err());
    }

    #[test]
    fn gamma_is_monotone() {
        let h = hg(3, &[&[1], &[2, 3], &[1, 3], &[2]]);
        let chi = Coloring::new(vec![0, 1, 2, 1], 3).unwrap();
        let t = colorful_dp_table(&h, &chi).unwrap();
        assert_eq!(t.get(0), Some(0));
        for x in 0u64..8 {
            for y in 0u64..8 {
                if x & y == x {
                    let gx = t.get(x).map_or(u32::MAX, |g| g);
                    let gy = t.get(y).map_or(u32::MAX, |g| g);
                    assert!(gx <= gy);
                }
            }
        }
    }

    #[test]
    fn mini_search_examples() {
        let star = hg(1, &[&[1], &[1], &[1]]);
        for mode in [HitMode::Exact, HitMode::Randomized] {
            let cfg = HitConfig {
                mode,
                ..HitConfig::default()
            };
            match find_mini_hitting_set(&star, 2, &cfg).unwrap() {
                MiniOutcome::Found(m) => assert_eq!(m.vertices, vec![1]),
                other => panic!("{other:?}"),
            }
        }
        let pair = hg(2, &[&[1], &[2]]);
        let exact = HitConfig {
            mode: HitMode::Exact,
            ..HitConfig::default()
        };
        assert_eq!(
            find_mini_hitting_set(&pair, 1, &exact).unwrap(),
            MiniOutcome::Absent
        );
        assert_eq!(
            find_mini_hitting_set(&pair, 1, &HitConfig::default()).unwrap(),
            MiniOutcome::NotFound
        );
        assert!(find_mini_hitting_set(&pair, 0, &exact).is_err());
    }

    #[test]
    fn trial_cap_reports_inconclusive() {
        let pair = hg(2, &[&[1], &[2]]);
        assert_eq!(
            color_coding_search(&pair, 1, 0, 2),
            MiniOutcome::Inconclusive
        );
        assert_eq!(color_coding_trials(1), 8);
        assert_eq!(color_coding_trials(3), 404);
    }

    #[test]
    fn extension_examples() {
        let h = hg(2, &[&[1], &[1], &[2]]);
        let mini = MiniHittingSet { vertices: vec![1] };
        assert_eq!(extend_to_hitting_set(&h, &mini, 1).unwrap(), vec![1, 2]);

        let star = hg(3, &[&[1, 2], &[1, 3], &[1]]);
        assert_eq!(extend_to_hitting_set(&star, &mini, 1).unwrap(), vec![1]);

        let bad = MiniHittingSet { vertices: vec![2] };
        assert!(extend_to_hitting_set(&h, &bad, 1).is_err());
    }

    #[test]
    fn solve_examples() {
        let cfg = HitConfig::default();
        assert!(!solve_m_minus_k(&hg(2, &[&[1], &[2]]), 1, &cfg).exists);
        let ans = solve_m_minus_k(&hg(1, &[&[1], &[1], &[1]]), 2, &cfg);
        assert!(ans.exists);
        assert_eq!(ans.hitting_set, Some(vec![1]));
        assert!(solve_m_minus_k(&hg(2, &[&[1], &[2]]), 0, &cfg).exists);
        assert!(!solve_m_minus_k(&hg(2, &[&[1], &[2]]), 3, &cfg).exists);
    }

    #[test]
    fn text_format_round_trip() {
        let h = hg(3, &[&[1, 2], &[3], &[2, 3]]);
        assert_eq!(parse_hypergraph(&h.to_text()).unwrap(), h);
        assert!(matches!(
            parse_hypergraph("h 2 1\n3\n"),
            Err(HypergraphParseError::Invalid { line: 2, .. })
        ));
        assert!(matches!(
            parse_hypergraph("h 2 2\n1\n"),
            Err(HypergraphParseError::EdgeCount { .. })
        ));
        assert_eq!(
            parse_hypergraph("1 2\n"),
            Err(HypergraphParseError::MissingHeader)
        );
    }
}
