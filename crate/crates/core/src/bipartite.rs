//! Plain bipartite graphs over `0..left` × `0..right` and maximum matching.

use std::collections::VecDeque;

const FREE: usize = usize::MAX;

#[derive(Clone, Debug, Default)]
pub struct BipartiteGraph {
    right: usize,
    adj: Vec<Vec<usize>>,
}

/// Mate arrays of a matching; `FREE` marks an unmatched node.
#[derive(Clone, Debug)]
pub struct MatchState {
    pub mate_left: Vec<usize>,
    pub mate_right: Vec<usize>,
}

impl MatchState {
    pub fn size(&self) -> usize {
        self.mate_left.iter().filter(|&&r| r != FREE).count()
    }

    pub fn left_mate(&self, u: usize) -> Option<usize> {
        let r = self.mate_left[u];
        (r != FREE).then_some(r)
    }

    pub fn right_mate(&self, r: usize) -> Option<usize> {
        let u = self.mate_right[r];
        (u != FREE).then_some(u)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mate_left
            .iter()
            .enumerate()
            .filter(|(_, &r)| r != FREE)
            .map(|(u, &r)| (u, r))
    }
}

impl BipartiteGraph {
    pub fn new(right: usize, adj: Vec<Vec<usize>>) -> Self {
        debug_assert!(adj.iter().flatten().all(|&r| r < right));
        BipartiteGraph { right, adj }
    }

    pub fn left(&self) -> usize {
        self.adj.len()
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn push_left(&mut self, neighbors: Vec<usize>) -> usize {
        self.adj.push(neighbors);
        self.adj.len() - 1
    }

    pub fn pop_left(&mut self) {
        self.adj.pop();
    }

    /// Hopcroft–Karp.
    pub fn maximum_matching(&self) -> MatchState {
        let n = self.left();
        let mut state = MatchState {
            mate_left: vec![FREE; n],
            mate_right: vec![FREE; self.right],
        };
        let mut dist = vec![0usize; n];
        loop {
            // layered BFS from free left vertices
            let mut queue = VecDeque::new();
            for (u, d) in dist.iter_mut().enumerate() {
                if state.mate_left[u] == FREE {
                    *d = 0;
                    queue.push_back(u);
                } else {
                    *d = usize::MAX;
                }
            }
            let mut found = false;
            while let Some(u) = queue.pop_front() {
                for &r in &self.adj[u] {
                    let w = state.mate_right[r];
                    if w == FREE {
                        found = true;
                    } else if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            if !found {
                break;
            }
            let mut progressed = false;
            for u in 0..n {
                if state.mate_left[u] == FREE && self.layered_dfs(u, &mut state, &mut dist) {
                    progressed = true;
                }
            }
            if !progressed {
                break;
            }
        }
        state
    }

    fn layered_dfs(&self, u: usize, state: &mut MatchState, dist: &mut [usize]) -> bool {
        for i in 0..self.adj[u].len() {
            let r = self.adj[u][i];
            let w = state.mate_right[r];
            if w == FREE || (dist[w] == dist[u].wrapping_add(1) && self.layered_dfs(w, state, dist))
            {
                state.mate_left[u] = r;
                state.mate_right[r] = u;
                return true;
            }
        }
        dist[u] = usize::MAX;
        false
    }

    /// Tries to match the free left vertex `u` along one augmenting path.
    pub fn augment(&self, u: usize, state: &mut MatchState) -> bool {
        if state.mate_left.len() < self.left() {
            state.mate_left.resize(self.left(), FREE);
        }
        let mut seen = vec![false; self.right];
        self.augment_dfs(u, state, &mut seen)
    }

    fn augment_dfs(&self, u: usize, state: &mut MatchState, seen: &mut [bool]) -> bool {
        for &r in &self.adj[u] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            let w = state.mate_right[r];
            if w == FREE || self.augment_dfs(w, state, seen) {
                state.mate_left[u] = r;
                state.mate_right[r] = u;
                return true;
            }
        }
        false
    }

    /// Left and right vertices reachable from `starts` by alternating paths
    /// (any edge left→right, matching edge right→left).
    pub fn alternating_reach(
        &self,
        starts: &[usize],
        state: &MatchState,
    ) -> (Vec<bool>, Vec<bool>) {
        let mut left_seen = vec![false; self.left()];
        let mut right_seen = vec![false; self.right];
        let mut stack: Vec<usize> = Vec::new();
        for &u in starts {
            if !left_seen[u] {
                left_seen[u] = true;
                stack.push(u);
            }
        }
        while let Some(u) = stack.pop() {
            for &r in &self.adj[u] {
                if right_seen[r] {
                    continue;
                }
                right_seen[r] = true;
                let w = state.mate_right[r];
                if w != FREE && !left_seen[w] {
                    left_seen[w] = true;
                    stack.push(w);
                }
            }
        }
        (left_seen, right_seen)
    }

    /// Adds `q` copies of left vertex `x` and extends `base` (a maximum
    /// matching of `self`) to the copied graph. On success returns `None`; if
    /// some copy stays unmatched, returns the left vertices of the original
    /// graph reachable from it by alternating paths (copies excluded).
    pub fn duplicate_test(&mut self, x: usize, q: usize, base: &MatchState) -> Option<Vec<usize>> {
        let n = self.left();
        let mut state = base.clone();
        state.mate_left.resize(n + q, FREE);
        for _ in 0..q {
            self.push_left(self.adj[x].clone());
        }
        let mut witness = None;
        for i in 0..q {
            let copy = n + i;
            if !self.augment(copy, &mut state) {
                let (left_seen, _) = self.alternating_reach(&[copy], &state);
                witness = Some((0..n).filter(|&u| left_seen[u]).collect());
                break;
            }
        }
        for _ in 0..q {
            self.pop_left();
        }
        witness
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_matching(g: &BipartiteGraph) -> usize {
        let edges: Vec<(usize, usize)> = (0..g.left())
            .flat_map(|u| g.neighbors(u).iter().map(move |&r| (u, r)))
            .collect();
        let mut best = 0;
        for mask in 0u32..(1 << edges.len()) {
            let mut lu = vec![false; g.left()];
            let mut ru = vec![false; g.right()];
            let mut ok = true;
            let mut size = 0;
            for (i, &(u, r)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    if lu[u] || ru[r] {
                        ok = false;
                        break;
                    }
                    lu[u] = true;
                    ru[r] = true;
                    size += 1;
                }
            }
            if ok {
                best = best.max(size);
            }
        }
        best
    }

    #[test]
    fn hopcroft_karp_matches_brute_force_on_small_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let left = rng.gen_range(0..6);
            let right = rng.gen_range(1..6);
            let mut adj = vec![Vec::new(); left];
            let mut edges = 0;
            for row in adj.iter_mut() {
                for r in 0..right {
                    if edges < 14 && rng.gen_bool(0.35) {
                        row.push(r);
                        edges += 1;
                    }
                }
            }
            let g = BipartiteGraph::new(right, adj);
            let m = g.maximum_matching();
            assert_eq!(m.size(), brute_matching(&g));
            for (u, r) in m.pairs() {
                assert!(g.neighbors(u).contains(&r));
                assert_eq!(m.mate_right[r], u);
            }
        }
    }

    #[test]
    fn duplicate_test_detects_tight_vertex() {
        // one left vertex with one neighbor: a copy cannot be matched
        let mut g = BipartiteGraph::new(1, vec![vec![0]]);
        let m = g.maximum_matching();
        assert_eq!(g.duplicate_test(0, 1, &m), Some(vec![0]));
        let mut g = BipartiteGraph::new(2, vec![vec![0, 1]]);
        let m = g.maximum_matching();
        assert_eq!(g.duplicate_test(0, 1, &m), None);
        assert_eq!(g.left(), 1);
    }
}
