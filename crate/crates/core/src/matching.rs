//! Random perfect matchings and `K_{1,k}` star matchings in dense bipartite
//! graphs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::meets_fraction;

/// Restarts of the sequential sampler before falling back to augmenting paths.
const MAX_RESTARTS: usize = 10_000;

/// Random equipartitions tried before giving up on the degree condition.
const EQUIPARTITION_TRIES: usize = 1_000;

/// Bipartite graph with left side `0..nl` and right side `0..nr`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    nl: usize,
    nr: usize,
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn empty(nl: usize, nr: usize) -> Self {
        BipartiteGraph {
            nl,
            nr,
            left: vec![Vec::new(); nl],
            right: vec![Vec::new(); nr],
        }
    }

    pub fn complete(nl: usize, nr: usize) -> Self {
        Self::from_fn(nl, nr, |_, _| true)
    }

    /// Edge `(a, b)` wherever `adjacent(a, b)` holds.
    pub fn from_fn(nl: usize, nr: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut h = Self::empty(nl, nr);
        for a in 0..nl {
            for b in 0..nr {
                if adjacent(a, b) {
                    h.left[a].push(b);
                    h.right[b].push(a);
                }
            }
        }
        h
    }

    pub fn from_edges(nl: usize, nr: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![vec![false; nr]; nl];
        for &(a, b) in edges {
            if a >= nl || b >= nr {
                return Err(Error::InvalidGraph(format!("edge ({a}, {b}) out of range")));
            }
            if adj[a][b] {
                return Err(Error::InvalidGraph(format!("repeated edge ({a}, {b})")));
            }
            adj[a][b] = true;
        }
        Ok(Self::from_fn(nl, nr, |a, b| adj[a][b]))
    }

    pub fn left_len(&self) -> usize {
        self.nl
    }

    pub fn right_len(&self) -> usize {
        self.nr
    }

    /// Right neighbours of left vertex `a`, ascending.
    pub fn left_neighbors(&self, a: usize) -> &[usize] {
        &self.left[a]
    }

    /// Left neighbours of right vertex `b`, ascending.
    pub fn right_neighbors(&self, b: usize) -> &[usize] {
        &self.right[b]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.left[a].binary_search(&b).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.left.iter().map(Vec::len).sum()
    }

    /// Minimum degree over both sides.
    pub fn min_degree(&self) -> usize {
        self.left
            .iter()
            .chain(&self.right)
            .map(Vec::len)
            .min()
            .unwrap_or(0)
    }

    /// Subgraph on all of the left side and the given right vertices,
    /// relabelled to positions in `right`.
    pub fn with_right(&self, right: &[usize]) -> BipartiteGraph {
        Self::from_fn(self.nl, right.len(), |a, i| self.has_edge(a, right[i]))
    }

    /// Size of a maximum matching.
    pub fn max_matching_size(&self) -> usize {
        let mut mate_r = vec![None; self.nr];
        (0..self.nl)
            .filter(|&a| self.augment(a, &mut vec![false; self.nr], &mut mate_r))
            .count()
    }

    fn augment(&self, a: usize, seen: &mut [bool], mate_r: &mut [Option<usize>]) -> bool {
        for &b in &self.left[a] {
            if seen[b] {
                continue;
            }
            seen[b] = true;
            if mate_r[b].is_none_or(|a2| self.augment(a2, seen, mate_r)) {
                mate_r[b] = Some(a);
                return true;
            }
        }
        false
    }

    /// True if `m` (left to right) is a perfect matching of this graph.
    pub fn is_perfect_matching(&self, m: &[usize]) -> bool {
        if self.nl != self.nr || m.len() != self.nl {
            return false;
        }
        let mut used = vec![false; self.nr];
        m.iter().enumerate().all(|(a, &b)| {
            b < self.nr && !std::mem::replace(&mut used[b], true) && self.has_edge(a, b)
        })
    }
}

/// Random perfect matching, as `m[a] = b`.
///
/// Left vertices are visited in random order, each matched to a uniform
/// available neighbour; a dead end restarts with fresh randomness. The output
/// is exactly uniform on complete bipartite graphs. If every restart dead-ends
/// the last partial matching is completed by augmenting paths.
pub fn sample_perfect_matching<R: Rng + ?Sized>(
    h: &BipartiteGraph,
    rng: &mut R,
) -> Result<Vec<usize>> {
    if h.nl != h.nr {
        return Err(Error::SizeMismatch(format!(
            "perfect matching needs equal sides, got {} and {}",
            h.nl, h.nr
        )));
    }
    let n = h.nl;
    let mut order: Vec<usize> = (0..n).collect();
    let mut mate_r: Vec<Option<usize>> = vec![None; n];
    let mut avail = Vec::with_capacity(n);
    for _ in 0..MAX_RESTARTS {
        order.shuffle(rng);
        mate_r.iter_mut().for_each(|m| *m = None);
        let mut complete = true;
        for &a in &order {
            avail.clear();
            avail.extend(h.left[a].iter().copied().filter(|&b| mate_r[b].is_none()));
            match avail.choose(rng) {
                Some(&b) => mate_r[b] = Some(a),
                None => {
                    complete = false;
                    break;
                }
            }
        }
        if complete {
            return Ok(invert(&mate_r, n));
        }
    }
    // fallback: finish the last attempt with augmenting paths
    let mut matched = vec![false; n];
    for a in mate_r.iter().flatten() {
        matched[*a] = true;
    }
    for &a in &order {
        if !matched[a] && !h.augment(a, &mut vec![false; n], &mut mate_r) {
            return Err(Error::NoPerfectMatching);
        }
    }
    Ok(invert(&mate_r, n))
}

fn invert(mate_r: &[Option<usize>], n: usize) -> Vec<usize> {
    let mut m = vec![0; n];
    for (b, a) in mate_r.iter().enumerate() {
        m[a.expect("every right vertex matched")] = b;
    }
    m
}

/// Uniform random split of `b` into `k` parts of equal size.
pub fn equipartition_right<R: Rng + ?Sized>(
    b: &[usize],
    k: usize,
    rng: &mut R,
) -> Result<Vec<Vec<usize>>> {
    if k == 0 || !b.len().is_multiple_of(k) {
        return Err(Error::SizeMismatch(format!(
            "{} vertices cannot be split into {k} equal parts",
            b.len()
        )));
    }
    if k == 1 {
        return Ok(vec![b.to_vec()]);
    }
    let mut perm = b.to_vec();
    perm.shuffle(rng);
    Ok(perm.chunks(b.len() / k).map(<[usize]>::to_vec).collect())
}

/// A `K_{1,k}` perfect matching: left vertex `a` is the centre of the star on
/// `leaves[a]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarMatching {
    leaves: Vec<Vec<usize>>,
}

impl StarMatching {
    pub fn leaves(&self, a: usize) -> &[usize] {
        &self.leaves[a]
    }

    pub fn all_leaves(&self) -> &[Vec<usize>] {
        &self.leaves
    }

    /// Centre matched to each right vertex.
    pub fn centres(&self, nr: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; nr];
        for (a, ls) in self.leaves.iter().enumerate() {
            for &b in ls {
                out[b] = Some(a);
            }
        }
        out
    }

    /// Every centre has exactly `k` leaves, leaves are disjoint, all pairs are
    /// edges and every right vertex is used.
    pub fn is_valid(&self, h: &BipartiteGraph, k: usize) -> bool {
        if self.leaves.len() != h.nl {
            return false;
        }
        let mut used = vec![false; h.nr];
        let mut total = 0;
        for (a, ls) in self.leaves.iter().enumerate() {
            if ls.len() != k {
                return false;
            }
            for &b in ls {
                if b >= h.nr || used[b] || !h.has_edge(a, b) {
                    return false;
                }
                used[b] = true;
                total += 1;
            }
        }
        total == h.nr
    }
}

/// Random `K_{1,k}` perfect matching with centres on the left.
///
/// Requires `|B| = k|A|` and cross-degrees of at least 99/100 of the opposite
/// side. The right side is split by a random equipartition into `k` groups,
/// redrawn until each group keeps relative degree 98/100 both ways, and a
/// random perfect matching is drawn between `A` and every group.
pub fn sample_star_matching<R: Rng + ?Sized>(
    h: &BipartiteGraph,
    k: usize,
    rng: &mut R,
) -> Result<StarMatching> {
    if k == 0 || h.nr != k * h.nl {
        return Err(Error::SizeMismatch(format!(
            "star matching needs |B| = k|A|, got |A| = {}, |B| = {}, k = {k}",
            h.nl, h.nr
        )));
    }
    for a in 0..h.nl {
        if !meets_fraction(h.left[a].len(), 0.99, h.nr) {
            return Err(Error::DegreeCondition(format!(
                "left vertex {a} has {} of {} neighbours",
                h.left[a].len(),
                h.nr
            )));
        }
    }
    for b in 0..h.nr {
        if !meets_fraction(h.right[b].len(), 0.99, h.nl) {
            return Err(Error::DegreeCondition(format!(
                "right vertex {b} has {} of {} neighbours",
                h.right[b].len(),
                h.nl
            )));
        }
    }
    let all: Vec<usize> = (0..h.nr).collect();
    for _ in 0..EQUIPARTITION_TRIES {
        let groups = equipartition_right(&all, k, rng)?;
        let subs: Vec<BipartiteGraph> = groups.iter().map(|g| h.with_right(g)).collect();
        if !subs
            .iter()
            .all(|s| meets_fraction(s.min_degree(), 0.98, h.nl))
        {
            continue;
        }
        let mut leaves = vec![Vec::with_capacity(k); h.nl];
        for (group, sub) in groups.iter().zip(&subs) {
            let m = sample_perfect_matching(sub, rng)?;
            for (a, &i) in m.iter().enumerate() {
                leaves[a].push(group[i]);
            }
        }
        leaves.iter_mut().for_each(|l| l.sort_unstable());
        return Ok(StarMatching { leaves });
    }
    Err(Error::DegreeCondition(format!(
        "no equipartition with relative degree 98/100 in {EQUIPARTITION_TRIES} draws"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng_from_seed;

    #[test]
    fn complete_graph_matchings_are_perfect() {
        let h = BipartiteGraph::complete(6, 6);
        let mut rng = rng_from_seed(1);
        for _ in 0..50 {
            let m = sample_perfect_matching(&h, &mut rng).unwrap();
            assert!(h.is_perfect_matching(&m));
        }
    }

    #[test]
    fn no_perfect_matching_is_reported() {
        // both left vertices only see right vertex 0
        let h = BipartiteGraph::from_edges(2, 2, &[(0, 0), (1, 0)]).unwrap();
        assert!(matches!(
            sample_perfect_matching(&h, &mut rng_from_seed(1)),
            Err(Error::NoPerfectMatching)
        ));
        assert_eq!(h.max_matching_size(), 1);
        assert!(
            sample_perfect_matching(&BipartiteGraph::complete(2, 3), &mut rng_from_seed(1))
                .is_err()
        );
    }

    #[test]
    fn sparse_graph_with_unique_matching() {
        // a_i ~ b_i and a_i ~ b_{i+1}: only the diagonal is perfect
        let n = 6;
        let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
        edges.extend((0..n - 1).map(|i| (i + 1, i)));
        let h = BipartiteGraph::from_edges(n, n, &edges).unwrap();
        let m = sample_perfect_matching(&h, &mut rng_from_seed(3)).unwrap();
        assert_eq!(m, (0..n).collect::<Vec<_>>());
    }

    #[test]
    fn equipartition_examples() {
        let b: Vec<usize> = (0..12).collect();
        let mut rng = rng_from_seed(4);
        assert_eq!(
            equipartition_right(&b, 1, &mut rng).unwrap(),
            vec![b.clone()]
        );
        let parts = equipartition_right(&b, 3, &mut rng).unwrap();
        assert!(parts.iter().all(|p| p.len() == 4));
        let mut flat: Vec<usize> = parts.concat();
        flat.sort_unstable();
        assert_eq!(flat, b);
        assert!(equipartition_right(&b, 5, &mut rng).is_err());
    }

    #[test]
    fn star_matching_k1_matches_perfect_matching() {
        let h = BipartiteGraph::complete(5, 5);
        let star = sample_star_matching(&h, 1, &mut rng_from_seed(9)).unwrap();
        let m = sample_perfect_matching(&h, &mut rng_from_seed(9)).unwrap();
        let from_star: Vec<usize> = star.all_leaves().iter().map(|l| l[0]).collect();
        assert_eq!(from_star, m);
    }

    #[test]
    fn star_matching_validity() {
        let h = BipartiteGraph::complete(4, 8);
        let mut rng = rng_from_seed(2);
        for _ in 0..100 {
            let s = sample_star_matching(&h, 2, &mut rng).unwrap();
            assert!(s.is_valid(&h, 2));
        }
        assert!(sample_star_matching(&h, 3, &mut rng).is_err());
        let sparse = BipartiteGraph::from_fn(4, 8, |a, b| a != b);
        assert!(matches!(
            sample_star_matching(&sparse, 2, &mut rng),
            Err(Error::DegreeCondition(_))
        ));
    }
}
