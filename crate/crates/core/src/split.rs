//! Tree-splittings: edge-disjoint subtrees of bounded size covering a tree,
//! together with their bag-graph and a rooted bag-tree.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{data_lines, Graph, Tree, Vertex};

/// Edge-disjoint subtrees `T_1..T_ℓ` whose edges cover the tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeSplitting {
    n: usize,
    pieces: Vec<Vec<Vertex>>,
}

impl TreeSplitting {
    /// Wraps raw pieces of an `n`-vertex tree. Each piece is sorted; nothing
    /// else is checked, see [`TreeSplitting::validate`].
    pub fn from_pieces(n: usize, mut pieces: Vec<Vec<Vertex>>) -> Self {
        for p in &mut pieces {
            p.sort_unstable();
        }
        TreeSplitting { n, pieces }
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn tree_n(&self) -> usize {
        self.n
    }

    pub fn pieces(&self) -> &[Vec<Vertex>] {
        &self.pieces
    }

    pub fn piece(&self, i: usize) -> &[Vertex] {
        &self.pieces[i]
    }

    /// For every tree vertex, the indices of the pieces containing it.
    pub fn memberships(&self) -> Vec<Vec<usize>> {
        let mut of = vec![Vec::new(); self.n];
        for (i, p) in self.pieces.iter().enumerate() {
            for &x in p {
                if x < self.n {
                    of[x].push(i);
                }
            }
        }
        of
    }

    /// Checks that the pieces are subtrees of `t`, that every edge of `t` lies
    /// in exactly one piece and that two pieces share at most one vertex.
    pub fn validate(&self, t: &Tree) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSplitting(msg));
        if self.n != t.n() {
            return bad(format!(
                "splitting is for {} vertices, tree has {}",
                self.n,
                t.n()
            ));
        }
        if self.pieces.is_empty() {
            return bad("no pieces".into());
        }
        let mut mark = vec![false; self.n];
        for (i, p) in self.pieces.iter().enumerate() {
            if p.is_empty() {
                return bad(format!("piece {i} is empty"));
            }
            if p.windows(2).any(|w| w[0] == w[1]) {
                return bad(format!("piece {i} repeats a vertex"));
            }
            if let Some(&x) = p.iter().find(|&&x| x >= self.n) {
                return bad(format!("piece {i} contains out-of-range vertex {x}"));
            }
            for &x in p {
                mark[x] = true;
            }
            let inner = p
                .iter()
                .filter(|&&x| t.parent(x).is_some_and(|q| mark[q]))
                .count();
            for &x in p {
                mark[x] = false;
            }
            // an induced sub-forest of a tree with |P| - 1 edges is a tree
            if inner + 1 != p.len() {
                return bad(format!("piece {i} does not induce a subtree"));
            }
        }
        let of = self.memberships();
        for (c, par) in t.edges() {
            let owners = of[c].iter().filter(|i| of[par].contains(i)).count();
            if owners != 1 {
                return bad(format!("edge {c}-{par} lies in {owners} pieces"));
            }
        }
        if self.n == 1 && of[0].is_empty() {
            return bad("vertex 0 is in no piece".into());
        }
        let l = self.pieces.len();
        let mut shared = vec![0usize; l * l];
        for owners in &of {
            for (a, &i) in owners.iter().enumerate() {
                for &j in &owners[a + 1..] {
                    let k = i.min(j) * l + i.max(j);
                    shared[k] += 1;
                    if shared[k] > 1 {
                        return bad(format!("pieces {i} and {j} share more than one vertex"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks `lo <= |T_i| <= hi` for every piece.
    pub fn check_sizes(&self, lo: usize, hi: usize) -> Result<()> {
        for (i, p) in self.pieces.iter().enumerate() {
            if p.len() < lo || p.len() > hi {
                return Err(Error::InvalidSplitting(format!(
                    "piece {i} has {} vertices, outside [{lo}, {hi}]",
                    p.len()
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for TreeSplitting {
    /// One line per piece listing its vertex ids.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.pieces {
            let line: Vec<String> = p.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for TreeSplitting {
    type Err = Error;

    /// Parses the one-piece-per-line format. The tree size is taken to be one
    /// more than the largest vertex id.
    fn from_str(s: &str) -> Result<Self> {
        let mut pieces = Vec::new();
        for (ln, line) in data_lines(s) {
            let piece = line
                .split_whitespace()
                .map(|w| {
                    w.parse::<Vertex>()
                        .map_err(|e| Error::parse(ln, e.to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
            pieces.push(piece);
        }
        let n = pieces.iter().flatten().max().map_or(0, |&x| x + 1);
        Ok(TreeSplitting::from_pieces(n, pieces))
    }
}

/// Splits `t` into two edge-disjoint subtrees `(T1, T2)` covering its edges,
/// with `anchor ∈ T1` and `m <= |T2| <= 3m`. Requires `1 <= 3m <= n`.
pub fn split_once(t: &Tree, anchor: Vertex, m: usize) -> Result<(Vec<Vertex>, Vec<Vertex>)> {
    let n = t.n();
    if anchor >= n {
        return Err(Error::VertexOutOfRange { vertex: anchor, n });
    }
    if m == 0 || 3 * m > n {
        return Err(Error::Precondition(format!(
            "split size m = {m} must satisfy 1 <= m <= n/3 (n = {n})"
        )));
    }
    let member = vec![true; n];
    Ok(split_within(t, &member, anchor, m))
}

/// Core of [`split_once`] on the subtree of `t` induced by `member`.
///
/// Roots the subtree at `anchor`, takes the deepest vertex `x` whose pendant
/// subtree has at least `max(m, 2)` vertices (so all of its child subtrees are
/// smaller) and gathers child subtrees of `x` until the piece reaches that
/// size. The piece keeps `x`; the rest keeps `x` and `anchor`.
fn split_within(t: &Tree, member: &[bool], anchor: Vertex, m: usize) -> (Vec<Vertex>, Vec<Vertex>) {
    let n = t.n();
    let want = m.max(2);
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![anchor];
    parent[anchor] = anchor;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for w in t.neighbors(u) {
            if member[w] && parent[w] == usize::MAX {
                parent[w] = u;
                order.push(w);
            }
        }
    }
    let mut size = vec![0usize; n];
    for &u in order.iter().rev() {
        size[u] += 1;
        if u != anchor {
            size[parent[u]] += size[u];
        }
    }
    let x = *order
        .iter()
        .rev()
        .find(|&&u| size[u] >= want)
        .expect("the whole subtree has at least `want` vertices");

    let mut taken = vec![false; n];
    let mut piece_size = 1;
    for w in t.neighbors(x) {
        if piece_size >= want {
            break;
        }
        if !member[w] || parent[w] != x || w == anchor {
            continue;
        }
        let mut stack = vec![w];
        while let Some(u) = stack.pop() {
            taken[u] = true;
            for c in t.neighbors(u) {
                if member[c] && parent[c] == u && c != parent[u] {
                    stack.push(c);
                }
            }
        }
        piece_size += size[w];
    }
    let mut t1 = Vec::new();
    let mut t2 = vec![x];
    for &u in &order {
        if taken[u] {
            t2.push(u);
        } else {
            t1.push(u);
        }
    }
    t1.sort_unstable();
    t2.sort_unstable();
    (t1, t2)
}

/// Splits `t` into pieces of `m..=4m` vertices by repeatedly cutting a piece
/// of `m..=3m` vertices off the part containing the root. Requires
/// `1 <= m <= n`.
pub fn tree_splitting(t: &Tree, m: usize) -> Result<TreeSplitting> {
    let n = t.n();
    if m == 0 || m > n {
        return Err(Error::Precondition(format!(
            "piece size m = {m} must satisfy 1 <= m <= n = {n}"
        )));
    }
    let mut member = vec![true; n];
    let mut remaining = n;
    let mut pieces = Vec::new();
    while remaining > 4 * m {
        let (t1, t2) = split_within(t, &member, t.root(), m);
        for &u in &t2[..] {
            member[u] = false;
        }
        for &u in &t1 {
            member[u] = true;
        }
        remaining = t1.len();
        pieces.push(t2);
    }
    pieces.push((0..n).filter(|&u| member[u]).collect());
    Ok(TreeSplitting::from_pieces(n, pieces))
}

/// Intersection graph of the pieces: `i ~ j` iff `T_i` and `T_j` share a vertex.
pub fn bag_graph(s: &TreeSplitting) -> Graph {
    let mut g = Graph::empty(s.len());
    for owners in s.memberships() {
        for (a, &i) in owners.iter().enumerate() {
            for &j in &owners[a + 1..] {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Spanning tree of the bag-graph extended by the singleton bag `T_* = {t}`,
/// rooted at `T_*`.
///
/// Nodes `0..ℓ` are the pieces and node `ℓ` is `T_*`. Every non-root node
/// records the vertex it shares with its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BagTree {
    parent: Vec<Option<usize>>,
    shared: Vec<Option<Vertex>>,
    order: Vec<usize>,
    star_vertex: Vertex,
}

impl BagTree {
    /// Number of nodes, `ℓ + 1`.
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Node index of `T_*`.
    pub fn star(&self) -> usize {
        self.parent.len() - 1
    }

    /// The tree vertex `t` forming `T_*`.
    pub fn star_vertex(&self) -> Vertex {
        self.star_vertex
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.parent[node]
    }

    /// Vertex shared by `node` and its parent.
    pub fn shared(&self, node: usize) -> Option<Vertex> {
        self.shared[node]
    }

    /// Breadth-first order from `T_*`. Each piece in this order meets the
    /// union of earlier pieces in exactly its shared vertex.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn as_tree(&self) -> Tree {
        Tree::from_parents(self.parent.clone()).expect("bag-tree is a tree")
    }

    pub fn max_degree(&self) -> usize {
        self.as_tree().max_degree()
    }
}

impl fmt::Display for BagTree {
    /// One `node parent shared` line per node, `-` marking the root.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for node in 0..self.len() {
            match (self.parent[node], self.shared[node]) {
                (Some(p), Some(x)) => writeln!(f, "{node} {p} {x}")?,
                _ => writeln!(f, "{node} - -")?,
            }
        }
        Ok(())
    }
}

/// Breadth-first bag-tree from `T_* = {star_vertex}`. Neighbours are scanned
/// by shared vertex, then by lowest piece index.
pub fn bag_tree(s: &TreeSplitting, star_vertex: Vertex) -> Result<BagTree> {
    if star_vertex >= s.tree_n() {
        return Err(Error::VertexOutOfRange {
            vertex: star_vertex,
            n: s.tree_n(),
        });
    }
    let l = s.len();
    let of = s.memberships();
    let mut parent = vec![None; l + 1];
    let mut shared = vec![None; l + 1];
    let mut seen = vec![false; l + 1];
    let mut order = vec![l];
    seen[l] = true;
    let mut queue = VecDeque::new();
    for &j in &of[star_vertex] {
        seen[j] = true;
        parent[j] = Some(l);
        shared[j] = Some(star_vertex);
        order.push(j);
        queue.push_back(j);
    }
    while let Some(i) = queue.pop_front() {
        for &x in s.piece(i) {
            for &j in &of[x] {
                if !seen[j] {
                    seen[j] = true;
                    parent[j] = Some(i);
                    shared[j] = Some(x);
                    order.push(j);
                    queue.push_back(j);
                }
            }
        }
    }
    if order.len() != l + 1 {
        return Err(Error::InvalidSplitting("bag-graph is disconnected".into()));
    }
    Ok(BagTree {
        parent,
        shared,
        order,
        star_vertex,
    })
}
