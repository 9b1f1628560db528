//! Host graphs, rooted trees, embeddings and their instance generators.
//!
//! Vertex ids are dense integers in `0..n` and vertex sets are plain slices of
//! ids, so iteration order is always the order callers pass in.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// `ceil(frac * size)` with a small tolerance so that exact products such as
/// `0.75 * 40` are not pushed up by rounding noise.
pub fn frac_ceil(frac: f64, size: usize) -> usize {
    let x = frac * size as f64;
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r as usize
    } else {
        x.ceil() as usize
    }
}

/// `count >= frac * size`, tolerant to floating error at the boundary.
pub fn meets_fraction(count: usize, frac: f64, size: usize) -> bool {
    count as f64 + 1e-9 >= frac * size as f64
}

/// Simple undirected graph on `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    matrix: Vec<bool>,
    neighbors: Vec<Vec<Vertex>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.edge_count())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            matrix: vec![false; n * n],
            neighbors: vec![Vec::new(); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_edge(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 1..n {
            g.insert_edge(u - 1, u);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.insert_edge(0, n - 1);
        }
        g
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidGraph(format!("duplicate edge {u} {v}")));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    /// Adds `{u, v}`; returns false if it was already present. Panics on loops
    /// or out-of-range ids.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        assert!(u != v, "loops are not allowed");
        assert!(u < self.n && v < self.n, "vertex out of range");
        if self.has_edge(u, v) {
            return false;
        }
        self.insert_edge(u, v);
        true
    }

    fn insert_edge(&mut self, u: Vertex, v: Vertex) {
        self.matrix[u * self.n + v] = true;
        self.matrix[v * self.n + u] = true;
        self.neighbors[u].push(v);
        self.neighbors[v].push(u);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.matrix[u * self.n + v]
    }

    pub fn degree(&self, u: Vertex) -> usize {
        self.neighbors[u].len()
    }

    /// Neighbours of `u` in insertion order.
    pub fn neighbors(&self, u: Vertex) -> &[Vertex] {
        &self.neighbors[u]
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub(crate) fn check_vertex(&self, u: Vertex) -> Result<()> {
        if u >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: u,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn min_degree(&self) -> Result<usize> {
        (0..self.n)
            .map(|u| self.degree(u))
            .min()
            .ok_or_else(|| Error::Degenerate("graph has no vertices".into()))
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    /// Number of neighbours of `u` inside `set`; `u` itself never counts.
    pub fn degree_into(&self, u: Vertex, set: &[Vertex]) -> Result<usize> {
        self.check_vertex(u)?;
        let mut count = 0;
        for &w in set {
            self.check_vertex(w)?;
            if w != u && self.has_edge(u, w) {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Minimum degree of the induced subgraph `G[set]`.
    pub fn induced_min_degree(&self, set: &[Vertex]) -> Result<usize> {
        if set.is_empty() {
            return Err(Error::Degenerate("empty vertex set".into()));
        }
        for &w in set {
            self.check_vertex(w)?;
        }
        Ok(self.induced_min_degree_unchecked(set))
    }

    pub(crate) fn induced_min_degree_unchecked(&self, set: &[Vertex]) -> usize {
        set.iter()
            .map(|&u| set.iter().filter(|&&w| self.has_edge(u, w)).count())
            .min()
            .unwrap_or(0)
    }

    /// `δ(G[set + extra])`, computed without materialising the union.
    pub(crate) fn induced_min_degree_with(&self, set: &[Vertex], extra: Vertex) -> usize {
        let mut min = self.degree_into_unchecked(extra, set);
        for &u in set {
            let d = self.degree_into_unchecked(u, set) + usize::from(self.has_edge(u, extra));
            min = min.min(d);
        }
        min
    }

    #[inline]
    pub(crate) fn degree_into_unchecked(&self, u: Vertex, set: &[Vertex]) -> usize {
        set.iter().filter(|&&w| self.has_edge(u, w)).count()
    }

    /// Induced subgraph on `set`, relabelled to `0..set.len()` in slice order.
    pub fn induced(&self, set: &[Vertex]) -> Graph {
        let mut h = Graph::empty(set.len());
        for (i, &u) in set.iter().enumerate() {
            for (j, &w) in set.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, w) {
                    h.insert_edge(i, j);
                }
            }
        }
        h
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.neighbors[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }
}

impl fmt::Display for Graph {
    /// Header `n m`, then one `u v` line per edge with `u < v`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges = self.edges();
        writeln!(f, "{} {}", self.n, edges.len())?;
        for (u, v) in edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = data_lines(s);
        let (hl, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header `n m`"))?;
        let [n, m] = parse_pair(hl, header)?;
        let mut g = Graph::empty(n);
        let mut read = 0;
        for (ln, line) in lines {
            let [u, v] = parse_pair(ln, line)?;
            if u >= n || v >= n {
                return Err(Error::parse(ln, format!("vertex out of range 0..{n}")));
            }
            if u >= v {
                return Err(Error::parse(ln, "edge must be written with u < v"));
            }
            if g.has_edge(u, v) {
                return Err(Error::parse(ln, "duplicate edge"));
            }
            g.insert_edge(u, v);
            read += 1;
        }
        if read != m {
            return Err(Error::parse(
                hl,
                format!("header declares {m} edges, found {read}"),
            ));
        }
        Ok(g)
    }
}

/// Non-empty, non-comment lines with 1-based line numbers.
pub(crate) fn data_lines(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_pair(line_no: usize, line: &str) -> Result<[usize; 2]> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::parse(line_no, "expected two integers"))?
            .parse()
            .map_err(|e| Error::parse(line_no, format!("{e}")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::parse(line_no, "expected exactly two integers"));
    }
    Ok([a, b])
}

/// Rooted tree stored as a parent array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    parent: Vec<Option<Vertex>>,
    children: Vec<Vec<Vertex>>,
    root: Vertex,
    max_deg: usize,
}

impl Tree {
    pub fn single() -> Self {
        Tree {
            parent: vec![None],
            children: vec![Vec::new()],
            root: 0,
            max_deg: 0,
        }
    }

    /// Builds a tree from a parent array (`parent[root] == None`). The recorded
    /// degree bound is the actual maximum degree.
    pub fn from_parents(parent: Vec<Option<Vertex>>) -> Result<Self> {
        let n = parent.len();
        if n == 0 {
            return Err(Error::InvalidTree("tree has no vertices".into()));
        }
        let roots: Vec<_> = (0..n).filter(|&u| parent[u].is_none()).collect();
        let root = match roots.as_slice() {
            [r] => *r,
            _ => {
                return Err(Error::InvalidTree(format!(
                    "expected exactly one root, found {}",
                    roots.len()
                )))
            }
        };
        let mut children = vec![Vec::new(); n];
        for (u, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n {
                    return Err(Error::VertexOutOfRange { vertex: p, n });
                }
                if p == u {
                    return Err(Error::InvalidTree(format!("vertex {u} is its own parent")));
                }
                children[p].push(u);
            }
        }
        let mut tree = Tree {
            parent,
            children,
            root,
            max_deg: 0,
        };
        if tree.bfs_order(root).len() != n {
            return Err(Error::InvalidTree("parent array contains a cycle".into()));
        }
        tree.max_deg = tree.max_degree();
        Ok(tree)
    }

    /// Builds a tree from `n - 1` undirected edges, rooted at `root`.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)], root: Vertex) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTree("tree has no vertices".into()));
        }
        if root >= n {
            return Err(Error::VertexOutOfRange { vertex: root, n });
        }
        if edges.len() + 1 != n {
            return Err(Error::InvalidTree(format!(
                "{} edges for {n} vertices",
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(Error::InvalidTree(format!("loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        if count != n {
            return Err(Error::InvalidTree(
                "edges do not connect all vertices".into(),
            ));
        }
        Tree::from_parents(parent)
    }

    pub fn path(n: usize) -> Self {
        let parent = (0..n).map(|u| u.checked_sub(1)).collect();
        Tree::from_parents(parent).expect("path is a tree")
    }

    /// Star `K_{1,leaves}` with centre 0 as root.
    pub fn star(leaves: usize) -> Self {
        let parent = std::iter::once(None)
            .chain((0..leaves).map(|_| Some(0)))
            .collect();
        Tree::from_parents(parent).expect("star is a tree")
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn parent(&self, u: Vertex) -> Option<Vertex> {
        self.parent[u]
    }

    pub fn parents(&self) -> &[Option<Vertex>] {
        &self.parent
    }

    pub fn children(&self, u: Vertex) -> &[Vertex] {
        &self.children[u]
    }

    pub fn degree(&self, u: Vertex) -> usize {
        self.children[u].len() + usize::from(self.parent[u].is_some())
    }

    /// Recorded degree bound Δ.
    pub fn max_deg(&self) -> usize {
        self.max_deg
    }

    /// Records a degree bound; fails if some vertex already exceeds it.
    pub fn with_max_deg(mut self, bound: usize) -> Result<Self> {
        if self.max_degree() > bound {
            return Err(Error::InvalidTree(format!(
                "maximum degree {} exceeds bound {bound}",
                self.max_degree()
            )));
        }
        self.max_deg = bound;
        Ok(self)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.parent[u]
            .into_iter()
            .chain(self.children[u].iter().copied())
    }

    /// Edges as `(child, parent)`.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        (0..self.n())
            .filter_map(|u| self.parent[u].map(|p| (u, p)))
            .collect()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.parent[u] == Some(v) || self.parent[v] == Some(u)
    }

    /// Breadth-first order from `start`, visiting neighbours parent-first then
    /// children in stored order.
    pub fn bfs_order(&self, start: Vertex) -> Vec<Vertex> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        seen[start] = true;
        order.push(start);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for w in self.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
        order
    }

    /// Same tree rooted at `root`.
    pub fn rerooted(&self, root: Vertex) -> Tree {
        let n = self.n();
        let mut parent = vec![None; n];
        let order = self.bfs_order(root);
        let mut seen = vec![false; n];
        for &u in &order {
            seen[u] = true;
            for w in self.neighbors(u) {
                if !seen[w] {
                    parent[w] = Some(u);
                }
            }
        }
        let mut t = Tree::from_parents(parent).expect("rerooting preserves tree shape");
        t.max_deg = self.max_deg.max(t.max_deg);
        t
    }

    /// Tree on the vertex subset `verts` (which must induce a subtree),
    /// relabelled to positions in `verts` and rooted at `verts[root_pos]`.
    pub fn induced_subtree(&self, verts: &[Vertex], root_pos: usize) -> Result<Tree> {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &u) in verts.iter().enumerate() {
            local[u] = i;
        }
        let mut edges = Vec::with_capacity(verts.len().saturating_sub(1));
        for (i, &u) in verts.iter().enumerate() {
            if let Some(p) = self.parent[u] {
                if local[p] != usize::MAX {
                    edges.push((i, local[p]));
                }
            }
        }
        Tree::from_edges(verts.len(), &edges, root_pos)
    }
}

impl fmt::Display for Tree {
    /// Header `n root`, then one `child parent` line per edge.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n(), self.root)?;
        for (c, p) in self.edges() {
            writeln!(f, "{c} {p}")?;
        }
        Ok(())
    }
}

impl FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = data_lines(s);
        let (hl, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header `n root`"))?;
        let [n, root] = parse_pair(hl, header)?;
        if n == 0 || root >= n {
            return Err(Error::parse(hl, "root out of range"));
        }
        let mut parent = vec![None; n];
        let mut read = 0;
        for (ln, line) in lines {
            let [c, p] = parse_pair(ln, line)?;
            if c >= n || p >= n {
                return Err(Error::parse(ln, format!("vertex out of range 0..{n}")));
            }
            if c == root || parent[c].is_some() {
                return Err(Error::parse(
                    ln,
                    format!("vertex {c} given a second parent"),
                ));
            }
            parent[c] = Some(p);
            read += 1;
        }
        if read + 1 != n {
            return Err(Error::parse(
                hl,
                format!("expected {} edges, found {read}", n - 1),
            ));
        }
        Tree::from_parents(parent).map_err(|e| Error::parse(hl, e.to_string()))
    }
}

/// Partial injection from tree vertices to graph vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Embedding {
    map: Vec<Option<Vertex>>,
}

impl Embedding {
    pub fn new(tree_n: usize) -> Self {
        Embedding {
            map: vec![None; tree_n],
        }
    }

    pub fn from_total(images: Vec<Vertex>) -> Self {
        Embedding {
            map: images.into_iter().map(Some).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, x: Vertex) -> Option<Vertex> {
        self.map[x]
    }

    pub fn set(&mut self, x: Vertex, y: Vertex) {
        self.map[x] = Some(y);
    }

    pub fn unset(&mut self, x: Vertex) {
        self.map[x] = None;
    }

    pub fn is_total(&self) -> bool {
        self.map.iter().all(Option::is_some)
    }

    /// Images of a total embedding.
    pub fn images(&self) -> Result<Vec<Vertex>> {
        self.map
            .iter()
            .enumerate()
            .map(|(x, y)| y.ok_or(Error::IncompleteEmbedding(x)))
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.map
            .iter()
            .enumerate()
            .filter_map(|(x, y)| y.map(|y| (x, y)))
    }
}

impl fmt::Display for Embedding {
    /// One `tree_vertex graph_vertex` line per mapped vertex.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, y) in self.entries() {
            writeln!(f, "{x} {y}")?;
        }
        Ok(())
    }
}

impl FromStr for Embedding {
    type Err = Error;

    /// Reads the `Display` format; the domain ends at the largest tree vertex.
    fn from_str(s: &str) -> Result<Self> {
        let mut map: Vec<Option<Vertex>> = Vec::new();
        for (ln, line) in data_lines(s) {
            let [x, y] = parse_pair(ln, line)?;
            if x >= map.len() {
                map.resize(x + 1, None);
            }
            if map[x].replace(y).is_some() {
                return Err(Error::parse(ln, format!("tree vertex {x} mapped twice")));
            }
        }
        Ok(Embedding { map })
    }
}

/// True iff `phi` is injective and maps every tree edge onto a graph edge.
/// Errors if `phi` is not total on `V(t)`.
pub fn is_valid_embedding(t: &Tree, g: &Graph, phi: &Embedding) -> Result<bool> {
    if phi.len() != t.n() {
        return Err(Error::SizeMismatch(format!(
            "embedding covers {} vertices, tree has {}",
            phi.len(),
            t.n()
        )));
    }
    let images = phi.images()?;
    let mut used = vec![false; g.n()];
    for &y in &images {
        if y >= g.n() || used[y] {
            return Ok(false);
        }
        used[y] = true;
    }
    Ok(t.edges()
        .iter()
        .all(|&(c, p)| g.has_edge(images[c], images[p])))
}

/// Random graph with `δ(G) ≥ ceil((delta_frac + alpha) n)`: each edge is kept
/// with probability `delta_frac + alpha + 0.05`, then deficient vertices are
/// joined to random non-neighbours until they reach the bound.
pub fn gen_dirac_graph<R: Rng + ?Sized>(
    n: usize,
    delta_frac: f64,
    alpha: f64,
    rng: &mut R,
) -> Result<Graph> {
    let frac = delta_frac + alpha;
    if n < 10 {
        return Err(Error::Infeasible(format!("n = {n} < 10")));
    }
    if !(delta_frac >= 0.0 && alpha >= 0.0 && frac < 1.0) {
        return Err(Error::Infeasible(format!(
            "delta_frac + alpha = {frac} must lie in [0, 1)"
        )));
    }
    let target = frac_ceil(frac, n);
    if target > n - 1 {
        return Err(Error::Infeasible(format!(
            "minimum degree {target} impossible on {n} vertices"
        )));
    }
    let p = (frac + 0.05).min(1.0);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.insert_edge(u, v);
            }
        }
    }
    for u in 0..n {
        let deficit = target.saturating_sub(g.degree(u));
        if deficit == 0 {
            continue;
        }
        let mut candidates: Vec<Vertex> = (0..n).filter(|&w| w != u && !g.has_edge(u, w)).collect();
        candidates.shuffle(rng);
        for &w in candidates.iter().take(deficit) {
            g.insert_edge(u, w);
        }
    }
    Ok(g)
}

/// Random tree by sequential attachment: vertex `i` joins a uniformly chosen
/// earlier vertex whose degree is still below `max_deg`. Rooted at 0.
pub fn gen_bounded_tree<R: Rng + ?Sized>(n: usize, max_deg: usize, rng: &mut R) -> Result<Tree> {
    if n == 0 {
        return Err(Error::Infeasible(
            "tree must have at least one vertex".into(),
        ));
    }
    if (n >= 3 && max_deg < 2) || (n == 2 && max_deg < 1) {
        return Err(Error::Infeasible(format!(
            "degree bound {max_deg} cannot span {n} vertices"
        )));
    }
    let mut parent = vec![None; n];
    let mut degree = vec![0usize; n];
    // vertices with spare degree; swap-remove keeps sampling O(1)
    let mut open: Vec<Vertex> = vec![0];
    for u in 1..n {
        let i = rng.gen_range(0..open.len());
        let p = open[i];
        parent[u] = Some(p);
        degree[p] += 1;
        degree[u] = 1;
        if degree[p] >= max_deg {
            open.swap_remove(i);
        }
        if degree[u] < max_deg {
            open.push(u);
        }
    }
    Tree::from_parents(parent)?.with_max_deg(max_deg)
}
