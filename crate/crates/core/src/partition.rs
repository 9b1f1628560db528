//! Random labelled partitions of a host graph and the auxiliary graph of
//! good part pairs.
//!
//! A partition has, for each colour `c`, exactly `b_c` parts of `a_c`
//! vertices each, drawn uniformly from `V(G) - v`. Parts whose induced
//! subgraphs keep relative minimum degree `δ + α/2` are *good*; two parts are a
//! *good pair* if each stays good after adding any single vertex of the other.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{data_lines, meets_fraction, Graph, Vertex};

/// Size and count of the parts of one colour.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColourClass {
    pub colour: usize,
    /// `a_c`
    pub size: usize,
    /// `b_c`
    pub count: usize,
}

/// Parameters of a random labelled partition.
#[derive(Clone, Debug, PartialEq)]
pub struct PartitionSpec {
    /// Base piece size `C`; colours range over `C..=4C`.
    pub base: usize,
    /// Size slack `K`.
    pub slack: usize,
    /// Colour classes with at least one part, in increasing colour order.
    pub classes: Vec<ColourClass>,
    /// Target degree fraction `δ`.
    pub delta: f64,
    /// Degree slack `α`.
    pub alpha: f64,
    /// Core tolerance `ε`.
    pub eps: f64,
    /// Greedy tolerance `γ`.
    pub gamma: f64,
    /// Occupancy slack `η`.
    pub eta: f64,
}

impl PartitionSpec {
    /// `Σ a_c b_c`.
    pub fn total_size(&self) -> usize {
        self.classes.iter().map(|c| c.size * c.count).sum()
    }

    pub fn part_count(&self) -> usize {
        self.classes.iter().map(|c| c.count).sum()
    }

    pub fn class(&self, colour: usize) -> Option<&ColourClass> {
        self.classes.iter().find(|c| c.colour == colour)
    }

    /// Threshold fraction `δ + α/2` for good sets.
    pub fn good_fraction(&self) -> f64 {
        self.delta + self.alpha / 2.0
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |x: f64| x > 0.0 && x < 1.0;
        if !unit(self.eps) || !unit(self.gamma) || !unit(self.eta) {
            return Err(Error::Precondition(format!(
                "eps, gamma, eta must lie in (0, 1); got {}, {}, {}",
                self.eps, self.gamma, self.eta
            )));
        }
        let mut last = None;
        for c in &self.classes {
            if c.size == 0 || c.count == 0 {
                return Err(Error::Precondition(format!(
                    "colour {} has a_c = {}, b_c = {}; both must be positive",
                    c.colour, c.size, c.count
                )));
            }
            if last.is_some_and(|l| l >= c.colour) {
                return Err(Error::Precondition(
                    "colours must be strictly increasing".into(),
                ));
            }
            last = Some(c.colour);
        }
        Ok(())
    }
}

/// One part `R_c^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub colour: usize,
    /// `j`, starting from 0 within the colour.
    pub index: usize,
    pub vertices: Vec<Vertex>,
}

/// Parts `R_c^j` of a subset of `V(G) - v` and the vertices left out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledPartition {
    n: usize,
    excluded: Vertex,
    parts: Vec<Part>,
    leftover: Vec<Vertex>,
}

impl LabelledPartition {
    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn part(&self, id: usize) -> &Part {
        &self.parts[id]
    }

    pub fn leftover(&self) -> &[Vertex] {
        &self.leftover
    }

    /// The vertex `v` kept out of every part.
    pub fn excluded(&self) -> Vertex {
        self.excluded
    }

    pub fn host_n(&self) -> usize {
        self.n
    }

    /// Part id containing each host vertex, if any.
    pub fn owner(&self) -> Vec<Option<usize>> {
        let mut owner = vec![None; self.n];
        for (id, p) in self.parts.iter().enumerate() {
            for &u in &p.vertices {
                owner[u] = Some(id);
            }
        }
        owner
    }

    /// Ids of the parts with the given colour, in index order.
    pub fn colour_ids(&self, colour: usize) -> impl Iterator<Item = usize> + '_ {
        self.parts
            .iter()
            .enumerate()
            .filter(move |(_, p)| p.colour == colour)
            .map(|(id, _)| id)
    }

    /// Checks the size profile against `spec`, disjointness and that the
    /// excluded vertex is in no part.
    pub fn validate(&self, spec: &PartitionSpec) -> Result<()> {
        let mut seen = vec![false; self.n];
        seen[self.excluded] = true;
        let expected: usize = spec.part_count();
        if self.parts.len() != expected {
            return Err(Error::SizeMismatch(format!(
                "{} parts, spec asks for {expected}",
                self.parts.len()
            )));
        }
        for p in &self.parts {
            let class = spec
                .class(p.colour)
                .ok_or_else(|| Error::SizeMismatch(format!("colour {} not in spec", p.colour)))?;
            if p.vertices.len() != class.size || p.index >= class.count {
                return Err(Error::SizeMismatch(format!(
                    "part ({}, {}) has {} vertices, spec asks for {}",
                    p.colour,
                    p.index,
                    p.vertices.len(),
                    class.size
                )));
            }
            for &u in &p.vertices {
                if u >= self.n || seen[u] {
                    return Err(Error::SizeMismatch(format!(
                        "vertex {u} reused or excluded"
                    )));
                }
                seen[u] = true;
            }
        }
        Ok(())
    }
}

impl fmt::Display for LabelledPartition {
    /// One `c j : v1 v2 ...` line per part.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.parts {
            let vs: Vec<String> = p.vertices.iter().map(ToString::to_string).collect();
            writeln!(f, "{} {} : {}", p.colour, p.index, vs.join(" "))?;
        }
        Ok(())
    }
}

/// Parses the `c j : v1 v2 ...` part lines written by the `Display` impl.
pub fn parse_parts(s: &str) -> Result<Vec<Part>> {
    let mut parts = Vec::new();
    for (ln, line) in data_lines(s) {
        let (head, tail) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(ln, "expected `c j : vertices`"))?;
        let nums = |text: &str| -> Result<Vec<usize>> {
            text.split_whitespace()
                .map(|w| w.parse().map_err(|e| Error::parse(ln, format!("{e}"))))
                .collect()
        };
        let head = nums(head)?;
        let [colour, index] = head[..] else {
            return Err(Error::parse(ln, "expected colour and index before `:`"));
        };
        parts.push(Part {
            colour,
            index,
            vertices: nums(tail)?,
        });
    }
    Ok(parts)
}

/// Uniform random labelled partition: shuffles `V(G) - v` and cuts consecutive
/// blocks of `a_c` vertices, `b_c` blocks per colour in increasing colour
/// order. The remaining suffix is the leftover.
pub fn sample_partition<R: Rng + ?Sized>(
    g: &Graph,
    spec: &PartitionSpec,
    v: Vertex,
    rng: &mut R,
) -> Result<LabelledPartition> {
    spec.validate()?;
    g.check_vertex(v)?;
    let n = g.n();
    if spec.total_size() >= n {
        return Err(Error::Precondition(format!(
            "parts need {} vertices, host has {n}",
            spec.total_size()
        )));
    }
    let mut perm: Vec<Vertex> = (0..n).filter(|&u| u != v).collect();
    perm.shuffle(rng);
    let mut parts = Vec::with_capacity(spec.part_count());
    let mut at = 0;
    for class in &spec.classes {
        for j in 0..class.count {
            let mut vertices = perm[at..at + class.size].to_vec();
            vertices.sort_unstable();
            parts.push(Part {
                colour: class.colour,
                index: j,
                vertices,
            });
            at += class.size;
        }
    }
    let mut leftover = perm[at..].to_vec();
    leftover.sort_unstable();
    Ok(LabelledPartition {
        n,
        excluded: v,
        parts,
        leftover,
    })
}

/// `δ(G[part]) >= (δ + α/2)|part|`.
pub fn is_good_set(g: &Graph, part: &[Vertex], delta: f64, alpha: f64) -> Result<bool> {
    let d = g.induced_min_degree(part)?;
    Ok(meets_fraction(d, delta + alpha / 2.0, part.len()))
}

/// `δ(G[p + w]) >= (δ + α/2)|p + w|` for every `w ∈ q`, and symmetrically.
pub fn is_good_pair(g: &Graph, p: &[Vertex], q: &[Vertex], delta: f64, alpha: f64) -> Result<bool> {
    if p.is_empty() || q.is_empty() {
        return Err(Error::Degenerate("good pair of an empty set".into()));
    }
    for &u in p.iter().chain(q) {
        g.check_vertex(u)?;
    }
    if p.iter().any(|u| q.contains(u)) {
        return Err(Error::Precondition("good pair of overlapping sets".into()));
    }
    let frac = delta + alpha / 2.0;
    Ok(one_way_good(g, p, q, frac) && one_way_good(g, q, p, frac))
}

/// Every `w ∈ q` keeps `G[p + w]` at relative minimum degree `frac`.
fn one_way_good(g: &Graph, p: &[Vertex], q: &[Vertex], frac: f64) -> bool {
    let inner: Vec<usize> = p.iter().map(|&u| g.degree_into_unchecked(u, p)).collect();
    let base = inner.iter().copied().min().unwrap_or(0);
    let size = p.len() + 1;
    // adding w raises each inner degree by at most one
    if !meets_fraction(base + 1, frac, size) {
        return false;
    }
    q.iter().all(|&w| {
        if !meets_fraction(g.degree_into_unchecked(w, p), frac, size) {
            return false;
        }
        p.iter()
            .zip(&inner)
            .all(|(&u, &d)| meets_fraction(d + usize::from(g.has_edge(u, w)), frac, size))
    })
}

/// Node of the auxiliary graph: a part of the partition, or the root `R_* = {v}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AuxNode {
    Part(usize),
    Root,
}

/// Auxiliary graph on parts, adjacent when they form a good pair.
#[derive(Clone, Debug)]
pub struct AuxGraph {
    nodes: Vec<AuxNode>,
    colour: Vec<Option<usize>>,
    good: Vec<bool>,
    adj: Graph,
    /// `b_c` of the partition the graph was built from.
    class_totals: BTreeMap<usize, usize>,
}

impl AuxGraph {
    pub fn nodes(&self) -> &[AuxNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Adjacency on node indices `0..len()`.
    pub fn graph(&self) -> &Graph {
        &self.adj
    }

    pub fn colour(&self, node: usize) -> Option<usize> {
        self.colour[node]
    }

    pub fn is_good(&self, node: usize) -> bool {
        self.good[node]
    }

    /// Index of `R_*`, if attached.
    pub fn root(&self) -> Option<usize> {
        self.nodes.iter().position(|&x| x == AuxNode::Root)
    }

    /// Index of the node holding part `id`.
    pub fn node_of_part(&self, id: usize) -> Option<usize> {
        self.nodes.iter().position(|&x| x == AuxNode::Part(id))
    }

    pub fn class_totals(&self) -> &BTreeMap<usize, usize> {
        &self.class_totals
    }

    /// Colour classes `V_c` as node indices, in increasing colour order.
    pub fn classes(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut out: BTreeMap<usize, Vec<usize>> =
            self.class_totals.keys().map(|&c| (c, Vec::new())).collect();
        for (i, c) in self.colour.iter().enumerate() {
            if let Some(c) = c {
                out.entry(*c).or_default().push(i);
            }
        }
        out
    }

    /// Sub-graph on the kept node indices.
    fn restrict(&self, keep: &[usize]) -> AuxGraph {
        AuxGraph {
            nodes: keep.iter().map(|&i| self.nodes[i]).collect(),
            colour: keep.iter().map(|&i| self.colour[i]).collect(),
            good: keep.iter().map(|&i| self.good[i]).collect(),
            adj: self.adj.induced(keep),
            class_totals: self.class_totals.clone(),
        }
    }

    /// Checks retention (B1), near-complete cross-class degree (B2) and that
    /// every kept part is good (B3).
    ///
    /// Degrees into a node's own class are compared against the class without
    /// that node.
    pub fn check_core(&self, eps: f64) -> Result<()> {
        let classes = self.classes();
        for (&c, &total) in &self.class_totals {
            let kept = classes.get(&c).map_or(0, Vec::len);
            if !meets_fraction(kept, 1.0 - eps, total) {
                return Err(Error::CoreExtraction(format!(
                    "colour {c} keeps {kept} of {total} parts"
                )));
            }
        }
        for i in 0..self.len() {
            if self.colour[i].is_none() {
                continue;
            }
            if !self.good[i] {
                return Err(Error::CoreExtraction(format!("node {i} is not a good set")));
            }
            if let Some((c, d, need)) = self.worst_class_deficit(i, &classes, eps) {
                return Err(Error::CoreExtraction(format!(
                    "node {i} has {d} neighbours in colour {c}, needs {need:.2}"
                )));
            }
        }
        Ok(())
    }

    /// The class where node `i` falls furthest below the B2 bound, if any.
    fn worst_class_deficit(
        &self,
        i: usize,
        classes: &BTreeMap<usize, Vec<usize>>,
        eps: f64,
    ) -> Option<(usize, usize, f64)> {
        let mut worst: Option<(usize, usize, f64)> = None;
        for (&c, members) in classes {
            let others = members.iter().filter(|&&j| j != i).count();
            let d = members.iter().filter(|&&j| self.adj.has_edge(i, j)).count();
            let need = (1.0 - eps) * others as f64;
            if (d as f64) + 1e-9 < need {
                let gap = need - d as f64;
                if worst.is_none_or(|(_, wd, wn)| gap > wn - wd as f64) {
                    worst = Some((c, d, need));
                }
            }
        }
        worst
    }
}

/// Auxiliary graph on all parts, with an edge for every good pair.
pub fn build_aux_graph(g: &Graph, part: &LabelledPartition, delta: f64, alpha: f64) -> AuxGraph {
    let frac = delta + alpha / 2.0;
    let parts = part.parts();
    let k = parts.len();
    let mut adj = Graph::empty(k);
    for i in 0..k {
        for j in i + 1..k {
            let (p, q) = (&parts[i].vertices, &parts[j].vertices);
            if one_way_good(g, p, q, frac) && one_way_good(g, q, p, frac) {
                adj.add_edge(i, j);
            }
        }
    }
    let mut class_totals = BTreeMap::new();
    for p in parts {
        *class_totals.entry(p.colour).or_insert(0) += 1;
    }
    AuxGraph {
        nodes: (0..k).map(AuxNode::Part).collect(),
        colour: parts.iter().map(|p| Some(p.colour)).collect(),
        good: parts
            .iter()
            .map(|p| {
                meets_fraction(
                    g.induced_min_degree_unchecked(&p.vertices),
                    frac,
                    p.vertices.len(),
                )
            })
            .collect(),
        adj,
        class_totals,
    }
}

/// Prunes `a` to a core satisfying B1–B3.
///
/// Bad sets are dropped first; then the node with the largest cross-class
/// deficit is removed repeatedly until none remains. The result is re-checked
/// and an error is returned if retention fails, so the caller can resample.
pub fn extract_core(a: &AuxGraph, eps: f64) -> Result<AuxGraph> {
    let mut keep: Vec<usize> = (0..a.len())
        .filter(|&i| a.colour[i].is_none() || a.good[i])
        .collect();
    loop {
        let core = a.restrict(&keep);
        let classes = core.classes();
        let mut worst: Option<(usize, f64)> = None;
        for i in 0..core.len() {
            if core.colour[i].is_none() {
                continue;
            }
            if let Some((_, d, need)) = core.worst_class_deficit(i, &classes, eps) {
                let gap = need - d as f64;
                if worst.is_none_or(|(_, w)| gap > w) {
                    worst = Some((i, gap));
                }
            }
        }
        match worst {
            Some((i, _)) => {
                keep.remove(i);
            }
            None => {
                core.check_core(eps)?;
                return Ok(core);
            }
        }
    }
}

/// Adds `R_* = {v}` to `core`, adjacent to every part `R` with
/// `δ(G[R + v]) >= (δ + α/2)|R + v|`.
pub fn attach_root(
    core: &AuxGraph,
    g: &Graph,
    part: &LabelledPartition,
    v: Vertex,
    delta: f64,
    alpha: f64,
) -> Result<AuxGraph> {
    g.check_vertex(v)?;
    if part.owner()[v].is_some() {
        return Err(Error::Precondition(format!(
            "root vertex {v} lies in a part"
        )));
    }
    let frac = delta + alpha / 2.0;
    let k = core.len();
    let mut adj = Graph::empty(k + 1);
    for (i, j) in core.adj.edges() {
        adj.add_edge(i, j);
    }
    for i in 0..k {
        if let AuxNode::Part(id) = core.nodes[i] {
            let r = &part.part(id).vertices;
            if meets_fraction(g.induced_min_degree_with(r, v), frac, r.len() + 1) {
                adj.add_edge(i, k);
            }
        }
    }
    let mut out = core.clone();
    out.nodes.push(AuxNode::Root);
    out.colour.push(None);
    out.good.push(true);
    out.adj = adj;
    Ok(out)
}

/// Per-draw statistics of a partition.
#[derive(Clone, Debug, PartialEq)]
pub struct PartitionStats {
    /// Per part: fraction of `u ∈ V(G)` with `deg(u, R) >= (δ + α/2)|R + u|`.
    pub part_fractions: Vec<f64>,
    /// Per vertex: fraction of parts with `δ(G[R + u]) >= (δ + α/2)|R|`.
    pub vertex_fractions: Vec<f64>,
    /// `X_{R,d}`: per part `R` and colour `d`, the number of `u ∈ 𝓡_d - R`
    /// with `δ(G[R + u]) >= (δ + 2α/3)|R + u|`.
    pub good_pair_counts: Vec<BTreeMap<usize, usize>>,
}

impl PartitionStats {
    pub fn min_part_fraction(&self) -> f64 {
        self.part_fractions.iter().copied().fold(1.0, f64::min)
    }

    pub fn mean_part_fraction(&self) -> f64 {
        mean(&self.part_fractions)
    }

    pub fn min_vertex_fraction(&self) -> f64 {
        self.vertex_fractions.iter().copied().fold(1.0, f64::min)
    }

    pub fn mean_vertex_fraction(&self) -> f64 {
        mean(&self.vertex_fractions)
    }

    /// Flat `key value` table.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("parts {}\n", self.part_fractions.len()));
        out.push_str(&format!("vertices {}\n", self.vertex_fractions.len()));
        out.push_str(&format!(
            "part_fraction_min {:.6}\n",
            self.min_part_fraction()
        ));
        out.push_str(&format!(
            "part_fraction_mean {:.6}\n",
            self.mean_part_fraction()
        ));
        out.push_str(&format!(
            "vertex_fraction_min {:.6}\n",
            self.min_vertex_fraction()
        ));
        out.push_str(&format!(
            "vertex_fraction_mean {:.6}\n",
            self.mean_vertex_fraction()
        ));
        for (i, f) in self.part_fractions.iter().enumerate() {
            out.push_str(&format!("part_fraction.{i} {f:.6}\n"));
        }
        for (i, counts) in self.good_pair_counts.iter().enumerate() {
            for (d, x) in counts {
                out.push_str(&format!("good_pairs.{i}.{d} {x}\n"));
            }
        }
        out
    }
}

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Degree statistics of one partition draw.
pub fn partition_stats(
    g: &Graph,
    part: &LabelledPartition,
    delta: f64,
    alpha: f64,
) -> PartitionStats {
    let n = g.n();
    let frac = delta + alpha / 2.0;
    let pair_frac = delta + 2.0 * alpha / 3.0;
    let owner = part.owner();
    let parts = part.parts();

    let part_fractions = parts
        .iter()
        .map(|p| {
            let r = &p.vertices;
            let ok = (0..n)
                .filter(|&u| {
                    let size =
                        r.len() + usize::from(owner[u].is_none_or(|o| parts[o].vertices != *r));
                    meets_fraction(g.degree_into_unchecked(u, r), frac, size)
                })
                .count();
            ok as f64 / n as f64
        })
        .collect();

    // inner degrees of every part, reused for all u
    let inner: Vec<Vec<usize>> = parts
        .iter()
        .map(|p| {
            p.vertices
                .iter()
                .map(|&x| g.degree_into_unchecked(x, &p.vertices))
                .collect()
        })
        .collect();
    let min_with = |id: usize, u: Vertex| -> usize {
        let r = &parts[id].vertices;
        if owner[u] == Some(id) {
            return inner[id].iter().copied().min().unwrap_or(0);
        }
        let mut m = g.degree_into_unchecked(u, r);
        for (&x, &d) in r.iter().zip(&inner[id]) {
            m = m.min(d + usize::from(g.has_edge(x, u)));
        }
        m
    };

    let vertex_fractions = (0..n)
        .map(|u| {
            if parts.is_empty() {
                return 1.0;
            }
            let ok = (0..parts.len())
                .filter(|&id| meets_fraction(min_with(id, u), frac, parts[id].vertices.len()))
                .count();
            ok as f64 / parts.len() as f64
        })
        .collect();

    let good_pair_counts = (0..parts.len())
        .map(|id| {
            let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
            for (other, p) in parts.iter().enumerate() {
                let entry = counts.entry(p.colour).or_insert(0);
                if other == id {
                    continue;
                }
                let size = parts[id].vertices.len() + 1;
                *entry += p
                    .vertices
                    .iter()
                    .filter(|&&u| meets_fraction(min_with(id, u), pair_frac, size))
                    .count();
            }
            counts
        })
        .collect();

    PartitionStats {
        part_fractions,
        vertex_fractions,
        good_pair_counts,
    }
}
