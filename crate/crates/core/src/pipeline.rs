//! End-to-end rooted embedding of a spanning tree.
//!
//! One attempt runs four stages: split the tree and sample a partition of
//! `V(G) - v` into slightly undersized parts; embed the bag-tree into the
//! good-pair graph of the parts; top up each used part from the unused
//! vertices with a random star matching; embed every piece into its bag
//! with its shared vertex pinned. A failing stage discards the attempt and
//! the whole construction is redrawn.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::Rng;

use crate::error::{Error, Result, Stage};
use crate::graph::{frac_ceil, is_valid_embedding, meets_fraction, Embedding, Graph, Tree, Vertex};
use crate::greedy::{greedy_embed, ColouredTree};
use crate::matching::{sample_star_matching, BipartiteGraph};
use crate::partition::{
    attach_root, build_aux_graph, extract_core, sample_partition, AuxNode, ColourClass,
    LabelledPartition, PartitionSpec,
};
use crate::rooted::{embed_rooted_tree_randomized, DEFAULT_BUDGET};
use crate::split::{bag_tree, tree_splitting, BagTree, TreeSplitting};

/// Parameters of the construction.
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineConfig {
    /// Piece size parameter `C`; pieces have `C..=4C` vertices.
    pub c: usize,
    /// Size slack `K`: parts start `K` vertices short of their pieces.
    pub k: usize,
    /// Degree slack `α`; the host must have `δ(G) >= (1/2 + α)n`.
    pub alpha: f64,
    /// Maximum tree degree `Δ`.
    pub max_deg: usize,
    /// Target spread constant, used only when reporting.
    pub c_star: f64,
    /// Core tolerance `ε`.
    pub eps: f64,
    /// Greedy tolerance `γ`.
    pub gamma: f64,
    /// Occupancy slack `η`; `None` means `K / (32 C^3)`.
    pub eta: Option<f64>,
    /// Attempts before giving up.
    pub max_attempts: usize,
    /// Search nodes allowed per piece.
    pub search_budget: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            c: 8,
            k: 2,
            alpha: 0.25,
            max_deg: 3,
            c_star: 100.0,
            eps: 0.15,
            gamma: 0.15,
            eta: None,
            max_attempts: 100,
            search_budget: DEFAULT_BUDGET,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k < 1 || self.c < self.k + 2 {
            return Err(Error::Precondition(format!(
                "need C >= K + 2 and K >= 1, got C = {}, K = {}",
                self.c, self.k
            )));
        }
        if !(self.alpha > 0.0 && self.alpha < 0.5) {
            return Err(Error::Precondition(format!(
                "alpha must lie in (0, 1/2), got {}",
                self.alpha
            )));
        }
        if self.max_deg < 2 {
            return Err(Error::Precondition(format!(
                "max degree must be at least 2, got {}",
                self.max_deg
            )));
        }
        if self.max_attempts == 0 {
            return Err(Error::Precondition("max_attempts must be positive".into()));
        }
        Ok(())
    }

    /// `η`, defaulting to `K / (32 C^3)`.
    pub fn eta(&self) -> f64 {
        self.eta
            .unwrap_or(self.k as f64 / (32.0 * (self.c as f64).powi(3)))
    }

    /// Extra parts per colour: `⌊ηn⌋`, computed in integers for the default `η`.
    pub fn spare_parts(&self, n: usize) -> usize {
        match self.eta {
            None => self.k * n / (32 * self.c.pow(3)),
            Some(eta) => (eta * n as f64 + 1e-9).floor() as usize,
        }
    }
}

/// Splitting, colouring and part profile for one tree.
#[derive(Clone, Debug, PartialEq)]
pub struct Constants {
    pub splitting: TreeSplitting,
    /// Colour of each piece: its number of vertices.
    pub colours: Vec<usize>,
    /// Parts to sample, one class per colour with at least one part.
    pub spec: PartitionSpec,
}

impl Constants {
    /// `a_c = c - 1 - K`.
    pub fn size(&self, c: usize) -> usize {
        c - 1 - self.spec.slack
    }

    /// `b_c`, zero for colours without parts.
    pub fn count(&self, c: usize) -> usize {
        self.spec.class(c).map_or(0, |cl| cl.count)
    }
}

/// Splits `t` with `m = C`, colours pieces by size and sets
/// `a_c = c - 1 - K`, `b_c = |f⁻¹(c)| + ⌊ηn⌋` for `c` in `C..=4C`.
/// Errors unless `Σ a_c b_c < n`.
pub fn derive_constants(t: &Tree, cfg: &PipelineConfig) -> Result<Constants> {
    cfg.validate()?;
    let n = t.n();
    if n < cfg.c {
        return Err(Error::Infeasible(format!(
            "tree on {n} vertices is smaller than the piece size C = {}",
            cfg.c
        )));
    }
    let splitting = tree_splitting(t, cfg.c)?;
    let colours: Vec<usize> = splitting.pieces().iter().map(Vec::len).collect();
    let spare = cfg.spare_parts(n);
    let mut classes = Vec::new();
    for c in cfg.c..=4 * cfg.c {
        let count = colours.iter().filter(|&&x| x == c).count() + spare;
        if count > 0 {
            classes.push(ColourClass {
                colour: c,
                size: c - 1 - cfg.k,
                count,
            });
        }
    }
    let spec = PartitionSpec {
        base: cfg.c,
        slack: cfg.k,
        classes,
        delta: 0.5,
        alpha: cfg.alpha,
        eps: cfg.eps,
        gamma: cfg.gamma,
        eta: cfg.eta(),
    };
    spec.validate()?;
    let total = spec.total_size();
    if total >= n {
        return Err(Error::Infeasible(format!(
            "parts need {total} vertices but the host has {n}"
        )));
    }
    Ok(Constants {
        splitting,
        colours,
        spec,
    })
}

/// Used parts after top-up, indexed by piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjustedPartition {
    /// The root image `v`.
    pub root: Vertex,
    /// Part id `ψ(T_i)` in the sampled partition.
    pub part_ids: Vec<usize>,
    /// Colour `|T_i|` of each bag.
    pub colours: Vec<usize>,
    /// `M_i = R_i ∪ L_i`, ascending.
    pub bags: Vec<Vec<Vertex>>,
    /// `L_i`, the reallocated vertices.
    pub added: Vec<Vec<Vertex>>,
    /// Bag-tree neighbours among the pieces.
    pub links: Vec<Vec<usize>>,
    /// Pieces adjacent to `T_*`.
    pub root_links: Vec<bool>,
}

impl AdjustedPartition {
    /// Checks disjointness and conditions C1 (`|M_i| = c_i - 1`), C2
    /// (`δ(G[M_i]) >= (1/2 + α/3)|M_i|`) and C3 (`δ(G[M_j + u]) >=
    /// (1/2 + α/3)|M_j + u|` for linked bags and every `u ∈ M_i`, with
    /// `M_* = {v}` on the root side).
    pub fn validate(&self, g: &Graph, alpha: f64) -> Result<()> {
        let frac = 0.5 + alpha / 3.0;
        let mut seen = vec![false; g.n()];
        seen[self.root] = true;
        for (i, bag) in self.bags.iter().enumerate() {
            for &u in bag {
                if std::mem::replace(&mut seen[u], true) {
                    return Err(Error::Precondition(format!(
                        "vertex {u} in two bags or the root"
                    )));
                }
            }
            if bag.len() + 1 != self.colours[i] {
                return Err(Error::Precondition(format!(
                    "C1: bag {i} has {} vertices, colour {}",
                    bag.len(),
                    self.colours[i]
                )));
            }
            if !meets_fraction(g.induced_min_degree(bag)?, frac, bag.len()) {
                return Err(Error::DegreeCondition(format!("C2: bag {i}")));
            }
        }
        let ok = |target: &[Vertex], u: Vertex| {
            meets_fraction(g.induced_min_degree_with(target, u), frac, target.len() + 1)
        };
        for (i, bag) in self.bags.iter().enumerate() {
            for &j in &self.links[i] {
                if let Some(u) = bag.iter().find(|&&u| !ok(&self.bags[j], u)) {
                    return Err(Error::DegreeCondition(format!(
                        "C3: bag {j} plus vertex {u} of bag {i}"
                    )));
                }
            }
            if self.root_links[i] && !ok(bag, self.root) {
                return Err(Error::DegreeCondition(format!(
                    "C3: bag {i} plus the root image"
                )));
            }
        }
        Ok(())
    }
}

/// Tops up every used part `R_i = ψ(T_i)` to `|T_i| - 1` vertices.
///
/// `B` is every vertex outside `v` and the used parts, and
/// `|B| = k · #pieces`. `H` joins piece `i` to `b ∈ B` when `G[R + b]` keeps
/// relative minimum degree `1/2 + α/2` for `R = R_i` and the parts of all
/// bag-tree neighbours of `T_i`. A random `K_{1,k}` matching of `H` gives
/// `L_i`.
#[allow(clippy::too_many_arguments)]
pub fn adjust_bags<R: Rng + ?Sized>(
    g: &Graph,
    part: &LabelledPartition,
    bags: &BagTree,
    psi: &[usize],
    colours: &[usize],
    k: usize,
    alpha: f64,
    rng: &mut R,
) -> Result<AdjustedPartition> {
    let l = psi.len();
    let star = bags.star();
    let v = part.excluded();
    let mut links = vec![Vec::new(); l];
    let mut root_links = vec![false; l];
    for i in 0..l {
        match bags.parent(i) {
            Some(p) if p == star => root_links[i] = true,
            Some(p) => {
                links[i].push(p);
                links[p].push(i);
            }
            None => {}
        }
    }
    let mut taken = vec![false; g.n()];
    taken[v] = true;
    for &id in psi {
        for &u in &part.part(id).vertices {
            taken[u] = true;
        }
    }
    let pool: Vec<Vertex> = (0..g.n()).filter(|&u| !taken[u]).collect();
    if pool.len() != k * l {
        return Err(Error::SizeMismatch(format!(
            "{} spare vertices for {l} bags of {k}",
            pool.len()
        )));
    }
    let frac = 0.5 + alpha / 2.0;
    let h = BipartiteGraph::from_fn(l, pool.len(), |i, b| {
        let u = pool[b];
        std::iter::once(i).chain(links[i].iter().copied()).all(|j| {
            let r = &part.part(psi[j]).vertices;
            meets_fraction(g.induced_min_degree_with(r, u), frac, r.len() + 1)
        })
    });
    let star_m = sample_star_matching(&h, k, rng)?;
    let mut out_bags = Vec::with_capacity(l);
    let mut added = Vec::with_capacity(l);
    for (i, &id) in psi.iter().enumerate() {
        let extra: Vec<Vertex> = star_m.leaves(i).iter().map(|&b| pool[b]).collect();
        let mut bag = part.part(id).vertices.clone();
        bag.extend(&extra);
        bag.sort_unstable();
        out_bags.push(bag);
        added.push(extra);
    }
    let adjusted = AdjustedPartition {
        root: v,
        part_ids: psi.to_vec(),
        colours: colours.to_vec(),
        bags: out_bags,
        added,
        links,
        root_links,
    };
    adjusted.validate(g, alpha)?;
    Ok(adjusted)
}

/// Index of the first piece, in `order`, that contains `y`. Indices of `order`
/// past the last piece (such as the `T_*` node) are skipped.
pub fn native_atom(splitting: &TreeSplitting, order: &[usize], y: Vertex) -> Result<usize> {
    if y >= splitting.tree_n() {
        return Err(Error::VertexOutOfRange {
            vertex: y,
            n: splitting.tree_n(),
        });
    }
    order
        .iter()
        .copied()
        .filter(|&i| i < splitting.len())
        .find(|&i| splitting.piece(i).binary_search(&y).is_ok())
        .ok_or_else(|| Error::Precondition(format!("vertex {y} lies in no listed piece")))
}

/// Result of a successful [`run_pipeline`] call.
#[derive(Clone, Debug)]
pub struct PipelineRun {
    pub embedding: Embedding,
    pub tree_root: Vertex,
    pub host_root: Vertex,
    /// Attempts used, including the successful one.
    pub attempts: usize,
    /// Failed attempts by stage.
    pub failures: BTreeMap<Stage, usize>,
    /// Time spent per stage over all attempts.
    pub timings: BTreeMap<Stage, Duration>,
    /// Everything below describes the accepted attempt; absent for trees on
    /// a single vertex.
    pub accepted: Option<Accepted>,
}

/// Intermediate objects of the accepted attempt.
#[derive(Clone, Debug)]
pub struct Accepted {
    pub constants: Constants,
    pub bag_tree: BagTree,
    pub partition: LabelledPartition,
    /// Part id of each piece.
    pub psi: Vec<usize>,
    pub adjusted: AdjustedPartition,
}

impl PipelineRun {
    /// Flat `key value` record.
    pub fn metadata(&self, seed: Option<u64>) -> String {
        let mut out = String::new();
        if let Some(s) = seed {
            let _ = writeln!(out, "seed {s}");
        }
        let _ = writeln!(out, "tree_root {}", self.tree_root);
        let _ = writeln!(out, "host_root {}", self.host_root);
        let _ = writeln!(out, "attempts {}", self.attempts);
        for stage in Stage::ALL {
            let _ = writeln!(
                out,
                "failures.{stage} {}",
                self.failures.get(&stage).unwrap_or(&0)
            );
        }
        for stage in Stage::ALL {
            let t = self.timings.get(&stage).copied().unwrap_or_default();
            let _ = writeln!(out, "time_us.{stage} {}", t.as_micros());
        }
        if let Some(acc) = &self.accepted {
            let _ = writeln!(out, "pieces {}", acc.constants.splitting.len());
            let _ = writeln!(out, "parts {}", acc.partition.parts().len());
            let _ = writeln!(out, "bag_tree_max_degree {}", acc.bag_tree.max_degree());
        }
        out
    }
}

/// Random embedding of `t` into `g` with `troot -> v`.
///
/// Requires `|T| = |G|`, `Δ(T) <= cfg.max_deg` and `δ(G) >= (1/2 + α)n`.
/// Attempts that fail at any stage are discarded and redrawn from scratch, up
/// to `cfg.max_attempts` times.
pub fn run_pipeline<R: Rng + ?Sized>(
    g: &Graph,
    t: &Tree,
    troot: Vertex,
    v: Vertex,
    cfg: &PipelineConfig,
    rng: &mut R,
) -> Result<PipelineRun> {
    cfg.validate()?;
    let n = g.n();
    if t.n() != n {
        return Err(Error::SizeMismatch(format!(
            "tree has {} vertices, host has {n}",
            t.n()
        )));
    }
    g.check_vertex(v)?;
    if troot >= n {
        return Err(Error::VertexOutOfRange { vertex: troot, n });
    }
    if t.max_degree() > cfg.max_deg {
        return Err(Error::Precondition(format!(
            "tree has maximum degree {}, bound is {}",
            t.max_degree(),
            cfg.max_deg
        )));
    }
    let mut run = PipelineRun {
        embedding: Embedding::new(n),
        tree_root: troot,
        host_root: v,
        attempts: 0,
        failures: BTreeMap::new(),
        timings: BTreeMap::new(),
        accepted: None,
    };
    if n == 1 {
        run.embedding.set(troot, v);
        run.attempts = 1;
        return Ok(run);
    }
    let need = frac_ceil(0.5 + cfg.alpha, n);
    let have = g.min_degree()?;
    if have < need {
        return Err(Error::DegreeCondition(format!(
            "host minimum degree {have} is below (1/2 + {})n = {need}",
            cfg.alpha
        )));
    }
    let rooted = t.rerooted(troot);
    let constants = derive_constants(&rooted, cfg)?;
    let bags = bag_tree(&constants.splitting, troot)?;

    let mut last = None;
    while run.attempts < cfg.max_attempts {
        run.attempts += 1;
        match attempt(g, &rooted, v, cfg, &constants, &bags, &mut run.timings, rng) {
            Ok((embedding, partition, psi, adjusted)) => {
                run.embedding = embedding;
                run.accepted = Some(Accepted {
                    constants,
                    bag_tree: bags,
                    partition,
                    psi,
                    adjusted,
                });
                return Ok(run);
            }
            Err((Stage::Partition, e)) => return Err(e),
            Err((stage, e)) => {
                *run.failures.entry(stage).or_insert(0) += 1;
                last = Some((stage, e));
            }
        }
    }
    let (stage, e) = last.expect("at least one attempt");
    let counts: Vec<String> = run
        .failures
        .iter()
        .map(|(s, c)| format!("{s}={c}"))
        .collect();
    Err(Error::ResampleExhausted {
        stage,
        attempts: run.attempts,
        last: format!("{e}; failures by stage: {}", counts.join(", ")),
    })
}

type Attempt = (Embedding, LabelledPartition, Vec<usize>, AdjustedPartition);

#[allow(clippy::too_many_arguments)]
fn attempt<R: Rng + ?Sized>(
    g: &Graph,
    t: &Tree,
    v: Vertex,
    cfg: &PipelineConfig,
    constants: &Constants,
    bags: &BagTree,
    timings: &mut BTreeMap<Stage, Duration>,
    rng: &mut R,
) -> std::result::Result<Attempt, (Stage, Error)> {
    let spec = &constants.spec;
    let mut clock = Clock::new(timings);

    // partition, good-pair graph, core and root
    let part = sample_partition(g, spec, v, rng).map_err(|e| (Stage::Partition, e))?;
    clock.lap(Stage::Partition);
    let aux = build_aux_graph(g, &part, spec.delta, spec.alpha);
    let core = extract_core(&aux, spec.eps).map_err(|e| (Stage::Core, e))?;
    let core =
        attach_root(&core, g, &part, v, spec.delta, spec.alpha).map_err(|e| (Stage::Core, e))?;
    clock.lap(Stage::Core);

    // bag-tree into the core, colour by colour
    let class_map = core.classes();
    let colour_index: BTreeMap<usize, usize> =
        class_map.keys().enumerate().map(|(i, &c)| (c, i)).collect();
    let classes: Vec<Vec<usize>> = class_map.into_values().collect();
    let star = bags.star();
    let bag_colours: Vec<Option<usize>> = (0..bags.len())
        .map(|i| (i != star).then(|| colour_index[&constants.colours[i]]))
        .collect();
    let ct =
        ColouredTree::new(bags.as_tree(), bag_colours).map_err(|e| (Stage::BagEmbedding, e))?;
    let root_node = core.root().expect("root attached");
    let psi_nodes = greedy_embed(core.graph(), &classes, &ct, root_node, rng)
        .map_err(|e| (Stage::BagEmbedding, e))?;
    let psi: Vec<usize> = (0..star)
        .map(|i| match core.nodes()[psi_nodes.get(i).expect("total")] {
            AuxNode::Part(id) => id,
            AuxNode::Root => unreachable!("only T_* maps to the root"),
        })
        .collect();
    clock.lap(Stage::BagEmbedding);

    let adjusted = adjust_bags(
        g,
        &part,
        bags,
        &psi,
        &constants.colours,
        cfg.k,
        cfg.alpha,
        rng,
    )
    .map_err(|e| (Stage::Reallocation, e))?;
    clock.lap(Stage::Reallocation);

    // pieces in bag-tree order, each pinned at its shared vertex
    let splitting = &constants.splitting;
    let mut phi = Embedding::new(t.n());
    phi.set(bags.star_vertex(), v);
    for &i in &bags.order()[1..] {
        let piece = splitting.piece(i);
        let s = bags.shared(i).expect("piece has a parent");
        let placed: Vec<Vertex> = piece
            .iter()
            .copied()
            .filter(|&x| phi.get(x).is_some())
            .collect();
        if placed != [s] {
            return Err((
                Stage::SubtreeEmbedding,
                Error::InvalidSplitting(format!("piece {i} meets earlier pieces in {placed:?}")),
            ));
        }
        let pos = piece
            .iter()
            .position(|&x| x == s)
            .expect("shared vertex in piece");
        let sub = t
            .induced_subtree(piece, pos)
            .map_err(|e| (Stage::SubtreeEmbedding, e))?;
        let local = embed_rooted_tree_randomized(
            g,
            &adjusted.bags[i],
            &sub,
            pos,
            phi.get(s).expect("placed"),
            cfg.search_budget,
            rng,
        )
        .map_err(|e| (Stage::SubtreeEmbedding, e))?;
        for (j, &x) in piece.iter().enumerate() {
            if x != s {
                phi.set(x, local.get(j).expect("total"));
            }
        }
    }
    clock.lap(Stage::SubtreeEmbedding);

    let valid = is_valid_embedding(t, g, &phi).map_err(|e| (Stage::Validation, e))?;
    if !valid || phi.get(bags.star_vertex()) != Some(v) {
        return Err((
            Stage::Validation,
            Error::Precondition("assembled map is not an embedding".into()),
        ));
    }
    clock.lap(Stage::Validation);
    Ok((phi, part, psi, adjusted))
}

struct Clock<'a> {
    timings: &'a mut BTreeMap<Stage, Duration>,
    at: Instant,
}

impl<'a> Clock<'a> {
    fn new(timings: &'a mut BTreeMap<Stage, Duration>) -> Self {
        Clock {
            timings,
            at: Instant::now(),
        }
    }

    fn lap(&mut self, stage: Stage) {
        let now = Instant::now();
        *self.timings.entry(stage).or_default() += now - self.at;
        self.at = now;
    }
}

/// Unrooted embedding: the tree's stored root goes to a uniform random host
/// vertex, then [`run_pipeline`] completes the map.
pub fn embed_unrooted<R: Rng + ?Sized>(
    g: &Graph,
    t: &Tree,
    cfg: &PipelineConfig,
    rng: &mut R,
) -> Result<PipelineRun> {
    if g.n() == 0 {
        return Err(Error::Degenerate("empty host".into()));
    }
    let v = rng.gen_range(0..g.n());
    run_pipeline(g, t, t.root(), v, cfg, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{gen_bounded_tree, rng_from_seed};

    #[test]
    fn colour_profile_formula() {
        let t = Tree::path(40);
        let cfg = PipelineConfig::default();
        let k = derive_constants(&t, &cfg).unwrap();
        assert_eq!(k.size(cfg.c + 5), cfg.c + 4 - cfg.k);
        for c in cfg.c..=4 * cfg.c {
            let pieces = k.colours.iter().filter(|&&x| x == c).count();
            assert_eq!(k.count(c), pieces + cfg.spare_parts(40));
        }
        assert!(k.spec.total_size() < 40);
        // 2 * 40 / (32 * 512) rounds down to zero
        assert_eq!(cfg.spare_parts(40), 0);
    }

    #[test]
    fn spare_parts_with_eta_override() {
        let cfg = PipelineConfig {
            eta: Some(0.001),
            ..PipelineConfig::default()
        };
        assert_eq!(cfg.spare_parts(5000), 5);
        assert_eq!(PipelineConfig::default().spare_parts(20_000), 2);
    }

    #[test]
    fn budget_violation_is_infeasible() {
        let cfg = PipelineConfig {
            eta: Some(0.05),
            ..PipelineConfig::default()
        };
        assert!(matches!(
            derive_constants(&Tree::path(40), &cfg),
            Err(Error::Infeasible(_))
        ));
        assert!(derive_constants(&Tree::path(5), &PipelineConfig::default()).is_err());
    }

    #[test]
    fn single_vertex_tree() {
        let run = run_pipeline(
            &Graph::empty(1),
            &Tree::single(),
            0,
            0,
            &PipelineConfig::default(),
            &mut rng_from_seed(0),
        )
        .unwrap();
        assert_eq!(run.embedding.images().unwrap(), vec![0]);
    }

    #[test]
    fn clique_host_always_succeeds_first_time() {
        let g = Graph::complete(40);
        let mut rng = rng_from_seed(3);
        for _ in 0..10 {
            let t = gen_bounded_tree(40, 3, &mut rng).unwrap();
            let run = run_pipeline(&g, &t, 5, 17, &PipelineConfig::default(), &mut rng).unwrap();
            assert_eq!(run.attempts, 1);
            assert_eq!(run.embedding.get(5), Some(17));
            assert!(is_valid_embedding(&t, &g, &run.embedding).unwrap());
            let acc = run.accepted.unwrap();
            acc.adjusted.validate(&g, 0.25).unwrap();
        }
    }

    #[test]
    fn degree_gate_refuses_sparse_hosts() {
        let g = Graph::cycle(40);
        let err = run_pipeline(
            &g,
            &Tree::path(40),
            0,
            0,
            &PipelineConfig::default(),
            &mut rng_from_seed(1),
        )
        .unwrap_err();
        assert!(matches!(err, Error::DegreeCondition(_)));
    }

    #[test]
    fn native_atom_examples() {
        let s = TreeSplitting::from_pieces(7, vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 6]]);
        assert_eq!(native_atom(&s, &[0, 1, 2], 1).unwrap(), 0);
        assert_eq!(native_atom(&s, &[2, 1, 0], 2).unwrap(), 1);
        assert_eq!(native_atom(&s, &[3, 1, 2, 0], 4).unwrap(), 1);
        assert!(native_atom(&s, &[0], 9).is_err());
    }
}
