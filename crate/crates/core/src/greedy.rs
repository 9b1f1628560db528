//! Colour-respecting random greedy embedding of a rooted tree.
//!
//! The root goes to a fixed host vertex. Every other tree vertex, in BFS
//! order, goes to a uniform random unused vertex of its colour class adjacent
//! to its parent's image.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{meets_fraction, Embedding, Graph, Tree, Vertex};

/// Tree whose non-root vertices carry colours `0..k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouredTree {
    tree: Tree,
    colour: Vec<Option<usize>>,
}

impl ColouredTree {
    /// `colour[x]` must be `None` exactly at the root.
    pub fn new(tree: Tree, colour: Vec<Option<usize>>) -> Result<Self> {
        if colour.len() != tree.n() {
            return Err(Error::SizeMismatch(format!(
                "{} colours for {} tree vertices",
                colour.len(),
                tree.n()
            )));
        }
        for (x, c) in colour.iter().enumerate() {
            if (x == tree.root()) != c.is_none() {
                return Err(Error::InvalidTree(format!(
                    "vertex {x}: colour must be absent exactly at the root"
                )));
            }
        }
        Ok(ColouredTree { tree, colour })
    }

    /// Every non-root vertex gets colour 0.
    pub fn monochrome(tree: Tree) -> Self {
        let colour = (0..tree.n())
            .map(|x| (x != tree.root()).then_some(0))
            .collect();
        ColouredTree { tree, colour }
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn colour(&self, x: Vertex) -> Option<usize> {
        self.colour[x]
    }

    /// Number of non-root vertices of each colour `0..k`.
    pub fn loads(&self, k: usize) -> Vec<usize> {
        let mut out = vec![0; k];
        for c in self.colour.iter().flatten() {
            if *c < k {
                out[*c] += 1;
            }
        }
        out
    }
}

/// Checks that `classes` partition `V(host) - v` and the colours fit.
fn check_classes(
    host: &Graph,
    classes: &[Vec<Vertex>],
    ct: &ColouredTree,
    v: Vertex,
) -> Result<()> {
    host.check_vertex(v)?;
    let mut seen = vec![false; host.n()];
    seen[v] = true;
    for class in classes {
        for &u in class {
            host.check_vertex(u)?;
            if std::mem::replace(&mut seen[u], true) {
                return Err(Error::Precondition(format!(
                    "host vertex {u} is the root image or lies in two classes"
                )));
            }
        }
    }
    if let Some(u) = seen.iter().position(|s| !s) {
        return Err(Error::Precondition(format!(
            "host vertex {u} lies in no class"
        )));
    }
    if let Some(c) = ct.colour.iter().flatten().find(|&&c| c >= classes.len()) {
        return Err(Error::Precondition(format!(
            "colour {c} but only {} classes",
            classes.len()
        )));
    }
    Ok(())
}

/// Membership table: `class_of[u]` for every host vertex.
fn class_table(n: usize, classes: &[Vec<Vertex>]) -> Vec<Option<usize>> {
    let mut class_of = vec![None; n];
    for (i, class) in classes.iter().enumerate() {
        for &u in class {
            class_of[u] = Some(i);
        }
    }
    class_of
}

/// Admissible images of `x` given the partial map: unused vertices of the
/// class of `x` adjacent to the image of its parent, ascending.
fn admissible(
    host: &Graph,
    class_of: &[Option<usize>],
    ct: &ColouredTree,
    phi: &Embedding,
    used: &[bool],
    x: Vertex,
) -> Vec<Vertex> {
    let p = ct.tree.parent(x).expect("non-root vertex");
    let py = phi.get(p).expect("parent placed first");
    let c = ct.colour[x];
    host.neighbors(py)
        .iter()
        .copied()
        .filter(|&y| !used[y] && class_of[y] == c)
        .collect()
}

/// One run of the random greedy. Errors with [`Error::AdmissibleEmpty`] as soon
/// as some vertex has nowhere to go.
pub fn greedy_embed<R: Rng + ?Sized>(
    host: &Graph,
    classes: &[Vec<Vertex>],
    ct: &ColouredTree,
    v: Vertex,
    rng: &mut R,
) -> Result<Embedding> {
    check_classes(host, classes, ct, v)?;
    let class_of = class_table(host.n(), classes);
    let t = &ct.tree;
    let mut phi = Embedding::new(t.n());
    let mut used = vec![false; host.n()];
    phi.set(t.root(), v);
    used[v] = true;
    for &x in &t.bfs_order(t.root())[1..] {
        let options = admissible(host, &class_of, ct, &phi, &used, x);
        let &y = options.choose(rng).ok_or(Error::AdmissibleEmpty(x))?;
        phi.set(x, y);
        used[y] = true;
    }
    Ok(phi)
}

/// Exact output law of [`greedy_embed`].
#[derive(Clone, Debug, PartialEq)]
pub struct GreedyDistribution {
    /// Probability of each total map, keyed by the image vector.
    pub outcomes: BTreeMap<Vec<Vertex>, f64>,
    /// Probability that the greedy hits an empty admissible set.
    pub failure_mass: f64,
}

impl GreedyDistribution {
    /// `P[φ(x) = y]` summed over all outcomes.
    pub fn marginal(&self, x: Vertex, y: Vertex) -> f64 {
        self.outcomes
            .iter()
            .filter(|(images, _)| images[x] == y)
            .map(|(_, p)| p)
            .sum()
    }

    /// `max P[φ(x) = y]` over non-root `x` and all `y`.
    pub fn max_marginal(&self, root: Vertex) -> f64 {
        let mut acc: BTreeMap<(Vertex, Vertex), f64> = BTreeMap::new();
        for (images, p) in &self.outcomes {
            for (x, &y) in images.iter().enumerate() {
                if x != root {
                    *acc.entry((x, y)).or_insert(0.0) += p;
                }
            }
        }
        acc.values().copied().fold(0.0, f64::max)
    }
}

/// Enumerates every branch of the greedy's choice tree, visiting at most
/// `budget` branch nodes.
pub fn exact_greedy_distribution(
    host: &Graph,
    classes: &[Vec<Vertex>],
    ct: &ColouredTree,
    v: Vertex,
    budget: u64,
) -> Result<GreedyDistribution> {
    check_classes(host, classes, ct, v)?;
    let t = &ct.tree;
    let mut walk = Walk {
        host,
        class_of: class_table(host.n(), classes),
        ct,
        order: t.bfs_order(t.root()),
        phi: Embedding::new(t.n()),
        used: vec![false; host.n()],
        visited: 0,
        budget,
        out: GreedyDistribution {
            outcomes: BTreeMap::new(),
            failure_mass: 0.0,
        },
    };
    walk.phi.set(t.root(), v);
    walk.used[v] = true;
    walk.step(1, 1.0)?;
    Ok(walk.out)
}

struct Walk<'a> {
    host: &'a Graph,
    class_of: Vec<Option<usize>>,
    ct: &'a ColouredTree,
    order: Vec<Vertex>,
    phi: Embedding,
    used: Vec<bool>,
    visited: u64,
    budget: u64,
    out: GreedyDistribution,
}

impl Walk<'_> {
    fn step(&mut self, depth: usize, mass: f64) -> Result<()> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        if depth == self.order.len() {
            let images = self.phi.images()?;
            *self.out.outcomes.entry(images).or_insert(0.0) += mass;
            return Ok(());
        }
        let x = self.order[depth];
        let options = admissible(self.host, &self.class_of, self.ct, &self.phi, &self.used, x);
        if options.is_empty() {
            self.out.failure_mass += mass;
            return Ok(());
        }
        let share = mass / options.len() as f64;
        for y in options {
            self.phi.set(x, y);
            self.used[y] = true;
            self.step(depth + 1, share)?;
            self.used[y] = false;
        }
        self.phi.unset(x);
        Ok(())
    }
}

/// Checks the hypotheses under which the greedy is `2/(η²n)`-spread:
/// every class has at least `ηn` vertices, every host vertex sees at least
/// `(1-γ)` of every class (not counting itself), and each colour is used by at
/// most `(1-η)|V_i|` tree vertices.
pub fn check_greedy_preconditions(
    host: &Graph,
    classes: &[Vec<Vertex>],
    ct: &ColouredTree,
    v: Vertex,
    eta: f64,
    gamma: f64,
) -> Result<()> {
    check_classes(host, classes, ct, v)?;
    let n = host.n();
    let loads = ct.loads(classes.len());
    for (i, class) in classes.iter().enumerate() {
        if (class.len() as f64) + 1e-9 < eta * n as f64 {
            return Err(Error::DegreeCondition(format!(
                "class {i} has {} vertices, fewer than {eta} n",
                class.len()
            )));
        }
        if !meets_fraction(class.len() - loads[i].min(class.len()), eta, class.len()) {
            return Err(Error::DegreeCondition(format!(
                "colour {i} is used {} times, class holds {}",
                loads[i],
                class.len()
            )));
        }
        for u in 0..n {
            let others = class.len() - usize::from(class.contains(&u));
            let d = host.degree_into_unchecked(u, class);
            if !meets_fraction(d, 1.0 - gamma, others) {
                return Err(Error::DegreeCondition(format!(
                    "host vertex {u} sees {d} of {others} vertices of class {i}"
                )));
            }
        }
    }
    Ok(())
}
