//! Exact embedding of a small tree onto a small vertex set with a pinned root.
//!
//! Backtracking over tree vertices in BFS order from the root. Each placement
//! is followed by a forward check: every placed vertex with unplaced children
//! must still have at least that many free neighbours in the host set.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Embedding, Graph, Tree, Vertex};

/// Default cap on search nodes per call.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Embeds `t` onto `hostset + v` with `root -> v`, trying candidates in
/// decreasing order of degree inside the host set.
///
/// Returns [`Error::NotFound`] if no such embedding exists and
/// [`Error::BudgetExceeded`] if the search gives up first.
pub fn embed_rooted_tree(
    g: &Graph,
    hostset: &[Vertex],
    t: &Tree,
    root: Vertex,
    v: Vertex,
    budget: u64,
) -> Result<Embedding> {
    Search::new(g, hostset, t, root, v, budget)?.run(None::<&mut crate::SeededRng>)
}

/// As [`embed_rooted_tree`], with children and candidates visited in random
/// order.
pub fn embed_rooted_tree_randomized<R: Rng + ?Sized>(
    g: &Graph,
    hostset: &[Vertex],
    t: &Tree,
    root: Vertex,
    v: Vertex,
    budget: u64,
    rng: &mut R,
) -> Result<Embedding> {
    Search::new(g, hostset, t, root, v, budget)?.run(Some(rng))
}

struct Search<'a> {
    t: &'a Tree,
    root: Vertex,
    /// Host vertices by local index; index 0 is `v`.
    local: Vec<Vertex>,
    nbrs: Vec<Vec<usize>>,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(
        g: &Graph,
        hostset: &[Vertex],
        t: &'a Tree,
        root: Vertex,
        v: Vertex,
        budget: u64,
    ) -> Result<Self> {
        g.check_vertex(v)?;
        if root >= t.n() {
            return Err(Error::VertexOutOfRange {
                vertex: root,
                n: t.n(),
            });
        }
        if hostset.len() + 1 != t.n() {
            return Err(Error::SizeMismatch(format!(
                "host set of {} vertices plus root for a tree on {}",
                hostset.len(),
                t.n()
            )));
        }
        let mut local = Vec::with_capacity(t.n());
        local.push(v);
        let mut seen = vec![false; g.n()];
        seen[v] = true;
        for &u in hostset {
            g.check_vertex(u)?;
            if std::mem::replace(&mut seen[u], true) {
                return Err(Error::Precondition(format!(
                    "host vertex {u} repeated or equal to the root image"
                )));
            }
            local.push(u);
        }
        let k = local.len();
        let nbrs = (0..k)
            .map(|i| (0..k).filter(|&j| g.has_edge(local[i], local[j])).collect())
            .collect();
        Ok(Search {
            t,
            root,
            local,
            nbrs,
            budget,
        })
    }

    fn run<R: Rng + ?Sized>(self, mut rng: Option<&mut R>) -> Result<Embedding> {
        let t = self.t;
        let k = self.local.len();
        let rooted = t.rerooted(self.root);
        // BFS order with optionally shuffled children
        let mut order = vec![self.root];
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            let mut kids = rooted.children(x).to_vec();
            if let Some(r) = rng.as_deref_mut() {
                kids.shuffle(r);
            }
            order.extend(kids);
        }
        let parent: Vec<Option<Vertex>> = (0..k).map(|x| rooted.parent(x)).collect();
        let kids: Vec<usize> = (0..k).map(|x| rooted.children(x).len()).collect();

        let mut state = State {
            img: vec![usize::MAX; k],
            free: vec![true; k],
            free_nbrs: self.nbrs.iter().map(Vec::len).collect(),
            pending: vec![0; k],
            nodes: 0,
        };
        state.place(&self, self.root, 0, kids[self.root]);
        if !state.consistent(&order[..1]) {
            return Err(Error::NotFound);
        }
        let mut rng = rng;
        if self.extend(&order, &parent, &kids, 1, &mut state, &mut rng)? {
            let mut phi = Embedding::new(k);
            for x in 0..k {
                phi.set(x, self.local[state.img[x]]);
            }
            Ok(phi)
        } else {
            Err(Error::NotFound)
        }
    }

    fn extend<R: Rng + ?Sized>(
        &self,
        order: &[Vertex],
        parent: &[Option<Vertex>],
        kids: &[usize],
        depth: usize,
        st: &mut State,
        rng: &mut Option<&mut R>,
    ) -> Result<bool> {
        if depth == order.len() {
            return Ok(true);
        }
        let x = order[depth];
        let p = parent[x].expect("non-root vertex");
        let py = st.img[p];
        let mut cands: Vec<usize> = self.nbrs[py]
            .iter()
            .copied()
            .filter(|&j| st.free[j])
            .collect();
        match rng.as_deref_mut() {
            Some(r) => cands.shuffle(r),
            None => cands.sort_by_key(|&j| std::cmp::Reverse(self.nbrs[j].len())),
        }
        for y in cands {
            st.nodes += 1;
            if st.nodes > self.budget {
                return Err(Error::BudgetExceeded(self.budget));
            }
            st.pending[p] -= 1;
            st.place(self, x, y, kids[x]);
            if st.consistent(&order[..=depth])
                && self.extend(order, parent, kids, depth + 1, st, rng)?
            {
                return Ok(true);
            }
            st.unplace(self, x, y);
            st.pending[p] += 1;
        }
        Ok(false)
    }
}

struct State {
    img: Vec<usize>,
    free: Vec<bool>,
    free_nbrs: Vec<usize>,
    pending: Vec<usize>,
    nodes: u64,
}

impl State {
    fn place(&mut self, s: &Search, x: Vertex, y: usize, children: usize) {
        self.img[x] = y;
        self.free[y] = false;
        self.pending[x] = children;
        for &j in &s.nbrs[y] {
            self.free_nbrs[j] -= 1;
        }
    }

    fn unplace(&mut self, s: &Search, x: Vertex, y: usize) {
        self.img[x] = usize::MAX;
        self.free[y] = true;
        self.pending[x] = 0;
        for &j in &s.nbrs[y] {
            self.free_nbrs[j] += 1;
        }
    }

    /// Every placed vertex can still host its unplaced children.
    fn consistent(&self, placed: &[Vertex]) -> bool {
        placed
            .iter()
            .all(|&x| self.pending[x] <= self.free_nbrs[self.img[x]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{is_valid_embedding, rng_from_seed};

    #[test]
    fn single_vertex() {
        let g = Graph::complete(3);
        let phi = embed_rooted_tree(&g, &[], &Tree::single(), 0, 2, 100).unwrap();
        assert_eq!(phi.images().unwrap(), vec![2]);
    }

    #[test]
    fn forced_path() {
        // host path 0-1-2, tree path rooted at its end, v = 0
        let g = Graph::path(3);
        let phi = embed_rooted_tree(&g, &[1, 2], &Tree::path(3), 0, 0, 100).unwrap();
        assert_eq!(phi.images().unwrap(), vec![0, 1, 2]);
        let phi = embed_rooted_tree(&g, &[2, 1], &Tree::path(3), 2, 0, 100).unwrap();
        assert_eq!(phi.images().unwrap(), vec![2, 1, 0]);
    }

    #[test]
    fn impossible_star_is_not_found() {
        // star centre pinned to a path endpoint
        let g = Graph::path(4);
        let err = embed_rooted_tree(&g, &[1, 2, 3], &Tree::star(3), 0, 0, 100).unwrap_err();
        assert!(matches!(err, Error::NotFound));
    }

    #[test]
    fn budget_is_reported() {
        let g = Graph::cycle(12);
        let hostset: Vec<Vertex> = (1..12).collect();
        let err = embed_rooted_tree(&g, &hostset, &Tree::star(11), 0, 0, 3).unwrap_err();
        // forward checking rejects the root outright
        assert!(matches!(err, Error::NotFound));
        let t = gen_tree();
        assert!(matches!(
            embed_rooted_tree(&Graph::complete(12), &hostset, &t, 0, 0, 1),
            Err(Error::BudgetExceeded(1))
        ));
    }

    fn gen_tree() -> Tree {
        crate::gen_bounded_tree(12, 3, &mut rng_from_seed(5)).unwrap()
    }

    #[test]
    fn sound_on_dense_bags() {
        let mut rng = rng_from_seed(7);
        for _ in 0..50 {
            let g = crate::gen_dirac_graph(20, 0.5, 0.25, &mut rng).unwrap();
            let t = crate::gen_bounded_tree(20, 3, &mut rng).unwrap();
            let hostset: Vec<Vertex> = (1..20).collect();
            let phi =
                embed_rooted_tree_randomized(&g, &hostset, &t, 3, 0, DEFAULT_BUDGET, &mut rng)
                    .unwrap();
            assert!(is_valid_embedding(&t, &g, &phi).unwrap());
            assert_eq!(phi.get(3), Some(0));
        }
    }

    #[test]
    fn randomized_is_seed_deterministic() {
        let g = Graph::complete(8);
        let t = Tree::star(7);
        let hostset: Vec<Vertex> = (1..8).collect();
        let a = embed_rooted_tree_randomized(&g, &hostset, &t, 0, 0, 1000, &mut rng_from_seed(3))
            .unwrap();
        let b = embed_rooted_tree_randomized(&g, &hostset, &t, 0, 0, 1000, &mut rng_from_seed(3))
            .unwrap();
        assert_eq!(a, b);
    }
}
