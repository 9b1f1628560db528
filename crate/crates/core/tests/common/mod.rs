//! Independent oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use treespread::greedy::ColouredTree;
use treespread::matching::BipartiteGraph;
use treespread::{Graph, Tree, Vertex};

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Every perfect matching of `h`, as `m[a] = b`.
pub fn all_perfect_matchings(h: &BipartiteGraph) -> Vec<Vec<usize>> {
    permutations(h.left_len())
        .into_iter()
        .filter(|m| m.iter().enumerate().all(|(a, &b)| h.has_edge(a, b)))
        .collect()
}

/// Exact output law of the sequential matching sampler (random left order,
/// uniform available neighbour, restart on a dead end), by walking its whole
/// choice tree and conditioning on completion.
pub fn matching_choice_tree(h: &BipartiteGraph) -> BTreeMap<Vec<usize>, f64> {
    fn walk(
        h: &BipartiteGraph,
        order: &[usize],
        depth: usize,
        p: f64,
        mate: &mut Vec<Option<usize>>,
        taken: &mut Vec<bool>,
        out: &mut BTreeMap<Vec<usize>, f64>,
    ) {
        if depth == order.len() {
            let m: Vec<usize> = mate.iter().map(|b| b.unwrap()).collect();
            *out.entry(m).or_insert(0.0) += p;
            return;
        }
        let a = order[depth];
        let avail: Vec<usize> = h
            .left_neighbors(a)
            .iter()
            .copied()
            .filter(|&b| !taken[b])
            .collect();
        for &b in &avail {
            taken[b] = true;
            mate[a] = Some(b);
            walk(
                h,
                order,
                depth + 1,
                p / avail.len() as f64,
                mate,
                taken,
                out,
            );
            mate[a] = None;
            taken[b] = false;
        }
    }
    let n = h.left_len();
    let orders = permutations(n);
    let mut out = BTreeMap::new();
    for order in &orders {
        walk(
            h,
            order,
            0,
            1.0 / orders.len() as f64,
            &mut vec![None; n],
            &mut vec![false; n],
            &mut out,
        );
    }
    let total: f64 = out.values().sum();
    out.values_mut().for_each(|p| *p /= total);
    out
}

/// Whether `t` embeds onto exactly `{v} ∪ hostset` with `root -> v`, by a
/// subset dynamic programme over (tree vertex, host vertex, host set).
/// Sizes up to about 14.
pub fn rooted_embedding_exists(
    g: &Graph,
    hostset: &[Vertex],
    t: &Tree,
    root: Vertex,
    v: Vertex,
) -> bool {
    let k = t.n();
    assert_eq!(hostset.len() + 1, k);
    let local: Vec<Vertex> = std::iter::once(v).chain(hostset.iter().copied()).collect();
    let adj: Vec<u32> = (0..k)
        .map(|i| {
            (0..k)
                .filter(|&j| g.has_edge(local[i], local[j]))
                .fold(0, |m, j| m | 1 << j)
        })
        .collect();
    let rt = t.rerooted(root);
    let mut size = vec![1usize; k];
    for &x in rt.bfs_order(root).iter().rev() {
        if let Some(p) = rt.parent(x) {
            size[p] += size[x];
        }
    }
    let mut dp = Dp {
        rt: &rt,
        adj,
        size,
        memo: HashMap::new(),
    };
    let all = (1u32 << k) - 1;
    dp.fits(root, 0, all)
}

struct Dp<'a> {
    rt: &'a Tree,
    adj: Vec<u32>,
    size: Vec<usize>,
    memo: HashMap<(Vertex, usize, u32), bool>,
}

impl Dp<'_> {
    /// Subtree of `x` onto exactly `set`, with `x -> y` (`y ∈ set`).
    fn fits(&mut self, x: Vertex, y: usize, set: u32) -> bool {
        if let Some(&r) = self.memo.get(&(x, y, set)) {
            return r;
        }
        let kids = self.rt.children(x).to_vec();
        let r = self.children_fit(&kids, y, set & !(1 << y));
        self.memo.insert((x, y, set), r);
        r
    }

    /// Children `kids` of a vertex placed at `y` onto exactly `rest`.
    fn children_fit(&mut self, kids: &[Vertex], y: usize, rest: u32) -> bool {
        let Some((&c, others)) = kids.split_first() else {
            return rest == 0;
        };
        let need = self.size[c];
        // enumerate submasks of rest with popcount need
        let mut sub = rest;
        loop {
            if sub.count_ones() as usize == need {
                let mut starts = sub & self.adj[y];
                while starts != 0 {
                    let z = starts.trailing_zeros() as usize;
                    starts &= starts - 1;
                    if self.fits(c, z, sub) && self.children_fit(others, y, rest & !sub) {
                        return true;
                    }
                }
            }
            if sub == 0 {
                return false;
            }
            sub = (sub - 1) & rest;
        }
    }
}

/// Three-sigma half width for a proportion `p` estimated from `n` draws.
pub fn three_sigma(p: f64, n: u64) -> f64 {
    3.0 * (p * (1.0 - p) / n as f64).sqrt()
}

/// Tree on `n` vertices from a parent list, rooted at 0.
pub fn tree(parents: &[Option<usize>]) -> Tree {
    Tree::from_parents(parents.to_vec()).unwrap()
}

/// Classes as a host-vertex lookup.
pub fn class_of(n: usize, classes: &[Vec<Vertex>]) -> Vec<Option<usize>> {
    let mut out = vec![None; n];
    for (i, c) in classes.iter().enumerate() {
        for &u in c {
            out[u] = Some(i);
        }
    }
    out
}

/// Uniform law over all colour-respecting embeddings with the root pinned,
/// from the brute-force enumerator.
pub fn uniform_over_respecting(
    host: &Graph,
    classes: &[Vec<Vertex>],
    ct: &ColouredTree,
    v: Vertex,
) -> BTreeMap<Vec<Vertex>, f64> {
    let t = ct.tree();
    let lookup = class_of(host.n(), classes);
    let all = brute_force_injections(host, t);
    let ok: Vec<Vec<Vertex>> = all
        .into_iter()
        .filter(|im| im[t.root()] == v)
        .filter(|im| (0..t.n()).all(|x| ct.colour(x).is_none() || lookup[im[x]] == ct.colour(x)))
        .collect();
    let p = 1.0 / ok.len() as f64;
    ok.into_iter().map(|im| (im, p)).collect()
}

pub fn brute_force_injections(host: &Graph, t: &Tree) -> Vec<Vec<Vertex>> {
    fn go(
        host: &Graph,
        t: &Tree,
        x: usize,
        im: &mut Vec<Vertex>,
        used: &mut [bool],
        out: &mut Vec<Vec<Vertex>>,
    ) {
        if x == t.n() {
            if t.edges().iter().all(|&(a, b)| host.has_edge(im[a], im[b])) {
                out.push(im.clone());
            }
            return;
        }
        for y in 0..host.n() {
            if !used[y] {
                used[y] = true;
                im.push(y);
                go(host, t, x + 1, im, used, out);
                im.pop();
                used[y] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(
        host,
        t,
        0,
        &mut Vec::new(),
        &mut vec![false; host.n()],
        &mut out,
    );
    out
}

pub fn assert_same_law(a: &BTreeMap<Vec<Vertex>, f64>, b: &BTreeMap<Vec<Vertex>, f64>) {
    assert_eq!(a.keys().collect::<Vec<_>>(), b.keys().collect::<Vec<_>>());
    for (k, p) in a {
        assert!((p - b[k]).abs() < 1e-12, "{k:?}: {p} vs {}", b[k]);
    }
}

/// Symmetric instances whose greedy law is uniform over respecting embeddings.
pub fn symmetric_instances() -> Vec<(Graph, Vec<Vec<Vertex>>, ColouredTree, Vertex)> {
    let star3 = ColouredTree::monochrome(Tree::star(3));
    let star2 = ColouredTree::monochrome(Tree::star(2));
    let p3 = ColouredTree::monochrome(Tree::path(3));
    let p4 = ColouredTree::monochrome(Tree::path(4));
    let p3_mid = ColouredTree::monochrome(Tree::path(3).rerooted(1));
    let two = ColouredTree::new(Tree::star(2), vec![None, Some(0), Some(1)]).unwrap();
    let c4 = Graph::cycle(4);
    vec![
        (Graph::complete(5), vec![vec![1, 2, 3, 4]], star3, 0),
        (Graph::complete(3), vec![vec![1, 2]], star2, 0),
        (c4, vec![vec![1, 2, 3]], p3, 0),
        (Graph::complete(4), vec![vec![1, 2, 3]], p4, 0),
        (Graph::complete(4), vec![vec![0, 2, 3]], p3_mid, 1),
        (Graph::complete(5), vec![vec![1, 2], vec![3, 4]], two, 0),
    ]
}
