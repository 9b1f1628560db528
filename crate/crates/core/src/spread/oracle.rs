//! Exhaustive oracles: all embeddings of a tree, and exact probabilities for
//! uniform permutations.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Embedding, Graph, Tree, Vertex};

/// Every embedding of `t` into `g` (injective, edge-preserving), in
/// lexicographic order of image vectors. Errors once more than `budget` are
/// found.
pub fn brute_force_embeddings(g: &Graph, t: &Tree, budget: usize) -> Result<Vec<Embedding>> {
    let order = t.bfs_order(t.root());
    let mut out = Vec::new();
    let mut img = vec![usize::MAX; t.n()];
    let mut used = vec![false; g.n()];
    for y in 0..g.n() {
        img[order[0]] = y;
        used[y] = true;
        extend(g, t, &order, 1, &mut img, &mut used, &mut out, budget)?;
        used[y] = false;
    }
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    t: &Tree,
    order: &[Vertex],
    depth: usize,
    img: &mut [usize],
    used: &mut [bool],
    out: &mut Vec<Embedding>,
    budget: usize,
) -> Result<()> {
    if depth == order.len() {
        if out.len() == budget {
            return Err(Error::BudgetExceeded(budget as u64));
        }
        out.push(Embedding::from_total(img.to_vec()));
        return Ok(());
    }
    let x = order[depth];
    let py = img[t.parent(x).expect("non-root")];
    for &y in g.neighbors(py) {
        if !used[y] {
            img[x] = y;
            used[y] = true;
            extend(g, t, order, depth + 1, img, used, out, budget)?;
            used[y] = false;
        }
    }
    Ok(())
}

/// Largest `n` handled by [`perm_spread_exact`].
pub const EXACT_PERM_MAX: usize = 8;

fn check_perm_query(n: usize, xs: &[usize], ls: &[Vec<usize>]) -> Result<()> {
    if xs.len() != ls.len() {
        return Err(Error::SizeMismatch(format!(
            "{} positions, {} target sets",
            xs.len(),
            ls.len()
        )));
    }
    let mut seen = vec![false; n];
    for &x in xs {
        if x >= n || std::mem::replace(&mut seen[x], true) {
            return Err(Error::Precondition(format!(
                "position {x} repeated or out of range"
            )));
        }
    }
    if let Some(&y) = ls.iter().flatten().find(|&&y| y >= n) {
        return Err(Error::VertexOutOfRange { vertex: y, n });
    }
    Ok(())
}

/// Exact `P[π(x_i) ∈ L_i for all i]` for a uniform permutation `π` of `[n]`,
/// by enumerating all `n!` permutations. Requires `n <= 8`.
pub fn perm_spread_exact(n: usize, xs: &[usize], ls: &[Vec<usize>]) -> Result<f64> {
    check_perm_query(n, xs, ls)?;
    if n > EXACT_PERM_MAX {
        return Err(Error::Precondition(format!(
            "exact enumeration supports n <= {EXACT_PERM_MAX}, got {n}"
        )));
    }
    let mut member = vec![vec![false; n]; xs.len()];
    for (i, l) in ls.iter().enumerate() {
        for &y in l {
            member[i][y] = true;
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut hits = 0u64;
    let mut total = 0u64;
    permute(&mut perm, 0, &mut |p| {
        total += 1;
        if xs.iter().enumerate().all(|(i, &x)| member[i][p[x]]) {
            hits += 1;
        }
    });
    Ok(hits as f64 / total as f64)
}

fn permute(p: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

/// Monte Carlo estimate of the same probability for any `n`.
pub fn perm_spread_mc<R: Rng + ?Sized>(
    n: usize,
    xs: &[usize],
    ls: &[Vec<usize>],
    trials: u64,
    rng: &mut R,
) -> Result<f64> {
    check_perm_query(n, xs, ls)?;
    if trials == 0 {
        return Err(Error::Precondition("at least one trial".into()));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut hits = 0u64;
    for _ in 0..trials {
        perm.shuffle(rng);
        if xs.iter().zip(ls).all(|(&x, l)| l.contains(&perm[x])) {
            hits += 1;
        }
    }
    Ok(hits as f64 / trials as f64)
}

/// `∏ e|L_i|/n`.
pub fn perm_spread_bound(n: usize, ls: &[Vec<usize>]) -> f64 {
    ls.iter()
        .map(|l| std::f64::consts::E * l.len() as f64 / n as f64)
        .product()
}
