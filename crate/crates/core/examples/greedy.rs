//! The colour-respecting random greedy: one draw on a mid-sized host, then
//! its exact law on a tiny one.

use treespread::greedy::{
    check_greedy_preconditions, exact_greedy_distribution, greedy_embed, ColouredTree,
};
use treespread::{gen_bounded_tree, is_valid_embedding, rng_from_seed, Graph, Tree, Vertex};

fn main() -> treespread::Result<()> {
    let mut rng = rng_from_seed(5);

    // two classes on a complete host, tree vertices coloured by depth parity
    let host = Graph::complete(41);
    let classes: Vec<Vec<Vertex>> = vec![(1..21).collect(), (21..41).collect()];
    let t = gen_bounded_tree(12, 3, &mut rng)?;
    let depth = depths(&t);
    let colour = (0..t.n())
        .map(|x| (x != t.root()).then_some(depth[x] % 2))
        .collect();
    let ct = ColouredTree::new(t.clone(), colour)?;
    check_greedy_preconditions(&host, &classes, &ct, 0, 0.3, 0.15)?;
    let phi = greedy_embed(&host, &classes, &ct, 0, &mut rng)?;
    println!("valid = {}", is_valid_embedding(&t, &host, &phi)?);
    println!("{phi}");

    // K_{1,3} rooted at its centre into K_5
    let ct = ColouredTree::monochrome(Tree::star(3));
    let dist =
        exact_greedy_distribution(&Graph::complete(5), &[vec![1, 2, 3, 4]], &ct, 0, 1_000_000)?;
    println!(
        "{} outcomes, failure mass {}, P[leaf 1 -> 2] = {:.4}, max marginal {:.4}",
        dist.outcomes.len(),
        dist.failure_mass,
        dist.marginal(1, 2),
        dist.max_marginal(0)
    );
    Ok(())
}

fn depths(t: &Tree) -> Vec<usize> {
    let mut d = vec![0; t.n()];
    for x in t.bfs_order(t.root()) {
        if let Some(p) = t.parent(x) {
            d[x] = d[p] + 1;
        }
    }
    d
}
