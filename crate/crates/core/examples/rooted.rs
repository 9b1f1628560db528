//! Exact rooted embedding of a small tree onto a small host set.

use treespread::rooted::{embed_rooted_tree, embed_rooted_tree_randomized, DEFAULT_BUDGET};
use treespread::{
    gen_bounded_tree, gen_dirac_graph, is_valid_embedding, rng_from_seed, Error, Graph, Tree,
    Vertex,
};

fn main() -> treespread::Result<()> {
    let mut rng = rng_from_seed(2);
    let g = gen_dirac_graph(12, 0.5, 0.25, &mut rng)?;
    let t = gen_bounded_tree(12, 3, &mut rng)?;
    let hostset: Vec<Vertex> = (1..12).collect();

    let phi = embed_rooted_tree(&g, &hostset, &t, t.root(), 0, DEFAULT_BUDGET)?;
    println!(
        "deterministic: valid = {}, root -> {:?}",
        is_valid_embedding(&t, &g, &phi)?,
        phi.get(t.root())
    );
    let phi = embed_rooted_tree_randomized(&g, &hostset, &t, 4, 0, DEFAULT_BUDGET, &mut rng)?;
    println!("randomized, tree vertex 4 pinned: {phi}");

    // a star whose centre sits on a path endpoint cannot fit
    match embed_rooted_tree(&Graph::path(4), &[1, 2, 3], &Tree::star(3), 0, 0, 1000) {
        Err(Error::NotFound) => println!("star on a path: not found"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
