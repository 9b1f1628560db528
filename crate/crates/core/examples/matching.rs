//! Random perfect matchings and K_{1,k}-perfect star matchings in dense
//! bipartite graphs.

use rand::Rng;
use treespread::matching::{sample_perfect_matching, sample_star_matching, BipartiteGraph};
use treespread::rng_from_seed;

fn main() -> treespread::Result<()> {
    let mut rng = rng_from_seed(9);

    let n = 40;
    let h = BipartiteGraph::from_fn(n, n, |_, _| rng.gen_bool(0.9));
    println!(
        "host: {} edges, min degree {}",
        h.edge_count(),
        h.min_degree()
    );
    let m = sample_perfect_matching(&h, &mut rng)?;
    println!("perfect = {}: {:?}", h.is_perfect_matching(&m), &m[..10]);

    let k = 3;
    let star = BipartiteGraph::complete(10, 30);
    let s = sample_star_matching(&star, k, &mut rng)?;
    println!("star matching valid = {}", s.is_valid(&star, k));
    for a in 0..3 {
        println!("  centre {a} -> {:?}", s.leaves(a));
    }
    Ok(())
}
