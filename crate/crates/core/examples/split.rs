//! Split a random bounded-degree tree into pieces of `m..=4m` vertices and
//! build the bag-tree rooted at the piece `{root}`.

use treespread::{bag_graph, bag_tree, gen_bounded_tree, rng_from_seed, tree_splitting};

fn main() -> treespread::Result<()> {
    let mut rng = rng_from_seed(11);
    let t = gen_bounded_tree(60, 3, &mut rng)?;
    let m = 5;
    let s = tree_splitting(&t, m)?;
    s.validate(&t)?;
    s.check_sizes(m, 4 * m)?;
    println!("{} pieces for a tree on {} vertices", s.len(), t.n());
    for (i, p) in s.pieces().iter().enumerate() {
        println!("  T_{i}: {} vertices {:?}", p.len(), p);
    }

    let bg = bag_graph(&s);
    println!(
        "bag graph: {} edges, connected = {}",
        bg.edge_count(),
        bg.is_connected()
    );

    let bt = bag_tree(&s, t.root())?;
    println!(
        "bag tree rooted at T_* = node {}, max degree {}",
        bt.star(),
        bt.max_degree()
    );
    for &node in &bt.order()[1..] {
        println!(
            "  node {node} hangs off {} through tree vertex {}",
            bt.parent(node).unwrap(),
            bt.shared(node).unwrap()
        );
    }
    Ok(())
}
