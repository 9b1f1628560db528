mod common;

use proptest::prelude::*;
use treespread::graph::frac_ceil;
use treespread::{
    gen_bounded_tree, gen_dirac_graph, is_valid_embedding, rng_from_seed, Embedding, Error, Graph,
    Tree,
};

#[test]
fn min_degree_examples() {
    assert_eq!(Graph::complete(5).min_degree().unwrap(), 4);
    assert_eq!(Graph::path(4).min_degree().unwrap(), 1);
    let g = gen_dirac_graph(30, 0.75, 0.0, &mut rng_from_seed(1)).unwrap();
    let scan = (0..30)
        .map(|u| (0..30).filter(|&w| g.has_edge(u, w)).count())
        .min()
        .unwrap();
    assert!(scan >= 23);
    assert_eq!(g.min_degree().unwrap(), scan);
    assert!(matches!(
        Graph::empty(0).min_degree(),
        Err(Error::Degenerate(_))
    ));
}

#[test]
fn degree_into_examples() {
    assert_eq!(Graph::complete(5).degree_into(0, &[1, 2]).unwrap(), 2);
    assert_eq!(Graph::path(4).degree_into(0, &[2, 3]).unwrap(), 0);
    assert!(Graph::path(4).degree_into(4, &[0]).is_err());
    assert!(Graph::path(4).degree_into(0, &[9]).is_err());
}

#[test]
fn induced_min_degree_examples() {
    assert_eq!(
        Graph::complete(6)
            .induced_min_degree(&[0, 2, 3, 5])
            .unwrap(),
        3
    );
    assert_eq!(Graph::path(4).induced_min_degree(&[0, 2]).unwrap(), 0);
    assert!(Graph::path(4).induced_min_degree(&[]).is_err());
}

#[test]
fn dirac_generator_examples() {
    let g = gen_dirac_graph(40, 0.5, 0.1, &mut rng_from_seed(3)).unwrap();
    assert!(g.min_degree().unwrap() >= 24);
    assert!(matches!(
        gen_dirac_graph(40, 0.99, 0.05, &mut rng_from_seed(3)),
        Err(Error::Infeasible(_))
    ));
    let a = gen_dirac_graph(40, 0.5, 0.25, &mut rng_from_seed(9)).unwrap();
    let b = gen_dirac_graph(40, 0.5, 0.25, &mut rng_from_seed(9)).unwrap();
    assert_eq!(a.edges(), b.edges());
}

#[test]
fn tree_generator_examples() {
    assert_eq!(
        gen_bounded_tree(1, 2, &mut rng_from_seed(0)).unwrap().n(),
        1
    );
    let p = gen_bounded_tree(10, 2, &mut rng_from_seed(0)).unwrap();
    assert_eq!(p.max_degree(), 2);
    assert_eq!((0..10).filter(|&x| p.degree(x) == 1).count(), 2);
    let t = gen_bounded_tree(50, 4, &mut rng_from_seed(0)).unwrap();
    assert_eq!(t.edges().len(), 49);
    assert!((0..50).all(|x| t.degree(x) <= 4));
    assert!(gen_bounded_tree(5, 1, &mut rng_from_seed(0)).is_err());
}

#[test]
fn embedding_validity_examples() {
    let p3 = Tree::path(3);
    assert!(is_valid_embedding(
        &p3,
        &Graph::complete(3),
        &Embedding::from_total(vec![0, 1, 2])
    )
    .unwrap());
    assert!(
        !is_valid_embedding(&p3, &Graph::path(3), &Embedding::from_total(vec![0, 2, 1])).unwrap()
    );
    let mut partial = Embedding::new(3);
    partial.set(0, 0);
    assert!(matches!(
        is_valid_embedding(&p3, &Graph::complete(3), &partial),
        Err(Error::IncompleteEmbedding(_))
    ));
}

#[test]
fn file_formats_round_trip() {
    let mut rng = rng_from_seed(4);
    let g = gen_dirac_graph(25, 0.5, 0.2, &mut rng).unwrap();
    let text = g.to_string();
    assert!(text.starts_with(&format!("25 {}\n", g.edge_count())));
    assert_eq!(text.parse::<Graph>().unwrap().edges(), g.edges());
    let t = gen_bounded_tree(25, 3, &mut rng).unwrap();
    assert_eq!(t.to_string().parse::<Tree>().unwrap().edges(), t.edges());
    assert!("3 1\n0 5\n".parse::<Graph>().is_err());
}

proptest! {
    #[test]
    fn dirac_degree_bound(n in 10usize..60, df in 0.0f64..0.6, a in 0.0f64..0.3, seed: u64) {
        prop_assume!(df + a < 0.95);
        let g = gen_dirac_graph(n, df, a, &mut rng_from_seed(seed)).unwrap();
        prop_assert!(g.min_degree().unwrap() >= frac_ceil(df + a, n));
        prop_assert!((0..n).all(|u| !g.has_edge(u, u)));
    }

    #[test]
    fn trees_are_trees(n in 1usize..120, d in 2usize..6, seed: u64) {
        let t = gen_bounded_tree(n, d, &mut rng_from_seed(seed)).unwrap();
        let edges = t.edges();
        prop_assert_eq!(edges.len(), n - 1);
        let g = Graph::from_edges(n, &edges).unwrap();
        prop_assert!(g.is_connected());
        prop_assert!(g.max_degree() <= d);
    }

    #[test]
    fn degree_into_splits(seed: u64, n in 2usize..40, mask: u64) {
        let g = gen_dirac_graph(n.max(10), 0.3, 0.1, &mut rng_from_seed(seed)).unwrap();
        let n = g.n();
        let u = (mask as usize) % n;
        let (s, rest): (Vec<_>, Vec<_>) = (0..n).filter(|&w| w != u).partition(|&w| mask >> (w % 64) & 1 == 1);
        let brute = s.iter().filter(|&&w| g.neighbors(u).contains(&w)).count();
        prop_assert_eq!(g.degree_into(u, &s).unwrap(), brute);
        prop_assert_eq!(g.degree_into(u, &s).unwrap() + g.degree_into(u, &rest).unwrap(), g.degree(u));
    }

    #[test]
    fn induced_min_degree_matches_materialised(seed: u64, mask: u64) {
        let g = gen_dirac_graph(20, 0.3, 0.1, &mut rng_from_seed(seed)).unwrap();
        let s: Vec<usize> = (0..20).filter(|&w| mask >> w & 1 == 1).collect();
        prop_assume!(!s.is_empty());
        let h = g.induced(&s);
        prop_assert_eq!(g.induced_min_degree(&s).unwrap(), h.min_degree().unwrap());
    }

    #[test]
    fn generators_reproducible(seed: u64) {
        let a = gen_bounded_tree(30, 3, &mut rng_from_seed(seed)).unwrap();
        let b = gen_bounded_tree(30, 3, &mut rng_from_seed(seed)).unwrap();
        prop_assert_eq!(a, b);
    }
}
