mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::Rng;
use treespread::matching::{
    equipartition_right, sample_perfect_matching, sample_star_matching, BipartiteGraph,
};
use treespread::spread::chi_square_uniform;
use treespread::{rng_for_stream, rng_from_seed, Error};

use common::{all_perfect_matchings, matching_choice_tree, three_sigma};

fn factorial(m: usize) -> f64 {
    (1..=m).product::<usize>() as f64
}

#[test]
fn choice_tree_is_uniform_on_complete_hosts() {
    for m in 1..=5 {
        let h = BipartiteGraph::complete(m, m);
        let law = matching_choice_tree(&h);
        assert_eq!(law.len(), all_perfect_matchings(&h).len());
        assert_eq!(law.len() as f64, factorial(m));
        for p in law.values() {
            assert!((p - 1.0 / factorial(m)).abs() < 1e-12);
        }
    }
}

#[test]
fn sampler_matches_the_choice_tree() {
    let h = BipartiteGraph::from_fn(4, 4, |a, b| (a + b) % 4 != 3);
    let law = matching_choice_tree(&h);
    let draws = 60_000u64;
    let mut counts: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    let mut rng = rng_from_seed(1);
    for _ in 0..draws {
        let m = sample_perfect_matching(&h, &mut rng).unwrap();
        assert!(h.is_perfect_matching(&m));
        *counts.entry(m).or_insert(0) += 1;
    }
    assert!(counts.keys().all(|m| law.contains_key(m)));
    for (m, &p) in &law {
        let f = *counts.get(m).unwrap_or(&0) as f64 / draws as f64;
        assert!(
            (f - p).abs() <= three_sigma(p, draws) + 1e-3,
            "{m:?}: {f} vs {p}"
        );
    }
}

#[test]
fn edge_probability_on_complete_hosts() {
    let m = 6;
    let h = BipartiteGraph::complete(m, m);
    let draws = 30_000u64;
    let mut counts = vec![0u64; m * m];
    let mut rng = rng_from_seed(2);
    for _ in 0..draws {
        for (a, b) in sample_perfect_matching(&h, &mut rng)
            .unwrap()
            .into_iter()
            .enumerate()
        {
            counts[a * m + b] += 1;
        }
    }
    let p = 1.0 / m as f64;
    for &c in &counts {
        assert!((c as f64 / draws as f64 - p).abs() <= three_sigma(p, draws));
    }
    assert!(chi_square_uniform(&counts).unwrap().p_value > 0.001);
}

#[test]
fn missing_matching_is_reported() {
    // two left vertices share a single neighbour
    let h = BipartiteGraph::from_edges(3, 3, &[(0, 0), (1, 0), (2, 1), (2, 2)]).unwrap();
    assert_eq!(h.max_matching_size(), 2);
    assert!(matches!(
        sample_perfect_matching(&h, &mut rng_from_seed(0)),
        Err(Error::NoPerfectMatching)
    ));
    assert!(
        sample_perfect_matching(&BipartiteGraph::complete(2, 3), &mut rng_from_seed(0)).is_err()
    );
}

#[test]
fn equipartition_examples() {
    let b: Vec<usize> = (0..12).collect();
    assert_eq!(
        equipartition_right(&b, 1, &mut rng_from_seed(0)).unwrap(),
        vec![b.clone()]
    );
    let parts = equipartition_right(&b, 3, &mut rng_from_seed(0)).unwrap();
    assert!(parts.iter().all(|p| p.len() == 4));
    let mut all: Vec<usize> = parts.concat();
    all.sort();
    assert_eq!(all, b);
    assert!(matches!(
        equipartition_right(&b, 5, &mut rng_from_seed(0)),
        Err(Error::SizeMismatch(_))
    ));
}

#[test]
fn equipartition_keeps_degrees() {
    // the reallocation step splits into K = 2 groups
    let (na, nb, k) = (200, 400, 2);
    let mut rng = rng_from_seed(3);
    let h = BipartiteGraph::from_fn(na, nb, |_, _| rng.gen_bool(0.995));
    let h = BipartiteGraph::from_fn(na, nb, |a, b| {
        h.has_edge(a, b) || h.left_neighbors(a).len() < 396
    });
    assert!((0..na).all(|a| h.left_neighbors(a).len() as f64 >= 0.99 * nb as f64));
    let b: Vec<usize> = (0..nb).collect();
    let mut good = 0;
    let draws = 400;
    for _ in 0..draws {
        let parts = equipartition_right(&b, k, &mut rng).unwrap();
        let worst = (0..na)
            .flat_map(|a| parts.iter().map(move |p| (a, p)))
            .map(|(a, p)| p.iter().filter(|&&y| h.has_edge(a, y)).count() as f64 / p.len() as f64)
            .fold(1.0, f64::min);
        if worst >= 0.98 {
            good += 1;
        }
    }
    assert!(good as f64 >= 0.95 * draws as f64, "{good} of {draws}");
}

#[test]
fn star_with_one_leaf_is_a_perfect_matching() {
    let h = BipartiteGraph::from_fn(30, 30, |a, b| a != b);
    let h = h.with_right(&(0..30).collect::<Vec<_>>());
    for seed in 0..20 {
        let s = sample_star_matching(
            &BipartiteGraph::complete(30, 30),
            1,
            &mut rng_from_seed(seed),
        )
        .unwrap();
        let m =
            sample_perfect_matching(&BipartiteGraph::complete(30, 30), &mut rng_from_seed(seed))
                .unwrap();
        let leaves: Vec<usize> = s.all_leaves().iter().map(|l| l[0]).collect();
        assert_eq!(leaves, m);
    }
    assert!(matches!(
        sample_star_matching(&h, 1, &mut rng_from_seed(0)),
        Err(Error::DegreeCondition(_))
    ));
}

#[test]
fn star_pair_probability_on_complete_hosts() {
    let (na, k) = (4, 2);
    let h = BipartiteGraph::complete(na, na * k);
    let draws = 40_000u64;
    let mut counts = vec![0u64; na * na * k];
    let mut rng = rng_from_seed(4);
    for _ in 0..draws {
        let s = sample_star_matching(&h, k, &mut rng).unwrap();
        assert!(s.is_valid(&h, k));
        for a in 0..na {
            for &b in s.leaves(a) {
                counts[a * na * k + b] += 1;
            }
        }
    }
    let p = k as f64 / (na * k) as f64;
    for &c in &counts {
        assert!((c as f64 / draws as f64 - p).abs() <= three_sigma(p, draws));
    }
}

#[test]
fn star_matching_errors() {
    let mut rng = rng_from_seed(5);
    assert!(matches!(
        sample_star_matching(&BipartiteGraph::complete(3, 7), 2, &mut rng),
        Err(Error::SizeMismatch(_))
    ));
    let sparse = BipartiteGraph::from_fn(3, 6, |a, b| b % 3 != a);
    assert!(matches!(
        sample_star_matching(&sparse, 2, &mut rng),
        Err(Error::DegreeCondition(_))
    ));
}

#[test]
fn seeds_give_independent_draws() {
    // first-row images across seed streams look uniform
    let h = BipartiteGraph::complete(5, 5);
    let mut counts = vec![0u64; 5];
    for i in 0..5_000 {
        let m = sample_perfect_matching(&h, &mut rng_for_stream(77, i)).unwrap();
        counts[m[0]] += 1;
    }
    assert!(chi_square_uniform(&counts).unwrap().p_value > 0.001);
    let a = sample_perfect_matching(&h, &mut rng_from_seed(9)).unwrap();
    assert_eq!(
        a,
        sample_perfect_matching(&h, &mut rng_from_seed(9)).unwrap()
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn perfect_matchings_are_valid(n in 1usize..40, seed: u64) {
        let mut rng = rng_from_seed(seed);
        let need = (3 * n).div_ceil(4);
        let h = loop {
            let h = BipartiteGraph::from_fn(n, n, |_, _| rng.gen_bool(0.85));
            if h.min_degree() >= need {
                break h;
            }
        };
        let m = sample_perfect_matching(&h, &mut rng).unwrap();
        prop_assert!(h.is_perfect_matching(&m));
    }

    #[test]
    fn star_matchings_are_valid(na in 1usize..12, k in 1usize..4, seed: u64) {
        let mut rng = rng_from_seed(seed);
        let h = BipartiteGraph::complete(na, na * k);
        let s = sample_star_matching(&h, k, &mut rng).unwrap();
        prop_assert!(s.is_valid(&h, k));
        let centres = s.centres(na * k);
        prop_assert!(centres.iter().all(Option::is_some));
    }
}
