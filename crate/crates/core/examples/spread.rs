//! Monte Carlo spread estimates for the pipeline and for a uniform random
//! bijection, with a multi-pair query.

use rand::Rng;
use treespread::spread::{estimate_spread, uniform_injection, SpreadConfig, SpreadQuery};
use treespread::{gen_bounded_tree, gen_dirac_graph, rng_from_seed, run_pipeline, PipelineConfig};

fn main() -> treespread::Result<()> {
    let mut rng = rng_from_seed(4);
    let n = 20;
    let g = gen_dirac_graph(n, 0.5, 0.25, &mut rng)?;
    let t = gen_bounded_tree(n, 3, &mut rng)?;
    let cfg = PipelineConfig::default();
    let queries = vec![
        SpreadQuery::new(vec![(1, 2)])?,
        SpreadQuery::new(vec![(1, 2), (3, 4)])?,
    ];
    let scfg = SpreadConfig {
        q: 0.5,
        ..SpreadConfig::new(5_000, 4)
    };

    let report = estimate_spread(
        |rng| {
            let v = rng.gen_range(0..n);
            run_pipeline(&g, &t, t.root(), v, &cfg, rng).map(|r| r.embedding)
        },
        n,
        n,
        &queries,
        &scfg,
    )?;
    print!("{}{}", report.to_kv(), report.query_table());

    let base = estimate_spread(|rng| Ok(uniform_injection(n, rng)), n, n, &queries, &scfg)?;
    println!(
        "uniform bijection: c_hat {:.3}, pipeline: c_hat {:.3}",
        base.c_hat, report.c_hat
    );
    Ok(())
}
