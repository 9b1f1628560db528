//! End-to-end: embed a spanning tree into a dense host with the root pinned,
//! then once more with a uniform root image.

use treespread::{
    embed_unrooted, gen_bounded_tree, gen_dirac_graph, is_valid_embedding, rng_from_seed,
    run_pipeline, PipelineConfig,
};

fn main() -> treespread::Result<()> {
    let mut rng = rng_from_seed(1);
    let n = 40;
    let g = gen_dirac_graph(n, 0.65, 0.25, &mut rng)?;
    let t = gen_bounded_tree(n, 3, &mut rng)?;
    let cfg = PipelineConfig {
        max_attempts: 500,
        ..PipelineConfig::default()
    };

    let run = run_pipeline(&g, &t, t.root(), 7, &cfg, &mut rng)?;
    println!("valid = {}", is_valid_embedding(&t, &g, &run.embedding)?);
    print!("{}", run.metadata(Some(1)));
    if let Some(acc) = &run.accepted {
        acc.adjusted.validate(&g, cfg.alpha)?;
        for (i, bag) in acc.adjusted.bags.iter().enumerate() {
            println!("  bag {i} (colour {}): {:?}", acc.adjusted.colours[i], bag);
        }
    }

    let run = embed_unrooted(&g, &t, &cfg, &mut rng)?;
    println!(
        "unrooted: root {} -> {} after {} attempts",
        run.tree_root, run.host_root, run.attempts
    );
    Ok(())
}
