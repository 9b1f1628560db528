//! Draw a random labelled partition of a Dirac host, find the good parts,
//! extract the core of the auxiliary graph and attach the root.

use treespread::partition::{
    attach_root, build_aux_graph, extract_core, partition_stats, sample_partition, ColourClass,
    PartitionSpec,
};
use treespread::{gen_dirac_graph, rng_from_seed};

fn main() -> treespread::Result<()> {
    let mut rng = rng_from_seed(3);
    let n = 200;
    let g = gen_dirac_graph(n, 0.5, 0.25, &mut rng)?;
    let spec = PartitionSpec {
        base: 8,
        slack: 2,
        classes: vec![
            ColourClass {
                colour: 8,
                size: 5,
                count: 12,
            },
            ColourClass {
                colour: 12,
                size: 9,
                count: 6,
            },
            ColourClass {
                colour: 20,
                size: 17,
                count: 3,
            },
        ],
        delta: 0.5,
        alpha: 0.25,
        eps: 0.15,
        gamma: 0.15,
        eta: 0.01,
    };
    let v = 0;
    let part = sample_partition(&g, &spec, v, &mut rng)?;
    part.validate(&spec)?;
    println!(
        "{} parts covering {} vertices, {} left over, root {v} excluded",
        part.parts().len(),
        spec.total_size(),
        part.leftover().len()
    );
    print!(
        "{}",
        part.to_string()
            .lines()
            .take(3)
            .map(|l| format!("  {l}\n"))
            .collect::<String>()
    );

    let aux = build_aux_graph(&g, &part, spec.delta, spec.alpha);
    let good = (0..aux.len()).filter(|&i| aux.is_good(i)).count();
    println!(
        "auxiliary graph: {} nodes, {good} good, {} edges",
        aux.len(),
        aux.graph().edge_count()
    );

    match extract_core(&aux, spec.eps) {
        Ok(core) => {
            core.check_core(spec.eps)?;
            let with_root = attach_root(&core, &g, &part, v, spec.delta, spec.alpha)?;
            let r = with_root.root().unwrap();
            println!(
                "core keeps {} parts; root sees {} of them",
                core.len(),
                with_root.graph().degree(r)
            );
        }
        Err(e) => println!("no core: {e}"),
    }

    let stats = partition_stats(&g, &part, spec.delta, spec.alpha);
    println!(
        "part fractions min {:.3} mean {:.3}; vertex fractions min {:.3} mean {:.3}",
        stats.min_part_fraction(),
        stats.mean_part_fraction(),
        stats.min_vertex_fraction(),
        stats.mean_vertex_fraction()
    );
    Ok(())
}
