//! Concentration bounds and the random-permutation spread check.

use treespread::rng_from_seed;
use treespread::spread::{
    chernoff, degree_into_random_set, mcdiarmid_deviation, mcdiarmid_perm, perm_spread_bound,
    perm_spread_exact, perm_spread_mc,
};

fn main() -> treespread::Result<()> {
    for mu in [100.0, 300.0, 1000.0] {
        println!(
            "Chernoff, mu = {mu}, gamma = 0.1: {:.4}",
            chernoff(mu, 0.1)?
        );
    }
    let (mean, t) = (1.0e6, 2.0e4);
    let dev = mcdiarmid_deviation(t, 1.0, 2.0, mean);
    println!(
        "McDiarmid, c = 1, r = 2, E[X] = {mean}: deviation {dev:.0} with probability <= {:.3e}",
        mcdiarmid_perm(t, 1.0, 2.0, mean)?
    );
    for l in [50, 200, 800] {
        println!(
            "degree into a random {l}-set, 0.75 -> 0.625: {:.4}",
            degree_into_random_set(l, 0.75, 0.625)?
        );
    }

    let n = 7;
    let xs = [0, 1];
    let ls = vec![vec![0, 1], vec![2]];
    let exact = perm_spread_exact(n, &xs, &ls)?;
    let mc = perm_spread_mc(n, &xs, &ls, 100_000, &mut rng_from_seed(1))?;
    println!(
        "P[pi(0) in {{0,1}}, pi(1) = 2] = {exact:.5} (MC {mc:.5}), bound {:.5}",
        perm_spread_bound(n, &ls)
    );
    Ok(())
}
