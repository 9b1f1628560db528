//! Closed-form tail bounds used to compare against measured violation rates.

use crate::error::{Error, Result};

/// `2 exp(-μγ²/3)`: two-sided Chernoff bound for a sum of independent
/// indicators with mean `μ`, deviating by a factor `γ ∈ (0, 1)`.
pub fn chernoff(mu: f64, gamma: f64) -> Result<f64> {
    if mu.is_nan() || mu < 0.0 || !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::Precondition(format!(
            "chernoff needs mu >= 0 and gamma in (0, 1), got {mu}, {gamma}"
        )));
    }
    Ok(2.0 * (-mu * gamma * gamma / 3.0).exp())
}

/// `4 exp(-t²/(8c²r E[X]))`: McDiarmid's inequality for a function of a
/// random permutation that is `c`-Lipschitz under swaps and `r`-certifiable,
/// at deviation `t + 60c sqrt(r E[X])` with `0 <= t <= E[X]`.
pub fn mcdiarmid_perm(t: f64, c: f64, r: f64, mean: f64) -> Result<f64> {
    if !(c > 0.0 && r > 0.0 && mean > 0.0) || !(0.0..=mean).contains(&t) {
        return Err(Error::Precondition(format!(
            "mcdiarmid needs c, r, E[X] > 0 and 0 <= t <= E[X], got t={t}, c={c}, r={r}, E[X]={mean}"
        )));
    }
    Ok(4.0 * (-t * t / (8.0 * c * c * r * mean)).exp())
}

/// The full deviation `t + 60c sqrt(r E[X])` that [`mcdiarmid_perm`] bounds.
pub fn mcdiarmid_deviation(t: f64, c: f64, r: f64, mean: f64) -> f64 {
    t + 60.0 * c * (r * mean).sqrt()
}

/// `2 exp(-ℓ(δ - δ')²/2)`: probability that a vertex of a graph with minimum
/// degree `δn` has fewer than `δ'ℓ` neighbours in a uniform random `ℓ`-set.
pub fn degree_into_random_set(l: usize, delta: f64, delta_prime: f64) -> Result<f64> {
    if !(0.0 < delta_prime && delta_prime < delta && delta < 1.0) || l == 0 {
        return Err(Error::Precondition(format!(
            "need l >= 1 and 0 < delta' < delta < 1, got l={l}, delta={delta}, delta'={delta_prime}"
        )));
    }
    let gap = delta - delta_prime;
    Ok(2.0 * (-(l as f64) * gap * gap / 2.0).exp())
}
