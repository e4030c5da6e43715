//! Deterministic instance grids for verification sweeps.

use crate::arith::{rat, Rational};
use crate::gsa::GsaInstance;

/// Every reduced fraction `p/q` in `[0, 1)` with `q <= max_den`, sorted.
pub fn fractions(max_den: i64) -> Vec<Rational> {
    let mut v: Vec<Rational> = (1..=max_den)
        .flat_map(|q| (0..q).map(move |p| rat(p, q)))
        .collect();
    v.sort();
    v.dedup();
    v
}

/// Tolerances used by the grids.
pub fn grid_eps() -> [Rational; 3] {
    [rat(1, 6), rat(1, 4), rat(1, 3)]
}

/// The standard grid: `d` in `{2, 3}`, `N <= 12`, denominators of `alpha`
/// at most 8, `eps` in `{1/6, 1/4, 1/3}`; 330 instances.
///
/// The `alpha` vectors walk the 22 fractions with coprime strides so that
/// every fraction appears in every position.
pub fn gsa_grid() -> Vec<GsaInstance> {
    let f = fractions(8);
    let n = f.len();
    let mut out = Vec::new();
    for eps in grid_eps() {
        for i in 0..n {
            let alpha = vec![f[i].clone(), f[(7 * i + 3) % n].clone()];
            for big_n in [3, 7, 12] {
                out.push(GsaInstance::new(alpha.clone(), big_n, eps.clone()).expect("valid"));
            }
        }
        for i in 0..n {
            let alpha = vec![
                f[i].clone(),
                f[(5 * i + 1) % n].clone(),
                f[(9 * i + 4) % n].clone(),
            ];
            for big_n in [5, 12] {
                out.push(GsaInstance::new(alpha.clone(), big_n, eps.clone()).expect("valid"));
            }
        }
    }
    out
}

/// Every `step`-th instance of [`gsa_grid`].
pub fn gsa_grid_small(step: usize) -> Vec<GsaInstance> {
    gsa_grid().into_iter().step_by(step.max(1)).collect()
}
