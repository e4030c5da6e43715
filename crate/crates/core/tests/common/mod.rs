//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use qip_core::arith::{rat, Rational};
use qip_core::geometry::{HPolytope, LatticeBox, LinearInequality, VPolytope};
use qip_core::gsa::GsaInstance;
use qip_core::reductions::{Literal, Q3SatInstance};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_fraction(r: &mut TestRng, max_den: i64, lo: i64, hi: i64) -> Rational {
    let q = r.gen_range(1..=max_den);
    let p = r.gen_range(lo * q..=hi * q);
    rat(p, q)
}

/// `d <= max_d`, `N <= max_n`, denominators `<= max_den`, `eps < 1/2`.
pub fn random_gsa(r: &mut TestRng, max_d: usize, max_n: u64, max_den: i64) -> GsaInstance {
    let d = r.gen_range(1..=max_d);
    let alpha = (0..d).map(|_| random_fraction(r, max_den, 0, 1)).collect();
    let q = r.gen_range(3..=max_den.max(3));
    let p = r.gen_range(1..=(q - 1) / 2);
    GsaInstance::new(alpha, r.gen_range(1..=max_n), rat(p, q)).unwrap()
}

pub fn random_q3sat(r: &mut TestRng, k: usize, max_ell: usize, max_clauses: usize) -> Q3SatInstance {
    let ell = r.gen_range(1..=max_ell);
    let n = r.gen_range(1..=max_clauses);
    let lit = |r: &mut TestRng| Literal {
        block: r.gen_range(1..=k),
        index: r.gen_range(1..=ell),
        positive: r.gen_bool(0.5),
    };
    // Half of the clauses repeat one literal, which makes unsatisfiable
    // formulas common at this size.
    let clauses = (0..n)
        .map(|_| {
            if r.gen_bool(0.5) {
                [lit(r); 3]
            } else {
                [lit(r), lit(r), lit(r)]
            }
        })
        .collect();
    Q3SatInstance::new(k, ell, clauses).unwrap()
}

/// A random lattice box or lattice simplex inside `[-5, 5]^n`.
pub fn random_part(r: &mut TestRng, n: usize) -> HPolytope {
    if r.gen_bool(0.5) {
        let a: Vec<i64> = (0..n).map(|_| r.gen_range(-5..=5)).collect();
        let b: Vec<i64> = (0..n).map(|_| r.gen_range(-5..=5)).collect();
        let lo: Vec<i64> = a.iter().zip(&b).map(|(x, y)| *x.min(y)).collect();
        let hi: Vec<i64> = a.iter().zip(&b).map(|(x, y)| *x.max(y)).collect();
        LatticeBox::from_i64(&lo, &hi).unwrap().to_hpolytope()
    } else {
        let pts: Vec<Vec<Rational>> = (0..=n)
            .map(|_| (0..n).map(|_| rat(r.gen_range(-5..=5), 1)).collect())
            .collect();
        qip_core::geometry::hull_facets(&VPolytope::new(n, pts).unwrap()).unwrap()
    }
}

pub fn random_vpolytope(r: &mut TestRng, max_dim: usize, max_vertices: usize, max_den: i64) -> VPolytope {
    let dim = r.gen_range(1..=max_dim);
    let k = r.gen_range(1..=max_vertices);
    let pts = (0..k)
        .map(|_| (0..dim).map(|_| random_fraction(r, max_den, -3, 3)).collect())
        .collect();
    VPolytope::new(dim, pts).unwrap()
}

/// A parametric system `A (x, y) <= b` whose `y`-part is bounded, with
/// `d1` parameters and `d2` unknowns.
pub fn random_bounded_system(
    r: &mut TestRng,
    d1: usize,
    d2: usize,
    m: usize,
) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    loop {
        let a: Vec<Vec<BigInt>> = (0..m)
            .map(|_| (0..d1 + d2).map(|_| BigInt::from(r.gen_range(-5..=5))).collect())
            .collect();
        let b: Vec<BigInt> = (0..m).map(|_| BigInt::from(r.gen_range(-5..=5))).collect();
        let recession: Vec<LinearInequality> = a
            .iter()
            .map(|row| LinearInequality::new(row[d1..].to_vec(), BigInt::from(0)))
            .collect();
        let h = HPolytope::new(d2, recession).unwrap();
        if qip_core::geometry::vertices(&h).is_ok() {
            return (a, b);
        }
    }
}

/// `r` points with even coordinates in strictly convex position.
pub fn random_convex_points(r: &mut TestRng, count: usize) -> Vec<Vec<BigInt>> {
    loop {
        let pts: Vec<Vec<Rational>> = (0..3 * count + 4)
            .map(|_| vec![rat(2 * r.gen_range(-15..=15), 1), rat(2 * r.gen_range(-15..=15), 1)])
            .collect();
        let hull = VPolytope::new(2, pts).unwrap().canonical().unwrap();
        if hull.vertices.len() >= count {
            let mut v = hull.vertices;
            v.shuffle(r);
            v.truncate(count);
            return v
                .into_iter()
                .map(|p| p.iter().map(|c| c.to_integer()).collect())
                .collect();
        }
    }
}
