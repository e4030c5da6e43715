//! Good simultaneous approximation: instances, the fractional-distance
//! norm, brute-force oracles, and the band/gap parallelograms.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, rat, Rational};
use crate::error::{Error, Result};
use crate::geometry::{sharpen_strict, HPolytope, LinearInequality, RationalInequality};

/// `alpha`, `n` and `eps` of a GSA question: is there `x` in `[1, n]` with
/// every `x * alpha_i` within `eps` of an integer?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GsaInstance {
    /// Reduced to `[0, 1)`; the norm only sees fractional parts.
    pub alpha: Vec<Rational>,
    pub n: u64,
    pub eps: Rational,
    /// Set when `eps >= 1/2`, where every `x` qualifies.
    pub trivial: bool,
}

impl GsaInstance {
    pub fn new(alpha: Vec<Rational>, n: u64, eps: Rational) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::InvalidInstance("alpha must be nonempty".into()));
        }
        if n == 0 {
            return Err(Error::InvalidInstance("N must be positive".into()));
        }
        if !eps.is_positive() {
            return Err(Error::InvalidInstance(format!("eps = {eps} must be positive")));
        }
        let alpha = alpha
            .into_iter()
            .map(|a| &a - Rational::from_integer(arith::floor(&a)))
            .collect();
        let trivial = eps >= rat(1, 2);
        Ok(GsaInstance {
            alpha,
            n,
            eps,
            trivial,
        })
    }

    pub fn d(&self) -> usize {
        self.alpha.len()
    }

    /// `ceil(1 + N * max alpha_i)`: an integer upper bound on the band
    /// heights over `[1, N]`.
    pub fn t_bound(&self) -> BigInt {
        let max = self.alpha.iter().max().cloned().unwrap_or_else(Rational::zero);
        arith::ceil(&(Rational::one() + max * Rational::from_integer(self.n.into())))
    }

    fn check_index(&self, i: usize) -> Result<&Rational> {
        if i == 0 || i > self.d() {
            return Err(Error::Precondition(format!(
                "polygon index {i} outside 1..={}",
                self.d()
            )));
        }
        Ok(&self.alpha[i - 1])
    }
}

/// Distance from `beta` to the nearest integer.
pub fn frac_dist(beta: &Rational) -> Rational {
    let down = beta - Rational::from_integer(arith::floor(beta));
    let up = Rational::from_integer(arith::ceil(beta)) - beta;
    down.min(up)
}

/// `max_i frac_dist(x * alpha_i)`.
pub fn gsa_norm(x: &BigInt, alpha: &[Rational]) -> Rational {
    let x = Rational::from_integer(x.clone());
    alpha
        .iter()
        .map(|a| frac_dist(&(&x * a)))
        .max()
        .unwrap_or_else(Rational::zero)
}

fn check_budget(inst: &GsaInstance, budget: u64) -> Result<()> {
    if inst.n > budget {
        return Err(Error::BudgetExceeded {
            requested: inst.n.to_string(),
            budget,
            context: "x in [1, N]".into(),
        });
    }
    Ok(())
}

fn good(inst: &GsaInstance, x: u64) -> bool {
    inst.trivial || gsa_norm(&x.into(), &inst.alpha) <= inst.eps
}

pub fn gsa_decide(inst: &GsaInstance) -> Result<bool> {
    gsa_decide_with_budget(inst, crate::geometry::DEFAULT_ENUMERATION_BUDGET)
}

pub fn gsa_decide_with_budget(inst: &GsaInstance, budget: u64) -> Result<bool> {
    check_budget(inst, budget)?;
    Ok((1..=inst.n).any(|x| good(inst, x)))
}

pub fn gsa_count(inst: &GsaInstance) -> Result<u64> {
    gsa_count_with_budget(inst, crate::geometry::DEFAULT_ENUMERATION_BUDGET)
}

pub fn gsa_count_with_budget(inst: &GsaInstance, budget: u64) -> Result<u64> {
    check_budget(inst, budget)?;
    Ok((1..=inst.n).filter(|&x| good(inst, x)).count() as u64)
}

/// The `x in [1, N]` that satisfy the instance, in increasing order.
pub fn gsa_solutions(inst: &GsaInstance) -> Result<Vec<u64>> {
    check_budget(inst, crate::geometry::DEFAULT_ENUMERATION_BUDGET)?;
    Ok((1..=inst.n).filter(|&x| good(inst, x)).collect())
}

fn x_range_rows(n: u64) -> [LinearInequality; 2] {
    [
        LinearInequality::from_i64(&[-1, 0], -1),
        LinearInequality::new(vec![BigInt::one(), BigInt::zero()], n.into()),
    ]
}

/// `w - a x <= c` as a rational row in `(x, w)`.
fn edge(a: &Rational, sign_w: i64, c: Rational, strict: bool) -> RationalInequality {
    // sign_w * (w - a x) <= c
    RationalInequality {
        coeffs: vec![-a * Rational::from_integer(sign_w.into()), rat(sign_w, 1)],
        rhs: c,
        strict,
    }
}

/// `{1 <= x <= N, alpha_i x - eps <= w <= alpha_i x + eps}` with
/// denominators cleared.
pub fn band_polygon(inst: &GsaInstance, i: usize) -> Result<HPolytope> {
    let a = inst.check_index(i)?;
    let mut rows = x_range_rows(inst.n).to_vec();
    rows.push(sharpen_strict(&edge(a, 1, inst.eps.clone(), false)));
    rows.push(sharpen_strict(&edge(a, -1, inst.eps.clone(), false)));
    HPolytope::new(2, rows).map(HPolytope::canonical)
}

/// The open parallelogram `{1 <= x <= N, alpha_i x + eps < w <
/// alpha_i x - eps + 1}` with both open edges sharpened to closed integer
/// rows; it has the same integer points.
pub fn gap_polygon(inst: &GsaInstance, i: usize) -> Result<HPolytope> {
    let a = inst.check_index(i)?;
    let mut rows = x_range_rows(inst.n).to_vec();
    // w < a x - eps + 1
    rows.push(sharpen_strict(&edge(a, 1, Rational::one() - &inst.eps, true)));
    // -(w - a x) < -eps
    rows.push(sharpen_strict(&edge(a, -1, -inst.eps.clone(), true)));
    HPolytope::new(2, rows).map(HPolytope::canonical)
}

/// Integer `w` range of a 2-dim polygon's slice at `x`, if nonempty.
pub fn slice_range(h: &HPolytope, x: i64) -> Option<(BigInt, BigInt)> {
    let mut lo: Option<BigInt> = None;
    let mut hi: Option<BigInt> = None;
    let x = BigInt::from(x);
    for row in &h.rows {
        let (a, b) = (&row.coeffs[0], &row.coeffs[1]);
        let r = &row.rhs - a * &x;
        if b.is_zero() {
            if r.is_negative() {
                return None;
            }
            continue;
        }
        let bound = Rational::new(r, b.clone());
        if b.is_positive() {
            let v = arith::floor(&bound);
            hi = Some(hi.map_or(v.clone(), |h| h.min(v)));
        } else {
            let v = arith::ceil(&bound);
            lo = Some(lo.map_or(v.clone(), |l| l.max(v)));
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) if l <= h => Some((l, h)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{integer_points, vertices};

    fn inst(alpha: &[(i64, i64)], n: u64, eps: (i64, i64)) -> GsaInstance {
        GsaInstance::new(
            alpha.iter().map(|&(p, q)| rat(p, q)).collect(),
            n,
            rat(eps.0, eps.1),
        )
        .unwrap()
    }

    #[test]
    fn frac_dist_examples() {
        assert_eq!(frac_dist(&rat(7, 3)), rat(1, 3));
        assert_eq!(frac_dist(&rat(1, 2)), rat(1, 2));
        assert_eq!(frac_dist(&rat(-5, 4)), rat(1, 4));
        assert_eq!(frac_dist(&rat(3, 1)), rat(0, 1));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(gsa_norm(&6.into(), &[rat(1, 2), rat(1, 3)]), rat(0, 1));
        assert_eq!(gsa_norm(&1.into(), &[rat(1, 3)]), rat(1, 3));
        assert_eq!(gsa_norm(&5.into(), &[rat(2, 5), rat(3, 7)]), rat(1, 7));
    }

    #[test]
    fn decide_and_count() {
        let a = inst(&[(1, 3)], 3, (1, 3));
        assert!(gsa_decide(&a).unwrap());
        assert_eq!(gsa_count(&a).unwrap(), 3);
        let b = inst(&[(1, 2)], 1, (1, 4));
        assert!(!gsa_decide(&b).unwrap());
        assert_eq!(gsa_count(&b).unwrap(), 0);
        let c = inst(&[(1, 2), (1, 3)], 6, (1, 6));
        assert_eq!(gsa_solutions(&c).unwrap(), vec![6]);
    }

    #[test]
    fn trivial_regime() {
        let t = inst(&[(1, 2)], 7, (1, 2));
        assert!(t.trivial);
        assert_eq!(gsa_count(&t).unwrap(), 7);
        assert!(GsaInstance::new(vec![rat(1, 2)], 3, rat(0, 1)).is_err());
        assert!(GsaInstance::new(vec![rat(1, 2)], 0, rat(1, 4)).is_err());
    }

    #[test]
    fn alpha_is_reduced() {
        let t = inst(&[(-1, 3), (7, 2)], 2, (1, 4));
        assert_eq!(t.alpha, vec![rat(2, 3), rat(1, 2)]);
    }

    #[test]
    fn budget_reported() {
        let t = inst(&[(1, 3)], 100, (1, 4));
        assert!(matches!(
            gsa_count_with_budget(&t, 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn band_vertices() {
        let t = inst(&[(1, 2)], 2, (1, 4));
        let v = vertices(&band_polygon(&t, 1).unwrap()).unwrap();
        let expected = vec![
            vec![rat(1, 1), rat(1, 4)],
            vec![rat(1, 1), rat(3, 4)],
            vec![rat(2, 1), rat(3, 4)],
            vec![rat(2, 1), rat(5, 4)],
        ];
        assert_eq!(v.vertices, expected);
    }

    #[test]
    fn band_points() {
        let t = inst(&[(1, 3)], 3, (1, 3));
        let pts = integer_points(&band_polygon(&t, 1).unwrap()).unwrap();
        assert_eq!(pts, vec![vec![1, 0], vec![2, 1], vec![3, 1]]);
    }

    #[test]
    fn zero_slope_band() {
        let t = inst(&[(0, 1)], 4, (1, 4));
        let pts = integer_points(&band_polygon(&t, 1).unwrap()).unwrap();
        assert_eq!(pts, (1..=4).map(|x| vec![x, 0]).collect::<Vec<_>>());
    }

    #[test]
    fn gap_slices() {
        let t = inst(&[(1, 2)], 2, (1, 4));
        let gap = gap_polygon(&t, 1).unwrap();
        let band = band_polygon(&t, 1).unwrap();
        assert_eq!(slice_range(&gap, 1), Some((1.into(), 1.into())));
        assert_eq!(slice_range(&band, 1), None);
        let t = inst(&[(1, 3)], 3, (1, 3));
        assert_eq!(slice_range(&gap_polygon(&t, 1).unwrap(), 3), None);
        assert_eq!(slice_range(&band_polygon(&t, 1).unwrap(), 3), Some((1.into(), 1.into())));
    }

    #[test]
    fn bad_index() {
        let t = inst(&[(1, 2)], 2, (1, 4));
        assert!(band_polygon(&t, 0).is_err());
        assert!(gap_polygon(&t, 2).is_err());
    }
}
