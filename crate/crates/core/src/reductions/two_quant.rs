//! GSA as `exists x in I forall z in K : (x, z) in U1 ∪ U2 ∪ U3` with
//! polytopes in dimension 4.
//!
//! For each `i`, `L_i` covers the `w` below the band and `M_i` the `w`
//! from the band's bottom edge upwards, so all of `[-1, T]` is covered at
//! `x` iff the band holds an integer. Both families are lifted along the
//! Fibonacci chain; the off-chain `y` of `J` are covered by `U1` (above)
//! and by the part of `U2` coming from `R2` (below).

use num_bigint::BigInt;
use num_traits::One;

use super::fib_lift;
use crate::arith::{self, Rational};
use crate::error::Result;
use crate::fib::{build_gadget, FibGadget};
use crate::geometry::{hull_facets, vertices, HPolytope, LatticeBox, Point, VPolytope};
use crate::gsa::GsaInstance;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoQuantSentence {
    pub i_box: LatticeBox,
    /// `J x [-1, T]`.
    pub k_box: LatticeBox,
    /// `U1, U2, U3` in `(x, y1, y2, w)`.
    pub parts: Vec<HPolytope>,
    pub t: BigInt,
    pub gadget: FibGadget,
}

fn quad(n: u64, bottom: impl Fn(&Rational) -> Rational, top: impl Fn(&Rational) -> Rational) -> VPolytope {
    let pts = [Rational::one(), Rational::from_integer(n.into())]
        .into_iter()
        .flat_map(|x| [vec![x.clone(), bottom(&x)], vec![x.clone(), top(&x)]])
        .collect();
    VPolytope::new(2, pts).expect("two coordinates")
}

pub fn gsa_to_two_quantifiers(inst: &GsaInstance) -> Result<TwoQuantSentence> {
    // The gadget needs two points; a single target is listed twice.
    let alpha: Vec<&Rational> = (0..inst.d().max(2))
        .map(|i| &inst.alpha[i.min(inst.d() - 1)])
        .collect();
    let d = alpha.len();
    let gadget = build_gadget(d)?;
    let t = inst.t_bound();
    let t_rat = arith::rat_int(&t);
    let minus_one = arith::rat(-1, 1);
    let one = Rational::one();
    // L_i: -1 <= w <= alpha_i x + eps - 1;  M_i: alpha_i x - eps <= w <= T.
    let l_parts: Vec<VPolytope> = alpha
        .iter()
        .map(|&a| quad(inst.n, |_| minus_one.clone(), |x| a * x + &inst.eps - &one))
        .collect();
    let m_parts: Vec<VPolytope> = alpha
        .iter()
        .map(|&a| quad(inst.n, |x| a * x - &inst.eps, |_| t_rat.clone()))
        .collect();
    let l = fib_lift(&gadget, &l_parts, 1)?;
    let m = fib_lift(&gadget, &m_parts, 1)?;

    let x_box = LatticeBox::new(vec![BigInt::one()], vec![inst.n.into()])?;
    let w_box = LatticeBox::new(vec![BigInt::from(-1)], vec![t.clone()])?;
    let u1 = HPolytope::new(
        4,
        x_box
            .to_hpolytope()
            .embed(4, 0)
            .rows
            .into_iter()
            .chain(gadget.r1.embed(4, 1).rows)
            .chain(w_box.to_hpolytope().embed(4, 3).rows)
            .collect(),
    )?
    .canonical();

    let mut u2_pts: Vec<Point> = l.vertices.clone();
    for x in [Rational::one(), Rational::from_integer(inst.n.into())] {
        for y in &vertices(&gadget.r2)?.vertices {
            for w in [minus_one.clone(), t_rat.clone()] {
                u2_pts.push(vec![x.clone(), y[0].clone(), y[1].clone(), w]);
            }
        }
    }
    let u2 = hull_facets(&VPolytope::new(4, u2_pts)?)?;
    let u3 = hull_facets(&m)?;
    Ok(TwoQuantSentence {
        i_box: x_box,
        k_box: gadget.j_box.product(&w_box),
        parts: vec![u1, u2, u3],
        t,
        gadget,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn slice_over_fib_point() {
        // alpha = 1/2, eps = 1/4, N = 2, T = 2: at x = 2 the band has w = 1;
        // L covers {-1, 0}, M covers {1, 2}.
        let t = GsaInstance::new(vec![rat(1, 2), rat(1, 2)], 2, rat(1, 4)).unwrap();
        let s = gsa_to_two_quantifiers(&t).unwrap();
        assert_eq!(s.t, BigInt::from(2));
        let phi: Vec<i64> = s.gadget.phi[0].iter().map(|v| i64::try_from(v).unwrap()).collect();
        let covered = |part: usize, w: i64| s.parts[part].contains_i64(&[2, phi[0], phi[1], w]);
        let l: Vec<i64> = (-1..=2).filter(|&w| covered(1, w)).collect();
        let m: Vec<i64> = (-1..=2).filter(|&w| covered(2, w)).collect();
        assert_eq!(l, vec![-1, 0]);
        assert_eq!(m, vec![1, 2]);
    }

    #[test]
    fn boxes() {
        let t = GsaInstance::new(vec![rat(1, 3), rat(2, 3)], 3, rat(1, 3)).unwrap();
        let s = gsa_to_two_quantifiers(&t).unwrap();
        assert_eq!(s.i_box, LatticeBox::from_i64(&[1], &[3]).unwrap());
        assert_eq!(s.k_box, LatticeBox::from_i64(&[1, 0, -1], &[2, 1, 3]).unwrap());
        assert!(s.parts.iter().all(|p| p.dim == 4));
    }
}
