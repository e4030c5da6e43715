//! GSA as an `exists forall exists` sentence over a single polytope in
//! dimension 6.
//!
//! Each band `P_i` is lifted to the plane `y = phi_i`, and `P` is the hull
//! of the lifts. For `y` on the Fibonacci chain, the slice of `P` at `y`
//! is exactly the band; every other `y` of the box `J` is absorbed by one
//! of the two regions `R1`, `R2`. The three pieces are then compressed
//! into one polytope with two tag coordinates.

use num_bigint::BigInt;
use num_traits::One;

use super::{fib_lift, product_vertices, Block, Constraint, Domain, QuantSentence, Quantifier};
use crate::arith::Rational;
use crate::compress::{compress_vertices, CompressedUnion};
use crate::error::Result;
use crate::fib::{build_gadget, FibGadget};
use crate::geometry::{vertices, LatticeBox, VPolytope};
use crate::gsa::GsaInstance;

/// Every intermediate object of the construction, for inspection.
#[derive(Clone, Debug)]
pub struct EaeConstruction {
    pub gadget: FibGadget,
    /// `conv(P'_1, ..., P'_d)` in `(x, y1, y2, w)`, as lifted vertices.
    pub p: VPolytope,
    /// `[0, N] x R1 x {0}` and `[0, N] x R2 x {0}`.
    pub r1_prime: VPolytope,
    pub r2_prime: VPolytope,
    /// Union of the three pieces in `(x, y1, y2, w, t1, t2)`.
    pub compressed: CompressedUnion,
    pub sentence: QuantSentence,
}

/// Vertices `(1, alpha_i +- eps)`, `(N, alpha_i N +- eps)` of band `i`.
pub(crate) fn band_vertices(inst: &GsaInstance, i: usize) -> VPolytope {
    let a = &inst.alpha[i];
    let pts = [Rational::one(), Rational::from_integer(inst.n.into())]
        .into_iter()
        .flat_map(|x| {
            let c = a * &x;
            [
                vec![x.clone(), &c - &inst.eps],
                vec![x.clone(), &c + &inst.eps],
            ]
        })
        .collect();
    VPolytope::new(2, pts).expect("two coordinates")
}

pub fn three_quantifier_construction(inst: &GsaInstance) -> Result<EaeConstruction> {
    // The gadget needs two points; a single target is listed twice.
    let d = inst.d().max(2);
    let gadget = build_gadget(d)?;
    let bands: Vec<VPolytope> = (0..d)
        .map(|i| band_vertices(inst, i.min(inst.d() - 1)))
        .collect();
    let p = fib_lift(&gadget, &bands, 1)?;
    let x_range = LatticeBox::new(vec![BigInt::from(0)], vec![inst.n.into()])?;
    let r1_prime = product_vertices(&x_range, &vertices(&gadget.r1)?, 1)?;
    let r2_prime = product_vertices(&x_range, &vertices(&gadget.r2)?, 1)?;
    let compressed = compress_vertices(&[r1_prime.clone(), r2_prime.clone(), p.clone()])?;
    let i_box = LatticeBox::new(vec![BigInt::one()], vec![inst.n.into()])?;
    let sentence = QuantSentence::new(
        vec![
            Block::exists(i_box),
            Block::forall(gadget.j_box.clone()),
            Block {
                q: Quantifier::Exists,
                domain: Domain::Unbounded(3),
            },
        ],
        Constraint::H(compressed.polytope.clone()),
    )?;
    Ok(EaeConstruction {
        gadget,
        p,
        r1_prime,
        r2_prime,
        compressed,
        sentence,
    })
}

/// `exists x in [1, N] forall y in J exists z in Z^3 : (x, y, z) in U`,
/// true exactly when the instance has a solution.
pub fn gsa_to_three_quantifiers(inst: &GsaInstance) -> Result<QuantSentence> {
    three_quantifier_construction(inst).map(|c| c.sentence)
}
