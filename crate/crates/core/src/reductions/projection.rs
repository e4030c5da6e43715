//! #GSA as a projection count of the difference of two polytopes in
//! dimension 3, and the triangulation of that difference.
//!
//! Gap `i` (the `w` strictly between two consecutive bands) is shifted up
//! by `m_i` and placed in the plane `y = i`. `U` is the hull of the gaps'
//! lower edges together with the base points `(1, i, 0)` and `(N, i, 0)`,
//! and `V` is the same over the upper edges. The `m_i` grow concavely
//! enough that each plane `y = i` only sees its own gap, so `V \ U` in that
//! plane is exactly the shifted gap, and an `x` is bad for the instance iff
//! some plane has an integer point of `V \ U` over it.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::arith::{self, Rational};
use crate::error::{Error, Result};
use crate::geometry::{
    hull_facets, triangulate, vertices, HPolytope, LinearInequality, Point, VPolytope,
};
use crate::gsa::{gap_polygon, GsaInstance};

/// `|E_1(V \ U)| = N - #solutions`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionInstance {
    pub u: HPolytope,
    pub v: HPolytope,
    pub n: u64,
    /// Integer height bound `ceil(1 + N max alpha_i)`.
    pub t: BigInt,
    /// Shift of gap `i` in `w`.
    pub m: Vec<BigInt>,
    pub u_vertices: VPolytope,
    pub v_vertices: VPolytope,
}

/// Value at `x` of the sharpened upper edge `b w + a x <= r` of a gap.
fn upper_edge(gap: &HPolytope, x: &Rational) -> Rational {
    let row = gap
        .rows
        .iter()
        .find(|r| r.coeffs[1].is_positive())
        .expect("gap polygon has an upper edge");
    (arith::rat_int(&row.rhs) - arith::rat_int(&row.coeffs[0]) * x) / arith::rat_int(&row.coeffs[1])
}

pub fn count_gsa_to_projection(inst: &GsaInstance) -> Result<ProjectionInstance> {
    let d = inst.d();
    let t = inst.t_bound();
    let two_d = BigInt::from(2 * d);
    let m: Vec<BigInt> = (1..=d)
        .map(|i| {
            let i = BigInt::from(i);
            BigInt::from(4) * &t * &i * (&two_d - &i)
        })
        .collect();
    let xs = [Rational::one(), Rational::from_integer(inst.n.into())];
    let mut u_pts: Vec<Point> = Vec::new();
    let mut v_pts: Vec<Point> = Vec::new();
    for i in 0..d {
        let y = arith::rat(i as i64 + 1, 1);
        let shift = arith::rat_int(&m[i]);
        let gap = gap_polygon(inst, i + 1)?;
        for x in &xs {
            // The lower edge stays open: an integer point of the plane lies
            // in V \ U iff it is strictly above it.
            let lower = &inst.alpha[i] * x + &inst.eps;
            let upper = if inst.trivial {
                lower.clone()
            } else {
                upper_edge(&gap, x)
            };
            let base = vec![x.clone(), y.clone(), Rational::from_integer(0.into())];
            u_pts.push(base.clone());
            v_pts.push(base);
            u_pts.push(vec![x.clone(), y.clone(), &shift + lower]);
            v_pts.push(vec![x.clone(), y.clone(), &shift + upper]);
        }
    }
    let u_vertices = VPolytope::new(3, u_pts)?;
    let v_vertices = VPolytope::new(3, v_pts)?;
    let u = hull_facets(&u_vertices)?;
    let v = hull_facets(&v_vertices)?;
    if let Some(p) = u_vertices.vertices.iter().find(|p| !v.contains_rational(p)) {
        return Err(Error::NotContained(format!("vertex {p:?} of U lies outside V")));
    }
    Ok(ProjectionInstance {
        u,
        v,
        n: inst.n,
        t,
        m,
        u_vertices,
        v_vertices,
    })
}

/// Splits `Q \ P` into simplices with exactly the same integer points.
///
/// An integer point leaves `P` iff it violates some row `a x <= b` of `P`
/// by at least one, so `Q \ P` has the integer points of the disjoint
/// pieces `Q ∩ {a_r x >= b_r + 1} ∩ {a_s x <= b_s : s < r}`. Each piece is
/// triangulated; simplices of one piece meet face to face and different
/// pieces are disjoint. A piece of lower dimension contributes simplices
/// with fewer vertices.
pub fn complement_to_simplices(p: &HPolytope, q: &HPolytope) -> Result<Vec<VPolytope>> {
    if p.dim != q.dim {
        return Err(Error::DimensionMismatch {
            expected: q.dim,
            found: p.dim,
        });
    }
    let pv = vertices(p)?;
    if let Some(x) = pv.vertices.iter().find(|x| !q.contains_rational(x)) {
        return Err(Error::NotContained(format!("vertex {x:?} of P lies outside Q")));
    }
    vertices(q)?;
    let mut out = Vec::new();
    for (r, row) in p.rows.iter().enumerate() {
        let flipped = LinearInequality::new(
            row.coeffs.iter().map(|c| -c).collect(),
            -(&row.rhs + BigInt::one()),
        );
        let piece = q.with_rows(p.rows[..r].iter().cloned().chain(std::iter::once(flipped)));
        let pv = vertices(&piece)?;
        if pv.vertices.is_empty() {
            continue;
        }
        out.extend(triangulate(&pv)?);
    }
    Ok(out)
}
