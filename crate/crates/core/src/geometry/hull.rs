use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::cone::{extreme_rays, NotPointed};
use super::{HPolytope, LinearInequality, Point, VPolytope, MAX_CONVERSION_DIM};
use crate::arith::{self, Rational};
use crate::error::{Error, Result};

/// Facet description of the convex hull of a finite point set, split into
/// the equations of its affine hull and the facets inside that hull.
#[derive(Clone, Debug)]
pub struct HullDescription {
    pub dim: usize,
    /// Affine dimension of the hull.
    pub affine_dim: usize,
    /// Each `(c, e)` says `c . x = e` on the hull.
    pub equalities: Vec<(Vec<BigInt>, BigInt)>,
    /// Facet rows; they only involve the pivot coordinates.
    pub facets: Vec<LinearInequality>,
}

impl HullDescription {
    pub fn to_hpolytope(&self) -> HPolytope {
        let mut rows = self.facets.clone();
        for (c, e) in &self.equalities {
            rows.push(LinearInequality::new(c.clone(), e.clone()));
            rows.push(LinearInequality::new(
                c.iter().map(|x| -x).collect(),
                -e.clone(),
            ));
        }
        HPolytope {
            dim: self.dim,
            rows,
        }
        .canonical()
    }

    /// Facets tight at `p`.
    pub fn tight_facets(&self, p: &[Rational]) -> Vec<usize> {
        self.facets
            .iter()
            .enumerate()
            .filter(|(_, f)| arith::dot_rat(&f.coeffs, p) == arith::rat_int(&f.rhs))
            .map(|(i, _)| i)
            .collect()
    }

    /// A hull point is extreme iff the normals of its tight facets have
    /// full rank inside the affine hull.
    pub fn is_extreme(&self, p: &[Rational]) -> bool {
        if self.affine_dim == 0 {
            return true;
        }
        let normals: Vec<Vec<Rational>> = self
            .tight_facets(p)
            .into_iter()
            .map(|i| self.facets[i].coeffs.iter().map(arith::rat_int).collect())
            .collect();
        if normals.len() < self.affine_dim {
            return false;
        }
        arith::rref(normals, self.dim).pivots.len() == self.affine_dim
    }
}

/// Computes the affine hull and facets of `conv(points)`.
pub(crate) fn describe(dim: usize, points: &[Point]) -> Result<HullDescription> {
    if dim > MAX_CONVERSION_DIM {
        return Err(Error::DimensionTooLarge {
            dim,
            max: MAX_CONVERSION_DIM,
        });
    }
    let Some(p0) = points.first() else {
        return Err(Error::EmptyVertexSet);
    };
    let diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
        .collect();
    let ech = arith::rref(diffs, dim);
    let k = ech.pivots.len();

    // Normals of the affine hull: one per free column of the echelon form.
    let mut equalities = Vec::new();
    for f in (0..dim).filter(|c| !ech.pivots.contains(c)) {
        let mut c = vec![Rational::zero(); dim];
        c[f] = arith::rat(1, 1);
        for (r, &pc) in ech.pivots.iter().enumerate() {
            c[pc] = -ech.rows[r][f].clone();
        }
        let e: Rational = c.iter().zip(p0).map(|(a, b)| a * b).sum();
        let mut all = c;
        all.push(e);
        let (mut ints, _) = arith::clear_denominators(&all);
        arith::primitive(&mut ints);
        let e = ints.pop().unwrap();
        equalities.push((ints, e));
    }

    let mut facets = Vec::new();
    if k > 0 {
        // Polar cone of the homogenized, projected points: h = (b, -a)
        // with b - a . p >= 0 for every point p.
        let gens: Vec<Vec<BigInt>> = points
            .iter()
            .map(|p| {
                let mut g = vec![arith::rat(1, 1)];
                g.extend(ech.pivots.iter().map(|&c| p[c].clone()));
                let (ints, _) = arith::clear_denominators(&g);
                ints
            })
            .collect();
        let mut gens_sorted = gens;
        gens_sorted.sort();
        gens_sorted.dedup();
        let cone = extreme_rays(&gens_sorted, k + 1)
            .expect("points spanning their affine hull give a pointed polar cone");
        for h in cone.rays {
            let mut coeffs = vec![BigInt::zero(); dim];
            for (i, &c) in ech.pivots.iter().enumerate() {
                coeffs[c] = -h[i + 1].clone();
            }
            facets.push(LinearInequality::new(coeffs, h[0].clone()).normalized());
        }
        facets.sort_by(|a, b| a.coeffs.cmp(&b.coeffs).then(a.rhs.cmp(&b.rhs)));
    }

    Ok(HullDescription {
        dim,
        affine_dim: k,
        equalities,
        facets,
    })
}

/// Facet description of `conv(V)`. Lower-dimensional hulls carry a pair
/// of opposite rows for each equation of their affine hull.
pub fn hull_facets(v: &VPolytope) -> Result<HPolytope> {
    Ok(describe(v.dim, &v.vertices)?.to_hpolytope())
}

pub(crate) struct MinkowskiWeyl {
    pub points: Vec<Point>,
    /// Primitive integer generators of the recession cone.
    pub rays: Vec<Vec<BigInt>>,
}

/// Splits a pointed polyhedron into its vertices and extreme rays.
pub(crate) fn minkowski_weyl(dim: usize, rows: &[LinearInequality]) -> Result<MinkowskiWeyl> {
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(rows.len() + 1);
    let mut x0 = vec![BigInt::zero(); dim + 1];
    x0[0] = BigInt::from(1);
    m.push(x0);
    for r in rows {
        let mut h = Vec::with_capacity(dim + 1);
        h.push(r.rhs.clone());
        h.extend(r.coeffs.iter().map(|c| -c));
        m.push(h);
    }
    let cone = match extreme_rays(&m, dim + 1) {
        Ok(c) => c,
        Err(NotPointed) => {
            // Quotient out the lineality space. The polyhedron is then
            // either empty or unbounded along a line.
            for l in arith::nullspace(&m, dim + 1) {
                m.push(l.iter().map(|c| -c).collect());
                m.push(l);
            }
            let cone = extreme_rays(&m, dim + 1).map_err(|NotPointed| Error::Unbounded)?;
            if cone.rays.iter().any(|h| !h[0].is_zero()) {
                return Err(Error::Unbounded);
            }
            return Ok(MinkowskiWeyl {
                points: Vec::new(),
                rays: Vec::new(),
            });
        }
    };
    let mut points = Vec::new();
    let mut rays = Vec::new();
    for h in cone.rays {
        if h[0].is_zero() {
            rays.push(h[1..].to_vec());
        } else {
            debug_assert!(h[0].is_positive());
            let d = arith::rat_int(&h[0]);
            points.push(h[1..].iter().map(|c| arith::rat_int(c) / &d).collect());
        }
    }
    points.sort();
    rays.sort();
    Ok(MinkowskiWeyl { points, rays })
}

/// Extreme points of a bounded H-polytope. An empty system yields an
/// empty vertex list; an unbounded one is an error.
pub fn vertices(h: &HPolytope) -> Result<VPolytope> {
    if h.dim > MAX_CONVERSION_DIM {
        return Err(Error::DimensionTooLarge {
            dim: h.dim,
            max: MAX_CONVERSION_DIM,
        });
    }
    let mw = minkowski_weyl(h.dim, &h.rows)?;
    if !mw.rays.is_empty() {
        return Err(Error::Unbounded);
    }
    Ok(VPolytope {
        dim: h.dim,
        vertices: mw.points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn lin(c: &[i64], r: i64) -> LinearInequality {
        LinearInequality::from_i64(c, r)
    }

    #[test]
    fn unit_square_facets() {
        let v = VPolytope::from_i64(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let h = hull_facets(&v).unwrap();
        assert_eq!(
            h.rows,
            vec![lin(&[-1, 0], 0), lin(&[0, -1], 0), lin(&[0, 1], 1), lin(&[1, 0], 1)]
        );
    }

    #[test]
    fn single_point_hull() {
        let v = VPolytope::from_i64(2, &[&[0, 0]]).unwrap();
        let h = hull_facets(&v).unwrap();
        let mut want = vec![lin(&[1, 0], 0), lin(&[-1, 0], 0), lin(&[0, 1], 0), lin(&[0, -1], 0)];
        want.sort_by(|a, b| a.coeffs.cmp(&b.coeffs));
        assert_eq!(h.rows, want);
    }

    #[test]
    fn rational_point_hull() {
        let v = VPolytope::new(1, vec![vec![rat(1, 2)]]).unwrap();
        let h = hull_facets(&v).unwrap();
        assert_eq!(h.rows, vec![lin(&[-2], -1), lin(&[2], 1)]);
    }

    #[test]
    fn segment_in_plane() {
        let v = VPolytope::from_i64(2, &[&[0, 0], &[2, 2], &[1, 1]]).unwrap();
        let h = hull_facets(&v).unwrap();
        let back = vertices(&h).unwrap();
        assert_eq!(back, VPolytope::from_i64(2, &[&[0, 0], &[2, 2]]).unwrap());
    }

    #[test]
    fn interval_vertices() {
        let h = HPolytope::new(1, vec![lin(&[-1], 0), lin(&[1], 1)]).unwrap();
        assert_eq!(
            vertices(&h).unwrap(),
            VPolytope::from_i64(1, &[&[0], &[1]]).unwrap()
        );
    }

    #[test]
    fn half_line_is_unbounded() {
        let h = HPolytope::new(1, vec![lin(&[-1], 0)]).unwrap();
        assert_eq!(vertices(&h), Err(Error::Unbounded));
    }

    #[test]
    fn infeasible_has_no_vertices() {
        let h = HPolytope::new(1, vec![lin(&[-1], 0), lin(&[1], -1)]).unwrap();
        assert!(vertices(&h).unwrap().vertices.is_empty());
    }

    #[test]
    fn dimension_cap() {
        let v = VPolytope::new(9, vec![vec![rat(0, 1); 9]]).unwrap();
        assert!(matches!(hull_facets(&v), Err(Error::DimensionTooLarge { .. })));
        assert!(matches!(
            hull_facets(&VPolytope { dim: 2, vertices: vec![] }),
            Err(Error::EmptyVertexSet)
        ));
    }

    #[test]
    fn cube_with_interior_point() {
        let mut pts: Vec<Vec<i64>> = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    pts.push(vec![2 * a, 2 * b, 2 * c]);
                }
            }
        }
        pts.push(vec![1, 1, 1]);
        let refs: Vec<&[i64]> = pts.iter().map(|p| p.as_slice()).collect();
        let v = VPolytope::from_i64(3, &refs).unwrap();
        let h = hull_facets(&v).unwrap();
        assert_eq!(h.rows.len(), 6);
        assert_eq!(vertices(&h).unwrap().vertices.len(), 8);
        assert_eq!(v.canonical().unwrap().vertices.len(), 8);
    }
}
