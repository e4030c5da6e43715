//! Folding a union of polytopes into a single polytope with `ceil(log2 r)`
//! extra tag coordinates, and the parity argument showing that fewer tag
//! coordinates cannot work.
//!
//! Part `j` is lifted to `part_j x {t_j}` where `t_j` is a distinct vertex
//! of the unit cube, and the result is the hull of all lifted parts. A
//! point of that hull with integer tag coordinates must sit over a single
//! cube vertex, so the integer points are exactly the lifted integer points
//! of the parts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{self, Rational};
use crate::error::{Error, Result};
use crate::geometry::{
    conv_contains, hull_facets, vertices, HPolytope, LinearInequality, Point, VPolytope,
    MAX_CONVERSION_DIM,
};

/// Tags for `r` parts: tag `j` is the binary expansion of `j`, low bit
/// first, padded to `ceil(log2 r)` bits.
pub fn tags(r: usize) -> Vec<Vec<i64>> {
    let ell = arith::ceil_log2(r);
    (0..r)
        .map(|j| (0..ell).map(|b| ((j >> b) & 1) as i64).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressedUnion {
    /// Dimension of the parts.
    pub n: usize,
    /// Number of tag coordinates.
    pub ell: usize,
    pub tags: Vec<Vec<i64>>,
    /// Lifted vertices of all parts, in dimension `n + ell`.
    pub lifted: VPolytope,
    pub polytope: HPolytope,
}

/// An H-system with no solutions, used when every part is empty.
fn infeasible(dim: usize) -> HPolytope {
    HPolytope::new(
        dim,
        vec![LinearInequality::new(vec![BigInt::zero(); dim], BigInt::from(-1))],
    )
    .expect("well-formed")
}

/// Lifts each part's vertices by its tag, without computing facets.
pub fn lift_union(parts: &[VPolytope]) -> Result<(VPolytope, Vec<Vec<i64>>)> {
    let n = parts.first().ok_or(Error::EmptyVertexSet)?.dim;
    for p in parts {
        if p.dim != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.dim,
            });
        }
    }
    let tags = tags(parts.len());
    let mut pts: Vec<Point> = Vec::new();
    for (part, tag) in parts.iter().zip(&tags) {
        for v in &part.vertices {
            let mut p = v.clone();
            p.extend(tag.iter().map(|&t| arith::rat(t, 1)));
            pts.push(p);
        }
    }
    let ell = tags.first().map_or(0, Vec::len);
    Ok((VPolytope::new(n + ell, pts)?, tags))
}

/// Compresses parts given by their vertices.
pub fn compress_vertices(parts: &[VPolytope]) -> Result<CompressedUnion> {
    let (lifted, tags) = lift_union(parts)?;
    let n = parts[0].dim;
    let ell = lifted.dim - n;
    if lifted.dim > MAX_CONVERSION_DIM {
        return Err(Error::DimensionTooLarge {
            dim: lifted.dim,
            max: MAX_CONVERSION_DIM,
        });
    }
    let polytope = if lifted.vertices.is_empty() {
        infeasible(lifted.dim)
    } else {
        hull_facets(&lifted)?
    };
    Ok(CompressedUnion {
        n,
        ell,
        tags,
        lifted,
        polytope,
    })
}

/// Compresses bounded H-described parts. A single part is returned
/// unchanged with no tag coordinates.
pub fn compress_union(parts: &[HPolytope]) -> Result<CompressedUnion> {
    let first = parts.first().ok_or(Error::EmptyVertexSet)?;
    let n = first.dim;
    let ell = arith::ceil_log2(parts.len());
    if n + ell > MAX_CONVERSION_DIM {
        return Err(Error::DimensionTooLarge {
            dim: n + ell,
            max: MAX_CONVERSION_DIM,
        });
    }
    let vs = parts.iter().map(vertices).collect::<Result<Vec<_>>>()?;
    if parts.len() == 1 {
        return Ok(CompressedUnion {
            n,
            ell: 0,
            tags: vec![vec![]],
            lifted: vs.into_iter().next().unwrap(),
            polytope: first.clone(),
        });
    }
    compress_vertices(&vs)
}

/// A pair of points whose lifts have an integral midpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PigeonholeWitness {
    pub i: usize,
    pub j: usize,
    /// Midpoint of the lifted points `(p_i, t_i)` and `(p_j, t_j)`.
    pub midpoint: Vec<BigInt>,
}

/// Given `r` points in strictly convex position with even coordinates and
/// integer tags of width `ell < ceil(log2 r)`, finds two points whose tags
/// agree modulo 2. Their lifted midpoint is an integer point whose
/// projection lies strictly inside the hull of the points, so no polytope
/// with those lifted vertices can project its integer points onto the
/// point set.
pub fn pigeonhole_witness(
    points: &[Vec<BigInt>],
    tags: &[Vec<BigInt>],
) -> Result<Option<PigeonholeWitness>> {
    let r = points.len();
    if r < 2 {
        return Err(Error::Precondition("need at least two points".into()));
    }
    if tags.len() != r {
        return Err(Error::Precondition(format!(
            "{} tags for {r} points",
            tags.len()
        )));
    }
    let dim = points[0].len();
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::Precondition("points differ in dimension".into()));
    }
    let ell = tags[0].len();
    if tags.iter().any(|t| t.len() != ell) {
        return Err(Error::Precondition("tags differ in width".into()));
    }
    if ell >= arith::ceil_log2(r) {
        return Err(Error::Precondition(format!(
            "tag width {ell} is not below ceil(log2 {r}) = {}",
            arith::ceil_log2(r)
        )));
    }
    if points.iter().flatten().any(|c| c.is_odd()) {
        return Err(Error::Precondition("coordinates must be even".into()));
    }
    let rat_pts: Vec<Point> = points
        .iter()
        .map(|p| p.iter().cloned().map(Rational::from_integer).collect())
        .collect();
    for (k, p) in rat_pts.iter().enumerate() {
        let others: Vec<Point> = rat_pts
            .iter()
            .enumerate()
            .filter(|&(m, _)| m != k)
            .map(|(_, q)| q.clone())
            .collect();
        if conv_contains(&others, p) {
            return Err(Error::Precondition(format!(
                "point {k} is not in convex position"
            )));
        }
    }
    for i in 0..r {
        for j in i + 1..r {
            let same = tags[i]
                .iter()
                .zip(&tags[j])
                .all(|(a, b)| (a - b).is_even());
            if same {
                let midpoint = points[i]
                    .iter()
                    .chain(&tags[i])
                    .zip(points[j].iter().chain(&tags[j]))
                    .map(|(a, b)| (a + b) / 2)
                    .collect();
                return Ok(Some(PigeonholeWitness { i, j, midpoint }));
            }
        }
    }
    Ok(None)
}
