use super::hull::describe;
use super::{Point, VPolytope};
use crate::error::Result;

/// Pulling triangulation of `conv(V)`.
///
/// The lexicographically smallest vertex is joined to the triangulations
/// of all facets that avoid it, recursively. Because the pulled vertex of
/// every face is chosen from one global order, shared faces are split the
/// same way from both sides and the simplices meet face to face. Each
/// simplex has `k + 1` vertices where `k` is the affine dimension of the
/// hull.
pub fn triangulate(v: &VPolytope) -> Result<Vec<VPolytope>> {
    let ext = v.clone().canonical()?;
    let simplices = pull(v.dim, ext.vertices)?;
    Ok(simplices
        .into_iter()
        .map(|mut s| {
            s.sort();
            VPolytope {
                dim: v.dim,
                vertices: s,
            }
        })
        .collect())
}

fn pull(dim: usize, pts: Vec<Point>) -> Result<Vec<Vec<Point>>> {
    let desc = describe(dim, &pts)?;
    if pts.len() == desc.affine_dim + 1 {
        return Ok(vec![pts]);
    }
    let apex = pts[0].clone();
    let mut out = Vec::new();
    for f in 0..desc.facets.len() {
        let on: Vec<Point> = pts
            .iter()
            .filter(|p| desc.tight_facets(p).contains(&f))
            .cloned()
            .collect();
        if on.contains(&apex) {
            continue;
        }
        for mut s in pull(dim, on)? {
            s.insert(0, apex.clone());
            out.push(s);
        }
    }
    Ok(out)
}
