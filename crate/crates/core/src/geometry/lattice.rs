//! Integer-point search inside boxes.
//!
//! Systems are compiled to `i128` rows when the coefficients are small and
//! fall back to `BigInt` otherwise. The search fixes coordinates in
//! lexicographic order, prunes a branch as soon as some row cannot be met
//! anywhere in the rest of the box, and solves the last coordinate as an
//! interval instead of scanning it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::hull::{minkowski_weyl, vertices};
use super::{narrow, HPolytope, LatticeBox, LinearInequality, DEFAULT_ENUMERATION_BUDGET};
use crate::arith;
use crate::error::{Error, Result};

/// Counter of membership tests shared across nested searches.
#[derive(Debug, Clone)]
pub struct Search {
    pub budget: u64,
    pub used: u64,
}

impl Search {
    pub fn new(budget: u64) -> Self {
        Search { budget, used: 0 }
    }

    pub(crate) fn tick(&mut self) -> Result<()> {
        self.charge(1)
    }

    pub(crate) fn charge(&mut self, n: u64) -> Result<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.budget {
            return Err(Error::BudgetExceeded {
                requested: self.used.to_string(),
                budget: self.budget,
                context: "membership tests".into(),
            });
        }
        Ok(())
    }
}

pub(crate) trait Scalar: Clone + Ord + Integer + Signed + From<i64> {
    /// Only called on values already clamped into an `i64` range.
    fn as_i64(&self) -> i64;
}

impl Scalar for i128 {
    fn as_i64(&self) -> i64 {
        *self as i64
    }
}

impl Scalar for BigInt {
    fn as_i64(&self) -> i64 {
        self.to_i64().expect("value clamped to an i64 range")
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Rows<T> {
    dim: usize,
    a: Vec<Vec<T>>,
    b: Vec<T>,
}

/// A compiled row system `A x <= b` over integer points.
#[derive(Clone, Debug)]
pub(crate) enum IntSystem {
    Small(Rows<i128>),
    Big(Rows<BigInt>),
}

impl IntSystem {
    pub fn new(dim: usize, rows: &[LinearInequality]) -> Self {
        let small = rows.iter().all(|r| {
            arith::abs_fits(&r.rhs, 80) && r.coeffs.iter().all(|c| arith::abs_fits(c, 60))
        });
        if small {
            IntSystem::Small(Rows {
                dim,
                a: rows
                    .iter()
                    .map(|r| r.coeffs.iter().map(|c| c.to_i128().unwrap()).collect())
                    .collect(),
                b: rows.iter().map(|r| r.rhs.to_i128().unwrap()).collect(),
            })
        } else {
            IntSystem::Big(Rows {
                dim,
                a: rows.iter().map(|r| r.coeffs.clone()).collect(),
                b: rows.iter().map(|r| r.rhs.clone()).collect(),
            })
        }
    }

    pub fn from_polytope(h: &HPolytope) -> Self {
        Self::new(h.dim, &h.rows)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        match self {
            IntSystem::Small(r) => r.contains(x),
            IntSystem::Big(r) => r.contains(x),
        }
    }

    /// Finds the lexicographically smallest completion of `prefix` inside
    /// the box `lo..=hi` (which covers the remaining coordinates).
    pub fn exists_in_box(
        &self,
        prefix: &[i64],
        lo: &[i64],
        hi: &[i64],
        search: &mut Search,
    ) -> Result<Option<Vec<i64>>> {
        match self {
            IntSystem::Small(r) => r.first_completion(prefix, lo, hi, search),
            IntSystem::Big(r) => r.first_completion(prefix, lo, hi, search),
        }
    }

    /// Whether every completion of `prefix` in the box satisfies all rows.
    pub fn forall_in_box(&self, prefix: &[i64], lo: &[i64], hi: &[i64]) -> bool {
        match self {
            IntSystem::Small(r) => r.forall(prefix, lo, hi),
            IntSystem::Big(r) => r.forall(prefix, lo, hi),
        }
    }

    /// Calls `f` on every completion of `prefix` in the box, in
    /// lexicographic order.
    pub fn for_each_in_box(
        &self,
        prefix: &[i64],
        lo: &[i64],
        hi: &[i64],
        search: &mut Search,
        f: &mut dyn FnMut(&[i64]),
    ) -> Result<()> {
        match self {
            IntSystem::Small(r) => r.walk(prefix, lo, hi, search, &mut |p| {
                f(p);
                false
            }),
            IntSystem::Big(r) => r.walk(prefix, lo, hi, search, &mut |p| {
                f(p);
                false
            }),
        }
        .map(|_| ())
    }

    /// Integer interval of the last coordinate once all others are fixed.
    #[cfg(test)]
    pub fn last_interval(&self, prefix: &[i64], lo: i64, hi: i64) -> Option<(i64, i64)> {
        match self {
            IntSystem::Small(r) => r.last_interval(&r.residual(prefix), lo, hi),
            IntSystem::Big(r) => r.last_interval(&r.residual(prefix), lo, hi),
        }
    }
}

impl<T: Scalar> Rows<T> {
    fn residual(&self, prefix: &[i64]) -> Vec<T> {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(row, b)| {
                let mut r = b.clone();
                for (c, &x) in row.iter().zip(prefix) {
                    r = r - c.clone() * T::from(x);
                }
                r
            })
            .collect()
    }

    fn contains(&self, x: &[i64]) -> bool {
        self.residual(x).iter().all(|r| !r.is_negative())
    }

    /// `min_rest[d][i]` = minimum of the row-`i` terms on coordinates
    /// `start+d+1 ..` over the box.
    fn min_rest(&self, start: usize, lo: &[i64], hi: &[i64]) -> Vec<Vec<T>> {
        let n = lo.len();
        let mut out = vec![vec![T::zero(); self.a.len()]; n];
        for d in (0..n.saturating_sub(1)).rev() {
            let j = d + 1;
            for (i, row) in self.a.iter().enumerate() {
                let c = &row[start + j];
                let t = if c.is_negative() {
                    c.clone() * T::from(hi[j])
                } else {
                    c.clone() * T::from(lo[j])
                };
                out[d][i] = out[d + 1][i].clone() + t;
            }
        }
        out
    }

    fn last_interval(&self, res: &[T], lo: i64, hi: i64) -> Option<(i64, i64)> {
        let j = self.dim - 1;
        let mut l = T::from(lo);
        let mut h = T::from(hi);
        for (row, r) in self.a.iter().zip(res) {
            let c = &row[j];
            if c.is_zero() {
                if r.is_negative() {
                    return None;
                }
            } else if c.is_positive() {
                let u = Integer::div_floor(r, c);
                if u < h {
                    h = u;
                }
            } else {
                let v = Integer::div_ceil(r, c);
                if v > l {
                    l = v;
                }
            }
            if l > h {
                return None;
            }
        }
        // Both ends lie inside [lo, hi], so they fit in i64.
        Some((l.as_i64(), h.as_i64()))
    }

    fn first_completion(
        &self,
        prefix: &[i64],
        lo: &[i64],
        hi: &[i64],
        search: &mut Search,
    ) -> Result<Option<Vec<i64>>> {
        let mut found = None;
        self.walk(prefix, lo, hi, search, &mut |p| {
            found = Some(p.to_vec());
            true
        })?;
        Ok(found)
    }

    /// Depth-first walk over completions. `visit` returns `true` to stop.
    fn walk(
        &self,
        prefix: &[i64],
        lo: &[i64],
        hi: &[i64],
        search: &mut Search,
        visit: &mut dyn FnMut(&[i64]) -> bool,
    ) -> Result<bool> {
        assert_eq!(prefix.len() + lo.len(), self.dim);
        let res = self.residual(prefix);
        if lo.iter().zip(hi).any(|(l, h)| l > h) {
            return Ok(false);
        }
        let mut point = prefix.to_vec();
        if lo.is_empty() {
            search.tick()?;
            if res.iter().all(|r| !r.is_negative()) {
                return Ok(visit(&point));
            }
            return Ok(false);
        }
        let min_rest = self.min_rest(prefix.len(), lo, hi);
        // Prune on the whole box before fixing anything.
        for (i, r) in res.iter().enumerate() {
            let c = &self.a[i][prefix.len()];
            let first = if c.is_negative() {
                c.clone() * T::from(hi[0])
            } else {
                c.clone() * T::from(lo[0])
            };
            if r.clone() - first < min_rest[0][i] {
                return Ok(false);
            }
        }
        self.walk_level(0, prefix.len(), &res, lo, hi, &min_rest, &mut point, search, visit)
    }

    #[allow(clippy::too_many_arguments)]
    fn walk_level(
        &self,
        d: usize,
        start: usize,
        res: &[T],
        lo: &[i64],
        hi: &[i64],
        min_rest: &[Vec<T>],
        point: &mut Vec<i64>,
        search: &mut Search,
        visit: &mut dyn FnMut(&[i64]) -> bool,
    ) -> Result<bool> {
        let j = start + d;
        if d + 1 == lo.len() {
            search.tick()?;
            if let Some((l, h)) = self.last_interval(res, lo[d], hi[d]) {
                for v in l..=h {
                    point.push(v);
                    let stop = visit(point);
                    point.pop();
                    if stop {
                        return Ok(true);
                    }
                }
            }
            return Ok(false);
        }
        let mut next = res.to_vec();
        'values: for v in lo[d]..=hi[d] {
            let tv = T::from(v);
            for (i, r) in res.iter().enumerate() {
                next[i] = r.clone() - self.a[i][j].clone() * tv.clone();
            }
            for (i, r) in next.iter().enumerate() {
                if *r < min_rest[d][i] {
                    continue 'values;
                }
            }
            point.push(v);
            let stop =
                self.walk_level(d + 1, start, &next, lo, hi, min_rest, point, search, visit)?;
            point.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn forall(&self, prefix: &[i64], lo: &[i64], hi: &[i64]) -> bool {
        if lo.iter().zip(hi).any(|(l, h)| l > h) {
            return true;
        }
        let start = prefix.len();
        self.residual(prefix).iter().enumerate().all(|(i, r)| {
            let mut worst = T::zero();
            for (k, (&l, &h)) in lo.iter().zip(hi).enumerate() {
                let c = &self.a[i][start + k];
                worst = worst
                    + if c.is_positive() {
                        c.clone() * T::from(h)
                    } else {
                        c.clone() * T::from(l)
                    };
            }
            worst <= *r
        })
    }
}

fn box_bounds(b: &LatticeBox) -> Result<(Vec<i64>, Vec<i64>)> {
    Ok((
        b.lo.iter().map(narrow).collect::<Result<_>>()?,
        b.hi.iter().map(narrow).collect::<Result<_>>()?,
    ))
}

fn check_volume(b: &LatticeBox, budget: u64) -> Result<()> {
    let vol = b.volume();
    if vol > BigInt::from(budget) {
        return Err(Error::BudgetExceeded {
            requested: vol.to_string(),
            budget,
            context: format!("bounding box lo={:?} hi={:?}", b.lo, b.hi),
        });
    }
    Ok(())
}

/// Smallest integer box containing the integer points of a bounded
/// polytope, read off its vertices.
pub fn bounding_box(h: &HPolytope) -> Result<LatticeBox> {
    vertices(h)?.bounding_box()
}

/// All integer points of a bounded polytope, sorted lexicographically,
/// using the default enumeration budget.
pub fn integer_points(h: &HPolytope) -> Result<Vec<Vec<i64>>> {
    integer_points_with_budget(h, DEFAULT_ENUMERATION_BUDGET)
}

pub fn integer_points_with_budget(h: &HPolytope, budget: u64) -> Result<Vec<Vec<i64>>> {
    let bbox = match bounding_box(h) {
        Ok(b) => b,
        Err(Error::Empty) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    if bbox.is_empty() {
        return Ok(Vec::new());
    }
    check_volume(&bbox, budget)?;
    let (lo, hi) = box_bounds(&bbox)?;
    let sys = IntSystem::from_polytope(h);
    let mut out = Vec::new();
    let mut search = Search::new(u64::MAX);
    sys.for_each_in_box(&[], &lo, &hi, &mut search, &mut |p| out.push(p.to_vec()))?;
    Ok(out)
}

/// Column-reduces the coefficient matrix with unimodular operations.
/// Returns the reduced rows restricted to their nonzero columns.
fn column_reduce(dim: usize, rows: &[LinearInequality]) -> (usize, Vec<LinearInequality>) {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.coeffs.clone()).collect();
    let mut col = 0;
    for i in 0..m.len() {
        if col == dim {
            break;
        }
        loop {
            let piv = (col..dim)
                .filter(|&j| !m[i][j].is_zero())
                .min_by_key(|&j| m[i][j].abs());
            let Some(p) = piv else { break };
            for row in m.iter_mut() {
                row.swap(col, p);
            }
            let mut done = true;
            for k in col + 1..dim {
                if m[i][k].is_zero() {
                    continue;
                }
                let q = m[i][k].div_floor(&m[i][col]);
                for row in m.iter_mut() {
                    let t = &row[col] * &q;
                    row[k] -= t;
                }
                if !m[i][k].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !m[i][col].is_zero() {
            col += 1;
        }
    }
    let reduced = m
        .into_iter()
        .zip(rows)
        .map(|(c, r)| LinearInequality::new(c[..col].to_vec(), r.rhs.clone()))
        .collect();
    (col, reduced)
}

/// Decides whether `{x in Z^dim : rows}` is nonempty. The system may be
/// unbounded; lineality is removed by a unimodular change of variables
/// and the remaining pointed polyhedron is searched over its vertices plus
/// one copy of the fundamental parallelepiped of its extreme rays.
pub fn integer_feasible(dim: usize, rows: &[LinearInequality], budget: u64) -> Result<bool> {
    let (rank, reduced) = column_reduce(dim, rows);
    if rank == 0 {
        return Ok(reduced.iter().all(|r| !r.rhs.is_negative()));
    }
    let mw = minkowski_weyl(rank, &reduced)?;
    if mw.points.is_empty() {
        return Ok(false);
    }
    let poly = super::VPolytope {
        dim: rank,
        vertices: mw.points,
    };
    let mut bbox = poly.bounding_box()?;
    for r in &mw.rays {
        for (j, c) in r.iter().enumerate() {
            if c.is_positive() {
                bbox.hi[j] += c;
            } else {
                bbox.lo[j] += c;
            }
        }
    }
    if bbox.is_empty() {
        return Ok(false);
    }
    check_volume(&bbox, budget)?;
    let (lo, hi) = box_bounds(&bbox)?;
    let sys = IntSystem::new(rank, &reduced);
    let mut search = Search::new(u64::MAX);
    Ok(sys.exists_in_box(&[], &lo, &hi, &mut search)?.is_some())
}
