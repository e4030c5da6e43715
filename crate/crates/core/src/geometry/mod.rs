//! Exact polyhedral computation in fixed small dimension.
//!
//! Everything here works over arbitrary-precision integers and rationals.
//! Polytopes come in two flavours, [`HPolytope`] (integer inequality
//! system) and [`VPolytope`] (rational vertex list), converted into each
//! other by an exact double-description cone enumeration.

mod cone;
mod hull;
mod lattice;
mod lp;
mod triangulate;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{self, Rational};
use crate::error::{Error, Result};

pub use hull::{hull_facets, vertices, HullDescription};
pub use lattice::{bounding_box, integer_feasible, integer_points, integer_points_with_budget};
pub(crate) use lattice::IntSystem;
pub use lattice::Search;
pub use lp::conv_contains;
pub use triangulate::triangulate;

/// Largest ambient dimension accepted by the V/H conversions.
pub const MAX_CONVERSION_DIM: usize = 8;

/// Default ceiling on candidate lattice points per enumeration call.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

/// One row `coeffs · x <= rhs` (or `<` when `strict`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearInequality {
    pub coeffs: Vec<BigInt>,
    pub rhs: BigInt,
    pub strict: bool,
}

impl LinearInequality {
    pub fn new(coeffs: Vec<BigInt>, rhs: BigInt) -> Self {
        LinearInequality {
            coeffs,
            rhs,
            strict: false,
        }
    }

    pub fn from_i64(coeffs: &[i64], rhs: i64) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), rhs.into())
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// Divides coefficients and right-hand side by their common gcd.
    pub fn normalized(mut self) -> Self {
        let g = arith::gcd_all(self.coeffs.iter().chain(std::iter::once(&self.rhs)));
        if !g.is_zero() && g != BigInt::from(1) {
            for c in self.coeffs.iter_mut() {
                *c /= &g;
            }
            self.rhs /= &g;
        }
        self
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn holds_rational(&self, x: &[Rational]) -> bool {
        let lhs = arith::dot_rat(&self.coeffs, x);
        let rhs = arith::rat_int(&self.rhs);
        if self.strict {
            lhs < rhs
        } else {
            lhs <= rhs
        }
    }

    pub fn holds_int(&self, x: &[BigInt]) -> bool {
        let lhs = arith::dot(&self.coeffs, x);
        if self.strict {
            lhs < self.rhs
        } else {
            lhs <= self.rhs
        }
    }

    /// Embeds the row into a larger space, placing the coefficients at
    /// `offset` and zeros elsewhere.
    pub fn embed(&self, dim: usize, offset: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); dim];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[offset + i] = c.clone();
        }
        LinearInequality {
            coeffs,
            rhs: self.rhs.clone(),
            strict: self.strict,
        }
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .cmp(&other.coeffs)
            .then_with(|| self.rhs.cmp(&other.rhs))
    }
}

impl fmt::Display for LinearInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if a != BigInt::from(1) {
                write!(f, "{a}")?;
            }
            write!(f, "x{}", i + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        let op = if self.strict { "<" } else { "<=" };
        write!(f, " {op} {}", self.rhs)
    }
}

/// A linear inequality with rational coefficients, as it appears before
/// denominators are cleared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInequality {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
    pub strict: bool,
}

/// Turns a rational inequality into an integer one with the same integer
/// solutions: denominators are cleared and `a < b` becomes `a <= b - 1`.
/// Non-strict input only has its denominators cleared.
pub fn sharpen_strict(ineq: &RationalInequality) -> LinearInequality {
    let mut all = ineq.coeffs.clone();
    all.push(ineq.rhs.clone());
    let (mut ints, _) = arith::clear_denominators(&all);
    let mut rhs = ints.pop().expect("rhs present");
    if ineq.strict {
        rhs -= 1;
    }
    LinearInequality::new(ints, rhs).normalized()
}

/// A polyhedron `{x : A x <= b}` given by closed integer rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HPolytope {
    pub dim: usize,
    pub rows: Vec<LinearInequality>,
}

impl HPolytope {
    pub fn new(dim: usize, rows: Vec<LinearInequality>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Precondition("dimension must be positive".into()));
        }
        for r in &rows {
            if r.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.dim(),
                });
            }
            if r.strict {
                return Err(Error::Precondition(
                    "HPolytope rows must be closed; sharpen strict rows first".into(),
                ));
            }
        }
        Ok(HPolytope { dim, rows })
    }

    /// gcd-reduces every row, drops duplicates and sorts rows
    /// lexicographically by `(coeffs, rhs)`.
    pub fn canonical(mut self) -> Self {
        self.rows = self.rows.into_iter().map(LinearInequality::normalized).collect();
        self.rows.sort_by(LinearInequality::canonical_cmp);
        self.rows.dedup();
        self
    }

    pub fn contains_rational(&self, x: &[Rational]) -> bool {
        self.rows.iter().all(|r| r.holds_rational(x))
    }

    pub fn contains_int(&self, x: &[BigInt]) -> bool {
        self.rows.iter().all(|r| r.holds_int(x))
    }

    pub fn contains_i64(&self, x: &[i64]) -> bool {
        let x: Vec<BigInt> = x.iter().map(|&v| v.into()).collect();
        self.contains_int(&x)
    }

    /// Cartesian-style intersection with extra rows.
    pub fn with_rows(&self, extra: impl IntoIterator<Item = LinearInequality>) -> Self {
        let mut rows = self.rows.clone();
        rows.extend(extra);
        HPolytope {
            dim: self.dim,
            rows,
        }
    }

    /// Embeds the polytope into `dim` coordinates starting at `offset`;
    /// the remaining coordinates are unconstrained.
    pub fn embed(&self, dim: usize, offset: usize) -> Self {
        HPolytope {
            dim,
            rows: self.rows.iter().map(|r| r.embed(dim, offset)).collect(),
        }
    }
}

impl fmt::Display for HPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "HPolytope(dim {}, {} rows)", self.dim, self.rows.len())?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

pub type Point = Vec<Rational>;

/// A polytope given as the convex hull of rational points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VPolytope {
    pub dim: usize,
    pub vertices: Vec<Point>,
}

impl VPolytope {
    /// Builds a V-polytope, sorting and deduplicating the points.
    pub fn new(dim: usize, mut vertices: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Precondition("dimension must be positive".into()));
        }
        for v in &vertices {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
        }
        vertices.sort();
        vertices.dedup();
        Ok(VPolytope { dim, vertices })
    }

    pub fn from_i64(dim: usize, pts: &[&[i64]]) -> Result<Self> {
        Self::new(
            dim,
            pts.iter()
                .map(|p| p.iter().map(|&c| arith::rat(c, 1)).collect())
                .collect(),
        )
    }

    /// Keeps only the extreme points.
    pub fn canonical(self) -> Result<Self> {
        if self.vertices.len() <= 1 {
            return Ok(self);
        }
        let desc = hull::describe(self.dim, &self.vertices)?;
        let keep = self
            .vertices
            .iter()
            .filter(|v| desc.is_extreme(v))
            .cloned()
            .collect();
        Ok(VPolytope {
            dim: self.dim,
            vertices: keep,
        })
    }

    /// Smallest integer box containing the polytope's integer points.
    pub fn bounding_box(&self) -> Result<LatticeBox> {
        if self.vertices.is_empty() {
            return Err(Error::Empty);
        }
        let lo = (0..self.dim)
            .map(|j| {
                self.vertices
                    .iter()
                    .map(|v| arith::ceil(&v[j]))
                    .min()
                    .unwrap()
            })
            .collect();
        let hi = (0..self.dim)
            .map(|j| {
                self.vertices
                    .iter()
                    .map(|v| arith::floor(&v[j]))
                    .max()
                    .unwrap()
            })
            .collect();
        Ok(LatticeBox { lo, hi })
    }
}

/// Closed integer box `[lo_1, hi_1] x ... x [lo_n, hi_n]`. A box with
/// some `lo_j > hi_j` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeBox {
    pub lo: Vec<BigInt>,
    pub hi: Vec<BigInt>,
}

impl LatticeBox {
    pub fn new(lo: Vec<BigInt>, hi: Vec<BigInt>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                found: hi.len(),
            });
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(Error::Precondition("box has lo > hi".into()));
        }
        Ok(LatticeBox { lo, hi })
    }

    pub fn from_i64(lo: &[i64], hi: &[i64]) -> Result<Self> {
        Self::new(
            lo.iter().map(|&v| v.into()).collect(),
            hi.iter().map(|&v| v.into()).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(l, h)| l > h)
    }

    /// Number of integer points.
    pub fn volume(&self) -> BigInt {
        if self.is_empty() {
            return BigInt::zero();
        }
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| h - l + 1)
            .product()
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(v, (l, h))| l <= v && v <= h)
    }

    pub fn product(&self, other: &LatticeBox) -> LatticeBox {
        let mut lo = self.lo.clone();
        lo.extend(other.lo.iter().cloned());
        let mut hi = self.hi.clone();
        hi.extend(other.hi.iter().cloned());
        LatticeBox { lo, hi }
    }

    pub fn project(&self, coords: std::ops::Range<usize>) -> LatticeBox {
        LatticeBox {
            lo: self.lo[coords.clone()].to_vec(),
            hi: self.hi[coords].to_vec(),
        }
    }

    /// Grows every side by `pad`.
    pub fn padded(&self, pad: i64) -> LatticeBox {
        LatticeBox {
            lo: self.lo.iter().map(|v| v - pad).collect(),
            hi: self.hi.iter().map(|v| v + pad).collect(),
        }
    }

    /// Rows describing the box.
    pub fn rows(&self) -> Vec<LinearInequality> {
        let n = self.dim();
        let mut rows = Vec::with_capacity(2 * n);
        for j in 0..n {
            let mut c = vec![BigInt::zero(); n];
            c[j] = BigInt::from(1);
            rows.push(LinearInequality::new(c.clone(), self.hi[j].clone()));
            c[j] = BigInt::from(-1);
            rows.push(LinearInequality::new(c, -self.lo[j].clone()));
        }
        rows
    }

    pub fn to_hpolytope(&self) -> HPolytope {
        HPolytope {
            dim: self.dim(),
            rows: self.rows(),
        }
        .canonical()
    }

    /// Iterates the integer points lexicographically.
    pub fn points(&self) -> Result<Vec<Vec<i64>>> {
        let lo: Vec<i64> = self.lo.iter().map(narrow).collect::<Result<_>>()?;
        let hi: Vec<i64> = self.hi.iter().map(narrow).collect::<Result<_>>()?;
        let mut out = Vec::new();
        if self.is_empty() {
            return Ok(out);
        }
        let mut cur = lo.clone();
        loop {
            out.push(cur.clone());
            let mut j = cur.len();
            loop {
                if j == 0 {
                    return Ok(out);
                }
                j -= 1;
                if cur[j] < hi[j] {
                    cur[j] += 1;
                    for k in j + 1..cur.len() {
                        cur[k] = lo[k];
                    }
                    break;
                }
            }
            if cur.is_empty() {
                return Ok(out);
            }
        }
    }
}

pub(crate) fn narrow(v: &BigInt) -> Result<i64> {
    arith::to_i64(v)
        .filter(|x| x.unsigned_abs() < (1u64 << 40))
        .ok_or_else(|| Error::BudgetExceeded {
            requested: v.to_string(),
            budget: 1 << 40,
            context: "coordinate magnitude".into(),
        })
}
