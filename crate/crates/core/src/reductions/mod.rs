//! Instance compilers: each turns a small number-theoretic or Boolean
//! instance into polytopes and quantified integer sentences whose truth
//! (or projection count) encodes the original answer.

mod dbs;
mod eae;
mod projection;
mod qsat;
mod two_quant;

use std::fmt;

use num_bigint::BigInt;

use crate::arith::{self, Rational};
use crate::error::{Error, Result};
use crate::fib::FibGadget;
use crate::geometry::{HPolytope, LatticeBox, Point, VPolytope};

pub use dbs::{dbs_split, Subsystem};
pub use eae::{gsa_to_three_quantifiers, three_quantifier_construction, EaeConstruction};
pub use projection::{
    complement_to_simplices, count_gsa_to_projection, ProjectionInstance,
};
pub use qsat::{
    bit_gadget_rows, q3sat_construction, q3sat_to_sentence, Literal, Q3SatConstruction,
    Q3SatInstance,
};
pub use two_quant::{gsa_to_two_quantifiers, TwoQuantSentence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Exists,
    Forall,
}

impl Quantifier {
    pub fn flip(self) -> Self {
        match self {
            Quantifier::Exists => Quantifier::Forall,
            Quantifier::Forall => Quantifier::Exists,
        }
    }
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantifier::Exists => "exists",
            Quantifier::Forall => "forall",
        })
    }
}

/// Range of one quantifier block.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Box(LatticeBox),
    /// All of `Z^k`; only allowed for an innermost existential block.
    Unbounded(usize),
}

impl Domain {
    pub fn dim(&self) -> usize {
        match self {
            Domain::Box(b) => b.dim(),
            Domain::Unbounded(k) => *k,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub q: Quantifier,
    pub domain: Domain,
}

impl Block {
    pub fn exists(b: LatticeBox) -> Self {
        Block {
            q: Quantifier::Exists,
            domain: Domain::Box(b),
        }
    }

    pub fn forall(b: LatticeBox) -> Self {
        Block {
            q: Quantifier::Forall,
            domain: Domain::Box(b),
        }
    }
}

/// The final test of a sentence. Facet form is the normal case; the
/// vertex form is kept when the ambient dimension is too large for an
/// exact facet enumeration, and membership is then decided by linear
/// programming.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Constraint {
    H(HPolytope),
    V(VPolytope),
}

impl Constraint {
    pub fn dim(&self) -> usize {
        match self {
            Constraint::H(h) => h.dim,
            Constraint::V(v) => v.dim,
        }
    }
}

/// `Q_1 x_1 in D_1 ... Q_m x_m in D_m : (x_1, ..., x_m) in constraint`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuantSentence {
    pub blocks: Vec<Block>,
    pub constraint: Constraint,
}

impl QuantSentence {
    pub fn new(blocks: Vec<Block>, constraint: Constraint) -> Result<Self> {
        let total: usize = blocks.iter().map(|b| b.domain.dim()).sum();
        if total != constraint.dim() {
            return Err(Error::DimensionMismatch {
                expected: constraint.dim(),
                found: total,
            });
        }
        for (i, b) in blocks.iter().enumerate() {
            if let Domain::Unbounded(_) = b.domain {
                if i + 1 != blocks.len() || b.q != Quantifier::Exists {
                    return Err(Error::InvalidInstance(
                        "an unbounded block must be the innermost existential block".into(),
                    ));
                }
            }
        }
        Ok(QuantSentence { blocks, constraint })
    }

    /// Coordinate offset of each block.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = 0;
        self.blocks
            .iter()
            .map(|b| {
                let o = off;
                off += b.domain.dim();
                o
            })
            .collect()
    }
}

/// `(p, phi_i)` with the two gadget coordinates inserted at position `at`.
pub(crate) fn fib_lift(g: &FibGadget, parts: &[VPolytope], at: usize) -> Result<VPolytope> {
    let dim = parts.first().ok_or(Error::EmptyVertexSet)?.dim + 2;
    let mut pts: Vec<Point> = Vec::new();
    for (part, phi) in parts.iter().zip(&g.phi) {
        for v in &part.vertices {
            let mut p = v[..at].to_vec();
            p.extend(phi.iter().map(arith::rat_int));
            p.extend_from_slice(&v[at..]);
            pts.push(p);
        }
    }
    VPolytope::new(dim, pts)
}

/// Vertices of `head x region x {0}^tail` for a box `head` and a polygon
/// `region` given by its vertices.
pub(crate) fn product_vertices(head: &LatticeBox, region: &VPolytope, tail: usize) -> Result<VPolytope> {
    let corners = corners(head);
    let mut pts: Vec<Point> = Vec::new();
    for c in &corners {
        for v in &region.vertices {
            let mut p: Point = c.iter().map(arith::rat_int).collect();
            p.extend_from_slice(v);
            p.extend(std::iter::repeat_with(|| Rational::from_integer(0.into())).take(tail));
            pts.push(p);
        }
    }
    VPolytope::new(head.dim() + region.dim + tail, pts)
}

pub(crate) fn corners(b: &LatticeBox) -> Vec<Vec<BigInt>> {
    let mut out = vec![Vec::new()];
    for (lo, hi) in b.lo.iter().zip(&b.hi) {
        let mut next = Vec::new();
        for c in &out {
            for v in if lo == hi { vec![lo] } else { vec![lo, hi] } {
                let mut c = c.clone();
                c.push(v.clone());
                next.push(c);
            }
        }
        out = next;
    }
    out
}
