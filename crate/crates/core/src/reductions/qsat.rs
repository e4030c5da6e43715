//! Quantified 3-SAT with `k` Boolean blocks as a `(k + 2)`-quantifier
//! integer sentence over one polytope in dimension `k + 7`.
//!
//! Block `j` of `ell` Booleans becomes an integer `x_j` in `[0, 2^ell)`,
//! and a literal on bit `s` becomes a two-row system in `(x_j, w)` whose
//! integer solutions in `w` exist exactly when the bit has the right
//! value. Each clause is the union of three such systems, compressed into
//! `G_i`; the conjunction over clauses then goes through the same
//! Fibonacci construction as the GSA bands.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{fib_lift, product_vertices, Block, Constraint, QuantSentence, Quantifier};
use crate::arith::{self, Rational};
use crate::compress::{compress_vertices, lift_union};
use crate::error::{Error, Result};
use crate::fib::{build_gadget, FibGadget};
use crate::geometry::{
    sharpen_strict, vertices, HPolytope, LatticeBox, LinearInequality, RationalInequality,
    VPolytope, MAX_CONVERSION_DIM,
};

/// `u_{block, index}` or its negation; both indices start at 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub block: usize,
    pub index: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(block: usize, index: usize) -> Self {
        Literal {
            block,
            index,
            positive: true,
        }
    }

    pub fn neg(block: usize, index: usize) -> Self {
        Literal {
            block,
            index,
            positive: false,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bang = if self.positive { "" } else { "!" };
        write!(f, "{bang}u{}_{}", self.block, self.index)
    }
}

/// `Q_1 u_1 ... Q_k u_k : AND_i (a_i OR b_i OR c_i)` with `u_j` in
/// `{0,1}^ell`, alternating quantifiers and `Q_k` existential.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Q3SatInstance {
    pub k: usize,
    pub ell: usize,
    pub prefix: Vec<Quantifier>,
    pub clauses: Vec<[Literal; 3]>,
}

impl Q3SatInstance {
    pub fn new(k: usize, ell: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        if k == 0 || ell == 0 {
            return Err(Error::InvalidInstance("k and ell must be positive".into()));
        }
        if ell > 30 {
            return Err(Error::InvalidInstance(format!("ell = {ell} is too large")));
        }
        if clauses.is_empty() {
            return Err(Error::InvalidInstance("at least one clause is required".into()));
        }
        for lit in clauses.iter().flatten() {
            if lit.block == 0 || lit.block > k || lit.index == 0 || lit.index > ell {
                return Err(Error::InvalidInstance(format!(
                    "literal {lit} outside blocks 1..={k}, indices 1..={ell}"
                )));
            }
        }
        let prefix = (1..=k)
            .map(|j| {
                if (k - j).is_multiple_of(2) {
                    Quantifier::Exists
                } else {
                    Quantifier::Forall
                }
            })
            .collect();
        Ok(Q3SatInstance {
            k,
            ell,
            prefix,
            clauses,
        })
    }

    /// Largest value of a block integer, `2^ell - 1`.
    pub fn block_max(&self) -> i64 {
        (1i64 << self.ell) - 1
    }
}

/// Rows in `(x_1, ..., x_k, w)` that have an integer solution `w` iff the
/// literal holds for `x_lit.block`:
/// `x / 2^(s-1) - 1 < 2w + c <= x / 2^(s-1)` with `c = 1` for a positive
/// literal and `c = 0` for a negated one, sharpened to closed rows.
pub fn bit_gadget_rows(k: usize, lit: Literal) -> Vec<LinearInequality> {
    let scale = Rational::new(BigInt::one(), BigInt::one() << (lit.index - 1));
    let c = if lit.positive { 1 } else { 0 };
    let coeffs = |a: Rational, b: i64| {
        let mut v = vec![Rational::zero(); k + 1];
        v[lit.block - 1] = a;
        v[k] = arith::rat(b, 1);
        v
    };
    // x / 2^(s-1) - 2w < 1 + c
    let lower = RationalInequality {
        coeffs: coeffs(scale.clone(), -2),
        rhs: arith::rat(1 + c, 1),
        strict: true,
    };
    // -x / 2^(s-1) + 2w <= -c
    let upper = RationalInequality {
        coeffs: coeffs(-scale, 2),
        rhs: arith::rat(-c, 1),
        strict: false,
    };
    vec![sharpen_strict(&lower), sharpen_strict(&upper)]
}

/// `[0, 2^ell)^(k+1)` with the literal's bit rows.
fn literal_polytope(inst: &Q3SatInstance, lit: Literal) -> Result<HPolytope> {
    let top = arith::int(inst.block_max());
    let cube = LatticeBox::new(vec![BigInt::zero(); inst.k + 1], vec![top; inst.k + 1])?;
    Ok(cube.to_hpolytope().with_rows(bit_gadget_rows(inst.k, lit)))
}

#[derive(Clone, Debug)]
pub struct Q3SatConstruction {
    /// Fibonacci gadget with one point per clause (at least two).
    pub gadget: FibGadget,
    /// The clauses actually encoded; a single clause is repeated.
    pub clauses: Vec<[Literal; 3]>,
    /// Lifted vertices of each clause polytope `G_i` in
    /// `(x, w, v1, v2)`.
    pub clause_parts: Vec<VPolytope>,
    /// Hull of the clause polytopes lifted by the Fibonacci points, in
    /// `(x, y1, y2, w, v1, v2)`.
    pub g: VPolytope,
    pub r1_prime: VPolytope,
    pub r2_prime: VPolytope,
    /// Lifted vertices of the final polytope in dimension `k + 7`.
    pub lifted: VPolytope,
    pub sentence: QuantSentence,
}

pub fn q3sat_construction(inst: &Q3SatInstance) -> Result<Q3SatConstruction> {
    let k = inst.k;
    let mut clauses = inst.clauses.clone();
    if clauses.len() < 2 {
        clauses.push(clauses[0]);
    }
    let gadget = build_gadget(clauses.len())?;
    let mut clause_parts = Vec::with_capacity(clauses.len());
    for clause in &clauses {
        let parts = clause
            .iter()
            .map(|&lit| literal_polytope(inst, lit).and_then(|h| vertices(&h)))
            .collect::<Result<Vec<_>>>()?;
        clause_parts.push(lift_union(&parts)?.0);
    }
    let g = fib_lift(&gadget, &clause_parts, k)?;
    let head = LatticeBox::new(
        vec![BigInt::zero(); k],
        vec![arith::int(inst.block_max()); k],
    )?;
    let r1_prime = product_vertices(&head, &vertices(&gadget.r1)?, 3)?;
    let r2_prime = product_vertices(&head, &vertices(&gadget.r2)?, 3)?;
    let pieces = [r1_prime.clone(), r2_prime.clone(), g.clone()];
    let (lifted, constraint) = if k + 7 <= MAX_CONVERSION_DIM {
        let c = compress_vertices(&pieces)?;
        (c.lifted, Constraint::H(c.polytope))
    } else {
        let (lifted, _) = lift_union(&pieces)?;
        (lifted.clone(), Constraint::V(lifted))
    };
    let z_box = lifted.bounding_box()?.project(k + 2..k + 7);
    let mut blocks: Vec<Block> = inst
        .prefix
        .iter()
        .map(|&q| Block {
            q,
            domain: super::Domain::Box(head.project(0..1)),
        })
        .collect();
    blocks.push(Block::forall(gadget.j_box.clone()));
    blocks.push(Block::exists(z_box));
    let sentence = QuantSentence::new(blocks, constraint)?;
    Ok(Q3SatConstruction {
        gadget,
        clauses,
        clause_parts,
        g,
        r1_prime,
        r2_prime,
        lifted,
        sentence,
    })
}

/// `Q_1 x_1 in I ... Q_k x_k in I forall y in J exists z in K : (x, y, z)
/// in U` with `I = [0, 2^ell)`; true exactly when the formula is.
pub fn q3sat_to_sentence(inst: &Q3SatInstance) -> Result<QuantSentence> {
    q3sat_construction(inst).map(|c| c.sentence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{integer_points, IntSystem};

    fn bit(x: i64, s: usize) -> bool {
        (x >> (s - 1)) & 1 == 1
    }

    #[test]
    fn bit_gadget_matches_binary_digits() {
        for s in 1..=3 {
            for positive in [true, false] {
                let lit = Literal {
                    block: 1,
                    index: s,
                    positive,
                };
                let rows = bit_gadget_rows(1, lit);
                let h = HPolytope::new(2, rows).unwrap();
                for x in 0..8i64 {
                    let has_w = (-10..=10).any(|w| h.contains_i64(&[x, w]));
                    assert_eq!(has_w, bit(x, s) == positive, "s={s} x={x} {positive}");
                }
            }
        }
    }

    #[test]
    fn bit_gadget_witness() {
        // x = 5, s = 1: floor(5) is odd, witness w = 2 since 2w + 1 = 5.
        let h = HPolytope::new(2, bit_gadget_rows(1, Literal::pos(1, 1))).unwrap();
        assert!(h.contains_i64(&[5, 2]));
        assert_eq!(
            h.rows,
            HPolytope::new(
                2,
                vec![
                    LinearInequality::from_i64(&[1, -2], 1),
                    LinearInequality::from_i64(&[-1, 2], -1)
                ]
            )
            .unwrap()
            .rows
        );
    }

    #[test]
    fn clause_polytope_projects_to_satisfying_x() {
        let inst = Q3SatInstance::new(
            1,
            2,
            vec![[Literal::pos(1, 1), Literal::neg(1, 2), Literal::neg(1, 2)]],
        )
        .unwrap();
        let c = q3sat_construction(&inst).unwrap();
        let g0 = crate::geometry::hull_facets(&c.clause_parts[0]).unwrap();
        let mut xs: Vec<i64> = integer_points(&g0).unwrap().iter().map(|p| p[0]).collect();
        xs.dedup();
        // u1 or not u2: x in {0, 1, 3}
        assert_eq!(xs, vec![0, 1, 3]);
    }

    #[test]
    fn sentence_shape() {
        let inst = Q3SatInstance::new(1, 1, vec![[Literal::pos(1, 1); 3]]).unwrap();
        let c = q3sat_construction(&inst).unwrap();
        assert_eq!(c.sentence.constraint.dim(), 8);
        assert_eq!(c.clauses.len(), 2);
        let dims: Vec<_> = c.sentence.blocks.iter().map(|b| b.domain.dim()).collect();
        assert_eq!(dims, vec![1, 2, 5]);
        let Constraint::H(h) = &c.sentence.constraint else {
            panic!("k = 1 gives facet form")
        };
        // x = 1 with y = phi_1 needs a z; x = 0 has none.
        let sys = IntSystem::from_polytope(h);
        let zb = match &c.sentence.blocks[2].domain {
            super::super::Domain::Box(b) => b.clone(),
            _ => unreachable!(),
        };
        let lo: Vec<i64> = zb.lo.iter().map(|v| i64::try_from(v).unwrap()).collect();
        let hi: Vec<i64> = zb.hi.iter().map(|v| i64::try_from(v).unwrap()).collect();
        let mut s = crate::geometry::Search::new(1_000_000);
        assert!(sys.exists_in_box(&[1, 1, 0], &lo, &hi, &mut s).unwrap().is_some());
        assert!(sys.exists_in_box(&[0, 1, 0], &lo, &hi, &mut s).unwrap().is_none());
    }

    #[test]
    fn prefix_alternates_to_exists() {
        let i = Q3SatInstance::new(2, 1, vec![[Literal::pos(1, 1); 3]]).unwrap();
        assert_eq!(i.prefix, vec![Quantifier::Forall, Quantifier::Exists]);
        assert!(Q3SatInstance::new(1, 1, vec![[Literal::pos(2, 1); 3]]).is_err());
        assert!(Q3SatInstance::new(1, 1, vec![[Literal::pos(1, 2); 3]]).is_err());
        assert!(Q3SatInstance::new(0, 1, vec![[Literal::pos(1, 1); 3]]).is_err());
    }
}
