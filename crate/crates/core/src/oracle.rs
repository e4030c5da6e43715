//! Ground truth by exhaustive enumeration: quantified sentences, QBF,
//! and projection counts.
//!
//! All evaluators enumerate lexicographically and stop early on a
//! successful `exists` or a failed `forall`. A single budget caps the
//! number of membership tests across nested blocks.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{self, Rational};
use crate::error::{Error, Result};
use crate::geometry::{
    bounding_box, conv_contains, narrow, integer_points_with_budget, HPolytope, IntSystem,
    LatticeBox, Point, Search, VPolytope,
};
use crate::reductions::{Constraint, Domain, Q3SatInstance, QuantSentence, Quantifier, TwoQuantSentence};

/// Default ceiling on membership tests per evaluation.
pub const DEFAULT_ORACLE_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub budget: u64,
    /// Extra room added on every side of the box derived for an unbounded
    /// innermost block.
    pub inner_padding: i64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            budget: DEFAULT_ORACLE_BUDGET,
            inner_padding: 0,
        }
    }
}

fn budget_error(requested: impl ToString, budget: u64, context: String) -> Error {
    Error::BudgetExceeded {
        requested: requested.to_string(),
        budget,
        context,
    }
}

/// Box of each block, with an unbounded innermost block replaced by the
/// constraint's bounding box on those coordinates.
pub fn resolve_domains(s: &QuantSentence, padding: i64) -> Result<Vec<LatticeBox>> {
    let offsets = s.offsets();
    let mut boxes = Vec::with_capacity(s.blocks.len());
    for (b, &off) in s.blocks.iter().zip(&offsets) {
        boxes.push(match &b.domain {
            Domain::Box(bx) => bx.clone(),
            Domain::Unbounded(k) => {
                let full = match &s.constraint {
                    Constraint::H(h) => bounding_box(h),
                    Constraint::V(v) => v.bounding_box(),
                };
                match full {
                    Ok(full) => full.project(off..off + k).padded(padding),
                    // An empty constraint: any empty box will do.
                    Err(Error::Empty) => LatticeBox {
                        lo: vec![BigInt::zero(); *k],
                        hi: vec![BigInt::from(-1); *k],
                    },
                    Err(e) => return Err(e),
                }
            }
        });
    }
    Ok(boxes)
}

enum Member<'a> {
    H(IntSystem),
    V(&'a VPolytope),
}

impl Member<'_> {
    fn contains(&self, p: &[i64]) -> bool {
        match self {
            Member::H(sys) => sys.contains(p),
            Member::V(v) => {
                let q: Point = p.iter().map(|&c| arith::rat(c, 1)).collect();
                conv_contains(&v.vertices, &q)
            }
        }
    }
}

struct Eval<'a> {
    quants: Vec<Quantifier>,
    lo: Vec<Vec<i64>>,
    hi: Vec<Vec<i64>>,
    member: Member<'a>,
    search: Search,
}

impl Eval<'_> {
    fn block(&mut self, b: usize, prefix: &mut Vec<i64>) -> Result<bool> {
        let last = b + 1 == self.quants.len();
        let q = self.quants[b];
        if last {
            if let Member::H(sys) = &self.member {
                return Ok(match q {
                    Quantifier::Exists => sys
                        .exists_in_box(prefix, &self.lo[b], &self.hi[b], &mut self.search)?
                        .is_some(),
                    Quantifier::Forall => {
                        let size: u64 = self.lo[b]
                            .iter()
                            .zip(&self.hi[b])
                            .map(|(l, h)| (h - l + 1).max(0) as u64)
                            .product();
                        self.search.charge(size)?;
                        sys.forall_in_box(prefix, &self.lo[b], &self.hi[b])
                    }
                });
            }
        }
        let pts = LatticeBox::from_i64(&self.lo[b], &self.hi[b])
            .map(|bx| bx.points())
            .unwrap_or_else(|_| Ok(Vec::new()))?;
        let want = q == Quantifier::Exists;
        for p in pts {
            let len = prefix.len();
            prefix.extend_from_slice(&p);
            let v = if last {
                self.search.tick()?;
                self.member.contains(prefix)
            } else {
                self.block(b + 1, prefix)?
            };
            prefix.truncate(len);
            if v == want {
                return Ok(want);
            }
        }
        Ok(!want)
    }
}

pub fn eval_sentence(s: &QuantSentence) -> Result<bool> {
    eval_sentence_with(s, &OracleConfig::default())
}

/// Evaluates with alternating-quantifier semantics over integer boxes.
pub fn eval_sentence_with(s: &QuantSentence, cfg: &OracleConfig) -> Result<bool> {
    let boxes = resolve_domains(s, cfg.inner_padding)?;
    let mut total = BigInt::from(1);
    for (i, (b, bx)) in s.blocks.iter().zip(&boxes).enumerate() {
        total *= bx.volume();
        if total > BigInt::from(cfg.budget) {
            return Err(budget_error(
                &total,
                cfg.budget,
                format!(
                    "block {} ({} over {} coordinates, box lo={:?} hi={:?})",
                    i + 1,
                    b.q,
                    bx.dim(),
                    bx.lo,
                    bx.hi
                ),
            ));
        }
    }
    let to_i64 = |v: &[BigInt]| v.iter().map(narrow).collect::<Result<Vec<i64>>>();
    let lo = boxes.iter().map(|b| to_i64(&b.lo)).collect::<Result<Vec<_>>>()?;
    let hi = boxes.iter().map(|b| to_i64(&b.hi)).collect::<Result<Vec<_>>>()?;
    let member = match &s.constraint {
        Constraint::H(h) => Member::H(IntSystem::from_polytope(h)),
        Constraint::V(v) => Member::V(v),
    };
    let mut ev = Eval {
        quants: s.blocks.iter().map(|b| b.q).collect(),
        lo,
        hi,
        member,
        search: Search::new(cfg.budget),
    };
    ev.block(0, &mut Vec::new())
}

/// Truth of a quantified 3-CNF by direct evaluation.
pub fn eval_q3sat(inst: &Q3SatInstance) -> Result<bool> {
    if inst.k * inst.ell > 20 {
        return Err(budget_error(
            format!("2^{}", inst.k * inst.ell),
            1 << 20,
            "Boolean assignments".into(),
        ));
    }
    fn go(inst: &Q3SatInstance, j: usize, xs: &mut Vec<u32>) -> bool {
        if j == inst.k {
            return inst.clauses.iter().all(|c| {
                c.iter()
                    .any(|l| ((xs[l.block - 1] >> (l.index - 1)) & 1 == 1) == l.positive)
            });
        }
        let want = inst.prefix[j] == Quantifier::Exists;
        for x in 0..(1u32 << inst.ell) {
            xs.push(x);
            let v = go(inst, j + 1, xs);
            xs.pop();
            if v == want {
                return want;
            }
        }
        !want
    }
    Ok(go(inst, 0, &mut Vec::new()))
}

/// `|{x_1 : x in (Q \ P) ∩ Z^n}|` where a point is in `Q \ P` when it
/// satisfies every row of `Q` and violates some row of `P`.
pub fn project_count(q: &HPolytope, p: &HPolytope) -> Result<u64> {
    project_count_with_budget(q, p, crate::geometry::DEFAULT_ENUMERATION_BUDGET)
}

pub fn project_count_with_budget(q: &HPolytope, p: &HPolytope, budget: u64) -> Result<u64> {
    let p_sys = IntSystem::from_polytope(p);
    let xs: BTreeSet<i64> = integer_points_with_budget(q, budget)?
        .into_iter()
        .filter(|x| !p_sys.contains(x))
        .map(|x| x[0])
        .collect();
    Ok(xs.len() as u64)
}

/// `|E_1(parts[0] ∪ ... )|` over integer points.
pub fn project_count_union(parts: &[HPolytope]) -> Result<u64> {
    let mut xs = BTreeSet::new();
    for p in parts {
        xs.extend(
            integer_points_with_budget(p, crate::geometry::DEFAULT_ENUMERATION_BUDGET)?
                .into_iter()
                .map(|x| x[0]),
        );
    }
    Ok(xs.len() as u64)
}

/// `exists x in I forall z in K : (x, z) in parts[0] ∪ parts[1] ∪ ...`.
pub fn eval_exists_forall_union(
    i_box: &LatticeBox,
    k_box: &LatticeBox,
    parts: &[HPolytope],
    budget: u64,
) -> Result<bool> {
    let size = i_box.volume() * k_box.volume() * BigInt::from(parts.len().max(1));
    if size > BigInt::from(budget) {
        return Err(budget_error(size, budget, "exists-forall union".into()));
    }
    let systems: Vec<IntSystem> = parts.iter().map(IntSystem::from_polytope).collect();
    let zs = k_box.points()?;
    let mut p = Vec::new();
    for x in i_box.points()? {
        let ok = zs.iter().all(|z| {
            p.clear();
            p.extend_from_slice(&x);
            p.extend_from_slice(z);
            systems.iter().any(|s| s.contains(&p))
        });
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn eval_two_quantifier(s: &TwoQuantSentence) -> Result<bool> {
    eval_exists_forall_union(&s.i_box, &s.k_box, &s.parts, DEFAULT_ORACLE_BUDGET)
}

/// Value of a rational as `f64`, for reports only.
pub fn approx(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
