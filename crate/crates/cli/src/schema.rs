//! The native JSON format. Arithmetic values (coefficients, bounds,
//! numerators, `N`, `T`) are decimal strings so that no reader has to
//! guess at integer widths; structural sizes such as dimensions and
//! indices are plain JSON numbers.

use std::str::FromStr;

use num_bigint::BigInt;
use qip_core::geometry::{HPolytope, LatticeBox, LinearInequality, VPolytope};
use qip_core::gsa::GsaInstance;
use qip_core::reductions::{
    Block, Constraint, Domain, Literal, ProjectionInstance, Q3SatInstance, Quantifier,
    QuantSentence, TwoQuantSentence,
};
use qip_core::Rational;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rat {
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub coeffs: Vec<String>,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPoly {
    pub dim: usize,
    pub rows: Vec<Row>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VPoly {
    pub dim: usize,
    pub vertices: Vec<Vec<Rat>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntBox {
    pub lo: Vec<String>,
    pub hi: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Poly {
    H(HPoly),
    V(VPoly),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quant {
    Exists,
    Forall,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireBlock {
    pub q: Quant,
    #[serde(rename = "box", default, skip_serializing_if = "Option::is_none")]
    pub bx: Option<IntBox>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unbounded: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub blocks: Vec<WireBlock>,
    pub constraint: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireLiteral {
    pub block: usize,
    pub index: usize,
    pub positive: bool,
}

/// Gadget and encoding parameters of a reduction, together with the
/// source instance: enough to re-run it and get the same bytes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub target: String,
    pub source: Box<Document>,
    /// Number of Fibonacci points, or of approximation targets for the
    /// counting reductions.
    pub d: usize,
    /// Tag coordinates added by compression.
    pub ell: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub m: Vec<String>,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    Gsa {
        alpha: Vec<Rat>,
        n: String,
        eps: Rat,
    },
    Q3sat {
        k: usize,
        ell: usize,
        clauses: Vec<[WireLiteral; 3]>,
    },
    Sentence {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        provenance: Option<Provenance>,
        #[serde(flatten)]
        sentence: Sentence,
    },
    Projection {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        provenance: Option<Provenance>,
        u: HPoly,
        v: HPoly,
        n: String,
        t: String,
        m: Vec<String>,
        u_vertices: VPoly,
        v_vertices: VPoly,
    },
    Simplices {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        provenance: Option<Provenance>,
        /// First-coordinate count of the original instance is
        /// `n` minus the projected count of the simplices.
        n: String,
        simplices: Vec<VPoly>,
    },
    TwoQuant {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        provenance: Option<Provenance>,
        d: usize,
        i_box: IntBox,
        k_box: IntBox,
        parts: Vec<HPoly>,
        t: String,
    },
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Gsa { .. } => "gsa",
            Document::Q3sat { .. } => "q3sat",
            Document::Sentence { .. } => "sentence",
            Document::Projection { .. } => "projection",
            Document::Simplices { .. } => "simplices",
            Document::TwoQuant { .. } => "two-quant",
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("malformed document: {e}")))
    }
}

fn int_err(s: &str) -> CliError {
    CliError::Usage(format!("not a decimal integer: {s:?}"))
}

pub fn parse_int(s: &str) -> Result<BigInt, CliError> {
    BigInt::from_str(s).map_err(|_| int_err(s))
}

fn ints(v: &[String]) -> Result<Vec<BigInt>, CliError> {
    v.iter().map(|s| parse_int(s)).collect()
}

fn strs(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

fn core(e: qip_core::Error) -> CliError {
    CliError::Usage(e.to_string())
}

pub fn rat_to_wire(q: &Rational) -> Rat {
    Rat {
        num: q.numer().to_string(),
        den: q.denom().to_string(),
    }
}

pub fn rat_from_wire(r: &Rat) -> Result<Rational, CliError> {
    let den = parse_int(&r.den)?;
    if den == BigInt::from(0) {
        return Err(CliError::Usage("zero denominator".into()));
    }
    Ok(Rational::new(parse_int(&r.num)?, den))
}

pub fn hpoly_to_wire(h: &HPolytope) -> HPoly {
    HPoly {
        dim: h.dim,
        rows: h
            .rows
            .iter()
            .map(|r| Row {
                coeffs: strs(&r.coeffs),
                rhs: r.rhs.to_string(),
            })
            .collect(),
    }
}

pub fn hpoly_from_wire(h: &HPoly) -> Result<HPolytope, CliError> {
    let rows = h
        .rows
        .iter()
        .map(|r| Ok(LinearInequality::new(ints(&r.coeffs)?, parse_int(&r.rhs)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    HPolytope::new(h.dim, rows).map_err(core)
}

pub fn vpoly_to_wire(v: &VPolytope) -> VPoly {
    VPoly {
        dim: v.dim,
        vertices: v
            .vertices
            .iter()
            .map(|p| p.iter().map(rat_to_wire).collect())
            .collect(),
    }
}

pub fn vpoly_from_wire(v: &VPoly) -> Result<VPolytope, CliError> {
    let pts = v
        .vertices
        .iter()
        .map(|p| p.iter().map(rat_from_wire).collect())
        .collect::<Result<Vec<_>, CliError>>()?;
    VPolytope::new(v.dim, pts).map_err(core)
}

pub fn box_to_wire(b: &LatticeBox) -> IntBox {
    IntBox {
        lo: strs(&b.lo),
        hi: strs(&b.hi),
    }
}

pub fn box_from_wire(b: &IntBox) -> Result<LatticeBox, CliError> {
    LatticeBox::new(ints(&b.lo)?, ints(&b.hi)?).map_err(core)
}

pub fn sentence_to_wire(s: &QuantSentence) -> Sentence {
    let blocks = s
        .blocks
        .iter()
        .map(|b| {
            let q = match b.q {
                Quantifier::Exists => Quant::Exists,
                Quantifier::Forall => Quant::Forall,
            };
            match &b.domain {
                Domain::Box(bx) => WireBlock {
                    q,
                    bx: Some(box_to_wire(bx)),
                    unbounded: None,
                },
                Domain::Unbounded(k) => WireBlock {
                    q,
                    bx: None,
                    unbounded: Some(*k),
                },
            }
        })
        .collect();
    let constraint = match &s.constraint {
        Constraint::H(h) => Poly::H(hpoly_to_wire(h)),
        Constraint::V(v) => Poly::V(vpoly_to_wire(v)),
    };
    Sentence { blocks, constraint }
}

pub fn sentence_from_wire(s: &Sentence) -> Result<QuantSentence, CliError> {
    let blocks = s
        .blocks
        .iter()
        .map(|b| {
            let q = match b.q {
                Quant::Exists => Quantifier::Exists,
                Quant::Forall => Quantifier::Forall,
            };
            let domain = match (&b.bx, b.unbounded) {
                (Some(bx), None) => Domain::Box(box_from_wire(bx)?),
                (None, Some(k)) => Domain::Unbounded(k),
                _ => {
                    return Err(CliError::Usage(
                        "a block needs exactly one of \"box\" and \"unbounded\"".into(),
                    ))
                }
            };
            Ok(Block { q, domain })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let constraint = match &s.constraint {
        Poly::H(h) => Constraint::H(hpoly_from_wire(h)?),
        Poly::V(v) => Constraint::V(vpoly_from_wire(v)?),
    };
    QuantSentence::new(blocks, constraint).map_err(core)
}

pub fn gsa_to_wire(inst: &GsaInstance) -> Document {
    Document::Gsa {
        alpha: inst.alpha.iter().map(rat_to_wire).collect(),
        n: inst.n.to_string(),
        eps: rat_to_wire(&inst.eps),
    }
}

pub fn q3sat_to_wire(inst: &Q3SatInstance) -> Document {
    Document::Q3sat {
        k: inst.k,
        ell: inst.ell,
        clauses: inst
            .clauses
            .iter()
            .map(|c| {
                c.map(|l| WireLiteral {
                    block: l.block,
                    index: l.index,
                    positive: l.positive,
                })
            })
            .collect(),
    }
}

pub fn projection_to_wire(p: &ProjectionInstance, provenance: Option<Provenance>) -> Document {
    Document::Projection {
        provenance,
        u: hpoly_to_wire(&p.u),
        v: hpoly_to_wire(&p.v),
        n: p.n.to_string(),
        t: p.t.to_string(),
        m: strs(&p.m),
        u_vertices: vpoly_to_wire(&p.u_vertices),
        v_vertices: vpoly_to_wire(&p.v_vertices),
    }
}

pub fn two_quant_to_wire(s: &TwoQuantSentence, provenance: Option<Provenance>) -> Document {
    Document::TwoQuant {
        provenance,
        d: s.gadget.d,
        i_box: box_to_wire(&s.i_box),
        k_box: box_to_wire(&s.k_box),
        parts: s.parts.iter().map(hpoly_to_wire).collect(),
        t: s.t.to_string(),
    }
}

/// A parsed document as domain objects.
pub enum Loaded {
    Gsa(GsaInstance),
    Q3sat(Q3SatInstance),
    Sentence(QuantSentence),
    Projection(ProjectionInstance),
    Simplices(Vec<VPolytope>),
    TwoQuant(TwoQuantSentence),
}

fn parse_u64(s: &str) -> Result<u64, CliError> {
    s.parse().map_err(|_| CliError::Usage(format!("not a 64-bit count: {s:?}")))
}

pub fn load(doc: &Document) -> Result<Loaded, CliError> {
    Ok(match doc {
        Document::Gsa { alpha, n, eps } => Loaded::Gsa(
            GsaInstance::new(
                alpha.iter().map(rat_from_wire).collect::<Result<_, _>>()?,
                parse_u64(n)?,
                rat_from_wire(eps)?,
            )
            .map_err(core)?,
        ),
        Document::Q3sat { k, ell, clauses } => Loaded::Q3sat(
            Q3SatInstance::new(
                *k,
                *ell,
                clauses
                    .iter()
                    .map(|c| {
                        c.clone().map(|l| Literal {
                            block: l.block,
                            index: l.index,
                            positive: l.positive,
                        })
                    })
                    .collect(),
            )
            .map_err(core)?,
        ),
        Document::Sentence { sentence, .. } => Loaded::Sentence(sentence_from_wire(sentence)?),
        Document::Projection {
            u,
            v,
            n,
            t,
            m,
            u_vertices,
            v_vertices,
            ..
        } => Loaded::Projection(ProjectionInstance {
            u: hpoly_from_wire(u)?,
            v: hpoly_from_wire(v)?,
            n: parse_u64(n)?,
            t: parse_int(t)?,
            m: ints(m)?,
            u_vertices: vpoly_from_wire(u_vertices)?,
            v_vertices: vpoly_from_wire(v_vertices)?,
        }),
        Document::Simplices { n, simplices, .. } => {
            parse_u64(n)?;
            Loaded::Simplices(simplices.iter().map(vpoly_from_wire).collect::<Result<_, _>>()?)
        }
        Document::TwoQuant {
            d,
            i_box,
            k_box,
            parts,
            t,
            ..
        } => Loaded::TwoQuant(TwoQuantSentence {
            i_box: box_from_wire(i_box)?,
            k_box: box_from_wire(k_box)?,
            parts: parts.iter().map(hpoly_from_wire).collect::<Result<_, _>>()?,
            t: parse_int(t)?,
            gadget: qip_core::fib::build_gadget(*d).map_err(core)?,
        }),
    })
}
