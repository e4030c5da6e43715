//! Rendering of a quantified sentence as an SMT-LIB 2 script over
//! linear integer arithmetic. Box blocks become bound conjuncts, an
//! unbounded existential block becomes a plain existential, and a vertex
//! constraint is written with real convex multipliers.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use qip_core::geometry::{HPolytope, LatticeBox, VPolytope};
use qip_core::reductions::{Constraint, Domain, Quantifier, QuantSentence};
use qip_core::Rational;

fn int(v: &BigInt) -> String {
    if v.is_negative() {
        format!("(- {})", -v)
    } else {
        v.to_string()
    }
}

fn real(q: &Rational) -> String {
    let mag = if q.denom() == &BigInt::from(1) {
        format!("{}.0", q.numer().abs())
    } else {
        format!("(/ {}.0 {}.0)", q.numer().abs(), q.denom())
    };
    if q.is_negative() {
        format!("(- {mag})")
    } else {
        mag
    }
}

fn var(j: usize) -> String {
    format!("x{j}")
}

fn conj(parts: Vec<String>) -> String {
    match parts.len() {
        0 => "true".into(),
        1 => parts.into_iter().next().unwrap(),
        _ => format!("(and {})", parts.join(" ")),
    }
}

fn sum(terms: Vec<String>, zero: &str) -> String {
    match terms.len() {
        0 => zero.into(),
        1 => terms.into_iter().next().unwrap(),
        _ => format!("(+ {})", terms.join(" ")),
    }
}

fn h_formula(h: &HPolytope) -> String {
    let rows = h
        .rows
        .iter()
        .map(|r| {
            let terms = r
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| {
                    if c == &BigInt::from(1) {
                        var(j)
                    } else {
                        format!("(* {} {})", int(c), var(j))
                    }
                })
                .collect();
            format!("(<= {} {})", sum(terms, "0"), int(&r.rhs))
        })
        .collect();
    conj(rows)
}

fn v_formula(v: &VPolytope) -> String {
    if v.vertices.is_empty() {
        return "false".into();
    }
    let lambdas: Vec<String> = (0..v.vertices.len()).map(|i| format!("l{i}")).collect();
    let mut parts: Vec<String> = lambdas.iter().map(|l| format!("(>= {l} 0.0)")).collect();
    parts.push(format!("(= {} 1.0)", sum(lambdas.clone(), "0.0")));
    for j in 0..v.dim {
        let terms = v
            .vertices
            .iter()
            .zip(&lambdas)
            .filter(|(p, _)| !p[j].is_zero())
            .map(|(p, l)| format!("(* {} {l})", real(&p[j])))
            .collect();
        parts.push(format!("(= (to_real {}) {})", var(j), sum(terms, "0.0")));
    }
    let decls: Vec<String> = lambdas.iter().map(|l| format!("({l} Real)")).collect();
    format!("(exists ({}) {})", decls.join(" "), conj(parts))
}

fn bounds(b: &LatticeBox, off: usize) -> Vec<String> {
    b.lo
        .iter()
        .zip(&b.hi)
        .enumerate()
        .flat_map(|(j, (lo, hi))| {
            let x = var(off + j);
            [format!("(<= {} {x})", int(lo)), format!("(<= {x} {})", int(hi))]
        })
        .collect()
}

pub fn render(s: &QuantSentence) -> String {
    let mut body = match &s.constraint {
        Constraint::H(h) => h_formula(h),
        Constraint::V(v) => v_formula(v),
    };
    let offsets = s.offsets();
    for (b, &off) in s.blocks.iter().zip(&offsets).rev() {
        let k = b.domain.dim();
        let decls: Vec<String> = (off..off + k).map(|j| format!("({} Int)", var(j))).collect();
        let decls = decls.join(" ");
        body = match (&b.domain, b.q) {
            (Domain::Unbounded(_), _) => format!("(exists ({decls}) {body})"),
            (Domain::Box(bx), Quantifier::Exists) => {
                let mut parts = bounds(bx, off);
                parts.push(body);
                format!("(exists ({decls}) {})", conj(parts))
            }
            (Domain::Box(bx), Quantifier::Forall) => {
                format!("(forall ({decls}) (=> {} {body}))", conj(bounds(bx, off)))
            }
        };
    }
    let logic = match s.constraint {
        Constraint::H(_) => "LIA",
        Constraint::V(_) => "LIRA",
    };
    let mut out = String::new();
    let dims: Vec<String> = s.blocks.iter().map(|b| format!("{}:{}", b.q, b.domain.dim())).collect();
    writeln!(out, "; blocks: {}", dims.join(" ")).unwrap();
    writeln!(out, "(set-logic {logic})").unwrap();
    writeln!(out, "(assert {body})").unwrap();
    writeln!(out, "(check-sat)").unwrap();
    writeln!(out, "(exit)").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use qip_core::arith::rat;
    use qip_core::geometry::LinearInequality;
    use qip_core::reductions::Block;

    #[test]
    fn literals() {
        assert_eq!(int(&BigInt::from(-3)), "(- 3)");
        assert_eq!(real(&rat(-1, 2)), "(- (/ 1.0 2.0))");
        assert_eq!(real(&rat(4, 1)), "4.0");
    }

    #[test]
    fn trivial_sentence() {
        let bx = LatticeBox::from_i64(&[0], &[2]).unwrap();
        let h = HPolytope::new(1, vec![LinearInequality::from_i64(&[1], 5)]).unwrap();
        let s = QuantSentence::new(vec![Block::forall(bx)], Constraint::H(h)).unwrap();
        let text = render(&s);
        assert!(text.contains("(set-logic LIA)"));
        assert!(text.contains("(assert (forall ((x0 Int)) (=> (and (<= 0 x0) (<= x0 2)) (<= x0 5))))"));
    }

    #[test]
    fn balanced_parentheses() {
        let v = VPolytope::from_i64(2, &[&[0, 0], &[1, -2]]).unwrap();
        let s = QuantSentence::new(
            vec![Block {
                q: Quantifier::Exists,
                domain: Domain::Unbounded(2),
            }],
            Constraint::V(v),
        )
        .unwrap();
        let text = render(&s);
        assert!(text.contains("LIRA"));
        let depth = text.chars().try_fold(0i64, |d, c| {
            let d = d + (c == '(') as i64 - (c == ')') as i64;
            (d >= 0).then_some(d)
        });
        assert_eq!(depth, Some(0));
    }
}
