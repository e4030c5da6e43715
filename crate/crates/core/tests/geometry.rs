mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use qip_core::arith::{rat, rat_int, Rational};
use qip_core::fib::build_gadget;
use qip_core::geometry::{
    bounding_box, conv_contains, hull_facets, integer_points, sharpen_strict, vertices,
    HPolytope, LatticeBox, LinearInequality, RationalInequality, VPolytope,
};
use qip_core::gsa::GsaInstance;
use qip_core::reductions::three_quantifier_construction;

fn rational_strategy(max_den: i64, span: i64) -> impl Strategy<Value = Rational> {
    (1..=max_den).prop_flat_map(move |q| (-span * q..=span * q).prop_map(move |p| rat(p, q)))
}

fn vpoly_strategy() -> impl Strategy<Value = VPolytope> {
    (1usize..=3).prop_flat_map(|dim| {
        prop::collection::vec(prop::collection::vec(rational_strategy(4, 3), dim), 1..=6)
            .prop_map(move |pts| VPolytope::new(dim, pts).unwrap())
    })
}

fn ineq_strategy() -> impl Strategy<Value = RationalInequality> {
    (1usize..=3).prop_flat_map(|dim| {
        (
            prop::collection::vec(rational_strategy(12, 4), dim),
            rational_strategy(12, 6),
            any::<bool>(),
        )
            .prop_map(|(coeffs, rhs, strict)| RationalInequality { coeffs, rhs, strict })
    })
}

fn satisfies(ineq: &RationalInequality, x: &[i64]) -> bool {
    let lhs: Rational = ineq.coeffs.iter().zip(x).map(|(a, &v)| a * rat(v, 1)).sum();
    if ineq.strict {
        lhs < ineq.rhs
    } else {
        lhs <= ineq.rhs
    }
}

fn cube_points(dim: usize, r: i64) -> Vec<Vec<i64>> {
    let b = LatticeBox::from_i64(&vec![-r; dim], &vec![r; dim]).unwrap();
    b.points().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn vertex_facet_round_trip(v in vpoly_strategy()) {
        let canon = v.clone().canonical().unwrap();
        let h = hull_facets(&v).unwrap();
        prop_assert_eq!(vertices(&h).unwrap(), canon.clone());
        // Every input point lies in the facet description.
        for p in &v.vertices {
            prop_assert!(h.contains_rational(p));
        }
        prop_assert_eq!(hull_facets(&canon).unwrap(), h);
    }

    #[test]
    fn sharpening_keeps_integer_points(ineq in ineq_strategy()) {
        let sharp = sharpen_strict(&ineq);
        let r = if ineq.coeffs.len() == 3 { 8 } else { 20 };
        for x in cube_points(ineq.coeffs.len(), r) {
            let xb: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
            prop_assert_eq!(sharp.holds_int(&xb), satisfies(&ineq, &x), "x = {:?}", x);
        }
    }

    #[test]
    fn integer_points_match_box_filter(v in vpoly_strategy()) {
        let h = hull_facets(&v).unwrap();
        let got = integer_points(&h).unwrap();
        let bb = bounding_box(&h).unwrap();
        let want: Vec<Vec<i64>> = bb
            .points()
            .unwrap()
            .into_iter()
            .filter(|x| h.contains_i64(x))
            .collect();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        let mut want_sorted = want;
        want_sorted.sort();
        prop_assert_eq!(got_sorted, want_sorted);
    }

    #[test]
    fn facets_agree_with_lp_membership(v in vpoly_strategy(), probe in prop::collection::vec(rational_strategy(3, 4), 3)) {
        let h = hull_facets(&v).unwrap();
        let p = &probe[..v.dim];
        prop_assert_eq!(h.contains_rational(p), conv_contains(&v.vertices, p));
    }
}

#[test]
fn sharpening_worked_example() {
    // -w < -(2/3) x - 1/4 over (x, w) becomes 8x - 12w <= -4, i.e. 12w >= 8x + 4.
    let ineq = RationalInequality {
        coeffs: vec![rat(2, 3), rat(-1, 1)],
        rhs: rat(-1, 4),
        strict: true,
    };
    let sharp = sharpen_strict(&ineq);
    let reference = LinearInequality::from_i64(&[8, -12], -4);
    for x in -30..=30 {
        for w in -30..=30 {
            let p = [BigInt::from(x), BigInt::from(w)];
            assert_eq!(sharp.holds_int(&p), reference.holds_int(&p));
            assert_eq!(sharp.holds_int(&p), satisfies(&ineq, &[x, w]));
        }
    }
}

#[test]
fn lifted_bands_match_lp_oracle() {
    let inst = GsaInstance::new(vec![rat(1, 3), rat(2, 5), rat(3, 7)], 6, rat(1, 8)).unwrap();
    let c = three_quantifier_construction(&inst).unwrap();
    let h = hull_facets(&c.p).unwrap();
    let bb = c.p.bounding_box().unwrap();
    for x in bb.points().unwrap() {
        let xr: Vec<Rational> = x.iter().map(|&v| rat(v, 1)).collect();
        assert_eq!(h.contains_i64(&x), conv_contains(&c.p.vertices, &xr), "x = {x:?}");
    }
}

#[test]
fn bounding_box_is_vertex_scan() {
    let inst = GsaInstance::new(vec![rat(1, 3), rat(2, 5), rat(3, 7)], 6, rat(1, 8)).unwrap();
    let c = three_quantifier_construction(&inst).unwrap();
    let h = hull_facets(&c.p).unwrap();
    let bb = bounding_box(&h).unwrap();
    for k in 0..c.p.dim {
        let lo = c.p.vertices.iter().map(|v| v[k].clone()).min().unwrap();
        let hi = c.p.vertices.iter().map(|v| v[k].clone()).max().unwrap();
        assert_eq!(bb.lo[k], lo.ceil().to_integer());
        assert_eq!(bb.hi[k], hi.floor().to_integer());
    }
}

#[test]
fn r2_lattice_points_for_d2() {
    let g = build_gadget(2).unwrap();
    let pts: Vec<Vec<i64>> = g
        .j_box
        .points()
        .unwrap()
        .into_iter()
        .filter(|y| g.r2.contains_i64(y))
        .collect();
    assert_eq!(pts, vec![vec![2, 0]]);
}

#[test]
fn r1_vertices_for_d2() {
    // Oracle: pairwise facet intersections that satisfy every row.
    let g = build_gadget(2).unwrap();
    let rows = &g.r1.rows;
    let mut want = Vec::new();
    for (i, a) in rows.iter().enumerate() {
        for b in &rows[i + 1..] {
            let det = &a.coeffs[0] * &b.coeffs[1] - &a.coeffs[1] * &b.coeffs[0];
            if det == BigInt::from(0) {
                continue;
            }
            let det = rat_int(&det);
            let x = rat_int(&(&a.rhs * &b.coeffs[1] - &a.coeffs[1] * &b.rhs)) / &det;
            let y = rat_int(&(&a.coeffs[0] * &b.rhs - &a.rhs * &b.coeffs[0])) / &det;
            if g.r1.contains_rational(&[x.clone(), y.clone()]) {
                want.push(vec![x, y]);
            }
        }
    }
    assert_eq!(vertices(&g.r1).unwrap(), VPolytope::new(2, want).unwrap());
}

#[test]
fn empty_system_has_no_points() {
    let h = HPolytope::new(2, vec![
        LinearInequality::from_i64(&[1, 0], 0),
        LinearInequality::from_i64(&[-1, 0], -1),
    ])
    .unwrap();
    assert!(vertices(&h).unwrap().vertices.is_empty());
}
