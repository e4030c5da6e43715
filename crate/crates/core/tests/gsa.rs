mod common;

use num_bigint::BigInt;
use qip_core::arith::rat;
use qip_core::gsa::{
    band_polygon, gap_polygon, gsa_count, gsa_decide, gsa_norm, gsa_solutions, slice_range,
    GsaInstance,
};

/// Brute force on the lattice form: some `x` has an integer `w_i` in every
/// band slice.
fn lattice_solutions(inst: &GsaInstance) -> Vec<u64> {
    let bands: Vec<_> = (1..=inst.d()).map(|i| band_polygon(inst, i).unwrap()).collect();
    (1..=inst.n)
        .filter(|&x| {
            bands.iter().all(|b| {
                let x = x as i64;
                (-(inst.n as i64) - 2..=inst.n as i64 + 2).any(|w| b.contains_i64(&[x, w]))
            })
        })
        .collect()
}

#[test]
fn decision_matches_lattice_form() {
    let mut r = common::rng(11);
    for _ in 0..300 {
        let inst = common::random_gsa(&mut r, 3, 25, 9);
        let want = lattice_solutions(&inst);
        assert_eq!(gsa_solutions(&inst).unwrap(), want, "{inst:?}");
        assert_eq!(gsa_decide(&inst).unwrap(), !want.is_empty());
        assert_eq!(gsa_count(&inst).unwrap(), want.len() as u64);
    }
}

#[test]
fn bands_and_gaps_are_complementary() {
    // For eps < 1/2 and each x, exactly one of band and gap slices holds
    // an integer w.
    let mut r = common::rng(12);
    for _ in 0..200 {
        let inst = common::random_gsa(&mut r, 3, 20, 11);
        for i in 1..=inst.d() {
            let band = band_polygon(&inst, i).unwrap();
            let gap = gap_polygon(&inst, i).unwrap();
            for x in 1..=inst.n as i64 {
                let b = slice_range(&band, x).is_some();
                let g = slice_range(&gap, x).is_some();
                assert!(b ^ g, "{inst:?} i={i} x={x}");
            }
        }
    }
}

#[test]
fn wide_tolerance_is_trivial() {
    for (p, q) in [(1, 2), (2, 3), (5, 4)] {
        let inst = GsaInstance::new(vec![rat(1, 7), rat(3, 11)], 13, rat(p, q)).unwrap();
        assert_eq!(gsa_count(&inst).unwrap(), 13);
        assert!(gsa_decide(&inst).unwrap());
    }
}

#[test]
fn norm_examples() {
    let alpha = [rat(1, 3), rat(1, 2)];
    assert_eq!(gsa_norm(&BigInt::from(6), &alpha), rat(0, 1));
    assert_eq!(gsa_norm(&BigInt::from(1), &alpha), rat(1, 2));
    assert_eq!(gsa_norm(&BigInt::from(2), &alpha), rat(1, 3));
}

#[test]
fn alpha_is_taken_mod_one() {
    let a = GsaInstance::new(vec![rat(7, 3)], 10, rat(1, 5)).unwrap();
    let b = GsaInstance::new(vec![rat(1, 3)], 10, rat(1, 5)).unwrap();
    assert_eq!(gsa_solutions(&a).unwrap(), gsa_solutions(&b).unwrap());
}
