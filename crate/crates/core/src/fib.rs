//! Fibonacci points: a convex lattice chain `phi_1, ..., phi_d` inside the
//! box `J`, whose complement in `J` splits into two convex lattice regions.
//!
//! `phi_i = (F_{2i-1}, F_{2i-2})` and `J = [1, F_{2d-1}] x [0, F_{2d-2}]`.
//! `R1` holds the lattice points of `J` strictly above the chain and `R2`
//! those strictly below it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geometry::{HPolytope, IntSystem, LatticeBox, LinearInequality};

/// `F_n` with `F_0 = 0`, `F_1 = 1`.
pub fn fibonacci(n: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::Precondition(format!("fibonacci index {n} is negative")));
    }
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    Ok(a)
}

fn fib(n: usize) -> BigInt {
    fibonacci(n as i64).expect("nonnegative index")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibGadget {
    pub d: usize,
    pub phi: Vec<[BigInt; 2]>,
    pub j_box: LatticeBox,
    pub r1: HPolytope,
    pub r2: HPolytope,
}

pub fn build_gadget(d: usize) -> Result<FibGadget> {
    if d < 2 {
        return Err(Error::Precondition(format!(
            "the Fibonacci gadget needs d >= 2, got {d}"
        )));
    }
    let phi: Vec<[BigInt; 2]> = (1..=d).map(|i| [fib(2 * i - 1), fib(2 * i - 2)]).collect();
    let top_x = fib(2 * d - 1);
    let top_y = fib(2 * d - 2);
    let j_box = LatticeBox::new(
        vec![BigInt::one(), BigInt::zero()],
        vec![top_x.clone(), top_y.clone()],
    )?;

    let row = |a: BigInt, b: BigInt, r: BigInt| LinearInequality::new(vec![a, b], r);
    // y1 >= 1, y2 <= F_{2d-2}, y2 F_{2d-1} - y1 F_{2d-2} >= 1
    let r1 = HPolytope::new(
        2,
        vec![
            row(-BigInt::one(), BigInt::zero(), -BigInt::one()),
            row(BigInt::zero(), BigInt::one(), top_y.clone()),
            row(top_y.clone(), -top_x.clone(), -BigInt::one()),
        ],
    )?;
    // y1 <= F_{2d-1}, y2 >= 0, y2 F_{2i} - y1 F_{2i-1} <= -2 for i = 1..d
    let mut r2_rows = vec![
        row(BigInt::one(), BigInt::zero(), top_x.clone()),
        row(BigInt::zero(), -BigInt::one(), BigInt::zero()),
    ];
    for i in 1..=d {
        r2_rows.push(row(-fib(2 * i - 1), fib(2 * i), BigInt::from(-2)));
    }
    let r2 = HPolytope::new(2, r2_rows)?;
    Ok(FibGadget {
        d,
        phi,
        j_box,
        r1,
        r2,
    })
}

/// Outcome of one property check; `counterexample` is the first witness
/// of failure found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub passed: bool,
    pub counterexample: Option<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetReport {
    pub properties: Vec<PropertyResult>,
    /// Lattice points of `J` that were classified.
    pub scanned: u64,
}

impl GadgetReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }

    pub fn get(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }
}

fn cross(o: &[BigInt; 2], a: &[BigInt; 2], b: &[BigInt; 2]) -> BigInt {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Number of lattice points strictly inside the triangle `(p, q, r)`, by
/// Pick's theorem: `2A = 2I + B - 2`.
fn interior_points(p: &[BigInt; 2], q: &[BigInt; 2], r: &[BigInt; 2]) -> BigInt {
    let twice_area = cross(p, q, r).abs();
    let edge = |a: &[BigInt; 2], b: &[BigInt; 2]| (&a[0] - &b[0]).abs().gcd(&(&a[1] - &b[1]).abs());
    let boundary = edge(p, q) + edge(q, r) + edge(r, p);
    (twice_area - boundary + 2) / 2
}

/// Position of a point relative to the chain: `+1` strictly above, `0` on
/// it, `-1` strictly below. The point's first coordinate must lie within
/// the chain's x-range.
fn side_of_chain(phi: &[[i64; 2]], y: [i64; 2]) -> i8 {
    // Segment i spans phi[i].x ..= phi[i+1].x
    let idx = match phi.binary_search_by(|p| p[0].cmp(&y[0])) {
        Ok(i) => {
            return match y[1].cmp(&phi[i][1]) {
                std::cmp::Ordering::Greater => 1,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Less => -1,
            }
        }
        Err(i) => i - 1,
    };
    let (a, b) = (phi[idx], phi[idx + 1]);
    let c = (b[0] - a[0]) as i128 * (y[1] - a[1]) as i128
        - (b[1] - a[1]) as i128 * (y[0] - a[0]) as i128;
    c.signum() as i8
}

/// Checks properties (F1)-(F5) of the gadget. (F3)-(F5) are checked by
/// classifying every lattice point of `J`, so `d` should stay at most 12.
pub fn check_properties(g: &FibGadget) -> Result<GadgetReport> {
    let d = g.d;
    let mut props = Vec::new();

    // (F1) convex position with a chain bending consistently.
    let mut f1 = PropertyResult {
        name: "F1",
        passed: true,
        counterexample: None,
    };
    for i in 0..d {
        if i + 1 < d && (g.phi[i + 1][0] <= g.phi[i][0] || g.phi[i + 1][1] <= g.phi[i][1]) {
            f1.passed = false;
            f1.counterexample = Some(g.phi[i + 1].to_vec());
            break;
        }
        if i + 2 < d && !cross(&g.phi[i], &g.phi[i + 1], &g.phi[i + 2]).is_negative() {
            f1.passed = false;
            f1.counterexample = Some(g.phi[i + 1].to_vec());
            break;
        }
    }
    props.push(f1);

    // (F2) empty segments and triangles, plus the determinant identity.
    let mut f2 = PropertyResult {
        name: "F2",
        passed: true,
        counterexample: None,
    };
    let origin = [BigInt::zero(), BigInt::zero()];
    for i in 0..d.saturating_sub(1) {
        let (p, q) = (&g.phi[i], &g.phi[i + 1]);
        let seg_gcd = (&q[0] - &p[0]).gcd(&(&q[1] - &p[1]));
        if !seg_gcd.is_one() || !interior_points(&origin, p, q).is_zero() {
            f2.passed = false;
            f2.counterexample = Some(q.to_vec());
            break;
        }
    }
    if f2.passed {
        for i in 0..(2 * d).saturating_sub(3) {
            let lhs = fib(i) * fib(i + 3) - fib(i + 1) * fib(i + 2);
            let rhs = if i % 2 == 0 { -BigInt::one() } else { BigInt::one() };
            // (-1)^(i-1): i = 0 gives -1, i = 1 gives +1.
            if lhs != rhs {
                f2.passed = false;
                f2.counterexample = Some(vec![BigInt::from(i)]);
                break;
            }
        }
    }
    props.push(f2);

    // (F3)-(F5) by scanning J.
    let phi: Vec<[i64; 2]> = g
        .phi
        .iter()
        .map(|p| [p[0].to_i64().unwrap(), p[1].to_i64().unwrap()])
        .collect();
    let x_hi = g.j_box.hi[0].to_i64().ok_or_else(|| Error::Precondition("d too large".into()))?;
    let y_hi = g.j_box.hi[1].to_i64().ok_or_else(|| Error::Precondition("d too large".into()))?;
    let s1 = IntSystem::from_polytope(&g.r1);
    let s2 = IntSystem::from_polytope(&g.r2);
    let mut f3 = None;
    let mut f4 = None;
    let mut f5 = None;
    let mut scanned = 0u64;
    for y1 in 1..=x_hi {
        for y2 in 0..=y_hi {
            scanned += 1;
            let y = [y1, y2];
            let side = side_of_chain(&phi, y);
            let on_phi = phi.binary_search(&y).is_ok();
            if f3.is_none() && side == 0 && !on_phi {
                f3 = Some(y);
            }
            let in1 = s1.contains(&y);
            let in2 = s2.contains(&y);
            if f4.is_none() && in1 != (side > 0) {
                f4 = Some(y);
            }
            if f5.is_none() && in2 != (side < 0) {
                f5 = Some(y);
            }
        }
    }
    for (name, bad) in [("F3", f3), ("F4", f4), ("F5", f5)] {
        props.push(PropertyResult {
            name,
            passed: bad.is_none(),
            counterexample: bad.map(|y| y.iter().map(|&v| BigInt::from(v)).collect()),
        });
    }
    Ok(GadgetReport {
        properties: props,
        scanned,
    })
}

/// Whether `y` is one of the Fibonacci points.
pub fn is_fib_point(g: &FibGadget, y: &[BigInt]) -> bool {
    g.phi.iter().any(|p| p[0] == y[0] && p[1] == y[1])
}
