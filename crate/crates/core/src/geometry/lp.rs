//! Exact convex-hull membership by a phase-one simplex over rationals.

use num_traits::{Signed, Zero};

use super::Point;
use crate::arith::{self, Rational};

/// Whether `p` lies in the convex hull of `points`.
///
/// Solves `sum l_j v_j = p, sum l_j = 1, l >= 0` with Bland's rule, so the
/// answer is exact and the pivoting terminates.
pub fn conv_contains(points: &[Point], p: &[Rational]) -> bool {
    if points.is_empty() {
        return false;
    }
    let n = p.len();
    let m = points.len();
    let rows = n + 1;
    // Columns: m lambdas, then `rows` artificials, then the right-hand side.
    let width = m + rows + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(rows + 1);
    for i in 0..rows {
        let mut row = vec![Rational::zero(); width];
        for (j, v) in points.iter().enumerate() {
            row[j] = if i < n { v[i].clone() } else { arith::rat(1, 1) };
        }
        let mut rhs = if i < n { p[i].clone() } else { arith::rat(1, 1) };
        if rhs.is_negative() {
            for x in row.iter_mut().take(m) {
                *x = -x.clone();
            }
            rhs = -rhs;
        }
        row[m + i] = arith::rat(1, 1);
        row[width - 1] = rhs;
        t.push(row);
    }
    // Objective row: minimise the sum of artificials, expressed in the
    // non-basic variables (reduced costs).
    let mut obj = vec![Rational::zero(); width];
    for row in &t {
        for j in 0..width {
            if j < m || j == width - 1 {
                obj[j] -= &row[j];
            }
        }
    }
    t.push(obj);
    let mut basis: Vec<usize> = (m..m + rows).collect();

    loop {
        let obj = &t[rows];
        let Some(enter) = (0..width - 1).find(|&j| obj[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..rows {
            let a = &t[i][enter];
            if a.is_positive() {
                let ratio = &t[i][width - 1] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // Unbounded objective cannot happen: it is bounded below by 0.
            break;
        };
        let piv = t[r][enter].clone();
        for x in t[r].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..=rows {
            if i != r && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..width {
                    let d = &t[r][j] * &f;
                    t[i][j] -= d;
                }
            }
        }
        basis[r] = enter;
    }
    t[rows][width - 1].is_zero()
}
