//! Splitting a parametric system by the Doignon-Bell-Scarf bound: for
//! fixed parameters `x`, `A (x, y) <= b` has an integer solution `y` in
//! dimension `d2` iff every subsystem of `2^d2` rows does.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::geometry::LinearInequality;

/// A row subset of the original system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subsystem {
    /// Indices into the original rows, increasing.
    pub rows: Vec<usize>,
    pub a: Vec<Vec<BigInt>>,
    pub b: Vec<BigInt>,
}

impl Subsystem {
    /// Rows in `y` after substituting the parameters.
    pub fn fix_parameters(&self, x: &[BigInt]) -> Vec<LinearInequality> {
        fix(&self.a, &self.b, x)
    }
}

pub(crate) fn fix(a: &[Vec<BigInt>], b: &[BigInt], x: &[BigInt]) -> Vec<LinearInequality> {
    a.iter()
        .zip(b)
        .map(|(row, rhs)| {
            let (ax, ay) = row.split_at(x.len());
            let shift: BigInt = ax.iter().zip(x).map(|(c, v)| c * v).sum();
            LinearInequality::new(ay.to_vec(), rhs - shift)
        })
        .collect()
}

/// All `C(m, 2^d2)` subsystems of `A (x, y) <= b`, where the last `d2`
/// columns of `A` are the `y` variables.
pub fn dbs_split(a: &[Vec<BigInt>], b: &[BigInt], d2: usize) -> Result<Vec<Subsystem>> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    if d2 == 0 || d2 > 6 {
        return Err(Error::Precondition(format!("d2 = {d2} outside 1..=6")));
    }
    let width = a.first().map_or(d2, Vec::len);
    if width < d2 || a.iter().any(|r| r.len() != width) {
        return Err(Error::Precondition("rows of A differ in length".into()));
    }
    let size = 1usize << d2;
    if a.len() < size {
        return Err(Error::Precondition(format!(
            "{} rows, fewer than 2^{d2} = {size}",
            a.len()
        )));
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(Subsystem {
            rows: idx.clone(),
            a: idx.iter().map(|&i| a[i].clone()).collect(),
            b: idx.iter().map(|&i| b[i].clone()).collect(),
        });
        // Next combination in lexicographic order.
        let m = a.len();
        let Some(pos) = (0..size).rev().find(|&p| idx[p] < m - size + p) else {
            break;
        };
        idx[pos] += 1;
        for q in pos + 1..size {
            idx[q] = idx[q - 1] + 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{integer_feasible, DEFAULT_ENUMERATION_BUDGET};

    fn rows(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&c| c.into()).collect()).collect()
    }

    #[test]
    fn three_choose_two() {
        let a = rows(&[&[0, -1], &[0, 1], &[0, -1]]);
        let b: Vec<BigInt> = vec![0.into(), 2.into(), (-5).into()];
        let s = dbs_split(&a, &b, 1).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s[2].rows, vec![1, 2]);
        // y >= 0, y <= 2, y >= 5: infeasible, and so is {y <= 2, y >= 5}.
        let x = [BigInt::from(0)];
        let full = integer_feasible(1, &fix(&a, &b, &x), DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert!(!full);
        let sub = integer_feasible(1, &s[2].fix_parameters(&x), DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert!(!sub);
    }

    #[test]
    fn binomial_counts() {
        let a = vec![rows(&[&[1, 1, 1]])[0].clone(); 7];
        let b = vec![BigInt::from(0); 7];
        assert_eq!(dbs_split(&a, &b, 2).unwrap().len(), 35);
        assert!(dbs_split(&a[..3], &b[..3], 2).is_err());
    }
}
