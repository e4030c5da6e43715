//! Exact integer and rational helpers shared by the geometry code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational. `BigRational` keeps numerator and
/// denominator reduced with a positive denominator.
pub type Rational = BigRational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: &BigInt) -> Rational {
    Rational::from_integer(v.clone())
}

pub fn floor(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

pub fn ceil(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

pub fn lcm_all<'a, I: IntoIterator<Item = &'a BigInt>>(values: I) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| if v.is_zero() { acc } else { acc.lcm(v) })
}

pub fn gcd_all<'a, I: IntoIterator<Item = &'a BigInt>>(values: I) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// Clears denominators of a rational vector: returns the integer vector
/// `m * v` where `m` is the least common multiple of the denominators.
pub fn clear_denominators(v: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let m = lcm_all(v.iter().map(|q| q.denom()));
    let out = v
        .iter()
        .map(|q| (q * rat_int(&m)).to_integer())
        .collect();
    (out, m)
}

/// Divides an integer vector by the gcd of its entries.
pub fn primitive(v: &mut [BigInt]) {
    let g = gcd_all(v.iter());
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[BigInt], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + y * rat_int(x))
}

pub fn to_i64(v: &BigInt) -> Option<i64> {
    v.to_i64()
}

pub fn abs_fits(v: &BigInt, bits: u64) -> bool {
    v.abs().bits() < bits
}

/// Ceiling of `log2(r)` for `r >= 1`.
pub fn ceil_log2(r: usize) -> usize {
    assert!(r >= 1);
    let mut l = 0;
    while (1usize << l) < r {
        l += 1;
    }
    l
}

/// Rank and reduced row echelon form of a rational matrix.
pub struct Echelon {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

pub fn rref(mut m: Vec<Vec<Rational>>, ncols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Echelon { rows: m, pivots }
}

/// Integer basis of `{v : m v = 0}`.
pub fn nullspace(m: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let rows = m
        .iter()
        .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
        .collect();
    let e = rref(rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !e.pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            v[p] = -row[free].clone();
        }
        let (mut ints, _) = clear_denominators(&v);
        primitive(&mut ints);
        basis.push(ints);
    }
    basis
}
