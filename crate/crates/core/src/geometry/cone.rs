//! Double-description enumeration of the extreme rays of a pointed cone
//! `{h : M h >= 0}` in exact integer arithmetic.
//!
//! Rays are kept primitive (entries divided by their gcd). Arithmetic runs
//! in checked `i128` first and is redone in `BigInt` if anything overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{self, Rational};

pub(crate) struct ConeRays {
    pub rays: Vec<Vec<BigInt>>,
}

/// The constraint matrix does not have full column rank, so the cone
/// contains a line.
#[derive(Debug)]
pub(crate) struct NotPointed;

trait Num: Clone + Ord + Sized {
    fn zero() -> Self;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn add(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn gcd(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_pos(&self) -> bool;
    fn is_one(&self) -> bool;
}

impl Num for i128 {
    fn zero() -> Self {
        0
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128().filter(|x| x.unsigned_abs() < (1u128 << 120))
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_pos(&self) -> bool {
        *self > 0
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl Num for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn is_one(&self) -> bool {
        *self == BigInt::from(1)
    }
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray<T> {
    v: Vec<T>,
    zeros: Bits,
}

/// Enumerates the extreme rays of `{h : rows[i] . h >= 0}`.
pub(crate) fn extreme_rays(rows: &[Vec<BigInt>], dim: usize) -> Result<ConeRays, NotPointed> {
    let basis = select_basis(rows, dim).ok_or(NotPointed)?;
    if let Some(small) = run::<i128>(rows, dim, &basis) {
        return Ok(small);
    }
    Ok(run::<BigInt>(rows, dim, &basis).expect("BigInt arithmetic cannot overflow"))
}

/// Greedily picks `dim` linearly independent rows.
fn select_basis(rows: &[Vec<BigInt>], dim: usize) -> Option<Vec<usize>> {
    let mut echelon: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut v: Vec<Rational> = row.iter().map(arith::rat_int).collect();
        for (p, e) in &echelon {
            if !v[*p].is_zero() {
                let f = v[*p].clone() / &e[*p];
                for j in 0..dim {
                    let t = &e[j] * &f;
                    v[j] -= t;
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            echelon.push((p, v));
            chosen.push(idx);
            if chosen.len() == dim {
                return Some(chosen);
            }
        }
    }
    None
}

fn invert(m: &[Vec<BigInt>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Rational> = r.iter().map(arith::rat_int).collect();
            row.extend((0..n).map(|j| if i == j { arith::rat(1, 1) } else { arith::rat(0, 1) }));
            row
        })
        .collect();
    let e = arith::rref(std::mem::take(&mut a), 2 * n);
    assert_eq!(e.pivots.len(), n, "basis rows must be independent");
    e.rows.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn make_primitive<T: Num>(v: &mut [T]) {
    let mut g = T::zero();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = x.div(&g);
        }
    }
}

fn dot<T: Num>(a: &[T], b: &[T]) -> Option<T> {
    let mut s = T::zero();
    for (x, y) in a.iter().zip(b) {
        s = s.add(&x.mul(y)?)?;
    }
    Some(s)
}

fn run<T: Num>(rows: &[Vec<BigInt>], dim: usize, basis: &[usize]) -> Option<ConeRays> {
    let m: Vec<Vec<T>> = rows
        .iter()
        .map(|r| r.iter().map(T::from_big).collect::<Option<Vec<T>>>())
        .collect::<Option<_>>()?;
    let nrows = rows.len();

    // Initial simplicial cone: columns of the inverse of the basis matrix.
    let bmat: Vec<Vec<BigInt>> = basis.iter().map(|&i| rows[i].clone()).collect();
    let inv = invert(&bmat);
    let mut rays: Vec<Ray<T>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let col: Vec<Rational> = (0..dim).map(|i| inv[i][j].clone()).collect();
        let (mut ints, _) = arith::clear_denominators(&col);
        arith::primitive(&mut ints);
        let v = ints.iter().map(T::from_big).collect::<Option<Vec<T>>>()?;
        let mut zeros = Bits::new(nrows);
        for (k, &bi) in basis.iter().enumerate() {
            if k != j {
                zeros.set(bi);
            }
        }
        rays.push(Ray { v, zeros });
    }

    let mut in_basis = vec![false; nrows];
    for &b in basis {
        in_basis[b] = true;
    }
    let min_common = dim.saturating_sub(2) as u32;

    for idx in (0..nrows).filter(|&i| !in_basis[i]) {
        let a = &m[idx];
        let vals: Vec<T> = rays.iter().map(|r| dot(a, &r.v)).collect::<Option<_>>()?;
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_pos()).collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&i| !vals[i].is_pos() && !vals[i].is_zero())
            .collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zeros.set(idx);
                }
            }
            continue;
        }

        let mut fresh: Vec<Ray<T>> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.and(&rays[n].zeros);
                if common.count() < min_common {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == n || !common.subset_of(&r.zeros));
                if !adjacent {
                    continue;
                }
                let sp = &vals[p];
                let sn = vals[n].neg()?;
                let mut v = Vec::with_capacity(dim);
                for (x, y) in rays[n].v.iter().zip(&rays[p].v) {
                    v.push(sp.mul(x)?.add(&sn.mul(y)?)?);
                }
                make_primitive(&mut v);
                let mut zeros = common;
                zeros.set(idx);
                fresh.push(Ray { v, zeros });
            }
        }

        let mut next: Vec<Ray<T>> = Vec::with_capacity(rays.len() + fresh.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_zero() {
                r.zeros.set(idx);
                next.push(r);
            } else if vals[i].is_pos() {
                next.push(r);
            }
        }
        next.extend(fresh);
        rays = next;
    }

    Some(ConeRays {
        rays: rays
            .into_iter()
            .map(|r| r.v.iter().map(T::to_big).collect())
            .collect(),
    })
}
