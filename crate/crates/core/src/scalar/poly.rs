//! Dense univariate polynomials over an exact field.
//!
//! Polynomials are plain coefficient vectors, lowest degree first, with no
//! trailing zeros (the zero polynomial is the empty vector). The field is
//! passed explicitly as a [`Field`] object so that element types which need
//! context (cyclotomic elements carry their conductor) work the same way as
//! rationals.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A field object: produces constants and performs arithmetic on `Elem`s.
pub(crate) trait Field {
    type Elem: Clone + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Caller guarantees `a != 0`.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }
}

/// The rationals.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
}

pub(crate) fn trim<F: Field>(f: &F, p: &mut Vec<F::Elem>) {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
}

pub(crate) fn degree<E>(p: &[E]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub(crate) fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let len = a.len().max(b.len());
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        out.push(match (a.get(k), b.get(k)) {
            (Some(x), Some(y)) => f.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        });
    }
    trim(f, &mut out);
    out
}

pub(crate) fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let len = a.len().max(b.len());
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        out.push(match (a.get(k), b.get(k)) {
            (Some(x), Some(y)) => f.sub(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => f.neg(y),
            (None, None) => unreachable!(),
        });
    }
    trim(f, &mut out);
    out
}

pub(crate) fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if f.is_zero(y) {
                continue;
            }
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, &mut out);
    out
}

pub(crate) fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
    if f.is_zero(c) {
        return Vec::new();
    }
    let mut out: Vec<_> = a.iter().map(|x| f.mul(x, c)).collect();
    trim(f, &mut out);
    out
}

/// Euclidean division. Panics if `b` is the zero polynomial.
pub(crate) fn divrem<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let db = degree(b).expect("polynomial division by zero");
    let lead_inv = f.inv(&b[db]);
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![f.zero(); rem.len() - db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = f.mul(&rem[dr], &lead_inv);
        let shift = dr - db;
        for (k, bk) in b.iter().enumerate() {
            rem[shift + k] = f.sub(&rem[shift + k], &f.mul(&c, bk));
        }
        quot[shift] = c;
        // the leading term cancels exactly; drop it even if `sub` left a
        // representational zero behind
        rem.pop();
        trim(f, &mut rem);
    }
    trim(f, &mut quot);
    (quot, rem)
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub(crate) fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let (_, r) = divrem(f, &x, &y);
        x = y;
        y = r;
    }
    make_monic(f, &x)
}

pub(crate) fn make_monic<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(lead) => {
            let inv = f.inv(lead);
            scale(f, a, &inv)
        }
    }
}

/// Inverse of `a` modulo `modulus`, when `gcd(a, modulus) = 1`.
pub(crate) fn inverse_mod<F: Field>(
    f: &F,
    a: &[F::Elem],
    modulus: &[F::Elem],
) -> Option<Vec<F::Elem>> {
    // invariant: s_k * a == r_k (mod modulus)
    let (_, r0) = divrem(f, a, modulus);
    let (mut r_prev, mut r_cur) = (modulus.to_vec(), r0);
    let (mut s_prev, mut s_cur): (Vec<F::Elem>, Vec<F::Elem>) = (Vec::new(), vec![f.one()]);
    while !r_cur.is_empty() {
        let (q, r_next) = divrem(f, &r_prev, &r_cur);
        let s_next = sub(f, &s_prev, &mul(f, &q, &s_cur));
        r_prev = r_cur;
        r_cur = r_next;
        s_prev = s_cur;
        s_cur = s_next;
    }
    if degree(&r_prev) != Some(0) {
        return None;
    }
    let c = f.inv(&r_prev[0]);
    let (_, s) = divrem(f, &scale(f, &s_prev, &c), modulus);
    Some(s)
}

/// The `m`-th cyclotomic polynomial with integer coefficients, lowest degree first.
pub(crate) fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    assert!(m >= 1);
    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
    let q = Rationals;
    let to_q = |p: &[BigInt]| -> Vec<BigRational> {
        p.iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    };
    let mut num: Vec<BigRational> = vec![BigRational::zero(); m as usize + 1];
    num[0] = -BigRational::one();
    num[m as usize] = BigRational::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let phi_d = to_q(&cyclotomic_polynomial(d));
            let (quot, rem) = divrem(&q, &num, &phi_d);
            debug_assert!(rem.is_empty());
            num = quot;
        }
    }
    num.into_iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect()
}
