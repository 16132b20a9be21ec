//! The cyclotomic field `Q(z)`, `z` a primitive `m`-th root of unity.
//!
//! Elements are stored as `num(z) / den` with `num` an integer polynomial of
//! degree `< phi(m)` reduced modulo the cyclotomic polynomial, `den > 0`, and
//! `gcd(content(num), den) = 1`. This representative is unique, so `==` is
//! field equality.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{self, Field, Rationals};

/// `Q(z_m)` together with its defining polynomial.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloField {
    m: u64,
    /// Monic, lowest degree first.
    modulus: Vec<BigInt>,
}

impl CycloField {
    /// Panics if `m == 0`.
    pub fn new(m: u64) -> Arc<CycloField> {
        assert!(m >= 1, "cyclotomic conductor must be positive");
        Arc::new(CycloField {
            m,
            modulus: poly::cyclotomic_polynomial(m),
        })
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    /// `phi(m)`, the degree of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Coefficients of the cyclotomic polynomial, lowest degree first.
    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    /// Reduces an integer polynomial of any degree modulo the cyclotomic
    /// polynomial, in place.
    fn reduce(&self, p: &mut Vec<BigInt>) {
        let d = self.degree();
        while p.len() > d {
            let top = p.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = p.len() - d;
            // x^{shift+d} = -x^shift * (modulus - x^d)
            for (k, c) in self.modulus[..d].iter().enumerate() {
                p[shift + k] -= &top * c;
            }
        }
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }
}

/// An element of a cyclotomic field.
#[derive(Clone, PartialEq, Eq)]
pub struct Cyclo {
    field: Arc<CycloField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclo {
    pub fn zero(field: &Arc<CycloField>) -> Cyclo {
        Cyclo {
            field: field.clone(),
            num: Vec::new(),
            den: BigInt::one(),
        }
    }

    pub fn one(field: &Arc<CycloField>) -> Cyclo {
        Cyclo::from_int(field, 1)
    }

    pub fn from_int(field: &Arc<CycloField>, c: i64) -> Cyclo {
        Cyclo::from_rational(field, BigRational::from_integer(c.into()))
    }

    pub fn from_rational(field: &Arc<CycloField>, c: BigRational) -> Cyclo {
        let mut out = Cyclo {
            field: field.clone(),
            num: vec![c.numer().clone()],
            den: c.denom().clone(),
        };
        out.normalize();
        out
    }

    /// `z^k`, with `k` reduced mod `m`.
    pub fn zeta_power(field: &Arc<CycloField>, k: i64) -> Cyclo {
        let m = field.conductor() as i64;
        let k = k.rem_euclid(m) as usize;
        let mut num = vec![BigInt::zero(); k + 1];
        num[k] = BigInt::one();
        field.reduce(&mut num);
        Cyclo {
            field: field.clone(),
            num,
            den: BigInt::one(),
        }
    }

    /// Builds `sum coeffs[k] z^k`, reducing as needed.
    pub fn from_coeffs(field: &Arc<CycloField>, coeffs: &[BigRational]) -> Cyclo {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        field.reduce(&mut num);
        let mut out = Cyclo {
            field: field.clone(),
            num,
            den,
        };
        out.normalize();
        out
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.num.len() == 1 && self.num[0].is_one() && self.den.is_one()
    }

    /// The reduced coefficient vector, length `phi(m)`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        let mut out: Vec<BigRational> = self
            .num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect();
        out.resize(self.field.degree(), BigRational::zero());
        out
    }

    /// `Some(c)` when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.num.len() {
            0 => Some(BigRational::zero()),
            1 => Some(BigRational::new(self.num[0].clone(), self.den.clone())),
            _ => None,
        }
    }

    fn normalize(&mut self) {
        while self.num.last().is_some_and(Zero::is_zero) {
            self.num.pop();
        }
        if self.num.is_empty() {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    fn check_field(&self, other: &Cyclo) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "mixing elements of Q(z_{}) and Q(z_{})",
            self.field.m,
            other.field.m
        );
    }

    pub fn add(&self, other: &Cyclo) -> Cyclo {
        self.check_field(other);
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Cyclo) -> Cyclo {
        self.check_field(other);
        self.combine(other, true)
    }

    fn combine(&self, other: &Cyclo, negate: bool) -> Cyclo {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { other.neg() } else { other.clone() };
        }
        let den = self.den.lcm(&other.den);
        let fa = &den / &self.den;
        let fb = &den / &other.den;
        let len = self.num.len().max(other.num.len());
        let mut num = Vec::with_capacity(len);
        for k in 0..len {
            let a = self.num.get(k).map(|c| c * &fa).unwrap_or_default();
            let b = other.num.get(k).map(|c| c * &fb).unwrap_or_default();
            num.push(if negate { a - b } else { a + b });
        }
        let mut out = Cyclo {
            field: self.field.clone(),
            num,
            den,
        };
        out.normalize();
        out
    }

    pub fn neg(&self) -> Cyclo {
        Cyclo {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Cyclo) -> Cyclo {
        self.check_field(other);
        if self.is_zero() || other.is_zero() {
            return Cyclo::zero(&self.field);
        }
        let mut num = vec![BigInt::zero(); self.num.len() + other.num.len() - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    num[i + j] += a * b;
                }
            }
        }
        self.field.reduce(&mut num);
        let mut out = Cyclo {
            field: self.field.clone(),
            num,
            den: &self.den * &other.den,
        };
        out.normalize();
        out
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against the
    /// cyclotomic polynomial. `None` for zero.
    pub fn inv(&self) -> Option<Cyclo> {
        if self.is_zero() {
            return None;
        }
        if self.num.len() == 1 {
            return Some(Cyclo::from_rational(
                &self.field,
                BigRational::new(self.den.clone(), self.num[0].clone()),
            ));
        }
        // monomials c z^k invert to c^{-1} z^{m-k}
        if self.num[..self.num.len() - 1].iter().all(Zero::is_zero) {
            let k = self.num.len() - 1;
            let c = BigRational::new(self.den.clone(), self.num[k].clone());
            let z = Cyclo::zeta_power(&self.field, -(k as i64));
            return Some(z.mul(&Cyclo::from_rational(&self.field, c)));
        }
        let q = Rationals;
        let a: Vec<BigRational> = self
            .num
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let modulus: Vec<BigRational> = self
            .field
            .modulus
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        // Phi_m is irreducible, so a nonzero reduced element is always a unit
        let inv_num = poly::inverse_mod(&q, &a, &modulus)
            .expect("nonzero element of a cyclotomic field is invertible");
        let scaled: Vec<BigRational> = inv_num
            .into_iter()
            .map(|c| c * BigRational::from_integer(self.den.clone()))
            .collect();
        Some(Cyclo::from_coeffs(&self.field, &scaled))
    }

    pub fn pow(&self, e: u64) -> Cyclo {
        let mut base = self.clone();
        let mut acc = Cyclo::one(&self.field);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `Some(k)` if this element is exactly `z^k` for some `0 <= k < m`.
    pub fn as_zeta_power(&self) -> Option<u64> {
        (0..self.field.m).find(|&k| *self == Cyclo::zeta_power(&self.field, k as i64))
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo[m={}]({})", self.field.m, self)
    }
}

impl fmt::Display for Cyclo {
    /// Prints as a polynomial in `z`, e.g. `1/2 - z + 3*z^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = BigRational::new(c.clone(), self.den.clone());
            let neg = coeff.is_negative();
            let abs = coeff.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => {}
                (_, false) => write!(f, "{abs}*")?,
            }
            match k {
                0 => {}
                1 => f.write_str("z")?,
                _ => write!(f, "z^{k}")?,
            }
        }
        Ok(())
    }
}

/// Field object over `Q(z_m)`, for polynomial arithmetic with cyclotomic
/// coefficients.
#[derive(Clone)]
pub(crate) struct CycloRing(pub(crate) Arc<CycloField>);

impl Field for CycloRing {
    type Elem = Cyclo;

    fn zero(&self) -> Cyclo {
        Cyclo::zero(&self.0)
    }
    fn one(&self) -> Cyclo {
        Cyclo::one(&self.0)
    }
    fn is_zero(&self, a: &Cyclo) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        a.add(b)
    }
    fn sub(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        a.sub(b)
    }
    fn mul(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        a.mul(b)
    }
    fn inv(&self, a: &Cyclo) -> Cyclo {
        a.inv().expect("inverse of zero")
    }
    fn neg(&self, a: &Cyclo) -> Cyclo {
        a.neg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_powers_reduce() {
        let f4 = CycloField::new(4);
        assert_eq!(Cyclo::zeta_power(&f4, 2), Cyclo::from_int(&f4, -1));
        let f7 = CycloField::new(7);
        assert!(Cyclo::zeta_power(&f7, 0).is_one());
        assert!(Cyclo::zeta_power(&f7, 7).is_one());
        assert_eq!(Cyclo::zeta_power(&f7, -1), Cyclo::zeta_power(&f7, 6));
    }

    #[test]
    fn nontrivial_roots_sum_to_minus_one() {
        let f5 = CycloField::new(5);
        let s = (1..5).fold(Cyclo::zero(&f5), |acc, k| {
            acc.add(&Cyclo::zeta_power(&f5, k))
        });
        assert_eq!(s, Cyclo::from_int(&f5, -1));
    }

    #[test]
    fn inverse_of_zeta_minus_one() {
        let f7 = CycloField::new(7);
        let x = Cyclo::zeta_power(&f7, 1).sub(&Cyclo::one(&f7));
        let y = x.inv().unwrap();
        assert!(x.mul(&y).is_one());
        assert!(Cyclo::zero(&f7).inv().is_none());
    }

    #[test]
    fn rational_normalization() {
        let f3 = CycloField::new(3);
        let half = BigRational::new(1.into(), 2.into());
        let a = Cyclo::from_coeffs(&f3, &[half.clone(), half.clone()]);
        let b = Cyclo::from_coeffs(&f3, &[BigRational::one(), BigRational::one()]);
        let two = Cyclo::from_int(&f3, 2);
        assert_eq!(a.mul(&two), b);
        // 1 + z = -z^2 in Q(z_3)
        assert_eq!(b, Cyclo::zeta_power(&f3, 2).neg());
    }

    #[test]
    fn display() {
        let f5 = CycloField::new(5);
        let x = Cyclo::zeta_power(&f5, 1).sub(&Cyclo::from_int(&f5, 3));
        assert_eq!(alloc::format!("{x}"), "-3 + z");
        assert_eq!(
            alloc::format!("{}", Cyclo::zeta_power(&f5, 4)),
            "-1 - z - z^2 - z^3"
        );
    }
}
