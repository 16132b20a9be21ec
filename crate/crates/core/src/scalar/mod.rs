//! Exact scalars: cyclotomic numbers, optionally extended by one formal
//! indeterminate `t`.
//!
//! A [`Scalar`] is in canonical form: a rational function that does not
//! depend on `t` is always stored as [`Scalar::Cyclo`]. Equality is therefore
//! representational equality.

mod cyclo;
pub(crate) mod poly;
mod ratfunc;

use alloc::sync::Arc;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;

pub use cyclo::{Cyclo, CycloField};
pub use ratfunc::RatFunc;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub enum Scalar {
    Cyclo(Cyclo),
    RatFunc(RatFunc),
}

/// Multiplicative order of a scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RootOrder {
    Finite(u64),
    Infinite,
}

impl RootOrder {
    pub fn is_finite(self) -> bool {
        matches!(self, RootOrder::Finite(_))
    }
}

impl Scalar {
    pub fn zero(field: &Arc<CycloField>) -> Scalar {
        Scalar::Cyclo(Cyclo::zero(field))
    }

    pub fn one(field: &Arc<CycloField>) -> Scalar {
        Scalar::Cyclo(Cyclo::one(field))
    }

    pub fn from_int(field: &Arc<CycloField>, c: i64) -> Scalar {
        Scalar::Cyclo(Cyclo::from_int(field, c))
    }

    /// `z_m^k`; `k` is reduced mod `m`.
    pub fn zeta(field: &Arc<CycloField>, k: i64) -> Scalar {
        Scalar::Cyclo(Cyclo::zeta_power(field, k))
    }

    /// The formal indeterminate raised to `k`.
    pub fn t_power(field: &Arc<CycloField>, k: i64) -> Scalar {
        Scalar::from_ratfunc(RatFunc::t_power(field, k))
    }

    pub fn from_ratfunc(f: RatFunc) -> Scalar {
        match f.as_constant() {
            Some(c) => Scalar::Cyclo(c),
            None => Scalar::RatFunc(f),
        }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        match self {
            Scalar::Cyclo(c) => c.field(),
            Scalar::RatFunc(f) => f.field(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Cyclo(c) => c.is_zero(),
            Scalar::RatFunc(_) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Cyclo(c) => c.is_one(),
            Scalar::RatFunc(_) => false,
        }
    }

    /// True if the value depends on the formal indeterminate.
    pub fn is_formal(&self) -> bool {
        matches!(self, Scalar::RatFunc(_))
    }

    pub fn as_cyclo(&self) -> Option<&Cyclo> {
        match self {
            Scalar::Cyclo(c) => Some(c),
            Scalar::RatFunc(_) => None,
        }
    }

    /// The value as a rational function (constants embed as `c / 1`).
    pub fn to_ratfunc(&self) -> RatFunc {
        match self {
            Scalar::Cyclo(c) => RatFunc::from_cyclo(c),
            Scalar::RatFunc(f) => f.clone(),
        }
    }

    fn binary(
        &self,
        other: &Scalar,
        cyc: impl FnOnce(&Cyclo, &Cyclo) -> Cyclo,
        rat: impl FnOnce(&RatFunc, &RatFunc) -> RatFunc,
    ) -> Scalar {
        match (self, other) {
            (Scalar::Cyclo(a), Scalar::Cyclo(b)) => Scalar::Cyclo(cyc(a, b)),
            _ => Scalar::from_ratfunc(rat(&self.to_ratfunc(), &other.to_ratfunc())),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Cyclo(c) => c.inv().map(Scalar::Cyclo).ok_or(Error::DivisionByZero),
            Scalar::RatFunc(f) => f
                .inv()
                .map(Scalar::from_ratfunc)
                .ok_or(Error::DivisionByZero),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(match &base {
            Scalar::Cyclo(c) => Scalar::Cyclo(c.pow(e)),
            Scalar::RatFunc(_) => {
                let mut acc = Scalar::one(self.field());
                let mut b = base.clone();
                let mut e = e;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = &acc * &b;
                    }
                    e >>= 1;
                    if e > 0 {
                        b = &b * &b;
                    }
                }
                acc
            }
        })
    }

    /// Least `k >= 1` with `self^k = 1`.
    ///
    /// A cyclotomic number is a root of unity iff its `lcm(2, m)`-th power is
    /// one (the roots of unity in `Q(z_m)` are exactly `+-z_m^j`), so only
    /// divisors of `lcm(2, m)` are tried. Anything depending on `t` has
    /// infinite order.
    pub fn mult_order(&self) -> Result<RootOrder> {
        let c = match self {
            Scalar::RatFunc(_) => return Ok(RootOrder::Infinite),
            Scalar::Cyclo(c) if c.is_zero() => return Err(Error::ZeroElement),
            Scalar::Cyclo(c) => c,
        };
        let l = 2u64.lcm(&c.field().conductor());
        if !c.pow(l).is_one() {
            return Ok(RootOrder::Infinite);
        }
        let order = (1..=l)
            .filter(|d| l % d == 0)
            .find(|&d| c.pow(d).is_one())
            .expect("l itself works");
        Ok(RootOrder::Finite(order))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Cyclo(c) => fmt::Debug::fmt(c, f),
            Scalar::RatFunc(r) => fmt::Debug::fmt(r, f),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Cyclo(c) => fmt::Display::fmt(c, f),
            Scalar::RatFunc(r) => fmt::Display::fmt(r, f),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $cyc:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.binary(rhs, |a, b| a.$cyc(b), |a, b| a.$cyc(b))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Cyclo(c) => Scalar::Cyclo(c.neg()),
            Scalar::RatFunc(f) => Scalar::RatFunc(f.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Product of an iterator of scalars; `one` for the empty product.
pub fn product<'a>(field: &Arc<CycloField>, it: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
    it.into_iter().fold(Scalar::one(field), |acc, x| &acc * x)
}

/// Sum of an iterator of scalars.
pub fn sum<'a>(field: &Arc<CycloField>, it: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
    it.into_iter().fold(Scalar::zero(field), |acc, x| &acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn divisors(n: u64) -> Vec<u64> {
        (1..=n).filter(|&d| n.is_multiple_of(d)).collect()
    }

    #[test]
    fn zeta_examples() {
        let f4 = CycloField::new(4);
        assert_eq!(Scalar::zeta(&f4, 2), Scalar::from_int(&f4, -1));
        let f7 = CycloField::new(7);
        assert!(Scalar::zeta(&f7, 0).is_one());
        let f12 = CycloField::new(12);
        let z3 = Scalar::zeta(&f12, 4);
        assert!(!z3.is_one());
        assert!(z3.pow(3).unwrap().is_one());
    }

    #[test]
    fn inverse_root() {
        let f7 = CycloField::new(7);
        assert!((Scalar::zeta(&f7, 1) * Scalar::zeta(&f7, 6)).is_one());
    }

    #[test]
    fn division_by_zero() {
        let f7 = CycloField::new(7);
        let one = Scalar::one(&f7);
        assert_eq!(
            one.checked_div(&Scalar::zero(&f7)),
            Err(Error::DivisionByZero)
        );
        let x = Scalar::zeta(&f7, 1) - &one;
        let y = one.checked_div(&x).unwrap();
        assert!((&x * &y).is_one());
    }

    #[test]
    fn orders() {
        let f7 = CycloField::new(7);
        assert_eq!(Scalar::zeta(&f7, 2).mult_order(), Ok(RootOrder::Finite(7)));
        // -1 lies in Q(z_7) but is not a power of z_7
        assert_eq!(
            Scalar::from_int(&f7, -1).mult_order(),
            Ok(RootOrder::Finite(2))
        );
        assert_eq!(
            (-Scalar::zeta(&f7, 1)).mult_order(),
            Ok(RootOrder::Finite(14))
        );
        let f12 = CycloField::new(12);
        assert_eq!(Scalar::zeta(&f12, 8).mult_order(), Ok(RootOrder::Finite(3)));
        assert_eq!(
            Scalar::from_int(&f12, 2).mult_order(),
            Ok(RootOrder::Infinite)
        );
        assert_eq!(
            Scalar::t_power(&f12, 1).mult_order(),
            Ok(RootOrder::Infinite)
        );
        assert_eq!(Scalar::zero(&f12).mult_order(), Err(Error::ZeroElement));
        let z = Scalar::zeta(&f12, 1);
        assert_eq!((&z + &z).mult_order(), Ok(RootOrder::Infinite));
    }

    #[test]
    fn formal_values_canonicalize() {
        let f5 = CycloField::new(5);
        let t = Scalar::t_power(&f5, 1);
        assert!(t.is_formal());
        let back = &t * &Scalar::t_power(&f5, -1);
        assert_eq!(back, Scalar::one(&f5));
        assert!(!back.is_formal());
        assert!((&t - &t).is_zero());
    }

    fn arb_cyclo(m: u64) -> impl Strategy<Value = Scalar> {
        let field = CycloField::new(m);
        proptest::collection::vec(-4i64..5, 0..(m as usize + 2)).prop_map(move |cs| {
            cs.iter()
                .enumerate()
                .fold(Scalar::zero(&field), |acc, (k, &c)| {
                    acc + Scalar::from_int(&field, c) * Scalar::zeta(&field, k as i64)
                })
        })
    }

    fn arb_formal(m: u64) -> impl Strategy<Value = Scalar> {
        let field = CycloField::new(m);
        (arb_cyclo(m), arb_cyclo(m), 0i64..3, 0i64..3).prop_map(move |(a, b, i, j)| {
            let num = &a * &Scalar::t_power(&field, i) + Scalar::one(&field);
            let den = &b * &Scalar::t_power(&field, j) + Scalar::t_power(&field, 1);
            match den.inv() {
                Ok(d) => &num * &d,
                Err(_) => num,
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in arb_cyclo(12), b in arb_cyclo(12), c in arb_cyclo(12)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn formal_field_axioms(a in arb_formal(3), b in arb_formal(3), c in arb_formal(3)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn promotion_coherence(a in arb_cyclo(5), b in arb_cyclo(5)) {
            let (ra, rb) = (a.to_ratfunc(), b.to_ratfunc());
            prop_assert_eq!(ra.mul(&rb), (&a * &b).to_ratfunc());
            prop_assert_eq!(ra.add(&rb), (&a + &b).to_ratfunc());
            prop_assert_eq!(ra.sub(&rb), (&a - &b).to_ratfunc());
        }

        #[test]
        fn order_is_minimal(m in 2u64..13, k in 0i64..24, neg in proptest::bool::ANY) {
            let f = CycloField::new(m);
            let z = Scalar::zeta(&f, k);
            let a = if neg { -z } else { z };
            if let Ok(RootOrder::Finite(o)) = a.mult_order() {
                prop_assert!(a.pow(o as i64).unwrap().is_one());
                for d in divisors(o).into_iter().filter(|&d| d < o) {
                    prop_assert!(!a.pow(d as i64).unwrap().is_one());
                }
            } else {
                prop_assert!(false, "roots of unity have finite order");
            }
        }
    }
}
