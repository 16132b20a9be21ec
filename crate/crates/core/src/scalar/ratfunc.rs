//! Univariate rational functions `num(t) / den(t)` over a cyclotomic field.
//!
//! Stored in lowest terms with a monic denominator; the zero function is
//! `0 / 1`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::cyclo::{Cyclo, CycloField, CycloRing};
use super::poly;

#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    field: Arc<CycloField>,
    num: Vec<Cyclo>,
    den: Vec<Cyclo>,
}

impl RatFunc {
    pub fn from_cyclo(c: &Cyclo) -> RatFunc {
        let field = c.field().clone();
        let num = if c.is_zero() {
            Vec::new()
        } else {
            vec![c.clone()]
        };
        RatFunc {
            den: vec![Cyclo::one(&field)],
            field,
            num,
        }
    }

    /// `t^k` for any integer `k`.
    pub fn t_power(field: &Arc<CycloField>, k: i64) -> RatFunc {
        let mut mono = vec![Cyclo::zero(field); k.unsigned_abs() as usize + 1];
        mono[k.unsigned_abs() as usize] = Cyclo::one(field);
        let one = vec![Cyclo::one(field)];
        let (num, den) = if k >= 0 { (mono, one) } else { (one, mono) };
        RatFunc {
            field: field.clone(),
            num,
            den,
        }
    }

    /// Builds `num / den` and reduces it. `None` if `den` is zero.
    pub fn new(field: &Arc<CycloField>, num: Vec<Cyclo>, den: Vec<Cyclo>) -> Option<RatFunc> {
        let ring = CycloRing(field.clone());
        let mut num = num;
        let mut den = den;
        poly::trim(&ring, &mut num);
        poly::trim(&ring, &mut den);
        if den.is_empty() {
            return None;
        }
        Some(Self::reduced(field, num, den))
    }

    fn reduced(field: &Arc<CycloField>, num: Vec<Cyclo>, den: Vec<Cyclo>) -> RatFunc {
        let ring = CycloRing(field.clone());
        if num.is_empty() {
            return RatFunc {
                field: field.clone(),
                num,
                den: vec![Cyclo::one(field)],
            };
        }
        let g = poly::gcd(&ring, &num, &den);
        let (mut num, _) = poly::divrem(&ring, &num, &g);
        let (mut den, _) = poly::divrem(&ring, &den, &g);
        let lead_inv = den.last().unwrap().inv().unwrap();
        num = poly::scale(&ring, &num, &lead_inv);
        den = poly::scale(&ring, &den, &lead_inv);
        RatFunc {
            field: field.clone(),
            num,
            den,
        }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn numerator(&self) -> &[Cyclo] {
        &self.num
    }

    pub fn denominator(&self) -> &[Cyclo] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// `Some(c)` when the function does not depend on `t`.
    pub fn as_constant(&self) -> Option<Cyclo> {
        match (self.num.len(), self.den.len()) {
            (0, _) => Some(Cyclo::zero(&self.field)),
            (1, 1) => Some(self.num[0].clone()),
            _ => None,
        }
    }

    fn ring(&self) -> CycloRing {
        CycloRing(self.field.clone())
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let r = self.ring();
        let num = poly::add(
            &r,
            &poly::mul(&r, &self.num, &other.den),
            &poly::mul(&r, &other.num, &self.den),
        );
        Self::reduced(&self.field, num, poly::mul(&r, &self.den, &other.den))
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            field: self.field.clone(),
            num: self.num.iter().map(Cyclo::neg).collect(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        let r = self.ring();
        Self::reduced(
            &self.field,
            poly::mul(&r, &self.num, &other.num),
            poly::mul(&r, &self.den, &other.den),
        )
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return None;
        }
        Some(Self::reduced(
            &self.field,
            self.den.clone(),
            self.num.clone(),
        ))
    }
}

fn fmt_poly(f: &mut fmt::Formatter<'_>, p: &[Cyclo]) -> fmt::Result {
    if p.is_empty() {
        return f.write_str("0");
    }
    let mut first = true;
    for (k, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        match k {
            0 => write!(f, "({c})")?,
            1 => write!(f, "({c})*t")?,
            _ => write!(f, "({c})*t^{k}")?,
        }
    }
    Ok(())
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        fmt_poly(f, &self.num)?;
        f.write_str("] / [")?;
        fmt_poly(f, &self.den)?;
        f.write_str("]")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc[m={}]({})", self.field.conductor(), self)
    }
}
