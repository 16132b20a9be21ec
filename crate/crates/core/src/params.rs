//! The multiparameter `Q = {r, p_ij}` and its kappa table.
//!
//! Indices are 0-based throughout the library: `p(i, j)` with `i < j < n`.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::{CycloField, RootOrder, Scalar};

/// A parameter value as entered in a configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamEntry {
    /// `z_m^k`
    Root(i64),
    /// `t^k` in the formal indeterminate
    Formal(i64),
}

impl ParamEntry {
    fn to_scalar(self, field: &Arc<CycloField>) -> Scalar {
        match self {
            ParamEntry::Root(k) => Scalar::zeta(field, k),
            ParamEntry::Formal(k) => Scalar::t_power(field, k),
        }
    }
}

/// Exponents of all parameters in base `z_m`, available when no entry is formal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exponents {
    pub m: u64,
    pub r: i64,
    /// `p[(i, j)]` for `i < j`, reduced mod `m`.
    pub p: BTreeMap<(usize, usize), i64>,
}

impl Exponents {
    /// Exponent of `kappa_j^i`, reduced mod `m`.
    pub fn kappa(&self, i: usize, j: usize) -> i64 {
        let m = self.m as i64;
        let e = match i.cmp(&j) {
            core::cmp::Ordering::Less => self.p[&(i, j)],
            core::cmp::Ordering::Equal => self.r,
            core::cmp::Ordering::Greater => self.r - self.p[&(j, i)],
        };
        e.rem_euclid(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSet {
    n: usize,
    field: Arc<CycloField>,
    r: Scalar,
    p: BTreeMap<(usize, usize), Scalar>,
    exponents: Option<Exponents>,
    kappa: KappaTable,
}

/// `entry(i, j) = kappa_j^i`: row `i` holds the diagonal values of `K_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaTable {
    n: usize,
    entries: Vec<Scalar>,
}

impl KappaTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `kappa_j^i`
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }
}

/// Builds a parameter set from exponent data. Keys of `p` are 0-based `(i, j)`
/// with `i < j < n`.
pub fn build_params(
    n: usize,
    m: u64,
    r: ParamEntry,
    p: &BTreeMap<(usize, usize), ParamEntry>,
) -> Result<ParamSet> {
    if m < 2 {
        return Err(Error::InvalidConductor(m));
    }
    if n < 2 {
        return Err(Error::InvalidSize(n));
    }
    for &(i, j) in p.keys() {
        if !(i < j && j < n) {
            return Err(Error::InvalidParameterKey { i, j });
        }
    }
    let field = CycloField::new(m);
    let mut values = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let e = p.get(&(i, j)).ok_or(Error::MissingParameter { i, j })?;
            values.insert((i, j), e.to_scalar(&field));
        }
    }
    let exponents = match r {
        ParamEntry::Root(re) if p.values().all(|e| matches!(e, ParamEntry::Root(_))) => {
            Some(Exponents {
                m,
                r: re.rem_euclid(m as i64),
                p: p.iter()
                    .map(|(&k, e)| match e {
                        ParamEntry::Root(x) => (k, x.rem_euclid(m as i64)),
                        ParamEntry::Formal(_) => unreachable!(),
                    })
                    .collect(),
            })
        }
        _ => None,
    };
    let mut ps = ParamSet::new(n, r.to_scalar(&field), values)?;
    ps.exponents = exponents;
    Ok(ps)
}

impl ParamSet {
    /// Builds a parameter set from arbitrary nonzero scalars.
    pub fn new(n: usize, r: Scalar, p: BTreeMap<(usize, usize), Scalar>) -> Result<ParamSet> {
        if n < 2 {
            return Err(Error::InvalidSize(n));
        }
        let field = r.field().clone();
        if r.is_zero() {
            return Err(Error::ZeroParameter("r"));
        }
        if r.is_one() {
            return Err(Error::REqualsOne);
        }
        for &(i, j) in p.keys() {
            if !(i < j && j < n) {
                return Err(Error::InvalidParameterKey { i, j });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let v = p.get(&(i, j)).ok_or(Error::MissingParameter { i, j })?;
                if v.is_zero() {
                    return Err(Error::ZeroParameter("p"));
                }
            }
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(match i.cmp(&j) {
                    core::cmp::Ordering::Less => p[&(i, j)].clone(),
                    core::cmp::Ordering::Equal => r.clone(),
                    core::cmp::Ordering::Greater => r.checked_div(&p[&(j, i)])?,
                });
            }
        }
        Ok(ParamSet {
            n,
            field,
            r,
            p,
            exponents: None,
            kappa: KappaTable { n, entries },
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn r(&self) -> &Scalar {
        &self.r
    }

    /// `p_ij` for `i < j`.
    pub fn p(&self, i: usize, j: usize) -> &Scalar {
        &self.p[&(i, j)]
    }

    /// `q_ij = r / p_ij` for `i < j`.
    pub fn q(&self, i: usize, j: usize) -> &Scalar {
        self.kappa.get(j, i)
    }

    pub fn kappa(&self) -> &KappaTable {
        &self.kappa
    }

    pub fn exponents(&self) -> Option<&Exponents> {
        self.exponents.as_ref()
    }

    pub fn is_formal(&self) -> bool {
        self.r.is_formal() || self.p.values().any(Scalar::is_formal)
    }

    /// True iff `r` and every `q_ij` are roots of unity.
    pub fn is_finite_dimensional(&self) -> bool {
        let finite = |s: &Scalar| matches!(s.mult_order(), Ok(RootOrder::Finite(_)));
        finite(&self.r) && (0..self.n).all(|i| (i + 1..self.n).all(|j| finite(self.q(i, j))))
    }

    /// `P_l = prod_j kappa_j^l`.
    pub fn det_values(&self) -> Vec<Scalar> {
        (0..self.n)
            .map(|l| crate::scalar::product(&self.field, self.kappa.row(l)))
            .collect()
    }

    /// `P_l = r^(l+1) prod_j p_lj` with `p_ll = 1`, `p_jl = p_lj^-1`.
    pub fn det_values_from_p(&self) -> Vec<Scalar> {
        (0..self.n)
            .map(|l| {
                let mut acc = self.r.pow(l as i64 + 1).expect("r is nonzero");
                for j in 0..self.n {
                    acc = match l.cmp(&j) {
                        core::cmp::Ordering::Less => &acc * self.p(l, j),
                        core::cmp::Ordering::Equal => acc,
                        core::cmp::Ordering::Greater => {
                            acc.checked_div(self.p(j, l)).expect("p is nonzero")
                        }
                    };
                }
                acc
            })
            .collect()
    }

    /// The determinant group-like is central iff all `P_l` agree.
    pub fn det_is_central(&self) -> bool {
        let p = self.det_values();
        p.windows(2).all(|w| w[0] == w[1])
    }
}

/// Convenience constructor for exponent-only parameter sets; `p` lists
/// `((i, j), exponent)` with 0-based keys.
pub fn root_params(n: usize, m: u64, r: i64, p: &[((usize, usize), i64)]) -> Result<ParamSet> {
    let map = p.iter().map(|&(k, e)| (k, ParamEntry::Root(e))).collect();
    build_params(n, m, ParamEntry::Root(r), &map)
}

/// `r = z_m^r_exp`, `p_ij = z_m^p_exp` for every `i < j`.
pub fn uniform_params(n: usize, m: u64, r: i64, p: i64) -> Result<ParamSet> {
    let mut map = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            map.insert((i, j), ParamEntry::Root(p));
        }
    }
    build_params(n, m, ParamEntry::Root(r), &map)
}

/// The three-parameter family over `z_7` with `r = q`, `p_12 = p_23 = q^2`,
/// `p_13 = q^-1`.
pub fn example_seven() -> ParamSet {
    root_params(3, 7, 1, &[((0, 1), 2), ((1, 2), 2), ((0, 2), -1)]).expect("valid parameters")
}

/// The one-parameter family `r = q^2`, `p_ij = q` with `q` of order `n + 1`.
pub fn example_one_parameter(n: usize) -> ParamSet {
    uniform_params(n, n as u64 + 1, 2, 1).expect("valid parameters")
}

/// `n = 2`, `r = z_5`, `p_12 = z_5^2`: the determinant is not central.
pub fn example_non_central() -> ParamSet {
    root_params(2, 5, 1, &[((0, 1), 2)]).expect("valid parameters")
}
