//! Group-like elements of `U_Q` as exponent vectors in `(Z/m)^n`.
//!
//! A group-like character is determined by its diagonal values, and for
//! parameters that are powers of `z_m` those values are recorded by their
//! exponents. The group law is entrywise addition mod `m`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::frt::TWord;
use crate::params::{Exponents, ParamSet};
use crate::uq::{self, convolve, verify_identity, Evaluator, Functional};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CharVector {
    m: u64,
    entries: Vec<i64>,
}

impl CharVector {
    pub fn new(m: u64, entries: Vec<i64>) -> CharVector {
        let entries = entries
            .into_iter()
            .map(|e| e.rem_euclid(m as i64))
            .collect();
        CharVector { m, entries }
    }

    pub fn zero(m: u64, n: usize) -> CharVector {
        CharVector {
            m,
            entries: alloc::vec![0; n],
        }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &CharVector) -> CharVector {
        assert_eq!(self.m, other.m, "modulus mismatch");
        CharVector::new(
            self.m,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, k: i64) -> CharVector {
        CharVector::new(self.m, self.entries.iter().map(|a| a * k).collect())
    }

    pub fn sub(&self, other: &CharVector) -> CharVector {
        self.add(&other.scale(-1))
    }

    /// Order in `(Z/m)^n`.
    pub fn order(&self) -> u64 {
        element_order(self)
    }
}

fn exponents(ps: &ParamSet) -> Result<&Exponents> {
    ps.exponents().ok_or(Error::FormalModeUnsupported)
}

/// `K_i -> (exp kappa_1^i, ..., exp kappa_n^i)`
pub fn char_vec_k(ps: &ParamSet, i: usize) -> Result<CharVector> {
    let e = exponents(ps)?;
    Ok(CharVector::new(
        e.m,
        (0..ps.n()).map(|j| e.kappa(i, j)).collect(),
    ))
}

/// `L_i -> (-exp kappa_i^1, ..., -exp kappa_i^n)`
pub fn char_vec_l(ps: &ParamSet, i: usize) -> Result<CharVector> {
    let e = exponents(ps)?;
    Ok(CharVector::new(
        e.m,
        (0..ps.n()).map(|j| -e.kappa(j, i)).collect(),
    ))
}

/// `Kbar_i = K_i^-1 K_{i+1}`
pub fn char_vec_kbar(ps: &ParamSet, i: usize) -> Result<CharVector> {
    Ok(char_vec_k(ps, i + 1)?.sub(&char_vec_k(ps, i)?))
}

/// `sigma = K_1 ... K_n`
pub fn char_vec_sigma(ps: &ParamSet) -> Result<CharVector> {
    let e = exponents(ps)?;
    (0..ps.n()).try_fold(CharVector::zero(e.m, ps.n()), |acc, i| {
        Ok(acc.add(&char_vec_k(ps, i)?))
    })
}

/// `lcm_j m / gcd(m, e_j)`
pub fn element_order(v: &CharVector) -> u64 {
    v.entries
        .iter()
        .map(|&e| v.m / v.m.gcd(&(e as u64)))
        .fold(1, |acc, o| acc.lcm(&o))
}

/// Order of `z_m^e`.
pub fn root_order(m: u64, e: i64) -> u64 {
    m / m.gcd(&(e.rem_euclid(m as i64) as u64))
}

/// Invariant factors `d_1 | d_2 | ...` (all `> 1`) of a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupInvariants {
    pub factors: Vec<u64>,
}

impl GroupInvariants {
    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }
}

/// Diagonal of the Smith normal form of an integer matrix (row-major,
/// `rows x cols`), nonzero entries only, in divisibility order.
pub fn smith_diagonal(mut a: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        let (top, below) = a.split_at_mut(t + 1);
        let pivot_row = &top[t];
        for row in below.iter_mut() {
            let q = row[t].div_euclid(pivot_row[t]);
            if q != 0 {
                for (x, &y) in row[t..].iter_mut().zip(&pivot_row[t..]) {
                    *x -= q * y;
                }
            }
            clean &= row[t] == 0;
        }
        for j in t + 1..cols {
            let q = a[t][j].div_euclid(a[t][t]);
            if q != 0 {
                for row in a.iter_mut().skip(t) {
                    row[j] -= q * row[t];
                }
            }
            clean &= a[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // the pivot must divide the rest of the block
        let p = a[t][t];
        let offender = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| a[i][j] % p != 0);
        if let Some((i, _)) = offender {
            let extra = a[i].clone();
            for (x, y) in a[t][t..].iter_mut().zip(&extra[t..]) {
                *x += y;
            }
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    diag
}

/// Invariant factors of the subgroup of `(Z/m)^n` generated by `gens`.
///
/// The generators are stacked with `m I`; if the Smith form of that lattice
/// has diagonal `d_1, ..., d_n` then the subgroup is `sum Z/(m/d_i)`.
pub fn subgroup_invariants(gens: &[CharVector], m: u64, n: usize) -> GroupInvariants {
    let mut rows: Vec<Vec<i128>> = gens
        .iter()
        .map(|g| g.entries.iter().map(|&e| e as i128).collect())
        .collect();
    for i in 0..n {
        let mut row = alloc::vec![0; n];
        row[i] = m as i128;
        rows.push(row);
    }
    let diag = smith_diagonal(rows);
    let mut factors: Vec<u64> = diag
        .iter()
        .map(|&d| m / d as u64)
        .filter(|&f| f > 1)
        .collect();
    factors.sort_unstable();
    GroupInvariants { factors }
}

/// The subgroup generated by `gens`, enumerated by closure.
pub fn closure(gens: &[CharVector], m: u64, n: usize) -> BTreeSet<CharVector> {
    let mut seen = BTreeSet::new();
    let mut frontier = alloc::vec![CharVector::zero(m, n)];
    seen.insert(CharVector::zero(m, n));
    while let Some(v) = frontier.pop() {
        for g in gens {
            let w = v.add(g);
            if seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    seen
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleSevenReport {
    /// `K_3 = -2 K_1 + 3 K_2`
    pub k3_relation: bool,
    /// `2 Kbar_1 = Kbar_2`
    pub kbar_relation: bool,
    pub det_central: bool,
    /// `|<K_1, K_2, K_3>| = |<K_1, K_2>|`
    pub k3_redundant: bool,
}

impl ExampleSevenReport {
    pub fn holds(&self) -> bool {
        self.k3_relation && self.kbar_relation && self.det_central && self.k3_redundant
    }
}

pub fn example_seven_relations(ps: &ParamSet) -> Result<ExampleSevenReport> {
    let e = exponents(ps)?;
    if ps.n() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: ps.n(),
        });
    }
    let k: Vec<CharVector> = (0..3).map(|i| char_vec_k(ps, i)).collect::<Result<_>>()?;
    let kb: Vec<CharVector> = (0..2)
        .map(|i| char_vec_kbar(ps, i))
        .collect::<Result<_>>()?;
    Ok(ExampleSevenReport {
        k3_relation: k[2] == k[0].scale(-2).add(&k[1].scale(3)),
        kbar_relation: kb[0].scale(2) == kb[1],
        det_central: ps.det_is_central(),
        k3_redundant: subgroup_invariants(&k, e.m, 3).order()
            == subgroup_invariants(&k[..2], e.m, 3).order(),
    })
}

/// Order of `K_i` against `lcm{N, N_ij : j != i}`.
pub fn k_orders_vs_lcm(ps: &ParamSet) -> Result<Vec<(u64, u64)>> {
    let e = exponents(ps)?;
    let n = ps.n();
    let big_n = root_order(e.m, e.r);
    (0..n)
        .map(|i| {
            let direct = char_vec_k(ps, i)?.order();
            let formula = (0..n)
                .filter(|&j| j != i)
                .map(|j| root_order(e.m, e.p[&(i.min(j), i.max(j))]))
                .fold(big_n, |acc, o| acc.lcm(&o));
            Ok((direct, formula))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KbarOrderReport {
    /// `{N, N_ij}` are not pairwise coprime.
    NotApplicable,
    Applicable {
        /// `(direct order of Kbar_i, N m_i)` for each `i`
        orders: Vec<(u64, u64)>,
        /// Whether the `N m_i` are pairwise distinct.
        formula_distinct: bool,
        /// Whether the direct orders are pairwise distinct.
        direct_distinct: bool,
    },
}

/// With `M_i = prod_{j > i} N_ij` (`M_n = 1`) and `m_i = M_{i+1} M_i`,
/// compares the order of each `Kbar_i` with `N m_i`.
pub fn kbar_orders_coprime(ps: &ParamSet) -> Result<KbarOrderReport> {
    let e = exponents(ps)?;
    let n = ps.n();
    let big_n = root_order(e.m, e.r);
    let mut all = alloc::vec![big_n];
    all.extend(e.p.values().map(|&x| root_order(e.m, x)));
    let coprime = (0..all.len()).all(|a| (a + 1..all.len()).all(|b| all[a].gcd(&all[b]) == 1));
    if !coprime {
        return Ok(KbarOrderReport::NotApplicable);
    }
    let big_m: Vec<u64> = (0..n)
        .map(|i| (i + 1..n).map(|j| root_order(e.m, e.p[&(i, j)])).product())
        .collect();
    let orders: Vec<(u64, u64)> = (0..n - 1)
        .map(|i| {
            Ok((
                char_vec_kbar(ps, i)?.order(),
                big_n * big_m[i + 1] * big_m[i],
            ))
        })
        .collect::<Result<_>>()?;
    let distinct = |f: fn(&(u64, u64)) -> u64| {
        let v: BTreeSet<u64> = orders.iter().map(f).collect();
        v.len() == orders.len()
    };
    Ok(KbarOrderReport::Applicable {
        formula_distinct: distinct(|o| o.1),
        direct_distinct: distinct(|o| o.0),
        orders,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CentralReport {
    /// The determinant is not central.
    NotApplicable,
    Applicable {
        k_orders: Vec<u64>,
        equal_orders: bool,
        /// `None` when the common order is not coprime to `n`.
        decomposition: Option<Decomposition>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub group: GroupInvariants,
    pub sigma_order: u64,
    pub slg: GroupInvariants,
    /// `|<sigma>| |SLG| = |G|` and `<sigma, SLG> = G`
    pub holds: bool,
}

/// Equal orders of the `K_i`, and `<K_1..K_n> = <sigma> x <Kbar_1..Kbar_{n-1}>`
/// when the common order is coprime to `n`.
pub fn central_decomposition(ps: &ParamSet) -> Result<CentralReport> {
    let e = exponents(ps)?;
    if !ps.det_is_central() {
        return Ok(CentralReport::NotApplicable);
    }
    let n = ps.n();
    let k: Vec<CharVector> = (0..n).map(|i| char_vec_k(ps, i)).collect::<Result<_>>()?;
    let kb: Vec<CharVector> = (0..n - 1)
        .map(|i| char_vec_kbar(ps, i))
        .collect::<Result<_>>()?;
    let sigma = char_vec_sigma(ps)?;
    let k_orders: Vec<u64> = k.iter().map(CharVector::order).collect();
    let equal_orders = k_orders.windows(2).all(|w| w[0] == w[1]);
    let decomposition = if equal_orders && k_orders[0].gcd(&(n as u64)) == 1 {
        let group = subgroup_invariants(&k, e.m, n);
        let slg = subgroup_invariants(&kb, e.m, n);
        let sigma_order = sigma.order();
        let mut both = kb.clone();
        both.push(sigma);
        let joint = subgroup_invariants(&both, e.m, n);
        let holds = sigma_order * slg.order() == group.order() && joint.order() == group.order();
        Some(Decomposition {
            group,
            sigma_order,
            slg,
            holds,
        })
    } else {
        None
    };
    Ok(CentralReport::Applicable {
        k_orders,
        equal_orders,
        decomposition,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaReport {
    pub det_central: bool,
    /// Whether `sigma u = u sigma` for every generator `u` up to the cutoff.
    pub commutes: bool,
    /// A generator and word where the two products differ.
    pub witness: Option<(String, TWord)>,
}

/// Compares `sigma * u` with `u * sigma` for `u` ranging over `E, F, K, L`.
pub fn sigma_centrality_check(ps: &ParamSet, max_degree: usize) -> Result<SigmaReport> {
    let n = ps.n();
    let ks: Vec<Functional> = (0..n).map(|i| uq::gen_k(ps, i)).collect::<Result<_>>()?;
    let sigma = convolve(&ks);
    let ev = Evaluator::new(ps);
    for (name, u) in uq::generators(ps) {
        let out = verify_identity(&ev, &(&sigma * &u), &(&u * &sigma), max_degree);
        if let Some((w, _, _)) = out.witness {
            return Ok(SigmaReport {
                det_central: ps.det_is_central(),
                commutes: false,
                witness: Some((name, w)),
            });
        }
    }
    Ok(SigmaReport {
        det_central: ps.det_is_central(),
        commutes: true,
        witness: None,
    })
}
