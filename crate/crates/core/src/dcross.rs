//! Pairing maps `lambda^+`, `rho^+`, the theta pairing values and the
//! cross relations of `U_Q` viewed as a quotient of a double crossproduct.
//!
//! The double crossproduct itself is never built. Products in it are
//! expanded into coefficient vectors over the symbols `f_j >< e_i` and
//! `L_a >< K_b`, with coefficients taken from [`PairingTable`].

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::Result;
use crate::frt::{BraidPairing, TWord};
use crate::params::ParamSet;
use crate::scalar::Scalar;
use crate::uq::{
    self, convolve, gen_k, gen_l, gen_l_inv, normalized_e, normalized_f, r_minus_one,
    verify_identity, Evaluator, Form, Functional, Identity, IdentityOutcome,
};
use crate::ybr::{build_r, RMatrix};

/// `b -> <w | b>`
pub fn lambda_plus(r: &Arc<RMatrix>, w: TWord) -> Functional {
    Functional::pair_left(r, w)
}

/// `a -> <a | w>`
pub fn rho_plus(r: &Arc<RMatrix>, w: TWord) -> Functional {
    Functional::pair_right(r, w)
}

/// `lambda^+(T_i^i) = K_i`, `lambda^+(T_{i+1}^i) = e_i` and
/// `lambda^+(T_i^j) = 0` for `i < j`.
pub fn lt_identities(ps: &ParamSet) -> Result<Vec<Identity>> {
    let n = ps.n();
    let r = Arc::new(build_r(ps));
    let mut out = Vec::new();
    for i in 0..n {
        out.push(Identity {
            name: alloc::format!("lambda+(T_{0}^{0}) = K_{0}", i + 1),
            lhs: lambda_plus(&r, TWord::letter(i, i)),
            rhs: gen_k(ps, i)?,
        });
    }
    for i in 0..n - 1 {
        out.push(Identity {
            name: alloc::format!("lambda+(T_{}^{}) = e_{}", i + 2, i + 1, i + 1),
            lhs: lambda_plus(&r, TWord::letter(i + 1, i)),
            rhs: normalized_e(ps, i)?,
        });
    }
    for i in 0..n {
        for j in i + 1..n {
            out.push(Identity {
                name: alloc::format!("lambda+(T_{}^{}) = 0", i + 1, j + 1),
                lhs: lambda_plus(&r, TWord::letter(i, j)),
                rhs: Functional::zero(),
            });
        }
    }
    Ok(out)
}

/// `rho^+(T_i^i) = L_i^-1`, `rho^+(T_i^j) = 0` for `i > j`, and
/// `rho^+(T_i^{i+1}) = s r^-2 (r-1) S^-1 F_i^{i+1}` with `s = +1` stated
/// and `s = -1` in this model.
pub fn rt_identities(ps: &ParamSet, form: Form) -> Result<Vec<Identity>> {
    let n = ps.n();
    let r = Arc::new(build_r(ps));
    let mut out = Vec::new();
    for i in 0..n {
        out.push(Identity {
            name: alloc::format!("rho+(T_{0}^{0}) = L_{0}^-1", i + 1),
            lhs: rho_plus(&r, TWord::letter(i, i)),
            rhs: gen_l_inv(ps, i)?,
        });
    }
    let mut c = &r_minus_one(ps) * &ps.r().pow(-2)?;
    if form == Form::Corrected {
        c = -c;
    }
    for i in 0..n - 1 {
        out.push(Identity {
            name: alloc::format!("rho+(T_{}^{}) = S^-1 F", i + 1, i + 2),
            lhs: rho_plus(&r, TWord::letter(i, i + 1)),
            rhs: uq::antipode_inv_gen_f(ps, i)?.scaled(&c),
        });
    }
    for i in 0..n {
        for j in 0..i {
            out.push(Identity {
                name: alloc::format!("rho+(T_{}^{}) = 0", i + 1, j + 1),
                lhs: rho_plus(&r, TWord::letter(i, j)),
                rhs: Functional::zero(),
            });
        }
    }
    Ok(out)
}

/// Theta pairing values between the generators of the two halves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingTable {
    /// `LK[i][j] = L_j^-1(K_i) = <T_i^i | T_j^j>`, `n x n`
    pub lk: Vec<Vec<Scalar>>,
    /// `SFE[i][j] = S theta(f_j)(e_i) = <T_{i+1}^i | T_j^{j+1}>`, `(n-1) x (n-1)`
    pub sfe: Vec<Vec<Scalar>>,
    /// `EF[i][j] = S^-1 theta(f_j)(e_i) = r^-1 SFE[i][j]`
    pub ef: Vec<Vec<Scalar>>,
    /// `FJS[i][j] = theta(f_j)(e_i) = -LK[i][j]^-1 SFE[i][j] LK[i+1][j+1]^-1`
    pub fjs: Vec<Vec<Scalar>>,
}

pub fn pairing_table(ps: &ParamSet) -> Result<PairingTable> {
    let n = ps.n();
    let bp = BraidPairing::new(ps);
    let lk: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| bp.pair(&TWord::letter(i, i), &TWord::letter(j, j)))
                .collect()
        })
        .collect();
    let sfe: Vec<Vec<Scalar>> = (0..n - 1)
        .map(|i| {
            (0..n - 1)
                .map(|j| bp.pair(&TWord::letter(i + 1, i), &TWord::letter(j, j + 1)))
                .collect()
        })
        .collect();
    let r_inv = ps.r().inv()?;
    let ef = sfe
        .iter()
        .map(|row| row.iter().map(|x| x * &r_inv).collect())
        .collect();
    let mut fjs = Vec::new();
    for i in 0..n - 1 {
        let mut row = Vec::new();
        for j in 0..n - 1 {
            let v = sfe[i][j]
                .checked_div(&lk[i][j])?
                .checked_div(&lk[i + 1][j + 1])?;
            row.push(-v);
        }
        fjs.push(row);
    }
    Ok(PairingTable { lk, sfe, ef, fjs })
}

/// Closed forms: `LK = kappa_j^i`, `SFE = delta (r-1)`,
/// `EF = delta r^-1 (r-1)`, `FJS = -delta r^-2 (r-1)`.
pub fn closed_form_table(ps: &ParamSet) -> Result<PairingTable> {
    let n = ps.n();
    let k = ps.kappa();
    let zero = Scalar::zero(ps.field());
    let rm1 = r_minus_one(ps);
    let delta = |i: usize, j: usize, v: &Scalar| if i == j { v.clone() } else { zero.clone() };
    let ef_v = &rm1 * &ps.r().inv()?;
    let fjs_v = -(&rm1 * &ps.r().pow(-2)?);
    let square = |f: &dyn Fn(usize, usize) -> Scalar, size: usize| -> Vec<Vec<Scalar>> {
        (0..size)
            .map(|i| (0..size).map(|j| f(i, j)).collect())
            .collect()
    };
    Ok(PairingTable {
        lk: square(&|i, j| k.get(i, j).clone(), n),
        sfe: square(&|i, j| delta(i, j, &rm1), n - 1),
        ef: square(&|i, j| delta(i, j, &ef_v), n - 1),
        fjs: square(&|i, j| delta(i, j, &fjs_v), n - 1),
    })
}

/// Basis symbols of the expanded products in the double.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum DoubleSymbol {
    /// `f_j >< e_i`
    FE { f: usize, e: usize },
    /// `L_a >< K_b`
    LK { l: usize, k: usize },
}

pub type DoubleVector = BTreeMap<DoubleSymbol, Scalar>;

fn add_to(v: &mut DoubleVector, s: DoubleSymbol, c: Scalar) {
    let entry = v.remove(&s);
    let total = match entry {
        Some(old) => old + c,
        None => c,
    };
    if !total.is_zero() {
        v.insert(s, total);
    }
}

/// `(eps >< e_i)(f_j >< 1)` expanded by applying `Delta^2` to both factors:
/// `LK[i][j+1] FJS[i][j] (L_{j+1} >< K_i) + LK[i][j+1] LK[i+1][j]^-1 (f_j >< e_i)
///  + EF[i][j] LK[i+1][j]^-1 (L_j >< K_{i+1})`.
pub fn efd_expansion(t: &PairingTable, i: usize, j: usize) -> Result<DoubleVector> {
    let mut v = DoubleVector::new();
    let lk_inv = t.lk[i + 1][j].inv()?;
    add_to(
        &mut v,
        DoubleSymbol::LK { l: j + 1, k: i },
        &t.lk[i][j + 1] * &t.fjs[i][j],
    );
    add_to(
        &mut v,
        DoubleSymbol::FE { f: j, e: i },
        &t.lk[i][j + 1] * &lk_inv,
    );
    add_to(
        &mut v,
        DoubleSymbol::LK { l: j, k: i + 1 },
        &t.ef[i][j] * &lk_inv,
    );
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EfdOutcome {
    pub i: usize,
    pub j: usize,
    pub holds: bool,
    pub lhs: DoubleVector,
    pub rhs: DoubleVector,
}

/// `kappa_j^{i+1} (eps >< e_i)(f_j >< 1) - c (f_j >< e_i)
///  = delta_ij r^-1 (r-1) (L_i K_{i+1} - L_{i+1} K_i)`.
///
/// The coefficient that cancels the `f_j >< e_i` term is `c = kappa_{j+1}^i`
/// ([`Form::Corrected`]); the stated form has `c = kappa_i^{j+1}`.
pub fn verify_efd(ps: &ParamSet, form: Form) -> Result<Vec<EfdOutcome>> {
    let t = pairing_table(ps)?;
    let k = ps.kappa();
    let n = ps.n();
    let mut out = Vec::new();
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            let mut lhs = DoubleVector::new();
            for (s, c) in efd_expansion(&t, i, j)? {
                add_to(&mut lhs, s, k.get(i + 1, j) * &c);
            }
            let c = match form {
                Form::Corrected => k.get(i, j + 1),
                Form::Stated => k.get(j + 1, i),
            };
            add_to(&mut lhs, DoubleSymbol::FE { f: j, e: i }, -c);
            let mut rhs = DoubleVector::new();
            if i == j {
                let c = &r_minus_one(ps) * &ps.r().inv()?;
                add_to(&mut rhs, DoubleSymbol::LK { l: i, k: i + 1 }, c.clone());
                add_to(&mut rhs, DoubleSymbol::LK { l: i + 1, k: i }, -c);
            }
            out.push(EfdOutcome {
                i,
                j,
                holds: lhs == rhs,
                lhs,
                rhs,
            });
        }
    }
    Ok(out)
}

/// `r (r-1)^-1 (1-r)^2 r^-2 = r^-1 (r-1)`: the right side of the `E F`
/// relation times the normalization of `e_i f_j` is the right side of the
/// double relation.
pub fn efd_eft_scalar_reconciles(ps: &ParamSet) -> Result<bool> {
    let r = ps.r();
    let one = Scalar::one(ps.field());
    let one_minus_r = &one - r;
    let lhs = &(r.checked_div(&r_minus_one(ps))? * &one_minus_r) * &(&one_minus_r * &r.pow(-2)?);
    Ok(lhs == &r_minus_one(ps) * &r.inv()?)
}

/// `kappa_j^{i+1} e_i f_j - kappa_{j+1}^i f_j e_i
///  = (1-r)^2 r^-2 (kappa_j^{i+1} E F - kappa_{j+1}^i F E)`: the image of the
/// double relation's left side in `U_Q` is a fixed multiple of the `E F`
/// relation's left side.
pub fn efd_image_identity(ps: &ParamSet, i: usize, j: usize) -> Result<Identity> {
    let k = ps.kappa();
    let (e, f) = (normalized_e(ps, i)?, normalized_f(ps, j)?);
    let lhs = &(&e * &f).scaled(k.get(i + 1, j)) - &(&f * &e).scaled(k.get(i, j + 1));
    let eft = uq::eft_identity(ps, i, j, Form::Corrected)?;
    let one_minus_r = Scalar::one(ps.field()) - ps.r();
    let factor = &(&one_minus_r * &one_minus_r) * &ps.r().pow(-2)?;
    Ok(Identity {
        name: alloc::format!("image of the e_{} f_{} double relation", i + 1, j + 1),
        lhs,
        rhs: eft.lhs.scaled(&factor),
    })
}

/// `K_i f_j = c f_j K_i`. Stated `c = kappa_j^i (kappa_{j+1}^i)^-1`; the
/// model satisfies `c = kappa_{j+1}^i (kappa_j^i)^-1`.
pub fn kf_exchange_identity(ps: &ParamSet, i: usize, j: usize, form: Form) -> Result<Identity> {
    let k = ps.kappa();
    let c = match form {
        Form::Stated => k.get(i, j).checked_div(k.get(i, j + 1))?,
        Form::Corrected => k.get(i, j + 1).checked_div(k.get(i, j))?,
    };
    let (ki, f) = (gen_k(ps, i)?, normalized_f(ps, j)?);
    Ok(Identity {
        name: alloc::format!("K_{} f_{} exchange", i + 1, j + 1),
        lhs: &ki * &f,
        rhs: (&f * &ki).scaled(&c),
    })
}

#[derive(Clone, Debug)]
pub struct CrossExchangeReport {
    /// Every `K_i f_j`, `e_i L_j` exchange and `K_i L_j = L_j K_i` in the
    /// form that holds in the model.
    pub holds: bool,
    /// Whether the stated scalars also hold.
    pub stated_holds: bool,
    /// Failures as `(identity name, outcome)`.
    pub failures: Vec<(String, IdentityOutcome)>,
    /// Stated identities that fail.
    pub stated_failures: Vec<String>,
}

pub fn verify_cross_exchange(ps: &ParamSet, max_degree: usize) -> Result<CrossExchangeReport> {
    let n = ps.n();
    let ev = Evaluator::new(ps);
    let mut failures = Vec::new();
    let mut stated_failures = Vec::new();
    let check = |id: Identity, failures: &mut Vec<(String, IdentityOutcome)>| {
        let out = verify_identity(&ev, &id.lhs, &id.rhs, max_degree);
        if !out.holds {
            failures.push((id.name, out));
        }
    };
    for i in 0..n {
        for j in 0..n {
            let ki = gen_k(ps, i)?;
            let lj = gen_l(ps, j)?;
            check(
                Identity {
                    name: alloc::format!("K_{} L_{} commute", i + 1, j + 1),
                    lhs: &ki * &lj,
                    rhs: &lj * &ki,
                },
                &mut failures,
            );
        }
    }
    let mut stated = Vec::new();
    for i in 0..n {
        for j in 0..n - 1 {
            check(
                kf_exchange_identity(ps, i, j, Form::Corrected)?,
                &mut failures,
            );
            check(kf_exchange_identity(ps, i, j, Form::Stated)?, &mut stated);
        }
    }
    for i in 0..n - 1 {
        for j in 0..n {
            check(
                uq::el_exchange_identity(ps, i, j, Form::Corrected)?,
                &mut failures,
            );
            check(
                uq::el_exchange_identity(ps, i, j, Form::Stated)?,
                &mut stated,
            );
        }
    }
    stated_failures.extend(stated.into_iter().map(|(name, _)| name));
    Ok(CrossExchangeReport {
        holds: failures.is_empty(),
        stated_holds: stated_failures.is_empty(),
        failures,
        stated_failures,
    })
}

/// `L_{j+1}^-1 f_j L_j^-1`, which equals `-S^-1 f_j`.
pub fn s_inverse_f(ps: &ParamSet, j: usize) -> Result<Functional> {
    Ok(convolve(&[
        gen_l_inv(ps, j + 1)?,
        normalized_f(ps, j)?,
        gen_l_inv(ps, j)?,
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{example_one_parameter, example_seven};

    #[test]
    fn table_matches_closed_forms() {
        for ps in [example_seven(), example_one_parameter(3)] {
            assert_eq!(pairing_table(&ps).unwrap(), closed_form_table(&ps).unwrap());
        }
    }

    #[test]
    fn efd_identity() {
        let ps = example_seven();
        assert!(verify_efd(&ps, Form::Corrected)
            .unwrap()
            .iter()
            .all(|o| o.holds));
        assert!(!verify_efd(&ps, Form::Stated)
            .unwrap()
            .iter()
            .all(|o| o.holds));
        assert!(efd_eft_scalar_reconciles(&ps).unwrap());
        let ev = Evaluator::new(&ps);
        for i in 0..2 {
            for j in 0..2 {
                let id = efd_image_identity(&ps, i, j).unwrap();
                assert!(verify_identity(&ev, &id.lhs, &id.rhs, 3).holds);
            }
        }
    }

    #[test]
    fn lt_and_rt() {
        let ps = example_seven();
        let ev = Evaluator::new(&ps);
        for id in lt_identities(&ps).unwrap() {
            assert!(
                verify_identity(&ev, &id.lhs, &id.rhs, 3).holds,
                "{}",
                id.name
            );
        }
        for id in rt_identities(&ps, Form::Corrected).unwrap() {
            assert!(
                verify_identity(&ev, &id.lhs, &id.rhs, 3).holds,
                "{}",
                id.name
            );
        }
        let stated = rt_identities(&ps, Form::Stated).unwrap();
        assert!(stated
            .iter()
            .any(|id| !verify_identity(&ev, &id.lhs, &id.rhs, 1).holds));
    }

    #[test]
    fn cross_exchange() {
        let rep = verify_cross_exchange(&example_seven(), 3).unwrap();
        assert!(rep.holds, "{:?}", rep.failures);
        assert!(!rep.stated_holds);
    }

    #[test]
    fn s_inverse_f_is_minus_antipode() {
        let ps = example_seven();
        let ev = Evaluator::new(&ps);
        let a = s_inverse_f(&ps, 0).unwrap();
        let b = -&uq::antipode_inv_f(&ps, 0).unwrap();
        assert!(verify_identity(&ev, &a, &b, 2).holds);
    }
}
