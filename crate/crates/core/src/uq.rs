//! `U_Q` as linear functionals on `A(R_Q)`.
//!
//! A functional restricted to words of length `s` is the `n^s x n^s` matrix
//! `U[I, J] = u(T_I^J)`. Since `Delta(T_I^J) = sum_K T_I^K (x) T_K^J`, the
//! convolution product becomes matrix multiplication degree by degree, which
//! is how [`Evaluator`] computes everything. Characters are diagonal
//! matrices and the counit is the identity.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::frt::{rtt_relators_with, BraidPairing, RttConvention, TLinComb, TWord};
use crate::matrix::Matrix;
use crate::params::ParamSet;
use crate::scalar::{CycloField, Scalar};
use crate::ybr::{build_r, RMatrix};

#[derive(Clone, Debug)]
pub struct Functional(Arc<Node>);

#[derive(Debug)]
enum Node {
    /// Diagonal character: `T_j^l -> delta_jl values[j]`, multiplicative.
    Char(Vec<Scalar>),
    /// `u(l_1 ... l_s) = sum_t left(l_1..l_{t-1}) [l_t = target] right(l_{t+1}..l_s)`,
    /// so that `Delta(u) = left (x) u + u (x) right`.
    SkewPrim {
        target: (usize, usize),
        left: Vec<Scalar>,
        right: Vec<Scalar>,
    },
    Scaled(Scalar, Functional),
    Negated(Functional),
    Sum(Vec<Functional>),
    Conv(Vec<Functional>),
    /// `<w | ->` or `<- | w>` under the braiding pairing of `r`.
    Paired {
        r: Arc<RMatrix>,
        side: Side,
        word: TWord,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

impl Functional {
    pub fn character(values: Vec<Scalar>) -> Functional {
        Functional(Arc::new(Node::Char(values)))
    }

    pub fn skew_primitive(
        target: (usize, usize),
        left: Vec<Scalar>,
        right: Vec<Scalar>,
    ) -> Functional {
        Functional(Arc::new(Node::SkewPrim {
            target,
            left,
            right,
        }))
    }

    pub fn zero() -> Functional {
        Functional(Arc::new(Node::Sum(Vec::new())))
    }

    pub fn counit(field: &Arc<CycloField>, n: usize) -> Functional {
        Functional::character(alloc::vec![Scalar::one(field); n])
    }

    /// `b -> <w | b>`
    pub fn pair_left(r: &Arc<RMatrix>, word: TWord) -> Functional {
        Functional(Arc::new(Node::Paired {
            r: r.clone(),
            side: Side::Left,
            word,
        }))
    }

    /// `a -> <a | w>`
    pub fn pair_right(r: &Arc<RMatrix>, word: TWord) -> Functional {
        Functional(Arc::new(Node::Paired {
            r: r.clone(),
            side: Side::Right,
            word,
        }))
    }

    pub fn scaled(&self, c: &Scalar) -> Functional {
        Functional(Arc::new(Node::Scaled(c.clone(), self.clone())))
    }

    pub fn conv(&self, other: &Functional) -> Functional {
        convolve(&[self.clone(), other.clone()])
    }

    /// Diagonal values when this is a character.
    pub fn character_values(&self) -> Option<&[Scalar]> {
        match &*self.0 {
            Node::Char(v) => Some(v),
            _ => None,
        }
    }

    fn id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }
}

/// Iterated convolution `u_1 * ... * u_k`; the empty product is not allowed.
pub fn convolve(us: &[Functional]) -> Functional {
    assert!(!us.is_empty(), "empty convolution");
    if us.len() == 1 {
        return us[0].clone();
    }
    Functional(Arc::new(Node::Conv(us.to_vec())))
}

impl Mul for &Functional {
    type Output = Functional;
    fn mul(self, rhs: &Functional) -> Functional {
        self.conv(rhs)
    }
}

impl Mul for Functional {
    type Output = Functional;
    fn mul(self, rhs: Functional) -> Functional {
        self.conv(&rhs)
    }
}

impl Add for &Functional {
    type Output = Functional;
    fn add(self, rhs: &Functional) -> Functional {
        Functional(Arc::new(Node::Sum(alloc::vec![self.clone(), rhs.clone()])))
    }
}

impl Add for Functional {
    type Output = Functional;
    fn add(self, rhs: Functional) -> Functional {
        &self + &rhs
    }
}

impl Neg for &Functional {
    type Output = Functional;
    fn neg(self) -> Functional {
        Functional(Arc::new(Node::Negated(self.clone())))
    }
}

impl Sub for &Functional {
    type Output = Functional;
    fn sub(self, rhs: &Functional) -> Functional {
        self + &-rhs
    }
}

impl Sub for Functional {
    type Output = Functional;
    fn sub(self, rhs: Functional) -> Functional {
        &self - &rhs
    }
}

/// Evaluates functionals degree by degree with a memo keyed by node and
/// word length.
pub struct Evaluator {
    n: usize,
    field: Arc<CycloField>,
    // the functional is kept alive so its address cannot be reused
    memo: RefCell<BTreeMap<(usize, usize), (Functional, Matrix)>>,
    pairings: RefCell<Vec<(Arc<RMatrix>, Rc<BraidPairing>)>>,
}

impl Evaluator {
    pub fn new(ps: &ParamSet) -> Evaluator {
        Evaluator::with_field(ps.n(), ps.field())
    }

    pub fn with_field(n: usize, field: &Arc<CycloField>) -> Evaluator {
        Evaluator {
            n,
            field: field.clone(),
            memo: RefCell::new(BTreeMap::new()),
            pairings: RefCell::new(Vec::new()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eval(&self, u: &Functional, w: &TWord) -> Scalar {
        let (lower, upper) = w.indices(self.n);
        self.matrix(u, w.len())[(lower, upper)].clone()
    }

    /// `[I, J] -> u(T_I^J)` on words of length `s`.
    pub fn matrix(&self, u: &Functional, s: usize) -> Matrix {
        if let Some((_, m)) = self.memo.borrow().get(&(u.id(), s)) {
            return m.clone();
        }
        let m = self.compute(u, s);
        self.memo
            .borrow_mut()
            .insert((u.id(), s), (u.clone(), m.clone()));
        m
    }

    fn size(&self, s: usize) -> usize {
        self.n.pow(s as u32)
    }

    fn char_diag(&self, values: &[Scalar], s: usize) -> Vec<Scalar> {
        let mut diag = alloc::vec![Scalar::one(&self.field)];
        for _ in 0..s {
            diag = diag
                .iter()
                .flat_map(|d| values.iter().map(move |v| d * v))
                .collect();
        }
        diag
    }

    fn compute(&self, u: &Functional, s: usize) -> Matrix {
        let size = self.size(s);
        match &*u.0 {
            Node::Char(values) => Matrix::diagonal(&self.field, &self.char_diag(values, s)),
            Node::SkewPrim {
                target,
                left,
                right,
            } => {
                let mut m = Matrix::zeros(&self.field, size, size);
                // position t (0-based) holds the target; the prefix of length t
                // and suffix of length s-t-1 are diagonal
                for t in 0..s {
                    let pre = self.char_diag(left, t);
                    let suf = self.char_diag(right, s - t - 1);
                    let ns = suf.len();
                    for (a, pa) in pre.iter().enumerate() {
                        for (b, sb) in suf.iter().enumerate() {
                            let lower = (a * self.n + target.0) * ns + b;
                            let upper = (a * self.n + target.1) * ns + b;
                            let cell = &mut m[(lower, upper)];
                            *cell = &*cell + &(pa * sb);
                        }
                    }
                }
                m
            }
            Node::Scaled(c, v) => self.matrix(v, s).scale(c),
            Node::Negated(v) => self.matrix(v, s).scale(&Scalar::from_int(&self.field, -1)),
            Node::Sum(vs) => vs
                .iter()
                .fold(Matrix::zeros(&self.field, size, size), |acc, v| {
                    acc.add(&self.matrix(v, s)).expect("same size")
                }),
            Node::Conv(vs) => {
                let mut acc = self.matrix(&vs[0], s);
                for v in &vs[1..] {
                    acc = acc.mul(&self.matrix(v, s)).expect("same size");
                }
                acc
            }
            Node::Paired { r, side, word } => {
                let bp = self.pairing(r);
                match side {
                    Side::Left => bp.left_matrix(word, s),
                    Side::Right => bp.right_matrix(word, s),
                }
            }
        }
    }

    fn pairing(&self, r: &Arc<RMatrix>) -> Rc<BraidPairing> {
        if let Some((_, bp)) = self
            .pairings
            .borrow()
            .iter()
            .find(|(k, _)| Arc::ptr_eq(k, r))
        {
            return bp.clone();
        }
        let bp = Rc::new(BraidPairing::from_r((**r).clone()));
        self.pairings.borrow_mut().push((r.clone(), bp.clone()));
        bp
    }
}

/// Kappa row `i`: `T_j^j -> kappa_j^i`.
pub fn gen_k(ps: &ParamSet, i: usize) -> Result<Functional> {
    check_index(i, ps.n())?;
    Ok(Functional::character(ps.kappa().row(i).to_vec()))
}

/// `T_j^j -> (kappa_i^j)^-1`.
pub fn gen_l(ps: &ParamSet, i: usize) -> Result<Functional> {
    check_index(i, ps.n())?;
    Ok(Functional::character(inverted(&ps.kappa().column(i))))
}

pub fn gen_k_inv(ps: &ParamSet, i: usize) -> Result<Functional> {
    check_index(i, ps.n())?;
    Ok(Functional::character(inverted(ps.kappa().row(i))))
}

pub fn gen_l_inv(ps: &ParamSet, i: usize) -> Result<Functional> {
    check_index(i, ps.n())?;
    Ok(Functional::character(ps.kappa().column(i)))
}

/// `E_{i+1}^i`: dual to `T_i^{i+1}`, with `Delta(E) = K_{i+1} (x) E + E (x) K_i`.
pub fn gen_e(ps: &ParamSet, i: usize) -> Result<Functional> {
    check_index(i + 1, ps.n())?;
    Ok(Functional::skew_primitive(
        (i, i + 1),
        ps.kappa().row(i + 1).to_vec(),
        ps.kappa().row(i).to_vec(),
    ))
}

/// `F_i^{i+1}`: dual to `T_{i+1}^i`, with `Delta(F) = L_i (x) F + F (x) L_{i+1}`.
pub fn gen_f(ps: &ParamSet, i: usize) -> Result<Functional> {
    check_index(i + 1, ps.n())?;
    Ok(Functional::skew_primitive(
        (i + 1, i),
        inverted(&ps.kappa().column(i)),
        inverted(&ps.kappa().column(i + 1)),
    ))
}

/// `e_i = (r - 1) E_{i+1}^i`
pub fn normalized_e(ps: &ParamSet, i: usize) -> Result<Functional> {
    Ok(gen_e(ps, i)?.scaled(&r_minus_one(ps)))
}

/// `f_i = r^-2 (r - 1) F_i^{i+1}`
pub fn normalized_f(ps: &ParamSet, i: usize) -> Result<Functional> {
    let c = &r_minus_one(ps) * &ps.r().pow(-2)?;
    Ok(gen_f(ps, i)?.scaled(&c))
}

pub fn r_minus_one(ps: &ParamSet) -> Scalar {
    ps.r() - Scalar::one(ps.field())
}

fn inverted(v: &[Scalar]) -> Vec<Scalar> {
    v.iter()
        .map(|x| x.inv().expect("kappa values are nonzero"))
        .collect()
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, bound: n });
    }
    Ok(())
}

/// `S(g) = g^-1` on a character.
pub fn antipode_grouplike(g: &Functional) -> Option<Functional> {
    g.character_values()
        .map(|v| Functional::character(inverted(v)))
}

/// `S^-1(e_i) = -K_i^-1 e_i K_{i+1}^-1` for `power = -1`;
/// `S^-2(e_i) = K_{i+1} K_i^-1 e_i K_{i+1}^-1 K_i` for `power = -2`.
pub fn antipode_pm2_e(ps: &ParamSet, i: usize, power: i32) -> Result<Functional> {
    let e = normalized_e(ps, i)?;
    let (k, k1) = (gen_k(ps, i)?, gen_k(ps, i + 1)?);
    let (k_inv, k1_inv) = (gen_k_inv(ps, i)?, gen_k_inv(ps, i + 1)?);
    match power {
        -1 => Ok(-&convolve(&[k_inv, e, k1_inv])),
        -2 => Ok(convolve(&[k1, k_inv, e, k1_inv, k])),
        _ => panic!("only the powers -1 and -2 are provided"),
    }
}

/// `S^-1(f_j) = -L_{j+1}^-1 f_j L_j^-1`.
pub fn antipode_inv_f(ps: &ParamSet, j: usize) -> Result<Functional> {
    let f = normalized_f(ps, j)?;
    Ok(-&convolve(&[gen_l_inv(ps, j + 1)?, f, gen_l_inv(ps, j)?]))
}

/// `S^-1(F_j^{j+1}) = -L_{j+1}^-1 F_j^{j+1} L_j^-1`.
pub fn antipode_inv_gen_f(ps: &ParamSet, j: usize) -> Result<Functional> {
    let f = gen_f(ps, j)?;
    Ok(-&convolve(&[gen_l_inv(ps, j + 1)?, f, gen_l_inv(ps, j)?]))
}

/// Result of comparing two functionals on all words up to a length cutoff.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityOutcome {
    pub holds: bool,
    /// First word (shortest, then in the order of [`TWord::all_of_length`])
    /// where the two sides differ, with both values.
    pub witness: Option<(TWord, Scalar, Scalar)>,
}

/// Compares `lhs` and `rhs` on every word of length at most `max_degree`.
///
/// Agreement on the free algebra up to a cutoff is a necessary condition for
/// equality in `U_Q`; both sides should also pass [`annihilates_relators`].
pub fn verify_identity(
    ev: &Evaluator,
    lhs: &Functional,
    rhs: &Functional,
    max_degree: usize,
) -> IdentityOutcome {
    for s in 0..=max_degree {
        let a = ev.matrix(lhs, s);
        let b = ev.matrix(rhs, s);
        if let Some((lower, upper)) = a.first_difference(&b) {
            return IdentityOutcome {
                holds: false,
                witness: Some((
                    TWord::from_indices(ev.n(), s, lower, upper),
                    a[(lower, upper)].clone(),
                    b[(lower, upper)].clone(),
                )),
            };
        }
    }
    IdentityOutcome {
        holds: true,
        witness: None,
    }
}

/// A named identity `lhs = rhs` between functionals.
#[derive(Clone, Debug)]
pub struct Identity {
    pub name: String,
    pub lhs: Functional,
    pub rhs: Functional,
}

/// `u(x rho y) = 0` for every relator `rho` and words `x`, `y` with
/// `len(x) + len(y) <= max_degree - 2`. Returns the first failure as
/// `(x, relator index, y)`.
pub fn relator_violation(
    ev: &Evaluator,
    u: &Functional,
    relators: &[TLinComb],
    max_degree: usize,
) -> Option<(TWord, usize, TWord)> {
    let n = ev.n();
    for s in 2..=max_degree.max(2) {
        if s > max_degree {
            break;
        }
        let m = ev.matrix(u, s);
        for a in 0..=s - 2 {
            let b = s - 2 - a;
            let (na, nb) = (n.pow(a as u32), n.pow(b as u32));
            for xl in 0..na {
                for xu in 0..na {
                    for yl in 0..nb {
                        for yu in 0..nb {
                            for (idx, rel) in relators.iter().enumerate() {
                                let mut acc = Scalar::zero(&ev.field);
                                for (w, c) in rel.terms() {
                                    let (wl, wu) = w.indices(n);
                                    let lower = (xl * n * n + wl) * nb + yl;
                                    let upper = (xu * n * n + wu) * nb + yu;
                                    let v = &m[(lower, upper)];
                                    if !v.is_zero() {
                                        acc = acc + c * v;
                                    }
                                }
                                if !acc.is_zero() {
                                    return Some((
                                        TWord::from_indices(n, a, xl, xu),
                                        idx,
                                        TWord::from_indices(n, b, yl, yu),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

pub fn annihilates_relators(
    ev: &Evaluator,
    u: &Functional,
    relators: &[TLinComb],
    max_degree: usize,
) -> bool {
    relator_violation(ev, u, relators, max_degree).is_none()
}

/// `K_i, L_i` for all `i` and `E, F` for all adjacent pairs.
pub fn generators(ps: &ParamSet) -> Vec<(String, Functional)> {
    let n = ps.n();
    let mut out = Vec::new();
    for i in 0..n {
        out.push((alloc::format!("K_{}", i + 1), gen_k(ps, i).unwrap()));
        out.push((alloc::format!("L_{}", i + 1), gen_l(ps, i).unwrap()));
    }
    for i in 0..n - 1 {
        out.push((
            alloc::format!("E_{}^{}", i + 2, i + 1),
            gen_e(ps, i).unwrap(),
        ));
        out.push((
            alloc::format!("F_{}^{}", i + 1, i + 2),
            gen_f(ps, i).unwrap(),
        ));
    }
    out
}

/// Picks the RTT index convention under which every generator annihilates
/// the relators up to `max_degree`.
pub fn select_rtt_convention(ps: &ParamSet, max_degree: usize) -> Result<RttConvention> {
    let r = build_r(ps);
    let ev = Evaluator::new(ps);
    let gens = generators(ps);
    let passing: Vec<RttConvention> = RttConvention::ALL
        .into_iter()
        .filter(|&conv| {
            let rels = rtt_relators_with(&r, conv);
            gens.iter()
                .all(|(_, g)| annihilates_relators(&ev, g, &rels, max_degree))
        })
        .collect();
    match passing.as_slice() {
        [one] => Ok(*one),
        _ => Err(Error::ConventionAmbiguous {
            passing: passing.len(),
        }),
    }
}

/// Least `k` in `2..=min(kmax, max_degree)` with `(E_{i+1}^i)^k` vanishing on
/// all words of length at most `max_degree`.
///
/// `E^k` vanishes on words shorter than `k` for weight reasons, so larger `k`
/// would be vacuous at this cutoff; `None` means not found.
pub fn nilpotency_probe(
    ps: &ParamSet,
    i: usize,
    max_degree: usize,
    kmax: usize,
) -> Result<Option<usize>> {
    let e = gen_e(ps, i)?;
    let ev = Evaluator::new(ps);
    let mut power = e.clone();
    for k in 2..=kmax.min(max_degree) {
        power = power.conv(&e);
        if (0..=max_degree).all(|s| ev.matrix(&power, s).is_zero()) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// How an identity's scalar or sign is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    /// As usually written for these parameters.
    Stated,
    /// The form that holds in this model.
    Corrected,
}

/// `kappa_{j+1}^i K_i E_{j+1}^j = kappa_j^i E_{j+1}^j K_i`
pub fn commute_identity(ps: &ParamSet, i: usize, j: usize) -> Result<Identity> {
    let k = ps.kappa();
    let (ki, ej) = (gen_k(ps, i)?, gen_e(ps, j)?);
    Ok(Identity {
        name: alloc::format!("K_{} E_{}^{} commutation", i + 1, j + 2, j + 1),
        lhs: (&ki * &ej).scaled(k.get(i, j + 1)),
        rhs: (&ej * &ki).scaled(k.get(i, j)),
    })
}

/// `e_i L_j = c L_j e_i`. The stated scalar is
/// `kappa_i^j (kappa_{i+1}^j)^-1`; the model satisfies
/// `c = kappa_j^i (kappa_j^{i+1})^-1`.
pub fn el_exchange_identity(ps: &ParamSet, i: usize, j: usize, form: Form) -> Result<Identity> {
    let k = ps.kappa();
    let c = match form {
        Form::Stated => k.get(j, i).checked_div(k.get(j, i + 1))?,
        Form::Corrected => k.get(i, j).checked_div(k.get(i + 1, j))?,
    };
    let (e, l) = (normalized_e(ps, i)?, gen_l(ps, j)?);
    Ok(Identity {
        name: alloc::format!("e_{} L_{} exchange", i + 1, j + 1),
        lhs: &e * &l,
        rhs: (&l * &e).scaled(&c),
    })
}

/// `kappa_j^{i+1} E_{i+1}^i F_j^{j+1} - kappa_{j+1}^i F_j^{j+1} E_{i+1}^i
///  = s delta_ij r (r-1)^-1 (L_i K_{i+1} - L_{i+1} K_i)`
/// with `s = +1` stated and `s = -1` in this model.
pub fn eft_identity(ps: &ParamSet, i: usize, j: usize, form: Form) -> Result<Identity> {
    let k = ps.kappa();
    let (e, f) = (gen_e(ps, i)?, gen_f(ps, j)?);
    let lhs = &(&e * &f).scaled(k.get(i + 1, j)) - &(&f * &e).scaled(k.get(i, j + 1));
    let rhs = if i == j {
        let mut c = ps.r().checked_div(&r_minus_one(ps))?;
        if form == Form::Corrected {
            c = -c;
        }
        let a = &gen_l(ps, i)? * &gen_k(ps, i + 1)?;
        let b = &gen_l(ps, i + 1)? * &gen_k(ps, i)?;
        (&a - &b).scaled(&c)
    } else {
        Functional::zero()
    };
    Ok(Identity {
        name: alloc::format!("E_{}^{} F_{}^{} relation", i + 2, i + 1, j + 1, j + 2),
        lhs,
        rhs,
    })
}

/// `S^-2(e_i) = r^-1 e_i`
pub fn s_minus_two_identity(ps: &ParamSet, i: usize) -> Result<Identity> {
    Ok(Identity {
        name: alloc::format!("S^-2(e_{})", i + 1),
        lhs: antipode_pm2_e(ps, i, -2)?,
        rhs: normalized_e(ps, i)?.scaled(&ps.r().inv()?),
    })
}
