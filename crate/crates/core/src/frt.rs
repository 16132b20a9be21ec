//! Words in the generators `T_i^j` of `A(R_Q)`, the coproduct, RTT relators
//! and the braiding pairing.
//!
//! A letter `(i, j)` denotes `T_i^j` (0-based) and `Delta(T_i^j) =
//! sum_k T_i^k (x) T_k^j`. A word of length `s` corresponds to a pair of
//! multi-indices `(I, J)`, which are encoded big-endian as integers in
//! `0..n^s`; see [`TWord::indices`].

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::params::ParamSet;
use crate::scalar::{CycloField, Scalar};
use crate::ybr::{build_r, RMatrix};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TWord(Vec<(usize, usize)>);

impl TWord {
    pub fn empty() -> TWord {
        TWord(Vec::new())
    }

    pub fn letter(i: usize, j: usize) -> TWord {
        TWord(alloc::vec![(i, j)])
    }

    pub fn new(letters: Vec<(usize, usize)>) -> TWord {
        TWord(letters)
    }

    pub fn letters(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &TWord) -> TWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        TWord(v)
    }

    /// Big-endian encodings of the lower and upper multi-indices.
    pub fn indices(&self, n: usize) -> (usize, usize) {
        self.0
            .iter()
            .fold((0, 0), |(a, b), &(i, j)| (a * n + i, b * n + j))
    }

    /// Inverse of [`TWord::indices`].
    pub fn from_indices(n: usize, len: usize, mut lower: usize, mut upper: usize) -> TWord {
        let mut v = alloc::vec![(0, 0); len];
        for slot in v.iter_mut().rev() {
            *slot = (lower % n, upper % n);
            lower /= n;
            upper /= n;
        }
        TWord(v)
    }

    pub fn check_range(&self, n: usize) -> Result<()> {
        for &(i, j) in &self.0 {
            let index = i.max(j);
            if index >= n {
                return Err(Error::IndexOutOfRange { index, bound: n });
            }
        }
        Ok(())
    }

    /// All words of length `len` in lexicographic order of `(I, J)`.
    pub fn all_of_length(n: usize, len: usize) -> impl Iterator<Item = TWord> {
        let count = n.pow(len as u32);
        (0..count).flat_map(move |i| (0..count).map(move |j| TWord::from_indices(n, len, i, j)))
    }
}

impl fmt::Debug for TWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for TWord {
    /// 1-based, e.g. `T_1^2 T_2^2`; the empty word prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (i, j)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "T_{}^{}", i + 1, j + 1)?;
        }
        Ok(())
    }
}

/// A finite linear combination with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Scalar>,
}

pub type TLinComb = LinComb<TWord>;
pub type TensorSum = LinComb<(TWord, TWord)>;

impl<K: Ord + Clone> LinComb<K> {
    pub fn new() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, key: K, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &K) -> Option<&Scalar> {
        self.terms.get(key)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::new();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &(v * c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v);
        }
        out
    }

    /// Rescaled so that the coefficient of the smallest key is one.
    pub fn normalized(&self) -> Self {
        match self.terms.values().next() {
            None => self.clone(),
            Some(lead) => self.scale(&lead.inv().expect("coefficients are nonzero")),
        }
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// `Delta` extended multiplicatively: for `w = T_I^J`,
/// `Delta(w) = sum_K T_I^K (x) T_K^J`.
pub fn coproduct(w: &TWord, n: usize, field: &Arc<CycloField>) -> TensorSum {
    let mut x = TLinComb::new();
    x.add_term(w.clone(), &Scalar::one(field));
    coproduct_lin(&x, n)
}

/// `Delta` extended linearly over a combination.
pub fn coproduct_lin(x: &TLinComb, n: usize) -> TensorSum {
    let mut out = TensorSum::new();
    for (w, c) in x.terms() {
        let (lower, upper) = w.indices(n);
        let s = w.len();
        for k in 0..n.pow(s as u32) {
            out.add_term(
                (
                    TWord::from_indices(n, s, lower, k),
                    TWord::from_indices(n, s, k, upper),
                ),
                c,
            );
        }
    }
    out
}

/// Index conventions for the RTT relation `R T_1 T_2 = T_2 T_1 R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RttConvention {
    /// `sum_kl R_ij^kl T_k^a T_l^b - sum_kl T_i^k T_j^l R_kl^ab`
    Standard,
    /// `sum_kl R_ij^kl T_l^b T_k^a - sum_kl T_j^l T_i^k R_kl^ab`
    Reversed,
}

impl RttConvention {
    pub const ALL: [RttConvention; 2] = [RttConvention::Standard, RttConvention::Reversed];
}

/// The shipped convention, the unique one annihilated by all generators of
/// `U_Q` (see `uq::select_rtt_convention`).
pub const RTT_CONVENTION: RttConvention = RttConvention::Standard;

/// Degree-2 RTT relators, normalized, deduplicated, zeros removed.
pub fn rtt_relators(ps: &ParamSet) -> Vec<TLinComb> {
    rtt_relators_with(&build_r(ps), RTT_CONVENTION)
}

pub fn rtt_relators_with(r: &RMatrix, conv: RttConvention) -> Vec<TLinComb> {
    let n = r.n();
    let mut out: Vec<TLinComb> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for a in 0..n {
                for b in 0..n {
                    let mut rel = TLinComb::new();
                    for k in 0..n {
                        for l in 0..n {
                            let left = r.entry(i, j, k, l);
                            let right = -r.entry(k, l, a, b);
                            let (wl, wr) = match conv {
                                RttConvention::Standard => (
                                    TWord::new(alloc::vec![(k, a), (l, b)]),
                                    TWord::new(alloc::vec![(i, k), (j, l)]),
                                ),
                                RttConvention::Reversed => (
                                    TWord::new(alloc::vec![(l, b), (k, a)]),
                                    TWord::new(alloc::vec![(j, l), (i, k)]),
                                ),
                            };
                            rel.add_term(wl, left);
                            rel.add_term(wr, &right);
                        }
                    }
                    if rel.is_zero() {
                        continue;
                    }
                    let rel = rel.normalized();
                    if !out.contains(&rel) {
                        out.push(rel);
                    }
                }
            }
        }
    }
    out
}

/// Projection of degree-2 words onto the quotient by the span of `relators`.
///
/// The relators are brought to reduced row echelon form; a pivot word `w` of
/// row `rho` reduces to `w - rho`, which involves only non-pivot words.
pub struct QuotientReducer {
    field: Arc<CycloField>,
    pivots: BTreeMap<TWord, TLinComb>,
}

impl QuotientReducer {
    pub fn new(field: &Arc<CycloField>, relators: &[TLinComb]) -> QuotientReducer {
        let mut rows: Vec<TLinComb> = Vec::new();
        for rel in relators {
            let mut v = rel.clone();
            for row in &rows {
                let lead = row.terms().next().unwrap().0.clone();
                if let Some(c) = v.coefficient(&lead).cloned() {
                    v = v.add(&row.scale(&-c));
                }
            }
            if v.is_zero() {
                continue;
            }
            let v = v.normalized();
            let lead = v.terms().next().unwrap().0.clone();
            for row in rows.iter_mut() {
                if let Some(c) = row.coefficient(&lead).cloned() {
                    *row = row.add(&v.scale(&-c));
                }
            }
            rows.push(v);
        }
        let pivots = rows
            .into_iter()
            .map(|row| {
                let lead = row.terms().next().unwrap().0.clone();
                (lead, row)
            })
            .collect();
        QuotientReducer {
            field: field.clone(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn reduce(&self, w: &TWord) -> TLinComb {
        let mut out = TLinComb::new();
        match self.pivots.get(w) {
            Some(row) => {
                for (k, c) in row.terms() {
                    if k != w {
                        out.add_term(k.clone(), &-c);
                    }
                }
            }
            None => out.add_term(w.clone(), &Scalar::one(&self.field)),
        }
        out
    }
}

/// Checks that `Delta(rho)` lies in `I (x) A + A (x) I` for every relator,
/// where `I` is the span of the relators, by projecting both legs onto the
/// degree-2 quotient.
pub fn relators_form_coideal(ps: &ParamSet, relators: &[TLinComb]) -> bool {
    let n = ps.n();
    let red = QuotientReducer::new(ps.field(), relators);
    relators.iter().all(|rel| {
        let mut image = TensorSum::new();
        for ((a, b), c) in coproduct_lin(rel, n).terms() {
            let ra = red.reduce(a);
            let rb = red.reduce(b);
            for (x, cx) in ra.terms() {
                for (y, cy) in rb.terms() {
                    image.add_term((x.clone(), y.clone()), &(&(c * cx) * cy));
                }
            }
        }
        image.is_zero()
    })
}

/// Letter matrices keyed by `(letter, word length)`.
type LetterMemo = BTreeMap<((usize, usize), usize), Matrix>;

/// The bialgebra pairing `<T_i^l | T_j^k> = R_ij^kl`, extended by
/// `<ab|x> = sum <a|x_2><b|x_1>`, `<a|xy> = sum <a_1|x><a_2|y>` and
/// `<a|1> = <1|a> = epsilon(a)`.
///
/// For a fixed left word the pairing is a functional on `A(R_Q)`; restricted
/// to words of length `t` it is the `n^t x n^t` matrix `[I, J] -> <w | T_I^J>`.
pub struct BraidPairing {
    r: RMatrix,
    letter_left: RefCell<LetterMemo>,
    letter_right: RefCell<LetterMemo>,
}

impl BraidPairing {
    pub fn new(ps: &ParamSet) -> BraidPairing {
        BraidPairing::from_r(build_r(ps))
    }

    pub fn from_r(r: RMatrix) -> BraidPairing {
        BraidPairing {
            r,
            letter_left: RefCell::new(BTreeMap::new()),
            letter_right: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn n(&self) -> usize {
        self.r.n()
    }

    fn field(&self) -> Arc<CycloField> {
        self.r.matrix()[(0, 0)].field().clone()
    }

    /// `<T_a^b | T_c^d> = R_ac^db`
    pub fn letter_value(&self, (a, b): (usize, usize), (c, d): (usize, usize)) -> Scalar {
        self.r.entry(a, c, d, b).clone()
    }

    fn epsilon_matrix(&self, t: usize) -> Matrix {
        Matrix::identity(&self.field(), self.n().pow(t as u32))
    }

    /// `[I, J] -> <T_a^b | T_I^J>` on words of length `t`: the `(a, b)` entry of
    /// the product of the `n x n` matrices `M(T_c^d)_{ab} = <T_a^b | T_c^d>`.
    fn letter_left_matrix(&self, letter: (usize, usize), t: usize) -> Matrix {
        if let Some(m) = self.letter_left.borrow().get(&(letter, t)) {
            return m.clone();
        }
        let n = self.n();
        let field = self.field();
        let size = n.pow(t as u32);
        let mut out = Matrix::zeros(&field, size, size);
        for lower in 0..size {
            for upper in 0..size {
                let w = TWord::from_indices(n, t, lower, upper);
                // row vector e_a^T M(y_1) ... M(y_t), read at column b
                let mut v: Vec<Scalar> = (0..n)
                    .map(|k| {
                        if k == letter.0 {
                            Scalar::one(&field)
                        } else {
                            Scalar::zero(&field)
                        }
                    })
                    .collect();
                for &y in w.letters() {
                    v = (0..n)
                        .map(|col| {
                            let mut acc = Scalar::zero(&field);
                            for (row, x) in v.iter().enumerate() {
                                if !x.is_zero() {
                                    acc = acc + x * &self.letter_value((row, col), y);
                                }
                            }
                            acc
                        })
                        .collect();
                }
                out[(lower, upper)] = v[letter.1].clone();
            }
        }
        self.letter_left
            .borrow_mut()
            .insert((letter, t), out.clone());
        out
    }

    /// `[I, J] -> <T_I^J | T_c^d>` on words of length `t`.
    fn letter_right_matrix(&self, letter: (usize, usize), t: usize) -> Matrix {
        if let Some(m) = self.letter_right.borrow().get(&(letter, t)) {
            return m.clone();
        }
        let n = self.n();
        let field = self.field();
        let size = n.pow(t as u32);
        let mut out = Matrix::zeros(&field, size, size);
        for lower in 0..size {
            for upper in 0..size {
                let w = TWord::from_indices(n, t, lower, upper);
                // the last letter of w pairs with the first coproduct leg
                let mut v: Vec<Scalar> = (0..n)
                    .map(|k| {
                        if k == letter.0 {
                            Scalar::one(&field)
                        } else {
                            Scalar::zero(&field)
                        }
                    })
                    .collect();
                for &y in w.letters().iter().rev() {
                    v = (0..n)
                        .map(|col| {
                            let mut acc = Scalar::zero(&field);
                            for (row, x) in v.iter().enumerate() {
                                if !x.is_zero() {
                                    acc = acc + x * &self.letter_value(y, (row, col));
                                }
                            }
                            acc
                        })
                        .collect();
                }
                out[(lower, upper)] = v[letter.1].clone();
            }
        }
        self.letter_right
            .borrow_mut()
            .insert((letter, t), out.clone());
        out
    }

    /// `lambda^+(w) = <w | ->` on words of length `t`.
    pub fn left_matrix(&self, w: &TWord, t: usize) -> Matrix {
        // <a_1 ... a_s | x> pairs a_s with the first coproduct leg
        w.letters()
            .iter()
            .rev()
            .fold(self.epsilon_matrix(t), |acc, &a| {
                acc.mul(&self.letter_left_matrix(a, t)).expect("square")
            })
    }

    /// `rho^+(w) = <- | w>` on words of length `t`.
    pub fn right_matrix(&self, w: &TWord, t: usize) -> Matrix {
        w.letters().iter().fold(self.epsilon_matrix(t), |acc, &a| {
            acc.mul(&self.letter_right_matrix(a, t)).expect("square")
        })
    }

    pub fn pair(&self, a: &TWord, b: &TWord) -> Scalar {
        let n = self.n();
        let (lower, upper) = b.indices(n);
        self.left_matrix(a, b.len())[(lower, upper)].clone()
    }
}

/// `epsilon(T_I^J) = delta_IJ`
pub fn counit(w: &TWord) -> bool {
    w.letters().iter().all(|&(i, j)| i == j)
}
