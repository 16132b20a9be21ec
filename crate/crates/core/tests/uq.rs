mod common;

use common::params_strategy;
use frt_core::frt::{coproduct, rtt_relators, RttConvention, TWord};
use frt_core::params::{example_one_parameter, example_seven, ParamSet};
use frt_core::uq::{
    annihilates_relators, commute_identity, eft_identity, el_exchange_identity, gen_e, gen_f,
    gen_k, gen_l, generators, nilpotency_probe, s_minus_two_identity, select_rtt_convention,
    verify_identity, Evaluator, Form, Functional, Identity,
};
use frt_core::Scalar;
use proptest::prelude::*;

/// Functionals evaluated straight from their defining coproducts.
enum Oracle {
    Char(Vec<Scalar>),
    Skew((usize, usize), Vec<Scalar>, Vec<Scalar>),
    Conv(Box<Oracle>, Box<Oracle>),
}

fn eval_char(v: &[Scalar], w: &TWord, one: &Scalar) -> Scalar {
    w.letters().iter().fold(one.clone(), |acc, &(i, j)| {
        if i == j {
            acc * &v[i]
        } else {
            Scalar::zero(one.field())
        }
    })
}

fn eval(ps: &ParamSet, u: &Oracle, w: &TWord) -> Scalar {
    let one = Scalar::one(ps.field());
    match u {
        Oracle::Char(v) => eval_char(v, w, &one),
        // u(a b) = left(a) u(b) + u(a) right(b), splitting off the first letter
        Oracle::Skew(t, left, right) => {
            let l = w.letters();
            let mut acc = Scalar::zero(ps.field());
            for k in 0..l.len() {
                if l[k] == *t {
                    let pre = TWord::new(l[..k].to_vec());
                    let post = TWord::new(l[k + 1..].to_vec());
                    acc = acc + eval_char(left, &pre, &one) * eval_char(right, &post, &one);
                }
            }
            acc
        }
        Oracle::Conv(a, b) => coproduct(w, ps.n(), ps.field())
            .terms()
            .fold(Scalar::zero(ps.field()), |acc, ((x, y), c)| {
                acc + c * &(eval(ps, a, x) * eval(ps, b, y))
            }),
    }
}

fn oracle_e(ps: &ParamSet, i: usize) -> Oracle {
    let k = ps.kappa();
    Oracle::Skew((i, i + 1), k.row(i + 1).to_vec(), k.row(i).to_vec())
}

fn oracle_f(ps: &ParamSet, i: usize) -> Oracle {
    let inv = |v: Vec<Scalar>| v.iter().map(|x| x.inv().unwrap()).collect();
    let k = ps.kappa();
    Oracle::Skew((i + 1, i), inv(k.column(i)), inv(k.column(i + 1)))
}

fn words(n: usize, d: usize) -> Vec<TWord> {
    (0..=d).flat_map(|s| TWord::all_of_length(n, s)).collect()
}

#[test]
fn evaluator_matches_definitions() {
    let ps = example_seven();
    let ev = Evaluator::new(&ps);
    let cases: Vec<(Functional, Oracle)> = vec![
        (
            gen_e(&ps, 0).unwrap() * gen_f(&ps, 0).unwrap(),
            Oracle::Conv(Box::new(oracle_e(&ps, 0)), Box::new(oracle_f(&ps, 0))),
        ),
        (
            gen_f(&ps, 1).unwrap() * gen_e(&ps, 0).unwrap(),
            Oracle::Conv(Box::new(oracle_f(&ps, 1)), Box::new(oracle_e(&ps, 0))),
        ),
        (
            gen_k(&ps, 2).unwrap() * gen_e(&ps, 1).unwrap(),
            Oracle::Conv(
                Box::new(Oracle::Char(ps.kappa().row(2).to_vec())),
                Box::new(oracle_e(&ps, 1)),
            ),
        ),
    ];
    for (u, o) in &cases {
        for w in words(3, 3) {
            assert_eq!(ev.eval(u, &w), eval(&ps, o, &w), "{w}");
        }
    }
}

#[test]
fn stated_ef_sign_fails_on_a_single_letter() {
    let ps = example_seven();
    let ev = Evaluator::new(&ps);
    let w = TWord::letter(0, 0);
    let k = ps.kappa();
    let ef = Oracle::Conv(Box::new(oracle_e(&ps, 0)), Box::new(oracle_f(&ps, 0)));
    let fe = Oracle::Conv(Box::new(oracle_f(&ps, 0)), Box::new(oracle_e(&ps, 0)));
    let lhs = k.get(1, 0) * &eval(&ps, &ef, &w) - k.get(0, 1) * &eval(&ps, &fe, &w);
    assert_eq!(&lhs, k.get(1, 0));
    let stated = eft_identity(&ps, 0, 0, Form::Stated).unwrap();
    assert_eq!(ev.eval(&stated.rhs, &w), -lhs.clone());
    let corrected = eft_identity(&ps, 0, 0, Form::Corrected).unwrap();
    assert_eq!(ev.eval(&corrected.rhs, &w), lhs);
}

fn model_identities(ps: &ParamSet) -> Vec<Identity> {
    let n = ps.n();
    let mut ids = Vec::new();
    for i in 0..n {
        for j in 0..n - 1 {
            ids.push(commute_identity(ps, i, j).unwrap());
        }
    }
    for i in 0..n - 1 {
        ids.push(s_minus_two_identity(ps, i).unwrap());
        for j in 0..n {
            ids.push(el_exchange_identity(ps, i, j, Form::Corrected).unwrap());
        }
        for j in 0..n - 1 {
            ids.push(eft_identity(ps, i, j, Form::Corrected).unwrap());
        }
    }
    ids
}

#[test]
fn model_relations_on_examples() {
    for ps in [
        example_seven(),
        example_one_parameter(2),
        example_one_parameter(3),
    ] {
        let ev = Evaluator::new(&ps);
        for id in model_identities(&ps) {
            assert!(
                verify_identity(&ev, &id.lhs, &id.rhs, 3).holds,
                "{}",
                id.name
            );
        }
        let rels = rtt_relators(&ps);
        for (name, u) in generators(&ps) {
            assert!(annihilates_relators(&ev, &u, &rels, 3), "{name}");
        }
    }
}

#[test]
fn convention_and_nilpotency() {
    let ps = example_seven();
    assert_eq!(
        select_rtt_convention(&ps, 3).unwrap(),
        RttConvention::Standard
    );
    // z_3 has order 3, so E^3 vanishes at cutoff 3 and E^2 does not
    let ps3 = example_one_parameter(2);
    assert_eq!(nilpotency_probe(&ps3, 0, 3, 5).unwrap(), Some(3));
}

#[test]
fn k_and_l_commute() {
    let ps = example_seven();
    let ev = Evaluator::new(&ps);
    let (k, l) = (gen_k(&ps, 0).unwrap(), gen_l(&ps, 2).unwrap());
    assert!(verify_identity(&ev, &(&k * &l), &(&l * &k), 3).holds);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn model_relations_random(rp in params_strategy(2, 3, 12)) {
        let ps = rp.build();
        let ev = Evaluator::new(&ps);
        for id in model_identities(&ps) {
            prop_assert!(verify_identity(&ev, &id.lhs, &id.rhs, 3).holds, "{}", id.name);
        }
        let rels = rtt_relators(&ps);
        for (name, u) in generators(&ps) {
            prop_assert!(annihilates_relators(&ev, &u, &rels, 3), "{}", name);
        }
    }
}
