#![allow(dead_code)]

use frt_core::params::{build_params, root_params, ParamEntry, ParamSet};
use proptest::prelude::*;
use rand::Rng;
use std::collections::BTreeMap;

/// Exponent data for a root-of-unity parameter set.
#[derive(Clone, Debug)]
pub struct RandomParams {
    pub n: usize,
    pub m: u64,
    pub r: i64,
    pub p: Vec<((usize, usize), i64)>,
}

impl RandomParams {
    pub fn build(&self) -> ParamSet {
        root_params(self.n, self.m, self.r, &self.p).expect("valid random parameters")
    }
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

pub fn params_strategy(
    n_lo: usize,
    n_hi: usize,
    m_max: u64,
) -> impl Strategy<Value = RandomParams> {
    (n_lo..=n_hi, 2..=m_max).prop_flat_map(|(n, m)| {
        let k = pairs(n).len();
        (1..m as i64, proptest::collection::vec(0..m as i64, k)).prop_map(move |(r, ps)| {
            RandomParams {
                n,
                m,
                r,
                p: pairs(n).into_iter().zip(ps).collect(),
            }
        })
    })
}

pub fn random_params(rng: &mut impl Rng, n: usize, m_max: u64) -> RandomParams {
    let m = rng.gen_range(2..=m_max);
    RandomParams {
        n,
        m,
        r: rng.gen_range(1..m as i64),
        p: pairs(n)
            .into_iter()
            .map(|k| (k, rng.gen_range(0..m as i64)))
            .collect(),
    }
}

/// `r = t^r_exp` and `p_ij = z_m^e` or `t^e` as selected by `formal`.
pub fn formal_params(
    n: usize,
    m: u64,
    r: ParamEntry,
    p: &[((usize, usize), ParamEntry)],
) -> ParamSet {
    let map: BTreeMap<_, _> = p.iter().cloned().collect();
    build_params(n, m, r, &map).expect("valid formal parameters")
}
