use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use frt_core::cartan::{braid_matrix, detect_type_a, expected_symmetrized, symmetrized};
use frt_core::dcross::{
    closed_form_table, efd_eft_scalar_reconciles, efd_image_identity, pairing_table, verify_efd,
};
use frt_core::frt::rtt_relators;
use frt_core::grouplike::{
    central_decomposition, char_vec_sigma, closure, example_seven_relations, k_orders_vs_lcm,
    kbar_orders_coprime, sigma_centrality_check, subgroup_invariants, CentralReport, CharVector,
};
use frt_core::params::{
    build_params, example_non_central, example_one_parameter, example_seven, root_params,
    ParamEntry, ParamSet,
};
use frt_core::uq::{
    annihilates_relators, commute_identity, eft_identity, el_exchange_identity, generators,
    s_minus_two_identity, verify_identity, Evaluator, Form, Identity,
};
use frt_core::ybr::{build_r, check_ybe};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_251_017;
const CUTOFF: usize = 3;

struct Runner {
    failed: usize,
}

impl Runner {
    fn run(&mut self, id: u32, name: &str, budget: Duration, f: impl FnOnce() -> (bool, String)) {
        let start = Instant::now();
        let (ok, detail) = f();
        let elapsed = start.elapsed();
        let in_budget = elapsed <= budget;
        let pass = ok && in_budget;
        if !pass {
            self.failed += 1;
        }
        println!(
            "[criterion {id}] {} {name}: {detail}; {:.3}s of {}s budget{}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            if in_budget { "" } else { " (over budget)" },
        );
    }
}

fn info(line: &str) {
    println!("    info: {line}");
}

fn random_params(rng: &mut ChaCha8Rng, n: usize, m_max: u64) -> ParamSet {
    let m = rng.gen_range(2..=m_max);
    let r = rng.gen_range(1..m as i64);
    let p: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|k| (k, rng.gen_range(0..m as i64)))
        .collect();
    root_params(n, m, r, &p).expect("valid random parameters")
}

fn random_sets(rng: &mut ChaCha8Rng, count: usize, ns: &[usize], m_max: u64) -> Vec<ParamSet> {
    (0..count)
        .map(|_| {
            let n = ns[rng.gen_range(0..ns.len())];
            random_params(rng, n, m_max)
        })
        .collect()
}

fn reference_examples() -> Vec<ParamSet> {
    vec![example_seven(), example_one_parameter(3)]
}

fn failing(ev: &Evaluator, ids: &[Identity]) -> Vec<String> {
    ids.iter()
        .filter(|id| !verify_identity(ev, &id.lhs, &id.rhs, CUTOFF).holds)
        .map(|id| id.name.clone())
        .collect()
}

/// Hopf relation families for one parameter set, in the given form.
fn hopf_families(ps: &ParamSet, form: Form) -> BTreeMap<&'static str, Vec<Identity>> {
    let n = ps.n();
    let mut fam: BTreeMap<&'static str, Vec<Identity>> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n - 1 {
            fam.entry("commute")
                .or_default()
                .push(commute_identity(ps, i, j).unwrap());
        }
    }
    for i in 0..n - 1 {
        fam.entry("S^-2(e)")
            .or_default()
            .push(s_minus_two_identity(ps, i).unwrap());
        for j in 0..n {
            fam.entry("e/L exchange")
                .or_default()
                .push(el_exchange_identity(ps, i, j, form).unwrap());
        }
        for j in 0..n - 1 {
            fam.entry("EF relation")
                .or_default()
                .push(eft_identity(ps, i, j, form).unwrap());
        }
    }
    fam
}

fn criterion_1(rng: &mut ChaCha8Rng) -> (bool, String) {
    let mut sets = reference_examples();
    sets.extend(random_sets(rng, 24, &[2, 3, 4], 12));
    let bad = sets
        .iter()
        .filter(|ps| !check_ybe(&build_r(ps)).unwrap().holds)
        .count();
    (
        bad == 0,
        format!(
            "{} of {} parameter sets satisfy the braid relation",
            sets.len() - bad,
            sets.len()
        ),
    )
}

fn criterion_2(rng: &mut ChaCha8Rng) -> (bool, String) {
    let mut sets = vec![example_seven(), example_one_parameter(3)];
    sets.extend(random_sets(rng, 10, &[2, 3], 12));
    let mut stated: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    let mut corrected: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    let mut relators = (0, 0);
    let mut first_failure = None;
    for ps in &sets {
        let ev = Evaluator::new(ps);
        for (form, tally) in [
            (Form::Stated, &mut stated),
            (Form::Corrected, &mut corrected),
        ] {
            for (name, ids) in hopf_families(ps, form) {
                let bad = failing(&ev, &ids);
                if form == Form::Stated && first_failure.is_none() {
                    first_failure = bad.first().cloned();
                }
                let e = tally.entry(name).or_default();
                e.0 += ids.len() - bad.len();
                e.1 += ids.len();
            }
        }
        let rels = rtt_relators(ps);
        for (_, u) in generators(ps) {
            relators.1 += 1;
            if annihilates_relators(&ev, &u, &rels, CUTOFF) {
                relators.0 += 1;
            }
        }
    }
    let summary = |t: &BTreeMap<&str, (usize, usize)>| {
        t.iter()
            .map(|(k, (a, b))| format!("{k} {a}/{b}"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    info(&format!("model forms: {}", summary(&corrected)));
    if let Some(name) = &first_failure {
        info(&format!("first stated failure: {name}"));
    }
    let ok = stated.values().all(|(a, b)| a == b) && relators.0 == relators.1;
    (
        ok,
        format!(
            "stated forms over {} sets: {}, relator annihilation {}/{}",
            sets.len(),
            summary(&stated),
            relators.0,
            relators.1
        ),
    )
}

fn criterion_3(rng: &mut ChaCha8Rng) -> (bool, String) {
    let mut sets: Vec<ParamSet> = (2..=5).map(example_one_parameter).collect();
    sets.push(example_seven());
    sets.extend(random_sets(rng, 24, &[2, 3, 4, 5], 12));
    let ok_count = sets
        .iter()
        .filter(|ps| {
            let s = symmetrized(&braid_matrix(ps));
            let res = detect_type_a(&s, ps.r()).unwrap();
            s == expected_symmetrized(ps).unwrap()
                && res.tag() == Some(format!("A_{}", ps.n() - 1))
                && matches!(&res, frt_core::cartan::CartanResult::TypeA { q, .. } if *q == ps.r().inv().unwrap())
        })
        .count();
    (
        ok_count == sets.len(),
        format!(
            "{ok_count} of {} parameter sets detected as type A_(n-1) with q = r^-1",
            sets.len()
        ),
    )
}

fn criterion_4(rng: &mut ChaCha8Rng) -> (bool, String) {
    let ex = example_seven();
    let ex25 = example_seven_relations(&ex).unwrap();
    let sigma_trivial =
        (2..=4).all(|n| char_vec_sigma(&example_one_parameter(n)).unwrap().is_zero());
    let randoms = random_sets(rng, 20, &[2, 3, 4], 12);
    let lcm_ok = randoms
        .iter()
        .all(|ps| k_orders_vs_lcm(ps).unwrap().iter().all(|(d, f)| d == f));
    let thm24 = matches!(
        central_decomposition(&ex).unwrap(),
        CentralReport::Applicable { decomposition: Some(ref d), .. } if d.holds
    );
    let mut snf_ok = true;
    for _ in 0..30 {
        let m = rng.gen_range(2..=12u64);
        let n = rng.gen_range(1..=4usize);
        let g = rng.gen_range(1..=3usize);
        let gens: Vec<CharVector> = (0..g)
            .map(|_| CharVector::new(m, (0..n).map(|_| rng.gen_range(0..m as i64)).collect()))
            .collect();
        snf_ok &= subgroup_invariants(&gens, m, n).order() as usize == closure(&gens, m, n).len();
    }
    let coprime = root_params(3, 210, 105, &[((0, 1), 70), ((0, 2), 42), ((1, 2), 30)]).unwrap();
    info(&format!(
        "second order formula on coprime orders: {:?}",
        kbar_orders_coprime(&coprime).unwrap()
    ));
    (
        ex25.holds() && sigma_trivial && lcm_ok && thm24 && snf_ok,
        format!(
            "example relations {}, sigma = 1 {}, lcm formula {}, direct product {}, SNF vs closure {}",
            ex25.holds(),
            sigma_trivial,
            lcm_ok,
            thm24,
            snf_ok
        ),
    )
}

fn criterion_5(rng: &mut ChaCha8Rng) -> (bool, String) {
    let mut sets = reference_examples();
    sets.extend(random_sets(rng, 10, &[2, 3], 12));
    let mut tables = 0;
    let mut efd = 0;
    let mut chain = 0;
    let mut literal = 0;
    for ps in &sets {
        if pairing_table(ps).unwrap() == closed_form_table(ps).unwrap() {
            tables += 1;
        }
        if verify_efd(ps, Form::Corrected)
            .unwrap()
            .iter()
            .all(|o| o.holds)
        {
            efd += 1;
        }
        if verify_efd(ps, Form::Stated)
            .unwrap()
            .iter()
            .all(|o| o.holds)
        {
            literal += 1;
        }
        let ev = Evaluator::new(ps);
        let n = ps.n();
        let images: Vec<Identity> = (0..n - 1)
            .flat_map(|i| (0..n - 1).map(move |j| (i, j)))
            .map(|(i, j)| efd_image_identity(ps, i, j).unwrap())
            .collect();
        if efd_eft_scalar_reconciles(ps).unwrap() && failing(&ev, &images).is_empty() {
            chain += 1;
        }
    }
    let total = sets.len();
    info(&format!(
        "f >< e coefficient taken literally as kappa_i^(j+1): {literal}/{total} sets"
    ));
    (
        tables == total && efd == total && chain == total,
        format!("closed forms {tables}/{total}, double relation {efd}/{total}, reconciliation {chain}/{total}"),
    )
}

fn criterion_6(rng: &mut ChaCha8Rng) -> (bool, String) {
    let mut sets = reference_examples();
    sets.push(root_params(3, 8, 2, &[((0, 1), 1), ((0, 2), 1), ((1, 2), 1)]).unwrap());
    sets.extend(random_sets(rng, 10, &[2, 3], 12));
    let mut central = 0;
    let mut commuting = 0;
    for ps in &sets {
        if ps.det_is_central() {
            central += 1;
            if sigma_centrality_check(ps, CUTOFF).unwrap().commutes {
                commuting += 1;
            }
        }
    }
    let fixture = sigma_centrality_check(&example_non_central(), CUTOFF).unwrap();
    let witness = match &fixture.witness {
        Some((g, w)) => format!("sigma {g} != {g} sigma on {w}"),
        None => "none".into(),
    };
    (
        central == commuting && central > 0 && !fixture.commutes && fixture.witness.is_some(),
        format!("central determinant implies central sigma on {commuting}/{central} sets; non-central witness: {witness}"),
    )
}

fn criterion_7(rng: &mut ChaCha8Rng) -> (bool, String) {
    let mut sets = reference_examples();
    sets.extend(random_sets(rng, 10, &[2, 3, 4], 12));
    let cyclo_ok = sets.iter().all(ParamSet::is_finite_dimensional);
    let formal = |r: ParamEntry, p: ParamEntry| {
        let map: BTreeMap<_, _> = [
            ((0, 1), ParamEntry::Root(1)),
            ((0, 2), p),
            ((1, 2), ParamEntry::Root(2)),
        ]
        .into_iter()
        .collect();
        build_params(3, 7, r, &map).unwrap()
    };
    let formal_sets = [
        formal(ParamEntry::Formal(1), ParamEntry::Root(3)),
        formal(ParamEntry::Root(1), ParamEntry::Formal(1)),
        formal(ParamEntry::Formal(2), ParamEntry::Formal(-1)),
    ];
    let formal_ok = formal_sets.iter().all(|ps| !ps.is_finite_dimensional());
    (
        cyclo_ok && formal_ok,
        format!("root-of-unity sets finite {cyclo_ok}, formal sets infinite {formal_ok}"),
    )
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut runner = Runner { failed: 0 };
    let secs = Duration::from_secs;
    runner.run(1, "Yang-Baxter equation", secs(10), || {
        criterion_1(&mut rng)
    });
    runner.run(2, "Hopf relations at cutoff 3", secs(60), || {
        criterion_2(&mut rng)
    });
    runner.run(3, "Cartan type A", secs(1), || criterion_3(&mut rng));
    runner.run(4, "group-like groups", secs(5), || criterion_4(&mut rng));
    runner.run(5, "pairing and double relations", secs(10), || {
        criterion_5(&mut rng)
    });
    runner.run(6, "centrality of sigma", secs(30), || criterion_6(&mut rng));
    runner.run(7, "finite-dimensionality predicate", secs(1), || {
        criterion_7(&mut rng)
    });
    println!("{} of 7 criteria failed", runner.failed);
    if runner.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
