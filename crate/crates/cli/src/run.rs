//! Runs the requested check sections in dependency order.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use frt_core::cartan::{
    braid_matrix, braid_matrix_by_cases, detect_type_a, expected_symmetrized, symmetrized,
    BraidMatrix, CartanResult,
};
use frt_core::dcross::{
    closed_form_table, efd_eft_scalar_reconciles, efd_image_identity, lt_identities, pairing_table,
    rt_identities, verify_cross_exchange, verify_efd, DoubleSymbol, PairingTable,
};
use frt_core::frt::{
    coproduct, rtt_relators_with, BraidPairing, RttConvention, TWord, RTT_CONVENTION,
};
use frt_core::grouplike::{
    central_decomposition, char_vec_k, char_vec_kbar, char_vec_l, char_vec_sigma, closure,
    k_orders_vs_lcm, kbar_orders_coprime, sigma_centrality_check, subgroup_invariants,
    CentralReport, CharVector, KbarOrderReport,
};
use frt_core::params::{ParamEntry, ParamSet};
use frt_core::uq::{
    commute_identity, eft_identity, el_exchange_identity, generators, nilpotency_probe,
    relator_violation, s_minus_two_identity, select_rtt_convention, verify_identity, Evaluator,
    Form, Identity,
};
use frt_core::ybr::{build_r, check_ybe, invert_r, RMatrix};
use frt_core::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::{entry_string, Check, ParamConfig};
use crate::report::{scalar_json, scalar_matrix_json, word_json, Report, Section, Status};

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub checks: Vec<Check>,
    pub max_degree: usize,
    pub seed: u64,
    pub dump_r: bool,
    /// Adds one to this 0-based entry `R_ij^kl` before any check uses `R`.
    pub corrupt_r: Option<(usize, usize, usize, usize)>,
}

/// Largest group searched exhaustively by the seeded closure check.
const CLOSURE_LIMIT: u64 = 200_000;
const PAIRING_SAMPLES: usize = 16;

pub fn run(cfg: &ParamConfig, opts: &RunOptions) -> Report {
    let ps = &cfg.params;
    let mut r = build_r(ps);
    if let Some(cell) = opts.corrupt_r {
        r = r.perturbed(cell, &Scalar::one(ps.field()));
    }
    let r = Arc::new(r);
    let mut sections = BTreeMap::new();
    let mut timing = BTreeMap::new();
    for &check in &opts.checks {
        let start = Instant::now();
        let section = match check {
            Check::Ybe => ybe_section(&r, opts),
            Check::Relations => relations_section(ps, &r, opts),
            Check::Cartan => cartan_section(ps),
            Check::Group => group_section(ps, opts),
            Check::Pairing => pairing_section(ps, opts),
        };
        timing.insert(
            check.name().to_string(),
            start.elapsed().as_secs_f64() * 1e3,
        );
        sections.insert(check.name().to_string(), section);
    }
    let passed = sections
        .values()
        .all(|s: &Section| s.status != Status::Fail);
    Report {
        tool: "qgroup-frt",
        version: env!("CARGO_PKG_VERSION"),
        config: config_json(cfg),
        max_degree: opts.max_degree,
        seed: opts.seed,
        passed,
        sections,
        timing_ms: timing,
    }
}

fn entry_json(e: ParamEntry) -> Value {
    match e {
        ParamEntry::Root(k) => json!(k),
        ParamEntry::Formal(_) => json!(entry_string(e)),
    }
}

fn config_json(cfg: &ParamConfig) -> Value {
    let p: BTreeMap<String, Value> = cfg
        .p
        .iter()
        .map(|(&(i, j), &e)| (format!("{},{}", i + 1, j + 1), entry_json(e)))
        .collect();
    json!({ "n": cfg.n, "m": cfg.m, "r": entry_json(cfg.r), "p": p })
}

fn ybe_section(r: &RMatrix, opts: &RunOptions) -> Section {
    let mut s = Section::new();
    match check_ybe(r) {
        Ok(out) => {
            if let Some((row, col)) = out.witness {
                let one = |v: [usize; 3]| v.map(|x| x + 1);
                s.fail(
                    "braid relation",
                    json!({ "row": one(row), "col": one(col) }),
                );
            }
        }
        Err(e) => s.fail("braid relation", json!(e.to_string())),
    }
    s.data("column_support", json!(r.column_support()));
    s.data("invertible", json!(invert_r(r).is_ok()));
    if opts.dump_r {
        let m = r.matrix();
        let rows: Vec<Vec<String>> = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect())
            .collect();
        s.data("r_matrix", json!(rows));
    }
    s
}

fn model_identities(ps: &ParamSet) -> frt_core::Result<Vec<Identity>> {
    let n = ps.n();
    let mut ids = Vec::new();
    for i in 0..n {
        for j in 0..n - 1 {
            ids.push(commute_identity(ps, i, j)?);
        }
    }
    for i in 0..n - 1 {
        ids.push(s_minus_two_identity(ps, i)?);
        for j in 0..n {
            ids.push(el_exchange_identity(ps, i, j, Form::Corrected)?);
        }
        for j in 0..n - 1 {
            ids.push(eft_identity(ps, i, j, Form::Corrected)?);
        }
    }
    Ok(ids)
}

fn stated_tally(ps: &ParamSet, ev: &Evaluator, d: usize) -> frt_core::Result<Value> {
    let n = ps.n();
    let (mut el, mut ef) = ((0, 0), (0, 0));
    for i in 0..n - 1 {
        for j in 0..n {
            let id = el_exchange_identity(ps, i, j, Form::Stated)?;
            el.1 += 1;
            el.0 += verify_identity(ev, &id.lhs, &id.rhs, d).holds as usize;
        }
        for j in 0..n - 1 {
            let id = eft_identity(ps, i, j, Form::Stated)?;
            ef.1 += 1;
            ef.0 += verify_identity(ev, &id.lhs, &id.rhs, d).holds as usize;
        }
    }
    Ok(json!({
        "e_l_exchange": { "holds": el.0, "total": el.1 },
        "ef_relation": { "holds": ef.0, "total": ef.1 },
    }))
}

fn relations_section(ps: &ParamSet, r: &RMatrix, opts: &RunOptions) -> Section {
    let mut s = Section::new();
    if let Err(e) = relations_body(ps, r, opts, &mut s) {
        s.fail("relations", json!(e.to_string()));
    }
    s
}

fn relations_body(
    ps: &ParamSet,
    r: &RMatrix,
    opts: &RunOptions,
    s: &mut Section,
) -> frt_core::Result<()> {
    let d = opts.max_degree;
    let ev = Evaluator::new(ps);
    match select_rtt_convention(ps, d.max(2)) {
        Ok(conv) => {
            s.data("rtt_convention", json!(format!("{conv:?}").to_lowercase()));
            if conv != RTT_CONVENTION {
                s.fail("rtt convention", json!(format!("{conv:?}")));
            }
        }
        Err(e) => s.fail("rtt convention", json!(e.to_string())),
    }
    let rels = rtt_relators_with(r, RttConvention::Standard);
    s.data("relator_count", json!(rels.len()));
    for (name, u) in generators(ps) {
        if let Some((x, idx, y)) = relator_violation(&ev, &u, &rels, d) {
            s.fail(
                format!("{name} annihilates the RTT relators"),
                json!({ "left": word_json(&x), "relator": idx, "right": word_json(&y) }),
            );
        }
    }
    let ids = model_identities(ps)?;
    s.data("identities_checked", json!(ids.len()));
    for id in &ids {
        s.identity(&id.name, &verify_identity(&ev, &id.lhs, &id.rhs, d));
    }
    s.data("stated_forms", stated_tally(ps, &ev, d)?);
    s.notes.push(
        "e/L exchange checked with scalar kappa_j^i / kappa_j^(i+1); EF relation checked with right side negated"
            .into(),
    );
    let nil: Vec<Option<usize>> = (0..ps.n() - 1)
        .map(|i| nilpotency_probe(ps, i, d, d))
        .collect::<frt_core::Result<_>>()?;
    s.data("nilpotency_probe", json!(nil));
    Ok(())
}

fn braid_json(b: &BraidMatrix) -> Value {
    scalar_matrix_json(b.size(), b.size(), |i, j| b.get(i, j).clone())
}

fn cartan_section(ps: &ParamSet) -> Section {
    let mut s = Section::new();
    let l = braid_matrix(ps);
    if l != braid_matrix_by_cases(ps) {
        s.fail("case table agrees with kappa formula", Value::Null);
    }
    let sym = symmetrized(&l);
    s.data("braiding", braid_json(&l));
    s.data("symmetrized", braid_json(&sym));
    match expected_symmetrized(ps) {
        Ok(exp) if exp == sym => {}
        Ok(exp) => s.fail(
            "symmetrized braiding pattern",
            json!({ "expected": braid_json(&exp) }),
        ),
        Err(e) => s.fail("symmetrized braiding pattern", json!(e.to_string())),
    }
    match detect_type_a(&sym, ps.r()) {
        Ok(res @ CartanResult::TypeA { .. }) => {
            let CartanResult::TypeA { q, cartan, .. } = &res else {
                unreachable!()
            };
            s.data("type", json!(res.tag()));
            s.data("q", scalar_json(q));
            s.data("cartan_matrix", json!(cartan));
        }
        Ok(CartanResult::NotCartan { witness }) => {
            s.fail("type A", json!([witness.0 + 1, witness.1 + 1]));
        }
        Err(e) => s.fail("type A", json!(e.to_string())),
    }
    s
}

fn vec_json(v: &CharVector) -> Value {
    json!({ "exponents": v.entries(), "order": v.order() })
}

fn group_section(ps: &ParamSet, opts: &RunOptions) -> Section {
    if ps.exponents().is_none() {
        return Section::not_applicable("group-like orders need root-of-unity parameters");
    }
    let mut s = Section::new();
    if let Err(e) = group_body(ps, opts, &mut s) {
        s.fail("group", json!(e.to_string()));
    }
    s
}

fn group_body(ps: &ParamSet, opts: &RunOptions, s: &mut Section) -> frt_core::Result<()> {
    let n = ps.n();
    let m = ps.exponents().expect("checked by caller").m;
    let k: Vec<CharVector> = (0..n)
        .map(|i| char_vec_k(ps, i))
        .collect::<frt_core::Result<_>>()?;
    let l: Vec<CharVector> = (0..n)
        .map(|i| char_vec_l(ps, i))
        .collect::<frt_core::Result<_>>()?;
    let kb: Vec<CharVector> = (0..n - 1)
        .map(|i| char_vec_kbar(ps, i))
        .collect::<frt_core::Result<_>>()?;
    let sigma = char_vec_sigma(ps)?;
    s.data("k", json!(k.iter().map(vec_json).collect::<Vec<_>>()));
    s.data("l", json!(l.iter().map(vec_json).collect::<Vec<_>>()));
    s.data("kbar", json!(kb.iter().map(vec_json).collect::<Vec<_>>()));
    s.data("sigma", vec_json(&sigma));
    s.data("sigma_trivial", json!(sigma.is_zero()));
    s.data(
        "k_invariant_factors",
        json!(subgroup_invariants(&k, m, n).factors),
    );
    s.data(
        "kbar_invariant_factors",
        json!(subgroup_invariants(&kb, m, n).factors),
    );
    s.data(
        "det_values",
        json!(ps.det_values().iter().map(scalar_json).collect::<Vec<_>>()),
    );
    s.data("det_central", json!(ps.det_is_central()));

    let part1 = k_orders_vs_lcm(ps)?;
    s.data("k_orders_direct_vs_lcm", json!(part1));
    if part1.iter().any(|(d, f)| d != f) {
        s.fail("order of K_i equals lcm of parameter orders", json!(part1));
    }
    match kbar_orders_coprime(ps)? {
        KbarOrderReport::NotApplicable => {}
        KbarOrderReport::Applicable {
            orders,
            formula_distinct,
            direct_distinct,
        } => {
            if orders.iter().any(|(d, f)| d != f) {
                s.notes
                    .push("coprime-order formula for Kbar_i disagrees with direct orders".into());
            }
            s.data(
                "kbar_orders_direct_vs_formula",
                json!({ "orders": orders, "formula_distinct": formula_distinct, "direct_distinct": direct_distinct }),
            );
        }
    }
    match central_decomposition(ps)? {
        CentralReport::NotApplicable => {}
        CentralReport::Applicable {
            k_orders,
            equal_orders,
            decomposition,
        } => {
            if !equal_orders {
                s.fail(
                    "central determinant gives equal orders of the K_i",
                    json!(k_orders),
                );
            }
            if let Some(d) = decomposition {
                s.data(
                    "direct_product",
                    json!({ "group": d.group.factors, "sigma_order": d.sigma_order, "slg": d.slg.factors, "holds": d.holds }),
                );
                if !d.holds {
                    s.fail("<K> = <sigma> x <Kbar>", Value::Null);
                }
            }
        }
    }
    let sc = sigma_centrality_check(ps, opts.max_degree)?;
    s.data("sigma_central", json!(sc.commutes));
    if let Some((g, w)) = &sc.witness {
        s.data(
            "sigma_witness",
            json!({ "generator": g, "word": word_json(w) }),
        );
    }
    if sc.det_central && !sc.commutes {
        s.fail(
            "central determinant makes sigma central",
            json!(sc.witness.map(|x| x.0)),
        );
    }

    let size = (m as u128).pow(n as u32);
    if size <= CLOSURE_LIMIT as u128 {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut samples = Vec::new();
        for _ in 0..4 {
            let count = rng.gen_range(1..=n);
            let gens: Vec<CharVector> = (0..count)
                .map(|_| {
                    (0..n).fold(CharVector::zero(m, n), |acc, i| {
                        acc.add(&k[i].scale(rng.gen_range(0..m as i64)))
                    })
                })
                .collect();
            let snf = subgroup_invariants(&gens, m, n).order();
            let brute = closure(&gens, m, n).len() as u64;
            if snf != brute {
                s.fail(
                    "invariant factors match subgroup closure",
                    json!(gens
                        .iter()
                        .map(|g| g.entries().to_vec())
                        .collect::<Vec<_>>()),
                );
            }
            samples.push(json!([snf, brute]));
        }
        s.data("seeded_closure_samples", json!(samples));
    } else {
        s.notes
            .push("seeded closure samples skipped: group too large".into());
    }
    Ok(())
}

fn table_json(t: &PairingTable) -> Value {
    let m = |v: &Vec<Vec<Scalar>>| {
        let cols = v.first().map_or(0, Vec::len);
        scalar_matrix_json(v.len(), cols, |i, j| v[i][j].clone())
    };
    json!({ "lk": m(&t.lk), "sfe": m(&t.sfe), "ef": m(&t.ef), "fjs": m(&t.fjs) })
}

fn symbol_name(s: &DoubleSymbol) -> String {
    match s {
        DoubleSymbol::FE { f, e } => format!("f_{} >< e_{}", f + 1, e + 1),
        DoubleSymbol::LK { l, k } => format!("L_{} >< K_{}", l + 1, k + 1),
    }
}

fn pairing_section(ps: &ParamSet, opts: &RunOptions) -> Section {
    let mut s = Section::new();
    if let Err(e) = pairing_body(ps, opts, &mut s) {
        s.fail("pairing", json!(e.to_string()));
    }
    s
}

fn pairing_body(ps: &ParamSet, opts: &RunOptions, s: &mut Section) -> frt_core::Result<()> {
    let d = opts.max_degree;
    let n = ps.n();
    let ev = Evaluator::new(ps);
    let table = pairing_table(ps)?;
    if table != closed_form_table(ps)? {
        s.fail("pairing table closed forms", Value::Null);
    }
    s.data("dcross", table_json(&table));

    let mut ids = lt_identities(ps)?;
    ids.extend(rt_identities(ps, Form::Corrected)?);
    for id in &ids {
        s.identity(&id.name, &verify_identity(&ev, &id.lhs, &id.rhs, d));
    }
    let stated_rt = rt_identities(ps, Form::Stated)?
        .iter()
        .filter(|id| !verify_identity(&ev, &id.lhs, &id.rhs, d).holds)
        .count();
    if stated_rt > 0 {
        s.notes.push(format!(
            "rho+(T_i^(i+1)) equals -r^-2 (r-1) S^-1 F; the unsigned form fails for {stated_rt} generators"
        ));
    }

    for o in verify_efd(ps, Form::Corrected)? {
        if !o.holds {
            let show = |v: &BTreeMap<DoubleSymbol, Scalar>| -> BTreeMap<String, Value> {
                v.iter()
                    .map(|(k, c)| (symbol_name(k), scalar_json(c)))
                    .collect()
            };
            s.fail(
                format!("e_{} f_{} double relation", o.i + 1, o.j + 1),
                json!({ "lhs": show(&o.lhs), "rhs": show(&o.rhs) }),
            );
        }
    }
    let literal_ok = verify_efd(ps, Form::Stated)?.iter().all(|o| o.holds);
    s.data("efd_literal_coefficient_holds", json!(literal_ok));
    if !efd_eft_scalar_reconciles(ps)? {
        s.fail(
            "normalization factor reconciles the two EF relations",
            Value::Null,
        );
    }
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            let id = efd_image_identity(ps, i, j)?;
            s.identity(&id.name, &verify_identity(&ev, &id.lhs, &id.rhs, d));
        }
    }

    let cross = verify_cross_exchange(ps, d.max(2))?;
    for (name, out) in &cross.failures {
        s.identity(name, out);
    }
    s.data(
        "stated_cross_exchange_failures",
        json!(cross.stated_failures.len()),
    );

    let bp = BraidPairing::new(ps);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut word = |len: usize| {
        TWord::new(
            (0..len)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
                .collect(),
        )
    };
    let mut samples = 0;
    for _ in 0..PAIRING_SAMPLES {
        let (a, b, x) = (word(1), word(1), word(2));
        // <ab|x> = sum <a|x_2><b|x_1>
        let lhs = bp.pair(&a.concat(&b), &x);
        let rhs = coproduct(&x, n, ps.field())
            .terms()
            .fold(Scalar::zero(ps.field()), |acc, ((x1, x2), c)| {
                acc + c * &(bp.pair(&a, x2) * bp.pair(&b, x1))
            });
        if lhs != rhs {
            s.fail(
                "pairing is multiplicative in the left argument",
                json!({ "a": word_json(&a), "b": word_json(&b), "x": word_json(&x) }),
            );
        }
        samples += 1;
    }
    s.data("seeded_pairing_samples", json!(samples));
    Ok(())
}
