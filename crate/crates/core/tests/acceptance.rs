//! Acceptance suite: one line per criterion, nonzero exit status if any fails.

mod common;

use std::sync::Arc;
use std::time::Instant;

use macdonald_hecke::coeffs::{Monomial, ParamScalar};
use macdonald_hecke::macdonald::MacdonaldEngine;
use macdonald_hecke::rootdata::Weight;
use macdonald_hecke::satake::{SatakeData, SatakeEngine, Tau, UnramifiedCharacter};
use macdonald_hecke::verify::{self, CheckOutcome};
use macdonald_hecke::Rat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MAX_LEN: usize = 10;

struct Datum {
    label: String,
    mac: Arc<MacdonaldEngine>,
    split: SatakeEngine,
    grid: Vec<Weight>,
}

fn data() -> Vec<Datum> {
    common::desk_data()
        .into_iter()
        .map(|(t, n, l)| {
            let mac = common::engine(t, n, l);
            let split = SatakeEngine::new(mac.clone(), &SatakeData::split(n, Tau::Numeric(3))).unwrap();
            let grid = mac.weyl().weights_up_to_length(MAX_LEN);
            Datum { label: format!("{t}{n} {l}"), mac, split, grid }
        })
        .collect()
}

/// Folds check outcomes of every datum into one verdict.
fn combine(results: Vec<(String, CheckOutcome)>) -> (bool, String) {
    match results.iter().find(|(_, c)| !c.passed) {
        Some((label, c)) => (false, format!("{label}: {} {}", c.name, c.detail)),
        None => (true, format!("{} checks over {} data", results.len(), results.iter().map(|(l, _)| l).collect::<std::collections::BTreeSet<_>>().len())),
    }
}

fn criterion_1(data: &[Datum], rng: &mut ChaCha8Rng) -> (bool, String) {
    let mut results = Vec::new();
    let mut min_instances = usize::MAX;
    for d in data {
        let ctx = d.mac.context();
        let support = d.mac.weyl().lattice().box_points(3);
        let elems: Vec<_> = (0..70).map(|_| common::random_element(rng, ctx.namespace(), &support)).collect();
        let lambdas: Vec<Weight> = (0..70).map(|_| support[rng.gen_range(0..support.len())].clone()).collect();
        let checks = verify::hecke_relations(ctx, &elems, &lambdas);
        let count: usize = checks.iter().filter_map(|c| c.detail.split(' ').next()?.parse::<usize>().ok()).sum();
        min_instances = min_instances.min(count);
        results.extend(checks.into_iter().map(|c| (d.label.clone(), c)));
    }
    let (ok, detail) = combine(results);
    (ok && min_instances >= 200, format!("{detail}, at least {min_instances} instances per datum"))
}

fn criterion_2(data: &[Datum]) -> (bool, String) {
    combine(
        data.iter()
            .flat_map(|d| [(d.label.clone(), verify::recursion_base(&d.mac)), (d.label.clone(), verify::recursion_step(&d.split, &d.grid))])
            .collect(),
    )
}

fn criterion_3(data: &[Datum]) -> (bool, String) {
    let total: usize = data.iter().map(|d| d.grid.len()).sum();
    let (ok, detail) = combine(data.iter().map(|d| (d.label.clone(), verify::monicity(&d.mac, &d.grid))).collect());
    (ok, format!("{detail}, {total} weights"))
}

fn criterion_4(data: &[Datum]) -> (bool, String) {
    let nonreduced: Vec<&Datum> = data.iter().filter(|d| !d.mac.weyl().root_system().is_reduced()).collect();
    let (ok, detail) = combine(nonreduced.iter().map(|d| (d.label.clone(), verify::t02_free(&d.mac, &d.grid))).collect());
    (ok && !nonreduced.is_empty(), detail)
}

fn criterion_5(data: &[Datum]) -> (bool, String) {
    combine(
        data.iter()
            .flat_map(|d| [(d.label.clone(), verify::t_one_collapse(&d.mac, &d.grid)), (d.label.clone(), verify::demazure(&d.mac, &d.grid))])
            .collect(),
    )
}

fn criterion_6(data: &[Datum]) -> (bool, String) {
    let formal = Tau::Formal(macdonald_hecke::satake::FormalTag::Formal);
    let presets: Vec<(&str, SatakeData)> = vec![
        ("A1 Q", SatakeData { tau: formal, d: vec![3, 1], d2: vec![0, 0] }),
        ("BC1 Q", SatakeData { tau: formal, d: vec![2, 3], d2: vec![1, 1] }),
        ("BC2 Q", SatakeData { tau: formal, d: vec![3, 1, 2], d2: vec![2, 0, 1] }),
        ("B2 Q", SatakeData { tau: formal, d: vec![2, 1, 3], d2: vec![0, 0, 0] }),
        ("C2 Q", SatakeData { tau: formal, d: vec![2, 3, 1], d2: vec![0, 0, 0] }),
    ];
    let mut results: Vec<(String, CheckOutcome)> = data.iter().map(|d| (d.label.clone(), verify::cross_path(&d.split, &d.grid, "split"))).collect();
    for (label, preset) in presets {
        let d = data.iter().find(|d| d.label == label).unwrap();
        let sat = SatakeEngine::new(d.mac.clone(), &preset).unwrap();
        results.push((label.to_string(), verify::cross_path(&sat, &d.grid, "nonsplit")));
    }
    combine(results)
}

fn criterion_7(data: &[Datum]) -> (bool, String) {
    combine(data.iter().map(|d| (d.label.clone(), verify::minuscule_basis(&d.split))).collect())
}

fn criterion_8(data: &[Datum], rng: &mut ChaCha8Rng) -> (bool, String) {
    let poly = |c: &[i64]| {
        c.iter().enumerate().fold(ParamScalar::zero(1), |acc, (k, &v)| &acc + &ParamScalar::term(Monomial(vec![2 * k as i32].into()), Rat::from_integer(v.into())))
    };
    let find = |l: &str| data.iter().find(|d| d.label == l).unwrap();
    let a1 = find("A1 P").split.vol(&Weight(vec![0])).unwrap() == poly(&[1, 1]);
    let a2 = find("A2 P").split.vol(&Weight(vec![0, 0])).unwrap() == poly(&[1, 2, 2, 1]);
    if !(a1 && a2) {
        return (false, "Poincaré anchor mismatch".into());
    }
    let mut results = Vec::new();
    let mut pairs_total = 0;
    for d in data {
        let weyl = d.mac.weyl();
        let anti: Vec<Weight> = weyl.lattice().box_points(4).into_iter().filter(|w| w.iter().all(|&c| c <= 0)).collect();
        let pairs: Vec<(Weight, Weight)> =
            (0..500).map(|_| (anti[rng.gen_range(0..anti.len())].clone(), anti[rng.gen_range(0..anti.len())].clone())).collect();
        pairs_total += pairs.len();
        results.push((d.label.clone(), verify::volumes(&d.split, &d.grid)));
        results.push((d.label.clone(), verify::conjugation_invariance(&d.split, 3)));
        results.push((d.label.clone(), verify::length_additivity(weyl, &pairs)));
    }
    let (ok, detail) = combine(results);
    (ok, format!("{detail}, {pairs_total} antidominant pairs"))
}

fn criterion_9(data: &[Datum]) -> (bool, String) {
    let start = Instant::now();
    let (ok, detail) = combine(data.iter().map(|d| (d.label.clone(), verify::length_oracle(d.mac.weyl(), 6))).collect());
    let secs = start.elapsed().as_secs_f64();
    (ok && secs < 30.0, format!("{detail} in {secs:.2}s"))
}

fn criterion_10(data: &[Datum], rng: &mut ChaCha8Rng) -> (bool, String) {
    let mut results = Vec::new();
    let mut samples_total = 0;
    for d in data {
        let rank = d.mac.weyl().rank();
        let samples: Vec<(Weight, UnramifiedCharacter)> = (0..10)
            .map(|_| {
                let l = d.grid[rng.gen_range(0..d.grid.len().min(40))].clone();
                let vals: Vec<String> = (0..rank)
                    .map(|_| {
                        let (a, b, c) = (rng.gen_range(1..9), rng.gen_range(1..5), rng.gen_range(-4..5));
                        format!("{a}/{b}:{c}/{b}")
                    })
                    .collect();
                (l, UnramifiedCharacter::parse(&vals).unwrap())
            })
            .collect();
        samples_total += samples.len();
        results.push((d.label.clone(), verify::matrix_coefficients(&d.split, &samples)));
    }
    let (ok, detail) = combine(results);
    (ok && samples_total >= 100, format!("{detail}, {samples_total} (λ, χ) pairs"))
}

fn main() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let data = data();
    let results: Vec<(u32, &str, (bool, String))> = vec![
        (1, "Hecke relations", criterion_1(&data, &mut rng)),
        (2, "recursion base and step", criterion_2(&data)),
        (3, "monicity", criterion_3(&data)),
        (4, "t02-freeness", criterion_4(&data)),
        (5, "t = 1 and t = ∞ oracles", criterion_5(&data)),
        (6, "Satake basis cross path", criterion_6(&data)),
        (7, "minuscule Satake basis", criterion_7(&data)),
        (8, "volume and δ_P anchors", criterion_8(&data, &mut rng)),
        (9, "length oracle", criterion_9(&data)),
        (10, "matrix coefficients", criterion_10(&data, &mut rng)),
    ];
    let mut failed = 0;
    for (k, name, (ok, detail)) in &results {
        println!("criterion {k:>2} {} {name}: {detail}", if *ok { "PASS" } else { "FAIL" });
        if !ok {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed in {:.1}s", results.len() - failed, results.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
