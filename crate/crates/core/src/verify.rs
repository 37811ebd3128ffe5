//! Named consistency checks shared by the `verify` subcommand, the acceptance tests and the
//! examples. Every check reports pass or fail with a short detail line; errors raised while
//! checking count as failures.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::coeffs::{GroupAlgebraElement, Namespace};
use crate::hecke::HeckeContext;
use crate::macdonald::{at_t_one, demazure_limit, is_monic, limit_t_infinity, mentions_param, MacdonaldEngine};
use crate::rootdata::Weight;
use crate::satake::{inverse_poincare_at, relative_error, CoeffValue, SatakeData, SatakeEngine, UnramifiedCharacter};
use crate::weyl::WeylGroup;
use crate::{Rat, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn run(name: &str, f: impl FnOnce() -> Result<std::result::Result<String, String>>) -> Self {
        let (passed, detail) = match f() {
            Ok(Ok(d)) => (true, d),
            Ok(Err(d)) => (false, d),
            Err(e) => (false, format!("error: {e}")),
        };
        CheckOutcome { name: name.to_string(), passed, detail }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub datum: String,
    pub checks: Vec<CheckOutcome>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = CheckOutcome>) {
        self.checks.extend(checks);
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Single exponentials `e^λ` for every lattice point of the box.
pub fn box_elements(ctx: &HeckeContext, radius: i64) -> Vec<GroupAlgebraElement> {
    ctx.weyl().lattice().box_points(radius).into_iter().map(|w| GroupAlgebraElement::exp(ctx.namespace(), w)).collect()
}

fn first_nonzero<C: Sync>(
    cases: &[C],
    defect: impl Fn(&C) -> Result<Option<GroupAlgebraElement>> + Sync,
    what: impl Fn(&C) -> String,
) -> Result<std::result::Result<usize, String>> {
    let defects = cases.par_iter().map(&defect).collect::<Result<Vec<_>>>()?;
    let mut count = 0;
    for (c, d) in cases.iter().zip(defects) {
        if let Some(d) = d {
            if !d.is_zero() {
                return Ok(Err(format!("{}: defect {}", what(c), d)));
            }
            count += 1;
        }
    }
    Ok(Ok(count))
}

/// Quadratic, braid and Bernstein–Lusztig relations on the given test elements.
pub fn hecke_relations(ctx: &HeckeContext, elems: &[GroupAlgebraElement], lambdas: &[Weight]) -> Vec<CheckOutcome> {
    let n = ctx.rank();
    let quadratic = CheckOutcome::run("hecke.quadratic", || {
        let cases: Vec<(usize, &GroupAlgebraElement)> = (0..=n).flat_map(|i| elems.iter().map(move |f| (i, f))).collect();
        let r = first_nonzero(&cases, |(i, f)| ctx.quadratic_defect(*i, f).map(Some), |(i, f)| format!("T_{i} on {f}"))?;
        Ok(r.map(|c| format!("{c} instances")))
    });
    let braid = CheckOutcome::run("hecke.braid", || {
        let mut cases = Vec::new();
        for i in 0..=n {
            for j in i + 1..=n {
                for f in elems {
                    cases.push((i, j, f));
                }
            }
        }
        let r = first_nonzero(&cases, |(i, j, f)| ctx.braid_defect(*i, *j, f), |(i, j, f)| format!("T_{i}, T_{j} on {f}"))?;
        Ok(r.map(|c| format!("{c} instances")))
    });
    let bernstein = CheckOutcome::run("hecke.bernstein", || {
        let mut cases = Vec::new();
        for i in 1..=n {
            for (k, l) in lambdas.iter().enumerate() {
                cases.push((i, l, &elems[k % elems.len().max(1)]));
            }
        }
        let r = first_nonzero(
            &cases,
            |(i, l, f)| ctx.bernstein_defect(*i, l, f).map(Some),
            |(i, l, f)| format!("i = {i}, λ = {l}, f = {f}"),
        )?;
        let two = (1..=n).filter(|&i| ctx.is_two_parameter(i)).count();
        Ok(r.map(|c| format!("{c} instances, {two} two-parameter generators")))
    });
    vec![quadratic, braid, bernstein]
}

/// Number of `W`-orbits on affine roots, compared with an expected value when given.
pub fn orbit_count(mac: &MacdonaldEngine, expected: Option<usize>) -> CheckOutcome {
    CheckOutcome::run("rootdata.orbits", || {
        let got = mac.classes().orbits().len();
        Ok(match expected {
            Some(e) if e != got => Err(format!("{got} orbits, expected {e}")),
            _ => Ok(format!("{got} orbits, {} parameter classes", mac.namespace().len())),
        })
    })
}

/// For nonreduced types every lattice weight pairs evenly with `α_n^∨`.
pub fn lattice_parity(weyl: &WeylGroup, radius: i64) -> CheckOutcome {
    CheckOutcome::run("rootdata.parity", || {
        if weyl.root_system().is_reduced() {
            return Ok(Ok("reduced type, nothing to check".into()));
        }
        let n = weyl.rank();
        let pts = weyl.lattice().box_points(radius);
        Ok(match pts.iter().find(|w| w[n - 1] % 2 != 0) {
            Some(w) => Err(format!("⟨{w}, α_n^∨⟩ is odd")),
            None => Ok(format!("{} weights", pts.len())),
        })
    })
}

pub fn recursion_base(mac: &MacdonaldEngine) -> CheckOutcome {
    CheckOutcome::run("macdonald.base", || {
        let n = mac.weyl().rank();
        let zero = Weight::zero(n);
        if mac.e(&zero)? != GroupAlgebraElement::exp(mac.namespace(), zero) {
            return Ok(Err("E_0 ≠ 1".into()));
        }
        for nu in mac.weyl().minuscule_set() {
            if mac.e(nu)? != GroupAlgebraElement::exp(mac.namespace(), nu.clone()) {
                return Ok(Err(format!("E_{nu} ≠ e^{nu}")));
            }
        }
        Ok(Ok(format!("{} minuscule weights", mac.weyl().minuscule_set().len())))
    })
}

fn over_grid(grid: &[Weight], mut f: impl FnMut(&Weight) -> Result<Option<String>>) -> Result<std::result::Result<String, String>> {
    for l in grid {
        if let Some(msg) = f(l)? {
            return Ok(Err(format!("λ = {l}: {msg}")));
        }
    }
    Ok(Ok(format!("{} weights", grid.len())))
}

pub fn monicity(mac: &MacdonaldEngine, grid: &[Weight]) -> CheckOutcome {
    CheckOutcome::run("macdonald.monic", || {
        over_grid(grid, |l| {
            let e = mac.e(l)?;
            Ok((!is_monic(&e, l)).then(|| format!("leading coefficient {}", e.coeff(l).display(mac.namespace()))))
        })
    })
}

/// `E_λ` never involves `t_{02}`. For reduced types `t_{02}` is an alias of `t_0`, so the check
/// is only meaningful in the nonreduced case.
pub fn t02_free(mac: &MacdonaldEngine, grid: &[Weight]) -> CheckOutcome {
    CheckOutcome::run("macdonald.t02_free", || {
        if mac.weyl().root_system().is_reduced() {
            return Ok(Ok("reduced type: t02 is an alias of t0".into()));
        }
        over_grid(grid, |l| Ok(mentions_param(&mac.e(l)?, "t02").then(|| "t02 occurs".to_string())))
    })
}

pub fn t_one_collapse(mac: &MacdonaldEngine, grid: &[Weight]) -> CheckOutcome {
    CheckOutcome::run("macdonald.t_one", || {
        over_grid(grid, |l| {
            let got = at_t_one(&mac.e(l)?);
            Ok((got != GroupAlgebraElement::exp(&Namespace::empty(), l.clone())).then(|| format!("got {got}")))
        })
    })
}

pub fn demazure(mac: &MacdonaldEngine, grid: &[Weight]) -> CheckOutcome {
    CheckOutcome::run("macdonald.demazure", || {
        over_grid(grid, |l| {
            let lim = limit_t_infinity(&mac.e(l)?, l)?;
            let d = demazure_limit(mac.weyl(), l)?;
            Ok((lim != d).then(|| format!("limit {lim} but Demazure character {d}")))
        })
    })
}

/// Every weight in the support of `E_λ` is `w·λ̃` for some `w` below `w_λ` in Bruhat order.
pub fn orbit_support(mac: &MacdonaldEngine, grid: &[Weight]) -> CheckOutcome {
    CheckOutcome::run("macdonald.support", || {
        let weyl = mac.weyl();
        if weyl.rank() > 2 {
            return Ok(Ok("skipped above rank 2".into()));
        }
        over_grid(grid, |l| {
            let data = weyl.orbit_data(l)?;
            let reachable: std::collections::HashSet<Weight> =
                weyl.subword_products(&data.word).iter().map(|w| w.act(&data.minuscule)).collect();
            Ok(mac.e(l)?.support().find(|mu| !reachable.contains(*mu)).map(|mu| format!("{mu} outside the Bruhat interval")))
        })
    })
}

/// `T_i 𝓔_λ = 𝓔_{r_i λ}` whenever `ℓ(w_{r_i λ}) > ℓ(w_λ)`.
pub fn recursion_step(sat: &SatakeEngine, grid: &[Weight]) -> CheckOutcome {
    CheckOutcome::run("satake.step", || {
        let weyl = sat.weyl();
        let mut count = 0;
        for l in grid {
            let len = weyl.length(&weyl.orbit_data(l)?.w);
            for i in 0..=weyl.rank() {
                let m = weyl.r(i).act(l);
                if weyl.length(&weyl.orbit_data(&m)?.w) <= len {
                    continue;
                }
                count += 1;
                let lhs = sat.context().apply_generator(i, &*sat.satake_e(l)?)?;
                if lhs != *sat.satake_e(&m)? {
                    return Ok(Err(format!("T_{i} 𝓔_{l} ≠ 𝓔_{m}")));
                }
            }
        }
        Ok(Ok(format!("{count} steps")))
    })
}

/// `𝓔_λ = j_λ(𝔱) E_λ(𝔱)`.
pub fn cross_path(sat: &SatakeEngine, grid: &[Weight], label: &str) -> CheckOutcome {
    CheckOutcome::run(&format!("satake.cross_path[{label}]"), || {
        over_grid(grid, |l| {
            let r = sat.cross_path_residual(l)?;
            Ok((!r.is_zero()).then(|| format!("residual {r}")))
        })
    })
}

/// `𝓔_ν = δ_P^{-1/2}(t_ν) 𝔢^ν` for minuscule `ν`, through the operator path.
pub fn minuscule_basis(sat: &SatakeEngine) -> CheckOutcome {
    CheckOutcome::run("satake.minuscule", || {
        for nu in sat.weyl().minuscule_set() {
            let e = sat.satake_e(nu)?;
            let expect = GroupAlgebraElement::monomial(sat.namespace(), nu.clone(), sat.delta_p_inv_sqrt(nu)?);
            if *e != expect {
                return Ok(Err(format!("𝓔_{nu} = {e}")));
            }
        }
        Ok(Ok(format!("{} minuscule weights", sat.weyl().minuscule_set().len())))
    })
}

/// `vol(K) = P_W̊(𝔱)`, `vol(K)|_{𝔱=1} = |W̊|`, and the coset formula for every grid weight.
pub fn volumes(sat: &SatakeEngine, grid: &[Weight]) -> CheckOutcome {
    CheckOutcome::run("satake.volume", || {
        let zero = Weight::zero(sat.weyl().rank());
        let v0 = sat.vol(&zero)?;
        if v0 != sat.poincare() {
            return Ok(Err(format!("vol(K) = {}", v0.display(sat.namespace()))));
        }
        let order = sat.weyl().finite_elements().len();
        if v0.eval_one() != Rat::from_integer(order.into()) {
            return Ok(Err(format!("vol(K) at 1 is {} but |W̊| = {order}", v0.eval_one())));
        }
        over_grid(grid, |l| {
            let (a, b) = (sat.vol(l)?, sat.vol_by_coset(l)?);
            Ok((a != b).then(|| format!("sum {} vs coset {}", a.display(sat.namespace()), b.display(sat.namespace()))))
        })
        .map(|r| r.map(|d| format!("P = {}, {d}", v0.display(sat.namespace()))))
    })
}

/// `𝔱(ẘ t_λ ẘ^{-1}) = 𝔱(t_{ẘλ}) = δ_P(t_λ)` for dominant `λ` in a box and every `ẘ ∈ W̊`.
pub fn conjugation_invariance(sat: &SatakeEngine, radius: i64) -> CheckOutcome {
    CheckOutcome::run("satake.conjugation", || {
        let weyl = sat.weyl();
        let finite = weyl.finite_elements();
        let mut count = 0;
        for l in weyl.lattice().box_points(radius).iter().filter(|w| w.iter().all(|&c| c >= 0)) {
            let d = sat.delta_p(l)?;
            let t = weyl.translation(l)?;
            for u in &finite {
                count += 1;
                let conj = u.mul(&t).mul(&u.inverse());
                let moved = weyl.translation(&u.act(l))?;
                if sat.tau_of(&conj) != d || sat.tau_of(&moved) != d {
                    return Ok(Err(format!("λ = {l}: 𝔱 differs after conjugation")));
                }
            }
        }
        Ok(Ok(format!("{count} pairs")))
    })
}

/// `ℓ(t_{λ+μ}) = ℓ(t_λ) + ℓ(t_μ)` for antidominant `λ`, `μ`.
pub fn length_additivity(weyl: &WeylGroup, pairs: &[(Weight, Weight)]) -> CheckOutcome {
    CheckOutcome::run("weyl.length_additivity", || {
        for (a, b) in pairs {
            let l = |w: &Weight| -> Result<usize> { Ok(weyl.length(&weyl.translation(w)?)) };
            if l(&a.add(b))? != l(a)? + l(b)? {
                return Ok(Err(format!("λ = {a}, μ = {b}")));
            }
        }
        Ok(Ok(format!("{} pairs", pairs.len())))
    })
}

/// The hyperplane-count length against breadth-first word length on a ball.
pub fn length_oracle(weyl: &WeylGroup, radius: usize) -> CheckOutcome {
    CheckOutcome::run("weyl.length_bfs", || {
        let ball = weyl.word_ball(radius);
        for (w, &d) in &ball {
            let l = weyl.length(w);
            if l != d {
                return Ok(Err(format!("element with translation {} has length {l} but distance {d}", w.translation())));
            }
        }
        Ok(Ok(format!("{} elements", ball.len())))
    })
}

/// `E_χ(1) = 1/vol(K)`, exact against float evaluation, and the fresh-engine dual path.
pub fn matrix_coefficients(sat: &SatakeEngine, samples: &[(Weight, UnramifiedCharacter)]) -> CheckOutcome {
    CheckOutcome::run("satake.matrix_coefficient", || {
        let zero = Weight::zero(sat.weyl().rank());
        let mut worst = 0.0f64;
        for (k, (l, chi)) in samples.iter().enumerate() {
            let exact = sat.matrix_coefficient(l, chi)?;
            if k == 0 {
                let at_one = sat.matrix_coefficient(&zero, chi)?;
                if at_one != CoeffValue::Exact(inverse_poincare_at(sat)?) {
                    return Ok(Err(format!("E_χ(1) = {at_one}")));
                }
            }
            let float = sat.matrix_coefficient(l, &chi.to_float())?;
            let err = relative_error(exact.to_f64(), float.to_f64());
            worst = worst.max(err);
            if err > 1e-12 {
                return Ok(Err(format!("λ = {l}: exact {exact} vs float {float}")));
            }
            let fresh = sat.matrix_coefficient_fresh(l, chi)?;
            if fresh != exact {
                return Ok(Err(format!("λ = {l}: dual path {fresh} vs {exact}")));
            }
        }
        Ok(Ok(format!("{} samples, max relative error {worst:.1e}", samples.len())))
    })
}

/// Options for [`run_suite`].
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub max_len: usize,
    pub box_radius: i64,
    pub length_radius: usize,
    pub conjugation_radius: i64,
    pub satake: Vec<(String, SatakeData)>,
    pub corrupt_t0: Option<Rat>,
}

impl SuiteOptions {
    pub fn new(rank: usize) -> Self {
        SuiteOptions {
            max_len: 6,
            box_radius: if rank <= 2 { 3 } else { 1 },
            length_radius: if rank <= 2 { 6 } else { 3 },
            conjugation_radius: if rank <= 3 { 3 } else { 1 },
            satake: vec![("split".into(), SatakeData::split(rank, crate::satake::Tau::Numeric(3)))],
            corrupt_t0: None,
        }
    }
}

fn deterministic_characters(weyl: &WeylGroup, count: usize) -> Vec<UnramifiedCharacter> {
    (0..count)
        .map(|k| {
            let vals = (0..weyl.rank()).map(|j| format!("{}/{}:{}/{}", k + j + 2, j + 1, (k as i64 % 3) - 1, k + 2)).collect::<Vec<_>>();
            UnramifiedCharacter::parse(&vals).expect("well-formed character")
        })
        .collect()
}

fn antidominant_pairs(weyl: &WeylGroup, radius: i64) -> Vec<(Weight, Weight)> {
    let anti: Vec<Weight> = weyl.lattice().box_points(radius).into_iter().filter(|w| w.iter().all(|&c| c <= 0)).collect();
    anti.iter().flat_map(|a| anti.iter().map(move |b| (a.clone(), b.clone()))).collect()
}

/// Runs every check for one root datum.
pub fn run_suite(mac: Arc<MacdonaldEngine>, opts: &SuiteOptions) -> Result<Report> {
    let weyl = mac.weyl().clone();
    let rs = weyl.root_system();
    let mut report = Report { datum: format!("{}{} {}", rs.kind(), rs.rank(), weyl.lattice().spec()), checks: Vec::new() };
    let grid = weyl.weights_up_to_length(opts.max_len);

    let mut ctx = (**mac.context()).clone();
    if let Some(f) = &opts.corrupt_t0 {
        ctx = ctx.with_corrupted_t0(f.clone());
    }
    let elems = box_elements(&ctx, opts.box_radius);
    let lambdas: Vec<Weight> = weyl.lattice().box_points(opts.box_radius.min(2));
    report.extend(hecke_relations(&ctx, &elems, &lambdas));

    let expected = (!rs.is_reduced() && rs.rank() == 1).then_some(4);
    report.extend([orbit_count(&mac, expected), lattice_parity(&weyl, opts.box_radius)]);
    report.extend([
        recursion_base(&mac),
        monicity(&mac, &grid),
        t02_free(&mac, &grid),
        t_one_collapse(&mac, &grid),
        demazure(&mac, &grid),
        orbit_support(&mac, &grid),
    ]);
    report.extend([length_oracle(&weyl, opts.length_radius), length_additivity(&weyl, &antidominant_pairs(&weyl, 2))]);

    for (label, data) in &opts.satake {
        let sat = SatakeEngine::new(mac.clone(), data)?;
        report.extend([cross_path(&sat, &grid, label)]);
        if label == "split" {
            report.extend([recursion_step(&sat, &grid), minuscule_basis(&sat), volumes(&sat, &grid), conjugation_invariance(&sat, opts.conjugation_radius)]);
            if data.tau.numeric().is_some() {
                let chars = deterministic_characters(&weyl, 4);
                let samples: Vec<(Weight, UnramifiedCharacter)> =
                    grid.iter().take(8).zip(chars.iter().cycle()).map(|(l, c)| (l.clone(), c.clone())).collect();
                report.extend([matrix_coefficients(&sat, &samples)]);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::rootdata::{CartanType, Lattice, LatticeSpec, RootSystem};

    fn mac(t: CartanType, n: usize, lat: &str) -> Arc<MacdonaldEngine> {
        let rs = Arc::new(RootSystem::build(t, n).unwrap());
        let l = Arc::new(Lattice::new(&rs, lat.parse::<LatticeSpec>().unwrap()).unwrap());
        Arc::new(MacdonaldEngine::new(Arc::new(WeylGroup::new(rs, l).unwrap())).unwrap())
    }

    #[test]
    fn suite_a1_passes() {
        let mut opts = SuiteOptions::new(1);
        opts.max_len = 4;
        let r = run_suite(mac(CartanType::A, 1, "P"), &opts).unwrap();
        assert!(r.passed(), "{r:#?}");
    }

    #[test]
    fn corrupted_t0_fails_quadratic() {
        let mut opts = SuiteOptions::new(1);
        opts.max_len = 2;
        opts.corrupt_t0 = Some(rat(2));
        let r = run_suite(mac(CartanType::A, 1, "Q"), &opts).unwrap();
        assert!(!r.get("hecke.quadratic").unwrap().passed);
    }
}
