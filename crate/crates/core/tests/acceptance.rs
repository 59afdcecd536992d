//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Tolerances are fixed here, not inherited from the library.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use contextuality::assignments::{enumerate_exclusive_assignments, ks_colorability, Assignment, Colorability};
use contextuality::catalog::{self, CABELLO18, KCBS};
use contextuality::distributions::{
    construct_jqd, context_marginals, marginalize, negativity, verify_observable_completeness,
    verify_observable_exclusivity, AnyDistribution, DistributionDocument, EventProbabilities,
    QuasiDistribution,
};
use contextuality::inequality::{classical_bound, evaluate_inequality};
use contextuality::io::ScenarioFile;
use contextuality::optimize::{
    jpd_feasible, min_negativity_jqd, support_for, LpDocument, LpStatus, MarginalConstraintSet,
    SupportClass,
};
use contextuality::quantum::{born_probabilities, derive_scenario, projector_from_vector, QuantumState};
use contextuality::scenario::Scenario;
use contextuality::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn sqrt5() -> f64 {
    5f64.sqrt()
}

fn kcbs() -> Arc<Scenario> {
    Arc::new(catalog::kcbs_scenario())
}

fn ac1_kcbs_classical_bound() -> Outcome {
    let start = Instant::now();
    let s = kcbs();
    let ones = vec![BigRational::one(); 5];
    let bound = classical_bound(&s, &ones).map_err(|e| e.to_string())?;
    let listed = enumerate_exclusive_assignments(&s).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let brute = brute_exclusive(&s);
    ensure!(bound == q(2, 1), "bound {bound}, expected 2");
    ensure!(listed.len() == 11, "{} exclusive assignments, expected 11", listed.len());
    let listed_bits: Vec<Vec<bool>> = listed.iter().map(|a| a.bits().to_vec()).collect();
    ensure!(listed_bits == brute, "enumeration disagrees with brute force over 2^5");
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("bound 2, 11 assignments, {elapsed:?}"))
}

fn ac2_kcbs_quantum_violation() -> Outcome {
    let entry = catalog::lookup(KCBS).map_err(|e| e.to_string())?;
    let state = entry.state("symmetric").ok_or("no symmetric state")?;
    let projectors: Vec<_> = catalog::kcbs_vectors().iter().map(projector_from_vector).collect();
    let p = born_probabilities(state, &projectors).map_err(|e| e.to_string())?;
    for (i, pi) in p.values().iter().enumerate() {
        ensure!((pi - 1.0 / sqrt5()).abs() < TOL, "p{} = {pi}", i + 1);
    }
    let total: f64 = p.values().iter().sum();
    ensure!((total - sqrt5()).abs() < TOL, "sum {total}");
    ensure!((total - 2.2360679775).abs() < TOL, "sum {total} vs 2.2360679775");
    let r = evaluate_inequality(&entry.scenario, &[1.0; 5], &p).map_err(|e| e.to_string())?;
    ensure!(r.violated && r.classical_bound == 2.0, "no violation reported");
    Ok(format!("p_i = {:.12}, sum = {total:.12}", p.values()[0]))
}

fn ac3_six_point_jpd_fixture() -> Outcome {
    let jpd = catalog::kcbs_jpd_fixture();
    ensure!(jpd.support().len() == 6, "support size {}", jpd.support().len());
    ensure!(jpd.support().iter().all(|(_, w)| *w == q(1, 6)), "weights not all 1/6");
    for i in 0..5 {
        // independent marginal: sum weights of assignments with event i set
        let direct: BigRational = jpd
            .support()
            .iter()
            .filter(|(a, _)| a.get(i))
            .fold(BigRational::zero(), |acc, (_, w)| acc + w.clone());
        ensure!(direct == q(1, 3), "p{} = {direct}", i + 1);
        ensure!(jpd.event_probability(i) == q(1, 3), "library p{} differs", i + 1);
    }
    let checks = verify_observable_exclusivity(&jpd).map_err(|e| e.to_string())?;
    ensure!(checks.len() == 5, "{} contexts checked", checks.len());
    ensure!(checks.iter().all(|c| c.exclusive && c.multi_occurrence.is_zero()), "exclusivity fails");
    Ok("p_i = 1/3 exactly, 5/5 contexts exclusive".into())
}

fn ac4_signed_jqd_fixture() -> Outcome {
    let jqd = catalog::kcbs_jqd_fixture();
    let negative: Vec<f64> = jqd.support().iter().map(|(_, w)| *w).filter(|w| *w < 0.0).collect();
    ensure!(negative.len() == 1, "{} negative weights", negative.len());
    let expected = 1.0 - 5.0 / (2.0 * sqrt5());
    ensure!((negative[0] - expected).abs() < TOL, "negative weight {}", negative[0]);
    ensure!((negative[0] + 0.118).abs() < 1e-3, "negative weight {} not ≈ -0.118", negative[0]);
    let neg = negativity(&jqd);
    ensure!((neg - (5.0 / (2.0 * sqrt5()) - 1.0)).abs() < TOL, "negativity {neg}");
    for i in 0..5 {
        let pi = jqd.event_probability(i);
        ensure!((pi - 1.0 / sqrt5()).abs() < TOL, "p{} = {pi}", i + 1);
    }
    let checks = verify_observable_exclusivity(&jqd).map_err(|e| e.to_string())?;
    ensure!(checks.iter().all(|c| c.exclusive), "exclusivity fails");
    Ok(format!("negative weight {:.12}, negativity {neg:.12}", negative[0]))
}

fn ac5_specker_triangle() -> Outcome {
    let jqd = catalog::specker_jqd_fixture();
    let s = jqd.scenario_arc().clone();
    for (ctx, table) in s.contexts().iter().zip(context_marginals(&jqd).map_err(|e| e.to_string())?) {
        for (outcome, expected) in [("00", q(0, 1)), ("01", q(1, 2)), ("10", q(1, 2)), ("11", q(0, 1))] {
            let got = table.get(outcome).ok_or("missing outcome")?;
            ensure!(*got == expected, "{:?} {outcome}: {got}", ctx.members);
        }
    }
    let targets = MarginalConstraintSet::from_distribution(&jqd).map_err(|e| e.to_string())?;
    let full = support_for(&s, SupportClass::Full).map_err(|e| e.to_string())?;
    ensure!(full.len() == 8, "full support has {} points", full.len());
    let sol = jpd_feasible(&s, &targets, &full).map_err(|e| e.to_string())?;
    ensure!(sol.status == LpStatus::Infeasible, "jpd_feasible found a JPD");
    let bits: Vec<Vec<bool>> = full.iter().map(|a| a.bits().to_vec()).collect();
    let a = marginal_matrix(&s, &bits);
    let b: Vec<BigRational> = targets
        .tables()
        .iter()
        .flat_map(|t| t.weights().iter().cloned())
        .chain([BigRational::one()])
        .collect();
    ensure!(!nonnegative_oracle(&a, &b), "oracle finds a JPD");
    Ok("pair marginals {00:0, 01:1/2, 10:1/2, 11:0}; no JPD on 8 points".into())
}

/// Marginal of `q` on `members`, computed directly from the support.
fn oracle_marginal(q: &QuasiDistribution<BigRational>, members: &[usize]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); 1 << members.len()];
    for (a, w) in q.support() {
        let idx = members.iter().fold(0, |acc, &i| acc << 1 | a.get(i) as usize);
        out[idx] += w.clone();
    }
    out
}

fn ac6_construction_property_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a71);
    let (mut nonneg_checked, mut closed_checked) = (0usize, 0usize);
    for trial in 0..200 {
        let n = rng.gen_range(2..=12);
        let s = Arc::new(random_scenario(&mut rng, n, 8, 0.4));
        let mut p: Vec<BigRational> = (0..n).map(|_| random_probability(&mut rng, 12)).collect();
        // sometimes make one context sum to exactly one
        if !s.contexts().is_empty() && rng.gen_bool(0.5) {
            let ctx = &s.contexts()[rng.gen_range(0..s.contexts().len())];
            let raw: Vec<i64> = ctx.members.iter().map(|_| rng.gen_range(1..=6)).collect();
            let total: i64 = raw.iter().sum();
            for (&i, &r) in ctx.members.iter().zip(&raw) {
                p[i] = q(r, total);
            }
        }
        let probs = EventProbabilities::new(p.clone()).map_err(|e| e.to_string())?;
        let jqd = construct_jqd(&s, &probs).map_err(|e| e.to_string())?;
        ensure!(jqd.total() == BigRational::one(), "trial {trial}: total {}", jqd.total());
        let completeness = verify_observable_completeness(&jqd).map_err(|e| e.to_string())?;
        for (ci, ctx) in s.contexts().iter().enumerate() {
            let direct = oracle_marginal(&jqd, &ctx.members);
            let sum: BigRational = ctx.members.iter().map(|&i| p[i].clone()).sum();
            let k = ctx.len();
            for (idx, w) in direct.iter().enumerate() {
                let expected = if idx == 0 {
                    BigRational::one() - sum.clone()
                } else if idx.count_ones() == 1 {
                    // single-event outcome: bit position k-1-j is member j
                    let j = k - 1 - idx.trailing_zeros() as usize;
                    p[ctx.members[j]].clone()
                } else {
                    BigRational::zero()
                };
                ensure!(*w == expected, "trial {trial}, context {ci}, outcome {idx}: {w} vs {expected}");
            }
            let lib = marginalize(&jqd, ctx).map_err(|e| e.to_string())?;
            ensure!(lib.weights() == direct.as_slice(), "trial {trial}: marginalize disagrees");
            if sum <= BigRational::one() {
                nonneg_checked += 1;
                ensure!(direct.iter().all(|w| !w.is_negative()), "trial {trial}: negative marginal");
            }
            if sum == BigRational::one() {
                closed_checked += 1;
                ensure!(direct[0].is_zero(), "trial {trial}: all-zeros weight {}", direct[0]);
                ensure!(completeness[ci].vanishes, "trial {trial}: completeness check disagrees");
            }
        }
    }
    ensure!(nonneg_checked > 100 && closed_checked > 20, "too few informative contexts");
    Ok(format!(
        "200 scenarios; {nonneg_checked} contexts with sum ≤ 1, {closed_checked} with sum = 1"
    ))
}

fn ac7_cabello18() -> Outcome {
    let entry = catalog::lookup(CABELLO18).map_err(|e| e.to_string())?;
    let s = Arc::clone(&entry.scenario);
    let start = Instant::now();
    let report = ks_colorability(&s).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(report.result == Colorability::Unsat, "colorability: {:?}", report.result);
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    ensure!(brute_ks(&s).is_empty(), "brute force finds a KS assignment");
    let vectors = entry.vectors.as_ref().ok_or("no vectors")?;
    let projectors: Vec<_> = vectors.iter().map(projector_from_vector).collect();
    let p = born_probabilities(&QuantumState::maximally_mixed(4), &projectors)
        .map_err(|e| e.to_string())?
        .rationalize()
        .ok_or("probabilities not rational")?;
    ensure!(p.values().iter().all(|x| *x == q(1, 4)), "p_i != 1/4");
    let jqd = construct_jqd(&s, &p).map_err(|e| e.to_string())?;
    let w0 = jqd.weight_of(&Assignment::zeros(18)).ok_or("no ω0")?;
    ensure!(*w0 == q(-7, 2), "weight(ω0) = {w0}");
    let checks = verify_observable_completeness(&jqd).map_err(|e| e.to_string())?;
    ensure!(checks.len() == 9, "{} contexts", checks.len());
    for c in &checks {
        ensure!(c.flagged_complete && c.passes && c.none_weight.is_zero(), "context {} fails", c.context);
    }
    Ok(format!(
        "UNSAT in {elapsed:?} ({} nodes); weight(ω0) = -7/2; 9/9 complete contexts pass",
        report.nodes_visited
    ))
}

fn signed_random_distribution(
    rng: &mut ChaCha8Rng,
    s: &Arc<Scenario>,
    support: &[Assignment],
) -> QuasiDistribution<BigRational> {
    let mut weights: Vec<BigRational> = support
        .iter()
        .map(|_| q(rng.gen_range(-3..=8), rng.gen_range(1..=8)))
        .collect();
    let rest: BigRational = weights[1..].iter().cloned().sum();
    weights[0] = BigRational::one() - rest;
    QuasiDistribution::new(Arc::clone(s), support.iter().cloned().zip(weights).collect()).unwrap()
}

fn ac8_lp_consistency() -> Outcome {
    let s = kcbs();
    let exclusive = support_for(&s, SupportClass::Exclusive).map_err(|e| e.to_string())?;
    let third = EventProbabilities::uniform(5, q(1, 3)).map_err(|e| e.to_string())?;
    let t = MarginalConstraintSet::from_event_probabilities(&s, &third).map_err(|e| e.to_string())?;
    let sol = min_negativity_jqd(&s, &t, &exclusive).map_err(|e| e.to_string())?;
    ensure!(sol.objective.is_zero(), "objective at 1/3 is {}", sol.objective);

    let p = EventProbabilities::uniform(5, 1.0 / sqrt5()).map_err(|e| e.to_string())?;
    let t = MarginalConstraintSet::from_event_probabilities(&s, &p).map_err(|e| e.to_string())?;
    let sol = min_negativity_jqd(&s, &t, &exclusive).map_err(|e| e.to_string())?;
    let cap = 5.0 / (2.0 * sqrt5()) - 1.0;
    ensure!(sol.objective <= cap + TOL && sol.objective >= -TOL, "objective {}", sol.objective);

    let mut rng = ChaCha8Rng::seed_from_u64(0x1b8);
    let mut compared = 0;
    for trial in 0..60 {
        let n = rng.gen_range(2..=4);
        let sc = Arc::new(random_scenario(&mut rng, n, 4, 0.3));
        let class = if trial % 2 == 0 { SupportClass::Exclusive } else { SupportClass::Full };
        let support = support_for(&sc, class).map_err(|e| e.to_string())?;
        let targets = if trial % 3 == 0 {
            let probs: Vec<BigRational> = (0..n).map(|_| random_probability(&mut rng, 6)).collect();
            let probs = EventProbabilities::new(probs).map_err(|e| e.to_string())?;
            MarginalConstraintSet::from_event_probabilities(&sc, &probs)
        } else {
            MarginalConstraintSet::from_distribution(&signed_random_distribution(&mut rng, &sc, &support))
        }
        .map_err(|e| e.to_string())?;
        let bits: Vec<Vec<bool>> = support.iter().map(|a| a.bits().to_vec()).collect();
        let a = marginal_matrix(&sc, &bits);
        let b: Vec<BigRational> = targets
            .tables()
            .iter()
            .flat_map(|t| t.weights().iter().cloned())
            .chain([BigRational::one()])
            .collect();
        let oracle = min_negativity_oracle(&a, &b);
        match (min_negativity_jqd(&sc, &targets, &support), oracle) {
            (Ok(sol), Some(best)) => {
                ensure!(sol.objective == best, "trial {trial}: LP {} vs oracle {best}", sol.objective);
                ensure!(apply(&a, &sol.weights) == b, "trial {trial}: LP weights miss the marginals");
                let neg: BigRational = sol.weights.iter().filter(|w| w.is_negative()).map(|w| -w.clone()).sum();
                ensure!(neg == sol.objective, "trial {trial}: objective is not the weights' negativity");
            }
            (Err(contextuality::Error::Infeasible), None) => {}
            (lp, oracle) => return Err(format!("trial {trial}: LP {lp:?} vs oracle {oracle:?}")),
        }
        let feasible = jpd_feasible(&sc, &targets, &support).map_err(|e| e.to_string())?;
        ensure!(
            feasible.is_optimal() == nonnegative_oracle(&a, &b),
            "trial {trial}: jpd_feasible disagrees with the vertex oracle"
        );
        compared += 1;
    }
    Ok(format!(
        "KCBS 1/3 → 0, KCBS 1/√5 → {:.10} ≤ {cap:.10}; {compared} small instances match the vertex oracle",
        sol.objective
    ))
}

fn ac9_round_trips() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut with_vectors = 0;
    for entry in catalog::catalog() {
        if let Some(vectors) = &entry.vectors {
            let derived = derive_scenario(vectors, entry.name()).map_err(|e| e.to_string())?;
            ensure!(derived == *entry.scenario, "{}: derived scenario differs", entry.name());
            with_vectors += 1;
        }
        let file = ScenarioFile::from(&entry);
        let reparsed = ScenarioFile::from_json(&file.to_json()).map_err(|e| e.to_string())?;
        ensure!(reparsed == file, "{}: scenario JSON round trip differs", entry.name());
        let path = dir.path().join(format!("{}.json", entry.name()));
        file.write(&path).map_err(|e| e.to_string())?;
        ensure!(ScenarioFile::read(&path).map_err(|e| e.to_string())? == file, "{}: file round trip", entry.name());
    }
    ensure!(with_vectors == 2, "{with_vectors} entries with vectors");

    let kcbs_entry = catalog::lookup(KCBS).map_err(|e| e.to_string())?;
    let projectors: Vec<_> = catalog::kcbs_vectors().iter().map(projector_from_vector).collect();
    let symmetric = born_probabilities(kcbs_entry.state("symmetric").unwrap(), &projectors).unwrap();
    let distributions = vec![
        AnyDistribution::Rational(catalog::kcbs_jpd_fixture()),
        AnyDistribution::Float(catalog::kcbs_jqd_fixture()),
        AnyDistribution::Rational(catalog::specker_jqd_fixture()),
        AnyDistribution::Float(construct_jqd(&kcbs_entry.scenario, &symmetric).unwrap()),
    ];
    for d in &distributions {
        let text = serde_json::to_string_pretty(&d.to_document()).map_err(|e| e.to_string())?;
        let doc: DistributionDocument = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let scenario = match d {
            AnyDistribution::Rational(q) => Arc::clone(q.scenario_arc()),
            AnyDistribution::Float(q) => Arc::clone(q.scenario_arc()),
        };
        let back = AnyDistribution::from_document(&doc, scenario).map_err(|e| e.to_string())?;
        ensure!(back == *d, "distribution round trip differs: {text}");
    }

    let s = kcbs();
    let support = support_for(&s, SupportClass::Exclusive).unwrap();
    let p = EventProbabilities::uniform(5, 1.0 / sqrt5()).unwrap();
    let t = MarginalConstraintSet::from_event_probabilities(&s, &p).unwrap();
    let doc = min_negativity_jqd(&s, &t, &support).unwrap().to_document(KCBS);
    let back: LpDocument = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).map_err(|e| e.to_string())?;
    ensure!(back == doc, "LP document round trip differs");
    Ok(format!("{with_vectors} vector realizations re-derived; {} distributions and an LP document re-parse identically", distributions.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("AC1 KCBS classical bound", ac1_kcbs_classical_bound),
        ("AC2 KCBS quantum violation", ac2_kcbs_quantum_violation),
        ("AC3 six-point JPD fixture", ac3_six_point_jpd_fixture),
        ("AC4 signed JQD fixture", ac4_signed_jqd_fixture),
        ("AC5 Specker triangle", ac5_specker_triangle),
        ("AC6 construction property suite", ac6_construction_property_suite),
        ("AC7 Cabello-18", ac7_cabello18),
        ("AC8 LP consistency", ac8_lp_consistency),
        ("AC9 round trips", ac9_round_trips),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|panic| {
                let msg = panic
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Err(format!("panicked: {msg}"))
            });
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
