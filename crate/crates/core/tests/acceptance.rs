//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use latfox_core::ifox::arrows;
use latfox_core::oracle::{self, LatticeSnapshot};
use latfox_core::random;
use latfox_core::sets;
use latfox_core::trace;
use latfox_core::verify::{self, TrialConfig, TrialKind, VerifyReport};
use latfox_core::{fixtures, AttributeColumn, DiagramState, FormalContext, PreClass};
use rand::Rng;

const TRIALS: usize = 200;
const TRIAL_SEED: u64 = 2024;
const TIME_LIMIT: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;

fn problems_of(report: &VerifyReport, kind: TrialKind, round_trip: bool) -> Vec<String> {
    report
        .trials
        .iter()
        .flat_map(|t| t.cases.iter().map(move |c| (t.index, c)))
        .filter(|(_, c)| c.kind == kind)
        .flat_map(|(i, c)| {
            c.problems
                .iter()
                .filter(move |p| p.contains("round trip") == round_trip)
                .map(move |p| format!("trial {i}: {p}"))
        })
        .collect()
}

fn summarize(problems: Vec<String>, ok: String) -> Outcome {
    match problems.first() {
        None => Ok(ok),
        Some(first) => Err(format!("{} problems, first: {first}", problems.len())),
    }
}

fn insert_equivalence(report: &VerifyReport) -> Outcome {
    let cases = report
        .trials
        .iter()
        .filter(|t| t.cases.iter().any(|c| c.kind == TrialKind::Insert))
        .count();
    if report.elapsed >= TIME_LIMIT {
        return Err(format!("took {:?}", report.elapsed));
    }
    summarize(
        problems_of(report, TrialKind::Insert, false),
        format!("{cases} trials, 0 mismatches, {:.2?}", report.elapsed),
    )
}

fn remove_equivalence(report: &VerifyReport) -> Outcome {
    summarize(
        problems_of(report, TrialKind::Remove, false),
        format!("{} trials, 0 mismatches", report.trials.len()),
    )
}

fn round_trips(report: &VerifyReport) -> Outcome {
    let mut problems = problems_of(report, TrialKind::Insert, true);
    problems.extend(problems_of(report, TrialKind::Remove, true));
    summarize(
        problems,
        format!(
            "{} remove∘insert and insert∘remove pairs restored",
            2 * report.trials.len()
        ),
    )
}

fn free_distributive() -> Outcome {
    let (k, z) = fixtures::free_distributive();
    let old = DiagramState::build(k);
    let (new, cs) = old.insert_column(z).map_err(|e| e.to_string())?;

    let full = fixtures::free_distributive_full();
    let batch: BTreeSet<(Vec<String>, Vec<String>)> = LatticeSnapshot::compute(&full)
        .concepts
        .iter()
        .map(|c| (full.object_names(&c.extent), full.attribute_names(&c.intent)))
        .collect();
    let ours: BTreeSet<(Vec<String>, Vec<String>)> = new
        .concepts()
        .map(|c| {
            (
                new.context().object_names(&c.extent),
                new.context().attribute_names(&c.intent),
            )
        })
        .collect();
    if ours != batch {
        return Err("(a) concept set differs from the batch lattice".into());
    }
    let problems = verify::compare_with_oracle(&new);
    if !problems.is_empty() {
        return Err(format!("(a) {}", problems[0]));
    }
    for record in &cs.created {
        if !new.upper(record.id).contains(&record.generator) {
            return Err(format!(
                "(b) created {} is not a lower neighbor of {}",
                record.id, record.generator
            ));
        }
    }
    let generators = cs.pre_class.values().filter(|c| **c == PreClass::Generating).count();
    if cs.created.len() != generators || generators != 5 {
        return Err(format!("(c) {} created for {generators} generators", cs.created.len()));
    }
    Ok(format!(
        "(a) {} concepts, {} edges match batch; (b) all created below generators; (c) 5 created = 5 generators",
        new.concept_count(),
        new.edge_count()
    ))
}

fn lemma_suites() -> Outcome {
    let mut rng = random::rng(TRIAL_SEED);
    let mut problems = Vec::new();
    let samples = 1000;
    for i in 0..samples {
        let objects = rng.gen_range(0..=12);
        let attributes = rng.gen_range(0..10);
        let density = verify::DENSITIES[i % 3];
        let k = random::random_context(&mut rng, objects, attributes, density);
        let c = random::random_column(&mut rng, &k, "n", density);
        problems.extend(
            verify::check_lemma_sample(&mut rng, &k, &c)
                .into_iter()
                .map(|p| format!("sample {i}: {p}")),
        );
    }
    summarize(problems, format!("{samples} samples, 0 failures"))
}

fn down_arrow_fallback() -> Outcome {
    let k2 = fixtures::k2();
    let d = fixtures::column_d();
    let (g1, g2, a) = (0, 1, 0);
    if !k2.object_intent(g2).is_subset(k2.object_intent(g1)) || d.extent.contains(g1) || !d.extent.contains(g2) {
        return Err("fixture no longer exercises the failing sufficient condition".into());
    }
    let state = DiagramState::build(k2);
    if !state.down_arrows().contains(&(g2, a)) {
        return Err("g2 ↙ a missing before insertion".into());
    }
    let (kd, _) = state.insert_column(d).map_err(|e| e.to_string())?;
    if !kd.down_arrows().contains(&(g2, a)) || !arrows::down_arrow_holds(kd.context(), g2, a) {
        return Err("g2 ↙ a lost after inserting d".into());
    }
    let (_, expected) = oracle::arrows(kd.context());
    if kd.down_arrows() != &expected {
        return Err("down arrows differ from the oracle".into());
    }
    Ok("g2 ↙ a kept by definitional check in K2|d".into())
}

fn degenerate_columns() -> Outcome {
    let mut rng = random::rng(TRIAL_SEED + 1);
    let mut contexts = vec![
        fixtures::k2(),
        fixtures::k4(),
        fixtures::free_distributive().0,
        FormalContext::empty(),
    ];
    for i in 0..60 {
        let objects = rng.gen_range(1..=12);
        let attributes = rng.gen_range(1..10);
        contexts.push(random::random_context(
            &mut rng,
            objects,
            attributes,
            verify::DENSITIES[i % 3],
        ));
    }
    let mut checked = 0;
    for k in &contexts {
        let g = k.object_count();
        let mut columns = vec![
            ("empty", AttributeColumn::new("n", sets::empty(g)), None),
            ("full", AttributeColumn::new("n", sets::full(g)), Some(true)),
        ];
        if k.attribute_count() > 0 {
            let m = rng.gen_range(0..k.attribute_count());
            columns.push((
                "duplicate",
                AttributeColumn::new("n", k.attribute_extent(m).clone()),
                Some(true),
            ));
        }
        for (label, column, expect_redundant) in columns {
            for kind in [TrialKind::Insert, TrialKind::Remove] {
                let problems = verify::check_case(kind, k, &column, None);
                if let Some(p) = problems.first() {
                    return Err(format!("{label} column, {kind}: {p}"));
                }
            }
            let (_, cs) = DiagramState::build(k.clone())
                .insert_column(column.clone())
                .map_err(|e| e.to_string())?;
            let redundant = oracle::is_redundant_column(k, &column);
            if cs.redundant != redundant || cs.created.is_empty() != redundant {
                return Err(format!(
                    "{label} column: redundancy flag {} vs oracle {redundant}",
                    cs.redundant
                ));
            }
            if expect_redundant.is_some_and(|r| r != redundant) {
                return Err(format!("{label} column should be redundant"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} degenerate columns, redundancy ⟺ no generators"))
}

fn incrementality() -> Outcome {
    let big = trace::random_trace(TRIAL_SEED, 60, 40, 40, false);
    let incremental = trace::run_incremental(&big).map_err(|e| e.to_string())?;
    if incremental.counters.full_enumerations != 0 {
        return Err(format!(
            "{} full enumerations on the incremental path",
            incremental.counters.full_enumerations
        ));
    }
    let small = trace::random_trace(TRIAL_SEED, 30, 20, 10, true);
    let report = trace::compare(&small).map_err(|e| e.to_string())?;
    if report.rebuild.counters.full_enumerations != 10
        || report.incremental.op_micros.len() != 10
        || report.rebuild.op_micros.len() != 10
        || report.incremental.final_concepts != report.rebuild.final_concepts
    {
        return Err("comparative report incomplete".into());
    }
    Ok(format!(
        "60x40 + 40 inserts: 0 full enumerations, {} concepts, {:.1} ms; comparison report populated",
        incremental.final_concepts,
        incremental.total_micros as f64 / 1000.0
    ))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let report = verify::run_trials(&TrialConfig {
        trials: TRIALS,
        max_objects: 12,
        max_attributes: 10,
        seed: TRIAL_SEED,
        base: None,
        fault: None,
    });
    let criteria: Vec<(&str, Outcome)> = vec![
        ("oracle equivalence (insert)", insert_equivalence(&report)),
        ("oracle equivalence (remove)", remove_equivalence(&report)),
        ("round trips", round_trips(&report)),
        ("free distributive lattice example", free_distributive()),
        ("apposition and column lemmas", lemma_suites()),
        ("down-arrow definitional fallback", down_arrow_fallback()),
        ("degenerate columns", degenerate_columns()),
        ("incrementality instrumentation", incrementality()),
    ];
    let mut failed = 0;
    for (name, outcome) in &criteria {
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    if let Some(cex) = &report.counterexample {
        println!("{cex}");
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.2?}",
        criteria.len() - failed,
        started.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
