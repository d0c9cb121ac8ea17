//! The ten acceptance criteria, one line each. Equality is exact throughout.
//!
//! Run with `cargo test -p hquant-core --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;

use hquant::report::{run_cells, Cell, CheckRecord, Status};
use hquant::suites::{self, SuiteConfig};

struct Outcome {
    pass: bool,
    note: String,
    /// Whether the outcome is the one we expect; a documented failure counts.
    expected: bool,
}

fn run(cells: Vec<Cell>) -> Vec<CheckRecord> {
    assert!(!cells.is_empty(), "criterion selected no checks");
    run_cells(&cells, false)
}

fn only(cells: Vec<Cell>, ids: &[&str]) -> Vec<Cell> {
    cells.into_iter().filter(|c| ids.contains(&c.check_id.as_str())).collect()
}

fn all_pass(recs: &[CheckRecord]) -> Outcome {
    let bad: Vec<&CheckRecord> = recs.iter().filter(|r| r.status != Status::Pass).collect();
    let note = match bad.first() {
        None => format!("{}/{} checks", recs.len(), recs.len()),
        Some(r) => format!(
            "{}/{} checks; first failure {} {:?}: {}",
            recs.len() - bad.len(),
            recs.len(),
            r.check_id,
            r.parameters,
            r.witness.as_deref().unwrap_or("")
        ),
    };
    Outcome { pass: bad.is_empty(), expected: bad.is_empty(), note }
}

fn cocycle_cells() -> Vec<Cell> {
    suites::cocycle(&SuiteConfig::default()).expect("cocycle suite")
}

fn criterion_7() -> Outcome {
    let cells = suites::jordanian(&SuiteConfig::default()).expect("jordanian suite");
    let recs = run(cells);
    let homs: Vec<&CheckRecord> = recs.iter().filter(|r| r.check_id == "sp2n-homomorphism").collect();
    let displayed: Vec<&CheckRecord> = recs.iter().filter(|r| r.check_id == "sp4-table-row").collect();
    let corrected: Vec<&CheckRecord> = recs.iter().filter(|r| r.check_id == "sp4-table-row-corrected").collect();
    let failing: BTreeSet<u64> = displayed
        .iter()
        .filter(|r| r.status == Status::Fail)
        .map(|r| r.parameters["row"].as_u64().expect("row number"))
        .collect();
    let homs_ok = homs.len() == 2 && homs.iter().all(|r| r.status == Status::Pass);
    let corrected_ok = corrected.len() == 30 && corrected.iter().all(|r| r.status == Status::Pass);
    let pass = homs_ok && failing.is_empty();
    // rows 1, 2, 3, 5, 6 disagree as printed, in every context
    let per_context_failures = displayed.iter().filter(|r| r.status == Status::Fail).count();
    let documented = failing == BTreeSet::from([1, 2, 3, 5, 6]) && per_context_failures == 15;
    let note = format!(
        "sp2n_map homomorphism {}; displayed rows {:?} disagree ({} failing row checks over 3 contexts); corrected table {}/{} rows match",
        if homs_ok { "holds" } else { "FAILS" },
        failing,
        per_context_failures,
        corrected.iter().filter(|r| r.status == Status::Pass).count(),
        corrected.len(),
    );
    Outcome { pass, expected: pass || (homs_ok && corrected_ok && documented), note }
}

fn criterion_10() -> Outcome {
    let mut cells = only(cocycle_cells(), &["cocycle-negative-control"]);
    let horizontal = suites::horizontal(&SuiteConfig::default()).expect("horizontal suite");
    cells.extend(only(horizontal, &["sigma-negative-control"]));
    let recs = run(cells);
    let mut o = all_pass(&recs);
    o.note = format!("{}; each control is a check that passes only when the corrupted input is rejected", o.note);
    o
}

type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("cocycle identity", Box::new(|| all_pass(&run(only(cocycle_cells(), &["cocycle"]))))),
        ("twist/inverse grid", Box::new(|| all_pass(&run(only(cocycle_cells(), &["twist-inverse-grid"]))))),
        (
            "closed forms equal conjugation",
            Box::new(|| {
                let cfg = SuiteConfig { n: Some(1), ..SuiteConfig::default() };
                all_pass(&run(only(suites::char0_closed_forms(&cfg).expect("suite"), &["closed-vs-twist"])))
            }),
        ),
        (
            "modular reduction commutes",
            Box::new(|| {
                all_pass(&run(only(suites::modular_reduction(&SuiteConfig::default()).expect("suite"), &["reduction-commutes"])))
            }),
        ),
        ("u_tq Hopf axioms", Box::new(|| all_pass(&run(suites::utq_hopf(&SuiteConfig::default()).expect("suite"))))),
        (
            "horizontal suite",
            Box::new(|| {
                let cells = suites::horizontal(&SuiteConfig::default()).expect("suite");
                let cells = cells.into_iter().filter(|c| c.check_id != "sigma-negative-control").collect();
                all_pass(&run(cells))
            }),
        ),
        ("jordanian sp4 table", Box::new(criterion_7)),
        ("dimension claims", Box::new(|| all_pass(&run(suites::dims(&SuiteConfig::default()).expect("suite"))))),
        ("distinctness of product twists", Box::new(|| all_pass(&run(only(cocycle_cells(), &["distinctness"]))))),
        ("negative controls", Box::new(criterion_10)),
    ];
    let mut unexpected = vec![];
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        println!("criterion {:>2} [{name}]: {} ({})", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.note);
        if !o.expected {
            unexpected.push(i + 1);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
