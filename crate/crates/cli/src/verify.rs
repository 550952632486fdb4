//! The `verify-paper` runner: every built-in verification suite plus decider
//! cross-checks on a small census, with optional deterministic parallelism.

use serde_json::json;

use pfaffian_core::census::connected_factor_census;
use pfaffian_core::fixtures::{
    builtin, verify_corollaries, verify_figure_tables, verify_fixture_consistency,
    verify_minimality, FixtureName, Report,
};
use pfaffian_core::graph::Graph;
use pfaffian_core::pfaffian::{brute_force_pfaffian_orientation, find_pfaffian_orientation};

/// Applies `f` to every item, splitting across `jobs` threads; results come
/// back in input order regardless of the worker count.
pub fn par_map_ordered<T, R, F>(items: Vec<T>, jobs: usize, f: F) -> Vec<R>
where
    T: Send + Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let jobs = jobs.max(1).min(items.len().max(1));
    if jobs == 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(jobs);
    let mut out: Vec<Option<R>> = Vec::new();
    out.resize_with(items.len(), || None);
    let f = &f;
    let results: Vec<(usize, Vec<R>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .enumerate()
            .map(|(i, part)| scope.spawn(move || (i, part.iter().map(f).collect::<Vec<R>>())))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    for (i, part) in results {
        for (j, r) in part.into_iter().enumerate() {
            out[i * chunk + j] = Some(r);
        }
    }
    out.into_iter().map(|r| r.expect("all slots filled")).collect()
}

fn decider_cross_check(jobs: usize) -> Report {
    let mut report = Report::default();
    let census = connected_factor_census(6);
    let total = census.len();
    let mismatches: Vec<String> = par_map_ordered(census, jobs, |g: &Graph| {
        let a = find_pfaffian_orientation(g).expect("solver works at census scale").is_some();
        let b = brute_force_pfaffian_orientation(g)
            .expect("brute force works at census scale")
            .is_some();
        if a == b {
            None
        } else {
            Some(format!("{:?}", g.edge_vec()))
        }
    })
    .into_iter()
    .flatten()
    .collect();
    report.push(
        "deciders agree on all connected matchable graphs with at most 6 vertices",
        mismatches.is_empty(),
        format!("{total} graphs checked{}", if mismatches.is_empty() { String::new() } else { format!(", mismatches: {mismatches:?}") }),
    );
    report
}

fn fixture_decisions() -> Report {
    let mut report = Report::default();
    for name in [FixtureName::K33, FixtureName::Gamma1, FixtureName::Gamma2] {
        let fx = builtin(name);
        let pf = find_pfaffian_orientation(&fx.graph).map(|o| o.is_some());
        report.push(
            format!("{}: non-Pfaffian", fx.name),
            pf == Ok(false),
            String::new(),
        );
    }
    report
}

pub fn cmd_verify_paper(jobs: usize, json_out: bool) -> u8 {
    let mut report = Report::default();
    let sections: Vec<pfaffian_core::Result<Report>> = vec![
        verify_fixture_consistency(),
        verify_figure_tables(),
        verify_minimality(FixtureName::Gamma1),
        verify_minimality(FixtureName::Gamma2),
        verify_corollaries(),
        Ok(fixture_decisions()),
        Ok(decider_cross_check(jobs)),
    ];
    for section in sections {
        match section {
            Ok(r) => report.extend(r),
            Err(e) => {
                report.push("verification section", false, e.to_string());
            }
        }
    }

    if json_out {
        let items: Vec<_> = report
            .items
            .iter()
            .map(|i| json!({"name": i.name, "pass": i.pass, "detail": i.detail}))
            .collect();
        println!("{}", json!({"checks": items, "passed": report.passed()}));
    } else {
        for item in &report.items {
            if item.pass {
                println!("ok   {}", item.name);
            } else {
                println!("FAIL {} ({})", item.name, item.detail);
            }
        }
        let passed = report.items.iter().filter(|i| i.pass).count();
        println!("{passed}/{} checks passed", report.items.len());
    }
    if report.passed() {
        0
    } else {
        1
    }
}
