//! Acceptance criteria 1-9, one PASS/FAIL line each.
//!
//! Run with `cargo test -p bilift-cli --test acceptance`. Time limits are
//! wall-clock limits on this process; each criterion checks its own result
//! against independent oracles where one exists.

use std::process::{Command, ExitCode};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use bilift::classify::{classify_pair, Case};
use bilift::edgeset::{bits, subsets, Mask};
use bilift::enumerate::{gen_multigraphs, sweep, Check, SearchRange, SweepReport};
use bilift::families::{exceptional_pair, post_check, ExceptionalId};
use bilift::isomorphism::two_isomorphic;
use bilift::matroid::{is_independent_lift_mask, lift_circuit_shape, rank_lift_mask};
use bilift::{Label, Multigraph};

type Verdict = Result<String, String>;

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn clean(report: &SweepReport, check: Check) -> Result<(), String> {
    let s = report.stat(check);
    ensure(s.violations == 0, || {
        let first = report.violations.iter().find(|v| v.check == check);
        format!(
            "{check}: {} violations, first: {}",
            s.violations,
            first.map_or(String::new(), |v| format!(
                "{} {}",
                v.message,
                serde_json::to_string(&v.graphs).unwrap()
            ))
        )
    })?;
    ensure(s.checked > 0, || format!("{check}: nothing was checked"))
}

/// Cycles straight from the definition: nonempty edge sets whose subgraph
/// is connected with every vertex of degree 2 (a loop counts twice).
fn cycles_by_definition(g: &Multigraph) -> Vec<Mask> {
    subsets(g.full_mask())
        .filter(|&x| {
            if x == 0 {
                return false;
            }
            let mut degree = vec![0usize; g.vertex_count()];
            let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
            fn find(p: &mut [usize], v: usize) -> usize {
                if p[v] == v {
                    v
                } else {
                    let r = find(p, p[v]);
                    p[v] = r;
                    r
                }
            }
            for i in bits(x) {
                let e = g.edges()[i];
                degree[e.u] += 1;
                degree[e.v] += 1;
                let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
                parent[a] = b;
            }
            let touched: Vec<usize> = (0..g.vertex_count()).filter(|&v| degree[v] > 0).collect();
            let root = find(&mut parent, touched[0]);
            touched.iter().all(|&v| degree[v] == 2 && find(&mut parent, v) == root)
        })
        .collect()
}

/// Lift circuits as the minimal unions of two distinct cycles.
fn lift_by_cycle_unions(g: &Multigraph) -> Vec<Mask> {
    let cycles = cycles_by_definition(g);
    let mut unions: Vec<Mask> = Vec::new();
    for (i, &a) in cycles.iter().enumerate() {
        for &b in &cycles[i + 1..] {
            unions.push(a | b);
        }
    }
    unions.sort_unstable();
    unions.dedup();
    unions
        .iter()
        .copied()
        .filter(|&u| !unions.iter().any(|&w| w != u && w & u == w))
        .collect()
}

fn criterion_1() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("k4.g");
    std::fs::write(
        &path,
        "# K4\nv 4\ne 1 0 1\ne 2 0 2\ne 3 0 3\ne 4 1 2\ne 5 1 3\ne 6 2 3\n",
    )
    .map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_bilift"))
        .arg("circuits")
        .arg(&path)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("exit status {}", out.status))?;
    let circuits: Vec<Vec<Label>> = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let expected: Vec<Vec<Label>> = (1..=6)
        .rev()
        .map(|skip| (1..=6).filter(|&l| l != skip).collect())
        .collect();
    ensure(circuits == expected, || format!("got {circuits:?}"))?;
    let k4 = bilift::format::parse_text(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let oracle = lift_by_cycle_unions(&k4);
    ensure(oracle.len() == 6 && oracle.iter().all(|c| c.count_ones() == 5), || {
        format!("cycle-union oracle gives {oracle:?}")
    })?;
    ensure(oracle.iter().all(|&c| lift_circuit_shape(&k4, c).is_some()), || {
        "a circuit has no two-cycle shape".into()
    })?;
    Ok("six 5-element circuits, L(K4) = U(4,6)".into())
}

fn criterion_2() -> Verdict {
    let report = sweep(&SearchRange::new(5, 6).connected(), &[Check::MinorIdentities])
        .map_err(|e| e.to_string())?;
    clean(&report, Check::MinorIdentities)?;
    Ok(format!(
        "{} graphs, {} (graph, edge) instances",
        report.graphs,
        report.stat(Check::MinorIdentities).checked
    ))
}

fn criterion_3() -> Verdict {
    let range = SearchRange::new(8, 6);
    let report = sweep(&range, &[Check::OracleAgreement, Check::CircuitAxioms])
        .map_err(|e| e.to_string())?;
    clean(&report, Check::OracleAgreement)?;
    clean(&report, Check::CircuitAxioms)?;
    // independence by the rank formula against containment of a circuit
    // from the cycle-union oracle
    let graphs = gen_multigraphs(&range).map_err(|e| e.to_string())?;
    let mut subsets_checked = 0usize;
    for g in &graphs {
        let circuits = lift_by_cycle_unions(g);
        for x in subsets(g.full_mask()) {
            let dependent = circuits.iter().any(|&c| c & x == c);
            ensure(is_independent_lift_mask(g, x) != dependent, || {
                format!("{:?} on {}", g.edge_set(x), bilift::format::to_json(g))
            })?;
            ensure((rank_lift_mask(g, x) == x.count_ones() as usize) != dependent, || {
                format!("rank of {:?} on {}", g.edge_set(x), bilift::format::to_json(g))
            })?;
            subsets_checked += 1;
        }
    }
    Ok(format!("{} graphs, {subsets_checked} subsets", graphs.len()))
}

fn criterion_4() -> Verdict {
    let report = sweep(&SearchRange::new(7, 6).connected(), &[Check::WhitneyEquivalence])
        .map_err(|e| e.to_string())?;
    clean(&report, Check::WhitneyEquivalence)?;
    Ok(format!("{} connected graphs, every relabeling compared", report.graphs))
}

fn totality_sweep() -> Result<SweepReport, String> {
    sweep(
        &SearchRange::new(8, 7).two_edge_connected(),
        &[
            Check::TheoremTotality,
            Check::LoopCorollary,
            Check::LoopLinkSignature,
            Check::RankClaim,
        ],
    )
    .map_err(|e| e.to_string())
}

fn criterion_5(report: &SweepReport) -> Verdict {
    clean(report, Check::TheoremTotality)?;
    ensure(report.count("unclassified") == 0, || "unclassified pairs".into())?;
    ensure(
        report.exceptional_pairs.iter().all(|f| f.case != Case::Unclassified),
        || "an exceptional pair is unclassified".into(),
    )?;
    Ok(format!(
        "{} graphs, {} ordered pairs classified, {} non-2-isomorphic",
        report.graphs,
        report.stat(Check::TheoremTotality).checked,
        report.exceptional_pairs.len()
    ))
}

fn criterion_6(report: &SweepReport) -> Verdict {
    clean(report, Check::LoopCorollary)?;
    Ok(format!(
        "{} pairs share a loop",
        report.stat(Check::LoopCorollary).checked
    ))
}

fn criterion_7() -> Verdict {
    let report = sweep(
        &SearchRange::new(6, 9).connected().cosimple(),
        &[Check::CorollaryGuard],
    )
    .map_err(|e| e.to_string())?;
    clean(&report, Check::CorollaryGuard)?;
    Ok(format!(
        "{} cosimple graphs, {} ordered pairs, {} ms",
        report.graphs,
        report.stat(Check::CorollaryGuard).checked,
        report.wall_time_ms
    ))
}

fn criterion_8(report: &SweepReport) -> Verdict {
    clean(report, Check::RankClaim)?;
    let connected = sweep(&SearchRange::new(7, 6).connected(), &[Check::RankClaim])
        .map_err(|e| e.to_string())?;
    clean(&connected, Check::RankClaim)?;
    Ok(format!(
        "{} graphs",
        report.stat(Check::RankClaim).checked + connected.stat(Check::RankClaim).checked
    ))
}

fn criterion_9(report: &SweepReport) -> Verdict {
    for id in ExceptionalId::ALL {
        let (g1, g2) = exceptional_pair(id, id.min_n()).map_err(|e| e.to_string())?;
        post_check(id, &g1, &g2).map_err(|e| e.to_string())?;
        ensure(!two_isomorphic(&g1, &g2).unwrap(), || format!("{id}: 2-isomorphic"))?;
        let case = classify_pair(&g1, &g2).map_err(|e| format!("{id}: {e}"))?.case;
        ensure(case != Case::Unclassified && case != Case::TwoIsomorphic, || {
            format!("{id}: classified as {}", case.name())
        })?;
    }
    clean(report, Check::LoopLinkSignature)?;
    for f in &report.exceptional_pairs {
        ensure(
            matches!(
                f.case,
                Case::K4Subdivisions | Case::K3m2nSubdivisions { .. } | Case::Exceptional { .. }
            ),
            || format!("pair outside every signature: {}", serde_json::to_string(&f.pair).unwrap()),
        )?;
    }
    Ok(format!(
        "{} families at minimum size; {} swept pairs inside the signatures",
        ExceptionalId::ALL.len(),
        report.exceptional_pairs.len()
    ))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report_line = |n: usize, limit: Duration, run: &dyn Fn() -> Verdict| {
        let started = Instant::now();
        let verdict = run();
        let elapsed = started.elapsed();
        let verdict = verdict.and_then(|detail| {
            if elapsed <= limit {
                Ok(detail)
            } else {
                Err(format!("took {elapsed:.1?}, limit {limit:?}"))
            }
        });
        match verdict {
            Ok(detail) => println!("criterion {n}: PASS ({elapsed:.2?}) {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({elapsed:.2?}) {why}");
            }
        }
    };
    let minute = Duration::from_secs(60);
    report_line(1, Duration::from_secs(1), &criterion_1);
    report_line(2, minute, &criterion_2);
    report_line(3, 2 * minute, &criterion_3);
    report_line(4, 10 * minute, &criterion_4);

    // 5, 6, 8 and 9 share one sweep; it runs inside 5 and counts against 5
    let totality = OnceLock::new();
    let shared = |check: fn(&SweepReport) -> Verdict| {
        let totality = &totality;
        move || match totality.get_or_init(totality_sweep) {
            Ok(report) => check(report),
            Err(e) => Err(e.clone()),
        }
    };
    report_line(5, 30 * minute, &shared(criterion_5));
    report_line(6, 30 * minute, &shared(criterion_6));
    report_line(7, 30 * minute, &criterion_7);
    report_line(8, 30 * minute, &shared(criterion_8));
    report_line(9, 30 * minute, &shared(criterion_9));

    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
