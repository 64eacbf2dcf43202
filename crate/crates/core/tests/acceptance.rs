//! Acceptance suite: one pass/fail line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use overhang::diagrams::enumerate_diagrams;
use overhang::hecke::{decoupling_report, BasisSubset, WalkModuleAction};
use overhang::par::Exec;
use overhang::paths::enumerate_paths;
use overhang::qfunc::QPoint;
use overhang::verify::{
    self, counts, homomorphism, lemmas, roundtrip, simple, simple_witness, tl_restriction,
    Coverage, SuiteReport,
};

struct Outcome {
    ok: bool,
    detail: String,
}

fn suites(reports: &[SuiteReport]) -> Outcome {
    let bad: Vec<String> = reports.iter().filter(|r| !r.passed()).map(|r| r.to_string()).collect();
    let checked: usize = reports.iter().map(|r| r.checked).sum();
    if bad.is_empty() {
        Outcome { ok: true, detail: format!("{checked} checks") }
    } else {
        Outcome { ok: false, detail: bad.join("; ") }
    }
}

fn cardinalities() -> Outcome {
    let want = [1usize, 3, 15, 105, 945];
    let got: Vec<(usize, usize)> =
        (1..=5).map(|n| (enumerate_paths(n).len(), enumerate_diagrams(n).len())).collect();
    let ok = got.iter().zip(want).all(|(&(p, d), w)| p == w && d == w);
    let mut out = suites(&(1..=5).map(counts).collect::<Vec<_>>());
    out.ok &= ok;
    out.detail = format!("{got:?}; {}", out.detail);
    out
}

fn main_theorem() -> Outcome {
    let exhaustive = roundtrip(5, Coverage::Exhaustive, Exec::Parallel);
    let sampled = roundtrip(6, Coverage::Sampled { count: 10_000, seed: 20_240_601 }, Exec::Parallel);
    let mut out = suites(&[exhaustive.clone(), sampled]);
    out.ok &= exhaustive.checked >= 2 * 945;
    out
}

fn tl_sector() -> Outcome {
    suites(&(1..=6).map(|n| tl_restriction(n, Exec::Parallel)).collect::<Vec<_>>())
}

fn concatenation() -> Outcome {
    suites(&[homomorphism(5, Exec::Parallel)])
}

fn structural_lemmas() -> Outcome {
    suites(&(1..=4).map(|n| lemmas(n, Exec::Parallel)).collect::<Vec<_>>())
}

fn simple_bijection() -> Outcome {
    let mut out = suites(&(1..=5).map(|n| simple(n, Exec::Parallel)).collect::<Vec<_>>());
    match simple_witness(2) {
        Some(w) => out.detail = format!("witness {w}; {}", out.detail),
        None => {
            out.ok = false;
            out.detail = "no diagram of degree 2 separates the bijections".into();
        }
    }
    out
}

fn hecke_module() -> Outcome {
    let mut out = suites(&[verify::hecke(5, Exec::Parallel)]);
    // the wall report must list boundary valuations at q a primitive 2l-th root
    for l in [2usize, 3] {
        let m = WalkModuleAction::two_rows(l + 1, l + 1, 1);
        let q0 = QPoint::RootOfUnity(2 * l as u32);
        let band = BasisSubset::Band { lo: 0, hi: l as i64 - 1 };
        match decoupling_report(&m, &band, Some(&q0)) {
            Ok(r) => {
                let listed = r.nonzero_leaks().all(|leak| leak.valuation.is_some());
                out.ok &= listed && r.nonzero_leaks().next().is_some();
            }
            Err(e) => {
                out.ok = false;
                out.detail = format!("wall l={l}: {e}");
            }
        }
    }
    out
}

fn main() -> ExitCode {
    type Criterion = (&'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 7] = [
        ("1 cardinalities n=1..5", 5, cardinalities),
        ("2 phi/psi mutually inverse (n=5 exhaustive, n=6 sampled)", 30, main_theorem),
        ("3 TL restriction n<=6", 30, tl_sector),
        ("4 concatenation homomorphism, total degree <=5", 30, concatenation),
        ("5 structural lemmas n<=4", 30, structural_lemmas),
        ("6 simple bijection n<=5 and witness", 30, simple_bijection),
        ("7 Hecke relations and decoupling", 60, hecke_module),
    ];
    let mut all = true;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(limit);
        let ok = out.ok && in_time;
        all &= ok;
        println!(
            "{} criterion {name}: {:.2}s (limit {limit}s) {}",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            out.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
