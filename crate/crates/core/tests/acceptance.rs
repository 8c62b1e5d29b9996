//! Acceptance suite: one line per criterion, tolerance zero, pinned time limits.
//!
//! Runs without the libtest harness so every line is printed regardless of
//! outcome; the process exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use neighborly::harness::{
    check_chain_signatures, check_classical, check_edgevertex, check_functional, check_gf,
    check_negative_controls, check_prune_consistency, check_rr1, check_rr2,
    check_signature_consistency, Report,
};
use neighborly::identities::gf_sequence;
use neighborly::partitions::DEFAULT_ENUMERATION_BUDGET;
use neighborly::{DeletionRule, OddSignConvention, Series};

const BUDGET: usize = DEFAULT_ENUMERATION_BUDGET;

/// Limits hold for unoptimized test builds.
const LIMIT_CHAINS: Duration = Duration::from_secs(1);
const LIMIT_SECONDS: Duration = Duration::from_secs(30);
const LIMIT_RR1: Duration = Duration::from_secs(60);

/// Π (1 − q^n) over n ≡ 0, 2, 3 (mod 5), multiplied out naively.
fn naive_rr1_product(order: usize) -> Vec<i64> {
    let mut c = vec![0i64; order + 1];
    c[0] = 1;
    for n in (1..=order).filter(|n| matches!(n % 5, 0 | 2 | 3)) {
        for e in (n..=order).rev() {
            c[e] -= c[e - n];
        }
    }
    c
}

type Criterion = (u8, &'static str, Duration, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_reports(reports: &[Report]) -> Outcome {
    match reports.iter().find(|r| !r.passed()) {
        Some(r) => Outcome {
            ok: false,
            detail: r.summary_line(),
        },
        None => Outcome {
            ok: true,
            detail: String::new(),
        },
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn chains() -> Outcome {
    from_reports(&[check_chain_signatures(60, 15).expect("chains")])
}

fn signatures() -> Outcome {
    let r = check_signature_consistency(20, BUDGET).expect("signatures");
    if r.passed() && r.counts["neighborly"] == 0 {
        return fail("no partitions enumerated");
    }
    from_reports(&[r])
}

fn pruning() -> Outcome {
    let r = check_prune_consistency(25, BUDGET).expect("prune");
    let types = r.counts.keys().filter(|k| k.starts_with("type ")).count();
    if r.passed() && types != 6 {
        return fail(format!("expected all six component types to occur, saw {types}"));
    }
    from_reports(&[r])
}

fn rr1() -> Outcome {
    let r = check_rr1(30, BUDGET).expect("rr1");
    let series = r.series.clone().expect("series attached");
    let naive = naive_rr1_product(30);
    if series.coeffs() != naive.as_slice() {
        return fail(format!("enumeration {:?} differs from naive product {naive:?}", series.coeffs()));
    }
    if series.coeffs()[..5] != [1, 0, -1, -1, 0] {
        return fail("leading coefficients are not 1, 0, -1, -1, 0");
    }
    if series.coeffs()[8] != 0 || r.counts.get("weight8_positive") != Some(&2) || r.counts.get("weight8_negative") != Some(&2) {
        return fail("q^8 is not a 2 + 2 cancellation");
    }
    from_reports(&[r])
}

fn rr2() -> Outcome {
    from_reports(&[check_rr2(30, BUDGET).expect("rr2")])
}

fn gf() -> Outcome {
    let gf = gf_sequence(1, 30).expect("gf");
    if gf[0] != Series::one(30) || !gf[1].is_zero() {
        return fail("GF_0 = 1 and GF_1 = 0 not reproduced from GF_n<0 = 0");
    }
    from_reports(&[check_gf(12, 30, BUDGET).expect("gf")])
}

fn functional_and_classical() -> Outcome {
    let classical = check_classical(8, 25, BUDGET).expect("classical");
    let x_one = classical.series.clone().expect("series attached");
    if x_one.coeffs() != &naive_rr1_product(25)[..] {
        return fail("x = 1 specialization differs from the first product");
    }
    from_reports(&[check_functional(8, 25).expect("functional"), classical])
}

fn edgevertex() -> Outcome {
    let r = check_edgevertex(30, 12, OddSignConvention::Empirical, DeletionRule::Literal, BUDGET)
        .expect("edgevertex");
    let matching = r.params["matching_convention"].as_str().unwrap_or("").to_string();
    if matching != OddSignConvention::Empirical.label() {
        return fail(format!("matching convention is {matching}"));
    }
    let printed = check_edgevertex(30, 12, OddSignConvention::Printed, DeletionRule::Literal, BUDGET)
        .expect("edgevertex");
    if printed.passed() {
        return fail("printed odd sign unexpectedly matches");
    }
    let mut out = from_reports(&[r]);
    out.detail = format!("odd sign {matching}");
    out
}

fn controls() -> Outcome {
    let r = check_negative_controls(20, 8, 25, BUDGET).expect("controls");
    let witnesses = r.params.keys().filter(|k| k.ends_with("_witness")).count();
    if r.passed() && witnesses != 3 {
        return fail(format!("{witnesses} of 3 controls located a witness"));
    }
    from_reports(&[r])
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "chain signatures", LIMIT_CHAINS, chains),
        (2, "signature oracle equivalence", LIMIT_SECONDS, signatures),
        (3, "pruned-graph parity", LIMIT_SECONDS, pruning),
        (4, "first product identity", LIMIT_RR1, rr1),
        (5, "second product identity", LIMIT_SECONDS, rr2),
        (6, "generating functions by part count", LIMIT_SECONDS, gf),
        (7, "functional equation and classical form", LIMIT_SECONDS, functional_and_classical),
        (8, "edge/vertex refinement", LIMIT_SECONDS, edgevertex),
        (9, "negative controls", LIMIT_SECONDS, controls),
    ];
    let mut failures = 0;
    for (n, name, limit, run) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if elapsed > limit {
            outcome = fail(format!("took {elapsed:.2?}, limit {limit:?}"));
        }
        let status = if outcome.ok { "PASS" } else { "FAIL" };
        let mut line = format!("criterion {n}: {status}  {name}  [{elapsed:.2?}]");
        if !outcome.detail.is_empty() {
            line.push_str("  ");
            line.push_str(&outcome.detail);
        }
        println!("{line}");
        failures += usize::from(!outcome.ok);
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
