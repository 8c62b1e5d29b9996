use rayon::prelude::*;
use serde_json::json;

use super::report::{Location, Report};
use super::Catalog;
use crate::error::{Error, Result};
use crate::identities::{
    classical_lhs, edgevertex_even, edgevertex_odd, functional_equation_residual,
    functional_equation_residual_with, gf_sequence, h_recurrence_sequence, main_theorem_at_x_one,
    main_theorem_rhs, rr1_bilateral, rr1_one_sided, rr1_product, rr2_product, rr2_sum,
    FunctionalTerms, OddSignConvention,
};
use crate::partitions::{neighborly_of_weight, NeighborlyPartition};
use crate::qseries::{infinite_product, BivariateSeries, Series};
use crate::signatures::{
    build_graph, chain_poly, chain_poly_at_minus_one, chain_sign, classify_components,
    prune, sign, signature_bruteforce, signature_by_components, signature_closed,
    Component, DeletionRule, PartitionGraph,
};

/// Largest t-degree used for the chain generating-function identity.
const CHAIN_GF_DEGREE: usize = 15;

fn mod3_pattern(n: usize) -> i64 {
    [0, -1, 1][n % 3]
}

/// Chain signatures against the mod-3 pattern, brute-force path enumeration
/// and the generating function x t / (1 − x t − x t²).
pub fn check_chain_signatures(max_n: usize, brute_max: usize) -> Result<Report> {
    let mut r = Report::new("chains");
    r.param("max_n", max_n).param("brute_max", brute_max);
    for n in 1..=max_n {
        let witness = || Location::Witness(format!("B_{n}"));
        let want = mod3_pattern(n);
        let closed = chain_sign(n)?;
        if closed != want {
            r.push(witness(), want, closed, "mod-3 pattern");
        }
        let at_minus_one = chain_poly_at_minus_one(n)?;
        if at_minus_one != want {
            r.push(witness(), want, at_minus_one, "B_n(-1)");
        }
    }
    for n in 1..=brute_max {
        let path = Component::new(1, n as u32 + 1, Vec::new())?;
        let brute = path.covering_subset_poly()?;
        let poly = chain_poly(n)?;
        if brute != poly {
            r.push(Location::Witness(format!("B_{n}(x)")), json!(brute), json!(poly), "path enumeration");
        }
        let g = PartitionGraph::from_components(vec![path]);
        let signed = signature_bruteforce(&g)?;
        if signed != chain_sign(n)? {
            r.push(Location::Witness(format!("B_{n}")), signed, chain_sign(n)?, "path signature");
        }
    }
    let b5 = chain_poly(5)?;
    if b5[3..] != [1, 3, 1] {
        r.push(Location::Witness("B_5(x)".into()), json!([1, 3, 1]), json!(b5[3..]), "forest counts");
    }

    // Σ B_n(x) t^n times (1 − x t − x t²) must be x t. Outer degree is t, inner is x.
    let d = CHAIN_GF_DEGREE;
    let mut generating = BivariateSeries::zero(d, d);
    for n in 1..=d {
        for (power, &c) in chain_poly(n)?.iter().enumerate() {
            generating.add_term(c as i64, n, power);
        }
    }
    let mut denominator = BivariateSeries::one(d, d);
    denominator.add_term(-1, 1, 1);
    denominator.add_term(-1, 2, 1);
    let numerator = BivariateSeries::monomial(1, 1, 1, d, d);
    r.compare_bivariate("x t / (1 - x t - x t^2)", &numerator, &(&generating * &denominator));

    r.count("chains", max_n as u64).count("brute_forced", brute_max as u64);
    Ok(r.finish())
}

/// Injected faults for the signature negative control.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignaturePerturbation {
    None,
    FlipClosedSign,
}

pub fn check_signature_consistency(max_weight: usize, budget: usize) -> Result<Report> {
    check_signature_consistency_with(max_weight, budget, SignaturePerturbation::None)
}

struct Disagreement {
    partition: String,
    brute: i64,
    other: i64,
    route: &'static str,
}

/// Brute force, component product and mod-3 closed form on every neighborly
/// partition up to `max_weight`.
pub fn check_signature_consistency_with(
    max_weight: usize,
    budget: usize,
    perturbation: SignaturePerturbation,
) -> Result<Report> {
    let mut r = Report::new("signatures");
    r.param("max_weight", max_weight);
    if perturbation != SignaturePerturbation::None {
        r.param("perturbation", "flip-closed-sign");
    }
    let shards: Vec<(usize, usize, Vec<Disagreement>)> = (0..=max_weight as u32)
        .into_par_iter()
        .map(|w| {
            let mut out = Vec::new();
            let all = neighborly_of_weight(w);
            let mut zero = 0;
            for p in &all {
                let g = build_graph(p);
                let brute = signature_bruteforce(&g)?;
                let mut closed = signature_closed(&g).0;
                if perturbation == SignaturePerturbation::FlipClosedSign {
                    closed = -closed;
                }
                let product = signature_by_components(&g);
                if brute == 0 {
                    zero += 1;
                }
                for (route, value) in [("closed form", closed), ("component product", product)] {
                    if value != brute {
                        out.push(Disagreement {
                            partition: p.to_string(),
                            brute,
                            other: value,
                            route,
                        });
                    }
                }
            }
            Ok((all.len(), zero, out))
        })
        .collect::<Result<_>>()?;
    let total: usize = shards.iter().map(|s| s.0).sum();
    if total > budget {
        return Err(Error::BudgetExceeded { limit: budget });
    }
    let zero: usize = shards.iter().map(|s| s.1).sum();
    for d in shards.into_iter().flat_map(|s| s.2) {
        r.push(Location::Witness(d.partition), d.brute, d.other, d.route);
    }
    r.count("neighborly", total as u64)
        .count("zero_signature", zero as u64)
        .count("admissible", (total - zero) as u64);
    Ok(r.finish())
}

/// The partition whose 5-edge chain loses its third edge 4 ↔ 5.
fn pruning_example() -> NeighborlyPartition {
    NeighborlyPartition::new(vec![1, 2, 3, 4, 5, 6, 7], vec![1, 3, 6]).expect("valid example")
}

/// Pruned-edge parity, the six component shapes and equal deletion counts
/// under both deletion rules, for every admissible partition up to `max_weight`.
pub fn check_prune_consistency(max_weight: usize, budget: usize) -> Result<Report> {
    let mut r = Report::new("prune");
    r.param("max_weight", max_weight);
    let catalog = Catalog::build(max_weight, DeletionRule::Literal, budget)?;
    let mut cases: Vec<NeighborlyPartition> = catalog.entries.iter().map(|e| e.partition.clone()).collect();
    cases.push(pruning_example());
    for p in &cases {
        let g = build_graph(p);
        let witness = || Location::Witness(p.to_string());
        let expected = sign(p)?;
        let mut deletion_counts = Vec::new();
        for rule in [DeletionRule::Literal, DeletionRule::ExampleConsistent] {
            let pg = prune(&g, rule)?;
            let parity = if pg.edge_count % 2 == 0 { 1 } else { -1 };
            if parity != expected {
                r.push(witness(), expected, parity, "(-1)^edges(G')");
            }
            match classify_components(&pg) {
                Ok(types) if rule == DeletionRule::Literal => {
                    for t in types {
                        r.bump(&format!("type {}", t.pattern()));
                    }
                }
                Ok(_) => {}
                Err(e) => r.push(witness(), "six types", e.to_string(), "component shapes"),
            }
            for ch in &pg.chains {
                if (ch.kept() % 2 == 1) != (ch.length % 3 == 1) {
                    r.push(witness(), ch.length as u64, ch.kept() as u64, "kept-edge parity per chain");
                }
            }
            deletion_counts.push(pg.chains.iter().map(|c| c.deleted.len()).collect::<Vec<_>>());
        }
        if deletion_counts[0] != deletion_counts[1] {
            r.push(witness(), json!(deletion_counts[0]), json!(deletion_counts[1]), "deletion counts per chain");
        }
    }
    let example = pruning_example();
    let sig = crate::signatures::sig_multiset(&build_graph(&example)).elements;
    if sig != [1, 4, 5, 2] {
        r.push(Location::Witness(example.to_string()), json!([1, 4, 5, 2]), json!(sig), "worked example SIG");
    }
    r.count("neighborly", catalog.neighborly_count as u64)
        .count("admissible", catalog.entries.len() as u64)
        .count("extra_cases", 1);
    Ok(r.finish())
}

fn expected_weight_eight() -> (Vec<NeighborlyPartition>, Vec<NeighborlyPartition>) {
    let np = |a: &[u32], b: &[u32]| NeighborlyPartition::new(a.to_vec(), b.to_vec()).expect("valid");
    let mut positive = vec![np(&[2, 3], &[3]), np(&[1, 3], &[1, 3])];
    let mut negative = vec![np(&[4], &[4]), np(&[1, 2, 3], &[2])];
    positive.sort();
    negative.sort();
    (positive, negative)
}

/// Enumerated signed sum against the (2,3,5 mod 5) product and both sum forms.
pub fn check_rr1(max_weight: usize, budget: usize) -> Result<Report> {
    let catalog = Catalog::build(max_weight, DeletionRule::Literal, budget)?;
    check_rr1_against(&catalog, &rr1_product(max_weight), budget)
}

fn check_rr1_against(catalog: &Catalog, product: &Series, _budget: usize) -> Result<Report> {
    let max_weight = catalog.max_weight;
    let mut r = Report::new("rr1");
    r.param("max_weight", max_weight).param("min_part", 1);
    let enumerated = catalog.signed_sum(1);
    r.compare("product (q^2,q^3,q^5;q^5)", product, &enumerated);
    r.compare("bilateral sum", &rr1_bilateral(max_weight), &enumerated);
    r.compare("one-sided sum", &rr1_one_sided(max_weight), &enumerated);

    if max_weight >= 8 {
        let w8: Vec<_> = catalog.entries.iter().filter(|e| e.weight == 8).collect();
        let mut positive: Vec<_> = w8.iter().filter(|e| e.sign > 0).map(|e| e.partition.clone()).collect();
        let mut negative: Vec<_> = w8.iter().filter(|e| e.sign < 0).map(|e| e.partition.clone()).collect();
        positive.sort();
        negative.sort();
        let (want_pos, want_neg) = expected_weight_eight();
        let names = |v: &[NeighborlyPartition]| json!(v.iter().map(ToString::to_string).collect::<Vec<_>>());
        if positive != want_pos {
            r.push(Location::Exponent(8), names(&want_pos), names(&positive), "positive admissible partitions");
        }
        if negative != want_neg {
            r.push(Location::Exponent(8), names(&want_neg), names(&negative), "negative admissible partitions");
        }
        r.count("weight8_positive", positive.len() as u64)
            .count("weight8_negative", negative.len() as u64);
    }
    r.count("neighborly", catalog.neighborly_count as u64)
        .count("admissible", catalog.entries.len() as u64);
    r.series = Some(enumerated);
    Ok(r.finish())
}

/// Signed sum without parts of size 1 against the (4,5,6 mod 5) product and its sum form.
pub fn check_rr2(max_weight: usize, budget: usize) -> Result<Report> {
    let catalog = Catalog::build(max_weight, DeletionRule::Literal, budget)?;
    let mut r = Report::new("rr2");
    r.param("max_weight", max_weight).param("min_part", 2);
    let enumerated = catalog.signed_sum(2);
    r.compare("product (q^4,q^5,q^6;q^5)", &rr2_product(max_weight), &enumerated);
    r.compare("sum form", &rr2_sum(max_weight), &enumerated);
    let counted = catalog
        .entries
        .iter()
        .filter(|e| e.partition.smallest_part().is_none_or(|p| p >= 2))
        .count();
    r.count("neighborly", catalog.neighborly_count as u64)
        .count("admissible_min_part_2", counted as u64);
    r.series = Some(enumerated);
    Ok(r.finish())
}

/// Enumerated GF_n against the GF recurrence, the H recurrence and the
/// x^n slice of the explicit bivariate form.
pub fn check_gf(n_max: usize, max_weight: usize, budget: usize) -> Result<Report> {
    let mut r = Report::new("gf");
    r.param("n_max", n_max)
        .param("max_weight", max_weight)
        .param("base_convention", "GF_0 = 1, GF_n = 0 for n < 0");
    let catalog = Catalog::build(max_weight, DeletionRule::Literal, budget)?;
    let gf = gf_sequence(n_max, max_weight)?;
    let h = h_recurrence_sequence(n_max, max_weight)?;
    let rhs = main_theorem_rhs(n_max, max_weight);
    for n in 0..=n_max {
        let enumerated = catalog.by_parts(n);
        let routes = [
            ("GF_n recurrence", &gf[n]),
            ("H_n recurrence", &h[n]),
            ("explicit x^n slice", rhs.coeff_x(n)?),
        ];
        for (route, closed) in routes {
            for (e, want, got) in closed.mismatches(&enumerated) {
                r.push(Location::Bivariate([n, e]), want, got, route);
            }
        }
    }
    // Every admissible partition lands in exactly one part-count stratum.
    let max_parts = catalog.entries.iter().map(|e| e.parts).max().unwrap_or(0);
    let strata = (0..=max_parts).fold(Series::zero(max_weight), |acc, n| &acc + &catalog.by_parts(n));
    r.compare("sum over part counts", &catalog.signed_sum(1), &strata);
    r.count("admissible", catalog.entries.len() as u64)
        .count("max_parts", max_parts as u64);
    Ok(r.finish())
}

pub fn check_functional(x_order: usize, q_order: usize) -> Result<Report> {
    let mut r = Report::new("functional");
    r.param("x_order", x_order).param("q_order", q_order);
    let residual = functional_equation_residual(x_order, q_order);
    r.compare_bivariate("residual", &BivariateSeries::zero(x_order, q_order), &residual);
    Ok(r.finish())
}

/// Classical product-sum form against the explicit form, and the x = 1
/// specialization against the first product and the enumeration.
pub fn check_classical(x_order: usize, q_order: usize, budget: usize) -> Result<Report> {
    let mut r = Report::new("classical");
    r.param("x_order", x_order).param("q_order", q_order);
    r.compare_bivariate("classical form", &classical_lhs(x_order, q_order), &main_theorem_rhs(x_order, q_order));
    let at_one = main_theorem_at_x_one(q_order);
    r.compare("x = 1 vs product", &rr1_product(q_order), &at_one);
    let catalog = Catalog::build(q_order, DeletionRule::Literal, budget)?;
    r.compare("x = 1 vs enumeration", &catalog.signed_sum(1), &at_one);
    r.param("x_window_for_specialization", crate::identities::main_theorem_x_window(q_order));
    r.series = Some(at_one);
    Ok(r.finish())
}

/// Buckets by (vertices, pruned edges) against the refined closed forms.
///
/// The odd case is evaluated under both sign conventions; mismatches are
/// reported against `convention`, and `matching_convention` records which
/// one agrees with enumeration.
pub fn check_edgevertex(
    max_weight: usize,
    max_vertices: usize,
    convention: OddSignConvention,
    rule: DeletionRule,
    budget: usize,
) -> Result<Report> {
    let mut r = Report::new("edgevertex");
    r.param("max_weight", max_weight)
        .param("max_vertices", max_vertices)
        .param("sign_convention", convention.label())
        .param("deletion_rule", serde_json::to_value(rule).expect("serializable"));
    let catalog = Catalog::build(max_weight, rule, budget)?;
    let buckets = catalog.buckets();
    let zero = Series::zero(max_weight);
    let bucket = |v: usize, e: usize| buckets.get(&(v, e)).unwrap_or(&zero);
    let mut covered = Vec::new();
    let mut matches = [(OddSignConvention::Printed, true), (OddSignConvention::Empirical, true)];
    let mut compared = 0u64;

    for v in 2..=max_vertices {
        let n = v / 2;
        if v % 2 == 0 {
            for j in 0..=n / 2 {
                let closed = edgevertex_even(n, j, max_weight)?;
                for (e, want, got) in closed.mismatches(bucket(v, n + j)) {
                    r.push(Location::Bivariate([v, e]), want, got, &format!("even n={n} j={j}"));
                }
                covered.push((v, n + j));
                compared += 1;
            }
        } else {
            for j in (0..n).take_while(|j| 2 * j < n) {
                for (conv, ok) in matches.iter_mut() {
                    let closed = edgevertex_odd(n, j, max_weight, *conv)?;
                    let diffs = closed.mismatches(bucket(v, n + j + 1));
                    *ok &= diffs.is_empty();
                    if *conv == convention {
                        for (e, want, got) in diffs {
                            r.push(Location::Bivariate([v, e]), want, got, &format!("odd n={n} j={j}"));
                        }
                    }
                }
                covered.push((v, n + j + 1));
                compared += 1;
            }
        }
    }
    for (&(v, e), s) in &buckets {
        if (2..=max_vertices).contains(&v) && !covered.contains(&(v, e)) && !s.is_zero() {
            r.push(Location::Witness(format!("bucket ({v},{e})")), 0, s.coefficient_sum(), "no refined formula");
        }
    }
    let matching: Vec<&str> = matches.iter().filter(|(_, ok)| *ok).map(|(c, _)| c.label()).collect();
    let label = match matching.as_slice() {
        [one] => *one,
        [] => "none",
        _ => "both",
    };
    r.param("matching_convention", label);
    if matching.len() != 1 {
        r.push(Location::Witness("odd sign convention".into()), "exactly one", label, "convention uniqueness");
    }
    r.count("buckets_compared", compared)
        .count("admissible", catalog.entries.len() as u64);
    Ok(r.finish())
}

/// Deliberately broken checks must fail with a located witness.
pub fn check_negative_controls(
    signature_weight: usize,
    x_order: usize,
    q_order: usize,
    budget: usize,
) -> Result<Report> {
    let mut r = Report::new("controls");
    let flipped = check_signature_consistency_with(signature_weight, budget, SignaturePerturbation::FlipClosedSign)?;

    let catalog = Catalog::build(q_order, DeletionRule::Literal, budget)?;
    let wrong_product = infinite_product(&[2, 3, 4], 5, q_order)?;
    let perturbed_rr1 = check_rr1_against(&catalog, &wrong_product, budget)?;

    let mut dropped = Report::new("functional");
    dropped.compare_bivariate(
        "residual without qx term",
        &BivariateSeries::zero(x_order, q_order),
        &functional_equation_residual_with(x_order, q_order, FunctionalTerms { include_qx_term: false }),
    );
    let dropped = dropped.finish();

    for (name, control) in [
        ("flipped_closed_sign", &flipped),
        ("perturbed_rr1_product", &perturbed_rr1),
        ("dropped_qx_term", &dropped),
    ] {
        match control.first_mismatch() {
            Some(m) if !control.passed() => {
                r.param(&format!("{name}_witness"), m.location.to_string());
                r.count(
                    &format!("{name}_mismatches"),
                    control.counts.get("mismatches_total").copied().unwrap_or(0),
                );
            }
            _ => r.push(Location::Witness(name.to_string()), "FAIL", control.status.to_string(), "negative control"),
        }
    }
    Ok(r.finish())
}
