//! Exhaustive-enumeration oracles and the checks that confront them with
//! the closed forms in [`crate::identities`].
//!
//! Enumeration is sharded by weight and run in parallel; shards are merged
//! in weight order so every report is deterministic.

mod checks;
mod report;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identities::OddSignConvention;
use crate::partitions::{neighborly_of_weight, NeighborlyPartition, DEFAULT_ENUMERATION_BUDGET};
use crate::qseries::Series;
use crate::signatures::{build_graph, prune, signature_closed, DeletionRule};

pub use checks::{
    check_chain_signatures, check_classical, check_edgevertex, check_functional, check_gf,
    check_negative_controls, check_prune_consistency, check_rr1, check_rr2,
    check_signature_consistency, check_signature_consistency_with, SignaturePerturbation,
};
pub use report::{Location, Mismatch, Report, Status, MAX_LISTED_MISMATCHES};

/// One admissible partition with everything the checks aggregate over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibleEntry {
    pub partition: NeighborlyPartition,
    pub weight: usize,
    pub parts: usize,
    pub sign: i64,
    pub sig: Vec<u32>,
    pub pruned_edges: usize,
}

/// All admissible partitions up to a weight, plus how many neighborly
/// partitions were scanned to find them.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub max_weight: usize,
    pub neighborly_count: usize,
    pub entries: Vec<AdmissibleEntry>,
}

impl Catalog {
    pub fn build(max_weight: usize, rule: DeletionRule, budget: usize) -> Result<Self> {
        let shards: Vec<(usize, Vec<AdmissibleEntry>)> = (0..=max_weight as u32)
            .into_par_iter()
            .map(|w| {
                let all = neighborly_of_weight(w);
                let total = all.len();
                let entries = all
                    .into_iter()
                    .filter_map(|p| {
                        let g = build_graph(&p);
                        let (sign, diag) = signature_closed(&g);
                        if diag.zero_flag {
                            return None;
                        }
                        let pruned = prune(&g, rule).expect("admissible chains prune");
                        Some(AdmissibleEntry {
                            weight: w as usize,
                            parts: p.part_count(),
                            sign,
                            sig: crate::signatures::sig_multiset(&g).elements,
                            pruned_edges: pruned.edge_count,
                            partition: p,
                        })
                    })
                    .collect();
                (total, entries)
            })
            .collect();
        let neighborly_count = shards.iter().map(|(n, _)| n).sum();
        if neighborly_count > budget {
            return Err(Error::BudgetExceeded { limit: budget });
        }
        Ok(Self {
            max_weight,
            neighborly_count,
            entries: shards.into_iter().flat_map(|(_, e)| e).collect(),
        })
    }

    fn signed<'a>(&self, entries: impl Iterator<Item = &'a AdmissibleEntry>) -> Series {
        let mut s = Series::zero(self.max_weight);
        for e in entries {
            s.add_term(e.sign, e.weight);
        }
        s
    }

    pub fn signed_sum(&self, min_part: u32) -> Series {
        self.signed(
            self.entries
                .iter()
                .filter(|e| e.partition.smallest_part().is_none_or(|p| p >= min_part)),
        )
    }

    pub fn by_parts(&self, n_parts: usize) -> Series {
        self.signed(self.entries.iter().filter(|e| e.parts == n_parts))
    }

    /// Signed sums keyed by (vertex count, pruned edge count).
    pub fn buckets(&self) -> BTreeMap<(usize, usize), Series> {
        let mut out: BTreeMap<(usize, usize), Series> = BTreeMap::new();
        for e in &self.entries {
            out.entry((e.parts, e.pruned_edges))
                .or_insert_with(|| Series::zero(self.max_weight))
                .add_term(e.sign, e.weight);
        }
        out
    }
}

/// Σ sign(λ) q^{|λ|} over admissible λ with every part `>= min_part`.
pub fn signed_sum(max_weight: usize, min_part: u32) -> Result<Series> {
    if min_part == 0 {
        return Err(Error::InvalidArgument("min_part must be >= 1".into()));
    }
    Ok(Catalog::build(max_weight, DeletionRule::Literal, DEFAULT_ENUMERATION_BUDGET)?.signed_sum(min_part))
}

/// Signed sum over admissible λ with exactly `n_parts` parts.
pub fn gf_by_parts(n_parts: usize, max_weight: usize) -> Result<Series> {
    Ok(Catalog::build(max_weight, DeletionRule::Literal, DEFAULT_ENUMERATION_BUDGET)?.by_parts(n_parts))
}

pub fn edgevertex_buckets(max_weight: usize) -> Result<BTreeMap<(usize, usize), Series>> {
    Ok(Catalog::build(max_weight, DeletionRule::Literal, DEFAULT_ENUMERATION_BUDGET)?.buckets())
}

/// The checks [`run_all`] knows how to run, in exit-code order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Chains,
    Signatures,
    Prune,
    Rr1,
    Rr2,
    Gf,
    Functional,
    Classical,
    Edgevertex,
    Controls,
}

impl CheckKind {
    pub const ALL: [CheckKind; 10] = [
        CheckKind::Chains,
        CheckKind::Signatures,
        CheckKind::Prune,
        CheckKind::Rr1,
        CheckKind::Rr2,
        CheckKind::Gf,
        CheckKind::Functional,
        CheckKind::Classical,
        CheckKind::Edgevertex,
        CheckKind::Controls,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Chains => "chains",
            CheckKind::Signatures => "signatures",
            CheckKind::Prune => "prune",
            CheckKind::Rr1 => "rr1",
            CheckKind::Rr2 => "rr2",
            CheckKind::Gf => "gf",
            CheckKind::Functional => "functional",
            CheckKind::Classical => "classical",
            CheckKind::Edgevertex => "edgevertex",
            CheckKind::Controls => "controls",
        }
    }

    /// 1-based position in [`CheckKind::ALL`].
    pub fn ordinal(self) -> u8 {
        CheckKind::ALL.iter().position(|&k| k == self).unwrap() as u8 + 1
    }

    pub fn from_name(name: &str) -> Option<Self> {
        CheckKind::ALL.into_iter().find(|k| k.name() == name)
    }
}

/// Sizes and switches shared by all checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunParams {
    pub chain_max: usize,
    pub chain_brute_max: usize,
    pub signature_weight: usize,
    pub prune_weight: usize,
    pub max_weight: usize,
    pub gf_parts: usize,
    pub x_order: usize,
    pub q_order: usize,
    pub max_vertices: usize,
    pub odd_convention: OddSignConvention,
    pub deletion_rule: DeletionRule,
    pub budget: usize,
}

impl Default for RunParams {
    fn default() -> Self {
        Self {
            chain_max: 60,
            chain_brute_max: 15,
            signature_weight: 20,
            prune_weight: 25,
            max_weight: 30,
            gf_parts: 12,
            x_order: 8,
            q_order: 25,
            max_vertices: 12,
            odd_convention: OddSignConvention::Empirical,
            deletion_rule: DeletionRule::Literal,
            budget: DEFAULT_ENUMERATION_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RunConfig {
    pub checks: Vec<CheckKind>,
    pub params: RunParams,
}

impl RunConfig {
    /// Every check with default sizes.
    pub fn all() -> Self {
        Self {
            checks: CheckKind::ALL.to_vec(),
            params: RunParams::default(),
        }
    }
}

pub fn run_check(kind: CheckKind, p: &RunParams) -> Result<Report> {
    let start = Instant::now();
    let mut report = match kind {
        CheckKind::Chains => check_chain_signatures(p.chain_max, p.chain_brute_max)?,
        CheckKind::Signatures => check_signature_consistency(p.signature_weight, p.budget)?,
        CheckKind::Prune => check_prune_consistency(p.prune_weight, p.budget)?,
        CheckKind::Rr1 => check_rr1(p.max_weight, p.budget)?,
        CheckKind::Rr2 => check_rr2(p.max_weight, p.budget)?,
        CheckKind::Gf => check_gf(p.gf_parts, p.max_weight, p.budget)?,
        CheckKind::Functional => check_functional(p.x_order, p.q_order)?,
        CheckKind::Classical => check_classical(p.x_order, p.q_order, p.budget)?,
        CheckKind::Edgevertex => check_edgevertex(
            p.max_weight,
            p.max_vertices,
            p.odd_convention,
            p.deletion_rule,
            p.budget,
        )?,
        CheckKind::Controls => check_negative_controls(p.signature_weight, p.x_order, p.q_order, p.budget)?,
    };
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Runs every configured check; reports come back in configuration order.
pub fn run_all(config: &RunConfig) -> Result<Vec<Report>> {
    config
        .checks
        .par_iter()
        .map(|&k| run_check(k, &config.params))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sparse(terms: &[(usize, i64)], order: usize) -> Series {
        Series::from_terms(terms.iter().map(|&(e, c)| (c, e)), order)
    }

    #[test]
    fn signed_sum_examples() {
        assert_eq!(
            signed_sum(12, 1).unwrap(),
            sparse(&[(0, 1), (2, -1), (3, -1), (9, 1), (11, 1)], 12)
        );
        assert_eq!(signed_sum(12, 2).unwrap(), sparse(&[(0, 1), (4, -1), (5, -1), (6, -1)], 12));
        assert!(signed_sum(5, 0).is_err());
    }

    #[test]
    fn weight_eight_cancels_two_against_two() {
        let cat = Catalog::build(8, DeletionRule::Literal, DEFAULT_ENUMERATION_BUDGET).unwrap();
        let w8: Vec<_> = cat.entries.iter().filter(|e| e.weight == 8).collect();
        assert_eq!(w8.len(), 4);
        assert_eq!(w8.iter().filter(|e| e.sign > 0).count(), 2);
        assert_eq!(cat.signed_sum(1).coeff(8), Some(0));
    }

    #[test]
    fn gf_by_parts_examples() {
        assert_eq!(gf_by_parts(0, 10).unwrap(), Series::one(10));
        assert!(gf_by_parts(1, 10).unwrap().is_zero());
        let expect = Series::from_terms((2..=10).map(|e| (-1, e)), 10);
        assert_eq!(gf_by_parts(2, 10).unwrap(), expect);
    }

    #[test]
    fn bucket_examples() {
        let b = edgevertex_buckets(12).unwrap();
        assert_eq!(b[&(2, 1)], Series::from_terms((2..=12).map(|e| (-1, e)), 12));
        assert_eq!(b[&(3, 2)], Series::from_terms((4..=12).map(|e| (1, e)), 12));
        assert!(b.keys().all(|&(v, _)| v != 1));
        assert_eq!(b[&(0, 0)], Series::one(12));
        let total = b.values().fold(Series::zero(12), |a, s| &a + s);
        assert_eq!(total, signed_sum(12, 1).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        assert_eq!(
            Catalog::build(10, DeletionRule::Literal, 3).err(),
            Some(Error::BudgetExceeded { limit: 3 })
        );
    }

    #[test]
    fn check_kind_names_round_trip() {
        for k in CheckKind::ALL {
            assert_eq!(CheckKind::from_name(k.name()), Some(k));
        }
        assert_eq!(CheckKind::Chains.ordinal(), 1);
        assert_eq!(CheckKind::Controls.ordinal(), 10);
    }

    #[test]
    fn empty_config_runs_nothing() {
        assert!(run_all(&RunConfig::default()).unwrap().is_empty());
    }
}
