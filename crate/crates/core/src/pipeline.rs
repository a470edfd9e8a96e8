//! End-to-end run over the catalog: spectra, image set certification,
//! Cayley graph checks, isomorphism classes and automorphism orders.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{self, CatalogEntry};
use crate::designs::{image_pds, predicted_params, verify_design, DesignKind, PdsParams};
use crate::graphs::{
    automorphism_order, cayley_graph, fingerprint, is_isomorphic, rank2, verify_srg, Budget, CayleyGraph,
    GraphFingerprint, IsoOutcome,
};
use crate::spectra::{differential_spectrum, walsh, walsh_power_sum_check, ZdbClass};

#[derive(Debug, Error)]
#[error("entry {number}, stage {stage}: {msg}")]
pub struct PipelineError {
    pub number: usize,
    pub stage: &'static str,
    pub msg: String,
}

#[derive(Clone, Copy, Debug)]
pub struct Table1Options {
    pub skip_aut: bool,
    pub iso_budget_secs: f64,
    pub aut_budget_secs: f64,
}

impl Default for Table1Options {
    fn default() -> Self {
        Table1Options { skip_aut: true, iso_budget_secs: 600.0, aut_budget_secs: 7200.0 }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", content = "order")]
pub enum AutStatus {
    Skipped,
    Undecided,
    Computed(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Row {
    pub number: usize,
    pub delta: u32,
    pub zdb: ZdbClass,
    pub walsh_values: Vec<i64>,
    pub power_sums_hold: bool,
    pub pds: PdsParams,
    pub char_values: Vec<i64>,
    pub srg: bool,
    pub rank2: usize,
    pub fingerprint: GraphFingerprint,
    pub class_id: usize,
    pub aut: AutStatus,
    pub expected_aut: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairResult {
    pub a: usize,
    pub b: usize,
    /// `fingerprint`, `isomorphic`, `non-isomorphic` or `undecided`
    pub verdict: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Report {
    pub rows: Vec<Table1Row>,
    pub partition: Vec<Vec<usize>>,
    pub pairs: Vec<PairResult>,
    pub undecided_pairs: usize,
    /// the `u = 1` cyclotomic graph against each class, by smallest member
    pub cyclotomic_matches: Vec<usize>,
    pub cyclotomic_undecided: bool,
    pub timing_ms: BTreeMap<&'static str, u128>,
}

impl Table1Report {
    pub fn class_count(&self) -> usize {
        self.partition.len()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>3}  {:>5}  {:<8}  {:<18}  {:<20}  {:>4}  {:>5}  {:>5}  {:<12}  {:>8}",
            "No.", "Δ_F", "ZDB", "Walsh values", "PDS", "SRG", "rank", "class", "|Aut|", "expected"
        );
        for r in &self.rows {
            let aut = match &r.aut {
                AutStatus::Skipped => "skipped".to_string(),
                AutStatus::Undecided => "undecided".to_string(),
                AutStatus::Computed(o) => o.clone(),
            };
            let walsh = r.walsh_values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
            let _ = writeln!(
                out,
                "{:>3}  {:>5}  {:<8}  {:<18}  {:<20}  {:>4}  {:>5}  {:>5}  {:<12}  {:>8}",
                r.number,
                r.delta,
                r.zdb.label(),
                walsh,
                r.pds.to_string(),
                if r.srg { "yes" } else { "no" },
                r.rank2,
                r.class_id,
                aut,
                r.expected_aut
            );
        }
        let classes: Vec<String> = self
            .partition
            .iter()
            .map(|c| format!("{{{}}}", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        let _ = writeln!(out, "classes ({}): {}", self.partition.len(), classes.join(" "));
        let _ = writeln!(out, "undecided pairs: {}", self.undecided_pairs);
        let _ = writeln!(out, "cyclotomic graph isomorphic to class of: {:?}", self.cyclotomic_matches);
        out
    }
}

struct Built {
    entry: CatalogEntry,
    row: Table1Row,
    graph: CayleyGraph,
}

fn stage_err(number: usize, stage: &'static str, msg: impl ToString) -> PipelineError {
    PipelineError { number, stage, msg: msg.to_string() }
}

fn build_entry(entry: CatalogEntry, params: PdsParams) -> Result<Built, PipelineError> {
    let n = entry.number;
    let ctx = catalog::field();
    let table = entry.parse(&ctx).map_err(|e| stage_err(n, "parse", e))?.evaluate();
    let spec = differential_spectrum(&table);
    let zdb = spec.classification();
    let w = walsh(&table);
    let walsh_values: Vec<i64> =
        w.int_value_set().ok_or_else(|| stage_err(n, "walsh", "non-integral value"))?.into_iter().collect();
    let power_sums_hold = walsh_power_sum_check(&w, 2).holds();
    let d = image_pds(&table).map_err(|e| stage_err(n, "image", e))?;
    let cert = verify_design(&ctx, &d, params, DesignKind::Pds).map_err(|e| stage_err(n, "design", e))?;
    let char_values: BTreeSet<i64> = cert.char_values.keys().filter_map(|c| c.as_integer()).collect();
    let graph = cayley_graph(&ctx, &d).map_err(|e| stage_err(n, "cayley", e))?;
    let srg = verify_srg(&graph, params);
    if !srg.holds {
        return Err(stage_err(n, "srg", format!("{:?}", srg.witness)));
    }
    let row = Table1Row {
        number: n,
        delta: spec.delta_max,
        zdb,
        walsh_values,
        power_sums_hold,
        pds: params,
        char_values: char_values.into_iter().collect(),
        srg: srg.holds,
        rank2: rank2(&graph),
        fingerprint: fingerprint(&graph),
        class_id: 0,
        aut: AutStatus::Skipped,
        expected_aut: entry.aut_order,
    };
    Ok(Built { entry, row, graph })
}

fn iso_verdict(o: &IsoOutcome) -> &'static str {
    match o {
        IsoOutcome::Isomorphic(_) => "isomorphic",
        IsoOutcome::NonIsomorphic => "non-isomorphic",
        IsoOutcome::Undecided => "undecided",
    }
}

/// Runs every stage for all eighteen entries.  Pairs with different
/// fingerprints are settled without search; the rest go through the exact
/// isomorphism test.  Classes are the connected components of the
/// isomorphic pairs.
pub fn reproduce_table1(opts: Table1Options) -> Result<Table1Report, PipelineError> {
    let mut timing = BTreeMap::new();
    let t0 = Instant::now();
    let params = predicted_params(2, 1, 8).map_err(|e| stage_err(0, "predict", e))?.params;
    let mut built: Vec<Built> =
        catalog::CATALOG.par_iter().map(|e| build_entry(*e, params)).collect::<Result<_, _>>()?;
    timing.insert("build", t0.elapsed().as_millis());

    let t1 = Instant::now();
    let m = built.len();
    let pair_list: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let pairs: Vec<PairResult> = pair_list
        .par_iter()
        .map(|&(i, j)| {
            let (a, b) = (&built[i], &built[j]);
            let verdict = if a.row.fingerprint != b.row.fingerprint {
                "fingerprint"
            } else {
                match is_isomorphic(&a.graph, &b.graph, Budget::seconds(opts.iso_budget_secs)) {
                    Ok(o) => iso_verdict(&o),
                    Err(_) => "undecided",
                }
            };
            PairResult { a: a.entry.number, b: b.entry.number, verdict }
        })
        .collect();
    let mut class_of: Vec<usize> = (0..m).collect();
    for p in pairs.iter().filter(|p| p.verdict == "isomorphic") {
        let (ca, cb) = (class_of[p.a - 1], class_of[p.b - 1]);
        let (lo, hi) = (ca.min(cb), ca.max(cb));
        class_of.iter_mut().filter(|c| **c == hi).for_each(|c| *c = lo);
    }
    let mut partition: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &c) in class_of.iter().enumerate() {
        partition.entry(c).or_default().push(i + 1);
    }
    let reps: Vec<usize> = partition.keys().copied().collect();
    for (i, b) in built.iter_mut().enumerate() {
        b.row.class_id = reps.iter().position(|&r| r == class_of[i]).unwrap() + 1;
    }
    timing.insert("isomorphism", t1.elapsed().as_millis());

    let t2 = Instant::now();
    let (cctx, cd, cparams) =
        crate::designs::cyclotomic_pds(2, 4, &[0]).map_err(|e| stage_err(0, "cyclotomic", e))?;
    let cyc = cayley_graph(&cctx, &cd).map_err(|e| stage_err(0, "cyclotomic", e))?;
    if cparams != params || !verify_srg(&cyc, params).holds {
        return Err(stage_err(0, "cyclotomic", "cyclotomic set is not a (256,85,24,30) SRG"));
    }
    let cfp = fingerprint(&cyc);
    let mut cyclotomic_matches = Vec::new();
    let mut cyclotomic_undecided = false;
    for members in partition.values() {
        let rep = &built[members[0] - 1];
        if rep.row.fingerprint != cfp {
            continue;
        }
        match is_isomorphic(&cyc, &rep.graph, Budget::seconds(opts.iso_budget_secs)) {
            Ok(IsoOutcome::Isomorphic(_)) => cyclotomic_matches.push(members[0]),
            Ok(IsoOutcome::NonIsomorphic) => {}
            _ => cyclotomic_undecided = true,
        }
    }
    timing.insert("cyclotomic", t2.elapsed().as_millis());

    if !opts.skip_aut {
        let t3 = Instant::now();
        let orders: BTreeMap<usize, AutStatus> = partition
            .values()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|members| {
                let g = &built[members[0] - 1].graph;
                let status = match automorphism_order(g, Budget::seconds(opts.aut_budget_secs)) {
                    Ok(info) => AutStatus::Computed(info.order.to_string()),
                    Err(_) => AutStatus::Undecided,
                };
                (members[0], status)
            })
            .collect();
        for (i, b) in built.iter_mut().enumerate() {
            b.row.aut = orders[&partition[&class_of[i]][0]].clone();
        }
        timing.insert("automorphisms", t3.elapsed().as_millis());
    }
    timing.insert("total", t0.elapsed().as_millis());
    Ok(Table1Report {
        undecided_pairs: pairs.iter().filter(|p| p.verdict == "undecided").count(),
        rows: built.into_iter().map(|b| b.row).collect(),
        partition: partition.into_values().collect(),
        pairs,
        cyclotomic_matches,
        cyclotomic_undecided,
        timing_ms: timing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_run_without_automorphisms() {
        let r = reproduce_table1(Table1Options::default()).unwrap();
        assert_eq!(r.rows.len(), 18);
        assert!(r.rows.iter().all(|row| row.srg && row.rank2 == 256 && row.delta == 2));
        assert_eq!(r.undecided_pairs, 0);
        assert!(r.partition.contains(&vec![2, 6]) && r.partition.contains(&vec![13, 14, 17]));
        assert_eq!(r.partition, catalog::expected_partition());
        assert_eq!(r.cyclotomic_matches, vec![13]);
        assert!(r.to_text().contains("classes (15)"));
    }
}
