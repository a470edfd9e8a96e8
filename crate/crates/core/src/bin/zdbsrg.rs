//! Command-line front end.  Exit status: 0 success, 1 a verification
//! failed, 2 bad usage or unreadable input.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use zdb_srg::catalog;
use zdb_srg::constructions::{
    ccc_from_zdb, injection_space, search_newapn, search_newfun, Family, SearchHit, SearchMode,
};
use zdb_srg::designs::{difference_histogram, image_pds, predicted_params, verify_design, DesignKind, PdsParams};
use zdb_srg::graphs::{
    automorphism_order, cayley_graph, fingerprint, is_isomorphic, parse_graph, rank2, srg_parameters, verify_srg,
    write_graph, Budget, CayleyGraph, IsoOutcome,
};
use zdb_srg::pipeline::{reproduce_table1, Table1Options};
use zdb_srg::spectra::{differential_spectrum, walsh, walsh_power_sum_check, ZdbClass};
use zdb_srg::{FieldCtx, FieldSpec, FnTable, PolyFn};

const WORKERS_ENV: &str = "ZDBSRG_WORKERS";

#[derive(Parser)]
#[command(name = "zdbsrg", version, about = "ZDB functions, partial difference sets and strongly regular graphs")]
#[command(after_help = "Function references: a function file, or catalog:N (1..18).\n\
Graph references: a graph file (v=...), a function reference (image-set Cayley graph).\n\
Worker threads: set ZDBSRG_WORKERS.")]
struct Cli {
    #[arg(long, value_enum, default_value_t = OutFormat::Text, global = true)]
    out: OutFormat,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a field and print its defining block
    Field(FieldArgs),
    /// Degree, differential spectrum, ZDB class and Walsh summary
    Analyze(FnArg),
    /// Check the zero-difference profile (and the Walsh power sums)
    ZdbCheck {
        #[command(flatten)]
        f: FnArg,
        /// required δ; defaults to the observed constant
        #[arg(long)]
        delta: Option<u32>,
    },
    /// Exact Walsh spectrum
    Walsh(FnArg),
    #[command(subcommand)]
    Pds(PdsCmd),
    #[command(subcommand)]
    Srg(SrgCmd),
    /// Isomorphism test with an explicit mapping
    Iso {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// seconds
        #[arg(long, default_value_t = 600.0)]
        timeout: f64,
    },
    /// Automorphism group order
    Aut {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 7200.0)]
        timeout: f64,
    },
    #[command(subcommand)]
    Search(SearchCmd),
    /// Null space of perturbations keeping G injective on C_3
    InjectionSpace {
        #[command(flatten)]
        f: FnArg,
        #[arg(long)]
        gamma: String,
    },
    /// Constant-composition code from a ZDB function
    Ccc(FnArg),
    /// Reproduce the 18-function graph table
    Table1(Table1Args),
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Args)]
struct FnArg {
    /// function file or catalog:N
    #[arg(long = "fn")]
    func: String,
}

#[derive(Subcommand)]
enum PdsCmd {
    /// Certify image(F) \ {0}
    Verify {
        #[command(flatten)]
        f: FnArg,
        /// v,k,lambda,mu; inferred from the counts when absent
        #[arg(long)]
        params: Option<String>,
        /// treat as a difference set (λ = μ)
        #[arg(long)]
        ds: bool,
    },
    /// Parameters predicted for G(x^{p^t+1})
    Predict {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand)]
enum SrgCmd {
    /// Cayley graph of image(F) \ {0}
    Build {
        #[command(flatten)]
        f: FnArg,
        /// write the graph file here
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// Strong regularity, 2-rank and invariants of a graph
    Verify {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        params: Option<String>,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    n: u32,
    /// number of random triples; exhaustive when absent
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// only sample triples satisfying the closed-form condition
    #[arg(long)]
    conditioned: bool,
    /// cap on exhaustive triples
    #[arg(long)]
    budget: Option<u64>,
    /// print at most this many hits
    #[arg(long, default_value_t = 20)]
    show: usize,
}

#[derive(Subcommand)]
enum SearchCmd {
    /// x^3 + αTr(βx^3 + γx^9) permutation / APN sweep
    Newapn(SearchArgs),
    /// x^{p+1} + αTr(βx^{p+1} + γx^{p^3+1}) ZDB sweep
    Newfun(SearchArgs),
}

#[derive(Args)]
struct Table1Args {
    /// compute automorphism orders (slow)
    #[arg(long, conflicts_with = "skip_aut")]
    with_aut: bool,
    /// default behaviour, kept for explicitness
    #[arg(long)]
    skip_aut: bool,
    #[arg(long, default_value_t = 600.0)]
    iso_timeout: f64,
    #[arg(long, default_value_t = 7200.0)]
    aut_timeout: f64,
    /// write the report to this path (suffix .report.json / .report.txt added)
    #[arg(long)]
    report: Option<PathBuf>,
}

struct Outcome {
    ok: bool,
    json: Value,
    text: String,
    /// input file that receives `.report.*` next to it
    source: Option<PathBuf>,
}

#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<Outcome, UsageError>;

fn outcome(ok: bool, json: Value, text: String) -> Outcome {
    Outcome { ok, json, text, source: None }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable report")
}

struct LoadedFn {
    poly: PolyFn,
    source: Option<PathBuf>,
    label: String,
}

fn load_fn(reference: &str) -> Result<LoadedFn, UsageError> {
    if let Some(num) = reference.strip_prefix("catalog:") {
        let number: usize = num.parse().map_err(|_| UsageError(format!("bad catalog number {num:?}")))?;
        let entry = catalog::get(number).ok_or_else(|| UsageError(format!("catalog has entries 1..18, not {number}")))?;
        let poly = entry.parse(&catalog::field())?;
        return Ok(LoadedFn { poly, source: None, label: reference.to_string() });
    }
    let text = std::fs::read_to_string(reference).map_err(|e| UsageError(format!("{reference}: {e}")))?;
    let poly = PolyFn::parse_file(&text)?;
    Ok(LoadedFn { poly, source: Some(PathBuf::from(reference)), label: reference.to_string() })
}

fn load_graph(reference: &str) -> Result<(CayleyGraph, Option<PathBuf>), UsageError> {
    if !reference.starts_with("catalog:") {
        let text = std::fs::read_to_string(reference).map_err(|e| UsageError(format!("{reference}: {e}")))?;
        if text.trim_start().starts_with("v=") {
            return Ok((parse_graph(&text)?, Some(PathBuf::from(reference))));
        }
    }
    let f = load_fn(reference)?;
    let ctx = f.poly.ctx().clone();
    let d = image_pds(&f.poly.evaluate())?;
    Ok((cayley_graph(&ctx, &d)?, f.source))
}

fn parse_params(s: &str) -> Result<PdsParams, UsageError> {
    let v: Vec<u64> = s
        .split(',')
        .map(|x| x.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| UsageError(format!("expected v,k,lambda,mu, got {s:?}")))?;
    match v[..] {
        [a, b, c, d] => Ok(PdsParams::new(a, b, c, d)),
        [a, b, c] => Ok(PdsParams::ds(a, b, c)),
        _ => Err(UsageError(format!("expected v,k,lambda,mu, got {s:?}"))),
    }
}

/// `[1, 4, 4, 0]` as `[1, 4^2, 0]`.
fn runs(v: &[usize]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < v.len() {
        let j = (i..v.len()).find(|&j| v[j] != v[i]).unwrap_or(v.len());
        parts.push(if j - i == 1 { v[i].to_string() } else { format!("{}^{}", v[i], j - i) });
        i = j;
    }
    format!("[{}]", parts.join(", "))
}

fn set_text(values: &[i64]) -> String {
    format!("{{{}}}", values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "))
}

fn cmd_field(a: FieldArgs) -> CmdResult {
    let spec = match (a.preset, a.p, a.n) {
        (Some(name), _, _) => FieldSpec::preset(&name).ok_or_else(|| UsageError(format!("unknown preset {name:?}")))?,
        (None, Some(p), Some(n)) => FieldCtx::build_default(p, n)?.spec().clone(),
        _ => return Err(UsageError("give --preset NAME or both --p and --n".into())),
    };
    let ctx = FieldCtx::build(spec)?;
    let block = ctx.spec().to_block();
    let json = json!({ "p": ctx.p(), "n": ctx.n(), "q": ctx.q(), "modulus": ctx.spec().modulus, "block": block });
    Ok(outcome(true, json, format!("{block}q={}\n", ctx.q())))
}

fn cmd_analyze(f: FnArg) -> CmdResult {
    let lf = load_fn(&f.func)?;
    let t = lf.poly.evaluate();
    let deg = lf.poly.degree_info();
    let spec = differential_spectrum(&t);
    let w = walsh(&t);
    let int_set = w.int_value_set();
    let mut text = format!(
        "function: {}\nalgebraic degree: {}\nΔ_F = {}\ndifferential histogram: {:?}\nZDB class: {}\npermutation: {}\n",
        lf.label,
        deg.degree,
        spec.delta_max,
        spec.histogram,
        spec.classification().label(),
        t.is_permutation()
    );
    let walsh_json = match &int_set {
        Some(s) => {
            let v: Vec<i64> = s.iter().copied().collect();
            text.push_str(&format!("Walsh values: {}\n", set_text(&v)));
            if let Some(nl) = w.nonlinearity() {
                text.push_str(&format!("nonlinearity: {nl}\n"));
            }
            json!(v)
        }
        None => {
            let v: Vec<String> = w.value_set().iter().map(|c| c.to_string()).collect();
            text.push_str(&format!("Walsh values: {} distinct cyclotomic values\n", v.len()));
            json!(v)
        }
    };
    let json = json!({
        "function": lf.label, "text": lf.poly.to_text(), "degree": deg.degree,
        "delta": spec.delta_max, "spectrum": spec, "zdb": spec.classification(),
        "permutation": t.is_permutation(), "walsh_values": walsh_json, "nonlinearity": w.nonlinearity(),
    });
    Ok(Outcome { ok: true, json, text, source: lf.source })
}

fn cmd_zdb(f: FnArg, delta: Option<u32>) -> CmdResult {
    let lf = load_fn(&f.func)?;
    let t = lf.poly.evaluate();
    let class = differential_spectrum(&t).classification();
    let target = delta.or(match class {
        ZdbClass::Zdb(d) => Some(d),
        _ => None,
    });
    let ok = matches!((class, target), (ZdbClass::Zdb(d), Some(t)) if d == t);
    let power = target.map(|d| walsh_power_sum_check(&walsh(&t), d));
    let power_ok = power.as_ref().map(|p| p.holds());
    let text = format!(
        "function: {}\nclass: {}\nZDB({}) : {}\nWalsh power-sum characterisation: {}\n",
        lf.label,
        class.label(),
        target.map_or("?".into(), |d| d.to_string()),
        if ok { "yes" } else { "no" },
        power_ok.map_or("n/a".into(), |b| if b { "holds" } else { "fails" }.to_string())
    );
    let json = json!({ "function": lf.label, "class": class, "delta": target, "zdb": ok, "power_sums_hold": power_ok });
    // the two characterisations must agree
    let consistent = power_ok.map_or(true, |b| b == ok);
    Ok(Outcome { ok: ok && consistent, json, text, source: lf.source })
}

fn cmd_walsh(f: FnArg) -> CmdResult {
    let lf = load_fn(&f.func)?;
    let w = walsh(&lf.poly.evaluate());
    let multiset: Vec<(String, u64)> = w.multiset().into_iter().map(|(k, c)| (k.to_string(), c)).collect();
    let mut text = format!("function: {}\nvalue multiset over a != 0:\n", lf.label);
    for (k, c) in &multiset {
        text.push_str(&format!("  {k:>12}  x{c}\n"));
    }
    text.push_str(&format!("max |W| = {:.4}\n", w.max_modulus()));
    let json = json!({ "function": lf.label, "multiset": multiset, "max_modulus": w.max_modulus(), "nonlinearity": w.nonlinearity() });
    Ok(Outcome { ok: true, json, text, source: lf.source })
}

fn infer_params(ctx: &FieldCtx, d: &[u32]) -> PdsParams {
    let hist = difference_histogram(ctx, d);
    let mut member = vec![false; ctx.q()];
    d.iter().for_each(|&x| member[x as usize] = true);
    let lambda = d.first().map_or(0, |&x| hist[x as usize]);
    let mu = (1..ctx.q()).find(|&g| !member[g]).map_or(0, |g| hist[g]);
    PdsParams::new(ctx.q() as u64, d.len() as u64, lambda, mu)
}

fn cmd_pds(c: PdsCmd) -> CmdResult {
    match c {
        PdsCmd::Predict { p, t, n } => {
            let pred = predicted_params(p, t, n)?;
            let latin: Vec<String> =
                pred.latin.iter().map(|l| format!("{} (N={}, r={})", l.label(), l.n, l.r)).collect();
            let text = format!(
                "{} {}\n{}\n",
                if pred.kind == DesignKind::Ds { "DS" } else { "PDS" },
                pred.params,
                if latin.is_empty() { "no Latin-type description".to_string() } else { latin.join("\n") }
            );
            Ok(outcome(true, to_json(&pred), text))
        }
        PdsCmd::Verify { f, params, ds } => {
            let lf = load_fn(&f.func)?;
            let ctx = lf.poly.ctx().clone();
            let d = image_pds(&lf.poly.evaluate())?;
            let params = match params {
                Some(s) => parse_params(&s)?,
                None => infer_params(&ctx, &d),
            };
            let kind = if ds || params.is_ds() {
                DesignKind::Ds
            } else {
                DesignKind::Pds
            };
            let (ok, json, text) = match verify_design(&ctx, &d, params, kind) {
                Ok(cert) => {
                    let chars: Vec<String> = cert.char_values.iter().map(|(k, c)| format!("{k} x{c}")).collect();
                    let latin: Vec<String> = params.latin_types().iter().map(|l| l.label().to_string()).collect();
                    let text = format!(
                        "certified {:?} {}\nregular (D = -D): {}\ncharacter values: {}\nLatin type: {}\n",
                        kind,
                        params,
                        cert.regular,
                        chars.join(", "),
                        if latin.is_empty() { "none".into() } else { latin.join(", ") }
                    );
                    (true, json!({ "certified": true, "certificate": cert, "latin": params.latin_types() }), text)
                }
                Err(e) => (false, json!({ "certified": false, "params": params, "error": e.to_string() }), format!("not certified: {e}\n")),
            };
            Ok(Outcome { ok, json, text, source: lf.source })
        }
    }
}

fn cmd_srg(c: SrgCmd) -> CmdResult {
    match c {
        SrgCmd::Build { f, graph_out } => {
            let lf = load_fn(&f.func)?;
            let ctx = lf.poly.ctx().clone();
            let d = image_pds(&lf.poly.evaluate())?;
            let g = cayley_graph(&ctx, &d)?;
            let params = srg_parameters(&g);
            if let Some(path) = &graph_out {
                std::fs::write(path, write_graph(&g))?;
            }
            let text = format!(
                "Cayley graph on {} vertices, degree {}\nSRG parameters: {}\n2-rank: {}\n{}",
                g.v(),
                g.degree(0),
                params.map_or("not strongly regular".into(), |p| p.to_string()),
                rank2(&g),
                graph_out.as_ref().map_or(String::new(), |p| format!("written to {}\n", p.display()))
            );
            let json = json!({ "v": g.v(), "srg": params, "rank2": rank2(&g), "connection_set": g.connection_set });
            Ok(Outcome { ok: params.is_some(), json, text, source: lf.source })
        }
        SrgCmd::Verify { graph, params } => {
            let (g, source) = load_graph(&graph)?;
            let (ok, verdict) = match params {
                Some(s) => {
                    let v = verify_srg(&g, parse_params(&s)?);
                    (v.holds, to_json(&v))
                }
                None => {
                    let p = srg_parameters(&g);
                    (p.is_some(), json!({ "params": p, "holds": p.is_some() }))
                }
            };
            let fp = fingerprint(&g);
            let eig = srg_parameters(&g).and_then(|p| p.eigen_multiplicities());
            let text = format!(
                "strongly regular: {}\n{}\n2-rank: {}\neigenvalues/multiplicities: {:?}\n",
                ok,
                verdict,
                fp.rank2,
                eig
            );
            let json = json!({ "verdict": verdict, "fingerprint": fp, "eigen": eig });
            Ok(Outcome { ok, json, text, source })
        }
    }
}

fn cmd_iso(a: String, b: String, timeout: f64) -> CmdResult {
    let (g1, src) = load_graph(&a)?;
    let (g2, _) = load_graph(&b)?;
    let (f1, f2) = (fingerprint(&g1), fingerprint(&g2));
    let res = if f1 != f2 { IsoOutcome::NonIsomorphic } else { is_isomorphic(&g1, &g2, Budget::seconds(timeout))? };
    let (ok, text) = match &res {
        IsoOutcome::Isomorphic(m) => (true, format!("isomorphic\nmapping (vertex -> image): {m:?}\n")),
        IsoOutcome::NonIsomorphic if f1 != f2 => (false, "non-isomorphic (invariants differ)\n".to_string()),
        IsoOutcome::NonIsomorphic => (false, "non-isomorphic\n".to_string()),
        IsoOutcome::Undecided => (false, "undecided (budget exhausted)\n".to_string()),
    };
    Ok(Outcome { ok, json: json!({ "a": a, "b": b, "outcome": res }), text, source: src })
}

fn cmd_aut(graph: String, timeout: f64) -> CmdResult {
    let (g, source) = load_graph(&graph)?;
    match automorphism_order(&g, Budget::seconds(timeout)) {
        Ok(info) => {
            let text = format!(
                "|Aut| = {}\norbit lengths along the stabilizer chain: {:?}\ngenerators: {}\n",
                info.order,
                info.orbit_sizes,
                info.generators.len()
            );
            Ok(Outcome { ok: true, json: to_json(&info), text, source })
        }
        Err(zdb_srg::graphs::GraphError::Timeout(s)) => Ok(Outcome {
            ok: false,
            json: json!({ "order": "undecided", "elapsed_secs": s }),
            text: format!("|Aut| undecided after {s:.0} s\n"),
            source,
        }),
        Err(e) => Err(e.into()),
    }
}

fn cmd_search(c: SearchCmd) -> CmdResult {
    let (family_of, a) = match c {
        SearchCmd::Newapn(a) => (None, a),
        SearchCmd::Newfun(a) => (Some(()), a),
    };
    let ctx = FieldCtx::build_default(a.p, a.n)?;
    let mode = match a.samples {
        Some(count) => SearchMode::Samples { count, seed: a.seed, conditioned: a.conditioned },
        None => SearchMode::Exhaustive { budget: a.budget },
    };
    let mut shown: Vec<SearchHit> = Vec::new();
    let mut on_hit = |h: &SearchHit| {
        if shown.len() < a.show {
            shown.push(h.clone());
        }
    };
    let summary = match family_of {
        None => {
            if a.p != 2 || a.n % 2 != 0 {
                return Err(UsageError("newapn needs p = 2 and even n".into()));
            }
            search_newapn(&ctx, mode, &mut on_hit)
        }
        Some(()) => {
            let family = match a.n {
                4 => Family::NewFun4,
                6 => Family::NewFun6,
                _ => return Err(UsageError("newfun needs n = 4 or n = 6".into())),
            };
            if a.p == 2 {
                return Err(UsageError("newfun needs odd p".into()));
            }
            search_newfun(&ctx, family, mode, &mut on_hit)
        }
    };
    let mut text = format!(
        "visited {} triples, {} verified hits, {} outside the closed-form condition, {} mismatches\n",
        summary.visited,
        summary.hits,
        summary.outside_condition,
        summary.mismatches.len()
    );
    for h in &shown {
        text.push_str(&format!("  {} condition={}\n", h.text, h.condition));
    }
    for m in summary.mismatches.iter().take(10) {
        text.push_str(&format!("  MISMATCH {m}\n"));
    }
    Ok(outcome(summary.mismatches.is_empty(), json!({ "summary": summary, "hits": shown }), text))
}

fn cmd_injection(f: FnArg, gamma: String) -> CmdResult {
    let lf = load_fn(&f.func)?;
    let ctx = lf.poly.ctx().clone();
    let gamma = ctx.parse_elem(&gamma)?;
    let g: FnTable = lf.poly.evaluate();
    let space = injection_space(&g, gamma)?;
    let text = format!(
        "γ = {}\nconstraints: {}\ndimension: {}\n",
        ctx.format_elem(gamma),
        space.constraint_count(),
        space.dim()
    );
    let json = json!({ "gamma": ctx.format_elem(gamma), "constraints": space.constraint_count(), "dim": space.dim(), "pairs": space.pairs });
    Ok(Outcome { ok: true, json, text, source: lf.source })
}

fn cmd_ccc(f: FnArg) -> CmdResult {
    let lf = load_fn(&f.func)?;
    let (ok, json, text) = match ccc_from_zdb(&lf.poly.evaluate()) {
        Ok(r) => {
            let text = format!(
                "code ({}, {}, {}), composition {}\nclaimed ({}, {}, {}), composition {}\nmatches: {}\n",
                r.length,
                r.size,
                r.min_distance,
                runs(&r.composition),
                r.claimed.0,
                r.claimed.1,
                r.claimed.2,
                runs(&r.claimed.3),
                r.matches_claim()
            );
            (r.matches_claim(), to_json(&r), text)
        }
        Err(e) => (false, json!({ "error": e.to_string() }), format!("no code: {e}\n")),
    };
    Ok(Outcome { ok, json, text, source: lf.source })
}

fn cmd_table1(a: Table1Args) -> CmdResult {
    let opts = Table1Options { skip_aut: !a.with_aut, iso_budget_secs: a.iso_timeout, aut_budget_secs: a.aut_timeout };
    let report = reproduce_table1(opts)?;
    let ok = report.undecided_pairs == 0
        && report.rows.iter().all(|r| r.srg && r.rank2 == 256)
        && report.partition == catalog::expected_partition()
        && report.cyclotomic_matches == [13];
    let mut out = Outcome { ok, json: to_json(&report), text: report.to_text(), source: None };
    out.source = a.report;
    Ok(out)
}

fn report_path(src: &Path, ext: &str) -> PathBuf {
    let mut s = src.as_os_str().to_owned();
    s.push(ext);
    PathBuf::from(s)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = std::env::var(WORKERS_ENV).ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let format = cli.out;
    let result = match cli.cmd {
        Cmd::Field(a) => cmd_field(a),
        Cmd::Analyze(f) => cmd_analyze(f),
        Cmd::ZdbCheck { f, delta } => cmd_zdb(f, delta),
        Cmd::Walsh(f) => cmd_walsh(f),
        Cmd::Pds(c) => cmd_pds(c),
        Cmd::Srg(c) => cmd_srg(c),
        Cmd::Iso { a, b, timeout } => cmd_iso(a, b, timeout),
        Cmd::Aut { graph, timeout } => cmd_aut(graph, timeout),
        Cmd::Search(c) => cmd_search(c),
        Cmd::InjectionSpace { f, gamma } => cmd_injection(f, gamma),
        Cmd::Ccc(f) => cmd_ccc(f),
        Cmd::Table1(a) => cmd_table1(a),
    };
    let out = match result {
        Ok(o) => o,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `zdbsrg --help` for usage");
            return ExitCode::from(2);
        }
    };
    let json_text = serde_json::to_string_pretty(&out.json).expect("json");
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let mut stdout = std::io::stdout().lock();
    let _ = match format {
        OutFormat::Json => writeln!(stdout, "{json_text}"),
        OutFormat::Text => write!(stdout, "{}", out.text),
    };
    if let Some(src) = &out.source {
        let (ext, body) = match format {
            OutFormat::Json => (".report.json", json_text.clone()),
            OutFormat::Text => (".report.txt", out.text.clone()),
        };
        if let Err(e) = std::fs::write(report_path(src, ext), body) {
            eprintln!("warning: could not write report: {e}");
        }
    }
    ExitCode::from(if out.ok { 0 } else { 1 })
}
