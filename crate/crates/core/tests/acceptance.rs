//! One line per acceptance criterion; the process exits nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zdb_srg::catalog;
use zdb_srg::constructions::{
    ccc_from_zdb, gcd_lemma, injection_space, perturb, search_newapn, search_newfun, Family, SearchMode,
};
use zdb_srg::cyclotomic::CycInt;
use zdb_srg::designs::{image_pds, verify_design, DesignKind, PdsParams};
use zdb_srg::funcspace::{gcd, power_coset};
use zdb_srg::graphs::{cayley_graph, rank2, verify_srg};
use zdb_srg::pipeline::{reproduce_table1, AutStatus, Table1Options};
use zdb_srg::spectra::{
    differential_spectrum, linear_kernel, walsh, walsh_power_sum_check, zero_difference_profile, ZdbClass,
};
use zdb_srg::{Elem, FieldCtx, FnTable, PolyFn};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tables() -> Vec<(usize, PolyFn, FnTable)> {
    let f = catalog::field();
    catalog::load_catalog(&f)
        .unwrap()
        .into_iter()
        .map(|(e, p)| {
            let t = p.evaluate();
            (e.number, p, t)
        })
        .collect()
}

fn c1_delta_and_degree() -> Outcome {
    let mut bad = Vec::new();
    for (n, poly, t) in tables() {
        let delta = differential_spectrum(&t).delta_max;
        let deg = poly.algebraic_degree();
        if delta != 2 || deg != 2 {
            bad.push(format!("entry {n}: Δ={delta}, degree {deg}"));
        }
    }
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok("18 entries, Δ=2, degree 2".into())
}

fn c2_zdb2() -> Outcome {
    for (n, _, t) in tables() {
        let (_, class) = zero_difference_profile(&t);
        ensure(class == ZdbClass::Zdb(2), || format!("entry {n}: {}", class.label()))?;
    }
    Ok("18 entries ZDB(2)".into())
}

fn c3_walsh_values() -> Outcome {
    let want: BTreeSet<i64> = [-32, -16, 0, 16, 32].into();
    for (n, _, t) in tables() {
        let got = walsh(&t).int_value_set();
        ensure(got.as_ref() == Some(&want), || format!("entry {n}: {got:?}"))?;
    }
    Ok("value set {0, ±16, ±32}".into())
}

fn c4_power_sums() -> Outcome {
    for (n, _, t) in tables() {
        let check = walsh_power_sum_check(&walsh(&t), 2);
        ensure(check.expected_nonzero == 65024 && check.expected_zero == 196096, || "wrong targets".into())?;
        ensure(check.holds(), || format!("entry {n}: residuals nonzero"))?;
    }
    Ok("65024 at b≠0, 196096 at b=0".into())
}

fn c5_pds() -> Outcome {
    let f = catalog::field();
    let params = PdsParams::new(256, 85, 24, 30);
    let want: BTreeSet<i64> = [5, -11].into();
    for (n, _, t) in tables() {
        let d = image_pds(&t).map_err(|e| e.to_string())?;
        let cert = verify_design(&f, &d, params, DesignKind::Pds).map_err(|e| format!("entry {n}: {e}"))?;
        ensure(cert.regular, || format!("entry {n}: not regular"))?;
        let chars: BTreeSet<i64> = cert.char_values.keys().filter_map(CycInt::as_integer).collect();
        ensure(chars == want, || format!("entry {n}: χ values {chars:?}"))?;
    }
    Ok("(256, 85, 24, 30), regular, χ ∈ {5, -11}".into())
}

fn c6_srg_rank() -> Outcome {
    let params = PdsParams::new(256, 85, 24, 30);
    for number in 1..=18 {
        let g = common::catalog_graph(number);
        let v = verify_srg(&g, params);
        ensure(v.holds, || format!("entry {number}: {:?}", v.witness))?;
        let r = rank2(&g);
        ensure(r == 256, || format!("entry {number}: 2-rank {r}"))?;
    }
    Ok("srg(256, 85, 24, 30), 2-rank 256".into())
}

fn c7_classes() -> Outcome {
    let r = reproduce_table1(Table1Options::default()).map_err(|e| e.to_string())?;
    let merges = r.partition.contains(&vec![2, 6]) && r.partition.contains(&vec![13, 14, 17]);
    let detail = format!(
        "{} classes, merges {{2,6}} {{13,14,17}}: {merges}, cyclotomic ≅ {:?}, undecided {}",
        r.class_count(),
        r.cyclotomic_matches,
        r.undecided_pairs
    );
    ensure(
        r.class_count() == 16 && merges && r.cyclotomic_matches == vec![13] && r.undecided_pairs == 0,
        || format!("expected 16 classes; {detail}"),
    )?;
    Ok(detail)
}

fn c8_aut_orders() -> Outcome {
    let r = reproduce_table1(Table1Options { skip_aut: false, ..Default::default() }).map_err(|e| e.to_string())?;
    for row in &r.rows {
        match &row.aut {
            AutStatus::Computed(o) if *o == row.expected_aut.to_string() => {}
            other => return Err(format!("entry {}: {other:?}, expected {}", row.number, row.expected_aut)),
        }
    }
    let orders: BTreeSet<u64> = r.rows.iter().map(|row| row.expected_aut).collect();
    Ok(format!("all 18 match, distinct orders {orders:?}"))
}

fn small_design(p: u32, n: u32, d: u64, params: PdsParams, kind: DesignKind) -> Result<(), String> {
    let f = FieldCtx::build_default(p, n).map_err(|e| e.to_string())?;
    let set = image_pds(&PolyFn::monomial(&f, d).evaluate()).map_err(|e| e.to_string())?;
    verify_design(&f, &set, params, kind).map_err(|e| format!("x^{d} on F_{}: {e}", f.q()))?;
    if kind == DesignKind::Pds {
        let g = cayley_graph(&f, &set).map_err(|e| e.to_string())?;
        ensure(verify_srg(&g, params).holds, || format!("x^{d} on F_{}: not SRG", f.q()))?;
    }
    Ok(())
}

fn c9_small_designs() -> Outcome {
    small_design(3, 4, 4, PdsParams::new(81, 20, 1, 6), DesignKind::Pds)?;
    small_design(3, 3, 2, PdsParams::ds(27, 13, 6), DesignKind::Ds)?;
    small_design(5, 2, 2, PdsParams::new(25, 12, 5, 6), DesignKind::Pds)?;
    Ok("(81,20,1,6) + SRG, (27,13,6) DS, (25,12,5,6) + SRG".into())
}

fn c10_newfun() -> Outcome {
    let f81 = FieldCtx::build_default(3, 4).map_err(|e| e.to_string())?;
    let s = search_newfun(&f81, Family::NewFun4, SearchMode::Exhaustive { budget: None }, &mut |_| {});
    ensure(s.visited == 531441 && s.mismatches.is_empty(), || {
        format!("F81: visited {}, mismatches {:?}", s.visited, s.mismatches.iter().take(3).collect::<Vec<_>>())
    })?;
    let f729 = FieldCtx::build_default(3, 6).map_err(|e| e.to_string())?;
    let mode = SearchMode::Samples { count: 1000, seed: 729, conditioned: true };
    let t = search_newfun(&f729, Family::NewFun6, mode, &mut |_| {});
    ensure(t.visited == 1000 && t.hits == 1000 && t.mismatches.is_empty(), || {
        format!("F729: visited {}, ZDB(3) {}, mismatches {}", t.visited, t.hits, t.mismatches.len())
    })?;
    Ok(format!("F81 exhaustive ({} hits), F729 1000/1000 ZDB(3)", s.hits))
}

fn c11_newapn() -> Outcome {
    let f16 = FieldCtx::build_default(2, 4).map_err(|e| e.to_string())?;
    let s = search_newapn(&f16, SearchMode::Exhaustive { budget: None }, &mut |_| {});
    ensure(s.visited == 3840 && s.mismatches.is_empty(), || {
        format!("F16: visited {}, mismatches {}", s.visited, s.mismatches.len())
    })?;
    let f64 = FieldCtx::build_default(2, 6).map_err(|e| e.to_string())?;
    let mode = SearchMode::Samples { count: 10_000, seed: 64, conditioned: false };
    let t = search_newapn(&f64, mode, &mut |_| {});
    ensure(t.visited == 10_000 && t.mismatches.is_empty(), || format!("F64: mismatches {}", t.mismatches.len()))?;
    Ok(format!("F16 3840 triples ({} APN), F64 10^4 samples ({} APN)", s.hits, t.hits))
}

fn c12_gcd() -> Outcome {
    let mut count = 0;
    for p in [2, 3, 5, 7] {
        for t in 1..=6 {
            for n in 1..=12 {
                gcd_lemma(p, t, n).map_err(|e| e.to_string())?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} (p, t, n) triples"))
}

fn c13_injection() -> Outcome {
    let f = catalog::field();
    let id = FnTable::identity(&f);
    let points = power_coset(&f, 3).with_zero();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut dims = BTreeSet::new();
    for _ in 0..20 {
        let gamma = Elem(rng.gen_range(1..256));
        let space = injection_space(&id, gamma).map_err(|e| e.to_string())?;
        dims.insert(space.dim());
        for h in &space.basis {
            ensure(perturb(&id, gamma, h).collision_on(&points).is_none(), || format!("γ={}: basis h collides", gamma.0))?;
        }
        for _ in 0..50 {
            let mut h = vec![0u64; 4];
            for b in space.basis.iter().filter(|_| rng.gen_bool(0.5)) {
                h.iter_mut().zip(b).for_each(|(x, y)| *x ^= y);
            }
            ensure(space.contains(&h), || format!("γ={}: sum left the space", gamma.0))?;
            ensure(perturb(&id, gamma, &h).collision_on(&points).is_none(), || format!("γ={}: sum collides", gamma.0))?;
        }
    }
    Ok(format!("20 γ, dimensions {dims:?}"))
}

fn c14_ccc() -> Outcome {
    let f = FieldCtx::build_default(2, 4).map_err(|e| e.to_string())?;
    let r = ccc_from_zdb(&PolyFn::monomial(&f, 3).evaluate()).map_err(|e| e.to_string())?;
    let mut comp = vec![1, 3, 3, 3, 3, 3];
    comp.resize(16, 0);
    ensure((r.length, r.size, r.min_distance, &r.composition) == (16, 16, 14, &comp), || format!("{r:?}"))?;
    ensure(r.matches_claim(), || "report disagrees with its own claim".into())?;
    Ok("(16, 16, 14, [1, 3^5, 0^10])".into())
}

fn vanishing_bound(t: &FnTable) -> Result<bool, String> {
    let spec = differential_spectrum(t);
    let bound = match spec.classification() {
        ZdbClass::Zdb(d) if d >= 1 => d,
        ZdbClass::Vanishing(d) => d,
        _ => return Ok(false),
    };
    ensure(spec.delta_max <= bound, || format!("Δ={} exceeds δ={bound}", spec.delta_max))?;
    Ok(true)
}

fn c15_randomized() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let fields = common::small_fields(256);
    let big = common::small_fields(1024);

    // vanishing quadratics: Δ bounded by δ
    let mut vanishing = 0;
    for i in 0..100 {
        let (p, n) = fields[rng.gen_range(0..fields.len())];
        let f = FieldCtx::build_default(p, n).map_err(|e| e.to_string())?;
        let t = if i % 2 == 0 {
            common::random_quadratic(&f, &mut rng, 3).evaluate()
        } else {
            let k = rng.gen_range(0..n) as u32;
            let l = common::random_linear_permutation(&f, &mut rng);
            l.compose(&PolyFn::monomial(&f, (p as u64).pow(k) + 1).evaluate()).map_err(|e| e.to_string())?
        };
        vanishing += vanishing_bound(&t)? as usize;
    }

    // power maps: ZDB(gcd(d, q-1) - 1)
    for _ in 0..100 {
        let (p, n) = big[rng.gen_range(0..big.len())];
        let f = FieldCtx::build_default(p, n).map_err(|e| e.to_string())?;
        let d = rng.gen_range(1..f.q() as u64);
        let want = ZdbClass::Zdb(gcd(d, f.q() as u64 - 1) as u32 - 1);
        let (_, got) = zero_difference_profile(&PolyFn::monomial(&f, d).evaluate());
        ensure(got == want, || format!("x^{d} on F_{}: {} vs {}", f.q(), got.label(), want.label()))?;
    }

    // kernel identity on L∘(ZDB quadratic)
    let mut kernels = 0;
    while kernels < 100 {
        let (p, n) = fields[rng.gen_range(0..fields.len())];
        let f = FieldCtx::build_default(p, n).map_err(|e| e.to_string())?;
        let e = (p as u64).pow(rng.gen_range(0..n)) + 1;
        let base = PolyFn::monomial(&f, e).evaluate();
        if !matches!(zero_difference_profile(&base).1, ZdbClass::Zdb(d) if d >= 1) {
            continue;
        }
        let t = common::random_linear_permutation(&f, &mut rng).compose(&base).map_err(|e| e.to_string())?;
        let w = walsh(&t);
        let a = Elem(rng.gen_range(1..f.q() as u32));
        let ker = linear_kernel(&t, a).map_err(|e| e.to_string())?;
        let lhs = w.abs_sq(a, Elem(0));
        let rhs = CycInt::from_int(p, (f.q() * ker.len()) as i64);
        ensure(lhs == rhs, || format!("F_{}, x^{e}, a={}: |W|²={lhs} vs q|E_a|={rhs}", f.q(), a.0))?;
        kernels += 1;
    }

    // |E_a| on linear images of catalog entries
    let f = catalog::field();
    let quads: Vec<FnTable> = tables().into_iter().filter(|(n, _, _)| *n != 17).map(|(_, _, t)| t).collect();
    let mut sizes = BTreeSet::new();
    for _ in 0..100 {
        let t = common::random_linear_permutation(&f, &mut rng)
            .compose(&quads[rng.gen_range(0..quads.len())])
            .map_err(|e| e.to_string())?;
        let a = Elem(rng.gen_range(1..256));
        let size = linear_kernel(&t, a).map_err(|e| e.to_string())?.len();
        ensure(size == 1 || size == 4, || format!("|E_a| = {size}"))?;
        sizes.insert(size);
    }
    Ok(format!("4×100 instances, {vanishing} vanishing quadratics, |E_a| seen {sizes:?}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 15] = [
        ("differential uniformity 2 and algebraic degree 2 across the catalog", c1_delta_and_degree),
        ("catalog functions are ZDB(2)", c2_zdb2),
        ("Walsh value set", c3_walsh_values),
        ("Walsh power sums characterise ZDB(2)", c4_power_sums),
        ("image sets are regular (256,85,24,30) PDS with predicted characters", c5_pds),
        ("Cayley graphs are SRGs of full 2-rank", c6_srg_rank),
        ("isomorphism classes and the cyclotomic graph", c7_classes),
        ("automorphism group orders", c8_aut_orders),
        ("small monomial designs", c9_small_designs),
        ("odd-characteristic family search", c10_newfun),
        ("binary APN family search", c11_newapn),
        ("gcd closed forms", c12_gcd),
        ("injection space for the identity on F_256", c13_injection),
        ("constant-composition code from x^3 on F_16", c14_ccc),
        ("randomized structural checks", c15_randomized),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {:>2}. {name} ({secs:.2}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name} ({secs:.2}s): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
