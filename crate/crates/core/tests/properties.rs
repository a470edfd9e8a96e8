//! Randomized invariants.

mod common;

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use zdb_srg::designs::{difference_histogram, PdsParams};
use zdb_srg::funcspace::gcd;
use zdb_srg::graphs::{fingerprint, is_isomorphic, parse_graph, rank2, write_graph, Budget, CayleyGraph, IsoOutcome};
use zdb_srg::spectra::{zero_difference_profile, ZdbClass};
use zdb_srg::{Elem, FieldCtx, FnTable, PolyFn};

fn fields() -> &'static Vec<Arc<FieldCtx>> {
    static F: OnceLock<Vec<Arc<FieldCtx>>> = OnceLock::new();
    F.get_or_init(|| {
        common::small_fields(1024).into_iter().map(|(p, n)| FieldCtx::build_default(p, n).unwrap()).collect()
    })
}

fn field_upto(limit: usize) -> impl Strategy<Value = Arc<FieldCtx>> {
    let list: Vec<Arc<FieldCtx>> = fields().iter().filter(|f| f.q() <= limit).cloned().collect();
    proptest::sample::select(list)
}

fn elems(f: &FieldCtx, k: usize) -> impl Strategy<Value = Vec<Elem>> {
    proptest::collection::vec((0..f.q() as u32).prop_map(Elem), k)
}

fn graph(max_v: usize) -> impl Strategy<Value = CayleyGraph> {
    (2..=max_v).prop_flat_map(|v| {
        proptest::collection::vec(any::<bool>(), v * (v - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for i in 1..v {
                for j in 0..i {
                    if it.next().unwrap() {
                        edges.push((i, j));
                    }
                }
            }
            CayleyGraph::from_edges(v, &edges)
        })
    })
}

fn graph_and_perm(max_v: usize) -> impl Strategy<Value = (CayleyGraph, Vec<u32>)> {
    graph(max_v).prop_flat_map(|g| {
        let ids: Vec<u32> = (0..g.v() as u32).collect();
        (Just(g), Just(ids).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((f, v) in field_upto(1024).prop_flat_map(|f| { let s = elems(&f, 3); (Just(f), s) })) {
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Elem(0));
        prop_assert_eq!(f.pow(a, f.q() as u64), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.scalar(1));
        }
    }

    #[test]
    fn interpolation_round_trip((f, v) in field_upto(64).prop_flat_map(|f| { let s = elems(&f, f.q()); (Just(f), s) })) {
        let t = FnTable::from_values(&f, v.iter().map(|e| e.0).collect()).unwrap();
        let back = t.interpolate().evaluate();
        prop_assert_eq!(back.values(), t.values());
    }

    #[test]
    fn power_maps_are_zdb((f, d) in field_upto(512).prop_flat_map(|f| { let q = f.q() as u64; (Just(f), 1..q) })) {
        let (_, class) = zero_difference_profile(&PolyFn::monomial(&f, d).evaluate());
        prop_assert_eq!(class, ZdbClass::Zdb(gcd(d, f.q() as u64 - 1) as u32 - 1));
    }

    #[test]
    fn graph_file_round_trip(g in graph(40)) {
        let h = parse_graph(&write_graph(&g)).unwrap();
        prop_assert_eq!(h.adj(), g.adj());
    }

    #[test]
    fn invariants_survive_relabeling((g, perm) in graph_and_perm(32)) {
        let h = g.relabel(&perm);
        prop_assert_eq!(rank2(&g), rank2(&h));
        prop_assert_eq!(fingerprint(&g), fingerprint(&h));
    }

    #[test]
    fn isomorphism_finds_a_mapping((g, perm) in graph_and_perm(24)) {
        let h = g.relabel(&perm);
        match is_isomorphic(&g, &h, Budget::seconds(30.0)).unwrap() {
            IsoOutcome::Isomorphic(map) => prop_assert!(g.maps_onto(&h, &map)),
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn latin_parameters_round_trip((n, r) in (2u64..40).prop_flat_map(|n| (Just(n), 1..n)), negative in any::<bool>()) {
        let (k, lambda, mu) = if negative {
            (r * (n + 1), (r * r + 3 * r) as i64 - n as i64, r * r + r)
        } else {
            (r * (n - 1), (n + r * r) as i64 - 3 * r as i64, r * r - r)
        };
        prop_assume!(lambda >= 0 && k < n * n);
        let params = PdsParams::new(n * n, k, lambda as u64, mu);
        prop_assert!(params.counting_identity());
        let eps = if negative { 1 } else { -1 };
        prop_assert!(params.latin_types().iter().any(|t| t.n == n && t.r == r && t.epsilon == eps));
    }

    #[test]
    fn difference_histogram_invariance(
        (f, set, c, t) in field_upto(256).prop_flat_map(|f| {
            let q = f.q() as u32;
            (Just(f), proptest::collection::btree_set(1..q, 1..12), 1..q, 0..q)
        })
    ) {
        let d: Vec<u32> = set.into_iter().collect();
        let h = difference_histogram(&f, &d);
        let shifted: Vec<u32> = d.iter().map(|&x| f.add(Elem(x), Elem(t)).0).collect();
        prop_assert_eq!(&difference_histogram(&f, &shifted), &h);
        let scaled: Vec<u32> = d.iter().map(|&x| f.mul(Elem(x), Elem(c)).0).collect();
        let hs = difference_histogram(&f, &scaled);
        for g in f.elements() {
            prop_assert_eq!(hs[f.mul(g, Elem(c)).idx()], h[g.idx()]);
        }
    }
}
