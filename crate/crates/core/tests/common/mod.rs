//! Random instance generators shared by the integration suites.
#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use zdb_srg::designs::image_pds;
use zdb_srg::graphs::{cayley_graph, CayleyGraph};
use zdb_srg::{catalog, Elem, FieldCtx, FnTable, PolyFn};

/// A random `F_p`-linear permutation `Σ c_j x^{p^j}`.
pub fn random_linear_permutation(ctx: &Arc<FieldCtx>, rng: &mut impl Rng) -> FnTable {
    let p = ctx.p() as u64;
    loop {
        let terms: Vec<(u64, Elem)> =
            (0..ctx.n()).map(|j| (p.pow(j), Elem(rng.gen_range(0..ctx.q() as u32)))).collect();
        let t = PolyFn::new(ctx, terms).evaluate();
        if t.is_permutation() {
            return t;
        }
    }
}

/// A random Dembowski–Ostrom polynomial plus an affine part.
pub fn random_quadratic(ctx: &Arc<FieldCtx>, rng: &mut impl Rng, terms: usize) -> PolyFn {
    let (p, n) = (ctx.p() as u64, ctx.n());
    let q = ctx.q() as u32;
    let mut out = Vec::new();
    for _ in 0..terms {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        out.push((p.pow(i) + p.pow(j), Elem(rng.gen_range(1..q))));
    }
    out.push((p.pow(rng.gen_range(0..n)), Elem(rng.gen_range(0..q))));
    out.push((0, Elem(rng.gen_range(0..q))));
    PolyFn::new(ctx, out)
}

pub fn catalog_graph(number: usize) -> CayleyGraph {
    let f = catalog::field();
    let d = image_pds(&catalog::get(number).unwrap().parse(&f).unwrap().evaluate()).unwrap();
    cayley_graph(&f, &d).unwrap()
}


/// Prime powers `p^n <= limit` with `n >= 1`.
pub fn small_fields(limit: usize) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        let mut q = p as usize;
        let mut n = 1;
        while q <= limit {
            out.push((p, n));
            q *= p as usize;
            n += 1;
        }
    }
    out
}
