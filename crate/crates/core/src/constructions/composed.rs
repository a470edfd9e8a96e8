use serde::Serialize;

use super::{fmt_pair, ConstructionError};
use crate::funcspace::{gcd, power_coset, FnTable};
use crate::gf::{Elem, FieldCtx};
use crate::spectra::differential_spectrum;

/// Outcome of testing `F(x) = G(x^d)`.
#[derive(Clone, Debug, Serialize)]
pub struct ComposedVerdict {
    pub d: u64,
    pub e: u64,
    pub injective: bool,
    /// colliding pair on `C_d` when not injective
    pub witness: Option<(String, String)>,
    pub quadratic: bool,
    pub delta: u32,
}

impl ComposedVerdict {
    /// Injective restriction and, for quadratic `F`, uniformity exactly `e - 1`.
    pub fn accepted(&self) -> bool {
        self.injective && (!self.quadratic || self.delta as u64 == self.e - 1)
    }
}

/// Builds `F(x) = G(x^d)` and checks the injectivity criterion against the
/// measured differential uniformity.
pub fn check_composed_uniformity(g: &FnTable, d: u64) -> (ComposedVerdict, FnTable) {
    let f = g.ctx();
    let e = gcd(d, f.order() as u64);
    let coset = power_coset(f, d);
    let witness = g
        .injectivity_on(&coset)
        .err()
        .map(|(u, v)| (f.format_elem(u), f.format_elem(v)));
    let composed = g.compose_power(d);
    let quadratic = composed.algebraic_degree() <= 2;
    let delta = differential_spectrum(&composed).delta_max;
    let verdict = ComposedVerdict { d, e, injective: witness.is_none(), witness, quadratic, delta };
    (verdict, composed)
}

/// `h(x) = 1 - (x^{2(q-1)/e} - x^{(q-1)/e})^{q-1}`, the indicator of
/// `C_d ∪ {0}` evaluated with field arithmetic.
pub fn characteristic_h(ctx: &FieldCtx, d: u64) -> Vec<bool> {
    let order = ctx.order() as u64;
    let e = gcd(d, order);
    ctx.elements()
        .map(|x| {
            let inner = ctx.sub(ctx.pow(x, 2 * order / e), ctx.pow(x, order / e));
            let h = ctx.sub(Elem::ONE, ctx.pow(inner, order));
            debug_assert!(h.0 <= 1);
            h == Elem::ONE
        })
        .collect()
}

/// A permutation agreeing with `G` on `C_d ∪ {0}`; the remaining points are
/// sent, in increasing code order, to the smallest unused values.
pub fn extend_to_permutation(g: &FnTable, d: u64) -> Result<FnTable, ConstructionError> {
    let f = g.ctx();
    let h = characteristic_h(f, d);
    let fixed: Vec<u32> = (0..f.q() as u32).filter(|&x| h[x as usize]).collect();
    if let Some((u, v)) = g.collision_on(&fixed) {
        return Err(fmt_pair(f, u, v));
    }
    let mut used = vec![false; f.q()];
    for &x in &fixed {
        used[g.values()[x as usize] as usize] = true;
    }
    let mut free = (0..f.q() as u32).filter(|&y| !used[y as usize]);
    let values = (0..f.q())
        .map(|x| if h[x] { g.values()[x] } else { free.next().expect("counts match") })
        .collect();
    Ok(FnTable::from_values(f, values).expect("valid table"))
}
