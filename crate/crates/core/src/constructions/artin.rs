use crate::fplin;
use crate::gf::{Elem, FieldCtx};

/// `Σ_{i even, 0 <= i <= n-2} t^{p^i}` lies in the prime field.
pub fn artin_schreier_condition(ctx: &FieldCtx, t: Elem) -> bool {
    let mut acc = Elem::ZERO;
    for i in (0..ctx.n().saturating_sub(1)).step_by(2) {
        acc = ctx.add(acc, ctx.frobenius_pow(t, i));
    }
    ctx.in_prime_field(acc)
}

/// All solutions of `x + x^p = t`, sorted by code. The map is `F_p`-linear,
/// so the solution set is a particular solution plus its kernel.
pub fn solve_artin_schreier(ctx: &FieldCtx, t: Elem) -> Vec<Elem> {
    let p = ctx.p();
    let n = ctx.n() as usize;
    let images: Vec<Vec<u32>> = ctx
        .basis()
        .into_iter()
        .map(|e| ctx.digits(ctx.add(e, ctx.frobenius(e))))
        .collect();
    let matrix: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| images[j][i]).collect()).collect();
    let Some((x0, kernel)) = fplin::solve(&matrix, &ctx.digits(t), p) else {
        return Vec::new();
    };
    let mut sols: Vec<Elem> = fplin::span_from(&x0, &kernel, p).iter().map(|d| ctx.from_digits(d)).collect();
    sols.sort();
    sols
}
