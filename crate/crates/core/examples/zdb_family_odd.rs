//! The odd-characteristic family x^{p+1} + αTr(βx^{p+1} + γx^{p^3+1}).
use zdb_srg::constructions::{search_newfun, Family, SearchMode};
use zdb_srg::FieldCtx;

fn main() {
    let f = FieldCtx::build_default(3, 4).unwrap();
    let s = search_newfun(&f, Family::NewFun4, SearchMode::Samples { count: 2000, seed: 3, conditioned: false }, &mut |_| {});
    println!(
        "F_81: {} samples, {} ZDB(3), {} outside the condition, {} mismatches",
        s.visited,
        s.hits,
        s.outside_condition,
        s.mismatches.len()
    );
    let f = FieldCtx::build_default(3, 6).unwrap();
    let s = search_newfun(&f, Family::NewFun6, SearchMode::Samples { count: 50, seed: 5, conditioned: true }, &mut |_| {});
    println!("F_729: {} conditioned samples, {} ZDB(3)", s.visited, s.hits);
}
