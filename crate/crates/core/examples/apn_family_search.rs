//! Sweep of x^3 + αTr(βx^3 + γx^9): closed-form permutation condition
//! against brute force, with APN confirmation of the hits.
use zdb_srg::constructions::{search_newapn, SearchMode};
use zdb_srg::FieldCtx;

fn main() {
    let f = FieldCtx::build_default(2, 4).unwrap();
    let mut first = None;
    let s = search_newapn(&f, SearchMode::Exhaustive { budget: None }, &mut |h| {
        first.get_or_insert_with(|| h.text.clone());
    });
    println!("F_16: {} triples, {} APN permutations G, mismatches {}", s.visited, s.hits, s.mismatches.len());
    println!("first hit: {first:?}");
    let f = FieldCtx::build_default(2, 6).unwrap();
    let s = search_newapn(&f, SearchMode::Samples { count: 500, seed: 7, conditioned: false }, &mut |_| {});
    println!("F_64: {} samples, {} hits, mismatches {}", s.visited, s.hits, s.mismatches.len());
}
