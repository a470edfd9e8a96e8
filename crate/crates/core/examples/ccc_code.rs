//! Constant-composition code from a ZDB function, distance checked exhaustively.
use zdb_srg::constructions::ccc_from_zdb;
use zdb_srg::{FieldCtx, PolyFn};

fn main() {
    for (p, n, d) in [(2, 4, 3), (3, 4, 4)] {
        let f = FieldCtx::build_default(p, n).unwrap();
        let r = ccc_from_zdb(&PolyFn::monomial(&f, d).evaluate()).unwrap();
        println!(
            "x^{d} on F_{{{p}^{n}}}: ({}, {}, {}) code, matches the predicted parameters: {}",
            r.length,
            r.size,
            r.min_distance,
            r.matches_claim()
        );
    }
}
