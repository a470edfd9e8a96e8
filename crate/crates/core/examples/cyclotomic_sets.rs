//! Cyclotomic and line-union partial difference sets used for comparison.
use zdb_srg::designs::{cyclotomic_pds, pcp_pds, verify_design, DesignKind};

fn main() {
    for (q, m, classes) in [(2u32, 4u32, vec![0u32]), (2, 2, vec![0]), (4, 2, vec![0, 3])] {
        let (ctx, d, prm) = cyclotomic_pds(q, m, &classes).unwrap();
        let ok = verify_design(&ctx, &d, prm, DesignKind::Pds).is_ok();
        println!("q={q} m={m} classes {classes:?}: {prm} certified {ok}");
    }
    let (ctx, d, prm) = pcp_pds(4, &[1, 3]).unwrap();
    println!("two lines of F_4^2: {prm} certified {}", verify_design(&ctx, &d, prm, DesignKind::Pds).is_ok());
}
