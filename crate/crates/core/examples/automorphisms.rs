//! Automorphism group orders along a stabilizer chain.
use zdb_srg::catalog;
use zdb_srg::designs::image_pds;
use zdb_srg::graphs::{automorphism_order, cayley_graph, Budget};

fn main() {
    let f = catalog::field();
    for n in [14, 1, 3] {
        let entry = catalog::get(n).unwrap();
        let d = image_pds(&entry.parse(&f).unwrap().evaluate()).unwrap();
        let g = cayley_graph(&f, &d).unwrap();
        let info = automorphism_order(&g, Budget::seconds(600.0)).unwrap();
        println!(
            "entry {n}: |Aut| = {} (orbits {:?}), expected {}",
            info.order, info.orbit_sizes, entry.aut_order
        );
    }
}
