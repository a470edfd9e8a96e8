//! Individualization-refinement isomorphism tests between catalog graphs.
use zdb_srg::catalog;
use zdb_srg::designs::image_pds;
use zdb_srg::graphs::{cayley_graph, is_isomorphic, Budget, CayleyGraph, IsoOutcome};

fn graph(n: usize) -> CayleyGraph {
    let f = catalog::field();
    let d = image_pds(&catalog::get(n).unwrap().parse(&f).unwrap().evaluate()).unwrap();
    cayley_graph(&f, &d).unwrap()
}

fn main() {
    for (a, b) in [(2, 6), (13, 17), (1, 5)] {
        let (ga, gb) = (graph(a), graph(b));
        match is_isomorphic(&ga, &gb, Budget::seconds(60.0)).unwrap() {
            IsoOutcome::Isomorphic(m) => {
                println!("{a} ≅ {b}; mapping re-checked: {}", ga.maps_onto(&gb, &m))
            }
            other => println!("{a} vs {b}: {other:?}"),
        }
    }
}
