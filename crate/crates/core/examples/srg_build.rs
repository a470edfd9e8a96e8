//! Cayley graph of a catalog image set: SRG check, 2-rank, invariants, file format.
use zdb_srg::catalog;
use zdb_srg::designs::{image_pds, PdsParams};
use zdb_srg::graphs::{cayley_graph, fingerprint, parse_graph, rank2, verify_srg, write_graph};

fn main() {
    let f = catalog::field();
    let poly = catalog::get(18).unwrap().parse(&f).unwrap();
    let d = image_pds(&poly.evaluate()).unwrap();
    let g = cayley_graph(&f, &d).unwrap();
    let params = PdsParams::new(256, 85, 24, 30);
    println!("SRG {params}: {}", verify_srg(&g, params).holds);
    println!("eigenvalues and multiplicities: {:?}", params.eigen_multiplicities());
    println!("2-rank: {}", rank2(&g));
    let fp = fingerprint(&g);
    println!("4-cliques per edge: {:?}", fp.k4_per_edge);
    let text = write_graph(&g);
    println!("graph file: {} lines, round trip exact: {}", text.lines().count(), parse_graph(&text).unwrap().adj() == g.adj());
}
