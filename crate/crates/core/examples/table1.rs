//! The full catalog pipeline, with automorphism orders.
use zdb_srg::pipeline::{reproduce_table1, Table1Options};

fn main() {
    let opts = Table1Options { skip_aut: false, ..Table1Options::default() };
    let report = reproduce_table1(opts).unwrap();
    print!("{}", report.to_text());
}
