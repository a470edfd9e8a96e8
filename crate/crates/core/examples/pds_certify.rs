//! Predicted parameters and exact certification of image sets as PDS / DS.
use zdb_srg::designs::{image_pds, predicted_params, verify_design};
use zdb_srg::{FieldCtx, PolyFn};

fn main() {
    for (p, t, n, d) in [(3u32, 1u32, 4u32, 4u64), (3, 0, 3, 2), (5, 0, 2, 2), (2, 1, 8, 3)] {
        let f = FieldCtx::build_default(p, n).unwrap();
        let pred = predicted_params(p, t, n).unwrap();
        let set = image_pds(&PolyFn::monomial(&f, d).evaluate()).unwrap();
        let cert = verify_design(&f, &set, pred.params, pred.kind).unwrap();
        let latin: Vec<_> = pred.latin.iter().map(|l| l.label()).collect();
        println!(
            "x^{d} on F_{{{p}^{n}}}: {:?} {} certified, regular={}, {} character values, Latin: {latin:?}",
            pred.kind,
            pred.params,
            cert.regular,
            cert.char_values.len()
        );
    }
}
