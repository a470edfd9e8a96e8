//! Zero-difference profiles in several characteristics.
use zdb_srg::spectra::zero_difference_profile;
use zdb_srg::{FieldCtx, PolyFn};

fn main() {
    for (p, n, d) in [(2, 6, 3), (3, 4, 4), (3, 3, 2), (5, 2, 2), (2, 5, 5), (2, 4, 7)] {
        let f = FieldCtx::build_default(p, n).unwrap();
        let (profile, class) = zero_difference_profile(&PolyFn::monomial(&f, d).evaluate());
        let (lo, hi) = (profile.iter().min().unwrap(), profile.iter().max().unwrap());
        println!("x^{d} over F_{{{p}^{n}}}: {} (zero-difference counts {lo}..{hi})", class.label());
    }
}
