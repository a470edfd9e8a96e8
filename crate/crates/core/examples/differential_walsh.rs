//! Differential spectrum, exact Walsh spectrum and power sums of x^3 on F_256.
use zdb_srg::spectra::{differential_spectrum, walsh, walsh_power_sum_check};
use zdb_srg::{FieldCtx, FieldSpec, PolyFn};

fn main() {
    let f = FieldCtx::build(FieldSpec::f256_paper()).unwrap();
    let t = PolyFn::monomial(&f, 3).evaluate();
    let spec = differential_spectrum(&t);
    println!("Δ_F = {}, histogram {:?}, APN: {}", spec.delta_max, spec.histogram, spec.is_apn());
    let w = walsh(&t);
    println!("Walsh values: {:?}", w.int_value_set().unwrap());
    println!("nonlinearity: {:?}", w.nonlinearity());
    let check = walsh_power_sum_check(&w, 2);
    println!(
        "Σ_a |W(a,b)|^2: {} at b = 0, {} elsewhere; identity holds: {}",
        check.expected_zero,
        check.expected_nonzero,
        check.holds()
    );
}
