//! Uniformity of G(x^d) when G is injective on the d-th powers, and
//! completion of such G to a permutation.
use zdb_srg::constructions::{check_composed_uniformity, extend_to_permutation};
use zdb_srg::{FieldCtx, FieldSpec, PolyFn};

fn main() {
    let f = FieldCtx::build(FieldSpec::f256_paper()).unwrap();
    let g = PolyFn::parse_text(&f, "x^{48} + x^2 + x").unwrap().evaluate();
    let (verdict, composed) = check_composed_uniformity(&g, 3);
    println!("injective on C_3: {}, G(x^3) uniformity {}", verdict.injective, verdict.delta);
    println!("G(x^3) image size: {}", composed.image_set().len());
    if let Ok(t) = extend_to_permutation(&g, 3) {
        println!("completed to a permutation: {}", t.is_permutation());
    }
}
