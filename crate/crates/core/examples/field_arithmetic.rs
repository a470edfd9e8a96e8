//! Log/antilog arithmetic in the preset field and a small odd-characteristic field.
use zdb_srg::{Elem, FieldCtx, FieldSpec};

fn main() {
    let f = FieldCtx::build(FieldSpec::f256_paper()).unwrap();
    print!("{}", f.spec().to_block());
    let a = f.exp(37);
    let b = f.parse_elem("w^200").unwrap();
    println!("w^37 * w^200 = {}", f.format_elem(f.mul(a, b)));
    println!("w^37 + w^200 = code {}", f.add(a, b).0);
    println!("1 / w^37 = {}", f.format_elem(f.inv(a).unwrap()));
    println!("Tr(w^37) = {}", f.trace(a));

    let g = FieldCtx::build_default(3, 4).unwrap();
    let x = g.exp(10);
    println!("F_81: w^10 has digits {:?}, Frobenius image {}", g.digits(x), g.format_elem(g.frobenius(x)));
    println!("F_81: -w^10 = {}, w^10 - w^10 = {}", g.format_elem(g.neg(x)), g.sub(x, x) == Elem::ZERO);
}
