//! Closed forms for gcd(p^t + 1, p^n ± 1) against Euclid.
use zdb_srg::constructions::gcd_lemma;

fn main() {
    let mut checked = 0;
    for p in [2, 3, 5, 7] {
        for t in 1..=6 {
            for n in 1..=12 {
                gcd_lemma(p, t, n).expect("formula agrees");
                checked += 1;
            }
        }
    }
    let b = gcd_lemma(3, 2, 8).unwrap();
    println!("{checked} triples agree; e.g. p=3 t=2 n=8: gcd- = {}, gcd+ = {}", b.gcd_minus, b.gcd_plus);
}
