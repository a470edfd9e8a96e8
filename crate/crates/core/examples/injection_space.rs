//! Perturbations h with G + γh still injective on the cubes.
use zdb_srg::constructions::{injection_space, perturb};
use zdb_srg::{FieldCtx, FieldSpec, FnTable, PowerCoset};
use zdb_srg::funcspace::power_coset;

fn main() {
    let f = FieldCtx::build(FieldSpec::f256_paper()).unwrap();
    let g = FnTable::identity(&f);
    let cubes: PowerCoset = power_coset(&f, 3);
    for k in [3u64, 17, 100] {
        let gamma = f.exp(k);
        let space = injection_space(&g, gamma).unwrap();
        let injective = space.basis.iter().all(|h| perturb(&g, gamma, h).is_injective_on(&cubes));
        println!(
            "γ = w^{k}: {} constraints, dimension {}, every basis vector keeps injectivity: {injective}",
            space.constraint_count(),
            space.dim()
        );
    }
}
