use crate::bitmat::{bit, BitMatrix};
use crate::funcspace::{p_weight, power_coset, reduce_exponent, FnTable, PolyFn};
use crate::gf::Elem;

use super::ConstructionError;

/// Boolean `h` (as truth tables) keeping `G + γh` injective on `C_3 ∪ {0}`.
#[derive(Clone, Debug)]
pub struct InjectionSpace {
    pub gamma: Elem,
    /// packed truth tables, bit `u` = `h(u)`
    pub basis: Vec<Vec<u64>>,
    /// rows of the constraint matrix, one per pair `{u, v}` with `G(u) + G(v) = γ`
    pub pairs: Vec<(u32, u32)>,
    q: usize,
}

impl InjectionSpace {
    pub fn constraint_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether `h` satisfies every pair constraint.
    pub fn contains(&self, h: &[u64]) -> bool {
        self.pairs.iter().all(|&(u, v)| bit(h, u as usize) == bit(h, v as usize))
    }

    pub fn table(&self, h: &[u64]) -> Vec<bool> {
        (0..self.q).map(|u| bit(h, u)).collect()
    }
}

/// `x ↦ G(x) + γ h(x)`.
pub fn perturb(g: &FnTable, gamma: Elem, h: &[u64]) -> FnTable {
    let f = g.ctx();
    FnTable::from_fn(f, |x| if bit(h, x.idx()) { f.add(g.at(x), gamma) } else { g.at(x) })
}

/// Solves `R hᵀ = 0` over `F_2`, columns indexed by all field elements, and
/// re-verifies every basis vector.
pub fn injection_space(g: &FnTable, gamma: Elem) -> Result<InjectionSpace, ConstructionError> {
    let f = g.ctx();
    if f.p() != 2 || gamma.is_zero() {
        return Err(ConstructionError::Precondition("needs characteristic 2 and γ != 0".into()));
    }
    let points = power_coset(f, 3).with_zero();
    if let Some((u, v)) = g.collision_on(&points) {
        return Err(super::fmt_pair(f, u, v));
    }
    let mut by_value = vec![u32::MAX; f.q()];
    for &u in &points {
        by_value[g.values()[u as usize] as usize] = u;
    }
    let mut pairs = Vec::new();
    let mut r = BitMatrix::zeros(0, f.q());
    for &u in &points {
        let v = by_value[(g.values()[u as usize] ^ gamma.0) as usize];
        if v != u32::MAX && u < v {
            pairs.push((u, v));
            r.push_row(&[u as usize, v as usize]);
        }
    }
    let basis = r.null_space();
    let space = InjectionSpace { gamma, basis, pairs, q: f.q() };
    for h in &space.basis {
        let perturbed = perturb(g, gamma, h);
        if let Some((u, v)) = perturbed.collision_on(&points) {
            return Err(super::fmt_pair(f, u, v));
        }
    }
    Ok(space)
}

/// Every exponent `e` has `3e` of binary weight at most 2, so `h(x^3)` stays
/// quadratic.
pub fn quadratic_h_filter(h: &PolyFn) -> bool {
    let q = h.ctx().q() as u64;
    h.terms().iter().all(|&(e, _)| p_weight(reduce_exponent(3 * e, q), 2) <= 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{FieldCtx, FieldSpec};

    #[test]
    fn identity_space_on_f256() {
        let f = FieldCtx::build(FieldSpec::f256_paper()).unwrap();
        let g = FnTable::identity(&f);
        let s = injection_space(&g, f.exp(17)).unwrap();
        assert!(s.constraint_count() > 0);
        let mut r = BitMatrix::zeros(0, 256);
        for &(u, v) in &s.pairs {
            r.push_row(&[u as usize, v as usize]);
        }
        assert_eq!(s.dim(), 256 - r.rank());
        assert!(s.contains(&vec![0u64; 4]));
        let sum: Vec<u64> = s.basis[0].iter().zip(&s.basis[1]).map(|(a, b)| a ^ b).collect();
        assert!(s.contains(&sum));
        let points = power_coset(&f, 3).with_zero();
        assert!(perturb(&g, s.gamma, &sum).collision_on(&points).is_none());
    }

    #[test]
    fn unconstrained_gamma_gives_full_space() {
        let f = FieldCtx::build_default(2, 4).unwrap();
        // send C_3 ∪ {0} into the span of 1, w, w^2 so that sums never reach w^3
        let points = power_coset(&f, 3).with_zero();
        let g = FnTable::from_fn(&f, |x| match points.iter().position(|&u| u == x.0) {
            Some(i) => Elem(i as u32),
            None => x,
        });
        let s = injection_space(&g, f.exp(3)).unwrap();
        assert_eq!(s.constraint_count(), 0);
        assert_eq!(s.dim(), 16);
    }

    #[test]
    fn filter() {
        let f = FieldCtx::build(FieldSpec::f256_paper()).unwrap();
        assert!(quadratic_h_filter(&PolyFn::monomial(&f, 1)));
        assert!(quadratic_h_filter(&PolyFn::monomial(&f, 4)));
        assert!(!quadratic_h_filter(&PolyFn::monomial(&f, 7)));
    }
}
