use serde::Serialize;

use super::ConstructionError;
use crate::funcspace::FnTable;
use crate::spectra::{zero_difference_profile, ZdbClass};

/// The shift code `{(F(a_0 + a_i), ..., F(a_{q-1} + a_i))}` of a ZDB function.
#[derive(Clone, Debug, Serialize)]
pub struct CccReport {
    pub length: usize,
    pub size: usize,
    pub min_distance: usize,
    /// `[#F^{-1}(0), #F^{-1}(b) for nonzero b in the image by code, zeros...]`
    pub composition: Vec<usize>,
    pub delta: u32,
    /// `(q, q, q - (d - 1), [1, d^{(q-1)/d}, 0^{(q-1)(d-1)/d}])` with `d = δ + 1`
    pub claimed: (usize, usize, usize, Vec<usize>),
    pub every_row_same_composition: bool,
    #[serde(skip)]
    pub codebook: Vec<Vec<u32>>,
}

impl CccReport {
    pub fn matches_claim(&self) -> bool {
        self.every_row_same_composition
            && (self.length, self.size, self.min_distance, &self.composition)
                == (self.claimed.0, self.claimed.1, self.claimed.2, &self.claimed.3)
    }
}

fn composition_of(row: &[u32], q: usize) -> Vec<usize> {
    let mut counts = vec![0usize; q];
    for &v in row {
        counts[v as usize] += 1;
    }
    let mut out = vec![counts[0]];
    let mut rest: Vec<usize> = counts[1..].iter().copied().filter(|&c| c > 0).collect();
    rest.resize(q - 1, 0);
    out.extend(rest);
    out
}

pub fn ccc_from_zdb(f: &FnTable) -> Result<CccReport, ConstructionError> {
    let ctx = f.ctx();
    let q = ctx.q();
    let (_, class) = zero_difference_profile(f);
    let ZdbClass::Zdb(delta) = class else {
        return Err(ConstructionError::NotZdb);
    };
    let d = delta as usize + 1;
    if (q - 1) % d != 0 || !f.at(crate::gf::Elem::ZERO).is_zero() {
        return Err(ConstructionError::Precondition(format!("needs F(0) = 0 and d = {d} dividing q - 1")));
    }
    let codebook: Vec<Vec<u32>> = ctx
        .elements()
        .map(|ai| ctx.elements().map(|aj| f.at(ctx.add(aj, ai)).0).collect())
        .collect();
    let composition = composition_of(&codebook[0], q);
    let every_row_same_composition = codebook.iter().all(|row| composition_of(row, q) == composition);
    let mut distinct = codebook.clone();
    distinct.sort();
    distinct.dedup();
    let mut min_distance = usize::MAX;
    for i in 0..q {
        for j in i + 1..q {
            let dist = codebook[i].iter().zip(&codebook[j]).filter(|(a, b)| a != b).count();
            min_distance = min_distance.min(dist);
        }
    }
    let mut claimed_comp = vec![1];
    claimed_comp.extend(std::iter::repeat(d).take((q - 1) / d));
    claimed_comp.resize(q, 0);
    Ok(CccReport {
        length: q,
        size: distinct.len(),
        min_distance,
        composition,
        delta,
        claimed: (q, q, q - (d - 1), claimed_comp),
        every_row_same_composition,
        codebook,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::PolyFn;
    use crate::gf::{Elem, FieldCtx};

    #[test]
    fn cube_on_f16() {
        let f = FieldCtx::build_default(2, 4).unwrap();
        let r = ccc_from_zdb(&PolyFn::monomial(&f, 3).evaluate()).unwrap();
        assert_eq!((r.length, r.size, r.min_distance), (16, 16, 14));
        assert_eq!(&r.composition[..7], &[1, 3, 3, 3, 3, 3, 0]);
        assert_eq!(r.composition.len(), 16);
        assert!(r.matches_claim());
    }

    #[test]
    fn identity_code() {
        let f = FieldCtx::build_default(3, 2).unwrap();
        let r = ccc_from_zdb(&FnTable::identity(&f)).unwrap();
        assert_eq!((r.length, r.size, r.min_distance), (9, 9, 9));
        assert!(r.composition.iter().all(|&c| c == 1));
        assert!(r.matches_claim());
    }

    #[test]
    fn rejects_non_zdb() {
        let f = FieldCtx::build_default(2, 4).unwrap();
        let t = PolyFn::new(&f, [(3, Elem::ONE), (5, Elem::ONE)]).evaluate();
        assert!(ccc_from_zdb(&t).is_err());
    }

}
