//! Cayley graphs over `(F_{p^n}, +)`, strong-regularity checks, 2-rank,
//! cheap isomorphism invariants and an individualization-refinement engine.

mod io;
mod ir;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bitmat::BitMatrix;
use crate::designs::PdsParams;
use crate::gf::{Elem, FieldCtx};

pub use io::{parse_graph, write_graph};
pub use ir::{automorphism_order, is_isomorphic, AutInfo, Budget, IsoOutcome};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("connection set is not closed under negation")]
    NotRegularSet,
    #[error("0 lies in the connection set")]
    ContainsZero,
    #[error("graph file line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex counts differ ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("search budget exhausted after {0:.1} s")]
    Timeout(f64),
    #[error("permutation is not an automorphism")]
    NotAutomorphism,
}

/// Undirected simple graph with bit-packed rows.  `translations` holds
/// verified automorphisms known in advance (the regular action of the
/// additive group for Cayley graphs), used to seed symmetry searches.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    adj: BitMatrix,
    pub connection_set: Option<Vec<u32>>,
    pub translations: Vec<Vec<u32>>,
}

impl CayleyGraph {
    pub fn from_matrix(adj: BitMatrix) -> Self {
        CayleyGraph { adj, connection_set: None, translations: Vec::new() }
    }

    pub fn from_edges(v: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = BitMatrix::zeros(v, v);
        for &(a, b) in edges {
            if a != b {
                adj.set(a, b, true);
                adj.set(b, a, true);
            }
        }
        Self::from_matrix(adj)
    }

    pub fn complete(v: usize) -> Self {
        let edges: Vec<_> = (0..v).flat_map(|a| (0..a).map(move |b| (a, b))).collect();
        Self::from_edges(v, &edges)
    }

    pub fn v(&self) -> usize {
        self.adj.rows()
    }

    pub fn adj(&self) -> &BitMatrix {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj.get(a, b)
    }

    #[inline]
    pub fn row(&self, a: usize) -> &[u64] {
        self.adj.row(a)
    }

    pub fn degree(&self, a: usize) -> u32 {
        self.row(a).iter().map(|w| w.count_ones()).sum()
    }

    pub fn common_neighbours(&self, a: usize, b: usize) -> u32 {
        self.row(a).iter().zip(self.row(b)).map(|(x, y)| (x & y).count_ones()).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.v()).map(|a| self.degree(a) as usize).sum::<usize>() / 2
    }

    pub fn is_symmetric_irreflexive(&self) -> bool {
        (0..self.v()).all(|a| !self.has_edge(a, a) && (0..a).all(|b| self.has_edge(a, b) == self.has_edge(b, a)))
    }

    /// Image under `π`: vertex `a` becomes `π[a]`.
    pub fn relabel(&self, perm: &[u32]) -> CayleyGraph {
        let v = self.v();
        let mut adj = BitMatrix::zeros(v, v);
        for a in 0..v {
            for b in 0..v {
                if self.has_edge(a, b) {
                    adj.set(perm[a] as usize, perm[b] as usize, true);
                }
            }
        }
        CayleyGraph { adj, connection_set: None, translations: Vec::new() }
    }

    /// Is `perm` an isomorphism from `self` onto `other`?
    pub fn maps_onto(&self, other: &CayleyGraph, perm: &[u32]) -> bool {
        let v = self.v();
        if other.v() != v || perm.len() != v {
            return false;
        }
        let mut seen = vec![false; v];
        for &x in perm {
            if x as usize >= v || std::mem::replace(&mut seen[x as usize], true) {
                return false;
            }
        }
        (0..v).all(|a| {
            let pa = perm[a] as usize;
            (0..a).all(|b| self.has_edge(a, b) == other.has_edge(pa, perm[b] as usize))
        })
    }

    pub fn is_automorphism(&self, perm: &[u32]) -> bool {
        self.maps_onto(self, perm)
    }

    /// Keeps the maps `x -> x xor c` (vertices read as bit vectors) that
    /// preserve adjacency, for `c` a power of two.
    pub fn detect_xor_translations(&mut self) {
        let v = self.v();
        if !v.is_power_of_two() || v < 2 {
            return;
        }
        self.translations = (0..v.trailing_zeros())
            .map(|i| (0..v as u32).map(|x| x ^ (1 << i)).collect::<Vec<u32>>())
            .filter(|perm| self.is_automorphism(perm))
            .collect();
    }
}

/// `adj[g][h] = 1` iff `g - h ∈ D`.
pub fn cayley_graph(ctx: &FieldCtx, d: &[u32]) -> Result<CayleyGraph, GraphError> {
    let q = ctx.q();
    let mut member = vec![false; q];
    for &x in d {
        member[x as usize] = true;
    }
    if member[0] {
        return Err(GraphError::ContainsZero);
    }
    if d.iter().any(|&x| !member[ctx.neg(Elem(x)).idx()]) {
        return Err(GraphError::NotRegularSet);
    }
    let rows: Vec<Vec<u64>> = (0..q as u32)
        .into_par_iter()
        .map(|g| {
            let mut row = vec![0u64; q.div_ceil(64).max(1)];
            for &x in d {
                let h = ctx.sub(Elem(g), Elem(x)).idx();
                row[h / 64] |= 1 << (h % 64);
            }
            row
        })
        .collect();
    let mut adj = BitMatrix::zeros(q, q);
    for (g, row) in rows.iter().enumerate() {
        adj.row_mut(g).copy_from_slice(row);
    }
    let translations = ctx
        .basis()
        .into_iter()
        .map(|b| (0..q as u32).map(|x| ctx.add(Elem(x), b).0).collect())
        .collect();
    let mut set = d.to_vec();
    set.sort_unstable();
    set.dedup();
    Ok(CayleyGraph { adj, connection_set: Some(set), translations })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SrgViolation {
    Degree,
    Lambda,
    Mu,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SrgWitness {
    pub kind: SrgViolation,
    pub a: usize,
    pub b: usize,
    pub count: u32,
    pub expected: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SrgVerdict {
    pub params: PdsParams,
    pub holds: bool,
    pub witness: Option<SrgWitness>,
}

/// Checks regularity and the `λ`/`μ` common-neighbour counts; the first
/// violating pair in row-major order is the witness.
pub fn verify_srg(g: &CayleyGraph, params: PdsParams) -> SrgVerdict {
    let fail = |w: SrgWitness| SrgVerdict { params, holds: false, witness: Some(w) };
    let v = g.v();
    if v as u64 != params.v {
        return fail(SrgWitness { kind: SrgViolation::Degree, a: 0, b: 0, count: v as u32, expected: params.v });
    }
    for a in 0..v {
        let deg = g.degree(a);
        if deg as u64 != params.k {
            return fail(SrgWitness { kind: SrgViolation::Degree, a, b: a, count: deg, expected: params.k });
        }
    }
    let first_bad = (0..v).into_par_iter().find_map_first(|a| {
        (0..a).find_map(|b| {
            let c = g.common_neighbours(a, b);
            let (kind, expected) =
                if g.has_edge(a, b) { (SrgViolation::Lambda, params.lambda) } else { (SrgViolation::Mu, params.mu) };
            (c as u64 != expected).then_some(SrgWitness { kind, a, b, count: c, expected })
        })
    });
    match first_bad {
        Some(w) => fail(w),
        None => SrgVerdict { params, holds: true, witness: None },
    }
}

/// `(v, k, λ, μ)` read off the graph when it is strongly regular.  For a
/// complete graph `μ` is reported as 0.
pub fn srg_parameters(g: &CayleyGraph) -> Option<PdsParams> {
    let v = g.v();
    if v == 0 {
        return None;
    }
    let k = g.degree(0) as u64;
    let (mut lambda, mut mu) = (None, None);
    for a in 0..v {
        for b in 0..a {
            let slot = if g.has_edge(a, b) { &mut lambda } else { &mut mu };
            slot.get_or_insert(g.common_neighbours(a, b) as u64);
        }
        if lambda.is_some() && mu.is_some() {
            break;
        }
    }
    let params = PdsParams::new(v as u64, k, lambda.unwrap_or(0), mu.unwrap_or(0));
    verify_srg(g, params).holds.then_some(params)
}

pub fn rank2(g: &CayleyGraph) -> usize {
    g.adj.rank()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GraphFingerprint {
    pub v: usize,
    /// degree -> number of vertices
    pub degrees: BTreeMap<u32, u64>,
    pub rank2: usize,
    /// number of 4-cliques through an edge -> number of edges
    pub k4_per_edge: BTreeMap<u32, u64>,
    /// common-neighbour count -> number of unordered vertex pairs
    pub common_neighbours: BTreeMap<u32, u64>,
}

fn merge(mut a: BTreeMap<u32, u64>, b: BTreeMap<u32, u64>) -> BTreeMap<u32, u64> {
    for (k, c) in b {
        *a.entry(k).or_insert(0) += c;
    }
    a
}

pub fn fingerprint(g: &CayleyGraph) -> GraphFingerprint {
    let v = g.v();
    let words = g.adj.words_per_row();
    let (k4, common) = (0..v)
        .into_par_iter()
        .map(|a| {
            let mut k4 = BTreeMap::new();
            let mut common = BTreeMap::new();
            let mut inter = vec![0u64; words];
            for b in 0..a {
                for (i, w) in inter.iter_mut().enumerate() {
                    *w = g.row(a)[i] & g.row(b)[i];
                }
                let c: u32 = inter.iter().map(|w| w.count_ones()).sum();
                *common.entry(c).or_insert(0) += 1;
                if g.has_edge(a, b) {
                    let mut twice = 0u32;
                    for (wi, &word) in inter.iter().enumerate() {
                        let mut bits = word;
                        while bits != 0 {
                            let x = wi * 64 + bits.trailing_zeros() as usize;
                            bits &= bits - 1;
                            twice += g.row(x).iter().zip(&inter).map(|(r, m)| (r & m).count_ones()).sum::<u32>();
                        }
                    }
                    *k4.entry(twice / 2).or_insert(0) += 1;
                }
            }
            (k4, common)
        })
        .reduce(|| (BTreeMap::new(), BTreeMap::new()), |(a1, b1), (a2, b2)| (merge(a1, a2), merge(b1, b2)));
    let mut degrees = BTreeMap::new();
    for a in 0..v {
        *degrees.entry(g.degree(a)).or_insert(0) += 1;
    }
    GraphFingerprint { v, degrees, rank2: rank2(g), k4_per_edge: k4, common_neighbours: common }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{image_pds, verify_design, DesignKind};
    use crate::funcspace::PolyFn;
    use crate::gf::FieldSpec;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cube_graph() -> CayleyGraph {
        let f = FieldCtx::build(FieldSpec::f256_paper()).unwrap();
        let d = image_pds(&PolyFn::monomial(&f, 3).evaluate()).unwrap();
        cayley_graph(&f, &d).unwrap()
    }

    fn random_perm(v: usize, seed: u64) -> Vec<u32> {
        let mut p: Vec<u32> = (0..v as u32).collect();
        p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        p
    }

    #[test]
    fn cube_graph_is_srg_of_full_rank() {
        let g = cube_graph();
        assert!(g.is_symmetric_irreflexive());
        let prm = PdsParams::new(256, 85, 24, 30);
        assert!(verify_srg(&g, prm).holds);
        assert_eq!(srg_parameters(&g), Some(prm));
        assert_eq!(rank2(&g), 256);
        for t in &g.translations {
            assert!(g.is_automorphism(t));
        }
        let bad = verify_srg(&g, PdsParams::new(256, 85, 24, 31));
        assert_eq!(bad.witness.unwrap().kind, SrgViolation::Mu);
    }

    #[test]
    fn odd_characteristic_graph() {
        let f = FieldCtx::build_default(3, 4).unwrap();
        let d = image_pds(&PolyFn::monomial(&f, 4).evaluate()).unwrap();
        let prm = PdsParams::new(81, 20, 1, 6);
        verify_design(&f, &d, prm, DesignKind::Pds).unwrap();
        let g = cayley_graph(&f, &d).unwrap();
        assert!(verify_srg(&g, prm).holds);
        let f = FieldCtx::build_default(3, 3).unwrap();
        let d = image_pds(&PolyFn::monomial(&f, 2).evaluate()).unwrap();
        assert!(matches!(cayley_graph(&f, &d), Err(GraphError::NotRegularSet)));
    }

    #[test]
    fn small_cases() {
        let f = FieldCtx::build_default(2, 2).unwrap();
        let k4 = cayley_graph(&f, &[1, 2, 3]).unwrap();
        assert_eq!(rank2(&k4), 4);
        assert!(verify_srg(&k4, PdsParams::new(4, 3, 2, 0)).holds);
        assert!(verify_srg(&k4, PdsParams::new(4, 3, 2, 7)).holds);
        assert_eq!(rank2(&CayleyGraph::from_edges(5, &[])), 0);
        assert!(matches!(cayley_graph(&f, &[0, 1]), Err(GraphError::ContainsZero)));
    }

    #[test]
    fn invariants_survive_relabeling() {
        let g = cube_graph();
        let fp = fingerprint(&g);
        assert_eq!(fp.degrees.get(&85), Some(&256));
        assert_eq!(fp.common_neighbours.values().sum::<u64>(), 256 * 255 / 2);
        assert_eq!(fp.k4_per_edge.values().sum::<u64>(), 256 * 85 / 2);
        for seed in 0..2 {
            let h = g.relabel(&random_perm(256, seed));
            assert_eq!(rank2(&h), 256);
            assert_eq!(fingerprint(&h), fp);
        }
    }
}
