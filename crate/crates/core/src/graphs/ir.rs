//! Individualization-refinement: ordered partitions refined to equitable
//! form, a reference path in one graph, and depth-first search for leaves
//! whose refinement traces agree with it.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use super::{CayleyGraph, GraphError};

#[derive(Clone, Copy, Debug)]
pub struct Budget {
    start: Instant,
    limit: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { start: Instant::now(), limit: None }
    }

    pub fn seconds(s: f64) -> Self {
        Budget { start: Instant::now(), limit: Some(Duration::from_secs_f64(s)) }
    }

    fn check(&self) -> Result<(), GraphError> {
        match self.limit {
            Some(l) if self.start.elapsed() > l => Err(GraphError::Timeout(self.start.elapsed().as_secs_f64())),
            _ => Ok(()),
        }
    }
}

/// Cells are contiguous runs of `lab`; a cell is named by its start index.
#[derive(Clone, Debug)]
struct Partition {
    lab: Vec<u32>,
    start_of: Vec<u32>,
    len: Vec<u32>,
    cells: usize,
}

impl Partition {
    fn unit(v: usize) -> Self {
        let mut len = vec![0; v];
        if v > 0 {
            len[0] = v as u32;
        }
        Partition { lab: (0..v as u32).collect(), start_of: vec![0; v], len, cells: 1.min(v) }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    fn starts(&self) -> impl Iterator<Item = usize> + '_ {
        let mut s = 0;
        std::iter::from_fn(move || {
            (s < self.lab.len()).then(|| {
                let cur = s;
                s += self.len[cur] as usize;
                cur
            })
        })
    }

    /// First smallest non-singleton cell.
    fn target(&self) -> Option<usize> {
        self.starts().filter(|&s| self.len[s] > 1).min_by_key(|&s| (self.len[s], s))
    }

    fn cell(&self, s: usize) -> &[u32] {
        &self.lab[s..s + self.len[s] as usize]
    }

    fn same_shape(&self, other: &Partition) -> bool {
        self.cells == other.cells && self.starts().all(|s| self.len[s] == other.len[s])
    }

    /// Splits `x` off to the front of its cell; returns its new start.
    fn individualize(&mut self, x: u32) -> usize {
        let s = self.start_of[x as usize] as usize;
        let l = self.len[s] as usize;
        debug_assert!(l > 1);
        let pos = s + self.lab[s..s + l].iter().position(|&y| y == x).unwrap();
        self.lab.swap(s, pos);
        self.len[s] = 1;
        self.len[s + 1] = (l - 1) as u32;
        for &y in &self.lab[s + 1..s + l] {
            self.start_of[y as usize] = (s + 1) as u32;
        }
        self.cells += 1;
        s
    }
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    (h.rotate_left(7) ^ x).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Refines to the coarsest equitable partition below `part`, starting from
/// the splitter cells in `init`.  The returned hash summarises every split
/// and count in order, so equal graphs under a relabeling give equal traces.
fn refine(g: &CayleyGraph, part: &mut Partition, init: &[usize]) -> u64 {
    let v = g.v();
    let words = g.adj().words_per_row();
    let mut queue: VecDeque<usize> = init.iter().copied().collect();
    let mut queued = vec![false; v];
    for &s in init {
        queued[s] = true;
    }
    let mut cnt = vec![0u32; v];
    let mut mask = vec![0u64; words];
    let mut frags: Vec<(usize, u32)> = Vec::new();
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    while let Some(w) = queue.pop_front() {
        queued[w] = false;
        mask.iter_mut().for_each(|m| *m = 0);
        for &x in part.cell(w) {
            mask[x as usize / 64] |= 1 << (x % 64);
        }
        h = mix(h, (w as u64) << 32 | part.len[w] as u64);
        let mut s = 0;
        while s < v {
            let l = part.len[s] as usize;
            for &x in &part.lab[s..s + l] {
                cnt[x as usize] = g.row(x as usize).iter().zip(&mask).map(|(r, m)| (r & m).count_ones()).sum();
            }
            let first = cnt[part.lab[s] as usize];
            if part.lab[s..s + l].iter().all(|&x| cnt[x as usize] == first) {
                h = mix(h, first as u64);
                s += l;
                continue;
            }
            part.lab[s..s + l].sort_unstable_by_key(|&x| cnt[x as usize]);
            frags.clear();
            let mut f = s;
            while f < s + l {
                let c = cnt[part.lab[f] as usize];
                let mut e = f;
                while e < s + l && cnt[part.lab[e] as usize] == c {
                    part.start_of[part.lab[e] as usize] = f as u32;
                    e += 1;
                }
                part.len[f] = (e - f) as u32;
                frags.push((f, c));
                h = mix(h, (c as u64) << 32 | (e - f) as u64);
                f = e;
            }
            part.cells += frags.len() - 1;
            let skip = if queued[s] {
                Some(s)
            } else {
                // the first largest fragment need not be queued
                frags.iter().map(|&(f, _)| f).max_by_key(|&f| (part.len[f], std::cmp::Reverse(f)))
            };
            for &(f, _) in &frags {
                if Some(f) != skip && !queued[f] {
                    queued[f] = true;
                    queue.push_back(f);
                }
            }
            s += l;
        }
        if part.is_discrete() {
            break;
        }
    }
    h
}

struct Level {
    part: Partition,
    trace: u64,
    target: Option<usize>,
}

fn root(g: &CayleyGraph) -> (Partition, u64) {
    let mut part = Partition::unit(g.v());
    let trace = if g.v() > 0 { refine(g, &mut part, &[0]) } else { 0 };
    (part, trace)
}

/// Always individualizes the first vertex of the target cell.
fn first_path(g: &CayleyGraph) -> Vec<Level> {
    let (part, trace) = root(g);
    let mut path = vec![Level { target: part.target(), part, trace }];
    while let Some(t) = path.last().unwrap().target {
        let mut part = path.last().unwrap().part.clone();
        let x = part.lab[t];
        let s = part.individualize(x);
        let trace = refine(g, &mut part, &[s]);
        path.push(Level { target: part.target(), part, trace });
    }
    path
}

struct Search<'a> {
    g: &'a CayleyGraph,
    path: &'a [Level],
    budget: Budget,
    nodes: u64,
}

impl Search<'_> {
    fn child(&mut self, part: &Partition, x: u32, depth: usize) -> Option<Partition> {
        self.nodes += 1;
        let mut child = part.clone();
        let s = child.individualize(x);
        let trace = refine(self.g, &mut child, &[s]);
        let reference = &self.path[depth + 1];
        (trace == reference.trace && child.same_shape(&reference.part)).then_some(child)
    }

    /// `part` matches `path[depth]`; looks for a leaf below it accepted by `accept`.
    fn dfs(
        &mut self,
        depth: usize,
        part: &Partition,
        only: Option<u32>,
        accept: &mut dyn FnMut(&[u32]) -> bool,
    ) -> Result<Option<Vec<u32>>, GraphError> {
        self.budget.check()?;
        let Some(t) = self.path[depth].target else {
            let reference = &self.path[depth].part.lab;
            let mut perm = vec![0u32; reference.len()];
            for (i, &x) in reference.iter().enumerate() {
                perm[x as usize] = part.lab[i];
            }
            return Ok(accept(&perm).then_some(perm));
        };
        let candidates: Vec<u32> = match only {
            Some(x) => vec![x],
            None => part.cell(t).to_vec(),
        };
        for x in candidates {
            if let Some(child) = self.child(part, x, depth) {
                if let Some(found) = self.dfs(depth + 1, &child, None, accept)? {
                    return Ok(Some(found));
                }
            }
        }
        Ok(None)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "mapping")]
pub enum IsoOutcome {
    /// `mapping[a]` is the image in the second graph of vertex `a` of the first
    Isomorphic(Vec<u32>),
    NonIsomorphic,
    Undecided,
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn new(v: usize) -> Self {
        UnionFind((0..v as u32).collect())
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut r = x;
        while self.0[r as usize] != r {
            r = self.0[r as usize];
        }
        let mut c = x;
        while self.0[c as usize] != r {
            c = std::mem::replace(&mut self.0[c as usize], r);
        }
        r
    }

    fn absorb(&mut self, perm: &[u32]) {
        for (a, &b) in perm.iter().enumerate() {
            let (ra, rb) = (self.find(a as u32), self.find(b));
            if ra != rb {
                self.0[ra.max(rb) as usize] = ra.min(rb);
            }
        }
    }
}

fn is_transitive(v: usize, gens: &[Vec<u32>]) -> bool {
    let mut uf = UnionFind::new(v);
    for p in gens {
        uf.absorb(p);
    }
    (0..v as u32).all(|x| uf.find(x) == 0)
}

/// Exact isomorphism test; a returned mapping has been checked edge by edge.
/// When both graphs carry a transitive group of known automorphisms the
/// first branching level tries a single vertex.
pub fn is_isomorphic(g1: &CayleyGraph, g2: &CayleyGraph, budget: Budget) -> Result<IsoOutcome, GraphError> {
    if g1.v() != g2.v() {
        return Err(GraphError::SizeMismatch(g1.v(), g2.v()));
    }
    let v = g1.v();
    if g1.edge_count() != g2.edge_count() {
        return Ok(IsoOutcome::NonIsomorphic);
    }
    let path = first_path(g1);
    let (part2, trace2) = root(g2);
    if trace2 != path[0].trace || !part2.same_shape(&path[0].part) {
        return Ok(IsoOutcome::NonIsomorphic);
    }
    let only = (path[0].part.cells == 1 && is_transitive(v, &g2.translations) && is_transitive(v, &g1.translations))
        .then_some(0u32)
        .filter(|_| v > 1);
    let mut search = Search { g: g2, path: &path, budget, nodes: 0 };
    let found = match search.dfs(0, &part2, only, &mut |perm| g1.maps_onto(g2, perm)) {
        Ok(f) => f,
        Err(GraphError::Timeout(_)) => return Ok(IsoOutcome::Undecided),
        Err(e) => return Err(e),
    };
    Ok(match found {
        Some(perm) => IsoOutcome::Isomorphic(perm),
        None => IsoOutcome::NonIsomorphic,
    })
}

fn big_to_string<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct AutInfo {
    #[serde(serialize_with = "big_to_string")]
    pub order: BigUint,
    /// every generator is re-checked to be an automorphism
    pub generators: Vec<Vec<u32>>,
    /// orbit lengths along the stabilizer chain, top level first
    pub orbit_sizes: Vec<usize>,
    pub nodes: u64,
}

/// Order of the automorphism group via the stabilizer chain of the
/// reference path: `|Aut| = Π |orbit of the individualized vertex|`.
pub fn automorphism_order(g: &CayleyGraph, budget: Budget) -> Result<AutInfo, GraphError> {
    let v = g.v();
    for t in &g.translations {
        if !g.is_automorphism(t) {
            return Err(GraphError::NotAutomorphism);
        }
    }
    let path = first_path(g);
    let depth = path.len() - 1;
    let mut gens: Vec<(usize, Vec<u32>)> = g.translations.iter().map(|t| (0, t.clone())).collect();
    let mut orbit_sizes = vec![1usize; depth];
    let mut search = Search { g, path: &path, budget, nodes: 0 };
    for i in (0..depth).rev() {
        let level = &path[i];
        let t = level.target.expect("non-leaf level has a target cell");
        let vi = level.part.lab[t];
        let mut uf = UnionFind::new(v);
        for (_, p) in gens.iter().filter(|(l, _)| *l >= i) {
            uf.absorb(p);
        }
        for &w in level.part.cell(t) {
            if w == vi || uf.find(w) == uf.find(vi) {
                continue;
            }
            let Some(child) = search.child(&level.part, w, i) else { continue };
            if let Some(perm) = search.dfs(i + 1, &child, None, &mut |p| g.is_automorphism(p))? {
                uf.absorb(&perm);
                gens.push((i, perm));
            }
        }
        let root = uf.find(vi);
        orbit_sizes[i] = level.part.cell(t).iter().filter(|&&w| uf.find(w) == root).count();
    }
    let order = orbit_sizes.iter().fold(BigUint::from(1u32), |acc, &o| acc * BigUint::from(o));
    let generators: Vec<Vec<u32>> = gens.into_iter().map(|(_, p)| p).collect();
    if !generators.iter().all(|p| g.is_automorphism(p)) {
        return Err(GraphError::NotAutomorphism);
    }
    Ok(AutInfo { order, generators, orbit_sizes, nodes: search.nodes })
}
