//! Small dense linear algebra over `F_p` for prime `p`.

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) inverts a
    let (mut base, mut e, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Row-reduces `m` in place (entries in `[0, p)`); returns pivot columns.
pub fn rref(m: &mut [Vec<u32>], p: u32) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(pr, r);
        let inv = inv_mod(m[r][c], p);
        for v in m[r].iter_mut() {
            *v = (*v as u64 * inv as u64 % p as u64) as u32;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let factor = m[i][c];
                for j in 0..cols {
                    let sub = (factor as u64 * m[r][j] as u64 % p as u64) as u32;
                    m[i][j] = (m[i][j] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<u32>], p: u32) -> usize {
    rref(&mut m.to_vec(), p).len()
}

/// Solves `A x = b`: one particular solution plus a kernel basis, or `None`
/// when inconsistent.
pub fn solve(a: &[Vec<u32>], b: &[u32], p: u32) -> Option<(Vec<u32>, Vec<Vec<u32>>)> {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<u32>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs % p);
            r
        })
        .collect();
    let pivots = rref(&mut aug, p);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![0u32; cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols];
    }
    let mut kernel = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; cols];
        v[free] = 1;
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = (p - aug[r][free]) % p;
        }
        kernel.push(v);
    }
    Some((x, kernel))
}

/// All `F_p`-combinations of `basis` added to `offset`.
pub fn span_from(offset: &[u32], basis: &[Vec<u32>], p: u32) -> Vec<Vec<u32>> {
    let mut out = vec![offset.to_vec()];
    for v in basis {
        let mut next = Vec::with_capacity(out.len() * p as usize);
        for w in &out {
            for k in 0..p {
                next.push(w.iter().zip(v).map(|(&a, &b)| (a + k * b) % p).collect());
            }
        }
        out = next;
    }
    out
}
