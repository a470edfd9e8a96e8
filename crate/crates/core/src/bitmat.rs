//! Dense matrices over F_2 packed into `u64` words.

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        BitMatrix { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn words_per_row(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.data[r * self.words + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.words..(r + 1) * self.words]
    }

    pub fn push_row(&mut self, bits: &[usize]) {
        self.data.extend(std::iter::repeat(0).take(self.words));
        self.rows += 1;
        for &c in bits {
            self.flip(self.rows - 1, c);
        }
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        let w = self.words;
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * w);
            (&mut lo[dst * w..dst * w + w], &hi[..w])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * w);
            (&mut hi[..w], &lo[src * w..src * w + w])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x ^= *y;
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c)) else { continue };
            if pr != r {
                let w = self.words;
                for k in 0..w {
                    self.data.swap(pr * w + k, r * w + k);
                }
            }
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_rows(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{h : M hᵀ = 0}`, each vector as a packed bit row of length `cols`.
    pub fn null_space(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u64; self.words];
            v[free / 64] |= 1 << (free % 64);
            for (r, &pc) in pivots.iter().enumerate() {
                if m.get(r, free) {
                    v[pc / 64] |= 1 << (pc % 64);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// `M vᵀ` as a bit vector of length `rows`.
    pub fn mul_vec(&self, v: &[u64]) -> Vec<bool> {
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1)
            .collect()
    }
}

#[inline]
pub fn bit(v: &[u64], i: usize) -> bool {
    v[i / 64] >> (i % 64) & 1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rank() {
        let mut m = BitMatrix::zeros(70, 70);
        for i in 0..70 {
            m.set(i, i, true);
        }
        assert_eq!(m.rank(), 70);
        assert!(m.null_space().is_empty());
    }

    #[test]
    fn k4_complement_of_identity() {
        // J + I over F_2 for v = 4 squares to I
        let mut m = BitMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                m.set(i, j, i != j);
            }
        }
        assert_eq!(m.rank(), 4);
    }

    #[test]
    fn null_space_annihilates() {
        let mut m = BitMatrix::zeros(0, 10);
        m.push_row(&[0, 3]);
        m.push_row(&[3, 7]);
        m.push_row(&[0, 7]);
        m.push_row(&[1, 2, 9]);
        let ns = m.null_space();
        assert_eq!(ns.len(), 10 - m.rank());
        assert_eq!(m.rank(), 3);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(|&b| !b));
        }
        assert!(BitMatrix::zeros(5, 5).null_space().len() == 5);
    }
}
