//! Monomial matrices (a permutation times a diagonal of roots of unity) with
//! exact phases.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::phase::Phase;

/// Column `c` is sent to `phase[c] · e_{perm[c]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialMatrix {
    perm: Vec<usize>,
    phase: Vec<Phase>,
}

impl MonomialMatrix {
    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
            phase: vec![Phase::zero(); n],
        }
    }

    pub fn diagonal(phases: Vec<Phase>) -> Self {
        Self {
            perm: (0..phases.len()).collect(),
            phase: phases,
        }
    }

    /// `e_c -> e_{c+shift mod n}`.
    pub fn cyclic_shift(n: usize, shift: i64) -> Self {
        let s = shift.rem_euclid(n as i64) as usize;
        Self {
            perm: (0..n).map(|c| (c + s) % n).collect(),
            phase: vec![Phase::zero(); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn scale(&self, s: Phase) -> Self {
        Self {
            perm: self.perm.clone(),
            phase: self.phase.iter().map(|&p| p + s).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        let mut perm = Vec::with_capacity(self.dim());
        let mut phase = Vec::with_capacity(self.dim());
        for c in 0..rhs.dim() {
            let mid = rhs.perm[c];
            perm.push(self.perm[mid]);
            phase.push(rhs.phase[c] + self.phase[mid]);
        }
        Self { perm, phase }
    }

    pub fn inverse(&self) -> Self {
        let mut perm = vec![0; self.dim()];
        let mut phase = vec![Phase::zero(); self.dim()];
        for c in 0..self.dim() {
            perm[self.perm[c]] = c;
            phase[self.perm[c]] = -self.phase[c];
        }
        Self { perm, phase }
    }

    pub fn pow(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity(self.dim());
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        let m = rhs.dim();
        let mut perm = Vec::with_capacity(self.dim() * m);
        let mut phase = Vec::with_capacity(self.dim() * m);
        for i in 0..self.dim() {
            for j in 0..m {
                perm.push(self.perm[i] * m + rhs.perm[j]);
                phase.push(self.phase[i] + rhs.phase[j]);
            }
        }
        Self { perm, phase }
    }

    /// Block matrix with `blocks[(row, col)]`; every block column must hold
    /// exactly one block and all blocks share one size.
    pub fn from_blocks(size: usize, blocks: &[(usize, usize, &MonomialMatrix)]) -> Self {
        let m = blocks.first().map_or(0, |b| b.2.dim());
        let mut perm = vec![usize::MAX; size * m];
        let mut phase = vec![Phase::zero(); size * m];
        for &(r, c, b) in blocks {
            assert_eq!(b.dim(), m, "blocks must share one size");
            for j in 0..m {
                let col = c * m + j;
                assert_eq!(perm[col], usize::MAX, "block column {c} filled twice");
                perm[col] = r * m + b.perm[j];
                phase[col] = b.phase[j];
            }
        }
        assert!(perm.iter().all(|&p| p != usize::MAX), "missing block column");
        Self { perm, phase }
    }

    pub fn block_diagonal(blocks: &[MonomialMatrix]) -> Self {
        let refs: Vec<_> = blocks.iter().enumerate().map(|(i, b)| (i, i, b)).collect();
        Self::from_blocks(blocks.len(), &refs)
    }

    /// `s` with `self = s · other`, if the two differ by a scalar.
    pub fn scalar_ratio(&self, other: &Self) -> Option<Phase> {
        if self.perm != other.perm {
            return None;
        }
        let mut it = self.phase.iter().zip(&other.phase).map(|(&a, &b)| a - b);
        let first = it.next().unwrap_or_else(Phase::zero);
        it.all(|d| d == first).then_some(first)
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let n = self.dim();
        let mut m = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
        for c in 0..n {
            m[(self.perm[c], c)] = self.phase[c].to_complex();
        }
        m
    }

    /// Row-major `[re, im]` pairs.
    pub fn to_rows(&self) -> Vec<Vec<[f64; 2]>> {
        let d = self.to_dense();
        (0..d.nrows())
            .map(|r| (0..d.ncols()).map(|c| [d[(r, c)].re, d[(r, c)].im]).collect())
            .collect()
    }
}
