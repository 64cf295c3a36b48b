//! Exact Gaussian elimination over small finite fields.
//!
//! Matrices are dense `Vec<Vec<E>>` in row-major order. Everything here is
//! generic over [`FieldOps`], which is implemented both for the prime field
//! `F_p` and for the extension fields built in [`crate::gf`].

use crate::numth::mod_inverse;

pub trait FieldOps {
    type E: Copy + Eq + std::fmt::Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: Self::E, b: Self::E) -> Self::E;
    fn sub(&self, a: Self::E, b: Self::E) -> Self::E;
    fn mul(&self, a: Self::E, b: Self::E) -> Self::E;
    /// `None` for zero.
    fn inv(&self, a: Self::E) -> Option<Self::E>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl FieldOps for PrimeField {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }
    fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            None
        } else {
            mod_inverse(a, self.p)
        }
    }
}

/// Reduced row echelon form in place. Returns the pivot columns.
pub fn rref<F: FieldOps>(field: &F, m: &mut [Vec<F::E>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let zero = field.zero();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i][c] != zero) else {
            continue;
        };
        m.swap(r, pr);
        let inv = field.inv(m[r][c]).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && m[i][c] != zero {
                let factor = m[i][c];
                for j in 0..cols {
                    let t = field.mul(factor, m[r][j]);
                    m[i][j] = field.sub(m[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: FieldOps>(field: &F, m: &[Vec<F::E>]) -> usize {
    let mut work = m.to_vec();
    rref(field, &mut work).len()
}

/// Basis of `{v : m v = 0}`.
pub fn nullspace<F: FieldOps>(field: &F, m: &[Vec<F::E>], cols: usize) -> Vec<Vec<F::E>> {
    let mut work = m.to_vec();
    let pivots = rref(field, &mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![field.zero(); cols];
            v[fc] = field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = field.sub(field.zero(), work[row][fc]);
            }
            v
        })
        .collect()
}

/// One solution of `m x = b`, or `None` when the system is inconsistent.
pub fn solve<F: FieldOps>(field: &F, m: &[Vec<F::E>], b: &[F::E]) -> Option<Vec<F::E>> {
    let rows = m.len();
    if rows == 0 {
        return Some(Vec::new());
    }
    let cols = m[0].len();
    let mut aug: Vec<Vec<F::E>> = m
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![field.zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols];
    }
    Some(x)
}

/// A subspace of `F^n`, stored as a reduced echelon basis so that equality
/// of subspaces is equality of bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace<E> {
    pub ambient: usize,
    pub basis: Vec<Vec<E>>,
}

impl<E: Copy + Eq + std::fmt::Debug> Subspace<E> {
    pub fn span<F: FieldOps<E = E>>(field: &F, ambient: usize, vectors: &[Vec<E>]) -> Self {
        let mut work: Vec<Vec<E>> = vectors.to_vec();
        if work.is_empty() {
            return Subspace { ambient, basis: Vec::new() };
        }
        let r = rref(field, &mut work).len();
        work.truncate(r);
        Subspace { ambient, basis: work }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains<F: FieldOps<E = E>>(&self, field: &F, v: &[E]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank(field, &rows) == self.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_over_f3() {
        let f = PrimeField { p: 3 };
        let m = vec![vec![1, 1, 1], vec![0, 1, 2]];
        let ns = nullspace(&f, &m, 3);
        assert_eq!(ns.len(), 1);
        for v in &ns {
            for row in &m {
                let s = row.iter().zip(v).fold(0, |acc, (a, b)| f.add(acc, f.mul(*a, *b)));
                assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn solve_inconsistent() {
        let f = PrimeField { p: 2 };
        let m = vec![vec![1, 1], vec![1, 1]];
        assert!(solve(&f, &m, &[0, 1]).is_none());
        assert_eq!(solve(&f, &m, &[1, 1]).map(|x| (x[0] + x[1]) % 2), Some(1));
    }

    #[test]
    fn subspace_equality_is_basis_equality() {
        let f = PrimeField { p: 5 };
        let a = Subspace::span(&f, 2, &[vec![1, 2], vec![2, 4]]);
        let b = Subspace::span(&f, 2, &[vec![3, 1]]);
        assert_eq!(a, b);
        assert!(a.contains(&f, &[4, 3]));
    }
}
