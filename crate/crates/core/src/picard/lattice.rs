//! Integer matrix utilities: Smith and Hermite normal forms, integer kernels
//! and cokernel invariants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Converts a matrix of machine integers into an `IntMatrix`.
pub fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix, inner: usize, cols: usize) -> IntMatrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Result of a Smith normal form computation: `u * m * v == d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[i][i].clone()).collect()
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row[dst] -= q * row[src]
fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src_row = m[src].clone();
    for (x, s) in m[dst].iter_mut().zip(src_row.iter()) {
        *x -= q * s;
    }
}

/// col[dst] -= q * col[src]
fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let s = row[src].clone();
        row[dst] -= q * s;
    }
}

/// Smith normal form of an `rows x cols` integer matrix.
pub fn smith_normal_form(m: &IntMatrix, cols: usize) -> SmithForm {
    let rows = m.len();
    let mut a = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut rank = 0;

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if a[bi][bj].abs() <= a[i][j].abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(a, u, v, rank);
            };
            a.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad_row =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad_row {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut a, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        rank += 1;
    }
    finish(a, u, v, rank)
}

fn finish(d: IntMatrix, u: IntMatrix, v: IntMatrix, rank: usize) -> SmithForm {
    SmithForm { u, d, v, rank }
}

/// Basis of `{ c : c * m = 0 }` (integer row vectors).
pub fn left_kernel(m: &IntMatrix, cols: usize) -> IntMatrix {
    let snf = smith_normal_form(m, cols);
    snf.u[snf.rank..].to_vec()
}

/// Row-style Hermite normal form of the lattice spanned by `rows`; zero rows
/// are dropped. Pivots are positive, entries above a pivot lie in `[0, pivot)`.
pub fn hermite_normal_form(rows: &IntMatrix, cols: usize) -> IntMatrix {
    let mut a: IntMatrix = rows.to_vec();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        // gcd-combine every row below r into row r at column c
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let ext = a[r][c].extended_gcd(&a[i][c]);
            let (g, x, y) = (ext.gcd, ext.x, ext.y);
            let ar = &a[r][c] / &g;
            let ai = &a[i][c] / &g;
            let new_r: Vec<BigInt> = a[r]
                .iter()
                .zip(a[i].iter())
                .map(|(p, q)| &x * p + &y * q)
                .collect();
            let new_i: Vec<BigInt> = a[r]
                .iter()
                .zip(a[i].iter())
                .map(|(p, q)| &ai * p - &ar * q)
                .collect();
            a[r] = new_r;
            a[i] = new_i;
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            row_axpy(&mut a, i, r, &q);
        }
        r += 1;
    }
    a.truncate(r);
    a.retain(|row| row.iter().any(|x| !x.is_zero()));
    a
}

/// Free rank and nontrivial torsion coefficients of `Z^cols / rowspan(rows)`.
pub fn cokernel_invariants(rows: &IntMatrix, cols: usize) -> (usize, Vec<BigInt>) {
    let snf = smith_normal_form(rows, cols);
    let torsion = snf
        .invariant_factors()
        .into_iter()
        .filter(|d| !d.is_one())
        .collect();
    (cols - snf.rank, torsion)
}

/// A sublattice of `Z^dim` stored by its Hermite basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntLattice {
    pub dim: usize,
    pub basis: IntMatrix,
}

impl IntLattice {
    pub fn from_generators(generators: &IntMatrix, dim: usize) -> Self {
        IntLattice {
            dim,
            basis: hermite_normal_form(generators, dim),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut w = v.to_vec();
        for row in &self.basis {
            let Some(p) = row.iter().position(|x| !x.is_zero()) else {
                continue;
            };
            if !w[p].is_multiple_of(&row[p]) {
                return false;
            }
            let q = &w[p] / &row[p];
            for (x, r) in w.iter_mut().zip(row.iter()) {
                *x -= &q * r;
            }
        }
        w.iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_reconstruction(m: &IntMatrix, cols: usize) -> SmithForm {
        let snf = smith_normal_form(m, cols);
        let um = mat_mul(&snf.u, m, m.len(), cols);
        let umv = mat_mul(&um, &snf.v, cols, cols);
        assert_eq!(umv, snf.d);
        for i in 0..m.len() {
            for j in 0..cols {
                if i != j {
                    assert!(snf.d[i][j].is_zero());
                }
            }
        }
        let f = snf.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        snf
    }

    #[test]
    fn presentation_of_two_two() {
        let m = int_matrix(&[vec![2, 0, -1], vec![0, 2, -1]]);
        let snf = check_reconstruction(&m, 3);
        assert_eq!(
            snf.invariant_factors(),
            vec![BigInt::from(1), BigInt::from(2)]
        );
        let (free, tors) = cokernel_invariants(&m, 3);
        assert_eq!(free, 1);
        assert_eq!(tors, vec![BigInt::from(2)]);
    }

    #[test]
    fn identity_and_zero() {
        let id = int_matrix(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let snf = check_reconstruction(&id, 3);
        assert_eq!(snf.invariant_factors(), vec![BigInt::one(); 3]);
        let z = int_matrix(&[vec![0, 0], vec![0, 0]]);
        let snf = check_reconstruction(&z, 2);
        assert_eq!(snf.rank, 0);
        assert_eq!(snf.d, z);
    }

    #[test]
    fn divisibility_is_enforced() {
        // diag(2, 3) has Smith form diag(1, 6)
        let m = int_matrix(&[vec![2, 0], vec![0, 3]]);
        let snf = check_reconstruction(&m, 2);
        assert_eq!(
            snf.invariant_factors(),
            vec![BigInt::from(1), BigInt::from(6)]
        );
    }

    #[test]
    fn kernel_and_hermite() {
        let m = int_matrix(&[vec![2], vec![-3]]);
        let k = left_kernel(&m, 1);
        let lat = IntLattice::from_generators(&k, 2);
        assert_eq!(lat.basis, int_matrix(&[vec![3, 2]]));
        assert!(lat.contains(&[BigInt::from(3), BigInt::from(2)]));
        assert!(lat.contains(&[BigInt::from(-6), BigInt::from(-4)]));
        assert!(!lat.contains(&[BigInt::from(1), BigInt::from(1)]));
    }

    #[test]
    fn hermite_is_canonical() {
        let a = int_matrix(&[vec![4, 6], vec![2, 2]]);
        let b = int_matrix(&[vec![2, 2], vec![6, 8]]);
        assert_eq!(hermite_normal_form(&a, 2), hermite_normal_form(&b, 2));
        assert_eq!(
            hermite_normal_form(&a, 2),
            int_matrix(&[vec![2, 0], vec![0, 2]])
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn snf_reconstructs(entries in proptest::collection::vec(-9i64..=9, 12)) {
                let m = int_matrix(&[entries[0..4].to_vec(), entries[4..8].to_vec(), entries[8..12].to_vec()]);
                check_reconstruction(&m, 4);
            }

            #[test]
            fn left_kernel_annihilates(entries in proptest::collection::vec(-6i64..=6, 12)) {
                let rows: Vec<Vec<i64>> = entries.chunks(3).map(|c| c.to_vec()).collect();
                let m = int_matrix(&rows);
                let k = left_kernel(&m, 3);
                let snf = smith_normal_form(&m, 3);
                prop_assert_eq!(k.len(), 4 - snf.rank);
                for c in &k {
                    for j in 0..3 {
                        let s = (0..4).fold(BigInt::zero(), |acc, i| acc + &c[i] * &m[i][j]);
                        prop_assert!(s.is_zero());
                    }
                }
            }
        }
    }
}
