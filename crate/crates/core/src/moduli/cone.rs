//! Nonzero points of a rational polyhedral cone
//! `{ x : E x = 0, G x >= 0 }`, by extreme-ray enumeration.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{nullspace, rank};
use crate::picard::Rational;

/// Largest number of active-constraint subsets tried before giving up.
pub const SUBSET_LIMIT: u128 = 1_000_000;

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn binomial(m: usize, k: usize) -> u128 {
    (0..k as u128).fold(1u128, |acc, i| acc.saturating_mul(m as u128 - i) / (i + 1))
}

/// Scales `v` to a primitive integer vector.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let lcm = v
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints
        .iter()
        .fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return v.to_vec();
    }
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &gcd))
        .collect()
}

fn combine(basis: &[Vec<Rational>], y: &[Rational], dim: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); dim];
    for (b, c) in basis.iter().zip(y) {
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

/// A nonzero point of the cone, if one exists, as a primitive integer vector.
pub fn nonzero_point(
    equalities: &[Vec<Rational>],
    inequalities: &[Vec<Rational>],
    dim: usize,
) -> Result<Option<Vec<Rational>>> {
    let z = nullspace(equalities, dim);
    let d = z.len();
    if d == 0 {
        return Ok(None);
    }
    let g: Vec<Vec<Rational>> = inequalities
        .iter()
        .map(|row| z.iter().map(|col| dot(row, col)).collect())
        .collect();
    if let Some(y) = nullspace(&g, d).into_iter().next() {
        return Ok(Some(primitive(&combine(&z, &y, dim))));
    }
    let count = binomial(g.len(), d - 1);
    if count > SUBSET_LIMIT {
        return Err(Error::TooLarge(count));
    }
    let feasible = |y: &[Rational]| g.iter().all(|row| !dot(row, y).is_negative());
    let mut subset: Vec<usize> = (0..d - 1).collect();
    loop {
        let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| g[i].clone()).collect();
        if rank(&rows, d) == d - 1 {
            let y = nullspace(&rows, d).remove(0);
            let neg: Vec<Rational> = y.iter().map(|x| -x).collect();
            for cand in [y, neg] {
                if feasible(&cand) {
                    return Ok(Some(primitive(&combine(&z, &cand, dim))));
                }
            }
        }
        if !next_subset(&mut subset, g.len()) {
            return Ok(None);
        }
    }
}

fn next_subset(s: &mut [usize], m: usize) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < m - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(xs: &[i64]) -> Vec<Rational> {
        xs.iter()
            .map(|&x| Rational::from_integer(x.into()))
            .collect()
    }

    #[test]
    fn pointed_and_empty_cones() {
        // positive quadrant
        let p = nonzero_point(&[], &[qv(&[1, 0]), qv(&[0, 1])], 2)
            .unwrap()
            .unwrap();
        assert!(p.iter().all(|x| !x.is_negative()));
        // only the origin
        let none = nonzero_point(&[], &[qv(&[1, 0]), qv(&[0, 1]), qv(&[-1, -1])], 2).unwrap();
        assert_eq!(none, None);
        // a line
        let l = nonzero_point(&[qv(&[1, -1, 0])], &[qv(&[0, 0, 1]), qv(&[0, 0, -1])], 3).unwrap();
        assert_eq!(l, Some(qv(&[1, 1, 0])));
        // three-dimensional pointed cone with a single ray x = y = z >= 0
        let r = nonzero_point(
            &[],
            &[
                qv(&[1, -1, 0]),
                qv(&[0, 1, -1]),
                qv(&[-1, 0, 1]),
                qv(&[1, 1, 1]),
            ],
            3,
        )
        .unwrap();
        assert_eq!(r, Some(qv(&[1, 1, 1])));
    }

    #[test]
    fn subset_iteration() {
        let mut s = vec![0, 1];
        let mut n = 1;
        while next_subset(&mut s, 4) {
            n += 1;
        }
        assert_eq!(n, binomial(4, 2));
        assert_eq!(binomial(25, 12), 5_200_300);
    }
}
