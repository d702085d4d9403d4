//! The Picard group `L` of a weighted projective line.
//!
//! `L` is generated by `x_1, ..., x_n` and `c` subject to `p_i x_i = c`.
//! Every element has a unique normal form `ell * c + sum_i arm_i * x_i` with
//! `0 <= arm_i < p_i`, which is how [`PicElt`] is stored.

pub mod lattice;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use lattice::{IntLattice, IntMatrix};

pub type Rational = BigRational;

/// Weights and point parameters of a weighted projective line, plus the
/// derived constants.
///
/// Weights equal to 1 are dropped; when fewer than two weights remain the
/// tuple is padded with leading 1's so that the Cox ring always has the two
/// coordinates `X_1, X_2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WplData {
    weights: Vec<i64>,
    lambda: Vec<Rational>,
    pbar: i64,
    vertex_count: usize,
}

impl WplData {
    /// Normalizes `p_raw` and validates the point parameters `lambda_4, ...`.
    pub fn new(p_raw: &[i64], lambda: Vec<Rational>) -> Result<Self> {
        if let Some(&bad) = p_raw.iter().find(|&&p| p < 1) {
            return Err(Error::Weight(bad));
        }
        let mut weights: Vec<i64> = p_raw.iter().copied().filter(|&p| p > 1).collect();
        while weights.len() < 2 {
            weights.insert(0, 1);
        }
        let n = weights.len();
        let expected = n.saturating_sub(3);
        if lambda.len() != expected {
            return Err(Error::Lambda(format!(
                "expected {expected} parameters for {n} orbifold points, got {}",
                lambda.len()
            )));
        }
        for (i, l) in lambda.iter().enumerate() {
            if l.is_zero() || l.is_one() {
                return Err(Error::Lambda(format!(
                    "lambda_{} = {l} is not allowed",
                    i + 4
                )));
            }
            if lambda[..i].contains(l) {
                return Err(Error::Lambda(format!("lambda_{} = {l} is repeated", i + 4)));
            }
        }
        let pbar = weights.iter().fold(1i64, |acc, &p| acc.lcm(&p));
        let vertex_count = weights.iter().map(|&p| (p - 1) as usize).sum::<usize>() + 2;
        Ok(WplData {
            weights,
            lambda,
            pbar,
            vertex_count,
        })
    }

    /// Convenience constructor for integer point parameters.
    pub fn with_int_lambda(p_raw: &[i64], lambda: &[i64]) -> Result<Self> {
        Self::new(
            p_raw,
            lambda
                .iter()
                .map(|&l| Rational::from_integer(l.into()))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn weight(&self, arm: usize) -> i64 {
        self.weights[arm]
    }

    /// Stored parameters `lambda_4, ..., lambda_n`.
    pub fn lambdas(&self) -> &[Rational] {
        &self.lambda
    }

    /// Coefficient `lambda_i` of the relation for the (0-based) arm `arm >= 2`;
    /// `lambda_3 = 1`.
    pub fn lambda(&self, arm: usize) -> Rational {
        assert!(arm >= 2, "arms 1 and 2 carry no relation");
        if arm == 2 {
            Rational::one()
        } else {
            self.lambda[arm - 3].clone()
        }
    }

    pub fn pbar(&self) -> i64 {
        self.pbar
    }

    /// Number of vertices `N` of the canonical-algebra quiver.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of genuine orbifold points (weights at least 2).
    pub fn orbifold_points(&self) -> usize {
        self.weights.iter().filter(|&&p| p > 1).count()
    }

    /// Normal form of `c_coeff * c + sum_i x_coeffs[i] * x_i`.
    pub fn nf(&self, c_coeff: i64, x_coeffs: &[i64]) -> PicElt {
        assert_eq!(
            x_coeffs.len(),
            self.n(),
            "coefficient vector has wrong length"
        );
        let mut ell = c_coeff;
        let arm = x_coeffs
            .iter()
            .zip(&self.weights)
            .map(|(&x, &p)| {
                let (q, r) = x.div_mod_floor(&p);
                ell += q;
                r
            })
            .collect();
        PicElt { ell, arm }
    }

    pub fn zero(&self) -> PicElt {
        PicElt {
            ell: 0,
            arm: vec![0; self.n()],
        }
    }

    pub fn c(&self) -> PicElt {
        self.nf(1, &vec![0; self.n()])
    }

    /// The generator `x_{arm+1}`.
    pub fn x(&self, arm: usize) -> PicElt {
        let mut raw = vec![0; self.n()];
        raw[arm] = 1;
        self.nf(0, &raw)
    }

    fn check(&self, d: &PicElt) -> Result<()> {
        let ok = d.arm.len() == self.n()
            && d.arm
                .iter()
                .zip(&self.weights)
                .all(|(&a, &p)| (0..p).contains(&a));
        if ok {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Normal form of `sum m_j * d_j`; the inputs are assumed to belong here.
    pub fn combine<'a, I>(&self, terms: I) -> PicElt
    where
        I: IntoIterator<Item = (i64, &'a PicElt)>,
    {
        let mut ell = 0;
        let mut raw = vec![0; self.n()];
        for (m, d) in terms {
            ell += m * d.ell;
            for (r, a) in raw.iter_mut().zip(&d.arm) {
                *r += m * a;
            }
        }
        self.nf(ell, &raw)
    }

    pub fn add(&self, a: &PicElt, b: &PicElt) -> Result<PicElt> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.combine([(1, a), (1, b)]))
    }

    pub fn sub(&self, a: &PicElt, b: &PicElt) -> Result<PicElt> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.combine([(1, a), (-1, b)]))
    }

    pub fn neg(&self, a: &PicElt) -> Result<PicElt> {
        self.check(a)?;
        Ok(self.combine([(-1, a)]))
    }

    pub fn scale(&self, m: i64, a: &PicElt) -> Result<PicElt> {
        self.check(a)?;
        Ok(self.combine([(m, a)]))
    }

    /// The dualizing element `(n-2) c - sum_i x_i`.
    pub fn omega(&self) -> PicElt {
        self.nf(self.n() as i64 - 2, &vec![-1; self.n()])
    }

    /// Degree homomorphism with `delta(c) = pbar`, `delta(x_i) = pbar / p_i`.
    pub fn delta(&self, d: &PicElt) -> i64 {
        d.ell * self.pbar
            + d.arm
                .iter()
                .zip(&self.weights)
                .map(|(&a, &p)| a * (self.pbar / p))
                .sum::<i64>()
    }

    /// Orbifold Euler characteristic `2 - sum (1 - 1/p_i)`.
    pub fn euler_char(&self) -> Rational {
        let two = Rational::from_integer(2.into());
        self.weights.iter().fold(two, |acc, &p| {
            acc - (Rational::one() - Rational::new(BigInt::one(), p.into()))
        })
    }

    pub fn torsion_order(&self, d: &PicElt) -> Order {
        if self.delta(d) != 0 {
            return Order::Infinite;
        }
        let bound: i64 = self.weights.iter().product();
        (1..=bound)
            .find(|&m| self.combine([(m, d)]).is_zero())
            .map(|m| Order::Finite(m as u64))
            .expect("torsion element order divides the product of the weights")
    }

    /// Raw coordinates `(arm_1, ..., arm_n, ell)` used in integer presentations.
    fn coords(&self, d: &PicElt) -> Vec<BigInt> {
        d.arm
            .iter()
            .chain(std::iter::once(&d.ell))
            .map(|&x| BigInt::from(x))
            .collect()
    }

    /// Relation matrix of `L` on the generators `(x_1, ..., x_n, c)`.
    pub fn presentation_matrix(&self) -> IntMatrix {
        let n = self.n();
        (0..n)
            .map(|i| {
                let mut row = vec![BigInt::zero(); n + 1];
                row[i] = BigInt::from(self.weights[i]);
                row[n] = -BigInt::one();
                row
            })
            .collect()
    }

    /// Kernel of `Z^k -> L`, `m -> sum m_j degrees[j]`.
    pub fn relation_lattice(&self, degrees: &[PicElt]) -> IntLattice {
        let k = degrees.len();
        let cols = self.n() + 1;
        let mut stacked: IntMatrix = degrees.iter().map(|d| self.coords(d)).collect();
        stacked.extend(self.presentation_matrix());
        // the presentation rows are independent, so projecting the kernel to
        // the first k coordinates is injective
        let kernel = lattice::left_kernel(&stacked, cols);
        let projected: IntMatrix = kernel.into_iter().map(|row| row[..k].to_vec()).collect();
        IntLattice::from_generators(&projected, k)
    }
}

/// Element of the Picard group in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PicElt {
    pub ell: i64,
    pub arm: Vec<i64>,
}

impl PicElt {
    pub fn is_zero(&self) -> bool {
        self.ell == 0 && self.arm.iter().all(|&a| a == 0)
    }
}

impl fmt::Display for PicElt {
    /// Renders as `2c+x1+3x3`; the zero element renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let coeff = |m: i64, sym: String| match m {
            1 => sym,
            -1 => format!("-{sym}"),
            _ => format!("{m}{sym}"),
        };
        if self.ell != 0 {
            parts.push(coeff(self.ell, "c".into()));
        }
        for (i, &a) in self.arm.iter().enumerate() {
            if a != 0 {
                parts.push(coeff(a, format!("x{}", i + 1)));
            }
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            if !p.starts_with('-') {
                out.push('+');
            }
            out.push_str(p);
        }
        f.write_str(&out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Order {
    Finite(u64),
    Infinite,
}
