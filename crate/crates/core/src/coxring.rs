//! Cox rings `S_X = k[X_1..X_n] / (X_i^{p_i} - X_2^{p_2} + lambda_i X_1^{p_1})`
//! and `S_K = S_X[t]`.
//!
//! Elements are kept in the monomial basis of reduced monomials, those with
//! `exps[i] < p_i` for every arm `i >= 3` (1-based). The leading monomials
//! `X_i^{p_i}` of the relations are pairwise coprime, so rewriting them is
//! confluent.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::picard::{PicElt, Rational, WplData};

/// Monomial `t^t * X_1^{exps[0]} * ... * X_n^{exps[n-1]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub t: u32,
    pub exps: Vec<u32>,
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.t
            .cmp(&other.t)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            t: 0,
            exps: vec![0; n],
        }
    }

    /// The coordinate `X_{arm+1}`.
    pub fn var(n: usize, arm: usize) -> Self {
        let mut m = Self::one(n);
        m.exps[arm] = 1;
        m
    }

    pub fn t_pow(n: usize, k: u32) -> Self {
        Monomial {
            t: k,
            exps: vec![0; n],
        }
    }

    pub fn with_t(mut self, k: u32) -> Self {
        self.t = k;
        self
    }

    /// Unreduced product.
    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial {
            t: self.t + other.t,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn is_reduced(&self, w: &WplData) -> bool {
        self.exps
            .iter()
            .enumerate()
            .skip(2)
            .all(|(i, &e)| i64::from(e) < w.weight(i))
    }

    /// Degree in `L` of the `S_X` part.
    pub fn xdeg(&self, w: &WplData) -> PicElt {
        let raw: Vec<i64> = self.exps.iter().map(|&e| i64::from(e)).collect();
        w.nf(0, &raw)
    }

    pub fn kdeg(&self) -> u32 {
        self.t
    }

    /// Line-bundle degree on the canonical bundle, `xdeg + kdeg * omega`.
    pub fn bundle_degree(&self, w: &WplData) -> PicElt {
        let x = self.xdeg(w);
        w.combine([(1, &x), (i64::from(self.t), &w.omega())])
    }

    pub fn eval(&self, point: &[Rational], t_val: &Rational) -> Rational {
        let mut acc = pow(t_val, self.t);
        for (x, &e) in point.iter().zip(&self.exps) {
            if e > 0 {
                acc *= pow(x, e);
            }
        }
        acc
    }
}

fn pow(x: &Rational, e: u32) -> Rational {
    num_traits::pow(x.clone(), e as usize)
}

impl fmt::Display for Monomial {
    /// `t^k*x1^a*x2`; the empty monomial renders as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        let power = |sym: String, e: u32| if e == 1 { sym } else { format!("{sym}^{e}") };
        if self.t > 0 {
            factors.push(power("t".into(), self.t));
        }
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                factors.push(power(format!("x{}", i + 1), e));
            }
        }
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join("*"))
        }
    }
}

/// Polynomial in `S_K`: reduced monomials with nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    /// Wraps a monomial and reduces it.
    pub fn monomial(w: &WplData, m: Monomial) -> Self {
        Poly::from_terms(w, [(m, Rational::one())])
    }

    pub fn from_terms<I>(w: &WplData, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut raw = Poly::zero();
        for (m, c) in terms {
            raw.add_term(m, c);
        }
        raw.reduce(w)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Rewrites `X_i^{p_i} -> X_2^{p_2} - lambda_i X_1^{p_1}` until every
    /// monomial is reduced.
    pub fn reduce(&self, w: &WplData) -> Poly {
        self.reduce_by(w, |violating| violating[0])
    }

    /// Reduction with a caller-chosen rewrite index among the violating arms.
    pub(crate) fn reduce_by<F>(&self, w: &WplData, mut choose: F) -> Poly
    where
        F: FnMut(&[usize]) -> usize,
    {
        let mut out = Poly::zero();
        let mut work: Vec<(Monomial, Rational)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        while let Some((m, c)) = work.pop() {
            let violating: Vec<usize> = (2..m.exps.len())
                .filter(|&i| i64::from(m.exps[i]) >= w.weight(i))
                .collect();
            if violating.is_empty() {
                out.add_term(m, c);
                continue;
            }
            let i = choose(&violating);
            let mut base = m.clone();
            base.exps[i] -= w.weight(i) as u32;
            let mut via_x2 = base.clone();
            via_x2.exps[1] += w.weight(1) as u32;
            let mut via_x1 = base;
            via_x1.exps[0] += w.weight(0) as u32;
            let lambda = w.lambda(i);
            work.push((via_x1, -(c.clone() * lambda)));
            work.push((via_x2, c));
        }
        out
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    /// Product followed by reduction.
    pub fn mul(&self, other: &Poly, w: &WplData) -> Poly {
        let mut raw = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                raw.add_term(ma.times(mb), ca * cb);
            }
        }
        raw.reduce(w)
    }

    /// Product with a single monomial, followed by reduction.
    pub fn mul_monomial(&self, m: &Monomial, w: &WplData) -> Poly {
        let mut raw = Poly::zero();
        for (ma, c) in &self.terms {
            raw.add_term(ma.times(m), c.clone());
        }
        raw.reduce(w)
    }

    pub fn eval(&self, point: &[Rational], t_val: &Rational) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (m, c)| {
            acc + c * m.eval(point, t_val)
        })
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if abs.is_one() {
                write!(f, "{m}")?;
            } else if m.exps.iter().all(|&e| e == 0) && m.t == 0 {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// `dim H^0(O(d))`: `ell + 1` for the normal form `(ell; arm)` when `ell >= 0`.
pub fn h0_dim(_w: &WplData, d: &PicElt) -> u64 {
    if d.ell >= 0 {
        d.ell as u64 + 1
    } else {
        0
    }
}

/// Reduced monomials of degree `d`, sorted canonically.
pub fn h0_basis(w: &WplData, d: &PicElt) -> Vec<Monomial> {
    if d.ell < 0 {
        return Vec::new();
    }
    let mut basis: Vec<Monomial> = (0..=d.ell)
        .map(|s| {
            let r = d.ell - s;
            let mut exps: Vec<u32> = d.arm.iter().map(|&a| a as u32).collect();
            exps[0] += (s * w.weight(0)) as u32;
            exps[1] += (r * w.weight(1)) as u32;
            Monomial { t: 0, exps }
        })
        .collect();
    basis.sort();
    basis
}
