//! Refined representations of dimension vector `(1, ..., 1)` and their
//! framed variants on the canonical bundle.
//!
//! A refined representation carries, besides the arrow scalars `w`, the
//! scalars `f_{i,j}` identifying `w_{i,j}` with `w_{i,0}` and a nonzero `g`
//! in the source vertex. The torus `G_m^{Q_0}` acts on every coordinate by a
//! character in `Z^{Q_0}`; stability and isomorphism are decided from these
//! characters, never by normalizing (that would need roots).

pub mod cone;
pub mod framed;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::canonical_algebra::{arm_path, arm_vertex, build_q, LabeledQuiver};
use crate::error::{Error, Result};
use crate::picard::lattice::{cokernel_invariants, int_matrix, left_kernel, IntMatrix};
use crate::picard::{Rational, WplData};

pub use framed::{build_framed, is_isomorphic_framed, is_stable_framed, FramedRep};

/// The vectors `b_{i,j} = e_{i,j+1} - e_{i,j} - e_{i,1} + e_0` and `b_0 = e_0`,
/// a basis of the kernel of `Z^{Q_0} -> L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefinementBasis {
    /// `b_{i,j}` for each arm and `j = 1..p_i-1`, then `b_0`.
    pub vectors: Vec<Vec<i64>>,
}

pub fn refinement_basis(w: &WplData) -> RefinementBasis {
    let nv = w.vertex_count();
    let mut vectors = Vec::new();
    for arm in 0..w.n() {
        for j in 1..w.weight(arm) as usize {
            let mut b = vec![0i64; nv];
            b[arm_vertex(w, arm, j + 1)] += 1;
            b[arm_vertex(w, arm, j)] -= 1;
            b[arm_vertex(w, arm, 1)] -= 1;
            b[0] += 1;
            vectors.push(b);
        }
    }
    let mut b0 = vec![0i64; nv];
    b0[0] = 1;
    vectors.push(b0);
    let basis = RefinementBasis { vectors };
    assert_eq!(
        basis.quotient_invariants(nv),
        cokernel_invariants(&w.presentation_matrix(), w.n() + 1),
        "refinement basis does not present the Picard group"
    );
    basis
}

impl RefinementBasis {
    /// `b_{i,j}` with `j >= 1`.
    pub fn get(&self, w: &WplData, arm: usize, j: usize) -> &[i64] {
        let offset: usize = (0..arm).map(|i| w.weight(i) as usize - 1).sum();
        &self.vectors[offset + j - 1]
    }

    /// Free rank and torsion of `Z^{Q_0} / span(B)`.
    pub fn quotient_invariants(&self, vertex_count: usize) -> (usize, Vec<BigInt>) {
        cokernel_invariants(&int_matrix(&self.vectors), vertex_count)
    }
}

pub(crate) fn is_zero(x: &Rational) -> bool {
    x.is_zero()
}

/// Coordinates of a Cox-ring relation `u_i^{p_i} - u_2^{p_2} + lambda_i u_1^{p_1}`
/// that do not vanish, as a message.
pub(crate) fn cox_violation(w: &WplData, u: &[Rational]) -> Option<String> {
    let pw = |i: usize| num_traits::pow(u[i].clone(), w.weight(i) as usize);
    (2..w.n()).find_map(|i| {
        let value = pw(i) - pw(1) + w.lambda(i) * pw(0);
        (!value.is_zero()).then(|| format!("relation for x{} evaluates to {value}", i + 1))
    })
}

/// A refined representation of `(Q, I)` of dimension vector `(1, ..., 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinedRep {
    wpl: WplData,
    /// One scalar per arrow of `Q`, in the arrow order of `build_q`.
    pub w: Vec<Rational>,
    /// `f[arm][j - 1]` for `j = 1..p_arm-1`.
    pub f: Vec<Vec<Rational>>,
    pub g: Rational,
}

impl RefinedRep {
    pub fn new(
        wpl: &WplData,
        w: Vec<Rational>,
        f: Vec<Vec<Rational>>,
        g: Rational,
    ) -> Result<Self> {
        let q = build_q(wpl);
        if w.len() != q.arrows.len() {
            return Err(Error::DataMismatch(format!(
                "{} arrow scalars for {} arrows",
                w.len(),
                q.arrows.len()
            )));
        }
        if f.len() != wpl.n()
            || f.iter()
                .enumerate()
                .any(|(i, fi)| fi.len() != wpl.weight(i) as usize - 1)
        {
            return Err(Error::DataMismatch(
                "f must have p_i - 1 entries on arm i".into(),
            ));
        }
        if g.is_zero() || f.iter().flatten().any(is_zero) {
            return Err(Error::DataMismatch("f and g must be nonzero".into()));
        }
        let rep = RefinedRep {
            wpl: wpl.clone(),
            w,
            f,
            g,
        };
        for arm in 0..wpl.n() {
            let path = arm_path(wpl, &q, arm);
            for j in 1..path.len() {
                if rep.w[path[j]] != &rep.f[arm][j - 1] * &rep.w[path[0]] {
                    return Err(Error::DataMismatch(format!(
                        "w on arrow {j} of arm {} is not f times the first arrow",
                        arm + 1
                    )));
                }
            }
        }
        let products: Vec<Rational> = (0..wpl.n())
            .map(|arm| {
                arm_path(wpl, &q, arm)
                    .iter()
                    .map(|&a| rep.w[a].clone())
                    .product()
            })
            .collect();
        for i in 2..wpl.n() {
            let value = &products[i] - &products[1] + wpl.lambda(i) * &products[0];
            if !value.is_zero() {
                return Err(Error::RelationViolation(format!(
                    "arm products violate relation {}",
                    i + 1
                )));
            }
        }
        Ok(rep)
    }

    pub fn wpl(&self) -> &WplData {
        &self.wpl
    }

    pub fn quiver(&self) -> LabeledQuiver {
        build_q(&self.wpl)
    }

    /// All coordinates `(w, f, g)` with their torus characters.
    fn coordinates(&self) -> (Vec<Rational>, Vec<Vec<i64>>) {
        let q = self.quiver();
        let nv = self.wpl.vertex_count();
        let basis = refinement_basis(&self.wpl);
        let mut values = Vec::new();
        let mut chars = Vec::new();
        for (a, x) in q.arrows.iter().zip(&self.w) {
            let mut ch = vec![0i64; nv];
            ch[a.dst] += 1;
            ch[a.src] -= 1;
            values.push(x.clone());
            chars.push(ch);
        }
        for (arm, fi) in self.f.iter().enumerate() {
            for (j, x) in fi.iter().enumerate() {
                values.push(x.clone());
                chars.push(basis.get(&self.wpl, arm, j + 1).to_vec());
            }
        }
        let mut ch = vec![0i64; nv];
        ch[0] = 1;
        values.push(self.g.clone());
        chars.push(ch);
        (values, chars)
    }

    /// The change of basis by `tau` in `(Q^*)^{Q_0}`.
    pub fn act(&self, tau: &[Rational]) -> RefinedRep {
        let (values, chars) = self.coordinates();
        let moved: Vec<Rational> = values
            .iter()
            .zip(&chars)
            .map(|(x, ch)| x * character(tau, ch))
            .collect();
        let na = self.w.len();
        let mut rest = moved[na..].iter().cloned();
        let f = self
            .f
            .iter()
            .map(|fi| fi.iter().map(|_| rest.next().unwrap()).collect())
            .collect();
        RefinedRep {
            wpl: self.wpl.clone(),
            w: moved[..na].to_vec(),
            f,
            g: rest.next().unwrap(),
        }
    }
}

/// `prod tau_v^{ch_v}`.
pub(crate) fn character(tau: &[Rational], ch: &[i64]) -> Rational {
    tau.iter()
        .zip(ch)
        .fold(Rational::one(), |acc, (t, &e)| acc * rational_pow(t, e))
}

pub(crate) fn rational_pow(x: &Rational, e: i64) -> Rational {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// All `f = 1`, `g = 1`, and `w = u_i` on every arrow of arm `i`.
pub fn rep_from_point(w: &WplData, u: &[Rational]) -> Result<RefinedRep> {
    if u.len() != w.n() {
        return Err(Error::DataMismatch(format!(
            "point has {} coordinates, expected {}",
            u.len(),
            w.n()
        )));
    }
    if let Some(msg) = cox_violation(w, u) {
        return Err(Error::RelationViolation(msg));
    }
    let q = build_q(w);
    let arm_of =
        |label: &crate::coxring::Monomial| label.exps.iter().position(|&e| e == 1).unwrap();
    let values = q
        .arrows
        .iter()
        .map(|a| u[arm_of(&a.label)].clone())
        .collect();
    let f = (0..w.n())
        .map(|i| vec![Rational::one(); w.weight(i) as usize - 1])
        .collect();
    RefinedRep::new(w, values, f, Rational::one())
}

pub fn zero_rep(w: &WplData) -> RefinedRep {
    rep_from_point(w, &vec![Rational::zero(); w.n()]).expect("the origin satisfies the relations")
}

/// A stability parameter `theta in Hom(Z^{Q_0}, Z)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityParam {
    pub theta: Vec<i64>,
}

impl StabilityParam {
    /// `theta_0 = 1 - |Q_0|`, `theta_v = 1` otherwise.
    pub fn vartheta(w: &WplData) -> Self {
        let nv = w.vertex_count();
        let mut theta = vec![1i64; nv];
        theta[0] = 1 - nv as i64;
        StabilityParam { theta }
    }

    pub fn eval(&self, mu: &[Rational]) -> Rational {
        self.theta
            .iter()
            .zip(mu)
            .map(|(&t, m)| Rational::from_integer(t.into()) * m)
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityResult {
    pub stable: bool,
    /// A one-parameter subgroup `mu` (primitive integer vector) with
    /// `mu_0 = 0`, `b(mu) = 0`, `mu` nondecreasing along every nonzero arrow and
    /// `theta(mu) <= 0`.
    pub destabilizer: Option<Vec<Rational>>,
}

/// Cone test: unstable iff a nonzero destabilizing `mu` exists.
pub fn is_stable(rep: &RefinedRep, theta: &StabilityParam) -> Result<StabilityResult> {
    let w = rep.wpl();
    let nv = w.vertex_count();
    let q_int = |v: &[i64]| -> Vec<Rational> {
        v.iter()
            .map(|&x| Rational::from_integer(x.into()))
            .collect()
    };
    let mut equalities = vec![{
        let mut e0 = vec![0i64; nv];
        e0[0] = 1;
        q_int(&e0)
    }];
    equalities.extend(refinement_basis(w).vectors.iter().map(|b| q_int(b)));
    let mut inequalities: Vec<Vec<Rational>> = rep
        .quiver()
        .arrows
        .iter()
        .zip(&rep.w)
        .filter(|(_, x)| !x.is_zero())
        .map(|(a, _)| {
            let mut row = vec![0i64; nv];
            row[a.dst] += 1;
            row[a.src] -= 1;
            q_int(&row)
        })
        .collect();
    inequalities.push(q_int(&theta.theta.iter().map(|t| -t).collect::<Vec<_>>()));
    let destabilizer = cone::nonzero_point(&equalities, &inequalities, nv)?;
    Ok(StabilityResult {
        stable: destabilizer.is_none(),
        destabilizer,
    })
}

/// The unstable locus is the origin: stable iff some arrow scalar is nonzero.
pub fn is_stable_geometric(rep: &RefinedRep) -> bool {
    rep.w.iter().any(|x| !x.is_zero())
}

/// `mu*_v = delta(deg v)`: `j pbar / p_i` on `v_{i,j}`, `pbar` on the sink.
pub fn mu_star(w: &WplData) -> Vec<Rational> {
    crate::canonical_algebra::vertex_sequence(w)
        .iter()
        .map(|d| Rational::from_integer(w.delta(d).into()))
        .collect()
}

/// Whether `values2` lies in the orbit of `values1` under a torus acting with
/// characters `chars`. Supports must agree; on the support, every integer
/// relation `c` among the characters must satisfy `prod (v2/v1)^c = 1`.
pub(crate) fn same_orbit(values1: &[Rational], values2: &[Rational], chars: &[Vec<i64>]) -> bool {
    if values1
        .iter()
        .zip(values2)
        .any(|(a, b)| a.is_zero() != b.is_zero())
    {
        return false;
    }
    let support: Vec<usize> = (0..values1.len())
        .filter(|&k| !values1[k].is_zero())
        .collect();
    if support.is_empty() {
        return true;
    }
    let cols = chars[0].len();
    let m: IntMatrix = support
        .iter()
        .map(|&k| chars[k].iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let ratios: Vec<Rational> = support.iter().map(|&k| &values2[k] / &values1[k]).collect();
    relations_hold(&left_kernel(&m, cols), &ratios)
}

pub(crate) fn relations_hold(relations: &IntMatrix, ratios: &[Rational]) -> bool {
    relations.iter().all(|c| {
        let value = c.iter().zip(ratios).fold(Rational::one(), |acc, (e, r)| {
            acc * rational_pow(r, e.to_i64().expect("relation coefficient fits in i64"))
        });
        value.is_one()
    })
}

pub fn is_isomorphic(r1: &RefinedRep, r2: &RefinedRep) -> Result<bool> {
    if r1.wpl != r2.wpl {
        return Err(Error::DataMismatch(
            "representations of different weighted projective lines".into(),
        ));
    }
    let (v1, chars) = r1.coordinates();
    let (v2, _) = r2.coordinates();
    Ok(same_orbit(&v1, &v2, &chars))
}
