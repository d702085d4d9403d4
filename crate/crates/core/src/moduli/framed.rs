//! Framed refined representations of `(Q~, I~)`: each arrow `a` carries a
//! nonzero `f_a` with `w_a = f_a * label_a(v)` for a framing point
//! `v = (v_1, ..., v_n, v_t)`.

use num_traits::{One, Zero};

use super::{cox_violation, is_zero, relations_hold, same_orbit};
use crate::canonical_algebra::LabeledQuiver;
use crate::error::{Error, Result};
use crate::picard::{Rational, WplData};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedRep {
    wpl: WplData,
    quiver: LabeledQuiver,
    /// `(v_1, ..., v_n, v_t)`.
    pub v: Vec<Rational>,
    pub w: Vec<Rational>,
    pub f: Vec<Rational>,
    pub g: Rational,
}

fn label_values(wpl: &WplData, quiver: &LabeledQuiver, v: &[Rational]) -> Vec<Rational> {
    let (x, t) = v.split_at(wpl.n());
    quiver
        .arrows
        .iter()
        .map(|a| a.label.eval(x, &t[0]))
        .collect()
}

impl FramedRep {
    pub fn new(
        wpl: &WplData,
        quiver: &LabeledQuiver,
        v: Vec<Rational>,
        w: Vec<Rational>,
        f: Vec<Rational>,
        g: Rational,
    ) -> Result<Self> {
        let n = wpl.n();
        if n > 3 {
            return Err(Error::Arity(n));
        }
        if v.len() != n + 1 {
            return Err(Error::DataMismatch(format!(
                "framing point needs {} values",
                n + 1
            )));
        }
        let na = quiver.arrows.len();
        if w.len() != na || f.len() != na {
            return Err(Error::DataMismatch(format!("expected {na} arrow scalars")));
        }
        if g.is_zero() || f.iter().any(is_zero) {
            return Err(Error::DataMismatch("f and g must be nonzero".into()));
        }
        if let Some(msg) = cox_violation(wpl, &v[..n]) {
            return Err(Error::RelationViolation(msg));
        }
        for (k, label) in label_values(wpl, quiver, &v).iter().enumerate() {
            if w[k] != &f[k] * label {
                return Err(Error::DataMismatch(format!(
                    "w on arrow {k} is not f times its label at v"
                )));
            }
        }
        Ok(FramedRep {
            wpl: wpl.clone(),
            quiver: quiver.clone(),
            v,
            w,
            f,
            g,
        })
    }

    pub fn wpl(&self) -> &WplData {
        &self.wpl
    }

    pub fn quiver(&self) -> &LabeledQuiver {
        &self.quiver
    }

    fn on_slice(&self) -> bool {
        self.g.is_one() && self.f.iter().all(One::is_one)
    }

    /// Applies `tau` on the vertices and `sigma` on the framing lines.
    pub fn act(&self, tau: &[Rational], sigma: &[Rational]) -> FramedRep {
        let (values, chars) = self.coordinates();
        let moved: Vec<Rational> = values
            .iter()
            .zip(&chars)
            .map(|(x, ch)| {
                let (vert, fr) = ch.split_at(tau.len());
                x * super::character(tau, vert) * super::character(sigma, fr)
            })
            .collect();
        let na = self.w.len();
        let nv = self.v.len();
        FramedRep {
            wpl: self.wpl.clone(),
            quiver: self.quiver.clone(),
            w: moved[..na].to_vec(),
            f: moved[na..2 * na].to_vec(),
            g: moved[2 * na].clone(),
            v: moved[2 * na + 1..2 * na + 1 + nv].to_vec(),
        }
    }

    /// Coordinates `(w, f, g, v)` with characters of
    /// `(G_m)^{Q_0} x (G_m)^{n+1}` (vertices, then framing lines).
    fn coordinates(&self) -> (Vec<Rational>, Vec<Vec<i64>>) {
        let nv = self.quiver.vertices.len();
        let nf = self.v.len();
        let mut values = Vec::new();
        let mut chars = Vec::new();
        for (a, x) in self.quiver.arrows.iter().zip(&self.w) {
            let mut ch = vec![0i64; nv + nf];
            ch[a.dst] += 1;
            ch[a.src] -= 1;
            values.push(x.clone());
            chars.push(ch);
        }
        for (a, x) in self.quiver.arrows.iter().zip(&self.f) {
            let mut ch = vec![0i64; nv + nf];
            ch[a.dst] += 1;
            ch[a.src] -= 1;
            for (i, &e) in a.label.exps.iter().enumerate() {
                ch[nv + i] -= i64::from(e);
            }
            ch[nv + nf - 1] -= i64::from(a.label.t);
            values.push(x.clone());
            chars.push(ch);
        }
        let mut ch = vec![0i64; nv + nf];
        ch[0] = 1;
        values.push(self.g.clone());
        chars.push(ch);
        for (i, x) in self.v.iter().enumerate() {
            let mut ch = vec![0i64; nv + nf];
            ch[nv + i] = 1;
            values.push(x.clone());
            chars.push(ch);
        }
        (values, chars)
    }
}

/// `f = 1`, `g = 1`, `w_a = label_a(v)`.
pub fn build_framed(w: &WplData, quiver: &LabeledQuiver, v: &[Rational]) -> Result<FramedRep> {
    if w.n() > 3 {
        return Err(Error::Arity(w.n()));
    }
    if v.len() != w.n() + 1 {
        return Err(Error::DataMismatch(format!(
            "framing point needs {} values",
            w.n() + 1
        )));
    }
    if let Some(msg) = cox_violation(w, &v[..w.n()]) {
        return Err(Error::RelationViolation(msg));
    }
    let values = label_values(w, quiver, v);
    let ones = vec![Rational::one(); values.len()];
    FramedRep::new(w, quiver, v.to_vec(), values, ones, Rational::one())
}

/// Stable iff `(v_1, ..., v_n) != 0`, read off the `t`-free arrows.
pub fn is_stable_framed(rep: &FramedRep) -> bool {
    rep.quiver
        .arrows
        .iter()
        .zip(&rep.w)
        .any(|(a, x)| a.label.t == 0 && !x.is_zero())
}

/// Orbit equivalence. On the `f = 1, g = 1` slice the residual group is
/// `Hom(L, G_m)` acting on `(v_1, ..., v_n, v_t)` by `(x_1, ..., x_n, omega)`;
/// off the slice the full change-of-basis torus is used.
pub fn is_isomorphic_framed(r1: &FramedRep, r2: &FramedRep) -> Result<bool> {
    if r1.wpl != r2.wpl || r1.quiver != r2.quiver {
        return Err(Error::DataMismatch(
            "framed representations of different quivers".into(),
        ));
    }
    if r1.on_slice() && r2.on_slice() {
        return Ok(slice_isomorphic(&r1.wpl, &r1.v, &r2.v));
    }
    let (v1, chars) = r1.coordinates();
    let (v2, _) = r2.coordinates();
    Ok(same_orbit(&v1, &v2, &chars))
}

/// `v'` in the `Hom(L, G_m)`-orbit of `v`, via the relation lattice of the
/// characters on the common support.
pub fn slice_isomorphic(w: &WplData, v1: &[Rational], v2: &[Rational]) -> bool {
    if v1.iter().zip(v2).any(|(a, b)| a.is_zero() != b.is_zero()) {
        return false;
    }
    let n = w.n();
    let characters: Vec<_> = (0..n)
        .map(|i| w.x(i))
        .chain(std::iter::once(w.omega()))
        .collect();
    let support: Vec<usize> = (0..=n).filter(|&k| !v1[k].is_zero()).collect();
    let degrees: Vec<_> = support.iter().map(|&k| characters[k].clone()).collect();
    let ratios: Vec<Rational> = support.iter().map(|&k| &v2[k] / &v1[k]).collect();
    relations_hold(&w.relation_lattice(&degrees).basis, &ratios)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle_quiver::extract_arrows;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    fn qs(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x, 1)).collect()
    }

    fn setup(p: &[i64], k_max: u32) -> (WplData, LabeledQuiver) {
        let w = WplData::with_int_lambda(p, &[]).unwrap();
        let qt = extract_arrows(&w, k_max).quiver;
        (w, qt)
    }

    #[test]
    fn build_examples() {
        let (w, qt) = setup(&[2, 3, 4], 24);
        let r = build_framed(&w, &qt, &qs(&[0, 1, 1, 5])).unwrap();
        let t4 = crate::coxring::Monomial::t_pow(3, 4);
        for (a, x) in qt.arrows.iter().zip(&r.w) {
            if a.label == t4 {
                assert_eq!(x, &q(625, 1));
            }
        }
        assert!(is_stable_framed(&r));
        assert!(matches!(
            build_framed(&w, &qt, &qs(&[1, 1, 1, 0])),
            Err(Error::RelationViolation(_))
        ));
        assert!(!is_stable_framed(
            &build_framed(&w, &qt, &qs(&[0, 0, 0, 7])).unwrap()
        ));
        assert!(!is_stable_framed(
            &build_framed(&w, &qt, &qs(&[0, 0, 0, 0])).unwrap()
        ));

        let (w, qt) = setup(&[2, 3], 12);
        let r = build_framed(&w, &qt, &qs(&[1, 1, 0])).unwrap();
        for (a, x) in qt.arrows.iter().zip(&r.w) {
            assert_eq!(a.label.t > 0, x.is_zero());
        }

        let w = WplData::with_int_lambda(&[2, 2, 2, 3], &[2]).unwrap();
        let qt = extract_arrows(&w, 2).quiver;
        assert_eq!(build_framed(&w, &qt, &qs(&[0; 5])), Err(Error::Arity(4)));
    }

    #[test]
    fn isomorphism() {
        let (w, qt) = setup(&[2, 3, 4], 24);
        let a = build_framed(&w, &qt, &qs(&[1, 1, 0, 1])).unwrap();
        let b = build_framed(&w, &qt, &[q(64, 1), q(16, 1), q(0, 1), q(1, 2)]).unwrap();
        assert!(is_isomorphic_framed(&a, &b).unwrap());
        let c = build_framed(&w, &qt, &[q(64, 1), q(16, 1), q(0, 1), q(2, 1)]).unwrap();
        assert!(!is_isomorphic_framed(&a, &c).unwrap());
        let d = build_framed(&w, &qt, &qs(&[1, 1, 0, 0])).unwrap();
        assert!(!is_isomorphic_framed(&a, &d).unwrap());
        assert!(is_isomorphic_framed(&a, &a).unwrap());

        // off the slice, through the full torus
        let tau: Vec<Rational> = (2..10).map(|x| q(x, 1)).collect();
        let sigma = vec![q(3, 1), q(-1, 2), q(5, 1), q(7, 3)];
        let moved = b.act(&tau, &sigma);
        assert!(is_isomorphic_framed(&a, &moved).unwrap());
        assert!(!is_isomorphic_framed(&c, &moved).unwrap());
    }
}
