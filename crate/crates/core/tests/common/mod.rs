//! Independent oracles and samplers shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use wpl_core::canonical_algebra::build_q;
use wpl_core::coxring::Monomial;
use wpl_core::moduli::{refinement_basis, RefinedRep};
use wpl_core::{PicElt, Rational, WplData};

pub fn q(a: i64) -> Rational {
    Rational::from_integer(a.into())
}

pub fn qf(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

pub fn qs(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| q(x)).collect()
}

/// Weight tuple with point parameters 2, 3, ... for arms beyond the third.
pub fn wpl(p: &[i64]) -> WplData {
    let n = p.iter().filter(|&&x| x > 1).count().max(2);
    let lambda: Vec<i64> = (2..).take(n.saturating_sub(3)).collect();
    WplData::with_int_lambda(p, &lambda).unwrap()
}

/// Brute-force monomial basis of `H^0(O(d))`: every exponent vector with
/// `e_i < p_i` for `i >= 3` whose degree equals `d`.
pub fn h0_basis_oracle(w: &WplData, d: &PicElt) -> Vec<Monomial> {
    let n = w.n();
    let pbar = w.pbar();
    let target = w.delta(d);
    let mut out = Vec::new();
    if target < 0 {
        return out;
    }
    let mut e = vec![0i64; n];
    fn rec(
        w: &WplData,
        d: &PicElt,
        e: &mut Vec<i64>,
        i: usize,
        remaining: i64,
        pbar: i64,
        out: &mut Vec<Monomial>,
    ) {
        let n = e.len();
        if i == n {
            if remaining == 0 && &w.nf(0, e) == d {
                out.push(Monomial {
                    t: 0,
                    exps: e.iter().map(|&x| x as u32).collect(),
                });
            }
            return;
        }
        let unit = pbar / w.weight(i);
        let mut cap = remaining / unit;
        if i >= 2 {
            cap = cap.min(w.weight(i) - 1);
        }
        for a in 0..=cap {
            e[i] = a;
            rec(w, d, e, i + 1, remaining - a * unit, pbar, out);
        }
        e[i] = 0;
    }
    rec(w, d, &mut e, 0, target, pbar, &mut out);
    out.sort();
    out
}

pub fn random_degree(w: &WplData, rng: &mut ChaCha8Rng, max_ell: i64) -> PicElt {
    let arm: Vec<i64> = (0..w.n()).map(|i| rng.gen_range(0..w.weight(i))).collect();
    w.nf(rng.gen_range(-max_ell..=max_ell), &arm)
}

/// A random rational point of the Cox cone, possibly with zero coordinates.
/// Supported for `n <= 3` with `lambda_3 = 1`.
pub fn random_point(w: &WplData, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    let p = w.weights();
    let n = w.n();
    let a = {
        let mut x = rng.gen_range(-3i64..=3);
        if x == 0 {
            x = 1;
        }
        x
    };
    let pw = |x: i64, e: i64| -> Rational { num_traits::pow(q(x), e as usize) };
    if n == 2 {
        let u: Vec<Rational> = (0..2)
            .map(|_| {
                if rng.gen_bool(0.2) {
                    q(0)
                } else {
                    qf(rng.gen_range(-9..=9), rng.gen_range(1..=4))
                }
            })
            .collect();
        return u;
    }
    assert_eq!(n, 3);
    let mut base: Vec<Vec<Rational>> = vec![
        // x1 = 0: x3^{p3} = x2^{p2}
        vec![q(0), pw(a, p[2]), pw(a, p[1])],
        // x3 = 0: x2^{p2} = x1^{p1}
        vec![pw(a, p[1]), pw(a, p[0]), q(0)],
        vec![q(0); 3],
    ];
    if p[0] % 2 == 1 {
        // x2 = 0: x1^{p1} = -x3^{p3}
        base.push(vec![-pw(a, p[2]), q(0), pw(a, p[0])]);
    } else if p[2] % 2 == 1 {
        base.push(vec![pw(a, p[2]), q(0), -pw(a, p[0])]);
    }
    if p == [2, 3, 4] {
        base.push(qs(&[46, 13, 3]));
        base.push(qs(&[-46, 13, -3]));
    }
    let u = base[rng.gen_range(0..base.len())].clone();
    // weighted scaling u_i -> s^{pbar / p_i} u_i preserves the relations
    let s = qf(
        rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 },
        rng.gen_range(1..=3),
    );
    let pbar = w.pbar();
    u.iter()
        .zip(p)
        .map(|(x, &pi)| x * num_traits::pow(s.clone(), (pbar / pi) as usize))
        .collect()
}

pub fn random_torus(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    (0..len)
        .map(|_| {
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            qf(sign * rng.gen_range(1..=5), rng.gen_range(1..=5))
        })
        .collect()
}

/// Literal reading of the filtration condition: chains of subrepresentations
/// encoded by their multiplicity vector `m` (vertex `v` lies in `m_v` members),
/// with `b(m) = 0` for the refinement basis and all members proper. Returns
/// whether every such nonzero chain has `theta(m) > 0`, searching `m_v <= bound`.
pub fn literal_chain_stable(rep: &RefinedRep, theta: &[i64], bound: i64) -> bool {
    let w = rep.wpl();
    let q = build_q(w);
    let nv = w.vertex_count();
    let basis = refinement_basis(w);
    let live: Vec<(usize, usize)> = q
        .arrows
        .iter()
        .zip(&rep.w)
        .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
        .map(|(a, _)| (a.src, a.dst))
        .collect();
    let mut m = vec![0i64; nv];
    loop {
        // odometer over m[1..], m[0] = 0 from b_0
        let mut i = 1;
        while i < nv && m[i] == bound {
            m[i] = 0;
            i += 1;
        }
        if i == nv {
            return true;
        }
        m[i] += 1;
        if basis
            .vectors
            .iter()
            .any(|b| b.iter().zip(&m).map(|(x, y)| x * y).sum::<i64>() != 0)
        {
            continue;
        }
        let top = *m.iter().max().unwrap();
        let chain_ok = (1..=top).all(|level| {
            let member: Vec<bool> = m.iter().map(|&x| x >= level).collect();
            let proper = member.iter().any(|&x| !x);
            let closed = live.iter().all(|&(s, t)| !member[s] || member[t]);
            proper && closed
        });
        if chain_ok && theta.iter().zip(&m).map(|(t, x)| t * x).sum::<i64>() <= 0 {
            return false;
        }
    }
}
