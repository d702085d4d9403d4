//! Spherical / Euclidean / hyperbolic classification and the acyclicity of
//! the pulled-back bundle on the canonical bundle.
//!
//! `Ext^1_K(pi^* E_i, pi^* E_j) = sum_{k >= 0} H^0(deg E_i - deg E_j + (k+1) omega)^*`,
//! and `Ext^2` vanishes identically, so acyclicity reduces to this sum.

use std::cmp::Reverse;
use std::fmt;

use serde::Serialize;

use crate::canonical_algebra::vertex_sequence;
use crate::coxring::{h0_basis, h0_dim, Monomial};
use crate::error::{Error, Result};
use crate::picard::{Order, PicElt, WplData};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Ade {
    A(u32),
    D(u32),
    E(u32),
}

impl fmt::Display for Ade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ade::A(i) => write!(f, "A{i}"),
            Ade::D(i) => write!(f, "D{i}"),
            Ade::E(i) => write!(f, "E{i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WeightClass {
    Spherical(Ade),
    Euclidean,
    Hyperbolic,
}

impl fmt::Display for WeightClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightClass::Spherical(t) => write!(f, "spherical {t}"),
            WeightClass::Euclidean => f.write_str("euclidean"),
            WeightClass::Hyperbolic => f.write_str("hyperbolic"),
        }
    }
}

pub fn classify(w: &WplData) -> WeightClass {
    let delta_omega = w.delta(&w.omega());
    if delta_omega > 0 {
        return WeightClass::Hyperbolic;
    }
    if delta_omega == 0 {
        return WeightClass::Euclidean;
    }
    let mut p: Vec<u32> = w.weights().iter().map(|&x| x as u32).collect();
    p.sort_unstable();
    let ade = match p.as_slice() {
        [a, b] => Ade::A(a + b),
        [2, 2, m] => Ade::D(m + 2),
        [2, 3, 3] => Ade::E(6),
        [2, 3, 4] => Ade::E(7),
        [2, 3, 5] => Ade::E(8),
        _ => unreachable!("negative degree of omega forces at most three orbifold points"),
    };
    WeightClass::Spherical(ade)
}

/// Why a scan of the `Ext^1` sum stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Certificate {
    /// Degrees became negative and keep decreasing.
    DegreeCutoff,
    /// A full period of the torsion element `omega` was scanned.
    TorsionPeriod,
    /// A nonzero term was found.
    WitnessFound,
}

/// Value of the `Ext^1` sum. `Infinite` carries the least summation index
/// `k` with a nonzero term (the twist is by `(k+1) omega`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Ext1K {
    Finite(u64),
    Infinite { k: u64 },
}

/// `deg E_i - deg E_j + (k+1) omega`.
pub fn ext1_term(w: &WplData, vertices: &[PicElt], i: usize, j: usize, k: u64) -> PicElt {
    w.combine([
        (1, &vertices[i]),
        (-1, &vertices[j]),
        (k as i64 + 1, &w.omega()),
    ])
}

/// A scan bound that is never reached by a correct implementation.
pub fn default_k_cap(w: &WplData) -> u64 {
    let period = match w.torsion_order(&w.omega()) {
        Order::Finite(m) => m,
        Order::Infinite => 0,
    };
    2 * ((w.n() as u64 + 2) * w.pbar() as u64 + period)
}

struct Scan {
    value: Ext1K,
    certificate: Certificate,
    first_nonzero: Option<u64>,
}

fn scan(w: &WplData, vertices: &[PicElt], i: usize, j: usize, k_cap: u64) -> Result<Scan> {
    let delta_omega = w.delta(&w.omega());
    let mut total = 0u64;
    let mut first_nonzero = None;
    let mut k = 0u64;
    loop {
        if k > k_cap {
            return Err(Error::CapExceeded(k_cap));
        }
        let d = ext1_term(w, vertices, i, j, k);
        let h = h0_dim(w, &d);
        if h > 0 && first_nonzero.is_none() {
            first_nonzero = Some(k);
        }
        total += h;
        if delta_omega < 0 {
            if w.delta(&d) < 0 {
                return Ok(Scan {
                    value: Ext1K::Finite(total),
                    certificate: Certificate::DegreeCutoff,
                    first_nonzero,
                });
            }
        } else if delta_omega == 0 {
            let Order::Finite(period) = w.torsion_order(&w.omega()) else {
                unreachable!("omega of degree zero is torsion");
            };
            if h > 0 {
                return Ok(Scan {
                    value: Ext1K::Infinite { k },
                    certificate: Certificate::WitnessFound,
                    first_nonzero,
                });
            }
            if k + 1 >= period {
                return Ok(Scan {
                    value: Ext1K::Finite(0),
                    certificate: Certificate::TorsionPeriod,
                    first_nonzero,
                });
            }
        } else if h > 0 {
            return Ok(Scan {
                value: Ext1K::Infinite { k },
                certificate: Certificate::WitnessFound,
                first_nonzero,
            });
        }
        k += 1;
    }
}

/// The `Ext^1` sum for the pair `(i, j)`.
pub fn ext1_dim_k(w: &WplData, i: usize, j: usize, k_cap: u64) -> Result<Ext1K> {
    let vertices = vertex_sequence(w);
    for v in [i, j] {
        if v >= vertices.len() {
            return Err(Error::Vertex(v));
        }
    }
    Ok(scan(w, &vertices, i, j, k_cap)?.value)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub i: usize,
    pub j: usize,
    pub k: u64,
    pub degree: PicElt,
    pub monomials: Vec<Monomial>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AcyclicityVerdict {
    pub acyclic: bool,
    pub witness: Option<Witness>,
    pub certificate: Certificate,
    /// `Ext^1` vanishing disagrees with "spherical of type A".
    pub discrepancy: bool,
}

/// Pairs in the order they are searched for witnesses: decreasing
/// `delta(deg E_i - deg E_j)`, then lexicographic.
pub fn witness_order(w: &WplData) -> Vec<(usize, usize)> {
    let vertices = vertex_sequence(w);
    let nv = vertices.len();
    let mut pairs: Vec<(usize, usize)> =
        (0..nv).flat_map(|i| (0..nv).map(move |j| (i, j))).collect();
    pairs.sort_by_key(|&(i, j)| {
        let d = w.combine([(1, &vertices[i]), (-1, &vertices[j])]);
        (Reverse(w.delta(&d)), i, j)
    });
    pairs
}

pub fn is_pullback_acyclic(w: &WplData) -> AcyclicityVerdict {
    let vertices = vertex_sequence(w);
    let k_cap = default_k_cap(w);
    let mut certificate = Certificate::DegreeCutoff;
    let mut witness = None;
    for (i, j) in witness_order(w) {
        let s = scan(w, &vertices, i, j, k_cap).expect("scan bound covers every weight tuple");
        if let Some(k) = s.first_nonzero {
            let degree = ext1_term(w, &vertices, i, j, k);
            witness = Some(Witness {
                i,
                j,
                k,
                monomials: h0_basis(w, &degree),
                degree,
            });
            certificate = Certificate::WitnessFound;
            break;
        }
        certificate = s.certificate;
    }
    let acyclic = witness.is_none();
    let expected = matches!(classify(w), WeightClass::Spherical(Ade::A(_)));
    AcyclicityVerdict {
        acyclic,
        witness,
        certificate,
        discrepancy: acyclic != expected,
    }
}
