//! The quiver `(Q~, I~)` of the pulled-back tilting bundle on the total space
//! of the canonical bundle.
//!
//! `Hom(pi^* E_i, pi^* E_j) = sum_k Hom(E_i, E_j (-k omega))`, and an element of
//! the `k`-th summand is a Cox-ring monomial times `t^k`. The arrows of `Q~`
//! are a basis of `J / J^2`, where `J` is the graded radical (everything but
//! the identity components).

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::canonical_algebra::{coordinates, vertex_sequence, Arrow, LabeledQuiver, PathRelation};
use crate::coxring::{h0_basis, Monomial, Poly};
use crate::error::{Error, Result};
use crate::linalg::{self, Subspace};
use crate::picard::{PicElt, Rational, WplData};

/// Default truncation degree `2 * pbar`.
pub fn default_k_max(w: &WplData) -> u32 {
    2 * w.pbar() as u32
}

/// Monomial basis of `Hom(E_i, E_j (-k omega))`, each monomial carrying `t^k`.
pub fn graded_hom(w: &WplData, vertices: &[PicElt], i: usize, j: usize, k: u32) -> Vec<Monomial> {
    let d = w.combine([
        (1, &vertices[j]),
        (-1, &vertices[i]),
        (-i64::from(k), &w.omega()),
    ]);
    h0_basis(w, &d).into_iter().map(|m| m.with_t(k)).collect()
}

/// Graded Hom bases for all vertex pairs and `k <= k_max`.
#[derive(Debug, Clone)]
pub struct GradedHomTable {
    pub k_max: u32,
    vertex_count: usize,
    entries: Vec<Vec<Monomial>>,
}

impl GradedHomTable {
    pub fn new(w: &WplData, k_max: u32) -> Self {
        let vertices = vertex_sequence(w);
        let nv = vertices.len();
        let mut entries = Vec::with_capacity(nv * nv * (k_max as usize + 1));
        for i in 0..nv {
            for j in 0..nv {
                for k in 0..=k_max {
                    entries.push(graded_hom(w, &vertices, i, j, k));
                }
            }
        }
        GradedHomTable {
            k_max,
            vertex_count: nv,
            entries,
        }
    }

    pub fn get(&self, i: usize, j: usize, k: u32) -> &[Monomial] {
        let per_k = self.k_max as usize + 1;
        &self.entries[(i * self.vertex_count + j) * per_k + k as usize]
    }

    fn in_radical(i: usize, j: usize, k: u32) -> bool {
        i != j || k > 0
    }
}

fn poly_from_coords(w: &WplData, coords: &[Rational], basis: &[Monomial]) -> Poly {
    Poly::from_terms(w, basis.iter().cloned().zip(coords.iter().cloned()))
}

fn unit_vector(len: usize, idx: usize) -> Vec<Rational> {
    let mut v = vec![Rational::from_integer(0.into()); len];
    v[idx] = Rational::from_integer(1.into());
    v
}

/// A component `(src, dst, k)` of the graded endomorphism algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Component {
    pub src: usize,
    pub dst: usize,
    pub k: u32,
}

#[derive(Debug, Clone)]
pub struct ArrowExtraction {
    pub wpl: WplData,
    pub quiver: LabeledQuiver,
    pub k_max_used: u32,
    /// The arrows generate every component up to the verification horizon.
    pub closure_verified: bool,
    /// Dimension of `J^2` in each nonzero component.
    pub j2_dims: BTreeMap<Component, usize>,
}

/// Degree up to which `extract_arrows` checks generation.
pub fn verification_horizon(k_max: u32) -> u32 {
    2 * k_max + 1
}

/// Arrows of `Q~` up to `t`-degree `k_max`, chosen as canonically-least
/// monomials outside `J^2` in every component.
pub fn extract_arrows(w: &WplData, k_max: u32) -> ArrowExtraction {
    let table = GradedHomTable::new(w, k_max);
    let vertices = vertex_sequence(w);
    let nv = vertices.len();
    let mut arrows = Vec::new();
    let mut j2_dims = BTreeMap::new();

    for src in 0..nv {
        for dst in 0..nv {
            for k in 0..=k_max {
                let basis = table.get(src, dst, k);
                if basis.is_empty() {
                    continue;
                }
                let span = j_squared(w, &table, src, dst, k);
                j2_dims.insert(Component { src, dst, k }, span.rank());
                if !GradedHomTable::in_radical(src, dst, k) {
                    continue;
                }
                let mut span = span;
                for (idx, m) in basis.iter().enumerate() {
                    if span.insert(&unit_vector(basis.len(), idx)) {
                        arrows.push(Arrow {
                            src,
                            dst,
                            label: m.clone(),
                        });
                    }
                }
            }
        }
    }

    let mut ext = ArrowExtraction {
        wpl: w.clone(),
        quiver: LabeledQuiver::new(vertices, arrows),
        k_max_used: k_max,
        closure_verified: false,
        j2_dims,
    };
    ext.closure_verified = check_generation(&ext, verification_horizon(k_max)).complete;
    ext
}

/// Span of all products of two radical elements landing in `(src, dst, k)`.
fn j_squared(w: &WplData, table: &GradedHomTable, src: usize, dst: usize, k: u32) -> Subspace {
    let basis = table.get(src, dst, k);
    let mut span = Subspace::new(basis.len());
    let mut raw: HashSet<Monomial> = HashSet::new();
    for mid in 0..table.vertex_count {
        for k1 in 0..=k {
            let k2 = k - k1;
            if !GradedHomTable::in_radical(src, mid, k1)
                || !GradedHomTable::in_radical(mid, dst, k2)
            {
                continue;
            }
            for m1 in table.get(src, mid, k1) {
                for m2 in table.get(mid, dst, k2) {
                    raw.insert(m1.times(m2));
                }
            }
        }
    }
    let mut raw: Vec<Monomial> = raw.into_iter().collect();
    raw.sort();
    for m in raw {
        if span.is_full() {
            break;
        }
        let image = Poly::monomial(w, m);
        span.insert(&coordinates(&image, basis));
    }
    span
}

/// Outcome of a generation check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenerationReport {
    pub complete: bool,
    /// Basis monomials not reached by paths, with their component.
    pub unreached: Vec<(Component, Monomial)>,
}

/// Checks that products of arrow labels along paths span every component
/// with `k <= k_max`.
pub fn check_generation(ext: &ArrowExtraction, k_max: u32) -> GenerationReport {
    let w = &ext.wpl;
    let q = &ext.quiver;
    let nv = q.vertices.len();
    let table = GradedHomTable::new(w, k_max);
    let mut unreached = Vec::new();

    for src in 0..nv {
        // reach[dst][k]: subspace of the component reached so far
        let mut reach: Vec<Vec<Subspace>> = (0..nv)
            .map(|dst| {
                (0..=k_max)
                    .map(|k| Subspace::new(table.get(src, dst, k).len()))
                    .collect()
            })
            .collect();
        reach[src][0].insert(&unit_vector(1, 0));
        for k in 0..=k_max {
            loop {
                let mut grew = false;
                for a in &q.arrows {
                    let ka = a.label.kdeg();
                    if ka > k {
                        continue;
                    }
                    let from_k = k - ka;
                    if reach[a.src][from_k as usize].rank() == 0
                        || reach[a.dst][k as usize].is_full()
                    {
                        continue;
                    }
                    let from_basis = table.get(src, a.src, from_k);
                    let to_basis = table.get(src, a.dst, k);
                    for v in reach[a.src][from_k as usize].basis() {
                        let image = poly_from_coords(w, &v, from_basis).mul_monomial(&a.label, w);
                        grew |= reach[a.dst][k as usize].insert(&coordinates(&image, to_basis));
                    }
                }
                if !grew {
                    break;
                }
            }
        }
        for dst in 0..nv {
            for k in 0..=k_max {
                let basis = table.get(src, dst, k);
                let span = &reach[dst][k as usize];
                if span.is_full() {
                    continue;
                }
                for (idx, m) in basis.iter().enumerate() {
                    if !span.contains(&unit_vector(basis.len(), idx)) {
                        unreached.push((Component { src, dst, k }, m.clone()));
                    }
                }
            }
        }
    }
    GenerationReport {
        complete: unreached.is_empty(),
        unreached,
    }
}

/// Kernel of the path map in one component of `C Q~`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentRelations {
    pub component: Component,
    pub path_count: usize,
    pub hom_dim: usize,
    pub relations: Vec<PathRelation>,
}

/// Relations of `I~`: per component `(src, dst, k)` with `k <= max_k`, a basis
/// of the kernel of the map from paths to the graded Hom space. Each kernel
/// basis is in reduced echelon form over the sorted path list.
pub fn extract_relations(
    ext: &ArrowExtraction,
    max_k: u32,
    path_cap: usize,
) -> Result<Vec<ComponentRelations>> {
    let w = &ext.wpl;
    let q = &ext.quiver;
    let nv = q.vertices.len();
    if has_zero_degree_cycle(q) {
        return Err(Error::ZeroDegreeCycle);
    }
    let table = GradedHomTable::new(w, max_k);
    let mut out = Vec::new();
    let mut total = 0usize;
    for src in 0..nv {
        // paths[dst][k]
        let mut paths: Vec<Vec<Vec<Vec<usize>>>> = vec![vec![Vec::new(); max_k as usize + 1]; nv];
        let mut stack: Vec<(usize, u32, Vec<usize>)> = vec![(src, 0, Vec::new())];
        while let Some((v, k, path)) = stack.pop() {
            if !path.is_empty() {
                total += 1;
                if total > path_cap {
                    return Err(Error::Precision { cap: path_cap });
                }
                paths[v][k as usize].push(path.clone());
            }
            for (idx, a) in q.arrows.iter().enumerate() {
                let nk = k + a.label.kdeg();
                if a.src == v && nk <= max_k {
                    let mut next = path.clone();
                    next.push(idx);
                    stack.push((a.dst, nk, next));
                }
            }
        }
        for (dst, by_k) in paths.iter_mut().enumerate() {
            for (k, list) in by_k.iter_mut().enumerate() {
                if list.is_empty() {
                    continue;
                }
                list.sort();
                let basis = table.get(src, dst, k as u32);
                let images: Vec<Vec<Rational>> = list
                    .iter()
                    .map(|p| coordinates(&q.path_image(w, p), basis))
                    .collect();
                let matrix: Vec<Vec<Rational>> = (0..basis.len())
                    .map(|r| images.iter().map(|col| col[r].clone()).collect())
                    .collect();
                let kernel = linalg::rref(&linalg::nullspace(&matrix, list.len()), list.len());
                let relations = kernel
                    .into_iter()
                    .map(|v| PathRelation {
                        terms: v
                            .into_iter()
                            .zip(list.iter())
                            .filter(|(c, _)| c != &Rational::from_integer(0.into()))
                            .map(|(c, p)| (c, p.clone()))
                            .collect(),
                    })
                    .collect();
                out.push(ComponentRelations {
                    component: Component {
                        src,
                        dst,
                        k: k as u32,
                    },
                    path_count: list.len(),
                    hom_dim: basis.len(),
                    relations,
                });
            }
        }
    }
    out.sort_by_key(|c| c.component);
    Ok(out)
}

/// Whether the subquiver of arrows with `t`-degree zero has a directed cycle.
pub fn has_zero_degree_cycle(q: &LabeledQuiver) -> bool {
    let nv = q.vertices.len();
    let mut indegree = vec![0usize; nv];
    let flat: Vec<&Arrow> = q.arrows.iter().filter(|a| a.label.kdeg() == 0).collect();
    for a in &flat {
        indegree[a.dst] += 1;
    }
    let mut ready: Vec<usize> = (0..nv).filter(|&v| indegree[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = ready.pop() {
        seen += 1;
        for a in flat.iter().filter(|a| a.src == v) {
            indegree[a.dst] -= 1;
            if indegree[a.dst] == 0 {
                ready.push(a.dst);
            }
        }
    }
    seen < nv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical_algebra::build_q;

    fn mono(exps: &[u32], t: u32) -> Monomial {
        Monomial {
            t,
            exps: exps.to_vec(),
        }
    }

    #[test]
    fn graded_hom_examples() {
        let w = WplData::with_int_lambda(&[2, 3, 4], &[]).unwrap();
        let v = vertex_sequence(&w);
        // O(y) -> O (-4 omega)
        assert_eq!(graded_hom(&w, &v, 2, 0, 4), vec![mono(&[0, 0, 0], 4)]);
        for i in 0..v.len() {
            assert_eq!(graded_hom(&w, &v, i, i, 0), vec![Monomial::one(3)]);
        }
        let e = WplData::with_int_lambda(&[3, 3, 3], &[]).unwrap();
        let v = vertex_sequence(&e);
        // O(x) -> O(2y) (-omega)
        assert_eq!(graded_hom(&e, &v, 1, 4, 1), vec![mono(&[0, 0, 1], 1)]);
    }

    #[test]
    fn q_arrows_survive() {
        for (p, l) in [
            (&[2, 3, 4][..], &[][..]),
            (&[3, 3, 3], &[]),
            (&[2, 3], &[]),
            (&[2, 2, 2, 3], &[2]),
        ] {
            let w = WplData::with_int_lambda(p, l).unwrap();
            let ext = extract_arrows(&w, default_k_max(&w));
            for a in &build_q(&w).arrows {
                assert!(
                    ext.quiver.find_arrow(a.src, a.dst, &a.label).is_some(),
                    "{p:?}"
                );
            }
            assert!(!has_zero_degree_cycle(&ext.quiver));
        }
    }

    #[test]
    fn truncation_is_detected() {
        let w = WplData::with_int_lambda(&[2, 3, 4], &[]).unwrap();
        let ext = extract_arrows(&w, 1);
        assert!(!ext.closure_verified);
        let report = check_generation(&ext, 24);
        assert!(!report.complete);
        assert!(report.unreached.iter().any(|(c, m)| c.k == 2 && m.t == 2));
    }

    #[test]
    fn four_point_hyperbolic() {
        let w = WplData::with_int_lambda(&[3, 3, 3, 3], &[2]).unwrap();
        let ext = extract_arrows(&w, 6);
        assert_eq!(ext.quiver, build_q(&w));
        assert!(ext.closure_verified);

        // 2 omega = x4, so O -> O(x4) (-2 omega) is the identity twist
        let w = WplData::with_int_lambda(&[2, 2, 2, 3], &[2]).unwrap();
        let ext = extract_arrows(&w, 12);
        let q = build_q(&w);
        let extra: Vec<_> = ext
            .quiver
            .arrows
            .iter()
            .filter(|a| q.find_arrow(a.src, a.dst, &a.label).is_none())
            .map(|a| (a.src, a.dst, a.label.clone()))
            .collect();
        let t2 = Monomial::t_pow(4, 2);
        assert_eq!(
            extra,
            vec![(0, 4, t2.clone()), (4, 5, t2.clone()), (5, 6, t2)]
        );
        assert!(ext.closure_verified);
    }

    #[test]
    fn relations_component() {
        let w = WplData::with_int_lambda(&[2, 3, 4], &[]).unwrap();
        let ext = extract_arrows(&w, 24);
        let rels = extract_relations(&ext, 0, 10_000).unwrap();
        let c = rels
            .iter()
            .find(|c| {
                c.component
                    == Component {
                        src: 0,
                        dst: 7,
                        k: 0,
                    }
            })
            .unwrap();
        assert_eq!((c.path_count, c.hom_dim, c.relations.len()), (3, 2, 1));
        assert!(matches!(
            extract_relations(&ext, 24, 10),
            Err(Error::Precision { cap: 10 })
        ));
    }
}
