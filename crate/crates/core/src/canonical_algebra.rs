//! The canonical algebra `(Q, I)` and the tilting sequence of line bundles
//! `O, O(x_1), ..., O((p_1 - 1) x_1), ..., O((p_n - 1) x_n), O(c)`.

use serde::{Deserialize, Serialize};

use crate::coxring::{h0_basis, h0_dim, Monomial, Poly};
use crate::error::{Error, Result};
use crate::linalg;
use crate::picard::{PicElt, Rational, WplData};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub src: usize,
    pub dst: usize,
    pub label: Monomial,
}

/// Quiver whose vertices carry line-bundle degrees and whose arrows carry
/// Cox-ring monomials. Arrows are sorted by `(src, dst, label)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledQuiver {
    pub vertices: Vec<PicElt>,
    pub arrows: Vec<Arrow>,
}

impl LabeledQuiver {
    pub fn new(vertices: Vec<PicElt>, mut arrows: Vec<Arrow>) -> Self {
        arrows.sort_by(|a, b| (a.src, a.dst, &a.label).cmp(&(b.src, b.dst, &b.label)));
        LabeledQuiver { vertices, arrows }
    }

    pub fn find_arrow(&self, src: usize, dst: usize, label: &Monomial) -> Option<usize> {
        self.arrows
            .iter()
            .position(|a| a.src == src && a.dst == dst && &a.label == label)
    }

    /// Composite label of a path, as a reduced polynomial.
    pub fn path_image(&self, w: &WplData, path: &[usize]) -> Poly {
        let n = w.n();
        path.iter()
            .fold(Poly::monomial(w, Monomial::one(n)), |acc, &a| {
                acc.mul_monomial(&self.arrows[a].label, w)
            })
    }
}

/// Linear combination of parallel paths; each path lists arrow indices from
/// source to target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathRelation {
    pub terms: Vec<(Rational, Vec<usize>)>,
}

/// Position of a vertex in the star-shaped quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    /// `v_0`, the bundle `O`.
    Source,
    /// `v_{arm+1, j}`, the bundle `O(j x_{arm+1})`, `1 <= j < p`.
    Arm { arm: usize, j: usize },
    /// `v_1`, the bundle `O(c)`.
    Sink,
}

pub fn vertex_kinds(w: &WplData) -> Vec<VertexKind> {
    let mut kinds = vec![VertexKind::Source];
    for arm in 0..w.n() {
        for j in 1..w.weight(arm) as usize {
            kinds.push(VertexKind::Arm { arm, j });
        }
    }
    kinds.push(VertexKind::Sink);
    kinds
}

/// Index of vertex `v_{arm+1, j}`, where `j = 0` is the source and `j = p` the sink.
pub fn arm_vertex(w: &WplData, arm: usize, j: usize) -> usize {
    let p = w.weight(arm) as usize;
    if j == 0 {
        0
    } else if j == p {
        w.vertex_count() - 1
    } else {
        1 + (0..arm).map(|i| w.weight(i) as usize - 1).sum::<usize>() + j - 1
    }
}

pub fn vertex_sequence(w: &WplData) -> Vec<PicElt> {
    vertex_kinds(w)
        .into_iter()
        .map(|k| match k {
            VertexKind::Source => w.zero(),
            VertexKind::Arm { arm, j } => w.combine([(j as i64, &w.x(arm))]),
            VertexKind::Sink => w.c(),
        })
        .collect()
}

pub fn build_q(w: &WplData) -> LabeledQuiver {
    let n = w.n();
    let mut arrows = Vec::new();
    for arm in 0..n {
        for j in 0..w.weight(arm) as usize {
            arrows.push(Arrow {
                src: arm_vertex(w, arm, j),
                dst: arm_vertex(w, arm, j + 1),
                label: Monomial::var(n, arm),
            });
        }
    }
    LabeledQuiver::new(vertex_sequence(w), arrows)
}

/// Arrow indices of `a_{arm,0}, ..., a_{arm,p-1}` in `q`.
pub fn arm_path(w: &WplData, q: &LabeledQuiver, arm: usize) -> Vec<usize> {
    let label = Monomial::var(w.n(), arm);
    (0..w.weight(arm) as usize)
        .map(|j| {
            q.find_arrow(arm_vertex(w, arm, j), arm_vertex(w, arm, j + 1), &label)
                .expect("arm arrow present")
        })
        .collect()
}

/// Relations `arm_i - arm_2 + lambda_i arm_1` for `i = 3..n`.
pub fn build_i(w: &WplData, q: &LabeledQuiver) -> Vec<PathRelation> {
    (2..w.n())
        .map(|i| PathRelation {
            terms: vec![
                (Rational::from_integer(1.into()), arm_path(w, q, i)),
                (Rational::from_integer((-1).into()), arm_path(w, q, 1)),
                (w.lambda(i), arm_path(w, q, 0)),
            ],
        })
        .collect()
}

/// Coordinates of `p` in the monomial basis `basis`; every term of `p` must
/// appear there.
pub(crate) fn coordinates(p: &Poly, basis: &[Monomial]) -> Vec<Rational> {
    let mut v = vec![Rational::from_integer(0.into()); basis.len()];
    for (m, c) in p.terms() {
        let idx = basis
            .binary_search(m)
            .unwrap_or_else(|_| panic!("monomial {m} outside the component basis"));
        v[idx] = c.clone();
    }
    v
}

/// All paths from `src` in an acyclic quiver, grouped by target.
fn paths_from(q: &LabeledQuiver, src: usize) -> Vec<Vec<Vec<usize>>> {
    let mut by_target = vec![Vec::new(); q.vertices.len()];
    let mut stack = vec![(src, Vec::new())];
    while let Some((v, path)) = stack.pop() {
        for (idx, a) in q.arrows.iter().enumerate() {
            if a.src == v {
                let mut next = path.clone();
                next.push(idx);
                stack.push((a.dst, next));
            }
        }
        by_target[v].push(path);
    }
    for paths in by_target.iter_mut() {
        paths.sort();
    }
    by_target
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub src: usize,
    pub dst: usize,
    pub path_count: usize,
    pub hom_dim: u64,
    pub rank: usize,
    pub kernel_dim: usize,
    /// Rank of the relations of `I` living in this component.
    pub relation_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndAlgebraReport {
    pub pairs: Vec<PairReport>,
    /// Every path map is onto its Hom space.
    pub surjective: bool,
    /// Every kernel is spanned by the relations of `I`.
    pub relations_span_kernels: bool,
}

impl EndAlgebraReport {
    pub fn pair(&self, src: usize, dst: usize) -> &PairReport {
        &self.pairs[self
            .pairs
            .iter()
            .position(|p| p.src == src && p.dst == dst)
            .unwrap()]
    }
}

/// The canonical algebra of a weighted projective line together with its
/// tilting sequence.
#[derive(Debug, Clone)]
pub struct CanonicalAlgebra {
    pub wpl: WplData,
    pub quiver: LabeledQuiver,
    pub relations: Vec<PathRelation>,
}

impl CanonicalAlgebra {
    pub fn new(w: &WplData) -> Self {
        let quiver = build_q(w);
        let relations = build_i(w, &quiver);
        CanonicalAlgebra {
            wpl: w.clone(),
            quiver,
            relations,
        }
    }

    fn degree(&self, i: usize) -> Result<&PicElt> {
        self.quiver.vertices.get(i).ok_or(Error::Vertex(i))
    }

    /// `dim Hom(E_i, E_j) = h0(deg E_j - deg E_i)`.
    pub fn hom_dim(&self, i: usize, j: usize) -> Result<u64> {
        let d = self.wpl.sub(self.degree(j)?, self.degree(i)?)?;
        Ok(h0_dim(&self.wpl, &d))
    }

    /// `dim Ext^1(E_i, E_j) = h0(deg E_i - deg E_j + omega)` by Serre duality.
    pub fn ext1_dim(&self, i: usize, j: usize) -> Result<u64> {
        let w = &self.wpl;
        let d = w.combine([(1, self.degree(i)?), (-1, self.degree(j)?), (1, &w.omega())]);
        Ok(h0_dim(w, &d))
    }

    /// Checks that paths of `Q` map onto every `Hom(E_i, E_j)` and that the
    /// kernels are spanned by `I`.
    pub fn verify_end_algebra(&self) -> EndAlgebraReport {
        let w = &self.wpl;
        let q = &self.quiver;
        let nv = q.vertices.len();
        let mut pairs = Vec::new();
        let mut surjective = true;
        let mut spanned = true;
        for src in 0..nv {
            let by_target = paths_from(q, src);
            for (dst, paths) in by_target.iter().enumerate() {
                let d = w.combine([(1, &q.vertices[dst]), (-1, &q.vertices[src])]);
                let basis = h0_basis(w, &d);
                let hom_dim = basis.len() as u64;
                // columns are path images; rows index the monomial basis
                let images: Vec<Vec<Rational>> = paths
                    .iter()
                    .map(|p| coordinates(&q.path_image(w, p), &basis))
                    .collect();
                let matrix: Vec<Vec<Rational>> = (0..basis.len())
                    .map(|r| images.iter().map(|col| col[r].clone()).collect())
                    .collect();
                let rank = linalg::rank(&matrix, paths.len());
                let kernel_dim = paths.len() - rank;

                let rel_vectors: Vec<Vec<Rational>> = self
                    .relations
                    .iter()
                    .filter(|r| {
                        let first = &r.terms[0].1;
                        endpoints(q, first) == Some((src, dst))
                    })
                    .map(|r| relation_vector(r, paths))
                    .collect();
                let relation_rank = linalg::rank(&rel_vectors, paths.len());
                let in_kernel = rel_vectors.iter().all(|v| {
                    matrix.iter().all(|row| {
                        row.iter()
                            .zip(v)
                            .fold(Rational::from_integer(0.into()), |acc, (a, b)| acc + a * b)
                            == Rational::from_integer(0.into())
                    })
                });
                surjective &= rank as u64 == hom_dim;
                spanned &= in_kernel && relation_rank == kernel_dim;
                if paths.is_empty() && hom_dim == 0 {
                    continue;
                }
                pairs.push(PairReport {
                    src,
                    dst,
                    path_count: paths.len(),
                    hom_dim,
                    rank,
                    kernel_dim,
                    relation_rank,
                });
            }
        }
        EndAlgebraReport {
            pairs,
            surjective,
            relations_span_kernels: spanned,
        }
    }
}

fn endpoints(q: &LabeledQuiver, path: &[usize]) -> Option<(usize, usize)> {
    Some((q.arrows[*path.first()?].src, q.arrows[*path.last()?].dst))
}

/// Coefficient vector of a relation in the given list of paths.
pub(crate) fn relation_vector(r: &PathRelation, paths: &[Vec<usize>]) -> Vec<Rational> {
    let mut v = vec![Rational::from_integer(0.into()); paths.len()];
    for (c, p) in &r.terms {
        let idx = paths
            .iter()
            .position(|x| x == p)
            .expect("relation path enumerated");
        v[idx] += c;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: &[i64], l: &[i64]) -> WplData {
        WplData::with_int_lambda(p, l).unwrap()
    }

    #[test]
    fn vertex_sequences() {
        let a = w(&[2, 3, 4], &[]);
        let seq = vertex_sequence(&a);
        let raw = [
            (0, [0, 0, 0]),
            (0, [1, 0, 0]),
            (0, [0, 1, 0]),
            (0, [0, 2, 0]),
            (0, [0, 0, 1]),
            (0, [0, 0, 2]),
            (0, [0, 0, 3]),
            (1, [0, 0, 0]),
        ];
        let expected: Vec<PicElt> = raw.iter().map(|(c, x)| a.nf(*c, x)).collect();
        assert_eq!(seq, expected);
        let b = w(&[2, 3], &[]);
        assert_eq!(
            vertex_sequence(&b),
            vec![b.zero(), b.x(0), b.x(1), b.nf(0, &[0, 2]), b.c()]
        );
        assert_eq!(vertex_sequence(&w(&[2, 2, 2, 2], &[2])).len(), 6);
    }

    #[test]
    fn quiver_q() {
        assert_eq!(build_q(&w(&[2, 3, 4], &[])).arrows.len(), 9);
        assert_eq!(build_q(&w(&[3, 3, 3], &[])).arrows.len(), 9);
        let q = build_q(&w(&[2, 2], &[]));
        assert_eq!(q.arrows.len(), 4);
        // labels compose to the degree difference along every arrow
        let a = w(&[2, 3, 4], &[]);
        let q = build_q(&a);
        for arr in &q.arrows {
            let diff = a.sub(&q.vertices[arr.dst], &q.vertices[arr.src]).unwrap();
            assert_eq!(arr.label.xdeg(&a), diff);
            assert_eq!(arr.label.kdeg(), 0);
        }
    }

    #[test]
    fn padded_arm_is_a_single_arrow() {
        let a = w(&[1, 1, 5], &[]);
        let q = build_q(&a);
        assert_eq!(q.arrows.len(), 6);
        assert!(q.find_arrow(0, 5, &Monomial::var(2, 0)).is_some());
    }

    #[test]
    fn relations_i() {
        let a = w(&[2, 3, 4], &[]);
        let q = build_q(&a);
        let rels = build_i(&a, &q);
        assert_eq!(rels.len(), 1);
        let coeffs: Vec<i64> = rels[0]
            .terms
            .iter()
            .map(|(c, _)| i64::try_from(c.to_integer()).unwrap())
            .collect();
        assert_eq!(coeffs, vec![1, -1, 1]);
        assert!(build_i(&w(&[2, 3], &[]), &build_q(&w(&[2, 3], &[]))).is_empty());
        let d = w(&[2, 2, 2, 2], &[2]);
        let rels = build_i(&d, &build_q(&d));
        assert_eq!(rels.len(), 2);
        assert_eq!(rels[1].terms[2].0, Rational::from_integer(2.into()));
    }

    #[test]
    fn hom_and_ext() {
        let alg = CanonicalAlgebra::new(&w(&[2, 3, 4], &[]));
        assert_eq!(alg.hom_dim(0, 7).unwrap(), 2);
        assert_eq!(alg.hom_dim(3, 3).unwrap(), 1);
        assert_eq!(alg.hom_dim(7, 0).unwrap(), 0);
        assert_eq!(alg.hom_dim(0, 8), Err(Error::Vertex(8)));
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(alg.ext1_dim(i, j).unwrap(), 0);
            }
        }
        // Ext^1(O, O(omega)) = h0(0) = 1 on (2,3,7): the vanishing test is not vacuous
        let h = w(&[2, 3, 7], &[]);
        let (src, dst) = (h.zero(), h.omega());
        let serre = h.combine([(1, &src), (-1, &dst), (1, &h.omega())]);
        assert_eq!(h0_dim(&h, &serre), 1);
        let alg = CanonicalAlgebra::new(&h);
        for i in 0..h.vertex_count() {
            for j in 0..h.vertex_count() {
                assert_eq!(alg.ext1_dim(i, j).unwrap(), 0);
            }
        }
    }

    #[test]
    fn end_algebra_234() {
        let alg = CanonicalAlgebra::new(&w(&[2, 3, 4], &[]));
        let rep = alg.verify_end_algebra();
        assert!(rep.surjective);
        assert!(rep.relations_span_kernels);
        let top = rep.pair(0, 7);
        assert_eq!((top.path_count, top.hom_dim, top.kernel_dim), (3, 2, 1));
        let first = rep.pair(0, 1);
        assert_eq!(
            (first.path_count, first.hom_dim, first.kernel_dim),
            (1, 1, 0)
        );
    }

    #[test]
    fn end_algebra_2222() {
        let alg = CanonicalAlgebra::new(&w(&[2, 2, 2, 2], &[2]));
        let rep = alg.verify_end_algebra();
        assert!(rep.surjective && rep.relations_span_kernels);
        let top = rep.pair(0, 5);
        assert_eq!((top.path_count, top.hom_dim, top.kernel_dim), (4, 2, 2));
    }
}
