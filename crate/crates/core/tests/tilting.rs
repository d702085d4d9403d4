mod common;

use common::{h0_basis_oracle, wpl};
use wpl_core::canonical_algebra::{vertex_sequence, CanonicalAlgebra};
use wpl_core::tilting::{classify, ext1_term, is_pullback_acyclic, Ade, Certificate, WeightClass};

fn grid() -> Vec<Vec<i64>> {
    let mut out = vec![vec![2, 2, 2, 2], vec![2, 2, 2, 3]];
    for a in 1..=6 {
        for b in a..=6 {
            out.push(vec![a, b]);
            for c in b..=6 {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

#[test]
fn acyclic_exactly_for_type_a() {
    for p in grid() {
        let w = wpl(&p);
        let v = is_pullback_acyclic(&w);
        let type_a = matches!(classify(&w), WeightClass::Spherical(Ade::A(_)));
        assert_eq!(v.acyclic, type_a, "{p:?}");
        assert!(!v.discrepancy, "{p:?}");
        if let Some(wit) = &v.witness {
            assert_eq!(v.certificate, Certificate::WitnessFound);
            let vertices = vertex_sequence(&w);
            let d = ext1_term(&w, &vertices, wit.i, wit.j, wit.k);
            assert_eq!(d, wit.degree);
            let oracle = h0_basis_oracle(&w, &d);
            assert!(!oracle.is_empty(), "{p:?}");
            assert_eq!(oracle, wit.monomials);
        }
    }
}

#[test]
fn classification_matches_euler_characteristic() {
    for p in grid() {
        let w = wpl(&p);
        let chi = w.euler_char();
        let zero = wpl_core::Rational::from_integer(0.into());
        let expected = if chi > zero {
            "spherical"
        } else if chi == zero {
            "euclidean"
        } else {
            "hyperbolic"
        };
        assert!(classify(&w).to_string().starts_with(expected), "{p:?}");
    }
}

#[test]
fn tilting_on_the_curve() {
    for p in [&[2, 3, 4][..], &[3, 3, 3], &[2, 3, 7], &[2, 2, 2, 2]] {
        let w = wpl(p);
        let a = CanonicalAlgebra::new(&w);
        for i in 0..w.vertex_count() {
            for j in 0..w.vertex_count() {
                assert_eq!(a.ext1_dim(i, j).unwrap(), 0, "{p:?} {i} {j}");
            }
        }
    }
}
