use std::sync::{Arc, OnceLock};

use kahler_core::{builtin, Exact, LinearOperator, Multivector, Parity, Picture, Scalar, Zoo};
use proptest::prelude::*;

const N: usize = 2;

fn exact(re: i64, im: i64) -> Exact {
    Exact::from_int(re) + Exact::i() * Exact::from_int(im)
}

fn multivector() -> impl Strategy<Value = Multivector<Exact>> {
    prop::collection::vec((-3i64..=3, -3i64..=3), 1 << (2 * N)).prop_map(|c| {
        Multivector::from_coeffs(N, c.into_iter().map(|(re, im)| exact(re, im)).collect())
    })
}

fn real_vector() -> impl Strategy<Value = Multivector<Exact>> {
    prop::collection::vec(-4i64..=4, 2 * N).prop_map(|c| {
        c.iter()
            .enumerate()
            .fold(Multivector::zero(N), |acc, (a, &v)| {
                acc + Multivector::basis_vector(N, a).scale(&Exact::from_int(v))
            })
    })
}

fn homogeneous(k: u32) -> impl Strategy<Value = Multivector<Exact>> {
    multivector().prop_map(move |m| m.grade_part(k))
}

fn graded_pair() -> impl Strategy<Value = (u32, u32, Multivector<Exact>, Multivector<Exact>)> {
    (0u32..=4, 0u32..=4).prop_flat_map(|(k, l)| (Just(k), Just(l), homogeneous(k), homogeneous(l)))
}

/// Pure-parity, nonzero exterior-side operators of pks4.
fn pool() -> &'static Vec<(String, LinearOperator<Exact>)> {
    static POOL: OnceLock<Vec<(String, LinearOperator<Exact>)>> = OnceLock::new();
    POOL.get_or_init(|| {
        let g = builtin("pks4").unwrap().geometry::<Exact>().unwrap();
        let zoo = Zoo::build(Arc::new(g)).unwrap();
        let mut out = Vec::new();
        for (name, op) in zoo.operators() {
            if op.picture != Picture::Exterior {
                continue;
            }
            let (even, odd) = op.split_parity();
            for part in [even, odd] {
                if !part.is_zero() {
                    out.push((name.to_string(), part));
                }
            }
        }
        out
    })
}

fn sign(a: &LinearOperator<Exact>, b: &LinearOperator<Exact>) -> Exact {
    if a.parity() == Parity::Odd && b.parity() == Parity::Odd {
        -Exact::from_int(1)
    } else {
        Exact::from_int(1)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn clifford_product_is_associative(a in multivector(), b in multivector(), c in multivector()) {
        let left = a.clifford_mul(&b).unwrap().clifford_mul(&c).unwrap();
        let right = a.clifford_mul(&b.clifford_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn wedge_is_associative(a in multivector(), b in multivector(), c in multivector()) {
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn vector_squares_to_minus_norm(v in real_vector()) {
        let sq = v.clifford_mul(&v).unwrap();
        let norm = v.inner(&v).unwrap();
        prop_assert_eq!(sq, Multivector::scalar(N, -norm));
    }

    #[test]
    fn vector_product_splits(v in real_vector(), phi in multivector()) {
        let lhs = v.clifford_mul(&phi).unwrap();
        let rhs = v.wedge(&phi).unwrap() - v.contract(&phi).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_graded_commutativity((k, l, a, b) in graded_pair()) {
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        let expected = if (k * l) % 2 == 1 { -ba } else { ba };
        prop_assert_eq!(ab, expected);
    }

    #[test]
    fn inner_product_is_sesquilinear(a in multivector(), b in multivector(), re in -3i64..=3, im in -3i64..=3) {
        let z = exact(re, im);
        prop_assert_eq!(a.scale(&z).inner(&b).unwrap(), z.clone() * a.inner(&b).unwrap());
        prop_assert_eq!(a.inner(&b.scale(&z)).unwrap(), z.conj() * a.inner(&b).unwrap());
        prop_assert_eq!(b.inner(&a).unwrap(), a.inner(&b).unwrap().conj());
    }

    #[test]
    fn adjoint_is_an_involution_and_dual(i in 0usize..1000, phi in multivector(), psi in multivector()) {
        let (_, p) = &pool()[i % pool().len()];
        prop_assert_eq!(&p.adjoint().adjoint().matrix, &p.matrix);
        let lhs = p.apply(&phi).inner(&psi).unwrap();
        let rhs = phi.inner(&p.adjoint().apply(&psi)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn supercommutator_graded_antisymmetry(i in 0usize..1000, j in 0usize..1000) {
        let (_, a) = &pool()[i % pool().len()];
        let (_, b) = &pool()[j % pool().len()];
        let ab = a.supercommutator(b).unwrap();
        let ba = b.supercommutator(a).unwrap().scaled(&-sign(a, b));
        prop_assert_eq!(ab.matrix, ba.matrix);
    }

    #[test]
    fn supercommutator_jacobi(i in 0usize..1000, j in 0usize..1000, k in 0usize..1000) {
        let p = pool();
        let (_, a) = &p[i % p.len()];
        let (_, b) = &p[j % p.len()];
        let (_, c) = &p[k % p.len()];
        let lhs = a.supercommutator(&b.supercommutator(c).unwrap()).unwrap();
        let first = a.supercommutator(b).unwrap().supercommutator(c).unwrap();
        let second = b.supercommutator(&a.supercommutator(c).unwrap()).unwrap().scaled(&sign(a, b));
        prop_assert!(lhs.minus(&first.plus(&second).unwrap()).unwrap().is_zero());
    }
}
