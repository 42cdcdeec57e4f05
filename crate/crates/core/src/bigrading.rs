//! The `(p,q)` bigrading of complex forms.
//!
//! `A^{p,q}` is spanned by wedges of `p` forms of type `(1,0)` and `q` forms of
//! type `(0,1)`, where `φ^j = θ^j + iθ^{j+n}` is `(1,0)` and its conjugate is
//! `(0,1)`. On `A^{p,q}`, `J_a*` acts as `i^{p-q}`; that eigenvalue alone does
//! not separate bidegrees once `|p-q|` can differ by 4 (or `(3,0)` from
//! `(1,2)`), so projections go through the complex coframe instead.

use crate::blade::Blade;
use crate::matrix::Matrix;
use crate::multivector::Multivector;
use crate::scalar::Scalar;

/// Change of basis between real blades `θ^S` and complex blades built from
/// `φ¹…φⁿ, φ̄¹…φ̄ⁿ`.
#[derive(Debug, Clone)]
pub struct ComplexFrame<S> {
    n: usize,
    /// Column `M` holds the real-blade expansion of complex blade `M`.
    to_real: Matrix<S>,
    /// Column `S` holds the complex-blade expansion of real blade `S`.
    to_complex: Matrix<S>,
}

impl<S: Scalar> ComplexFrame<S> {
    pub fn new(n: usize) -> Self {
        let dim = 1usize << (2 * n);
        let i = S::i();
        let half = S::frac(1, 2);

        // Generator images, indexed like frame indices: slot j < n is φ^j,
        // slot n + j is φ̄^j.
        let real_images: Vec<Multivector<S>> = (0..2 * n)
            .map(|slot| {
                let j = slot % n;
                let sign = if slot < n { S::one() } else { -S::one() };
                Multivector::basis_vector(n, j)
                    + Multivector::basis_vector(n, j + n).scale(&i.mul_ref(&sign))
            })
            .collect();
        // θ^j = (φ^j + φ̄^j)/2, θ^{j+n} = -(i/2)(φ^j - φ̄^j), written in the
        // complex generator basis.
        let complex_images: Vec<Multivector<S>> = (0..2 * n)
            .map(|index| {
                let j = index % n;
                if index < n {
                    (Multivector::basis_vector(n, j) + Multivector::basis_vector(n, j + n))
                        .scale(&half)
                } else {
                    let c = -(i.mul_ref(&half));
                    (Multivector::basis_vector(n, j) - Multivector::basis_vector(n, j + n))
                        .scale(&c)
                }
            })
            .collect();

        let expand = |images: &[Multivector<S>]| -> Matrix<S> {
            let columns: Vec<Vec<S>> = (0..dim)
                .map(|b| {
                    let mut acc = Multivector::one(n);
                    for index in Blade(b as u32).indices() {
                        acc = acc.wedge(&images[index]).expect("same n");
                    }
                    acc.into_coeffs()
                })
                .collect();
            Matrix::from_columns(&columns)
        };

        ComplexFrame {
            n,
            to_real: expand(&real_images),
            to_complex: expand(&complex_images),
        }
    }

    pub fn half_dim(&self) -> usize {
        self.n
    }

    pub fn to_real(&self) -> &Matrix<S> {
        &self.to_real
    }

    pub fn to_complex(&self) -> &Matrix<S> {
        &self.to_complex
    }

    /// Bidegree of a complex blade (bitset over `φ¹…φⁿ, φ̄¹…φ̄ⁿ`).
    pub fn bidegree_of(&self, complex_blade: usize) -> (i32, i32) {
        let low = (1usize << self.n) - 1;
        (
            (complex_blade & low).count_ones() as i32,
            (complex_blade >> self.n).count_ones() as i32,
        )
    }

    /// `(p,q)` component of `v`; out-of-range bidegrees give zero.
    pub fn project(&self, v: &Multivector<S>, p: i32, q: i32) -> Multivector<S> {
        let mut c = self.to_complex.apply(v.coeffs());
        for (m, coeff) in c.iter_mut().enumerate() {
            if self.bidegree_of(m) != (p, q) {
                *coeff = S::zero();
            }
        }
        Multivector::from_coeffs(self.n, self.to_real.apply(&c))
    }

    /// `(1,0)` frame vector `ε_j = (e_j - i e_{j+n})/2`.
    pub fn epsilon(&self, j: usize) -> Multivector<S> {
        let half = S::frac(1, 2);
        (Multivector::basis_vector(self.n, j)
            - Multivector::basis_vector(self.n, j + self.n).scale(&S::i()))
        .scale(&half)
    }

    /// `(0,1)` frame vector `ε̄_j = (e_j + i e_{j+n})/2`.
    pub fn epsilon_bar(&self, j: usize) -> Multivector<S> {
        let half = S::frac(1, 2);
        (Multivector::basis_vector(self.n, j)
            + Multivector::basis_vector(self.n, j + self.n).scale(&S::i()))
        .scale(&half)
    }
}

impl<S: Scalar> Multivector<S> {
    /// `(p,q)` component. Builds a [`ComplexFrame`]; reuse one via
    /// [`ComplexFrame::project`] in loops.
    pub fn bidegree_project(&self, p: i32, q: i32) -> Self {
        ComplexFrame::new(self.half_dim()).project(self, p, q)
    }
}

/// Check that `m` is `1`-valued on the diagonal and zero elsewhere.
#[cfg(test)]
pub(crate) fn is_identity<S: Scalar>(m: &Matrix<S>) -> bool {
    (0..m.dim()).all(|i| {
        (0..m.dim()).all(|j| {
            if i == j {
                m.get(i, j).is_one()
            } else {
                m.get(i, j).is_zero()
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multivector::Picture;
    use crate::scalar::Exact;
    use num_traits::One;

    type M = Multivector<Exact>;

    #[test]
    fn change_of_basis_is_invertible() {
        for n in 1..=3 {
            let f = ComplexFrame::<Exact>::new(n);
            assert!(is_identity(&f.to_real().matmul(f.to_complex())));
            assert!(is_identity(&f.to_complex().matmul(f.to_real())));
        }
    }

    #[test]
    fn one_form_example() {
        // J*θ¹ = -θ², so J_a*(θ¹ - iθ²) = -i(θ¹ - iθ²) = i^{0-1}(θ¹ - iθ²).
        let v = M::basis_vector(1, 0) - M::basis_vector(1, 1).scale(&Exact::i());
        assert_eq!(v.j_algebra(Picture::Exterior), v.scale(&-Exact::i()));
        assert_eq!(v.bidegree_project(0, 1), v);
        assert!(v.bidegree_project(1, 0).is_zero());
    }

    #[test]
    fn omega_is_pure_one_one() {
        for n in 1..=3 {
            let w = M::fundamental_form(n);
            assert_eq!(w.bidegree_project(1, 1), w);
        }
        let one = M::one(2);
        assert_eq!(one.bidegree_project(0, 0), one);
        assert!(one.bidegree_project(5, -1).is_zero());
    }

    #[test]
    fn projections_resolve_identity_and_eigenvalues() {
        let n = 3;
        let f = ComplexFrame::<Exact>::new(n);
        // A dense test vector.
        let v = M::from_coeffs(
            n,
            (0..64)
                .map(|k| Exact::from_int((k * 7 % 11) as i64 - 5))
                .collect(),
        );
        let mut total = M::zero(n);
        for p in 0..=n as i32 {
            for q in 0..=n as i32 {
                let part = f.project(&v, p, q);
                // Idempotent and mutually annihilating.
                assert_eq!(f.project(&part, p, q), part);
                for (pp, qq) in [(p + 1, q), (p, q + 1), (q, p)] {
                    if (pp, qq) != (p, q) {
                        assert!(f.project(&part, pp, qq).is_zero());
                    }
                }
                // J_a* acts as i^{p-q}.
                let mut eig = Exact::one();
                for _ in 0..(p - q).rem_euclid(4) {
                    eig *= Exact::i();
                }
                assert_eq!(part.j_algebra(Picture::Exterior), part.scale(&eig));
                total = total + part;
            }
        }
        assert_eq!(total, v);
    }

    #[test]
    fn epsilon_frame_identities() {
        let f = ComplexFrame::<Exact>::new(2);
        for j in 0..2 {
            assert_eq!(f.epsilon(j) + f.epsilon_bar(j), M::basis_vector(2, j));
            assert_eq!(
                (f.epsilon(j) - f.epsilon_bar(j)).scale(&Exact::i()),
                M::basis_vector(2, j + 2)
            );
        }
    }
}
