//! Graded linear operators on the `4^n`-dimensional coefficient space, the
//! supercommutator, adjoints, conjugation by `J_a`, and bidegree decomposition.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bigrading::ComplexFrame;
use crate::blade::Blade;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::multivector::{Multivector, Picture};
use crate::scalar::Scalar;

/// ℤ₂-parity of an operator, measured from its matrix. The zero operator
/// reports [`Parity::Even`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    fn sign_exponent(self) -> Option<u32> {
        match self {
            Parity::Even => Some(0),
            Parity::Odd => Some(1),
            Parity::Mixed => None,
        }
    }
}

/// Per-dimension data shared by every operator of one half-dimension `n`:
/// the `J` extensions in both pictures and the complex frame.
#[derive(Debug, Clone)]
pub struct Space<S> {
    n: usize,
    frame: ComplexFrame<S>,
    j_algebra: [Matrix<S>; 2],
    j_algebra_inv: [Matrix<S>; 2],
    j_derivation: [Matrix<S>; 2],
    grading: Matrix<S>,
}

fn slot(picture: Picture) -> usize {
    match picture {
        Picture::Exterior => 0,
        Picture::Clifford => 1,
    }
}

impl<S: Scalar> Space<S> {
    pub fn new(n: usize) -> Self {
        let dim = 1usize << (2 * n);
        let build = |f: &dyn Fn(&Multivector<S>) -> Multivector<S>| -> Matrix<S> {
            let cols: Vec<Vec<S>> = (0..dim)
                .map(|b| f(&Multivector::blade(n, Blade(b as u32), S::one())).into_coeffs())
                .collect();
            Matrix::from_columns(&cols)
        };
        let ja = |p: Picture| build(&|v: &Multivector<S>| v.j_algebra(p));
        let jd = |p: Picture| build(&|v: &Multivector<S>| v.j_derivation(p));
        let j_algebra = [ja(Picture::Exterior), ja(Picture::Clifford)];
        // J_a^4 = 1, so the inverse is the cube.
        let j_algebra_inv = [
            j_algebra[0].matmul(&j_algebra[0]).matmul(&j_algebra[0]),
            j_algebra[1].matmul(&j_algebra[1]).matmul(&j_algebra[1]),
        ];
        let grading = Matrix::diagonal(
            (0..dim)
                .map(|b| {
                    if Blade(b as u32).grade().is_multiple_of(2) {
                        S::one()
                    } else {
                        -S::one()
                    }
                })
                .collect(),
        );
        Space {
            n,
            frame: ComplexFrame::new(n),
            j_algebra,
            j_algebra_inv,
            j_derivation: [jd(Picture::Exterior), jd(Picture::Clifford)],
            grading,
        }
    }

    pub fn half_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << (2 * self.n)
    }

    pub fn frame(&self) -> &ComplexFrame<S> {
        &self.frame
    }

    /// `J_a` (Clifford) or `J_a*` (exterior) as an operator.
    pub fn j_algebra(&self, picture: Picture) -> LinearOperator<S> {
        let name = match picture {
            Picture::Exterior => "Ja*",
            Picture::Clifford => "Ja",
        };
        LinearOperator::new(name, self.j_algebra[slot(picture)].clone(), picture)
    }

    pub fn j_algebra_inv(&self, picture: Picture) -> LinearOperator<S> {
        let name = match picture {
            Picture::Exterior => "Ja*^-1",
            Picture::Clifford => "Ja^-1",
        };
        LinearOperator::new(name, self.j_algebra_inv[slot(picture)].clone(), picture)
    }

    /// `J_d` (Clifford) or `J_d*` (exterior).
    pub fn j_derivation(&self, picture: Picture) -> LinearOperator<S> {
        let name = match picture {
            Picture::Exterior => "Jd*",
            Picture::Clifford => "Jd",
        };
        LinearOperator::new(name, self.j_derivation[slot(picture)].clone(), picture)
    }

    /// `(-1)^k` on degree `k`.
    pub fn grading(&self, picture: Picture) -> LinearOperator<S> {
        LinearOperator::new("Z", self.grading.clone(), picture)
    }

    pub fn identity(&self, picture: Picture) -> LinearOperator<S> {
        LinearOperator::new("id", Matrix::identity(self.dim()), picture)
    }

    /// Projection onto degree `k`.
    pub fn degree_projector(&self, k: u32, picture: Picture) -> LinearOperator<S> {
        let entries = (0..self.dim())
            .map(|b| {
                if Blade(b as u32).grade() == k {
                    S::one()
                } else {
                    S::zero()
                }
            })
            .collect();
        LinearOperator::new(format!("Pi{k}"), Matrix::diagonal(entries), picture)
    }

    /// Components of `op` of pure bidegree, keyed by `(r,s)`; zero components
    /// are omitted. Computed in the complex coframe, where every basis element
    /// has a definite bidegree.
    pub fn bidegree_decompose(
        &self,
        op: &LinearOperator<S>,
    ) -> BTreeMap<(i32, i32), LinearOperator<S>> {
        let in_complex = self
            .frame
            .to_complex()
            .matmul(&op.matrix)
            .matmul(self.frame.to_real());
        let dim = self.dim();
        let mut parts: BTreeMap<(i32, i32), Matrix<S>> = BTreeMap::new();
        for row in 0..dim {
            let (pr, qr) = self.frame.bidegree_of(row);
            for col in 0..dim {
                let v = in_complex.get(row, col);
                if v.is_zero() {
                    continue;
                }
                let (pc, qc) = self.frame.bidegree_of(col);
                parts
                    .entry((pr - pc, qr - qc))
                    .or_insert_with(|| Matrix::zeros(dim))
                    .set(row, col, v.clone());
            }
        }
        parts
            .into_iter()
            .map(|(bideg, m)| {
                let real = self
                    .frame
                    .to_real()
                    .matmul(&m)
                    .matmul(self.frame.to_complex());
                let name = format!("{}_({},{})", op.name, bideg.0, bideg.1);
                (
                    bideg,
                    LinearOperator::new(name, real, op.picture).with_bidegree(bideg),
                )
            })
            .collect()
    }

    /// Bidegrees with a nonzero component (tolerance ignored in exact mode).
    pub fn measured_bidegrees(&self, op: &LinearOperator<S>, tol: f64) -> BTreeSet<(i32, i32)> {
        let in_complex = self
            .frame
            .to_complex()
            .matmul(&op.matrix)
            .matmul(self.frame.to_real());
        let dim = self.dim();
        let mut out = BTreeSet::new();
        for row in 0..dim {
            let (pr, qr) = self.frame.bidegree_of(row);
            for col in 0..dim {
                if !in_complex.get(row, col).is_negligible(tol) {
                    let (pc, qc) = self.frame.bidegree_of(col);
                    out.insert((pr - pc, qr - qc));
                }
            }
        }
        out
    }

    /// `P^c = J_a⁻¹ ∘ P ∘ J_a`, using `J_a` or `J_a*` according to the
    /// operator's picture.
    pub fn conjugate(&self, op: &LinearOperator<S>) -> LinearOperator<S> {
        let s = slot(op.picture);
        let m = self.j_algebra_inv[s]
            .matmul(&op.matrix)
            .matmul(&self.j_algebra[s]);
        LinearOperator::new(format!("({})^c", op.name), m, op.picture)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearOperator<S> {
    pub name: String,
    pub matrix: Matrix<S>,
    pub picture: Picture,
    pub declared_bidegree: Option<(i32, i32)>,
}

impl<S: Scalar> LinearOperator<S> {
    pub fn new(name: impl Into<String>, matrix: Matrix<S>, picture: Picture) -> Self {
        LinearOperator {
            name: name.into(),
            matrix,
            picture,
            declared_bidegree: None,
        }
    }

    pub fn zero(dim: usize, picture: Picture) -> Self {
        Self::new("0", Matrix::zeros(dim), picture)
    }

    /// Operator whose column for blade `b` is `f(e_b)`.
    pub fn from_fn(
        name: impl Into<String>,
        n: usize,
        picture: Picture,
        f: impl Fn(&Multivector<S>) -> Multivector<S>,
    ) -> Self {
        let dim = 1usize << (2 * n);
        let cols: Vec<Vec<S>> = (0..dim)
            .map(|b| f(&Multivector::blade(n, Blade(b as u32), S::one())).into_coeffs())
            .collect();
        Self::new(name, Matrix::from_columns(&cols), picture)
    }

    pub fn with_bidegree(mut self, bidegree: (i32, i32)) -> Self {
        self.declared_bidegree = Some(bidegree);
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn parity(&self) -> Parity {
        let dim = self.dim();
        let mut even = false;
        let mut odd = false;
        for row in 0..dim {
            for col in 0..dim {
                if !self.matrix.get(row, col).is_zero() {
                    if (Blade(row as u32).grade() + Blade(col as u32).grade()).is_multiple_of(2) {
                        even = true;
                    } else {
                        odd = true;
                    }
                }
            }
        }
        match (even, odd) {
            (_, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Mixed,
        }
    }

    /// Apply to a multivector.
    pub fn apply(&self, v: &Multivector<S>) -> Multivector<S> {
        let n = v.half_dim();
        Multivector::from_coeffs(n, self.matrix.apply(v.coeffs()))
    }

    fn same_picture(&self, other: &Self, context: &str) -> Result<()> {
        if self.picture != other.picture {
            return Err(Error::PictureMismatch {
                context: context.to_string(),
                left: self.picture.to_string(),
                right: other.picture.to_string(),
            });
        }
        Ok(())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.same_picture(other, "compose")?;
        Ok(Self::new(
            format!("{}∘{}", self.name, other.name),
            self.matrix.matmul(&other.matrix),
            self.picture,
        ))
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.same_picture(other, "sum")?;
        Ok(Self::new(
            format!("{} + {}", self.name, other.name),
            &self.matrix + &other.matrix,
            self.picture,
        ))
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.same_picture(other, "difference")?;
        Ok(Self::new(
            format!("{} - {}", self.name, other.name),
            &self.matrix - &other.matrix,
            self.picture,
        ))
    }

    pub fn scaled(&self, factor: &S) -> Self {
        Self::new(
            format!("({})·{}", factor.render(), self.name),
            self.matrix.scale(factor),
            self.picture,
        )
    }

    /// Conjugate transpose with respect to the sesquilinear blade pairing.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::new(
            format!("{}*", self.name),
            self.matrix.adjoint(),
            self.picture,
        );
        out.declared_bidegree = self.declared_bidegree.map(|(p, q)| (-p, -q));
        out
    }

    /// Plain transpose (the bilinear adjoint).
    pub fn transpose(&self) -> Self {
        Self::new(
            format!("{}^T", self.name),
            self.matrix.transpose(),
            self.picture,
        )
    }

    /// Clifford operator read on forms via `♭ ∘ P ∘ ♯`. The musical maps are
    /// the identity on blade coefficients, so only the picture tag changes.
    pub fn transport(&self) -> Result<Self> {
        if self.picture != Picture::Clifford {
            return Err(Error::PictureMismatch {
                context: "transport".into(),
                left: self.picture.to_string(),
                right: Picture::Clifford.to_string(),
            });
        }
        Ok(Self::new(
            format!("♭{}♯", self.name),
            self.matrix.clone(),
            Picture::Exterior,
        ))
    }

    /// Graded commutator `PQ - (-1)^{|P||Q|} QP`.
    pub fn supercommutator(&self, other: &Self) -> Result<Self> {
        self.same_picture(other, "supercommutator")?;
        let p = self
            .parity()
            .sign_exponent()
            .ok_or_else(|| Error::MixedParity {
                name: self.name.clone(),
            })?;
        let q = other
            .parity()
            .sign_exponent()
            .ok_or_else(|| Error::MixedParity {
                name: other.name.clone(),
            })?;
        let pq = self.matrix.matmul(&other.matrix);
        let qp = other.matrix.matmul(&self.matrix);
        let m = if p * q == 1 { &pq + &qp } else { &pq - &qp };
        Ok(Self::new(
            format!("[{}, {}]", self.name, other.name),
            m,
            self.picture,
        ))
    }

    /// Even and odd parts.
    pub fn split_parity(&self) -> (Self, Self) {
        let dim = self.dim();
        let mut even = Matrix::zeros(dim);
        let mut odd = Matrix::zeros(dim);
        for row in 0..dim {
            for col in 0..dim {
                let v = self.matrix.get(row, col);
                if v.is_zero() {
                    continue;
                }
                if (Blade(row as u32).grade() + Blade(col as u32).grade()).is_multiple_of(2) {
                    even.set(row, col, v.clone());
                } else {
                    odd.set(row, col, v.clone());
                }
            }
        }
        (
            Self::new(format!("{}_even", self.name), even, self.picture),
            Self::new(format!("{}_odd", self.name), odd, self.picture),
        )
    }
}

impl<S: Scalar> fmt::Display for LinearOperator<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}; {} nonzero]",
            self.name,
            self.picture,
            self.matrix.nonzero_count()
        )
    }
}

/// `E_φ`: exterior multiplication `ψ ↦ φ ∧ ψ`.
pub fn ext_mult<S: Scalar>(phi: &Multivector<S>) -> LinearOperator<S> {
    LinearOperator::from_fn(
        format!("E[{phi}]"),
        phi.half_dim(),
        Picture::Exterior,
        |b| phi.wedge(b).expect("same n"),
    )
}

/// `I_φ`: the adjoint of `E_φ`.
pub fn int_mult<S: Scalar>(phi: &Multivector<S>) -> LinearOperator<S> {
    ext_mult(phi).adjoint().renamed(format!("I[{phi}]"))
}

/// Complex-linear contraction `ψ ↦ v ⌟ ψ` by a vector (or form) `v`.
pub fn contraction<S: Scalar>(v: &Multivector<S>) -> LinearOperator<S> {
    LinearOperator::from_fn(format!("ι[{v}]"), v.half_dim(), Picture::Exterior, |b| {
        v.contract(b).expect("same n")
    })
}

/// `L_X`: left Clifford multiplication.
pub fn left_mul<S: Scalar>(x: &Multivector<S>) -> LinearOperator<S> {
    LinearOperator::from_fn(format!("L[{x}]"), x.half_dim(), Picture::Clifford, |b| {
        x.clifford_mul(b).expect("same n")
    })
}

/// `R_X`: right Clifford multiplication.
pub fn right_mul<S: Scalar>(x: &Multivector<S>) -> LinearOperator<S> {
    LinearOperator::from_fn(format!("R[{x}]"), x.half_dim(), Picture::Clifford, |b| {
        b.clifford_mul(x).expect("same n")
    })
}

/// Degree-0 derivation over the picture's product with prescribed values on
/// the generators.
pub fn derivation<S: Scalar>(
    name: impl Into<String>,
    images: &[Multivector<S>],
    picture: Picture,
) -> LinearOperator<S> {
    let n = images[0].half_dim();
    LinearOperator::from_fn(name, n, picture, |b| b.apply_derivation(images, picture))
}

/// Maximum derivation defect `|P(e_A·b) - P(e_A)·b - (-1)^{|P|} e_A·P(b)|`
/// over generators `e_A` and basis blades `b`, plus `|P(1)|`. A derivation is
/// determined by its values on generators, so this is a complete test.
pub fn derivation_defect<S: Scalar>(op: &LinearOperator<S>, n: usize, odd: bool) -> S {
    let mut worst = (0.0, S::zero());
    let mut record = |v: &Multivector<S>| {
        for c in v.coeffs() {
            let m = c.magnitude();
            if m > worst.0 {
                worst = (m, c.clone());
            }
        }
    };
    record(&op.apply(&Multivector::one(n)));
    for a in 0..2 * n {
        let e = Multivector::basis_vector(n, a);
        let pe = op.apply(&e);
        for b in 0..(1usize << (2 * n)) {
            let blade = Multivector::blade(n, Blade(b as u32), S::one());
            let lhs = op.apply(&e.product(&blade, op.picture).expect("same n"));
            let first = pe.product(&blade, op.picture).expect("same n");
            let second = e.product(&op.apply(&blade), op.picture).expect("same n");
            let second = if odd { -second } else { second };
            record(&(lhs - first - second));
        }
    }
    worst.1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;
    use num_traits::{One, Zero};

    type M = Multivector<Exact>;

    #[test]
    fn clifford_mult_by_vector_is_wedge_minus_contraction() {
        for n in 1..=2 {
            for a in 0..2 * n {
                let e = M::basis_vector(n, a);
                let lhs = left_mul(&e).transport().unwrap();
                let rhs = ext_mult(&e).minus(&contraction(&e)).unwrap();
                assert_eq!(lhs.matrix, rhs.matrix);
                // contraction by a real vector is I_θ^A
                assert_eq!(contraction(&e).matrix, int_mult(&e).matrix);
            }
        }
    }

    #[test]
    fn supercommutator_rules() {
        let space = Space::<Exact>::new(1);
        let id = space.identity(Picture::Exterior);
        let e = ext_mult(&M::basis_vector(1, 0));
        assert!(id.supercommutator(&e).unwrap().is_zero());
        // Odd with itself: [E, E] = 2E² = 0.
        assert!(e.supercommutator(&e).unwrap().is_zero());
        let mixed = e.plus(&id).unwrap();
        assert!(matches!(
            mixed.supercommutator(&e),
            Err(Error::MixedParity { .. })
        ));
        let (even, odd) = mixed.split_parity();
        assert_eq!(even.matrix, id.matrix);
        assert_eq!(odd.matrix, e.matrix);
    }

    #[test]
    fn graded_antisymmetry() {
        let n = 2;
        let a = ext_mult(&M::basis_vector(n, 0));
        let b = int_mult(&M::basis_vector(n, 2));
        let l = ext_mult(&M::fundamental_form(n));
        for (p, q) in [(&a, &b), (&a, &l), (&l, &b)] {
            let pq = p.supercommutator(q).unwrap();
            let qp = q.supercommutator(p).unwrap();
            let sign = if p.parity() == Parity::Odd && q.parity() == Parity::Odd {
                1
            } else {
                -1
            };
            let expected = qp.scaled(&Exact::from_int(sign));
            assert_eq!(pq.matrix, expected.matrix);
        }
    }

    #[test]
    fn adjoint_of_wedge_is_contraction() {
        let t1 = M::basis_vector(2, 0);
        let i = int_mult(&t1);
        assert_eq!(
            i.apply(&M::from_indices(2, &[0, 1], Exact::one())),
            M::basis_vector(2, 1)
        );
        assert_eq!(i.adjoint().adjoint(), i.clone().renamed("I[(1)·e1]**"));
    }

    #[test]
    fn conjugation_of_identity_and_lefschetz() {
        let space = Space::<Exact>::new(2);
        let id = space.identity(Picture::Exterior);
        assert_eq!(space.conjugate(&id).matrix, id.matrix);
        let l = ext_mult(&M::fundamental_form(2));
        assert_eq!(space.conjugate(&l).matrix, l.matrix);
    }

    #[test]
    fn lefschetz_bidegree() {
        let space = Space::<Exact>::new(2);
        let l = ext_mult(&M::fundamental_form(2));
        assert_eq!(space.measured_bidegrees(&l, 0.0), BTreeSet::from([(1, 1)]));
        assert_eq!(
            space.measured_bidegrees(&l.adjoint(), 0.0),
            BTreeSet::from([(-1, -1)])
        );
        let parts = space.bidegree_decompose(&l);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&(1, 1)].matrix, l.matrix);
    }

    #[test]
    fn derivation_defect_detects_derivations() {
        let space = Space::<Exact>::new(2);
        let jd = space.j_derivation(Picture::Clifford);
        assert!(derivation_defect(&jd, 2, false).is_zero());
        let ja = space.j_algebra(Picture::Clifford);
        assert!(!derivation_defect(&ja, 2, false).is_zero());
        let e = ext_mult(&M::basis_vector(2, 1));
        let iota = contraction(&M::basis_vector(2, 1));
        assert!(derivation_defect(&iota, 2, true).is_zero());
        assert!(!derivation_defect(&e, 2, true).is_zero());
    }
}
