//! Multivectors over the complexified exterior / Clifford algebra of a
//! `2n`-dimensional oriented inner-product space with adapted almost complex
//! structure `J e_i = e_{i+n}`.
//!
//! One coefficient vector serves both pictures: which product applies is a
//! property of the operation, never of the value. `flat` and `sharp` are the
//! identity on coefficients and exist to make intent explicit.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::blade::{self, Blade};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Which algebra an operator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Picture {
    Exterior,
    Clifford,
}

impl fmt::Display for Picture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Picture::Exterior => write!(f, "exterior"),
            Picture::Clifford => write!(f, "clifford"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Multivector<S> {
    n: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> Multivector<S> {
    pub fn zero(n: usize) -> Self {
        Multivector {
            n,
            coeffs: vec![S::zero(); 1 << (2 * n)],
        }
    }

    pub fn scalar(n: usize, value: S) -> Self {
        let mut m = Self::zero(n);
        m.coeffs[0] = value;
        m
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, S::one())
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<S>) -> Self {
        assert_eq!(
            coeffs.len(),
            1 << (2 * n),
            "coefficient vector has wrong length"
        );
        Multivector { n, coeffs }
    }

    pub fn blade(n: usize, blade: Blade, coeff: S) -> Self {
        let mut m = Self::zero(n);
        m.coeffs[blade.index()] = coeff;
        m
    }

    /// Frame element `e_A` / coframe element `θ^A` (0-based `A`).
    pub fn basis_vector(n: usize, index: usize) -> Self {
        assert!(index < 2 * n, "frame index out of range");
        Self::blade(n, Blade::vector(index), S::one())
    }

    /// Ordered product of coframe indices, e.g. `[0, 2]` is `θ¹∧θ³`.
    pub fn from_indices(n: usize, indices: &[usize], coeff: S) -> Self {
        match Blade::from_indices(indices) {
            Some((b, sign)) => Self::blade(n, b, if sign < 0 { -coeff } else { coeff }),
            None => Self::zero(n),
        }
    }

    pub fn half_dim(&self) -> usize {
        self.n
    }

    /// `2n`.
    pub fn frame_dim(&self) -> usize {
        2 * self.n
    }

    /// `4^n`.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn coeff(&self, blade: Blade) -> &S {
        &self.coeffs[blade.index()]
    }

    pub fn set_coeff(&mut self, blade: Blade, value: S) {
        self.coeffs[blade.index()] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &S)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Blade(i as u32), c))
    }

    /// Degrees carrying a nonzero coefficient.
    pub fn degrees(&self) -> Vec<u32> {
        let mut degs: Vec<u32> = self.terms().map(|(b, _)| b.grade()).collect();
        degs.sort_unstable();
        degs.dedup();
        degs
    }

    /// `Some(k)` if every nonzero term has degree `k` (zero counts as any degree).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        match self.degrees().as_slice() {
            [] => Some(0),
            [k] => Some(*k),
            _ => None,
        }
    }

    pub fn grade_part(&self, k: u32) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if Blade(i as u32).grade() == k {
                    c.clone()
                } else {
                    S::zero()
                }
            })
            .collect();
        Multivector { n: self.n, coeffs }
    }

    pub fn scale(&self, factor: &S) -> Self {
        Multivector {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c.mul_ref(factor)).collect(),
        }
    }

    /// Complex conjugate of every coefficient.
    pub fn conj(&self) -> Self {
        Multivector {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            })
        } else {
            Ok(())
        }
    }

    fn bilinear(
        &self,
        other: &Self,
        rule: impl Fn(Blade, Blade) -> Option<(Blade, i32)>,
    ) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.n);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                if let Some((c, sign)) = rule(a, b) {
                    let term = ca.mul_ref(cb);
                    let slot = &mut out.coeffs[c.index()];
                    if sign > 0 {
                        slot.add_assign_ref(&term);
                    } else {
                        slot.add_assign_ref(&-term);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.bilinear(other, blade::wedge)
    }

    /// `self ⌟ other`: the transpose of `β ↦ self ∧ β` (complex-linear in `self`).
    pub fn contract(&self, other: &Self) -> Result<Self> {
        self.bilinear(other, blade::contract)
    }

    pub fn clifford_mul(&self, other: &Self) -> Result<Self> {
        self.bilinear(other, |a, b| Some(blade::clifford(a, b)))
    }

    /// Product selected by picture: `∧` on forms, `·` on the Clifford side.
    pub fn product(&self, other: &Self, picture: Picture) -> Result<Self> {
        match picture {
            Picture::Exterior => self.wedge(other),
            Picture::Clifford => self.clifford_mul(other),
        }
    }

    /// Sesquilinear pairing, conjugate-linear in the second slot; blades are
    /// orthonormal.
    pub fn inner(&self, other: &Self) -> Result<S> {
        self.check_dim(other)?;
        let mut acc = S::zero();
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            if !a.is_zero() && !b.is_zero() {
                acc.add_assign_ref(&a.mul_ref(&b.conj()));
            }
        }
        Ok(acc)
    }

    /// Clifford element to form.
    pub fn flat(&self) -> Self {
        self.clone()
    }

    /// Form to Clifford element.
    pub fn sharp(&self) -> Self {
        self.clone()
    }

    /// Image of a frame index under `J` (vectors) or `J*` (coframe).
    fn j_generator(n: usize, index: usize, picture: Picture) -> Self {
        // J e_i = e_{i+n}, J e_{i+n} = -e_i;  J*θ^i = -θ^{i+n}, J*θ^{i+n} = θ^i.
        let (target, sign) = if index < n {
            (index + n, 1)
        } else {
            (index - n, -1)
        };
        let sign = match picture {
            Picture::Clifford => sign,
            Picture::Exterior => -sign,
        };
        let coeff = if sign > 0 { S::one() } else { -S::one() };
        Self::blade(n, Blade::vector(target), coeff)
    }

    /// `J` (Clifford picture) or `J*` (exterior picture) applied to the degree-1
    /// part only; other degrees are dropped.
    pub fn j_vector(&self, picture: Picture) -> Self {
        let mut out = Self::zero(self.n);
        for i in 0..self.frame_dim() {
            let c = self.coeff(Blade::vector(i));
            if !c.is_zero() {
                out = out + Self::j_generator(self.n, i, picture).scale(c);
            }
        }
        out
    }

    /// Extension of `J` / `J*` as an algebra map.
    pub fn j_algebra(&self, picture: Picture) -> Self {
        let mut out = Self::zero(self.n);
        for (b, c) in self.terms() {
            let mut image = Self::one(self.n);
            for index in b.indices() {
                image = image
                    .product(&Self::j_generator(self.n, index, picture), picture)
                    .expect("same n");
            }
            out = out + image.scale(c);
        }
        out
    }

    /// Extension of `J` / `J*` as a derivation.
    pub fn j_derivation(&self, picture: Picture) -> Self {
        let n = self.n;
        let images: Vec<Self> = (0..2 * n)
            .map(|i| Self::j_generator(n, i, picture))
            .collect();
        self.apply_derivation(&images, picture)
    }

    /// Extend a map on generators as a degree-0 derivation over the picture's
    /// product and apply it.
    pub fn apply_derivation(&self, images: &[Self], picture: Picture) -> Self {
        let mut out = Self::zero(self.n);
        for (b, c) in self.terms() {
            let factors = b.indices();
            for (slot, &replaced) in factors.iter().enumerate() {
                let mut term = Self::one(self.n);
                for (k, &index) in factors.iter().enumerate() {
                    let factor = if k == slot {
                        images[replaced].clone()
                    } else {
                        Self::basis_vector(self.n, index)
                    };
                    term = term.product(&factor, picture).expect("same n");
                }
                out = out + term.scale(c);
            }
        }
        out
    }

    /// Evaluate a form on vectors with the determinant convention
    /// `(θ¹∧θ²)(e₁,e₂) = 1`; multilinear (no conjugation).
    pub fn evaluate(&self, vectors: &[Self]) -> S {
        let mut current = self.clone();
        for v in vectors {
            current = v.contract(&current).expect("same n");
        }
        current.coeff(Blade::SCALAR).clone()
    }

    /// Hodge star for the orthonormal blade basis and orientation `θ¹∧…∧θ^{2n}`:
    /// `α ∧ ⋆β = ⟨α, β⟩ vol` on real forms, extended complex-linearly.
    pub fn hodge_star(&self) -> Self {
        let full = Blade((1u32 << self.frame_dim()) - 1);
        let mut out = Self::zero(self.n);
        for (b, c) in self.terms() {
            let complement = Blade(full.0 & !b.0);
            let sign = blade::reorder_sign(b, complement);
            let v = if sign > 0 { c.clone() } else { -c.clone() };
            out.coeffs[complement.index()].add_assign_ref(&v);
        }
        out
    }

    /// Orientation form `θ¹∧…∧θ^{2n}`.
    pub fn volume(n: usize) -> Self {
        Self::blade(n, Blade((1u32 << (2 * n)) - 1), S::one())
    }

    /// Fundamental form `ω = Σ θ^i∧θ^{i+n}` (same coefficients as
    /// `Σ e_i·e_{i+n}` on the Clifford side).
    pub fn fundamental_form(n: usize) -> Self {
        let mut out = Self::zero(n);
        for i in 0..n {
            out = out + Self::from_indices(n, &[i, i + n], S::one());
        }
        out
    }
}

impl<S: Scalar> fmt::Display for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms()
            .map(|(b, c)| format!("({})·{}", c.render(), b))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl<S: Scalar> Add for Multivector<S> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            a.add_assign_ref(b);
        }
        self
    }
}

impl<S: Scalar> Sub for Multivector<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Scalar> Neg for Multivector<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Multivector {
            n: self.n,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

/// `ψ = ψ⁺ + ψ⁻` with `ψ⁺ = ψ^{2,1} + ψ^{1,2}` and `ψ⁻ = ψ^{3,0} + ψ^{0,3}`.
pub fn three_form_split<S: Scalar>(
    psi: &Multivector<S>,
) -> Result<(Multivector<S>, Multivector<S>)> {
    if psi.homogeneous_degree() != Some(3) && !psi.is_zero() {
        return Err(Error::NotThreeForm {
            degrees: psi.degrees(),
        });
    }
    let frame = crate::bigrading::ComplexFrame::<S>::new(psi.half_dim());
    let plus = frame.project(psi, 2, 1) + frame.project(psi, 1, 2);
    let minus = frame.project(psi, 3, 0) + frame.project(psi, 0, 3);
    Ok((plus, minus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;
    use num_traits::{One, Zero};

    type M = Multivector<Exact>;

    fn th(n: usize, idx: &[usize]) -> M {
        M::from_indices(n, idx, Exact::one())
    }

    #[test]
    fn wedge_examples() {
        let t1 = th(1, &[0]);
        let t2 = th(1, &[1]);
        assert_eq!(t1.wedge(&t2).unwrap(), th(1, &[0, 1]));
        assert!(t1.wedge(&t1).unwrap().is_zero());
        assert_eq!(t2.wedge(&t1).unwrap(), -th(1, &[0, 1]));
    }

    #[test]
    fn contract_examples() {
        let t1 = th(1, &[0]);
        let t2 = th(1, &[1]);
        assert_eq!(t1.contract(&th(1, &[0, 1])).unwrap(), t2);
        assert!(t2.contract(&t1).unwrap().is_zero());
        // Oracle: ω = θ¹∧θ³ + θ²∧θ⁴; only diagonal blade pairs survive, each giving 1.
        let w = M::fundamental_form(2);
        assert_eq!(w.contract(&w).unwrap(), M::scalar(2, Exact::from_int(2)));
    }

    #[test]
    fn clifford_examples() {
        let e1 = th(1, &[0]);
        let e2 = th(1, &[1]);
        assert_eq!(e1.clifford_mul(&e1).unwrap(), M::scalar(1, -Exact::one()));
        assert_eq!(e1.clifford_mul(&e2).unwrap(), th(1, &[0, 1]));
        let e12 = e1.clifford_mul(&e2).unwrap();
        assert_eq!(e1.clifford_mul(&e12).unwrap(), -e2);
    }

    #[test]
    fn inner_examples() {
        let t12 = th(1, &[0, 1]);
        assert_eq!(t12.inner(&t12).unwrap(), Exact::one());
        assert_eq!(th(1, &[0]).inner(&th(1, &[1])).unwrap(), Exact::zero());
        let it1 = th(1, &[0]).scale(&Exact::i());
        assert_eq!(it1.inner(&th(1, &[0])).unwrap(), Exact::i());
        assert_eq!(th(1, &[0]).inner(&it1).unwrap(), -Exact::i());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = th(1, &[0]);
        let b = th(2, &[0]);
        assert!(matches!(a.wedge(&b), Err(Error::DimensionMismatch { .. })));
        assert!(a.inner(&b).is_err());
    }

    #[test]
    fn flat_sharp_identity() {
        let psi = th(2, &[0, 3]) + th(2, &[1]).scale(&Exact::i());
        assert_eq!(psi.sharp().flat(), psi);
        assert_eq!(th(1, &[0]).sharp(), th(1, &[0]));
    }

    #[test]
    fn j_extensions_on_omega() {
        let w = M::fundamental_form(1);
        assert_eq!(w.j_algebra(Picture::Exterior), w);
        assert!(w.j_derivation(Picture::Exterior).is_zero());
        assert_eq!(w.j_algebra(Picture::Clifford), w);
        assert!(w.j_derivation(Picture::Clifford).is_zero());
        assert_eq!(M::one(2).j_algebra(Picture::Exterior), M::one(2));
    }

    #[test]
    fn j_vector_flat_sharp_is_minus_j_star() {
        for a in 0..4 {
            let v = th(2, &[a]);
            assert_eq!(
                v.j_vector(Picture::Clifford),
                -v.j_vector(Picture::Exterior)
            );
            assert_eq!(
                v.j_vector(Picture::Clifford).j_vector(Picture::Clifford),
                -v.clone()
            );
        }
    }

    #[test]
    fn evaluation_uses_determinant_convention() {
        let t12 = th(2, &[0, 1]);
        let e1 = th(2, &[0]);
        let e2 = th(2, &[1]);
        assert_eq!(t12.evaluate(&[e1.clone(), e2.clone()]), Exact::one());
        assert_eq!(t12.evaluate(&[e2, e1]), -Exact::one());
    }

    #[test]
    fn hodge_star_pairs_to_volume() {
        let n = 2;
        for b in 0..16u32 {
            let beta = M::blade(n, Blade(b), Exact::one());
            let star = beta.hodge_star();
            assert_eq!(beta.wedge(&star).unwrap(), M::volume(n));
        }
    }
}
