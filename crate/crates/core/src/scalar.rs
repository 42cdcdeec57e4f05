//! Scalar field abstraction.
//!
//! Everything in the crate is generic over [`Scalar`], a complex number whose
//! real and imaginary parts live in some [`Real`] type. Two instantiations are
//! used in practice: Gaussian rationals (`Complex<BigRational>`, exact, the
//! default) and binary floating point (`Complex<f64>`).

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::{BigRational, Ratio};
use num_traits::{NumAssign, One, Signed, ToPrimitive, Zero};

/// Real coefficient ring of a [`Scalar`].
pub trait Real: Clone + Debug + PartialEq + NumAssign + Signed + Send + Sync + 'static {
    /// True when arithmetic never rounds.
    const EXACT: bool;

    fn from_ratio(r: &BigRational) -> Self;

    fn to_f64(&self) -> f64;

    /// Human-readable rendering (`3/2`, `-1`, `0.25`).
    fn render(&self) -> String;
}

impl Real for BigRational {
    const EXACT: bool = true;

    fn from_ratio(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Real for Ratio<i128> {
    const EXACT: bool = true;

    fn from_ratio(r: &BigRational) -> Self {
        let numer = r.numer().to_i128().expect("numerator exceeds i128");
        let denom = r.denom().to_i128().expect("denominator exceeds i128");
        Ratio::new(numer, denom)
    }

    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }

    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Real for f64 {
    const EXACT: bool = false;

    fn from_ratio(r: &BigRational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn render(&self) -> String {
        format!("{self}")
    }
}

impl Real for f32 {
    const EXACT: bool = false;

    fn from_ratio(r: &BigRational) -> Self {
        ToPrimitive::to_f32(r).unwrap_or(f32::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }

    fn render(&self) -> String {
        format!("{self}")
    }
}

/// Complex scalar used for all coefficients and matrix entries.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    type Real: Real;

    /// The imaginary unit.
    fn i() -> Self;

    fn from_parts(re: Self::Real, im: Self::Real) -> Self;

    fn re(&self) -> &Self::Real;

    fn im(&self) -> &Self::Real;

    fn conj(&self) -> Self;

    /// Product without consuming either operand.
    fn mul_ref(&self, other: &Self) -> Self;

    /// `self += other` without consuming `other`.
    fn add_assign_ref(&mut self, other: &Self);

    fn from_int(v: i64) -> Self {
        Self::from_parts(
            Self::Real::from_ratio(&BigRational::from_integer(BigInt::from(v))),
            Self::Real::zero(),
        )
    }

    fn from_ratio(r: &BigRational) -> Self {
        Self::from_parts(Self::Real::from_ratio(r), Self::Real::zero())
    }

    /// Gaussian rational `re + i·im`.
    fn from_gaussian(re: &BigRational, im: &BigRational) -> Self {
        Self::from_parts(Self::Real::from_ratio(re), Self::Real::from_ratio(im))
    }

    /// `numer/denom` as a real scalar.
    fn frac(numer: i64, denom: i64) -> Self {
        Self::from_ratio(&BigRational::new(numer.into(), denom.into()))
    }

    /// `max(|re|, |im|)`: the magnitude used for residual max-norms. It is a
    /// norm that stays exact in rational arithmetic.
    fn magnitude(&self) -> f64 {
        self.re().abs().to_f64().max(self.im().abs().to_f64())
    }

    /// Exact mode: exactly zero. Float mode: magnitude at most `tol`.
    fn is_negligible(&self, tol: f64) -> bool {
        if Self::Real::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= tol
        }
    }

    /// Compact rendering such as `2i`, `-1/2`, `3-i`.
    fn render(&self) -> String {
        let re = self.re();
        let im = self.im();
        let im_part = |v: &Self::Real| -> String {
            if v.is_one() {
                "i".to_string()
            } else if *v == -Self::Real::one() {
                "-i".to_string()
            } else {
                format!("{}i", v.render())
            }
        };
        match (re.is_zero(), im.is_zero()) {
            (true, true) => "0".to_string(),
            (false, true) => re.render(),
            (true, false) => im_part(im),
            (false, false) => {
                let imag = im_part(im);
                if imag.starts_with('-') {
                    format!("{}{}", re.render(), imag)
                } else {
                    format!("{}+{}", re.render(), imag)
                }
            }
        }
    }
}

impl<R: Real> Scalar for Complex<R> {
    type Real = R;

    fn i() -> Self {
        Complex::new(R::zero(), R::one())
    }

    fn from_parts(re: R, im: R) -> Self {
        Complex::new(re, im)
    }

    fn re(&self) -> &R {
        &self.re
    }

    fn im(&self) -> &R {
        &self.im
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        // Skip the four-product formula when either side is purely real or
        // purely imaginary, which is the overwhelmingly common case here.
        if self.im.is_zero() && other.im.is_zero() {
            return Complex::new(self.re.clone() * other.re.clone(), R::zero());
        }
        if self.re.is_zero() && other.re.is_zero() {
            return Complex::new(-(self.im.clone() * other.im.clone()), R::zero());
        }
        if self.im.is_zero() && other.re.is_zero() {
            return Complex::new(R::zero(), self.re.clone() * other.im.clone());
        }
        if self.re.is_zero() && other.im.is_zero() {
            return Complex::new(R::zero(), self.im.clone() * other.re.clone());
        }
        self * other
    }

    fn add_assign_ref(&mut self, other: &Self) {
        if !other.re.is_zero() {
            self.re += other.re.clone();
        }
        if !other.im.is_zero() {
            self.im += other.im.clone();
        }
    }
}

/// Exact Gaussian-rational scalar (the default mode).
pub type Exact = Complex<BigRational>;

/// Binary floating-point complex scalar.
pub type Float = Complex<f64>;

/// Which scalar instantiation a computation runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarMode {
    Exact,
    Float,
}

/// Parse an exact rational string such as `"3"`, `"-1/2"`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let numer: BigInt = numer.parse().ok()?;
    let denom: BigInt = denom.parse().ok()?;
    if denom.is_zero() {
        return None;
    }
    Some(BigRational::new(numer, denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_gaussian() {
        assert_eq!(Exact::i().render(), "i");
        assert_eq!((-Exact::i()).render(), "-i");
        assert_eq!((Exact::from_int(2) * Exact::i()).render(), "2i");
        assert_eq!(Exact::frac(-1, 2).render(), "-1/2");
        assert_eq!((Exact::from_int(3) - Exact::i()).render(), "3-i");
        assert_eq!(Exact::zero().render(), "0");
    }

    #[test]
    fn i_squares_to_minus_one() {
        assert_eq!(Exact::i().mul_ref(&Exact::i()), -Exact::one());
        assert_eq!(Float::i().mul_ref(&Float::i()), -Float::one());
    }

    #[test]
    fn mul_ref_agrees_with_full_product() {
        let vals = [
            Exact::from_int(2),
            Exact::i(),
            Exact::frac(1, 2) + Exact::i(),
            Exact::zero(),
            -Exact::i() * Exact::frac(3, 4),
        ];
        for a in &vals {
            for b in &vals {
                assert_eq!(a.mul_ref(b), a.clone() * b.clone());
            }
        }
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(
            parse_rational("-1/2"),
            Some(BigRational::new((-1).into(), 2.into()))
        );
        assert_eq!(
            parse_rational("4"),
            Some(BigRational::from_integer(4.into()))
        );
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn exact_mode_never_rounds() {
        let third = Exact::frac(1, 3);
        let sum = third.clone() + third.clone() + third;
        assert_eq!(sum, Exact::one());
        let drift = Float::frac(1, 10) * Float::from_int(3) - Float::frac(3, 10);
        assert!(drift.is_negligible(1e-15));
    }
}
