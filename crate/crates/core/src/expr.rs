//! Operator expressions over zoo names.
//!
//! `#` inside an operator name stands for a 1-based frame index and is
//! substituted by [`Expr::FrameSum`] or by per-frame checks.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::multivector::Picture;
use crate::operator::LinearOperator;
use crate::scalar::Scalar;
use crate::zoo::Zoo;

/// Gaussian rational coefficient `(re + i·im) / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coef {
    pub re: i64,
    pub im: i64,
    pub den: i64,
}

pub const I: Coef = Coef {
    re: 0,
    im: 1,
    den: 1,
};

impl Coef {
    pub const fn int(v: i64) -> Self {
        Coef {
            re: v,
            im: 0,
            den: 1,
        }
    }

    pub const fn frac(re: i64, den: i64) -> Self {
        Coef { re, im: 0, den }
    }

    pub const fn imag(im: i64) -> Self {
        Coef { re: 0, im, den: 1 }
    }

    pub fn to_scalar<S: Scalar>(self) -> S {
        let re = S::frac(self.re, self.den);
        let im = S::frac(self.im, self.den);
        re + S::i() * im
    }

    pub fn is_one(self) -> bool {
        self.re == self.den && self.im == 0
    }

    /// `i^k`.
    pub fn i_pow(k: i32) -> Self {
        match k.rem_euclid(4) {
            0 => Coef::int(1),
            1 => I,
            2 => Coef::int(-1),
            _ => Coef::imag(-1),
        }
    }
}

impl Neg for Coef {
    type Output = Coef;
    fn neg(self) -> Coef {
        Coef {
            re: -self.re,
            im: -self.im,
            den: self.den,
        }
    }
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = match (self.re, self.im) {
            (re, 0) => format!("{re}"),
            (0, 1) => "i".to_string(),
            (0, -1) => "-i".to_string(),
            (0, im) => format!("{im}i"),
            (re, im) if im < 0 => format!("({re}{im}i)"),
            (re, im) => format!("({re}+{im}i)"),
        };
        if self.den == 1 {
            f.write_str(&body)
        } else {
            write!(f, "{body}/{}", self.den)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Op(String),
    /// Zero operator; takes the picture of its context.
    Zero,
    Scale(Coef, Box<Expr>),
    Sum(Vec<Expr>),
    /// `a ∘ b`
    Compose(Box<Expr>, Box<Expr>),
    /// Supercommutator.
    Bracket(Box<Expr>, Box<Expr>),
    Adjoint(Box<Expr>),
    /// `P^c`
    Conj(Box<Expr>),
    /// `♭∘P∘♯` of a Clifford operator.
    Transport(Box<Expr>),
    /// `Σ_A body[# := A]`
    FrameSum(Box<Expr>),
}

pub fn op(name: &str) -> Expr {
    Expr::Op(name.to_string())
}

pub fn zero() -> Expr {
    Expr::Zero
}

pub fn br(a: Expr, b: Expr) -> Expr {
    Expr::Bracket(Box::new(a), Box::new(b))
}

pub fn compose(a: Expr, b: Expr) -> Expr {
    Expr::Compose(Box::new(a), Box::new(b))
}

pub fn frame_sum(body: Expr) -> Expr {
    Expr::FrameSum(Box::new(body))
}

impl Expr {
    pub fn adj(self) -> Expr {
        Expr::Adjoint(Box::new(self))
    }

    pub fn c(self) -> Expr {
        Expr::Conj(Box::new(self))
    }

    pub fn tr(self) -> Expr {
        Expr::Transport(Box::new(self))
    }

    pub fn then(self, other: Expr) -> Expr {
        compose(self, other)
    }

    /// Replace `#` in operator names by the 1-based index `a`.
    pub fn substitute(&self, a: usize) -> Expr {
        let idx = a.to_string();
        self.map_ops(&|name| name.replace('#', &idx))
    }

    fn map_ops(&self, f: &dyn Fn(&str) -> String) -> Expr {
        let b = |e: &Expr| Box::new(e.map_ops(f));
        match self {
            Expr::Op(name) => Expr::Op(f(name)),
            Expr::Zero => Expr::Zero,
            Expr::Scale(c, e) => Expr::Scale(*c, b(e)),
            Expr::Sum(terms) => Expr::Sum(terms.iter().map(|t| t.map_ops(f)).collect()),
            Expr::Compose(x, y) => Expr::Compose(b(x), b(y)),
            Expr::Bracket(x, y) => Expr::Bracket(b(x), b(y)),
            Expr::Adjoint(e) => Expr::Adjoint(b(e)),
            Expr::Conj(e) => Expr::Conj(b(e)),
            Expr::Transport(e) => Expr::Transport(b(e)),
            // Inner sums keep their own placeholder.
            Expr::FrameSum(e) => Expr::FrameSum(e.clone()),
        }
    }

    /// Operator names referenced (placeholders unsubstituted).
    pub fn op_names(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_ops(&mut out);
        out
    }

    fn collect_ops(&self, out: &mut Vec<String>) {
        match self {
            Expr::Op(name) => out.push(name.clone()),
            Expr::Zero => {}
            Expr::Scale(_, e)
            | Expr::Adjoint(e)
            | Expr::Conj(e)
            | Expr::Transport(e)
            | Expr::FrameSum(e) => e.collect_ops(out),
            Expr::Sum(terms) => terms.iter().for_each(|t| t.collect_ops(out)),
            Expr::Compose(x, y) | Expr::Bracket(x, y) => {
                x.collect_ops(out);
                y.collect_ops(out);
            }
        }
    }

    /// Evaluate on a zoo. `hint` fixes the picture of `0`.
    pub fn eval<S: Scalar>(&self, zoo: &Zoo<S>, hint: Picture) -> Result<LinearOperator<S>> {
        let dim = zoo.dim();
        match self {
            Expr::Op(name) => {
                if name.contains('#') {
                    return Err(Error::UnknownOperator {
                        name: name.clone(),
                        model: zoo.name().to_string(),
                    });
                }
                zoo.get(name).cloned()
            }
            Expr::Zero => Ok(LinearOperator::zero(dim, hint)),
            Expr::Scale(c, e) => Ok(e.eval(zoo, hint)?.scaled(&c.to_scalar())),
            Expr::Sum(terms) => {
                let mut acc = LinearOperator::zero(dim, hint);
                for t in terms {
                    let v = t.eval(zoo, hint)?;
                    if acc.is_zero() && acc.picture != v.picture {
                        acc.picture = v.picture;
                    }
                    acc = acc.plus(&v)?;
                }
                Ok(acc)
            }
            Expr::Compose(x, y) => x.eval(zoo, hint)?.compose(&y.eval(zoo, hint)?),
            Expr::Bracket(x, y) => x.eval(zoo, hint)?.supercommutator(&y.eval(zoo, hint)?),
            Expr::Adjoint(e) => Ok(e.eval(zoo, hint)?.adjoint()),
            Expr::Conj(e) => Ok(zoo.geometry.space.conjugate(&e.eval(zoo, hint)?)),
            Expr::Transport(e) => e.eval(zoo, Picture::Clifford)?.transport(),
            Expr::FrameSum(body) => {
                let m = 2 * zoo.half_dim();
                let mut acc = LinearOperator::zero(dim, hint);
                for a in 1..=m {
                    let v = body.substitute(a).eval(zoo, hint)?;
                    if a == 1 {
                        acc.picture = v.picture;
                    }
                    acc = acc.plus(&v)?;
                }
                Ok(acc)
            }
        }
    }

    /// Display with conventional symbols (`τ_∂̄*` for `tau_delbar*`).
    pub fn pretty(&self) -> String {
        self.map_ops(&pretty_name).to_string()
    }

    fn needs_parens(&self) -> bool {
        matches!(self, Expr::Sum(_) | Expr::Scale(..) | Expr::Compose(..))
    }
}

fn pretty_token(token: &str) -> &str {
    match token {
        "mu" => "μ",
        "mubar" => "μ̄",
        "del" => "∂",
        "delbar" => "∂̄",
        "lambda" => "λ",
        "tau" => "τ",
        "rho" => "ρ",
        "Lambda" => "Λ",
        "theta" => "θ",
        "Jtheta" => "J*θ",
        "omega" => "ω",
        "Domega" => "Dω",
        "Dcomega" => "D^cω",
        "JdDomega" => "J_dDω",
        "JdDcomega" => "J_dD^cω",
        "Dsigmaomega" => "D_σω",
        "Dsigmacomega" => "D^c_σω",
        "dw" => "dω",
        "muw" => "μω",
        "delw" => "∂ω",
        "delbarw" => "∂̄ω",
        "mubarw" => "μ̄ω",
        "plus" => "+",
        "minus" => "-",
        "Hc" => "H_c",
        "Dsigma" => "D_σ",
        "sigma" => "σ",
        "sigmaJ" => "σJ",
        "sigmaflat" => "σ♭",
        "nabla" => "∇",
        "nablaf" => "∇♭",
        "nablaJ" => "∇J",
        "nablafJ" => "∇♭J",
        "Le" => "L·e",
        "Ja" => "J_a",
        "Jd" => "J_d",
        "Ja*" => "J_a*",
        "Jd*" => "J_d*",
        other => other,
    }
}

fn pretty_name(name: &str) -> String {
    name.split('_')
        .map(pretty_token)
        .collect::<Vec<_>>()
        .join("_")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |e: &Expr| {
            if e.needs_parens() {
                format!("({e})")
            } else {
                e.to_string()
            }
        };
        match self {
            Expr::Op(name) => f.write_str(name),
            Expr::Zero => f.write_str("0"),
            Expr::Scale(c, e) => {
                if *c == Coef::int(-1) {
                    write!(f, "-{}", wrap(e))
                } else {
                    write!(f, "{c}·{}", wrap(e))
                }
            }
            Expr::Sum(terms) => {
                for (k, t) in terms.iter().enumerate() {
                    let s = t.to_string();
                    if k == 0 {
                        f.write_str(&s)?;
                    } else if let Some(rest) = s.strip_prefix('-') {
                        write!(f, " - {rest}")?;
                    } else {
                        write!(f, " + {s}")?;
                    }
                }
                Ok(())
            }
            Expr::Compose(x, y) => write!(f, "{}∘{}", wrap(x), wrap(y)),
            Expr::Bracket(x, y) => write!(f, "[{x}, {y}]"),
            Expr::Adjoint(e) => write!(f, "{}*", wrap(e)),
            Expr::Conj(e) => write!(f, "{}^c", wrap(e)),
            Expr::Transport(e) => write!(f, "♭{}♯", wrap(e)),
            Expr::FrameSum(e) => write!(f, "Σ_A {}", e.to_string().replace('#', "A")),
        }
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        match self {
            Expr::Sum(mut terms) => {
                terms.push(rhs);
                Expr::Sum(terms)
            }
            lhs => Expr::Sum(vec![lhs, rhs]),
        }
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        self + (-rhs)
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        match self {
            Expr::Scale(c, e) if c == Coef::int(-1) => *e,
            Expr::Scale(c, e) => Expr::Scale(-c, e),
            e => Expr::Scale(Coef::int(-1), Box::new(e)),
        }
    }
}

impl Mul<Expr> for Coef {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Scale(self, Box::new(rhs))
    }
}

impl Mul<Coef> for i64 {
    type Output = Coef;
    fn mul(self, rhs: Coef) -> Coef {
        Coef {
            re: self * rhs.re,
            im: self * rhs.im,
            den: rhs.den,
        }
    }
}

impl Mul<Expr> for i64 {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Scale(Coef::int(self), Box::new(rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_readable() {
        let e = br(op("d"), op("L")) - op("lambda");
        assert_eq!(e.to_string(), "[d, L] - lambda");
        let e = I * (op("mubar").adj() + op("tau_mubar").adj());
        assert_eq!(e.to_string(), "i·(mubar* + tau_mubar*)");
        assert_eq!(op("D").c().tr().to_string(), "♭D^c♯");
        assert_eq!(Coef::frac(-1, 2).to_string(), "-1/2");
        assert_eq!(br(op("tau_del"), op("Lambda")).pretty(), "[τ_∂, Λ]");
        assert_eq!((2 * I * op("tau_delbar").adj()).pretty(), "2i·τ_∂̄*");
    }

    #[test]
    fn substitution_targets_placeholders() {
        let e = compose(op("E_#"), op("sigmaflat_#"));
        assert_eq!(e.substitute(3), compose(op("E_3"), op("sigmaflat_3")));
        assert_eq!(
            e.op_names(),
            vec!["E_#".to_string(), "sigmaflat_#".to_string()]
        );
    }

    #[test]
    fn i_powers() {
        assert_eq!(Coef::i_pow(-1), Coef::imag(-1));
        assert_eq!(Coef::i_pow(6), Coef::int(-1));
    }
}
