//! Pointwise checks on forms and vectors (formulas that are not operator
//! equations): Koszul–Nijenhuis type formulas, 3-form type lemmas, local
//! expressions for `σ`, `τ₊`, `τ₊^c` and so on.

use serde::{Deserialize, Serialize};

use crate::blade::Blade;
use crate::error::Result;
use crate::multivector::{three_form_split, Multivector, Picture};
use crate::operator::{derivation_defect, ext_mult, LinearOperator};
use crate::scalar::Scalar;
use crate::zoo::{k_xi, Zoo};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormCheck {
    /// `♭J♯ = -J*` on 1-forms.
    FlatJSharp,
    /// `J_d ω = 0`, `J_a ω = ω` in both pictures.
    OmegaJ,
    /// `J_a ∇_A ω = -∇_A ω` in both pictures.
    JaNablaOmega,
    /// `d* = -⋆d⋆`.
    HodgeAdjoint,
    /// `2⟨(∇_X J)Y, Z⟩ = dω(X,Y,Z) - dω(X,JY,JZ) + 4⟨JX, N(Y,Z)⟩`.
    KoszulNijenhuis,
    /// `2⟨J⁻¹(∇_{JX} J)Y, Z⟩ = dω(JX,Y,JZ) + dω(JX,JY,Z) - 4⟨JX, N(Y,Z)⟩`.
    TwistedKoszulNijenhuis,
    /// `N(Y,Z) = -N(Z,Y)`, `N(JY,Z) = -J N(Y,Z)`.
    NijenhuisJ,
    /// `ψ(X,Y,Z) = ψ(JX,JY,Z) + ψ(JX,Y,JZ) + ψ(X,JY,JZ)` for `ψ` of type (2,1)+(1,2).
    ThreeFormPlus,
    /// Frame sum identity for type (2,1)+(1,2).
    ThreeFormSum,
    /// `ξ(JX,Y,Z) = ξ(X,JY,Z) = ξ(X,Y,JZ)` for `ξ` of type (3,0)+(0,3).
    ThreeFormMinus,
    /// `σ_X Y = Σ_B (dω⁺(X,Y,e_B) - dω⁺(X,JY,Je_B)) e_B`.
    SigmaOnVectors,
    /// `σ♭_X α = Σ_{B,C} (dω⁺(X,e_C,e_B) - dω⁺(X,Je_C,Je_B)) α(e_C) θ^B`.
    SigmaFlatOnOneForms,
    /// `σ_{JX} Y = J σ_X Y = -σ_X(JY)`.
    SigmaJRules,
    /// `Σ_A σ_{e_A} e_A = -2 (J*θ)♯`.
    SigmaTrace,
    /// `[Λ, E_ξ] = E_{Λξ} + K_ξ` for odd `ξ`, and the difference is a derivation.
    LambdaWedge,
    /// `τ₊ α = θ∧α + ½ Σ dω⁺(e_C,e_A,e_B) α(Je_C) θ^A∧θ^B` on 1-forms.
    TauPlusOnOneForms,
    /// `τ₊^c α = -J*θ∧α + ½ Σ dω⁺(Je_A,e_C,Je_B) α(e_C) θ^A∧θ^B` on 1-forms.
    TauPlusConjOnOneForms,
    /// `H = [L, Λ] = (k - n)` on k-forms, so `[Λ, L] = (n - k)`.
    HDiagonal,
    /// `θ = ω⌟dω` agrees with `-J* d* ω`.
    LeeCrossCheck,
    /// `τ(1) = θ`.
    TauOfOne,
    /// `D_σ ω = -J_d Dω + 3 D^c ω` and `D^c_σ ω = -J_d D^c ω - 3 Dω`.
    DsigmaOmega,
}

impl FormCheck {
    pub const ALL: [FormCheck; 21] = [
        FormCheck::FlatJSharp,
        FormCheck::OmegaJ,
        FormCheck::JaNablaOmega,
        FormCheck::HodgeAdjoint,
        FormCheck::KoszulNijenhuis,
        FormCheck::TwistedKoszulNijenhuis,
        FormCheck::NijenhuisJ,
        FormCheck::ThreeFormPlus,
        FormCheck::ThreeFormSum,
        FormCheck::ThreeFormMinus,
        FormCheck::SigmaOnVectors,
        FormCheck::SigmaFlatOnOneForms,
        FormCheck::SigmaJRules,
        FormCheck::SigmaTrace,
        FormCheck::LambdaWedge,
        FormCheck::TauPlusOnOneForms,
        FormCheck::TauPlusConjOnOneForms,
        FormCheck::HDiagonal,
        FormCheck::LeeCrossCheck,
        FormCheck::TauOfOne,
        FormCheck::DsigmaOmega,
    ];
}

/// Largest residual seen so far, by [`Scalar::magnitude`].
#[derive(Debug, Clone)]
pub struct Worst<S> {
    magnitude: f64,
    value: S,
}

impl<S: Scalar> Default for Worst<S> {
    fn default() -> Self {
        Worst {
            magnitude: 0.0,
            value: S::zero(),
        }
    }
}

impl<S: Scalar> Worst<S> {
    pub fn push(&mut self, v: &S) {
        let m = v.magnitude();
        if m > self.magnitude || (self.value.is_zero() && !v.is_zero()) {
            self.magnitude = m;
            self.value = v.clone();
        }
    }

    pub fn push_mv(&mut self, v: &Multivector<S>) {
        v.coeffs().iter().for_each(|c| self.push(c));
    }

    pub fn push_op(&mut self, op: &LinearOperator<S>) {
        self.push(&op.matrix.max_entry().1);
    }

    pub fn value(self) -> S {
        self.value
    }
}

#[derive(Debug, Clone)]
pub struct FormOutcome<S> {
    pub residual: S,
    /// False when every quantity involved vanishes on this model.
    pub exercised: bool,
}

fn vector<S: Scalar>(n: usize, a: usize) -> Multivector<S> {
    Multivector::basis_vector(n, a)
}

fn jv<S: Scalar>(v: &Multivector<S>) -> Multivector<S> {
    v.j_vector(Picture::Clifford)
}

fn eval3<S: Scalar>(
    psi: &Multivector<S>,
    x: &Multivector<S>,
    y: &Multivector<S>,
    z: &Multivector<S>,
) -> S {
    psi.evaluate(&[x.clone(), y.clone(), z.clone()])
}

fn inner<S: Scalar>(x: &Multivector<S>, y: &Multivector<S>) -> S {
    x.inner(y).expect("same n")
}

/// A fixed integer 3-form touching every bidegree, used where a lemma is about
/// arbitrary forms of a type.
pub fn probe_three_form<S: Scalar>(n: usize) -> Multivector<S> {
    let m = 2 * n;
    let mut out = Multivector::zero(n);
    let mut k = 1i64;
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                let v = (k * 7 + 3) % 5 - 2;
                if v != 0 {
                    out = out + Multivector::from_indices(n, &[a, b, c], S::from_int(v));
                }
                k += 1;
            }
        }
    }
    out
}

fn probe_one_form<S: Scalar>(n: usize) -> Multivector<S> {
    let mut out = Multivector::zero(n);
    for a in 0..2 * n {
        out.set_coeff(Blade::vector(a), S::from_int(a as i64 + 1));
    }
    out
}

pub fn run<S: Scalar>(check: FormCheck, zoo: &Zoo<S>) -> Result<FormOutcome<S>> {
    let g = &zoo.geometry;
    let n = g.half_dim();
    let m = 2 * n;
    let mut worst = Worst::default();
    let exercised = match check {
        FormCheck::FlatJSharp => {
            for a in 0..m {
                let e = vector::<S>(n, a);
                worst.push_mv(&(jv(&e).flat() + e.flat().j_vector(Picture::Exterior)));
            }
            true
        }
        FormCheck::OmegaJ => {
            let w = &g.omega;
            for pic in [Picture::Clifford, Picture::Exterior] {
                worst.push_mv(&w.j_derivation(pic));
                worst.push_mv(&(w.j_algebra(pic) - w.clone()));
            }
            true
        }
        FormCheck::JaNablaOmega => {
            let mut any = false;
            for a in 0..m {
                for (pic, nab) in [
                    (Picture::Clifford, &g.nabla[a]),
                    (Picture::Exterior, &g.nabla_forms[a]),
                ] {
                    let v = nab.apply(&g.omega);
                    any |= !v.is_zero();
                    worst.push_mv(&(v.j_algebra(pic) + v));
                }
            }
            any
        }
        FormCheck::HodgeAdjoint => {
            let d_star = zoo.get("d*")?;
            for b in 0..zoo.dim() {
                let phi = Multivector::blade(n, Blade(b as u32), S::one());
                let rhs = -g.d.apply(&phi.hodge_star()).hodge_star();
                worst.push_mv(&(d_star.apply(&phi) - rhs));
            }
            !g.d.is_zero()
        }
        FormCheck::KoszulNijenhuis | FormCheck::TwistedKoszulNijenhuis => {
            let twisted = check == FormCheck::TwistedKoszulNijenhuis;
            let dw = &g.d_omega;
            let mut any = false;
            for a in 0..m {
                let x = vector::<S>(n, a);
                let jx = jv(&x);
                for b in 0..m {
                    let y = vector::<S>(n, b);
                    let jy = jv(&y);
                    let lhs_vec = if twisted {
                        // J⁻¹ = -J; ∇_{JX} by linearity in X.
                        let (idx, sign) = if a < n {
                            (a + n, S::one())
                        } else {
                            (a - n, -S::one())
                        };
                        -jv(&g.nabla_j_tensor(idx, &y).scale(&sign))
                    } else {
                        g.nabla_j_tensor(a, &y)
                    };
                    any |= !lhs_vec.is_zero();
                    for c in 0..m {
                        let z = vector::<S>(n, c);
                        let jz = jv(&z);
                        let lhs = S::from_int(2) * inner(&lhs_vec, &z);
                        let nij = S::from_int(4) * inner(&jx, &g.nijenhuis_vectors(&y, &z));
                        let rhs = if twisted {
                            eval3(dw, &jx, &y, &jz) + eval3(dw, &jx, &jy, &z) - nij
                        } else {
                            eval3(dw, &x, &y, &z) - eval3(dw, &x, &jy, &jz) + nij
                        };
                        worst.push(&(lhs - rhs));
                    }
                }
            }
            any
        }
        FormCheck::NijenhuisJ => {
            for a in 0..m {
                let y = vector::<S>(n, a);
                for b in 0..m {
                    let z = vector::<S>(n, b);
                    let nyz = g.nijenhuis_vectors(&y, &z);
                    worst.push_mv(&(nyz.clone() + g.nijenhuis_vectors(&z, &y)));
                    worst.push_mv(&(g.nijenhuis_vectors(&jv(&y), &z) + jv(&nyz)));
                }
            }
            !g.is_integrable()
        }
        FormCheck::ThreeFormPlus | FormCheck::ThreeFormSum | FormCheck::ThreeFormMinus => {
            let (probe_plus, probe_minus) = three_form_split(&probe_three_form::<S>(n))?;
            let forms = if check == FormCheck::ThreeFormMinus {
                [g.d_omega_minus.clone(), probe_minus]
            } else {
                [g.d_omega_plus.clone(), probe_plus]
            };
            for psi in &forms {
                match check {
                    FormCheck::ThreeFormPlus => three_form_plus(psi, n, &mut worst),
                    FormCheck::ThreeFormSum => three_form_sum(psi, n, &mut worst),
                    _ => three_form_minus(psi, n, &mut worst),
                }
            }
            forms.iter().any(|f| !f.is_zero())
        }
        FormCheck::SigmaOnVectors => {
            let dwp = &g.d_omega_plus;
            let mut any = false;
            for a in 0..m {
                let sigma = zoo.get(&format!("sigma_{}", a + 1))?;
                any |= !sigma.is_zero();
                let x = vector::<S>(n, a);
                for b in 0..m {
                    let y = vector::<S>(n, b);
                    let mut rhs = Multivector::zero(n);
                    for c in 0..m {
                        let e = vector::<S>(n, c);
                        let coeff = eval3(dwp, &x, &y, &e) - eval3(dwp, &x, &jv(&y), &jv(&e));
                        rhs = rhs + e.scale(&coeff);
                    }
                    worst.push_mv(&(sigma.apply(&y) - rhs));
                }
            }
            any
        }
        FormCheck::SigmaFlatOnOneForms => {
            let dwp = &g.d_omega_plus;
            let mut any = false;
            for a in 0..m {
                let flat = zoo.get(&format!("sigmaflat_{}", a + 1))?;
                any |= !flat.is_zero();
                let x = vector::<S>(n, a);
                for k in 0..=2 {
                    let alpha: Multivector<S> = if k < 2 {
                        Multivector::basis_vector(n, k * (m - 1))
                    } else {
                        probe_one_form(n)
                    };
                    let mut rhs = Multivector::zero(n);
                    for b in 0..m {
                        let eb = vector::<S>(n, b);
                        for c in 0..m {
                            let ec = vector::<S>(n, c);
                            let alpha_c = alpha.coeff(Blade::vector(c));
                            if alpha_c.is_zero() {
                                continue;
                            }
                            let coeff =
                                eval3(dwp, &x, &ec, &eb) - eval3(dwp, &x, &jv(&ec), &jv(&eb));
                            rhs = rhs + eb.flat().scale(&coeff.mul_ref(alpha_c));
                        }
                    }
                    worst.push_mv(&(flat.apply(&alpha) - rhs));
                }
            }
            any
        }
        FormCheck::SigmaJRules => {
            let mut any = false;
            for a in 0..m {
                let sigma = zoo.get(&format!("sigma_{}", a + 1))?;
                let sigma_j = zoo.get(&format!("sigmaJ_{}", a + 1))?;
                any |= !sigma.is_zero();
                for b in 0..m {
                    let y = vector::<S>(n, b);
                    let base = sigma.apply(&y);
                    worst.push_mv(&(sigma_j.apply(&y) - jv(&base)));
                    worst.push_mv(&(jv(&base) + sigma.apply(&jv(&y))));
                }
            }
            any
        }
        FormCheck::SigmaTrace => {
            let mut total = Multivector::zero(n);
            for a in 0..m {
                total = total + zoo.get(&format!("sigma_{}", a + 1))?.apply(&vector(n, a));
            }
            let target = g.j_lee().sharp().scale(&S::from_int(-2));
            worst.push_mv(&(total.clone() - target.clone()));
            !total.is_zero() || !target.is_zero()
        }
        FormCheck::LambdaWedge => {
            let lambda = zoo.get("Lambda")?;
            let mut forms = vec![
                g.d_omega.clone(),
                g.d_omega_plus.clone(),
                zoo.form("muw")?.clone(),
                zoo.form("delw")?.clone(),
                g.lee.clone(),
                probe_three_form(n),
                probe_one_form(n),
            ];
            forms.retain(|f| !f.is_zero());
            for xi in &forms {
                let lhs = lambda.supercommutator(&ext_mult(xi))?;
                let e_lxi = ext_mult(&lambda.apply(xi));
                let diff = lhs.minus(&e_lxi)?;
                worst.push_op(&diff.minus(&k_xi(xi))?);
                worst.push(&derivation_defect(&diff, n, true));
            }
            true
        }
        FormCheck::TauPlusOnOneForms | FormCheck::TauPlusConjOnOneForms => {
            let conj = check == FormCheck::TauPlusConjOnOneForms;
            let tau_plus = zoo.get("tau_plus")?;
            let op = if conj {
                g.space.conjugate(tau_plus)
            } else {
                tau_plus.clone()
            };
            let dwp = &g.d_omega_plus;
            let theta = if conj { -g.j_lee() } else { g.lee.clone() };
            let half = S::frac(1, 2);
            for c in 0..=m {
                let alpha: Multivector<S> = if c < m {
                    Multivector::basis_vector(n, c)
                } else {
                    probe_one_form(n)
                };
                let mut rhs = theta.wedge(&alpha)?;
                for a in 0..m {
                    let ea = vector::<S>(n, a);
                    for b in 0..m {
                        let eb = vector::<S>(n, b);
                        let mut coeff = S::zero();
                        for k in 0..m {
                            let ek = vector::<S>(n, k);
                            let term = if conj {
                                eval3(dwp, &jv(&ea), &ek, &jv(&eb))
                                    .mul_ref(alpha.coeff(Blade::vector(k)))
                            } else {
                                eval3(dwp, &ek, &ea, &eb).mul_ref(&alpha.evaluate(&[jv(&ek)]))
                            };
                            coeff.add_assign_ref(&term);
                        }
                        if !coeff.is_zero() {
                            let ab = ea.flat().wedge(&eb.flat())?;
                            rhs = rhs + ab.scale(&coeff.mul_ref(&half));
                        }
                    }
                }
                worst.push_mv(&(op.apply(&alpha) - rhs));
            }
            !tau_plus.is_zero()
        }
        FormCheck::HDiagonal => {
            let h = zoo.get("H")?;
            for b in 0..zoo.dim() {
                let blade = Blade(b as u32);
                let phi = Multivector::blade(n, blade, S::one());
                let k = blade.grade() as i64;
                worst.push_mv(&(h.apply(&phi) - phi.scale(&S::from_int(k - n as i64))));
            }
            true
        }
        FormCheck::LeeCrossCheck => {
            let theta = &g.lee;
            let direct = g.omega.contract(&g.d_omega)?;
            worst.push_mv(&(direct - theta.clone()));
            worst.push_mv(&(g.lee_cross_check() - theta.clone()));
            !theta.is_zero()
        }
        FormCheck::TauOfOne => {
            let v = zoo.get("tau")?.apply(&Multivector::one(n));
            worst.push_mv(&(v - g.lee.clone()));
            !g.lee.is_zero()
        }
        FormCheck::DsigmaOmega => {
            let d_w = zoo.form("Domega")?;
            let dc_w = zoo.form("Dcomega")?;
            let ds_w = zoo.form("Dsigmaomega")?;
            let dsc_w = zoo.form("Dsigmacomega")?;
            let three = S::from_int(3);
            let cl = Picture::Clifford;
            worst.push_mv(&(ds_w.clone() + d_w.j_derivation(cl) - dc_w.scale(&three)));
            worst.push_mv(&(dsc_w.clone() + dc_w.j_derivation(cl) + d_w.scale(&three)));
            !ds_w.is_zero() || !d_w.is_zero()
        }
    };
    Ok(FormOutcome {
        residual: worst.value(),
        exercised,
    })
}

fn three_form_plus<S: Scalar>(psi: &Multivector<S>, n: usize, worst: &mut Worst<S>) {
    let m = 2 * n;
    for a in 0..m {
        let x = vector::<S>(n, a);
        for b in 0..m {
            let y = vector::<S>(n, b);
            for c in 0..m {
                let z = vector::<S>(n, c);
                let (jx, jy, jz) = (jv(&x), jv(&y), jv(&z));
                let rhs =
                    eval3(psi, &jx, &jy, &z) + eval3(psi, &jx, &y, &jz) + eval3(psi, &x, &jy, &jz);
                worst.push(&(eval3(psi, &x, &y, &z) - rhs));
            }
        }
    }
}

fn three_form_sum<S: Scalar>(psi: &Multivector<S>, n: usize, worst: &mut Worst<S>) {
    let m = 2 * n;
    let half = S::frac(1, 2);
    for c in 0..m {
        let z = vector::<S>(n, c);
        let jz = jv(&z);
        let mut lhs = Multivector::zero(n);
        let mut rhs = Multivector::zero(n);
        for a in 0..m {
            let ea = vector::<S>(n, a);
            for b in 0..m {
                let eb = vector::<S>(n, b);
                let ab = ea.flat().wedge(&eb.flat()).expect("same n");
                let l = eval3(psi, &ea, &z, &eb) - eval3(psi, &ea, &jz, &jv(&eb));
                let r =
                    (eval3(psi, &ea, &z, &eb) + eval3(psi, &jv(&ea), &z, &jv(&eb))).mul_ref(&half);
                lhs = lhs + ab.scale(&l);
                rhs = rhs + ab.scale(&r);
            }
        }
        worst.push_mv(&(lhs - rhs));
    }
}

fn three_form_minus<S: Scalar>(xi: &Multivector<S>, n: usize, worst: &mut Worst<S>) {
    let m = 2 * n;
    for a in 0..m {
        let x = vector::<S>(n, a);
        for b in 0..m {
            let y = vector::<S>(n, b);
            for c in 0..m {
                let z = vector::<S>(n, c);
                let first = eval3(xi, &jv(&x), &y, &z);
                let second = eval3(xi, &x, &jv(&y), &z);
                let third = eval3(xi, &x, &y, &jv(&z));
                worst.push(&(first.clone() - second));
                worst.push(&(first - third));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::builtin;
    use crate::scalar::Exact;
    use std::sync::Arc;

    #[test]
    fn every_form_check_holds_on_pks4() {
        let geometry = builtin("pks4").unwrap().geometry::<Exact>().unwrap();
        let zoo = Zoo::build(Arc::new(geometry)).unwrap();
        for check in FormCheck::ALL {
            let out = run(check, &zoo).unwrap();
            assert!(
                num_traits::Zero::is_zero(&out.residual),
                "{check:?}: residual {:?}",
                out.residual
            );
        }
    }

    #[test]
    fn probe_form_has_every_type() {
        let probe = probe_three_form::<Exact>(3);
        let (plus, minus) = three_form_split(&probe).unwrap();
        assert!(!plus.is_zero());
        assert!(!minus.is_zero());
    }
}
