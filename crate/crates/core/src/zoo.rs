//! Named operators bound to one model: the exterior-side family
//! (`d`, `μ…μ̄`, `L`, `Λ`, `λ`, `τ`, `ρ`, ...) and, via [`crate::dirac`], the
//! Clifford-side family.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::model::ModelGeometry;
use crate::multivector::{Multivector, Picture};
use crate::operator::{ext_mult, int_mult, LinearOperator};
use crate::scalar::Scalar;

/// The four components of `d`, with their bidegrees.
pub const D_PARTS: [(&str, (i32, i32)); 4] = [
    ("mu", (2, -1)),
    ("del", (1, 0)),
    ("delbar", (0, 1)),
    ("mubar", (-1, 2)),
];

/// `r_ξ(φ) = Σ_A (e_A⌟ξ)∧(e_A⌟φ)` for a 3-form `ξ`.
pub fn r_xi<S: Scalar>(xi: &Multivector<S>) -> Result<LinearOperator<S>> {
    if !xi.is_zero() && xi.homogeneous_degree() != Some(3) {
        return Err(Error::NotThreeForm {
            degrees: xi.degrees(),
        });
    }
    let n = xi.half_dim();
    let parts: Vec<(Multivector<S>, Multivector<S>)> = (0..2 * n)
        .map(|a| {
            let e = Multivector::basis_vector(n, a);
            (e.contract(xi).expect("same n"), e)
        })
        .filter(|(c, _)| !c.is_zero())
        .collect();
    Ok(LinearOperator::from_fn(
        format!("r[{xi}]"),
        n,
        Picture::Exterior,
        |phi| {
            let mut out = Multivector::zero(n);
            for (c, e) in &parts {
                out = out + c.wedge(&e.contract(phi).expect("same n")).expect("same n");
            }
            out
        },
    ))
}

/// `K_ξ(ψ) = Σ_C (e_C⌟ξ)∧(Je_C⌟ψ)`.
pub fn k_xi<S: Scalar>(xi: &Multivector<S>) -> LinearOperator<S> {
    let n = xi.half_dim();
    let parts: Vec<(Multivector<S>, Multivector<S>)> = (0..2 * n)
        .map(|c| {
            let e = Multivector::basis_vector(n, c);
            (
                e.contract(xi).expect("same n"),
                e.j_vector(Picture::Clifford),
            )
        })
        .filter(|(c, _)| !c.is_zero())
        .collect();
    LinearOperator::from_fn(format!("K[{xi}]"), n, Picture::Exterior, |psi| {
        let mut out = Multivector::zero(n);
        for (c, je) in &parts {
            out = out + c.wedge(&je.contract(psi).expect("same n")).expect("same n");
        }
        out
    })
}

/// Operators of one model, addressable by name.
#[derive(Debug, Clone)]
pub struct Zoo<S> {
    pub geometry: Arc<ModelGeometry<S>>,
    ops: BTreeMap<String, LinearOperator<S>>,
    forms: BTreeMap<String, Multivector<S>>,
}

impl<S: Scalar> Zoo<S> {
    pub fn build(geometry: Arc<ModelGeometry<S>>) -> Result<Self> {
        let mut zoo = Zoo {
            geometry,
            ops: BTreeMap::new(),
            forms: BTreeMap::new(),
        };
        zoo.build_exterior()?;
        crate::dirac::build_clifford(&mut zoo)?;
        Ok(zoo)
    }

    pub fn name(&self) -> &str {
        self.geometry.name()
    }

    pub fn half_dim(&self) -> usize {
        self.geometry.half_dim()
    }

    pub fn dim(&self) -> usize {
        1 << (2 * self.half_dim())
    }

    pub fn get(&self, name: &str) -> Result<&LinearOperator<S>> {
        self.ops.get(name).ok_or_else(|| Error::UnknownOperator {
            name: name.to_string(),
            model: self.name().to_string(),
        })
    }

    pub fn contains(&self, name: &str) -> bool {
        self.ops.contains_key(name)
    }

    pub fn form(&self, name: &str) -> Result<&Multivector<S>> {
        self.forms.get(name).ok_or_else(|| Error::UnknownOperator {
            name: name.to_string(),
            model: self.name().to_string(),
        })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.ops.keys().map(String::as_str)
    }

    pub fn operators(&self) -> impl Iterator<Item = (&str, &LinearOperator<S>)> {
        self.ops.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub(crate) fn insert(&mut self, name: &str, op: LinearOperator<S>) {
        self.ops.insert(name.to_string(), op.renamed(name));
    }

    pub(crate) fn insert_form(&mut self, name: &str, form: Multivector<S>) {
        self.forms.insert(name.to_string(), form);
    }

    fn sum(&self, name: &str, parts: &[&str]) -> Result<LinearOperator<S>> {
        let mut acc = LinearOperator::zero(self.dim(), self.get(parts[0])?.picture);
        for p in parts {
            acc = acc.plus(self.get(p)?)?;
        }
        Ok(acc.renamed(name))
    }

    fn build_exterior(&mut self) -> Result<()> {
        let g = self.geometry.clone();
        let space = g.space.clone();
        let n = g.half_dim();
        let ext = Picture::Exterior;

        self.insert("id", space.identity(ext));
        self.insert("grading", space.grading(ext));
        self.insert("Ja*", space.j_algebra(ext));
        self.insert("Ja*^-1", space.j_algebra_inv(ext));
        self.insert("Jd*", space.j_derivation(ext));

        let d = g.d.clone();
        let parts = space.bidegree_decompose(&d);
        for bideg in parts.keys() {
            if !D_PARTS.iter().any(|(_, b)| b == bideg) {
                return Err(Error::Convention(format!(
                    "d has a component of bidegree {bideg:?}"
                )));
            }
        }
        for (name, bideg) in D_PARTS {
            let op = parts
                .get(&bideg)
                .cloned()
                .unwrap_or_else(|| LinearOperator::zero(self.dim(), ext))
                .with_bidegree(bideg);
            self.insert(name, op);
        }
        self.insert("d", d.clone().with_bidegree((1, 0)));
        self.insert("d*", d.adjoint());

        let omega = g.omega.clone();
        let l = ext_mult(&omega).with_bidegree((1, 1));
        self.insert("L", l.clone());
        self.insert("Lambda", l.adjoint());
        self.insert("H", l.supercommutator(self.get("Lambda")?)?);

        let lambda = self.get("Lambda")?.clone();
        for (part, bideg) in D_PARTS {
            let xi = self.get(part)?.apply(&omega);
            let form_bideg = (bideg.0 + 1, bideg.1 + 1);
            let lam = ext_mult(&xi).with_bidegree(form_bideg);
            let tau = lambda
                .supercommutator(&lam)?
                .with_bidegree((bideg.0, bideg.1));
            let r = r_xi(&xi)?.with_bidegree(bideg);
            let rho = r.scaled(&-S::one()).with_bidegree(bideg);
            self.insert(&format!("lambda_{part}"), lam);
            self.insert(&format!("tau_{part}"), tau);
            self.insert(&format!("r_{part}"), r);
            self.insert(&format!("rho_{part}"), rho);
            self.insert(&format!("E_{part}w"), ext_mult(&xi));
            self.insert_form(&format!("{part}w"), xi);
        }
        for family in ["lambda", "tau", "rho"] {
            let plus = self.sum(
                &format!("{family}_plus"),
                &[&format!("{family}_del"), &format!("{family}_delbar")],
            )?;
            let minus = self.sum(
                &format!("{family}_minus"),
                &[&format!("{family}_mu"), &format!("{family}_mubar")],
            )?;
            let total = plus.plus(&minus)?;
            self.insert(&format!("{family}_plus"), plus);
            self.insert(&format!("{family}_minus"), minus);
            self.insert(family, total);
        }
        self.insert("r_d", r_xi(&g.d_omega)?);
        self.insert_form("dw", g.d_omega.clone());
        self.insert_form("dw+", g.d_omega_plus.clone());
        self.insert_form("dw-", g.d_omega_minus.clone());
        self.insert_form("omega", omega.clone());

        let theta = g.lee.clone();
        let j_theta = g.j_lee();
        self.insert("E_theta", ext_mult(&theta));
        self.insert("E_Jtheta", ext_mult(&j_theta));
        self.insert("I_Jtheta", int_mult(&j_theta));
        self.insert("K_dw+", k_xi(&g.d_omega_plus));
        self.insert_form("theta", theta.clone());
        self.insert_form("Jtheta", j_theta);

        let tau_one = self.get("tau")?.apply(&Multivector::one(n));
        if tau_one != theta {
            return Err(Error::Convention(format!(
                "τ(1) = {tau_one} differs from the Lee form {theta}"
            )));
        }

        // Interior multiplications by the coframe, used by the D_σ split.
        for a in 0..2 * n {
            let e = Multivector::basis_vector(n, a);
            self.insert(&format!("E_{}", a + 1), ext_mult(&e));
            self.insert(&format!("I_{}", a + 1), int_mult(&e));
        }
        Ok(())
    }

    /// Zoo operators with a declared bidegree, in name order.
    pub fn bidegree_operators(&self) -> Vec<(&str, &LinearOperator<S>)> {
        self.operators()
            .filter(|(_, op)| op.declared_bidegree.is_some())
            .collect()
    }
}
