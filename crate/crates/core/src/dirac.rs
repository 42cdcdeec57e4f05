//! Clifford-side operators: the Dirac operator, `H_c`, `σ_A`, `D_σ` and the
//! left multiplications that appear next to them.

use crate::error::Result;
use crate::multivector::{Multivector, Picture};
use crate::operator::{left_mul, right_mul, LinearOperator};
use crate::scalar::Scalar;
use crate::zoo::Zoo;

/// `Σ_A L_{e_A} ∘ P_A` for a family of operators indexed by the frame.
pub fn frame_sum<S: Scalar>(name: &str, family: &[LinearOperator<S>]) -> Result<LinearOperator<S>> {
    let n = family[0].dim().trailing_zeros() as usize / 2;
    let mut acc = LinearOperator::zero(family[0].dim(), Picture::Clifford);
    for (a, p) in family.iter().enumerate() {
        acc = acc.plus(&left_mul(&Multivector::basis_vector(n, a)).compose(p)?)?;
    }
    Ok(acc.renamed(name))
}

/// `Σ_A X_A ∘ P_A` on forms.
fn exterior_frame_sum<S: Scalar>(
    name: &str,
    left: &[LinearOperator<S>],
    family: &[LinearOperator<S>],
) -> Result<LinearOperator<S>> {
    let mut acc = LinearOperator::zero(family[0].dim(), Picture::Exterior);
    for (x, p) in left.iter().zip(family) {
        acc = acc.plus(&x.compose(p)?)?;
    }
    Ok(acc.renamed(name))
}

pub(crate) fn build_clifford<S: Scalar>(zoo: &mut Zoo<S>) -> Result<()> {
    let g = zoo.geometry.clone();
    let space = g.space.clone();
    let n = g.half_dim();
    let m = 2 * n;
    let cl = Picture::Clifford;

    let ja = space.j_algebra(cl);
    let ja_inv = space.j_algebra_inv(cl);
    let jd = space.j_derivation(cl);
    zoo.insert("id_cl", space.identity(cl));
    zoo.insert("Ja", ja.clone());
    zoo.insert("Ja^-1", ja_inv.clone());
    zoo.insert("Jd", jd.clone());
    zoo.insert("grading_cl", space.grading(cl));
    for a in 0..m {
        zoo.insert(&format!("nabla_{}", a + 1), g.nabla[a].clone());
        zoo.insert(&format!("nablaf_{}", a + 1), g.nabla_forms[a].clone());
        zoo.insert(&format!("nablaJ_{}", a + 1), g.nabla_j(a, cl));
        zoo.insert(
            &format!("nablafJ_{}", a + 1),
            g.nabla_j(a, Picture::Exterior),
        );
        zoo.insert(
            &format!("Le_{}", a + 1),
            left_mul(&Multivector::basis_vector(n, a)),
        );
    }

    let dirac = frame_sum("D", &g.nabla)?;
    zoo.insert("D", dirac.clone());

    let omega = g.omega.clone();
    let l_omega = left_mul(&omega);
    let r_omega = right_mul(&omega);
    // 1/(2i) = -i/2
    let coeff = S::i().mul_ref(&S::frac(-1, 2));
    let hc = l_omega.plus(&r_omega)?.scaled(&coeff);
    zoo.insert("L_omega", l_omega);
    zoo.insert("R_omega", r_omega);
    zoo.insert("Hc", hc);

    // σ_A = [∇_A, J_d] + J_a⁻¹∘∇_{JA}∘J_a - ∇_{JA}
    let mut sigma = Vec::with_capacity(m);
    for a in 0..m {
        let nab = &g.nabla[a];
        let nab_j = g.nabla_j(a, cl);
        let first = nab.supercommutator(&jd)?;
        let second = ja_inv.compose(&nab_j)?.compose(&ja)?.minus(&nab_j)?;
        let s = first.plus(&second)?;
        zoo.insert(&format!("sigma_{}", a + 1), s.clone());
        sigma.push(s);
    }
    // σ_{Je_A}: Je_A = e_{A+n} for A < n, -e_{A-n} otherwise.
    for a in 0..m {
        let s = if a < n {
            sigma[a + n].clone()
        } else {
            sigma[a - n].scaled(&-S::one())
        };
        zoo.insert(&format!("sigmaJ_{}", a + 1), s);
    }
    let d_sigma = frame_sum("Dsigma", &sigma)?;
    zoo.insert("Dsigma", d_sigma.clone());

    // σ♭_A from the exterior formula -∇_A J_d* + J_a*⁻¹∘∇_{JA} J_a*.
    let ext = Picture::Exterior;
    let ja_s = space.j_algebra(ext);
    let ja_s_inv = space.j_algebra_inv(ext);
    let jd_s = space.j_derivation(ext);
    for a in 0..m {
        let nab = &g.nabla_forms[a];
        let nab_j = g.nabla_j(a, ext);
        let first = nab.supercommutator(&jd_s)?.scaled(&-S::one());
        let second = ja_s_inv.compose(&nab_j)?.compose(&ja_s)?.minus(&nab_j)?;
        zoo.insert(&format!("sigmaflat_{}", a + 1), first.plus(&second)?);
    }

    let flat: Vec<LinearOperator<S>> = sigma
        .iter()
        .map(LinearOperator::transport)
        .collect::<Result<_>>()?;
    let wedges: Vec<LinearOperator<S>> = (0..m)
        .map(|a| zoo.get(&format!("E_{}", a + 1)).cloned())
        .collect::<Result<_>>()?;
    let interiors: Vec<LinearOperator<S>> = (0..m)
        .map(|a| zoo.get(&format!("I_{}", a + 1)).cloned())
        .collect::<Result<_>>()?;
    zoo.insert(
        "Dsigma_ext",
        exterior_frame_sum("Dsigma_ext", &wedges, &flat)?,
    );
    zoo.insert(
        "Dsigma_int",
        exterior_frame_sum("Dsigma_int", &interiors, &flat)?,
    );

    let d_c = space.conjugate(&dirac);
    let d_sigma_c = space.conjugate(&d_sigma);
    let d_omega_cl = dirac.apply(&omega);
    let dc_omega = d_c.apply(&omega);
    let ds_omega = d_sigma.apply(&omega);
    let dsc_omega = d_sigma_c.apply(&omega);
    zoo.insert("L_Domega", left_mul(&d_omega_cl));
    zoo.insert("L_Dcomega", left_mul(&dc_omega));
    zoo.insert("L_JdDomega", left_mul(&d_omega_cl.j_derivation(cl)));
    zoo.insert("L_JdDcomega", left_mul(&dc_omega.j_derivation(cl)));
    zoo.insert("L_Dsigmaomega", left_mul(&ds_omega));
    zoo.insert("L_Dsigmacomega", left_mul(&dsc_omega));
    zoo.insert("L_Jtheta", left_mul(&g.j_lee().sharp()));
    zoo.insert_form("Domega", d_omega_cl);
    zoo.insert_form("Dcomega", dc_omega);
    zoo.insert_form("Dsigmaomega", ds_omega);
    zoo.insert_form("Dsigmacomega", dsc_omega);

    for name in ["dw", "muw", "delw", "delbarw", "mubarw"] {
        let xi = zoo.form(name)?.sharp();
        zoo.insert(&format!("L_{name}"), left_mul(&xi));
    }
    Ok(())
}
