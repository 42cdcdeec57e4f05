use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use kahler_core::expr::{br, op, I};
use kahler_core::{
    builtin, builtin_names, catalog, run_suite, Coef, Exact, Expr, GuardStatus, LinearOperator,
    Multivector, Picture, Report, Scalar, Status, Suite, Zoo, DEFAULT_TOLERANCE,
};

fn zoo(name: &str) -> Zoo<Exact> {
    Zoo::build(Arc::new(
        builtin(name).unwrap().geometry::<Exact>().unwrap(),
    ))
    .unwrap()
}

fn reports() -> &'static Vec<Report> {
    static REPORTS: OnceLock<Vec<Report>> = OnceLock::new();
    REPORTS.get_or_init(|| {
        std::thread::scope(|s| {
            let handles: Vec<_> = builtin_names()
                .iter()
                .map(|&name| {
                    s.spawn(move || run_suite(&zoo(name), Suite::All, DEFAULT_TOLERANCE).unwrap())
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        })
    })
}

/// `[λ_x, L]` and `[λ_x*, Λ]` are zero operators on every model.
fn identically_zero(id: &str) -> bool {
    let Some(rest) = id.strip_prefix("bideg.lambda_") else {
        return false;
    };
    (rest.ends_with(".L") && !rest.contains("_adj")) || rest.ends_with("_adj.Lambda")
}

#[test]
fn every_entry_is_exercised_on_some_model() {
    let mut exercised = BTreeSet::new();
    for r in reports() {
        for e in &r.entries {
            if e.guard == GuardStatus::Exercised {
                exercised.insert(e.id.clone());
            }
        }
    }
    let never: Vec<_> = catalog()
        .into_iter()
        .map(|e| e.id)
        .filter(|id| !exercised.contains(id))
        .collect();
    let unexpected: Vec<_> = never.iter().filter(|id| !identically_zero(id)).collect();
    assert!(unexpected.is_empty(), "never exercised: {unexpected:?}");
    assert_eq!(never.len(), 8, "{never:?}");
}

#[test]
fn no_entry_fails_or_errors_on_any_model() {
    for r in reports() {
        for e in &r.entries {
            assert!(
                matches!(e.status, Status::Pass | Status::Skipped),
                "{}: {} {:?}",
                r.model,
                e.id,
                e.error
            );
        }
        let s = &r.summary;
        assert_eq!(s.total, s.exercised + s.vacuous + s.not_applicable);
        assert_eq!(s.not_applicable > 0, !zoo_is_almost_kahler(&r.model));
    }
}

fn zoo_is_almost_kahler(name: &str) -> bool {
    builtin(name)
        .unwrap()
        .geometry::<Exact>()
        .unwrap()
        .is_almost_kahler()
}

#[test]
fn key_operators_are_nonzero_somewhere() {
    let zoos: Vec<_> = builtin_names().iter().map(|n| zoo(n)).collect();
    for name in [
        "lambda_mu",
        "lambda_del",
        "tau_del",
        "rho_del",
        "mu",
        "Dsigma",
        "L_Domega",
    ] {
        assert!(
            zoos.iter().any(|z| !z.get(name).unwrap().is_zero()),
            "{name} vanishes on every model"
        );
    }
    assert!(zoos.iter().any(|z| !z.geometry.is_integrable()));
    assert!(zoos.iter().any(|z| !z.form("theta").unwrap().is_zero()));
}

fn differs(z: &Zoo<Exact>, lhs: Expr, rhs: Expr) -> bool {
    let l = lhs.eval(z, Picture::Exterior).unwrap();
    let r = rhs.eval(z, Picture::Exterior).unwrap();
    !l.minus(&r).unwrap().is_zero()
}

#[test]
fn adjoint_rows_need_the_column_exchange() {
    let z = zoo("nil6");
    let a = |n: &str| op(n).adj();
    assert!(!differs(
        &z,
        br(a("mu"), op("L")),
        I * (op("mubar") + op("tau_mubar"))
    ));
    assert!(!differs(&z, br(a("mu"), op("Lambda")), -a("lambda_mu")));
    // the same expressions in the other column
    assert!(differs(
        &z,
        br(a("mu"), op("Lambda")),
        I * (op("mubar") + op("tau_mubar"))
    ));
    assert!(differs(&z, br(a("mu"), op("L")), -a("lambda_mu")));
    assert!(differs(
        &z,
        br(a("del"), op("Lambda")),
        Coef::imag(-1) * (op("delbar") + op("tau_delbar"))
    ));
    assert!(differs(
        &z,
        br(a("tau_del"), op("Lambda")),
        Coef::imag(2) * op("tau_delbar")
    ));
}

#[test]
fn corrected_coefficients_and_conjugations() {
    let z = zoo("nil6");
    let a = |n: &str| op(n).adj();
    assert!(!differs(&z, br(a("lambda_mu"), op("L")), a("tau_mu")));
    assert!(differs(
        &z,
        br(a("lambda_mu"), op("L")),
        Coef::imag(-1) * a("tau_mu")
    ));
    assert!(!differs(
        &z,
        br(a("rho_delbar"), op("Lambda")),
        Coef::imag(-1) * a("lambda_delbar")
    ));
    assert!(differs(
        &z,
        br(a("rho_delbar"), op("Lambda")),
        Coef::imag(-1) * a("lambda_del")
    ));
    let h = z.get("H").unwrap();
    let lambda_l = br(op("Lambda"), op("L"))
        .eval(&z, Picture::Exterior)
        .unwrap();
    assert_eq!(lambda_l.matrix, h.scaled(&-Exact::from_int(1)).matrix);
}

/// `Σ_A f_A · ∇_{f_A}` over a rotated orthonormal frame equals `D`.
#[test]
fn dirac_operator_is_frame_independent() {
    for name in ["nil6", "gen6", "pks4"] {
        let z = zoo(name);
        let n = z.half_dim();
        let m = 2 * n;
        // rotation by (3/5, 4/5) in the planes (1,2), (3,4), ...
        let (c, s) = (Exact::frac(3, 5), Exact::frac(4, 5));
        let mut o = vec![vec![Exact::from_int(0); m]; m];
        for p in (0..m).step_by(2) {
            o[p][p] = c.clone();
            o[p + 1][p] = s.clone();
            o[p][p + 1] = -s.clone();
            o[p + 1][p + 1] = c.clone();
        }
        let mut total = LinearOperator::zero(z.dim(), Picture::Clifford);
        for a in 0..m {
            let mut f = Multivector::zero(n);
            let mut nabla = LinearOperator::zero(z.dim(), Picture::Clifford);
            for b in 0..m {
                f = f + Multivector::basis_vector(n, b).scale(&o[b][a]);
                let nb = z.get(&format!("nabla_{}", b + 1)).unwrap().scaled(&o[b][a]);
                nabla = nabla.plus(&nb).unwrap();
            }
            let term = kahler_core::operator::left_mul(&f).compose(&nabla).unwrap();
            total = total.plus(&term).unwrap();
        }
        assert_eq!(total.matrix, z.get("D").unwrap().matrix, "{name}");
    }
}
