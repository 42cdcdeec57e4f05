//! Unimodular Lie algebras with an adapted almost Hermitian structure, and the
//! invariant geometry they carry: `d`, `∇`, `ω`, the Lee form and `N`.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::blade::Blade;
use crate::error::{Error, Result};
use crate::multivector::{three_form_split, Multivector, Picture};
use crate::operator::{LinearOperator, Space};
use crate::scalar::{parse_rational, Scalar};

/// Structure constants `c^C_{AB}` of `[e_A, e_B] = Σ c^C_{AB} e_C` in an
/// orthonormal frame with `J e_i = e_{i+n}`. Indices are 0-based internally.
#[derive(Debug, Clone, PartialEq)]
pub struct LieModel {
    name: String,
    n: usize,
    constants: Vec<BigRational>,
}

impl LieModel {
    pub fn abelian(name: impl Into<String>, n: usize) -> Self {
        let m = 2 * n;
        LieModel {
            name: name.into(),
            n,
            constants: vec![BigRational::zero(); m * m * m],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn half_dim(&self) -> usize {
        self.n
    }

    pub fn frame_dim(&self) -> usize {
        2 * self.n
    }

    fn slot(&self, a: usize, b: usize, c: usize) -> usize {
        let m = self.frame_dim();
        (c * m + a) * m + b
    }

    /// `c^C_{AB}`.
    pub fn constant(&self, a: usize, b: usize, c: usize) -> &BigRational {
        &self.constants[self.slot(a, b, c)]
    }

    /// Set `c^C_{AB} = v` and `c^C_{BA} = -v`.
    pub fn with_bracket(mut self, a: usize, b: usize, c: usize, v: BigRational) -> Self {
        self.set_bracket(a, b, c, v);
        self
    }

    pub fn set_bracket(&mut self, a: usize, b: usize, c: usize, v: BigRational) {
        let s = self.slot(b, a, c);
        self.constants[s] = -v.clone();
        let s = self.slot(a, b, c);
        self.constants[s] = v;
    }

    /// Set a single constant without completing it.
    pub fn set_raw(&mut self, a: usize, b: usize, c: usize, v: BigRational) {
        let s = self.slot(a, b, c);
        self.constants[s] = v;
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.iter().all(Zero::is_zero)
    }

    /// Bracket of two vectors given by real coefficient slices.
    pub fn bracket_vectors<S: Scalar>(&self, x: &[S], y: &[S]) -> Vec<S> {
        let m = self.frame_dim();
        let mut out = vec![S::zero(); m];
        for a in 0..m {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..m {
                if y[b].is_zero() {
                    continue;
                }
                let xy = x[a].mul_ref(&y[b]);
                for (c, o) in out.iter_mut().enumerate() {
                    let k = self.constant(a, b, c);
                    if !k.is_zero() {
                        o.add_assign_ref(&xy.mul_ref(&S::from_ratio(k)));
                    }
                }
            }
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let m = self.frame_dim();
        let c = |a: usize, b: usize, k: usize| self.constant(a, b, k);
        let mut antisymmetry = Vec::new();
        for a in 0..m {
            for b in a..m {
                for k in 0..m {
                    let sum = c(a, b, k) + c(b, a, k);
                    if !sum.is_zero() {
                        antisymmetry.push(Violation {
                            indices: vec![a + 1, b + 1, k + 1],
                            detail: format!(
                                "c^{k1}_{{{a1},{b1}}} = {} but c^{k1}_{{{b1},{a1}}} = {}",
                                c(a, b, k),
                                c(b, a, k),
                                k1 = k + 1,
                                a1 = a + 1,
                                b1 = b + 1
                            ),
                        });
                    }
                }
            }
        }
        let mut jacobi = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                for cc in b + 1..m {
                    for e in 0..m {
                        let mut total = BigRational::zero();
                        for d in 0..m {
                            total += c(a, b, d) * c(d, cc, e)
                                + c(b, cc, d) * c(d, a, e)
                                + c(cc, a, d) * c(d, b, e);
                        }
                        if !total.is_zero() {
                            jacobi.push(Violation {
                                indices: vec![a + 1, b + 1, cc + 1, e + 1],
                                detail: format!("cyclic sum has e{}-component {}", e + 1, total),
                            });
                        }
                    }
                }
            }
        }
        let mut unimodularity = Vec::new();
        for b in 0..m {
            let trace: BigRational = (0..m).map(|a| c(a, b, a).clone()).sum();
            if !trace.is_zero() {
                unimodularity.push(Violation {
                    indices: vec![b + 1],
                    detail: format!("trace of ad(e{}) is {}", b + 1, trace),
                });
            }
        }
        ValidationReport {
            model: self.name.clone(),
            checks: vec![
                InvariantCheck {
                    invariant: Invariant::Antisymmetry,
                    violations: antisymmetry,
                },
                InvariantCheck {
                    invariant: Invariant::Jacobi,
                    violations: jacobi,
                },
                InvariantCheck {
                    invariant: Invariant::Unimodularity,
                    violations: unimodularity,
                },
            ],
        }
    }

    /// Parse the JSON model format (1-based indices, rational strings).
    ///
    /// An `a < b` entry is completed antisymmetrically unless the file also
    /// lists the mirrored entry. Mirrored or diagonal entries are stored as
    /// given so that [`LieModel::validate`] can report them.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ModelFile =
            serde_json::from_str(text).map_err(|e| Error::ModelFormat(e.to_string()))?;
        if file.n == 0 || file.n > 4 {
            return Err(Error::ModelFormat(format!(
                "n must be between 1 and 4, got {}",
                file.n
            )));
        }
        let m = 2 * file.n;
        let mut model = LieModel::abelian(file.name, file.n);
        let mut parsed = Vec::with_capacity(file.brackets.len());
        for entry in &file.brackets {
            for (label, v) in [("a", entry.a), ("b", entry.b), ("c", entry.c)] {
                if v == 0 || v > m {
                    return Err(Error::ModelFormat(format!(
                        "index {label} = {v} outside 1..={m}"
                    )));
                }
            }
            let v = parse_rational(&entry.v).ok_or_else(|| {
                Error::ModelFormat(format!("`{}` is not a rational number", entry.v))
            })?;
            parsed.push((entry.a - 1, entry.b - 1, entry.c - 1, v));
        }
        let explicit = |a: usize, b: usize, c: usize| {
            parsed.iter().any(|(x, y, z, _)| (*x, *y, *z) == (a, b, c))
        };
        for (a, b, c, v) in &parsed {
            if a < b && !explicit(*b, *a, *c) {
                model.set_bracket(*a, *b, *c, v.clone());
            } else {
                model.set_raw(*a, *b, *c, v.clone());
            }
        }
        Ok(model)
    }

    pub fn to_json(&self) -> String {
        let m = self.frame_dim();
        let mut brackets = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                for c in 0..m {
                    let v = self.constant(a, b, c);
                    if !v.is_zero() {
                        brackets.push(BracketEntry {
                            a: a + 1,
                            b: b + 1,
                            c: c + 1,
                            v: v.to_string(),
                        });
                    }
                }
            }
        }
        let file = ModelFile {
            name: self.name.clone(),
            n: self.n,
            brackets,
        };
        serde_json::to_string_pretty(&file).expect("model serializes")
    }

    /// Geometry with the scalar type `S`, after validation.
    pub fn geometry<S: Scalar>(&self) -> Result<ModelGeometry<S>> {
        ModelGeometry::new(self)
    }

    pub fn geometry_with_space<S: Scalar>(&self, space: Arc<Space<S>>) -> Result<ModelGeometry<S>> {
        ModelGeometry::with_space(self, space)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct ModelFile {
    name: String,
    n: usize,
    #[serde(default)]
    brackets: Vec<BracketEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct BracketEntry {
    a: usize,
    b: usize,
    c: usize,
    v: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Invariant {
    Antisymmetry,
    Jacobi,
    Unimodularity,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Invariant::Antisymmetry => "antisymmetry",
            Invariant::Jacobi => "jacobi",
            Invariant::Unimodularity => "unimodularity",
        };
        f.write_str(s)
    }
}

/// A violated invariant with its 1-based witnessing indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub indices: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantCheck {
    pub invariant: Invariant,
    pub violations: Vec<Violation>,
}

impl InvariantCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub model: String,
    pub checks: Vec<InvariantCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(InvariantCheck::passed)
    }

    pub fn into_result(self) -> Result<()> {
        if self.passed() {
            Ok(())
        } else {
            Err(Error::Validation(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "model `{}`:", self.model)?;
        for check in &self.checks {
            if check.passed() {
                write!(f, " {} ok;", check.invariant)?;
                continue;
            }
            for v in &check.violations {
                let idx: Vec<String> = v.indices.iter().map(ToString::to_string).collect();
                write!(
                    f,
                    " {} violated at ({}): {};",
                    check.invariant,
                    idx.join(","),
                    v.detail
                )?;
            }
        }
        Ok(())
    }
}

/// Built-in models, in catalog order.
pub fn builtin_names() -> &'static [&'static str] {
    &["t2", "t4", "t6", "kt4", "pks4", "iwa6", "nil6", "gen6"]
}

pub fn builtin(name: &str) -> Option<LieModel> {
    let one = BigRational::one;
    let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
    // 1-based frame indices in the table below.
    let table: (usize, Vec<(usize, usize, usize, BigRational)>) = match name {
        "t2" => (1, vec![]),
        "t4" => (2, vec![]),
        "t6" => (3, vec![]),
        "kt4" => (2, vec![(1, 2, 3, one())]),
        "pks4" => (2, vec![(1, 3, 4, one())]),
        // Complex Heisenberg group with dφ³ = -φ¹∧φ², φ^j = θ^j + iθ^{j+3}.
        "iwa6" => (
            3,
            vec![
                (1, 2, 3, one()),
                (4, 5, 3, -one()),
                (1, 5, 6, one()),
                (2, 4, 6, -one()),
            ],
        ),
        "nil6" => (
            3,
            vec![(1, 2, 4, -one()), (1, 3, 5, -one()), (2, 3, 6, -one())],
        ),
        "gen6" => (
            3,
            vec![
                (1, 2, 5, one()),
                (1, 4, 6, one()),
                (2, 3, 6, r(1, 2)),
                (3, 4, 5, one()),
            ],
        ),
        _ => return None,
    };
    let (n, brackets) = table;
    let mut model = LieModel::abelian(name, n);
    for (a, b, c, v) in brackets {
        model.set_bracket(a - 1, b - 1, c - 1, v);
    }
    Some(model)
}

/// Extend `images` (values on `θ^A`) to an antiderivation of degree +1 over `∧`.
pub(crate) fn antiderivation<S: Scalar>(
    name: &str,
    n: usize,
    images: &[Multivector<S>],
) -> LinearOperator<S> {
    LinearOperator::from_fn(name, n, Picture::Exterior, |b: &Multivector<S>| {
        let mut out = Multivector::zero(n);
        for (blade, c) in b.terms() {
            let factors = blade.indices();
            for (slot, &replaced) in factors.iter().enumerate() {
                let mut term = Multivector::one(n);
                for (k, &index) in factors.iter().enumerate() {
                    let factor = if k == slot {
                        images[replaced].clone()
                    } else {
                        Multivector::basis_vector(n, index)
                    };
                    term = term.wedge(&factor).expect("same n");
                }
                let sign = if slot % 2 == 0 { c.clone() } else { -c.clone() };
                out = out + term.scale(&sign);
            }
        }
        out
    })
}

/// Invariant geometry of a validated model over the scalar type `S`.
#[derive(Debug, Clone)]
pub struct ModelGeometry<S> {
    pub model: LieModel,
    pub space: Arc<Space<S>>,
    /// `Γ^C_{AB}` at index `(A·2n + B)·2n + C`.
    gamma: Vec<S>,
    /// Chevalley–Eilenberg differential on forms.
    pub d: LinearOperator<S>,
    /// `∇_{e_A}` as a derivation over the Clifford product.
    pub nabla: Vec<LinearOperator<S>>,
    /// `∇_{e_A}` on forms, built from the dual action on the coframe.
    pub nabla_forms: Vec<LinearOperator<S>>,
    pub omega: Multivector<S>,
    pub d_omega: Multivector<S>,
    pub d_omega_plus: Multivector<S>,
    pub d_omega_minus: Multivector<S>,
    /// `θ = ω ⌟ dω⁺`.
    pub lee: Multivector<S>,
    /// `N(e_A, e_B)` at index `A·2n + B`.
    nijenhuis: Vec<Multivector<S>>,
}

impl<S: Scalar> ModelGeometry<S> {
    pub fn new(model: &LieModel) -> Result<Self> {
        Self::with_space(model, Arc::new(Space::new(model.half_dim())))
    }

    pub fn with_space(model: &LieModel, space: Arc<Space<S>>) -> Result<Self> {
        model.validate().into_result()?;
        if space.half_dim() != model.half_dim() {
            return Err(Error::DimensionMismatch {
                left: model.half_dim(),
                right: space.half_dim(),
            });
        }
        let n = model.half_dim();
        let m = 2 * n;
        let c = |a: usize, b: usize, k: usize| S::from_ratio(model.constant(a, b, k));

        // dθ^C = -Σ_{A<B} c^C_{AB} θ^A∧θ^B
        let d_images: Vec<Multivector<S>> = (0..m)
            .map(|k| {
                let mut out = Multivector::zero(n);
                for a in 0..m {
                    for b in a + 1..m {
                        let v = c(a, b, k);
                        if !v.is_zero() {
                            out = out + Multivector::from_indices(n, &[a, b], -v);
                        }
                    }
                }
                out
            })
            .collect();
        let d = antiderivation("d", n, &d_images);

        // Koszul: Γ^C_{AB} = ½(c^C_{AB} - c^A_{BC} + c^B_{CA})
        let half = S::frac(1, 2);
        let mut gamma = vec![S::zero(); m * m * m];
        for a in 0..m {
            for b in 0..m {
                for k in 0..m {
                    let v = c(a, b, k) - c(b, k, a) + c(k, a, b);
                    gamma[(a * m + b) * m + k] = v.mul_ref(&half);
                }
            }
        }
        let g = |a: usize, b: usize, k: usize| &gamma[(a * m + b) * m + k];

        let mut nabla = Vec::with_capacity(m);
        let mut nabla_forms = Vec::with_capacity(m);
        for a in 0..m {
            let vec_images: Vec<Multivector<S>> = (0..m)
                .map(|b| {
                    let coeffs = (0..m).map(|k| g(a, b, k).clone());
                    vector_from(n, coeffs)
                })
                .collect();
            // (∇_A θ^B)(e_C) = -θ^B(∇_A e_C) = -Γ^B_{AC}
            let form_images: Vec<Multivector<S>> = (0..m)
                .map(|b| {
                    let coeffs = (0..m).map(|k| -g(a, k, b).clone());
                    vector_from(n, coeffs)
                })
                .collect();
            nabla.push(crate::operator::derivation(
                format!("∇{}", a + 1),
                &vec_images,
                Picture::Clifford,
            ));
            nabla_forms.push(crate::operator::derivation(
                format!("∇{}", a + 1),
                &form_images,
                Picture::Exterior,
            ));
        }

        let omega = Multivector::fundamental_form(n);
        let d_omega = d.apply(&omega);
        let (d_omega_plus, d_omega_minus) = three_form_split(&d_omega)?;
        let lee = omega.contract(&d_omega_plus)?;

        let mut nijenhuis = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                nijenhuis.push(nijenhuis_of(model, n, a, b));
            }
        }

        let geometry = ModelGeometry {
            model: model.clone(),
            space,
            gamma,
            d,
            nabla,
            nabla_forms,
            omega,
            d_omega,
            d_omega_plus,
            d_omega_minus,
            lee,
            nijenhuis,
        };
        let cross = geometry.lee_cross_check();
        if !(geometry.lee.clone() - cross.clone())
            .coeffs()
            .iter()
            .all(|v| v.is_negligible(1e-9))
        {
            return Err(Error::Convention(format!(
                "Lee form mismatch on `{}`: ω⌟dω⁺ = {} but -J*d*ω = {}",
                model.name(),
                geometry.lee,
                cross
            )));
        }
        Ok(geometry)
    }

    pub fn half_dim(&self) -> usize {
        self.model.half_dim()
    }

    pub fn frame_dim(&self) -> usize {
        self.model.frame_dim()
    }

    pub fn name(&self) -> &str {
        self.model.name()
    }

    /// `Γ^C_{AB}` with `∇_{e_A} e_B = Σ_C Γ^C_{AB} e_C`.
    pub fn gamma(&self, a: usize, b: usize, c: usize) -> &S {
        let m = self.frame_dim();
        &self.gamma[(a * m + b) * m + c]
    }

    /// `N(e_A, e_B)` as a vector.
    pub fn nijenhuis(&self, a: usize, b: usize) -> &Multivector<S> {
        &self.nijenhuis[a * self.frame_dim() + b]
    }

    /// `N(X, Y)` for arbitrary vectors, by bilinearity.
    pub fn nijenhuis_vectors(&self, x: &Multivector<S>, y: &Multivector<S>) -> Multivector<S> {
        let m = self.frame_dim();
        let mut out = Multivector::zero(self.half_dim());
        for a in 0..m {
            let xa = x.coeff(Blade::vector(a));
            if xa.is_zero() {
                continue;
            }
            for b in 0..m {
                let yb = y.coeff(Blade::vector(b));
                if !yb.is_zero() {
                    out = out + self.nijenhuis(a, b).scale(&xa.mul_ref(yb));
                }
            }
        }
        out
    }

    pub fn is_integrable(&self) -> bool {
        self.nijenhuis.iter().all(Multivector::is_zero)
    }

    pub fn is_almost_kahler(&self) -> bool {
        self.d_omega.is_zero()
    }

    pub fn lee_vanishes(&self) -> bool {
        self.lee.is_zero()
    }

    /// `-J* d* ω`, with `d*` the matrix adjoint of `d`.
    pub fn lee_cross_check(&self) -> Multivector<S> {
        let d_star_omega = self.d.adjoint().apply(&self.omega);
        -d_star_omega.j_vector(Picture::Exterior)
    }

    /// `J*θ`.
    pub fn j_lee(&self) -> Multivector<S> {
        self.lee.j_vector(Picture::Exterior)
    }

    /// `∇_{J e_A}` by frame index arithmetic: `+∇_{A+n}` or `-∇_{A-n}`.
    pub fn nabla_j(&self, a: usize, picture: Picture) -> LinearOperator<S> {
        let n = self.half_dim();
        let ops = match picture {
            Picture::Clifford => &self.nabla,
            Picture::Exterior => &self.nabla_forms,
        };
        if a < n {
            ops[a + n].clone()
        } else {
            ops[a - n].scaled(&-S::one())
        }
    }

    /// `(∇_{e_A} J) v` for a vector `v`.
    pub fn nabla_j_tensor(&self, a: usize, v: &Multivector<S>) -> Multivector<S> {
        let nab = &self.nabla[a];
        let jv = v.j_vector(Picture::Clifford);
        nab.apply(&jv).grade_part(1) - nab.apply(v).grade_part(1).j_vector(Picture::Clifford)
    }
}

fn vector_from<S: Scalar>(n: usize, coeffs: impl Iterator<Item = S>) -> Multivector<S> {
    let mut out = Multivector::zero(n);
    for (k, v) in coeffs.enumerate() {
        if !v.is_zero() {
            out.set_coeff(Blade::vector(k), v);
        }
    }
    out
}

fn nijenhuis_of<S: Scalar>(model: &LieModel, n: usize, a: usize, b: usize) -> Multivector<S> {
    let m = 2 * n;
    let as_vec = |v: &Multivector<S>| -> Vec<S> {
        (0..m).map(|k| v.coeff(Blade::vector(k)).clone()).collect()
    };
    let to_mv = |v: Vec<S>| vector_from(n, v.into_iter());
    let j = |v: &Multivector<S>| v.j_vector(Picture::Clifford);
    let br = |x: &Multivector<S>, y: &Multivector<S>| {
        to_mv(model.bracket_vectors(&as_vec(x), &as_vec(y)))
    };
    let x = Multivector::basis_vector(n, a);
    let y = Multivector::basis_vector(n, b);
    let total = br(&j(&x), &j(&y)) - j(&br(&j(&x), &y)) - j(&br(&x, &j(&y))) - br(&x, &y);
    total.scale(&S::frac(1, 4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    type M = Multivector<Exact>;

    fn geo(name: &str) -> ModelGeometry<Exact> {
        builtin(name).unwrap().geometry().unwrap()
    }

    #[test]
    fn builtins_validate() {
        for name in builtin_names() {
            let report = builtin(name).unwrap().validate();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn symmetric_bracket_is_rejected() {
        let text = r#"{"name":"bad","n":2,"brackets":[{"a":1,"b":2,"c":3,"v":"1"},{"a":2,"b":1,"c":3,"v":"1"}]}"#;
        let model = LieModel::from_json(text).unwrap();
        let report = model.validate();
        assert!(!report.passed());
        let anti = &report.checks[0];
        assert_eq!(anti.invariant, Invariant::Antisymmetry);
        assert_eq!(anti.violations[0].indices, vec![1, 2, 3]);
        assert!(report.to_string().contains("antisymmetry"));
        assert!(matches!(
            model.geometry::<Exact>(),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn jacobi_and_unimodularity_failures() {
        // [e1,e2] = e2 is not unimodular.
        let m = LieModel::abelian("solv", 1).with_bracket(0, 1, 1, BigRational::one());
        let report = m.validate();
        assert!(!report.checks[2].passed());
        // [e1,e2]=e3, [e2,e3]=e1, [e1,e3]=e1 breaks Jacobi.
        let one = BigRational::one;
        let m = LieModel::abelian("bad", 2)
            .with_bracket(0, 1, 2, one())
            .with_bracket(1, 2, 0, one())
            .with_bracket(0, 2, 0, one());
        assert!(!m.validate().checks[1].passed());
    }

    #[test]
    fn json_round_trip() {
        for name in builtin_names() {
            let m = builtin(name).unwrap();
            assert_eq!(LieModel::from_json(&m.to_json()).unwrap(), m);
        }
        assert!(matches!(
            LieModel::from_json("{"),
            Err(Error::ModelFormat(_))
        ));
        let bad_index = r#"{"name":"x","n":1,"brackets":[{"a":1,"b":3,"c":1,"v":"1"}]}"#;
        assert!(matches!(
            LieModel::from_json(bad_index),
            Err(Error::ModelFormat(_))
        ));
        let bad_value = r#"{"name":"x","n":1,"brackets":[{"a":1,"b":2,"c":1,"v":"one"}]}"#;
        assert!(matches!(
            LieModel::from_json(bad_value),
            Err(Error::ModelFormat(_))
        ));
    }

    #[test]
    fn ce_differential_examples() {
        assert!(geo("t4").d.is_zero());
        let kt = geo("kt4");
        assert_eq!(
            kt.d.apply(&M::basis_vector(2, 2)),
            -M::from_indices(2, &[0, 1], Exact::one())
        );
        let nil = geo("nil6");
        assert_eq!(
            nil.d.apply(&M::basis_vector(3, 3)),
            M::from_indices(3, &[0, 1], Exact::one())
        );
        assert_eq!(
            nil.d.apply(&M::basis_vector(3, 4)),
            M::from_indices(3, &[0, 2], Exact::one())
        );
        assert_eq!(
            nil.d.apply(&M::basis_vector(3, 5)),
            M::from_indices(3, &[1, 2], Exact::one())
        );
        for name in builtin_names() {
            let g = geo(name);
            assert!(g.d.compose(&g.d).unwrap().is_zero(), "d² ≠ 0 on {name}");
        }
    }

    #[test]
    fn one_form_differential_is_minus_bracket() {
        // dα(X,Y) = -α([X,Y])
        let g = geo("iwa6");
        let m = 6;
        for c in 0..m {
            let dtheta = g.d.apply(&M::basis_vector(3, c));
            for a in 0..m {
                for b in 0..m {
                    let lhs = dtheta.evaluate(&[M::basis_vector(3, a), M::basis_vector(3, b)]);
                    let rhs = -Exact::from_ratio(g.model.constant(a, b, c));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn levi_civita_examples() {
        let kt = geo("kt4");
        let h = Exact::frac(1, 2);
        assert_eq!(kt.gamma(0, 1, 2), &h);
        assert_eq!(kt.gamma(0, 2, 1), &-h.clone());
        assert_eq!(kt.gamma(2, 0, 1), &-h);
        for name in builtin_names() {
            let g = geo(name);
            let m = g.frame_dim();
            for a in 0..m {
                for b in 0..m {
                    for c in 0..m {
                        assert_eq!(
                            g.gamma(a, b, c).clone() + g.gamma(a, c, b).clone(),
                            Exact::zero()
                        );
                        let torsion = g.gamma(a, b, c).clone() - g.gamma(b, a, c).clone();
                        assert_eq!(torsion, Exact::from_ratio(g.model.constant(a, b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn nabla_examples() {
        let kt = geo("kt4");
        let e23 = M::from_indices(2, &[1, 2], Exact::one());
        assert!(kt.nabla[0].apply(&e23).is_zero());
        for name in builtin_names() {
            let g = geo(name);
            let n = g.half_dim();
            for a in 0..g.frame_dim() {
                assert!(g.nabla[a].apply(&M::one(n)).is_zero());
                // Exterior ∇ built from the dual action agrees with the Clifford one.
                assert_eq!(g.nabla[a].matrix, g.nabla_forms[a].matrix, "{name} A={a}");
            }
        }
    }

    #[test]
    fn nijenhuis_examples() {
        let kt = geo("kt4");
        assert_eq!(
            kt.nijenhuis(0, 1),
            &M::basis_vector(2, 2).scale(&Exact::frac(-1, 4))
        );
        let nil = geo("nil6");
        assert_eq!(
            nil.nijenhuis(0, 1),
            &M::basis_vector(3, 3).scale(&Exact::frac(1, 4))
        );
        assert!(geo("iwa6").is_integrable());
        assert!(geo("pks4").is_integrable());
        assert!(!kt.is_integrable());
        for name in builtin_names() {
            let g = geo(name);
            let m = g.frame_dim();
            for a in 0..m {
                for b in 0..m {
                    assert_eq!(g.nijenhuis(a, b).clone(), -g.nijenhuis(b, a).clone());
                    let jb = M::basis_vector(g.half_dim(), b).j_vector(Picture::Clifford);
                    let lhs = g.nijenhuis_vectors(&M::basis_vector(g.half_dim(), a), &jb);
                    assert_eq!(lhs, -g.nijenhuis(a, b).j_vector(Picture::Clifford));
                }
            }
        }
    }

    #[test]
    fn geometry_examples() {
        let kt = geo("kt4");
        assert!(kt.is_almost_kahler());
        assert!(kt.lee_vanishes());
        let nil = geo("nil6");
        assert_eq!(nil.d_omega, M::from_indices(3, &[0, 1, 2], Exact::one()));
        assert!(!nil.d_omega_plus.is_zero());
        assert!(!nil.d_omega_minus.is_zero());
        assert!(geo("t6").is_almost_kahler());
        let pks = geo("pks4");
        assert!(!pks.lee_vanishes());
        // dω = -θ¹²³ and ⟨ω⌟dω, θ²⟩ = ⟨dω, ω∧θ²⟩ = 1.
        assert_eq!(pks.lee, M::basis_vector(2, 1));
        assert_eq!(pks.lee, pks.lee_cross_check());
    }

    #[test]
    fn three_form_split_of_pure_types() {
        let n = 3;
        let f = crate::bigrading::ComplexFrame::<Exact>::new(n);
        let v = M::from_coeffs(
            n,
            (0..64)
                .map(|k| Exact::from_int((k * 5 % 7) as i64 - 3))
                .collect(),
        )
        .grade_part(3);
        let p21 = f.project(&v, 2, 1);
        assert_eq!(three_form_split(&p21).unwrap(), (p21.clone(), M::zero(n)));
        let p30 = f.project(&v, 3, 0);
        assert_eq!(three_form_split(&p30).unwrap(), (M::zero(n), p30.clone()));
        assert!(matches!(
            three_form_split(&M::one(n)),
            Err(Error::NotThreeForm { .. })
        ));
    }
}
