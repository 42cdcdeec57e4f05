//! The identity catalog.
//!
//! Every entry is an operator equation, a structural property (derivation,
//! bidegree) or a pointwise formula, written against zoo names. Entries are
//! model independent; per-frame families use the `#` placeholder.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::expr::{br, compose, frame_sum, op, zero, Coef, Expr, I};
use crate::forms::FormCheck;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    Elementary,
    Geometry,
    Clifford,
    Exterior,
    MainTheorems,
    Corollary,
    CommutatorTable,
    BidegreeTable,
    AlmostKahler,
}

impl Group {
    pub fn suite(self) -> Suite {
        match self {
            Group::Elementary | Group::Geometry => Suite::Elementary,
            Group::Clifford => Suite::Clifford,
            Group::Exterior | Group::MainTheorems | Group::Corollary | Group::AlmostKahler => {
                Suite::Exterior
            }
            Group::CommutatorTable | Group::BidegreeTable => Suite::Tables,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    All,
    Clifford,
    Exterior,
    Tables,
    Elementary,
}

impl Suite {
    pub fn includes(self, group: Group) -> bool {
        self == Suite::All || group.suite() == self
    }

    pub fn parse(text: &str) -> Option<Suite> {
        match text {
            "all" => Some(Suite::All),
            "clifford" => Some(Suite::Clifford),
            "exterior" => Some(Suite::Exterior),
            "tables" => Some(Suite::Tables),
            "elementary" => Some(Suite::Elementary),
            _ => None,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::All => "all",
            Suite::Clifford => "clifford",
            Suite::Exterior => "exterior",
            Suite::Tables => "tables",
            Suite::Elementary => "elementary",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Check {
    Equal {
        lhs: Expr,
        rhs: Expr,
    },
    /// The inner check for every frame index substituted for `#`.
    EachFrame(Box<Check>),
    /// `op` is an (odd) derivation of its picture's product.
    Derivation {
        op: Expr,
        odd: bool,
    },
    /// All bidegree components of `op` sit at `declared`.
    Bidegree {
        op: Expr,
        declared: (i32, i32),
    },
    Form(FormCheck),
}

impl Check {
    pub fn substitute(&self, a: usize) -> Check {
        match self {
            Check::Equal { lhs, rhs } => Check::Equal {
                lhs: lhs.substitute(a),
                rhs: rhs.substitute(a),
            },
            Check::EachFrame(inner) => Check::EachFrame(Box::new(inner.substitute(a))),
            Check::Derivation { op, odd } => Check::Derivation {
                op: op.substitute(a),
                odd: *odd,
            },
            Check::Bidegree { op, declared } => Check::Bidegree {
                op: op.substitute(a),
                declared: *declared,
            },
            Check::Form(f) => Check::Form(*f),
        }
    }

    fn render(&self, pretty: bool) -> String {
        let show = |e: &Expr| if pretty { e.pretty() } else { e.to_string() };
        match self {
            Check::Equal { lhs, rhs } => format!("{} = {}", show(lhs), show(rhs)),
            Check::EachFrame(inner) => {
                format!("for all A: {}", inner.render(pretty).replace('#', "A"))
            }
            Check::Derivation { op, odd: false } => format!("{} is a derivation", show(op)),
            Check::Derivation { op, odd: true } => format!("{} is an odd derivation", show(op)),
            Check::Bidegree { op, declared } => format!("{} has bidegree {:?}", show(op), declared),
            Check::Form(f) => format!("{f:?}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Always,
    /// Only meaningful when `dω = 0`.
    AlmostKahler,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityEntry {
    pub id: String,
    pub group: Group,
    /// Short description of what is being checked.
    pub label: String,
    pub check: Check,
    /// Operators that must be nonzero for the entry to count as exercised.
    /// Empty means "lhs or rhs nonzero".
    pub guards: Vec<Expr>,
    pub condition: Condition,
    /// Stated without proof and obtained by other methods; checked like the rest.
    pub external: bool,
}

impl IdentityEntry {
    fn new(id: impl Into<String>, group: Group, label: impl Into<String>, check: Check) -> Self {
        IdentityEntry {
            id: id.into(),
            group,
            label: label.into(),
            check,
            guards: Vec::new(),
            condition: Condition::Always,
            external: false,
        }
    }

    fn guarded(mut self, guards: Vec<Expr>) -> Self {
        self.guards = guards;
        self
    }

    /// Formula with conventional symbols.
    pub fn formula(&self) -> String {
        match &self.check {
            Check::Form(f) => form_formula(*f).to_string(),
            c => c.render(true),
        }
    }

    /// Formula over raw zoo names.
    pub fn raw_formula(&self) -> String {
        self.check.render(false)
    }
}

fn form_formula(f: FormCheck) -> &'static str {
    match f {
        FormCheck::FlatJSharp => "♭J♯ = -J* on 1-forms",
        FormCheck::OmegaJ => "J_dω = 0, J_aω = ω",
        FormCheck::JaNablaOmega => "J_a∇_Xω = -∇_Xω",
        FormCheck::HodgeAdjoint => "d* = -⋆d⋆",
        FormCheck::KoszulNijenhuis => "2⟨(∇_XJ)Y,Z⟩ = dω(X,Y,Z) - dω(X,JY,JZ) + 4⟨JX,N(Y,Z)⟩",
        FormCheck::TwistedKoszulNijenhuis => "2⟨J⁻¹(∇_{JX}J)Y,Z⟩ = dω(JX,Y,JZ) + dω(JX,JY,Z) - 4⟨JX,N(Y,Z)⟩",
        FormCheck::NijenhuisJ => "N(Y,Z) = -N(Z,Y), N(JY,Z) = -JN(Y,Z)",
        FormCheck::ThreeFormPlus => "ψ(X,Y,Z) = ψ(JX,JY,Z) + ψ(JX,Y,JZ) + ψ(X,JY,JZ) for ψ of type (2,1)+(1,2)",
        FormCheck::ThreeFormSum => {
            "Σ(ψ(e_A,Z,e_B) - ψ(e_A,JZ,Je_B))θ^A∧θ^B = ½Σ(ψ(e_A,Z,e_B) + ψ(Je_A,Z,Je_B))θ^A∧θ^B for ψ of type (2,1)+(1,2)"
        }
        FormCheck::ThreeFormMinus => "ξ(JX,Y,Z) = ξ(X,JY,Z) = ξ(X,Y,JZ) for ξ of type (3,0)+(0,3)",
        FormCheck::SigmaOnVectors => "σ_XY = Σ_B (dω⁺(X,Y,e_B) - dω⁺(X,JY,Je_B)) e_B",
        FormCheck::SigmaFlatOnOneForms => "σ♭_Xα = Σ_{B,C} (dω⁺(X,e_C,e_B) - dω⁺(X,Je_C,Je_B)) α(e_C) θ^B",
        FormCheck::SigmaJRules => "σ_{JX}Y = Jσ_XY = -σ_X(JY)",
        FormCheck::SigmaTrace => "Σ_A σ_{e_A}e_A = -2(J*θ)♯",
        FormCheck::LambdaWedge => "[Λ, E_ξ] = E_{Λξ} + K_ξ for odd ξ, and [Λ, E_ξ] - E_{Λξ} is an odd derivation",
        FormCheck::TauPlusOnOneForms => "τ₊α = θ∧α + ½Σ dω⁺(e_C,e_A,e_B) α(Je_C) θ^A∧θ^B",
        FormCheck::TauPlusConjOnOneForms => "τ₊^cα = -J*θ∧α + ½Σ dω⁺(Je_A,e_C,Je_B) α(e_C) θ^A∧θ^B",
        FormCheck::HDiagonal => "[L, Λ] = (k - n) on k-forms",
        FormCheck::LeeCrossCheck => "θ = ω⌟dω = -J*d*ω",
        FormCheck::TauOfOne => "τ(1) = θ",
        FormCheck::DsigmaOmega => "D_σω = -J_dDω + 3D^cω, D^c_σω = -J_dD^cω - 3Dω",
    }
}

fn eq(id: &str, group: Group, label: &str, lhs: Expr, rhs: Expr) -> IdentityEntry {
    IdentityEntry::new(id, group, label, Check::Equal { lhs, rhs })
}

fn each_eq(id: &str, group: Group, label: &str, lhs: Expr, rhs: Expr) -> IdentityEntry {
    IdentityEntry::new(
        id,
        group,
        label,
        Check::EachFrame(Box::new(Check::Equal { lhs, rhs })),
    )
}

fn each_derivation(id: &str, group: Group, label: &str, body: Expr, odd: bool) -> IdentityEntry {
    IdentityEntry::new(
        id,
        group,
        label,
        Check::EachFrame(Box::new(Check::Derivation { op: body, odd })),
    )
}

fn form(id: &str, group: Group, label: &str, f: FormCheck) -> IdentityEntry {
    IdentityEntry::new(id, group, label, Check::Form(f))
}

fn i(c: i64) -> Coef {
    Coef::imag(c)
}

/// Bidegree of a named exterior operator from the pure families.
pub fn bidegree_of(name: &str) -> Option<(i32, i32)> {
    let (base, adjoint) = match name.strip_suffix('*') {
        Some(b) => (b, true),
        None => (name, false),
    };
    let part = |p: &str| match p {
        "mu" => Some((2, -1)),
        "del" => Some((1, 0)),
        "delbar" => Some((0, 1)),
        "mubar" => Some((-1, 2)),
        _ => None,
    };
    let b = match base.split_once('_') {
        Some(("lambda", p)) => part(p).map(|(r, s)| (r + 1, s + 1)),
        Some(("tau" | "rho" | "r", p)) => part(p),
        None => match base {
            "L" => Some((1, 1)),
            "Lambda" => Some((-1, -1)),
            "H" => Some((0, 0)),
            p => part(p),
        },
        _ => None,
    }?;
    Some(if adjoint { (-b.0, -b.1) } else { b })
}

/// Zoo expression for a name with an optional trailing `*` for the adjoint.
pub fn named_expr(name: &str) -> Expr {
    match name.strip_suffix('*') {
        Some(base) => op(base).adj(),
        None => op(name),
    }
}

fn key(name: &str) -> String {
    name.replace('*', "_adj")
}

/// One row of the commutator table: `[X, Λ]` and `[X, L]`.
#[derive(Debug, Clone)]
pub struct CommutatorRow {
    pub operator: &'static str,
    pub with_lambda: Expr,
    pub with_l: Expr,
    pub external: bool,
}

pub fn commutator_rows() -> Vec<CommutatorRow> {
    let row = |operator, with_lambda, with_l| CommutatorRow {
        operator,
        with_lambda,
        with_l,
        external: false,
    };
    let a = |name: &str| op(name).adj();
    let mut rows = vec![
        row("d", op("d").c().adj() + op("tau").c().adj(), op("lambda")),
        row("mu", I * (a("mubar") + a("tau_mubar")), op("lambda_mu")),
        row("tau_mu", i(-2) * a("tau_mubar"), -3 * op("lambda_mu")),
        row("mubar", i(-1) * (a("mu") + a("tau_mu")), op("lambda_mubar")),
        row("tau_mubar", i(2) * a("tau_mu"), -3 * op("lambda_mubar")),
        row(
            "del",
            i(-1) * (a("delbar") + a("tau_delbar")),
            op("lambda_del"),
        ),
        row("tau_del", i(2) * a("tau_delbar"), -3 * op("lambda_del")),
        row(
            "rho_del",
            i(-1) * a("rho_delbar") + a("tau_delbar"),
            I * op("lambda_del"),
        ),
        row("delbar", I * (a("del") + a("tau_del")), op("lambda_delbar")),
        row("tau_delbar", i(-2) * a("tau_del"), -3 * op("lambda_delbar")),
        row(
            "rho_delbar",
            I * a("rho_del") + a("tau_del"),
            i(-1) * op("lambda_delbar"),
        ),
        row("lambda_mubar", -op("tau_mubar"), zero()),
        row("lambda_delbar", -op("tau_delbar"), zero()),
        row("lambda_del", -op("tau_del"), zero()),
        row("lambda_mu", -op("tau_mu"), zero()),
        row("d*", -a("lambda"), -op("d").c() - op("tau").c()),
        row("mu*", -a("lambda_mu"), I * (op("mubar") + op("tau_mubar"))),
        row("tau_mu*", 3 * a("lambda_mu"), i(-2) * op("tau_mubar")),
        row(
            "mubar*",
            -a("lambda_mubar"),
            i(-1) * (op("mu") + op("tau_mu")),
        ),
        row("tau_mubar*", 3 * a("lambda_mubar"), i(2) * op("tau_mu")),
        row(
            "del*",
            -a("lambda_del"),
            i(-1) * (op("delbar") + op("tau_delbar")),
        ),
        row("tau_del*", 3 * a("lambda_del"), i(2) * op("tau_delbar")),
        row(
            "rho_del*",
            I * a("lambda_del"),
            i(-1) * op("rho_delbar") - op("tau_delbar"),
        ),
        row(
            "delbar*",
            -a("lambda_delbar"),
            I * (op("del") + op("tau_del")),
        ),
        row("tau_delbar*", 3 * a("lambda_delbar"), i(-2) * op("tau_del")),
        row(
            "rho_delbar*",
            i(-1) * a("lambda_delbar"),
            I * op("rho_del") - op("tau_del"),
        ),
        row("lambda_mubar*", zero(), a("tau_mubar")),
        row("lambda_delbar*", zero(), a("tau_delbar")),
        row("lambda_del*", zero(), a("tau_del")),
        row("lambda_mu*", zero(), a("tau_mu")),
    ];
    for r in &mut rows {
        r.external = r.operator.starts_with("rho_");
    }
    rows
}

/// Operator placed in the bidegree table, with its declared position.
#[derive(Debug, Clone)]
pub struct BidegreeItem {
    pub key: String,
    pub expr: Expr,
    pub declared: (i32, i32),
}

/// The pure families, their adjoints, and their brackets with `L` and `Λ`.
pub fn bidegree_items() -> Vec<BidegreeItem> {
    let mut bases = Vec::new();
    for family in ["", "tau_", "lambda_"] {
        for part in ["mu", "del", "delbar", "mubar"] {
            bases.push(format!("{family}{part}"));
        }
    }
    let mut names: Vec<String> = bases.clone();
    names.extend(bases.iter().map(|b| format!("{b}*")));
    let mut items = Vec::new();
    for name in &names {
        let b = bidegree_of(name).expect("pure family");
        items.push(BidegreeItem {
            key: key(name),
            expr: named_expr(name),
            declared: b,
        });
        items.push(BidegreeItem {
            key: format!("{}.L", key(name)),
            expr: br(named_expr(name), op("L")),
            declared: (b.0 + 1, b.1 + 1),
        });
        items.push(BidegreeItem {
            key: format!("{}.Lambda", key(name)),
            expr: br(named_expr(name), op("Lambda")),
            declared: (b.0 - 1, b.1 - 1),
        });
    }
    items
}

/// Identities of the shape `[X, M] = Y` with `X` odd and `M ∈ {L, Λ}`,
/// expanded with their adjoint `[X*, M*] = -Y*` and conjugate `[X^c, M^c] = Y^c`.
fn bracket_family(
    prefix: &str,
    group: Group,
    label: &str,
    items: &[(&str, Expr, Expr, Expr)],
) -> Vec<IdentityEntry> {
    // A zero right-hand side is only informative when the bracketed operator is nonzero.
    let guard = |x: Expr, y: &Expr| if *y == zero() { vec![x] } else { Vec::new() };
    let mut out = Vec::new();
    for (id, x, m, y) in items {
        out.push(
            eq(
                &format!("{prefix}.{id}"),
                group,
                label,
                br(x.clone(), m.clone()),
                y.clone(),
            )
            .guarded(guard(x.clone(), y)),
        );
    }
    for (id, x, m, y) in items {
        out.push(
            eq(
                &format!("{prefix}.{id}.adj"),
                group,
                &format!("{label}, adjoint form"),
                br(x.clone().adj(), m.clone().adj()),
                -y.clone().adj(),
            )
            .guarded(guard(x.clone().adj(), y)),
        );
    }
    for (id, x, m, y) in items {
        out.push(
            eq(
                &format!("{prefix}.{id}.conj"),
                group,
                &format!("{label}, conjugated form"),
                br(x.clone().c(), m.clone().c()),
                y.clone().c(),
            )
            .guarded(guard(x.clone().c(), y)),
        );
    }
    out
}

fn elementary() -> Vec<IdentityEntry> {
    use Group::Elementary as G;
    let mut v = vec![
        form(
            "elem.flat_j_sharp",
            G,
            "J on vectors transports to minus J* on 1-forms",
            FormCheck::FlatJSharp,
        ),
        eq(
            "elem.flat_jd_sharp",
            G,
            "derivation extension of J transports to minus J_d*",
            op("Jd").tr(),
            -op("Jd*"),
        ),
        eq(
            "elem.flat_ja_sharp",
            G,
            "algebra extension of J transports to (-1)^k J_a*",
            op("Ja").tr(),
            compose(op("Ja*"), op("grading")),
        ),
        eq(
            "elem.ja_star_adjoint",
            G,
            "adjoint of J_a* is (-1)^k J_a*",
            op("Ja*").adj(),
            compose(op("Ja*"), op("grading")),
        ),
        eq(
            "elem.ja_adjoint",
            G,
            "adjoint of J_a is (-1)^k J_a",
            op("Ja").adj(),
            compose(op("Ja"), op("grading_cl")),
        ),
        eq(
            "elem.jd_star_adjoint",
            G,
            "J_d* is anti-self-adjoint",
            op("Jd*").adj(),
            -op("Jd*"),
        ),
        eq(
            "elem.jd_adjoint",
            G,
            "J_d is anti-self-adjoint",
            op("Jd").adj(),
            -op("Jd"),
        ),
        eq(
            "elem.ja_star_inverse",
            G,
            "inverse of J_a* is (-1)^k J_a*",
            op("Ja*^-1"),
            compose(op("Ja*"), op("grading")),
        ),
        eq(
            "elem.ja_inverse",
            G,
            "inverse of J_a is (-1)^k J_a",
            op("Ja^-1"),
            compose(op("Ja"), op("grading_cl")),
        ),
        eq(
            "elem.ja_jd_commute",
            G,
            "J_a and J_d commute",
            br(op("Ja"), op("Jd")),
            zero(),
        )
        .guarded(vec![op("Jd")]),
        eq(
            "elem.ja_star_jd_star_commute",
            G,
            "J_a* and J_d* commute",
            br(op("Ja*"), op("Jd*")),
            zero(),
        )
        .guarded(vec![op("Jd*")]),
    ];
    for (name, odd) in [
        ("d", true),
        ("L", false),
        ("tau", true),
        ("lambda", true),
        ("rho_del", true),
        ("mu", true),
        ("D", true),
        ("Hc", false),
        ("Dsigma", true),
        ("L_Domega", true),
    ] {
        v.push(eq(
            &format!("elem.conj_adjoint.{name}"),
            G,
            "conjugation commutes with taking adjoints",
            op(name).c().adj(),
            op(name).adj().c(),
        ));
        let twice = if odd { -op(name) } else { op(name) };
        v.push(eq(
            &format!("elem.conj_twice.{name}"),
            G,
            "conjugating twice gives (-1)^p",
            op(name).c().c(),
            twice,
        ));
    }
    for (name, odd) in [
        ("D", true),
        ("Hc", false),
        ("Dsigma", true),
        ("L_Domega", true),
        ("Jd", false),
        ("L_omega", false),
    ] {
        let rhs = if odd {
            -op(name).tr().c()
        } else {
            op(name).tr().c()
        };
        v.push(eq(
            &format!("elem.transport_conj.{name}"),
            G,
            "transport of a conjugate is (-1)^p times the conjugated transport",
            op(name).c().tr(),
            rhs,
        ));
    }
    let mut phase: Vec<String> = Vec::new();
    for part in ["mu", "del", "delbar", "mubar"] {
        for family in ["", "lambda_", "tau_", "rho_", "r_"] {
            phase.push(format!("{family}{part}"));
        }
    }
    phase.extend(["L", "Lambda", "H"].map(String::from));
    let adjoints: Vec<String> = phase
        .iter()
        .filter(|n| !n.starts_with("r_"))
        .map(|n| format!("{n}*"))
        .collect();
    phase.extend(adjoints);
    for name in &phase {
        let (r, s) = bidegree_of(name).expect("pure");
        v.push(eq(
            &format!("elem.phase.{}", key(name)),
            G,
            "conjugate of a pure (r,s) operator is i^(s-r) times it",
            named_expr(name).c(),
            Coef::i_pow(s - r) * named_expr(name),
        ));
    }
    // Lemma on ω and ∇.
    let nabla_jd = br(op("nabla_#"), op("Jd"));
    let nabla_ja = compose(compose(op("Ja^-1"), op("nabla_#")), op("Ja")) - op("nabla_#");
    v.extend([
        form(
            "elem.omega_j",
            G,
            "ω is J-invariant and killed by J_d",
            FormCheck::OmegaJ,
        ),
        eq(
            "elem.hc_formula",
            G,
            "H_c through J_d and L_ω",
            op("Hc"),
            I * op("Jd") - I * op("L_omega"),
        ),
        eq(
            "elem.jd_formula",
            G,
            "J_d as half the difference of left and right multiplication by ω",
            op("Jd"),
            Coef::frac(1, 2) * (op("L_omega") - op("R_omega")),
        ),
        each_derivation(
            "elem.nabla_jd_derivation",
            G,
            "∇_X J_d is a derivation",
            nabla_jd.clone(),
            false,
        ),
        each_eq(
            "elem.nabla_jd_skew",
            G,
            "∇_X J_d is anti-self-adjoint",
            nabla_jd.clone().adj(),
            -nabla_jd,
        ),
        each_derivation(
            "elem.nabla_ja_derivation",
            G,
            "J_a⁻¹∇_X J_a is a derivation",
            nabla_ja.clone(),
            false,
        ),
        each_eq(
            "elem.nabla_ja_skew",
            G,
            "J_a⁻¹∇_X J_a is anti-self-adjoint",
            nabla_ja.clone().adj(),
            -nabla_ja,
        ),
        eq(
            "elem.hc_jd_commute",
            G,
            "H_c commutes with J_d",
            br(op("Hc"), op("Jd")),
            zero(),
        )
        .guarded(vec![op("Hc")]),
        eq(
            "elem.hc_conj",
            G,
            "H_c is its own conjugate",
            op("Hc").c(),
            op("Hc"),
        ),
        eq(
            "elem.jd_conj",
            G,
            "J_d is its own conjugate",
            op("Jd").c(),
            op("Jd"),
        ),
        form(
            "elem.ja_nabla_omega",
            G,
            "J_a acts as -1 on ∇ω",
            FormCheck::JaNablaOmega,
        ),
        each_eq(
            "elem.nabla_sharp",
            G,
            "∇ commutes with the musical isomorphisms",
            op("nabla_#").tr(),
            op("nablaf_#"),
        ),
        each_derivation(
            "elem.nabla_derivation",
            G,
            "∇_X is a derivation of the Clifford product",
            op("nabla_#"),
            false,
        ),
        each_eq(
            "elem.nabla_skew",
            G,
            "∇_X is anti-self-adjoint",
            op("nabla_#").adj(),
            -op("nabla_#"),
        ),
    ]);
    v
}

fn geometry() -> Vec<IdentityEntry> {
    use Group::Geometry as G;
    vec![
        eq(
            "geom.d_squared",
            G,
            "d squares to zero",
            compose(op("d"), op("d")),
            zero(),
        )
        .guarded(vec![op("d")]),
        eq(
            "geom.d_parts",
            G,
            "d splits into its four bidegree parts",
            op("d"),
            op("mu") + op("del") + op("delbar") + op("mubar"),
        ),
        eq(
            "geom.dc_parts",
            G,
            "conjugate of d in terms of the parts",
            op("d").c(),
            I * op("mu") - I * op("del") + I * op("delbar") - I * op("mubar"),
        ),
        form(
            "geom.hodge_adjoint",
            G,
            "formal adjoint of d via the Hodge star",
            FormCheck::HodgeAdjoint,
        ),
        form(
            "geom.koszul_nijenhuis",
            G,
            "∇J through dω and the Nijenhuis tensor",
            FormCheck::KoszulNijenhuis,
        ),
        form(
            "geom.koszul_nijenhuis_twisted",
            G,
            "J⁻¹∇_{JX}J through dω and the Nijenhuis tensor",
            FormCheck::TwistedKoszulNijenhuis,
        ),
        form(
            "geom.nijenhuis_j",
            G,
            "Nijenhuis tensor is skew and J-anti-linear",
            FormCheck::NijenhuisJ,
        ),
        form(
            "geom.three_form_plus",
            G,
            "J-rule for 3-forms of type (2,1)+(1,2)",
            FormCheck::ThreeFormPlus,
        ),
        form(
            "geom.three_form_sum",
            G,
            "frame sum rule for 3-forms of type (2,1)+(1,2)",
            FormCheck::ThreeFormSum,
        ),
        form(
            "geom.three_form_minus",
            G,
            "J-rule for 3-forms of type (3,0)+(0,3)",
            FormCheck::ThreeFormMinus,
        ),
        form(
            "geom.lee",
            G,
            "two expressions of the Lee form agree",
            FormCheck::LeeCrossCheck,
        ),
        form(
            "geom.tau_one",
            G,
            "τ applied to 1 is the Lee form",
            FormCheck::TauOfOne,
        ),
        form(
            "geom.h_diagonal",
            G,
            "[L, Λ] is diagonal by degree",
            FormCheck::HDiagonal,
        ),
        eq(
            "geom.lambda_l",
            G,
            "[Λ, L] is minus [L, Λ]",
            br(op("Lambda"), op("L")),
            -op("H"),
        ),
    ]
}

fn clifford() -> Vec<IdentityEntry> {
    use Group::Clifford as G;
    let ds = || op("Dsigma");
    let dsc = || op("Dsigma").c();
    let correction = frame_sum(compose(
        op("Le_#"),
        br(op("nabla_#"), op("Jd")) + compose(compose(op("Ja^-1"), op("nablaJ_#")), op("Ja"))
            - op("nablaJ_#"),
    ));
    vec![
        eq(
            "clif.d_transport",
            G,
            "Dirac operator transports to d + d*",
            op("D").tr(),
            op("d") + op("d*"),
        ),
        eq(
            "clif.hc_transport",
            G,
            "H_c transports to i(Λ - L)",
            op("Hc").tr(),
            I * (op("Lambda") - op("L")),
        ),
        eq(
            "clif.dc_transport",
            G,
            "conjugated Dirac operator transports to -(d^c + d*^c)",
            op("D").c().tr(),
            -(op("d").c() + op("d*").c()),
        ),
        eq(
            "clif.dhc_transport",
            G,
            "[D, H_c] transports to i[d + d*, Λ - L]",
            br(op("D"), op("Hc")).tr(),
            I * br(op("d") + op("d*"), op("Lambda") - op("L")),
        ),
        eq(
            "clif.dhc_lemma",
            G,
            "[D, H_c] with the connection correction term",
            br(op("D"), op("Hc")),
            i(-1) * op("D").c() - I * op("L_Domega") + I * correction,
        ),
        eq(
            "clif.master",
            G,
            "generalized identity for the Dirac operator and H_c",
            br(op("D"), op("Hc")),
            i(-1) * op("D").c() + I * ds() - I * op("L_Domega"),
        ),
        each_derivation(
            "clif.sigma_derivation",
            G,
            "σ_X is a derivation",
            op("sigma_#"),
            false,
        ),
        each_eq(
            "clif.sigma_skew",
            G,
            "σ_X is anti-self-adjoint",
            op("sigma_#").adj(),
            -op("sigma_#"),
        ),
        each_eq(
            "clif.sigma_conj",
            G,
            "σ_X is minus its conjugate",
            op("sigma_#").c(),
            -op("sigma_#"),
        ),
        each_eq(
            "clif.sigma_jd",
            G,
            "[σ_X, J_d] = -2σ_{JX}",
            br(op("sigma_#"), op("Jd")),
            -2 * op("sigmaJ_#"),
        ),
        form(
            "clif.sigma_j_rules",
            G,
            "σ and J on vectors",
            FormCheck::SigmaJRules,
        ),
        form(
            "clif.sigma_vectors",
            G,
            "σ on vectors from dω⁺",
            FormCheck::SigmaOnVectors,
        ),
        each_eq(
            "clif.sigma_flat",
            G,
            "transported σ equals the exterior formula",
            op("sigma_#").tr(),
            op("sigmaflat_#"),
        ),
        form(
            "clif.sigma_flat_one_forms",
            G,
            "transported σ on 1-forms from dω⁺",
            FormCheck::SigmaFlatOnOneForms,
        ),
        form(
            "clif.sigma_trace",
            G,
            "trace of σ is -2(J*θ)♯",
            FormCheck::SigmaTrace,
        ),
        eq(
            "clif.dsigma.a",
            G,
            "conjugate of L_{Dω}",
            op("L_Domega").c(),
            op("L_Dcomega"),
        ),
        eq(
            "clif.dsigma.b1",
            G,
            "[L_{Dω}, H_c]",
            br(op("L_Domega"), op("Hc")),
            I * op("L_JdDomega"),
        ),
        eq(
            "clif.dsigma.b2",
            G,
            "[L_{D^cω}, H_c]",
            br(op("L_Dcomega"), op("Hc")),
            I * op("L_JdDcomega"),
        ),
        form(
            "clif.dsigma.c",
            G,
            "D_σω and D^c_σω",
            FormCheck::DsigmaOmega,
        ),
        eq("clif.dsigma.d", G, "[D_σ, J_d]", br(ds(), op("Jd")), dsc()),
        eq(
            "clif.dsigma.e",
            G,
            "[D_σ^c, J_d]",
            br(dsc(), op("Jd")),
            -ds(),
        ),
        eq(
            "clif.dsigma.f",
            G,
            "[D_σ, H_c]",
            br(ds(), op("Hc")),
            I * (3 * dsc() - op("L_Dsigmaomega")),
        ),
        eq(
            "clif.dsigma.g",
            G,
            "[D_σ^c, H_c]",
            br(dsc(), op("Hc")),
            i(-1) * (3 * ds() + op("L_Dsigmacomega")),
        ),
        eq(
            "clif.dsigma.h",
            G,
            "[D_σ - L_{Dω}, H_c]",
            br(ds() - op("L_Domega"), op("Hc")),
            i(3) * (dsc() - op("L_Dcomega")),
        ),
        eq(
            "clif.dsigma.i",
            G,
            "[D_σ^c - L_{D^cω}, H_c]",
            br(dsc() - op("L_Dcomega"), op("Hc")),
            i(-3) * (ds() - op("L_Domega")),
        ),
        eq(
            "clif.dsigma.j1",
            G,
            "D_σ - L_{Dω} is self-adjoint",
            (ds() - op("L_Domega")).adj(),
            ds() - op("L_Domega"),
        ),
        eq(
            "clif.dsigma.j2",
            G,
            "D_σ^c - L_{D^cω} is self-adjoint",
            (dsc() - op("L_Dcomega")).adj(),
            dsc() - op("L_Dcomega"),
        ),
        eq(
            "clif.dsigma_adjoint",
            G,
            "adjoint of D_σ",
            ds().adj(),
            ds() - 2 * op("L_Jtheta"),
        ),
        eq(
            "clif.ldomega_adjoint",
            G,
            "adjoint of L_{Dω}",
            op("L_Domega").adj(),
            op("L_Domega") - 2 * op("L_Jtheta"),
        ),
    ]
}

fn exterior() -> Vec<IdentityEntry> {
    use Group::Exterior as G;
    let a = |name: &str| op(name).adj();
    let mut v = vec![
        each_eq(
            "ext.clifmult_vector",
            G,
            "Clifford multiplication by a vector",
            op("Le_#").tr(),
            op("E_#") - op("I_#"),
        ),
        eq(
            "ext.clifmult_dw",
            G,
            "Clifford multiplication by dω",
            op("L_dw").tr(),
            op("lambda") + op("rho") + a("rho") + a("lambda"),
        ),
        eq(
            "ext.clifmult_mu",
            G,
            "Clifford multiplication by μω",
            op("L_muw").tr(),
            op("lambda_mu") + op("rho_mu") + a("rho_mubar") + a("lambda_mubar"),
        ),
        eq(
            "ext.clifmult_del",
            G,
            "Clifford multiplication by ∂ω",
            op("L_delw").tr(),
            op("lambda_del") + op("rho_del") + a("rho_delbar") + a("lambda_delbar"),
        ),
        eq(
            "ext.clifmult_delbar",
            G,
            "Clifford multiplication by ∂̄ω",
            op("L_delbarw").tr(),
            op("lambda_delbar") + op("rho_delbar") + a("rho_del") + a("lambda_del"),
        ),
        eq(
            "ext.clifmult_mubar",
            G,
            "Clifford multiplication by μ̄ω",
            op("L_mubarw").tr(),
            op("lambda_mubar") + op("rho_mubar") + a("rho_mu") + a("lambda_mu"),
        ),
        eq(
            "ext.rho_total",
            G,
            "ρ is minus r_{dω}",
            op("rho"),
            -op("r_d"),
        ),
        eq(
            "ext.ldomega_transport",
            G,
            "left multiplication by Dω in exterior terms",
            op("L_Domega").tr(),
            op("lambda") + op("rho") + op("E_Jtheta") + a("rho") + a("lambda") - op("I_Jtheta"),
        ),
        form(
            "ext.lambda_wedge",
            G,
            "commutator of Λ with a wedge by an odd form",
            FormCheck::LambdaWedge,
        ),
        eq(
            "ext.tau_mu_rho",
            G,
            "τ_μ against ρ_μ",
            op("tau_mu"),
            I * op("rho_mu"),
        ),
        eq(
            "ext.tau_mubar_rho",
            G,
            "τ_μ̄ against ρ_μ̄",
            op("tau_mubar"),
            i(-1) * op("rho_mubar"),
        ),
        eq(
            "ext.rho_minus",
            G,
            "ρ_- through τ_-",
            op("rho_minus"),
            -op("tau_minus").c(),
        ),
        eq(
            "ext.rho_split",
            G,
            "ρ through ρ_+ and τ_-",
            op("rho"),
            op("rho_plus") - op("tau_minus").c(),
        ),
        eq(
            "ext.tau_plus_local",
            G,
            "τ₊ as wedge by θ plus K_{dω⁺}",
            op("tau_plus"),
            op("E_theta") + op("K_dw+"),
        ),
        form(
            "ext.tau_plus_one_forms",
            G,
            "τ₊ on 1-forms",
            FormCheck::TauPlusOnOneForms,
        ),
        form(
            "ext.tau_plus_conj_one_forms",
            G,
            "τ₊^c on 1-forms",
            FormCheck::TauPlusConjOnOneForms,
        ),
        eq(
            "ext.dsigma_ext",
            G,
            "wedge part of transported D_σ",
            op("Dsigma_ext"),
            op("rho_plus") + op("tau_plus").c() + op("E_Jtheta"),
        ),
        eq(
            "ext.dsigma_int",
            G,
            "interior part of transported D_σ",
            op("Dsigma_int"),
            -a("Dsigma_ext") + 2 * op("I_Jtheta"),
        ),
        eq(
            "ext.dsigma_split",
            G,
            "transported D_σ as wedge minus interior part",
            op("Dsigma").tr(),
            op("Dsigma_ext") - op("Dsigma_int"),
        ),
        eq(
            "ext.dsigma_transport",
            G,
            "transported D_σ in exterior terms",
            op("Dsigma").tr(),
            op("rho_plus")
                + op("tau_plus").c()
                + op("E_Jtheta")
                + a("rho_plus")
                + op("tau_plus").c().adj()
                - op("I_Jtheta"),
        ),
        eq(
            "ext.dsigma_l_transport",
            G,
            "transport of D_σ - L_{Dω}",
            (op("Dsigma") - op("L_Domega")).tr(),
            op("tau").c() - op("lambda") + op("tau").c().adj() - a("lambda"),
        ),
        eq(
            "ext.dsigmac_l_transport",
            G,
            "transport of D_σ^c - L_{D^cω}",
            (op("Dsigma").c() - op("L_Dcomega")).tr(),
            op("tau") + op("lambda").c() + a("tau") + op("lambda").c().adj(),
        ),
    ];
    for part in ["mu", "del", "delbar", "mubar"] {
        for family in ["r", "rho"] {
            let name = format!("{family}_{part}");
            v.push(IdentityEntry::new(
                format!("ext.bidegree.{name}"),
                G,
                "r_ξ lowers the bidegree of ξ by (1,1)",
                Check::Bidegree {
                    op: op(&name),
                    declared: bidegree_of(&name).expect("pure"),
                },
            ));
        }
    }
    for name in ["L", "Lambda", "H"] {
        v.push(IdentityEntry::new(
            format!("ext.bidegree.{name}"),
            G,
            "Lefschetz operators are pure",
            Check::Bidegree {
                op: op(name),
                declared: bidegree_of(name).expect("pure"),
            },
        ));
    }
    v
}

fn main_theorems() -> Vec<IdentityEntry> {
    use Group::MainTheorems as G;
    let a = |name: &str| op(name).adj();
    vec![
        eq(
            "main.d_full",
            G,
            "[d + d*, Λ - L] in exterior terms",
            br(op("d") + op("d*"), op("Lambda") - op("L")),
            op("d").c() + op("tau").c() - op("lambda") + op("d").c().adj() + op("tau").c().adj()
                - a("lambda"),
        ),
        eq(
            "main.dL",
            G,
            "commutator of d with L",
            br(op("d"), op("L")),
            op("lambda"),
        ),
        eq(
            "main.dLambda",
            G,
            "commutator of d with Λ",
            br(op("d"), op("Lambda")),
            op("d").c().adj() + op("tau").c().adj(),
        ),
        eq(
            "main.dsL",
            G,
            "commutator of d* with L",
            br(op("d*"), op("L")),
            -op("d").c() - op("tau").c(),
        ),
        eq(
            "main.dsLambda",
            G,
            "commutator of d* with Λ",
            br(op("d*"), op("Lambda")),
            -a("lambda"),
        ),
        eq(
            "main.lambdatau_full",
            G,
            "[τ^c - λ + τ^c* - λ*, Λ - L] in exterior terms",
            br(
                op("tau").c() - op("lambda") + op("tau").c().adj() - a("lambda"),
                op("Lambda") - op("L"),
            ),
            3 * (op("tau") + op("lambda").c() + a("tau") + op("lambda").c().adj()),
        ),
        eq(
            "main.lambdaL",
            G,
            "commutator of λ with L",
            br(op("lambda"), op("L")),
            zero(),
        )
        .guarded(vec![op("lambda")]),
        eq(
            "main.lambdaLambda",
            G,
            "commutator of λ with Λ",
            br(op("lambda"), op("Lambda")),
            -op("tau"),
        ),
        eq(
            "main.tauL",
            G,
            "commutator of τ with L",
            br(op("tau"), op("L")),
            -3 * op("lambda"),
        ),
        eq(
            "main.tauLambda",
            G,
            "commutator of τ with Λ",
            br(op("tau"), op("Lambda")),
            -2 * op("tau").c().adj(),
        ),
    ]
}

fn corollary() -> Vec<IdentityEntry> {
    let a = |name: &str| op(name).adj();
    let l = || op("L");
    let lam = || op("Lambda");
    let items = vec![
        (
            "muLambda",
            op("mu"),
            lam(),
            I * (a("mubar") + a("tau_mubar")),
        ),
        ("tau_muLambda", op("tau_mu"), lam(), i(-2) * a("tau_mubar")),
        ("lambda_muLambda", op("lambda_mu"), lam(), -op("tau_mu")),
        ("muL", op("mu"), l(), op("lambda_mu")),
        ("tau_muL", op("tau_mu"), l(), -3 * op("lambda_mu")),
        ("lambda_muL", op("lambda_mu"), l(), zero()),
        (
            "delLambda",
            op("del"),
            lam(),
            i(-1) * (a("delbar") + a("tau_delbar")),
        ),
        (
            "tau_delLambda",
            op("tau_del"),
            lam(),
            i(2) * a("tau_delbar"),
        ),
        ("lambda_delLambda", op("lambda_del"), lam(), -op("tau_del")),
        ("delL", op("del"), l(), op("lambda_del")),
        ("tau_delL", op("tau_del"), l(), -3 * op("lambda_del")),
        ("lambda_delL", op("lambda_del"), l(), zero()),
    ];
    bracket_family(
        "cor",
        Group::Corollary,
        "bidegree component of the main identities",
        &items,
    )
}

fn commutator_table() -> Vec<IdentityEntry> {
    let mut out = Vec::new();
    for row in commutator_rows() {
        for (column, m, value) in [
            ("Lambda", op("Lambda"), &row.with_lambda),
            ("L", op("L"), &row.with_l),
        ] {
            let mut e = eq(
                &format!("comm.{}.{column}", key(row.operator)),
                Group::CommutatorTable,
                "commutator table cell",
                br(named_expr(row.operator), m),
                value.clone(),
            );
            if *value == zero() {
                e.guards = vec![named_expr(row.operator)];
            }
            e.external = row.external;
            out.push(e);
        }
    }
    out
}

fn bidegree_table() -> Vec<IdentityEntry> {
    bidegree_items()
        .into_iter()
        .map(|item| {
            IdentityEntry::new(
                format!("bideg.{}", item.key),
                Group::BidegreeTable,
                "bidegree table placement",
                Check::Bidegree {
                    op: item.expr,
                    declared: item.declared,
                },
            )
        })
        .collect()
}

fn almost_kahler() -> Vec<IdentityEntry> {
    let a = |name: &str| op(name).adj();
    let items = vec![
        ("muLambda", op("mu"), op("Lambda"), I * a("mubar")),
        ("muL", op("mu"), op("L"), zero()),
        ("delLambda", op("del"), op("Lambda"), i(-1) * a("delbar")),
        ("delL", op("del"), op("L"), zero()),
    ];
    let mut out = bracket_family("ak", Group::AlmostKahler, "identity when dω = 0", &items);
    for (name, guard) in [("lambda", "mu"), ("tau", "mu"), ("rho", "mu")] {
        out.push(
            eq(
                &format!("ak.{name}_zero"),
                Group::AlmostKahler,
                "vanishes when dω = 0",
                op(name),
                zero(),
            )
            .guarded(vec![op(guard)]),
        );
    }
    for e in &mut out {
        e.condition = Condition::AlmostKahler;
    }
    out
}

/// The complete catalog, in report order.
pub fn catalog() -> Vec<IdentityEntry> {
    let mut v = elementary();
    v.extend(geometry());
    v.extend(clifford());
    v.extend(exterior());
    v.extend(main_theorems());
    v.extend(corollary());
    v.extend(commutator_table());
    v.extend(bidegree_table());
    v.extend(almost_kahler());
    v
}

pub fn catalog_for(suite: Suite) -> Vec<IdentityEntry> {
    catalog()
        .into_iter()
        .filter(|e| suite.includes(e.group))
        .collect()
}

/// Displayed statements and the entries that check them. Prefix patterns end
/// in `.`.
pub const COVERAGE: &[(&str, &[&str])] = &[
    (
        "musical isomorphisms and J",
        &[
            "elem.flat_j_sharp",
            "elem.flat_jd_sharp",
            "elem.flat_ja_sharp",
        ],
    ),
    (
        "adjoints of J_a and J_d",
        &[
            "elem.ja_star_adjoint",
            "elem.ja_adjoint",
            "elem.jd_star_adjoint",
            "elem.jd_adjoint",
        ],
    ),
    (
        "inverse of J_a",
        &["elem.ja_star_inverse", "elem.ja_inverse"],
    ),
    ("conjugation and adjoints", &["elem.conj_adjoint."]),
    ("conjugating twice", &["elem.conj_twice."]),
    ("conjugation and transport", &["elem.transport_conj."]),
    ("phase rule for pure operators", &["elem.phase."]),
    ("ω under J_a and J_d", &["elem.omega_j"]),
    (
        "H_c through J_d and L_ω",
        &["elem.hc_formula", "elem.jd_formula"],
    ),
    (
        "∇J_d and J_a⁻¹∇J_a",
        &[
            "elem.nabla_jd_derivation",
            "elem.nabla_jd_skew",
            "elem.nabla_ja_derivation",
            "elem.nabla_ja_skew",
        ],
    ),
    (
        "H_c, J_d and conjugation",
        &["elem.hc_jd_commute", "elem.hc_conj", "elem.jd_conj"],
    ),
    ("J_a on ∇ω", &["elem.ja_nabla_omega"]),
    ("∇ and ♯", &["elem.nabla_sharp"]),
    ("d in four parts", &["geom.d_parts", "geom.dc_parts"]),
    ("Lee form", &["geom.lee", "geom.tau_one"]),
    (
        "∇J formulas",
        &["geom.koszul_nijenhuis", "geom.koszul_nijenhuis_twisted"],
    ),
    (
        "3-forms by type",
        &[
            "geom.three_form_plus",
            "geom.three_form_sum",
            "geom.three_form_minus",
        ],
    ),
    (
        "Dirac and H_c transports",
        &[
            "clif.d_transport",
            "clif.hc_transport",
            "clif.dc_transport",
            "clif.dhc_transport",
        ],
    ),
    ("[D, H_c] with correction term", &["clif.dhc_lemma"]),
    ("identity in the Clifford bundle", &["clif.master"]),
    (
        "properties of σ",
        &[
            "clif.sigma_derivation",
            "clif.sigma_skew",
            "clif.sigma_conj",
            "clif.sigma_jd",
            "clif.sigma_j_rules",
        ],
    ),
    (
        "σ through dω⁺",
        &[
            "clif.sigma_vectors",
            "clif.sigma_flat",
            "clif.sigma_flat_one_forms",
        ],
    ),
    ("trace of σ", &["clif.sigma_trace"]),
    ("ten-part D_σ lemma", &["clif.dsigma."]),
    (
        "adjoint of D_σ",
        &["clif.dsigma_adjoint", "clif.ldomega_adjoint"],
    ),
    (
        "Clifford multiplication by forms",
        &[
            "ext.clifmult_vector",
            "ext.clifmult_dw",
            "ext.clifmult_mu",
            "ext.clifmult_del",
        ],
    ),
    ("L_{Dω} transported", &["ext.ldomega_transport"]),
    ("[Λ, E_ξ]", &["ext.lambda_wedge"]),
    (
        "τ_μ and ρ_μ",
        &["ext.tau_mu_rho", "ext.tau_mubar_rho", "ext.rho_minus"],
    ),
    (
        "τ₊ locally",
        &[
            "ext.tau_plus_local",
            "ext.tau_plus_one_forms",
            "ext.tau_plus_conj_one_forms",
        ],
    ),
    (
        "D_σ wedge and interior parts",
        &["ext.dsigma_ext", "ext.dsigma_int", "ext.dsigma_split"],
    ),
    (
        "D_σ transported",
        &[
            "ext.dsigma_transport",
            "ext.dsigma_l_transport",
            "ext.dsigmac_l_transport",
        ],
    ),
    (
        "commutators of d and d* with L and Λ",
        &[
            "main.d_full",
            "main.dL",
            "main.dLambda",
            "main.dsL",
            "main.dsLambda",
        ],
    ),
    (
        "commutators of λ and τ with L and Λ",
        &[
            "main.lambdatau_full",
            "main.lambdaL",
            "main.lambdaLambda",
            "main.tauL",
            "main.tauLambda",
        ],
    ),
    ("bidegree components", &["cor."]),
    ("commutator table", &["comm."]),
    ("bidegree table", &["bideg."]),
    ("almost Kähler case", &["ak."]),
];

/// Entries matched by a coverage pattern.
pub fn coverage_matches<'a>(pattern: &str, entries: &'a [IdentityEntry]) -> Vec<&'a IdentityEntry> {
    if pattern.ends_with('.') {
        entries
            .iter()
            .filter(|e| e.id.starts_with(pattern))
            .collect()
    } else {
        entries.iter().filter(|e| e.id == pattern).collect()
    }
}
