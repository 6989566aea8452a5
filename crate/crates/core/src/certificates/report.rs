//! Route-by-route Knutson certification with named subchecks.

use super::knutson::check_initial_product;
use super::konig::{verify_konig_with_basis, KonigSearchOutcome};
use super::{
    check_lemma_detfk, discussion_order, knutson_polynomial, konig_search, polyomino_ideal,
    CertError,
};
use crate::grid::{classify, CellCollection, ClassificationRecord};
use crate::groebner::{ideal_equal, reduced_groebner_basis, Budget, GroebnerBasis, MonomialIdeal};
use crate::polyring::{Monomial, MonomialOrder, Polynomial};
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KnutsonRoute {
    Thin,
    Ladder,
    Konig,
    WeaklyClosedSum,
}

impl KnutsonRoute {
    pub fn name(self) -> &'static str {
        match self {
            KnutsonRoute::Thin => "thin-route",
            KnutsonRoute::Ladder => "ladder-route",
            KnutsonRoute::Konig => "konig-route",
            KnutsonRoute::WeaklyClosedSum => "weakly-closed-sum-route",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

impl Outcome {
    fn of(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subcheck {
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RouteAttempt {
    pub route: KnutsonRoute,
    /// `Pass` when every subcheck passed, `Skipped` on a budget abort or when the
    /// route does not apply.
    pub outcome: Outcome,
    pub subchecks: Vec<Subcheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Certified { route: KnutsonRoute },
    CertifiedWithProxy { route: KnutsonRoute, proxy_flags: Vec<String> },
    /// No route succeeded. This is not a disproof.
    NotCertified,
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        !matches!(self, Verdict::NotCertified)
    }

    pub fn route(&self) -> Option<KnutsonRoute> {
        match self {
            Verdict::Certified { route } | Verdict::CertifiedWithProxy { route, .. } => Some(*route),
            Verdict::NotCertified => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FSummary {
    pub degree: u32,
    pub initial: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnutsonReport {
    pub cells: usize,
    pub vertices: usize,
    pub order: String,
    pub verdict: Verdict,
    /// Degree and initial term of the polynomial `f` the firing route builds, if any.
    pub f_summary: Option<FSummary>,
    pub proxy_flags: Vec<String>,
    pub attempts: Vec<RouteAttempt>,
}

impl KnutsonReport {
    /// `key: value` lines in a fixed order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verdict = match &self.verdict {
            Verdict::Certified { .. } => "certified",
            Verdict::CertifiedWithProxy { .. } => "certified-with-proxy",
            Verdict::NotCertified => "not-certified",
        };
        out.push_str(&format!("cells: {}\n", self.cells));
        out.push_str(&format!("vertices: {}\n", self.vertices));
        out.push_str(&format!("order: {}\n", self.order));
        out.push_str(&format!("verdict: {verdict}\n"));
        out.push_str(&format!(
            "route: {}\n",
            self.verdict.route().map_or("none", |r| r.name())
        ));
        match &self.f_summary {
            Some(f) => {
                out.push_str(&format!("f-degree: {}\n", f.degree));
                out.push_str(&format!("f-initial: {}\n", f.initial));
            }
            None => out.push_str("f-degree: none\n"),
        }
        out.push_str(&format!("proxy-flags: {}\n", self.proxy_flags.join(",")));
        for attempt in &self.attempts {
            out.push_str(&format!(
                "attempt: {} {}\n",
                attempt.route.name(),
                attempt.outcome.name()
            ));
            for s in &attempt.subchecks {
                out.push_str(&format!("  {}: {}", s.name, s.outcome.name()));
                if !s.detail.is_empty() {
                    out.push_str(&format!(" ({})", s.detail));
                }
                out.push('\n');
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Shared state for the routes: one reduced basis of `I_P` under the discussion order.
struct Context<'a> {
    p: &'a CellCollection,
    rec: ClassificationRecord,
    order: MonomialOrder,
    budget: &'a Budget,
    basis: Option<Result<GroebnerBasis, CertError>>,
}

impl Context<'_> {
    fn basis(&mut self) -> Result<&GroebnerBasis, CertError> {
        if self.basis.is_none() {
            let ideal = polyomino_ideal(self.p).presentation();
            self.basis = Some(
                reduced_groebner_basis(&ideal, &self.order, self.budget).map_err(CertError::from),
            );
        }
        match self.basis.as_ref().expect("just filled") {
            Ok(gb) => Ok(gb),
            Err(e) => Err(e.clone()),
        }
    }
}

struct Attempt {
    route: KnutsonRoute,
    subchecks: Vec<Subcheck>,
    f_summary: Option<FSummary>,
    proxy_flags: Vec<String>,
}

impl Attempt {
    fn new(route: KnutsonRoute) -> Self {
        Attempt {
            route,
            subchecks: Vec::new(),
            f_summary: None,
            proxy_flags: Vec::new(),
        }
    }

    /// Records a subcheck and reports whether it passed.
    fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) -> bool {
        self.subchecks.push(Subcheck {
            name: name.into(),
            outcome: Outcome::of(ok),
            detail: detail.into(),
        });
        ok
    }

    fn finish(self, result: Result<bool, CertError>) -> Result<(RouteAttempt, Option<Self>), CertError> {
        let (outcome, subchecks) = match result {
            Ok(true) => (Outcome::Pass, self.subchecks.clone()),
            Ok(false) => (Outcome::Fail, self.subchecks.clone()),
            Err(e) if e.is_budget() => {
                let mut subchecks = self.subchecks.clone();
                subchecks.push(Subcheck {
                    name: "budget".into(),
                    outcome: Outcome::Skipped,
                    detail: e.to_string(),
                });
                (Outcome::Skipped, subchecks)
            }
            Err(e) => return Err(e),
        };
        let passed = outcome == Outcome::Pass;
        Ok((
            RouteAttempt {
                route: self.route,
                outcome,
                subchecks,
            },
            passed.then_some(self),
        ))
    }
}

fn monic_set(polys: &[Polynomial], order: &MonomialOrder) -> BTreeSet<String> {
    polys.iter().map(|g| g.monic(order).to_text(order)).collect()
}

fn basis_is_generators(p: &CellCollection, gb: &GroebnerBasis) -> bool {
    let gens: Vec<Polynomial> = polyomino_ideal(p)
        .binomials
        .into_iter()
        .map(|b| b.polynomial)
        .collect();
    gb.elements.len() == gens.len() && monic_set(&gb.elements, &gb.order) == monic_set(&gens, &gb.order)
}

fn thin_route(ctx: &mut Context, a: &mut Attempt) -> Result<bool, CertError> {
    let detail = if ctx.rec.thin_thm51 {
        "hold"
    } else if ctx.rec.thin_reflected {
        "hold only after reflection"
    } else {
        "fail"
    };
    if !a.check("thin-conditions", ctx.rec.thin_thm51, detail) {
        return Ok(false);
    }
    let gb = ctx.basis()?.clone();
    let equal = basis_is_generators(ctx.p, &gb);
    let squarefree = gb.initial_monomials().iter().all(Monomial::is_squarefree);
    let ok1 = a.check(
        "reduced-basis-equals-generators",
        equal,
        format!("{} basis elements", gb.elements.len()),
    );
    let ok2 = a.check("squarefree-initials", squarefree, "");
    Ok(ok1 && ok2)
}

fn ladder_route(ctx: &mut Context, a: &mut Attempt) -> Result<bool, CertError> {
    if !a.check("is-ladder", ctx.rec.is_ladder, "") {
        return Ok(false);
    }
    let product = check_initial_product(ctx.p)?;
    let mut ok = a.check(
        "initial-product",
        product.passed,
        format!("{}, in(f) = {}", product.method, product.initial),
    );
    let kp = knutson_polynomial(ctx.p)?;
    a.f_summary = Some(FSummary {
        degree: kp.degree(),
        initial: kp.initial().to_string(),
    });
    for factor in kp.factors.iter().filter(|f| !f.block.cells.is_empty()) {
        let k = factor.block.k;
        match check_lemma_detfk(ctx.p, k, ctx.budget) {
            Ok(m) => {
                ok &= a.check(
                    format!("det-membership-{k}"),
                    m.passed(),
                    format!("{} cells", m.in_extended.len()),
                );
            }
            Err(CertError::Precondition(msg)) => {
                ok &= a.check(format!("det-membership-{k}"), false, msg);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ok)
}

fn konig_route(ctx: &mut Context, a: &mut Attempt) -> Result<bool, CertError> {
    let cert = match konig_search(ctx.p, super::DEFAULT_NODE_LIMIT)? {
        KonigSearchOutcome::Found(cert) => {
            a.check("konig-search", true, format!("{:?}", cert.strategy));
            cert
        }
        KonigSearchOutcome::Exhausted { nodes, complete } => {
            let why = if complete { "no certificate exists" } else { "strategies exhausted" };
            a.check("konig-search", false, format!("{why} after {nodes} nodes"));
            return Ok(false);
        }
        KonigSearchOutcome::NodeLimit { nodes } => {
            a.check("konig-search", false, format!("node limit after {nodes} nodes"));
            return Ok(false);
        }
    };
    let gb = ctx.basis()?.clone();
    let verification = verify_konig_with_basis(ctx.p, &cert, &gb)?;
    let height_detail = verification.height.to_string();
    if let super::HeightStatus::Assumed { .. } = verification.height {
        a.proxy_flags.push("height-assumed".into());
    }
    let mut ok = a.check("konig-verify", verification.passed(), height_detail);
    let initial = MonomialIdeal::new(gb.initial_monomials());
    let squarefree = initial.as_squarefree();
    ok &= a.check("initial-ideal-squarefree", squarefree.is_some(), "");
    if let Some(sq) = squarefree {
        ok &= a.check("initial-ideal-unmixed", sq.is_unmixed()?, "proxy for unmixedness of I_P");
    }
    a.proxy_flags.push("proxy-unmixed".into());
    let f = cert
        .chosen
        .iter()
        .fold(Monomial::one(), |acc, s| acc.mul(&s.claimed_monomial()));
    a.f_summary = Some(FSummary {
        degree: f.degree(),
        initial: f.to_string(),
    });
    Ok(ok)
}

fn weakly_closed_route(ctx: &mut Context, a: &mut Attempt) -> Result<bool, CertError> {
    let Some(path) = ctx.rec.weakly_closed_path.clone() else {
        a.check("weakly-closed-path", false, "none found");
        return Ok(false);
    };
    a.check("weakly-closed-path", true, format!("{} cells", path.len()));
    let mut p1 = ctx.p.clone();
    p1.remove(&path[0]);
    let mut p2 = ctx.p.clone();
    p2.remove(&path[path.len() - 1]);
    let ambient = ctx.p.vertices();
    let sum = super::polyomino_ideal_in(&p1, &ambient).sum(&super::polyomino_ideal_in(&p2, &ambient));
    let whole = polyomino_ideal(ctx.p).presentation();
    let equal = ideal_equal(&sum, &whole, &ctx.order, ctx.budget)?;
    let ok1 = a.check("sum-equality", equal, "");
    let simple = |q: &CellCollection| {
        let r = classify(q);
        r.is_polyomino && r.is_simple
    };
    let ok2 = a.check("parts-simple", simple(&p1) && simple(&p2), "");
    Ok(ok1 && ok2)
}

/// Tries the thin, ladder, König and weakly-closed-sum routes in that order and stops at
/// the first one whose subchecks all pass.
pub fn knutson_certify(p: &CellCollection, budget: &Budget) -> Result<KnutsonReport, CertError> {
    if p.is_empty() {
        return Err(CertError::Precondition("empty collection of cells".into()));
    }
    let order = discussion_order(p);
    let mut ctx = Context {
        p,
        rec: classify(p),
        order: order.clone(),
        budget,
        basis: None,
    };
    type RouteFn = fn(&mut Context, &mut Attempt) -> Result<bool, CertError>;
    let routes: [(KnutsonRoute, RouteFn); 4] = [
        (KnutsonRoute::Thin, thin_route),
        (KnutsonRoute::Ladder, ladder_route),
        (KnutsonRoute::Konig, konig_route),
        (KnutsonRoute::WeaklyClosedSum, weakly_closed_route),
    ];
    let mut attempts = Vec::new();
    let mut winner = None;
    for (route, run) in routes {
        let mut a = Attempt::new(route);
        let result = run(&mut ctx, &mut a);
        let (attempt, passed) = a.finish(result)?;
        attempts.push(attempt);
        if let Some(a) = passed {
            winner = Some(a);
            break;
        }
    }
    let (verdict, f_summary, proxy_flags) = match winner {
        Some(a) if a.proxy_flags.is_empty() => (Verdict::Certified { route: a.route }, a.f_summary, a.proxy_flags),
        Some(a) => (
            Verdict::CertifiedWithProxy {
                route: a.route,
                proxy_flags: a.proxy_flags.clone(),
            },
            a.f_summary,
            a.proxy_flags,
        ),
        None => (Verdict::NotCertified, None, Vec::new()),
    };
    Ok(KnutsonReport {
        cells: p.len(),
        vertices: p.vertices().len(),
        order: order.descriptor(),
        verdict,
        f_summary,
        proxy_flags,
        attempts,
    })
}
