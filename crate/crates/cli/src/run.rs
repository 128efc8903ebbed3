//! Builds the objects of a run spec and executes its checks.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::json;
use sha2::{Digest, Sha256};
use torsion_core::apolarity::{
    annihilator_in_system, quotient_annihilator_identity, reducedness_profile, PolyIdeal, Polynomial,
    TruncatedInverseSystem,
};
use torsion_core::exec::Execution;
use torsion_core::harness::limits::{check_limits_commute, Diagram};
use torsion_core::harness::psi::{check_radical_class, psi_radical, RingAlgebra};
use torsion_core::harness::theorems::{
    check_annihilation_equivalence, check_annihilator_quotient, check_hom_radical, check_hom_radical_equivalence,
    check_preradical, check_splitting, check_torsion_radical_equivalence, check_ttf, gabriel_topology,
    gamma_radical_holds,
};
use torsion_core::harness::{FamilyBounds, FamilyFilter, ModuleFamily, Report, Verdict, Witness};
use torsion_core::homological::{
    check_idempotent_proregularity, check_local_annihilation, check_spectral_vnr, ext, koszul_cohomology, tor,
    weak_proregularity_check, Homology, ProBounds, TorsionResolution,
};
use torsion_core::linalg::ResidueMatrix;
use torsion_core::ring::nilradical;
use torsion_core::torsion::{self, ChainProfile};
use torsion_core::{FinModule, FiniteRing, Ideal, ModuleMap, Submodule};

use crate::checks::lookup;
use crate::error::InputError;
use crate::spec::{
    Bounds, CheckParams, CoeffDoc, ElementDoc, FamilyDoc, FilterKind, ModuleDoc, ModuleKind, PolyIdealDoc, RunSpec,
    TermDoc,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Elements of a submodule are listed in reports up to this many.
const LIST_LIMIT: u128 = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckTiming {
    pub check: String,
    pub ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub total_ms: f64,
    pub checks: Vec<CheckTiming>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool_version: String,
    /// SHA-256 of the canonical JSON of the normalized run spec.
    pub input_digest: String,
    pub seed: u64,
    pub verdict: Verdict,
    pub reports: Vec<Report>,
    pub timing: Timing,
}

impl ReportDocument {
    pub fn exit_code(&self) -> i32 {
        exit_code(self.verdict)
    }
}

pub fn exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Pass => 0,
        Verdict::Fail => 1,
        Verdict::Undetermined => 2,
    }
}

/// The objects a run spec declares, built over its ring.
pub struct Context {
    pub ring: Option<Arc<FiniteRing>>,
    pub ideals: BTreeMap<String, Ideal>,
    pub modules: BTreeMap<String, FinModule>,
    pub families: BTreeMap<String, ModuleFamily>,
    pub polys: BTreeMap<String, PolyIdeal>,
    pub bounds: Bounds,
    pub seed: u64,
}

fn element(ring: &FiniteRing, e: &ElementDoc, context: &str) -> Result<Vec<u64>, InputError> {
    let v = e.coords();
    if v.len() != ring.rank() {
        return Err(InputError::invalid(
            context,
            format!("element {v:?} has {} coordinates but the ring has rank {}", v.len(), ring.rank()),
        ));
    }
    Ok(ring.normalize(&v))
}

fn coefficient(c: &CoeffDoc, context: &str) -> Result<BigRational, InputError> {
    match c {
        CoeffDoc::Int(x) => Ok(BigRational::from_integer(BigInt::from(*x))),
        CoeffDoc::Text(s) => {
            BigRational::from_str(s.trim()).map_err(|_| InputError::invalid(context, format!("bad coefficient `{s}`")))
        }
    }
}

pub fn polynomial(vars: usize, terms: &[TermDoc], context: &str) -> Result<Polynomial, InputError> {
    let mut out = Vec::new();
    for t in terms {
        let (e, c) = match t {
            TermDoc::Pair(e, c) | TermDoc::Table { exp: e, coeff: c } => (e, c),
        };
        out.push((e.clone(), coefficient(c, context)?));
    }
    Polynomial::from_terms(vars, out).map_err(|e| InputError::invalid(context, e))
}

fn poly_ideal(doc: &PolyIdealDoc) -> Result<PolyIdeal, InputError> {
    let context = format!("poly_ideal `{}`", doc.name.as_deref().unwrap_or_default());
    let gens = doc.generators.iter().map(|g| polynomial(doc.vars, g, &context)).collect::<Result<Vec<_>, _>>()?;
    PolyIdeal::new(doc.vars, gens).map_err(|e| InputError::invalid(context, e))
}

fn build_module(
    ring: &Arc<FiniteRing>,
    doc: &ModuleDoc,
    ideals: &BTreeMap<String, Ideal>,
    built: &BTreeMap<String, FinModule>,
) -> Result<FinModule, InputError> {
    let name = doc.name.clone().unwrap_or_default();
    let context = format!("module `{name}`");
    let m = match doc.kind {
        ModuleKind::Regular => FinModule::regular(ring),
        ModuleKind::Zero => FinModule::zero(ring),
        ModuleKind::Cyclic => FinModule::cyclic(ring, &ideals[doc.ideal.as_deref().expect("validated")]),
        ModuleKind::Free => FinModule::free_quotient(ring, doc.rank.expect("validated"), &[])
            .map_err(|e| InputError::invalid(&context, e))?,
        ModuleKind::Quotient => {
            let rank = doc.rank.expect("validated");
            let width = rank * ring.rank();
            if let Some(bad) = doc.relations.iter().find(|r| r.len() != width) {
                return Err(InputError::invalid(
                    &context,
                    format!("relation {bad:?} should have {width} coordinates (rank × ring rank)"),
                ));
            }
            FinModule::free_quotient(ring, rank, &doc.relations).map_err(|e| InputError::invalid(&context, e))?
        }
        ModuleKind::Sum => {
            let mut acc = FinModule::zero(ring);
            for s in &doc.of {
                acc = acc.direct_sum(&built[s]).map_err(|e| InputError::invalid(&context, e))?;
            }
            acc
        }
    };
    Ok(m.with_label(name))
}

fn filter(kind: FilterKind, ideal: Option<&Ideal>) -> FamilyFilter {
    let i = || ideal.expect("validated").clone();
    match kind {
        FilterKind::All => FamilyFilter::All,
        FilterKind::Reduced => FamilyFilter::Reduced(i()),
        FilterKind::Coreduced => FamilyFilter::Coreduced(i()),
        FilterKind::Semisimple => FamilyFilter::Semisimple,
        FilterKind::Annihilated => FamilyFilter::Annihilated(i()),
    }
}

fn build_family(
    ring: &Arc<FiniteRing>,
    doc: &FamilyDoc,
    ideals: &BTreeMap<String, Ideal>,
    modules: &BTreeMap<String, FinModule>,
    bounds: &Bounds,
    seed: u64,
) -> ModuleFamily {
    let f = filter(doc.filter, doc.ideal.as_ref().map(|n| &ideals[n]));
    if !doc.modules.is_empty() {
        let members = doc.modules.iter().map(|n| modules[n].clone()).collect();
        let mut fam = ModuleFamily::from_modules(ring, members, doc.name.clone().unwrap_or_default());
        fam.seed = seed;
        return fam.restrict(f);
    }
    let mut fb = FamilyBounds::new(doc.max_generators, doc.max_order as u128).with_seed(seed);
    fb.enumeration_bound = bounds.submodule_bound as u128;
    if doc.cyclic_sums {
        fb = fb.with_cyclic_sums();
    }
    ModuleFamily::generate(ring, fb, f, Execution::Parallel)
}

impl Context {
    pub fn build(spec: &RunSpec) -> Result<Context, InputError> {
        let ring = match &spec.ring {
            Some(r) => Some(r.build().map_err(|e| InputError::invalid("ring", e))?),
            None => None,
        };
        let mut ideals = BTreeMap::new();
        let mut modules = BTreeMap::new();
        let mut families = BTreeMap::new();
        if let Some(r) = &ring {
            for d in &spec.ideals {
                let name = d.name.clone().expect("normalized");
                let context = format!("ideal `{name}`");
                let gens = d.gens.iter().map(|g| element(r, g, &context)).collect::<Result<Vec<_>, _>>()?;
                ideals.insert(name, Ideal::generate(r, &gens));
            }
            for d in &spec.modules {
                let m = build_module(r, d, &ideals, &modules)?;
                modules.insert(d.name.clone().expect("normalized"), m);
            }
            for d in &spec.families {
                let fam = build_family(r, d, &ideals, &modules, &spec.bounds, spec.seed);
                families.insert(d.name.clone().expect("normalized"), fam);
            }
        }
        let mut polys = BTreeMap::new();
        for d in &spec.poly_ideals {
            polys.insert(d.name.clone().expect("normalized"), poly_ideal(d)?);
        }
        // Elements given to checks are validated up front too.
        for c in &spec.checks {
            if let Some(r) = &ring {
                for e in &c.0.sequence {
                    element(r, e, &format!("sequence of check `{}`", c.0.name))?;
                }
            }
        }
        Ok(Context { ring, ideals, modules, families, polys, bounds: spec.bounds, seed: spec.seed })
    }

    fn ring(&self) -> &Arc<FiniteRing> {
        self.ring.as_ref().expect("validated")
    }

    fn ideal(&self, p: &CheckParams) -> &Ideal {
        &self.ideals[p.ideal.as_deref().expect("validated")]
    }

    fn module(&self, name: Option<&str>) -> &FinModule {
        &self.modules[name.expect("validated")]
    }

    fn family(&self, name: Option<&str>) -> &ModuleFamily {
        &self.families[name.expect("validated")]
    }

    /// The modules a per-member check runs over.
    fn members(&self, p: &CheckParams) -> Vec<FinModule> {
        if let Some(f) = &p.family {
            return self.families[f].modules.clone();
        }
        if !p.modules.is_empty() {
            return p.modules.iter().map(|n| self.modules[n].clone()).collect();
        }
        vec![self.module(p.module.as_deref()).clone()]
    }

    fn submodule_bound(&self) -> u128 {
        self.bounds.submodule_bound as u128
    }

    fn sequence(&self, p: &CheckParams) -> Vec<Vec<u64>> {
        let r = self.ring();
        p.sequence.iter().map(|e| r.normalize(&e.coords())).collect()
    }
}

type CheckResult = torsion_core::Result<Report>;

/// Runs `f` on every member and folds the results into one report. A single
/// member's report is returned as is.
fn per_member(ctx: &Context, p: &CheckParams, f: impl Fn(&FinModule) -> CheckResult + Sync + Send) -> CheckResult {
    let members = ctx.members(p);
    let mut results = Execution::Parallel.map(&members, |m| f(m));
    if results.len() == 1 {
        return results.pop().expect("one result");
    }
    let info = lookup(&p.name).expect("validated");
    let mut report = Report::new(p.name.clone(), info.summary).with_seed(ctx.seed);
    report.detail("members", members.len());
    for r in results {
        report.absorb(r?);
    }
    Ok(report)
}

fn elements_doc(m: &FinModule, s: &Submodule) -> serde_json::Value {
    if m.cardinality(s) <= LIST_LIMIT {
        json!(m.submodule_elements(s))
    } else {
        json!(null)
    }
}

/// Records a submodule and compares it with `expect_order` and
/// `expect_elements`.
fn submodule_result(report: &mut Report, p: &CheckParams, m: &FinModule, s: &Submodule, what: &str) {
    let order = m.cardinality(s);
    report.detail("order", order as u64);
    report.detail("generators", m.submodule_generators(s));
    report.detail("elements", elements_doc(m, s));
    if let Some(e) = p.expect_order {
        if order != e as u128 {
            report.fail(Witness::submodule(m, s, format!("{what} has order {order}, expected {e}")));
        }
    }
    if let Some(expected) = &p.expect_elements {
        let want: BTreeSet<Vec<u64>> = expected.iter().map(|e| m.normalize(&e.coords())).collect();
        let got: BTreeSet<Vec<u64>> = m.submodule_elements(s).into_iter().collect();
        if want != got {
            report.fail(Witness::submodule(m, s, format!("{what} differs from the expected elements {want:?}")));
        }
    }
}

fn predicate(report: &mut Report, m: &FinModule, label: &str, actual: bool, expect: Option<bool>) {
    report.detail(label, actual);
    if let Some(e) = expect {
        if actual != e {
            report.fail(Witness::module(m, format!("{label} is {actual}, expected {e}")));
        }
    }
}

fn homology_result(report: &mut Report, p: &CheckParams, h: &Homology, what: &str) {
    let order = h.order();
    report.detail("order", order as u64);
    report.detail("invariants", h.module.abelian_invariants());
    if let Some(e) = p.expect_order {
        if order != e as u128 {
            report.fail(Witness::module(&h.module, format!("{what} has order {order}, expected {e}")));
        }
    }
}

fn expect_holds(report: &mut Report, p: &CheckParams, holds: bool, what: &str) {
    report.detail("holds", holds);
    if let Some(e) = p.expect {
        if holds != e {
            let w = Witness {
                module: torsion_core::harness::ModuleSummary {
                    label: what.into(),
                    order: 0,
                    invariants: vec![],
                    rank: 0,
                    relations: vec![],
                },
                element: None,
                submodule: None,
                note: format!("{what} is {holds}, expected {e}"),
            };
            report.fail(w);
        }
    }
}

fn new_report(p: &CheckParams) -> Report {
    Report::new(p.name.clone(), lookup(&p.name).expect("validated").summary)
}

fn ring_info(ctx: &Context, p: &CheckParams) -> CheckResult {
    let r = ctx.ring();
    let mut report = new_report(p);
    report.count();
    report.detail("label", r.label());
    report.detail("order", r.order() as u64);
    report.detail("modulus", r.modulus());
    report.detail("rank", r.rank());
    let ideals = r.ideals();
    report.detail("ideals", ideals.len());
    report.detail("maximal_ideals", r.maximal_ideals().iter().map(|m| m.group_generators()).collect::<Vec<_>>());
    report.detail("idempotents", r.idempotents());
    report.detail("nilradical", nilradical(r).group_generators());
    report.detail("von_neumann_regular", r.is_von_neumann_regular());
    Ok(report)
}

fn ideal_info(ctx: &Context, p: &CheckParams) -> CheckResult {
    let i = ctx.ideal(p);
    let mut report = new_report(p);
    report.count();
    report.detail("order", i.order() as u64);
    report.detail("generators", i.group_generators());
    let s = i.power_stabilization_index();
    report.detail("power_stabilization_index", s);
    report.detail("power_orders", (1..=s + 1).map(|k| i.power(k).order() as u64).collect::<Vec<_>>());
    report.detail("idempotent", i.is_idempotent());
    report.detail("idempotent_generator", json!(i.idempotent_generator()));
    report.detail("radical", i.radical().group_generators());
    Ok(report)
}

fn module_info(ctx: &Context, p: &CheckParams) -> CheckResult {
    let m = ctx.module(p.module.as_deref());
    let i = ctx.ideal(p);
    let mut report = new_report(p);
    report.count();
    report.detail("label", m.label());
    report.detail("order", m.order() as u64);
    report.detail("invariants", m.abelian_invariants());
    let profile = ChainProfile::compute(m, i);
    report.detail("annihilator_chain", profile.ascending.iter().map(|s| m.cardinality(s) as u64).collect::<Vec<_>>());
    report.detail("multiple_chain", profile.descending.iter().map(|s| m.cardinality(s) as u64).collect::<Vec<_>>());
    report.detail("reduction_index", profile.asc_index);
    report.detail("coreduction_index", profile.desc_index);
    report.detail("reduced", profile.asc_index == 1);
    report.detail("coreduced", profile.desc_index == 1);
    report.detail("annihilator", elements_doc(m, &m.annihilator(i)));
    Ok(report)
}

fn limits(ctx: &Context, p: &CheckParams) -> CheckResult {
    let i = ctx.ideal(p);
    match p.diagram.as_deref().unwrap_or("discrete") {
        "completion" => {
            // The tower M/I^{k+1}M → M/I^kM, stage by stage.
            let mut report = new_report(p).with_seed(ctx.seed);
            for m in ctx.members(p) {
                let tower = torsion::lambda(&m, i).tower;
                let n = m.modulus();
                let maps: Vec<ModuleMap> = tower
                    .windows(2)
                    .map(|w| ModuleMap::new(&w[1], &w[0], ResidueMatrix::identity(n, m.rank())))
                    .collect::<torsion_core::Result<_>>()?;
                let diagram =
                    if maps.is_empty() { Diagram::Discrete(vec![tower[0].clone()]) } else { Diagram::Tower(maps) };
                report.absorb(check_limits_commute(i, &diagram)?);
            }
            Ok(report)
        }
        _ => check_limits_commute(i, &Diagram::Discrete(ctx.members(p))),
    }
}

fn execute(ctx: &Context, p: &CheckParams) -> CheckResult {
    let bound = ctx.submodule_bound();
    let qmax = p.qmax.unwrap_or(ctx.bounds.resolution_length);
    let pro = ProBounds { degree_bound: ctx.bounds.degree_bound, offset_bound: ctx.bounds.offset_bound };
    match p.name.as_str() {
        "ring_info" => ring_info(ctx, p),
        "ideal_info" => ideal_info(ctx, p),
        "module_info" => module_info(ctx, p),
        "gamma" | "gamma_bar" => per_member(ctx, p, |m| {
            let i = ctx.ideal(p);
            let mut report = new_report(p);
            report.count();
            let s = if p.name == "gamma" { torsion::gamma(m, i) } else { torsion::gamma_bar(m, i) };
            submodule_result(&mut report, p, m, &s, &p.name);
            Ok(report)
        }),
        "lambda" => per_member(ctx, p, |m| {
            let c = torsion::lambda(m, ctx.ideal(p));
            let mut report = new_report(p);
            report.count();
            report.detail("stabilization_index", c.stabilization_index);
            report.detail("kernel", elements_doc(m, &c.kernel));
            report.detail("order", c.module.order() as u64);
            report.detail("invariants", c.module.abelian_invariants());
            report.detail("tower_orders", c.tower.iter().map(|t| t.order() as u64).collect::<Vec<_>>());
            if let Some(e) = p.expect_order {
                if c.module.order() != e as u128 {
                    report.fail(Witness::module(m, format!("Λ_I(M) has order {}, expected {e}", c.module.order())));
                }
            }
            Ok(report)
        }),
        "psi_radical" => {
            let r = ctx.ring_of(p);
            let psi = psi_radical(&RingAlgebra::whole(&r), ctx.ideal(p), bound)?;
            let mut report = new_report(p);
            report.count();
            submodule_result(&mut report, p, &FinModule::regular(&r), &psi, "Ψ_I(R)");
            Ok(report)
        }
        "reduced" | "coreduced" | "torsion" | "complete" => per_member(ctx, p, |m| {
            let i = ctx.ideal(p);
            let mut report = new_report(p);
            report.count();
            let actual = match (p.name.as_str(), p.k) {
                ("reduced", None) => torsion::is_reduced(m, i),
                ("reduced", Some(k)) => torsion::is_k_reduced(m, i, k),
                ("coreduced", None) => torsion::is_coreduced(m, i),
                ("coreduced", Some(k)) => torsion::is_k_coreduced(m, i, k),
                ("torsion", _) => torsion::is_torsion(m, i),
                _ => torsion::is_complete(m, i),
            };
            predicate(&mut report, m, &p.name, actual, p.expect);
            Ok(report)
        }),
        "locally_nilradical" => per_member(ctx, p, |m| {
            let a = ctx.sequence(p)[0].clone();
            let mut report = new_report(p);
            report.count();
            submodule_result(&mut report, p, m, &torsion::locally_nilradical(m, &a), "a·Γ_(a)(M)");
            Ok(report)
        }),
        "preradical" => {
            let fam = ctx.family(p.family.as_deref()).clone().with_maps(4, Execution::Parallel);
            Ok(check_preradical(&fam, ctx.ideal(p)))
        }
        "hom_radical" => per_member(ctx, p, |m| Ok(check_hom_radical(m, ctx.ideal(p)))),
        "annihilator_quotient" => {
            per_member(ctx, p, |m| Ok(check_annihilator_quotient(m, ctx.ideal(p), p.k.unwrap_or(1))))
        }
        "hom_radical_equivalence" | "torsion_radical_equivalence" => {
            let a = ctx.family(p.family.as_deref());
            let b = p.family_b.as_deref().map_or(a, |n| ctx.family(Some(n)));
            let eq = if p.name == "hom_radical_equivalence" {
                check_hom_radical_equivalence(a, b, ctx.ideal(p), bound)
            } else {
                check_torsion_radical_equivalence(a, b, ctx.ideal(p), p.k.unwrap_or(1), bound)
            };
            let holds = eq.conditions[0];
            let mut report = eq.report;
            expect_holds(&mut report, p, holds, "the radical condition");
            Ok(report)
        }
        "gamma_radical" => per_member(ctx, p, |m| {
            let mut report = new_report(p);
            report.count();
            if !gamma_radical_holds(m, ctx.ideal(p)) {
                report.fail(Witness::module(m, "Γ_I(M/Γ_I(M)) ≠ 0"));
            }
            Ok(report)
        }),
        "artinian_reduction" => per_member(ctx, p, |m| {
            let i = ctx.ideal(p);
            let s = i.power_stabilization_index();
            let mut report = new_report(p);
            report.count();
            report.detail("stabilization_index", s);
            let k = torsion::reduction_index(m, i);
            report.detail("reduction_index", k);
            if k > s {
                report.fail(Witness::module(m, format!("reduction index {k} exceeds {s}")));
            }
            if !torsion::is_k_reduced(m, i, s) || !torsion::is_k_coreduced(m, i, s) {
                report.fail(Witness::module(m, format!("not I^{s}-reduced and I^{s}-coreduced")));
            }
            Ok(report)
        }),
        "gamma_bar_agreement" => per_member(ctx, p, |m| {
            let i = ctx.ideal(p);
            let mut report = new_report(p);
            report.count();
            let g = torsion::gamma(m, i);
            let gb = torsion::gamma_bar(m, i);
            let reduced = torsion::is_reduced(m, i);
            report.detail("reduced", reduced);
            report.detail("equal", g == gb);
            if !g.is_subset_of(&gb) {
                report.fail(Witness::submodule(m, &g, "Γ_I(M) is not contained in Γ̄_I(M)"));
            } else if reduced && g != gb {
                report.fail(Witness::submodule(m, &gb, "Γ̄_I(M) exceeds Γ_I(M) on a reduced module"));
            }
            Ok(report)
        }),
        "lambda_of_coreduced" => per_member(ctx, p, |m| {
            let i = ctx.ideal(p);
            let mut report = new_report(p);
            let coreduced = torsion::is_coreduced(m, i);
            report.detail("coreduced", coreduced);
            if coreduced {
                report.count();
                let kernel = torsion::lambda(m, i).kernel;
                if kernel != m.ideal_scale(i) {
                    report.fail(Witness::submodule(m, &kernel, "Λ_I(M) differs from M/IM"));
                }
            }
            Ok(report)
        }),
        "ttf" => Ok(check_ttf(ctx.family(p.family.as_deref()), ctx.ideal(p), bound)),
        "gabriel_topology" => {
            let f = p.family.as_deref().map_or(FamilyFilter::All, |n| ctx.family(Some(n)).filter.clone());
            let (topology, mut report) = gabriel_topology(ctx.ring(), ctx.ideal(p), &f);
            report.detail("size", topology.len());
            Ok(report)
        }
        "splitting" => per_member(ctx, p, |m| {
            let i = ctx.ideal(p);
            if ctx.members(p).len() > 1 && !torsion::is_reduced(m, i) {
                // Only reduced members are in scope when sweeping.
                return Ok(new_report(p));
            }
            Ok(check_splitting(m, i, bound))
        }),
        "annihilation_equivalence" => per_member(ctx, p, |m| {
            let eq = check_annihilation_equivalence(m, ctx.ideal(p));
            let holds = eq.conditions[0];
            let mut report = eq.report;
            if let Some(e) = p.expect {
                predicate(&mut report, m, "annihilated", holds, Some(e));
            }
            Ok(report)
        }),
        "radical_class" => {
            let r = ctx.ring_of(p);
            let mut algebras = vec![RingAlgebra::whole(&r)];
            for j in r.ideals() {
                algebras.push(RingAlgebra::quotient(&j));
                algebras.push(RingAlgebra::ideal(&j));
            }
            check_radical_class(ctx.ideal(p), &algebras, bound)
        }
        "limits_commute" => limits(ctx, p),
        "family_closure" => Ok(ctx.family(p.family.as_deref()).spot_check_closures(p.samples.unwrap_or(16), bound)),
        "ext" | "tor" => {
            let a = ctx.module(p.source.as_deref());
            let m = ctx.module(p.module.as_deref());
            let q = p.q.unwrap_or(0);
            let mut report = new_report(p);
            report.count();
            report.detail("q", q);
            let (h, what) = if p.name == "ext" { (ext(q, a, m)?, "Ext") } else { (tor(q, a, m)?, "Tor") };
            homology_result(&mut report, p, &h, &format!("{what}_{q}"));
            Ok(report)
        }
        "local_cohomology" | "local_homology" => {
            let m = ctx.module(p.module.as_deref());
            let q = p.q.unwrap_or(0);
            let t = TorsionResolution::new(ctx.ideal(p), q.max(1));
            let v = if p.name == "local_cohomology" { t.cohomology(q, m)? } else { t.homology(q, m)? };
            let mut report = new_report(p);
            report.count();
            report.detail("q", q);
            report.detail("stage", v.stage);
            report.detail("stable", v.stable);
            homology_result(&mut report, p, &v.value, &format!("degree {q}"));
            Ok(report)
        }
        "koszul_cohomology" => {
            let degree = p.p.unwrap_or(0);
            let h = koszul_cohomology(ctx.ring(), &ctx.sequence(p), degree);
            let mut report = new_report(p);
            report.count();
            report.detail("p", degree);
            homology_result(&mut report, p, &h, &format!("H^{degree}"));
            Ok(report)
        }
        "weak_proregularity" => {
            let mut report = weak_proregularity_check(ctx.ring(), &ctx.sequence(p), pro).to_report();
            report.seed = Some(ctx.seed);
            Ok(report)
        }
        "idempotent_proregularity" => check_idempotent_proregularity(ctx.ideal(p), pro),
        "spectral_vnr" => per_member(ctx, p, |m| check_spectral_vnr(ctx.ideal(p), m, qmax, Execution::Sequential)),
        "local_annihilation" => per_member(ctx, p, |m| check_local_annihilation(ctx.ideal(p), m, qmax)),
        "apolarity_annihilator" | "reducedness_profile" | "quotient_annihilator" => apolarity(ctx, p),
        other => unreachable!("unregistered check {other}"),
    }
}

fn apolarity(ctx: &Context, p: &CheckParams) -> CheckResult {
    let j = &ctx.polys[p.poly_ideal.as_deref().expect("validated")];
    let degree = p.degree.unwrap_or(ctx.bounds.degree_bound);
    let system = TruncatedInverseSystem::new(j.num_vars(), degree);
    let mut report = new_report(p);
    report.count();
    report.detail("degree", degree);
    let fail = |report: &mut Report, note: String| {
        let w = Witness {
            module: torsion_core::harness::ModuleSummary {
                label: format!("k[X]_≤{degree}"),
                order: 0,
                invariants: vec![],
                rank: system.dimension(),
                relations: vec![],
            },
            element: None,
            submodule: None,
            note,
        };
        report.fail(w);
    };
    match p.name.as_str() {
        "apolarity_annihilator" => {
            let power = p.power.unwrap_or(1);
            let sub = annihilator_in_system(&system, &j.power(power))?;
            let basis: Vec<String> = sub.polynomials(&system).iter().map(|f| f.render("X")).collect();
            report.detail("power", power);
            report.detail("dim", sub.dim());
            report.detail("basis", basis.clone());
            if let Some(e) = p.expect_dim {
                if sub.dim() != e {
                    fail(&mut report, format!("dimension {} ≠ expected {e}", sub.dim()));
                }
            }
            if let Some(e) = &p.expect_basis {
                if *e != basis {
                    fail(&mut report, format!("basis {basis:?} ≠ expected {e:?}"));
                }
            }
        }
        "reducedness_profile" => {
            let kmax = p.kmax.unwrap_or(3);
            let prof = reducedness_profile(&system, j, kmax)?;
            report.detail("dims", prof.dims.clone());
            report.detail("reduced", prof.reduced);
            report.detail("witness", json!(prof.witness_text));
            if let Some(e) = &p.expect_dims {
                if *e != prof.dims {
                    fail(&mut report, format!("dimensions {:?} ≠ expected {e:?}", prof.dims));
                }
            }
            if let Some(e) = p.expect {
                if e != prof.reduced {
                    fail(&mut report, format!("reduced is {}, expected {e}", prof.reduced));
                }
            }
            if let Some(e) = &p.expect_witness {
                if prof.witness_text.as_ref() != Some(e) {
                    fail(&mut report, format!("witness {:?} ≠ expected {e}", prof.witness_text));
                }
            }
        }
        _ => {
            let q = quotient_annihilator_identity(&system, j)?;
            report.detail("ann", q.ann);
            report.detail("ann_square", q.ann_square);
            report.detail("quotient_ann", q.quotient_ann);
            if !q.holds {
                fail(&mut report, format!("{} ≠ {} − {}", q.quotient_ann, q.ann_square, q.ann));
            }
        }
    }
    Ok(report)
}

impl Context {
    fn ring_of(&self, p: &CheckParams) -> Arc<FiniteRing> {
        Arc::clone(self.ideal(p).ring())
    }
}

/// Runs one check; errors from the core become undetermined reports.
pub fn run_check(ctx: &Context, p: &CheckParams) -> Report {
    match execute(ctx, p) {
        Ok(mut r) => {
            r.check = p.name.clone();
            r
        }
        Err(e) => {
            let mut r = new_report(p);
            r.undetermined(e.to_string());
            r
        }
    }
}

pub fn digest(spec: &RunSpec) -> String {
    hex::encode(Sha256::digest(spec.canonical_json()))
}

/// Builds the context and runs every check, in order.
pub fn run(spec: &RunSpec) -> Result<ReportDocument, InputError> {
    let start = Instant::now();
    let ctx = Context::build(spec)?;
    let params: Vec<&CheckParams> = spec.checks.iter().map(|c| &c.0).collect();
    let results = Execution::Parallel.map(&params, |p| {
        let t = Instant::now();
        let r = run_check(&ctx, p);
        (r, t.elapsed().as_secs_f64() * 1e3)
    });
    let verdict = results.iter().fold(Verdict::Pass, |v, (r, _)| v.and(r.verdict));
    let checks = results.iter().map(|(r, ms)| CheckTiming { check: r.check.clone(), ms: *ms }).collect();
    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        input_digest: digest(spec),
        seed: spec.seed,
        verdict,
        reports: results.into_iter().map(|(r, _)| r).collect(),
        timing: Timing { total_ms: start.elapsed().as_secs_f64() * 1e3, checks },
    })
}
