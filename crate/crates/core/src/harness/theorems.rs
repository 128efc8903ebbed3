//! Checks of the radical, torsion-theory and splitting statements on
//! explicit finite instances.

use serde_json::json;

use crate::module::{subquotient, FinModule, ModuleMap, Submodule};
use crate::ring::{FiniteRing, Ideal};
use crate::torsion::{self, ChainProfile};

use super::family::{FamilyFilter, ModuleFamily};
use super::report::{ModuleSummary, Report, Verdict, Witness};

/// Bijectivity of a map, with the kernel (or missed part of the target) as
/// witness when it fails.
pub fn check_explicit_iso(f: &ModuleMap) -> Report {
    let mut report = Report::new("explicit_iso", "the given map is an isomorphism");
    report.count();
    let injective = f.is_injective();
    let surjective = f.is_surjective();
    report.detail("injective", injective);
    report.detail("surjective", surjective);
    report.detail("bijective", injective && surjective);
    if !injective {
        report.fail(Witness::submodule(f.source(), &f.kernel(), "nonzero kernel"));
    }
    if !surjective {
        report.fail(Witness::submodule(f.target(), &f.image(), "image is a proper submodule"));
    }
    report
}

/// `f((0:_M I)) ⊆ (0:_N I)` for every map in the family.
pub fn check_preradical(family: &ModuleFamily, ideal: &Ideal) -> Report {
    let mut report = Report::new("preradical", "every map sends (0:_M I) into (0:_N I)").with_seed(family.seed);
    let anns: Vec<Submodule> = family.modules.iter().map(|m| m.annihilator(ideal)).collect();
    for fm in &family.maps {
        report.count();
        let source = &family.modules[fm.source];
        for g in source.submodule_generators(&anns[fm.source]) {
            if !anns[fm.target].contains(&fm.map.apply(&g)) {
                report.fail(Witness::element(source, g, format!("image escapes (0:I) in member {}", fm.target)));
                break;
            }
        }
    }
    report
}

/// Nonzero coset of `(0:_M I)` killed by `I`, if any: the obstruction to
/// `Hom(R/I, −)` being a radical at `M`.
pub fn hom_radical_witness(m: &FinModule, ideal: &Ideal) -> Option<Vec<u64>> {
    let ann = m.annihilator(ideal);
    let q = m.quotient(&ann);
    let ann_q = q.annihilator(ideal);
    ann_q.basis().rows().iter().find(|r| !ann.contains(r)).map(|r| ann.basis().reduce(r))
}

/// Replays a hom-radical witness: `I·w ⊆ (0:_M I)` but `w ∉ (0:_M I)`.
pub fn replay_hom_radical_witness(m: &FinModule, ideal: &Ideal, w: &[u64]) -> bool {
    let ann = m.annihilator(ideal);
    !ann.contains(w) && ideal.group_generators().iter().all(|a| ann.contains(&m.act(a, w)))
}

/// `(0 :_{M/(0:_M I)} I) = 0`.
pub fn check_hom_radical(m: &FinModule, ideal: &Ideal) -> Report {
    let mut report = Report::new("hom_radical", "(0 :_{M/(0:I)} I) = 0");
    report.count();
    let reduced = torsion::is_reduced(m, ideal);
    report.detail("is_reduced", reduced);
    if let Some(w) = hom_radical_witness(m, ideal) {
        report.fail(Witness::element(m, w, "coset w + (0:I) with I·w ⊆ (0:I)"));
    }
    if report.passed() != reduced {
        report.detail("inconsistent_with_reducedness", true);
        report.verdict = Verdict::Fail;
        if report.witnesses.is_empty() {
            report.fail(Witness::module(m, "verdict disagrees with is_reduced"));
        }
    }
    report
}

/// The map `m ↦ m + (0:I^k)` from `(0:I^{k+1})` onto `(0 :_{M/(0:I^k)} I)`
/// is surjective with kernel `(0:I^k)`.
pub fn check_annihilator_quotient(m: &FinModule, ideal: &Ideal, k: usize) -> Report {
    let mut report =
        Report::new("annihilator_quotient", "(0:I^{k+1})/(0:I^k) ≅ (0 :_{M/(0:I^k)} I) via m ↦ m + (0:I^k)");
    report.count();
    let k = k.max(1);
    let ann_k = m.annihilator(&ideal.power(k));
    let ann_k1 = m.annihilator(&ideal.power(k + 1));
    let q = m.quotient(&ann_k);
    let target = q.annihilator(ideal);
    let f = m.projection(&ann_k).restrict(&ann_k1, &ann_k);
    let (_, inclusion) = m.submodule_as_module(&ann_k1);
    let kernel_in_m = inclusion.image_of(&f.kernel());
    let image = f.image();
    report.detail("k", k);
    report.detail("source_order", m.cardinality(&ann_k1) as u64);
    report.detail("target_order", q.cardinality(&target) as u64);
    if image != target {
        report.fail(Witness::submodule(&q, &image, "image differs from (0 :_{M/(0:I^k)} I)"));
    }
    if kernel_in_m != ann_k {
        report.fail(Witness::submodule(m, &kernel_in_m, "kernel differs from (0:I^k)"));
    }
    // The induced map on the subquotient is an isomorphism onto the target.
    let sq = subquotient(m.ring(), m.actions(), ann_k1.basis(), ann_k.basis());
    let induced = ModuleMap::new(&sq.module, &q, sq.lift_matrix()).expect("induced map is R-linear");
    report.detail("induced_injective", induced.is_injective());
    if !induced.is_injective() || induced.image() != target {
        report.fail(Witness::module(m, "induced map is not an isomorphism onto the target"));
    }
    report
}

/// Outcome of a five-way equivalence check.
#[derive(Clone, Debug)]
pub struct Equivalence {
    pub report: Report,
    pub conditions: [bool; 5],
}

impl Equivalence {
    pub fn unanimous(&self) -> bool {
        self.conditions.iter().all(|&c| c == self.conditions[0])
    }

    fn finish(mut report: Report, conditions: [bool; 5], witnesses: Vec<Option<ModuleSummary>>) -> Self {
        report.detail("conditions", conditions.to_vec());
        report.detail("counterexamples", json!(witnesses));
        let mut eq = Equivalence { report, conditions };
        if !eq.unanimous() {
            let first = witnesses.into_iter().flatten().next();
            let w = match first {
                Some(s) => Witness { module: s, element: None, submodule: None, note: "conditions disagree".into() },
                None => Witness {
                    module: ModuleSummary {
                        label: "family".into(),
                        order: 0,
                        invariants: vec![],
                        rank: 0,
                        relations: vec![],
                    },
                    element: None,
                    submodule: None,
                    note: "conditions disagree".into(),
                },
            };
            eq.report.fail(w);
        }
        eq
    }
}

fn first_violation(family: &ModuleFamily, pred: impl Fn(&FinModule) -> bool) -> Option<ModuleSummary> {
    family.modules.iter().find(|m| !pred(m)).map(ModuleSummary::of)
}

/// `Hom(R/J, −)` is a radical on `𝒜` ⇔ `𝒜` is J-reduced ⇔ `{M : JM = 0}` is
/// a TTF class in `𝒜` ⇔ `ℬ` is J-coreduced ⇔ `δ(M) = JM` is idempotent on `ℬ`.
fn five_conditions(
    name: &str,
    a: &ModuleFamily,
    b: &ModuleFamily,
    j: &Ideal,
    submodule_bound: u128,
) -> (Report, [bool; 5], Vec<Option<ModuleSummary>>) {
    let mut report = Report::new(name, "the five radical conditions agree").with_seed(a.seed);
    report.instances = a.len() + b.len();
    let c1 = first_violation(a, |m| hom_radical_witness(m, j).is_none());
    let c2 = first_violation(a, |m| torsion::is_reduced(m, j));
    let ttf = check_ttf(a, j, submodule_bound);
    if ttf.verdict == Verdict::Undetermined {
        report.undetermined("TTF check exceeded the submodule bound");
    }
    let c3 = ttf.witnesses.first().map(|w| w.module.clone());
    let c4 = first_violation(b, |m| torsion::is_coreduced(m, j));
    let c5 = first_violation(b, |m| {
        let jm = m.ideal_scale(j);
        m.ideal_scale_sub(j, &jm) == jm
    });
    let conditions = [c1.is_none(), c2.is_none(), ttf.verdict == Verdict::Pass, c4.is_none(), c5.is_none()];
    (report, conditions, vec![c1, c2, c3, c4, c5])
}

/// The five equivalent conditions for `Hom_R(R/I, −)` to be a radical.
pub fn check_hom_radical_equivalence(
    a: &ModuleFamily,
    b: &ModuleFamily,
    ideal: &Ideal,
    submodule_bound: u128,
) -> Equivalence {
    let (report, conditions, witnesses) = five_conditions("hom_radical_equivalence", a, b, ideal, submodule_bound);
    Equivalence::finish(report, conditions, witnesses)
}

/// The five equivalent conditions for `Γ_I` to be a radical, with `I^k` in
/// place of `I`. Condition 1 uses `Hom(R/I^k, −)`, which is `Γ_I` on
/// I^k-reduced modules; the unconditional law `Γ_I(M/Γ_I(M)) = 0` is
/// reported alongside.
pub fn check_torsion_radical_equivalence(
    c: &ModuleFamily,
    d: &ModuleFamily,
    ideal: &Ideal,
    k: usize,
    submodule_bound: u128,
) -> Equivalence {
    let ik = ideal.power(k.max(1));
    let (mut report, conditions, witnesses) =
        five_conditions("torsion_radical_equivalence", c, d, &ik, submodule_bound);
    let gamma_radical = c.modules.iter().all(|m| gamma_radical_holds(m, ideal));
    report.detail("k", k);
    report.detail("gamma_radical_unconditional", gamma_radical);
    Equivalence::finish(report, conditions, witnesses)
}

/// `Γ_I(M/Γ_I(M)) = 0`.
pub fn gamma_radical_holds(m: &FinModule, ideal: &Ideal) -> bool {
    let g = torsion::gamma(m, ideal);
    let q = m.quotient(&g);
    q.is_zero_submodule(&torsion::gamma(&q, ideal))
}

/// `T = {M : IM = 0}` and `F = {M : Γ_I(M) = 0}` inside the family:
/// `Hom(T, F) = 0`, closure of `T` under submodules, quotients, direct sums
/// and extensions, and `Hom(𝔗, T) = 0` for `𝔗 = {M : IM = M}`.
pub fn check_ttf(family: &ModuleFamily, ideal: &Ideal, submodule_bound: u128) -> Report {
    let mut report = Report::new("ttf", "{M : IM = 0} is a TTF class in the family").with_seed(family.seed);
    let in_t = |m: &FinModule| m.is_zero_submodule(&m.ideal_scale(ideal));
    let t: Vec<&FinModule> = family.modules.iter().filter(|m| in_t(m)).collect();
    let f: Vec<&FinModule> = family.modules.iter().filter(|m| m.is_zero_submodule(&torsion::gamma(m, ideal))).collect();
    let frak_t: Vec<&FinModule> = family.modules.iter().filter(|m| m.is_whole(&m.ideal_scale(ideal))).collect();
    report.detail("torsion_members", t.len());
    report.detail("torsionfree_members", f.len());
    report.detail("idempotent_members", frak_t.len());

    for a in &t {
        for b in &f {
            report.count();
            let h = crate::module::hom_module(a, b).expect("same ring");
            if !h.module.is_zero() {
                report.fail(Witness::module(a, format!("nonzero Hom into a torsion-free member {}", b.label())));
            }
        }
    }
    for a in &frak_t {
        for b in &t {
            report.count();
            let h = crate::module::hom_module(a, b).expect("same ring");
            if !h.module.is_zero() {
                report.fail(Witness::module(a, format!("nonzero Hom from IM = M member into {}", b.label())));
            }
        }
    }
    for (x, a) in t.iter().enumerate() {
        for b in t.iter().skip(x) {
            report.count();
            let s = a.direct_sum(b).expect("same ring");
            if !in_t(&s) {
                report.fail(Witness::module(&s, "direct sum of members leaves T"));
            }
        }
    }
    for m in &family.modules {
        let subs = match m.enumerate_submodules(submodule_bound) {
            Ok(s) => s,
            Err(_) => {
                report.undetermined(format!("member of order {} exceeds the submodule bound", m.order()));
                continue;
            }
        };
        let im = m.ideal_scale(ideal);
        let member = m.is_zero_submodule(&im);
        for n in &subs {
            report.count();
            let n_in_t = m.is_zero_submodule(&m.ideal_scale_sub(ideal, n));
            let quotient_in_t = im.is_subset_of(n);
            if member && !(n_in_t && quotient_in_t) {
                report.fail(Witness::submodule(m, n, "submodule or quotient of a member of T leaves T"));
            }
            if !member && n_in_t && quotient_in_t {
                report.fail(Witness::submodule(m, n, "extension of members of T leaves T"));
            }
        }
    }
    report
}

/// `𝒢_I = {J : I ⊆ J, R/J admitted by the filter}` with its upward-closure
/// check.
pub fn gabriel_topology(
    ring: &std::sync::Arc<FiniteRing>,
    ideal: &Ideal,
    filter: &FamilyFilter,
) -> (Vec<Ideal>, Report) {
    let mut report = Report::new("gabriel_topology", "𝒢_I is upward closed among admitted ideals");
    let ideals = ring.ideals();
    let admitted = |j: &Ideal| filter.admits(&FinModule::cyclic(ring, j));
    let topology: Vec<Ideal> = ideals.iter().filter(|j| ideal.is_subset_of(j) && admitted(j)).cloned().collect();
    for j in &topology {
        for j2 in &ideals {
            if j.is_subset_of(j2) && admitted(j2) {
                report.count();
                if !topology.contains(j2) {
                    report
                        .fail(Witness::module(&FinModule::cyclic(ring, j2), "ideal above a member of 𝒢_I is missing"));
                }
            }
        }
    }
    report.detail("ideals", topology.iter().map(|j| j.group_generators()).collect::<Vec<_>>());
    (topology, report)
}

/// For I-reduced `M`, a complement `F` with `Γ_I(M) ⊕ F = M`, `Γ_I(F) = 0`
/// and `IF = F`.
pub fn check_splitting(m: &FinModule, ideal: &Ideal, submodule_bound: u128) -> Report {
    let mut report = Report::new("splitting", "M = Γ_I(M) ⊕ F with F torsion-free and IF = F");
    if !torsion::is_reduced(m, ideal) {
        report.undetermined("precondition violated: module is not I-reduced");
        return report;
    }
    report.count();
    let g = torsion::gamma(m, ideal);
    let subs = match m.enumerate_submodules(submodule_bound) {
        Ok(s) => s,
        Err(_) => {
            report.undetermined("module exceeds the submodule bound");
            return report;
        }
    };
    let complement = subs.iter().find(|f| {
        m.is_zero_submodule(&g.meet(f)) && m.is_whole(&g.join(f)) && {
            let (fm, _) = m.submodule_as_module(f);
            fm.is_zero_submodule(&torsion::gamma(&fm, ideal))
        }
    });
    match complement {
        None => report.fail(Witness::submodule(m, &g, "no torsion-free complement of Γ_I(M)")),
        Some(f) => {
            report.detail("torsion_order", m.cardinality(&g) as u64);
            report.detail("complement_order", m.cardinality(f) as u64);
            report.detail("complement", f.basis().rows().to_vec());
            if m.ideal_scale_sub(ideal, f) != *f {
                report.fail(Witness::submodule(m, f, "complement F has IF ≠ F"));
            }
        }
    }
    report
}

/// `IM = 0` ⇔ `(0:_M I) = M` ⇔ torsion ∧ reduced ⇔ complete ∧ coreduced ⇔
/// `M → M/IM` bijective.
pub fn check_annihilation_equivalence(m: &FinModule, ideal: &Ideal) -> Equivalence {
    let mut report = Report::new("annihilation_equivalence", "the five characterizations of IM = 0 agree");
    report.count();
    let profile = ChainProfile::compute(m, ideal);
    let im = m.ideal_scale(ideal);
    let c1 = m.is_zero_submodule(&im);
    let c2 = m.is_whole(&m.annihilator(ideal));
    let c3 = torsion::is_torsion(m, ideal) && profile.asc_index == 1;
    let c4 = torsion::is_complete(m, ideal) && profile.desc_index == 1;
    let c5 = m.projection(&im).is_injective();
    let conditions = [c1, c2, c3, c4, c5];
    let witness = (!c1).then(|| ModuleSummary::of(m));
    Equivalence::finish(report, conditions, vec![witness; 5])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Execution;
    use crate::harness::family::FamilyBounds;
    use crate::ring::RingSpec;
    use std::sync::Arc;

    fn family(r: &Arc<FiniteRing>, order: u128) -> ModuleFamily {
        ModuleFamily::generate(r, FamilyBounds::new(2, order), FamilyFilter::All, Execution::Parallel)
    }

    #[test]
    fn hom_radical_negative_control() {
        let r = RingSpec::zn(4).build().unwrap();
        let m = FinModule::regular(&r);
        let i = Ideal::principal(&r, &[2]);
        let rep = check_hom_radical(&m, &i);
        assert_eq!(rep.verdict, Verdict::Fail);
        let w = rep.witnesses[0].element.clone().unwrap();
        assert_eq!(w, vec![1]);
        assert!(replay_hom_radical_witness(&m, &i, &w));
        assert!(check_hom_radical(&FinModule::zero(&r), &i).passed());
    }

    #[test]
    fn annihilator_quotient_on_z8() {
        let r = RingSpec::zn(8).build().unwrap();
        let m = FinModule::regular(&r);
        let i = Ideal::principal(&r, &[2]);
        for k in 1..=4 {
            assert!(check_annihilator_quotient(&m, &i, k).passed(), "k = {k}");
        }
    }

    #[test]
    fn equivalence_idempotent_all_true() {
        let r = RingSpec::product(vec![RingSpec::gf(2), RingSpec::gf(2)]).build().unwrap();
        let fam = family(&r, 16);
        let i = Ideal::principal(&r, &[1, 0]);
        let eq = check_hom_radical_equivalence(&fam, &fam, &i, 256);
        assert!(eq.report.passed());
        assert_eq!(eq.conditions, [true; 5]);
    }

    #[test]
    fn equivalence_z4_all_false() {
        let r = RingSpec::zn(4).build().unwrap();
        let fam = family(&r, 16);
        let i = Ideal::principal(&r, &[2]);
        let eq = check_hom_radical_equivalence(&fam, &fam, &i, 256);
        assert!(eq.report.passed(), "{:?}", eq.conditions);
        assert_eq!(eq.conditions, [false; 5]);
        let reduced = fam.restrict(FamilyFilter::Reduced(i.clone()));
        assert!(check_ttf(&reduced, &i, 256).passed());
    }

    #[test]
    fn mat2_stabilized_power() {
        let r = RingSpec::zn(8).build().unwrap();
        let fam = family(&r, 16);
        let i = Ideal::principal(&r, &[2]);
        let eq = check_torsion_radical_equivalence(&fam, &fam, &i, 3, 256);
        assert_eq!(eq.conditions, [true; 5]);
        let r4 = RingSpec::zn(4).build().unwrap();
        let fam4 = family(&r4, 16);
        let i4 = Ideal::principal(&r4, &[2]);
        let eq = check_torsion_radical_equivalence(&fam4, &fam4, &i4, 1, 256);
        assert_eq!(eq.conditions, [false; 5]);
    }

    #[test]
    fn preradical_over_z4() {
        let r = RingSpec::zn(4).build().unwrap();
        let fam = family(&r, 16).with_maps(32, Execution::Parallel);
        assert!(!fam.maps.is_empty());
        assert!(check_preradical(&fam, &Ideal::principal(&r, &[2])).passed());
    }

    #[test]
    fn gabriel_examples() {
        let r = RingSpec::product(vec![RingSpec::gf(2), RingSpec::gf(2)]).build().unwrap();
        let i = Ideal::principal(&r, &[1, 0]);
        let (top, rep) = gabriel_topology(&r, &i, &FamilyFilter::All);
        assert!(rep.passed());
        assert_eq!(top.len(), 2);
        let z8 = RingSpec::zn(8).build().unwrap();
        let four = Ideal::principal(&z8, &[4]);
        let (top, _) = gabriel_topology(&z8, &four, &FamilyFilter::Reduced(four.clone()));
        assert_eq!(top.len(), 3);
        let (top, _) = gabriel_topology(&z8, &Ideal::unit(&z8), &FamilyFilter::All);
        assert_eq!(top, vec![Ideal::unit(&z8)]);
    }

    #[test]
    fn splitting_examples() {
        let r = RingSpec::product(vec![RingSpec::gf(2), RingSpec::gf(2)]).build().unwrap();
        let i = Ideal::principal(&r, &[1, 0]);
        let rep = check_splitting(&FinModule::regular(&r), &i, 256);
        assert!(rep.passed());
        assert_eq!(rep.details["complement"], json!([[1, 0]]));
    }

    #[test]
    fn annihilation_equivalence_examples() {
        let r = RingSpec::zn(8).build().unwrap();
        let eq = check_annihilation_equivalence(&FinModule::regular(&r), &Ideal::principal(&r, &[2]));
        assert_eq!(eq.conditions, [false; 5]);
        let p = RingSpec::product(vec![RingSpec::gf(2), RingSpec::gf(2)]).build().unwrap();
        let i = Ideal::principal(&p, &[1, 0]);
        let eq = check_annihilation_equivalence(&FinModule::cyclic(&p, &i), &i);
        assert_eq!(eq.conditions, [true; 5]);
        assert_eq!(check_annihilation_equivalence(&FinModule::zero(&p), &i).conditions, [true; 5]);
    }
}
