use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::harness::{Report, Witness};
use crate::module::FinModule;
use crate::ring::Ideal;
use crate::torsion;

use super::{Homology, TorsionResolution};

/// Over a finite product of fields: `H^q_I(M) = H_q^I(M) = 0` for
/// `1 ≤ q ≤ qmax`, `H^0_I` and `H_0^I` are `Γ_I` and `Λ_I`, and every
/// composite `H^p_I(H^q_I(M))`, `H_p^I(H_q^I(M))`, `H_p^I(H^q_I(M))`,
/// `H^p_I(H_q^I(M))` vanishes off `(0, 0)` and equals `Γ_I(M)` or `Λ_I(M)`
/// there.
pub fn check_spectral_vnr(ideal: &Ideal, m: &FinModule, qmax: usize, exec: Execution) -> Result<Report> {
    let ring = ideal.ring();
    if !ring.is_von_neumann_regular() {
        return Err(Error::Precondition(format!("{} is not a product of fields", ring.label())));
    }
    if !m.same_ring(&FinModule::zero(ring)) {
        return Err(Error::MismatchedRings);
    }
    let mut report = Report::new("spectral_vnr", "local (co)homology degenerates to Γ_I and Λ_I in degree 0");
    let t = TorsionResolution::new(ideal, qmax);
    let gamma = torsion::gamma(m, ideal);
    let lambda = torsion::lambda(m, ideal);
    let gamma_order = m.cardinality(&gamma);
    let lambda_order = lambda.module.order();
    report.detail("stage", t.stage());
    report.detail("gamma_order", gamma_order as u64);
    report.detail("lambda_order", lambda_order as u64);

    let cohom: Vec<Homology> = (0..=qmax).map(|q| t.cohomology(q, m).map(|v| v.value)).collect::<Result<_>>()?;
    let hom: Vec<Homology> = (0..=qmax).map(|q| t.homology(q, m).map(|v| v.value)).collect::<Result<_>>()?;
    report.instances += 2;
    if cohom[0].cycles != gamma || !m.is_zero_submodule(&cohom[0].boundaries) {
        report.fail(Witness::submodule(m, &cohom[0].cycles, "H^0_I(M) differs from Γ_I(M)"));
    }
    if hom[0].boundaries != lambda.kernel || !m.is_whole(&hom[0].cycles) {
        report.fail(Witness::submodule(m, &hom[0].boundaries, "H_0^I(M) differs from Λ_I(M)"));
    }
    for q in 1..=qmax {
        report.instances += 2;
        if !cohom[q].is_zero() {
            report.fail(Witness::module(&cohom[q].module, format!("H^{q}_I(M) ≠ 0")));
        }
        if !hom[q].is_zero() {
            report.fail(Witness::module(&hom[q].module, format!("H_{q}^I(M) ≠ 0")));
        }
    }

    // Grid entries are (p, q, outer is cohomology, inner is cohomology).
    let grid: Vec<(usize, usize, bool, bool)> = (0..=qmax)
        .flat_map(|p| {
            (0..=qmax)
                .flat_map(move |q| [(p, q, true, true), (p, q, false, false), (p, q, false, true), (p, q, true, false)])
        })
        .collect();
    let results: Vec<Result<Option<Witness>>> = exec.map(&grid, |&(p, q, outer_cohom, inner_cohom)| {
        let inner = if inner_cohom { &cohom[q].module } else { &hom[q].module };
        let outer = if outer_cohom { t.cohomology(p, inner)? } else { t.homology(p, inner)? }.value;
        let name = format!(
            "{}({}(M)) at (p, q) = ({p}, {q})",
            if outer_cohom { "H^p_I" } else { "H_p^I" },
            if inner_cohom { "H^q_I" } else { "H_q^I" }
        );
        let expected = match (p, q) {
            (0, 0) if inner_cohom => gamma_order,
            (0, 0) => lambda_order,
            _ => 1,
        };
        Ok((outer.order() != expected).then(|| Witness::module(&outer.module, format!("{name} has the wrong order"))))
    });
    for r in results {
        report.count();
        if let Some(w) = r? {
            report.fail(w);
        }
    }
    Ok(report)
}

/// For I-reduced `M`: `(0 :_{H^q_I(M)} I) = H^q_I(M)`. For I-coreduced `M`:
/// `I·H_q^I(M) = 0`, so the canonical surjection onto `R/I ⊗ H_q^I(M)` is
/// bijective. Parts whose hypothesis fails are skipped and recorded.
pub fn check_local_annihilation(ideal: &Ideal, m: &FinModule, qmax: usize) -> Result<Report> {
    let mut report =
        Report::new("local_annihilation", "local (co)homology of reduced/coreduced modules is killed by I");
    let reduced = torsion::is_reduced(m, ideal);
    let coreduced = torsion::is_coreduced(m, ideal);
    report.detail("reduced", reduced);
    report.detail("coreduced", coreduced);
    if !reduced && !coreduced {
        report.undetermined("module is neither I-reduced nor I-coreduced");
        return Ok(report);
    }
    let t = TorsionResolution::new(ideal, qmax);
    let mut cohom_orders = Vec::new();
    let mut hom_orders = Vec::new();
    for q in 0..=qmax {
        if reduced {
            report.count();
            let h = t.cohomology(q, m)?.value.module;
            cohom_orders.push(h.order() as u64);
            let ann = h.annihilator(ideal);
            if !h.is_whole(&ann) {
                report.fail(Witness::submodule(&h, &ann, format!("(0 :_H I) ≠ H for H = H^{q}_I(M)")));
            }
        }
        if coreduced {
            report.count();
            let h = t.homology(q, m)?.value.module;
            hom_orders.push(h.order() as u64);
            let ih = h.ideal_scale(ideal);
            if !h.is_zero_submodule(&ih) {
                report.fail(Witness::submodule(&h, &ih, format!("H → H/IH is not injective for H = H_{q}^I(M)")));
            }
        }
    }
    report.detail("cohomology_orders", cohom_orders);
    report.detail("homology_orders", hom_orders);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    #[test]
    fn f2_f3_regular() {
        let r = RingSpec::product(vec![RingSpec::gf(2), RingSpec::gf(3)]).build().unwrap();
        let i = Ideal::principal(&r, &[1, 0]);
        let rep = check_spectral_vnr(&i, &FinModule::regular(&r), 3, Execution::Sequential).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.details["gamma_order"], 3);
        assert_eq!(rep.details["lambda_order"], 3);
        let zero = check_spectral_vnr(&i, &FinModule::zero(&r), 2, Execution::Sequential).unwrap();
        assert!(zero.passed());
    }

    #[test]
    fn three_fields() {
        let r = RingSpec::product(vec![RingSpec::gf(2), RingSpec::gf(3), RingSpec::gf(5)]).build().unwrap();
        let i = Ideal::principal(&r, &[1, 1, 0]);
        assert!(check_spectral_vnr(&i, &FinModule::regular(&r), 3, Execution::Parallel).unwrap().passed());
    }

    #[test]
    fn non_regular_ring_is_rejected() {
        let r = RingSpec::zn(4).build().unwrap();
        let i = Ideal::principal(&r, &[2]);
        assert!(matches!(
            check_spectral_vnr(&i, &FinModule::regular(&r), 1, Execution::Sequential),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn local_annihilation_over_z4() {
        let r = RingSpec::zn(4).build().unwrap();
        let i = Ideal::principal(&r, &[2]);
        let m = FinModule::cyclic(&r, &i);
        let rep = check_local_annihilation(&i, &m, 2).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.details["cohomology_orders"], serde_json::json!([2, 1, 1]));
        let rep = check_local_annihilation(&i, &FinModule::regular(&r), 2).unwrap();
        assert_eq!(rep.verdict, crate::harness::Verdict::Undetermined);
    }
}
