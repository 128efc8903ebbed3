//! Γ_I against finite inverse limits: chains of surjections and discrete
//! products.

use crate::error::{Error, Result};
use crate::linalg::{preimage, HowellBasis, ResidueMatrix};
use crate::module::{FinModule, ModuleMap, Submodule};
use crate::ring::Ideal;
use crate::torsion;

use super::report::{Report, Witness};

/// A finite diagram whose limit is taken.
#[derive(Clone, Debug)]
pub enum Diagram {
    /// `maps[k] : M_{k+1} → M_k`.
    Tower(Vec<ModuleMap>),
    Discrete(Vec<FinModule>),
}

impl Diagram {
    fn objects(&self) -> Result<Vec<FinModule>> {
        match self {
            Diagram::Discrete(ms) => Ok(ms.clone()),
            Diagram::Tower(maps) => {
                let first = maps.first().ok_or_else(|| Error::InvalidMap("empty tower".into()))?;
                let mut objs = vec![first.target().clone()];
                for (k, f) in maps.iter().enumerate() {
                    let expected = &objs[k];
                    if f.target().rank() != expected.rank() || f.target().relations() != expected.relations() {
                        return Err(Error::InvalidMap(format!("tower map {k} does not compose")));
                    }
                    objs.push(f.source().clone());
                }
                Ok(objs)
            }
        }
    }
}

fn sum_all(objs: &[FinModule]) -> FinModule {
    let ring = objs[0].ring();
    objs.iter().fold(FinModule::zero(ring), |acc, m| acc.direct_sum(m).expect("same ring"))
}

fn offsets(objs: &[FinModule]) -> Vec<usize> {
    objs.iter()
        .scan(0, |acc, m| {
            let o = *acc;
            *acc += m.rank();
            Some(o)
        })
        .collect()
}

/// The limit as a submodule of `⊕ M_k`.
fn limit(diagram: &Diagram, objs: &[FinModule], sum: &FinModule) -> Submodule {
    match diagram {
        Diagram::Discrete(_) => sum.whole(),
        Diagram::Tower(maps) => {
            let off = offsets(objs);
            let lower = sum_all(&objs[..maps.len()]);
            let mut phi = ResidueMatrix::zeros(sum.modulus(), sum.rank(), lower.rank());
            let n = sum.modulus();
            for (k, f) in maps.iter().enumerate() {
                phi.put_block(off[k + 1], off[k], f.matrix());
                let neg = ResidueMatrix::identity(n, objs[k].rank()).scale(n - 1);
                phi.put_block(off[k], off[k], &neg);
            }
            sum.submodule(preimage(&phi, lower.relations())).expect("kernel of a module map")
        }
    }
}

/// `Γ_I(lim M_k) = lim Γ_I(M_k)` inside `⊕ M_k`.
pub fn check_limits_commute(ideal: &Ideal, diagram: &Diagram) -> Result<Report> {
    let objs = diagram.objects()?;
    let mut report = Report::new("limits_commute", "Γ_I commutes with the limit of the diagram");
    report.count();
    report.detail("all_reduced", objs.iter().all(|m| torsion::is_reduced(m, ideal)));
    let sum = sum_all(&objs);
    let lim = limit(diagram, &objs, &sum);
    let (lim_module, inclusion) = sum.submodule_as_module(&lim);
    let gamma_of_limit = inclusion.image_of(&torsion::gamma(&lim_module, ideal));
    let off = offsets(&objs);
    let mut rows: Vec<Vec<u64>> = sum.relations().rows().to_vec();
    for (k, m) in objs.iter().enumerate() {
        for r in torsion::gamma(m, ideal).basis().rows() {
            let mut v = vec![0u64; sum.rank()];
            v[off[k]..off[k] + m.rank()].copy_from_slice(r);
            rows.push(v);
        }
    }
    let componentwise = HowellBasis::from_rows(sum.modulus(), sum.rank(), &rows);
    let limit_of_gammas = lim.meet(&sum.submodule(componentwise).expect("sum of submodules"));
    report.detail("limit_order", sum.cardinality(&lim) as u64);
    report.detail("gamma_order", sum.cardinality(&gamma_of_limit) as u64);
    if gamma_of_limit != limit_of_gammas {
        report.fail(Witness::submodule(&sum, &gamma_of_limit, "Γ_I of the limit differs from the limit of Γ_I"));
    }
    Ok(report)
}
