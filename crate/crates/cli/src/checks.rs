//! The check registry: names, the inputs each check resolves and the
//! property it reports on.

/// An input a check resolves from the run spec.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Need {
    Ring,
    Ideal,
    Module,
    /// First argument of Ext and Tor.
    Source,
    Family,
    /// `module`, `modules` or `family`, whichever is given.
    Members,
    Poly,
    Sequence,
}

#[derive(Clone, Copy, Debug)]
pub struct CheckInfo {
    pub name: &'static str,
    pub needs: &'static [Need],
    pub summary: &'static str,
}

use Need::*;

pub const CHECKS: &[CheckInfo] = &[
    CheckInfo { name: "ring_info", needs: &[Ring], summary: "order, ideals, idempotents and nilradical of R" },
    CheckInfo { name: "ideal_info", needs: &[Ideal], summary: "order, powers, radical and idempotence of I" },
    CheckInfo { name: "module_info", needs: &[Module, Ideal], summary: "invariants and the I-chains of M" },
    CheckInfo { name: "gamma", needs: &[Members, Ideal], summary: "Γ_I(M)" },
    CheckInfo { name: "gamma_bar", needs: &[Members, Ideal], summary: "Γ̄_I(M)" },
    CheckInfo { name: "lambda", needs: &[Members, Ideal], summary: "Λ_I(M) = M/I^sM" },
    CheckInfo { name: "psi_radical", needs: &[Ideal], summary: "Ψ_I(R) for idempotent I" },
    CheckInfo { name: "reduced", needs: &[Members, Ideal], summary: "M is I-reduced (or I^k-reduced with k)" },
    CheckInfo { name: "coreduced", needs: &[Members, Ideal], summary: "M is I-coreduced (or I^k-coreduced with k)" },
    CheckInfo { name: "torsion", needs: &[Members, Ideal], summary: "Γ_I(M) = M" },
    CheckInfo { name: "complete", needs: &[Members, Ideal], summary: "M → Λ_I(M) is bijective" },
    CheckInfo { name: "locally_nilradical", needs: &[Members, Sequence], summary: "a·Γ_(a)(M)" },
    CheckInfo { name: "preradical", needs: &[Family, Ideal], summary: "maps send (0:I) into (0:I)" },
    CheckInfo { name: "hom_radical", needs: &[Members, Ideal], summary: "(0 :_{M/(0:I)} I) = 0" },
    CheckInfo {
        name: "annihilator_quotient",
        needs: &[Members, Ideal],
        summary: "(0:I^{k+1})/(0:I^k) ≅ (0 :_{M/(0:I^k)} I)",
    },
    CheckInfo {
        name: "hom_radical_equivalence",
        needs: &[Family, Ideal],
        summary: "five conditions for Hom(R/I, −) to be a radical agree",
    },
    CheckInfo {
        name: "torsion_radical_equivalence",
        needs: &[Family, Ideal],
        summary: "five conditions for Γ_I to be a radical agree, with I^k",
    },
    CheckInfo { name: "gamma_radical", needs: &[Members, Ideal], summary: "Γ_I(M/Γ_I(M)) = 0" },
    CheckInfo {
        name: "artinian_reduction",
        needs: &[Members, Ideal],
        summary: "M is I^s-reduced and I^s-coreduced at the chain stabilization index s",
    },
    CheckInfo {
        name: "gamma_bar_agreement",
        needs: &[Members, Ideal],
        summary: "Γ_I ⊆ Γ̄_I, with equality on reduced M",
    },
    CheckInfo { name: "lambda_of_coreduced", needs: &[Members, Ideal], summary: "Λ_I(M) = M/IM for coreduced M" },
    CheckInfo { name: "ttf", needs: &[Family, Ideal], summary: "{M : IM = 0} is a TTF class" },
    CheckInfo { name: "gabriel_topology", needs: &[Ring, Ideal], summary: "𝒢_I is upward closed" },
    CheckInfo { name: "splitting", needs: &[Members, Ideal], summary: "M = Γ_I(M) ⊕ F for reduced M" },
    CheckInfo {
        name: "annihilation_equivalence",
        needs: &[Members, Ideal],
        summary: "five characterizations of IM = 0 agree",
    },
    CheckInfo { name: "radical_class", needs: &[Ideal], summary: "Ψ_I is a radical class and equals Γ_I" },
    CheckInfo { name: "limits_commute", needs: &[Members, Ideal], summary: "Γ_I commutes with finite limits" },
    CheckInfo { name: "family_closure", needs: &[Family], summary: "declared closure properties hold on samples" },
    CheckInfo { name: "ext", needs: &[Source, Module], summary: "Ext^q(A, M)" },
    CheckInfo { name: "tor", needs: &[Source, Module], summary: "Tor_q(A, M)" },
    CheckInfo { name: "local_cohomology", needs: &[Module, Ideal], summary: "H^q_I(M)" },
    CheckInfo { name: "local_homology", needs: &[Module, Ideal], summary: "H_q^I(M)" },
    CheckInfo { name: "koszul_cohomology", needs: &[Ring, Sequence], summary: "H^p(K(R; r))" },
    CheckInfo { name: "weak_proregularity", needs: &[Ring, Sequence], summary: "Koszul cohomology is pro-zero" },
    CheckInfo {
        name: "idempotent_proregularity",
        needs: &[Ideal],
        summary: "an idempotent ideal is weakly proregular",
    },
    CheckInfo {
        name: "spectral_vnr",
        needs: &[Members, Ideal],
        summary: "local (co)homology degenerates over a product of fields",
    },
    CheckInfo {
        name: "local_annihilation",
        needs: &[Members, Ideal],
        summary: "local (co)homology of reduced/coreduced M is killed by I",
    },
    CheckInfo { name: "apolarity_annihilator", needs: &[Poly], summary: "(0 : J^k) in the truncated inverse system" },
    CheckInfo { name: "reducedness_profile", needs: &[Poly], summary: "dimensions of (0 : J^k), k = 1..kmax" },
    CheckInfo {
        name: "quotient_annihilator", needs: &[Poly], summary: "dim (0 :_{M/(0:J)} J) = dim(0:J²) − dim(0:J)"
    },
];

pub fn lookup(name: &str) -> Option<&'static CheckInfo> {
    CHECKS.iter().find(|c| c.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn names_are_unique() {
        let names: BTreeSet<_> = CHECKS.iter().map(|c| c.name).collect();
        assert_eq!(names.len(), CHECKS.len());
        assert!(lookup("gamma").is_some());
        assert!(lookup("Gamma").is_none());
    }
}
