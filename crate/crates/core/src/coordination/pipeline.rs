use serde::Serialize;

use super::conditions::{build_coordinator, is_conditionally_decomposable, local_pair};
use super::{CoordinationProblem, Observation};
use crate::automata::{intersect, language_equal, prefix_closure, project_onto, sync_product, trim, Generator};
use crate::error::{Error, Result};
use crate::props::{is_controllable, is_normal_under, is_sync_nonconflicting, PropertyVerdict, Side};
use crate::synthesis::{sup_c, sup_cn, SynthesisInput};

/// Which branch of the pipeline produced the result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremApplied {
    /// The projected intersection of the local supervisors is controllable
    /// (and normal) w.r.t. the coordinator, so their product is the supremal
    /// conditionally controllable (and normal) sublanguage.
    SupremalProduct,
    /// A posterior coordinator supervisor was added; the result is sound but
    /// need not be supremal.
    PosteriorSupervisor,
    /// The supervisors conflict and no result is produced.
    Conflicting,
}

impl std::fmt::Display for TheoremApplied {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TheoremApplied::SupremalProduct => "supremal product of local supervisors",
            TheoremApplied::PosteriorSupervisor => "posterior coordinator supervisor",
            TheoremApplied::Conflicting => "conflicting supervisors",
        })
    }
}

/// Everything computed by [`synthesize`].
#[derive(Clone, Debug)]
pub struct SynthesisReport {
    pub observation: Observation,
    pub sigma_k: crate::automata::EventSet,
    pub spec_trimmed: bool,
    pub coordinator: Generator,
    /// `P1+k(K)`, `P2+k(K)`.
    pub local_specs: (Generator, Generator),
    /// `G1 ∥ Gk`, `G2 ∥ Gk`.
    pub local_plants: (Generator, Generator),
    /// Supremal controllable (and normal) sublanguages of the local specs.
    pub local_supervisors: (Generator, Generator),
    pub nonconflicting: PropertyVerdict,
    /// `Pk(sup1+k) ∩ Pk(sup2+k)`; absent when the local supervisors conflict.
    pub pk_intersection: Option<Generator>,
    /// Controllability (and normality) of the intersection w.r.t. `L(Gk)`.
    pub pk_condition: Option<PropertyVerdict>,
    pub posterior_supervisor: Option<Generator>,
    /// Nonconflict of the posterior supervisor with the local ones.
    pub posterior_nonconflicting: Option<PropertyVerdict>,
    /// Whether the per-side computation of the posterior supervisor agreed
    /// with the computation on the intersection.
    pub distributed_matches_monolithic: Option<bool>,
    pub result: Option<Generator>,
    pub supremal: bool,
    pub theorem_applied: TheoremApplied,
}

impl SynthesisReport {
    /// The synthesized language, or the nonconflict failure.
    pub fn final_language(&self) -> Result<&Generator> {
        self.result.as_ref().ok_or_else(|| {
            let failed = if self.nonconflicting.holds {
                self.posterior_nonconflicting.as_ref()
            } else {
                Some(&self.nonconflicting)
            };
            Error::NonconflictCheckFailed(failed.map(|v| v.to_string()).unwrap_or_else(|| "no result".into()))
        })
    }
}

fn supervise(spec: &Generator, plant: &Generator, prob: &CoordinationProblem, side: Side) -> Result<Generator> {
    let input = SynthesisInput::new(spec.clone(), plant.clone());
    match prob.observation() {
        Observation::Full => sup_c(&input),
        Observation::Partial => sup_cn(&input.with_projection(prob.observation_projection(side))),
    }
}

/// Coordinated synthesis with a postponed coordinator supervisor.
///
/// Fails with [`Error::NotConditionallyDecomposable`] unless both `K` and
/// `K̄` are conditionally decomposable. Conflicting supervisors do not raise
/// an error: the report carries the failed verdict and no result.
pub fn synthesize(prob: &CoordinationProblem) -> Result<SynthesisReport> {
    let (s1, s2, sk) = (prob.sigma1(), prob.sigma2(), prob.sigma_k().clone());
    for (view, k) in [("marked", prob.spec().clone()), ("generated", prefix_closure(prob.spec()))] {
        let v = is_conditionally_decomposable(&k, &s1, &s2, &sk)?;
        if let Some(w) = v.witness {
            let crate::props::Witness::Word { word } = w else { unreachable!() };
            return Err(Error::NotConditionallyDecomposable { view, witness: word });
        }
    }

    let gk = build_coordinator(prob.g1(), prob.g2(), &sk)?;
    let (spec1, plant1) = local_pair(prob, &gk, Side::First)?;
    let (spec2, plant2) = local_pair(prob, &gk, Side::Second)?;
    let sup1 = supervise(&spec1, &plant1, prob, Side::First)?.with_name("sup1+k");
    let sup2 = supervise(&spec2, &plant2, prob, Side::Second)?.with_name("sup2+k");
    let nonconflicting = is_sync_nonconflicting(&sup1, &sup2)?;

    let mut report = SynthesisReport {
        observation: prob.observation(),
        sigma_k: sk.clone(),
        spec_trimmed: prob.spec_was_trimmed(),
        coordinator: gk.clone(),
        local_specs: (spec1.with_name("P1+k(K)"), spec2.with_name("P2+k(K)")),
        local_plants: (plant1.with_name("G1||Gk"), plant2.with_name("G2||Gk")),
        local_supervisors: (sup1.clone(), sup2.clone()),
        nonconflicting,
        pk_intersection: None,
        pk_condition: None,
        posterior_supervisor: None,
        posterior_nonconflicting: None,
        distributed_matches_monolithic: None,
        result: None,
        supremal: false,
        theorem_applied: TheoremApplied::Conflicting,
    };
    if !report.nonconflicting.holds {
        return Ok(report);
    }

    let pk1 = project_onto(&sup1, &sk);
    let pk2 = project_onto(&sup2, &sk);
    let inter = trim(&intersect(&pk1, &pk2)?).with_name("Pk(sup1+k)&Pk(sup2+k)");
    let qk = prob.observation_projection(Side::Coordinator);
    let mut condition = is_controllable(&inter, &gk)?;
    if condition.holds && prob.observation() == Observation::Partial {
        condition = is_normal_under(&inter, &gk, &qk)?;
    }
    let local_product = sync_product(&sup1, &sup2)?;
    report.pk_intersection = Some(inter.clone());
    report.pk_condition = Some(condition.clone());

    if condition.holds {
        report.result = Some(trim(&local_product).with_name("M"));
        report.supremal = true;
        report.theorem_applied = TheoremApplied::SupremalProduct;
        return Ok(report);
    }

    let coordinator_sup = |spec: &Generator| supervise(spec, &gk, prob, Side::Coordinator);
    let distributed = trim(&intersect(&coordinator_sup(&pk1)?, &coordinator_sup(&pk2)?)?);
    let monolithic = coordinator_sup(&inter)?;
    let matches = language_equal(&distributed, &monolithic)?.both();
    let posterior = if matches { distributed } else { monolithic }.with_name("supk'");
    let posterior_ok = is_sync_nonconflicting(&posterior, &local_product)?;
    report.distributed_matches_monolithic = Some(matches);
    report.theorem_applied = TheoremApplied::PosteriorSupervisor;
    if posterior_ok.holds {
        report.result = Some(trim(&sync_product(&local_product, &posterior)?).with_name("M"));
    } else {
        report.theorem_applied = TheoremApplied::Conflicting;
    }
    report.posterior_supervisor = Some(posterior);
    report.posterior_nonconflicting = Some(posterior_ok);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{event_set, language_equal};
    use crate::fixtures;

    fn problem(sigma_k: crate::automata::EventSet) -> CoordinationProblem {
        CoordinationProblem::new(fixtures::g1(), fixtures::g2(), fixtures::spec(), sigma_k, Observation::Full).unwrap()
    }

    #[test]
    fn fixture_pipeline_is_supremal_for_both_alphabets() {
        for sk in [fixtures::sigma_k(), fixtures::sigma_k_extended()] {
            let r = synthesize(&problem(sk)).unwrap();
            assert!(r.nonconflicting.holds);
            assert!(r.supremal);
            assert_eq!(r.theorem_applied, TheoremApplied::SupremalProduct);
            assert!(r.posterior_supervisor.is_none());
            let m = r.final_language().unwrap();
            assert!(language_equal(m, &fixtures::expected_result()).unwrap().both());
        }
    }

    #[test]
    fn non_decomposable_spec_is_rejected() {
        let err = synthesize(&problem(event_set(["c", "u"]))).unwrap_err();
        assert!(matches!(err, Error::NotConditionallyDecomposable { view: "marked", .. }));
    }
}
