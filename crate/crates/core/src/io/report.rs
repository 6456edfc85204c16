//! Human-readable and JSON renderings of synthesis reports.

use std::fmt::Write;

use serde::Serialize;

use super::gen_format::{serialize_generator, GeneratorFile};
use crate::automata::Generator;
use crate::coordination::{Observation, SynthesisReport, TheoremApplied};
use crate::props::PropertyVerdict;

/// Machine-readable form of a [`SynthesisReport`]; every language appears
/// as a serialized generator.
#[derive(Clone, Debug, Serialize)]
pub struct ReportFile {
    pub observation: Observation,
    pub sigma_k: Vec<String>,
    pub spec_trimmed: bool,
    pub theorem_applied: TheoremApplied,
    pub supremal: bool,
    pub coordinator: GeneratorFile,
    pub local_specs: [GeneratorFile; 2],
    pub local_plants: [GeneratorFile; 2],
    pub local_supervisors: [GeneratorFile; 2],
    pub nonconflicting: PropertyVerdict,
    pub pk_intersection: Option<GeneratorFile>,
    pub pk_condition: Option<PropertyVerdict>,
    pub posterior_supervisor: Option<GeneratorFile>,
    pub posterior_nonconflicting: Option<PropertyVerdict>,
    pub distributed_matches_monolithic: Option<bool>,
    pub result: Option<GeneratorFile>,
}

impl From<&SynthesisReport> for ReportFile {
    fn from(r: &SynthesisReport) -> Self {
        let f = GeneratorFile::from_generator;
        ReportFile {
            observation: r.observation,
            sigma_k: r.sigma_k.iter().map(|e| e.to_string()).collect(),
            spec_trimmed: r.spec_trimmed,
            theorem_applied: r.theorem_applied,
            supremal: r.supremal,
            coordinator: f(&r.coordinator),
            local_specs: [f(&r.local_specs.0), f(&r.local_specs.1)],
            local_plants: [f(&r.local_plants.0), f(&r.local_plants.1)],
            local_supervisors: [f(&r.local_supervisors.0), f(&r.local_supervisors.1)],
            nonconflicting: r.nonconflicting.clone(),
            pk_intersection: r.pk_intersection.as_ref().map(f),
            pk_condition: r.pk_condition.clone(),
            posterior_supervisor: r.posterior_supervisor.as_ref().map(f),
            posterior_nonconflicting: r.posterior_nonconflicting.clone(),
            distributed_matches_monolithic: r.distributed_matches_monolithic,
            result: r.result.as_ref().map(f),
        }
    }
}

pub fn report_to_json(r: &SynthesisReport) -> String {
    serde_json::to_string_pretty(&ReportFile::from(r)).expect("report serializes")
}

fn size(g: &Generator) -> String {
    format!("{} states, {} transitions", g.num_states(), g.num_transitions())
}

pub fn report_to_text(r: &SynthesisReport) -> String {
    let mut out = String::new();
    let sk: Vec<&str> = r.sigma_k.iter().map(|e| e.as_str()).collect();
    let _ = writeln!(out, "coordinator alphabet: {}", sk.join(", "));
    let _ = writeln!(out, "observation: {}", if r.observation == Observation::Full { "full" } else { "partial" });
    if r.spec_trimmed {
        let _ = writeln!(out, "specification was trimmed on input");
    }
    let _ = writeln!(out, "coordinator: {}", size(&r.coordinator));
    for (i, (spec, sup)) in
        [(&r.local_specs.0, &r.local_supervisors.0), (&r.local_specs.1, &r.local_supervisors.1)].into_iter().enumerate()
    {
        let _ = writeln!(out, "side {}: local spec {}; supervisor {}", i + 1, size(spec), size(sup));
    }
    let _ = writeln!(out, "local supervisors nonconflicting: {}", r.nonconflicting);
    if let Some(v) = &r.pk_condition {
        let _ = writeln!(out, "projected intersection admissible for the coordinator: {v}");
    }
    if let Some(p) = &r.posterior_supervisor {
        let _ = writeln!(out, "posterior coordinator supervisor: {}", size(p));
    }
    if let Some(v) = &r.posterior_nonconflicting {
        let _ = writeln!(out, "posterior supervisor nonconflicting: {v}");
    }
    if let Some(m) = r.distributed_matches_monolithic {
        let _ = writeln!(out, "distributed posterior supervisor matches monolithic: {m}");
    }
    let _ = writeln!(out, "outcome: {}{}", r.theorem_applied, if r.supremal { " (supremal)" } else { "" });
    match &r.result {
        Some(m) => {
            let _ = writeln!(out, "result: {}", size(m));
            out.push_str(&serialize_generator(m));
        }
        None => {
            let _ = writeln!(out, "result: none");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coordination::{synthesize, CoordinationProblem};
    use crate::fixtures;

    #[test]
    fn json_report_embeds_generators() {
        let p = CoordinationProblem::new(
            fixtures::g1(),
            fixtures::g2(),
            fixtures::spec(),
            fixtures::sigma_k(),
            Observation::Full,
        )
        .unwrap();
        let r = synthesize(&p).unwrap();
        let v: serde_json::Value = serde_json::from_str(&report_to_json(&r)).unwrap();
        assert_eq!(v["theorem_applied"], "supremal_product");
        assert_eq!(v["supremal"], true);
        let back: GeneratorFile = serde_json::from_value(v["result"].clone()).unwrap();
        assert_eq!(back.to_generator().unwrap(), *r.result.as_ref().unwrap());
        let text = report_to_text(&r);
        assert!(text.contains("outcome: supremal product of local supervisors (supremal)"), "{text}");
    }
}
