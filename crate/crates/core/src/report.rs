//! Structured result records: group reports and claim verdicts.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Timings {
    pub build_ms: u64,
    pub enumerate_ms: u64,
    pub analyze_ms: u64,
    pub total_ms: u64,
}

/// The record a construction route emits: order, exponent, abelian
/// invariants when the group is abelian, recognized structure, provenance.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GroupReport {
    pub order: u64,
    pub exponent: u64,
    pub invariant_factors: Option<Vec<u64>>,
    pub structure: String,
    pub route: String,
    pub q: u32,
    pub timings: Timings,
}

impl GroupReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// JSON with the timing fields zeroed, for bit-exact determinism
    /// comparisons across runs and strategies.
    pub fn canonical_json(&self) -> String {
        let mut c = self.clone();
        c.timings = Timings::default();
        serde_json::to_string_pretty(&c).expect("report serialization")
    }

    /// Agreement on everything except provenance and timing.
    pub fn same_group_data(&self, other: &GroupReport) -> bool {
        self.order == other.order
            && self.exponent == other.exponent
            && self.invariant_factors == other.invariant_factors
            && self.structure == other.structure
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail => write!(f, "FAIL"),
            Verdict::Skipped => write!(f, "skipped"),
        }
    }
}

/// Outcome of one claim on one instance. Failures carry a witness and the
/// command that reproduces them.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClaimResult {
    pub claim: String,
    pub instance: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub millis: u64,
}

impl ClaimResult {
    pub fn pass(claim: &str, instance: String, millis: u64) -> Self {
        ClaimResult { claim: claim.into(), instance, verdict: Verdict::Pass, witness: None, millis }
    }

    pub fn fail(claim: &str, instance: String, witness: String, millis: u64) -> Self {
        ClaimResult {
            claim: claim.into(),
            instance,
            verdict: Verdict::Fail,
            witness: Some(witness),
            millis,
        }
    }

    pub fn skipped(claim: &str, instance: String, reason: String) -> Self {
        ClaimResult {
            claim: claim.into(),
            instance,
            verdict: Verdict::Skipped,
            witness: Some(reason),
            millis: 0,
        }
    }
}

/// One row of the worked-examples table in the reports.
#[derive(Clone, Debug, Serialize)]
pub struct ExampleRow {
    pub group: String,
    pub q: u32,
    pub structure: String,
    pub exponent: u64,
    pub bound_satisfied: bool,
    pub millis: u64,
}

/// Serialize claim results (pretty, stable field order).
pub fn results_json(results: &[ClaimResult]) -> String {
    serde_json::to_string_pretty(results).expect("result serialization")
}

/// Render the Markdown report: verdicts per claim plus the tensor-square
/// table in the shape of the worked examples.
pub fn render_markdown(results: &[ClaimResult], examples: &[ExampleRow]) -> String {
    let mut out = String::from("# Verification report\n\n");
    let pass = results.iter().filter(|r| r.verdict == Verdict::Pass).count();
    let fail = results.iter().filter(|r| r.verdict == Verdict::Fail).count();
    let skip = results.iter().filter(|r| r.verdict == Verdict::Skipped).count();
    out.push_str(&format!(
        "{} checks: {pass} passed, {fail} failed, {skip} skipped.\n\n",
        results.len()
    ));
    out.push_str("| claim | instance | verdict | time (ms) |\n|---|---|---|---|\n");
    for r in results {
        out.push_str(&format!(
            "| {} | {} | {} | {} |\n",
            r.claim, r.instance, r.verdict, r.millis
        ));
    }
    if fail > 0 {
        out.push_str("\n## Failures\n\n");
        for r in results.iter().filter(|r| r.verdict == Verdict::Fail) {
            out.push_str(&format!(
                "- **{} / {}**: {}\n",
                r.claim,
                r.instance,
                r.witness.as_deref().unwrap_or("-")
            ));
        }
    }
    if !examples.is_empty() {
        out.push_str("\n## Tensor squares\n\n");
        out.push_str("| group | q | structure | exponent | bound satisfied | time (ms) |\n");
        out.push_str("|---|---|---|---|---|---|\n");
        for e in examples {
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} |\n",
                e.group,
                e.q,
                e.structure,
                e.exponent,
                if e.bound_satisfied { "yes" } else { "no" },
                e.millis
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn markdown_report_has_tables() {
        let results = vec![
            ClaimResult::pass("Prop4.4", "D_5 (x)_3 D_5".into(), 12),
            ClaimResult::fail("Eq25", "naive E_3(D_5)".into(), "witness".into(), 3),
        ];
        let examples = vec![ExampleRow {
            group: "dihedral:4".into(),
            q: 4,
            structure: "abelian:[2,2,2,2,2,4]".into(),
            exponent: 4,
            bound_satisfied: true,
            millis: 100,
        }];
        let md = render_markdown(&results, &examples);
        assert!(md.contains("| Prop4.4 |"));
        assert!(md.contains("## Failures"));
        assert!(md.contains("| dihedral:4 | 4 |"));
        let json = results_json(&results);
        assert!(json.contains("\"witness\""));
    }

    #[test]
    fn canonical_json_zeroes_timings() {
        let a = GroupReport {
            order: 10,
            exponent: 10,
            invariant_factors: None,
            structure: "dihedral:5".into(),
            route: "pc".into(),
            q: 3,
            timings: Timings { build_ms: 5, enumerate_ms: 9, analyze_ms: 1, total_ms: 15 },
        };
        let mut b = a.clone();
        b.timings = Timings { build_ms: 1, enumerate_ms: 2, analyze_ms: 3, total_ms: 6 };
        assert_ne!(a.to_json(), b.to_json());
        assert_eq!(a.canonical_json(), b.canonical_json());
        assert!(a.same_group_data(&b));
        // The documented key set, in order.
        let v: serde_json::Value = serde_json::from_str(&a.to_json()).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(
            keys,
            ["order", "exponent", "invariant_factors", "structure", "route", "q", "timings"]
        );
    }
}
