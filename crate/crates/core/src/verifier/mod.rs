//! Named scenario suite and identity fuzzer.
//!
//! Every scenario is a pure function of its configuration that returns a
//! [`ScenarioResult`]; [`run_all`] runs them in parallel and assembles a
//! [`Report`] sorted by name, so identical configurations give identical
//! reports.

pub mod fuzz;
pub mod identities;
pub mod rings;
pub mod scenarios;

use std::fmt::Display;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::commutator::{ideal_witness, Side};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::lattice::Subgroup;
use crate::ring::{Budget, Ring};
use crate::text::format_element;

pub use fuzz::{fuzz_identities, FuzzConfig};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// A labeled list of ring elements: single elements or subgroup bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    pub ring: String,
    pub elements: Vec<String>,
    pub coords: Vec<Vec<Int>>,
}

impl Witness {
    pub fn elements(label: impl Into<String>, ring: &Ring, rows: &[impl AsRef<[Int]>]) -> Witness {
        Witness {
            label: label.into(),
            ring: ring.name().to_string(),
            elements: rows.iter().map(|r| format_element(ring, r.as_ref())).collect(),
            coords: rows.iter().map(|r| r.as_ref().to_vec()).collect(),
        }
    }

    pub fn subgroup(label: impl Into<String>, s: &Subgroup) -> Witness {
        Witness::elements(label, s.ring(), s.rows())
    }

    pub fn message(label: impl Into<String>, text: impl Into<String>) -> Witness {
        Witness {
            label: label.into(),
            ring: String::new(),
            elements: vec![text.into()],
            coords: Vec::new(),
        }
    }
}

/// A claim that a subgroup is an ideal, recorded so the suite can be audited
/// for which bracket arities it ever asserts to be ideals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealClaim {
    pub ring: String,
    /// Arity `n` when the subgroup is `[R, ..., R]_n`.
    pub bracket_arity: Option<usize>,
    pub side: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub description: String,
    pub expected: String,
    pub got: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal_claim: Option<IdealClaim>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScenarioResult {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<String>,
    pub assertion_count: usize,
    pub assertions: Vec<Assertion>,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl ScenarioResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes")
    }
}

/// Collects assertions and witnesses for one scenario.
#[derive(Debug)]
pub struct Checker {
    name: String,
    assertions: Vec<Assertion>,
    witnesses: Vec<Witness>,
    notes: Vec<String>,
}

impl Checker {
    pub fn new(name: impl Into<String>) -> Checker {
        Checker {
            name: name.into(),
            assertions: Vec::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn check<W>(&mut self, description: impl Into<String>, expected: impl Display, got: impl Display, witness: W) -> bool
    where
        W: FnOnce() -> Vec<Witness>,
    {
        let (expected, got) = (expected.to_string(), got.to_string());
        let ok = expected == got;
        let description = description.into();
        if !ok {
            let mut w = witness();
            if w.is_empty() {
                w.push(Witness::message(description.clone(), format!("expected {expected}, got {got}")));
            }
            self.witnesses.extend(w);
        }
        self.assertions.push(Assertion {
            description,
            expected,
            got,
            ok,
            ideal_claim: None,
        });
        ok
    }

    pub fn truth<W>(&mut self, description: impl Into<String>, got: bool, witness: W) -> bool
    where
        W: FnOnce() -> Vec<Witness>,
    {
        self.check(description, true, got, witness)
    }

    pub fn equal(&mut self, description: impl Into<String>, got: &Subgroup, expected: &Subgroup) -> bool {
        let description = description.into();
        let ok = got == expected;
        self.check(description.clone(), "equal", if ok { "equal" } else { "different" }, || {
            vec![
                Witness::subgroup(format!("{description}: computed"), got),
                Witness::subgroup(format!("{description}: expected"), expected),
            ]
        })
    }

    pub fn not_equal(&mut self, description: impl Into<String>, a: &Subgroup, b: &Subgroup) -> bool {
        let description = description.into();
        let ok = a != b;
        self.check(description.clone(), "different", if ok { "different" } else { "equal" }, || {
            vec![Witness::subgroup(format!("{description}: common value"), a)]
        })
    }

    /// `small ⊆ big`; the witness is a basis row of `small` outside `big`.
    pub fn subset(&mut self, description: impl Into<String>, small: &Subgroup, big: &Subgroup) -> bool {
        let description = description.into();
        let escape: Option<Vec<Int>> = small.rows().iter().find(|r| !big.contains(r)).cloned();
        self.check(
            description.clone(),
            "contained",
            if escape.is_none() { "contained" } else { "not contained" },
            || {
                vec![
                    Witness::elements(format!("{description}: element outside"), small.ring(), &[escape.unwrap()]),
                    Witness::subgroup(format!("{description}: container"), big),
                ]
            },
        )
    }

    /// `small ⊊ big`.
    pub fn proper_subset(&mut self, description: impl Into<String>, small: &Subgroup, big: &Subgroup) -> bool {
        let description = description.into();
        let inside = big.contains_subgroup(small);
        let proper = inside && small != big;
        self.check(
            description.clone(),
            "proper subgroup",
            if proper {
                "proper subgroup"
            } else if inside {
                "equal"
            } else {
                "not contained"
            },
            || {
                vec![
                    Witness::subgroup(format!("{description}: smaller"), small),
                    Witness::subgroup(format!("{description}: larger"), big),
                ]
            },
        )
    }

    /// `small ⊄ big`, witnessed by a row of `small` outside `big`.
    pub fn not_subset(&mut self, description: impl Into<String>, small: &Subgroup, big: &Subgroup) -> bool {
        let description = description.into();
        let escape = small.rows().iter().find(|r| !big.contains(r)).cloned();
        if let Some(e) = &escape {
            self.witnesses
                .push(Witness::elements(format!("{description}: element outside"), small.ring(), &[e]));
        }
        self.check(
            description.clone(),
            "not contained",
            if escape.is_some() { "not contained" } else { "contained" },
            || vec![Witness::subgroup(format!("{description}: smaller"), small)],
        )
    }

    pub fn member(&mut self, description: impl Into<String>, s: &Subgroup, v: &[Int], expected: bool) -> bool {
        let description = description.into();
        let got = s.contains(v);
        let word = |b: bool| if b { "member" } else { "not a member" };
        self.check(description.clone(), word(expected), word(got), || {
            vec![
                Witness::elements(format!("{description}: element"), s.ring(), &[v]),
                Witness::subgroup(format!("{description}: subgroup"), s),
            ]
        })
    }

    pub fn is_zero(&mut self, description: impl Into<String>, s: &Subgroup, expected: bool) -> bool {
        let description = description.into();
        let word = |b: bool| if b { "zero" } else { "nonzero" };
        self.check(description.clone(), word(expected), word(s.is_zero()), || {
            vec![Witness::subgroup(format!("{description}: subgroup"), s)]
        })
    }

    /// Asserts that `s` is an ideal on the given side, witnessing any escape.
    pub fn ideal(
        &mut self,
        description: impl Into<String>,
        ring: &Ring,
        s: &Subgroup,
        side: Side,
        bracket_arity: Option<usize>,
    ) -> Result<bool> {
        let description = description.into();
        let escape = ideal_witness(ring, s, side)?;
        let ok = self.check(
            description.clone(),
            format!("{side} ideal"),
            if escape.is_none() { format!("{side} ideal") } else { "not an ideal".into() },
            || {
                let e = escape.expect("failure has an escape");
                vec![
                    Witness::elements(format!("{description}: factors"), ring, &e.factors),
                    Witness::elements(format!("{description}: product outside"), ring, &[e.value]),
                ]
            },
        );
        self.assertions.last_mut().expect("just pushed").ideal_claim = Some(IdealClaim {
            ring: ring.name().to_string(),
            bracket_arity,
            side: side.to_string(),
        });
        Ok(ok)
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn witness(&mut self, w: Witness) {
        self.witnesses.push(w);
    }

    pub fn finish(self) -> ScenarioResult {
        let failed = self.assertions.iter().any(|a| !a.ok);
        let status = if failed {
            Status::Fail
        } else if self.assertions.is_empty() {
            Status::Skipped
        } else {
            Status::Pass
        };
        ScenarioResult {
            name: self.name,
            status,
            skip_reason: None,
            assertion_count: self.assertions.len(),
            assertions: self.assertions,
            witnesses: self.witnesses,
            notes: self.notes,
            elapsed_ms: None,
        }
    }
}

/// Result for a scenario whose computation raised an error.
pub fn errored(name: &str, err: &Error) -> ScenarioResult {
    let mut c = Checker::new(name);
    c.check("scenario completed without error", "ok", err.to_string(), || {
        vec![Witness::message("error", err.to_string())]
    });
    c.finish()
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub fuzz_iterations: usize,
    /// Scenario names to run; `None` runs all registered scenarios.
    pub scenarios: Option<Vec<String>>,
    pub include_fuzz: bool,
    /// Adds the deliberately corrupted identity, which must fail.
    pub self_test: bool,
    pub budget: Budget,
    pub timings: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 20_240_601,
            fuzz_iterations: 10_000,
            scenarios: None,
            include_fuzz: true,
            self_test: false,
            budget: Budget::default(),
            timings: false,
        }
    }
}

/// Name of the fuzzer record in a report.
pub const FUZZ_RECORD: &str = "fuzz_identities";
/// Name of the self-test record in a report.
pub const SELF_TEST_RECORD: &str = "selftest_corrupted_identity";

pub fn scenario_names() -> Vec<&'static str> {
    scenarios::REGISTRY.iter().map(|(n, _)| *n).collect()
}

pub fn run_scenario(name: &str, config: &VerifyConfig) -> Result<ScenarioResult> {
    let (_, f) = scenarios::REGISTRY
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownScenario(name.to_string()))?;
    let start = Instant::now();
    let mut result = match f(config) {
        Ok(r) => r,
        Err(e) => errored(name, &e),
    };
    result.name = name.to_string();
    if config.timings {
        result.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(result)
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub format: u32,
    pub seed: u64,
    pub fuzz_iterations: usize,
    pub summary: Summary,
    pub scenarios: Vec<ScenarioResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn get(&self, name: &str) -> Option<&ScenarioResult> {
        self.scenarios.iter().find(|s| s.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Fixed-width table for terminals.
    pub fn table(&self) -> String {
        let mut out = format!("{:<24} {:<8} {:>10}\n", "scenario", "status", "assertions");
        for s in &self.scenarios {
            let status = match s.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skipped",
            };
            out.push_str(&format!("{:<24} {:<8} {:>10}", s.name, status, s.assertion_count));
            if let Some(ms) = s.elapsed_ms {
                out.push_str(&format!(" {ms:>8} ms"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} scenarios: {} passed, {} failed, {} skipped\n",
            self.summary.total, self.summary.passed, self.summary.failed, self.summary.skipped
        ));
        out
    }
}

/// Runs the selected scenarios and the fuzzer.
pub fn run_all(config: &VerifyConfig) -> Result<Report> {
    let names: Vec<String> = match &config.scenarios {
        Some(list) => list.clone(),
        None => scenario_names().into_iter().map(str::to_string).collect(),
    };
    for n in &names {
        if !scenario_names().contains(&n.as_str()) {
            return Err(Error::UnknownScenario(n.clone()));
        }
    }
    let mut results: Vec<ScenarioResult> = names
        .par_iter()
        .map(|n| run_scenario(n, config))
        .collect::<Result<_>>()?;
    if config.include_fuzz {
        let start = Instant::now();
        let mut r = fuzz_identities(&FuzzConfig::default_suite(config.seed, config.fuzz_iterations))?;
        r.name = FUZZ_RECORD.to_string();
        if config.timings {
            r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
        }
        results.push(r);
    }
    if config.self_test {
        let mut r = fuzz_identities(&FuzzConfig::self_test(config.seed, config.fuzz_iterations.min(1000)))?;
        r.name = SELF_TEST_RECORD.to_string();
        results.push(r);
    }
    results.sort_by(|a, b| a.name.cmp(&b.name));
    let count = |s: Status| results.iter().filter(|r| r.status == s).count();
    Ok(Report {
        format: 1,
        seed: config.seed,
        fuzz_iterations: config.fuzz_iterations,
        summary: Summary {
            total: results.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skipped),
        },
        scenarios: results,
    })
}
