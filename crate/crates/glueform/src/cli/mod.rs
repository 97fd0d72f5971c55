//! Batch front end: parse a presentation file, run verifications and
//! cohomology computations, emit deterministic textual reports.
//!
//! Reports contain no timestamps and iterate everything in fixed order, so
//! two runs on the same input are byte-identical.  Exit codes are uniform
//! across subcommands: `0` success, `1` domain-level failure, `2`
//! input/parse failure.

use std::fmt::Write as _;

use crate::diffeology::{HorizontalityWitness, Plot, SpacePresentation};
use crate::mv::GlueError;

mod formfile;
mod presentation;

pub use formfile::parse_form_file;
pub use presentation::{parse_presentation, ComputeSection, FileError, PresentationFile};

/// Samples and seed used by `check`'s built-in falsification pass.
const CHECK_SAMPLES: u32 = 16;
const CHECK_SEED: u64 = 0;

/// Exit code and report text of one command run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmdOutcome {
    pub exit_code: i32,
    pub report: String,
}

fn witness_tag(plot: &Plot) -> String {
    match plot.witness() {
        HorizontalityWitness::Retraction(_) => "retraction".to_string(),
        HorizontalityWitness::SymmetryGenerators(pairs) => {
            format!("symmetry:{} asserted", pairs.len())
        }
    }
}

fn chart_summary(space: &SpacePresentation) -> String {
    if space.charts().is_empty() {
        "charts: 0 (disjoint-images regime: delta is vacuously zero)".to_string()
    } else {
        let names: Vec<&str> = space.charts().iter().map(|c| c.name()).collect();
        format!(
            "charts: {} ({}); completeness asserted, not verified",
            names.len(),
            names.join(", ")
        )
    }
}

/// `glueform check <file>`: symbolic verification of every plot, witness
/// and chart, plus a fixed randomized falsification pass.
pub fn check(text: &str, label: &str) -> CmdOutcome {
    let mut out = String::new();
    writeln!(out, "check: {label}").unwrap();
    let file = match parse_presentation(text) {
        Ok(file) => file,
        Err(e) => {
            writeln!(out, "error: {e}").unwrap();
            return CmdOutcome {
                exit_code: 2,
                report: out,
            };
        }
    };
    let space = &file.space;
    let report = space.verify_all();
    for check in &report.checks {
        writeln!(out, "{check}").unwrap();
    }
    let sampling = space.falsify_by_sampling(CHECK_SAMPLES, CHECK_SEED);
    if sampling.pass() {
        writeln!(
            out,
            "sampling ({} samples, seed {}): PASS",
            sampling.samples, sampling.seed
        )
        .unwrap();
    } else {
        writeln!(
            out,
            "sampling ({} samples, seed {}): FAIL",
            sampling.samples, sampling.seed
        )
        .unwrap();
        for violation in &sampling.violations {
            writeln!(out, "  violation: {violation}").unwrap();
        }
    }
    writeln!(
        out,
        "note: chart list and symmetry generators are asserted complete by the input, not verified"
    )
    .unwrap();
    let pass = report.pass() && sampling.pass();
    writeln!(out, "result: {}", if pass { "PASS" } else { "FAIL" }).unwrap();
    CmdOutcome {
        exit_code: if pass { 0 } else { 1 },
        report: out,
    }
}

/// `glueform cohomology <file> [--bound D] [--degree k]...`: the truncated
/// cohomology table with the exactness audit.  Defaults come from the
/// file's `[compute]` section; the presentation must pass `check` first.
pub fn cohomology(
    text: &str,
    label: &str,
    bound_flag: Option<u32>,
    degree_flags: &[usize],
) -> CmdOutcome {
    let mut out = String::new();
    writeln!(out, "cohomology: {label}").unwrap();
    let file = match parse_presentation(text) {
        Ok(file) => file,
        Err(e) => {
            writeln!(out, "error: {e}").unwrap();
            return CmdOutcome {
                exit_code: 2,
                report: out,
            };
        }
    };
    let space = &file.space;
    let verification = space.verify_all();
    if !verification.pass() {
        for check in verification.checks.iter().filter(|c| !c.pass()) {
            writeln!(out, "{check}").unwrap();
        }
        writeln!(out, "result: FAIL (presentation fails verification)").unwrap();
        return CmdOutcome {
            exit_code: 1,
            report: out,
        };
    }

    let bound = bound_flag.unwrap_or(file.compute.bound);
    let degrees: Vec<usize> = if degree_flags.is_empty() {
        file.compute.degrees.clone()
    } else {
        degree_flags.to_vec()
    };
    let tag = format!(
        "witnesses {}|{}; charts asserted",
        witness_tag(space.alpha()),
        witness_tag(space.beta())
    );
    writeln!(out, "bound D = {bound}").unwrap();
    writeln!(
        out,
        "witness {}: {}",
        space.alpha().name(),
        space.alpha().witness_description()
    )
    .unwrap();
    writeln!(
        out,
        "witness {}: {}",
        space.beta().name(),
        space.beta().witness_description()
    )
    .unwrap();
    writeln!(out, "{}", chart_summary(space)).unwrap();
    writeln!(
        out,
        "note: dimensions are truncated at coefficient degree D and are relative to the asserted witness and chart data"
    )
    .unwrap();

    let table = space.cohomology_report(&degrees, bound);
    let mut audits_pass = true;
    for entry in &table.entries {
        let stable = match entry.stable {
            Some(true) => "yes",
            Some(false) => "no",
            None => "n/a",
        };
        writeln!(
            out,
            "k={} D={} [{}]: dim Omega = {}, closed = {}, exact = {}, H = {}, stable(D-2..D) = {}",
            entry.degree,
            entry.bound,
            tag,
            entry.dim_omega,
            entry.closed,
            entry.exact,
            entry.h,
            stable
        )
        .unwrap();
        let audit = space.exactness_audit(entry.degree, bound);
        audits_pass &= audit.pass();
        writeln!(
            out,
            "audit k={} D={}: injectivity {}, delta-vanishing {}, glue-acceptance {}",
            entry.degree,
            bound,
            if audit.representation_injective {
                "PASS"
            } else {
                "FAIL"
            },
            if audit.delta_vanishes { "PASS" } else { "FAIL" },
            if audit.glue_accepts { "PASS" } else { "FAIL" },
        )
        .unwrap();
    }
    writeln!(out, "result: {}", if audits_pass { "PASS" } else { "FAIL" }).unwrap();
    CmdOutcome {
        exit_code: if audits_pass { 0 } else { 1 },
        report: out,
    }
}

/// `glueform delta <file> --mu <formfile> --nu <formfile>`: evaluates the
/// difference morphism per chart and reports the glue verdict.
pub fn delta(text: &str, label: &str, mu_text: &str, nu_text: &str) -> CmdOutcome {
    let mut out = String::new();
    writeln!(out, "delta: {label}").unwrap();
    let file = match parse_presentation(text) {
        Ok(file) => file,
        Err(e) => {
            writeln!(out, "error: {e}").unwrap();
            return CmdOutcome {
                exit_code: 2,
                report: out,
            };
        }
    };
    let space = &file.space;
    let mu = match parse_form_file(mu_text, space.alpha().domain()) {
        Ok(form) => form,
        Err(e) => {
            writeln!(out, "error: mu form file: {e}").unwrap();
            return CmdOutcome {
                exit_code: 2,
                report: out,
            };
        }
    };
    let nu = match parse_form_file(nu_text, space.beta().domain()) {
        Ok(form) => form,
        Err(e) => {
            writeln!(out, "error: nu form file: {e}").unwrap();
            return CmdOutcome {
                exit_code: 2,
                report: out,
            };
        }
    };
    writeln!(
        out,
        "mu (on {} [{}], degree {}): {}",
        space.alpha().name(),
        space.alpha().domain(),
        mu.degree(),
        mu
    )
    .unwrap();
    writeln!(
        out,
        "nu (on {} [{}], degree {}): {}",
        space.beta().name(),
        space.beta().domain(),
        nu.degree(),
        nu
    )
    .unwrap();
    let values = match space.delta(&mu, &nu) {
        Ok(values) => values,
        Err(e) => {
            writeln!(out, "error: {e}").unwrap();
            return CmdOutcome {
                exit_code: 1,
                report: out,
            };
        }
    };
    if values.is_empty() {
        writeln!(out, "no charts: delta is vacuously zero").unwrap();
    }
    for (chart, value) in &values {
        writeln!(out, "delta at chart {chart}: {value}").unwrap();
    }
    match space.glue(mu, nu) {
        Ok(_) => {
            writeln!(out, "glue: ACCEPTED").unwrap();
            CmdOutcome {
                exit_code: 0,
                report: out,
            }
        }
        Err(GlueError::Usage(e)) => {
            writeln!(out, "error: {e}").unwrap();
            CmdOutcome {
                exit_code: 1,
                report: out,
            }
        }
        Err(reason) => {
            writeln!(out, "glue: REJECTED ({reason})").unwrap();
            CmdOutcome {
                exit_code: 0,
                report: out,
            }
        }
    }
}

/// `glueform sample <file> --samples N --seed S`: randomized falsification
/// of the presentation's symbolic identities.
pub fn sample(text: &str, label: &str, samples: u32, seed: u64) -> CmdOutcome {
    let mut out = String::new();
    writeln!(out, "sample: {label}").unwrap();
    let file = match parse_presentation(text) {
        Ok(file) => file,
        Err(e) => {
            writeln!(out, "error: {e}").unwrap();
            return CmdOutcome {
                exit_code: 2,
                report: out,
            };
        }
    };
    let report = file.space.falsify_by_sampling(samples, seed);
    writeln!(out, "samples = {}, seed = {}", report.samples, report.seed).unwrap();
    if report.pass() {
        writeln!(
            out,
            "no violations found (sampling falsifies; it never certifies)"
        )
        .unwrap();
    } else {
        for violation in &report.violations {
            writeln!(out, "violation: {violation}").unwrap();
        }
    }
    writeln!(
        out,
        "result: {}",
        if report.pass() { "PASS" } else { "FAIL" }
    )
    .unwrap();
    CmdOutcome {
        exit_code: if report.pass() { 0 } else { 1 },
        report: out,
    }
}
