//! Line-oriented presentation files.
//!
//! ```text
//! [space]                 exactly one
//! vars = x y
//! equations = x*y ; ...   semicolon-separated, possibly empty
//!
//! [plot <name>]           exactly two
//! vars = s
//! components = s, 0       comma-separated, arity = ambient count
//! retraction = x          either this (in ambient vars) ...
//! symmetry_vars = w1      ... or these two
//! symmetry = w1 | -w1     one or more lines, h components | h' components
//!
//! [pullback <name>]       zero or more
//! vars =
//! to_<plotname> = 0       one line per plot, in chart vars
//!
//! [compute]               exactly one
//! bound = 6
//! degrees = 0 1 2
//! ```
//!
//! `#` starts a comment; blank lines are ignored.  Printing a parsed file
//! with `Display` re-emits the canonical layout, and parse∘print is the
//! identity.

use std::fmt;

use crate::diffeology::{
    HorizontalityWitness, Plot, PullbackChart, SpacePresentation, SymmetryPair,
};
use crate::ratpoly::{parse_poly, PolyMap, Polynomial, VarContext};

/// Parse or schema failure with a 1-based line number (0 when the failure
/// concerns the file as a whole).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "line {}: {}", self.line, self.message)
        } else {
            write!(f, "{}", self.message)
        }
    }
}

impl std::error::Error for FileError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, FileError> {
    Err(FileError {
        line,
        message: message.into(),
    })
}

/// Requested computation: coefficient degree bound and form degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComputeSection {
    pub bound: u32,
    pub degrees: Vec<usize>,
}

/// A fully parsed and structurally validated presentation file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationFile {
    pub space: SpacePresentation,
    pub compute: ComputeSection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SectionKind {
    Space,
    Plot,
    Pullback,
    Compute,
}

#[derive(Debug)]
struct RawSection {
    kind: SectionKind,
    name: String,
    line: usize,
    entries: Vec<(usize, String, String)>,
}

impl RawSection {
    fn get(&self, key: &str) -> Option<(usize, &str)> {
        self.entries
            .iter()
            .find(|(_, k, _)| k == key)
            .map(|(line, _, v)| (*line, v.as_str()))
    }

    fn require(&self, key: &str) -> Result<(usize, &str), FileError> {
        self.get(key)
            .ok_or_else(|| FileError {
                line: self.line,
                message: format!("section is missing the `{key}` key"),
            })
    }
}

fn split_sections(text: &str) -> Result<Vec<RawSection>, FileError> {
    let mut sections: Vec<RawSection> = Vec::new();
    for (index, raw_line) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(inner) = line.strip_prefix('[') {
            let Some(inner) = inner.strip_suffix(']') else {
                return err(line_no, "section header is missing the closing `]`");
            };
            let mut words = inner.split_whitespace();
            let section = match (words.next(), words.next(), words.next()) {
                (Some("space"), None, _) => RawSection {
                    kind: SectionKind::Space,
                    name: String::new(),
                    line: line_no,
                    entries: Vec::new(),
                },
                (Some("plot"), Some(name), None) => RawSection {
                    kind: SectionKind::Plot,
                    name: name.to_string(),
                    line: line_no,
                    entries: Vec::new(),
                },
                (Some("pullback"), Some(name), None) => RawSection {
                    kind: SectionKind::Pullback,
                    name: name.to_string(),
                    line: line_no,
                    entries: Vec::new(),
                },
                (Some("compute"), None, _) => RawSection {
                    kind: SectionKind::Compute,
                    name: String::new(),
                    line: line_no,
                    entries: Vec::new(),
                },
                _ => return err(line_no, format!("unknown section header `[{inner}]`")),
            };
            sections.push(section);
            continue;
        }
        let Some(eq) = line.find('=') else {
            return err(line_no, "expected `key = value`");
        };
        let key = line[..eq].trim().to_string();
        let value = line[eq + 1..].trim().to_string();
        if key.is_empty() {
            return err(line_no, "empty key before `=`");
        }
        let Some(section) = sections.last_mut() else {
            return err(line_no, "key/value line before the first section header");
        };
        if key != "symmetry" && section.entries.iter().any(|(_, k, _)| *k == key) {
            return err(line_no, format!("duplicate key `{key}` in this section"));
        }
        section.entries.push((line_no, key, value));
    }
    Ok(sections)
}

fn split_list(value: &str, separator: char) -> Vec<(usize, String)> {
    if value.trim().is_empty() {
        return Vec::new();
    }
    value
        .split(separator)
        .enumerate()
        .map(|(i, piece)| (i, piece.trim().to_string()))
        .collect()
}

fn parse_vars(line: usize, value: &str) -> Result<VarContext, FileError> {
    VarContext::new(value.split_whitespace().map(str::to_string))
        .map_err(|e| FileError {
            line,
            message: e.to_string(),
        })
}

fn parse_poly_at(line: usize, what: &str, text: &str, ctx: &VarContext) -> Result<Polynomial, FileError> {
    parse_poly(text, ctx).map_err(|e| FileError {
        line,
        message: format!("{what}: {e}"),
    })
}

fn parse_poly_list(
    line: usize,
    what: &str,
    value: &str,
    ctx: &VarContext,
    expected: usize,
) -> Result<Vec<Polynomial>, FileError> {
    let pieces = split_list(value, ',');
    if pieces.len() != expected {
        return err(
            line,
            format!("{what}: expected {expected} comma-separated polynomials, found {}", pieces.len()),
        );
    }
    pieces
        .into_iter()
        .map(|(i, piece)| parse_poly_at(line, &format!("{what}[{i}]"), &piece, ctx))
        .collect()
}

fn check_known_keys(section: &RawSection, allowed: &[&str]) -> Result<(), FileError> {
    for (line, key, _) in &section.entries {
        if !allowed.contains(&key.as_str()) {
            return err(*line, format!("unknown key `{key}` in this section"));
        }
    }
    Ok(())
}

/// Parses and validates a presentation file.
pub fn parse_presentation(text: &str) -> Result<PresentationFile, FileError> {
    let sections = split_sections(text)?;

    let spaces: Vec<&RawSection> = sections
        .iter()
        .filter(|s| s.kind == SectionKind::Space)
        .collect();
    if spaces.len() != 1 {
        return err(0, format!("exactly one space section required, found {}", spaces.len()));
    }
    let plots: Vec<&RawSection> = sections
        .iter()
        .filter(|s| s.kind == SectionKind::Plot)
        .collect();
    if plots.len() != 2 {
        return err(0, format!("exactly two plot sections required, found {}", plots.len()));
    }
    let computes: Vec<&RawSection> = sections
        .iter()
        .filter(|s| s.kind == SectionKind::Compute)
        .collect();
    if computes.len() != 1 {
        return err(0, format!("exactly one compute section required, found {}", computes.len()));
    }
    let mut names_seen: Vec<&str> = Vec::new();
    for section in sections.iter().filter(|s| !s.name.is_empty()) {
        if names_seen.contains(&section.name.as_str()) {
            return err(section.line, format!("duplicate section name `{}`", section.name));
        }
        names_seen.push(&section.name);
    }

    // [space]
    let space_section = spaces[0];
    check_known_keys(space_section, &["vars", "equations"])?;
    let (vars_line, vars_value) = space_section.require("vars")?;
    let ambient = parse_vars(vars_line, vars_value)?;
    let equations = match space_section.get("equations") {
        None => Vec::new(),
        Some((line, value)) => split_list(value, ';')
            .into_iter()
            .map(|(i, piece)| parse_poly_at(line, &format!("equations[{i}]"), &piece, &ambient))
            .collect::<Result<Vec<_>, _>>()?,
    };

    // [plot N] — two, in file order
    let mut parsed_plots = Vec::new();
    for section in &plots {
        check_known_keys(section, &["vars", "components", "retraction", "symmetry_vars", "symmetry"])?;
        let (vars_line, vars_value) = section.require("vars")?;
        let domain = parse_vars(vars_line, vars_value)?;
        let (comp_line, comp_value) = section.require("components")?;
        let components = parse_poly_list(comp_line, "components", comp_value, &domain, ambient.len())?;
        let map = PolyMap::new(domain.clone(), components).expect("components parsed over the domain");

        let retraction = section.get("retraction");
        let symmetry_vars = section.get("symmetry_vars");
        let symmetry_lines: Vec<(usize, &str)> = section
            .entries
            .iter()
            .filter(|(_, k, _)| k == "symmetry")
            .map(|(line, _, v)| (*line, v.as_str()))
            .collect();

        let witness = match (retraction, symmetry_vars, symmetry_lines.is_empty()) {
            (Some((line, value)), None, true) => {
                let components = parse_poly_list(line, "retraction", value, &ambient, domain.len())?;
                HorizontalityWitness::Retraction(
                    PolyMap::new(ambient.clone(), components).expect("retraction parsed over ambient"),
                )
            }
            (None, Some((sv_line, sv_value)), false) => {
                let pair_vars = parse_vars(sv_line, sv_value)?;
                let mut pairs = Vec::new();
                for (line, value) in &symmetry_lines {
                    let halves: Vec<&str> = value.split('|').collect();
                    if halves.len() != 2 {
                        return err(*line, "symmetry line must contain exactly one `|`");
                    }
                    let h = parse_poly_list(*line, "symmetry h", halves[0], &pair_vars, domain.len())?;
                    let h_prime =
                        parse_poly_list(*line, "symmetry h'", halves[1], &pair_vars, domain.len())?;
                    pairs.push(SymmetryPair {
                        h: PolyMap::new(pair_vars.clone(), h).expect("parsed over pair vars"),
                        h_prime: PolyMap::new(pair_vars.clone(), h_prime)
                            .expect("parsed over pair vars"),
                    });
                }
                HorizontalityWitness::SymmetryGenerators(pairs)
            }
            (None, Some(_), true) => {
                return err(section.line, "symmetry_vars declared but no symmetry lines given");
            }
            (None, None, false) => {
                return err(section.line, "symmetry lines require a symmetry_vars declaration");
            }
            (None, None, true) => {
                return err(
                    section.line,
                    "plot must declare exactly one witness: a retraction or symmetry generators",
                );
            }
            _ => {
                return err(
                    section.line,
                    "plot must declare exactly one witness, not both a retraction and symmetry generators",
                );
            }
        };
        let plot = Plot::new(&section.name, map, witness).map_err(|e| FileError {
            line: section.line,
            message: e.to_string(),
        })?;
        parsed_plots.push(plot);
    }
    let beta = parsed_plots.pop().expect("two plots");
    let alpha = parsed_plots.pop().expect("two plots");

    // [pullback N]
    let to_alpha_key = format!("to_{}", alpha.name());
    let to_beta_key = format!("to_{}", beta.name());
    let mut charts = Vec::new();
    for section in sections.iter().filter(|s| s.kind == SectionKind::Pullback) {
        check_known_keys(section, &["vars", to_alpha_key.as_str(), to_beta_key.as_str()])?;
        let (vars_line, vars_value) = section.require("vars")?;
        let chart_vars = parse_vars(vars_line, vars_value)?;
        let (a_line, a_value) = section.require(&to_alpha_key)?;
        let to_alpha =
            parse_poly_list(a_line, &to_alpha_key, a_value, &chart_vars, alpha.domain().len())?;
        let (b_line, b_value) = section.require(&to_beta_key)?;
        let to_beta =
            parse_poly_list(b_line, &to_beta_key, b_value, &chart_vars, beta.domain().len())?;
        let chart = PullbackChart::new(
            &section.name,
            chart_vars.clone(),
            PolyMap::new(chart_vars.clone(), to_alpha).expect("parsed over chart vars"),
            PolyMap::new(chart_vars.clone(), to_beta).expect("parsed over chart vars"),
        )
        .map_err(|e| FileError {
            line: section.line,
            message: e.to_string(),
        })?;
        charts.push(chart);
    }

    // [compute]
    let compute_section = computes[0];
    check_known_keys(compute_section, &["bound", "degrees"])?;
    let (bound_line, bound_value) = compute_section.require("bound")?;
    let bound: u32 = bound_value.parse().map_err(|_| FileError {
        line: bound_line,
        message: format!("bound must be an unsigned integer, found `{bound_value}`"),
    })?;
    let (deg_line, deg_value) = compute_section.require("degrees")?;
    let degrees = deg_value
        .split_whitespace()
        .map(|w| {
            w.parse::<usize>().map_err(|_| FileError {
                line: deg_line,
                message: format!("degrees must be unsigned integers, found `{w}`"),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if degrees.is_empty() {
        return err(deg_line, "degrees list must not be empty");
    }

    let space = SpacePresentation::new(ambient, equations, alpha, beta, charts).map_err(|e| {
        FileError {
            line: 0,
            message: e.to_string(),
        }
    })?;
    Ok(PresentationFile {
        space,
        compute: ComputeSection { bound, degrees },
    })
}

fn write_poly_list(f: &mut fmt::Formatter<'_>, polys: &[Polynomial]) -> fmt::Result {
    for (i, poly) in polys.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{poly}")?;
    }
    Ok(())
}

impl fmt::Display for PresentationFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let space = &self.space;
        writeln!(f, "[space]")?;
        writeln!(f, "vars = {}", space.ambient())?;
        write!(f, "equations =")?;
        for (i, equation) in space.equations().iter().enumerate() {
            if i > 0 {
                write!(f, " ;")?;
            }
            write!(f, " {equation}")?;
        }
        writeln!(f)?;
        for plot in [space.alpha(), space.beta()] {
            writeln!(f)?;
            writeln!(f, "[plot {}]", plot.name())?;
            if plot.domain().is_empty() {
                writeln!(f, "vars =")?;
            } else {
                writeln!(f, "vars = {}", plot.domain())?;
            }
            write!(f, "components = ")?;
            write_poly_list(f, plot.map().components())?;
            writeln!(f)?;
            match plot.witness() {
                HorizontalityWitness::Retraction(q) => {
                    if q.components().is_empty() {
                        writeln!(f, "retraction =")?;
                    } else {
                        write!(f, "retraction = ")?;
                        write_poly_list(f, q.components())?;
                        writeln!(f)?;
                    }
                }
                HorizontalityWitness::SymmetryGenerators(pairs) => {
                    let pair_vars = pairs
                        .first()
                        .map(|p| p.h.source().clone())
                        .unwrap_or_else(VarContext::empty);
                    writeln!(f, "symmetry_vars = {pair_vars}")?;
                    for pair in pairs {
                        write!(f, "symmetry = ")?;
                        write_poly_list(f, pair.h.components())?;
                        write!(f, " | ")?;
                        write_poly_list(f, pair.h_prime.components())?;
                        writeln!(f)?;
                    }
                }
            }
        }
        for chart in space.charts() {
            writeln!(f)?;
            writeln!(f, "[pullback {}]", chart.name())?;
            if chart.vars().is_empty() {
                writeln!(f, "vars =")?;
            } else {
                writeln!(f, "vars = {}", chart.vars())?;
            }
            for (plot, map) in [
                (space.alpha(), chart.to_alpha()),
                (space.beta(), chart.to_beta()),
            ] {
                if map.components().is_empty() {
                    writeln!(f, "to_{} =", plot.name())?;
                } else {
                    write!(f, "to_{} = ", plot.name())?;
                    write_poly_list(f, map.components())?;
                    writeln!(f)?;
                }
            }
        }
        writeln!(f)?;
        writeln!(f, "[compute]")?;
        writeln!(f, "bound = {}", self.compute.bound)?;
        write!(f, "degrees =")?;
        for degree in &self.compute.degrees {
            write!(f, " {degree}")?;
        }
        writeln!(f)
    }
}
