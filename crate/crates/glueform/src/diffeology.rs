//! Space presentations by two-plot generating families.
//!
//! A [`SpacePresentation`] carries ambient coordinates, defining equations,
//! two [`Plot`]s and a user-supplied list of [`PullbackChart`]s into the
//! fibered product of the plots.  Verification is symbolic and exact: plot
//! containment, witness equations and chart commutation are checked as
//! polynomial identities.  Horizontality of a form on a plot domain is
//! decided by the plot's [`HorizontalityWitness`]: a retraction makes the
//! condition vacuous, while symmetry generators turn it into a finite list
//! of pullback equalities.  Completeness of symmetry generators and of the
//! chart list is asserted by the user, never inferred.

use std::fmt;

use num::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::exterior::{monomial_basis, DifferentialForm};
use crate::linalg::ConstraintBuilder;
use crate::ratpoly::{rational_string, Monomial, PolyMap, Polynomial, Rational, VarContext};

/// Witness that pins down which forms on a plot domain are horizontal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HorizontalityWitness {
    /// A polynomial left inverse of the plot map.  Its existence forces any
    /// reparametrization pair `h, h'` with `map∘h = map∘h'` to satisfy
    /// `h = h'`, so every form is horizontal.
    Retraction(PolyMap),
    /// A finite, user-asserted list of reparametrization pairs generating
    /// the horizontality constraint.
    SymmetryGenerators(Vec<SymmetryPair>),
}

/// A pair of changes of coordinates with common source that the plot map
/// equalizes: `map∘h = map∘h_prime`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryPair {
    pub h: PolyMap,
    pub h_prime: PolyMap,
}

/// A named polynomial map into the ambient space together with its
/// horizontality witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plot {
    name: String,
    map: PolyMap,
    witness: HorizontalityWitness,
}

impl Plot {
    /// Validates arity coherence between the map and the witness.
    pub fn new(
        name: impl Into<String>,
        map: PolyMap,
        witness: HorizontalityWitness,
    ) -> Result<Self, Error> {
        match &witness {
            HorizontalityWitness::Retraction(q) => {
                if q.source().len() != map.target_arity() {
                    return Err(Error::ArityMismatch {
                        expected: map.target_arity(),
                        found: q.source().len(),
                    });
                }
                if q.target_arity() != map.source().len() {
                    return Err(Error::ArityMismatch {
                        expected: map.source().len(),
                        found: q.target_arity(),
                    });
                }
            }
            HorizontalityWitness::SymmetryGenerators(pairs) => {
                for pair in pairs {
                    if pair.h.source() != pair.h_prime.source() {
                        return Err(Error::ContextMismatch {
                            expected: pair.h.source().to_string(),
                            found: pair.h_prime.source().to_string(),
                        });
                    }
                    for side in [&pair.h, &pair.h_prime] {
                        if side.target_arity() != map.source().len() {
                            return Err(Error::ArityMismatch {
                                expected: map.source().len(),
                                found: side.target_arity(),
                            });
                        }
                    }
                }
            }
        }
        Ok(Plot {
            name: name.into(),
            map,
            witness,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn map(&self) -> &PolyMap {
        &self.map
    }

    pub fn domain(&self) -> &VarContext {
        self.map.source()
    }

    pub fn witness(&self) -> &HorizontalityWitness {
        &self.witness
    }

    /// Short regime tag for reports.
    pub fn witness_description(&self) -> String {
        match &self.witness {
            HorizontalityWitness::Retraction(_) => "retraction".to_string(),
            HorizontalityWitness::SymmetryGenerators(pairs) => {
                let plural = if pairs.len() == 1 { "pair" } else { "pairs" };
                format!("symmetry generators ({} {plural}, asserted)", pairs.len())
            }
        }
    }

    /// Checks the witness equations symbolically: `q∘map = id` for a
    /// retraction, `map∘h = map∘h'` for every symmetry pair.
    pub fn verify_witness(&self) -> VerifyReport {
        let mut failures = Vec::new();
        match &self.witness {
            HorizontalityWitness::Retraction(q) => {
                for (i, component) in q.components().iter().enumerate() {
                    let composed = component.compose(&self.map);
                    let expected = Polynomial::var(self.domain().clone(), i);
                    if composed != expected {
                        failures.push(format!(
                            "retraction component {i}: q∘map = {composed}, expected {expected}"
                        ));
                    }
                }
            }
            HorizontalityWitness::SymmetryGenerators(pairs) => {
                'pairs: for (pi, pair) in pairs.iter().enumerate() {
                    for (ci, component) in self.map.components().iter().enumerate() {
                        let left = component.compose(&pair.h);
                        let right = component.compose(&pair.h_prime);
                        if left != right {
                            failures.push(format!(
                                "symmetry pair {pi} component {ci}: map∘h = {left}, map∘h' = {right}"
                            ));
                            break 'pairs;
                        }
                    }
                }
            }
        }
        VerifyReport {
            subject: format!("plot {} witness [{}]", self.name, self.witness_description()),
            failures,
        }
    }

    /// Index of the first symmetry pair whose pullbacks of `w` disagree.
    /// `None` when `w` is horizontal.  Retraction witnesses make the
    /// condition vacuous.
    pub fn first_violating_pair(&self, w: &DifferentialForm) -> Result<Option<usize>, Error> {
        if w.context() != self.domain() {
            return Err(Error::ContextMismatch {
                expected: self.domain().to_string(),
                found: w.context().to_string(),
            });
        }
        match &self.witness {
            HorizontalityWitness::Retraction(_) => Ok(None),
            HorizontalityWitness::SymmetryGenerators(pairs) => {
                for (pi, pair) in pairs.iter().enumerate() {
                    if w.pullback(&pair.h) != w.pullback(&pair.h_prime) {
                        return Ok(Some(pi));
                    }
                }
                Ok(None)
            }
        }
    }

    /// Whether `w` satisfies the horizontality constraint of this plot's
    /// witness.
    pub fn is_horizontal(&self, w: &DifferentialForm) -> Result<bool, Error> {
        Ok(self.first_violating_pair(w)?.is_none())
    }

    /// Basis of the horizontal forms of the given degree with coefficient
    /// total degree at most `bound`, computed as the kernel of the stacked
    /// linear system `h*w − h'*w = 0` over the monomial-form basis.  With a
    /// retraction witness the full monomial-form basis is returned.
    pub fn horizontal_basis(&self, degree: usize, bound: u32) -> Vec<DifferentialForm> {
        let basis = monomial_basis(self.domain(), degree, bound);
        let pairs = match &self.witness {
            HorizontalityWitness::Retraction(_) => return basis,
            HorizontalityWitness::SymmetryGenerators(pairs) => pairs,
        };
        let mut builder: ConstraintBuilder<(usize, Vec<usize>, Monomial)> =
            ConstraintBuilder::new(basis.len());
        for (pi, pair) in pairs.iter().enumerate() {
            for (col, b) in basis.iter().enumerate() {
                let image = &b.pullback(&pair.h) - &b.pullback(&pair.h_prime);
                for (tuple, poly) in image.terms() {
                    for (mono, coeff) in poly.terms() {
                        builder.add((pi, tuple.clone(), mono.clone()), col, coeff.clone());
                    }
                }
            }
        }
        let matrix = builder.build(
            basis.iter().map(|b| b.to_string()).collect(),
            |(pi, tuple, mono)| format!("pair{pi}:{tuple:?}:{:?}", mono.exponents()),
        );
        matrix
            .kernel_basis()
            .iter()
            .map(|v| linear_combination(self.domain().clone(), degree, &basis, v))
            .collect()
    }
}

/// `Σ coefficients[j] · basis[j]` for same-shape forms.
pub fn linear_combination(
    context: VarContext,
    degree: usize,
    basis: &[DifferentialForm],
    coefficients: &[Rational],
) -> DifferentialForm {
    assert_eq!(basis.len(), coefficients.len());
    let mut acc = DifferentialForm::zero(context, degree);
    for (b, c) in basis.iter().zip(coefficients) {
        if !c.is_zero() {
            acc = &acc + &b.scale(c);
        }
    }
    acc
}

/// A parametrized piece of the fibered product of the two plots, with maps
/// into both plot domains that the plot maps are asserted to equalize.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackChart {
    name: String,
    vars: VarContext,
    to_alpha: PolyMap,
    to_beta: PolyMap,
}

impl PullbackChart {
    pub fn new(
        name: impl Into<String>,
        vars: VarContext,
        to_alpha: PolyMap,
        to_beta: PolyMap,
    ) -> Result<Self, Error> {
        for side in [&to_alpha, &to_beta] {
            if side.source() != &vars {
                return Err(Error::ContextMismatch {
                    expected: vars.to_string(),
                    found: side.source().to_string(),
                });
            }
        }
        Ok(PullbackChart {
            name: name.into(),
            vars,
            to_alpha,
            to_beta,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &VarContext {
        &self.vars
    }

    pub fn to_alpha(&self) -> &PolyMap {
        &self.to_alpha
    }

    pub fn to_beta(&self) -> &PolyMap {
        &self.to_beta
    }
}

/// Pass/fail outcome of one symbolic verification, with the offending
/// identities when it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub subject: String,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass() {
            write!(f, "{}: PASS", self.subject)
        } else {
            write!(f, "{}: FAIL ({})", self.subject, self.failures.join("; "))
        }
    }
}

/// Aggregate of the symbolic checks of a presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationReport {
    pub checks: Vec<VerifyReport>,
}

impl PresentationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(VerifyReport::pass)
    }
}

/// Outcome of randomized falsification.  A clean run never certifies the
/// presentation; it only fails to falsify it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplingReport {
    pub samples: u32,
    pub seed: u64,
    pub violations: Vec<String>,
}

impl SamplingReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Which of the two generating plots an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotSide {
    Alpha,
    Beta,
}

/// A diffeological space presented by ambient coordinates, defining
/// equations and a generating family of exactly two plots, together with
/// the asserted charts of their fibered product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpacePresentation {
    ambient: VarContext,
    equations: Vec<Polynomial>,
    alpha: Plot,
    beta: Plot,
    charts: Vec<PullbackChart>,
}

impl SpacePresentation {
    /// Validates structural coherence (contexts and arities).  Semantic
    /// verification is performed by the `verify_*` operations.
    pub fn new(
        ambient: VarContext,
        equations: Vec<Polynomial>,
        alpha: Plot,
        beta: Plot,
        charts: Vec<PullbackChart>,
    ) -> Result<Self, Error> {
        for equation in &equations {
            if equation.context() != &ambient {
                return Err(Error::ContextMismatch {
                    expected: ambient.to_string(),
                    found: equation.context().to_string(),
                });
            }
        }
        for plot in [&alpha, &beta] {
            if plot.map().target_arity() != ambient.len() {
                return Err(Error::ArityMismatch {
                    expected: ambient.len(),
                    found: plot.map().target_arity(),
                });
            }
        }
        for chart in &charts {
            if chart.to_alpha().target_arity() != alpha.domain().len() {
                return Err(Error::ArityMismatch {
                    expected: alpha.domain().len(),
                    found: chart.to_alpha().target_arity(),
                });
            }
            if chart.to_beta().target_arity() != beta.domain().len() {
                return Err(Error::ArityMismatch {
                    expected: beta.domain().len(),
                    found: chart.to_beta().target_arity(),
                });
            }
        }
        Ok(SpacePresentation {
            ambient,
            equations,
            alpha,
            beta,
            charts,
        })
    }

    pub fn ambient(&self) -> &VarContext {
        &self.ambient
    }

    pub fn equations(&self) -> &[Polynomial] {
        &self.equations
    }

    pub fn alpha(&self) -> &Plot {
        &self.alpha
    }

    pub fn beta(&self) -> &Plot {
        &self.beta
    }

    pub fn plot(&self, side: PlotSide) -> &Plot {
        match side {
            PlotSide::Alpha => &self.alpha,
            PlotSide::Beta => &self.beta,
        }
    }

    pub fn charts(&self) -> &[PullbackChart] {
        &self.charts
    }

    /// Containment check: every defining equation must compose with the
    /// plot map to the zero polynomial.
    pub fn verify_plot(&self, plot: &Plot) -> Result<VerifyReport, Error> {
        if plot.map().target_arity() != self.ambient.len() {
            return Err(Error::ArityMismatch {
                expected: self.ambient.len(),
                found: plot.map().target_arity(),
            });
        }
        let mut failures = Vec::new();
        for equation in &self.equations {
            let residual = equation.compose(plot.map());
            if !residual.is_zero() {
                failures.push(format!(
                    "equation {equation} composes with the plot map to {residual}"
                ));
            }
        }
        Ok(VerifyReport {
            subject: format!("plot {} containment", plot.name()),
            failures,
        })
    }

    /// Commutation check: `alpha.map∘to_alpha = beta.map∘to_beta`
    /// componentwise.
    pub fn verify_pullback_chart(&self, chart: &PullbackChart) -> Result<VerifyReport, Error> {
        if chart.to_alpha().target_arity() != self.alpha.domain().len() {
            return Err(Error::ArityMismatch {
                expected: self.alpha.domain().len(),
                found: chart.to_alpha().target_arity(),
            });
        }
        if chart.to_beta().target_arity() != self.beta.domain().len() {
            return Err(Error::ArityMismatch {
                expected: self.beta.domain().len(),
                found: chart.to_beta().target_arity(),
            });
        }
        let mut failures = Vec::new();
        for (i, component) in self.ambient.names().iter().enumerate() {
            let via_alpha = self.alpha.map().components()[i].compose(chart.to_alpha());
            let via_beta = self.beta.map().components()[i].compose(chart.to_beta());
            if via_alpha != via_beta {
                failures.push(format!(
                    "component {component}: alpha route gives {via_alpha}, beta route gives {via_beta}"
                ));
            }
        }
        Ok(VerifyReport {
            subject: format!("chart {} commutation", chart.name()),
            failures,
        })
    }

    /// Factorization check certifying that `candidate` is a plot of the
    /// generated diffeology: `candidate = plot.map ∘ h` componentwise.
    pub fn verify_factorization(
        &self,
        candidate: &PolyMap,
        through: PlotSide,
        h: &PolyMap,
    ) -> Result<VerifyReport, Error> {
        let plot = self.plot(through);
        if candidate.target_arity() != self.ambient.len() {
            return Err(Error::ArityMismatch {
                expected: self.ambient.len(),
                found: candidate.target_arity(),
            });
        }
        if h.target_arity() != plot.domain().len() {
            return Err(Error::ArityMismatch {
                expected: plot.domain().len(),
                found: h.target_arity(),
            });
        }
        if h.source() != candidate.source() {
            return Err(Error::ContextMismatch {
                expected: candidate.source().to_string(),
                found: h.source().to_string(),
            });
        }
        let mut failures = Vec::new();
        for (i, component) in plot.map().components().iter().enumerate() {
            let composed = component.compose(h);
            if composed != candidate.components()[i] {
                failures.push(format!(
                    "component {i}: plot route gives {composed}, candidate has {}",
                    candidate.components()[i]
                ));
            }
        }
        Ok(VerifyReport {
            subject: format!("factorization through plot {}", plot.name()),
            failures,
        })
    }

    /// Runs all symbolic verifications in a fixed order.
    pub fn verify_all(&self) -> PresentationReport {
        let mut checks = Vec::new();
        for plot in [&self.alpha, &self.beta] {
            checks.push(
                self.verify_plot(plot)
                    .expect("plot arity validated at construction"),
            );
            checks.push(plot.verify_witness());
        }
        for chart in &self.charts {
            checks.push(
                self.verify_pullback_chart(chart)
                    .expect("chart arity validated at construction"),
            );
        }
        PresentationReport { checks }
    }

    /// Evaluates every symbolic identity of the presentation at `samples`
    /// random rational points.  Violations are reported with their witness
    /// point; a clean run is not a proof.
    pub fn falsify_by_sampling(&self, samples: u32, seed: u64) -> SamplingReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut violations = Vec::new();
        for round in 0..samples {
            for plot in [&self.alpha, &self.beta] {
                let point = random_point(&mut rng, plot.domain().len());
                let image = plot.map().eval(&point);
                for equation in &self.equations {
                    let value = equation.eval(&image);
                    if !value.is_zero() {
                        violations.push(format!(
                            "sample {round}: plot {} leaves the zero set: equation {equation} = {} at ({})",
                            plot.name(),
                            rational_string(&value),
                            point_string(&point)
                        ));
                    }
                }
                match plot.witness() {
                    HorizontalityWitness::Retraction(q) => {
                        let back = q.eval(&image);
                        if back != point {
                            violations.push(format!(
                                "sample {round}: plot {} retraction fails at ({}): q∘map = ({})",
                                plot.name(),
                                point_string(&point),
                                point_string(&back)
                            ));
                        }
                    }
                    HorizontalityWitness::SymmetryGenerators(pairs) => {
                        for (pi, pair) in pairs.iter().enumerate() {
                            let w = random_point(&mut rng, pair.h.source().len());
                            let left = plot.map().eval(&pair.h.eval(&w));
                            let right = plot.map().eval(&pair.h_prime.eval(&w));
                            if left != right {
                                violations.push(format!(
                                    "sample {round}: plot {} symmetry pair {pi} fails at ({})",
                                    plot.name(),
                                    point_string(&w)
                                ));
                            }
                        }
                    }
                }
            }
            for chart in &self.charts {
                let point = random_point(&mut rng, chart.vars().len());
                let via_alpha = self.alpha.map().eval(&chart.to_alpha().eval(&point));
                let via_beta = self.beta.map().eval(&chart.to_beta().eval(&point));
                if via_alpha != via_beta {
                    violations.push(format!(
                        "sample {round}: chart {} does not commute at ({}): alpha route ({}), beta route ({})",
                        chart.name(),
                        point_string(&point),
                        point_string(&via_alpha),
                        point_string(&via_beta)
                    ));
                }
            }
        }
        SamplingReport {
            samples,
            seed,
            violations,
        }
    }
}

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| {
            let numer: i64 = rng.random_range(-12..=12);
            let denom: i64 = rng.random_range(1..=12);
            crate::ratpoly::rat(numer, denom)
        })
        .collect()
}

fn point_string(point: &[Rational]) -> String {
    point
        .iter()
        .map(rational_string)
        .collect::<Vec<_>>()
        .join(", ")
}
