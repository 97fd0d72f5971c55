//! The Mayer–Vietoris construction for a two-plot generating family.
//!
//! Forms on the presented space are represented concretely: a [`GluedForm`]
//! is a pair `(μ, ν)` of horizontal forms on the two plot domains whose
//! difference morphism `δ(μ, ν) = p_U*μ − p_V*ν` vanishes on every chart of
//! the fibered product.  Restriction to the pair is injective, so the pair
//! is a faithful representation; gluing re-verifies the defining
//! conditions and reports exactly which one failed.
//!
//! Truncated bases of the glued form spaces are exact kernels of a stacked
//! linear system (horizontality constraints from both witnesses plus one
//! δ-vanishing block per chart) over the direct-sum monomial-form basis.
//! Cohomology is computed per form degree `k` and coefficient degree bound
//! `D`; the source of the exactness computation is truncated at `D + 1`
//! because the exterior derivative lowers coefficient degree by exactly
//! one.

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use crate::diffeology::{linear_combination, HorizontalityWitness, Plot, SpacePresentation};
use crate::error::Error;
use crate::exterior::{increasing_tuples, monomial_basis, DifferentialForm};
use crate::linalg::{ConstraintBuilder, LabeledMatrix};
use crate::ratpoly::{monomials_up_to, Monomial, Rational};

/// A differential form on the presented space: a horizontal pair in the
/// kernel of the difference morphism.  Constructed only by [`glue`]
/// (re-verified) or by the basis and derivative operations (exact by
/// construction), so the invariants always hold.
///
/// [`glue`]: SpacePresentation::glue
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluedForm {
    degree: usize,
    mu: DifferentialForm,
    nu: DifferentialForm,
}

impl GluedForm {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The component on the first plot's domain.
    pub fn mu(&self) -> &DifferentialForm {
        &self.mu
    }

    /// The component on the second plot's domain.
    pub fn nu(&self) -> &DifferentialForm {
        &self.nu
    }
}

impl fmt::Display for GluedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.mu, self.nu)
    }
}

/// Why a pair of forms failed to glue, or a usage error in the input pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GlueError {
    Usage(Error),
    NotHorizontal { plot: String, pair_index: usize },
    DeltaNonzero { chart: String, residual: DifferentialForm },
}

impl fmt::Display for GlueError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlueError::Usage(e) => write!(f, "{e}"),
            GlueError::NotHorizontal { plot, pair_index } => write!(
                f,
                "form on plot {plot} is not horizontal: symmetry pair {pair_index} pulls it back unequally"
            ),
            GlueError::DeltaNonzero { chart, residual } => {
                write!(f, "delta nonzero on chart {chart}: {residual}")
            }
        }
    }
}

impl std::error::Error for GlueError {}

impl From<Error> for GlueError {
    fn from(e: Error) -> Self {
        GlueError::Usage(e)
    }
}

/// Dimensions of the truncated De Rham spaces at one `(k, D)` slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyEntry {
    pub degree: usize,
    pub bound: u32,
    pub dim_omega: usize,
    pub closed: usize,
    pub exact: usize,
    pub h: usize,
    /// Whether `H^k` agrees at bounds `D-2`, `D-1`, `D`; `None` when the
    /// bound is too small to look back.
    pub stable: Option<bool>,
}

/// Cohomology table for a set of form degrees at a fixed bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub bound: u32,
    pub entries: Vec<CohomologyEntry>,
}

/// Machine check of the exactness of the restriction/difference sequence
/// on the truncated bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub degree: usize,
    pub bound: u32,
    pub dim_omega: usize,
    /// The glued basis is linearly independent as pairs.
    pub representation_injective: bool,
    /// Every glued basis element has vanishing δ on every chart.
    pub delta_vanishes: bool,
    /// Every kernel vector of the stacked system is accepted by `glue`.
    pub glue_accepts: bool,
}

impl AuditReport {
    pub fn pass(&self) -> bool {
        self.representation_injective && self.delta_vanishes && self.glue_accepts
    }
}

/// Fixed coordinate grid for pairs of forms of one degree with coefficient
/// degree bounded by `bound`: one coordinate per (side, index tuple,
/// monomial).
struct PairGrid {
    index: BTreeMap<(u8, Vec<usize>, Monomial), usize>,
    len: usize,
}

impl PairGrid {
    fn new(space: &SpacePresentation, degree: usize, bound: u32) -> Self {
        let mut index = BTreeMap::new();
        let mut len = 0;
        for (side, plot) in [(0u8, space.alpha()), (1u8, space.beta())] {
            let m = plot.domain().len();
            for tuple in increasing_tuples(m, degree) {
                for mono in monomials_up_to(m, bound) {
                    index.insert((side, tuple.clone(), mono), len);
                    len += 1;
                }
            }
        }
        PairGrid { index, len }
    }

    fn vector_of(&self, mu: &DifferentialForm, nu: &DifferentialForm) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.len];
        for (side, form) in [(0u8, mu), (1u8, nu)] {
            for (tuple, poly) in form.terms() {
                for (mono, coeff) in poly.terms() {
                    let key = (side, tuple.clone(), mono.clone());
                    let slot = self
                        .index
                        .get(&key)
                        .expect("internal consistency alarm: coordinate outside the truncation grid");
                    v[*slot] = coeff.clone();
                }
            }
        }
        v
    }
}

fn matrix_from_columns(nrows: usize, columns: &[Vec<Rational>]) -> LabeledMatrix {
    let mut matrix = LabeledMatrix::zeros(
        (0..nrows).map(|i| format!("coord{i}")).collect(),
        (0..columns.len()).map(|j| format!("col{j}")).collect(),
    );
    for (j, column) in columns.iter().enumerate() {
        assert_eq!(column.len(), nrows);
        for (i, value) in column.iter().enumerate() {
            if !value.is_zero() {
                matrix.set(i, j, value.clone());
            }
        }
    }
    matrix
}

impl SpacePresentation {
    /// The difference morphism: for each chart `c`,
    /// `pullback(c.to_alpha, mu) − pullback(c.to_beta, nu)`.
    pub fn delta(
        &self,
        mu: &DifferentialForm,
        nu: &DifferentialForm,
    ) -> Result<Vec<(String, DifferentialForm)>, Error> {
        if mu.context() != self.alpha().domain() {
            return Err(Error::ContextMismatch {
                expected: self.alpha().domain().to_string(),
                found: mu.context().to_string(),
            });
        }
        if nu.context() != self.beta().domain() {
            return Err(Error::ContextMismatch {
                expected: self.beta().domain().to_string(),
                found: nu.context().to_string(),
            });
        }
        if mu.degree() != nu.degree() {
            return Err(Error::DegreeMismatch {
                expected: mu.degree(),
                found: nu.degree(),
            });
        }
        Ok(self
            .charts()
            .iter()
            .map(|chart| {
                let value = &mu.pullback(chart.to_alpha()) - &nu.pullback(chart.to_beta());
                (chart.name().to_string(), value)
            })
            .collect())
    }

    /// Glues a horizontal pair with vanishing δ into a form on the space;
    /// rejections carry the first failing condition and its witness.
    pub fn glue(
        &self,
        mu: DifferentialForm,
        nu: DifferentialForm,
    ) -> Result<GluedForm, GlueError> {
        let deltas = self.delta(&mu, &nu)?;
        if let Some(pair_index) = self.alpha().first_violating_pair(&mu)? {
            return Err(GlueError::NotHorizontal {
                plot: self.alpha().name().to_string(),
                pair_index,
            });
        }
        if let Some(pair_index) = self.beta().first_violating_pair(&nu)? {
            return Err(GlueError::NotHorizontal {
                plot: self.beta().name().to_string(),
                pair_index,
            });
        }
        for (chart, value) in deltas {
            if !value.is_zero() {
                return Err(GlueError::DeltaNonzero {
                    chart,
                    residual: value,
                });
            }
        }
        Ok(GluedForm {
            degree: mu.degree(),
            mu,
            nu,
        })
    }

    /// The restriction of a glued form back to the plot domains.  In this
    /// representation it simply returns the two components.
    pub fn restrict(&self, g: &GluedForm) -> (DifferentialForm, DifferentialForm) {
        (g.mu.clone(), g.nu.clone())
    }

    /// Componentwise exterior derivative of a glued form.  The result
    /// satisfies the glued-form invariants automatically (horizontality by
    /// the subcomplex property, δ-vanishing because δ commutes with the
    /// differentials); it is re-verified and a violation panics, since that
    /// would indicate an engine bug rather than bad input.
    pub fn d_glued(&self, g: &GluedForm) -> GluedForm {
        let dmu = g.mu.ext_derivative();
        let dnu = g.nu.ext_derivative();
        match self.glue(dmu, dnu) {
            Ok(out) => out,
            Err(e) => panic!(
                "internal consistency alarm: derivative of a glued form failed to re-glue: {e}"
            ),
        }
    }

    /// Deterministic basis of the truncated glued `k`-forms with
    /// coefficient total degree at most `bound` on each side.
    pub fn omega_basis(&self, degree: usize, bound: u32) -> Vec<GluedForm> {
        let basis_a = monomial_basis(self.alpha().domain(), degree, bound);
        let basis_b = monomial_basis(self.beta().domain(), degree, bound);
        let ncols = basis_a.len() + basis_b.len();
        let mut builder: ConstraintBuilder<(String, Vec<usize>, Monomial)> =
            ConstraintBuilder::new(ncols);

        let mut add_horizontality = |plot: &Plot, basis: &[DifferentialForm], offset: usize| {
            let pairs = match plot.witness() {
                HorizontalityWitness::Retraction(_) => return,
                HorizontalityWitness::SymmetryGenerators(pairs) => pairs,
            };
            for (pi, pair) in pairs.iter().enumerate() {
                for (j, b) in basis.iter().enumerate() {
                    let image = &b.pullback(&pair.h) - &b.pullback(&pair.h_prime);
                    for (tuple, poly) in image.terms() {
                        for (mono, coeff) in poly.terms() {
                            builder.add(
                                (format!("{}:pair{pi}", plot.name()), tuple.clone(), mono.clone()),
                                offset + j,
                                coeff.clone(),
                            );
                        }
                    }
                }
            }
        };
        add_horizontality(self.alpha(), &basis_a, 0);
        add_horizontality(self.beta(), &basis_b, basis_a.len());

        for chart in self.charts() {
            let block = format!("chart:{}", chart.name());
            for (j, b) in basis_a.iter().enumerate() {
                let image = b.pullback(chart.to_alpha());
                for (tuple, poly) in image.terms() {
                    for (mono, coeff) in poly.terms() {
                        builder.add((block.clone(), tuple.clone(), mono.clone()), j, coeff.clone());
                    }
                }
            }
            for (j, b) in basis_b.iter().enumerate() {
                let image = b.pullback(chart.to_beta());
                for (tuple, poly) in image.terms() {
                    for (mono, coeff) in poly.terms() {
                        builder.add(
                            (block.clone(), tuple.clone(), mono.clone()),
                            basis_a.len() + j,
                            -coeff.clone(),
                        );
                    }
                }
            }
        }

        let col_labels = basis_a
            .iter()
            .map(|b| format!("{}:{b}", self.alpha().name()))
            .chain(basis_b.iter().map(|b| format!("{}:{b}", self.beta().name())))
            .collect();
        let matrix = builder.build(col_labels, |(block, tuple, mono)| {
            format!("{block}:{tuple:?}:{:?}", mono.exponents())
        });
        matrix
            .kernel_basis()
            .into_iter()
            .map(|v| GluedForm {
                degree,
                mu: linear_combination(
                    self.alpha().domain().clone(),
                    degree,
                    &basis_a,
                    &v[..basis_a.len()],
                ),
                nu: linear_combination(
                    self.beta().domain().clone(),
                    degree,
                    &basis_b,
                    &v[basis_a.len()..],
                ),
            })
            .collect()
    }

    /// Truncated cohomology at one `(k, D)` slot.  `closed` is the kernel
    /// dimension of `d` on the glued basis at bound `D`; `exact` is the rank
    /// of `d` on the glued basis of degree `k−1` at bound `D+1`, whose image
    /// lands inside the bound-`D` target (checked via column-span
    /// membership).
    pub fn cohomology(&self, degree: usize, bound: u32) -> CohomologyEntry {
        let basis = self.omega_basis(degree, bound);
        let dim_omega = basis.len();

        let target_grid = PairGrid::new(self, degree + 1, bound);
        let d_columns: Vec<Vec<Rational>> = basis
            .iter()
            .map(|g| {
                let d = self.d_glued(g);
                target_grid.vector_of(&d.mu, &d.nu)
            })
            .collect();
        let closed = dim_omega - matrix_from_columns(target_grid.len, &d_columns).rank();

        let exact = if degree == 0 {
            0
        } else {
            let grid = PairGrid::new(self, degree, bound);
            let basis_columns: Vec<Vec<Rational>> = basis
                .iter()
                .map(|g| grid.vector_of(&g.mu, &g.nu))
                .collect();
            let basis_matrix = matrix_from_columns(grid.len, &basis_columns);
            let source = self.omega_basis(degree - 1, bound + 1);
            let image_columns: Vec<Vec<Rational>> = source
                .iter()
                .map(|g| {
                    let d = self.d_glued(g);
                    grid.vector_of(&d.mu, &d.nu)
                })
                .collect();
            for column in &image_columns {
                let inside = basis_matrix
                    .image_membership(column)
                    .expect("grid dimensions match by construction");
                assert!(
                    inside,
                    "internal consistency alarm: an exact form escaped the truncated glued space"
                );
            }
            matrix_from_columns(grid.len, &image_columns).rank()
        };

        assert!(
            exact <= closed && closed <= dim_omega,
            "internal consistency alarm: dimension ordering 0 <= exact <= closed <= dim violated"
        );
        CohomologyEntry {
            degree,
            bound,
            dim_omega,
            closed,
            exact,
            h: closed - exact,
            stable: None,
        }
    }

    /// Cohomology table over several form degrees at a fixed bound, with a
    /// stabilization flag comparing the three bounds `D-2, D-1, D` when
    /// available.
    pub fn cohomology_report(&self, degrees: &[usize], bound: u32) -> CohomologyReport {
        let entries = degrees
            .iter()
            .map(|&k| {
                let mut entry = self.cohomology(k, bound);
                if bound >= 2 {
                    let back_one = self.cohomology(k, bound - 1).h;
                    let back_two = self.cohomology(k, bound - 2).h;
                    entry.stable = Some(entry.h == back_one && back_one == back_two);
                }
                entry
            })
            .collect();
        CohomologyReport { bound, entries }
    }

    /// Machine-checks the exactness of the sequence on the truncated basis:
    /// linear independence of the glued basis, δ-vanishing of every element,
    /// and acceptance of every kernel vector by `glue`.
    pub fn exactness_audit(&self, degree: usize, bound: u32) -> AuditReport {
        let basis = self.omega_basis(degree, bound);
        let grid = PairGrid::new(self, degree, bound);
        let columns: Vec<Vec<Rational>> = basis
            .iter()
            .map(|g| grid.vector_of(&g.mu, &g.nu))
            .collect();
        let representation_injective =
            matrix_from_columns(grid.len, &columns).rank() == basis.len();
        let delta_vanishes = basis.iter().all(|g| {
            self.delta(&g.mu, &g.nu)
                .expect("basis forms live on the plot domains")
                .iter()
                .all(|(_, value)| value.is_zero())
        });
        let glue_accepts = basis
            .iter()
            .all(|g| self.glue(g.mu.clone(), g.nu.clone()).is_ok());
        AuditReport {
            degree,
            bound,
            dim_omega: basis.len(),
            representation_injective,
            delta_vanishes,
            glue_accepts,
        }
    }
}
