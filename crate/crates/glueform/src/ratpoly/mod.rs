//! Exact rational arithmetic and canonical multivariate polynomials.
//!
//! Coefficients are arbitrary-precision rationals ([`Rational`], backed by
//! `num::BigRational`), always stored reduced with a positive denominator.
//! A [`Polynomial`] is a map from monomials to nonzero coefficients over a
//! fixed, ordered [`VarContext`]; terms are kept in graded lexicographic
//! order, so structural equality coincides with mathematical equality and
//! printing is deterministic.  [`PolyMap`] bundles several polynomials over
//! a common source context into a polynomial map between Euclidean spaces.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{BigInt, One, Signed, Zero};

use crate::error::Error;

mod parse;

pub use parse::{parse_poly, ParseError};

/// Exact rational number, reduced, with positive denominator.  Zero is
/// represented uniquely as `0/1`; `num::BigRational` maintains all of this
/// on every operation.
pub type Rational = num::BigRational;

/// Shorthand for a rational from small integers.  Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `n` or `n/d`.
pub fn rational_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn is_valid_var_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// An ordered list of distinct variable names.  The order is fixed for the
/// context's lifetime and determines monomial exponent positions.
#[derive(Debug, Clone, Eq)]
pub struct VarContext {
    names: Arc<Vec<String>>,
}

impl PartialEq for VarContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl std::hash::Hash for VarContext {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.names.hash(state);
    }
}

impl VarContext {
    /// Builds a context from variable names, validating that each matches
    /// `[A-Za-z_][A-Za-z0-9_]*` and that there are no duplicates.
    pub fn new<I, S>(names: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if !is_valid_var_name(name) {
                return Err(Error::InvalidVariableName(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(Error::DuplicateVariableName(name.clone()));
            }
        }
        Ok(VarContext {
            names: Arc::new(names),
        })
    }

    /// The zero-variable context of a point domain.
    pub fn empty() -> Self {
        VarContext {
            names: Arc::new(Vec::new()),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl fmt::Display for VarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(" "))
    }
}

/// Exponent vector of a single monomial; its length always equals the
/// variable count of the owning polynomial's context.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn constant(nvars: usize) -> Self {
        Monomial {
            exponents: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range");
        let mut exponents = vec![0; nvars];
        exponents[index] = 1;
        Monomial { exponents }
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn total_degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.exponents.len(), other.exponents.len());
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// Graded lexicographic order: total degree first, then lexicographic on
/// the exponent vector.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials over `nvars` variables with total degree at most `bound`,
/// in ascending graded lexicographic order.
pub fn monomials_up_to(nvars: usize, bound: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    for degree in 0..=bound {
        if nvars == 0 {
            if degree == 0 {
                out.push(Monomial::constant(0));
            }
            continue;
        }
        fill_degree(&mut out, &mut current, 0, degree);
    }
    out
}

fn fill_degree(out: &mut Vec<Monomial>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial::from_exponents(current.clone()));
        return;
    }
    for e in 0..=remaining {
        current[pos] = e;
        fill_degree(out, current, pos + 1, remaining - e);
    }
}

/// Canonical multivariate polynomial with exact rational coefficients.
///
/// Invariants: no stored coefficient is zero, and the term map is keyed in
/// graded lexicographic order.  Equality of canonical forms is equality of
/// polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    context: VarContext,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(context: VarContext) -> Self {
        Polynomial {
            context,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(context: VarContext) -> Self {
        Self::constant(context, Rational::one())
    }

    pub fn constant(context: VarContext, value: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Monomial::constant(context.len()), value);
        }
        Polynomial { context, terms }
    }

    /// The polynomial `x_index`.
    pub fn var(context: VarContext, index: usize) -> Self {
        assert!(
            index < context.len(),
            "variable index {index} out of range for context [{context}]"
        );
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(context.len(), index), Rational::one());
        Polynomial { context, terms }
    }

    /// Builds a polynomial from raw terms, dropping zero coefficients and
    /// merging duplicates.
    pub fn from_terms<I>(context: VarContext, raw: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (mono, coeff) in raw {
            assert_eq!(
                mono.exponents().len(),
                context.len(),
                "monomial length does not match context"
            );
            let entry = terms.entry(mono).or_insert_with(Rational::zero);
            *entry += &coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial { context, terms }
    }

    pub fn context(&self) -> &VarContext {
        &self.context
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_constant() && c.is_one())
                .unwrap_or(false)
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Terms in descending graded lexicographic order (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(self.context.clone());
        }
        Polynomial {
            context: self.context.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.context.clone());
        for _ in 0..exponent {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> Polynomial {
        assert!(
            var < self.context.len(),
            "variable index {var} out of range for context [{}]",
            self.context
        );
        let terms = self.terms.iter().filter_map(|(mono, coeff)| {
            let e = mono.exponents()[var];
            if e == 0 {
                return None;
            }
            let mut exps = mono.exponents().to_vec();
            exps[var] = e - 1;
            let factor = Rational::from_integer(BigInt::from(e));
            Some((Monomial::from_exponents(exps), coeff * factor))
        });
        Polynomial::from_terms(self.context.clone(), terms)
    }

    /// Substitutes `map.components()[i]` for variable `i`.  The map's target
    /// arity must equal this polynomial's variable count; the result lives
    /// over the map's source context.
    pub fn compose(&self, map: &PolyMap) -> Polynomial {
        assert_eq!(
            map.target_arity(),
            self.context.len(),
            "composition arity mismatch: map has {} components, polynomial has {} variables",
            map.target_arity(),
            self.context.len()
        );
        // powers[i][e] = components[i]^e, extended on demand
        let mut powers: Vec<Vec<Polynomial>> = map
            .components
            .iter()
            .map(|_| vec![Polynomial::one(map.source.clone())])
            .collect();
        let mut acc = Polynomial::zero(map.source.clone());
        for (mono, coeff) in &self.terms {
            let mut term = Polynomial::constant(map.source.clone(), coeff.clone());
            for (i, &e) in mono.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &map.components[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(
            point.len(),
            self.context.len(),
            "evaluation point length does not match variable count"
        );
        let mut acc = Rational::zero();
        for (mono, coeff) in &self.terms {
            let mut value = coeff.clone();
            for (i, &e) in mono.exponents().iter().enumerate() {
                for _ in 0..e {
                    value *= &point[i];
                }
            }
            acc += value;
        }
        acc
    }
}

fn assert_same_context(a: &Polynomial, b: &Polynomial) {
    assert!(
        a.context == b.context,
        "polynomial context mismatch: [{}] vs [{}]",
        a.context,
        b.context
    );
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_same_context(self, rhs);
        let mut terms = self.terms.clone();
        for (mono, coeff) in &rhs.terms {
            let entry = terms.entry(mono.clone()).or_insert_with(Rational::zero);
            *entry += coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial {
            context: self.context.clone(),
            terms,
        }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            context: self.context.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_same_context(self, rhs);
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mono = ma.mul(mb);
                let entry = terms.entry(mono).or_insert_with(Rational::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial {
            context: self.context.clone(),
            terms,
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (mono, coeff)) in self.terms().enumerate() {
            let negative = coeff.is_negative();
            let magnitude = coeff.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write_magnitude_term(f, &self.context, mono, &magnitude)?;
        }
        Ok(())
    }
}

fn write_magnitude_term(
    f: &mut fmt::Formatter<'_>,
    context: &VarContext,
    mono: &Monomial,
    magnitude: &Rational,
) -> fmt::Result {
    let mono_s = monomial_string(context, mono);
    if mono_s.is_empty() {
        write!(f, "{}", rational_string(magnitude))
    } else if magnitude.is_one() {
        write!(f, "{mono_s}")
    } else {
        write!(f, "{}*{mono_s}", rational_string(magnitude))
    }
}

fn monomial_string(context: &VarContext, mono: &Monomial) -> String {
    let mut factors = Vec::new();
    for (i, &e) in mono.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => factors.push(context.name(i).to_string()),
            _ => factors.push(format!("{}^{}", context.name(i), e)),
        }
    }
    factors.join("*")
}

/// A polynomial map between Euclidean spaces: `target_arity` component
/// polynomials over a common source context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap {
    source: VarContext,
    components: Vec<Polynomial>,
}

impl PolyMap {
    /// Every component must live over `source`.
    pub fn new(source: VarContext, components: Vec<Polynomial>) -> Result<Self, Error> {
        for component in &components {
            if component.context() != &source {
                return Err(Error::ContextMismatch {
                    expected: source.to_string(),
                    found: component.context().to_string(),
                });
            }
        }
        Ok(PolyMap { source, components })
    }

    pub fn identity(context: VarContext) -> Self {
        let components = (0..context.len())
            .map(|i| Polynomial::var(context.clone(), i))
            .collect();
        PolyMap {
            source: context,
            components,
        }
    }

    pub fn source(&self) -> &VarContext {
        &self.source
    }

    pub fn target_arity(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// The composite `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &PolyMap) -> PolyMap {
        assert_eq!(
            inner.target_arity(),
            self.source.len(),
            "map composition arity mismatch"
        );
        PolyMap {
            source: inner.source.clone(),
            components: self.components.iter().map(|c| c.compose(inner)).collect(),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Vec<Rational> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, component) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{component}")?;
        }
        write!(f, ")")
    }
}
