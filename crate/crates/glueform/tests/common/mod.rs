//! Shared generators and paths for the integration suites.

use std::path::PathBuf;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use glueform::exterior::{increasing_tuples, DifferentialForm};
use glueform::ratpoly::{rat, Monomial, PolyMap, Polynomial, Rational, VarContext};

pub fn presentation_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../presentations")
        .join(name)
}

pub fn read_presentation(name: &str) -> String {
    let path = presentation_path(name);
    std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ctx(names: &[&str]) -> VarContext {
    VarContext::new(names.iter().copied()).unwrap()
}

pub fn random_rat(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.random_range(-6..=6), rng.random_range(1..=4))
}

fn random_monomial(rng: &mut ChaCha8Rng, nvars: usize, max_degree: u32) -> Monomial {
    loop {
        let exps: Vec<u32> = (0..nvars).map(|_| rng.random_range(0..=max_degree)).collect();
        if exps.iter().sum::<u32>() <= max_degree {
            return Monomial::from_exponents(exps);
        }
    }
}

pub fn random_poly(
    rng: &mut ChaCha8Rng,
    context: &VarContext,
    max_degree: u32,
    max_terms: usize,
) -> Polynomial {
    let terms = rng.random_range(1..=max_terms);
    Polynomial::from_terms(
        context.clone(),
        (0..terms).map(|_| {
            (
                random_monomial(rng, context.len(), max_degree),
                random_rat(rng),
            )
        }),
    )
}

pub fn random_map(
    rng: &mut ChaCha8Rng,
    source: &VarContext,
    target_arity: usize,
    max_degree: u32,
) -> PolyMap {
    PolyMap::new(
        source.clone(),
        (0..target_arity)
            .map(|_| random_poly(rng, source, max_degree, 3))
            .collect(),
    )
    .unwrap()
}

pub fn random_form(
    rng: &mut ChaCha8Rng,
    context: &VarContext,
    degree: usize,
    coeff_degree: u32,
) -> DifferentialForm {
    let tuples = increasing_tuples(context.len(), degree);
    if tuples.is_empty() {
        return DifferentialForm::zero(context.clone(), degree);
    }
    let terms = rng.random_range(1..=2usize);
    DifferentialForm::new(
        context.clone(),
        degree,
        (0..terms).map(|_| {
            (
                tuples[rng.random_range(0..tuples.len())].clone(),
                random_poly(rng, context, coeff_degree, 3),
            )
        }),
    )
}
