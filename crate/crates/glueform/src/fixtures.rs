//! Shared presentation fixtures for unit tests.

use crate::diffeology::{
    HorizontalityWitness, Plot, PullbackChart, SpacePresentation, SymmetryPair,
};
use crate::ratpoly::{parse_poly, PolyMap, Polynomial, VarContext};

fn ctx(names: &[&str]) -> VarContext {
    VarContext::new(names.iter().copied()).unwrap()
}

fn pmap(source: &VarContext, components: &[&str]) -> PolyMap {
    PolyMap::new(
        source.clone(),
        components
            .iter()
            .map(|c| parse_poly(c, source).unwrap())
            .collect(),
    )
    .unwrap()
}

/// The union of the two coordinate axes in the plane, generated by the two
/// axis inclusions with retraction witnesses, with the single point chart
/// at the origin.
pub(crate) fn cross() -> SpacePresentation {
    let ambient = ctx(&["x", "y"]);
    let s = ctx(&["s"]);
    let t = ctx(&["t"]);
    let point = VarContext::empty();
    let alpha = Plot::new(
        "alpha",
        pmap(&s, &["s", "0"]),
        HorizontalityWitness::Retraction(pmap(&ambient, &["x"])),
    )
    .unwrap();
    let beta = Plot::new(
        "beta",
        pmap(&t, &["0", "t"]),
        HorizontalityWitness::Retraction(pmap(&ambient, &["y"])),
    )
    .unwrap();
    let origin = PullbackChart::new(
        "origin",
        point.clone(),
        pmap(&point, &["0"]),
        pmap(&point, &["0"]),
    )
    .unwrap();
    SpacePresentation::new(
        ambient.clone(),
        vec![parse_poly("x*y", &ambient).unwrap()],
        alpha,
        beta,
        vec![origin],
    )
    .unwrap()
}

/// The plot `s ↦ s²` with the symmetry pair `(w1, -w1)`.
pub(crate) fn parabola_plot(name: &str, var: &str) -> Plot {
    let domain = ctx(&[var]);
    let w = ctx(&["w1"]);
    Plot::new(
        name,
        pmap(&domain, &[&format!("{var}^2")]),
        HorizontalityWitness::SymmetryGenerators(vec![SymmetryPair {
            h: pmap(&w, &["w1"]),
            h_prime: pmap(&w, &["-w1"]),
        }]),
    )
    .unwrap()
}

/// Two copies of the parabola plot glued along the diagonal chart.
pub(crate) fn parabola_space() -> SpacePresentation {
    let ambient = ctx(&["x"]);
    let u = ctx(&["u"]);
    let diagonal = PullbackChart::new("diag", u.clone(), pmap(&u, &["u"]), pmap(&u, &["u"])).unwrap();
    SpacePresentation::new(
        ambient,
        vec![],
        parabola_plot("alpha", "s"),
        parabola_plot("beta", "t"),
        vec![diagonal],
    )
    .unwrap()
}

/// Both plots constant at the origin of the plane cut out by `x = y = 0`,
/// with the diagonal point chart.
pub(crate) fn one_point() -> SpacePresentation {
    let ambient = ctx(&["x", "y"]);
    let point = VarContext::empty();
    let constant = |name: &str| {
        Plot::new(
            name,
            PolyMap::new(
                point.clone(),
                vec![
                    Polynomial::zero(point.clone()),
                    Polynomial::zero(point.clone()),
                ],
            )
            .unwrap(),
            HorizontalityWitness::Retraction(PolyMap::new(ambient.clone(), vec![]).unwrap()),
        )
        .unwrap()
    };
    let diagonal = PullbackChart::new(
        "diag",
        point.clone(),
        PolyMap::new(point.clone(), vec![]).unwrap(),
        PolyMap::new(point.clone(), vec![]).unwrap(),
    )
    .unwrap();
    SpacePresentation::new(
        ambient.clone(),
        vec![
            parse_poly("x", &ambient).unwrap(),
            parse_poly("y", &ambient).unwrap(),
        ],
        constant("a"),
        constant("b"),
        vec![diagonal],
    )
    .unwrap()
}
