//! Acceptance suite: one test per shipped claim, each printing a pass line
//! (run with `cargo test --test acceptance -- --nocapture` to see them).
//! Every comparison is exact; there are no tolerances anywhere.

mod common;

use std::process::Command;
use std::time::Instant;

use glueform::cli;
use glueform::diffeology::{HorizontalityWitness, Plot, PullbackChart};
use glueform::mv::GlueError;
use glueform::ratpoly::{parse_poly, PolyMap, Polynomial, VarContext};
use glueform::DifferentialForm;

use common::{ctx, random_form, random_map, read_presentation, rng};

fn cross() -> cli::PresentationFile {
    cli::parse_presentation(&read_presentation("cross.space")).unwrap()
}

fn one_point() -> cli::PresentationFile {
    cli::parse_presentation(&read_presentation("one_point.space")).unwrap()
}

fn parabola() -> cli::PresentationFile {
    cli::parse_presentation(&read_presentation("parabola.space")).unwrap()
}

#[test]
fn criterion_1_cross_cohomology_reproduced_at_every_bound() {
    let start = Instant::now();
    let text = read_presentation("cross.space");
    let file = cross();
    for bound in [0u32, 2, 4, 8] {
        let outcome = cli::cohomology(&text, "cross.space", Some(bound), &[0, 1, 2]);
        assert_eq!(outcome.exit_code, 0, "report:\n{}", outcome.report);
        let table = file.space.cohomology_report(&[0, 1, 2], bound);
        let h: Vec<usize> = table.entries.iter().map(|e| e.h).collect();
        assert_eq!(h, vec![1, 0, 0], "bound {bound}");
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "runtime budget exceeded: {elapsed:?}"
    );
    println!(
        "criterion 1: PASS - cross.space gives H^0 = 1, H^1 = 0, H^2 = 0 for D in {{0, 2, 4, 8}} ({elapsed:?})"
    );
}

#[test]
fn criterion_2_one_point_space_has_only_constants() {
    let file = one_point();
    for bound in [0u32, 1, 2, 5] {
        assert_eq!(file.space.omega_basis(0, bound).len(), 1, "bound {bound}");
        for degree in 1..=3usize {
            assert!(
                file.space.omega_basis(degree, bound).is_empty(),
                "degree {degree}, bound {bound}"
            );
        }
        let entry = file.space.cohomology(0, bound);
        assert_eq!((entry.closed, entry.exact, entry.h), (1, 0, 1));
    }
    println!(
        "criterion 2: PASS - one-point space has dim Omega^0 = 1 (constants) and Omega^k = 0 for k >= 1 at every tested bound"
    );
}

#[test]
fn criterion_3_retraction_makes_every_form_horizontal() {
    let file = cross();
    let alpha = file.space.alpha();
    for bound in 0..=8u32 {
        let expected = bound as usize + 1;
        assert_eq!(alpha.horizontal_basis(0, bound).len(), expected);
        assert_eq!(alpha.horizontal_basis(1, bound).len(), expected);
    }
    println!(
        "criterion 3: PASS - with the verified retraction the horizontal basis is the full truncated basis (D+1 at k = 0 and k = 1)"
    );
}

#[test]
fn criterion_4_exactness_audit_on_cross_and_one_point() {
    for (name, file) in [("cross", cross()), ("one-point", one_point())] {
        for degree in 0..=1usize {
            for bound in 0..=6u32 {
                let audit = file.space.exactness_audit(degree, bound);
                assert!(
                    audit.representation_injective && audit.delta_vanishes && audit.glue_accepts,
                    "{name} k={degree} D={bound}: {audit:?}"
                );
                for g in file.space.omega_basis(degree, bound) {
                    let (mu, nu) = file.space.restrict(&g);
                    let reglued = file.space.glue(mu, nu).expect("kernel vector must glue");
                    assert_eq!(reglued, g, "{name} k={degree} D={bound}");
                }
            }
        }
    }
    println!(
        "criterion 4: PASS - injectivity, delta-vanishing and glue-acceptance hold on cross and one-point for k in {{0,1}}, D in 0..=6, with glue∘restrict = id"
    );
}

#[test]
fn criterion_5_cartan_calculus_property_suite() {
    let start = Instant::now();
    let mut rng = rng(2024);
    let contexts = [ctx(&["u"]), ctx(&["u", "v"]), ctx(&["u", "v", "w"])];
    let instances = 200;

    // d∘d = 0
    for i in 0..instances {
        let c = &contexts[i % contexts.len()];
        let degree = i % (c.len() + 1);
        let w = random_form(&mut rng, c, degree, 5);
        assert!(w.ext_derivative().ext_derivative().is_zero());
    }

    // naturality: d(f*w) = f*(dw)
    for i in 0..instances {
        let source = &contexts[i % contexts.len()];
        let target = &contexts[(i + 1) % contexts.len()];
        let f = random_map(&mut rng, source, target.len(), 2);
        let w = random_form(&mut rng, target, i % (target.len() + 1), 5);
        assert_eq!(w.pullback(&f).ext_derivative(), w.ext_derivative().pullback(&f));
    }

    // functoriality: (g∘f)* = f*∘g*
    for i in 0..instances {
        let a = &contexts[i % contexts.len()];
        let b = &contexts[(i + 1) % contexts.len()];
        let c = &contexts[(i + 2) % contexts.len()];
        let f = random_map(&mut rng, a, b.len(), 2);
        let g = random_map(&mut rng, b, c.len(), 2);
        let w = random_form(&mut rng, c, i % (c.len() + 1), 5);
        assert_eq!(w.pullback(&g.compose(&f)), w.pullback(&g).pullback(&f));
    }

    // graded anticommutativity: a∧b = (-1)^{|a||b|} b∧a
    for i in 0..instances {
        let c = &contexts[i % contexts.len()];
        let da = i % (c.len() + 1);
        let db = (i / 2) % (c.len() + 1);
        let a = random_form(&mut rng, c, da, 5);
        let b = random_form(&mut rng, c, db, 5);
        let lhs = a.wedge(&b);
        let rhs = b.wedge(&a);
        let expected = if (da * db) % 2 == 1 { -&rhs } else { rhs };
        assert_eq!(lhs, expected);
    }

    // Leibniz: d(a∧b) = da∧b + (-1)^{|a|} a∧db
    for i in 0..instances {
        let c = &contexts[i % contexts.len()];
        let da = i % (c.len() + 1);
        let db = (i / 3) % (c.len() + 1);
        let a = random_form(&mut rng, c, da, 5);
        let b = random_form(&mut rng, c, db, 5);
        let lhs = a.wedge(&b).ext_derivative();
        let second = a.wedge(&b.ext_derivative());
        let signed_second = if da % 2 == 1 { -&second } else { second };
        let rhs = &a.ext_derivative().wedge(&b) + &signed_second;
        assert_eq!(lhs, rhs);
    }

    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "runtime budget exceeded: {elapsed:?}"
    );
    println!(
        "criterion 5: PASS - d∘d, naturality, functoriality, anticommutativity, Leibniz on {instances} randomized instances each ({elapsed:?})"
    );
}

#[test]
fn criterion_6_parabola_horizontal_subcomplex_dimensions() {
    let file = parabola();
    let alpha = file.space.alpha();
    for bound in 0..=8u32 {
        // brute-force parity oracle: even monomials s^0, s^2, ... at k = 0,
        // odd monomials s^1, s^3, ... at k = 1
        let even = (0..=bound).filter(|d| d % 2 == 0).count();
        let odd = (0..=bound).filter(|d| d % 2 == 1).count();
        assert_eq!(alpha.horizontal_basis(0, bound).len(), even);
        assert_eq!(alpha.horizontal_basis(0, bound).len(), (bound / 2 + 1) as usize);
        assert_eq!(alpha.horizontal_basis(1, bound).len(), odd);
        assert_eq!(
            alpha.horizontal_basis(1, bound).len(),
            (bound as usize + 1) / 2
        );
        for b in alpha.horizontal_basis(0, bound) {
            let db = b.ext_derivative();
            assert!(alpha.is_horizontal(&db).unwrap());
        }
    }
    println!(
        "criterion 6: PASS - parabola horizontal dimensions are floor(D/2)+1 at k = 0 and ceil(D/2) at k = 1, and d preserves horizontality"
    );
}

#[test]
fn criterion_7_rejection_paths_carry_exact_witnesses() {
    let file = cross();
    let space = &file.space;
    let s = space.alpha().domain().clone();
    let t = space.beta().domain().clone();

    let mu = DifferentialForm::from_poly(parse_poly("s^2", &s).unwrap());
    let nu = DifferentialForm::from_poly(parse_poly("t^2 + 1", &t).unwrap());
    let rejection = space.glue(mu, nu).unwrap_err();
    match &rejection {
        GlueError::DeltaNonzero { chart, residual } => {
            assert_eq!(chart, "origin");
            assert_eq!(residual.to_string(), "-1");
        }
        other => panic!("expected a delta rejection, got {other:?}"),
    }
    assert_eq!(
        rejection.to_string(),
        "delta nonzero on chart origin: -1"
    );

    let gamma = Plot::new(
        "gamma",
        PolyMap::new(
            s.clone(),
            vec![
                parse_poly("s", &s).unwrap(),
                parse_poly("s", &s).unwrap(),
            ],
        )
        .unwrap(),
        HorizontalityWitness::Retraction(
            PolyMap::new(
                space.ambient().clone(),
                vec![parse_poly("x", space.ambient()).unwrap()],
            )
            .unwrap(),
        ),
    )
    .unwrap();
    let report = space.verify_plot(&gamma).unwrap();
    assert!(!report.pass());
    assert!(report.failures[0].contains("s^2"), "{:?}", report.failures);

    let point = VarContext::empty();
    let shifted = PullbackChart::new(
        "shifted",
        point.clone(),
        PolyMap::new(point.clone(), vec![Polynomial::one(point.clone())]).unwrap(),
        PolyMap::new(point.clone(), vec![Polynomial::zero(point.clone())]).unwrap(),
    )
    .unwrap();
    let report = space.verify_pullback_chart(&shifted).unwrap();
    assert!(!report.pass());
    assert!(
        report.failures[0].contains("alpha route gives 1"),
        "{:?}",
        report.failures
    );

    println!(
        "criterion 7: PASS - glue cites chart origin with value -1, verify_plot cites residual s^2, verify_pullback_chart cites the mismatched routes"
    );
}

#[test]
fn criterion_8_reports_are_byte_deterministic() {
    let binary = env!("CARGO_BIN_EXE_glueform");
    let cross_path = common::presentation_path("cross.space");
    let parabola_path = common::presentation_path("parabola.space");
    let mu = common::presentation_path("forms/mu_square.form");
    let nu = common::presentation_path("forms/nu_square_shifted.form");

    let invocations: Vec<Vec<String>> = vec![
        vec!["check".into(), cross_path.display().to_string()],
        vec![
            "cohomology".into(),
            cross_path.display().to_string(),
            "--bound".into(),
            "4".into(),
        ],
        vec!["cohomology".into(), parabola_path.display().to_string()],
        vec![
            "delta".into(),
            cross_path.display().to_string(),
            "--mu".into(),
            mu.display().to_string(),
            "--nu".into(),
            nu.display().to_string(),
        ],
        vec![
            "sample".into(),
            cross_path.display().to_string(),
            "--samples".into(),
            "60".into(),
            "--seed".into(),
            "5".into(),
        ],
    ];
    for args in &invocations {
        let run = |_: usize| {
            let output = Command::new(binary)
                .args(args)
                .output()
                .expect("binary runs");
            (output.status.code(), output.stdout)
        };
        let first = run(0);
        let second = run(1);
        assert_eq!(first, second, "non-deterministic output for {args:?}");
    }
    println!(
        "criterion 8: PASS - two runs of every command produce byte-identical reports and exit codes"
    );
}
