//! Cartan calculus on Euclidean domains with polynomial coefficients.
//!
//! A [`DifferentialForm`] of degree `k` over an `m`-variable context maps
//! strictly increasing `k`-tuples of variable indices to nonzero polynomial
//! coefficients.  Canonicalization happens at construction time: index
//! tuples are sorted with the permutation sign, repeated indices are
//! discarded, and zero coefficients are dropped, so equality of forms is
//! structural equality.  Degrees above the variable count normalize to the
//! zero form.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::One;

use crate::ratpoly::{monomials_up_to, PolyMap, Polynomial, Rational, VarContext};

/// Sorts an index tuple, returning the sorted tuple and whether the
/// permutation was odd.  `None` when an index repeats.
fn sort_with_sign(mut indices: Vec<usize>) -> Option<(Vec<usize>, bool)> {
    let mut swaps = 0usize;
    for i in 1..indices.len() {
        let mut j = i;
        while j > 0 && indices[j - 1] > indices[j] {
            indices.swap(j - 1, j);
            swaps += 1;
            j -= 1;
        }
    }
    if indices.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((indices, swaps % 2 == 1))
}

/// All strictly increasing `k`-tuples with entries in `0..m`, in ascending
/// lexicographic order.
pub fn increasing_tuples(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let remaining = k - current.len();
        for i in start..m {
            if m - i < remaining {
                break;
            }
            current.push(i);
            rec(m, k, i + 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Homogeneous differential form of a fixed degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialForm {
    context: VarContext,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Polynomial>,
}

impl DifferentialForm {
    /// Canonicalizing constructor.  Accepts unsorted index tuples of length
    /// `degree`; entries must be valid variable indices and coefficients
    /// must live over `context`.
    pub fn new<I>(context: VarContext, degree: usize, raw: I) -> Self
    where
        I: IntoIterator<Item = (Vec<usize>, Polynomial)>,
    {
        let m = context.len();
        let mut terms: BTreeMap<Vec<usize>, Polynomial> = BTreeMap::new();
        for (tuple, coeff) in raw {
            assert_eq!(
                tuple.len(),
                degree,
                "index tuple length does not match form degree"
            );
            assert!(
                tuple.iter().all(|&i| i < m),
                "frame index out of range for context [{context}]"
            );
            assert!(coeff.context() == &context, "coefficient context mismatch");
            if coeff.is_zero() {
                continue;
            }
            let Some((sorted, negative)) = sort_with_sign(tuple) else {
                continue;
            };
            let signed = if negative { -&coeff } else { coeff };
            match terms.entry(sorted) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get() + &signed;
                    *e.get_mut() = sum;
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(signed);
                }
            }
        }
        terms.retain(|_, p| !p.is_zero());
        DifferentialForm {
            context,
            degree,
            terms,
        }
    }

    pub fn zero(context: VarContext, degree: usize) -> Self {
        DifferentialForm {
            context,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A polynomial viewed as a 0-form.
    pub fn from_poly(poly: Polynomial) -> Self {
        let context = poly.context().clone();
        DifferentialForm::new(context, 0, [(Vec::new(), poly)])
    }

    /// The form `coeff · dx_{i1} ∧ … ∧ dx_{ik}` for an index tuple.
    pub fn monomial_form(coeff: Polynomial, indices: Vec<usize>) -> Self {
        let context = coeff.context().clone();
        let degree = indices.len();
        DifferentialForm::new(context, degree, [(indices, coeff)])
    }

    pub fn context(&self) -> &VarContext {
        &self.context
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic tuple order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Polynomial)> {
        self.terms.iter()
    }

    /// Coefficient at a (strictly increasing) index tuple; zero when absent.
    pub fn coefficient(&self, tuple: &[usize]) -> Polynomial {
        self.terms
            .get(tuple)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.context.clone()))
    }

    /// Largest coefficient total degree, `None` for the zero form.
    pub fn coefficient_degree(&self) -> Option<u32> {
        self.terms
            .values()
            .filter_map(Polynomial::total_degree)
            .max()
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        DifferentialForm::new(
            self.context.clone(),
            self.degree,
            self.terms.iter().map(|(t, p)| (t.clone(), p.scale(factor))),
        )
    }

    /// Wedge product.  Index tuples are concatenated, repeats discarded, and
    /// the rest sorted with the permutation sign.
    pub fn wedge(&self, other: &DifferentialForm) -> DifferentialForm {
        assert!(
            self.context == other.context,
            "wedge context mismatch: [{}] vs [{}]",
            self.context,
            other.context
        );
        let degree = self.degree + other.degree;
        let mut raw = Vec::new();
        for (ta, pa) in &self.terms {
            for (tb, pb) in &other.terms {
                let mut tuple = ta.clone();
                tuple.extend_from_slice(tb);
                raw.push((tuple, pa * pb));
            }
        }
        DifferentialForm::new(self.context.clone(), degree, raw)
    }

    /// Exterior derivative: `d(g·dx_I) = Σ_j (∂g/∂x_j)·dx_j ∧ dx_I`.
    pub fn ext_derivative(&self) -> DifferentialForm {
        let m = self.context.len();
        let mut raw = Vec::new();
        for (tuple, coeff) in &self.terms {
            for j in 0..m {
                let dj = coeff.partial(j);
                if dj.is_zero() {
                    continue;
                }
                let mut t = Vec::with_capacity(tuple.len() + 1);
                t.push(j);
                t.extend_from_slice(tuple);
                raw.push((t, dj));
            }
        }
        DifferentialForm::new(self.context.clone(), self.degree + 1, raw)
    }

    /// Pullback along a polynomial map:
    /// `f*(g·dx_{i1}∧…∧dx_{ik}) = (g∘f)·df_{i1}∧…∧df_{ik}`.
    /// The map's target arity must match this form's variable count; the
    /// result lives over the map's source context.
    pub fn pullback(&self, map: &PolyMap) -> DifferentialForm {
        assert_eq!(
            map.target_arity(),
            self.context.len(),
            "pullback arity mismatch: map has {} components, form has {} variables",
            map.target_arity(),
            self.context.len()
        );
        let source = map.source().clone();
        let differentials: Vec<DifferentialForm> = map
            .components()
            .iter()
            .map(|c| {
                let terms = (0..source.len()).map(|j| (vec![j], c.partial(j)));
                DifferentialForm::new(source.clone(), 1, terms)
            })
            .collect();
        let mut acc = DifferentialForm::zero(source.clone(), self.degree);
        for (tuple, coeff) in &self.terms {
            let mut term = DifferentialForm::from_poly(coeff.compose(map));
            for &i in tuple {
                term = term.wedge(&differentials[i]);
            }
            acc = &acc + &term;
        }
        acc
    }
}

fn assert_compatible(a: &DifferentialForm, b: &DifferentialForm) {
    assert!(
        a.context == b.context,
        "form context mismatch: [{}] vs [{}]",
        a.context,
        b.context
    );
    assert_eq!(a.degree, b.degree, "form degree mismatch");
}

impl Add for &DifferentialForm {
    type Output = DifferentialForm;

    fn add(self, rhs: &DifferentialForm) -> DifferentialForm {
        assert_compatible(self, rhs);
        DifferentialForm::new(
            self.context.clone(),
            self.degree,
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(t, p)| (t.clone(), p.clone())),
        )
    }
}

impl Sub for &DifferentialForm {
    type Output = DifferentialForm;

    fn sub(self, rhs: &DifferentialForm) -> DifferentialForm {
        self + &(-rhs)
    }
}

impl Neg for &DifferentialForm {
    type Output = DifferentialForm;

    fn neg(self) -> DifferentialForm {
        DifferentialForm {
            context: self.context.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(t, p)| (t.clone(), -p)).collect(),
        }
    }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        if self.degree == 0 {
            return write!(f, "{}", self.terms.values().next().unwrap());
        }
        for (i, (tuple, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({coeff})")?;
            for &index in tuple {
                write!(f, " d{}", self.context.name(index))?;
            }
        }
        Ok(())
    }
}

/// The monomial-form basis of degree-`degree` forms with coefficient total
/// degree at most `bound`: one form `x^e · dx_I` per increasing tuple `I`
/// (outer, lexicographic) and monomial `e` (inner, graded lexicographic).
pub fn monomial_basis(context: &VarContext, degree: usize, bound: u32) -> Vec<DifferentialForm> {
    let mut out = Vec::new();
    for tuple in increasing_tuples(context.len(), degree) {
        for mono in monomials_up_to(context.len(), bound) {
            let coeff = Polynomial::from_terms(context.clone(), [(mono, Rational::one())]);
            out.push(DifferentialForm::monomial_form(coeff, tuple.clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::ratpoly::{parse_poly, rat};

    fn ctx(names: &[&str]) -> VarContext {
        VarContext::new(names.iter().copied()).unwrap()
    }

    fn p(text: &str, context: &VarContext) -> Polynomial {
        parse_poly(text, context).unwrap()
    }

    fn form(context: &VarContext, entries: &[(&str, &[usize])]) -> DifferentialForm {
        let degree = entries.first().map(|(_, t)| t.len()).unwrap_or(0);
        DifferentialForm::new(
            context.clone(),
            degree,
            entries
                .iter()
                .map(|(text, tuple)| (tuple.to_vec(), p(text, context))),
        )
    }

    fn random_rat(rng: &mut ChaCha8Rng) -> Rational {
        rat(rng.random_range(-6..=6), rng.random_range(1..=4))
    }

    fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
        (0..n).map(|_| random_rat(rng)).collect()
    }

    fn det(m: &[Vec<Rational>]) -> Rational {
        let n = m.len();
        if n == 0 {
            return rat(1, 1);
        }
        let mut acc = rat(0, 1);
        for (i, row) in m.iter().enumerate() {
            if row[0] == rat(0, 1) {
                continue;
            }
            let minor: Vec<Vec<Rational>> = m
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, r)| r[1..].to_vec())
                .collect();
            let sign = if i % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            acc += sign * &row[0] * det(&minor);
        }
        acc
    }

    /// Value of a k-form at a point on k tangent vectors:
    /// Σ_I coeff_I(pt) · det(rows I of the vector matrix).
    fn eval_form(w: &DifferentialForm, point: &[Rational], vectors: &[Vec<Rational>]) -> Rational {
        assert_eq!(vectors.len(), w.degree());
        let mut acc = rat(0, 1);
        for (tuple, coeff) in w.terms() {
            let minor: Vec<Vec<Rational>> = tuple
                .iter()
                .map(|&i| vectors.iter().map(|v| v[i].clone()).collect())
                .collect();
            acc += coeff.eval(point) * det(&minor);
        }
        acc
    }

    #[test]
    fn wedge_of_repeated_differential_vanishes() {
        let xy = ctx(&["x", "y"]);
        let dx = form(&xy, &[("1", &[0])]);
        assert!(dx.wedge(&dx).is_zero());
    }

    #[test]
    fn wedge_sign_from_transposition() {
        let xy = ctx(&["x", "y"]);
        let a = form(&xy, &[("x", &[1])]); // x·dy
        let b = form(&xy, &[("y", &[0])]); // y·dx
        let expected = form(&xy, &[("-x*y", &[0, 1])]);
        let product = a.wedge(&b);
        assert_eq!(product, expected);

        // oracle: compare as alternating bilinear forms at random points
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let point = random_point(&mut rng, 2);
            let vectors = vec![random_point(&mut rng, 2), random_point(&mut rng, 2)];
            let direct = eval_form(&a, &point, &vectors[..1]) * eval_form(&b, &point, &vectors[1..])
                - eval_form(&a, &point, &vectors[1..]) * eval_form(&b, &point, &vectors[..1]);
            assert_eq!(eval_form(&product, &point, &vectors), direct);
        }
    }

    #[test]
    fn zero_form_wedge_scales_coefficients() {
        let xy = ctx(&["x", "y"]);
        let f = DifferentialForm::from_poly(p("x - 2", &xy));
        let w = form(&xy, &[("y", &[0]), ("x^2", &[1])]);
        let product = f.wedge(&w);
        assert_eq!(
            product,
            form(&xy, &[("(x - 2)*y", &[0]), ("(x - 2)*x^2", &[1])])
        );
    }

    #[test]
    fn exterior_derivative_examples() {
        let xy = ctx(&["x", "y"]);
        let w = form(&xy, &[("x", &[1])]); // x·dy
        assert_eq!(w.ext_derivative(), form(&xy, &[("1", &[0, 1])]));

        let constant = DifferentialForm::from_poly(p("7/3", &xy));
        assert!(constant.ext_derivative().is_zero());
    }

    #[test]
    fn d_squared_vanishes_on_random_forms() {
        let uvw = ctx(&["u", "v", "w"]);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let monos = monomials_up_to(3, 5);
        for _ in 0..30 {
            let degree = rng.random_range(0..=3usize);
            let tuples = increasing_tuples(3, degree);
            let raw: Vec<(Vec<usize>, Polynomial)> = (0..rng.random_range(1..=3))
                .map(|_| {
                    let tuple = tuples[rng.random_range(0..tuples.len())].clone();
                    let coeff = Polynomial::from_terms(
                        uvw.clone(),
                        (0..rng.random_range(1..=4)).map(|_| {
                            (
                                monos[rng.random_range(0..monos.len())].clone(),
                                random_rat(&mut rng),
                            )
                        }),
                    );
                    (tuple, coeff)
                })
                .collect();
            let w = DifferentialForm::new(uvw.clone(), degree, raw);
            assert!(w.ext_derivative().ext_derivative().is_zero());
        }
    }

    #[test]
    fn pullback_along_axis_plot() {
        let xy = ctx(&["x", "y"]);
        let s = ctx(&["s"]);
        let alpha = PolyMap::new(s.clone(), vec![p("s", &s), p("0", &s)]).unwrap();
        let dy = form(&xy, &[("1", &[1])]);
        let dx = form(&xy, &[("1", &[0])]);
        assert!(dy.pullback(&alpha).is_zero());
        assert_eq!(dx.pullback(&alpha), form(&s, &[("1", &[0])]));
    }

    #[test]
    fn pullback_along_identity_is_identity() {
        let xy = ctx(&["x", "y"]);
        let id = PolyMap::identity(xy.clone());
        let w = form(&xy, &[("x*y - 1", &[0, 1])]);
        assert_eq!(w.pullback(&id), w);
    }

    #[test]
    fn pullback_top_form_is_jacobian_determinant() {
        let xy = ctx(&["x", "y"]);
        let uv = ctx(&["u", "v"]);
        let f = PolyMap::new(uv.clone(), vec![p("u^2 + v", &uv), p("u*v", &uv)]).unwrap();
        let dxdy = form(&xy, &[("1", &[0, 1])]);
        let pulled = dxdy.pullback(&f);
        assert_eq!(pulled, form(&uv, &[("2*u^2 - v", &[0, 1])]));

        // oracle: f*w(pt; v1, v2) = w(f(pt); J·v1, J·v2)
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let point = random_point(&mut rng, 2);
            let vectors = vec![random_point(&mut rng, 2), random_point(&mut rng, 2)];
            let jacobian: Vec<Vec<Rational>> = f
                .components()
                .iter()
                .map(|c| (0..2).map(|j| c.partial(j).eval(&point)).collect())
                .collect();
            let pushed: Vec<Vec<Rational>> = vectors
                .iter()
                .map(|v| {
                    jacobian
                        .iter()
                        .map(|row| {
                            row.iter()
                                .zip(v)
                                .map(|(a, b)| a * b)
                                .fold(rat(0, 1), |acc, x| acc + x)
                        })
                        .collect()
                })
                .collect();
            let image = f.eval(&point);
            assert_eq!(
                eval_form(&pulled, &point, &vectors),
                eval_form(&dxdy, &image, &pushed)
            );
        }
    }

    #[test]
    fn degree_above_dimension_normalizes_to_zero() {
        let s = ctx(&["s"]);
        let ds = form(&s, &[("1", &[0])]);
        assert!(ds.wedge(&ds).is_zero());
        assert_eq!(ds.wedge(&ds).degree(), 2);
        assert!(monomial_basis(&s, 2, 6).is_empty());
    }

    #[test]
    fn monomial_basis_enumeration() {
        let s = ctx(&["s"]);
        let basis = monomial_basis(&s, 1, 2);
        let rendered: Vec<String> = basis.iter().map(|w| w.to_string()).collect();
        assert_eq!(rendered, vec!["(1) ds", "(s) ds", "(s^2) ds"]);

        let xy = ctx(&["x", "y"]);
        // 2 tuples × C(2+1, 2) monomials for k = 1, D = 1
        assert_eq!(monomial_basis(&xy, 1, 1).len(), 6);
    }

    #[test]
    fn display_format() {
        let xy = ctx(&["x", "y"]);
        assert_eq!(DifferentialForm::zero(xy.clone(), 1).to_string(), "0");
        assert_eq!(
            DifferentialForm::from_poly(p("x - 1", &xy)).to_string(),
            "x - 1"
        );
        let w = form(&xy, &[("-1", &[0, 1])]);
        assert_eq!(w.to_string(), "(-1) dx dy");
    }

    #[test]
    fn increasing_tuples_enumeration() {
        assert_eq!(increasing_tuples(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(
            increasing_tuples(3, 2),
            vec![vec![0, 1], vec![0, 2], vec![1, 2]]
        );
        assert!(increasing_tuples(2, 3).is_empty());
    }
}
