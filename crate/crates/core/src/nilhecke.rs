//! The nil Hecke ring as a free left `R`-module on `{D_w}`.
//!
//! Elements are only ever multiplied on the right, by `D_s` or by a
//! polynomial. Moving a polynomial to the left of `D_w` uses
//! `D_s f = (sf) D_s + ∂_s(f)` one letter at a time along a reduced word.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::coxeter::{CoxeterSystem, Element, Generator};
use crate::error::{Error, Result};
use crate::poly::{act, demazure, Polynomial};
use crate::subexpr::{decorate, Bits, DecoratedSubexpression, Decoration, Expression};

/// `Σ f_w D_w` with polynomial coefficients on the left.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NHElement {
    nvars: usize,
    coeffs: BTreeMap<Element, Polynomial>,
}

impl NHElement {
    pub fn zero(sys: &CoxeterSystem) -> Self {
        NHElement {
            nvars: sys.rank(),
            coeffs: BTreeMap::new(),
        }
    }

    /// `1 = D_id`.
    pub fn one(sys: &CoxeterSystem) -> Self {
        Self::term(sys, sys.identity(), Polynomial::one(sys.rank()))
    }

    /// `f·D_w`.
    pub fn term(sys: &CoxeterSystem, w: Element, f: Polynomial) -> Self {
        let mut e = Self::zero(sys);
        e.add_term(w, f);
        e
    }

    /// `D_w` for a reduced word of `w`.
    pub fn d(sys: &CoxeterSystem, w: &Element) -> Self {
        Self::term(sys, w.clone(), Polynomial::one(sys.rank()))
    }

    pub fn add_term(&mut self, w: Element, f: Polynomial) {
        if f.is_zero() {
            return;
        }
        match self.coeffs.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &f;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn coefficient(&self, w: &Element) -> Polynomial {
        self.coeffs
            .get(w)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.nvars))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Element, &Polynomial)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Element> {
        self.coeffs.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, f) in &other.coeffs {
            out.add_term(w.clone(), f.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        NHElement {
            nvars: self.nvars,
            coeffs: self.coeffs.iter().map(|(w, f)| (w.clone(), -f)).collect(),
        }
    }

    /// Left multiplication by a polynomial.
    pub fn scale_left(&self, f: &Polynomial) -> Self {
        let mut out = NHElement {
            nvars: self.nvars,
            coeffs: BTreeMap::new(),
        };
        for (w, g) in &self.coeffs {
            out.add_term(w.clone(), f * g);
        }
        out
    }

    fn retain(&mut self, keep: impl Fn(&Element) -> bool) {
        self.coeffs.retain(|w, _| keep(w));
    }
}

impl fmt::Display for NHElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(w, c)| format!("({})·D[len {}]", c.display(&names), w.length()))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `E·D_s`: `D_w D_s` is `D_{ws}` when `ws > w` and zero otherwise.
pub fn mul_right_d(sys: &CoxeterSystem, e: &NHElement, s: Generator) -> NHElement {
    let mut out = NHElement::zero(sys);
    for (w, f) in &e.coeffs {
        if !w.has_right_descent(s) {
            out.add_term(sys.right_mul(w, s), f.clone());
        }
    }
    out
}

/// Which right descent to peel off when pushing a polynomial through `D_w`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DescentChoice {
    #[default]
    Least,
    Greatest,
}

impl DescentChoice {
    fn pick(self, sys: &CoxeterSystem, w: &Element) -> Generator {
        let mut descents = sys.generators().filter(|&s| w.has_right_descent(s));
        match self {
            DescentChoice::Least => descents.next(),
            DescentChoice::Greatest => descents.next_back(),
        }
        .expect("non-identity element has a descent")
    }
}

type Corrections = Vec<(Element, BigInt)>;

/// Memoized pushdown of linear forms: `D_w λ = (wλ) D_w + Σ n_v D_v`
/// where every `v` has length `ℓ(w) - 1` and every `n_v` is an integer.
pub struct LinearPushdown<'a> {
    sys: &'a CoxeterSystem,
    choice: DescentChoice,
    memo: HashMap<(Element, Vec<i64>), Corrections>,
}

impl<'a> LinearPushdown<'a> {
    pub fn new(sys: &'a CoxeterSystem, choice: DescentChoice) -> Self {
        LinearPushdown {
            sys,
            choice,
            memo: HashMap::new(),
        }
    }

    /// The scalars `n_v`, sorted by element.
    pub fn corrections(&mut self, w: &Element, lambda: &[i64]) -> Corrections {
        if w.is_identity() {
            return Vec::new();
        }
        let key = (w.clone(), lambda.to_vec());
        if let Some(c) = self.memo.get(&key) {
            return c.clone();
        }
        let sys = self.sys;
        let s = self.choice.pick(sys, w);
        let prefix = sys.right_mul(w, s);
        // ∂_s(λ) = Σ_t cartan[s][t] λ_t and sλ = λ - ∂_s(λ) α_s
        let ds: i64 = sys
            .generators()
            .map(|t| sys.pairing(s, t) * lambda[t])
            .sum();
        let mut reflected = lambda.to_vec();
        reflected[s] = reflected[s]
            .checked_sub(ds)
            .expect("linear form coefficient overflow");

        let mut acc: BTreeMap<Element, BigInt> = BTreeMap::new();
        for (v, n) in self.corrections(&prefix, &reflected) {
            if !v.has_right_descent(s) {
                *acc.entry(sys.right_mul(&v, s)).or_default() += n;
            }
        }
        *acc.entry(prefix).or_default() += BigInt::from(ds);
        let out: Corrections = acc.into_iter().filter(|(_, n)| !n.is_zero()).collect();
        self.memo.insert(key, out.clone());
        out
    }

    /// `E·λ` for a linear form `λ`.
    pub fn mul_right(&mut self, e: &NHElement, lambda: &Polynomial) -> Result<NHElement> {
        let coeffs = linear_coeffs(lambda)?;
        let n = self.sys.rank();
        let mut out = NHElement::zero(self.sys);
        for (w, f) in &e.coeffs {
            let mut image = vec![0i64; n];
            for (t, &c) in coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (i, &r) in w.root_image(t).iter().enumerate() {
                    image[i] += c * r;
                }
            }
            out.add_term(w.clone(), f * &Polynomial::linear(&image));
            for (v, k) in self.corrections(w, &coeffs) {
                out.add_term(v, f.scale(&k));
            }
        }
        Ok(out)
    }
}

fn linear_coeffs(lambda: &Polynomial) -> Result<Vec<i64>> {
    let coeffs = lambda
        .linear_coefficients()
        .ok_or_else(|| Error::NotLinear(lambda.degree().unwrap_or(0)))?;
    Ok(coeffs
        .iter()
        .map(|c| c.to_i64().expect("linear form coefficient overflow"))
        .collect())
}

/// `E·λ` for a linear form `λ`.
pub fn mul_right_linear(
    sys: &CoxeterSystem,
    e: &NHElement,
    lambda: &Polynomial,
) -> Result<NHElement> {
    LinearPushdown::new(sys, DescentChoice::default()).mul_right(e, lambda)
}

/// `E·f` for an arbitrary polynomial.
///
/// Linear and constant `f` take the memoized linear path; anything else is
/// pushed through each `D_w` letter by letter.
pub fn mul_right_poly(sys: &CoxeterSystem, e: &NHElement, f: &Polynomial) -> NHElement {
    if let Some(c) = f.constant_value() {
        return e.scale_left(&Polynomial::constant(sys.rank(), c));
    }
    if f.is_homogeneous() && f.degree() == Some(1) {
        return mul_right_linear(sys, e, f).expect("checked linear");
    }
    let mut memo = HashMap::new();
    let mut out = NHElement::zero(sys);
    for (w, g) in &e.coeffs {
        for (v, h) in pushdown_poly(sys, w, f, &mut memo) {
            out.add_term(v, g * &h);
        }
    }
    out
}

/// `E·(λ₁ ⋯ λ_k)` applied as `k` successive linear multiplications.
pub fn mul_right_linear_factors(
    sys: &CoxeterSystem,
    e: &NHElement,
    factors: &[Polynomial],
) -> Result<NHElement> {
    let mut push = LinearPushdown::new(sys, DescentChoice::default());
    factors
        .iter()
        .try_fold(e.clone(), |acc, lambda| push.mul_right(&acc, lambda))
}

type PolyTerms = Vec<(Element, Polynomial)>;

// D_w f = Σ g_v D_v, recursing on w = w's: D_w f = D_{w'}(sf) D_s + D_{w'} ∂_s(f)
fn pushdown_poly(
    sys: &CoxeterSystem,
    w: &Element,
    f: &Polynomial,
    memo: &mut HashMap<(Element, Polynomial), PolyTerms>,
) -> PolyTerms {
    if f.is_zero() {
        return Vec::new();
    }
    if w.is_identity() {
        return vec![(w.clone(), f.clone())];
    }
    let key = (w.clone(), f.clone());
    if let Some(r) = memo.get(&key) {
        return r.clone();
    }
    let s = DescentChoice::Least.pick(sys, w);
    let prefix = sys.right_mul(w, s);
    let mut acc = NHElement::zero(sys);
    for (v, g) in pushdown_poly(sys, &prefix, &act(sys, s, f), memo) {
        if !v.has_right_descent(s) {
            acc.add_term(sys.right_mul(&v, s), g);
        }
    }
    let df = demazure(sys, s, f).expect("Demazure quotient is exact");
    for (v, g) in pushdown_poly(sys, &prefix, &df, memo) {
        acc.add_term(v, g);
    }
    let out: PolyTerms = acc.coeffs.into_iter().collect();
    memo.insert(key, out.clone());
    out
}

/// General product in the nil Hecke ring.
pub fn nh_mul(sys: &CoxeterSystem, a: &NHElement, b: &NHElement) -> NHElement {
    let mut out = NHElement::zero(sys);
    for (v, g) in &b.coeffs {
        let mut part = mul_right_poly(sys, a, g);
        for s in sys.reduced_word(v) {
            part = mul_right_d(sys, &part, s);
        }
        out = out.add(&part);
    }
    out
}

/// One factor of the product defining a pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    Root(Generator),
    One,
    D(Generator),
}

impl Factor {
    fn choose(s: Generator, d1: Decoration, d2: Decoration) -> Self {
        match (d1 == Decoration::U0, d2 == Decoration::U0) {
            (true, true) => Factor::Root(s),
            (true, false) | (false, true) => Factor::One,
            (false, false) => Factor::D(s),
        }
    }
}

/// Decorates both sequences and checks they share an endpoint.
pub fn decorate_pair(
    expr: &Expression,
    e1: &Bits,
    e2: &Bits,
) -> Result<(DecoratedSubexpression, DecoratedSubexpression)> {
    let d1 = decorate(expr, e1)?;
    let d2 = decorate(expr, e2)?;
    if d1.endpoint != d2.endpoint {
        return Err(Error::EndpointMismatch);
    }
    Ok((d1, d2))
}

/// The factors `f_1, …, f_m`: `α_s` where both are U0, `1` where exactly
/// one is U0, `D_s` otherwise.
pub fn pairing_factors(d1: &DecoratedSubexpression, d2: &DecoratedSubexpression) -> Vec<Factor> {
    d1.expression
        .letters()
        .iter()
        .zip(d1.decorations.iter().zip(&d2.decorations))
        .map(|(&s, (&a, &b))| Factor::choose(s, a, b))
        .collect()
}

/// Evaluates a product of factors left to right.
///
/// When `target` is given, terms that can no longer contribute to its
/// coefficient are dropped along the way.
fn evaluate_factors(
    sys: &CoxeterSystem,
    factors: &[Factor],
    target: Option<&Element>,
) -> NHElement {
    let mut push = LinearPushdown::new(sys, DescentChoice::default());
    let mut remaining_d = factors.iter().filter(|f| matches!(f, Factor::D(_))).count();
    let mut remaining_roots = factors
        .iter()
        .filter(|f| matches!(f, Factor::Root(_)))
        .count();
    let mut acc = NHElement::one(sys);
    for f in factors {
        match *f {
            Factor::Root(s) => {
                acc = push
                    .mul_right(&acc, &Polynomial::var(sys.rank(), s))
                    .expect("simple root is linear");
                remaining_roots -= 1;
            }
            Factor::One => {}
            Factor::D(s) => {
                acc = mul_right_d(sys, &acc, s);
                remaining_d -= 1;
            }
        }
        if let Some(x) = target {
            // D factors raise length by one, root factors lower it by at most one
            let goal = x.length();
            acc.retain(|w| {
                w.length() + remaining_d >= goal && w.length() <= goal + remaining_roots
            });
        }
    }
    acc
}

/// `f(e¹, e²) = f_1 f_2 ⋯ f_m`.
pub fn f_element(expr: &Expression, e1: &Bits, e2: &Bits) -> Result<NHElement> {
    let (d1, d2) = decorate_pair(expr, e1, e2)?;
    Ok(evaluate_factors(
        expr.system(),
        &pairing_factors(&d1, &d2),
        None,
    ))
}

pub(crate) fn check_no_d1(d1: &DecoratedSubexpression, d2: &DecoratedSubexpression) -> Result<()> {
    if d1.has_d1() {
        return Err(Error::HasD1(1));
    }
    if d2.has_d1() {
        return Err(Error::HasD1(2));
    }
    Ok(())
}

/// `d(e¹, e²)`: the coefficient of `D_x` in `f(e¹, e²)`, where `x` is the
/// common endpoint. Both sequences must be free of D1.
pub fn d_coefficient(expr: &Expression, e1: &Bits, e2: &Bits) -> Result<Polynomial> {
    let (d1, d2) = decorate_pair(expr, e1, e2)?;
    check_no_d1(&d1, &d2)?;
    Ok(d_coefficient_decorated(&d1, &d2))
}

/// Same as [`d_coefficient`] for already validated decorated sequences.
pub fn d_coefficient_decorated(
    d1: &DecoratedSubexpression,
    d2: &DecoratedSubexpression,
) -> Polynomial {
    let sys = d1.expression.system();
    let x = &d1.endpoint;
    evaluate_factors(sys, &pairing_factors(d1, d2), Some(x)).coefficient(x)
}
