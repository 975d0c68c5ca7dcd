//! Hecke algebra in the standard basis and products of `H̲_s = H_s + v`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coxeter::{CoxeterSystem, Element, Generator};
use crate::subexpr::{defect_generating_function, Expression};

/// Laurent polynomial in `v` with integer coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    /// `c·v^e`.
    pub fn monomial(e: i64, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    pub fn v_power(e: i64) -> Self {
        Self::monomial(e, 1)
    }

    pub fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

/// Renders like `v^-1 + 2 + v^3`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (&e, c)) in self.terms.iter().enumerate() {
            let abs = c.abs();
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let var = match e {
                0 => String::new(),
                1 => "v".to_string(),
                _ => format!("v^{e}"),
            };
            if e == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{abs}*{var}")?;
            }
        }
        Ok(())
    }
}

/// Element of the Hecke algebra: coefficients on the standard basis `H_w`.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct HeckeElement {
    coeffs: BTreeMap<Element, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `H_w`.
    pub fn basis(w: Element) -> Self {
        let mut h = Self::zero();
        h.add_term(w, LaurentPoly::one());
        h
    }

    pub fn add_term(&mut self, w: Element, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(w.clone()).or_default();
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.coeffs.remove(&w);
        }
    }

    pub fn coefficient(&self, w: &Element) -> LaurentPoly {
        self.coeffs.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &Element> {
        self.coeffs.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Element, &LaurentPoly)> {
        self.coeffs.iter()
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (w, p) in &self.coeffs {
            out.add_term(w.clone(), p * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, p) in &other.coeffs {
            out.add_term(w.clone(), p.clone());
        }
        out
    }
}

/// Right multiplication by `H_s`: `H_y·H_s = H_{ys}` if `ys > y`, else
/// `H_{ys} + (v^{-1} - v)·H_y`.
pub fn mul_right_hs(sys: &CoxeterSystem, h: &HeckeElement, s: Generator) -> HeckeElement {
    let quad = &LaurentPoly::v_power(-1) - &LaurentPoly::v_power(1);
    let mut out = HeckeElement::zero();
    for (y, c) in &h.coeffs {
        let ys = sys.right_mul(y, s);
        if ys.length() < y.length() {
            out.add_term(y.clone(), c * &quad);
        }
        out.add_term(ys, c.clone());
    }
    out
}

/// Right multiplication by `H̲_s = H_s + v`.
pub fn mul_right_kl_s(sys: &CoxeterSystem, h: &HeckeElement, s: Generator) -> HeckeElement {
    mul_right_hs(sys, h, s).add(&h.scale(&LaurentPoly::v_power(1)))
}

/// `H̲_{s₁} ⋯ H̲_{s_m}` in the standard basis.
pub fn bott_samelson_product(expr: &Expression) -> HeckeElement {
    let sys = expr.system();
    expr.letters()
        .iter()
        .fold(HeckeElement::basis(sys.identity()), |h, &s| {
            mul_right_kl_s(sys, &h, s)
        })
}

/// First element whose coefficient disagrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub element: Element,
    pub hecke: LaurentPoly,
    pub defects: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeodharReport {
    pub checked: usize,
    pub discrepancy: Option<Discrepancy>,
    /// Subexpressions whose endpoint is missing from the support of the
    /// product: `2^m` minus the coefficient sums at `v = 1`.
    pub unaccounted: u128,
}

impl DeodharReport {
    pub fn passed(&self) -> bool {
        self.discrepancy.is_none() && self.unaccounted == 0
    }
}

/// Compares each standard-basis coefficient of `H̲_w̲` with the generating
/// function of defects of subexpressions ending at that element.
pub fn deodhar_check(expr: &Expression) -> DeodharReport {
    let product = bott_samelson_product(expr);
    let mut checked = 0;
    let mut accounted = BigInt::zero();
    for (x, coeff) in product.terms() {
        let defects = defect_generating_function(expr, x);
        checked += 1;
        if *coeff != defects {
            return DeodharReport {
                checked,
                discrepancy: Some(Discrepancy {
                    element: x.clone(),
                    hecke: coeff.clone(),
                    defects,
                }),
                unaccounted: 0,
            };
        }
        accounted += coeff.terms().map(|(_, c)| c).sum::<BigInt>();
    }
    let total = BigInt::one() << expr.len();
    DeodharReport {
        checked,
        discrepancy: None,
        unaccounted: (total - accounted).to_u128().unwrap_or(u128::MAX),
    }
}
