//! Independent evaluation of pairings in the smash product `Q * W`.
//!
//! Here `D_s = (1/α_s)(δ_id - δ_s)` and `(f δ_x)(g δ_y) = f·x(g) δ_{xy}`,
//! with coefficients in the fraction field of `R`. Nothing in this module
//! uses the Demazure-operator pushdown of the D-basis code.

use std::collections::BTreeMap;

use num_traits::Signed;

use crate::coxeter::{CoxeterSystem, Element, Generator};
use crate::error::{Error, Result};
use crate::nilhecke::{check_no_d1, decorate_pair, pairing_factors, Factor};
use crate::poly::{act_element, root_image, Polynomial};
use crate::subexpr::{Bits, Expression};

/// Word-length cap for [`oracle_delta_d`] unless configured otherwise.
pub const DEFAULT_ORACLE_BOUND: usize = 12;

/// A quotient of polynomials.
///
/// The denominator is kept as a multiset of factors, each with a positive
/// leading coefficient, and factors are cancelled against the numerator
/// whenever the division is exact. Equality is decided by
/// cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    numerator: Polynomial,
    factors: BTreeMap<Polynomial, u32>,
}

impl RationalFunction {
    pub fn from_polynomial(f: Polynomial) -> Self {
        RationalFunction {
            numerator: f,
            factors: BTreeMap::new(),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_polynomial(Polynomial::zero(nvars))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> Polynomial {
        let n = self.numerator.nvars();
        self.factors
            .iter()
            .fold(Polynomial::one(n), |acc, (g, &k)| &acc * &g.pow(k))
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    fn cancel(&mut self) {
        if self.numerator.is_zero() {
            self.factors.clear();
            return;
        }
        let keys: Vec<Polynomial> = self.factors.keys().cloned().collect();
        for g in keys {
            while let Some(k) = self.factors.get(&g).copied() {
                match self.numerator.div_exact(&g) {
                    Some(q) => {
                        self.numerator = q;
                        if k == 1 {
                            self.factors.remove(&g);
                        } else {
                            self.factors.insert(g.clone(), k - 1);
                        }
                    }
                    None => break,
                }
            }
        }
    }

    /// Divides by a nonzero polynomial.
    pub fn div_poly(&self, g: &Polynomial) -> Self {
        assert!(!g.is_zero(), "division by zero");
        let mut out = self.clone();
        if let Some(c) = g.constant_value() {
            if let Some(q) = out
                .numerator
                .div_exact(&Polynomial::constant(g.nvars(), c.clone()))
            {
                out.numerator = q;
                return out;
            }
        }
        let g = if g.leading_coefficient().is_some_and(|c| c.is_negative()) {
            out.numerator = -&out.numerator;
            -g
        } else {
            g.clone()
        };
        *out.factors.entry(g).or_insert(0) += 1;
        out.cancel();
        out
    }

    pub fn mul_poly(&self, f: &Polynomial) -> Self {
        let mut out = RationalFunction {
            numerator: &self.numerator * f,
            factors: self.factors.clone(),
        };
        out.cancel();
        out
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            numerator: -&self.numerator,
            factors: self.factors.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let mut lcm = self.factors.clone();
        for (g, &k) in &other.factors {
            let e = lcm.entry(g.clone()).or_insert(0);
            *e = (*e).max(k);
        }
        let lift = |r: &Self| {
            lcm.iter().fold(r.numerator.clone(), |acc, (g, &k)| {
                let have = r.factors.get(g).copied().unwrap_or(0);
                &acc * &g.pow(k - have)
            })
        };
        let mut out = RationalFunction {
            numerator: &lift(self) + &lift(other),
            factors: lcm.clone(),
        };
        out.cancel();
        out
    }

    /// `self / other`.
    pub fn div(&self, other: &Self) -> Self {
        let mut out = other
            .factors
            .iter()
            .fold(self.clone(), |acc, (g, &k)| acc.mul_poly(&g.pow(k)));
        out = out.div_poly(&other.numerator);
        out.cancel();
        out
    }

    /// The polynomial this function equals, if it is one.
    pub fn to_polynomial(&self) -> Option<Polynomial> {
        if self.factors.is_empty() {
            return Some(self.numerator.clone());
        }
        self.numerator.div_exact(&self.denominator())
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator() == &other.numerator * &self.denominator()
    }
}

/// `Σ q_w δ_w` with rational coefficients on the left.
#[derive(Clone, Debug)]
pub struct DeltaElement {
    nvars: usize,
    coeffs: BTreeMap<Element, RationalFunction>,
}

impl DeltaElement {
    pub fn one(sys: &CoxeterSystem) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(
            sys.identity(),
            RationalFunction::from_polynomial(Polynomial::one(sys.rank())),
        );
        DeltaElement {
            nvars: sys.rank(),
            coeffs,
        }
    }

    pub fn coefficient(&self, w: &Element) -> RationalFunction {
        self.coeffs
            .get(w)
            .cloned()
            .unwrap_or_else(|| RationalFunction::zero(self.nvars))
    }

    pub fn support(&self) -> impl Iterator<Item = &Element> {
        self.coeffs.keys()
    }

    fn add_term(&mut self, w: Element, q: RationalFunction) {
        let sum = match self.coeffs.remove(&w) {
            Some(old) => old.add(&q),
            None => q,
        };
        if !sum.is_zero() {
            self.coeffs.insert(w, sum);
        }
    }

    /// `(q δ_x)·g = q·x(g) δ_x`.
    pub fn mul_right_poly(&self, g: &Polynomial) -> Self {
        let mut out = DeltaElement {
            nvars: self.nvars,
            coeffs: BTreeMap::new(),
        };
        for (x, q) in &self.coeffs {
            out.add_term(x.clone(), q.mul_poly(&act_element(x, g)));
        }
        out
    }

    /// `(q δ_x)·D_s = q/x(α_s) δ_x - q/x(α_s) δ_{xs}`.
    pub fn mul_right_d(&self, sys: &CoxeterSystem, s: Generator) -> Self {
        let mut out = DeltaElement {
            nvars: self.nvars,
            coeffs: BTreeMap::new(),
        };
        for (x, q) in &self.coeffs {
            let part = q.div_poly(&root_image(x, s));
            out.add_term(sys.right_mul(x, s), part.neg());
            out.add_term(x.clone(), part);
        }
        out
    }
}

/// `D_w` expanded in the δ-basis along the canonical word of `w`.
pub fn delta_expansion(sys: &CoxeterSystem, w: &Element) -> DeltaElement {
    sys.canonical_word(w)
        .into_iter()
        .fold(DeltaElement::one(sys), |acc, s| acc.mul_right_d(sys, s))
}

/// `d(e¹, e²)` computed in the δ-basis: the `δ_x` coefficient of the
/// product divided by the `δ_x` coefficient of `D_x`.
pub fn oracle_delta_d(
    expr: &Expression,
    e1: &Bits,
    e2: &Bits,
    bound: usize,
) -> Result<RationalFunction> {
    let (d1, d2) = decorate_pair(expr, e1, e2)?;
    check_no_d1(&d1, &d2)?;
    if expr.len() > bound {
        return Err(Error::OracleBoundExceeded {
            length: expr.len(),
            bound,
        });
    }
    let sys = expr.system();
    let x = &d1.endpoint;
    let mut product = DeltaElement::one(sys);
    for factor in pairing_factors(&d1, &d2) {
        product = match factor {
            Factor::Root(s) => product.mul_right_poly(&Polynomial::var(sys.rank(), s)),
            Factor::One => product,
            Factor::D(s) => product.mul_right_d(sys, s),
        };
    }
    let leading = delta_expansion(sys, x).coefficient(x);
    debug_assert!(!leading.is_zero());
    Ok(product.coefficient(x).div(&leading))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::cartan_type_a;
    use crate::poly::root;
    use std::sync::Arc;

    #[test]
    fn rational_arithmetic() {
        let s = Polynomial::var(2, 0);
        let t = Polynomial::var(2, 1);
        let one = RationalFunction::from_polynomial(Polynomial::one(2));
        // 1/s - 1/t = (t - s)/(st)
        let a = one.div_poly(&s).add(&one.div_poly(&t).neg());
        let b = RationalFunction::from_polynomial(&t - &s).div_poly(&(&s * &t));
        assert_eq!(a, b);
        // (s² - t²)/(s - t) = s + t
        let c = RationalFunction::from_polynomial(&(&s * &s) - &(&t * &t)).div_poly(&(&s - &t));
        assert_eq!(c.to_polynomial(), Some(&s + &t));
        assert_eq!(one.div_poly(&s).to_polynomial(), None);
        let neg = one.div_poly(&(-&s));
        assert_eq!(neg, one.div_poly(&s).neg());
    }

    #[test]
    fn d_squared_vanishes_in_delta_basis() {
        let a2 = CoxeterSystem::from_cartan(&cartan_type_a(2)).unwrap();
        let dss = DeltaElement::one(&a2)
            .mul_right_d(&a2, 0)
            .mul_right_d(&a2, 0);
        assert_eq!(dss.support().count(), 0);
    }

    #[test]
    fn dihedral_oracle() {
        let g2 = Arc::new(CoxeterSystem::from_cartan(&[vec![2, -3], vec![-1, 2]]).unwrap());
        let w = Expression::new(g2.clone(), vec![0, 1, 0]).unwrap();
        let e1: Bits = "100".parse().unwrap();
        let e2: Bits = "001".parse().unwrap();
        let q = |a: &Bits, b: &Bits| {
            oracle_delta_d(&w, a, b, DEFAULT_ORACLE_BOUND)
                .unwrap()
                .to_polynomial()
        };
        assert_eq!(q(&e1, &e1), Some(Polynomial::constant(2, -3)));
        assert_eq!(q(&e1, &e2), Some(root(&g2, 1)));
        assert_eq!(q(&e2, &e2), Some(&root(&g2, 0) * &root(&g2, 1)));
        assert_eq!(
            oracle_delta_d(&w, &e1, &e2, 2).unwrap_err(),
            Error::OracleBoundExceeded {
                length: 3,
                bound: 2
            }
        );
        let empty = Expression::new(g2.clone(), vec![]).unwrap();
        assert_eq!(
            oracle_delta_d(&empty, &Bits::default(), &Bits::default(), 12)
                .unwrap()
                .to_polynomial(),
            Some(Polynomial::one(2))
        );
    }
}
