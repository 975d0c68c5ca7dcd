//! Expressions, 01-sequences and their U/D decorations.
//!
//! The enumeration of subexpressions with a fixed endpoint is a depth-first
//! search over bit prefixes. A prefix ending at `w_i` is abandoned as soon
//! as the target cannot lie below `w_i * (star product of the remaining
//! letters)` in Bruhat order, or the requested defect is out of reach.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::coxeter::{CoxeterSystem, Element, Generator};
use crate::error::{Error, Result};
use crate::hecke::LaurentPoly;

/// A word in the generators of a fixed Coxeter system.
#[derive(Clone, Debug)]
pub struct Expression {
    system: Arc<CoxeterSystem>,
    letters: Arc<[Generator]>,
}

impl Expression {
    pub fn new(system: Arc<CoxeterSystem>, letters: Vec<Generator>) -> Result<Self> {
        for &s in &letters {
            system.check_generator(s)?;
        }
        Ok(Expression {
            system,
            letters: letters.into(),
        })
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn system_arc(&self) -> &Arc<CoxeterSystem> {
        &self.system
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `w̲_•`.
    pub fn product(&self) -> Element {
        self.system
            .element_from_word(&self.letters)
            .expect("letters validated at construction")
    }

    /// `w̲_*`.
    pub fn star_product(&self) -> Element {
        self.system
            .demazure_fold(&self.system.identity(), &self.letters)
    }

    pub fn is_reduced(&self) -> bool {
        self.product().length() == self.len()
    }
}

impl PartialEq for Expression {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters
            && (Arc::ptr_eq(&self.system, &other.system) || self.system == other.system)
    }
}

impl Eq for Expression {}

/// A 01-sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits(pub Vec<bool>);

impl Bits {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn zeros(m: usize) -> Self {
        Bits(vec![false; m])
    }

    /// All `2^m` sequences in lexicographic order.
    pub fn all(m: usize) -> impl Iterator<Item = Bits> {
        assert!(m < 64);
        (0u64..1 << m).map(move |n| Bits((0..m).map(|i| n >> (m - 1 - i) & 1 == 1).collect()))
    }
}

impl FromStr for Bits {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(format!("invalid bit {other:?}")),
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Bits)
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decoration {
    U0,
    U1,
    D0,
    D1,
}

impl Decoration {
    fn new(up: bool, bit: bool) -> Self {
        match (up, bit) {
            (true, false) => Decoration::U0,
            (true, true) => Decoration::U1,
            (false, false) => Decoration::D0,
            (false, true) => Decoration::D1,
        }
    }

    pub fn bit(self) -> bool {
        matches!(self, Decoration::U1 | Decoration::D1)
    }

    pub fn is_up(self) -> bool {
        matches!(self, Decoration::U0 | Decoration::U1)
    }

    fn defect_change(self) -> i64 {
        match self {
            Decoration::U0 => 1,
            Decoration::D0 => -1,
            _ => 0,
        }
    }
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decoration::U0 => "U0",
            Decoration::U1 => "U1",
            Decoration::D0 => "D0",
            Decoration::D1 => "D1",
        })
    }
}

impl FromStr for Decoration {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "U0" => Ok(Decoration::U0),
            "U1" => Ok(Decoration::U1),
            "D0" => Ok(Decoration::D0),
            "D1" => Ok(Decoration::D1),
            other => Err(format!("invalid decoration {other:?}")),
        }
    }
}

/// Joins decorations with single spaces, e.g. `U1 U0 D0`.
pub fn format_decorations(decorations: &[Decoration]) -> String {
    decorations
        .iter()
        .map(Decoration::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedSubexpression {
    pub expression: Expression,
    pub bits: Bits,
    pub decorations: Vec<Decoration>,
    pub endpoint: Element,
    pub defect: i64,
}

impl DecoratedSubexpression {
    pub fn has_d1(&self) -> bool {
        has_d1(self)
    }
}

pub fn decorate(expr: &Expression, bits: &Bits) -> Result<DecoratedSubexpression> {
    if bits.len() != expr.len() {
        return Err(Error::LengthMismatch {
            expected: expr.len(),
            found: bits.len(),
        });
    }
    let sys = expr.system();
    let mut w = sys.identity();
    let mut defect = 0;
    let mut decorations = Vec::with_capacity(bits.len());
    for (&s, &bit) in expr.letters().iter().zip(&bits.0) {
        let d = Decoration::new(!w.has_right_descent(s), bit);
        defect += d.defect_change();
        decorations.push(d);
        if bit {
            w = sys.right_mul(&w, s);
        }
    }
    Ok(DecoratedSubexpression {
        expression: expr.clone(),
        bits: bits.clone(),
        decorations,
        endpoint: w,
        defect,
    })
}

pub fn has_d1(d: &DecoratedSubexpression) -> bool {
    d.decorations.contains(&Decoration::D1)
}

/// The letters with bit 1 form a reduced word.
pub fn selected_letters_reduced(expr: &Expression, bits: &Bits) -> Result<bool> {
    if bits.len() != expr.len() {
        return Err(Error::LengthMismatch {
            expected: expr.len(),
            found: bits.len(),
        });
    }
    let chosen: Vec<Generator> = expr
        .letters()
        .iter()
        .zip(&bits.0)
        .filter(|(_, &b)| b)
        .map(|(&s, _)| s)
        .collect();
    Ok(expr.system().element_from_word(&chosen)?.length() == chosen.len())
}

/// The subexpression taking every letter that goes up; its endpoint is the
/// star product of the expression.
pub fn greedy_subexpression(expr: &Expression) -> DecoratedSubexpression {
    let sys = expr.system();
    let mut w = sys.identity();
    let bits = expr
        .letters()
        .iter()
        .map(|&s| {
            let up = !w.has_right_descent(s);
            if up {
                w = sys.right_mul(&w, s);
            }
            up
        })
        .collect();
    decorate(expr, &Bits(bits)).expect("lengths agree")
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SubexprFilter {
    pub no_d1: bool,
    pub exact_defect: Option<i64>,
    pub max_defect: Option<i64>,
}

impl SubexprFilter {
    pub fn all() -> Self {
        Self::default()
    }

    pub fn no_d1() -> Self {
        SubexprFilter {
            no_d1: true,
            ..Self::default()
        }
    }

    pub fn with_exact_defect(mut self, d: i64) -> Self {
        self.exact_defect = Some(d);
        self
    }

    pub fn with_max_defect(mut self, d: i64) -> Self {
        self.max_defect = Some(d);
        self
    }

    pub fn accepts(&self, d: &DecoratedSubexpression) -> bool {
        !(self.no_d1 && d.has_d1())
            && self.exact_defect.is_none_or(|e| d.defect == e)
            && self.max_defect.is_none_or(|e| d.defect <= e)
    }
}

struct Search<'a> {
    sys: &'a CoxeterSystem,
    expr: &'a Expression,
    target: &'a Element,
    filter: SubexprFilter,
    // reduced words of the star products of each suffix
    suffix_words: Vec<Vec<Generator>>,
    bits: Vec<bool>,
    decorations: Vec<Decoration>,
    out: Vec<DecoratedSubexpression>,
}

impl Search<'_> {
    fn defect_reachable(&self, i: usize, length: usize, defect: i64) -> bool {
        let remaining = (self.expr.len() - i) as i64;
        let dl = (self.target.length() as i64 - length as i64).abs();
        // every letter that is not U0/D0 changes the length by one, so at
        // least |Δℓ| of the remaining letters leave the defect unchanged
        let slack = remaining - dl;
        if slack < 0 {
            return false;
        }
        let (lo, hi) = (defect - slack, defect + slack);
        let parity = |d: i64| (d - defect - slack).rem_euclid(2) == 0;
        if let Some(e) = self.filter.exact_defect {
            if e < lo || e > hi || !parity(e) {
                return false;
            }
        }
        if let Some(e) = self.filter.max_defect {
            if lo > e {
                return false;
            }
        }
        true
    }

    fn visit(&mut self, i: usize, w: &Element, defect: i64) {
        let m = self.expr.len();
        if i == m {
            if w == self.target
                && self.filter.exact_defect.is_none_or(|e| defect == e)
                && self.filter.max_defect.is_none_or(|e| defect <= e)
            {
                self.out.push(DecoratedSubexpression {
                    expression: self.expr.clone(),
                    bits: Bits(self.bits.clone()),
                    decorations: self.decorations.clone(),
                    endpoint: w.clone(),
                    defect,
                });
            }
            return;
        }
        if self.target.length() > w.length() + (m - i) {
            return;
        }
        if !self.defect_reachable(i, w.length(), defect) {
            return;
        }
        let bound = self.sys.demazure_fold(w, &self.suffix_words[i]);
        if !self.sys.bruhat_leq(self.target, &bound) {
            return;
        }
        let s = self.expr.letters()[i];
        let up = !w.has_right_descent(s);
        for bit in [false, true] {
            let d = Decoration::new(up, bit);
            if self.filter.no_d1 && d == Decoration::D1 {
                continue;
            }
            self.bits.push(bit);
            self.decorations.push(d);
            if bit {
                let ws = self.sys.right_mul(w, s);
                self.visit(i + 1, &ws, defect);
            } else {
                self.visit(i + 1, w, defect + d.defect_change());
            }
            self.bits.pop();
            self.decorations.pop();
        }
    }
}

/// Reduced words for `s_i * s_{i+1} * ⋯ * s_m`, one per suffix start `i`.
fn suffix_star_words(sys: &CoxeterSystem, letters: &[Generator]) -> Vec<Vec<Generator>> {
    // Inversion reverses star products, so fold the reversed suffix from
    // the right and read the resulting reduced word backwards.
    let m = letters.len();
    let mut words = vec![Vec::new(); m + 1];
    let mut z = sys.identity();
    let mut zword: Vec<Generator> = Vec::new();
    for i in (0..m).rev() {
        let s = letters[i];
        if !z.has_right_descent(s) {
            z = sys.right_mul(&z, s);
            zword.push(s);
        }
        words[i] = zword.iter().rev().copied().collect();
    }
    words
}

/// All subexpressions of `expr` with endpoint `x` that pass `filter`, in
/// lexicographic order of their bits.
pub fn enumerate_subexpressions(
    expr: &Expression,
    x: &Element,
    filter: SubexprFilter,
) -> Vec<DecoratedSubexpression> {
    let sys = expr.system();
    let mut search = Search {
        sys,
        expr,
        target: x,
        filter,
        suffix_words: suffix_star_words(sys, expr.letters()),
        bits: Vec::with_capacity(expr.len()),
        decorations: Vec::with_capacity(expr.len()),
        out: Vec::new(),
    };
    search.visit(0, &sys.identity(), 0);
    search.out
}

/// `Σ v^{defect(e)}` over the subexpressions `e` with endpoint `x`.
pub fn defect_generating_function(expr: &Expression, x: &Element) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for d in enumerate_subexpressions(expr, x, SubexprFilter::all()) {
        p.add_term(d.defect, 1.into());
    }
    p
}
