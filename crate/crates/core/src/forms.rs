//! Gram matrices of pairings and their integer invariants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::coxeter::Element;
use crate::error::{Error, Result};
use crate::nilhecke::d_coefficient_decorated;
use crate::poly::Polynomial;
use crate::subexpr::{enumerate_subexpressions, DecoratedSubexpression, Expression, SubexprFilter};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// The no-D1 block of the intersection form of an expression at `x`.
#[derive(Clone, Debug)]
pub struct GramReport {
    pub word: Expression,
    pub x: Element,
    /// Always true: pairings involving D1 sequences are not computed.
    pub restricted_to_no_d1: bool,
    pub basis: Vec<DecoratedSubexpression>,
    pub entries: Vec<Vec<Polynomial>>,
    pub constant_matrix: Option<IntMatrix>,
    pub determinant: Option<BigInt>,
    pub elementary_divisors: Option<Vec<BigInt>>,
    pub torsion_primes: Option<Vec<BigInt>>,
}

impl GramReport {
    pub fn size(&self) -> usize {
        self.basis.len()
    }
}

/// Pairs every two subexpressions of `expr` ending at `x` that pass
/// `filter` (which is forced to exclude D1). Entries are evaluated on up to
/// `jobs` threads; the result does not depend on `jobs`.
pub fn gram_matrix(
    expr: &Expression,
    x: &Element,
    filter: SubexprFilter,
    jobs: usize,
) -> Result<GramReport> {
    let filter = SubexprFilter {
        no_d1: true,
        ..filter
    };
    let basis = enumerate_subexpressions(expr, x, filter);
    let n = basis.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let eval = |&(i, j): &(usize, usize)| d_coefficient_decorated(&basis[i], &basis[j]);
    let values: Vec<Polynomial> = if jobs > 1 && pairs.len() > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| pairs.par_iter().map(eval).collect())
    } else {
        pairs.iter().map(eval).collect()
    };

    let nvars = expr.system().rank();
    let mut entries = vec![vec![Polynomial::zero(nvars); n]; n];
    for (&(i, j), v) in pairs.iter().zip(values) {
        entries[j][i] = v.clone();
        entries[i][j] = v;
    }

    let constant_matrix: Option<IntMatrix> = entries
        .iter()
        .map(|row| row.iter().map(Polynomial::constant_value).collect())
        .collect();
    let (determinant, elementary_divisors, torsion_primes) = match &constant_matrix {
        Some(m) => {
            let divisors = smith_normal_form(m);
            let primes = primes_dividing(&divisors);
            (Some(determinant(m)), Some(divisors), Some(primes))
        }
        None => (None, None, None),
    };

    Ok(GramReport {
        word: expr.clone(),
        x: x.clone(),
        restricted_to_no_d1: true,
        basis,
        entries,
        constant_matrix,
        determinant,
        elementary_divisors,
        torsion_primes,
    })
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    assert!(
        m.iter().all(|row| row.len() == n),
        "determinant of a non-square matrix"
    );
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

/// Elementary divisors `d₁ | d₂ | ⋯`, non-negative, zeros last.
///
/// Pivots are chosen by least absolute value; rows and columns are reduced
/// by Euclidean division until the pivot divides everything after it.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.clone();
    let mut out = Vec::with_capacity(rows.min(cols));
    for k in 0..rows.min(cols) {
        loop {
            let pivot = (k..rows)
                .flat_map(|i| (k..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i, j), &(p, q)| a[i][j].abs().cmp(&a[p][q].abs()));
            let Some((pi, pj)) = pivot else {
                out.resize(rows.min(cols), BigInt::zero());
                return out;
            };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            let p = a[k][k].clone();
            let mut clean = true;
            for i in k + 1..rows {
                let q = a[i][k].div_floor(&p);
                if !q.is_zero() {
                    for j in k..cols {
                        let v = &q * &a[k][j];
                        a[i][j] -= v;
                    }
                }
                clean &= a[i][k].is_zero();
            }
            for j in k + 1..cols {
                let q = a[k][j].div_floor(&p);
                if !q.is_zero() {
                    for row in a.iter_mut().skip(k) {
                        let v = &q * &row[k];
                        row[j] -= v;
                    }
                }
                clean &= a[k][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (k + 1..rows)
                .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].mod_floor(&p).is_zero());
            match bad {
                Some((i, _)) => {
                    for j in k..cols {
                        let v = a[i][j].clone();
                        a[k][j] += v;
                    }
                }
                None => break,
            }
        }
        out.push(a[k][k].abs());
    }
    out
}

/// Primes dividing some divisor other than 0 and ±1, ascending.
pub fn primes_dividing(divisors: &[BigInt]) -> Vec<BigInt> {
    let mut primes: Vec<BigInt> = Vec::new();
    for d in divisors {
        let mut n = d.abs();
        if n <= BigInt::one() {
            continue;
        }
        let mut p = BigInt::from(2);
        while &p * &p <= n {
            if n.is_multiple_of(&p) {
                if !primes.contains(&p) {
                    primes.push(p.clone());
                }
                while n.is_multiple_of(&p) {
                    n /= &p;
                }
            }
            p += 1;
        }
        if n > BigInt::one() && !primes.contains(&n) {
            primes.push(n);
        }
    }
    primes.sort();
    primes
}

/// Torsion primes of a report whose entries are all constants.
pub fn torsion_primes(report: &GramReport) -> Result<Vec<BigInt>> {
    let m = report
        .constant_matrix
        .as_ref()
        .ok_or(Error::NonConstantEntries)?;
    Ok(primes_dividing(&smith_normal_form(m)))
}

/// Whether `b = P a Pᵀ` for some permutation matrix `P`.
pub fn equal_up_to_permutation<T: PartialEq>(a: &[Vec<T>], b: &[Vec<T>]) -> bool {
    let n = a.len();
    if b.len() != n {
        return false;
    }
    fn search<T: PartialEq>(
        a: &[Vec<T>],
        b: &[Vec<T>],
        perm: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let k = perm.len();
        if k == a.len() {
            return true;
        }
        for c in 0..a.len() {
            if used[c] {
                continue;
            }
            perm.push(c);
            let ok =
                (0..=k).all(|i| a[perm[i]][perm[k]] == b[i][k] && a[perm[k]][perm[i]] == b[k][i]);
            if ok {
                used[c] = true;
                if search(a, b, perm, used) {
                    return true;
                }
                used[c] = false;
            }
            perm.pop();
        }
        false
    }
    search(a, b, &mut Vec::with_capacity(n), &mut vec![false; n])
}

/// Converts a small integer matrix.
pub fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

pub fn to_i64_matrix(m: &IntMatrix) -> Option<Vec<Vec<i64>>> {
    m.iter()
        .map(|r| r.iter().map(ToPrimitive::to_i64).collect())
        .collect()
}
