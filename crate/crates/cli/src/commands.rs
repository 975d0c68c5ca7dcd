//! Subcommand implementations. Each returns a JSON report, a plain-text
//! rendering, and whether the computation matched its expectations.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Value};

use nilhecke::coxeter::{CoxeterSystem, Element};
use nilhecke::delta::{oracle_delta_d, DEFAULT_ORACLE_BOUND};
use nilhecke::forms::{gram_matrix, GramReport};
use nilhecke::hecke::deodhar_check;
use nilhecke::nilhecke::d_coefficient;
use nilhecke::subexpr::{
    decorate, enumerate_subexpressions, format_decorations, DecoratedSubexpression, Expression,
    SubexprFilter,
};
use nilhecke::Polynomial;

use crate::error::{CliError, CliResult};
use crate::system::{parse_bits, parse_word, NamedSystem};

pub const ORACLE_BOUND_VAR: &str = "NILHECKE_ORACLE_BOUND";

#[derive(Debug)]
pub struct Output {
    pub json: Value,
    pub text: String,
    /// False when a check inside the command failed (exit status 1).
    pub ok: bool,
}

/// An exact integer as a JSON number.
pub fn int(n: &BigInt) -> Value {
    Value::Number(serde_json::Number::from_str(&n.to_string()).expect("integer literal"))
}

pub fn poly(sys: &CoxeterSystem, f: &Polynomial) -> String {
    f.display(sys.generator_names()).to_string()
}

pub fn element_word(sys: &CoxeterSystem, w: &Element) -> String {
    sys.format_word(&sys.canonical_word(w))
}

pub fn subexpression_json(d: &DecoratedSubexpression) -> Value {
    json!({
        "bits": d.bits.to_string(),
        "decorations": format_decorations(&d.decorations),
        "defect": d.defect,
    })
}

fn expression(sys: &NamedSystem, word: &str) -> CliResult<Expression> {
    let letters = parse_word(&sys.system, word)?;
    Ok(Expression::new(sys.system.clone(), letters)?)
}

fn element(sys: &NamedSystem, word: &str) -> CliResult<Element> {
    let letters = parse_word(&sys.system, word)?;
    Ok(sys.system.element_from_word(&letters)?)
}

pub fn demazure(sys: &NamedSystem, word: &str) -> CliResult<Output> {
    let expr = expression(sys, word)?;
    let star = expr.star_product();
    let canonical = element_word(&sys.system, &star);
    let json = json!({
        "system": sys.name,
        "word": sys.system.format_word(expr.letters()),
        "star_product": canonical,
        "length": star.length(),
        "reduced": expr.is_reduced(),
    });
    let text = format!("{canonical}\nlength {}\n", star.length());
    Ok(Output {
        json,
        text,
        ok: true,
    })
}

pub fn enumerate(
    sys: &NamedSystem,
    word: &str,
    x: &str,
    filter: SubexprFilter,
) -> CliResult<Output> {
    let expr = expression(sys, word)?;
    let x = element(sys, x)?;
    let found = enumerate_subexpressions(&expr, &x, filter);
    let mut text = String::new();
    for d in &found {
        writeln!(
            text,
            "{}  {}  defect {}",
            d.bits,
            format_decorations(&d.decorations),
            d.defect
        )
        .unwrap();
    }
    writeln!(text, "{} subexpressions", found.len()).unwrap();
    let json = json!({
        "system": sys.name,
        "word": sys.system.format_word(expr.letters()),
        "x": element_word(&sys.system, &x),
        "count": found.len(),
        "subexpressions": found.iter().map(subexpression_json).collect::<Vec<_>>(),
    });
    Ok(Output {
        json,
        text,
        ok: true,
    })
}

pub fn oracle_bound() -> CliResult<usize> {
    match std::env::var(ORACLE_BOUND_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::BadEnv {
            name: ORACLE_BOUND_VAR.to_string(),
            message: format!("{v:?} is not a non-negative integer"),
        }),
        Err(_) => Ok(DEFAULT_ORACLE_BOUND),
    }
}

pub fn pair(
    sys: &NamedSystem,
    word: &str,
    bits1: &str,
    bits2: &str,
    oracle: bool,
) -> CliResult<Output> {
    let expr = expression(sys, word)?;
    let (e1, e2) = (parse_bits(bits1)?, parse_bits(bits2)?);
    let value = d_coefficient(&expr, &e1, &e2)?;
    let d1 = decorate(&expr, &e1)?;
    let d2 = decorate(&expr, &e2)?;
    let rendered = poly(&sys.system, &value);
    let mut json = json!({
        "system": sys.name,
        "word": sys.system.format_word(expr.letters()),
        "x": element_word(&sys.system, &d1.endpoint),
        "e1": subexpression_json(&d1),
        "e2": subexpression_json(&d2),
        "value": rendered,
        "degree": value.graded_degree(),
    });
    let mut text = format!("{rendered}\n");
    let mut ok = true;
    if oracle {
        let q = oracle_delta_d(&expr, &e1, &e2, oracle_bound()?)?;
        let agrees = q.to_polynomial().as_ref() == Some(&value);
        ok = agrees;
        let shown = match q.to_polynomial() {
            Some(p) => poly(&sys.system, &p),
            None => format!(
                "({}) / ({})",
                poly(&sys.system, q.numerator()),
                poly(&sys.system, &q.denominator())
            ),
        };
        json["oracle"] = json!({ "value": shown, "agrees": agrees });
        writeln!(
            text,
            "oracle {shown}: {}",
            if agrees { "agrees" } else { "DISAGREES" }
        )
        .unwrap();
    }
    Ok(Output { json, text, ok })
}

pub fn gram_json(sys: &NamedSystem, report: &GramReport) -> Value {
    let s = &sys.system;
    let matrix = |m: &Vec<Vec<BigInt>>| -> Value {
        m.iter()
            .map(|row| row.iter().map(int).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .into()
    };
    let list = |v: &Vec<BigInt>| -> Value { v.iter().map(int).collect::<Vec<_>>().into() };
    json!({
        "system": sys.name,
        "word": s.format_word(report.word.letters()),
        "x": element_word(s, &report.x),
        "restricted_to_no_d1": report.restricted_to_no_d1,
        "size": report.size(),
        "basis": report.basis.iter().map(subexpression_json).collect::<Vec<_>>(),
        "entries": report.entries.iter()
            .map(|row| row.iter().map(|f| poly(s, f)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "constant_matrix": report.constant_matrix.as_ref().map(matrix),
        "determinant": report.determinant.as_ref().map(int),
        "elementary_divisors": report.elementary_divisors.as_ref().map(list),
        "torsion_primes": report.torsion_primes.as_ref().map(list),
    })
}

pub fn gram_text(sys: &NamedSystem, report: &GramReport) -> String {
    let s = &sys.system;
    let mut text = String::new();
    for d in &report.basis {
        writeln!(
            text,
            "{}  {}  defect {}",
            d.bits,
            format_decorations(&d.decorations),
            d.defect
        )
        .unwrap();
    }
    let cells: Vec<Vec<String>> = report
        .entries
        .iter()
        .map(|row| row.iter().map(|f| poly(s, f)).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    for row in &cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        writeln!(text, "[ {} ]", line.join("  ")).unwrap();
    }
    let show = |v: &Option<Vec<BigInt>>| match v {
        Some(v) => v
            .iter()
            .map(BigInt::to_string)
            .collect::<Vec<_>>()
            .join(", "),
        None => "n/a".into(),
    };
    match &report.determinant {
        Some(d) => writeln!(text, "determinant {d}").unwrap(),
        None => writeln!(text, "determinant n/a (non-constant entries)").unwrap(),
    }
    writeln!(
        text,
        "elementary divisors ({})",
        show(&report.elementary_divisors)
    )
    .unwrap();
    writeln!(text, "torsion primes {{{}}}", show(&report.torsion_primes)).unwrap();
    text
}

pub fn gram(
    sys: &NamedSystem,
    word: &str,
    x: &str,
    filter: SubexprFilter,
    jobs: usize,
) -> CliResult<Output> {
    let expr = expression(sys, word)?;
    let x = element(sys, x)?;
    let report = gram_matrix(&expr, &x, filter, jobs.max(1))?;
    Ok(Output {
        json: gram_json(sys, &report),
        text: gram_text(sys, &report),
        ok: true,
    })
}

pub fn deodhar(sys: &NamedSystem, word: &str) -> CliResult<Output> {
    let expr = expression(sys, word)?;
    let report = deodhar_check(&expr);
    let s = &sys.system;
    let discrepancy = report.discrepancy.as_ref().map(|d| {
        json!({
            "x": element_word(s, &d.element),
            "hecke": d.hecke.to_string(),
            "defects": d.defects.to_string(),
        })
    });
    let json = json!({
        "system": sys.name,
        "word": s.format_word(expr.letters()),
        "checked": report.checked,
        "unaccounted": report.unaccounted.to_string(),
        "discrepancy": discrepancy,
        "status": if report.passed() { "PASS" } else { "FAIL" },
    });
    let text = match &report.discrepancy {
        None if report.passed() => format!("PASS ({} elements checked)\n", report.checked),
        None => format!(
            "FAIL: {} subexpressions end outside the support\n",
            report.unaccounted
        ),
        Some(d) => format!(
            "FAIL at {}: hecke {} vs defects {}\n",
            element_word(s, &d.element),
            d.hecke,
            d.defects
        ),
    };
    Ok(Output {
        json,
        text,
        ok: report.passed(),
    })
}
