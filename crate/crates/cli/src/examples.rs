//! Worked examples with their known answers, recomputed on demand.

use std::fmt::Write as _;

use serde_json::{json, Value};

use nilhecke::forms::{equal_up_to_permutation, gram_matrix, int_matrix};
use nilhecke::nilhecke::d_coefficient;
use nilhecke::subexpr::{
    decorate, enumerate_subexpressions, format_decorations, Bits, Decoration, Expression,
    SubexprFilter,
};

use crate::commands::{element_word, poly, Output};
use crate::error::{CliError, CliResult};
use crate::system::{builtin, parse_word, NamedSystem};

pub const NAMES: &[&str] = &["ks-s8", "braden-s8", "braden-d4", "s12", "dihedral-sts"];

struct Check {
    name: String,
    expected: String,
    computed: String,
}

impl Check {
    fn new(name: impl Into<String>, expected: impl ToString, computed: impl ToString) -> Self {
        Check {
            name: name.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
        }
    }

    fn passed(&self) -> bool {
        self.expected == self.computed
    }
}

struct SelfPairing {
    system: &'static str,
    word: &'static str,
    decorations: &'static str,
    x: &'static str,
}

const KS_S8: SelfPairing = SelfPairing {
    system: "A7",
    word: "1 3 2 4 3 5 4 3 2 1 6 7 6 5 4 3",
    decorations: "U1 U1 U0 U1 U1 U1 U1 U1 U0 D0 U0 U1 U0 D0 D0 D0",
    x: "1 3 4 3 5 4 3 7",
};

const BRADEN_S8: SelfPairing = SelfPairing {
    system: "A7",
    word: "3 2 1 5 4 3 2 6 5 4 3 7 6 5",
    decorations: "U1 U1 U0 U1 U0 U1 D0 U1 U1 U0 D0 U0 D0 D0",
    x: "2 3 2 5 6 5",
};

const S12: SelfPairing = SelfPairing {
    system: "A11",
    word: "1 2 1 3 2 1 5 4 6 5 4 3 7 6 5 4 3 8 7 9 8 7 6 5 a b a 9 8 7",
    decorations:
        "U1 U1 U1 U1 U1 U1 U1 U0 U1 U1 U1 U1 U1 U1 U1 U1 U1 U1 U1 U1 U1 U1 U0 D0 U0 U1 U0 D0 D0 D0",
    x: "1 2 1 3 2 1 5 6 5 4 3 7 6 5 4 3 8 7 9 8 7 b",
};

fn system(name: &str) -> NamedSystem {
    builtin(name).expect("built-in system")
}

/// The given sequence has defect 0, ends at x, is the only defect-0
/// sequence there, and pairs with itself to 2.
fn self_pairing(example: &SelfPairing) -> CliResult<Vec<Check>> {
    let sys = system(example.system);
    let s = &sys.system;
    let expr = Expression::new(s.clone(), parse_word(s, example.word)?)?;
    let decorations: Vec<Decoration> = example
        .decorations
        .split_whitespace()
        .map(|d| d.parse().expect("valid decoration"))
        .collect();
    let bits = Bits(decorations.iter().map(|d| d.bit()).collect());
    let d = decorate(&expr, &bits)?;
    let x = s.element_from_word(&parse_word(s, example.x)?)?;
    let defect_zero =
        enumerate_subexpressions(&expr, &x, SubexprFilter::all().with_exact_defect(0));
    let value = d_coefficient(&expr, &bits, &bits)?;
    Ok(vec![
        Check::new(
            "decorations",
            example.decorations,
            format_decorations(&d.decorations),
        ),
        Check::new(
            "endpoint",
            element_word(s, &x),
            element_word(s, &d.endpoint),
        ),
        Check::new("defect", 0, d.defect),
        Check::new(
            "defect-0 sequences at x",
            bits.to_string(),
            defect_zero
                .iter()
                .map(|d| d.bits.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        ),
        Check::new("d(e,e)", 2, poly(s, &value)),
    ])
}

fn braden_d4() -> CliResult<Vec<Check>> {
    let sys = system("D4");
    let s = &sys.system;
    let expr = Expression::new(s.clone(), parse_word(s, "s u v t s u v")?)?;
    let x = s.element_from_word(&parse_word(s, "s u v")?)?;
    let report = gram_matrix(&expr, &x, SubexprFilter::all().with_exact_defect(0), 1)?;
    let expected = int_matrix(&[vec![0, -1, -1], vec![-1, 0, -1], vec![-1, -1, 0]]);
    let same = report
        .constant_matrix
        .as_ref()
        .is_some_and(|m| equal_up_to_permutation(m, &expected));
    let join = |v: &Option<Vec<num_bigint::BigInt>>| match v {
        Some(v) => v
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(","),
        None => "n/a".into(),
    };
    let e1 = "0110100".parse().expect("bits");
    let e2 = "1010010".parse().expect("bits");
    Ok(vec![
        Check::new(
            "defect-0 basis",
            "0110100 1010010 1100001",
            report
                .basis
                .iter()
                .map(|d| d.bits.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        ),
        Check::new(
            "gram matrix up to permutation",
            "[[0,-1,-1],[-1,0,-1],[-1,-1,0]]",
            if same {
                "[[0,-1,-1],[-1,0,-1],[-1,-1,0]]".to_string()
            } else {
                format!(
                    "{:?}",
                    report
                        .entries
                        .iter()
                        .map(|r| r.iter().map(|f| poly(s, f)).collect::<Vec<_>>())
                        .collect::<Vec<_>>()
                )
            },
        ),
        Check::new(
            "determinant",
            -2,
            report
                .determinant
                .as_ref()
                .map_or("n/a".into(), |d| d.to_string()),
        ),
        Check::new(
            "elementary divisors",
            "1,1,2",
            join(&report.elementary_divisors),
        ),
        Check::new("torsion primes", "2", join(&report.torsion_primes)),
        Check::new(
            "d(0110100, 1010010)",
            -1,
            poly(s, &d_coefficient(&expr, &e1, &e2)?),
        ),
    ])
}

fn dihedral_sts() -> CliResult<Vec<Check>> {
    let cases = [
        ("A2", -1),
        ("B2", -1),
        ("B2-dual", -2),
        ("G2", -1),
        ("G2-dual", -3),
        ("A1-affine", -2),
    ];
    let mut checks = Vec::new();
    for (name, c) in cases {
        let sys = system(name);
        let s = &sys.system;
        let expr = Expression::new(s.clone(), vec![0, 1, 0])?;
        let (gs, gt) = (s.generator_name(0), s.generator_name(1));
        let d1 = decorate(&expr, &"100".parse().expect("bits"))?;
        let d2 = decorate(&expr, &"001".parse().expect("bits"))?;
        checks.push(Check::new(
            format!("{name}: e1 = 100"),
            "U1 U0 D0, defect 0",
            format!(
                "{}, defect {}",
                format_decorations(&d1.decorations),
                d1.defect
            ),
        ));
        checks.push(Check::new(
            format!("{name}: e2 = 001"),
            "U0 U0 U1, defect 2",
            format!(
                "{}, defect {}",
                format_decorations(&d2.decorations),
                d2.defect
            ),
        ));
        let report = gram_matrix(&expr, &d1.endpoint, SubexprFilter::all(), 1)?;
        // basis is in bit order: 001 before 100
        let e = &report.entries;
        let shown = if report.size() == 2 {
            format!(
                "[[{}, {}], [{}, {}]]",
                poly(s, &e[1][1]),
                poly(s, &e[1][0]),
                poly(s, &e[0][1]),
                poly(s, &e[0][0])
            )
        } else {
            format!("{} x {} matrix", report.size(), report.size())
        };
        checks.push(Check::new(
            format!("{name}: gram matrix (e1, e2)"),
            format!("[[{c}, a_{gt}], [a_{gt}, a_{gs}*a_{gt}]]"),
            shown,
        ));
    }
    Ok(checks)
}

pub fn run(name: &str) -> CliResult<Output> {
    let names: Vec<&str> = if name == "all" {
        NAMES.to_vec()
    } else if NAMES.contains(&name) {
        vec![name]
    } else {
        return Err(CliError::UnknownExample(name.to_string()));
    };
    let mut results = Vec::new();
    let mut text = String::new();
    let mut all_ok = true;
    for n in names {
        let checks = match n {
            "ks-s8" => self_pairing(&KS_S8)?,
            "braden-s8" => self_pairing(&BRADEN_S8)?,
            "s12" => self_pairing(&S12)?,
            "braden-d4" => braden_d4()?,
            _ => dihedral_sts()?,
        };
        let ok = checks.iter().all(Check::passed);
        all_ok &= ok;
        writeln!(text, "{n}: {}", status(ok)).unwrap();
        for c in &checks {
            writeln!(
                text,
                "  {:<4} {}: {}",
                status(c.passed()),
                c.name,
                c.computed
            )
            .unwrap();
            if !c.passed() {
                writeln!(text, "       expected {}", c.expected).unwrap();
            }
        }
        let checks: Vec<Value> = checks
            .iter()
            .map(|c| {
                json!({
                    "check": c.name,
                    "expected": c.expected,
                    "computed": c.computed,
                    "status": status(c.passed()),
                })
            })
            .collect();
        results.push(json!({ "example": n, "status": status(ok), "checks": checks }));
    }
    let json = json!({ "status": status(all_ok), "examples": results });
    Ok(Output {
        json,
        text,
        ok: all_ok,
    })
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}
