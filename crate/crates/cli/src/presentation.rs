//! The presentation file format.
//!
//! ```text
//! # comments run to the end of the line
//! case = post
//! weight = 1
//! generators = a, b
//!
//! [product]
//! a b = 1/2 a - b
//!
//! [bracket]
//! a b = a
//!
//! [oracle]
//! higher = error
//!
//! [oracle.table]
//! P^2(a) b = 0
//! ```
//!
//! Table entries not listed are zero; a bracket entry `a b` also fixes
//! `b a` unless that entry is given explicitly.

use std::collections::BTreeMap;

use pbw_core::presentation::{forced_oracle_with_policy, validate};
use pbw_core::text::{is_valid_generator_name, parse_element, parse_word};
use pbw_core::{
    Alphabet, BracketOracle, Case, Element, HigherPolicy, Letter, PrePostLie, Scalar,
    StructureTable,
};

use crate::CliError;

/// A validated input algebra together with the oracle used for rewriting.
#[derive(Debug)]
pub struct Presentation {
    pub algebra: PrePostLie,
    pub oracle: BracketOracle,
    /// Pairs the oracle leaves open at the validated levels.
    pub open_pairs: Vec<(Letter, Letter)>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Header,
    Product,
    Bracket,
    Oracle,
    OracleTable,
}

struct Entry {
    line: usize,
    left: String,
    right: String,
}

fn syntax(line: usize, message: impl Into<String>) -> CliError {
    CliError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, CliError> {
    let mut section = Section::Header;
    let mut keys: BTreeMap<&str, (usize, String)> = BTreeMap::new();
    let mut higher: Option<(usize, String)> = None;
    let mut product = Vec::new();
    let mut bracket = Vec::new();
    let mut table = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            section = match name.trim() {
                "product" => Section::Product,
                "bracket" => Section::Bracket,
                "oracle" => Section::Oracle,
                "oracle.table" => Section::OracleTable,
                other => return Err(syntax(line, format!("unknown section [{other}]"))),
            };
            continue;
        }
        let (left, right) = content
            .split_once('=')
            .ok_or_else(|| syntax(line, "expected `key = value`"))?;
        let (left, right) = (left.trim().to_string(), right.trim().to_string());
        match section {
            Section::Header => {
                let key = match left.as_str() {
                    "case" => "case",
                    "weight" => "weight",
                    "generators" => "generators",
                    other => return Err(syntax(line, format!("unknown key `{other}`"))),
                };
                if keys.insert(key, (line, right)).is_some() {
                    return Err(syntax(line, format!("`{key}` given twice")));
                }
            }
            Section::Oracle => {
                if left != "higher" {
                    return Err(syntax(line, format!("unknown oracle key `{left}`")));
                }
                if higher.replace((line, right)).is_some() {
                    return Err(syntax(line, "`higher` given twice"));
                }
            }
            Section::Product => product.push(Entry { line, left, right }),
            Section::Bracket => bracket.push(Entry { line, left, right }),
            Section::OracleTable => table.push(Entry { line, left, right }),
        }
    }

    let required = |k: &str| {
        keys.get(k)
            .cloned()
            .ok_or_else(|| syntax(text.lines().count().max(1), format!("missing `{k}`")))
    };
    let (line, case) = required("case")?;
    let case = match case.as_str() {
        "pre" => Case::Pre,
        "post" => Case::Post,
        other => {
            return Err(syntax(
                line,
                format!("case must be pre or post, not `{other}`"),
            ))
        }
    };
    let (line, weight) = required("weight")?;
    let lambda: Scalar = weight
        .parse()
        .map_err(|_| syntax(line, format!("invalid weight `{weight}`")))?;
    let (line, gens) = required("generators")?;
    let names: Vec<&str> = gens
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    if names.is_empty() {
        return Err(syntax(line, "no generators"));
    }
    for (i, name) in names.iter().enumerate() {
        if !is_valid_generator_name(name) {
            return Err(syntax(line, format!("invalid generator name `{name}`")));
        }
        if names[..i].contains(name) {
            return Err(syntax(line, format!("generator `{name}` listed twice")));
        }
    }
    let alphabet = Alphabet::new(names.iter().copied());
    if case == Case::Pre && !bracket.is_empty() {
        return Err(syntax(
            bracket[0].line,
            "the pre case has no [bracket] table",
        ));
    }

    let product = structure_table(&product, &alphabet, false)?;
    let bracket = structure_table(&bracket, &alphabet, true)?;
    let policy = match &higher {
        None => None,
        Some((_, s)) if s == "error" => Some(HigherPolicy::Error),
        Some((_, s)) if s == "zero" => Some(HigherPolicy::Zero),
        Some((line, s)) => {
            return Err(syntax(
                *line,
                format!("higher must be error or zero, not `{s}`"),
            ))
        }
    };

    let algebra = PrePostLie::new(
        case,
        alphabet.clone(),
        lambda,
        product,
        (case == Case::Post).then_some(bracket),
    )?;
    let policy = policy.unwrap_or(if algebra.is_trivial() {
        HigherPolicy::Zero
    } else {
        HigherPolicy::Error
    });
    let mut oracle = forced_oracle_with_policy(&algebra, policy)?;
    let mut level_bound = 1;
    for e in &table {
        let (u, v) = letter_pair(e, &alphabet)?;
        if u.level < 2 {
            return Err(syntax(
                e.line,
                "oracle table entries must start with P^k, k >= 2",
            ));
        }
        let value =
            parse_element(&e.right, &alphabet).map_err(|err| syntax(e.line, err.to_string()))?;
        if value.words().any(|w| w.as_single_letter().is_none()) {
            return Err(syntax(
                e.line,
                "bracket values must be combinations of letters",
            ));
        }
        level_bound = level_bound.max(u.level).max(v.level);
        oracle = oracle.with_rule(u, v, value);
    }
    let report = validate(&oracle, level_bound);
    if let Some(v) = report.violations.first() {
        let letters: Vec<String> = v
            .letters
            .iter()
            .map(|l| alphabet.render_letter(*l))
            .collect();
        return Err(CliError::Input(format!(
            "oracle violates {} on ({})",
            v.identity,
            letters.join(", ")
        )));
    }
    Ok(Presentation {
        algebra,
        oracle,
        open_pairs: report.incomplete,
    })
}

fn letter_pair(e: &Entry, alphabet: &Alphabet) -> Result<(Letter, Letter), CliError> {
    let w = parse_word(&e.left, alphabet).map_err(|err| syntax(e.line, err.to_string()))?;
    match w.atoms() {
        [a, b] => match (a.as_letter(), b.as_letter()) {
            (Some(u), Some(v)) => Ok((u, v)),
            _ => Err(syntax(e.line, "expected two letters on the left")),
        },
        _ => Err(syntax(e.line, "expected two letters on the left")),
    }
}

fn structure_table(
    entries: &[Entry],
    alphabet: &Alphabet,
    antisymmetric: bool,
) -> Result<StructureTable, CliError> {
    let n = alphabet.len();
    let mut given: BTreeMap<(usize, usize), Vec<Scalar>> = BTreeMap::new();
    for e in entries {
        let (u, v) = letter_pair(e, alphabet)?;
        if u.level != 0 || v.level != 0 {
            return Err(syntax(e.line, "table entries are products of generators"));
        }
        let value =
            parse_element(&e.right, alphabet).map_err(|err| syntax(e.line, err.to_string()))?;
        let vector = generator_vector(&value, n)
            .ok_or_else(|| syntax(e.line, "values must be rational combinations of generators"))?;
        let key = (u.gen as usize, v.gen as usize);
        if given.insert(key, vector).is_some() {
            return Err(syntax(e.line, "entry given twice"));
        }
    }
    let mut t = StructureTable::zero(n);
    if antisymmetric {
        for (&(i, j), v) in &given {
            if !given.contains_key(&(j, i)) {
                t.set(j, i, v.iter().map(|c| -c).collect());
            }
        }
    }
    for ((i, j), v) in given {
        t.set(i, j, v);
    }
    Ok(t)
}

fn generator_vector(e: &Element, n: usize) -> Option<Vec<Scalar>> {
    let mut out = vec![Scalar::zero(); n];
    for (w, c) in e.iter() {
        let l = w.as_single_letter().filter(|l| l.level == 0)?;
        out[l.gen as usize] = c.clone();
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_generator_pre() {
        let p = parse_presentation("case = pre\nweight = 0\ngenerators = y\n[product]\ny y = 0\n")
            .unwrap();
        assert_eq!(p.algebra.case(), Case::Pre);
        assert!(p.algebra.is_trivial());
        assert_eq!(p.algebra.gens().names(), ["y"]);
    }

    #[test]
    fn bracket_is_mirrored() {
        let p =
            parse_presentation("case = post\nweight = 1\ngenerators = a b\n[bracket]\na b = a\n")
                .unwrap();
        assert_eq!(
            p.algebra.bracket().get(1, 0),
            [Scalar::from_int(-1), Scalar::zero()]
        );
    }

    #[test]
    fn errors_carry_lines() {
        let err = parse_presentation("case = pre\nweight = 0\ngenerators = y\ncolour = red\n")
            .unwrap_err();
        assert_eq!(err.to_string(), "line 4: unknown key `colour`");
        let err =
            parse_presentation("case = pre\nweight = 0\ngenerators = y\n[product]\ny y = R(y)\n")
                .unwrap_err();
        assert!(matches!(err, CliError::Syntax { line: 5, .. }));
    }

    #[test]
    fn oracle_table_needs_raised_letters() {
        let base = "case = pre\nweight = 0\ngenerators = y\n[product]\ny y = y\n[oracle.table]\n";
        assert!(parse_presentation(&format!("{base}P^2(y) y = 0\n")).is_ok());
        let err = parse_presentation(&format!("{base}P(y) y = 0\n")).unwrap_err();
        assert!(matches!(err, CliError::Syntax { line: 7, .. }));
    }
}
