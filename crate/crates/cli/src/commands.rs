use std::fmt::Write;

use pbw_core::enveloping::{check_axioms, check_envelope, AxiomKind, IdentityReport};
use pbw_core::formulas::{
    expand_levels, long_delta, long_lhs, long_rb_element, symmetrization_defect, Commutator,
};
use pbw_core::gs::{check_compositions, CheckOptions};
use pbw_core::pbw::{closure_report, EEnumerator};
use pbw_core::presentation::{check_doubling, doubling, random_pre_post_lie};
use pbw_core::sample::{envelope_samples, random_element, random_long_instance, WordShape};
use pbw_core::text::parse_element;
use pbw_core::{Alphabet, Bounds, Case, EWord, Element, Envelope, Letter, Rewriter, RuleSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::{CliError, Command, Identity, Presentation, Report, RunConfig, Status};

/// Failure records kept in a composition report.
const KEPT_FAILURES: usize = 100;

/// Shape of the random elements fed to the sampled identity checks.
fn sample_shape(n_gens: usize) -> WordShape {
    WordShape::new(n_gens as u32, 3, 2, 2)
}

pub(crate) fn dispatch(config: &RunConfig, p: &Presentation) -> Result<Report, CliError> {
    match &config.command {
        Command::Nf { expr } => nf(p, expr),
        Command::Basis { count_only } => basis(config, p, *count_only),
        Command::Closure => closure(config, p),
        Command::CheckGs {
            perturb,
            all_records,
        } => check_gs(config, p, *perturb, *all_records),
        Command::CheckIdentities { which } => identities(config, p, *which),
        Command::CheckDoubling => check_doubling_suite(config, p),
    }
}

fn rewriter(p: &Presentation) -> Rewriter {
    Rewriter::new(p.oracle.clone())
}

fn names(p: &Presentation) -> &Alphabet {
    p.algebra.gens()
}

fn nf(p: &Presentation, expr: &str) -> Result<Report, CliError> {
    let e = parse_element(expr, names(p))?;
    let n = rewriter(p).normal_form(&e)?;
    let rendered = n.render(names(p));
    Ok(Report {
        status: Status::Ok,
        text: format!("{rendered}\n"),
        json: json!({ "input": e.render(names(p)), "normal_form": rendered }),
    })
}

fn eword_json(w: &EWord, names: &Alphabet) -> serde_json::Value {
    json!({
        "word": w.render(names),
        "lead": w.lead().map(|l| eword_json(l, names)),
        "segments": w.segments().iter()
            .map(|s| s.iter().map(|l| names.render_letter(*l)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "interior": w.interior().iter().map(|z| eword_json(z, names)).collect::<Vec<_>>(),
        "trail": w.trail().map(|t| eword_json(t, names)),
    })
}

fn basis(config: &RunConfig, p: &Presentation, count_only: bool) -> Result<Report, CliError> {
    let c = &p.algebra;
    let mut en = EEnumerator::new(c.case(), c.dim());
    let mut text = String::new();
    let mut degrees = Vec::new();
    let mut counts = Vec::new();
    for d in 1..=config.limits.max_degree {
        let words = en.degree(d);
        counts.push(words.len());
        if count_only {
            degrees.push(json!({ "degree": d, "count": words.len() }));
        } else {
            for w in words {
                writeln!(text, "{}", w.render(c.gens())).unwrap();
            }
            degrees.push(json!({
                "degree": d,
                "words": words.iter().map(|w| eword_json(w, c.gens())).collect::<Vec<_>>(),
            }));
        }
    }
    if count_only {
        let row: Vec<String> = counts.iter().map(usize::to_string).collect();
        text = format!("{}\n", row.join(","));
    }
    Ok(Report {
        status: Status::Ok,
        text,
        json: json!({ "case": c.case(), "degrees": degrees }),
    })
}

fn closure(config: &RunConfig, p: &Presentation) -> Result<Report, CliError> {
    let c = &p.algebra;
    let env = Envelope::new(rewriter(p));
    let r = closure_report(c.case(), c.dim(), &env, config.limits.max_degree, c.gens())?;
    let status = if !r.closed() || !r.dimensions_match() {
        Status::Failed
    } else if !r.incomplete.is_empty() {
        Status::OracleIncomplete
    } else {
        Status::Ok
    };
    let mut text = String::new();
    writeln!(text, "degree  |E|  rank").unwrap();
    for (d, (n, k)) in r.counts.iter().zip(&r.ranks).enumerate() {
        writeln!(text, "{:>6}  {n:>3}  {k:>4}", d + 1).unwrap();
    }
    writeln!(text, "products checked: {}", r.products_checked).unwrap();
    for e in &r.escapes {
        writeln!(
            text,
            "escape: {} {:?} {} -> {}",
            e.left, e.op, e.right, e.word
        )
        .unwrap();
    }
    for i in &r.incomplete {
        writeln!(text, "oracle-incomplete: {i}").unwrap();
    }
    writeln!(text, "result: {}", verdict(status)).unwrap();
    Ok(Report {
        status,
        text,
        json: serde_json::to_value(&r).expect("serializable"),
    })
}

fn verdict(s: Status) -> &'static str {
    match s {
        Status::Ok => "PASS",
        Status::Failed => "FAIL",
        Status::InputError => "INPUT ERROR",
        Status::OracleIncomplete => "ORACLE INCOMPLETE",
    }
}

fn check_gs(
    config: &RunConfig,
    p: &Presentation,
    perturb: bool,
    all_records: bool,
) -> Result<Report, CliError> {
    let l = &config.limits;
    let bounds = Bounds {
        max_size: l.max_breadth,
        max_rdeg: l.max_rdeg,
        max_level: l.max_level,
        n_gens: p.algebra.dim(),
    };
    let rw = rewriter(p).perturbed(perturb);
    let opts = CheckOptions {
        keep_records: all_records,
        stop_at_first_failure: false,
        max_failures_kept: Some(KEPT_FAILURES),
    };
    let r = check_compositions(&rw, &bounds, names(p), opts)?;
    let status = if r.all_trivial() {
        Status::Ok
    } else {
        Status::Failed
    };
    let mut text = String::new();
    writeln!(
        text,
        "compositions within breadth {}, deg_R {}, level {}: {}",
        l.max_breadth, l.max_rdeg, l.max_level, r.total
    )
    .unwrap();
    for (kind, n) in &r.by_kind {
        writeln!(text, "  {kind}: {n}").unwrap();
    }
    writeln!(text, "nonzero residuals: {}", r.failures).unwrap();
    let listed = if all_records { &r.records } else { &r.nonzero };
    if !listed.is_empty() {
        writeln!(text, "kind\tf\tg\tword\tresidual\tsteps").unwrap();
        for c in listed {
            writeln!(
                text,
                "{}\t{}\t{}\t{}\t{}\t{}",
                c.kind, c.f, c.g, c.word, c.residual, c.steps
            )
            .unwrap();
        }
    }
    if r.failures > r.nonzero.len() {
        writeln!(text, "(first {} failures listed)", r.nonzero.len()).unwrap();
    }
    writeln!(text, "result: {}", verdict(status)).unwrap();
    Ok(Report {
        status,
        text,
        json: serde_json::to_value(&r).expect("serializable"),
    })
}

fn identity_text(label: &str, seed: Option<u64>, r: &IdentityReport) -> (Status, String) {
    let status = if r.passed() {
        Status::Ok
    } else {
        Status::Failed
    };
    let mut text = String::new();
    if let Some(seed) = seed {
        writeln!(text, "seed: {seed}").unwrap();
    }
    writeln!(
        text,
        "{label}: {} checked, {} failed",
        r.checked,
        r.failures.len()
    )
    .unwrap();
    for f in &r.failures {
        writeln!(
            text,
            "  {} on ({}): {}",
            f.identity,
            f.args.join("; "),
            f.defect
        )
        .unwrap();
    }
    writeln!(text, "result: {}", verdict(status)).unwrap();
    (status, text)
}

/// Records `defect` as a failure of `identity` unless it is zero.
fn record(
    r: &mut IdentityReport,
    identity: &str,
    args: Vec<String>,
    defect: &Element,
    names: &Alphabet,
) {
    r.checked += 1;
    if !defect.is_zero() {
        r.failures.push(pbw_core::enveloping::Failure {
            identity: identity.to_string(),
            args,
            defect: defect.render(names),
        });
    }
}

fn identities(config: &RunConfig, p: &Presentation, which: Identity) -> Result<Report, CliError> {
    let c = &p.algebra;
    let names = c.gens();
    let n = c.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = IdentityReport::default();
    let mut seeded = true;
    match which {
        Identity::Eq3 => {
            seeded = false;
            let rw = rewriter(p).with_rules(RuleSet::COMM);
            let letters: Vec<Letter> = (0..n as u32)
                .flat_map(|g| (0..=config.limits.max_level).map(move |k| Letter::new(g, k)))
                .collect();
            for &y in &letters {
                for &x in &letters {
                    for l in 0..=4 {
                        let d = rw.normal_form(&symmetrization_defect(y, x, l, &p.oracle)?)?;
                        let args = vec![
                            names.render_letter(y),
                            names.render_letter(x),
                            l.to_string(),
                        ];
                        record(&mut report, "symmetrization", args, &d, names);
                    }
                }
            }
        }
        Identity::Eq4 => {
            let free = rewriter(p).with_rules(RuleSet::RB);
            let shape = WordShape::new(n as u32, 2, 1, 1);
            for i in 0..config.trials {
                let bs: Vec<Element> = (0..=i % 3)
                    .map(|_| random_element(&mut rng, &shape, 2))
                    .collect();
                let d = free.normal_form(&long_rb_element(&bs, c.lambda()))?;
                let args = bs.iter().map(|b| b.render(names)).collect();
                record(&mut report, "long Rota-Baxter identity", args, &d, names);
            }
        }
        Identity::Eq5 => {
            let free = rewriter(p).with_rules(RuleSet::RB);
            for i in 0..config.trials {
                let inst = random_long_instance(&mut rng, n as u32, (i % 3) as u32);
                let delta = long_delta(&inst, c.lambda(), &Commutator)?;
                let d = free.normal_form(&expand_levels(&(&long_lhs(&inst) - &delta)))?;
                let args = vec![long_lhs(&inst).render(names)];
                record(&mut report, "long relation", args, &d, names);
            }
        }
        Identity::Rb | Identity::Assoc | Identity::Dendriform => {
            let kind = match which {
                Identity::Rb => AxiomKind::Rb,
                Identity::Assoc => AxiomKind::Assoc,
                _ => AxiomKind::Dendriform,
            };
            if kind == AxiomKind::Dendriform && c.case() != Case::Pre {
                return Err(CliError::Input(
                    "the dendriform identities hold in the pre case only".into(),
                ));
            }
            let env = Envelope::new(rewriter(p));
            let samples = envelope_samples(&mut rng, &env, &sample_shape(n), 2, config.trials)?;
            report = check_axioms(&env, kind, &samples, names)?;
        }
        Identity::Envelope => {
            seeded = false;
            report = check_envelope(c, &Envelope::new(rewriter(p)))?;
        }
    }
    let label = serde_json::to_value(which).expect("serializable");
    let label = label.as_str().unwrap_or("identities");
    let (status, text) = identity_text(label, seeded.then_some(config.seed), &report);
    Ok(Report {
        status,
        text,
        json: serde_json::to_value(&report).expect("serializable"),
    })
}

fn check_doubling_suite(config: &RunConfig, p: &Presentation) -> Result<Report, CliError> {
    let c = &p.algebra;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut inputs = vec![c.clone()];
    for _ in 0..config.trials {
        let n = rng.random_range(1..=c.dim().min(2));
        inputs.push(random_pre_post_lie(
            c.case(),
            n,
            c.lambda().clone(),
            &mut rng,
        )?);
    }
    let mut failures = Vec::new();
    for (i, input) in inputs.iter().enumerate() {
        let r = check_doubling(&doubling(input)?);
        if !r.passed() {
            failures.push(json!({ "input": i, "violations": r.violations }));
        }
    }
    let status = if failures.is_empty() {
        Status::Ok
    } else {
        Status::Failed
    };
    let mut text = format!(
        "seed: {}\ndoubling: {} inputs checked, {} failed\n",
        config.seed,
        inputs.len(),
        failures.len()
    );
    for f in &failures {
        writeln!(text, "  {f}").unwrap();
    }
    writeln!(text, "result: {}", verdict(status)).unwrap();
    Ok(Report {
        status,
        text,
        json: json!({ "checked": inputs.len(), "failures": failures }),
    })
}
