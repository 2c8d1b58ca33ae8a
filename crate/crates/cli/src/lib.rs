//! The `qwick` command-line front end.
//!
//! Exit codes: 0 success, 2 usage/parse/domain/invalid-diagram errors,
//! 3 diagram cap exceeded, 4 engine disagreement.

pub mod args;
pub mod envelope;
pub mod render;

use std::ffi::OsString;
use std::io::{self, BufRead, Write};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use num_rational::BigRational;

use qwick::wick::{rook_coefficients_with, rook_from_normal_form};
use qwick::{
    count_by_degree, diagram_stats, enumerate_by_degree, normal_order_rewrite, parse_word,
    wick::normal_order_diagrams_with, wick::q_stirling_row, Error, Execution, FeynmanDiagram,
    Limits, NormalForm, QPolynomial, Word,
};

use args::{Cli, Command, Format, GlobalOpts, Method};
use envelope::{
    evaluated_json, normal_form_json, poly_json, Diagnostics, DiagramJson, DiagramsReport,
    Envelope, RookReport, StirlingReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;
pub const EXIT_DISAGREE: i32 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn disagree(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_DISAGREE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::LimitExceeded { .. } => EXIT_LIMIT,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<qwick::ParseError> for Failure {
    fn from(e: qwick::ParseError) -> Self {
        Error::from(e).into()
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match &cli.command {
        Command::NormalOrder { word, method } => match word.as_deref() {
            None | Some("-") => return normal_order_batch(stdin, *method, &cli.global, out, err),
            Some(text) => normal_order(text, *method, &cli.global, out),
        },
        Command::Diagrams {
            word,
            degree,
            list,
            stats,
        } => diagrams(word, *degree, *list || *stats, *stats, &cli.global, out),
        Command::Stirling { n, k, q1 } => stirling(*n, *k, *q1, &cli.global, out),
        Command::Rook { word, method } => rook(word, *method, &cli.global, out, err),
        Command::Render {
            word,
            diagram,
            svg,
            scale,
        } => render_cmd(word, diagram, *svg, *scale, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn limits(global: &GlobalOpts) -> Limits {
    Limits::new(global.max_diagrams)
}

/// Both engines' results for one word; `diagrams` is set for `--method both`.
#[derive(Clone, Debug)]
pub struct Computed {
    pub primary: NormalForm,
    pub diagrams: Option<NormalForm>,
    pub diagram_count: Option<String>,
    pub elapsed_ms: f64,
}

pub fn compute(w: &Word, method: Method, limits: Limits) -> Result<Computed, Failure> {
    let start = Instant::now();
    let exec = Execution::default();
    let (primary, diagrams, count) = match method {
        Method::Rewrite => (normal_order_rewrite(w), None, None),
        Method::Diagrams => {
            let count = limits.check(w)?;
            (
                normal_order_diagrams_with(w, limits, exec)?,
                None,
                Some(count),
            )
        }
        Method::Both => {
            let count = limits.check(w)?;
            let by_diagrams = normal_order_diagrams_with(w, limits, exec)?;
            (normal_order_rewrite(w), Some(by_diagrams), Some(count))
        }
    };
    Ok(Computed {
        primary,
        diagrams,
        diagram_count: count.map(|c| c.to_string()),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Writes one normal-order result; a disagreement is reported in full before failing.
pub fn report_normal_order(
    word: &str,
    method: Method,
    computed: &Computed,
    format: Format,
    eval_q: Option<&BigRational>,
    out: &mut dyn Write,
) -> Outcome {
    let agreement = computed.diagrams.as_ref().map(|d| *d == computed.primary);
    let disagreement = agreement == Some(false);
    match format {
        Format::Json => {
            let env = Envelope {
                word: word.to_string(),
                method: method.name().to_string(),
                normal_form: normal_form_json(&computed.primary),
                agreement,
                normal_form_diagrams: computed
                    .diagrams
                    .as_ref()
                    .filter(|_| disagreement)
                    .map(normal_form_json),
                evaluated: eval_q.map(|q| evaluated_json(&computed.primary, q)),
                diagnostics: Diagnostics {
                    diagram_count: computed.diagram_count.clone(),
                    elapsed_ms: computed.elapsed_ms,
                },
            };
            writeln!(out, "{}", serde_json::to_string(&env)?)?;
        }
        Format::Text | Format::Latex => {
            let show = |nf: &NormalForm| match format {
                Format::Latex => nf.to_latex(),
                _ => nf.to_text(),
            };
            if disagreement {
                writeln!(out, "rewrite:  {}", show(&computed.primary))?;
                writeln!(
                    out,
                    "diagrams: {}",
                    show(computed.diagrams.as_ref().unwrap())
                )?;
            } else {
                writeln!(out, "{}", show(&computed.primary))?;
                if agreement == Some(true) {
                    writeln!(out, "engines agree")?;
                }
            }
            if let Some(q) = eval_q {
                writeln!(out, "at q = {q}")?;
                for ((k, l), v) in computed.primary.evaluate(q) {
                    writeln!(out, "({k},{l}): {v}")?;
                }
            }
        }
    }
    if disagreement {
        return Err(Failure::disagree(format!("engines disagree on '{word}'")));
    }
    Ok(())
}

fn normal_order(text: &str, method: Method, global: &GlobalOpts, out: &mut dyn Write) -> Outcome {
    let w = parse_word(text)?;
    let computed = compute(&w, method, limits(global))?;
    report_normal_order(
        text.trim(),
        method,
        &computed,
        global.format,
        global.eval_q.as_ref(),
        out,
    )
}

/// One word per line; blank lines are skipped and the worst exit code wins.
fn normal_order_batch(
    stdin: &mut dyn BufRead,
    method: Method,
    global: &GlobalOpts,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let mut worst = EXIT_OK;
    for (lineno, line) in stdin.lines().enumerate() {
        let line = match line {
            Ok(line) => line,
            Err(e) => {
                let _ = writeln!(err, "error: reading stdin: {e}");
                return worst.max(1);
            }
        };
        if line.trim().is_empty() {
            continue;
        }
        if let Err(f) = normal_order(&line, method, global, out) {
            let _ = writeln!(err, "error: line {}: {}", lineno + 1, f.message);
            worst = worst.max(f.code);
        }
    }
    worst
}

fn diagrams(
    text: &str,
    degree: Option<usize>,
    list: bool,
    stats: bool,
    global: &GlobalOpts,
    out: &mut dyn Write,
) -> Outcome {
    let w = parse_word(text)?;
    let counts = count_by_degree(&w);
    let selected: Vec<usize> = match degree {
        Some(p) => vec![p],
        None => (0..counts.len()).collect(),
    };
    let count_at = |p: usize| counts.get(p).cloned().unwrap_or_default();

    let mut listed = Vec::new();
    if list {
        let total: num_bigint::BigUint = selected.iter().map(|&p| count_at(p)).sum();
        if total > global.max_diagrams.into() {
            return Err(Error::LimitExceeded {
                count: total.to_string(),
                cap: global.max_diagrams,
            }
            .into());
        }
        for &p in &selected {
            for g in enumerate_by_degree(&w, p) {
                let s = if stats {
                    Some(diagram_stats(&w, &g)?)
                } else {
                    None
                };
                listed.push((g, s));
            }
        }
    }

    match global.format {
        Format::Json => {
            let report = DiagramsReport {
                word: text.trim().to_string(),
                counts: selected.iter().map(|&p| count_at(p).to_string()).collect(),
                diagrams: list.then(|| {
                    listed
                        .iter()
                        .map(|(g, s)| DiagramJson {
                            edges: g.to_string(),
                            degree: g.degree(),
                            stats: s.map(Into::into),
                        })
                        .collect()
                }),
            };
            writeln!(out, "{}", serde_json::to_string(&report)?)?;
        }
        Format::Text | Format::Latex => {
            let line: Vec<String> = selected
                .iter()
                .map(|&p| format!("degree {p}: {}", count_at(p)))
                .collect();
            writeln!(out, "{}", line.join(", "))?;
            for (g, s) in &listed {
                match s {
                    Some(s) => writeln!(out, "{g}  {s}")?,
                    None => writeln!(out, "{g}")?,
                }
            }
        }
    }
    Ok(())
}

fn show_poly(p: &QPolynomial, format: Format) -> String {
    match format {
        Format::Latex => p.to_latex(),
        _ => p.to_string(),
    }
}

fn stirling(
    n: usize,
    k: Option<usize>,
    q1: bool,
    global: &GlobalOpts,
    out: &mut dyn Write,
) -> Outcome {
    let (ks, values): (Vec<usize>, Vec<QPolynomial>) = match k {
        Some(k) => (vec![k], vec![qwick::q_stirling(n, k)?]),
        None => ((1..=n).collect(), q_stirling_row(n)?),
    };
    let at_q1: Vec<String> = values.iter().map(|p| p.eval_at_one().to_string()).collect();
    match global.format {
        Format::Json => {
            let report = StirlingReport {
                n,
                k: ks,
                values: values.iter().map(poly_json).collect(),
                at_q1: q1.then_some(at_q1),
            };
            writeln!(out, "{}", serde_json::to_string(&report)?)?;
        }
        Format::Text | Format::Latex => {
            if q1 {
                writeln!(out, "{}", at_q1.join(" "))?;
            } else {
                for p in &values {
                    writeln!(out, "{}", show_poly(p, global.format))?;
                }
            }
        }
    }
    Ok(())
}

fn rook(
    text: &str,
    method: Method,
    global: &GlobalOpts,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let w = parse_word(text)?;
    let (m, n) = w.counts();
    let by_rewrite = || rook_from_normal_form(&normal_order_rewrite(&w), m, n);
    let by_diagrams = || rook_coefficients_with(&w, limits(global), Execution::default());
    let (rook, agreement) = match method {
        Method::Rewrite => (by_rewrite(), None),
        Method::Diagrams => (by_diagrams()?, None),
        Method::Both => {
            let d = by_diagrams()?;
            let r = by_rewrite();
            let agree = d == r;
            if !agree {
                for (k, (a, b)) in r.iter().zip(&d).enumerate() {
                    if a != b {
                        let _ = writeln!(err, "R_{k}: rewrite {a}, diagrams {b}");
                    }
                }
            }
            (r, Some(agree))
        }
    };
    match global.format {
        Format::Json => {
            let report = RookReport {
                word: text.trim().to_string(),
                method: method.name().to_string(),
                rook: rook.iter().map(poly_json).collect(),
                agreement,
            };
            writeln!(out, "{}", serde_json::to_string(&report)?)?;
        }
        Format::Text | Format::Latex => {
            for (k, p) in rook.iter().enumerate() {
                writeln!(out, "R_{k} = {}", show_poly(p, global.format))?;
            }
            if agreement == Some(true) {
                writeln!(out, "engines agree")?;
            }
        }
    }
    if agreement == Some(false) {
        return Err(Failure::disagree(format!(
            "engines disagree on '{}'",
            text.trim()
        )));
    }
    Ok(())
}

fn render_cmd(
    text: &str,
    diagram: &str,
    svg: bool,
    scale: Option<usize>,
    out: &mut dyn Write,
) -> Outcome {
    let w = parse_word(text)?;
    let g = FeynmanDiagram::parse(diagram)?;
    qwick::diagrams::validate(&w, &g)?;
    let drawing = if svg {
        render::svg(&w, &g, scale.unwrap_or(render::SVG_SCALE))
    } else {
        render::ascii(&w, &g, scale.unwrap_or(render::ASCII_SCALE))
    };
    out.write_all(drawing.as_bytes())?;
    Ok(())
}
