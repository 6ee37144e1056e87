//! Command-line front end.
//!
//! Exit status: 0 on success (or "equal", or a verification that passed),
//! 1 for "not-equal" or a failed verification, 2 for usage and parse errors.

use std::ffi::OsString;
use std::io::{BufRead, Write};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::gsb::verify_bounded;
use crate::idempotent::{classify, parse_idempotent, IdempotentTree};
use crate::munn::munn_tree;
use crate::rewrite::{normal_form, normal_form_traced};
use crate::sweep::{oracle_sweep, universe_size, MAX_SWEEP_WORDS};
use crate::words::{format_word, parse_word, Alphabet, Letter, OrderError, OrderSpec, SyntaxMode, Word};

#[derive(Parser, Debug)]
#[command(name = "freeinv", version, about = "Normal forms in free inverse monoids")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Generator names: compact `abc`, or comma/space separated
    #[arg(long, global = true, value_name = "NAMES")]
    alphabet: Option<String>,
    /// Letter order from smallest to largest, e.g. `aAbB`
    #[arg(long, global = true, value_name = "LETTERS")]
    order: Option<String>,
    /// Whitespace-separated names with `'` for inverses
    #[arg(long = "verbose-syntax", global = true)]
    verbose_syntax: bool,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Read one input per line from standard input
    #[arg(long, global = true)]
    stdin: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the normal form of a word
    Normalize {
        word: Option<String>,
        /// Show every rewrite step
        #[arg(long)]
        trace: bool,
    },
    /// Decide whether two words are equal
    Eq {
        left: Option<String>,
        right: Option<String>,
    },
    /// Report idempotent, canonical, prime and ordered status
    Classify { word: Option<String> },
    /// Print the Munn tree of a word
    Munn { word: Option<String> },
    /// Run a bounded verification
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyTarget {
    /// Check that all compositions among bounded rule instances are trivial
    Gsb {
        #[arg(long)]
        gens: usize,
        #[arg(long = "max-lhs")]
        max_lhs: usize,
        #[arg(long = "max-ambiguity")]
        max_ambiguity: usize,
    },
    /// Compare normal forms with the Munn tree oracle on every short word
    Oracle {
        #[arg(long)]
        gens: usize,
        #[arg(long = "max-len")]
        max_len: usize,
    },
}

struct Failure {
    status: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            status: 2,
            message: message.into(),
        }
    }
}

type Outcome = Result<i32, Failure>;

struct Context {
    alphabet: Alphabet,
    order: OrderSpec,
    mode: SyntaxMode,
    json: bool,
}

impl Context {
    fn parse(&self, text: &str) -> Result<Word, Failure> {
        let text = text.trim();
        if self.mode == SyntaxMode::Compact && !self.alphabet.supports_compact() {
            return Err(Failure::usage(
                "alphabet has multi-character names; use --verbose-syntax",
            ));
        }
        parse_word(text, &self.alphabet, self.mode).map_err(|e| Failure::usage(format!("{e} in word `{text}`")))
    }

    fn fmt(&self, w: &[Letter]) -> String {
        format_word(w, &self.alphabet, self.mode)
    }

    fn fmt_letter(&self, l: Letter) -> String {
        self.alphabet.format_letter(l, self.mode)
    }

    /// Text rendering that shows the empty word as `1`.
    fn fmt_text(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            "1".to_string()
        } else {
            self.fmt(w)
        }
    }
}

/// Run the CLI with `args` (including the program name) and return the exit
/// status.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let first = text.lines().next().unwrap_or("error: invalid arguments");
                let _ = writeln!(err, "{first}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(cli, stdin, out, err) {
        Ok(status) => status,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.status
        }
    }
}

fn dispatch(cli: Cli, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let g = &cli.global;
    let mode = if g.verbose_syntax {
        SyntaxMode::Verbose
    } else {
        SyntaxMode::Compact
    };
    match &cli.command {
        Command::Verify { target } => {
            let gens = match target {
                VerifyTarget::Gsb { gens, .. } | VerifyTarget::Oracle { gens, .. } => *gens,
            };
            let ctx = verify_context(g, mode, gens)?;
            match target {
                VerifyTarget::Gsb {
                    max_lhs, max_ambiguity, ..
                } => verify_gsb(&ctx, gens, *max_lhs, *max_ambiguity, out, err),
                VerifyTarget::Oracle { max_len, .. } => verify_oracle(&ctx, gens, *max_len, out, err),
            }
        }
        command => {
            let inputs = collect_inputs(command, g.stdin, mode, stdin)?;
            let ctx = word_context(g, mode, &inputs)?;
            let mut status = 0;
            for input in &inputs {
                status = status.max(run_one(command, &ctx, input, out)?);
            }
            Ok(status)
        }
    }
}

/// One unit of work: a single word, or a pair for `eq`.
enum Input {
    One(String),
    Two(String, String),
}

impl Input {
    fn texts(&self) -> Vec<&str> {
        match self {
            Input::One(a) => vec![a],
            Input::Two(a, b) => vec![a, b],
        }
    }
}

fn collect_inputs(
    command: &Command,
    from_stdin: bool,
    mode: SyntaxMode,
    stdin: &mut dyn BufRead,
) -> Result<Vec<Input>, Failure> {
    let is_eq = matches!(command, Command::Eq { .. });
    if !from_stdin {
        return match command {
            Command::Normalize { word, .. } | Command::Classify { word } | Command::Munn { word } => word
                .clone()
                .map(|w| vec![Input::One(w)])
                .ok_or_else(|| Failure::usage("missing word argument (or pass --stdin)")),
            Command::Eq { left, right } => match (left, right) {
                (Some(l), Some(r)) => Ok(vec![Input::Two(l.clone(), r.clone())]),
                _ => Err(Failure::usage("eq needs two words (or pass --stdin)")),
            },
            Command::Verify { .. } => unreachable!("verify takes no words"),
        };
    }
    let mut inputs = Vec::new();
    for (n, line) in stdin.lines().enumerate() {
        let line = line.map_err(|e| Failure::usage(format!("reading standard input: {e}")))?;
        let line = line.trim_end_matches(['\r', '\n']);
        if !is_eq {
            inputs.push(Input::One(line.to_string()));
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = if line.contains(',') {
            line.split(',').collect()
        } else if mode == SyntaxMode::Compact {
            line.split_whitespace().collect()
        } else {
            Vec::new()
        };
        match parts.as_slice() {
            [l, r] => inputs.push(Input::Two(l.to_string(), r.to_string())),
            _ => {
                return Err(Failure::usage(format!(
                    "line {}: expected two words separated by a comma, got `{line}`",
                    n + 1
                )))
            }
        }
    }
    Ok(inputs)
}

/// Generator names mentioned in `text`, used when no alphabet is declared.
fn mentioned_names(text: &str, mode: SyntaxMode) -> Vec<String> {
    match mode {
        SyntaxMode::Compact => text
            .chars()
            .filter(|c| c.is_ascii_alphabetic())
            .map(|c| c.to_ascii_lowercase().to_string())
            .collect(),
        SyntaxMode::Verbose => text
            .split_whitespace()
            .map(|t| t.strip_suffix('\'').unwrap_or(t))
            .filter(|t| !t.is_empty() && t.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_'))
            .map(str::to_string)
            .collect(),
    }
}

fn parse_alphabet(text: &str, mode: SyntaxMode) -> Result<Alphabet, Failure> {
    let names: Vec<String> = if mode == SyntaxMode::Compact && !text.contains([',', ' ', '\t']) {
        text.chars().map(|c| c.to_string()).collect()
    } else {
        text.split([',', ' ', '\t'])
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect()
    };
    Alphabet::new(names).map_err(|e| Failure::usage(format!("--alphabet: {e}")))
}

fn parse_order(text: &str, alphabet: &Alphabet, mode: SyntaxMode) -> Result<OrderSpec, Failure> {
    let letters = parse_word(text.trim(), alphabet, mode).map_err(|e| Failure::usage(format!("--order: {e}")))?;
    OrderSpec::new(letters.into_letters(), alphabet.len()).map_err(|e| {
        let letter = |l: &Letter| alphabet.format_letter(*l, mode);
        Failure::usage(match e {
            OrderError::UnknownLetter(l) => format!("--order: `{}` is not a letter of the alphabet", letter(&l)),
            OrderError::Duplicate(l) => format!("--order: `{}` appears twice", letter(&l)),
            OrderError::Missing(l) => format!("--order: `{}` is missing", letter(&l)),
        })
    })
}

fn word_context(g: &GlobalOpts, mode: SyntaxMode, inputs: &[Input]) -> Result<Context, Failure> {
    let alphabet = match (&g.alphabet, &g.order) {
        (Some(names), _) => parse_alphabet(names, mode)?,
        (None, Some(order)) => {
            let mut names = Vec::new();
            for n in mentioned_names(order, mode) {
                if !names.contains(&n) {
                    names.push(n);
                }
            }
            Alphabet::new(names).map_err(|e| Failure::usage(format!("--order: {e}")))?
        }
        (None, None) => {
            let mut names: Vec<String> = inputs
                .iter()
                .flat_map(|i| i.texts())
                .flat_map(|t| mentioned_names(t, mode))
                .collect();
            names.sort();
            names.dedup();
            Alphabet::new(names).map_err(|e| Failure::usage(e.to_string()))?
        }
    };
    let order = match &g.order {
        Some(text) => parse_order(text, &alphabet, mode)?,
        None => alphabet.default_order(),
    };
    Ok(Context {
        alphabet,
        order,
        mode,
        json: g.json,
    })
}

fn verify_context(g: &GlobalOpts, mode: SyntaxMode, gens: usize) -> Result<Context, Failure> {
    let alphabet = match &g.alphabet {
        Some(names) => {
            let a = parse_alphabet(names, mode)?;
            if a.len() != gens {
                return Err(Failure::usage(format!(
                    "--alphabet declares {} generators but --gens is {gens}",
                    a.len()
                )));
            }
            a
        }
        None => Alphabet::standard(gens),
    };
    let order = match &g.order {
        Some(text) => parse_order(text, &alphabet, mode)?,
        None => alphabet.default_order(),
    };
    Ok(Context {
        alphabet,
        order,
        mode,
        json: g.json,
    })
}

fn emit(out: &mut dyn Write, text: impl std::fmt::Display) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(|e| Failure {
        status: 1,
        message: format!("writing output: {e}"),
    })
}

fn run_one(command: &Command, ctx: &Context, input: &Input, out: &mut dyn Write) -> Outcome {
    match (command, input) {
        (Command::Normalize { trace, .. }, Input::One(text)) => normalize(ctx, text, *trace, out),
        (Command::Eq { .. }, Input::Two(l, r)) => eq(ctx, l, r, out),
        (Command::Classify { .. }, Input::One(text)) => classify_cmd(ctx, text, out),
        (Command::Munn { .. }, Input::One(text)) => munn_cmd(ctx, text, out),
        _ => unreachable!("input shape matches command"),
    }
}

fn normalize(ctx: &Context, text: &str, trace: bool, out: &mut dyn Write) -> Outcome {
    let w = ctx.parse(text)?;
    if !trace {
        let nf = normal_form(&w, &ctx.order);
        if ctx.json {
            emit(out, json!({"input": ctx.fmt(&w), "normal_form": ctx.fmt(&nf)}))?;
        } else {
            emit(out, ctx.fmt(&nf))?;
        }
        return Ok(0);
    }
    let t = normal_form_traced(&w, &ctx.order);
    if ctx.json {
        let steps: Vec<Value> = t
            .steps
            .iter()
            .map(|s| {
                json!({
                    "pos": s.position,
                    "rule": s.rule.kind(),
                    "lhs": ctx.fmt(s.rule.lhs()),
                    "rhs": ctx.fmt(s.rule.rhs()),
                    "before": ctx.fmt(&s.before),
                    "after": ctx.fmt(&s.after),
                })
            })
            .collect();
        emit(
            out,
            json!({"input": ctx.fmt(&t.input), "normal_form": ctx.fmt(&t.output), "steps": steps}),
        )?;
    } else {
        for s in &t.steps {
            emit(
                out,
                format!(
                    "pos={} rule={} {} -> {}",
                    s.position,
                    s.rule.kind(),
                    ctx.fmt(s.rule.lhs()),
                    ctx.fmt(s.rule.rhs())
                ),
            )?;
        }
        emit(out, ctx.fmt(&t.output))?;
    }
    Ok(0)
}

fn eq(ctx: &Context, left: &str, right: &str, out: &mut dyn Write) -> Outcome {
    let u = ctx.parse(left)?;
    let v = ctx.parse(right)?;
    let nu = normal_form(&u, &ctx.order);
    let nv = normal_form(&v, &ctx.order);
    let equal = nu == nv;
    if ctx.json {
        emit(
            out,
            json!({
                "left": ctx.fmt(&u),
                "right": ctx.fmt(&v),
                "left_normal_form": ctx.fmt(&nu),
                "right_normal_form": ctx.fmt(&nv),
                "equal": equal,
            }),
        )?;
    } else {
        emit(out, if equal { "equal" } else { "not-equal" })?;
    }
    Ok(if equal { 0 } else { 1 })
}

fn factors_json(ctx: &Context, tree: &IdempotentTree) -> Value {
    Value::Array(
        tree.factors()
            .iter()
            .map(|p| json!([ctx.fmt(&p.flatten()), factors_json(ctx, p.inner())]))
            .collect(),
    )
}

fn factors_text(ctx: &Context, tree: &IdempotentTree, depth: usize, lines: &mut Vec<String>) {
    for p in tree.factors() {
        lines.push(format!("{}{}", "  ".repeat(depth + 1), ctx.fmt(&p.flatten())));
        factors_text(ctx, p.inner(), depth + 1, lines);
    }
}

fn classify_cmd(ctx: &Context, text: &str, out: &mut dyn Write) -> Outcome {
    let w = ctx.parse(text)?;
    let c = classify(&w, &ctx.order);
    let tree = parse_idempotent(&w).ok();
    if ctx.json {
        let factors = tree.as_ref().map_or(Value::Null, |t| factors_json(ctx, t));
        emit(
            out,
            json!({
                "word": ctx.fmt(&w),
                "idempotent": c.idempotent,
                "canonical": c.canonical,
                "prime": c.prime,
                "ordered": c.ordered,
                "factors": factors,
            }),
        )?;
        return Ok(0);
    }
    let mut lines = vec![
        format!("idempotent: {}", c.idempotent),
        format!("canonical: {}", c.canonical),
        format!("prime: {}", c.prime),
        format!("ordered: {}", c.ordered),
    ];
    if let Some(tree) = &tree {
        if tree.is_empty() {
            lines.push("factors: none".to_string());
        } else {
            lines.push("factors:".to_string());
            factors_text(ctx, tree, 0, &mut lines);
        }
    }
    emit(out, lines.join("\n"))?;
    Ok(0)
}

fn munn_cmd(ctx: &Context, text: &str, out: &mut dyn Write) -> Outcome {
    let w = ctx.parse(text)?;
    let t = munn_tree(&w);
    let edges = t.edges();
    if ctx.json {
        let vertices: Vec<String> = t.vertices().iter().map(|v| ctx.fmt(v)).collect();
        let edges: Vec<Value> = edges
            .iter()
            .map(|(p, l)| json!([ctx.fmt(p), ctx.fmt_letter(*l)]))
            .collect();
        emit(
            out,
            json!({"vertices": vertices, "edges": edges, "start": "", "end": ctx.fmt(t.end())}),
        )?;
        return Ok(0);
    }
    let vertices: Vec<String> = t.vertices().iter().map(|v| ctx.fmt_text(v)).collect();
    let mut lines = vec![
        format!("start: 1"),
        format!("end: {}", ctx.fmt_text(t.end())),
        format!("vertices: {}", vertices.join(", ")),
        format!("minimal length: {}", t.minimal_length()),
        "edges:".to_string(),
    ];
    for (parent, l) in &edges {
        let mut child = parent.letters().to_vec();
        child.push(*l);
        lines.push(format!(
            "  {} --{}--> {}",
            ctx.fmt_text(parent),
            ctx.fmt_letter(*l),
            ctx.fmt_text(&child)
        ));
    }
    emit(out, lines.join("\n"))?;
    Ok(0)
}

fn verify_gsb(
    ctx: &Context,
    gens: usize,
    max_lhs: usize,
    max_ambiguity: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let r = verify_bounded(gens, max_lhs, max_ambiguity, &ctx.order);
    let passed = r.passed();
    if ctx.json {
        let mut v = serde_json::to_value(&r).expect("report serializes");
        v["passed"] = json!(passed);
        emit(out, v)?;
    } else {
        let mut lines = vec![
            format!("bounds: gens={gens} max-lhs={max_lhs} max-ambiguity={max_ambiguity}"),
            format!("rules: {} (a: {}, b: {})", r.rules, r.rules_a, r.rules_b),
            format!(
                "compositions: {} (intersection: {}, inclusion: {})",
                r.compositions, r.intersections, r.inclusions
            ),
        ];
        for (pair, c) in &r.by_kind {
            lines.push(format!(
                "  {pair}: intersection {}, inclusion {}",
                c.intersection, c.inclusion
            ));
        }
        if !r.cases.is_empty() {
            lines.push("overlap cases:".to_string());
            for (case, n) in &r.cases {
                lines.push(format!("  {case}: {n}"));
            }
        }
        lines.push(format!("trivial: {}", r.trivial));
        lines.push(format!("non-trivial: {}", r.non_trivial));
        for f in r.failures.iter().take(5) {
            lines.push(format!(
                "  ambiguity {}: {} vs {}",
                ctx.fmt_text(&f.composition.ambiguity),
                ctx.fmt_text(&f.witness.0.output),
                ctx.fmt_text(&f.witness.1.output)
            ));
        }
        lines.push(format!("escaped bound: {}", r.escaped_bound));
        lines.push(format!("complete: {}", r.complete));
        let verdict = if passed {
            "verified"
        } else if r.vacuous {
            "FAILED (no compositions in range)"
        } else if !r.complete {
            "FAILED (budget exhausted)"
        } else {
            "FAILED"
        };
        lines.push(format!("result: {verdict}"));
        emit(out, lines.join("\n"))?;
    }
    let _ = writeln!(err, "elapsed: {:.3}s", r.elapsed.as_secs_f64());
    Ok(if passed { 0 } else { 1 })
}

fn verify_oracle(ctx: &Context, gens: usize, max_len: usize, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let r = oracle_sweep(gens, max_len, &ctx.order).map_err(|_| {
        Failure::usage(format!(
            "--gens {gens} --max-len {max_len} covers {} words; the limit is {MAX_SWEEP_WORDS}",
            universe_size(gens, max_len)
        ))
    })?;
    let passed = r.passed();
    if ctx.json {
        let mut v = serde_json::to_value(&r).expect("report serializes");
        v["passed"] = json!(passed);
        emit(out, v)?;
    } else {
        let lines = [
            format!("bounds: gens={gens} max-len={max_len}"),
            format!("words: {}", r.words),
            format!("classes: {}", r.classes),
            format!("split classes: {}", r.split_classes),
            format!("merged classes: {}", r.merged_classes),
            format!("foreign normal forms: {}", r.foreign_normal_forms),
            format!("length exceptions: {}", r.length_exceptions),
            format!("not deg-lex least: {}", r.not_least),
            format!("result: {}", if passed { "verified" } else { "FAILED" }),
        ];
        emit(out, lines.join("\n"))?;
    }
    let _ = writeln!(err, "elapsed: {:.3}s", r.elapsed.as_secs_f64());
    Ok(if passed { 0 } else { 1 })
}
