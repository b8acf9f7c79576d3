//! The `filebasis` command line: argument parsing, dispatch and exit codes.
//!
//! Exit codes: 0 yes/ok, 1 no/fail, 2 budget exceeded, 64 usage, 65 data.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::construction::{generate, parse_rational, ConstructionParams, Presentation};
use crate::decision::{are_conjugate, equals_in_g, regular_normal_form, Budget, Engine, Outcome};
use crate::diagram::{
    check_condition_b, check_condition_x, check_letter_budget, check_main_lemma, special_selection,
    validate_diagram, Diagram, DiagramError,
};
use crate::words::{deglex_words, parse_word, Alphabet, PowerWord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;

/// Soft memory cap in bytes; lowers `--max-states` accordingly.
pub const MEMORY_ENV: &str = "FILEBASIS_MAX_MEM";

#[derive(Debug, Parser)]
#[command(name = "filebasis", version, about = "Relator construction, diagram checks and budgeted decision procedures")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the parameter inequalities with exact arithmetic.
    Validate(ParamArgs),
    /// Generate the first relators of the construction.
    Gen {
        #[command(flatten)]
        params: ParamArgs,
        /// Number of relators to generate.
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Decide whether two words are equal in the group.
    Eq {
        u: String,
        v: String,
        #[command(flatten)]
        query: QueryArgs,
    },
    /// Find the regular normal form of a word.
    Nf {
        g: String,
        #[command(flatten)]
        query: QueryArgs,
    },
    /// Decide whether two words are conjugate in the group.
    Conj {
        u: String,
        v: String,
        #[command(flatten)]
        query: QueryArgs,
    },
    /// Validate a diagram file and evaluate a condition on its special selection.
    CheckDiagram {
        /// Diagram JSON file.
        file: std::path::PathBuf,
        /// Presentation JSON file (as written by `gen`).
        #[arg(long)]
        presentation: std::path::PathBuf,
        /// Condition to evaluate on the special selection.
        #[arg(long, value_enum)]
        condition: Option<Condition>,
        /// Override lambda2 (default 2/n).
        #[arg(long)]
        lambda2: Option<String>,
        /// Letter indices for `letter-budget`, comma separated.
        #[arg(long, value_delimiter = ',')]
        letters: Vec<u32>,
    },
    /// Stream reduced words in deg-lex order, skipping the empty word.
    EnumWords {
        #[arg(long, default_value_t = 3)]
        n: u32,
        /// Number of words (default 2n + 3).
        #[arg(long)]
        count: Option<usize>,
        /// Start after this word.
        #[arg(long)]
        from: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Condition {
    #[value(name = "B")]
    B,
    #[value(name = "X")]
    X,
    MainLemma,
    LetterBudget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Diagram,
    Rewrite,
    Both,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Diagram => Engine::Diagram,
            EngineArg::Rewrite => Engine::Rewrite,
            EngineArg::Both => Engine::Both,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// Alphabet size.
    #[arg(long, default_value_t = 3)]
    pub n: u32,
    /// Rational lambda1 such as `1/315` (default 1/(5n)).
    #[arg(long)]
    pub lambda1: Option<String>,
    /// Exponent scale N (default: least N with lambda1 n N >= 1).
    #[arg(long = "N")]
    pub big_n: Option<u64>,
    /// Override the area constant q.
    #[arg(long)]
    pub q: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    /// Diagram size cap.
    #[arg(long)]
    pub max_edges: Option<u64>,
    /// Longest intermediate word.
    #[arg(long = "max-len")]
    pub max_len: Option<usize>,
    /// Search states per call.
    #[arg(long)]
    pub max_states: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct QueryArgs {
    /// Presentation JSON file; without it the free group on `--n` letters is used.
    #[arg(long)]
    pub presentation: Option<std::path::PathBuf>,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long, value_enum, default_value_t = EngineArg::Diagram)]
    pub engine: EngineArg,
    /// Embed the witness in the output.
    #[arg(long)]
    pub witness: bool,
}

/// Failure that maps to a usage or data exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_USAGE, message: e.to_string() }
}

fn data(e: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_DATA, message: e.to_string() }
}

impl ParamArgs {
    fn build(&self) -> Result<ConstructionParams, Failure> {
        let lambda1 = match &self.lambda1 {
            Some(t) => parse_rational(t).map_err(usage)?,
            None => num_rational::BigRational::new(1.into(), (5 * self.n.max(1) as i64).into()),
        };
        let big_n = match self.big_n {
            Some(k) => k,
            None => {
                let x = (num_rational::BigRational::from_integer(self.n.into()) * &lambda1).recip();
                num_traits::ToPrimitive::to_u64(&x.ceil().to_integer()).unwrap_or(1).max(1)
            }
        };
        let p = ConstructionParams::new(self.n, lambda1, big_n).map_err(usage)?;
        match &self.q {
            Some(q) => p.with_q(parse_rational(q).map_err(usage)?).map_err(usage),
            None => Ok(p),
        }
    }
}

impl BudgetArgs {
    fn build(&self) -> Result<Budget, Failure> {
        let mut b = Budget::default();
        if let Some(x) = self.max_edges {
            b.max_edges = x;
        }
        if let Some(x) = self.max_len {
            b.max_word_len = x;
        }
        if let Some(x) = self.max_states {
            b.max_states = x;
        }
        if b.max_edges == 0 || b.max_word_len == 0 || b.max_states == 0 {
            return Err(usage("budget caps must be positive"));
        }
        if let Ok(text) = std::env::var(MEMORY_ENV) {
            b = b.with_memory_cap(parse_bytes(&text).ok_or_else(|| usage(format!("bad {MEMORY_ENV}: {text:?}")))?);
        }
        Ok(b)
    }
}

/// `123`, `64K`, `512M`, `2G` (binary multiples).
pub fn parse_bytes(text: &str) -> Option<u64> {
    let t = text.trim();
    let (digits, mult) = match t.char_indices().last()? {
        (i, 'k' | 'K') => (&t[..i], 1u64 << 10),
        (i, 'm' | 'M') => (&t[..i], 1 << 20),
        (i, 'g' | 'G') => (&t[..i], 1 << 30),
        _ => (t, 1),
    };
    digits.trim().parse::<u64>().ok()?.checked_mul(mult)
}

fn read(path: &std::path::Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| data(format!("{}: {e}", path.display())))
}

fn load_presentation(q: &QueryArgs) -> Result<Presentation, Failure> {
    let mut p = match &q.presentation {
        Some(path) => Presentation::from_json(&read(path)?).map_err(data)?,
        None => Presentation::empty(q.params.build()?),
    };
    if let Some(text) = &q.params.q {
        p.params = p.params.clone().with_q(parse_rational(text).map_err(usage)?).map_err(usage)?;
    }
    Ok(p)
}

fn params_json(p: &ConstructionParams) -> Value {
    json!({ "n": p.n(), "lambda1": p.lambda1().to_string(), "N": p.big_n(), "q": p.q().to_string() })
}

fn word(alphabet: Alphabet, text: &str) -> Result<PowerWord, Failure> {
    parse_word(alphabet, text).map_err(usage)
}

fn outcome_code(o: &Outcome) -> i32 {
    match o {
        Outcome::Yes(_) => EXIT_OK,
        Outcome::No(_) => EXIT_NO,
        Outcome::BudgetExceeded(_) => EXIT_BUDGET,
    }
}

struct Report {
    code: i32,
    json: Value,
    text: String,
}

/// Parse `args` (program name first), run the command, write to `out`/`err`
/// and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok(r) => {
            let _ = match cli.format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&r.json).expect("json")),
                Format::Text => write!(out, "{}", r.text),
            };
            r.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: &Command) -> Result<Report, Failure> {
    match cmd {
        Command::Validate(args) => cmd_validate(args),
        Command::Gen { params, count, budget } => cmd_gen(params, *count, budget),
        Command::Eq { u, v, query } => cmd_eq(u, v, query),
        Command::Nf { g, query } => cmd_nf(g, query),
        Command::Conj { u, v, query } => cmd_conj(u, v, query),
        Command::CheckDiagram { file, presentation, condition, lambda2, letters } => {
            cmd_check_diagram(file, presentation, *condition, lambda2.as_deref(), letters)
        }
        Command::EnumWords { n, count, from } => cmd_enum_words(*n, *count, from.as_deref()),
    }
}

fn cmd_validate(args: &ParamArgs) -> Result<Report, Failure> {
    let p = args.build()?;
    let rep = p.validate();
    let mut text = format!("n = {}, lambda1 = {}, N = {}, q = {}\n", rep.n, rep.lambda1, rep.big_n, rep.q);
    for c in &rep.checks {
        let tag = if c.holds { "pass" } else { "FAIL" };
        let opt = if c.required { "" } else { " (informational)" };
        text.push_str(&format!("{tag} {}: {} {} {}{opt}\n", c.name, c.lhs, c.relation, c.rhs));
    }
    text.push_str(&format!("theorem_scale = {}\n", rep.theorem_scale));
    let mut json = serde_json::to_value(&rep).expect("report serializes");
    json["passed"] = rep.passed().into();
    Ok(Report { code: if rep.passed() { EXIT_OK } else { EXIT_NO }, json, text })
}

fn cmd_gen(params: &ParamArgs, count: u64, budget: &BudgetArgs) -> Result<Report, Failure> {
    let p = params.build()?;
    let g = generate(&p, count, &budget.build()?).map_err(data)?;
    let mut json: Value = serde_json::from_str(&g.presentation.to_json()).expect("presentation json");
    let mut text = String::new();
    for r in &g.presentation.relators {
        text.push_str(&format!("r_{} = {}\n", r.i, r.r));
    }
    let code = match &g.truncated {
        Some(reason) => {
            json["truncated"] = serde_json::to_value(reason).expect("reason serializes");
            text.push_str(&format!("truncated after {} relator(s)\n", g.presentation.relators.len()));
            EXIT_BUDGET
        }
        None => EXIT_OK,
    };
    Ok(Report { code, json, text })
}

fn decision_report(p: &Presentation, query: &QueryArgs, inputs: Value, o: Outcome) -> Report {
    let mut json = o.to_json(query.witness);
    json["params"] = params_json(&p.params);
    json["relators"] = p.relators.len().into();
    json["input"] = inputs;
    let mut text = format!("{}\n", serde_json::to_value(o.verdict()).expect("verdict").as_str().unwrap_or(""));
    if let Some(reason) = json.get("reason") {
        text.push_str(&format!("reason: {reason}\n"));
    }
    if query.witness {
        if let Some(w) = json.get("witness") {
            text.push_str(&format!("witness: {w}\n"));
        }
    }
    Report { code: outcome_code(&o), json, text }
}

fn cmd_eq(u: &str, v: &str, query: &QueryArgs) -> Result<Report, Failure> {
    let p = load_presentation(query)?;
    let (u, v) = (word(p.alphabet(), u)?, word(p.alphabet(), v)?);
    let o = equals_in_g(&p, &u, &v, &query.budget.build()?, query.engine.into());
    Ok(decision_report(&p, query, json!({ "u": u.to_string(), "v": v.to_string() }), o))
}

fn cmd_nf(g: &str, query: &QueryArgs) -> Result<Report, Failure> {
    let p = load_presentation(query)?;
    let g = word(p.alphabet(), g)?;
    let o = regular_normal_form(&p, &g, &query.budget.build()?, query.engine.into());
    let nf = match &o {
        Outcome::Yes(crate::decision::Witness::NormalForm { normal_form, .. }) => Some(normal_form.to_string()),
        _ => None,
    };
    let mut r = decision_report(&p, query, json!({ "g": g.to_string() }), o);
    if let Some(nf) = nf {
        r.text.push_str(&format!("normal form: {nf}\n"));
        r.json["normal_form"] = nf.into();
    }
    Ok(r)
}

fn cmd_conj(u: &str, v: &str, query: &QueryArgs) -> Result<Report, Failure> {
    let p = load_presentation(query)?;
    let (u, v) = (word(p.alphabet(), u)?, word(p.alphabet(), v)?);
    let o = are_conjugate(&p, &u, &v, &query.budget.build()?, query.engine.into());
    let c = match &o {
        Outcome::Yes(crate::decision::Witness::Conjugator { conjugator, .. }) => Some(conjugator.to_string()),
        _ => None,
    };
    let mut r = decision_report(&p, query, json!({ "u": u.to_string(), "v": v.to_string() }), o);
    if let Some(c) = c {
        r.text.push_str(&format!("conjugator: {c}\n"));
        r.json["conjugator"] = c.into();
    }
    Ok(r)
}

fn cmd_check_diagram(
    file: &std::path::Path,
    presentation: &std::path::Path,
    condition: Option<Condition>,
    lambda2: Option<&str>,
    letters: &[u32],
) -> Result<Report, Failure> {
    let p = Presentation::from_json(&read(presentation)?).map_err(data)?;
    let d = Diagram::from_json(&read(file)?).map_err(data)?;
    let rep = validate_diagram(&d, &p.relator_words());
    let mut json = json!({ "params": params_json(&p.params), "validation": rep });
    let mut text = format!(
        "valid = {} (V = {}, E = {}, F = {}, contours = {})\n",
        rep.valid, rep.vertices, rep.edges, rep.faces, rep.contours
    );
    for issue in &rep.issues {
        text.push_str(&format!("issue {:?} at {:?}: {}\n", issue.kind, issue.location, issue.detail));
    }
    if !rep.valid {
        json["passed"] = false.into();
        return Ok(Report { code: EXIT_NO, json, text });
    }
    let Some(condition) = condition else {
        json["passed"] = true.into();
        return Ok(Report { code: EXIT_OK, json, text });
    };
    let fail = |mut json: Value, mut text: String, e: DiagramError| {
        text.push_str(&format!("error: {e}\n"));
        json["error"] = e.to_string().into();
        json["passed"] = false.into();
        Report { code: EXIT_NO, json, text }
    };
    let sel = match special_selection(&d, p.params.n()) {
        Ok(s) => s,
        Err(e) => return Ok(fail(json, text, e)),
    };
    json["selection"] = serde_json::to_value(&sel).expect("selection serializes");
    let lambda2 = match lambda2 {
        Some(t) => parse_rational(t).map_err(usage)?,
        None => p.params.lambda2(),
    };
    let lambda1 = p.params.lambda1().clone();
    let result: Result<(bool, Value), DiagramError> = match condition {
        Condition::B => {
            let r = check_condition_b(&d, &sel, &lambda1, &lambda2);
            Ok((r.holds, serde_json::to_value(&r).expect("report")))
        }
        Condition::X => {
            let mu = &lambda1 + &lambda2 * num_rational::BigRational::from_integer(5.into());
            check_condition_x(&d, &sel, &mu).map(|r| (r.holds, serde_json::to_value(&r).expect("report")))
        }
        Condition::MainLemma => check_main_lemma(&d, &sel, &lambda1, &lambda2)
            .map(|r| (r.holds, serde_json::to_value(&r).expect("report"))),
        Condition::LetterBudget => check_letter_budget(&d, &sel, letters, p.params.n())
            .map(|r| (r.holds, serde_json::to_value(&r).expect("report"))),
    };
    match result {
        Ok((holds, report)) => {
            if let Some(m) = report.get("metrics") {
                text.push_str(&format!("metrics: {m}\n"));
            }
            text.push_str(&format!("{} {}\n", if holds { "pass" } else { "FAIL" }, report.get("bound").unwrap_or(&Value::Null)));
            json["condition"] = report;
            json["passed"] = holds.into();
            Ok(Report { code: if holds { EXIT_OK } else { EXIT_NO }, json, text })
        }
        Err(e) => Ok(fail(json, text, e)),
    }
}

fn cmd_enum_words(n: u32, count: Option<usize>, from: Option<&str>) -> Result<Report, Failure> {
    let alphabet = Alphabet::new(n).map_err(usage)?;
    let start = match from {
        Some(t) => word(alphabet, t)?,
        None => PowerWord::empty(),
    };
    let count = count.unwrap_or(2 * n as usize + 3);
    let words: Vec<String> = deglex_words(alphabet, Some(start)).take(count).map(|w| w.to_string()).collect();
    let text = words.iter().map(|w| format!("{w}\n")).collect();
    Ok(Report { code: EXIT_OK, json: json!({ "n": n, "words": words }), text })
}
