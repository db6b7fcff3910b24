//! Argument parsing and subcommand dispatch. `run` never exits the process;
//! it returns the exit status and the text to print.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use stbraid_core::braid::{
    acampo_check, braid_hom_suite, fbar_generator, kernel_suite, known_image_suite, w0_charge_attempt, SuiteOptions,
};
use stbraid_core::finite::{
    all_generators, e_set_check, enumeration_limit, fbar_images, group_order, index_i, reduce_mod, span,
    sp6_commutator_chain_check, FpMatrix, SpanReport, ENUMERATION_GATE,
};
use stbraid_core::presentation::{Presentation, RelationRef};
use stbraid_core::steinberg::{
    central_w4_suite, charge_extract, commutator_convention_check, soundness_suite, weyl_push, weyl_suite,
    StPresentation,
};
use stbraid_core::word::word_text;
use stbraid_core::zmatrix::{commutation_suite, generator_matrix};
use stbraid_core::{golden, GenSymbol, Item, Report, Tier};

use crate::{
    check_any_script, first_failure_at, matrix_json, passes_at, read_script, report_json, verification_json,
    word_json, InputWord,
};

pub const USAGE_ERROR: i32 = 2;
pub const CHECK_FAILURE: i32 = 1;

#[derive(Parser, Debug)]
#[command(name = "stbraid", version, about = "Verify the braid group to Steinberg group homomorphism")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Rank n of St(C_n, Z); braids live on 2n+2 strands.
    #[arg(long, global = true, default_value_t = 2)]
    pub n: u8,
    /// Tier an item must reach to count as passed.
    #[arg(long, global = true, value_enum, default_value_t = TierArg::Pi)]
    pub tier: TierArg,
    /// Rewrite step budget for normalization.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub budget: usize,
    /// Output format (eval defaults to json).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Include wall times in reports.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum TierArg {
    Pi,
    Certified,
}

impl TierArg {
    fn tier(self) -> Tier {
        match self {
            TierArg::Pi => Tier::PiVerified,
            TierArg::Certified => Tier::Certified,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// braid-hom: use the Artin group with σ_0 and f̂.
        #[arg(long)]
        hat: bool,
    },
    /// Index of f(P_{2n+2}) in the level-2 congruence subgroup.
    Index {
        /// Print i_2 through i_6.
        #[arg(long)]
        all: bool,
    },
    /// Enumerate the subgroup of Sp_{2n}(F_p) spanned by generators.
    Span {
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// A file of words, one per line, or builtin:NAME with NAME one of
        /// E, E+z2, E3+z2, fbar, fhat, all.
        #[arg(long, default_value = "builtin:fbar")]
        gens: String,
        /// Stop after this many elements (at most 2^24).
        #[arg(long)]
        limit: Option<u64>,
        /// Fail unless exactly this many elements are reached.
        #[arg(long)]
        expect: Option<u64>,
    },
    /// π of a Steinberg word, or f̄ of a braid word.
    Eval {
        #[arg(long)]
        word: String,
    },
    /// Push Weyl elements left and collect the rest.
    Normalize {
        #[arg(long)]
        word: String,
        /// Write the rewrite script here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Proof scripts.
    Script {
        #[command(subcommand)]
        action: ScriptAction,
    },
    /// The k with w = w_1^{4k}, certified by a replayed script.
    Charge {
        #[arg(long)]
        word: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Experiments beyond the verified statements.
    Stretch {
        #[command(subcommand)]
        what: Stretch,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    BraidHom,
    Images,
    KernelGens,
    Weyl,
    CentralW4,
    Acampo,
    Sp6,
    Commutation,
    Soundness,
}

#[derive(Subcommand, Debug)]
pub enum ScriptAction {
    /// Replay scripts; the alphabet header picks the presentation. With no
    /// files, replays the corpus directory (STBRAID_CORPUS overrides it).
    Check {
        files: Vec<PathBuf>,
    },
    /// Write the certificate of a derived Steinberg relation.
    Derive {
        #[arg(long)]
        relation: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum Stretch {
    /// Try to certify the charge of f̂_7 of the lifted longest element of W(E_7).
    W0Charge,
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl std::fmt::Display) -> Outcome {
        Outcome { code: USAGE_ERROR, stdout: String::new(), stderr: format!("error: {}\n", msg) }
    }
}

/// Parse `args` (program name first) and run.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { USAGE_ERROR } else { 0 };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let c = &cli.common;
    if c.n < 2 || c.n > 8 {
        return Outcome::usage(format!("--n must be between 2 and 8, got {}", c.n));
    }
    if c.tier == TierArg::Certified && !(2..=3).contains(&c.n) && needs_rank(&cli.command) {
        return Outcome::usage("--tier certified is available for n = 2 and n = 3 only");
    }
    let r = match &cli.command {
        Command::Verify { suite, hat } => verify(c, *suite, *hat),
        Command::Index { all } => index(c, *all),
        Command::Span { p, gens, limit, expect } => span_cmd(c, *p, gens, *limit, *expect),
        Command::Eval { word } => eval(c, word),
        Command::Normalize { word, out } => normalize(c, word, out.as_ref()),
        Command::Script { action: ScriptAction::Check { files } } => script_check(c, files),
        Command::Script { action: ScriptAction::Derive { relation, out } } => derive(c, relation, out.as_ref()),
        Command::Charge { word, out } => charge(c, word, out.as_ref()),
        Command::Stretch { what: Stretch::W0Charge } => w0(c),
    };
    r.unwrap_or_else(|e| match e.downcast::<Usage>() {
        Ok(u) => Outcome::usage(u.0),
        Err(e) => Outcome { code: CHECK_FAILURE, stdout: String::new(), stderr: format!("error: {:#}\n", e) },
    })
}

fn needs_rank(cmd: &Command) -> bool {
    !matches!(cmd, Command::Script { action: ScriptAction::Check { .. } } | Command::Stretch { .. })
}

/// Marks an error as a usage error (exit 2).
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Usage(msg.into()))
}

fn format(c: &Common, default: Format) -> Format {
    c.format.unwrap_or(default)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

/// Print a report and pick the exit status at the requested tier.
fn emit_report(c: &Common, rep: &Report, extra: Option<(&str, Value)>) -> Outcome {
    let requested = c.tier.tier();
    let ok = passes_at(rep, requested);
    let stdout = match format(c, Format::Text) {
        Format::Json => {
            let mut v = report_json(rep, requested);
            if let Some((k, x)) = extra {
                v[k] = x;
            }
            pretty(&v)
        }
        Format::Text => format!("{}\n", rep),
    };
    let stderr = match first_failure_at(rep, requested) {
        Some(i) if !i.pass => format!("check failed: {}\n", i.name),
        Some(i) => format!("check failed: {} (reached {} only)\n", i.name, i.tier),
        None => String::new(),
    };
    Outcome { code: if ok { 0 } else { CHECK_FAILURE }, stdout, stderr }
}

fn verify(c: &Common, suite: Suite, hat: bool) -> Result<Outcome> {
    let n = c.n;
    let opt = SuiteOptions { certified: c.tier == TierArg::Certified, budget: c.budget };
    let t = Instant::now();
    let mut rep = match suite {
        Suite::BraidHom => braid_hom_suite(n, hat, opt),
        Suite::Images => known_image_suite(n, opt),
        Suite::KernelGens => kernel_suite(n, opt),
        Suite::Weyl => weyl_suite(n),
        Suite::CentralW4 => central_w4_suite(n, opt.certified, c.budget),
        Suite::Acampo => acampo_check(n),
        Suite::Sp6 => sp6_report(c),
        Suite::Commutation => {
            let mut r = commutation_suite(n);
            r.extend(commutator_convention_check());
            r
        }
        Suite::Soundness => soundness_suite(n),
    };
    if c.timing {
        rep.title = format!("{} ({} ms)", rep.title, t.elapsed().as_millis());
    }
    Ok(emit_report(c, &rep, None))
}

/// E_3 ∪ {z̄_2}: the commutator chain, E_3 against f̄, and the full span.
fn sp6_report(c: &Common) -> Report {
    let mut rep = sp6_commutator_chain_check();
    rep.title = "Sp_6(F_2) generation".into();
    rep.extend(e_set_check(3));
    let expected = golden::u64("span.e3z2");
    let gens = builtin_gens("E3+z2", 3, 2).expect("builtin");
    let t = Instant::now();
    let item = match span(&gens, ENUMERATION_GATE) {
        Ok(s) => {
            let mut d = format!("reached {}", s.reached);
            if c.timing {
                d.push_str(&format!(" in {} ms", t.elapsed().as_millis()));
            }
            Item::new(format!("span(E_3 + z2) = {}", expected), s.closed && s.reached == expected, Tier::Exact).with_detail(d)
        }
        Err(e) => Item::new(format!("span(E_3 + z2) = {}", expected), false, Tier::Exact).with_detail(e),
    };
    rep.push(item);
    rep
}

fn index(c: &Common, all: bool) -> Result<Outcome> {
    let ns: Vec<u32> = if all { (2..=6).collect() } else { vec![c.n as u32] };
    let mut rows = Vec::new();
    for &n in &ns {
        let i = index_i(n).map_err(usage)?;
        rows.push((n, i, group_order(n, 2)));
    }
    let stdout = match format(c, Format::Text) {
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|(n, i, o)| json!({ "n": n, "index": i.to_string(), "order": o.to_string() }))
                .collect();
            pretty(&if all { json!(v) } else { v[0].clone() })
        }
        Format::Text if all => rows.iter().map(|(n, i, _)| format!("i_{} = {}\n", n, i)).collect(),
        Format::Text => format!("{}\n", rows[0].1),
    };
    Ok(Outcome { code: 0, stdout, stderr: String::new() })
}

fn builtin_gens(name: &str, n: u8, p: u32) -> Result<Vec<(String, FpMatrix)>> {
    let z2 = || -> Result<(String, FpMatrix)> {
        Ok(("z(2)".into(), reduce_mod(&generator_matrix(&GenSymbol::z(2), n), p).map_err(usage)?))
    };
    let fb = || fbar_images(n, p).map_err(usage);
    Ok(match name {
        "fbar" => fb()?,
        "fhat" => {
            let mut g = fb()?;
            g.push(z2()?);
            g
        }
        "E" | "E+z2" | "E3+z2" => {
            if name == "E3+z2" && n != 3 {
                return Err(usage("builtin:E3+z2 needs --n 3"));
            }
            // E_n is f̄(σ_1), …, f̄(σ_{2n}) mod p.
            let mut g = Vec::new();
            for i in 1..=2 * n {
                g.push((format!("fbar(s{})", i), reduce_mod(&fbar_generator(i, n).map_err(usage)?, p).map_err(usage)?));
            }
            if name != "E" {
                g.push(z2()?);
            }
            g
        }
        "all" => all_generators(n, p),
        other => return Err(usage(format!("unknown builtin generator set `{}`", other))),
    })
}

fn file_gens(path: &PathBuf, n: u8, p: u32) -> Result<Vec<(String, FpMatrix)>> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("reading {}: {}", path.display(), e)))?;
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let w = InputWord::parse(line, n).map_err(|e| usage(e.to_string()))?;
        out.push((line.to_string(), reduce_mod(&w.matrix(n)?, p).map_err(usage)?));
    }
    if out.is_empty() {
        return Err(usage(format!("{} lists no generators", path.display())));
    }
    Ok(out)
}

fn span_json(s: &SpanReport, order: &str, full: bool, timing: bool) -> Value {
    let mut v = json!({
        "p": s.p,
        "dim": s.dim,
        "generators": s.generators,
        "reached": s.reached,
        "closed": s.closed,
        "limit": s.limit,
        "depth": s.depth,
        "group_order": order,
        "full_group": full,
    });
    if timing {
        v["wall_ms"] = json!(s.wall_ms.map(|t| t as u64));
    }
    v
}

fn span_cmd(c: &Common, p: u32, gens: &str, limit: Option<u64>, expect: Option<u64>) -> Result<Outcome> {
    let n = c.n;
    if !stbraid_core::finite::is_prime(p) {
        return Err(usage(format!("--p {} is not prime", p)));
    }
    let g = match gens.strip_prefix("builtin:") {
        Some(name) => builtin_gens(name, n, p)?,
        None => file_gens(&PathBuf::from(gens), n, p)?,
    };
    let order = group_order(n as u32, p);
    let limit = match (limit, enumeration_limit(n as u32, p)) {
        (Some(l), _) if l > ENUMERATION_GATE => return Err(usage("--limit may not exceed 2^24")),
        (Some(l), _) => l,
        (None, Some(l)) => l,
        (None, None) => {
            let msg = format!("|Sp_{}(F_{})| = {}: order formula only, enumeration skipped", 2 * n, p, order);
            let stdout = match format(c, Format::Text) {
                Format::Json => pretty(&json!({ "group_order": order.to_string(), "skipped": true })),
                Format::Text => format!("{}\n", msg),
            };
            let code = if expect.is_some() { CHECK_FAILURE } else { 0 };
            return Ok(Outcome { code, stdout, stderr: String::new() });
        }
    };
    let t = Instant::now();
    let mut s = span(&g, limit).map_err(usage)?;
    s.wall_ms = Some(t.elapsed().as_millis());
    let full = s.closed && order == s.reached.into();
    let stdout = match format(c, Format::Text) {
        Format::Json => pretty(&span_json(&s, &order.to_string(), full, c.timing)),
        Format::Text => {
            let mut o = String::new();
            writeln!(o, "generators: {}", s.generators.join(", ")).unwrap();
            writeln!(o, "reached {} of |Sp_{}(F_{})| = {}{}", s.reached, 2 * n, p, order, if full { " (full group)" } else { "" })
                .unwrap();
            if !s.closed {
                writeln!(o, "limit {} hit before closure", s.limit).unwrap();
            }
            if c.timing {
                writeln!(o, "{} ms", s.wall_ms.unwrap_or(0)).unwrap();
            }
            o
        }
    };
    let (code, stderr) = match expect {
        Some(e) if !(s.closed && s.reached == e) => (CHECK_FAILURE, format!("check failed: expected {} elements\n", e)),
        _ => (0, String::new()),
    };
    Ok(Outcome { code, stdout, stderr })
}

fn input(c: &Common, word: &str) -> Result<InputWord> {
    InputWord::parse(word, c.n).map_err(|e| usage(e.to_string()))
}

fn eval(c: &Common, word: &str) -> Result<Outcome> {
    let w = input(c, word)?;
    let m = w.matrix(c.n).map_err(|e| usage(e.to_string()))?;
    let symplectic = stbraid_core::zmatrix::is_symplectic(&m);
    let stdout = match format(c, Format::Json) {
        Format::Json => {
            let mut v = json!({ "n": c.n, "matrix": matrix_json(&m), "symplectic": symplectic });
            match &w {
                InputWord::Steinberg(s) => v["word"] = word_json(s),
                InputWord::Braid(b) => {
                    v["braid"] = word_json(b);
                    v["word"] = word_json(&w.steinberg(c.n)?);
                }
            }
            pretty(&v)
        }
        Format::Text => {
            let rows = m.rows_decimal();
            let width = rows.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
            rows.iter()
                .map(|r| r.iter().map(|x| format!("{:>w$}", x, w = width)).collect::<Vec<_>>().join(" ") + "\n")
                .collect()
        }
    };
    Ok(Outcome { code: 0, stdout, stderr: String::new() })
}

fn write_script(path: Option<&PathBuf>, text: &str) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, text).map_err(|e| anyhow!("writing {}: {}", p.display(), e))?;
    }
    Ok(())
}

fn normalize(c: &Common, word: &str, out: Option<&PathBuf>) -> Result<Outcome> {
    let w = input(c, word)?.steinberg(c.n).map_err(|e| usage(e.to_string()))?;
    let pres = StPresentation::new(c.n);
    let norm = weyl_push(&pres, &w, c.budget).map_err(|e| anyhow!("{}", e))?;
    write_script(out, &norm.script.to_text())?;
    let stdout = match format(c, Format::Text) {
        Format::Json => pretty(&json!({
            "input": word_json(&w),
            "normal_form": word_json(&norm.word),
            "steps": norm.script.steps.len(),
            "budget_exhausted": norm.exhausted,
            "stopped": norm.stopped,
        })),
        Format::Text => {
            let mut o = format!("{}\n-> {}\n{} steps", word_text(&w), word_text(&norm.word), norm.script.steps.len());
            if norm.exhausted {
                o.push_str(", budget exhausted");
            }
            if let Some(s) = &norm.stopped {
                o.push_str(&format!(", stopped: {}", s));
            }
            o + "\n"
        }
    };
    Ok(Outcome { code: 0, stdout, stderr: String::new() })
}

fn script_check(c: &Common, files: &[PathBuf]) -> Result<Outcome> {
    let requested = match c.tier {
        // A script replays its steps in full either way; the tier decides how
        // derived relations are admitted.
        TierArg::Pi => Tier::PiVerified,
        TierArg::Certified => Tier::Certified,
    };
    let scripts = if files.is_empty() {
        let dir = crate::corpus_dir();
        let all = crate::load_corpus(&dir).map_err(|e| usage(format!("{:#}", e)))?;
        if all.is_empty() {
            return Err(usage(format!("no scripts under {}", dir.display())));
        }
        all
    } else {
        files
            .iter()
            .map(|f| Ok((f.clone(), read_script(f).map_err(|e| usage(e.to_string()))?)))
            .collect::<Result<Vec<_>>>()?
    };
    let mut results = Vec::new();
    let mut first_fail = None;
    for (f, s) in &scripts {
        let v = check_any_script(s, requested);
        let ok = v.pass && v.tier >= requested;
        if !ok && first_fail.is_none() {
            first_fail = Some(format!(
                "{}{}",
                f.display(),
                v.failing_step.map(|k| format!(" at step {}", k)).unwrap_or_default()
            ));
        }
        results.push((f, s.steps.len(), v));
    }
    let stdout = match format(c, Format::Text) {
        Format::Json => {
            let v: Vec<Value> = results
                .iter()
                .map(|(f, _, v)| {
                    let mut j = verification_json(v);
                    j["file"] = json!(f.display().to_string());
                    j
                })
                .collect();
            pretty(&json!(v))
        }
        Format::Text => results
            .iter()
            .map(|(f, k, v)| {
                let mut line = format!("{} [{}] {} ({} steps)", if v.pass { "pass" } else { "FAIL" }, v.tier, f.display(), k);
                if let Some(e) = &v.error {
                    line.push_str(&format!(" -- {}", e));
                }
                line + "\n"
            })
            .collect(),
    };
    Ok(match first_fail {
        Some(f) => Outcome { code: CHECK_FAILURE, stdout, stderr: format!("check failed: {}\n", f) },
        None => Outcome { code: 0, stdout, stderr: String::new() },
    })
}

fn derive(c: &Common, relation: &str, out: Option<&PathBuf>) -> Result<Outcome> {
    let pres = StPresentation::new(c.n);
    let r = RelationRef::parse(relation).map_err(usage)?;
    let s = pres.derivation(&r).map_err(|e| usage(e.to_string()))?;
    let text = format!("# certificate of {}\n{}", r, s.to_text());
    write_script(out, &text)?;
    let stdout = if out.is_some() { format!("{} steps\n", s.steps.len()) } else { text };
    Ok(Outcome { code: 0, stdout, stderr: String::new() })
}

fn charge(c: &Common, word: &str, out: Option<&PathBuf>) -> Result<Outcome> {
    let w = input(c, word)?.steinberg(c.n).map_err(|e| usage(e.to_string()))?;
    let pres = StPresentation::new(c.n);
    let res = charge_extract(&pres, &w, c.budget);
    let (k, tier, detail) = match &res {
        Ok(ch) => {
            let v = crate::check_any_script(&ch.script, Tier::Certified);
            if v.pass {
                write_script(out, &ch.script.to_text())?;
                (Some(ch.k), Some(v.tier), format!("certificate of {} steps replayed", ch.script.steps.len()))
            } else {
                (None, None, format!("certificate failed to replay: {}", v.error.unwrap_or_default()))
            }
        }
        Err(stbraid_core::steinberg::ChargeError::NotInKernel) => (None, None, "π(w) ≠ I".to_string()),
        Err(e) => (None, Some(Tier::PiVerified), e.to_string()),
    };
    let ok = match tier {
        Some(t) => t >= c.tier.tier(),
        None => false,
    };
    let stdout = match format(c, Format::Text) {
        Format::Json => pretty(&json!({
            "word": word_json(&w),
            "charge": k,
            "tier": tier.map(|t| t.name()),
            "detail": detail,
        })),
        Format::Text => match k {
            Some(k) => format!("charge {} [{}] -- {}\n", k, tier.map(|t| t.name()).unwrap_or("none"), detail),
            None => format!("charge unknown [{}] -- {}\n", tier.map(|t| t.name()).unwrap_or("none"), detail),
        },
    };
    let stderr = if ok { String::new() } else { format!("check failed: charge of {}\n", word_text(&w)) };
    Ok(Outcome { code: if ok { 0 } else { CHECK_FAILURE }, stdout, stderr })
}

fn w0(c: &Common) -> Result<Outcome> {
    let a = w0_charge_attempt(c.budget);
    let stdout = match format(c, Format::Text) {
        Format::Json => pretty(&json!({
            "word": word_json(&a.word),
            "image_is_minus_identity": a.image_is_minus_identity,
            "pi_identity": a.pi_identity,
            "charge": a.charge,
            "detail": a.detail,
        })),
        Format::Text => {
            let mut o = String::new();
            writeln!(o, "lift: {} ({} letters)", word_text(&a.word), a.word.len()).unwrap();
            writeln!(o, "image in W(E_7) is -1: {}", a.image_is_minus_identity).unwrap();
            writeln!(o, "π(f̂_7(lift)) = I: {}", a.pi_identity).unwrap();
            match a.charge {
                Some(k) => writeln!(o, "charge {} (certified) -- {}", k, a.detail).unwrap(),
                None => writeln!(o, "charge not determined -- {}", a.detail).unwrap(),
            }
            o
        }
    };
    let ok = a.image_is_minus_identity && a.pi_identity;
    let stderr = if ok { String::new() } else { "check failed: lift of the longest element\n".to_string() };
    Ok(Outcome { code: if ok { 0 } else { CHECK_FAILURE }, stdout, stderr })
}
