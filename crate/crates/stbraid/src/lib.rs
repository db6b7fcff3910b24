//! Command-line front end for `stbraid-core`: word input, corpus scripts,
//! JSON rendering and the subcommand runner.

pub mod cli;

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use stbraid_core::braid::{fbar, BraidPresentation};
use stbraid_core::presentation::{check_script, ProofScript, VerificationReport};
use stbraid_core::steinberg::{pi, StPresentation};
use stbraid_core::word::word_text;
use stbraid_core::{Alphabet, Report, Tier, Word, ZMatrix};

/// Overrides the shipped corpus directory.
pub const CORPUS_ENV: &str = "STBRAID_CORPUS";

pub fn corpus_dir() -> PathBuf {
    match std::env::var_os(CORPUS_ENV) {
        Some(d) => PathBuf::from(d),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus"),
    }
}

/// All `*.script` files under `dir`, sorted by path.
pub fn load_corpus(dir: &Path) -> Result<Vec<(PathBuf, ProofScript)>> {
    let mut paths = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in fs::read_dir(&d).with_context(|| format!("reading {}", d.display()))? {
            let p = e?.path();
            if p.is_dir() {
                stack.push(p);
            } else if p.extension().is_some_and(|x| x == "script") {
                paths.push(p);
            }
        }
    }
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let s = read_script(&p)?;
            Ok((p, s))
        })
        .collect()
}

pub fn read_script(path: &Path) -> Result<ProofScript> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ProofScript::parse(&text).map_err(|e| anyhow::anyhow!("{}: {}", path.display(), e))
}

/// Rank n for which a braid or Artin alphabet is the source of f (or f̂).
fn source_rank(a: Alphabet) -> Option<u8> {
    let k = match a {
        Alphabet::Braid { strands } => strands,
        Alphabet::Artin { k } => k,
        Alphabet::Steinberg { .. } => return None,
    };
    (k >= 6 && k % 2 == 0).then_some((k - 2) / 2)
}

/// Replay a script against the presentation named by its alphabet, with the
/// matching image oracle checked at every step when one exists.
pub fn check_any_script(script: &ProofScript, admit: Tier) -> VerificationReport {
    match script.alphabet() {
        Alphabet::Steinberg { rank } => {
            let pres = StPresentation::new(rank);
            let oracle = |w: &Word| pi(w);
            check_script(&pres, script, admit, Some(&oracle))
        }
        a => {
            let pres = BraidPresentation::new(a);
            match source_rank(a) {
                Some(n) => {
                    let oracle = move |w: &Word| fbar(w, n).expect("alphabet matches rank");
                    check_script(&pres, script, admit, Some(&oracle))
                }
                None => check_script(&pres, script, admit, None),
            }
        }
    }
}

/// A word read from the command line: Steinberg letters, or braid letters
/// (with `s0` meaning the Artin generator) to be pushed through f.
#[derive(Clone, Debug)]
pub enum InputWord {
    Steinberg(Word),
    Braid(Word),
}

impl InputWord {
    pub fn parse(text: &str, n: u8) -> Result<InputWord> {
        if let Ok(w) = stbraid_core::word::parse_word_text(Alphabet::Steinberg { rank: n }, text) {
            return Ok(InputWord::Steinberg(w));
        }
        let k = 2 * n + 2;
        let braid_err = match stbraid_core::word::parse_word_text(Alphabet::Braid { strands: k }, text) {
            Ok(w) => return Ok(InputWord::Braid(w)),
            Err(e) => e,
        };
        if let Ok(w) = stbraid_core::word::parse_word_text(Alphabet::Artin { k }, text) {
            return Ok(InputWord::Braid(w));
        }
        bail!("`{}` is neither a Steinberg word of rank {} nor a braid word on {} strands ({})", text, n, k, braid_err)
    }

    /// The Steinberg word: the input itself, or its image under f (f̂).
    pub fn steinberg(&self, n: u8) -> Result<Word> {
        match self {
            InputWord::Steinberg(w) => Ok(w.clone()),
            InputWord::Braid(w) => stbraid_core::braid::f_map(w, n).map_err(|e| anyhow::anyhow!(e)),
        }
    }

    /// π of the Steinberg word, which for braid input is f̄.
    pub fn matrix(&self, n: u8) -> Result<ZMatrix> {
        match self {
            InputWord::Steinberg(w) => Ok(pi(w)),
            InputWord::Braid(w) => fbar(w, n).map_err(|e| anyhow::anyhow!(e)),
        }
    }
}

pub fn matrix_json(m: &ZMatrix) -> Value {
    json!(m.rows_decimal())
}

pub fn word_json(w: &Word) -> Value {
    json!({ "alphabet": w.alphabet().to_string(), "word": word_text(w), "length": w.len() })
}

/// An item counts only if it passed at `requested` or a stronger tier.
pub fn passes_at(rep: &Report, requested: Tier) -> bool {
    rep.items.iter().all(|i| i.pass && i.tier >= requested)
}

pub fn first_failure_at(rep: &Report, requested: Tier) -> Option<&stbraid_core::Item> {
    rep.items.iter().find(|i| !(i.pass && i.tier >= requested))
}

pub fn report_json(rep: &Report, requested: Tier) -> Value {
    let items: Vec<Value> = rep
        .items
        .iter()
        .map(|i| json!({ "name": i.name, "pass": i.pass, "tier": i.tier.name(), "detail": i.detail }))
        .collect();
    json!({
        "report": rep.title,
        "requested_tier": requested.name(),
        "pass": passes_at(rep, requested),
        "weakest_tier": rep.weakest_tier().map(|t| t.name()),
        "first_failure": first_failure_at(rep, requested).map(|i| i.name.clone()),
        "items": items,
    })
}

pub fn verification_json(v: &VerificationReport) -> Value {
    json!({
        "pass": v.pass,
        "tier": v.tier.name(),
        "failing_step": v.failing_step,
        "error": v.error,
        "steps_replayed": v.steps_replayed,
        "final_word": word_text(&v.final_word),
        "pi_preserved": v.pi_preserved.as_ref().map(|f| f.iter().all(|&b| b)),
    })
}
