//! Relation application over finitely presented groups: relation
//! references, rewrite steps, proof scripts and their checker, plus a
//! builder that turns "rewrite this word into that one" into steps.
//!
//! Two step kinds exist. `step` replaces a literal occurrence of one side
//! by the other. `insert` splices a cyclic rotation of the relator
//! R·L^{-1} (`fwd`) or L·R^{-1} (`rev`) into the word; since words are
//! freely reduced after every step, this is how a relation gets used
//! against a side that only occurs up to free cancellation.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::report::Tier;
use crate::root::Root;
use crate::word::{
    invert_units, parse_letter, parse_word_text, reduce_units, word_text, Alphabet, GenSymbol,
    Unit, Word, WordError,
};
use crate::zmatrix::ZMatrix;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arg {
    Int(i64),
    Root(Root),
    Letter(GenSymbol, i64),
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Int(v) => write!(f, "{}", v),
            Arg::Root(r) => write!(f, "{}", r),
            Arg::Letter(g, 1) => write!(f, "{}", g),
            Arg::Letter(g, e) => write!(f, "{}^{}", g, e),
        }
    }
}

impl Arg {
    pub fn parse(text: &str) -> Result<Arg, String> {
        let t = text.trim();
        if let Ok(v) = t.parse::<i64>() {
            return Ok(Arg::Int(v));
        }
        if t.contains('(') || t.starts_with('s') {
            let (g, e) = parse_letter(t).map_err(|e| e.to_string())?;
            return Ok(Arg::Letter(g, e));
        }
        Root::parse(t).map(Arg::Root)
    }

    pub fn int(&self) -> Option<i64> {
        match self {
            Arg::Int(v) => Some(*v),
            _ => None,
        }
    }
}

/// A relation name with its arguments, e.g. `st-xz(1,2)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelationRef {
    pub name: String,
    pub args: Vec<Arg>,
}

impl RelationRef {
    pub fn new(name: &str, args: Vec<Arg>) -> RelationRef {
        RelationRef { name: name.to_string(), args }
    }

    pub fn ints(name: &str, args: &[i64]) -> RelationRef {
        RelationRef::new(name, args.iter().map(|&v| Arg::Int(v)).collect())
    }

    pub fn parse(text: &str) -> Result<RelationRef, String> {
        let t = text.trim();
        let open = t.find('(').ok_or_else(|| alloc::format!("missing `(` in `{}`", t))?;
        if !t.ends_with(')') {
            return Err(alloc::format!("missing `)` in `{}`", t));
        }
        let name = &t[..open];
        let inner = &t[open + 1..t.len() - 1];
        let mut args = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (k, c) in inner.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    args.push(Arg::parse(&inner[start..k])?);
                    start = k + 1;
                }
                _ => {}
            }
        }
        if !inner.trim().is_empty() {
            args.push(Arg::parse(&inner[start..])?);
        }
        Ok(RelationRef { name: name.to_string(), args })
    }
}

impl fmt::Display for RelationRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.name)?;
        for (k, a) in self.args.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", a)?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub lhs: Word,
    pub rhs: Word,
    /// Derived relations need a certificate (or a π check) before use.
    pub derived: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresentationError {
    UnknownRelation(String),
    BadArguments { relation: String, reason: String },
    Word(WordError),
    /// A derived relation whose certificate could not be produced.
    Underivable { relation: String, reason: String },
}

impl fmt::Display for PresentationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentationError::UnknownRelation(r) => write!(f, "unknown relation `{}`", r),
            PresentationError::BadArguments { relation, reason } => {
                write!(f, "bad arguments for `{}`: {}", relation, reason)
            }
            PresentationError::Word(e) => write!(f, "{}", e),
            PresentationError::Underivable { relation, reason } => {
                write!(f, "no derivation for `{}`: {}", relation, reason)
            }
        }
    }
}

impl From<WordError> for PresentationError {
    fn from(e: WordError) -> Self {
        PresentationError::Word(e)
    }
}

pub fn bad_args(r: &RelationRef, reason: &str) -> PresentationError {
    PresentationError::BadArguments { relation: r.to_string(), reason: reason.to_string() }
}

/// A group presentation: named relation families over one alphabet.
pub trait Presentation {
    fn alphabet(&self) -> Alphabet;
    fn instantiate(&self, r: &RelationRef) -> Result<RelationInstance, PresentationError>;
    /// Certificate of a derived relation: a script from its left side to its
    /// right side. Base relations have none.
    fn derivation(&self, r: &RelationRef) -> Result<ProofScript, PresentationError> {
        Err(PresentationError::Underivable {
            relation: r.to_string(),
            reason: "not a derived relation".to_string(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Fwd,
    Rev,
}

impl Direction {
    pub fn name(&self) -> &'static str {
        match self {
            Direction::Fwd => "fwd",
            Direction::Rev => "rev",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    Replace,
    Insert { rotation: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RewriteStep {
    pub position: usize,
    pub relation: RelationRef,
    pub direction: Direction,
    pub kind: StepKind,
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            StepKind::Replace => {
                write!(f, "step {} {} {}", self.position, self.relation, self.direction.name())
            }
            StepKind::Insert { rotation } => write!(
                f,
                "insert {} {} {} {}",
                self.position,
                self.relation,
                self.direction.name(),
                rotation
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofScript {
    pub start: Word,
    pub end: Word,
    pub steps: Vec<RewriteStep>,
}

impl ProofScript {
    pub fn alphabet(&self) -> Alphabet {
        self.start.alphabet()
    }

    /// Line-oriented text form.
    pub fn to_text(&self) -> String {
        let mut s = alloc::format!(
            "alphabet: {}\nstart: {}\nend: {}\n",
            self.alphabet(),
            word_text(&self.start),
            word_text(&self.end)
        );
        for st in &self.steps {
            s.push_str(&st.to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<ProofScript, String> {
        let mut alphabet = None;
        let mut start = None;
        let mut end = None;
        let mut steps = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: &str| alloc::format!("line {}: {}", lineno + 1, m);
            if let Some(rest) = line.strip_prefix("alphabet:") {
                alphabet = Some(parse_alphabet(rest).map_err(|e| err(&e))?);
            } else if let Some(rest) = line.strip_prefix("start:") {
                let a = alphabet.ok_or_else(|| err("`alphabet:` must come first"))?;
                start = Some(parse_word_text(a, rest).map_err(|e| err(&e.to_string()))?);
            } else if let Some(rest) = line.strip_prefix("end:") {
                let a = alphabet.ok_or_else(|| err("`alphabet:` must come first"))?;
                end = Some(parse_word_text(a, rest).map_err(|e| err(&e.to_string()))?);
            } else {
                steps.push(parse_step(line).map_err(|e| err(&e))?);
            }
        }
        Ok(ProofScript {
            start: start.ok_or("missing `start:`")?,
            end: end.ok_or("missing `end:`")?,
            steps,
        })
    }
}

pub fn parse_alphabet(text: &str) -> Result<Alphabet, String> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    let num = |s: &str| s.parse::<u8>().map_err(|_| alloc::format!("bad size `{}`", s));
    match parts.as_slice() {
        ["braid", k] => Ok(Alphabet::Braid { strands: num(k)? }),
        ["artin", k] => Ok(Alphabet::Artin { k: num(k)? }),
        ["steinberg", n] => Ok(Alphabet::Steinberg { rank: num(n)? }),
        _ => Err(alloc::format!("bad alphabet `{}`", text.trim())),
    }
}

fn parse_step(line: &str) -> Result<RewriteStep, String> {
    // The relation reference may not contain spaces, so plain splitting works.
    let parts: Vec<&str> = line.split_whitespace().collect();
    let dir = |s: &str| match s {
        "fwd" => Ok(Direction::Fwd),
        "rev" => Ok(Direction::Rev),
        _ => Err(alloc::format!("bad direction `{}`", s)),
    };
    let pos = |s: &str| s.parse::<usize>().map_err(|_| alloc::format!("bad position `{}`", s));
    match parts.as_slice() {
        ["step", p, r, d] => Ok(RewriteStep {
            position: pos(p)?,
            relation: RelationRef::parse(r)?,
            direction: dir(d)?,
            kind: StepKind::Replace,
        }),
        ["insert", p, r, d, rot] => Ok(RewriteStep {
            position: pos(p)?,
            relation: RelationRef::parse(r)?,
            direction: dir(d)?,
            kind: StepKind::Insert { rotation: pos(rot)? },
        }),
        _ => Err(alloc::format!("cannot parse step `{}`", line)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepError {
    Relation(PresentationError),
    PositionMismatch { position: usize, expected: String, found: String },
    BadRotation { rotation: usize, relator_len: usize },
}

impl fmt::Display for StepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepError::Relation(e) => write!(f, "{}", e),
            StepError::PositionMismatch { position, expected, found } => write!(
                f,
                "position {}: expected `{}`, found `{}`",
                position, expected, found
            ),
            StepError::BadRotation { rotation, relator_len } => {
                write!(f, "rotation {} out of range for relator of length {}", rotation, relator_len)
            }
        }
    }
}

/// Relator R·L^{-1} (fwd) or L·R^{-1} (rev), freely reduced.
pub fn relator(inst: &RelationInstance, dir: Direction) -> Vec<Unit> {
    let (a, b) = match dir {
        Direction::Fwd => (&inst.rhs, &inst.lhs),
        Direction::Rev => (&inst.lhs, &inst.rhs),
    };
    let mut u = a.units();
    u.extend(invert_units(&b.units()));
    reduce_units(&u)
}

fn rotate(u: &[Unit], r: usize) -> Vec<Unit> {
    let mut v = u[r..].to_vec();
    v.extend_from_slice(&u[..r]);
    v
}

fn units_text(alphabet: Alphabet, u: &[Unit]) -> String {
    word_text(&Word::from_units(alphabet, u))
}

/// Apply one step to a unit sequence, given the instantiated relation.
pub fn apply_step_units(
    alphabet: Alphabet,
    w: &[Unit],
    step: &RewriteStep,
    inst: &RelationInstance,
) -> Result<Vec<Unit>, StepError> {
    match step.kind {
        StepKind::Replace => {
            let (src, dst) = match step.direction {
                Direction::Fwd => (inst.lhs.units(), inst.rhs.units()),
                Direction::Rev => (inst.rhs.units(), inst.lhs.units()),
            };
            let p = step.position;
            let found_end = (p + src.len()).min(w.len());
            if p > w.len() || w[p..found_end] != src[..] {
                let found = if p <= w.len() { &w[p..found_end] } else { &[][..] };
                return Err(StepError::PositionMismatch {
                    position: p,
                    expected: units_text(alphabet, &src),
                    found: units_text(alphabet, found),
                });
            }
            let mut out = w[..p].to_vec();
            out.extend_from_slice(&dst);
            out.extend_from_slice(&w[p + src.len()..]);
            Ok(reduce_units(&out))
        }
        StepKind::Insert { rotation } => {
            let rho = relator(inst, step.direction);
            if (rho.is_empty() && rotation != 0) || (!rho.is_empty() && rotation >= rho.len()) {
                return Err(StepError::BadRotation { rotation, relator_len: rho.len() });
            }
            let p = step.position;
            if p > w.len() {
                return Err(StepError::PositionMismatch {
                    position: p,
                    expected: "a position inside the word".to_string(),
                    found: alloc::format!("word of length {}", w.len()),
                });
            }
            let mut out = w[..p].to_vec();
            if !rho.is_empty() {
                out.extend(rotate(&rho, rotation));
            }
            out.extend_from_slice(&w[p..]);
            Ok(reduce_units(&out))
        }
    }
}

/// Apply one step to a word.
pub fn apply_step<P: Presentation + ?Sized>(
    pres: &P,
    w: &Word,
    step: &RewriteStep,
) -> Result<Word, StepError> {
    let inst = pres.instantiate(&step.relation).map_err(StepError::Relation)?;
    let out = apply_step_units(w.alphabet(), &w.units(), step, &inst)?;
    Ok(Word::from_units(w.alphabet(), &out))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub pass: bool,
    pub failing_step: Option<usize>,
    pub error: Option<String>,
    pub final_word: Word,
    /// Weakest tier among the derived relations used (certified if none).
    pub tier: Tier,
    /// Per-step π preservation, when an oracle was attached.
    pub pi_preserved: Option<Vec<bool>>,
    pub steps_replayed: usize,
}

/// Image map used as the π oracle (π for Steinberg words, f̄ for braids).
pub type Oracle<'a> = &'a dyn Fn(&Word) -> ZMatrix;

/// Replays scripts, admitting derived relations either by replaying their
/// certificates (`Tier::Certified`) or by comparing oracle images
/// (`Tier::PiVerified`). Admissions are cached by relation text.
pub struct Checker<'a, P: Presentation + ?Sized> {
    pres: &'a P,
    admit: Tier,
    oracle: Option<Oracle<'a>>,
    per_step_oracle: bool,
    admitted: BTreeMap<String, Result<Tier, String>>,
    in_progress: Vec<String>,
}

impl<'a, P: Presentation + ?Sized> Checker<'a, P> {
    pub fn new(pres: &'a P, admit: Tier) -> Self {
        Checker {
            pres,
            admit,
            oracle: None,
            per_step_oracle: false,
            admitted: BTreeMap::new(),
            in_progress: Vec::new(),
        }
    }

    /// Attach an oracle. With `per_step`, every step of top-level scripts is
    /// checked for image preservation.
    pub fn with_oracle(mut self, oracle: Oracle<'a>, per_step: bool) -> Self {
        self.oracle = Some(oracle);
        self.per_step_oracle = per_step;
        self
    }

    /// Number of derived relation instances admitted so far.
    pub fn admitted_count(&self) -> usize {
        self.admitted.values().filter(|r| r.is_ok()).count()
    }

    fn admit_derived(&mut self, r: &RelationRef, inst: &RelationInstance) -> Result<Tier, String> {
        let key = r.to_string();
        if let Some(res) = self.admitted.get(&key) {
            return res.clone();
        }
        if self.in_progress.contains(&key) {
            return Err(alloc::format!("circular derivation of `{}`", key));
        }
        if let Some(o) = self.oracle {
            if o(&inst.lhs) != o(&inst.rhs) {
                let res = Err(alloc::format!("`{}` sides have different images", key));
                self.admitted.insert(key, res.clone());
                return res;
            }
        }
        let res = match self.admit {
            Tier::PiVerified | Tier::Exact => {
                if self.oracle.is_some() {
                    Ok(Tier::PiVerified)
                } else {
                    Err(alloc::format!("`{}` needs an oracle at tier pi-verified", key))
                }
            }
            Tier::Certified => {
                self.in_progress.push(key.clone());
                let res = match self.pres.derivation(r) {
                    Err(e) => Err(e.to_string()),
                    Ok(script) => {
                        if script.start != inst.lhs || script.end != inst.rhs {
                            Err(alloc::format!("certificate of `{}` proves a different identity", key))
                        } else {
                            let rep = self.replay(&script, false);
                            if rep.pass {
                                Ok(rep.tier)
                            } else {
                                Err(alloc::format!(
                                    "certificate of `{}` fails at step {:?}: {}",
                                    key,
                                    rep.failing_step,
                                    rep.error.unwrap_or_default()
                                ))
                            }
                        }
                    }
                };
                self.in_progress.pop();
                res
            }
        };
        self.admitted.insert(key, res.clone());
        res
    }

    pub fn check(&mut self, script: &ProofScript) -> VerificationReport {
        let per_step = self.per_step_oracle;
        self.replay(script, per_step)
    }

    fn replay(&mut self, script: &ProofScript, per_step: bool) -> VerificationReport {
        let alphabet = script.alphabet();
        let mut w = script.start.units();
        let mut tier = Tier::Certified;
        let mut pi_flags = if per_step && self.oracle.is_some() { Some(Vec::new()) } else { None };
        let mut prev_img = match (&pi_flags, self.oracle) {
            (Some(_), Some(o)) => Some(o(&script.start)),
            _ => None,
        };
        let fail = |k: usize, msg: String, w: &[Unit], tier: Tier, flags: Option<Vec<bool>>| {
            VerificationReport {
                pass: false,
                failing_step: Some(k),
                error: Some(msg),
                final_word: Word::from_units(alphabet, w),
                tier,
                pi_preserved: flags,
                steps_replayed: k,
            }
        };
        if script.end.alphabet() != alphabet {
            return fail(0, "start and end alphabets differ".to_string(), &w, tier, pi_flags);
        }
        for (k, step) in script.steps.iter().enumerate() {
            let inst = match self.pres.instantiate(&step.relation) {
                Ok(i) => i,
                Err(e) => return fail(k, e.to_string(), &w, tier, pi_flags),
            };
            if inst.derived {
                match self.admit_derived(&step.relation, &inst) {
                    Ok(t) => tier = tier.min(t),
                    Err(e) => return fail(k, e, &w, tier, pi_flags),
                }
            }
            match apply_step_units(alphabet, &w, step, &inst) {
                Ok(next) => w = next,
                Err(e) => return fail(k, e.to_string(), &w, tier, pi_flags),
            }
            if let (Some(flags), Some(o)) = (pi_flags.as_mut(), self.oracle) {
                let img = o(&Word::from_units(alphabet, &w));
                flags.push(Some(&img) == prev_img.as_ref());
                prev_img = Some(img);
            }
        }
        let final_word = Word::from_units(alphabet, &w);
        let pi_ok = pi_flags.as_ref().map_or(true, |f| f.iter().all(|&b| b));
        let reached = final_word == script.end;
        VerificationReport {
            pass: reached && pi_ok,
            failing_step: None,
            error: if !reached {
                Some(alloc::format!("replay ends at `{}`, not the declared end", word_text(&final_word)))
            } else if !pi_ok {
                Some("a step changed the image".to_string())
            } else {
                None
            },
            final_word,
            tier,
            pi_preserved: pi_flags,
            steps_replayed: script.steps.len(),
        }
    }
}

/// Check a script with a fresh checker.
pub fn check_script<P: Presentation + ?Sized>(
    pres: &P,
    script: &ProofScript,
    admit: Tier,
    oracle: Option<Oracle<'_>>,
) -> VerificationReport {
    let mut c = Checker::new(pres, admit);
    if let Some(o) = oracle {
        c = c.with_oracle(o, true);
    }
    c.check(script)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuildError {
    Relation(PresentationError),
    /// No rotation of the candidate relators turns the word into the target.
    NoInsertion { from: String, to: String, relations: String },
    Budget,
    Stuck(String),
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::Relation(e) => write!(f, "{}", e),
            BuildError::NoInsertion { from, to, relations } => {
                write!(f, "no single insertion of {} rewrites `{}` into `{}`", relations, from, to)
            }
            BuildError::Budget => f.write_str("step budget exhausted"),
            BuildError::Stuck(m) => write!(f, "{}", m),
        }
    }
}

impl From<PresentationError> for BuildError {
    fn from(e: PresentationError) -> Self {
        BuildError::Relation(e)
    }
}

/// Accumulates steps while a word is rewritten. Callers state the target
/// word of each move and the relations that justify it; the builder finds
/// the insertion position, direction and rotation.
pub struct ProofBuilder<'a, P: Presentation + ?Sized> {
    pres: &'a P,
    start: Vec<Unit>,
    cur: Vec<Unit>,
    steps: Vec<RewriteStep>,
    relators: BTreeMap<RelationRef, (Vec<Unit>, Vec<Unit>)>,
    pub budget: usize,
    /// Shortest word seen so far and the number of steps that reached it.
    best: (Vec<Unit>, usize),
}

impl<'a, P: Presentation + ?Sized> ProofBuilder<'a, P> {
    pub fn new(pres: &'a P, start: Vec<Unit>) -> Self {
        let start = reduce_units(&start);
        ProofBuilder {
            pres,
            cur: start.clone(),
            best: (start.clone(), 0),
            start,
            steps: Vec::new(),
            relators: BTreeMap::new(),
            budget: usize::MAX,
        }
    }

    pub fn current(&self) -> &[Unit] {
        &self.cur
    }

    pub fn step_count(&self) -> usize {
        self.steps.len()
    }

    pub fn steps(&self) -> &[RewriteStep] {
        &self.steps
    }

    fn record(&mut self) {
        if self.cur.len() <= self.best.0.len() {
            self.best = (self.cur.clone(), self.steps.len());
        }
    }

    /// Shortest word reached so far.
    pub fn best(&self) -> &[Unit] {
        &self.best.0
    }

    fn relators_of(&mut self, r: &RelationRef) -> Result<(Vec<Unit>, Vec<Unit>), BuildError> {
        if let Some(v) = self.relators.get(r) {
            return Ok(v.clone());
        }
        let inst = self.pres.instantiate(r)?;
        let v = (relator(&inst, Direction::Fwd), relator(&inst, Direction::Rev));
        self.relators.insert(r.clone(), v.clone());
        Ok(v)
    }

    /// Record a literal replacement step (checked).
    pub fn replace(&mut self, position: usize, r: RelationRef, dir: Direction) -> Result<(), BuildError> {
        if self.steps.len() >= self.budget {
            return Err(BuildError::Budget);
        }
        let inst = self.pres.instantiate(&r)?;
        let step = RewriteStep { position, relation: r, direction: dir, kind: StepKind::Replace };
        let next = apply_step_units(self.pres.alphabet(), &self.cur, &step, &inst)
            .map_err(|e| BuildError::Stuck(e.to_string()))?;
        self.cur = next;
        self.steps.push(step);
        self.record();
        Ok(())
    }

    /// Rewrite the current word into `target` with one insertion of a
    /// rotation of a relator of one of `rels`.
    pub fn rewrite_to(&mut self, target: &[Unit], rels: &[RelationRef]) -> Result<(), BuildError> {
        let target = reduce_units(target);
        if target == self.cur {
            return Ok(());
        }
        if self.steps.len() >= self.budget {
            return Err(BuildError::Budget);
        }
        let cur = &self.cur;
        let mut cp = 0;
        while cp < cur.len() && cp < target.len() && cur[cp] == target[cp] {
            cp += 1;
        }
        let mut cs = 0;
        while cs < cur.len() - cp
            && cs < target.len() - cp
            && cur[cur.len() - 1 - cs] == target[target.len() - 1 - cs]
        {
            cs += 1;
        }
        let m1 = &cur[cp..cur.len() - cs];
        let m2 = &target[cp..target.len() - cs];
        let mut x = invert_units(m1);
        x.extend_from_slice(m2);
        let x = reduce_units(&x);
        let pos = cur.len() - cs;
        for r in rels {
            let (f, b) = self.relators_of(r)?;
            for (dir, rho) in [(Direction::Fwd, &f), (Direction::Rev, &b)] {
                if rho.len() < x.len() {
                    continue;
                }
                for rot in 0..rho.len().max(1) {
                    let cand = if rho.is_empty() { Vec::new() } else { reduce_units(&rotate(rho, rot)) };
                    if cand == x {
                        self.steps.push(RewriteStep {
                            position: pos,
                            relation: r.clone(),
                            direction: dir,
                            kind: StepKind::Insert { rotation: rot },
                        });
                        self.cur = target;
                        self.record();
                        return Ok(());
                    }
                }
            }
        }
        // Fallback: try every position with every rotation.
        for r in rels {
            let (f, b) = self.relators_of(r)?;
            for (dir, rho) in [(Direction::Fwd, &f), (Direction::Rev, &b)] {
                for p in 0..=self.cur.len() {
                    for rot in 0..rho.len() {
                        let mut out = self.cur[..p].to_vec();
                        out.extend(rotate(rho, rot));
                        out.extend_from_slice(&self.cur[p..]);
                        if reduce_units(&out) == target {
                            self.steps.push(RewriteStep {
                                position: p,
                                relation: r.clone(),
                                direction: dir,
                                kind: StepKind::Insert { rotation: rot },
                            });
                            self.cur = target;
                            self.record();
                            return Ok(());
                        }
                    }
                }
            }
        }
        let a = self.pres.alphabet();
        Err(BuildError::NoInsertion {
            from: units_text(a, &self.cur),
            to: units_text(a, &target),
            relations: rels.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", "),
        })
    }

    /// Append the steps of a script proving start = current word.
    pub fn append(&mut self, script: &ProofScript) -> Result<(), BuildError> {
        if script.start.units() != self.cur {
            return Err(BuildError::Stuck("appended script starts elsewhere".to_string()));
        }
        self.steps.extend(script.steps.iter().cloned());
        self.cur = script.end.units();
        self.record();
        Ok(())
    }

    pub fn finish(self) -> ProofScript {
        let a = self.pres.alphabet();
        ProofScript {
            start: Word::from_units(a, &self.start),
            end: Word::from_units(a, &self.cur),
            steps: self.steps,
        }
    }

    /// Finish at the shortest word reached, dropping later steps.
    pub fn finish_best(self) -> ProofScript {
        let a = self.pres.alphabet();
        let (end, k) = self.best;
        let mut steps = self.steps;
        steps.truncate(k);
        ProofScript { start: Word::from_units(a, &self.start), end: Word::from_units(a, &end), steps }
    }
}
