//! The `weyl-push` normalizer and central charge extraction.
//!
//! A word is rewritten so that every z'_i^{±1} becomes z_i^{∓1} w_i^{±1}
//! z_i^{∓1}, the blocks w_i are pushed to the left end and sorted, the
//! remaining letters cancel across commuting neighbours, and blocks w_i^4
//! are traded for w_1^4. A word of π-image I that ends as w_1^{4k} has
//! charge k, certified by the recorded script.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::tactics::{positive_functional, wconj_ref, Token, TokenProof};
use super::{pi, root_of_unit, roots_commute, unit_of, w_units, StPresentation};
use crate::presentation::{check_script, BuildError, Presentation, ProofScript, RelationRef};
use crate::report::{Item, Report, Tier};
use crate::root::Root;
use crate::word::{reduce_units, Alphabet, GenSymbol, Unit, Word};
use crate::zmatrix::eval_word;

const PASSES: usize = 6;

#[derive(Clone, Debug)]
pub struct Normalization {
    /// Shortest word reached; the script ends there.
    pub word: Word,
    pub script: ProofScript,
    /// The step budget ran out before the normalizer settled.
    pub exhausted: bool,
    /// Why the normalizer stopped early, if it did.
    pub stopped: Option<String>,
}

/// Run `weyl-push` on `w` with at most `budget` steps.
pub fn weyl_push(pres: &StPresentation, w: &Word, budget: usize) -> Result<Normalization, BuildError> {
    let toks = w.units().into_iter().map(Token::L).collect();
    let mut tp = TokenProof::new(pres, toks);
    tp.b.budget = budget;
    let (exhausted, stopped) = match run(&mut tp) {
        Ok(()) => (false, None),
        Err(BuildError::Budget) => (true, None),
        // A move that cannot be written as one insertion ends the run; the
        // best word so far stands, and an empty one is a complete result.
        Err(e @ (BuildError::NoInsertion { .. } | BuildError::Stuck(_))) => (false, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let script = tp.b.finish_best();
    Ok(Normalization { word: script.end.clone(), script, exhausted, stopped })
}

fn run(tp: &mut TokenProof<'_>) -> Result<(), BuildError> {
    for _ in 0..PASSES {
        let before = tp.toks.clone();
        split_primes(tp)?;
        push_blocks(tp)?;
        cancel_letters(tp)?;
        collect_tail(tp)?;
        fold_fourth_powers(tp)?;
        if tp.toks == before || tp.b.current().is_empty() {
            break;
        }
    }
    Ok(())
}

fn is_prime_long(r: &Root) -> Option<u8> {
    match *r {
        Root::Long { i, s } if s < 0 => Some(i),
        _ => None,
    }
}

/// z'_i^{-1} = z_i^{-1} w_i z_i^{-1} and z'_i = z_i w_i^{-1} z_i, as tokens.
fn split_primes(tp: &mut TokenProof<'_>) -> Result<(), BuildError> {
    let n = tp.n;
    let mut out = Vec::new();
    for &t in &tp.toks {
        match t {
            Token::L(u) => match is_prime_long(&root_of_unit(u, n)) {
                Some(i) => {
                    let z = unit_of(&Root::long(i, 1), u.is_neg(), n);
                    let s = if u.is_neg() { 1 } else { -1 };
                    out.extend([Token::L(z), Token::W(Root::long(i, 1), s), Token::L(z)]);
                }
                None => out.push(t),
            },
            _ => out.push(t),
        }
    }
    tp.set_tokens(out)?;
    tp.cancel_all();
    Ok(())
}

fn block_index(t: &Token) -> Option<(u8, i8)> {
    match *t {
        Token::W(Root::Long { i, s: 1 }, e) => Some((i, e)),
        _ => None,
    }
}

/// Move every block left past letters (g w = w (w^{-1} g w)) and sort
/// blocks by index.
fn push_blocks(tp: &mut TokenProof<'_>) -> Result<(), BuildError> {
    let n = tp.n;
    loop {
        let mut moved = false;
        for k in 0..tp.toks.len().saturating_sub(1) {
            match (tp.toks[k], tp.toks[k + 1]) {
                (Token::L(g), Token::W(r, s)) => {
                    let rel = wconj_ref(&r, -(s as i64), g, n);
                    let h = tp.pres.instantiate(&rel)?.rhs.units()[0];
                    tp.replace(k, k + 2, alloc::vec![Token::W(r, s), Token::L(h)], &rel)?;
                    moved = true;
                }
                (a, b) => {
                    let (Some((i, s)), Some((j, t))) = (block_index(&a), block_index(&b)) else {
                        continue;
                    };
                    if i <= j {
                        continue;
                    }
                    let rel = RelationRef::ints("wcomm", &[i as i64, j as i64, s as i64, t as i64]);
                    tp.replace(k, k + 2, alloc::vec![b, a], &rel)?;
                    moved = true;
                }
            }
            if moved {
                tp.cancel_all();
                break;
            }
        }
        if !moved {
            return Ok(());
        }
    }
}

/// Cancel letter pairs u … u^{-1} whose separating letters commute with one
/// of the two, moving it across with commutation steps.
fn cancel_letters(tp: &mut TokenProof<'_>) -> Result<(), BuildError> {
    let n = tp.n;
    'outer: loop {
        let start = tp.toks.iter().rposition(|t| matches!(t, Token::W(..))).map_or(0, |p| p + 1);
        let v: Vec<Unit> = tp.toks[start..]
            .iter()
            .map(|t| match t {
                Token::L(u) => *u,
                _ => unreachable!("blocks were pushed left"),
            })
            .collect();
        let roots: Vec<Root> = v.iter().map(|&u| root_of_unit(u, n)).collect();
        for p in 0..v.len() {
            // Carry v[p] to the right.
            for q in p + 1..v.len() {
                if v[q] == v[p].inv() {
                    for k in p..q - 1 {
                        tp.swap_letters(start + k)?;
                    }
                    tp.cancel_all();
                    continue 'outer;
                }
                if v[q].gen() == v[p].gen() || !roots_commute(&roots[p], &roots[q]) {
                    break;
                }
            }
            // Carry v[p] to the left.
            for q in (0..p).rev() {
                if v[q] == v[p].inv() {
                    for k in (q + 1..p).rev() {
                        tp.swap_letters(start + k)?;
                    }
                    tp.cancel_all();
                    continue 'outer;
                }
                if v[q].gen() == v[p].gen() || !roots_commute(&roots[p], &roots[q]) {
                    break;
                }
            }
        }
        return Ok(());
    }
}

/// Collect the letters after the last block when their roots lie in an
/// open half space; a π-trivial tail then collects to nothing.
fn collect_tail(tp: &mut TokenProof<'_>) -> Result<(), BuildError> {
    let n = tp.n;
    let start = tp.toks.iter().rposition(|t| matches!(t, Token::W(..))).map_or(0, |p| p + 1);
    let mut roots: Vec<Root> = Vec::new();
    for t in &tp.toks[start..] {
        if let Token::L(u) = t {
            let r = root_of_unit(*u, n);
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
    }
    if roots.len() < 2 {
        return Ok(());
    }
    let Some(v) = positive_functional(&roots, n) else {
        return Ok(());
    };
    let key = move |r: &Root| {
        let c = r.coords(n);
        Some((0..n as usize).map(|k| c[k] * v[k]).sum::<i64>())
    };
    let end = tp.toks.len();
    tp.collect(start, end, &key)?;
    Ok(())
}

/// Trade w_i^{±4} for w_1^{±4}, then re-sort.
fn fold_fourth_powers(tp: &mut TokenProof<'_>) -> Result<(), BuildError> {
    loop {
        let mut hit = None;
        let mut k = 0;
        while k < tp.toks.len() {
            if let Some((i, s)) = block_index(&tp.toks[k]) {
                let run = tp.toks[k..].iter().take_while(|t| **t == tp.toks[k]).count();
                if i != 1 && run >= 4 {
                    hit = Some((k, i, s));
                    break;
                }
                k += run;
            } else {
                k += 1;
            }
        }
        let Some((k, i, s)) = hit else {
            return Ok(());
        };
        let rel = RelationRef::ints("w4eq", &[i as i64, 1]);
        tp.replace(k, k + 4, alloc::vec![Token::W(Root::long(1, 1), s); 4], &rel)?;
        push_blocks(tp)?;
    }
}

fn w1_power(n: u8, k: i64) -> Vec<Unit> {
    let mut u = Vec::new();
    for _ in 0..4 * k.unsigned_abs() {
        u.extend(w_units(&Root::long(1, 1), k.signum(), n));
    }
    reduce_units(&u)
}

/// A certified charge: `script` rewrites the word into w_1^{4k}.
#[derive(Clone, Debug)]
pub struct Charge {
    pub k: i64,
    pub script: ProofScript,
}

#[derive(Clone, Debug)]
pub enum ChargeError {
    /// π(w) ≠ I.
    NotInKernel,
    /// π(w) = I, but no certificate was found; only the π tier holds.
    Uncertified { reached: Word, exhausted: bool },
    Build(BuildError),
}

impl fmt::Display for ChargeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChargeError::NotInKernel => f.write_str("word is not in the kernel of π"),
            ChargeError::Uncertified { reached, exhausted } => write!(
                f,
                "π-image is the identity but normalization stopped at a word of length {}{}",
                reached.len(),
                if *exhausted { " (budget exhausted)" } else { "" }
            ),
            ChargeError::Build(e) => write!(f, "{}", e),
        }
    }
}

/// The k with w = w_1^{4k}, with a certificate; never guessed.
pub fn charge_extract(pres: &StPresentation, w: &Word, budget: usize) -> Result<Charge, ChargeError> {
    let n = pres.rank();
    if !eval_word(w).is_identity() {
        return Err(ChargeError::NotInKernel);
    }
    let norm = weyl_push(pres, w, budget).map_err(ChargeError::Build)?;
    let end = norm.word.units();
    // The end is a power of w_1 of length 12|k|.
    if end.len() % 12 == 0 {
        let k = (end.len() / 12) as i64;
        for k in [k, -k] {
            if w1_power(n, k) == end {
                return Ok(Charge { k, script: norm.script });
            }
        }
    }
    Err(ChargeError::Uncertified { reached: norm.word, exhausted: norm.exhausted })
}

/// Certificate for a = c: a c^{-1} normalizes to the empty word.
pub fn certify_equal(pres: &StPresentation, a: &Word, c: &Word, budget: usize) -> Result<ProofScript, ChargeError> {
    let q = a.mul(&c.invert()).map_err(|e| ChargeError::Build(BuildError::Stuck(e.to_string())))?;
    let ch = charge_extract(pres, &q, budget)?;
    if ch.k != 0 {
        return Err(ChargeError::Uncertified { reached: ch.script.end, exhausted: false });
    }
    Ok(ch.script)
}

fn wi4(n: u8, i: u8) -> Word {
    let mut u = Vec::new();
    for _ in 0..4 {
        u.extend(w_units(&Root::long(i, 1), 1, n));
    }
    Word::from_units(Alphabet::Steinberg { rank: n }, &u)
}

/// w_i^4 is central and equals w_1^4: π level always, certificates when
/// `certified` is set.
pub fn central_w4_suite(n: u8, certified: bool, budget: usize) -> Report {
    let pres = StPresentation::new(n);
    let a = pres.alphabet();
    let mut rep = Report::new(alloc::format!("central w^4 n={}", n));
    let oracle = |w: &Word| pi(w);
    let check = |s: &ProofScript| check_script(&pres, s, Tier::Certified, Some(&oracle));
    for i in 1..=n {
        let p = wi4(n, i);
        rep.push(Item::new(alloc::format!("π(w{i}^4) = I"), pi(&p).is_identity(), Tier::Exact));
        for r in Root::all(n) {
            let g = Word::letter(a, r.generator(), 1).unwrap();
            let c = Word::commutator(&p, &g).unwrap();
            let name = alloc::format!("[w{i}^4, {}] = 1", r.generator());
            if !certified {
                rep.push(Item::new(name, pi(&c).is_identity(), Tier::PiVerified));
                continue;
            }
            rep.push(cert_item(name, charge_extract(&pres, &c, budget), 0, &check));
        }
        if i != 1 {
            let q = p.mul(&wi4(n, 1).invert()).unwrap();
            let name = alloc::format!("w{i}^4 w1^-4 = 1");
            if certified {
                rep.push(cert_item(name, charge_extract(&pres, &q, budget), 0, &check));
            } else {
                rep.push(Item::new(name, pi(&q).is_identity(), Tier::PiVerified));
            }
        }
    }
    rep
}

/// Report item for a charge claim whose certificate is replayed.
pub(crate) fn cert_item(
    name: String,
    res: Result<Charge, ChargeError>,
    expect: i64,
    check: &dyn Fn(&ProofScript) -> crate::presentation::VerificationReport,
) -> Item {
    match res {
        Ok(ch) => {
            let rep = check(&ch.script);
            let ok = rep.pass && ch.k == expect;
            Item::new(name, ok, if rep.pass { rep.tier } else { Tier::PiVerified }).with_detail(alloc::format!(
                "charge {}, {} steps{}",
                ch.k,
                ch.script.steps.len(),
                rep.error.map(|e| alloc::format!(", replay: {}", e)).unwrap_or_default()
            ))
        }
        Err(e) => Item::new(name, false, Tier::PiVerified).with_detail(e.to_string()),
    }
}

/// w_γ y w_γ^{-1} style example used by docs and tests.
pub fn example_conjugate(n: u8) -> Word {
    let a = Alphabet::Steinberg { rank: n };
    let w1 = super::w(&Root::long(1, 1), n);
    Word::conjugate(&Word::letter(a, GenSymbol::y(1, 2), 1).unwrap(), &w1).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugate_normalizes_to_x21() {
        let p = StPresentation::new(2);
        let w = example_conjugate(2);
        let norm = weyl_push(&p, &w, 10_000).unwrap();
        assert_eq!(norm.word, Word::parse(p.alphabet(), "x(2,1)").unwrap());
        let oracle = |w: &Word| pi(w);
        let rep = check_script(&p, &norm.script, Tier::Certified, Some(&oracle));
        assert!(rep.pass, "{:?}", rep.error);
    }

    #[test]
    fn single_letter_is_fixed() {
        let p = StPresentation::new(2);
        let w = Word::parse(p.alphabet(), "x(1,2)").unwrap();
        let norm = weyl_push(&p, &w, 100).unwrap();
        assert_eq!(norm.word, w);
        assert!(norm.script.steps.is_empty());
    }

    #[test]
    fn charges() {
        let p = StPresentation::new(2);
        let e = Word::empty(p.alphabet());
        assert_eq!(charge_extract(&p, &e, 10).unwrap().k, 0);
        let w = wi4(2, 2);
        let ch = charge_extract(&p, &w, 10_000).unwrap();
        assert_eq!(ch.k, 1);
        let x = Word::parse(p.alphabet(), "x(1,2)").unwrap();
        assert!(matches!(charge_extract(&p, &x, 10), Err(ChargeError::NotInKernel)));
    }

    #[test]
    fn central_suite_n2() {
        let rep = central_w4_suite(2, true, 100_000);
        assert!(rep.all_pass(), "{}", rep);
    }
}
