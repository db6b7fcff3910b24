//! Certificate generation for the derived families.
//!
//! Proofs are built over token lists: a token is a unit letter or a block
//! w_γ^{±1}. The literal word of a token list is the free reduction of its
//! expansion. Token edits that leave the literal unchanged cost no step;
//! every other edit is one relator insertion found by the proof builder.

use alloc::string::ToString;
use alloc::vec::Vec;

use super::{root_of_unit, roots_commute, unit_of, w_units, StPresentation};
use crate::presentation::{Arg, BuildError, Presentation, ProofBuilder, ProofScript, RelationRef};
use crate::root::Root;
use crate::word::{invert_units, reduce_units, Unit};

/// A unit letter or a Weyl block w_γ^s.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Token {
    L(Unit),
    W(Root, i8),
}

impl Token {
    fn inverse_of(&self, other: &Token) -> bool {
        match (self, other) {
            (Token::L(a), Token::L(b)) => *b == a.inv(),
            (Token::W(r, s), Token::W(q, t)) => r == q && *s == -*t,
            _ => false,
        }
    }
}

pub(crate) fn expand(toks: &[Token], n: u8) -> Vec<Unit> {
    let mut out = Vec::new();
    for t in toks {
        match t {
            Token::L(u) => out.push(*u),
            Token::W(r, s) => out.extend(w_units(r, *s as i64, n)),
        }
    }
    out
}

pub(crate) fn literal(toks: &[Token], n: u8) -> Vec<Unit> {
    reduce_units(&expand(toks, n))
}

/// Collection order inside `swap`: by height in the pair basis, then
/// favouring the second root.
pub(crate) fn pair_key(i: i64, j: i64) -> i64 {
    (i + j) * 3 + (j > i) as i64
}

/// Coordinates of ρ in the basis (a, b), if it lies in their span.
fn coords_in(a: &Root, b: &Root, rho: &Root, n: u8) -> Option<(i64, i64)> {
    let (va, vb, vr) = (a.coords(n), b.coords(n), rho.coords(n));
    for i in -4..=4i64 {
        for j in -4..=4i64 {
            if (0..n as usize).all(|k| i * va[k] + j * vb[k] == vr[k]) {
                return Some((i, j));
            }
        }
    }
    None
}

pub(crate) fn letter_arg(u: Unit, n: u8) -> Arg {
    Arg::Letter(root_of_unit(u, n).generator(), u.sign())
}

pub(crate) fn commute_ref(a: &Root, b: &Root) -> RelationRef {
    RelationRef::new(
        "st-commute",
        alloc::vec![Arg::Letter(a.generator(), 1), Arg::Letter(b.generator(), 1)],
    )
}

pub(crate) fn wconj_ref(gamma: &Root, s: i64, g: Unit, n: u8) -> RelationRef {
    RelationRef::new("wconj", alloc::vec![Arg::Root(*gamma), Arg::Int(s), letter_arg(g, n)])
}

type Key<'k> = &'k dyn Fn(&Root) -> Option<i64>;

const COLLECT_LIMIT: usize = 200_000;

pub(crate) struct TokenProof<'a> {
    pub pres: &'a StPresentation,
    pub n: u8,
    pub b: ProofBuilder<'a, StPresentation>,
    pub toks: Vec<Token>,
}

impl<'a> TokenProof<'a> {
    pub fn new(pres: &'a StPresentation, toks: Vec<Token>) -> Self {
        let n = pres.rank();
        let b = ProofBuilder::new(pres, literal(&toks, n));
        TokenProof { pres, n, b, toks }
    }

    /// Replace the token list by one with the same literal word.
    pub fn set_tokens(&mut self, toks: Vec<Token>) -> Result<(), BuildError> {
        if literal(&toks, self.n) != self.b.current() {
            return Err(BuildError::Stuck("retokenization changes the word".to_string()));
        }
        self.toks = toks;
        Ok(())
    }

    /// Replace `toks[k..l]` by `new`, justified by one relation.
    pub fn replace(&mut self, k: usize, l: usize, new: Vec<Token>, rel: &RelationRef) -> Result<(), BuildError> {
        let mut toks = self.toks[..k].to_vec();
        toks.extend(new);
        toks.extend_from_slice(&self.toks[l..]);
        let target = literal(&toks, self.n);
        self.b.rewrite_to(&target, core::slice::from_ref(rel))?;
        self.toks = toks;
        Ok(())
    }

    /// Cancel adjacent inverse tokens inside `[start, end)`; returns the new end.
    pub fn cancel_range(&mut self, start: usize, mut end: usize) -> usize {
        let mut k = start;
        while k + 1 < end {
            if self.toks[k].inverse_of(&self.toks[k + 1]) {
                self.toks.drain(k..k + 2);
                end -= 2;
                k = if k > start { k - 1 } else { start };
            } else {
                k += 1;
            }
        }
        end
    }

    pub fn cancel_all(&mut self) {
        let len = self.toks.len();
        self.cancel_range(0, len);
    }

    /// Exchange the letters at k, k+1 (l r → C r l); returns |C|.
    pub fn swap_letters(&mut self, k: usize) -> Result<usize, BuildError> {
        let (l, r) = match (self.toks[k], self.toks[k + 1]) {
            (Token::L(a), Token::L(b)) => (a, b),
            _ => return Err(BuildError::Stuck("can only exchange letters".to_string())),
        };
        let n = self.n;
        let (a, b) = (root_of_unit(l, n), root_of_unit(r, n));
        if a == b.neg() {
            return Err(BuildError::Stuck(alloc::format!("no relation between x({}) and x({})", a, b)));
        }
        if roots_commute(&a, &b) {
            if a == b {
                return Ok(0);
            }
            self.replace(k, k + 2, alloc::vec![Token::L(r), Token::L(l)], &commute_ref(&a, &b))?;
            return Ok(0);
        }
        let c = self
            .pres
            .swap_commutator(l, r)
            .ok_or_else(|| BuildError::Stuck("commutator not collectable".to_string()))?;
        let grow = c.len();
        let mut new: Vec<Token> = c.into_iter().map(Token::L).collect();
        new.push(Token::L(r));
        new.push(Token::L(l));
        let rel = RelationRef::new("swap", alloc::vec![letter_arg(l, n), letter_arg(r, n)]);
        self.replace(k, k + 2, new, &rel)?;
        Ok(grow)
    }

    /// Sort the letters in `[start, end)` by decreasing key, cancelling
    /// inverse neighbours; returns the new end.
    pub fn collect(&mut self, start: usize, end: usize, key: Key<'_>) -> Result<usize, BuildError> {
        let n = self.n;
        let mut end = self.cancel_range(start, end);
        for _ in 0..COLLECT_LIMIT {
            let mut found = None;
            for k in start..end.saturating_sub(1) {
                let (l, r) = match (self.toks[k], self.toks[k + 1]) {
                    (Token::L(a), Token::L(b)) => (a, b),
                    _ => return Err(BuildError::Stuck("Weyl block inside a collection range".to_string())),
                };
                let kl = key(&root_of_unit(l, n));
                let kr = key(&root_of_unit(r, n));
                match (kl, kr) {
                    (Some(x), Some(y)) if x < y => {
                        found = Some(k);
                        break;
                    }
                    (Some(_), Some(_)) => {}
                    _ => return Err(BuildError::Stuck("letter outside the collection order".to_string())),
                }
            }
            let k = match found {
                None => return Ok(end),
                Some(k) => k,
            };
            end += self.swap_letters(k)?;
            end = self.cancel_range(start, end);
        }
        Err(BuildError::Stuck("collection did not terminate".to_string()))
    }

    pub fn finish(self) -> ProofScript {
        self.b.finish()
    }
}

/// Certificate of a derived relation.
pub(crate) fn derive(pres: &StPresentation, r: &RelationRef) -> Result<ProofScript, BuildError> {
    let inst = pres.instantiate(r)?;
    let n = pres.rank();
    let script = match r.name.as_str() {
        "swap" => {
            let u = inst.lhs.units();
            derive_swap(pres, u[0], u[1])?
        }
        "wconj" => {
            let gamma = match r.args[0] {
                Arg::Root(g) => g,
                _ => unreachable!("checked at instantiation"),
            };
            let s = r.args[1].int().unwrap();
            // The LHS may be freely reduced, so read g off the argument.
            let g = match r.args[2] {
                Arg::Letter(sym, e) => unit_of(&Root::of_generator(&sym), e < 0, n),
                _ => unreachable!("checked at instantiation"),
            };
            derive_wconj(pres, gamma, s, g)?
        }
        "wcomm" => {
            let a: Vec<i64> = r.args.iter().map(|a| a.int().unwrap()).collect();
            let (i, j) = (a[0] as u8, a[1] as u8);
            let mut toks: Vec<Token> = w_units(&Root::long(i, 1), a[2], n).into_iter().map(Token::L).collect();
            toks.extend(w_units(&Root::long(j, 1), a[3], n).into_iter().map(Token::L));
            let mut tp = TokenProof::new(pres, toks);
            let key = move |r: &Root| Some(if r.max_index() == j { 2 } else { 1 });
            tp.collect(0, 6, &key)?;
            tp.finish()
        }
        "w4eq" => {
            let a: Vec<i64> = r.args.iter().map(|a| a.int().unwrap()).collect();
            derive_w4eq(pres, a[0] as u8, a[1] as u8)?
        }
        other => return Err(BuildError::Stuck(alloc::format!("`{}` has no derivation", other))),
    };
    if script.end != inst.rhs {
        return Err(BuildError::Stuck(alloc::format!(
            "derivation of `{}` ends at `{}`",
            r,
            script.end
        )));
    }
    Ok(script)
}

fn derive_swap(pres: &StPresentation, u: Unit, v: Unit) -> Result<ProofScript, BuildError> {
    let n = pres.rank();
    let (a, b) = (root_of_unit(u, n), root_of_unit(v, n));
    let mut tp = TokenProof::new(pres, alloc::vec![Token::L(u), Token::L(v)]);
    if roots_commute(&a, &b) {
        tp.swap_letters(0)?;
        return Ok(tp.finish());
    }
    let (rel, flipped) = pres
        .commutator_relation(&a, &b)
        .ok_or_else(|| BuildError::Stuck("no defining commutator relation".to_string()))?;
    let base = pres.instantiate(&rel)?;
    // c = [A, B] for the positive letters A = x_a, B = x_b.
    let c = if flipped { invert_units(&base.rhs.units()) } else { base.rhs.units() };
    let (pa, pb) = (unit_of(&a, false, n), unit_of(&b, false, n));
    let ls = |us: &[Unit]| -> Vec<Token> { us.iter().map(|&x| Token::L(x)).collect() };
    let cinv = invert_units(&c);
    match (u.is_neg(), v.is_neg()) {
        (false, false) => {
            let mut new = ls(&c);
            new.extend([Token::L(pb), Token::L(pa)]);
            tp.replace(0, 2, new, &rel)?;
        }
        (true, false) => {
            // A^-1 B = A^-1 c^-1 A B A^-1
            let mut new = alloc::vec![Token::L(pa.inv())];
            new.extend(ls(&cinv));
            new.extend([Token::L(pa), Token::L(pb), Token::L(pa.inv())]);
            tp.replace(0, 2, new, &rel)?;
            tp.collect(0, c.len() + 2, &|r| pair_coords(&a, &b, r, n))?;
        }
        (false, true) => {
            // A B^-1 = B^-1 c^-1 A
            let mut new = alloc::vec![Token::L(pb.inv())];
            new.extend(ls(&cinv));
            new.push(Token::L(pa));
            tp.replace(0, 2, new, &rel)?;
            tp.collect(0, c.len() + 1, &|r| pair_coords(&a, &b, r, n))?;
        }
        (true, true) => {
            // A^-1 B^-1 = B^-1 A^-1 c
            let mut new = alloc::vec![Token::L(pb.inv()), Token::L(pa.inv())];
            new.extend(ls(&c));
            tp.replace(0, 2, new, &rel)?;
        }
    }
    let len = tp.toks.len();
    tp.collect(0, len, &|r| pair_coords(&a, &b, r, n))?;
    Ok(tp.finish())
}

fn pair_coords(a: &Root, b: &Root, r: &Root, n: u8) -> Option<i64> {
    match coords_in(a, b, r, n) {
        Some((i, j)) if i >= 0 && j >= 0 => Some(pair_key(i, j)),
        _ => None,
    }
}

/// Linear key M·j + i in the basis (γ, δ), positive on the half plane j > 0.
fn half_plane_key(gamma: Root, delta: Root, n: u8) -> impl Fn(&Root) -> Option<i64> {
    move |r: &Root| coords_in(&gamma, &delta, r, n).map(|(i, j)| 10 * j + i)
}

fn derive_wconj(pres: &StPresentation, gamma: Root, s: i64, g: Unit) -> Result<ProofScript, BuildError> {
    let n = pres.rank();
    let delta = root_of_unit(g, n);
    if delta != gamma && delta != gamma.neg() {
        // w^s = a b a with a = x_γ^s, b = x_{-γ}^{-s}.
        let a = unit_of(&gamma, s < 0, n);
        let b = unit_of(&gamma.neg(), s > 0, n);
        let toks = [a, b, a, g, a.inv(), b.inv(), a.inv()].iter().map(|&x| Token::L(x)).collect();
        let mut tp = TokenProof::new(pres, toks);
        let k1 = half_plane_key(gamma, delta, n);
        let k2 = half_plane_key(gamma.neg(), delta, n);
        let e1 = tp.collect(2, 5, &k1)?;
        let e2 = tp.collect(1, e1 + 1, &k2)?;
        tp.collect(0, e2 + 1, &k1)?;
        return Ok(tp.finish());
    }
    // δ = ±γ: rewrite g through a defining relation into letters off ±γ,
    // conjugate each, then collect.
    let (e, rel) = decomposition(pres, g)?;
    let mut tp = TokenProof::new(pres, alloc::vec![Token::W(gamma, s as i8), Token::L(g), Token::W(gamma, -s as i8)]);
    tp.replace(1, 2, e.iter().map(|&x| Token::L(x)).collect(), &rel)?;
    let mut spread = Vec::new();
    for &x in &e {
        spread.extend([Token::W(gamma, s as i8), Token::L(x), Token::W(gamma, -s as i8)]);
    }
    tp.set_tokens(spread)?;
    let mut images = Vec::new();
    for (k, &x) in e.iter().enumerate() {
        let rel = wconj_ref(&gamma, s, x, n);
        let y = pres.instantiate(&rel)?.rhs.units()[0];
        images.push(root_of_unit(y, n));
        tp.replace(k, k + 3, alloc::vec![Token::L(y)], &rel)?;
    }
    images.push(Root::reflect(&gamma, &delta));
    let v = positive_functional(&images, n)
        .ok_or_else(|| BuildError::Stuck("no half space holds the conjugated letters".to_string()))?;
    let key = move |r: &Root| {
        let c = r.coords(n);
        Some((0..n as usize).map(|k| c[k] * v[k]).sum::<i64>())
    };
    let len = tp.toks.len();
    tp.collect(0, len, &key)?;
    Ok(tp.finish())
}

/// A small integer vector positive on every given root.
pub(crate) fn positive_functional(roots: &[Root], n: u8) -> Option<Vec<i64>> {
    let mut idx: Vec<usize> = Vec::new();
    for r in roots {
        let c = r.coords(n);
        for k in 0..n as usize {
            if c[k] != 0 && !idx.contains(&k) {
                idx.push(k);
            }
        }
    }
    let m = idx.len();
    let mut digits = alloc::vec![-3i64; m];
    loop {
        let mut v = alloc::vec![0i64; n as usize];
        for (t, &k) in idx.iter().enumerate() {
            v[k] = digits[t];
        }
        let val = |r: &Root| {
            let c = r.coords(n);
            (0..n as usize).map(|k| c[k] * v[k]).sum::<i64>()
        };
        // Positive on the given roots and injective on the positive side, so
        // collected words are unique.
        let mut vals: Vec<i64> = Root::all(n)
            .iter()
            .filter(|r| r.coords(n).iter().enumerate().all(|(k, &c)| c == 0 || idx.contains(&k)))
            .map(val)
            .filter(|&x| x > 0)
            .collect();
        let count = vals.len();
        vals.sort_unstable();
        vals.dedup();
        if roots.iter().all(|r| val(r) > 0) && vals.len() == count {
            return Some(v);
        }
        let mut t = 0;
        loop {
            if t == m {
                return None;
            }
            if digits[t] < 3 {
                digits[t] += 1;
                break;
            }
            digits[t] = -3;
            t += 1;
        }
    }
}

/// g as a word in letters whose roots avoid ±root(g), with the defining
/// relation that says so.
fn decomposition(pres: &StPresentation, g: Unit) -> Result<(Vec<Unit>, RelationRef), BuildError> {
    let n = pres.rank();
    let r = root_of_unit(g, n);
    let other = |i: u8| if i == 1 { 2 } else { 1 };
    let u = |r: Root, neg: bool| unit_of(&r, neg, n);
    let x = |i: u8, j: u8| Root::short(i, 1, j, -1);
    let y = |i: u8, j: u8| Root::short(i, 1, j, 1);
    let yp = |i: u8, j: u8| Root::short(i, -1, j, -1);
    let z = |i: u8| Root::long(i, 1);
    let zp = |i: u8| Root::long(i, -1);
    let comm = |a: Unit, b: Unit| alloc::vec![a, b, a.inv(), b.inv()];
    let (word, rel) = match r {
        Root::Long { i, s: 1 } => {
            let j = other(i);
            let mut w = comm(u(x(i, j), false), u(z(j), false));
            w.push(u(y(i, j), true));
            (w, RelationRef::ints("st-xz", &[i as i64, j as i64]))
        }
        Root::Long { i, .. } => {
            let j = other(i);
            let mut w = comm(u(x(j, i), false), u(zp(j), false));
            w.push(u(yp(i, j), false));
            (w, RelationRef::ints("st-xzp", &[j as i64, i as i64]))
        }
        Root::Short { i, si, j, sj } => {
            let (i, j) = match (si, sj) {
                (1, -1) | (1, 1) | (-1, -1) => (i, j),
                _ => (j, i),
            };
            match (si, sj) {
                (1, 1) => {
                    let mut w = alloc::vec![u(z(i), true)];
                    w.extend(comm(u(x(i, j), false), u(z(j), false)));
                    (w, RelationRef::ints("st-xz", &[i as i64, j as i64]))
                }
                (-1, -1) => {
                    let mut w = invert_units(&comm(u(x(i, j), false), u(zp(i), false)));
                    w.push(u(zp(j), false));
                    (w, RelationRef::ints("st-xzp", &[i as i64, j as i64]))
                }
                _ => {
                    // x_{i,j} = [y_{i,j}, z'_j] z_i
                    let mut w = comm(u(y(i, j), false), u(zp(j), false));
                    w.push(u(z(i), false));
                    (w, RelationRef::ints("st-yzp", &[j as i64, i as i64]))
                }
            }
        }
    };
    Ok((if g.is_neg() { invert_units(&word) } else { word }, rel))
}

fn derive_w4eq(pres: &StPresentation, i: u8, j: u8) -> Result<ProofScript, BuildError> {
    let n = pres.rank();
    let gi = Root::long(i, 1);
    let u = Root::short(i, 1, j, -1);
    let wi = Token::W(gi, 1);
    let mut tp = TokenProof::new(pres, alloc::vec![wi; 4]);
    let mut toks = alloc::vec![Token::W(u, 1)];
    toks.extend(w_units(&u, -1, n).into_iter().map(Token::L));
    toks.extend([wi; 4]);
    tp.set_tokens(toks)?;
    // Carry the letters of w_u^{-1} to the right end: g w_i = w_i (w_i^{-1} g w_i).
    loop {
        let k = match (0..tp.toks.len() - 1).find(|&k| matches!(tp.toks[k], Token::L(_)) && tp.toks[k + 1] == wi) {
            Some(k) => k,
            None => break,
        };
        let g = match tp.toks[k] {
            Token::L(g) => g,
            _ => unreachable!(),
        };
        let rel = wconj_ref(&gi, -1, g, n);
        let h = pres.instantiate(&rel)?.rhs.units()[0];
        tp.replace(k, k + 2, alloc::vec![wi, Token::L(h)], &rel)?;
    }
    let mut toks = alloc::vec![Token::W(u, 1)];
    toks.extend([wi; 4]);
    toks.push(Token::W(u, -1));
    tp.set_tokens(toks)?;
    let letters = w_units(&gi, 1, n).repeat(4);
    let mut spread = Vec::new();
    for &x in &letters {
        spread.extend([Token::W(u, 1), Token::L(x), Token::W(u, -1)]);
    }
    tp.set_tokens(spread)?;
    for (k, &x) in letters.iter().enumerate() {
        let rel = wconj_ref(&u, 1, x, n);
        let y = pres.instantiate(&rel)?.rhs.units()[0];
        tp.replace(k, k + 3, alloc::vec![Token::L(y)], &rel)?;
    }
    Ok(tp.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::check_script;
    use crate::report::Tier;

    fn certified(pres: &StPresentation, r: &str) {
        let r = RelationRef::parse(r).unwrap();
        let script = pres.derivation(&r).unwrap_or_else(|e| panic!("{}: {}", r, e));
        let rep = check_script(pres, &script, Tier::Certified, None);
        assert!(rep.pass, "{}: {:?}", r, rep.error);
    }

    #[test]
    fn swaps_in_all_sign_cases() {
        let p = StPresentation::new(2);
        for r in [
            "swap(x(1,2),z(2))",
            "swap(x(1,2)^-1,z(2))",
            "swap(x(1,2),z(2)^-1)",
            "swap(x(1,2)^-1,z(2)^-1)",
            "swap(z(2),x(1,2))",
            "swap(y(1,2)^-1,zp(1))",
            "swap(x(1,2),y(1,2))",
        ] {
            certified(&p, r);
        }
    }

    #[test]
    fn weyl_conjugations() {
        let p = StPresentation::new(2);
        certified(&p, "wconj(2e1,1,y(1,2))");
        certified(&p, "wconj(2e1,-1,x(2,1)^-1)");
        certified(&p, "wconj(2e1,1,z(1))");
        certified(&p, "wconj(2e1,-1,zp(1)^-1)");
        certified(&p, "wconj(e1-e2,1,z(1))");
        certified(&p, "wconj(e1-e2,1,x(1,2))");
    }

    #[test]
    fn weyl_blocks() {
        let p = StPresentation::new(2);
        certified(&p, "wcomm(1,2,1,-1)");
        certified(&p, "w4eq(2,1)");
    }
}
