//! Braid groups B_k, the Artin groups of type Γ_k (σ_0 braided with σ_4),
//! their distinguished elements and the maps f, f̂ to St(C_n, Z) and f̄ to
//! Sp_{2n}(Z).

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::presentation::{
    apply_step_units, bad_args, check_script, BuildError, Checker, Direction, Presentation, PresentationError,
    ProofBuilder, ProofScript, RelationInstance, RelationRef,
};
use crate::report::{Item, Report, Tier};
use crate::root::Root;
use crate::steinberg::{certify_equal, charge_extract, pi, w_units, weyl_push, ChargeError, StPresentation};
use crate::word::{reduce_units, Alphabet, GenSymbol, Unit, Word, WordError};
use crate::zmatrix::{acampo_basis, acampo_form, acampo_t, j_form, ZMatrix};

/// Braid (or Artin) presentation: `braid-adjacent` and `braid-commute`.
#[derive(Clone, Copy, Debug)]
pub struct BraidPresentation {
    alphabet: Alphabet,
}

impl BraidPresentation {
    pub fn new(alphabet: Alphabet) -> BraidPresentation {
        assert!(matches!(alphabet, Alphabet::Braid { .. } | Alphabet::Artin { .. }));
        BraidPresentation { alphabet }
    }

    fn indices(&self) -> Vec<u8> {
        match self.alphabet {
            Alphabet::Braid { strands } => (1..strands).collect(),
            Alphabet::Artin { k } => (0..k).collect(),
            Alphabet::Steinberg { .. } => Vec::new(),
        }
    }

    /// All defining relations, adjacent pairs first.
    pub fn defining_relations(&self) -> Vec<RelationRef> {
        let idx = self.indices();
        let mut out = Vec::new();
        for &i in &idx {
            for &j in &idx {
                if i < j && self.alphabet.adjacent(i, j) {
                    out.push(if j == i + 1 {
                        RelationRef::ints("braid-adjacent", &[i as i64])
                    } else {
                        RelationRef::ints("braid-adjacent", &[i as i64, j as i64])
                    });
                }
            }
        }
        for &i in &idx {
            for &j in &idx {
                if i < j && !self.alphabet.adjacent(i, j) {
                    out.push(RelationRef::ints("braid-commute", &[i as i64, j as i64]));
                }
            }
        }
        out
    }

    fn sigma(&self, r: &RelationRef, i: i64) -> Result<GenSymbol, PresentationError> {
        if !(0..=u8::MAX as i64).contains(&i) || !self.alphabet.contains(&GenSymbol::sigma(i as u8)) {
            return Err(bad_args(r, "index out of range"));
        }
        Ok(GenSymbol::sigma(i as u8))
    }
}

impl Presentation for BraidPresentation {
    fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    fn instantiate(&self, r: &RelationRef) -> Result<RelationInstance, PresentationError> {
        let a: Vec<i64> = r
            .args
            .iter()
            .map(|x| x.int().ok_or_else(|| bad_args(r, "expected integers")))
            .collect::<Result<_, _>>()?;
        let w = |gs: &[GenSymbol]| {
            let raw: Vec<(GenSymbol, i64)> = gs.iter().map(|&g| (g, 1)).collect();
            Word::reduce(self.alphabet, &raw)
        };
        match r.name.as_str() {
            "braid-adjacent" => {
                let (i, j) = match a.as_slice() {
                    // σ_0 has the single neighbour σ_4.
                    [0] => (0, 4),
                    [i] => (*i, i + 1),
                    [i, j] => (*i, *j),
                    _ => return Err(bad_args(r, "expected (i) or (i,j)")),
                };
                let (gi, gj) = (self.sigma(r, i)?, self.sigma(r, j)?);
                if !self.alphabet.adjacent(gi.i, gj.i) {
                    return Err(bad_args(r, "generators are not adjacent"));
                }
                Ok(RelationInstance { lhs: w(&[gi, gj, gi])?, rhs: w(&[gj, gi, gj])?, derived: false })
            }
            "braid-commute" => {
                let [i, j] = a.as_slice() else {
                    return Err(bad_args(r, "expected (i,j)"));
                };
                let (gi, gj) = (self.sigma(r, *i)?, self.sigma(r, *j)?);
                if i == j || self.alphabet.adjacent(gi.i, gj.i) {
                    return Err(bad_args(r, "generators must be distinct and not adjacent"));
                }
                Ok(RelationInstance { lhs: w(&[gi, gj])?, rhs: w(&[gj, gi])?, derived: false })
            }
            _ => Err(PresentationError::UnknownRelation(r.name.clone())),
        }
    }
}

fn braid(strands: u8) -> Alphabet {
    Alphabet::Braid { strands }
}

/// Positive word σ_{i_1} σ_{i_2} ⋯ over `a`.
pub fn positive(a: Alphabet, idx: &[u8]) -> Word {
    let raw: Vec<(GenSymbol, i64)> = idx.iter().map(|&i| (GenSymbol::sigma(i), 1)).collect();
    Word::reduce(a, &raw).expect("indices in range")
}

fn range_up(lo: u8, hi: u8) -> Vec<u8> {
    (lo..=hi).collect()
}

fn range_down(hi: u8, lo: u8) -> Vec<u8> {
    (lo..=hi).rev().collect()
}

fn delta_idx(k: u8) -> Vec<u8> {
    if k <= 2 {
        return alloc::vec![1];
    }
    let mut v = range_up(1, k - 1);
    v.extend(delta_idx(k - 1));
    v
}

/// Δ_k over `a`: Δ_2 = σ_1, Δ_{k+1} = (σ_1⋯σ_k) Δ_k.
pub fn delta(a: Alphabet, k: u8) -> Result<Word, String> {
    if k < 2 || !a.contains(&GenSymbol::sigma(k - 1)) {
        return Err(alloc::format!("Δ_{} does not fit in {}", k, a));
    }
    Ok(positive(a, &delta_idx(k)))
}

fn check_n(n: u8) -> Result<(), String> {
    if n < 2 {
        return Err(alloc::format!("n must be at least 2, got {}", n));
    }
    Ok(())
}

/// β_n = σ_1 σ_3^{-1} ⋯ σ_{2n+1}^{(-1)^n} in B_{2n+2}.
pub fn beta(n: u8) -> Result<Word, String> {
    check_n(n)?;
    let raw: Vec<(GenSymbol, i64)> =
        (0..=n).map(|i| (GenSymbol::sigma(2 * i + 1), if i % 2 == 0 { 1 } else { -1 })).collect();
    Ok(Word::reduce(braid(2 * n + 2), &raw).expect("in range"))
}

/// γ_n = Δ_3² Δ_5² ⋯ Δ_{2n-1}².
pub fn gamma(n: u8) -> Result<Word, String> {
    check_n(n)?;
    let a = braid(2 * n + 2);
    let mut w = Word::empty(a);
    for i in 1..n {
        w = w.mul(&delta(a, 2 * i + 1)?.pow(2)).expect("same alphabet");
    }
    Ok(w)
}

/// α_n = γ_n β_n γ_n^{-1} β_n.
pub fn alpha(n: u8) -> Result<Word, String> {
    let (g, b) = (gamma(n)?, beta(n)?);
    Ok(g.mul(&b).and_then(|w| w.mul(&g.invert())).and_then(|w| w.mul(&b)).expect("same alphabet"))
}

/// α_0 = (σ_1σ_2σ_1)² (σ_1σ_3^{-1}σ_0) (σ_1σ_2σ_1)^{-2} (σ_1σ_3^{-1}σ_0) in
/// the Artin group of type Γ_{2n+1}.
pub fn alpha0(n: u8) -> Result<Word, String> {
    check_n(n)?;
    let a = Alphabet::Artin { k: 2 * n + 1 };
    let d = positive(a, &[1, 2, 1]).pow(2);
    let b = Word::reduce(a, &[(GenSymbol::sigma(1), 1), (GenSymbol::sigma(3), -1), (GenSymbol::sigma(0), 1)])
        .expect("in range");
    Ok(d.mul(&b).and_then(|w| w.mul(&d.invert())).and_then(|w| w.mul(&b)).expect("same alphabet"))
}

/// Which of the two expressions for A_{i,2n+2}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AForm {
    /// (σ_{2n+1} ⋯ σ_{i+1}) σ_i² (σ_{2n+1} ⋯ σ_{i+1})^{-1}
    Def,
    /// (σ_{2n} ⋯ σ_i)^{-1} σ_{2n+1}² (σ_{2n} ⋯ σ_i)
    Expr,
}

pub fn a_element(i: u8, n: u8, form: AForm) -> Result<Word, String> {
    check_n(n)?;
    let top = 2 * n + 1;
    if i < 1 || i > top {
        return Err(alloc::format!("A_{{i,{}}} needs 1 <= i <= {}", top + 1, top));
    }
    let a = braid(2 * n + 2);
    let sq = |j: u8| Word::letter(a, GenSymbol::sigma(j), 2).expect("in range");
    if i == top {
        return Ok(sq(top));
    }
    Ok(match form {
        AForm::Def => Word::conjugate(&sq(i), &positive(a, &range_down(top, i + 1))),
        AForm::Expr => Word::conjugate(&sq(top), &positive(a, &range_down(2 * n, i)).invert()),
    }
    .expect("same alphabet"))
}

/// A permutation of {1, …, k}, stored as the image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(pub Vec<u8>);

impl Permutation {
    pub fn identity(k: u8) -> Permutation {
        Permutation((1..=k).collect())
    }

    pub fn transposition(k: u8, a: u8, b: u8) -> Permutation {
        let mut p = Permutation::identity(k);
        p.0.swap(a as usize - 1, b as usize - 1);
        p
    }

    /// (self · other)(x) = self(other(x)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x as usize - 1]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.0.len();
        let mut seen = alloc::vec![false; k];
        let mut any = false;
        for s in 0..k {
            if seen[s] || self.0[s] as usize == s + 1 {
                continue;
            }
            any = true;
            f.write_str("(")?;
            let mut x = s;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{}", x + 1)?;
                x = self.0[x] as usize - 1;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// Image in S_k of a classical braid word (σ_i ↦ (i i+1)).
pub fn perm(w: &Word) -> Result<Permutation, String> {
    let Alphabet::Braid { strands } = w.alphabet() else {
        return Err("permutations are only defined for braid words".to_string());
    };
    let mut p = Permutation::identity(strands);
    for u in w.units() {
        let i = u.gen() as u8;
        p = p.compose(&Permutation::transposition(strands, i, i + 1));
    }
    Ok(p)
}

pub fn is_pure(w: &Word) -> Result<bool, String> {
    Ok(perm(w)?.is_identity())
}

/// Image of σ_i under f (or f̂ for i = 0), before free reduction.
pub fn f_letter(i: u8, n: u8) -> Result<Vec<(GenSymbol, i64)>, String> {
    let top = 2 * n + 1;
    Ok(match i {
        0 => alloc::vec![(GenSymbol::z(2), 1)],
        1 => alloc::vec![(GenSymbol::z(1), 1)],
        _ if i == top => alloc::vec![(GenSymbol::z(n), 1)],
        _ if i > top => return Err(alloc::format!("σ_{} is not a generator of B_{}", i, top + 1)),
        _ if i % 2 == 0 => alloc::vec![(GenSymbol::zp(i / 2), -1)],
        _ => {
            let k = (i - 1) / 2;
            alloc::vec![(GenSymbol::z(k), 1), (GenSymbol::z(k + 1), 1), (GenSymbol::y(k, k + 1), -1)]
        }
    })
}

fn check_source(w: &Word, n: u8) -> Result<(), String> {
    match w.alphabet() {
        Alphabet::Braid { strands } if strands <= 2 * n + 2 => Ok(()),
        Alphabet::Artin { k } if k <= 2 * n + 2 && k >= 5 => Ok(()),
        a => Err(alloc::format!("{} does not map to St(C_{}, Z)", a, n)),
    }
}

/// f on braid words and f̂ on Artin words (σ_0 ↦ z_2), freely reduced.
pub fn f_map(w: &Word, n: u8) -> Result<Word, String> {
    check_n(n)?;
    check_source(w, n)?;
    let target = Alphabet::Steinberg { rank: n };
    w.substitute(target, |g| {
        let raw = f_letter(g.i, n).map_err(WordError::Parse)?;
        Word::reduce(target, &raw)
    })
    .map_err(|e| e.to_string())
}

/// f̄(σ_i) straight from the matrix formulas: Z_1, Z_n, Z'_i^{-1} and
/// Z_i Z_{i+1} Y_{i,i+1}^{-1}.
pub fn fbar_generator(i: u8, n: u8) -> Result<ZMatrix, String> {
    let d = 2 * n as usize;
    let nn = n as usize;
    let mut m = ZMatrix::identity(d);
    let one = BigInt::one;
    let top = 2 * n + 1;
    match i {
        0 => m.set(1, nn + 1, one()),
        1 => m.set(0, nn, one()),
        _ if i == top => m.set(nn - 1, 2 * nn - 1, one()),
        _ if i > top => return Err(alloc::format!("σ_{} is not a generator of B_{}", i, top + 1)),
        _ if i % 2 == 0 => {
            let k = (i / 2) as usize - 1;
            m.set(nn + k, k, -one());
        }
        _ => {
            // Z_k, Z_{k+1} and Y_{k,k+1}^{-1} are I + (upper right block),
            // so their product adds the blocks.
            let k = ((i - 1) / 2) as usize - 1;
            m.set(k, nn + k, one());
            m.set(k + 1, nn + k + 1, one());
            m.set(k, nn + k + 1, -one());
            m.set(k + 1, nn + k, -one());
        }
    }
    Ok(m)
}

/// f̄ = π ∘ f evaluated directly on matrices.
pub fn fbar(w: &Word, n: u8) -> Result<ZMatrix, String> {
    check_n(n)?;
    check_source(w, n)?;
    let mut m = ZMatrix::identity(2 * n as usize);
    for &(g, e) in w.letters() {
        let mut g_m = fbar_generator(g.i, n)?;
        if e < 0 {
            g_m = g_m.symplectic_inverse();
        }
        for _ in 0..e.unsigned_abs() {
            m = m.mul(&g_m);
        }
    }
    Ok(m)
}

/// j: σ_0 ↦ σ_5, σ_i ↦ σ_i, from the subgroup ⟨σ_0, …, σ_4⟩ to B_6.
pub fn j_iso(w: &Word) -> Result<Word, String> {
    if !matches!(w.alphabet(), Alphabet::Artin { .. }) {
        return Err("j is defined on Artin words".to_string());
    }
    let mut raw = Vec::new();
    for &(g, e) in w.letters() {
        if g.i > 4 {
            return Err(alloc::format!("{} is outside ⟨σ_0, …, σ_4⟩", g));
        }
        raw.push((GenSymbol::sigma(if g.i == 0 { 5 } else { g.i }), e));
    }
    Word::reduce(braid(6), &raw).map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------------
// Certificates for braid identities.

fn sigma_of(u: Unit) -> u8 {
    u.gen() as u8
}

/// Rewrite the positive stretch [off, off + len) of the current word so
/// that it begins with σ_s.
fn bring_front(
    b: &mut ProofBuilder<'_, BraidPresentation>,
    a: Alphabet,
    off: usize,
    len: usize,
    s: u8,
) -> Result<(), BuildError> {
    let first = sigma_of(b.current()[off]);
    if first == s {
        return Ok(());
    }
    if len < 2 {
        return Err(BuildError::Stuck(alloc::format!("σ_{} does not divide the word on the left", s)));
    }
    bring_front(b, a, off + 1, len - 1, s)?;
    if a.adjacent(first, s) {
        bring_front(b, a, off + 2, len - 2, first)?;
        b.replace(off, RelationRef::ints("braid-adjacent", &[first as i64, s as i64]), Direction::Fwd)
    } else {
        b.replace(off, RelationRef::ints("braid-commute", &[first as i64, s as i64]), Direction::Fwd)
    }
}

/// Script rewriting the positive word `u` into the positive word `v`.
pub fn positive_equivalence(pres: &BraidPresentation, u: &Word, v: &Word) -> Result<ProofScript, BuildError> {
    let a = pres.alphabet();
    let target: Vec<u8> = v.units().iter().map(|&x| sigma_of(x)).collect();
    let units = u.units();
    if units.iter().any(|x| x.is_neg()) || v.units().iter().any(|x| x.is_neg()) || units.len() != target.len() {
        return Err(BuildError::Stuck("both words must be positive and of equal length".to_string()));
    }
    let mut b = ProofBuilder::new(pres, units);
    for (t, &s) in target.iter().enumerate() {
        bring_front(&mut b, a, t, target.len() - t, s)?;
    }
    let script = b.finish();
    if script.end != *v {
        return Err(BuildError::Stuck("positive words are not equivalent".to_string()));
    }
    Ok(script)
}

/// Carry a script for U = V into one for reduce(p U q) = reduce(p V q).
pub fn transport(
    pres: &BraidPresentation,
    prefix: &Word,
    proof: &ProofScript,
    suffix: &Word,
) -> Result<ProofScript, BuildError> {
    let a = pres.alphabet();
    let wrap = |mid: &[Unit]| {
        let mut v = prefix.units();
        v.extend_from_slice(mid);
        v.extend(suffix.units());
        reduce_units(&v)
    };
    let mut cur = proof.start.units();
    let mut b = ProofBuilder::new(pres, wrap(&cur));
    for st in &proof.steps {
        let inst = pres.instantiate(&st.relation)?;
        cur = apply_step_units(a, &cur, st, &inst).map_err(|e| BuildError::Stuck(e.to_string()))?;
        b.rewrite_to(&wrap(&cur), core::slice::from_ref(&st.relation))?;
    }
    Ok(b.finish())
}

fn certified_item(pres: &BraidPresentation, name: String, script: Result<ProofScript, BuildError>, start: &Word, end: &Word) -> Item {
    match script {
        Ok(s) if s.start == *start && s.end == *end => {
            let rep = check_script(pres, &s, Tier::Certified, None);
            Item::new(name, rep.pass, Tier::Certified).with_detail(alloc::format!(
                "{} steps{}",
                s.steps.len(),
                rep.error.map(|e| alloc::format!(", {}", e)).unwrap_or_default()
            ))
        }
        Ok(_) => Item::new(name, false, Tier::Certified).with_detail("script proves a different identity"),
        Err(e) => Item::new(name, false, Tier::Certified).with_detail(e.to_string()),
    }
}

/// Δ_{k+1}² = Δ_k² (σ_k ⋯ σ_1)(σ_1 ⋯ σ_k): f̄ level for every k that fits
/// in B_{2n+2}, replayed braid scripts for k ≤ `certified_up_to`.
pub fn delta_sq_identity_check(n: u8, certified_up_to: u8) -> Report {
    let strands = 2 * n + 2;
    let a = braid(strands);
    let pres = BraidPresentation::new(a);
    let mut rep = Report::new(alloc::format!("Δ² induction n={}", n));
    for k in 2..strands {
        let lhs = delta(a, k + 1).unwrap().pow(2);
        let mut idx = delta_idx(k);
        idx.extend(delta_idx(k));
        idx.extend(range_down(k, 1));
        idx.extend(range_up(1, k));
        let rhs = positive(a, &idx);
        let name = alloc::format!("Δ_{}² = Δ_{}² (σ_{}⋯σ_1)(σ_1⋯σ_{})", k + 1, k, k, k);
        let m = fbar(&lhs, n).unwrap() == fbar(&rhs, n).unwrap();
        rep.push(Item::new(alloc::format!("f̄: {}", name), m, Tier::Exact));
        if k <= certified_up_to {
            let s = positive_equivalence(&pres, &lhs, &rhs);
            rep.push(certified_item(&pres, name, s, &lhs, &rhs));
        }
    }
    rep
}

/// def-A = expr-A: f̄ matrices for all i, braid scripts when `certified`.
pub fn a_equivalence_check(n: u8, certified: bool) -> Report {
    let a = braid(2 * n + 2);
    let pres = BraidPresentation::new(a);
    let mut rep = Report::new(alloc::format!("A_{{i,{}}} forms n={}", 2 * n + 2, n));
    let top = 2 * n + 1;
    for i in 1..=top {
        let d = a_element(i, n, AForm::Def).unwrap();
        let e = a_element(i, n, AForm::Expr).unwrap();
        let name = alloc::format!("A_{{{},{}}}", i, top + 1);
        rep.push(Item::new(alloc::format!("f̄: {} def = expr", name), fbar(&d, n).unwrap() == fbar(&e, n).unwrap(), Tier::Exact));
        if !certified || i == top {
            continue;
        }
        // R Q σ_i² = σ_{2n+1}² R Q with R = σ_{2n}⋯σ_i and Q = σ_{2n+1}⋯σ_{i+1};
        // conjugating by Q carries it to def = expr.
        let r = positive(a, &range_down(2 * n, i));
        let q = positive(a, &range_down(top, i + 1));
        let sqi = Word::letter(a, GenSymbol::sigma(i), 2).unwrap();
        let sqt = Word::letter(a, GenSymbol::sigma(top), 2).unwrap();
        let u = r.mul(&q).unwrap().mul(&sqi).unwrap();
        let v = sqt.mul(&r).unwrap().mul(&q).unwrap();
        let script = positive_equivalence(&pres, &u, &v).and_then(|p| {
            let prefix = e.mul(&q).unwrap().mul(&v.invert()).unwrap();
            transport(&pres, &prefix, &p, &q.invert())
        });
        rep.push(certified_item(&pres, alloc::format!("{} def = expr", name), script, &d, &e));
    }
    rep
}

/// The monodromy matrices T_i in the basis P: the form I becomes J_{2n},
/// and P⁻¹ T_i P is compared with f̄(σ_i) and with f̄(σ_i)⁻¹.
pub fn acampo_check(n: u8) -> Report {
    let nn = n as usize;
    let mut rep = Report::new(alloc::format!("A'Campo n={}", n));
    if check_n(n).is_err() {
        rep.push(Item::new(alloc::format!("n = {} out of range", n), false, Tier::Exact));
        return rep;
    }
    let (p, form, j) = (acampo_basis(nn), acampo_form(nn), j_form(nn));
    rep.push(Item::new("P^T I P = J", p.transpose().mul(&form).mul(&p) == j, Tier::Exact));
    // From PᵀIP = J: P⁻¹ = J⁻¹PᵀI = −J Pᵀ I.
    let pinv = j.mul(&p.transpose()).mul(&form).neg();
    rep.push(Item::new("P^-1 P = I", pinv.mul(&p).is_identity(), Tier::Exact));
    let mut literal = Vec::new();
    let mut mirrored = Vec::new();
    for i in 1..=2 * n {
        let t = acampo_t(i as usize, nn).expect("index in range");
        let c = pinv.mul(&t).mul(&p);
        let f = fbar_generator(i, n).expect("index in range");
        literal.push(Item::new(alloc::format!("P^-1 T_{} P = fbar(s{})", i, i), c == f, Tier::Exact));
        mirrored.push(Item::new(
            alloc::format!("P^-1 T_{} P = fbar(s{})^-1", i, i),
            c == f.symplectic_inverse(),
            Tier::Exact,
        ));
    }
    rep.items.extend(literal);
    rep.items.extend(mirrored);
    rep
}

// ---------------------------------------------------------------------------
// Suites over St(C_n, Z).

/// Options shared by the Steinberg-side suites.
#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub certified: bool,
    pub budget: usize,
}

fn st_checker_item(st: &StPresentation, name: String, res: Result<ProofScript, ChargeError>) -> Item {
    match res {
        Ok(s) => {
            let oracle = |w: &Word| pi(w);
            let mut c = Checker::new(st, Tier::Certified).with_oracle(&oracle, false);
            let rep = c.check(&s);
            Item::new(name, rep.pass, if rep.pass { rep.tier } else { Tier::Certified }).with_detail(alloc::format!(
                "{} steps{}",
                s.steps.len(),
                rep.error.map(|e| alloc::format!(", replay: {}", e)).unwrap_or_default()
            ))
        }
        Err(e) => Item::new(name, false, Tier::Certified).with_detail(e.to_string()),
    }
}

/// a = b in St(C_n, Z): π always, a certificate when asked.
fn st_equal_item(st: &StPresentation, name: String, a: &Word, b: &Word, opt: SuiteOptions) -> Item {
    let pi_ok = pi(a) == pi(b);
    if !opt.certified || !pi_ok {
        return Item::new(name, pi_ok, Tier::PiVerified);
    }
    st_checker_item(st, name, certify_equal(st, a, b, opt.budget))
}

/// w has π = I and charge `k`.
fn charge_item(st: &StPresentation, name: String, w: &Word, k: i64, opt: SuiteOptions) -> Item {
    let pi_ok = pi(w).is_identity();
    if !opt.certified || !pi_ok {
        return Item::new(name, pi_ok, Tier::PiVerified);
    }
    match charge_extract(st, w, opt.budget) {
        Ok(ch) if ch.k == k => st_checker_item(st, name, Ok(ch.script)),
        Ok(ch) => Item::new(name, false, Tier::Certified).with_detail(alloc::format!("charge {} instead of {}", ch.k, k)),
        Err(e) => Item::new(name, false, Tier::Certified).with_detail(e.to_string()),
    }
}

fn relation_text(r: &RelationRef, inst: &RelationInstance) -> String {
    alloc::format!("{}: {} = {}", r, inst.lhs, inst.rhs)
}

/// Every defining relation of B_{2n+2} (and, with `hat`, of the Artin
/// group of type Γ_{2n+2}) has equal images under f (or f̂).
pub fn braid_hom_suite(n: u8, hat: bool, opt: SuiteOptions) -> Report {
    let a = if hat { Alphabet::Artin { k: 2 * n + 2 } } else { braid(2 * n + 2) };
    let bp = BraidPresentation::new(a);
    let st = StPresentation::new(n);
    let mut rep = Report::new(alloc::format!("{} relations n={}", if hat { "f̂" } else { "f" }, n));
    for r in bp.defining_relations() {
        // f̂ agrees with f away from σ_0, so only the σ_0 relations are new.
        if hat && !r.args.iter().any(|x| x.int() == Some(0)) {
            continue;
        }
        let inst = bp.instantiate(&r).unwrap();
        let (l, rr) = (f_map(&inst.lhs, n).unwrap(), f_map(&inst.rhs, n).unwrap());
        let name = relation_text(&r, &inst);
        let route = fbar(&inst.lhs, n).unwrap() == pi(&l) && fbar(&inst.rhs, n).unwrap() == pi(&rr);
        rep.push(Item::new(alloc::format!("π∘f = f̄ on {}", name), route, Tier::Exact));
        rep.push(st_equal_item(&st, name, &l, &rr, opt));
    }
    rep
}

fn st(n: u8) -> Alphabet {
    Alphabet::Steinberg { rank: n }
}

fn wj(n: u8, j: u8, e: i64) -> Word {
    let mut u = Vec::new();
    for _ in 0..e.unsigned_abs() {
        u.extend(w_units(&Root::long(j, 1), e.signum(), n));
    }
    Word::from_units(st(n), &u)
}

fn prod(ws: &[Word]) -> Word {
    let mut out = Word::empty(ws[0].alphabet());
    for w in ws {
        out = out.mul(w).expect("same alphabet");
    }
    out
}

fn sletter(n: u8, g: GenSymbol, e: i64) -> Word {
    Word::letter(st(n), g, e).expect("in range")
}

/// w_1 w_2 ⋯ w_hi
fn w_prod(n: u8, hi: u8, e: i64) -> Word {
    let mut v = alloc::vec![Word::empty(st(n))];
    v.extend((1..=hi).map(|j| wj(n, j, e)));
    prod(&v)
}

/// x_{1,2} x_{2,3} ⋯ x_{m-1,m}
fn x_up(n: u8, m: u8) -> Word {
    let mut v = alloc::vec![Word::empty(st(n))];
    v.extend((1..m).map(|j| sletter(n, GenSymbol::x(j, j + 1), 1)));
    prod(&v)
}

/// x_{m,m-1} ⋯ x_{2,1}
fn x_down(n: u8, m: u8) -> Word {
    let mut v = alloc::vec![Word::empty(st(n))];
    v.extend((1..m).rev().map(|j| sletter(n, GenSymbol::x(j + 1, j), 1)));
    prod(&v)
}

/// Closed forms for f(σ_1⋯σ_k) and f(σ_k⋯σ_1).
pub fn lemma_closed_forms(n: u8) -> Vec<(String, Word, Word)> {
    let a = braid(2 * n + 2);
    let z = |i: u8, e: i64| sletter(n, GenSymbol::z(i), e);
    let mut out = Vec::new();
    let mut push = |name: String, braid_idx: Vec<u8>, closed: Word| {
        let f = f_map(&positive(a, &braid_idx), n).unwrap();
        out.push((name, f, closed));
    };
    for i in 1..=n {
        let closed = if i == 1 {
            prod(&[wj(n, 1, 1), z(1, -1)])
        } else {
            prod(&[w_prod(n, i, 1), x_up(n, i), z(i, -1)])
        };
        push(alloc::format!("f(σ_1⋯σ_{})", 2 * i), range_up(1, 2 * i), closed);
    }
    for i in 0..=n {
        let closed = match i {
            0 => z(1, 1),
            1 => prod(&[wj(n, 1, 1), sletter(n, GenSymbol::y(1, 2), -1), z(2, 1)]),
            _ if i < n => prod(&[w_prod(n, i, 1), x_up(n, i), sletter(n, GenSymbol::y(i, i + 1), -1), z(i + 1, 1)]),
            _ => prod(&[w_prod(n, n, 1), x_up(n, n)]),
        };
        push(alloc::format!("f(σ_1⋯σ_{})", 2 * i + 1), range_up(1, 2 * i + 1), closed);
    }
    for i in 1..=n {
        let closed = if i == 1 {
            prod(&[z(1, -1), wj(n, 1, 1)])
        } else {
            prod(&[sletter(n, GenSymbol::zp(i), -1), z(i, 1), w_prod(n, i - 1, 1), x_down(n, i)])
        };
        push(alloc::format!("f(σ_{}⋯σ_1)", 2 * i), range_down(2 * i, 1), closed);
    }
    for i in 1..=n {
        let closed = if i < n {
            prod(&[z(i + 1, 1), w_prod(n, i, 1), x_down(n, i + 1)])
        } else {
            prod(&[w_prod(n, n, 1), x_down(n, n)])
        };
        push(alloc::format!("f(σ_{}⋯σ_1)", 2 * i + 1), range_down(2 * i + 1, 1), closed);
    }
    out
}

/// (w_1^4)^{i(i-1)/2} w_1² ⋯ w_i²
pub fn delta_sq_closed_form(n: u8, i: u8) -> Word {
    let k = (i as i64) * (i as i64 - 1) / 2;
    let mut v = alloc::vec![wj(n, 1, 4 * k)];
    v.extend((1..=i).map(|j| wj(n, j, 2)));
    prod(&v)
}

/// y_{1,2} y_{2,3}^{-1} ⋯ y_{n-1,n}^{(-1)^n}
pub fn f_beta_closed_form(n: u8) -> Word {
    let mut v = alloc::vec![Word::empty(st(n))];
    v.extend((1..n).map(|i| sletter(n, GenSymbol::y(i, i + 1), if i % 2 == 1 { 1 } else { -1 })));
    prod(&v)
}

/// Braid words of the kernel elements, with the strand count they live on.
pub fn kernel_elements(n: u8) -> Vec<(String, Word)> {
    let a = braid(2 * n + 2);
    let d = |k: u8| delta(a, k).unwrap();
    let mut out = Vec::new();
    for i in 1..=n {
        let w = d(2 * i + 1).pow(4).mul(&d(3).pow(-4 * (i as i64) * (i as i64))).unwrap();
        out.push((alloc::format!("Δ_{}^4 Δ_3^-{}", 2 * i + 1, 4 * i as u32 * i as u32), w));
    }
    let nn = n as i64;
    out.push((
        alloc::format!("Δ_{}² Δ_3^-{}", 2 * n + 2, 2 * nn * (nn + 1)),
        d(2 * n + 2).pow(2).mul(&d(3).pow(-2 * nn * (nn + 1))).unwrap(),
    ));
    let s3 = Word::letter(a, GenSymbol::sigma(3), 1).unwrap();
    out.push(("[σ_3, Δ_3^4]".to_string(), Word::commutator(&s3, &d(3).pow(4)).unwrap()));
    out.push(("Δ_5^4 Δ_3^-16".to_string(), d(5).pow(4).mul(&d(3).pow(-16)).unwrap()));
    out.push((alloc::format!("α_{}", n), alpha(n).unwrap()));
    out.push(("α_0".to_string(), alpha0(n).unwrap()));
    out
}

/// The closed forms of f(σ_1⋯σ_k) and f(σ_k⋯σ_1).
pub fn lemma_suite(n: u8, opt: SuiteOptions) -> Report {
    let stp = StPresentation::new(n);
    let mut rep = Report::new(alloc::format!("f(σ_1⋯σ_k) closed forms n={}", n));
    for (name, f, closed) in lemma_closed_forms(n) {
        rep.push(st_equal_item(&stp, alloc::format!("{} = {}", name, closed), &f, &closed, opt));
    }
    rep
}

/// f(Δ_{2i+1}²) closed forms and the charge of f(Δ_{2n+2}²).
pub fn delta_image_suite(n: u8, opt: SuiteOptions) -> Report {
    let stp = StPresentation::new(n);
    let a = braid(2 * n + 2);
    let mut rep = Report::new(alloc::format!("f(Δ²) n={}", n));
    for i in 1..=n {
        let f = f_map(&delta(a, 2 * i + 1).unwrap().pow(2), n).unwrap();
        let closed = delta_sq_closed_form(n, i);
        let name = alloc::format!("f(Δ_{}²) = (w_1^4)^{} w_1²⋯w_{}²", 2 * i + 1, i as u32 * (i as u32 - 1) / 2, i);
        rep.push(st_equal_item(&stp, name, &f, &closed, opt));
    }
    let f = f_map(&delta(a, 2 * n + 2).unwrap().pow(2), n).unwrap();
    let k = crate::golden::get(&alloc::format!("charge.delta.{}", n))
        .and_then(|e| e.value.parse().ok())
        .unwrap_or((n as i64) * (n as i64 + 1) / 2);
    rep.push(Item::new(alloc::format!("f̄(Δ_{}²) = I", 2 * n + 2), fbar(&delta(a, 2 * n + 2).unwrap().pow(2), n).unwrap().is_identity(), Tier::Exact));
    rep.push(charge_item(&stp, alloc::format!("charge f(Δ_{}²) = {}", 2 * n + 2, k), &f, k, opt));
    rep
}

/// Everything the text states about images: lemmas, Δ², β_n and the
/// kernel elements.
pub fn known_image_suite(n: u8, opt: SuiteOptions) -> Report {
    let stp = StPresentation::new(n);
    let mut rep = lemma_suite(n, opt);
    rep.title = alloc::format!("known images n={}", n);
    rep.extend(delta_image_suite(n, opt));
    let fb = f_map(&beta(n).unwrap(), n).unwrap();
    let closed = f_beta_closed_form(n);
    let name = alloc::format!("f(β_{}) = {}", n, closed);
    if opt.certified {
        let item = match weyl_push(&stp, &fb, opt.budget) {
            Ok(norm) if norm.word == closed => st_checker_item(&stp, name, Ok(norm.script)),
            Ok(norm) => Item::new(name, false, Tier::Certified).with_detail(alloc::format!("normalized to {}", norm.word)),
            Err(e) => Item::new(name, false, Tier::Certified).with_detail(e.to_string()),
        };
        rep.push(item);
    } else {
        rep.push(Item::new(name, pi(&fb) == pi(&closed), Tier::PiVerified));
    }
    rep.extend(kernel_suite(n, opt));
    rep
}

/// f of each kernel element is trivial: π = I and charge 0.
pub fn kernel_suite(n: u8, opt: SuiteOptions) -> Report {
    let stp = StPresentation::new(n);
    let mut rep = Report::new(alloc::format!("kernel elements n={}", n));
    for (name, w) in kernel_elements(n) {
        let f = f_map(&w, n).unwrap();
        let tag = if w.alphabet() == braid(2 * n + 2) { "f" } else { "f̂" };
        rep.push(charge_item(&stp, alloc::format!("{}({}) = 1", tag, name), &f, 0, opt));
    }
    rep
}

/// Purity and permutation facts about the distinguished braids.
pub fn braid_facts(n: u8) -> Report {
    let a = braid(2 * n + 2);
    let mut rep = Report::new(alloc::format!("braid facts n={}", n));
    rep.push(Item::new("γ_n is pure", is_pure(&gamma(n).unwrap()).unwrap(), Tier::Exact));
    rep.push(Item::new("α_n is pure", is_pure(&alpha(n).unwrap()).unwrap(), Tier::Exact));
    rep.push(Item::new("β_n² is pure", is_pure(&beta(n).unwrap().pow(2)).unwrap(), Tier::Exact));
    for i in 1..=2 * n + 1 {
        let p = is_pure(&a_element(i, n, AForm::Def).unwrap()).unwrap();
        rep.push(Item::new(alloc::format!("A_{{{},{}}} is pure", i, 2 * n + 2), p, Tier::Exact));
    }
    rep.push(Item::new(
        "f̄(Δ_{2n+2}²) = I",
        fbar(&delta(a, 2 * n + 2).unwrap().pow(2), n).unwrap().is_identity(),
        Tier::Exact,
    ));
    if n == 2 {
        let j = j_iso(&alpha0(2).unwrap()).unwrap();
        rep.push(Item::new("j(α_0) = α_2", j == alpha(2).unwrap(), Tier::Exact));
    }
    rep
}

/// The positive lift of the longest element of W(Γ_7) (type E_7): the
/// bipartite Coxeter word (σ_0σ_1σ_3σ_5 · σ_2σ_4σ_6) raised to h/2 = 9.
pub fn e7_longest_lift() -> Word {
    let a = Alphabet::Artin { k: 7 };
    positive(a, &[0, 1, 3, 5, 2, 4, 6]).pow(9)
}

/// Reflection representation of W(Γ_k): the image of a word in the
/// simple-root basis, with σ_i acting as s_i.
pub fn coxeter_image(w: &Word) -> Result<Vec<Vec<i64>>, String> {
    let k = match w.alphabet() {
        Alphabet::Artin { k } => k as usize,
        Alphabet::Braid { strands } => strands as usize,
        Alphabet::Steinberg { .. } => return Err("not a braid or Artin word".to_string()),
    };
    let a = w.alphabet();
    let base = if matches!(a, Alphabet::Artin { .. }) { 0 } else { 1 };
    let dim = k - base;
    let cartan = |i: usize, j: usize| -> i64 {
        if i == j {
            2
        } else if a.adjacent((i + base) as u8, (j + base) as u8) {
            -1
        } else {
            0
        }
    };
    // s_i(α_j) = α_j - A_{ij} α_i, as a matrix acting on columns.
    let refl = |i: usize| {
        let mut m: Vec<Vec<i64>> = (0..dim).map(|r| (0..dim).map(|c| (r == c) as i64).collect()).collect();
        for j in 0..dim {
            m[i][j] -= cartan(i, j);
        }
        m
    };
    let mul = |x: &Vec<Vec<i64>>, y: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
        (0..dim).map(|r| (0..dim).map(|c| (0..dim).map(|t| x[r][t] * y[t][c]).sum()).collect()).collect()
    };
    let mut m: Vec<Vec<i64>> = (0..dim).map(|r| (0..dim).map(|c| (r == c) as i64).collect()).collect();
    for u in w.units() {
        // s_i is an involution, so the sign of the letter does not matter.
        m = mul(&m, &refl(u.gen() - base));
    }
    Ok(m)
}

#[derive(Clone, Debug)]
pub struct W0Attempt {
    pub word: Word,
    pub image_is_minus_identity: bool,
    pub pi_identity: bool,
    /// Present only with a replayed certificate.
    pub charge: Option<i64>,
    pub detail: String,
}

/// Lift w̄_0, check it maps to -1 in W(E_7) and to I in Sp_6(Z), then try
/// to certify k with f̂_7(w̄_0) = w_1^{4k}.
pub fn w0_charge_attempt(budget: usize) -> W0Attempt {
    let word = e7_longest_lift();
    let m = coxeter_image(&word).unwrap();
    let minus = m.iter().enumerate().all(|(r, row)| row.iter().enumerate().all(|(c, &x)| x == if r == c { -1 } else { 0 }));
    let st3 = StPresentation::new(3);
    let f = f_map(&word, 3).unwrap();
    let pi_identity = pi(&f).is_identity();
    let (charge, detail) = if !pi_identity {
        (None, "π(f̂(w̄_0)) ≠ I".to_string())
    } else {
        match charge_extract(&st3, &f, budget) {
            Ok(ch) => {
                let oracle = |w: &Word| pi(w);
                let rep = check_script(&st3, &ch.script, Tier::Certified, Some(&oracle));
                if rep.pass {
                    (Some(ch.k), alloc::format!("certificate of {} steps replayed", ch.script.steps.len()))
                } else {
                    (None, alloc::format!("certificate failed to replay: {:?}", rep.error))
                }
            }
            Err(e) => (None, e.to_string()),
        }
    };
    W0Attempt { word, image_is_minus_identity: minus, pi_identity, charge, detail }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(k: u8) -> Alphabet {
        braid(k)
    }

    #[test]
    fn deltas() {
        assert_eq!(delta(b(6), 2).unwrap(), Word::parse(b(6), "s1").unwrap());
        assert_eq!(delta(b(6), 3).unwrap(), Word::parse(b(6), "s1 s2 s1").unwrap());
        for k in 2..=8u8 {
            assert_eq!(delta(b(8), k).unwrap().len(), (k as usize) * (k as usize - 1) / 2);
        }
        assert!(delta(b(4), 5).is_err());
    }

    #[test]
    fn distinguished_words() {
        assert_eq!(beta(2).unwrap(), Word::parse(b(6), "s1 s3^-1 s5").unwrap());
        assert_eq!(gamma(2).unwrap(), Word::parse(b(6), "s1 s2 s1 s1 s2 s1").unwrap());
        for n in 2..=5 {
            assert!(is_pure(&alpha(n).unwrap()).unwrap());
            assert!(is_pure(&gamma(n).unwrap()).unwrap());
        }
        assert!(beta(1).is_err());
        assert_eq!(j_iso(&alpha0(2).unwrap()).unwrap(), alpha(2).unwrap());
        assert_eq!(j_iso(&Word::parse(Alphabet::Artin { k: 5 }, "s0").unwrap()).unwrap(), Word::parse(b(6), "s5").unwrap());
    }

    #[test]
    fn permutations() {
        let p = perm(&Word::parse(b(4), "s1").unwrap()).unwrap();
        assert_eq!(p.to_string(), "(1 2)");
        let p = perm(&Word::parse(b(4), "s1 s2 s1").unwrap()).unwrap();
        assert_eq!(p.to_string(), "(1 3)");
    }

    #[test]
    fn a_forms() {
        let n = 2;
        assert_eq!(a_element(5, n, AForm::Def).unwrap(), Word::parse(b(6), "s5^2").unwrap());
        assert_eq!(a_element(4, n, AForm::Def).unwrap(), Word::parse(b(6), "s5 s4^2 s5^-1").unwrap());
        assert_eq!(a_element(4, n, AForm::Expr).unwrap(), Word::parse(b(6), "s4^-1 s5^2 s4").unwrap());
        let rep = a_equivalence_check(2, true);
        assert!(rep.all_pass(), "{}", rep);
    }

    #[test]
    fn f_images() {
        let n = 2;
        let s = Alphabet::Steinberg { rank: 2 };
        let f = |t: &str| f_map(&Word::parse(b(6), t).unwrap(), n).unwrap();
        assert_eq!(f("s2"), Word::parse(s, "zp(1)^-1").unwrap());
        assert_eq!(f("s3"), Word::parse(s, "z(1) z(2) y(1,2)^-1").unwrap());
        assert_eq!(f("s1 s2 s1"), Word::parse(s, "z(1) zp(1)^-1 z(1)").unwrap());
        for i in 1..=5 {
            let w = Word::parse(b(6), &alloc::format!("s{}", i)).unwrap();
            assert_eq!(pi(&f_map(&w, n).unwrap()), fbar(&w, n).unwrap());
        }
    }

    #[test]
    fn acampo() {
        for n in 2..=3 {
            let rep = acampo_check(n);
            let (lit, mir): (Vec<&Item>, Vec<&Item>) =
                rep.items[2..].iter().partition(|i| !i.name.ends_with("^-1"));
            assert!(rep.items[0].pass && rep.items[1].pass);
            // The monodromy realises the mirror image of f̄.
            assert!(mir.iter().all(|i| i.pass));
            assert!(lit.iter().all(|i| !i.pass));
        }
    }

    #[test]
    fn delta_identity_scripts() {
        let rep = delta_sq_identity_check(2, 5);
        assert!(rep.all_pass(), "{}", rep);
    }

    #[test]
    fn relation_images_n2() {
        let opt = SuiteOptions { certified: true, budget: 100_000 };
        let rep = braid_hom_suite(2, false, opt);
        assert!(rep.all_pass(), "{}", rep);
        let rep = braid_hom_suite(2, true, opt);
        assert!(rep.all_pass(), "{}", rep);
    }

    #[test]
    fn images_n2() {
        let opt = SuiteOptions { certified: true, budget: 100_000 };
        let rep = known_image_suite(2, opt);
        assert!(rep.all_pass(), "{}", rep);
    }

    #[test]
    fn e7_lift_is_central() {
        let m = coxeter_image(&e7_longest_lift()).unwrap();
        for (r, row) in m.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                assert_eq!(x, if r == c { -1 } else { 0 });
            }
        }
    }
}
