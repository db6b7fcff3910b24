//! Words over braid, Artin and Steinberg alphabets.
//!
//! A [`Word`] is stored run-length encoded and is always freely reduced.
//! The rewriting layers work on [`Unit`] letters (one generator, exponent
//! ±1) since script positions count unit letters.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::root::Root;

/// Generator family tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Sigma,
    X,
    Y,
    Yp,
    Z,
    Zp,
}

/// A generator symbol. Indices are 1-based for Steinberg letters; braid
/// letters carry their subscript in `i` (σ_0 is the extra Artin letter).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenSymbol {
    pub family: Family,
    pub i: u8,
    pub j: u8,
}

impl GenSymbol {
    pub fn sigma(i: u8) -> Self {
        GenSymbol { family: Family::Sigma, i, j: 0 }
    }
    pub fn x(i: u8, j: u8) -> Self {
        GenSymbol { family: Family::X, i, j }
    }
    /// y_{i,j}; stored with indices in (min, max) order.
    pub fn y(i: u8, j: u8) -> Self {
        GenSymbol { family: Family::Y, i: i.min(j), j: i.max(j) }
    }
    pub fn yp(i: u8, j: u8) -> Self {
        GenSymbol { family: Family::Yp, i: i.min(j), j: i.max(j) }
    }
    pub fn z(i: u8) -> Self {
        GenSymbol { family: Family::Z, i, j: 0 }
    }
    pub fn zp(i: u8) -> Self {
        GenSymbol { family: Family::Zp, i, j: 0 }
    }

    pub fn is_steinberg(&self) -> bool {
        self.family != Family::Sigma
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Sigma => write!(f, "s{}", self.i),
            Family::X => write!(f, "x({},{})", self.i, self.j),
            Family::Y => write!(f, "y({},{})", self.i, self.j),
            Family::Yp => write!(f, "yp({},{})", self.i, self.j),
            Family::Z => write!(f, "z({})", self.i),
            Family::Zp => write!(f, "zp({})", self.i),
        }
    }
}

/// The alphabet a word lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// Braid group on `strands` strands: σ_1..σ_{strands-1}.
    Braid { strands: u8 },
    /// Artin group of type Γ_k: σ_0..σ_{k-1}, σ_0 braided with σ_4.
    Artin { k: u8 },
    /// Steinberg group St(C_n, Z).
    Steinberg { rank: u8 },
}

impl Alphabet {
    /// Number of generators; generator ids run over `0..gen_count()`.
    pub fn gen_count(&self) -> usize {
        match *self {
            Alphabet::Braid { strands } => strands as usize,
            Alphabet::Artin { k } => k as usize,
            Alphabet::Steinberg { rank } => 2 * (rank as usize) * (rank as usize),
        }
    }

    pub fn contains(&self, g: &GenSymbol) -> bool {
        match *self {
            Alphabet::Braid { strands } => g.family == Family::Sigma && g.i >= 1 && g.i < strands,
            Alphabet::Artin { k } => g.family == Family::Sigma && g.i < k,
            Alphabet::Steinberg { rank } => match g.family {
                Family::Sigma => false,
                Family::Z | Family::Zp => g.i >= 1 && g.i <= rank,
                Family::X => g.i >= 1 && g.j >= 1 && g.i <= rank && g.j <= rank && g.i != g.j,
                Family::Y | Family::Yp => g.i >= 1 && g.i < g.j && g.j <= rank,
            },
        }
    }

    /// Dense id of a generator of this alphabet.
    pub fn gen_id(&self, g: &GenSymbol) -> usize {
        debug_assert!(self.contains(g));
        match *self {
            Alphabet::Braid { .. } | Alphabet::Artin { .. } => g.i as usize,
            Alphabet::Steinberg { rank } => Root::of_generator(g).id(rank),
        }
    }

    pub fn gen_at(&self, id: usize) -> GenSymbol {
        match *self {
            Alphabet::Braid { .. } | Alphabet::Artin { .. } => GenSymbol::sigma(id as u8),
            Alphabet::Steinberg { rank } => Root::from_id(id, rank).generator(),
        }
    }

    /// Whether two braid or Artin generators are joined by an edge.
    pub fn adjacent(&self, a: u8, b: u8) -> bool {
        let (lo, hi) = (a.min(b), a.max(b));
        match *self {
            Alphabet::Braid { .. } => hi == lo + 1,
            Alphabet::Artin { .. } => (lo >= 1 && hi == lo + 1) || (lo == 0 && hi == 4),
            Alphabet::Steinberg { .. } => false,
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Alphabet::Braid { strands } => write!(f, "braid {}", strands),
            Alphabet::Artin { k } => write!(f, "artin {}", k),
            Alphabet::Steinberg { rank } => write!(f, "steinberg {}", rank),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordError {
    OutOfRank { symbol: GenSymbol, alphabet: Alphabet },
    AlphabetMismatch { left: Alphabet, right: Alphabet },
    Parse(String),
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::OutOfRank { symbol, alphabet } => {
                write!(f, "letter {} is not in the {} alphabet", symbol, alphabet)
            }
            WordError::AlphabetMismatch { left, right } => {
                write!(f, "alphabet mismatch: {} vs {}", left, right)
            }
            WordError::Parse(msg) => write!(f, "parse error: {}", msg),
        }
    }
}

/// A unit letter: generator id with a sign bit in the low bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Unit(pub u32);

impl Unit {
    #[inline]
    pub fn new(gen: usize, negative: bool) -> Self {
        Unit(((gen as u32) << 1) | negative as u32)
    }
    #[inline]
    pub fn gen(self) -> usize {
        (self.0 >> 1) as usize
    }
    #[inline]
    pub fn is_neg(self) -> bool {
        self.0 & 1 == 1
    }
    #[inline]
    pub fn inv(self) -> Self {
        Unit(self.0 ^ 1)
    }
    #[inline]
    pub fn sign(self) -> i64 {
        if self.is_neg() {
            -1
        } else {
            1
        }
    }
}

/// Free reduction of a unit sequence.
pub fn reduce_units(units: &[Unit]) -> Vec<Unit> {
    let mut out: Vec<Unit> = Vec::with_capacity(units.len());
    for &u in units {
        if out.last() == Some(&u.inv()) {
            out.pop();
        } else {
            out.push(u);
        }
    }
    out
}

pub fn invert_units(units: &[Unit]) -> Vec<Unit> {
    units.iter().rev().map(|u| u.inv()).collect()
}

/// A freely reduced word, run-length encoded.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<(GenSymbol, i64)>,
}

impl Word {
    pub fn empty(alphabet: Alphabet) -> Self {
        Word { alphabet, letters: Vec::new() }
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce(alphabet: Alphabet, raw: &[(GenSymbol, i64)]) -> Result<Self, WordError> {
        let mut letters: Vec<(GenSymbol, i64)> = Vec::with_capacity(raw.len());
        for &(g, e) in raw {
            if !alphabet.contains(&g) {
                return Err(WordError::OutOfRank { symbol: g, alphabet });
            }
            if e == 0 {
                continue;
            }
            match letters.last_mut() {
                Some((h, f)) if *h == g => {
                    *f += e;
                    if *f == 0 {
                        letters.pop();
                    }
                }
                _ => letters.push((g, e)),
            }
        }
        Ok(Word { alphabet, letters })
    }

    pub fn letter(alphabet: Alphabet, g: GenSymbol, e: i64) -> Result<Self, WordError> {
        Word::reduce(alphabet, &[(g, e)])
    }

    pub fn from_units(alphabet: Alphabet, units: &[Unit]) -> Self {
        let raw: Vec<(GenSymbol, i64)> =
            units.iter().map(|u| (alphabet.gen_at(u.gen()), u.sign())).collect();
        Word::reduce(alphabet, &raw).expect("unit ids come from the alphabet")
    }

    pub fn units(&self) -> Vec<Unit> {
        let mut out = Vec::with_capacity(self.len());
        for &(g, e) in &self.letters {
            let id = self.alphabet.gen_id(&g);
            for _ in 0..e.unsigned_abs() {
                out.push(Unit::new(id, e < 0));
            }
        }
        out
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[(GenSymbol, i64)] {
        &self.letters
    }

    /// Length in unit letters.
    pub fn len(&self) -> usize {
        self.letters.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn same_alphabet(&self, other: &Word) -> Result<(), WordError> {
        if self.alphabet != other.alphabet {
            return Err(WordError::AlphabetMismatch { left: self.alphabet, right: other.alphabet });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Word) -> Result<Word, WordError> {
        self.same_alphabet(other)?;
        let mut raw = self.letters.clone();
        raw.extend_from_slice(&other.letters);
        Word::reduce(self.alphabet, &raw)
    }

    pub fn invert(&self) -> Word {
        let letters = self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect();
        Word { alphabet: self.alphabet, letters }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut raw = Vec::new();
        for _ in 0..k.unsigned_abs() {
            raw.extend_from_slice(&base.letters);
        }
        Word::reduce(self.alphabet, &raw).expect("same alphabet")
    }

    /// g · a · g^{-1}
    pub fn conjugate(a: &Word, g: &Word) -> Result<Word, WordError> {
        g.mul(a)?.mul(&g.invert())
    }

    /// [a, b] = a b a^{-1} b^{-1}
    pub fn commutator(a: &Word, b: &Word) -> Result<Word, WordError> {
        a.mul(b)?.mul(&a.invert())?.mul(&b.invert())
    }

    /// Parse the text grammar, e.g. `s1 s2 s1^-1` or `z(1) zp(1)^-1 z(1)`.
    pub fn parse(alphabet: Alphabet, text: &str) -> Result<Word, WordError> {
        let mut raw = Vec::new();
        for tok in text.split_whitespace() {
            raw.push(parse_letter(tok)?);
        }
        Word::reduce(alphabet, &raw)
    }

    /// Replace each letter by a word; exponents are applied as powers.
    pub fn substitute<F>(&self, target: Alphabet, mut image: F) -> Result<Word, WordError>
    where
        F: FnMut(&GenSymbol) -> Result<Word, WordError>,
    {
        let mut raw = Vec::new();
        for &(g, e) in &self.letters {
            let w = image(&g)?;
            if w.alphabet != target {
                return Err(WordError::AlphabetMismatch { left: w.alphabet, right: target });
            }
            let w = if e < 0 { w.invert() } else { w };
            for _ in 0..e.unsigned_abs() {
                raw.extend_from_slice(&w.letters);
            }
        }
        Word::reduce(target, &raw)
    }

    /// Same letters viewed over a larger alphabet.
    pub fn widen(&self, target: Alphabet) -> Result<Word, WordError> {
        Word::reduce(target, &self.letters)
    }
}

/// Parse one letter token such as `x(1,2)^-3` or `s0`.
pub fn parse_letter(tok: &str) -> Result<(GenSymbol, i64), WordError> {
    let bad = || WordError::Parse(alloc::format!("bad letter `{}`", tok));
    let (body, exp) = match tok.rfind('^') {
        Some(p) => {
            let e: i64 = tok[p + 1..].parse().map_err(|_| bad())?;
            (&tok[..p], e)
        }
        None => (tok, 1),
    };
    let num = |s: &str| -> Result<u8, WordError> { s.trim().parse::<u8>().map_err(|_| bad()) };
    let sym = if let Some(rest) = body.strip_prefix('s') {
        GenSymbol::sigma(num(rest)?)
    } else {
        let open = body.find('(').ok_or_else(bad)?;
        if !body.ends_with(')') {
            return Err(bad());
        }
        let name = &body[..open];
        let inner = &body[open + 1..body.len() - 1];
        let idx: Vec<&str> = inner.split(',').collect();
        match (name, idx.len()) {
            ("x", 2) => {
                let (i, j) = (num(idx[0])?, num(idx[1])?);
                if i == j {
                    return Err(bad());
                }
                GenSymbol::x(i, j)
            }
            ("y", 2) | ("yp", 2) => {
                let (i, j) = (num(idx[0])?, num(idx[1])?);
                if i == j {
                    return Err(bad());
                }
                if name == "y" {
                    GenSymbol::y(i, j)
                } else {
                    GenSymbol::yp(i, j)
                }
            }
            ("z", 1) => GenSymbol::z(num(idx[0])?),
            ("zp", 1) => GenSymbol::zp(num(idx[0])?),
            _ => return Err(bad()),
        }
    };
    Ok((sym, exp))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(g, e) in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", g)?;
            } else {
                write!(f, "{}^{}", g, e)?;
            }
        }
        Ok(())
    }
}

/// Text form of a word; the empty word prints as `1`.
pub fn word_text(w: &Word) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        w.to_string()
    }
}

/// Parse word text, accepting `1` for the empty word.
pub fn parse_word_text(alphabet: Alphabet, text: &str) -> Result<Word, WordError> {
    let t = text.trim();
    if t == "1" || t.is_empty() {
        Ok(Word::empty(alphabet))
    } else {
        Word::parse(alphabet, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const B6: Alphabet = Alphabet::Braid { strands: 6 };

    #[test]
    fn cancels_and_merges() {
        let s = GenSymbol::sigma;
        assert!(Word::reduce(B6, &[(s(1), 1), (s(1), -1)]).unwrap().is_empty());
        let w = Word::reduce(B6, &[(s(1), 1), (s(2), 1), (s(2), 1), (s(2), -1)]).unwrap();
        assert_eq!(w.to_string(), "s1 s2");
        let st = Alphabet::Steinberg { rank: 2 };
        let w = Word::reduce(st, &[(GenSymbol::z(1), 1), (GenSymbol::z(1), 1)]).unwrap();
        assert_eq!(w.letters(), &[(GenSymbol::z(1), 2)]);
    }

    #[test]
    fn parse_roundtrip() {
        let st = Alphabet::Steinberg { rank: 3 };
        let w = Word::parse(st, "z(1) zp(1)^-1 z(1) y(2,1) yp(3,1)^2 x(3,2)").unwrap();
        assert_eq!(w.to_string(), "z(1) zp(1)^-1 z(1) y(1,2) yp(1,3)^2 x(3,2)");
        assert_eq!(Word::parse(st, &w.to_string()).unwrap(), w);
        assert!(Word::parse(st, "x(1,1)").is_err());
        assert!(Word::parse(st, "z(4)").is_err());
    }

    #[test]
    fn inverse_and_commutator() {
        let w = Word::parse(B6, "s1 s2").unwrap();
        assert_eq!(w.invert().to_string(), "s2^-1 s1^-1");
        assert!(Word::commutator(&w, &w).unwrap().is_empty());
        let e = Word::empty(B6);
        assert_eq!(Word::conjugate(&w, &e).unwrap(), w);
        assert!(Word::commutator(&w, &e).unwrap().is_empty());
    }

    #[test]
    fn units_roundtrip() {
        let st = Alphabet::Steinberg { rank: 2 };
        let w = Word::parse(st, "z(1)^2 x(2,1)^-1 yp(1,2)").unwrap();
        let u = w.units();
        assert_eq!(u.len(), 4);
        assert_eq!(Word::from_units(st, &u), w);
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = Word::parse(B6, "s1").unwrap();
        let b = Word::parse(Alphabet::Braid { strands: 4 }, "s1").unwrap();
        assert!(matches!(a.mul(&b), Err(WordError::AlphabetMismatch { .. })));
    }
}
