//! The root system C_n and its correspondence with Steinberg generators.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::word::{Family, GenSymbol};

/// A root of C_n. Short roots `si·e_i + sj·e_j` keep `i < j`; long roots
/// are `2s·e_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Root {
    Short { i: u8, si: i8, j: u8, sj: i8 },
    Long { i: u8, s: i8 },
}

impl Root {
    pub fn short(i: u8, si: i8, j: u8, sj: i8) -> Root {
        if i < j {
            Root::Short { i, si, j, sj }
        } else {
            Root::Short { i: j, si: sj, j: i, sj: si }
        }
    }

    pub fn long(i: u8, s: i8) -> Root {
        Root::Long { i, s }
    }

    /// All 2n² roots in id order.
    pub fn all(n: u8) -> Vec<Root> {
        (0..2 * (n as usize) * (n as usize)).map(|id| Root::from_id(id, n)).collect()
    }

    pub fn is_long(&self) -> bool {
        matches!(self, Root::Long { .. })
    }

    /// Nonzero coordinates as (index, value) pairs.
    pub fn terms(&self) -> ([(u8, i64); 2], usize) {
        match *self {
            Root::Short { i, si, j, sj } => ([(i, si as i64), (j, sj as i64)], 2),
            Root::Long { i, s } => ([(i, 2 * s as i64), (0, 0)], 1),
        }
    }

    pub fn coeff(&self, k: u8) -> i64 {
        let (t, m) = self.terms();
        t[..m].iter().filter(|(i, _)| *i == k).map(|(_, v)| *v).sum()
    }

    /// Dense coordinate vector of length n.
    pub fn coords(&self, n: u8) -> Vec<i64> {
        let mut v = alloc::vec![0i64; n as usize];
        let (t, m) = self.terms();
        for &(i, c) in &t[..m] {
            v[i as usize - 1] += c;
        }
        v
    }

    pub fn max_index(&self) -> u8 {
        match *self {
            Root::Short { j, .. } => j,
            Root::Long { i, .. } => i,
        }
    }

    pub fn inner(&self, other: &Root) -> i64 {
        let (a, ma) = self.terms();
        let (b, mb) = other.terms();
        let mut s = 0;
        for &(i, x) in &a[..ma] {
            for &(j, y) in &b[..mb] {
                if i == j {
                    s += x * y;
                }
            }
        }
        s
    }

    pub fn neg(&self) -> Root {
        match *self {
            Root::Short { i, si, j, sj } => Root::Short { i, si: -si, j, sj: -sj },
            Root::Long { i, s } => Root::Long { i, s: -s },
        }
    }

    /// The root with the given coordinates, if there is one.
    pub fn from_coords(coords: &[(u8, i64)]) -> Option<Root> {
        let nz: Vec<(u8, i64)> = {
            let mut acc: Vec<(u8, i64)> = Vec::new();
            for &(i, c) in coords {
                match acc.iter_mut().find(|(k, _)| *k == i) {
                    Some(e) => e.1 += c,
                    None => acc.push((i, c)),
                }
            }
            acc.into_iter().filter(|&(_, c)| c != 0).collect()
        };
        match nz.as_slice() {
            [(i, c)] if c.abs() == 2 => Some(Root::long(*i, c.signum() as i8)),
            [(i, a), (j, b)] if a.abs() == 1 && b.abs() == 1 => {
                Some(Root::short(*i, *a as i8, *j, *b as i8))
            }
            _ => None,
        }
    }

    /// a·self + b·other, when that is a root.
    pub fn combine(&self, a: i64, other: &Root, b: i64) -> Option<Root> {
        let (s, ms) = self.terms();
        let (o, mo) = other.terms();
        let mut c: Vec<(u8, i64)> = Vec::new();
        for &(i, v) in &s[..ms] {
            c.push((i, a * v));
        }
        for &(i, v) in &o[..mo] {
            c.push((i, b * v));
        }
        Root::from_coords(&c)
    }

    /// s_γ(δ) = δ − 2(γ,δ)/(γ,γ)·γ; the coefficient is always an integer.
    pub fn reflect(gamma: &Root, delta: &Root) -> Root {
        let k = 2 * gamma.inner(delta) / gamma.inner(gamma);
        delta.combine(1, gamma, -k).expect("reflection of a root is a root")
    }

    pub fn id(&self, n: u8) -> usize {
        let n = n as usize;
        match *self {
            Root::Long { i, s } => {
                if s > 0 {
                    i as usize - 1
                } else {
                    n + i as usize - 1
                }
            }
            Root::Short { i, si, j, sj } => {
                let (i, j) = (i as usize, j as usize);
                let p = (i - 1) * n - (i - 1) * i / 2 + (j - i - 1);
                2 * n + 4 * p + 2 * (si < 0) as usize + (sj < 0) as usize
            }
        }
    }

    pub fn from_id(id: usize, n: u8) -> Root {
        let nn = n as usize;
        if id < nn {
            return Root::long(id as u8 + 1, 1);
        }
        if id < 2 * nn {
            return Root::long((id - nn) as u8 + 1, -1);
        }
        let r = id - 2 * nn;
        let (mut p, combo) = (r / 4, r % 4);
        for i in 1..nn {
            let row = nn - i;
            if p < row {
                let j = i + 1 + p;
                let si = if combo & 2 != 0 { -1 } else { 1 };
                let sj = if combo & 1 != 0 { -1 } else { 1 };
                return Root::Short { i: i as u8, si, j: j as u8, sj };
            }
            p -= row;
        }
        panic!("root id {} out of range for rank {}", id, n)
    }

    /// x_{i,j} ↔ e_i−e_j, y ↔ e_i+e_j, y′ ↔ −e_i−e_j, z ↔ 2e_i, z′ ↔ −2e_i.
    pub fn generator(&self) -> GenSymbol {
        match *self {
            Root::Long { i, s } => {
                if s > 0 {
                    GenSymbol::z(i)
                } else {
                    GenSymbol::zp(i)
                }
            }
            Root::Short { i, si, j, sj } => match (si, sj) {
                (1, 1) => GenSymbol::y(i, j),
                (-1, -1) => GenSymbol::yp(i, j),
                (1, -1) => GenSymbol::x(i, j),
                _ => GenSymbol::x(j, i),
            },
        }
    }

    pub fn of_generator(g: &GenSymbol) -> Root {
        match g.family {
            Family::X => Root::short(g.i, 1, g.j, -1),
            Family::Y => Root::short(g.i, 1, g.j, 1),
            Family::Yp => Root::short(g.i, -1, g.j, -1),
            Family::Z => Root::long(g.i, 1),
            Family::Zp => Root::long(g.i, -1),
            Family::Sigma => panic!("braid letters have no root"),
        }
    }

    /// Parse `e1-e2`, `e1+e2`, `-e1-e2`, `2e3`, `-2e1`.
    pub fn parse(text: &str) -> Result<Root, String> {
        let t = text.trim();
        let err = || alloc::format!("bad root `{}`", text);
        let mut terms: Vec<(u8, i64)> = Vec::new();
        let bytes = t.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = 1;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if pos > 0 {
                return Err(err());
            }
            let mut coef = 1;
            if pos < bytes.len() && bytes[pos] == b'2' {
                coef = 2;
                pos += 1;
            }
            if pos >= bytes.len() || bytes[pos] != b'e' {
                return Err(err());
            }
            pos += 1;
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let idx: u8 = t[start..pos].parse().map_err(|_| err())?;
            if idx == 0 {
                return Err(err());
            }
            terms.push((idx, sign * coef));
        }
        Root::from_coords(&terms).ok_or_else(err)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Root::Long { i, s } => write!(f, "{}2e{}", if s < 0 { "-" } else { "" }, i),
            Root::Short { i, si, j, sj } => write!(
                f,
                "{}e{}{}e{}",
                if si < 0 { "-" } else { "" },
                i,
                if sj < 0 { "-" } else { "+" },
                j
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn reflections() {
        let r = |s: &str| Root::parse(s).unwrap();
        assert_eq!(Root::reflect(&r("2e1"), &r("2e1")), r("-2e1"));
        assert_eq!(Root::reflect(&r("2e1"), &r("e1-e2")), r("-e1-e2"));
        assert_eq!(Root::reflect(&r("e1-e2"), &r("2e1")), r("2e2"));
    }

    #[test]
    fn ids_are_a_bijection() {
        for n in 2..=6u8 {
            let all = Root::all(n);
            assert_eq!(all.len(), 2 * n as usize * n as usize);
            for (k, r) in all.iter().enumerate() {
                assert_eq!(r.id(n), k);
                assert_eq!(Root::of_generator(&r.generator()), *r);
            }
        }
    }

    #[test]
    fn text_form() {
        for s in ["e1-e2", "e1+e2", "-e1-e3", "-e1+e2", "2e3", "-2e1"] {
            assert_eq!(Root::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(Root::parse("e1+e2").unwrap().generator(), GenSymbol::y(1, 2));
        assert_eq!(Root::of_generator(&GenSymbol::zp(3)), Root::long(3, -1));
        assert!(Root::parse("e1").is_err());
        assert!(Root::parse("e1-e1").is_err());
    }
}
