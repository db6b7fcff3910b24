//! Exact integer matrices for Sp_{2n}(Z): generator matrices, the form
//! J_{2n}, evaluation of Steinberg words (the projection π) and the
//! A'Campo monodromy matrices.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::report::{Item, Report};
use crate::root::Root;
use crate::word::{Alphabet, Family, GenSymbol, Unit, Word};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZMatrix {
    dim: usize,
    data: Vec<BigInt>,
}

impl ZMatrix {
    pub fn zero(dim: usize) -> Self {
        ZMatrix { dim, data: alloc::vec![BigInt::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = ZMatrix::zero(dim);
        for i in 0..dim {
            m.data[i * dim + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let dim = rows.len();
        let mut m = ZMatrix::zero(dim);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), dim, "square matrix expected");
            for (j, &v) in r.iter().enumerate() {
                m.data[i * dim + j] = BigInt::from(v);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.dim + j] = v;
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let v = self.get(i, j);
                if i == j {
                    v.is_one()
                } else {
                    v.is_zero()
                }
            })
        })
    }

    pub fn mul(&self, other: &ZMatrix) -> ZMatrix {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = ZMatrix::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * d + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> ZMatrix {
        let d = self.dim;
        let mut out = ZMatrix::zero(d);
        for i in 0..d {
            for j in 0..d {
                out.data[j * d + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn neg(&self) -> ZMatrix {
        ZMatrix { dim: self.dim, data: self.data.iter().map(|v| -v).collect() }
    }

    pub fn sub(&self, other: &ZMatrix) -> ZMatrix {
        ZMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// Column operation: col[to] += c · col[from].
    fn add_col(&mut self, from: usize, to: usize, c: i64) {
        let d = self.dim;
        for r in 0..d {
            let v = &self.data[r * d + from] * c;
            if !v.is_zero() {
                self.data[r * d + to] += v;
            }
        }
    }

    /// Right multiplication by I + c·N for a generator with nilpotent part N.
    fn right_mul_generator(&mut self, terms: &[(usize, usize, i64)], c: i64) {
        for &(a, b, v) in terms {
            self.add_col(a, b, v * c);
        }
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.data.iter().map(|v| v.abs()).max().unwrap_or_default()
    }

    /// Row-major decimal strings (the JSON matrix form).
    pub fn rows_decimal(&self) -> Vec<Vec<String>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| alloc::format!("{}", self.get(i, j))).collect())
            .collect()
    }

    /// Inverse of a symplectic matrix, M^{-1} = −J Mᵀ J.
    pub fn symplectic_inverse(&self) -> ZMatrix {
        let j = j_form(self.dim / 2);
        j.mul(&self.transpose()).mul(&j).neg()
    }
}

impl fmt::Debug for ZMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> =
                (0..self.dim).map(|j| alloc::format!("{}", self.get(i, j))).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// J_{2n} = [[0, I], [−I, 0]].
pub fn j_form(n: usize) -> ZMatrix {
    let mut m = ZMatrix::zero(2 * n);
    for i in 0..n {
        m.set(i, n + i, BigInt::one());
        m.set(n + i, i, -BigInt::one());
    }
    m
}

pub fn is_symplectic(m: &ZMatrix) -> bool {
    if m.dim % 2 != 0 {
        return false;
    }
    let j = j_form(m.dim / 2);
    m.transpose().mul(&j).mul(m) == j
}

/// Nonzero entries (row, col, value) of the nilpotent part of a generator
/// matrix, 0-based.
pub fn generator_terms(g: &GenSymbol, n: u8) -> Vec<(usize, usize, i64)> {
    let n = n as usize;
    let (i, j) = (g.i as usize - 1, g.j.max(1) as usize - 1);
    match g.family {
        Family::X => alloc::vec![(i, j, 1), (j + n, i + n, -1)],
        Family::Y => alloc::vec![(i, j + n, 1), (j, i + n, 1)],
        Family::Yp => alloc::vec![(j + n, i, 1), (i + n, j, 1)],
        Family::Z => alloc::vec![(i, i + n, 1)],
        Family::Zp => alloc::vec![(i + n, i, 1)],
        Family::Sigma => panic!("no matrix for braid letters"),
    }
}

/// X_{i,j}, Y_{i,j}, Y′_{i,j}, Z_i or Z′_i.
pub fn generator_matrix(g: &GenSymbol, n: u8) -> ZMatrix {
    let mut m = ZMatrix::identity(2 * n as usize);
    for (a, b, v) in generator_terms(g, n) {
        let cur = m.get(a, b) + v;
        m.set(a, b, cur);
    }
    m
}

/// Matrix of a root generator raised to `e`; generators are I + N with N² = 0.
pub fn generator_power(g: &GenSymbol, n: u8, e: i64) -> ZMatrix {
    let mut m = ZMatrix::identity(2 * n as usize);
    m.right_mul_generator(&generator_terms(g, n), e);
    m
}

/// π on Steinberg words.
pub fn eval_word(w: &Word) -> ZMatrix {
    let n = match w.alphabet() {
        Alphabet::Steinberg { rank } => rank,
        other => panic!("eval_word needs a Steinberg word, got {}", other),
    };
    let mut m = ZMatrix::identity(2 * n as usize);
    for (g, e) in w.letters() {
        m.right_mul_generator(&generator_terms(g, n), *e);
    }
    m
}

/// π on unit sequences of a Steinberg alphabet.
pub fn eval_units(units: &[Unit], n: u8) -> ZMatrix {
    let mut m = ZMatrix::identity(2 * n as usize);
    for u in units {
        let g = Root::from_id(u.gen(), n).generator();
        m.right_mul_generator(&generator_terms(&g, n), u.sign());
    }
    m
}

/// Matrix of a root element x_ρ^e.
pub fn root_power(r: &Root, n: u8, e: i64) -> ZMatrix {
    generator_power(&r.generator(), n, e)
}

fn comm(a: &ZMatrix, b: &ZMatrix) -> ZMatrix {
    a.mul(b).mul(&a.symplectic_inverse()).mul(&b.symplectic_inverse())
}

/// Every commutation relation between the generator matrices, checked over
/// all admissible index tuples.
pub fn commutation_suite(n: u8) -> Report {
    let mut rep = Report::new(alloc::format!("commutation n={}", n));
    let g = |s: GenSymbol| generator_matrix(&s, n);
    let inv = |m: ZMatrix| m.symplectic_inverse();
    let idx: Vec<u8> = (1..=n).collect();
    let mut check = |name: String, lhs: ZMatrix, rhs: ZMatrix| {
        rep.push(Item::pi(name, lhs == rhs));
    };
    use GenSymbol as G;
    for &i in &idx {
        for &j in &idx {
            if i == j {
                continue;
            }
            for &k in &idx {
                if k == i || k == j {
                    continue;
                }
                check(
                    alloc::format!("[X{i}{j},X{j}{k}]=X{i}{k}"),
                    comm(&g(G::x(i, j)), &g(G::x(j, k))),
                    g(G::x(i, k)),
                );
                check(
                    alloc::format!("[X{i}{j},Y{j}{k}]=Y{i}{k}"),
                    comm(&g(G::x(i, j)), &g(G::y(j, k))),
                    g(G::y(i, k)),
                );
                check(
                    alloc::format!("[X{i}{j},Y'{i}{k}]=Y'{j}{k}^-1"),
                    comm(&g(G::x(i, j)), &g(G::yp(i, k))),
                    inv(g(G::yp(j, k))),
                );
                check(
                    alloc::format!("[Y{i}{j},Y'{j}{k}]=X{i}{k}"),
                    comm(&g(G::y(i, j)), &g(G::yp(j, k))),
                    g(G::x(i, k)),
                );
            }
            let z2 = g(G::z(i)).mul(&g(G::z(i)));
            check(alloc::format!("[X{i}{j},Y{i}{j}]=Z{i}^2"), comm(&g(G::x(i, j)), &g(G::y(i, j))), z2);
            let zp = inv(g(G::zp(j)));
            check(
                alloc::format!("[X{i}{j},Y'{i}{j}]=Z'{j}^-2"),
                comm(&g(G::x(i, j)), &g(G::yp(i, j))),
                zp.mul(&zp),
            );
            let a = comm(&g(G::x(i, j)), &g(G::z(j)));
            check(alloc::format!("[X{i}{j},Z{j}]=Z{i}Y{i}{j}"), a.clone(), g(G::z(i)).mul(&g(G::y(i, j))));
            check(alloc::format!("[X{i}{j},Z{j}]=Y{i}{j}Z{i}"), a, g(G::y(i, j)).mul(&g(G::z(i))));
            let a = comm(&g(G::x(i, j)), &g(G::zp(i)));
            check(
                alloc::format!("[X{i}{j},Z'{i}]=Z'{j}Y'{i}{j}^-1"),
                a.clone(),
                g(G::zp(j)).mul(&inv(g(G::yp(i, j)))),
            );
            check(
                alloc::format!("[X{i}{j},Z'{i}]=Y'{i}{j}^-1Z'{j}"),
                a,
                inv(g(G::yp(i, j))).mul(&g(G::zp(j))),
            );
            let a = comm(&g(G::y(i, j)), &g(G::zp(i)));
            check(
                alloc::format!("[Y{i}{j},Z'{i}]=X{j}{i}Z{j}^-1"),
                a.clone(),
                g(G::x(j, i)).mul(&inv(g(G::z(j)))),
            );
            check(
                alloc::format!("[Y{i}{j},Z'{i}]=Z{j}^-1X{j}{i}"),
                a,
                inv(g(G::z(j))).mul(&g(G::x(j, i))),
            );
            let a = comm(&g(G::yp(i, j)), &g(G::z(i)));
            check(
                alloc::format!("[Y'{i}{j},Z{i}]=X{i}{j}^-1Z'{j}^-1"),
                a.clone(),
                inv(g(G::x(i, j))).mul(&inv(g(G::zp(j)))),
            );
            check(
                alloc::format!("[Y'{i}{j},Z{i}]=Z'{j}^-1X{i}{j}^-1"),
                a,
                inv(g(G::zp(j))).mul(&inv(g(G::x(i, j)))),
            );
        }
    }
    // All remaining pairs of non-opposite generators commute.
    let roots = Root::all(n);
    for a in &roots {
        for b in &roots {
            if a >= b || *a == b.neg() || a.combine(1, b, 1).is_some() {
                continue;
            }
            let (ga, gb) = (a.generator(), b.generator());
            let (ma, mb) = (g(ga), g(gb));
            check(alloc::format!("[{},{}]=1", ga, gb), comm(&ma, &mb), ZMatrix::identity(2 * n as usize));
        }
    }
    rep
}

/// Matrix of T_i in the δ basis (column j holds the image of δ_j).
pub fn acampo_t(i: usize, n: usize) -> Result<ZMatrix, String> {
    let d = 2 * n;
    if i < 1 || i > d {
        return Err(alloc::format!("T_{} needs 1 <= i <= {}", i, d));
    }
    let mut m = ZMatrix::identity(d);
    if i >= 2 {
        m.set(i - 1, i - 2, BigInt::one());
    }
    if i + 1 <= d {
        m.set(i - 1, i, -BigInt::one());
    }
    Ok(m)
}

/// The alternating form I with I(δ_i, δ_{i+1}) = 1 and zero elsewhere off
/// the adjacent pairs.
pub fn acampo_form(n: usize) -> ZMatrix {
    let d = 2 * n;
    let mut m = ZMatrix::zero(d);
    for i in 0..d - 1 {
        m.set(i, i + 1, BigInt::one());
        m.set(i + 1, i, -BigInt::one());
    }
    m
}

/// Columns δ_1, δ_1+δ_3, …, δ_1+⋯+δ_{2n−1}, δ_2, δ_4, …, δ_{2n}.
pub fn acampo_basis(n: usize) -> ZMatrix {
    let mut p = ZMatrix::zero(2 * n);
    for k in 0..n {
        for t in 0..=k {
            p.set(2 * t, k, BigInt::one());
        }
        p.set(2 * k + 1, n + k, BigInt::one());
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(n: u8) -> Alphabet {
        Alphabet::Steinberg { rank: n }
    }

    #[test]
    fn generator_examples() {
        let z1 = generator_matrix(&GenSymbol::z(1), 2);
        let mut e = ZMatrix::identity(4);
        e.set(0, 2, BigInt::one());
        assert_eq!(z1, e);
        assert_eq!(generator_matrix(&GenSymbol::zp(1), 2), e.transpose());
        let x12 = generator_matrix(&GenSymbol::x(1, 2), 2);
        let mut e = ZMatrix::identity(4);
        e.set(0, 1, BigInt::one());
        e.set(3, 2, -BigInt::one());
        assert_eq!(x12, e);
    }

    #[test]
    fn w1_matrix() {
        let w = Word::parse(st(2), "z(1) zp(1)^-1 z(1)").unwrap();
        let m = eval_word(&w);
        let expect = ZMatrix::from_rows(&[
            alloc::vec![0, 0, 1, 0],
            alloc::vec![0, 1, 0, 0],
            alloc::vec![-1, 0, 0, 0],
            alloc::vec![0, 0, 0, 1],
        ]);
        assert_eq!(m, expect);
        assert!(is_symplectic(&m));
    }

    #[test]
    fn powers_and_inverses() {
        for n in 2..=3u8 {
            for r in Root::all(n) {
                let g = r.generator();
                let m = generator_matrix(&g, n);
                assert_eq!(generator_power(&g, n, 3), m.mul(&m).mul(&m));
                assert!(generator_power(&g, n, -1).mul(&m).is_identity());
                assert_eq!(m.symplectic_inverse(), generator_power(&g, n, -1));
                // unipotent: (M - I)^2 = 0
                let nmat = m.sub(&ZMatrix::identity(2 * n as usize));
                assert_eq!(nmat.mul(&nmat), ZMatrix::zero(2 * n as usize));
            }
        }
    }

    #[test]
    fn commutation_small() {
        assert!(commutation_suite(2).all_pass());
        assert!(commutation_suite(3).all_pass());
    }

    #[test]
    fn acampo_form_becomes_j() {
        for n in 2..=4 {
            let p = acampo_basis(n);
            assert_eq!(p.transpose().mul(&acampo_form(n)).mul(&p), j_form(n));
        }
        let t1 = acampo_t(1, 2).unwrap();
        // δ_2 ↦ δ_2 − δ_1
        assert_eq!(t1.get(0, 1), &BigInt::from(-1));
        assert!(acampo_t(5, 2).is_err());
    }
}
