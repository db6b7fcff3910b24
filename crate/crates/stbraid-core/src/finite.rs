//! Sp_{2n}(F_p): reduction of integer matrices, group orders, and
//! breadth-first enumeration of the subgroup spanned by a generator list.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashSet;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::braid::fbar_generator;
use crate::report::{Item, Report, Tier};
use crate::word::GenSymbol;
use crate::zmatrix::{generator_matrix, ZMatrix};

/// Enumeration is refused above this many elements.
pub const ENUMERATION_GATE: u64 = 1 << 24;

/// A square matrix over F_p, entries stored reduced in `0..p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    dim: usize,
    e: Vec<u32>,
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl FpMatrix {
    pub fn identity(p: u32, dim: usize) -> FpMatrix {
        let mut e = alloc::vec![0; dim * dim];
        for i in 0..dim {
            e[i * dim + i] = 1 % p;
        }
        FpMatrix { p, dim, e }
    }

    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> FpMatrix {
        let dim = rows.len();
        let mut e = Vec::with_capacity(dim * dim);
        for r in rows {
            assert_eq!(r.len(), dim, "square matrix expected");
            e.extend(r.iter().map(|v| v.rem_euclid(p as i64) as u32));
        }
        FpMatrix { p, dim, e }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.e[i * self.dim + j]
    }

    pub fn is_identity(&self) -> bool {
        *self == FpMatrix::identity(self.p, self.dim)
    }

    pub fn mul(&self, o: &FpMatrix) -> FpMatrix {
        assert!(self.p == o.p && self.dim == o.dim, "shape or field mismatch");
        let (d, p) = (self.dim, self.p as u64);
        let mut e = alloc::vec![0u32; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.e[i * d + k] as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    e[i * d + j] = ((e[i * d + j] as u64 + a * o.e[k * d + j] as u64) % p) as u32;
                }
            }
        }
        FpMatrix { p: self.p, dim: d, e }
    }

    pub fn transpose(&self) -> FpMatrix {
        let d = self.dim;
        let mut e = alloc::vec![0; d * d];
        for i in 0..d {
            for j in 0..d {
                e[j * d + i] = self.e[i * d + j];
            }
        }
        FpMatrix { p: self.p, dim: d, e }
    }

    /// M⁻¹ = J⁻¹ Mᵀ J, valid for symplectic M.
    pub fn symplectic_inverse(&self) -> FpMatrix {
        let j = j_form_mod(self.p, self.dim / 2);
        let jinv = j.transpose();
        jinv.mul(&self.transpose()).mul(&j)
    }

    pub fn is_symplectic(&self) -> bool {
        if self.dim % 2 != 0 {
            return false;
        }
        let j = j_form_mod(self.p, self.dim / 2);
        self.transpose().mul(&j).mul(self) == j
    }

    pub fn commutator(&self, o: &FpMatrix) -> FpMatrix {
        self.mul(o).mul(&self.symplectic_inverse()).mul(&o.symplectic_inverse())
    }

    /// Injective key: for p = 2 and dim ≤ 8 one byte per row (bit j is
    /// column j); otherwise base-p digits in row-major order. `None` when
    /// the matrix does not fit in 64 bits.
    pub fn encode(&self) -> Option<u64> {
        if self.p == 2 && self.dim <= 8 {
            let mut k = 0u64;
            for i in 0..self.dim {
                for j in 0..self.dim {
                    k |= (self.e[i * self.dim + j] as u64) << (8 * i + j);
                }
            }
            return Some(k);
        }
        let mut k = 0u64;
        for &v in self.e.iter().rev() {
            k = k.checked_mul(self.p as u64)?.checked_add(v as u64)?;
        }
        Some(k)
    }

    pub fn decode(p: u32, dim: usize, key: u64) -> FpMatrix {
        let mut e = alloc::vec![0; dim * dim];
        if p == 2 && dim <= 8 {
            for i in 0..dim {
                for j in 0..dim {
                    e[i * dim + j] = ((key >> (8 * i + j)) & 1) as u32;
                }
            }
        } else {
            let mut k = key;
            for v in e.iter_mut() {
                *v = (k % p as u64) as u32;
                k /= p as u64;
            }
        }
        FpMatrix { p, dim, e }
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.e.chunks(self.dim).map(|r| r.to_vec()).collect()
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.p)?;
        f.debug_list().entries(self.rows()).finish()
    }
}

pub fn j_form_mod(p: u32, n: usize) -> FpMatrix {
    let d = 2 * n;
    let mut m = FpMatrix { p, dim: d, e: alloc::vec![0; d * d] };
    for i in 0..n {
        m.e[i * d + n + i] = 1 % p;
        m.e[(n + i) * d + i] = (p - 1) % p;
    }
    m
}

pub fn reduce_mod(m: &ZMatrix, p: u32) -> Result<FpMatrix, String> {
    if !is_prime(p) {
        return Err(alloc::format!("{} is not prime", p));
    }
    let d = m.dim();
    let bp = BigInt::from(p);
    let mut e = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            e.push(m.get(i, j).mod_floor(&bp).to_u32().expect("residue fits"));
        }
    }
    Ok(FpMatrix { p, dim: d, e })
}

/// M ≡ I mod p.
pub fn in_level_congruence(m: &ZMatrix, p: u32) -> Result<bool, String> {
    Ok(reduce_mod(m, p)?.is_identity())
}

/// |Sp_{2n}(F_p)| = p^{n²} ∏_{i=1}^n (p^{2i} − 1).
pub fn group_order(n: u32, p: u32) -> BigUint {
    let bp = BigUint::from(p);
    let mut o = num_traits::pow(bp.clone(), (n * n) as usize);
    for i in 1..=n {
        o *= num_traits::pow(bp.clone(), (2 * i) as usize) - BigUint::one();
    }
    o
}

pub fn factorial(k: u32) -> BigUint {
    (1..=k).fold(BigUint::one(), |a, b| a * BigUint::from(b))
}

/// i_n = |Sp_{2n}(F_2)| / (2n+2)!, the index of the image of the pure
/// braid group in the level-2 congruence subgroup.
pub fn index_i(n: u32) -> Result<BigUint, String> {
    if n < 2 {
        return Err(alloc::format!("index needs n >= 2, got {}", n));
    }
    let (q, r) = group_order(n, 2).div_rem(&factorial(2 * n + 2));
    if !r.is_zero() {
        return Err(alloc::format!("(2n+2)! does not divide the order for n = {}", n));
    }
    Ok(q)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanReport {
    pub p: u32,
    pub dim: usize,
    /// Generator labels, in the order given.
    pub generators: Vec<String>,
    pub reached: u64,
    /// The reached set is closed under every generator and its inverse.
    pub closed: bool,
    pub limit: u64,
    /// BFS levels expanded.
    pub depth: usize,
    /// Sorted encodings of the reached elements (kept only when closed).
    pub elements: Vec<u64>,
    /// Filled in by callers that can read a clock.
    pub wall_ms: Option<u128>,
}

fn mul_packed2(a: u64, b: u64, dim: usize) -> u64 {
    let mut out = 0u64;
    for i in 0..dim {
        let mut row = 0u64;
        let mut bits = (a >> (8 * i)) & 0xff;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            row ^= (b >> (8 * k)) & 0xff;
            bits &= bits - 1;
        }
        out |= row << (8 * i);
    }
    out
}

/// Breadth-first closure of {I} under right multiplication by the
/// generators and their inverses. Each level is expanded in sorted order.
pub fn span(gens: &[(String, FpMatrix)], limit: u64) -> Result<SpanReport, String> {
    let (p, dim) = match gens.first() {
        Some((_, g)) => (g.p, g.dim),
        None => return Err("span needs at least one generator".into()),
    };
    for (name, g) in gens {
        if g.p != p || g.dim != dim {
            return Err(alloc::format!("generator {} has a different shape or field", name));
        }
        if !g.is_symplectic() {
            return Err(alloc::format!("generator {} is not symplectic mod {}", name, p));
        }
    }
    let mut moves: Vec<u64> = Vec::new();
    let mut move_mats: Vec<FpMatrix> = Vec::new();
    for (_, g) in gens {
        for m in [g.clone(), g.symplectic_inverse()] {
            let k = m.encode().ok_or("matrix does not fit a 64-bit key")?;
            if !moves.contains(&k) {
                moves.push(k);
                move_mats.push(m);
            }
        }
    }
    let packed = p == 2 && dim <= 8;
    let mul = |a: u64, i: usize| -> u64 {
        if packed {
            mul_packed2(a, moves[i], dim)
        } else {
            FpMatrix::decode(p, dim, a).mul(&move_mats[i]).encode().expect("same shape fits")
        }
    };
    let id = FpMatrix::identity(p, dim).encode().ok_or("matrix does not fit a 64-bit key")?;
    let mut seen: HashSet<u64> = HashSet::new();
    seen.insert(id);
    let mut frontier = alloc::vec![id];
    let mut depth = 0;
    let mut closed = true;
    'bfs: while !frontier.is_empty() {
        let mut next = Vec::new();
        for &a in &frontier {
            for i in 0..moves.len() {
                let b = mul(a, i);
                if seen.insert(b) {
                    if seen.len() as u64 > limit {
                        closed = false;
                        break 'bfs;
                    }
                    next.push(b);
                }
            }
        }
        next.sort_unstable();
        frontier = next;
        depth += 1;
    }
    let reached = seen.len() as u64;
    let mut elements = Vec::new();
    if closed {
        elements = seen.into_iter().collect();
        elements.sort_unstable();
    }
    Ok(SpanReport {
        p,
        dim,
        generators: gens.iter().map(|(n, _)| n.clone()).collect(),
        reached,
        closed,
        limit,
        depth,
        elements,
        wall_ms: None,
    })
}

/// Every element times every generator (and inverse) stays in the set.
pub fn closure_holds(rep: &SpanReport, gens: &[FpMatrix]) -> bool {
    if !rep.closed {
        return false;
    }
    let set: HashSet<u64> = rep.elements.iter().copied().collect();
    let mats: Vec<FpMatrix> = gens.iter().flat_map(|g| [g.clone(), g.symplectic_inverse()]).collect();
    rep.elements.iter().all(|&k| {
        let a = FpMatrix::decode(rep.p, rep.dim, k);
        mats.iter().all(|g| a.mul(g).encode().is_some_and(|b| set.contains(&b)))
    })
}

/// The enumeration limit for Sp_{2n}(F_p), or `None` above the gate.
pub fn enumeration_limit(n: u32, p: u32) -> Option<u64> {
    group_order(n, p).to_u64().filter(|&o| o <= ENUMERATION_GATE)
}

fn bar(g: GenSymbol, n: u8, p: u32) -> FpMatrix {
    reduce_mod(&generator_matrix(&g, n), p).expect("prime")
}

fn label(g: &GenSymbol) -> String {
    alloc::format!("{}", g)
}

/// E_n: z̄_1, z̄′_1, z̄_1 z̄_2 ȳ_{1,2}, z̄′_2, …, z̄_{n−1} z̄_n ȳ_{n−1,n}, z̄′_n.
pub fn e_set(n: u8) -> Vec<(String, FpMatrix)> {
    let mut out = Vec::new();
    for k in 1..=n {
        if k == 1 {
            out.push((label(&GenSymbol::z(1)), bar(GenSymbol::z(1), n, 2)));
        } else {
            let m = bar(GenSymbol::z(k - 1), n, 2).mul(&bar(GenSymbol::z(k), n, 2)).mul(&bar(GenSymbol::y(k - 1, k), n, 2));
            out.push((alloc::format!("z({}) z({}) y({},{})", k - 1, k, k - 1, k), m));
        }
        out.push((label(&GenSymbol::zp(k)), bar(GenSymbol::zp(k), n, 2)));
    }
    out
}

/// f̄(σ_1), …, f̄(σ_{2n+1}) mod p.
pub fn fbar_images(n: u8, p: u32) -> Result<Vec<(String, FpMatrix)>, String> {
    (1..=2 * n + 1).map(|i| Ok((alloc::format!("fbar(s{})", i), reduce_mod(&fbar_generator(i, n)?, p)?))).collect()
}

/// Every root generator X, Y, Y′, Z, Z′ mod p.
pub fn all_generators(n: u8, p: u32) -> Vec<(String, FpMatrix)> {
    crate::root::Root::all(n)
        .into_iter()
        .map(|r| {
            let g = r.generator();
            (label(&g), bar(g, n, p))
        })
        .collect()
}

/// E_n agrees with the reductions of f̄(σ_1..σ_{2n}) mod 2, and each has order 2.
pub fn e_set_check(n: u8) -> Report {
    let mut rep = Report::new(alloc::format!("E_{} = fbar images mod 2", n));
    let e = e_set(n);
    for (i, (name, m)) in e.iter().enumerate() {
        let ok = fbar_generator(i as u8 + 1, n).and_then(|f| reduce_mod(&f, 2)).is_ok_and(|f| f == *m);
        rep.push(Item::new(alloc::format!("fbar(s{}) mod 2 = {}", i + 1, name), ok, Tier::Exact));
    }
    for (name, m) in fbar_images(n, 2).unwrap_or_default() {
        rep.push(Item::new(alloc::format!("{} has order 2 mod 2", name), m.mul(&m).is_identity() && !m.is_identity(), Tier::Exact));
    }
    rep
}

/// Replays the chain of mod-2 commutator identities that puts every ȳ, z̄,
/// z̄′ of Sp_6(F_2) into the group G generated by E_3 ∪ {z̄_2}.
pub fn sp6_commutator_chain_check() -> Report {
    let n = 3u8;
    let b = |g: GenSymbol| bar(g, n, 2);
    let (x, y, z, zp) = (GenSymbol::x, GenSymbol::y, GenSymbol::z, GenSymbol::zp);
    let mut rep = Report::new("E_3 + z2 commutator chain");
    // Known members of G by name.
    let mut g: Vec<(String, FpMatrix)> = e_set(n);
    g.push((label(&z(2)), b(z(2))));
    let find = |g: &Vec<(String, FpMatrix)>, s: &str| g.iter().find(|(k, _)| k == s).map(|(_, m)| m.clone());
    // A product of known members, named by their labels.
    let prod = |g: &Vec<(String, FpMatrix)>, names: &[&str]| -> Option<FpMatrix> {
        names.iter().try_fold(FpMatrix::identity(2, 6), |acc, s| find(g, s).map(|m| acc.mul(&m)))
    };
    let derive = |rep: &mut Report, g: &mut Vec<(String, FpMatrix)>, new: &str, value: FpMatrix, from: &[&str]| {
        let ok = prod(g, from).is_some_and(|m| m == value);
        rep.push(Item::new(alloc::format!("{} in G as {}", new, from.join(" ")), ok, Tier::Exact));
        if ok {
            g.push((new.into(), value));
        }
    };
    derive(&mut rep, &mut g, "y(1,2)", b(y(1, 2)), &["z(1)", "z(2)", "z(1) z(2) y(1,2)"]);
    derive(&mut rep, &mut g, "z(3) y(2,3)", b(z(3)).mul(&b(y(2, 3))), &["z(2)", "z(2) z(3) y(2,3)"]);

    // [a, b] = claimed, both sides read from the membership list.
    let comm = |rep: &mut Report, g: &Vec<(String, FpMatrix)>, a: &str, bb: &str, claimed: FpMatrix, text: &str| -> bool {
        let ok = match (find(g, a), find(g, bb)) {
            (Some(ma), Some(mb)) => ma.commutator(&mb) == claimed,
            _ => false,
        };
        rep.push(Item::new(alloc::format!("[{}, {}] = {}", a, bb, text), ok, Tier::Exact));
        ok
    };
    let x12z1 = b(x(1, 2)).mul(&b(z(1)));
    if comm(&mut rep, &g, "y(1,2)", "zp(2)", x12z1.clone(), "x(1,2) z(1)") {
        g.push(("x(1,2) z(1)".into(), x12z1));
    }
    derive(&mut rep, &mut g, "x(1,2)", b(x(1, 2)), &["x(1,2) z(1)", "z(1)"]);
    let ok = comm(&mut rep, &g, "x(1,2)", "z(3) y(2,3)", b(x(1, 2)).commutator(&b(y(2, 3))), "[x(1,2), y(2,3)]")
        & comm(&mut rep, &g, "x(1,2)", "z(3) y(2,3)", b(y(1, 3)), "y(1,3)");
    if ok {
        g.push(("y(1,3)".into(), b(y(1, 3))));
    }
    let x31z3 = b(x(3, 1)).mul(&b(z(3)));
    if comm(&mut rep, &g, "y(1,3)", "zp(1)", x31z3.clone(), "x(3,1) z(3)") {
        g.push(("x(3,1) z(3)".into(), x31z3));
    }
    let x21z2 = b(x(2, 1)).mul(&b(z(2)));
    if comm(&mut rep, &g, "y(1,2)", "zp(1)", x21z2.clone(), "x(2,1) z(2)") {
        g.push(("x(2,1) z(2)".into(), x21z2));
    }
    derive(&mut rep, &mut g, "x(2,1)", b(x(2, 1)), &["x(2,1) z(2)", "z(2)"]);
    let x13z1 = b(x(1, 3)).mul(&b(z(1)));
    if comm(&mut rep, &g, "y(1,3)", "zp(3)", x13z1.clone(), "x(1,3) z(1)") {
        g.push(("x(1,3) z(1)".into(), x13z1));
    }
    derive(&mut rep, &mut g, "x(1,3)", b(x(1, 3)), &["x(1,3) z(1)", "z(1)"]);
    let ok = comm(&mut rep, &g, "x(3,1) z(3)", "x(1,2)", b(x(3, 1)).commutator(&b(x(1, 2))), "[x(3,1), x(1,2)]")
        & comm(&mut rep, &g, "x(3,1) z(3)", "x(1,2)", b(x(3, 2)), "x(3,2)");
    if ok {
        g.push(("x(3,2)".into(), b(x(3, 2))));
    }
    if comm(&mut rep, &g, "x(3,2)", "x(2,1)", b(x(3, 1)), "x(3,1)") {
        g.push(("x(3,1)".into(), b(x(3, 1))));
    }
    // x̄_{3,1} has order 2, so z̄_3 = x̄_{3,1} · x̄_{3,1} z̄_3.
    derive(&mut rep, &mut g, "z(3)", b(z(3)), &["x(3,1)", "x(3,1) z(3)"]);
    derive(&mut rep, &mut g, "y(2,3)", b(y(2, 3)), &["z(3)", "z(3) y(2,3)"]);
    let all: Vec<GenSymbol> = (1..=3u8)
        .flat_map(|i| [z(i), zp(i)])
        .chain([y(1, 2), y(1, 3), y(2, 3)])
        .collect();
    let missing: Vec<String> = all.iter().map(label).filter(|s| find(&g, s).is_none()).collect();
    rep.push(
        Item::new("every y(i,j), z(i), zp(i) lies in G", missing.is_empty(), Tier::Exact)
            .with_detail(if missing.is_empty() { String::new() } else { alloc::format!("missing {}", missing.join(", ")) }),
    );
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{Alphabet, Word};
    use crate::zmatrix::eval_word;

    #[test]
    fn orders() {
        assert_eq!(group_order(2, 2), BigUint::from(720u32));
        assert_eq!(group_order(3, 2), BigUint::from(1_451_520u32));
        assert_eq!(group_order(2, 3), BigUint::from(51_840u32));
        assert_eq!(index_i(2).unwrap(), BigUint::from(1u32));
        assert_eq!(index_i(3).unwrap(), BigUint::from(36u32));
        assert!(index_i(1).is_err());
        assert_eq!(enumeration_limit(3, 2), Some(1_451_520));
        assert_eq!(enumeration_limit(4, 2), None);
    }

    #[test]
    fn reduction() {
        let z1 = generator_matrix(&GenSymbol::z(1), 2);
        assert!(!in_level_congruence(&z1, 2).unwrap());
        assert!(in_level_congruence(&ZMatrix::identity(4), 2).unwrap());
        let r = reduce_mod(&z1, 2).unwrap();
        assert_eq!(r.get(0, 2), 1);
        assert!(reduce_mod(&z1, 4).is_err());
        let w = Word::parse(Alphabet::Steinberg { rank: 2 }, "z(1) zp(1)^-1 z(1)").unwrap();
        let m = reduce_mod(&eval_word(&w), 3).unwrap();
        assert_eq!(m.get(2, 0), 2);
        assert!(m.is_symplectic());
    }

    #[test]
    fn encoding_roundtrip() {
        for p in [2, 3, 5] {
            for (_, m) in all_generators(2, p) {
                let k = m.encode().unwrap();
                assert_eq!(FpMatrix::decode(p, 4, k), m);
                let inv = m.symplectic_inverse();
                assert!(m.mul(&inv).is_identity());
            }
        }
        let a = e_set(3)[2].1.clone();
        let c = e_set(3)[3].1.clone();
        assert_eq!(mul_packed2(a.encode().unwrap(), c.encode().unwrap(), 6), a.mul(&c).encode().unwrap());
    }

    #[test]
    fn small_spans() {
        let id = alloc::vec![("I".into(), FpMatrix::identity(2, 4))];
        let r = span(&id, 10).unwrap();
        assert_eq!((r.reached, r.closed), (1, true));
        let r = span(&fbar_images(2, 2).unwrap(), 720).unwrap();
        assert_eq!(r.reached, 720);
        let g = all_generators(2, 2);
        let r = span(&g, 720).unwrap();
        assert_eq!(r.reached, 720);
        assert!(closure_holds(&r, &g.iter().map(|(_, m)| m.clone()).collect::<Vec<_>>()));
        let r = span(&g, 100).unwrap();
        assert!(!r.closed);
    }

    #[test]
    fn e_sets_and_chain() {
        assert!(e_set_check(2).all_pass());
        let rep = e_set_check(3);
        assert!(rep.all_pass(), "{}", rep);
        assert_eq!(e_set(4).len(), 8);
        let rep = sp6_commutator_chain_check();
        assert!(rep.all_pass(), "{}", rep);
    }
}
