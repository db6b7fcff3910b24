//! The Steinberg group St(C_n, Z): its presentation, the elements w_γ,
//! the Weyl conjugation table and the projection π.
//!
//! Besides the defining relations the presentation knows four derived
//! families, each admitted only through a generated certificate:
//!
//! * `swap(u,v)`: u v = C v u for signed letters u, v, where C is the
//!   commutator [u,v] written as a collected product of root letters;
//! * `wconj(γ,s,g)`: w_γ^s g w_γ^{-s} = x_{δ'}^{±1};
//! * `wcomm(i,j,s,t)`: w_i^s w_j^t = w_j^t w_i^s;
//! * `w4eq(i,j)`: w_i^4 = w_j^4.
//!
//! Here w_i is short for w_{2e_i}.

mod normalize;
mod tactics;

pub use normalize::{
    central_w4_suite, certify_equal, charge_extract, example_conjugate, weyl_push, Charge, ChargeError,
    Normalization,
};
pub use tactics::Token;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::presentation::{
    bad_args, Arg, Presentation, PresentationError, ProofScript, RelationInstance, RelationRef,
};
use crate::report::{Item, Report, Tier};
use crate::root::Root;
use crate::word::{Alphabet, GenSymbol, Unit, Word};
use crate::zmatrix::{eval_units, eval_word, generator_power, ZMatrix};

/// Names of the defining relation schemas.
pub const BASE_SCHEMAS: [&str; 11] = [
    "st-xxx", "st-xyy", "st-xyp", "st-yyp", "st-xyz", "st-xypz", "st-xz", "st-xzp", "st-yzp",
    "st-ypz", "st-commute",
];

/// Unit letter x_ρ^{±1} of rank n.
pub fn unit_of(r: &Root, negative: bool, n: u8) -> Unit {
    Unit::new(r.id(n), negative)
}

pub fn root_of_unit(u: Unit, n: u8) -> Root {
    Root::from_id(u.gen(), n)
}

/// w_γ = x_γ x_{-γ}^{-1} x_γ as units; `s = -1` gives the inverse.
pub fn w_units(gamma: &Root, s: i64, n: u8) -> Vec<Unit> {
    let a = unit_of(gamma, false, n);
    let b = unit_of(&gamma.neg(), true, n);
    let w = alloc::vec![a, b, a];
    if s > 0 {
        w
    } else {
        crate::word::invert_units(&w)
    }
}

/// The word w_γ.
pub fn w(gamma: &Root, n: u8) -> Word {
    Word::from_units(Alphabet::Steinberg { rank: n }, &w_units(gamma, 1, n))
}

/// π on Steinberg words.
pub fn pi(w: &Word) -> ZMatrix {
    eval_word(w)
}

/// Whether x_α and x_β commute by a defining relation.
pub fn roots_commute(a: &Root, b: &Root) -> bool {
    a == b || (*a != b.neg() && a.combine(1, b, 1).is_none())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeylEntry {
    pub gamma: Root,
    pub delta: Root,
    pub image: Root,
    pub sign: i64,
}

/// w_γ x_δ w_γ^{-1} = x_{δ'}^c with δ' = s_γ(δ) and the sign read off π.
pub fn weyl_conjugation(gamma: &Root, delta: &Root, n: u8) -> Result<WeylEntry, String> {
    if *gamma == delta.neg() {
        return Err(alloc::format!("w({}) ~ x({}) is outside the conjugation rule", gamma, delta));
    }
    let image = Root::reflect(gamma, delta);
    let sign = conj_sign(gamma, 1, delta, 1, &image, n)
        .ok_or_else(|| alloc::format!("no sign for w({}) ~ x({})", gamma, delta))?;
    Ok(WeylEntry { gamma: *gamma, delta: *delta, image, sign })
}

/// Sign c with π(w_γ^s x_δ^e w_γ^{-s}) = π(x_{image}^c), if one exists.
fn conj_sign(gamma: &Root, s: i64, delta: &Root, e: i64, image: &Root, n: u8) -> Option<i64> {
    let mut u = w_units(gamma, s, n);
    u.push(unit_of(delta, e < 0, n));
    u.extend(w_units(gamma, -s, n));
    let m = eval_units(&u, n);
    let plus = generator_power(&image.generator(), n, 1);
    let minus = generator_power(&image.generator(), n, -1);
    match (m == plus, m == minus) {
        (true, false) => Some(1),
        (false, true) => Some(-1),
        _ => None,
    }
}

/// All entries for γ ≠ −δ, as text lines `w(γ) ~ x(δ) -> x(δ')^c`.
pub fn weyl_table(n: u8) -> Result<Vec<WeylEntry>, String> {
    let roots = Root::all(n);
    let mut out = Vec::new();
    for g in &roots {
        for d in &roots {
            if *g != d.neg() {
                out.push(weyl_conjugation(g, d, n)?);
            }
        }
    }
    Ok(out)
}

pub fn weyl_line(e: &WeylEntry) -> String {
    alloc::format!("w({}) ~ x({}) -> x({})^{}", e.gamma, e.delta, e.image, e.sign)
}

/// Both commutator conventions evaluated through π. On [x_{1,2}, x_{2,3}]
/// they agree, so the pair [x_{1,2}, z_2] = z_1 y_{1,2} is what tells
/// them apart.
pub fn commutator_convention_check() -> Report {
    let n = 3;
    let a = Alphabet::Steinberg { rank: n };
    let l = |g: GenSymbol| Word::letter(a, g, 1).unwrap();
    let other = |p: &Word, q: &Word| p.invert().mul(&q.invert()).unwrap().mul(p).unwrap().mul(q).unwrap();
    let mut rep = Report::new("commutator convention");
    let (x12, x23) = (l(GenSymbol::x(1, 2)), l(GenSymbol::x(2, 3)));
    let ours = pi(&Word::commutator(&x12, &x23).unwrap());
    rep.push(Item::new("[x(1,2),x(2,3)] = x(1,3)", ours == pi(&l(GenSymbol::x(1, 3))), Tier::Exact));
    let z2 = l(GenSymbol::z(2));
    let target = pi(&l(GenSymbol::z(1)).mul(&l(GenSymbol::y(1, 2))).unwrap());
    rep.push(Item::new("[x(1,2),z(2)] = z(1) y(1,2)", pi(&Word::commutator(&x12, &z2).unwrap()) == target, Tier::Exact));
    rep.push(Item::new("a^-1 b^-1 a b gives a different matrix", pi(&other(&x12, &z2)) != target, Tier::Exact));
    rep
}

/// The presentation of St(C_n, Z) with its derived families.
pub struct StPresentation {
    n: u8,
    /// Positive generator pair (ids) → defining relation with that commutator
    /// on its left side, in the stated order.
    commutators: BTreeMap<(usize, usize), RelationRef>,
    cache: RefCell<BTreeMap<RelationRef, RelationInstance>>,
}

impl StPresentation {
    pub fn new(n: u8) -> StPresentation {
        assert!(n >= 2, "St(C_n, Z) needs n >= 2");
        let mut p = StPresentation { n, commutators: BTreeMap::new(), cache: RefCell::new(BTreeMap::new()) };
        let mut map = BTreeMap::new();
        for r in p.base_instances() {
            if r.name == "st-commute" {
                continue;
            }
            let inst = p.instantiate(&r).expect("enumerated instance is admissible");
            let l = inst.lhs.units();
            map.insert((l[0].gen(), l[1].gen()), r);
        }
        p.commutators = map;
        p
    }

    pub fn rank(&self) -> u8 {
        self.n
    }

    fn word(&self, raw: &[(GenSymbol, i64)]) -> Result<Word, PresentationError> {
        Ok(Word::reduce(self.alphabet(), raw)?)
    }

    /// Every admissible instance of every defining schema.
    pub fn base_instances(&self) -> Vec<RelationRef> {
        let n = self.n as i64;
        let mut out = Vec::new();
        for name in &BASE_SCHEMAS[..4] {
            for i in 1..=n {
                for j in 1..=n {
                    for k in 1..=n {
                        if i != j && j != k && i != k {
                            out.push(RelationRef::ints(name, &[i, j, k]));
                        }
                    }
                }
            }
        }
        for name in &BASE_SCHEMAS[4..10] {
            for i in 1..=n {
                for j in 1..=n {
                    if i != j {
                        out.push(RelationRef::ints(name, &[i, j]));
                    }
                }
            }
        }
        let roots = Root::all(self.n);
        for a in &roots {
            for b in &roots {
                if a < b && roots_commute(a, b) {
                    out.push(RelationRef::new(
                        "st-commute",
                        alloc::vec![Arg::Letter(a.generator(), 1), Arg::Letter(b.generator(), 1)],
                    ));
                }
            }
        }
        out
    }

    /// The defining relation whose left side is [A,B] or [B,A].
    pub fn commutator_relation(&self, a: &Root, b: &Root) -> Option<(RelationRef, bool)> {
        let (ia, ib) = (a.id(self.n), b.id(self.n));
        if let Some(r) = self.commutators.get(&(ia, ib)) {
            return Some((r.clone(), false));
        }
        self.commutators.get(&(ib, ia)).map(|r| (r.clone(), true))
    }

    /// Pairs (A,B) of positive generators that have a commutator relation.
    pub fn commutator_pairs(&self) -> Vec<(usize, usize)> {
        self.commutators.keys().cloned().collect()
    }

    fn base(&self, r: &RelationRef) -> Result<RelationInstance, PresentationError> {
        let n = self.n;
        use GenSymbol as G;
        let ints: Vec<i64> = r.args.iter().filter_map(|a| a.int()).collect();
        let idx = |count: usize| -> Result<Vec<u8>, PresentationError> {
            if ints.len() != count || r.args.len() != count {
                return Err(bad_args(r, &alloc::format!("expected {} indices", count)));
            }
            let mut v = Vec::new();
            for &i in &ints {
                if i < 1 || i > n as i64 {
                    return Err(bad_args(r, "index out of rank"));
                }
                v.push(i as u8);
            }
            for a in 0..v.len() {
                for b in a + 1..v.len() {
                    if v[a] == v[b] {
                        return Err(bad_args(r, "indices must be pairwise distinct"));
                    }
                }
            }
            Ok(v)
        };
        let comm = |a: G, b: G| alloc::vec![(a, 1), (b, 1), (a, -1), (b, -1)];
        let (lhs, rhs): (Vec<(G, i64)>, Vec<(G, i64)>) = match r.name.as_str() {
            "st-xxx" => {
                let v = idx(3)?;
                (comm(G::x(v[0], v[1]), G::x(v[1], v[2])), alloc::vec![(G::x(v[0], v[2]), 1)])
            }
            "st-xyy" => {
                let v = idx(3)?;
                (comm(G::x(v[0], v[1]), G::y(v[1], v[2])), alloc::vec![(G::y(v[0], v[2]), 1)])
            }
            "st-xyp" => {
                let v = idx(3)?;
                (comm(G::x(v[0], v[1]), G::yp(v[0], v[2])), alloc::vec![(G::yp(v[1], v[2]), -1)])
            }
            "st-yyp" => {
                let v = idx(3)?;
                (comm(G::y(v[0], v[1]), G::yp(v[1], v[2])), alloc::vec![(G::x(v[0], v[2]), 1)])
            }
            "st-xyz" => {
                let v = idx(2)?;
                (comm(G::x(v[0], v[1]), G::y(v[0], v[1])), alloc::vec![(G::z(v[0]), 2)])
            }
            "st-xypz" => {
                let v = idx(2)?;
                (comm(G::x(v[0], v[1]), G::yp(v[0], v[1])), alloc::vec![(G::zp(v[1]), -2)])
            }
            "st-xz" => {
                let v = idx(2)?;
                (
                    comm(G::x(v[0], v[1]), G::z(v[1])),
                    alloc::vec![(G::z(v[0]), 1), (G::y(v[0], v[1]), 1)],
                )
            }
            "st-xzp" => {
                let v = idx(2)?;
                (
                    comm(G::x(v[0], v[1]), G::zp(v[0])),
                    alloc::vec![(G::zp(v[1]), 1), (G::yp(v[0], v[1]), -1)],
                )
            }
            "st-yzp" => {
                let v = idx(2)?;
                (
                    comm(G::y(v[0], v[1]), G::zp(v[0])),
                    alloc::vec![(G::x(v[1], v[0]), 1), (G::z(v[1]), -1)],
                )
            }
            "st-ypz" => {
                let v = idx(2)?;
                (
                    comm(G::yp(v[0], v[1]), G::z(v[0])),
                    alloc::vec![(G::x(v[0], v[1]), -1), (G::zp(v[1]), -1)],
                )
            }
            "st-commute" => {
                let (a, b) = match r.args.as_slice() {
                    [x, y] => (self.root_arg(r, x)?, self.root_arg(r, y)?),
                    _ => return Err(bad_args(r, "expected two generators")),
                };
                if a == b || !roots_commute(&a, &b) {
                    return Err(bad_args(r, "generators do not commute by a defining relation"));
                }
                let (ga, gb) = (a.generator(), b.generator());
                (alloc::vec![(ga, 1), (gb, 1)], alloc::vec![(gb, 1), (ga, 1)])
            }
            other => return Err(PresentationError::UnknownRelation(other.to_string())),
        };
        Ok(RelationInstance { lhs: self.word(&lhs)?, rhs: self.word(&rhs)?, derived: false })
    }

    fn root_arg(&self, r: &RelationRef, a: &Arg) -> Result<Root, PresentationError> {
        let root = match a {
            Arg::Root(x) => *x,
            Arg::Letter(g, 1) if g.is_steinberg() => Root::of_generator(g),
            _ => return Err(bad_args(r, "expected a root or a positive Steinberg letter")),
        };
        if root.max_index() > self.n {
            return Err(bad_args(r, "index out of rank"));
        }
        Ok(root)
    }

    fn unit_arg(&self, r: &RelationRef, a: &Arg) -> Result<Unit, PresentationError> {
        match a {
            Arg::Letter(g, e) if g.is_steinberg() && (*e == 1 || *e == -1) => {
                if !self.alphabet().contains(g) {
                    return Err(bad_args(r, "letter out of rank"));
                }
                Ok(unit_of(&Root::of_generator(g), *e < 0, self.n))
            }
            _ => Err(bad_args(r, "expected a Steinberg letter with exponent 1 or -1")),
        }
    }

    fn sign_arg(&self, r: &RelationRef, a: &Arg) -> Result<i64, PresentationError> {
        match a.int() {
            Some(1) => Ok(1),
            Some(-1) => Ok(-1),
            _ => Err(bad_args(r, "expected exponent 1 or -1")),
        }
    }

    fn index_arg(&self, r: &RelationRef, a: &Arg) -> Result<u8, PresentationError> {
        match a.int() {
            Some(i) if i >= 1 && i <= self.n as i64 => Ok(i as u8),
            _ => Err(bad_args(r, "index out of rank")),
        }
    }

    fn units_word(&self, u: &[Unit]) -> Word {
        Word::from_units(self.alphabet(), u)
    }

    /// The collected commutator [u,v] in the pair order of `swap`.
    pub(crate) fn swap_commutator(&self, u: Unit, v: Unit) -> Option<Vec<Unit>> {
        let n = self.n;
        let (a, b) = (root_of_unit(u, n), root_of_unit(v, n));
        let target = eval_units(&[u, v, u.inv(), v.inv()], n);
        let mut roots: Vec<(i64, Root)> = Vec::new();
        for i in 1..=3 {
            for j in 1..=3 {
                if let Some(r) = a.combine(i, &b, j) {
                    roots.push((tactics::pair_key(i, j), r));
                }
            }
        }
        roots.sort_by(|x, y| y.0.cmp(&x.0));
        let k = roots.len();
        let range: Vec<i64> = (-4..=4).collect();
        let mut exps = alloc::vec![range[0]; k];
        loop {
            let mut units = Vec::new();
            for (t, (_, r)) in roots.iter().enumerate() {
                for _ in 0..exps[t].unsigned_abs() {
                    units.push(unit_of(r, exps[t] < 0, n));
                }
            }
            if eval_units(&units, n) == target {
                return Some(units);
            }
            // Next exponent vector (odometer over -4..=4).
            let mut t = 0;
            loop {
                if t == k {
                    return None;
                }
                let pos = range.iter().position(|&e| e == exps[t]).unwrap();
                if pos + 1 < range.len() {
                    exps[t] = range[pos + 1];
                    break;
                }
                exps[t] = range[0];
                t += 1;
            }
        }
    }

    fn derived(&self, r: &RelationRef) -> Result<RelationInstance, PresentationError> {
        let n = self.n;
        let (lhs, rhs): (Vec<Unit>, Vec<Unit>) = match r.name.as_str() {
            "swap" => {
                let (u, v) = match r.args.as_slice() {
                    [a, b] => (self.unit_arg(r, a)?, self.unit_arg(r, b)?),
                    _ => return Err(bad_args(r, "expected two letters")),
                };
                let (a, b) = (root_of_unit(u, n), root_of_unit(v, n));
                if a == b || a == b.neg() {
                    return Err(bad_args(r, "letters must have distinct, non-opposite roots"));
                }
                let c = self
                    .swap_commutator(u, v)
                    .ok_or_else(|| bad_args(r, "commutator is not a short collected product"))?;
                let mut rhs = c;
                rhs.push(v);
                rhs.push(u);
                (alloc::vec![u, v], rhs)
            }
            "wconj" => {
                let (gamma, s, g) = match r.args.as_slice() {
                    [a, b, c] => {
                        let gamma = match a {
                            Arg::Root(x) if x.max_index() <= n => *x,
                            _ => return Err(bad_args(r, "expected a root of this rank")),
                        };
                        (gamma, self.sign_arg(r, b)?, self.unit_arg(r, c)?)
                    }
                    _ => return Err(bad_args(r, "expected a root, an exponent and a letter")),
                };
                let delta = root_of_unit(g, n);
                let image = Root::reflect(&gamma, &delta);
                let c = conj_sign(&gamma, s, &delta, g.sign(), &image, n)
                    .ok_or_else(|| bad_args(r, "conjugate is not a root letter"))?;
                let mut lhs = w_units(&gamma, s, n);
                lhs.push(g);
                lhs.extend(w_units(&gamma, -s, n));
                (lhs, alloc::vec![unit_of(&image, c < 0, n)])
            }
            "wcomm" => {
                let (i, j, s, t) = match r.args.as_slice() {
                    [a, b, c, d] => (
                        self.index_arg(r, a)?,
                        self.index_arg(r, b)?,
                        self.sign_arg(r, c)?,
                        self.sign_arg(r, d)?,
                    ),
                    _ => return Err(bad_args(r, "expected i, j, s, t")),
                };
                if i == j {
                    return Err(bad_args(r, "indices must differ"));
                }
                let (wi, wj) = (w_units(&Root::long(i, 1), s, n), w_units(&Root::long(j, 1), t, n));
                let mut lhs = wi.clone();
                lhs.extend(&wj);
                let mut rhs = wj;
                rhs.extend(&wi);
                (lhs, rhs)
            }
            "w4eq" => {
                let (i, j) = match r.args.as_slice() {
                    [a, b] => (self.index_arg(r, a)?, self.index_arg(r, b)?),
                    _ => return Err(bad_args(r, "expected i, j")),
                };
                if i == j {
                    return Err(bad_args(r, "indices must differ"));
                }
                let p = |k: u8| {
                    let mut v = Vec::new();
                    for _ in 0..4 {
                        v.extend(w_units(&Root::long(k, 1), 1, n));
                    }
                    v
                };
                (p(i), p(j))
            }
            other => return Err(PresentationError::UnknownRelation(other.to_string())),
        };
        Ok(RelationInstance { lhs: self.units_word(&lhs), rhs: self.units_word(&rhs), derived: true })
    }
}

impl Presentation for StPresentation {
    fn alphabet(&self) -> Alphabet {
        Alphabet::Steinberg { rank: self.n }
    }

    fn instantiate(&self, r: &RelationRef) -> Result<RelationInstance, PresentationError> {
        if let Some(i) = self.cache.borrow().get(r) {
            return Ok(i.clone());
        }
        let inst = if r.name.starts_with("st-") { self.base(r)? } else { self.derived(r)? };
        self.cache.borrow_mut().insert(r.clone(), inst.clone());
        Ok(inst)
    }

    fn derivation(&self, r: &RelationRef) -> Result<ProofScript, PresentationError> {
        let inst = self.instantiate(r)?;
        if !inst.derived {
            return Err(PresentationError::Underivable {
                relation: r.to_string(),
                reason: "defining relation".to_string(),
            });
        }
        tactics::derive(self, r).map_err(|e| PresentationError::Underivable {
            relation: r.to_string(),
            reason: e.to_string(),
        })
    }
}

/// π(LHS) = π(RHS) for every defining relation instance.
pub fn soundness_suite(n: u8) -> Report {
    let p = StPresentation::new(n);
    let mut rep = Report::new(alloc::format!("presentation soundness n={}", n));
    for r in p.base_instances() {
        let ok = match p.instantiate(&r) {
            Ok(i) => pi(&i.lhs) == pi(&i.rhs),
            Err(_) => false,
        };
        rep.push(Item::new(r.to_string(), ok, Tier::Exact));
    }
    rep
}

/// Weyl table completeness plus the named entries w_i y_{i,j} w_i^{-1} = x_{j,i}
/// and w_i x_{j,i} w_i^{-1} = y_{i,j}^{-1}.
pub fn weyl_suite(n: u8) -> Report {
    let mut rep = Report::new(alloc::format!("weyl table n={}", n));
    let roots = Root::all(n);
    let mut resolved = 0;
    let mut total = 0;
    for g in &roots {
        for d in &roots {
            if *g == d.neg() {
                continue;
            }
            total += 1;
            if weyl_conjugation(g, d, n).is_ok() {
                resolved += 1;
            }
        }
    }
    rep.push(
        Item::new("unique sign for every pair", resolved == total, Tier::Exact)
            .with_detail(alloc::format!("{} of {}", resolved, total)),
    );
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let a = weyl_conjugation(&Root::long(i, 1), &Root::short(i, 1, j, 1), n);
            let ok = a.map_or(false, |e| e.image == Root::short(j, 1, i, -1) && e.sign == 1);
            rep.push(Item::new(alloc::format!("w{i} y({i},{j}) w{i}^-1 = x({j},{i})"), ok, Tier::Exact));
            let b = weyl_conjugation(&Root::long(i, 1), &Root::short(j, 1, i, -1), n);
            let ok = b.map_or(false, |e| e.image == Root::short(i, 1, j, 1) && e.sign == -1);
            rep.push(Item::new(alloc::format!("w{i} x({j},{i}) w{i}^-1 = y({i},{j})^-1"), ok, Tier::Exact));
        }
    }
    let id = ZMatrix::identity(2 * n as usize);
    let mut inv_ok = true;
    let mut opp_ok = true;
    for g in &roots {
        let mut u = w_units(g, 1, n);
        u.extend(w_units(&g.neg(), 1, n));
        inv_ok &= eval_units(&u, n) == id;
        for (d, target) in [(*g, g.neg()), (g.neg(), *g)] {
            opp_ok &= conj_sign(g, 1, &d, 1, &target, n) == Some(-1);
        }
    }
    rep.push(Item::new("w(γ) w(-γ) = 1 under π", inv_ok, Tier::Exact));
    rep.push(Item::new("w(γ) x(±γ) w(γ)^-1 = x(∓γ)^-1 under π", opp_ok, Tier::Exact));
    let mut sq_ok = true;
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            for d in [Root::short(i, 1, j, -1), Root::short(j, 1, i, -1), Root::short(i, 1, j, 1), Root::short(i, -1, j, -1)] {
                let mut u = w_units(&Root::long(i, 1), 1, n);
                u.extend(w_units(&Root::long(i, 1), 1, n));
                u.push(unit_of(&d, false, n));
                u.extend(w_units(&Root::long(i, 1), -1, n));
                u.extend(w_units(&Root::long(i, 1), -1, n));
                sq_ok &= eval_units(&u, n) == generator_power(&d.generator(), n, -1);
            }
        }
    }
    rep.push(Item::new("w_i^2 inverts x(i,j), x(j,i), y(i,j), yp(i,j) under π", sq_ok, Tier::Exact));
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{check_script, Direction, StepKind, RewriteStep};

    #[test]
    fn long_w_words() {
        let a = Alphabet::Steinberg { rank: 2 };
        assert_eq!(w(&Root::long(1, 1), 2), Word::parse(a, "z(1) zp(1)^-1 z(1)").unwrap());
        assert_eq!(w(&Root::long(1, -1), 2), Word::parse(a, "zp(1) z(1)^-1 zp(1)").unwrap());
    }

    #[test]
    fn named_weyl_entries() {
        let e = weyl_conjugation(&Root::long(1, 1), &Root::short(1, 1, 2, 1), 2).unwrap();
        assert_eq!((e.image, e.sign), (Root::short(2, 1, 1, -1), 1));
        let e = weyl_conjugation(&Root::long(1, 1), &Root::short(2, 1, 1, -1), 2).unwrap();
        assert_eq!((e.image, e.sign), (Root::short(1, 1, 2, 1), -1));
        let e = weyl_conjugation(&Root::long(1, 1), &Root::short(2, 1, 3, -1), 3).unwrap();
        assert_eq!((e.image, e.sign), (Root::short(2, 1, 3, -1), 1));
        assert!(weyl_conjugation(&Root::long(1, 1), &Root::long(1, -1), 2).is_err());
    }

    #[test]
    fn weyl_and_soundness() {
        for n in 2..=3 {
            assert!(soundness_suite(n).all_pass());
            assert!(weyl_suite(n).all_pass(), "{}", weyl_suite(n));
        }
        assert!(commutator_convention_check().all_pass());
    }

    #[test]
    fn commutator_relations_cover_exactly_the_root_sums() {
        for n in 2..=4 {
            let p = StPresentation::new(n);
            let roots = Root::all(n);
            for a in &roots {
                for b in &roots {
                    let has = p.commutator_relation(a, b).is_some();
                    let expect = *a != b.neg() && a.combine(1, b, 1).is_some();
                    assert_eq!(has, expect, "{} {}", a, b);
                }
            }
        }
    }

    #[test]
    fn instantiate_examples() {
        let p = StPresentation::new(3);
        let a = p.alphabet();
        let i = p.instantiate(&RelationRef::ints("st-xxx", &[1, 2, 3])).unwrap();
        assert_eq!(i.lhs, Word::parse(a, "x(1,2) x(2,3) x(1,2)^-1 x(2,3)^-1").unwrap());
        assert_eq!(i.rhs, Word::parse(a, "x(1,3)").unwrap());
        let i = p.instantiate(&RelationRef::ints("st-xz", &[1, 2])).unwrap();
        assert_eq!(i.rhs, Word::parse(a, "z(1) y(1,2)").unwrap());
        assert!(p.instantiate(&RelationRef::ints("st-xxx", &[1, 1, 3])).is_err());
        assert!(p.instantiate(&RelationRef::ints("st-xxx", &[1, 2, 4])).is_err());
    }

    #[test]
    fn commute_step() {
        let p = StPresentation::new(2);
        let a = p.alphabet();
        let r = RelationRef::parse("st-commute(z(1),z(2))").unwrap();
        let s = ProofScript {
            start: Word::parse(a, "z(1) z(2)").unwrap(),
            end: Word::parse(a, "z(2) z(1)").unwrap(),
            steps: alloc::vec![RewriteStep { position: 0, relation: r, direction: Direction::Fwd, kind: StepKind::Replace }],
        };
        assert!(check_script(&p, &s, Tier::Certified, None).pass);
    }
}
