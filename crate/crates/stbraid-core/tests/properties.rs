use proptest::prelude::*;

use stbraid_core::braid::{fbar, perm, BraidPresentation};
use stbraid_core::finite::{
    all_generators, closure_holds, factorial, fbar_images, group_order, index_i, span, FpMatrix,
};
use stbraid_core::presentation::{
    apply_step, check_script, relator, Direction, Presentation, ProofScript, RelationRef, RewriteStep, StepKind,
};
use stbraid_core::steinberg::{pi, StPresentation};
use stbraid_core::zmatrix::{eval_word, generator_matrix, is_symplectic};
use stbraid_core::{Alphabet, GenSymbol, Root, Tier, Word, ZMatrix};

fn st_letters(n: u8, max: usize) -> impl Strategy<Value = Vec<(GenSymbol, i64)>> {
    let a = Alphabet::Steinberg { rank: n };
    prop::collection::vec((0..a.gen_count(), -2i64..=2), 0..max)
        .prop_map(move |v| v.into_iter().map(|(g, e)| (a.gen_at(g), e)).collect())
}

fn braid_letters(strands: u8, max: usize) -> impl Strategy<Value = Vec<(GenSymbol, i64)>> {
    prop::collection::vec((1..strands, -2i64..=2), 0..max)
        .prop_map(|v| v.into_iter().map(|(i, e)| (GenSymbol::sigma(i), e)).collect())
}

proptest! {
    #[test]
    fn reduce_is_idempotent(raw in st_letters(3, 40)) {
        let a = Alphabet::Steinberg { rank: 3 };
        let w = Word::reduce(a, &raw).unwrap();
        prop_assert_eq!(Word::reduce(a, w.letters()).unwrap(), w.clone());
        prop_assert!(w.mul(&w.invert()).unwrap().is_empty());
        prop_assert!(w.invert().mul(&w).unwrap().is_empty());
        prop_assert_eq!(w.invert().invert(), w);
    }

    #[test]
    fn reduce_braid_words(raw in braid_letters(8, 40)) {
        let a = Alphabet::Braid { strands: 8 };
        let w = Word::reduce(a, &raw).unwrap();
        prop_assert_eq!(Word::reduce(a, w.letters()).unwrap(), w.clone());
        prop_assert!(w.mul(&w.invert()).unwrap().is_empty());
    }

    #[test]
    fn eval_is_a_homomorphism(u in st_letters(2, 12), v in st_letters(2, 12)) {
        let a = Alphabet::Steinberg { rank: 2 };
        let (u, v) = (Word::reduce(a, &u).unwrap(), Word::reduce(a, &v).unwrap());
        let uv = eval_word(&u.mul(&v).unwrap());
        prop_assert_eq!(&uv, &eval_word(&u).mul(&eval_word(&v)));
        prop_assert!(is_symplectic(&uv));
        prop_assert!(eval_word(&u.invert()).mul(&eval_word(&u)).is_identity());
    }

    #[test]
    fn fbar_and_perm_are_homomorphisms(u in braid_letters(6, 10), v in braid_letters(6, 10)) {
        let a = Alphabet::Braid { strands: 6 };
        let (u, v) = (Word::reduce(a, &u).unwrap(), Word::reduce(a, &v).unwrap());
        let uv = u.mul(&v).unwrap();
        prop_assert_eq!(fbar(&uv, 2).unwrap(), fbar(&u, 2).unwrap().mul(&fbar(&v, 2).unwrap()));
        prop_assert_eq!(perm(&uv).unwrap(), perm(&u).unwrap().compose(&perm(&v).unwrap()));
    }

    /// Scripts made of relator insertions always replay, and every step keeps π.
    #[test]
    fn random_insertion_scripts_replay(
        start in st_letters(2, 8),
        steps in prop::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>(), any::<bool>(), any::<prop::sample::Index>()), 1..6),
    ) {
        let pres = StPresentation::new(2);
        let rels = pres.base_instances();
        let start = Word::reduce(pres.alphabet(), &start).unwrap();
        let mut w = start.clone();
        let mut script_steps = Vec::new();
        for (r, pos, fwd, rot) in steps {
            let relation = rels[r.index(rels.len())].clone();
            let direction = if fwd { Direction::Fwd } else { Direction::Rev };
            let inst = pres.instantiate(&relation).unwrap();
            let len = relator(&inst, direction).len();
            let step = RewriteStep {
                position: pos.index(w.len() + 1),
                relation,
                direction,
                kind: StepKind::Insert { rotation: rot.index(len) },
            };
            w = apply_step(&pres, &w, &step).unwrap();
            script_steps.push(step);
        }
        let script = ProofScript { start: start.clone(), end: w.clone(), steps: script_steps };
        let oracle = |x: &Word| pi(x);
        let rep = check_script(&pres, &script, Tier::Certified, Some(&oracle));
        prop_assert!(rep.pass, "{:?}", rep.error);
        prop_assert!(rep.pi_preserved.unwrap().iter().all(|&b| b));
        prop_assert_eq!(pi(&start), pi(&w));
        // Round trip through the text form.
        prop_assert_eq!(ProofScript::parse(&script.to_text()).unwrap(), script);
    }

    #[test]
    fn fp_encoding_is_injective(a in prop::collection::vec(0u32..3, 16), b in prop::collection::vec(0u32..3, 16)) {
        let rows = |v: &Vec<u32>| v.chunks(4).map(|r| r.iter().map(|&x| x as i64).collect()).collect::<Vec<Vec<i64>>>();
        let (ma, mb) = (FpMatrix::from_rows(3, &rows(&a)), FpMatrix::from_rows(3, &rows(&b)));
        prop_assert_eq!(ma.encode() == mb.encode(), a == b);
        prop_assert_eq!(FpMatrix::decode(3, 4, ma.encode().unwrap()), ma);
    }
}

#[test]
fn braid_relations_replay() {
    for k in [6u8, 8] {
        let pres = BraidPresentation::new(Alphabet::Braid { strands: k });
        for r in pres.defining_relations() {
            let inst = pres.instantiate(&r).unwrap();
            let step = RewriteStep { position: 0, relation: r.clone(), direction: Direction::Fwd, kind: StepKind::Replace };
            assert_eq!(apply_step(&pres, &inst.lhs, &step).unwrap(), inst.rhs);
        }
    }
    assert!(pres_rejects_unknown());
}

fn pres_rejects_unknown() -> bool {
    let pres = StPresentation::new(2);
    pres.instantiate(&RelationRef::ints("st-nonsense", &[1])).is_err()
        && pres.instantiate(&RelationRef::ints("st-xxx", &[1, 2, 3])).is_err()
}

#[test]
fn reflect_is_an_involution() {
    for n in 2..=5u8 {
        let roots = Root::all(n);
        assert_eq!(roots.len(), 2 * (n as usize) * (n as usize));
        for g in &roots {
            assert!(roots.contains(&g.neg()));
            for d in &roots {
                let r = Root::reflect(g, d);
                assert!(roots.contains(&r));
                assert_eq!(Root::reflect(g, &r), *d);
            }
        }
    }
}

#[test]
fn generators_are_unipotent() {
    for n in 2..=5u8 {
        let id = ZMatrix::identity(2 * n as usize);
        for r in Root::all(n) {
            let m = generator_matrix(&r.generator(), n);
            let nil = m.sub(&id);
            let mut p = id.clone();
            for _ in 0..2 * n {
                p = p.mul(&nil);
            }
            assert_eq!(p, ZMatrix::zero(2 * n as usize));
            assert!(is_symplectic(&m));
        }
    }
}

#[test]
fn index_times_factorial_is_the_order() {
    for n in 2..=6u32 {
        assert_eq!(index_i(n).unwrap() * factorial(2 * n + 2), group_order(n, 2));
    }
}

#[test]
fn full_generator_lists_span_the_group() {
    for (n, p) in [(2u8, 2u32), (2, 3)] {
        let g = all_generators(n, p);
        let order: u64 = group_order(n as u32, p).try_into().unwrap();
        let rep = span(&g, order).unwrap();
        assert_eq!(rep.reached, order);
        let mats: Vec<FpMatrix> = g.into_iter().map(|(_, m)| m).collect();
        assert!(closure_holds(&rep, &mats));
    }
    let rep = span(&all_generators(3, 2), 1 << 24).unwrap();
    assert_eq!(rep.reached, 1_451_520);
}

#[test]
fn fbar_images_mod_2_are_involutions() {
    for n in 2..=4u8 {
        for (name, m) in fbar_images(n, 2).unwrap() {
            assert!(m.mul(&m).is_identity(), "{}", name);
        }
    }
}

#[test]
fn span_is_deterministic() {
    let g = fbar_images(2, 3).unwrap();
    let a = span(&g, 1 << 20).unwrap();
    let mut rev = g.clone();
    rev.reverse();
    let b = span(&rev, 1 << 20).unwrap();
    assert_eq!(a.elements, b.elements);
    assert_eq!(a, span(&g, 1 << 20).unwrap());
}
