//! One pass/fail line per acceptance criterion. Exits non-zero if any fails.

use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use stbraid::{check_any_script, corpus_dir, first_failure_at, load_corpus, passes_at};
use stbraid_core::braid::{
    acampo_check, braid_hom_suite, delta_image_suite, kernel_suite, lemma_suite, SuiteOptions,
};
use stbraid_core::finite::{
    all_generators, closure_holds, e_set, fbar_images, group_order, index_i, reduce_mod, span, sp6_commutator_chain_check,
    FpMatrix, ENUMERATION_GATE,
};
use stbraid_core::steinberg::{central_w4_suite, soundness_suite, weyl_suite};
use stbraid_core::zmatrix::{commutation_suite, generator_matrix};
use stbraid_core::{golden, Alphabet, GenSymbol, Item, Report, Root, Tier, Word};

const PI: SuiteOptions = SuiteOptions { certified: false, budget: 100_000 };
const CERT: SuiteOptions = SuiteOptions { certified: true, budget: 100_000 };

struct Outcome {
    pass: bool,
    note: String,
}

/// Merge reports, remembering the tier each must reach.
#[derive(Default)]
struct Gate {
    failures: Vec<String>,
    items: usize,
}

impl Gate {
    fn add(&mut self, rep: &Report, tier: Tier) {
        self.items += rep.len();
        if rep.is_empty() {
            self.failures.push(format!("{}: empty report", rep.title));
        } else if !passes_at(rep, tier) {
            let i = first_failure_at(rep, tier).expect("a failing item");
            self.failures.push(format!("{}: {}", rep.title, i.name));
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.items += 1;
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn time(&mut self, t: Instant, limit: Duration) {
        if t.elapsed() > limit {
            self.failures.push(format!("took {:?}, limit {:?}", t.elapsed(), limit));
        }
    }

    fn done(self) -> Outcome {
        match self.failures.first() {
            None => Outcome { pass: true, note: format!("{} checks", self.items) },
            Some(f) => Outcome { pass: false, note: format!("{} of {} failed, first: {}", self.failures.len(), self.items, f) },
        }
    }
}

fn select(rep: Report, keep: impl Fn(&Item) -> bool) -> Report {
    let mut out = Report::new(rep.title.clone());
    out.items = rep.items.into_iter().filter(|i| keep(i)).collect();
    out
}

fn c1() -> Outcome {
    let t = Instant::now();
    let mut g = Gate::default();
    for n in 2..=5 {
        g.add(&commutation_suite(n), Tier::Exact);
    }
    g.time(t, Duration::from_secs(5));
    g.done()
}

fn c2() -> Outcome {
    let t = Instant::now();
    let mut g = Gate::default();
    for n in 2..=5 {
        g.add(&soundness_suite(n), Tier::Exact);
    }
    g.time(t, Duration::from_secs(5));
    g.done()
}

fn c3() -> Outcome {
    let t = Instant::now();
    let mut g = Gate::default();
    for n in 2..=5 {
        g.add(&braid_hom_suite(n, false, PI), Tier::PiVerified);
    }
    for n in 2..=3 {
        g.add(&braid_hom_suite(n, false, CERT), Tier::Certified);
    }
    g.time(t, Duration::from_secs(30));
    g.done()
}

fn c4() -> Outcome {
    let mut g = Gate::default();
    for n in 2..=3 {
        g.add(&braid_hom_suite(n, true, CERT), Tier::Certified);
    }
    g.done()
}

fn c5() -> Outcome {
    let mut g = Gate::default();
    for n in 2..=4 {
        g.add(&weyl_suite(n), Tier::Exact);
    }
    g.done()
}

fn c6() -> Outcome {
    let mut g = Gate::default();
    for n in 2..=5 {
        g.add(&central_w4_suite(n, false, 0), Tier::PiVerified);
    }
    for n in 2..=3 {
        g.add(&central_w4_suite(n, true, 100_000), Tier::Certified);
    }
    g.done()
}

fn c7() -> Outcome {
    let mut g = Gate::default();
    for n in 2..=4 {
        g.add(&lemma_suite(n, PI), Tier::PiVerified);
    }
    for n in 2..=3 {
        g.add(&lemma_suite(n, CERT), Tier::Certified);
    }
    g.done()
}

fn c8() -> Outcome {
    let mut g = Gate::default();
    for n in 2..=5 {
        g.add(&delta_image_suite(n, PI), Tier::PiVerified);
    }
    for n in 2..=3 {
        let rep = delta_image_suite(n, CERT);
        let want = format!("charge f(Δ_{}²) = {}", 2 * n + 2, golden::u64(&format!("charge.delta.{}", n)));
        g.check(rep.items.iter().any(|i| i.name == want), format!("missing item `{}`", want));
        g.add(&rep, Tier::Certified);
    }
    g.done()
}

fn kernel(n: u8, keep: fn(&str) -> bool, opt: SuiteOptions) -> Report {
    select(kernel_suite(n, opt), |i| keep(&i.name))
}

fn c9() -> Outcome {
    let keep: fn(&str) -> bool = |s| s.starts_with("f(Δ");
    let mut g = Gate::default();
    for n in 2..=3 {
        g.add(&kernel(n, keep, CERT), Tier::Certified);
    }
    g.done()
}

fn c10() -> Outcome {
    let keep: fn(&str) -> bool = |s| s.contains("α");
    let mut g = Gate::default();
    for n in 2..=5 {
        g.add(&kernel(n, |s| s.starts_with("f(α"), PI), Tier::PiVerified);
    }
    for n in 2..=3 {
        let rep = kernel(n, keep, CERT);
        g.check(rep.items.iter().any(|i| i.name.contains("α_0")), "f̂(α_0) item missing");
        g.add(&rep, Tier::Certified);
    }
    g.done()
}

fn c11() -> Outcome {
    let keep: fn(&str) -> bool = |s| s.starts_with("f([σ_3") || s.starts_with("f(Δ_5^4 Δ_3^-16)");
    let mut g = Gate::default();
    for n in 2..=3 {
        let rep = kernel(n, keep, CERT);
        g.check(rep.len() >= 2, format!("n = {}: expected both generators", n));
        g.add(&rep, Tier::Certified);
    }
    g.done()
}

fn c12() -> Outcome {
    let t = Instant::now();
    let mut g = Gate::default();
    let got: Vec<_> = (2..=6u32).map(|n| index_i(n).map(|i| i.to_string())).collect();
    let spent = t.elapsed();
    for (n, v) in (2..=6u32).zip(got) {
        let want = golden::int(&format!("index.{}", n)).to_string();
        g.check(v.as_deref() == Ok(want.as_str()), format!("i_{} = {:?}, want {}", n, v, want));
    }
    if spent > Duration::from_millis(1) {
        g.failures.push(format!("took {:?}", spent));
    }
    g.done()
}

fn z2(n: u8, p: u32) -> (String, FpMatrix) {
    ("z(2)".into(), reduce_mod(&generator_matrix(&GenSymbol::z(2), n), p).unwrap())
}

fn span_is(g: &mut Gate, gens: &[(String, FpMatrix)], key: &str) {
    let want = golden::u64(key);
    match span(gens, ENUMERATION_GATE) {
        Ok(s) => g.check(s.closed && s.reached == want, format!("{}: reached {}, want {}", key, s.reached, want)),
        Err(e) => g.check(false, format!("{}: {}", key, e)),
    }
}

fn c13() -> Outcome {
    let t = Instant::now();
    let mut g = Gate::default();
    let mut gens = e_set(3);
    gens.push(z2(3, 2));
    span_is(&mut g, &gens, "span.e3z2");
    g.check(golden::u64("span.e3z2") == golden::u64("order.3.2"), "span.e3z2 is not the group order");
    for (n, p) in [(2, 2), (3, 2), (2, 3)] {
        let key = format!("order.{}.{}", n, p);
        g.check(group_order(n, p) == golden::int(&key), format!("{} disagrees with the order formula", key));
    }
    g.time(t, Duration::from_secs(60));
    g.add(&sp6_commutator_chain_check(), Tier::Exact);
    g.done()
}

fn c14() -> Outcome {
    let mut g = Gate::default();
    span_is(&mut g, &fbar_images(2, 2).unwrap(), "span.fbar.2.2");
    g.check(golden::u64("span.fbar.2.2") == golden::u64("order.2.2"), "n = 2 span is not the full group");
    span_is(&mut g, &fbar_images(3, 2).unwrap(), "span.fbar.3.2");
    g.check(golden::u64("span.fbar.3.2") < golden::u64("order.3.2"), "n = 3 span should be proper");
    let mut hat = fbar_images(3, 2).unwrap();
    hat.push(z2(3, 2));
    span_is(&mut g, &hat, "span.fhat.3.2");
    g.done()
}

fn c15() -> Outcome {
    let mut g = Gate::default();
    span_is(&mut g, &fbar_images(2, 3).unwrap(), "span.fbar.2.3");
    g.check(golden::u64("span.fbar.2.3") == golden::u64("order.2.3"), "mod 3 span is not the full group");
    g.done()
}

fn c16() -> Outcome {
    let mut g = Gate::default();
    let mut mirrored = true;
    for n in 2..=5 {
        let rep = acampo_check(n);
        mirrored &= rep.items.iter().filter(|i| !i.name.starts_with("P^-1 T_") || i.name.ends_with("^-1")).all(|i| i.pass);
        g.add(&select(rep, |i| !i.name.ends_with("^-1")), Tier::Exact);
    }
    let mut o = g.done();
    if !o.pass && mirrored {
        o.note.push_str("; P^-1 T_i P = fbar(s_i)^-1 holds for every i");
    }
    o
}

/// Every word of at most `len` letters of exponent ±1 in `gens`.
fn all_words(gens: &[GenSymbol], len: usize) -> Vec<Vec<(GenSymbol, i64)>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for g in gens {
                for e in [1, -1] {
                    let mut v: Vec<(GenSymbol, i64)> = w.clone();
                    v.push((*g, e));
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn c17() -> Outcome {
    let mut g = Gate::default();
    // Free reduction: exhaustive on short braid words, random on Steinberg words.
    let a = Alphabet::Braid { strands: 4 };
    let sig: Vec<GenSymbol> = (1..4).map(GenSymbol::sigma).collect();
    let mut ok = true;
    for raw in all_words(&sig, 5) {
        let w = Word::reduce(a, &raw).unwrap();
        ok &= Word::reduce(a, w.letters()).unwrap() == w && w.mul(&w.invert()).unwrap().is_empty();
    }
    g.check(ok, "free reduction (exhaustive, length <= 5)");
    let st = Alphabet::Steinberg { rank: 3 };
    let mut runner = TestRunner::new(Config { cases: 256, failure_persistence: None, ..Config::default() });
    let strat = prop::collection::vec((0..st.gen_count(), -3i64..=3), 0..60);
    let res = runner.run(&strat, |v| {
        let raw: Vec<_> = v.into_iter().map(|(i, e)| (st.gen_at(i), e)).collect();
        let w = Word::reduce(st, &raw).unwrap();
        prop_assert_eq!(Word::reduce(st, w.letters()).unwrap(), w.clone());
        prop_assert!(w.invert().mul(&w).unwrap().is_empty());
        Ok(())
    });
    g.check(res.is_ok(), format!("free reduction (random): {:?}", res.err()));

    // Every corpus script replays and keeps its image at every step.
    match load_corpus(&corpus_dir()) {
        Ok(scripts) => {
            g.check(!scripts.is_empty(), "corpus is empty");
            for (p, s) in scripts {
                let v = check_any_script(&s, Tier::Certified);
                let kept = v.pi_preserved.as_ref().is_some_and(|f| f.iter().all(|&b| b));
                g.check(v.pass && kept, format!("corpus {}: {:?}", p.display(), v.error));
            }
        }
        Err(e) => g.check(false, format!("corpus: {}", e)),
    }

    // Reflections are involutions, exhaustively.
    let mut ok = true;
    for n in 2..=5 {
        let roots = Root::all(n);
        for x in &roots {
            for y in &roots {
                ok &= Root::reflect(x, &Root::reflect(x, y)) == *y;
            }
        }
    }
    g.check(ok, "reflect involution");

    // Span closure under generators and inverses.
    for (n, p) in [(2u8, 2u32), (2, 3)] {
        let gens = all_generators(n, p);
        let s = span(&gens, ENUMERATION_GATE).unwrap();
        let mats: Vec<FpMatrix> = gens.into_iter().map(|(_, m)| m).collect();
        g.check(closure_holds(&s, &mats), format!("span closure n = {}, p = {}", n, p));
        g.check(s.reached == golden::u64(&format!("order.{}.{}", n, p)), format!("full span n = {}, p = {}", n, p));
    }
    let s = span(&all_generators(3, 2), ENUMERATION_GATE).unwrap();
    g.check(s.reached == golden::u64("order.3.2"), "full span n = 3, p = 2");
    g.done()
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 17] = [
        ("commutation relations, n = 2..5", c1),
        ("presentation soundness, n = 2..5", c2),
        ("braid relations map to equal elements", c3),
        ("Artin relations with σ_0 under f̂", c4),
        ("Weyl conjugation table", c5),
        ("w_i^4 central and equal to w_1^4", c6),
        ("closed forms of f(σ_1⋯σ_k) and reversals", c7),
        ("f(Δ²) closed forms and charges", c8),
        ("kernel elements from Δ powers", c9),
        ("f(α_n) = 1 and f̂(α_0) = 1", c10),
        ("[σ_3, Δ_3^4] and Δ_5^4 Δ_3^-16 in the kernel", c11),
        ("index table i_2..i_6", c12),
        ("E_3 and z2 generate Sp_6(F_2)", c13),
        ("mod 2 image of f̄ for n = 2, 3 and of f̂", c14),
        ("mod 3 image of f̄ for n = 2", c15),
        ("A'Campo monodromy matches f̄", c16),
        ("property suites", c17),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {} -- {} ({} ms)",
            k + 1,
            if o.pass { "PASS" } else { "FAIL" },
            name,
            o.note,
            t.elapsed().as_millis()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
