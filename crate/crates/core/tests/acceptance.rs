// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use averaging_core::algebra::{apply_p, diamond, reduce, rewrite_reduce, universal_map, AveragingAlgebra, LinearCombination};
use averaging_core::enumeration::{
    census, closed_form, reduce_to_v1, schroeder, series, univariate, CensusOptions, RunCap, WordClass,
};
use averaging_core::instances::fixtures;
use averaging_core::operad::{check_operad_axioms, Axiom};
use averaging_core::sampling::{random_averaging_word, random_combination, seeded};
use averaging_core::trees::{
    all_unreduced_trees, averaging_trees, enumerate_schroeder, is_averaging_tree, phi, phi_inverse, psi,
    AveragingTree,
};
use averaging_core::words::{all_averaging_words, all_bracketed_words, Letter};

// The operad sweep is allocation-bound.
#[global_allocator]
static ALLOC: mimalloc::MiMalloc = mimalloc::MiMalloc;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took <= limit, || format!("{what} took {took:.1?}, limit {limit:?}"))
}

fn v1_census(max_degree: usize, max_arity: usize) -> averaging_core::enumeration::Census {
    census(&CensusOptions::new(RunCap::Finite(1), max_degree, max_arity).include_one(true)).expect("within budget")
}

fn ints(v: &[BigInt]) -> Vec<u64> {
    v.iter().map(|b| b.to_u64().expect("fits")).collect()
}

fn c1_schroeder_identification() -> Outcome {
    let expected = [2u64, 4, 12, 44, 180, 788, 3612, 17116];
    let start = Instant::now();
    let c = v1_census(7, 15);
    let totals = c.table(WordClass::All).degree_totals();
    ensure(totals == expected, || format!("census totals {totals:?}"))?;
    within(Duration::from_secs(60), start, "census")?;

    let start = Instant::now();
    let a = ints(&univariate(WordClass::All, 12));
    let s = averaging_core::enumeration::schroeder_sequence(12);
    ensure(a[..8] == expected, || format!("series totals {:?}", &a[..8]))?;
    for n in 1..=12 {
        let twice = s[n].to_u64().expect("fits") * 2;
        ensure(a[n] == twice, || format!("a_{n} = {} but 2 s_{n} = {twice}", a[n]))?;
    }
    within(Duration::from_secs(5), start, "series")?;
    Ok(format!("census n<=7 {totals:?}; series n<=12 matches 2*s_n"))
}

fn c2_indecomposable_shift() -> Outcome {
    let expected = [0u64, 1, 2, 6, 22, 90, 394, 1806];
    let c = v1_census(7, 15);
    let i = c.table(WordClass::Indecomposable).degree_totals();
    ensure(i == expected, || format!("census i {i:?}"))?;
    let iseq = univariate(WordClass::Indecomposable, 12);
    for n in 0..=11 {
        let s = BigInt::from(schroeder(n));
        ensure(s == iseq[n + 1], || format!("schroeder({n}) = {s} but i_{} = {}", n + 1, iseq[n + 1]))?;
    }
    Ok(format!("census i {i:?}; schroeder(n) = i_(n+1) for n <= 11"))
}

fn c3_decomposable() -> Outcome {
    let expected = [0u64, 0, 1, 5, 23, 107, 509, 2473];
    let d = v1_census(7, 15).table(WordClass::Decomposable).degree_totals();
    ensure(d == expected, || format!("census d {d:?}"))?;
    Ok(format!("d {d:?}"))
}

fn c4_schroeder_trees() -> Outcome {
    let expected = [1usize, 2, 6, 22, 90, 394];
    let counts: Vec<usize> = (1..=6).map(|n| enumerate_schroeder(n).expect("budget").len()).collect();
    ensure(counts == expected, || format!("|Sh_n| {counts:?}"))?;
    let c = census(&CensusOptions::new(RunCap::Finite(1), 5, 11).keep_words(true)).expect("budget");
    let words = &c.words.as_ref().expect("kept")[&WordClass::Indecomposable];
    for n in 1..=5 {
        let image: BTreeSet<_> = words
            .iter()
            .filter(|w| w.degree() == n)
            .map(|w| psi(w).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        let trees: BTreeSet<_> = enumerate_schroeder(n).expect("budget").into_iter().collect();
        let preimages = words.iter().filter(|w| w.degree() == n).count();
        ensure(image.len() == preimages, || format!("psi not injective at n = {n}"))?;
        ensure(image == trees, || format!("psi image differs from Sh_{n}"))?;
    }
    Ok(format!("|Sh_n| {counts:?}; psi image = Sh_n for n <= 5"))
}

fn c5_recurrence_web() -> Outcome {
    let c = v1_census(6, 12);
    let (a, b, i, d, cc) = (
        c.table(WordClass::All),
        c.table(WordClass::Bracketed),
        c.table(WordClass::Indecomposable),
        c.table(WordClass::Decomposable),
        c.table(WordClass::Associate),
    );
    let mut checked = 0;
    for n in 1..=6 {
        for m in 2..=12 {
            let bm = |k: usize| if m >= k { b.get(n, m - k) } else { 0 };
            ensure(a.get(n, m) == b.get(n, m) + cc.get(n, m), || format!("a = b + c at ({n},{m})"))?;
            ensure(cc.get(n, m) == 2 * bm(1) + bm(2), || format!("c recurrence at ({n},{m})"))?;
            ensure(b.get(n, m) == i.get(n, m) + d.get(n, m), || format!("b = i + d at ({n},{m})"))?;
            let c_prev = cc.get(n - 1, m) as i64 - b.get(n - 1, m - 1) as i64;
            ensure(i.get(n, m) as i64 == c_prev, || format!("i from c at ({n},{m})"))?;
            if n >= 2 {
                let rel = b.get(n - 1, m - 1) + b.get(n - 1, m - 2);
                ensure(i.get(n, m) == rel, || format!("i from b at ({n},{m})"))?;
            }
            checked += 1;
        }
    }
    Ok(format!("5 identities on {checked} cells (n <= 6, m <= 12)"))
}

fn c6_run_cap_reduction() -> Outcome {
    for v in [RunCap::Finite(2), RunCap::Finite(3), RunCap::Infinite] {
        let direct = census(&CensusOptions::new(v, 4, 10)).expect("budget");
        let reduced = reduce_to_v1(v, 4, 10);
        let diff = direct.table(WordClass::All).differences(&reduced);
        ensure(diff.is_empty(), || format!("v = {v}: first difference {:?}", diff[0]))?;
    }
    Ok("census(v) = reduce_to_v1(v) for v in {2, 3, inf}, (n, m) <= (4, 10)".into())
}

fn c7_algebra_laws() -> Outcome {
    let ab = [Letter::x(), Letter::new("y").expect("letter")];
    let mut rng = seeded(2024);
    let samples = 1000;
    for k in 0..samples {
        let u = random_averaging_word(&mut rng, &ab, 4, 3);
        let v = random_averaging_word(&mut rng, &ab, 4, 3);
        let w = random_averaging_word(&mut rng, &ab, 4, 3);
        let left = diamond(&diamond(&u, &v), &w);
        let right = diamond(&u, &diamond(&v, &w));
        ensure(left == right, || format!("sample {k}: associativity fails for {u}, {v}, {w}"))?;
        let pp = diamond(&apply_p(&u), &apply_p(&v));
        let a1 = apply_p(&diamond(&u, &apply_p(&v)));
        let a2 = apply_p(&diamond(&apply_p(&u), &v));
        ensure(pp == a1 && pp == a2, || format!("sample {k}: averaging identity fails for {u}, {v}"))?;
    }
    let mut words = 0;
    for size in 1..=8 {
        for w in all_bracketed_words(&[Letter::x()], size) {
            let by_rules = rewrite_reduce(&w).map_err(|e| format!("{w}: {e}"))?;
            ensure(by_rules == reduce(&w), || format!("reduce and rewrite_reduce differ on {w}"))?;
            words += 1;
        }
    }
    Ok(format!("{samples} random triples; reduce = rewrite_reduce on {words} words of size <= 8"))
}

fn c8_universal_property() -> Outcome {
    let ab = [Letter::x(), Letter::new("y").expect("letter")];
    let mut rng = seeded(8);
    let fx = fixtures();
    for (name, alg) in &fx {
        let n = alg.dim();
        // images of the generators: two fixed elements of the algebra
        let gx: Vec<_> = (0..n).map(|k| num_rational::BigRational::from_integer(BigInt::from(k as i64 + 1))).collect();
        let gy: Vec<_> = (0..n).map(|k| num_rational::BigRational::from_integer(BigInt::from(2 - k as i64))).collect();
        let assignment = BTreeMap::from([(ab[0].clone(), gx), (ab[1].clone(), gy)]);
        let f = |e: &LinearCombination| universal_map(&assignment, alg, e).expect("all letters mapped");
        for k in 0..200 {
            let a = random_combination(&mut rng, &ab, 3, 3, 3);
            let b = random_combination(&mut rng, &ab, 3, 3, 3);
            let (fa, fb) = (f(&a), f(&b));
            ensure(f(&a.product(&b)) == alg.mul(&fa, &fb), || format!("{name}, sample {k}: product"))?;
            ensure(f(&a.apply_p()) == alg.op(&fa), || format!("{name}, sample {k}: operator"))?;
            ensure(f(&(&a + &b)) == alg.add(&fa, &fb), || format!("{name}, sample {k}: sum"))?;
        }
    }
    Ok(format!("{} fixtures x 200 random element pairs", fx.len()))
}

fn c9_bijections() -> Outcome {
    let words = all_averaging_words(&[Letter::x()], 6, 4);
    for w in &words {
        let t = phi(w).map_err(|e| e.to_string())?;
        ensure(phi_inverse(&t) == *w, || format!("phi_inverse(phi({w})) != {w}"))?;
    }
    let trees = averaging_trees(6, 4);
    for t in &trees {
        let back = phi(&phi_inverse(t)).map_err(|e| e.to_string())?;
        ensure(back == *t, || format!("phi(phi_inverse({t})) != {t}"))?;
    }
    let image: BTreeSet<AveragingTree> = all_averaging_words(&[Letter::x()], 5, 4)
        .iter()
        .map(|w| phi(w).expect("over x"))
        .collect();
    let all = all_unreduced_trees(5, 4);
    let filtered: BTreeSet<AveragingTree> = averaging_trees(5, 4).into_iter().collect();
    ensure(image == filtered, || {
        format!("phi image has {} trees, filter keeps {}", image.len(), filtered.len())
    })?;
    let rejected = all.iter().filter(|t| !is_averaging_tree(t)).count();
    Ok(format!(
        "{} words, {} trees round-trip; image = filter ({} kept, {rejected} rejected)",
        words.len(),
        trees.len(),
        filtered.len()
    ))
}

fn c10_operad_axioms() -> Outcome {
    let start = Instant::now();
    let family = averaging_trees(4, 3);
    let report = check_operad_axioms(&family);
    if let Some(f) = report.failures.first() {
        return Err(format!("{} failures; first {:?}", report.failures.len(), f));
    }
    within(Duration::from_secs(120), start, "axiom sweep")?;
    let n = |a| report.checked.get(&a).copied().unwrap_or(0);
    Ok(format!(
        "{} trees, {} triples; unit {}, sequential {}, parallel {} instances",
        family.len(),
        report.triples,
        n(Axiom::LeftUnit) + n(Axiom::RightUnit),
        n(Axiom::Sequential),
        n(Axiom::Parallel)
    ))
}

fn c11_closed_forms() -> Outcome {
    let nn = 30;
    let mm = 2 * nn + 1;
    let mut worst: f64 = 0.0;
    for class in [WordClass::Indecomposable, WordClass::Bracketed, WordClass::All] {
        let s = series(class, nn, mm);
        for (z, t) in [(0.01, 0.5), (0.02, 0.3), (0.05, 1.0)] {
            let exact = closed_form(class, z, t);
            let summed = s.eval_f64(z, t);
            let err = (exact - summed).abs();
            worst = worst.max(err);
            ensure(err <= 1e-9, || format!("{class} at ({z}, {t}): closed {exact} vs series {summed}"))?;
        }
    }
    Ok(format!("I, B, A at 3 points, max |error| {worst:.2e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("Schroeder identification", c1_schroeder_identification),
        ("indecomposable = shifted Schroeder", c2_indecomposable_shift),
        ("decomposable sequence", c3_decomposable),
        ("Schroeder-tree counts and psi", c4_schroeder_trees),
        ("recurrence web", c5_recurrence_web),
        ("run-cap reduction", c6_run_cap_reduction),
        ("algebra laws", c7_algebra_laws),
        ("universal property", c8_universal_property),
        ("phi bijections", c9_bijections),
        ("operad axioms", c10_operad_axioms),
        ("closed-form spot check", c11_closed_forms),
    ];
    // optional criterion numbers on the command line select a subset
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    let mut ran = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(k + 1)) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({took:.2?})", k + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {reason} ({took:.2?})", k + 1);
            }
        }
    }
    println!("{} of {ran} criteria passed", ran - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
