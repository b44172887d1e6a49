//! One line per acceptance criterion. Runs without the libtest harness so the
//! verdicts print in order; exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use accmod_core::constructions::{
    canonical_n, chain, check_restriction_lemma_1, classify_b_module, lemma1_instances,
    lemma2_instances, relative, remark3_instance, remark_char_ne_2, restrict_to_b,
    semisimple_complement, verify_chain, BKind, CanonicalN, LemmaReport,
};
use accmod_core::exactlin::{sum_intersect, FieldSpec, Mat, SubspaceBasis};
use accmod_core::fixtures;
use accmod_core::lattice::{
    is_accessible, is_uniform_module, is_uniform_module_by_enumeration, MemoTable,
};
use accmod_core::module::{decompose, is_indecomposable, quotient, socle_of, spin, Rep};
use accmod_core::Config;
use proptest::prelude::*;
use proptest::test_runner::{Config as PtConfig, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Outcome = Result<(), String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.1?}, limit {limit:?}"))
}

fn gf(p: u64) -> FieldSpec {
    FieldSpec::Prime(p)
}

/// Lengths, indecomposability, the chain verdicts and uniformity of `W(1)`.
fn chain_suite(fixture: &str, p: u64, n_max: usize) -> Outcome {
    let cfg = Config::default();
    let (vd, fams) = families(fixture, gf(p), n_max);
    for fam in &fams {
        let n = fam.n;
        ensure(fam.lengths() == [2 * n - 1, 2 * n, 2 * n + 1], || {
            format!("{fixture} GF({p}) n={n}: lengths {:?}", fam.lengths())
        })?;
    }
    for (name, m) in family_modules(&fams) {
        let lib = is_indecomposable(&m, &cfg)
            .map_err(|e| e.to_string())?
            .is_indecomposable();
        ensure(lib, || {
            format!("{fixture} GF({p}) {name} reported decomposable")
        })?;
        if end_basis(&m).len() <= 8 {
            ensure(brute_indecomposable(&m), || {
                format!("{fixture} GF({p}) {name} has an idempotent")
            })?;
        }
    }
    let links = chain(&vd, n_max).map_err(|e| e.to_string())?;
    ensure(links.len() == 4 * n_max, || {
        format!("{} links", links.len())
    })?;
    for r in verify_chain(&links, &cfg).map_err(|e| e.to_string())? {
        ensure(r.holds, || {
            format!("{fixture} GF({p}) {} fails: {:?}", r.label, r.offender)
        })?;
    }
    let w1 = fams[0].w_rep();
    let fast = is_uniform_module(&w1).map_err(|e| e.to_string())?;
    let slow = is_uniform_module_by_enumeration(&w1, &cfg).map_err(|e| e.to_string())?;
    ensure(fast && slow, || {
        format!("{fixture} GF({p}) W(1) not uniform")
    })
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    chain_suite("kronecker", 2, 4)?;
    chain_suite("kronecker", 3, 4)?;
    within(start, Duration::from_secs(60))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    chain_suite("local-b", 2, 3)?;
    within(start, Duration::from_secs(60))
}

fn criterion_3() -> Outcome {
    let cfg = Config::default();
    for (fixture, p, n_max) in [("kronecker", 2, 4), ("kronecker", 3, 4), ("local-b", 2, 3)] {
        let (vd, fams) = families(fixture, gf(p), n_max);
        let mut modules = family_modules(&fams);
        for link in chain(&vd, n_max).map_err(|e| e.to_string())? {
            modules.push((format!("source of {}", link.label), link.source));
            modules.push((format!("target of {}", link.label), link.target));
        }
        let memo = MemoTable::new();
        for (name, m) in modules {
            let (ok, cert) = is_accessible(&m, &memo, &cfg).map_err(|e| e.to_string())?;
            let cert = cert
                .filter(|_| ok)
                .ok_or_else(|| format!("{fixture} GF({p}) {name} not accessible"))?;
            let lengths: Vec<usize> = cert.chain.iter().map(|s| s.module.length()).collect();
            let expected: Vec<usize> = (1..=m.length()).rev().collect();
            ensure(lengths == expected, || {
                format!("{fixture} GF({p}) {name}: chain lengths {lengths:?}")
            })?;
            ensure(cert.validate(&cfg).map_err(|e| e.to_string())?, || {
                format!("{fixture} GF({p}) {name}: certificate does not validate")
            })?;
        }
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let cfg = Config::default();
    let (vd, fams) = families("kronecker", gf(2), 4);
    for fam in &fams[1..] {
        let n = fam.n;
        let space = fam.space();
        let bm = restrict_to_b(space, &vd.witness).map_err(|e| e.to_string())?;
        let cases = [
            (
                CanonicalN::Preprojective,
                &fam.m_prev,
                BKind::Preprojective,
                2 * n - 1,
                Some((n, n - 1)),
                None,
            ),
            (
                CanonicalN::Regular,
                &fam.r,
                BKind::Regular,
                2 * n,
                None,
                Some(n + 1),
            ),
            (
                CanonicalN::Preinjective,
                &fam.w,
                BKind::Preinjective,
                2 * n + 1,
                Some((n, n + 1)),
                None,
            ),
        ];
        for (which, container, kind, len, soc_top, phi_ker) in cases {
            let gens = canonical_n(fam, which);
            ensure(gens.iter().all(|g| container.contains(space, g)), || {
                format!("n={n} {which:?}: generators leave the container")
            })?;
            let nsub = spin(&bm, gens);
            let nrep = nsub.to_rep(&bm).0;
            let c = classify_b_module(&nrep, &cfg).map_err(|e| e.to_string())?;
            let got_soc_top = (c.socle_length, c.top_length);
            let ok = c.kind == kind
                && c.length == len
                && nrep.length() == len
                && socle_of(&nrep).length() == c.socle_length
                && soc_top.map_or(true, |st| st == got_soc_top)
                && phi_ker.map_or(true, |k| {
                    k == c.phi_kernel_dim && k == nrep.action(0).kernel().dim()
                });
            ensure(ok, || format!("n={n} {which:?}: {c:?}"))?;
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let cfg = Config::default();
    let f = gf(2);
    let r = remark3_instance(f, &cfg).map_err(|e| e.to_string())?;
    ensure(r.passed(), || format!("report checks: {:?}", r.checks))?;
    ensure(r.hom_n_m_dim == 0 && r.hom_m_n_dim == 2, || {
        format!("hom dims {} {}", r.hom_n_m_dim, r.hom_m_n_dim)
    })?;
    ensure(r.image_lengths == vec![3, 3, 3], || {
        format!("image lengths {:?}", r.image_lengths)
    })?;

    // Independent recomputation.
    let a = fixtures::three_subspace(f);
    let lines: [&[&[i64]]; 3] = [&[&[1], &[0]], &[&[0], &[1]], &[&[1], &[1]]];
    let m = Rep::new(
        a.clone(),
        vec![1, 1, 1, 2],
        lines.iter().map(|l| Mat::from_i64(f, l)).collect(),
    )
    .unwrap();
    let n = Rep::new(
        a,
        vec![1, 1, 1, 1],
        (0..3).map(|_| Mat::from_i64(f, &[&[1]])).collect(),
    )
    .unwrap();
    ensure(hom_basis(&n, &m).is_empty(), || {
        "oracle: Hom(N, M) != 0".into()
    })?;
    ensure(hom_basis(&m, &n).len() == 2, || {
        "oracle: dim Hom(M, N) != 2".into()
    })?;
    let ranks: Vec<usize> = all_homs(&m, &n)
        .iter()
        .filter(|h| !h.is_zero())
        .map(|h| h.rank())
        .collect();
    ensure(ranks == vec![3, 3, 3], || {
        format!("oracle: image lengths {ranks:?}")
    })?;
    for s in brute_submodules(&m) {
        if s.length() == 4 {
            ensure(!brute_isomorphic(&s.to_rep(&m).0, &n), || {
                "oracle: submodule isomorphic to N".into()
            })?;
        }
        if s.length() == 1 {
            let q = quotient(&m, &s).unwrap().0;
            ensure(!brute_isomorphic(&q, &n), || {
                "oracle: quotient isomorphic to N".into()
            })?;
        }
    }
    within(start, Duration::from_secs(10))
}

fn criterion_6() -> Outcome {
    let cfg = Config::default();
    for p in [3, 5] {
        let r = remark_char_ne_2(gf(p), &cfg).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("GF({p}) checks: {:?}", r.checks))?;
        let dim = |d: &[usize]| d.iter().sum::<usize>();
        ensure(
            dim(&r.u_dims) == 2 && dim(&r.u_prime_dims) == 2 && !r.uniform_inclusion_holds,
            || {
                format!(
                    "GF({p}): {:?} {:?} {}",
                    r.u_dims, r.u_prime_dims, r.uniform_inclusion_holds
                )
            },
        )?;

        // Oracle: some U with M(1) ⊆ U ⊆ W(2) is decomposable.
        let (_, fams) = families("kronecker", gf(p), 2);
        let fam = &fams[1];
        let (wr, _) = fam.w.to_rep(fam.space());
        let lower = relative(&fam.w, &fam.m_prev).unwrap();
        let offender = brute_submodules(&wr)
            .into_iter()
            .filter(|u| lower.is_subset_of(u))
            .any(|u| !brute_indecomposable(&u.to_rep(&wr).0));
        ensure(offender, || {
            format!("GF({p}) oracle: every intermediate module is indecomposable")
        })?;
    }
    Ok(())
}

/// A random module of length at most 6 over GF(2), and the planted summand
/// dimension vectors when it was built as a direct sum.
fn random_case(rng: &mut ChaCha8Rng, i: usize) -> (Rep, Option<Vec<Vec<usize>>>) {
    let f = gf(2);
    match i % 3 {
        0 => {
            let pool = kronecker_indecomposables(f);
            loop {
                let k = rng.gen_range(1..=3);
                let parts: Vec<Rep> = (0..k)
                    .map(|_| pool[rng.gen_range(0..pool.len())].clone())
                    .collect();
                if parts.iter().map(Rep::length).sum::<usize>() <= 6 {
                    let (m, dims) = planted_sum(&parts, rng);
                    return (m, Some(dims));
                }
            }
        }
        1 => {
            let a = rng.gen_range(1..=3);
            let b = rng.gen_range(1..=3);
            (random_free_rep(&fixtures::kronecker(f), &[a, b], rng), None)
        }
        _ => {
            let t = rng.gen_range(1..=3);
            let s = rng.gen_range(1..=3);
            (random_local_b_rep(f, t, s, rng), None)
        }
    }
}

fn criterion_7() -> Outcome {
    let cfg = Config::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut tested = 0;
    let mut planted = 0;
    while tested < 50 {
        let (m, plant) = random_case(&mut rng, tested);
        // Keep the oracle's enumeration of End(m) small.
        if end_basis(&m).len() > 14 {
            continue;
        }
        let lib = is_indecomposable(&m, &cfg)
            .map_err(|e| e.to_string())?
            .is_indecomposable();
        let oracle = brute_indecomposable(&m);
        ensure(lib == oracle, || {
            format!(
                "case {tested} dims {:?}: library {lib}, oracle {oracle}",
                m.dims()
            )
        })?;
        let d = decompose(&m, &cfg).map_err(|e| e.to_string())?;
        ensure(d.verify(&m), || {
            format!("case {tested}: decomposition does not verify")
        })?;
        ensure((d.summand_count() == 1) == oracle, || {
            format!("case {tested}: summand count {}", d.summand_count())
        })?;
        if let Some(dims) = plant {
            ensure(d.dim_vectors() == dims, || {
                format!("case {tested}: planted {dims:?}, got {:?}", d.dim_vectors())
            })?;
            planted += 1;
        }
        tested += 1;
    }
    ensure(planted > 0, || "no planted cases".into())
}

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Prime(2)),
        Just(FieldSpec::Prime(3)),
        Just(FieldSpec::Prime(5)),
        Just(FieldSpec::Prime(7)),
        Just(FieldSpec::Rational),
    ]
}

fn mat_strategy() -> impl Strategy<Value = Mat> {
    (field_strategy(), 1usize..6, 1usize..7).prop_flat_map(|(f, r, c)| {
        prop::collection::vec(-3i64..4, r * c)
            .prop_map(move |xs| Mat::from_fn(f, r, c, |i, j| f.from_i64(xs[i * c + j])))
    })
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Outcome
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(PtConfig {
        cases: 200,
        failure_persistence: None,
        ..PtConfig::default()
    });
    runner
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

fn lemma_soundness(fixture: &str, n_max: usize) -> Outcome {
    let cfg = Config::default();
    let (vd, fams) = families(fixture, gf(2), n_max + 1);
    let mut reports: Vec<(String, LemmaReport)> = Vec::new();
    for fam in &fams[..n_max] {
        for inst in lemma1_instances(&vd, fam, &cfg).map_err(|e| e.to_string())? {
            reports.push((inst.label, inst.report));
        }
    }
    for next in &fams[1..] {
        for inst in lemma2_instances(&vd, next, &cfg).map_err(|e| e.to_string())? {
            reports.push((inst.label, inst.report));
        }
    }
    // Every B-submodule N of the small family modules, with a semisimple complement.
    for (name, m) in family_modules(&fams[..2]) {
        let bm = restrict_to_b(&m, &vd.witness).map_err(|e| e.to_string())?;
        for n in brute_submodules(&bm) {
            let np = semisimple_complement(&bm, &n);
            let r = check_restriction_lemma_1(&m, &vd.witness, &n, &np, &cfg)
                .map_err(|e| e.to_string())?;
            reports.push((format!("{name} N={:?}", n.dims()), r));
        }
    }
    for (label, r) in &reports {
        ensure(r.is_sound(), || {
            format!("{fixture}: {label} hypotheses hold, conclusion fails")
        })?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    run_property("rref idempotence", mat_strategy(), |m| {
        let (r, pivots) = m.rref();
        let (rr, pivots2) = r.rref();
        prop_assert_eq!(&rr, &r);
        prop_assert_eq!(pivots, pivots2);
        Ok(())
    })?;
    run_property("rank-nullity", mat_strategy(), |m| {
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.dim(), m.cols());
        for v in k.vectors() {
            prop_assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
        Ok(())
    })?;
    let pair = (field_strategy(), 1usize..7).prop_flat_map(|(f, n)| {
        let rows = prop::collection::vec(prop::collection::vec(-2i64..3, n), 0..5);
        (Just(f), Just(n), rows.clone(), rows)
    });
    run_property("Zassenhaus dimension law", pair, |(f, n, a, b)| {
        let span = |rows: &[Vec<i64>]| {
            SubspaceBasis::span(
                f,
                n,
                rows.iter()
                    .map(|r| r.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>()),
            )
        };
        let (u, w) = (span(&a), span(&b));
        let (sum, meet) = sum_intersect(&u, &w).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
        prop_assert!(u.is_subspace_of(&sum) && w.is_subspace_of(&sum));
        prop_assert!(meet.is_subspace_of(&u) && meet.is_subspace_of(&w));
        Ok(())
    })?;

    let cfg = Config::default();
    for (fixture, n_max) in [("kronecker", 3), ("local-b", 3)] {
        let (_, fams) = families(fixture, gf(2), n_max);
        let mut cases: Vec<Rep> = Vec::new();
        for (_, m) in family_modules(&fams) {
            if m.length() > 5 {
                continue;
            }
            for s in brute_submodules(&m) {
                if !s.is_zero() {
                    cases.push(s.to_rep(&m).0);
                }
            }
        }
        for m in &cases {
            let simple_socle = is_uniform_module(m).map_err(|e| e.to_string())?;
            let enumerated =
                is_uniform_module_by_enumeration(m, &cfg).map_err(|e| e.to_string())?;
            let oracle = brute_submodules(m)
                .iter()
                .filter(|s| !s.is_zero())
                .all(|s| brute_indecomposable(&s.to_rep(m).0));
            ensure(simple_socle == enumerated && enumerated == oracle, || {
                format!("{fixture} dims {:?}: socle {simple_socle}, enumeration {enumerated}, oracle {oracle}", m.dims())
            })?;
        }
    }
    lemma_soundness("kronecker", 3)?;
    lemma_soundness("local-b", 2)
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        (
            "Kronecker chain over GF(2) and GF(3), n = 1..4",
            criterion_1,
        ),
        ("local algebra chain over GF(2), n = 1..3", criterion_2),
        ("accessibility certificates", criterion_3),
        ("B-restriction classes, n = 2..4", criterion_4),
        ("3-subspace instance over GF(2)", criterion_5),
        (
            "odd characteristic counterexample over GF(3) and GF(5)",
            criterion_6,
        ),
        (
            "indecomposability and decomposition against brute force",
            criterion_7,
        ),
        ("property suites", criterion_8),
    ];
    let mut failed = 0;
    for (i, (desc, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let t = start.elapsed();
        match outcome {
            Ok(()) => println!("criterion {} PASS {desc} ({t:.2?})", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {} FAIL {desc} ({t:.2?}): {e}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
