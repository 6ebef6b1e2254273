//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use charp::decomp::{
    ass_monomial, decompose_monomial, decompose_perfection_ideal, build_unbounded_ass, find_linear_growth_h,
    growth_decompose, GrowthMode, MonomialPrime,
};
use charp::frobenius::{frob_root_ceiling, frob_root_elimination, DEFAULT_CONFIRM, DEFAULT_MAX_E};
use charp::perfection::{
    fseq_verify, perfection_member, Extender, FSequence, PerfectionElement, PerfectionIdeal,
    VerifyFailure, VerifyOutcome,
};
use charp::{
    f_closure, frob_power, frob_root, is_f_closed, parse_polynomial, GroebnerBudget, Ideal,
    MonomialOrder, PolyRing, Polynomial, Ring,
};
use rand::Rng;

type Outcome = Result<String, String>;

/// Name, time limit in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| format!("{e:?}"))
}

fn id(r: &std::sync::Arc<Ring>, gens: &[&str]) -> Ideal {
    Ideal::parse(r, gens).unwrap()
}

/// The two random corpora of criteria 1 and 2.
fn regular_corpus() -> Vec<Ideal> {
    let mut out = Vec::new();
    for (p, vars, seed) in [(2u64, vec!["X", "Y"], 11u64), (3, vec!["X", "Y", "Z"], 13)] {
        let r = common::ring(p, &vars);
        let mut rng = common::rng(seed);
        for _ in 0..50 {
            out.push(common::random_ideal(&mut rng, &r, 3, 4, 4));
        }
    }
    out
}

fn kunz_roundtrip() -> Outcome {
    let b = GroebnerBudget::default();
    let corpus = regular_corpus();
    for (k, i) in corpus.iter().enumerate() {
        let back = ok(frob_root(&ok(frob_power(i, 1))?, &b))?;
        ensure!(ok(back.equals(i, &b))?, "ideal {k} ({i}) came back as {back}");
    }
    Ok(format!("{} ideals", corpus.len()))
}

fn regular_f_closed() -> Outcome {
    let b = GroebnerBudget::default();
    let corpus = regular_corpus();
    for (k, i) in corpus.iter().enumerate() {
        let res = ok(f_closure(i, DEFAULT_MAX_E, DEFAULT_CONFIRM, &b))?;
        ensure!(res.stabilized_at == 0, "ideal {k} stabilized at {}", res.stabilized_at);
        ensure!(ok(res.closure.equals(i, &b))?, "ideal {k} ({i}) has closure {}", res.closure);
    }
    Ok(format!("{} ideals", corpus.len()))
}

fn cusp_counterexample() -> Outcome {
    let b = GroebnerBudget::default();
    let base = ok(PolyRing::new(2, &["U", "V"], MonomialOrder::Grevlex))?;
    let j = ok(parse_polynomial(&base, "V^2 + U^3"))?;
    let r = ok(Ring::quotient(base.clone(), vec![j], true))?;
    let u = id(&r, &["U"]);
    ensure!(!ok(is_f_closed(&u, DEFAULT_MAX_E, DEFAULT_CONFIRM, &b))?, "(U) reported F-closed");
    let res = ok(f_closure(&u, DEFAULT_MAX_E, DEFAULT_CONFIRM, &b))?;
    ensure!(ok(res.closure.equals(&id(&r, &["U", "V"]), &b))?, "closure is {}", res.closure);
    ensure!(res.stabilized_at == 1, "stabilized at {}", res.stabilized_at);
    let v = ok(parse_polynomial(&base, "V"))?;
    ensure!(
        res.witnesses.iter().any(|w| w.element == v && w.exponent == 1),
        "witness V missing: {:?}",
        res.witnesses
    );
    let v2 = ok(v.power(2))?;
    ensure!(ok(ok(frob_power(&u, 1))?.contains(&v2, &b))?, "V^2 not in (U)^[2] + J");
    Ok("closure (U, V), witness V at exponent 1".into())
}

fn frobenius_preserves_decompositions() -> Outcome {
    let b = GroebnerBudget::default();
    let mut count = 0;
    for (p, seed) in [(2u64, 21u64), (3, 23)] {
        let r = common::ring(p, &["X", "Y"]);
        let mut rng = common::rng(seed);
        for _ in 0..30 {
            let i = common::random_monomial_ideal(&mut rng, &r, 4, 4);
            let d = ok(decompose_monomial(&i, &b))?;
            let dp = ok(decompose_monomial(&ok(frob_power(&i, 1))?, &b))?;
            ensure!(d.primes() == dp.primes(), "radicals differ for {i}");
            ensure!(d.minimal && dp.minimal, "non-minimal decomposition for {i}");
            for c in &d.components {
                let minimal = !d
                    .components
                    .iter()
                    .any(|o| o.prime != c.prime && o.prime.vars().iter().all(|v| c.prime.vars().contains(v)));
                if !minimal {
                    continue;
                }
                let image = dp.components.iter().find(|o| o.prime == c.prime).unwrap();
                ensure!(
                    ok(ok(frob_power(&c.ideal, 1))?.equals(&image.ideal, &b))?,
                    "minimal component {} of {i} does not map to {}",
                    c.ideal,
                    image.ideal
                );
            }
            count += 1;
        }
    }
    Ok(format!("{count} monomial ideals"))
}

fn growth_decomposition_identity() -> Outcome {
    let b = GroebnerBudget::default();
    let r = common::ring(2, &["X", "Y"]);
    let a = id(&r, &["X^2", "X*Y"]);
    let d = ok(decompose_monomial(&a, &b))?;
    let h = ok(find_linear_growth_h(&d, &b))?;
    ensure!(h == 2, "h = {h}");
    let primes = ok(ass_monomial(&a, &b))?;
    for n in 0..=3 {
        for mode in [GrowthMode::Plain, GrowthMode::FClosure] {
            let dn = ok(growth_decompose(&a, &primes, h, n, &mode, &b))?;
            ensure!(dn.components.iter().all(|c| c.verified_primary), "n = {n}: non-primary component");
            let target = ok(frob_power(&a, n as u32))?;
            ensure!(ok(ok(dn.intersection(&b))?.equals(&target, &b))?, "n = {n} {mode:?}: identity fails");
        }
    }
    Ok("h = 2, n = 0..3, plain and F-closure".into())
}

fn downward_extension() -> Outcome {
    let b = GroebnerBudget::default();
    let r = common::ring(2, &["X", "Y"]);
    let gens = id(&r, &["X", "Y^2"]);
    let s = FSequence::fg_perfection(1, &gens, Default::default());
    for n in 0..=4 {
        let t = ok(s.term(1 + n, &b))?;
        let want = ok(frob_power(&gens, n as u32))?;
        ensure!(ok(t.equals(&want, &b))?, "term({}) = {t}", 1 + n);
    }
    let t0 = ok(s.term(0, &b))?;
    ensure!(ok(t0.equals(&ok(frob_root(&ok(s.term(1, &b))?, &b))?, &b))?, "term(0) = {t0}");
    ensure!(ok(t0.equals(&id(&r, &["X", "Y"]), &b))?, "term(0) = {t0}");
    let v = ok(fseq_verify(&s, 4, &b))?;
    ensure!(v.passed(), "verification: {v:?}");
    Ok("term(0) = (X, Y), verified to depth 4".into())
}

fn unbounded_ass_reproduction() -> Outcome {
    let b = GroebnerBudget::default();
    let rep = ok(build_unbounded_ass(7, 2, &[1, 1, 1], 3, &b))?;
    ensure!(rep.verify.passed(), "verification: {:?}", rep.verify);
    let ring = rep.sequence.ring().clone();
    let base = ring.base().clone();
    for step in &rep.steps {
        let m = step.m;
        let mut want = vec![MonomialPrime::new([0])];
        for j in 1..=m {
            want.push(MonomialPrime::shifted([0, 1], BTreeMap::from([(1, j as u32)])));
        }
        ensure!(step.ass == want, "Ass(a_{m}) = {:?}", step.ass);
        ensure!(step.decomposition.minimal, "decomposition of a_{m} not minimal");
        if m > 0 {
            // X (Y - 1)^{7^m} ... (Y - (m-1))^{7^m}
            let mut w = Polynomial::var(&base, 0);
            for k in 1..m {
                let f = ok(parse_polynomial(&base, &format!("Y - {k}")))?;
                w = ok(w.mul(&ok(f.power(7u64.pow(m as u32)))?))?;
            }
            let got = &step.witnesses[m];
            ensure!(got.witness == w, "witness for q_({m},{m}) is {}", got.witness);
            for k in 0..m {
                ensure!(
                    ok(step.decomposition.components[k].ideal.contains(&w, &b))?,
                    "witness {m} outside q_({k},{m})"
                );
            }
            ensure!(
                !ok(step.decomposition.components[m].ideal.contains(&w, &b))?,
                "witness {m} inside q_({m},{m})"
            );
        }
    }
    let r = rep.sequence.ring();
    let w = ok(parse_polynomial(r.base(), "X"))?.mul(&ok(ok(parse_polynomial(r.base(), "Y - 1"))?.power(49))?);
    let w = ok(w)?;
    ensure!(ok(id(r, &["X"]).contains(&w, &b))?, "X(Y-1)^49 not in (X)");
    ensure!(
        !ok(Ideal::new(r, vec![ok(parse_polynomial(r.base(), "X^2"))?, ok(ok(parse_polynomial(r.base(), "Y - 2"))?.power(49))?])
            .unwrap()
            .contains(&w, &b))?,
        "X(Y-1)^49 in (X^2, (Y-2)^49)"
    );
    ensure!(rep.certificate.h == 1 && rep.certificate.depth == 3, "certificate h = {}", rep.certificate.h);
    ensure!(ok(rep.certificate.recheck(&b))?, "certificate recheck failed");
    ensure!(rep.ass_strictly_increasing, "Ass not strictly increasing");
    ensure!(rep.no_primary_decomposition, "no-primary-decomposition flag not set");
    Ok("|Ass(a_m)| = 1, 2, 3, 4; witnesses and 1-linear certificate verified".into())
}

fn perfection_decomposition() -> Outcome {
    let b = GroebnerBudget::default();
    let r = common::ring(2, &["X", "Y"]);
    let a = PerfectionIdeal::extension(&id(&r, &["X^2", "X*Y"]));
    let pd = ok(decompose_perfection_ideal(&a, 3, &b))?;
    ensure!(pd.components.len() == 2, "{} components", pd.components.len());
    for n in 0..=3usize {
        let mut inter = ok(pd.components[0].1.term(n, &b))?;
        for (_, s) in &pd.components[1..] {
            inter = ok(inter.intersect(&ok(s.term(n, &b))?, &b))?;
        }
        ensure!(ok(inter.equals(&ok(a.backing().term(n, &b))?, &b))?, "intersection differs at n = {n}");
        let q = 1u64 << n;
        let want0 = id(&r, &[&format!("X^{q}")]);
        let want1 = id(&r, &[&format!("X^{}", 2 * q), &format!("Y^{q}")]);
        ensure!(ok(ok(pd.components[0].1.term(n, &b))?.equals(&want0, &b))?, "first component at n = {n}");
        ensure!(ok(ok(pd.components[1].1.term(n, &b))?.equals(&want1, &b))?, "second component at n = {n}");
    }
    let parts: Vec<PerfectionIdeal> = pd.components.iter().map(|(_, s)| PerfectionIdeal::new(s.clone())).collect();
    let mut rng = common::rng(31);
    let mut inside = 0;
    for k in 0..100 {
        let depth = rng.gen_range(0..=3u32);
        let body = common::random_poly(&mut rng, &r, 3, 6);
        let e = PerfectionElement::new(depth, body);
        let whole = ok(perfection_member(&a, &e, &b))?;
        let mut each = true;
        for c in &parts {
            each &= ok(perfection_member(c, &e, &b))?;
        }
        ensure!(whole == each, "sample {k} ({e}): {whole} vs {each}");
        inside += whole as usize;
    }
    Ok(format!("two components; 100 samples agree ({inside} members)"))
}

fn oracle_equivalence() -> Outcome {
    let b = GroebnerBudget::default();
    let mut count = 0;
    for (p, vars, seed) in [(2u64, vec!["X", "Y"], 41u64), (3, vec!["X", "Y", "Z"], 43)] {
        let r = common::ring(p, &vars);
        let mut rng = common::rng(seed);
        for _ in 0..100 {
            let i = common::random_monomial_ideal(&mut rng, &r, 3, 4);
            let k = common::random_monomial_ideal(&mut rng, &r, 3, 4);
            let g = common::random_poly(&mut rng, &r, 3, 5);
            let m = Polynomial::monomial(r.base(), common::random_monomial(&mut rng, vars.len(), 3), 1);
            ensure!(
                ok(i.contains(&g, &b))? == ok(i.contains_buchberger(&g, &b))?,
                "membership of {g} in {i}"
            );
            let fast = ok(i.intersect(&k, &b))?;
            let slow = ok(i.intersect_buchberger(&k, &b))?;
            ensure!(ok(fast.canonical(&b))? == ok(slow.canonical(&b))?, "intersection of {i} and {k}");
            let fast = ok(i.quotient(&m, &b))?;
            let slow = ok(i.quotient_buchberger(&m, &b))?;
            ensure!(ok(fast.canonical(&b))? == ok(slow.canonical(&b))?, "quotient of {i} by {m}");
            let fast = ok(frob_root_ceiling(&i, 1))?;
            let slow = ok(frob_root_elimination(&i, 1, &b))?;
            ensure!(ok(fast.canonical(&b))? == ok(slow.canonical(&b))?, "root of {i}");
            count += 1;
        }
    }
    Ok(format!("{count} instances"))
}

fn negative_control() -> Outcome {
    let b = GroebnerBudget::default();
    let r = common::ring(2, &["X"]);
    let terms = (1..=4).map(|k| id(&r, &[&format!("X^{k}")])).collect();
    let s = ok(FSequence::table(&r, terms, Extender::None))?;
    match ok(fseq_verify(&s, 3, &b))? {
        VerifyOutcome::Failure {
            index: 2,
            failure: VerifyFailure::RootMismatch { root, expected },
            ..
        } => {
            ensure!(ok(root.equals(&id(&r, &["X^2"]), &b))?, "root is {root}");
            ensure!(ok(expected.equals(&id(&r, &["X^3"]), &b))?, "expected term is {expected}");
            Ok("fails at index 2: f^-1((X^4)) = (X^2) != (X^3)".into())
        }
        other => Err(format!("unexpected outcome {other:?}")),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Kunz roundtrip", 60, kunz_roundtrip),
        ("regular rings are F-closed", 60, regular_f_closed),
        ("non-regular F-closure counterexample", 5, cusp_counterexample),
        ("Frobenius preserves decompositions", 60, frobenius_preserves_decompositions),
        ("linear-growth decomposition identity", 30, growth_decomposition_identity),
        ("downward extension of fg-perfection sequences", 30, downward_extension),
        ("unbounded associated primes example", 300, unbounded_ass_reproduction),
        ("perfection ideal decomposition", 60, perfection_decomposition),
        ("fast paths agree with Buchberger", 120, oracle_equivalence),
        ("negative control", 5, negative_control),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(*limit) => {
                Err(format!("took {elapsed:.2?}, limit {limit} s"))
            }
            o => o,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}) [{elapsed:.2?}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why} [{elapsed:.2?}]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
