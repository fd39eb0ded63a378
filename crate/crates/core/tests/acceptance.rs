//! Acceptance criteria C1 to C9. Runs without the libtest harness so that each
//! criterion prints exactly one PASS/FAIL line; exits non-zero on any FAIL.

use std::time::{Duration, Instant};

use flagtriad::exact::{int, ratio, ExactVector};
use flagtriad::flags::catalogue::{self, SU2N_SO_SP, SUN_SO, SUN_SO_RANK1};
use flagtriad::flags::{
    equality_chain, matsuki_doubling, noncongruent_intersection, congruent_intersection, regular_samples, BasePoint,
    MatsukiCase,
};
use flagtriad::oracle::{
    self, build_pair, dimension_grid, extract_triad, verify_commutative_lemma, verify_lemma_regularity,
    verify_rotation_formulas, RootClass,
};
use flagtriad::rootsys::{Family, RootSystem};
use flagtriad::triads::{
    check_axioms, fundamental_cell, gamma_contains, is_regular, st_point, PiPoint, SymmetricTriad,
};
use flagtriad::Rational;

type Outcome = Result<String, String>;

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// Ordered compositions of `n` into `parts` positive parts.
fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in 1..n {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Base point with value pattern `counts`, shifted to coordinate sum zero.
fn pattern_point(counts: &[usize]) -> BasePoint {
    let n: usize = counts.iter().sum();
    let raw: Vec<(Rational, usize)> = counts.iter().enumerate().map(|(i, &k)| (int(i as i64), k)).collect();
    let total: Rational = raw.iter().map(|(v, k)| v * int(*k as i64)).sum();
    let mean = total / int(n as i64);
    let shifted: Vec<(Rational, usize)> = raw.into_iter().map(|(v, k)| (v - &mean, k)).collect();
    BasePoint::from_pattern(&shifted).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn c1() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for n in 2..=5usize {
        let entry = catalogue::lookup(SU2N_SO_SP, Some(n)).map_err(|e| e.to_string())?;
        let t = entry.triad().unwrap();
        let samples = regular_samples(t.sigma_tilde()).map_err(|e| e.to_string())?;
        ensure(samples.len() == 3 && samples[0] != samples[1] && samples[1] != samples[2], || "samples".into())?;
        // r + 1 parts with 1 <= r <= 3; r = 0 would make x0 = 0
        for parts in 2..=4.min(n) {
            for counts in compositions(n, parts) {
                let x0 = pattern_point(&counts);
                let expected = factorial(n) / counts.iter().map(|&k| factorial(k)).product::<u128>();
                for (i, h) in samples.iter().enumerate() {
                    // the ambient chain does not depend on H, so it is checked once per x0
                    let ambient = (i == 0).then_some(&entry.embedding);
                    let res = noncongruent_intersection(t, &x0, h, ambient).map_err(|e| e.to_string())?;
                    ensure(res.is_discrete(), || format!("n={n} {counts:?} at {h}: not discrete"))?;
                    let card = res.cardinality.unwrap() as u128;
                    ensure(card == expected, || format!("n={n} {counts:?}: {card} != {expected}"))?;
                    cases += 1;
                }
            }
        }
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("{cases} (n, partition, H) cases match n!/prod n_i!"))
}

fn c2() -> Outcome {
    let start = Instant::now();
    let mut regular = 0;
    for size in [3usize, 4] {
        let entry = catalogue::lookup(SUN_SO_RANK1, Some(size)).map_err(|e| e.to_string())?;
        let t = entry.triad().unwrap();
        let x0 = BasePoint::new(ExactVector::from_ints(&[1])).unwrap();
        for p in -120i64..=120 {
            let q = ratio(p, 60);
            let h = PiPoint::new(ExactVector::new(vec![q.clone()]).unwrap());
            let on_grid = (&q * int(4)).is_integer();
            let reg = is_regular(t, &h).map_err(|e| e.to_string())?.regular;
            ensure(reg == !on_grid, || format!("n={size} q={q}: regular={reg}"))?;
            if reg {
                let res = noncongruent_intersection(t, &x0, &h, Some(&entry.embedding)).map_err(|e| e.to_string())?;
                let pts = vec![ExactVector::from_ints(&[-1]), ExactVector::from_ints(&[1])];
                ensure(res.cardinality == Some(2) && res.points == pts, || format!("q={q}: {:?}", res.points))?;
                regular += 1;
            }
        }
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("pi/4-grid rule on 2 x 241 points, {regular} regular with {{±x0}}"))
}

fn c3() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let cases = [(SU2N_SO_SP, 2), (SU2N_SO_SP, 3), (SUN_SO_RANK1, 2), (SUN_SO_RANK1, 3), (SUN_SO_RANK1, 4)];
    for (name, size) in cases {
        let entry = catalogue::lookup(name, Some(size)).map_err(|e| e.to_string())?;
        let model = build_pair(name, size).map_err(|e| e.to_string())?;
        let ext = extract_triad(&model).map_err(|e| e.to_string())?;
        ensure(ext.triad == entry.triad_data(), || format!("{name} n={size}: extracted triad differs"))?;
        let graded: usize = ext.spaces.iter().map(|s| s.basis.ncols()).sum();
        ensure(graded == model.algebra.dim() - ext.centralizer_dim, || format!("{name} n={size}: dimension count"))?;
        worst = worst.max(ext.residual);
    }
    ensure(worst < 1e-8, || format!("residual {worst:.3e}"))?;
    within(start, Duration::from_secs(30))?;
    Ok(format!("5 extractions match the catalogue, residual {worst:.1e}"))
}

fn c4() -> Outcome {
    let start = Instant::now();
    let mut summary = Vec::new();
    for (i, (name, size)) in [(SU2N_SO_SP, 3), (SUN_SO_RANK1, 4), (SUN_SO, 3)].into_iter().enumerate() {
        let entry = catalogue::lookup(name, Some(size)).map_err(|e| e.to_string())?;
        let model = build_pair(name, size).map_err(|e| e.to_string())?;
        let report = dimension_grid(&model, &entry.triad_data(), 200, 1000 + i as u64).map_err(|e| e.to_string())?;
        ensure(report.passed(), || report.to_table())?;
        summary.push(report.checks[0].name.clone());
    }
    within(start, Duration::from_secs(60))?;
    Ok(summary.join("; "))
}

fn c5() -> Outcome {
    let mut sets = 0;
    let mut worst = 0.0f64;
    let mut run = |name: &str, size: usize, x0: BasePoint| -> Result<(), String> {
        let entry = catalogue::lookup(name, Some(size)).map_err(|e| e.to_string())?;
        let model = build_pair(name, size).map_err(|e| e.to_string())?;
        let data = entry.triad_data();
        for h in regular_samples(data.sigma_tilde()).map_err(|e| e.to_string())? {
            let res = match &entry.data {
                catalogue::PairData::Noncongruent(t) => noncongruent_intersection(t, &x0, &h, None),
                catalogue::PairData::Congruent(r) => congruent_intersection(r, &x0, &h),
            }
            .map_err(|e| e.to_string())?;
            ensure(res.is_discrete(), || format!("{name}: {h} not discrete"))?;
            let points: Vec<_> = res.points.iter().map(|p| model.exact_matrix(p)).collect();
            let report = verify_commutative_lemma(&model, &h, &model.exact_matrix(x0.coords()), &points)
                .map_err(|e| e.to_string())?;
            ensure(report.passed(), || report.to_table())?;
            worst = worst.max(report.worst());
            sets += 1;
        }
        Ok(())
    };
    for n in 2..=4usize {
        for parts in 2..=n.min(3) {
            for counts in compositions(n, parts) {
                run(SU2N_SO_SP, n, pattern_point(&counts))?;
            }
        }
    }
    for size in [3usize, 4] {
        run(SUN_SO_RANK1, size, BasePoint::new(ExactVector::from_ints(&[1])).unwrap())?;
    }
    run(SUN_SO, 3, pattern_point(&[1, 1, 1]))?;
    run(SUN_SO, 4, pattern_point(&[2, 2]))?;
    Ok(format!("{sets} discrete point sets, max bracket {worst:.1e}"))
}

fn builtin_triads() -> Vec<(String, SymmetricTriad)> {
    let mut out = Vec::new();
    for n in 2..=5 {
        let e = catalogue::lookup(SU2N_SO_SP, Some(n)).unwrap();
        out.push((format!("{SU2N_SO_SP} n={n}"), e.triad().unwrap().clone()));
    }
    for n in 3..=6 {
        let e = catalogue::lookup(SUN_SO_RANK1, Some(n)).unwrap();
        out.push((format!("{SUN_SO_RANK1} n={n}"), e.triad().unwrap().clone()));
    }
    out
}

fn doubled_triads() -> Vec<(String, SymmetricTriad)> {
    let bases = [(Family::A, 1), (Family::A, 2), (Family::B, 2), (Family::G, 2), (Family::C, 3)];
    let mut out = Vec::new();
    for (f, r) in bases {
        let base = RootSystem::build(f, r).unwrap();
        for case in [MatsukiCase::Three, MatsukiCase::Four] {
            out.push((format!("{case:?}({f}{r})"), matsuki_doubling(case, &base).unwrap()));
        }
    }
    out
}

fn mutations(t: &SymmetricTriad) -> Vec<(String, SymmetricTriad)> {
    let d = t.ambient_dim();
    let sets = [t.sigma_tilde().to_vec(), t.sigma().to_vec(), t.w().to_vec()];
    let mut out = Vec::new();
    for which in 0..3 {
        for root in sets[which].iter().filter(|r| r.is_lex_positive()) {
            for (kind, drop) in [("pair", vec![root.clone(), root.neg()]), ("negative", vec![root.neg()]), ("positive", vec![root.clone()])] {
                let mut s = sets.clone();
                s[which].retain(|r| !drop.contains(r));
                let m = SymmetricTriad::new(d, s[0].clone(), s[1].clone(), s[2].clone()).unwrap();
                out.push((format!("set {which} {kind} {root}"), m));
            }
        }
    }
    out
}

fn c6() -> Outcome {
    let mut passing = 0;
    for (name, t) in builtin_triads().into_iter().chain(doubled_triads()) {
        let r = check_axioms(&t);
        ensure(r.passed(), || format!("{name}: {:?}", r.failures().collect::<Vec<_>>()))?;
        passing += 1;
    }
    let mut mutated = 0;
    for (name, t) in builtin_triads() {
        if t.dim_a() > 3 {
            continue;
        }
        for (label, m) in mutations(&t) {
            let r = check_axioms(&m);
            ensure(!r.passed(), || format!("{name} {label}: mutation passes"))?;
            ensure(r.failures().any(|c| !c.witness.is_empty()), || format!("{name} {label}: no witness"))?;
            mutated += 1;
        }
    }
    Ok(format!("{passing} builtin/doubled triads pass, {mutated} mutations fail with witnesses"))
}

fn c7() -> Outcome {
    let mut checked = 0;
    let irreducible: Vec<(String, SymmetricTriad)> = builtin_triads().into_iter().chain(doubled_triads()).collect();
    for (name, t) in &irreducible {
        let cell = fundamental_cell(t).map_err(|e| format!("{name}: {e}"))?;
        let s = cell.m_sum();
        for n in s + 1..=s + 20 {
            let h0 = st_point(t, n).map_err(|e| e.to_string())?;
            ensure(is_regular(t, &h0).unwrap().regular, || format!("{name} n={n}: H0 singular"))?;
            let nh = h0.scale(&int(n as i64));
            ensure(gamma_contains(t, &nh).unwrap(), || format!("{name} n={n}: nH0 not in Gamma"))?;
            checked += 1;
        }
    }
    let mut worst = 0.0f64;
    for (name, size) in [(SU2N_SO_SP, 2), (SU2N_SO_SP, 3), (SUN_SO_RANK1, 3), (SUN_SO_RANK1, 4)] {
        let entry = catalogue::lookup(name, Some(size)).unwrap();
        let t = entry.triad().unwrap();
        let model = build_pair(name, size).map_err(|e| e.to_string())?;
        let s = fundamental_cell(t).unwrap().m_sum();
        for n in s + 1..=s + 20 {
            let report = verify_lemma_regularity(&model, t, n).map_err(|e| e.to_string())?;
            ensure(report.passed(), || report.to_table())?;
            worst = worst.max(report.checks[0].measured);
        }
    }
    Ok(format!("{checked} exact (triad, n) cases; Ad(exp 4nH0) = I to {worst:.1e}"))
}

fn c8() -> Outcome {
    let mut chains = 0;
    for n in 2..=5usize {
        let entry = catalogue::lookup(SU2N_SO_SP, Some(n)).unwrap();
        for parts in 2..=n.min(4) {
            for counts in compositions(n, parts) {
                let x0 = pattern_point(&counts);
                let c = equality_chain(entry.triad().unwrap(), &entry.embedding, &x0).map_err(|e| e.to_string())?;
                ensure(c.triad_orbit == c.ambient_slice, || format!("n={n} {counts:?}"))?;
                chains += 1;
            }
        }
    }
    for n in 3..=6usize {
        let entry = catalogue::lookup(SUN_SO_RANK1, Some(n)).unwrap();
        let x0 = BasePoint::new(ExactVector::from_ints(&[1])).unwrap();
        let c = equality_chain(entry.triad().unwrap(), &entry.embedding, &x0).map_err(|e| e.to_string())?;
        ensure(c.triad_orbit == c.ambient_slice, || format!("rank one n={n}"))?;
        chains += 1;
    }
    Ok(format!("{chains} base points: W(sigma_tilde)x0 = W(Delta)x0 ∩ a"))
}

fn c9() -> Outcome {
    let mut reports = 0;
    let mut worst = 0.0f64;
    for (name, size) in [(SU2N_SO_SP, 2), (SU2N_SO_SP, 3), (SUN_SO_RANK1, 3), (SUN_SO_RANK1, 4), (SUN_SO, 3)] {
        let model = build_pair(name, size).map_err(|e| e.to_string())?;
        let ext = extract_triad(&model).map_err(|e| e.to_string())?;
        let generic = oracle::extract::generic_point(&model);
        let points = [generic.scale(&ratio(2, 7)), generic.scale(&ratio(-5, 3)), ExactVector::zeros(generic.dim())];
        for q in points {
            let h = PiPoint::new(q);
            for s in &ext.spaces {
                for root in [s.root.clone(), s.root.neg()] {
                    let mut classes = Vec::new();
                    if s.m() > 0 {
                        classes.push(RootClass::Sigma);
                    }
                    if s.n() > 0 {
                        classes.push(RootClass::W);
                    }
                    for class in classes {
                        let r = verify_rotation_formulas(&model, &ext, &root, class, &h).map_err(|e| e.to_string())?;
                        ensure(r.passed(), || r.to_table())?;
                        worst = worst.max(r.worst());
                        reports += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{reports} (pair, root, class, H) reports, max residual {worst:.1e}"))
}

fn main() {
    let criteria: [(&str, &str, fn() -> Outcome); 9] = [
        ("C1", "type III-A cardinality", c1),
        ("C2", "type II-BC1 pi/4 grid", c2),
        ("C3", "oracle triad agreement", c3),
        ("C4", "intersection dimension certificate", c4),
        ("C5", "antipodality of discrete sets", c5),
        ("C6", "triad axiom property suite", c6),
        ("C7", "regular point of order n", c7),
        ("C8", "equality chain", c8),
        ("C9", "rotation and bracket identities", c9),
    ];
    let mut failed = 0;
    for (id, title, f) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("{id} PASS {title} ({secs:.2}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("{id} FAIL {title} ({secs:.2}s): {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
