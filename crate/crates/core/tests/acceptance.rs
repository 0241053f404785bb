//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails. All checks are exact.

mod common;

use std::time::{Duration, Instant};

use abext::autgroup::enumerate_auts;
use abext::equivalence::{classify_all, ExtensionAction};
use abext::exactmat::{pow, snf};
use abext::extension::{
    all_normalized, change_lift, middle_type, normalize, presentation_matrix,
};
use abext::oracle::count_automorphisms;
use abext::sweep::{theorem_sweep, SweepReport};
use abext::{Execution, ExplicitGroup, IntMatrix, Limits, PGroupType};
use common::{abs, desk_params, laplace_det, t};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sweeps() -> Result<Vec<((u64, PGroupType, PGroupType), SweepReport)>, String> {
    let lim = Limits::default();
    desk_params()
        .into_iter()
        .map(|(p, l, m)| {
            let r = theorem_sweep(p, &l, &m, &lim, Execution::default()).map_err(|e| e.to_string())?;
            Ok(((p, l, m), r))
        })
        .collect()
}

/// Number of classes of an equivalence relation stored as an n x n table.
fn class_count(rel: &[bool], n: usize) -> usize {
    (0..n).filter(|&i| (0..i).all(|j| !rel[i * n + j])).count()
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let mut pairs = 0;
    for ((p, l, m), r) in sweeps()? {
        pairs += r.pairs();
        ensure(r.bad_witnesses.is_empty(), || {
            format!("p={p} {l} {m}: witnesses failing exact re-check {:?}", r.bad_witnesses)
        })?;
        ensure(r.agrees(), || {
            format!("p={p} {l} {m}: criterion and oracle disagree on {:?}", r.disagreements())
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!("{pairs} ordered pairs agree with the diagram oracle in {elapsed:.2?}"))
}

fn criterion_2() -> Check {
    let lim = Limits::default();
    let cases: [(u64, &[u32], &[u32], usize); 6] = [
        (2, &[1], &[1], 2),
        (3, &[1], &[1], 2),
        (2, &[1, 1], &[1], 2),
        (2, &[1], &[1, 1], 2),
        (2, &[2], &[1], 2),
        (2, &[2], &[2], 3),
    ];
    for (p, l, m, want) in cases {
        let (l, m) = (t(l), t(m));
        let c = classify_all(p, &l, &m, &lim).map_err(|e| e.to_string())?;
        ensure(c.representatives.len() == want, || {
            format!("p={p} {l} {m}: {} classes, expected {want}", c.representatives.len())
        })?;
        let oracle = theorem_sweep(p, &l, &m, &lim, Execution::default()).map_err(|e| e.to_string())?;
        let oc = class_count(&oracle.oracle, oracle.len());
        ensure(oc == want, || format!("p={p} {l} {m}: oracle partition has {oc} classes"))?;
    }
    let c = classify_all(2, &t(&[2]), &t(&[2]), &lim).map_err(|e| e.to_string())?;
    let mut types: Vec<PGroupType> = c.middle_types.clone();
    types.sort();
    let mut want = vec![t(&[2, 2]), t(&[4]), t(&[3, 1])];
    want.sort();
    ensure(types == want, || format!("middle types {types:?}"))?;
    Ok("class counts 2,2,2,2,2,3 and middle types {(2,2),(4),(3,1)}".into())
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_50f7);
    let mut nonsingular = 0;
    for trial in 0..1000 {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let data = (0..r * c).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
        let m = IntMatrix::from_vec(r, c, data).unwrap();
        let res = snf(&m);
        ensure(&(&res.u * &m) * &res.v == res.d && res.d.is_diagonal(), || {
            format!("trial {trial}: U M V != D for {m:?}")
        })?;
        ensure(abs(&laplace_det(&res.u.to_rows())).is_one(), || format!("trial {trial}: U not unimodular"))?;
        ensure(abs(&laplace_det(&res.v.to_rows())).is_one(), || format!("trial {trial}: V not unimodular"))?;
        let diag = res.invariant_factors();
        for w in diag.windows(2) {
            let ok = w[0] >= BigInt::zero()
                && if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            ensure(ok, || format!("trial {trial}: divisibility chain broken {diag:?}"))?;
        }
        if r == c {
            let det = laplace_det(&m.to_rows());
            if !det.is_zero() {
                nonsingular += 1;
                let prod: BigInt = diag.iter().product();
                ensure(prod == abs(&det), || format!("trial {trial}: prod d = {prod}, |det| = {det}"))?;
            }
        }
    }
    Ok(format!(
        "1000 random matrices ({nonsingular} nonsingular square) in {:.2?}",
        start.elapsed()
    ))
}

fn criterion_4() -> Check {
    let cases: [(u64, &[u32], u64); 6] = [
        (2, &[1], 1),
        (2, &[2], 2),
        (2, &[1, 1], 6),
        (2, &[2, 1], 8),
        (3, &[1], 2),
        (3, &[1, 1], 48),
    ];
    for (p, tau, want) in cases {
        let enumerated = enumerate_auts(p, &t(tau), 1_000_000).map_err(|e| e.to_string())?.count() as u64;
        let g = ExplicitGroup::new(tau.iter().map(|&k| p.pow(k)).collect()).unwrap();
        let brute = count_automorphisms(&g, 4096).map_err(|e| e.to_string())?;
        ensure(enumerated == brute && brute == want, || {
            format!("p={p} {tau:?}: enumerated {enumerated}, brute force {brute}, expected {want}")
        })?;
    }
    Ok("automorphism counts 1, 2, 6, 8, 2, 48".into())
}

fn criterion_5() -> Check {
    let lim = Limits::default();
    let mut lifts = 0u64;
    for (p, lambda, mu) in desk_params() {
        let (m, l) = (mu.len(), lambda.len());
        let all = all_normalized(p, &lambda, &mu, lim.max_matrices).map_err(|e| e.to_string())?;
        for e in &all {
            for mut idx in 0..5u64.pow((m * l) as u32) {
                let data = (0..m * l)
                    .map(|_| {
                        let d = (idx % 5) as i64 - 2;
                        idx /= 5;
                        BigInt::from(d)
                    })
                    .collect();
                let c = IntMatrix::from_vec(m, l, data).unwrap();
                let moved = normalize(&change_lift(e, &c).map_err(|e| e.to_string())?);
                ensure(&moved == e, || format!("lift shift {c:?} moved {e:?} to {moved:?}"))?;
                lifts += 1;
            }
        }
        let action = ExtensionAction::new(p, &lambda, &mu, &lim).map_err(|e| e.to_string())?;
        let classes = classify_all(p, &lambda, &mu, &lim).map_err(|e| e.to_string())?;
        for (rep, ty) in classes.representatives.iter().zip(&classes.middle_types) {
            for member in action.orbit(rep, lim.max_matrices).map_err(|e| e.to_string())? {
                let mt = middle_type(&member).map_err(|e| e.to_string())?;
                ensure(&mt == ty, || format!("orbit of {rep:?} contains type {mt} and {ty}"))?;
            }
        }
    }
    Ok(format!("{lifts} lift shifts invariant; middle type constant on every orbit"))
}

fn criterion_6() -> Check {
    let lim = Limits::default();
    let mut checked = 0;
    for (p, lambda, mu) in desk_params() {
        let n = lambda.size() + mu.size();
        for e in all_normalized(p, &lambda, &mu, lim.max_matrices).map_err(|e| e.to_string())? {
            let ty = middle_type(&e).map_err(|e| e.to_string())?;
            ensure(ty.size() == n, || format!("{e:?}: |nu| = {}", ty.size()))?;
            let det = presentation_matrix(&e).determinant().map_err(|e| e.to_string())?;
            ensure(det == pow(p, n), || format!("{e:?}: det = {det}"))?;
            if e.a.is_zero() {
                ensure(ty == lambda.concat(&mu), || format!("split type {ty}"))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} extensions conserve order; split types concatenate"))
}

fn criterion_7() -> Check {
    let lim = Limits::default();
    for ((p, l, m), r) in sweeps()? {
        let n = r.len();
        let rel = &r.criterion;
        let action = ExtensionAction::new(p, &l, &m, &lim).map_err(|e| e.to_string())?;
        for (i, e) in r.extensions.iter().enumerate() {
            let w = action.witness(e, e).map_err(|e| e.to_string())?;
            ensure(
                rel[i * n + i] && w.is_some_and(|w| w.f.is_identity() && w.g.is_identity()),
                || format!("p={p} {l} {m}: {e:?} not reflexive with identity witness"),
            )?;
        }
        for i in 0..n {
            for j in 0..n {
                ensure(rel[i * n + j] == rel[j * n + i], || format!("p={p} {l} {m}: asymmetric at ({i},{j})"))?;
                if !rel[i * n + j] {
                    continue;
                }
                for k in 0..n {
                    ensure(!rel[j * n + k] || rel[i * n + k], || {
                        format!("p={p} {l} {m}: not transitive at ({i},{j},{k})")
                    })?;
                }
            }
        }
    }
    Ok("reflexive (identity witness), symmetric, transitive on all parameter sets".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 7] = [
        ("1 theorem validation", criterion_1),
        ("2 classification counts", criterion_2),
        ("3 SNF suite", criterion_3),
        ("4 automorphism counts", criterion_4),
        ("5 well-definedness", criterion_5),
        ("6 conservation", criterion_6),
        ("7 equivalence-relation laws", criterion_7),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("[PASS] criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {name}: {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
