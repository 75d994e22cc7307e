//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use equifix_core::algebra::{bernoulli, l_polynomials, newton_s_from_p, partitions, GradedPoly};
use equifix_core::catalog::{linear_cpn, linear_cpn_su2, linear_projective, product, sphere};
use equifix_core::ci::{scan_non_semi_negative, star_admissible_non_semi_negative, CompleteIntersection};
use equifix_core::finiteness::{bordism_fingerprint, enumerate_admissible_models, fingerprint_partition};
use equifix_core::hcp::enumerate_hcp_models;
use equifix_core::localization::{
    cohom_twisted_signature, equivariant_twisted_signature, nonequivariant_index, pontryagin_numbers, BundleExpr,
    CharMonomial,
};
use equifix_core::model::Constraint;
use equifix_core::search::DEFAULT_MAX_BRANCHES;
use equifix_core::su2::enumerate_isolated_tangent_sets;
use equifix_core::{Partition, Rat};
use num_bigint::BigInt;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn rat(v: i64) -> Rat {
    Rat::from(v)
}

fn rigidity() -> Outcome {
    for (n, expected) in [(2, 1), (3, 0), (4, 1), (5, 0)] {
        let f = equivariant_twisted_signature(&linear_cpn(n), &BundleExpr::one(1)).map_err(|e| e.to_string())?;
        ensure!(f.is_constant() == Some(rat(expected)), "CP{n}: signature {f}, expected constant {expected}");
    }
    Ok(())
}

fn pontryagin_of_projective_spaces() -> Outcome {
    let p = |parts: &[u32]| Partition::new(parts.to_vec());
    let cp2 = pontryagin_numbers(&linear_cpn(2));
    ensure!(cp2 == BTreeMap::from([(p(&[1]), rat(3))]), "CP2: {cp2:?}");
    let cp4 = pontryagin_numbers(&linear_cpn(4));
    let expected = BTreeMap::from([(p(&[1, 1]), rat(25)), (p(&[2]), rat(10))]);
    ensure!(cp4 == expected, "CP4: {cp4:?}");
    // independent oracle: p_j = C(n+1, j) x^{2j}
    for (n, numbers) in [(2u32, &cp2), (4, &cp4)] {
        for part in partitions(n / 2) {
            let v: Rat = part.parts().iter().map(|&j| Rat::binomial(u64::from(n) + 1, u64::from(j))).product();
            ensure!(numbers.get(&part) == Some(&v), "CP{n} {part}: series gives {v}");
        }
    }
    Ok(())
}

fn k_and_cohomology_agree() -> Outcome {
    let mut models: Vec<_> = (1..=4).map(linear_cpn).collect();
    models.push(linear_projective(&[0, 2, 5], None));
    models.push(product(&sphere(&[1]), &sphere(&[1])));
    models.push(product(&sphere(&[1]), &sphere(&[2, 3])));
    let mut cases = 0;
    for model in &models {
        let k = model.k();
        let mut twists = vec![BundleExpr::one(k), BundleExpr::tangent(k)];
        if k > 0 {
            twists.push(BundleExpr::line(k, 0));
            twists.push(BundleExpr::line(k, 0).pow(2));
        }
        for e in &twists {
            let a = nonequivariant_index(model, e).map_err(|x| x.to_string())?;
            let b = cohom_twisted_signature(model, e).map_err(|x| x.to_string())?;
            ensure!(a == b, "{model} twisted by {e}: K-theory {a}, cohomology {b}");
            cases += 1;
        }
    }
    ensure!(cases >= 12, "only {cases} cases");
    Ok(())
}

fn complete_intersections() -> Outcome {
    let p1 = Partition::single(1);
    for (n, d, p1_number, sigma, chi) in [(2, 3, -15, -5, 9), (2, 4, -48, -16, 24)] {
        let ci = CompleteIntersection::new(n, vec![d]).map_err(|e| e.to_string())?;
        let got = (
            ci.char_number(0, &p1).map_err(|e| e.to_string())?,
            ci.signature().map_err(|e| e.to_string())?,
            ci.euler_characteristic(),
        );
        let want = (BigInt::from(p1_number), rat(sigma), BigInt::from(chi));
        ensure!(got == want, "V_{n}^({d}): {got:?}, expected {want:?}");
    }
    let v43 = CompleteIntersection::new(4, vec![3]).map_err(|e| e.to_string())?;
    ensure!(v43.signature() == Ok(rat(19)), "V_4^(3) signature {:?}", v43.signature());
    Ok(())
}

fn eq1_validator() -> Outcome {
    let model = linear_cpn(2).without_line_bundles().with_multiplier(Some(1)).map_err(|e| e.to_string())?;
    let values: Vec<i128> = model.points().iter().map(|p| p.eq1_value(1)).collect();
    ensure!(values == vec![5, 2, 5], "values {values:?}");
    let violations = model.validate();
    ensure!(
        violations.iter().any(|v| v.constraint == Constraint::Eq1Constancy),
        "no eq1-constancy violation in {violations:?}"
    );
    Ok(())
}

fn hcp_desk_scale() -> Outcome {
    let found = enumerate_hcp_models(2, DEFAULT_MAX_BRANCHES).map_err(|e| e.to_string())?;
    ensure!(!found.is_empty(), "no candidates for n = 2");
    for c in &found {
        ensure!(c.pontryagin == vec![rat(3)], "candidate with p1 = {:?}", c.pontryagin);
        let f = equivariant_twisted_signature(&c.model, &BundleExpr::one(1)).map_err(|e| e.to_string())?;
        ensure!(f.is_constant() == Some(Rat::one()), "candidate signature {f}");
    }
    let witness = linear_cpn_su2(2).expect("witness").canonical_key();
    ensure!(found.iter().any(|c| c.model.canonical_key() == witness), "linear CP2 missing");
    let odd = enumerate_hcp_models(3, DEFAULT_MAX_BRANCHES).map_err(|e| e.to_string())?;
    ensure!(odd.is_empty(), "{} candidates for n = 3", odd.len());
    Ok(())
}

fn ci_scan() -> Outcome {
    let names: Vec<String> = scan_non_semi_negative(3).iter().map(ToString::to_string).collect();
    ensure!(names == ["(2)"], "scan(3) = {names:?}");
    // brute force over r ≤ 4, d ≤ 8
    fn lists(r: usize, lo: u32) -> Vec<Vec<u32>> {
        if r == 0 {
            return vec![vec![]];
        }
        (lo..=8)
            .flat_map(|d| lists(r - 1, d).into_iter().map(move |mut t| {
                t.insert(0, d);
                t
            }))
            .collect()
    }
    for n in 2..=8 {
        let mut brute = Vec::new();
        for r in 1..=4 {
            for d in lists(r, 2) {
                let ci = CompleteIntersection::new(n, d).map_err(|e| e.to_string())?;
                let sn = ci.is_semi_negative();
                if let Some(w) = sn.witness() {
                    ensure!(w.verify(&ci), "witness {w:?} fails for {ci}");
                } else {
                    brute.push(ci);
                }
            }
        }
        brute.sort_by_key(|c| (c.codimension(), c.degrees().to_vec()));
        ensure!(scan_non_semi_negative(n) == brute, "n = {n}: scan disagrees with brute force");
    }
    Ok(())
}

fn finiteness_desk_scale() -> Outcome {
    let models = enumerate_admissible_models(2, 3, 0, 1, DEFAULT_MAX_BRANCHES).map_err(|e| e.to_string())?;
    ensure!(models.len() == 6, "{} models", models.len());
    let p1 = CharMonomial::pontryagin_only(0, Partition::single(1));
    for m in &models {
        let v = m.validate();
        ensure!(v.is_empty(), "{m} violates {v:?}");
        let sum: i64 = m.points().iter().map(|p| p.eps().to_i64()).sum();
        let fp = bordism_fingerprint(m);
        ensure!(fp.get(&p1) == Some(&rat(2 * sum)), "{m}: fingerprint {fp}");
    }
    // every eps assignment: S³ point −1, up to two further (1,1)-points of either sign
    let mut oracle = BTreeSet::new();
    for extra in 0..3u32 {
        for mask in 0u32..(1 << extra) {
            let plus = mask.count_ones() as i64;
            oracle.insert(2 * (-1 + plus - (i64::from(extra) - plus)));
        }
    }
    let groups = fingerprint_partition(&models).len();
    ensure!(groups == oracle.len(), "{groups} groups, oracle {}", oracle.len());
    Ok(())
}

fn algebra_suite() -> Outcome {
    // Newton identities against direct expansion in five variables
    let samples: [[i64; 5]; 3] = [[1, 2, 3, 4, 5], [-2, 0, 3, 7, -1], [1, 1, 1, -3, 2]];
    for z in samples {
        let mut e = vec![Rat::one()];
        for &zi in &z {
            e.push(Rat::zero());
            for i in (1..e.len()).rev() {
                let prev = e[i - 1].clone();
                e[i] += prev * rat(zi);
            }
        }
        for t in 1..=5u32 {
            let value = newton_s_from_p(t).eval(|j| e.get(j as usize).cloned().unwrap_or_else(Rat::zero));
            let direct: Rat = z.iter().map(|&x| rat(x).pow(i64::from(t))).sum();
            ensure!(value == direct, "s_{t} at {z:?}: {value} vs {direct}");
        }
    }
    let l = l_polynomials(2);
    ensure!(l[0] == GradedPoly::var(1).scale(&Rat::new(1, 3)), "L1 = {}", l[0]);
    let l2 = &GradedPoly::var(2).scale(&Rat::new(7, 45)) - &GradedPoly::term(Rat::new(1, 45), Partition::new(vec![1, 1]));
    ensure!(l[1] == l2, "L2 = {}", l[1]);
    let table = [(2, 1, 6), (4, -1, 30), (6, 1, 42), (8, -1, 30), (10, 5, 66), (12, -691, 2730)];
    for (k, p, q) in table {
        ensure!(bernoulli(k) == Rat::new(p, q), "B_{k} = {}", bernoulli(k));
    }
    ensure!(bernoulli(1) == Rat::new(-1, 2), "B_1 = {}", bernoulli(1));
    Ok(())
}

fn parity_obstruction() -> Outcome {
    for n in (1..=11).step_by(2) {
        ensure!(enumerate_isolated_tangent_sets(n).is_empty(), "tangent sets for n = {n}");
        let general = enumerate_admissible_models(n, 4, 1, 1, DEFAULT_MAX_BRANCHES).map_err(|e| e.to_string())?;
        ensure!(general.is_empty(), "general mode for n = {n}");
        let hcp = enumerate_hcp_models(n, DEFAULT_MAX_BRANCHES).map_err(|e| e.to_string())?;
        ensure!(hcp.is_empty(), "hcp mode for n = {n}");
        ensure!(star_admissible_non_semi_negative(n).is_empty(), "ci mode for n = {n}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("rigidity of linear CP^n signatures", rigidity, Some(Duration::from_secs(5))),
        ("Pontrjagin numbers of CP^2 and CP^4", pontryagin_of_projective_spaces, None),
        ("K-theory and cohomology localization agree", k_and_cohomology_agree, None),
        ("complete intersection invariants", complete_intersections, Some(Duration::from_secs(1))),
        ("constancy validator rejects CP^2 with N = 1", eq1_validator, None),
        ("homotopy CP^n enumeration", hcp_desk_scale, Some(Duration::from_secs(60))),
        ("non-semi-negative complete intersections", ci_scan, None),
        ("admissible models and fingerprint groups", finiteness_desk_scale, None),
        ("Newton, L-polynomial and Bernoulli identities", algebra_suite, None),
        ("parity obstruction in odd dimensions", parity_obstruction, None),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| match limit {
            Some(l) if elapsed > l => Err(format!("took {elapsed:?}, limit {l:?}")),
            _ => Ok(()),
        });
        match outcome {
            Ok(()) => println!("[PASS] {:>2}. {name} ({:.3}s)", i + 1, elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
