//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p sixvertex --test acceptance`.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use sixvertex::families::{asm_matrix, r_as_tl, r_family, tl_generator, tl_matrix, FamilyParams, GroupElem3};
use sixvertex::groupoid::{associativity_fuzz, axiom_suite, sample_composable, Strategy};
use sixvertex::sampling::{rng_from_seed, trial_seed};
use sixvertex::{
    component_residuals, equivalent_forms, is_yb_solution, solve_conditions, solve_w, yb_commutator, Error, Kind,
    Scalar, ScalarMode, SixVertexMatrix, SquareMatrix, YbTriple,
};

const SEED: u64 = 20_240_611;

type Outcome = Result<String, String>;

struct Suite {
    failed: Vec<u32>,
    solutions: Vec<YbTriple>,
}

impl Suite {
    fn run(&mut self, id: u32, name: &str, limit: Option<Duration>, f: impl FnOnce(&mut Vec<YbTriple>) -> Outcome) {
        let start = Instant::now();
        let solutions = &mut self.solutions;
        let result = panic::catch_unwind(AssertUnwindSafe(|| f(solutions)))
            .unwrap_or_else(|e| Err(format!("panicked: {}", panic_message(&e))));
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
            (r, _) => r,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {id:>2} {tag}  {name}: {detail} [{elapsed:.2?}]");
        if result.is_err() {
            self.failed.push(id);
        }
    }
}

fn panic_message(e: &Box<dyn std::any::Any + Send>) -> String {
    e.downcast_ref::<String>()
        .cloned()
        .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "unknown panic".into())
}

fn sv(e: [i64; 6]) -> SixVertexMatrix {
    SixVertexMatrix::from_ints(e)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Mixed solutions and non-solutions.
fn oracle_triple(i: u64) -> YbTriple {
    let mut rng = rng_from_seed(trial_seed(SEED, i));
    let [u, w, v] = match i % 6 {
        0 => [(); 3].map(|_| common::random_matrix(&mut rng)),
        1 => common::random_family_triple(&mut rng, Kind::Cf),
        2 => common::random_family_triple(&mut rng, Kind::Ff),
        3 => common::random_tau_triple(&mut rng),
        4 => {
            // a solution with one entry of the middle matrix nudged
            let [u, w, v] = common::random_family_triple(&mut rng, Kind::Cf);
            let mut e = w.entries().clone();
            let k = (i as usize / 6) % 6;
            e[k] = &e[k] + &Scalar::exact_int(1);
            [u, SixVertexMatrix::new(e).unwrap(), v]
        }
        _ => {
            let u = common::random_in_s(&mut rng);
            let id = SixVertexMatrix::identity(ScalarMode::Exact);
            match (i / 6) % 3 {
                0 => [id, u.clone(), u],
                1 => [u.clone(), id, u.inverse().unwrap()],
                _ => {
                    let d = u.dual().unwrap();
                    [u.clone(), solve_w(&u, &d).unwrap(), d]
                }
            }
        }
    };
    YbTriple::new(u, w, v).unwrap()
}

fn criterion_1(_: &mut Vec<YbTriple>) -> Outcome {
    let (mut solutions, total) = (0, 1000u64);
    for i in 0..total {
        let t = oracle_triple(i);
        let by_solver = is_yb_solution(&t);
        let by_commutator = yb_commutator(&t).is_zero();
        let by_residuals = component_residuals(&t).iter().all(Scalar::is_zero);
        let by_oracle = common::commutator_vanishes(&t.u, &t.w, &t.v);
        check(
            by_solver == by_commutator && by_commutator == by_residuals && by_residuals == by_oracle,
            || format!("disagreement on {t}: {by_solver} {by_commutator} {by_residuals} {by_oracle}"),
        )?;
        solutions += by_solver as usize;
    }
    check(solutions > 100 && solutions < 900, || format!("unbalanced sample: {solutions} solutions"))?;
    Ok(format!("{total} triples agree ({solutions} solutions)"))
}

fn criterion_2(found: &mut Vec<YbTriple>) -> Outcome {
    let (u, v) = (sv([5, 5, 4, 2, 3, 1]), sv([7, 7, 6, 3, 4, 1]));
    let expected = sv([23, 23, 22, 11, 12, 1]);
    let w = solve_w(&u, &v).map_err(|e| e.to_string())?;
    check(w == expected, || format!("solve_w gave {w}"))?;
    let null = common::brute_force_middle(&u, &v);
    check(null.len() == 1, || format!("solution space has dimension {}", null.len()))?;
    check(common::proportional(&null[0], expected.entries()), || "brute force disagrees".into())?;
    found.push(YbTriple::new(u, w, v).unwrap());
    Ok("w = (23,23,22,11,12,1); solution space is one line".into())
}

fn criterion_3(found: &mut Vec<YbTriple>) -> Outcome {
    let per_kind = 500u64;
    for (k, kind) in [Kind::Cf, Kind::Ff].into_iter().enumerate() {
        for i in 0..per_kind {
            let mut rng = rng_from_seed(trial_seed(SEED + 3 + k as u64, i));
            let [rg, rgh, rh] = common::random_family_triple(&mut rng, kind);
            let t = YbTriple::new(rg, rgh, rh).unwrap();
            check(is_yb_solution(&t), || format!("{kind:?}: nonzero commutator for {t}"))?;
            let w = solve_w(&t.u, &t.v).map_err(|e| format!("{kind:?}: solve_w failed on {t}: {e}"))?;
            check(w.projective_eq(&t.w), || format!("{kind:?}: solve_w gave {w}, family gives {}", t.w))?;
            found.push(t);
        }
    }
    Ok(format!("{per_kind} triples per kind"))
}

fn criterion_4(found: &mut Vec<YbTriple>) -> Outcome {
    let total = 500u64;
    for i in 0..total {
        let mut rng = rng_from_seed(trial_seed(SEED + 4, i));
        let [tg, tgh, th] = common::random_tau_triple(&mut rng);
        let t = YbTriple::new(tg, tgh, th).unwrap();
        check(is_yb_solution(&t), || format!("nonzero commutator for {t}"))?;
        found.push(t);
    }
    Ok(format!("{total} triples"))
}

#[allow(clippy::ptr_arg)]
fn criterion_5(found: &mut Vec<YbTriple>) -> Outcome {
    let mut checked = 0;
    for t in found.iter() {
        let forms = equivalent_forms(t).map_err(|e| format!("{t}: {e}"))?;
        for (k, f) in forms.iter().enumerate() {
            check(is_yb_solution(f), || format!("form {} of {t} is not a solution", k + 1))?;
        }
        checked += 1;
    }
    check(checked > 0, || "no triples recorded".into())?;
    Ok(format!("{checked} triples x 6 forms"))
}

fn criterion_6(_: &mut Vec<YbTriple>) -> Outcome {
    let total = 1000u64;
    for i in 0..total {
        let mut rng = rng_from_seed(trial_seed(SEED + 6, i));
        let u = common::random_in_s(&mut rng);
        let dual = u.dual().map_err(|e| e.to_string())?;
        let p = u.c1() * u.c2() - u.b1() * u.b2();
        let product = common::mul(&common::op4(u.entries()), &common::op4(dual.entries()));
        let target: common::Dense = common::identity(4)
            .into_iter()
            .map(|r| r.into_iter().map(|x| &x * &p).collect())
            .collect();
        check(product == target, || format!("u u* != P I for {u}"))?;
        let inv = u.inverse().map_err(|e| e.to_string())?;
        check(dual.projective_eq(&inv), || format!("dual not proportional to inverse for {u}"))?;
        let oracle_inv = common::inverse(&common::op4(u.entries())).ok_or("oracle: singular")?;
        check(inv.entries() == &common::entries_of(&oracle_inv), || format!("inverse disagrees with Gauss-Jordan for {u}"))?;
    }
    Ok(format!("{total} matrices"))
}

fn criterion_7(_: &mut Vec<YbTriple>) -> Outcome {
    let total = 1000u64;
    let mut violations = 0usize;
    let mut first = None;
    for i in 0..total {
        let mut rng = rng_from_seed(trial_seed(SEED + 7, i));
        let u = common::random_in_s_cross(&mut rng);
        let (d1, d2) = common::delta(u.entries());
        let inv = common::entries_of(&common::inverse(&common::op4(u.entries())).ok_or("oracle: singular")?);
        let (i1, i2) = common::delta(&inv);
        let lib = u.inverse().unwrap().delta().unwrap();
        check(lib.d1 == i1 && lib.d2 == i2, || format!("library delta of inverse disagrees for {u}"))?;
        let (a1, a2) = (u.a1(), u.a2());
        let ok = i1 == &(a2 / a1) * &d1 && i2 == &(a1 / a2) * &d2;
        if !ok {
            violations += 1;
            first.get_or_insert_with(|| format!("{u}: Δ(u) = ({d1}, {d2}), Δ(u⁻¹) = ({i1}, {i2})"));
        }
    }
    match first {
        None => Ok(format!("{total} matrices")),
        Some(example) => Err(format!(
            "Δ1(u⁻¹) = (a2/a1)Δ1(u), Δ2(u⁻¹) = (a1/a2)Δ2(u) violated by {violations}/{total}; first: {example}"
        )),
    }
}

fn criterion_8(_: &mut Vec<YbTriple>) -> Outcome {
    let total = 1200u64;
    let (mut defined, mut closed) = (0, 0);
    for i in 0..total {
        let mut rng = rng_from_seed(trial_seed(SEED + 8, i));
        let mut u = common::random_in_s_cross(&mut rng);
        // bias a third of the draws into each closed class
        let mut e = u.entries().clone();
        match i % 3 {
            1 => e[1] = e[0].clone(),
            2 => e[5] = (&e[0] * &e[1] + &e[2] * &e[3]) / &e[4],
            _ => {}
        }
        if let Ok(m) = SixVertexMatrix::new(e) {
            if m.in_s_cross() {
                u = m;
            }
        }
        let flags = u.classify();
        let expect = flags.constant_field || flags.free_fermionic;
        let got = match solve_w(&u, &u) {
            Ok(_) | Err(Error::DegenerateProduct(_)) => true,
            Err(Error::Undefined(_)) => false,
            Err(e) => return Err(format!("{u}: {e}")),
        };
        check(got == expect, || format!("{u}: defined = {got}, closed class = {expect}"))?;
        check(got == solve_conditions(&u, &u).unwrap().satisfied, || format!("{u}: conditions disagree"))?;
        defined += got as usize;
        closed += expect as usize;
    }
    check(defined > 100 && defined < total as usize - 100, || format!("unbalanced sample: {defined} defined"))?;
    Ok(format!("{total} matrices ({closed} constant-field or free-fermionic)"))
}

fn criterion_9(_: &mut Vec<YbTriple>) -> Outcome {
    let chains = sample_composable(Strategy::FamilyExact, SEED + 9, 200).map_err(|e| e.to_string())?;
    let report = axiom_suite(&chains);
    check(report.trials == 200 && report.failures.is_empty(), || {
        format!("{} failures, first: {:?}", report.failures.len(), report.failures.first())
    })?;
    Ok(format!("{} samples, {} passes", report.trials, report.passes))
}

fn criterion_10(_: &mut Vec<YbTriple>) -> Outcome {
    let mut lines = Vec::new();
    for strategy in [Strategy::FamilyExact, Strategy::CrossFloat] {
        let report = associativity_fuzz(strategy, SEED + 10, 100);
        check(report.passes == 100 && report.failures.is_empty(), || {
            format!("{}: {}/100, first failure {:?}", strategy.name(), report.passes, report.failures.first())
        })?;
        lines.push(format!("{} {}/{}", strategy.name(), report.passes, report.trials));
    }
    Ok(lines.join(", "))
}

fn criterion_11(_: &mut Vec<YbTriple>) -> Outcome {
    let mut rng = rng_from_seed(SEED + 11);
    for _ in 0..10 {
        // q = ±1 would make q1 = q2, outside the family's domain
        let q = loop {
            let q = common::nonzero(&mut rng);
            if &q * &q != Scalar::exact_int(1) {
                break q;
            }
        };
        let weight = -(&q + &q.checked_recip().unwrap());
        for n in 3..=5usize {
            let e: Vec<SquareMatrix> =
                (1..n).map(|k| tl_generator(&q, n, k).map(|t| t.entries)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
            for k in 0..n - 1 {
                check(&e[k] * &e[k] == e[k].scale(&weight), || format!("E_k^2 fails, q = {q}, n = {n}"))?;
                if k + 1 < n - 1 {
                    check(&(&e[k] * &e[k + 1]) * &e[k] == e[k], || format!("E_k E_k+1 E_k fails, q = {q}"))?;
                    check(&(&e[k + 1] * &e[k]) * &e[k + 1] == e[k + 1], || format!("E_k+1 E_k E_k+1 fails, q = {q}"))?;
                }
                for j in k + 2..n - 1 {
                    check(&e[k] * &e[j] == &e[j] * &e[k], || format!("far commutation fails, q = {q}"))?;
                }
            }
        }
        let (z1, z2) = (common::nonzero(&mut rng), common::nonzero(&mut rng));
        let (s, t) = r_as_tl(&q, &z1, &z2).map_err(|e| e.to_string())?;
        let p = FamilyParams::new(q.clone(), q.checked_recip().unwrap(), Scalar::exact_int(1)).unwrap();
        let g = GroupElem3::new(z1.clone(), z2.clone(), Scalar::exact_int(1)).unwrap();
        let Ok(r) = r_family(&p, Kind::Cf, &g) else { continue };
        let rebuilt = &SquareMatrix::identity(4, ScalarMode::Exact).scale(&s) + &tl_matrix(&q).unwrap().scale(&t);
        check(rebuilt == r.as_operator(), || format!("decomposition fails at q = {q}, z = ({z1}, {z2})"))?;
    }
    Ok("relations for n = 3,4,5 at 10 values of q; decomposition holds".into())
}

fn criterion_12(_: &mut Vec<YbTriple>) -> Outcome {
    let m = asm_matrix();
    check(m.mode() == ScalarMode::Float(1e-9), || format!("mode {:?}", m.mode()))?;
    let ones = SixVertexMatrix::new([(); 6].map(|_| Scalar::float(1.0, 0.0))).unwrap();
    check(m.projective_eq(&ones), || format!("{m} is not proportional to all ones"))?;
    Ok(format!("entries {}, residual {:.1e}", m.a1(), m.projective_residual(&ones)))
}

fn main() -> ExitCode {
    panic::set_hook(Box::new(|_| {}));
    let s = |x| Some(Duration::from_secs(x));
    let mut suite = Suite { failed: Vec::new(), solutions: Vec::new() };
    suite.run(1, "oracle equivalence", s(5), criterion_1);
    suite.run(2, "solver correctness", s(1), criterion_2);
    suite.run(3, "commutative families", s(10), criterion_3);
    suite.run(4, "GL2 x GL1 parametrization", s(10), criterion_4);
    suite.run(5, "equivalent forms", None, criterion_5);
    suite.run(6, "dual identity", None, criterion_6);
    suite.run(7, "delta-inverse law", None, criterion_7);
    suite.run(8, "self-composition classes", None, criterion_8);
    suite.run(9, "groupoid axioms", s(10), criterion_9);
    suite.run(10, "associativity", s(30), criterion_10);
    suite.run(11, "Temperley-Lieb", s(5), criterion_11);
    suite.run(12, "ASM specialization", s(1), criterion_12);
    let _ = panic::take_hook();
    if suite.failed.is_empty() {
        println!("acceptance: all 12 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {:?}", suite.failed);
        ExitCode::FAILURE
    }
}
