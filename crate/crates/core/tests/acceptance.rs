//! The nine acceptance criteria, one pass/fail line each. Runs without the
//! libtest harness so the lines always print.

use hypermono::hypersurface::compute_invariants;
use hypermono::jtheory::{adams_psi_r, james_periodicity_against, KOClass};
use hypermono::kreck_su::{coker_phi, ker_phi, mcg_row, theta7_mod_ker};
use hypermono::pham;
use hypermono::quadform::{invariant_subgroup_scan, orbit_check, QuadraticSpace};
use hypermono::steenrod_ext::{
    apply_differential_pattern, differential_pattern, ext_chart, thom_module, Op, ThreePrimaryOutcome,
};
use num_bigint::BigInt;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn characteristic_classes() -> Outcome {
    for d in 1..=50i64 {
        let h = compute_invariants(d).map_err(|e| e.to_string())?;
        // c(X_d) = (1+x)^5 / (1+dx) truncated, x^3 = d [X_d]
        let c1 = 5 - d;
        let c2 = 10 - 5 * d + d * d;
        let c3 = 10 - 10 * d + 5 * d * d - d * d * d;
        let chi = d * c3;
        let p1 = d * (c1 * c1 - 2 * c2);
        ensure(h.chern == [c1, c2, c3], || format!("d = {d}: chern {:?}", h.chern))?;
        ensure(h.euler_char == chi && h.b3 == 4 - chi, || format!("d = {d}: chi {}", h.euler_char))?;
        ensure(h.p1_coeff == p1, || format!("d = {d}: p1 {}", h.p1_coeff))?;
    }
    let h = compute_invariants(1).map_err(|e| e.to_string())?;
    ensure(h.euler_char == 4 && h.b3 == 0, || "CP^3 cross-check".into())
}

fn kreck_su() -> Outcome {
    for d in 1..=500i64 {
        let row = mcg_row(d).map_err(|e| e.to_string())?;
        ensure(row.ker_phi.order() * row.theta7_mod_ker.order() == 28, || format!("d = {d}"))?;
    }
    let s = |g: Result<_, _>| g.map(|g: hypermono::kreck_su::FiniteAbelianGroup| g.to_string()).unwrap();
    ensure(s(ker_phi(6)) == "Z/28", || "Ker at d = 6".into())?;
    ensure(s(ker_phi(7)) == "0", || "Ker at d = 7".into())?;
    ensure(s(theta7_mod_ker(7)) == "Z/28", || "Theta7/Ker at d = 7".into())?;
    ensure(s(coker_phi(12)) == "Z/6", || "Coker at d = 12".into())
}

fn pham_suite() -> Outcome {
    for d in 2..=5i64 {
        let s = pham::summarize(d).map_err(|e| e.to_string())?;
        let b = |n: i64| Some(BigInt::from(n));
        ensure(s.module_rank == (d as usize - 1).pow(4) && s.module_torsion_free, || format!("d = {d}: module"))?;
        ensure(s.quotient.rank() as i64 == pham::expected_quotient_rank(d), || format!("d = {d}: quotient rank"))?;
        ensure(s.h0_pham.order() == b(d) && s.h0_pham.invariant_factors().len() == 1, || {
            format!("d = {d}: H0(P) = {}", s.h0_pham)
        })?;
        if d >= 3 {
            ensure(s.h0_quotient.order() == b(d) && s.h0_quotient.invariant_factors().len() == 1, || {
                format!("d = {d}: H0(P/I) = {}", s.h0_quotient)
            })?;
            ensure(s.ideal_map.is_zero, || format!("d = {d}: ideal map nonzero"))?;
        } else {
            // the saturated quotient vanishes at d = 2; the quotient by the
            // submodule generated by nu carries the Z/2
            ensure(s.generated_quotient.torsion_factors() == vec![BigInt::from(2)], || {
                format!("d = 2: P/<nu> = {}", s.generated_quotient)
            })?;
        }
        ensure(s.all_pass(), || format!("d = {d}: {:?}", s.checks()))?;
    }
    Ok(())
}

fn jtheory_suite() -> Outcome {
    let y = KOClass::y();
    let y2 = KOClass::y_squared();
    ensure(adams_psi_r(3, &y).sub(&y) == KOClass::new(8, 6), || "(psi^3 - 1) y".into())?;
    ensure(adams_psi_r(3, &y2).sub(&y2) == KOClass::new(0, 80), || "(psi^3 - 1) y^2".into())?;
    for d in (8..=64).step_by(8) {
        let v = james_periodicity_against(d, 59).map_err(|e| e.to_string())?;
        ensure(v.holds, || format!("d = {d}, shift 59"))?;
    }
    for d in (4..=60).step_by(8) {
        let v = james_periodicity_against(d, 27).map_err(|e| e.to_string())?;
        ensure(v.holds, || format!("d = {d}, shift 27"))?;
    }
    let v = james_periodicity_against(8, 27).map_err(|e| e.to_string())?;
    ensure(!v.holds, || "negative control d = 8, shift 27 holds".into())
}

fn thom_displays() -> Outcome {
    let e = |e: hypermono::steenrod_ext::SteenrodError| e.to_string();
    for d in (2..=20).step_by(2) {
        let m = thom_module(d, 2, 8).map_err(e)?;
        ensure(m.action_matrix(&[Op::P(2)], 0) == vec![vec![1]], || format!("d = {d}: Sq^2 u"))?;
        ensure(m.action_matrix(&[Op::P(4)], 0) == vec![vec![1]], || format!("d = {d}: Sq^4 u"))?;
        ensure(m.action_matrix(&[Op::P(2)], 4) == vec![vec![1]], || format!("d = {d}: Sq^2 u x^2"))?;
    }
    for d in (3..=30).step_by(3) {
        let m = thom_module(d, 3, 8).map_err(e)?;
        ensure(m.action_matrix(&[Op::P(1)], 0) == vec![vec![1]], || format!("d = {d}: P^1 u"))?;
        ensure(m.action_matrix(&[Op::P(1)], 2) == vec![vec![2]], || format!("d = {d}: P^1 u x"))?;
    }
    Ok(())
}

fn column(c: &hypermono::steenrod_ext::ExtChart, stem: u32) -> Vec<usize> {
    (0..=5).map(|s| c.dim(stem, s)).collect()
}

fn ext_charts() -> Outcome {
    let e = |e: hypermono::steenrod_ext::SteenrodError| e.to_string();
    // dims for s = 0..5 at stems 4..8, read off the two figures
    let p3: [[usize; 6]; 5] = [
        [0, 1, 1, 1, 1, 1],
        [0, 0, 0, 0, 0, 0],
        [0, 1, 1, 1, 1, 1],
        [0, 1, 1, 0, 0, 0],
        [1, 1, 1, 1, 1, 1],
    ];
    let p2: [[usize; 6]; 5] = [
        [0, 0, 1, 1, 1, 1],
        [0, 1, 1, 1, 0, 0],
        [0, 1, 1, 1, 1, 1],
        [0, 1, 2, 1, 1, 0],
        [1, 1, 2, 2, 1, 1],
    ];
    for d in [3, 6, 9] {
        let c = ext_chart(3, d, 5, 8).map_err(e)?;
        for (i, want) in p3.iter().enumerate() {
            let stem = 4 + i as u32;
            ensure(column(&c, stem) == want, || format!("p = 3, d = {d}, stem {stem}: {:?}", column(&c, stem)))?;
        }
    }
    for d in [2, 4, 6, 8] {
        let c = ext_chart(2, d, 5, 8).map_err(e)?;
        for (i, want) in p2.iter().enumerate() {
            let stem = 4 + i as u32;
            ensure(column(&c, stem) == want, || format!("p = 2, d = {d}, stem {stem}: {:?}", column(&c, stem)))?;
        }
    }
    Ok(())
}

fn einf() -> Outcome {
    let e = |e: hypermono::steenrod_ext::SteenrodError| e.to_string();
    for d in (4..=32).step_by(4) {
        let c = ext_chart(2, d, 6, 8).map_err(e)?;
        let pattern = differential_pattern(2, d, ThreePrimaryOutcome::NoDifferential).map_err(e)?;
        let stems = apply_differential_pattern(&c, &pattern).map_err(e)?.einf.unwrap_or_default();
        let want = if d % 8 == 0 { 32 } else { 16 };
        ensure(stems[7].torsion_order == want, || format!("d = {d}: stem 7 order {}", stems[7].torsion_order))?;
        ensure(stems[5].torsion_order == 4, || format!("d = {d}: stem 5 order {}", stems[5].torsion_order))?;
    }
    Ok(())
}

fn quadforms() -> Outcome {
    let e = |e: hypermono::quadform::QuadformError| e.to_string();
    for g in 0..=2usize {
        for bits in 0u32..1 << (2 * g) {
            let q: Vec<u8> = (0..2 * g).map(|i| ((bits >> i) & 1) as u8).collect();
            let s = QuadraticSpace::new(g, &q).map_err(e)?;
            ensure(s.zero_count() == s.expected_zero_count(), || format!("g = {g}, q = {q:?}"))?;
        }
    }
    for g in [2usize, 3] {
        for arf in [0u8, 1] {
            let s = QuadraticSpace::with_arf(g, arf).map_err(e)?;
            let orbits = orbit_check(&s).map_err(e)?;
            let constant_q = orbits.iter().all(|o| o.iter().all(|&v| s.q(v) == s.q(o[0])));
            ensure(orbits.len() == 2 && constant_q, || format!("g = {g}, arf = {arf}: {} orbits", orbits.len()))?;
        }
    }
    for (n, g) in [(2u32, 2usize), (3, 2), (4, 2)] {
        let r = invariant_subgroup_scan(n, g, 0).map_err(e)?;
        ensure(r.all_of_form_k_times_lattice, || format!("n = {n}, g = {g}: {:?}", r.witnesses))?;
    }
    Ok(())
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_hypermono"))
            .args(["report", "--d", "4", "--emit", "json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let a = run()?;
    let b = run()?;
    ensure(a.status.success() && b.status.success(), || "report exited with failure".into())?;
    ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || "outputs differ".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 9] = [
        ("1 characteristic classes", characteristic_classes, Duration::from_secs(1)),
        ("2 Kreck-Su consistency", kreck_su, Duration::from_secs(1)),
        ("3 Pham-Looijenga suite", pham_suite, Duration::from_secs(120)),
        ("4 J-theory suite", jtheory_suite, Duration::from_secs(1)),
        ("5 Thom module displays", thom_displays, Duration::from_secs(1)),
        ("6 Ext charts", ext_charts, Duration::from_secs(30)),
        ("7 E_infty orders", einf, Duration::from_secs(30)),
        ("8 quadratic forms", quadforms, Duration::from_secs(60)),
        ("9 report determinism", determinism, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (name, f, budget) in criteria {
        let t = Instant::now();
        let r = f();
        let elapsed = t.elapsed();
        let r = r.and_then(|()| ensure(elapsed <= budget, || format!("took {elapsed:?}, budget {budget:?}")));
        match r {
            Ok(()) => println!("PASS  {name}  ({elapsed:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name}  ({elapsed:.2?}): {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
