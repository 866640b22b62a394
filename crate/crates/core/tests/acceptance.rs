//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Equality is exact everywhere; the only tolerances are the time
//! budgets below.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lambda_modeq::arith::odd_primes_up_to;
use lambda_modeq::bpoly::{binomial_moment, c_coeff, p_poly};
use lambda_modeq::exact::{binomial, factorial, pow_signed, rat, ExactRational};
use lambda_modeq::modeq::*;
use lambda_modeq::ode::{ode_residual, residual_for};
use lambda_modeq::qseries::{lambda_series, xy_normalized_direct, xy_normalized_lemma, XYParams};
use num_rational::BigRational;

const BUDGET_MATRICES: Duration = Duration::from_secs(10);
const BUDGET_ETA: Duration = Duration::from_secs(30);
const BUDGET_ODE: Duration = Duration::from_secs(5);
const BUDGET_A13: Duration = Duration::from_secs(1);
const BUDGET_SCAN: Duration = Duration::from_secs(60);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn timed(f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let t = Instant::now();
    let o = f();
    (o, t.elapsed())
}

fn within(o: Outcome, elapsed: Duration, budget: Duration) -> Outcome {
    let ok = elapsed <= budget;
    outcome(
        o.passed && ok,
        format!(
            "{}; {:.3}s (budget {}s)",
            o.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        ),
    )
}

fn printed_matrices() -> Outcome {
    let mut bad = Vec::new();
    for (p, _) in common::PRINTED {
        match assemble(p) {
            Ok(a) if a.to_i64().as_ref() == Some(&common::printed(p)) => {}
            Ok(_) => bad.push(format!("A_{p} differs")),
            Err(e) => bad.push(format!("A_{p}: {e}")),
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "7 of 7 matrices exact".into()
        } else {
            bad.join(", ")
        },
    )
}

fn eta_equivalence() -> Outcome {
    let mut pairs = 0;
    for p in [3, 5, 7, 11, 13] {
        let params = params_for(p).unwrap();
        let m = params.m;
        let order = 2 * m as usize + 10;
        for i in 0..=m {
            for h in 0..=m - i {
                let xp = XYParams::new(params, i, h);
                if xy_normalized_lemma(&xp, order) != xy_normalized_direct(&xp, order) {
                    return outcome(false, format!("p = {p}, (i, h) = ({i}, {h}) differ"));
                }
                pairs += 1;
            }
        }
    }
    outcome(true, format!("{pairs} (p, i, h) cases equal"))
}

fn moments() -> Outcome {
    let primes = odd_primes_up_to(97);
    for &p in &primes {
        let params = params_for(p as i64).unwrap();
        let row = match row_one(&params) {
            Ok(r) => r,
            Err(e) => return outcome(false, format!("p = {p}: {e}")),
        };
        let got = row_moments(&row);
        let want = moment_formulas(&params);
        if got[0] != want.first || got[1] != want.second {
            return outcome(false, format!("p = {p}: moments {}, {}", got[0], got[1]));
        }
        if params.m >= 3 && got[2] != want.third {
            return outcome(
                false,
                format!("p = {p}: third moment {} vs {}", got[2], want.third),
            );
        }
    }
    let mut cross = Vec::new();
    for p in [5, 11, 23] {
        let row = &common::printed(p)[1];
        let direct: i64 = row
            .iter()
            .enumerate()
            .map(|(h, a)| (1 + 2 * h as i64).pow(2) * a)
            .sum();
        let f = moment_formulas(&params_for(p).unwrap());
        if f.third != rat(direct) || f.third_plus_sign == rat(direct) {
            return outcome(
                false,
                format!(
                    "p = {p}: corrected third moment {} vs printed row {direct}",
                    f.third
                ),
            );
        }
        cross.push(format!(
            "p={p}: {direct} (printed sign gives {}, fails)",
            f.third_plus_sign
        ));
    }
    outcome(
        true,
        format!(
            "moments 1-2 for {} primes <= 97, moment 3 where m >= 3; {}",
            primes.len(),
            cross.join(", ")
        ),
    )
}

fn determinants() -> Outcome {
    let mut count = 0;
    for p in [5, 11, 13, 19, 23, 31, 47] {
        let report = verify_block_determinants(&params_for(p).unwrap()).unwrap();
        if !report.passed() {
            return outcome(false, report.to_string());
        }
        count += report.checks.len();
    }
    outcome(
        true,
        format!("{count} block determinants equal (-2n)^((m+1-i)(m-i)/2)"),
    )
}

fn structure() -> Outcome {
    for (p, _) in common::PRINTED {
        // assemble fails with NotIntegral unless every entry reduces to an integer
        let a = match assemble(p) {
            Ok(a) => a,
            Err(e) => return outcome(false, format!("p = {p}: {e}")),
        };
        let report = verify_symmetry(&a);
        if !report.passed() {
            return outcome(false, report.to_string());
        }
    }
    outcome(
        true,
        "symmetry, horizontal symmetry, zero triangle, integrality on all 7",
    )
}

fn global_vanishing() -> Outcome {
    let mut details = Vec::new();
    for p in [5, 11, 13, 23] {
        let a = assemble(p).unwrap();
        let order = a.params().default_vanish_order();
        if !verify_global_vanish(&a, order).passed() {
            return outcome(false, format!("p = {p} residual nonzero through q^{order}"));
        }
        details.push(format!("p={p} T={order}"));
    }
    let a = assemble(5).unwrap();
    let bad = a.perturbed(2, 1, 1);
    let order = a.params().default_vanish_order();
    let caught = global_residual(&bad, order).valuation();
    outcome(
        caught.is_some(),
        format!(
            "{}; perturbed A_5 caught at q^{}",
            details.join(", "),
            caught.map_or("-".into(), |v| v.to_string())
        ),
    )
}

fn p_suite() -> Outcome {
    let table = |s: u32, m: i64| -> ExactRational {
        let m = rat(m);
        match s {
            0 => rat(1),
            1 => &m / rat(2),
            2 => &m * (rat(3) * &m + rat(1)) / rat(24),
            3 => &m * &m * (&m + rat(1)) / rat(48),
            _ => {
                &m * (rat(-2) + rat(5) * &m + rat(30) * &m * &m + rat(15) * &m * &m * &m)
                    / rat(5760)
            }
        }
    };
    for s in 0..=4 {
        for m in 1..=10u32 {
            if p_poly(s, m) != table(s, i64::from(m)) {
                return outcome(false, format!("P_{s}({m}) = {}", p_poly(s, m)));
            }
        }
    }
    for m in 1..=12u32 {
        for n in 0..m {
            if binomial_moment(n, m) != rat(0) {
                return outcome(false, format!("binomial moment N = {n}, m = {m} nonzero"));
            }
        }
    }
    for m in 1..=10u32 {
        for n in m..=m + 4 {
            let sign = if m % 2 == 1 { 1 } else { -1 };
            let want =
                rat(sign) * p_poly(n - m, m) * BigRational::from_integer(factorial(u64::from(n)));
            if binomial_moment(n, m) != want {
                return outcome(false, format!("binomial moment N = {n}, m = {m}"));
            }
        }
    }
    for s in 0..=4u32 {
        for m in 0..=10u32 {
            let sum: ExactRational = (0..=s)
                .map(|r| {
                    c_coeff(s, r) * BigRational::from_integer(binomial(u64::from(m), u64::from(r)))
                })
                .sum();
            if sum != p_poly(s, m) {
                return outcome(false, format!("c expansion s = {s}, m = {m}"));
            }
        }
    }
    outcome(
        true,
        "table, vanishing and nonvanishing moments, c expansion",
    )
}

fn theorem_52() -> Outcome {
    let mut notes = Vec::new();
    for p in [5, 11, 23] {
        let params = params_for(p).unwrap();
        let pipe = second_row_pipeline(&params).unwrap();
        if pipe.a20 != rat(3) || pipe.a21 != rat(-3) {
            return outcome(
                false,
                format!("p = {p}: a20 = {}, a21 = {}", pipe.a20, pipe.a21),
            );
        }
        let (m, n) = (i64::from(params.m), i64::from(params.n));
        let det = theorem52_part3_determinant(&params).unwrap();
        let want = rat(m) * pow_signed(-2 * n, 3) * pow_signed(2, n);
        if det != want {
            return outcome(false, format!("p = {p}: determinant {det} vs {want}"));
        }
        let expr = theorem52_part1_expressions(&params).unwrap();
        let row = &common::printed(p)[1];
        if (0..3).any(|h| expr[h] != rat(-row[h])) {
            return outcome(false, format!("p = {p}: printed first-row expressions"));
        }
        for r in [
            theorem52_part1(&params),
            theorem52_part2(&params),
            theorem52_part3(&params),
        ] {
            let r = r.unwrap();
            if !r.passed() {
                return outcome(false, r.to_string());
            }
            notes.extend(r.notes);
        }
    }
    notes.sort();
    notes.dedup();
    outcome(
        true,
        format!(
            "a20 = 3, a21 = -3, det = m(-2n)^3 2^n for p = 5, 11, 23; notes: {}",
            notes.join(" | ")
        ),
    )
}

fn ode() -> Outcome {
    let r = ode_residual(40);
    let control = residual_for(&lambda_series(40).scale(&rat(2)));
    outcome(
        r.vanishes() && !control.vanishes(),
        format!(
            "lambda residual zero through q^{}; 2*lambda first nonzero at q^{}",
            r.effective_order,
            control
                .first_nonzero()
                .map_or("-".into(), |v| v.to_string())
        ),
    )
}

fn main() -> ExitCode {
    let mut lines: Vec<(usize, Outcome)> = Vec::new();

    let (o, t) = timed(printed_matrices);
    lines.push((1, within(o, t, BUDGET_MATRICES)));
    let (o, t) = timed(eta_equivalence);
    lines.push((2, within(o, t, BUDGET_ETA)));
    lines.push((3, moments()));
    lines.push((4, determinants()));
    lines.push((5, structure()));
    lines.push((6, global_vanishing()));
    lines.push((7, p_suite()));
    lines.push((8, theorem_52()));
    let (o, t) = timed(ode);
    lines.push((9, within(o, t, BUDGET_ODE)));

    let (a13, t13) = timed(|| {
        let ok = assemble(13)
            .map(|a| a.to_i64() == Some(common::printed(13)))
            .unwrap_or(false);
        outcome(ok, "A_13")
    });
    let a13 = within(a13, t13, BUDGET_A13);
    let (sc, tsc) = timed(|| match scan(199) {
        Ok(rows) => {
            let failed: Vec<u64> = rows.iter().filter(|r| !r.passed).map(|r| r.p).collect();
            outcome(
                failed.is_empty(),
                format!(
                    "scan to 199 ({} primes{})",
                    rows.len(),
                    if failed.is_empty() {
                        String::new()
                    } else {
                        format!(", failed {failed:?}")
                    }
                ),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    });
    let sc = within(sc, tsc, BUDGET_SCAN);
    lines.push((
        10,
        outcome(
            a13.passed && sc.passed,
            format!("{}; {}", a13.detail, sc.detail),
        ),
    ));

    let mut failures = 0;
    for (k, o) in &lines {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {k}: {}", o.detail);
        failures += usize::from(!o.passed);
    }
    println!(
        "{} of {} criteria passed",
        lines.len() - failures,
        lines.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
