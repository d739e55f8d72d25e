//! Acceptance suite: one line per criterion. Exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use blockset_core::construct::{super_construction, CertStatus};
use blockset_core::repro::{self, ReproItem};
use blockset_core::Caps;

const SEED: u64 = 20240229;

/// Runtime budgets per criterion.
const BUDGET_1: Duration = Duration::from_secs(1);
const BUDGET_2: Duration = Duration::from_secs(30);
const BUDGET_3: Duration = Duration::from_secs(5 * 60);
const BUDGET_4: Duration = Duration::from_secs(10);
const BUDGET_5: Duration = Duration::from_secs(60);
const BUDGET_6: Duration = Duration::from_secs(10 * 60);
const BUDGET_7_SINGLE: Duration = Duration::from_secs(15 * 60);
const BUDGET_7_EIGHT: Duration = Duration::from_secs(3 * 60);
const BUDGET_8: Duration = Duration::from_secs(60);
const BUDGET_9: Duration = Duration::from_secs(60);

struct Line {
    n: usize,
    title: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
}

fn criterion(n: usize, title: &'static str, budget: Duration, items: impl FnOnce() -> Vec<ReproItem>) -> Line {
    let started = Instant::now();
    let items = items();
    let elapsed = started.elapsed();
    let mut pass = items.iter().all(|i| i.pass);
    let mut detail: Vec<String> = items.iter().map(|i| i.line()).collect();
    if elapsed > budget {
        pass = false;
        detail.push(format!("over budget of {} s", budget.as_secs()));
    }
    Line {
        n,
        title,
        pass,
        detail: detail.join(" | "),
        elapsed,
    }
}

/// Independent counts for the q = 3 and q = 2 super constructions:
/// hyperplanes of PG(11, 3) and PG(5, 2), and the size law 4·9·4.
fn super_expectations() -> ReproItem {
    let started = Instant::now();
    let hyperplanes_q3 = (3u128.pow(12) - 1) / 2;
    let hyperplanes_q2 = 2u128.pow(6) - 1;
    let pool = |n| rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
    let caps = Caps::default();
    let t8 = Instant::now();
    let eight = pool(8).install(|| super_construction(3, 1, true, &caps)).unwrap();
    let t8 = t8.elapsed();
    let t1 = Instant::now();
    let one = pool(1).install(|| super_construction(3, 1, true, &caps)).unwrap();
    let t1 = t1.elapsed();
    let even = super_construction(2, 1, true, &caps).unwrap();
    let c = &eight.certificate;
    let e = &even.certificate;
    let checks = [
        (c.size == 4 * 9 * 4, "size 144"),
        (c.k == 12, "ambient PG(11,3)"),
        (c.sbs.hyperplanes == Some(hyperplanes_q3), "265720 hyperplanes"),
        (c.sbs.status == CertStatus::Verified, "q=3 verified"),
        (c.bound == "192" && c.within_bound, "bound 192"),
        (c.holds(), "q=3 certificate holds"),
        (one.certificate == eight.certificate, "identical certificates"),
        (one.points.points() == eight.points.points(), "identical point lists"),
        (e.size == 36 && e.k == 6, "q=2 size 36 in PG(5,2)"),
        (e.sbs.hyperplanes == Some(hyperplanes_q2), "63 hyperplanes"),
        (e.sbs.status == CertStatus::Verified && e.holds(), "q=2 verified"),
        (t1 <= BUDGET_7_SINGLE, "single-thread budget"),
        (t8 <= BUDGET_7_EIGHT, "8-worker budget"),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.0).map(|c| c.1).collect();
    ReproItem {
        id: "super-construction".into(),
        pass: failed.is_empty(),
        detail: if failed.is_empty() {
            format!(
                "144 points, 265720 hyperplanes, bound 192; q=2: 36 points; 1 thread {} ms, 8 threads {} ms",
                t1.as_millis(),
                t8.as_millis()
            )
        } else {
            format!("failed: {}", failed.join(", "))
        },
        elapsed_ms: started.elapsed().as_millis() as u64,
    }
}

fn main() -> ExitCode {
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let want = |n| only.is_none_or(|o| o == n);
    let mut lines = Vec::new();
    if want(1) {
        lines.push(criterion(1, "example matrices", BUDGET_1, || {
            vec![repro::example_matrices()]
        }));
    }
    if want(2) {
        lines.push(criterion(2, "field reduction identity", BUDGET_2, || {
            vec![repro::reduction_identity(SEED, 200)]
        }));
    }
    if want(3) {
        lines.push(criterion(3, "outer engine agreement", BUDGET_3, || {
            vec![repro::engine_agreement(SEED, 500)]
        }));
    }
    if want(4) {
        lines.push(criterion(4, "outer SBS on the line", BUDGET_4, || {
            vec![repro::line_outer_sbs()]
        }));
    }
    if want(5) {
        lines.push(criterion(5, "distance laws", BUDGET_5, || vec![repro::distance_laws()]));
    }
    if want(6) {
        lines.push(criterion(6, "avoidance suite", BUDGET_6, || {
            vec![repro::avoidance_suite(SEED, 200)]
        }));
    }
    if want(7) {
        lines.push(criterion(
            7,
            "super construction",
            BUDGET_7_SINGLE + BUDGET_7_EIGHT,
            || vec![super_expectations()],
        ));
    }
    if want(8) {
        lines.push(criterion(8, "bounds grid", BUDGET_8, || {
            vec![repro::bounds_comparison(), repro::bounds_constants()]
        }));
    }
    if want(9) {
        lines.push(criterion(9, "saturating instance", BUDGET_9, || {
            vec![repro::subgeometry_saturation()]
        }));
    }
    let mut ok = true;
    for l in &lines {
        ok &= l.pass;
        println!(
            "criterion {} [{}] {} ({:.1} s): {}",
            l.n,
            if l.pass { "PASS" } else { "FAIL" },
            l.title,
            l.elapsed.as_secs_f64(),
            l.detail
        );
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
