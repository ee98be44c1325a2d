//! Acceptance suite: one PASS/FAIL line per criterion; exits nonzero on any failure.

mod common;

use std::time::{Duration, Instant};

use common::suites::{self, all_up_to, run_cases};
use common::{p, perm_strategy};
use inflatable::counting::count_length3_all;
use inflatable::criteria::{
    admissible_residues, check_3_inflatable, compose_inflatables, is_admissible_length, residue_multiplication_table,
    target_counts_3, ADMISSIBLE_MODULUS,
};
use inflatable::limits::limit_density_uniform;
use inflatable::montecarlo::estimate_limit_density;
use inflatable::rational::{binomial, ratio};
use inflatable::search::{search_3_inflatable, SearchConfig, Space};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, budget: Duration) -> Result<(), String> {
    ensure(elapsed <= budget, || format!("took {elapsed:?}, budget {budget:?}"))
}

fn worked_example() -> Outcome {
    let start = Instant::now();
    let tau = p("472951836");
    for (pi, expected) in [
        ("132", (29, 162)),
        ("213", (29, 162)),
        ("231", (29, 162)),
        ("312", (29, 162)),
        ("123", (23, 162)),
        ("321", (23, 162)),
    ] {
        let got = limit_density_uniform(&p(pi), &tau).map_err(|e| e.to_string())?;
        ensure(got == ratio(expected.0, expected.1), || format!("t({pi}) = {got}"))?;
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok("132/213/231/312 -> 29/162, 123/321 -> 23/162".into())
}

fn refutation() -> Outcome {
    let start = Instant::now();
    let tau = p("472951836");
    let inverse = tau.inverse();
    ensure(inverse == p("638159274"), || format!("inverse = {inverse}"))?;
    for candidate in [tau, inverse, p("415927386")] {
        let report = check_3_inflatable(&candidate);
        ensure(!report.verdict, || format!("{candidate} reported 3-inflatable"))?;
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok("472951836, inverse 638159274 and 415927386 all rejected".into())
}

fn minimal_examples() -> Outcome {
    let start = Instant::now();
    ensure(binomial(17, 3) == 680 && binomial(17, 2) == 136, || "binomials".into())?;
    for tau in ["E534BGA9HC2D1687F", "G54ABC319HF678ED2"] {
        let tau = p(tau);
        let report = check_3_inflatable(&tau);
        ensure(report.verdict, || format!("{tau} rejected"))?;
        let c = count_length3_all(&tau).map_err(|e| e.to_string())?;
        ensure(c.length3() == [102, 119, 119, 119, 119, 102], || format!("{tau}: {:?}", c.length3()))?;
        ensure(c.inv12 == 68, || format!("{tau}: 12-count {}", c.inv12))?;
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok("both length-17 examples: 123/321 = 102, others 119 of 680; 12 = 68 of 136".into())
}

fn number_theory() -> Outcome {
    let start = Instant::now();
    let residues = admissible_residues(ADMISSIBLE_MODULUS).map_err(|e| e.to_string())?;
    ensure(residues == [0, 1, 17, 64, 80, 81], || format!("residues {residues:?}"))?;
    let expected: [[u64; 6]; 6] = [
        [0, 0, 0, 0, 0, 0],
        [0, 1, 17, 64, 80, 81],
        [0, 17, 1, 80, 64, 81],
        [0, 64, 80, 64, 80, 0],
        [0, 80, 64, 80, 64, 0],
        [0, 81, 81, 0, 0, 81],
    ];
    let table = residue_multiplication_table();
    ensure(table.residues == residues, || "table header".into())?;
    for (row, expected) in table.products.iter().zip(expected.iter()) {
        ensure(row.as_slice() == expected, || format!("row {row:?} != {expected:?}"))?;
    }
    ensure(table.is_closed(), || "table not closed".into())?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok("residues {0,1,17,64,80,81}; multiplication table matches and is closed".into())
}

fn closure() -> Outcome {
    let start = Instant::now();
    let composed = compose_inflatables(&p("E534BGA9HC2D1687F"), &p("G54ABC319HF678ED2")).map_err(|e| e.to_string())?;
    ensure(composed.len() == 289, || format!("length {}", composed.len()))?;
    ensure(289 % ADMISSIBLE_MODULUS == 1 && is_admissible_length(289), || "289 inadmissible".into())?;
    let target = target_counts_3(289).map_err(|e| e.to_string())?.ok_or("no integral target at 289")?;
    let counts = count_length3_all(&composed).map_err(|e| e.to_string())?;
    ensure(counts == target, || format!("{counts:?} != {target:?}"))?;
    ensure(check_3_inflatable(&composed).verdict, || "composition rejected".into())?;
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("length 289 counts {:?}, 12 = {} match the targets", counts.length3(), counts.inv12))
}

fn search_reproduction() -> Outcome {
    let start = Instant::now();
    let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let config = SearchConfig { threads, ..SearchConfig::new(17) };
    let out = search_3_inflatable(&config).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(!out.inadmissible && !out.timed_out, || "search did not complete".into())?;
    ensure(out.space == Space::Central, || "wrong space".into())?;
    ensure(out.scanned == 10_321_920, || format!("scanned {}", out.scanned))?;
    let example = p("G54ABC319HF678ED2");
    ensure(out.hits.binary_search(&example).is_ok(), || "G54ABC319HF678ED2 not found".into())?;
    for hit in &out.hits {
        ensure(hit.is_centrally_symmetric(), || format!("{hit} not centrally symmetric"))?;
        ensure(check_3_inflatable(hit).verdict, || format!("{hit} fails re-verification"))?;
    }
    ensure(out.found == out.hits.len(), || "found != hits".into())?;
    within(elapsed, Duration::from_secs(15 * 60))?;
    let versus = if out.found == 750 { "matches" } else { "differs from" };
    Ok(format!(
        "scanned {} in {:.1?} on {threads} thread(s); found {} ({versus} the expected 750); all hits re-verified",
        out.scanned, elapsed, out.found
    ))
}

fn montecarlo_consistency() -> Outcome {
    let start = Instant::now();
    let tau = p("472951836");
    let (j, samples, subset, seed) = (2000, 50, 20_000, 20_240_917);
    let e132 = estimate_limit_density(&tau, &p("132"), j, samples, subset, seed).map_err(|e| e.to_string())?;
    let e123 = estimate_limit_density(&tau, &p("123"), j, samples, subset, seed).map_err(|e| e.to_string())?;
    let (z132, z123, z_sixth) = (e132.z_score(29.0 / 162.0), e123.z_score(23.0 / 162.0), e123.z_score(1.0 / 6.0));
    ensure(z132.abs() <= 3.0, || format!("132: {e132:?}, z = {z132:.2}"))?;
    ensure(z123.abs() <= 3.0, || format!("123: {e123:?}, z = {z123:.2}"))?;
    ensure(z_sixth.abs() > 3.0, || format!("123 not separated from 1/6: z = {z_sixth:.2}"))?;
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!(
        "132: {:.5} ± {:.5} (z {z132:+.2}); 123: {:.5} ± {:.5} (z {z123:+.2}, z vs 1/6 {z_sixth:+.1})",
        e132.mean, e132.stderr, e123.mean, e123.stderr
    ))
}

fn property_suites() -> Outcome {
    let start = Instant::now();
    let label = |name: &'static str| move |e: String| format!("{name}: {e}");
    run_cases(1000, perm_strategy(3..=30), suites::fast_counts_match_brute_force).map_err(label("(i)"))?;
    run_cases(100, perm_strategy(1..=12), suites::uniform_limits_sum_to_one).map_err(label("(ii)"))?;
    run_cases(100, perm_strategy(3..=14), suites::linear_forms_hold).map_err(label("(iii)"))?;
    run_cases(500, suites::pattern_and_text(), suites::rotation_preserves_density).map_err(label("(iv)"))?;
    let mut partitioned = 0;
    for pi in all_up_to(6) {
        suites::partitions_reconstruct(&pi).map_err(|e| format!("(v): {e}"))?;
        partitioned += 1;
    }
    run_cases(200, suites::triple(), suites::inflation_associative).map_err(label("(vi)"))?;
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("(i) 1000 (ii) 100 (iii) 100 (iv) 500 (v) {partitioned} (vi) 200 cases"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("worked example", worked_example),
        ("refutation", refutation),
        ("minimal examples", minimal_examples),
        ("number theory", number_theory),
        ("closure", closure),
        ("search reproduction", search_reproduction),
        ("monte carlo consistency", montecarlo_consistency),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} PASS [{name}] {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL [{name}] {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
