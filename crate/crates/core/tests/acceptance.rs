//! Acceptance criteria, one reported line each. Runs as a plain binary
//! (`harness = false`) so the summary is always printed.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use paritynet::bench::{self, BenchConfig, Execution, Point};
use paritynet::f2::{Parity, WireState};
use paritynet::problems::{coloring_offset, encode_coloring, gen_random, rng_from_seed};
use paritynet::synth::{greedy_gauss_elim, greedy_parity_network};
use paritynet::verify::{circuit_diagonal, diagonal_distance, extract_phase_polynomial, oracle_diagonal};
use paritynet::{synthesize_diagonal, Method, PhasePolynomial, ReturnMethod, SynthOptions};
use rand::Rng;

const ORACLE_TOL: f64 = 1e-9;
const COEFF_TOL: f64 = 1e-9;
const TIE_SLACK: f64 = 1.02;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Instance {
    poly: PhasePolynomial,
    gamma: f64,
}

/// n ∈ 2..=8, 1..=20 terms, coefficients in [−π, π), γ ∈ {0.3, 1.0}.
fn small_instances(count: usize) -> Vec<Instance> {
    let mut rng = rng_from_seed(0xACCE55);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(2..=8);
            let m = rng.gen_range(1..=20);
            let gamma = if i % 2 == 0 { 0.3 } else { 1.0 };
            Instance {
                poly: gen_random(n, m, rng.gen()).unwrap(),
                gamma,
            }
        })
        .collect()
}

fn all_options() -> Vec<SynthOptions> {
    let mut out = Vec::new();
    for method in Method::ALL {
        for return_method in [ReturnMethod::GreedyElim, ReturnMethod::FallbackElim] {
            for force_identity in [false, true] {
                out.push(SynthOptions {
                    method,
                    return_method,
                    force_identity,
                });
            }
        }
    }
    out
}

fn c1_oracle_equivalence(instances: &[Instance]) -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut checks = 0;
    for inst in instances {
        let oracle = oracle_diagonal(&inst.poly, inst.gamma).map_err(|e| e.to_string())?;
        for opts in all_options() {
            let r = synthesize_diagonal(&inst.poly, inst.gamma, opts).map_err(|e| e.to_string())?;
            let d = circuit_diagonal(&r.circuit).map_err(|e| format!("{opts:?}: {e}"))?;
            let dist = diagonal_distance(&d, &oracle);
            worst = worst.max(dist);
            ensure(dist < ORACLE_TOL, || {
                format!("{opts:?} deviates by {dist:e} on {:?}", inst.poly)
            })?;
            checks += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} instances, {checks} circuits, max deviation {worst:.1e}, {:.2}s",
        instances.len(),
        elapsed.as_secs_f64()
    ))
}

fn c2_round_trip(instances: &[Instance]) -> Outcome {
    let mut worst: f64 = 0.0;
    for inst in instances {
        for opts in all_options() {
            let r = synthesize_diagonal(&inst.poly, inst.gamma, opts).map_err(|e| e.to_string())?;
            let ex = extract_phase_polynomial(&r.circuit, inst.gamma).map_err(|e| e.to_string())?;
            let diff = ex.extracted.max_coefficient_diff(&inst.poly);
            worst = worst.max(diff);
            ensure(diff <= COEFF_TOL, || format!("{opts:?}: coefficient error {diff:e}"))?;
            ensure(ex.final_state_matches(&r.circuit), || {
                format!(
                    "{opts:?}: final state {:?} vs permutation {:?}",
                    ex.final_state, r.circuit.output_permutation
                )
            })?;
        }
    }
    Ok(format!("max coefficient error {worst:.1e}"))
}

fn c3_ladder_exactness() -> Outcome {
    let mut rng = rng_from_seed(3);
    for _ in 0..100 {
        let n = rng.gen_range(2..=20);
        let poly = gen_random(n, rng.gen_range(1..=100), rng.gen()).unwrap();
        let r = synthesize_diagonal(&poly, 1.0, SynthOptions::new(Method::Ladder)).unwrap();
        ensure(r.cnot_count == poly.ladder_upper_bound(), || {
            format!("ladder {} vs bound {}", r.cnot_count, poly.ladder_upper_bound())
        })?;
    }
    Ok("100 instances equal the bound".into())
}

fn c4_lower_bound(instances: &[Instance]) -> Outcome {
    let mut rng = rng_from_seed(4);
    let mut polys: Vec<PhasePolynomial> = instances.iter().map(|i| i.poly.clone()).collect();
    for _ in 0..100 {
        polys.push(gen_random(rng.gen_range(6..=24), 100, rng.gen()).unwrap());
    }
    for poly in &polys {
        let heavy = poly.parities().filter(|p| p.weight() >= 2).count();
        for opts in all_options() {
            let r = synthesize_diagonal(poly, 1.0, opts).unwrap();
            ensure(r.network_cnots >= heavy, || {
                format!("{opts:?}: {} network CNOTs for {heavy} parities", r.network_cnots)
            })?;
            ensure(r.cnot_count == r.network_cnots + r.return_cnots, || {
                "count split".into()
            })?;
        }
    }
    Ok(format!(
        "{} instances x {} option sets",
        polys.len(),
        all_options().len()
    ))
}

fn c5_triangularity() -> Outcome {
    let mut rng = rng_from_seed(5);
    let mut gates = 0;
    for _ in 0..100 {
        let n = rng.gen_range(2..=24);
        let poly = gen_random(n, rng.gen_range(1..=100), rng.gen()).unwrap();
        let targets: Vec<Parity> = poly.parities().filter(|p| p.weight() >= 2).cloned().collect();
        let net = greedy_parity_network(&targets, n).unwrap();
        let mut state = WireState::identity(n);
        for c in &net.cnots {
            state.apply_cnot(c.control, c.target).unwrap();
            ensure(state.is_lower_triangular(), || format!("not triangular after {c}"))?;
            gates += 1;
        }
    }
    Ok(format!("{gates} gates checked"))
}

fn random_invertible(n: usize, rng: &mut impl Rng) -> WireState {
    loop {
        let rows = (0..n)
            .map(|_| {
                let mut p = Parity::zeros(n);
                for i in 0..n {
                    p.set(i, rng.gen());
                }
                p
            })
            .collect();
        if let Ok(s) = WireState::from_rows(rows) {
            return s;
        }
    }
}

fn c6_elimination() -> Outcome {
    let mut rng = rng_from_seed(6);
    let mut worst_ratio: f64 = 0.0;
    let mut fallback_used = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=16);
        let a = random_invertible(n, &mut rng);
        let e = greedy_gauss_elim(&a);
        ensure(e.cnots.len() <= n * n, || format!("n={n}: {} gates", e.cnots.len()))?;
        worst_ratio = worst_ratio.max(e.cnots.len() as f64 / (n * n) as f64);
        if e.fallback_cnots > 0 {
            fallback_used += 1;
        }
        let mut s = a.clone();
        for c in &e.cnots {
            s.apply_cnot(c.control, c.target).unwrap();
        }
        ensure(s.as_permutation().as_deref() == Some(&e.permutation[..]), || {
            "replay does not give the returned permutation".into()
        })?;
    }
    for n in 1..=16 {
        ensure(greedy_gauss_elim(&WireState::identity(n)).cnots.is_empty(), || {
            format!("identity n={n} emitted gates")
        })?;
    }
    Ok(format!(
        "1000 matrices, max gates/n^2 = {worst_ratio:.2}, fallback used on {fallback_used}"
    ))
}

/// Mean CNOT count per `(n, k, method)`.
fn means(run: &bench::BenchRun) -> BTreeMap<(usize, Option<usize>, Method), f64> {
    bench::summarize(run)
        .into_iter()
        .map(|r| ((r.n, r.k, r.method), r.mean_cnots))
        .collect()
}

fn c7_random_trend() -> Outcome {
    let start = Instant::now();
    let mut cfg = BenchConfig::new((4..=20).map(|n| Point::Random { n, terms: 100 }).collect());
    cfg.samples = 30;
    let run = bench::run_bench(&cfg, Execution::Parallel).map_err(|e| e.to_string())?;
    let summary = bench::summarize(&run);
    let m = means(&run);
    for n in 4..=20 {
        let g = m[&(n, None, Method::Greedy)];
        let l = m[&(n, None, Method::Ladder)];
        let gs = m[&(n, None, Method::Graysynth)];
        if n >= 6 {
            ensure(g < l, || format!("n={n}: greedy {g} >= ladder {l}"))?;
        }
        if n >= 12 {
            ensure(g < gs, || format!("n={n}: greedy {g} >= graysynth {gs}"))?;
        }
    }
    for row in summary.iter().filter(|r| r.method == Method::Ladder) {
        ensure(row.mean_cnots == row.mean_ladder_bound, || {
            format!(
                "n={}: ladder {} vs bound {}",
                row.n, row.mean_cnots, row.mean_ladder_bound
            )
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(600), || format!("took {elapsed:?}"))?;
    let g20 = m[&(20, None, Method::Greedy)];
    let gs20 = m[&(20, None, Method::Graysynth)];
    let l20 = m[&(20, None, Method::Ladder)];
    Ok(format!(
        "n=20 means: greedy {g20:.1}, graysynth {gs20:.1}, ladder {l20:.1}; {:.1}s",
        elapsed.as_secs_f64()
    ))
}

fn c8_full_trend() -> Outcome {
    let mut points = Vec::new();
    for k in 3..=5 {
        for n in 6..=12 {
            if k <= n {
                points.push(Point::Full { n, k });
            }
        }
    }
    let cfg = BenchConfig::new(points);
    let run = bench::run_bench(&cfg, Execution::Parallel).map_err(|e| e.to_string())?;
    let m = means(&run);
    let mut savings = Vec::new();
    let mut misses = Vec::new();
    for k in 3..=5 {
        for n in 6..=12 {
            let g = m[&(n, Some(k), Method::Greedy)];
            let gs = m[&(n, Some(k), Method::Graysynth)];
            let l = m[&(n, Some(k), Method::Ladder)];
            if g > gs * TIE_SLACK {
                misses.push(format!("n={n} k={k}: greedy {g} > graysynth {gs}"));
            }
            if g > l * TIE_SLACK {
                misses.push(format!("n={n} k={k}: greedy {g} > ladder {l}"));
            }
        }
        let g = m[&(10, Some(k), Method::Greedy)];
        let l = m[&(10, Some(k), Method::Ladder)];
        savings.push(1.0 - g / l);
    }
    if !savings.windows(2).all(|w| w[1] >= w[0]) {
        misses.push(format!("savings at n=10 not nondecreasing in k: {savings:?}"));
    }
    let detail = format!(
        "savings vs ladder at n=10 for k=3,4,5: {:.3}, {:.3}, {:.3}",
        savings[0], savings[1], savings[2]
    );
    if misses.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{}; {detail}", misses.join("; ")))
    }
}

fn c9_caveman_trend() -> Outcome {
    let mut points = Vec::new();
    for cliques in 3..=6 {
        for size in 4..=6 {
            points.push(Point::Caveman {
                cliques,
                clique_size: size,
            });
        }
    }
    let cfg = BenchConfig::new(points);
    let run = bench::run_bench(&cfg, Execution::Parallel).map_err(|e| e.to_string())?;
    let m = means(&run);
    for method in Method::ALL {
        for cliques in 3..=6 {
            for size in 4..=6 {
                let here = m[&(cliques, Some(size), method)];
                if cliques > 3 {
                    let prev = m[&(cliques - 1, Some(size), method)];
                    ensure(here > prev, || {
                        format!("{method}: cliques {cliques} size {size}: {here} <= {prev}")
                    })?;
                }
                if size > 4 {
                    let prev = m[&(cliques, Some(size - 1), method)];
                    ensure(here > prev, || {
                        format!("{method}: cliques {cliques} size {size}: {here} <= {prev}")
                    })?;
                }
            }
        }
    }
    for cliques in 3..=6 {
        for size in 4..=6 {
            let g = m[&(cliques, Some(size), Method::Greedy)];
            let gs = m[&(cliques, Some(size), Method::Graysynth)];
            ensure(g < gs, || {
                format!("cliques {cliques} size {size}: greedy {g} >= graysynth {gs}")
            })?;
        }
    }
    let at = |method: Method| m[&(6, Some(6), method)];
    Ok(format!(
        "(6,6): greedy {}, graysynth {}, ladder {}",
        at(Method::Greedy),
        at(Method::Graysynth),
        at(Method::Ladder)
    ))
}

fn c10_coloring_ground_states() -> Outcome {
    let colors = 3;
    let poly = encode_coloring(2, &[(0, 1)], colors).unwrap();
    let offset = coloring_offset(2, 1, colors);
    let mut zero = 0;
    for x in 0u64..16 {
        let bits = Parity::from_u64(4, x);
        let penalty = poly.energy(&bits) + offset;
        let (cu, cv) = (x & 0b11, (x >> 2) & 0b11);
        // Independent count of violated constraints.
        let violations = (cu == cv) as u32 + (cu >= 3) as u32 + (cv >= 3) as u32;
        ensure((penalty - violations as f64).abs() < 1e-12, || {
            format!("x={x:04b}: penalty {penalty} vs {violations} violations")
        })?;
        let valid_unequal = cu < 3 && cv < 3 && cu != cv;
        ensure((penalty.abs() < 1e-12) == valid_unequal, || {
            format!("x={x:04b}: penalty {penalty}")
        })?;
        if valid_unequal {
            zero += 1;
        }
    }
    ensure(zero == 6, || format!("{zero} zero-penalty states"))?;
    Ok("zero penalty on exactly the 6 valid unequal pairs".into())
}

fn c11_performance_and_determinism() -> Outcome {
    let poly = gen_random(30, 100, 11).unwrap();
    let mut times = Vec::new();
    for method in Method::ALL {
        let start = Instant::now();
        synthesize_diagonal(&poly, 1.0, SynthOptions::new(method)).unwrap();
        let t = start.elapsed();
        ensure(t < Duration::from_secs(1), || format!("{method} took {t:?}"))?;
        times.push(format!("{method} {:.1}ms", t.as_secs_f64() * 1e3));
    }

    let mut cfg = BenchConfig::new((4..=10).map(|n| Point::Random { n, terms: 50 }).collect());
    cfg.samples = 5;
    cfg.seed = 99;
    cfg.record_timing = false;
    let csv = |exec| {
        let run = bench::run_bench(&cfg, exec).unwrap();
        let mut buf = Vec::new();
        bench::write_csv(&run.records, &mut buf).unwrap();
        buf
    };
    let a = csv(Execution::Parallel);
    let b = csv(Execution::Parallel);
    let c = csv(Execution::Sequential);
    ensure(a == b && a == c, || "CSV bytes differ between runs".into())?;
    Ok(format!("n=30: {}; CSV byte-identical", times.join(", ")))
}

fn main() -> ExitCode {
    let instances = small_instances(500);
    let criteria: Vec<Criterion> = vec![
        ("1 oracle equivalence", Box::new(|| c1_oracle_equivalence(&instances))),
        ("2 round-trip extraction", Box::new(|| c2_round_trip(&instances))),
        ("3 ladder exactness", Box::new(c3_ladder_exactness)),
        ("4 network lower bound", Box::new(|| c4_lower_bound(&instances))),
        ("5 greedy triangularity", Box::new(c5_triangularity)),
        ("6 elimination termination", Box::new(c6_elimination)),
        ("7 random-family trend", Box::new(c7_random_trend)),
        ("8 full order-k trend", Box::new(c8_full_trend)),
        ("9 caveman coloring trend", Box::new(c9_caveman_trend)),
        ("10 coloring ground states", Box::new(c10_coloring_ground_states)),
        (
            "11 performance + determinism",
            Box::new(c11_performance_and_determinism),
        ),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
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
