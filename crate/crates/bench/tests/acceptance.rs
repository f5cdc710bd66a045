//! Acceptance suite. Prints one `[PASS]`, `[FAIL]` or `[SKIP]` line per
//! criterion and exits non-zero when any hard criterion fails. C11 is a soft
//! statistical check: its verdict is printed but does not set the exit status.
//!
//! `MPM_XLOLIB_DIR` points at a directory holding `t70l11xx_150` for C10.

use std::env;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use mpm_bench::cli::{OutputFormat, SolveArgs, SolverArgs};
use mpm_bench::commands::{cmd_solve, load_instance};
use mpm_core::diversity::{score_population, ScoreWeights};
use mpm_core::engine::{
    recombine_mpc_traced, recombine_with_positions, select_parents, update_pool, PoolStrategy, Population,
};
use mpm_core::oracle::{exact_solve, lcs_distance_dp, naive_best_move, naive_delta};
use mpm_core::search::{delta, local_search_observed, scan_best_move};
use mpm_core::{
    generate_instance, run, GeneratorSpec, Individual, LopInstance, Permutation, SolverConfig, StopCondition,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, &'static str, fn() -> Verdict);

enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn check(ok: bool, detail: String) -> Verdict {
    if ok {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

fn instance(n: usize, seed: u64) -> LopInstance {
    generate_instance(&GeneratorSpec {
        n,
        weight_low: 0,
        weight_high: 100,
        seed,
    })
    .unwrap()
}

fn random_individuals(inst: &LopInstance, count: usize, rng: &mut ChaCha8Rng) -> Vec<Individual> {
    (0..count)
        .map(|_| Individual::new(inst, Permutation::random(inst.n(), rng), 0).unwrap())
        .collect()
}

fn c1_delta() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut mismatches = 0;
    let tuples = 10_000;
    let mut done = 0;
    while done < tuples {
        let n = rng.gen_range(5..=200);
        let inst = generate_instance(&GeneratorSpec {
            n,
            weight_low: -50,
            weight_high: 100,
            seed: rng.gen(),
        })
        .unwrap();
        for _ in 0..50 {
            let perm = Permutation::random(n, &mut rng);
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            if delta(&inst, &perm, i, j).unwrap() != naive_delta(&inst, &perm, i, j).unwrap() {
                mismatches += 1;
            }
            done += 1;
        }
    }
    check(mismatches == 0, format!("{done} tuples, {mismatches} mismatches"))
}

fn c2_scan() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut delta_mismatch = 0;
    let mut move_mismatch = 0;
    for k in 0..100 {
        let inst = instance(30, 2000 + k);
        let perm = Permutation::random(30, &mut rng);
        let fast = scan_best_move(&inst, &perm).unwrap();
        let slow = naive_best_move(&inst, &perm).unwrap();
        if fast.map(|m| m.delta) != slow.map(|m| m.delta) {
            delta_mismatch += 1;
        }
        if fast.map(|m| (m.from, m.to)) != slow.map(|m| (m.from, m.to)) {
            move_mismatch += 1;
        }
    }
    check(
        delta_mismatch == 0 && move_mismatch == 0,
        format!("100 instances n=30, {delta_mismatch} delta mismatches, {move_mismatch} move mismatches"),
    )
}

fn c3_fixed_point() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut not_optimal = 0;
    let mut not_increasing = 0;
    let mut total_moves = 0;
    for _ in 0..200 {
        let n = rng.gen_range(2..=100);
        let inst = generate_instance(&GeneratorSpec {
            n,
            weight_low: 0,
            weight_high: 100,
            seed: rng.gen(),
        })
        .unwrap();
        let start = Permutation::random(n, &mut rng);
        let mut last = mpm_core::evaluate(&inst, &start).unwrap();
        let mut increasing = true;
        let outcome = local_search_observed(&inst, start, None, 0, |mv, value| {
            increasing &= mv.delta > 0 && value == last + mv.delta;
            last = value;
        })
        .unwrap();
        total_moves += outcome.moves;
        let ind = &outcome.individual;
        if naive_best_move(&inst, &ind.perm).unwrap().is_some() || outcome.budget_exhausted {
            not_optimal += 1;
        }
        if !increasing || last != ind.objective || ind.objective != mpm_core::evaluate(&inst, &ind.perm).unwrap() {
            not_increasing += 1;
        }
    }
    check(
        not_optimal == 0 && not_increasing == 0,
        format!(
            "200 descents ({total_moves} moves), {not_optimal} not locally optimal, {not_increasing} bad trajectories"
        ),
    )
}

fn c4_exhaustive() -> Verdict {
    let mut hits = 0;
    for k in 0..50u64 {
        let inst = instance(8, 4000 + k);
        let (optimum, _) = exact_solve(&inst).unwrap();
        let cfg = SolverConfig {
            seed: 40 + k,
            stop: StopCondition::generations(200),
            ..SolverConfig::default()
        };
        let outcome = run(&inst, &cfg).unwrap();
        assert!(
            outcome.best.best.objective <= optimum,
            "heuristic exceeded the exhaustive optimum"
        );
        if outcome.best.best.objective == optimum {
            hits += 1;
        }
    }
    check(hits >= 48, format!("optimum reached in {hits}/50 runs (need >= 48)"))
}

fn c5_lcs() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut bad = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=50);
        let a = Permutation::random(n, &mut rng);
        let b = Permutation::random(n, &mut rng);
        let d = mpm_core::diversity::lcs_distance(&a, &b).unwrap();
        let ok = d == lcs_distance_dp(&a, &b)
            && d == mpm_core::diversity::lcs_distance(&b, &a).unwrap()
            && mpm_core::diversity::lcs_distance(&a, &a).unwrap() == 0
            && d < n.max(1);
        let rev = mpm_core::diversity::lcs_distance(&a, &a.reversed()).unwrap();
        if !ok || rev != n - 1 {
            bad += 1;
        }
    }
    check(bad == 0, format!("1000 pairs n<=50, {bad} violations"))
}

fn c6_pool_laws() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let (mut out_of_range, mut wrong_size, mut ovbs_mismatch) = (0, 0, 0);
    for _ in 0..500 {
        let n = rng.gen_range(5..=40);
        let inst = instance(n, rng.gen());
        let pool = Population::from_members(random_individuals(&inst, 25, &mut rng)).unwrap();
        let offspring = random_individuals(&inst, 10, &mut rng);
        let alpha = rng.gen_range(0.0..=1.0);
        let weights = ScoreWeights::new(alpha).unwrap();

        let mut union = pool.members().to_vec();
        union.extend(offspring.iter().cloned());
        let scores = score_population(&union, weights).unwrap();
        if scores.iter().any(|s| !(0.0..1.0).contains(s)) {
            out_of_range += 1;
        }
        if update_pool(&pool, offspring.clone(), weights, PoolStrategy::ScoreBased).len() != 25 {
            wrong_size += 1;
        }

        let key = |p: &Population| {
            let mut v: Vec<(Vec<usize>, i64)> = p
                .members()
                .iter()
                .map(|m| (m.perm.as_slice().to_vec(), m.objective))
                .collect();
            v.sort();
            v
        };
        let one = ScoreWeights::new(1.0).unwrap();
        let by_score = update_pool(&pool, offspring.clone(), one, PoolStrategy::ScoreBased);
        let by_value = update_pool(&pool, offspring, one, PoolStrategy::Ovbs);
        if key(&by_score) != key(&by_value) {
            ovbs_mismatch += 1;
        }
    }
    check(
        out_of_range + wrong_size + ovbs_mismatch == 0,
        format!(
            "500 pools p=25 c=10, {out_of_range} with scores outside [0,1), {wrong_size} wrong sizes, {ovbs_mismatch} alpha=1/ovbs mismatches"
        ),
    )
}

fn c7_selection() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let (mut violations, mut fallbacks, mut bad_fallbacks) = (0, 0, 0);
    for event in 0..500 {
        let n = rng.gen_range(6..=30);
        let inst = instance(n, rng.gen());
        let mut members = random_individuals(&inst, 25, &mut rng);
        // every fifth pool is mostly clones so that fallbacks actually occur
        if event % 5 == 0 {
            for k in 3..25 {
                members[k] = members[k % 3].clone();
            }
        }
        let pool = Population::from_members(members).unwrap();
        let beta = rng.gen_range(0.6..=0.7);
        let m = rng.gen_range(2..=4);
        let cap = rng.gen_range(1..=20);
        let sel = select_parents(&pool, m, beta, &mut rng, cap);

        let perms: Vec<&Permutation> = pool.members().iter().map(|i| &i.perm).collect();
        let p = perms.len();
        let mut total = 0usize;
        for x in 0..p {
            for y in x + 1..p {
                total += lcs_distance_dp(perms[x], perms[y]);
            }
        }
        let threshold = beta * total as f64 / (p * (p - 1) / 2) as f64;
        let mut distinct = sel.indices.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if sel.indices.len() != m || distinct.len() != m {
            violations += 1;
        }
        if sel.fallback {
            fallbacks += 1;
            if sel.reconstructions != cap {
                bad_fallbacks += 1;
            }
        } else {
            let admissible = sel.indices.iter().enumerate().all(|(a, &x)| {
                sel.indices[a + 1..]
                    .iter()
                    .all(|&y| lcs_distance_dp(perms[x], perms[y]) as f64 >= threshold)
            });
            if !admissible || sel.reconstructions >= cap {
                violations += 1;
            }
        }
    }
    check(
        violations == 0 && bad_fallbacks == 0 && fallbacks > 0 && fallbacks < 500,
        format!("500 events, {fallbacks} fallbacks, {violations} violations, {bad_fallbacks} early fallbacks"),
    )
}

fn c8_recombination() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let mut bad = 0;
    for _ in 0..10_000 {
        let m = rng.gen_range(2..=4);
        let n = rng.gen_range(m..=60);
        let parents: Vec<Permutation> = (0..m).map(|_| Permutation::random(n, &mut rng)).collect();
        let refs: Vec<&Permutation> = parents.iter().collect();
        let (child, sets) = recombine_mpc_traced(&refs, &mut rng).unwrap();
        let valid = Permutation::from_vec(child.as_slice().to_vec()).is_ok();
        let mut used: Vec<usize> = sets.iter().flatten().copied().collect();
        let count = used.len();
        used.sort_unstable();
        used.dedup();
        let sizes = sets.iter().all(|s| s.len() == n / m) && used.len() == count;
        let m2 = m != 2 || (sets.len() == 1 && sets[0].len() == n / 2);
        let clones = vec![&parents[0]; m];
        let same = recombine_mpc_traced(&clones, &mut rng).unwrap().0 == parents[0];
        if !(valid && sizes && m2 && same) {
            bad += 1;
        }
    }
    let s1 = Permutation::from_one_based(&[1, 3, 2, 5, 6, 4]).unwrap();
    let s2 = Permutation::from_one_based(&[4, 1, 5, 2, 3, 6]).unwrap();
    let child = recombine_with_positions(&[&s1, &s2], &[vec![1, 3, 5]]).unwrap();
    let fragment = child.to_one_based() == vec![1, 4, 2, 5, 6, 3];
    check(
        bad == 0 && fragment,
        format!("10000 calls, {bad} invalid; two-parent fragment gives ({child})"),
    )
}

fn solve_once(instance: PathBuf, trace: PathBuf) -> (String, String) {
    let args = SolveArgs {
        instance,
        solver: SolverArgs {
            seed: 77,
            population: 25,
            offspring: 10,
            stagnation: 30,
            parents: 3,
            beta_low: 0.6,
            beta_high: 0.7,
            alpha_low: 0.8,
            alpha_high: 1.0,
            pool_strategy: mpm_bench::cli::PoolStrategyArg::Score,
            max_generations: Some(150),
            time_limit: None,
            retry_cap: 50,
            parallel: false,
        },
        trace: Some(trace.clone()),
        format: OutputFormat::Text,
    };
    let mut out = Vec::new();
    cmd_solve(&args, &mut out).unwrap();
    (String::from_utf8(out).unwrap(), fs::read_to_string(trace).unwrap())
}

fn c9_determinism() -> Verdict {
    let dir = tempfile::TempDir::new().unwrap();
    let path = dir.path().join("det.mat");
    fs::write(&path, mpm_core::instance::instance_to_string(&instance(40, 909))).unwrap();
    let (out_a, trace_a) = solve_once(path.clone(), dir.path().join("a.csv"));
    let (out_b, trace_b) = solve_once(path, dir.path().join("b.csv"));
    let summary = |s: &str| {
        s.lines()
            .filter(|l| !l.starts_with("time_to_best_ms"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let columns = |s: &str| -> Vec<String> {
        s.lines()
            .map(|l| l.rsplit_once(',').map_or(l, |(head, _)| head).to_string())
            .collect()
    };
    let bests: Vec<i64> = trace_a
        .lines()
        .skip(2)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    let monotone = bests.windows(2).all(|w| w[0] <= w[1]);
    check(
        summary(&out_a) == summary(&out_b) && columns(&trace_a) == columns(&trace_b) && monotone && bests.len() == 151,
        format!(
            "summaries equal: {}, traces equal: {}, best column non-decreasing over {} rows: {monotone}",
            summary(&out_a) == summary(&out_b),
            columns(&trace_a) == columns(&trace_b),
            bests.len()
        ),
    )
}

fn c10_paper_band() -> Verdict {
    let mut candidates = Vec::new();
    if let Ok(dir) = env::var("MPM_XLOLIB_DIR") {
        candidates.push(PathBuf::from(dir).join("t70l11xx_150"));
    }
    candidates.push(
        PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("data")
            .join("t70l11xx_150"),
    );
    let Some(path) = candidates.into_iter().find(|p| p.is_file()) else {
        return Verdict::Skip("t70l11xx_150 not found; set MPM_XLOLIB_DIR to run".into());
    };
    let inst = load_instance(&path).unwrap();
    let best = (0..10u64)
        .map(|k| {
            let cfg = SolverConfig {
                seed: 1000 + k,
                stop: StopCondition::generations(400),
                ..SolverConfig::default()
            };
            run(&inst, &cfg).unwrap().best.best.objective
        })
        .max()
        .unwrap();
    check(best >= 436_000, format!("best over 10 runs = {best} (need >= 436000)"))
}

fn c11_ablation() -> Verdict {
    let mut wins = 0;
    let mut lines = Vec::new();
    for k in 0..10u64 {
        let inst = instance(150, 1100 + k);
        let mean = |m: usize| {
            (0..10u64)
                .map(|s| {
                    let cfg = SolverConfig {
                        parent_count: m,
                        seed: mpm_bench::digest::derive_seed(11, inst.name(), s as usize),
                        stop: StopCondition::generations(400),
                        ..SolverConfig::default()
                    };
                    run(&inst, &cfg).unwrap().best.best.objective as f64
                })
                .sum::<f64>()
                / 10.0
        };
        let (m2, m3) = (mean(2), mean(3));
        if m3 >= m2 {
            wins += 1;
        }
        lines.push(format!("{:.1}/{:.1}", m3, m2));
    }
    check(
        wins >= 7,
        format!(
            "m=3 mean >= m=2 mean on {wins}/10 instances (need >= 7); m3/m2: {}",
            lines.join(" ")
        ),
    )
}

fn main() -> ExitCode {
    let filter: Vec<String> = env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let soft = ["C11"];
    let criteria: [Criterion; 11] = [
        ("C1", "delta consistency", c1_delta),
        ("C2", "neighborhood scan equivalence", c2_scan),
        ("C3", "local optimum fixed point", c3_fixed_point),
        ("C4", "exhaustive optimum recovery", c4_exhaustive),
        ("C5", "LCS distance correctness", c5_lcs),
        ("C6", "score and pool laws", c6_pool_laws),
        ("C7", "parent selection contract", c7_selection),
        ("C8", "recombination validity", c8_recombination),
        ("C9", "determinism", c9_determinism),
        ("C10", "t70l11xx_150 quality band", c10_paper_band),
        ("C11", "parent count ablation direction", c11_ablation),
    ];
    let mut failed = 0;
    for (id, name, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|x| x.eq_ignore_ascii_case(id)) {
            continue;
        }
        let start = Instant::now();
        let verdict = f();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match verdict {
            Verdict::Pass(d) => ("PASS", d),
            Verdict::Fail(d) if soft.contains(&id) => ("FAIL", format!("{d}; soft criterion, not counted")),
            Verdict::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Verdict::Skip(d) => ("SKIP", d),
        };
        println!("[{tag}] {id} {name}: {detail} ({secs:.1}s)");
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
