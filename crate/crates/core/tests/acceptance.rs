//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any criterion fails.
//!
//! `cargo test -p permrun-core --test acceptance`

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use permrun::bench::{run_bench, BenchConfig};
use permrun::matching::{find_embedding_with, BoundReport, MatchOptions, MatchingFunction, PpmInstance, TABLE_GROWTH};
use permrun::{
    brute_force_match, build_pattern_graph, clique_to_embedding, d_rep, dp_trace, flatten, has_clique, is_embedding,
    lemma_decomposition, lis_length, reduce_clique, u_rep, validate_decomposition, Graph, Permutation,
    RunDecomposition,
};

// Tolerances and limits. Table sizes and counts are compared against real
// valued bounds with an absolute slack of FLOAT_SLACK; everything else is exact.
const FLOAT_SLACK: f64 = 1e-9;
const SQRT2: f64 = std::f64::consts::SQRT_2;
const LIMIT_GOLDEN: Duration = Duration::from_secs(1);
const LIMIT_REPS: Duration = Duration::from_secs(1);
const LIMIT_EXHAUSTIVE: Duration = Duration::from_secs(5 * 60);
const LIMIT_RANDOM: Duration = Duration::from_secs(10 * 60);
const LIMIT_LIS: Duration = Duration::from_secs(5 * 60);
const LIMIT_PATHWIDTH: Duration = Duration::from_secs(10 * 60);
const LIMIT_HARDNESS: Duration = Duration::from_secs(15 * 60);

const RANDOM_INSTANCES: usize = 10_000;
const RANDOM_SEED: u64 = 0x5eed_0004;
const LIS_INSTANCES: usize = 10_000;
const LIS_SEED: u64 = 0x5eed_0006;
const BENCH_SEED: u64 = 0x5eed_0010;

const T_EX: [usize; 12] = [1, 8, 12, 4, 7, 11, 6, 3, 2, 9, 5, 10];

fn perm(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

fn all_perms(n: usize) -> Vec<Permutation> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for m in 1..=n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..m).map(move |i| {
                    let mut q = p.clone();
                    q.insert(i, m);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(|v| Permutation::new(v).unwrap()).collect()
}

fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut v: Vec<usize> = (1..=n).collect();
    v.shuffle(rng);
    Permutation::new(v).unwrap()
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let v = f();
    let took = start.elapsed();
    let in_time = took <= limit;
    Verdict {
        pass: v.pass && in_time,
        detail: format!("{}; {:.2}s (limit {}s)", v.detail, took.as_secs_f64(), limit.as_secs()),
    }
}

// Instance sets shared by criteria 3, 4 and 5.

fn exhaustive_instances() -> Vec<(Permutation, Permutation)> {
    let patterns: Vec<Permutation> = (1..=4).flat_map(all_perms).collect();
    let texts: Vec<Permutation> = (4..=7).flat_map(all_perms).collect();
    patterns
        .iter()
        .flat_map(|p| texts.iter().map(move |t| (p.clone(), t.clone())))
        .collect()
}

fn random_instances() -> Vec<(Permutation, Permutation)> {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    (0..RANDOM_INSTANCES)
        .map(|_| {
            let n = rng.gen_range(1..=12);
            let k = rng.gen_range(1..=n.min(6));
            let text = random_perm(n, &mut rng);
            (random_perm(k, &mut rng), text)
        })
        .collect()
}

#[derive(Default)]
struct Agreement {
    total: usize,
    matched: usize,
    disagree: Vec<String>,
    bad_witness: usize,
}

fn agreement(instances: &[(Permutation, Permutation)]) -> Agreement {
    // Unpruned and sequential, so nothing the table machinery does is hidden.
    let opts = MatchOptions {
        parallel: false,
        prune: false,
    };
    instances
        .par_iter()
        .map(|(p, t)| {
            let got = find_embedding_with(p, t, opts).embedding;
            let want = brute_force_match(p, t).unwrap();
            let mut a = Agreement {
                total: 1,
                ..Agreement::default()
            };
            if got.is_some() {
                a.matched = 1;
            }
            if got.is_some() != want.is_some() {
                a.disagree.push(format!("{p} in {t}"));
            }
            if let Some(e) = &got {
                if !is_embedding(p, t, e).unwrap() {
                    a.bad_witness = 1;
                }
            }
            a
        })
        .reduce(Agreement::default, |mut a, b| {
            a.total += b.total;
            a.matched += b.matched;
            a.disagree.extend(b.disagree);
            a.bad_witness += b.bad_witness;
            a
        })
}

fn agreement_verdict(a: Agreement) -> Verdict {
    let pass = a.disagree.is_empty() && a.bad_witness == 0;
    let mut detail = format!(
        "{} instances, {} matches, {} disagreements, {} invalid witnesses",
        a.total,
        a.matched,
        a.disagree.len(),
        a.bad_witness
    );
    if let Some(first) = a.disagree.first() {
        detail.push_str(&format!(", first: {first}"));
    }
    verdict(pass, detail)
}

fn criterion_1() -> Verdict {
    timed(LIMIT_GOLDEN, || {
        let f = MatchingFunction::new(vec![0, 3, 4]);
        let table = match dp_trace(&perm(&[2, 3, 1, 4]), &perm(&T_EX), &f) {
            Ok(t) => t,
            Err(e) => return verdict(false, format!("trace failed: {e}")),
        };
        let expected: Vec<BTreeSet<Vec<usize>>> = vec![
            [vec![0, 0, 0]].into(),
            [vec![0, 2, 0]].into(),
            [vec![8, 2, 0], vec![4, 2, 0]].into(),
            [vec![6, 2, 0]].into(),
            [vec![6, 2, 9]].into(),
        ];
        let got: Vec<BTreeSet<Vec<usize>>> = table.levels.iter().map(|l| l.coords().into_iter().collect()).collect();
        verdict(got == expected, format!("X_0..X_4 = {got:?}"))
    })
}

fn criterion_2() -> Verdict {
    timed(LIMIT_REPS, || {
        let d = d_rep(&T_EX, 3, 2).unwrap();
        let u = u_rep(&T_EX, 3, 2).unwrap();
        let d_set: BTreeSet<usize> = d.iter().copied().collect();
        let u_set: BTreeSet<usize> = u.iter().copied().collect();
        let pass = d_set == [4, 6, 8].into() && u_set == [5].into() && d.len() == 3 && u.len() == 1;
        verdict(pass, format!("d_rep = {d:?}, u_rep = {u:?}"))
    })
}

fn criterion_3(instances: &[(Permutation, Permutation)]) -> Verdict {
    timed(LIMIT_EXHAUSTIVE, || {
        let patterns: BTreeSet<Vec<usize>> = instances.iter().map(|(p, _)| p.values().to_vec()).collect();
        let v = agreement_verdict(agreement(instances));
        let pass = v.pass && patterns.len() == 33;
        verdict(pass, format!("{} patterns; {}", patterns.len(), v.detail))
    })
}

fn criterion_4(instances: &[(Permutation, Permutation)]) -> Verdict {
    timed(LIMIT_RANDOM, || {
        let ok_shape = instances.len() >= 10_000 && instances.iter().all(|(p, t)| t.len() <= 12 && p.len() <= 6);
        let v = agreement_verdict(agreement(instances));
        verdict(v.pass && ok_shape, format!("seed {RANDOM_SEED:#x}; {}", v.detail))
    })
}

#[derive(Default)]
struct Bounds {
    tables: usize,
    levels: usize,
    report: BoundReport,
    count_violations: usize,
    worst_ratio: f64,
    first: Option<String>,
}

fn bounds(instances: &[(Permutation, Permutation)]) -> Bounds {
    instances
        .par_iter()
        .filter(|(p, _)| p.len() >= 2)
        .map(|(p, t)| {
            let inst = PpmInstance::new(p.clone(), t.clone());
            let run_t = inst.text_runs().count();
            let mut b = Bounds::default();
            let count = inst.matching_function_count();
            if count as f64 > SQRT2.powi(run_t as i32) + FLOAT_SLACK {
                b.count_violations += 1;
                b.first = Some(format!("{count} matching functions for {p} in {t}"));
            }
            // Every matching function, not only those the matcher reaches.
            for f in inst.matching_functions() {
                let table = inst.context(&f).unwrap().run();
                b.tables += 1;
                b.levels += table.levels.len() - 1;
                let r = table.bound_report();
                if !r.is_clean() && b.first.is_none() {
                    b.first = Some(format!("{r:?} for {p} in {t}, F = {f}"));
                }
                b.report.add(r);
                b.worst_ratio = b
                    .worst_ratio
                    .max(table.max_size() as f64 / TABLE_GROWTH.powi(run_t as i32));
            }
            b
        })
        .reduce(Bounds::default, |mut a, b| {
            a.tables += b.tables;
            a.levels += b.levels;
            a.report.add(b.report);
            a.count_violations += b.count_violations;
            a.worst_ratio = a.worst_ratio.max(b.worst_ratio);
            a.first = a.first.or(b.first);
            a
        })
}

fn criterion_5(exhaustive: &[(Permutation, Permutation)], random: &[(Permutation, Permutation)]) -> Verdict {
    timed(LIMIT_EXHAUSTIVE + LIMIT_RANDOM, || {
        let mut b = bounds(exhaustive);
        let r = bounds(random);
        b.tables += r.tables;
        b.levels += r.levels;
        b.report.add(r.report);
        b.count_violations += r.count_violations;
        b.worst_ratio = b.worst_ratio.max(r.worst_ratio);
        b.first = b.first.or(r.first);
        let pass = b.report.is_clean() && b.count_violations == 0;
        let mut detail = format!(
            "{} tables, {} levels; product {} / exponential {} / vale {} / count {} violations; worst |X|/1.2611^run(T) = {:.3}",
            b.tables,
            b.levels,
            b.report.product,
            b.report.exponential,
            b.report.vale,
            b.count_violations,
            b.worst_ratio
        );
        if let Some(first) = b.first {
            detail.push_str(&format!(", first: {first}"));
        }
        verdict(pass, detail)
    })
}

fn criterion_6() -> Verdict {
    timed(LIMIT_LIS, || {
        let mut rng = ChaCha8Rng::seed_from_u64(LIS_SEED);
        let cases: Vec<(usize, Permutation)> = (0..LIS_INSTANCES)
            .map(|_| {
                let n = rng.gen_range(1..=20);
                let k = rng.gen_range(1..=6);
                (k, random_perm(n, &mut rng))
            })
            .collect();
        let bad: Vec<String> = cases
            .par_iter()
            .filter_map(|(k, t)| {
                let found = find_embedding_with(&Permutation::identity(*k), t, MatchOptions::default()).embedding;
                let want = lis_length(t) >= *k;
                (found.is_some() != want).then(|| format!("k={k} in {t}"))
            })
            .collect();
        let mut detail = format!("seed {LIS_SEED:#x}; {} texts, {} disagreements", cases.len(), bad.len());
        if let Some(first) = bad.first() {
            detail.push_str(&format!(", first: {first}"));
        }
        verdict(bad.is_empty(), detail)
    })
}

fn criterion_7() -> Verdict {
    timed(LIMIT_PATHWIDTH, || {
        let sample = perm(&[2, 5, 9, 7, 4, 6, 8, 3, 1]);
        let d = lemma_decomposition(&sample);
        let expected: Vec<Vec<usize>> = vec![
            vec![9],
            vec![1, 9],
            vec![1, 8, 9],
            vec![1, 5, 8],
            vec![1, 2, 5, 8],
            vec![2, 5, 6, 8],
            vec![2, 4, 5, 6, 8],
            vec![2, 4, 6, 7, 8],
            vec![2, 3, 4, 7],
        ];
        let (sample_valid, sample_width) = validate_decomposition(&build_pattern_graph(&sample), &d);
        let sample_ok = d.bags == expected && sample_valid && sample_width == 4;

        let perms: Vec<Permutation> = (1..=8).flat_map(all_perms).collect();
        let failures: Vec<String> = perms
            .par_iter()
            .filter_map(|p| {
                let (valid, width) = validate_decomposition(&build_pattern_graph(p), &lemma_decomposition(p));
                let runs = RunDecomposition::new(p).count();
                (!valid || width > runs).then(|| format!("{p}: valid={valid} width={width} runs={runs}"))
            })
            .collect();
        let mut detail = format!(
            "reference bags {}, width {sample_width}; {} permutations, {} failures",
            if d.bags == expected { "exact" } else { "differ" },
            perms.len(),
            failures.len()
        );
        if let Some(first) = failures.first() {
            detail.push_str(&format!(", first: {first}"));
        }
        verdict(sample_ok && failures.is_empty(), detail)
    })
}

fn sample_graph() -> Graph {
    Graph::new(6, [(1, 2), (1, 6), (2, 3), (2, 4), (2, 5), (3, 5), (4, 5), (4, 6)]).unwrap()
}

fn criterion_8() -> Verdict {
    let inst = match reduce_clique(&sample_graph(), 3) {
        Ok(i) => i,
        Err(e) => return verdict(false, format!("reduction failed: {e}")),
    };
    // Drop bracket guards and the trailing guard block, then flatten.
    let guard_positions: BTreeSet<usize> = inst.pattern_guards.iter().copied().collect();
    let body_len = inst.pattern.len() - inst.pattern_guard_block;
    let rest: Vec<usize> = (1..=body_len)
        .filter(|pos| !guard_positions.contains(pos))
        .map(|pos| inst.pattern.at(pos - 1))
        .collect();
    let prefix = flatten(&rest).map(|p| p.into_values()).unwrap_or_default();
    let expected = vec![4, 1, 8, 5, 12, 9, 2, 6, 3, 10, 7, 11];
    let guard_block: Vec<usize> = inst.pattern.values()[body_len..].to_vec();
    let block_is_top = guard_block.iter().all(|&v| rest.iter().all(|&r| r < v));
    let pass = prefix == expected
        && inst.p_max == 94
        && inst.pattern.len() == 94
        && inst.pattern_guard_block == 74
        && block_is_top;
    verdict(
        pass,
        format!(
            "non-guard prefix {prefix:?}, P_max {}, guard block {}",
            inst.p_max, inst.pattern_guard_block
        ),
    )
}

fn criterion_9() -> Verdict {
    timed(LIMIT_HARDNESS, || {
        let opts = MatchOptions {
            parallel: false,
            prune: true,
        };
        let small: Vec<(Graph, usize)> = (1..=4usize)
            .flat_map(|l| (1..=l.min(3)).flat_map(move |k| Graph::all(l).map(move |g| (g, k))))
            .collect();
        let semantic: Vec<String> = small
            .par_iter()
            .filter_map(|(g, k)| {
                let inst = reduce_clique(g, *k).unwrap();
                let found = find_embedding_with(&inst.pattern, &inst.text, opts).embedding;
                let clique = has_clique(g, *k).unwrap();
                let witness_ok = found
                    .as_ref()
                    .is_none_or(|e| is_embedding(&inst.pattern, &inst.text, e).unwrap());
                (found.is_some() != clique.is_some() || !witness_ok).then(|| format!("k={k} {:?}", g.edges()))
            })
            .collect();

        let large: Vec<(Graph, usize)> = (1..=6usize)
            .flat_map(|l| (1..=l.min(4)).flat_map(move |k| Graph::all(l).map(move |g| (g, k))))
            .collect();
        let forward: Vec<Option<String>> = large
            .par_iter()
            .filter_map(|(g, k)| {
                let clique = has_clique(g, *k).unwrap()?;
                let inst = reduce_clique(g, *k).unwrap();
                let ok = clique_to_embedding(&inst, g, &clique)
                    .and_then(|e| is_embedding(&inst.pattern, &inst.text, &e))
                    .unwrap_or(false);
                Some((!ok).then(|| format!("k={k} {:?} clique {clique:?}", g.edges())))
            })
            .collect();
        let forward_bad: Vec<&String> = forward.iter().flatten().collect();

        let mut detail = format!(
            "{} reduced instances (l<=4, k<=3), {} disagreements; {} cliques embedded (l<=6, k<=4), {} failures",
            small.len(),
            semantic.len(),
            forward.len(),
            forward_bad.len()
        );
        if let Some(first) = semantic.first().or(forward_bad.first().copied()) {
            detail.push_str(&format!(", first: {first}"));
        }
        verdict(semantic.is_empty() && forward_bad.is_empty(), detail)
    })
}

fn criterion_10() -> Verdict {
    let config = BenchConfig {
        ns: (4..=24).step_by(2).collect(),
        ks: vec![3, 5, 7, 9, 12],
        instances: 40,
        seed: BENCH_SEED,
        verify: false,
        budget: u128::MAX,
        parallel: false,
    };
    let records = match run_bench(&config) {
        Ok(r) => r,
        Err(e) => return verdict(false, format!("bench failed: {e}")),
    };
    // Growth report: largest table seen for each text run count.
    let mut by_runs = std::collections::BTreeMap::<usize, usize>::new();
    for r in &records {
        let e = by_runs.entry(r.run_t).or_default();
        *e = (*e).max(r.max_x);
    }
    let over: Vec<usize> = by_runs
        .iter()
        .filter(|&(&t, &x)| x as f64 > TABLE_GROWTH.powi(t as i32) + FLOAT_SLACK)
        .map(|(&t, _)| t)
        .collect();
    for (t, x) in &by_runs {
        println!(
            "    run(T)={t:>2}  max|X|={x:>4}  1.2611^run(T)={:>9.2}",
            TABLE_GROWTH.powi(*t as i32)
        );
    }
    let pass = over.is_empty() && records.iter().all(|r| r.within_bound()) && records.iter().any(|r| r.n == 24);
    verdict(
        pass,
        format!(
            "seed {BENCH_SEED:#x}; {} records, n up to 24, {} run counts above the curve",
            records.len(),
            over.len()
        ),
    )
}

fn main() -> ExitCode {
    let exhaustive = exhaustive_instances();
    let random = random_instances();
    let criteria: Vec<Criterion> = vec![
        ("golden DP trace", Box::new(criterion_1)),
        ("representative sets", Box::new(criterion_2)),
        ("oracle equivalence, exhaustive", Box::new(|| criterion_3(&exhaustive))),
        ("oracle equivalence, randomized", Box::new(|| criterion_4(&random))),
        ("table and count bounds", Box::new(|| criterion_5(&exhaustive, &random))),
        ("LIS cross-check", Box::new(criterion_6)),
        ("pathwidth", Box::new(criterion_7)),
        ("hardness structure", Box::new(criterion_8)),
        ("hardness semantics", Box::new(criterion_9)),
        ("table growth bench", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        if !v.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({})",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            name,
            v.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
