//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the lines always reach the output; exits non-zero if any
//! criterion fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hatcheck::bounds::{
    circ_bound, growth_root, lll_degree_bound_ceil, n_h_t_closed, n_h_t_recursive, sylvester, theta_estimate,
    two_guess_exact, two_guess_seq, two_guess_within_theta, BigBound,
};
use hatcheck::constructions::{
    block_oracle, closure_oracle, cut_vertex_oracle_exhaustive, exhaustive_oracle, independent_set_oracle,
    two_at_vertex_oracle, AdversaryOracle, circumference_bound,
};
use hatcheck::game::StrategySpace;
use hatcheck::graph::{circumference, contains_tary_tree};
use hatcheck::reference::naive_players_win;
use hatcheck::rng::SplitMix64;
use hatcheck::solver::{hg2_exact, hg_exact, players_win, Winner};
use hatcheck::{ColorBudget, ConstructionError, GameError, GuessCount, Graph, Guards, RootedTree, Strategy};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

const EXHAUSTIVE_LIMIT: u128 = 100_000;
const RANDOM_TRIALS: u64 = 1_000;
const THETA: f64 = 2.5533;
const THETA_TOLERANCE: f64 = 5e-5;
const THETA_CEILING: f64 = 2.56;
const DETERMINISM_RUNS: usize = 3;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "exact classical values", limit: Duration::from_secs(60), run: classical_values },
        Criterion { id: 2, name: "solver agrees with naive enumerator", limit: Duration::from_secs(600), run: cross_oracle },
        Criterion { id: 3, name: "sequence fidelity", limit: Duration::from_secs(1), run: sequences },
        Criterion { id: 4, name: "growth constant at desk scale", limit: Duration::from_secs(5), run: theta },
        Criterion { id: 5, name: "circumference bound arithmetic", limit: Duration::from_secs(1), run: circ_arithmetic },
        Criterion { id: 6, name: "constructive defeat suites", limit: Duration::from_secs(1800), run: defeat_suites },
        Criterion { id: 7, name: "closure oracle on rooted trees", limit: Duration::from_secs(600), run: closure_trees },
        Criterion { id: 8, name: "exact values under constructed bounds", limit: Duration::from_secs(1800), run: bound_sweep },
        Criterion { id: 9, name: "recursive vs closed tree bound", limit: Duration::from_secs(1), run: tree_bounds },
        Criterion { id: 10, name: "deterministic verify reports", limit: Duration::from_secs(600), run: determinism },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.limit => Err(format!("{detail}; took {elapsed:.2?}, limit {:?}", c.limit)),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {}: {detail} ({elapsed:.2?})", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {}: {why} ({elapsed:.2?})", c.id, c.name);
            }
        }
    }
    println!("acceptance: {}/{} passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Connected graphs on `n` vertices, one per isomorphism class.
fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::from_edges(n, &edges).expect("valid edges");
        if !g.is_connected() {
            continue;
        }
        let canonical = perms
            .iter()
            .map(|p| {
                let mut e: Vec<_> = edges.iter().map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v]))).collect();
                e.sort_unstable();
                e
            })
            .min()
            .expect("at least one permutation");
        if seen.insert(canonical) {
            out.push(g);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn edges_of(g: &Graph) -> String {
    let e: Vec<String> = g.edges().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("n={} [{}]", g.vertex_count(), e.join(" "))
}

fn classical_values() -> Outcome {
    let guards = Guards::default();
    for n in 1..=3 {
        let hg = hg_exact(&Graph::complete(n), &guards).map_err(e2s)?;
        check(hg as usize == n, || format!("hg(K{n}) = {hg}, expected {n}"))?;
    }
    Ok("hg(K1)=1 hg(K2)=2 hg(K3)=3".into())
}

fn cross_oracle() -> Outcome {
    let guards = Guards::default();
    let mut cases = 0;
    for n in 1..=3 {
        for g in connected_graphs(n) {
            for q in 1..=3 {
                for gc in [GuessCount::One, GuessCount::Two] {
                    let budget = ColorBudget::uniform(n, q);
                    let fast = players_win(&g, &budget, gc, &guards).map_err(e2s)?.winner == Winner::Players;
                    let naive = naive_players_win(&g, &budget, gc);
                    check(fast == naive, || format!("{} q={q} {gc}: solver {fast}, naive {naive}", edges_of(&g)))?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases}/{cases} cases agree"))
}

fn sequences() -> Outcome {
    let s: Vec<u64> = (0..=5).map(|n| sylvester(n).ok().and_then(|b| b.as_integer()).map(|v| v.try_into().unwrap_or(0))).collect::<Option<_>>().ok_or("sylvester failed")?;
    check(s == [1, 2, 3, 7, 43, 1807], || format!("sylvester(0..5) = {s:?}"))?;
    let a: Vec<u64> = (0..=4).map(|n| two_guess_seq(n).ok().and_then(|b| b.as_integer()).map(|v| v.try_into().unwrap_or(0))).collect::<Option<_>>().ok_or("two_guess_seq failed")?;
    check(a == [1, 3, 7, 43, 1807], || format!("two_guess_seq(0..4) = {a:?}"))?;
    check(a[1] == 3, || "a_1 != 3".into())?;
    Ok(format!("s = {s:?}, a = {a:?}"))
}

fn theta() -> Outcome {
    let t = theta_estimate(128).map_err(e2s)?;
    let f = t.to_f64();
    check(f.lo <= THETA + THETA_TOLERANCE && f.hi >= THETA - THETA_TOLERANCE, || {
        format!("[{}, {}] misses {THETA} ± {THETA_TOLERANCE}", f.lo, f.hi)
    })?;
    check(f.hi <= THETA_CEILING, || format!("upper endpoint {} above {THETA_CEILING}", f.hi))?;
    // Direct integer comparison 2 a_n q^E ≤ 2 p^E + q^E with θ_hi = p/q, E = 2^(n−1).
    let (p, q) = (t.hi.numer().clone(), t.hi.denom().clone());
    const DIRECT: u32 = 12;
    for n in 1..=DIRECT {
        let a = BigInt::from(two_guess_exact(n).ok_or("a_n overflow")?);
        let e = 1u32 << (n - 1);
        let (pe, qe) = (p.pow(e), q.pow(e));
        check(BigInt::from(2) * a * &qe <= BigInt::from(2) * pe + qe, || format!("a_{n} exceeds theta_hi^(2^{})+1/2", n - 1))?;
    }
    // Beyond that the E-th powers grow past a million bits; compare the
    // enclosure of (a_n − 1/2)^(1/E) with θ_hi instead.
    for n in DIRECT + 1..=20 {
        check(two_guess_within_theta(n, &t.hi).map_err(e2s)?, || format!("a_{n} exceeds theta_hi^(2^{})+1/2", n - 1))?;
    }
    let b20 = growth_root(20, 256).map_err(e2s)?;
    check(b20.hi <= t.hi, || "growth root 20 above theta_hi".into())?;
    Ok(format!("theta in [{:.7}, {:.7}], a_n bound holds for n=1..20", f.lo, f.hi))
}

fn circ_arithmetic() -> Outcome {
    let b = circ_bound(3).map_err(e2s)?;
    let exact = b.as_exact().ok_or("circ_bound(3) is not exact")?.clone();
    let expected = BigRational::new(BigInt::from(64u32).pow(8), BigInt::from(25u32).pow(8))
        + BigRational::new(BigInt::from(1), BigInt::from(2));
    check(exact == expected, || format!("circ_bound(3) = {exact}, expected {expected}"))?;
    let a4 = BigRational::from_integer(BigInt::from(two_guess_exact(4).ok_or("a_4")?));
    check(exact >= a4, || format!("{exact} < a_4"))?;
    Ok(format!("circ_bound(3) = {exact} >= a_4 = {a4}"))
}

/// Exhaustive when the space is at most 10^5, then 10^3 seeded random
/// strategies either way. Returns the number of strategies checked.
fn run_suite(label: &str, oracle: &AdversaryOracle, seed: u64) -> Result<u64, String> {
    let mut checked = 0;
    let mut judge = |s: &Strategy| -> Result<(), String> {
        checked += 1;
        let a = oracle.defeat(s).map_err(|e| format!("{label}: {e}"))?;
        check(a.is_within(oracle.budget()), || format!("{label}: {a} outside {}", oracle.budget()))?;
        check(s.is_defeating(&a), || format!("{label}: {a} does not defeat\n{}", s.to_text()))
    };
    let space = StrategySpace::new(oracle.graph(), oracle.budget(), oracle.guess_count()).map_err(e2s)?;
    if space.size().is_some_and(|s| s <= EXHAUSTIVE_LIMIT) {
        for s in space.iter() {
            judge(&s)?;
        }
    }
    let mut rng = SplitMix64::new(seed);
    for _ in 0..RANDOM_TRIALS {
        let s = Strategy::random(oracle.graph(), oracle.budget(), oracle.guess_count(), &mut rng).map_err(e2s)?;
        judge(&s)?;
    }
    Ok(checked)
}

fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).expect("valid example graph")
}

fn defeat_suites() -> Outcome {
    let guards = Guards::default();
    let k1 = Graph::complete(1);
    let k2 = Graph::complete(2);
    let k3 = Graph::complete(3);
    let p3 = Graph::path(3);
    let star = graph(3, &[(0, 1), (0, 2)]);
    let bowtie = graph(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]);
    let cactus = graph(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]);
    let hg2_k1 = hg2_exact(&k1, &guards).map_err(e2s)?;
    let hg2_k2 = hg2_exact(&k2, &guards).map_err(e2s)?;
    let hg2_k3 = hg2_exact(&k3, &guards).map_err(e2s)?;
    let hg_k3 = hg_exact(&k3, &guards).map_err(e2s)?;
    let one = |n, q| exhaustive_oracle(&Graph::empty(n), ColorBudget::uniform(n, q), GuessCount::One, &guards);
    let two = |g: &Graph, q| exhaustive_oracle(g, ColorBudget::uniform(g.vertex_count(), q), GuessCount::Two, &guards);

    let mut suites: Vec<(String, Result<AdversaryOracle, ConstructionError>)> = vec![
        ("is: star, leaves, r=1, l=2".into(), one(1, 2).and_then(|s| independent_set_oracle(&star, &[1, 2], 1, 2, s))),
        ("is: P3, {0,2}, r=1, l=3".into(), one(1, 3).and_then(|s| independent_set_oracle(&p3, &[0, 2], 1, 3, s))),
        ("is: P3, empty set, l=3".into(), exhaustive_oracle(&p3, ColorBudget::uniform(3, 4), GuessCount::One, &guards)
            .and_then(|s| independent_set_oracle(&p3, &[], 1, 4, s))),
        (format!("two: K2, v=0, (0,1), l={hg2_k1}"), two(&k1, hg2_k1 + 1).and_then(|s| two_at_vertex_oracle(&k2, 0, (0, 1), hg2_k1, s))),
        ("two: isolated v, l=2".into(), two(&k1, 3).and_then(|s| two_at_vertex_oracle(&Graph::empty(2), 0, (0, 1), 2, s))),
        (format!("two: P3, v=0, l={hg2_k2}"), two(&k2, hg2_k2 + 1).and_then(|s| two_at_vertex_oracle(&p3, 0, (0, 1), hg2_k2, s))),
        (format!("rus: bowtie, v=2, l={}", hg_k3.max(hg2_k3)), cut_vertex_oracle_exhaustive(&bowtie, 2, &[0, 1, 2], &[2, 3, 4], hg_k3.max(hg2_k3), &guards)),
        (format!("rus: P3, v=1, l={}", hg2_k2.max(2)), cut_vertex_oracle_exhaustive(&p3, 1, &[0, 1], &[1, 2], hg2_k2.max(2), &guards)),
        (format!("blocks: K3, l={hg2_k3}"), block_oracle(&k3, hg2_k3, &guards)),
        (format!("blocks: P4, l={hg2_k2}"), block_oracle(&Graph::path(4), hg2_k2, &guards)),
        (format!("blocks: cactus, l={hg2_k3}"), block_oracle(&cactus, hg2_k3, &guards)),
    ];
    for parents in [vec![None], vec![None, Some(0)], vec![None, Some(0), Some(0)]] {
        let label = format!("closure: parents {parents:?}");
        suites.push((label, RootedTree::from_parents(parents).map_err(Into::into).and_then(|t| closure_oracle(&t))));
    }
    let mut total = 0;
    for (i, (label, oracle)) in suites.iter().enumerate() {
        let oracle = oracle.as_ref().map_err(|e| format!("{label}: {e}"))?;
        total += run_suite(label, oracle, i as u64)?;
    }
    Ok(format!("{} suites, {total} strategies defeated within budget", suites.len()))
}

fn closure_trees() -> Outcome {
    let mut trees = 0;
    let mut total = 0;
    for n in 1..=3usize {
        for code in 0..(n + 1).pow(n as u32) {
            let parents: Vec<Option<usize>> = (0..n)
                .map(|v| match code / (n + 1).pow(v as u32) % (n + 1) {
                    0 => None,
                    p => Some(p - 1),
                })
                .collect();
            let Ok(tree) = RootedTree::from_parents(parents.clone()) else { continue };
            trees += 1;
            let oracle = closure_oracle(&tree).map_err(|e| format!("{parents:?}: {e}"))?;
            let expected: Vec<u64> = (0..n).map(|v| two_guess_exact(tree.height_of(v) as u32 + 1).and_then(|a| a.try_into().ok()).unwrap_or(0)).collect();
            let got: Vec<u64> = oracle.budget().as_slice().iter().map(|&c| c as u64).collect();
            check(got == expected, || format!("{parents:?}: budget {got:?}, expected {expected:?}"))?;
            check(oracle.guess_count() == GuessCount::Two, || "closure oracle is not two-guess".into())?;
            total += run_suite(&format!("tree {parents:?}"), &oracle, code as u64)?;
        }
    }
    Ok(format!("{trees} labelled rooted trees, {total} strategies defeated"))
}

fn bound_sweep() -> Outcome {
    let guards = Guards::default();
    let mut graphs = 0;
    let mut comparisons = 0;
    let mut skipped = 0;
    for n in 1..=4 {
        for g in connected_graphs(n) {
            let hg = match hg_exact(&g, &guards) {
                Ok(v) => v,
                Err(GameError::GuardExceeded { .. }) => {
                    skipped += 1;
                    continue;
                }
                Err(e) => return Err(format!("{}: {e}", edges_of(&g))),
            };
            graphs += 1;
            let value = BigBound::integer(BigUint::from(hg));
            let mut applicable: Vec<(String, BigBound)> = Vec::new();
            let c = circumference(&g, guards.cycle_vertices).map_err(e2s)?;
            let (_, d, assembled) = circumference_bound(&g, &guards).map_err(e2s)?;
            applicable.push((format!("a_{d} for circumference {c}"), assembled));
            if c >= 3 {
                applicable.push((format!("circ_bound({c})"), circ_bound(c as u64).map_err(e2s)?));
            }
            for t in 2..=4usize {
                if g.max_degree() < t {
                    applicable.push((format!("ceil(e*{t})"), BigBound::integer(lll_degree_bound_ceil(t as u64).map_err(e2s)?)));
                }
                for h in 1..=2usize {
                    if contains_tary_tree(&g, t, h, guards.tree_vertices).map_err(e2s)?.is_none() {
                        applicable.push((format!("N({h},{t}) recursive"), n_h_t_recursive(h as u32, t as u64).map_err(e2s)?));
                        applicable.push((format!("N({h},{t}) closed"), n_h_t_closed(h as u32, t as u64).map_err(e2s)?));
                    }
                }
            }
            for (name, bound) in applicable {
                comparisons += 1;
                check(value.certainly_le(&bound), || format!("{}: hg {hg} above {name} = {}", edges_of(&g), bound.render()))?;
            }
        }
    }
    Ok(format!("{graphs} graphs ({skipped} over guards), {comparisons} comparisons, 0 violations"))
}

fn tree_bounds() -> Outcome {
    let r = n_h_t_recursive(2, 2).map_err(e2s)?;
    let c = n_h_t_closed(2, 2).map_err(e2s)?;
    check(r.certainly_le(&c), || format!("recursive {} not below closed {}", r.render(), c.render()))?;
    Ok(format!("N(2,2): recursive {} <= closed {}", r.render(), c.render()))
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("hatcheck-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(e2s)?;
    let file = dir.join("bowtie.txt");
    std::fs::write(&file, "5 6\n0 1\n0 2\n1 2\n2 3\n2 4\n3 4\n").map_err(e2s)?;
    let mut reports = Vec::new();
    for _ in 0..DETERMINISM_RUNS {
        let out = Command::new(env!("CARGO_BIN_EXE_hatcheck"))
            .args(["verify", file.to_str().ok_or("temp path")?, "--lemma", "blocks", "--trials", "1000", "--seed", "7"])
            .env_remove("HATCHECK_GUARDS")
            .output()
            .map_err(e2s)?;
        check(out.status.success(), || format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stdout)))?;
        let text = String::from_utf8(out.stdout).map_err(e2s)?;
        check(text.contains("defeated: 1000/1000"), || "bowtie blocks did not defeat 1000/1000".into())?;
        let stable: Vec<&str> = text.lines().filter(|l| !l.starts_with("wall-time-ms:")).collect();
        reports.push(stable.join("\n"));
    }
    let _ = std::fs::remove_dir_all(&dir);
    check(reports.windows(2).all(|w| w[0] == w[1]), || "reports differ between runs".into())?;
    Ok(format!("{DETERMINISM_RUNS} runs byte-identical excluding wall time ({} bytes)", reports[0].len()))
}
