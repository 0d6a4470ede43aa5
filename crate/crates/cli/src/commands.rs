use std::path::Path;

use hatcheck::bounds::{self, BigBound};
use hatcheck::constructions::{
    block_oracle, circumference_pipeline, closure_oracle, cut_vertex_oracle_exhaustive, exhaustive_oracle,
    forbidden_tree_pipeline, independent_set_oracle, two_at_vertex_oracle, verify_oracle, AdversaryOracle, Trials,
};
use hatcheck::graph::{block_decomposition, circumference, dfs_treedepth_certificate, greedy_proper_coloring, parse_graph};
use hatcheck::rng::SplitMix64;
use hatcheck::solver::{find_defeating_assignment, hat_guessing_number, players_win};
use hatcheck::{
    Color, ColorBudget, ConstructionError, GameError, Graph, GraphError, GuessCount, Guards, RootedTree, Strategy,
    Vertex,
};

use crate::report::{Report, Status};
use crate::{Lemma, Seq};

/// Strategy spaces at most this large are enumerated in full.
const FALLBACK_TRIALS: u64 = 10_000;
const EXHAUSTIVE_LIMIT: u128 = 100_000;

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn list(s: &str) -> Result<Vec<u64>, String> {
    s.split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|_| format!("bad number `{x}` in `{s}`")))
        .collect()
}

fn load(path: &Path, echo: String, seed: Option<u64>) -> Result<(Graph, Report), Report> {
    match std::fs::read(path) {
        Err(e) => {
            let mut r = Report::new(echo, &[], seed);
            r.fail(Status::Input, format!("{}: {e}", path.display()));
            Err(r)
        }
        Ok(bytes) => {
            let mut r = Report::new(echo.clone(), &[echo.as_bytes(), &bytes], seed);
            match parse_graph(&String::from_utf8_lossy(&bytes)) {
                Ok(g) => Ok((g, r)),
                Err(e) => {
                    r.fail(Status::Input, format!("{}: {e}", path.display()));
                    Err(r)
                }
            }
        }
    }
}

fn game_status(e: &GameError) -> Status {
    match e {
        GameError::GuardExceeded { .. } => Status::Guard,
        _ => Status::Input,
    }
}

fn graph_status(e: &GraphError) -> Status {
    match e {
        GraphError::TooLarge { .. } => Status::Guard,
        _ => Status::Input,
    }
}

fn construction_failure(r: &mut Report, e: ConstructionError, guard: u128) {
    match e {
        ConstructionError::PremiseViolation { context, witness } => {
            r.put("premise-violation", &context);
            r.put("witness-budget", witness.budget());
            r.put("witness", witness.to_text().trim_end());
            let verified = match find_defeating_assignment(&witness, witness.budget(), guard) {
                Ok(None) => "players win on every assignment".to_string(),
                Ok(Some(a)) => format!("NOT a players' win: {a} defeats it"),
                Err(e) => format!("unchecked: {e}"),
            };
            r.put("witness-check", verified);
            r.status = Status::Premise;
        }
        ConstructionError::Game(e) => r.fail(game_status(&e), e),
        ConstructionError::Graph(e) => r.fail(graph_status(&e), e),
        e @ ConstructionError::Precondition(_) => r.fail(Status::Input, e),
    }
}

pub fn analyze(echo: String, path: &Path, guards: &Guards) -> Report {
    let (g, mut r) = match load(path, echo, None) {
        Ok(x) => x,
        Err(r) => return r,
    };
    r.put("vertices", g.vertex_count());
    r.put("edges", g.edge_count());
    r.put("connected", g.is_connected());
    let dec = block_decomposition(&g);
    r.put("blocks", dec.blocks.len());
    for (i, b) in dec.blocks.iter().enumerate() {
        let h = g.induced_subgraph(b);
        let cert = dfs_treedepth_certificate(&h, 0).expect("blocks are connected");
        let parents: Vec<String> = (0..b.len())
            .map(|v| cert.tree.parent(v).map_or("-".to_string(), |p| b[p].to_string()))
            .collect();
        r.put(
            "block",
            format!("{i} [{}] dfs-root {} depth {} parents {}", join(b), b[0], cert.depth, parents.join(" ")),
        );
    }
    r.put("cut-vertices", format!("[{}]", join(&dec.cut_vertices)));
    let classes = greedy_proper_coloring(&g).classes;
    r.put(
        "colour-classes",
        classes.iter().map(|c| format!("[{}]", join(c))).collect::<Vec<_>>().join(" "),
    );
    match circumference(&g, guards.cycle_vertices) {
        Ok(c) => r.put("circumference", c),
        Err(e) => r.fail(graph_status(&e), e),
    }
    r
}

fn parse_budget(n: usize, s: &str) -> Result<ColorBudget, String> {
    let qs = list(s)?;
    let qs: Vec<Color> = qs.into_iter().map(|q| Color::try_from(q).map_err(|_| format!("colour count {q} too large"))).collect::<Result<_, _>>()?;
    match qs.as_slice() {
        [q] => Ok(ColorBudget::uniform(n, *q)),
        _ if qs.len() == n => ColorBudget::new(qs).map_err(|e| e.to_string()),
        _ => Err(format!("budget lists {} counts for {n} vertices", qs.len())),
    }
}

pub fn solve(echo: String, path: &Path, guesses: usize, budget: Option<&str>, sweep: bool, guards: &Guards) -> Report {
    let (g, mut r) = match load(path, echo, None) {
        Ok(x) => x,
        Err(r) => return r,
    };
    r.put("guards", guards);
    let Some(gc) = GuessCount::from_count(guesses) else {
        r.fail(Status::Input, "--guesses must be 1 or 2");
        return r;
    };
    if sweep {
        match hat_guessing_number(&g, gc, guards) {
            Ok(s) => {
                r.put(if gc == GuessCount::One { "hg" } else { "hg2" }, s.value);
                for (q, out) in &s.outcomes {
                    r.put("sweep", format!("q={q} winner={} nodes={}", out.winner, out.nodes));
                }
            }
            Err(e) => r.fail(game_status(&e), e),
        }
        return r;
    }
    let Some(b) = budget else {
        r.fail(Status::Input, "give --budget or --sweep");
        return r;
    };
    let budget = match parse_budget(g.vertex_count(), b) {
        Ok(b) => b,
        Err(e) => {
            r.fail(Status::Input, e);
            return r;
        }
    };
    r.put("budget", &budget);
    match players_win(&g, &budget, gc, guards) {
        Ok(out) => {
            r.put("winner", out.winner);
            r.put("nodes", out.nodes);
            r.put("refutations", out.refutations);
            match &out.certificate {
                Some(c) => r.put("certificate", c.to_text().trim_end()),
                None => {
                    let text = out.render();
                    let lines: Vec<&str> = text.lines().skip(1).collect();
                    r.put("transcript", lines.join("\n") + "\n");
                }
            }
        }
        Err(e) => r.fail(game_status(&e), e),
    }
    r
}

pub fn bound(
    echo: String,
    seq: Option<Seq>,
    n: Option<u32>,
    circ: Option<u64>,
    tary: Option<Vec<u64>>,
    lll: Option<u64>,
) -> Report {
    let mut r = Report::new(echo.clone(), &[echo.as_bytes()], None);
    let mut any = false;
    let put = |r: &mut Report, key: &str, v: Result<BigBound, hatcheck::BoundsError>| match v {
        Ok(b) => r.put(key, b.render()),
        Err(e) => r.fail(Status::Input, e),
    };
    if let (Some(seq), Some(n)) = (seq, n) {
        any = true;
        match seq {
            Seq::Sylvester => put(&mut r, "sylvester", bounds::sylvester(n)),
            Seq::A => put(&mut r, "two-guess-term", bounds::two_guess_seq(n)),
        }
    }
    if let Some(c) = circ {
        any = true;
        let d = bounds::circumference_depth(c);
        r.put("depth", d);
        put(&mut r, "circ-bound", bounds::circ_bound(c));
        if c >= 3 && d <= bounds::MAX_INDEX as u64 {
            put(&mut r, "two-guess-term", bounds::two_guess_seq(d as u32));
        }
    }
    if let Some(ht) = tary {
        any = true;
        let (h, t) = (ht[0] as u32, ht[1]);
        match bounds::tree_degree_threshold(h, t) {
            Some(k) => r.put("degree-threshold", k),
            None => r.put("degree-threshold", "overflow"),
        }
        let rec = bounds::n_h_t_recursive(h, t);
        let closed = bounds::n_h_t_closed(h, t);
        if let (Ok(a), Ok(b)) = (&rec, &closed) {
            r.put("recursive-le-closed", a.certainly_le(b));
        }
        put(&mut r, "recursive", rec);
        put(&mut r, "closed", closed);
    }
    if let Some(t) = lll {
        any = true;
        r.put("lll", format!("{:.10}", bounds::lll_degree_bound(t)));
        match bounds::lll_degree_bound_ceil(t) {
            Ok(c) => r.put("lll-ceil", c),
            Err(e) => r.fail(Status::Input, e),
        }
    }
    if !any {
        r.fail(Status::Input, "give one of --seq with --n, --circ, --tary, --lll");
    }
    r
}

pub struct VerifyOptions {
    pub lemma: Lemma,
    pub trials: String,
    pub seed: u64,
    pub ell: Option<u32>,
    pub vertex: Option<usize>,
    pub set: Option<String>,
    pub colors: Option<String>,
    pub root: usize,
    pub t: Option<u64>,
    pub h: Option<u32>,
}

fn vertices(s: &str, n: usize) -> Result<Vec<Vertex>, ConstructionError> {
    let xs = list(s).map_err(ConstructionError::Precondition)?;
    xs.into_iter()
        .map(|x| {
            usize::try_from(x)
                .ok()
                .filter(|&v| v < n)
                .ok_or_else(|| ConstructionError::Precondition(format!("vertex {x} out of range")))
        })
        .collect()
}

fn build(g: &Graph, o: &VerifyOptions, guards: &Guards, r: &mut Report) -> Result<AdversaryOracle, ConstructionError> {
    let n = g.vertex_count();
    let pick_vertex = |v: Option<usize>| match v {
        Some(v) if v >= n => Err(ConstructionError::Precondition(format!("vertex {v} out of range"))),
        Some(v) => Ok(v),
        None if n > 0 => Ok(0),
        None => Err(ConstructionError::Precondition("the graph has no vertices".into())),
    };
    Ok(match o.lemma {
        Lemma::Is => {
            let set = match &o.set {
                Some(s) => vertices(s, n)?,
                None => greedy_proper_coloring(g).classes.last().cloned().unwrap_or_default(),
            };
            let r_deg = set.iter().map(|&u| g.degree(u)).max().unwrap_or(0).max(1) as u32;
            let (rest, _) = g.without(&set);
            let ell = o.ell.unwrap_or(rest.vertex_count() as u32 + 1).max(2);
            r.put("set", format!("[{}]", join(&set)));
            r.put("degree-bound", r_deg);
            r.put("ell", ell);
            let sub = exhaustive_oracle(&rest, ColorBudget::uniform(rest.vertex_count(), ell), GuessCount::One, guards)?;
            independent_set_oracle(g, &set, r_deg, ell, sub)?
        }
        Lemma::Two => {
            let v = pick_vertex(o.vertex)?;
            let colors = match &o.colors {
                Some(s) => match list(s).map_err(ConstructionError::Precondition)?.as_slice() {
                    [a, b] => (*a as Color, *b as Color),
                    _ => return Err(ConstructionError::Precondition("--colors takes two colours".into())),
                },
                None => (0, 1),
            };
            let (rest, _) = g.without(&[v]);
            let ell = o.ell.unwrap_or(2 * rest.vertex_count() as u32).max(2);
            r.put("vertex", v);
            r.put("ell", ell);
            let sub = exhaustive_oracle(&rest, ColorBudget::uniform(rest.vertex_count(), ell + 1), GuessCount::Two, guards)?;
            two_at_vertex_oracle(g, v, colors, ell, sub)?
        }
        Lemma::Rus => {
            let dec = block_decomposition(g);
            let (v, side1, side2) = match &o.set {
                Some(s) => {
                    let v = pick_vertex(o.vertex)?;
                    let side1 = vertices(s, n)?;
                    let side2: Vec<Vertex> = g.vertices().filter(|&u| u == v || !side1.contains(&u)).collect();
                    (v, side1, side2)
                }
                None => match dec.terminal_blocks().into_iter().find(|&(_, c)| o.vertex.is_none_or(|v| v == c)) {
                    Some((b, v)) => {
                        let side2 = dec.blocks[b].clone();
                        let side1 = g.vertices().filter(|&u| u == v || !side2.contains(&u)).collect();
                        (v, side1, side2)
                    }
                    None => {
                        let v = pick_vertex(o.vertex)?;
                        (v, g.vertices().collect(), vec![v])
                    }
                },
            };
            let ell = o.ell.unwrap_or((side1.len() as u32).max(2 * (side2.len() as u32 - 1)).max(1));
            r.put("vertex", v);
            r.put("side1", format!("[{}]", join(&side1)));
            r.put("side2", format!("[{}]", join(&side2)));
            r.put("ell", ell);
            cut_vertex_oracle_exhaustive(g, v, &side1, &side2, ell, guards)?
        }
        Lemma::Blocks => {
            let largest = block_decomposition(g).blocks.iter().map(Vec::len).max().unwrap_or(1) as u32;
            let ell = o.ell.unwrap_or(2 * largest);
            r.put("ell", ell);
            block_oracle(g, ell, guards)?
        }
        Lemma::Closure => {
            let root = pick_vertex(Some(o.root))?;
            let tree = RootedTree::from_graph(g, root)?;
            r.put("root", root);
            r.put("tree-height", tree.height());
            closure_oracle(&tree)?
        }
        Lemma::Circ => {
            let p = circumference_pipeline(g, o.ell, guards)?;
            r.put("circumference", p.circumference);
            r.put("depth", p.depth);
            r.put("bound", p.bound.render());
            r.put("ell", p.ell);
            p.oracle
        }
        Lemma::Tary => {
            let (Some(t), Some(h)) = (o.t, o.h) else {
                return Err(ConstructionError::Precondition("--lemma tary needs --t and --h".into()));
            };
            let p = forbidden_tree_pipeline(g, t, h, guards)?;
            r.put("bound", p.bound.render());
            p.oracle
        }
    })
}

pub fn verify(echo: String, path: &Path, o: &VerifyOptions, guards: &Guards) -> Report {
    let (g, mut r) = match load(path, echo, Some(o.seed)) {
        Ok(x) => x,
        Err(r) => return r,
    };
    r.put("guards", guards);
    let trials = match o.trials.as_str() {
        "exhaustive" => Trials::Auto { limit: EXHAUSTIVE_LIMIT, count: FALLBACK_TRIALS, seed: o.seed },
        "auto" => Trials::Auto { limit: EXHAUSTIVE_LIMIT, count: 1000, seed: o.seed },
        k => match k.parse() {
            Ok(count) => Trials::Random { count, seed: o.seed },
            Err(_) => {
                r.fail(Status::Input, format!("--trials takes a count, `exhaustive` or `auto`, not `{k}`"));
                return r;
            }
        },
    };
    let oracle = match build(&g, o, guards, &mut r) {
        Ok(x) => x,
        Err(e) => {
            construction_failure(&mut r, e, guards.enumeration);
            return r;
        }
    };
    r.put("budget", oracle.budget());
    r.put("guesses", oracle.guess_count());
    r.put("oracle", oracle.describe());
    let first = Strategy::random(oracle.graph(), oracle.budget(), oracle.guess_count(), &mut SplitMix64::new(o.seed));
    match first.map_err(ConstructionError::from).and_then(|s| oracle.defeat_traced(&s)) {
        Ok((a, lines)) => {
            r.put("sample-assignment", a);
            r.put("sample-trace", lines.join("\n") + "\n");
        }
        Err(e) => {
            construction_failure(&mut r, e, guards.enumeration);
            return r;
        }
    }
    match verify_oracle(&oracle, trials) {
        Ok(t) => {
            let mode = match (t.exhaustive, o.trials.as_str()) {
                (true, _) => "exhaustive".to_string(),
                (false, "exhaustive") => format!("random (strategy space exceeds {EXHAUSTIVE_LIMIT})"),
                (false, _) => "random".to_string(),
            };
            r.put("mode", mode);
            r.put("defeated", format!("{}/{}", t.defeated, t.checked));
            if let Some((s, why)) = t.failure {
                r.put("counterexample", s.to_text().trim_end());
                r.fail(Status::VerifyFailed, why);
            }
        }
        Err(e) => construction_failure(&mut r, e, guards.enumeration),
    }
    r
}
