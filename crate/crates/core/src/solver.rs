//! Exact decision of who wins a hat guessing game, and the `HG` / `HG_2`
//! sweeps built on it.
//!
//! The players-win question is a covering problem: one variable per guess
//! table entry, one constraint per hat assignment ("some vertex guesses its
//! own colour"). Each variable keeps a domain of still-allowed guess sets.
//! The search repeatedly
//!
//! 1. drops constraints already covered by a decided variable,
//! 2. fails when a constraint has no variable left that could cover it,
//! 3. forces the only supporting variable of a constraint,
//! 4. fails when the best possible coverage of the remaining variables is
//!    smaller than the number of uncovered assignments, first as a plain
//!    sum and then as a maximum flow from variables (capacity: best
//!    coverage) to the assignments they can still cover (capacity 1),
//!
//! and otherwise picks the least-supported assignment and, among the
//! variable/value pairs that would cover it, the one covering the most open
//! assignments: either the variable takes that value or it never will.

use std::fmt;

use crate::error::GameError;
use crate::game::{
    enumerate_assignments, table_entry_count, Color, ColorBudget, GuessCount, GuessSet,
    HatAssignment, Strategy,
};
use crate::graph::{Graph, Vertex};
use crate::guards::Guards;

mod flow;

/// Lexicographically first assignment within `budget` that defeats
/// `strategy`, or `None` if the strategy wins against every assignment in
/// `budget`. `budget` must fit inside the strategy's own budget.
pub fn find_defeating_assignment(
    strategy: &Strategy,
    budget: &ColorBudget,
    guard: u128,
) -> Result<Option<HatAssignment>, GameError> {
    if !budget.fits_within(strategy.budget()) {
        return Err(GameError::Mismatch);
    }
    let count = budget.assignment_count().unwrap_or(u128::MAX);
    if count > guard {
        return Err(GameError::GuardExceeded { what: "assignment count", value: count, guard });
    }
    let g = strategy.graph();
    let n = g.vertex_count();
    // A player can be judged once it and all its neighbours are coloured.
    let mut check_at: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for v in g.vertices() {
        let last = g.neighbors(v).last().map_or(v, |&w| w.max(v));
        check_at[last].push(v);
    }
    let mut colors = vec![0 as Color; n];
    if dodge_from(strategy, budget, &check_at, 0, &mut colors) {
        Ok(Some(HatAssignment::new(colors)))
    } else {
        Ok(None)
    }
}

fn dodge_from(
    strategy: &Strategy,
    budget: &ColorBudget,
    check_at: &[Vec<Vertex>],
    i: usize,
    colors: &mut [Color],
) -> bool {
    if i == colors.len() {
        return true;
    }
    for c in 0..budget.get(i) {
        colors[i] = c;
        let ok = check_at[i]
            .iter()
            .all(|&v| !strategy.guesses_in(v, colors).contains(colors[v]));
        if ok && dodge_from(strategy, budget, check_at, i + 1, colors) {
            return true;
        }
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Winner {
    Players,
    Adversary,
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Winner::Players => "players",
            Winner::Adversary => "adversary",
        })
    }
}

/// One dead end of the search: under the decisions on `branch` (a string of
/// `0` = "takes the value", `1` = "avoids the value" choices), no table entry can still
/// be correct on `assignment`. `assignment` is `None` when the branch was
/// closed by the coverage count instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub branch: String,
    pub assignment: Option<HatAssignment>,
}

/// Result of [`players_win`].
#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub winner: Winner,
    /// A strategy with no defeating assignment, when the players win.
    pub certificate: Option<Strategy>,
    /// The first refutations met, in search order (adversary wins only).
    pub transcript: Vec<Refutation>,
    /// Total refutations, including those not kept in `transcript`.
    pub refutations: u64,
    pub nodes: u64,
}

/// Refutations kept in a transcript.
pub const TRANSCRIPT_LIMIT: usize = 256;

impl SolveOutcome {
    /// `winner players|adversary`, then either the strategy text or one
    /// `branch <id> defeated-by <assignment>` line per kept refutation.
    pub fn render(&self) -> String {
        let mut s = format!("winner {}\n", self.winner);
        if let Some(cert) = &self.certificate {
            s.push_str(&cert.to_text());
        }
        for r in &self.transcript {
            match &r.assignment {
                Some(a) => s.push_str(&format!("branch {} defeated-by {}\n", r.branch, a)),
                None => s.push_str(&format!("branch {} defeated-by coverage-count\n", r.branch)),
            }
        }
        s
    }
}

/// Decides whether the players have a strategy guaranteeing a correct guess
/// on every assignment within `budget`.
pub fn players_win(
    g: &Graph,
    budget: &ColorBudget,
    guess_count: GuessCount,
    guards: &Guards,
) -> Result<SolveOutcome, GameError> {
    if g.vertex_count() == 0 {
        return Err(GameError::EmptyGraph);
    }
    budget.check_graph(g)?;
    let assignments = budget.assignment_count().unwrap_or(u128::MAX);
    if assignments > guards.solver_assignments {
        return Err(GameError::GuardExceeded {
            what: "assignment count",
            value: assignments,
            guard: guards.solver_assignments,
        });
    }
    let entries = table_entry_count(g, budget).unwrap_or(u128::MAX);
    if entries > guards.solver_tables {
        return Err(GameError::GuardExceeded { what: "table entries", value: entries, guard: guards.solver_tables });
    }
    let mut search = Search::new(g, budget, guess_count, guards.search_nodes)?;
    search.run()
}

/// One value list per vertex: the guess sets a table entry may take.
/// Two guesses only ever use pairs when at least two colours exist, since a
/// singleton is covered by any pair containing it.
fn value_lists(budget: &ColorBudget, guess_count: GuessCount) -> Vec<Vec<GuessSet>> {
    budget
        .as_slice()
        .iter()
        .map(|&q| match guess_count {
            GuessCount::Two if q >= 2 => {
                let mut out = Vec::new();
                for a in 0..q {
                    for b in a + 1..q {
                        out.push(GuessSet::pair(a, b));
                    }
                }
                out
            }
            _ => (0..q).map(GuessSet::one).collect(),
        })
        .collect()
}

type Domain = u128;

struct Search {
    n: usize,
    /// `cells[a * n + v]` = (variable of v under a, colour of v under a).
    cells: Vec<(u32, Color)>,
    assignment_count: usize,
    budget: ColorBudget,
    var_vertex: Vec<Vertex>,
    var_offset: Vec<usize>,
    values: Vec<Vec<GuessSet>>,
    /// `contain[v][c]` = value indices at `v` whose set contains `c`.
    contain: Vec<Vec<Domain>>,
    domains: Vec<Domain>,
    trail: Vec<(u32, Domain)>,
    graph: Graph,
    guess_count: GuessCount,
    max_colors: usize,
    counts: Vec<u32>,
    touched: Vec<u32>,
    best_gain: Vec<(u32, u64)>,
    node_of: Vec<u32>,
    nodes: u64,
    node_limit: u64,
    transcript: Vec<Refutation>,
    refutations: u64,
}

enum Step {
    Solved,
    Dead(Option<u32>),
    Branch(u32, Domain),
}

enum Coverage {
    Short,
    Pruned,
    Open,
}

struct Frame {
    mark: usize,
    unsat: Vec<u32>,
    var: u32,
    mask: Domain,
    second: bool,
}

impl Search {
    fn new(g: &Graph, budget: &ColorBudget, guess_count: GuessCount, node_limit: u64) -> Result<Self, GameError> {
        let n = g.vertex_count();
        let values = value_lists(budget, guess_count);
        if let Some(v) = values.iter().position(|vs| vs.len() > Domain::BITS as usize) {
            return Err(GameError::GuardExceeded {
                what: "guess sets per table entry",
                value: values[v].len() as u128,
                guard: Domain::BITS as u128,
            });
        }
        let contain: Vec<Vec<Domain>> = (0..n)
            .map(|v| {
                (0..budget.get(v))
                    .map(|c| {
                        values[v]
                            .iter()
                            .enumerate()
                            .filter(|(_, s)| s.contains(c))
                            .fold(0, |m, (i, _)| m | (1 << i))
                    })
                    .collect()
            })
            .collect();

        let mut var_offset = Vec::with_capacity(n + 1);
        let mut var_vertex = Vec::new();
        let mut weights: Vec<Vec<usize>> = Vec::with_capacity(n);
        for v in 0..n {
            var_offset.push(var_vertex.len());
            let nbrs = g.neighbors(v);
            let mut w = vec![0usize; nbrs.len()];
            let mut acc = 1usize;
            for i in (0..nbrs.len()).rev() {
                w[i] = acc;
                acc *= budget.get(nbrs[i]) as usize;
            }
            var_vertex.extend(std::iter::repeat_n(v, acc));
            weights.push(w);
        }
        var_offset.push(var_vertex.len());

        let assignment_count = budget.assignment_count().expect("guarded") as usize;
        let mut cells = Vec::with_capacity(assignment_count * n);
        for a in enumerate_assignments(budget, u128::MAX)? {
            for v in 0..n {
                let idx: usize = g.neighbors(v).iter().zip(&weights[v]).map(|(&w, &wt)| wt * a.get(w) as usize).sum();
                cells.push(((var_offset[v] + idx) as u32, a.get(v)));
            }
        }

        let domains = var_vertex
            .iter()
            .map(|&v| if values[v].len() == Domain::BITS as usize { Domain::MAX } else { (1 << values[v].len()) - 1 })
            .collect();
        let max_colors = budget.as_slice().iter().copied().max().unwrap_or(1) as usize;
        let var_count = var_vertex.len();
        Ok(Search {
            n,
            cells,
            assignment_count,
            budget: budget.clone(),
            counts: vec![0; var_count * max_colors],
            var_vertex,
            var_offset,
            values,
            contain,
            domains,
            trail: Vec::new(),
            graph: g.clone(),
            guess_count,
            max_colors,
            touched: Vec::new(),
            best_gain: Vec::new(),
            node_of: vec![0; var_count],
            nodes: 0,
            node_limit,
            transcript: Vec::new(),
            refutations: 0,
        })
    }

    fn restrict(&mut self, var: u32, mask: Domain) {
        let d = self.domains[var as usize];
        if d & mask != d {
            self.trail.push((var, d));
            self.domains[var as usize] = d & mask;
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (var, d) = self.trail.pop().expect("non-empty trail");
            self.domains[var as usize] = d;
        }
    }

    /// Relabelling the colours of one vertex preserves winnability. It
    /// permutes that vertex's guesses and the entries of its neighbours'
    /// tables, but no entry 0 of a non-adjacent vertex. So on a greedy
    /// independent set (ascending vertex order) every first entry may be
    /// fixed to the first value ({0}, or {0, 1} with two guesses).
    fn break_symmetry(&mut self) {
        let mut blocked = vec![false; self.n];
        for v in 0..self.n {
            if blocked[v] {
                continue;
            }
            self.restrict(self.var_offset[v] as u32, 1);
            for &w in self.graph.neighbors(v) {
                blocked[w] = true;
            }
        }
    }

    fn propagate(&mut self, unsat: &mut Vec<u32>) -> Step {
        loop {
            let mut changed = false;
            let mut best: Option<(u32, u32)> = None;
            let mut kept = Vec::with_capacity(unsat.len());
            for &a in unsat.iter() {
                let base = a as usize * self.n;
                let mut support = 0u32;
                let mut first: Option<(u32, Domain)> = None;
                let mut covered = false;
                for v in 0..self.n {
                    let (x, c) = self.cells[base + v];
                    let d = self.domains[x as usize];
                    let m = self.contain[v][c as usize];
                    let hit = d & m;
                    if hit == d {
                        covered = true;
                        break;
                    }
                    if hit != 0 {
                        support += 1;
                        first.get_or_insert((x, m));
                    }
                }
                if covered {
                    continue;
                }
                match (support, first) {
                    (0, _) => return Step::Dead(Some(a)),
                    (1, Some((x, m))) => {
                        self.restrict(x, m);
                        changed = true;
                    }
                    (_, Some(_)) => {
                        kept.push(a);
                        if best.is_none_or(|(s, _)| support < s) {
                            best = Some((support, a));
                        }
                    }
                    _ => unreachable!(),
                }
            }
            *unsat = kept;
            if !changed {
                let Some((_, a)) = best else {
                    return Step::Solved;
                };
                match self.check_coverage(unsat) {
                    Coverage::Short => return Step::Dead(None),
                    Coverage::Pruned => continue,
                    Coverage::Open => {
                        let (x, bit) = self.pick_branch(a, unsat);
                        return Step::Branch(x, bit);
                    }
                }
            }
        }
    }

    /// Among the supporters of assignment `a`, the variable and value (one
    /// that covers `a`) covering the most uncovered assignments. Ties go to
    /// the lower vertex, then the lower value index.
    fn pick_branch(&self, a: u32, unsat: &[u32]) -> (u32, Domain) {
        let base = a as usize * self.n;
        let mut best: Option<(u32, u32, u32)> = None;
        for v in 0..self.n {
            let (x, c) = self.cells[base + v];
            let mut d = self.domains[x as usize] & self.contain[v][c as usize];
            if d == 0 {
                continue;
            }
            let mut per_color = vec![0u32; self.budget.get(v) as usize];
            for &b in unsat {
                let (y, cb) = self.cells[b as usize * self.n + v];
                if y == x {
                    per_color[cb as usize] += 1;
                }
            }
            while d != 0 {
                let i = d.trailing_zeros();
                d &= d - 1;
                let gain: u32 = self.values[v][i as usize].iter().map(|c| per_color[c as usize]).sum();
                if best.is_none_or(|(g, _, _)| gain > g) {
                    best = Some((gain, x, i));
                }
            }
        }
        let (_, x, i) = best.expect("assignment has a supporter");
        (x, 1 << i)
    }

    /// Upper bound on how many uncovered assignments the open variables can
    /// still cover, compared against how many there are. The surplus also
    /// filters domains: a value whose coverage falls short of its
    /// variable's best by more than the surplus can never be part of a
    /// solution below this node.
    fn check_coverage(&mut self, unsat: &[u32]) -> Coverage {
        let k = self.max_colors;
        for &a in unsat {
            let base = a as usize * self.n;
            for v in 0..self.n {
                let (x, c) = self.cells[base + v];
                if self.domains[x as usize] & self.contain[v][c as usize] != 0 {
                    let slot = x as usize * k + c as usize;
                    if self.counts[slot] == 0 {
                        self.touched.push(x * k as u32 + c);
                    }
                    self.counts[slot] += 1;
                }
            }
        }
        let mut vars: Vec<usize> = self.touched.iter().map(|&t| t as usize / k).collect();
        vars.sort_unstable();
        vars.dedup();
        let mut gains: Vec<(usize, u64, Vec<(usize, u64)>)> = Vec::with_capacity(vars.len());
        let mut capacity: u64 = 0;
        for &x in &vars {
            let v = self.var_vertex[x];
            let mut d = self.domains[x];
            let mut best = 0u64;
            let mut per_value = Vec::new();
            while d != 0 {
                let i = d.trailing_zeros() as usize;
                d &= d - 1;
                let gain: u64 = self.values[v][i].iter().map(|c| self.counts[x * k + c as usize] as u64).sum();
                best = best.max(gain);
                per_value.push((i, gain));
            }
            capacity += best;
            gains.push((x, best, per_value));
        }
        for &t in &self.touched {
            self.counts[t as usize] = 0;
        }
        self.touched.clear();
        let need = unsat.len() as u64;
        if capacity < need {
            return Coverage::Short;
        }
        let surplus = capacity - need;
        let mut pruned = false;
        for (x, best, per_value) in gains {
            let keep = per_value
                .iter()
                .filter(|&&(_, g)| g + surplus >= best)
                .fold(0 as Domain, |m, &(i, _)| m | (1 << i));
            if keep != self.domains[x] {
                self.restrict(x as u32, keep);
                pruned = true;
            }
            self.best_gain.push((x as u32, best));
        }
        if pruned {
            self.best_gain.clear();
            Coverage::Pruned
        } else if self.flow_covers(unsat) {
            Coverage::Open
        } else {
            Coverage::Short
        }
    }

    /// Whether the open variables, each covering at most its best count,
    /// can jointly cover every uncovered assignment.
    fn flow_covers(&mut self, unsat: &[u32]) -> bool {
        let best = std::mem::take(&mut self.best_gain);
        let first_assignment = 2 + best.len();
        let mut network = flow::Network::new(first_assignment + unsat.len());
        for (i, &(x, cap)) in best.iter().enumerate() {
            self.node_of[x as usize] = (2 + i) as u32;
            network.add_edge(0, 2 + i, cap.min(u32::MAX as u64) as u32);
        }
        for (j, &a) in unsat.iter().enumerate() {
            let base = a as usize * self.n;
            for v in 0..self.n {
                let (x, c) = self.cells[base + v];
                if self.domains[x as usize] & self.contain[v][c as usize] != 0 {
                    network.add_edge(self.node_of[x as usize] as usize, first_assignment + j, 1);
                }
            }
            network.add_edge(first_assignment + j, 1, 1);
        }
        let need = unsat.len() as u64;
        network.max_flow(0, 1, need) == need
    }

    fn record(&mut self, frames: &[Frame], dead: Option<u32>) {
        self.refutations += 1;
        if self.transcript.len() < TRANSCRIPT_LIMIT {
            let branch = if frames.is_empty() {
                "root".to_string()
            } else {
                frames.iter().map(|f| if f.second { '1' } else { '0' }).collect()
            };
            let assignment = dead.map(|a| {
                let base = a as usize * self.n;
                HatAssignment::new((0..self.n).map(|v| self.cells[base + v].1).collect())
            });
            self.transcript.push(Refutation { branch, assignment });
        }
    }

    fn run(&mut self) -> Result<SolveOutcome, GameError> {
        self.break_symmetry();
        let mut unsat: Vec<u32> = (0..self.assignment_count as u32).collect();
        let mut frames: Vec<Frame> = Vec::new();
        loop {
            self.nodes += 1;
            if self.nodes > self.node_limit {
                return Err(GameError::GuardExceeded {
                    what: "search nodes",
                    value: self.nodes as u128,
                    guard: self.node_limit as u128,
                });
            }
            match self.propagate(&mut unsat) {
                Step::Solved => {
                    let certificate = self.certificate()?;
                    return Ok(SolveOutcome {
                        winner: Winner::Players,
                        certificate: Some(certificate),
                        transcript: Vec::new(),
                        refutations: self.refutations,
                        nodes: self.nodes,
                    });
                }
                Step::Branch(var, mask) => {
                    frames.push(Frame { mark: self.trail.len(), unsat: unsat.clone(), var, mask, second: false });
                    self.restrict(var, mask);
                }
                Step::Dead(a) => {
                    self.record(&frames, a);
                    loop {
                        let Some(mut frame) = frames.pop() else {
                            return Ok(SolveOutcome {
                                winner: Winner::Adversary,
                                certificate: None,
                                transcript: std::mem::take(&mut self.transcript),
                                refutations: self.refutations,
                                nodes: self.nodes,
                            });
                        };
                        self.undo_to(frame.mark);
                        if !frame.second {
                            frame.second = true;
                            self.restrict(frame.var, !frame.mask);
                            unsat = frame.unsat.clone();
                            frames.push(frame);
                            break;
                        }
                    }
                }
            }
        }
    }

    fn certificate(&self) -> Result<Strategy, GameError> {
        let mut tables: Vec<Vec<GuessSet>> = vec![Vec::new(); self.n];
        for (x, &d) in self.domains.iter().enumerate() {
            let v = self.var_vertex[x];
            tables[v].push(self.values[v][d.trailing_zeros() as usize]);
        }
        Strategy::from_tables(&self.graph, &self.budget, self.guess_count, tables)
    }
}

/// `HG` (one guess) or `HG_2` (two guesses): the largest uniform `q` at
/// which the players win, found by increasing `q` from 1 until the
/// adversary wins.
#[derive(Clone, Debug)]
pub struct HgSweep {
    pub value: Color,
    /// Outcome at every `q` from 1 to `value + 1`.
    pub outcomes: Vec<(Color, SolveOutcome)>,
}

pub fn hat_guessing_number(g: &Graph, guess_count: GuessCount, guards: &Guards) -> Result<HgSweep, GameError> {
    let mut outcomes = Vec::new();
    for q in 1.. {
        let out = players_win(g, &ColorBudget::uniform(g.vertex_count(), q), guess_count, guards)?;
        let won = out.winner == Winner::Players;
        outcomes.push((q, out));
        if !won {
            return Ok(HgSweep { value: q - 1, outcomes });
        }
    }
    unreachable!("the loop only exits by returning")
}

pub fn hg_exact(g: &Graph, guards: &Guards) -> Result<Color, GameError> {
    hat_guessing_number(g, GuessCount::One, guards).map(|s| s.value)
}

pub fn hg2_exact(g: &Graph, guards: &Guards) -> Result<Color, GameError> {
    hat_guessing_number(g, GuessCount::Two, guards).map(|s| s.value)
}
