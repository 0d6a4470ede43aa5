//! Adversary oracles: procedures that take any players' strategy and
//! return a hat assignment on which every player guesses wrong.
//!
//! Oracles compose. Each one owns a graph, a budget and a guess count, and
//! is a tree of nodes whose leaves are exhaustive refutations or
//! closure-dodging, and whose inner nodes reduce a strategy to strategies
//! on smaller graphs.
//!
//! Every oracle accepts strategies whose budget is pointwise at least its
//! own (extra colours are never used) and, for two-guess oracles,
//! one-guess strategies too.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::bounds::{self, BigBound};
use crate::error::{ConstructionError, GameError};
use crate::game::{for_each_coloring, merge_two_guess, Color, ColorBudget, GuessCount, GuessSet, HatAssignment, Strategy};
use crate::graph::{
    block_decomposition, circumference, closure, contains_tary_tree, dfs_treedepth_certificate,
    greedy_proper_coloring, Graph, RootedTree, Vertex,
};
use crate::guards::Guards;
use crate::solver::find_defeating_assignment;

type Result<T> = std::result::Result<T, ConstructionError>;

fn precondition(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::Precondition(msg.into())
}

/// How the non-block side of a cut-vertex split is refuted.
#[derive(Clone, Debug)]
pub enum SideOne {
    /// Enumerate every colouring of the side within the oracle's budget.
    Enumerate { guard: u128 },
    /// Call an oracle for the side repeatedly, each time letting the cut
    /// vertex guess the colour it was last given next to the same
    /// neighbour colouring, until some neighbour colouring has been seen
    /// with two different cut-vertex colours.
    Oracle(Box<AdversaryOracle>),
}

#[derive(Clone, Debug)]
enum Node {
    /// No vertices: the empty assignment wins.
    Empty,
    Exhaustive {
        guard: u128,
        claim: String,
    },
    /// Colours an independent set first, each vertex dodging all guesses
    /// its neighbours' colours below `ell` could trigger, then delegates.
    IndependentSet {
        set: Vec<Vertex>,
        ell: Color,
        sub: Box<AdversaryOracle>,
    },
    /// Budget at `v` is the pair `colors`; the rest is refuted as a
    /// two-guess game on the graph without `v`.
    TwoAtVertex {
        v: Vertex,
        colors: (Color, Color),
        sub: Box<AdversaryOracle>,
    },
    CutVertex {
        v: Vertex,
        side1: Vec<Vertex>,
        side2: Vec<Vertex>,
        first: SideOne,
        sub2: Box<AdversaryOracle>,
    },
    Components {
        parts: Vec<(Vec<Vertex>, AdversaryOracle)>,
    },
    /// Dodging on the closure of a rooted tree, leaves first.
    Closure {
        tree: RootedTree,
    },
    /// `sub` plays on a spanning supergraph with a budget no larger.
    Relax {
        sub: Box<AdversaryOracle>,
    },
    /// The graph is `parent.graph` induced on `labels`.
    Induced {
        labels: Vec<Vertex>,
        parent: Box<AdversaryOracle>,
    },
}

/// A constructive adversary for one graph, budget and guess count.
#[derive(Clone, Debug)]
pub struct AdversaryOracle {
    graph: Graph,
    budget: ColorBudget,
    guess_count: GuessCount,
    node: Node,
}

struct Log {
    lines: Option<Vec<String>>,
    depth: usize,
}

impl Log {
    fn note(&mut self, f: impl FnOnce() -> String) {
        if let Some(lines) = &mut self.lines {
            lines.push(format!("{}{}", "  ".repeat(self.depth), f()));
        }
    }

    fn nested<T>(&mut self, f: impl FnOnce(&mut Log) -> T) -> T {
        self.depth += 1;
        let out = f(self);
        self.depth -= 1;
        out
    }
}

fn smallest_missing(sorted: &[Color]) -> Color {
    sorted
        .iter()
        .enumerate()
        .find(|&(i, &c)| c != i as Color)
        .map_or(sorted.len() as Color, |(i, _)| i as Color)
}

fn join(xs: &[impl ToString]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

impl AdversaryOracle {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn budget(&self) -> &ColorBudget {
        &self.budget
    }

    pub fn guess_count(&self) -> GuessCount {
        self.guess_count
    }

    /// A defeating assignment for `strategy`, within [`Self::budget`].
    pub fn defeat(&self, strategy: &Strategy) -> Result<HatAssignment> {
        self.run(strategy, &mut Log { lines: None, depth: 0 })
    }

    /// Like [`Self::defeat`], also returning one line per colour choice.
    pub fn defeat_traced(&self, strategy: &Strategy) -> Result<(HatAssignment, Vec<String>)> {
        let mut log = Log { lines: Some(Vec::new()), depth: 0 };
        let a = self.run(strategy, &mut log)?;
        Ok((a, log.lines.unwrap_or_default()))
    }

    /// The node tree, one line per node, children indented.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        self.describe_into(&mut out, 0);
        out
    }

    fn describe_into(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        let head = format!(
            "{pad}n={} edges={} budget={} guesses={}",
            self.graph.vertex_count(),
            self.graph.edge_count(),
            self.budget,
            self.guess_count
        );
        let _ = match &self.node {
            Node::Empty => writeln!(out, "{head} empty"),
            Node::Exhaustive { claim, .. } => writeln!(out, "{head} exhaustive ({claim})"),
            Node::IndependentSet { set, ell, .. } => {
                writeln!(out, "{head} independent-set peel=[{}] sub-colours={ell}", join(set))
            }
            Node::TwoAtVertex { v, colors, .. } => {
                writeln!(out, "{head} two-at-vertex v={v} colours=({},{})", colors.0, colors.1)
            }
            Node::CutVertex { v, side1, side2, first, .. } => {
                let how = match first {
                    SideOne::Enumerate { .. } => "enumerate",
                    SideOne::Oracle(_) => "oracle",
                };
                writeln!(out, "{head} cut-vertex v={v} side1=[{}] ({how}) side2=[{}]", join(side1), join(side2))
            }
            Node::Components { parts } => {
                let ps: Vec<String> = parts.iter().map(|(l, _)| format!("[{}]", join(l))).collect();
                writeln!(out, "{head} components {}", ps.join(" "))
            }
            Node::Closure { tree } => writeln!(out, "{head} closure parents=[{}]", tree.render_parents()),
            Node::Relax { .. } => writeln!(out, "{head} relax"),
            Node::Induced { labels, .. } => writeln!(out, "{head} induced labels=[{}]", join(labels)),
        };
        match &self.node {
            Node::IndependentSet { sub, .. } | Node::TwoAtVertex { sub, .. } | Node::Relax { sub } => {
                sub.describe_into(out, depth + 1)
            }
            Node::Induced { parent, .. } => parent.describe_into(out, depth + 1),
            Node::CutVertex { first, sub2, .. } => {
                if let SideOne::Oracle(o) = first {
                    o.describe_into(out, depth + 1);
                }
                sub2.describe_into(out, depth + 1);
            }
            Node::Components { parts } => {
                for (_, o) in parts {
                    o.describe_into(out, depth + 1);
                }
            }
            _ => {}
        }
    }

    fn admit(&self, s: &Strategy) -> Result<Strategy> {
        if s.graph() != &self.graph {
            return Err(precondition("strategy is for a different graph"));
        }
        if s.guess_count() > self.guess_count {
            return Err(precondition(format!(
                "oracle handles {} guess(es), strategy makes {}",
                self.guess_count,
                s.guess_count()
            )));
        }
        if !self.budget.fits_within(s.budget()) {
            return Err(precondition(format!(
                "strategy budget {} is below oracle budget {}",
                s.budget(),
                self.budget
            )));
        }
        Ok(s.restrict_budget(&self.budget)?)
    }

    fn run(&self, strategy: &Strategy, log: &mut Log) -> Result<HatAssignment> {
        let s = self.admit(strategy)?;
        let a = match &self.node {
            Node::Empty => HatAssignment::new(Vec::new()),
            Node::Exhaustive { guard, claim } => match find_defeating_assignment(&s, &self.budget, *guard)? {
                Some(a) => {
                    log.note(|| format!("exhaustive {a}"));
                    a
                }
                None => {
                    return Err(ConstructionError::PremiseViolation {
                        context: format!("{claim}: the players win at budget {}", self.budget),
                        witness: Box::new(s),
                    })
                }
            },
            Node::IndependentSet { set, ell, sub } => run_independent_set(&s, set, *ell, sub, log)?,
            Node::TwoAtVertex { v, colors, sub } => two_at_vertex(&s, *v, *colors, sub, log)?,
            Node::CutVertex { v, side1, side2, first, sub2 } => run_cut_vertex(&s, *v, side1, side2, first, sub2, log)?,
            Node::Components { parts } => {
                let n = self.graph.vertex_count();
                let mut colors = vec![0 as Color; n];
                for (labels, oracle) in parts {
                    let mut fixed = vec![Some(0); n];
                    for &u in labels {
                        fixed[u] = None;
                    }
                    let (part, _) = s.induce(&fixed)?;
                    let a = log.nested(|log| oracle.run(&part, log))?;
                    for (i, &u) in labels.iter().enumerate() {
                        colors[u] = a.get(i);
                    }
                }
                HatAssignment::new(colors)
            }
            Node::Closure { tree } => closure_dodge_logged(&s, tree, &tree.leaf_elimination_order(), log)?,
            Node::Relax { sub } => {
                let lifted = if sub.graph == self.graph { s.clone() } else { s.lift_to_supergraph(&sub.graph)? };
                log.nested(|log| sub.run(&lifted, log))?
            }
            Node::Induced { labels, parent } => {
                let embedded = s.embed_into(&parent.graph, labels, &parent.budget)?;
                let a = log.nested(|log| parent.run(&embedded, log))?;
                HatAssignment::new(labels.iter().map(|&u| a.get(u)).collect())
            }
        };
        debug_assert!(a.is_within(&self.budget) && s.is_defeating(&a), "oracle produced a losing assignment");
        Ok(a)
    }
}

/// Refutes by enumerating assignments in lexicographic order. Finding none
/// is reported as a premise violation carrying the strategy.
pub fn exhaustive_oracle(
    g: &Graph,
    budget: ColorBudget,
    guess_count: GuessCount,
    guards: &Guards,
) -> Result<AdversaryOracle> {
    exhaustive_with_claim(g, budget, guess_count, guards.enumeration, "exhaustive refutation".into())
}

fn exhaustive_with_claim(
    g: &Graph,
    budget: ColorBudget,
    guess_count: GuessCount,
    guard: u128,
    claim: String,
) -> Result<AdversaryOracle> {
    budget.check_graph(g)?;
    let node = if g.vertex_count() == 0 { Node::Empty } else { Node::Exhaustive { guard, claim } };
    Ok(AdversaryOracle { graph: g.clone(), budget, guess_count, node })
}

/// One-guess oracle at uniform budget `ell^r + 1` on `g`, given an
/// independent set whose vertices have degree at most `r` and an oracle
/// for `g` minus the set that never uses colours `>= ell`.
pub fn independent_set_oracle(
    g: &Graph,
    set: &[Vertex],
    r: u32,
    ell: Color,
    sub: AdversaryOracle,
) -> Result<AdversaryOracle> {
    let mut set = set.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.iter().any(|&u| u >= g.vertex_count()) {
        return Err(precondition("set vertex out of range"));
    }
    if !g.is_independent(&set) {
        return Err(precondition(format!("[{}] is not independent", join(&set))));
    }
    if let Some(&u) = set.iter().find(|&&u| g.degree(u) > r as usize) {
        return Err(precondition(format!("vertex {u} has degree {} > {r}", g.degree(u))));
    }
    if r < 1 || ell < 2 {
        return Err(precondition("needs r >= 1 and ell >= 2"));
    }
    let rest = g.without(&set).0;
    if sub.graph != rest {
        return Err(precondition("sub-oracle graph is not the graph minus the set"));
    }
    if !sub.budget.fits_within(&ColorBudget::uniform(rest.vertex_count(), ell)) {
        return Err(precondition(format!("sub-oracle budget {} exceeds {ell}", sub.budget)));
    }
    let q = ell
        .checked_pow(r)
        .and_then(|x| x.checked_add(1))
        .ok_or_else(|| precondition(format!("{ell}^{r} + 1 colours overflow")))?;
    Ok(AdversaryOracle {
        graph: g.clone(),
        budget: ColorBudget::uniform(g.vertex_count(), q),
        guess_count: GuessCount::One,
        node: Node::IndependentSet { set, ell, sub: Box::new(sub) },
    })
}

fn run_independent_set(
    s: &Strategy,
    set: &[Vertex],
    ell: Color,
    sub: &AdversaryOracle,
    log: &mut Log,
) -> Result<HatAssignment> {
    let g = s.graph();
    let mut fixed = vec![None; g.vertex_count()];
    for &u in set {
        let ranges = vec![(0, ell); g.degree(u)];
        let c = smallest_missing(&s.guess_union(u, &ranges));
        log.note(|| format!("peel u={u} colour={c}"));
        fixed[u] = Some(c);
    }
    let (rest, labels) = s.induce(&fixed)?;
    let a = log.nested(|log| sub.run(&rest, log))?;
    let mut colors: Vec<Color> = fixed.iter().map(|c| c.unwrap_or(0)).collect();
    for (i, &u) in labels.iter().enumerate() {
        colors[u] = a.get(i);
    }
    Ok(HatAssignment::new(colors))
}

/// One-guess oracle on `g` whose budget is `colors.1 + 1` at `v` and
/// `ell + 1` elsewhere; the assignment always gives `v` one of the two
/// colours. `sub` refutes two-guess strategies on `g` minus `v`.
pub fn two_at_vertex_oracle(
    g: &Graph,
    v: Vertex,
    colors: (Color, Color),
    ell: Color,
    sub: AdversaryOracle,
) -> Result<AdversaryOracle> {
    if v >= g.vertex_count() {
        return Err(precondition(format!("vertex {v} out of range")));
    }
    if colors.0 >= colors.1 {
        return Err(precondition("the two colours must be distinct and ascending"));
    }
    let rest = g.without(&[v]).0;
    if sub.graph != rest || sub.guess_count != GuessCount::Two {
        return Err(precondition("sub-oracle must be a two-guess oracle for the graph minus v"));
    }
    if !sub.budget.fits_within(&ColorBudget::uniform(rest.vertex_count(), ell + 1)) {
        return Err(precondition(format!("sub-oracle budget {} exceeds {}", sub.budget, ell + 1)));
    }
    let mut q = vec![ell + 1; g.vertex_count()];
    q[v] = colors.1 + 1;
    Ok(AdversaryOracle {
        graph: g.clone(),
        budget: ColorBudget::new(q)?,
        guess_count: GuessCount::One,
        node: Node::TwoAtVertex { v, colors, sub: Box::new(sub) },
    })
}

fn two_at_vertex(
    s: &Strategy,
    v: Vertex,
    colors: (Color, Color),
    sub: &AdversaryOracle,
    log: &mut Log,
) -> Result<HatAssignment> {
    let n = s.graph().vertex_count();
    let mut halves = Vec::with_capacity(2);
    let mut labels = Vec::new();
    for c in [colors.0, colors.1] {
        let mut fixed = vec![None; n];
        fixed[v] = Some(c);
        let (h, l) = s.induce(&fixed)?;
        halves.push(h);
        labels = l;
    }
    let merged = merge_two_guess(&halves[0], &halves[1])?;
    let psi = log.nested(|log| sub.run(&merged, log))?;
    let mut full = vec![0 as Color; n];
    for (i, &u) in labels.iter().enumerate() {
        full[u] = psi.get(i);
    }
    let guess = s.guesses_in(v, &full);
    let c = [colors.0, colors.1]
        .into_iter()
        .find(|&c| !guess.contains(c))
        .ok_or_else(|| precondition(format!("vertex {v} guesses both of its colours")))?;
    log.note(|| format!("two-at-vertex v={v} guess={guess} colour={c}"));
    full[v] = c;
    Ok(HatAssignment::new(full))
}

/// One-guess oracle at uniform `ell + 1` on `g = g[side1] ∪ g[side2]`,
/// the sides meeting only in the cut vertex `v`. Side one is refuted as
/// `first` says; `sub2` is a two-guess oracle for `g[side2]` minus `v`.
pub fn cut_vertex_oracle(
    g: &Graph,
    v: Vertex,
    side1: &[Vertex],
    side2: &[Vertex],
    ell: Color,
    first: SideOne,
    sub2: AdversaryOracle,
) -> Result<AdversaryOracle> {
    let n = g.vertex_count();
    let mut s1 = side1.to_vec();
    let mut s2 = side2.to_vec();
    s1.sort_unstable();
    s1.dedup();
    s2.sort_unstable();
    s2.dedup();
    if s1.iter().chain(&s2).any(|&u| u >= n) {
        return Err(precondition("side vertex out of range"));
    }
    let mut side = vec![0u8; n];
    for &u in &s1 {
        side[u] |= 1;
    }
    for &u in &s2 {
        side[u] |= 2;
    }
    if side.iter().enumerate().any(|(u, &m)| m == 0 || (m == 3) != (u == v)) {
        return Err(precondition("sides must cover the graph and share exactly the cut vertex"));
    }
    if g.edges().any(|(a, b)| side[a] | side[b] == 3 && side[a] != 3 && side[b] != 3) {
        return Err(precondition("an edge joins the two sides away from the cut vertex"));
    }
    let g2 = g.induced_subgraph(&s2);
    let v2 = s2.binary_search(&v).expect("v on side two");
    if sub2.graph != g2.without(&[v2]).0 || sub2.guess_count != GuessCount::Two {
        return Err(precondition("side-two oracle must be a two-guess oracle for side two minus v"));
    }
    if !sub2.budget.fits_within(&ColorBudget::uniform(s2.len() - 1, ell + 1)) {
        return Err(precondition(format!("side-two oracle budget {} exceeds {}", sub2.budget, ell + 1)));
    }
    if let SideOne::Oracle(o) = &first {
        if o.graph != g.induced_subgraph(&s1) {
            return Err(precondition("side-one oracle graph is not side one"));
        }
        if !o.budget.fits_within(&ColorBudget::uniform(s1.len(), ell + 1)) {
            return Err(precondition(format!("side-one oracle budget {} exceeds {}", o.budget, ell + 1)));
        }
    }
    if ell < 1 {
        return Err(precondition("needs ell >= 1"));
    }
    Ok(AdversaryOracle {
        graph: g.clone(),
        budget: ColorBudget::uniform(n, ell + 1),
        guess_count: GuessCount::One,
        node: Node::CutVertex { v, side1: s1, side2: s2, first, sub2: Box::new(sub2) },
    })
}

/// The cut-vertex oracle with side one enumerated and side two minus `v`
/// refuted exhaustively with two guesses.
pub fn cut_vertex_oracle_exhaustive(
    g: &Graph,
    v: Vertex,
    side1: &[Vertex],
    side2: &[Vertex],
    ell: Color,
    guards: &Guards,
) -> Result<AdversaryOracle> {
    let mut s2 = side2.to_vec();
    s2.sort_unstable();
    s2.dedup();
    let rest: Vec<Vertex> = s2.iter().copied().filter(|&u| u != v).collect();
    let h = g.induced_subgraph(&rest);
    let claim = format!("two-guess number of [{}] is at most {ell}", join(&rest));
    let sub2 = exhaustive_with_claim(
        &h,
        ColorBudget::uniform(rest.len(), ell + 1),
        GuessCount::Two,
        guards.enumeration,
        claim,
    )?;
    cut_vertex_oracle(g, v, side1, &s2, ell, SideOne::Enumerate { guard: guards.enumeration }, sub2)
}

/// The strategy on `g[side1]` in which everyone but `v` follows `s` and `v`
/// guesses `table[α]` (or 0) when its neighbours show `α`.
fn side_one_strategy(
    s: &Strategy,
    g1: &Graph,
    side1: &[Vertex],
    v1: Vertex,
    table: &BTreeMap<Vec<Color>, Color>,
) -> Result<Strategy> {
    let q = s.budget().get(side1[0]);
    let budget = ColorBudget::uniform(side1.len(), q);
    Ok(Strategy::from_fn(g1, &budget, GuessCount::One, |lu, seen| {
        if lu == v1 {
            GuessSet::one(table.get(seen).copied().unwrap_or(0))
        } else {
            s.guesses_for(side1[lu], seen)
        }
    })?)
}

/// Two side-one colourings, wrong for every player of side one except `v`,
/// agreeing next to `v` and differing at `v`.
struct Split {
    alpha: Vec<Color>,
    ends: [(Color, Vec<Color>); 2],
}

fn split_by_enumeration(
    s: &Strategy,
    g1: &Graph,
    side1: &[Vertex],
    v1: Vertex,
    guard: u128,
) -> Result<Split> {
    let q = s.budget().get(side1[0]);
    let count = (q as u128).checked_pow(side1.len() as u32).unwrap_or(u128::MAX);
    if count > guard {
        return Err(GameError::GuardExceeded { what: "side-one colourings", value: count, guard }.into());
    }
    let radices = vec![q; side1.len()];
    let mut by_alpha: BTreeMap<Vec<Color>, BTreeMap<Color, Vec<Color>>> = BTreeMap::new();
    let mut seen = Vec::new();
    for_each_coloring(&radices, |phi| {
        let all_wrong = (0..side1.len()).filter(|&lu| lu != v1).all(|lu| {
            seen.clear();
            seen.extend(g1.neighbors(lu).iter().map(|&w| phi[w]));
            !s.guesses_for(side1[lu], &seen).contains(phi[lu])
        });
        if all_wrong {
            let alpha: Vec<Color> = g1.neighbors(v1).iter().map(|&w| phi[w]).collect();
            by_alpha.entry(alpha).or_default().entry(phi[v1]).or_insert_with(|| phi.to_vec());
        }
    });
    for (alpha, ext) in &by_alpha {
        if ext.len() >= 2 {
            let mut it = ext.iter();
            let (c1, p1) = it.next().expect("two");
            let (c2, p2) = it.next().expect("two");
            return Ok(Split { alpha: alpha.clone(), ends: [(*c1, p1.clone()), (*c2, p2.clone())] });
        }
    }
    let table: BTreeMap<Vec<Color>, Color> =
        by_alpha.iter().map(|(a, ext)| (a.clone(), *ext.keys().next().expect("non-empty"))).collect();
    let witness = side_one_strategy(s, g1, side1, v1, &table)?;
    let context = if by_alpha.is_empty() {
        format!("no colouring of [{}] fools every player but the cut vertex", join(side1))
    } else {
        format!("no neighbour colouring of the cut vertex in [{}] extends with two colours", join(side1))
    };
    Err(ConstructionError::PremiseViolation { context, witness: Box::new(witness) })
}

fn split_by_oracle(
    s: &Strategy,
    g1: &Graph,
    side1: &[Vertex],
    v1: Vertex,
    oracle: &AdversaryOracle,
    log: &mut Log,
) -> Result<Split> {
    let mut table: BTreeMap<Vec<Color>, (Color, Vec<Color>)> = BTreeMap::new();
    loop {
        let guesses: BTreeMap<Vec<Color>, Color> = table.iter().map(|(a, (c, _))| (a.clone(), *c)).collect();
        let strategy = side_one_strategy(s, g1, side1, v1, &guesses)?;
        let phi = log.nested(|log| oracle.run(&strategy, log))?;
        let alpha: Vec<Color> = g1.neighbors(v1).iter().map(|&w| phi.get(w)).collect();
        let c = phi.get(v1);
        match table.get(&alpha) {
            Some((c0, p0)) => {
                let mut ends = [(*c0, p0.clone()), (c, phi.colors().to_vec())];
                ends.sort();
                return Ok(Split { alpha, ends });
            }
            None => {
                table.insert(alpha, (c, phi.colors().to_vec()));
            }
        }
    }
}

fn run_cut_vertex(
    s: &Strategy,
    v: Vertex,
    side1: &[Vertex],
    side2: &[Vertex],
    first: &SideOne,
    sub2: &AdversaryOracle,
    log: &mut Log,
) -> Result<HatAssignment> {
    let g = s.graph();
    let n = g.vertex_count();
    let g1 = g.induced_subgraph(side1);
    let v1 = side1.binary_search(&v).expect("v on side one");
    let split = match first {
        SideOne::Enumerate { guard } => split_by_enumeration(s, &g1, side1, v1, *guard)?,
        SideOne::Oracle(o) => split_by_oracle(s, &g1, side1, v1, o, log)?,
    };
    let (c1, c2) = (split.ends[0].0, split.ends[1].0);
    log.note(|| format!("cut-vertex v={v} alpha=[{}] colours=({c1},{c2})", join(&split.alpha)));
    let mut fixed = vec![None; n];
    for (lu, &u) in side1.iter().enumerate() {
        if u != v {
            fixed[u] = Some(split.ends[0].1[lu]);
        }
    }
    let (s2, labels2) = s.induce(&fixed)?;
    let v2 = labels2.binary_search(&v).expect("v on side two");
    let psi = log.nested(|log| two_at_vertex(&s2, v2, (c1, c2), sub2, log))?;
    let phi = if psi.get(v2) == c1 { &split.ends[0].1 } else { &split.ends[1].1 };
    let mut colors = vec![0 as Color; n];
    for (lu, &u) in side1.iter().enumerate() {
        colors[u] = phi[lu];
    }
    for (lu, &u) in side2.iter().enumerate() {
        colors[u] = psi.get(lu);
    }
    debug_assert_eq!(labels2, side2);
    Ok(HatAssignment::new(colors))
}

/// Builds an oracle for one block (or the block minus one vertex) that
/// refutes two guesses within uniform `ell + 1`.
type BlockPremise<'a> = dyn Fn(&Graph, Option<Vertex>) -> Result<AdversaryOracle> + 'a;

/// One-guess oracle at uniform `ell + 1` on `g`, assuming every block has
/// two-guess number at most `ell`. Terminal blocks are split off one at a
/// time at their cut vertex; the block premises are refuted exhaustively.
pub fn block_oracle(g: &Graph, ell: Color, guards: &Guards) -> Result<AdversaryOracle> {
    let enumeration = guards.enumeration;
    let premise = move |b: &Graph, drop: Option<Vertex>| {
        let (h, claim) = match drop {
            Some(v) => (b.without(&[v]).0, format!("two-guess number of a block minus its cut vertex is at most {ell}")),
            None => (b.clone(), format!("two-guess number of the block is at most {ell}")),
        };
        exhaustive_with_claim(&h, ColorBudget::uniform(h.vertex_count(), ell + 1), GuessCount::Two, enumeration, claim)
    };
    blocks_with(g, ell, guards, &premise)
}

fn blocks_with(g: &Graph, ell: Color, guards: &Guards, premise: &BlockPremise) -> Result<AdversaryOracle> {
    let n = g.vertex_count();
    let budget = ColorBudget::uniform(n, ell + 1);
    if n == 0 {
        return Ok(AdversaryOracle { graph: g.clone(), budget, guess_count: GuessCount::One, node: Node::Empty });
    }
    let comps = g.components();
    if comps.len() > 1 {
        let parts = comps
            .into_iter()
            .map(|c| Ok((c.clone(), blocks_with(&g.induced_subgraph(&c), ell, guards, premise)?)))
            .collect::<Result<Vec<_>>>()?;
        return Ok(AdversaryOracle { graph: g.clone(), budget, guess_count: GuessCount::One, node: Node::Components { parts } });
    }
    let dec = block_decomposition(g);
    let Some(&(b, v)) = dec.terminal_blocks().first() else {
        let sub = premise(g, None)?;
        return relax(g, budget, GuessCount::One, sub);
    };
    let side2 = dec.blocks[b].clone();
    let side1: Vec<Vertex> = g.vertices().filter(|&u| u == v || side2.binary_search(&u).is_err()).collect();
    let g1 = g.induced_subgraph(&side1);
    let g2 = g.induced_subgraph(&side2);
    let v2 = side2.binary_search(&v).expect("cut vertex in block");
    let sub2 = premise(&g2, Some(v2))?;
    let fits = (ell as u128 + 1).checked_pow(side1.len() as u32).is_some_and(|c| c <= guards.enumeration);
    let first = if fits {
        SideOne::Enumerate { guard: guards.enumeration }
    } else {
        SideOne::Oracle(Box::new(blocks_with(&g1, ell, guards, premise)?))
    };
    cut_vertex_oracle(g, v, &side1, &side2, ell, first, sub2)
}

fn relax(g: &Graph, budget: ColorBudget, guess_count: GuessCount, sub: AdversaryOracle) -> Result<AdversaryOracle> {
    if !g.is_spanning_subgraph_of(&sub.graph) || !sub.budget.fits_within(&budget) || sub.guess_count < guess_count {
        return Err(precondition("relaxed oracle must cover a spanning supergraph within the budget"));
    }
    Ok(AdversaryOracle { graph: g.clone(), budget, guess_count, node: Node::Relax { sub: Box::new(sub) } })
}

fn induced(labels: Vec<Vertex>, parent: AdversaryOracle) -> AdversaryOracle {
    let graph = parent.graph.induced_subgraph(&labels);
    let budget = parent.budget.restrict(&labels);
    AdversaryOracle { graph, budget, guess_count: parent.guess_count, node: Node::Induced { labels, parent: Box::new(parent) } }
}

/// `a_{k+1}` colours at each vertex of height `k`, as a colour count.
pub fn closure_budget(tree: &RootedTree) -> Result<ColorBudget> {
    let q = (0..tree.vertex_count())
        .map(|v| {
            let k = tree.height_of(v) as u32 + 1;
            bounds::two_guess_exact(k)
                .and_then(|a| Color::try_from(a).ok())
                .ok_or_else(|| precondition(format!("two-guess sequence term {k} exceeds the colour range")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ColorBudget::new(q)?)
}

/// Two-guess oracle on the closure of `tree` with the sequence budgets.
pub fn closure_oracle(tree: &RootedTree) -> Result<AdversaryOracle> {
    Ok(AdversaryOracle {
        graph: closure(tree),
        budget: closure_budget(tree)?,
        guess_count: GuessCount::Two,
        node: Node::Closure { tree: tree.clone() },
    })
}

/// Colours the closure of `tree` in the given leaf-elimination order: each
/// vertex takes the smallest colour none of its guesses can hit, whatever
/// its uncoloured ancestors wear. `strategy` must be on the closure.
pub fn closure_dodge(strategy: &Strategy, tree: &RootedTree, order: &[Vertex]) -> Result<HatAssignment> {
    if strategy.graph() != &closure(tree) {
        return Err(precondition("strategy is not on the closure of the tree"));
    }
    closure_dodge_logged(strategy, tree, order, &mut Log { lines: None, depth: 0 })
}

fn closure_dodge_logged(s: &Strategy, tree: &RootedTree, order: &[Vertex], log: &mut Log) -> Result<HatAssignment> {
    if !tree.is_leaf_elimination_order(order) {
        return Err(precondition("not a leaf elimination order"));
    }
    let g = s.graph();
    let mut colors: Vec<Option<Color>> = vec![None; g.vertex_count()];
    for &v in order {
        let ranges: Vec<(Color, Color)> = g
            .neighbors(v)
            .iter()
            .map(|&w| colors[w].map_or((0, s.budget().get(w)), |c| (c, c + 1)))
            .collect();
        let c = smallest_missing(&s.guess_union(v, &ranges));
        if c >= s.budget().get(v) {
            return Err(precondition(format!("vertex {v} can be hit by every colour of its budget")));
        }
        log.note(|| format!("closure v={v} height={} colour={c}", tree.height_of(v)));
        colors[v] = Some(c);
    }
    Ok(HatAssignment::new(colors.into_iter().map(|c| c.expect("all coloured")).collect()))
}

/// The circumference pipeline: its oracle, the circumference, the depth
/// bound used for every block and the resulting number of colours.
#[derive(Clone, Debug)]
pub struct CircumferencePipeline {
    pub oracle: AdversaryOracle,
    pub circumference: usize,
    pub depth: u64,
    pub ell: Color,
    pub bound: BigBound,
}

/// Circumference, the block depth bound (2 for forests) and the colour
/// count the players cannot handle, `a_depth`.
pub fn circumference_bound(g: &Graph, guards: &Guards) -> Result<(usize, u64, BigBound)> {
    let c = circumference(g, guards.cycle_vertices)?;
    let d = if c < 3 { 2 } else { bounds::circumference_depth(c as u64) };
    let bound = if d <= bounds::MAX_INDEX as u64 {
        bounds::two_guess_seq(d as u32)
    } else {
        bounds::circ_bound(c as u64)
    }
    .map_err(|e| precondition(e.to_string()))?;
    Ok((c, d, bound))
}

/// One-guess oracle for `g` at uniform `a_d` colours: every block gets a
/// DFS tree whose closure contains it and is refuted by closure dodging,
/// and the blocks are joined at cut vertices. `desk_ell` replaces
/// `a_d - 1` for small experiments; blocks whose closure budgets exceed
/// `desk_ell + 1` are then refuted exhaustively.
pub fn circumference_pipeline(g: &Graph, desk_ell: Option<Color>, guards: &Guards) -> Result<CircumferencePipeline> {
    let (c, d, bound) = circumference_bound(g, guards)?;
    let ell = match desk_ell {
        Some(l) => l,
        None => bound
            .as_integer()
            .and_then(|a| Color::try_from(a).ok())
            .map(|a| a - 1)
            .ok_or_else(|| precondition(format!("{} colours exceed the colour range; use a desk-scale ell", bound.render())))?,
    };
    let enumeration = guards.enumeration;
    let premise = move |b: &Graph, drop: Option<Vertex>| -> Result<AdversaryOracle> {
        let cert = dfs_treedepth_certificate(b, 0)?;
        if cert.depth as u64 > d {
            return Err(precondition(format!("block certificate depth {} exceeds {d}", cert.depth)));
        }
        let within = closure_budget(&cert.tree)
            .ok()
            .filter(|q| q.fits_within(&ColorBudget::uniform(b.vertex_count(), ell + 1)));
        let whole = match within {
            Some(q) => relax(b, q, GuessCount::Two, closure_oracle(&cert.tree)?)?,
            None => {
                let (h, labels) = match drop {
                    Some(v) => b.without(&[v]),
                    None => (b.clone(), b.vertices().collect()),
                };
                let claim = format!("two-guess number of a block on {} vertices is at most {ell}", labels.len());
                return exhaustive_with_claim(&h, ColorBudget::uniform(h.vertex_count(), ell + 1), GuessCount::Two, enumeration, claim);
            }
        };
        Ok(match drop {
            Some(v) => induced(b.vertices().filter(|&u| u != v).collect(), whole),
            None => whole,
        })
    };
    let oracle = blocks_with(g, ell, guards, &premise)?;
    Ok(CircumferencePipeline { oracle, circumference: c, depth: d, ell, bound })
}

/// The forbidden-tree pipeline: its oracle and the colour count bound.
#[derive(Clone, Debug)]
pub struct ForbiddenTreePipeline {
    pub oracle: AdversaryOracle,
    pub bound: BigBound,
}

/// One-guess oracle for a graph with no complete `t`-ary subtree of height
/// `h`. Vertices of degree below `2t^h` are split into colour classes and
/// peeled one class at a time on top of the oracle for the remaining graph
/// at height `h - 1`; height 1 is refuted exhaustively at `⌈et⌉` colours.
pub fn forbidden_tree_pipeline(g: &Graph, t: u64, h: u32, guards: &Guards) -> Result<ForbiddenTreePipeline> {
    let bound = bounds::n_h_t_recursive(h, t).map_err(|e| precondition(e.to_string()))?;
    let (oracle, _) = forbidden_tree_oracle(g, t, h, guards)?;
    Ok(ForbiddenTreePipeline { oracle, bound })
}

fn forbidden_tree_oracle(g: &Graph, t: u64, h: u32, guards: &Guards) -> Result<(AdversaryOracle, Color)> {
    if t < 2 || h < 1 {
        return Err(precondition("needs t >= 2 and h >= 1"));
    }
    if let Some(e) = contains_tary_tree(g, t as usize, h as usize, guards.tree_vertices)? {
        return Err(precondition(format!(
            "graph contains the {t}-ary tree of height {h} on vertices [{}]",
            join(&e.image)
        )));
    }
    if h == 1 {
        let base = bounds::lll_degree_bound_ceil(t)
            .ok()
            .and_then(|b| Color::try_from(b).ok())
            .ok_or_else(|| precondition("base colour count exceeds the colour range"))?;
        let claim = format!("hat guessing number below {base} at maximum degree {}", t - 1);
        let o = exhaustive_with_claim(g, ColorBudget::uniform(g.vertex_count(), base), GuessCount::One, guards.enumeration, claim)?;
        return Ok((o, base));
    }
    let k = bounds::tree_degree_threshold(h, t).ok_or_else(|| precondition("degree threshold overflows"))?;
    let low: Vec<Vertex> = g.vertices().filter(|&v| (g.degree(v) as u64) < k).collect();
    if low.is_empty() && g.vertex_count() > 0 {
        return Err(precondition(format!("no vertex has degree below {k}")));
    }
    let (rest, _) = g.without(&low);
    let (mut oracle, mut ell) = forbidden_tree_oracle(&rest, t, h - 1, guards)?;
    let classes = greedy_proper_coloring(&g.induced_subgraph(&low)).classes;
    let mut present: Vec<bool> = g.vertices().map(|v| low.binary_search(&v).is_err()).collect();
    for class in classes {
        for &i in &class {
            present[low[i]] = true;
        }
        let verts: Vec<Vertex> = g.vertices().filter(|&v| present[v]).collect();
        let cur = g.induced_subgraph(&verts);
        let set: Vec<Vertex> = class.iter().map(|&i| verts.binary_search(&low[i]).expect("present")).collect();
        let r = set.iter().map(|&u| cur.degree(u)).max().unwrap_or(0).max(1) as u32;
        oracle = independent_set_oracle(&cur, &set, r, ell, oracle)?;
        ell = oracle.budget.get(0);
    }
    Ok((oracle, ell))
}

/// Which strategies a verification run draws.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trials {
    /// Every strategy, provided there are at most this many.
    Exhaustive(u128),
    /// This many seeded random strategies.
    Random { count: u64, seed: u64 },
    /// Exhaustive up to the limit, otherwise random.
    Auto { limit: u128, count: u64, seed: u64 },
}

/// Outcome of running an oracle against many strategies.
#[derive(Clone, Debug)]
pub struct Tally {
    pub exhaustive: bool,
    pub checked: u64,
    pub defeated: u64,
    /// The first strategy the oracle failed on, with the reason.
    pub failure: Option<(Strategy, String)>,
}

/// Runs `oracle` against strategies at its own budget and guess count,
/// checking that every returned assignment is within budget and defeating.
/// Premise violations abort the run and are returned as errors.
pub fn verify_oracle(oracle: &AdversaryOracle, trials: Trials) -> Result<Tally> {
    let space = crate::game::StrategySpace::new(&oracle.graph, &oracle.budget, oracle.guess_count)?;
    let size = space.size();
    let (exhaustive, count, seed) = match trials {
        Trials::Exhaustive(limit) => match size.filter(|&s| s <= limit) {
            Some(_) => (true, 0, 0),
            None => {
                return Err(GameError::GuardExceeded { what: "strategy space", value: size.unwrap_or(u128::MAX), guard: limit }.into())
            }
        },
        Trials::Random { count, seed } => (false, count, seed),
        Trials::Auto { limit, count, seed } => (size.is_some_and(|s| s <= limit), count, seed),
    };
    let mut tally = Tally { exhaustive, checked: 0, defeated: 0, failure: None };
    let mut check = |s: Strategy| -> Result<()> {
        tally.checked += 1;
        let reason = match oracle.defeat(&s) {
            Ok(a) if !a.is_within(&oracle.budget) => Some(format!("assignment {a} outside budget {}", oracle.budget)),
            Ok(a) if !s.is_defeating(&a) => Some(format!("assignment {a} does not defeat the strategy")),
            Ok(_) => None,
            Err(e) if e.is_premise_violation() || e.is_guard() => return Err(e),
            Err(e) => Some(e.to_string()),
        };
        match reason {
            None => tally.defeated += 1,
            Some(r) => {
                if tally.failure.is_none() {
                    tally.failure = Some((s, r));
                }
            }
        }
        Ok(())
    };
    if exhaustive {
        for s in space.iter() {
            check(s)?;
        }
    } else {
        let mut rng = crate::rng::SplitMix64::new(seed);
        for _ in 0..count {
            check(Strategy::random(&oracle.graph, &oracle.budget, oracle.guess_count, &mut rng)?)?;
        }
    }
    Ok(tally)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::{complete_graph_sum_strategy, wins_everywhere};

    fn guards() -> Guards {
        Guards::default()
    }

    fn all_defeated(o: &AdversaryOracle, trials: Trials) -> Tally {
        let t = verify_oracle(o, trials).expect("no premise violation");
        assert_eq!(t.defeated, t.checked, "{:?}", t.failure.as_ref().map(|f| &f.1));
        assert!(t.checked > 0);
        t
    }

    #[test]
    fn exhaustive_examples() {
        let k1 = exhaustive_oracle(&Graph::empty(1), ColorBudget::uniform(1, 3), GuessCount::Two, &guards()).unwrap();
        assert!(all_defeated(&k1, Trials::Exhaustive(1000)).exhaustive);
        let k2 = exhaustive_oracle(&Graph::complete(2), ColorBudget::uniform(2, 3), GuessCount::One, &guards()).unwrap();
        all_defeated(&k2, Trials::Exhaustive(100_000));
        let k2 = exhaustive_oracle(&Graph::complete(2), ColorBudget::uniform(2, 2), GuessCount::One, &guards()).unwrap();
        let err = k2.defeat(&complete_graph_sum_strategy(2, GuessCount::One)).unwrap_err();
        assert!(err.is_premise_violation());
    }

    #[test]
    fn independent_set_examples() {
        let g = Graph::path(3);
        let k1 = exhaustive_oracle(&Graph::empty(1), ColorBudget::uniform(1, 2), GuessCount::One, &guards()).unwrap();
        let o = independent_set_oracle(&g, &[0, 2], 1, 2, k1).unwrap();
        assert_eq!(o.budget(), &ColorBudget::uniform(3, 3));
        all_defeated(&o, Trials::Random { count: 200, seed: 1 });
        let k1 = exhaustive_oracle(&Graph::empty(1), ColorBudget::uniform(1, 3), GuessCount::One, &guards()).unwrap();
        let o = independent_set_oracle(&g, &[0, 2], 1, 3, k1).unwrap();
        assert_eq!(o.budget(), &ColorBudget::uniform(3, 4));
        let mut rng = crate::rng::SplitMix64::new(2);
        for _ in 0..200 {
            let s = Strategy::random(&g, o.budget(), GuessCount::One, &mut rng).unwrap();
            let a = o.defeat(&s).unwrap();
            assert!(a.get(1) < 3);
        }
        assert!(independent_set_oracle(&g, &[0, 1], 2, 3, o.clone()).is_err());
    }

    #[test]
    fn two_at_vertex_examples() {
        let k1 = exhaustive_oracle(&Graph::empty(1), ColorBudget::uniform(1, 3), GuessCount::Two, &guards()).unwrap();
        let o = two_at_vertex_oracle(&Graph::complete(2), 0, (0, 1), 2, k1).unwrap();
        assert_eq!(o.budget(), &ColorBudget::new(vec![2, 3]).unwrap());
        assert!(all_defeated(&o, Trials::Exhaustive(100_000)).exhaustive);
    }

    #[test]
    fn cut_vertex_examples() {
        let o = cut_vertex_oracle_exhaustive(&Graph::path(3), 1, &[0, 1], &[1, 2], 4, &guards()).unwrap();
        all_defeated(&o, Trials::Random { count: 100, seed: 3 });
        let k2 = Graph::complete(2);
        let o = cut_vertex_oracle_exhaustive(&k2, 0, &[0, 1], &[0], 1, &guards()).unwrap();
        match o.defeat(&complete_graph_sum_strategy(2, GuessCount::One)) {
            Err(ConstructionError::PremiseViolation { witness, .. }) => {
                assert!(wins_everywhere(&witness, witness.budget()));
            }
            other => panic!("expected a premise violation, got {other:?}"),
        }
    }

    #[test]
    fn closure_examples() {
        let single = RootedTree::from_parents(vec![None]).unwrap();
        let o = closure_oracle(&single).unwrap();
        assert_eq!(o.budget(), &ColorBudget::uniform(1, 3));
        all_defeated(&o, Trials::Exhaustive(1000));
        let star = RootedTree::from_parents(vec![None, Some(0), Some(0)]).unwrap();
        let o = closure_oracle(&star).unwrap();
        assert_eq!(o.budget(), &ColorBudget::new(vec![3, 7, 7]).unwrap());
        all_defeated(&o, Trials::Random { count: 200, seed: 4 });
    }

    #[test]
    fn block_and_pipeline_examples() {
        let o = block_oracle(&Graph::path(4), 4, &guards()).unwrap();
        all_defeated(&o, Trials::Random { count: 50, seed: 5 });
        let cactus = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        let p = circumference_pipeline(&cactus, Some(6), &guards()).unwrap();
        assert_eq!((p.circumference, p.depth), (3, 4));
        assert_eq!(p.bound.as_integer().unwrap(), 1807u32.into());
        all_defeated(&p.oracle, Trials::Random { count: 20, seed: 6 });
        let p = circumference_pipeline(&cactus, Some(42), &guards()).unwrap();
        assert!(p.oracle.describe().contains("closure"));
        all_defeated(&p.oracle, Trials::Random { count: 5, seed: 6 });
        let p = forbidden_tree_pipeline(&Graph::path(4), 2, 2, &guards()).unwrap();
        all_defeated(&p.oracle, Trials::Random { count: 20, seed: 7 });
    }
}
