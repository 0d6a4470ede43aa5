//! The hat guessing game as a colouring problem.
//!
//! A [`Strategy`] holds one guess table per vertex. The table of `v` is total
//! over colourings of `N(v)` and is stored densely: a neighbourhood colouring
//! `(c_1, .., c_d)` (neighbours ascending) lives at the mixed-radix index
//! `sum c_i * prod_{j > i} q(n_j)`, so index order is lexicographic order.

use std::fmt;

use crate::error::GameError;
use crate::graph::{Graph, Vertex};
use crate::rng::SplitMix64;

pub type Color = u32;

/// How many guesses each player makes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GuessCount {
    One,
    Two,
}

impl GuessCount {
    pub fn get(self) -> usize {
        match self {
            GuessCount::One => 1,
            GuessCount::Two => 2,
        }
    }

    pub fn from_count(n: usize) -> Option<Self> {
        match n {
            1 => Some(GuessCount::One),
            2 => Some(GuessCount::Two),
            _ => None,
        }
    }
}

impl fmt::Display for GuessCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.get())
    }
}

/// A set of one or two guessed colours. Stored sorted; equal entries mean a
/// singleton.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GuessSet([Color; 2]);

impl GuessSet {
    pub fn one(c: Color) -> Self {
        GuessSet([c, c])
    }

    pub fn pair(a: Color, b: Color) -> Self {
        GuessSet([a.min(b), a.max(b)])
    }

    #[inline]
    pub fn contains(self, c: Color) -> bool {
        self.0[0] == c || self.0[1] == c
    }

    pub fn len(self) -> usize {
        if self.0[0] == self.0[1] {
            1
        } else {
            2
        }
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn lowest(self) -> Color {
        self.0[0]
    }

    pub fn highest(self) -> Color {
        self.0[1]
    }

    pub fn iter(self) -> impl Iterator<Item = Color> {
        let n = self.len();
        self.0.into_iter().take(n)
    }

    /// Union of two sets, `None` if it would hold more than two colours.
    pub fn union(self, other: GuessSet) -> Option<GuessSet> {
        let mut cs: Vec<Color> = self.iter().chain(other.iter()).collect();
        cs.sort_unstable();
        cs.dedup();
        match cs[..] {
            [a] => Some(GuessSet::one(a)),
            [a, b] => Some(GuessSet::pair(a, b)),
            _ => None,
        }
    }

    /// Drops guesses `>= bound`; a set left empty becomes `{0}`.
    fn clamp(self, bound: Color) -> GuessSet {
        match (self.0[0] < bound, self.0[1] < bound) {
            (true, true) => self,
            (true, false) => GuessSet::one(self.0[0]),
            _ => GuessSet::one(0),
        }
    }
}

impl fmt::Display for GuessSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "{} {}", self.0[0], self.0[1])
        }
    }
}

/// Per-vertex number of colours available to the adversary; colours at `v`
/// are `0..q(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColorBudget(Vec<Color>);

impl ColorBudget {
    pub fn new(q: Vec<Color>) -> Result<Self, GameError> {
        if let Some(v) = q.iter().position(|&c| c == 0) {
            return Err(GameError::EmptyBudget(v));
        }
        Ok(ColorBudget(q))
    }

    pub fn uniform(n: usize, q: Color) -> Self {
        assert!(q >= 1, "budgets are positive");
        ColorBudget(vec![q; n])
    }

    #[inline]
    pub fn get(&self, v: Vertex) -> Color {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of hat assignments, `None` on overflow.
    pub fn assignment_count(&self) -> Option<u128> {
        self.0.iter().try_fold(1u128, |acc, &q| acc.checked_mul(q as u128))
    }

    pub fn uniform_value(&self) -> Option<Color> {
        let first = *self.0.first()?;
        self.0.iter().all(|&q| q == first).then_some(first)
    }

    /// Pointwise `self <= other`.
    pub fn fits_within(&self, other: &ColorBudget) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn restrict(&self, labels: &[Vertex]) -> ColorBudget {
        ColorBudget(labels.iter().map(|&v| self.0[v]).collect())
    }

    pub fn check_graph(&self, g: &Graph) -> Result<(), GameError> {
        if self.len() != g.vertex_count() {
            return Err(GameError::BudgetLength { budget: self.len(), n: g.vertex_count() });
        }
        Ok(())
    }
}

impl fmt::Display for ColorBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.uniform_value() {
            Some(q) => write!(f, "uniform {q}"),
            None => write!(f, "{}", join(&self.0)),
        }
    }
}

/// One hat colour per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HatAssignment(Vec<Color>);

impl HatAssignment {
    pub fn new(colors: Vec<Color>) -> Self {
        HatAssignment(colors)
    }

    #[inline]
    pub fn get(&self, v: Vertex) -> Color {
        self.0[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_within(&self, budget: &ColorBudget) -> bool {
        self.len() == budget.len() && self.0.iter().enumerate().all(|(v, &c)| c < budget.get(v))
    }

    pub fn check_within(&self, budget: &ColorBudget) -> Result<(), GameError> {
        if self.len() != budget.len() {
            return Err(GameError::BudgetLength { budget: budget.len(), n: self.len() });
        }
        for (v, &c) in self.0.iter().enumerate() {
            if c >= budget.get(v) {
                return Err(GameError::ColorOutOfBudget { vertex: v, color: c, budget: budget.get(v) });
            }
        }
        Ok(())
    }
}

impl fmt::Display for HatAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

/// Colours of some vertices, `None` where unassigned.
pub type PartialAssignment = Vec<Option<Color>>;

fn join(xs: &[Color]) -> String {
    xs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

/// Visits every colouring of a list of digits with the given radices in
/// lexicographic order (last digit fastest).
pub fn for_each_coloring(radices: &[Color], mut f: impl FnMut(&[Color])) {
    if radices.contains(&0) {
        return;
    }
    let mut digits = vec![0 as Color; radices.len()];
    loop {
        f(&digits);
        let mut i = radices.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < radices[i] {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// All assignments within `budget`, lexicographically.
pub fn enumerate_assignments(
    budget: &ColorBudget,
    guard: u128,
) -> Result<impl Iterator<Item = HatAssignment>, GameError> {
    let count = budget.assignment_count().unwrap_or(u128::MAX);
    if count > guard {
        return Err(GameError::GuardExceeded { what: "assignment count", value: count, guard });
    }
    let radices = budget.as_slice().to_vec();
    let mut next = Some(vec![0 as Color; radices.len()]);
    Ok(std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < radices[i] {
                next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(HatAssignment(cur))
    }))
}

/// Deterministic guessing strategy: one total guess table per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct Strategy {
    graph: Graph,
    budget: ColorBudget,
    guess_count: GuessCount,
    /// Mixed-radix weight of each neighbour, aligned with `graph.neighbors(v)`.
    weights: Vec<Vec<usize>>,
    tables: Vec<Vec<GuessSet>>,
}

impl fmt::Debug for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Strategy")
            .field("graph", &self.graph)
            .field("budget", &self.budget)
            .field("guess_count", &self.guess_count)
            .field("entries", &self.entry_count())
            .finish()
    }
}

/// Largest total table size a strategy may be materialized with.
pub const MAX_TABLE_ENTRIES: u128 = 1 << 26;

fn mixed_radix_weights(
    graph: &Graph,
    budget: &ColorBudget,
) -> Result<(Vec<Vec<usize>>, Vec<usize>), GameError> {
    let mut weights = Vec::with_capacity(graph.vertex_count());
    let mut sizes = Vec::with_capacity(graph.vertex_count());
    for v in graph.vertices() {
        let nbrs = graph.neighbors(v);
        let mut w = vec![0usize; nbrs.len()];
        let mut acc: usize = 1;
        for i in (0..nbrs.len()).rev() {
            w[i] = acc;
            acc = acc.checked_mul(budget.get(nbrs[i]) as usize).ok_or(GameError::GuardExceeded {
                what: "table size",
                value: u128::MAX,
                guard: usize::MAX as u128,
            })?;
        }
        weights.push(w);
        sizes.push(acc);
    }
    let total: u128 = sizes.iter().map(|&s| s as u128).sum();
    if total > MAX_TABLE_ENTRIES {
        return Err(GameError::GuardExceeded { what: "strategy table entries", value: total, guard: MAX_TABLE_ENTRIES });
    }
    Ok((weights, sizes))
}

/// Total number of table entries a strategy on `graph` under `budget` has.
pub fn table_entry_count(graph: &Graph, budget: &ColorBudget) -> Option<u128> {
    graph.vertices().try_fold(0u128, |acc, v| {
        let size = graph
            .neighbors(v)
            .iter()
            .try_fold(1u128, |s, &w| s.checked_mul(budget.get(w) as u128))?;
        acc.checked_add(size)
    })
}

impl Strategy {
    /// Builds a strategy by calling `f(v, neighbourhood colouring)` for every
    /// table entry, in vertex order and then lexicographic order.
    pub fn from_fn(
        graph: &Graph,
        budget: &ColorBudget,
        guess_count: GuessCount,
        mut f: impl FnMut(Vertex, &[Color]) -> GuessSet,
    ) -> Result<Self, GameError> {
        budget.check_graph(graph)?;
        let (weights, _) = mixed_radix_weights(graph, budget)?;
        let mut tables = Vec::with_capacity(graph.vertex_count());
        for v in graph.vertices() {
            let radices: Vec<Color> = graph.neighbors(v).iter().map(|&w| budget.get(w)).collect();
            let mut table = Vec::new();
            for_each_coloring(&radices, |cs| table.push(f(v, cs)));
            tables.push(table);
        }
        Strategy::assemble(graph.clone(), budget.clone(), guess_count, weights, tables)
    }

    pub fn from_tables(
        graph: &Graph,
        budget: &ColorBudget,
        guess_count: GuessCount,
        tables: Vec<Vec<GuessSet>>,
    ) -> Result<Self, GameError> {
        budget.check_graph(graph)?;
        let (weights, sizes) = mixed_radix_weights(graph, budget)?;
        if tables.len() != graph.vertex_count() {
            return Err(GameError::TableSize { vertex: tables.len(), expected: 0, found: 0 });
        }
        for (v, t) in tables.iter().enumerate() {
            if t.len() != sizes[v] {
                return Err(GameError::TableSize { vertex: v, expected: sizes[v], found: t.len() });
            }
        }
        Strategy::assemble(graph.clone(), budget.clone(), guess_count, weights, tables)
    }

    fn assemble(
        graph: Graph,
        budget: ColorBudget,
        guess_count: GuessCount,
        weights: Vec<Vec<usize>>,
        tables: Vec<Vec<GuessSet>>,
    ) -> Result<Self, GameError> {
        for (v, table) in tables.iter().enumerate() {
            for g in table {
                if g.len() > guess_count.get() {
                    return Err(GameError::TooManyGuesses { size: g.len(), allowed: guess_count.get() });
                }
                if g.highest() >= budget.get(v) {
                    return Err(GameError::ColorOutOfBudget { vertex: v, color: g.highest(), budget: budget.get(v) });
                }
            }
        }
        Ok(Strategy { graph, budget, guess_count, weights, tables })
    }

    /// Every entry drawn independently: one uniform colour, or for two
    /// guesses two independent uniform colours (a repeat collapses to one).
    pub fn random(
        graph: &Graph,
        budget: &ColorBudget,
        guess_count: GuessCount,
        rng: &mut SplitMix64,
    ) -> Result<Self, GameError> {
        Strategy::from_fn(graph, budget, guess_count, |v, _| {
            let q = budget.get(v) as u64;
            let a = rng.below(q) as Color;
            match guess_count {
                GuessCount::One => GuessSet::one(a),
                GuessCount::Two => GuessSet::pair(a, rng.below(q) as Color),
            }
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn budget(&self) -> &ColorBudget {
        &self.budget
    }

    pub fn guess_count(&self) -> GuessCount {
        self.guess_count
    }

    pub fn table(&self, v: Vertex) -> &[GuessSet] {
        &self.tables[v]
    }

    pub fn entry_count(&self) -> usize {
        self.tables.iter().map(Vec::len).sum()
    }

    /// Table position of the neighbourhood colouring `colors` (ascending
    /// neighbour order).
    #[inline]
    pub fn entry_index(&self, v: Vertex, colors: &[Color]) -> usize {
        self.weights[v].iter().zip(colors).map(|(&w, &c)| w * c as usize).sum()
    }

    /// Neighbourhood colouring stored at `index`.
    pub fn decode_entry(&self, v: Vertex, mut index: usize) -> Vec<Color> {
        self.weights[v]
            .iter()
            .map(|&w| {
                let c = index / w;
                index %= w;
                c as Color
            })
            .collect()
    }

    #[inline]
    pub fn guesses_for(&self, v: Vertex, colors: &[Color]) -> GuessSet {
        self.tables[v][self.entry_index(v, colors)]
    }

    /// The guess set of `v` under `assignment`.
    #[inline]
    pub fn guesses_at(&self, v: Vertex, assignment: &HatAssignment) -> GuessSet {
        let idx: usize = self.graph.neighbors(v)
            .iter()
            .zip(&self.weights[v])
            .map(|(&w, &wt)| wt * assignment.get(w) as usize)
            .sum();
        self.tables[v][idx]
    }

    /// Guess set of `v` when the colours of all vertices are read from
    /// `colors` (only the neighbours' entries are used).
    #[inline]
    pub fn guesses_in(&self, v: Vertex, colors: &[Color]) -> GuessSet {
        let idx: usize = self.graph.neighbors(v)
            .iter()
            .zip(&self.weights[v])
            .map(|(&w, &wt)| wt * colors[w] as usize)
            .sum();
        self.tables[v][idx]
    }

    /// Every player misses.
    pub fn is_defeating(&self, assignment: &HatAssignment) -> bool {
        self.graph
            .vertices()
            .all(|v| !self.guesses_at(v, assignment).contains(assignment.get(v)))
    }

    /// All colours `v` guesses as each neighbour `w` ranges over
    /// `ranges[i].0 .. ranges[i].1` (aligned with `neighbors(v)`). Sorted.
    pub fn guess_union(&self, v: Vertex, ranges: &[(Color, Color)]) -> Vec<Color> {
        let radices: Vec<Color> = ranges.iter().map(|&(lo, hi)| hi.saturating_sub(lo)).collect();
        let mut seen = std::collections::BTreeSet::new();
        let mut colors = vec![0; ranges.len()];
        for_each_coloring(&radices, |d| {
            for (i, &x) in d.iter().enumerate() {
                colors[i] = ranges[i].0 + x;
            }
            seen.extend(self.guesses_for(v, &colors).iter());
        });
        seen.into_iter().collect()
    }

    /// Pins the vertices with `fixed[v] = Some(c)` and returns the strategy
    /// the remaining players follow on the induced subgraph, plus the
    /// original labels of those players.
    pub fn induce(&self, fixed: &[Option<Color>]) -> Result<(Strategy, Vec<Vertex>), GameError> {
        for (v, c) in fixed.iter().enumerate() {
            if let Some(c) = *c {
                if c >= self.budget.get(v) {
                    return Err(GameError::ColorOutOfBudget { vertex: v, color: c, budget: self.budget.get(v) });
                }
            }
        }
        let removed: Vec<Vertex> = self.graph.vertices().filter(|&v| fixed[v].is_some()).collect();
        let (sub, labels) = self.graph.without(&removed);
        let budget = self.budget.restrict(&labels);
        let mut full = vec![0 as Color; self.graph.vertex_count()];
        for (v, c) in fixed.iter().enumerate() {
            if let Some(c) = *c {
                full[v] = c;
            }
        }
        let mut local_colors = Vec::new();
        let strategy = Strategy::from_fn(&sub, &budget, self.guess_count, |lv, cs| {
            let v = labels[lv];
            for (&w, &c) in sub.neighbors(lv).iter().zip(cs) {
                full[labels[w]] = c;
            }
            local_colors.clear();
            local_colors.extend(self.graph.neighbors(v).iter().map(|&w| full[w]));
            self.guesses_for(v, &local_colors)
        })?;
        Ok((strategy, labels))
    }

    /// The same strategy played against a smaller budget. Guesses outside
    /// the new budget can never be right, so they are dropped (an emptied
    /// set becomes `{0}`); any assignment defeating the result also defeats
    /// `self`.
    pub fn restrict_budget(&self, budget: &ColorBudget) -> Result<Strategy, GameError> {
        if !budget.fits_within(&self.budget) {
            return Err(GameError::Mismatch);
        }
        if budget == &self.budget {
            return Ok(self.clone());
        }
        Strategy::from_fn(&self.graph, budget, self.guess_count, |v, cs| {
            self.guesses_for(v, cs).clamp(budget.get(v))
        })
    }

    /// Re-expresses the strategy on a supergraph with the same vertex set:
    /// every player ignores the extra neighbours.
    pub fn lift_to_supergraph(&self, sup: &Graph) -> Result<Strategy, GameError> {
        if !self.graph.is_spanning_subgraph_of(sup) {
            return Err(GameError::Mismatch);
        }
        let mut picked = Vec::new();
        Strategy::from_fn(sup, &self.budget, self.guess_count, |v, cs| {
            picked.clear();
            let sup_nbrs = sup.neighbors(v);
            for &w in self.graph.neighbors(v) {
                let i = sup_nbrs.binary_search(&w).expect("subgraph neighbour");
                picked.push(cs[i]);
            }
            self.guesses_for(v, &picked)
        })
    }

    /// Extends a strategy on the induced subgraph `parent[labels]` to all of
    /// `parent`: the original players ignore neighbours outside `labels`,
    /// every other vertex guesses the constant `{0}` (or `{0, 1}` when two
    /// guesses are allowed and its budget has room).
    pub fn embed_into(
        &self,
        parent: &Graph,
        labels: &[Vertex],
        outside_budget: &ColorBudget,
    ) -> Result<Strategy, GameError> {
        if parent.induced_subgraph(labels) != self.graph {
            return Err(GameError::Mismatch);
        }
        let mut local = vec![usize::MAX; parent.vertex_count()];
        for (i, &v) in labels.iter().enumerate() {
            local[v] = i;
        }
        let budget = ColorBudget::new(
            parent
                .vertices()
                .map(|v| if local[v] != usize::MAX { self.budget.get(local[v]) } else { outside_budget.get(v) })
                .collect(),
        )?;
        let mut picked = Vec::new();
        Strategy::from_fn(parent, &budget, self.guess_count, |v, cs| {
            if local[v] == usize::MAX {
                return match self.guess_count {
                    GuessCount::Two if budget.get(v) >= 2 => GuessSet::pair(0, 1),
                    _ => GuessSet::one(0),
                };
            }
            picked.clear();
            for (&w, &c) in parent.neighbors(v).iter().zip(cs) {
                if local[w] != usize::MAX {
                    picked.push(c);
                }
            }
            self.guesses_for(local[v], &picked)
        })
    }

    /// Same tables, viewed as a two-guess strategy.
    pub fn into_two_guess(mut self) -> Strategy {
        self.guess_count = GuessCount::Two;
        self
    }

    /// Renders the strategy as `guesses g` followed by one line
    /// `v <index> <guesses..>` per table entry.
    pub fn to_text(&self) -> String {
        let mut s = format!("guesses {}\n", self.guess_count);
        for (v, table) in self.tables.iter().enumerate() {
            for (i, g) in table.iter().enumerate() {
                s.push_str(&format!("{v} {i} {g}\n"));
            }
        }
        s
    }

    /// Parses [`Strategy::to_text`] output for a known graph and budget.
    pub fn from_text(graph: &Graph, budget: &ColorBudget, text: &str) -> Result<Strategy, GameError> {
        let bad = |m: &str| GameError::Format(m.to_string());
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| bad("empty"))?;
        let count = header
            .strip_prefix("guesses ")
            .and_then(|g| g.trim().parse::<usize>().ok())
            .and_then(GuessCount::from_count)
            .ok_or_else(|| bad("header must be `guesses 1|2`"))?;
        budget.check_graph(graph)?;
        let (_, sizes) = mixed_radix_weights(graph, budget)?;
        let mut tables: Vec<Vec<Option<GuessSet>>> = sizes.iter().map(|&s| vec![None; s]).collect();
        for line in lines {
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| bad(line)))
                .collect::<Result<_, _>>()?;
            let (v, i, set) = match nums[..] {
                [v, i, a] => (v, i, GuessSet::one(a as Color)),
                [v, i, a, b] => (v, i, GuessSet::pair(a as Color, b as Color)),
                _ => return Err(bad(line)),
            };
            let slot = tables.get_mut(v).and_then(|t| t.get_mut(i)).ok_or_else(|| bad(line))?;
            *slot = Some(set);
        }
        let tables = tables
            .into_iter()
            .map(|t| t.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| bad("missing entries")))
            .collect::<Result<Vec<_>, _>>()?;
        Strategy::from_tables(graph, budget, count, tables)
    }
}

/// Per-entry union of two one-guess strategies on the same graph and budget.
pub fn merge_two_guess(a: &Strategy, b: &Strategy) -> Result<Strategy, GameError> {
    if a.graph != b.graph || a.budget != b.budget {
        return Err(GameError::Mismatch);
    }
    let tables = a
        .tables
        .iter()
        .zip(&b.tables)
        .map(|(ta, tb)| {
            ta.iter()
                .zip(tb)
                .map(|(x, y)| x.union(*y).ok_or(GameError::TooManyGuesses { size: 3, allowed: 2 }))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Strategy::from_tables(&a.graph, &a.budget, GuessCount::Two, tables)
}

/// Every guess set a vertex with budget `q` may use: all colours, plus all
/// pairs for two guesses.
pub fn guess_values(q: Color, guess_count: GuessCount) -> Vec<GuessSet> {
    let mut out: Vec<GuessSet> = (0..q).map(GuessSet::one).collect();
    if guess_count == GuessCount::Two {
        for a in 0..q {
            for b in a + 1..q {
                out.push(GuessSet::pair(a, b));
            }
        }
    }
    out
}

/// The full strategy space of a game, enumerated entry by entry.
pub struct StrategySpace {
    graph: Graph,
    budget: ColorBudget,
    guess_count: GuessCount,
    values: Vec<Vec<GuessSet>>,
    sizes: Vec<usize>,
}

impl StrategySpace {
    pub fn new(graph: &Graph, budget: &ColorBudget, guess_count: GuessCount) -> Result<Self, GameError> {
        budget.check_graph(graph)?;
        let (_, sizes) = mixed_radix_weights(graph, budget)?;
        let values = graph.vertices().map(|v| guess_values(budget.get(v), guess_count)).collect();
        Ok(StrategySpace { graph: graph.clone(), budget: budget.clone(), guess_count, values, sizes })
    }

    /// Number of strategies, `None` on overflow.
    pub fn size(&self) -> Option<u128> {
        let mut total: u128 = 1;
        for (v, &s) in self.sizes.iter().enumerate() {
            for _ in 0..s {
                total = total.checked_mul(self.values[v].len() as u128)?;
            }
        }
        Some(total)
    }

    /// Lexicographic odometer over all tables.
    pub fn iter(&self) -> impl Iterator<Item = Strategy> + '_ {
        let mut digits: Option<Vec<Vec<usize>>> = Some(self.sizes.iter().map(|&s| vec![0; s]).collect());
        std::iter::from_fn(move || {
            let cur = digits.take()?;
            let tables = cur
                .iter()
                .enumerate()
                .map(|(v, t)| t.iter().map(|&d| self.values[v][d]).collect())
                .collect();
            let strategy = Strategy::from_tables(&self.graph, &self.budget, self.guess_count, tables)
                .expect("values are within budget");
            let mut next = cur;
            'advance: for v in (0..next.len()).rev() {
                for i in (0..next[v].len()).rev() {
                    next[v][i] += 1;
                    if next[v][i] < self.values[v].len() {
                        digits = Some(next);
                        break 'advance;
                    }
                    next[v][i] = 0;
                }
            }
            Some(strategy)
        })
    }
}
