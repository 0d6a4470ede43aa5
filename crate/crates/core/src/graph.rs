//! Simple undirected graphs and the structural algorithms the adversary
//! constructions consume: block decomposition, DFS treedepth certificates,
//! tree closures, circumference, greedy colouring and t-ary tree detection.
//!
//! Vertices are dense `usize` indices starting at zero. Every iteration is in
//! ascending vertex order so that search results are reproducible.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{GraphError, ParseError};

/// Vertex index.
pub type Vertex = usize;

/// A simple undirected graph: no self-loops, no parallel edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.vertex_count())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).expect("fresh edge");
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v).expect("fresh edge");
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(0, n - 1).expect("fresh edge");
        }
        g
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        match self.adjacency[u].binary_search(&v) {
            Ok(_) => Err(GraphError::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => {
                self.adjacency[u].insert(pos, v);
                let pos = self.adjacency[v].binary_search(&u).unwrap_err();
                self.adjacency[v].insert(pos, u);
                self.edge_count += 1;
                Ok(())
            }
        }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbour list of `v`.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.vertex_count()
    }

    /// Subgraph induced by `vertices` (which must be sorted and distinct).
    /// Vertex `vertices[i]` becomes vertex `i`.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Graph {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let mut local = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let adjacency: Vec<Vec<Vertex>> = vertices
            .iter()
            .map(|&v| {
                self.adjacency[v]
                    .iter()
                    .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                    .collect()
            })
            .collect();
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            adjacency,
            edge_count,
        }
    }

    /// Induced subgraph on the complement of `removed`, together with the
    /// original labels of the surviving vertices.
    pub fn without(&self, removed: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut keep = vec![true; self.vertex_count()];
        for &v in removed {
            keep[v] = false;
        }
        let labels: Vec<Vertex> = self.vertices().filter(|&v| keep[v]).collect();
        (self.induced_subgraph(&labels), labels)
    }

    /// `true` if every edge of `self` is an edge of `other` and both have the
    /// same vertex set.
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.vertex_count() == other.vertex_count()
            && self.edges().all(|(u, v)| other.has_edge(u, v))
    }

    pub fn is_independent(&self, set: &[Vertex]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// Parses the edge-list format: a header line `n m` followed by `m` lines
/// `u v`. Blank lines and `#` comments are ignored.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, m) = parse_pair(hline, header)?;
    let mut g = Graph::empty(n);
    let mut seen = 0usize;
    for (line, body) in lines {
        let (u, v) = parse_pair(line, body)?;
        if seen == m {
            return Err(ParseError::EdgeCountMismatch { declared: m, found: seen + 1 });
        }
        if u >= n || v >= n {
            return Err(ParseError::VertexOutOfRange { line, vertex: u.max(v), n });
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        if g.has_edge(u, v) {
            return Err(ParseError::DuplicateEdge { line, u: u.min(v), v: u.max(v) });
        }
        g.add_edge(u, v).expect("validated above");
        seen += 1;
    }
    if seen != m {
        return Err(ParseError::EdgeCountMismatch { declared: m, found: seen });
    }
    Ok(g)
}

fn parse_pair(line: usize, body: &str) -> Result<(usize, usize), ParseError> {
    let malformed = || ParseError::Malformed { line, content: body.to_string() };
    let mut it = body.split_whitespace();
    let a = it.next().ok_or_else(malformed)?.parse().map_err(|_| malformed())?;
    let b = it.next().ok_or_else(malformed)?.parse().map_err(|_| malformed())?;
    if it.next().is_some() {
        return Err(malformed());
    }
    Ok((a, b))
}

/// Renders a graph in the edge-list format accepted by [`parse_graph`].
pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// A rooted tree on vertices `0..n`, stored as a parent array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    parent: Vec<Option<Vertex>>,
    root: Vertex,
    height: Vec<usize>,
}

impl RootedTree {
    /// Builds a tree from a parent array. Exactly one vertex must have no
    /// parent and every parent chain must reach it.
    pub fn from_parents(parent: Vec<Option<Vertex>>) -> Result<Self, GraphError> {
        let n = parent.len();
        let roots: Vec<Vertex> = (0..n).filter(|&v| parent[v].is_none()).collect();
        let [root] = roots[..] else {
            return Err(GraphError::NotATree(format!("{} roots", roots.len())));
        };
        let mut height = vec![usize::MAX; n];
        height[root] = 0;
        for v in 0..n {
            let mut chain = Vec::new();
            let mut cur = v;
            while height[cur] == usize::MAX {
                chain.push(cur);
                cur = match parent[cur] {
                    Some(p) if p < n => p,
                    Some(p) => return Err(GraphError::VertexOutOfRange { vertex: p, n }),
                    None => unreachable!("only the root lacks a parent"),
                };
                if chain.len() > n {
                    return Err(GraphError::NotATree("parent links contain a cycle".into()));
                }
            }
            let mut h = height[cur];
            for &w in chain.iter().rev() {
                h += 1;
                height[w] = h;
            }
        }
        Ok(RootedTree { parent, root, height })
    }

    /// A rooted tree from an (undirected) tree graph and a root.
    pub fn from_graph(g: &Graph, root: Vertex) -> Result<Self, GraphError> {
        let n = g.vertex_count();
        if root >= n {
            return Err(GraphError::VertexOutOfRange { vertex: root, n });
        }
        if g.edge_count() + 1 != n || !g.is_connected() {
            return Err(GraphError::NotATree("graph is not a tree".into()));
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        RootedTree::from_parents(parent)
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<Vertex>] {
        &self.parent
    }

    /// Distance from the root.
    pub fn height_of(&self, v: Vertex) -> usize {
        self.height[v]
    }

    /// Maximum height over all vertices.
    pub fn height(&self) -> usize {
        self.height.iter().copied().max().unwrap_or(0)
    }

    /// Proper ancestors of `v`, nearest first.
    pub fn ancestors(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.height[v]);
        let mut cur = self.parent[v];
        while let Some(p) = cur {
            out.push(p);
            cur = self.parent[p];
        }
        out
    }

    pub fn is_ancestor(&self, a: Vertex, v: Vertex) -> bool {
        let mut cur = self.parent[v];
        while let Some(p) = cur {
            if p == a {
                return true;
            }
            cur = self.parent[p];
        }
        false
    }

    pub fn children(&self, v: Vertex) -> Vec<Vertex> {
        (0..self.vertex_count()).filter(|&w| self.parent[w] == Some(v)).collect()
    }

    /// The tree's own edges as a graph.
    pub fn as_graph(&self) -> Graph {
        let mut g = Graph::empty(self.vertex_count());
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                g.add_edge(v, p).expect("tree edges are distinct");
            }
        }
        g
    }

    /// An elimination order in which every vertex is a leaf of the tree that
    /// remains after removing its predecessors: deepest first, ties broken by
    /// larger index.
    pub fn leaf_elimination_order(&self) -> Vec<Vertex> {
        let mut order: Vec<Vertex> = (0..self.vertex_count()).collect();
        order.sort_by(|&a, &b| self.height[b].cmp(&self.height[a]).then(b.cmp(&a)));
        order
    }

    /// `true` if each vertex of `order` is a leaf once its predecessors are
    /// removed and `order` is a permutation of the vertices.
    pub fn is_leaf_elimination_order(&self, order: &[Vertex]) -> bool {
        let n = self.vertex_count();
        if order.len() != n {
            return false;
        }
        let mut live_children = vec![0usize; n];
        for p in self.parent.iter().flatten() {
            live_children[*p] += 1;
        }
        let mut removed = vec![false; n];
        for &v in order {
            if v >= n || removed[v] || live_children[v] != 0 {
                return false;
            }
            removed[v] = true;
            if let Some(p) = self.parent[v] {
                live_children[p] -= 1;
            }
        }
        true
    }

    /// Parent array rendered as space-separated entries, `-` for the root.
    pub fn render_parents(&self) -> String {
        self.parent
            .iter()
            .map(|p| p.map_or_else(|| "-".to_string(), |p| p.to_string()))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// The closure of a rooted tree: every ancestor-descendant pair is joined.
pub fn closure(tree: &RootedTree) -> Graph {
    let mut g = Graph::empty(tree.vertex_count());
    for v in 0..tree.vertex_count() {
        for a in tree.ancestors(v) {
            g.add_edge(a, v).expect("each pair added once");
        }
    }
    g
}

/// Blocks (maximal two-connected subgraphs, bridges and isolated vertices)
/// together with the cut vertices joining them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Sorted vertex lists, ordered by smallest vertex then lexicographically.
    pub blocks: Vec<Vec<Vertex>>,
    /// Sorted cut vertices.
    pub cut_vertices: Vec<Vertex>,
    /// Block-cut tree incidences `(block index, cut vertex)`, sorted.
    pub block_tree: Vec<(usize, Vertex)>,
}

impl BlockDecomposition {
    pub fn blocks_containing(&self, v: Vertex) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| self.blocks[b].binary_search(&v).is_ok())
            .collect()
    }

    /// Blocks containing exactly one cut vertex, with that cut vertex.
    pub fn terminal_blocks(&self) -> Vec<(usize, Vertex)> {
        (0..self.blocks.len())
            .filter_map(|b| {
                let cuts: Vec<Vertex> = self
                    .block_tree
                    .iter()
                    .filter(|(bb, _)| *bb == b)
                    .map(|&(_, c)| c)
                    .collect();
                (cuts.len() == 1).then(|| (b, cuts[0]))
            })
            .collect()
    }
}

/// Hopcroft-Tarjan lowpoint decomposition with an explicit edge stack.
pub fn block_decomposition(g: &Graph) -> BlockDecomposition {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut blocks: Vec<Vec<Vertex>> = Vec::new();
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();

    for s in 0..n {
        if disc[s] != usize::MAX {
            continue;
        }
        if g.degree(s) == 0 {
            disc[s] = timer;
            timer += 1;
            blocks.push(vec![s]);
            continue;
        }
        disc[s] = timer;
        low[s] = timer;
        timer += 1;
        // (vertex, parent, next neighbour position)
        let mut stack: Vec<(Vertex, Option<Vertex>, usize)> = vec![(s, None, 0)];
        while let Some(frame) = stack.last_mut() {
            let (v, parent, pos) = *frame;
            if pos < g.degree(v) {
                frame.2 += 1;
                let w = g.neighbors(v)[pos];
                if Some(w) == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, Some(v), 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(p) = parent {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut verts = BTreeSet::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            verts.insert(a);
                            verts.insert(b);
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        blocks.push(verts.into_iter().collect());
                    }
                }
            }
        }
    }

    blocks.sort();
    let mut membership = vec![0usize; n];
    for b in &blocks {
        for &v in b {
            membership[v] += 1;
        }
    }
    let cut_vertices: Vec<Vertex> = (0..n).filter(|&v| membership[v] > 1).collect();
    let mut block_tree = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            if membership[v] > 1 {
                block_tree.push((i, v));
            }
        }
    }
    BlockDecomposition {
        blocks,
        cut_vertices,
        block_tree,
    }
}

/// A DFS tree whose closure contains the certified graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreedepthCertificate {
    pub tree: RootedTree,
    pub depth: usize,
}

impl TreedepthCertificate {
    /// Every edge of `g` joins an ancestor-descendant pair of the tree.
    pub fn certifies(&self, g: &Graph) -> bool {
        g.vertex_count() == self.tree.vertex_count()
            && g.edges()
                .all(|(u, v)| self.tree.is_ancestor(u, v) || self.tree.is_ancestor(v, u))
    }
}

/// DFS from `root` visiting neighbours in ascending order. A DFS tree has no
/// cross edges, so the graph embeds in the tree's closure.
pub fn dfs_treedepth_certificate(
    g: &Graph,
    root: Vertex,
) -> Result<TreedepthCertificate, GraphError> {
    let n = g.vertex_count();
    if root >= n {
        return Err(GraphError::VertexOutOfRange { vertex: root, n });
    }
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut stack: Vec<(Vertex, usize)> = vec![(root, 0)];
    let mut visited = 1;
    while let Some(frame) = stack.last_mut() {
        let (v, pos) = *frame;
        if pos < g.degree(v) {
            frame.1 += 1;
            let w = g.neighbors(v)[pos];
            if !seen[w] {
                seen[w] = true;
                visited += 1;
                parent[w] = Some(v);
                stack.push((w, 0));
            }
        } else {
            stack.pop();
        }
    }
    if visited != n {
        return Err(GraphError::Disconnected);
    }
    let tree = RootedTree::from_parents(parent)?;
    let depth = tree.height() + 1;
    Ok(TreedepthCertificate { tree, depth })
}

/// Length of the longest cycle, 0 for forests. Exact backtracking: every
/// cycle is enumerated from its smallest vertex.
pub fn circumference(g: &Graph, vertex_guard: usize) -> Result<usize, GraphError> {
    let n = g.vertex_count();
    if n > vertex_guard {
        return Err(GraphError::TooLarge { n, guard: vertex_guard });
    }
    let mut best = 0usize;
    let mut on_path = vec![false; n];
    for s in 0..n {
        if best == n {
            break;
        }
        on_path[s] = true;
        cycle_search(g, s, s, 1, &mut on_path, &mut best);
        on_path[s] = false;
    }
    Ok(best)
}

fn cycle_search(
    g: &Graph,
    start: Vertex,
    v: Vertex,
    len: usize,
    on_path: &mut [bool],
    best: &mut usize,
) {
    for &w in g.neighbors(v) {
        if w == start && len >= 3 {
            *best = (*best).max(len);
        } else if w > start && !on_path[w] {
            on_path[w] = true;
            cycle_search(g, start, w, len + 1, on_path, best);
            on_path[w] = false;
        }
        if *best == g.vertex_count() {
            return;
        }
    }
}

/// Number of edges on a longest simple path.
pub fn longest_path_length(g: &Graph, vertex_guard: usize) -> Result<usize, GraphError> {
    let n = g.vertex_count();
    if n > vertex_guard {
        return Err(GraphError::TooLarge { n, guard: vertex_guard });
    }
    fn extend(g: &Graph, v: Vertex, len: usize, on_path: &mut [bool], best: &mut usize) {
        *best = (*best).max(len);
        for &w in g.neighbors(v) {
            if !on_path[w] {
                on_path[w] = true;
                extend(g, w, len + 1, on_path, best);
                on_path[w] = false;
            }
        }
    }
    let mut best = 0;
    let mut on_path = vec![false; n];
    for s in 0..n {
        on_path[s] = true;
        extend(g, s, 0, &mut on_path, &mut best);
        on_path[s] = false;
        if best + 1 == n {
            break;
        }
    }
    Ok(best)
}

/// Proper colouring by smallest available colour in ascending vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub color_of: Vec<usize>,
    pub classes: Vec<Vec<Vertex>>,
}

pub fn greedy_proper_coloring(g: &Graph) -> Coloring {
    let n = g.vertex_count();
    let mut color_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<Vertex>> = Vec::new();
    for v in 0..n {
        let mut used = vec![false; g.degree(v) + 1];
        for &w in g.neighbors(v) {
            if w < v && color_of[w] < used.len() {
                used[color_of[w]] = true;
            }
        }
        let c = used.iter().position(|&u| !u).expect("degree + 1 slots");
        color_of[v] = c;
        if c == classes.len() {
            classes.push(Vec::new());
        }
        classes[c].push(v);
    }
    Coloring { color_of, classes }
}

/// Vertex count of the complete t-ary tree of height h, if it fits.
pub fn tary_tree_size(t: usize, h: usize) -> Option<usize> {
    let mut total: usize = 1;
    let mut level: usize = 1;
    for _ in 0..h {
        level = level.checked_mul(t)?;
        total = total.checked_add(level)?;
    }
    Some(total)
}

/// An embedding of the complete t-ary tree of height h: `image[i]` is the
/// graph vertex hosting tree node `i`, nodes numbered in BFS order (node
/// `i`'s children are `t*i + 1 ..= t*i + t`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeEmbedding {
    pub t: usize,
    pub h: usize,
    pub image: Vec<Vertex>,
}

impl TreeEmbedding {
    /// Checks injectivity and that every tree edge maps onto a graph edge.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let distinct: BTreeSet<_> = self.image.iter().collect();
        distinct.len() == self.image.len()
            && Some(self.image.len()) == tary_tree_size(self.t, self.h)
            && (1..self.image.len()).all(|i| g.has_edge(self.image[(i - 1) / self.t], self.image[i]))
    }
}

/// Searches for a subgraph isomorphic to the complete t-ary tree of height
/// `h`. Children of a node are chosen as increasing neighbour subsets, which
/// removes the `t!` sibling symmetry.
pub fn contains_tary_tree(
    g: &Graph,
    t: usize,
    h: usize,
    size_guard: usize,
) -> Result<Option<TreeEmbedding>, GraphError> {
    let size = tary_tree_size(t, h).filter(|&s| s <= size_guard).ok_or(
        GraphError::TooLarge {
            n: tary_tree_size(t, h).unwrap_or(usize::MAX),
            guard: size_guard,
        },
    )?;
    if size > g.vertex_count() {
        return Ok(None);
    }
    let internal = size - t.pow(h as u32);
    let mut image = vec![usize::MAX; size];
    let mut used = vec![false; g.vertex_count()];
    for r in g.vertices() {
        if g.degree(r) < t && h > 0 {
            continue;
        }
        image[0] = r;
        used[r] = true;
        if embed_children(g, t, internal, 0, &mut image, &mut used) {
            return Ok(Some(TreeEmbedding { t, h, image }));
        }
        used[r] = false;
    }
    Ok(None)
}

fn embed_children(
    g: &Graph,
    t: usize,
    internal: usize,
    node: usize,
    image: &mut [Vertex],
    used: &mut [bool],
) -> bool {
    if node == internal {
        return true;
    }
    let host = image[node];
    let candidates: Vec<Vertex> = g.neighbors(host).iter().copied().filter(|&w| !used[w]).collect();
    if candidates.len() < t {
        return false;
    }
    let mut pick: Vec<usize> = (0..t).collect();
    loop {
        for (j, &p) in pick.iter().enumerate() {
            image[t * node + 1 + j] = candidates[p];
            used[candidates[p]] = true;
        }
        if embed_children(g, t, internal, node + 1, image, used) {
            return true;
        }
        for &p in &pick {
            used[candidates[p]] = false;
        }
        // next combination of t out of candidates.len()
        let m = candidates.len();
        let mut i = t;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if pick[i] != i + m - t {
                break;
            }
            if i == 0 {
                return false;
            }
        }
        pick[i] += 1;
        for j in i + 1..t {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowtie() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap()
    }

    #[test]
    fn parse_examples() {
        let k2 = parse_graph("2 1\n0 1").unwrap();
        assert_eq!(k2, Graph::complete(2));
        let k3 = parse_graph("3 3\n0 1\n1 2\n0 2").unwrap();
        assert_eq!(k3, Graph::complete(3));
        let k1 = parse_graph("1 0").unwrap();
        assert_eq!((k1.vertex_count(), k1.edge_count()), (1, 0));
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert!(matches!(parse_graph(""), Err(ParseError::MissingHeader)));
        assert!(matches!(parse_graph("2 1\n0 x"), Err(ParseError::Malformed { line: 2, .. })));
        assert!(matches!(parse_graph("2 1\n0 2"), Err(ParseError::VertexOutOfRange { .. })));
        assert!(matches!(parse_graph("2 1\n1 1"), Err(ParseError::SelfLoop { vertex: 1, .. })));
        assert!(matches!(
            parse_graph("2 2\n0 1\n1 0"),
            Err(ParseError::DuplicateEdge { u: 0, v: 1, .. })
        ));
        assert!(matches!(parse_graph("3 2\n0 1"), Err(ParseError::EdgeCountMismatch { .. })));
    }

    #[test]
    fn write_then_parse() {
        let g = bowtie();
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn blocks_of_small_graphs() {
        let d = block_decomposition(&Graph::complete(3));
        assert_eq!(d.blocks, vec![vec![0, 1, 2]]);
        assert!(d.cut_vertices.is_empty());

        let d = block_decomposition(&bowtie());
        assert_eq!(d.blocks, vec![vec![0, 1, 2], vec![2, 3, 4]]);
        assert_eq!(d.cut_vertices, vec![2]);
        assert_eq!(d.block_tree, vec![(0, 2), (1, 2)]);

        let d = block_decomposition(&Graph::path(3));
        assert_eq!(d.blocks, vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(d.cut_vertices, vec![1]);
        assert_eq!(d.terminal_blocks(), vec![(0, 1), (1, 1)]);
    }

    #[test]
    fn isolated_vertices_are_singleton_blocks() {
        let g = Graph::from_edges(3, &[(0, 2)]).unwrap();
        let d = block_decomposition(&g);
        assert_eq!(d.blocks, vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn dfs_certificates() {
        let c = dfs_treedepth_certificate(&Graph::complete(2), 0).unwrap();
        assert_eq!(c.depth, 2);
        let c4 = Graph::cycle(4);
        let c = dfs_treedepth_certificate(&c4, 0).unwrap();
        assert_eq!(c.depth, 4);
        assert_eq!(c.tree.parents(), &[None, Some(0), Some(1), Some(2)]);
        assert!(c.certifies(&c4));
        let c = dfs_treedepth_certificate(&Graph::complete(3), 0).unwrap();
        assert_eq!(c.depth, 3);
        assert!(matches!(
            dfs_treedepth_certificate(&Graph::empty(2), 0),
            Err(GraphError::Disconnected)
        ));
    }

    #[test]
    fn circumference_examples() {
        let tree = Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(circumference(&tree, 20).unwrap(), 0);
        assert_eq!(circumference(&Graph::cycle(5), 20).unwrap(), 5);
        assert_eq!(circumference(&bowtie(), 20).unwrap(), 3);
        assert!(circumference(&Graph::empty(21), 20).is_err());
    }

    #[test]
    fn greedy_coloring_examples() {
        assert_eq!(greedy_proper_coloring(&Graph::complete(3)).classes.len(), 3);
        let c4 = greedy_proper_coloring(&Graph::cycle(4));
        assert_eq!(c4.classes, vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(greedy_proper_coloring(&Graph::empty(4)).classes.len(), 1);
    }

    #[test]
    fn tary_tree_examples() {
        assert_eq!(contains_tary_tree(&Graph::complete(2), 2, 1, 64).unwrap(), None);
        let e = contains_tary_tree(&Graph::complete(4), 2, 1, 64).unwrap().unwrap();
        assert!(e.is_valid_in(&Graph::complete(4)));
        let e = contains_tary_tree(&Graph::cycle(4), 2, 1, 64).unwrap().unwrap();
        assert_eq!(e.image, vec![0, 1, 3]);
        // binary tree of height 2 (7 vertices) inside a path: impossible
        assert_eq!(contains_tary_tree(&Graph::path(9), 2, 2, 64).unwrap(), None);
        assert!(contains_tary_tree(&Graph::path(9), 2, 10, 64).is_err());
    }

    #[test]
    fn binary_tree_found_in_itself() {
        let mut g = Graph::empty(7);
        for i in 1..7 {
            g.add_edge((i - 1) / 2, i).unwrap();
        }
        let e = contains_tary_tree(&g, 2, 2, 64).unwrap().unwrap();
        assert!(e.is_valid_in(&g));
    }

    #[test]
    fn closure_examples() {
        let path2 = RootedTree::from_parents(vec![None, Some(0)]).unwrap();
        assert_eq!(closure(&path2), Graph::complete(2));
        let path3 = RootedTree::from_parents(vec![None, Some(0), Some(1)]).unwrap();
        assert_eq!(closure(&path3), Graph::complete(3));
        let star = RootedTree::from_parents(vec![None, Some(0), Some(0), Some(0)]).unwrap();
        assert_eq!(closure(&star), star.as_graph());
    }

    #[test]
    fn rooted_tree_validation() {
        assert!(RootedTree::from_parents(vec![None, None]).is_err());
        assert!(RootedTree::from_parents(vec![None, Some(2), Some(1)]).is_err());
        let t = RootedTree::from_graph(&Graph::path(4), 1).unwrap();
        assert_eq!(t.height_of(3), 2);
        assert_eq!(t.ancestors(3), vec![2, 1]);
        assert!(t.is_leaf_elimination_order(&t.leaf_elimination_order()));
        assert!(!t.is_leaf_elimination_order(&[1, 0, 2, 3]));
    }

    #[test]
    fn longest_paths() {
        assert_eq!(longest_path_length(&Graph::path(5), 20).unwrap(), 4);
        assert_eq!(longest_path_length(&bowtie(), 20).unwrap(), 4);
        assert_eq!(longest_path_length(&Graph::empty(3), 20).unwrap(), 0);
    }
}
