//! Simple graphs and the operations used to build the promoted graphs:
//! named families, Prüfer trees, bridge sums, corona products and chains of
//! bridge sums.
//!
//! Vertices are `0..vertex_count`. Edges are stored normalized as `(u, v)`
//! with `u < v`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::GraphError;

/// Largest vertex count stored with dense bitset adjacency rows.
const DENSE_LIMIT: usize = 64;

#[derive(Debug, Clone)]
enum Adjacency {
    Dense(Vec<u64>),
    Sparse(HashSet<(usize, usize)>),
}

/// An undirected graph without loops or parallel edges.
#[derive(Debug, Clone)]
pub struct SimpleGraph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
    adjacency: Adjacency,
}

impl PartialEq for SimpleGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.edges == other.edges
    }
}

impl Eq for SimpleGraph {}

fn normalize(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl SimpleGraph {
    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if vertex_count == 0 {
            return Err(GraphError::Empty);
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v),
                    vertex_count,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !set.insert(normalize(u, v)) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
        }
        Ok(Self::from_normalized(vertex_count, set))
    }

    fn from_normalized(vertex_count: usize, edges: BTreeSet<(usize, usize)>) -> Self {
        let adjacency = if vertex_count <= DENSE_LIMIT {
            let mut rows = vec![0u64; vertex_count];
            for &(u, v) in &edges {
                rows[u] |= 1 << v;
                rows[v] |= 1 << u;
            }
            Adjacency::Dense(rows)
        } else {
            Adjacency::Sparse(edges.iter().copied().collect())
        };
        SimpleGraph {
            vertex_count,
            edges,
            adjacency,
        }
    }

    /// The graph on one vertex.
    pub fn singleton() -> Self {
        Self::from_normalized(1, BTreeSet::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending order, each with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    #[inline]
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        match &self.adjacency {
            Adjacency::Dense(rows) => rows[u] >> v & 1 == 1,
            Adjacency::Sparse(set) => u != v && set.contains(&normalize(u, v)),
        }
    }

    pub fn neighbors(&self, u: usize) -> Vec<usize> {
        (0..self.vertex_count)
            .filter(|&v| self.is_adjacent(u, v))
            .collect()
    }

    pub fn degree(&self, u: usize) -> usize {
        match &self.adjacency {
            Adjacency::Dense(rows) => rows[u].count_ones() as usize,
            Adjacency::Sparse(_) => self.neighbors(u).len(),
        }
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count,
            })
        }
    }

    /// Induced subgraph on `vertices`, re-indexed in the order given.
    pub fn induced(&self, vertices: &[usize]) -> Result<SimpleGraph, GraphError> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let mut edges = Vec::new();
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.is_adjacent(u, v) {
                    edges.push((a, b));
                }
            }
        }
        SimpleGraph::new(vertices.len(), edges)
    }

    /// Applies the vertex permutation `perm` (old vertex `v` becomes
    /// `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<SimpleGraph, GraphError> {
        if perm.len() != self.vertex_count {
            return Err(GraphError::BadPermutation);
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(GraphError::BadPermutation);
            }
        }
        SimpleGraph::new(
            self.vertex_count,
            self.edges.iter().map(|&(u, v)| (perm[u], perm[v])),
        )
    }

    /// Breadth-first distances from `source`; unreachable vertices are `None`.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Vertices reachable from `start` when `removed` is deleted.
    pub fn component_without_edge(&self, start: usize, removed: (usize, usize)) -> Vec<usize> {
        let removed = normalize(removed.0, removed.1);
        let mut seen = vec![false; self.vertex_count];
        seen[start] = true;
        let mut stack = vec![start];
        let mut out = vec![];
        while let Some(u) = stack.pop() {
            out.push(u);
            for v in self.neighbors(u) {
                if !seen[v] && normalize(u, v) != removed {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Short content hash of the vertex count and edge set.
    pub fn content_hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.to_json().as_bytes());
        hex::encode(&hasher.finalize()[..8])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<SimpleGraph, GraphError> {
        let raw: GraphJson =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        raw.try_into()
    }

    /// Graphviz rendering; vertex names are the 0-based indices.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "graph {name} {{").unwrap();
        for v in 0..self.vertex_count {
            writeln!(out, "  {v};").unwrap();
        }
        for (u, v) in self.edges() {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Wire form of a graph: `{"vertices": n, "edges": [[u, v], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&SimpleGraph> for GraphJson {
    fn from(g: &SimpleGraph) -> Self {
        GraphJson {
            vertices: g.vertex_count,
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for SimpleGraph {
    type Error = GraphError;

    fn try_from(raw: GraphJson) -> Result<Self, Self::Error> {
        SimpleGraph::new(raw.vertices, raw.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

/// A named graph family instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphFamily {
    Path(usize),
    Star(usize),
    Complete(usize),
    Cycle(usize),
    /// Tree on `sequence.len() + 2` vertices.
    TreeFromPruefer(Vec<usize>),
    Explicit {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
}

impl GraphFamily {
    pub fn build(&self) -> Result<SimpleGraph, GraphError> {
        match self {
            GraphFamily::Path(m) => {
                check_size(*m)?;
                SimpleGraph::new(*m, (1..*m).map(|v| (v - 1, v)))
            }
            GraphFamily::Star(m) => {
                check_size(*m)?;
                SimpleGraph::new(*m, (1..*m).map(|v| (0, v)))
            }
            GraphFamily::Complete(n) => {
                check_size(*n)?;
                SimpleGraph::new(*n, (0..*n).flat_map(|u| (u + 1..*n).map(move |v| (u, v))))
            }
            GraphFamily::Cycle(n) => {
                if *n < 3 {
                    return Err(GraphError::CycleTooSmall(*n));
                }
                SimpleGraph::new(*n, (0..*n).map(|v| (v, (v + 1) % n)))
            }
            GraphFamily::TreeFromPruefer(seq) => pruefer_decode(seq),
            GraphFamily::Explicit { vertices, edges } => {
                SimpleGraph::new(*vertices, edges.iter().copied())
            }
        }
    }

    /// Vertex count without building the graph.
    pub fn vertex_count(&self) -> usize {
        match self {
            GraphFamily::Path(n)
            | GraphFamily::Star(n)
            | GraphFamily::Complete(n)
            | GraphFamily::Cycle(n) => *n,
            GraphFamily::TreeFromPruefer(seq) => seq.len() + 2,
            GraphFamily::Explicit { vertices, .. } => *vertices,
        }
    }
}

fn check_size(n: usize) -> Result<(), GraphError> {
    if n == 0 {
        Err(GraphError::Empty)
    } else {
        Ok(())
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFamily::Path(n) => write!(f, "path:{n}"),
            GraphFamily::Star(n) => write!(f, "star:{n}"),
            GraphFamily::Complete(n) => write!(f, "complete:{n}"),
            GraphFamily::Cycle(n) => write!(f, "cycle:{n}"),
            GraphFamily::TreeFromPruefer(seq) => {
                let parts: Vec<String> = seq.iter().map(|x| x.to_string()).collect();
                write!(f, "pruefer:{}", parts.join("."))
            }
            GraphFamily::Explicit { vertices, edges } => {
                let parts: Vec<String> = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
                write!(f, "explicit:{vertices}:{}", parts.join("."))
            }
        }
    }
}

impl FromStr for GraphFamily {
    type Err = GraphError;

    /// Accepts `kind:size` (`path:3`, `complete:4`, `star:5`, `cycle:3`,
    /// `tree:5` for a path), `pruefer:0.0`, `explicit:3:0-1.1-2`, and the
    /// compact block forms `K4`, `P3`, `S5`, `C3`, `tree5`, `complete4`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::Parse(s.to_string());
        let s = s.trim();
        if let Some((kind, rest)) = s.split_once(':') {
            let size = || rest.parse::<usize>().map_err(|_| bad());
            return match kind {
                "path" | "tree" => Ok(GraphFamily::Path(size()?)),
                "star" => Ok(GraphFamily::Star(size()?)),
                "complete" => Ok(GraphFamily::Complete(size()?)),
                "cycle" => Ok(GraphFamily::Cycle(size()?)),
                "pruefer" => {
                    if rest.is_empty() {
                        return Ok(GraphFamily::TreeFromPruefer(vec![]));
                    }
                    let seq = rest
                        .split(['.', ','])
                        .map(|x| x.parse::<usize>().map_err(|_| bad()))
                        .collect::<Result<_, _>>()?;
                    Ok(GraphFamily::TreeFromPruefer(seq))
                }
                "explicit" => {
                    let (n, list) = rest.split_once(':').unwrap_or((rest, ""));
                    let vertices = n.parse::<usize>().map_err(|_| bad())?;
                    let mut edges = vec![];
                    for pair in list.split(['.', ',']).filter(|p| !p.is_empty()) {
                        let (u, v) = pair.split_once('-').ok_or_else(bad)?;
                        edges.push((
                            u.parse().map_err(|_| bad())?,
                            v.parse().map_err(|_| bad())?,
                        ));
                    }
                    Ok(GraphFamily::Explicit { vertices, edges })
                }
                _ => Err(bad()),
            };
        }
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
        let (kind, digits) = s.split_at(split);
        let n = digits.parse::<usize>().map_err(|_| bad())?;
        match kind {
            "K" | "complete" => Ok(GraphFamily::Complete(n)),
            "P" | "path" | "T" | "tree" => Ok(GraphFamily::Path(n)),
            "S" | "star" => Ok(GraphFamily::Star(n)),
            "C" | "cycle" => Ok(GraphFamily::Cycle(n)),
            _ => Err(bad()),
        }
    }
}

/// Decodes a Prüfer sequence over `0..m` (length `m - 2`) into a tree on `m`
/// vertices. The empty sequence gives the single edge on two vertices.
pub fn pruefer_decode(seq: &[usize]) -> Result<SimpleGraph, GraphError> {
    let m = seq.len() + 2;
    if let Some(&bad) = seq.iter().find(|&&x| x >= m) {
        return Err(GraphError::PrueferEntry { entry: bad, m });
    }
    let mut degree = vec![1usize; m];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(m - 1);
    for &x in seq {
        let leaf = (0..m).find(|&v| degree[v] == 1).expect("a leaf remains");
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..m).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    SimpleGraph::new(m, edges)
}

/// Prüfer sequence of a tree on at least two vertices.
pub fn pruefer_encode(tree: &SimpleGraph) -> Result<Vec<usize>, GraphError> {
    let m = tree.vertex_count();
    if m < 2 || !classify(tree).is_tree {
        return Err(GraphError::NotATree);
    }
    let mut degree: Vec<usize> = (0..m).map(|v| tree.degree(v)).collect();
    let mut removed = vec![false; m];
    let mut seq = Vec::with_capacity(m - 2);
    for _ in 0..m - 2 {
        let leaf = (0..m)
            .find(|&v| !removed[v] && degree[v] == 1)
            .expect("a tree has a leaf");
        let parent = tree
            .neighbors(leaf)
            .into_iter()
            .find(|&p| !removed[p])
            .expect("leaf has a live neighbor");
        seq.push(parent);
        removed[leaf] = true;
        degree[parent] -= 1;
    }
    Ok(seq)
}

/// All Prüfer sequences of length `m - 2` over `0..m`, in lexicographic order.
pub fn all_pruefer_sequences(m: usize) -> Vec<Vec<usize>> {
    if m < 2 {
        return vec![];
    }
    let len = m - 2;
    let total = m.pow(len as u32);
    (0..total)
        .map(|mut code| {
            let mut seq = vec![0; len];
            for slot in seq.iter_mut().rev() {
                *slot = code % m;
                code /= m;
            }
            seq
        })
        .collect()
}

/// Every labeled tree on `m` vertices (`m^(m-2)` of them for `m >= 2`; the
/// single vertex for `m = 1`).
pub fn all_trees(m: usize) -> Vec<SimpleGraph> {
    match m {
        0 => vec![],
        1 => vec![SimpleGraph::singleton()],
        _ => all_pruefer_sequences(m)
            .iter()
            .map(|s| pruefer_decode(s).expect("enumerated sequences are valid"))
            .collect(),
    }
}

/// Canonical string of the tree rooted at `root` (children sorted
/// recursively), equal for isomorphic rooted trees.
pub fn rooted_tree_code(tree: &SimpleGraph, root: usize) -> String {
    fn code(t: &SimpleGraph, v: usize, parent: Option<usize>) -> String {
        let mut kids: Vec<String> = t
            .neighbors(v)
            .into_iter()
            .filter(|&w| Some(w) != parent)
            .map(|w| code(t, w, Some(v)))
            .collect();
        kids.sort_unstable();
        format!("({})", kids.concat())
    }
    code(tree, root, None)
}

/// One representative `(tree, root)` per isomorphism class of rooted trees
/// on `m` vertices, in order of first appearance among Prüfer trees.
pub fn rooted_tree_shapes(m: usize) -> Vec<(SimpleGraph, usize)> {
    let mut seen = BTreeSet::new();
    let mut out = vec![];
    for tree in all_trees(m) {
        for root in 0..m {
            if seen.insert(rooted_tree_code(&tree, root)) {
                out.push((tree.clone(), root));
            }
        }
    }
    out
}

/// Disjoint union of `g1` and `g2` (offset by `|V1|`) plus the edge joining
/// `v1` to the shifted `v2`.
pub fn bridge_sum(
    g1: &SimpleGraph,
    v1: usize,
    g2: &SimpleGraph,
    v2: usize,
) -> Result<SimpleGraph, GraphError> {
    g1.check_vertex(v1)?;
    g2.check_vertex(v2)?;
    let offset = g1.vertex_count;
    let mut edges = g1.edges.clone();
    edges.extend(g2.edges().map(|(u, v)| (u + offset, v + offset)));
    edges.insert((v1, v2 + offset));
    Ok(SimpleGraph::from_normalized(
        offset + g2.vertex_count,
        edges,
    ))
}

/// One copy of `g2` per vertex of `g1`; copy `i` occupies
/// `|V1| + i·|V2| ..` and its `attach` vertex is joined to vertex `i`.
pub fn corona_product(
    g1: &SimpleGraph,
    g2: &SimpleGraph,
    attach: usize,
) -> Result<SimpleGraph, GraphError> {
    g2.check_vertex(attach)?;
    let n1 = g1.vertex_count;
    let n2 = g2.vertex_count;
    let mut edges = g1.edges.clone();
    for i in 0..n1 {
        let offset = n1 + i * n2;
        edges.extend(g2.edges().map(|(u, v)| (u + offset, v + offset)));
        edges.insert((i, offset + attach));
    }
    Ok(SimpleGraph::from_normalized(n1 + n1 * n2, edges))
}

/// A chain `G_1 ⋈ G_2 ⋈ … ⋈ G_q` of bridge sums.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeChainSpec {
    pub blocks: Vec<GraphFamily>,
    /// `junctions[k] = (a, b)` joins vertex `a` of block `k` to vertex `b`
    /// of block `k + 1`, both block-local indices.
    pub junctions: Vec<(usize, usize)>,
}

impl BridgeChainSpec {
    /// Chain joined at vertex 0 of every block.
    pub fn at_first_vertices(blocks: Vec<GraphFamily>) -> Self {
        let junctions = vec![(0, 0); blocks.len().saturating_sub(1)];
        BridgeChainSpec { blocks, junctions }
    }

    pub fn build(&self) -> Result<SimpleGraph, GraphError> {
        let (first, rest) = self.blocks.split_first().ok_or(GraphError::EmptyChain)?;
        if self.junctions.len() != rest.len() {
            return Err(GraphError::JunctionCount {
                blocks: self.blocks.len(),
                junctions: self.junctions.len(),
            });
        }
        let mut acc = first.build()?;
        let mut offset = 0;
        let mut prev_len = acc.vertex_count();
        for (block, &(a, b)) in rest.iter().zip(&self.junctions) {
            if a >= prev_len {
                return Err(GraphError::VertexOutOfRange {
                    vertex: a,
                    vertex_count: prev_len,
                });
            }
            let g = block.build()?;
            let next_offset = acc.vertex_count();
            prev_len = g.vertex_count();
            acc = bridge_sum(&acc, offset + a, &g, b)?;
            offset = next_offset;
        }
        Ok(acc)
    }

    /// Total number of vertices `N`.
    pub fn vertex_count(&self) -> usize {
        self.blocks.iter().map(GraphFamily::vertex_count).sum()
    }
}

impl fmt::Display for BridgeChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        let junctions: Vec<String> = self
            .junctions
            .iter()
            .map(|(a, b)| format!("{a}-{b}"))
            .collect();
        write!(f, "chain:{};{}", blocks.join(","), junctions.join(","))
    }
}

impl FromStr for BridgeChainSpec {
    type Err = GraphError;

    /// `K3,P2,K3` joins at vertex 0 of every block; `K3,P2,K3;2-0,1-1` gives
    /// the junction pairs explicitly.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (blocks, junctions) = match s.split_once(';') {
            Some((b, j)) => (b, Some(j)),
            None => (s, None),
        };
        let blocks: Vec<GraphFamily> = blocks
            .split(',')
            .map(str::parse)
            .collect::<Result<_, _>>()?;
        match junctions {
            None => Ok(BridgeChainSpec::at_first_vertices(blocks)),
            Some(j) => {
                let junctions = j
                    .split(',')
                    .filter(|p| !p.is_empty())
                    .map(|pair| {
                        let (a, b) = pair
                            .split_once('-')
                            .ok_or_else(|| GraphError::Parse(pair.to_string()))?;
                        Ok((
                            a.trim().parse().map_err(|_| GraphError::Parse(pair.to_string()))?,
                            b.trim().parse().map_err(|_| GraphError::Parse(pair.to_string()))?,
                        ))
                    })
                    .collect::<Result<_, GraphError>>()?;
                Ok(BridgeChainSpec { blocks, junctions })
            }
        }
    }
}

/// Structural summary used by the theorem verifiers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_tree: bool,
    pub is_complete: bool,
    pub is_connected: bool,
    /// Bridges in ascending order, each with `u < v`.
    pub bridges: Vec<(usize, usize)>,
}

pub fn classify(g: &SimpleGraph) -> Classification {
    let n = g.vertex_count();
    let is_connected = g.distances_from(0).iter().all(Option::is_some);
    let is_tree = is_connected && g.edge_count() == n - 1;
    let is_complete = g.edge_count() == n * (n - 1) / 2;
    Classification {
        is_tree,
        is_complete,
        is_connected,
        bridges: bridges(g),
    }
}

/// Bridges by low-link depth-first search (iterative).
pub fn bridges(g: &SimpleGraph) -> Vec<(usize, usize)> {
    let n = g.vertex_count();
    let adj: Vec<Vec<usize>> = (0..n).map(|u| g.neighbors(u)).collect();
    let mut order = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut found = Vec::new();
    let mut time = 0;
    for root in 0..n {
        if order[root] != usize::MAX {
            continue;
        }
        // (vertex, parent, next neighbor index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        order[root] = time;
        low[root] = time;
        time += 1;
        while let Some(top) = stack.last_mut() {
            let (u, parent, idx) = *top;
            if idx < adj[u].len() {
                top.2 += 1;
                let v = adj[u][idx];
                if v == parent {
                    continue;
                }
                if order[v] == usize::MAX {
                    order[v] = time;
                    low[v] = time;
                    time += 1;
                    stack.push((v, u, 0));
                } else {
                    low[u] = low[u].min(order[v]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[u]);
                    if low[u] > order[parent] {
                        found.push(normalize(parent, u));
                    }
                }
            }
        }
    }
    found.sort_unstable();
    found
}

/// Number of vertices strictly closer to `l_prime` than to `l`, for an edge
/// `{l, l_prime}`.
pub fn eta(g: &SimpleGraph, l: usize, l_prime: usize) -> Result<usize, GraphError> {
    g.check_vertex(l)?;
    g.check_vertex(l_prime)?;
    if !g.is_adjacent(l, l_prime) {
        return Err(GraphError::NotAdjacent(l, l_prime));
    }
    let from_l = g.distances_from(l);
    let from_lp = g.distances_from(l_prime);
    Ok(from_l
        .iter()
        .zip(&from_lp)
        .filter(|(dl, dlp)| match (dl, dlp) {
            (Some(a), Some(b)) => b < a,
            _ => false,
        })
        .count())
}
