//! Edge-colored trees: validation, leaf stripping, ranks and centers.

use std::collections::HashMap;
use std::collections::VecDeque;

use thiserror::Error;

/// Edge color. Colors are 1-based.
pub type Color = u32;

/// Sentinel for "no parent".
pub(crate) const NONE: usize = usize::MAX;

/// Vertex ids are stored in 32 bits in the hot loops.
pub const MAX_VERTICES: usize = u32::MAX as usize;

/// Interpretation of the colors of a tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Generic,
    /// Two colors: 1 is `s` (stable), 2 is `u` (unstable).
    MorseSmale,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Generic => "generic",
            Mode::MorseSmale => "morse-smale",
        }
    }
}

/// Presentation name of a color in Morse–Smale mode.
pub fn ms_color_tag(color: Color) -> &'static str {
    match color {
        1 => "s",
        2 => "u",
        _ => "?",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub color: Color,
}

impl Edge {
    pub fn new(u: usize, v: usize, color: Color) -> Self {
        Edge { u, v, color }
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    Empty,
    #[error("{n} vertices exceed the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("number of colors must be at least 1")]
    NoColors,
    #[error("morse-smale mode requires exactly 2 colors, got {0}")]
    ModeColorCount(u32),
    #[error("edge {edge}: endpoint {vertex} out of range 0..{n}")]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        n: usize,
    },
    #[error("edge {edge}: color {color} out of range 1..={k}")]
    ColorOutOfRange { edge: usize, color: Color, k: u32 },
    #[error("edge {edge} ({u}, {v}) is a self-loop")]
    SelfLoop { edge: usize, u: usize, v: usize },
    #[error("edge {edge} ({u}, {v}) duplicates edge {first}")]
    DuplicateEdge {
        edge: usize,
        first: usize,
        u: usize,
        v: usize,
    },
    #[error("wrong edge count: {got} edges, a tree on {n} vertices needs {need}")]
    WrongEdgeCount { got: usize, need: usize, n: usize },
    #[error("disconnected: vertex {vertex} is unreachable from vertex 0")]
    Disconnected { vertex: usize },
}

impl TreeError {
    /// Short machine-readable name of the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            TreeError::Empty => "Empty",
            TreeError::TooManyVertices { .. } => "TooManyVertices",
            TreeError::NoColors => "NoColors",
            TreeError::ModeColorCount(_) => "ModeColorCount",
            TreeError::VertexOutOfRange { .. } => "VertexOutOfRange",
            TreeError::ColorOutOfRange { .. } => "ColorOutOfRange",
            TreeError::SelfLoop { .. } | TreeError::DuplicateEdge { .. } => "NotSimple",
            TreeError::WrongEdgeCount { .. } => "WrongEdgeCount",
            TreeError::Disconnected { .. } => "Disconnected",
        }
    }
}

/// A validated edge-colored tree on vertices `0..n`.
///
/// Adjacency is stored in compressed form. The tree is also rooted at vertex 0
/// once during validation so that edge lookups are constant time.
#[derive(Debug, Clone)]
pub struct ColoredTree {
    n: usize,
    k: u32,
    mode: Mode,
    edges: Vec<Edge>,
    adj_start: Vec<usize>,
    // (neighbour, edge index)
    adj: Vec<(usize, usize)>,
    // color of each `adj` entry, kept apart so color scans stay sequential
    adj_color: Vec<Color>,
    parent: Vec<usize>,
    parent_edge: Vec<usize>,
}

impl PartialEq for ColoredTree {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.k == other.k
            && self.mode == other.mode
            && self.edges == other.edges
    }
}

impl Eq for ColoredTree {}

impl ColoredTree {
    /// Validates a raw edge list and builds the tree.
    pub fn new(n: usize, k: u32, mode: Mode, edges: Vec<Edge>) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        if n > MAX_VERTICES {
            return Err(TreeError::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        if k == 0 {
            return Err(TreeError::NoColors);
        }
        if mode == Mode::MorseSmale && k != 2 {
            return Err(TreeError::ModeColorCount(k));
        }
        for (i, e) in edges.iter().enumerate() {
            for x in [e.u, e.v] {
                if x >= n {
                    return Err(TreeError::VertexOutOfRange {
                        edge: i,
                        vertex: x,
                        n,
                    });
                }
            }
            if e.color == 0 || e.color > k {
                return Err(TreeError::ColorOutOfRange {
                    edge: i,
                    color: e.color,
                    k,
                });
            }
            if e.u == e.v {
                return Err(TreeError::SelfLoop {
                    edge: i,
                    u: e.u,
                    v: e.v,
                });
            }
        }
        if edges.len() != n - 1 {
            return Err(TreeError::WrongEdgeCount {
                got: edges.len(),
                need: n - 1,
                n,
            });
        }
        let mut seen: HashMap<(usize, usize), usize> = HashMap::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            let key = (e.u.min(e.v), e.u.max(e.v));
            if let Some(&first) = seen.get(&key) {
                return Err(TreeError::DuplicateEdge {
                    edge: i,
                    first,
                    u: e.u,
                    v: e.v,
                });
            }
            seen.insert(key, i);
        }

        let mut degree = vec![0usize; n];
        for e in &edges {
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
        let mut adj_start = vec![0usize; n + 1];
        for x in 0..n {
            adj_start[x + 1] = adj_start[x] + degree[x];
        }
        let mut fill = adj_start.clone();
        let mut adj = vec![(0usize, 0usize); 2 * edges.len()];
        let mut adj_color = vec![0; 2 * edges.len()];
        for (i, e) in edges.iter().enumerate() {
            adj[fill[e.u]] = (e.v, i);
            adj_color[fill[e.u]] = e.color;
            fill[e.u] += 1;
            adj[fill[e.v]] = (e.u, i);
            adj_color[fill[e.v]] = e.color;
            fill[e.v] += 1;
        }

        let mut parent = vec![NONE; n];
        let mut parent_edge = vec![NONE; n];
        let mut visited = vec![false; n];
        let mut queue = VecDeque::with_capacity(n);
        visited[0] = true;
        queue.push_back(0);
        while let Some(x) = queue.pop_front() {
            for &(y, ei) in &adj[adj_start[x]..adj_start[x + 1]] {
                if !visited[y] {
                    visited[y] = true;
                    parent[y] = x;
                    parent_edge[y] = ei;
                    queue.push_back(y);
                }
            }
        }
        if let Some(vertex) = visited.iter().position(|&v| !v) {
            return Err(TreeError::Disconnected { vertex });
        }

        Ok(ColoredTree {
            n,
            k,
            mode,
            edges,
            adj_start,
            adj,
            adj_color,
            parent,
            parent_edge,
        })
    }

    /// Convenience constructor from `(u, v, color)` triples.
    pub fn from_triples(
        n: usize,
        k: u32,
        mode: Mode,
        triples: &[(usize, usize, Color)],
    ) -> Result<Self, TreeError> {
        let edges = triples
            .iter()
            .map(|&(u, v, c)| Edge::new(u, v, c))
            .collect();
        Self::new(n, k, mode, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn degree(&self, x: usize) -> usize {
        self.adj_start[x + 1] - self.adj_start[x]
    }

    /// Neighbours of `x` together with the index of the connecting edge.
    pub fn neighbors(&self, x: usize) -> &[(usize, usize)] {
        &self.adj[self.adj_start[x]..self.adj_start[x + 1]]
    }

    /// Index of the edge joining `a` and `b`, if any.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        if a >= self.n || b >= self.n {
            return None;
        }
        if self.parent[a] == b {
            Some(self.parent_edge[a])
        } else if self.parent[b] == a {
            Some(self.parent_edge[b])
        } else {
            None
        }
    }

    pub fn edge_color(&self, a: usize, b: usize) -> Option<Color> {
        self.edge_between(a, b).map(|i| self.edges[i].color)
    }

    /// Number of edges of each color; index 0 is unused.
    pub fn color_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.k as usize + 1];
        for e in &self.edges {
            counts[e.color as usize] += 1;
        }
        counts
    }

    pub fn with_mode(mut self, mode: Mode) -> Result<Self, TreeError> {
        if mode == Mode::MorseSmale && self.k != 2 {
            return Err(TreeError::ModeColorCount(self.k));
        }
        self.mode = mode;
        Ok(self)
    }
}

/// Ranks and centers from iterated leaf deletion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankInfo {
    pub rank: Vec<usize>,
    /// Vertices deleted at each stage. The last set holds the centers, so the
    /// sets partition the vertex set.
    pub strip_sequence: Vec<Vec<usize>>,
    pub centers: Vec<usize>,
    pub central_edge: Option<(usize, usize)>,
    /// Neighbour of higher rank (towards the center); `NONE` for centers.
    pub parent: Vec<usize>,
    /// Color of the edge to `parent`; 0 for centers.
    pub parent_color: Vec<Color>,
}

impl RankInfo {
    pub fn is_bicentral(&self) -> bool {
        self.centers.len() == 2
    }

    pub fn max_rank(&self) -> usize {
        self.rank[self.centers[0]]
    }

    pub fn is_central_edge(&self, a: usize, b: usize) -> bool {
        matches!(self.central_edge, Some((x, y)) if (x == a && y == b) || (x == b && y == a))
    }
}

/// Per-vertex stripping state. While a vertex is present, `nbrs` and `colors`
/// are the XOR of its present neighbours and of the colors of the edges to
/// them, so a leaf reads its parent and parent color directly. Once a vertex
/// is stripped the fields freeze: `nbrs` is its parent and `colors` the color
/// of the edge to it.
#[derive(Clone, Copy)]
pub(crate) struct Strip {
    pub(crate) nbrs: u32,
    pub(crate) colors: Color,
    degree: u32,
    pub(crate) rank: u32,
}

/// Result of leaf stripping in compact form.
pub(crate) struct Stripped {
    pub(crate) st: Vec<Strip>,
    /// Stripped vertices in deletion order followed by the centers.
    queue: Vec<u32>,
    bounds: Vec<usize>,
    /// Rank of the centers.
    pub(crate) top: u32,
    pub(crate) centers: Vec<usize>,
}

impl Stripped {
    pub(crate) fn central_edge(&self) -> Option<(usize, usize)> {
        match self.centers[..] {
            [a, b] => Some((a, b)),
            _ => None,
        }
    }

    /// Stripped vertices, highest rank first (centers excluded).
    pub(crate) fn top_down(&self) -> impl Iterator<Item = usize> + '_ {
        self.queue[..*self.bounds.last().expect("bounds start at 0")]
            .iter()
            .rev()
            .map(|&x| x as usize)
    }

    fn into_rank_info(self) -> RankInfo {
        let n = self.st.len();
        let mut strip_sequence: Vec<Vec<usize>> = self
            .bounds
            .windows(2)
            .map(|w| self.queue[w[0]..w[1]].iter().map(|&x| x as usize).collect())
            .collect();
        strip_sequence.push(self.centers.clone());
        let mut rank = vec![0usize; n];
        let mut parent = vec![NONE; n];
        let mut parent_color = vec![0; n];
        for (x, s) in self.st.iter().enumerate() {
            rank[x] = s.rank as usize;
            if s.rank != self.top {
                parent[x] = s.nbrs as usize;
                parent_color[x] = s.colors;
            }
        }
        let central_edge = self.central_edge();
        RankInfo {
            rank,
            strip_sequence,
            centers: self.centers,
            central_edge,
            parent,
            parent_color,
        }
    }
}

/// Strips all leaves repeatedly until one or two vertices remain.
pub fn compute_ranks(tree: &ColoredTree) -> RankInfo {
    strip_leaves(tree).into_rank_info()
}

/// How far ahead of the stripping loop vertices are prefetched: the next
/// vertex at the full distance, its neighbour at half of it.
const PREFETCH_AHEAD: usize = 16;

/// Hints the processor to load `slice[i]` into cache.
#[inline(always)]
pub(crate) fn prefetch<T>(slice: &[T], i: usize) {
    #[cfg(target_arch = "x86_64")]
    if let Some(r) = slice.get(i) {
        use std::arch::x86_64::{_mm_prefetch, _MM_HINT_T0};
        // SAFETY: prefetching never faults, and SSE is part of the x86_64
        // baseline.
        unsafe { _mm_prefetch::<_MM_HINT_T0>((r as *const T).cast()) };
    }
    #[cfg(not(target_arch = "x86_64"))]
    let _ = (slice, i);
}

pub(crate) fn strip_leaves(tree: &ColoredTree) -> Stripped {
    let n = tree.n();
    // One sequential sweep over the adjacency arrays.
    let mut st: Vec<Strip> = (0..n)
        .map(|x| {
            let range = tree.adj_start[x]..tree.adj_start[x + 1];
            let nbrs = tree.adj[range.clone()]
                .iter()
                .fold(0, |a, &(y, _)| a ^ y as u32);
            let colors = tree.adj_color[range.clone()].iter().fold(0, |a, &c| a ^ c);
            Strip {
                nbrs,
                colors,
                degree: range.len() as u32,
                rank: 0,
            }
        })
        .collect();
    if n <= 2 {
        return Stripped {
            st,
            queue: Vec::new(),
            bounds: vec![0],
            top: 0,
            centers: (0..n).collect(),
        };
    }

    // Layers are consecutive ranges of `queue`. Pushes are unconditional
    // writes followed by a conditional bump of `tail`, which keeps the loop
    // free of branches on freshly loaded values.
    let mut queue = vec![0u32; n + 1];
    let mut tail = 0;
    for (x, s) in st.iter().enumerate() {
        queue[tail] = x as u32;
        tail += (s.degree == 1) as usize;
    }
    let mut bounds = vec![0];
    let (mut head, mut end) = (0, tail);
    let mut remaining = n;
    let mut stage = 0u32;
    while remaining > 2 {
        for i in head..end {
            if i + PREFETCH_AHEAD < end {
                prefetch(&st, queue[i + PREFETCH_AHEAD] as usize);
            }
            if i + PREFETCH_AHEAD / 2 < end {
                prefetch(
                    &st,
                    st[queue[i + PREFETCH_AHEAD / 2] as usize].nbrs as usize,
                );
            }
            let x = queue[i];
            let s = &mut st[x as usize];
            s.rank = stage;
            let (y, c) = (s.nbrs, s.colors);
            let t = &mut st[y as usize];
            t.nbrs ^= x;
            t.colors ^= c;
            t.degree -= 1;
            queue[tail] = y;
            tail += (t.degree == 1) as usize;
        }
        remaining -= end - head;
        bounds.push(end);
        (head, end) = (end, tail);
        stage += 1;
    }
    // Every survivor passed through degree 1 during the last stage, so the
    // final pending layer is exactly the center.
    let mut centers: Vec<usize> = queue[head..end].iter().map(|&x| x as usize).collect();
    centers.sort_unstable();
    debug_assert_eq!(centers.len(), remaining);
    for &c in &centers {
        st[c].rank = stage;
    }
    queue.truncate(end);
    Stripped {
        st,
        queue,
        bounds,
        top: stage,
        centers,
    }
}
