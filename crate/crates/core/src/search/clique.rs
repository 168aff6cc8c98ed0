//! Bitset graphs and an exact maximum-clique search with colouring bounds.

use std::fmt;

/// Undirected simple graph with adjacency rows stored as bitsets.
#[derive(Clone, PartialEq, Eq)]
pub struct BitGraph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for BitGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitGraph(n={}, m={})", self.n, self.edge_count())
    }
}

impl BitGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitGraph {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    /// Builds the graph whose edges are the pairs `u < v` with `edge(u, v)`.
    pub fn from_fn(n: usize, edge: impl Fn(usize, usize) -> bool + Sync) -> Self {
        use rayon::prelude::*;
        let mut g = BitGraph::new(n);
        let words = g.words;
        g.adj.par_chunks_mut(words).enumerate().for_each(|(u, row)| {
            for v in 0..n {
                if v != u && edge(u.min(v), u.max(v)) {
                    row[v / 64] |= 1 << (v % 64);
                }
            }
        });
        g
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v {
            return;
        }
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn neighbours(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbours(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CliqueOptions {
    /// Maximum number of search nodes; `None` is unlimited.
    pub budget: Option<u64>,
    /// Only cliques with at least this many vertices are of interest. If none exists
    /// the result is empty.
    pub floor: usize,
    pub order: InitialOrder,
    /// Skip recolouring; only useful for comparisons.
    pub plain_colouring: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueResult {
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
    /// The search finished, so `vertices` is maximum (or proves nothing reaches the floor).
    pub exact: bool,
    pub nodes: u64,
}

impl CliqueResult {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Vertex order used before the search starts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum InitialOrder {
    /// Decreasing degree, ties by id.
    #[default]
    Degree,
    /// Smallest-last degeneracy order.
    Degeneracy,
}

struct Search {
    words: usize,
    adj: Vec<u64>,
    cur: Vec<usize>,
    best: Vec<usize>,
    bar: usize,
    nodes: u64,
    budget: u64,
    aborted: bool,
    renumber: bool,
    /// Per depth: candidate set, scratch for colouring, colour classes.
    stack: Vec<Frame>,
}

#[derive(Default)]
struct Frame {
    p: Vec<u64>,
    u: Vec<u64>,
    q: Vec<u64>,
    classes: Vec<u64>,
    order: Vec<(u32, u32)>,
}

impl Search {
    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    /// Greedy sequential colouring of the frame's candidates. Vertices whose colour is
    /// below `min_colour` cannot lead anywhere and are left out of `order`; with
    /// recolouring on, a vertex that would need a high colour is moved into a low
    /// class when it has one neighbour there that can itself move.
    fn colour(&self, f: &mut Frame, min_colour: usize) {
        let w = self.words;
        f.order.clear();
        f.u.copy_from_slice(&f.p);
        let low = min_colour.saturating_sub(1);
        f.classes.clear();
        f.classes.resize(low * w, 0);
        let mut colour = 0;
        while f.u.iter().any(|&x| x != 0) {
            colour += 1;
            f.q.copy_from_slice(&f.u);
            let mut i = 0;
            while i < w {
                if f.q[i] == 0 {
                    i += 1;
                    continue;
                }
                let v = i * 64 + f.q[i].trailing_zeros() as usize;
                f.q[i] &= f.q[i] - 1;
                f.u[i] &= !(1u64 << (v % 64));
                let row = self.row(v);
                for (qw, rw) in f.q[i..].iter_mut().zip(&row[i..]) {
                    *qw &= !rw;
                }
                if colour <= low {
                    f.classes[(colour - 1) * w + i] |= 1 << (v % 64);
                } else if !(self.renumber && self.try_renumber(f, v, low)) {
                    f.order.push((v as u32, colour as u32));
                }
            }
        }
    }

    fn try_renumber(&self, f: &mut Frame, v: usize, low: usize) -> bool {
        let w = self.words;
        let nv = self.row(v);
        for k1 in 0..low {
            let class = &f.classes[k1 * w..(k1 + 1) * w];
            let mut hit = None;
            let mut many = false;
            for (i, (c, r)) in class.iter().zip(nv).enumerate() {
                let x = c & r;
                if x != 0 {
                    if hit.is_some() || x.count_ones() > 1 {
                        many = true;
                        break;
                    }
                    hit = Some(i * 64 + x.trailing_zeros() as usize);
                }
            }
            if many {
                continue;
            }
            let Some(u) = hit else {
                f.classes[k1 * w + v / 64] |= 1 << (v % 64);
                return true;
            };
            let nu = self.row(u);
            for k2 in k1 + 1..low {
                let c2 = &f.classes[k2 * w..(k2 + 1) * w];
                if c2.iter().zip(nu).all(|(a, b)| a & b == 0) {
                    f.classes[k1 * w + u / 64] &= !(1u64 << (u % 64));
                    f.classes[k2 * w + u / 64] |= 1 << (u % 64);
                    f.classes[k1 * w + v / 64] |= 1 << (v % 64);
                    return true;
                }
            }
        }
        false
    }

    fn expand(&mut self, depth: usize) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        if self.stack.len() <= depth + 1 {
            let w = self.words;
            self.stack.push(Frame {
                p: vec![0; w],
                u: vec![0; w],
                q: vec![0; w],
                ..Frame::default()
            });
        }
        let min_colour = (self.bar + 1).saturating_sub(self.cur.len()).max(1);
        let mut frame = std::mem::take(&mut self.stack[depth]);
        self.colour(&mut frame, min_colour);
        for idx in (0..frame.order.len()).rev() {
            let (v, c) = frame.order[idx];
            let (v, c) = (v as usize, c as usize);
            if self.cur.len() + c <= self.bar {
                break;
            }
            self.cur.push(v);
            let mut next = std::mem::take(&mut self.stack[depth + 1].p);
            let mut any = false;
            for ((n, a), b) in next.iter_mut().zip(&frame.p).zip(self.row(v)) {
                *n = a & b;
                any |= *n != 0;
            }
            let count = next.iter().map(|w| w.count_ones() as usize).sum::<usize>();
            let small = depth == 0 && count.div_ceil(64) * SHRINK <= self.words;
            self.stack[depth + 1].p = next;
            if !any {
                if self.cur.len() > self.bar {
                    self.bar = self.cur.len();
                    self.best = self.cur.clone();
                }
            } else if small {
                self.expand_compact(depth + 1);
            } else {
                self.expand(depth + 1);
            }
            self.cur.pop();
            frame.p[v / 64] &= !(1u64 << (v % 64));
            if self.aborted {
                break;
            }
        }
        self.stack[depth] = frame;
    }
}

/// A candidate set that fits in this many times fewer words is copied into a graph
/// of its own, so the bitset operations below it touch fewer words.
const SHRINK: usize = 4;

impl Search {
    fn new(words: usize, adj: Vec<u64>, all: Vec<u64>, bar: usize, budget: u64, renumber: bool) -> Self {
        Search {
            words,
            adj,
            cur: Vec::new(),
            best: Vec::new(),
            bar,
            nodes: 0,
            budget,
            aborted: false,
            renumber,
            stack: vec![Frame {
                p: all,
                u: vec![0; words],
                q: vec![0; words],
                ..Frame::default()
            }],
        }
    }

    /// Searches the candidates at `depth` on the subgraph they induce. Vertex order is
    /// kept, so the search visits the same nodes as `expand` would.
    fn expand_compact(&mut self, depth: usize) {
        let p = &self.stack[depth].p;
        let mut verts = Vec::new();
        for (wi, &w) in p.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                verts.push(wi * 64 + bits.trailing_zeros() as usize);
                bits &= bits - 1;
            }
        }
        let m = verts.len();
        let words = m.div_ceil(64);
        let mut local = vec![0u32; self.words * 64];
        for (i, &v) in verts.iter().enumerate() {
            local[v] = i as u32;
        }
        let mut adj = vec![0u64; m * words];
        for (i, &u) in verts.iter().enumerate() {
            for (wi, (r, q)) in self.row(u).iter().zip(p).enumerate() {
                let mut bits = r & q;
                while bits != 0 {
                    let j = local[wi * 64 + bits.trailing_zeros() as usize] as usize;
                    bits &= bits - 1;
                    adj[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        let mut all = vec![0u64; words];
        for i in 0..m {
            all[i / 64] |= 1 << (i % 64);
        }
        let bar = self.bar.saturating_sub(self.cur.len());
        let mut sub = Search::new(words, adj, all, bar, self.budget - self.nodes, self.renumber);
        sub.expand(0);
        self.nodes += sub.nodes;
        self.aborted |= sub.aborted;
        if !sub.best.is_empty() && self.cur.len() + sub.best.len() > self.bar {
            self.bar = self.cur.len() + sub.best.len();
            self.best = self.cur.iter().copied().chain(sub.best.iter().map(|&i| verts[i])).collect();
        }
    }
}

fn degeneracy_order(g: &BitGraph) -> Vec<usize> {
    let n = g.len();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .unwrap_or(0);
        removed[v] = true;
        out.push(v);
        for (wi, &w) in g.neighbours(v).iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let u = wi * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                deg[u] -= 1;
            }
        }
    }
    out.reverse();
    out
}

/// Maximum clique by branch and bound.
///
/// The bound at each node is a greedy colouring of the candidates, improved by
/// recolouring. The vertex order is fixed up front, so the result is deterministic.
pub fn max_clique(g: &BitGraph, opts: &CliqueOptions) -> CliqueResult {
    let n = g.len();
    if n == 0 {
        return CliqueResult {
            vertices: Vec::new(),
            exact: true,
            nodes: 0,
        };
    }
    let order: Vec<usize> = match opts.order {
        InitialOrder::Degree => {
            let degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&v| (std::cmp::Reverse(degrees[v]), v));
            order
        }
        InitialOrder::Degeneracy => degeneracy_order(g),
    };
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let words = g.words;
    let mut adj = vec![0u64; n * words];
    for (i, &v) in order.iter().enumerate() {
        for (wi, &w) in g.neighbours(v).iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let u = wi * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let j = pos[u];
                adj[i * words + j / 64] |= 1 << (j % 64);
            }
        }
    }
    let mut all = vec![0u64; words];
    for i in 0..n {
        all[i / 64] |= 1 << (i % 64);
    }
    let bar = opts.floor.saturating_sub(1);
    let mut s = Search::new(words, adj, all, bar, opts.budget.unwrap_or(u64::MAX), !opts.plain_colouring);
    s.expand(0);
    let mut vertices: Vec<usize> = s.best.iter().map(|&i| order[i]).collect();
    vertices.sort_unstable();
    CliqueResult {
        vertices,
        exact: !s.aborted,
        nodes: s.nodes,
    }
}
