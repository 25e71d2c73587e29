//! Plain simple graphs: the bar-joint view of a braced triangulation.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::surface::{edge, Edge, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {0}-{1} is a loop")]
    Loop(Vertex, Vertex),
    #[error("edge {0}-{1} appears twice")]
    Duplicate(Vertex, Vertex),
    #[error("edge {0}-{1} leaves the vertex range")]
    OutOfRange(Vertex, Vertex),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(Vertex, Vertex),
    #[error("vertex {0} cannot be moved in this split")]
    BadSplit(Vertex),
}

/// A finite simple graph on vertices `0..n` with a sorted edge list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut es: Vec<Edge> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::Loop(a, b));
            }
            if a as usize >= n || b as usize >= n {
                return Err(GraphError::OutOfRange(a, b));
            }
            es.push(edge(a, b));
        }
        es.sort_unstable();
        for w in es.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::Duplicate(w[0].0, w[0].1));
            }
        }
        Ok(Graph { n, edges: es })
    }

    pub fn complete(n: usize) -> Self {
        let mut es = Vec::new();
        for a in 0..n as Vertex {
            for b in a + 1..n as Vertex {
                es.push((a, b));
            }
        }
        Graph { n, edges: es }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.edges.binary_search(&edge(a, b)).is_ok()
    }

    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(a, b) in &self.edges {
            d[a as usize] += 1;
            d[b as usize] += 1;
        }
        d
    }

    /// Neighbour sets as bitmasks; only for `n <= 64`.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64);
        let mut m = vec![0u64; self.n];
        for &(a, b) in &self.edges {
            m[a as usize] |= 1 << b;
            m[b as usize] |= 1 << a;
        }
        m
    }

    pub fn without_edge(&self, e: Edge) -> Result<Graph, GraphError> {
        let e = edge(e.0, e.1);
        let i = self.edges.binary_search(&e).map_err(|_| GraphError::NotAnEdge(e.0, e.1))?;
        let mut edges = self.edges.clone();
        edges.remove(i);
        Ok(Graph { n: self.n, edges })
    }

    /// Applies `perm[old] = new`.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|&(a, b)| edge(perm[a as usize], perm[b as usize]))
            .collect();
        edges.sort_unstable();
        Graph { n: self.n, edges }
    }

    /// 3-dimensional vertex split at `v1` on the edges `v1v2`, `v1v3`.
    ///
    /// Adds `v0 = n` joined to `v1`, `v2`, `v3`; every edge `v1x` with `x` in
    /// `moved` is replaced by `v0x`.
    pub fn vertex_split_3d(
        &self,
        v1: Vertex,
        v2: Vertex,
        v3: Vertex,
        moved: &[Vertex],
    ) -> Result<Graph, GraphError> {
        if !self.has_edge(v1, v2) {
            return Err(GraphError::NotAnEdge(v1, v2));
        }
        if !self.has_edge(v1, v3) {
            return Err(GraphError::NotAnEdge(v1, v3));
        }
        if v2 == v3 {
            return Err(GraphError::BadSplit(v2));
        }
        for &x in moved {
            if x == v2 || x == v3 || !self.has_edge(v1, x) {
                return Err(GraphError::BadSplit(x));
            }
        }
        let v0 = self.n as Vertex;
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                if a == v1 && moved.contains(&b) {
                    edge(v0, b)
                } else if b == v1 && moved.contains(&a) {
                    edge(v0, a)
                } else {
                    (a, b)
                }
            })
            .collect();
        edges.extend([edge(v0, v1), edge(v0, v2), edge(v0, v3)]);
        Graph::new(self.n + 1, edges)
    }
}

/// `K6` minus the edge `{4, 5}`.
pub fn k6_minus_edge() -> Graph {
    Graph::complete(6).without_edge((4, 5)).unwrap()
}

/// Two copies of `K5` on `{0..4}` and `{2..6}`, glued along the triangle `{2, 3, 4}`.
pub fn k5_glued_k5() -> Graph {
    let mut es = Vec::new();
    for block in [[0u32, 1, 2, 3, 4], [2, 3, 4, 5, 6]] {
        for i in 0..5 {
            for j in i + 1..5 {
                es.push((block[i], block[j]));
            }
        }
    }
    es.sort_unstable();
    es.dedup();
    Graph::new(7, es).unwrap()
}

/// Finds a bijection `map[v1] = v2` carrying `g1` onto `g2`, by backtracking
/// with degree pruning. Meant for small graphs.
pub fn find_isomorphism(g1: &Graph, g2: &Graph) -> Option<Vec<Vertex>> {
    let n = g1.n();
    if n != g2.n() || g1.num_edges() != g2.num_edges() {
        return None;
    }
    let (d1, d2) = (g1.degrees(), g2.degrees());
    let (mut s1, mut s2) = (d1.clone(), d2.clone());
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return None;
    }
    let adj1 = g1.adjacency();
    // high degree first, and neighbours of placed vertices early
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let touching = adj1[v].iter().filter(|&&w| placed[w as usize]).count();
                (touching, d1[v], core::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    let mut search = IsoSearch {
        order,
        g2,
        adj1,
        d1,
        d2,
        map: vec![u32::MAX; n],
        used: vec![false; n],
    };
    search.extend(0).then_some(search.map)
}

/// Backtracking state for [`find_isomorphism`].
struct IsoSearch<'a> {
    order: Vec<usize>,
    g2: &'a Graph,
    adj1: Vec<Vec<Vertex>>,
    d1: Vec<usize>,
    d2: Vec<usize>,
    map: Vec<Vertex>,
    used: Vec<bool>,
}

impl IsoSearch<'_> {
    fn fits(&self, k: usize, v: usize, w: usize) -> bool {
        let (g2, adj, map) = (self.g2, &self.adj1[v], &self.map);
        adj.iter()
            .all(|&x| map[x as usize] == u32::MAX || g2.has_edge(w as Vertex, map[x as usize]))
            // placed non-neighbours must stay non-neighbours
            && self.order[..k]
                .iter()
                .all(|&x| adj.contains(&(x as Vertex)) || !g2.has_edge(w as Vertex, map[x]))
    }

    fn extend(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            return true;
        }
        let v = self.order[k];
        for w in 0..self.g2.n() {
            if self.used[w] || self.d1[v] != self.d2[w] || !self.fits(k, v, w) {
                continue;
            }
            self.map[v] = w as Vertex;
            self.used[w] = true;
            if self.extend(k + 1) {
                return true;
            }
            self.map[v] = u32::MAX;
            self.used[w] = false;
        }
        false
    }
}
