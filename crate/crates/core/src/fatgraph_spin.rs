//! Trivalent fatgraphs, edge orientations up to fatgraph reflection, the
//! skinny surface with its canonical dimer and special Kasteleyn
//! orientations, the quadratic form of an orientation, and flips.
//!
//! Half-edges are numbered `0..2E`; vertex `v` lists its three half-edges in
//! counter-clockwise order and edge `e` pairs two half-edges. `σ(h)` is the
//! next half-edge counter-clockwise at the same vertex and `ι(h)` the other
//! half of the edge.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fatgraph {
    verts: Vec<[usize; 3]>,
    edges: Vec<[usize; 2]>,
    vert_of: Vec<usize>,
    slot_of: Vec<usize>,
    edge_of: Vec<usize>,
}

impl Fatgraph {
    /// Builds a fatgraph from counter-clockwise vertex lists and edge pairs.
    /// Half-edge labels must be exactly `0..3V`, each used by one vertex and one edge.
    pub fn new(verts: Vec<[usize; 3]>, edges: Vec<[usize; 2]>) -> Result<Self, Error> {
        let n = 3 * verts.len();
        if verts.is_empty() || 2 * edges.len() != n {
            return Err(Error::NotInvolutive);
        }
        let mut vert_of = vec![usize::MAX; n];
        let mut slot_of = vec![0; n];
        for (v, hs) in verts.iter().enumerate() {
            for (k, &h) in hs.iter().enumerate() {
                if h >= n || vert_of[h] != usize::MAX {
                    return Err(Error::NotTrivalent { vertex: v });
                }
                vert_of[h] = v;
                slot_of[h] = k;
            }
        }
        let mut edge_of = vec![usize::MAX; n];
        for (e, pair) in edges.iter().enumerate() {
            for &h in pair {
                if h >= n || edge_of[h] != usize::MAX {
                    return Err(Error::NotInvolutive);
                }
                edge_of[h] = e;
            }
        }
        let g = Fatgraph { verts, edges, vert_of, slot_of, edge_of };
        if !g.is_connected() {
            return Err(Error::Degenerate("fatgraph must be connected"));
        }
        Ok(g)
    }

    pub fn num_vertices(&self) -> usize {
        self.verts.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_half_edges(&self) -> usize {
        self.vert_of.len()
    }

    pub fn vertex_half_edges(&self, v: usize) -> [usize; 3] {
        self.verts[v]
    }

    pub fn edge_half_edges(&self, e: usize) -> [usize; 2] {
        self.edges[e]
    }

    pub fn vertex(&self, h: usize) -> usize {
        self.vert_of[h]
    }

    pub fn slot(&self, h: usize) -> usize {
        self.slot_of[h]
    }

    pub fn edge(&self, h: usize) -> usize {
        self.edge_of[h]
    }

    /// `ι(h)`.
    pub fn partner(&self, h: usize) -> usize {
        let [a, b] = self.edges[self.edge_of[h]];
        if a == h {
            b
        } else {
            a
        }
    }

    /// `σ(h)`.
    pub fn next_ccw(&self, h: usize) -> usize {
        self.verts[self.vert_of[h]][(self.slot_of[h] + 1) % 3]
    }

    /// `σ⁻¹(h)`.
    pub fn prev_ccw(&self, h: usize) -> usize {
        self.verts[self.vert_of[h]][(self.slot_of[h] + 2) % 3]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let [a, b] = self.edges[e];
        self.vert_of[a] == self.vert_of[b]
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.verts.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for h in self.verts[v] {
                let w = self.vert_of[self.partner(h)];
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Boundary cycles as walks: each step leaves along `h` and the next one
    /// leaves along `σ(ι(h))`. Every half-edge occurs once.
    pub fn boundary_cycles(&self) -> Vec<Walk> {
        let n = self.num_half_edges();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut w = Vec::new();
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                w.push(h);
                h = self.next_ccw(self.partner(h));
            }
            out.push(Walk(w));
        }
        out
    }

    /// Index of the boundary cycle containing each half-edge as an outgoing step.
    pub fn face_of(&self) -> Vec<usize> {
        let mut f = vec![0; self.num_half_edges()];
        for (i, c) in self.boundary_cycles().iter().enumerate() {
            for &h in &c.0 {
                f[h] = i;
            }
        }
        f
    }

    pub fn num_punctures(&self) -> usize {
        self.boundary_cycles().len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.verts.len() as i64 - self.edges.len() as i64
    }

    pub fn genus(&self) -> usize {
        ((2 - self.euler_characteristic() - self.num_punctures() as i64) / 2) as usize
    }

    /// Rank of `H₁`, `E − V + 1 = 2g + s − 1`.
    pub fn betti(&self) -> usize {
        self.edges.len() + 1 - self.verts.len()
    }

    /// Breadth-first spanning tree from `v0`. Returns the tree-edge flags and,
    /// per vertex, the half-edge at that vertex leading to its parent.
    pub fn spanning_tree(&self) -> (Vec<bool>, Vec<Option<usize>>) {
        let mut in_tree = vec![false; self.edges.len()];
        let mut parent = vec![None; self.verts.len()];
        let mut seen = vec![false; self.verts.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for h in self.verts[v] {
                let p = self.partner(h);
                let w = self.vert_of[p];
                if !seen[w] {
                    seen[w] = true;
                    in_tree[self.edge_of[h]] = true;
                    parent[w] = Some(p);
                    queue.push_back(w);
                }
            }
        }
        (in_tree, parent)
    }

    /// Tree path from `from` to `to` as outgoing half-edges.
    fn tree_path(&self, parent: &[Option<usize>], from: usize, to: usize) -> Vec<usize> {
        let ancestors = |mut v: usize| {
            let mut a = vec![v];
            while let Some(h) = parent[v] {
                v = self.vert_of[self.partner(h)];
                a.push(v);
            }
            a
        };
        let af = ancestors(from);
        let at = ancestors(to);
        let lca = *af.iter().find(|v| at.contains(v)).expect("connected tree");
        let mut path = Vec::new();
        let mut v = from;
        while v != lca {
            let h = parent[v].expect("below the common ancestor");
            path.push(h);
            v = self.vert_of[self.partner(h)];
        }
        let mut down = Vec::new();
        let mut v = to;
        while v != lca {
            let h = parent[v].expect("below the common ancestor");
            down.push(self.partner(h));
            v = self.vert_of[self.partner(h)];
        }
        path.extend(down.into_iter().rev());
        path
    }

    /// One closed walk per non-tree edge `e`: cross `e` from its first
    /// half-edge, then return along the tree. Ordered by edge index.
    pub fn fundamental_cycles(&self) -> Vec<(usize, Walk)> {
        let (in_tree, parent) = self.spanning_tree();
        let mut out = Vec::new();
        for (e, &t) in in_tree.iter().enumerate() {
            if t {
                continue;
            }
            let [h, hp] = self.edges[e];
            let mut w = vec![h];
            w.extend(self.tree_path(&parent, self.vert_of[hp], self.vert_of[h]));
            out.push((e, Walk(w)));
        }
        out
    }

    /// Two-colouring of the vertices if one exists.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.verts.len()];
        color[0] = Some(false);
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            let c = color[v].expect("coloured before push");
            for h in self.verts[v] {
                let w = self.vert_of[self.partner(h)];
                match color[w] {
                    None => {
                        color[w] = Some(!c);
                        stack.push(w);
                    }
                    Some(cw) if cw == c => return None,
                    _ => {}
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap_or(false)).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Local labels of the quadrilateral around `e`.
    pub fn flip_local(&self, e: usize) -> Result<FlipLocal, Error> {
        if e >= self.edges.len() {
            return Err(Error::UnknownEdge { edge: e });
        }
        if self.is_loop(e) {
            return Err(Error::LoopEdge { edge: e });
        }
        let [h, hp] = self.edges[e];
        Ok(FlipLocal {
            u: self.vert_of[h],
            v: self.vert_of[hp],
            h,
            hp,
            a1: self.next_ccw(h),
            a2: self.prev_ccw(h),
            b1: self.next_ccw(hp),
            b2: self.prev_ccw(hp),
        })
    }

    /// Flip of `e`: with `u = (h, a1, a2)` and `v = (h′, b1, b2)` the result
    /// has `u = (h, a2, b1)` and `v = (h′, b2, a1)`; all labels are kept.
    pub fn flip(&self, e: usize) -> Result<Fatgraph, Error> {
        let l = self.flip_local(e)?;
        let mut verts = self.verts.clone();
        verts[l.u] = [l.h, l.a2, l.b1];
        verts[l.v] = [l.hp, l.b2, l.a1];
        Fatgraph::new(verts, self.edges.clone())
    }

    /// Isomorphism of fatgraphs (bijection on half-edges commuting with `σ` and `ι`).
    pub fn is_isomorphic(&self, other: &Fatgraph) -> bool {
        if self.num_half_edges() != other.num_half_edges() || self.edges.len() != other.edges.len() {
            return false;
        }
        let n = self.num_half_edges();
        (0..n).any(|target| {
            let mut map = vec![usize::MAX; n];
            let mut used = vec![false; n];
            let mut stack = vec![(0usize, target)];
            while let Some((a, b)) = stack.pop() {
                if map[a] != usize::MAX {
                    if map[a] != b {
                        return false;
                    }
                    continue;
                }
                if used[b] {
                    return false;
                }
                map[a] = b;
                used[b] = true;
                stack.push((self.next_ccw(a), other.next_ccw(b)));
                stack.push((self.partner(a), other.partner(b)));
            }
            true
        })
    }

    /// Theta graph, spine of the once-punctured torus.
    pub fn theta() -> Fatgraph {
        Fatgraph::new(vec![[0, 1, 2], [3, 4, 5]], vec![[0, 3], [1, 4], [2, 5]]).expect("valid builtin")
    }

    /// Planar theta graph, spine of the thrice-punctured sphere.
    pub fn planar_theta() -> Fatgraph {
        Fatgraph::new(vec![[0, 1, 2], [3, 4, 5]], vec![[0, 3], [1, 5], [2, 4]]).expect("valid builtin")
    }

    /// Two loops joined by an edge, spine of the thrice-punctured sphere.
    pub fn dumbbell() -> Fatgraph {
        Fatgraph::new(vec![[0, 1, 2], [3, 4, 5]], vec![[0, 3], [1, 2], [4, 5]]).expect("valid builtin")
    }

    /// Planar complete graph on four vertices, spine of the four-punctured sphere.
    pub fn k4() -> Fatgraph {
        // vertex i is joined to the other three; planar rotation of a tetrahedron
        Fatgraph::new(
            vec![[0, 1, 2], [3, 4, 5], [6, 7, 8], [9, 10, 11]],
            vec![[0, 3], [1, 6], [2, 9], [4, 11], [5, 7], [8, 10]],
        )
        .expect("valid builtin")
    }

    /// `K₃,₃` embedded with a single boundary cycle: a bipartite spine of the
    /// once-punctured genus-two surface.
    pub fn genus_two() -> Fatgraph {
        Fatgraph::new(
            vec![[0, 1, 2], [3, 4, 5], [6, 7, 8], [9, 10, 11], [12, 13, 14], [15, 16, 17]],
            vec![[0, 9], [1, 12], [2, 15], [3, 10], [4, 16], [5, 13], [6, 17], [7, 14], [8, 11]],
        )
        .expect("valid builtin")
    }

    /// A spine of `F_g^s` built from a theta graph by inserting edges.
    pub fn spine(g: usize, s: usize) -> Result<Fatgraph, Error> {
        if s == 0 || 2 * g + s <= 2 {
            return Err(Error::Degenerate("need s ≥ 1 and 2g − 2 + s > 0"));
        }
        let mut t = if g == 0 { Fatgraph::planar_theta() } else { Fatgraph::theta() };
        let (mut cg, mut cs) = if g == 0 { (0, 3) } else { (1, 1) };
        while cg < g {
            if cs < 2 {
                t = t.insert_edge(cg, cs + 1)?;
                cs += 1;
            }
            t = t.insert_edge(cg + 1, cs - 1)?;
            cg += 1;
            cs -= 1;
        }
        while cs < s {
            t = t.insert_edge(cg, cs + 1)?;
            cs += 1;
        }
        Ok(t)
    }

    /// Adds an edge between two new vertices placed on existing edges, taking
    /// the first placement (in index order) that produces type `(g, s)`.
    fn insert_edge(&self, g: usize, s: usize) -> Result<Fatgraph, Error> {
        let n = self.num_half_edges();
        let m = self.edges.len();
        for e1 in 0..m {
            for e2 in 0..m + 2 {
                for sides in 0..4u8 {
                    let mut verts = self.verts.clone();
                    let mut edges = self.edges.clone();
                    let [p, pp] = edges[e1];
                    let x = if sides & 1 == 0 { [n, n + 1, n + 2] } else { [n, n + 2, n + 1] };
                    verts.push(x);
                    edges[e1] = [p, n];
                    edges.push([n + 1, pp]);
                    if e2 >= edges.len() {
                        continue;
                    }
                    let [q, qq] = edges[e2];
                    let y = if sides & 2 == 0 { [n + 3, n + 4, n + 5] } else { [n + 3, n + 5, n + 4] };
                    verts.push(y);
                    edges[e2] = [q, n + 3];
                    edges.push([n + 4, qq]);
                    edges.push([n + 2, n + 5]);
                    if let Ok(t) = Fatgraph::new(verts, edges) {
                        if t.genus() == g && t.num_punctures() == s {
                            return Ok(t);
                        }
                    }
                }
            }
        }
        Err(Error::Degenerate("no edge insertion reaches the requested type"))
    }

    /// Breadth-first search over flip sequences for a bipartite spine.
    pub fn flips_to_bipartite(&self, max_depth: usize) -> Result<Vec<usize>, Error> {
        let mut seen = BTreeSet::new();
        seen.insert(self.verts.clone());
        let mut queue = VecDeque::from([(self.clone(), Vec::new())]);
        while let Some((t, path)) = queue.pop_front() {
            if t.is_bipartite() {
                return Ok(path);
            }
            if path.len() == max_depth {
                continue;
            }
            for e in 0..t.edges.len() {
                if let Ok(next) = t.flip(e) {
                    if seen.insert(next.verts.clone()) {
                        let mut p = path.clone();
                        p.push(e);
                        queue.push_back((next, p));
                    }
                }
            }
        }
        Err(Error::NotBipartite)
    }

    /// Reads `fatgraph v1`, vertex lines `v<i>: h<a> h<b> h<c>`, edge lines
    /// `e<j>: h<a> h<b>` and an optional `orient:` line.
    pub fn parse(text: &str) -> Result<(Fatgraph, Option<Orientation>), Error> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        if lines.next() != Some("fatgraph v1") {
            return Err(Error::Parse("missing `fatgraph v1` header"));
        }
        let mut verts: Vec<(usize, [usize; 3])> = Vec::new();
        let mut edges: Vec<(usize, [usize; 2])> = Vec::new();
        let mut orient = None;
        for line in lines {
            if let Some(rest) = line.strip_prefix("orient:") {
                orient = Some(parse_orient_items(rest)?);
                continue;
            }
            let (head, body) = line.split_once(':').ok_or(Error::Parse("expected `name: items`"))?;
            let items = body.split_whitespace().map(|t| parse_label(t, 'h')).collect::<Result<Vec<_>, _>>()?;
            if let Some(i) = head.trim().strip_prefix('v') {
                let i: usize = i.parse().map_err(|_| Error::Parse("bad vertex label"))?;
                let hs: [usize; 3] = items.try_into().map_err(|_| Error::NotTrivalent { vertex: i })?;
                verts.push((i, hs));
            } else if let Some(j) = head.trim().strip_prefix('e') {
                let j: usize = j.parse().map_err(|_| Error::Parse("bad edge label"))?;
                let hs: [usize; 2] = items.try_into().map_err(|_| Error::NotInvolutive)?;
                edges.push((j, hs));
            } else {
                return Err(Error::Parse("unknown line"));
            }
        }
        let verts = in_index_order(verts, "vertex labels must be v0, v1, … in order")?;
        let edges = in_index_order(edges, "edge labels must be e0, e1, … in order")?;
        let g = Fatgraph::new(verts, edges)?;
        let o = match orient {
            Some(items) => Some(Orientation::from_tails(&g, &items)?),
            None => None,
        };
        Ok((g, o))
    }

    /// Deterministic text form; with an orientation an `orient:` line is appended.
    pub fn to_text(&self, orientation: Option<&Orientation>) -> String {
        let mut s = String::from("fatgraph v1\n");
        for (i, hs) in self.verts.iter().enumerate() {
            let _ = writeln!(s, "v{i}: h{} h{} h{}", hs[0], hs[1], hs[2]);
        }
        for (j, hs) in self.edges.iter().enumerate() {
            let _ = writeln!(s, "e{j}: h{} h{}", hs[0], hs[1]);
        }
        if let Some(o) = orientation {
            let _ = writeln!(s, "{}", o.orient_line(self));
        }
        s
    }
}

impl fmt::Display for Fatgraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(None))
    }
}

fn parse_label(t: &str, prefix: char) -> Result<usize, Error> {
    t.strip_prefix(prefix)
        .and_then(|d| d.parse().ok())
        .ok_or(Error::Parse("expected a label like h3 or e1"))
}

pub(crate) fn parse_orient_items(rest: &str) -> Result<Vec<(usize, usize)>, Error> {
    let toks: Vec<&str> = rest.split_whitespace().collect();
    if !toks.len().is_multiple_of(2) {
        return Err(Error::Parse("orient: expects pairs `e<j> h<tail>`"));
    }
    toks.chunks(2).map(|c| Ok((parse_label(c[0], 'e')?, parse_label(c[1], 'h')?))).collect()
}

fn in_index_order<T>(mut items: Vec<(usize, T)>, msg: &'static str) -> Result<Vec<T>, Error> {
    items.sort_by_key(|(i, _)| *i);
    if items.iter().enumerate().any(|(k, (i, _))| k != *i) {
        return Err(Error::Parse(msg));
    }
    Ok(items.into_iter().map(|(_, t)| t).collect())
}

/// Labels of the quadrilateral around a flippable edge `e = {h, h′}`:
/// `u = (h, a1, a2)`, `v = (h′, b1, b2)` counter-clockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlipLocal {
    pub u: usize,
    pub v: usize,
    pub h: usize,
    pub hp: usize,
    pub a1: usize,
    pub a2: usize,
    pub b1: usize,
    pub b2: usize,
}

/// A closed walk on the fatgraph, stored as the cyclic sequence of
/// half-edges it leaves along.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk(pub Vec<usize>);

impl Walk {
    /// Checks closure and the absence of immediate backtracking.
    pub fn validate(&self, t: &Fatgraph) -> Result<(), Error> {
        let w = &self.0;
        if w.is_empty() {
            return Err(Error::CurveNotClosed);
        }
        for k in 0..w.len() {
            let x = t.partner(w[k]);
            let next = w[(k + 1) % w.len()];
            if next >= t.num_half_edges() || t.vertex(next) != t.vertex(x) || next == x {
                return Err(Error::CurveNotClosed);
            }
        }
        Ok(())
    }

    /// Mod-two edge vector.
    pub fn class(&self, t: &Fatgraph) -> Vec<bool> {
        let mut x = vec![false; t.num_edges()];
        for &h in &self.0 {
            x[t.edge(h)] ^= true;
        }
        x
    }

    pub fn reversed(&self, t: &Fatgraph) -> Walk {
        Walk(self.0.iter().rev().map(|&h| t.partner(h)).collect())
    }
}

/// Direction bit per edge: edge `e = [h0, h1]` points away from `h0` unless reversed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Orientation {
    pub reversed: Vec<bool>,
}

impl Orientation {
    pub fn forward(t: &Fatgraph) -> Orientation {
        Orientation { reversed: vec![false; t.num_edges()] }
    }

    /// The `k`-th orientation in binary order, bit `e` reversing edge `e`.
    pub fn from_index(t: &Fatgraph, k: u64) -> Orientation {
        Orientation { reversed: (0..t.num_edges()).map(|e| (k >> e) & 1 == 1).collect() }
    }

    pub fn from_tails(t: &Fatgraph, tails: &[(usize, usize)]) -> Result<Orientation, Error> {
        let mut o = Orientation::forward(t);
        let mut seen = vec![false; t.num_edges()];
        for &(e, h) in tails {
            if e >= t.num_edges() {
                return Err(Error::UnknownEdge { edge: e });
            }
            let [h0, h1] = t.edge_half_edges(e);
            if h != h0 && h != h1 {
                return Err(Error::Parse("orient: tail is not a half-edge of its edge"));
            }
            o.reversed[e] = h == h1;
            seen[e] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Parse("orient: every edge needs a tail"));
        }
        Ok(o)
    }

    pub fn tail(&self, t: &Fatgraph, e: usize) -> usize {
        t.edge_half_edges(e)[self.reversed[e] as usize]
    }

    pub fn is_tail(&self, t: &Fatgraph, h: usize) -> bool {
        self.tail(t, t.edge(h)) == h
    }

    /// Fatgraph reflection at `v`. A loop at `v` is reversed twice and so kept.
    pub fn reflect(&self, t: &Fatgraph, v: usize) -> Orientation {
        let mut o = self.clone();
        for h in t.vertex_half_edges(v) {
            o.reversed[t.edge(h)] ^= true;
        }
        o
    }

    /// Edges where the two orientations disagree.
    pub fn difference(&self, other: &Orientation) -> Vec<bool> {
        self.reversed.iter().zip(&other.reversed).map(|(a, b)| a != b).collect()
    }

    pub fn orient_line(&self, t: &Fatgraph) -> String {
        let mut s = String::from("orient:");
        for e in 0..t.num_edges() {
            let _ = write!(s, " e{e} h{}", self.tail(t, e));
        }
        s
    }
}

/// Reflection vector of `v`: edges with an odd number of ends at `v`.
fn reflection_vector(t: &Fatgraph, v: usize) -> Vec<bool> {
    let mut r = vec![false; t.num_edges()];
    for h in t.vertex_half_edges(v) {
        r[t.edge(h)] ^= true;
    }
    r
}

/// Lexicographically smallest orientation in the reflection class (edge 0
/// most significant, unreversed smaller), with the set of vertices whose
/// reflections produce it.
pub fn canonical_orientation(t: &Fatgraph, o: &Orientation) -> (Orientation, Vec<bool>) {
    let nv = t.num_vertices();
    let ne = t.num_edges();
    let mut rows: Vec<(Vec<bool>, Vec<bool>)> = (0..nv)
        .map(|v| {
            let mut tag = vec![false; nv];
            tag[v] = true;
            (reflection_vector(t, v), tag)
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next = 0;
    for col in 0..ne {
        let Some(p) = (next..rows.len()).find(|&i| rows[i].0[col]) else { continue };
        rows.swap(next, p);
        for i in 0..rows.len() {
            if i != next && rows[i].0[col] {
                let (pv, pt) = rows[next].clone();
                xor_into(&mut rows[i].0, &pv);
                xor_into(&mut rows[i].1, &pt);
            }
        }
        pivots.push((col, next));
        next += 1;
    }
    let mut bits = o.reversed.clone();
    let mut used = vec![false; nv];
    for &(col, i) in &pivots {
        if bits[col] {
            xor_into(&mut bits, &rows[i].0);
            xor_into(&mut used, &rows[i].1);
        }
    }
    (Orientation { reversed: bits }, used)
}

fn xor_into(a: &mut [bool], b: &[bool]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= *y;
    }
}

pub fn same_class(t: &Fatgraph, a: &Orientation, b: &Orientation) -> bool {
    canonical_orientation(t, a).0 == canonical_orientation(t, b).0
}

/// All orientation classes, by canonical representative, in increasing order.
pub fn orientation_classes(t: &Fatgraph) -> Vec<Orientation> {
    let ne = t.num_edges();
    assert!(ne < 40, "exhaustive enumeration is for small graphs");
    let mut set = BTreeSet::new();
    for k in 0..(1u64 << ne) {
        set.insert(canonical_orientation(t, &Orientation::from_index(t, k)).0);
    }
    set.into_iter().collect()
}

/// Kinds of edges of the skinny surface graph with its boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkinnyEdge {
    /// Common side of `H_v` and `R_e` at half-edge `h`, from `r_h` to `l_h`. These are the dimers.
    Segment(usize),
    /// Boundary side of `H_v` at the corner between `h` and `σ(h)`, from `l_h` to `r_σ(h)`.
    Arc(usize),
    /// Boundary side of `R_e` from `r_h` to `l_ι(h)`.
    Long(usize),
}

/// Surface graph with boundary of the skinny surface: vertices `r_h = 2h`
/// and `l_h = 2h + 1` at the ends of the segment of each half-edge.
#[derive(Clone, Debug)]
pub struct SkinnyGraph {
    n: usize,
    ends: Vec<[usize; 2]>,
    ccw: Vec<[usize; 3]>,
    faces: Vec<Vec<(usize, bool)>>,
    hexagons: usize,
}

impl SkinnyGraph {
    pub fn build(t: &Fatgraph) -> SkinnyGraph {
        let n = t.num_half_edges();
        let r = |h: usize| 2 * h;
        let l = |h: usize| 2 * h + 1;
        let mut ends = vec![[0; 2]; 3 * n];
        for h in 0..n {
            ends[h] = [r(h), l(h)];
            ends[n + h] = [l(h), r(t.next_ccw(h))];
            ends[2 * n + h] = [r(h), l(t.partner(h))];
        }
        let mut ccw = vec![[0; 3]; 2 * n];
        for h in 0..n {
            ccw[r(h)] = [2 * n + h, h, n + t.prev_ccw(h)];
            ccw[l(h)] = [n + h, h, 2 * n + t.partner(h)];
        }
        let mut faces = Vec::new();
        for v in 0..t.num_vertices() {
            let mut f = Vec::new();
            for h in t.vertex_half_edges(v) {
                f.push((h, true));
                f.push((n + h, true));
            }
            faces.push(f);
        }
        for e in 0..t.num_edges() {
            let [h, hp] = t.edge_half_edges(e);
            faces.push(vec![(h, false), (2 * n + h, true), (hp, false), (2 * n + hp, true)]);
        }
        SkinnyGraph { n, ends, ccw, faces, hexagons: t.num_vertices() }
    }

    pub fn num_vertices(&self) -> usize {
        2 * self.n
    }

    pub fn num_edges(&self) -> usize {
        self.ends.len()
    }

    pub fn num_hexagons(&self) -> usize {
        self.hexagons
    }

    pub fn num_rectangles(&self) -> usize {
        self.faces.len() - self.hexagons
    }

    /// Faces as counter-clockwise boundary walks `(edge, along its defining direction)`.
    pub fn faces(&self) -> &[Vec<(usize, bool)>] {
        &self.faces
    }

    pub fn kind(&self, edge: usize) -> SkinnyEdge {
        match edge / self.n {
            0 => SkinnyEdge::Segment(edge),
            1 => SkinnyEdge::Arc(edge - self.n),
            _ => SkinnyEdge::Long(edge - 2 * self.n),
        }
    }

    pub fn index(&self, kind: SkinnyEdge) -> usize {
        match kind {
            SkinnyEdge::Segment(h) => h,
            SkinnyEdge::Arc(h) => self.n + h,
            SkinnyEdge::Long(h) => 2 * self.n + h,
        }
    }

    pub fn ends(&self, edge: usize) -> [usize; 2] {
        self.ends[edge]
    }

    /// Edges at a vertex in counter-clockwise order (the vertex lies on the boundary).
    pub fn ccw_at(&self, x: usize) -> [usize; 3] {
        self.ccw[x]
    }

    pub fn is_dimer(&self, edge: usize) -> bool {
        edge < self.n
    }

    /// Number of dimer edges at each vertex.
    pub fn dimer_degree(&self, x: usize) -> usize {
        self.ccw[x].iter().filter(|&&e| self.is_dimer(e)).count()
    }

    fn traversal_start(&self, (e, fwd): (usize, bool)) -> usize {
        self.ends[e][if fwd { 0 } else { 1 }]
    }

    fn traversal_end(&self, (e, fwd): (usize, bool)) -> usize {
        self.ends[e][if fwd { 1 } else { 0 }]
    }
}

/// Orientation of the skinny surface graph, `forward[edge]` meaning it agrees
/// with the edge's defining direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kasteleyn {
    pub forward: Vec<bool>,
}

impl Kasteleyn {
    /// Number of traversals against the orientation, with multiplicity.
    pub fn disagreements(&self, curve: &[(usize, bool)]) -> usize {
        curve.iter().filter(|&&(e, fwd)| fwd != self.forward[e]).count()
    }

    /// Kasteleyn reflection at vertex `x`.
    pub fn reflect(&self, sk: &SkinnyGraph, x: usize) -> Kasteleyn {
        let mut k = self.clone();
        for e in sk.ccw_at(x) {
            k.forward[e] ^= true;
        }
        k
    }

    /// Faces whose boundary has an even number of disagreements.
    pub fn failing_faces(&self, sk: &SkinnyGraph) -> Vec<usize> {
        (0..sk.faces.len()).filter(|&f| self.disagreements(&sk.faces[f]).is_multiple_of(2)).collect()
    }
}

/// Special Kasteleyn orientation of `ω`: segments counter-clockwise around
/// their hexagon, hexagon arcs clockwise, rectangle long sides parallel to `ω`.
pub fn special_kasteleyn(t: &Fatgraph, o: &Orientation) -> Result<(SkinnyGraph, Kasteleyn), Error> {
    let sk = SkinnyGraph::build(t);
    let n = t.num_half_edges();
    let mut forward = vec![true; 3 * n];
    for h in 0..n {
        forward[n + h] = false;
        forward[2 * n + h] = o.is_tail(t, h);
    }
    let k = Kasteleyn { forward };
    if let Some(&f) = k.failing_faces(&sk).first() {
        return Err(Error::Kasteleyn { face: f });
    }
    Ok((sk, k))
}

/// Which long side of a rectangle a curve runs along.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// From `r_h` to `l_ι(h)` when leaving along `h`.
    Right,
    /// From `l_h` to `r_ι(h)` when leaving along `h`.
    Left,
}

/// Default sides: each step runs on the side of the turn at its far end.
pub fn default_sides(t: &Fatgraph, w: &Walk) -> Vec<Side> {
    let k = w.0.len();
    (0..k)
        .map(|i| {
            let x = t.partner(w.0[i]);
            if w.0[(i + 1) % k] == t.next_ccw(x) {
                Side::Right
            } else {
                Side::Left
            }
        })
        .collect()
}

/// Realizes a closed walk as an edge path in the skinny surface graph. At
/// each vertex the path runs through the inner corner of the turn and
/// crosses segments where the chosen sides require.
pub fn curve_from_walk(t: &Fatgraph, sk: &SkinnyGraph, w: &Walk, sides: &[Side]) -> Result<Vec<(usize, bool)>, Error> {
    w.validate(t)?;
    if sides.len() != w.0.len() {
        return Err(Error::CurveNotClosed);
    }
    let k = w.0.len();
    let mut c = Vec::new();
    for i in 0..k {
        let out = w.0[i];
        let x = t.partner(out);
        match sides[i] {
            Side::Right => c.push((sk.index(SkinnyEdge::Long(out)), true)),
            Side::Left => c.push((sk.index(SkinnyEdge::Long(x)), false)),
        }
        let next = w.0[(i + 1) % k];
        let seg_x = sk.index(SkinnyEdge::Segment(x));
        let seg_n = sk.index(SkinnyEdge::Segment(next));
        let right_turn = next == t.next_ccw(x);
        if right_turn {
            if sides[i] == Side::Left {
                c.push((seg_x, true));
            }
            c.push((sk.index(SkinnyEdge::Arc(x)), true));
            if sides[(i + 1) % k] == Side::Left {
                c.push((seg_n, true));
            }
        } else {
            if sides[i] == Side::Right {
                c.push((seg_x, false));
            }
            c.push((sk.index(SkinnyEdge::Arc(next)), false));
            if sides[(i + 1) % k] == Side::Right {
                c.push((seg_n, false));
            }
        }
    }
    check_closed(sk, &c)?;
    Ok(c)
}

fn check_closed(sk: &SkinnyGraph, c: &[(usize, bool)]) -> Result<(), Error> {
    if c.is_empty() {
        return Err(Error::CurveNotClosed);
    }
    for i in 0..c.len() {
        if sk.traversal_end(c[i]) != sk.traversal_start(c[(i + 1) % c.len()]) {
            return Err(Error::CurveNotClosed);
        }
    }
    Ok(())
}

/// Number of dimers sticking out to the left of a closed curve: at a vertex
/// entered along `e_in` and left along `e_out`, the third edge is counted
/// when it is a dimer and `(e_out, e₃, e_in)` is counter-clockwise.
pub fn dimers_left(sk: &SkinnyGraph, c: &[(usize, bool)]) -> Result<usize, Error> {
    check_closed(sk, c)?;
    let mut count = 0;
    for i in 0..c.len() {
        let e_in = c[i].0;
        let e_out = c[(i + 1) % c.len()].0;
        let x = sk.traversal_end(c[i]);
        let order = sk.ccw_at(x);
        let Some(e3) = order.iter().copied().find(|&e| e != e_in && e != e_out) else { continue };
        if e_in == e_out || !sk.is_dimer(e3) {
            continue;
        }
        let pos = |e: usize| order.iter().position(|&f| f == e).expect("edge at vertex");
        if (pos(e3) + 3 - pos(e_out)) % 3 == 1 && (pos(e_in) + 3 - pos(e3)) % 3 == 1 {
            count += 1;
        }
    }
    Ok(count)
}

/// `1 + n^K_C + ℓ^D_C (mod 2)` for one closed curve.
pub fn curve_term(sk: &SkinnyGraph, k: &Kasteleyn, c: &[(usize, bool)]) -> Result<bool, Error> {
    Ok((1 + k.disagreements(c) + dimers_left(sk, c)?) % 2 == 1)
}

/// Mod-two intersection number of two closed walks, computed by pushing the
/// second walk onto its right-hand long sides and counting interleaved
/// chords inside each hexagon.
pub fn intersection(t: &Fatgraph, a: &Walk, b: &Walk) -> Result<bool, Error> {
    a.validate(t)?;
    b.validate(t)?;
    let chords = |w: &Walk, enter: usize, leave: usize| {
        let k = w.0.len();
        (0..k)
            .map(|i| {
                let x = t.partner(w.0[i]);
                let out = w.0[(i + 1) % k];
                (t.vertex(x), 3 * t.slot(x) + enter, 3 * t.slot(out) + leave)
            })
            .collect::<Vec<_>>()
    };
    let ca = chords(a, 1, 1);
    let cb = chords(b, 2, 0);
    let between = |p: usize, q: usize, x: usize| (x + 9 - p) % 9 < (q + 9 - p) % 9 && x != p;
    let mut parity = false;
    for &(va, p, q) in &ca {
        for &(vb, p2, q2) in &cb {
            if va == vb && between(p, q, p2) != between(p, q, q2) {
                parity ^= true;
            }
        }
    }
    Ok(parity)
}

/// Value of the quadratic form on the class of a union of closed walks,
/// `Σ_{i<j} C_i·C_j + Σ (1 + n^K + ℓ^D)`, each walk realized with its default sides.
pub fn q_of_walks(t: &Fatgraph, o: &Orientation, walks: &[Walk]) -> Result<bool, Error> {
    let (sk, k) = special_kasteleyn(t, o)?;
    let mut q = false;
    for (i, w) in walks.iter().enumerate() {
        let c = curve_from_walk(t, &sk, w, &default_sides(t, w))?;
        q ^= curve_term(&sk, &k, &c)?;
        for v in &walks[i + 1..] {
            q ^= intersection(t, w, v)?;
        }
    }
    Ok(q)
}

/// Quadratic form on the fundamental-cycle basis together with the
/// intersection matrix of that basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    /// Non-tree edge defining each basis cycle.
    pub edges: Vec<usize>,
    pub values: Vec<bool>,
    pub intersection: Vec<Vec<bool>>,
}

impl QuadraticForm {
    /// `q(Σ a_i c_i) = Σ a_i q(c_i) + Σ_{i<j} a_i a_j c_i·c_j`.
    pub fn eval(&self, coeffs: &[bool]) -> bool {
        let mut q = false;
        for i in 0..coeffs.len() {
            if !coeffs[i] {
                continue;
            }
            q ^= self.values[i];
            for j in i + 1..coeffs.len() {
                if coeffs[j] {
                    q ^= self.intersection[i][j];
                }
            }
        }
        q
    }

    /// Value on a mod-two edge cycle.
    pub fn eval_class(&self, x: &[bool]) -> bool {
        let coeffs: Vec<bool> = self.edges.iter().map(|&e| x[e]).collect();
        self.eval(&coeffs)
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Arf invariant by counting zeros of `q`.
    pub fn arf(&self) -> bool {
        let n = self.dim();
        assert!(n < 32, "exhaustive evaluation is for small ranks");
        let zeros = (0..(1u64 << n))
            .filter(|&m| !self.eval(&(0..n).map(|i| (m >> i) & 1 == 1).collect::<Vec<_>>()))
            .count();
        2 * zeros < (1usize << n)
    }
}

pub fn quadratic_form(t: &Fatgraph, o: &Orientation) -> Result<QuadraticForm, Error> {
    let basis = t.fundamental_cycles();
    let (sk, k) = special_kasteleyn(t, o)?;
    let mut values = Vec::new();
    for (_, w) in &basis {
        let c = curve_from_walk(t, &sk, w, &default_sides(t, w))?;
        values.push(curve_term(&sk, &k, &c)?);
    }
    let n = basis.len();
    let mut inter = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                inter[i][j] = intersection(t, &basis[i].1, &basis[j].1)?;
            }
        }
    }
    Ok(QuadraticForm { edges: basis.iter().map(|(e, _)| *e).collect(), values, intersection: inter })
}

/// Spin-structure identifier: the quadratic form on the fundamental-cycle basis as bits.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpinId(pub Vec<bool>);

impl fmt::Display for SpinId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_char(if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

pub fn spin_class(t: &Fatgraph, o: &Orientation) -> Result<SpinId, Error> {
    Ok(SpinId(quadratic_form(t, o)?.values))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PunctureType {
    NeveuSchwarz,
    Ramond,
}

impl fmt::Display for PunctureType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PunctureType::NeveuSchwarz => "NS",
            PunctureType::Ramond => "R",
        })
    }
}

/// `q` of the boundary cycle around each puncture.
pub fn puncture_types(t: &Fatgraph, o: &Orientation) -> Result<Vec<PunctureType>, Error> {
    t.boundary_cycles()
        .iter()
        .map(|c| {
            Ok(if q_of_walks(t, o, core::slice::from_ref(c))? {
                PunctureType::Ramond
            } else {
                PunctureType::NeveuSchwarz
            })
        })
        .collect()
}

/// Image of a mod-two cycle under the flip of `e`: the flipped edge is
/// crossed as often as the two sides `a2`, `b1` of the new triangle together.
pub fn transport_class(t: &Fatgraph, e: usize, x: &[bool]) -> Result<Vec<bool>, Error> {
    let l = t.flip_local(e)?;
    let mut y = x.to_vec();
    y[e] = x[t.edge(l.a2)] ^ x[t.edge(l.b1)];
    Ok(y)
}

/// Edges of the quadrilateral around `e`, the flipped edge first, without repetition.
pub fn local_edges(t: &Fatgraph, e: usize) -> Result<Vec<usize>, Error> {
    let l = t.flip_local(e)?;
    let mut out = vec![e];
    for h in [l.a1, l.a2, l.b1, l.b2] {
        let f = t.edge(h);
        if !out.contains(&f) {
            out.push(f);
        }
    }
    Ok(out)
}

fn all_cycle_classes(t: &Fatgraph) -> Vec<Vec<bool>> {
    let basis: Vec<Vec<bool>> = t.fundamental_cycles().iter().map(|(_, w)| w.class(t)).collect();
    let n = basis.len();
    assert!(n < 24, "exhaustive enumeration is for small ranks");
    (0..(1u64 << n))
        .map(|m| {
            let mut x = vec![false; t.num_edges()];
            for (i, b) in basis.iter().enumerate() {
                if (m >> i) & 1 == 1 {
                    xor_into(&mut x, b);
                }
            }
            x
        })
        .collect()
}

/// Whether `(τ′, ω′)` carries the transported quadratic form of `(τ, ω)` on every class.
pub fn flip_preserves_form(t: &Fatgraph, e: usize, o: &Orientation, t2: &Fatgraph, o2: &Orientation) -> Result<bool, Error> {
    let q1 = quadratic_form(t, o)?;
    let q2 = quadratic_form(t2, o2)?;
    for x in all_cycle_classes(t) {
        if q1.eval_class(&x) != q2.eval_class(&transport_class(t, e, &x)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Brute force over the orientations of the local edges after the flip,
/// keeping every other edge as in `ω`: returns those that preserve the
/// quadratic form on all classes.
pub fn flip_oracle(t: &Fatgraph, e: usize, o: &Orientation) -> Result<Vec<Orientation>, Error> {
    let t2 = t.flip(e)?;
    let local = local_edges(t, e)?;
    let mut found = Vec::new();
    for m in 0..(1u32 << local.len()) {
        let mut o2 = o.clone();
        for (i, &f) in local.iter().enumerate() {
            o2.reversed[f] = (m >> i) & 1 == 1;
        }
        if flip_preserves_form(t, e, o, &t2, &o2)? {
            found.push(o2);
        }
    }
    Ok(found)
}

/// Orientation after flipping `e`, with the vertices reflected on the way.
/// `ω` is first reflected at the ends of `e` so that `e` points from `u` to
/// `v` and the northwest leaf `a1` points into `u` (when it is not a loop).
/// Then, if `a2` also points into `u`, the edges of `a1`, `a2` and `b2` are
/// reversed; otherwise only the edge of `b1` is.
pub fn flip_orientation(t: &Fatgraph, e: usize, o: &Orientation) -> Result<(Orientation, Vec<bool>), Error> {
    let l = t.flip_local(e)?;
    let mut w = o.clone();
    let mut refl = vec![false; t.num_vertices()];
    if !w.is_tail(t, l.h) {
        w = w.reflect(t, l.v);
        refl[l.v] ^= true;
    }
    if w.is_tail(t, l.a1) {
        // reflecting at u and at v keeps e and reverses the leaves
        w = w.reflect(t, l.u).reflect(t, l.v);
        refl[l.u] ^= true;
        refl[l.v] ^= true;
    }
    let reversed: &[usize] = if w.is_tail(t, l.a2) { &[l.b1] } else { &[l.a1, l.a2, l.b2] };
    for &h in reversed {
        w.reversed[t.edge(h)] ^= true;
    }
    Ok((w, refl))
}

/// Flip of `e` together with the evolved orientation.
pub fn flip(t: &Fatgraph, e: usize, o: &Orientation) -> Result<(Fatgraph, Orientation), Error> {
    let t2 = t.flip(e)?;
    let (o2, _) = flip_orientation(t, e, o)?;
    Ok((t2, o2))
}

/// Ideal triangulation dual to a fatgraph: triangle `v` has side `k` dual to
/// the half-edge in slot `k` of vertex `v`, sides listed counter-clockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    /// Arc on each side.
    pub triangles: Vec<[usize; 3]>,
    /// Puncture at corner `k`, between sides `k` and `k + 1`.
    pub corners: Vec<[usize; 3]>,
    pub arcs: Vec<DualArc>,
    pub punctures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualArc {
    /// `(triangle, side)` on either side, in the order of the fatgraph edge's half-edges.
    pub sides: [(usize, usize); 2],
    /// Punctures at the initial and terminal end, in the induced orientation.
    pub ends: [usize; 2],
}

/// Dual triangulation with arcs oriented so that each arc runs clockwise
/// from its dual oriented fatgraph edge.
pub fn dual_triangulation(t: &Fatgraph, o: &Orientation) -> Triangulation {
    let face = t.face_of();
    // the corner after h (between h and σh) lies on the boundary cycle leaving along ι(h)
    let corner = |h: usize| face[t.partner(h)];
    let triangles = (0..t.num_vertices()).map(|v| t.vertex_half_edges(v).map(|h| t.edge(h))).collect();
    let corners = (0..t.num_vertices()).map(|v| t.vertex_half_edges(v).map(corner)).collect();
    let arcs = (0..t.num_edges())
        .map(|e| {
            let [h0, h1] = t.edge_half_edges(e);
            let tail = o.tail(t, e);
            DualArc {
                sides: [(t.vertex(h0), t.slot(h0)), (t.vertex(h1), t.slot(h1))],
                ends: [corner(tail), corner(t.prev_ccw(tail))],
            }
        })
        .collect();
    Triangulation { triangles, corners, arcs, punctures: t.num_punctures() }
}

impl Triangulation {
    /// Fatgraph with half-edge `3v + k` for side `k` of triangle `v`.
    pub fn to_fatgraph(&self) -> Result<Fatgraph, Error> {
        let verts = (0..self.triangles.len()).map(|v| [3 * v, 3 * v + 1, 3 * v + 2]).collect();
        let edges = self.arcs.iter().map(|a| a.sides.map(|(v, k)| 3 * v + k)).collect();
        Fatgraph::new(verts, edges)
    }

    /// Diagonal exchange in the quadrilateral around `arc`, laid out as the
    /// fatgraph flip lays out its vertices. Arc orientations are not tracked.
    pub fn flip(&self, arc: usize) -> Result<Triangulation, Error> {
        let [(u, i), (v, j)] = self.arcs.get(arc).ok_or(Error::UnknownEdge { edge: arc })?.sides;
        if u == v {
            return Err(Error::LoopEdge { edge: arc });
        }
        let side = |t: usize, k: usize| (t, k % 3);
        let (a1, a2) = (side(u, i + 1), side(u, i + 2));
        let (b1, b2) = (side(v, j + 1), side(v, j + 2));
        let arc_at = |s: (usize, usize)| self.triangles[s.0][s.1];
        let corner_at = |s: (usize, usize)| self.corners[s.0][s.1];
        // corners: A after a2 in u, B after a1 in u, D after b1 in v, C after b2 in v
        let (pa, pb, pd) = (corner_at(a2), corner_at(a1), corner_at(b1));
        let pc = corner_at(b2);
        let mut tri = self.clone();
        tri.triangles[u] = [arc, arc_at(a2), arc_at(b1)];
        tri.triangles[v] = [arc, arc_at(b2), arc_at(a1)];
        tri.corners[u] = [pb, pa, pd];
        tri.corners[v] = [pd, pc, pb];
        let mut relocate = |old: (usize, usize), new: (usize, usize)| {
            for a in tri.arcs.iter_mut() {
                for s in a.sides.iter_mut() {
                    if *s == old {
                        *s = new;
                    }
                }
            }
        };
        // move sides to temporary keys first so that swaps inside u and v do not collide
        let moves = [(a2, (u, 1)), (b1, (u, 2)), (b2, (v, 1)), (a1, (v, 2))];
        for (k, &(old, _)) in moves.iter().enumerate() {
            relocate(old, (usize::MAX, k));
        }
        for (k, &(_, new)) in moves.iter().enumerate() {
            relocate((usize::MAX, k), new);
        }
        tri.arcs[arc].sides = [(u, 0), (v, 0)];
        tri.arcs[arc].ends = [pb, pd];
        Ok(tri)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_and_iota() {
        let t = Fatgraph::k4();
        for h in 0..t.num_half_edges() {
            assert_eq!(t.partner(t.partner(h)), h);
            assert_ne!(t.partner(h), h);
            assert_eq!(t.next_ccw(t.next_ccw(t.next_ccw(h))), h);
            assert_eq!(t.prev_ccw(t.next_ccw(h)), h);
        }
    }

    #[test]
    fn reflection_vectors_sum_to_zero() {
        let t = Fatgraph::genus_two();
        let mut total = vec![false; t.num_edges()];
        for v in 0..t.num_vertices() {
            xor_into(&mut total, &reflection_vector(&t, v));
        }
        assert!(total.iter().all(|b| !b));
        // loops are fixed by reflection
        let d = Fatgraph::dumbbell();
        assert_eq!(reflection_vector(&d, 0), vec![true, false, false]);
    }

    #[test]
    fn fundamental_cycles_are_closed() {
        for t in [Fatgraph::theta(), Fatgraph::dumbbell(), Fatgraph::genus_two()] {
            let cycles = t.fundamental_cycles();
            assert_eq!(cycles.len(), t.betti());
            for (e, w) in cycles {
                w.validate(&t).unwrap();
                assert!(w.class(&t)[e]);
            }
        }
    }
}
