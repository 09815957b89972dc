//! λ-length/μ-invariant coordinates on a trivalent fatgraph, super Ptolemy
//! flips, the lift of the universal cover's triangulation into the special
//! light cone, the induced representation, shear coordinates and the
//! invariant two-form.
//!
//! Triangle `v` is dual to fatgraph vertex `v`. Relative to a half-edge `h`
//! at `v`, its corners are `A` (between `σ⁻¹h` and `h`), `B` (between `σh`
//! and `σ⁻¹h`) and `C` (between `h` and `σh`), so that `(A, B, C)` is a
//! positive triple with `a = λ(σ⁻¹h)`, `b = λ(σh)` and `e = λ(h)`. The frame
//! of `v` at `h` puts `(A, B, C)` in standard position with `φ = μ_v`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::error::Error;
use crate::fatgraph_spin::{self, Fatgraph, Orientation};
use crate::grassmann::Grassmann;
use crate::minkowski::{self, PositiveTriple, SuperVector};
use crate::superlinalg::OspElement;

#[derive(Clone, Debug, PartialEq)]
pub struct DecoratedCoords {
    pub graph: Fatgraph,
    /// Per edge; even with positive body.
    pub lambda: Vec<Grassmann>,
    /// Per vertex; odd.
    pub mu: Vec<Grassmann>,
    pub orientation: Orientation,
    /// Negative gauge negates every μ-invariant.
    pub negative_gauge: bool,
}

impl DecoratedCoords {
    pub fn new(graph: Fatgraph, lambda: Vec<Grassmann>, mu: Vec<Grassmann>, orientation: Orientation) -> Result<Self, Error> {
        if lambda.len() != graph.num_edges() {
            return Err(Error::UnknownEdge { edge: lambda.len() });
        }
        if mu.len() != graph.num_vertices() {
            return Err(Error::UnknownVertex { vertex: mu.len() });
        }
        if orientation.reversed.len() != graph.num_edges() {
            return Err(Error::Parse("orientation does not match the fatgraph"));
        }
        let rank = lambda.first().map(Grassmann::rank).unwrap_or(0);
        for x in lambda.iter().chain(&mu) {
            if x.rank() != rank {
                return Err(Error::RankMismatch { left: rank, right: x.rank() });
            }
        }
        for l in &lambda {
            if !l.is_even() {
                return Err(Error::WrongParity("λ-length"));
            }
            if l.body() <= 0.0 {
                return Err(Error::NonPositiveBody);
            }
        }
        if mu.iter().any(|m| !m.is_odd()) {
            return Err(Error::WrongParity("μ-invariant"));
        }
        Ok(DecoratedCoords { graph, lambda, mu, orientation, negative_gauge: false })
    }

    /// Every λ-length equal to `value`, every μ-invariant zero.
    pub fn constant(graph: Fatgraph, orientation: Orientation, rank: u8, value: f64) -> Result<Self, Error> {
        let lambda = vec![Grassmann::scalar(rank, value); graph.num_edges()];
        let mu = vec![Grassmann::zero(rank); graph.num_vertices()];
        Self::new(graph, lambda, mu, orientation)
    }

    /// μ-invariant of vertex `v` set to the generator `g{v+1}`.
    pub fn with_generator_mu(mut self) -> Result<Self, Error> {
        let rank = self.rank();
        if (rank as usize) < self.graph.num_vertices() {
            return Err(Error::GeneratorOutOfRange { rank });
        }
        for v in 0..self.mu.len() {
            self.mu[v] = Grassmann::generator(rank, v + 1);
        }
        Ok(self)
    }

    pub fn rank(&self) -> u8 {
        self.lambda[0].rank()
    }

    /// μ-invariant of `v` in the current gauge.
    pub fn effective_mu(&self, v: usize) -> Grassmann {
        if self.negative_gauge {
            -&self.mu[v]
        } else {
            self.mu[v].clone()
        }
    }

    pub fn flip_gauge(&self) -> Self {
        let mut d = self.clone();
        d.negative_gauge = !d.negative_gauge;
        d
    }

    pub fn lambda_of(&self, h: usize) -> &Grassmann {
        &self.lambda[self.graph.edge(h)]
    }

    /// `(a, b, e)` of the triangle at `vertex(h)` relative to `h`.
    pub fn triangle_lambdas(&self, h: usize) -> [&Grassmann; 3] {
        let t = &self.graph;
        [self.lambda_of(t.prev_ccw(h)), self.lambda_of(t.next_ccw(h)), self.lambda_of(h)]
    }

    /// Reads `coords v1` followed by `lambda`, `mu`, `gauge` and an `orient:` line.
    pub fn parse(graph: Fatgraph, rank: u8, text: &str) -> Result<Self, Error> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        if lines.next() != Some("coords v1") {
            return Err(Error::Parse("missing `coords v1` header"));
        }
        let mut lambda: Vec<Option<Grassmann>> = vec![None; graph.num_edges()];
        let mut mu: Vec<Option<Grassmann>> = vec![None; graph.num_vertices()];
        let mut gauge = false;
        let mut orient = None;
        for line in lines {
            if let Some(rest) = line.strip_prefix("orient:") {
                orient = Some(Orientation::from_tails(&graph, &fatgraph_spin::parse_orient_items(rest)?)?);
                continue;
            }
            let (key, rest) = line.split_once(char::is_whitespace).ok_or(Error::Parse("expected `key value`"))?;
            let rest = rest.trim();
            match key {
                "gauge" => {
                    gauge = match rest {
                        "+" => false,
                        "-" => true,
                        _ => return Err(Error::Parse("gauge must be + or -")),
                    }
                }
                "lambda" | "mu" => {
                    let (label, value) = rest.split_once(char::is_whitespace).ok_or(Error::Parse("expected label and value"))?;
                    let x = Grassmann::parse(rank, value.trim())?;
                    let (prefix, slots) = if key == "lambda" { ('e', &mut lambda) } else { ('v', &mut mu) };
                    let i: usize = label
                        .strip_prefix(prefix)
                        .and_then(|d| d.parse().ok())
                        .ok_or(Error::Parse("bad coordinate label"))?;
                    *slots.get_mut(i).ok_or(Error::Parse("coordinate label out of range"))? = Some(x);
                }
                _ => return Err(Error::Parse("unknown coordinate line")),
            }
        }
        let lambda = lambda.into_iter().collect::<Option<Vec<_>>>().ok_or(Error::Parse("missing λ-length"))?;
        let mu = mu.into_iter().collect::<Option<Vec<_>>>().ok_or(Error::Parse("missing μ-invariant"))?;
        let orient = orient.ok_or(Error::Parse("missing orient: line"))?;
        let mut d = DecoratedCoords::new(graph, lambda, mu, orient)?;
        d.negative_gauge = gauge;
        Ok(d)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("coords v1\n");
        for (j, l) in self.lambda.iter().enumerate() {
            let _ = writeln!(s, "lambda e{j} {l}");
        }
        for (i, m) in self.mu.iter().enumerate() {
            let _ = writeln!(s, "mu v{i} {m}");
        }
        let _ = writeln!(s, "gauge {}", if self.negative_gauge { '-' } else { '+' });
        let _ = writeln!(s, "{}", self.orientation.orient_line(&self.graph));
        s
    }
}

/// Standard triple of `vertex(h)` in its frame at `h`.
pub fn frame_triple(d: &DecoratedCoords, h: usize) -> Result<PositiveTriple, Error> {
    let [a, b, e] = d.triangle_lambdas(h);
    let (r, s, t) = minkowski::rst_from_lambdas(a, b, e)?;
    Ok(minkowski::standard_triple(&r, &s, &t, &d.effective_mu(d.graph.vertex(h))))
}

/// Element taking the frame at `h` to the frame at `σ(h)`.
pub fn rotation(d: &DecoratedCoords, h: usize) -> Result<OspElement, Error> {
    OspElement::prime(&d.effective_mu(d.graph.vertex(h)))
}

/// Element taking the frame of `vertex(h)` at `h` to the frame of
/// `vertex(ι h)` at `ι h`. The neighbour is attached with μ-invariant
/// `±μ`, the minus sign (`twisted`) followed by the fermionic reflection.
pub fn crossing(d: &DecoratedCoords, h: usize, twisted: bool) -> Result<OspElement, Error> {
    let t = &d.graph;
    let hp = t.partner(h);
    let [a, b, e] = d.triangle_lambdas(h);
    let c = d.lambda_of(t.prev_ccw(hp));
    let dd = d.lambda_of(t.next_ccw(hp));
    let mut sigma = d.effective_mu(t.vertex(hp));
    if twisted {
        sigma = -&sigma;
    }
    let frame = frame_triple(d, h)?;
    let pd = minkowski::basic_calculation(a, b, c, dd, e, &sigma)?;
    let sw = minkowski::switch_transform(&frame.a, &frame.c, &pd, 1e-9)?;
    Ok(if twisted { sw.g.mul(&OspElement::reflection(d.rank())) } else { sw.g })
}

/// Crossing `h` against the orientation attaches the neighbour with `−μ`.
pub fn is_twisted(d: &DecoratedCoords, h: usize) -> bool {
    !d.orientation.is_tail(&d.graph, h)
}

/// Frame change along a path of half-edges leaving successive vertices,
/// starting in the frame at `start`. Returns the accumulated element and the
/// half-edge whose frame it ends in. Backtracking steps cancel.
pub fn transport(d: &DecoratedCoords, start: usize, steps: &[usize]) -> Result<(OspElement, usize), Error> {
    let t = &d.graph;
    let mut g = OspElement::identity(d.rank());
    let mut x = start;
    for &h in steps {
        if h >= t.num_half_edges() || t.vertex(h) != t.vertex(x) {
            return Err(Error::CurveNotClosed);
        }
        g = rotate_to(d, &g, &mut x, h)?;
        g = crossing(d, h, is_twisted(d, h))?.inverse().mul(&g);
        x = t.partner(h);
    }
    Ok((g, x))
}

fn rotate_to(d: &DecoratedCoords, g: &OspElement, x: &mut usize, target: usize) -> Result<OspElement, Error> {
    let mut g = g.clone();
    while *x != target {
        g = rotation(d, *x)?.inverse().mul(&g);
        *x = d.graph.next_ccw(*x);
    }
    Ok(g)
}

/// Frame change along a closed walk, starting and ending in the frame of
/// `vertex(w[0])` at `w[0]`.
pub fn holonomy(d: &DecoratedCoords, w: &fatgraph_spin::Walk) -> Result<OspElement, Error> {
    w.validate(&d.graph)?;
    let (g, mut x) = transport(d, w.0[0], &w.0)?;
    rotate_to(d, &g, &mut x, w.0[0])
}

/// One lifted triangle: the fatgraph vertex it covers, the half-edges
/// crossed from the base triangle, the element `G` with
/// `ℓ = act(G, standard triple at slot 0)`, and its corners (corner `k`
/// between slots `k` and `k + 1`).
#[derive(Clone, Debug)]
pub struct LiftedTriangle {
    pub vertex: usize,
    pub word: Vec<usize>,
    pub element: OspElement,
    pub corners: [SuperVector; 3],
    /// Parity of twisted crossings along the word.
    pub twist: bool,
}

#[derive(Clone, Debug)]
pub struct LiftedTriangulation {
    pub base: usize,
    pub depth: usize,
    pub triangles: Vec<LiftedTriangle>,
}

fn place(d: &DecoratedCoords, start: usize, word: &[usize]) -> Result<LiftedTriangle, Error> {
    let t = &d.graph;
    let (g, mut x) = transport(d, start, word)?;
    let v = t.vertex(x);
    let h0 = t.vertex_half_edges(v)[0];
    let g = rotate_to(d, &g, &mut x, h0)?;
    let p = frame_triple(d, h0)?;
    let corners = [minkowski::act(&g, &p.c), minkowski::act(&g, &p.b), minkowski::act(&g, &p.a)];
    let twist = word.iter().filter(|&&h| is_twisted(d, h)).count() % 2 == 1;
    Ok(LiftedTriangle { vertex: v, word: word.to_vec(), element: g, corners, twist })
}

/// The triangle reached from the base frame at `start` by crossing `word`.
pub fn lifted_triangle(d: &DecoratedCoords, start: usize, word: &[usize]) -> Result<LiftedTriangle, Error> {
    place(d, start, word)
}

/// All triangles of the universal cover within `depth` crossings of the
/// base triangle at `vertex(start)`, whose frame at `start` is the identity.
pub fn lift_from(d: &DecoratedCoords, start: usize, depth: usize) -> Result<LiftedTriangulation, Error> {
    if depth == 0 {
        return Err(Error::Degenerate("lift depth must be at least 1"));
    }
    let t = &d.graph;
    for l in &d.lambda {
        if l.body() <= 0.0 {
            return Err(Error::NonPositiveBody);
        }
    }
    let mut triangles = vec![place(d, start, &[])?];
    let mut frontier = vec![0usize];
    for _ in 0..depth {
        let mut next = Vec::new();
        for &i in &frontier {
            let (v, word) = (triangles[i].vertex, triangles[i].word.clone());
            for h in t.vertex_half_edges(v) {
                if word.last().is_some_and(|&last| t.partner(last) == h) {
                    continue;
                }
                let mut w = word.clone();
                w.push(h);
                triangles.push(place(d, start, &w)?);
                next.push(triangles.len() - 1);
            }
        }
        frontier = next;
    }
    Ok(LiftedTriangulation { base: start, depth, triangles })
}

/// Lift based at slot 0 of vertex 0.
pub fn lift(d: &DecoratedCoords, depth: usize) -> Result<LiftedTriangulation, Error> {
    lift_from(d, d.graph.vertex_half_edges(0)[0], depth)
}

impl LiftedTriangle {
    /// `−1` when the word crosses an odd number of edges against ω.
    pub fn delta(&self) -> i8 {
        if self.twist {
            -1
        } else {
            1
        }
    }

    /// `(A, B, C)` relative to slot 0.
    pub fn triple(&self) -> PositiveTriple {
        PositiveTriple { a: self.corners[2].clone(), b: self.corners[1].clone(), c: self.corners[0].clone() }
    }
}

impl LiftedTriangulation {
    /// Largest deviation of `√⟨·,·⟩` on each side from the λ-length of the
    /// edge crossing it, and of light-cone membership.
    pub fn pairing_residual(&self, d: &DecoratedCoords) -> Result<f64, Error> {
        let mut worst: f64 = 0.0;
        for tr in &self.triangles {
            let hs = d.graph.vertex_half_edges(tr.vertex);
            for k in 0..3 {
                let lam = minkowski::lambda_length(&tr.corners[k], &tr.corners[(k + 1) % 3])?;
                worst = worst.max(lam.max_diff(d.lambda_of(hs[(k + 1) % 3])));
                worst = worst.max(tr.corners[k].light_cone_residual());
            }
        }
        Ok(worst)
    }

    /// Largest distance from a corner of `other` to the nearest corner here.
    pub fn covers(&self, other: &LiftedTriangulation) -> f64 {
        let mut worst: f64 = 0.0;
        for p in other.triangles.iter().flat_map(|t| t.corners.iter()) {
            let best = self
                .triangles
                .iter()
                .flat_map(|t| t.corners.iter())
                .map(|q| q.max_diff(p))
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(best);
        }
        worst
    }
}

/// Spanning tree of the fatgraph and one generator of `π₁` per non-tree
/// edge: follow the tree to the edge, cross it, return along the tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalDomain {
    pub tree: Vec<bool>,
    /// `(edge, based loop as half-edges leaving successive vertices)`.
    pub generators: Vec<(usize, Vec<usize>)>,
}

impl FundamentalDomain {
    /// From the breadth-first spanning tree at vertex 0.
    pub fn standard(t: &Fatgraph) -> FundamentalDomain {
        let (tree, _) = t.spanning_tree();
        Self::build(t, tree)
    }

    /// From a caller-chosen list of tree edges.
    pub fn from_tree_edges(t: &Fatgraph, edges: &[usize]) -> Result<FundamentalDomain, Error> {
        let mut tree = vec![false; t.num_edges()];
        for &e in edges {
            if e >= t.num_edges() {
                return Err(Error::UnknownEdge { edge: e });
            }
            tree[e] = true;
        }
        if edges.len() + 1 != t.num_vertices() || !Self::spans(t, &tree) {
            return Err(Error::Degenerate("tree edges must form a spanning tree"));
        }
        Ok(Self::build(t, tree))
    }

    fn spans(t: &Fatgraph, tree: &[bool]) -> bool {
        let mut seen = vec![false; t.num_vertices()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for h in t.vertex_half_edges(v) {
                let w = t.vertex(t.partner(h));
                if tree[t.edge(h)] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    fn build(t: &Fatgraph, tree: Vec<bool>) -> FundamentalDomain {
        // tree path from vertex 0 to every vertex
        let mut path: Vec<Option<Vec<usize>>> = vec![None; t.num_vertices()];
        path[0] = Some(Vec::new());
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for h in t.vertex_half_edges(v) {
                let w = t.vertex(t.partner(h));
                if tree[t.edge(h)] && path[w].is_none() {
                    let mut p = path[v].clone().expect("visited");
                    p.push(h);
                    path[w] = Some(p);
                    stack.push(w);
                }
            }
        }
        let path: Vec<Vec<usize>> = path.into_iter().map(|p| p.expect("spanning")).collect();
        let generators = (0..t.num_edges())
            .filter(|&e| !tree[e])
            .map(|e| {
                let [h, hp] = t.edge_half_edges(e);
                let mut w = path[t.vertex(h)].clone();
                w.push(h);
                w.extend(path[t.vertex(hp)].iter().rev().map(|&x| t.partner(x)));
                (e, w)
            })
            .collect();
        FundamentalDomain { tree, generators }
    }

    /// Tree path from vertex 0 to `v`.
    pub fn path_to(&self, t: &Fatgraph, v: usize) -> Vec<usize> {
        let mut path = vec![None; t.num_vertices()];
        path[0] = Some(Vec::new());
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            for h in t.vertex_half_edges(u) {
                let w = t.vertex(t.partner(h));
                if self.tree[t.edge(h)] && path[w].is_none() {
                    let mut p: Vec<usize> = path[u].clone().expect("visited");
                    p.push(h);
                    path[w] = Some(p);
                    stack.push(w);
                }
            }
        }
        path[v].clone().unwrap_or_default()
    }

    /// Reads `domain v1` with a `tree:` line listing edges `e<j>`.
    pub fn parse(t: &Fatgraph, text: &str) -> Result<FundamentalDomain, Error> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        if lines.next() != Some("domain v1") {
            return Err(Error::Parse("missing `domain v1` header"));
        }
        let mut edges = None;
        for line in lines {
            let rest = line.strip_prefix("tree:").ok_or(Error::Parse("expected `tree:` line"))?;
            edges = Some(
                rest.split_whitespace()
                    .map(|tok| tok.strip_prefix('e').and_then(|d| d.parse().ok()).ok_or(Error::Parse("bad edge label")))
                    .collect::<Result<Vec<usize>, _>>()?,
            );
        }
        Self::from_tree_edges(t, &edges.ok_or(Error::Parse("missing `tree:` line"))?)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("domain v1\ntree:");
        for (e, &b) in self.tree.iter().enumerate() {
            if b {
                let _ = write!(s, " e{e}");
            }
        }
        s.push('\n');
        s
    }
}

/// Image of one generator.
#[derive(Clone, Debug)]
pub struct RepGenerator {
    pub edge: usize,
    pub word: Vec<usize>,
    pub element: OspElement,
    /// Value of the quadratic form on the generator's class.
    pub q: bool,
    /// Bosonic trace of the transported frame before the spin correction.
    pub trace: f64,
    /// Whether the fermionic reflection had to be inserted at the frontier crossing.
    pub corrected: bool,
}

#[derive(Clone, Debug)]
pub struct SuperRep {
    pub generators: Vec<RepGenerator>,
    /// Based loop around each puncture and its image.
    pub punctures: Vec<(Vec<usize>, OspElement)>,
}

/// Frame change along a based loop at slot 0 of vertex 0, optionally with
/// the fermionic reflection inserted after crossing `steps[at]`.
fn based(d: &DecoratedCoords, steps: &[usize], reflect_at: Option<usize>) -> Result<OspElement, Error> {
    let h0 = d.graph.vertex_half_edges(0)[0];
    let (g, x) = match reflect_at {
        None => transport(d, h0, steps)?,
        Some(k) => {
            let (g1, x1) = transport(d, h0, &steps[..=k])?;
            let g1 = OspElement::reflection(d.rank()).mul(&g1);
            let (g2, x2) = transport(d, x1, &steps[k + 1..])?;
            (g2.mul(&g1), x2)
        }
    };
    let mut x = x;
    rotate_to(d, &g, &mut x, h0)
}

/// Whether the frontier crossing needs the fermionic reflection: the trace
/// must be positive exactly when `q = 1`.
fn needs_reflection(generator: usize, trace: f64, q: bool) -> Result<bool, Error> {
    if trace.abs() < 1e-9 {
        return Err(Error::AmbiguousTrace { generator, trace });
    }
    Ok((trace > 0.0) != q)
}

/// Representation of `π₁` from the lift: each generator maps the lifted
/// fundamental domain across its frontier edge. The bosonic trace must be
/// positive exactly when `q = 1`; otherwise the fermionic reflection is
/// inserted at the frontier. A trace body within `1e-9` of zero is an error.
pub fn build_rep(d: &DecoratedCoords, domain: &FundamentalDomain) -> Result<SuperRep, Error> {
    let t = &d.graph;
    let qf = fatgraph_spin::quadratic_form(t, &d.orientation)?;
    let mut generators = Vec::new();
    for (e, word) in &domain.generators {
        let mut class = vec![false; t.num_edges()];
        for &h in word {
            class[t.edge(h)] ^= true;
        }
        let q = qf.eval_class(&class);
        let g = based(d, word, None)?;
        let trace = g.bosonic_trace();
        let corrected = needs_reflection(generators.len(), trace, q)?;
        let element = if corrected {
            let k = word.iter().position(|&h| t.edge(h) == *e).expect("generator crosses its edge");
            based(d, word, Some(k))?
        } else {
            g
        };
        generators.push(RepGenerator { edge: *e, word: word.clone(), element, q, trace, corrected });
    }
    let mut punctures = Vec::new();
    for c in t.boundary_cycles() {
        let to = domain.path_to(t, t.vertex(c.0[0]));
        let mut w = to.clone();
        w.extend(&c.0);
        w.extend(to.iter().rev().map(|&x| t.partner(x)));
        let g = based(d, &w, None)?;
        punctures.push((w, g));
    }
    Ok(SuperRep { generators, punctures })
}

impl SuperRep {
    /// Image of a word in the generators, `(index, inverse?)`, composed in
    /// the order of the right action: the first letter acts first.
    pub fn word(&self, letters: &[(usize, bool)]) -> Result<OspElement, Error> {
        let rank = self.generators.first().map(|g| g.element.rank()).ok_or(Error::Degenerate("no generators"))?;
        let mut g = OspElement::identity(rank);
        for &(i, inv) in letters {
            let x = &self.generators.get(i).ok_or(Error::Degenerate("generator index out of range"))?.element;
            g = if inv { x.inverse() } else { x.clone() }.mul(&g);
        }
        Ok(g)
    }

    /// Largest `is_osp` residual among the generator images.
    pub fn osp_residual(&self) -> f64 {
        self.generators.iter().map(|g| g.element.matrix().osp_residual()).fold(0.0, f64::max)
    }
}

/// Equivariance on the frontier: for each generator across edge `{h, h′}`,
/// the triangle reached by the tree path to `vertex(h)` and the crossing of
/// `h` must be the image of the domain's copy of `vertex(h′)`.
pub fn equivariance_residual(d: &DecoratedCoords, domain: &FundamentalDomain, rep: &SuperRep) -> Result<f64, Error> {
    let t = &d.graph;
    let h0 = t.vertex_half_edges(0)[0];
    let mut worst: f64 = 0.0;
    for g in &rep.generators {
        let [h, hp] = t.edge_half_edges(g.edge);
        let mut outside = domain.path_to(t, t.vertex(h));
        outside.push(h);
        let image = place(d, h0, &outside)?;
        let inside = place(d, h0, &domain.path_to(t, t.vertex(hp)))?;
        for k in 0..3 {
            let moved = minkowski::act(&g.element, &inside.corners[k]);
            worst = worst.max(moved.max_diff(&image.corners[k]));
        }
    }
    Ok(worst)
}

struct NormalFlip {
    local: fatgraph_spin::FlipLocal,
    /// μ after the reflections at the ends of the edge.
    mu: Vec<Grassmann>,
    a2_out: bool,
    evolved: Orientation,
}

fn normalize_flip(d: &DecoratedCoords, e: usize) -> Result<NormalFlip, Error> {
    let t = &d.graph;
    let local = t.flip_local(e)?;
    let (evolved, refl) = fatgraph_spin::flip_orientation(t, e, &d.orientation)?;
    let mut mu = d.mu.clone();
    let mut normal = d.orientation.clone();
    for v in 0..t.num_vertices() {
        if refl[v] {
            mu[v] = -&mu[v];
            normal = normal.reflect(t, v);
        }
    }
    Ok(NormalFlip { local, mu, a2_out: normal.is_tail(t, local.a2), evolved })
}

/// Predicted cross-ratios of the sides `a, b, c, d` after flipping `e`:
/// `χ_a(1+χ+σθ√χ)`, `χ_b(1+χ⁻¹+σθ/√χ)⁻¹`, `χ_c(1+χ+σθ√χ)`,
/// `χ_d(1+χ⁻¹+σθ/√χ)⁻¹`, with `σ`, `θ` as in [`flip_coords`]. Returns
/// `χ_e` as well. Meaningful when the five edges are distinct.
pub fn shear_laws(d: &DecoratedCoords, e: usize) -> Result<(Grassmann, [Grassmann; 4]), Error> {
    let t = &d.graph;
    let n = normalize_flip(d, e)?;
    let l = n.local;
    let chis = shear_coords(d)?;
    let chi = chis[e].clone();
    let st = &n.mu[l.v] * &n.mu[l.u];
    let rc = chi.sqrt()?;
    let up = &(&(&chi + 1.0) + &(&st * &rc));
    let down = (&(&chi.inverse()? + 1.0) + &st.div(&rc)?).inverse()?;
    let [a, b, c, dd] = [l.a2, l.a1, l.b2, l.b1].map(|h| &chis[t.edge(h)]);
    Ok((chi.clone(), [a * up, b * &down, c * up, dd * &down]))
}

/// Super Ptolemy transformation on the coordinates of a flippable edge.
///
/// With `u = (h, a1, a2)` and `v = (h′, b1, b2)`, the orientation is first
/// reflected at `u` and `v` (negating their μ-invariants) so that `e` runs
/// `u → v` and `a1` points into `u`. Then `a = λ(a2)`, `b = λ(a1)`,
/// `c = λ(b2)`, `d = λ(b1)`, `θ = μ_u`, `σ = μ_v`, the new λ-length is
/// `f = ptolemy_even(a, b, c, d, e, σ, θ)` and with `(ν, μ) = ptolemy_odd(σ, θ, χ)`
/// the new vertices `u′ = (h, a2, b1)`, `v′ = (h′, b2, a1)` get `(μ, −ν)`,
/// or `(−μ, ν)` when `a2` points out of `u`. The orientation evolves by
/// [`fatgraph_spin::flip_orientation`].
pub fn flip_coords(d: &DecoratedCoords, e: usize) -> Result<DecoratedCoords, Error> {
    let t = &d.graph;
    let n = normalize_flip(d, e)?;
    let l = n.local;
    let (a, b, c, dd, ee) = (d.lambda_of(l.a2), d.lambda_of(l.a1), d.lambda_of(l.b2), d.lambda_of(l.b1), d.lambda_of(l.h));
    let (sigma, theta) = (&n.mu[l.v], &n.mu[l.u]);
    let f = minkowski::ptolemy_even(a, b, c, dd, ee, sigma, theta)?;
    let chi = minkowski::cross_ratio(a, b, c, dd)?;
    let (nu, m) = minkowski::ptolemy_odd(sigma, theta, &chi)?;
    let (mu_u, mu_v) = if n.a2_out { (-m, nu) } else { (m, -nu) };
    let (o2, mut mu) = (n.evolved, n.mu);
    mu[l.u] = mu_u;
    mu[l.v] = mu_v;
    let mut lambda = d.lambda.clone();
    lambda[e] = f;
    let mut out = DecoratedCoords::new(t.flip(e)?, lambda, mu, o2)?;
    out.negative_gauge = d.negative_gauge;
    Ok(out)
}

/// Cross-ratio `χ_e = ac/(bd)` of every edge, `a`, `c` the λ-lengths before
/// each end of the edge and `b`, `d` those after it in counter-clockwise
/// order. Repeated edges of a degenerate quadrilateral enter repeatedly.
pub fn shear_coords(d: &DecoratedCoords) -> Result<Vec<Grassmann>, Error> {
    let t = &d.graph;
    (0..t.num_edges())
        .map(|e| {
            let [h, hp] = t.edge_half_edges(e);
            minkowski::cross_ratio(
                d.lambda_of(t.prev_ccw(h)),
                d.lambda_of(t.next_ccw(h)),
                d.lambda_of(t.prev_ccw(hp)),
                d.lambda_of(t.next_ccw(hp)),
            )
        })
        .collect()
}

/// Graded 1-form `Σ dx_i J_i` over the differentials of a chart: the first
/// `n_even` are `dλ_e` (anticommuting), the rest `dμ_v` (commuting).
/// Coefficients stand to the right of the differentials.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperOneForm {
    pub n_even: usize,
    pub coeffs: Vec<Grassmann>,
}

/// Graded 2-form `½ Σ Ω_ij dx_i dx_j` with coefficients on the left. `Ω` is
/// antisymmetric on the `dλ` block and symmetric elsewhere, so
/// `−(dθ)²` has diagonal entry `−2`.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperTwoForm {
    pub n_even: usize,
    pub matrix: Vec<Vec<Grassmann>>,
}

/// `x` moved past a differential of total parity `t`.
fn past(x: &Grassmann, t: usize) -> Grassmann {
    if t.is_multiple_of(2) {
        x.clone()
    } else {
        &x.even_part() - &x.odd_part()
    }
}

impl SuperTwoForm {
    pub fn zero(n_even: usize, n_odd: usize, rank: u8) -> Self {
        let n = n_even + n_odd;
        SuperTwoForm { n_even, matrix: vec![vec![Grassmann::zero(rank); n]; n] }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    /// Total parity of `dx_i`: 1 for `dλ`, 0 for `dμ`.
    pub fn form_parity(&self, i: usize) -> usize {
        usize::from(i < self.n_even)
    }

    /// Adds `c dx_i dx_j`.
    pub fn add_term(&mut self, c: &Grassmann, i: usize, j: usize) {
        let (ti, tj) = (self.form_parity(i), self.form_parity(j));
        if i == j {
            if ti == 0 {
                self.matrix[i][i] += &c.scale(2.0);
            }
            return;
        }
        let s = if ti * tj == 1 { -1.0 } else { 1.0 };
        self.matrix[i][j] += c;
        self.matrix[j][i] += &c.scale(s);
    }

    /// Adds `c · α ∧ β`.
    pub fn add_wedge(&mut self, c: &Grassmann, alpha: &SuperOneForm, beta: &SuperOneForm) {
        for (i, ji) in alpha.coeffs.iter().enumerate() {
            if ji.max_abs() == 0.0 {
                continue;
            }
            for (j, kj) in beta.coeffs.iter().enumerate() {
                if kj.max_abs() == 0.0 {
                    continue;
                }
                let (ti, tj) = (self.form_parity(i), self.form_parity(j));
                let w = &past(ji, tj) * kj;
                self.add_term(&(c * &past(&w, ti + tj)), i, j);
            }
        }
    }

    pub fn add(&mut self, other: &SuperTwoForm) {
        for (r, o) in self.matrix.iter_mut().zip(&other.matrix) {
            for (x, y) in r.iter_mut().zip(o) {
                *x += y;
            }
        }
    }

    pub fn scale(&self, k: f64) -> Self {
        let matrix = self.matrix.iter().map(|r| r.iter().map(|x| x.scale(k)).collect()).collect();
        SuperTwoForm { n_even: self.n_even, matrix }
    }

    /// `ω(u, v) = Σ u_i Ω_ij v_j`.
    pub fn evaluate(&self, u: &[Grassmann], v: &[Grassmann]) -> Grassmann {
        let rank = self.matrix[0][0].rank();
        let mut s = Grassmann::zero(rank);
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                s += &(&(ui * &self.matrix[i][j]) * vj);
            }
        }
        s
    }

    /// Restriction to the `dλ` differentials.
    pub fn even_block(&self) -> Self {
        let n = self.n_even;
        let matrix = self.matrix[..n].iter().map(|r| r[..n].to_vec()).collect();
        SuperTwoForm { n_even: n, matrix }
    }

    pub fn max_diff(&self, other: &SuperTwoForm) -> f64 {
        let mut worst: f64 = 0.0;
        for (r, o) in self.matrix.iter().zip(&other.matrix) {
            for (x, y) in r.iter().zip(o) {
                worst = worst.max(x.max_diff(y));
            }
        }
        worst
    }

    /// Entry `(i, j)` and monomial mask where the two forms differ most, with the difference.
    pub fn worst_entry(&self, other: &SuperTwoForm) -> (usize, usize, u32, f64) {
        let mut worst = (0, 0, 0, 0.0);
        for (i, (r, o)) in self.matrix.iter().zip(&other.matrix).enumerate() {
            for (j, (x, y)) in r.iter().zip(o).enumerate() {
                for (m, (a, b)) in x.coeffs().iter().zip(y.coeffs()).enumerate() {
                    if (a - b).abs() > worst.3 {
                        worst = (i, j, m as u32, (a - b).abs());
                    }
                }
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().flatten().map(Grassmann::max_abs).fold(0.0, f64::max)
    }

    /// Largest violation of graded symmetry.
    pub fn symmetry_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let s = if self.form_parity(i) * self.form_parity(j) == 1 { -1.0 } else { 1.0 };
                worst = worst.max(self.matrix[i][j].max_diff(&self.matrix[j][i].scale(s)));
            }
        }
        worst
    }
}

/// `Σ_T d log a ∧ d log b + d log b ∧ d log c + d log c ∧ d log a − (dθ)²`
/// over triangles, with `a, b, c` read clockwise (against the fatgraph's
/// cyclic order) and `θ` the triangle's μ-invariant.
pub fn two_form(d: &DecoratedCoords) -> Result<SuperTwoForm, Error> {
    let t = &d.graph;
    let ne = t.num_edges();
    let mut w = SuperTwoForm::zero(ne, t.num_vertices(), d.rank());
    let one = Grassmann::one(d.rank());
    for v in 0..t.num_vertices() {
        let [h0, h1, h2] = t.vertex_half_edges(v);
        let es = [t.edge(h0), t.edge(h2), t.edge(h1)];
        for k in 0..3 {
            let (x, y) = (es[k], es[(k + 1) % 3]);
            let c = (&d.lambda[x] * &d.lambda[y]).inverse()?;
            w.add_term(&c, x, y);
        }
        w.add_term(&-&one, ne + v, ne + v);
    }
    Ok(w)
}

/// The coordinates with every μ-invariant replaced by a free odd generator,
/// and those generators. A μ-invariant that already is a generator used
/// nowhere else keeps it.
pub fn odd_chart(d: &DecoratedCoords) -> Result<(DecoratedCoords, Vec<usize>), Error> {
    let rank = d.rank();
    let single = |x: &Grassmann| -> Option<usize> {
        let nz: Vec<usize> = x.coeffs().iter().enumerate().filter(|(_, c)| **c != 0.0).map(|(k, _)| k).collect();
        (nz.len() == 1 && nz[0].count_ones() == 1 && x.coeffs()[nz[0]] == 1.0).then(|| nz[0].trailing_zeros() as usize + 1)
    };
    let mut used = d.lambda.iter().fold(0u32, |m, x| m | support(x));
    let mut keep = vec![None; d.mu.len()];
    for (v, m) in d.mu.iter().enumerate() {
        if let Some(k) = single(m) {
            let bit = 1u32 << (k - 1);
            let elsewhere = d.mu.iter().enumerate().any(|(w, x)| w != v && support(x) & bit != 0);
            if used & bit == 0 && !elsewhere {
                keep[v] = Some(k);
            }
        }
    }
    for k in keep.iter().flatten() {
        used |= 1 << (k - 1);
    }
    for m in &d.mu {
        used |= support(m) & !keep.iter().flatten().fold(0u32, |a, k| a | 1 << (k - 1));
    }
    let mut chart = d.clone();
    let mut gens = Vec::with_capacity(d.mu.len());
    for v in 0..d.mu.len() {
        let k = match keep[v] {
            Some(k) => k,
            None => {
                let k = (1..=rank as usize).find(|k| used & (1 << (k - 1)) == 0).ok_or(Error::GeneratorOutOfRange { rank })?;
                used |= 1 << (k - 1);
                k
            }
        };
        chart.mu[v] = Grassmann::generator(rank, k);
        gens.push(k);
    }
    Ok((chart, gens))
}

/// Relative finite-difference step for the even partials.
pub const FD_STEP: f64 = 1e-6;

fn support(x: &Grassmann) -> u32 {
    x.coeffs().iter().enumerate().filter(|(_, c)| **c != 0.0).fold(0, |m, (k, _)| m | k as u32)
}

/// Two generators used by neither the λ-lengths nor the chart generators.
fn spare_pair(chart: &DecoratedCoords, gens: &[usize]) -> Option<(usize, usize)> {
    let mut used = chart.lambda.iter().chain(&chart.mu).fold(0u32, |m, x| m | support(x));
    for &k in gens {
        used |= 1 << (k - 1);
    }
    let mut free = (1..=chart.rank() as usize).filter(|k| used & (1 << (k - 1)) == 0);
    Some((free.next()?, free.next()?))
}

/// `d F` for a function of the chart coordinates, with exact left
/// derivatives in the odd generators. Even partials are exact when two
/// generators `g_p, g_q` are spare: `F(λ + g_p g_q) = F(λ) + g_p g_q ∂F`.
/// Otherwise they are central differences with step [`FD_STEP`] times the body.
pub fn differential(
    chart: &DecoratedCoords,
    gens: &[usize],
    f: &dyn Fn(&DecoratedCoords) -> Result<Grassmann, Error>,
) -> Result<SuperOneForm, Error> {
    let ne = chart.lambda.len();
    let mut coeffs = Vec::with_capacity(ne + gens.len());
    let spare = spare_pair(chart, gens);
    for e in 0..ne {
        if let Some((p, q)) = spare {
            let eps = &Grassmann::generator(chart.rank(), p) * &Grassmann::generator(chart.rank(), q);
            let mut moved = chart.clone();
            moved.lambda[e] = &moved.lambda[e] + &eps;
            coeffs.push(f(&moved)?.left_derivative(p).left_derivative(q));
            continue;
        }
        let h = FD_STEP * chart.lambda[e].body();
        let mut plus = chart.clone();
        plus.lambda[e] = &plus.lambda[e] + h;
        let mut minus = chart.clone();
        minus.lambda[e] = &minus.lambda[e] + (-h);
        coeffs.push((&f(&plus)? - &f(&minus)?).scale(0.5 / h));
    }
    let at = f(chart)?;
    for &k in gens {
        coeffs.push(at.left_derivative(k));
    }
    Ok(SuperOneForm { n_even: ne, coeffs })
}

/// `two_form` before the flip of `e` and the pullback of `two_form` after
/// it through [`flip_coords`], both in the odd chart of the coordinates.
pub fn pullback_forms(d: &DecoratedCoords, e: usize) -> Result<(SuperTwoForm, SuperTwoForm), Error> {
    let (chart, gens) = odd_chart(d)?;
    pullback_in(&chart, &gens, e)
}

/// Pure even specialization of [`pullback_forms`]: μ-invariants set to zero
/// and only the `dλ` block kept.
pub fn pullback_forms_even(d: &DecoratedCoords, e: usize) -> Result<(SuperTwoForm, SuperTwoForm), Error> {
    let mut chart = d.clone();
    for m in chart.mu.iter_mut() {
        *m = Grassmann::zero(d.rank());
    }
    pullback_in(&chart, &[], e)
}

/// Largest coefficient difference between the two forms of [`pullback_forms`].
pub fn pullback_check(d: &DecoratedCoords, e: usize) -> Result<f64, Error> {
    let (before, pulled) = pullback_forms(d, e)?;
    Ok(pulled.max_diff(&before))
}

/// [`pullback_check`] in the pure even specialization.
pub fn pullback_check_even(d: &DecoratedCoords, e: usize) -> Result<f64, Error> {
    let (before, pulled) = pullback_forms_even(d, e)?;
    Ok(pulled.max_diff(&before))
}

fn pullback_in(chart: &DecoratedCoords, gens: &[usize], e: usize) -> Result<(SuperTwoForm, SuperTwoForm), Error> {
    let mut before = two_form(chart)?;
    let after_coords = flip_coords(chart, e)?;
    let mut after = two_form(&after_coords)?;
    let ne = chart.lambda.len();
    if gens.is_empty() {
        before = before.even_block();
        after = after.even_block();
    }
    let n = after.dim();
    let mut dy: Vec<Option<SuperOneForm>> = vec![None; n];
    let mut pulled = SuperTwoForm::zero(ne, gens.len(), chart.rank());
    let one_form = |a: usize| -> Result<SuperOneForm, Error> {
        differential(chart, gens, &|x| {
            let y = flip_coords(x, e)?;
            Ok(if a < ne { y.lambda[a].clone() } else { y.mu[a - ne].clone() })
        })
    };
    for a in 0..n {
        for b in 0..n {
            let c = &after.matrix[a][b];
            if c.max_abs() == 0.0 {
                continue;
            }
            for x in [a, b] {
                if dy[x].is_none() {
                    dy[x] = Some(one_form(x)?);
                }
            }
            let (ya, yb) = (dy[a].as_ref().expect("computed"), dy[b].as_ref().expect("computed"));
            pulled.add_wedge(&c.scale(0.5), ya, yb);
        }
    }
    Ok((before, pulled))
}

/// Residual of `(dμ)² + (dν)² − dσ² − dθ² − d(θσ) dχ/((1+χ)√χ)` for the
/// odd Ptolemy pair of edge `e`, in the odd chart.
pub fn ptolemy_form_identity(d: &DecoratedCoords, e: usize) -> Result<f64, Error> {
    let (chart, gens) = odd_chart(d)?;
    let l = chart.graph.flip_local(e)?;
    let quad = move |x: &DecoratedCoords| -> Result<(Grassmann, Grassmann, Grassmann), Error> {
        let chi = minkowski::cross_ratio(x.lambda_of(l.a2), x.lambda_of(l.a1), x.lambda_of(l.b2), x.lambda_of(l.b1))?;
        Ok((x.mu[l.v].clone(), x.mu[l.u].clone(), chi))
    };
    let ptolemy = move |x: &DecoratedCoords| -> Result<(Grassmann, Grassmann), Error> {
        let (s, th, chi) = quad(x)?;
        minkowski::ptolemy_odd(&s, &th, &chi)
    };
    let dnu = differential(&chart, &gens, &|x| Ok(ptolemy(x)?.0))?;
    let dmu = differential(&chart, &gens, &|x| Ok(ptolemy(x)?.1))?;
    let dsigma = differential(&chart, &gens, &|x| Ok(quad(x)?.0))?;
    let dtheta = differential(&chart, &gens, &|x| Ok(quad(x)?.1))?;
    let dts = differential(&chart, &gens, &|x| {
        let (s, th, _) = quad(x)?;
        Ok(&th * &s)
    })?;
    let dchi = differential(&chart, &gens, &|x| Ok(quad(x)?.2))?;
    let (_, _, chi) = quad(&chart)?;
    let k = (&(&chi + 1.0) * &chi.sqrt()?).inverse()?;
    let rank = chart.rank();
    let one = Grassmann::one(rank);
    let mut w = SuperTwoForm::zero(chart.lambda.len(), gens.len(), rank);
    w.add_wedge(&one, &dmu, &dmu);
    w.add_wedge(&one, &dnu, &dnu);
    w.add_wedge(&-&one, &dsigma, &dsigma);
    w.add_wedge(&-&one, &dtheta, &dtheta);
    w.add_wedge(&-&k, &dts, &dchi);
    Ok(w.max_abs())
}
