//! Classical λ-length construction in SL(2,ℝ), used as an even-only oracle.
//! A light-cone point (x1, x2, y) is w wᵀ and √⟨A,B⟩ = |det(w_A, w_B)|/√2.

use superteich::decorated::{build_rep, DecoratedCoords, FundamentalDomain};
use superteich::fatgraph_spin::{self, Fatgraph, Orientation};
use superteich::Grassmann;

type Spinor = [f64; 2];

fn det(a: Spinor, b: Spinor) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Spinors (A, B, C) of the base triangle, then the triangle reached along
/// a based loop, both relative to slot 0 of vertex 0.
pub fn classical_holonomy(t: &Fatgraph, lam: &[f64], steps: &[usize]) -> [[f64; 2]; 2] {
    let l = |h: usize| lam[t.edge(h)];
    let base = t.vertex_half_edges(0)[0];
    let frame = |h: usize| -> [Spinor; 3] {
        let (a, b, e) = (l(t.prev_ccw(h)), l(t.next_ccw(h)), l(h));
        let r2 = 2f64.sqrt();
        let (r, s, tt) = (r2 * a * e / b, r2 * b * e / a, r2 * a * b / e);
        [[0.0, r.sqrt()], [tt.sqrt(), tt.sqrt()], [s.sqrt(), 0.0]]
    };
    let start = frame(base);
    let (mut x, mut p) = (base, start);
    let rotate = |p: [Spinor; 3]| [p[2], p[0], p[1]];
    let go = |x: &mut usize, p: &mut [Spinor; 3], target: usize| {
        while *x != target {
            *p = rotate(*p);
            *x = t.next_ccw(*x);
        }
    };
    for &h in steps {
        go(&mut x, &mut p, h);
        let hp = t.partner(h);
        let [a, b, c] = p;
        let dac = det(a, c);
        // b = pa·a + pc·c
        let (pa, pc) = (det(b, c) / dac, det(a, b) / dac);
        let alpha = 2f64.sqrt() * l(t.prev_ccw(hp)) / dac.abs();
        let mut beta = 2f64.sqrt() * l(t.next_ccw(hp)) / dac.abs();
        if (pa * pc > 0.0) == (alpha * beta > 0.0) {
            beta = -beta;
        }
        let dpt = [alpha * a[0] + beta * c[0], alpha * a[1] + beta * c[1]];
        p = [c, dpt, a];
        x = hp;
    }
    go(&mut x, &mut p, base);
    // S w = ±w′ on A and C with det S = 1
    let [a0, b0, c0] = start;
    let [a1, b1, c1] = p;
    let eps = (det(a1, c1) / det(a0, c0)).signum();
    let c1 = [eps * c1[0], eps * c1[1]];
    let inv = 1.0 / det(a0, c0);
    let m = [[a1[0], c1[0]], [a1[1], c1[1]]];
    let n = [[c0[1] * inv, -c0[0] * inv], [-a0[1] * inv, a0[0] * inv]];
    let s = [
        [m[0][0] * n[0][0] + m[0][1] * n[1][0], m[0][0] * n[0][1] + m[0][1] * n[1][1]],
        [m[1][0] * n[0][0] + m[1][1] * n[1][0], m[1][0] * n[0][1] + m[1][1] * n[1][1]],
    ];
    let sb = [s[0][0] * b0[0] + s[0][1] * b0[1], s[1][0] * b0[0] + s[1][1] * b0[1]];
    assert!(det(sb, b1).abs() < 1e-8 * (1.0 + b1[0].abs() + b1[1].abs()).powi(2), "third corner not matched");
    [[s[0][0], s[1][0]], [s[0][1], s[1][1]]]
}

pub fn check_against_classical(t: &Fatgraph, o: &Orientation, lam: &[f64]) -> f64 {
    let rank = 4;
    let lambda = lam.iter().map(|&x| Grassmann::scalar(rank, x)).collect();
    let mu = vec![Grassmann::zero(rank); t.num_vertices()];
    let d = DecoratedCoords::new(t.clone(), lambda, mu, o.clone()).unwrap();
    let domain = FundamentalDomain::standard(t);
    let rep = build_rep(&d, &domain).unwrap();
    let q = fatgraph_spin::quadratic_form(t, o).unwrap();
    let mut worst: f64 = 0.0;
    for g in &rep.generators {
        let mut c = classical_holonomy(t, lam, &g.word);
        let mut class = vec![false; t.num_edges()];
        for &h in &g.word {
            class[t.edge(h)] ^= true;
        }
        if (c[0][0] + c[1][1] > 0.0) != q.eval_class(&class) {
            c = [[-c[0][0], -c[0][1]], [-c[1][0], -c[1][1]]];
        }
        let b = g.element.bosonic_reduction();
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((b[i][j] - c[i][j]).abs());
            }
        }
    }
    worst
}
