use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superteich::decorated::{self, DecoratedCoords};
use superteich::fatgraph_spin::{self, orientation_classes, Orientation};
use superteich::superlinalg::format_sl2;
use superteich::{Grassmann, SuperMatrix};

use crate::input::{self, Bundle};
use crate::{Failure, Flags, Inputs, Report};

fn load(inputs: &Inputs, f: Flags) -> Result<Bundle, Failure> {
    match &inputs.builtin {
        Some(name) => input::builtin_bundle(name, f.rank),
        None => input::parse_bundle(&input::read_all(&inputs.files)?, f.rank),
    }
}

fn check_edge(d: &DecoratedCoords, e: usize) -> Result<(), Failure> {
    if e >= d.graph.num_edges() {
        return Err(superteich::Error::UnknownEdge { edge: e }.into());
    }
    Ok(())
}

fn word(hs: &[usize]) -> String {
    if hs.is_empty() {
        return "-".into();
    }
    hs.iter().map(|h| format!("h{h}")).collect::<Vec<_>>().join(" ")
}

fn orient_items(d: &Orientation, t: &fatgraph_spin::Fatgraph) -> String {
    d.orient_line(t).trim_start_matches("orient:").trim().to_string()
}

pub fn check_osp(file: &Path, f: Flags) -> Result<Report, Failure> {
    let text = fs::read_to_string(file).map_err(|e| Failure::Invalid(format!("{}: {e}", file.display())))?;
    let m = SuperMatrix::parse(f.rank, &text)?;
    let mut rep = Report::default();
    let j = SuperMatrix::j(f.rank);
    rep.line("form_residual", format!("{:e}", m.supertranspose().mul(&j).mul(&m).max_diff(&j)));
    match m.sdet() {
        Ok(s) => rep.line("sdet", s),
        Err(_) => rep.line("sdet", "undefined"),
    }
    if let Ok(cs) = m.constraint_residuals() {
        rep.line("constraint_residuals", cs.iter().map(|x| format!("{x:e}")).collect::<Vec<_>>().join(" "));
    }
    rep.line("bosonic", format_sl2(&m.bosonic_reduction()));
    let r = m.osp_residual();
    rep.line("verdict", if r <= f.tol { "member" } else { "not member" });
    rep.within("residual", r, f.tol);
    Ok(rep)
}

pub fn flip(inputs: &Inputs, edge: usize, count: usize, out: Option<&Path>, f: Flags) -> Result<Report, Failure> {
    let b = load(inputs, f)?;
    let mut d = b.coords()?.clone();
    check_edge(&d, edge)?;
    for _ in 0..count {
        d = decorated::flip_coords(&d, edge)?;
    }
    let text = d.graph.to_text(Some(&d.orientation)) + &d.to_text();
    let mut rep = Report::default();
    match out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
            rep.line("edge", format!("e{edge}"));
            rep.line("count", count);
            rep.line(format!("lambda e{edge}"), &d.lambda[edge]);
            rep.line("written", path.display());
        }
        None => rep.lines.extend(text.lines().map(String::from)),
    }
    Ok(rep)
}

pub fn spin(inputs: &Inputs, all: bool, f: Flags) -> Result<Report, Failure> {
    let b = match &inputs.builtin {
        Some(name) => Bundle { graph: input::builtin_graph(name)?, orientation: None, coords: None, domain: None },
        None => load(inputs, f)?,
    };
    let t = &b.graph;
    let mut rep = Report::default();
    let types = |o: &Orientation| -> Result<String, Failure> {
        Ok(fatgraph_spin::puncture_types(t, o)?.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" "))
    };
    match (&b.orientation, all) {
        (Some(o), false) => {
            rep.line("spin", fatgraph_spin::spin_class(t, o)?);
            rep.line("arf", fatgraph_spin::quadratic_form(t, o)?.arf() as u8);
            rep.line("punctures", t.num_punctures());
            for (i, p) in fatgraph_spin::puncture_types(t, o)?.iter().enumerate() {
                rep.line(format!("puncture {i}"), p);
            }
        }
        _ => {
            let classes = orientation_classes(t);
            rep.line("classes", classes.len());
            for (k, o) in classes.iter().enumerate() {
                rep.line(format!("class {k} spin"), fatgraph_spin::spin_class(t, o)?);
                rep.line(format!("class {k} arf"), fatgraph_spin::quadratic_form(t, o)?.arf() as u8);
                rep.line(format!("class {k} punctures"), types(o)?);
                rep.line(format!("class {k} orient"), orient_items(o, t));
            }
        }
    }
    Ok(rep)
}

pub fn build_rep(inputs: &Inputs, f: Flags) -> Result<Report, Failure> {
    let b = load(inputs, f)?;
    let d = b.coords()?;
    let domain = b.domain();
    let rho = decorated::build_rep(d, &domain)?;
    let mut rep = Report::default();
    rep.line("tree", domain.to_text().lines().nth(1).unwrap_or("tree:").trim_start_matches("tree:").trim());
    rep.line("generators", rho.generators.len());
    for (i, g) in rho.generators.iter().enumerate() {
        rep.line(format!("generator {i} edge"), format!("e{}", g.edge));
        rep.line(format!("generator {i} word"), word(&g.word));
        rep.line(format!("generator {i} q"), g.q as u8);
        rep.line(format!("generator {i} trace"), g.trace);
        rep.line(format!("generator {i} corrected"), if g.corrected { "yes" } else { "no" });
        for (r, row) in g.element.matrix().to_string().lines().enumerate() {
            rep.line(format!("generator {i} row {r}"), row);
        }
    }
    rep.within("osp_residual", rho.osp_residual(), f.tol);
    rep.line("punctures", rho.punctures.len());
    let mut parabolic: f64 = 0.0;
    for (i, (w, p)) in rho.punctures.iter().enumerate() {
        rep.line(format!("puncture {i} word"), word(w));
        rep.line(format!("puncture {i} trace"), p.bosonic_trace());
        parabolic = parabolic.max((p.bosonic_trace().abs() - 2.0).abs());
    }
    rep.within("parabolic_residual", parabolic, f.tol);
    rep.within("equivariance", decorated::equivariance_residual(d, &domain, &rho)?, f.tol);
    Ok(rep)
}

fn coordinate_name(i: usize, ne: usize) -> String {
    if i < ne {
        format!("lambda e{i}")
    } else {
        format!("mu v{}", i - ne)
    }
}

pub fn check_form(inputs: &Inputs, edge: usize, samples: usize, f: Flags) -> Result<Report, Failure> {
    let b = load(inputs, f)?;
    let d = b.coords()?;
    check_edge(d, edge)?;
    let (before, pulled) = decorated::pullback_forms(d, edge)?;
    let (i, j, mask, _) = pulled.worst_entry(&before);
    let ne = d.graph.num_edges();
    let mut rep = Report::default();
    rep.line("edge", format!("e{edge}"));
    rep.within("pullback", pulled.max_diff(&before), f.tol);
    rep.line("worst_entry", format!("{} / {}", coordinate_name(i, ne), coordinate_name(j, ne)));
    let mono = Grassmann::mask_indices(mask);
    rep.line("worst_monomial", if mono.is_empty() { "1".into() } else { format!("g{{{}}}", mono.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")) });
    rep.within("pullback_even", decorated::pullback_check_even(d, edge)?, f.tol);
    rep.within("odd_identity", decorated::ptolemy_form_identity(d, edge)?, f.tol);
    if samples > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(f.seed);
        let (mut sup, mut even): (f64, f64) = (0.0, 0.0);
        for _ in 0..samples {
            let mut p = d.clone();
            for l in p.lambda.iter_mut() {
                *l = Grassmann::scalar(f.rank, rng.gen_range(0.5..2.0));
            }
            sup = sup.max(decorated::pullback_check(&p, edge)?);
            even = even.max(decorated::pullback_check_even(&p, edge)?);
        }
        rep.line("samples", samples);
        rep.within("sample_pullback", sup, f.tol);
        rep.within("sample_pullback_even", even, f.tol);
    }
    Ok(rep)
}

pub fn lift(inputs: &Inputs, f: Flags) -> Result<Report, Failure> {
    let b = load(inputs, f)?;
    let d = b.coords()?;
    let l = decorated::lift(d, f.depth)?;
    let mut rep = Report::default();
    rep.line("depth", l.depth);
    rep.line("triangles", l.triangles.len());
    rep.within("pairing_residual", l.pairing_residual(d)?, f.tol);
    for (k, tr) in l.triangles.iter().enumerate() {
        rep.line(format!("triangle {k} vertex"), format!("v{}", tr.vertex));
        rep.line(format!("triangle {k} word"), word(&tr.word));
        rep.line(format!("triangle {k} delta"), tr.delta());
        for (c, p) in tr.corners.iter().enumerate() {
            rep.line(format!("triangle {k} corner {c}"), p);
        }
    }
    Ok(rep)
}

pub fn shear(inputs: &Inputs, edge: Option<usize>, f: Flags) -> Result<Report, Failure> {
    let b = load(inputs, f)?;
    let d = b.coords()?;
    let mut rep = Report::default();
    for (j, x) in decorated::shear_coords(d)?.iter().enumerate() {
        rep.line(format!("chi e{j}"), x);
    }
    if let Some(e) = edge {
        check_edge(d, e)?;
        let t = &d.graph;
        let l = t.flip_local(e)?;
        let (_, laws) = decorated::shear_laws(d, e)?;
        let after = decorated::shear_coords(&decorated::flip_coords(d, e)?)?;
        let sides = [l.a2, l.a1, l.b2, l.b1].map(|h| t.edge(h));
        let mut worst: f64 = 0.0;
        for (k, &x) in sides.iter().enumerate() {
            rep.line(format!("law e{x}"), &laws[k]);
            rep.line(format!("recomputed e{x}"), &after[x]);
            worst = worst.max(laws[k].max_diff(&after[x]));
        }
        let distinct = (0..4).all(|i| (0..i).all(|j| sides[i] != sides[j])) && !sides.contains(&e);
        if distinct {
            rep.within("law_residual", worst, f.tol);
        } else {
            rep.line("law_residual", "skipped, the quadrilateral repeats an edge");
        }
    }
    Ok(rep)
}
