//! Input bundles: one or more files whose concatenation holds a `fatgraph v1`
//! section and optionally `coords v1` and `domain v1` sections.

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use superteich::decorated::{DecoratedCoords, FundamentalDomain};
use superteich::fatgraph_spin::{Fatgraph, Orientation};

use crate::Failure;

const HEADERS: [&str; 3] = ["fatgraph v1", "coords v1", "domain v1"];

pub struct Bundle {
    pub graph: Fatgraph,
    /// Orientation from the `orient:` line of the fatgraph or coords section.
    pub orientation: Option<Orientation>,
    pub coords: Option<DecoratedCoords>,
    pub domain: Option<FundamentalDomain>,
}

impl Bundle {
    pub fn coords(&self) -> Result<&DecoratedCoords, Failure> {
        self.coords.as_ref().ok_or_else(|| Failure::Invalid("input has no `coords v1` section".into()))
    }

    pub fn domain(&self) -> FundamentalDomain {
        self.domain.clone().unwrap_or_else(|| FundamentalDomain::standard(&self.graph))
    }
}

/// Reads every path (`-` is stdin) and joins the contents.
pub fn read_all(paths: &[PathBuf]) -> Result<String, Failure> {
    let mut text = String::new();
    for p in paths {
        if p.as_os_str() == "-" {
            std::io::stdin().read_to_string(&mut text).map_err(|e| Failure::Invalid(format!("stdin: {e}")))?;
        } else {
            text += &fs::read_to_string(p).map_err(|e| Failure::Invalid(format!("{}: {e}", p.display())))?;
        }
        text.push('\n');
    }
    Ok(text)
}

/// Splits text at section headers. Lines before the first header must be blank or comments.
fn sections(text: &str) -> Result<Vec<(&'static str, String)>, Failure> {
    let mut out: Vec<(&'static str, String)> = Vec::new();
    for line in text.lines() {
        let t = line.trim();
        if let Some(h) = HEADERS.iter().find(|h| **h == t) {
            if out.iter().any(|(k, _)| k == h) {
                return Err(Failure::Invalid(format!("duplicate `{h}` section")));
            }
            out.push((h, String::new()));
        }
        match out.last_mut() {
            Some((_, body)) => {
                body.push_str(line);
                body.push('\n');
            }
            None if t.is_empty() || t.starts_with('#') => {}
            None => return Err(Failure::Invalid(format!("text before the first section header: `{t}`"))),
        }
    }
    Ok(out)
}

pub fn parse_bundle(text: &str, rank: u8) -> Result<Bundle, Failure> {
    let secs = sections(text)?;
    let get = |h: &str| secs.iter().find(|(k, _)| *k == h).map(|(_, b)| b.as_str());
    let (graph, graph_orient) = Fatgraph::parse(get("fatgraph v1").ok_or_else(|| Failure::Invalid("input has no `fatgraph v1` section".into()))?)?;
    let coords = match get("coords v1") {
        Some(body) => Some(DecoratedCoords::parse(graph.clone(), rank, body)?),
        None => None,
    };
    let domain = match get("domain v1") {
        Some(body) => Some(FundamentalDomain::parse(&graph, body)?),
        None => None,
    };
    if let (Some(o), Some(c)) = (&graph_orient, &coords) {
        if *o != c.orientation {
            return Err(Failure::Invalid("orientations of the fatgraph and coords sections differ".into()));
        }
    }
    let orientation = coords.as_ref().map(|c| c.orientation.clone()).or(graph_orient);
    Ok(Bundle { graph, orientation, coords, domain })
}

/// `theta`, `planar-theta`, `dumbbell`, `k4`, `genus-two` or `spine:<g>,<s>`.
pub fn builtin_graph(name: &str) -> Result<Fatgraph, Failure> {
    Ok(match name {
        "theta" => Fatgraph::theta(),
        "planar-theta" => Fatgraph::planar_theta(),
        "dumbbell" => Fatgraph::dumbbell(),
        "k4" => Fatgraph::k4(),
        "genus-two" => Fatgraph::genus_two(),
        _ => {
            let spec = name.strip_prefix("spine:").ok_or_else(|| Failure::Invalid(format!("unknown builtin `{name}`")))?;
            let (g, s) = spec.split_once(',').ok_or_else(|| Failure::Invalid("spine needs `spine:<g>,<s>`".into()))?;
            let num = |x: &str| x.trim().parse::<usize>().map_err(|_| Failure::Invalid(format!("bad number `{x}`")));
            Fatgraph::spine(num(g)?, num(s)?)?
        }
    })
}

/// Builtin spine with forward orientation, every λ-length 1 and every μ-invariant 0.
pub fn builtin_bundle(name: &str, rank: u8) -> Result<Bundle, Failure> {
    let graph = builtin_graph(name)?;
    let o = Orientation::forward(&graph);
    let coords = DecoratedCoords::constant(graph.clone(), o.clone(), rank, 1.0)?;
    Ok(Bundle { graph, orientation: Some(o), coords: Some(coords), domain: None })
}
