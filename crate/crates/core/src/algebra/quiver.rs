use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A finite directed multigraph with labelled vertices and arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Arrows are given as `(label, source, target)` with vertex labels.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut q = Quiver { vertices, arrows: Vec::new() };
        let mut seen: HashMap<&str, ()> = HashMap::new();
        for v in &q.vertices {
            if seen.insert(v.as_str(), ()).is_some() {
                return Err(Error::Input(format!("duplicate vertex label '{v}'")));
            }
        }
        let mut out: Vec<Arrow> = Vec::new();
        for (l, s, t) in arrows_iter(arrows) {
            if q.vertices.iter().any(|v| v == l) || out.iter().any(|a| a.label == l) {
                return Err(Error::Input(format!("duplicate label '{l}'")));
            }
            let source = q.vertex_index(s).ok_or_else(|| Error::Input(format!("arrow '{l}': unknown vertex '{s}'")))?;
            let target = q.vertex_index(t).ok_or_else(|| Error::Input(format!("arrow '{l}': unknown vertex '{t}'")))?;
            out.push(Arrow { label: l.to_string(), source, target });
        }
        q.arrows = out;
        Ok(q)
    }

    pub fn from_parts(vertices: Vec<String>, arrows: Vec<Arrow>) -> Self {
        Quiver { vertices, arrows }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// The quiver with every arrow reversed.
    pub fn reversed(&self) -> Quiver {
        let arrows =
            self.arrows.iter().map(|a| Arrow { label: a.label.clone(), source: a.target, target: a.source }).collect();
        Quiver { vertices: self.vertices.clone(), arrows }
    }

    /// Vertices with no outgoing arrow.
    pub fn sinks(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| !self.arrows.iter().any(|a| a.source == v)).collect()
    }

    /// Vertices with no incoming arrow.
    pub fn sources(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| !self.arrows.iter().any(|a| a.target == v)).collect()
    }

    /// All paths of the given length, in canonical order.
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        let mut level: Vec<Path> = (0..self.vertex_count()).map(Path::lazy).collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &level {
                for (ai, a) in self.arrows.iter().enumerate() {
                    if a.source == p.target {
                        next.push(p.extended(ai, a.target));
                    }
                }
            }
            level = next;
        }
        level.sort_by(canonical_cmp);
        level
    }

    pub fn arrow_path(&self, a: usize) -> Path {
        let arr = &self.arrows[a];
        Path { source: arr.source, target: arr.target, arrows: vec![a] }
    }

    /// Parses a written word like `c2*a2` or `z2^2*z1` (rightmost factor first).
    pub fn parse_word(&self, word: &str) -> Result<Path> {
        let factors: Vec<&str> = word.split('*').map(str::trim).collect();
        let mut path: Option<Path> = None;
        for f in factors.iter().rev() {
            let (name, pow) = match f.split_once('^') {
                Some((n, e)) => {
                    let e: usize = e.trim().parse().map_err(|_| Error::Input(format!("bad exponent in '{f}'")))?;
                    (n.trim(), e)
                }
                None => (*f, 1),
            };
            let piece = if let Some(a) = self.arrow_index(name) {
                let mut p = Path::lazy(self.arrows[a].source);
                for _ in 0..pow {
                    p = compose(&self.arrow_path(a), &p)
                        .ok_or_else(|| Error::Input(format!("'{name}^{pow}' does not compose")))?;
                }
                p
            } else if let Some(v) = self.vertex_index(name) {
                Path::lazy(v)
            } else {
                return Err(Error::Input(format!("unknown symbol '{name}'")));
            };
            path = Some(match path {
                None => piece,
                Some(acc) => compose(&piece, &acc).ok_or_else(|| Error::Input(format!("'{word}' does not compose")))?,
            });
        }
        path.ok_or_else(|| Error::Input("empty path expression".into()))
    }
}

fn arrows_iter<S: AsRef<str>>(arrows: &[(S, S, S)]) -> impl Iterator<Item = (&str, &str, &str)> {
    arrows.iter().map(|(l, s, t)| (l.as_ref(), s.as_ref(), t.as_ref()))
}

/// A path; `arrows` lists arrows in the order they are traversed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn lazy(v: usize) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_lazy(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    fn extended(&self, a: usize, new_target: usize) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Path { source: self.source, target: new_target, arrows }
    }

    /// True if `sub` occurs as a contiguous piece of `self`.
    pub fn contains_subpath(&self, sub: &Path) -> bool {
        if sub.is_lazy() {
            return self.is_lazy() && self.source == sub.source;
        }
        if sub.len() > self.len() {
            return false;
        }
        self.arrows.windows(sub.len()).any(|w| w == sub.arrows.as_slice())
    }

    pub fn ends_with(&self, sub: &Path) -> bool {
        !sub.is_lazy() && self.arrows.ends_with(&sub.arrows)
    }

    /// The same path in the reversed quiver.
    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path { source: self.target, target: self.source, arrows }
    }

    /// Written form, last arrow first, with repeated factors collapsed into powers.
    pub fn name(&self, q: &Quiver) -> String {
        if self.is_lazy() {
            return q.vertices[self.source].clone();
        }
        let mut parts: Vec<String> = Vec::new();
        let written: Vec<usize> = self.arrows.iter().rev().copied().collect();
        let mut i = 0;
        while i < written.len() {
            let mut j = i;
            while j < written.len() && written[j] == written[i] {
                j += 1;
            }
            let label = &q.arrows[written[i]].label;
            if j - i == 1 {
                parts.push(label.clone());
            } else {
                parts.push(format!("{label}^{}", j - i));
            }
            i = j;
        }
        parts.join("*")
    }
}

/// `compose(p, q)` is the path q followed by p.
pub fn compose(p: &Path, q: &Path) -> Option<Path> {
    if q.target != p.source {
        return None;
    }
    let mut arrows = q.arrows.clone();
    arrows.extend_from_slice(&p.arrows);
    Some(Path { source: q.source, target: p.target, arrows })
}

/// Canonical order: length first, then the written word lexicographically in arrow
/// declaration order; lazy paths by vertex.
pub fn canonical_cmp(a: &Path, b: &Path) -> Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(
            || {
                if a.is_lazy() {
                    a.source.cmp(&b.source)
                } else {
                    a.arrows.iter().rev().cmp(b.arrows.iter().rev())
                }
            },
        )
        .then_with(|| a.source.cmp(&b.source))
}
