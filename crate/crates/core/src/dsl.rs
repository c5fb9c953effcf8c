//! Line-oriented text format for quivers with relations.
//!
//! ```text
//! algebra K52
//! vertex e
//! arrow z1 : e -> e
//! arrow z2 : e -> e
//! zero z1^2
//! relation a2*c2 = c1*k2
//! ```
//!
//! `a*b` is b followed by a, `a^3` is `a*a*a`, a bare vertex is its lazy path and `#` starts a
//! comment. In a relation, a leading number followed by more factors is a coefficient, and a
//! side consisting of the single literal `0` is the zero combination.

use num_traits::{One, Signed, Zero};

use crate::algebra::{
    build_monomial_algebra, build_presented_algebra, compose, Arrow, FiniteDimAlgebra, LinearPresentation,
    MonomialPresentation, Path, Quiver,
};
use crate::error::{Error, Result};
use crate::linalg::{fmt_rational, parse_rational, Rational};

/// A parsed algebra file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub name: String,
    pub quiver: Quiver,
    pub zeros: Vec<Path>,
    /// Each relation is a combination of parallel paths set to zero.
    pub relations: Vec<Vec<(Rational, Path)>>,
}

impl AlgebraSpec {
    pub fn from_monomial(p: &MonomialPresentation) -> Self {
        AlgebraSpec {
            name: p.name.clone(),
            quiver: p.quiver.clone(),
            zeros: p.forbidden.clone(),
            relations: Vec::new(),
        }
    }

    pub fn from_linear(p: &LinearPresentation) -> Self {
        let (single, multi): (Vec<_>, Vec<_>) = p.relations.iter().cloned().partition(|r| r.len() == 1);
        AlgebraSpec {
            name: p.name.clone(),
            quiver: p.quiver.clone(),
            zeros: single.into_iter().map(|mut r| r.remove(0).1).collect(),
            relations: multi,
        }
    }

    pub fn to_linear(&self) -> Result<LinearPresentation> {
        let mut rels: Vec<Vec<(Rational, Path)>> =
            self.zeros.iter().map(|p| vec![(Rational::one(), p.clone())]).collect();
        rels.extend(self.relations.iter().cloned());
        LinearPresentation::new(self.name.clone(), self.quiver.clone(), rels)
    }

    /// The monomial presentation, if every relation is a single path.
    pub fn to_monomial(&self) -> Result<Option<MonomialPresentation>> {
        let lin = self.to_linear()?;
        if !lin.is_monomial() {
            return Ok(None);
        }
        let paths = lin.relations.into_iter().map(|mut r| r.remove(0).1).collect();
        MonomialPresentation::new(self.name.clone(), self.quiver.clone(), paths).map(Some)
    }

    pub fn build(&self, max_degree: usize) -> Result<FiniteDimAlgebra> {
        match self.to_monomial()? {
            Some(m) => build_monomial_algebra(&m),
            None => build_presented_algebra(&self.to_linear()?, max_degree),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    Sym(char),
    Arrow,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '.' || c == '\''
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn tokenize(text: &str, line: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if is_word_char(c) {
            let start = i;
            while i < chars.len() && is_word_char(chars[i]) {
                i += 1;
            }
            out.push(Token { tok: Tok::Word(chars[start..i].iter().collect()), col });
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Token { tok: Tok::Arrow, col });
            i += 2;
        } else if "*^+-=:/".contains(c) {
            out.push(Token { tok: Tok::Sym(c), col });
            i += 1;
        } else {
            return Err(perr(line, col, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&'a Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        perr(self.line, self.col(), message)
    }

    fn word(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Word(w)) => {
                self.pos += 1;
                Ok(w.clone())
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }
}

fn is_number(w: &str) -> bool {
    !w.is_empty() && w.chars().all(|c| c.is_ascii_digit())
}

fn path_expr(cur: &mut Cursor, q: &Quiver) -> Result<Path> {
    let mut factors: Vec<(Path, usize)> = Vec::new();
    loop {
        let col = cur.col();
        let name = cur.word("a vertex or arrow")?;
        let mut pow = 1;
        if cur.peek() == Some(&Tok::Sym('^')) {
            cur.pos += 1;
            let e = cur.word("an exponent")?;
            pow = e.parse().map_err(|_| perr(cur.line, col, format!("bad exponent '{e}'")))?;
        }
        let piece = if let Some(a) = q.arrow_index(&name) {
            let mut p = Path::lazy(q.arrows()[a].source);
            for _ in 0..pow {
                p = compose(&q.arrow_path(a), &p)
                    .ok_or_else(|| perr(cur.line, col, format!("'{name}^{pow}' does not compose")))?;
            }
            p
        } else if let Some(v) = q.vertex_index(&name) {
            Path::lazy(v)
        } else {
            return Err(perr(cur.line, col, format!("unknown identifier '{name}'")));
        };
        factors.push((piece, col));
        if cur.peek() == Some(&Tok::Sym('*')) {
            cur.pos += 1;
        } else {
            break;
        }
    }
    let (mut acc, _) = factors.pop().unwrap();
    while let Some((p, col)) = factors.pop() {
        acc = compose(&p, &acc).ok_or_else(|| perr(cur.line, col, "factors do not compose"))?;
    }
    Ok(acc)
}

/// Reads `[number ['/' number] ['*']]` when more factors follow.
fn coefficient(cur: &mut Cursor) -> Result<Rational> {
    let Some(Tok::Word(w)) = cur.peek() else {
        return Ok(Rational::one());
    };
    if !is_number(w) {
        return Ok(Rational::one());
    }
    let col = cur.col();
    let (text, used) = match (cur.peek_at(1), cur.peek_at(2)) {
        (Some(Tok::Sym('/')), Some(Tok::Word(d))) if is_number(d) => (format!("{w}/{d}"), 3),
        _ => (w.clone(), 1),
    };
    let more = match cur.peek_at(used) {
        Some(Tok::Sym('*')) => matches!(cur.peek_at(used + 1), Some(Tok::Word(_))),
        Some(Tok::Word(_)) => true,
        _ => false,
    };
    if !more {
        if used == 3 {
            return Err(perr(cur.line, col, "coefficient without a path"));
        }
        return Ok(Rational::one());
    }
    cur.pos += used;
    if cur.peek() == Some(&Tok::Sym('*')) {
        cur.pos += 1;
    }
    parse_rational(&text).ok_or_else(|| perr(cur.line, col, format!("bad coefficient '{text}'")))
}

fn lincomb(cur: &mut Cursor, q: &Quiver) -> Result<Vec<(Rational, Path)>> {
    if let (Some(Tok::Word(w)), next) = (cur.peek(), cur.peek_at(1)) {
        if w == "0" && matches!(next, None | Some(Tok::Sym('='))) {
            cur.pos += 1;
            return Ok(Vec::new());
        }
    }
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let mut sign = Rational::one();
        match cur.peek() {
            Some(Tok::Sym('+')) => cur.pos += 1,
            Some(Tok::Sym('-')) => {
                cur.pos += 1;
                sign = -sign;
            }
            _ if !first => break,
            _ => {}
        }
        first = false;
        let c = coefficient(cur)?;
        let p = path_expr(cur, q)?;
        terms.push((sign * c, p));
        if !matches!(cur.peek(), Some(Tok::Sym('+')) | Some(Tok::Sym('-'))) {
            break;
        }
    }
    Ok(terms)
}

struct ArrowDecl {
    label: String,
    source: String,
    target: String,
    line: usize,
    scol: usize,
    tcol: usize,
}

/// Parses an algebra file. Declarations may appear in any order.
pub fn parse_dsl(text: &str) -> Result<AlgebraSpec> {
    let mut name: Option<String> = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<ArrowDecl> = Vec::new();
    let mut pending: Vec<(usize, Vec<Token>, usize)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("");
        if let Some(rest) =
            body.trim_start().strip_prefix("algebra").filter(|r| r.is_empty() || r.starts_with(char::is_whitespace))
        {
            if name.is_some() {
                return Err(perr(line, body.len() - body.trim_start().len() + 1, "duplicate 'algebra' line"));
            }
            if rest.trim().is_empty() {
                return Err(perr(line, body.chars().count() + 1, "expected an algebra name"));
            }
            name = Some(rest.trim().to_string());
            continue;
        }
        let toks = tokenize(body, line)?;
        let Some(first) = toks.first() else { continue };
        let kw = match &first.tok {
            Tok::Word(w) => w.clone(),
            _ => return Err(perr(line, first.col, "expected a keyword")),
        };
        let end_col = body.chars().count() + 1;
        let mut cur = Cursor { toks: &toks, pos: 1, line, end_col };
        match kw.as_str() {
            "vertex" => {
                if cur.at_end() {
                    return Err(cur.err("expected at least one vertex"));
                }
                while !cur.at_end() {
                    let col = cur.col();
                    let v = cur.word("a vertex name")?;
                    if vertices.contains(&v) || arrows.iter().any(|a| a.label == v) {
                        return Err(perr(line, col, format!("duplicate identifier '{v}'")));
                    }
                    vertices.push(v);
                }
            }
            "arrow" => {
                let col = cur.col();
                let a = cur.word("an arrow name")?;
                cur.expect(Tok::Sym(':'), "':'")?;
                let scol = cur.col();
                let s = cur.word("a source vertex")?;
                cur.expect(Tok::Arrow, "'->'")?;
                let tcol = cur.col();
                let t = cur.word("a target vertex")?;
                cur.finish()?;
                if vertices.contains(&a) || arrows.iter().any(|x| x.label == a) {
                    return Err(perr(line, col, format!("duplicate identifier '{a}'")));
                }
                arrows.push(ArrowDecl { label: a, source: s, target: t, line, scol, tcol });
            }
            "zero" | "relation" => pending.push((line, toks.clone(), end_col)),
            other => return Err(perr(line, first.col, format!("unknown keyword '{other}'"))),
        }
    }
    let name = name.ok_or_else(|| perr(1, 1, "missing 'algebra' line"))?;
    let mut quiver_arrows = Vec::new();
    for a in &arrows {
        let find = |v: &str, col: usize| {
            vertices.iter().position(|w| w == v).ok_or_else(|| perr(a.line, col, format!("unknown vertex '{v}'")))
        };
        let (source, target) = (find(&a.source, a.scol)?, find(&a.target, a.tcol)?);
        quiver_arrows.push(Arrow { label: a.label.clone(), source, target });
    }
    let quiver = Quiver::from_parts(vertices, quiver_arrows);
    let mut zeros = Vec::new();
    let mut relations = Vec::new();
    for (line, toks, end_col) in &pending {
        let mut cur = Cursor { toks, pos: 1, line: *line, end_col: *end_col };
        if toks[0].tok == Tok::Word("zero".into()) {
            let p = path_expr(&mut cur, &quiver)?;
            cur.finish()?;
            if p.is_lazy() {
                return Err(perr(*line, toks[1].col, "a lazy path cannot be zero"));
            }
            zeros.push(p);
        } else {
            let mut lhs = lincomb(&mut cur, &quiver)?;
            cur.expect(Tok::Sym('='), "'='")?;
            let rhs = lincomb(&mut cur, &quiver)?;
            cur.finish()?;
            lhs.extend(rhs.into_iter().map(|(c, p)| (-c, p)));
            let combined = LinearPresentation::new("", quiver.clone(), vec![lhs])
                .map_err(|e| perr(*line, toks[0].col, e.to_string()))?;
            relations.extend(combined.relations);
        }
    }
    Ok(AlgebraSpec { name, quiver, zeros, relations })
}

fn term(c: &Rational, p: &str, first: bool) -> String {
    let sign = if c.is_negative() {
        if first {
            "-"
        } else {
            " - "
        }
    } else if first {
        ""
    } else {
        " + "
    };
    let a = c.abs();
    if a.is_one() {
        format!("{sign}{p}")
    } else {
        format!("{sign}{}*{p}", fmt_rational(&a))
    }
}

/// Writes a spec in the canonical file layout.
pub fn emit_dsl(spec: &AlgebraSpec) -> String {
    let q = &spec.quiver;
    let mut out = format!("algebra {}\n", spec.name);
    out.push_str(&format!("vertex {}\n", q.vertices().join(" ")));
    for a in q.arrows() {
        out.push_str(&format!("arrow {} : {} -> {}\n", a.label, q.vertices()[a.source], q.vertices()[a.target]));
    }
    for p in &spec.zeros {
        out.push_str(&format!("zero {}\n", p.name(q)));
    }
    for r in &spec.relations {
        let lhs: String = r
            .iter()
            .enumerate()
            .filter(|(_, (c, _))| !c.is_zero())
            .map(|(k, (c, p))| term(c, &p.name(q), k == 0))
            .collect();
        out.push_str(&format!("relation {lhs} = 0\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_numbers() {
        let s = parse_dsl("algebra A\nvertex 1\narrow x : 1 -> 1\nzero x^2\n").unwrap();
        let a = s.build(8).unwrap();
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_dsl("algebra A\nvertex 1\narrow x : 1 -> 2\n") {
            Err(Error::Parse { line: 3, column: 16, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_dsl("algebra A\nvertex 1\narrow x : 1 -> 1\nzero x*y\n") {
            Err(Error::Parse { line: 4, column: 8, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_dsl("vertex 1 $"), Err(Error::Parse { line: 1, column: 10, .. })));
    }

    #[test]
    fn coefficients_and_zero_side() {
        let s = parse_dsl(
            "algebra L\nvertex 0 1\narrow a : 0 -> 1\narrow b : 0 -> 1\narrow c : 1 -> 0\n\
             relation 2*a - 1/2 b = a*c*b\nrelation c*a = 0\n",
        )
        .unwrap();
        assert_eq!(s.relations.len(), 2);
        assert_eq!(s.relations[0][0].0, Rational::from_integer(2.into()));
        assert_eq!(s.relations[0][1].0, Rational::new((-1).into(), 2.into()));
        assert!(parse_dsl("algebra L\nvertex 0 1\narrow a : 0 -> 1\narrow c : 1 -> 0\nrelation a = c\n").is_err());
        let again = parse_dsl(&emit_dsl(&s)).unwrap();
        assert_eq!(again, s);
    }
}
