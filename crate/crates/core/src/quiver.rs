//! Bound quivers with monomial length-two relations and the gentleness validator.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An arrow of a quiver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// A finite quiver together with a set of length-two monomial relations.
///
/// A relation `(a, b)` means that the path `ab` (left-to-right composition)
/// lies in the ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "QuiverDoc", into = "QuiverDoc")]
pub struct BoundQuiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: BTreeSet<(String, String)>,
    arrow_index: BTreeMap<String, usize>,
    vertex_set: BTreeSet<String>,
}

/// Serialization schema for [`BoundQuiver`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuiverDoc {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<(String, String)>,
}

impl TryFrom<QuiverDoc> for BoundQuiver {
    type Error = Error;
    fn try_from(doc: QuiverDoc) -> Result<Self> {
        BoundQuiver::new(doc.vertices, doc.arrows, doc.relations)
    }
}

impl From<BoundQuiver> for QuiverDoc {
    fn from(q: BoundQuiver) -> Self {
        QuiverDoc {
            vertices: q.vertices,
            arrows: q.arrows,
            relations: q.relations.into_iter().collect(),
        }
    }
}

impl BoundQuiver {
    /// Builds a bound quiver, checking well-formedness: unique ids, declared
    /// endpoints, composable and duplicate-free relations.
    pub fn new(
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        relations: Vec<(String, String)>,
    ) -> Result<Self> {
        let mut vertex_set = BTreeSet::new();
        for v in &vertices {
            if !vertex_set.insert(v.clone()) {
                return Err(Error::DuplicateId(v.clone()));
            }
        }
        let mut arrow_index = BTreeMap::new();
        for (i, a) in arrows.iter().enumerate() {
            if arrow_index.insert(a.id.clone(), i).is_some() || vertex_set.contains(&a.id) {
                return Err(Error::DuplicateId(a.id.clone()));
            }
            for v in [&a.src, &a.tgt] {
                if !vertex_set.contains(v) {
                    return Err(Error::UndeclaredVertex {
                        arrow: a.id.clone(),
                        vertex: v.clone(),
                    });
                }
            }
        }
        let mut rel_set = BTreeSet::new();
        for (x, y) in relations {
            let ax = arrows
                .get(*arrow_index.get(&x).ok_or_else(|| Error::UnknownArrow(x.clone()))?)
                .unwrap();
            let ay = arrows
                .get(*arrow_index.get(&y).ok_or_else(|| Error::UnknownArrow(y.clone()))?)
                .unwrap();
            if ax.tgt != ay.src {
                return Err(Error::NonComposableRelation { first: x, second: y });
            }
            if !rel_set.insert((x.clone(), y.clone())) {
                return Err(Error::DuplicateRelation(x, y));
            }
        }
        Ok(BoundQuiver {
            vertices,
            arrows,
            relations: rel_set,
            arrow_index,
            vertex_set,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &BTreeSet<(String, String)> {
        &self.relations
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertex_set.contains(v)
    }

    pub fn arrow(&self, id: &str) -> Option<&Arrow> {
        self.arrow_index.get(id).map(|&i| &self.arrows[i])
    }

    pub fn require_arrow(&self, id: &str) -> Result<&Arrow> {
        self.arrow(id).ok_or_else(|| Error::UnknownArrow(id.to_string()))
    }

    pub fn is_relation(&self, first: &str, second: &str) -> bool {
        self.relations
            .contains(&(first.to_string(), second.to_string()))
    }

    pub fn arrows_from<'a>(&'a self, v: &'a str) -> impl Iterator<Item = &'a Arrow> {
        self.arrows.iter().filter(move |a| a.src == v)
    }

    pub fn arrows_into<'a>(&'a self, v: &'a str) -> impl Iterator<Item = &'a Arrow> {
        self.arrows.iter().filter(move |a| a.tgt == v)
    }

    /// The opposite quiver: arrows and relations reversed.
    pub fn opposite(&self) -> BoundQuiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                id: a.id.clone(),
                src: a.tgt.clone(),
                tgt: a.src.clone(),
            })
            .collect();
        let relations = self
            .relations
            .iter()
            .map(|(x, y)| (y.clone(), x.clone()))
            .collect();
        BoundQuiver::new(self.vertices.clone(), arrows, relations)
            .expect("opposite of a well-formed quiver is well-formed")
    }

    /// Serializes back to the one-line text format.
    pub fn to_text(&self) -> String {
        let arrows = self
            .arrows
            .iter()
            .map(|a| format!("{}: {} -> {}", a.id, a.src, a.tgt))
            .collect::<Vec<_>>()
            .join(", ");
        let relations = self
            .relations
            .iter()
            .map(|(x, y)| format!("{x} {y}"))
            .collect::<Vec<_>>()
            .join(", ");
        format!(
            "vertices: {} ; arrows: {} ; relations: {}",
            self.vertices.join(" "),
            arrows,
            relations
        )
    }
}

/// A gentleness condition, as referenced in violation records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Condition {
    /// At most two arrows start and at most two arrows end at each vertex.
    G1,
    /// For each arrow `b`, at most one continuation `g` with `bg` in the
    /// ideal, and at most one with `bg` outside it.
    G2,
    /// Dually, at most one predecessor inside and one outside the ideal.
    G3,
    /// No oriented cycle all of whose consecutive pairs avoid the ideal.
    G4,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub condition: Condition,
    pub location: String,
}

/// Outcome of [`validate_gentle`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GentleReport {
    pub is_gentle: bool,
    pub is_finite_dimensional: bool,
    pub violations: Vec<Violation>,
}

impl GentleReport {
    pub fn is_usable(&self) -> bool {
        self.is_gentle && self.is_finite_dimensional
    }
}

impl std::fmt::Display for GentleReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "gentle: {}, finite-dimensional: {}",
            self.is_gentle, self.is_finite_dimensional
        )?;
        for v in &self.violations {
            write!(f, "; {:?} at {}", v.condition, v.location)?;
        }
        Ok(())
    }
}

/// Checks the gentleness conditions G1-G3 and finite-dimensionality G4.
///
/// The report carries all violations; nothing is assumed about the input
/// beyond well-formedness.
pub fn validate_gentle(q: &BoundQuiver) -> GentleReport {
    let mut violations = BTreeSet::new();

    for v in q.vertices() {
        let outs = q.arrows_from(v).count();
        let ins = q.arrows_into(v).count();
        if outs > 2 {
            violations.insert(Violation {
                condition: Condition::G1,
                location: format!("vertex {v}: {outs} arrows start here"),
            });
        }
        if ins > 2 {
            violations.insert(Violation {
                condition: Condition::G1,
                location: format!("vertex {v}: {ins} arrows end here"),
            });
        }
    }

    for b in q.arrows() {
        let (mut in_ideal, mut out_ideal) = (0usize, 0usize);
        for g in q.arrows_from(&b.tgt) {
            if q.is_relation(&b.id, &g.id) {
                in_ideal += 1;
            } else {
                out_ideal += 1;
            }
        }
        if in_ideal > 1 {
            violations.insert(Violation {
                condition: Condition::G2,
                location: format!("arrow {}: {in_ideal} continuations inside the ideal", b.id),
            });
        }
        if out_ideal > 1 {
            violations.insert(Violation {
                condition: Condition::G2,
                location: format!("arrow {}: {out_ideal} continuations outside the ideal", b.id),
            });
        }
        let (mut in_ideal, mut out_ideal) = (0usize, 0usize);
        for a in q.arrows_into(&b.src) {
            if q.is_relation(&a.id, &b.id) {
                in_ideal += 1;
            } else {
                out_ideal += 1;
            }
        }
        if in_ideal > 1 {
            violations.insert(Violation {
                condition: Condition::G3,
                location: format!("arrow {}: {in_ideal} predecessors inside the ideal", b.id),
            });
        }
        if out_ideal > 1 {
            violations.insert(Violation {
                condition: Condition::G3,
                location: format!("arrow {}: {out_ideal} predecessors outside the ideal", b.id),
            });
        }
    }

    let is_gentle = violations.is_empty();

    if let Some(cycle) = relation_free_cycle(q) {
        violations.insert(Violation {
            condition: Condition::G4,
            location: format!("relation-free oriented cycle: {}", cycle.join(" ")),
        });
    }
    let is_finite_dimensional = !violations
        .iter()
        .any(|v| v.condition == Condition::G4);

    GentleReport {
        is_gentle,
        is_finite_dimensional,
        violations: violations.into_iter().collect(),
    }
}

/// Finds an oriented cycle of arrows whose consecutive pairs (cyclically)
/// all avoid the ideal, if one exists.
///
/// Works on the composition graph whose nodes are arrows, with an edge
/// `a -> b` when `t(a) = s(b)` and `ab` is not a relation.
pub fn relation_free_cycle(q: &BoundQuiver) -> Option<Vec<String>> {
    let mut order: Vec<&Arrow> = q.arrows().iter().collect();
    order.sort_by(|a, b| a.id.cmp(&b.id));
    let idx: BTreeMap<&str, usize> = order.iter().enumerate().map(|(i, a)| (a.id.as_str(), i)).collect();
    let succs: Vec<Vec<usize>> = order
        .iter()
        .map(|a| {
            let mut s: Vec<usize> = q
                .arrows_from(&a.tgt)
                .filter(|b| !q.is_relation(&a.id, &b.id))
                .map(|b| idx[b.id.as_str()])
                .collect();
            s.sort_unstable();
            s
        })
        .collect();

    // Iterative three-color DFS, recovering the cycle from the stack.
    let n = order.len();
    let mut color = vec![0u8; n]; // 0 white, 1 gray, 2 black
    for start in 0..n {
        if color[start] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        color[start] = 1;
        loop {
            let step = match stack.last_mut() {
                None => break,
                Some(top) => {
                    if top.1 < succs[top.0].len() {
                        let child = succs[top.0][top.1];
                        top.1 += 1;
                        Some(child)
                    } else {
                        None
                    }
                }
            };
            match step {
                None => {
                    let (node, _) = stack.pop().unwrap();
                    color[node] = 2;
                }
                Some(child) => match color[child] {
                    0 => {
                        color[child] = 1;
                        stack.push((child, 0));
                    }
                    1 => {
                        let pos = stack.iter().position(|&(v, _)| v == child).unwrap();
                        return Some(
                            stack[pos..]
                                .iter()
                                .map(|&(v, _)| order[v].id.clone())
                                .collect(),
                        );
                    }
                    _ => {}
                },
            }
        }
    }
    None
}

/// Parses either the text format or the JSON schema, detected by a leading `{`.
pub fn parse_quiver(input: &str) -> Result<BoundQuiver> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') {
        let doc: QuiverDoc = serde_json::from_str(trimmed).map_err(|e| Error::Syntax {
            line: e.line(),
            col: e.column(),
            msg: e.to_string(),
        })?;
        doc.try_into()
    } else {
        parse_text(input)
    }
}

struct Scanner<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Colon,
    Semi,
    Comma,
    Arrow,
    Eof,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            chars: text.chars().collect(),
            pos: 0,
            text,
        }
    }

    fn line_col(&self, at: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for c in self.text.chars().take(at) {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn error(&self, at: usize, msg: impl Into<String>) -> Error {
        let (line, col) = self.line_col(at);
        Error::Syntax {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn next_tok(&mut self) -> Result<(Tok, usize)> {
        self.skip_ws();
        let at = self.pos;
        if self.pos >= self.chars.len() {
            return Ok((Tok::Eof, at));
        }
        let c = self.chars[self.pos];
        match c {
            ':' => {
                self.pos += 1;
                Ok((Tok::Colon, at))
            }
            ';' => {
                self.pos += 1;
                Ok((Tok::Semi, at))
            }
            ',' => {
                self.pos += 1;
                Ok((Tok::Comma, at))
            }
            '-' => {
                if self.chars.get(self.pos + 1) == Some(&'>') {
                    self.pos += 2;
                    Ok((Tok::Arrow, at))
                } else {
                    Err(self.error(at, "expected `->`"))
                }
            }
            '>' => Err(self.error(at, "unexpected `>`")),
            _ => {
                let start = self.pos;
                while self.pos < self.chars.len() {
                    let c = self.chars[self.pos];
                    if c.is_whitespace() || matches!(c, ':' | ';' | ',' | '-' | '>') {
                        break;
                    }
                    self.pos += 1;
                }
                let ident: String = self.chars[start..self.pos].iter().collect();
                Ok((Tok::Ident(ident), at))
            }
        }
    }

    fn peek(&mut self) -> Result<(Tok, usize)> {
        let save = self.pos;
        let t = self.next_tok();
        self.pos = save;
        t
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        let (t, at) = self.next_tok()?;
        match t {
            Tok::Ident(s) if s == kw => {}
            _ => return Err(self.error(at, format!("expected `{kw}`"))),
        }
        let (t, at) = self.next_tok()?;
        if t != Tok::Colon {
            return Err(self.error(at, "expected `:`"));
        }
        Ok(())
    }

    fn expect_ident(&mut self, what: &str) -> Result<String> {
        let (t, at) = self.next_tok()?;
        match t {
            Tok::Ident(s) => Ok(s),
            _ => Err(self.error(at, format!("expected {what}"))),
        }
    }
}

fn parse_text(input: &str) -> Result<BoundQuiver> {
    let mut sc = Scanner::new(input);

    sc.expect_keyword("vertices")?;
    let mut vertices = Vec::new();
    loop {
        let (t, at) = sc.next_tok()?;
        match t {
            Tok::Ident(s) => vertices.push(s),
            Tok::Semi => break,
            _ => return Err(sc.error(at, "expected vertex id or `;`")),
        }
    }

    sc.expect_keyword("arrows")?;
    let mut arrows = Vec::new();
    if sc.peek()?.0 != Tok::Semi {
        loop {
            let id = sc.expect_ident("arrow id")?;
            let (t, at) = sc.next_tok()?;
            if t != Tok::Colon {
                return Err(sc.error(at, "expected `:` after arrow id"));
            }
            let src = sc.expect_ident("source vertex")?;
            let (t, at) = sc.next_tok()?;
            if t != Tok::Arrow {
                return Err(sc.error(at, "expected `->`"));
            }
            let tgt = sc.expect_ident("target vertex")?;
            arrows.push(Arrow { id, src, tgt });
            let (t, at) = sc.next_tok()?;
            match t {
                Tok::Comma => continue,
                Tok::Semi => break,
                _ => return Err(sc.error(at, "expected `,` or `;`")),
            }
        }
    } else {
        sc.next_tok()?;
    }

    sc.expect_keyword("relations")?;
    let mut relations = Vec::new();
    loop {
        let (t, at) = sc.next_tok()?;
        match t {
            Tok::Eof => break,
            Tok::Ident(first) => {
                let second = sc.expect_ident("second arrow of relation")?;
                relations.push((first, second));
                let (t, at) = sc.next_tok()?;
                match t {
                    Tok::Comma => continue,
                    Tok::Eof => break,
                    _ => return Err(sc.error(at, "expected `,` or end of input")),
                }
            }
            _ => return Err(sc.error(at, "expected relation or end of input")),
        }
    }

    BoundQuiver::new(vertices, arrows, relations)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn quiver(text: &str) -> BoundQuiver {
        parse_quiver(text).unwrap()
    }

    #[test]
    fn parses_a2() {
        let q = quiver("vertices: 1 2 ; arrows: a: 1 -> 2 ; relations:");
        assert_eq!(q.vertices(), ["1", "2"]);
        assert_eq!(q.arrows().len(), 1);
        assert!(q.relations().is_empty());
    }

    #[test]
    fn parses_loop_with_relation() {
        let q = quiver("vertices: 1 ; arrows: x: 1 -> 1 ; relations: x x");
        assert!(q.is_relation("x", "x"));
    }

    #[test]
    fn parses_kronecker() {
        let q = quiver("vertices: 1 2 ; arrows: a: 1 -> 2, b: 1 -> 2 ; relations:");
        assert_eq!(q.arrows().len(), 2);
    }

    #[test]
    fn parses_json_schema() {
        let q = parse_quiver(
            r#"{"vertices": ["1", "2"], "arrows": [{"id": "a", "src": "1", "tgt": "2"}], "relations": []}"#,
        )
        .unwrap();
        assert_eq!(q, quiver("vertices: 1 2 ; arrows: a: 1 -> 2 ; relations:"));
    }

    #[test]
    fn json_round_trip() {
        let q = quiver("vertices: 1 2 ; arrows: a: 1 -> 2, b: 2 -> 2 ; relations: a b, b b");
        let json = serde_json::to_string(&q).unwrap();
        let back: BoundQuiver = serde_json::from_str(&json).unwrap();
        assert_eq!(q, back);
    }

    #[test]
    fn rejects_undeclared_vertex() {
        let err = parse_quiver("vertices: 1 ; arrows: a: 1 -> 2 ; relations:").unwrap_err();
        assert!(matches!(err, Error::UndeclaredVertex { .. }));
    }

    #[test]
    fn rejects_non_composable_relation() {
        let err =
            parse_quiver("vertices: 1 2 ; arrows: a: 1 -> 2, b: 1 -> 2 ; relations: a b").unwrap_err();
        assert!(matches!(err, Error::NonComposableRelation { .. }));
    }

    #[test]
    fn rejects_duplicate_ids() {
        let err = parse_quiver("vertices: 1 1 ; arrows: ; relations:").unwrap_err();
        assert!(matches!(err, Error::DuplicateId(_)));
        let err =
            parse_quiver("vertices: 1 ; arrows: a: 1 -> 1, a: 1 -> 1 ; relations:").unwrap_err();
        assert!(matches!(err, Error::DuplicateId(_)));
    }

    #[test]
    fn syntax_error_has_position() {
        let err = parse_quiver("vertices: 1 ;\narrows: a 1 -> 1 ; relations:").unwrap_err();
        match err {
            Error::Syntax { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn a2_is_gentle_and_finite() {
        let report = validate_gentle(&quiver("vertices: 1 2 ; arrows: a: 1 -> 2 ; relations:"));
        assert!(report.is_gentle);
        assert!(report.is_finite_dimensional);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn two_loops_full_relations_violate_g2() {
        let q = quiver("vertices: 1 ; arrows: x: 1 -> 1, y: 1 -> 1 ; relations: x x, y y, x y, y x");
        let report = validate_gentle(&q);
        assert!(!report.is_gentle);
        assert!(report.is_finite_dimensional);
        assert!(report
            .violations
            .iter()
            .any(|v| v.condition == Condition::G2 && v.location.contains("arrow x")));
    }

    #[test]
    fn free_loop_is_infinite_dimensional() {
        let q = quiver("vertices: 1 ; arrows: x: 1 -> 1 ; relations:");
        let report = validate_gentle(&q);
        assert!(report.is_gentle);
        assert!(!report.is_finite_dimensional);
    }

    #[test]
    fn validation_independent_of_input_order() {
        let q1 = quiver("vertices: 1 2 ; arrows: a: 1 -> 2, b: 2 -> 1, c: 1 -> 2 ; relations: a b, b c");
        let q2 = quiver("vertices: 2 1 ; arrows: c: 1 -> 2, b: 2 -> 1, a: 1 -> 2 ; relations: b c, a b");
        let r1 = validate_gentle(&q1);
        let r2 = validate_gentle(&q2);
        assert_eq!(r1.violations, r2.violations);
        assert_eq!(r1.is_gentle, r2.is_gentle);
    }
}
