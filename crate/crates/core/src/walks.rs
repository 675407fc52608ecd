//! Letters, strings (reduced walks avoiding relations), substring
//! factorizations, and string enumeration.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, StringViolation};
use crate::quiver::BoundQuiver;

/// An arrow or its formal inverse. Ordering is (arrow id, direct < inverse),
/// which is the letter ordering used for all canonical choices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub arrow: String,
    pub inverse: bool,
}

impl Letter {
    pub fn direct(arrow: impl Into<String>) -> Self {
        Letter {
            arrow: arrow.into(),
            inverse: false,
        }
    }

    pub fn inv(arrow: impl Into<String>) -> Self {
        Letter {
            arrow: arrow.into(),
            inverse: true,
        }
    }

    pub fn inverted(&self) -> Letter {
        Letter {
            arrow: self.arrow.clone(),
            inverse: !self.inverse,
        }
    }

    /// s(l): source of the letter, extending s to formal inverses.
    pub fn source<'q>(&self, q: &'q BoundQuiver) -> Result<&'q str> {
        let a = q.require_arrow(&self.arrow)?;
        Ok(if self.inverse { &a.tgt } else { &a.src })
    }

    /// t(l): target of the letter.
    pub fn target<'q>(&self, q: &'q BoundQuiver) -> Result<&'q str> {
        let a = q.require_arrow(&self.arrow)?;
        Ok(if self.inverse { &a.src } else { &a.tgt })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.arrow)
        } else {
            write!(f, "{}", self.arrow)
        }
    }
}

impl FromStr for Letter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if let Some(id) = s.strip_suffix("^-1") {
            if id.is_empty() {
                return Err(Error::Syntax {
                    line: 1,
                    col: 1,
                    msg: format!("empty arrow id in letter `{s}`"),
                });
            }
            Ok(Letter::inv(id))
        } else {
            Ok(Letter::direct(s))
        }
    }
}

/// A walk: either trivial at a vertex, or a non-empty letter sequence.
///
/// Whether a walk is an actual string over a quiver is checked by
/// [`is_string`]; the type itself imposes nothing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum StringWord {
    Trivial(String),
    Word(Vec<Letter>),
}

impl StringWord {
    pub fn trivial(vertex: impl Into<String>) -> Self {
        StringWord::Trivial(vertex.into())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        assert!(!letters.is_empty(), "use StringWord::trivial for length 0");
        StringWord::Word(letters)
    }

    pub fn len(&self) -> usize {
        match self {
            StringWord::Trivial(_) => 0,
            StringWord::Word(ls) => ls.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn letters(&self) -> &[Letter] {
        match self {
            StringWord::Trivial(_) => &[],
            StringWord::Word(ls) => ls,
        }
    }

    pub fn source<'q>(&self, q: &'q BoundQuiver) -> Result<&'q str> {
        match self {
            StringWord::Trivial(v) => {
                if q.has_vertex(v) {
                    Ok(q.vertices().iter().find(|x| *x == v).unwrap().as_str())
                } else {
                    Err(Error::UnknownVertex(v.clone()))
                }
            }
            StringWord::Word(ls) => ls[0].source(q),
        }
    }

    pub fn target<'q>(&self, q: &'q BoundQuiver) -> Result<&'q str> {
        match self {
            StringWord::Trivial(_) => self.source(q),
            StringWord::Word(ls) => ls.last().unwrap().target(q),
        }
    }

    /// The formal inverse: reversed letters with directions flipped.
    /// Trivial strings are fixed points.
    pub fn inverse(&self) -> StringWord {
        match self {
            StringWord::Trivial(v) => StringWord::Trivial(v.clone()),
            StringWord::Word(ls) => {
                StringWord::Word(ls.iter().rev().map(Letter::inverted).collect())
            }
        }
    }

    /// Canonical representative of {w, w^-1}: the lexicographic minimum
    /// under the letter ordering.
    pub fn canonical(&self) -> StringWord {
        let inv = self.inverse();
        if *self <= inv {
            self.clone()
        } else {
            inv
        }
    }

    /// The vertex sequence visited by the walk: n + 1 vertices.
    pub fn vertex_path(&self, q: &BoundQuiver) -> Result<Vec<String>> {
        match self {
            StringWord::Trivial(_) => Ok(vec![self.source(q)?.to_string()]),
            StringWord::Word(ls) => {
                let mut path = Vec::with_capacity(ls.len() + 1);
                path.push(ls[0].source(q)?.to_string());
                for l in ls {
                    path.push(l.target(q)?.to_string());
                }
                Ok(path)
            }
        }
    }

    /// Substring over the interval [i, j]; trivial at position i when i = j.
    pub fn substring(&self, q: &BoundQuiver, i: usize, j: usize) -> Result<StringWord> {
        assert!(i <= j && j <= self.len());
        if i == j {
            let path = self.vertex_path(q)?;
            Ok(StringWord::Trivial(path[i].clone()))
        } else {
            Ok(StringWord::Word(self.letters()[i..j].to_vec()))
        }
    }

    /// Rotation of the letter sequence starting at offset k.
    pub fn rotate(&self, k: usize) -> StringWord {
        match self {
            StringWord::Trivial(_) => self.clone(),
            StringWord::Word(ls) => {
                let n = ls.len();
                let k = k % n;
                let mut out = Vec::with_capacity(n);
                out.extend_from_slice(&ls[k..]);
                out.extend_from_slice(&ls[..k]);
                StringWord::Word(out)
            }
        }
    }
}

impl fmt::Display for StringWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StringWord::Trivial(v) => write!(f, "e({v})"),
            StringWord::Word(ls) => {
                let toks: Vec<String> = ls.iter().map(|l| l.to_string()).collect();
                write!(f, "{}", toks.join(" "))
            }
        }
    }
}

impl FromStr for StringWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("e(") {
            if let Some(v) = rest.strip_suffix(')') {
                if !v.is_empty() && !v.contains(char::is_whitespace) {
                    return Ok(StringWord::Trivial(v.to_string()));
                }
            }
            return Err(Error::Syntax {
                line: 1,
                col: 1,
                msg: format!("malformed trivial string `{s}`"),
            });
        }
        let letters: Vec<Letter> = s
            .split_whitespace()
            .map(Letter::from_str)
            .collect::<Result<_>>()?;
        if letters.is_empty() {
            return Err(Error::Syntax {
                line: 1,
                col: 1,
                msg: "empty string word; use e(<vertex>) for trivial strings".into(),
            });
        }
        Ok(StringWord::Word(letters))
    }
}

impl TryFrom<String> for StringWord {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<StringWord> for String {
    fn from(w: StringWord) -> String {
        w.to_string()
    }
}

/// Checks validity of the junction between two consecutive letters.
pub fn junction_violation(
    q: &BoundQuiver,
    left: &Letter,
    right: &Letter,
    position: usize,
) -> Result<Option<StringViolation>> {
    if left.target(q)? != right.source(q)? {
        return Ok(Some(StringViolation::NotComposable { position }));
    }
    if *right == left.inverted() {
        return Ok(Some(StringViolation::NotReduced { position }));
    }
    if !left.inverse && !right.inverse && q.is_relation(&left.arrow, &right.arrow) {
        return Ok(Some(StringViolation::ForbiddenPath { position }));
    }
    if left.inverse && right.inverse && q.is_relation(&right.arrow, &left.arrow) {
        return Ok(Some(StringViolation::ForbiddenPath { position }));
    }
    Ok(None)
}

/// First violated string invariant of the walk, if any.
pub fn string_violation(q: &BoundQuiver, w: &StringWord) -> Result<Option<StringViolation>> {
    match w {
        StringWord::Trivial(v) => {
            if q.has_vertex(v) {
                Ok(None)
            } else {
                Err(Error::UnknownVertex(v.clone()))
            }
        }
        StringWord::Word(ls) => {
            for l in ls {
                q.require_arrow(&l.arrow)?;
            }
            for (i, pair) in ls.windows(2).enumerate() {
                if let Some(v) = junction_violation(q, &pair[0], &pair[1], i)? {
                    return Ok(Some(v));
                }
            }
            Ok(None)
        }
    }
}

/// True iff `w` is a string over `q`: composable, reduced, avoiding the ideal.
pub fn is_string(q: &BoundQuiver, w: &StringWord) -> Result<bool> {
    Ok(string_violation(q, w)?.is_none())
}

/// Concatenation of two strings, when the junction is valid.
pub fn concat(q: &BoundQuiver, u: &StringWord, v: &StringWord) -> Result<StringWord> {
    let t = u.target(q)?;
    let s = v.source(q)?;
    if t != s {
        return Err(Error::NonComposable {
            left_target: t.to_string(),
            right_source: s.to_string(),
        });
    }
    match (u, v) {
        (StringWord::Trivial(_), _) => Ok(v.clone()),
        (_, StringWord::Trivial(_)) => Ok(u.clone()),
        (StringWord::Word(a), StringWord::Word(b)) => {
            if let Some(violation) =
                junction_violation(q, a.last().unwrap(), &b[0], a.len() - 1)?
            {
                return Err(Error::JunctionViolation(violation));
            }
            let mut out = a.clone();
            out.extend_from_slice(b);
            Ok(StringWord::Word(out))
        }
    }
}

/// Whether a substring interval sits on top of or at the bottom of its host.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    Top,
    Bottom,
}

/// An interval [i, j] of a host string, classified as top or bottom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Factorization {
    pub i: usize,
    pub j: usize,
    pub kind: FactorKind,
}

/// Classification of an interval by the directions of the adjacent letters:
/// top means both adjacent letters point away from the interval, bottom
/// means both point into it.
pub fn interval_is(w: &StringWord, i: usize, j: usize, kind: FactorKind) -> bool {
    let ls = w.letters();
    let n = ls.len();
    debug_assert!(i <= j && j <= n);
    match kind {
        FactorKind::Top => {
            (i == 0 || ls[i - 1].inverse) && (j == n || !ls[j].inverse)
        }
        FactorKind::Bottom => {
            (i == 0 || !ls[i - 1].inverse) && (j == n || ls[j].inverse)
        }
    }
}

/// All intervals of the given kind, in increasing (i, j) order.
pub fn factorizations(w: &StringWord, kind: FactorKind) -> Vec<Factorization> {
    let n = w.len();
    let mut out = Vec::new();
    for i in 0..=n {
        for j in i..=n {
            if interval_is(w, i, j, kind) {
                out.push(Factorization { i, j, kind });
            }
        }
    }
    out
}

/// All strings of length <= max_len, one canonical representative per
/// inversion class, sorted by (length, canonical form).
pub fn enumerate_strings(q: &BoundQuiver, max_len: usize) -> Result<Vec<StringWord>> {
    let mut seen: BTreeSet<StringWord> = BTreeSet::new();
    for v in q.vertices() {
        seen.insert(StringWord::Trivial(v.clone()));
    }
    if max_len > 0 {
        // BFS by right-extension; every string of length n has a string
        // prefix of length n - 1, so layers are complete.
        let mut frontier: Vec<Vec<Letter>> = Vec::new();
        for a in q.arrows() {
            frontier.push(vec![Letter::direct(&a.id)]);
            frontier.push(vec![Letter::inv(&a.id)]);
        }
        for ls in &frontier {
            seen.insert(StringWord::Word(ls.clone()).canonical());
        }
        for _ in 1..max_len {
            let mut next = Vec::new();
            for ls in &frontier {
                let last = ls.last().unwrap();
                for a in q.arrows() {
                    for cand in [Letter::direct(&a.id), Letter::inv(&a.id)] {
                        if junction_violation(q, last, &cand, ls.len() - 1)?.is_none() {
                            let mut ext = ls.clone();
                            ext.push(cand);
                            seen.insert(StringWord::Word(ext.clone()).canonical());
                            next.push(ext);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
    }
    let mut out: Vec<StringWord> = seen.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_quiver;

    fn q(text: &str) -> BoundQuiver {
        parse_quiver(text).unwrap()
    }

    fn w(text: &str) -> StringWord {
        text.parse().unwrap()
    }

    #[test]
    fn kronecker_string() {
        let k = q("vertices: 1 2 ; arrows: a: 1 -> 2, b: 1 -> 2 ; relations:");
        assert!(is_string(&k, &w("a b^-1")).unwrap());
    }

    #[test]
    fn squared_loop_is_not_a_string() {
        let lq = q("vertices: 1 ; arrows: x: 1 -> 1 ; relations: x x");
        assert!(!is_string(&lq, &w("x x")).unwrap());
        assert_eq!(
            string_violation(&lq, &w("x x")).unwrap(),
            Some(StringViolation::ForbiddenPath { position: 0 })
        );
    }

    #[test]
    fn two_loop_band_word_is_a_string() {
        // Not gentle, but walk validity is defined for any monomial
        // length-two bound quiver.
        let tq = q("vertices: 1 ; arrows: x: 1 -> 1, y: 1 -> 1 ; relations: x x, y y, x y, y x");
        assert!(is_string(&tq, &w("x y^-1")).unwrap());
    }

    #[test]
    fn unknown_arrow_is_an_error() {
        let k = q("vertices: 1 2 ; arrows: a: 1 -> 2 ; relations:");
        assert!(matches!(
            is_string(&k, &w("z")),
            Err(Error::UnknownArrow(_))
        ));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(w("a b^-1").inverse(), w("b a^-1"));
        assert_eq!(w("e(v)").inverse(), w("e(v)"));
    }

    #[test]
    fn concat_examples() {
        let k = q("vertices: 1 2 ; arrows: a: 1 -> 2, b: 1 -> 2 ; relations:");
        assert_eq!(concat(&k, &w("a"), &w("b^-1")).unwrap(), w("a b^-1"));
        let lq = q("vertices: 1 ; arrows: x: 1 -> 1 ; relations: x x");
        assert!(matches!(
            concat(&lq, &w("x"), &w("x")),
            Err(Error::JunctionViolation(StringViolation::ForbiddenPath { .. }))
        ));
        assert!(matches!(
            concat(&k, &w("a"), &w("a")),
            Err(Error::NonComposable { .. })
        ));
    }

    #[test]
    fn factorizations_of_single_arrow() {
        let k = q("vertices: 1 2 ; arrows: a: 1 -> 2 ; relations:");
        let tops = factorizations(&w("a"), FactorKind::Top);
        assert_eq!(
            tops.iter().map(|f| (f.i, f.j)).collect::<Vec<_>>(),
            vec![(0, 0), (0, 1)]
        );
        let bottoms = factorizations(&w("a"), FactorKind::Bottom);
        assert_eq!(
            bottoms.iter().map(|f| (f.i, f.j)).collect::<Vec<_>>(),
            vec![(0, 1), (1, 1)]
        );
        // substring vertices for the trivial intervals
        assert_eq!(w("a").substring(&k, 0, 0).unwrap(), w("e(1)"));
        assert_eq!(w("a").substring(&k, 1, 1).unwrap(), w("e(2)"));
    }

    #[test]
    fn factorizations_of_trivial() {
        let tops = factorizations(&w("e(v)"), FactorKind::Top);
        let bottoms = factorizations(&w("e(v)"), FactorKind::Bottom);
        assert_eq!(tops.len(), 1);
        assert_eq!(bottoms.len(), 1);
        assert_eq!((tops[0].i, tops[0].j), (0, 0));
    }

    #[test]
    fn middle_omega_of_minimal_two_cycle_band_is_neither_top_nor_bottom() {
        // b = alpha beta gamma beta^-1; the middle omega = beta is the
        // interval [1, 2].
        let b = w("al be ga be^-1");
        assert!(!interval_is(&b, 1, 2, FactorKind::Top));
        assert!(!interval_is(&b, 1, 2, FactorKind::Bottom));
    }

    #[test]
    fn enumerate_a2() {
        let k = q("vertices: 1 2 ; arrows: a: 1 -> 2 ; relations:");
        let strings = enumerate_strings(&k, 2).unwrap();
        assert_eq!(strings, vec![w("e(1)"), w("e(2)"), w("a")]);
    }

    #[test]
    fn enumerate_squared_loop() {
        let lq = q("vertices: 1 ; arrows: x: 1 -> 1 ; relations: x x");
        let strings = enumerate_strings(&lq, 5).unwrap();
        assert_eq!(strings, vec![w("e(1)"), w("x")]);
    }

    #[test]
    fn enumerate_kronecker_matches_brute_force() {
        let k = q("vertices: 1 2 ; arrows: a: 1 -> 2, b: 1 -> 2 ; relations:");
        let strings = enumerate_strings(&k, 2).unwrap();
        // Independent oracle: all letter sequences of length <= 2, filtered
        // by is_string and canonicalized.
        let letters = [
            Letter::direct("a"),
            Letter::inv("a"),
            Letter::direct("b"),
            Letter::inv("b"),
        ];
        let mut oracle: BTreeSet<StringWord> = BTreeSet::new();
        oracle.insert(w("e(1)"));
        oracle.insert(w("e(2)"));
        for l in &letters {
            let word = StringWord::Word(vec![l.clone()]);
            if is_string(&k, &word).unwrap() {
                oracle.insert(word.canonical());
            }
        }
        for l1 in &letters {
            for l2 in &letters {
                let word = StringWord::Word(vec![l1.clone(), l2.clone()]);
                if is_string(&k, &word).unwrap() {
                    oracle.insert(word.canonical());
                }
            }
        }
        assert_eq!(strings.len(), 6);
        assert_eq!(
            strings.iter().cloned().collect::<BTreeSet<_>>(),
            oracle
        );
        assert!(strings.contains(&w("a b^-1")));
        assert!(strings.contains(&w("a^-1 b")));
    }

    #[test]
    fn display_round_trip() {
        for s in ["a b^-1 a", "e(v)", "x^-1"] {
            assert_eq!(w(s).to_string(), s);
        }
    }
}
