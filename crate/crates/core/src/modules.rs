//! String modules as explicit representations, Hom-space dimensions by a
//! combinatorial and a linear-algebra backend, and brick verification.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Fp, Scalar};
use crate::linalg::sparse_nullspace_dim;
use crate::quiver::BoundQuiver;
use crate::walks::{factorizations, is_string, FactorKind, Factorization, StringWord};

/// 0/1 matrix, rows indexed by target-vertex basis, columns by source-vertex
/// basis. The entries of a string-module representation are always 0 or 1,
/// independently of the working field.
pub type Mat01 = Vec<Vec<u8>>;

/// The representation M(w) of a string: one basis element per position of
/// the string, arrows acting along the letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringModuleRep {
    pub word: StringWord,
    /// Vertex of each basis position, length n + 1.
    pub positions: Vec<String>,
    pub dims: BTreeMap<String, usize>,
    /// Per-arrow action matrix (dim t(a) x dim s(a)).
    pub matrices: BTreeMap<String, Mat01>,
}

impl StringModuleRep {
    pub fn dim(&self, vertex: &str) -> usize {
        self.dims.get(vertex).copied().unwrap_or(0)
    }
}

/// Builds the string module of `w`, checking that every relation acts by
/// zero on it.
pub fn string_module(q: &BoundQuiver, w: &StringWord) -> Result<StringModuleRep> {
    if !is_string(q, w)? {
        return Err(Error::Precondition(format!("`{w}` is not a string")));
    }
    let positions = w.vertex_path(q)?;
    let mut dims: BTreeMap<String, usize> = BTreeMap::new();
    // index of each position within the coordinate space at its vertex
    let mut local_index = Vec::with_capacity(positions.len());
    for v in &positions {
        let d = dims.entry(v.clone()).or_insert(0);
        local_index.push(*d);
        *d += 1;
    }
    let mut matrices: BTreeMap<String, Mat01> = BTreeMap::new();
    for a in q.arrows() {
        let rows = dims.get(&a.tgt).copied().unwrap_or(0);
        let cols = dims.get(&a.src).copied().unwrap_or(0);
        matrices.insert(a.id.clone(), vec![vec![0u8; cols]; rows]);
    }
    for (i, l) in w.letters().iter().enumerate() {
        let m = matrices.get_mut(&l.arrow).expect("letters reference arrows");
        if l.inverse {
            // position i+1 at s(a) maps to position i at t(a)
            m[local_index[i]][local_index[i + 1]] = 1;
        } else {
            m[local_index[i + 1]][local_index[i]] = 1;
        }
    }
    let rep = StringModuleRep {
        word: w.clone(),
        positions,
        dims,
        matrices,
    };
    for (x, y) in q.relations() {
        if !relation_annihilates(q, &rep, x, y) {
            return Err(Error::Internal(format!(
                "relation {x} {y} does not annihilate M({w})"
            )));
        }
    }
    Ok(rep)
}

/// Whether matrix(y after x) = matrix(y) . matrix(x) is zero, i.e. the path
/// `x y` acts by zero. Composition is left to right: apply x, then y.
pub fn relation_annihilates(q: &BoundQuiver, rep: &StringModuleRep, x: &str, y: &str) -> bool {
    let ax = match q.arrow(x) {
        Some(a) => a,
        None => return true,
    };
    let mx = &rep.matrices[x];
    let my = &rep.matrices[y];
    let cols = rep.dim(&ax.src);
    let mid = rep.dim(&ax.tgt);
    let rows = my.len();
    for r in 0..rows {
        for c in 0..cols {
            let mut acc = 0u32;
            for k in 0..mid {
                acc += (my[r][k] * mx[k][c]) as u32;
            }
            if acc != 0 {
                return false;
            }
        }
    }
    true
}

/// How a top/bottom pair matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchedBy {
    Equal,
    Inverse,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchedPair {
    pub top: Factorization,
    pub bottom: Factorization,
    pub matched_by: MatchedBy,
}

/// Audit record of the combinatorial Hom computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomCertificate {
    pub pair_count: usize,
    pub pairs: Vec<MatchedPair>,
}

fn matched_by(sub_top: &StringWord, sub_bottom: &StringWord) -> Option<MatchedBy> {
    match (sub_top, sub_bottom) {
        (StringWord::Trivial(u), StringWord::Trivial(v)) => {
            // trivial substrings carry no orientation; they match by vertex
            (u == v).then_some(MatchedBy::Equal)
        }
        _ => {
            if sub_top == sub_bottom {
                Some(MatchedBy::Equal)
            } else if *sub_top == sub_bottom.inverse() {
                Some(MatchedBy::Inverse)
            } else {
                None
            }
        }
    }
}

/// Counts top-of-`c` / bottom-of-`d` substring pairs that agree up to
/// inversion, with the full pair list as a certificate.
pub fn hom_dim_combinatorial_certified(
    q: &BoundQuiver,
    c: &StringWord,
    d: &StringWord,
) -> Result<(usize, HomCertificate)> {
    let tops = factorizations(c, FactorKind::Top);
    let bottoms = factorizations(d, FactorKind::Bottom);
    let top_subs: Vec<StringWord> = tops
        .iter()
        .map(|f| c.substring(q, f.i, f.j))
        .collect::<Result<_>>()?;
    let bottom_subs: Vec<StringWord> = bottoms
        .iter()
        .map(|f| d.substring(q, f.i, f.j))
        .collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for (t, ts) in tops.iter().zip(&top_subs) {
        for (b, bs) in bottoms.iter().zip(&bottom_subs) {
            if let Some(m) = matched_by(ts, bs) {
                pairs.push(MatchedPair {
                    top: t.clone(),
                    bottom: b.clone(),
                    matched_by: m,
                });
            }
        }
    }
    let cert = HomCertificate {
        pair_count: pairs.len(),
        pairs,
    };
    Ok((cert.pair_count, cert))
}

/// The combinatorial Hom dimension, without materializing the certificate.
///
/// A non-trivial string never equals its own inverse, so "equal" and
/// "inverse" matches never double count; grouping by canonical form makes
/// the count a sum of products.
pub fn hom_dim_combinatorial(q: &BoundQuiver, c: &StringWord, d: &StringWord) -> Result<usize> {
    let mut tops: HashMap<StringWord, usize> = HashMap::new();
    for f in factorizations(c, FactorKind::Top) {
        *tops.entry(c.substring(q, f.i, f.j)?.canonical()).or_insert(0) += 1;
    }
    let mut count = 0;
    for f in factorizations(d, FactorKind::Bottom) {
        if let Some(n) = tops.get(&d.substring(q, f.i, f.j)?.canonical()) {
            count += n;
        }
    }
    Ok(count)
}

/// Hom dimension as the solution-space dimension of the intertwiner system
/// f_{t(a)} M_c(a) = M_d(a) f_{s(a)}, by exact nullspace over the field.
pub fn hom_dim_linear(
    q: &BoundQuiver,
    c: &StringWord,
    d: &StringWord,
    field: FieldSpec,
) -> Result<usize> {
    let rc = string_module(q, c)?;
    let rd = string_module(q, d)?;
    match field {
        FieldSpec::Rationals => {
            let one = BigRational::from_integer(BigInt::from(1));
            Ok(intertwiner_nullspace(q, &rc, &rd, &one))
        }
        FieldSpec::PrimeField(p) => {
            if !field.is_valid() {
                return Err(Error::Precondition(format!("{p} is not prime")));
            }
            let one = Fp::new(1, p);
            Ok(intertwiner_nullspace(q, &rc, &rd, &one))
        }
    }
}

fn intertwiner_nullspace<S: Scalar>(
    q: &BoundQuiver,
    rc: &StringModuleRep,
    rd: &StringModuleRep,
    one: &S,
) -> usize {
    // unknowns: entries of f_v (dim_d(v) x dim_c(v)) for every vertex
    let mut offsets: BTreeMap<&str, usize> = BTreeMap::new();
    let mut total = 0usize;
    for v in q.vertices() {
        offsets.insert(v.as_str(), total);
        total += rd.dim(v) * rc.dim(v);
    }
    let unknown = |offsets: &BTreeMap<&str, usize>, v: &str, row: usize, col: usize, ncols: usize| {
        offsets[v] + row * ncols + col
    };
    let minus_one = one.from_i64(-1);
    let mut rows: Vec<Vec<(usize, S)>> = Vec::new();
    for a in q.arrows() {
        let (s, t) = (a.src.as_str(), a.tgt.as_str());
        let (cs, ct) = (rc.dim(s), rc.dim(t));
        let (ds, dt) = (rd.dim(s), rd.dim(t));
        let mc = &rc.matrices[&a.id];
        let md = &rd.matrices[&a.id];
        // equation (r, b): sum_k f_t[r,k] mc[k,b] - sum_k md[r,k] f_s[k,b] = 0
        for r in 0..dt {
            for b in 0..cs {
                let mut row = Vec::new();
                for k in 0..ct {
                    if mc[k][b] != 0 {
                        row.push((unknown(&offsets, t, r, k, ct), one.clone()));
                    }
                }
                for k in 0..ds {
                    if md[r][k] != 0 {
                        row.push((unknown(&offsets, s, k, b, cs), minus_one.clone()));
                    }
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    sparse_nullspace_dim(rows, total)
}

/// A string module is a brick iff its endomorphism space is 1-dimensional;
/// combinatorially, the only top/bottom self-match is the string itself.
pub fn is_brick(q: &BoundQuiver, w: &StringWord) -> Result<bool> {
    Ok(hom_dim_combinatorial(q, w, w)? == 1)
}
