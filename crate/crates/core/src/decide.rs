//! Top-level decision pipeline: verdict, reductions, and the brick-family
//! generator for two-cycle witnesses.

use serde::{Deserialize, Serialize};

use crate::bands::{
    has_band, is_band, orient_cycle_direct, recognize_a_tilde, recognize_witness_class,
    reduce_band, ClassDescriptor, WitnessBand, WitnessForm,
};
use crate::error::{Error, Result};
use crate::modules::is_brick;
use crate::quiver::{validate_gentle, Arrow, BoundQuiver, GentleReport};
use crate::walks::{enumerate_strings, StringWord};

/// Serialized witness: the reduced band pieces, the traversed sub-quiver,
/// and the recognized quotient-algebra class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub form: u8,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub band: Option<StringWord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b1: Option<StringWord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub omega: Option<StringWord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b2: Option<StringWord>,
    pub support: BoundQuiver,
    pub class: ClassDescriptor,
}

impl Witness {
    pub fn from_parts(wb: &WitnessBand, class: &ClassDescriptor) -> Witness {
        match &wb.form {
            WitnessForm::Form1 { band } => Witness {
                form: 1,
                band: Some(band.clone()),
                b1: None,
                omega: None,
                b2: None,
                support: wb.support.clone(),
                class: class.clone(),
            },
            WitnessForm::Form2 { b1, omega, b2 } => Witness {
                form: 2,
                band: None,
                b1: Some(b1.clone()),
                omega: Some(omega.clone()),
                b2: Some(b2.clone()),
                support: wb.support.clone(),
                class: class.clone(),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Finite,
    Infinite,
}

/// One step of the reduction trail carried by decisions without an explicit
/// brick family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum ReductionStep {
    QuotientToSupport { quiver: BoundQuiver },
    IdempotentReduction { vertex: String, quiver: BoundQuiver },
    Recognized { class: ClassDescriptor },
}

/// The outcome of [`decide`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decision {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub brick_census: Option<Vec<StringWord>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub brick_family: Option<Vec<StringWord>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reduction_trail: Option<Vec<ReductionStep>>,
}

/// Bounds for [`decide_with`].
#[derive(Debug, Clone, Copy)]
pub struct DecideOptions {
    /// Number of brick powers emitted when a family applies.
    pub family_size: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { family_size: 3 }
    }
}

fn require_usable(q: &BoundQuiver) -> Result<GentleReport> {
    let report = validate_gentle(q);
    if !report.is_gentle {
        return Err(Error::NotGentle(report));
    }
    if !report.is_finite_dimensional {
        return Err(Error::InfiniteDimensional);
    }
    Ok(report)
}

/// Decides tau-tilting finiteness of the gentle algebra of `q`.
///
/// Refuses non-gentle or infinite-dimensional input. A band yields the
/// infinite verdict with a reduced witness; otherwise the complete brick
/// census is computed (string enumeration terminates at the hard bound
/// 2 |Q1|, since without a band any longer string repeats a letter and
/// would extract a band).
pub fn decide(q: &BoundQuiver) -> Result<Decision> {
    decide_with(q, DecideOptions::default())
}

pub fn decide_with(q: &BoundQuiver, opts: DecideOptions) -> Result<Decision> {
    require_usable(q)?;
    if has_band(q)? {
        let wb = reduce_band(q)?;
        let class = recognize_witness_class(q, &wb)?;
        let witness = Witness::from_parts(&wb, &class);
        let (brick_family, reduction_trail) = match &wb.form {
            WitnessForm::Form2 { omega, .. } if !omega.is_empty() => {
                (Some(crate::decide::brick_family(q, &wb, opts.family_size)?), None)
            }
            _ => (None, Some(reduction_trail(q, &wb)?)),
        };
        Ok(Decision {
            verdict: Verdict::Infinite,
            brick_census: None,
            witness: Some(witness),
            brick_family,
            reduction_trail,
        })
    } else {
        let bound = 2 * q.arrows().len();
        let mut census = Vec::new();
        for w in enumerate_strings(q, bound)? {
            if is_brick(q, &w)? {
                census.push(w);
            }
        }
        Ok(Decision {
            verdict: Verdict::Finite,
            brick_census: Some(census),
            witness: None,
            brick_family: None,
            reduction_trail: None,
        })
    }
}

/// Deletes the given vertices and arrows; killing a vertex kills its
/// incident arrows, and relations mentioning a killed arrow are dropped.
pub fn quotient_by_ideal(
    q: &BoundQuiver,
    kill_vertices: &[String],
    kill_arrows: &[String],
) -> Result<BoundQuiver> {
    for v in kill_vertices {
        if !q.has_vertex(v) {
            return Err(Error::UnknownVertex(v.clone()));
        }
    }
    for a in kill_arrows {
        q.require_arrow(a)?;
    }
    let dead_vertex = |v: &str| kill_vertices.iter().any(|x| x == v);
    let dead_arrow = |a: &Arrow| {
        kill_arrows.iter().any(|x| x == &a.id) || dead_vertex(&a.src) || dead_vertex(&a.tgt)
    };
    let vertices: Vec<String> = q
        .vertices()
        .iter()
        .filter(|v| !dead_vertex(v))
        .cloned()
        .collect();
    let arrows: Vec<Arrow> = q
        .arrows()
        .iter()
        .filter(|a| !dead_arrow(a))
        .cloned()
        .collect();
    let kept: std::collections::BTreeSet<&str> = arrows.iter().map(|a| a.id.as_str()).collect();
    let relations: Vec<(String, String)> = q
        .relations()
        .iter()
        .filter(|(x, y)| kept.contains(x.as_str()) && kept.contains(y.as_str()))
        .cloned()
        .collect();
    BoundQuiver::new(vertices, arrows, relations)
}

/// Outcome of an idempotent reduction; gentleness of the result is reported,
/// never assumed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedQuiver {
    pub quiver: BoundQuiver,
    pub report: GentleReport,
}

/// Removes the vertex `v`, replacing the ideal-avoiding paths through it by
/// shortcut arrows. Paths may pass through loops at `v`; each shortcut keeps
/// its first and last original arrow for the induced relations.
pub fn idempotent_reduction(q: &BoundQuiver, v: &str) -> Result<ReducedQuiver> {
    if !q.has_vertex(v) {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    let report = validate_gentle(q);
    if !report.is_gentle {
        return Err(Error::NotGentle(report));
    }

    let loops: Vec<&Arrow> = q.arrows().iter().filter(|a| a.src == v && a.tgt == v).collect();
    let ins: Vec<&Arrow> = q.arrows().iter().filter(|a| a.tgt == v && a.src != v).collect();
    let outs: Vec<&Arrow> = q.arrows().iter().filter(|a| a.src == v && a.tgt != v).collect();

    // ideal-avoiding words of loops at v; a repeated loop arrow would close a
    // relation-free cycle, which is infinite-dimensional
    let mut loop_words: Vec<Vec<&Arrow>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<&Arrow>> = vec![Vec::new()];
    while let Some(word) = frontier.pop() {
        for l in &loops {
            if let Some(last) = word.last() {
                if q.is_relation(&last.id, &l.id) {
                    continue;
                }
            }
            if word.iter().any(|u| u.id == l.id) {
                return Err(Error::InfiniteDimensional);
            }
            let mut ext = word.clone();
            ext.push(l);
            loop_words.push(ext.clone());
            frontier.push(ext);
        }
    }
    loop_words.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.iter().map(|x| &x.id).cmp(b.iter().map(|x| &x.id)))
    });

    let mut arrows: Vec<Arrow> = q
        .arrows()
        .iter()
        .filter(|a| a.src != v && a.tgt != v)
        .cloned()
        .collect();
    // (shortcut id, first arrow, last arrow)
    let mut shortcut_ends: Vec<(String, String, String)> = Vec::new();
    let taken: std::collections::BTreeSet<String> = q
        .vertices()
        .iter()
        .cloned()
        .chain(q.arrows().iter().map(|a| a.id.clone()))
        .collect();
    for a in &ins {
        for word in &loop_words {
            if let Some(first_loop) = word.first() {
                if q.is_relation(&a.id, &first_loop.id) {
                    continue;
                }
            }
            let last_of_prefix = word.last().map(|l| l.id.as_str()).unwrap_or(&a.id);
            for b in &outs {
                if q.is_relation(last_of_prefix, &b.id) {
                    continue;
                }
                let mut id = std::iter::once(a.id.as_str())
                    .chain(word.iter().map(|l| l.id.as_str()))
                    .chain(std::iter::once(b.id.as_str()))
                    .collect::<Vec<_>>()
                    .join("*");
                while taken.contains(&id) || arrows.iter().any(|x| x.id == id) {
                    id.push('\'');
                }
                arrows.push(Arrow {
                    id: id.clone(),
                    src: a.src.clone(),
                    tgt: b.tgt.clone(),
                });
                shortcut_ends.push((id, a.id.clone(), b.id.clone()));
            }
        }
    }

    let vertices: Vec<String> = q.vertices().iter().filter(|x| *x != v).cloned().collect();
    fn end_of<'a>(
        ends: &'a [(String, String, String)],
        id: &'a str,
        last: bool,
    ) -> &'a str {
        ends.iter()
            .find(|(s, _, _)| s == id)
            .map(|(_, f, l)| if last { l.as_str() } else { f.as_str() })
            .unwrap_or(id)
    }
    let first_of = |id: &str| end_of(&shortcut_ends, id, false).to_string();
    let last_of = |id: &str| end_of(&shortcut_ends, id, true).to_string();
    let mut relations = Vec::new();
    for x in &arrows {
        for y in &arrows {
            if x.tgt == y.src && q.is_relation(&last_of(&x.id), &first_of(&y.id)) {
                relations.push((x.id.clone(), y.id.clone()));
            }
        }
    }
    let quiver = BoundQuiver::new(vertices, arrows, relations)?;
    let report = validate_gentle(&quiver);
    Ok(ReducedQuiver { quiver, report })
}

/// The explicit family of bricks attached to a two-cycle witness with a
/// non-trivial joining path: powers of
/// (b1)^eps . omega . (b2)^eps . omega^-1, where eps is the direction of
/// the first letter of omega.
pub fn brick_family(q: &BoundQuiver, w: &WitnessBand, n: usize) -> Result<Vec<StringWord>> {
    let WitnessForm::Form2 { b1, omega, b2 } = &w.form else {
        return Err(Error::Precondition("brick families require a form-2 witness".into()));
    };
    if omega.is_empty() {
        return Err(Error::Precondition(
            "brick families require a non-trivial joining path".into(),
        ));
    }
    let left = orient_cycle_direct(q, b1)?;
    let right = orient_cycle_direct(q, b2)?;
    let eps_inverse = omega.letters()[0].inverse;
    let power = |cycle: &StringWord| if eps_inverse { cycle.inverse() } else { cycle.clone() };
    let mut base = power(&left).letters().to_vec();
    base.extend_from_slice(omega.letters());
    base.extend_from_slice(power(&right).letters());
    base.extend_from_slice(omega.inverse().letters());
    let base_word = StringWord::Word(base.clone());
    if !is_band(q, &base_word)? {
        return Err(Error::Internal(format!(
            "assembled brick generator `{base_word}` is not a band"
        )));
    }
    let mut out = Vec::with_capacity(n);
    let mut letters = Vec::new();
    for _ in 0..n {
        letters.extend_from_slice(&base);
        out.push(StringWord::Word(letters.clone()));
    }
    for w in &out {
        if !crate::walks::is_string(q, w)? {
            return Err(Error::Internal(format!("brick power `{w}` is not a string")));
        }
    }
    Ok(out)
}

/// Reduction trail for witnesses without an explicit brick family: quotient
/// to the support, then (for the ω-trivial two-cycle case) an idempotent
/// reduction at the common vertex, ending in an A-tilde recognizer.
pub fn reduction_trail(q: &BoundQuiver, wb: &WitnessBand) -> Result<Vec<ReductionStep>> {
    match &wb.form {
        WitnessForm::Form1 { .. } => {
            let m = recognize_a_tilde(&wb.support)
                .ok_or_else(|| Error::Internal("form-1 support is not A-tilde".into()))?;
            Ok(vec![
                ReductionStep::QuotientToSupport {
                    quiver: wb.support.clone(),
                },
                ReductionStep::Recognized {
                    class: ClassDescriptor::ATilde { m },
                },
            ])
        }
        WitnessForm::Form2 { b1, omega, .. } => {
            if !omega.is_empty() {
                return Err(Error::Precondition(
                    "witness carries a brick family, not a trail".into(),
                ));
            }
            let common = b1.source(q)?.to_string();
            let reduced = idempotent_reduction(&wb.support, &common)?;
            let m = recognize_a_tilde(&reduced.quiver).ok_or_else(|| {
                Error::Internal("idempotent reduction did not land in A-tilde".into())
            })?;
            Ok(vec![
                ReductionStep::QuotientToSupport {
                    quiver: wb.support.clone(),
                },
                ReductionStep::IdempotentReduction {
                    vertex: common,
                    quiver: reduced.quiver,
                },
                ReductionStep::Recognized {
                    class: ClassDescriptor::ATilde { m },
                },
            ])
        }
    }
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
    fn decide_a2_finite_with_three_bricks() {
        let d = decide(&q("vertices: 1 2 ; arrows: a: 1 -> 2 ; relations:")).unwrap();
        assert_eq!(d.verdict, Verdict::Finite);
        assert_eq!(
            d.brick_census.unwrap(),
            vec![w("e(1)"), w("e(2)"), w("a")]
        );
    }

    #[test]
    fn decide_kronecker_infinite_form1() {
        let d = decide(&q("vertices: 1 2 ; arrows: a: 1 -> 2, b: 1 -> 2 ; relations:")).unwrap();
        assert_eq!(d.verdict, Verdict::Infinite);
        let witness = d.witness.unwrap();
        assert_eq!(witness.form, 1);
        assert_eq!(witness.class, ClassDescriptor::ATilde { m: 1 });
        assert!(d.brick_family.is_none());
        assert!(d.reduction_trail.is_some());
    }

    #[test]
    fn decide_refuses_non_gentle() {
        let err = decide(&q(
            "vertices: 1 ; arrows: x: 1 -> 1, y: 1 -> 1 ; relations: x x, y y, x y, y x"
        ))
        .unwrap_err();
        assert!(matches!(err, Error::NotGentle(_)));
    }

    #[test]
    fn decide_refuses_infinite_dimensional() {
        let err = decide(&q("vertices: 1 ; arrows: x: 1 -> 1 ; relations:")).unwrap_err();
        assert!(matches!(err, Error::InfiniteDimensional));
    }

    #[test]
    fn quotient_identity() {
        let qq = q("vertices: 1 2 ; arrows: a: 1 -> 2, b: 2 -> 2 ; relations: a b");
        assert_eq!(quotient_by_ideal(&qq, &[], &[]).unwrap(), qq);
    }

    #[test]
    fn quotient_kills_incident_arrows() {
        let qq = q("vertices: 1 2 ; arrows: a: 1 -> 2, b: 2 -> 2 ; relations: a b");
        let reduced = quotient_by_ideal(&qq, &["2".into()], &[]).unwrap();
        assert_eq!(reduced.vertices(), ["1"]);
        assert!(reduced.arrows().is_empty());
        assert!(reduced.relations().is_empty());
    }

    #[test]
    fn idempotent_reduction_of_a3() {
        let a3 = q("vertices: 1 2 3 ; arrows: a: 1 -> 2, b: 2 -> 3 ; relations:");
        let r = idempotent_reduction(&a3, "2").unwrap();
        assert_eq!(r.quiver.vertices(), ["1", "3"]);
        assert_eq!(r.quiver.arrows().len(), 1);
        assert_eq!(r.quiver.arrows()[0].id, "a*b");
        assert_eq!(r.quiver.arrows()[0].src, "1");
        assert_eq!(r.quiver.arrows()[0].tgt, "3");
        assert!(r.report.is_gentle);
    }

    #[test]
    fn idempotent_reduction_of_bound_a3_has_no_arrows() {
        let a3 = q("vertices: 1 2 3 ; arrows: a: 1 -> 2, b: 2 -> 3 ; relations: a b");
        let r = idempotent_reduction(&a3, "2").unwrap();
        assert_eq!(r.quiver.vertices(), ["1", "3"]);
        assert!(r.quiver.arrows().is_empty());
    }

    #[test]
    fn s_zero_two_cycle_reduces_to_a_tilde() {
        // r = 2 oriented left cycle at u, t = 3 non-oriented right cycle,
        // relations at the two junctions.
        let qq = q("vertices: u w z1 z2 ; arrows: a1: u -> w, a2: w -> u, g1: u -> z1, g2: z2 -> z1, g3: z2 -> u ; relations: a2 a1, g3 g1");
        let r = idempotent_reduction(&qq, "u").unwrap();
        assert!(r.report.is_gentle);
        assert_eq!(recognize_a_tilde(&r.quiver), Some(2));
    }

    #[test]
    fn s_zero_with_loop_junction_reduces_through_the_loop() {
        // r = 1: the left cycle is a loop at u whose square vanishes.
        let qq = q("vertices: u z1 z2 ; arrows: al: u -> u, g1: u -> z1, g2: z2 -> z1, g3: z2 -> u ; relations: al al, g3 g1");
        let r = idempotent_reduction(&qq, "u").unwrap();
        assert!(r.report.is_gentle);
        assert_eq!(recognize_a_tilde(&r.quiver), Some(1));
    }

    #[test]
    fn decide_minimal_two_cycle_emits_brick_family() {
        let qq = q("vertices: 1 2 ; arrows: al: 1 -> 1, be: 1 -> 2, ga: 2 -> 2 ; relations: al al, ga ga");
        let d = decide(&qq).unwrap();
        assert_eq!(d.verdict, Verdict::Infinite);
        let family = d.brick_family.unwrap();
        assert_eq!(family[0], w("al be ga be^-1"));
        for b in &family {
            assert!(is_brick(&qq, b).unwrap());
        }
        assert!(d.reduction_trail.is_none());
    }

    #[test]
    fn brick_family_sizes_and_lengths() {
        let qq = q("vertices: 1 2 ; arrows: al: 1 -> 1, be: 1 -> 2, ga: 2 -> 2 ; relations: al al, ga ga");
        let wb = reduce_band(&qq).unwrap();
        let family = brick_family(&qq, &wb, 4).unwrap();
        assert_eq!(family.len(), 4);
        for (k, b) in family.iter().enumerate() {
            assert_eq!(b.len(), 4 * (k + 1));
        }
    }

    #[test]
    fn brick_family_with_reversed_joining_path() {
        // be reversed: 2 -> 1, so the first letter of omega is inverse and
        // the cycle powers flip.
        let qq = q("vertices: 1 2 ; arrows: al: 1 -> 1, be: 2 -> 1, ga: 2 -> 2 ; relations: al al, ga ga");
        let d = decide(&qq).unwrap();
        assert_eq!(d.verdict, Verdict::Infinite);
        let family = d.brick_family.unwrap();
        for b in &family {
            assert!(is_brick(&qq, b).unwrap(), "{b} should be a brick");
        }
    }

    #[test]
    fn decision_json_round_trip() {
        let qq = q("vertices: 1 2 ; arrows: al: 1 -> 1, be: 1 -> 2, ga: 2 -> 2 ; relations: al al, ga ga");
        let d = decide(&qq).unwrap();
        let json = serde_json::to_string(&d).unwrap();
        let back: Decision = serde_json::from_str(&json).unwrap();
        assert_eq!(d, back);
    }
}
