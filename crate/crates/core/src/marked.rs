//! Special marked points on horizontal boundary segments, the selections built
//! from them, and the flag descriptors they induce.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diagram::{Orientation, ShiftedDiagram};
use crate::error::{Error, Result};
use crate::scheme::FlagDescriptor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MarkedPoint {
    pub segment: usize,
    pub offset: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SelectionRule {
    #[serde(rename = "1")]
    AllPoints,
    #[serde(rename = "2")]
    EvenPoints,
    #[serde(rename = "3")]
    OddPlusFirst,
}

impl SelectionRule {
    /// Offsets selected on a segment of the given length.
    pub fn offsets(self, len: usize) -> Vec<usize> {
        match self {
            SelectionRule::AllPoints => (0..len).collect(),
            SelectionRule::EvenPoints => (0..len).step_by(2).collect(),
            SelectionRule::OddPlusFirst => {
                if len == 0 {
                    Vec::new()
                } else {
                    std::iter::once(0).chain((1..len).step_by(2)).collect()
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentSelection {
    pub segment: usize,
    pub rule: SelectionRule,
    pub offsets: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MarkedSelection {
    pub segments: Vec<SegmentSelection>,
}

impl MarkedSelection {
    /// Selected points, ordered by segment then offset.
    pub fn points(&self) -> Vec<MarkedPoint> {
        self.segments
            .iter()
            .flat_map(|s| {
                s.offsets.iter().map(move |&offset| MarkedPoint {
                    segment: s.segment,
                    offset,
                })
            })
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.iter().all(|s| s.offsets.is_empty())
    }
}

pub fn marked_points(
    diagram: &ShiftedDiagram,
    rules: &BTreeMap<usize, SelectionRule>,
) -> Result<MarkedSelection> {
    let b = diagram.boundary();
    let tau = b.tau();
    for &segment in rules.keys() {
        if segment == 0
            || segment > tau
            || b.segment(segment).orientation != Orientation::Horizontal
        {
            return Err(Error::RuleSegment { segment, tau });
        }
    }
    let mut segments = Vec::new();
    for t in (2..=tau).step_by(2) {
        let rule = *rules.get(&t).ok_or(Error::MissingRule(t))?;
        segments.push(SegmentSelection {
            segment: t,
            rule,
            offsets: rule.offsets(b.segment(t).length),
        });
    }
    Ok(MarkedSelection { segments })
}

fn uniform_rules(diagram: &ShiftedDiagram, rule: impl Fn(usize) -> SelectionRule) -> BTreeMap<usize, SelectionRule> {
    (2..=diagram.boundary().tau())
        .step_by(2)
        .map(|t| (t, rule(t)))
        .collect()
}

fn s_rule(w: usize) -> impl Fn(usize) -> SelectionRule {
    move |t| {
        if t <= w {
            SelectionRule::EvenPoints
        } else {
            SelectionRule::AllPoints
        }
    }
}

/// `S(w)`: even points on segments up to `w`, all points beyond.
pub fn selection_s(diagram: &ShiftedDiagram, w: usize) -> MarkedSelection {
    marked_points(diagram, &uniform_rules(diagram, s_rule(w))).expect("rules cover tau")
}

/// `S̃(w)`: as `S(w)` but with the second segment always of type 3.
pub fn selection_s_tilde(diagram: &ShiftedDiagram, w: usize) -> Result<MarkedSelection> {
    if diagram.boundary().tau() < 2 {
        return Err(Error::NoSecondSegment(diagram.to_string()));
    }
    let base = s_rule(w);
    let rules = uniform_rules(diagram, |t| {
        if t == 2 {
            SelectionRule::OddPlusFirst
        } else {
            base(t)
        }
    });
    marked_points(diagram, &rules)
}

/// Every horizontal segment of type 1.
pub fn selection_all(diagram: &ShiftedDiagram) -> MarkedSelection {
    marked_points(diagram, &uniform_rules(diagram, |_| SelectionRule::AllPoints))
        .expect("rules cover tau")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleData {
    pub d: Vec<usize>,
    pub e: Vec<usize>,
    pub t: Vec<usize>,
    pub appended_n: bool,
}

impl TupleData {
    pub fn k(&self) -> usize {
        self.e.len()
    }
}

pub fn tuples(diagram: &ShiftedDiagram, sel: &MarkedSelection) -> TupleData {
    let n = diagram.frame_size();
    let b = diagram.boundary();
    let l = b.len();
    let tau = b.tau();
    let len = |t: usize| b.segment(t).length;
    // horizontal length strictly between segments `from` and `to`
    let between = |from: usize, to: usize| -> usize {
        (from + 2..to).step_by(2).map(len).sum()
    };

    let pts = sel.points();
    let mut d: Vec<usize> = pts.iter().map(|p| b.start_of(p.segment) + p.offset).collect();
    let mut t: Vec<usize> = pts
        .windows(2)
        .map(|w| {
            let (p, q) = (w[0], w[1]);
            if p.segment == q.segment {
                q.offset - p.offset
            } else {
                len(p.segment) - p.offset + between(p.segment, q.segment) + q.offset
            }
        })
        .collect();
    let appended_n = l % 2 == 1;
    if appended_n {
        d.push(n);
        if let Some(last) = pts.last() {
            t.push(len(last.segment) - last.offset + between(last.segment, tau + 1));
        }
    }
    let e = d[..d.len().saturating_sub(1)].to_vec();
    TupleData { d, e, t, appended_n }
}

fn padded(diagram: &ShiftedDiagram, sel: &MarkedSelection, first_shift: i64) -> Result<FlagDescriptor> {
    let td = tuples(diagram, sel);
    let d = td.d.iter().map(|x| x + 1).collect();
    let mut e: Vec<i64> = td
        .e
        .iter()
        .zip(&td.t)
        .map(|(&e, &t)| e as i64 + 2 - t as i64)
        .collect();
    if first_shift != 0 {
        match e.first_mut() {
            Some(e0) => *e0 -= first_shift,
            None => {
                return Err(Error::Precondition(format!(
                    "type-1 descriptor of {diagram} needs at least one marked point"
                )))
            }
        }
    }
    FlagDescriptor::from_signed(diagram.frame_size() + 1, d, e, td.t)
}

/// Padded descriptor `(n+1; d+1, e+2-t, t)`.
pub fn lf_descriptor_type0(diagram: &ShiftedDiagram, sel: &MarkedSelection) -> Result<FlagDescriptor> {
    padded(diagram, sel, 0)
}

/// Like [`lf_descriptor_type0`] with the first entry of `e` lowered by one.
pub fn lf_descriptor_type1(diagram: &ShiftedDiagram, sel: &MarkedSelection) -> Result<FlagDescriptor> {
    padded(diagram, sel, 1)
}

pub fn lf_a(diagram: &ShiftedDiagram, w: usize) -> Result<FlagDescriptor> {
    lf_descriptor_type0(diagram, &selection_s(diagram, w))
}

pub fn lf_b(diagram: &ShiftedDiagram, w: usize) -> Result<FlagDescriptor> {
    lf_descriptor_type1(diagram, &selection_s_tilde(diagram, w)?)
}

/// Unpadded descriptor with every point selected; for the empty frame this is
/// the point `LF_0` at half rank 0.
pub fn lf_ktheory(diagram: &ShiftedDiagram) -> FlagDescriptor {
    let n = diagram.frame_size();
    if n == 0 {
        return FlagDescriptor::grassmannian(0, 0);
    }
    let td = tuples(diagram, &selection_all(diagram));
    FlagDescriptor::new(n, td.d, td.e, td.t)
}
