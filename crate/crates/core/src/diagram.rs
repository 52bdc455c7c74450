//! Shifted Young diagrams in the shifted n-frame, stored as boundary lattice paths.
//!
//! A diagram is the sequence of `n` unit steps read from the top-right corner of
//! the frame toward the staircase diagonal. A `Down` step at position `i`
//! (1-indexed) contributes the part `n + 1 - i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Down,
    Left,
}

impl Step {
    pub fn as_char(self) -> char {
        match self {
            Step::Down => 'V',
            Step::Left => 'H',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'V' | 'v' => Ok(Step::Down),
            'H' | 'h' => Ok(Step::Left),
            other => Err(Error::InvalidStep(other)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShiftedDiagram {
    steps: Vec<Step>,
}

impl ShiftedDiagram {
    pub fn new(steps: Vec<Step>) -> Self {
        Self { steps }
    }

    pub fn empty() -> Self {
        Self { steps: Vec::new() }
    }

    pub fn frame_size(&self) -> usize {
        self.steps.len()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn first_step(&self) -> Option<Step> {
        self.steps.first().copied()
    }

    /// Parts in decreasing order.
    pub fn parts(&self) -> Vec<usize> {
        let n = self.frame_size();
        self.steps
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Step::Down)
            .map(|(i, _)| n - i)
            .collect()
    }

    pub fn weight(&self) -> usize {
        self.parts().iter().sum()
    }

    /// The n-tuple `(Λ_n, …, Λ_1)`: parts in decreasing order padded with zeros.
    pub fn to_tuple(&self) -> Vec<usize> {
        let mut t = self.parts();
        t.resize(self.frame_size(), 0);
        t
    }

    pub fn from_tuple(tuple: &[usize]) -> Result<Self> {
        let n = tuple.len();
        let bad = |reason: &str| Error::InvalidTuple {
            tuple: tuple.to_vec(),
            reason: reason.to_string(),
        };
        let mut steps = vec![Step::Left; n];
        let mut prev = usize::MAX;
        let mut seen_zero = false;
        for &x in tuple {
            if x == 0 {
                seen_zero = true;
                continue;
            }
            if seen_zero {
                return Err(bad("non-zero entry after a zero"));
            }
            if x > n {
                return Err(bad("entry exceeds the frame size"));
            }
            if x >= prev {
                return Err(bad("non-zero entries must strictly decrease"));
            }
            prev = x;
            steps[n - x] = Step::Down;
        }
        Ok(Self { steps })
    }

    pub fn row_type(&self) -> Option<RowType> {
        self.first_step().map(|s| match s {
            Step::Down => RowType::FullTopRow,
            Step::Left => RowType::EmptyRightColumn,
        })
    }

    pub fn boundary(&self) -> Boundary {
        let mut segments: Vec<Segment> = Vec::new();
        if self.first_step() == Some(Step::Left) {
            segments.push(Segment {
                orientation: Orientation::Vertical,
                length: 0,
            });
        }
        for &s in &self.steps {
            let o = match s {
                Step::Down => Orientation::Vertical,
                Step::Left => Orientation::Horizontal,
            };
            match segments.last_mut() {
                Some(last) if last.orientation == o => last.length += 1,
                _ => segments.push(Segment {
                    orientation: o,
                    length: 1,
                }),
            }
        }
        Boundary { segments }
    }

    pub fn classify(&self) -> Result<DiagramClass> {
        let n = self.frame_size();
        if n == 0 {
            return Err(Error::EmptyFrame);
        }
        let b = self.boundary();
        let l = b.len();
        let mut cum = 0;
        let mut index_w = l;
        for t in 1..=l {
            cum += b.segment(t).length;
            if cum != 0 && cum % 2 == n % 2 {
                index_w = t;
                break;
            }
        }
        Ok(DiagramClass {
            index_w,
            is_almost_even: index_w == l,
            is_k_even: index_w % 2 == 0,
            row_type: self.row_type().expect("n >= 1"),
        })
    }

    /// Membership in `A_n`; the empty frame counts as a member.
    pub fn is_almost_even(&self) -> bool {
        self.classify().map(|c| c.is_almost_even).unwrap_or(true)
    }

    /// Membership in `E_n`; the empty frame counts as a member.
    pub fn is_k_even(&self) -> bool {
        self.classify().map(|c| c.is_k_even).unwrap_or(true)
    }

    pub fn delete_top_row(&self) -> Result<Self> {
        self.tail_if(Step::Down, RowType::FullTopRow)
    }

    pub fn delete_right_column(&self) -> Result<Self> {
        self.tail_if(Step::Left, RowType::EmptyRightColumn)
    }

    fn tail_if(&self, step: Step, required: RowType) -> Result<Self> {
        match self.first_step() {
            Some(s) if s == step => Ok(Self {
                steps: self.steps[1..].to_vec(),
            }),
            None => Err(Error::EmptyFrame),
            Some(_) => Err(Error::RowTypeMismatch {
                diagram: self.to_string(),
                required,
            }),
        }
    }
}

impl fmt::Display for ShiftedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for ShiftedDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s.eq_ignore_ascii_case("empty") {
            return Ok(Self::empty());
        }
        let steps = s.chars().map(Step::from_char).collect::<Result<Vec<_>>>()?;
        Ok(Self { steps })
    }
}

#[derive(Serialize, Deserialize)]
struct DiagramRepr {
    n: usize,
    steps: String,
    parts: Vec<usize>,
    weight: usize,
}

impl Serialize for ShiftedDiagram {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramRepr {
            n: self.frame_size(),
            steps: self.to_string(),
            parts: self.parts(),
            weight: self.weight(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ShiftedDiagram {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = DiagramRepr::deserialize(deserializer)?;
        let d: ShiftedDiagram = repr.steps.parse().map_err(D::Error::custom)?;
        if d.frame_size() != repr.n || d.parts() != repr.parts || d.weight() != repr.weight {
            return Err(D::Error::custom(format!(
                "inconsistent diagram record for steps {:?}",
                repr.steps
            )));
        }
        Ok(d)
    }
}

/// All `2^n` diagrams of the n-frame, lexicographic in the steps with `Down < Left`.
pub fn enumerate_diagrams(n: usize) -> Vec<ShiftedDiagram> {
    assert!(n < usize::BITS as usize, "frame size {n} is too large");
    (0..1usize << n)
        .map(|m| ShiftedDiagram {
            steps: (0..n)
                .map(|i| {
                    if (m >> (n - 1 - i)) & 1 == 0 {
                        Step::Down
                    } else {
                        Step::Left
                    }
                })
                .collect(),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Vertical,
    Horizontal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub orientation: Orientation,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Boundary {
    pub segments: Vec<Segment>,
}

impl Boundary {
    /// Segment count `l`.
    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Segment `t`, 1-indexed.
    pub fn segment(&self, t: usize) -> Segment {
        self.segments[t - 1]
    }

    /// Lattice distance from the origin to the start of segment `t`.
    pub fn start_of(&self, t: usize) -> usize {
        self.segments[..t - 1].iter().map(|s| s.length).sum()
    }

    /// Largest even segment index not exceeding `l`.
    pub fn tau(&self) -> usize {
        2 * (self.len() / 2)
    }

    pub fn total_length(&self) -> usize {
        self.segments.iter().map(|s| s.length).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RowType {
    FullTopRow,
    EmptyRightColumn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiagramClass {
    pub index_w: usize,
    pub is_almost_even: bool,
    pub is_k_even: bool,
    pub row_type: RowType,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Every diagram of the frame.
    U,
    /// Almost even diagrams.
    A,
    /// K-even diagrams.
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Refinement {
    All,
    R,
    C,
    RR,
    RC,
    CR,
    CC,
}

impl Refinement {
    fn prefix(self) -> &'static [Step] {
        use Step::{Down, Left};
        match self {
            Refinement::All => &[],
            Refinement::R => &[Down],
            Refinement::C => &[Left],
            Refinement::RR => &[Down, Down],
            Refinement::RC => &[Down, Left],
            Refinement::CR => &[Left, Down],
            Refinement::CC => &[Left, Left],
        }
    }
}

/// Named diagram families of one frame, with first-step refinements.
#[derive(Debug, Clone)]
pub struct ClassSets {
    n: usize,
    all: Vec<ShiftedDiagram>,
}

impl ClassSets {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            all: enumerate_diagrams(n),
        }
    }

    pub fn frame_size(&self) -> usize {
        self.n
    }

    pub fn get(&self, family: Family, refinement: Refinement) -> Result<Vec<ShiftedDiagram>> {
        let prefix = refinement.prefix();
        if prefix.len() > self.n {
            return Err(Error::FrameTooSmall {
                n: self.n,
                min: prefix.len(),
            });
        }
        Ok(self
            .all
            .iter()
            .filter(|d| d.steps().starts_with(prefix))
            .filter(|d| match family {
                Family::U => true,
                Family::A => d.is_almost_even(),
                Family::E => d.is_k_even(),
            })
            .cloned()
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> ShiftedDiagram {
        s.parse().unwrap()
    }

    fn strs(v: &[ShiftedDiagram]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn enumerate_small_frames() {
        assert_eq!(strs(&enumerate_diagrams(0)), vec![""]);
        let two = enumerate_diagrams(2);
        assert_eq!(strs(&two), vec!["VV", "VH", "HV", "HH"]);
        let parts: Vec<_> = two.iter().map(|x| x.parts()).collect();
        assert_eq!(parts, vec![vec![2, 1], vec![2], vec![1], vec![]]);
    }

    #[test]
    fn weights() {
        assert_eq!(d("VV").weight(), 3);
        assert_eq!(d("HHHH").weight(), 0);
        for n in 0..10 {
            let full = ShiftedDiagram::new(vec![Step::Down; n]);
            assert_eq!(full.weight(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn boundaries() {
        let seg = |o, l| Segment {
            orientation: o,
            length: l,
        };
        use Orientation::*;
        assert_eq!(d("HH").boundary().segments, vec![seg(Vertical, 0), seg(Horizontal, 2)]);
        assert_eq!(d("VVH").boundary().segments, vec![seg(Vertical, 2), seg(Horizontal, 1)]);
        assert_eq!(d("V").boundary().segments, vec![seg(Vertical, 1)]);
    }

    #[test]
    fn classification_examples() {
        let c = d("VH").classify().unwrap();
        assert_eq!((c.index_w, c.is_almost_even, c.is_k_even), (2, true, true));
        assert_eq!(c.row_type, RowType::FullTopRow);
        let c = d("VHV").classify().unwrap();
        assert_eq!((c.index_w, c.is_almost_even, c.is_k_even), (1, false, false));
        let c = d("HHH").classify().unwrap();
        assert_eq!((c.index_w, c.is_almost_even, c.is_k_even), (2, true, true));
        assert_eq!(c.row_type, RowType::EmptyRightColumn);
        assert_eq!(ShiftedDiagram::empty().classify(), Err(Error::EmptyFrame));
    }

    #[test]
    fn deletions() {
        assert_eq!(d("VVH").delete_top_row().unwrap(), d("VH"));
        assert_eq!(d("HVV").delete_right_column().unwrap(), d("VV"));
        assert_eq!(d("V").delete_top_row().unwrap(), ShiftedDiagram::empty());
        assert!(matches!(
            d("HV").delete_top_row(),
            Err(Error::RowTypeMismatch {
                required: RowType::FullTopRow,
                ..
            })
        ));
        assert_eq!(d("VVH").to_tuple(), vec![3, 2, 0]);
        assert_eq!(d("VH").to_tuple(), vec![2, 0]);
    }

    #[test]
    fn class_set_examples() {
        let c2 = ClassSets::new(2);
        assert_eq!(strs(&c2.get(Family::A, Refinement::All).unwrap()).len(), 4);
        assert_eq!(strs(&c2.get(Family::E, Refinement::All).unwrap()), vec!["VH", "HH"]);
        assert_eq!(strs(&c2.get(Family::A, Refinement::C).unwrap()), vec!["HV", "HH"]);

        let c3 = ClassSets::new(3);
        assert_eq!(
            strs(&c3.get(Family::E, Refinement::All).unwrap()),
            vec!["VVH", "HVV", "HVH", "HHH"]
        );
        assert_eq!(strs(&c3.get(Family::E, Refinement::RR).unwrap()), vec!["VVH"]);
        assert_eq!(strs(&c3.get(Family::E, Refinement::CR).unwrap()), vec!["HVV", "HVH"]);
        assert_eq!(strs(&c3.get(Family::E, Refinement::CC).unwrap()), vec!["HHH"]);

        let c1 = ClassSets::new(1);
        assert_eq!(strs(&c1.get(Family::A, Refinement::All).unwrap()), vec!["V", "H"]);
        assert_eq!(strs(&c1.get(Family::E, Refinement::All).unwrap()), vec!["H"]);
        assert!(c1.get(Family::E, Refinement::CC).is_err());
    }

    #[test]
    fn tuple_rejects_malformed() {
        assert!(ShiftedDiagram::from_tuple(&[2, 2]).is_err());
        assert!(ShiftedDiagram::from_tuple(&[0, 1]).is_err());
        assert!(ShiftedDiagram::from_tuple(&[3, 0]).is_err());
        assert_eq!(ShiftedDiagram::from_tuple(&[2, 1]).unwrap(), d("VV"));
    }

    #[test]
    fn json_shape() {
        let j = serde_json::to_string(&d("VVH")).unwrap();
        assert_eq!(j, r#"{"n":3,"steps":"VVH","parts":[3,2],"weight":5}"#);
        let back: ShiftedDiagram = serde_json::from_str(&j).unwrap();
        assert_eq!(back, d("VVH"));
        assert!(serde_json::from_str::<ShiftedDiagram>(
            r#"{"n":3,"steps":"VVH","parts":[3],"weight":5}"#
        )
        .is_err());
    }
}
