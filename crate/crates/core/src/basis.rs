//! Additive basis decompositions of K-theory and Grothendieck-Witt theory of the
//! Lagrangian Grassmannian, at the level of atoms, shifts and twists.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{enumerate_diagrams, ShiftedDiagram};
use crate::error::{Error, Result};
use crate::picard::{twist_alignment, Generator, Twist, Variant};
use crate::registry::MapRegistry;
use crate::scheme::FlagDescriptor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapLabel {
    Phi,
    Xi0,
    Xi1,
    Mu0,
    Mu1,
}

impl MapLabel {
    pub const ALL: [MapLabel; 5] = [MapLabel::Phi, MapLabel::Xi0, MapLabel::Xi1, MapLabel::Mu0, MapLabel::Mu1];

    pub fn name(self) -> &'static str {
        match self {
            MapLabel::Phi => "phi",
            MapLabel::Xi0 => "xi0",
            MapLabel::Xi1 => "xi1",
            MapLabel::Mu0 => "mu0",
            MapLabel::Mu1 => "mu1",
        }
    }

    pub fn variant(self) -> Option<Variant> {
        match self {
            MapLabel::Xi0 => Some(Variant::Xi0),
            MapLabel::Xi1 => Some(Variant::Xi1),
            _ => None,
        }
    }
}

impl fmt::Display for MapLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theory {
    K,
    GW,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomKind {
    K,
    GW {
        shift: usize,
        base_twist: Option<Generator>,
    },
}

/// An atom with its base twist forgotten; the unit of recursion bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomKey {
    K,
    GW(usize),
}

impl AtomKey {
    fn shifted(self, by: usize) -> Self {
        match self {
            AtomKey::K => AtomKey::K,
            AtomKey::GW(s) => AtomKey::GW(s + by),
        }
    }
}

impl fmt::Display for AtomKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomKey::K => write!(f, "K"),
            AtomKey::GW(s) => write!(f, "GW{s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub kind: AtomKind,
    pub source_diagram: ShiftedDiagram,
    pub scheme: FlagDescriptor,
    pub map_label: MapLabel,
}

impl Summand {
    pub fn key(&self) -> AtomKey {
        match self.kind {
            AtomKind::K => AtomKey::K,
            AtomKind::GW { shift, .. } => AtomKey::GW(shift),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SummandRepr {
    kind: Theory,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    shift: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    base_twist: Option<String>,
    diagram: String,
    scheme: FlagDescriptor,
    map: MapLabel,
}

impl Serialize for Summand {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (kind, shift, base_twist) = match self.kind {
            AtomKind::K => (Theory::K, None, None),
            AtomKind::GW { shift, base_twist } => {
                (Theory::GW, Some(shift), base_twist.map(|g| g.to_string()))
            }
        };
        SummandRepr {
            kind,
            shift,
            base_twist,
            diagram: self.source_diagram.to_string(),
            scheme: self.scheme.clone(),
            map: self.map_label,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Summand {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = SummandRepr::deserialize(d)?;
        let kind = match r.kind {
            Theory::K => AtomKind::K,
            Theory::GW => AtomKind::GW {
                shift: r.shift.ok_or_else(|| D::Error::missing_field("shift"))?,
                base_twist: r
                    .base_twist
                    .map(|s| s.parse())
                    .transpose()
                    .map_err(D::Error::custom)?,
            },
        };
        Ok(Summand {
            kind,
            source_diagram: r.diagram.parse().map_err(D::Error::custom)?,
            scheme: r.scheme,
            map_label: r.map,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub n: usize,
    pub twist: Twist,
    pub theory: Theory,
    pub summands: Vec<Summand>,
}

impl Decomposition {
    pub fn multiset(&self) -> Multiset {
        Multiset::from_keys(self.summands.iter().map(Summand::key))
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }
}

/// Order-insensitive multiset of atoms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Multiset(BTreeMap<AtomKey, usize>);

impl Multiset {
    pub fn from_keys(keys: impl IntoIterator<Item = AtomKey>) -> Self {
        let mut m = Multiset::default();
        for k in keys {
            m.insert(k, 1);
        }
        m
    }

    pub fn insert(&mut self, key: AtomKey, count: usize) {
        if count > 0 {
            *self.0.entry(key).or_insert(0) += count;
        }
    }

    pub fn shifted(&self, by: usize) -> Self {
        let mut m = Multiset::default();
        for (k, c) in &self.0 {
            m.insert(k.shifted(by), *c);
        }
        m
    }

    pub fn union(mut self, other: &Multiset) -> Self {
        for (k, c) in &other.0 {
            self.insert(*k, *c);
        }
        self
    }

    pub fn count(&self, key: AtomKey) -> usize {
        self.0.get(&key).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    /// First atom, in key order, whose multiplicities differ.
    pub fn first_mismatch(&self, other: &Multiset) -> Option<(AtomKey, usize, usize)> {
        self.0
            .keys()
            .chain(other.0.keys())
            .copied()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .map(|k| (k, self.count(k), other.count(k)))
            .find(|(_, a, b)| a != b)
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<_> = self
            .0
            .iter()
            .map(|(k, c)| if *c == 1 { k.to_string() } else { format!("{c}x{k}") })
            .collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

pub fn k_basis(n: usize) -> Decomposition {
    k_basis_with(&MapRegistry::default(), n)
}

pub fn k_basis_with(maps: &MapRegistry, n: usize) -> Decomposition {
    let phi = maps.get(MapLabel::Phi).expect("phi registered");
    let summands = enumerate_diagrams(n)
        .into_iter()
        .map(|d| Summand {
            kind: AtomKind::K,
            scheme: phi.scheme(&d).expect("phi is total"),
            source_diagram: d,
            map_label: MapLabel::Phi,
        })
        .collect();
    Decomposition {
        n,
        twist: Twist::Trivial,
        theory: Theory::K,
        summands,
    }
}

/// Which atom, if any, a diagram contributes to the decomposition for `twist`.
pub fn atom_for(diagram: &ShiftedDiagram, twist: Twist) -> Option<(Theory, MapLabel)> {
    if let Some(v) = Variant::for_diagram(diagram, twist) {
        let label = match v {
            Variant::Xi0 => MapLabel::Xi0,
            Variant::Xi1 => MapLabel::Xi1,
        };
        return Some((Theory::GW, label));
    }
    if diagram.is_k_even() {
        let label = match twist {
            Twist::Trivial => MapLabel::Mu0,
            Twist::DeltaTwist => MapLabel::Mu1,
        };
        return Some((Theory::K, label));
    }
    None
}

pub fn gw_basis(n: usize, twist: Twist) -> Result<Decomposition> {
    gw_basis_with(&MapRegistry::default(), n, twist)
}

pub fn gw_basis_with(maps: &MapRegistry, n: usize, twist: Twist) -> Result<Decomposition> {
    if n == 0 {
        return Err(Error::FrameTooSmall { n, min: 1 });
    }
    let mut summands = Vec::new();
    for d in enumerate_diagrams(n) {
        let Some((theory, label)) = atom_for(&d, twist) else {
            continue;
        };
        let map = maps
            .get(label)
            .ok_or_else(|| Error::UnknownStrategy(label.name().to_string()))?;
        let scheme = map.scheme(&d)?;
        let kind = match theory {
            Theory::K => AtomKind::K,
            Theory::GW => AtomKind::GW {
                shift: d.weight(),
                base_twist: (n % 2 == 0 && twist == Twist::Trivial).then_some(Generator::DetV(1)),
            },
        };
        summands.push(Summand {
            kind,
            source_diagram: d,
            scheme,
            map_label: label,
        });
    }
    Ok(Decomposition {
        n,
        twist,
        theory: Theory::GW,
        summands,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionCheck {
    pub case: char,
    pub twist: Twist,
    pub identity: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    pub first_mismatch: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionReport {
    pub n: usize,
    pub checks: Vec<RecursionCheck>,
    /// Set when the identity leans on the frame-1 bases, which are definitions rather than theorems.
    pub uses_definitional_base: bool,
}

impl RecursionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub fn verify_recursions(n: usize) -> Result<RecursionReport> {
    if n < 2 {
        return Err(Error::FrameTooSmall { n, min: 2 });
    }
    let gw = |m: usize, t: Twist| gw_basis(m, t).map(|d| d.multiset());
    let mut checks = Vec::new();
    let mut push = |case: char, twist: Twist, identity: String, lhs: Multiset, rhs: Multiset| {
        let mismatch = lhs.first_mismatch(&rhs).map(|(k, a, b)| format!("{k}: lhs {a}, rhs {b}"));
        checks.push(RecursionCheck {
            case,
            twist,
            identity,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass: mismatch.is_none(),
            first_mismatch: mismatch,
        });
    };
    use Twist::{DeltaTwist as D, Trivial as O};
    if n % 2 == 0 {
        let rhs = gw(n - 1, O)?.shifted(n).union(&gw(n - 1, D)?);
        push('a', D, format!("GW({n},Delta) = GW({},O)[+{n}] + GW({},Delta)", n - 1, n - 1), gw(n, D)?, rhs);
        let rhs = gw(n - 1, D)?.shifted(n).union(&gw(n - 1, O)?);
        push('b', O, format!("GW({n},O) = GW({},Delta)[+{n}] + GW({},O)", n - 1, n - 1), gw(n, O)?, rhs);
    } else {
        let mut k = Multiset::default();
        k.insert(AtomKey::K, 1 << (n - 2));
        for (case, t) in [('c', O), ('d', D)] {
            let prev = gw(n - 2, t)?;
            let rhs = prev.shifted(2 * n - 1).union(&k).union(&prev);
            let identity = format!(
                "GW({n},{t}) = GW({m},{t})[+{s}] + {c}xK + GW({m},{t})",
                m = n - 2,
                s = 2 * n - 1,
                c = 1usize << (n - 2)
            );
            push(case, t, identity, gw(n, t)?, rhs);
        }
    }
    Ok(RecursionReport {
        n,
        checks,
        uses_definitional_base: n <= 3,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryFailure {
    pub diagram: String,
    pub map: MapLabel,
    pub twist: Twist,
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryReport {
    pub n: usize,
    pub summands_checked: usize,
    pub failures: Vec<GeometryFailure>,
}

impl GeometryReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn check_summand(n: usize, twist: Twist, s: &Summand) -> Vec<GeometryFailure> {
    let mut out = Vec::new();
    let mut fail = |check: &str, detail: String| {
        out.push(GeometryFailure {
            diagram: s.source_diagram.to_string(),
            map: s.map_label,
            twist,
            check: check.to_string(),
            detail,
        })
    };
    let errors = s.scheme.errors();
    if !errors.is_empty() {
        let msgs: Vec<_> = errors.iter().map(|v| v.to_string()).collect();
        fail("validate", msgs.join("; "));
        return out;
    }
    if !s.scheme.is_gorenstein().unwrap_or(false) {
        fail("gorenstein", s.scheme.to_string());
        return out;
    }
    let expected_defect = s.source_diagram.weight();
    let full = n * (n + 1) / 2;
    if matches!(s.map_label, MapLabel::Phi | MapLabel::Xi0 | MapLabel::Xi1) {
        match s.scheme.relative_dimension() {
            Ok(dim) if dim + expected_defect == full => {}
            Ok(dim) => fail(
                "dimension",
                format!("dim {dim}, expected {}", full - expected_defect),
            ),
            Err(e) => fail("dimension", e.to_string()),
        }
    }
    if let Some(v) = s.map_label.variant() {
        match twist_alignment(&s.source_diagram, v, n) {
            Ok(a) if a.ok => {}
            Ok(a) => fail("twist", format!("parity {}, required {}", a.parity, a.required)),
            Err(e) => fail("twist", e.to_string()),
        }
    }
    out
}

/// Checks every scheme attached to the K and GW bases of frame `n`.
pub fn verify_geometry(n: usize) -> Result<GeometryReport> {
    if n == 0 {
        return Err(Error::FrameTooSmall { n, min: 1 });
    }
    let mut jobs: Vec<(Twist, Summand)> = k_basis(n)
        .summands
        .into_iter()
        .map(|s| (Twist::Trivial, s))
        .collect();
    for twist in [Twist::Trivial, Twist::DeltaTwist] {
        jobs.extend(gw_basis(n, twist)?.summands.into_iter().map(|s| (twist, s)));
    }
    let failures: Vec<GeometryFailure> = jobs
        .par_iter()
        .map(|(twist, s)| check_summand(n, *twist, s))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(GeometryReport {
        n,
        summands_checked: jobs.len(),
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittTable {
    pub n: usize,
    pub twist: Twist,
    /// GW atom count by shift mod 4.
    pub degrees: BTreeMap<usize, usize>,
    pub k: usize,
}

pub fn witt_table(n: usize, twist: Twist) -> Result<WittTable> {
    let dec = gw_basis(n, twist)?;
    let mut degrees = BTreeMap::new();
    let mut k = 0;
    for s in &dec.summands {
        match s.kind {
            AtomKind::K => k += 1,
            AtomKind::GW { shift, .. } => *degrees.entry(shift % 4).or_insert(0) += 1,
        }
    }
    Ok(WittTable { n, twist, degrees, k })
}
