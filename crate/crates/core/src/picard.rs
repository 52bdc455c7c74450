//! Formal line-bundle classes on flag schemes as exponent vectors, their parity
//! reductions, and the case tables that depend on them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::diagram::{ShiftedDiagram, Step};
use crate::error::{Error, Result};
use crate::marked::{lf_a, lf_b};
use crate::scheme::FlagDescriptor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// Determinant of the tautological Lagrangian of the j-th chain step.
    Delta(usize),
    /// Determinant class of the i-th intermediate stratum.
    Nabla(usize),
    /// Determinant of the base flag step of the given rank.
    DetV(usize),
    /// The determinant class on the Lagrangian Grassmannian itself.
    AmbientDelta,
    /// Exceptional divisor of the first (1) or second (2) blow-up.
    BoundaryDiv(u8),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Delta(j) => write!(f, "Delta({j})"),
            Generator::Nabla(i) => write!(f, "Nabla({i})"),
            Generator::DetV(d) => write!(f, "DetV({d})"),
            Generator::AmbientDelta => write!(f, "AmbientDelta"),
            Generator::BoundaryDiv(i) => write!(f, "E{i}"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Unsupported(format!("unknown generator {s:?}"));
        let indexed = |prefix: &str| -> Option<usize> {
            s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?.parse().ok()
        };
        match s {
            "AmbientDelta" => Ok(Generator::AmbientDelta),
            "E1" => Ok(Generator::BoundaryDiv(1)),
            "E2" => Ok(Generator::BoundaryDiv(2)),
            _ => indexed("Delta")
                .map(Generator::Delta)
                .or_else(|| indexed("Nabla").map(Generator::Nabla))
                .or_else(|| indexed("DetV").map(Generator::DetV))
                .ok_or_else(bad),
        }
    }
}

/// Exponent ring for [`PicElement`].
pub trait Exponent:
    Clone + fmt::Debug + PartialEq + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self>
{
    fn constant(c: i64) -> Self;
    fn is_zero(&self) -> bool;
}

impl Exponent for i64 {
    fn constant(c: i64) -> Self {
        c
    }

    fn is_zero(&self) -> bool {
        *self == 0
    }
}

/// `coeff · ñ + constant`, for exponents stated as functions of the half rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Affine {
    pub coeff: i64,
    pub constant: i64,
}

impl Affine {
    pub const N: Affine = Affine {
        coeff: 1,
        constant: 0,
    };

    pub fn eval(self, n: i64) -> i64 {
        self.coeff * n + self.constant
    }
}

impl Exponent for Affine {
    fn constant(c: i64) -> Self {
        Affine {
            coeff: 0,
            constant: c,
        }
    }

    fn is_zero(&self) -> bool {
        self.coeff == 0 && self.constant == 0
    }
}

impl Add for Affine {
    type Output = Affine;
    fn add(self, o: Affine) -> Affine {
        Affine {
            coeff: self.coeff + o.coeff,
            constant: self.constant + o.constant,
        }
    }
}

impl Sub for Affine {
    type Output = Affine;
    fn sub(self, o: Affine) -> Affine {
        self + -o
    }
}

impl Neg for Affine {
    type Output = Affine;
    fn neg(self) -> Affine {
        Affine {
            coeff: -self.coeff,
            constant: -self.constant,
        }
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (self.coeff, self.constant);
        let lead = match a {
            0 => return write!(f, "{b}"),
            1 => "n".to_string(),
            -1 => "-n".to_string(),
            _ => format!("{a}n"),
        };
        match b.cmp(&0) {
            std::cmp::Ordering::Equal => write!(f, "{lead}"),
            std::cmp::Ordering::Greater => write!(f, "{lead}+{b}"),
            std::cmp::Ordering::Less => write!(f, "{lead}{b}"),
        }
    }
}

impl FromStr for Affine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Unsupported(format!("cannot parse affine exponent {s:?}"));
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(pos) = s.find(['n', 'N']) else {
            return Ok(Affine::constant(s.parse().map_err(|_| bad())?));
        };
        let coeff = match &s[..pos] {
            "" | "+" => 1,
            "-" => -1,
            c => c.parse().map_err(|_| bad())?,
        };
        let rest = &s[pos + 1..];
        let constant = if rest.is_empty() {
            0
        } else {
            rest.strip_prefix('+').unwrap_or(rest).parse().map_err(|_| bad())?
        };
        Ok(Affine { coeff, constant })
    }
}

impl Serialize for Affine {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Affine {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

/// A finitely supported exponent vector over [`Generator`]s. Zero entries are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct PicElement<T = i64> {
    exponents: BTreeMap<Generator, T>,
}

impl<T: Exponent> Default for PicElement<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Exponent> PicElement<T> {
    pub fn zero() -> Self {
        Self {
            exponents: BTreeMap::new(),
        }
    }

    pub fn generator(g: Generator) -> Self {
        Self::zero().with(g, T::constant(1))
    }

    pub fn with(mut self, g: Generator, x: T) -> Self {
        self.add_to(g, x);
        self
    }

    pub fn add_to(&mut self, g: Generator, x: T) {
        let next = match self.exponents.remove(&g) {
            Some(cur) => cur + x,
            None => x,
        };
        if !next.is_zero() {
            self.exponents.insert(g, next);
        }
    }

    pub fn get(&self, g: Generator) -> T {
        self.exponents.get(&g).cloned().unwrap_or_else(|| T::constant(0))
    }

    pub fn is_zero(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Generator, &T)> {
        self.exponents.iter()
    }

    pub fn scale(&self, c: i64) -> Self
    where
        T: Mul<i64, Output = T>,
    {
        let mut out = Self::zero();
        for (g, x) in &self.exponents {
            out.add_to(*g, x.clone() * c);
        }
        out
    }
}

impl Mul<i64> for Affine {
    type Output = Affine;
    fn mul(self, c: i64) -> Affine {
        Affine {
            coeff: self.coeff * c,
            constant: self.constant * c,
        }
    }
}

impl<T: Exponent> Add for PicElement<T> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (g, x) in o.exponents {
            self.add_to(g, x);
        }
        self
    }
}

impl<T: Exponent> Neg for PicElement<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            exponents: self.exponents.into_iter().map(|(g, x)| (g, -x)).collect(),
        }
    }
}

impl<T: Exponent> Sub for PicElement<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + -o
    }
}

impl<T: Exponent + fmt::Display> fmt::Display for PicElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "O");
        }
        let terms: Vec<_> = self.exponents.iter().map(|(g, x)| format!("{g}^{x}")).collect();
        write!(f, "{}", terms.join(" * "))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
struct PicRepr<T> {
    #[serde(rename = "Delta")]
    delta: BTreeMap<usize, T>,
    #[serde(rename = "Nabla")]
    nabla: BTreeMap<usize, T>,
    #[serde(rename = "DetV")]
    det_v: BTreeMap<usize, T>,
    #[serde(rename = "AmbientDelta")]
    ambient_delta: T,
    #[serde(rename = "E1")]
    e1: T,
    #[serde(rename = "E2")]
    e2: T,
}

impl<T: Exponent + Serialize> Serialize for PicElement<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut repr = PicRepr {
            delta: BTreeMap::new(),
            nabla: BTreeMap::new(),
            det_v: BTreeMap::new(),
            ambient_delta: self.get(Generator::AmbientDelta),
            e1: self.get(Generator::BoundaryDiv(1)),
            e2: self.get(Generator::BoundaryDiv(2)),
        };
        for (g, x) in &self.exponents {
            match *g {
                Generator::Delta(j) => {
                    repr.delta.insert(j, x.clone());
                }
                Generator::Nabla(i) => {
                    repr.nabla.insert(i, x.clone());
                }
                Generator::DetV(d) => {
                    repr.det_v.insert(d, x.clone());
                }
                _ => {}
            }
        }
        repr.serialize(s)
    }
}

impl<'de, T: Exponent + Deserialize<'de>> Deserialize<'de> for PicElement<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PicRepr::<T>::deserialize(d)?;
        let mut out = PicElement::zero();
        for (j, x) in repr.delta {
            out.add_to(Generator::Delta(j), x);
        }
        for (i, x) in repr.nabla {
            out.add_to(Generator::Nabla(i), x);
        }
        for (r, x) in repr.det_v {
            out.add_to(Generator::DetV(r), x);
        }
        out.add_to(Generator::AmbientDelta, repr.ambient_delta);
        out.add_to(Generator::BoundaryDiv(1), repr.e1);
        out.add_to(Generator::BoundaryDiv(2), repr.e2);
        Ok(out)
    }
}

/// Generators with odd exponent after deleting the base-trivial ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ParityClass {
    pub generators: BTreeSet<Generator>,
}

impl ParityClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn of(gens: impl IntoIterator<Item = Generator>) -> Self {
        Self {
            generators: gens.into_iter().collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names: Vec<_> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", names.join(" + "))
    }
}

impl Serialize for ParityClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.generators.iter().map(|g| g.to_string()))
    }
}

impl<'de> Deserialize<'de> for ParityClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let names = Vec::<String>::deserialize(d)?;
        let gens = names
            .iter()
            .map(|s| s.parse::<Generator>())
            .collect::<Result<BTreeSet<_>>>()
            .map_err(D::Error::custom)?;
        Ok(Self { generators: gens })
    }
}

/// Canonical sheaf with exponents in any [`Exponent`] ring, given the half rank in that ring.
pub fn canonical_sheaf_with<T: Exponent>(desc: &FlagDescriptor, half_rank: T) -> Result<PicElement<T>> {
    desc.require_gorenstein()?;
    let c = |x: usize| T::constant(x as i64);
    let n = half_rank;
    let k = desc.k();
    let (d, e, t) = (&desc.d, &desc.e, &desc.t);
    let mut out = PicElement::zero();
    let det_v = |out: &mut PicElement<T>, rank: usize, x: T| {
        // det V_0 is the trivial bundle
        if rank != 0 {
            out.add_to(Generator::DetV(rank), x);
        }
    };
    out.add_to(Generator::Delta(k), n.clone() - c(d[k]) + c(1));
    det_v(&mut out, d[k], c(d[k]) - n.clone() - c(1));
    for i in 0..k {
        out.add_to(Generator::Delta(i), c(t[i] + e[i] + 1) - c(d[i]));
        out.add_to(Generator::Delta(i + 1), c(t[i] + e[i]) - n.clone());
        out.add_to(Generator::Nabla(i), n.clone() + c(d[i]) - c(2 * e[i] + t[i] + 1));
        det_v(&mut out, d[i], -c(t[i]));
    }
    Ok(out)
}

pub fn canonical_sheaf(desc: &FlagDescriptor) -> Result<PicElement<i64>> {
    canonical_sheaf_with(desc, desc.half_rank as i64)
}

/// Canonical sheaf with exponents as functions of the half rank. The tuples are
/// validated at the least half rank they admit.
pub fn canonical_sheaf_symbolic(d: &[usize], e: &[usize], t: &[usize]) -> Result<PicElement<Affine>> {
    let least = d
        .iter()
        .copied()
        .chain(e.iter().zip(t).map(|(e, t)| e + t))
        .max()
        .unwrap_or(0);
    let desc = FlagDescriptor::new(least, d.to_vec(), e.to_vec(), t.to_vec());
    canonical_sheaf_with(&desc, Affine::N)
}

pub fn relative_canonical_over_lg(desc: &FlagDescriptor, original_n: usize) -> Result<PicElement<i64>> {
    if desc.half_rank != original_n + 1 {
        return Err(Error::Precondition(format!(
            "descriptor half rank {} is not the padded rank {} of frame {original_n}",
            desc.half_rank,
            original_n + 1
        )));
    }
    Ok(canonical_sheaf(desc)? - PicElement::zero().with(Generator::Delta(0), original_n as i64 + 1))
}

pub fn mod2_reduce(elt: &PicElement<i64>, desc: &FlagDescriptor) -> ParityClass {
    let n = desc.half_rank;
    let base_trivial = |g: &Generator| match *g {
        Generator::DetV(_) => true,
        Generator::Delta(j) => desc.d.get(j) == Some(&n),
        Generator::Nabla(i) => match (desc.e.get(i), desc.t.get(i)) {
            (Some(&e), Some(&t)) => e + t == n,
            _ => false,
        },
        _ => false,
    };
    ParityClass::of(
        elt.iter()
            .filter(|(g, x)| *x % 2 != 0 && !base_trivial(g))
            .map(|(g, _)| *g),
    )
}

/// The two pushforward maps into Grothendieck-Witt theory of the Grassmannian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    Xi0,
    Xi1,
}

impl Variant {
    /// Checks the frame-parity and row-type table; returns the padded scheme for `diagram`.
    pub fn scheme(self, diagram: &ShiftedDiagram) -> Result<FlagDescriptor> {
        let n = diagram.frame_size();
        let mismatch = |reason: &str| Error::VariantMismatch {
            map: format!("{self:?}").to_lowercase(),
            diagram: diagram.to_string(),
            reason: reason.to_string(),
        };
        let class = diagram.classify()?;
        if !class.is_almost_even {
            return Err(mismatch("diagram is not almost even"));
        }
        let l = diagram.boundary().len();
        let full_top = diagram.first_step() == Some(Step::Down);
        match (self, n % 2 == 0, full_top) {
            (Variant::Xi1, true, true) => lf_a(diagram, l),
            (Variant::Xi1, _, _) => Err(mismatch("xi1 needs an even frame and a full top row")),
            (Variant::Xi0, false, _) => lf_a(diagram, l),
            (Variant::Xi0, true, false) => lf_b(diagram, l),
            (Variant::Xi0, true, true) => {
                Err(mismatch("xi0 on an even frame needs an empty right column"))
            }
        }
    }

    /// Variant prescribed for an almost even diagram, or `None` if it carries no GW atom.
    pub fn for_diagram(diagram: &ShiftedDiagram, twist: Twist) -> Option<Variant> {
        let n = diagram.frame_size();
        if n == 0 || !diagram.is_almost_even() {
            return None;
        }
        let full_top = diagram.first_step() == Some(Step::Down);
        match (n % 2 == 0, twist, full_top) {
            (true, Twist::DeltaTwist, true) => Some(Variant::Xi1),
            (true, Twist::Trivial, false) => Some(Variant::Xi0),
            (false, Twist::Trivial, _) => Some(Variant::Xi0),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwistAlignment {
    pub ok: bool,
    /// Reduced class of the scheme's canonical sheaf.
    pub parity: ParityClass,
    pub required: ParityClass,
    /// Reduced class of the canonical sheaf relative to the Grassmannian.
    pub relative_parity: ParityClass,
    pub scheme: FlagDescriptor,
}

pub fn twist_alignment(diagram: &ShiftedDiagram, variant: Variant, n: usize) -> Result<TwistAlignment> {
    if diagram.frame_size() != n {
        return Err(Error::Precondition(format!(
            "diagram {diagram} does not live in frame {n}"
        )));
    }
    let scheme = variant.scheme(diagram)?;
    let parity = mod2_reduce(&canonical_sheaf(&scheme)?, &scheme);
    let relative_parity = mod2_reduce(&relative_canonical_over_lg(&scheme, n)?, &scheme);
    let required = match (variant, n % 2) {
        (Variant::Xi0, 0) => ParityClass::of([Generator::Delta(0)]),
        _ => ParityClass::zero(),
    };
    Ok(TwistAlignment {
        ok: parity == required,
        parity,
        required,
        relative_parity,
        scheme,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Twist {
    #[serde(rename = "O")]
    Trivial,
    #[serde(rename = "Delta")]
    DeltaTwist,
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Twist::Trivial => "O",
            Twist::DeltaTwist => "Delta",
        })
    }
}

impl FromStr for Twist {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "O" | "o" | "trivial" | "Trivial" => Ok(Twist::Trivial),
            "Delta" | "delta" | "D" | "DeltaTwist" => Ok(Twist::DeltaTwist),
            _ => Err(Error::Unsupported(format!("unknown twist {s:?}"))),
        }
    }
}

/// Pullback of the twisting bundle to the two-step blow-up.
pub fn blowup_pullback(twist: Twist) -> PicElement<i64> {
    match twist {
        Twist::Trivial => PicElement::zero(),
        Twist::DeltaTwist => PicElement::generator(Generator::AmbientDelta)
            .with(Generator::BoundaryDiv(1), 1)
            .with(Generator::BoundaryDiv(2), 1),
    }
}

pub fn lambda_pair(twist: Twist) -> (u8, u8) {
    let p = blowup_pullback(twist);
    let m = |x: i64| x.rem_euclid(2) as u8;
    (m(p.get(Generator::BoundaryDiv(1))), m(p.get(Generator::BoundaryDiv(2))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConnectingCase {
    SplitCaseI,
    EtaCaseII,
    EtaCaseIII,
    NeedsPadding,
}

impl fmt::Display for ConnectingCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn classify_connecting(c1: i64, c2: i64, lambda1: i64, lambda2: i64) -> Result<ConnectingCase> {
    if c1 < 2 || c2 < 2 {
        return Err(Error::Precondition(format!(
            "codimensions must be at least 2, got ({c1}, {c2})"
        )));
    }
    let same = |a: i64, b: i64| (a - b).rem_euclid(2) == 0;
    let first_shifted = same(lambda1, c1 - 1);
    let second_shifted = same(lambda2, c2 - 1);
    Ok(match (first_shifted, second_shifted) {
        (true, true) => ConnectingCase::SplitCaseI,
        (true, false) => ConnectingCase::EtaCaseII,
        (false, true) => ConnectingCase::EtaCaseIII,
        (false, false) => ConnectingCase::NeedsPadding,
    })
}

pub fn wedge_pushforward_rank(i: usize, k: usize, l: usize, n: usize) -> Result<u8> {
    if i > n || k > n || l > n {
        return Err(Error::Precondition(format!(
            "indices ({i}, {k}, {l}) must lie in 0..={n}"
        )));
    }
    Ok(u8::from(i == k && k == l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::enumerate_diagrams;

    fn fd(n: usize, d: &[usize], e: &[usize], t: &[usize]) -> FlagDescriptor {
        FlagDescriptor::new(n, d.to_vec(), e.to_vec(), t.to_vec())
    }

    fn aff(coeff: i64, constant: i64) -> Affine {
        Affine { coeff, constant }
    }

    #[test]
    fn canonical_examples_symbolic() {
        use Generator::*;
        let w = canonical_sheaf_symbolic(&[1, 2], &[0], &[1]).unwrap();
        assert_eq!(w.get(Delta(0)), aff(0, 1));
        assert_eq!(w.get(Nabla(0)), aff(1, -1));
        assert_eq!(w.get(DetV(2)), aff(-1, 1));
        assert_eq!(w.get(DetV(1)), aff(0, -1));
        assert_eq!(w.get(Delta(1)), aff(0, 0));

        let w = canonical_sheaf_symbolic(&[1, 3], &[0], &[2]).unwrap();
        assert_eq!(w.get(Delta(0)), aff(0, 2));
        assert_eq!(w.get(Nabla(0)), aff(1, -2));
        assert_eq!(w.get(DetV(3)), aff(-1, 2));
        assert_eq!(w.get(DetV(1)), aff(0, -2));

        let w = canonical_sheaf_symbolic(&[0, 2], &[0], &[2]).unwrap();
        assert_eq!(w.get(Delta(0)), aff(0, 3));
        assert_eq!(w.get(Delta(1)), aff(0, 1));
        assert_eq!(w.get(Nabla(0)), aff(1, -3));
        assert_eq!(w.get(DetV(2)), aff(-1, 1));
        assert_eq!(w.get(DetV(0)), aff(0, 0));
    }

    #[test]
    fn canonical_single_step() {
        for n in 1..8 {
            for d in 0..=n {
                let w = canonical_sheaf(&FlagDescriptor::grassmannian(n, d)).unwrap();
                assert_eq!(w.get(Generator::Delta(0)), (n - d + 1) as i64);
                let expect = if d == 0 { 0 } else { d as i64 - n as i64 - 1 };
                assert_eq!(w.get(Generator::DetV(d)), expect);
            }
        }
    }

    #[test]
    fn canonical_rejects_non_gorenstein() {
        assert!(canonical_sheaf(&fd(4, &[2, 3], &[0], &[1])).is_err());
    }

    #[test]
    fn relative_examples() {
        let vh: ShiftedDiagram = "VH".parse().unwrap();
        let r = relative_canonical_over_lg(&lf_a(&vh, 2).unwrap(), 2).unwrap();
        assert_eq!(r.get(Generator::Delta(0)), -1);
        let hh: ShiftedDiagram = "HH".parse().unwrap();
        let r = relative_canonical_over_lg(&lf_b(&hh, 2).unwrap(), 2).unwrap();
        assert_eq!(r.get(Generator::Delta(0)), -2);
        assert_eq!(r.get(Generator::Nabla(0)), 2);
        assert_eq!(r.get(Generator::Delta(1)), 0);
        assert!(relative_canonical_over_lg(&fd(2, &[0, 1], &[0], &[1]), 2).is_err());
    }

    #[test]
    fn reduction_examples() {
        use Generator::*;
        for n in 3..9usize {
            let desc = fd(n, &[1, 2], &[0], &[1]);
            let p = mod2_reduce(&canonical_sheaf(&desc).unwrap(), &desc);
            if n % 2 == 0 {
                assert_eq!(p, ParityClass::of([Delta(0), Nabla(0)]));
            } else {
                assert_eq!(p, ParityClass::of([Delta(0)]));
            }
        }
        let desc = fd(4, &[1, 4], &[0], &[2]);
        let even = PicElement::zero().with(Delta(0), 2).with(Nabla(0), -4);
        assert!(mod2_reduce(&even, &desc).is_zero());
        let forced = PicElement::generator(Delta(1));
        assert!(mod2_reduce(&forced, &desc).is_zero());
    }

    #[test]
    fn twist_alignment_examples() {
        let hh: ShiftedDiagram = "HH".parse().unwrap();
        let a = twist_alignment(&hh, Variant::Xi0, 2).unwrap();
        assert!(a.ok);
        assert_eq!(a.parity, ParityClass::of([Generator::Delta(0)]));
        assert_eq!(a.scheme, fd(3, &[1, 2], &[0], &[1]));

        let vh: ShiftedDiagram = "VH".parse().unwrap();
        let a = twist_alignment(&vh, Variant::Xi1, 2).unwrap();
        assert!(a.ok && a.parity.is_zero());

        let hhv: ShiftedDiagram = "HHV".parse().unwrap();
        let a = twist_alignment(&hhv, Variant::Xi0, 3).unwrap();
        assert!(a.ok && a.parity.is_zero());

        assert!(twist_alignment(&vh, Variant::Xi0, 2).is_err());
        assert!(twist_alignment(&hhv, Variant::Xi1, 3).is_err());
    }

    #[test]
    fn twist_alignment_holds_for_every_almost_even_diagram() {
        for n in 1..=8 {
            for diagram in enumerate_diagrams(n) {
                for twist in [Twist::Trivial, Twist::DeltaTwist] {
                    if let Some(v) = Variant::for_diagram(&diagram, twist) {
                        let a = twist_alignment(&diagram, v, n).unwrap();
                        assert!(a.ok, "{diagram} {v:?}: {} vs {}", a.parity, a.required);
                    }
                }
            }
        }
    }

    #[test]
    fn lambda_values() {
        assert_eq!(lambda_pair(Twist::DeltaTwist), (1, 1));
        assert_eq!(lambda_pair(Twist::Trivial), (0, 0));
        let p = blowup_pullback(Twist::DeltaTwist);
        assert_eq!(p.get(Generator::BoundaryDiv(1)), 1);
        assert_eq!(p.get(Generator::BoundaryDiv(2)), 1);
        assert_eq!(p.get(Generator::AmbientDelta), 1);
    }

    #[test]
    fn connecting_table() {
        use ConnectingCase::*;
        for n in 2..=10i64 {
            let case = |t| {
                let (a, b) = lambda_pair(t);
                classify_connecting(n, 2, a as i64, b as i64).unwrap()
            };
            if n % 2 == 0 {
                assert_eq!(case(Twist::DeltaTwist), SplitCaseI);
                assert_eq!(case(Twist::Trivial), NeedsPadding);
            } else {
                assert_eq!(case(Twist::Trivial), EtaCaseII);
                assert_eq!(case(Twist::DeltaTwist), EtaCaseIII);
            }
        }
        assert!(classify_connecting(1, 2, 0, 0).is_err());
    }

    #[test]
    fn wedge_ranks() {
        assert_eq!(wedge_pushforward_rank(2, 2, 2, 5).unwrap(), 1);
        assert_eq!(wedge_pushforward_rank(0, 0, 0, 3).unwrap(), 1);
        assert_eq!(wedge_pushforward_rank(1, 2, 1, 4).unwrap(), 0);
        assert!(wedge_pushforward_rank(5, 5, 5, 4).is_err());
    }

    #[test]
    fn affine_text_round_trip() {
        for a in [aff(1, -1), aff(-1, 2), aff(0, 3), aff(2, 0), aff(0, 0), aff(-3, -4)] {
            assert_eq!(a.to_string().parse::<Affine>().unwrap(), a, "{a}");
        }
        assert_eq!(aff(1, -1).to_string(), "n-1");
    }

    #[test]
    fn json_round_trip() {
        let w = canonical_sheaf(&fd(3, &[1, 2], &[0], &[1])).unwrap()
            + blowup_pullback(Twist::DeltaTwist);
        let j = serde_json::to_string(&w).unwrap();
        assert_eq!(
            j,
            r#"{"Delta":{"0":1},"Nabla":{"0":2},"DetV":{"1":-1,"2":-2},"AmbientDelta":1,"E1":1,"E2":1}"#
        );
        let back: PicElement = serde_json::from_str(&j).unwrap();
        assert_eq!(back, w);
        let p = ParityClass::of([Generator::Delta(0), Generator::Nabla(1)]);
        let back: ParityClass = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
    }
}
