//! Named strategies: the basis maps that attach a scheme to each diagram, and the
//! verification suites run by `lagflag verify`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::basis::{k_basis, verify_geometry, verify_recursions, MapLabel};
use crate::diagram::{enumerate_diagrams, ClassSets, Family, Refinement, ShiftedDiagram, Step};
use crate::error::{Error, Result};
use crate::marked::{lf_a, lf_b, lf_ktheory, selection_s, selection_s_tilde, tuples};
use crate::picard::{classify_connecting, lambda_pair, twist_alignment, ConnectingCase, Twist, Variant};
use crate::scheme::FlagDescriptor;

/// Attaches a flag scheme to a diagram.
pub trait BasisMap: Send + Sync {
    fn label(&self) -> MapLabel;
    fn scheme(&self, diagram: &ShiftedDiagram) -> Result<FlagDescriptor>;
}

struct Phi;

impl BasisMap for Phi {
    fn label(&self) -> MapLabel {
        MapLabel::Phi
    }

    fn scheme(&self, diagram: &ShiftedDiagram) -> Result<FlagDescriptor> {
        Ok(lf_ktheory(diagram))
    }
}

struct Xi(Variant);

impl BasisMap for Xi {
    fn label(&self) -> MapLabel {
        match self.0 {
            Variant::Xi0 => MapLabel::Xi0,
            Variant::Xi1 => MapLabel::Xi1,
        }
    }

    fn scheme(&self, diagram: &ShiftedDiagram) -> Result<FlagDescriptor> {
        self.0.scheme(diagram)
    }
}

/// K-atom maps; `lf_b` is used only for the trivial twist on even frames with an empty right column.
struct Mu(Twist);

impl BasisMap for Mu {
    fn label(&self) -> MapLabel {
        match self.0 {
            Twist::Trivial => MapLabel::Mu0,
            Twist::DeltaTwist => MapLabel::Mu1,
        }
    }

    fn scheme(&self, diagram: &ShiftedDiagram) -> Result<FlagDescriptor> {
        let class = diagram.classify()?;
        if !class.is_k_even {
            return Err(Error::VariantMismatch {
                map: self.label().name().to_string(),
                diagram: diagram.to_string(),
                reason: "diagram is not K-even".to_string(),
            });
        }
        let w = class.index_w;
        let even_frame = diagram.frame_size() % 2 == 0;
        if self.0 == Twist::Trivial && even_frame && diagram.first_step() == Some(Step::Left) {
            lf_b(diagram, w)
        } else {
            lf_a(diagram, w)
        }
    }
}

pub struct MapRegistry {
    maps: BTreeMap<MapLabel, Box<dyn BasisMap>>,
}

impl MapRegistry {
    pub fn empty() -> Self {
        Self {
            maps: BTreeMap::new(),
        }
    }

    /// Registers a map under its label, replacing any previous one.
    pub fn register(&mut self, map: Box<dyn BasisMap>) {
        self.maps.insert(map.label(), map);
    }

    pub fn get(&self, label: MapLabel) -> Option<&dyn BasisMap> {
        self.maps.get(&label).map(|m| m.as_ref())
    }

    pub fn by_name(&self, name: &str) -> Result<&dyn BasisMap> {
        MapLabel::ALL
            .into_iter()
            .find(|l| l.name() == name)
            .and_then(|l| self.get(l))
            .ok_or_else(|| Error::UnknownStrategy(name.to_string()))
    }

    pub fn labels(&self) -> Vec<MapLabel> {
        self.maps.keys().copied().collect()
    }
}

impl Default for MapRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Phi));
        r.register(Box::new(Xi(Variant::Xi0)));
        r.register(Box::new(Xi(Variant::Xi1)));
        r.register(Box::new(Mu(Twist::Trivial)));
        r.register(Box::new(Mu(Twist::DeltaTwist)));
        r
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub max_n: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Collects check results for one suite.
#[derive(Default)]
pub struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn fail(&mut self, what: String) {
        self.checks += 1;
        self.failures.push(what);
    }
}

/// A named invariant suite, parameterised by the largest frame it visits.
pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn run(&self, max_n: usize, tally: &mut Tally);
}

pub struct SuiteRegistry {
    suites: Vec<Box<dyn Suite>>,
}

impl SuiteRegistry {
    pub fn empty() -> Self {
        Self { suites: Vec::new() }
    }

    pub fn register(&mut self, suite: Box<dyn Suite>) {
        self.suites.retain(|s| s.name() != suite.name());
        self.suites.push(suite);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn Suite> {
        self.suites
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
            .ok_or_else(|| Error::UnknownStrategy(name.to_string()))
    }

    /// Runs every suite concurrently; outcomes come back in registration order.
    pub fn run_all(&self, max_n: usize) -> Vec<SuiteOutcome> {
        self.suites.par_iter().map(|s| run_suite(s.as_ref(), max_n)).collect()
    }
}

pub fn run_suite(suite: &dyn Suite, max_n: usize) -> SuiteOutcome {
    let mut tally = Tally::default();
    suite.run(max_n, &mut tally);
    SuiteOutcome {
        name: suite.name().to_string(),
        max_n,
        checks: tally.checks,
        failures: tally.failures,
    }
}

impl Default for SuiteRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Counting));
        r.register(Box::new(BoundaryShape));
        r.register(Box::new(Bijections));
        r.register(Box::new(RoundTrip));
        r.register(Box::new(TupleShape));
        r.register(Box::new(Dimension));
        r.register(Box::new(TwistAlignmentSuite));
        r.register(Box::new(Connecting));
        r.register(Box::new(Recursions));
        r.register(Box::new(Geometry));
        r
    }
}

/// Coefficients of `prod_{i=1..n} (1 + q^i)`.
pub fn strict_partition_polynomial(n: usize) -> Vec<u64> {
    let mut p = vec![1u64];
    for i in 1..=n {
        let mut next = vec![0u64; p.len() + i];
        for (j, c) in p.iter().enumerate() {
            next[j] += c;
            next[j + i] += c;
        }
        p = next;
    }
    p
}

pub fn weight_polynomial(n: usize) -> Vec<u64> {
    let mut p = vec![0u64; n * (n + 1) / 2 + 1];
    for d in enumerate_diagrams(n) {
        p[d.weight()] += 1;
    }
    p
}

struct Counting;

impl Suite for Counting {
    fn name(&self) -> &'static str {
        "counting"
    }

    fn description(&self) -> &'static str {
        "diagram count 2^n and weight generating function"
    }

    fn run(&self, max_n: usize, t: &mut Tally) {
        for n in 0..=max_n {
            let all = enumerate_diagrams(n);
            t.check(all.len() == 1 << n, || format!("n={n}: {} diagrams", all.len()));
            let distinct: std::collections::BTreeSet<_> = all.iter().collect();
            t.check(distinct.len() == all.len(), || format!("n={n}: duplicate diagrams"));
            t.check(all.windows(2).all(|w| w[0] < w[1]), || {
                format!("n={n}: enumeration is not lexicographic")
            });
            t.check(weight_polynomial(n) == strict_partition_polynomial(n), || {
                format!("n={n}: weight generating function differs")
            });
        }
    }
}

struct BoundaryShape;

impl Suite for BoundaryShape {
    fn name(&self) -> &'static str {
        "boundary"
    }

    fn description(&self) -> &'static str {
        "segment lengths, orientations and classification flags"
    }

    fn run(&self, max_n: usize, t: &mut Tally) {
        use crate::diagram::Orientation;
        for n in 1..=max_n {
            for d in enumerate_diagrams(n) {
                let b = d.boundary();
                t.check(b.total_length() == n, || format!("{d}: lengths sum to {}", b.total_length()));
                let alternates = b.segments.iter().enumerate().all(|(i, s)| {
                    (s.orientation == Orientation::Vertical) == (i % 2 == 0)
                        && (i == 0 || s.length >= 1)
                });
                t.check(alternates, || format!("{d}: segment orientation or length"));
                let c = d.classify().expect("n >= 1");
                t.check(c.is_almost_even == (c.index_w == b.len()), || format!("{d}: almost even flag"));
                t.check(c.is_k_even == (c.index_w % 2 == 0), || format!("{d}: K-even flag"));
                let full_top = d.first_step() == Some(Step::Down);
                t.check(full_top == (d.to_tuple()[0] == n) && full_top == (b.segment(1).length > 0), || {
                    format!("{d}: row type")
                });
            }
        }
    }
}

struct Bijections;

fn check_bijection(
    t: &mut Tally,
    what: &str,
    source: &[ShiftedDiagram],
    target: &[ShiftedDiagram],
    f: impl Fn(&ShiftedDiagram) -> Result<ShiftedDiagram>,
) {
    let mut image = Vec::new();
    for d in source {
        match f(d) {
            Ok(x) => image.push(x),
            Err(e) => return t.fail(format!("{what}: {d}: {e}")),
        }
    }
    image.sort();
    let before = image.len();
    image.dedup();
    t.check(image.len() == before, || format!("{what}: not injective"));
    let mut target = target.to_vec();
    target.sort();
    t.check(image == target, || format!("{what}: image differs from target"));
}

impl Suite for Bijections {
    fn name(&self) -> &'static str {
        "bijections"
    }

    fn description(&self) -> &'static str {
        "row and column deletions on class refinements"
    }

    fn run(&self, max_n: usize, t: &mut Tally) {
        use Family::{A, E, U};
        use Refinement::*;
        let top = |d: &ShiftedDiagram| d.delete_top_row();
        let right = |d: &ShiftedDiagram| d.delete_right_column();
        for n in 1..=max_n {
            let sets = ClassSets::new(n);
            let prev = ClassSets::new(n - 1);
            let get = |s: &ClassSets, f, r| s.get(f, r).expect("refinement fits");
            check_bijection(t, &format!("n={n} top row U^r"), &get(&sets, U, R), &get(&prev, U, All), top);
            check_bijection(t, &format!("n={n} right column U^c"), &get(&sets, U, C), &get(&prev, U, All), right);
            for d in get(&sets, U, All) {
                let ok = match d.first_step() {
                    Some(Step::Down) => d.weight() == d.delete_top_row().unwrap().weight() + n,
                    _ => d.weight() == d.delete_right_column().unwrap().weight(),
                };
                t.check(ok, || format!("{d}: weight under deletion"));
            }
            if n % 2 == 0 || n < 3 {
                continue;
            }
            let pp = ClassSets::new(n - 2);
            let count = |f, r| get(&sets, f, r).len();
            t.check(count(A, All) == count(A, RR) + count(A, CC), || format!("n={n}: A split"));
            t.check(
                count(E, All) == count(E, RR) + count(E, CR) + count(E, CC),
                || format!("n={n}: E split"),
            );
            let twice = |f: fn(&ShiftedDiagram) -> Result<ShiftedDiagram>, g: fn(&ShiftedDiagram) -> Result<ShiftedDiagram>| {
                move |d: &ShiftedDiagram| f(d).and_then(|x| g(&x))
            };
            let tt = twice(ShiftedDiagram::delete_top_row, ShiftedDiagram::delete_top_row);
            let rt = twice(ShiftedDiagram::delete_right_column, ShiftedDiagram::delete_top_row);
            let rr = twice(ShiftedDiagram::delete_right_column, ShiftedDiagram::delete_right_column);
            check_bijection(t, &format!("n={n} E^rr"), &get(&sets, E, RR), &get(&pp, E, All), &tt);
            check_bijection(t, &format!("n={n} E^cr"), &get(&sets, E, CR), &get(&pp, U, All), &rt);
            check_bijection(t, &format!("n={n} E^cc"), &get(&sets, E, CC), &get(&pp, E, All), &rr);
            check_bijection(t, &format!("n={n} A^rr"), &get(&sets, A, RR), &get(&pp, A, All), &tt);
            check_bijection(t, &format!("n={n} A^cc"), &get(&sets, A, CC), &get(&pp, A, All), &rr);
        }
    }
}

struct RoundTrip;

impl Suite for RoundTrip {
    fn name(&self) -> &'static str {
        "round-trip"
    }

    fn description(&self) -> &'static str {
        "step string, n-tuple and JSON representations agree"
    }

    fn run(&self, max_n: usize, t: &mut Tally) {
        for n in 0..=max_n {
            for d in enumerate_diagrams(n) {
                let back = ShiftedDiagram::from_tuple(&d.to_tuple());
                t.check(back.as_ref() == Ok(&d), || format!("{d}: tuple round trip"));
                let parsed: Result<ShiftedDiagram> = d.to_string().parse();
                t.check(parsed.as_ref() == Ok(&d), || format!("{d}: string round trip"));
                let json = serde_json::to_string(&d).expect("serializable");
                let from_json: std::result::Result<ShiftedDiagram, _> = serde_json::from_str(&json);
                t.check(from_json.ok().as_ref() == Some(&d), || format!("{d}: JSON round trip"));
                if n > 0 {
                    let c = back.as_ref().map(|b| b.classify());
                    t.check(c == Ok(d.classify()), || format!("{d}: classify after round trip"));
                }
            }
        }
    }
}

struct TupleShape;

impl Suite for TupleShape {
    fn name(&self) -> &'static str {
        "tuples"
    }

    fn description(&self) -> &'static str {
        "marked-point tuples of the engine selections"
    }

    fn run(&self, max_n: usize, t: &mut Tally) {
        for n in 1..=max_n {
            for d in enumerate_diagrams(n) {
                let c = d.classify().expect("n >= 1");
                let l = d.boundary().len();
                let mut selections = vec![(selection_s(&d, l), false), (selection_s(&d, c.index_w), false)];
                for w in [l, c.index_w] {
                    if let Ok(s) = selection_s_tilde(&d, w) {
                        selections.push((s, true));
                    }
                }
                for (sel, _) in &selections {
                    let td = tuples(&d, sel);
                    t.check(td.t.iter().all(|x| (1..=2).contains(x)), || format!("{d}: t = {:?}", td.t));
                    t.check(td.d.windows(2).all(|w| w[0] <= w[1]), || format!("{d}: d = {:?}", td.d));
                    let dominated = (0..td.t.len()).all(|j| td.d[j + 1] - td.d[j] >= td.t[j]);
                    t.check(dominated, || format!("{d}: d gaps below t"));
                    t.check(td.e == td.d[..td.d.len() - 1], || format!("{d}: e is not d minus last"));
                    if let Ok(desc) = crate::marked::lf_descriptor_type0(&d, sel) {
                        let gaps_ok = (0..desc.k()).all(|i| desc.d[i] - desc.e[i] + 1 == desc.t[i]);
                        t.check(gaps_ok, || format!("{d}: type-0 gaps differ from t - 1"));
                    }
                }
                let dk = lf_ktheory(&d).d;
                if let Ok(v) = d.delete_right_column() {
                    if n > 1 {
                        let shifted: Vec<_> = dk[1..].iter().map(|x| x - 1).collect();
                        t.check(dk[0] == 0 && shifted == lf_ktheory(&v).d, || format!("{d}: column deletion"));
                    }
                } else if let Ok(i) = d.delete_top_row() {
                    let shifted: Vec<_> = dk.iter().map(|x| x - 1).collect();
                    t.check(shifted == lf_ktheory(&i).d, || format!("{d}: row deletion"));
                }
            }
        }
    }
}

struct Dimension;

impl Suite for Dimension {
    fn name(&self) -> &'static str {
        "dimension"
    }

    fn description(&self) -> &'static str {
        "dimension defect equals weight; K-theory schemes are regular"
    }

    fn run(&self, max_n: usize, t: &mut Tally) {
        for n in 1..=max_n {
            let full = n * (n + 1) / 2;
            for s in k_basis(n).summands {
                let d = &s.source_diagram;
                let dim = s.scheme.relative_dimension();
                t.check(dim == Ok(full - d.weight()), || format!("{d}: phi dimension {dim:?}"));
                t.check(s.scheme.component_count() == Ok(1), || format!("{d}: phi components"));
                t.check(s.scheme.is_regular() == Ok(true), || format!("{d}: phi not regular"));
            }
            for d in enumerate_diagrams(n) {
                if !d.is_almost_even() {
                    continue;
                }
                let variant = if n % 2 == 1 || d.first_step() == Some(Step::Left) {
                    Variant::Xi0
                } else {
                    Variant::Xi1
                };
                let dim = variant.scheme(&d).and_then(|s| s.relative_dimension());
                t.check(dim == Ok(full - d.weight()), || format!("{d}: {variant:?} dimension {dim:?}"));
            }
        }
    }
}

struct TwistAlignmentSuite;

impl Suite for TwistAlignmentSuite {
    fn name(&self) -> &'static str {
        "twist"
    }

    fn description(&self) -> &'static str {
        "canonical-sheaf parity matches the required twist"
    }

    fn run(&self, max_n: usize, t: &mut Tally) {
        for n in 1..=max_n {
            for d in enumerate_diagrams(n) {
                for twist in [Twist::Trivial, Twist::DeltaTwist] {
                    let Some(v) = Variant::for_diagram(&d, twist) else {
                        continue;
                    };
                    match twist_alignment(&d, v, n) {
                        Ok(a) => t.check(a.ok, || {
                            format!("{d} {v:?}: parity {} required {}", a.parity, a.required)
                        }),
                        Err(e) => t.fail(format!("{d} {v:?}: {e}")),
                    }
                }
            }
        }
    }
}

struct Connecting;

impl Suite for Connecting {
    fn name(&self) -> &'static str {
        "connecting"
    }

    fn description(&self) -> &'static str {
        "blow-up case table against frame parity and twist"
    }

    fn run(&self, max_n: usize, t: &mut Tally) {
        for n in 2..=max_n.max(2) {
            for twist in [Twist::Trivial, Twist::DeltaTwist] {
                let (a, b) = lambda_pair(twist);
                let expected = match (n % 2 == 0, twist) {
                    (true, Twist::DeltaTwist) => ConnectingCase::SplitCaseI,
                    (true, Twist::Trivial) => ConnectingCase::NeedsPadding,
                    (false, Twist::Trivial) => ConnectingCase::EtaCaseII,
                    (false, Twist::DeltaTwist) => ConnectingCase::EtaCaseIII,
                };
                let got = classify_connecting(n as i64, 2, a as i64, b as i64);
                t.check(got == Ok(expected), || format!("n={n} {twist}: {got:?}"));
            }
        }
    }
}

struct Recursions;

impl Suite for Recursions {
    fn name(&self) -> &'static str {
        "recursions"
    }

    fn description(&self) -> &'static str {
        "induction identities between bases of consecutive frames"
    }

    fn run(&self, max_n: usize, t: &mut Tally) {
        for n in 2..=max_n {
            match verify_recursions(n) {
                Ok(r) => {
                    for c in r.checks {
                        t.check(c.pass, || {
                            format!("n={n} case {}: {}", c.case, c.first_mismatch.unwrap_or_default())
                        });
                    }
                }
                Err(e) => t.fail(format!("n={n}: {e}")),
            }
        }
    }
}

struct Geometry;

impl Suite for Geometry {
    fn name(&self) -> &'static str {
        "geometry"
    }

    fn description(&self) -> &'static str {
        "validity, Gorenstein property, dimension and twist of every basis scheme"
    }

    fn run(&self, max_n: usize, t: &mut Tally) {
        for n in 1..=max_n {
            match verify_geometry(n) {
                Ok(r) => {
                    t.check(r.failures.is_empty(), || format!("n={n}: {} failures", r.failures.len()));
                    for f in r.failures.iter().take(5) {
                        t.failures.push(format!("  {} {} {}: {}", f.diagram, f.map, f.check, f.detail));
                    }
                }
                Err(e) => t.fail(format!("n={n}: {e}")),
            }
        }
    }
}
