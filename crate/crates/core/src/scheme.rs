//! Flag-scheme descriptors `(ñ, d, e, t)` and their closed-form invariants.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FlagDescriptor {
    pub half_rank: usize,
    pub d: Vec<usize>,
    pub e: Vec<usize>,
    pub t: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    /// `d` must have one more entry than `e` and `t`.
    Shape { d: usize, e: usize, t: usize },
    DDecreases { index: usize },
    DExceedsHalfRank { index: usize },
    TNotPositive { index: usize },
    EAboveD { index: usize },
    EAboveNextD { index: usize },
    EAboveComplement { index: usize },
    /// An entry of `e` came out negative while building a descriptor.
    ENegative { index: usize, value: i64 },
    EDecreases { index: usize },
    TDecreases { index: usize },
}

impl Violation {
    pub fn severity(&self) -> Severity {
        match self {
            Violation::EDecreases { .. } | Violation::TDecreases { .. } => Severity::Warning,
            _ => Severity::Error,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape { d, e, t } => write!(
                f,
                "shape mismatch: |d|={d}, |e|={e}, |t|={t} (need |d| = |e| + 1 = |t| + 1)"
            ),
            Violation::DDecreases { index } => write!(f, "d_{index} > d_{}", index + 1),
            Violation::DExceedsHalfRank { index } => write!(f, "d_{index} > half_rank"),
            Violation::TNotPositive { index } => write!(f, "t_{index} < 1"),
            Violation::EAboveD { index } => write!(f, "e_{index} > d_{index}"),
            Violation::EAboveNextD { index } => write!(f, "e_{index} > d_{}", index + 1),
            Violation::EAboveComplement { index } => {
                write!(f, "e_{index} > half_rank - t_{index}")
            }
            Violation::ENegative { index, value } => write!(f, "e_{index} = {value} is negative"),
            Violation::EDecreases { index } => {
                write!(f, "warning: e_{index} > e_{} (e not monotone)", index + 1)
            }
            Violation::TDecreases { index } => {
                write!(f, "warning: t_{index} > t_{} (t not monotone)", index + 1)
            }
        }
    }
}

impl FlagDescriptor {
    pub fn new(half_rank: usize, d: Vec<usize>, e: Vec<usize>, t: Vec<usize>) -> Self {
        Self { half_rank, d, e, t }
    }

    /// `LF_i`: the locus of Lagrangians containing a fixed rank-`i` step, no intermediate strata.
    pub fn grassmannian(half_rank: usize, i: usize) -> Self {
        Self::new(half_rank, vec![i], vec![], vec![])
    }

    /// Build from possibly negative `e` entries, as produced by the padded constructions.
    pub fn from_signed(half_rank: usize, d: Vec<usize>, e: Vec<i64>, t: Vec<usize>) -> Result<Self> {
        let negative: Vec<_> = e
            .iter()
            .enumerate()
            .filter(|(_, v)| **v < 0)
            .map(|(index, &value)| Violation::ENegative { index, value })
            .collect();
        if !negative.is_empty() {
            return Err(Error::Construction(negative));
        }
        let desc = Self::new(half_rank, d, e.into_iter().map(|x| x as usize).collect(), t);
        let errors = desc.errors();
        if errors.is_empty() {
            Ok(desc)
        } else {
            Err(Error::Construction(errors))
        }
    }

    /// Number of intermediate strata `k`.
    pub fn k(&self) -> usize {
        self.e.len()
    }

    pub fn validate(&self) -> Vec<Violation> {
        let n = self.half_rank;
        let (d, e, t) = (&self.d, &self.e, &self.t);
        let mut out = Vec::new();
        if d.len() != e.len() + 1 || t.len() != e.len() {
            out.push(Violation::Shape {
                d: d.len(),
                e: e.len(),
                t: t.len(),
            });
            return out;
        }
        for (i, w) in d.windows(2).enumerate() {
            if w[0] > w[1] {
                out.push(Violation::DDecreases { index: i });
            }
        }
        for (i, &x) in d.iter().enumerate() {
            if x > n {
                out.push(Violation::DExceedsHalfRank { index: i });
            }
        }
        for i in 0..e.len() {
            if t[i] < 1 {
                out.push(Violation::TNotPositive { index: i });
            }
            if e[i] > d[i] {
                out.push(Violation::EAboveD { index: i });
            }
            if e[i] > d[i + 1] {
                out.push(Violation::EAboveNextD { index: i });
            }
            if e[i] + t[i] > n {
                out.push(Violation::EAboveComplement { index: i });
            }
        }
        for (i, w) in e.windows(2).enumerate() {
            if w[0] > w[1] {
                out.push(Violation::EDecreases { index: i });
            }
        }
        for (i, w) in t.windows(2).enumerate() {
            if w[0] > w[1] {
                out.push(Violation::TDecreases { index: i });
            }
        }
        out
    }

    /// Error-level violations only.
    pub fn errors(&self) -> Vec<Violation> {
        self.validate()
            .into_iter()
            .filter(|v| v.severity() == Severity::Error)
            .collect()
    }

    pub fn is_valid(&self) -> bool {
        self.errors().is_empty()
    }

    pub fn check(&self) -> Result<()> {
        let errors = self.errors();
        if errors.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidDescriptor(errors))
        }
    }

    pub fn is_regular(&self) -> Result<bool> {
        self.check()?;
        Ok(self.d[..self.k()] == self.e[..])
    }

    pub fn is_gorenstein(&self) -> Result<bool> {
        self.check()?;
        Ok(self.gaps().all(|g| g <= 1))
    }

    fn gaps(&self) -> impl Iterator<Item = usize> + '_ {
        self.e.iter().zip(&self.d).map(|(e, d)| d - e)
    }

    pub fn require_gorenstein(&self) -> Result<()> {
        if self.is_gorenstein()? {
            Ok(())
        } else {
            Err(Error::Unsupported(format!(
                "descriptor {self} is not Gorenstein (some d_i - e_i > 1)"
            )))
        }
    }

    pub fn relative_dimension(&self) -> Result<usize> {
        self.require_gorenstein()?;
        let n = self.half_rank as i64;
        let k = self.k();
        let binom2 = |m: i64| m * (m - 1) / 2;
        let mut dim = binom2(n - self.d[k] as i64 + 1);
        for i in 0..k {
            let (t, d) = (self.t[i] as i64, self.d[i] as i64);
            dim += (n - t - d) * t + binom2(t + 1);
        }
        usize::try_from(dim)
            .map_err(|_| Error::Unsupported(format!("negative dimension {dim} for {self}")))
    }

    pub fn component_count(&self) -> Result<u64> {
        self.require_gorenstein()?;
        Ok(1u64 << self.gaps().filter(|&g| g == 1).count())
    }

    pub fn report(&self) -> Result<SchemeReport> {
        self.check()?;
        let gorenstein = self.is_gorenstein()?;
        Ok(SchemeReport {
            regular: self.is_regular()?,
            gorenstein,
            relative_dimension: if gorenstein {
                Some(self.relative_dimension()?)
            } else {
                None
            },
            component_count: if gorenstein {
                Some(self.component_count()?)
            } else {
                None
            },
            reduced_with_trivial_pushforward: self.t.iter().all(|&x| x == 1),
        })
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for FlagDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LF_{{{}}}({})", join(&self.d), join(&self.e))?;
        if self.t.iter().any(|&x| x != 1) {
            write!(f, "_{{{}}}", join(&self.t))?;
        }
        write!(f, "[n={}]", self.half_rank)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeReport {
    pub regular: bool,
    pub gorenstein: bool,
    pub relative_dimension: Option<usize>,
    pub component_count: Option<u64>,
    pub reduced_with_trivial_pushforward: bool,
}

/// Look up `B2`, `E2`, `F2` or `LF_i` (also `LFi`) at the given half rank.
pub fn named_scheme(name: &str, half_rank: usize) -> Result<FlagDescriptor> {
    let n = half_rank;
    match name {
        "B2" => Ok(FlagDescriptor::new(n, vec![0, 1], vec![0], vec![1])),
        "E2" => Ok(FlagDescriptor::new(n, vec![1, 1], vec![1], vec![1])),
        "F2" => Ok(FlagDescriptor::new(n, vec![1, 1], vec![0], vec![1])),
        _ => {
            let idx = name
                .strip_prefix("LF_")
                .or_else(|| name.strip_prefix("LF"))
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| Error::UnknownScheme(name.to_string()))?;
            Ok(FlagDescriptor::grassmannian(n, idx))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd(n: usize, d: &[usize], e: &[usize], t: &[usize]) -> FlagDescriptor {
        FlagDescriptor::new(n, d.to_vec(), e.to_vec(), t.to_vec())
    }

    fn binom2(m: usize) -> usize {
        m * m.saturating_sub(1) / 2
    }

    #[test]
    fn validation_examples() {
        assert!(fd(3, &[1, 2], &[0], &[1]).validate().is_empty());
        assert_eq!(
            fd(2, &[0, 3], &[0], &[1]).validate(),
            vec![Violation::DExceedsHalfRank { index: 1 }]
        );
        assert_eq!(
            fd(4, &[1, 3], &[3], &[2]).validate(),
            vec![
                Violation::EAboveD { index: 0 },
                Violation::EAboveComplement { index: 0 }
            ]
        );
        let w = fd(5, &[1, 2, 4], &[1, 0], &[2, 1]).validate();
        assert!(w.iter().all(|v| v.severity() == Severity::Warning));
        assert_eq!(w.len(), 2);
    }

    #[test]
    fn regularity() {
        assert!(fd(2, &[0, 1], &[0], &[1]).is_regular().unwrap());
        let q3 = fd(3, &[1, 2], &[0], &[1]);
        assert!(!q3.is_regular().unwrap());
        assert!(q3.is_gorenstein().unwrap());
        assert!(!fd(4, &[2, 3], &[0], &[1]).is_gorenstein().unwrap());
        assert!(fd(4, &[2, 3], &[0], &[1]).relative_dimension().is_err());
        assert!(fd(2, &[0, 3], &[0], &[1]).is_regular().is_err());
    }

    #[test]
    fn dimensions() {
        for n in 0..=20 {
            assert_eq!(
                FlagDescriptor::grassmannian(n, 0).relative_dimension().unwrap(),
                binom2(n + 1)
            );
        }
        assert_eq!(fd(2, &[0, 1], &[0], &[1]).relative_dimension().unwrap(), 3);
        assert_eq!(fd(3, &[1, 2], &[0], &[1]).relative_dimension().unwrap(), 3);
    }

    #[test]
    fn components() {
        assert_eq!(fd(3, &[1, 2], &[0], &[1]).component_count().unwrap(), 2);
        assert_eq!(fd(2, &[0, 1], &[0], &[1]).component_count().unwrap(), 1);
        assert_eq!(fd(5, &[1, 3, 5], &[0, 2], &[1, 1]).component_count().unwrap(), 4);
    }

    #[test]
    fn named() {
        let f2 = named_scheme("F2", 4).unwrap();
        assert_eq!((f2.d.clone(), f2.e.clone(), f2.t.clone()), (vec![1, 1], vec![0], vec![1]));
        assert_eq!(f2.component_count().unwrap(), 2);
        assert!(named_scheme("E2", 4).unwrap().is_regular().unwrap());
        assert_eq!(named_scheme("B2", 2).unwrap(), fd(2, &[0, 1], &[0], &[1]));
        assert_eq!(named_scheme("LF_0", 5).unwrap(), fd(5, &[0], &[], &[]));
        assert_eq!(named_scheme("LF3", 5).unwrap(), fd(5, &[3], &[], &[]));
        assert!(matches!(named_scheme("G7", 2), Err(Error::UnknownScheme(_))));
    }

    #[test]
    fn dimension_ignores_e_in_gorenstein_regime() {
        // exhaustive over small descriptors with d_0 - e_0 = 1
        for n in 1..=6usize {
            for k in 1..=2usize {
                for_each_descriptor(n, k, &mut |desc| {
                    if !desc.is_valid() || !desc.is_gorenstein().unwrap() {
                        return;
                    }
                    if desc.d[0] != desc.e[0] + 1 {
                        return;
                    }
                    let mut raised = desc.clone();
                    raised.e[0] = raised.d[0];
                    if !raised.is_valid() {
                        return;
                    }
                    assert_eq!(
                        desc.relative_dimension().unwrap(),
                        raised.relative_dimension().unwrap(),
                        "{desc}"
                    );
                });
            }
        }
    }

    fn for_each_descriptor(n: usize, k: usize, f: &mut dyn FnMut(FlagDescriptor)) {
        let count = (n + 1).pow((2 * k + 1) as u32) * n.pow(k as u32);
        for mut code in 0..count {
            let mut take = |m: usize| {
                let v = code % m;
                code /= m;
                v
            };
            let d: Vec<_> = (0..=k).map(|_| take(n + 1)).collect();
            let e: Vec<_> = (0..k).map(|_| take(n + 1)).collect();
            let t: Vec<_> = (0..k).map(|_| take(n) + 1).collect();
            f(FlagDescriptor::new(n, d, e, t));
        }
    }
}
