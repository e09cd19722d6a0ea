//! Fiber counts and 4-manifold invariants of hyperelliptic Lefschetz
//! fibrations over the sphere.

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::SepType;
use crate::word::Relator;

/// Vanishing cycles tallied by type.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberCounts {
    pub s0: u64,
    /// `h -> s_h` for separating cycles of type `h`.
    #[serde(with = "string_keys")]
    pub s: BTreeMap<u32, u64>,
    pub n_trivial: u64,
}

// JSON object keys are strings; spelling the conversion out keeps it working
// inside internally tagged enums, which buffer their content.
mod string_keys {
    use std::collections::BTreeMap;

    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<u32, u64>, s: S) -> Result<S::Ok, S::Error> {
        m.iter()
            .map(|(k, v)| (k.to_string(), *v))
            .collect::<BTreeMap<String, u64>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<u32, u64>, D::Error> {
        BTreeMap::<String, u64>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| k.parse().map(|k| (k, v)).map_err(D::Error::custom))
            .collect()
    }
}

impl FiberCounts {
    pub fn nonseparating(s0: u64) -> Self {
        FiberCounts {
            s0,
            ..Default::default()
        }
    }

    pub fn with_separating(mut self, h: u32, count: u64) -> Self {
        if count > 0 {
            *self.s.entry(h).or_default() += count;
        }
        self
    }

    pub fn with_trivial(mut self, n: u64) -> Self {
        self.n_trivial += n;
        self
    }

    pub fn separating_total(&self) -> u64 {
        self.s.values().sum()
    }

    pub fn total(&self) -> u64 {
        self.s0 + self.separating_total() + self.n_trivial
    }

    pub fn add(&mut self, sep: SepType) -> Result<()> {
        match sep {
            SepType::Nonseparating => self.s0 += 1,
            SepType::Separating { h } => *self.s.entry(h).or_default() += 1,
            SepType::Nullhomotopic => self.n_trivial += 1,
            SepType::BoundaryParallel => {
                return Err(Error::MissingSepType(
                    "boundary-parallel curve has no closed-surface type".into(),
                ))
            }
        }
        Ok(())
    }
}

/// Tallies the letters of a positive relator by the type of their base
/// curve; conjugation does not change the type.
pub fn count_fibers(r: &Relator) -> Result<FiberCounts> {
    if !r.is_positive() {
        return Err(Error::NotPositive);
    }
    let cfg = r.word.ambient();
    let mut fc = FiberCounts::default();
    for g in r.word.letters() {
        let c = cfg.curve(g.base);
        fc.add(c.sep_type).map_err(|_| Error::MissingSepType(c.id.clone()))?;
    }
    Ok(fc)
}

/// `e = 2(2 - 2g) + #singular fibers`.
pub fn euler_characteristic(g: u32, fc: &FiberCounts) -> i64 {
    4 - 4 * i64::from(g) + fc.total() as i64
}

/// Endo's contribution of each fiber type, as exact rationals.
fn endo_terms(g: u32, fc: &FiberCounts) -> Rational64 {
    let g = i64::from(g);
    let d = 2 * g + 1;
    let mut sigma = Rational64::new(-(g + 1), d) * Rational64::from(fc.s0 as i64);
    for (&h, &n) in &fc.s {
        let h = i64::from(h);
        sigma += (Rational64::new(4 * h * (g - h), d) - 1) * Rational64::from(n as i64);
    }
    sigma - Rational64::from(fc.n_trivial as i64)
}

/// Signature of a hyperelliptic fibration from its fiber counts. Fails
/// rather than rounds when the sum is not an integer.
pub fn endo_signature(g: u32, fc: &FiberCounts) -> Result<i64> {
    if g == 0 {
        return Err(Error::InvalidGenus(g));
    }
    let sigma = endo_terms(g, fc);
    if !sigma.is_integer() {
        return Err(Error::NonIntegralSignature(sigma.to_string()));
    }
    Ok(sigma.to_integer())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub genus: u32,
    pub e: i64,
    pub sigma: i64,
    pub c1sq: i64,
    pub chi: i64,
    /// Number of `(-1)`-spheres from nullhomotopic cycles blown down.
    pub blowdowns: u64,
}

impl InvariantReport {
    fn from_e_sigma(genus: u32, e: i64, sigma: i64, blowdowns: u64) -> Result<Self> {
        if (e + sigma) % 4 != 0 {
            return Err(Error::NonIntegralChi(e + sigma));
        }
        Ok(InvariantReport {
            genus,
            e,
            sigma,
            c1sq: 2 * e + 3 * sigma,
            chi: (e + sigma) / 4,
            blowdowns,
        })
    }

    pub fn is_consistent(&self) -> bool {
        self.c1sq == 2 * self.e + 3 * self.sigma && 4 * self.chi == self.e + self.sigma
    }
}

/// Assembles `(e, σ, c_1^2, χ)`. With `blowdown`, every nullhomotopic cycle
/// is removed as a `(-1)`-sphere: `e -= n`, `σ += n`.
pub fn report(g: u32, fc: &FiberCounts, blowdown: bool) -> Result<InvariantReport> {
    let mut e = euler_characteristic(g, fc);
    let mut sigma = endo_signature(g, fc)?;
    let mut blowdowns = 0;
    if blowdown {
        blowdowns = fc.n_trivial;
        e -= blowdowns as i64;
        sigma += blowdowns as i64;
    }
    InvariantReport::from_e_sigma(g, e, sigma, blowdowns)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Delta {
    pub de: i64,
    pub dsigma: i64,
}

impl Delta {
    pub fn between(before: &InvariantReport, after: &InvariantReport) -> Self {
        Delta {
            de: after.e - before.e,
            dsigma: after.sigma - before.sigma,
        }
    }
}

/// Kinds of substitution with a closed-form effect on `(e, σ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DeltaKind {
    Star,
    Gsr { g: u32 },
    /// Even chain of length `m` on a genus-`genus` surface; the boundary is
    /// a separating curve.
    ChainEven { m: u32, genus: u32 },
    /// Odd chain of length `m` on a genus-`genus` surface; both boundary
    /// curves are nonseparating.
    ChainOdd { m: u32, genus: u32 },
}

/// Change of `(e, σ)` when the left side of a relation is replaced by the
/// right side.
pub fn substitution_delta(kind: DeltaKind) -> Result<Delta> {
    match kind {
        DeltaKind::Star => Ok(Delta { de: -9, dsigma: 5 }),
        DeltaKind::Gsr { g } => {
            if g == 0 {
                return Err(Error::InvalidGenus(g));
            }
            let g = i64::from(g);
            Ok(Delta {
                de: -(4 * g * g + 5 * g),
                dsigma: 2 * g * g + 3 * g,
            })
        }
        DeltaKind::ChainEven { m, genus } => {
            if m == 0 || m % 2 != 0 || m / 2 >= genus {
                return Err(Error::Unsupported(format!(
                    "even chain of length {m} on genus {genus}"
                )));
            }
            let half = m / 2;
            let h = half.min(genus - half);
            let before = FiberCounts::nonseparating(u64::from(m) * (2 * u64::from(m) + 2));
            let after = FiberCounts::default().with_separating(h, 1);
            fiber_delta(genus, &before, &after)
        }
        DeltaKind::ChainOdd { m, genus } => {
            if m % 2 == 0 || m + 1 > 2 * genus {
                return Err(Error::Unsupported(format!(
                    "odd chain of length {m} on genus {genus}"
                )));
            }
            let before = FiberCounts::nonseparating(u64::from(m) * (u64::from(m) + 1));
            let after = FiberCounts::nonseparating(2);
            fiber_delta(genus, &before, &after)
        }
    }
}

/// `(Δe, Δσ)` from replacing the fibers `before` by `after` on genus `g`.
pub fn fiber_delta(g: u32, before: &FiberCounts, after: &FiberCounts) -> Result<Delta> {
    let ds = endo_terms(g, after) - endo_terms(g, before);
    if !ds.is_integer() {
        return Err(Error::NonIntegralSignature(ds.to_string()));
    }
    Ok(Delta {
        de: after.total() as i64 - before.total() as i64,
        dsigma: ds.to_integer(),
    })
}

/// Invariants after a generalized star surgery of type `g`.
pub fn surgery_invariants(before: &InvariantReport, g: u32) -> Result<InvariantReport> {
    if g == 0 {
        return Err(Error::InvalidGenus(g));
    }
    let g = i64::from(g);
    let de = -(4 * g * g + 5 * g);
    let dsigma = 2 * g * g + 3 * g;
    let dc1 = -g * (2 * g + 1);
    let dchi_num = -g * (g + 1);
    if dc1 != 2 * de + 3 * dsigma || de + dsigma != 2 * dchi_num {
        return Err(Error::Inconsistent(format!("surgery deltas for g = {g}")));
    }
    let after = InvariantReport {
        genus: before.genus,
        e: before.e + de,
        sigma: before.sigma + dsigma,
        c1sq: before.c1sq + dc1,
        chi: before.chi + dchi_num / 2,
        blowdowns: before.blowdowns,
    };
    if !after.is_consistent() {
        return Err(Error::Inconsistent(format!(
            "c1^2 = {}, 2e + 3σ = {}",
            after.c1sq,
            2 * after.e + 3 * after.sigma
        )));
    }
    Ok(after)
}

/// Self-intersections of the disjoint sections carried by the built-in
/// families, where known.
pub fn section_data(family: &str, g: u32) -> Option<Vec<i64>> {
    match family {
        "GSR_capped" | "C" => Some(vec![-1, -i64::from(g), -1]),
        "B" => Some(vec![-1, -1]),
        "D" => Some(vec![-1]),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_examples() {
        assert_eq!(euler_characteristic(2, &FiberCounts::nonseparating(30)), 26);
        for n in 1..5u64 {
            assert_eq!(
                euler_characteristic(1, &FiberCounts::nonseparating(12 * n)),
                12 * n as i64
            );
        }
        let fc = FiberCounts::nonseparating(20).with_trivial(1);
        assert_eq!(euler_characteristic(2, &fc), 17);
        assert_eq!(report(2, &fc, true).unwrap().e, 16);
    }

    #[test]
    fn endo_examples() {
        assert_eq!(endo_signature(2, &FiberCounts::nonseparating(30)).unwrap(), -18);
        let fc = FiberCounts::nonseparating(6).with_separating(1, 2);
        assert_eq!(endo_signature(2, &fc).unwrap(), -4);
        let fc = FiberCounts::nonseparating(32).with_separating(1, 2);
        assert_eq!(endo_signature(3, &fc).unwrap(), -18);
    }

    #[test]
    fn endo_refuses_fractions() {
        assert!(matches!(
            endo_signature(2, &FiberCounts::nonseparating(7)),
            Err(Error::NonIntegralSignature(_))
        ));
    }

    #[test]
    fn report_examples() {
        let fc = FiberCounts::nonseparating(20).with_trivial(1);
        let r = report(2, &fc, true).unwrap();
        assert_eq!((r.c1sq, r.e, r.sigma), (-4, 16, -12));
        let fc = FiberCounts::nonseparating(30).with_trivial(1);
        let r = report(2, &fc, true).unwrap();
        assert_eq!((r.c1sq, r.e, r.sigma), (-2, 26, -18));
        assert!(r.is_consistent());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(substitution_delta(DeltaKind::Star).unwrap(), Delta { de: -9, dsigma: 5 });
        assert_eq!(
            substitution_delta(DeltaKind::Gsr { g: 1 }).unwrap(),
            substitution_delta(DeltaKind::Star).unwrap()
        );
        assert_eq!(
            substitution_delta(DeltaKind::Gsr { g: 2 }).unwrap(),
            Delta { de: -26, dsigma: 14 }
        );
        for genus in [2, 3] {
            assert_eq!(
                substitution_delta(DeltaKind::ChainEven { m: 2, genus }).unwrap(),
                Delta { de: -11, dsigma: 7 }
            );
        }
        assert_eq!(
            substitution_delta(DeltaKind::ChainEven { m: 4, genus: 3 }).unwrap(),
            Delta { de: -39, dsigma: 23 }
        );
        // odd chain filling a genus-G surface up to its last curve
        for big_g in 1..6u32 {
            let m = 2 * big_g - 1;
            let d = substitution_delta(DeltaKind::ChainOdd { m, genus: big_g }).unwrap();
            let g = i64::from(big_g);
            assert_eq!(d.dsigma, 2 * g * g - 2);
            assert_eq!(d.de, 2 - i64::from(m * (m + 1)));
        }
        assert!(substitution_delta(DeltaKind::ChainEven { m: 4, genus: 2 }).is_err());
    }

    #[test]
    fn surgery_examples() {
        let e1 = report(1, &FiberCounts::nonseparating(12), false).unwrap();
        assert_eq!((e1.e, e1.sigma), (12, -8));
        let after = surgery_invariants(&e1, 1).unwrap();
        assert_eq!((after.e, after.sigma), (3, -3));
        assert_eq!(e1.c1sq - after.c1sq, 3);
        let r2 = report(2, &FiberCounts::nonseparating(30), false).unwrap();
        assert_eq!(surgery_invariants(&r2, 2).unwrap().c1sq - r2.c1sq, -10);
    }

    #[test]
    fn chi_must_divide() {
        // (e, σ) = (3, -2)
        let fc = FiberCounts::nonseparating(3);
        assert!(matches!(report(1, &fc, false), Err(Error::NonIntegralChi(_))));
    }
}
